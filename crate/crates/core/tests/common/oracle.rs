use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use operad_forge::colour::{Colour, Profile};
use operad_forge::trees::{Child, ColouredTree, Leaf, Vertex};

/// Unnumbered, uncoloured planar shapes with exactly `n` internal vertices
/// whose arities come from `arities`. Internal nodes are `Some(children)`,
/// leaves are `None`.
#[derive(Clone, Debug)]
pub enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

pub fn shapes(n: usize, arities: &BTreeSet<usize>) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for &k in arities {
        // distribute n-1 vertices over k ordered children
        for split in compositions(n - 1, k) {
            let per_child: Vec<Vec<Shape>> = split.iter().map(|&m| shapes(m, arities)).collect();
            for combo in per_child.into_iter().multi_cartesian_product_or_unit() {
                out.push(Shape::Node(combo));
            }
        }
    }
    out
}

trait CartesianOrUnit: Iterator<Item = Vec<Shape>> + Sized {
    fn multi_cartesian_product_or_unit(self) -> Vec<Vec<Shape>> {
        let lists: Vec<Vec<Shape>> = self.collect();
        if lists.is_empty() {
            return vec![Vec::new()];
        }
        lists.into_iter().multi_cartesian_product().collect()
    }
}
impl<I: Iterator<Item = Vec<Shape>>> CartesianOrUnit for I {}

/// Ordered ways of writing `total` as a sum of `parts` non-negative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn count(shape: &Shape) -> (usize, usize) {
    match shape {
        Shape::Leaf => (0, 1),
        Shape::Node(cs) => cs.iter().map(count).fold((1, 0), |a, b| (a.0 + b.0, a.1 + b.1)),
    }
}

/// Brute force over shapes × vertex numberings × leaf numberings. Edge
/// colours are read off the vertex profiles, and the triple is kept when the
/// colours agree along every edge and the leaves match the boundary.
pub fn component(colours: &BTreeSet<Colour>, vertex_profiles: &[Profile], boundary: &Profile) -> BTreeSet<String> {
    let n = vertex_profiles.len();
    let mut out = BTreeSet::new();
    if n == 0 {
        if boundary.inputs.len() == 1 && boundary.inputs[0] == boundary.output && colours.contains(&boundary.output) {
            out.insert(format!("e:{}", boundary.output));
        }
        return out;
    }
    let all_known = vertex_profiles
        .iter()
        .chain([boundary])
        .all(|p| p.inputs.iter().chain([&p.output]).all(|c| colours.contains(c)));
    if !all_known {
        return out;
    }
    let arities: BTreeSet<usize> = vertex_profiles.iter().map(|p| p.arity()).collect();
    for shape in shapes(n, &arities) {
        let (_, m) = count(&shape);
        if m != boundary.inputs.len() {
            continue;
        }
        for sigma in (1..=n as u64).permutations(n) {
            // colour each edge from the profile of the vertex above or below it
            let mut vs = sigma.iter().copied();
            let mut placeholder = std::iter::repeat(0);
            let Some(tree) = colour_from_profiles(&shape, &boundary.output, vertex_profiles, &mut vs, &mut placeholder)
            else {
                continue;
            };
            for tau in (1..=m as u64).permutations(m) {
                let numbered = renumber_leaves(&tree, &mut tau.iter().copied());
                let tree = match numbered {
                    Child::Vertex(v) => ColouredTree::Vertex(v),
                    Child::Leaf(_) => unreachable!(),
                };
                if satisfies(&tree, vertex_profiles, boundary) {
                    out.insert(tree.to_string());
                }
            }
        }
    }
    out
}

/// Builds the tree with edge colours taken from the vertex profiles, or
/// `None` when a vertex's output colour differs from the edge it sits on.
fn colour_from_profiles(
    shape: &Shape,
    edge: &Colour,
    profiles: &[Profile],
    vs: &mut impl Iterator<Item = u64>,
    ls: &mut impl Iterator<Item = u64>,
) -> Option<Child> {
    match shape {
        Shape::Leaf => Some(Child::Leaf(Leaf { number: ls.next().unwrap(), colour: edge.clone() })),
        Shape::Node(cs) => {
            let number = vs.next().unwrap();
            let p = &profiles[(number - 1) as usize];
            if &p.output != edge || p.inputs.len() != cs.len() {
                return None;
            }
            let children = cs
                .iter()
                .zip(&p.inputs)
                .map(|(c, col)| colour_from_profiles(c, col, profiles, vs, ls))
                .collect::<Option<Vec<_>>>()?;
            Some(Child::Vertex(Vertex { number, colour: edge.clone(), children }))
        }
    }
}

fn renumber_leaves(c: &Child, ls: &mut impl Iterator<Item = u64>) -> Child {
    match c {
        Child::Leaf(l) => Child::Leaf(Leaf { number: ls.next().unwrap(), colour: l.colour.clone() }),
        Child::Vertex(v) => Child::Vertex(Vertex {
            number: v.number,
            colour: v.colour.clone(),
            children: v.children.iter().map(|w| renumber_leaves(w, ls)).collect(),
        }),
    }
}

/// Conditions (i)-(iii) checked directly on the literal tree.
fn satisfies(tree: &ColouredTree, vertex_profiles: &[Profile], boundary: &Profile) -> bool {
    let ColouredTree::Vertex(root) = tree else { return false };
    if root.colour != boundary.output {
        return false;
    }
    let mut vertex_ok = true;
    let mut leaves: BTreeMap<u64, Colour> = BTreeMap::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let want = &vertex_profiles[(v.number - 1) as usize];
        let ins: Vec<&Colour> = v
            .children
            .iter()
            .map(|c| match c {
                Child::Leaf(l) => &l.colour,
                Child::Vertex(w) => &w.colour,
            })
            .collect();
        if want.output != v.colour || ins.len() != want.inputs.len() || ins.iter().zip(&want.inputs).any(|(a, b)| *a != b) {
            vertex_ok = false;
        }
        for c in &v.children {
            match c {
                Child::Leaf(l) => {
                    leaves.insert(l.number, l.colour.clone());
                }
                Child::Vertex(w) => stack.push(w),
            }
        }
    }
    vertex_ok
        && leaves.len() == boundary.inputs.len()
        && leaves.iter().all(|(k, c)| boundary.inputs[(*k - 1) as usize] == *c)
}
