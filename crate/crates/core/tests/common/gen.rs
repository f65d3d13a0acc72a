//! Random trees for the law suites, driven by a seeded generator.

use std::collections::BTreeSet;

use operad_forge::colour::{Colour, Profile};
use operad_forge::sc::ScElement;
use operad_forge::trees::{Child, ColouredTree, Leaf, Vertex};
use operad_forge::Permutation;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn palette(n: usize) -> BTreeSet<Colour> {
    ["a", "b", "c"][..n].iter().map(|c| Colour::new(*c).unwrap()).collect()
}

enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

fn vertices(s: &Shape) -> usize {
    match s {
        Shape::Leaf => 0,
        Shape::Node(cs) => 1 + cs.iter().map(vertices).sum::<usize>(),
    }
}

/// A random planar shape with exactly `leaves` leaves and at most `budget`
/// vertices, or `None` if the attempt ran out of vertices.
fn shape(rng: &mut impl Rng, leaves: usize, budget: usize, allow_edge: bool) -> Option<Shape> {
    if allow_edge && leaves == 1 && (budget == 0 || rng.gen_bool(0.35)) {
        return Some(Shape::Leaf);
    }
    if budget == 0 {
        return None;
    }
    let k = rng.gen_range(0..=3usize);
    if k == 0 {
        return (leaves == 0).then_some(Shape::Node(Vec::new()));
    }
    // random split of the leaves over k ordered children
    let mut split = vec![0; k];
    for _ in 0..leaves {
        split[rng.gen_range(0..k)] += 1;
    }
    let mut left = budget - 1;
    let mut children = Vec::with_capacity(k);
    for part in split {
        let child = shape(rng, part, left, true)?;
        left -= vertices(&child);
        children.push(child);
    }
    Some(Shape::Node(children))
}

struct Fill<'a, R: Rng> {
    rng: &'a mut R,
    colours: Vec<Colour>,
    leaf_colours: Vec<Colour>,
    leaf_numbers: std::vec::IntoIter<u64>,
    vertex_numbers: std::vec::IntoIter<u64>,
}

impl<R: Rng> Fill<'_, R> {
    fn child(&mut self, s: &Shape, colour: Colour) -> Child {
        match s {
            Shape::Leaf => unreachable!("leaves are filled by their parent"),
            Shape::Node(cs) => Child::Vertex(self.vertex(cs, colour)),
        }
    }

    fn vertex(&mut self, cs: &[Shape], colour: Colour) -> Vertex {
        let number = self.vertex_numbers.next().unwrap();
        let children = cs
            .iter()
            .map(|c| match c {
                Shape::Leaf => {
                    let n = self.leaf_numbers.next().unwrap();
                    Child::Leaf(Leaf { number: n, colour: self.leaf_colours[(n - 1) as usize].clone() })
                }
                node => {
                    let col = self.colours.choose(self.rng).unwrap().clone();
                    self.child(node, col)
                }
            })
            .collect();
        Vertex { number, colour, children }
    }
}

/// A random element with the given boundary and at most `max_vertices`
/// vertices; internal edges get random colours.
pub fn tree_with_boundary(
    rng: &mut impl Rng,
    colours: &BTreeSet<Colour>,
    boundary: &Profile,
    max_vertices: usize,
) -> ScElement {
    let m = boundary.arity();
    let edge_ok = m == 1 && boundary.inputs[0] == boundary.output;
    let s = loop {
        if let Some(s) = shape(rng, m, max_vertices, edge_ok) {
            break s;
        }
    };
    let tree = match &s {
        Shape::Leaf => ColouredTree::Edge(boundary.output.clone()),
        Shape::Node(cs) => {
            let n = vertices(&s) as u64;
            let mut vs: Vec<u64> = (1..=n).collect();
            vs.shuffle(rng);
            let mut ls: Vec<u64> = (1..=m as u64).collect();
            ls.shuffle(rng);
            let mut fill = Fill {
                colours: colours.iter().cloned().collect(),
                leaf_colours: boundary.inputs.clone(),
                leaf_numbers: ls.into_iter(),
                vertex_numbers: vs.into_iter(),
                rng,
            };
            ColouredTree::Vertex(fill.vertex(cs, boundary.output.clone()))
        }
    };
    ScElement::new(tree, colours.clone()).expect("generated trees are well formed")
}

pub fn random_profile(rng: &mut impl Rng, colours: &BTreeSet<Colour>, max_arity: usize) -> Profile {
    let cs: Vec<&Colour> = colours.iter().collect();
    let n = rng.gen_range(0..=max_arity);
    Profile::new((0..n).map(|_| (*cs.choose(rng).unwrap()).clone()).collect(), (*cs.choose(rng).unwrap()).clone())
}

/// A random element with a random boundary of arity at most 3.
pub fn random_tree(rng: &mut impl Rng, colours: &BTreeSet<Colour>, max_vertices: usize) -> ScElement {
    let p = random_profile(rng, colours, 3);
    tree_with_boundary(rng, colours, &p, max_vertices)
}

/// Arguments for a full composition into `x`: one random tree per vertex,
/// with the vertex's profile as boundary.
pub fn arguments(rng: &mut impl Rng, x: &ScElement, max_vertices: usize) -> Vec<ScElement> {
    x.profile()
        .inputs
        .iter()
        .map(|p| tree_with_boundary(rng, x.colours(), p, max_vertices))
        .collect()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

/// `β_1 ⊕ ... ⊕ β_n`.
pub fn direct_sum(parts: &[Permutation]) -> Permutation {
    let total: usize = parts.iter().map(Permutation::len).sum();
    let mut acc = Permutation::identity(total);
    let mut before = 0;
    for b in parts {
        let after = total - before - b.len();
        acc = acc.compose(&b.embed(before, after));
        before += b.len();
    }
    acc
}

/// Random component queries: vertex-profile lists over one or two colours,
/// each paired with every boundary of the matching arity.
pub fn component_queries(rng: &mut impl Rng, rounds: usize) -> Vec<(BTreeSet<Colour>, Vec<Profile>, Profile)> {
    let mut out = Vec::new();
    for _ in 0..rounds {
        let cs = palette(rng.gen_range(1..=2));
        let colours: Vec<Colour> = cs.iter().cloned().collect();
        let n = rng.gen_range(1..=3);
        let vs: Vec<Profile> = (0..n).map(|_| random_profile(rng, &cs, 2)).collect();
        let edges = 1 + vs.iter().map(Profile::arity).sum::<usize>();
        if edges < n {
            continue;
        }
        let mut inputs: Vec<Vec<Colour>> = vec![Vec::new()];
        for _ in 0..edges - n {
            inputs = inputs
                .iter()
                .flat_map(|t| colours.iter().map(move |c| [t.clone(), vec![c.clone()]].concat()))
                .collect();
        }
        for ins in inputs {
            for out_colour in &colours {
                out.push((cs.clone(), vs.clone(), Profile::new(ins.clone(), out_colour.clone())));
            }
        }
    }
    out
}
