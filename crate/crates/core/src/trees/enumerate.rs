//! Exhaustive enumeration of numbered trees.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{Child, ColouredTree, Leaf, Vertex};
use crate::colour::{Colour, Profile};

/// Every tree whose vertex `i` has profile `vertex_profiles[i-1]` and whose
/// boundary is `boundary`, sorted by canonical text, without duplicates.
pub fn enumerate_trees(
    colours: &BTreeSet<Colour>,
    vertex_profiles: &[Profile],
    boundary: &Profile,
) -> Vec<ColouredTree> {
    let all_known = vertex_profiles
        .iter()
        .chain(std::iter::once(boundary))
        .flat_map(|p| p.inputs.iter().chain(std::iter::once(&p.output)))
        .all(|c| colours.contains(c));
    if !all_known {
        return Vec::new();
    }
    if vertex_profiles.is_empty() {
        return if boundary.inputs.len() == 1 && boundary.inputs[0] == boundary.output {
            vec![ColouredTree::Edge(boundary.output.clone())]
        } else {
            Vec::new()
        };
    }
    let leaves: usize = 1 + vertex_profiles.iter().map(|p| p.arity()).sum::<usize>() - vertex_profiles.len();
    if leaves != boundary.arity() {
        return Vec::new();
    }
    let shapes = shapes(vertex_profiles, &boundary.output);
    let mut out: Vec<(String, ColouredTree)> = Vec::new();
    for shape in shapes {
        for t in number_leaves(&shape, &boundary.inputs) {
            out.push((t.to_string(), t));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out.into_iter().map(|(_, t)| t).collect()
}

/// Every way to fill the slots `colours` left to right, each slot becoming a
/// leaf (number 0, assigned later) or a subtree rooted at an unused vertex
/// with the matching output colour. Returns the children and the used set.
fn fillings(colours: &[Colour], profiles: &[Profile], used: &[bool]) -> Vec<(Vec<Child>, Vec<bool>)> {
    let Some((first, rest)) = colours.split_first() else {
        return vec![(Vec::new(), used.to_vec())];
    };
    let mut heads: Vec<(Child, Vec<bool>)> = vec![(
        Child::Leaf(Leaf { number: 0, colour: first.clone() }),
        used.to_vec(),
    )];
    for v in 0..profiles.len() {
        if used[v] || profiles[v].output != *first {
            continue;
        }
        let mut with_v = used.to_vec();
        with_v[v] = true;
        for (children, after) in fillings(&profiles[v].inputs, profiles, &with_v) {
            heads.push((
                Child::Vertex(Vertex {
                    number: v as u64 + 1,
                    colour: first.clone(),
                    children,
                }),
                after,
            ));
        }
    }
    let mut out = Vec::new();
    for (head, after) in heads {
        for (mut tail, end) in fillings(rest, profiles, &after) {
            tail.insert(0, head.clone());
            out.push((tail, end));
        }
    }
    out
}

/// Planar shapes (leaves unnumbered) using every vertex exactly once, rooted
/// at a vertex of colour `root`.
fn shapes(profiles: &[Profile], root: &Colour) -> Vec<Vertex> {
    let mut out = Vec::new();
    for r in 0..profiles.len() {
        if profiles[r].output != *root {
            continue;
        }
        let mut used = vec![false; profiles.len()];
        used[r] = true;
        for (children, after) in fillings(&profiles[r].inputs, profiles, &used) {
            if after.iter().all(|&u| u) {
                out.push(Vertex {
                    number: r as u64 + 1,
                    colour: root.clone(),
                    children,
                });
            }
        }
    }
    out
}

/// All ways to number the leaves of `shape` so that leaf `j` has colour `inputs[j-1]`.
fn number_leaves(shape: &Vertex, inputs: &[Colour]) -> Vec<ColouredTree> {
    let mut planar = Vec::new();
    collect_leaf_colours(shape, &mut planar);
    if planar.len() != inputs.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut taken = vec![false; inputs.len()];
    let mut assignment = Vec::with_capacity(planar.len());
    assign(&planar, inputs, &mut taken, &mut assignment, &mut |nums| {
        let mut it = nums.iter().copied();
        out.push(ColouredTree::Vertex(relabel(shape, &mut it)));
    });
    out
}

fn collect_leaf_colours(v: &Vertex, out: &mut Vec<Colour>) {
    for c in &v.children {
        match c {
            Child::Leaf(l) => out.push(l.colour.clone()),
            Child::Vertex(w) => collect_leaf_colours(w, out),
        }
    }
}

fn assign(
    planar: &[Colour],
    inputs: &[Colour],
    taken: &mut [bool],
    acc: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    let k = acc.len();
    if k == planar.len() {
        emit(acc);
        return;
    }
    for j in 0..inputs.len() {
        if !taken[j] && inputs[j] == planar[k] {
            taken[j] = true;
            acc.push(j as u64 + 1);
            assign(planar, inputs, taken, acc, emit);
            acc.pop();
            taken[j] = false;
        }
    }
}

fn relabel(v: &Vertex, nums: &mut impl Iterator<Item = u64>) -> Vertex {
    Vertex {
        number: v.number,
        colour: v.colour.clone(),
        children: v
            .children
            .iter()
            .map(|c| match c {
                Child::Leaf(l) => Child::Leaf(Leaf {
                    number: nums.next().expect("one number per leaf"),
                    colour: l.colour.clone(),
                }),
                Child::Vertex(w) => Child::Vertex(relabel(w, nums)),
            })
            .collect(),
    }
}

/// Every numbered tree with at most `max_vertices` vertices, all of whose
/// vertex profiles lie in `allowed`, and with at most `max_leaves` leaves.
/// Edge trees are included for every colour in `colours`. Output is sorted by
/// canonical text.
pub fn trees_with_vertex_profiles_in(
    colours: &BTreeSet<Colour>,
    allowed: &[Profile],
    max_vertices: usize,
    max_leaves: usize,
) -> Vec<ColouredTree> {
    let allowed: Vec<Profile> = allowed.iter().cloned().sorted().dedup().collect();
    let mut out: Vec<ColouredTree> = Vec::new();
    if max_leaves >= 1 {
        out.extend(colours.iter().map(|c| ColouredTree::Edge(c.clone())));
    }
    for n in 1..=max_vertices {
        // multisets of profiles of size n, realised as lists of profile
        // indices, then enumerated through `enumerate_trees` with all boundaries
        for combo in (0..allowed.len()).combinations_with_replacement(n) {
            let profiles: Vec<Profile> = combo.iter().map(|&k| allowed[k].clone()).collect();
            let edges = 1 + profiles.iter().map(|p| p.arity()).sum::<usize>();
            if edges < n || edges - n > max_leaves {
                continue;
            }
            // every ordering of the multiset gives the vertex numberings
            let orderings: BTreeSet<Vec<Profile>> =
                profiles.iter().cloned().permutations(n).collect();
            for vertex_profiles in orderings {
                for root in colours {
                    for tree in trees_with_root(&vertex_profiles, root) {
                        out.push(tree);
                    }
                }
            }
        }
    }
    let mut keyed: Vec<(String, ColouredTree)> = out.into_iter().map(|t| (t.to_string(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// All trees with the given vertex profiles and root colour, every leaf numbering.
fn trees_with_root(vertex_profiles: &[Profile], root: &Colour) -> Vec<ColouredTree> {
    let shapes = shapes(vertex_profiles, root);
    let mut out = Vec::new();
    for shape in shapes {
        let mut planar = Vec::new();
        collect_leaf_colours(&shape, &mut planar);
        // leaf numberings: every permutation of planar positions
        for order in (0..planar.len()).permutations(planar.len()) {
            let mut it = order.iter().map(|&k| k as u64 + 1);
            out.push(ColouredTree::Vertex(relabel(&shape, &mut it)));
        }
    }
    out
}
