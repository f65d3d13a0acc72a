//! Brute-force classes of decorated trees: every planar decorated tree with
//! numbered leaves is listed, and trees related by reordering the inputs of
//! one vertex are merged with a union-find.

use std::collections::{BTreeMap, BTreeSet};

use operad_forge::collection::Collection;
use operad_forge::colour::{Colour, Profile};
use operad_forge::free::{Branch, DecoratedTree, Node};
use operad_forge::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum T {
    Edge(Colour),
    Leaf(u64),
    Node(Profile, usize, Vec<T>),
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Planar trees with root colour `c` and exactly `v` vertices; leaves are
/// `Leaf(0)` placeholders. Returns each tree with its leaf colours in order.
fn planar(k: &Collection, c: &Colour, v: usize) -> Vec<(T, Vec<Colour>)> {
    if v == 0 {
        return vec![(T::Leaf(0), vec![c.clone()])];
    }
    let mut out = Vec::new();
    for p in k.support().filter(|p| &p.output == c) {
        for e in 0..k.size(p) {
            for split in compositions(v - 1, p.arity()) {
                let mut partial: Vec<(Vec<T>, Vec<Colour>)> = vec![(Vec::new(), Vec::new())];
                for (d, &share) in p.inputs.iter().zip(&split) {
                    let subs = planar(k, d, share);
                    partial = partial
                        .iter()
                        .flat_map(|(ch, cols)| {
                            subs.iter().map(move |(s, scols)| {
                                let mut ch = ch.clone();
                                ch.push(s.clone());
                                let mut cols = cols.clone();
                                cols.extend(scols.iter().cloned());
                                (ch, cols)
                            })
                        })
                        .collect();
                }
                for (ch, cols) in partial {
                    out.push((T::Node(p.clone(), e, ch), cols));
                }
            }
        }
    }
    out
}

fn number(t: &T, next: &mut impl Iterator<Item = u64>) -> T {
    match t {
        T::Leaf(_) => T::Leaf(next.next().unwrap()),
        T::Node(p, e, ch) => T::Node(p.clone(), *e, ch.iter().map(|c| number(c, next)).collect()),
        T::Edge(c) => T::Edge(c.clone()),
    }
}

/// All single-vertex reorderings of `t`.
fn moves(k: &Collection, t: &T) -> Vec<T> {
    let T::Node(p, e, ch) = t else { return Vec::new() };
    let mut out = Vec::new();
    for alpha in Permutation::all(p.arity()) {
        let e2 = k.act(p, *e, &alpha).expect("actions stored");
        out.push(T::Node(p.permuted(&alpha), e2, alpha.permute_right(ch)));
    }
    for (j, c) in ch.iter().enumerate() {
        for m in moves(k, c) {
            let mut ch2 = ch.clone();
            ch2[j] = m;
            out.push(T::Node(p.clone(), *e, ch2));
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Classes with the given boundary and exactly `v` vertices.
pub fn classes(k: &Collection, boundary: &Profile, v: usize) -> Vec<BTreeSet<T>> {
    if v == 0 {
        let edge = boundary.arity() == 1 && boundary.inputs[0] == boundary.output;
        return if edge { vec![BTreeSet::from([T::Edge(boundary.output.clone())])] } else { Vec::new() };
    }
    let n = boundary.arity();
    let mut trees: Vec<T> = Vec::new();
    for (t, cols) in planar(k, &boundary.output, v) {
        if cols.len() != n {
            continue;
        }
        for perm in Permutation::all(n) {
            let numbers: Vec<u64> = perm.images().iter().map(|&j| j as u64).collect();
            let ok = numbers.iter().zip(&cols).all(|(&j, c)| boundary.inputs[(j - 1) as usize] == *c);
            if ok {
                trees.push(number(&t, &mut numbers.into_iter()));
            }
        }
    }
    trees.sort();
    trees.dedup();
    let index: BTreeMap<T, usize> = trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut parent: Vec<usize> = (0..trees.len()).collect();
    for (i, t) in trees.iter().enumerate() {
        for m in moves(k, t) {
            let j = index[&m];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<T>> = BTreeMap::new();
    for (i, t) in trees.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().insert(t.clone());
    }
    groups.into_values().collect()
}

/// The same tree in the library's representation, for comparing class
/// representatives.
pub fn to_library(k: &Collection, t: &T) -> DecoratedTree {
    fn node(k: &Collection, t: &T) -> Node {
        let T::Node(p, e, ch) = t else { unreachable!() };
        Node {
            name: k.name(p, *e).to_string(),
            profile: p.clone(),
            element: *e,
            children: ch
                .iter()
                .map(|c| match c {
                    T::Leaf(n) => Branch::Leaf(*n),
                    other => Branch::Node(node(k, other)),
                })
                .collect(),
        }
    }
    match t {
        T::Edge(c) => DecoratedTree::Edge(c.clone()),
        other => DecoratedTree::Node(node(k, other)),
    }
}
