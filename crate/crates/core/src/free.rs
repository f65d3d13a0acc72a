//! The free operad on a finite collection, truncated by vertex count.
//!
//! Elements are trees whose vertices are decorated by elements of the
//! collection and whose leaves are numbered. Reordering the inputs of a
//! vertex by `α` while replacing its decoration `k` by `k·α` gives the same
//! element; each class is represented by its least member in the order of
//! [`Node`] (decoration name, then profile, then children left to right).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::collection::{Collection, CollectionMorphism};
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Permutation;
use crate::report::Report;
use crate::sc::ScElement;
use crate::trees::{self, ColouredTree};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecoratedTree {
    Edge(Colour),
    Node(Node),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub name: String,
    /// Profile of the decoration; its inputs are the children's colours.
    pub profile: Profile,
    pub element: usize,
    pub children: Vec<Branch>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Leaf(u64),
    Node(Node),
}

impl Node {
    fn leaves(&self, out: &mut Vec<u64>) {
        for b in &self.children {
            match b {
                Branch::Leaf(n) => out.push(*n),
                Branch::Node(w) => w.leaves(out),
            }
        }
    }

    fn leaf_colours(&self, out: &mut Vec<Colour>) {
        for (b, c) in self.children.iter().zip(&self.profile.inputs) {
            match b {
                Branch::Leaf(_) => out.push(c.clone()),
                Branch::Node(w) => w.leaf_colours(out),
            }
        }
    }

    fn vertex_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|b| match b {
                Branch::Leaf(_) => 0,
                Branch::Node(w) => w.vertex_count(),
            })
            .sum::<usize>()
    }

    fn map_leaves(&self, f: &impl Fn(u64) -> u64) -> Node {
        Node {
            children: self
                .children
                .iter()
                .map(|b| match b {
                    Branch::Leaf(n) => Branch::Leaf(f(*n)),
                    Branch::Node(w) => Branch::Node(w.map_leaves(f)),
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Replaces the leaf numbered `at` by `graft`, if present.
    fn replace_leaf(&self, at: u64, graft: &Branch) -> Node {
        Node {
            children: self
                .children
                .iter()
                .map(|b| match b {
                    Branch::Leaf(n) if *n == at => graft.clone(),
                    Branch::Leaf(n) => Branch::Leaf(*n),
                    Branch::Node(w) => Branch::Node(w.replace_leaf(at, graft)),
                })
                .collect(),
            ..self.clone()
        }
    }
}

impl DecoratedTree {
    /// Leaf numbers in planar order.
    pub fn planar_leaves(&self) -> Vec<u64> {
        match self {
            DecoratedTree::Edge(_) => vec![1],
            DecoratedTree::Node(v) => {
                let mut out = Vec::new();
                v.leaves(&mut out);
                out
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            DecoratedTree::Edge(_) => 0,
            DecoratedTree::Node(v) => v.vertex_count(),
        }
    }

    pub fn root_colour(&self) -> &Colour {
        match self {
            DecoratedTree::Edge(c) => c,
            DecoratedTree::Node(v) => &v.profile.output,
        }
    }

    /// Leaf colours by leaf number, and the root colour.
    pub fn boundary(&self) -> Profile {
        match self {
            DecoratedTree::Edge(c) => Profile::identity(c.clone()),
            DecoratedTree::Node(v) => {
                let mut colours = Vec::new();
                v.leaf_colours(&mut colours);
                let mut inputs = colours.clone();
                for (c, n) in colours.into_iter().zip(self.planar_leaves()) {
                    inputs[n as usize - 1] = c;
                }
                Profile::new(inputs, v.profile.output.clone())
            }
        }
    }

    fn map_leaves(&self, f: &impl Fn(u64) -> u64) -> DecoratedTree {
        match self {
            DecoratedTree::Edge(c) => DecoratedTree::Edge(c.clone()),
            DecoratedTree::Node(v) => DecoratedTree::Node(v.map_leaves(f)),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (k, b) in self.children.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            match b {
                Branch::Leaf(n) => write!(f, "l{n}")?,
                Branch::Node(w) => write!(f, "{w}")?,
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoratedTree::Edge(c) => write!(f, "e:{c}"),
            DecoratedTree::Node(v) => write!(f, "{v}"),
        }
    }
}

/// The free operad on `k`, with classes of at most `max_vertices` vertices.
#[derive(Clone, Debug)]
pub struct FreeOperad {
    k: Collection,
    max_vertices: usize,
}

impl FreeOperad {
    /// Fails if `k` violates the action laws, since the identification of
    /// trees is only an equivalence relation for a genuine collection.
    pub fn new(k: Collection, max_vertices: usize) -> Result<Self> {
        let report = k.validate();
        if !report.is_ok() {
            return Err(Error::VerificationFailed { what: "collection".into(), detail: report.to_string() });
        }
        Ok(FreeOperad { k, max_vertices })
    }

    pub fn collection(&self) -> &Collection {
        &self.k
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    fn canonical_node(&self, v: &Node) -> Node {
        let children: Vec<Branch> = v
            .children
            .iter()
            .map(|b| match b {
                Branch::Leaf(n) => Branch::Leaf(*n),
                Branch::Node(w) => Branch::Node(self.canonical_node(w)),
            })
            .collect();
        let mut best: Option<Node> = None;
        for alpha in Permutation::all(v.profile.arity()) {
            let element = self.k.act(&v.profile, v.element, &alpha).expect("validated collection");
            let profile = v.profile.permuted(&alpha);
            let candidate = Node {
                name: self.k.name(&profile, element).to_string(),
                profile,
                element,
                children: alpha.permute_right(&children),
            };
            if best.as_ref().map_or(true, |b| candidate < *b) {
                best = Some(candidate);
            }
        }
        best.expect("Σn is never empty")
    }

    /// The representative of the class of `t`.
    pub fn canonical(&self, t: &DecoratedTree) -> DecoratedTree {
        match t {
            DecoratedTree::Edge(c) => DecoratedTree::Edge(c.clone()),
            DecoratedTree::Node(v) => DecoratedTree::Node(self.canonical_node(v)),
        }
    }

    /// The one-vertex class of `k ∈ K[p]` with leaves in order.
    pub fn generator(&self, p: &Profile, element: usize) -> Result<DecoratedTree> {
        if element >= self.k.size(p) {
            return Err(Error::UnknownElement { profile: p.to_string(), element: format!("#{element}") });
        }
        let node = Node {
            name: self.k.name(p, element).to_string(),
            profile: p.clone(),
            element,
            children: (1..=p.arity() as u64).map(Branch::Leaf).collect(),
        };
        Ok(self.canonical(&DecoratedTree::Node(node)))
    }

    pub fn unit(&self, c: &Colour) -> DecoratedTree {
        DecoratedTree::Edge(c.clone())
    }

    /// Renumbers leaves: leaf `j` becomes leaf `α⁻¹(j)`.
    pub fn act(&self, x: &DecoratedTree, alpha: &Permutation) -> Result<DecoratedTree> {
        let n = x.boundary().arity();
        if alpha.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: alpha.len() });
        }
        let inv = alpha.inverse();
        Ok(self.canonical(&x.map_leaves(&|j| inv.image(j as usize) as u64)))
    }

    /// Grafts `y` onto leaf `i` of `x`; `y`'s leaves become `i..i+m-1` and
    /// later leaves of `x` shift up by `m-1`.
    pub fn circ(&self, x: &DecoratedTree, i: usize, y: &DecoratedTree) -> Result<DecoratedTree> {
        let bx = x.boundary();
        if i == 0 || i > bx.arity() {
            return Err(Error::IndexOutOfRange { index: i, len: bx.arity() });
        }
        if bx.inputs[i - 1] != *y.root_colour() {
            return Err(Error::ProfileMismatch {
                position: i,
                expected: bx.inputs[i - 1].to_string(),
                found: y.root_colour().to_string(),
            });
        }
        let m = y.boundary().arity() as u64;
        let i = i as u64;
        let shifted_y = y.map_leaves(&|j| j + i - 1);
        let shifted_x = x.map_leaves(&|j| if j > i { j + m - 1 } else { j });
        let out = match (shifted_x, shifted_y) {
            (DecoratedTree::Edge(_), y) => y,
            (x, DecoratedTree::Edge(_)) => x,
            (DecoratedTree::Node(xv), DecoratedTree::Node(yv)) => DecoratedTree::Node(xv.replace_leaf(i, &Branch::Node(yv))),
        };
        Ok(self.canonical(&out))
    }

    /// All classes with the given boundary and at most `max_vertices`
    /// vertices, sorted.
    pub fn elements(&self, boundary: &Profile) -> Vec<DecoratedTree> {
        let n = boundary.arity();
        let mut out = BTreeSet::new();
        if n == 1 && boundary.inputs[0] == boundary.output {
            out.insert(DecoratedTree::Edge(boundary.output.clone()));
        }
        let by_output = self.by_output();
        for (node, _) in planar_nodes(&by_output, &boundary.output, self.max_vertices, n) {
            let mut colours = Vec::new();
            node.leaf_colours(&mut colours);
            if colours.len() != n {
                continue;
            }
            number_leaves(&colours, &boundary.inputs, &mut |numbers| {
                let mut it = numbers.iter().copied();
                let numbered = number_planar(&node, &mut it);
                out.insert(self.canonical(&DecoratedTree::Node(numbered)));
            });
        }
        out.into_iter().collect()
    }

    fn by_output(&self) -> BTreeMap<Colour, Vec<(Profile, usize)>> {
        let mut out: BTreeMap<Colour, Vec<(Profile, usize)>> = BTreeMap::new();
        for p in self.k.support() {
            for e in 0..self.k.size(p) {
                out.entry(p.output.clone()).or_default().push((p.clone(), e));
            }
        }
        out
    }
}

/// All classes with the given boundary and at most `max_vertices` vertices.
pub fn free_elements(k: &Collection, boundary: &Profile, max_vertices: usize) -> Result<Vec<DecoratedTree>> {
    Ok(FreeOperad::new(k.clone(), max_vertices)?.elements(boundary))
}

/// Planar decorated trees with root colour `c`, at most `budget` vertices and
/// `max_leaves` leaves; leaves carry placeholder number 0. Returns each tree
/// with its vertex count.
fn planar_nodes(
    by_output: &BTreeMap<Colour, Vec<(Profile, usize)>>,
    c: &Colour,
    budget: usize,
    max_leaves: usize,
) -> Vec<(Node, usize)> {
    let mut out = Vec::new();
    if budget == 0 {
        return out;
    }
    for (p, e) in by_output.get(c).map(Vec::as_slice).unwrap_or(&[]) {
        let mut partial: Vec<(Vec<Branch>, usize, usize)> = vec![(Vec::new(), 1, 0)];
        for d in &p.inputs {
            let mut next = Vec::new();
            for (children, used, leaves) in &partial {
                if leaves + 1 <= max_leaves {
                    let mut ch = children.clone();
                    ch.push(Branch::Leaf(0));
                    next.push((ch, *used, leaves + 1));
                }
                for (sub, n) in planar_nodes(by_output, d, budget - used, max_leaves - leaves) {
                    let mut count = Vec::new();
                    sub.leaf_colours(&mut count);
                    let mut ch = children.clone();
                    ch.push(Branch::Node(sub));
                    next.push((ch, used + n, leaves + count.len()));
                }
            }
            partial = next;
        }
        for (children, used, _) in partial {
            // names are filled in by canonicalisation
            out.push((Node { name: String::new(), profile: p.clone(), element: *e, children }, used));
        }
    }
    out
}

/// Calls `emit` with every assignment of leaf numbers to planar positions
/// that respects colours.
fn number_leaves(planar: &[Colour], by_number: &[Colour], emit: &mut dyn FnMut(&[u64])) {
    fn go(planar: &[Colour], by_number: &[Colour], taken: &mut [bool], acc: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
        let k = acc.len();
        if k == planar.len() {
            emit(acc);
            return;
        }
        for j in 0..by_number.len() {
            if !taken[j] && by_number[j] == planar[k] {
                taken[j] = true;
                acc.push(j as u64 + 1);
                go(planar, by_number, taken, acc, emit);
                acc.pop();
                taken[j] = false;
            }
        }
    }
    go(planar, by_number, &mut vec![false; by_number.len()], &mut Vec::new(), emit);
}

fn number_planar(v: &Node, numbers: &mut impl Iterator<Item = u64>) -> Node {
    Node {
        children: v
            .children
            .iter()
            .map(|b| match b {
                Branch::Leaf(_) => Branch::Leaf(numbers.next().expect("one number per leaf")),
                Branch::Node(w) => Branch::Node(number_planar(w, numbers)),
            })
            .collect(),
        ..v.clone()
    }
}

/// The operad morphism out of the free operad determined by `gen : K → U(P)`.
pub struct Evaluator<'a> {
    free: &'a FreeOperad,
    target: &'a FiniteOperad,
    gen: &'a CollectionMorphism,
}

impl<'a> Evaluator<'a> {
    /// Fails if `gen` is not an equivariant map into `P`'s components.
    pub fn new(free: &'a FreeOperad, target: &'a FiniteOperad, gen: &'a CollectionMorphism) -> Result<Self> {
        let report = gen.validate(free.collection(), target.base());
        if !report.is_ok() {
            return Err(Error::VerificationFailed { what: "generator map".into(), detail: report.to_string() });
        }
        Ok(Evaluator { free, target, gen })
    }

    /// Replaces decorations by their images and composes along the tree in
    /// planar order, then renumbers the inputs by the leaf numbering.
    pub fn evaluate(&self, t: &DecoratedTree) -> Result<usize> {
        match t {
            DecoratedTree::Edge(c) => self
                .target
                .unit(c)
                .ok_or_else(|| Error::OutsideSupport(Profile::identity(c.clone()).to_string())),
            DecoratedTree::Node(v) => {
                let (planar, e) = self.evaluate_node(v)?;
                let beta = leaf_positions(&t.planar_leaves());
                self.target
                    .act(&planar, &e, &beta)
                    .ok_or_else(|| Error::OutsideSupport(planar.permuted(&beta).to_string()))
            }
        }
    }

    /// Children that do not add inputs are grafted first, so intermediate
    /// composites never have more inputs than the result.
    fn evaluate_node(&self, v: &Node) -> Result<(Profile, usize)> {
        let mut subtrees = Vec::new();
        for (k, b) in v.children.iter().enumerate() {
            if let Branch::Node(w) = b {
                subtrees.push((k, self.evaluate_node(w)?));
            }
        }
        subtrees.sort_by_key(|(k, (p, _))| (p.arity() > 1, *k));
        let mut width = vec![1usize; v.children.len()];
        let mut acc = (v.profile.clone(), self.gen.apply(&v.profile, v.element).expect("validated"));
        for (k, (inner, y)) in subtrees {
            let slot = 1 + width[..k].iter().sum::<usize>();
            let composite = acc.0.graft(slot, &inner).expect("profiles match");
            let z = self
                .target
                .circ(&acc.0, &acc.1, slot, &inner, &y)
                .ok_or_else(|| Error::OutsideSupport(composite.to_string()))?;
            width[k] = inner.arity();
            acc = (composite, z);
        }
        Ok(acc)
    }

    pub fn free(&self) -> &FreeOperad {
        self.free
    }
}

/// `j ↦ planar position of leaf j`, from leaf numbers in planar order.
fn leaf_positions(planar: &[u64]) -> Permutation {
    let mut images = vec![0; planar.len()];
    for (pos, &n) in planar.iter().enumerate() {
        images[n as usize - 1] = pos + 1;
    }
    Permutation::new(images).expect("leaf numbering is a bijection")
}

/// Numbers the vertices of `t` in pre-order and returns the corresponding
/// tree-operad element with the decorations in vertex order.
pub fn to_sc_element(t: &DecoratedTree, colours: &BTreeSet<Colour>) -> Result<(ScElement, Vec<(Profile, usize)>)> {
    fn convert(v: &Node, next: &mut u64, labels: &mut Vec<(Profile, usize)>) -> trees::Vertex {
        *next += 1;
        let number = *next;
        labels.push((v.profile.clone(), v.element));
        let children = v
            .children
            .iter()
            .zip(&v.profile.inputs)
            .map(|(b, c)| match b {
                Branch::Leaf(n) => trees::Child::Leaf(trees::Leaf { number: *n, colour: c.clone() }),
                Branch::Node(w) => trees::Child::Vertex(convert(w, next, labels)),
            })
            .collect();
        trees::Vertex { number, colour: v.profile.output.clone(), children }
    }
    let mut labels = Vec::new();
    let tree = match t {
        DecoratedTree::Edge(c) => ColouredTree::Edge(c.clone()),
        DecoratedTree::Node(v) => ColouredTree::Vertex(convert(v, &mut 0, &mut labels)),
    };
    Ok((ScElement::new(tree, colours.clone())?, labels))
}

/// Checks that `eval` is an operad morphism on classes with at most the free
/// operad's vertex bound, over every boundary stored in the target.
pub fn verify_evaluator(eval: &Evaluator<'_>) -> Result<Report> {
    let free = eval.free;
    let target = eval.target;
    let mut report = Report::new();
    let mut classes: BTreeMap<Profile, Vec<DecoratedTree>> = BTreeMap::new();
    for p in target.support() {
        classes.insert(p.clone(), free.elements(&p));
    }
    let mut value = BTreeMap::new();
    for (p, xs) in &classes {
        for x in xs {
            let v = eval.evaluate(x)?;
            report.check(target.is_element(p, &v), "evaluation outside component", || format!("{x} in {p}"));
            value.insert(x.clone(), v);
        }
    }
    for c in target.colours() {
        if let Some(u) = target.unit(&c) {
            report.check(value.get(&free.unit(&c)) == Some(&u), "unit not preserved", || format!("colour {c}"));
        }
    }
    for (p, xs) in &classes {
        for x in xs {
            for alpha in Permutation::all(p.arity()) {
                let xa = free.act(x, &alpha)?;
                let rhs = target.act(p, &value[x], &alpha);
                report.check(value.get(&xa).copied() == rhs, "action not preserved", || format!("{x}·{alpha}"));
            }
            for i in 1..=p.arity() {
                for (q, ys) in classes.range(..).filter(|(q, _)| q.output == p.inputs[i - 1]) {
                    if !target.contains(&p.graft(i, q).expect("colours match")) {
                        continue;
                    }
                    for y in ys {
                        if x.vertex_count() + y.vertex_count() > free.max_vertices {
                            continue;
                        }
                        let xy = free.circ(x, i, y)?;
                        let rhs = target.circ(p, &value[x], i, q, &value[y]);
                        report.check(value.get(&xy).copied() == rhs, "composition not preserved", || {
                            format!("{x} ∘_{i} {y}")
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
