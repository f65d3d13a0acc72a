//! Operads as algebras over the tree operad, and back.

use std::collections::{BTreeMap, BTreeSet};

use crate::collection::Collection;
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::{verify_operad, FiniteOperad, Operad};
use crate::perm::Permutation;
use crate::report::Report;
use crate::sc::ScElement;
use crate::trees::{trees_with_vertex_profiles_in, Child, ColouredTree, Leaf, Vertex};

/// A family of finite sets indexed by profiles, elements named.
pub type ProfileFamily = BTreeMap<Profile, Vec<String>>;

/// An algebra over the tree operad: a profile-indexed family together with,
/// for every tree, an operation taking one element per vertex (vertex `k`
/// gets `args[k-1]`) to an element at the tree's boundary profile.
pub trait ScAlgebra {
    fn family(&self) -> &ProfileFamily;

    fn evaluate(&self, x: &ScElement, args: &[usize]) -> Result<usize>;
}

/// Composes the vertex labels along the tree and then applies the leaf
/// permutation. Vertex `k` is labelled `elems[k-1]`.
pub fn sc_evaluate<O: Operad<Colour = Colour>>(q: &O, x: &ScElement, elems: &[O::Elem]) -> Result<O::Elem> {
    let profiles = x.profile().inputs;
    if elems.len() != profiles.len() {
        return Err(Error::ArityMismatch { expected: profiles.len(), found: elems.len() });
    }
    for (k, (p, e)) in profiles.iter().zip(elems).enumerate() {
        if !q.contains(p) || !q.is_element(p, e) {
            return Err(Error::ProfileMismatch {
                position: k + 1,
                expected: p.to_string(),
                found: format!("{e:?}"),
            });
        }
    }
    match x.tree() {
        ColouredTree::Edge(c) => q.unit(c).ok_or_else(|| Error::OutsideSupport(Profile::identity(c.clone()).to_string())),
        ColouredTree::Vertex(root) => {
            let (planar, e) = evaluate_vertex(q, root, elems)?;
            let beta = x.tree().leaf_positions();
            q.act(&planar, &e, &beta)
                .ok_or_else(|| Error::OutsideSupport(planar.permuted(&beta).to_string()))
        }
    }
}

/// Planar composite below `v`: its profile lists leaf colours left to right.
///
/// Children that do not add inputs are grafted first so that intermediate
/// composites never have more inputs than the result.
fn evaluate_vertex<O: Operad<Colour = Colour>>(
    q: &O,
    v: &Vertex,
    elems: &[O::Elem],
) -> Result<(Profile, O::Elem)> {
    let mut subtrees = Vec::new();
    for (k, child) in v.children.iter().enumerate() {
        if let Child::Vertex(w) = child {
            subtrees.push((k, evaluate_vertex(q, w, elems)?));
        }
    }
    subtrees.sort_by_key(|(k, (p, _))| (p.arity() > 1, *k));
    let mut width = vec![1usize; v.children.len()];
    let mut acc = (v.profile(), elems[v.number as usize - 1].clone());
    for (k, (inner, y)) in subtrees {
        let slot = 1 + width[..k].iter().sum::<usize>();
        let composite = acc.0.graft(slot, &inner).expect("vertex profiles match edge colours");
        let z = q
            .circ(&acc.0, &acc.1, slot, &inner, &y)
            .ok_or_else(|| Error::OutsideSupport(composite.to_string()))?;
        acc = (composite, z);
        width[k] = inner.arity();
    }
    Ok(acc)
}

/// The tree-operad algebra carried by the components of a finite operad.
pub struct OperadScAlgebra<'a> {
    operad: &'a FiniteOperad,
    family: ProfileFamily,
}

impl<'a> OperadScAlgebra<'a> {
    pub fn new(operad: &'a FiniteOperad) -> Self {
        let family = operad
            .base()
            .support()
            .map(|p| (p.clone(), operad.base().elements(p).to_vec()))
            .collect();
        OperadScAlgebra { operad, family }
    }
}

impl ScAlgebra for OperadScAlgebra<'_> {
    fn family(&self) -> &ProfileFamily {
        &self.family
    }

    fn evaluate(&self, x: &ScElement, args: &[usize]) -> Result<usize> {
        sc_evaluate(self.operad, x, args)
    }
}

fn colours_of(family: &ProfileFamily) -> BTreeSet<Colour> {
    family
        .keys()
        .flat_map(|p| p.inputs.iter().chain([&p.output]))
        .cloned()
        .collect()
}

fn leaf(number: usize, colour: &Colour) -> Child {
    Child::Leaf(Leaf { number: number as u64, colour: colour.clone() })
}

/// One vertex of profile `p`; the leaf at planar position `k` is numbered
/// `α⁻¹(k)`, so its leaf permutation is `α`.
fn permuted_corolla(p: &Profile, alpha: &Permutation) -> ColouredTree {
    let inv = alpha.inverse();
    ColouredTree::Vertex(Vertex {
        number: 1,
        colour: p.output.clone(),
        children: p.inputs.iter().enumerate().map(|(k, c)| leaf(inv.image(k + 1), c)).collect(),
    })
}

/// Vertex 1 of profile `outer` with vertex 2 of profile `inner` at input `i`,
/// leaves numbered left to right.
fn two_level(outer: &Profile, i: usize, inner: &Profile) -> ColouredTree {
    let mut next = 0;
    let mut fresh = |c: &Colour| {
        next += 1;
        leaf(next, c)
    };
    let mut children = Vec::new();
    for (k, c) in outer.inputs.iter().enumerate() {
        if k + 1 == i {
            let below = inner.inputs.iter().map(&mut fresh).collect();
            children.push(Child::Vertex(Vertex { number: 2, colour: inner.output.clone(), children: below }));
        } else {
            children.push(fresh(c));
        }
    }
    ColouredTree::Vertex(Vertex { number: 1, colour: outer.output.clone(), children })
}

fn checked_value(phi: &dyn ScAlgebra, p: &Profile, value: usize, what: &str) -> Result<usize> {
    let size = phi.family().get(p).map_or(0, Vec::len);
    if value < size {
        Ok(value)
    } else {
        Err(Error::VerificationFailed {
            what: "extraction".into(),
            detail: format!("{what} evaluates to #{value}, outside the component at {p}"),
        })
    }
}

/// Reads off units, symmetric actions and `∘_i` from an algebra over the
/// tree operad. The result is not repaired; pass it to the verifier.
pub fn operad_from_sc_algebra(phi: &dyn ScAlgebra) -> Result<FiniteOperad> {
    let family = phi.family();
    let colours = colours_of(family);
    let element = |tree: ColouredTree| ScElement::new(tree, colours.clone());
    let mut base = Collection::new(colours.iter().cloned());
    for (p, names) in family {
        base.set_component(p.clone(), names.clone())?;
    }
    let mut units = BTreeMap::new();
    for c in &colours {
        let id = Profile::identity(c.clone());
        if family.contains_key(&id) {
            let u = phi.evaluate(&element(ColouredTree::Edge(c.clone()))?, &[])?;
            units.insert(c.clone(), checked_value(phi, &id, u, &format!("the unit of {c}"))?);
        }
    }
    for (p, names) in family {
        for alpha in Permutation::all(p.arity()).into_iter().filter(|a| !a.is_identity()) {
            let q = p.permuted(&alpha);
            if !family.contains_key(&q) {
                continue;
            }
            let tree = element(permuted_corolla(p, &alpha))?;
            let map = (0..names.len())
                .map(|x| {
                    let y = phi.evaluate(&tree, &[x])?;
                    checked_value(phi, &q, y, &format!("{}·{alpha}", names[x]))
                })
                .collect::<Result<Vec<_>>>()?;
            base.set_action(p.clone(), alpha, map);
        }
    }
    FiniteOperad::tabulate(base, units, |outer, x, i, inner, y| {
        let tree = element(two_level(outer, i, inner))?;
        let composite = outer.graft(i, inner).expect("admissible");
        let z = phi.evaluate(&tree, &[x, y])?;
        checked_value(phi, &composite, z, &format!("#{x} ∘_{i} #{y} over {outer}, {inner}"))
    })
}

/// Outcome of [`roundtrip`].
#[derive(Clone, Debug)]
pub struct RoundTrip {
    /// The operad read back from its own tree-operad algebra.
    pub extracted: FiniteOperad,
    /// Table identity with the input.
    pub identical: bool,
    /// Verifier report on the extracted operad.
    pub verification: Report,
    /// Agreement of the original evaluator with the one rebuilt from the
    /// extracted operad, on every tree up to the vertex bound.
    pub agreement: Report,
    pub trees: usize,
}

/// Operad → tree-operad algebra → operad, and evaluator agreement on all
/// trees with at most `max_vertices` vertices whose vertex profiles are
/// stored. At most `max_tuples` argument tuples are tried per tree, spread
/// evenly over all of them.
pub fn roundtrip(q: &FiniteOperad, max_vertices: usize, max_tuples: usize) -> Result<RoundTrip> {
    let phi = OperadScAlgebra::new(q);
    let extracted = operad_from_sc_algebra(&phi)?;
    let identical = &extracted == q;
    let verification = verify_operad(&extracted)?;
    let (agreement, trees) = evaluator_agreement(&phi, &extracted, max_vertices, max_tuples)?;
    Ok(RoundTrip { extracted, identical, verification, agreement, trees })
}

/// Compares `phi` with `sc_evaluate` over `q` on every tree with at most
/// `max_vertices` vertices whose vertex profiles and boundary are stored in
/// `phi`'s family. Returns the report and the number of trees visited.
pub fn evaluator_agreement(
    phi: &dyn ScAlgebra,
    q: &FiniteOperad,
    max_vertices: usize,
    max_tuples: usize,
) -> Result<(Report, usize)> {
    let family = phi.family();
    let colours = colours_of(family);
    let allowed: Vec<Profile> = family.iter().filter(|(_, xs)| !xs.is_empty()).map(|(p, _)| p.clone()).collect();
    let max_leaves = family.keys().map(Profile::arity).max().unwrap_or(0);
    let mut report = Report::new();
    let mut visited = 0;
    for tree in trees_with_vertex_profiles_in(&colours, &allowed, max_vertices, max_leaves) {
        let x = ScElement::new(tree, colours.clone())?;
        let profile = x.profile();
        if !family.contains_key(&profile.output) {
            continue;
        }
        visited += 1;
        let sizes: Vec<usize> = profile.inputs.iter().map(|p| family[p].len()).collect();
        for args in sample_tuples(&sizes, max_tuples) {
            let want = phi.evaluate(&x, &args).ok();
            let got = sc_evaluate(q, &x, &args).ok();
            report.check(want.is_some() && want == got, "evaluator disagreement", || {
                format!("{x} at {args:?}: {want:?} vs {got:?}")
            });
        }
    }
    Ok((report, visited))
}

/// All tuples in the box `∏ [0, sizes[k])` if there are at most `cap`, else
/// `cap` of them at evenly spaced mixed-radix indices.
pub(crate) fn sample_tuples(sizes: &[usize], cap: usize) -> Vec<Vec<usize>> {
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    let count = total.min(cap as u128);
    (0..count)
        .map(|j| {
            let mut k = if total <= cap as u128 { j } else { j * total / count };
            let mut out = vec![0; sizes.len()];
            for (slot, &s) in out.iter_mut().zip(sizes).rev() {
                *slot = (k % s as u128) as usize;
                k /= s as u128;
            }
            out
        })
        .collect()
}
