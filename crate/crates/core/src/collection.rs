//! Finite coloured collections: finite sets indexed by profiles, with right
//! actions of the symmetric groups permuting the inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::report::Report;

/// Bounds needed on colour types throughout the crate.
pub trait ColourLike: Clone + Ord + Hash + Debug + Display {}
impl<T: Clone + Ord + Hash + Debug + Display> ColourLike for T {}

/// Element sets are ordered lists of distinct names; elements are referred to
/// by their index in the list. Absent profiles denote the empty set. Actions
/// are stored for every non-identity permutation; identities are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection<C = Colour> {
    colours: BTreeSet<C>,
    components: BTreeMap<Profile<C>, Vec<String>>,
    actions: BTreeMap<(Profile<C>, Permutation), Vec<usize>>,
}

impl<C: ColourLike> Collection<C> {
    pub fn new(colours: impl IntoIterator<Item = C>) -> Self {
        Collection {
            colours: colours.into_iter().collect(),
            components: BTreeMap::new(),
            actions: BTreeMap::new(),
        }
    }

    pub fn colours(&self) -> &BTreeSet<C> {
        &self.colours
    }

    /// Declares the component at `p`, replacing any previous one.
    pub fn set_component(&mut self, p: Profile<C>, elements: Vec<String>) -> Result<()> {
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(Error::malformed(format!("duplicate element names in component {p}")));
        }
        if let Some(c) = p.inputs.iter().chain([&p.output]).find(|c| !self.colours.contains(c)) {
            return Err(Error::malformed(format!("profile {p} uses undeclared colour {c}")));
        }
        self.components.insert(p, elements);
        Ok(())
    }

    /// Sets the action of `alpha` on component `p` as an index map into
    /// the component at `p·α`.
    pub fn set_action(&mut self, p: Profile<C>, alpha: Permutation, map: Vec<usize>) {
        if alpha.is_identity() {
            return;
        }
        self.actions.insert((p, alpha), map);
    }

    /// Stored profiles, sorted.
    pub fn support(&self) -> impl Iterator<Item = &Profile<C>> {
        self.components.keys()
    }

    pub fn contains(&self, p: &Profile<C>) -> bool {
        self.components.contains_key(p)
    }

    pub fn elements(&self, p: &Profile<C>) -> &[String] {
        self.components.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn size(&self, p: &Profile<C>) -> usize {
        self.elements(p).len()
    }

    pub fn index_of(&self, p: &Profile<C>, name: &str) -> Result<usize> {
        self.elements(p)
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement {
                profile: p.to_string(),
                element: name.to_string(),
            })
    }

    pub fn name(&self, p: &Profile<C>, x: usize) -> &str {
        &self.elements(p)[x]
    }

    /// The action table of `alpha` on `p`, if stored (identity is always available).
    pub fn action(&self, p: &Profile<C>, alpha: &Permutation) -> Option<std::borrow::Cow<'_, [usize]>> {
        if alpha.is_identity() && alpha.len() == p.arity() {
            return Some(std::borrow::Cow::Owned((0..self.size(p)).collect()));
        }
        self.actions
            .get(&(p.clone(), alpha.clone()))
            .map(|v| std::borrow::Cow::Borrowed(v.as_slice()))
    }

    pub fn act(&self, p: &Profile<C>, x: usize, alpha: &Permutation) -> Option<usize> {
        self.action(p, alpha).and_then(|t| t.get(x).copied())
    }

    pub(crate) fn action_tables(&self) -> impl Iterator<Item = (&(Profile<C>, Permutation), &Vec<usize>)> {
        self.actions.iter()
    }

    pub(crate) fn action_entry_mut(&mut self, p: &Profile<C>, alpha: &Permutation, x: usize) -> Option<&mut usize> {
        self.actions.get_mut(&(p.clone(), alpha.clone())).and_then(|t| t.get_mut(x))
    }

    /// Checks that every action is present, lands in the permuted component,
    /// that the identity acts trivially and that `(x·α)·β = x·(α∘β)`.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        for (p, alpha) in self.actions.keys() {
            if !self.contains(p) || alpha.len() != p.arity() {
                report.violation("stray action", format!("action of {alpha} on {p}, not a stored profile of that arity"));
            }
        }
        for (p, elems) in &self.components {
            let n = p.arity();
            let perms = Permutation::all(n);
            for alpha in &perms {
                let target = p.permuted(alpha);
                let Some(table) = self.action(p, alpha) else {
                    report.check(elems.is_empty(), "missing action", || format!("no action of {alpha} on {p}"));
                    continue;
                };
                let ok_shape = table.len() == elems.len()
                    && table.iter().all(|&y| y < self.size(&target));
                report.check(ok_shape, "action lands outside permuted component", || {
                    format!("action of {alpha} on {p} into {target}")
                });
            }
            for alpha in &perms {
                for beta in &perms {
                    let ab = alpha.compose(beta);
                    let mid = p.permuted(alpha);
                    for x in 0..elems.len() {
                        let lhs = self.act(p, x, alpha).and_then(|y| self.act(&mid, y, beta));
                        let rhs = self.act(p, x, &ab);
                        if lhs.is_none() || rhs.is_none() {
                            continue;
                        }
                        report.check(lhs == rhs, "action composition", || {
                            format!(
                                "({}·{alpha})·{beta} ≠ {}·{ab} in {p}",
                                elems[x], elems[x]
                            )
                        });
                    }
                }
            }
        }
        report
    }
}

/// Componentwise maps `K[p] → L[p]`, as index tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollectionMorphism<C = Colour> {
    pub maps: BTreeMap<Profile<C>, Vec<usize>>,
}

impl<C: ColourLike> CollectionMorphism<C> {
    pub fn apply(&self, p: &Profile<C>, x: usize) -> Option<usize> {
        self.maps.get(p).and_then(|m| m.get(x).copied())
    }

    /// Checks totality, typing, and compatibility with the symmetric actions.
    pub fn validate(&self, source: &Collection<C>, target: &Collection<C>) -> Report {
        let mut report = Report::new();
        for p in source.support() {
            let n = source.size(p);
            if n == 0 {
                continue;
            }
            let ok = self
                .maps
                .get(p)
                .is_some_and(|m| m.len() == n && m.iter().all(|&y| y < target.size(p)));
            report.check(ok, "morphism not total", || format!("map on {p} missing or out of range"));
            if !ok {
                continue;
            }
            for alpha in Permutation::all(p.arity()) {
                let q = p.permuted(&alpha);
                for x in 0..n {
                    let lhs = source.act(p, x, &alpha).and_then(|y| self.apply(&q, y));
                    let rhs = self.apply(p, x).and_then(|y| target.act(p, y, &alpha));
                    report.check(lhs.is_some() && lhs == rhs, "morphism not equivariant", || {
                        format!("f({}·{alpha}) ≠ f({})·{alpha} on {p}", source.name(p, x), source.name(p, x))
                    });
                }
            }
        }
        report
    }

    /// Every equivariant morphism `source → target`, by brute force.
    pub fn enumerate_all(source: &Collection<C>, target: &Collection<C>) -> Vec<CollectionMorphism<C>> {
        let profiles: Vec<&Profile<C>> = source.support().filter(|p| source.size(p) > 0).collect();
        let mut acc = vec![CollectionMorphism { maps: BTreeMap::new() }];
        for p in profiles {
            let (n, m) = (source.size(p), target.size(p));
            let mut next = Vec::new();
            for f in &acc {
                for choice in all_functions(n, m) {
                    let mut g = f.clone();
                    g.maps.insert(p.clone(), choice);
                    next.push(g);
                }
            }
            acc = next;
        }
        acc.retain(|f| f.validate(source, target).is_ok());
        acc
    }
}

/// All functions `{0..n} → {0..m}` as tables, in lexicographic order.
pub(crate) fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < m {
                break;
            }
            cur[k] = 0;
        }
    }
}
