//! Algebras over finite operads: families of finite sets with an operad
//! morphism into their endomorphism operad, maps between algebras, the
//! correspondence between tree-operad algebras and operads, and free algebras.

mod end;
mod family;
mod free_algebra;
mod maps;
mod sc_action;

use std::collections::BTreeMap;

use crate::colour::Profile;
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, Operad};
use crate::perm::Permutation;
use crate::report::Report;

pub use end::{
    act_function, component_size, compose_functions, end_component, identity_function, EndOperad, Function,
    DEFAULT_LIMIT,
};
pub use family::FiniteFamily;
pub use free_algebra::{free_algebra, free_algebra_carrier, FreeAlgebra, Orbit};
pub use maps::{all_family_maps, verify_algebra_map, verify_algebra_map_via_pullback, EndPullback, FamilyMap};
pub use sc_action::{
    evaluator_agreement, operad_from_sc_algebra, roundtrip, sc_evaluate, OperadScAlgebra, ProfileFamily, RoundTrip, ScAlgebra,
};

/// A family `X` with, for every stored profile `p` and element `e` of `P[p]`,
/// a function `X(c1)×...×X(cn) → X(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    operad: FiniteOperad,
    family: FiniteFamily,
    action: BTreeMap<(Profile, usize), Function>,
}

impl AlgebraStructure {
    pub fn new(operad: FiniteOperad, family: FiniteFamily, action: BTreeMap<(Profile, usize), Function>) -> Self {
        AlgebraStructure { operad, family, action }
    }

    /// Tabulates `act(p, e, args)` over every stored profile and argument tuple.
    pub fn from_fn(
        operad: FiniteOperad,
        family: FiniteFamily,
        act: impl Fn(&Profile, usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut action = BTreeMap::new();
        for p in operad.support() {
            if let Some(c) = p.inputs.iter().chain([&p.output]).find(|c| !family.contains_colour(c)) {
                return Err(Error::malformed(format!("family has no set for colour {c}")));
            }
            for e in 0..operad.base().size(&p) {
                let table = (0..family.domain_size(&p)).map(|k| act(&p, e, &family.decode(&p, k))).collect();
                action.insert((p.clone(), e), table);
            }
        }
        Ok(AlgebraStructure { operad, family, action })
    }

    pub fn operad(&self) -> &FiniteOperad {
        &self.operad
    }

    pub fn family(&self) -> &FiniteFamily {
        &self.family
    }

    pub fn action(&self, p: &Profile, e: usize) -> Option<&Function> {
        self.action.get(&(p.clone(), e))
    }

    pub fn actions(&self) -> &BTreeMap<(Profile, usize), Function> {
        &self.action
    }

    /// Applies the operation `e` of profile `p` to an argument tuple.
    pub fn apply(&self, p: &Profile, e: usize, args: &[usize]) -> Option<usize> {
        self.action(p, e).and_then(|t| t.get(self.family.encode(p, args)).copied())
    }

    /// Overwrites one value of one action table.
    pub fn with_entry(&self, p: &Profile, e: usize, tuple: usize, value: usize) -> Result<Self> {
        let mut out = self.clone();
        let slot = out
            .action
            .get_mut(&(p.clone(), e))
            .and_then(|t| t.get_mut(tuple))
            .ok_or_else(|| Error::malformed(format!("no action entry {p} #{e} at {tuple}")))?;
        *slot = value;
        Ok(out)
    }

    /// Largest arity in the operad's support.
    pub(crate) fn max_arity(&self) -> usize {
        self.operad.support().iter().map(|p| p.arity()).max().unwrap_or(0)
    }

    /// The action viewed as a map of collections `P → End(X)`.
    pub fn as_end_map(&self) -> impl Fn(&Profile, &usize) -> Option<Function> + '_ {
        move |p, e| self.action(p, *e).cloned()
    }
}

/// Checks that the action is a morphism `P → End(X)` on the stored support,
/// working directly on the action tables.
pub fn verify_algebra(a: &AlgebraStructure) -> Report {
    let op = &a.operad;
    let x = &a.family;
    let mut report = Report::new();
    let support = op.support();
    for p in &support {
        for e in 0..op.base().size(p) {
            let ok = a.action(p, e).is_some_and(|t| {
                t.len() == x.domain_size(p) && t.iter().all(|&y| y < x.size(&p.output))
            });
            report.check(ok, "malformed action", || format!("{} in {p}", op.name(p, e)));
        }
    }
    if !report.is_ok() {
        return report;
    }
    for c in op.colours() {
        let id = Profile::identity(c.clone());
        if let (true, Some(u)) = (op.contains(&id), op.unit(&c)) {
            report.check(a.action(&id, u) == Some(&identity_function(x, &c)), "unit", || {
                format!("unit of {c} does not act as the identity")
            });
        }
    }
    for p in &support {
        for e in 0..op.base().size(p) {
            let fe = &a.action[&(p.clone(), e)];
            for alpha in Permutation::all(p.arity()) {
                let Some(ea) = op.act(p, &e, &alpha) else { continue };
                let q = p.permuted(&alpha);
                report.check(a.action(&q, ea) == Some(&act_function(x, p, fe, &alpha)), "equivariance", || {
                    format!("action of {}·{alpha} in {p}", op.name(p, e))
                });
            }
        }
    }
    for ((outer, i, inner), table) in op.circ_tables() {
        let composite = outer.graft(*i, inner).expect("stored triples are composable");
        let m = op.base().size(inner);
        for (k, &z) in table.iter().enumerate() {
            let (e1, e2) = (k / m, k % m);
            let want = compose_functions(x, outer, &a.action[&(outer.clone(), e1)], *i, inner, &a.action[&(inner.clone(), e2)]);
            report.check(a.action(&composite, z) == want.as_ref(), "composition", || {
                format!("{} ∘_{i} {} over {outer}, {inner}", op.name(outer, e1), op.name(inner, e2))
            });
        }
    }
    report
}
