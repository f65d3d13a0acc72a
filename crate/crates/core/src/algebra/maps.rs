//! Maps of algebras, checked directly and through the pullback `End(f)`.

use std::collections::BTreeMap;

use super::end::{act_function, compose_functions, end_component, identity_function, Function, DEFAULT_LIMIT};
use super::{AlgebraStructure, FiniteFamily};
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::{verify_morphism, Operad};
use crate::perm::Permutation;
use crate::report::Report;

/// Per-colour functions `X(c) → Y(c)`, by element index.
pub type FamilyMap = BTreeMap<Colour, Vec<usize>>;

fn check_map(x: &FiniteFamily, y: &FiniteFamily, f: &FamilyMap, report: &mut Report) {
    for c in x.colours() {
        let ok = f
            .get(c)
            .is_some_and(|fc| fc.len() == x.size(c) && fc.iter().all(|&v| v < y.size(c)));
        report.check(ok, "map not total", || format!("colour {c}"));
    }
}

fn image(f: &FamilyMap, p: &Profile, args: &[usize]) -> Vec<usize> {
    p.inputs.iter().zip(args).map(|(c, &a)| f[c][a]).collect()
}

/// Checks `f ∘ A(e) = B(e) ∘ (f × ... × f)` for every stored operation `e`.
pub fn verify_algebra_map(a: &AlgebraStructure, b: &AlgebraStructure, f: &FamilyMap) -> Report {
    let mut report = Report::new();
    report.check(a.operad() == b.operad(), "different operads", String::new);
    check_map(a.family(), b.family(), f, &mut report);
    if !report.is_ok() {
        return report;
    }
    let (x, y) = (a.family(), b.family());
    for ((p, e), table) in a.actions() {
        let Some(other) = b.action(p, *e) else {
            report.violation("malformed action", format!("target has no action for {}", a.operad().name(p, *e)));
            continue;
        };
        for (k, &out) in table.iter().enumerate() {
            let args = x.decode(p, k);
            let lhs = f[&p.output][out];
            let rhs = other[y.encode(p, &image(f, p, &args))];
            report.check(lhs == rhs, "not a map of algebras", || {
                format!("{} at {args:?}", a.operad().name(p, *e))
            });
        }
    }
    report
}

/// The pullback `End(f)` of `End(X) → Hom(X,Y) ← End(Y)`: pairs `(u, v)` with
/// `f ∘ u = v ∘ (f × ... × f)`.
#[derive(Clone, Debug)]
pub struct EndPullback {
    x: FiniteFamily,
    y: FiniteFamily,
    f: FamilyMap,
    max_arity: usize,
    limit: u128,
}

impl EndPullback {
    pub fn new(x: FiniteFamily, y: FiniteFamily, f: FamilyMap, max_arity: usize) -> Result<Self> {
        let mut report = Report::new();
        check_map(&x, &y, &f, &mut report);
        if !report.is_ok() || x.colours().ne(y.colours()) {
            return Err(Error::malformed("family map is not total on matching colours"));
        }
        Ok(EndPullback { x, y, f, max_arity, limit: DEFAULT_LIMIT })
    }

    pub fn with_limit(mut self, limit: u128) -> Self {
        self.limit = limit;
        self
    }

    /// Whether `(u, v)` lies in the pullback at `p`.
    pub fn is_compatible(&self, p: &Profile, u: &[usize], v: &[usize]) -> bool {
        (0..self.x.domain_size(p)).all(|k| {
            let args = self.x.decode(p, k);
            self.f[&p.output][u[k]] == v[self.y.encode(p, &image(&self.f, p, &args))]
        })
    }
}

impl Operad for EndPullback {
    type Colour = Colour;
    type Elem = (Function, Function);

    fn support(&self) -> Vec<Profile> {
        super::EndOperad::new(self.x.clone(), self.max_arity).support()
    }

    fn contains(&self, p: &Profile) -> bool {
        p.arity() <= self.max_arity && p.inputs.iter().chain([&p.output]).all(|c| self.x.contains_colour(c))
    }

    /// For each `u`, the tuples of `Y` hit by `f × ... × f` pin `v` down; the
    /// remaining values of `v` are free.
    fn elements(&self, p: &Profile) -> Result<Vec<(Function, Function)>> {
        let mut out = Vec::new();
        let target = self.y.size(&p.output);
        for u in end_component(&self.x, p, self.limit)? {
            let mut pinned: Vec<Option<usize>> = vec![None; self.y.domain_size(p)];
            let consistent = (0..self.x.domain_size(p)).all(|k| {
                let args = self.x.decode(p, k);
                let slot = &mut pinned[self.y.encode(p, &image(&self.f, p, &args))];
                let want = self.f[&p.output][u[k]];
                *slot.get_or_insert(want) == want
            });
            if !consistent {
                continue;
            }
            let free: Vec<usize> = (0..pinned.len()).filter(|&k| pinned[k].is_none()).collect();
            for fill in crate::collection::all_functions(free.len(), target) {
                let mut v: Vec<usize> = pinned.iter().map(|s| s.unwrap_or(0)).collect();
                for (&k, &val) in free.iter().zip(&fill) {
                    v[k] = val;
                }
                out.push((u.clone(), v));
                if out.len() as u128 > self.limit {
                    return Err(Error::BoundExceeded { what: format!("End(f) component {p}"), needed: out.len() as u128, limit: self.limit });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn is_element(&self, p: &Profile, (u, v): &(Function, Function)) -> bool {
        self.contains(p)
            && u.len() == self.x.domain_size(p)
            && v.len() == self.y.domain_size(p)
            && u.iter().all(|&a| a < self.x.size(&p.output))
            && v.iter().all(|&b| b < self.y.size(&p.output))
            && self.is_compatible(p, u, v)
    }

    fn unit(&self, c: &Colour) -> Option<(Function, Function)> {
        self.x
            .contains_colour(c)
            .then(|| (identity_function(&self.x, c), identity_function(&self.y, c)))
    }

    fn circ(
        &self,
        outer: &Profile,
        (u1, v1): &(Function, Function),
        i: usize,
        inner: &Profile,
        (u2, v2): &(Function, Function),
    ) -> Option<(Function, Function)> {
        let composite = outer.graft(i, inner)?;
        if !self.contains(outer) || !self.contains(inner) || !self.contains(&composite) {
            return None;
        }
        Some((
            compose_functions(&self.x, outer, u1, i, inner, u2)?,
            compose_functions(&self.y, outer, v1, i, inner, v2)?,
        ))
    }

    fn act(&self, p: &Profile, (u, v): &(Function, Function), alpha: &Permutation) -> Option<(Function, Function)> {
        (self.contains(p) && alpha.len() == p.arity())
            .then(|| (act_function(&self.x, p, u, alpha), act_function(&self.y, p, v, alpha)))
    }
}

/// The same check as [`verify_algebra_map`], phrased as: the pair of actions
/// is an operad morphism `P → End(f)`.
///
/// Components of the pullback are materialised, up to `limit` pairs each.
pub fn verify_algebra_map_via_pullback(
    a: &AlgebraStructure,
    b: &AlgebraStructure,
    f: &FamilyMap,
    limit: u128,
) -> Result<Report> {
    let pullback = EndPullback::new(a.family().clone(), b.family().clone(), f.clone(), a.max_arity())?.with_limit(limit);
    let mut report = Report::new();
    report.check(a.operad() == b.operad(), "different operads", String::new);
    if !report.is_ok() {
        return Ok(report);
    }
    let pair = |p: &Profile, e: &usize| Some((a.action(p, *e)?.clone(), b.action(p, *e)?.clone()));
    for p in a.operad().support() {
        let members = pullback.elements(&p)?;
        for e in 0..a.operad().base().size(&p) {
            let lands = pair(&p, &e).is_some_and(|uv| members.binary_search(&uv).is_ok());
            report.check(lands, "not a map of algebras", || format!("{} in {p}", a.operad().name(&p, e)));
        }
    }
    report.absorb(verify_morphism(a.operad(), &pullback, &pair)?);
    Ok(report)
}

/// All family maps `X → Y`, for brute-force searches.
pub fn all_family_maps(x: &FiniteFamily, y: &FiniteFamily) -> Vec<FamilyMap> {
    let mut out = vec![FamilyMap::new()];
    for c in x.colours() {
        let choices = crate::collection::all_functions(x.size(c), y.size(c));
        out = out
            .into_iter()
            .flat_map(|m| {
                choices.iter().map(move |fc| {
                    let mut m = m.clone();
                    m.insert(c.clone(), fc.clone());
                    m
                })
            })
            .collect();
    }
    out
}
