//! Exhaustive checking of the operad axioms over a finite support.

use std::collections::{BTreeMap, HashMap};

use super::Operad;
use crate::colour::Profile;
use crate::error::Result;
use crate::perm::Permutation;
use crate::report::Report;

struct Indexed<'a, O: Operad> {
    op: &'a O,
    support: Vec<Profile<O::Colour>>,
    elems: HashMap<Profile<O::Colour>, Vec<O::Elem>>,
    by_output: BTreeMap<O::Colour, Vec<Profile<O::Colour>>>,
}

impl<'a, O: Operad> Indexed<'a, O> {
    fn new(op: &'a O) -> Result<Self> {
        let support = op.support();
        let mut elems = HashMap::new();
        let mut by_output: BTreeMap<O::Colour, Vec<Profile<O::Colour>>> = BTreeMap::new();
        for p in &support {
            elems.insert(p.clone(), op.elements(p)?);
            by_output.entry(p.output.clone()).or_default().push(p.clone());
        }
        Ok(Indexed { op, support, elems, by_output })
    }

    fn elems(&self, p: &Profile<O::Colour>) -> &[O::Elem] {
        self.elems.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    fn with_output(&self, c: &O::Colour) -> &[Profile<O::Colour>] {
        self.by_output.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Composite, recording a violation when it should be stored but is missing.
    fn circ(
        &self,
        report: &mut Report,
        outer: &Profile<O::Colour>,
        x: &O::Elem,
        i: usize,
        inner: &Profile<O::Colour>,
        y: &O::Elem,
    ) -> Option<O::Elem> {
        let z = self.op.circ(outer, x, i, inner, y);
        if z.is_none() {
            report.violation(
                "missing composition",
                format!(
                    "{} ∘_{i} {} with profiles {outer} and {inner}",
                    self.op.show(outer, x),
                    self.op.show(inner, y)
                ),
            );
        }
        z
    }

    fn act(&self, report: &mut Report, p: &Profile<O::Colour>, x: &O::Elem, alpha: &Permutation) -> Option<O::Elem> {
        let z = self.op.act(p, x, alpha);
        if z.is_none() {
            report.violation(
                "missing action",
                format!("{}·{alpha} on {p}", self.op.show(p, x)),
            );
        }
        z
    }
}

fn describe_support<C: std::fmt::Display>(support: &[Profile<C>]) -> String {
    let list: Vec<String> = support.iter().map(|p| p.to_string()).collect();
    format!("{} stored profiles: {}", support.len(), list.join(" "))
}

/// Checks the unit, associativity and equivariance laws for every stored
/// configuration. The report's `support` field records what was covered.
pub fn verify_operad<O: Operad>(op: &O) -> Result<Report> {
    let ix = Indexed::new(op)?;
    let mut report = Report::new();
    report.support = Some(describe_support(&ix.support));
    check_actions(&ix, &mut report);
    check_units(&ix, &mut report);
    check_sequential(&ix, &mut report);
    check_parallel(&ix, &mut report);
    check_equivariance(&ix, &mut report);
    Ok(report)
}

fn check_actions<O: Operad>(ix: &Indexed<'_, O>, report: &mut Report) {
    for p in &ix.support {
        let perms = Permutation::all(p.arity());
        for alpha in &perms {
            let mid = p.permuted(alpha);
            if !ix.op.contains(&mid) {
                if !ix.elems(p).is_empty() {
                    report.violation("action leaves support", format!("{p}·{alpha} = {mid} is not stored"));
                }
                continue;
            }
            for x in ix.elems(p) {
                let Some(xa) = ix.act(report, p, x, alpha) else { continue };
                if alpha.is_identity() {
                    report.check(xa == *x, "identity action", || format!("{}·id ≠ {} in {p}", ix.op.show(p, x), ix.op.show(p, x)));
                }
                for beta in &perms {
                    if !ix.op.contains(&mid.permuted(beta)) {
                        continue;
                    }
                    let ab = alpha.compose(beta);
                    let (Some(lhs), Some(rhs)) = (ix.act(report, &mid, &xa, beta), ix.act(report, p, x, &ab)) else {
                        continue;
                    };
                    report.check(lhs == rhs, "action composition", || {
                        format!("({}·{alpha})·{beta} ≠ {}·{ab} in {p}", ix.op.show(p, x), ix.op.show(p, x))
                    });
                }
            }
        }
    }
}

fn check_units<O: Operad>(ix: &Indexed<'_, O>, report: &mut Report) {
    let mut units = BTreeMap::new();
    for c in ix.op.colours() {
        let id = Profile::identity(c.clone());
        if !ix.op.contains(&id) {
            continue;
        }
        match ix.op.unit(&c) {
            Some(u) if ix.elems(&id).contains(&u) => {
                units.insert(c, (id, u));
            }
            _ => report.violation("missing unit", format!("no unit in {id}")),
        }
    }
    for p in &ix.support {
        for x in ix.elems(p) {
            if let Some((id, u)) = units.get(&p.output) {
                if let Some(z) = ix.circ(report, id, u, 1, p, x) {
                    report.check(z == *x, "left unit", || format!("1 ∘_1 {} ≠ itself in {p}", ix.op.show(p, x)));
                }
            }
            for (k, c) in p.inputs.iter().enumerate() {
                if let Some((id, u)) = units.get(c) {
                    if let Some(z) = ix.circ(report, p, x, k + 1, id, u) {
                        report.check(z == *x, "right unit", || {
                            format!("{} ∘_{} 1 ≠ itself in {p}", ix.op.show(p, x), k + 1)
                        });
                    }
                }
            }
        }
    }
}

/// `(x ∘_i y) ∘_{i+j-1} z = x ∘_i (y ∘_j z)`.
fn check_sequential<O: Operad>(ix: &Indexed<'_, O>, report: &mut Report) {
    for p in &ix.support {
        for i in 1..=p.arity() {
            for q in ix.with_output(&p.inputs[i - 1]) {
                let Some(pq) = p.graft(i, q).filter(|r| ix.op.contains(r)) else { continue };
                for j in 1..=q.arity() {
                    for r in ix.with_output(&q.inputs[j - 1]) {
                        let Some(qr) = q.graft(j, r).filter(|s| ix.op.contains(s)) else { continue };
                        let Some(pqr) = p.graft(i, &qr).filter(|s| ix.op.contains(s)) else { continue };
                        debug_assert_eq!(pq.graft(i + j - 1, r).as_ref(), Some(&pqr));
                        for x in ix.elems(p) {
                            for y in ix.elems(q) {
                                let Some(xy) = ix.circ(report, p, x, i, q, y) else { continue };
                                for z in ix.elems(r) {
                                    let Some(lhs) = ix.circ(report, &pq, &xy, i + j - 1, r, z) else { continue };
                                    let Some(yz) = ix.circ(report, q, y, j, r, z) else { continue };
                                    let Some(rhs) = ix.circ(report, p, x, i, &qr, &yz) else { continue };
                                    report.check(lhs == rhs, "sequential associativity", || {
                                        format!(
                                            "({} ∘_{i} {}) ∘_{} {} ≠ {} ∘_{i} ({} ∘_{j} {}) over {p}, {q}, {r}",
                                            ix.op.show(p, x),
                                            ix.op.show(q, y),
                                            i + j - 1,
                                            ix.op.show(r, z),
                                            ix.op.show(p, x),
                                            ix.op.show(q, y),
                                            ix.op.show(r, z)
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// For `i < k`: `(x ∘_i y) ∘_{k-1+|y|} z = (x ∘_k z) ∘_i y`.
fn check_parallel<O: Operad>(ix: &Indexed<'_, O>, report: &mut Report) {
    for p in &ix.support {
        for i in 1..=p.arity() {
            for k in i + 1..=p.arity() {
                for q in ix.with_output(&p.inputs[i - 1]) {
                    let Some(pq) = p.graft(i, q).filter(|s| ix.op.contains(s)) else { continue };
                    let shifted = k - 1 + q.arity();
                    for r in ix.with_output(&p.inputs[k - 1]) {
                        let Some(pr) = p.graft(k, r).filter(|s| ix.op.contains(s)) else { continue };
                        let Some(both) = pq.graft(shifted, r).filter(|s| ix.op.contains(s)) else { continue };
                        debug_assert_eq!(pr.graft(i, q).as_ref(), Some(&both));
                        for x in ix.elems(p) {
                            for y in ix.elems(q) {
                                let Some(xy) = ix.circ(report, p, x, i, q, y) else { continue };
                                for z in ix.elems(r) {
                                    let Some(lhs) = ix.circ(report, &pq, &xy, shifted, r, z) else { continue };
                                    let Some(xz) = ix.circ(report, p, x, k, r, z) else { continue };
                                    let Some(rhs) = ix.circ(report, &pr, &xz, i, q, y) else { continue };
                                    report.check(lhs == rhs, "parallel associativity", || {
                                        format!(
                                            "({} ∘_{i} {}) ∘_{shifted} {} ≠ ({} ∘_{k} {}) ∘_{i} {} over {p}",
                                            ix.op.show(p, x),
                                            ix.op.show(q, y),
                                            ix.op.show(r, z),
                                            ix.op.show(p, x),
                                            ix.op.show(r, z),
                                            ix.op.show(q, y)
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// `(x·α) ∘_i y = (x ∘_{α(i)} y)·α⟨block⟩` and `x ∘_i (y·β) = (x ∘_i y)·(id ⊕ β ⊕ id)`.
fn check_equivariance<O: Operad>(ix: &Indexed<'_, O>, report: &mut Report) {
    for p in &ix.support {
        let n = p.arity();
        for alpha in Permutation::all(n) {
            let pa = p.permuted(&alpha);
            if !ix.op.contains(&pa) {
                continue;
            }
            for i in 1..=n {
                let ai = alpha.image(i);
                for q in ix.with_output(&pa.inputs[i - 1]) {
                    let Some(lhs_profile) = pa.graft(i, q).filter(|s| ix.op.contains(s)) else { continue };
                    let Some(inner_first) = p.graft(ai, q).filter(|s| ix.op.contains(s)) else { continue };
                    let sizes: Vec<usize> = (1..=n).map(|k| if k == i { q.arity() } else { 1 }).collect();
                    let block = alpha.block(&sizes);
                    debug_assert_eq!(inner_first.permuted(&block), lhs_profile);
                    for x in ix.elems(p) {
                        let Some(xa) = ix.act(report, p, x, &alpha) else { continue };
                        for y in ix.elems(q) {
                            let Some(lhs) = ix.circ(report, &pa, &xa, i, q, y) else { continue };
                            let Some(xy) = ix.circ(report, p, x, ai, q, y) else { continue };
                            let Some(rhs) = ix.act(report, &inner_first, &xy, &block) else { continue };
                            report.check(lhs == rhs, "equivariance (outer)", || {
                                format!(
                                    "({}·{alpha}) ∘_{i} {} ≠ ({} ∘_{ai} {})·{block} over {p}, {q}",
                                    ix.op.show(p, x),
                                    ix.op.show(q, y),
                                    ix.op.show(p, x),
                                    ix.op.show(q, y)
                                )
                            });
                        }
                    }
                }
            }
        }
        for i in 1..=n {
            for q in ix.with_output(&p.inputs[i - 1]) {
                let Some(pq) = p.graft(i, q).filter(|s| ix.op.contains(s)) else { continue };
                for beta in Permutation::all(q.arity()) {
                    let qb = q.permuted(&beta);
                    if !ix.op.contains(&qb) {
                        continue;
                    }
                    let Some(pqb) = p.graft(i, &qb).filter(|s| ix.op.contains(s)) else { continue };
                    let lifted = beta.embed(i - 1, n - i);
                    debug_assert_eq!(pq.permuted(&lifted), pqb);
                    for y in ix.elems(q) {
                        let Some(yb) = ix.act(report, q, y, &beta) else { continue };
                        for x in ix.elems(p) {
                            let Some(lhs) = ix.circ(report, p, x, i, &qb, &yb) else { continue };
                            let Some(xy) = ix.circ(report, p, x, i, q, y) else { continue };
                            let Some(rhs) = ix.act(report, &pq, &xy, &lifted) else { continue };
                            report.check(lhs == rhs, "equivariance (inner)", || {
                                format!(
                                    "{} ∘_{i} ({}·{beta}) ≠ ({} ∘_{i} {})·{lifted} over {p}, {q}",
                                    ix.op.show(p, x),
                                    ix.op.show(q, y),
                                    ix.op.show(p, x),
                                    ix.op.show(q, y)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Checks that `map` is a morphism of operads on the stored support of
/// `source`: it preserves units, `∘_i` and the symmetric actions.
pub fn verify_morphism<S, T>(
    source: &S,
    target: &T,
    map: &dyn Fn(&Profile<S::Colour>, &S::Elem) -> Option<T::Elem>,
) -> Result<Report>
where
    S: Operad,
    T: Operad<Colour = S::Colour>,
{
    let ix = Indexed::new(source)?;
    let mut report = Report::new();
    report.support = Some(describe_support(&ix.support));
    let mut image: HashMap<(Profile<S::Colour>, S::Elem), T::Elem> = HashMap::new();
    for p in &ix.support {
        for x in ix.elems(p) {
            match map(p, x) {
                Some(fx) => {
                    image.insert((p.clone(), x.clone()), fx);
                }
                None => report.violation("map undefined", format!("no image for {} in {p}", source.show(p, x))),
            }
        }
    }
    let f = |p: &Profile<S::Colour>, x: &S::Elem| image.get(&(p.clone(), x.clone()));
    for c in source.colours() {
        let id = Profile::identity(c.clone());
        if let Some(u) = source.unit(&c).filter(|_| source.contains(&id)) {
            report.check(f(&id, &u).cloned() == target.unit(&c), "unit not preserved", || format!("colour {c}"));
        }
    }
    for p in &ix.support {
        for alpha in Permutation::all(p.arity()) {
            let pa = p.permuted(&alpha);
            for x in ix.elems(p) {
                let Some(xa) = source.act(p, x, &alpha) else { continue };
                let (Some(lhs), Some(fx)) = (f(&pa, &xa), f(p, x)) else { continue };
                let rhs = target.act(p, fx, &alpha);
                report.check(rhs.as_ref() == Some(lhs), "action not preserved", || {
                    format!("f({}·{alpha}) in {p}", source.show(p, x))
                });
            }
        }
        for i in 1..=p.arity() {
            for q in ix.with_output(&p.inputs[i - 1]) {
                let Some(pq) = p.graft(i, q).filter(|s| source.contains(s)) else { continue };
                for x in ix.elems(p) {
                    for y in ix.elems(q) {
                        let Some(xy) = source.circ(p, x, i, q, y) else { continue };
                        let (Some(lhs), Some(fx), Some(fy)) = (f(&pq, &xy), f(p, x), f(q, y)) else { continue };
                        let rhs = target.circ(p, fx, i, q, fy);
                        report.check(rhs.as_ref() == Some(lhs), "composition not preserved", || {
                            format!("f({} ∘_{i} {}) over {p}, {q}", source.show(p, x), source.show(q, y))
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
