//! Standard finite operads: terminal, truncated associative, and the
//! arity-one operad of a monoid.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::{FiniteOperad, Monoid, Operad};
use crate::collection::Collection;
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::perm::Permutation;

fn all_profiles(colours: &[Colour], max_arity: usize) -> Vec<Profile> {
    let mut out = Vec::new();
    for n in 0..=max_arity {
        for inputs in (0..n).map(|_| colours.iter().cloned()).multi_cartesian_product_or_empty(n) {
            for out_c in colours {
                out.push(Profile::new(inputs.clone(), out_c.clone()));
            }
        }
    }
    out
}

trait ProductOrEmpty: Iterator + Sized
where
    Self::Item: Iterator + Clone,
    <Self::Item as Iterator>::Item: Clone,
{
    fn multi_cartesian_product_or_empty(self, n: usize) -> Vec<Vec<<Self::Item as Iterator>::Item>> {
        if n == 0 {
            vec![Vec::new()]
        } else {
            self.multi_cartesian_product().collect()
        }
    }
}
impl<I> ProductOrEmpty for I
where
    I: Iterator,
    I::Item: Iterator + Clone,
    <I::Item as Iterator>::Item: Clone,
{
}

/// Every profile over `colours` with arity at most `max_arity` holds one element `*`.
pub fn terminal_operad(colours: &[Colour], max_arity: usize) -> FiniteOperad {
    let mut base = Collection::new(colours.iter().cloned());
    for p in all_profiles(colours, max_arity) {
        for alpha in Permutation::all(p.arity()) {
            base.set_action(p.clone(), alpha, vec![0]);
        }
        base.set_component(p, vec!["*".into()]).expect("colours declared");
    }
    let units = colours.iter().map(|c| (c.clone(), 0)).collect();
    FiniteOperad::tabulate(base, units, |_, _, _, _, _| Ok(0)).expect("constant composition")
}

/// Name of the associative operation `x ↦ x_{w1}···x_{wn}`, e.g. `w3.1.2`.
pub fn ass_element_name(word: &[usize]) -> String {
    format!("w{}", word.iter().map(|k| k.to_string()).join("."))
}

/// Inverse of [`ass_element_name`].
pub fn ass_word(name: &str) -> Result<Vec<usize>> {
    let body = name
        .strip_prefix('w')
        .ok_or_else(|| Error::malformed(format!("{name:?} is not an associative-operad element")))?;
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split('.')
        .map(|t| t.parse().map_err(|_| Error::malformed(format!("bad letter {t:?} in {name:?}"))))
        .collect()
}

/// The associative operad truncated at `max_arity`, one colour `c`.
///
/// The arity-`n` component is `Σ_n`, each element recorded as the word `w`
/// of the product `x_{w1}···x_{wn}` it induces. The right action is
/// `(w·α)_k = α⁻¹(w_k)` and `∘_i` substitutes a shifted copy of the inner word
/// for the letter `i`. Arity 0 holds the empty word.
pub fn ass_truncated(max_arity: usize) -> FiniteOperad {
    let c = Colour::new("c").expect("valid colour");
    let mut base = Collection::new([c.clone()]);
    let mut words: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for n in 0..=max_arity {
        let ws: Vec<Vec<usize>> = Permutation::all(n).into_iter().map(|p| p.images()).collect();
        let p = Profile::new(vec![c.clone(); n], c.clone());
        base.set_component(p, ws.iter().map(|w| ass_element_name(w)).collect())
            .expect("colour declared");
        words.insert(n, ws);
    }
    for n in 0..=max_arity {
        let p = Profile::new(vec![c.clone(); n], c.clone());
        let ws = &words[&n];
        for alpha in Permutation::all(n) {
            let inv = alpha.inverse();
            let map = ws
                .iter()
                .map(|w| {
                    let moved: Vec<usize> = w.iter().map(|&k| inv.image(k)).collect();
                    ws.iter().position(|v| *v == moved).expect("words form Σ_n")
                })
                .collect();
            base.set_action(p.clone(), alpha, map);
        }
    }
    let units = BTreeMap::from([(c, 0)]);
    FiniteOperad::tabulate(base, units, |outer, x, i, inner, y| {
        let w = &words[&outer.arity()][x];
        let v = &words[&inner.arity()][y];
        let m = v.len();
        let mut out = Vec::with_capacity(w.len() + m - 1);
        for &a in w {
            if a < i {
                out.push(a);
            } else if a == i {
                out.extend(v.iter().map(|&b| b + i - 1));
            } else {
                out.push(a + m - 1);
            }
        }
        let target = &words[&out.len()];
        Ok(target.iter().position(|t| *t == out).expect("substitution yields a permutation"))
    })
    .expect("associative composition")
}

/// The operad with the monoid in arity one and nothing elsewhere.
pub fn operad_from_monoid(r: &Monoid) -> Result<FiniteOperad> {
    let report = r.validate();
    if !report.is_ok() {
        return Err(Error::VerificationFailed {
            what: "monoid".into(),
            detail: report.violations.iter().map(|v| v.to_string()).join("; "),
        });
    }
    let c = Colour::new("c").expect("valid colour");
    let id = Profile::identity(c.clone());
    let mut base = Collection::new([c.clone()]);
    base.set_component(id, r.carrier().to_vec())?;
    FiniteOperad::tabulate(base, BTreeMap::from([(c, r.unit())]), |_, x, _, _, y| Ok(r.mul(x, y)))
}

/// The monoid of unary operations at colour `c`, under `∘_1`.
pub fn monoid_of<O>(op: &O, c: &Colour) -> Result<Monoid>
where
    O: Operad<Colour = Colour, Elem = usize>,
{
    let id = Profile::identity(c.clone());
    if !op.contains(&id) {
        return Err(Error::OutsideSupport(id.to_string()));
    }
    let elems = op.elements(&id)?;
    let names = elems.iter().map(|x| op.show(&id, x)).collect();
    let unit = op
        .unit(c)
        .ok_or_else(|| Error::malformed(format!("no unit at colour {c}")))?;
    let mut mult = Vec::with_capacity(elems.len() * elems.len());
    for x in &elems {
        for y in &elems {
            mult.push(
                op.circ(&id, x, 1, &id, y)
                    .ok_or_else(|| Error::OutsideSupport(id.to_string()))?,
            );
        }
    }
    Monoid::new(names, mult, unit)
}
