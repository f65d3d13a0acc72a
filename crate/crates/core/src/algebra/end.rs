//! Endomorphism operads of finite families.
//!
//! An operation of profile `(c1,...,cn;c)` is a function
//! `X(c1)×...×X(cn) → X(c)`, stored as its value table over argument tuples
//! in mixed-radix order. The empty product is a point, so nullary operations
//! are points of `X(c)`.

use super::FiniteFamily;
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::Operad;
use crate::perm::Permutation;

/// Default cap on the number of functions materialised for one component.
pub const DEFAULT_LIMIT: u128 = 1_000_000;

/// A function table.
pub type Function = Vec<usize>;

/// `(f ∘_i g)(x_1..x_{i-1}, y_1..y_m, x_{i+1}..) = f(x_1.., g(y), ..)`.
pub fn compose_functions(
    family: &FiniteFamily,
    outer: &Profile,
    f: &[usize],
    i: usize,
    inner: &Profile,
    g: &[usize],
) -> Option<Function> {
    outer.graft(i, inner)?;
    // Tuple indices split as (prefix, inner block, suffix) in mixed radix.
    let radix = |cs: &[Colour]| cs.iter().map(|c| family.size(c)).product::<usize>();
    let prefix = radix(&outer.inputs[..i - 1]);
    let suffix = radix(&outer.inputs[i..]);
    let block = radix(&inner.inputs);
    let slot = family.size(&outer.inputs[i - 1]);
    let mut out = Vec::with_capacity(prefix * block * suffix);
    for a in 0..prefix {
        for &gy in &g[..block] {
            let base = (a * slot + gy) * suffix;
            out.extend_from_slice(&f[base..base + suffix]);
        }
    }
    Some(out)
}

/// `(f·α)(v_1..v_n) = f(v_{α⁻¹(1)},...,v_{α⁻¹(n)})`, of profile `p·α`.
pub fn act_function(family: &FiniteFamily, p: &Profile, f: &[usize], alpha: &Permutation) -> Function {
    let q = p.permuted(alpha);
    let inv = alpha.inverse();
    (0..family.domain_size(&q))
        .map(|k| {
            let v = family.decode(&q, k);
            let args: Vec<usize> = (1..=p.arity()).map(|j| v[inv.image(j) - 1]).collect();
            f[family.encode(p, &args)]
        })
        .collect()
}

pub fn identity_function(family: &FiniteFamily, c: &Colour) -> Function {
    (0..family.size(c)).collect()
}

/// `End(X)` restricted to the profiles of arity at most `max_arity` over the
/// family's colours.
#[derive(Clone, Debug)]
pub struct EndOperad {
    family: FiniteFamily,
    max_arity: usize,
    limit: u128,
}

impl EndOperad {
    pub fn new(family: FiniteFamily, max_arity: usize) -> Self {
        EndOperad { family, max_arity, limit: DEFAULT_LIMIT }
    }

    pub fn with_limit(mut self, limit: u128) -> Self {
        self.limit = limit;
        self
    }

    pub fn family(&self) -> &FiniteFamily {
        &self.family
    }
}

/// Number of functions of profile `p`, `|X(c)|^(∏|X(c_i)|)`, saturating.
pub fn component_size(family: &FiniteFamily, p: &Profile) -> u128 {
    let base = family.size(&p.output) as u128;
    let exp = p
        .inputs
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(family.size(c) as u128));
    match exp {
        None => u128::MAX,
        Some(e) => {
            let mut acc: u128 = 1;
            for _ in 0..e {
                acc = match acc.checked_mul(base) {
                    Some(v) => v,
                    None => return u128::MAX,
                };
                if acc == 0 {
                    return 0;
                }
            }
            acc
        }
    }
}

/// All functions of profile `p` in lexicographic order of their tables.
pub fn end_component(family: &FiniteFamily, p: &Profile, limit: u128) -> Result<Vec<Function>> {
    let needed = component_size(family, p);
    if needed > limit {
        return Err(Error::BoundExceeded { what: format!("End component {p}"), needed, limit });
    }
    Ok(crate::collection::all_functions(family.domain_size(p), family.size(&p.output)))
}

impl Operad for EndOperad {
    type Colour = Colour;
    type Elem = Function;

    fn support(&self) -> Vec<Profile> {
        let colours: Vec<Colour> = self.family.colours().cloned().collect();
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Colour>> = vec![Vec::new()];
        for n in 0..=self.max_arity {
            for inputs in &layer {
                for c in &colours {
                    out.push(Profile::new(inputs.clone(), c.clone()));
                }
            }
            if n < self.max_arity {
                layer = layer
                    .iter()
                    .flat_map(|ins| {
                        colours.iter().map(move |c| {
                            let mut v = ins.clone();
                            v.push(c.clone());
                            v
                        })
                    })
                    .collect();
            }
        }
        out.sort();
        out
    }

    fn contains(&self, p: &Profile) -> bool {
        p.arity() <= self.max_arity
            && p.inputs.iter().chain([&p.output]).all(|c| self.family.contains_colour(c))
    }

    fn elements(&self, p: &Profile) -> Result<Vec<Function>> {
        end_component(&self.family, p, self.limit)
    }

    fn is_element(&self, p: &Profile, f: &Function) -> bool {
        self.contains(p)
            && f.len() == self.family.domain_size(p)
            && f.iter().all(|&y| y < self.family.size(&p.output))
    }

    fn unit(&self, c: &Colour) -> Option<Function> {
        self.family.contains_colour(c).then(|| identity_function(&self.family, c))
    }

    fn circ(&self, outer: &Profile, f: &Function, i: usize, inner: &Profile, g: &Function) -> Option<Function> {
        let composite = outer.graft(i, inner)?;
        if !self.contains(outer) || !self.contains(inner) || !self.contains(&composite) {
            return None;
        }
        compose_functions(&self.family, outer, f, i, inner, g)
    }

    fn act(&self, p: &Profile, f: &Function, alpha: &Permutation) -> Option<Function> {
        (self.contains(p) && alpha.len() == p.arity()).then(|| act_function(&self.family, p, f, alpha))
    }

    fn show(&self, p: &Profile, f: &Function) -> String {
        let vals: Vec<&str> = f.iter().map(|&y| self.family.set(&p.output)[y].as_str()).collect();
        format!("[{}]", vals.join(" "))
    }
}
