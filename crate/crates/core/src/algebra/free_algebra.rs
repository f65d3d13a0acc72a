//! Free algebras: `F(X)(c)` is the set of `Σn`-orbits of pairs
//! `(e, (x1..xn))` with `e` an operation of profile `(c1..cn;c)` and
//! `xk ∈ X(ck)`, where `(e·α, v) ~ (e, (v_{α⁻¹(1)},...,v_{α⁻¹(n)}))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::maps::FamilyMap;
use super::{AlgebraStructure, FiniteFamily};
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::operad::{gamma, FiniteOperad, Operad};
use crate::perm::Permutation;

/// An orbit, stored as its least representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub profile: Profile,
    pub element: usize,
    pub args: Vec<usize>,
}

impl Orbit {
    /// `e[x|y]`, or `e@(a,b;c)[x|y]` when `qualified`.
    fn name(&self, op: &FiniteOperad, x: &FiniteFamily, qualified: bool) -> String {
        let args: Vec<&str> = self
            .profile
            .inputs
            .iter()
            .zip(&self.args)
            .map(|(c, &a)| x.set(c)[a].as_str())
            .collect();
        let op_name = op.name(&self.profile, self.element);
        if qualified {
            format!("{op_name}@{}[{}]", self.profile, args.join("|"))
        } else {
            format!("{op_name}[{}]", args.join("|"))
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{:?} in {}", self.element, self.args, self.profile)
    }
}

/// The least representative of the orbit of `(e, v)` at profile `p`.
fn canonical(op: &FiniteOperad, p: &Profile, e: usize, v: &[usize]) -> Result<Orbit> {
    let mut best: Option<Orbit> = None;
    for alpha in Permutation::all(p.arity()) {
        // (e, v) ~ (e·α, w) with v_k = w_{α⁻¹(k)}, i.e. w = v permuted by α.
        let ea = op
            .act(p, &e, &alpha)
            .ok_or_else(|| Error::OutsideSupport(p.permuted(&alpha).to_string()))?;
        let candidate = Orbit { profile: p.permuted(&alpha), element: ea, args: alpha.permute_right(v) };
        if best.as_ref().map_or(true, |b| candidate < *b) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("Σn is never empty"))
}

fn tuples<'a>(x: &'a FiniteFamily, p: &Profile) -> impl Iterator<Item = Vec<usize>> + 'a {
    let p = p.clone();
    (0..x.domain_size(&p)).map(move |k| x.decode(&p, k))
}

/// The orbits at every colour of the operad, in ascending order.
pub fn free_algebra_carrier(op: &FiniteOperad, x: &FiniteFamily) -> Result<BTreeMap<Colour, Vec<Orbit>>> {
    let mut out: BTreeMap<Colour, BTreeSet<Orbit>> = op.colours().into_iter().map(|c| (c, BTreeSet::new())).collect();
    for p in op.support() {
        if p.inputs.iter().any(|c| !x.contains_colour(c)) {
            continue;
        }
        for e in 0..op.base().size(&p) {
            for v in tuples(x, &p) {
                out.entry(p.output.clone()).or_default().insert(canonical(op, &p, e, &v)?);
            }
        }
    }
    Ok(out.into_iter().map(|(c, s)| (c, s.into_iter().collect())).collect())
}

/// A free algebra with its orbits and the inclusion of generators.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub algebra: AlgebraStructure,
    pub orbits: BTreeMap<Colour, Vec<Orbit>>,
    /// `x ↦ [(1_c, x)]`, defined on colours whose unit is stored.
    pub generators: FamilyMap,
    generating_family: FiniteFamily,
}

impl FreeAlgebra {
    pub fn generating_family(&self) -> &FiniteFamily {
        &self.generating_family
    }

    /// The algebra map `F(X) → A` extending `g : X → A`:
    /// `[(e, v)] ↦ A(e)(g(v1),...,g(vn))`.
    pub fn extend(&self, a: &AlgebraStructure, g: &FamilyMap) -> Result<FamilyMap> {
        let mut out = FamilyMap::new();
        for (c, orbits) in &self.orbits {
            let mut images = Vec::with_capacity(orbits.len());
            for o in orbits {
                let args: Vec<usize> = o.profile.inputs.iter().zip(&o.args).map(|(d, &v)| g[d][v]).collect();
                let y = a
                    .apply(&o.profile, o.element, &args)
                    .ok_or_else(|| Error::OutsideSupport(o.profile.to_string()))?;
                images.push(y);
            }
            out.insert(c.clone(), images);
        }
        Ok(out)
    }
}

/// The free algebra on `x`. Fails when composites of stored operations with
/// orbit representatives leave the stored support, since the action would
/// then be undefined.
pub fn free_algebra(op: &FiniteOperad, x: &FiniteFamily) -> Result<FreeAlgebra> {
    let orbits = free_algebra_carrier(op, x)?;
    let index: BTreeMap<&Orbit, usize> = orbits.values().flat_map(|os| os.iter().enumerate().map(|(k, o)| (o, k))).collect();
    let family = FiniteFamily::new(
        orbits
            .iter()
            .map(|(c, os)| {
                let short: BTreeSet<String> = os.iter().map(|o| o.name(op, x, false)).collect();
                let qualified = short.len() < os.len();
                (c.clone(), os.iter().map(|o| o.name(op, x, qualified)).collect())
            })
            .collect(),
    )?;
    let mut action = BTreeMap::new();
    for q in op.support() {
        for g in 0..op.base().size(&q) {
            let mut table = Vec::with_capacity(family.domain_size(&q));
            for k in 0..family.domain_size(&q) {
                let picked: Vec<&Orbit> = q.inputs.iter().zip(family.decode(&q, k)).map(|(d, j)| &orbits[d][j]).collect();
                let args: Vec<(Profile, usize)> = picked.iter().map(|o| (o.profile.clone(), o.element)).collect();
                let (p, e) = gamma(op, &q, &g, &args)?;
                let v: Vec<usize> = picked.iter().flat_map(|o| o.args.iter().copied()).collect();
                table.push(index[&canonical(op, &p, e, &v)?]);
            }
            action.insert((q.clone(), g), table);
        }
    }
    let mut generators = FamilyMap::new();
    for c in x.colours() {
        let id = Profile::identity(c.clone());
        if let (true, Some(u)) = (op.contains(&id), op.unit(c)) {
            let gens = (0..x.size(c)).map(|v| index[&canonical(op, &id, u, &[v]).expect("unary")]).collect();
            generators.insert(c.clone(), gens);
        }
    }
    Ok(FreeAlgebra {
        algebra: AlgebraStructure::new(op.clone(), family, action),
        orbits,
        generators,
        generating_family: x.clone(),
    })
}
