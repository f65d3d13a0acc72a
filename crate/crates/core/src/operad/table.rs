use std::collections::BTreeMap;

use super::Operad;
use crate::collection::{Collection, ColourLike};
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::perm::Permutation;

type CircKey<C> = (Profile<C>, usize, Profile<C>);

/// An operad given by explicit tables over a [`Collection`]: units per colour
/// and one `∘_i` table for every admissible triple of stored profiles.
/// Elements are indices into the components of the base collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOperad<C = Colour> {
    base: Collection<C>,
    units: BTreeMap<C, usize>,
    circ: BTreeMap<CircKey<C>, Vec<usize>>,
}

/// One cell of the tables of a [`FiniteOperad`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableEntry<C = Colour> {
    Unit(C),
    Action { profile: Profile<C>, alpha: Permutation, x: usize },
    Circ { outer: Profile<C>, i: usize, inner: Profile<C>, x: usize, y: usize },
}

impl<C: ColourLike> FiniteOperad<C> {
    pub fn from_parts(
        base: Collection<C>,
        units: BTreeMap<C, usize>,
        circ: BTreeMap<(Profile<C>, usize, Profile<C>), Vec<usize>>,
    ) -> Self {
        FiniteOperad { base, units, circ }
    }

    /// Fills every `∘_i` table from `compose(outer, x, i, inner, y)`.
    pub fn tabulate(
        base: Collection<C>,
        units: BTreeMap<C, usize>,
        compose: impl Fn(&Profile<C>, usize, usize, &Profile<C>, usize) -> Result<usize>,
    ) -> Result<Self> {
        let mut circ = BTreeMap::new();
        for (outer, i, inner) in admissible_triples(&base) {
            let (n, m) = (base.size(&outer), base.size(&inner));
            let mut table = Vec::with_capacity(n * m);
            for x in 0..n {
                for y in 0..m {
                    table.push(compose(&outer, x, i, &inner, y)?);
                }
            }
            circ.insert((outer, i, inner), table);
        }
        Ok(FiniteOperad { base, units, circ })
    }

    /// The underlying collection.
    pub fn base(&self) -> &Collection<C> {
        &self.base
    }

    pub fn units(&self) -> &BTreeMap<C, usize> {
        &self.units
    }

    pub fn circ_tables(&self) -> &BTreeMap<(Profile<C>, usize, Profile<C>), Vec<usize>> {
        &self.circ
    }

    pub fn name(&self, p: &Profile<C>, x: usize) -> &str {
        self.base.name(p, x)
    }

    /// Every table cell, in a fixed order.
    pub fn entries(&self) -> Vec<TableEntry<C>> {
        let mut out: Vec<TableEntry<C>> = self.units.keys().cloned().map(TableEntry::Unit).collect();
        for ((p, alpha), table) in self.base.action_tables() {
            for x in 0..table.len() {
                out.push(TableEntry::Action { profile: p.clone(), alpha: alpha.clone(), x });
            }
        }
        for ((outer, i, inner), _) in &self.circ {
            for x in 0..self.base.size(outer) {
                for y in 0..self.base.size(inner) {
                    out.push(TableEntry::Circ { outer: outer.clone(), i: *i, inner: inner.clone(), x, y });
                }
            }
        }
        out
    }

    /// Current value of a cell and the size of the component it points into.
    pub fn entry(&self, e: &TableEntry<C>) -> Option<(usize, usize)> {
        match e {
            TableEntry::Unit(c) => {
                let u = *self.units.get(c)?;
                Some((u, self.base.size(&Profile::identity(c.clone()))))
            }
            TableEntry::Action { profile, alpha, x } => {
                let v = self.base.act(profile, *x, alpha)?;
                Some((v, self.base.size(&profile.permuted(alpha))))
            }
            TableEntry::Circ { outer, i, inner, x, y } => {
                let table = self.circ.get(&(outer.clone(), *i, inner.clone()))?;
                let v = *table.get(x * self.base.size(inner) + y)?;
                Some((v, self.base.size(&outer.graft(*i, inner)?)))
            }
        }
    }

    /// A copy with one cell overwritten.
    pub fn with_entry(&self, e: &TableEntry<C>, value: usize) -> Result<Self> {
        let mut out = self.clone();
        let missing = || Error::malformed(format!("no table entry {e:?}"));
        match e {
            TableEntry::Unit(c) => *out.units.get_mut(c).ok_or_else(missing)? = value,
            TableEntry::Action { profile, alpha, x } => {
                *out.base.action_entry_mut(profile, alpha, *x).ok_or_else(missing)? = value
            }
            TableEntry::Circ { outer, i, inner, x, y } => {
                let m = out.base.size(inner);
                let table = out.circ.get_mut(&(outer.clone(), *i, inner.clone())).ok_or_else(missing)?;
                *table.get_mut(x * m + y).ok_or_else(missing)? = value;
            }
        }
        Ok(out)
    }
}

/// Triples `(outer, i, inner)` of stored profiles whose composite is stored.
pub(crate) fn admissible_triples<C: ColourLike>(base: &Collection<C>) -> Vec<(Profile<C>, usize, Profile<C>)> {
    let support: Vec<&Profile<C>> = base.support().collect();
    let mut out = Vec::new();
    for outer in &support {
        for i in 1..=outer.arity() {
            for inner in &support {
                if let Some(composite) = outer.graft(i, inner) {
                    if base.contains(&composite) {
                        out.push(((*outer).clone(), i, (*inner).clone()));
                    }
                }
            }
        }
    }
    out
}

impl<C: ColourLike> Operad for FiniteOperad<C> {
    type Colour = C;
    type Elem = usize;

    fn support(&self) -> Vec<Profile<C>> {
        self.base.support().cloned().collect()
    }

    fn contains(&self, p: &Profile<C>) -> bool {
        self.base.contains(p)
    }

    fn elements(&self, p: &Profile<C>) -> Result<Vec<usize>> {
        Ok((0..self.base.size(p)).collect())
    }

    fn is_element(&self, p: &Profile<C>, x: &usize) -> bool {
        *x < self.base.size(p)
    }

    fn unit(&self, c: &C) -> Option<usize> {
        self.units.get(c).copied()
    }

    fn circ(&self, outer: &Profile<C>, x: &usize, i: usize, inner: &Profile<C>, y: &usize) -> Option<usize> {
        let table = self.circ.get(&(outer.clone(), i, inner.clone()))?;
        table.get(x * self.base.size(inner) + y).copied()
    }

    fn act(&self, p: &Profile<C>, x: &usize, alpha: &Permutation) -> Option<usize> {
        self.base.act(p, *x, alpha)
    }

    fn show(&self, p: &Profile<C>, x: &usize) -> String {
        self.base.elements(p).get(*x).cloned().unwrap_or_else(|| format!("#{x}"))
    }

    fn colours(&self) -> Vec<C> {
        self.base.colours().iter().cloned().collect()
    }
}
