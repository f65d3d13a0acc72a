//! Coloured operads with finite components.
//!
//! The [`Operad`] trait is the common interface consumed by the verifier and
//! by everything that composes operations: table-backed operads, endomorphism
//! operads, and restrictions of the tree operad all implement it. Operads are
//! presented by units, partial compositions `∘_i` and the right actions; the
//! full composition product is derived.
//!
//! Infinite operads are handled by truncation: an operad reports a finite
//! support of profiles, and a composite or action is only available when
//! every profile involved lies in the support.

mod constructions;
mod monoid;
mod table;
mod verify;

use std::fmt::Debug;
use std::hash::Hash;

use crate::collection::ColourLike;
use crate::colour::Profile;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use constructions::{ass_element_name, ass_truncated, ass_word, monoid_of, operad_from_monoid, terminal_operad};
pub use monoid::Monoid;
pub use table::{FiniteOperad, TableEntry};
pub use verify::{verify_morphism, verify_operad};

pub trait Operad {
    type Colour: ColourLike;
    type Elem: Clone + Eq + Hash + Debug;

    /// Stored profiles in ascending order.
    fn support(&self) -> Vec<Profile<Self::Colour>>;

    fn contains(&self, p: &Profile<Self::Colour>) -> bool;

    /// Elements of a stored component, in a fixed order.
    fn elements(&self, p: &Profile<Self::Colour>) -> Result<Vec<Self::Elem>>;

    /// Whether `x` is an element of the stored component at `p`.
    fn is_element(&self, p: &Profile<Self::Colour>, x: &Self::Elem) -> bool {
        self.elements(p).is_ok_and(|xs| xs.contains(x))
    }

    fn unit(&self, c: &Self::Colour) -> Option<Self::Elem>;

    /// `x ∘_i y` (1-based `i`), or `None` when not stored.
    fn circ(
        &self,
        outer: &Profile<Self::Colour>,
        x: &Self::Elem,
        i: usize,
        inner: &Profile<Self::Colour>,
        y: &Self::Elem,
    ) -> Option<Self::Elem>;

    /// `x·α` in the component at `p·α`, or `None` when not stored.
    fn act(&self, p: &Profile<Self::Colour>, x: &Self::Elem, alpha: &Permutation) -> Option<Self::Elem>;

    /// Display form of an element, used in reports.
    fn show(&self, _p: &Profile<Self::Colour>, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    /// Colours occurring in the support.
    fn colours(&self) -> Vec<Self::Colour> {
        let mut out: Vec<Self::Colour> = self
            .support()
            .into_iter()
            .flat_map(|p| p.inputs.into_iter().chain(std::iter::once(p.output)))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `x ∘_i y` with profile bookkeeping and errors instead of `None`.
pub fn circ_checked<O: Operad>(
    op: &O,
    outer: &Profile<O::Colour>,
    x: &O::Elem,
    i: usize,
    inner: &Profile<O::Colour>,
    y: &O::Elem,
) -> Result<(Profile<O::Colour>, O::Elem)> {
    if i == 0 || i > outer.arity() {
        return Err(Error::IndexOutOfRange { index: i, len: outer.arity() });
    }
    let composite = outer.graft(i, inner).ok_or_else(|| Error::ProfileMismatch {
        position: i,
        expected: outer.inputs[i - 1].to_string(),
        found: inner.output.to_string(),
    })?;
    let z = op
        .circ(outer, x, i, inner, y)
        .ok_or_else(|| Error::OutsideSupport(composite.to_string()))?;
    Ok((composite, z))
}

/// `x·α` with errors instead of `None`.
pub fn act_checked<O: Operad>(
    op: &O,
    p: &Profile<O::Colour>,
    x: &O::Elem,
    alpha: &Permutation,
) -> Result<(Profile<O::Colour>, O::Elem)> {
    if alpha.len() != p.arity() {
        return Err(Error::SizeMismatch { expected: p.arity(), found: alpha.len() });
    }
    let q = p.permuted(alpha);
    let y = op.act(p, x, alpha).ok_or_else(|| Error::OutsideSupport(q.to_string()))?;
    Ok((q, y))
}

/// The full composition product `γ(x; y_1,...,y_n)`, computed right to left by
/// iterated `∘_i` so that earlier slot indices never shift.
pub fn gamma<O: Operad>(
    op: &O,
    outer: &Profile<O::Colour>,
    x: &O::Elem,
    args: &[(Profile<O::Colour>, O::Elem)],
) -> Result<(Profile<O::Colour>, O::Elem)> {
    if args.len() != outer.arity() {
        return Err(Error::ArityMismatch { expected: outer.arity(), found: args.len() });
    }
    let mut acc = (outer.clone(), x.clone());
    for (k, (q, y)) in args.iter().enumerate().rev() {
        if q.output != outer.inputs[k] {
            return Err(Error::ProfileMismatch {
                position: k + 1,
                expected: outer.inputs[k].to_string(),
                found: q.output.to_string(),
            });
        }
        acc = circ_checked(op, &acc.0, &acc.1, k + 1, q, y)?;
    }
    Ok(acc)
}
