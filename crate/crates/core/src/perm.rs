//! Permutations of `{1,...,n}`.
//!
//! Composition follows functions: `a.compose(&b)` is `a ∘ b`, i.e. `i ↦ a(b(i))`.
//! Right actions in this crate satisfy `(x·α)·β = x·(α ∘ β)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based images, e.g. `[2, 1]` for the swap.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(k, &v)| k == v)
        });
        Permutation { images }
    }

    /// The transposition exchanging the 1-based points `i` and `j` of `{1..n}`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 1-based image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based images, the one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { images: inv }
    }

    /// All permutations of `{1..n}` in lexicographic order of their one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    /// Reindexes a sequence the way the right action reindexes input colours:
    /// position `k` of the result holds `v[α(k)]`.
    pub fn permute_right<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len(), "sequence length differs from permutation size");
        self.images.iter().map(|&i| v[i].clone()).collect()
    }

    /// Block expansion: position `p` is replaced by a block of `sizes[p]` points,
    /// and block `p` is sent, order-preserving, onto the block at position `α(p)`.
    /// Target blocks are laid out in target order, so target block `q` has size
    /// `sizes[α⁻¹(q)]`.
    pub fn block(&self, sizes: &[usize]) -> Permutation {
        assert_eq!(sizes.len(), self.len());
        let inv = self.inverse();
        let mut target_offset = vec![0; self.len()];
        let mut acc = 0;
        for q in 0..self.len() {
            target_offset[q] = acc;
            acc += sizes[inv.images[q]];
        }
        let mut images = Vec::with_capacity(acc);
        for (p, &s) in sizes.iter().enumerate() {
            let base = target_offset[self.images[p]];
            images.extend(base..base + s);
        }
        Permutation { images }
    }

    /// `id_before ⊕ self ⊕ id_after`.
    pub fn embed(&self, before: usize, after: usize) -> Permutation {
        let mut images: Vec<usize> = (0..before).collect();
        images.extend(self.images.iter().map(|&i| i + before));
        let n = images.len();
        images.extend(n..n + after);
        Permutation { images }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}
