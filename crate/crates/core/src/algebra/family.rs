use std::collections::BTreeMap;

use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};

/// A colour-indexed family of finite sets `X(c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteFamily {
    sets: BTreeMap<Colour, Vec<String>>,
}

impl FiniteFamily {
    pub fn new(sets: BTreeMap<Colour, Vec<String>>) -> Result<Self> {
        for (c, xs) in &sets {
            let mut sorted = xs.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != xs.len() {
                return Err(Error::malformed(format!("duplicate elements in X({c})")));
            }
        }
        Ok(FiniteFamily { sets })
    }

    /// `X(c) = {0,..,n-1}` for each `(c, n)`.
    pub fn numbered(sizes: &[(Colour, usize)]) -> Self {
        FiniteFamily {
            sets: sizes
                .iter()
                .map(|(c, n)| (c.clone(), (0..*n).map(|k| k.to_string()).collect()))
                .collect(),
        }
    }

    pub fn colours(&self) -> impl Iterator<Item = &Colour> {
        self.sets.keys()
    }

    pub fn contains_colour(&self, c: &Colour) -> bool {
        self.sets.contains_key(c)
    }

    pub fn set(&self, c: &Colour) -> &[String] {
        self.sets.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn size(&self, c: &Colour) -> usize {
        self.set(c).len()
    }

    pub fn index_of(&self, c: &Colour, name: &str) -> Result<usize> {
        self.set(c)
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownElement { profile: format!("X({c})"), element: name.to_string() })
    }

    /// Number of argument tuples `X(c1)×...×X(cn)`.
    pub fn domain_size(&self, p: &Profile) -> usize {
        p.inputs.iter().map(|c| self.size(c)).product()
    }

    /// Decodes a tuple index (mixed radix, first argument most significant).
    pub fn decode(&self, p: &Profile, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; p.arity()];
        for (slot, c) in p.inputs.iter().enumerate().rev() {
            let s = self.size(c);
            out[slot] = k % s;
            k /= s;
        }
        out
    }

    pub fn encode(&self, p: &Profile, args: &[usize]) -> usize {
        p.inputs
            .iter()
            .zip(args)
            .fold(0, |acc, (c, &a)| acc * self.size(c) + a)
    }
}
