use std::fmt;

use crate::error::{Error, Result};
use crate::report::Report;

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    carrier: Vec<String>,
    /// `mult[a * n + b] = a·b`
    mult: Vec<usize>,
    unit: usize,
}

impl Monoid {
    /// Checks only the shape of the table; see [`Monoid::validate`] for the laws.
    pub fn new(carrier: Vec<String>, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let n = carrier.len();
        if mult.len() != n * n || mult.iter().any(|&z| z >= n) || unit >= n {
            return Err(Error::malformed(format!(
                "multiplication table of a {n}-element monoid must have {} entries in range",
                n * n
            )));
        }
        Ok(Monoid { carrier, mult, unit })
    }

    pub fn from_fn(carrier: Vec<String>, unit: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = carrier.len();
        let mult = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Monoid::new(carrier, mult, unit)
    }

    /// `Z/n` under addition, elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        Monoid::from_fn(names, 0, |a, b| (a + b) % n).expect("well-formed table")
    }

    /// `Z/n` under multiplication, elements named `0..n-1`.
    pub fn multiplicative(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        Monoid::from_fn(names, 1 % n, |a, b| (a * b) % n).expect("well-formed table")
    }

    pub fn trivial() -> Self {
        Monoid::cyclic(1)
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.mult
    }

    pub fn validate(&self) -> Report {
        let n = self.size();
        let mut r = Report::new();
        for a in 0..n {
            r.check(self.mul(self.unit, a) == a, "left unit", || self.carrier[a].clone());
            r.check(self.mul(a, self.unit) == a, "right unit", || self.carrier[a].clone());
            for b in 0..n {
                for c in 0..n {
                    r.check(
                        self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)),
                        "associativity",
                        || format!("({}{}){} ", self.carrier[a], self.carrier[b], self.carrier[c]),
                    );
                }
            }
        }
        r
    }

    /// Every monoid structure on `{0..n-1}` (named by number), by brute force
    /// over all tables. Feasible for `n ≤ 3`.
    pub fn all_on(n: usize) -> Vec<Monoid> {
        let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let mut out = Vec::new();
        for table in crate::collection::all_functions(n * n, n) {
            for unit in 0..n {
                let m = Monoid { carrier: names.clone(), mult: table.clone(), unit };
                if m.validate().is_ok() {
                    out.push(m);
                }
            }
        }
        out
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monoid on {{{}}} with unit {}", self.carrier.join(","), self.carrier[self.unit])
    }
}
