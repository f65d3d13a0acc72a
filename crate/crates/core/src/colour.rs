//! Colours and profiles `(c1,...,cn;c)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A colour token over `[a-z0-9_]+`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Colour(String);

impl Colour {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_colour_token(&name) {
            Ok(Colour(name))
        } else {
            Err(Error::InvalidColour(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_colour_char(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'
}

fn is_colour_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_colour_char)
}

impl TryFrom<String> for Colour {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Colour::new(s)
    }
}

impl From<Colour> for String {
    fn from(c: Colour) -> String {
        c.0
    }
}

impl FromStr for Colour {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Colour::new(s.trim())
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand used heavily in tests and fixtures. Panics on an invalid token.
pub fn colour(name: &str) -> Colour {
    Colour::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// An operation signature: ordered input colours and one output colour.
///
/// Generic over the colour type so that profiles over profiles (the colour set
/// of the tree operad) reuse the same machinery.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Profile<C = Colour> {
    pub inputs: Vec<C>,
    pub output: C,
}

impl<C: Clone> Profile<C> {
    pub fn new(inputs: Vec<C>, output: C) -> Self {
        Profile { inputs, output }
    }

    /// The unary profile `(c;c)`.
    pub fn identity(c: C) -> Self {
        Profile {
            inputs: vec![c.clone()],
            output: c,
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Profile of `x ∘_i y` where `self` is the profile of `x` and `inner` that
    /// of `y`. `i` is 1-based. Returns `None` when the colours do not match.
    pub fn graft(&self, i: usize, inner: &Profile<C>) -> Option<Profile<C>>
    where
        C: PartialEq,
    {
        if i == 0 || i > self.inputs.len() || self.inputs[i - 1] != inner.output {
            return None;
        }
        let mut inputs = Vec::with_capacity(self.inputs.len() + inner.inputs.len() - 1);
        inputs.extend_from_slice(&self.inputs[..i - 1]);
        inputs.extend_from_slice(&inner.inputs);
        inputs.extend_from_slice(&self.inputs[i..]);
        Some(Profile::new(inputs, self.output.clone()))
    }

    /// The target of the right action: `(c_{α(1)},...,c_{α(n)};c)`.
    pub fn permuted(&self, alpha: &Permutation) -> Profile<C> {
        Profile::new(alpha.permute_right(&self.inputs), self.output.clone())
    }
}

impl<C: fmt::Display> fmt::Display for Profile<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.inputs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ";{})", self.output)
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::malformed(format!("profile {t:?} must look like (c1,...,cn;c)")))?;
        let (ins, out) = inner
            .split_once(';')
            .ok_or_else(|| Error::malformed(format!("profile {t:?} is missing ';'")))?;
        let inputs = if ins.trim().is_empty() {
            Vec::new()
        } else {
            ins.split(',').map(str::parse).collect::<Result<Vec<Colour>>>()?
        };
        Ok(Profile::new(inputs, out.parse()?))
    }
}

/// Parses a `;`-separated list of profiles such as `(a,b;c);(b,b;a)`.
pub fn parse_profile_list(s: &str) -> Result<Vec<Profile>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::malformed(format!("unbalanced ')' in {s:?}")))?;
                if depth == 0 {
                    out.push(s[start..=k].parse()?);
                    start = k + 1;
                }
            }
            ';' if depth == 0 => start = k + 1,
            c if depth == 0 && !c.is_whitespace() => {
                return Err(Error::malformed(format!("unexpected {c:?} between profiles in {s:?}")))
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::malformed(format!("unbalanced '(' in {s:?}")));
    }
    Ok(out)
}

/// Shorthand for tests: `prof("(a,b;c)")`. Panics on malformed input.
pub fn prof(s: &str) -> Profile {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}
