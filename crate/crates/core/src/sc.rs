//! The tree operad whose colours are profiles over a colour set `C` and whose
//! operations are numbered planar rooted `C`-coloured trees.
//!
//! An element with vertex profiles `(p1,...,pn)` and boundary `q` is an
//! operation `(p1,...,pn; q)`. The unit at `q` is the corolla of `q`; the right
//! action renumbers vertices; composition replaces vertex `i` by argument `i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::trees::{self, graft, ColouredTree, Origin, TreeProfile};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScElement {
    tree: ColouredTree,
    colours: BTreeSet<Colour>,
}

impl ScElement {
    /// Wraps a tree, checking it is valid over `colours`.
    pub fn new(tree: ColouredTree, colours: BTreeSet<Colour>) -> Result<Self> {
        let report = tree.validate(&colours);
        if !report.is_ok() {
            let detail = report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::InvalidTree(detail));
        }
        Ok(ScElement { tree, colours })
    }

    pub fn parse(text: &str, colours: &BTreeSet<Colour>) -> Result<Self> {
        ScElement::new(trees::parse_tree(text)?, colours.clone())
    }

    pub fn tree(&self) -> &ColouredTree {
        &self.tree
    }

    pub fn colours(&self) -> &BTreeSet<Colour> {
        &self.colours
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    /// The operation profile over profiles: `(vertex profiles; boundary)`.
    pub fn profile(&self) -> Profile<Profile> {
        let TreeProfile { vertices, boundary } = self
            .tree
            .profile()
            .expect("elements hold validated trees");
        Profile::new(vertices, boundary)
    }

    pub fn boundary(&self) -> Profile {
        self.profile().output
    }
}

impl fmt::Display for ScElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tree.fmt(f)
    }
}

/// The unit at `p`: the corolla with leaf `j` in planar position `j`.
pub fn unit(colours: &BTreeSet<Colour>, p: &Profile) -> Result<ScElement> {
    ScElement::new(trees::corolla(p), colours.clone())
}

/// Right action: the vertex carrying old number `α(i)` carries new number `i`.
pub fn sigma_action(x: &ScElement, alpha: &Permutation) -> Result<ScElement> {
    let n = x.vertex_count();
    if alpha.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: alpha.len(),
        });
    }
    let inv = alpha.inverse();
    Ok(ScElement {
        tree: x.tree.map_vertex_numbers(&|k| inv.image(k as usize) as u64),
        colours: x.colours.clone(),
    })
}

/// Simultaneous substitution of `args[i]` at vertex `i+1`. The vertices of
/// `args[0]` are numbered first (in their own order), then those of
/// `args[1]`, and so on. Leaves keep the numbers of `x`.
pub fn compose(x: &ScElement, args: &[ScElement]) -> Result<ScElement> {
    let profile = x.profile();
    if args.len() != profile.arity() {
        return Err(Error::ArityMismatch {
            expected: profile.arity(),
            found: args.len(),
        });
    }
    for (k, (want, arg)) in profile.inputs.iter().zip(args).enumerate() {
        let got = arg.boundary();
        if *want != got {
            return Err(Error::ProfileMismatch {
                position: k + 1,
                expected: want.to_string(),
                found: got.to_string(),
            });
        }
    }
    let mut offsets = Vec::with_capacity(args.len());
    let mut acc = 0u64;
    for a in args {
        offsets.push(acc);
        acc += a.vertex_count() as u64;
    }
    let skeleton = graft(&x.tree, &|k| Some(&args[(k - 1) as usize].tree))?;
    let tree = skeleton.renumber(&|o| match o {
        Origin::Guest { at, number } => offsets[(at - 1) as usize] + number,
        Origin::Host(_) => unreachable!("every host vertex is replaced"),
    });
    let mut colours = x.colours.clone();
    for a in args {
        colours.extend(a.colours.iter().cloned());
    }
    Ok(ScElement { tree, colours })
}

/// `x ∘_i y`: composition with units everywhere except slot `i` (1-based).
pub fn circ(x: &ScElement, i: usize, y: &ScElement) -> Result<ScElement> {
    let profile = x.profile();
    if i == 0 || i > profile.arity() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: profile.arity(),
        });
    }
    let args = profile
        .inputs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            if k + 1 == i {
                Ok(y.clone())
            } else {
                unit(&x.colours, p)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    compose(x, &args)
}

/// For a one-vertex element, the permutation `j ↦ planar position of leaf j`.
pub fn as_permutation(x: &ScElement) -> Option<Permutation> {
    (x.vertex_count() == 1).then(|| x.tree.leaf_positions())
}

/// All elements with the given vertex profiles and boundary.
pub fn component(colours: &BTreeSet<Colour>, vertex_profiles: &[Profile], boundary: &Profile) -> Vec<ScElement> {
    trees::enumerate_trees(colours, vertex_profiles, boundary)
        .into_iter()
        .map(|tree| ScElement {
            tree,
            colours: colours.clone(),
        })
        .collect()
}
