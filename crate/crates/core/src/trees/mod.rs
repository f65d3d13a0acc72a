//! Planar rooted coloured trees with numbered vertices and numbered leaves.
//!
//! A tree is stored literally: children are kept in planar (left-to-right)
//! order, every vertex carries its number and every leaf its number. Because
//! the numbering and the planar order rigidify the tree, two trees represent
//! the same element exactly when they are structurally equal.

mod dsl;
mod enumerate;
mod substitute;

use std::collections::BTreeSet;
use std::fmt;

use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::report::Report;

pub use dsl::{parse_tree, parse_tree_with_colours};
pub use enumerate::{enumerate_trees, trees_with_vertex_profiles_in};
pub(crate) use substitute::graft;
pub use substitute::{substitute_vertex, Origin, Skeleton, SkeletonChild, SkeletonVertex, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ColouredTree {
    /// The tree with no vertices: a single edge that is both leaf 1 and root.
    Edge(Colour),
    Vertex(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub number: u64,
    /// Colour of the outgoing edge.
    pub colour: Colour,
    pub children: Vec<Child>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Child {
    Leaf(Leaf),
    Vertex(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leaf {
    pub number: u64,
    pub colour: Colour,
}

/// Vertex profiles indexed by vertex number (entry 0 is vertex 1) and the
/// boundary profile (leaf colours by leaf number; root colour).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeProfile {
    pub vertices: Vec<Profile>,
    pub boundary: Profile,
}

impl Child {
    pub fn colour(&self) -> &Colour {
        match self {
            Child::Leaf(l) => &l.colour,
            Child::Vertex(v) => &v.colour,
        }
    }
}

impl Vertex {
    pub fn profile(&self) -> Profile {
        Profile::new(
            self.children.iter().map(|c| c.colour().clone()).collect(),
            self.colour.clone(),
        )
    }

    fn visit<'a>(&'a self, vertices: &mut Vec<&'a Vertex>, leaves: &mut Vec<&'a Leaf>) {
        vertices.push(self);
        for c in &self.children {
            match c {
                Child::Leaf(l) => leaves.push(l),
                Child::Vertex(v) => v.visit(vertices, leaves),
            }
        }
    }
}

impl ColouredTree {
    pub fn root_colour(&self) -> &Colour {
        match self {
            ColouredTree::Edge(c) => c,
            ColouredTree::Vertex(v) => &v.colour,
        }
    }

    /// Vertices in pre-order.
    pub fn vertices(&self) -> Vec<&Vertex> {
        self.walk().0
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ColouredTree::Edge(_) => 1,
            ColouredTree::Vertex(_) => self.walk().1.len(),
        }
    }

    /// Vertices in pre-order and leaves in planar order. The edge tree
    /// reports no leaves here; its single leaf is implicit.
    fn walk(&self) -> (Vec<&Vertex>, Vec<&Leaf>) {
        let mut vertices = Vec::new();
        let mut leaves = Vec::new();
        if let ColouredTree::Vertex(v) = self {
            v.visit(&mut vertices, &mut leaves);
        }
        (vertices, leaves)
    }

    /// Leaf numbers in planar order (`[1]` for the edge tree).
    pub fn planar_leaf_numbers(&self) -> Vec<u64> {
        match self {
            ColouredTree::Edge(_) => vec![1],
            ColouredTree::Vertex(_) => self.walk().1.iter().map(|l| l.number).collect(),
        }
    }

    /// Colours used anywhere in the tree.
    pub fn colours(&self) -> BTreeSet<Colour> {
        let mut out = BTreeSet::new();
        match self {
            ColouredTree::Edge(c) => {
                out.insert(c.clone());
            }
            ColouredTree::Vertex(_) => {
                let (vs, ls) = self.walk();
                out.extend(vs.iter().map(|v| v.colour.clone()));
                out.extend(ls.iter().map(|l| l.colour.clone()));
            }
        }
        out
    }

    /// Lists every violated invariant; empty iff the tree is valid over `colours`.
    pub fn validate(&self, colours: &BTreeSet<Colour>) -> Report {
        let mut report = Report::new();
        for c in self.colours() {
            report.check(colours.contains(&c), "unknown colour", || c.to_string());
        }
        if let ColouredTree::Vertex(_) = self {
            let (vs, ls) = self.walk();
            let vnums: Vec<u64> = vs.iter().map(|v| v.number).collect();
            report.check(is_one_to_n(&vnums), "vertex numbering not 1..n", || {
                format!("vertex numbers {vnums:?}")
            });
            let lnums: Vec<u64> = ls.iter().map(|l| l.number).collect();
            report.check(is_one_to_n(&lnums), "leaf numbering not 1..m", || {
                format!("leaf numbers {lnums:?}")
            });
        }
        report
    }

    /// Checks the numbering invariants, returning the first problem as an error.
    pub(crate) fn check_numbering(&self) -> Result<()> {
        if let ColouredTree::Vertex(_) = self {
            let (vs, ls) = self.walk();
            numbering_error("vertex", vs.iter().map(|v| v.number))?;
            numbering_error("leaf", ls.iter().map(|l| l.number))?;
        }
        Ok(())
    }

    /// Vertex profiles by vertex number, and the boundary profile.
    pub fn profile(&self) -> Result<TreeProfile> {
        self.check_numbering()?;
        match self {
            ColouredTree::Edge(c) => Ok(TreeProfile {
                vertices: Vec::new(),
                boundary: Profile::identity(c.clone()),
            }),
            ColouredTree::Vertex(root) => {
                let (vs, ls) = self.walk();
                let mut vertices = vec![None; vs.len()];
                for v in vs {
                    vertices[(v.number - 1) as usize] = Some(v.profile());
                }
                let mut inputs = vec![None; ls.len()];
                for l in ls {
                    inputs[(l.number - 1) as usize] = Some(l.colour.clone());
                }
                Ok(TreeProfile {
                    vertices: vertices.into_iter().map(Option::unwrap).collect(),
                    boundary: Profile::new(
                        inputs.into_iter().map(Option::unwrap).collect(),
                        root.colour.clone(),
                    ),
                })
            }
        }
    }

    /// The permutation `j ↦ planar position of leaf j`.
    pub(crate) fn leaf_positions(&self) -> Permutation {
        let planar = self.planar_leaf_numbers();
        let mut images = vec![0; planar.len()];
        for (pos, &n) in planar.iter().enumerate() {
            images[(n - 1) as usize] = pos;
        }
        Permutation::from_zero_based(images)
    }

    /// Applies `f` to every vertex number.
    pub fn map_vertex_numbers(&self, f: &impl Fn(u64) -> u64) -> ColouredTree {
        match self {
            ColouredTree::Edge(c) => ColouredTree::Edge(c.clone()),
            ColouredTree::Vertex(v) => ColouredTree::Vertex(v.map_numbers(f, &|n| n)),
        }
    }

    /// Applies `f` to every leaf number. The edge tree is returned unchanged.
    pub fn map_leaf_numbers(&self, f: &impl Fn(u64) -> u64) -> ColouredTree {
        match self {
            ColouredTree::Edge(c) => ColouredTree::Edge(c.clone()),
            ColouredTree::Vertex(v) => ColouredTree::Vertex(v.map_numbers(&|n| n, f)),
        }
    }
}

impl Vertex {
    fn map_numbers(&self, fv: &impl Fn(u64) -> u64, fl: &impl Fn(u64) -> u64) -> Vertex {
        Vertex {
            number: fv(self.number),
            colour: self.colour.clone(),
            children: self
                .children
                .iter()
                .map(|c| match c {
                    Child::Leaf(l) => Child::Leaf(Leaf {
                        number: fl(l.number),
                        colour: l.colour.clone(),
                    }),
                    Child::Vertex(v) => Child::Vertex(v.map_numbers(fv, fl)),
                })
                .collect(),
        }
    }
}

fn is_one_to_n(nums: &[u64]) -> bool {
    let mut sorted = nums.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(k, &n)| n == k as u64 + 1)
}

fn numbering_error(kind: &str, nums: impl Iterator<Item = u64>) -> Result<()> {
    let nums: Vec<u64> = nums.collect();
    let n = nums.len() as u64;
    let mut seen = BTreeSet::new();
    for &k in &nums {
        if k == 0 || k > n {
            return Err(Error::InvalidTree(format!(
                "{kind} number {k} outside 1..{n}"
            )));
        }
        if !seen.insert(k) {
            return Err(Error::InvalidTree(format!("duplicate {kind} number {k}")));
        }
    }
    Ok(())
}

impl fmt::Display for ColouredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColouredTree::Edge(c) => write!(f, "e:{c}"),
            ColouredTree::Vertex(v) => v.fmt(f),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:{}(", self.number, self.colour)?;
        for (k, c) in self.children.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match c {
                Child::Leaf(l) => write!(f, "l{}:{}", l.number, l.colour)?,
                Child::Vertex(v) => v.fmt(f)?,
            }
        }
        f.write_str(")")
    }
}

/// Canonical text of a tree.
pub fn serialize_tree(t: &ColouredTree) -> String {
    t.to_string()
}

/// Builds the corolla for `p`: vertex 1 with leaf `j` in planar position `j`.
pub fn corolla(p: &Profile) -> ColouredTree {
    ColouredTree::Vertex(Vertex {
        number: 1,
        colour: p.output.clone(),
        children: p
            .inputs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                Child::Leaf(Leaf {
                    number: k as u64 + 1,
                    colour: c.clone(),
                })
            })
            .collect(),
    })
}
