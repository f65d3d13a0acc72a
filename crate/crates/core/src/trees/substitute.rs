//! Replacing vertices of a host tree by whole trees.

use super::{Child, ColouredTree, Leaf, Vertex};
use crate::colour::{Colour, Profile};
use crate::error::{Error, Result};

/// Where a vertex of a substituted tree came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    /// An untouched vertex of the host, by its host number.
    Host(u64),
    /// Vertex `number` of the tree that replaced host vertex `at`.
    Guest { at: u64, number: u64 },
}

/// A tree whose vertices are tagged by origin instead of numbered. Leaves keep
/// the host's leaf numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skeleton {
    Edge { colour: Colour, leaf: u64 },
    Vertex(SkeletonVertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonVertex {
    pub origin: Origin,
    pub colour: Colour,
    pub children: Vec<SkeletonChild>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonChild {
    Leaf(Leaf),
    Vertex(SkeletonVertex),
}

/// Result of [`substitute_vertex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub skeleton: Skeleton,
    /// Entry `j-1` is the planar position (1-based) inside the guest of the
    /// guest leaf that absorbed input slot `j` of the replaced vertex. The
    /// absorbing leaf is the guest leaf numbered `j`.
    pub absorbed: Vec<usize>,
}

impl Skeleton {
    /// Numbers the vertices with `number` and produces an ordinary tree.
    pub fn renumber(&self, number: &impl Fn(Origin) -> u64) -> ColouredTree {
        match self {
            Skeleton::Edge { colour, .. } => ColouredTree::Edge(colour.clone()),
            Skeleton::Vertex(v) => ColouredTree::Vertex(v.renumber(number)),
        }
    }

    pub fn origins(&self) -> Vec<Origin> {
        let mut out = Vec::new();
        if let Skeleton::Vertex(v) = self {
            v.collect_origins(&mut out);
        }
        out
    }
}

impl SkeletonVertex {
    fn renumber(&self, number: &impl Fn(Origin) -> u64) -> Vertex {
        Vertex {
            number: number(self.origin),
            colour: self.colour.clone(),
            children: self
                .children
                .iter()
                .map(|c| match c {
                    SkeletonChild::Leaf(l) => Child::Leaf(l.clone()),
                    SkeletonChild::Vertex(v) => Child::Vertex(v.renumber(number)),
                })
                .collect(),
        }
    }

    fn collect_origins(&self, out: &mut Vec<Origin>) {
        out.push(self.origin);
        for c in &self.children {
            if let SkeletonChild::Vertex(v) = c {
                v.collect_origins(out);
            }
        }
    }
}

/// Replaces host vertex `at` by `guest`. Input slot `j` of the host vertex is
/// glued to the guest leaf numbered `j`; an edge-only guest contracts a unary
/// vertex.
pub fn substitute_vertex(host: &ColouredTree, at: u64, guest: &ColouredTree) -> Result<Substitution> {
    host.check_numbering()?;
    let n = host.vertex_count() as u64;
    if at == 0 || at > n {
        return Err(Error::IndexOutOfRange {
            index: at as usize,
            len: n as usize,
        });
    }
    let skeleton = graft(host, &|k| (k == at).then_some(guest))?;
    let positions = guest.leaf_positions();
    Ok(Substitution {
        skeleton,
        absorbed: positions.images(),
    })
}

/// Simultaneously replaces every host vertex `k` for which `guest(k)` is
/// `Some`. Profiles are checked.
pub(crate) fn graft<'g>(
    host: &ColouredTree,
    guest: &dyn Fn(u64) -> Option<&'g ColouredTree>,
) -> Result<Skeleton> {
    match host {
        ColouredTree::Edge(c) => Ok(Skeleton::Edge {
            colour: c.clone(),
            leaf: 1,
        }),
        ColouredTree::Vertex(v) => Ok(match graft_vertex(v, guest)? {
            SkeletonChild::Leaf(l) => Skeleton::Edge {
                colour: l.colour,
                leaf: l.number,
            },
            SkeletonChild::Vertex(v) => Skeleton::Vertex(v),
        }),
    }
}

fn graft_vertex<'g>(
    v: &Vertex,
    guest: &dyn Fn(u64) -> Option<&'g ColouredTree>,
) -> Result<SkeletonChild> {
    let children = v
        .children
        .iter()
        .map(|c| match c {
            Child::Leaf(l) => Ok(SkeletonChild::Leaf(l.clone())),
            Child::Vertex(w) => graft_vertex(w, guest),
        })
        .collect::<Result<Vec<_>>>()?;
    let Some(g) = guest(v.number) else {
        return Ok(SkeletonChild::Vertex(SkeletonVertex {
            origin: Origin::Host(v.number),
            colour: v.colour.clone(),
            children,
        }));
    };
    let expected = v.profile();
    match g {
        ColouredTree::Edge(c) => {
            if children.len() != 1 {
                return Err(Error::EdgeAtNonUnary {
                    vertex: v.number,
                    profile: expected.to_string(),
                });
            }
            if expected != Profile::identity(c.clone()) {
                return Err(mismatch(v.number, &expected, &Profile::identity(c.clone())));
            }
            Ok(children.into_iter().next().unwrap())
        }
        ColouredTree::Vertex(root) => {
            let found = g.profile()?.boundary;
            if found != expected {
                return Err(mismatch(v.number, &expected, &found));
            }
            let mut slots: Vec<Option<SkeletonChild>> = children.into_iter().map(Some).collect();
            Ok(SkeletonChild::Vertex(instantiate(root, v.number, &mut slots)))
        }
    }
}

fn instantiate(g: &Vertex, at: u64, slots: &mut [Option<SkeletonChild>]) -> SkeletonVertex {
    SkeletonVertex {
        origin: Origin::Guest { at, number: g.number },
        colour: g.colour.clone(),
        children: g
            .children
            .iter()
            .map(|c| match c {
                Child::Leaf(l) => slots[(l.number - 1) as usize]
                    .take()
                    .expect("guest leaf numbers are a bijection"),
                Child::Vertex(w) => SkeletonChild::Vertex(instantiate(w, at, slots)),
            })
            .collect(),
    }
}

fn mismatch(vertex: u64, expected: &Profile, found: &Profile) -> Error {
    Error::ProfileMismatch {
        position: vertex as usize,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
