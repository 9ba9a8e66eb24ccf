//! Atoms and finite sets of atoms.
//!
//! Atoms name free resources. They are plain naturals with decidable
//! equality, and they are finitely inexhaustible: [`FsetAtom::new_atom`]
//! returns an atom outside any given finite set. Finite sets are kept in a
//! many-one tree form (empty / singleton / union) so that set-level queries
//! are defined on the denoted set rather than on the tree shape.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

/// A name for a free resource, backed by a natural number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(u64);

impl Atom {
    pub const fn new(value: u64) -> Atom {
        Atom(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }
}

impl From<u64> for Atom {
    fn from(value: u64) -> Atom {
        Atom(value)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite set of atoms, as an unnormalized union tree.
///
/// Two values may denote the same set; `member`, `subset` and `set_eq` are
/// insensitive to the tree shape. There is deliberately no `PartialEq` impl,
/// since structural equality of trees is not set equality.
#[derive(Clone, Debug)]
pub enum FsetAtom {
    Empty,
    Singleton(Atom),
    Union(Box<FsetAtom>, Box<FsetAtom>),
}

impl FsetAtom {
    pub fn empty() -> FsetAtom {
        FsetAtom::Empty
    }

    pub fn singleton(a: Atom) -> FsetAtom {
        FsetAtom::Singleton(a)
    }

    pub fn union(self, other: FsetAtom) -> FsetAtom {
        FsetAtom::Union(Box::new(self), Box::new(other))
    }

    /// Whether `x` occurs in some singleton leaf.
    pub fn member(&self, x: Atom) -> bool {
        match self {
            FsetAtom::Empty => false,
            FsetAtom::Singleton(a) => *a == x,
            FsetAtom::Union(l, r) => l.member(x) || r.member(x),
        }
    }

    /// Whether every leaf of `self` is a member of `other`.
    pub fn subset(&self, other: &FsetAtom) -> bool {
        match self {
            FsetAtom::Empty => true,
            FsetAtom::Singleton(a) => other.member(*a),
            FsetAtom::Union(l, r) => l.subset(other) && r.subset(other),
        }
    }

    /// Equality of the denoted sets.
    pub fn set_eq(&self, other: &FsetAtom) -> bool {
        self.subset(other) && other.subset(self)
    }

    /// An atom that is not a member of the set: one more than the maximum
    /// of the leaves, or atom `0` for a set with no leaves.
    ///
    /// The result depends only on the denoted set, so trees denoting the
    /// same set choose the same atom.
    pub fn new_atom(&self) -> Atom {
        match self.max_leaf() {
            None => Atom(0),
            Some(a) => Atom(a.0 + 1),
        }
    }

    fn max_leaf(&self) -> Option<Atom> {
        match self {
            FsetAtom::Empty => None,
            FsetAtom::Singleton(a) => Some(*a),
            FsetAtom::Union(l, r) => match (l.max_leaf(), r.max_leaf()) {
                (None, m) | (m, None) => m,
                (Some(a), Some(b)) => Some(a.max(b)),
            },
        }
    }

    /// All leaf atoms, in tree order, duplicates included.
    pub fn leaves(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Atom>) {
        match self {
            FsetAtom::Empty => {}
            FsetAtom::Singleton(a) => out.push(*a),
            FsetAtom::Union(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn is_empty_set(&self) -> bool {
        match self {
            FsetAtom::Empty => true,
            FsetAtom::Singleton(_) => false,
            FsetAtom::Union(l, r) => l.is_empty_set() && r.is_empty_set(),
        }
    }
}

impl FromIterator<Atom> for FsetAtom {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> FsetAtom {
        iter.into_iter()
            .fold(FsetAtom::Empty, |s, a| s.union(FsetAtom::Singleton(a)))
    }
}
