//! Substitution, renaming, opening and closing for scoped terms.
//!
//! Substitutions map atoms to locally closed terms; they are total, kept as
//! a finite override table over the identity `x -> atom x`. Opening replaces
//! a bound index by a `0`-term, closing replaces a free atom by an index;
//! concretion and abstraction are their index-zero cases. Crossing an m-ary
//! binder shifts the index being opened or closed by `m`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::atom::Atom;
use crate::lnterm::{LnNode, LnTerm, ScopedIndex, TermError};
use crate::signature::{same_signature, Signature};

/// A total map from atoms to `0`-terms, as overrides of the identity.
#[derive(Clone, Debug)]
pub struct Subst {
    sig: Arc<Signature>,
    map: BTreeMap<Atom, LnTerm>,
}

impl Subst {
    /// The identity substitution, sending every atom to itself.
    pub fn identity(sig: &Arc<Signature>) -> Subst {
        Subst { sig: Arc::clone(sig), map: BTreeMap::new() }
    }

    /// The substitution sending `x` to `u` and every other atom to itself.
    pub fn single(x: Atom, u: LnTerm) -> Result<Subst, TermError> {
        Subst::identity(u.signature()).updated(x, u)
    }

    /// Override the image of `x`. This is the update used when pushing a
    /// substitution under a binder whose name has been freshened to `x`.
    pub fn updated(mut self, x: Atom, u: LnTerm) -> Result<Subst, TermError> {
        u.expect_zero_term()?;
        if !same_signature(u.signature(), &self.sig) {
            return Err(TermError::SignatureMismatch);
        }
        self.map.insert(x, u);
        Ok(self)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// The image of `x`, defaulting to the atom itself.
    pub fn get(&self, x: Atom) -> LnTerm {
        match self.map.get(&x) {
            Some(u) => u.clone(),
            None => LnTerm::atom(&self.sig, 0, x),
        }
    }

    /// The explicit overrides (atoms whose image may differ from identity).
    pub fn overrides(&self) -> impl Iterator<Item = (Atom, &LnTerm)> {
        self.map.iter().map(|(x, u)| (*x, u))
    }

    /// Apply to a term of any scope. Indices are untouched; an atom's image
    /// is weakened from scope 0 to the scope at the occurrence.
    pub fn apply(&self, t: &LnTerm) -> Result<LnTerm, TermError> {
        if !same_signature(t.signature(), &self.sig) {
            return Err(TermError::SignatureMismatch);
        }
        self.apply_checked(t)
    }

    fn apply_checked(&self, t: &LnTerm) -> Result<LnTerm, TermError> {
        match t.node() {
            LnNode::Index(_) => Ok(t.clone()),
            LnNode::Atom(x) => self.get(*x).weaken(t.scope()),
            LnNode::Op(op, args) => {
                let args = args
                    .iter()
                    .map(|arg| self.apply_checked(arg))
                    .collect::<Result<Vec<_>, _>>()?;
                LnTerm::op(t.signature(), t.scope(), op, args)
            }
        }
    }
}

/// A name-for-name renaming: a total map from atoms to atoms, again as a
/// finite override table over the identity.
#[derive(Clone, Debug, Default)]
pub struct Renaming {
    map: BTreeMap<Atom, Atom>,
}

impl Renaming {
    pub fn identity() -> Renaming {
        Renaming::default()
    }

    pub fn single(from: Atom, to: Atom) -> Renaming {
        Renaming::identity().updated(from, to)
    }

    pub fn updated(mut self, from: Atom, to: Atom) -> Renaming {
        self.map.insert(from, to);
        self
    }

    pub fn get(&self, x: Atom) -> Atom {
        *self.map.get(&x).unwrap_or(&x)
    }

    pub fn is_injective_on(&self, atoms: &[Atom]) -> bool {
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[..i] {
                if a != b && self.get(*a) == self.get(*b) {
                    return false;
                }
            }
        }
        true
    }

    /// Rename every atom occurrence; indices and structure are untouched.
    /// Agrees with applying the substitution `x -> atom (rho x)`.
    pub fn apply(&self, t: &LnTerm) -> LnTerm {
        let sig = t.signature();
        match t.node() {
            LnNode::Index(_) => t.clone(),
            LnNode::Atom(x) => LnTerm::atom(sig, t.scope(), self.get(*x)),
            LnNode::Op(op, args) => {
                let args = args.iter().map(|arg| self.apply(arg)).collect();
                LnTerm::op(sig, t.scope(), op, args)
                    .expect("renaming preserves scopes and arities")
            }
        }
    }

    /// View as a substitution over `sig` (each atom maps to an atom leaf).
    pub fn as_subst(&self, sig: &Arc<Signature>) -> Subst {
        let mut subst = Subst::identity(sig);
        for (from, to) in &self.map {
            subst = subst
                .updated(*from, LnTerm::atom(sig, 0, *to))
                .expect("atom images are zero-terms");
        }
        subst
    }
}

impl LnTerm {
    /// Opening: replace index `i` by the `0`-term `u`, lowering the scope by
    /// one. Hitting `i` weakens `u` to the local scope; other indices are
    /// mapped down by the order-preserving removal of `i`; the index is
    /// shifted as binders are crossed.
    pub fn open_at(&self, i: ScopedIndex, u: &LnTerm) -> Result<LnTerm, TermError> {
        self.expect_scope(i.bound())?;
        u.expect_zero_term()?;
        if !same_signature(u.signature(), self.signature()) {
            return Err(TermError::SignatureMismatch);
        }
        self.open_at_checked(i, u)
    }

    fn open_at_checked(&self, i: ScopedIndex, u: &LnTerm) -> Result<LnTerm, TermError> {
        let sig = self.signature();
        let inner = i.bound() - 1;
        match self.node() {
            LnNode::Index(j) => {
                if *j == i {
                    u.weaken(inner)
                } else {
                    Ok(LnTerm::index(sig, i.remove(*j)?))
                }
            }
            LnNode::Atom(a) => Ok(LnTerm::atom(sig, inner, *a)),
            LnNode::Op(op, args) => {
                let decl = sig.lookup(op).ok_or_else(|| TermError::UnknownOperator(op.to_string()))?;
                let args = args
                    .iter()
                    .zip(decl.arity().to_vec())
                    .map(|(arg, depth)| arg.open_at_checked(i.shift(depth), u))
                    .collect::<Result<Vec<_>, _>>()?;
                LnTerm::op(sig, inner, op, args)
            }
        }
    }

    /// Concretion: opening at index zero. Sends a term of scope `1 + n` to
    /// scope `n`.
    pub fn concrete(&self, u: &LnTerm) -> Result<LnTerm, TermError> {
        if self.scope() == 0 {
            return Err(TermError::ScopeMismatch { expected: 1, got: 0 });
        }
        self.open_at(ScopedIndex::new(0, self.scope())?, u)
    }

    /// Closing: replace the atom `x` by index `i`, raising the scope by
    /// one. Existing indices are moved by the order-preserving insertion
    /// that avoids `i`; the index is shifted as binders are crossed.
    pub fn close_at(&self, i: ScopedIndex, x: Atom) -> Result<LnTerm, TermError> {
        if i.bound() != self.scope() + 1 {
            return Err(TermError::BoundMismatch { left: i.bound(), right: self.scope() + 1 });
        }
        let sig = self.signature();
        let outer = i.bound();
        match self.node() {
            LnNode::Index(j) => Ok(LnTerm::index(sig, i.insert(*j)?)),
            LnNode::Atom(a) => {
                if *a == x {
                    Ok(LnTerm::index(sig, i))
                } else {
                    Ok(LnTerm::atom(sig, outer, *a))
                }
            }
            LnNode::Op(op, args) => {
                let decl = sig.lookup(op).ok_or_else(|| TermError::UnknownOperator(op.to_string()))?;
                let args = args
                    .iter()
                    .zip(decl.arity().to_vec())
                    .map(|(arg, depth)| arg.close_at(i.shift(depth), x))
                    .collect::<Result<Vec<_>, _>>()?;
                LnTerm::op(sig, outer, op, args)
            }
        }
    }

    /// Abstraction: closing at index zero. Sends a term of scope `n` to
    /// scope `1 + n`, with every free `x` becoming the new index.
    pub fn abstracted(&self, x: Atom) -> LnTerm {
        let i = ScopedIndex::new(0, self.scope() + 1).expect("zero is below any positive bound");
        self.close_at(i, x).expect("bound chosen to match")
    }
}
