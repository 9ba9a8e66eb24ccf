//! Nameful terms: named binders, alpha-equivalence and capture-avoiding
//! substitution.
//!
//! A nameful term is an atom or an operator applied to bindings; an m-ary
//! binding wraps m binder names (outermost first, duplicates permitted)
//! around a subject term. Alpha-equivalence is decided by renaming both
//! sides of a binding to a common fresh name; substitution freshens each
//! binder with an atom chosen away from the supports of the relevant
//! images, in the style of Stoughton's simultaneous substitutions.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::atom::{Atom, FsetAtom};
use crate::lnops::Renaming;
use crate::lnterm::TermError;
use crate::signature::{same_signature, Signature};

/// The node shapes of a nameful term.
#[derive(Clone, Debug)]
pub enum NomNode {
    Atom(Atom),
    Op(String, Vec<NomBinding>),
}

/// A nameful term over a fixed signature.
#[derive(Clone, Debug)]
pub struct NomTerm {
    sig: Arc<Signature>,
    node: NomNode,
}

/// Binder names wrapped around a subject; the depth is the number of names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NomBinding {
    binders: Vec<Atom>,
    subject: NomTerm,
}

impl NomBinding {
    pub fn new(binders: Vec<Atom>, subject: NomTerm) -> NomBinding {
        NomBinding { binders, subject }
    }

    pub fn bare(subject: NomTerm) -> NomBinding {
        NomBinding { binders: Vec::new(), subject }
    }

    pub fn depth(&self) -> usize {
        self.binders.len()
    }

    /// Binder names, outermost first.
    pub fn binders(&self) -> &[Atom] {
        &self.binders
    }

    pub fn subject(&self) -> &NomTerm {
        &self.subject
    }

    /// Names occurring anywhere in the binding, binder positions included.
    pub fn support(&self) -> FsetAtom {
        self.binders
            .iter()
            .fold(self.subject.support(), |s, x| s.union(FsetAtom::singleton(*x)))
    }

    /// Rename every occurrence, in binder positions as well as in the
    /// subject.
    pub fn rename(&self, rho: &Renaming) -> NomBinding {
        NomBinding {
            binders: self.binders.iter().map(|x| rho.get(*x)).collect(),
            subject: self.subject.rename(rho),
        }
    }

    /// Binding size is the subject's size; binders contribute nothing, so
    /// renaming preserves it.
    pub fn size(&self) -> usize {
        self.subject.size()
    }
}

impl NomTerm {
    pub fn atom(sig: &Arc<Signature>, a: Atom) -> NomTerm {
        NomTerm { sig: Arc::clone(sig), node: NomNode::Atom(a) }
    }

    /// Build an operator node, checking that each binding's depth matches
    /// the declared binder depth for its position.
    pub fn op(
        sig: &Arc<Signature>,
        op_name: &str,
        bindings: Vec<NomBinding>,
    ) -> Result<NomTerm, TermError> {
        let decl = sig
            .lookup(op_name)
            .ok_or_else(|| TermError::UnknownOperator(op_name.into()))?;
        if decl.arity().len() != bindings.len() {
            return Err(TermError::WrongArgumentCount {
                op: op_name.into(),
                expected: decl.arity().len(),
                got: bindings.len(),
            });
        }
        for (position, (binding, depth)) in bindings.iter().zip(decl.arity()).enumerate() {
            if !same_signature(&binding.subject.sig, sig) {
                return Err(TermError::SignatureMismatch);
            }
            if binding.depth() != *depth {
                return Err(TermError::BindingDepthMismatch {
                    op: op_name.into(),
                    position,
                    expected: *depth,
                    got: binding.depth(),
                });
            }
        }
        Ok(NomTerm {
            sig: Arc::clone(sig),
            node: NomNode::Op(op_name.into(), bindings),
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn node(&self) -> &NomNode {
        &self.node
    }

    /// All names occurring in the term, in atom or binder position.
    pub fn support(&self) -> FsetAtom {
        match &self.node {
            NomNode::Atom(a) => FsetAtom::singleton(*a),
            NomNode::Op(_, bindings) => bindings
                .iter()
                .fold(FsetAtom::empty(), |s, b| s.union(b.support())),
        }
    }

    pub fn is_fresh(&self, x: Atom) -> bool {
        !self.support().member(x)
    }

    /// Apply a renaming to every occurrence of every name.
    pub fn rename(&self, rho: &Renaming) -> NomTerm {
        let node = match &self.node {
            NomNode::Atom(a) => NomNode::Atom(rho.get(*a)),
            NomNode::Op(op, bindings) => NomNode::Op(
                op.clone(),
                bindings.iter().map(|b| b.rename(rho)).collect(),
            ),
        };
        NomTerm { sig: Arc::clone(&self.sig), node }
    }

    /// Atoms are 0; an operator is one more than the maximum binding size.
    pub fn size(&self) -> usize {
        match &self.node {
            NomNode::Atom(_) => 0,
            NomNode::Op(_, bindings) => {
                1 + bindings.iter().map(NomBinding::size).max().unwrap_or(0)
            }
        }
    }

    /// Decide alpha-equivalence. At a binding, both sides are renamed so
    /// the outermost binders become one fresh common name and the
    /// comparison recurses; by the some/any property of fresh names,
    /// checking a single fresh choice decides the relation.
    pub fn alpha_eq(&self, other: &NomTerm) -> bool {
        if !same_signature(&self.sig, &other.sig) {
            return false;
        }
        match (&self.node, &other.node) {
            (NomNode::Atom(a), NomNode::Atom(b)) => a == b,
            (NomNode::Op(f, bs), NomNode::Op(g, cs)) => {
                f == g
                    && bs.len() == cs.len()
                    && bs.iter().zip(cs).all(|(b, c)| alpha_eq_binding(b, c))
            }
            _ => false,
        }
    }
}

fn alpha_eq_binding(left: &NomBinding, right: &NomBinding) -> bool {
    if left.depth() != right.depth() {
        return false;
    }
    if left.binders.is_empty() {
        return left.subject.alpha_eq(&right.subject);
    }
    // Peel the outermost binder from each side. The fresh name must avoid
    // everything in the remaining bindings, so renaming cannot capture.
    let rest_left = NomBinding::new(left.binders[1..].to_vec(), left.subject.clone());
    let rest_right = NomBinding::new(right.binders[1..].to_vec(), right.subject.clone());
    let fresh = rest_left.support().union(rest_right.support()).new_atom();
    let renamed_left = rest_left.rename(&Renaming::single(left.binders[0], fresh));
    let renamed_right = rest_right.rename(&Renaming::single(right.binders[0], fresh));
    alpha_eq_binding(&renamed_left, &renamed_right)
}

/// Structural equality (not alpha-equivalence): same signature, same trees.
impl PartialEq for NomTerm {
    fn eq(&self, other: &NomTerm) -> bool {
        if !same_signature(&self.sig, &other.sig) {
            return false;
        }
        match (&self.node, &other.node) {
            (NomNode::Atom(a), NomNode::Atom(b)) => a == b,
            (NomNode::Op(f, bs), NomNode::Op(g, cs)) => f == g && bs == cs,
            _ => false,
        }
    }
}

impl Eq for NomTerm {}

/// A total map from atoms to nameful terms, as overrides of the identity.
#[derive(Clone, Debug)]
pub struct NomSubst {
    sig: Arc<Signature>,
    map: BTreeMap<Atom, NomTerm>,
}

impl NomSubst {
    pub fn identity(sig: &Arc<Signature>) -> NomSubst {
        NomSubst { sig: Arc::clone(sig), map: BTreeMap::new() }
    }

    pub fn single(x: Atom, image: NomTerm) -> Result<NomSubst, TermError> {
        let sig = Arc::clone(image.signature());
        NomSubst::identity(&sig).updated(x, image)
    }

    pub fn updated(mut self, x: Atom, image: NomTerm) -> Result<NomSubst, TermError> {
        if !same_signature(image.signature(), &self.sig) {
            return Err(TermError::SignatureMismatch);
        }
        self.map.insert(x, image);
        Ok(self)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn get(&self, x: Atom) -> NomTerm {
        match self.map.get(&x) {
            Some(m) => m.clone(),
            None => NomTerm::atom(&self.sig, x),
        }
    }

    pub fn overrides(&self) -> impl Iterator<Item = (Atom, &NomTerm)> {
        self.map.iter().map(|(x, m)| (*x, m))
    }

    /// Capture-avoiding substitution. At a binding, the binder is
    /// freshened to an atom `y` chosen outside the support of every image
    /// of a name occurring in the body, and the substitution is updated to
    /// send the old binder to `y` before descending.
    pub fn apply(&self, term: &NomTerm) -> Result<NomTerm, TermError> {
        if !same_signature(term.signature(), &self.sig) {
            return Err(TermError::SignatureMismatch);
        }
        Ok(self.apply_term(term))
    }

    fn apply_term(&self, term: &NomTerm) -> NomTerm {
        match term.node() {
            NomNode::Atom(x) => self.get(*x),
            NomNode::Op(op, bindings) => {
                let bindings = bindings.iter().map(|b| self.apply_binding(b)).collect();
                NomTerm::op(&self.sig, op, bindings)
                    .expect("substitution preserves arities and depths")
            }
        }
    }

    fn apply_binding(&self, binding: &NomBinding) -> NomBinding {
        if binding.binders.is_empty() {
            return NomBinding::bare(self.apply_term(&binding.subject));
        }
        let old = binding.binders[0];
        let rest = NomBinding::new(binding.binders[1..].to_vec(), binding.subject.clone());
        let avoid = rest
            .support()
            .leaves()
            .into_iter()
            .fold(FsetAtom::empty(), |s, z| s.union(self.get(z).support()));
        let fresh = avoid.new_atom();
        debug_assert!(rest
            .support()
            .leaves()
            .iter()
            .all(|z| !self.get(*z).support().member(fresh)));
        let updated = self
            .clone()
            .updated(old, NomTerm::atom(&self.sig, fresh))
            .expect("image shares the signature");
        let inner = updated.apply_binding(&rest);
        let mut binders = Vec::with_capacity(binding.binders.len());
        binders.push(fresh);
        binders.extend_from_slice(&inner.binders);
        NomBinding::new(binders, inner.subject)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig() -> Arc<Signature> {
        Signature::lambda()
    }

    fn at(s: &Arc<Signature>, v: u64) -> NomTerm {
        NomTerm::atom(s, Atom::new(v))
    }

    fn ap(s: &Arc<Signature>, f: NomTerm, a: NomTerm) -> NomTerm {
        NomTerm::op(s, "ap", vec![NomBinding::bare(f), NomBinding::bare(a)]).unwrap()
    }

    fn lm(s: &Arc<Signature>, x: u64, body: NomTerm) -> NomTerm {
        NomTerm::op(s, "lm", vec![NomBinding::new(vec![Atom::new(x)], body)]).unwrap()
    }

    #[test]
    fn support_includes_binder_positions() {
        let s = sig();
        assert!(at(&s, 3).support().set_eq(&FsetAtom::singleton(Atom::new(3))));
        let id = lm(&s, 0, at(&s, 0));
        assert!(id.support().set_eq(&FsetAtom::singleton(Atom::new(0))));
        let konst = lm(&s, 0, at(&s, 1));
        let expected = FsetAtom::singleton(Atom::new(0)).union(FsetAtom::singleton(Atom::new(1)));
        assert!(konst.support().set_eq(&expected));
    }

    #[test]
    fn rename_hits_both_positions() {
        let s = sig();
        let id = lm(&s, 0, at(&s, 0));
        assert_eq!(id.rename(&Renaming::identity()), id);
        let rho = Renaming::single(Atom::new(0), Atom::new(1));
        assert_eq!(id.rename(&rho), lm(&s, 1, at(&s, 1)));
        let t = ap(&s, at(&s, 0), at(&s, 2));
        assert_eq!(t.rename(&rho), ap(&s, at(&s, 1), at(&s, 2)));
    }

    #[test]
    fn size_ignores_binders_and_survives_renaming() {
        let s = sig();
        assert_eq!(at(&s, 0).size(), 0);
        assert_eq!(lm(&s, 0, at(&s, 0)).size(), 1);
        let t = lm(&s, 0, ap(&s, at(&s, 0), at(&s, 1)));
        let rho = Renaming::single(Atom::new(0), Atom::new(5));
        assert_eq!(t.rename(&rho).size(), t.size());
    }

    #[test]
    fn alpha_eq_examples() {
        let s = sig();
        let id_x = lm(&s, 0, at(&s, 0));
        let id_y = lm(&s, 1, at(&s, 1));
        assert!(id_x.alpha_eq(&id_y));
        let const_z = lm(&s, 0, at(&s, 2));
        assert!(!id_x.alpha_eq(&const_z));
        let t = lm(&s, 0, ap(&s, at(&s, 0), at(&s, 3)));
        assert!(t.alpha_eq(&t));
    }

    #[test]
    fn alpha_eq_handles_shadowing() {
        let s = sig();
        // lm x. lm x. x  ~  lm y. lm z. z
        let left = lm(&s, 0, lm(&s, 0, at(&s, 0)));
        let right = lm(&s, 1, lm(&s, 2, at(&s, 2)));
        assert!(left.alpha_eq(&right));
        // but not  lm y. lm z. y
        let wrong = lm(&s, 1, lm(&s, 2, at(&s, 1)));
        assert!(!left.alpha_eq(&wrong));
    }

    #[test]
    fn subst_identity_up_to_alpha() {
        let s = sig();
        let t = lm(&s, 0, ap(&s, at(&s, 0), at(&s, 1)));
        let result = NomSubst::identity(&s).apply(&t).unwrap();
        assert!(result.alpha_eq(&t));
        let same = NomSubst::single(Atom::new(1), at(&s, 1)).unwrap().apply(&t).unwrap();
        assert!(same.alpha_eq(&t));
    }

    #[test]
    fn subst_avoids_capture() {
        let s = sig();
        // (0 := @1) applied to lm 1. (0 1): binder must move away from 1.
        let t = lm(&s, 1, ap(&s, at(&s, 0), at(&s, 1)));
        let subst = NomSubst::single(Atom::new(0), at(&s, 1)).unwrap();
        let result = subst.apply(&t).unwrap();
        let expected = lm(&s, 2, ap(&s, at(&s, 1), at(&s, 2)));
        assert_eq!(result, expected);
    }
}
