//! Scope-indexed locally nameless terms.
//!
//! An `n`-term may mention de Bruijn indices `0..n` for enclosing binders
//! and atoms for free resources. The scope `n` is carried at runtime and
//! every constructor validates it, so a term that exists is well scoped:
//! indices are in bounds and each operator argument sits at the scope its
//! declared binder depth demands. `0`-terms are the locally closed terms.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, FsetAtom};
use crate::signature::{same_signature, Signature};

/// A de Bruijn index `value` known to be below `bound`.
///
/// This is the runtime image of the finite ordinal type: a value of
/// `Fin n` is an index with `bound == n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ScopedIndex {
    value: usize,
    bound: usize,
}

/// Construction and operation failures for scoped indices and terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermError {
    IndexOutOfBounds { value: usize, bound: usize },
    EmbedShrinksBound { bound: usize, target: usize },
    RemoveEqualIndex { value: usize },
    BoundMismatch { left: usize, right: usize },
    UnknownOperator(String),
    WrongArgumentCount { op: String, expected: usize, got: usize },
    ArgumentScopeMismatch { op: String, position: usize, expected: usize, got: usize },
    BindingDepthMismatch { op: String, position: usize, expected: usize, got: usize },
    SignatureMismatch,
    ScopeMismatch { expected: usize, got: usize },
    WeakenShrinksScope { scope: usize, target: usize },
    NotAZeroTerm { scope: usize },
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::IndexOutOfBounds { value, bound } => {
                write!(f, "index {value} is not below its scope {bound}")
            }
            TermError::EmbedShrinksBound { bound, target } => {
                write!(f, "cannot embed an index of scope {bound} into smaller scope {target}")
            }
            TermError::RemoveEqualIndex { value } => {
                write!(f, "cannot remove index {value} from itself")
            }
            TermError::BoundMismatch { left, right } => {
                write!(f, "index scopes differ: {left} vs {right}")
            }
            TermError::UnknownOperator(op) => write!(f, "unknown operator `{op}`"),
            TermError::WrongArgumentCount { op, expected, got } => {
                write!(f, "operator `{op}` takes {expected} arguments, got {got}")
            }
            TermError::ArgumentScopeMismatch { op, position, expected, got } => write!(
                f,
                "argument {position} of `{op}` must have scope {expected}, got {got}"
            ),
            TermError::BindingDepthMismatch { op, position, expected, got } => write!(
                f,
                "argument {position} of `{op}` binds {expected} names, got {got}"
            ),
            TermError::SignatureMismatch => write!(f, "terms are over different signatures"),
            TermError::ScopeMismatch { expected, got } => {
                write!(f, "expected a term of scope {expected}, got scope {got}")
            }
            TermError::WeakenShrinksScope { scope, target } => {
                write!(f, "cannot weaken a term of scope {scope} to smaller scope {target}")
            }
            TermError::NotAZeroTerm { scope } => {
                write!(f, "expected a locally closed term, got scope {scope}")
            }
        }
    }
}

impl core::error::Error for TermError {}

impl ScopedIndex {
    pub fn new(value: usize, bound: usize) -> Result<ScopedIndex, TermError> {
        if value < bound {
            Ok(ScopedIndex { value, bound })
        } else {
            Err(TermError::IndexOutOfBounds { value, bound })
        }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn bound(self) -> usize {
        self.bound
    }

    /// Inject into a larger scope, keeping the numeric value.
    pub fn embed(self, bound: usize) -> Result<ScopedIndex, TermError> {
        if self.bound <= bound {
            Ok(ScopedIndex { value: self.value, bound })
        } else {
            Err(TermError::EmbedShrinksBound { bound: self.bound, target: bound })
        }
    }

    /// Add `m` to both value and bound: the m-fold successor used when an
    /// operation crosses an m-ary binder.
    pub fn shift(self, m: usize) -> ScopedIndex {
        ScopedIndex { value: self.value + m, bound: self.bound + m }
    }

    /// The unique order-preserving bijection from the indices of this bound
    /// minus `self` onto the next smaller scope, applied to `j`.
    pub fn remove(self, j: ScopedIndex) -> Result<ScopedIndex, TermError> {
        if self.bound != j.bound {
            return Err(TermError::BoundMismatch { left: self.bound, right: j.bound });
        }
        if j.value == self.value {
            return Err(TermError::RemoveEqualIndex { value: j.value });
        }
        let value = if j.value < self.value { j.value } else { j.value - 1 };
        Ok(ScopedIndex { value, bound: self.bound - 1 })
    }

    /// The order-preserving injection into this bound that avoids `self`,
    /// applied to `j` (which lives one scope below).
    pub fn insert(self, j: ScopedIndex) -> Result<ScopedIndex, TermError> {
        if j.bound + 1 != self.bound {
            return Err(TermError::BoundMismatch { left: self.bound, right: j.bound });
        }
        let value = if j.value < self.value { j.value } else { j.value + 1 };
        Ok(ScopedIndex { value, bound: self.bound })
    }
}

impl fmt::Display for ScopedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {}", self.value, self.bound)
    }
}

/// The three term shapes.
#[derive(Clone, Debug)]
pub enum LnNode {
    /// A bound occurrence; the index bound equals the term's scope.
    Index(ScopedIndex),
    /// A free occurrence of an atom.
    Atom(Atom),
    /// An operator applied to one argument per arity entry, each argument
    /// living at `binder depth + scope`.
    Op(String, Vec<LnTerm>),
}

/// A well-scoped locally nameless term over a fixed signature.
#[derive(Clone, Debug)]
pub struct LnTerm {
    sig: Arc<Signature>,
    scope: usize,
    node: LnNode,
}

impl LnTerm {
    pub fn index(sig: &Arc<Signature>, i: ScopedIndex) -> LnTerm {
        LnTerm { sig: Arc::clone(sig), scope: i.bound(), node: LnNode::Index(i) }
    }

    pub fn atom(sig: &Arc<Signature>, scope: usize, a: Atom) -> LnTerm {
        LnTerm { sig: Arc::clone(sig), scope, node: LnNode::Atom(a) }
    }

    /// Build an operator node at `scope`, checking the argument count, each
    /// argument's scope against the declared binder depth, and that all
    /// arguments share `sig`.
    pub fn op(
        sig: &Arc<Signature>,
        scope: usize,
        op_name: &str,
        args: Vec<LnTerm>,
    ) -> Result<LnTerm, TermError> {
        let decl = sig
            .lookup(op_name)
            .ok_or_else(|| TermError::UnknownOperator(op_name.to_string()))?;
        if decl.arity().len() != args.len() {
            return Err(TermError::WrongArgumentCount {
                op: op_name.to_string(),
                expected: decl.arity().len(),
                got: args.len(),
            });
        }
        for (position, (arg, depth)) in args.iter().zip(decl.arity()).enumerate() {
            if !same_signature(&arg.sig, sig) {
                return Err(TermError::SignatureMismatch);
            }
            if arg.scope != depth + scope {
                return Err(TermError::ArgumentScopeMismatch {
                    op: op_name.to_string(),
                    position,
                    expected: depth + scope,
                    got: arg.scope,
                });
            }
        }
        Ok(LnTerm { sig: Arc::clone(sig), scope, node: LnNode::Op(op_name.to_string(), args) })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn scope(&self) -> usize {
        self.scope
    }

    pub fn node(&self) -> &LnNode {
        &self.node
    }

    /// Scope weakening: embed every index, leaving the structure intact.
    /// Under an operator, an argument of binder depth `m` is weakened to
    /// `m + n`.
    pub fn weaken(&self, n: usize) -> Result<LnTerm, TermError> {
        if self.scope > n {
            return Err(TermError::WeakenShrinksScope { scope: self.scope, target: n });
        }
        let node = match &self.node {
            LnNode::Index(i) => LnNode::Index(i.embed(n)?),
            LnNode::Atom(a) => LnNode::Atom(*a),
            LnNode::Op(op, args) => {
                let decl = self.sig.lookup(op).expect("validated at construction");
                let args = args
                    .iter()
                    .zip(decl.arity().to_vec())
                    .map(|(arg, depth)| arg.weaken(depth + n))
                    .collect::<Result<Vec<_>, _>>()?;
                LnNode::Op(op.clone(), args)
            }
        };
        Ok(LnTerm { sig: Arc::clone(&self.sig), scope: n, node })
    }

    /// The finite set of atoms occurring in the term.
    pub fn support(&self) -> FsetAtom {
        match &self.node {
            LnNode::Index(_) => FsetAtom::empty(),
            LnNode::Atom(a) => FsetAtom::singleton(*a),
            LnNode::Op(_, args) => args
                .iter()
                .fold(FsetAtom::empty(), |s, arg| s.union(arg.support())),
        }
    }

    /// Whether `x` does not occur in the support of the term.
    pub fn is_fresh(&self, x: Atom) -> bool {
        !self.support().member(x)
    }

    /// Term size: leaves are 0, an operator is one more than the maximum of
    /// its argument sizes (so constants have size 1). Preserved by
    /// weakening, renaming, abstraction and concretion at an atom.
    pub fn size(&self) -> usize {
        match &self.node {
            LnNode::Index(_) | LnNode::Atom(_) => 0,
            LnNode::Op(_, args) => 1 + args.iter().map(LnTerm::size).max().unwrap_or(0),
        }
    }

    pub(crate) fn expect_scope(&self, expected: usize) -> Result<(), TermError> {
        if self.scope == expected {
            Ok(())
        } else {
            Err(TermError::ScopeMismatch { expected, got: self.scope })
        }
    }

    pub(crate) fn expect_zero_term(&self) -> Result<(), TermError> {
        if self.scope == 0 {
            Ok(())
        } else {
            Err(TermError::NotAZeroTerm { scope: self.scope })
        }
    }
}

/// Structural equality: same signature, same scope, identical trees.
impl PartialEq for LnTerm {
    fn eq(&self, other: &LnTerm) -> bool {
        if self.scope != other.scope || !same_signature(&self.sig, &other.sig) {
            return false;
        }
        match (&self.node, &other.node) {
            (LnNode::Index(i), LnNode::Index(j)) => i == j,
            (LnNode::Atom(a), LnNode::Atom(b)) => a == b,
            (LnNode::Op(f, xs), LnNode::Op(g, ys)) => f == g && xs == ys,
            _ => false,
        }
    }
}

impl Eq for LnTerm {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn idx(value: usize, bound: usize) -> ScopedIndex {
        ScopedIndex::new(value, bound).unwrap()
    }

    #[test]
    fn embed_keeps_value() {
        assert_eq!(idx(0, 1).embed(3).unwrap(), idx(0, 3));
        assert_eq!(idx(2, 3).embed(3).unwrap(), idx(2, 3));
        assert_eq!(idx(1, 2).embed(5).unwrap(), idx(1, 5));
        assert!(idx(1, 2).embed(1).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(idx(0, 1).shift(0), idx(0, 1));
        assert_eq!(idx(0, 1).shift(1), idx(1, 2));
        assert_eq!(idx(1, 3).shift(2), idx(3, 5));
    }

    #[test]
    fn remove_examples() {
        assert_eq!(idx(0, 2).remove(idx(1, 2)).unwrap(), idx(0, 1));
        assert_eq!(idx(2, 4).remove(idx(1, 4)).unwrap(), idx(1, 3));
        assert_eq!(idx(2, 4).remove(idx(3, 4)).unwrap(), idx(2, 3));
        assert!(idx(2, 4).remove(idx(2, 4)).is_err());
        assert!(idx(1, 3).remove(idx(1, 4)).is_err());
    }

    #[test]
    fn insert_examples() {
        assert_eq!(idx(2, 4).insert(idx(1, 3)).unwrap(), idx(1, 4));
        assert_eq!(idx(2, 4).insert(idx(2, 3)).unwrap(), idx(3, 4));
        assert!(idx(2, 4).insert(idx(1, 4)).is_err());
    }

    // Oracle for remove: enumerate the indices of Fin(1+n) without i in
    // order and read off j's position.
    #[test]
    fn remove_matches_enumeration_oracle() {
        for bound in 1..=6usize {
            for i in 0..bound {
                let kept: Vec<usize> = (0..bound).filter(|j| *j != i).collect();
                for j in 0..bound {
                    if j == i {
                        continue;
                    }
                    let expected = kept.iter().position(|k| *k == j).unwrap();
                    let got = idx(i, bound).remove(idx(j, bound)).unwrap();
                    assert_eq!(got, idx(expected, bound - 1));
                }
            }
        }
    }

    // Oracle for insert: the order-preserving enumeration of
    // Fin(1+n) minus {i}.
    #[test]
    fn insert_matches_enumeration_oracle() {
        for bound in 1..=6usize {
            for i in 0..bound {
                let kept: Vec<usize> = (0..bound).filter(|j| *j != i).collect();
                for (j, expected) in kept.iter().enumerate() {
                    let got = idx(i, bound).insert(idx(j, bound - 1)).unwrap();
                    assert_eq!(got, idx(*expected, bound));
                }
            }
        }
    }

    #[test]
    fn remove_insert_mutually_inverse() {
        for bound in 1..=6usize {
            for i in 0..bound {
                let pivot = idx(i, bound);
                for j in 0..bound {
                    if j == i {
                        continue;
                    }
                    let down = pivot.remove(idx(j, bound)).unwrap();
                    assert_eq!(pivot.insert(down).unwrap(), idx(j, bound));
                }
                for j in 0..bound - 1 {
                    let up = pivot.insert(idx(j, bound - 1)).unwrap();
                    assert_eq!(pivot.remove(up).unwrap(), idx(j, bound - 1));
                }
            }
        }
    }

    fn lam_sig() -> Arc<Signature> {
        Signature::lambda()
    }

    // lm(lm(ap #1 (ap #0 @z))), the running lambda example.
    pub(crate) fn example_term(sig: &Arc<Signature>, z: Atom) -> LnTerm {
        let inner_ap = LnTerm::op(
            sig,
            2,
            "ap",
            vec![
                LnTerm::index(sig, idx(0, 2)),
                LnTerm::atom(sig, 2, z),
            ],
        )
        .unwrap();
        let outer_ap = LnTerm::op(
            sig,
            2,
            "ap",
            vec![LnTerm::index(sig, idx(1, 2)), inner_ap],
        )
        .unwrap();
        let inner_lm = LnTerm::op(sig, 1, "lm", vec![outer_ap]).unwrap();
        LnTerm::op(sig, 0, "lm", vec![inner_lm]).unwrap()
    }

    #[test]
    fn constructors_reject_ill_scoped_input() {
        let sig = lam_sig();
        assert!(ScopedIndex::new(2, 2).is_err());
        // lm expects its argument one scope up.
        let body = LnTerm::atom(&sig, 0, Atom::new(1));
        assert!(matches!(
            LnTerm::op(&sig, 0, "lm", vec![body]),
            Err(TermError::ArgumentScopeMismatch { .. })
        ));
        // Wrong argument count.
        let x = LnTerm::atom(&sig, 0, Atom::new(1));
        assert!(matches!(
            LnTerm::op(&sig, 0, "ap", vec![x]),
            Err(TermError::WrongArgumentCount { .. })
        ));
        // Unknown operator.
        assert!(matches!(
            LnTerm::op(&sig, 0, "mu", vec![]),
            Err(TermError::UnknownOperator(_))
        ));
        // Cross-signature argument.
        let pi = Signature::pi();
        let null = LnTerm::op(&pi, 0, "null", vec![]).unwrap();
        let other = LnTerm::atom(&sig, 0, Atom::new(0));
        assert!(matches!(
            LnTerm::op(&sig, 0, "ap", vec![null, other]),
            Err(TermError::SignatureMismatch)
        ));
    }

    #[test]
    fn weaken_examples() {
        let sig = lam_sig();
        let z = Atom::new(5);
        let t = LnTerm::atom(&sig, 0, z);
        assert_eq!(t.weaken(2).unwrap(), LnTerm::atom(&sig, 2, z));

        let i = LnTerm::index(&sig, idx(0, 1));
        assert_eq!(i.weaken(3).unwrap(), LnTerm::index(&sig, idx(0, 3)));

        let lm = LnTerm::op(&sig, 0, "lm", vec![LnTerm::index(&sig, idx(0, 1))]).unwrap();
        let weakened = lm.weaken(1).unwrap();
        let expected =
            LnTerm::op(&sig, 1, "lm", vec![LnTerm::index(&sig, idx(0, 2))]).unwrap();
        assert_eq!(weakened, expected);

        assert!(LnTerm::atom(&sig, 2, z).weaken(1).is_err());
    }

    #[test]
    fn support_and_freshness() {
        let sig = lam_sig();
        let z = Atom::new(7);
        assert!(LnTerm::index(&sig, idx(0, 1)).support().is_empty_set());
        let leaf = LnTerm::atom(&sig, 0, z);
        assert!(leaf.support().set_eq(&FsetAtom::singleton(z)));
        let t = example_term(&sig, z);
        assert!(t.support().set_eq(&FsetAtom::singleton(z)));
        assert!(t.is_fresh(Atom::new(9)));
        assert!(!t.is_fresh(z));
        assert!(LnTerm::index(&sig, idx(0, 1)).is_fresh(Atom::new(0)));
        assert!(!leaf.is_fresh(z));
    }

    #[test]
    fn size_examples() {
        let sig = lam_sig();
        assert_eq!(LnTerm::atom(&sig, 0, Atom::new(1)).size(), 0);
        assert_eq!(LnTerm::index(&sig, idx(0, 1)).size(), 0);
        assert_eq!(example_term(&sig, Atom::new(3)).size(), 4);
    }

    #[test]
    fn term_equality() {
        let sig = lam_sig();
        let a = LnTerm::atom(&sig, 0, Atom::new(3));
        let b = LnTerm::atom(&sig, 0, Atom::new(3));
        assert_eq!(a, b);
        assert_ne!(a, LnTerm::atom(&sig, 1, Atom::new(3)));
        let id1 = LnTerm::op(&sig, 0, "lm", vec![LnTerm::index(&sig, idx(0, 1))]).unwrap();
        let id2 = LnTerm::op(&sig, 0, "lm", vec![LnTerm::index(&sig, idx(0, 1))]).unwrap();
        assert_eq!(id1, id2);
    }

    #[test]
    fn presheaf_laws_on_example() {
        let sig = lam_sig();
        let t = example_term(&sig, Atom::new(2));
        assert_eq!(t.weaken(t.scope()).unwrap(), t);
        let once = t.weaken(2).unwrap();
        assert_eq!(once.weaken(4).unwrap(), t.weaken(4).unwrap());
        assert_eq!(t.weaken(2).unwrap().size(), t.size());
    }
}
