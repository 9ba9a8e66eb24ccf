//! Generic syntax with binders in the well-scoped locally nameless style.
//!
//! The crate is parameterized by a binding signature: a set of operators,
//! each assigned a list of binder depths, one per argument position. On top
//! of the scoped term representation it provides the usual operations
//! (substitution, renaming, opening/concretion, closing/abstraction), a
//! nameful frontend with capture-avoiding substitution and a decision
//! procedure for alpha-equivalence, the translation between the two
//! representations, and three worked language instances: the untyped
//! lambda-calculus, a core pi-calculus with a process well-formedness
//! checker, and a System T normalizer based on normalization by evaluation.
//!
//! The crate is `no_std` (it only needs `alloc`); parsing, printing and the
//! command-line frontend live in the companion `bindkit` crate.
//!
//! ```
//! use bindkit_core::adequacy::translate;
//! use bindkit_core::nameful::{NomBinding, NomTerm};
//! use bindkit_core::{Atom, LnNode, Signature};
//!
//! // lm x. x over the lambda signature becomes a closed term with one
//! // bound index and empty support.
//! let sig = Signature::lambda();
//! let x = Atom::new(0);
//! let body = NomTerm::atom(&sig, x);
//! let id = NomTerm::op(&sig, "lm", vec![NomBinding::new(vec![x], body)]).unwrap();
//! let term = translate(&id);
//! assert_eq!(term.scope(), 0);
//! assert!(term.support().is_empty_set());
//! assert!(matches!(term.node(), LnNode::Op(op, _) if op == "lm"));
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adequacy;
pub mod atom;
pub mod calculi;
pub mod lnops;
pub mod lnterm;
pub mod nameful;
pub mod signature;
pub mod systemt;

pub use atom::{Atom, FsetAtom};
pub use lnterm::{LnNode, LnTerm, ScopedIndex, TermError};
pub use nameful::{NomBinding, NomNode, NomTerm};
pub use signature::{OperatorDecl, Signature};
