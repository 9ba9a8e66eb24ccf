//! Binding signatures.
//!
//! A signature lists operators together with their arities: the arity of an
//! operator is a list of naturals, one per argument position, giving the
//! number of names bound in that argument. Signatures are unsorted; language
//! specific well-formedness (such as the pi-calculus process judgement or
//! System T typing) is layered on separately.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// One operator with its binder depths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorDecl {
    name: String,
    arity: Vec<usize>,
}

impl OperatorDecl {
    pub fn new(name: &str, arity: &[usize]) -> OperatorDecl {
        OperatorDecl {
            name: name.to_string(),
            arity: arity.to_vec(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Binder depth per argument position; the length is the number of
    /// arguments the operator takes.
    pub fn arity(&self) -> &[usize] {
        &self.arity
    }
}

/// A named set of operators with unique names.
#[derive(Debug, PartialEq, Eq)]
pub struct Signature {
    name: String,
    operators: Vec<OperatorDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    DuplicateOperator(String),
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::DuplicateOperator(op) => {
                write!(f, "duplicate operator `{op}` in signature")
            }
        }
    }
}

impl core::error::Error for SignatureError {}

impl Signature {
    pub fn new(name: &str, operators: Vec<OperatorDecl>) -> Result<Signature, SignatureError> {
        for (i, op) in operators.iter().enumerate() {
            if operators[..i].iter().any(|o| o.name == op.name) {
                return Err(SignatureError::DuplicateOperator(op.name.clone()));
            }
        }
        Ok(Signature {
            name: name.to_string(),
            operators,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn operators(&self) -> &[OperatorDecl] {
        &self.operators
    }

    pub fn lookup(&self, op_name: &str) -> Option<&OperatorDecl> {
        self.operators.iter().find(|o| o.name == op_name)
    }

    /// The untyped lambda-calculus: application and a unary binder.
    pub fn lambda() -> Arc<Signature> {
        Arc::new(
            Signature::new(
                "lambda",
                alloc::vec![
                    OperatorDecl::new("ap", &[0, 0]),
                    OperatorDecl::new("lm", &[1]),
                ],
            )
            .expect("builtin signature"),
        )
    }

    /// A core pi-calculus: input, output, parallel composition, restriction,
    /// replication and the terminated process.
    pub fn pi() -> Arc<Signature> {
        Arc::new(
            Signature::new(
                "pi",
                alloc::vec![
                    OperatorDecl::new("in", &[0, 1]),
                    OperatorDecl::new("out", &[0, 0, 0]),
                    OperatorDecl::new("par", &[0, 0]),
                    OperatorDecl::new("nu", &[1]),
                    OperatorDecl::new("repl", &[0]),
                    OperatorDecl::new("null", &[]),
                ],
            )
            .expect("builtin signature"),
        )
    }

    /// Godel's System T with types encoded as terms: `Nat` and `Arr` build
    /// types, `lam` carries its domain annotation, and `natrec` takes the
    /// base case, the step function and the scrutinee as plain terms.
    pub fn system_t() -> Arc<Signature> {
        Arc::new(
            Signature::new(
                "systemt",
                alloc::vec![
                    OperatorDecl::new("Nat", &[]),
                    OperatorDecl::new("Arr", &[0, 0]),
                    OperatorDecl::new("lam", &[0, 1]),
                    OperatorDecl::new("ap", &[0, 0]),
                    OperatorDecl::new("zero", &[]),
                    OperatorDecl::new("succ", &[0]),
                    OperatorDecl::new("natrec", &[0, 0, 0]),
                ],
            )
            .expect("builtin signature"),
        )
    }

    /// Look up a built-in signature by name.
    pub fn builtin(name: &str) -> Option<Arc<Signature>> {
        match name {
            "lambda" => Some(Signature::lambda()),
            "pi" => Some(Signature::pi()),
            "systemt" => Some(Signature::system_t()),
            _ => None,
        }
    }
}

/// Signature equality with a pointer fast path, for the per-node checks in
/// term constructors. Separately built copies of the same signature compare
/// equal.
pub(crate) fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
