//! User-defined signature files: one operator per line as
//! `opname : m1 m2 ... mk` (no numbers for a constant), `#` starts a
//! comment, blank lines ignored.

use std::sync::Arc;

use bindkit_core::{OperatorDecl, Signature};

use crate::scan::ParseError;

pub fn parse_signature(name: &str, src: &str) -> Result<Arc<Signature>, ParseError> {
    let mut decls = Vec::new();
    for (lineno, raw_line) in src.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (op, rest) = match line.split_once(':') {
            Some((op, rest)) => (op.trim(), rest.trim()),
            None => {
                return Err(ParseError::new(
                    lineno + 1,
                    1,
                    format!("expected `opname : m1 m2 ...`, found `{line}`"),
                ))
            }
        };
        if op.is_empty() || !op.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ParseError::new(
                lineno + 1,
                1,
                format!("invalid operator name `{op}`"),
            ));
        }
        let mut arity = Vec::new();
        for field in rest.split_whitespace() {
            let depth: usize = field.parse().map_err(|_| {
                ParseError::new(
                    lineno + 1,
                    1,
                    format!("binder depth `{field}` is not a natural number"),
                )
            })?;
            arity.push(depth);
        }
        decls.push(OperatorDecl::new(op, &arity));
    }
    let sig = Signature::new(name, decls).map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    Ok(Arc::new(sig))
}

pub fn print_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for op in sig.operators() {
        out.push_str(op.name());
        out.push_str(" :");
        for depth in op.arity() {
            out.push_str(&format!(" {depth}"));
        }
        out.push('\n');
    }
    out
}
