//! The canonical text forms for locally nameless and nameful terms, and the
//! substitution map format.
//!
//! Locally nameless: `#k` for an index, `@name` for an atom, `(op a1 .. ak)`
//! for an operator, where an argument of binder depth `m > 0` is written
//! `(^m T)` and depth-0 arguments are bare. The parser checks every `^m`
//! against the declared arity and records the term's scope; the whole term
//! is placed at the smallest scope that makes its dangling indices legal.
//!
//! Nameful: `@name` for an atom, `(op B1 .. Bk)` where a binding of depth
//! `m > 0` is written `[x1 .. xm] T` and depth-0 bindings are bare.
//!
//! Substitution maps: `x := TERM; y := TERM;` with locally closed terms.
//!
//! Printing inverts parsing token for token, so `parse . print` is the
//! identity on canonical output.

use std::sync::Arc;

use bindkit_core::lnops::Subst;
use bindkit_core::nameful::NomSubst;
use bindkit_core::{LnNode, LnTerm, NomBinding, NomNode, NomTerm, ScopedIndex, Signature};

use crate::names::NameTable;
use crate::scan::{ParseError, Spanned, Tok, Tokens};

// ---------------------------------------------------------------------
// Locally nameless terms
// ---------------------------------------------------------------------

enum RawLn {
    Index { value: usize, line: usize, column: usize },
    Atom { name: String },
    Op { name: String, line: usize, column: usize, args: Vec<(Option<usize>, RawLn)> },
}

fn parse_raw_ln(toks: &mut Tokens) -> Result<RawLn, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::Index(value), line, column }) => {
            Ok(RawLn::Index { value, line, column })
        }
        Some(Spanned { tok: Tok::AtomRef(name), .. }) => Ok(RawLn::Atom { name }),
        Some(Spanned { tok: Tok::LParen, .. }) => parse_ln_op_body(toks),
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected a term, found `{}`", t.tok),
        )),
        None => Err(toks.error("expected a term")),
    }
}

/// The rest of `(op ARG*)` once the `(` has been consumed.
fn parse_ln_op_body(toks: &mut Tokens) -> Result<RawLn, ParseError> {
    let (name, line, column) = match toks.next() {
        Some(Spanned { tok: Tok::Word(w), line, column }) => (w, line, column),
        Some(t) => {
            return Err(ParseError::new(
                t.line,
                t.column,
                format!("expected an operator name, found `{}`", t.tok),
            ))
        }
        None => return Err(toks.error("expected an operator name")),
    };
    let mut args = Vec::new();
    loop {
        match toks.peek() {
            Some(Spanned { tok: Tok::RParen, .. }) => {
                toks.next();
                break;
            }
            Some(_) => args.push(parse_ln_arg(toks)?),
            None => return Err(toks.error("unclosed `(`")),
        }
    }
    Ok(RawLn::Op { name, line, column, args })
}

/// One operator argument: either a bare term or `(^m T)`.
fn parse_ln_arg(toks: &mut Tokens) -> Result<(Option<usize>, RawLn), ParseError> {
    if matches!(toks.peek(), Some(Spanned { tok: Tok::LParen, .. })) {
        toks.next();
        if let Some(Spanned { tok: Tok::BinderMark(depth), .. }) = toks.peek().cloned() {
            toks.next();
            let inner = parse_raw_ln(toks)?;
            toks.expect(&Tok::RParen)?;
            Ok((Some(depth), inner))
        } else {
            Ok((None, parse_ln_op_body(toks)?))
        }
    } else {
        Ok((None, parse_raw_ln(toks)?))
    }
}

/// The smallest top-level scope making every dangling index legal, checking
/// operators, argument counts and binder marks along the way.
fn minimal_scope(raw: &RawLn, sig: &Signature, depth_above: usize) -> Result<usize, ParseError> {
    match raw {
        RawLn::Index { value, .. } => Ok((value + 1).saturating_sub(depth_above)),
        RawLn::Atom { .. } => Ok(0),
        RawLn::Op { name, line, column, args } => {
            let decl = sig.lookup(name).ok_or_else(|| {
                ParseError::new(
                    *line,
                    *column,
                    format!("unknown operator `{name}` in signature `{}`", sig.name()),
                )
            })?;
            if decl.arity().len() != args.len() {
                return Err(ParseError::new(
                    *line,
                    *column,
                    format!(
                        "operator `{name}` takes {} arguments, found {}",
                        decl.arity().len(),
                        args.len()
                    ),
                ));
            }
            let mut needed = 0usize;
            for (position, ((mark, arg), declared)) in args.iter().zip(decl.arity()).enumerate() {
                match (mark, declared) {
                    (None, 0) => {}
                    (Some(m), d) if m == d => {}
                    (Some(m), d) => {
                        return Err(ParseError::new(
                            *line,
                            *column,
                            format!(
                                "argument {position} of `{name}` binds {d} names, marked `^{m}`"
                            ),
                        ))
                    }
                    (None, d) => {
                        return Err(ParseError::new(
                            *line,
                            *column,
                            format!(
                                "argument {position} of `{name}` binds {d} names and must be written `(^{d} ...)`"
                            ),
                        ))
                    }
                }
                needed = needed.max(minimal_scope(arg, sig, depth_above + declared)?);
            }
            Ok(needed)
        }
    }
}

fn build_ln(
    raw: &RawLn,
    sig: &Arc<Signature>,
    table: &mut NameTable,
    scope: usize,
) -> Result<LnTerm, ParseError> {
    match raw {
        RawLn::Index { value, line, column } => {
            let i = ScopedIndex::new(*value, scope).map_err(|_| {
                ParseError::new(*line, *column, format!("index {value} escapes scope {scope}"))
            })?;
            Ok(LnTerm::index(sig, i))
        }
        RawLn::Atom { name } => Ok(LnTerm::atom(sig, scope, table.resolve(name))),
        RawLn::Op { name, line, column, args } => {
            let decl = sig.lookup(name).expect("checked by minimal_scope");
            let arity = decl.arity().to_vec();
            let mut built = Vec::with_capacity(args.len());
            for ((_, arg), declared) in args.iter().zip(arity) {
                built.push(build_ln(arg, sig, table, declared + scope)?);
            }
            LnTerm::op(sig, scope, name, built)
                .map_err(|e| ParseError::new(*line, *column, e.to_string()))
        }
    }
}

fn parse_ln_tokens(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
    at_least_scope: usize,
) -> Result<LnTerm, ParseError> {
    let raw = parse_raw_ln(toks)?;
    let scope = minimal_scope(&raw, sig, 0)?.max(at_least_scope);
    build_ln(&raw, sig, table, scope)
}

/// Parse a locally nameless term at its minimal scope (at least
/// `at_least_scope`).
pub fn parse_ln_at(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
    at_least_scope: usize,
) -> Result<LnTerm, ParseError> {
    let mut toks = Tokens::new(src)?;
    let term = parse_ln_tokens(&mut toks, sig, table, at_least_scope)?;
    toks.expect_end()?;
    Ok(term)
}

pub fn parse_ln(src: &str, sig: &Arc<Signature>, table: &mut NameTable) -> Result<LnTerm, ParseError> {
    parse_ln_at(src, sig, table, 0)
}

pub fn print_ln(t: &LnTerm, table: &NameTable) -> String {
    let mut out = String::new();
    print_ln_into(t, table, &mut out);
    out
}

fn print_ln_into(t: &LnTerm, table: &NameTable, out: &mut String) {
    match t.node() {
        LnNode::Index(i) => {
            out.push('#');
            out.push_str(&i.value().to_string());
        }
        LnNode::Atom(a) => {
            out.push('@');
            out.push_str(&table.display(*a));
        }
        LnNode::Op(name, args) => {
            let decl = t.signature().lookup(name).expect("validated at construction");
            out.push('(');
            out.push_str(name);
            for (arg, depth) in args.iter().zip(decl.arity()) {
                out.push(' ');
                if *depth > 0 {
                    out.push_str(&format!("(^{depth} "));
                    print_ln_into(arg, table, out);
                    out.push(')');
                } else {
                    print_ln_into(arg, table, out);
                }
            }
            out.push(')');
        }
    }
}

// ---------------------------------------------------------------------
// Nameful terms
// ---------------------------------------------------------------------

fn parse_nom_tokens(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::AtomRef(name), .. }) => {
            Ok(NomTerm::atom(sig, table.resolve(&name)))
        }
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let (name, line, column) = match toks.next() {
                Some(Spanned { tok: Tok::Word(w), line, column }) => (w, line, column),
                Some(t) => {
                    return Err(ParseError::new(
                        t.line,
                        t.column,
                        format!("expected an operator name, found `{}`", t.tok),
                    ))
                }
                None => return Err(toks.error("expected an operator name")),
            };
            let decl = sig.lookup(&name).ok_or_else(|| {
                ParseError::new(
                    line,
                    column,
                    format!("unknown operator `{name}` in signature `{}`", sig.name()),
                )
            })?;
            let arity = decl.arity().to_vec();
            let mut bindings = Vec::with_capacity(arity.len());
            for (position, declared) in arity.iter().enumerate() {
                if *declared == 0 {
                    if matches!(toks.peek(), Some(Spanned { tok: Tok::LBracket, .. })) {
                        return Err(toks.error(format!(
                            "argument {position} of `{name}` binds no names; drop the `[...]`"
                        )));
                    }
                    let subject = parse_nom_tokens(toks, sig, table)?;
                    bindings.push(NomBinding::bare(subject));
                } else {
                    toks.expect(&Tok::LBracket)?;
                    let mut binders = Vec::with_capacity(*declared);
                    loop {
                        match toks.next() {
                            Some(Spanned { tok: Tok::RBracket, .. }) => break,
                            Some(Spanned { tok: Tok::Word(w), .. }) => {
                                binders.push(table.resolve(&w));
                            }
                            Some(t) => {
                                return Err(ParseError::new(
                                    t.line,
                                    t.column,
                                    format!("expected a binder name or `]`, found `{}`", t.tok),
                                ))
                            }
                            None => return Err(toks.error("unclosed `[`")),
                        }
                    }
                    if binders.len() != *declared {
                        return Err(toks.error(format!(
                            "argument {position} of `{name}` binds {declared} names, found {}",
                            binders.len()
                        )));
                    }
                    let subject = parse_nom_tokens(toks, sig, table)?;
                    bindings.push(NomBinding::new(binders, subject));
                }
            }
            toks.expect(&Tok::RParen)?;
            NomTerm::op(sig, &name, bindings)
                .map_err(|e| ParseError::new(line, column, e.to_string()))
        }
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected a term, found `{}`", t.tok),
        )),
        None => Err(toks.error("expected a term")),
    }
}

pub fn parse_nom(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    let mut toks = Tokens::new(src)?;
    let term = parse_nom_tokens(&mut toks, sig, table)?;
    toks.expect_end()?;
    Ok(term)
}

pub fn print_nom(m: &NomTerm, table: &NameTable) -> String {
    let mut out = String::new();
    print_nom_into(m, table, &mut out);
    out
}

fn print_nom_into(m: &NomTerm, table: &NameTable, out: &mut String) {
    match m.node() {
        NomNode::Atom(a) => {
            out.push('@');
            out.push_str(&table.display(*a));
        }
        NomNode::Op(name, bindings) => {
            out.push('(');
            out.push_str(name);
            for binding in bindings {
                out.push(' ');
                if binding.depth() > 0 {
                    out.push('[');
                    for (i, x) in binding.binders().iter().enumerate() {
                        if i > 0 {
                            out.push(' ');
                        }
                        out.push_str(&table.display(*x));
                    }
                    out.push_str("] ");
                }
                print_nom_into(binding.subject(), table, out);
            }
            out.push(')');
        }
    }
}

// ---------------------------------------------------------------------
// Substitution maps
// ---------------------------------------------------------------------

fn parse_map_entries<T>(
    src: &str,
    table: &mut NameTable,
    mut parse_term: impl FnMut(&mut Tokens, &mut NameTable) -> Result<T, ParseError>,
) -> Result<Vec<(bindkit_core::Atom, T)>, ParseError> {
    let mut toks = Tokens::new(src)?;
    let mut entries = Vec::new();
    while !toks.is_empty() {
        let atom = match toks.next() {
            Some(Spanned { tok: Tok::Word(w), .. }) => table.resolve(&w),
            Some(Spanned { tok: Tok::AtomRef(n), .. }) => table.resolve(&n),
            Some(t) => {
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("expected a name to substitute for, found `{}`", t.tok),
                ))
            }
            None => break,
        };
        toks.expect(&Tok::Assign)?;
        let term = parse_term(&mut toks, table)?;
        toks.expect(&Tok::Semi)?;
        entries.push((atom, term));
    }
    Ok(entries)
}

/// Parse `x := TERM; ...` with locally nameless images (all scope 0).
pub fn parse_ln_subst(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<Subst, ParseError> {
    let entries = parse_map_entries(src, table, |toks, table| {
        let (line, column) = toks.here();
        let term = parse_ln_tokens(toks, sig, table, 0)?;
        if term.scope() != 0 {
            return Err(ParseError::new(
                line,
                column,
                "substitution images must be locally closed (no dangling indices)",
            ));
        }
        Ok(term)
    })?;
    let mut subst = Subst::identity(sig);
    for (atom, term) in entries {
        subst = subst
            .updated(atom, term)
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    }
    Ok(subst)
}

/// Parse `x := TERM; ...` with nameful images.
pub fn parse_nom_subst(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomSubst, ParseError> {
    let entries = parse_map_entries(src, table, |toks, table| parse_nom_tokens(toks, sig, table))?;
    let mut subst = NomSubst::identity(sig);
    for (atom, term) in entries {
        subst = subst
            .updated(atom, term)
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    }
    Ok(subst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bindkit_core::adequacy::translate;

    #[test]
    fn ln_round_trip_on_the_running_example() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let src = "(lm (^1 (lm (^1 (ap #1 (ap #0 @z))))))";
        let t = parse_ln(src, &sig, &mut table).unwrap();
        assert_eq!(t.scope(), 0);
        assert_eq!(print_ln(&t, &table), src);
    }

    #[test]
    fn ln_scope_inference() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let t = parse_ln("#2", &sig, &mut table).unwrap();
        assert_eq!(t.scope(), 3);
        // The binder absorbs one level.
        let u = parse_ln("(lm (^1 #2))", &sig, &mut table).unwrap();
        assert_eq!(u.scope(), 2);
        let closed = parse_ln("(lm (^1 #0))", &sig, &mut table).unwrap();
        assert_eq!(closed.scope(), 0);
    }

    #[test]
    fn ln_parse_errors_carry_positions() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let err = parse_ln("(lm (^2 #0))", &sig, &mut table).unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        let err = parse_ln("(mu)", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("unknown operator"));
        let err = parse_ln("\n  (ap #0)", &sig, &mut table).unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_ln("(lm #0)", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("must be written"));
    }

    #[test]
    fn nom_round_trip_and_translation() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let src = "(lm [x] (lm [y] (ap @x (ap @y @z))))";
        let m = parse_nom(src, &sig, &mut table).unwrap();
        assert_eq!(print_nom(&m, &table), src);
        let mut out_table = NameTable::new();
        out_table.intern("x");
        out_table.intern("y");
        out_table.intern("z");
        assert_eq!(
            print_ln(&translate(&m), &out_table),
            "(lm (^1 (lm (^1 (ap #1 (ap #0 @z))))))"
        );
    }

    #[test]
    fn nom_multi_binder() {
        let sig = Signature::pi();
        let mut table = NameTable::new();
        let src = "(in @a [x] (out @x @b (null)))";
        let m = parse_nom(src, &sig, &mut table).unwrap();
        assert_eq!(print_nom(&m, &table), src);
        let err = parse_nom("(in @a [x y] (null))", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("binds 1 names"));
        let err = parse_nom("(out [x] @a @b (null))", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("binds no names"));
    }

    #[test]
    fn numeric_atoms_bypass_the_table() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let t = parse_ln("(ap @x @3)", &sig, &mut table).unwrap();
        // x interned as 0; @3 names atom 3 directly.
        assert_eq!(print_ln(&t, &table), "(ap @x @3)");
        assert_eq!(table.len(), 1);
    }

    #[test]
    fn subst_map_parses() {
        let sig = Signature::lambda();
        let mut table = NameTable::new();
        let subst = parse_ln_subst("x := (lm (^1 #0)); y := @z;", &sig, &mut table).unwrap();
        assert_eq!(subst.overrides().count(), 2);
        let err = parse_ln_subst("x := #0;", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("locally closed"));
        let err = parse_ln_subst("x = @y;", &sig, &mut table).unwrap_err();
        assert!(err.message.contains("unexpected character"));
        let err = parse_ln_subst("x @y;", &sig, &mut table).unwrap_err();
        assert!(err.message.contains(":="));
    }
}
