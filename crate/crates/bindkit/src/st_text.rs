//! Surface syntax for System T.
//!
//! Types: `Nat`, `A -> B` (right associative), parentheses. Terms:
//! `\x:A. t`, application by juxtaposition (left associative), `zero`,
//! `succ t`, `natrec(c0; cplus; a)`. Contexts: `x:A, y:B`. Terms parse into
//! nameful form, so binders are ordinary names; `Nat`, `zero`, `succ` and
//! `natrec` are reserved words.
//!
//! Printing produces the same surface syntax from a locally closed term,
//! opening each lambda at a fresh atom.

use std::sync::Arc;

use bindkit_core::systemt::{type_term, Context, SimpleType};
use bindkit_core::{LnNode, LnTerm, NomBinding, NomTerm, Signature};

use crate::names::NameTable;
use crate::scan::{ParseError, Spanned, Tok, Tokens};

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    let mut toks = Tokens::new(src)?;
    let ty = parse_type_tokens(&mut toks)?;
    toks.expect_end()?;
    Ok(ty)
}

fn parse_type_tokens(toks: &mut Tokens) -> Result<SimpleType, ParseError> {
    let left = parse_atomic_type(toks)?;
    if matches!(toks.peek(), Some(Spanned { tok: Tok::Arrow, .. })) {
        toks.next();
        let right = parse_type_tokens(toks)?;
        Ok(SimpleType::arrow(left, right))
    } else {
        Ok(left)
    }
}

fn parse_atomic_type(toks: &mut Tokens) -> Result<SimpleType, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::Word(w), line, column }) => {
            if w == "Nat" {
                Ok(SimpleType::Nat)
            } else {
                Err(ParseError::new(line, column, format!("expected a type, found `{w}`")))
            }
        }
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let ty = parse_type_tokens(toks)?;
            toks.expect(&Tok::RParen)?;
            Ok(ty)
        }
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected a type, found `{}`", t.tok),
        )),
        None => Err(toks.error("expected a type")),
    }
}

/// Parse a context like `x:Nat, f:Nat -> Nat`; the empty string is the
/// empty context.
pub fn parse_context(src: &str, table: &mut NameTable) -> Result<Context, ParseError> {
    let mut toks = Tokens::new(src)?;
    let mut ctx = Context::new();
    if toks.is_empty() {
        return Ok(ctx);
    }
    loop {
        let atom = match toks.next() {
            Some(Spanned { tok: Tok::Word(w), .. }) => table.resolve(&w),
            Some(t) => {
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("expected a variable name, found `{}`", t.tok),
                ))
            }
            None => return Err(toks.error("expected a variable name")),
        };
        toks.expect(&Tok::Colon)?;
        let ty = parse_type_tokens(&mut toks)?;
        ctx = ctx
            .bind(atom, ty)
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
        match toks.next() {
            Some(Spanned { tok: Tok::Comma, .. }) => continue,
            Some(t) => {
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("expected `,` between context entries, found `{}`", t.tok),
                ))
            }
            None => break,
        }
    }
    Ok(ctx)
}

fn type_nom(sig: &Arc<Signature>, ty: &SimpleType) -> NomTerm {
    match ty {
        SimpleType::Nat => NomTerm::op(sig, "Nat", Vec::new()).expect("constant"),
        SimpleType::Arrow(dom, cod) => NomTerm::op(
            sig,
            "Arr",
            vec![
                NomBinding::bare(type_nom(sig, dom)),
                NomBinding::bare(type_nom(sig, cod)),
            ],
        )
        .expect("type encodings carry no binders"),
    }
}

/// Parse a surface term into nameful form over the System T signature.
pub fn parse_st_term(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    let mut toks = Tokens::new(src)?;
    let term = parse_term_tokens(&mut toks, sig, table)?;
    toks.expect_end()?;
    Ok(term)
}

fn parse_term_tokens(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    if matches!(toks.peek(), Some(Spanned { tok: Tok::Backslash, .. })) {
        toks.next();
        let binder = match toks.next() {
            Some(Spanned { tok: Tok::Word(w), .. }) => table.resolve(&w),
            Some(t) => {
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("expected a binder name after `\\`, found `{}`", t.tok),
                ))
            }
            None => return Err(toks.error("expected a binder name after `\\`")),
        };
        toks.expect(&Tok::Colon)?;
        let dom = parse_type_tokens(toks)?;
        toks.expect(&Tok::Dot)?;
        let body = parse_term_tokens(toks, sig, table)?;
        return NomTerm::op(
            sig,
            "lam",
            vec![
                NomBinding::bare(type_nom(sig, &dom)),
                NomBinding::new(vec![binder], body),
            ],
        )
        .map_err(|e| ParseError::new(1, 1, e.to_string()));
    }
    // Application: one or more atomic terms.
    let mut term = parse_atomic_term(toks, sig, table)?;
    while starts_atomic_term(toks) {
        let arg = parse_atomic_term(toks, sig, table)?;
        term = NomTerm::op(sig, "ap", vec![NomBinding::bare(term), NomBinding::bare(arg)])
            .expect("applications carry no binders");
    }
    Ok(term)
}

fn starts_atomic_term(toks: &Tokens) -> bool {
    matches!(
        toks.peek(),
        Some(Spanned { tok: Tok::Word(_), .. }) | Some(Spanned { tok: Tok::LParen, .. })
    )
}

fn parse_atomic_term(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::Word(w), line, column }) => match w.as_str() {
            "zero" => Ok(NomTerm::op(sig, "zero", Vec::new()).expect("constant")),
            "succ" => {
                let arg = parse_atomic_term(toks, sig, table)?;
                Ok(NomTerm::op(sig, "succ", vec![NomBinding::bare(arg)])
                    .expect("succ carries no binders"))
            }
            "natrec" => {
                toks.expect(&Tok::LParen)?;
                let base = parse_term_tokens(toks, sig, table)?;
                toks.expect(&Tok::Semi)?;
                let step = parse_term_tokens(toks, sig, table)?;
                toks.expect(&Tok::Semi)?;
                let scrutinee = parse_term_tokens(toks, sig, table)?;
                toks.expect(&Tok::RParen)?;
                Ok(NomTerm::op(
                    sig,
                    "natrec",
                    vec![
                        NomBinding::bare(base),
                        NomBinding::bare(step),
                        NomBinding::bare(scrutinee),
                    ],
                )
                .expect("natrec carries no binders"))
            }
            "Nat" => Err(ParseError::new(
                line,
                column,
                "`Nat` is a type and cannot appear in a term",
            )),
            _ => Ok(NomTerm::atom(sig, table.resolve(&w))),
        },
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let term = parse_term_tokens(toks, sig, table)?;
            toks.expect(&Tok::RParen)?;
            Ok(term)
        }
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected a term, found `{}`", t.tok),
        )),
        None => Err(toks.error("expected a term")),
    }
}

pub fn print_type(ty: &SimpleType) -> String {
    format!("{ty}")
}

/// Print a locally closed System T term in surface syntax. Lambda bodies
/// are opened at `new(support)`, so binder names are deterministic.
pub fn print_st(t: &LnTerm, table: &NameTable) -> String {
    let mut out = String::new();
    print_term(t, table, &mut out);
    out
}

fn print_term(t: &LnTerm, table: &NameTable, out: &mut String) {
    match t.node() {
        LnNode::Op(op, args) if op == "lam" => {
            let dom = bindkit_core::systemt::as_type(&args[0])
                .map(|ty| format!("{ty}"))
                .unwrap_or_else(|_| "?".to_string());
            let body = &args[1];
            let fresh = body.support().new_atom();
            let opened = body
                .concrete(&LnTerm::atom(t.signature(), 0, fresh))
                .expect("lambda bodies have scope 1");
            out.push('\\');
            out.push_str(&table.display(fresh));
            out.push(':');
            out.push_str(&dom);
            out.push_str(". ");
            print_term(&opened, table, out);
        }
        _ => print_app(t, table, out),
    }
}

fn print_app(t: &LnTerm, table: &NameTable, out: &mut String) {
    match t.node() {
        LnNode::Op(op, args) if op == "ap" => {
            print_app(&args[0], table, out);
            out.push(' ');
            print_atomic(&args[1], table, out);
        }
        _ => print_atomic(t, table, out),
    }
}

fn print_atomic(t: &LnTerm, table: &NameTable, out: &mut String) {
    match t.node() {
        LnNode::Atom(a) => out.push_str(&table.display(*a)),
        LnNode::Index(i) => {
            // Indices cannot appear in printable closed terms, but keep the
            // printer total.
            out.push('#');
            out.push_str(&i.value().to_string());
        }
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("zero", []) => out.push_str("zero"),
            ("succ", [n]) => {
                out.push_str("succ ");
                let bare = matches!(n.node(), LnNode::Atom(_))
                    || matches!(n.node(), LnNode::Op(o, a) if o == "zero" && a.is_empty());
                if bare {
                    print_atomic(n, table, out);
                } else {
                    out.push('(');
                    print_term(n, table, out);
                    out.push(')');
                }
            }
            ("natrec", [base, step, scrutinee]) => {
                out.push_str("natrec(");
                print_term(base, table, out);
                out.push_str("; ");
                print_term(step, table, out);
                out.push_str("; ");
                print_term(scrutinee, table, out);
                out.push(')');
            }
            ("Nat", _) | ("Arr", _) => {
                // A type in term position; print its type syntax in parens.
                match bindkit_core::systemt::as_type(t) {
                    Ok(ty) => out.push_str(&format!("({ty})")),
                    Err(_) => out.push_str("(?)"),
                }
            }
            _ => {
                out.push('(');
                print_term(t, table, out);
                out.push(')');
            }
        },
    }
}

/// Encode the parsed annotation type of a lambda as a term, for reuse in
/// tests and the CLI.
pub fn type_to_ln(sig: &Arc<Signature>, ty: &SimpleType) -> LnTerm {
    type_term(sig, ty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bindkit_core::adequacy::translate;
    use bindkit_core::systemt::{build, infer, normalize};

    #[test]
    fn types_parse_right_associatively() {
        assert_eq!(parse_type("Nat").unwrap(), SimpleType::Nat);
        let t = parse_type("Nat -> Nat -> Nat").unwrap();
        assert_eq!(
            t,
            SimpleType::arrow(
                SimpleType::Nat,
                SimpleType::arrow(SimpleType::Nat, SimpleType::Nat)
            )
        );
        let u = parse_type("(Nat -> Nat) -> Nat").unwrap();
        assert_eq!(
            u,
            SimpleType::arrow(
                SimpleType::arrow(SimpleType::Nat, SimpleType::Nat),
                SimpleType::Nat
            )
        );
        assert_eq!(print_type(&u), "(Nat -> Nat) -> Nat");
    }

    #[test]
    fn contexts_parse() {
        let mut table = NameTable::new();
        let ctx = parse_context("x:Nat, f:Nat -> Nat", &mut table).unwrap();
        assert_eq!(ctx.entries().len(), 2);
        assert_eq!(parse_context("", &mut table).unwrap().entries().len(), 0);
        assert!(parse_context("x:Nat, x:Nat", &mut table).is_err());
    }

    #[test]
    fn terms_parse_and_typecheck() {
        let sig = Signature::system_t();
        let mut table = NameTable::new();
        let m = parse_st_term("\\x:Nat. x", &sig, &mut table).unwrap();
        let t = translate(&m);
        let ty = infer(&Context::new(), &t).unwrap();
        assert_eq!(print_type(&ty), "Nat -> Nat");

        let m = parse_st_term(
            "natrec(zero; \\n:Nat.\\r:Nat. succ r; succ (succ zero))",
            &sig,
            &mut table,
        )
        .unwrap();
        let t = translate(&m);
        let nf = normalize(&Context::new(), &t).unwrap();
        assert_eq!(nf, build::church(&sig, 2));
    }

    #[test]
    fn application_is_left_associative() {
        let sig = Signature::system_t();
        let mut table = NameTable::new();
        let m = parse_st_term("f a b", &sig, &mut table).unwrap();
        let direct = parse_st_term("(f a) b", &sig, &mut table).unwrap();
        assert_eq!(m, direct);
    }

    #[test]
    fn printing_matches_surface_syntax() {
        let sig = Signature::system_t();
        let table = NameTable::new();
        assert_eq!(print_st(&build::church(&sig, 2), &table), "succ (succ zero)");
        let id = build::lam(
            &sig,
            bindkit_core::Atom::new(0),
            &SimpleType::Nat,
            build::var(&sig, bindkit_core::Atom::new(0)),
        );
        assert_eq!(print_st(&id, &table), "\\0:Nat. 0");
        let rec = build::natrec(
            &sig,
            build::zero(&sig),
            id.clone(),
            build::zero(&sig),
        );
        assert_eq!(print_st(&rec, &table), "natrec(zero; \\0:Nat. 0; zero)");
    }

    #[test]
    fn printed_terms_reparse() {
        let sig = Signature::system_t();
        let mut table = NameTable::new();
        let src = "\\f:Nat -> Nat. \\x:Nat. f (f (succ x))";
        let m = parse_st_term(src, &sig, &mut table).unwrap();
        let t = translate(&m);
        let printed = print_st(&t, &table);
        let m2 = parse_st_term(&printed, &sig, &mut table).unwrap();
        assert_eq!(translate(&m2), t);
    }
}
