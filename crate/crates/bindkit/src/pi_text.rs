//! Surface syntax for pi-calculus processes, mapped onto the generic
//! operators: `in a.[x]P`, `out a b.P`, `P | Q` (left associative, lowest
//! precedence), `nu [x]P`, `!P`, `0`, parentheses. Parses into nameful
//! form; channel positions are names by construction.

use std::sync::Arc;

use bindkit_core::{NomBinding, NomTerm, Signature};

use crate::names::NameTable;
use crate::scan::{ParseError, Spanned, Tok, Tokens};

pub fn parse_pi_proc(
    src: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    let mut toks = Tokens::new(src)?;
    let term = parse_par(&mut toks, sig, table)?;
    toks.expect_end()?;
    Ok(term)
}

fn parse_par(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    let mut term = parse_prefix(toks, sig, table)?;
    while matches!(toks.peek(), Some(Spanned { tok: Tok::Bar, .. })) {
        toks.next();
        let right = parse_prefix(toks, sig, table)?;
        term = NomTerm::op(sig, "par", vec![NomBinding::bare(term), NomBinding::bare(right)])
            .expect("par carries no binders");
    }
    Ok(term)
}

fn expect_name(toks: &mut Tokens, table: &mut NameTable, what: &str) -> Result<bindkit_core::Atom, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::Word(w), .. }) => Ok(table.resolve(&w)),
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected {what}, found `{}`", t.tok),
        )),
        None => Err(toks.error(format!("expected {what}"))),
    }
}

fn parse_bracketed_name(
    toks: &mut Tokens,
    table: &mut NameTable,
) -> Result<bindkit_core::Atom, ParseError> {
    toks.expect(&Tok::LBracket)?;
    let name = expect_name(toks, table, "a binder name")?;
    toks.expect(&Tok::RBracket)?;
    Ok(name)
}

fn parse_prefix(
    toks: &mut Tokens,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<NomTerm, ParseError> {
    match toks.next() {
        Some(Spanned { tok: Tok::Word(w), line, column }) => match w.as_str() {
            "0" => Ok(NomTerm::op(sig, "null", Vec::new()).expect("constant")),
            "in" => {
                let chan = expect_name(toks, table, "a channel name")?;
                toks.expect(&Tok::Dot)?;
                let binder = parse_bracketed_name(toks, table)?;
                let body = parse_prefix(toks, sig, table)?;
                Ok(NomTerm::op(
                    sig,
                    "in",
                    vec![
                        NomBinding::bare(NomTerm::atom(sig, chan)),
                        NomBinding::new(vec![binder], body),
                    ],
                )
                .expect("input prefix shapes match the arity"))
            }
            "out" => {
                let chan = expect_name(toks, table, "a channel name")?;
                let payload = expect_name(toks, table, "a payload name")?;
                toks.expect(&Tok::Dot)?;
                let body = parse_prefix(toks, sig, table)?;
                Ok(NomTerm::op(
                    sig,
                    "out",
                    vec![
                        NomBinding::bare(NomTerm::atom(sig, chan)),
                        NomBinding::bare(NomTerm::atom(sig, payload)),
                        NomBinding::bare(body),
                    ],
                )
                .expect("output prefix shapes match the arity"))
            }
            "nu" => {
                let binder = parse_bracketed_name(toks, table)?;
                let body = parse_prefix(toks, sig, table)?;
                Ok(NomTerm::op(sig, "nu", vec![NomBinding::new(vec![binder], body)])
                    .expect("restriction shapes match the arity"))
            }
            other => Err(ParseError::new(
                line,
                column,
                format!("expected a process, found `{other}`"),
            )),
        },
        Some(Spanned { tok: Tok::Bang, .. }) => {
            let body = parse_prefix(toks, sig, table)?;
            Ok(NomTerm::op(sig, "repl", vec![NomBinding::bare(body)])
                .expect("replication carries no binders"))
        }
        Some(Spanned { tok: Tok::LParen, .. }) => {
            let term = parse_par(toks, sig, table)?;
            toks.expect(&Tok::RParen)?;
            Ok(term)
        }
        Some(t) => Err(ParseError::new(
            t.line,
            t.column,
            format!("expected a process, found `{}`", t.tok),
        )),
        None => Err(toks.error("expected a process")),
    }
}
