//! The command-line frontend.
//!
//! Every subcommand is exposed through [`run`], which returns the exit code
//! and both output streams so tests can drive the CLI in-process. Exit
//! codes: 0 for success (and domain answers of `true`), 1 for domain
//! answers of `false` (`alpha-eq`, `check`, `conv`), 2 for parse, scope or
//! type errors, with a message naming the violated invariant.
//!
//! Positional inputs may be a file path, `-` for standard input, or, when
//! no such file exists, the term text itself.

use std::io::Read;
use std::sync::Arc;

use bindkit_core::adequacy::{translate, untranslate, TermGen};
use bindkit_core::calculi::proc_check;
use bindkit_core::systemt::{convertible, infer, normalize, Context};
use bindkit_core::{Atom, LnTerm, ScopedIndex, Signature};

use crate::names::NameTable;
use crate::pi_text::parse_pi_proc;
use crate::sig_text::parse_signature;
use crate::st_text::{parse_context, parse_st_term, print_st, print_type};
use crate::term_text::{
    parse_ln, parse_ln_at, parse_ln_subst, parse_nom, parse_nom_subst, print_ln, print_nom,
};

/// What a finished invocation looks like.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct CliError(String);

impl CliError {
    fn new(msg: impl Into<String>) -> CliError {
        CliError(msg.into())
    }
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

/// A command's answer: the text to print and the exit code (0 or 1).
struct Answer {
    text: String,
    code: i32,
}

impl Answer {
    fn ok(text: impl Into<String>) -> Answer {
        Answer { text: text.into(), code: 0 }
    }

    fn decided(flag: bool) -> Answer {
        Answer { text: if flag { "true" } else { "false" }.into(), code: if flag { 0 } else { 1 } }
    }
}

#[derive(Default)]
struct Opts {
    sig: Option<String>,
    form: Option<String>,
    map: Option<String>,
    index: Option<usize>,
    with_term: Option<String>,
    atom: Option<String>,
    ctx: Option<String>,
    scope: Option<usize>,
    depth: Option<usize>,
    seed: Option<u64>,
    count: Option<usize>,
    json: bool,
    positional: Vec<String>,
}

fn parse_opts(args: &[String]) -> Result<Opts, CliError> {
    let mut opts = Opts::default();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, CliError> {
            it.next()
                .cloned()
                .ok_or_else(|| CliError::new(format!("flag {name} needs a value")))
        };
        match arg.as_str() {
            "--sig" => opts.sig = Some(take("--sig")?),
            "--form" => opts.form = Some(take("--form")?),
            "--map" => opts.map = Some(take("--map")?),
            "--with" => opts.with_term = Some(take("--with")?),
            "--atom" => opts.atom = Some(take("--atom")?),
            "--ctx" => opts.ctx = Some(take("--ctx")?),
            "--index" => opts.index = Some(parse_number(&take("--index")?, "--index")?),
            "--scope" => opts.scope = Some(parse_number(&take("--scope")?, "--scope")?),
            "--depth" => opts.depth = Some(parse_number(&take("--depth")?, "--depth")?),
            "--count" => opts.count = Some(parse_number(&take("--count")?, "--count")?),
            "--seed" => {
                let raw = take("--seed")?;
                opts.seed = Some(
                    raw.parse::<u64>()
                        .map_err(|_| CliError::new(format!("--seed `{raw}` is not a number")))?,
                )
            }
            "--json" => opts.json = true,
            other if other.starts_with("--") => {
                return Err(CliError::new(format!("unknown flag `{other}`")))
            }
            other => opts.positional.push(other.to_string()),
        }
    }
    Ok(opts)
}

fn parse_number(raw: &str, flag: &str) -> Result<usize, CliError> {
    raw.parse::<usize>()
        .map_err(|_| CliError::new(format!("{flag} `{raw}` is not a natural number")))
}

/// Resolve a positional input: a readable file, `-` for stdin, or inline
/// source text.
fn read_input(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::new(format!("cannot read standard input: {e}")))?;
        return Ok(buf);
    }
    let path = std::path::Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::new(format!("cannot read `{arg}`: {e}")));
    }
    Ok(arg.to_string())
}

/// A built-in signature name, or a path to a signature file.
fn load_signature(opts: &Opts, default: Option<&str>) -> Result<Arc<Signature>, CliError> {
    let name = match (&opts.sig, default) {
        (Some(name), _) => name.clone(),
        (None, Some(d)) => d.to_string(),
        (None, None) => return Err(CliError::new("missing --sig (lambda, pi, systemt, or a file)")),
    };
    if let Some(sig) = Signature::builtin(&name) {
        return Ok(sig);
    }
    let path = std::path::Path::new(&name);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(format!("cannot read `{name}`: {e}")))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("user");
        return Ok(parse_signature(stem, &text)?);
    }
    Err(CliError::new(format!(
        "unknown signature `{name}` (expected lambda, pi, systemt, or a signature file)"
    )))
}

fn positional<'a>(opts: &'a Opts, index: usize, what: &str) -> Result<&'a str, CliError> {
    opts.positional
        .get(index)
        .map(String::as_str)
        .ok_or_else(|| CliError::new(format!("missing {what}")))
}

fn form<'a>(opts: &'a Opts, default: &'a str, allowed: &[&str]) -> Result<&'a str, CliError> {
    let picked = opts.form.as_deref().unwrap_or(default);
    if allowed.contains(&picked) {
        Ok(picked)
    } else {
        Err(CliError::new(format!(
            "--form `{picked}` is not one of {}",
            allowed.join(", ")
        )))
    }
}

/// Parse a term for the System T commands: surface syntax by default,
/// canonical locally nameless with `--form ln`.
fn read_st_term(
    opts: &Opts,
    index: usize,
    what: &str,
    sig: &Arc<Signature>,
    table: &mut NameTable,
) -> Result<LnTerm, CliError> {
    let src = read_input(positional(opts, index, what)?)?;
    match form(opts, "st", &["st", "ln"])? {
        "ln" => {
            let t = parse_ln(&src, sig, table)?;
            expect_closed(&t)?;
            Ok(t)
        }
        _ => Ok(translate(&parse_st_term(&src, sig, table)?)),
    }
}

fn expect_closed(t: &LnTerm) -> Result<(), CliError> {
    if t.scope() == 0 {
        Ok(())
    } else {
        Err(CliError::new(format!(
            "term has {} dangling de Bruijn index level(s); a locally closed term is required",
            t.scope()
        )))
    }
}

fn st_context(opts: &Opts, table: &mut NameTable) -> Result<Context, CliError> {
    let raw = opts.ctx.as_deref().unwrap_or("");
    Ok(parse_context(raw, table)?)
}

const USAGE: &str = "\
bindkit — syntax with binders over a binding signature

usage: bindkit <command> [flags] [input ...]

commands:
  parse       --sig S --form {ln|nom} INPUT        echo the canonical form
  translate   --sig S INPUT                        nameful -> locally nameless
  untranslate --sig S INPUT                        locally nameless -> nameful
  alpha-eq    --sig S INPUT1 INPUT2                decide alpha-equivalence
  subst       --sig S --map MAP INPUT [--form F]   apply a substitution
  open        --sig S --index K --with TERM INPUT  replace index K by a term
  close       --sig S --index K --atom X INPUT     replace atom X by index K
  support     [--sig S] [--form F] INPUT           atoms occurring in a term
  size        [--sig S] [--form F] INPUT           term size
  check       --sig pi [--form {ln|pi|nom}] INPUT  process well-formedness
  check       --sig systemt [--ctx C] INPUT        type inference
  normalize   [--ctx C] [--form {st|ln}] INPUT     System T normal form
  conv        [--ctx C] INPUT1 INPUT2              decide beta-eta conversion
  gen         --sig S [--scope N] [--depth D] [--seed K] [--count M]
  help

Inputs are file paths, `-` for stdin, or inline term text. `--json` wraps
the result in a JSON object. Exit codes: 0 ok/true, 1 false, 2 errors.
";

fn dispatch(cmd: &str, opts: &Opts) -> Result<Answer, CliError> {
    match cmd {
        "parse" => cmd_parse(opts),
        "translate" => cmd_translate(opts),
        "untranslate" => cmd_untranslate(opts),
        "alpha-eq" => cmd_alpha_eq(opts),
        "subst" => cmd_subst(opts),
        "open" => cmd_open(opts),
        "close" => cmd_close(opts),
        "support" => cmd_support(opts),
        "size" => cmd_size(opts),
        "check" => cmd_check(opts),
        "normalize" => cmd_normalize(opts),
        "conv" => cmd_conv(opts),
        "gen" => cmd_gen(opts),
        "help" | "--help" | "-h" => Ok(Answer::ok(USAGE.trim_end())),
        other => Err(CliError::new(format!("unknown command `{other}`; try `bindkit help`"))),
    }
}

fn cmd_parse(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    match form(opts, "ln", &["ln", "nom"])? {
        "nom" => {
            let m = parse_nom(&src, &sig, &mut table)?;
            Ok(Answer::ok(print_nom(&m, &table)))
        }
        _ => {
            let t = parse_ln(&src, &sig, &mut table)?;
            Ok(Answer::ok(print_ln(&t, &table)))
        }
    }
}

fn cmd_translate(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let m = parse_nom(&src, &sig, &mut table)?;
    Ok(Answer::ok(print_ln(&translate(&m), &table)))
}

fn cmd_untranslate(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let t = parse_ln(&src, &sig, &mut table)?;
    expect_closed(&t)?;
    let m = untranslate(&t)?;
    Ok(Answer::ok(print_nom(&m, &table)))
}

fn cmd_alpha_eq(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let left_src = read_input(positional(opts, 0, "the first term")?)?;
    let right_src = read_input(positional(opts, 1, "the second term")?)?;
    // One table across both inputs: identical identifiers, identical atoms.
    let mut table = NameTable::new();
    let left = parse_nom(&left_src, &sig, &mut table)?;
    let right = parse_nom(&right_src, &sig, &mut table)?;
    Ok(Answer::decided(left.alpha_eq(&right)))
}

fn cmd_subst(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let map_src = read_input(
        opts.map
            .as_deref()
            .ok_or_else(|| CliError::new("missing --map FILE"))?,
    )?;
    let term_src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    match form(opts, "ln", &["ln", "nom"])? {
        "nom" => {
            let subst = parse_nom_subst(&map_src, &sig, &mut table)?;
            let m = parse_nom(&term_src, &sig, &mut table)?;
            let out = subst.apply(&m)?;
            Ok(Answer::ok(print_nom(&out, &table)))
        }
        _ => {
            let subst = parse_ln_subst(&map_src, &sig, &mut table)?;
            let t = parse_ln(&term_src, &sig, &mut table)?;
            let out = subst.apply(&t)?;
            Ok(Answer::ok(print_ln(&out, &table)))
        }
    }
}

fn cmd_open(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let index = opts.index.ok_or_else(|| CliError::new("missing --index K"))?;
    let with_src = read_input(
        opts.with_term
            .as_deref()
            .ok_or_else(|| CliError::new("missing --with TERM"))?,
    )?;
    let term_src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let u = parse_ln(&with_src, &sig, &mut table)?;
    expect_closed(&u)?;
    // The term is placed at a scope large enough for the requested index.
    let t = parse_ln_at(&term_src, &sig, &mut table, index + 1)?;
    let i = ScopedIndex::new(index, t.scope())?;
    let out = t.open_at(i, &u)?;
    Ok(Answer::ok(print_ln(&out, &table)))
}

fn cmd_close(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let index = opts.index.ok_or_else(|| CliError::new("missing --index K"))?;
    let atom_name = opts
        .atom
        .as_deref()
        .ok_or_else(|| CliError::new("missing --atom X"))?;
    let term_src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let t = parse_ln_at(&term_src, &sig, &mut table, index)?;
    let x = table.resolve(atom_name);
    let i = ScopedIndex::new(index, t.scope() + 1)?;
    let out = t.close_at(i, x)?;
    Ok(Answer::ok(print_ln(&out, &table)))
}

fn term_support(opts: &Opts) -> Result<(Vec<Atom>, NameTable), CliError> {
    let sig = load_signature(opts, Some("lambda"))?;
    let src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let support = match form(opts, "ln", &["ln", "nom"])? {
        "nom" => parse_nom(&src, &sig, &mut table)?.support(),
        _ => parse_ln(&src, &sig, &mut table)?.support(),
    };
    let mut atoms: Vec<Atom> = support.leaves();
    atoms.sort();
    atoms.dedup();
    Ok((atoms, table))
}

fn cmd_support(opts: &Opts) -> Result<Answer, CliError> {
    let (atoms, table) = term_support(opts)?;
    let shown: Vec<String> = atoms.iter().map(|a| table.display(*a)).collect();
    Ok(Answer::ok(format!("{{{}}}", shown.join(" "))))
}

fn cmd_size(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, Some("lambda"))?;
    let src = read_input(positional(opts, 0, "an input term")?)?;
    let mut table = NameTable::new();
    let size = match form(opts, "ln", &["ln", "nom"])? {
        "nom" => parse_nom(&src, &sig, &mut table)?.size(),
        _ => parse_ln(&src, &sig, &mut table)?.size(),
    };
    Ok(Answer::ok(size.to_string()))
}

fn cmd_check(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    match sig.name() {
        "pi" => {
            let src = read_input(positional(opts, 0, "an input process")?)?;
            let mut table = NameTable::new();
            let term = match form(opts, "ln", &["ln", "pi", "nom"])? {
                "pi" => translate(&parse_pi_proc(&src, &sig, &mut table)?),
                "nom" => translate(&parse_nom(&src, &sig, &mut table)?),
                _ => {
                    let t = parse_ln(&src, &sig, &mut table)?;
                    expect_closed(&t)?;
                    t
                }
            };
            Ok(Answer::decided(proc_check(&term)))
        }
        "systemt" => {
            let mut table = NameTable::new();
            let ctx = st_context(opts, &mut table)?;
            let t = read_st_term(opts, 0, "an input term", &sig, &mut table)?;
            let ty = infer(&ctx, &t)?;
            Ok(Answer::ok(print_type(&ty)))
        }
        other => Err(CliError::new(format!(
            "no well-formedness judgement for signature `{other}` (use pi or systemt)"
        ))),
    }
}

fn cmd_normalize(opts: &Opts) -> Result<Answer, CliError> {
    let sig = Signature::system_t();
    let mut table = NameTable::new();
    let ctx = st_context(opts, &mut table)?;
    let t = read_st_term(opts, 0, "an input term", &sig, &mut table)?;
    let nf = normalize(&ctx, &t)?;
    let text = match form(opts, "st", &["st", "ln"])? {
        "ln" => print_ln(&nf, &table),
        _ => print_st(&nf, &table),
    };
    Ok(Answer::ok(text))
}

fn cmd_conv(opts: &Opts) -> Result<Answer, CliError> {
    let sig = Signature::system_t();
    let mut table = NameTable::new();
    let ctx = st_context(opts, &mut table)?;
    let left = read_st_term(opts, 0, "the first term", &sig, &mut table)?;
    let right = read_st_term(opts, 1, "the second term", &sig, &mut table)?;
    Ok(Answer::decided(convertible(&ctx, &left, &right)?))
}

fn cmd_gen(opts: &Opts) -> Result<Answer, CliError> {
    let sig = load_signature(opts, None)?;
    let scope = opts.scope.unwrap_or(0);
    let depth = opts.depth.unwrap_or(4);
    let count = opts.count.unwrap_or(1);
    let seed = match opts.seed {
        Some(seed) => seed,
        None => match std::env::var("BINDKIT_SEED") {
            Ok(raw) => raw
                .parse::<u64>()
                .map_err(|_| CliError::new(format!("BINDKIT_SEED `{raw}` is not a number")))?,
            Err(_) => 0,
        },
    };
    let gen = TermGen::new(&sig);
    let table = NameTable::new();
    let mut lines = Vec::with_capacity(count);
    for i in 0..count {
        let t = gen.ln_term(scope, depth, seed.wrapping_add(i as u64));
        lines.push(print_ln(&t, &table));
    }
    Ok(Answer::ok(lines.join("\n")))
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Run one invocation. `args` excludes the program name.
pub fn run(args: &[String]) -> Outcome {
    let (cmd, rest) = match args.split_first() {
        Some((cmd, rest)) => (cmd.as_str(), rest),
        None => {
            return Outcome { code: 2, stdout: String::new(), stderr: USAGE.to_string() };
        }
    };
    let opts = match parse_opts(rest) {
        Ok(opts) => opts,
        Err(CliError(msg)) => {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    };
    match dispatch(cmd, &opts) {
        Ok(answer) => {
            let stdout = if opts.json {
                format!(
                    "{{\"ok\":true,\"exit\":{},\"result\":\"{}\"}}\n",
                    answer.code,
                    json_escape(&answer.text)
                )
            } else {
                format!("{}\n", answer.text)
            };
            Outcome { code: answer.code, stdout, stderr: String::new() }
        }
        Err(CliError(msg)) => {
            if opts.json {
                let stdout = format!("{{\"ok\":false,\"exit\":2,\"error\":\"{}\"}}\n", json_escape(&msg));
                Outcome { code: 2, stdout, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
            }
        }
    }
}

/// Convenience for tests: run with string literals.
pub fn run_args(args: &[&str]) -> Outcome {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    run(&owned)
}
