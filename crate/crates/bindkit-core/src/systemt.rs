//! Godel's System T: type inference, a normalization-by-evaluation
//! normalizer, and the induced decision procedure for beta-eta conversion.
//!
//! Types are simple types over a ground type of naturals, encoded in the
//! signature as the term formers `Nat` and `Arr`. Terms are evaluated into
//! a semantic domain: naturals are represented by their normal forms,
//! functions by Kripke closures over growing worlds of available atoms.
//! `reify` reads values back as normal forms, eta-expanding at arrow types,
//! and `reflect` embeds neutral terms into the domain; `natrec` iterates
//! semantically and gets stuck, as a reified neutral, on neutral scrutinees.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, FsetAtom};
use crate::calculi::step_locally_closed;
use crate::lnterm::{LnNode, LnTerm, TermError};
use crate::signature::Signature;

/// Simple types: `Nat` or an arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleType {
    Nat,
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(dom: SimpleType, cod: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(dom), Box::new(cod))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Nat => write!(f, "Nat"),
            SimpleType::Arrow(dom, cod) => {
                // Arrows associate to the right; parenthesize arrow domains.
                match **dom {
                    SimpleType::Nat => write!(f, "Nat -> {cod}"),
                    SimpleType::Arrow(..) => write!(f, "({dom}) -> {cod}"),
                }
            }
        }
    }
}

/// Typing and evaluation failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeError {
    UnboundAtom(Atom),
    NotAType,
    TypeInTermPosition(alloc::string::String),
    NotAFunction(SimpleType),
    ArgumentMismatch { expected: SimpleType, got: SimpleType },
    NatExpected(SimpleType),
    StepMismatch { expected: SimpleType, got: SimpleType },
    DuplicateContextAtom(Atom),
    TypesDiffer { left: SimpleType, right: SimpleType },
    Term(TermError),
    Internal(&'static str),
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::UnboundAtom(a) => write!(f, "unbound variable {a}"),
            TypeError::NotAType => write!(f, "term is not a type (expected Nat or Arr)"),
            TypeError::TypeInTermPosition(op) => {
                write!(f, "type former `{op}` used in term position")
            }
            TypeError::NotAFunction(ty) => {
                write!(f, "cannot apply a term of non-arrow type {ty}")
            }
            TypeError::ArgumentMismatch { expected, got } => {
                write!(f, "argument has type {got}, function expects {expected}")
            }
            TypeError::NatExpected(ty) => write!(f, "expected Nat, got {ty}"),
            TypeError::StepMismatch { expected, got } => {
                write!(f, "natrec step has type {got}, expected {expected}")
            }
            TypeError::DuplicateContextAtom(a) => {
                write!(f, "duplicate context variable {a}")
            }
            TypeError::TypesDiffer { left, right } => {
                write!(f, "terms have different types: {left} vs {right}")
            }
            TypeError::Term(e) => write!(f, "{e}"),
            TypeError::Internal(what) => write!(f, "internal evaluation error: {what}"),
        }
    }
}

impl core::error::Error for TypeError {}

impl From<TermError> for TypeError {
    fn from(e: TermError) -> TypeError {
        TypeError::Term(e)
    }
}

/// Decode a `0`-term built from `Nat`/`Arr` into a [`SimpleType`].
pub fn as_type(t: &LnTerm) -> Result<SimpleType, TypeError> {
    match t.node() {
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("Nat", []) => Ok(SimpleType::Nat),
            ("Arr", [dom, cod]) => Ok(SimpleType::arrow(as_type(dom)?, as_type(cod)?)),
            _ => Err(TypeError::NotAType),
        },
        _ => Err(TypeError::NotAType),
    }
}

/// Encode a [`SimpleType`] back as a term.
pub fn type_term(sig: &Arc<Signature>, ty: &SimpleType) -> LnTerm {
    match ty {
        SimpleType::Nat => LnTerm::op(sig, 0, "Nat", Vec::new()).expect("constant"),
        SimpleType::Arrow(dom, cod) => LnTerm::op(
            sig,
            0,
            "Arr",
            alloc::vec![type_term(sig, dom), type_term(sig, cod)],
        )
        .expect("type encodings are closed"),
    }
}

/// A typing context: ordered entries with distinct atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(Atom, SimpleType)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn bind(mut self, x: Atom, ty: SimpleType) -> Result<Context, TypeError> {
        if self.entries.iter().any(|(a, _)| *a == x) {
            return Err(TypeError::DuplicateContextAtom(x));
        }
        self.entries.push((x, ty));
        Ok(self)
    }

    pub fn lookup(&self, x: Atom) -> Option<&SimpleType> {
        self.entries.iter().find(|(a, _)| *a == x).map(|(_, ty)| ty)
    }

    pub fn entries(&self) -> &[(Atom, SimpleType)] {
        &self.entries
    }

    pub fn atoms(&self) -> FsetAtom {
        self.entries.iter().map(|(a, _)| *a).collect()
    }
}

/// Infer the type of a locally closed term.
///
/// `lam` carries its domain annotation, so no checking mode is needed; the
/// body is opened at an atom fresh for both the body and the context. The
/// motive of `natrec` is the type of its base case.
pub fn infer(ctx: &Context, t: &LnTerm) -> Result<SimpleType, TypeError> {
    match t.node() {
        LnNode::Atom(x) => ctx.lookup(*x).cloned().ok_or(TypeError::UnboundAtom(*x)),
        LnNode::Index(_) => Err(TypeError::Internal("index in a locally closed term")),
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("zero", []) => Ok(SimpleType::Nat),
            ("succ", [n]) => match infer(ctx, n)? {
                SimpleType::Nat => Ok(SimpleType::Nat),
                other => Err(TypeError::NatExpected(other)),
            },
            ("lam", [ann, body]) => {
                let dom = as_type(ann)?;
                let fresh = body.support().union(ctx.atoms()).new_atom();
                let opened = body.concrete(&LnTerm::atom(t.signature(), 0, fresh))?;
                let inner = ctx.clone().bind(fresh, dom.clone())?;
                let cod = infer(&inner, &opened)?;
                Ok(SimpleType::arrow(dom, cod))
            }
            ("ap", [fun, arg]) => match infer(ctx, fun)? {
                SimpleType::Arrow(dom, cod) => {
                    let got = infer(ctx, arg)?;
                    if got == *dom {
                        Ok(*cod)
                    } else {
                        Err(TypeError::ArgumentMismatch { expected: *dom, got })
                    }
                }
                other => Err(TypeError::NotAFunction(other)),
            },
            ("natrec", [base, step, scrutinee]) => {
                let motive = infer(ctx, base)?;
                let expected = SimpleType::arrow(
                    SimpleType::Nat,
                    SimpleType::arrow(motive.clone(), motive.clone()),
                );
                let got = infer(ctx, step)?;
                if got != expected {
                    return Err(TypeError::StepMismatch { expected, got });
                }
                match infer(ctx, scrutinee)? {
                    SimpleType::Nat => Ok(motive),
                    other => Err(TypeError::NatExpected(other)),
                }
            }
            ("Nat", _) | ("Arr", _) => Err(TypeError::TypeInTermPosition(op.clone())),
            _ => Err(TypeError::Internal("operator outside the System T signature")),
        },
    }
}

/// The set of atoms available to reification; grows monotonically as fresh
/// atoms are invented for lambda binders.
#[derive(Clone, Debug)]
pub struct World {
    atoms: FsetAtom,
}

impl World {
    pub fn new(atoms: FsetAtom) -> World {
        World { atoms }
    }

    pub fn atoms(&self) -> &FsetAtom {
        &self.atoms
    }

    pub fn fresh(&self) -> Atom {
        self.atoms.new_atom()
    }

    pub fn extended(&self, x: Atom) -> World {
        World { atoms: self.atoms.clone().union(FsetAtom::singleton(x)) }
    }
}

/// Semantic values.
///
/// Naturals carry their normal form directly (possibly neutral-headed).
/// Functions are either closures from evaluating a `lam`, applicable at any
/// future world, or reflected neutral terms remembering their type.
#[derive(Clone, Debug)]
pub enum SemVal {
    Nat(LnTerm),
    Closure { env: Env, dom: SimpleType, body: LnTerm },
    Neutral { neu: LnTerm, dom: SimpleType, cod: SimpleType },
}

/// Evaluation environment: semantic values plus the declared type of every
/// bound atom (needed to re-infer `natrec` motives under binders).
#[derive(Clone, Debug, Default)]
pub struct Env {
    vals: BTreeMap<Atom, SemVal>,
    tys: BTreeMap<Atom, SimpleType>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    /// The initial environment of a context: every atom reflected at its
    /// declared type.
    pub fn from_context(sig: &Arc<Signature>, ctx: &Context) -> Env {
        let mut env = Env::new();
        for (x, ty) in ctx.entries() {
            let neu = LnTerm::atom(sig, 0, *x);
            env = env.bind(*x, reflect(ty.clone(), neu), ty.clone());
        }
        env
    }

    pub fn bind(mut self, x: Atom, v: SemVal, ty: SimpleType) -> Env {
        self.vals.insert(x, v);
        self.tys.insert(x, ty);
        self
    }

    fn lookup(&self, x: Atom) -> Option<&SemVal> {
        self.vals.get(&x)
    }

    fn as_context(&self) -> Context {
        Context { entries: self.tys.iter().map(|(a, ty)| (*a, ty.clone())).collect() }
    }
}

/// Evaluate a locally closed term in an environment covering its free
/// atoms. Well-typed input cannot fail; errors signal a typing bug.
pub fn eval(env: &Env, world: &World, t: &LnTerm) -> Result<SemVal, TypeError> {
    let sig = t.signature();
    match t.node() {
        LnNode::Atom(x) => env.lookup(*x).cloned().ok_or(TypeError::UnboundAtom(*x)),
        LnNode::Index(_) => Err(TypeError::Internal("index in a locally closed term")),
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("zero", []) => Ok(SemVal::Nat(t.clone())),
            ("succ", [n]) => match eval(env, world, n)? {
                SemVal::Nat(nf) => {
                    Ok(SemVal::Nat(LnTerm::op(sig, 0, "succ", alloc::vec![nf])?))
                }
                _ => Err(TypeError::Internal("succ of a non-natural value")),
            },
            ("lam", [ann, body]) => Ok(SemVal::Closure {
                env: env.clone(),
                dom: as_type(ann)?,
                body: body.clone(),
            }),
            ("ap", [fun, arg]) => {
                let vf = eval(env, world, fun)?;
                let va = eval(env, world, arg)?;
                apply(&vf, world, va)
            }
            ("natrec", [base, step, scrutinee]) => {
                let motive = infer(&env.as_context(), base)?;
                let v0 = eval(env, world, base)?;
                let vp = eval(env, world, step)?;
                match eval(env, world, scrutinee)? {
                    SemVal::Nat(nf) => sem_natrec(world, &v0, &vp, &nf, &motive),
                    _ => Err(TypeError::Internal("natrec scrutinee is not a natural")),
                }
            }
            ("Nat", _) | ("Arr", _) => Err(TypeError::TypeInTermPosition(op.clone())),
            _ => Err(TypeError::Internal("operator outside the System T signature")),
        },
    }
}

/// Kripke application of a function value at the current world.
pub fn apply(fun: &SemVal, world: &World, arg: SemVal) -> Result<SemVal, TypeError> {
    match fun {
        SemVal::Closure { env, dom, body } => {
            // The placeholder atom avoids both the world and the body, so it
            // can neither clash with reification binders nor shadow a free
            // atom of the body.
            let fresh = world.atoms().clone().union(body.support()).new_atom();
            let opened = body.concrete(&LnTerm::atom(body.signature(), 0, fresh))?;
            let inner = env.clone().bind(fresh, arg, dom.clone());
            eval(&inner, world, &opened)
        }
        SemVal::Neutral { neu, dom, cod } => {
            let arg_nf = reify(world, dom, &arg)?;
            let applied = LnTerm::op(neu.signature(), 0, "ap", alloc::vec![neu.clone(), arg_nf])?;
            Ok(reflect(cod.clone(), applied))
        }
        SemVal::Nat(_) => Err(TypeError::NotAFunction(SimpleType::Nat)),
    }
}

/// Semantic recursor: iterate over the normal form of the scrutinee, and on
/// a neutral scrutinee reify both branches and get stuck.
fn sem_natrec(
    world: &World,
    base: &SemVal,
    step: &SemVal,
    scrutinee: &LnTerm,
    motive: &SimpleType,
) -> Result<SemVal, TypeError> {
    match scrutinee.node() {
        LnNode::Op(op, args) if op == "zero" && args.is_empty() => Ok(base.clone()),
        LnNode::Op(op, args) if op == "succ" && args.len() == 1 => {
            let pred = &args[0];
            let rec = sem_natrec(world, base, step, pred, motive)?;
            let at_pred = apply(step, world, SemVal::Nat(pred.clone()))?;
            apply(&at_pred, world, rec)
        }
        _ => {
            let base_nf = reify(world, motive, base)?;
            let step_ty = SimpleType::arrow(
                SimpleType::Nat,
                SimpleType::arrow(motive.clone(), motive.clone()),
            );
            let step_nf = reify(world, &step_ty, step)?;
            let stuck = LnTerm::op(
                scrutinee.signature(),
                0,
                "natrec",
                alloc::vec![base_nf, step_nf, scrutinee.clone()],
            )?;
            Ok(reflect(motive.clone(), stuck))
        }
    }
}

/// Read a value back as a normal form of the given type. At an arrow type
/// the value is applied to a reflected fresh atom and the result wrapped in
/// an annotated lambda, so outputs at arrow type are always eta-long.
pub fn reify(world: &World, ty: &SimpleType, v: &SemVal) -> Result<LnTerm, TypeError> {
    match (ty, v) {
        (SimpleType::Nat, SemVal::Nat(nf)) => Ok(nf.clone()),
        (SimpleType::Arrow(dom, cod), fun) => {
            let x = world.fresh();
            let extended = world.extended(x);
            let sig = match fun {
                SemVal::Closure { body, .. } => Arc::clone(body.signature()),
                SemVal::Neutral { neu, .. } => Arc::clone(neu.signature()),
                SemVal::Nat(nf) => Arc::clone(nf.signature()),
            };
            let arg = reflect((**dom).clone(), LnTerm::atom(&sig, 0, x));
            let result = apply(fun, &extended, arg)?;
            let body = reify(&extended, cod, &result)?;
            Ok(LnTerm::op(
                &sig,
                0,
                "lam",
                alloc::vec![type_term(&sig, dom), body.abstracted(x)],
            )?)
        }
        (SimpleType::Nat, _) => Err(TypeError::Internal("function value at type Nat")),
    }
}

/// Embed a neutral term of the given type into the semantic domain.
pub fn reflect(ty: SimpleType, neu: LnTerm) -> SemVal {
    match ty {
        SimpleType::Nat => SemVal::Nat(neu),
        SimpleType::Arrow(dom, cod) => SemVal::Neutral { neu, dom: *dom, cod: *cod },
    }
}

/// Normalize a well-typed term: evaluate in the initial environment of the
/// context and reify at the inferred type. Deterministic, since every fresh
/// atom is chosen by `new` over the current world.
///
/// ```
/// use bindkit_core::systemt::{build, normalize, Context, SimpleType};
/// use bindkit_core::{Atom, Signature};
///
/// let sig = Signature::system_t();
/// let ctx = Context::new();
/// let x = Atom::new(0);
/// let id = build::lam(&sig, x, &SimpleType::Nat, build::var(&sig, x));
/// let t = build::ap(&sig, id, build::church(&sig, 2));
/// assert_eq!(normalize(&ctx, &t).unwrap(), build::church(&sig, 2));
/// ```
pub fn normalize(ctx: &Context, t: &LnTerm) -> Result<LnTerm, TypeError> {
    let ty = infer(ctx, t)?;
    let world = World::new(ctx.atoms());
    let env = Env::from_context(t.signature(), ctx);
    let v = eval(&env, &world, t)?;
    reify(&world, &ty, &v)
}

/// Decide beta-eta convertibility by comparing normal forms structurally.
/// The inputs must have the same type under the context.
pub fn convertible(ctx: &Context, t: &LnTerm, u: &LnTerm) -> Result<bool, TypeError> {
    let t_ty = infer(ctx, t)?;
    let u_ty = infer(ctx, u)?;
    if t_ty != u_ty {
        return Err(TypeError::TypesDiffer { left: t_ty, right: u_ty });
    }
    Ok(normalize(ctx, t)? == normalize(ctx, u)?)
}

/// One leftmost-outermost beta step, used as an independent oracle for the
/// normalizer: `ap (lam A b) u` contracts to the concretion, `natrec` on
/// `zero` picks the base case and on `succ n` unfolds one step of the
/// recursor.
pub fn t_beta_step(t: &LnTerm) -> Option<LnTerm> {
    step_locally_closed(t, &|node| {
        let LnNode::Op(op, args) = node else { return None };
        match (op.as_str(), args.as_slice()) {
            ("ap", [fun, arg]) => match fun.node() {
                LnNode::Op(inner, lam_args) if inner == "lam" => Some(
                    lam_args[1]
                        .concrete(arg)
                        .expect("redex shapes are well scoped"),
                ),
                _ => None,
            },
            ("natrec", [base, step, scrutinee]) => match scrutinee.node() {
                LnNode::Op(inner, s_args) if inner == "zero" && s_args.is_empty() => {
                    Some(base.clone())
                }
                LnNode::Op(inner, s_args) if inner == "succ" && s_args.len() == 1 => {
                    let sig = base.signature();
                    let pred = s_args[0].clone();
                    let rec = LnTerm::op(
                        sig,
                        0,
                        "natrec",
                        alloc::vec![base.clone(), step.clone(), pred.clone()],
                    )
                    .expect("recursor arguments stay closed");
                    let step_at = LnTerm::op(sig, 0, "ap", alloc::vec![step.clone(), pred])
                        .expect("application of closed terms");
                    Some(
                        LnTerm::op(sig, 0, "ap", alloc::vec![step_at, rec])
                            .expect("application of closed terms"),
                    )
                }
                _ => None,
            },
            _ => None,
        }
    })
}

/// Whether a locally closed term matches the normal-form grammar
/// `nf ::= lam A nf | zero | succ nf | neu`.
pub fn is_normal_form(t: &LnTerm) -> bool {
    match t.node() {
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("zero", []) => true,
            ("succ", [n]) => is_normal_form(n),
            ("lam", [ann, body]) => {
                as_type(ann).is_ok() && {
                    let fresh = body.support().new_atom();
                    match body.concrete(&LnTerm::atom(t.signature(), 0, fresh)) {
                        Ok(opened) => is_normal_form(&opened),
                        Err(_) => false,
                    }
                }
            }
            _ => is_neutral(t),
        },
        _ => is_neutral(t),
    }
}

/// Whether a locally closed term matches the neutral grammar
/// `neu ::= atom | ap neu nf | natrec nf nf neu`.
pub fn is_neutral(t: &LnTerm) -> bool {
    match t.node() {
        LnNode::Atom(_) => true,
        LnNode::Op(op, args) => match (op.as_str(), args.as_slice()) {
            ("ap", [fun, arg]) => is_neutral(fun) && is_normal_form(arg),
            ("natrec", [base, step, scrutinee]) => {
                is_normal_form(base) && is_normal_form(step) && is_neutral(scrutinee)
            }
            _ => false,
        },
        LnNode::Index(_) => false,
    }
}

/// All simple types with at most `max_arrows` arrow constructors, smallest
/// first.
pub fn enumerate_types(max_arrows: usize) -> Vec<SimpleType> {
    let mut by_count: Vec<Vec<SimpleType>> = alloc::vec![alloc::vec![SimpleType::Nat]];
    for count in 1..=max_arrows {
        let mut level = Vec::new();
        for dom_count in 0..count {
            let cod_count = count - 1 - dom_count;
            for dom in by_count[dom_count].clone() {
                for cod in &by_count[cod_count] {
                    level.push(SimpleType::arrow(dom.clone(), cod.clone()));
                }
            }
        }
        by_count.push(level);
    }
    by_count.into_iter().flatten().collect()
}

/// Construction helpers for locally closed System T terms.
pub mod build {
    use super::*;

    pub fn var(sig: &Arc<Signature>, x: Atom) -> LnTerm {
        LnTerm::atom(sig, 0, x)
    }

    pub fn zero(sig: &Arc<Signature>) -> LnTerm {
        LnTerm::op(sig, 0, "zero", Vec::new()).expect("constant")
    }

    pub fn succ(sig: &Arc<Signature>, n: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "succ", alloc::vec![n]).expect("closed argument")
    }

    /// `succ^k zero`.
    pub fn church(sig: &Arc<Signature>, k: usize) -> LnTerm {
        (0..k).fold(zero(sig), |n, _| succ(sig, n))
    }

    pub fn ap(sig: &Arc<Signature>, f: LnTerm, a: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "ap", alloc::vec![f, a]).expect("closed arguments")
    }

    /// `lam (x : dom). body`, abstracting `x` in the locally closed body.
    pub fn lam(sig: &Arc<Signature>, x: Atom, dom: &SimpleType, body: LnTerm) -> LnTerm {
        LnTerm::op(
            sig,
            0,
            "lam",
            alloc::vec![type_term(sig, dom), body.abstracted(x)],
        )
        .expect("abstraction produces a 1-term")
    }

    pub fn natrec(sig: &Arc<Signature>, base: LnTerm, step: LnTerm, scrutinee: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "natrec", alloc::vec![base, step, scrutinee]).expect("closed arguments")
    }

    /// The eta-expansion `lam (x : dom). f x` of an arrow-typed variable.
    pub fn eta_expand(sig: &Arc<Signature>, f: Atom, dom: &SimpleType) -> LnTerm {
        let x = FsetAtom::singleton(f).new_atom();
        lam(sig, x, dom, ap(sig, var(sig, f), var(sig, x)))
    }
}

/// Generate a well-typed, locally closed term of the requested type whose
/// free atoms all come from `ctx`. Deterministic in the seed.
pub fn gen_typed(ctx: &Context, ty: &SimpleType, depth: usize, seed: u64) -> LnTerm {
    let sig = Signature::system_t();
    let mut rng = crate::adequacy::Rng::new(seed);
    gen_term(&sig, ctx, ty, depth, &mut rng)
}

fn gen_term(
    sig: &Arc<Signature>,
    ctx: &Context,
    ty: &SimpleType,
    depth: usize,
    rng: &mut crate::adequacy::Rng,
) -> LnTerm {
    let vars: Vec<Atom> = ctx
        .entries()
        .iter()
        .filter(|(_, t)| t == ty)
        .map(|(a, _)| *a)
        .collect();
    if depth == 0 {
        if !vars.is_empty() {
            return build::var(sig, vars[rng.below(vars.len())]);
        }
        return canonical_inhabitant(sig, ctx, ty);
    }

    #[derive(Clone, Copy)]
    enum Choice {
        Var,
        Intro,
        Apply,
        Recursor,
    }
    let mut choices = Vec::new();
    if !vars.is_empty() {
        choices.extend([Choice::Var; 3]);
    }
    choices.extend([Choice::Intro; 4]);
    choices.extend([Choice::Apply, Choice::Recursor]);

    match choices[rng.below(choices.len())] {
        Choice::Var => build::var(sig, vars[rng.below(vars.len())]),
        Choice::Intro => match ty {
            SimpleType::Nat => {
                if rng.chance(1, 2) {
                    build::zero(sig)
                } else {
                    build::succ(sig, gen_term(sig, ctx, &SimpleType::Nat, depth - 1, rng))
                }
            }
            SimpleType::Arrow(dom, cod) => {
                let x = ctx.atoms().new_atom();
                let inner = ctx
                    .clone()
                    .bind(x, (**dom).clone())
                    .expect("binder chosen fresh for the context");
                let body = gen_term(sig, &inner, cod, depth - 1, rng);
                build::lam(sig, x, dom, body)
            }
        },
        Choice::Apply => {
            let small = enumerate_types(1);
            let arg_ty = small[rng.below(small.len())].clone();
            let fun_ty = SimpleType::arrow(arg_ty.clone(), ty.clone());
            let fun = gen_term(sig, ctx, &fun_ty, depth - 1, rng);
            let arg = gen_term(sig, ctx, &arg_ty, depth - 1, rng);
            build::ap(sig, fun, arg)
        }
        Choice::Recursor => {
            let base = gen_term(sig, ctx, ty, depth - 1, rng);
            let step_ty =
                SimpleType::arrow(SimpleType::Nat, SimpleType::arrow(ty.clone(), ty.clone()));
            let step = gen_term(sig, ctx, &step_ty, depth - 1, rng);
            let scrutinee = gen_term(sig, ctx, &SimpleType::Nat, depth - 1, rng);
            build::natrec(sig, base, step, scrutinee)
        }
    }
}

fn canonical_inhabitant(sig: &Arc<Signature>, ctx: &Context, ty: &SimpleType) -> LnTerm {
    match ty {
        SimpleType::Nat => build::zero(sig),
        SimpleType::Arrow(dom, cod) => {
            let x = ctx.atoms().new_atom();
            let inner = ctx
                .clone()
                .bind(x, (**dom).clone())
                .expect("binder chosen fresh for the context");
            build::lam(sig, x, dom, canonical_inhabitant(sig, &inner, cod))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<Signature> {
        Signature::system_t()
    }

    fn nat() -> SimpleType {
        SimpleType::Nat
    }

    fn nat_to_nat() -> SimpleType {
        SimpleType::arrow(nat(), nat())
    }

    #[test]
    fn as_type_examples() {
        let s = sig();
        assert_eq!(as_type(&type_term(&s, &nat())).unwrap(), nat());
        assert_eq!(as_type(&type_term(&s, &nat_to_nat())).unwrap(), nat_to_nat());
        assert_eq!(as_type(&build::zero(&s)), Err(TypeError::NotAType));
    }

    #[test]
    fn type_display() {
        assert_eq!(alloc::format!("{}", nat()), "Nat");
        assert_eq!(alloc::format!("{}", nat_to_nat()), "Nat -> Nat");
        let higher = SimpleType::arrow(nat_to_nat(), nat());
        assert_eq!(alloc::format!("{higher}"), "(Nat -> Nat) -> Nat");
        let curried = SimpleType::arrow(nat(), nat_to_nat());
        assert_eq!(alloc::format!("{curried}"), "Nat -> Nat -> Nat");
    }

    #[test]
    fn infer_examples() {
        let s = sig();
        let ctx = Context::new();
        // lam (x : Nat). x
        let id = build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0)));
        assert_eq!(infer(&ctx, &id).unwrap(), nat_to_nat());

        // natrec zero (lam n. lam r. r) (succ zero)
        let step = build::lam(
            &s,
            Atom::new(0),
            &nat(),
            build::lam(&s, Atom::new(1), &nat(), build::var(&s, Atom::new(1))),
        );
        let rec = build::natrec(&s, build::zero(&s), step, build::succ(&s, build::zero(&s)));
        assert_eq!(infer(&ctx, &rec).unwrap(), nat());

        let bad = build::ap(&s, build::zero(&s), build::zero(&s));
        assert_eq!(infer(&ctx, &bad), Err(TypeError::NotAFunction(nat())));

        assert_eq!(
            infer(&ctx, &build::var(&s, Atom::new(4))),
            Err(TypeError::UnboundAtom(Atom::new(4)))
        );
    }

    #[test]
    fn eval_ground_examples() {
        let s = sig();
        let world = World::new(FsetAtom::empty());
        let env = Env::new();
        match eval(&env, &world, &build::zero(&s)).unwrap() {
            SemVal::Nat(nf) => assert_eq!(nf, build::zero(&s)),
            _ => panic!("zero evaluates to a natural"),
        }
        let t = build::ap(
            &s,
            build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0))),
            build::zero(&s),
        );
        match eval(&env, &world, &t).unwrap() {
            SemVal::Nat(nf) => assert_eq!(nf, build::zero(&s)),
            _ => panic!("beta at the semantic level"),
        }
    }

    #[test]
    fn eval_succ_of_neutral() {
        let s = sig();
        let n = Atom::new(0);
        let ctx = Context::new().bind(n, nat()).unwrap();
        let world = World::new(ctx.atoms());
        let env = Env::from_context(&s, &ctx);
        match eval(&env, &world, &build::succ(&s, build::var(&s, n))).unwrap() {
            SemVal::Nat(nf) => assert_eq!(nf, build::succ(&s, build::var(&s, n))),
            _ => panic!("succ of a neutral is a normal form"),
        }
    }

    #[test]
    fn reify_reflect_round_trip() {
        let s = sig();
        let n = Atom::new(0);
        let world = World::new(FsetAtom::singleton(n));
        // Reflection at Nat is the identity under reify.
        let v = reflect(nat(), build::var(&s, n));
        assert_eq!(reify(&world, &nat(), &v).unwrap(), build::var(&s, n));
        // Reflected function applied to zero builds a neutral application.
        let f = reflect(nat_to_nat(), build::var(&s, n));
        let applied = apply(&f, &world, SemVal::Nat(build::zero(&s))).unwrap();
        match applied {
            SemVal::Nat(nf) => {
                assert_eq!(nf, build::ap(&s, build::var(&s, n), build::zero(&s)))
            }
            _ => panic!("application at Nat"),
        }
    }

    #[test]
    fn normalize_beta_and_eta() {
        let s = sig();
        let ctx = Context::new();
        let t = build::ap(
            &s,
            build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0))),
            build::zero(&s),
        );
        assert_eq!(normalize(&ctx, &t).unwrap(), build::zero(&s));

        // A context variable of arrow type eta-expands.
        let f = Atom::new(0);
        let ctx_f = Context::new().bind(f, nat_to_nat()).unwrap();
        let nf = normalize(&ctx_f, &build::var(&s, f)).unwrap();
        let x = FsetAtom::singleton(f).new_atom();
        let expected = build::lam(
            &s,
            x,
            &nat(),
            build::ap(&s, build::var(&s, f), build::var(&s, x)),
        );
        assert_eq!(nf, expected);
        assert!(is_normal_form(&nf));
    }

    #[test]
    fn normalize_runs_the_recursor() {
        let s = sig();
        let ctx = Context::new();
        let step = build::lam(
            &s,
            Atom::new(0),
            &nat(),
            build::lam(
                &s,
                Atom::new(1),
                &nat(),
                build::succ(&s, build::var(&s, Atom::new(1))),
            ),
        );
        let t = build::natrec(&s, build::zero(&s), step, build::church(&s, 2));
        assert_eq!(normalize(&ctx, &t).unwrap(), build::church(&s, 2));
    }

    #[test]
    fn convertible_examples() {
        let s = sig();
        let f = Atom::new(0);
        let ctx = Context::new().bind(f, nat_to_nat()).unwrap();
        let eta = build::eta_expand(&s, f, &nat());
        assert!(convertible(&ctx, &build::var(&s, f), &eta).unwrap());

        let ctx0 = Context::new();
        let beta = build::ap(
            &s,
            build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0))),
            build::zero(&s),
        );
        assert!(convertible(&ctx0, &beta, &build::zero(&s)).unwrap());
        assert!(!convertible(&ctx0, &build::zero(&s), &build::church(&s, 1)).unwrap());
        // Different types are a contract error, not `false`.
        let id = build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0)));
        assert!(matches!(
            convertible(&ctx0, &build::zero(&s), &id),
            Err(TypeError::TypesDiffer { .. })
        ));
    }

    #[test]
    fn beta_oracle_examples() {
        let s = sig();
        let step = build::lam(
            &s,
            Atom::new(0),
            &nat(),
            build::lam(&s, Atom::new(1), &nat(), build::var(&s, Atom::new(1))),
        );
        let base = build::zero(&s);
        let t = build::natrec(&s, base.clone(), step.clone(), build::zero(&s));
        assert_eq!(t_beta_step(&t), Some(base.clone()));

        let redex = build::ap(
            &s,
            build::lam(&s, Atom::new(0), &nat(), build::var(&s, Atom::new(0))),
            build::zero(&s),
        );
        assert_eq!(t_beta_step(&redex), Some(build::zero(&s)));
        assert_eq!(t_beta_step(&build::zero(&s)), None);

        // natrec on succ unfolds one application of the step.
        let t2 = build::natrec(&s, base.clone(), step.clone(), build::church(&s, 1));
        let expected = build::ap(
            &s,
            build::ap(&s, step.clone(), build::zero(&s)),
            build::natrec(&s, base, step, build::zero(&s)),
        );
        assert_eq!(t_beta_step(&t2), Some(expected));
    }

    #[test]
    fn normal_form_grammar() {
        let s = sig();
        assert!(is_normal_form(&build::church(&s, 3)));
        let n = Atom::new(0);
        assert!(is_neutral(&build::ap(&s, build::var(&s, n), build::zero(&s))));
        let redex = build::ap(
            &s,
            build::lam(&s, Atom::new(1), &nat(), build::var(&s, Atom::new(1))),
            build::zero(&s),
        );
        assert!(!is_normal_form(&redex));
    }

    #[test]
    fn stuck_recursor_at_function_type_reifies_both_branches() {
        // natrec (\x:Nat. x) (\m:Nat. \f:Nat -> Nat. \y:Nat. succ (f y)) n
        // with neutral n : Nat has motive Nat -> Nat, so the stuck form
        // must reify the base and step closures and eta-expand on top.
        let s = sig();
        let n = Atom::new(0);
        let ctx = Context::new().bind(n, nat()).unwrap();
        let base = build::lam(&s, Atom::new(40), &nat(), build::var(&s, Atom::new(40)));
        let step = build::lam(
            &s,
            Atom::new(41),
            &nat(),
            build::lam(
                &s,
                Atom::new(42),
                &nat_to_nat(),
                build::lam(
                    &s,
                    Atom::new(43),
                    &nat(),
                    build::succ(
                        &s,
                        build::ap(&s, build::var(&s, Atom::new(42)), build::var(&s, Atom::new(43))),
                    ),
                ),
            ),
        );
        let t = build::natrec(&s, base, step, build::var(&s, n));
        assert_eq!(infer(&ctx, &t).unwrap(), nat_to_nat());

        let base_nf = build::lam(&s, Atom::new(20), &nat(), build::var(&s, Atom::new(20)));
        let step_nf = build::lam(
            &s,
            Atom::new(10),
            &nat(),
            build::lam(
                &s,
                Atom::new(11),
                &nat_to_nat(),
                build::lam(
                    &s,
                    Atom::new(12),
                    &nat(),
                    build::succ(
                        &s,
                        build::ap(&s, build::var(&s, Atom::new(11)), build::var(&s, Atom::new(12))),
                    ),
                ),
            ),
        );
        let stuck = build::natrec(&s, base_nf, step_nf, build::var(&s, n));
        let eta_binder = Atom::new(1);
        let expected = build::lam(
            &s,
            eta_binder,
            &nat(),
            build::ap(&s, stuck.clone(), build::var(&s, eta_binder)),
        );
        let nf = normalize(&ctx, &t).unwrap();
        assert_eq!(nf, expected);
        assert!(is_normal_form(&nf));
        assert_eq!(normalize(&ctx, &nf).unwrap(), nf);

        // Applying the stuck recursor leaves a neutral application.
        let applied = build::ap(&s, t, build::zero(&s));
        let applied_nf = normalize(&ctx, &applied).unwrap();
        assert_eq!(applied_nf, build::ap(&s, stuck, build::zero(&s)));
        assert!(is_normal_form(&applied_nf));
    }

    #[test]
    fn enumerate_types_counts() {
        assert_eq!(enumerate_types(0).len(), 1);
        assert_eq!(enumerate_types(1).len(), 2);
        // Catalan growth: 1, 1, 2, 5 trees with 0..=3 internal nodes.
        assert_eq!(enumerate_types(3).len(), 1 + 1 + 2 + 5);
    }

    #[test]
    fn generated_terms_are_well_typed() {
        let f = Atom::new(0);
        let ctx = Context::new().bind(f, nat_to_nat()).unwrap();
        for seed in 0..60 {
            for ty in [nat(), nat_to_nat()] {
                let t = gen_typed(&ctx, &ty, 4, seed);
                assert_eq!(infer(&ctx, &t).unwrap(), ty, "seed {seed}");
            }
        }
        // Closed generation stays closed.
        let empty = Context::new();
        for seed in 0..40 {
            let t = gen_typed(&empty, &nat(), 4, seed);
            assert!(t.support().is_empty_set());
            assert_eq!(infer(&empty, &t).unwrap(), nat());
        }
    }

    #[test]
    fn normalize_preserves_typing_and_is_grammatical() {
        let f = Atom::new(0);
        let ctx = Context::new().bind(f, nat_to_nat()).unwrap();
        for seed in 100..160 {
            let t = gen_typed(&ctx, &nat(), 4, seed);
            let nf = normalize(&ctx, &t).unwrap();
            assert_eq!(infer(&ctx, &nf).unwrap(), infer(&ctx, &t).unwrap());
            assert!(is_normal_form(&nf), "seed {seed}");
        }
    }
}
