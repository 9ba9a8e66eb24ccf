//! The worked language instances over the built-in signatures: a one-step
//! beta reducer for the untyped lambda-calculus and the process
//! well-formedness judgement for the core pi-calculus.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::atom::Atom;
use crate::lnterm::{LnNode, LnTerm};
use crate::signature::Signature;

/// Contract the leftmost-outermost beta-redex `ap (lm b) u` to the
/// concretion of `b` at `u`; `None` when no redex remains. Redexes under a
/// binder are reached by opening the binder at a fresh atom and closing it
/// again after the step.
pub fn beta_step(t: &LnTerm) -> Option<LnTerm> {
    step_locally_closed(t, &|node| match node {
        LnNode::Op(op, args) if op == "ap" => match args[0].node() {
            LnNode::Op(inner, body) if inner == "lm" => {
                Some(body[0].concrete(&args[1]).expect("redex shapes are well scoped"))
            }
            _ => None,
        },
        _ => None,
    })
}

/// Leftmost-outermost driver shared with the System T reducer: try `rule`
/// at the root, then descend argument by argument, crossing binders by
/// opening at fresh atoms.
pub(crate) fn step_locally_closed(
    t: &LnTerm,
    rule: &dyn Fn(&LnNode) -> Option<LnTerm>,
) -> Option<LnTerm> {
    debug_assert_eq!(t.scope(), 0);
    if let Some(reduced) = rule(t.node()) {
        return Some(reduced);
    }
    let LnNode::Op(op, args) = t.node() else {
        return None;
    };
    let sig = t.signature();
    let arity = sig.lookup(op).expect("validated at construction").arity().to_vec();
    for (position, (arg, depth)) in args.iter().zip(arity).enumerate() {
        if let Some(stepped) = step_under_binders(arg, depth, rule) {
            let mut new_args = args.clone();
            new_args[position] = stepped;
            return Some(
                LnTerm::op(sig, 0, op, new_args).expect("one argument replaced in kind"),
            );
        }
    }
    None
}

fn step_under_binders(
    arg: &LnTerm,
    depth: usize,
    rule: &dyn Fn(&LnNode) -> Option<LnTerm>,
) -> Option<LnTerm> {
    let mut opened = arg.clone();
    let mut names = Vec::with_capacity(depth);
    for _ in 0..depth {
        let fresh = opened.support().new_atom();
        let leaf = LnTerm::atom(opened.signature(), 0, fresh);
        opened = opened.concrete(&leaf).expect("argument scope equals its binder depth");
        names.push(fresh);
    }
    let mut result = step_locally_closed(&opened, rule)?;
    for x in names.iter().rev() {
        result = result.abstracted(*x);
    }
    Some(result)
}

/// Decide the pi-calculus judgement that a `0`-term is a well-formed
/// process expression.
///
/// The rules are syntax directed: the terminated process is accepted,
/// parallel composition and replication recurse, output requires two atom
/// leaves in channel position, and the binding forms (input, restriction)
/// concrete their continuation at a fresh atom before recursing. Checking
/// one fresh atom decides the exists-fresh premise by the some/any property.
pub fn proc_check(p: &LnTerm) -> bool {
    if p.scope() != 0 {
        return false;
    }
    let LnNode::Op(op, args) = p.node() else {
        return false;
    };
    match (op.as_str(), args.as_slice()) {
        ("null", []) => true,
        ("par", [left, right]) => proc_check(left) && proc_check(right),
        ("repl", [body]) => proc_check(body),
        ("out", [chan, payload, cont]) => {
            is_atom_leaf(chan) && is_atom_leaf(payload) && proc_check(cont)
        }
        ("in", [chan, body]) => is_atom_leaf(chan) && check_under_binder(body),
        ("nu", [body]) => check_under_binder(body),
        _ => false,
    }
}

fn is_atom_leaf(t: &LnTerm) -> bool {
    matches!(t.node(), LnNode::Atom(_))
}

fn check_under_binder(body: &LnTerm) -> bool {
    let fresh = body.support().new_atom();
    let leaf = LnTerm::atom(body.signature(), 0, fresh);
    match body.concrete(&leaf) {
        Ok(opened) => proc_check(&opened),
        Err(_) => false,
    }
}

/// Construction helpers for lambda terms.
pub mod lambda {
    use super::*;

    pub fn var(sig: &Arc<Signature>, x: Atom) -> LnTerm {
        LnTerm::atom(sig, 0, x)
    }

    /// Apply `f` to `a`; both locally closed.
    pub fn app(sig: &Arc<Signature>, f: LnTerm, a: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "ap", alloc::vec![f, a]).expect("closed applications are well scoped")
    }

    /// Bind `x` in the locally closed `body`.
    pub fn lam(sig: &Arc<Signature>, x: Atom, body: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "lm", alloc::vec![body.abstracted(x)])
            .expect("abstraction produces a 1-term")
    }
}

/// Construction helpers for pi-calculus processes.
pub mod pi {
    use super::*;

    pub fn null(sig: &Arc<Signature>) -> LnTerm {
        LnTerm::op(sig, 0, "null", alloc::vec![]).expect("constant")
    }

    pub fn par(sig: &Arc<Signature>, p: LnTerm, q: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "par", alloc::vec![p, q]).expect("closed processes")
    }

    pub fn repl(sig: &Arc<Signature>, p: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "repl", alloc::vec![p]).expect("closed process")
    }

    /// `out a b. p`
    pub fn out(sig: &Arc<Signature>, chan: Atom, payload: Atom, p: LnTerm) -> LnTerm {
        LnTerm::op(
            sig,
            0,
            "out",
            alloc::vec![LnTerm::atom(sig, 0, chan), LnTerm::atom(sig, 0, payload), p],
        )
        .expect("closed process")
    }

    /// `in a. [x] p`, binding `x` in `p`.
    pub fn inp(sig: &Arc<Signature>, chan: Atom, x: Atom, p: LnTerm) -> LnTerm {
        LnTerm::op(
            sig,
            0,
            "in",
            alloc::vec![LnTerm::atom(sig, 0, chan), p.abstracted(x)],
        )
        .expect("abstraction produces a 1-term")
    }

    /// `nu [x] p`, binding `x` in `p`.
    pub fn nu(sig: &Arc<Signature>, x: Atom, p: LnTerm) -> LnTerm {
        LnTerm::op(sig, 0, "nu", alloc::vec![p.abstracted(x)])
            .expect("abstraction produces a 1-term")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lnops::Renaming;

    fn a(n: u64) -> Atom {
        Atom::new(n)
    }

    #[test]
    fn beta_contracts_identity_redex() {
        let sig = Signature::lambda();
        let x = lambda::var(&sig, a(0));
        let id = lambda::lam(&sig, a(1), lambda::var(&sig, a(1)));
        let t = lambda::app(&sig, id, x.clone());
        assert_eq!(beta_step(&t), Some(x));
    }

    #[test]
    fn beta_normal_terms_do_not_step() {
        let sig = Signature::lambda();
        assert_eq!(beta_step(&lambda::var(&sig, a(0))), None);
        let id = lambda::lam(&sig, a(0), lambda::var(&sig, a(0)));
        assert_eq!(beta_step(&id), None);
    }

    #[test]
    fn beta_duplicates_through_concretion() {
        let sig = Signature::lambda();
        let w = lambda::lam(
            &sig,
            a(0),
            lambda::app(&sig, lambda::var(&sig, a(0)), lambda::var(&sig, a(0))),
        );
        let y = lambda::var(&sig, a(1));
        let t = lambda::app(&sig, w, y.clone());
        assert_eq!(beta_step(&t), Some(lambda::app(&sig, y.clone(), y)));
    }

    #[test]
    fn beta_reduces_under_binders() {
        let sig = Signature::lambda();
        let id = lambda::lam(&sig, a(0), lambda::var(&sig, a(0)));
        let redex = lambda::app(&sig, id, lambda::var(&sig, a(1)));
        let t = lambda::lam(&sig, a(1), redex);
        let stepped = beta_step(&t).expect("redex under the binder");
        assert_eq!(stepped, lambda::lam(&sig, a(1), lambda::var(&sig, a(1))));
        assert_eq!(stepped.scope(), 0);
        assert_eq!(beta_step(&stepped), None);
    }

    #[test]
    fn proc_check_accepts_figure_style_processes() {
        let sig = Signature::pi();
        let o = pi::null(&sig);
        assert!(proc_check(&o));
        assert!(proc_check(&pi::out(&sig, a(0), a(1), o.clone())));
        // in a. [x] out x b. 0  : the continuation mentions the bound name.
        let body = pi::out(&sig, a(2), a(1), o.clone());
        assert!(proc_check(&pi::inp(&sig, a(0), a(2), body.clone())));
        assert!(proc_check(&pi::nu(&sig, a(2), body)));
        assert!(proc_check(&pi::par(
            &sig,
            pi::repl(&sig, o.clone()),
            pi::out(&sig, a(0), a(0), o.clone())
        )));
    }

    #[test]
    fn proc_check_rejects_processes_in_channel_position() {
        let sig = Signature::pi();
        let o = pi::null(&sig);
        // out applied to three processes, the ill-formed example shape.
        let bad = LnTerm::op(
            &sig,
            0,
            "out",
            alloc::vec![o.clone(), o.clone(), o.clone()],
        )
        .unwrap();
        assert!(!proc_check(&bad));
        // A bare atom is not a process either.
        assert!(!proc_check(&LnTerm::atom(&sig, 0, a(0))));
    }

    #[test]
    fn proc_check_is_equivariant_on_an_example() {
        let sig = Signature::pi();
        let body = pi::out(&sig, a(2), a(1), pi::null(&sig));
        let p = pi::inp(&sig, a(0), a(2), body);
        let rho = Renaming::identity().updated(a(0), a(5)).updated(a(1), a(6));
        assert_eq!(proc_check(&rho.apply(&p)), proc_check(&p));
    }
}
