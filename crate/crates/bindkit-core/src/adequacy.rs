//! The translation between nameful and locally nameless terms, round-trip
//! checkers, and the seeded term generators used by the property suites.
//!
//! Translation interprets each binder name by abstraction, so alpha
//! equivalent nameful terms map to identical `0`-terms; the inverse peels
//! binders by concreting at deterministically chosen fresh atoms. Together
//! they witness the bijection between `0`-terms and alpha-classes.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::atom::Atom;
use crate::lnterm::{LnNode, LnTerm, ScopedIndex, TermError};
use crate::nameful::{NomBinding, NomNode, NomSubst, NomTerm};
use crate::signature::Signature;

/// Translate a nameful term to its locally nameless `0`-term: binder names
/// become abstractions, innermost first.
pub fn translate(term: &NomTerm) -> LnTerm {
    let sig = term.signature();
    match term.node() {
        NomNode::Atom(a) => LnTerm::atom(sig, 0, *a),
        NomNode::Op(op, bindings) => {
            let args = bindings.iter().map(translate_binding).collect();
            LnTerm::op(sig, 0, op, args).expect("binding depths match the arity")
        }
    }
}

fn translate_binding(binding: &NomBinding) -> LnTerm {
    let mut term = translate(binding.subject());
    for x in binding.binders().iter().rev() {
        term = term.abstracted(*x);
    }
    term
}

/// Invert the translation: produce a nameful term that translates back to
/// `t` exactly. Each binder is recovered by concreting at `new(supp)`, so
/// the chosen names are deterministic in the input.
pub fn untranslate(t: &LnTerm) -> Result<NomTerm, TermError> {
    t.expect_zero_term()?;
    untranslate_any(t)
}

fn untranslate_any(t: &LnTerm) -> Result<NomTerm, TermError> {
    let sig = t.signature();
    match t.node() {
        LnNode::Atom(a) => Ok(NomTerm::atom(sig, *a)),
        LnNode::Index(i) => {
            // Unreachable for zero-terms; peeling below removes all indices.
            Err(TermError::IndexOutOfBounds { value: i.value(), bound: 0 })
        }
        LnNode::Op(op, args) => {
            let bindings = args
                .iter()
                .map(untranslate_binding)
                .collect::<Result<Vec<_>, _>>()?;
            NomTerm::op(sig, op, bindings)
        }
    }
}

fn untranslate_binding(arg: &LnTerm) -> Result<NomBinding, TermError> {
    let mut binders = Vec::with_capacity(arg.scope());
    let mut current = arg.clone();
    while current.scope() > 0 {
        let fresh = current.support().new_atom();
        let leaf = LnTerm::atom(current.signature(), 0, fresh);
        current = current.concrete(&leaf)?;
        binders.push(fresh);
    }
    Ok(NomBinding::new(binders, untranslate_any(&current)?))
}

/// Soundness direction of the bijection: alpha-equivalent inputs must
/// translate to equal terms.
pub fn check_soundness(left: &NomTerm, right: &NomTerm) -> bool {
    !left.alpha_eq(right) || translate(left) == translate(right)
}

/// Injectivity direction: equal translations must come from
/// alpha-equivalent inputs.
pub fn check_injectivity(left: &NomTerm, right: &NomTerm) -> bool {
    translate(left) != translate(right) || left.alpha_eq(right)
}

/// Push a nameful substitution through the translation pointwise.
pub fn translate_subst(subst: &NomSubst) -> crate::lnops::Subst {
    let mut out = crate::lnops::Subst::identity(subst.signature());
    for (x, image) in subst.overrides() {
        out = out
            .updated(x, translate(image))
            .expect("translated images are zero-terms");
    }
    out
}

/// A small deterministic generator (splitmix64). Reproducible across
/// platforms, which keeps failing cases replayable from their seed.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw below `n` (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.next_u64() % den as u64) < num as u64
    }
}

/// Seeded generator of well-scoped terms over a signature.
///
/// Atoms are drawn from a small pool and scopes stay low, which makes
/// shadowing and capture paths common in generated data.
#[derive(Clone, Debug)]
pub struct TermGen {
    sig: Arc<Signature>,
    atom_pool: Vec<Atom>,
}

impl TermGen {
    /// Generator with the default pool of atoms `0..8`.
    pub fn new(sig: &Arc<Signature>) -> TermGen {
        TermGen::with_pool(sig, (0..8).map(Atom::new).collect())
    }

    pub fn with_pool(sig: &Arc<Signature>, atom_pool: Vec<Atom>) -> TermGen {
        assert!(!atom_pool.is_empty(), "atom pool must be non-empty");
        TermGen { sig: Arc::clone(sig), atom_pool }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn pool(&self) -> &[Atom] {
        &self.atom_pool
    }

    /// A well-scoped term at `scope` with operator nesting at most `depth`.
    pub fn ln_term(&self, scope: usize, depth: usize, seed: u64) -> LnTerm {
        self.ln_with(&mut Rng::new(seed), scope, depth)
    }

    pub fn ln_with(&self, rng: &mut Rng, scope: usize, depth: usize) -> LnTerm {
        let ops = self.sig.operators();
        if depth > 0 && !ops.is_empty() && rng.chance(3, 4) {
            let decl = &ops[rng.below(ops.len())];
            let args = decl
                .arity()
                .to_vec()
                .into_iter()
                .map(|m| self.ln_with(rng, m + scope, depth - 1))
                .collect();
            return LnTerm::op(&self.sig, scope, decl.name(), args)
                .expect("generated arguments match the arity");
        }
        if scope > 0 && rng.chance(1, 2) {
            let i = ScopedIndex::new(rng.below(scope), scope).expect("value drawn below scope");
            LnTerm::index(&self.sig, i)
        } else {
            LnTerm::atom(&self.sig, scope, self.pick_atom(rng))
        }
    }

    /// A nameful term with operator nesting at most `depth`; binder names
    /// are drawn from the same pool as leaves, so shadowing happens.
    pub fn nom_term(&self, depth: usize, seed: u64) -> NomTerm {
        self.nom_with(&mut Rng::new(seed), depth)
    }

    pub fn nom_with(&self, rng: &mut Rng, depth: usize) -> NomTerm {
        let ops = self.sig.operators();
        if depth > 0 && !ops.is_empty() && rng.chance(3, 4) {
            let decl = &ops[rng.below(ops.len())];
            let bindings = decl
                .arity()
                .to_vec()
                .into_iter()
                .map(|m| {
                    let binders = (0..m).map(|_| self.pick_atom(rng)).collect();
                    NomBinding::new(binders, self.nom_with(rng, depth - 1))
                })
                .collect();
            return NomTerm::op(&self.sig, decl.name(), bindings)
                .expect("generated bindings match the arity");
        }
        NomTerm::atom(&self.sig, self.pick_atom(rng))
    }

    /// A substitution overriding up to `entries` pool atoms with generated
    /// `0`-terms. Images reuse the pool, so they are capture-prone.
    pub fn ln_subst(&self, entries: usize, depth: usize, seed: u64) -> crate::lnops::Subst {
        let mut rng = Rng::new(seed);
        let mut subst = crate::lnops::Subst::identity(&self.sig);
        for _ in 0..entries {
            let x = self.pick_atom(&mut rng);
            let image = self.ln_with(&mut rng, 0, depth);
            subst = subst.updated(x, image).expect("images are zero-terms");
        }
        subst
    }

    /// The nameful counterpart of [`TermGen::ln_subst`].
    pub fn nom_subst(&self, entries: usize, depth: usize, seed: u64) -> NomSubst {
        let mut rng = Rng::new(seed);
        let mut subst = NomSubst::identity(&self.sig);
        for _ in 0..entries {
            let x = self.pick_atom(&mut rng);
            let image = self.nom_with(&mut rng, depth);
            subst = subst.updated(x, image).expect("images share the signature");
        }
        subst
    }

    pub fn pick_atom(&self, rng: &mut Rng) -> Atom {
        self.atom_pool[rng.below(self.atom_pool.len())]
    }
}
