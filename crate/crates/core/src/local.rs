//! Classes of the tame local group `D(q) = <σ, τ | σ τ σ^-1 = τ^q>` with
//! constant coefficients.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};

/// Residue field size (only its class modulo the exponent matters) and the
/// coefficient group.
#[derive(Clone, Debug)]
pub struct TameLocalDatum {
    q_mod: u64,
    g: Arc<FiniteGroup>,
}

impl TameLocalDatum {
    pub fn new(q: u64, g: Arc<FiniteGroup>) -> Self {
        let e = g.exponent() as u64;
        TameLocalDatum { q_mod: q % e, g }
    }

    /// `q` reduced modulo the exponent of the group.
    pub fn q_mod(&self) -> u64 {
        self.q_mod
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    /// Whether `exponent | q - 1`, i.e. the n-th roots of unity are local.
    pub fn roots_of_unity_present(&self) -> bool {
        self.g.exponent() == 1 || self.q_mod == 1
    }

    fn relation_holds(&self, s: usize, t: usize) -> bool {
        self.g.conj(s, t) == self.g.pow(t, self.q_mod)
    }

    /// The class of the pair `(s, t)`, if it satisfies the relation.
    pub fn class(&self, s: usize, t: usize) -> Result<LocalClass> {
        self.g.check_index(s)?;
        self.g.check_index(t)?;
        if !self.relation_holds(s, t) {
            return Err(Error::Input { detail: format!("({s}, {t}) violates s t s^-1 = t^q") });
        }
        Ok(self.canonical(s, t))
    }

    fn canonical(&self, s: usize, t: usize) -> LocalClass {
        let g = &self.g;
        let (s, t) = g.elements().map(|x| (g.conj(x, s), g.conj(x, t))).min().expect("nonempty");
        LocalClass { s, t }
    }
}

/// A homomorphism `D(q) -> G`, `σ -> s`, `τ -> t`, canonical under
/// simultaneous conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct LocalClass {
    pub s: usize,
    pub t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LocalFlags {
    pub unramified: bool,
    pub ramified: bool,
    pub cyclic: bool,
    pub totally_ramified: bool,
}

pub fn local_h1_enumerate(d: &TameLocalDatum) -> Result<Vec<LocalClass>> {
    let n = d.g.order();
    budget::check("local pairs", n * n, budget::current().max_nodes)?;
    let set: BTreeSet<LocalClass> = (0..n)
        .into_par_iter()
        .flat_map_iter(|s| (0..n).filter(move |&t| d.relation_holds(s, t)).map(move |t| d.canonical(s, t)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(set.into_iter().collect())
}

pub fn classify_local_class(d: &TameLocalDatum, c: &LocalClass) -> LocalFlags {
    let g = &d.g;
    let span = g.closure(&[c.s, c.t]);
    let size = span.iter().filter(|&&b| b).count();
    let cyclic = span.iter().enumerate().any(|(x, &inside)| inside && g.element_order(x) == size);
    let unramified = c.t == 0;
    LocalFlags {
        unramified,
        ramified: !unramified,
        cyclic,
        totally_ramified: size == g.element_order(c.t),
    }
}

/// Least `m >= 0` with `s = t^m`.
fn exponent_of(g: &FiniteGroup, s: usize, t: usize) -> Option<u64> {
    (0..g.element_order(t) as u64).find(|&m| g.pow(t, m) == s)
}

/// Lifts a totally ramified cyclic class along `p: G -> H` to
/// `(g^m, g)` with `g` the least preimage of `t` and `s = t^m`.
pub fn lift_totally_ramified(
    d_g: &TameLocalDatum,
    h: &FiniteGroup,
    p: &GroupHom,
    c: &LocalClass,
) -> Result<LocalClass> {
    let g = &d_g.g;
    if p.images().len() != g.order() || p.images().iter().any(|&y| y >= h.order()) {
        return Err(Error::Input { detail: "map does not go from G to H".into() });
    }
    if !p.is_surjective(h) {
        return Err(Error::NotSurjective);
    }
    if !d_g.roots_of_unity_present() {
        return Err(Error::HypothesisViolated {
            detail: format!("exponent {} does not divide q - 1 (q = {} mod exponent)", g.exponent(), d_g.q_mod),
        });
    }
    let m = exponent_of(h, c.s, c.t)
        .ok_or_else(|| Error::NotTotallyRamifiedCyclic { detail: format!("{} is not a power of {}", c.s, c.t) })?;
    let lift_t = p.least_preimage(c.t).expect("surjective");
    let lift_s = g.pow(lift_t, m);
    debug_assert!(d_g.relation_holds(lift_s, lift_t));
    Ok(d_g.canonical(lift_s, lift_t))
}

/// Image of a class under `p: G -> H`, over the datum of `H` with the same q.
pub fn pushforward(d_h: &TameLocalDatum, p: &GroupHom, c: &LocalClass) -> Result<LocalClass> {
    d_h.class(p.apply(c.s), p.apply(c.t))
}
