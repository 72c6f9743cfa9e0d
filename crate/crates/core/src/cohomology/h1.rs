use std::collections::BTreeSet;

use rayon::prelude::*;

use super::GammaAction;
use crate::budget;
use crate::error::{Error, Result};
use crate::group::ops::extend_along_generators;
use crate::group::{GroupHom, Subgroup};

/// A 1-cocycle `a: Γ -> G`, `a_{στ} = a_σ σ(a_τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle1 {
    ctx: GammaAction,
    values: Vec<usize>,
}

impl Cocycle1 {
    pub fn new(ctx: &GammaAction, values: Vec<usize>) -> Result<Self> {
        if values.len() != ctx.gamma().order() {
            return Err(Error::CocycleInvalid {
                detail: format!("{} values for |gamma| = {}", values.len(), ctx.gamma().order()),
            });
        }
        for &v in &values {
            ctx.target().check_index(v)?;
        }
        if let Some((s, t)) = first_cocycle_failure(ctx, &values) {
            return Err(Error::CocycleInvalid { detail: format!("cocycle law fails at ({s}, {t})") });
        }
        Ok(Cocycle1 { ctx: ctx.clone(), values })
    }

    pub(crate) fn new_unchecked(ctx: &GammaAction, values: Vec<usize>) -> Self {
        debug_assert!(first_cocycle_failure(ctx, &values).is_none());
        Cocycle1 { ctx: ctx.clone(), values }
    }

    pub fn trivial(ctx: &GammaAction) -> Self {
        Cocycle1 { ctx: ctx.clone(), values: vec![0; ctx.gamma().order()] }
    }

    /// The cocycle determined by its values on the generators of gamma.
    pub fn from_generator_values(ctx: &GammaAction, gen_values: &[usize]) -> Result<Self> {
        let gens = ctx.gamma().generators();
        if gen_values.len() != gens.len() {
            return Err(Error::CocycleInvalid { detail: "wrong number of generator values".into() });
        }
        let g = ctx.target();
        let vals = extend_along_generators(ctx.gamma(), gens, 0usize, |x, v, i| g.mul(v, ctx.act(x, gen_values[i])))
            .ok_or_else(|| Error::CocycleInvalid { detail: "generator values violate relations".into() })?;
        Ok(Cocycle1::new_unchecked(ctx, vals.into_iter().map(|v| v.expect("generated")).collect()))
    }

    pub fn ctx(&self) -> &GammaAction {
        &self.ctx
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn at(&self, s: usize) -> usize {
        self.values[s]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `σ -> g^-1 a_σ σ(g)`.
    pub fn translate(&self, g: usize) -> Cocycle1 {
        let values = translate_values(&self.ctx, &self.values, g);
        Cocycle1 { ctx: self.ctx.clone(), values }
    }

    /// Image under a gamma-equivariant homomorphism of targets.
    pub fn push_forward(&self, to: &GammaAction, map: &GroupHom) -> Result<Cocycle1> {
        if map.images().len() != self.ctx.target().order() {
            return Err(Error::ContextMismatch { detail: "map domain differs from the target".into() });
        }
        Cocycle1::new(to, self.values.iter().map(|&v| map.apply(v)).collect())
    }

    pub fn class(&self) -> CohClass1 {
        CohClass1::of(self)
    }
}

fn first_cocycle_failure(ctx: &GammaAction, values: &[usize]) -> Option<(usize, usize)> {
    let (gm, g) = (ctx.gamma(), ctx.target());
    if values[0] != 0 {
        return Some((0, 0));
    }
    for s in gm.elements() {
        for t in gm.elements() {
            if values[gm.mul(s, t)] != g.mul(values[s], ctx.act(s, values[t])) {
                return Some((s, t));
            }
        }
    }
    None
}

fn translate_values(ctx: &GammaAction, values: &[usize], g: usize) -> Vec<usize> {
    let t = ctx.target();
    let gi = t.inv(g);
    values.iter().enumerate().map(|(s, &a)| t.mul(t.mul(gi, a), ctx.act(s, g))).collect()
}

/// A class in `H^1(Γ, G)`, stored by its lexicographically least
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass1 {
    rep: Cocycle1,
}

impl PartialOrd for CohClass1 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CohClass1 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rep.values.cmp(&other.rep.values)
    }
}

impl CohClass1 {
    pub fn of(c: &Cocycle1) -> Self {
        let values = canonical_values(&c.ctx, &c.values);
        CohClass1 { rep: Cocycle1 { ctx: c.ctx.clone(), values } }
    }

    pub fn trivial(ctx: &GammaAction) -> Self {
        CohClass1 { rep: Cocycle1::trivial(ctx) }
    }

    pub fn rep(&self) -> &Cocycle1 {
        &self.rep
    }

    pub fn ctx(&self) -> &GammaAction {
        &self.rep.ctx
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_trivial()
    }
}

fn canonical_values(ctx: &GammaAction, values: &[usize]) -> Vec<usize> {
    ctx.target()
        .elements()
        .map(|g| translate_values(ctx, values, g))
        .min()
        .expect("nonempty target")
}

/// All 1-cocycles, in lexicographic order of their value arrays.
pub fn cocycles(ctx: &GammaAction) -> Result<Vec<Cocycle1>> {
    budget::check_gamma(ctx.gamma().order())?;
    budget::check_target(ctx.target().order())?;
    let gens = ctx.gamma().generators().to_vec();
    if gens.is_empty() {
        return Ok(vec![Cocycle1::trivial(ctx)]);
    }
    let counter = budget::NodeCounter::new();
    let first: Vec<usize> = ctx.target().elements().collect();
    let parts: Vec<Result<Vec<Vec<usize>>>> = first
        .into_par_iter()
        .map(|y| {
            let mut out = Vec::new();
            let mut images = vec![y];
            search(ctx, &gens, &mut images, &mut out, &counter)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    all.sort();
    Ok(all.into_iter().map(|v| Cocycle1::new_unchecked(ctx, v)).collect())
}

fn search(
    ctx: &GammaAction,
    gens: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    counter: &budget::NodeCounter,
) -> Result<()> {
    counter.tick()?;
    let depth = images.len();
    let g = ctx.target();
    let partial = extend_along_generators(ctx.gamma(), &gens[..depth], 0usize, |x, v, i| {
        g.mul(v, ctx.act(x, images[i]))
    });
    let Some(values) = partial else { return Ok(()) };
    if depth == gens.len() {
        out.push(values.into_iter().map(|v| v.expect("generators span")).collect());
        return Ok(());
    }
    for y in g.elements() {
        images.push(y);
        let r = search(ctx, gens, images, out, counter);
        images.pop();
        r?;
    }
    Ok(())
}

/// `H^1(Γ, G)` as sorted canonical classes.
pub fn h1_enumerate(ctx: &GammaAction) -> Result<Vec<CohClass1>> {
    let all = cocycles(ctx)?;
    let reps: BTreeSet<Vec<usize>> = all.par_iter().map(|c| canonical_values(ctx, &c.values)).collect::<Vec<_>>().into_iter().collect();
    Ok(reps
        .into_iter()
        .map(|values| CohClass1 { rep: Cocycle1 { ctx: ctx.clone(), values } })
        .collect())
}

/// `Some(g)` (least such) with `b_σ = g^-1 a_σ σ(g)`, else `None`.
pub fn are_cohomologous(a: &Cocycle1, b: &Cocycle1) -> Result<Option<usize>> {
    a.ctx.require_same(&b.ctx, "cocycles over different actions")?;
    Ok(a.ctx.target().elements().find(|&g| translate_values(&a.ctx, &a.values, g) == b.values))
}

/// Restriction to a subgroup of gamma; the result lives over
/// [`GammaAction::restrict`].
pub fn restrict_class(c: &CohClass1, sub: &Subgroup) -> Result<CohClass1> {
    restrict_cocycle(c.rep(), sub).map(|r| r.class())
}

pub fn restrict_cocycle(c: &Cocycle1, sub: &Subgroup) -> Result<Cocycle1> {
    let rctx = c.ctx.restrict(sub)?;
    let values = sub.elements().iter().map(|&s| c.values[s]).collect();
    Ok(Cocycle1::new_unchecked(&rctx, values))
}

/// Inflation along `proj: Γ -> Γ/N`. `big` is the action of Γ on the same
/// target; it must factor through `proj` as the action of `c`.
pub fn inflate_class(c: &CohClass1, proj: &GroupHom, big: &GammaAction) -> Result<CohClass1> {
    let small = c.ctx();
    if big.target() != small.target()
        || proj.images().len() != big.gamma().order()
        || big.gamma().elements().any(|s| proj.apply(s) >= small.gamma().order())
    {
        return Err(Error::ActionMismatch { detail: "projection or target does not match".into() });
    }
    for s in big.gamma().elements() {
        if big.perms()[s] != small.perms()[proj.apply(s)] {
            return Err(Error::ActionMismatch { detail: format!("action of {s} does not factor") });
        }
    }
    let values = big.gamma().elements().map(|s| c.rep.values[proj.apply(s)]).collect();
    Cocycle1::new(big, values).map(|r| r.class())
}
