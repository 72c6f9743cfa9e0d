use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::datum::{datum_validate, GlobalDatum, CHECK_EXPONENT, CHECK_FROBENIUS, CHECK_ROOTS, CHECK_SPLITTING};
use super::places::{flags_at, localize_at, require_gamma, LocalizedClass};
use crate::cohomology::{
    h1_enumerate, restrict_class, springer_obstruction, twist_bijection, AbelianKernel, Cocycle1, CohClass1,
    GammaAction,
};
use crate::error::{Error, Result};
use crate::group::{prime_factors, Subgroup};

const TRACE_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub depth: usize,
    pub order: usize,
    pub step: String,
    pub detail: String,
}

/// Search log, capped at a fixed number of events.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub dropped: usize,
}

impl Trace {
    pub(crate) fn push(&mut self, depth: usize, order: usize, step: &str, detail: String) {
        if self.events.len() < TRACE_LIMIT {
            self.events.push(TraceEvent { depth, order, step: step.into(), detail });
        } else {
            self.dropped += 1;
        }
    }
}

/// Prescribed local classes `β_v` at a finite set `S` of places.
#[derive(Clone, Debug, Default)]
pub struct LocalTargets {
    targets: Vec<(usize, CohClass1)>,
}

impl LocalTargets {
    pub fn empty() -> Self {
        LocalTargets::default()
    }

    /// Each entry gives a place and cocycle values over its decomposition
    /// group (listed in increasing element order).
    pub fn new(d: &GlobalDatum, ctx: &GammaAction, entries: &[(String, Vec<usize>)]) -> Result<Self> {
        require_gamma(d, ctx)?;
        let mut targets = Vec::new();
        for (name, values) in entries {
            let v = d.place_index(name)?;
            if targets.iter().any(|(w, _)| *w == v) {
                return Err(Error::Input { detail: format!("place {name} given twice") });
            }
            let local = ctx.restrict(&d.places[v].decomposition)?;
            targets.push((v, Cocycle1::new(&local, values.clone())?.class()));
        }
        targets.sort_by_key(|(v, _)| *v);
        Ok(LocalTargets { targets })
    }

    /// Targets taken from the localizations of a global class.
    pub fn from_global(d: &GlobalDatum, c: &CohClass1, places: &[usize]) -> Result<Self> {
        require_gamma(d, c.ctx())?;
        let mut targets = places
            .iter()
            .map(|&v| Ok((v, restrict_class(c, &d.places[v].decomposition)?)))
            .collect::<Result<Vec<_>>>()?;
        targets.sort_by_key(|(v, _)| *v);
        targets.dedup_by_key(|(v, _)| *v);
        Ok(LocalTargets { targets })
    }

    pub(crate) fn from_entries(mut targets: Vec<(usize, CohClass1)>) -> Self {
        targets.sort_by_key(|(v, _)| *v);
        LocalTargets { targets }
    }

    pub fn entries(&self) -> &[(usize, CohClass1)] {
        &self.targets
    }

    pub fn contains(&self, v: usize) -> bool {
        self.targets.iter().any(|(w, _)| *w == v)
    }

    fn push_forward(&self, d: &GlobalDatum, k: &AbelianKernel) -> Result<LocalTargets> {
        let mut targets = Vec::new();
        for (v, c) in &self.targets {
            let local = k.h_ctx().restrict(&d.places[*v].decomposition)?;
            let vals = c.rep().values().iter().map(|&x| k.projection().apply(x)).collect();
            targets.push((*v, Cocycle1::new_unchecked(&local, vals).class()));
        }
        Ok(LocalTargets { targets })
    }
}

/// The first condition a candidate violates, if any.
pub(crate) fn first_failure(d: &GlobalDatum, targets: &LocalTargets, c: &Cocycle1) -> Result<Option<String>> {
    for (v, beta) in &targets.targets {
        if restrict_class(&c.class(), &d.places[*v].decomposition)? != *beta {
            return Ok(Some(format!("{}: local class differs from target", d.places[*v].name)));
        }
    }
    for v in 0..d.places.len() {
        if targets.contains(v) {
            continue;
        }
        let f = flags_at(d, v, c);
        let name = &d.places[v].name;
        if !f.cyclic {
            return Ok(Some(format!("{name}: not cyclic")));
        }
        if f.ramified && !f.totally_ramified {
            return Ok(Some(format!("{name}: ramified but not totally ramified")));
        }
        if f.ramified && !d.is_p_place(v) {
            return Ok(Some(format!("{name}: ramified outside P")));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub class: CohClass1,
    pub per_place: Vec<LocalizedClass>,
    pub control: Option<ControlReport>,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(Solution, Trace),
    Infeasible(Trace),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solved(s, _) => Some(s),
            SolveOutcome::Infeasible(_) => None,
        }
    }

    pub fn trace(&self) -> &Trace {
        match self {
            SolveOutcome::Solved(_, t) | SolveOutcome::Infeasible(t) => t,
        }
    }
}

/// Whether `G` is an elementary abelian ℓ-group with no proper nonzero
/// Γ-stable subgroup. Returns the reason otherwise.
pub(crate) fn simplicity_failure(ctx: &GammaAction) -> Option<String> {
    let g = ctx.target();
    if g.order() == 1 {
        return Some("module is trivial".into());
    }
    if !g.is_abelian() {
        return Some("module is not abelian".into());
    }
    let primes = prime_factors(g.order());
    if primes.len() != 1 || g.exponent() != primes[0] {
        return Some("module is not elementary abelian".into());
    }
    for x in 1..g.order() {
        let orbit: Vec<usize> = ctx.gamma().elements().map(|s| ctx.act(s, x)).collect();
        let span = g.closure(&orbit).iter().filter(|&&b| b).count();
        if span != g.order() {
            return Some(format!("element {x} generates a proper submodule of order {span}"));
        }
    }
    None
}

fn standing_hypotheses(d: &GlobalDatum, ctx: &GammaAction) -> Result<()> {
    let report = datum_validate(d, ctx);
    let needed = [CHECK_SPLITTING, CHECK_ROOTS, CHECK_FROBENIUS, CHECK_EXPONENT];
    if !report.passes(&needed) {
        return Err(Error::HypothesesNotMet { detail: report.failures(&needed).join("; ") });
    }
    Ok(())
}

type Visitor<'a> = dyn FnMut(&mut Trace, &Cocycle1) -> Result<ControlFlow<()>> + 'a;

/// Exhaustive scan of `H^1(Γ, G)` in canonical order.
fn scan(
    d: &GlobalDatum,
    trace: &mut Trace,
    depth: usize,
    ctx: &GammaAction,
    targets: &LocalTargets,
    f: &mut Visitor<'_>,
) -> Result<ControlFlow<()>> {
    let order = ctx.target().order();
    for c in h1_enumerate(ctx)? {
        match first_failure(d, targets, c.rep())? {
            Some(why) => trace.push(depth, order, "reject", why),
            None => {
                if f(trace, c.rep())?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// `A = {x ∈ D : x^ℓ = 1}` for the last nontrivial derived subgroup `D`
/// and the least prime `ℓ | |D|`.
fn choose_kernel(ctx: &GammaAction) -> Result<AbelianKernel> {
    let g = ctx.target();
    let series = g.derived_series();
    let last = series.iter().rev().find(|s| !s.is_trivial()).expect("nontrivial group");
    let ell = prime_factors(last.order())[0];
    let elems: Vec<usize> =
        last.elements().iter().copied().filter(|&x| g.pow(x, ell as u64) == 0).collect();
    AbelianKernel::new(ctx, &Subgroup::new(g, &elems)?)
}

/// Visits every class of `H^1(Γ, G)` satisfying the local conditions,
/// each exactly once.
fn visit(
    d: &GlobalDatum,
    trace: &mut Trace,
    depth: usize,
    ctx: &GammaAction,
    targets: &LocalTargets,
    f: &mut Visitor<'_>,
) -> Result<ControlFlow<()>> {
    let order = ctx.target().order();
    if order == 1 || simplicity_failure(ctx).is_none() {
        trace.push(depth, order, "scan", "base module".into());
        return scan(d, trace, depth, ctx, targets, f);
    }
    let kernel = choose_kernel(ctx)?;
    trace.push(depth, order, "devissage", format!("kernel of order {}", kernel.subgroup().order()));
    let pushed = targets.push_forward(d, &kernel)?;
    let mut inner = |trace: &mut Trace, gamma: &Cocycle1| -> Result<ControlFlow<()>> {
        let ob = springer_obstruction(&kernel, gamma)?;
        let Some(b0) = ob.lifted(&kernel)? else {
            trace.push(depth, order, "obstructed", format!("{:?}", gamma.values()));
            return Ok(ControlFlow::Continue(()));
        };
        let bij = twist_bijection(&b0)?;
        let (a_ctx, embed) = bij.twisted().sub_action(kernel.subgroup())?;
        let mut seen = BTreeSet::new();
        for a in h1_enumerate(&a_ctx)? {
            let vals = a.rep().values().iter().map(|&x| embed[x]).collect();
            let alpha = bij.forward_cocycle(&Cocycle1::new_unchecked(bij.twisted(), vals))?;
            let class = alpha.class();
            if !seen.insert(class.clone()) {
                continue;
            }
            match first_failure(d, targets, class.rep())? {
                Some(why) => trace.push(depth, order, "reject", why),
                None => {
                    if f(trace, class.rep())?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
        trace.push(depth, order, "fiber_exhausted", format!("{:?}", gamma.values()));
        Ok(ControlFlow::Continue(()))
    };
    visit(d, trace, depth + 1, kernel.h_ctx(), &pushed, &mut inner)
}

fn finish(d: &GlobalDatum, found: Option<(CohClass1, Option<ControlReport>)>, trace: Trace) -> Result<SolveOutcome> {
    match found {
        None => Ok(SolveOutcome::Infeasible(trace)),
        Some((class, control)) => {
            let per_place = (0..d.places.len()).map(|v| localize_at(d, v, class.rep())).collect::<Result<_>>()?;
            Ok(SolveOutcome::Solved(Solution { class, per_place, control }, trace))
        }
    }
}

/// Least class of `H^1(Γ, A)` with the prescribed localizations on `S` and
/// admissible localizations elsewhere, for a simple ℓ-torsion module `A`.
pub fn simple_module_solve(d: &GlobalDatum, ctx: &GammaAction, targets: &LocalTargets) -> Result<SolveOutcome> {
    require_gamma(d, ctx)?;
    if let Some(why) = simplicity_failure(ctx) {
        return Err(Error::NotSimple { detail: why });
    }
    standing_hypotheses(d, ctx)?;
    let mut trace = Trace::default();
    let mut found = None;
    let _ = scan(d, &mut trace, 0, ctx, targets, &mut |_, c| {
        found = Some((c.class(), None));
        Ok(ControlFlow::Break(()))
    })?;
    finish(d, found, trace)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DevissageOptions {
    /// Reject solutions whose splitting group fails the roots of unity
    /// condition, and keep searching.
    pub enforce_control: bool,
}

/// Solves the local-global problem for a solvable Γ-group by descending
/// through abelian kernels of its derived series.
pub fn devissage_solve(
    d: &GlobalDatum,
    ctx: &GammaAction,
    targets: &LocalTargets,
    opts: DevissageOptions,
) -> Result<SolveOutcome> {
    require_gamma(d, ctx)?;
    if !ctx.target().is_solvable() {
        return Err(Error::NotSolvable);
    }
    standing_hypotheses(d, ctx)?;
    let mut trace = Trace::default();
    let mut found = None;
    let _ = visit(d, &mut trace, 0, ctx, targets, &mut |trace, c| {
        // Independent re-check of every condition before accepting.
        if let Some(why) = first_failure(d, targets, c)? {
            return Err(Error::Input { detail: format!("internal: accepted candidate fails {why}") });
        }
        let control = control_splitting(d, &c.class(), &[])?;
        if opts.enforce_control && !control.roots_ok() {
            trace.push(0, ctx.target().order(), "control_failed", format!("{:?}", c.values()));
            return Ok(ControlFlow::Continue(()));
        }
        found = Some((c.class(), Some(control)));
        Ok(ControlFlow::Break(()))
    })?;
    finish(d, found, trace)
}

/// Visits all solutions in search order. Used by the Hasse driver.
pub(crate) fn devissage_visit(
    d: &GlobalDatum,
    trace: &mut Trace,
    ctx: &GammaAction,
    targets: &LocalTargets,
    f: &mut Visitor<'_>,
) -> Result<ControlFlow<()>> {
    visit(d, trace, 0, ctx, targets, f)
}

pub(crate) fn hypotheses_hold(d: &GlobalDatum, ctx: &GammaAction) -> bool {
    ctx.target().is_solvable() && standing_hypotheses(d, ctx).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlReport {
    /// Kernel of `α` restricted to `N'`.
    pub delta_prime: Vec<usize>,
    /// Normal core of `Δ'` in Γ.
    pub delta_double_prime: Vec<usize>,
    /// For each prime ℓ: whether `χ mod ℓ` is nontrivial on `Δ''`.
    pub roots: Vec<(u64, bool)>,
}

impl ControlReport {
    pub fn roots_ok(&self) -> bool {
        self.roots.iter().all(|(_, ok)| *ok)
    }
}

/// Splitting data of a class: `α|_{N'}` must be a homomorphism. Primes
/// default to those dividing `n`.
pub fn control_splitting(d: &GlobalDatum, alpha: &CohClass1, primes: &[u64]) -> Result<ControlReport> {
    require_gamma(d, alpha.ctx())?;
    let (gm, g) = (&d.gamma, alpha.ctx().target());
    let c = alpha.rep();
    let np = d.n_prime.elements();
    for &s in np {
        for &t in np {
            if c.at(gm.mul(s, t)) != g.mul(c.at(s), c.at(t)) {
                return Err(Error::NotHomOnSplittingGroup {
                    detail: format!("restriction fails at ({s}, {t})"),
                });
            }
        }
    }
    let kernel: Vec<usize> = np.iter().copied().filter(|&s| c.at(s) == 0).collect();
    let kernel = Subgroup::new(gm, &kernel)?;
    let core = gm.normal_core(&kernel)?;
    let primes: Vec<u64> = if primes.is_empty() {
        prime_factors(d.n as usize).into_iter().map(|p| p as u64).collect()
    } else {
        primes.to_vec()
    };
    let roots = primes
        .into_iter()
        .map(|l| (l, core.elements().iter().any(|&s| d.chi[s] % l != 1 % l)))
        .collect();
    Ok(ControlReport { delta_prime: kernel.elements().to_vec(), delta_double_prime: core.elements().to_vec(), roots })
}
