use std::ops::ControlFlow;
use std::sync::Arc;

use super::datum::{datum_validate, GlobalDatum, CHECK_FROBENIUS, CHECK_ROOTS};
use super::solve::{devissage_visit, hypotheses_hold, LocalTargets, Trace};
use crate::cohomology::{h1_enumerate, AbelianKernel, Cocycle1, Cocycle2, CohClass1};
use crate::error::{Error, Result};
use crate::lien::{is_neutral, ExtensionCocycle, Lien, LienContext};

/// A global splitting of a locally neutral class.
#[derive(Clone, Debug)]
pub struct HasseCertificate {
    /// Homomorphism `Γ -> Aut(G)` over `κ` giving the Γ-group `G_0`.
    pub f0: Vec<usize>,
    /// `ξ` with `ξ · (f0, 1)` equivalent to the input class.
    pub xi: Cocycle2,
    /// Class of `H^1(Γ, G_0/Z)` with `δ(α) = −[ξ]`.
    pub alpha: CohClass1,
    /// `k` with `transform(η, k) = (phi, 1)`.
    pub splitting: Vec<usize>,
    pub phi: Vec<usize>,
    /// `devissage` or `global_scan`.
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub enum HasseOutcome {
    Certificate(HasseCertificate, Trace),
    Obstruction(Trace),
}

impl HasseOutcome {
    pub fn trace(&self) -> &Trace {
        match self {
            HasseOutcome::Certificate(_, t) | HasseOutcome::Obstruction(t) => t,
        }
    }
}

/// Local splitting data: `k_v` with `transform(η|_v, k_v)` split.
fn local_witness(
    eta_v: &ExtensionCocycle,
    supplied: Option<&Vec<usize>>,
    name: &str,
) -> Result<Vec<usize>> {
    match supplied {
        Some(h) => {
            let n = eta_v.lien().gamma().order();
            if h.len() != n || h.iter().any(|&x| x >= eta_v.lien().g().order()) {
                return Err(Error::Input { detail: format!("witness at {name} has the wrong shape") });
            }
            if eta_v.transform(h).gvals().iter().any(|&v| v != 0) {
                return Err(Error::Input { detail: format!("witness at {name} does not split the class") });
            }
            Ok(h.clone())
        }
        None => is_neutral(eta_v)?
            .map(|w| w.h)
            .ok_or_else(|| Error::HypothesesNotMet { detail: format!("class is not neutral at {name}") }),
    }
}

/// Decides whether a locally neutral class is neutral, producing a global
/// splitting or reporting an obstruction. `witnesses` optionally gives
/// local `k_v` (indexed by position in the decomposition group).
pub fn hasse_solve(
    d: &GlobalDatum,
    eta: &ExtensionCocycle,
    witnesses: &[(String, Vec<usize>)],
) -> Result<HasseOutcome> {
    let lien = eta.lien().clone();
    if lien.gamma().as_ref() != d.gamma.as_ref() {
        return Err(Error::ContextMismatch { detail: "class is over a different gamma".into() });
    }
    let kernel_kappa = lien.kappa().kernel();
    if !d.n_prime.is_subset_of(&kernel_kappa) {
        return Err(Error::HypothesesNotMet { detail: "kappa is not trivial on n_prime".into() });
    }
    let report = datum_validate(d, lien.center_module());
    let needed = [CHECK_ROOTS, CHECK_FROBENIUS];
    if !report.passes(&needed) {
        return Err(Error::HypothesesNotMet { detail: report.failures(&needed).join("; ") });
    }
    for (name, _) in witnesses {
        d.place_index(name)?;
    }
    let mut local = Vec::new();
    for p in &d.places {
        let lien_v = Arc::new(lien.restrict(&p.decomposition)?);
        let eta_v = eta.restrict(&p.decomposition, &lien_v)?;
        let supplied = witnesses.iter().find(|(n, _)| *n == p.name).map(|(_, h)| h);
        local.push(local_witness(&eta_v, supplied, &p.name)?);
    }

    let mut trace = Trace::default();
    let homs = lien.split_homs()?;
    if homs.is_empty() {
        trace.push(0, lien.g().order(), "no_split_hom", "kappa has no homomorphic lift".into());
        return Ok(HasseOutcome::Obstruction(trace));
    }
    let lctx = LienContext::new(&lien)?;
    for f0 in homs {
        if let Some(cert) = try_f0(d, &lien, &lctx, eta, &local, f0, &mut trace)? {
            return Ok(HasseOutcome::Certificate(cert, trace));
        }
    }
    Ok(HasseOutcome::Obstruction(trace))
}

fn try_f0(
    d: &GlobalDatum,
    lien: &Arc<Lien>,
    lctx: &LienContext,
    eta: &ExtensionCocycle,
    local: &[Vec<usize>],
    f0: Vec<usize>,
    trace: &mut Trace,
) -> Result<Option<HasseCertificate>> {
    let (gm, g, z) = (lien.gamma(), lien.g(), lien.center());
    let eta0 = ExtensionCocycle::split(lien, f0.clone())?;
    let (xi, h1, h2) = lctx.difference_raw(&eta0, eta)?;
    // (f0, ξ) = transform(η, u)
    let u: Vec<usize> = gm.elements().map(|s| g.mul(g.inv(h1[s]), h2[s])).collect();
    let g0 = lien.action_of(&f0);
    let kernel = AbelianKernel::new(&g0, z)?;
    let q = kernel.h_ctx().clone();

    let mut targets = Vec::new();
    for (v, p) in d.places.iter().enumerate() {
        let e = p.decomposition.elements();
        let vals = e
            .iter()
            .enumerate()
            .map(|(i, &s)| kernel.projection().apply(g.mul(local[v][i], g.inv(u[s]))))
            .collect();
        let psi = Cocycle1::new(&q.restrict(&p.decomposition)?, vals)?;
        targets.push((v, psi.class()));
    }
    let targets = LocalTargets::from_entries(targets);

    // α works when θ(b) + ξ is a coboundary dω; then w = ω^-1 b splits (f0, ξ).
    let h2z = lctx.center_h2();
    let attempt = |alpha: &Cocycle1| -> Result<Option<Vec<usize>>> {
        let ob = kernel.obstruction(alpha)?;
        let theta = ob.cocycle.with_ctx(lien.center_module());
        let Some(omega) = h2z.coboundary_witness(&theta.add(&xi)?)? else { return Ok(None) };
        let w: Vec<usize> = gm.elements().map(|s| g.mul(g.inv(z.elements()[omega[s]]), ob.lift[s])).collect();
        Ok(Some(gm.elements().map(|s| g.mul(w[s], u[s])).collect()))
    };

    let order = g.order();
    let mut found: Option<(CohClass1, Vec<usize>, &'static str)> = None;
    if hypotheses_hold(d, &q) {
        let _ = devissage_visit(d, trace, &q, &targets, &mut |trace, alpha| {
            match attempt(alpha)? {
                Some(k) => {
                    found = Some((alpha.class(), k, "devissage"));
                    Ok(ControlFlow::Break(()))
                }
                None => {
                    trace.push(0, order, "delta_mismatch", format!("{:?}", alpha.values()));
                    Ok(ControlFlow::Continue(()))
                }
            }
        })?;
    } else {
        trace.push(0, order, "skip_devissage", "hypotheses fail for G0/Z".into());
    }
    if found.is_none() {
        trace.push(0, order, "global_scan", format!("f0 = {f0:?}"));
        for alpha in h1_enumerate(&q)? {
            if let Some(k) = attempt(alpha.rep())? {
                found = Some((alpha, k, "global_scan"));
                break;
            }
        }
    }
    let Some((alpha, k, method)) = found else {
        trace.push(0, order, "f0_exhausted", format!("f0 = {f0:?}"));
        return Ok(None);
    };
    let t = eta.transform(&k);
    if t.gvals().iter().any(|&v| v != 0) {
        return Err(Error::Input { detail: "internal: assembled splitting does not verify".into() });
    }
    Ok(Some(HasseCertificate { f0, xi, alpha, splitting: k, phi: t.phi().to_vec(), method }))
}
