use std::collections::BTreeSet;

use serde::Serialize;

use super::datum::{datum_validate, GlobalDatum, CHECK_FROBENIUS, CHECK_ROOTS, CHECK_SPLITTING};
use crate::budget;
use crate::cohomology::{
    dual_h1, h1_enumerate, restrict_class, Cocycle1, Cocycle2, CohClass1, DualModuleSpec, GammaAction, H2Context,
};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::local::LocalFlags;

/// Restriction of a global class to a place, with its local flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedClass {
    pub place: String,
    pub class: CohClass1,
    pub flags: LocalFlags,
}

pub(crate) fn require_gamma(d: &GlobalDatum, ctx: &GammaAction) -> Result<()> {
    if ctx.gamma().as_ref() != d.gamma.as_ref() {
        return Err(Error::ContextMismatch { detail: "action is over a different gamma".into() });
    }
    Ok(())
}

/// Whether the restriction of `c` to `sub` is the trivial class.
pub(crate) fn trivial_on(c: &Cocycle1, sub: &Subgroup) -> bool {
    let ctx = c.ctx();
    let g = ctx.target();
    g.elements().any(|x| {
        let xi = g.inv(x);
        sub.elements().iter().all(|&s| c.at(s) == g.mul(x, g.inv(ctx.act(s, xi))))
    })
}

pub(crate) fn flags_at(d: &GlobalDatum, v: usize, c: &Cocycle1) -> LocalFlags {
    let p = &d.places[v];
    let unramified = trivial_on(c, &p.inertia);
    let subs = p.local_subgroups(&d.gamma);
    let killed: Vec<_> = subs.iter().filter(|s| trivial_on(c, s.sub)).collect();
    LocalFlags {
        unramified,
        ramified: !unramified,
        cyclic: killed.iter().any(|s| s.normal_cyclic_quotient),
        totally_ramified: killed.iter().any(|s| s.covers_with_inertia),
    }
}

pub(crate) fn localize_at(d: &GlobalDatum, v: usize, c: &Cocycle1) -> Result<LocalizedClass> {
    let p = &d.places[v];
    Ok(LocalizedClass {
        place: p.name.clone(),
        class: restrict_class(&c.class(), &p.decomposition)?,
        flags: flags_at(d, v, c),
    })
}

pub fn localize(d: &GlobalDatum, c: &CohClass1, place: &str) -> Result<LocalizedClass> {
    require_gamma(d, c.ctx())?;
    let v = d.place_index(place)?;
    localize_at(d, v, c.rep())
}

/// Classes of degree 1 or 2 that vanish at every place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShaClasses {
    Degree1(Vec<CohClass1>),
    Degree2(Vec<Cocycle2>),
}

impl ShaClasses {
    pub fn len(&self) -> usize {
        match self {
            ShaClasses::Degree1(v) => v.len(),
            ShaClasses::Degree2(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn sha(d: &GlobalDatum, ctx: &GammaAction, degree: u32) -> Result<ShaClasses> {
    require_gamma(d, ctx)?;
    match degree {
        1 => Ok(ShaClasses::Degree1(
            h1_enumerate(ctx)?
                .into_iter()
                .filter(|c| d.places.iter().all(|p| trivial_on(c.rep(), &p.decomposition)))
                .collect(),
        )),
        2 => {
            let global = H2Context::new(ctx)?;
            let locals = d
                .places
                .iter()
                .map(|p| {
                    let r = ctx.restrict(&p.decomposition)?;
                    Ok((p.decomposition.clone(), H2Context::new(&r)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut out = Vec::new();
            for xi in global.enumerate()? {
                let mut dead = true;
                for (sub, h2) in &locals {
                    let e = sub.elements();
                    let vals = e.iter().flat_map(|&a| e.iter().map(move |&b| (a, b))).map(|(a, b)| xi.at(a, b)).collect();
                    if !h2.is_coboundary(&Cocycle2::new_unchecked(h2.ctx(), vals))? {
                        dead = false;
                        break;
                    }
                }
                if dead {
                    out.push(xi);
                }
            }
            Ok(ShaClasses::Degree2(out))
        }
        _ => Err(Error::Input { detail: format!("degree must be 1 or 2, got {degree}") }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakApproximation {
    pub places: Vec<String>,
    pub image_size: usize,
    pub product_size: usize,
    /// Least tuple of local classes outside the image, if any.
    pub missing: Option<Vec<CohClass1>>,
}

impl WeakApproximation {
    pub fn surjective(&self) -> bool {
        self.missing.is_none()
    }
}

/// Compares the image of `H^1(Γ, G) -> ∏_{v ∈ S} H^1(Γ_v, G)` with the
/// whole product.
pub fn weak_approx_check(d: &GlobalDatum, ctx: &GammaAction, places: &[String]) -> Result<WeakApproximation> {
    require_gamma(d, ctx)?;
    let idx = places.iter().map(|p| d.place_index(p)).collect::<Result<Vec<_>>>()?;
    let local_sets = idx
        .iter()
        .map(|&v| h1_enumerate(&ctx.restrict(&d.places[v].decomposition)?))
        .collect::<Result<Vec<_>>>()?;
    let product_size = local_sets.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len())).unwrap_or(usize::MAX);
    budget::check("local class tuples", product_size, budget::current().max_nodes)?;
    let mut image = BTreeSet::new();
    for c in h1_enumerate(ctx)? {
        let tuple = idx
            .iter()
            .map(|&v| restrict_class(&c, &d.places[v].decomposition))
            .collect::<Result<Vec<_>>>()?;
        image.insert(tuple);
    }
    let mut missing = None;
    let mut counter = vec![0usize; idx.len()];
    'outer: loop {
        let tuple: Vec<CohClass1> = counter.iter().zip(&local_sets).map(|(&i, s)| s[i].clone()).collect();
        if !image.contains(&tuple) {
            missing = Some(tuple);
            break;
        }
        for k in (0..counter.len()).rev() {
            counter[k] += 1;
            if counter[k] < local_sets[k].len() {
                continue 'outer;
            }
            counter[k] = 0;
        }
        break;
    }
    Ok(WeakApproximation { places: places.to_vec(), image_size: image.len(), product_size, missing })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Injectivity {
    pub p_places: Vec<String>,
    pub injective: bool,
}

/// Checks that `H^1(Γ, A*) -> ∏_{v ∈ P} H^1(Γ_v, A*)` is injective.
/// Returns the least nonzero class in the kernel otherwise.
pub fn injectivity_on_p(d: &GlobalDatum, spec: &DualModuleSpec) -> Result<(Injectivity, Option<CohClass1>)> {
    require_gamma(d, spec.base())?;
    if spec.n() != d.n || spec.chi().iter().map(|c| c % d.n).ne(d.chi.iter().copied()) {
        return Err(Error::ContextMismatch { detail: "dual module uses a different n or chi".into() });
    }
    let report = datum_validate(d, spec.base());
    let needed = [CHECK_SPLITTING, CHECK_ROOTS, CHECK_FROBENIUS];
    if !report.passes(&needed) {
        return Err(Error::HypothesesNotMet { detail: report.failures(&needed).join("; ") });
    }
    let p = d.p_places();
    let (_, classes) = dual_h1(spec)?;
    let counterexample = classes
        .into_iter()
        .find(|c| !c.is_trivial() && p.iter().all(|&v| trivial_on(c.rep(), &d.places[v].decomposition)));
    let info = Injectivity {
        p_places: p.iter().map(|&v| d.places[v].name.clone()).collect(),
        injective: counterexample.is_none(),
    };
    Ok((info, counterexample))
}
