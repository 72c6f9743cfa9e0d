use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{validate_chi, GammaAction};
use crate::error::{Error, Result};
use crate::group::{prime_factors, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceKind {
    Finite,
    Archimedean,
    DividesN,
}

impl PlaceKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "finite" => Ok(PlaceKind::Finite),
            "archimedean" => Ok(PlaceKind::Archimedean),
            "divides_n" => Ok(PlaceKind::DividesN),
            _ => Err(Error::Input { detail: format!("unknown place kind {s:?}") }),
        }
    }
}

/// A place, given by its decomposition and inertia subgroups of Γ.
#[derive(Clone, Debug)]
pub struct PlaceSpec {
    pub name: String,
    pub kind: PlaceKind,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    pub frobenius: usize,
    pub tau: Option<usize>,
    pub q_mod_n: u64,
    /// Subgroups of Γ contained in the decomposition group.
    subgroups: Vec<Subgroup>,
}

/// Per-subgroup data used by the local predicates.
#[derive(Clone, Debug)]
pub(crate) struct LocalSubgroup<'a> {
    pub sub: &'a Subgroup,
    /// `Δ ⊴ Γ_v` with `Γ_v / Δ` cyclic.
    pub normal_cyclic_quotient: bool,
    /// `Δ · I_v = Γ_v`.
    pub covers_with_inertia: bool,
}

impl PlaceSpec {
    pub fn new(
        gamma: &FiniteGroup,
        name: impl Into<String>,
        kind: PlaceKind,
        decomposition: &[usize],
        inertia: &[usize],
        frobenius: usize,
        tau: Option<usize>,
        q_mod_n: u64,
    ) -> Result<Self> {
        let name = name.into();
        let bad = |detail: String| Error::Input { detail: format!("place {name}: {detail}") };
        let decomposition = Subgroup::new(gamma, decomposition).map_err(|e| bad(format!("decomposition: {e}")))?;
        let inertia = Subgroup::new(gamma, inertia).map_err(|e| bad(format!("inertia: {e}")))?;
        if !inertia.is_subset_of(&decomposition) {
            return Err(bad("inertia is not inside the decomposition group".into()));
        }
        let dv = decomposition.as_group(gamma);
        let inertia_in_dv = Subgroup::new(&dv, &to_positions(&decomposition, &inertia)).expect("subgroup");
        if !inertia_in_dv.is_normal_in(&dv) {
            return Err(bad("inertia is not normal in the decomposition group".into()));
        }
        if !decomposition.contains(frobenius) {
            return Err(bad("frobenius lies outside the decomposition group".into()));
        }
        let mut gens = inertia.elements().to_vec();
        gens.push(frobenius);
        if gamma.closure(&gens).iter().filter(|&&b| b).count() != decomposition.order() {
            return Err(bad("frobenius does not generate the decomposition group modulo inertia".into()));
        }
        if let Some(t) = tau {
            if !inertia.contains(t) || gamma.closure(&[t]).iter().filter(|&&b| b).count() != inertia.order() {
                return Err(bad("tau does not generate the inertia group".into()));
            }
        }
        if kind == PlaceKind::Archimedean && (decomposition.order() > 2 || inertia != decomposition) {
            return Err(bad("archimedean places need |decomposition| <= 2 and inertia = decomposition".into()));
        }
        let subgroups = dv
            .all_subgroups()
            .into_iter()
            .map(|s| {
                let mask: Vec<bool> = (0..gamma.order()).map(|x| decomposition.position(x).is_some_and(|p| s.contains(p))).collect();
                Subgroup::new(gamma, &elements_of_mask(&mask)).expect("subgroup")
            })
            .collect();
        Ok(PlaceSpec { name, kind, decomposition, inertia, frobenius, tau, q_mod_n, subgroups })
    }

    pub(crate) fn local_subgroups<'a>(&'a self, gamma: &FiniteGroup) -> Vec<LocalSubgroup<'a>> {
        let dv = &self.decomposition;
        self.subgroups
            .iter()
            .map(|sub| {
                let normal = dv.elements().iter().all(|&x| sub.elements().iter().all(|&y| sub.contains(gamma.conj(x, y))));
                let cyclic = normal
                    && dv.elements().iter().any(|&x| {
                        let mut gens = sub.elements().to_vec();
                        gens.push(x);
                        gamma.closure(&gens).iter().filter(|&&b| b).count() == dv.order()
                    });
                let inter = sub.intersection(&self.inertia).order();
                let covers = sub.order() * self.inertia.order() == dv.order() * inter;
                LocalSubgroup { sub, normal_cyclic_quotient: cyclic, covers_with_inertia: covers }
            })
            .collect()
    }
}

fn to_positions(outer: &Subgroup, inner: &Subgroup) -> Vec<usize> {
    inner.elements().iter().map(|&x| outer.position(x).expect("subset")).collect()
}

fn elements_of_mask(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// The finite stand-in for an absolute Galois group with places.
#[derive(Clone, Debug)]
pub struct GlobalDatum {
    pub gamma: Arc<FiniteGroup>,
    pub n: u64,
    pub chi: Vec<u64>,
    pub n_prime: Subgroup,
    pub n_l: Subgroup,
    pub places: Vec<PlaceSpec>,
}

impl GlobalDatum {
    pub fn new(
        gamma: Arc<FiniteGroup>,
        n: u64,
        chi: Vec<u64>,
        n_prime: Subgroup,
        n_l: Subgroup,
        places: Vec<PlaceSpec>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input { detail: "n must be positive".into() });
        }
        validate_chi(&gamma, n, &chi)?;
        for (what, s) in [("n_prime", &n_prime), ("n_L", &n_l)] {
            if s.parent_order() != gamma.order() {
                return Err(Error::Input { detail: format!("{what} is not a subgroup of gamma") });
            }
            if !s.is_normal_in(&gamma) {
                return Err(Error::NotNormal { detail: format!("{what} is not normal in gamma") });
            }
        }
        if !n_l.is_subset_of(&n_prime) {
            return Err(Error::Input { detail: "n_L is not contained in n_prime".into() });
        }
        if n_l.elements().iter().any(|&s| chi[s] % n != 1 % n) {
            return Err(Error::Input { detail: "chi is not trivial on n_L".into() });
        }
        let mut names = std::collections::BTreeSet::new();
        for p in &places {
            if !names.insert(p.name.clone()) {
                return Err(Error::Input { detail: format!("duplicate place {}", p.name) });
            }
        }
        let chi = chi.into_iter().map(|c| c % n).collect();
        Ok(GlobalDatum { gamma, n, chi, n_prime, n_l, places })
    }

    pub fn place_index(&self, name: &str) -> Result<usize> {
        self.places
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::PlaceUnknown { name: name.to_string() })
    }

    /// Places with `Γ_v ⊆ N_L`, `q ≡ 1 mod n`, finite and prime to `n`.
    pub fn is_p_place(&self, v: usize) -> bool {
        let p = &self.places[v];
        p.kind == PlaceKind::Finite && p.q_mod_n % self.n == 1 % self.n && p.decomposition.is_subset_of(&self.n_l)
    }

    pub fn p_places(&self) -> Vec<usize> {
        (0..self.places.len()).filter(|&v| self.is_p_place(v)).collect()
    }

    /// `χ mod ℓ` is nontrivial on `N'` for every prime `ℓ | n`.
    pub fn roots_of_unity_condition(&self) -> Vec<(u64, bool)> {
        prime_factors(self.n as usize)
            .into_iter()
            .map(|l| {
                let l = l as u64;
                (l, self.n_prime.elements().iter().any(|&s| self.chi[s] % l != 1 % l))
            })
            .collect()
    }

    /// Every cyclic subgroup of Γ occurs as a decomposition group with
    /// trivial inertia.
    pub fn is_chebotarev_complete(&self) -> bool {
        self.gamma.elements().all(|x| {
            let c = Subgroup::new(&self.gamma, &elements_of_mask(&self.gamma.closure(&[x]))).expect("cyclic");
            self.places.iter().any(|p| p.decomposition == c && p.inertia.is_trivial())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the hypothesis checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub p_places: Vec<String>,
    pub chebotarev_complete: bool,
    /// `N'/N_L` is abelian (advisory only).
    pub n_prime_over_n_l_abelian: bool,
}

impl ValidationReport {
    pub fn passes(&self, names: &[&str]) -> bool {
        self.checks.iter().filter(|c| names.contains(&c.name.as_str())).all(|c| c.pass)
    }

    pub fn failures(&self, names: &[&str]) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| names.contains(&c.name.as_str()) && !c.pass)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const CHECK_SPLITTING: &str = "a_splitting_field";
pub const CHECK_ROOTS: &str = "b_roots_of_unity";
pub const CHECK_FROBENIUS: &str = "c_frobenius_chi";
pub const CHECK_EXPONENT: &str = "exponent_divides_n";

/// Checks the standing hypotheses of the local-global results for a
/// Γ-group `G` over the datum.
pub fn datum_validate(d: &GlobalDatum, action: &GammaAction) -> ValidationReport {
    let mut checks = Vec::new();
    let same_gamma = action.gamma().as_ref() == d.gamma.as_ref();
    let moving: Vec<usize> = d
        .n_prime
        .elements()
        .iter()
        .copied()
        .filter(|&s| !same_gamma || action.perms()[s].iter().enumerate().any(|(i, &y)| i != y))
        .collect();
    checks.push(CheckResult {
        name: CHECK_SPLITTING.into(),
        pass: same_gamma && moving.is_empty(),
        detail: if !same_gamma {
            "action is over a different gamma".into()
        } else if moving.is_empty() {
            "n_prime acts trivially".into()
        } else {
            format!("n_prime elements acting nontrivially: {moving:?}")
        },
    });
    let roots = d.roots_of_unity_condition();
    let bad: Vec<u64> = roots.iter().filter(|(_, ok)| !ok).map(|(l, _)| *l).collect();
    checks.push(CheckResult {
        name: CHECK_ROOTS.into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "chi mod l is nontrivial on n_prime for every prime l | n".into()
        } else {
            format!("chi mod l is trivial on n_prime for l in {bad:?}")
        },
    });
    let mut frob_bad = Vec::new();
    for p in &d.places {
        if p.kind == PlaceKind::Finite && d.chi[p.frobenius] % d.n != p.q_mod_n % d.n {
            frob_bad.push(p.name.clone());
        }
    }
    checks.push(CheckResult {
        name: CHECK_FROBENIUS.into(),
        pass: frob_bad.is_empty(),
        detail: if frob_bad.is_empty() {
            "chi(frobenius) = q mod n at every finite place".into()
        } else {
            format!("mismatch at {frob_bad:?}")
        },
    });
    let e = action.target().exponent() as u64;
    checks.push(CheckResult {
        name: CHECK_EXPONENT.into(),
        pass: d.n % e == 0,
        detail: format!("exponent {e}, n = {}", d.n),
    });
    let quotient_abelian = d
        .n_prime
        .elements()
        .iter()
        .all(|&a| d.n_prime.elements().iter().all(|&b| d.n_l.contains(d.gamma.commutator(a, b))));
    ValidationReport {
        checks,
        p_places: d.p_places().into_iter().map(|v| d.places[v].name.clone()).collect(),
        chebotarev_complete: d.is_chebotarev_complete(),
        n_prime_over_n_l_abelian: quotient_abelian,
    }
}

/// One unramified place for every cyclic subgroup of Γ, with Frobenius the
/// least generator and `q ≡ χ(Frobenius)`. Names are `u<generator>`.
pub fn unramified_places(gamma: &FiniteGroup, n: u64, chi: &[u64]) -> Result<Vec<PlaceSpec>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in gamma.elements() {
        let c = elements_of_mask(&gamma.closure(&[x]));
        if !seen.insert(c.clone()) {
            continue;
        }
        out.push(PlaceSpec::new(gamma, format!("u{x}"), PlaceKind::Finite, &c, &[0], x, None, chi[x] % n)?);
    }
    Ok(out)
}
