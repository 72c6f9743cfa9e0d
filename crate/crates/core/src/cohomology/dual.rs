use std::collections::HashMap;
use std::sync::Arc;

use super::abelian::AbelianBasis;
use super::{h1_enumerate, CohClass1, GammaAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// An abelian Γ-module `A` together with a character `χ: Γ -> (Z/n)^×`
/// with `exponent(A) | n`, defining `A* = Hom(A, μ_n)`.
#[derive(Clone, Debug)]
pub struct DualModuleSpec {
    base: GammaAction,
    n: u64,
    chi: Vec<u64>,
}

impl DualModuleSpec {
    pub fn new(base: &GammaAction, n: u64, chi: Vec<u64>) -> Result<Self> {
        if let Some((a, b)) = base.target().first_noncommuting_pair() {
            return Err(Error::NotAbelian { a, b });
        }
        if n == 0 || n % base.target().exponent() as u64 != 0 {
            return Err(Error::Input { detail: format!("exponent of A does not divide {n}") });
        }
        validate_chi(base.gamma(), n, &chi)?;
        Ok(DualModuleSpec { base: base.clone(), n, chi: chi.into_iter().map(|c| c % n).collect() })
    }

    pub fn base(&self) -> &GammaAction {
        &self.base
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn chi(&self) -> &[u64] {
        &self.chi
    }
}

pub(crate) fn validate_chi(gamma: &FiniteGroup, n: u64, chi: &[u64]) -> Result<()> {
    if chi.len() != gamma.order() {
        return Err(Error::ChiNotHom { detail: format!("{} values for |gamma| = {}", chi.len(), gamma.order()) });
    }
    if chi[0] % n != 1 % n {
        return Err(Error::ChiNotHom { detail: "chi(1) != 1".into() });
    }
    for s in gamma.elements() {
        if crate::group::gcd(chi[s] as usize, n as usize) != 1 {
            return Err(Error::ChiNotHom { detail: format!("chi({s}) is not a unit mod {n}") });
        }
        for t in gamma.elements() {
            if chi[gamma.mul(s, t)] % n != chi[s] * chi[t] % n {
                return Err(Error::ChiNotHom { detail: format!("fails on ({s}, {t})") });
            }
        }
    }
    Ok(())
}

/// `A*` as a Γ-module: element `i` is the homomorphism `functions[i]`
/// (values in `Z/n` on every element of `A`), sorted lexicographically.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub ctx: GammaAction,
    pub functions: Vec<Vec<u64>>,
}

pub fn dual_module(spec: &DualModuleSpec) -> Result<DualModule> {
    let a = spec.base.target();
    let n = spec.n;
    let basis = AbelianBasis::new(a)?;
    // f(b_i) must be killed by the order of b_i.
    let choices: Vec<Vec<u64>> =
        basis.orders.iter().map(|&d| (0..d as u64).map(|k| k * (n / d as u64)).collect()).collect();
    let mut functions = Vec::new();
    let total: usize = choices.iter().map(|c| c.len()).product();
    for code in 0..total {
        let mut rest = code;
        let vals: Vec<u64> = choices
            .iter()
            .map(|c| {
                let v = c[rest % c.len()];
                rest /= c.len();
                v
            })
            .collect();
        let f: Vec<u64> = a
            .elements()
            .map(|x| basis.coords[x].iter().zip(&vals).map(|(&c, &v)| c as u64 * v).sum::<u64>() % n)
            .collect();
        functions.push(f);
    }
    functions.sort();
    let index: HashMap<&[u64], usize> = functions.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let m = functions.len();
    let mut table = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            let s: Vec<u64> = functions[i].iter().zip(&functions[j]).map(|(x, y)| (x + y) % n).collect();
            table[i * m + j] = index[s.as_slice()] as u32;
        }
    }
    let inverses = (0..m)
        .map(|i| {
            let s: Vec<u64> = functions[i].iter().map(|x| (n - x) % n).collect();
            index[s.as_slice()]
        })
        .collect();
    let dual = Arc::new(FiniteGroup::from_validated(m, table, inverses));
    let gm = spec.base.gamma();
    let perms = gm
        .elements()
        .map(|s| {
            let si = gm.inv(s);
            functions
                .iter()
                .map(|f| {
                    let g: Vec<u64> = a.elements().map(|x| spec.chi[s] * f[spec.base.act(si, x)] % n).collect();
                    index[g.as_slice()]
                })
                .collect()
        })
        .collect();
    let ctx = GammaAction::new(gm.clone(), dual, perms)?;
    Ok(DualModule { ctx, functions })
}

/// `H^1(Γ, A*)` for `(σ f)(a) = χ(σ) f(σ^-1 a)`.
pub fn dual_h1(spec: &DualModuleSpec) -> Result<(DualModule, Vec<CohClass1>)> {
    let d = dual_module(spec)?;
    let classes = h1_enumerate(&d.ctx)?;
    Ok((d, classes))
}
