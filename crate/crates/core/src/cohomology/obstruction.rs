use super::{Cocycle1, Cocycle2, GammaAction, H2Context};
use crate::error::{Error, Result};
use crate::group::{GroupHom, Subgroup};

/// A Γ-stable abelian normal subgroup `A` of a Γ-group `G`, with the
/// induced actions on `A` and on `H = G/A`.
#[derive(Clone, Debug)]
pub struct AbelianKernel {
    g_ctx: GammaAction,
    a: Subgroup,
    a_ctx: GammaAction,
    h_ctx: GammaAction,
    proj: GroupHom,
}

impl AbelianKernel {
    pub fn new(ctx: &GammaAction, a: &Subgroup) -> Result<Self> {
        let g = ctx.target();
        if a.parent_order() != g.order() {
            return Err(Error::NotSubgroup { detail: "kernel is not a subgroup of the target".into() });
        }
        if !a.is_abelian_in(g) {
            return Err(Error::NotAbelianKernel);
        }
        if !a.is_normal_in(g) {
            return Err(Error::NotCharacteristic { detail: "kernel is not normal".into() });
        }
        let (a_ctx, _) = ctx.sub_action(a)?;
        let (h_ctx, proj) = ctx.quotient(a)?;
        Ok(AbelianKernel { g_ctx: ctx.clone(), a: a.clone(), a_ctx, h_ctx, proj })
    }

    pub fn g_ctx(&self) -> &GammaAction {
        &self.g_ctx
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.a
    }

    /// The (untwisted) action on `A`, indexed by position in `A`.
    pub fn a_ctx(&self) -> &GammaAction {
        &self.a_ctx
    }

    pub fn h_ctx(&self) -> &GammaAction {
        &self.h_ctx
    }

    pub fn projection(&self) -> &GroupHom {
        &self.proj
    }

    pub fn push_forward(&self, c: &Cocycle1) -> Result<Cocycle1> {
        c.ctx().require_same(&self.g_ctx, "cocycle is not over G")?;
        Ok(Cocycle1::new_unchecked(&self.h_ctx, c.values().iter().map(|&v| self.proj.apply(v)).collect()))
    }

    /// `A`-valued cocycle (over `a_ctx`) viewed in `G`.
    pub fn include(&self, c: &Cocycle1) -> Result<Cocycle1> {
        c.ctx().require_same(&self.a_ctx, "cocycle is not over A")?;
        Ok(Cocycle1::new_unchecked(&self.g_ctx, c.values().iter().map(|&v| self.a.elements()[v]).collect()))
    }

    /// Least-preimage lift of an `H`-valued cochain.
    pub fn least_lift(&self, c: &Cocycle1) -> Vec<usize> {
        c.values().iter().map(|&v| self.proj.least_preimage(v).expect("surjective")).collect()
    }

    /// The twisted module `σ * a = b_σ σ(a) b_σ^-1` on `A`.
    pub fn twisted_module(&self, b: &[usize]) -> GammaAction {
        let g = self.g_ctx.target();
        let perms = self
            .g_ctx
            .gamma()
            .elements()
            .map(|s| {
                self.a
                    .elements()
                    .iter()
                    .map(|&x| self.a.position(g.conj(b[s], self.g_ctx.act(s, x))).expect("normal"))
                    .collect()
            })
            .collect();
        GammaAction::new_unchecked(self.g_ctx.gamma().clone(), self.a_ctx.target().clone(), perms)
    }

    /// `(σ, τ) -> b_σ σ(b_τ) b_{στ}^-1` for an arbitrary lift `b` of `c`.
    pub fn obstruction_with_lift(&self, c: &Cocycle1, b: Vec<usize>) -> Result<Obstruction> {
        c.ctx().require_same(&self.h_ctx, "cocycle is not over G/A")?;
        let (gm, g) = (self.g_ctx.gamma(), self.g_ctx.target());
        if b.len() != gm.order() || b.iter().zip(c.values()).any(|(&x, &y)| x >= g.order() || self.proj.apply(x) != y) {
            return Err(Error::CocycleInvalid { detail: "not a lift of the cocycle".into() });
        }
        if b[0] != 0 {
            return Err(Error::CocycleInvalid { detail: "lift is not normalized".into() });
        }
        let module = self.twisted_module(&b);
        let n = gm.order();
        let mut values = vec![0; n * n];
        for s in gm.elements() {
            for t in gm.elements() {
                let v = g.mul(g.mul(b[s], self.g_ctx.act(s, b[t])), g.inv(b[gm.mul(s, t)]));
                values[s * n + t] = self.a.position(v).expect("lands in A");
            }
        }
        let cocycle = Cocycle2::new_unchecked(&module, values);
        Ok(Obstruction { module, cocycle, lift: b })
    }

    pub fn obstruction(&self, c: &Cocycle1) -> Result<Obstruction> {
        self.obstruction_with_lift(c, self.least_lift(c))
    }

    /// A cocycle of `G` over `c`, if one exists.
    pub fn lift(&self, c: &Cocycle1) -> Result<Option<Cocycle1>> {
        let ob = self.obstruction(c)?;
        ob.lifted(self)
    }
}

/// A lifting obstruction: a 2-cocycle of the twisted module together with
/// the set-theoretic lift that produced it.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub module: GammaAction,
    pub cocycle: Cocycle2,
    pub lift: Vec<usize>,
}

impl Obstruction {
    pub fn h2(&self) -> Result<H2Context> {
        H2Context::new(&self.module)
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.h2()?.is_coboundary(&self.cocycle)
    }

    /// Canonical representative of the obstruction class.
    pub fn class(&self) -> Result<Cocycle2> {
        self.h2()?.canonical(&self.cocycle)
    }

    /// With `dh = ξ`, `σ -> h_σ^-1 b_σ` is a cocycle of `G`.
    pub fn lifted(&self, kernel: &AbelianKernel) -> Result<Option<Cocycle1>> {
        let Some(h) = self.h2()?.coboundary_witness(&self.cocycle)? else { return Ok(None) };
        let g = kernel.g_ctx.target();
        let a = kernel.a.elements();
        let values = self.lift.iter().zip(&h).map(|(&b, &hv)| g.mul(g.inv(a[hv]), b)).collect();
        Ok(Some(Cocycle1::new(&kernel.g_ctx, values)?))
    }
}

/// The lifting obstruction of `c` in `H^2(Γ, cA)`.
pub fn springer_obstruction(kernel: &AbelianKernel, c: &Cocycle1) -> Result<Obstruction> {
    kernel.obstruction(c)
}

/// The connecting map `H^1(Γ, G/Z) -> H^2(Γ, Z)` for a central `Z`. The
/// result lives over the untwisted action on `Z`.
pub fn delta_central(kernel: &AbelianKernel, psi: &Cocycle1) -> Result<Obstruction> {
    let g = kernel.g_ctx.target();
    let center = g.center();
    if !kernel.a.is_subset_of(&center) {
        return Err(Error::NotCentral { detail: "kernel is not contained in the center".into() });
    }
    let mut ob = kernel.obstruction(psi)?;
    ob.module = kernel.a_ctx.clone();
    ob.cocycle = ob.cocycle.with_ctx(&ob.module);
    Ok(ob)
}
