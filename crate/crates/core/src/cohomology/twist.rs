use super::{Cocycle1, CohClass1, GammaAction};
use crate::error::{Error, Result};

/// `σ * x = op(σ, σ(x))`; validated as an action.
pub fn twist_action_by(ctx: &GammaAction, op: impl Fn(usize, usize) -> usize) -> Result<GammaAction> {
    let perms = ctx
        .gamma()
        .elements()
        .map(|s| ctx.target().elements().map(|x| op(s, ctx.act(s, x))).collect())
        .collect();
    GammaAction::new(ctx.gamma().clone(), ctx.target().clone(), perms)
        .map_err(|e| Error::CocycleInvalid { detail: format!("twisted action is invalid: {e}") })
}

/// The inner twist `σ * x = c_σ σ(x) c_σ^-1` by a cocycle with values in
/// the target itself.
pub fn twist_action(c: &Cocycle1) -> Result<GammaAction> {
    let g = c.ctx().target().clone();
    twist_action_by(c.ctx(), |s, y| g.conj(c.at(s), y))
}

/// The bijection `H^1(Γ, cG) -> H^1(Γ, G)`, `a' -> a'_σ c_σ`.
#[derive(Clone, Debug)]
pub struct TwistBijection {
    base: GammaAction,
    twisted: GammaAction,
    c: Cocycle1,
}

pub fn twist_bijection(c: &Cocycle1) -> Result<TwistBijection> {
    let twisted = twist_action(c)?;
    Ok(TwistBijection { base: c.ctx().clone(), twisted, c: c.clone() })
}

impl TwistBijection {
    pub fn base(&self) -> &GammaAction {
        &self.base
    }

    pub fn twisted(&self) -> &GammaAction {
        &self.twisted
    }

    pub fn cocycle(&self) -> &Cocycle1 {
        &self.c
    }

    /// Twisted cocycle `a'` to `σ -> a'_σ c_σ`.
    pub fn forward_cocycle(&self, a: &Cocycle1) -> Result<Cocycle1> {
        a.ctx().require_same(&self.twisted, "cocycle is not over the twisted action")?;
        let g = self.base.target();
        let values = a.values().iter().enumerate().map(|(s, &v)| g.mul(v, self.c.at(s))).collect();
        Ok(Cocycle1::new_unchecked(&self.base, values))
    }

    /// Cocycle `a` over the base to `σ -> a_σ c_σ^-1`.
    pub fn backward_cocycle(&self, a: &Cocycle1) -> Result<Cocycle1> {
        a.ctx().require_same(&self.base, "cocycle is not over the base action")?;
        let g = self.base.target();
        let values = a.values().iter().enumerate().map(|(s, &v)| g.mul(v, g.inv(self.c.at(s)))).collect();
        Ok(Cocycle1::new_unchecked(&self.twisted, values))
    }

    pub fn forward(&self, a: &CohClass1) -> Result<CohClass1> {
        self.forward_cocycle(a.rep()).map(|c| c.class())
    }

    pub fn backward(&self, a: &CohClass1) -> Result<CohClass1> {
        self.backward_cocycle(a.rep()).map(|c| c.class())
    }
}
