//! Nonabelian `H^1` and abelian `H^2` of finite Γ-groups.

mod abelian;
mod action;
mod dual;
mod h1;
mod h2;
mod obstruction;
mod twist;

pub use action::GammaAction;
pub use dual::{dual_h1, dual_module, DualModule, DualModuleSpec};
pub(crate) use dual::validate_chi;
pub use h1::{
    are_cohomologous, cocycles, h1_enumerate, inflate_class, restrict_class, restrict_cocycle, Cocycle1, CohClass1,
};
pub use h2::{coboundary, h2_abelian_enumerate, Cocycle2, H2Context};
pub use obstruction::{delta_central, springer_obstruction, AbelianKernel, Obstruction};
pub use twist::{twist_action, twist_action_by, twist_bijection, TwistBijection};

#[cfg(test)]
mod tests;
