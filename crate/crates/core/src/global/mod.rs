//! A finite model of a number field with places: Γ with decomposition and
//! inertia subgroups, the cyclotomic character and the solvers built on it.

mod datum;
mod hasse;
mod places;
mod solve;

pub use datum::{
    datum_validate, unramified_places, CheckResult, GlobalDatum, PlaceKind, PlaceSpec, ValidationReport, CHECK_EXPONENT,
    CHECK_FROBENIUS, CHECK_ROOTS, CHECK_SPLITTING,
};
pub use hasse::{hasse_solve, HasseCertificate, HasseOutcome};
pub use places::{injectivity_on_p, localize, sha, weak_approx_check, Injectivity, LocalizedClass, ShaClasses, WeakApproximation};
pub use solve::{
    control_splitting, devissage_solve, simple_module_solve, ControlReport, DevissageOptions, LocalTargets,
    Solution, SolveOutcome, Trace, TraceEvent,
};
