use thiserror::Error;

/// Errors raised by the group, cohomology, lien, local and global layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("empty table")]
    Empty,
    #[error("product {row}*{col} = {value} is outside 0..{order}")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("element 0 is not a two-sided identity (fails at {element})")]
    NoIdentity { element: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal: {detail}")]
    NotNormal { detail: String },
    #[error("group is not abelian: {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },
    #[error("enumeration bound exceeded: {what} is {actual}, bound {bound}")]
    BoundExceeded { what: String, actual: usize, bound: usize },
    #[error("the given elements do not form a subgroup: {detail}")]
    NotSubgroup { detail: String },
    #[error("not a homomorphism: {detail}")]
    NotHom { detail: String },
    #[error("invalid action: {detail}")]
    ActionInvalid { detail: String },
    #[error("invalid cocycle: {detail}")]
    CocycleInvalid { detail: String },
    #[error("objects live over different contexts: {detail}")]
    ContextMismatch { detail: String },
    #[error("action does not factor through the quotient: {detail}")]
    ActionMismatch { detail: String },
    #[error("subgroup is not stable under the action: {detail}")]
    NotCharacteristic { detail: String },
    #[error("kernel is not abelian")]
    NotAbelianKernel,
    #[error("subgroup is not central: {detail}")]
    NotCentral { detail: String },
    #[error("character is not a homomorphism: {detail}")]
    ChiNotHom { detail: String },
    #[error("invalid lien: {detail}")]
    LienInvalid { detail: String },
    #[error("lien mismatch: {detail}")]
    LienMismatch { detail: String },
    #[error("extension classes cannot be compared: {detail}")]
    NotComparable { detail: String },
    #[error("base class is not neutral")]
    NotNeutralBase,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("local hypothesis violated: {detail}")]
    HypothesisViolated { detail: String },
    #[error("class is not totally ramified and cyclic: {detail}")]
    NotTotallyRamifiedCyclic { detail: String },
    #[error("unknown place {name}")]
    PlaceUnknown { name: String },
    #[error("module is not simple: {detail}")]
    NotSimple { detail: String },
    #[error("group is not solvable")]
    NotSolvable,
    #[error("hypotheses not met: {detail}")]
    HypothesesNotMet { detail: String },
    #[error("restriction to the splitting group is not a homomorphism: {detail}")]
    NotHomOnSplittingGroup { detail: String },
    #[error("invalid input: {detail}")]
    Input { detail: String },
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::Empty => "Empty",
            Error::NotClosed { .. } => "NotClosed",
            Error::NoIdentity { .. } => "NoIdentity",
            Error::NoInverse { .. } => "NoInverse",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotNormal { .. } => "NotNormal",
            Error::NotAbelian { .. } => "NotAbelian",
            Error::BoundExceeded { .. } => "BudgetExceeded",
            Error::NotSubgroup { .. } => "NotSubgroup",
            Error::NotHom { .. } => "NotHom",
            Error::ActionInvalid { .. } => "ActionInvalid",
            Error::CocycleInvalid { .. } => "CocycleInvalid",
            Error::ContextMismatch { .. } => "ContextMismatch",
            Error::ActionMismatch { .. } => "ActionMismatch",
            Error::NotCharacteristic { .. } => "NotCharacteristic",
            Error::NotAbelianKernel => "NotAbelianKernel",
            Error::NotCentral { .. } => "NotCentral",
            Error::ChiNotHom { .. } => "ChiNotHom",
            Error::LienInvalid { .. } => "LienInvalid",
            Error::LienMismatch { .. } => "LienMismatch",
            Error::NotComparable { .. } => "NotComparable",
            Error::NotNeutralBase => "NotNeutralBase",
            Error::NotSurjective => "NotSurjective",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::NotTotallyRamifiedCyclic { .. } => "NotTotallyRamifiedCyclic",
            Error::PlaceUnknown { .. } => "PlaceUnknown",
            Error::NotSimple { .. } => "NotSimple",
            Error::NotSolvable => "NotSolvable",
            Error::HypothesesNotMet { .. } => "HypothesesNotMet",
            Error::NotHomOnSplittingGroup { .. } => "NotHomOnSplittingGroup",
            Error::Input { .. } => "InvalidInput",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
