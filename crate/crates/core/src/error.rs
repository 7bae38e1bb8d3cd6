use thiserror::Error;

use crate::lounesto::NullPattern;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spinor current J vanishes; the spinor is unclassifiable")]
    ZeroCurrent,

    #[error("nullness pattern {0} matches no Lounesto class")]
    UnknownPattern(NullPattern),

    #[error("sampler for class {class} exhausted {attempts} attempts")]
    SamplerExhausted { class: u8, attempts: usize },

    #[error("not a symmetry: image of {source_label} leaks into {leaked:?}")]
    NotASymmetry { source_label: String, leaked: Vec<(String, String)> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("both blocks are zero")]
    BothBlocksZero,

    #[error("zero spinor has no ray")]
    ZeroSpinor,

    #[error("spinors are linearly dependent")]
    LinearlyDependent,

    #[error("momentum is off shell: p·p - m² = {residual:e}")]
    OffShell { residual: f64 },

    #[error("massive input (m = {mass}); incompressibility is only asserted for m = 0")]
    MassiveInput { mass: f64 },

    #[error("integrator error estimate {estimate:e} exceeds budget {budget:e}")]
    StepTooLarge { estimate: f64, budget: f64 },

    #[error("invalid avatar map: {0}")]
    InvalidAvatar(String),

    #[error("internal consistency violated: {0}")]
    Inconsistent(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("mode mismatch: configuration asks for {expected} but values are {actual}")]
    ModeMismatch { expected: crate::algebra::Mode, actual: crate::algebra::Mode },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
