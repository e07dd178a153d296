use crate::polycore::Var;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("variable tag mismatch: left operand is in {left}, right operand is in {right}")]
    VarMismatch { left: Var, right: Var },

    #[error("polynomial degree {degree} exceeds the target power {n}")]
    DegreeExceedsN { degree: usize, n: u32 },

    #[error("brute-force enumeration capped at n <= {cap}, got n = {n}")]
    BruteForceCap { n: u32, cap: u32 },

    #[error("run length k must be at least 2, got {k}")]
    KTooSmall { k: u32 },

    #[error("precision must be at least 53 bits, got {bits}")]
    PrecisionTooLow { bits: u32 },

    #[error("root finding needs degree >= 1, got degree {degree:?}")]
    DegreeTooLow { degree: Option<usize> },

    #[error("root iteration did not converge after {iterations} iterations (max relative correction {max_correction:.3e})")]
    NonConvergence { iterations: u32, max_correction: f64 },

    #[error("root {index} failed residual certification: scaled residual {residual:.3e} exceeds threshold {threshold:.3e}")]
    ResidualCertification {
        index: usize,
        residual: f64,
        threshold: f64,
    },

    #[error("root set cardinality mismatch: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },

    #[error("confluent spectrum: characteristic roots are not pairwise distinct at z = ({z_re:.6}, {z_im:.6})")]
    ConfluentSpectrum { z_re: f64, z_im: f64 },

    #[error("linear system for the decomposition coefficients is singular")]
    SingularSystem,

    #[error("evaluation point p = 0 is a singularity of the closed-form reliability formula")]
    ZeroEvaluationPoint,

    #[error("target {target} lies inside the root-free gap (0, 4/3)")]
    TargetInGap { target: f64 },

    #[error("unboundedness scan failed at n = {n}: {source}")]
    ScanFailure {
        n: u32,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
