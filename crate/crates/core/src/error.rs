//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by geometry, operator, and sampling routines.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// Coordinate list length is not 3 × n_particles.
    #[error("coordinate length {len} is not a positive multiple of 3")]
    BadCoordinateLength { len: usize },

    /// Mixed dimensions in a single expression.
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Particle index outside 0..n_particles.
    #[error("particle index {index} out of range for {n_particles} particles")]
    ParticleIndex { index: usize, n_particles: usize },

    /// An operation on a particle pair received i = j.
    #[error("particle indices must differ, both were {index}")]
    IdenticalParticles { index: usize },

    /// Exchange is only defined for two-particle systems.
    #[error("operation requires exactly 2 particles, got {got}")]
    TwoParticlesRequired { got: usize },

    /// Evaluation point too close to a singular locus of the field.
    #[error("point is {distance:.3e} Bohr from a singular locus, need at least {required:.3e}")]
    SingularProximity { distance: f64, required: f64 },

    /// A superpotential was requested from a state that is not positive.
    #[error("ground state must be strictly positive, found value {value:.6e}")]
    NodelessViolation { value: f64 },

    /// Local-energy evaluation at a node or zero of the trial state.
    #[error("trial state vanishes at the evaluation point")]
    ExcludedPoint,

    /// Every sample point fell below the field-norm floor.
    #[error("field norm below {floor:.1e} at all {points} sample points")]
    DegenerateSample { points: usize, floor: f64 },

    /// Too many samples were skipped during Monte Carlo estimation.
    #[error("sampler skipped {skipped} of {total} samples (limit 1%)")]
    SamplerQuality { skipped: usize, total: usize },

    /// A configuration value violated its contract.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    /// Catalog lookup with an unknown state label.
    #[error("unknown state label `{label}`")]
    UnknownLabel { label: String },

    /// An operation received a state of the wrong kind.
    #[error("operation expects {expected}, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },

    /// A sampled density evaluated negative.
    #[error("density evaluated to {value:.6e} < 0")]
    NegativeDensity { value: f64 },
}

impl CoreError {
    pub(crate) fn invalid_config(reason: impl Into<String>) -> Self {
        CoreError::InvalidConfig {
            reason: reason.into(),
        }
    }
}
