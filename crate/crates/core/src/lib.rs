//! Multi-dimensional supersymmetric quantum mechanics for atomic systems.
//!
//! The Schrödinger Hamiltonian H₁ = -½∇² + V on a 3n-dimensional configuration
//! space is factored through a vector superpotential W = -∇ ln ψ₀ built from a
//! nodeless ground state. The charge operator A = ∇ + W and its adjoint give
//!
//! ```text
//! H₁ - E₀ = ½ A†·A            (scalar sector)
//! H₂      = ½ A A† + E₀ 1⃡     (tensor sector, acting on vector fields)
//! ```
//!
//! in atomic units (Hartree, Bohr). H₂ is isospectral with H₁ above the ground
//! state: A maps sector-one excited states to sector-two eigenstates at the
//! same energy, and A†· maps them back.
//!
//! The crate provides the operator machinery ([`susy`], [`diffops`]), a
//! closed-form hydrogen catalog with its four degenerate sector-two ground
//! states ([`hydrogen`]), a Padé-Jastrow helium trial state with exact 6-D
//! superpotential ([`helium`]), Metropolis sampling and VMC energy estimation
//! ([`sampling`]), and aufbau construction of two-electron sector-two trial
//! states ([`aufbau`]).

pub mod aufbau;
pub mod diffops;
pub mod error;
pub mod geometry;
pub mod helium;
pub mod hydrogen;
pub mod sampling;
pub mod susy;

pub use diffops::{FdScheme, ScalarField, SingularLoci, SquareMatrix, VectorField};
pub use error::CoreError;
pub use geometry::{ConfigPoint, ConfigVector, RADIUS_EPSILON};
pub use helium::PadeJastrowParams;
pub use sampling::{EnergyEstimate, MetropolisConfig};
pub use susy::{ChargeContext, EigenResidualReport};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
