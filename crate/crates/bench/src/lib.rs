//! Shared fixtures for the criterion benches.

use susyqm_core::diffops::SingularLoci;
use susyqm_core::geometry::ConfigPoint;
use susyqm_core::helium::{self, PadeJastrowParams};
use susyqm_core::sampling::sample_regular_points;
use susyqm_core::ScalarField;

/// Helium Padé-Jastrow trial state at the toolkit's reference α.
pub fn helium_trial() -> (ScalarField, ScalarField) {
    let params = PadeJastrowParams::new(0.353).expect("valid alpha");
    (helium::pade_jastrow(&params), helium::potential())
}

/// Fixed 6-D evaluation points away from the singular loci.
pub fn helium_points(n: usize) -> Vec<ConfigPoint> {
    sample_regular_points(n, 2, 1.5, 42, SingularLoci::OriginsAndCoincidences, 0.2)
}

/// Fixed 3-D evaluation points away from the nucleus.
pub fn hydrogen_points(n: usize) -> Vec<ConfigPoint> {
    sample_regular_points(n, 1, 2.0, 42, SingularLoci::ParticleOrigins, 0.1)
}
