//! Helium trial states: the Padé-Jastrow ansatz, its exact 6-D
//! superpotential, and local-energy evaluation for VMC.
//!
//! The trial state is ψ = exp(u) with
//!
//! ```text
//! u = -z(r₁ + r₂) + c·r₁₂/(1 + α r₁₂)
//! ```
//!
//! and defaults z = 2, c = ½, which satisfy both Coulomb cusp conditions
//! exactly: the electron-nucleus log-derivative tends to -z and the
//! electron-electron one to +½, so the local energy stays bounded at the
//! singular loci.
//!
//! The superpotential here is the exact term-by-term gradient of ln ψ,
//! with Jastrow derivative J'(s) = c/(1 + αs)²; W is derived from ψ so the
//! annihilation property (∇ + W)ψ = 0 holds by construction.

use crate::diffops::{FdScheme, ScalarField, SingularLoci, VectorField};
use crate::error::CoreError;
use crate::geometry::{pair_distance, particle_radius, ConfigPoint, ConfigVector, RADIUS_EPSILON};
use crate::sampling;
use crate::Result;

/// Parameters of the Padé-Jastrow trial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadeJastrowParams {
    /// Jastrow denominator parameter α.
    pub alpha: f64,
    /// Orbital exponent (effective charge), default 2.
    pub z_eff: f64,
    /// Cusp numerator c, default ½.
    pub jastrow_coeff: f64,
}

impl PadeJastrowParams {
    pub fn new(alpha: f64) -> Result<Self> {
        PadeJastrowParams {
            alpha,
            z_eff: 2.0,
            jastrow_coeff: 0.5,
        }
        .validated()
    }

    pub fn with_z_eff(mut self, z_eff: f64) -> Result<Self> {
        self.z_eff = z_eff;
        self.validated()
    }

    pub fn with_jastrow_coeff(mut self, c: f64) -> Result<Self> {
        self.jastrow_coeff = c;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(CoreError::invalid_config(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if self.z_eff.is_nan() || self.z_eff <= 0.0 {
            return Err(CoreError::invalid_config("z_eff must be positive"));
        }
        if self.jastrow_coeff.is_nan() || self.jastrow_coeff <= 0.0 {
            return Err(CoreError::invalid_config("jastrow_coeff must be positive"));
        }
        Ok(self)
    }

    /// Jastrow exponent J(s) = c·s/(1 + αs).
    pub fn jastrow(&self, s: f64) -> f64 {
        self.jastrow_coeff * s / (1.0 + self.alpha * s)
    }

    /// J'(s) = c/(1 + αs)².
    pub fn jastrow_deriv(&self, s: f64) -> f64 {
        let d = 1.0 + self.alpha * s;
        self.jastrow_coeff / (d * d)
    }

    /// J''(s) = -2cα/(1 + αs)³.
    pub fn jastrow_second_deriv(&self, s: f64) -> f64 {
        let d = 1.0 + self.alpha * s;
        -2.0 * self.jastrow_coeff * self.alpha / (d * d * d)
    }
}

struct Internals {
    r1: f64,
    r2: f64,
    s: f64,
    /// r̂₁ and r̂₂ embedded per block, r̂₁₂ = (r⃗₁ - r⃗₂)/s.
    u1: [f64; 3],
    u2: [f64; 3],
    s_hat: [f64; 3],
}

fn internals(x: &ConfigPoint) -> Result<Internals> {
    let r1 = particle_radius(x, 0)?;
    let r2 = particle_radius(x, 1)?;
    let s = pair_distance(x, 0, 1)?;
    for d in [r1, r2, s] {
        if d <= RADIUS_EPSILON {
            return Err(CoreError::SingularProximity {
                distance: d,
                required: RADIUS_EPSILON,
            });
        }
    }
    let a = x.particle(0)?;
    let b = x.particle(1)?;
    let mut u1 = [0.0; 3];
    let mut u2 = [0.0; 3];
    let mut s_hat = [0.0; 3];
    for k in 0..3 {
        u1[k] = a[k] / r1;
        u2[k] = b[k] / r2;
        s_hat[k] = (a[k] - b[k]) / s;
    }
    Ok(Internals {
        r1,
        r2,
        s,
        u1,
        u2,
        s_hat,
    })
}

/// Exponent u(x) = -z(r₁ + r₂) + J(r₁₂); finite everywhere (the Jastrow
/// term vanishes at coincidence).
fn exponent(p: &PadeJastrowParams, x: &ConfigPoint) -> Result<f64> {
    let r1 = particle_radius(x, 0)?;
    let r2 = particle_radius(x, 1)?;
    let s = pair_distance(x, 0, 1)?;
    Ok(-p.z_eff * (r1 + r2) + p.jastrow(s))
}

/// ∇u as two blocks: (-z r̂₁ + J' r̂₁₂, -z r̂₂ - J' r̂₁₂).
fn exponent_gradient(p: &PadeJastrowParams, x: &ConfigPoint) -> Result<ConfigVector> {
    let w = internals(x)?;
    let jp = p.jastrow_deriv(w.s);
    let mut g = vec![0.0; 6];
    for k in 0..3 {
        g[k] = -p.z_eff * w.u1[k] + jp * w.s_hat[k];
        g[3 + k] = -p.z_eff * w.u2[k] - jp * w.s_hat[k];
    }
    ConfigVector::new(g)
}

/// |∇u|² + ∇²u, the Laplacian of ψ divided by ψ.
fn exponent_laplacian_ratio(p: &PadeJastrowParams, x: &ConfigPoint) -> Result<f64> {
    let w = internals(x)?;
    let jp = p.jastrow_deriv(w.s);
    let jpp = p.jastrow_second_deriv(w.s);
    let z = p.z_eff;
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let grad_sq =
        2.0 * z * z + 2.0 * jp * jp - 2.0 * z * jp * (dot(&w.u1, &w.s_hat) - dot(&w.u2, &w.s_hat));
    let lap_u = -2.0 * z / w.r1 - 2.0 * z / w.r2 + 2.0 * (jpp + 2.0 * jp / w.s);
    Ok(grad_sq + lap_u)
}

/// The Padé-Jastrow trial state as a 6-D scalar field with analytic gradient
/// and Laplacian. Value is finite everywhere; the derivative channels are
/// singular at the particle origins and the coincidence point.
pub fn pade_jastrow(p: &PadeJastrowParams) -> ScalarField {
    let params = *p;
    let pg = *p;
    let pl = *p;
    ScalarField::from_try_fn(2, move |x| Ok(exponent(&params, x)?.exp()))
        .with_domain(SingularLoci::OriginsAndCoincidences)
        .with_try_gradient(move |x| {
            let value = exponent(&pg, x)?.exp();
            Ok(exponent_gradient(&pg, x)?.scaled(value))
        })
        .with_try_laplacian(move |x| {
            let value = exponent(&pl, x)?.exp();
            Ok(exponent_laplacian_ratio(&pl, x)? * value)
        })
}

/// The exact vector superpotential of the Padé-Jastrow state:
///
/// ```text
/// W = ( z r̂₁ - J'(r₁₂) r̂₁₂ ,  z r̂₂ + J'(r₁₂) r̂₁₂ )
/// ```
///
/// with analytic divergence 2z/r₁ + 2z/r₂ - 2[J'' + 2J'/r₁₂].
pub fn helium_superpotential(p: &PadeJastrowParams) -> VectorField {
    let params = *p;
    let pd = *p;
    VectorField::from_try_fn(2, move |x| Ok(exponent_gradient(&params, x)?.scaled(-1.0)))
        .with_domain(SingularLoci::OriginsAndCoincidences)
        .with_try_divergence(move |x| {
            let w = internals(x)?;
            let jp = pd.jastrow_deriv(w.s);
            let jpp = pd.jastrow_second_deriv(w.s);
            Ok(2.0 * pd.z_eff / w.r1 + 2.0 * pd.z_eff / w.r2 - 2.0 * (jpp + 2.0 * jp / w.s))
        })
}

/// Pure Jastrow correlation factor e^{J(r₁₂)} as a symmetric 6-D field with
/// analytic gradient; used to attach correlation to aufbau states.
pub fn jastrow_factor(p: &PadeJastrowParams) -> ScalarField {
    let params = *p;
    let pg = *p;
    ScalarField::from_try_fn(2, move |x| {
        Ok(params.jastrow(pair_distance(x, 0, 1)?).exp())
    })
    .with_domain(SingularLoci::Coincidences)
    .with_try_gradient(move |x| {
        let w = internals_pair_only(x)?;
        let value = pg.jastrow(w.0).exp();
        let jp = pg.jastrow_deriv(w.0);
        let mut g = vec![0.0; 6];
        for k in 0..3 {
            g[k] = value * jp * w.1[k];
            g[3 + k] = -value * jp * w.1[k];
        }
        ConfigVector::new(g)
    })
}

fn internals_pair_only(x: &ConfigPoint) -> Result<(f64, [f64; 3])> {
    let s = pair_distance(x, 0, 1)?;
    if s <= RADIUS_EPSILON {
        return Err(CoreError::SingularProximity {
            distance: s,
            required: RADIUS_EPSILON,
        });
    }
    let a = x.particle(0)?;
    let b = x.particle(1)?;
    let mut s_hat = [0.0; 3];
    for k in 0..3 {
        s_hat[k] = (a[k] - b[k]) / s;
    }
    Ok((s, s_hat))
}

/// Helium potential -2/r₁ - 2/r₂ + 1/r₁₂ (infinite nuclear mass,
/// nonrelativistic).
pub fn potential() -> ScalarField {
    ScalarField::from_try_fn(2, |x| {
        let w = internals(x)?;
        Ok(-2.0 / w.r1 - 2.0 / w.r2 + 1.0 / w.s)
    })
    .with_domain(SingularLoci::OriginsAndCoincidences)
}

/// Local energy (Hψ)/ψ for the helium Hamiltonian, analytic route when ψ
/// carries derivatives.
pub fn local_energy(psi: &ScalarField, x: &ConfigPoint) -> Result<f64> {
    sampling::local_energy(psi, &potential(), x, &FdScheme::default())
}

/// Charge context for a helium trial state; `e0` is the sector-one energy
/// to which tensor-sector applications are referenced (aufbau state
/// construction itself never uses it).
pub fn context(p: &PadeJastrowParams, e0: f64) -> crate::susy::ChargeContext {
    crate::susy::ChargeContext::new(helium_superpotential(p), e0)
}
