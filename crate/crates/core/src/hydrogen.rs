//! Closed-form hydrogen catalog.
//!
//! Sector one: the real unnormalized eigenstates 1s = e^{-r},
//! 2s = (1 - r/2)e^{-r/2}, 2p_a = u_a e^{-r/2} with energies -1/(2n²)
//! Hartree (Bohr radius 1). Sector two: the superpotential W = r̂ and the
//! four degenerate ground states of H₂ at -1/8 Hartree,
//!
//! ```text
//! ψ⃗₂ₚₐ = ê_a e^{-r/2} + (u_a r̂/2) e^{-r/2}
//! ψ⃗₂ₛ  = -(r⃗/2) e^{-r/2}
//! ```
//!
//! stored with N = 1: the normalization constant is never fixed here, and
//! every consumer is either normalization-independent (residuals, cosine
//! similarity) or computes norms by quadrature on demand.

use crate::diffops::{self, FdScheme, ScalarField, SingularLoci, SquareMatrix, VectorField};
use crate::error::CoreError;
use crate::geometry::{particle_radius, unit_vector_lift, ConfigVector, RADIUS_EPSILON};
use crate::sampling::sample_regular_points;
use crate::susy::{self, ChargeContext};
use crate::Result;

/// Sector-one catalog labels, real basis (p_x, p_y, p_z rather than
/// m_l = 0, ±1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HydrogenLabel {
    OneS,
    TwoS,
    TwoPx,
    TwoPy,
    TwoPz,
}

impl HydrogenLabel {
    pub fn parse(label: &str) -> Result<Self> {
        match label {
            "1s" => Ok(HydrogenLabel::OneS),
            "2s" => Ok(HydrogenLabel::TwoS),
            "2px" | "2p_x" => Ok(HydrogenLabel::TwoPx),
            "2py" | "2p_y" => Ok(HydrogenLabel::TwoPy),
            "2pz" | "2p_z" => Ok(HydrogenLabel::TwoPz),
            _ => Err(CoreError::UnknownLabel {
                label: label.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HydrogenLabel::OneS => "1s",
            HydrogenLabel::TwoS => "2s",
            HydrogenLabel::TwoPx => "2p_x",
            HydrogenLabel::TwoPy => "2p_y",
            HydrogenLabel::TwoPz => "2p_z",
        }
    }
}

/// Sector-two catalog labels: the n = 1 tensor ground states tagged by the
/// sector-one state they descend from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorTwoLabel {
    FromTwoS,
    FromTwoPx,
    FromTwoPy,
    FromTwoPz,
}

impl SectorTwoLabel {
    pub fn parse(label: &str) -> Result<Self> {
        match label {
            "1,2s" | "2s" => Ok(SectorTwoLabel::FromTwoS),
            "1,2px" | "1,2p_x" | "2px" | "2p_x" => Ok(SectorTwoLabel::FromTwoPx),
            "1,2py" | "1,2p_y" | "2py" | "2p_y" => Ok(SectorTwoLabel::FromTwoPy),
            "1,2pz" | "1,2p_z" | "2pz" | "2p_z" => Ok(SectorTwoLabel::FromTwoPz),
            _ => Err(CoreError::UnknownLabel {
                label: label.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SectorTwoLabel::FromTwoS => "1,2s",
            SectorTwoLabel::FromTwoPx => "1,2p_x",
            SectorTwoLabel::FromTwoPy => "1,2p_y",
            SectorTwoLabel::FromTwoPz => "1,2p_z",
        }
    }

    pub fn all() -> [SectorTwoLabel; 4] {
        [
            SectorTwoLabel::FromTwoS,
            SectorTwoLabel::FromTwoPx,
            SectorTwoLabel::FromTwoPy,
            SectorTwoLabel::FromTwoPz,
        ]
    }
}

/// A sector-one eigenstate with analytic gradient and Laplacian.
pub struct HydrogenState {
    pub label: HydrogenLabel,
    pub field: ScalarField,
    /// Exact energy -1/(2n²) in Hartree.
    pub energy: f64,
}

/// A sector-two eigenstate with analytic Jacobian, divergence, and
/// gradient-of-divergence; all four share energy -1/8 Hartree.
pub struct SectorTwoState {
    pub label: SectorTwoLabel,
    pub field: VectorField,
    pub energy: f64,
}

pub const E_1S: f64 = -0.5;
pub const E_N2: f64 = -0.125;

fn guard_radius(r: f64) -> Result<f64> {
    if r <= RADIUS_EPSILON {
        Err(CoreError::SingularProximity {
            distance: r,
            required: RADIUS_EPSILON,
        })
    } else {
        Ok(r)
    }
}

/// Returns the unnormalized real-form catalog eigenstate.
pub fn hydrogen_state(label: HydrogenLabel) -> Result<HydrogenState> {
    let field = match label {
        HydrogenLabel::OneS => ScalarField::from_try_fn(1, |x| Ok((-particle_radius(x, 0)?).exp()))
            .with_try_gradient(|x| {
                let r = guard_radius(particle_radius(x, 0)?)?;
                let e = (-r).exp();
                Ok(unit_vector_lift(x, 0)?.scaled(-e))
            })
            .with_try_laplacian(|x| {
                let r = guard_radius(particle_radius(x, 0)?)?;
                Ok((1.0 - 2.0 / r) * (-r).exp())
            }),
        HydrogenLabel::TwoS => ScalarField::from_try_fn(1, |x| {
            let r = particle_radius(x, 0)?;
            Ok((1.0 - r / 2.0) * (-r / 2.0).exp())
        })
        .with_try_gradient(|x| {
            let r = guard_radius(particle_radius(x, 0)?)?;
            let e = (-r / 2.0).exp();
            Ok(unit_vector_lift(x, 0)?.scaled((r / 4.0 - 1.0) * e))
        })
        .with_try_laplacian(|x| {
            let r = guard_radius(particle_radius(x, 0)?)?;
            Ok((1.25 - r / 8.0 - 2.0 / r) * (-r / 2.0).exp())
        }),
        HydrogenLabel::TwoPx | HydrogenLabel::TwoPy | HydrogenLabel::TwoPz => {
            let axis = match label {
                HydrogenLabel::TwoPx => 0,
                HydrogenLabel::TwoPy => 1,
                _ => 2,
            };
            ScalarField::from_try_fn(1, move |x| {
                let r = particle_radius(x, 0)?;
                Ok(x.coords()[axis] * (-r / 2.0).exp())
            })
            .with_try_gradient(move |x| {
                let r = guard_radius(particle_radius(x, 0)?)?;
                let e = (-r / 2.0).exp();
                let xa = x.coords()[axis];
                let mut g = vec![0.0; 3];
                for (j, slot) in g.iter_mut().enumerate() {
                    let delta = if j == axis { 1.0 } else { 0.0 };
                    *slot = (delta - xa * x.coords()[j] / (2.0 * r)) * e;
                }
                ConfigVector::new(g)
            })
            .with_try_laplacian(move |x| {
                let r = guard_radius(particle_radius(x, 0)?)?;
                Ok(x.coords()[axis] * (0.25 - 2.0 / r) * (-r / 2.0).exp())
            })
        }
    }
    .with_domain(SingularLoci::ParticleOrigins);
    let energy = match label {
        HydrogenLabel::OneS => E_1S,
        _ => E_N2,
    };
    Ok(HydrogenState {
        label,
        field,
        energy,
    })
}

/// W = -∇ ln ψ₁ₛ = r̂, with unit magnitude at every regular point and
/// Jacobian (δ_ij - x_i x_j/r²)/r.
pub fn hydrogen_superpotential() -> VectorField {
    VectorField::from_try_fn(1, |x| unit_vector_lift(x, 0))
        .with_domain(SingularLoci::ParticleOrigins)
        .with_try_jacobian(|x| {
            let r = guard_radius(particle_radius(x, 0)?)?;
            let c = x.coords();
            let mut m = SquareMatrix::zeros(3);
            for i in 0..3 {
                for j in 0..3 {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    m.set(i, j, (delta - c[i] * c[j] / (r * r)) / r);
                }
            }
            Ok(m)
        })
        .with_try_divergence(|x| Ok(2.0 / guard_radius(particle_radius(x, 0)?)?))
}

/// The Coulomb potential -1/r.
pub fn potential() -> ScalarField {
    ScalarField::from_try_fn(1, |x| Ok(-1.0 / guard_radius(particle_radius(x, 0)?)?))
        .with_domain(SingularLoci::ParticleOrigins)
}

/// Charge context for hydrogen: W = r̂, E₀ = -1/2 Hartree.
pub fn context() -> ChargeContext {
    ChargeContext::new(hydrogen_superpotential(), E_1S)
}

/// Returns the closed form of a sector-two ground state with N = 1.
pub fn sector_two_state(label: SectorTwoLabel) -> Result<SectorTwoState> {
    let field = match label {
        SectorTwoLabel::FromTwoS => sector_two_from_2s(),
        SectorTwoLabel::FromTwoPx => sector_two_from_2p(0),
        SectorTwoLabel::FromTwoPy => sector_two_from_2p(1),
        SectorTwoLabel::FromTwoPz => sector_two_from_2p(2),
    };
    Ok(SectorTwoState {
        label,
        field,
        energy: E_N2,
    })
}

/// ψ⃗₂ₛ = -(r⃗/2) e^{-r/2}. The value is smooth everywhere; only the
/// derivative channels are singular at the origin.
fn sector_two_from_2s() -> VectorField {
    VectorField::from_try_fn(1, |x| {
        let r = particle_radius(x, 0)?;
        let e = (-r / 2.0).exp();
        ConfigVector::new(x.coords().iter().map(|c| -c / 2.0 * e).collect())
    })
    .with_domain(SingularLoci::ParticleOrigins)
    .with_try_jacobian(|x| {
        let r = guard_radius(particle_radius(x, 0)?)?;
        let e = (-r / 2.0).exp();
        let c = x.coords();
        let mut m = SquareMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                m.set(i, j, e * (-delta / 2.0 + c[i] * c[j] / (4.0 * r)));
            }
        }
        Ok(m)
    })
    .with_try_divergence(|x| {
        let r = particle_radius(x, 0)?;
        Ok((r / 4.0 - 1.5) * (-r / 2.0).exp())
    })
    .with_try_div_gradient(|x| {
        let r = guard_radius(particle_radius(x, 0)?)?;
        let e = (-r / 2.0).exp();
        Ok(unit_vector_lift(x, 0)?.scaled((1.0 - r / 8.0) * e))
    })
}

/// ψ⃗₂ₚₐ = ê_a e^{-r/2} + (u_a r̂/2) e^{-r/2}; the second term has a
/// removable singularity at the origin and is continued by its limit 0.
fn sector_two_from_2p(axis: usize) -> VectorField {
    VectorField::from_try_fn(1, move |x| {
        let r = particle_radius(x, 0)?;
        let e = (-r / 2.0).exp();
        let c = x.coords();
        let xa = c[axis];
        let mut v = vec![0.0; 3];
        for (j, slot) in v.iter_mut().enumerate() {
            let delta = if j == axis { 1.0 } else { 0.0 };
            let radial = if r > 0.0 { xa * c[j] / (2.0 * r) } else { 0.0 };
            *slot = (delta + radial) * e;
        }
        ConfigVector::new(v)
    })
    .with_domain(SingularLoci::ParticleOrigins)
    .with_try_jacobian(move |x| {
        let r = guard_radius(particle_radius(x, 0)?)?;
        let e = (-r / 2.0).exp();
        let c = x.coords();
        let xa = c[axis];
        let mut m = SquareMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                let d_aj = if j == axis { 1.0 } else { 0.0 };
                let d_ia = if i == axis { 1.0 } else { 0.0 };
                let d_ij = if i == j { 1.0 } else { 0.0 };
                let v = -d_aj * c[i] / (2.0 * r) + (d_ia * c[j] + d_ij * xa) / (2.0 * r)
                    - xa * c[j] * c[i] * (0.25 / (r * r) + 0.5 / (r * r * r));
                m.set(i, j, e * v);
            }
        }
        Ok(m)
    })
    .with_try_divergence(move |x| {
        let r = guard_radius(particle_radius(x, 0)?)?;
        Ok(x.coords()[axis] * (1.0 / r - 0.25) * (-r / 2.0).exp())
    })
    .with_try_div_gradient(move |x| {
        let r = guard_radius(particle_radius(x, 0)?)?;
        let e = (-r / 2.0).exp();
        let c = x.coords();
        let xa = c[axis];
        let radial = 0.125 - 0.5 / r - 1.0 / (r * r);
        let mut g = vec![0.0; 3];
        for (j, slot) in g.iter_mut().enumerate() {
            let delta = if j == axis { 1.0 } else { 0.0 };
            *slot = e * (delta * (1.0 / r - 0.25) + xa * radial * c[j] / r);
        }
        ConfigVector::new(g)
    })
}

/// Which derivative route the consistency bundle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyPath {
    /// Closed-form derivative closures; tolerance 1e-8.
    Analytic,
    /// Value closures only, central differences with h = 1e-4; tolerance 1e-4.
    Numeric,
}

impl VerifyPath {
    pub fn tolerance(&self) -> f64 {
        match self {
            VerifyPath::Analytic => 1e-8,
            VerifyPath::Numeric => 1e-4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            VerifyPath::Analytic => "analytic",
            VerifyPath::Numeric => "numeric",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(VerifyPath::Analytic),
            "numeric" => Ok(VerifyPath::Numeric),
            _ => Err(CoreError::UnknownLabel {
                label: s.to_string(),
            }),
        }
    }
}

/// One named residual aggregate from the consistency bundle.
#[derive(Debug, Clone)]
pub struct ConsistencyCheck {
    pub name: String,
    pub points: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
}

impl ConsistencyCheck {
    fn from_residuals(name: &str, residuals: &[f64]) -> Self {
        let max = residuals.iter().copied().fold(0.0f64, f64::max);
        let mean = residuals.iter().sum::<f64>() / residuals.len().max(1) as f64;
        ConsistencyCheck {
            name: name.to_string(),
            points: residuals.len(),
            max_residual: max,
            mean_residual: mean,
        }
    }
}

/// The full bundle of hydrogen consistency checks.
#[derive(Debug, Clone)]
pub struct ConsistencyBundle {
    pub path: VerifyPath,
    pub checks: Vec<ConsistencyCheck>,
}

impl ConsistencyBundle {
    pub fn tolerance(&self) -> f64 {
        self.path.tolerance()
    }

    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.max_residual < self.tolerance())
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_residual)
            .fold(0.0f64, f64::max)
    }
}

/// Runs, in order: the superpotential identity W·W - ∇·W = 1 - 2/r, the
/// ground-state Laplacian identity ∇²ψ₁ₛ = (1 - 2/r)ψ₁ₛ, annihilation of
/// ψ₁ₛ by A, the four sector-two eigen-residuals at -1/8 Hartree, and the
/// regeneration of each sector-one state by A†.
///
/// Sample points are seeded, at least 0.1 Bohr from the nucleus.
pub fn verify_consistency(path: VerifyPath, points: usize, seed: u64) -> Result<ConsistencyBundle> {
    let sample = sample_regular_points(points, 1, 2.0, seed, SingularLoci::ParticleOrigins, 0.1);
    let scheme = FdScheme::default();

    let pick_scalar = |f: ScalarField| match path {
        VerifyPath::Analytic => f,
        VerifyPath::Numeric => f.value_only(),
    };
    let pick_vector = |f: VectorField| match path {
        VerifyPath::Analytic => f,
        VerifyPath::Numeric => f.value_only(),
    };

    let w = pick_vector(hydrogen_superpotential());
    let psi0 = pick_scalar(hydrogen_state(HydrogenLabel::OneS)?.field);
    let ctx = ChargeContext::new(w.clone(), E_1S);

    let mut checks = Vec::new();

    // W·W - ∇·W against 1 - 2/r, absolute deviation.
    let mut resid = Vec::with_capacity(sample.len());
    for x in &sample {
        let wx = w.eval(x)?;
        let lhs = wx.dot(&wx) - diffops::divergence(&w, x, &scheme)?;
        let rhs = 1.0 - 2.0 / particle_radius(x, 0)?;
        resid.push((lhs - rhs).abs());
    }
    checks.push(ConsistencyCheck::from_residuals(
        "superpotential-identity",
        &resid,
    ));

    // ∇²ψ₁ₛ = (1 - 2/r) ψ₁ₛ, relative to |ψ₁ₛ|.
    let mut resid = Vec::with_capacity(sample.len());
    for x in &sample {
        let p = psi0.eval(x)?;
        let lap = diffops::laplacian(&psi0, x, &scheme)?;
        let rhs = (1.0 - 2.0 / particle_radius(x, 0)?) * p;
        resid.push((lap - rhs).abs() / p.abs().max(1e-12));
    }
    checks.push(ConsistencyCheck::from_residuals(
        "ground-state-laplacian",
        &resid,
    ));

    // (∇ + W)ψ₁ₛ ≡ 0, vector norm relative to |ψ₁ₛ|.
    let a_psi0 = susy::apply_a(&ctx, &psi0);
    let mut resid = Vec::with_capacity(sample.len());
    for x in &sample {
        let v = a_psi0.eval(x)?;
        resid.push(v.norm() / psi0.eval(x)?.abs().max(1e-12));
    }
    checks.push(ConsistencyCheck::from_residuals("annihilation", &resid));

    // H₂ ψ⃗ = -1/8 ψ⃗ for each of the four degenerate ground states.
    for label in SectorTwoLabel::all() {
        let state = sector_two_state(label)?;
        let field = pick_vector(state.field);
        let h2f = susy::apply_h2(&ctx, &field);
        let report = susy::eigen_residual_vector(&h2f, &field, E_N2, &sample)?;
        checks.push(ConsistencyCheck {
            name: format!("sector2-eigen-{}", label.name()),
            points: report.points_tested,
            max_residual: report.max_relative_residual,
            mean_residual: report.mean_relative_residual,
        });
    }

    // A†·ψ⃗⁽²⁾ regenerates the matching sector-one state (cosine similarity).
    for (s2, s1) in [
        (SectorTwoLabel::FromTwoS, HydrogenLabel::TwoS),
        (SectorTwoLabel::FromTwoPx, HydrogenLabel::TwoPx),
        (SectorTwoLabel::FromTwoPy, HydrogenLabel::TwoPy),
        (SectorTwoLabel::FromTwoPz, HydrogenLabel::TwoPz),
    ] {
        let field = pick_vector(sector_two_state(s2)?.field);
        let regenerated = susy::apply_adag_dot(&ctx, &field);
        let target = pick_scalar(hydrogen_state(s1)?.field);
        let cos = susy::cosine_similarity_scalar(&regenerated, &target, &sample)?;
        // Rounding can push the cosine a few ulp above 1; clamp at zero.
        let deviation = (1.0 - cos).max(0.0);
        checks.push(ConsistencyCheck {
            name: format!("regeneration-{}", s1.name()),
            points: sample.len(),
            max_residual: deviation,
            mean_residual: deviation,
        });
    }

    Ok(ConsistencyBundle { path, checks })
}
