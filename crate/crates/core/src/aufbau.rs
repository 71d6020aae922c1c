//! Aufbau construction of sector-two trial states for two-electron systems.
//!
//! A "building block" is the charge operator applied to an orbital product,
//! φ⃗ = A(α(r₁)β(r₂)). The block is neither symmetric nor antisymmetric under
//! particle exchange; subtracting or adding its exchange partner yields the
//! triplet (antisymmetric) and singlet (symmetric) spatial trial states,
//! and a Jastrow factor can be attached without disturbing either symmetry
//! since it depends only on r₁₂.
//!
//! The charge context is a parameter rather than a baked-in choice: the same
//! construction runs against the Padé-Jastrow superpotential, the bare
//! hydrogenic W = 2r̂₁ + 2r̂₂, or W = 0, and the symmetry properties hold for
//! any exchange-symmetric W.

use std::f64::consts::PI;

use crate::diffops::{self, ScalarField, SingularLoci, VectorField};
use crate::error::CoreError;
use crate::geometry::{particle_radius, unit_vector_lift, ConfigPoint, RADIUS_EPSILON};
use crate::helium::{jastrow_factor, PadeJastrowParams};
use crate::susy::{self, ChargeContext};
use crate::Result;

/// Hydrogenic Z = 2 orbitals used as aufbau ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitalLabel {
    /// α(r) = e^{-2r}/√π, nodeless.
    Alpha1s,
    /// β(r) = e^{-r}(1 - r)/(4√(2π)), one radial node at r = 1.
    Beta2s,
}

/// A one-particle radial orbital.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbital {
    pub label: OrbitalLabel,
}

impl Orbital {
    pub fn alpha_1s() -> Self {
        Orbital {
            label: OrbitalLabel::Alpha1s,
        }
    }

    pub fn beta_2s() -> Self {
        Orbital {
            label: OrbitalLabel::Beta2s,
        }
    }

    pub fn radial(&self, r: f64) -> f64 {
        match self.label {
            OrbitalLabel::Alpha1s => (-2.0 * r).exp() / PI.sqrt(),
            OrbitalLabel::Beta2s => (-r).exp() * (1.0 - r) / (4.0 * (2.0 * PI).sqrt()),
        }
    }

    pub fn radial_deriv(&self, r: f64) -> f64 {
        match self.label {
            OrbitalLabel::Alpha1s => -2.0 * (-2.0 * r).exp() / PI.sqrt(),
            OrbitalLabel::Beta2s => (-r).exp() * (r - 2.0) / (4.0 * (2.0 * PI).sqrt()),
        }
    }

    pub fn radial_second_deriv(&self, r: f64) -> f64 {
        match self.label {
            OrbitalLabel::Alpha1s => 4.0 * (-2.0 * r).exp() / PI.sqrt(),
            OrbitalLabel::Beta2s => (-r).exp() * (3.0 - r) / (4.0 * (2.0 * PI).sqrt()),
        }
    }
}

/// Construction stage of an aufbau state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AufbauKind {
    BuildingBlock,
    ExchangedBlock,
    Triplet,
    Singlet,
    CorrelatedTriplet,
    CorrelatedSinglet,
}

impl AufbauKind {
    pub fn name(&self) -> &'static str {
        match self {
            AufbauKind::BuildingBlock => "building_block",
            AufbauKind::ExchangedBlock => "exchanged_block",
            AufbauKind::Triplet => "triplet",
            AufbauKind::Singlet => "singlet",
            AufbauKind::CorrelatedTriplet => "correlated_triplet",
            AufbauKind::CorrelatedSinglet => "correlated_singlet",
        }
    }
}

/// Symmetrization mode for [`combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    /// Antisymmetric spatial part: φ - P₁₂φ.
    Triplet,
    /// Symmetric spatial part: φ + P₁₂φ.
    Singlet,
}

/// A sector-two trial state under construction.
#[derive(Clone)]
pub struct AufbauState {
    pub kind: AufbauKind,
    pub field: VectorField,
    /// Orbitals the block was generated from, particle-1 first.
    pub orbitals: (Orbital, Orbital),
    /// Jastrow parameters for correlated kinds.
    pub params: Option<PadeJastrowParams>,
}

/// f(x) = o1(r₁)·o2(r₂) with analytic gradient and Laplacian from the radial
/// derivatives.
pub fn orbital_product(o1: &Orbital, o2: &Orbital) -> ScalarField {
    let (a, b) = (*o1, *o2);
    let value = move |x: &ConfigPoint| -> Result<f64> {
        Ok(a.radial(particle_radius(x, 0)?) * b.radial(particle_radius(x, 1)?))
    };
    let (ga, gb) = (a, b);
    let (la, lb) = (a, b);
    ScalarField::from_try_fn(2, value)
        .with_domain(SingularLoci::ParticleOrigins)
        .with_try_gradient(move |x| {
            let r1 = guard(particle_radius(x, 0)?)?;
            let r2 = guard(particle_radius(x, 1)?)?;
            let u1 = unit_vector_lift(x, 0)?;
            let u2 = unit_vector_lift(x, 1)?;
            Ok(u1
                .scaled(ga.radial_deriv(r1) * gb.radial(r2))
                .add(&u2.scaled(ga.radial(r1) * gb.radial_deriv(r2))))
        })
        .with_try_laplacian(move |x| {
            let r1 = guard(particle_radius(x, 0)?)?;
            let r2 = guard(particle_radius(x, 1)?)?;
            let radial_lap_1 = la.radial_second_deriv(r1) + 2.0 * la.radial_deriv(r1) / r1;
            let radial_lap_2 = lb.radial_second_deriv(r2) + 2.0 * lb.radial_deriv(r2) / r2;
            Ok(radial_lap_1 * lb.radial(r2) + la.radial(r1) * radial_lap_2)
        })
}

fn guard(r: f64) -> Result<f64> {
    if r <= RADIUS_EPSILON {
        Err(CoreError::SingularProximity {
            distance: r,
            required: RADIUS_EPSILON,
        })
    } else {
        Ok(r)
    }
}

/// φ⃗ = A(o1(r₁)·o2(r₂)) under the given context.
pub fn building_block(ctx: &ChargeContext, o1: &Orbital, o2: &Orbital) -> AufbauState {
    let product = orbital_product(o1, o2);
    AufbauState {
        kind: AufbauKind::BuildingBlock,
        field: susy::apply_a(ctx, &product),
        orbitals: (*o1, *o2),
        params: None,
    }
}

/// P₁₂φ⃗: the building block with electron labels interchanged.
pub fn exchanged_block(block: &AufbauState) -> Result<AufbauState> {
    if block.kind != AufbauKind::BuildingBlock {
        return Err(CoreError::WrongKind {
            expected: "building_block",
            got: block.kind.name(),
        });
    }
    Ok(AufbauState {
        kind: AufbauKind::ExchangedBlock,
        field: diffops::exchange_12_field(&block.field)?,
        orbitals: (block.orbitals.1, block.orbitals.0),
        params: None,
    })
}

/// Triplet (φ - P₁₂φ) or singlet (φ + P₁₂φ) combination of a building block.
pub fn combine(block: &AufbauState, mode: CombineMode) -> Result<AufbauState> {
    if block.kind != AufbauKind::BuildingBlock {
        return Err(CoreError::WrongKind {
            expected: "building_block",
            got: block.kind.name(),
        });
    }
    let exchanged = diffops::exchange_12_field(&block.field)?;
    let (kind, sign) = match mode {
        CombineMode::Triplet => (AufbauKind::Triplet, -1.0),
        CombineMode::Singlet => (AufbauKind::Singlet, 1.0),
    };
    Ok(AufbauState {
        kind,
        field: block.field.linear_combination(1.0, &exchanged, sign),
        orbitals: block.orbitals,
        params: None,
    })
}

/// Multiplies a combined state pointwise by the Jastrow factor
/// e^{c·r₁₂/(1 + δr₁₂)} with δ = params.alpha. The factor depends only on
/// r₁₂, so the exchange symmetry of the input is untouched.
pub fn attach_correlation(state: &AufbauState, params: &PadeJastrowParams) -> Result<AufbauState> {
    let kind = match state.kind {
        AufbauKind::Triplet => AufbauKind::CorrelatedTriplet,
        AufbauKind::Singlet => AufbauKind::CorrelatedSinglet,
        other => {
            return Err(CoreError::WrongKind {
                expected: "triplet or singlet",
                got: other.name(),
            })
        }
    };
    Ok(AufbauState {
        kind,
        field: state.field.scaled_by_field(&jastrow_factor(params)),
        orbitals: state.orbitals,
        params: Some(*params),
    })
}

/// Similarity between A†·ψ⃗ and the symmetrized orbital product it should
/// regenerate. Report-only: A†·A applied to a non-eigenfunction need not be
/// proportional to it, so no pass/fail verdict is attached.
#[derive(Debug, Clone)]
pub struct RegenerationReport {
    pub cosine_similarity: f64,
    /// Least-squares constant c minimizing ‖A†·ψ⃗ - c·target‖ over the sample.
    pub proportionality: f64,
    pub points: usize,
    /// RMS of A†·ψ⃗ over the sample, to expose annihilation-degenerate cases
    /// where the similarity is meaningless.
    pub regenerated_rms: f64,
}

/// Applies A†· to a combined state and compares with the matching
/// symmetrized product α(r₁)β(r₂) ∓ α(r₂)β(r₁).
pub fn regeneration_check(
    ctx: &ChargeContext,
    state: &AufbauState,
    sample: &[ConfigPoint],
) -> Result<RegenerationReport> {
    let sign = match state.kind {
        AufbauKind::Triplet => -1.0,
        AufbauKind::Singlet => 1.0,
        other => {
            return Err(CoreError::WrongKind {
                expected: "triplet or singlet",
                got: other.name(),
            })
        }
    };
    let (o1, o2) = state.orbitals;
    let direct = orbital_product(&o1, &o2);
    let exchanged = orbital_product(&o2, &o1);
    let target = direct.linear_combination(1.0, &exchanged, sign);
    let regenerated = susy::apply_adag_dot(ctx, &state.field);

    let mut dot = 0.0;
    let mut regen_sq = 0.0;
    let mut target_sq = 0.0;
    for x in sample {
        let r = regenerated.eval(x)?;
        let t = target.eval(x)?;
        dot += r * t;
        regen_sq += r * r;
        target_sq += t * t;
    }
    if target_sq <= 0.0 {
        return Err(CoreError::DegenerateSample {
            points: sample.len(),
            floor: 0.0,
        });
    }
    let cosine = if regen_sq > 0.0 {
        dot / (regen_sq.sqrt() * target_sq.sqrt())
    } else {
        0.0
    };
    Ok(RegenerationReport {
        cosine_similarity: cosine,
        proportionality: dot / target_sq,
        points: sample.len(),
        regenerated_rms: (regen_sq / sample.len() as f64).sqrt(),
    })
}

/// Context with the bare hydrogenic superpotential W = 2r̂₁ + 2r̂₂, the exact
/// ground-state structure of two independent Z = 2 ions (E₀ = -4 Hartree).
pub fn bare_context() -> ChargeContext {
    let w = VectorField::from_try_fn(2, |x| {
        Ok(unit_vector_lift(x, 0)?
            .scaled(2.0)
            .add(&unit_vector_lift(x, 1)?.scaled(2.0)))
    })
    .with_domain(SingularLoci::ParticleOrigins)
    .with_try_divergence(|x| {
        Ok(4.0 / guard(particle_radius(x, 0)?)? + 4.0 / guard(particle_radius(x, 1)?)?)
    });
    ChargeContext::new(w, -4.0)
}

/// Context with W = 0 (constant ground state): A reduces to the gradient.
pub fn free_context() -> ChargeContext {
    ChargeContext::new(VectorField::zero(2), 0.0)
}
