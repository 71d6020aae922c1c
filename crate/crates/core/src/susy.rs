//! The SUSY engine: superpotential construction, charge operators, and the
//! partner Hamiltonians.
//!
//! Conventions (atomic units throughout):
//!
//! ```text
//! W        = -∇ ln ψ₀
//! A        = ∇ + W            componentwise A_i = ∂_i + W_i
//! A†·F     = -∇·F + W·F
//! H₁ - E₀  = ½ A†·A           so H₁ f = -½∇²f + V f
//! H₂ F     = ½ A (A†·F) + E₀ F
//! ```
//!
//! The ½ is fixed here so no call site can mix the ħ²/2m = 1 and atomic-unit
//! conventions; hydrogen and helium energies come out in Hartree directly.
//!
//! H₂ is applied only by operator composition. The tensor (A A†)_ij F_j
//! equals A_i (A†·F), so the tensor action reduces to the scalar channel and
//! no expanded tensor form is ever assembled.

use crate::diffops::{self, FdScheme, ScalarField, SingularLoci, VectorField};
use crate::error::CoreError;
use crate::geometry::ConfigPoint;
use crate::Result;

/// Norm floor used in relative residuals.
const RESIDUAL_FLOOR: f64 = 1e-12;

/// A superpotential together with the sector-one ground energy, defining
/// A = ∇ + W and both partner Hamiltonians.
///
/// All Hamiltonian compositions carry the atomic-units ½; the factor is not
/// configurable.
#[derive(Clone)]
pub struct ChargeContext {
    w: VectorField,
    e0: f64,
}

impl ChargeContext {
    pub fn new(w: VectorField, e0: f64) -> Self {
        ChargeContext { w, e0 }
    }

    pub fn superpotential(&self) -> &VectorField {
        &self.w
    }

    /// Sector-one ground energy E₀ in Hartree.
    pub fn e0(&self) -> f64 {
        self.e0
    }

    /// A context whose fields expose only value closures, forcing the
    /// finite-difference route everywhere.
    pub fn value_only(&self) -> ChargeContext {
        ChargeContext {
            w: self.w.value_only(),
            e0: self.e0,
        }
    }
}

/// Aggregated eigen-residuals over a point sample.
#[derive(Debug, Clone)]
pub struct EigenResidualReport {
    pub points_tested: usize,
    pub max_relative_residual: f64,
    pub mean_relative_residual: f64,
    /// Energy (Hartree) the residuals were measured against.
    pub energy_used: f64,
}

/// W = -∇ ln ψ₀ from a nodeless, strictly positive ground state.
///
/// The divergence channel is populated when ψ₀ carries analytic first and
/// second derivatives: ∇·W = -∇²ψ₀/ψ₀ + W·W.
pub fn superpotential_from_ground_state(psi0: &ScalarField) -> VectorField {
    let n = psi0.n_particles();
    let f = psi0.clone();
    let scheme = FdScheme::default();
    let mut w = VectorField::from_try_fn(n, move |x| {
        let p = f.eval(x)?;
        if p.is_nan() || p <= 0.0 {
            return Err(CoreError::NodelessViolation { value: p });
        }
        Ok(diffops::grad(&f, x, &scheme)?.scaled(-1.0 / p))
    })
    .with_domain(psi0.domain());
    if psi0.has_gradient() && psi0.has_laplacian() {
        let f = psi0.clone();
        w = w.with_try_divergence(move |x| {
            let p = f.eval(x)?;
            if p.is_nan() || p <= 0.0 {
                return Err(CoreError::NodelessViolation { value: p });
            }
            let g = diffops::grad(&f, x, &scheme)?.scaled(1.0 / p);
            Ok(-diffops::laplacian(&f, x, &scheme)? / p + g.dot(&g))
        });
    }
    w
}

/// (A f)(x) = ∇f(x) + W(x) f(x).
///
/// Annihilates the generating ground state. The result carries an analytic
/// divergence ∇·(Af) = ∇²f + (∇·W) f + W·∇f whenever f supplies gradient and
/// Laplacian and W a divergence, which keeps ½ A†·A f exact for catalog
/// states.
pub fn apply_a(ctx: &ChargeContext, f: &ScalarField) -> VectorField {
    let n = f.n_particles();
    let scheme = FdScheme::default();
    let (w, g) = (ctx.w.clone(), f.clone());
    let mut out = VectorField::from_try_fn(n, move |x| {
        let gradient = diffops::grad(&g, x, &scheme)?;
        Ok(gradient.add(&w.eval(x)?.scaled(g.eval(x)?)))
    })
    .with_domain(SingularLoci::merge(f.domain(), ctx.w.domain()));
    if f.has_gradient() && f.has_laplacian() && ctx.w.has_divergence() {
        let (w, g) = (ctx.w.clone(), f.clone());
        out = out.with_try_divergence(move |x| {
            let lap = diffops::laplacian(&g, x, &scheme)?;
            let div_w = diffops::divergence(&w, x, &scheme)?;
            let grad = diffops::grad(&g, x, &scheme)?;
            Ok(lap + div_w * g.eval(x)? + w.eval(x)?.dot(&grad))
        });
    }
    out
}

/// (A†·F)(x) = -∇·F(x) + W(x)·F(x), the scalar channel of the adjoint.
///
/// The gradient channel is populated when F carries a Jacobian and a
/// gradient-of-divergence and W a Jacobian:
/// ∇(A†·F) = -∇(∇·F) + J_W F + J_F W.
pub fn apply_adag_dot(ctx: &ChargeContext, f: &VectorField) -> ScalarField {
    let n = f.n_particles();
    let scheme = FdScheme::default();
    let (w, g) = (ctx.w.clone(), f.clone());
    let mut out = ScalarField::from_try_fn(n, move |x| {
        Ok(-diffops::divergence(&g, x, &scheme)? + w.eval(x)?.dot(&g.eval(x)?))
    })
    .with_domain(SingularLoci::merge(f.domain(), ctx.w.domain()));
    if f.has_jacobian() && f.has_div_gradient() && ctx.w.has_jacobian() {
        let (w, g) = (ctx.w.clone(), f.clone());
        out = out.with_try_gradient(move |x| {
            let grad_div = g
                .analytic_div_gradient(x)
                .expect("div_gradient checked present")?;
            let jw = diffops::jacobian(&w, x, &scheme)?;
            let jf = diffops::jacobian(&g, x, &scheme)?;
            Ok(grad_div
                .scaled(-1.0)
                .add(&jw.mul_vec(&g.eval(x)?))
                .add(&jf.mul_vec(&w.eval(x)?)))
        });
    }
    out
}

/// Sector-one Hamiltonian: (H₁ f)(x) = -½ ∇²f(x) + V(x) f(x).
pub fn apply_h1(_ctx: &ChargeContext, v: &ScalarField, f: &ScalarField) -> ScalarField {
    let n = f.n_particles();
    let scheme = FdScheme::default();
    let (vf, g) = (v.clone(), f.clone());
    ScalarField::from_try_fn(n, move |x| {
        Ok(-0.5 * diffops::laplacian(&g, x, &scheme)? + vf.eval(x)? * g.eval(x)?)
    })
    .with_domain(SingularLoci::merge(f.domain(), v.domain()))
}

/// Tensor sector-two Hamiltonian by composition:
/// H₂ F = ½ A (A†·F) + E₀ F.
pub fn apply_h2(ctx: &ChargeContext, f: &VectorField) -> VectorField {
    let inner = apply_adag_dot(ctx, f);
    let raised = apply_a(ctx, &inner);
    raised.linear_combination(0.5, f, ctx.e0)
}

/// Relative eigen-residuals of a scalar operator image against E·f over a
/// point sample: |Hf(x) - E f(x)| / max(|f(x)|, 1e-12).
pub fn eigen_residual_scalar(
    h_of_f: &ScalarField,
    f: &ScalarField,
    energy: f64,
    sample: &[ConfigPoint],
) -> Result<EigenResidualReport> {
    residual_report(
        energy,
        sample,
        |x| Ok(vec![h_of_f.eval(x)?]),
        |x| Ok(vec![f.eval(x)?]),
    )
}

/// Vector-field version of [`eigen_residual_scalar`], with Euclidean norms.
pub fn eigen_residual_vector(
    h_of_f: &VectorField,
    f: &VectorField,
    energy: f64,
    sample: &[ConfigPoint],
) -> Result<EigenResidualReport> {
    residual_report(
        energy,
        sample,
        |x| Ok(h_of_f.eval(x)?.components().to_vec()),
        |x| Ok(f.eval(x)?.components().to_vec()),
    )
}

fn residual_report(
    energy: f64,
    sample: &[ConfigPoint],
    h_of_f: impl Fn(&ConfigPoint) -> Result<Vec<f64>>,
    f: impl Fn(&ConfigPoint) -> Result<Vec<f64>>,
) -> Result<EigenResidualReport> {
    let mut max_resid: f64 = 0.0;
    let mut sum_resid = 0.0;
    let mut above_floor = 0usize;
    for x in sample {
        let hv = h_of_f(x)?;
        let fv = f(x)?;
        let norm_f = fv.iter().map(|c| c * c).sum::<f64>().sqrt();
        let resid = hv
            .iter()
            .zip(&fv)
            .map(|(h, v)| (h - energy * v).powi(2))
            .sum::<f64>()
            .sqrt();
        if norm_f > RESIDUAL_FLOOR {
            above_floor += 1;
        }
        let rel = resid / norm_f.max(RESIDUAL_FLOOR);
        max_resid = max_resid.max(rel);
        sum_resid += rel;
    }
    if above_floor == 0 {
        return Err(CoreError::DegenerateSample {
            points: sample.len(),
            floor: RESIDUAL_FLOOR,
        });
    }
    Ok(EigenResidualReport {
        points_tested: sample.len(),
        max_relative_residual: max_resid,
        mean_relative_residual: sum_resid / sample.len() as f64,
        energy_used: energy,
    })
}

/// Pointwise cosine similarity between two scalar fields over a sample,
/// treating the evaluations as one long vector each.
pub fn cosine_similarity_scalar(
    a: &ScalarField,
    b: &ScalarField,
    sample: &[ConfigPoint],
) -> Result<f64> {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for x in sample {
        let va = a.eval(x)?;
        let vb = b.eval(x)?;
        dot += va * vb;
        na += va * va;
        nb += vb * vb;
    }
    if na <= 0.0 || nb <= 0.0 {
        return Err(CoreError::DegenerateSample {
            points: sample.len(),
            floor: 0.0,
        });
    }
    Ok(dot / (na.sqrt() * nb.sqrt()))
}

/// Vector-field cosine similarity over a sample, flattening components.
pub fn cosine_similarity_vector(
    a: &VectorField,
    b: &VectorField,
    sample: &[ConfigPoint],
) -> Result<f64> {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for x in sample {
        let va = a.eval(x)?;
        let vb = b.eval(x)?;
        dot += va.dot(&vb);
        na += va.dot(&va);
        nb += vb.dot(&vb);
    }
    if na <= 0.0 || nb <= 0.0 {
        return Err(CoreError::DegenerateSample {
            points: sample.len(),
            floor: 0.0,
        });
    }
    Ok(dot / (na.sqrt() * nb.sqrt()))
}
