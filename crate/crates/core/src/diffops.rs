//! Differential operators on scalar and vector fields.
//!
//! Fields are closures over [`ConfigPoint`] that may carry hand-coded
//! analytic derivatives. Every operator prefers the analytic closure when the
//! field supplies one and falls back to second-order central differences
//! (optionally Richardson-extrapolated) otherwise, so the two routes can be
//! cross-validated against each other.
//!
//! Singular loci are declared on the field ([`SingularLoci`]) rather than
//! discovered by catching NaN: finite-difference stencils refuse points closer
//! than two steps to a declared locus, which keeps test behavior
//! deterministic.

use std::sync::Arc;

use crate::error::CoreError;
use crate::geometry::{pair_distance, particle_radius, ConfigPoint, ConfigVector};
use crate::Result;

type ValueFn = Arc<dyn Fn(&ConfigPoint) -> Result<f64> + Send + Sync>;
type GradientFn = Arc<dyn Fn(&ConfigPoint) -> Result<ConfigVector> + Send + Sync>;
type VectorValueFn = Arc<dyn Fn(&ConfigPoint) -> Result<ConfigVector> + Send + Sync>;
type JacobianFn = Arc<dyn Fn(&ConfigPoint) -> Result<SquareMatrix> + Send + Sync>;

/// Declared singular loci of a field, used for deterministic domain checks.
///
/// The nucleus is fixed at the coordinate origin, so "particle origins" means
/// any particle radius near zero and "coincidences" any pair distance near
/// zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularLoci {
    /// Smooth everywhere.
    None,
    /// Singular where any particle sits at the nucleus.
    ParticleOrigins,
    /// Singular where two particles coincide.
    Coincidences,
    /// Both of the above.
    OriginsAndCoincidences,
}

impl SingularLoci {
    /// Distance from `x` to the nearest declared singular locus
    /// (infinite when there are none).
    pub fn min_distance(&self, x: &ConfigPoint) -> f64 {
        let origins = || {
            (0..x.n_particles())
                .map(|i| particle_radius(x, i).expect("index in range"))
                .fold(f64::INFINITY, f64::min)
        };
        let coincidences = || {
            let n = x.n_particles();
            let mut d = f64::INFINITY;
            for i in 0..n {
                for j in (i + 1)..n {
                    d = d.min(pair_distance(x, i, j).expect("indices valid"));
                }
            }
            d
        };
        match self {
            SingularLoci::None => f64::INFINITY,
            SingularLoci::ParticleOrigins => origins(),
            SingularLoci::Coincidences => coincidences(),
            SingularLoci::OriginsAndCoincidences => origins().min(coincidences()),
        }
    }

    /// Union of two declarations, for composed fields.
    pub fn merge(a: SingularLoci, b: SingularLoci) -> SingularLoci {
        use SingularLoci::*;
        match (a, b) {
            (None, other) | (other, None) => other,
            (ParticleOrigins, ParticleOrigins) => ParticleOrigins,
            (Coincidences, Coincidences) => Coincidences,
            _ => OriginsAndCoincidences,
        }
    }
}

/// Finite-difference scheme: base step and whether to Richardson-extrapolate
/// with steps h and h/2.
#[derive(Debug, Clone, Copy)]
pub struct FdScheme {
    step: f64,
    richardson: bool,
}

impl FdScheme {
    /// Step must lie in [1e-6, 1e-2] Bohr.
    pub fn new(step: f64, richardson: bool) -> Result<Self> {
        if !(1e-6..=1e-2).contains(&step) {
            return Err(CoreError::invalid_config(format!(
                "finite-difference step {step:e} outside [1e-6, 1e-2]"
            )));
        }
        Ok(FdScheme { step, richardson })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn richardson(&self) -> bool {
        self.richardson
    }
}

impl Default for FdScheme {
    /// h = 1e-4 Bohr with Richardson extrapolation: balances truncation
    /// against roundoff for double precision on fields of order unity.
    fn default() -> Self {
        FdScheme {
            step: 1e-4,
            richardson: true,
        }
    }
}

/// A real-valued function on configuration space, optionally carrying
/// analytic first and second derivatives.
#[derive(Clone)]
pub struct ScalarField {
    n_particles: usize,
    value: ValueFn,
    gradient: Option<GradientFn>,
    laplacian: Option<ValueFn>,
    domain: SingularLoci,
}

impl ScalarField {
    /// Field from an infallible closure; no singular loci, no analytic
    /// derivatives.
    pub fn from_fn<F>(n_particles: usize, f: F) -> Self
    where
        F: Fn(&ConfigPoint) -> f64 + Send + Sync + 'static,
    {
        ScalarField {
            n_particles,
            value: Arc::new(move |x| Ok(f(x))),
            gradient: None,
            laplacian: None,
            domain: SingularLoci::None,
        }
    }

    /// Field from a fallible closure (for values that divide by a radius).
    pub fn from_try_fn<F>(n_particles: usize, f: F) -> Self
    where
        F: Fn(&ConfigPoint) -> Result<f64> + Send + Sync + 'static,
    {
        ScalarField {
            n_particles,
            value: Arc::new(f),
            gradient: None,
            laplacian: None,
            domain: SingularLoci::None,
        }
    }

    pub fn with_domain(mut self, domain: SingularLoci) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&ConfigPoint) -> ConfigVector + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(move |x| Ok(g(x))));
        self
    }

    pub fn with_try_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&ConfigPoint) -> Result<ConfigVector> + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn with_laplacian<L>(mut self, l: L) -> Self
    where
        L: Fn(&ConfigPoint) -> f64 + Send + Sync + 'static,
    {
        self.laplacian = Some(Arc::new(move |x| Ok(l(x))));
        self
    }

    pub fn with_try_laplacian<L>(mut self, l: L) -> Self
    where
        L: Fn(&ConfigPoint) -> Result<f64> + Send + Sync + 'static,
    {
        self.laplacian = Some(Arc::new(l));
        self
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn domain(&self) -> SingularLoci {
        self.domain
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn has_laplacian(&self) -> bool {
        self.laplacian.is_some()
    }

    /// Evaluates the field value.
    pub fn eval(&self, x: &ConfigPoint) -> Result<f64> {
        self.check_dim(x)?;
        (self.value)(x)
    }

    /// A copy that exposes only the value closure, forcing every operator
    /// onto the finite-difference route.
    pub fn value_only(&self) -> ScalarField {
        ScalarField {
            n_particles: self.n_particles,
            value: self.value.clone(),
            gradient: None,
            laplacian: None,
            domain: self.domain,
        }
    }

    /// Pointwise linear combination a·self + b·other. Analytic derivatives
    /// are combined when both sides carry them.
    pub fn linear_combination(&self, a: f64, other: &ScalarField, b: f64) -> ScalarField {
        assert_eq!(self.n_particles, other.n_particles);
        let (f, g) = (self.clone(), other.clone());
        let value: ValueFn = Arc::new(move |x| Ok(a * f.eval(x)? + b * g.eval(x)?));
        let gradient = match (self.gradient.clone(), other.gradient.clone()) {
            (Some(gf), Some(gg)) => {
                let grad: GradientFn =
                    Arc::new(move |x| Ok(gf(x)?.scaled(a).add(&gg(x)?.scaled(b))));
                Some(grad)
            }
            _ => None,
        };
        let laplacian = match (self.laplacian.clone(), other.laplacian.clone()) {
            (Some(lf), Some(lg)) => {
                let lap: ValueFn = Arc::new(move |x| Ok(a * lf(x)? + b * lg(x)?));
                Some(lap)
            }
            _ => None,
        };
        ScalarField {
            n_particles: self.n_particles,
            value,
            gradient,
            laplacian,
            domain: SingularLoci::merge(self.domain, other.domain),
        }
    }

    fn check_dim(&self, x: &ConfigPoint) -> Result<()> {
        if x.n_particles() != self.n_particles {
            return Err(CoreError::DimensionMismatch {
                expected: 3 * self.n_particles,
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn analytic_gradient(&self, x: &ConfigPoint) -> Option<Result<ConfigVector>> {
        self.gradient.as_ref().map(|g| g(x))
    }

    fn analytic_laplacian(&self, x: &ConfigPoint) -> Option<Result<f64>> {
        self.laplacian.as_ref().map(|l| l(x))
    }
}

/// A 3n-component vector-valued function on configuration space, optionally
/// carrying an analytic Jacobian, divergence, and gradient-of-divergence.
///
/// The divergence and its gradient are separate channels because common
/// compositions (A applied to a scalar field, catalog sector-two states) admit
/// closed forms for ∇·F and ∇(∇·F) even when the full Jacobian does not
/// propagate.
#[derive(Clone)]
pub struct VectorField {
    n_particles: usize,
    value: VectorValueFn,
    jacobian: Option<JacobianFn>,
    divergence: Option<ValueFn>,
    div_gradient: Option<GradientFn>,
    domain: SingularLoci,
}

impl VectorField {
    pub fn from_fn<F>(n_particles: usize, f: F) -> Self
    where
        F: Fn(&ConfigPoint) -> ConfigVector + Send + Sync + 'static,
    {
        VectorField {
            n_particles,
            value: Arc::new(move |x| Ok(f(x))),
            jacobian: None,
            divergence: None,
            div_gradient: None,
            domain: SingularLoci::None,
        }
    }

    pub fn from_try_fn<F>(n_particles: usize, f: F) -> Self
    where
        F: Fn(&ConfigPoint) -> Result<ConfigVector> + Send + Sync + 'static,
    {
        VectorField {
            n_particles,
            value: Arc::new(f),
            jacobian: None,
            divergence: None,
            div_gradient: None,
            domain: SingularLoci::None,
        }
    }

    /// The zero field.
    pub fn zero(n_particles: usize) -> Self {
        VectorField::from_fn(n_particles, move |_| ConfigVector::zeros(n_particles))
            .with_jacobian(move |_| SquareMatrix::zeros(3 * n_particles))
            .with_divergence(|_| 0.0)
            .with_div_gradient(move |_| ConfigVector::zeros(n_particles))
    }

    pub fn with_domain(mut self, domain: SingularLoci) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_jacobian<J>(mut self, j: J) -> Self
    where
        J: Fn(&ConfigPoint) -> SquareMatrix + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(move |x| Ok(j(x))));
        self
    }

    pub fn with_try_jacobian<J>(mut self, j: J) -> Self
    where
        J: Fn(&ConfigPoint) -> Result<SquareMatrix> + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(j));
        self
    }

    pub fn with_divergence<D>(mut self, d: D) -> Self
    where
        D: Fn(&ConfigPoint) -> f64 + Send + Sync + 'static,
    {
        self.divergence = Some(Arc::new(move |x| Ok(d(x))));
        self
    }

    pub fn with_try_divergence<D>(mut self, d: D) -> Self
    where
        D: Fn(&ConfigPoint) -> Result<f64> + Send + Sync + 'static,
    {
        self.divergence = Some(Arc::new(d));
        self
    }

    pub fn with_div_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&ConfigPoint) -> ConfigVector + Send + Sync + 'static,
    {
        self.div_gradient = Some(Arc::new(move |x| Ok(g(x))));
        self
    }

    pub fn with_try_div_gradient<G>(mut self, g: G) -> Self
    where
        G: Fn(&ConfigPoint) -> Result<ConfigVector> + Send + Sync + 'static,
    {
        self.div_gradient = Some(Arc::new(g));
        self
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn domain(&self) -> SingularLoci {
        self.domain
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn has_divergence(&self) -> bool {
        self.divergence.is_some()
    }

    pub fn has_div_gradient(&self) -> bool {
        self.div_gradient.is_some()
    }

    pub fn eval(&self, x: &ConfigPoint) -> Result<ConfigVector> {
        self.check_dim(x)?;
        (self.value)(x)
    }

    /// A copy exposing only the value closure (finite-difference route).
    pub fn value_only(&self) -> VectorField {
        VectorField {
            n_particles: self.n_particles,
            value: self.value.clone(),
            jacobian: None,
            divergence: None,
            div_gradient: None,
            domain: self.domain,
        }
    }

    /// Pointwise a·self + b·other, analytic channels combined when both
    /// sides carry them.
    pub fn linear_combination(&self, a: f64, other: &VectorField, b: f64) -> VectorField {
        assert_eq!(self.n_particles, other.n_particles);
        let (f, g) = (self.clone(), other.clone());
        let value: VectorValueFn =
            Arc::new(move |x| Ok(f.eval(x)?.scaled(a).add(&g.eval(x)?.scaled(b))));
        let jacobian = match (self.jacobian.clone(), other.jacobian.clone()) {
            (Some(jf), Some(jg)) => {
                let j: JacobianFn = Arc::new(move |x| Ok(jf(x)?.scaled(a).add(&jg(x)?.scaled(b))));
                Some(j)
            }
            _ => None,
        };
        let divergence = match (self.divergence.clone(), other.divergence.clone()) {
            (Some(df), Some(dg)) => {
                let d: ValueFn = Arc::new(move |x| Ok(a * df(x)? + b * dg(x)?));
                Some(d)
            }
            _ => None,
        };
        let div_gradient = match (self.div_gradient.clone(), other.div_gradient.clone()) {
            (Some(gf), Some(gg)) => {
                let g: GradientFn = Arc::new(move |x| Ok(gf(x)?.scaled(a).add(&gg(x)?.scaled(b))));
                Some(g)
            }
            _ => None,
        };
        VectorField {
            n_particles: self.n_particles,
            value,
            jacobian,
            divergence,
            div_gradient,
            domain: SingularLoci::merge(self.domain, other.domain),
        }
    }

    /// Pointwise product g·F with a scalar field. The Jacobian propagates
    /// when g has an analytic gradient; the divergence when g additionally
    /// has one and F a divergence.
    pub fn scaled_by_field(&self, g: &ScalarField) -> VectorField {
        assert_eq!(self.n_particles, g.n_particles());
        let (f, s) = (self.clone(), g.clone());
        let value: VectorValueFn = Arc::new(move |x| Ok(f.eval(x)?.scaled(s.eval(x)?)));
        let divergence = match (self.divergence.clone(), g.gradient.clone()) {
            (Some(df), Some(gg)) => {
                let (f2, s2) = (self.clone(), g.clone());
                let d: ValueFn =
                    Arc::new(move |x| Ok(s2.eval(x)? * df(x)? + gg(x)?.dot(&f2.eval(x)?)));
                Some(d)
            }
            _ => None,
        };
        VectorField {
            n_particles: self.n_particles,
            value,
            jacobian: None,
            divergence,
            div_gradient: None,
            domain: SingularLoci::merge(self.domain, g.domain()),
        }
    }

    fn check_dim(&self, x: &ConfigPoint) -> Result<()> {
        if x.n_particles() != self.n_particles {
            return Err(CoreError::DimensionMismatch {
                expected: 3 * self.n_particles,
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn analytic_jacobian(&self, x: &ConfigPoint) -> Option<Result<SquareMatrix>> {
        self.jacobian.as_ref().map(|j| j(x))
    }

    fn analytic_divergence(&self, x: &ConfigPoint) -> Option<Result<f64>> {
        self.divergence.as_ref().map(|d| d(x))
    }

    pub(crate) fn analytic_div_gradient(&self, x: &ConfigPoint) -> Option<Result<ConfigVector>> {
        self.div_gradient.as_ref().map(|g| g(x))
    }
}

/// Dense square matrix, row-major; entry (i, j) of a Jacobian is ∂F_j/∂u_i.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest |M_ij − M_ji|.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Row-contraction (M v)_i = Σ_j M_ij v_j.
    pub fn mul_vec(&self, v: &ConfigVector) -> ConfigVector {
        assert_eq!(self.dim, v.dim(), "matrix/vector dimension mismatch");
        let mut out = vec![0.0; self.dim];
        for (i, slot) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *slot = row.iter().zip(v.components()).map(|(m, c)| m * c).sum();
        }
        ConfigVector::new(out).expect("dimension preserved")
    }

    pub fn scaled(&self, a: f64) -> SquareMatrix {
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * a).collect(),
        }
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, other.dim);
        SquareMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

fn check_fd_distance(domain: SingularLoci, x: &ConfigPoint, step: f64) -> Result<()> {
    let d = domain.min_distance(x);
    if d < 2.0 * step {
        return Err(CoreError::SingularProximity {
            distance: d,
            required: 2.0 * step,
        });
    }
    Ok(())
}

fn central_first<F: Fn(f64) -> Result<f64>>(eval: F, h: f64, richardson: bool) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((eval(h)? - eval(-h)?) / (2.0 * h)) };
    if richardson {
        Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
    } else {
        d(h)
    }
}

fn central_second<F: Fn(f64) -> Result<f64>>(
    eval: F,
    center: f64,
    h: f64,
    richardson: bool,
) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((eval(h)? - 2.0 * center + eval(-h)?) / (h * h)) };
    if richardson {
        Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
    } else {
        d(h)
    }
}

/// Gradient of a scalar field: the analytic closure when present, otherwise
/// central differences per component.
pub fn grad(f: &ScalarField, x: &ConfigPoint, s: &FdScheme) -> Result<ConfigVector> {
    if let Some(g) = f.analytic_gradient(x) {
        return g;
    }
    grad_numeric(f, x, s)
}

/// Central-difference gradient, ignoring any analytic closure
/// (cross-validation route).
pub fn grad_numeric(f: &ScalarField, x: &ConfigPoint, s: &FdScheme) -> Result<ConfigVector> {
    check_fd_distance(f.domain(), x, s.step())?;
    let mut out = vec![0.0; x.dim()];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = central_first(|h| f.eval(&x.shifted(j, h)), s.step(), s.richardson())?;
    }
    ConfigVector::new(out)
}

/// Divergence Σ_j ∂F_j/∂u_j: analytic divergence, else Jacobian trace, else
/// central differences.
pub fn divergence(f: &VectorField, x: &ConfigPoint, s: &FdScheme) -> Result<f64> {
    if let Some(d) = f.analytic_divergence(x) {
        return d;
    }
    if let Some(j) = f.analytic_jacobian(x) {
        return Ok(j?.trace());
    }
    divergence_numeric(f, x, s)
}

/// Central-difference divergence (cross-validation route).
pub fn divergence_numeric(f: &VectorField, x: &ConfigPoint, s: &FdScheme) -> Result<f64> {
    check_fd_distance(f.domain(), x, s.step())?;
    let mut sum = 0.0;
    for j in 0..x.dim() {
        sum += central_first(
            |h| Ok(f.eval(&x.shifted(j, h))?.components()[j]),
            s.step(),
            s.richardson(),
        )?;
    }
    Ok(sum)
}

/// Laplacian Σ_j ∂²f/∂u_j²: analytic closure when present, else second-order
/// central differences.
pub fn laplacian(f: &ScalarField, x: &ConfigPoint, s: &FdScheme) -> Result<f64> {
    if let Some(l) = f.analytic_laplacian(x) {
        return l;
    }
    laplacian_numeric(f, x, s)
}

/// Central-difference Laplacian (cross-validation route).
pub fn laplacian_numeric(f: &ScalarField, x: &ConfigPoint, s: &FdScheme) -> Result<f64> {
    check_fd_distance(f.domain(), x, s.step())?;
    let center = f.eval(x)?;
    let mut sum = 0.0;
    for j in 0..x.dim() {
        sum += central_second(
            |h| f.eval(&x.shifted(j, h)),
            center,
            s.step(),
            s.richardson(),
        )?;
    }
    Ok(sum)
}

/// Jacobian with entry (i, j) = ∂F_j/∂u_i: analytic closure when present,
/// else central differences.
pub fn jacobian(f: &VectorField, x: &ConfigPoint, s: &FdScheme) -> Result<SquareMatrix> {
    if let Some(j) = f.analytic_jacobian(x) {
        return j;
    }
    jacobian_numeric(f, x, s)
}

/// Central-difference Jacobian (cross-validation route).
pub fn jacobian_numeric(f: &VectorField, x: &ConfigPoint, s: &FdScheme) -> Result<SquareMatrix> {
    check_fd_distance(f.domain(), x, s.step())?;
    let dim = x.dim();
    let mut m = SquareMatrix::zeros(dim);
    for i in 0..dim {
        let diff = |h: f64| -> Result<ConfigVector> {
            Ok(f.eval(&x.shifted(i, h))?
                .sub(&f.eval(&x.shifted(i, -h))?)
                .scaled(1.0 / (2.0 * h)))
        };
        let h = s.step();
        let row = if s.richardson() {
            diff(h / 2.0)?
                .scaled(4.0 / 3.0)
                .sub(&diff(h)?.scaled(1.0 / 3.0))
        } else {
            diff(h)?
        };
        for j in 0..dim {
            m.set(i, j, row.components()[j]);
        }
    }
    Ok(m)
}

/// The exchange operator P₁₂ on a two-particle vector field:
/// (P₁₂F)(x) = swap_blocks(F(exchange_12(x))). Analytic channels transform
/// covariantly (the divergence composes with the exchanged point, the
/// Jacobian conjugates by the block permutation).
pub fn exchange_12_field(f: &VectorField) -> Result<VectorField> {
    use crate::geometry::{exchange_12, swap_particle_blocks};
    if f.n_particles() != 2 {
        return Err(CoreError::TwoParticlesRequired {
            got: f.n_particles(),
        });
    }
    let g = f.clone();
    let mut out =
        VectorField::from_try_fn(2, move |x| swap_particle_blocks(&g.eval(&exchange_12(x)?)?))
            .with_domain(f.domain());
    if let Some(d) = f.divergence.clone() {
        out = out.with_try_divergence(move |x| d(&exchange_12(x)?));
    }
    if let Some(g) = f.div_gradient.clone() {
        out = out.with_try_div_gradient(move |x| swap_particle_blocks(&g(&exchange_12(x)?)?));
    }
    if let Some(j) = f.jacobian.clone() {
        out = out.with_try_jacobian(move |x| {
            let m = j(&exchange_12(x)?)?;
            let perm = |k: usize| (k + 3) % 6;
            let mut swapped = SquareMatrix::zeros(6);
            for i in 0..6 {
                for l in 0..6 {
                    swapped.set(i, l, m.get(perm(i), perm(l)));
                }
            }
            Ok(swapped)
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::unit_vector_lift;

    fn radial_field() -> ScalarField {
        // f = e^{-r} in 3-D, hand-differentiated oracle derivatives.
        ScalarField::from_try_fn(1, |x| Ok((-particle_radius(x, 0)?).exp()))
            .with_domain(SingularLoci::ParticleOrigins)
    }

    #[test]
    fn grad_of_constant_vanishes() {
        let f = ScalarField::from_fn(1, |_| 7.5);
        let x = ConfigPoint::from_particles(&[[0.4, -0.2, 1.1]]);
        let g = grad(&f, &x, &FdScheme::default()).unwrap();
        for c in g.components() {
            assert!(c.abs() < 1e-9, "component {c}");
        }
    }

    #[test]
    fn grad_of_hydrogen_ground_state() {
        // d/dr e^{-r} = -e^{-r}, direction r̂ → (-e^{-1}, 0, 0) at (1,0,0).
        let f = radial_field();
        let x = ConfigPoint::from_particles(&[[1.0, 0.0, 0.0]]);
        let g = grad(&f, &x, &FdScheme::default()).unwrap();
        let expect = -(-1.0f64).exp();
        assert!((g.components()[0] - expect).abs() < 1e-10);
        assert!(g.components()[1].abs() < 1e-10);
        assert!(g.components()[2].abs() < 1e-10);
    }

    #[test]
    fn laplacian_of_e_minus_r_at_unit_radius() {
        // ∇²e^{-r} = (1 - 2/r) e^{-r}; at r = 1 this is -e^{-1}.
        let f = radial_field();
        let x = ConfigPoint::from_particles(&[[0.0, 1.0, 0.0]]);
        let l = laplacian(&f, &x, &FdScheme::default()).unwrap();
        assert!((l - (-(-1.0f64).exp())).abs() < 1e-7, "lap = {l}");
    }

    #[test]
    fn laplacian_of_r_squared_is_six() {
        let f = ScalarField::from_fn(1, |x| x.coords().iter().map(|c| c * c).sum());
        let x = ConfigPoint::from_particles(&[[0.3, -0.8, 2.0]]);
        let l = laplacian(&f, &x, &FdScheme::default()).unwrap();
        assert!((l - 6.0).abs() < 1e-6);
    }

    #[test]
    fn divergence_of_unit_radial_field() {
        // ∇·r̂ = 2/r in three dimensions.
        let f = VectorField::from_try_fn(1, |x| unit_vector_lift(x, 0))
            .with_domain(SingularLoci::ParticleOrigins);
        for r in [0.5, 1.0, 2.0, 5.0] {
            let x = ConfigPoint::from_particles(&[[0.0, 0.0, r]]);
            let d = divergence(&f, &x, &FdScheme::default()).unwrap();
            assert!((d - 2.0 / r).abs() < 1e-8, "r={r} div={d}");
        }
    }

    #[test]
    fn divergence_of_constant_field() {
        let f = VectorField::from_fn(1, |_| ConfigVector::new(vec![1.0, -2.0, 0.5]).unwrap());
        let x = ConfigPoint::from_particles(&[[1.0, 1.0, 1.0]]);
        assert!(divergence(&f, &x, &FdScheme::default()).unwrap().abs() < 1e-10);
    }

    #[test]
    fn jacobian_of_identity_map() {
        let f = VectorField::from_fn(1, |x| ConfigVector::new(x.coords().to_vec()).unwrap());
        let x = ConfigPoint::from_particles(&[[0.2, 0.7, -1.0]]);
        let m = jacobian(&f, &x, &FdScheme::default()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((m.get(i, j) - expect).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn jacobian_of_unit_radial_field_at_diagonal_point() {
        // ∂(x_j/r)/∂x_i = (δ_ij - x_i x_j / r²)/r, checked at (1,1,1).
        let f = VectorField::from_try_fn(1, |x| unit_vector_lift(x, 0))
            .with_domain(SingularLoci::ParticleOrigins);
        let x = ConfigPoint::from_particles(&[[1.0, 1.0, 1.0]]);
        let r = 3f64.sqrt();
        let m = jacobian(&f, &x, &FdScheme::default()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let expect = (delta - 1.0 / 3.0) / r;
                assert!((m.get(i, j) - expect).abs() < 1e-8, "({i},{j})");
            }
        }
    }

    #[test]
    fn jacobian_trace_equals_divergence() {
        let f = VectorField::from_fn(1, |x| {
            let [a, b, c] = x.particle(0).unwrap();
            ConfigVector::new(vec![a * a * b, b * c, a + c * c]).unwrap()
        });
        let x = ConfigPoint::from_particles(&[[0.9, -0.4, 0.6]]);
        let s = FdScheme::default();
        let tr = jacobian(&f, &x, &s).unwrap().trace();
        let d = divergence(&f, &x, &s).unwrap();
        assert!((tr - d).abs() < 1e-8);
    }

    #[test]
    fn fd_refuses_singular_proximity() {
        let f = radial_field();
        let x = ConfigPoint::from_particles(&[[1e-5, 0.0, 0.0]]);
        let err = grad(&f, &x, &FdScheme::default()).unwrap_err();
        assert!(matches!(err, CoreError::SingularProximity { .. }));
    }

    #[test]
    fn scheme_step_bounds() {
        assert!(FdScheme::new(1e-7, true).is_err());
        assert!(FdScheme::new(0.1, false).is_err());
        assert!(FdScheme::new(1e-3, true).is_ok());
    }

    #[test]
    fn analytic_gradient_is_preferred() {
        // A deliberately wrong analytic gradient must win over differencing.
        let f = ScalarField::from_fn(1, |x| x.coords()[0])
            .with_gradient(|_| ConfigVector::new(vec![42.0, 0.0, 0.0]).unwrap());
        let x = ConfigPoint::from_particles(&[[0.0, 0.0, 0.0]]);
        let g = grad(&f, &x, &FdScheme::default()).unwrap();
        assert_eq!(g.components()[0], 42.0);
        let gn = grad_numeric(&f.value_only(), &x, &FdScheme::default()).unwrap();
        assert!((gn.components()[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exchanged_field_jacobian_matches_differences() {
        // The analytic Jacobian of P₁₂F conjugates by the block permutation;
        // cross-check against central differences of the exchanged values.
        let f = VectorField::from_fn(2, |x| {
            let [ax, ay, az] = x.particle(0).unwrap();
            let [bx, by, bz] = x.particle(1).unwrap();
            ConfigVector::new(vec![
                ax * ax + by,
                ay * bz,
                az + bx * bx,
                bx * ay,
                by * by - ax,
                bz * az * az,
            ])
            .unwrap()
        })
        .with_jacobian(|x| {
            let [ax, ay, az] = x.particle(0).unwrap();
            let [bx, by, bz] = x.particle(1).unwrap();
            let mut m = SquareMatrix::zeros(6);
            // Column j holds ∂F_j/∂u_i for row i.
            m.set(0, 0, 2.0 * ax);
            m.set(4, 0, 1.0);
            m.set(1, 1, bz);
            m.set(5, 1, ay);
            m.set(2, 2, 1.0);
            m.set(3, 2, 2.0 * bx);
            m.set(1, 3, bx);
            m.set(3, 3, ay);
            m.set(4, 4, 2.0 * by);
            m.set(0, 4, -1.0);
            m.set(5, 5, az * az);
            m.set(2, 5, 2.0 * bz * az);
            m
        });
        let swapped = exchange_12_field(&f).unwrap();
        let x = ConfigPoint::from_particles(&[[0.4, -0.7, 1.1], [0.9, 0.2, -0.5]]);
        let s = FdScheme::default();
        let analytic = jacobian(&swapped, &x, &s).unwrap();
        let numeric = jacobian_numeric(&swapped.value_only(), &x, &s).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert!(
                    (analytic.get(i, j) - numeric.get(i, j)).abs() < 1e-7,
                    "({i},{j}): {} vs {}",
                    analytic.get(i, j),
                    numeric.get(i, j)
                );
            }
        }
        // And the divergence channel follows the same composition rule.
        let f_div = f.with_divergence(|x| {
            let [ax, ay, az] = x.particle(0).unwrap();
            let [_, by, bz] = x.particle(1).unwrap();
            2.0 * ax + bz + 1.0 + ay + 2.0 * by + az * az
        });
        let swapped_div = exchange_12_field(&f_div).unwrap();
        let da = divergence(&swapped_div, &x, &s).unwrap();
        let dn = divergence_numeric(&swapped_div.value_only(), &x, &s).unwrap();
        assert!((da - dn).abs() < 1e-7, "{da} vs {dn}");
    }

    #[test]
    fn matrix_asymmetry_measure() {
        let mut m = SquareMatrix::zeros(2);
        m.set(0, 1, 1.5);
        m.set(1, 0, 1.0);
        assert!((m.max_asymmetry() - 0.5).abs() < 1e-15);
    }
}
