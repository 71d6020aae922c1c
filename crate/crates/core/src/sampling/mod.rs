//! Metropolis random-walk sampling of |ψ|², Monte Carlo estimators with
//! blocking error bars, and deterministic radial quadrature.
//!
//! Reproducibility contract: the random source is ChaCha8 (`rand_chacha`).
//! Walker w of a run with seed s draws from stream w of the cipher keyed by
//! s (`ChaCha8Rng::seed_from_u64(s)` + `set_stream(w)`), so walker streams
//! are independent for every seed, and walkers are merged in index order.
//! Parallel and serial runs therefore produce bit-identical sample streams
//! and estimates on every platform.

mod quadrature;

pub use quadrature::{radial_quadrature, radial_quadrature_default, GaussLaguerre, DEFAULT_ORDER};

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::diffops::{self, FdScheme, ScalarField, SingularLoci, VectorField};
use crate::error::CoreError;
use crate::geometry::{ConfigPoint, RADIUS_EPSILON};
use crate::helium;
use crate::Result;

/// Metropolis random-walk configuration.
#[derive(Debug, Clone)]
pub struct MetropolisConfig {
    /// Independent chains; each gets its own derived seed.
    pub n_walkers: usize,
    /// Total steps per walker, including burn-in.
    pub steps_per_walker: usize,
    /// Steps discarded from the front of each chain.
    pub burn_in: usize,
    /// Gaussian proposal width in Bohr (all-particle move).
    pub step_size: f64,
    pub seed: u64,
    /// Reporting aid only; the sampler never adapts.
    pub target_acceptance: f64,
}

impl Default for MetropolisConfig {
    fn default() -> Self {
        MetropolisConfig {
            n_walkers: 64,
            steps_per_walker: 5000,
            burn_in: 500,
            step_size: 0.5,
            seed: 0,
            target_acceptance: 0.5,
        }
    }
}

impl MetropolisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_walkers == 0 {
            return Err(CoreError::invalid_config("n_walkers must be positive"));
        }
        if self.steps_per_walker <= self.burn_in {
            return Err(CoreError::invalid_config(format!(
                "steps_per_walker ({}) must exceed burn_in ({})",
                self.steps_per_walker, self.burn_in
            )));
        }
        if self.step_size.is_nan() || self.step_size <= 0.0 {
            return Err(CoreError::invalid_config("step_size must be positive"));
        }
        if self.target_acceptance.is_nan()
            || self.target_acceptance <= 0.0
            || self.target_acceptance >= 1.0
        {
            return Err(CoreError::invalid_config(
                "target_acceptance must lie in (0, 1)",
            ));
        }
        Ok(())
    }

    /// Retained samples across all walkers.
    pub fn total_samples(&self) -> usize {
        self.n_walkers * (self.steps_per_walker - self.burn_in)
    }
}

/// Monte Carlo mean with blocking error and chain diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyEstimate {
    /// Sample mean (Hartree for energies).
    pub mean: f64,
    /// Standard error from blocking analysis.
    pub std_error: f64,
    pub n_samples: usize,
    pub acceptance_rate: f64,
    /// Number of blocks at the plateau of the blocking analysis.
    pub blocks: usize,
}

/// Post-burn-in Metropolis samples of a density, walker-major order.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub points: Vec<ConfigPoint>,
    pub acceptance_rate: f64,
    /// Proposals auto-rejected for landing within RADIUS_EPSILON of a
    /// singular locus of the density.
    pub singular_rejects: usize,
}

enum Outcome<T> {
    Value(T),
    Skipped,
}

struct WalkerResult<T> {
    samples: Vec<T>,
    accepted: usize,
    proposals: usize,
    singular_rejects: usize,
    skipped: usize,
}

struct ChainSet<T> {
    per_walker: Vec<WalkerResult<T>>,
}

impl<T> ChainSet<T> {
    fn acceptance_rate(&self) -> f64 {
        let accepted: usize = self.per_walker.iter().map(|w| w.accepted).sum();
        let proposals: usize = self.per_walker.iter().map(|w| w.proposals).sum();
        if proposals == 0 {
            0.0
        } else {
            accepted as f64 / proposals as f64
        }
    }

    fn skipped(&self) -> usize {
        self.per_walker.iter().map(|w| w.skipped).sum()
    }

    fn singular_rejects(&self) -> usize {
        self.per_walker.iter().map(|w| w.singular_rejects).sum()
    }

    /// Deterministic ordered merge by walker index.
    fn flatten(self) -> Vec<T> {
        let mut out = Vec::new();
        for w in self.per_walker {
            out.extend(w.samples);
        }
        out
    }
}

/// Runs all walkers (in parallel) against a |ψ|²-style density, applying
/// `map` to every retained chain state.
fn run_chains<T, M>(density: &ScalarField, cfg: &MetropolisConfig, map: M) -> Result<ChainSet<T>>
where
    T: Send,
    M: Fn(&ConfigPoint) -> Result<Outcome<T>> + Sync,
{
    cfg.validate()?;
    let per_walker: Result<Vec<WalkerResult<T>>> = (0..cfg.n_walkers)
        .into_par_iter()
        .map(|walker| run_walker(density, cfg, walker, &map))
        .collect();
    Ok(ChainSet {
        per_walker: per_walker?,
    })
}

fn run_walker<T, M>(
    density: &ScalarField,
    cfg: &MetropolisConfig,
    walker: usize,
    map: &M,
) -> Result<WalkerResult<T>>
where
    M: Fn(&ConfigPoint) -> Result<Outcome<T>> + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(walker as u64);
    let dim = 3 * density.n_particles();
    let domain = density.domain();

    // Initial position: unit Gaussian per coordinate, resampled away from
    // singular loci and zero-density starts.
    let mut x = loop {
        let coords: Vec<f64> = (0..dim)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let candidate = ConfigPoint::new(coords)?;
        if domain.min_distance(&candidate) <= RADIUS_EPSILON {
            continue;
        }
        let rho = density.eval(&candidate)?;
        if rho < 0.0 {
            return Err(CoreError::NegativeDensity { value: rho });
        }
        if rho > 0.0 {
            break candidate;
        }
    };
    let mut rho = density.eval(&x)?;

    let mut out = WalkerResult {
        samples: Vec::with_capacity(cfg.steps_per_walker - cfg.burn_in),
        accepted: 0,
        proposals: 0,
        singular_rejects: 0,
        skipped: 0,
    };

    for step in 0..cfg.steps_per_walker {
        out.proposals += 1;
        let mut coords = x.coords().to_vec();
        for c in coords.iter_mut() {
            let eta: f64 = rng.sample(StandardNormal);
            *c += cfg.step_size * eta;
        }
        let proposal = ConfigPoint::new(coords)?;
        if domain.min_distance(&proposal) <= RADIUS_EPSILON {
            out.singular_rejects += 1;
        } else {
            let rho_new = density.eval(&proposal)?;
            if rho_new < 0.0 {
                return Err(CoreError::NegativeDensity { value: rho_new });
            }
            let accept_prob = (rho_new / rho).min(1.0);
            let u: f64 = rng.random();
            if u < accept_prob {
                x = proposal;
                rho = rho_new;
                out.accepted += 1;
            }
        }
        if step >= cfg.burn_in {
            match map(&x)? {
                Outcome::Value(v) => out.samples.push(v),
                Outcome::Skipped => out.skipped += 1,
            }
        }
    }
    Ok(out)
}

/// Metropolis sampling of a nonnegative density (|ψ|²): symmetric Gaussian
/// proposals, acceptance min(1, ρ'/ρ), burn-in discarded, proposals inside
/// RADIUS_EPSILON of a singular locus auto-rejected.
pub fn metropolis_sample(density: &ScalarField, cfg: &MetropolisConfig) -> Result<SampleSet> {
    let chains = run_chains(density, cfg, |x| Ok(Outcome::Value(x.clone())))?;
    let acceptance_rate = chains.acceptance_rate();
    let singular_rejects = chains.singular_rejects();
    Ok(SampleSet {
        points: chains.flatten(),
        acceptance_rate,
        singular_rejects,
    })
}

/// Local energy (Hψ)(x)/ψ(x) with H = -½∇² + V; errors at nodes of ψ.
pub fn local_energy(
    psi: &ScalarField,
    v: &ScalarField,
    x: &ConfigPoint,
    scheme: &FdScheme,
) -> Result<f64> {
    let p = psi.eval(x)?;
    if p == 0.0 {
        return Err(CoreError::ExcludedPoint);
    }
    let lap = diffops::laplacian(psi, x, scheme)?;
    Ok((-0.5 * lap + v.eval(x)? * p) / p)
}

/// VMC energy: mean local energy over Metropolis samples of |ψ|², with
/// blocking error bars. Excluded points (nodes, singular proximity of the
/// numeric route) are skipped and counted; more than 1% skips is a
/// sampler-quality error.
pub fn vmc_energy(
    psi: &ScalarField,
    v: &ScalarField,
    cfg: &MetropolisConfig,
) -> Result<EnergyEstimate> {
    let density = density_of(psi);
    let scheme = FdScheme::default();
    let chains = run_chains(&density, cfg, |x| match local_energy(psi, v, x, &scheme) {
        Ok(e) => Ok(Outcome::Value(e)),
        Err(CoreError::ExcludedPoint) | Err(CoreError::SingularProximity { .. }) => {
            Ok(Outcome::Skipped)
        }
        Err(e) => Err(e),
    })?;
    let acceptance_rate = chains.acceptance_rate();
    let skipped = chains.skipped();
    let samples = chains.flatten();
    let total = samples.len() + skipped;
    if skipped * 100 > total {
        return Err(CoreError::SamplerQuality { skipped, total });
    }
    Ok(estimate_from_samples(&samples, acceptance_rate))
}

/// |ψ|² as a field, inheriting the domain declaration of ψ.
pub fn density_of(psi: &ScalarField) -> ScalarField {
    let p = psi.clone();
    ScalarField::from_try_fn(psi.n_particles(), move |x| Ok(p.eval(x)?.powi(2)))
        .with_domain(psi.domain())
}

fn estimate_from_samples(samples: &[f64], acceptance_rate: f64) -> EnergyEstimate {
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n.max(1) as f64;
    let (std_error, blocks) = blocking_error(samples);
    EnergyEstimate {
        mean,
        std_error,
        n_samples: n,
        acceptance_rate,
        blocks,
    }
}

/// Standard error of the mean by blocking: block sizes double until the
/// estimate changes by less than 5% across a doubling (or fewer than 32
/// blocks would remain). Returns (std_error, blocks at plateau).
pub fn blocking_error(samples: &[f64]) -> (f64, usize) {
    if samples.len() < 2 {
        return (0.0, samples.len());
    }
    let mut level = samples.to_vec();
    let mut err = sem(&level);
    loop {
        if err == 0.0 {
            return (0.0, level.len());
        }
        if level.len() / 2 < 32 {
            return (err, level.len());
        }
        let next: Vec<f64> = level
            .chunks_exact(2)
            .map(|pair| 0.5 * (pair[0] + pair[1]))
            .collect();
        let next_err = sem(&next);
        if ((next_err - err) / err).abs() < 0.05 {
            return (next_err, next.len());
        }
        err = next_err;
        level = next;
    }
}

/// Standard error of the mean at successive block sizes (1, 2, 4, …),
/// for inspecting the blocking plateau.
pub fn blocking_curve(samples: &[f64]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    let mut level = samples.to_vec();
    let mut block = 1usize;
    while level.len() >= 32 {
        out.push((block, sem(&level)));
        level = level
            .chunks_exact(2)
            .map(|pair| 0.5 * (pair[0] + pair[1]))
            .collect();
        block *= 2;
    }
    out
}

fn sem(samples: &[f64]) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Scalar or vector integrand pair for Monte Carlo inner products.
#[derive(Clone, Copy)]
pub enum FieldPair<'a> {
    Scalars(&'a ScalarField, &'a ScalarField),
    Vectors(&'a VectorField, &'a VectorField),
}

impl<'a> FieldPair<'a> {
    fn eval(&self, x: &ConfigPoint) -> Result<f64> {
        match self {
            FieldPair::Scalars(f, g) => Ok(f.eval(x)? * g.eval(x)?),
            FieldPair::Vectors(f, g) => Ok(f.eval(x)?.dot(&g.eval(x)?)),
        }
    }
}

/// Importance-sampled estimate of ∫ f·g / ∫ w under samples of the weight
/// density w: the mean of (f·g)/w with blocking error.
pub fn mc_inner_product(
    pair: FieldPair,
    weight: &ScalarField,
    cfg: &MetropolisConfig,
) -> Result<EnergyEstimate> {
    let chains = run_chains(weight, cfg, |x| {
        let w = weight.eval(x)?;
        if w <= 0.0 {
            return Err(CoreError::NegativeDensity { value: w });
        }
        Ok(Outcome::Value(pair.eval(x)? / w))
    })?;
    let acceptance_rate = chains.acceptance_rate();
    let samples = chains.flatten();
    Ok(estimate_from_samples(&samples, acceptance_rate))
}

/// Ratio ∫ num / ∫ den estimated over a common sample of the weight density,
/// with a blocked ratio-estimator error bar. Choosing w proportional to the
/// sum of both integrands keeps the per-sample terms bounded.
pub fn mc_ratio(
    num: FieldPair,
    den: FieldPair,
    weight: &ScalarField,
    cfg: &MetropolisConfig,
) -> Result<EnergyEstimate> {
    let chains = run_chains(weight, cfg, |x| {
        let w = weight.eval(x)?;
        if w <= 0.0 {
            return Err(CoreError::NegativeDensity { value: w });
        }
        Ok(Outcome::Value((num.eval(x)? / w, den.eval(x)? / w)))
    })?;
    let acceptance_rate = chains.acceptance_rate();
    let samples = chains.flatten();
    let (ratio, std_error, blocks) = ratio_blocking(&samples);
    Ok(EnergyEstimate {
        mean: ratio,
        std_error,
        n_samples: samples.len(),
        acceptance_rate,
        blocks,
    })
}

/// Blocking for a ratio of means: residuals (n_b - R d_b)/D̄ control the
/// error of R = N̄/D̄ at each block level; same plateau rule as
/// [`blocking_error`].
fn ratio_blocking(samples: &[(f64, f64)]) -> (f64, f64, usize) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, 0.0, 0);
    }
    let num_mean = samples.iter().map(|s| s.0).sum::<f64>() / n as f64;
    let den_mean = samples.iter().map(|s| s.1).sum::<f64>() / n as f64;
    let ratio = num_mean / den_mean;
    let residuals: Vec<f64> = samples
        .iter()
        .map(|(a, b)| (a - ratio * b) / den_mean)
        .collect();
    let (std_error, blocks) = blocking_error(&residuals);
    (ratio, std_error, blocks)
}

/// One α-point of a variational scan.
#[derive(Debug, Clone)]
pub struct AlphaScan {
    pub points: Vec<(f64, EnergyEstimate)>,
    pub argmin: usize,
}

impl AlphaScan {
    pub fn argmin_alpha(&self) -> f64 {
        self.points[self.argmin].0
    }

    pub fn argmin_estimate(&self) -> &EnergyEstimate {
        &self.points[self.argmin].1
    }
}

/// Runs helium Padé-Jastrow VMC across a grid of Jastrow parameters with a
/// common seed policy (seed + index) and reports the energy curve and its
/// argmin.
pub fn alpha_scan(alphas: &[f64], cfg: &MetropolisConfig) -> Result<AlphaScan> {
    if alphas.is_empty() {
        return Err(CoreError::invalid_config("empty alpha grid"));
    }
    let v = helium::potential();
    let mut points = Vec::with_capacity(alphas.len());
    for (i, &alpha) in alphas.iter().enumerate() {
        let params = helium::PadeJastrowParams::new(alpha)?;
        let psi = helium::pade_jastrow(&params);
        let mut cfg_i = cfg.clone();
        cfg_i.seed = cfg.seed.wrapping_add(i as u64);
        points.push((alpha, vmc_energy(&psi, &v, &cfg_i)?));
    }
    let argmin = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.1.mean.total_cmp(&b.1.mean))
        .map(|(i, _)| i)
        .expect("nonempty grid");
    Ok(AlphaScan { points, argmin })
}

/// Seeded Gaussian cloud of points kept at least `min_distance` from the
/// singular loci; used by verification bundles and tests.
pub fn sample_regular_points(
    n_points: usize,
    n_particles: usize,
    scale: f64,
    seed: u64,
    domain: SingularLoci,
    min_distance: f64,
) -> Vec<ConfigPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_points);
    let mut attempts = 0usize;
    while out.len() < n_points {
        attempts += 1;
        assert!(
            attempts < 1_000_000,
            "point sampler failed to satisfy min_distance {min_distance}"
        );
        let coords: Vec<f64> = (0..3 * n_particles)
            .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let x = ConfigPoint::new(coords).expect("length is 3n");
        if domain.min_distance(&x) >= min_distance {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::particle_radius;
    use crate::hydrogen;

    fn gaussian_squared() -> ScalarField {
        // ψ = e^{-r²/2}, so |ψ|² = e^{-r²}: per-axis variance 1/2.
        ScalarField::from_try_fn(1, |x| {
            let r = particle_radius(x, 0)?;
            Ok((-r * r).exp())
        })
    }

    #[test]
    fn gaussian_density_moments() {
        let cfg = MetropolisConfig {
            n_walkers: 32,
            steps_per_walker: 4000,
            burn_in: 500,
            step_size: 0.8,
            seed: 42,
            ..Default::default()
        };
        let set = metropolis_sample(&gaussian_squared(), &cfg).unwrap();
        assert_eq!(set.points.len(), cfg.total_samples());
        for axis in 0..3 {
            let vals: Vec<f64> = set.points.iter().map(|p| p.coords()[axis]).collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
            assert!((var - 0.5).abs() < 0.02, "axis {axis}: var {var}");
        }
    }

    #[test]
    fn hydrogen_density_mean_radius() {
        // ⟨r⟩ = 1.5 Bohr for the e^{-2r} weight (Γ-ratio oracle).
        let psi = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::OneS)
            .unwrap()
            .field;
        let cfg = MetropolisConfig {
            n_walkers: 32,
            steps_per_walker: 4000,
            burn_in: 500,
            seed: 7,
            ..Default::default()
        };
        let set = metropolis_sample(&density_of(&psi), &cfg).unwrap();
        let mean_r = set
            .points
            .iter()
            .map(|p| particle_radius(p, 0).unwrap())
            .sum::<f64>()
            / set.points.len() as f64;
        assert!((mean_r - 1.5).abs() < 0.03, "⟨r⟩ = {mean_r}");
        assert!(
            set.acceptance_rate > 0.3 && set.acceptance_rate < 0.8,
            "acceptance {}",
            set.acceptance_rate
        );
    }

    #[test]
    fn seeded_streams_are_identical() {
        let cfg = MetropolisConfig {
            n_walkers: 8,
            steps_per_walker: 500,
            burn_in: 100,
            seed: 313,
            ..Default::default()
        };
        let a = metropolis_sample(&gaussian_squared(), &cfg).unwrap();
        let b = metropolis_sample(&gaussian_squared(), &cfg).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.coords(), q.coords());
        }
        assert_eq!(a.acceptance_rate, b.acceptance_rate);
    }

    #[test]
    fn config_validation() {
        let cfg = MetropolisConfig {
            burn_in: MetropolisConfig::default().steps_per_walker,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = MetropolisConfig {
            step_size: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn excessive_skips_are_a_sampler_quality_error() {
        // A potential that refuses evaluation inside r < 1 makes most of the
        // Gaussian-weighted samples excluded points.
        let psi = gaussian_squared();
        let v = ScalarField::from_try_fn(1, |x| {
            let r = particle_radius(x, 0)?;
            if r < 1.0 {
                return Err(CoreError::SingularProximity {
                    distance: r,
                    required: 1.0,
                });
            }
            Ok(-1.0 / r)
        });
        let cfg = MetropolisConfig {
            n_walkers: 4,
            steps_per_walker: 500,
            burn_in: 50,
            seed: 8,
            ..Default::default()
        };
        assert!(matches!(
            vmc_energy(&psi, &v, &cfg),
            Err(CoreError::SamplerQuality { .. })
        ));
    }

    #[test]
    fn negative_density_is_a_contract_violation() {
        let density = ScalarField::from_fn(1, |x| 1.0 - 2.0 * x.coords()[0].abs());
        let cfg = MetropolisConfig {
            n_walkers: 1,
            steps_per_walker: 200,
            burn_in: 10,
            seed: 3,
            ..Default::default()
        };
        assert!(matches!(
            metropolis_sample(&density, &cfg),
            Err(CoreError::NegativeDensity { .. })
        ));
    }

    #[test]
    fn eigenstate_local_energy_is_zero_variance() {
        let psi = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::OneS)
            .unwrap()
            .field;
        let v = hydrogen::potential();
        let cfg = MetropolisConfig {
            n_walkers: 8,
            steps_per_walker: 2000,
            burn_in: 200,
            seed: 11,
            ..Default::default()
        };
        let est = vmc_energy(&psi, &v, &cfg).unwrap();
        assert!((est.mean + 0.5).abs() < 1e-12, "mean {}", est.mean);
        assert!(est.std_error < 1e-12, "err {}", est.std_error);
    }

    #[test]
    fn gaussian_trial_respects_variational_bound() {
        // Non-eigenstate trial for hydrogen: mean above E₀ = -0.5.
        let psi = ScalarField::from_try_fn(1, |x| {
            let r = particle_radius(x, 0)?;
            Ok((-r * r / 2.0).exp())
        });
        let v = hydrogen::potential();
        let cfg = MetropolisConfig {
            n_walkers: 16,
            steps_per_walker: 3000,
            burn_in: 500,
            seed: 23,
            ..Default::default()
        };
        let est = vmc_energy(&psi, &v, &cfg).unwrap();
        assert!(
            est.mean > -0.5 + 3.0 * est.std_error,
            "mean {} err {}",
            est.mean,
            est.std_error
        );
    }

    #[test]
    fn blocking_curve_grows_to_plateau_on_correlated_chain() {
        let psi = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::OneS)
            .unwrap()
            .field;
        let cfg = MetropolisConfig {
            n_walkers: 4,
            steps_per_walker: 9000,
            burn_in: 1000,
            seed: 99,
            step_size: 0.3,
            ..Default::default()
        };
        let set = metropolis_sample(&density_of(&psi), &cfg).unwrap();
        let radii: Vec<f64> = set
            .points
            .iter()
            .map(|p| particle_radius(p, 0).unwrap())
            .collect();
        let curve = blocking_curve(&radii);
        let (err, blocks) = blocking_error(&radii);
        assert!(blocks >= 32);
        // Correlated chain: the plateau error must exceed the naive one,
        // and the curve must not decrease on the way there.
        assert!(
            err > 1.5 * curve[0].1,
            "plateau {} naive {}",
            err,
            curve[0].1
        );
        let mut prev = 0.0;
        for &(block, e) in curve.iter().take_while(|(b, _)| *b * 32 <= radii.len()) {
            assert!(e >= prev * 0.95, "sem dipped at block size {block}");
            prev = e;
        }
    }

    #[test]
    fn inner_product_positive_definite() {
        let psi = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::OneS)
            .unwrap()
            .field;
        let weight = density_of(&psi);
        let cfg = MetropolisConfig {
            n_walkers: 8,
            steps_per_walker: 1000,
            burn_in: 100,
            seed: 5,
            ..Default::default()
        };
        let est = mc_inner_product(FieldPair::Scalars(&psi, &psi), &weight, &cfg).unwrap();
        assert!(est.mean > 0.0);
    }

    #[test]
    fn orthogonality_of_one_s_and_two_s() {
        let one_s = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::OneS)
            .unwrap()
            .field;
        let two_s = hydrogen::hydrogen_state(hydrogen::HydrogenLabel::TwoS)
            .unwrap()
            .field;
        let weight = density_of(&one_s);
        let cfg = MetropolisConfig {
            n_walkers: 64,
            steps_per_walker: 3000,
            burn_in: 500,
            seed: 17,
            ..Default::default()
        };
        let est = mc_inner_product(FieldPair::Scalars(&one_s, &two_s), &weight, &cfg).unwrap();
        assert!(
            est.mean.abs() <= 3.0 * est.std_error,
            "⟨1s|2s⟩ = {} ± {}",
            est.mean,
            est.std_error
        );
    }

    #[test]
    fn scan_single_element_is_argmin() {
        let cfg = MetropolisConfig {
            n_walkers: 4,
            steps_per_walker: 600,
            burn_in: 100,
            seed: 2,
            ..Default::default()
        };
        let scan = alpha_scan(&[0.353], &cfg).unwrap();
        assert_eq!(scan.argmin, 0);
        assert_eq!(scan.argmin_alpha(), 0.353);
    }

    #[test]
    fn scan_same_seed_same_alpha_is_deterministic() {
        let cfg = MetropolisConfig {
            n_walkers: 4,
            steps_per_walker: 600,
            burn_in: 100,
            seed: 2,
            ..Default::default()
        };
        let a = alpha_scan(&[0.4], &cfg).unwrap();
        let b = alpha_scan(&[0.4], &cfg).unwrap();
        assert_eq!(a.points[0].1, b.points[0].1);
        assert!(alpha_scan(&[], &cfg).is_err());
    }
}
