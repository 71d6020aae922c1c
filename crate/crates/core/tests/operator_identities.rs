//! Cross-validation of the operator stack against independent oracles:
//! hand-coded chain-rule derivatives, radial quadrature with hand-derived
//! angular factors, and the SUSY factorization/intertwining identities.

use std::f64::consts::PI;

use susyqm_core::diffops::{self, FdScheme, ScalarField, SingularLoci, VectorField};
use susyqm_core::geometry::{pair_distance, particle_radius, ConfigPoint, ConfigVector};
use susyqm_core::helium::{self, PadeJastrowParams};
use susyqm_core::hydrogen::{self, HydrogenLabel, SectorTwoLabel};
use susyqm_core::sampling::{
    self, mc_ratio, radial_quadrature_default, sample_regular_points, FieldPair, MetropolisConfig,
};
use susyqm_core::susy::{self, ChargeContext};

fn hydrogen_points(n: usize, seed: u64) -> Vec<ConfigPoint> {
    sample_regular_points(n, 1, 2.0, seed, SingularLoci::ParticleOrigins, 0.1)
}

fn helium_points(n: usize, seed: u64) -> Vec<ConfigPoint> {
    sample_regular_points(n, 2, 1.5, seed, SingularLoci::OriginsAndCoincidences, 0.15)
}

/// Term-by-term chain-rule gradient of the Padé-Jastrow exponent
/// -z r₁ - z r₂ + s/(2(1+αs)), coded independently of the library (quotient
/// rule left explicit).
fn oracle_exponent_gradient(alpha: f64, z: f64, x: &ConfigPoint) -> Vec<f64> {
    let a = x.particle(0).unwrap();
    let b = x.particle(1).unwrap();
    let r1 = particle_radius(x, 0).unwrap();
    let r2 = particle_radius(x, 1).unwrap();
    let s = pair_distance(x, 0, 1).unwrap();
    let d = 2.0 * (1.0 + alpha * s);
    // d/ds [ s / (2(1+αs)) ] by the quotient rule, not simplified.
    let jastrow_slope = (1.0 * d - s * 2.0 * alpha) / (d * d);
    let mut g = vec![0.0; 6];
    for k in 0..3 {
        let ds_d1 = (a[k] - b[k]) / s;
        g[k] = -z * a[k] / r1 + jastrow_slope * ds_d1;
        g[3 + k] = -z * b[k] / r2 + jastrow_slope * (-ds_d1);
    }
    g
}

#[test]
fn pade_jastrow_gradient_matches_symbolic_oracle() {
    let params = PadeJastrowParams::new(0.353).unwrap();
    let psi = helium::pade_jastrow(&params);
    let scheme = FdScheme::default();
    for x in helium_points(100, 101) {
        let value = psi.eval(&x).unwrap();
        let grad = diffops::grad(&psi, &x, &scheme).unwrap();
        let oracle = oracle_exponent_gradient(0.353, 2.0, &x);
        for (g, o) in grad.components().iter().zip(&oracle) {
            assert!((g - o * value).abs() < 1e-8 * value.abs().max(1.0));
        }
    }
}

#[test]
fn helium_superpotential_matches_symbolic_oracle() {
    let params = PadeJastrowParams::new(0.353).unwrap();
    let w = helium::helium_superpotential(&params);
    for x in helium_points(100, 103) {
        let wx = w.eval(&x).unwrap();
        let oracle = oracle_exponent_gradient(0.353, 2.0, &x);
        for (got, o) in wx.components().iter().zip(&oracle) {
            assert!((got + o).abs() < 1e-12, "{got} vs {}", -o);
        }
    }
}

#[test]
fn analytic_numeric_cross_validation_of_catalog_fields() {
    // Every analytic derivative channel agrees with Richardson central
    // differences at h = 1e-4 away from singular loci.
    let scheme = FdScheme::default();
    let pts = hydrogen_points(1000, 107);
    for label in [
        HydrogenLabel::OneS,
        HydrogenLabel::TwoS,
        HydrogenLabel::TwoPx,
        HydrogenLabel::TwoPy,
        HydrogenLabel::TwoPz,
    ] {
        let f = hydrogen::hydrogen_state(label).unwrap().field;
        for x in pts.iter() {
            let ga = diffops::grad(&f, x, &scheme).unwrap();
            let gn = diffops::grad_numeric(&f, x, &scheme).unwrap();
            assert!(
                ga.sub(&gn).norm() < 1e-7,
                "{} grad dev {}",
                label.name(),
                ga.sub(&gn).norm()
            );
            let la = diffops::laplacian(&f, x, &scheme).unwrap();
            let ln = diffops::laplacian_numeric(&f, x, &scheme).unwrap();
            assert!(
                (la - ln).abs() < 1e-6,
                "{} lap dev {}",
                label.name(),
                la - ln
            );
        }
    }
    // Vector channels of a sector-two state.
    let f = hydrogen::sector_two_state(SectorTwoLabel::FromTwoPx)
        .unwrap()
        .field;
    for x in pts.iter().take(200) {
        let ja = diffops::jacobian(&f, x, &scheme).unwrap();
        let jn = diffops::jacobian_numeric(&f, x, &scheme).unwrap();
        let mut dev = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                dev = dev.max((ja.get(i, j) - jn.get(i, j)).abs());
            }
        }
        assert!(dev < 1e-7, "jacobian dev {dev}");
        let da = diffops::divergence(&f, x, &scheme).unwrap();
        let dn = diffops::divergence_numeric(&f, x, &scheme).unwrap();
        assert!((da - dn).abs() < 1e-7, "divergence dev {}", da - dn);
    }
}

#[test]
fn laplacian_equals_div_of_grad_numerically() {
    let params = PadeJastrowParams::new(0.5).unwrap();
    let psi = helium::pade_jastrow(&params).value_only();
    let scheme = FdScheme::default();
    for x in helium_points(30, 109) {
        let lap = diffops::laplacian_numeric(&psi, &x, &scheme).unwrap();
        // div(grad f) with the gradient itself along the numeric route.
        let g = psi.clone();
        let grad_field = VectorField::from_try_fn(2, move |y| {
            diffops::grad_numeric(&g, y, &FdScheme::new(1e-4, true).unwrap())
        })
        .with_domain(psi.domain());
        let div_grad = diffops::divergence_numeric(&grad_field, &x, &scheme).unwrap();
        assert!(
            (lap - div_grad).abs() < 1e-5 * lap.abs().max(1.0),
            "{lap} vs {div_grad}"
        );
    }
}

#[test]
fn factorization_identity_both_paths() {
    // ½ A†·A f = (H₁ - E₀) f for catalog eigenstates and a non-eigenstate.
    let ctx = hydrogen::context();
    let v = hydrogen::potential();
    let pts = hydrogen_points(300, 113);
    let checks: Vec<(ScalarField, f64)> = vec![
        (
            hydrogen::hydrogen_state(HydrogenLabel::TwoS).unwrap().field,
            1e-8,
        ),
        (
            hydrogen::hydrogen_state(HydrogenLabel::TwoPx)
                .unwrap()
                .field,
            1e-8,
        ),
        (
            hydrogen::hydrogen_state(HydrogenLabel::TwoPz)
                .unwrap()
                .field
                .value_only(),
            1e-5,
        ),
    ];
    for (f, tol) in checks {
        let lhs = susy::apply_adag_dot(&ctx, &susy::apply_a(&ctx, &f));
        let h1f = susy::apply_h1(&ctx, &v, &f);
        for x in &pts {
            let left = 0.5 * lhs.eval(x).unwrap();
            let right = h1f.eval(x).unwrap() - ctx.e0() * f.eval(x).unwrap();
            let scale = f.eval(x).unwrap().abs().max(1e-12);
            assert!((left - right).abs() / scale < tol, "dev at {x:?}");
        }
    }
}

#[test]
fn intertwining_maps_excited_states_to_sector_two_eigenstates() {
    // H₂ (Aψ) = E (Aψ) for sector-one eigenstates ψ at E = -1/8.
    let ctx = hydrogen::context();
    let pts = hydrogen_points(200, 127);
    for label in [HydrogenLabel::TwoS, HydrogenLabel::TwoPy] {
        let psi = hydrogen::hydrogen_state(label).unwrap();
        let image = susy::apply_a(&ctx, &psi.field);
        let h2 = susy::apply_h2(&ctx, &image);
        let report = susy::eigen_residual_vector(&h2, &image, psi.energy, &pts).unwrap();
        assert!(
            report.max_relative_residual < 1e-8,
            "{}: {report:?}",
            label.name()
        );
    }
}

#[test]
fn regeneration_cosine_for_all_four_states() {
    let ctx = hydrogen::context();
    let pts = hydrogen_points(1000, 131);
    for (s2, s1) in [
        (SectorTwoLabel::FromTwoS, HydrogenLabel::TwoS),
        (SectorTwoLabel::FromTwoPx, HydrogenLabel::TwoPx),
        (SectorTwoLabel::FromTwoPy, HydrogenLabel::TwoPy),
        (SectorTwoLabel::FromTwoPz, HydrogenLabel::TwoPz),
    ] {
        let regenerated =
            susy::apply_adag_dot(&ctx, &hydrogen::sector_two_state(s2).unwrap().field);
        let target = hydrogen::hydrogen_state(s1).unwrap().field;
        let cos = susy::cosine_similarity_scalar(&regenerated, &target, &pts).unwrap();
        assert!(cos >= 1.0 - 1e-8, "{}: cos {}", s1.name(), cos);
    }
}

#[test]
fn norm_relation_by_radial_quadrature() {
    // ∫|Aψ₂ₚ|²/∫|ψ₂ₚ|² = 2(E₁ - E₀) = 0.75, reduced to radial integrals
    // with hand-derived angular factors:
    //   |Aψ₂ₚₓ|² angular average = e^{-r}(1 + r/3 + r²/12),
    //   |ψ₂ₚₓ|²  angular average = e^{-r} r²/3.
    let numerator =
        radial_quadrature_default(|r| r * r * (-r).exp() * (1.0 + r / 3.0 + r * r / 12.0));
    let denominator = radial_quadrature_default(|r| r * r * (-r).exp() * r * r / 3.0);
    let ratio = numerator / denominator;
    assert!((ratio - 0.75).abs() < 1e-10, "quadrature ratio {ratio}");
}

#[test]
fn norm_relation_by_monte_carlo() {
    // Same ratio by importance sampling over w = ψ² + |Aψ|², so each
    // per-sample term is bounded (the two integrand fractions sum to 1).
    let ctx = hydrogen::context();
    let psi = hydrogen::hydrogen_state(HydrogenLabel::TwoPx)
        .unwrap()
        .field;
    let a_psi = susy::apply_a(&ctx, &psi);
    let (p, ap) = (psi.clone(), a_psi.clone());
    let weight = ScalarField::from_try_fn(1, move |x| {
        let v = ap.eval(x)?;
        Ok(p.eval(x)?.powi(2) + v.dot(&v))
    })
    .with_domain(SingularLoci::ParticleOrigins);
    let cfg = MetropolisConfig {
        n_walkers: 32,
        steps_per_walker: 5000,
        burn_in: 500,
        seed: 137,
        ..Default::default()
    };
    let est = mc_ratio(
        FieldPair::Vectors(&a_psi, &a_psi),
        FieldPair::Scalars(&psi, &psi),
        &weight,
        &cfg,
    )
    .unwrap();
    assert!(
        (est.mean - 0.75).abs() <= 3.0 * est.std_error,
        "ratio {} ± {}",
        est.mean,
        est.std_error
    );
    assert!(est.std_error < 0.02);
}

#[test]
fn hydrogen_norm_relation_for_2s_by_quadrature() {
    // A·2s = -(r/4)e^{-r/2} r̂: |A·2s|² = r²e^{-r}/16; |2s|² = (1-r/2)²e^{-r}.
    let numerator = radial_quadrature_default(|r| r * r * (-r).exp() * r * r / 16.0);
    let denominator = radial_quadrature_default(|r| r * r * (-r).exp() * (1.0 - r / 2.0).powi(2));
    assert!((numerator / denominator - 0.75).abs() < 1e-10);
}

#[test]
fn constructed_superpotentials_are_gradient_fields() {
    // Jacobian symmetry at random regular points, numeric route.
    let scheme = FdScheme::default();
    let w_h = hydrogen::hydrogen_superpotential();
    for x in hydrogen_points(50, 139) {
        let j = diffops::jacobian(&w_h, &x, &scheme).unwrap();
        assert!(j.max_asymmetry() < 1e-6);
    }
    let params = PadeJastrowParams::new(0.353).unwrap();
    let w_he = susy::superpotential_from_ground_state(&helium::pade_jastrow(&params));
    for x in helium_points(20, 141) {
        let j = diffops::jacobian_numeric(&w_he.value_only(), &x, &scheme).unwrap();
        assert!(j.max_asymmetry() < 1e-6, "asymmetry {}", j.max_asymmetry());
    }
}

#[test]
fn orthogonality_of_catalog_states_by_quadrature() {
    // ⟨1s|2s⟩ = 4π ∫ r² e^{-r}(1 - r/2)e^{-r/2} dr vanishes.
    let overlap = 4.0
        * PI
        * radial_quadrature_default(|r| r * r * (-r).exp() * (1.0 - r / 2.0) * (-r / 2.0).exp());
    // Scale against the norms to make "zero" meaningful.
    let n1 = 4.0 * PI * radial_quadrature_default(|r| r * r * (-2.0 * r).exp());
    let n2 = 4.0 * PI * radial_quadrature_default(|r| r * r * (1.0 - r / 2.0).powi(2) * (-r).exp());
    assert!(overlap.abs() / (n1 * n2).sqrt() < 1e-12);
}

#[test]
fn polynomial_divergence_against_symbolic_oracle() {
    // F = (a x²y, b y z, c x + d z²) has divergence 2a x y + b z + 2d z.
    let (a, b, c, d) = (0.7, -1.3, 0.4, 2.1);
    let f = VectorField::from_fn(1, move |x| {
        let [px, py, pz] = x.particle(0).unwrap();
        ConfigVector::new(vec![a * px * px * py, b * py * pz, c * px + d * pz * pz]).unwrap()
    });
    let scheme = FdScheme::default();
    for x in hydrogen_points(100, 149) {
        let [px, _, pz] = x.particle(0).unwrap();
        let oracle = 2.0 * a * px * x.particle(0).unwrap()[1] + b * pz + 2.0 * d * pz;
        let got = diffops::divergence(&f, &x, &scheme).unwrap();
        assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
    }
}

#[test]
fn zero_superpotential_reduces_h1_to_kinetic_energy() {
    // Control: with W = 0 and V = 0, ½A†·A is -½∇².
    let ctx = ChargeContext::new(VectorField::zero(1), 0.0);
    let f = ScalarField::from_fn(1, |x| {
        let [px, py, pz] = x.particle(0).unwrap();
        (px * py + 0.5 * pz * pz).sin()
    });
    let lhs = susy::apply_adag_dot(&ctx, &susy::apply_a(&ctx, &f));
    let scheme = FdScheme::default();
    for x in hydrogen_points(30, 151) {
        let left = 0.5 * lhs.eval(&x).unwrap();
        let right = -0.5 * diffops::laplacian_numeric(&f, &x, &scheme).unwrap();
        assert!((left - right).abs() < 1e-5, "{left} vs {right}");
    }
}

#[test]
fn helium_local_energy_against_hylleraas_form() {
    // Independent E_L oracle in the (r₁, r₂, r₁₂) coordinates, using the
    // law of cosines for r̂₁·r̂₁₂ instead of explicit vectors.
    let params = PadeJastrowParams::new(0.353).unwrap();
    let psi = helium::pade_jastrow(&params);
    let (z, c, alpha) = (2.0, 0.5, 0.353);
    for x in helium_points(100, 157) {
        let r1 = particle_radius(&x, 0).unwrap();
        let r2 = particle_radius(&x, 1).unwrap();
        let s = pair_distance(&x, 0, 1).unwrap();
        let jp = c / (1.0 + alpha * s).powi(2);
        let jpp = -2.0 * c * alpha / (1.0 + alpha * s).powi(3);
        let c1 = (r1 * r1 - r2 * r2 + s * s) / (2.0 * r1 * s);
        let c2 = (r1 * r1 - r2 * r2 - s * s) / (2.0 * r2 * s);
        let gradsq = 2.0 * z * z + 2.0 * jp * jp - 2.0 * z * jp * (c1 - c2);
        let lapu = -2.0 * z / r1 - 2.0 * z / r2 + 2.0 * (jpp + 2.0 * jp / s);
        let v = -2.0 / r1 - 2.0 / r2 + 1.0 / s;
        let oracle = -0.5 * (gradsq + lapu) + v;
        let got = helium::local_energy(&psi, &x).unwrap();
        assert!((got - oracle).abs() < 1e-10, "{got} vs {oracle}");
    }
}

#[test]
fn helium_vmc_matches_deterministic_quadrature_value() {
    // The sector-one VMC estimate at α = 0.353 must agree with the
    // Hylleraas-quadrature expectation value -2.86745 Ha of the same trial
    // state (three standard errors).
    let params = PadeJastrowParams::new(0.353).unwrap();
    let psi = helium::pade_jastrow(&params);
    let v = helium::potential();
    let cfg = MetropolisConfig {
        n_walkers: 64,
        steps_per_walker: 4000,
        burn_in: 500,
        seed: 163,
        ..Default::default()
    };
    let est = sampling::vmc_energy(&psi, &v, &cfg).unwrap();
    assert!(
        (est.mean - (-2.86745)).abs() <= 3.0 * est.std_error,
        "mean {} ± {}",
        est.mean,
        est.std_error
    );
}
