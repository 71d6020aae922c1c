//! Command implementations. Every command prints deterministic output for a
//! fixed (flags, seed) pair and finishes with its run manifest, so repeated
//! runs are byte-identical.

use std::fs;
use std::io::Write;
use std::path::Path;

use susyqm_core::aufbau::{self, AufbauKind, AufbauState, CombineMode, Orbital};
use susyqm_core::diffops::SingularLoci;
use susyqm_core::geometry::{exchange_12, swap_particle_blocks, ConfigPoint};
use susyqm_core::helium::{self, PadeJastrowParams};
use susyqm_core::hydrogen::{self, VerifyPath};
use susyqm_core::sampling::{self, sample_regular_points, EnergyEstimate, MetropolisConfig};
use susyqm_core::susy::ChargeContext;

use crate::grid::{export_sector_two, GridSpec, Plane};
use crate::manifest::{csv_header, RunManifest};
use crate::CliError;

type CmdResult = Result<(), CliError>;

fn emit(w: &mut impl Write, text: &str) -> CmdResult {
    w.write_all(text.as_bytes())
        .map_err(|e| CliError::runtime(format!("writing output: {e}")))
}

fn print_manifest(w: &mut impl Write, manifest: &RunManifest) -> CmdResult {
    emit(w, "manifest:\n")?;
    emit(w, &manifest.render())
}

/// `verify-hydrogen`: prints the residual table of the consistency bundle
/// and fails (exit 1) when any check exceeds the path tolerance.
pub fn verify_hydrogen(
    path: VerifyPath,
    points: usize,
    seed: u64,
    w: &mut impl Write,
) -> CmdResult {
    if points == 0 {
        return Err(CliError::usage("--points must be positive"));
    }
    let bundle = hydrogen::verify_consistency(path, points, seed).map_err(CliError::from_core)?;
    let tol = bundle.tolerance();
    emit(
        w,
        &format!(
            "hydrogen consistency: path={} points={points} seed={seed} tolerance={tol:.1e}\n",
            path.name()
        ),
    )?;
    emit(
        w,
        &format!(
            "{:<24} {:>7} {:>14} {:>14}  {}\n",
            "check", "points", "max_residual", "mean_residual", "status"
        ),
    )?;
    for check in &bundle.checks {
        let status = if check.max_residual < tol {
            "PASS"
        } else {
            "FAIL"
        };
        emit(
            w,
            &format!(
                "{:<24} {:>7} {:>14.3e} {:>14.3e}  {}\n",
                check.name, check.points, check.max_residual, check.mean_residual, status
            ),
        )?;
    }
    let mut manifest = RunManifest::new("verify-hydrogen", seed);
    manifest
        .parameter("path", path.name())
        .parameter("points", points);
    if bundle.all_pass() {
        emit(
            w,
            &format!(
                "result: PASS (max_residual {:.3e} < tolerance {:.1e})\n",
                bundle.max_residual(),
                tol
            ),
        )?;
        print_manifest(w, &manifest)?;
        Ok(())
    } else {
        emit(
            w,
            &format!(
                "result: FAIL (max_residual {:.3e} >= tolerance {:.1e})\n",
                bundle.max_residual(),
                tol
            ),
        )?;
        print_manifest(w, &manifest)?;
        Err(CliError::quantitative(format!(
            "hydrogen consistency bundle exceeded tolerance {tol:.1e}"
        )))
    }
}

/// `sector2-export`: writes one CSV per vector component over a plane grid.
pub fn sector2_export(
    state: &str,
    plane: Plane,
    extent: f64,
    resolution: usize,
    center: [f64; 3],
    out_dir: &Path,
    w: &mut impl Write,
) -> CmdResult {
    let grid = GridSpec::new(plane, center, extent, resolution)?;
    let (manifest, paths) = export_sector_two(state, &grid, out_dir)?;
    for path in &paths {
        emit(
            w,
            &format!(
                "wrote {}\n",
                path.file_name().unwrap_or_default().to_string_lossy()
            ),
        )?;
    }
    emit(w, "wrote manifest.txt\n")?;
    print_manifest(w, &manifest)
}

fn format_estimate(alpha: f64, est: &EnergyEstimate) -> String {
    format!(
        "alpha={alpha} mean={:.6} std_error={:.6} acceptance={:.6} blocks={} samples={}\n",
        est.mean, est.std_error, est.acceptance_rate, est.blocks, est.n_samples
    )
}

/// `vmc-helium`: sector-one Padé-Jastrow VMC at one α or over a scan grid.
#[allow(clippy::too_many_arguments)]
pub fn vmc_helium(
    alpha: Option<f64>,
    scan: Option<Vec<f64>>,
    walkers: usize,
    steps: usize,
    burn: usize,
    step_size: f64,
    seed: u64,
    out: Option<&Path>,
    w: &mut impl Write,
) -> CmdResult {
    let cfg = MetropolisConfig {
        n_walkers: walkers,
        steps_per_walker: steps,
        burn_in: burn,
        step_size,
        seed,
        ..Default::default()
    };
    cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let alphas: Vec<f64> = match (&alpha, &scan) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("pass either --alpha or --scan, not both"))
        }
        (Some(a), None) => vec![*a],
        (None, Some(list)) if !list.is_empty() => list.clone(),
        _ => return Err(CliError::usage("one of --alpha or --scan is required")),
    };
    for &a in &alphas {
        if a.is_nan() || a <= 0.0 {
            return Err(CliError::usage(format!("alpha must be positive, got {a}")));
        }
    }

    emit(
        w,
        &format!(
            "vmc-helium: walkers={walkers} steps={steps} burn={burn} step_size={step_size} seed={seed}\n"
        ),
    )?;
    let scan_result = sampling::alpha_scan(&alphas, &cfg).map_err(CliError::from_core)?;
    for (a, est) in &scan_result.points {
        emit(w, &format_estimate(*a, est))?;
    }
    if alphas.len() > 1 {
        emit(
            w,
            &format!(
                "argmin: alpha={} mean={:.6}\n",
                scan_result.argmin_alpha(),
                scan_result.argmin_estimate().mean
            ),
        )?;
    }

    let mut manifest = RunManifest::new("vmc-helium", seed);
    manifest
        .parameter(
            "alpha",
            alphas
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .parameter("walkers", walkers)
        .parameter("steps", steps)
        .parameter("burn", burn)
        .parameter("step_size", step_size);

    if let Some(path) = out {
        let mut body = String::new();
        body.push_str(&csv_header());
        body.push('\n');
        body.push_str("alpha,mean_hartree,std_error_hartree,acceptance_rate,blocks,n_samples\n");
        for (a, est) in &scan_result.points {
            body.push_str(&format!(
                "{a},{},{},{},{},{}\n",
                est.mean, est.std_error, est.acceptance_rate, est.blocks, est.n_samples
            ));
        }
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)
                    .map_err(|e| CliError::runtime(format!("creating {}: {e}", dir.display())))?;
            }
        }
        fs::write(path, body)
            .map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))?;
        manifest.record_output(path)?;
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                manifest.write_to(dir)?;
            }
        }
        emit(
            w,
            &format!(
                "wrote {}\n",
                path.file_name().unwrap_or_default().to_string_lossy()
            ),
        )?;
    }
    print_manifest(w, &manifest)
}

/// Superpotential choice for aufbau construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    /// Padé-Jastrow W at the given α.
    PadeJastrow,
    /// Bare hydrogenic W = 2r̂₁ + 2r̂₂.
    Bare,
    /// W = 0.
    Free,
}

impl ContextKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "pj" => Ok(ContextKind::PadeJastrow),
            "bare" => Ok(ContextKind::Bare),
            "none" => Ok(ContextKind::Free),
            _ => Err(CliError::usage(format!(
                "unknown context `{s}` (expected pj, bare, or none)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ContextKind::PadeJastrow => "pj",
            ContextKind::Bare => "bare",
            ContextKind::Free => "none",
        }
    }

    fn build(&self, alpha: f64) -> Result<ChargeContext, CliError> {
        match self {
            ContextKind::PadeJastrow => {
                let params = PadeJastrowParams::new(alpha).map_err(CliError::from_core)?;
                // Energy origin is irrelevant for state construction.
                Ok(helium::context(&params, 0.0))
            }
            ContextKind::Bare => Ok(aufbau::bare_context()),
            ContextKind::Free => Ok(aufbau::free_context()),
        }
    }
}

/// Exchange-symmetry deviation of an aufbau state over a sample: the largest
/// |(P₁₂f)ₖ ∓ (±f)ₖ| against the symmetry its kind demands. Exact
/// constructions give exactly zero.
fn symmetry_deviation(state: &AufbauState, points: &[ConfigPoint]) -> Result<f64, CliError> {
    let expected_sign = match state.kind {
        AufbauKind::Triplet | AufbauKind::CorrelatedTriplet => -1.0,
        AufbauKind::Singlet | AufbauKind::CorrelatedSinglet => 1.0,
        _ => {
            return Err(CliError::runtime(
                "symmetry check requires a combined state",
            ))
        }
    };
    let mut worst = 0.0f64;
    for x in points {
        let direct = state.field.eval(x).map_err(CliError::from_core)?;
        let swapped_point = exchange_12(x).map_err(CliError::from_core)?;
        let exchanged = swap_particle_blocks(
            &state
                .field
                .eval(&swapped_point)
                .map_err(CliError::from_core)?,
        )
        .map_err(CliError::from_core)?;
        for (a, b) in exchanged.components().iter().zip(direct.components()) {
            worst = worst.max((a - expected_sign * b).abs());
        }
    }
    Ok(worst)
}

/// `aufbau`: builds the requested sector-two trial state, runs the exchange
/// symmetry test, optionally the regeneration similarity report, and exports
/// sampled values.
#[allow(clippy::too_many_arguments)]
pub fn aufbau_cmd(
    mode: CombineMode,
    context: ContextKind,
    alpha: f64,
    correlated: bool,
    delta: Option<f64>,
    check_regeneration: bool,
    points: usize,
    seed: u64,
    out: Option<&Path>,
    w: &mut impl Write,
) -> CmdResult {
    if points == 0 {
        return Err(CliError::usage("--points must be positive"));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(CliError::usage(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if let Some(d) = delta {
        if d.is_nan() || d <= 0.0 {
            return Err(CliError::usage(format!("delta must be positive, got {d}")));
        }
        if !correlated {
            return Err(CliError::usage("--delta requires --correlated"));
        }
    }
    let mode_name = match mode {
        CombineMode::Triplet => "triplet",
        CombineMode::Singlet => "singlet",
    };
    let ctx = context.build(alpha)?;
    let block = aufbau::building_block(&ctx, &Orbital::alpha_1s(), &Orbital::beta_2s());
    let combined = aufbau::combine(&block, mode).map_err(CliError::from_core)?;
    let delta_value = delta.unwrap_or(alpha);
    let state = if correlated {
        let params = PadeJastrowParams::new(delta_value).map_err(CliError::from_core)?;
        aufbau::attach_correlation(&combined, &params).map_err(CliError::from_core)?
    } else {
        combined.clone()
    };

    emit(
        w,
        &format!(
            "aufbau: mode={mode_name} context={} correlated={} points={points} seed={seed}\n",
            context.name(),
            if correlated {
                format!("yes delta={delta_value}")
            } else {
                "no".to_string()
            }
        ),
    )?;

    let sample = sample_regular_points(
        points,
        2,
        1.2,
        seed,
        SingularLoci::OriginsAndCoincidences,
        0.15,
    );
    let deviation = symmetry_deviation(&state, &sample)?;
    let symmetry_pass = deviation == 0.0;
    emit(
        w,
        &format!(
            "symmetry[{mode_name}]: max deviation over {points} points = {deviation:e}  {}\n",
            if symmetry_pass { "PASS" } else { "FAIL" }
        ),
    )?;

    if check_regeneration {
        let report =
            aufbau::regeneration_check(&ctx, &combined, &sample).map_err(CliError::from_core)?;
        emit(
            w,
            &format!(
                "regeneration (report only): cosine={:.6} proportionality={:.6} rms={:.6e} points={}\n",
                report.cosine_similarity,
                report.proportionality,
                report.regenerated_rms,
                report.points
            ),
        )?;
    }

    let mut manifest = RunManifest::new("aufbau", seed);
    manifest
        .parameter("mode", mode_name)
        .parameter("context", context.name())
        .parameter("alpha", alpha)
        .parameter("correlated", correlated)
        .parameter("points", points);
    if correlated {
        manifest.parameter("delta", delta_value);
    }

    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::runtime(format!("creating {}: {e}", dir.display())))?;
        let corr_tag = if correlated { "_corr" } else { "" };
        let path = dir.join(format!("aufbau_{mode_name}{corr_tag}_values.csv"));
        let mut body = String::new();
        body.push_str(&csv_header());
        body.push('\n');
        body.push_str("x1,y1,z1,x2,y2,z2,f1x,f1y,f1z,f2x,f2y,f2z\n");
        for x in &sample {
            let v = state.field.eval(x).map_err(CliError::from_core)?;
            let row: Vec<String> = x
                .coords()
                .iter()
                .chain(v.components())
                .map(|c| c.to_string())
                .collect();
            body.push_str(&row.join(","));
            body.push('\n');
        }
        fs::write(&path, body)
            .map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))?;
        manifest.record_output(&path)?;
        manifest.write_to(dir)?;
        emit(
            w,
            &format!(
                "wrote {}\n",
                path.file_name().unwrap_or_default().to_string_lossy()
            ),
        )?;
    }
    print_manifest(w, &manifest)?;
    if symmetry_pass {
        Ok(())
    } else {
        Err(CliError::quantitative(format!(
            "exchange symmetry violated: max deviation {deviation:e}"
        )))
    }
}
