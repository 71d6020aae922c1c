//! Plane-grid sampling of sector-two states and CSV export.
//!
//! Grid coordinates are generated symmetrically about the center,
//! u = center + (i - (res-1)/2)·step, so that ±u pairs are exact negations
//! and parity relations of the exported fields hold row-for-row in the
//! parsed values.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use susyqm_core::geometry::ConfigPoint;
use susyqm_core::hydrogen::{self, SectorTwoLabel};

use crate::manifest::{csv_header, RunManifest};
use crate::CliError;

/// Sampling plane through the grid center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Xy,
    Xz,
    Yz,
}

impl Plane {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "xy" => Ok(Plane::Xy),
            "xz" => Ok(Plane::Xz),
            "yz" => Ok(Plane::Yz),
            _ => Err(CliError::usage(format!(
                "unknown plane `{s}` (expected xy, xz, or yz)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Yz => "yz",
        }
    }

    /// Indices of the two in-plane axes.
    fn axes(&self) -> (usize, usize) {
        match self {
            Plane::Xy => (0, 1),
            Plane::Xz => (0, 2),
            Plane::Yz => (1, 2),
        }
    }
}

/// A square plane grid in Bohr.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub plane: Plane,
    pub center: [f64; 3],
    pub half_extent: f64,
    /// Points per axis; odd values sample the center exactly.
    pub resolution: usize,
}

impl GridSpec {
    pub fn new(
        plane: Plane,
        center: [f64; 3],
        half_extent: f64,
        resolution: usize,
    ) -> Result<Self, CliError> {
        if resolution < 2 {
            return Err(CliError::usage(format!(
                "resolution must be at least 2, got {resolution}"
            )));
        }
        if half_extent.is_nan() || half_extent <= 0.0 {
            return Err(CliError::usage(format!(
                "half extent must be positive, got {half_extent}"
            )));
        }
        Ok(GridSpec {
            plane,
            center,
            half_extent,
            resolution,
        })
    }

    /// In-plane axis coordinates, symmetric about the center.
    pub fn axis_coords(&self, axis_center: f64) -> Vec<f64> {
        let half = (self.resolution - 1) as f64 / 2.0;
        let step = 2.0 * self.half_extent / (self.resolution - 1) as f64;
        (0..self.resolution)
            .map(|i| axis_center + (i as f64 - half) * step)
            .collect()
    }

    /// The 3-D point for plane coordinates (u, v).
    pub fn point(&self, u: f64, v: f64) -> ConfigPoint {
        let (au, av) = self.plane.axes();
        let mut c = self.center;
        c[au] = u;
        c[av] = v;
        ConfigPoint::from_particles(&[c])
    }
}

/// Writes three CSV files (one per vector component) of a sector-two state
/// over the grid plane, plus a manifest, into `dir`. Returns the manifest.
pub fn export_sector_two(
    state_arg: &str,
    grid: &GridSpec,
    dir: &Path,
) -> Result<(RunManifest, Vec<PathBuf>), CliError> {
    let label = SectorTwoLabel::parse(state_arg).map_err(|e| CliError::usage(e.to_string()))?;
    let state = hydrogen::sector_two_state(label).map_err(CliError::from_core)?;
    fs::create_dir_all(dir)
        .map_err(|e| CliError::runtime(format!("creating {}: {e}", dir.display())))?;

    let (au, av) = grid.plane.axes();
    let us = grid.axis_coords(grid.center[au]);
    let vs = grid.axis_coords(grid.center[av]);

    let comp_names = ["x", "y", "z"];
    let mut writers: Vec<(PathBuf, String)> = comp_names
        .iter()
        .map(|comp| {
            let path = dir.join(format!(
                "sector2_{state_arg}_{}_{comp}.csv",
                grid.plane.name()
            ));
            let mut body = String::new();
            body.push_str(&csv_header());
            body.push('\n');
            body.push_str("u,v,value\n");
            (path, body)
        })
        .collect();

    for &u in &us {
        for &v in &vs {
            let point = grid.point(u, v);
            let value = state.field.eval(&point).map_err(CliError::from_core)?;
            for (k, (_, body)) in writers.iter_mut().enumerate() {
                body.push_str(&format!("{u},{v},{}\n", value.components()[k]));
            }
        }
    }

    let mut manifest = RunManifest::new("sector2-export", 0);
    manifest
        .parameter("state", state_arg)
        .parameter("plane", grid.plane.name())
        .parameter("extent", grid.half_extent)
        .parameter("resolution", grid.resolution)
        .parameter(
            "center",
            format!("{},{},{}", grid.center[0], grid.center[1], grid.center[2]),
        );

    let mut paths = Vec::new();
    for (path, body) in &writers {
        let mut file = fs::File::create(path)
            .map_err(|e| CliError::runtime(format!("creating {}: {e}", path.display())))?;
        file.write_all(body.as_bytes())
            .map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))?;
        manifest.record_output(path)?;
        paths.push(path.clone());
    }
    manifest.write_to(dir)?;
    Ok((manifest, paths))
}
