//! Configuration-space primitives.
//!
//! A point in the 3n-dimensional space of n particles is stored as a flat,
//! block-ordered coordinate list (x₁, y₁, z₁, x₂, y₂, z₂, …), all in Bohr.
//! Particle i owns the contiguous block (3i, 3i+1, 3i+2), which keeps
//! particle exchange and per-particle gradients contiguous-slice operations.

use crate::error::CoreError;
use crate::Result;

/// Points closer than this to a Coulomb or unit-vector singularity are
/// rejected by operations whose formulas divide by a radius. W = r̂ has no
/// defined direction at the nucleus; samplers and grids avoid it
/// deterministically instead of returning NaN.
pub const RADIUS_EPSILON: f64 = 1e-10;

/// A point in 3n-dimensional configuration space (atomic units).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigPoint {
    coords: Vec<f64>,
    n_particles: usize,
}

/// A 3n-component vector over configuration space: superpotentials,
/// gradients, and sector-two states, in the same block order as
/// [`ConfigPoint`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigVector {
    components: Vec<f64>,
    n_particles: usize,
}

impl ConfigPoint {
    /// Builds a point from a flat coordinate list; the particle count is
    /// `coords.len() / 3`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(3) {
            return Err(CoreError::BadCoordinateLength { len: coords.len() });
        }
        let n_particles = coords.len() / 3;
        Ok(ConfigPoint {
            coords,
            n_particles,
        })
    }

    /// Builds a point from per-particle position triples.
    pub fn from_particles(blocks: &[[f64; 3]]) -> Self {
        let coords = blocks.iter().flatten().copied().collect();
        ConfigPoint::new(coords).expect("non-empty block list")
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    /// Total dimension 3n.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The (x, y, z) block of particle `i`.
    pub fn particle(&self, i: usize) -> Result<[f64; 3]> {
        if i >= self.n_particles {
            return Err(CoreError::ParticleIndex {
                index: i,
                n_particles: self.n_particles,
            });
        }
        Ok([
            self.coords[3 * i],
            self.coords[3 * i + 1],
            self.coords[3 * i + 2],
        ])
    }

    /// Copy with coordinate `j` shifted by `delta` (finite-difference stencils).
    pub fn shifted(&self, j: usize, delta: f64) -> Self {
        let mut coords = self.coords.clone();
        coords[j] += delta;
        ConfigPoint {
            coords,
            n_particles: self.n_particles,
        }
    }

    /// Displaces the point by a configuration vector.
    pub fn displaced(&self, v: &ConfigVector) -> Self {
        assert_eq!(self.dim(), v.dim(), "point/vector dimension mismatch");
        let coords = self
            .coords
            .iter()
            .zip(v.components())
            .map(|(a, b)| a + b)
            .collect();
        ConfigPoint {
            coords,
            n_particles: self.n_particles,
        }
    }
}

impl ConfigVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() || !components.len().is_multiple_of(3) {
            return Err(CoreError::BadCoordinateLength {
                len: components.len(),
            });
        }
        let n_particles = components.len() / 3;
        Ok(ConfigVector {
            components,
            n_particles,
        })
    }

    /// The zero vector for an n-particle space.
    pub fn zeros(n_particles: usize) -> Self {
        ConfigVector {
            components: vec![0.0; 3 * n_particles],
            n_particles,
        }
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [f64] {
        &mut self.components
    }

    /// The (x, y, z) block of particle `i`.
    pub fn particle(&self, i: usize) -> Result<[f64; 3]> {
        if i >= self.n_particles {
            return Err(CoreError::ParticleIndex {
                index: i,
                n_particles: self.n_particles,
            });
        }
        Ok([
            self.components[3 * i],
            self.components[3 * i + 1],
            self.components[3 * i + 2],
        ])
    }

    pub fn dot(&self, other: &ConfigVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> ConfigVector {
        ConfigVector {
            components: self.components.iter().map(|c| c * factor).collect(),
            n_particles: self.n_particles,
        }
    }

    pub fn add(&self, other: &ConfigVector) -> ConfigVector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        ConfigVector {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
            n_particles: self.n_particles,
        }
    }

    pub fn sub(&self, other: &ConfigVector) -> ConfigVector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        ConfigVector {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
            n_particles: self.n_particles,
        }
    }
}

/// Euclidean norm of particle i's block: r, r₁, r₂ in the atomic formulas.
pub fn particle_radius(x: &ConfigPoint, i: usize) -> Result<f64> {
    let [px, py, pz] = x.particle(i)?;
    Ok((px * px + py * py + pz * pz).sqrt())
}

/// Euclidean distance between the blocks of particles i and j (r₁₂).
/// Symmetric in (i, j).
pub fn pair_distance(x: &ConfigPoint, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(CoreError::IdenticalParticles { index: i });
    }
    let a = x.particle(i)?;
    let b = x.particle(j)?;
    let mut sum = 0.0;
    for k in 0..3 {
        let d = a[k] - b[k];
        sum += d * d;
    }
    Ok(sum.sqrt())
}

/// Embeds particle i's radial unit vector r̂ into the full 3n-space, zeros in
/// every other block. Errors when the particle sits within
/// [`RADIUS_EPSILON`] of the origin, where the direction is undefined.
pub fn unit_vector_lift(x: &ConfigPoint, i: usize) -> Result<ConfigVector> {
    let block = x.particle(i)?;
    let r = (block[0] * block[0] + block[1] * block[1] + block[2] * block[2]).sqrt();
    if r <= RADIUS_EPSILON {
        return Err(CoreError::SingularProximity {
            distance: r,
            required: RADIUS_EPSILON,
        });
    }
    let mut v = ConfigVector::zeros(x.n_particles());
    for (k, b) in block.iter().enumerate() {
        v.components_mut()[3 * i + k] = b / r;
    }
    Ok(v)
}

/// Swaps the coordinate blocks of particles 0 and 1. An involution.
pub fn exchange_12(x: &ConfigPoint) -> Result<ConfigPoint> {
    if x.n_particles() != 2 {
        return Err(CoreError::TwoParticlesRequired {
            got: x.n_particles(),
        });
    }
    let mut coords = x.coords().to_vec();
    coords.swap(0, 3);
    coords.swap(1, 4);
    coords.swap(2, 5);
    ConfigPoint::new(coords)
}

/// Swaps the component blocks of particles 0 and 1 in a vector. Together with
/// [`exchange_12`] this realizes the exchange operator on vector fields:
/// (P₁₂Ψ)(x) = swap_blocks(Ψ(exchange_12(x))).
pub fn swap_particle_blocks(v: &ConfigVector) -> Result<ConfigVector> {
    if v.n_particles() != 2 {
        return Err(CoreError::TwoParticlesRequired {
            got: v.n_particles(),
        });
    }
    let mut components = v.components().to_vec();
    components.swap(0, 3);
    components.swap(1, 4);
    components.swap(2, 5);
    ConfigVector::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_pythagorean_triple() {
        let x = ConfigPoint::from_particles(&[[3.0, 4.0, 0.0]]);
        assert_eq!(particle_radius(&x, 0).unwrap(), 5.0);
    }

    #[test]
    fn radius_at_origin_is_zero() {
        let x = ConfigPoint::from_particles(&[[0.0, 0.0, 0.0]]);
        assert_eq!(particle_radius(&x, 0).unwrap(), 0.0);
    }

    #[test]
    fn radius_matches_brute_force_norm() {
        // Independent norm evaluation for particle 1 of a 2-particle point.
        let x = ConfigPoint::from_particles(&[[9.0, 9.0, 9.0], [1.0, 1.0, 1.0]]);
        let brute: f64 = x.coords()[3..6].iter().map(|c| c * c).sum::<f64>().sqrt();
        assert_eq!(particle_radius(&x, 1).unwrap(), brute);
        assert!((particle_radius(&x, 1).unwrap() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn radius_index_out_of_range() {
        let x = ConfigPoint::from_particles(&[[1.0, 0.0, 0.0]]);
        assert!(matches!(
            particle_radius(&x, 1),
            Err(CoreError::ParticleIndex { .. })
        ));
    }

    #[test]
    fn pair_distance_simple_and_symmetric() {
        let x = ConfigPoint::from_particles(&[[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]]);
        assert_eq!(pair_distance(&x, 0, 1).unwrap(), 2.0);
        assert_eq!(
            pair_distance(&x, 0, 1).unwrap(),
            pair_distance(&x, 1, 0).unwrap()
        );
    }

    #[test]
    fn pair_distance_matches_norm_of_difference() {
        let x = ConfigPoint::from_particles(&[[0.3, -1.2, 2.5], [-0.7, 0.4, 1.1]]);
        let a = x.particle(0).unwrap();
        let b = x.particle(1).unwrap();
        let brute = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        assert!((pair_distance(&x, 0, 1).unwrap() - brute).abs() < 1e-14);
    }

    #[test]
    fn pair_distance_rejects_identical_indices() {
        let x = ConfigPoint::from_particles(&[[0.0; 3], [1.0, 0.0, 0.0]]);
        assert!(matches!(
            pair_distance(&x, 1, 1),
            Err(CoreError::IdenticalParticles { index: 1 })
        ));
    }

    #[test]
    fn unit_lift_single_particle() {
        let x = ConfigPoint::from_particles(&[[2.0, 0.0, 0.0]]);
        let v = unit_vector_lift(&x, 0).unwrap();
        assert_eq!(v.components(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn unit_lift_second_particle_block() {
        let x = ConfigPoint::from_particles(&[[1.0, 1.0, 1.0], [0.0, 0.0, 5.0]]);
        let v = unit_vector_lift(&x, 1).unwrap();
        assert_eq!(v.components(), &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn unit_lift_rejects_origin() {
        let x = ConfigPoint::from_particles(&[[0.0, 0.0, 1e-12]]);
        assert!(matches!(
            unit_vector_lift(&x, 0),
            Err(CoreError::SingularProximity { .. })
        ));
    }

    #[test]
    fn exchange_swaps_blocks() {
        let x = ConfigPoint::from_particles(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]);
        let y = exchange_12(&x).unwrap();
        assert_eq!(y.coords(), &[4.0, 5.0, 6.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn exchange_requires_two_particles() {
        let x = ConfigPoint::from_particles(&[[1.0, 2.0, 3.0]]);
        assert!(matches!(
            exchange_12(&x),
            Err(CoreError::TwoParticlesRequired { got: 1 })
        ));
    }

    #[test]
    fn bad_coordinate_lengths_rejected() {
        assert!(ConfigPoint::new(vec![]).is_err());
        assert!(ConfigPoint::new(vec![1.0, 2.0]).is_err());
        assert!(ConfigVector::new(vec![1.0; 4]).is_err());
    }

    #[test]
    fn dot_with_self_nonnegative() {
        let v = ConfigVector::new(vec![-1.0, 2.0, -3.0]).unwrap();
        assert!(v.dot(&v) >= 0.0);
        assert_eq!(v.dot(&v), 14.0);
    }
}
