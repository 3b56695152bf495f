use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Boundary, RngSeed};
use crate::error::{Error, Result};

/// Partition `a = x_{1/2} < x_{3/2} < ... < x_{N+1/2} = b` of an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1d {
    interfaces: Vec<f64>,
    boundary: Boundary,
}

impl Mesh1d {
    pub fn new(interfaces: Vec<f64>, boundary: Boundary) -> Result<Self> {
        if interfaces.len() < 3 {
            return Err(Error::InvalidMesh(format!(
                "a 1D mesh needs at least 2 cells, got {}",
                interfaces.len().saturating_sub(1)
            )));
        }
        if let Some(j) = interfaces.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidMesh(format!(
                "interfaces must increase strictly (cell {j})"
            )));
        }
        Ok(Mesh1d {
            interfaces,
            boundary,
        })
    }

    pub fn uniform(a: f64, b: f64, n: usize, boundary: Boundary) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidMesh(format!("need N >= 2 cells, got {n}")));
        }
        if !(a < b) {
            return Err(Error::InvalidMesh(format!("empty interval [{a}, {b}]")));
        }
        let dx = (b - a) / n as f64;
        let mut x: Vec<f64> = (0..=n).map(|j| a + j as f64 * dx).collect();
        x[n] = b;
        Self::new(x, boundary)
    }

    /// Moves every interior interface by an independent uniform sample in
    /// `[-fraction * dx, fraction * dx]`, `dx` being the uniform width of this
    /// mesh's interval split into the same number of cells.
    pub fn perturbed(&self, fraction: f64, seed: RngSeed) -> Result<Self> {
        if !(0.0..0.5).contains(&fraction) {
            return Err(Error::InvalidMesh(format!(
                "perturbation fraction must lie in [0, 0.5), got {fraction}"
            )));
        }
        let (a, b) = self.domain();
        let n = self.n_cells();
        let dx = (b - a) / n as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        let mut x = self.interfaces.clone();
        if fraction > 0.0 {
            for xi in x.iter_mut().take(n).skip(1) {
                *xi += rng.gen_range(-fraction..=fraction) * dx;
            }
        }
        Self::new(x, self.boundary)
    }

    pub fn n_cells(&self) -> usize {
        self.interfaces.len() - 1
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.interfaces[0], *self.interfaces.last().unwrap())
    }

    pub fn width(&self, j: usize) -> f64 {
        self.interfaces[j + 1] - self.interfaces[j]
    }

    pub fn center(&self, j: usize) -> f64 {
        0.5 * (self.interfaces[j] + self.interfaces[j + 1])
    }

    /// Largest cell width.
    pub fn h(&self) -> f64 {
        (0..self.n_cells()).map(|j| self.width(j)).fold(0.0, f64::max)
    }

    pub fn min_width(&self) -> f64 {
        (0..self.n_cells())
            .map(|j| self.width(j))
            .fold(f64::INFINITY, f64::min)
    }

    /// Cell containing `x`; points on an interface belong to the right cell
    /// except at the right end of the domain.
    pub fn locate(&self, x: f64) -> Option<usize> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return None;
        }
        let j = self.interfaces.partition_point(|&xi| xi <= x);
        Some(j.saturating_sub(1).min(self.n_cells() - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn uniform_widths() {
        let m = Mesh1d::uniform(0.0, 2.0 * PI, 4, Boundary::Periodic).unwrap();
        for j in 0..4 {
            assert!((m.width(j) - PI / 2.0).abs() < 1e-15);
        }
        let m = Mesh1d::uniform(-1.0, 1.0, 2, Boundary::Outflow).unwrap();
        assert_eq!(m.interfaces(), &[-1.0, 0.0, 1.0]);
        assert!(Mesh1d::uniform(0.0, 1.0, 1, Boundary::Outflow).is_err());
    }

    #[test]
    fn perturbation_bounds_and_determinism() {
        let m = Mesh1d::uniform(0.0, 2.0 * PI, 80, Boundary::Periodic).unwrap();
        assert_eq!(m.perturbed(0.0, RngSeed(7)).unwrap(), m);
        let dx = 2.0 * PI / 80.0;
        let p = m.perturbed(0.4, RngSeed(42)).unwrap();
        for j in 0..80 {
            let w = p.width(j);
            assert!(w >= 0.2 * dx - 1e-14 && w <= 1.8 * dx + 1e-14, "cell {j}: {w}");
        }
        let total: f64 = (0..80).map(|j| p.width(j)).sum();
        assert!((total - 2.0 * PI).abs() < 1e-12);
        assert_eq!(p, m.perturbed(0.4, RngSeed(42)).unwrap());
        assert_ne!(p, m.perturbed(0.4, RngSeed(43)).unwrap());
        assert!(m.perturbed(0.5, RngSeed(1)).is_err());
    }

    #[test]
    fn locate_cells() {
        let m = Mesh1d::uniform(0.0, 1.0, 4, Boundary::Outflow).unwrap();
        assert_eq!(m.locate(0.0), Some(0));
        assert_eq!(m.locate(0.3), Some(1));
        assert_eq!(m.locate(0.5), Some(2));
        assert_eq!(m.locate(1.0), Some(3));
        assert_eq!(m.locate(1.5), None);
    }
}
