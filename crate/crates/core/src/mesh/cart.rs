use super::Boundary;
use crate::error::{Error, Result};

/// Tensor grid of rectangles `I_{i,j} = [x_{i-1/2}, x_{i+1/2}] x [y_{j-1/2}, y_{j+1/2}]`.
///
/// Cells are numbered row-major with `x` fastest: `e = j * nx + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartMesh2d {
    xs: Vec<f64>,
    ys: Vec<f64>,
    boundary: [Boundary; 2],
}

fn check_axis(v: &[f64], name: &str) -> Result<()> {
    if v.len() < 3 {
        return Err(Error::InvalidMesh(format!(
            "need at least 2 cells in {name}, got {}",
            v.len().saturating_sub(1)
        )));
    }
    if v.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidMesh(format!(
            "{name} interfaces must increase strictly"
        )));
    }
    Ok(())
}

impl CartMesh2d {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, boundary: [Boundary; 2]) -> Result<Self> {
        check_axis(&xs, "x")?;
        check_axis(&ys, "y")?;
        Ok(CartMesh2d { xs, ys, boundary })
    }

    pub fn uniform(
        (a, b): (f64, f64),
        (c, d): (f64, f64),
        nx: usize,
        ny: usize,
        boundary: [Boundary; 2],
    ) -> Result<Self> {
        if !(a < b && c < d) {
            return Err(Error::InvalidMesh("empty rectangle".into()));
        }
        let axis = |lo: f64, hi: f64, n: usize| {
            let mut v: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
            if let Some(last) = v.last_mut() {
                *last = hi;
            }
            v
        };
        Self::new(axis(a, b, nx), axis(c, d, ny), boundary)
    }

    pub fn nx(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn ny(&self) -> usize {
        self.ys.len() - 1
    }

    pub fn n_cells(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn boundary(&self) -> [Boundary; 2] {
        self.boundary
    }

    pub fn dx(&self, i: usize) -> f64 {
        self.xs[i + 1] - self.xs[i]
    }

    pub fn dy(&self, j: usize) -> f64 {
        self.ys[j + 1] - self.ys[j]
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    pub fn cell_ij(&self, e: usize) -> (usize, usize) {
        (e % self.nx(), e / self.nx())
    }

    pub fn domain(&self) -> [f64; 4] {
        [
            self.xs[0],
            *self.xs.last().unwrap(),
            self.ys[0],
            *self.ys.last().unwrap(),
        ]
    }

    pub fn h(&self) -> f64 {
        let mx = (0..self.nx()).map(|i| self.dx(i)).fold(0.0, f64::max);
        let my = (0..self.ny()).map(|j| self.dy(j)).fold(0.0, f64::max);
        mx.max(my)
    }

    pub fn min_dx(&self) -> f64 {
        (0..self.nx()).map(|i| self.dx(i)).fold(f64::INFINITY, f64::min)
    }

    pub fn min_dy(&self) -> f64 {
        (0..self.ny()).map(|j| self.dy(j)).fold(f64::INFINITY, f64::min)
    }

    /// Neighbor of cell `(i, j)` one step in `x` (`dir = 0`) or `y`
    /// (`dir = 1`), `step = +1` or `-1`, honoring periodicity.
    pub fn neighbor(&self, i: usize, j: usize, dir: usize, step: isize) -> Option<(usize, usize)> {
        let (n, idx) = if dir == 0 { (self.nx(), i) } else { (self.ny(), j) };
        let next = idx as isize + step;
        let wrapped = if next < 0 || next >= n as isize {
            match self.boundary[dir] {
                Boundary::Periodic => next.rem_euclid(n as isize) as usize,
                Boundary::Outflow => return None,
            }
        } else {
            next as usize
        };
        Some(if dir == 0 { (wrapped, j) } else { (i, wrapped) })
    }
}
