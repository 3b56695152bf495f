//! Reference-element polynomial spaces and quadrature.
//!
//! Three reference elements are supported: the interval `[-1, 1]`, the square
//! `[-1, 1]^2` and the unit right triangle `{x, y >= 0, x + y <= 1}`. Every
//! basis spans the total-degree space `P^k` and is orthonormal in the
//! reference `L^2` inner product, so element mass matrices are the Jacobian
//! determinant times the identity.

use crate::error::{Error, Result};

/// Highest polynomial degree accepted by [`triangle_rule`].
pub const MAX_TRIANGLE_DEGREE: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Interval,
    Square,
    Triangle,
}

impl ElementKind {
    /// Measure of the reference element.
    pub fn measure(self) -> f64 {
        match self {
            ElementKind::Interval => 2.0,
            ElementKind::Square => 4.0,
            ElementKind::Triangle => 0.5,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            ElementKind::Interval => 1,
            _ => 2,
        }
    }
}

/// Points and weights on a reference element. One-dimensional rules store
/// their abscissa in the first coordinate and zero in the second.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// Highest total degree integrated exactly.
    pub degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate(&self, f: impl Fn([f64; 2]) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(*p))
            .sum()
    }
}

/// Legendre polynomials `P_0..=P_n` and their derivatives at `x`.
pub fn legendre_table(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![0.0; n + 1];
    let mut dp = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
        dp[1] = 1.0;
    }
    for m in 1..n {
        let mf = m as f64;
        p[m + 1] = ((2.0 * mf + 1.0) * x * p[m] - mf * p[m - 1]) / (mf + 1.0);
        // P'_{m+1} = P'_{m-1} + (2m+1) P_m
        dp[m + 1] = dp[m - 1] + (2.0 * mf + 1.0) * p[m];
    }
    (p, dp)
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`, exact to degree `2n - 1`.
///
/// Nodes are computed by Newton iteration on the positive half and mirrored,
/// so node `i` and node `n - 1 - i` are exact negatives of each other.
pub fn gauss_rule(n: usize) -> QuadratureRule {
    assert!(n >= 1, "a Gauss rule needs at least one point");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n / 2;
    for i in 0..half {
        // Tricomi initial guess for the i-th largest root.
        let theta = std::f64::consts::PI * (4.0 * i as f64 + 3.0) / (4.0 * n as f64 + 2.0);
        let mut r = theta.cos();
        for _ in 0..100 {
            let (p, dp) = legendre_table(n, r);
            let step = p[n] / dp[n];
            r -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_table(n, r);
        let wi = 2.0 / ((1.0 - r * r) * dp[n] * dp[n]);
        x[i] = -r;
        x[n - 1 - i] = r;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_table(n, 0.0);
        x[half] = 0.0;
        w[half] = 2.0 / (dp[n] * dp[n]);
    }
    QuadratureRule {
        points: x.into_iter().map(|xi| [xi, 0.0]).collect(),
        weights: w,
        degree: 2 * n - 1,
    }
}

/// Gauss rule mapped to `[0, 1]`; used for edge integrals.
pub fn unit_gauss_rule(n: usize) -> QuadratureRule {
    let mut rule = gauss_rule(n);
    for p in &mut rule.points {
        p[0] = 0.5 * (p[0] + 1.0);
    }
    for w in &mut rule.weights {
        *w *= 0.5;
    }
    rule
}

/// Tensor-product Gauss rule on `[-1, 1]^2` with `n` points per direction.
pub fn square_rule(n: usize) -> QuadratureRule {
    let g = gauss_rule(n);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for (py, wy) in g.points.iter().zip(&g.weights) {
        for (px, wx) in g.points.iter().zip(&g.weights) {
            points.push([px[0], py[0]]);
            weights.push(wx * wy);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 2 * n - 1,
    }
}

/// Quadrature on the unit right triangle exact to `target_degree`.
///
/// Degrees 0 through 5 use compact symmetric rules; higher degrees use a
/// collapsed (Duffy) product of Gauss rules.
pub fn triangle_rule(target_degree: usize) -> Result<QuadratureRule> {
    let third = 1.0 / 3.0;
    let sym3 = |a: f64, w: f64, pts: &mut Vec<[f64; 2]>, ws: &mut Vec<f64>| {
        let b = 1.0 - 2.0 * a;
        for p in [[a, a], [b, a], [a, b]] {
            pts.push(p);
            ws.push(0.5 * w);
        }
    };
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let degree = match target_degree {
        0 | 1 => {
            points.push([third, third]);
            weights.push(0.5);
            1
        }
        2 => {
            sym3(1.0 / 6.0, third, &mut points, &mut weights);
            2
        }
        3 | 4 => {
            sym3(0.445_948_490_915_965, 0.223_381_589_678_011, &mut points, &mut weights);
            sym3(0.091_576_213_509_771, 0.109_951_743_655_322, &mut points, &mut weights);
            4
        }
        5 => {
            points.push([third, third]);
            weights.push(0.5 * 0.225);
            sym3(0.470_142_064_105_115, 0.132_394_152_788_506, &mut points, &mut weights);
            sym3(0.101_286_507_323_456, 0.125_939_180_544_827, &mut points, &mut weights);
            5
        }
        d if d <= MAX_TRIANGLE_DEGREE => return Ok(collapsed_triangle_rule(d)),
        d => return Err(Error::UnsupportedQuadrature { degree: d }),
    };
    Ok(QuadratureRule {
        points,
        weights,
        degree,
    })
}

fn collapsed_triangle_rule(degree: usize) -> QuadratureRule {
    // The collapse x = u (1 - v), y = v adds one degree in v through the
    // Jacobian (1 - v).
    let m = (degree + 3) / 2;
    let g = unit_gauss_rule(m);
    let mut points = Vec::with_capacity(m * m);
    let mut weights = Vec::with_capacity(m * m);
    for (pv, wv) in g.points.iter().zip(&g.weights) {
        let v = pv[0];
        for (pu, wu) in g.points.iter().zip(&g.weights) {
            let u = pu[0];
            points.push([u * (1.0 - v), v]);
            weights.push(wu * wv * (1.0 - v));
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 2 * m - 2,
    }
}

/// Rule of at least `degree` exactness on the given reference element.
pub fn rule_for(kind: ElementKind, degree: usize) -> Result<QuadratureRule> {
    let n = degree / 2 + 1;
    Ok(match kind {
        ElementKind::Interval => gauss_rule(n),
        ElementKind::Square => square_rule(n),
        ElementKind::Triangle => triangle_rule(degree)?,
    })
}

/// Orthonormal basis of `P^k` on a reference element.
///
/// Functions are ordered hierarchically by total degree, so the first
/// `(l + 1)(l + 2) / 2` functions (or `l + 1` on the interval) span `P^l`.
/// The first function is always the normalized constant.
#[derive(Debug, Clone)]
pub struct ReferenceBasis {
    kind: ElementKind,
    degree: usize,
    /// Exponent pair `(a, b)` of the raw mode behind each function.
    modes: Vec<(usize, usize)>,
    /// Row-major lower-triangular map from raw modes to orthonormal
    /// functions. `None` when the raw modes are already orthonormal.
    transform: Option<Vec<f64>>,
}

impl ReferenceBasis {
    pub fn new(kind: ElementKind, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        let modes: Vec<(usize, usize)> = match kind {
            ElementKind::Interval => (0..=degree).map(|a| (a, 0)).collect(),
            _ => (0..=degree)
                .flat_map(|l| (0..=l).map(move |b| (l - b, b)))
                .collect(),
        };
        let mut basis = ReferenceBasis {
            kind,
            degree,
            modes,
            transform: None,
        };
        if kind == ElementKind::Triangle {
            basis.transform = Some(basis.orthonormalizer()?);
        }
        Ok(basis)
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_dofs(&self) -> usize {
        self.modes.len()
    }

    /// Raw exponent pair of function `i` (x-degree, y-degree). On squares the
    /// function is exactly the product of orthonormal Legendre polynomials of
    /// these degrees.
    pub fn mode(&self, i: usize) -> (usize, usize) {
        self.modes[i]
    }

    /// Cholesky-based orthonormalization of the raw triangle modes against an
    /// exact Gram matrix. A second pass removes the rounding left by the
    /// first, whose Gram matrix is poorly conditioned at higher degree.
    fn orthonormalizer(&self) -> Result<Vec<f64>> {
        let n = self.n_dofs();
        let rule = triangle_rule(2 * self.degree)?;
        let mut vals = vec![0.0; n];
        let mut grads = vec![[0.0; 2]; n];
        let raw: Vec<Vec<f64>> = rule
            .points
            .iter()
            .map(|p| {
                self.eval_raw(*p, &mut vals, &mut grads);
                vals.clone()
            })
            .collect();
        let mut t = vec![0.0; n * n];
        for i in 0..n {
            t[i * n + i] = 1.0;
        }
        for _ in 0..2 {
            let mut gram = vec![0.0; n * n];
            for (rv, w) in raw.iter().zip(&rule.weights) {
                let cur: Vec<f64> = (0..n)
                    .map(|i| (0..=i).map(|j| t[i * n + j] * rv[j]).sum())
                    .collect();
                for i in 0..n {
                    for j in 0..=i {
                        gram[i * n + j] += w * cur[i] * cur[j];
                    }
                }
            }
            let inv = lower_cholesky_inverse(&gram, n);
            let mut next = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    next[i * n + j] = (j..=i).map(|m| inv[i * n + m] * t[m * n + j]).sum();
                }
            }
            t = next;
        }
        Ok(t)
    }

    fn eval_raw(&self, p: [f64; 2], vals: &mut [f64], grads: &mut [[f64; 2]]) {
        let k = self.degree;
        match self.kind {
            ElementKind::Interval => {
                let (lp, ldp) = legendre_table(k, p[0]);
                for a in 0..=k {
                    let s = ((2 * a + 1) as f64 / 2.0).sqrt();
                    vals[a] = s * lp[a];
                    grads[a] = [s * ldp[a], 0.0];
                }
            }
            ElementKind::Square => {
                let (px, dpx) = legendre_table(k, p[0]);
                let (py, dpy) = legendre_table(k, p[1]);
                for (i, &(a, b)) in self.modes.iter().enumerate() {
                    let s = (((2 * a + 1) * (2 * b + 1)) as f64).sqrt() / 2.0;
                    vals[i] = s * px[a] * py[b];
                    grads[i] = [s * dpx[a] * py[b], s * px[a] * dpy[b]];
                }
            }
            ElementKind::Triangle => {
                let (px, dpx) = legendre_table(k, 2.0 * p[0] - 1.0);
                let (py, dpy) = legendre_table(k, 2.0 * p[1] - 1.0);
                for (i, &(a, b)) in self.modes.iter().enumerate() {
                    vals[i] = px[a] * py[b];
                    grads[i] = [2.0 * dpx[a] * py[b], 2.0 * px[a] * dpy[b]];
                }
            }
        }
    }

    /// Values and reference-coordinate gradients of every basis function.
    pub fn eval_into(&self, p: [f64; 2], vals: &mut [f64], grads: &mut [[f64; 2]]) {
        match &self.transform {
            None => self.eval_raw(p, vals, grads),
            Some(t) => {
                let n = self.n_dofs();
                let mut rv = vec![0.0; n];
                let mut rg = vec![[0.0; 2]; n];
                self.eval_raw(p, &mut rv, &mut rg);
                for i in 0..n {
                    let (mut v, mut gx, mut gy) = (0.0, 0.0, 0.0);
                    for j in 0..=i {
                        let c = t[i * n + j];
                        v += c * rv[j];
                        gx += c * rg[j][0];
                        gy += c * rg[j][1];
                    }
                    vals[i] = v;
                    grads[i] = [gx, gy];
                }
            }
        }
    }

    pub fn eval(&self, p: [f64; 2]) -> (Vec<f64>, Vec<[f64; 2]>) {
        let n = self.n_dofs();
        let mut vals = vec![0.0; n];
        let mut grads = vec![[0.0; 2]; n];
        self.eval_into(p, &mut vals, &mut grads);
        (vals, grads)
    }

    /// Values and gradients at every point of `rule`, flattened point-major.
    pub fn tabulate(&self, rule: &QuadratureRule) -> BasisTable {
        self.tabulate_points(&rule.points)
    }

    pub fn tabulate_points(&self, points: &[[f64; 2]]) -> BasisTable {
        let n = self.n_dofs();
        let mut values = vec![0.0; points.len() * n];
        let mut grads = vec![[0.0; 2]; points.len() * n];
        for (q, p) in points.iter().enumerate() {
            self.eval_into(*p, &mut values[q * n..(q + 1) * n], &mut grads[q * n..(q + 1) * n]);
        }
        BasisTable {
            n_dofs: n,
            values,
            grads,
        }
    }
}

/// `L^{-1}` for the Cholesky factor `gram = L L^T` (lower triangle of
/// `gram` is read, row-major).
fn lower_cholesky_inverse(gram: &[f64], n: usize) -> Vec<f64> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = gram[i * n + j];
            for m in 0..j {
                s -= l[i * n + m] * l[j * n + m];
            }
            if i == j {
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    let mut inv = vec![0.0; n * n];
    for c in 0..n {
        for r in c..n {
            let mut s = if r == c { 1.0 } else { 0.0 };
            for m in c..r {
                s -= l[r * n + m] * inv[m * n + c];
            }
            inv[r * n + c] = s / l[r * n + r];
        }
    }
    inv
}

/// Basis values and reference gradients at a fixed list of points.
#[derive(Debug, Clone)]
pub struct BasisTable {
    pub n_dofs: usize,
    pub values: Vec<f64>,
    pub grads: Vec<[f64; 2]>,
}

impl BasisTable {
    #[inline]
    pub fn values_at(&self, q: usize) -> &[f64] {
        &self.values[q * self.n_dofs..(q + 1) * self.n_dofs]
    }

    #[inline]
    pub fn grads_at(&self, q: usize) -> &[[f64; 2]] {
        &self.grads[q * self.n_dofs..(q + 1) * self.n_dofs]
    }

    /// Value and reference gradient of the expansion `coeffs` at point `q`.
    #[inline]
    pub fn expand(&self, q: usize, coeffs: &[f64]) -> (f64, [f64; 2]) {
        let vals = self.values_at(q);
        let grads = self.grads_at(q);
        let (mut v, mut gx, mut gy) = (0.0, 0.0, 0.0);
        for i in 0..self.n_dofs {
            v += coeffs[i] * vals[i];
            gx += coeffs[i] * grads[i][0];
            gy += coeffs[i] * grads[i][1];
        }
        (v, [gx, gy])
    }
}
