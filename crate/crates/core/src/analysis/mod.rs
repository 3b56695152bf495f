//! Error norms, convergence tables, exact-solution oracles and a fine-grid
//! reference solver.

mod oracle;
mod reference;

use std::fmt::Write as _;

pub use oracle::{
    characteristics, constrained_min, constrained_min_sin, crossderiv_exact, hopf_lax_quadratic,
    linsmth_exact, quartic_concave_hopf, rotate_back, Characteristic1d,
};
pub use reference::{reference_lf, LfReference};

use crate::basis::rule_for;
use crate::error::{Error, Result};
use crate::field::DgField;
use crate::par;

/// Domain-averaged error norms.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl ErrorNorms {
    pub fn as_array(&self) -> [f64; 3] {
        [self.l1, self.l2, self.linf]
    }
}

/// Norms of `field - exact` with the default rule of degree `2k + 2`.
pub fn error_norms(
    field: &DgField,
    exact: impl Fn([f64; 2]) -> Result<f64> + Sync + Send,
) -> Result<ErrorNorms> {
    error_norms_with_degree(field, exact, 2 * field.space().degree() + 2)
}

/// Norms of `field - exact` sampled at the points of a rule exact to
/// `degree`: `L1 = sum w|e| / |Omega|`, `L2 = (sum w e^2 / |Omega|)^(1/2)`,
/// `Linf = max |e|`.
pub fn error_norms_with_degree(
    field: &DgField,
    exact: impl Fn([f64; 2]) -> Result<f64> + Sync + Send,
    degree: usize,
) -> Result<ErrorNorms> {
    let space = field.space();
    let rule = rule_for(space.kind(), degree)?;
    let table = space.basis().tabulate(&rule);
    let nd = space.n_dofs();
    let coeffs = field.coefficients();
    let parts = par::map_collect(space.n_elements(), |e| -> Result<[f64; 3]> {
        let map = space.map(e);
        let c = &coeffs[e * nd..(e + 1) * nd];
        let mut acc = [0.0f64; 3];
        for (q, (p, w)) in rule.points.iter().zip(&rule.weights).enumerate() {
            let v: f64 = c.iter().zip(table.values_at(q)).map(|(a, b)| a * b).sum();
            let err = (v - exact(map.to_physical(*p))?).abs();
            acc[0] += w * map.det * err;
            acc[1] += w * map.det * err * err;
            acc[2] = acc[2].max(err);
        }
        Ok(acc)
    });
    let mut total = [0.0f64; 3];
    for part in parts {
        let part = part?;
        total[0] += part[0];
        total[1] += part[1];
        total[2] = total[2].max(part[2]);
    }
    let m = space.measure();
    Ok(ErrorNorms {
        l1: total[0] / m,
        l2: (total[1] / m).sqrt(),
        linf: total[2],
    })
}

/// `log(e_prev / e_cur) / log(h_prev / h_cur)`.
pub fn observed_order(e_prev: f64, e_cur: f64, h_prev: f64, h_cur: f64) -> f64 {
    (e_prev / e_cur).ln() / (h_prev / h_cur).ln()
}

/// `1.20E-03` style with a signed two-digit exponent.
fn sci(v: f64) -> String {
    let s = format!("{v:.2E}");
    match s.split_once('E') {
        Some((m, e)) => {
            let e: i32 = e.parse().unwrap_or(0);
            format!("{m}E{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
        }
        None => s,
    }
}

/// Run settings echoed in report headers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportMeta {
    pub case: String,
    pub k: usize,
    pub penalty: f64,
    pub cfl: f64,
    pub final_time: f64,
    pub limiter: String,
    pub mesh: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    /// Cells per direction, or subdivisions per side on triangles.
    pub n: usize,
    pub h: f64,
    pub norms: ErrorNorms,
    /// `[L1, L2, Linf]` orders against the previous row.
    pub orders: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub meta: ReportMeta,
    pub rows: Vec<ConvergenceRow>,
}

/// Builds a report from `(n, h, norms)` entries ordered coarse to fine.
pub fn convergence_orders(
    meta: ReportMeta,
    entries: &[(usize, f64, ErrorNorms)],
) -> Result<ConvergenceReport> {
    if entries.len() < 2 {
        return Err(Error::InvalidArgument(
            "a convergence study needs at least two resolutions".into(),
        ));
    }
    if let Some(w) = entries.windows(2).find(|w| !(w[1].1 < w[0].1)) {
        return Err(Error::InvalidArgument(format!(
            "resolutions must refine monotonically, got h = {} then {}",
            w[0].1, w[1].1
        )));
    }
    let rows = entries
        .iter()
        .enumerate()
        .map(|(i, &(n, h, norms))| {
            let orders = (i > 0).then(|| {
                let (_, hp, prev) = entries[i - 1];
                let (a, b) = (prev.as_array(), norms.as_array());
                [0, 1, 2].map(|j| observed_order(a[j], b[j], hp, h))
            });
            ConvergenceRow { n, h, norms, orders }
        })
        .collect();
    Ok(ConvergenceReport { meta, rows })
}

impl ConvergenceReport {
    /// Orders in one norm (0 = L1, 1 = L2, 2 = Linf), skipping the first row.
    pub fn orders(&self, norm: usize) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.orders.map(|o| o[norm])).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,h,L1,L1_order,L2,L2_order,Linf,Linf_order\n");
        for r in &self.rows {
            let _ = write!(out, "{},{:.6e}", r.n, r.h);
            let e = r.norms.as_array();
            for j in 0..3 {
                let o = r.orders.map(|o| format!("{:.4}", o[j])).unwrap_or_default();
                let _ = write!(out, ",{:.6e},{o}", e[j]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let m = &self.meta;
        let mut out = format!(
            "{} P{} C={} CFL={} T={} limiter={} mesh={}\n\n",
            m.case, m.k, m.penalty, m.cfl, m.final_time, m.limiter, m.mesh
        );
        out.push_str("| N | L1 error | order | L2 error | order | Linf error | order |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = write!(out, "| {} ", r.n);
            let e = r.norms.as_array();
            for j in 0..3 {
                let o = r.orders.map(|o| format!("{:.2}", o[j])).unwrap_or_default();
                let _ = write!(out, "| {} | {o} ", sci(e[j]));
            }
            out.push_str("|\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Boundary, Mesh1d};
    use crate::space::{Geometry, Space};
    use std::sync::Arc;

    fn sin_space(n: usize) -> Arc<Space> {
        let m = Mesh1d::uniform(0.0, 2.0 * std::f64::consts::PI, n, Boundary::Periodic).unwrap();
        Arc::new(Space::new(Geometry::Line(m), 2).unwrap())
    }

    #[test]
    fn polynomial_and_constant_offset() {
        let s = sin_space(7);
        let f = DgField::project(s, |x| 1.0 - x[0] + 0.3 * x[0] * x[0]);
        let n = error_norms(&f, |x| Ok(1.0 - x[0] + 0.3 * x[0] * x[0])).unwrap();
        assert!(n.l1 < 1e-12 && n.l2 < 1e-12 && n.linf < 1e-12, "{n:?}");
        let n = error_norms(&f, |x| Ok(0.9 - x[0] + 0.3 * x[0] * x[0])).unwrap();
        for v in n.as_array() {
            assert!((v - 0.1).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn projection_error_drops_by_eight() {
        let e = |n| {
            let f = DgField::project(sin_space(n), |x| x[0].sin());
            error_norms(&f, |x| Ok(x[0].sin())).unwrap()
        };
        let (a, b) = (e(40), e(80));
        assert!((a.l1 / b.l1 - 8.0).abs() < 0.5, "{}", a.l1 / b.l1);
        assert!((a.l2 / b.l2 - 8.0).abs() < 0.5);
    }

    #[test]
    fn orders_and_validation() {
        let n = |l1| ErrorNorms { l1, l2: l1, linf: l1 };
        let r = convergence_orders(
            ReportMeta::default(),
            &[(40, 0.1, n(1e-2)), (80, 0.05, n(2.5e-3)), (160, 0.025, n(3.125e-4))],
        )
        .unwrap();
        assert!(r.rows[0].orders.is_none());
        assert!((r.orders(0)[0] - 2.0).abs() < 1e-12);
        assert!((r.orders(0)[1] - 3.0).abs() < 1e-12);
        let irregular = convergence_orders(ReportMeta::default(), &[(1, 0.3, n(1e-2)), (2, 0.1, n(1e-3))]).unwrap();
        assert!((irregular.orders(0)[0] - 1.0 / 3f64.log10()).abs() < 1e-12);
        assert!(convergence_orders(ReportMeta::default(), &[(1, 0.1, n(1.0)), (2, 0.2, n(1.0))]).is_err());
        assert!(convergence_orders(ReportMeta::default(), &[(1, 0.1, n(1.0))]).is_err());
        let csv = r.to_csv();
        assert!(csv.starts_with("N,h,L1,L1_order,L2,L2_order,Linf,Linf_order\n40,"));
        assert_eq!(csv.lines().count(), 4);
        assert!(r.to_markdown().contains("| 80 | 2.50E-03 | 2.00 "));
    }
}
