//! Sample-dump readers, SVG line plots and diagonal cuts.

use std::fmt::Write as _;

use hjdg_core::{Error, Result};

/// Point samples read back from a `run` dump.
#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    /// `x,phi`
    Line(Vec<[f64; 2]>),
    /// `x,y,phi`
    Plane(Vec<[f64; 3]>),
}

pub fn parse_samples(text: &str) -> Result<Samples> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Config("sample dump is empty".into()))?
        .trim();
    let width = match header {
        "x,phi" => 2,
        "x,y,phi" => 3,
        other => {
            return Err(Error::Config(format!(
                "unrecognized sample header `{other}` (expected `x,phi` or `x,y,phi`)"
            )))
        }
    };
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let vals: Vec<f64> = line
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Config(format!("sample line {}: `{line}`: {e}", i + 2)))?;
        if vals.len() != width {
            return Err(Error::Config(format!(
                "sample line {}: expected {width} columns, found {}",
                i + 2,
                vals.len()
            )));
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(Error::Config("sample dump has a header but no rows".into()));
    }
    Ok(if width == 2 {
        Samples::Line(rows.iter().map(|r| [r[0], r[1]]).collect())
    } else {
        Samples::Plane(rows.iter().map(|r| [r[0], r[1], r[2]]).collect())
    })
}

/// Samples within half a grid spacing of the line `y = x`, as
/// `(s, phi)` with `s` the signed distance from the origin along the cut.
pub fn diagonal_cut(points: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let mut xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let spacing = xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let tol = if spacing.is_finite() { 0.5 * spacing } else { 1e-12 };
    let mut cut: Vec<[f64; 3]> = points
        .iter()
        .filter(|p| (p[0] - p[1]).abs() <= tol)
        .map(|p| [(p[0] + p[1]) / 2f64.sqrt(), p[2], 0.5 * (p[0] + p[1])])
        .collect();
    cut.sort_by(|a, b| a[0].total_cmp(&b[0]));
    cut
}

/// Rows grouped by `y` with blank lines between groups, for `splot`.
pub fn gnuplot_grid(points: &[[f64; 3]]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a[1].total_cmp(&b[1]).then(a[0].total_cmp(&b[0])));
    let mut out = String::new();
    let mut last: Option<f64> = None;
    for p in sorted {
        if last.is_some_and(|y| y != p[1]) {
            out.push('\n');
        }
        let _ = writeln!(out, "{:.10e} {:.10e} {:.10e}", p[0], p[1], p[2]);
        last = Some(p[1]);
    }
    out
}

/// A line plot: `exact` as a solid polyline, `points` as open circles.
pub fn svg_plot(title: &str, points: &[[f64; 2]], exact: Option<&[[f64; 2]]>) -> String {
    let (w, h, pad) = (640.0, 420.0, 48.0);
    let all = points.iter().chain(exact.unwrap_or(&[]));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let margin = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - margin, y1 + margin);
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        w / 2.0,
        escape(title)
    );
    for (v, x, y, anchor) in [
        (x0, sx(x0), h - pad + 18.0, "start"),
        (x1, sx(x1), h - pad + 18.0, "end"),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for v in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3}</text>"#,
            pad - 4.0,
            sy(v) + 4.0
        );
    }
    if let Some(e) = exact {
        let path: Vec<String> = e.iter().map(|p| format!("{:.2},{:.2}", sx(p[0]), sy(p[1]))).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="exact" fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
    }
    for p in points {
        let _ = writeln!(
            s,
            r##"<circle class="numerical" cx="{:.2}" cy="{:.2}" r="3" fill="none" stroke="#c0392b"/>"##,
            sx(p[0]),
            sy(p[1])
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        assert_eq!(
            parse_samples("x,phi\n0,1\n1,2\n").unwrap(),
            Samples::Line(vec![[0.0, 1.0], [1.0, 2.0]])
        );
        assert!(parse_samples("").is_err());
        assert!(parse_samples("x,phi\n").is_err());
        assert!(parse_samples("x,y,phi\n1,2\n").is_err());
        assert!(parse_samples("a,b\n1,2\n").is_err());
    }

    #[test]
    fn cut_keeps_the_diagonal() {
        let mut pts = Vec::new();
        for j in 0..4 {
            for i in 0..4 {
                let (x, y) = (i as f64 - 1.5, j as f64 - 1.5);
                pts.push([x, y, x + 10.0 * y]);
            }
        }
        let cut = diagonal_cut(&pts);
        assert_eq!(cut.len(), 4);
        assert!(cut.windows(2).all(|w| w[0][0] < w[1][0]));
        assert!((cut[0][1] - (-1.5 - 15.0)).abs() < 1e-12);
    }

    #[test]
    fn svg_has_line_and_markers() {
        let s = svg_plot("t", &[[0.0, 0.0], [1.0, 1.0]], Some(&[[0.0, 0.0], [1.0, 1.0]]));
        assert_eq!(s.matches("<circle").count(), 2);
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(s.starts_with("<svg"));
    }

    #[test]
    fn grid_blocks() {
        let g = gnuplot_grid(&[[0.0, 0.0, 1.0], [1.0, 0.0, 2.0], [0.0, 1.0, 3.0]]);
        assert_eq!(g.lines().filter(|l| l.is_empty()).count(), 1);
    }
}
