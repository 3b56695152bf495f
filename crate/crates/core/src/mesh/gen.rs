use std::f64::consts::PI;

use super::TriMesh2d;
use crate::error::{Error, Result};

/// How each generating rectangle is cut into two triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagonalSplit {
    /// Every rectangle is cut along its lower-left to upper-right diagonal.
    #[default]
    Forward,
    /// Diagonals alternate in a checkerboard pattern.
    Alternating,
}

/// Splits an `nx` by `ny` grid of rectangles on `[a, b] x [c, d]` into
/// `2 nx ny` triangles. The characteristic length is the longer rectangle side.
pub fn triangulate_rectangle(
    (a, b): (f64, f64),
    (c, d): (f64, f64),
    nx: usize,
    ny: usize,
    split: DiagonalSplit,
) -> Result<TriMesh2d> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidMesh(format!("need nx, ny >= 1, got {nx} x {ny}")));
    }
    if !(a < b && c < d) {
        return Err(Error::InvalidMesh("empty rectangle".into()));
    }
    let coord = |lo: f64, hi: f64, n: usize, i: usize| {
        if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        }
    };
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            nodes.push([coord(a, b, nx, i), coord(c, d, ny, j)]);
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (n00, n10, n11, n01) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            let forward = match split {
                DiagonalSplit::Forward => true,
                DiagonalSplit::Alternating => (i + j) % 2 == 0,
            };
            if forward {
                triangles.push([n00, n10, n11]);
                triangles.push([n00, n11, n01]);
            } else {
                triangles.push([n00, n10, n01]);
                triangles.push([n10, n11, n01]);
            }
        }
    }
    let h = ((b - a) / nx as f64).max((d - c) / ny as f64);
    Ok(TriMesh2d::from_triangles(nodes, triangles)?.with_characteristic_length(h))
}

/// Triangulates the disk of the given radius with `rings` concentric node
/// rings at radii `radius * (i / rings)^grading`, so `grading > 1` refines
/// toward the center. Each ring carries about `2 pi r / dr` nodes.
pub fn disk_mesh(radius: f64, rings: usize, grading: f64) -> Result<TriMesh2d> {
    if rings == 0 || !(radius > 0.0) || !(grading > 0.0) {
        return Err(Error::InvalidMesh(format!(
            "disk needs radius > 0, rings >= 1 and grading > 0 (got {radius}, {rings}, {grading})"
        )));
    }
    let r = |i: usize| radius * (i as f64 / rings as f64).powf(grading);
    let mut nodes = vec![[0.0, 0.0]];
    let mut ring_start = vec![0usize];
    let mut ring_len = vec![1usize];
    let mut ring_offset = vec![0.0];
    for i in 1..=rings {
        let (ri, dr) = (r(i), r(i) - r(i - 1));
        let n = ((2.0 * PI * ri / dr).round() as usize).max(6);
        // Stagger consecutive rings to avoid slivers.
        let offset = if i % 2 == 0 { PI / n as f64 } else { 0.0 };
        ring_start.push(nodes.len());
        ring_len.push(n);
        ring_offset.push(offset);
        for j in 0..n {
            let th = offset + 2.0 * PI * j as f64 / n as f64;
            nodes.push([ri * th.cos(), ri * th.sin()]);
        }
    }

    let mut triangles = Vec::new();
    for j in 0..ring_len[1] {
        let s = ring_start[1];
        triangles.push([0, s + j, s + (j + 1) % ring_len[1]]);
    }
    for i in 1..rings {
        let (sa, na, sb, nb) = (ring_start[i], ring_len[i], ring_start[i + 1], ring_len[i + 1]);
        let (oa, ob) = (ring_offset[i], ring_offset[i + 1]);
        let theta_a = |k: usize| oa + 2.0 * PI * k as f64 / na as f64;
        let theta_b = |k: usize| ob + 2.0 * PI * k as f64 / nb as f64;
        let (mut ia, mut ib) = (0usize, 0usize);
        while ia < na || ib < nb {
            if ib == nb || (ia < na && theta_a(ia + 1) <= theta_b(ib + 1)) {
                triangles.push([sa + ia, sa + (ia + 1) % na, sb + ib % nb]);
                ia += 1;
            } else {
                triangles.push([sa + ia % na, sb + (ib + 1) % nb, sb + ib]);
                ib += 1;
            }
        }
    }
    TriMesh2d::from_triangles(nodes, triangles)
}
