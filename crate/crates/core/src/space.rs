//! Broken polynomial space on a mesh: element maps, quadrature tables and the
//! face list shared by the 2D assemblers, limiters and diagnostics.

use crate::basis::{
    gauss_rule, rule_for, square_rule, unit_gauss_rule, BasisTable, ElementKind,
    QuadratureRule, ReferenceBasis,
};
use crate::error::Result;
use crate::mesh::{Boundary, CartMesh2d, EdgeLink, Mesh1d, TriMesh2d};

/// The mesh underlying a [`Space`].
#[derive(Debug, Clone)]
pub enum Geometry {
    Line(Mesh1d),
    Cart(CartMesh2d),
    Tri(TriMesh2d),
}

impl Geometry {
    pub fn kind(&self) -> ElementKind {
        match self {
            Geometry::Line(_) => ElementKind::Interval,
            Geometry::Cart(_) => ElementKind::Square,
            Geometry::Tri(_) => ElementKind::Triangle,
        }
    }

    pub fn n_elements(&self) -> usize {
        match self {
            Geometry::Line(m) => m.n_cells(),
            Geometry::Cart(m) => m.n_cells(),
            Geometry::Tri(m) => m.n_elements(),
        }
    }

    /// Characteristic mesh size.
    pub fn h(&self) -> f64 {
        match self {
            Geometry::Line(m) => m.h(),
            Geometry::Cart(m) => m.h(),
            Geometry::Tri(m) => m.h(),
        }
    }

    pub fn dim(&self) -> usize {
        self.kind().dim()
    }
}

/// Affine map `x = origin + jac xi` from the reference element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementMap {
    pub origin: [f64; 2],
    pub jac: [[f64; 2]; 2],
    /// `jac^{-T}`, which maps reference gradients to physical ones.
    pub inv_t: [[f64; 2]; 2],
    /// `|det jac|`, the mass-matrix scale of the orthonormal basis.
    pub det: f64,
}

impl ElementMap {
    fn new(origin: [f64; 2], jac: [[f64; 2]; 2]) -> Self {
        let d = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let inv_t = [
            [jac[1][1] / d, -jac[1][0] / d],
            [-jac[0][1] / d, jac[0][0] / d],
        ];
        ElementMap {
            origin,
            jac,
            inv_t,
            det: d.abs(),
        }
    }

    #[inline]
    pub fn to_physical(&self, xi: [f64; 2]) -> [f64; 2] {
        [
            self.origin[0] + self.jac[0][0] * xi[0] + self.jac[0][1] * xi[1],
            self.origin[1] + self.jac[1][0] * xi[0] + self.jac[1][1] * xi[1],
        ]
    }

    #[inline]
    pub fn to_reference(&self, x: [f64; 2]) -> [f64; 2] {
        let d = [x[0] - self.origin[0], x[1] - self.origin[1]];
        // jac^{-1} is the transpose of inv_t.
        [
            self.inv_t[0][0] * d[0] + self.inv_t[1][0] * d[1],
            self.inv_t[0][1] * d[0] + self.inv_t[1][1] * d[1],
        ]
    }

    #[inline]
    pub fn gradient(&self, g: [f64; 2]) -> [f64; 2] {
        [
            self.inv_t[0][0] * g[0] + self.inv_t[0][1] * g[1],
            self.inv_t[1][0] * g[0] + self.inv_t[1][1] * g[1],
        ]
    }
}

/// A face shared by two elements. Side 0 ("left") owns the normal; side 1
/// lies across it. Physical boundary faces under the outflow rule carry no
/// jump and are not stored.
#[derive(Debug, Clone)]
pub struct Face {
    pub elements: [usize; 2],
    /// Local face index within each element.
    pub local: [usize; 2],
    /// Whether side 1 traverses its local face backwards.
    pub reversed: bool,
    /// Unit normal pointing out of side 0.
    pub normal: [f64; 2],
    /// `(-n_y, n_x)`.
    pub tangent: [f64; 2],
    /// Face measure (1 in 1D).
    pub length: f64,
    /// Physical quadrature weights.
    pub weights: Vec<f64>,
    /// Quadrature points in each side's own coordinates; they differ only
    /// across periodic faces.
    pub points: [Vec<[f64; 2]>; 2],
    /// Penalty length scale `|K| / |face|` of each side.
    pub scale: [f64; 2],
    pub periodic: bool,
}

/// Reference coordinates of parameter `s` in `[0, 1]` along local face `l`.
/// Square and triangle faces run counter-clockwise.
pub fn reference_face_point(kind: ElementKind, l: usize, s: f64) -> [f64; 2] {
    match (kind, l) {
        (ElementKind::Interval, 0) => [-1.0, 0.0],
        (ElementKind::Interval, _) => [1.0, 0.0],
        (ElementKind::Square, 0) => [-1.0 + 2.0 * s, -1.0],
        (ElementKind::Square, 1) => [1.0, -1.0 + 2.0 * s],
        (ElementKind::Square, 2) => [1.0 - 2.0 * s, 1.0],
        (ElementKind::Square, _) => [-1.0, 1.0 - 2.0 * s],
        (ElementKind::Triangle, 0) => [s, 0.0],
        (ElementKind::Triangle, 1) => [1.0 - s, s],
        (ElementKind::Triangle, _) => [0.0, 1.0 - s],
    }
}

pub fn local_face_count(kind: ElementKind) -> usize {
    match kind {
        ElementKind::Interval => 2,
        ElementKind::Square => 4,
        ElementKind::Triangle => 3,
    }
}

/// Uniform bucket grid over the bounding box of a triangulation.
#[derive(Debug, Clone)]
struct Buckets {
    lo: [f64; 2],
    cell: [f64; 2],
    n: [usize; 2],
    items: Vec<Vec<usize>>,
}

impl Buckets {
    fn new(mesh: &TriMesh2d) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in mesh.nodes() {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let side = ((mesh.n_elements() as f64).sqrt().ceil() as usize).max(1);
        let n = [side, side];
        let cell = [
            ((hi[0] - lo[0]) / side as f64).max(1e-300),
            ((hi[1] - lo[1]) / side as f64).max(1e-300),
        ];
        let mut items = vec![Vec::new(); side * side];
        for t in 0..mesh.n_elements() {
            let v = mesh.vertices(t);
            let (mut a, mut b) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
            for p in v {
                for k in 0..2 {
                    a[k] = a[k].min(p[k]);
                    b[k] = b[k].max(p[k]);
                }
            }
            let i0 = Self::index(lo[0], cell[0], n[0], a[0]);
            let i1 = Self::index(lo[0], cell[0], n[0], b[0]);
            let j0 = Self::index(lo[1], cell[1], n[1], a[1]);
            let j1 = Self::index(lo[1], cell[1], n[1], b[1]);
            for j in j0..=j1 {
                for i in i0..=i1 {
                    items[j * n[0] + i].push(t);
                }
            }
        }
        Buckets { lo, cell, n, items }
    }

    fn index(lo: f64, cell: f64, n: usize, x: f64) -> usize {
        (((x - lo) / cell).floor().max(0.0) as usize).min(n - 1)
    }

    fn candidates(&self, x: [f64; 2]) -> &[usize] {
        let i = Self::index(self.lo[0], self.cell[0], self.n[0], x[0]);
        let j = Self::index(self.lo[1], self.cell[1], self.n[1], x[1]);
        &self.items[j * self.n[0] + i]
    }
}

/// The discrete space `V_h^k` with everything the assemblers precompute.
#[derive(Debug, Clone)]
pub struct Space {
    geometry: Geometry,
    basis: ReferenceBasis,
    maps: Vec<ElementMap>,
    faces: Vec<Face>,
    element_faces: Vec<Vec<(usize, usize)>>,
    volume_rule: QuadratureRule,
    volume_table: BasisTable,
    /// Per local face: tables at forward and reversed face points.
    face_tables: Vec<[BasisTable; 2]>,
    face_rule: QuadratureRule,
    measure: f64,
    buckets: Option<Buckets>,
}

impl Space {
    /// Space of degree `k` with the default volume rule: `k + 1` Gauss
    /// points per direction on intervals and squares, degree `2k` on
    /// triangles.
    pub fn new(geometry: Geometry, k: usize) -> Result<Self> {
        Self::with_volume_degree(geometry, k, None)
    }

    /// As [`Space::new`], optionally raising the volume rule to at least
    /// `volume_degree`.
    pub fn with_volume_degree(
        geometry: Geometry,
        k: usize,
        volume_degree: Option<usize>,
    ) -> Result<Self> {
        let kind = geometry.kind();
        let basis = ReferenceBasis::new(kind, k)?;
        let volume_rule = match (kind, volume_degree) {
            (_, Some(d)) if d > 2 * k => rule_for(kind, d)?,
            (ElementKind::Interval, _) => gauss_rule(k + 1),
            (ElementKind::Square, _) => square_rule(k + 1),
            (ElementKind::Triangle, _) => rule_for(kind, 2 * k)?,
        };
        let volume_table = basis.tabulate(&volume_rule);
        let face_rule = if kind == ElementKind::Interval {
            QuadratureRule {
                points: vec![[0.0, 0.0]],
                weights: vec![1.0],
                degree: usize::MAX,
            }
        } else {
            unit_gauss_rule(k + 1)
        };
        let face_tables = (0..local_face_count(kind))
            .map(|l| {
                let fwd: Vec<[f64; 2]> = face_rule
                    .points
                    .iter()
                    .map(|p| reference_face_point(kind, l, p[0]))
                    .collect();
                let rev: Vec<[f64; 2]> = face_rule
                    .points
                    .iter()
                    .map(|p| reference_face_point(kind, l, 1.0 - p[0]))
                    .collect();
                [basis.tabulate_points(&fwd), basis.tabulate_points(&rev)]
            })
            .collect();

        let maps = build_maps(&geometry);
        let measure = maps.iter().map(|m| m.det * kind.measure()).sum();
        let pairs = face_pairs(&geometry);
        let mut faces = Vec::with_capacity(pairs.len());
        for (elements, local, periodic) in pairs {
            faces.push(make_face(kind, &maps, &face_rule, elements, local, periodic));
        }
        let mut element_faces = vec![Vec::new(); maps.len()];
        for (f, face) in faces.iter().enumerate() {
            for side in 0..2 {
                element_faces[face.elements[side]].push((f, side));
            }
        }
        let buckets = match &geometry {
            Geometry::Tri(m) => Some(Buckets::new(m)),
            _ => None,
        };
        Ok(Space {
            geometry,
            basis,
            maps,
            faces,
            element_faces,
            volume_rule,
            volume_table,
            face_tables,
            face_rule,
            measure,
            buckets,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn kind(&self) -> ElementKind {
        self.basis.kind()
    }

    pub fn dim(&self) -> usize {
        self.kind().dim()
    }

    pub fn basis(&self) -> &ReferenceBasis {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn n_dofs(&self) -> usize {
        self.basis.n_dofs()
    }

    pub fn n_elements(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, e: usize) -> &ElementMap {
        &self.maps[e]
    }

    /// Physical measure of element `e`.
    pub fn element_measure(&self, e: usize) -> f64 {
        self.maps[e].det * self.kind().measure()
    }

    /// Total measure of the domain.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// `(face, side)` pairs touching element `e`.
    pub fn element_faces(&self, e: usize) -> &[(usize, usize)] {
        &self.element_faces[e]
    }

    pub fn volume_rule(&self) -> &QuadratureRule {
        &self.volume_rule
    }

    pub fn volume_table(&self) -> &BasisTable {
        &self.volume_table
    }

    pub fn face_rule(&self) -> &QuadratureRule {
        &self.face_rule
    }

    /// Basis table at the quadrature points of `face` as seen from `side`.
    pub fn face_table(&self, face: &Face, side: usize) -> &BasisTable {
        let rev = side == 1 && face.reversed;
        &self.face_tables[face.local[side]][rev as usize]
    }

    /// Smallest element lengths used by the time-step law, per direction.
    /// Triangles use the smallest altitude `2 |K| / longest edge` for both.
    pub fn length_scales(&self) -> [f64; 2] {
        match &self.geometry {
            Geometry::Line(m) => [m.min_width(), f64::INFINITY],
            Geometry::Cart(m) => [m.min_dx(), m.min_dy()],
            Geometry::Tri(m) => {
                let mut l = f64::INFINITY;
                for t in 0..m.n_elements() {
                    let longest = m
                        .element_edges(t)
                        .iter()
                        .map(|&e| m.edges()[e].length)
                        .fold(0.0, f64::max);
                    l = l.min(2.0 * m.area(t) / longest);
                }
                [l, l]
            }
        }
    }

    /// Element containing `x` and the matching reference point.
    pub fn locate(&self, x: [f64; 2]) -> Option<(usize, [f64; 2])> {
        let e = match &self.geometry {
            Geometry::Line(m) => m.locate(x[0])?,
            Geometry::Cart(m) => {
                let [a, b, c, d] = m.domain();
                if x[0] < a || x[0] > b || x[1] < c || x[1] > d {
                    return None;
                }
                let i = m.xs().partition_point(|&v| v <= x[0]).clamp(1, m.nx()) - 1;
                let j = m.ys().partition_point(|&v| v <= x[1]).clamp(1, m.ny()) - 1;
                m.cell(i, j)
            }
            Geometry::Tri(_) => {
                let buckets = self.buckets.as_ref()?;
                let tol = 1e-10;
                *buckets.candidates(x).iter().find(|&&t| {
                    let r = self.maps[t].to_reference(x);
                    r[0] >= -tol && r[1] >= -tol && r[0] + r[1] <= 1.0 + tol
                })?
            }
        };
        Some((e, self.maps[e].to_reference(x)))
    }
}

fn build_maps(geometry: &Geometry) -> Vec<ElementMap> {
    match geometry {
        Geometry::Line(m) => (0..m.n_cells())
            .map(|j| ElementMap::new([m.center(j), 0.0], [[0.5 * m.width(j), 0.0], [0.0, 1.0]]))
            .collect(),
        Geometry::Cart(m) => (0..m.n_cells())
            .map(|e| {
                let (i, j) = m.cell_ij(e);
                let c = [
                    0.5 * (m.xs()[i] + m.xs()[i + 1]),
                    0.5 * (m.ys()[j] + m.ys()[j + 1]),
                ];
                ElementMap::new(c, [[0.5 * m.dx(i), 0.0], [0.0, 0.5 * m.dy(j)]])
            })
            .collect(),
        Geometry::Tri(m) => (0..m.n_elements())
            .map(|t| {
                let [a, b, c] = m.vertices(t);
                ElementMap::new(a, [[b[0] - a[0], c[0] - a[0]], [b[1] - a[1], c[1] - a[1]]])
            })
            .collect(),
    }
}

type FacePair = ([usize; 2], [usize; 2], bool);

fn face_pairs(geometry: &Geometry) -> Vec<FacePair> {
    let mut out = Vec::new();
    match geometry {
        Geometry::Line(m) => {
            let n = m.n_cells();
            for j in 0..n - 1 {
                out.push(([j, j + 1], [1, 0], false));
            }
            if m.boundary() == Boundary::Periodic {
                out.push(([n - 1, 0], [1, 0], true));
            }
        }
        Geometry::Cart(m) => {
            for e in 0..m.n_cells() {
                let (i, j) = m.cell_ij(e);
                if let Some((ni, nj)) = m.neighbor(i, j, 0, 1) {
                    out.push(([e, m.cell(ni, nj)], [1, 3], ni < i));
                }
                if let Some((ni, nj)) = m.neighbor(i, j, 1, 1) {
                    out.push(([e, m.cell(ni, nj)], [2, 0], nj < j));
                }
            }
        }
        Geometry::Tri(m) => {
            for (idx, edge) in m.edges().iter().enumerate() {
                match m.link(idx) {
                    EdgeLink::Interior => {
                        let (t0, l0) = edge.owner;
                        let (t1, l1) = edge.neighbor.expect("interior edge has two sides");
                        out.push(([t0, t1], [l0, l1], false));
                    }
                    EdgeLink::Periodic(p) if idx < p => {
                        let (t0, l0) = edge.owner;
                        let (t1, l1) = m.edges()[p].owner;
                        out.push(([t0, t1], [l0, l1], true));
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

fn make_face(
    kind: ElementKind,
    maps: &[ElementMap],
    rule: &QuadratureRule,
    elements: [usize; 2],
    local: [usize; 2],
    periodic: bool,
) -> Face {
    let [ml, mr] = [&maps[elements[0]], &maps[elements[1]]];
    let measure = |m: &ElementMap| m.det * kind.measure();
    let (normal, length, reversed) = if kind == ElementKind::Interval {
        ([1.0, 0.0], 1.0, false)
    } else {
        let a = ml.to_physical(reference_face_point(kind, local[0], 0.0));
        let b = ml.to_physical(reference_face_point(kind, local[0], 1.0));
        let c = mr.to_physical(reference_face_point(kind, local[1], 0.0));
        let d = mr.to_physical(reference_face_point(kind, local[1], 1.0));
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len = dx.hypot(dy);
        let shift = [
            0.5 * (c[0] + d[0] - a[0] - b[0]),
            0.5 * (c[1] + d[1] - a[1] - b[1]),
        ];
        let forward_gap = (c[0] - shift[0] - a[0]).hypot(c[1] - shift[1] - a[1]);
        ([dy / len, -dx / len], len, forward_gap > 1e-9 * len)
    };
    let side_points = |m: &ElementMap, l: usize, rev: bool| -> Vec<[f64; 2]> {
        rule.points
            .iter()
            .map(|p| {
                let s = if rev { 1.0 - p[0] } else { p[0] };
                m.to_physical(reference_face_point(kind, l, s))
            })
            .collect()
    };
    Face {
        elements,
        local,
        reversed,
        normal,
        tangent: [-normal[1], normal[0]],
        length,
        weights: rule.weights.iter().map(|w| w * length).collect(),
        points: [
            side_points(ml, local[0], false),
            side_points(mr, local[1], reversed),
        ],
        scale: [measure(ml) / length, measure(mr) / length],
        periodic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{triangulate_rectangle, DiagonalSplit};

    fn assert_faces_consistent(space: &Space) {
        for f in space.faces() {
            let n = f.normal;
            assert!((n[0] * f.tangent[0] + n[1] * f.tangent[1]).abs() <= 1e-14);
            assert!((n[0].hypot(n[1]) - 1.0).abs() <= 1e-14);
            if !f.periodic {
                for (p, q) in f.points[0].iter().zip(&f.points[1]) {
                    assert!((p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12);
                }
            }
            // The normal points away from the side-0 centroid.
            let c = space.map(f.elements[0]).to_physical(match space.kind() {
                ElementKind::Triangle => [1.0 / 3.0, 1.0 / 3.0],
                _ => [0.0, 0.0],
            });
            let p = f.points[0][0];
            assert!(n[0] * (p[0] - c[0]) + n[1] * (p[1] - c[1]) > 0.0);
        }
    }

    #[test]
    fn cartesian_periodic_faces() {
        let m = CartMesh2d::uniform((0.0, 1.0), (0.0, 2.0), 3, 4, [Boundary::Periodic; 2]).unwrap();
        let s = Space::new(Geometry::Cart(m), 2).unwrap();
        assert_eq!(s.faces().len(), 2 * 12);
        assert!((s.measure() - 2.0).abs() < 1e-14);
        assert_faces_consistent(&s);
        for f in s.faces() {
            assert!(f.reversed);
            let expect = if f.normal[0] != 0.0 { 1.0 / 3.0 } else { 0.5 };
            assert!((f.scale[0] - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn triangle_periodic_faces_are_translates() {
        let m = triangulate_rectangle((-2.0, 2.0), (-2.0, 2.0), 4, 4, DiagonalSplit::Alternating)
            .unwrap()
            .with_periodic_pairs(&[[4.0, 0.0], [0.0, 4.0]])
            .unwrap();
        let s = Space::new(Geometry::Tri(m), 2).unwrap();
        assert_eq!(s.faces().len(), 3 * 32 / 2);
        assert_faces_consistent(&s);
        for f in s.faces().iter().filter(|f| f.periodic) {
            let d0 = [
                f.points[1][0][0] - f.points[0][0][0],
                f.points[1][0][1] - f.points[0][0][1],
            ];
            for (p, q) in f.points[0].iter().zip(&f.points[1]) {
                assert!((q[0] - p[0] - d0[0]).abs() < 1e-12 && (q[1] - p[1] - d0[1]).abs() < 1e-12);
            }
            assert!((d0[0].abs() - 4.0).abs() < 1e-12 || (d0[1].abs() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn locate_round_trips() {
        let m = triangulate_rectangle((0.0, 1.0), (0.0, 1.0), 5, 3, DiagonalSplit::Forward).unwrap();
        let s = Space::new(Geometry::Tri(m), 1).unwrap();
        for &x in &[[0.1, 0.2], [0.95, 0.99], [0.5, 0.5], [0.0, 0.0]] {
            let (e, r) = s.locate(x).unwrap();
            let back = s.map(e).to_physical(r);
            assert!((back[0] - x[0]).abs() < 1e-14 && (back[1] - x[1]).abs() < 1e-14);
        }
        assert!(s.locate([1.5, 0.5]).is_none());
    }
}
