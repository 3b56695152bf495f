use std::collections::HashMap;

use crate::error::{Error, Result};

/// Absolute tolerance for matching boundary edges under a periodic translation.
pub const PERIODIC_TOLERANCE: f64 = 1e-9;

/// What lies across an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLink {
    /// Shared by two triangles.
    Interior,
    /// Identified with another boundary edge by translation.
    Periodic(usize),
    /// Physical boundary.
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    /// End nodes, smaller index first.
    pub nodes: [usize; 2],
    pub length: f64,
    /// First adjacent triangle and its local edge index.
    pub owner: (usize, usize),
    /// Second adjacent triangle, if any.
    pub neighbor: Option<(usize, usize)>,
}

/// Conforming triangulation with counter-clockwise triangles.
///
/// Local edge `l` of a triangle runs from its vertex `l` to vertex `l + 1`
/// (mod 3). Edges are stored in canonical order: sorted by their node pair.
#[derive(Debug, Clone)]
pub struct TriMesh2d {
    nodes: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    element_edges: Vec<[usize; 3]>,
    areas: Vec<f64>,
    h: f64,
    periodic: HashMap<usize, usize>,
}

impl TriMesh2d {
    /// Builds connectivity, reorienting clockwise triangles.
    pub fn from_triangles(nodes: Vec<[f64; 2]>, mut triangles: Vec<[usize; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidMesh("no triangles".into()));
        }
        let scale = nodes
            .iter()
            .flat_map(|p| [p[0].abs(), p[1].abs()])
            .fold(1e-300, f64::max);
        let mut areas = Vec::with_capacity(triangles.len());
        let mut seen = HashMap::with_capacity(triangles.len());
        for (t, tri) in triangles.iter_mut().enumerate() {
            if let Some(&bad) = tri.iter().find(|&&v| v >= nodes.len()) {
                return Err(Error::InvalidMesh(format!(
                    "triangle {t} references missing node {bad}"
                )));
            }
            let mut key = *tri;
            key.sort_unstable();
            if key[0] == key[1] || key[1] == key[2] {
                return Err(Error::DegenerateTriangle(t));
            }
            if seen.insert(key, t).is_some() {
                return Err(Error::NonManifoldEdge(key[0], key[1]));
            }
            let [a, b, c] = [nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]];
            let signed = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
            if signed.abs() <= 1e-14 * scale * scale {
                return Err(Error::DegenerateTriangle(t));
            }
            if signed < 0.0 {
                tri.swap(1, 2);
            }
            areas.push(signed.abs());
        }

        let mut incidence: HashMap<[usize; 2], Vec<(usize, usize)>> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for l in 0..3 {
                let (a, b) = (tri[l], tri[(l + 1) % 3]);
                incidence.entry([a.min(b), a.max(b)]).or_default().push((t, l));
            }
        }
        let mut keys: Vec<[usize; 2]> = incidence.keys().copied().collect();
        keys.sort_unstable();
        let mut edges = Vec::with_capacity(keys.len());
        let mut element_edges = vec![[usize::MAX; 3]; triangles.len()];
        for key in keys {
            let sides = &incidence[&key];
            if sides.len() > 2 {
                return Err(Error::NonManifoldEdge(key[0], key[1]));
            }
            let idx = edges.len();
            for &(t, l) in sides {
                element_edges[t][l] = idx;
            }
            let (p, q) = (nodes[key[0]], nodes[key[1]]);
            edges.push(Edge {
                nodes: key,
                length: (q[0] - p[0]).hypot(q[1] - p[1]),
                owner: sides[0],
                neighbor: sides.get(1).copied(),
            });
        }
        let h = edges.iter().map(|e| e.length).fold(0.0, f64::max);
        Ok(TriMesh2d {
            nodes,
            triangles,
            edges,
            element_edges,
            areas,
            h,
            periodic: HashMap::new(),
        })
    }

    /// Pairs every boundary edge with a partner translated by one of
    /// `±directions`. An empty direction set leaves the mesh unchanged.
    pub fn with_periodic_pairs(mut self, directions: &[[f64; 2]]) -> Result<Self> {
        if directions.is_empty() {
            return Ok(self);
        }
        let boundary: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].neighbor.is_none())
            .collect();
        let mut pairs = HashMap::new();
        for &e in &boundary {
            if pairs.contains_key(&e) {
                continue;
            }
            let [a, b] = self.edges[e].nodes.map(|n| self.nodes[n]);
            let partner = boundary.iter().copied().find(|&f| {
                if f == e || pairs.contains_key(&f) {
                    return false;
                }
                let [c, d] = self.edges[f].nodes.map(|n| self.nodes[n]);
                directions.iter().any(|dir| {
                    [1.0, -1.0].iter().any(|s| {
                        let t = [s * dir[0], s * dir[1]];
                        let close = |p: [f64; 2], q: [f64; 2]| {
                            (p[0] + t[0] - q[0]).abs() < PERIODIC_TOLERANCE
                                && (p[1] + t[1] - q[1]).abs() < PERIODIC_TOLERANCE
                        };
                        (close(a, c) && close(b, d)) || (close(a, d) && close(b, c))
                    })
                })
            });
            match partner {
                Some(f) => {
                    pairs.insert(e, f);
                    pairs.insert(f, e);
                }
                None => return Err(Error::UnmatchedPeriodicEdge { edge: e }),
            }
        }
        self.periodic = pairs;
        Ok(self)
    }

    /// Installs explicit periodic pairs (canonical edge indices).
    pub fn with_explicit_pairs(mut self, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map = HashMap::new();
        for &(a, b) in pairs {
            for e in [a, b] {
                match self.edges.get(e) {
                    None => {
                        return Err(Error::InvalidMesh(format!("periodic pair names missing edge {e}")))
                    }
                    Some(edge) if edge.neighbor.is_some() => {
                        return Err(Error::InvalidMesh(format!(
                            "periodic pair names interior edge {e}"
                        )))
                    }
                    _ => {}
                }
            }
            if a == b || map.contains_key(&a) || map.contains_key(&b) {
                return Err(Error::InvalidMesh(format!("edge paired twice in ({a}, {b})")));
            }
            if (self.edges[a].length - self.edges[b].length).abs() > PERIODIC_TOLERANCE {
                return Err(Error::InvalidMesh(format!(
                    "periodic edges {a} and {b} differ in length"
                )));
            }
            map.insert(a, b);
            map.insert(b, a);
        }
        self.periodic = map;
        Ok(self)
    }

    pub fn with_characteristic_length(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_elements(&self) -> usize {
        self.triangles.len()
    }

    pub fn element_edges(&self, t: usize) -> [usize; 3] {
        self.element_edges[t]
    }

    pub fn vertices(&self, t: usize) -> [[f64; 2]; 3] {
        self.triangles[t].map(|n| self.nodes[n])
    }

    pub fn area(&self, t: usize) -> f64 {
        self.areas[t]
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    pub fn centroid(&self, t: usize) -> [f64; 2] {
        let v = self.vertices(t);
        [
            (v[0][0] + v[1][0] + v[2][0]) / 3.0,
            (v[0][1] + v[1][1] + v[2][1]) / 3.0,
        ]
    }

    /// Characteristic length: generator spacing, or the longest edge for
    /// meshes read from disk.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn link(&self, edge: usize) -> EdgeLink {
        if self.edges[edge].neighbor.is_some() {
            EdgeLink::Interior
        } else if let Some(&p) = self.periodic.get(&edge) {
            EdgeLink::Periodic(p)
        } else {
            EdgeLink::Boundary
        }
    }

    /// Periodic pairs with the smaller edge index first, sorted.
    pub fn periodic_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .periodic
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| (*a, *b))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn n_boundary_edges(&self) -> usize {
        (0..self.edges.len())
            .filter(|&e| self.link(e) == EdgeLink::Boundary)
            .count()
    }

    /// Endpoints of local edge `l` of triangle `t`, in counter-clockwise order.
    pub fn local_edge_points(&self, t: usize, l: usize) -> [[f64; 2]; 2] {
        let tri = self.triangles[t];
        [self.nodes[tri[l]], self.nodes[tri[(l + 1) % 3]]]
    }

    /// Outward unit normal of local edge `l` of triangle `t`.
    pub fn outward_normal(&self, t: usize, l: usize) -> [f64; 2] {
        let [p, q] = self.local_edge_points(t, l);
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        let len = dx.hypot(dy);
        [dy / len, -dx / len]
    }

    /// Unit tangent of local edge `l`, the outward normal rotated by +90°.
    pub fn tangent(&self, t: usize, l: usize) -> [f64; 2] {
        let n = self.outward_normal(t, l);
        [-n[1], n[0]]
    }
}
