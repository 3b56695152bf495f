use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::TriMesh2d;
use crate::error::{Error, Result};

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedMesh {
        line,
        message: message.into(),
    }
}

fn parse_fields<T: FromStr>(line: usize, text: &str, count: usize) -> Result<Vec<T>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() < count {
        return Err(malformed(
            line,
            format!("expected {count} fields, found {}", fields.len()),
        ));
    }
    fields[..count]
        .iter()
        .map(|f| {
            f.parse::<T>()
                .map_err(|_| malformed(line, format!("cannot parse `{f}`")))
        })
        .collect()
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header(line: Option<(usize, &str)>, keyword: &str) -> Result<(usize, usize)> {
    let (no, text) = line.ok_or_else(|| malformed(0, format!("missing `{keyword}` section")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(malformed(no, format!("expected `{keyword} <count>`")));
    }
    let count = parts
        .next()
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| malformed(no, format!("`{keyword}` needs a count")))?;
    Ok((no, count))
}

/// Reads the native ASCII format: `nodes N`, N lines `x y`, `triangles M`,
/// M lines of 0-based node triples, then optionally `periodic P` and P lines
/// of canonical edge index pairs.
pub fn parse_native(text: &str) -> Result<TriMesh2d> {
    let mut lines = content_lines(text);
    let (_, n_nodes) = header(lines.next(), "nodes")?;
    let mut nodes = Vec::with_capacity(n_nodes);
    for _ in 0..n_nodes {
        let (no, l) = lines
            .next()
            .ok_or_else(|| malformed(0, "file ends inside the node list"))?;
        let v: Vec<f64> = parse_fields(no, l, 2)?;
        if !v.iter().all(|x| x.is_finite()) {
            return Err(malformed(no, "non-finite coordinate"));
        }
        nodes.push([v[0], v[1]]);
    }
    let (_, n_tri) = header(lines.next(), "triangles")?;
    let mut triangles = Vec::with_capacity(n_tri);
    for _ in 0..n_tri {
        let (no, l) = lines
            .next()
            .ok_or_else(|| malformed(0, "file ends inside the triangle list"))?;
        let v: Vec<usize> = parse_fields(no, l, 3)?;
        if let Some(bad) = v.iter().find(|&&i| i >= n_nodes) {
            return Err(malformed(no, format!("node index {bad} out of range")));
        }
        triangles.push([v[0], v[1], v[2]]);
    }
    let mut pairs = Vec::new();
    if let Some(next) = lines.next() {
        let (_, n_per) = header(Some(next), "periodic")?;
        for _ in 0..n_per {
            let (no, l) = lines
                .next()
                .ok_or_else(|| malformed(0, "file ends inside the periodic list"))?;
            let v: Vec<usize> = parse_fields(no, l, 2)?;
            pairs.push((v[0], v[1]));
        }
        if let Some((no, _)) = lines.next() {
            return Err(malformed(no, "unexpected trailing content"));
        }
    }
    let mesh = TriMesh2d::from_triangles(nodes, triangles)?;
    if pairs.is_empty() {
        Ok(mesh)
    } else {
        mesh.with_explicit_pairs(&pairs)
    }
}

/// Writes the native format, including periodic pairs.
pub fn write_native(mesh: &TriMesh2d) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}", mesh.nodes().len());
    for p in mesh.nodes() {
        let _ = writeln!(out, "{:e} {:e}", p[0], p[1]);
    }
    let _ = writeln!(out, "triangles {}", mesh.n_elements());
    for t in mesh.triangles() {
        let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
    }
    let pairs = mesh.periodic_pairs();
    if !pairs.is_empty() {
        let _ = writeln!(out, "periodic {}", pairs.len());
        for (a, b) in pairs {
            let _ = writeln!(out, "{a} {b}");
        }
    }
    out
}

/// Reads Gmsh MSH 2.2 ASCII. Only 3-node triangles (element type 2) are kept.
pub fn parse_gmsh(text: &str) -> Result<TriMesh2d> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let find = |tag: &str| lines.iter().position(|(_, l)| *l == tag);

    if let Some(i) = find("$MeshFormat") {
        let (no, l) = lines.get(i + 1).copied().ok_or_else(|| malformed(0, "empty $MeshFormat"))?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.first().map(|v| !v.starts_with('2')).unwrap_or(true) {
            return Err(malformed(no, "only MSH version 2 is supported"));
        }
        if fields.get(1) != Some(&"0") {
            return Err(malformed(no, "binary MSH is not supported"));
        }
    }

    let start = find("$Nodes").ok_or_else(|| malformed(0, "missing $Nodes section"))?;
    let (no, l) = lines.get(start + 1).copied().ok_or_else(|| malformed(0, "truncated $Nodes"))?;
    let n_nodes: usize = parse_fields(no, l, 1)?[0];
    let mut index = std::collections::HashMap::with_capacity(n_nodes);
    let mut nodes = Vec::with_capacity(n_nodes);
    for k in 0..n_nodes {
        let (no, l) = lines
            .get(start + 2 + k)
            .copied()
            .ok_or_else(|| malformed(0, "truncated $Nodes"))?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() < 3 {
            return Err(malformed(no, "node line needs `id x y [z]`"));
        }
        let id: usize = f[0].parse().map_err(|_| malformed(no, "bad node id"))?;
        let x: f64 = f[1].parse().map_err(|_| malformed(no, "bad x"))?;
        let y: f64 = f[2].parse().map_err(|_| malformed(no, "bad y"))?;
        if index.insert(id, nodes.len()).is_some() {
            return Err(malformed(no, format!("duplicate node id {id}")));
        }
        nodes.push([x, y]);
    }

    let start = find("$Elements").ok_or_else(|| malformed(0, "missing $Elements section"))?;
    let (no, l) = lines.get(start + 1).copied().ok_or_else(|| malformed(0, "truncated $Elements"))?;
    let n_elem: usize = parse_fields(no, l, 1)?[0];
    let mut triangles = Vec::new();
    for k in 0..n_elem {
        let (no, l) = lines
            .get(start + 2 + k)
            .copied()
            .ok_or_else(|| malformed(0, "truncated $Elements"))?;
        let f: Vec<usize> = l
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| malformed(no, format!("cannot parse `{s}`"))))
            .collect::<Result<_>>()?;
        if f.len() < 3 {
            return Err(malformed(no, "element line too short"));
        }
        if f[1] != 2 {
            continue;
        }
        let n_tags = f[2];
        let verts = f
            .get(3 + n_tags..6 + n_tags)
            .ok_or_else(|| malformed(no, "triangle needs three nodes"))?;
        let mut tri = [0; 3];
        for (slot, id) in tri.iter_mut().zip(verts) {
            *slot = *index
                .get(id)
                .ok_or_else(|| malformed(no, format!("unknown node id {id}")))?;
        }
        triangles.push(tri);
    }
    if triangles.is_empty() {
        return Err(malformed(0, "no triangles (element type 2) found"));
    }
    TriMesh2d::from_triangles(nodes, triangles)
}

/// Loads a triangulation, choosing the Gmsh reader for files that start with
/// `$MeshFormat` or have the `.msh` extension.
pub fn load_tri_mesh(path: impl AsRef<Path>) -> Result<TriMesh2d> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let gmsh = text.trim_start().starts_with("$MeshFormat")
        || path.extension().map(|e| e == "msh").unwrap_or(false);
    if gmsh {
        parse_gmsh(&text)
    } else {
        parse_native(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{triangulate_rectangle, DiagonalSplit};

    const SQUARE: &str = "nodes 4\n0 0\n1 0\n1 1\n0 1\ntriangles 2\n0 1 2\n0 2 3\n";

    #[test]
    fn native_square() {
        let m = parse_native(SQUARE).unwrap();
        assert_eq!(m.n_elements(), 2);
        assert_eq!(m.n_boundary_edges(), 4);
    }

    #[test]
    fn native_roundtrip_with_periodic_pairs() {
        let m = triangulate_rectangle((0.0, 1.0), (0.0, 1.0), 3, 2, DiagonalSplit::Alternating)
            .unwrap()
            .with_periodic_pairs(&[[1.0, 0.0], [0.0, 1.0]])
            .unwrap();
        let back = parse_native(&write_native(&m)).unwrap();
        assert_eq!(back.triangles(), m.triangles());
        assert_eq!(back.periodic_pairs(), m.periodic_pairs());
    }

    #[test]
    fn native_errors_carry_line_numbers() {
        let err = parse_native("nodes 2\n0 0\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::MalformedMesh { line: 3, .. }), "{err}");
        let err = parse_native("nodes 3\n0 0\n1 0\n0 1\ntriangles 1\n0 1 7\n").unwrap_err();
        assert!(matches!(err, Error::MalformedMesh { line: 6, .. }), "{err}");
        let dup = "nodes 4\n0 0\n1 0\n1 1\n0 1\ntriangles 3\n0 1 2\n0 2 3\n1 2 0\n";
        assert!(matches!(parse_native(dup), Err(Error::NonManifoldEdge(..))));
    }

    #[test]
    fn gmsh_triangles_only() {
        let text = "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n4\n1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n$EndNodes\n\
                    $Elements\n3\n1 1 2 0 1 1 2\n2 2 2 0 1 1 2 3\n3 2 2 0 1 1 3 4\n$EndElements\n";
        let m = parse_gmsh(text).unwrap();
        assert_eq!(m.n_elements(), 2);
        assert!((m.total_area() - 1.0).abs() < 1e-15);
        assert!(parse_gmsh("$MeshFormat\n4.1 0 8\n$EndMeshFormat\n").is_err());
    }
}
