//! Subcommand bodies. Each returns the text printed to stdout.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use hjdg_core::analysis::ErrorNorms;
use hjdg_core::cases::Case;
use hjdg_core::mesh::{disk_mesh, load_tri_mesh, triangulate_rectangle, write_native, DiagonalSplit, EdgeLink, TriMesh2d};
use hjdg_core::run::{build_geometry, convergence_study, run, MeshSpec, RunOutcome, RunSetup};
use hjdg_core::space::Geometry;
use hjdg_core::{Error, Result};

use crate::config::{read, RunConfig};
use crate::plot::{diagonal_cut, gnuplot_grid, parse_samples, svg_plot, Samples};

/// Above this L-infinity error a run is reported as not converging.
pub const NONCONVERGENT_LINF: f64 = 0.1;

/// Sample points per cell (1D) or per direction (2D) in sample dumps.
const SAMPLES_1D: usize = 4;
const SAMPLES_2D: usize = 200;

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn dump(out: &RunOutcome, coeffs: &Path, samples: &Path) -> Result<()> {
    let mut buf = Vec::new();
    out.field.write_coefficients_csv(&mut buf).map_err(|e| Error::io(coeffs, e))?;
    write(coeffs, &buf)?;
    let res = if out.field.space().dim() == 1 { SAMPLES_1D } else { SAMPLES_2D };
    let mut buf = Vec::new();
    out.field.write_samples_csv(&mut buf, res).map_err(|e| Error::io(samples, e))?;
    write(samples, &buf)
}

fn norms_text(n: &Option<ErrorNorms>) -> String {
    match n {
        Some(n) => format!("L1={:.6e} L2={:.6e} Linf={:.6e}", n.l1, n.l2, n.linf),
        None => "no exact solution".into(),
    }
}

fn nonconvergent(n: &Option<ErrorNorms>) -> bool {
    n.is_some_and(|n| n.linf > NONCONVERGENT_LINF)
}

fn stem(setup: &RunSetup) -> String {
    format!("{}_P{}_N{}", setup.case, setup.params.k, setup.mesh.n())
}

pub fn cmd_run(cfg: &RunConfig) -> Result<String> {
    let s = &cfg.setup;
    let out = run(s)?;
    let stem = stem(s);
    let coeffs = cfg.out.join(format!("{stem}_coeffs.csv"));
    let samples = cfg.out.join(format!("{stem}_samples.csv"));
    dump(&out, &coeffs, &samples)?;
    let mut text = String::new();
    for w in &cfg.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let _ = writeln!(
        text,
        "case={} k={} C={} cfl={} limiter={} t={} steps={} h={:.6e} {}",
        s.case,
        s.params.k,
        s.params.penalty,
        s.params.cfl,
        s.params.limiter,
        out.stats.final_time,
        out.stats.steps,
        out.h,
        norms_text(&out.norms)
    );
    if nonconvergent(&out.norms) {
        let _ = writeln!(
            text,
            "warning: Linf error exceeds {NONCONVERGENT_LINF}; the run is not converging to the viscosity solution"
        );
    }
    let _ = writeln!(text, "wrote {} and {}", coeffs.display(), samples.display());
    Ok(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Config(format!("unknown format `{s}` (csv, markdown)"))),
        }
    }
}

pub fn cmd_converge(cfg: &RunConfig, ns: &[usize], ks: &[usize], format: Format) -> Result<String> {
    if ns.len() < 2 {
        return Err(Error::Config("a convergence study needs at least two resolutions".into()));
    }
    let mut text = String::new();
    for &k in ks {
        let base = &cfg.setup;
        let mut setup = RunSetup::defaults_with_degree(base.case, ns[0], k);
        setup.params = hjdg_core::solver1d::SchemeParams {
            k,
            volume_degree: base.params.volume_degree.or(base.case.default_volume_degree(k)),
            ..base.params
        };
        setup.final_time = base.final_time;
        let meshes: Vec<MeshSpec> = ns
            .iter()
            .map(|&n| match &base.mesh {
                MeshSpec::Perturbed { fraction, seed, .. } => MeshSpec::Perturbed {
                    n,
                    fraction: *fraction,
                    seed: *seed,
                },
                _ => MeshSpec::Uniform(n),
            })
            .collect();
        let report = convergence_study(&setup, &meshes)?;
        let (body, ext) = match format {
            Format::Csv => (report.to_csv(), "csv"),
            Format::Markdown => (report.to_markdown(), "md"),
        };
        let path = cfg.out.join(format!("{}_P{k}_convergence.{ext}", base.case));
        write(&path, body.as_bytes())?;
        let _ = writeln!(text, "{}", report.to_markdown());
        let _ = writeln!(text, "wrote {}\n", path.display());
    }
    Ok(text)
}

pub fn cmd_sweep_c(cfg: &RunConfig, cs: &[f64]) -> Result<String> {
    if let Some(c) = cs.iter().find(|c| !(**c >= 0.0)) {
        return Err(Error::Config(format!("penalty constants must be >= 0, got {c}")));
    }
    if cs.len() == 1 {
        let mut single = cfg.clone();
        single.setup.params.penalty = cs[0];
        return cmd_run(&single);
    }
    let mut table = String::from("C,L1,L2,Linf,nonconvergent\n");
    let mut text = String::new();
    for &c in cs {
        let mut setup = cfg.setup.clone();
        setup.params.penalty = c;
        let out = run(&setup)?;
        let flag = nonconvergent(&out.norms);
        match out.norms {
            Some(n) => {
                let _ = writeln!(table, "{c},{:.6e},{:.6e},{:.6e},{flag}", n.l1, n.l2, n.linf);
            }
            None => {
                let _ = writeln!(table, "{c},,,,");
            }
        }
        let _ = writeln!(
            text,
            "C={c}: {}{}",
            norms_text(&out.norms),
            if flag { "  (not converging)" } else { "" }
        );
        let stem = format!("{}_C{c}", stem(&setup));
        dump(
            &out,
            &cfg.out.join(format!("{stem}_coeffs.csv")),
            &cfg.out.join(format!("{stem}_samples.csv")),
        )?;
    }
    let path = cfg.out.join(format!("{}_sweep_c.csv", cfg.setup.case));
    write(&path, table.as_bytes())?;
    let _ = writeln!(text, "wrote {}", path.display());
    Ok(text)
}

/// What `plot` should draw.
#[derive(Debug, Clone)]
pub struct PlotRequest {
    pub input: PathBuf,
    pub case: Option<Case>,
    pub time: Option<f64>,
    pub output: PathBuf,
    pub diagonal: bool,
}

pub fn cmd_plot(req: &PlotRequest) -> Result<String> {
    let samples = parse_samples(&read(&req.input)?)?;
    if let Some(case) = req.case {
        let dim = match samples {
            Samples::Line(_) => 1,
            Samples::Plane(_) => 2,
        };
        if case.dim() != dim {
            return Err(Error::Config(format!(
                "dump {} holds {dim}D samples but case `{case}` is {}D",
                req.input.display(),
                case.dim()
            )));
        }
    }
    let time = req.time.or(req.case.map(|c| c.final_time()));
    let exact = |x: [f64; 2]| match (req.case, time) {
        (Some(c), Some(t)) if c.has_exact() => c.exact(x, t).ok(),
        _ => None,
    };
    let title = match (req.case, time) {
        (Some(c), Some(t)) => format!("{c}, t = {t:.4}"),
        _ => req.input.display().to_string(),
    };
    let mut text = String::new();
    match samples {
        Samples::Line(pts) => {
            let (a, b) = pts
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[0]), b.max(p[0])));
            let curve: Option<Vec<[f64; 2]>> = (0..=800)
                .map(|i| {
                    let x = a + (b - a) * i as f64 / 800.0;
                    exact([x, 0.0]).map(|v| [x, v])
                })
                .collect();
            write(&req.output, svg_plot(&title, &pts, curve.as_deref()).as_bytes())?;
            let _ = writeln!(text, "wrote {}", req.output.display());
        }
        Samples::Plane(pts) if req.diagonal => {
            let cut = diagonal_cut(&pts);
            if cut.is_empty() {
                return Err(Error::Config("no samples lie on the diagonal y = x".into()));
            }
            let mut csv = String::from("s,phi,exact\n");
            for p in &cut {
                let e = exact([p[2], p[2]]).map(|v| format!("{v:.10e}")).unwrap_or_default();
                let _ = writeln!(csv, "{:.10e},{:.10e},{e}", p[0], p[1]);
            }
            let csv_path = req.output.with_extension("csv");
            write(&csv_path, csv.as_bytes())?;
            let (lo, hi) = (cut[0][2], cut[cut.len() - 1][2]);
            let curve: Option<Vec<[f64; 2]>> = (0..=800)
                .map(|i| {
                    let x = lo + (hi - lo) * i as f64 / 800.0;
                    exact([x, x]).map(|v| [x * 2f64.sqrt(), v])
                })
                .collect();
            let pts2: Vec<[f64; 2]> = cut.iter().map(|p| [p[0], p[1]]).collect();
            write(&req.output, svg_plot(&format!("{title}, cut along y = x"), &pts2, curve.as_deref()).as_bytes())?;
            let _ = writeln!(text, "wrote {} and {}", req.output.display(), csv_path.display());
        }
        Samples::Plane(pts) => {
            write(&req.output, gnuplot_grid(&pts).as_bytes())?;
            let _ = writeln!(text, "wrote {}", req.output.display());
        }
    }
    Ok(text)
}

fn describe_tri(m: &TriMesh2d) -> String {
    let n = m.n_elements();
    let min_area = (0..n).map(|t| m.area(t)).fold(f64::INFINITY, f64::min);
    let periodic = m.periodic_pairs().len();
    let interior = m.edges().iter().enumerate().filter(|(e, _)| m.link(*e) == EdgeLink::Interior).count();
    format!(
        "triangles={n} nodes={} edges={} interior_edges={interior} boundary_edges={} periodic_pairs={periodic} h={:.6e} area={:.6e} min_area={min_area:.6e}",
        m.nodes().len(),
        m.edges().len(),
        m.n_boundary_edges(),
        m.h(),
        m.total_area()
    )
}

pub fn cmd_mesh_info(mesh: Option<&Path>, cfg: Option<&RunConfig>) -> Result<String> {
    if let Some(path) = mesh {
        return Ok(describe_tri(&load_tri_mesh(path)?) + "\n");
    }
    let cfg = cfg.ok_or_else(|| Error::Config("mesh-info needs --mesh or --case".into()))?;
    let geometry = build_geometry(cfg.setup.case, &cfg.setup.mesh)?;
    Ok(match &geometry {
        Geometry::Line(m) => {
            let (a, b) = m.domain();
            format!(
                "cells={} domain=[{a}, {b}] boundary={} h={:.6e} min_width={:.6e}\n",
                m.n_cells(),
                m.boundary(),
                m.h(),
                m.min_width()
            )
        }
        Geometry::Cart(m) => {
            let [a, b, c, d] = m.domain();
            format!(
                "cells={}x{} domain=[{a}, {b}]x[{c}, {d}] boundary={} h={:.6e}\n",
                m.nx(),
                m.ny(),
                m.boundary()[0],
                m.h()
            )
        }
        Geometry::Tri(m) => describe_tri(m) + "\n",
    })
}

/// Parameters of `gen-mesh`.
#[derive(Debug, Clone)]
pub enum MeshRecipe {
    Rectangle {
        domain: [f64; 4],
        nx: usize,
        ny: usize,
        split: DiagonalSplit,
        periodic: bool,
    },
    Disk {
        radius: f64,
        rings: usize,
        grading: f64,
    },
}

pub fn cmd_gen_mesh(recipe: &MeshRecipe, output: &Path) -> Result<String> {
    let mesh = match *recipe {
        MeshRecipe::Rectangle {
            domain,
            nx,
            ny,
            split,
            periodic,
        } => {
            let m = triangulate_rectangle((domain[0], domain[1]), (domain[2], domain[3]), nx, ny, split)?;
            if periodic {
                m.with_periodic_pairs(&[[domain[1] - domain[0], 0.0], [0.0, domain[3] - domain[2]]])?
            } else {
                m
            }
        }
        MeshRecipe::Disk { radius, rings, grading } => disk_mesh(radius, rings, grading)?,
    };
    write(output, write_native(&mesh).as_bytes())?;
    Ok(format!("{}\nwrote {}\n", describe_tri(&mesh), output.display()))
}
