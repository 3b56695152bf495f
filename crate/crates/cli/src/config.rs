//! Run configuration: command-line flags layered over an optional flat
//! `key=value` file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use hjdg_core::cases::{Case, MeshKind};
use hjdg_core::run::{MeshSpec, RunSetup};
use hjdg_core::timeloop::{DtLaw, LimiterKind};
use hjdg_core::{Error, Result};

/// Flags shared by every solver subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Case name from the catalog.
    #[arg(long)]
    pub case: Option<String>,
    /// Polynomial degree.
    #[arg(long)]
    pub k: Option<usize>,
    /// Cells per direction (subdivisions per side on triangles, rings on the disk).
    #[arg(long)]
    pub n: Option<usize>,
    /// Penalty constant C.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// Final time; defaults to the case's canonical time.
    #[arg(long)]
    pub tfinal: Option<f64>,
    /// none, minmod or moment.
    #[arg(long)]
    pub limiter: Option<String>,
    /// standard or p43 (alias p3_scaled).
    #[arg(long = "dt-law")]
    pub dt_law: Option<String>,
    /// Triangulation file (native or Gmsh 2.2 ASCII).
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Random node perturbation of 1D meshes, as a fraction of the cell width.
    #[arg(long)]
    pub perturb: Option<f64>,
    /// Seed for mesh perturbation.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exactness degree of the volume rule.
    #[arg(long = "volume-degree")]
    pub volume_degree: Option<usize>,
    /// Flat `key=value` file; flags take precedence over its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

const KEYS: &[&str] = &[
    "case",
    "k",
    "n",
    "c",
    "cfl",
    "tfinal",
    "limiter",
    "dt-law",
    "mesh",
    "perturb",
    "seed",
    "volume-degree",
];

/// Parses a flat `key=value` file. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key=value, got `{line}`", i + 1)))?;
        let k = k.trim().replace('_', "-");
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::Config(format!(
                "config line {}: unknown key `{k}` (known: {})",
                i + 1,
                KEYS.join(", ")
            )));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: Display,
{
    file.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| Error::Config(format!("config key `{key}`: cannot parse `{v}`: {e}")))
        })
        .transpose()
}

/// A validated run description plus the settings echoed in summaries.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub setup: RunSetup,
    pub out: PathBuf,
    pub warnings: Vec<String>,
}

impl RunArgs {
    /// Resolves flags, then config-file entries, then case defaults.
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(p) => parse_config(&read(p)?)?,
            None => BTreeMap::new(),
        };
        let case_name = match &self.case {
            Some(c) => c.clone(),
            None => file
                .get("case")
                .cloned()
                .ok_or_else(|| Error::Config("no case given; pass --case or set `case` in the config file".into()))?,
        };
        let case: Case = case_name.parse()?;
        let k = pick(self.k, &file, "k")?.unwrap_or(2);
        let n = pick(self.n, &file, "n")?.unwrap_or_else(|| case.default_n());
        let mut setup = RunSetup::defaults_with_degree(case, n, k);
        if let Some(c) = pick(self.c, &file, "c")? {
            setup.params.penalty = c;
        }
        if let Some(v) = pick(self.cfl, &file, "cfl")? {
            setup.params.cfl = v;
        }
        if let Some(v) = pick(self.tfinal, &file, "tfinal")? {
            if !(v >= 0.0) {
                return Err(Error::Config(format!("final time must be >= 0, got {v}")));
            }
            setup.final_time = v;
        }
        if let Some(v) = pick::<String>(self.limiter.clone(), &file, "limiter")? {
            setup.params.limiter = v.parse::<LimiterKind>()?;
        }
        if let Some(v) = pick::<String>(self.dt_law.clone(), &file, "dt-law")? {
            setup.params.dt_law = v.parse::<DtLaw>()?;
        }
        if let Some(v) = pick(self.volume_degree, &file, "volume-degree")? {
            setup.params.volume_degree = Some(v);
        }
        let perturb: Option<f64> = pick(self.perturb, &file, "perturb")?;
        let seed = pick(self.seed, &file, "seed")?.unwrap_or(0);
        let mesh: Option<PathBuf> = pick(self.mesh.clone(), &file, "mesh")?;
        setup.mesh = match (mesh, perturb) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("--mesh and --perturb cannot be combined".into()));
            }
            (Some(path), None) => {
                if !matches!(case.mesh_kind(), MeshKind::Triangles | MeshKind::Disk) {
                    return Err(Error::Config(format!(
                        "case `{case}` runs on a {} mesh; --mesh only applies to triangle cases",
                        case.mesh_kind()
                    )));
                }
                MeshSpec::File(path)
            }
            (None, Some(fraction)) => {
                if case.mesh_kind() != MeshKind::Line {
                    return Err(Error::Config(format!("--perturb only applies to 1D cases, not `{case}`")));
                }
                MeshSpec::Perturbed { n, fraction, seed }
            }
            (None, None) => MeshSpec::Uniform(n),
        };
        setup.params.validate()?;
        let mut warnings = Vec::new();
        if case == Case::Quartic1d && setup.params.limiter == LimiterKind::None {
            warnings.push("quartic1d without a limiter does not converge to the viscosity solution".into());
        }
        Ok(RunConfig {
            setup,
            out: self.out.clone(),
            warnings,
        })
    }
}

fn pick<T: FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => from_file(file, key),
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Comma-separated list such as `40,80,160`.
pub fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: Display,
{
    let v: Vec<T> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|e| Error::Config(format!("{what}: cannot parse `{t}`: {e}")))
        })
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Config(format!("{what}: empty list")));
    }
    Ok(v)
}
