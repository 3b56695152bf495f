#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hjdg_core::mesh::DiagonalSplit;
use hjdg_core::Error;

mod commands;
mod config;
mod plot;

use commands::{Format, MeshRecipe, PlotRequest};
use config::{parse_list, RunArgs};

#[derive(Parser)]
#[command(name = "hjdg", version, about = "DG solver for time-dependent Hamilton-Jacobi equations")]
struct Cli {
    /// Worker threads; defaults to HJDG_THREADS or all cores.
    #[arg(long, global = true, env = "HJDG_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs one case and writes coefficient and sample dumps.
    Run(RunArgs),
    /// Runs a mesh-refinement study and writes the error table.
    Converge {
        #[command(flatten)]
        run: RunArgs,
        /// Resolutions, e.g. 10,20,40,80.
        #[arg(long, default_value = "10,20,40,80,160")]
        ns: String,
        /// Polynomial degrees, e.g. 1,2,3.
        #[arg(long, default_value = "2")]
        ks: String,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Repeats a run for several penalty constants.
    SweepC {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "0,0.125,0.25,0.5,1")]
        cs: String,
    },
    /// Renders a sample dump: SVG for 1D, a gnuplot grid or a diagonal cut for 2D.
    Plot {
        #[arg(long)]
        input: PathBuf,
        /// Overlays this case's exact solution.
        #[arg(long)]
        case: Option<String>,
        /// Time of the exact solution; defaults to the case's final time.
        #[arg(long)]
        tfinal: Option<f64>,
        #[arg(long)]
        output: PathBuf,
        /// `diagonal` extracts the cut along y = x.
        #[arg(long)]
        cut: Option<Cut>,
    },
    /// Prints mesh statistics for a file or a case's generated mesh.
    MeshInfo {
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Writes a generated triangulation in the native format.
    GenMesh {
        #[arg(long, value_enum)]
        kind: MeshShape,
        /// Subdivisions per side (rectangle) or rings (disk).
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// a,b,c,d for the rectangle [a,b] x [c,d].
        #[arg(long, default_value = "0,1,0,1", allow_hyphen_values = true)]
        domain: String,
        #[arg(long, value_enum, default_value_t = Split::Alternating)]
        split: Split,
        /// Identifies opposite sides of the rectangle.
        #[arg(long)]
        periodic: bool,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Ring spacing ratio from the center outward.
        #[arg(long, default_value_t = hjdg_core::run::DISK_GRADING)]
        grading: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Cut {
    Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshShape {
    Rectangle,
    Disk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Split {
    Forward,
    Alternating,
}

fn dispatch(command: Command) -> hjdg_core::Result<String> {
    match command {
        Command::Run(args) => commands::cmd_run(&args.resolve()?),
        Command::Converge { run, ns, ks, format } => {
            let cfg = run.resolve()?;
            commands::cmd_converge(
                &cfg,
                &parse_list(&ns, "--ns")?,
                &parse_list(&ks, "--ks")?,
                format.parse::<Format>()?,
            )
        }
        Command::SweepC { run, cs } => commands::cmd_sweep_c(&run.resolve()?, &parse_list(&cs, "--cs")?),
        Command::Plot {
            input,
            case,
            tfinal,
            output,
            cut,
        } => commands::cmd_plot(&PlotRequest {
            input,
            case: case.map(|c| c.parse()).transpose()?,
            time: tfinal,
            output,
            diagonal: cut.is_some(),
        }),
        Command::MeshInfo { mesh, case, n } => {
            let cfg = match (&mesh, case) {
                (None, Some(case)) => Some(
                    RunArgs {
                        case: Some(case),
                        n,
                        ..RunArgs::default()
                    }
                    .resolve()?,
                ),
                _ => None,
            };
            commands::cmd_mesh_info(mesh.as_deref(), cfg.as_ref())
        }
        Command::GenMesh {
            kind,
            n,
            domain,
            split,
            periodic,
            radius,
            grading,
            output,
        } => {
            let recipe = match kind {
                MeshShape::Rectangle => {
                    let d: Vec<f64> = parse_list(&domain, "--domain")?;
                    let domain: [f64; 4] = d
                        .try_into()
                        .map_err(|_| Error::Config("--domain takes four numbers a,b,c,d".into()))?;
                    MeshRecipe::Rectangle {
                        domain,
                        nx: n,
                        ny: n,
                        split: match split {
                            Split::Forward => DiagonalSplit::Forward,
                            Split::Alternating => DiagonalSplit::Alternating,
                        },
                        periodic,
                    }
                }
                MeshShape::Disk => MeshRecipe::Disk {
                    radius,
                    rings: n,
                    grading,
                },
            };
            commands::cmd_gen_mesh(&recipe, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot start {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NonFinite { .. } => 3,
                _ => 2,
            })
        }
    }
}
