//! Command-line interface: validate and generate structure-constant files,
//! compute Cartan/Engel/Frattini data for a ring, list subrings and series,
//! and run the verification suite over a corpus.
//!
//! Exit codes: 0 all pass or skipped, 1 any failure, 2 invalid input,
//! 3 a guard was exceeded without failures.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use liering::corpus::{self, Family, FamilySpec};
use liering::engel;
use liering::error::Error;
use liering::format::{load_ring, RingFile};
use liering::harness::{verify_rings, verify_suite, Config, Report};
use liering::ring::LieRing;
use liering::subspace::Subspace;
use liering::{abnormal, frattini};

#[derive(Parser)]
#[command(
    name = "liering",
    version,
    about = "Exact computations with finite Lie rings over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure-constant file against the Lie ring axioms.
    Validate { file: PathBuf },
    /// Generate a family member and write its structure-constant file.
    Gen {
        /// Family name: abelian, affine2, heisenberg, strictly_upper,
        /// borel, sl2, semidirect_scalar, random_soluble.
        family: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compute a Cartan subring by Engel-minimal search.
    Cartan {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        guard: u64,
    },
    /// Compute the Engel set of an element.
    Engel {
        file: PathBuf,
        /// Comma-separated coordinates of the element.
        #[arg(long)]
        element: String,
    },
    /// Print the derived and lower central series.
    Series { file: PathBuf },
    /// List the bracket-closed subspaces, optionally above a given span.
    Subrings {
        file: PathBuf,
        /// Semicolon-separated vectors, each a comma-separated coordinate list.
        #[arg(long)]
        containing: Option<String>,
        #[arg(long, default_value_t = 200_000)]
        guard: u64,
    },
    /// Compute the Frattini subring and its maximal-subring witnesses.
    Frattini {
        file: PathBuf,
        #[arg(long, default_value_t = 200_000)]
        guard: u64,
    },
    /// Run the verification suite over a corpus.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// `builtin` or a directory of structure-constant files.
    #[arg(long, default_value = "builtin")]
    corpus: String,
    /// Primes for the builtin corpus.
    #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Subspace-lattice guard; element and group guards scale from it.
    #[arg(long, default_value_t = 200_000)]
    guard: u64,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Base seed for the random corpus members.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { file } => {
            let g = load_ring(&file)?;
            match g.validate() {
                Ok(()) => {
                    println!("ok: {} (p={}, dim={})", g.name(), g.p(), g.dim());
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    println!("violation in {}: {v}", g.name());
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gen {
            family,
            n,
            p,
            seed,
            output,
        } => {
            let family = Family::from_str(&family)?;
            let spec = FamilySpec { family, n, p, seed };
            let g = corpus::generate(&spec)?;
            RingFile::from_ring(&g).write(&output)?;
            println!("wrote {} to {}", g.name(), output.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Cartan { file, guard } => {
            let g = load_and_validate(&file)?;
            match engel::cartan_subring(&g, guard) {
                Ok(c) => {
                    println!("cartan subring of {} (dim {}):", g.name(), c.dim());
                    print_space(c.space());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) if e.is_guard_exceeded() => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => {
                    println!("no verified cartan subring: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Engel { file, element } => {
            let g = load_and_validate(&file)?;
            let coords: Vec<i64> = element
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::InvalidElement(e.to_string()))?;
            let x = g.element(&coords)?;
            let e = engel::engel_element(&g, &x);
            println!(
                "engel set of {:?} in {} (dim {}, stationary at power {}):",
                x,
                g.name(),
                e.space.dim(),
                e.stabilization_index
            );
            print_space(&e.space);
            Ok(ExitCode::SUCCESS)
        }
        Command::Series { file } => {
            let g = load_and_validate(&file)?;
            let full = g.full_space();
            println!("ring {} (p={}, dim={})", g.name(), g.p(), g.dim());
            println!("derived series dims: {:?}", dims(&g.derived_series(&full)));
            println!(
                "lower central series dims: {:?}",
                dims(&g.lower_central_series(&full))
            );
            println!(
                "soluble: {}, nilpotent: {}, abelian: {}",
                g.is_soluble(&full),
                g.is_nilpotent(&full),
                g.is_abelian(&full)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Subrings {
            file,
            containing,
            guard,
        } => {
            let g = load_and_validate(&file)?;
            let base = match containing {
                None => g.zero_space(),
                Some(text) => {
                    let rows: Vec<Vec<i64>> = text
                        .split(';')
                        .map(|v| {
                            v.split(',')
                                .map(|t| t.trim().parse::<i64>())
                                .collect::<Result<Vec<i64>, _>>()
                        })
                        .collect::<Result<_, _>>()
                        .map_err(|e| Error::InvalidElement(e.to_string()))?;
                    for r in &rows {
                        if r.len() != g.dim() {
                            return Err(Error::InvalidElement(format!(
                                "vector of length {} in a ring of dim {}",
                                r.len(),
                                g.dim()
                            )));
                        }
                    }
                    Subspace::from_signed_rows(g.dim(), g.p(), &rows)
                }
            };
            match abnormal::enumerate_subrings(&g, &base, guard) {
                Ok(subs) => {
                    println!(
                        "{} subring(s) of {} above the given span:",
                        subs.len(),
                        g.name()
                    );
                    for s in subs {
                        println!("  dim {}: {:?}", s.dim(), s.space().basis_rows());
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) if e.is_guard_exceeded() => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e),
            }
        }
        Command::Frattini { file, guard } => {
            let g = load_and_validate(&file)?;
            match frattini::frattini(&g, guard) {
                Ok(f) => {
                    println!(
                        "frattini subring of {} (dim {}, ideal: {}, nilpotent: {}):",
                        g.name(),
                        f.space.dim(),
                        f.is_ideal,
                        f.is_nilpotent
                    );
                    print_space(&f.space);
                    println!("{} maximal subring(s)", f.maximal_subrings.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) if e.is_guard_exceeded() => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e),
            }
        }
        Command::Suite(args) => {
            let cfg = Config {
                subspace_guard: args.guard,
                element_guard: args.guard.min(100_000),
                group_cap: args.guard.min(100_000),
            };
            let report = if args.corpus == "builtin" {
                verify_suite(
                    &corpus::builtin_corpus(&args.primes, args.max_dim, args.seed),
                    &cfg,
                )?
            } else {
                let dir = PathBuf::from(&args.corpus);
                let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
                    .map_err(|e| Error::InvalidFile(format!("{}: {e}", dir.display())))?
                    .filter_map(|entry| entry.ok().map(|d| d.path()))
                    .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
                    .collect();
                paths.sort();
                let rings: Vec<LieRing> = paths
                    .iter()
                    .map(|p| load_ring(p))
                    .collect::<Result<_, _>>()?;
                verify_rings(&rings, &cfg)
            };
            emit_report(&report, args.report.as_deref())?;
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

fn load_and_validate(path: &std::path::Path) -> Result<LieRing, Error> {
    let g = load_ring(path)?;
    g.validate()
        .map_err(|v| Error::InvalidFile(format!("{}: {v}", path.display())))?;
    Ok(g)
}

fn print_space(s: &Subspace) {
    if s.dim() == 0 {
        println!("  (zero subspace)");
    }
    for row in s.basis_rows() {
        println!("  {row:?}");
    }
}

fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

fn emit_report(report: &Report, path: Option<&std::path::Path>) -> Result<(), Error> {
    print!("{}", report.render_text());
    if let Some(path) = path {
        std::fs::write(path, report.to_json())?;
        eprintln!("report written to {}", path.display());
    }
    Ok(())
}
