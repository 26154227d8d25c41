use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use meshknit::classification::{
    check_combinatorial_configuration, configurations_up_to_aut, enumerate_configurations,
    enumerate_pedigrees, pedigree_dimension_vector, pedigree_from_dims, Method,
};
use meshknit::dot::{serialize_dot, DotObject};
use meshknit::knitting::{knit_and_knot_run, knit_pattern};
use meshknit::mesh::{hom_dim_oracle, starting_function};
use meshknit::presentations::{
    brauer_from_pedigree, cartan_matrix, fundamental_algebras, pattern_algebra, quiver_of_ac, trivial_extension_presentation,
};
use meshknit::{build_window, parse, quotient, reproduce, Configuration, DynkinTree, Error, Exec, Section};
use serde::Serialize;

mod golden;

#[derive(Parser)]
#[command(name = "meshknit", version, about = "Configurations, mesh categories and presentations for Dynkin trees")]
struct Cli {
    /// Run every parallel stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Facts about a Dynkin tree.
    Dynkin {
        #[command(subcommand)]
        action: DynkinAction,
    },
    /// Knit-and-knot from a section and a dimension vector.
    Knit {
        #[arg(long)]
        tree: DynkinTree,
        /// `equi` or comma-separated levels.
        #[arg(long, default_value = "equi")]
        section: String,
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum, default_value_t = Emit::Config)]
        emit: Emit,
    },
    /// Enumerate or check configurations.
    Configs {
        #[command(subcommand)]
        action: ConfigsAction,
    },
    /// Pedigrees and their dimension vectors.
    Pedigree {
        #[command(subcommand)]
        action: PedigreeAction,
    },
    /// Morphism spaces in the mesh category.
    Mesh {
        #[command(subcommand)]
        action: MeshAction,
    },
    /// Quiver with relations of A(C), of its trivial extension, or its fundamental algebras.
    Present {
        #[arg(long)]
        config: PathBuf,
        /// `auto` for the pattern algebra of the equioriented section, or `;`-separated points.
        #[arg(long, default_value = "auto")]
        fundamental: String,
        #[arg(long, value_enum, default_value_t = PresentQuotient::Nu)]
        quotient: PresentQuotient,
        #[arg(long, value_enum, default_value_t = Out::Json)]
        out: Out,
    },
    /// Quotient of ZT_C by an admissible group.
    Quotient {
        #[arg(long)]
        config: PathBuf,
        /// `nu`, `tau:r`, `glide:r` or `auto:r:images`.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = QuotientOut::Json)]
        out: QuotientOut,
    },
    /// A window of ZT or ZT_C.
    Window {
        #[arg(long)]
        tree: DynkinTree,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Run a worked example against the golden files.
    Reproduce {
        example: String,
        /// Write the rendered artifacts to this directory instead of comparing.
        #[arg(long)]
        write_golden: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DynkinAction {
    Info { tree: DynkinTree },
}

#[derive(Subcommand)]
enum ConfigsAction {
    /// One configuration JSON per line, sorted.
    Enumerate {
        #[arg(long)]
        tree: DynkinTree,
        #[arg(long, value_enum, default_value_t = MethodArg::Patterns)]
        method: MethodArg,
        /// Emit orbit classes instead of configurations.
        #[arg(long)]
        classes: bool,
    },
    /// Check C1/C2 for a configuration file.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum PedigreeAction {
    /// The pedigree of a dimension vector on the equioriented A_n section.
    FromDims {
        #[arg(long)]
        dims: String,
    },
    /// All pedigrees with n nodes, one per line with their dimension vectors.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// The Brauer quiver of a pedigree given by its dimension vector.
    Brauer {
        #[arg(long)]
        dims: String,
    },
}

#[derive(Subcommand)]
enum MeshAction {
    /// `dim k(x, y)`, by the exact engine and by the recurrence.
    Homdim {
        #[arg(long)]
        tree: DynkinTree,
        #[arg(long)]
        config: Option<PathBuf>,
        /// `i,x` or `i,x*`.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Config,
    Run,
    Carpet,
    Pattern,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Patterns,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresentQuotient {
    /// The ν-periodic quiver of A(C).
    None,
    /// The trivial extension A(C)/ν.
    Nu,
    /// All fundamental algebras with their pattern flags.
    Fundamentals,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuotientOut {
    Json,
    Dot,
    Cartan,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

fn io_failure(path: &std::path::Path, e: io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn read_config(path: &std::path::Path) -> Result<Configuration, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))?
    };
    Ok(parse::configuration(&text)?)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

#[derive(Serialize)]
struct Info {
    rank: usize,
    loewy: usize,
    aut_order: usize,
}

#[derive(Serialize)]
struct HomDim {
    from: String,
    to: String,
    dim: usize,
    recurrence: usize,
}

fn run(cli: Cli) -> Result<String, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let out = match cli.command {
        Command::Dynkin { action: DynkinAction::Info { tree } } => {
            json(&Info { rank: tree.rank(), loewy: tree.loewy_number(), aut_order: tree.automorphisms().order() })
        }
        Command::Knit { tree, section, dims, emit } => {
            let s = parse::section(&tree, &section)?;
            let d = parse::dims(&dims)?;
            match emit {
                Emit::Pattern => json(&knit_pattern(&tree, &s, &d)?),
                Emit::Config => knit_and_knot_run(&tree, &s, &d)?.configuration.to_json(),
                Emit::Run => json(&knit_and_knot_run(&tree, &s, &d)?),
                Emit::Carpet => knit_and_knot_run(&tree, &s, &d)?.render_carpet(&tree).trim_end().to_string(),
            }
        }
        Command::Configs { action: ConfigsAction::Enumerate { tree, method, classes } } => {
            if classes {
                let cs = configurations_up_to_aut(&tree, exec);
                cs.iter().map(json).collect::<Vec<_>>().join("\n")
            } else {
                let m = match method {
                    MethodArg::Patterns => Method::Patterns,
                    MethodArg::Bruteforce => Method::Bruteforce,
                };
                enumerate_configurations(&tree, m, exec).iter().map(Configuration::to_json).collect::<Vec<_>>().join("\n")
            }
        }
        Command::Configs { action: ConfigsAction::Check { config } } => {
            let c = read_config(&config)?;
            let report = check_combinatorial_configuration(c.tree(), c.residues());
            if !report.ok {
                return Err(Failure { code: 3, message: json(&report) });
            }
            json(&report)
        }
        Command::Pedigree { action } => match action {
            PedigreeAction::FromDims { dims } => json(&pedigree_from_dims(&parse::dims(&dims)?)?),
            PedigreeAction::Enumerate { n } => enumerate_pedigrees(n)
                .iter()
                .map(|p| json(&(pedigree_dimension_vector(p), p)))
                .collect::<Vec<_>>()
                .join("\n"),
            PedigreeAction::Brauer { dims } => json(&brauer_from_pedigree(&pedigree_from_dims(&parse::dims(&dims)?)?)?),
        },
        Command::Mesh { action: MeshAction::Homdim { tree, config, from, to } } => {
            let c = config.as_deref().map(read_config).transpose()?;
            let (x, y) = (parse::point(&from)?, parse::point(&to)?);
            let l = tree.loewy_number() as i64;
            let lo = x.base().slice.min(y.base().slice) - 1;
            let hi = x.base().slice.max(y.base().slice) + 2 * l + 2;
            let w = build_window(&tree, c.as_ref(), lo, hi)?;
            let dim = hom_dim_oracle(&w, x, y)?;
            let recurrence = starting_function(&w, x)?.dim(y);
            json(&HomDim { from: x.to_string(), to: y.to_string(), dim, recurrence })
        }
        Command::Present { config, fundamental, quotient, out } => {
            let c = read_config(&config)?;
            let f = if fundamental == "auto" {
                pattern_algebra(&c, &Section::equioriented(c.tree()))
            } else {
                fundamental.split(';').map(parse::point).collect::<Result<Vec<_>, _>>()?
            };
            let p = match quotient {
                PresentQuotient::Fundamentals => {
                    return Ok(fundamental_algebras(&c)?.iter().map(json).collect::<Vec<_>>().join("\n"));
                }
                PresentQuotient::None => quiver_of_ac(&c, &f)?,
                PresentQuotient::Nu => trivial_extension_presentation(&c, &f)?,
            };
            match out {
                Out::Json => p.to_json(),
                Out::Dot => serialize_dot(DotObject::Presentation(&p))?.trim_end().to_string(),
            }
        }
        Command::Quotient { config, group, out } => {
            let c = read_config(&config)?;
            let t = c.tree().clone();
            let g = parse::group(&t, &group)?;
            match out {
                QuotientOut::Cartan => json(&cartan_matrix(&c, &g)?),
                _ => {
                    let span = g.generator(&t)?.shift.abs();
                    let w = build_window(&t, Some(&c), -2, span / 2 + 2 * t.loewy_number() as i64 + 2)?;
                    let q = quotient(&w, &g)?;
                    match out {
                        QuotientOut::Dot => serialize_dot(DotObject::Quotient(&q))?.trim_end().to_string(),
                        _ => json(&q),
                    }
                }
            }
        }
        Command::Window { tree, config, lo, hi } => {
            let c = config.as_deref().map(read_config).transpose()?;
            let w = build_window(&tree, c.as_ref(), lo, hi)?;
            serialize_dot(DotObject::Window(&w))?.trim_end().to_string()
        }
        Command::Reproduce { example, write_golden: Some(dir) } => {
            let (_, artifacts) = reproduce::artifacts(&example)?;
            fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
            for a in &artifacts {
                let path = dir.join(&a.file);
                fs::write(&path, &a.contents).map_err(|e| io_failure(&path, e))?;
            }
            json(&artifacts.iter().map(|a| a.file.as_str()).collect::<Vec<_>>())
        }
        Command::Reproduce { example, write_golden: None } => {
            let report = reproduce::reproduce(&example, golden::lookup)?;
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            if !report.pass {
                return Err(Failure { code: 1, message: text });
            }
            text
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    meshknit::exec::apply_thread_env();
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not an error for a streaming tool.
            let _ = writeln!(stdout, "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
