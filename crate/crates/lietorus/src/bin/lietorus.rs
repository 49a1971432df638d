//! Command-line front end: builds algebras and tori from flags or JSON
//! scenario files, runs the checkers, and emits deterministic JSON reports.
//!
//! Exit codes: 0 all requested checks pass, 1 a check failed, 2 input
//! error, 3 the working field is too small for the request.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lietorus::error::LtError;
use lietorus::scenario::{run, AlgebraSource, AutoSource, Report, ScenarioSpec};

#[derive(Parser)]
#[command(name = "lietorus", version, about = "Exact multiloop Lie torus construction and checking")]
struct Cli {
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print timing information to stderr.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone, Default)]
struct AlgebraArgs {
    /// Named split simple type, e.g. F4 or A2.
    #[arg(long)]
    algebra: Option<String>,
    /// Gram matrix rows for an orthogonal algebra: rows split by ';',
    /// entries by ',', exact rationals.
    #[arg(long)]
    gram: Option<String>,
    /// Structure-constant JSON file.
    #[arg(long)]
    algebra_file: Option<PathBuf>,
    /// Extra factor multiplied into the working conductor.
    #[arg(long)]
    conductor_factor: Option<u64>,
}

#[derive(Args, Clone, Default)]
struct TupleArgs {
    /// Automorphism specs, repeatable, applied in order.  Forms:
    /// "identity", "diagram:1,0", "scalars:<order>:<p0>,<p1>,...",
    /// "conj:<row;row;...>", "file:<path>".
    #[arg(long = "auto", visible_alias = "tuple")]
    autos: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a JSON scenario file.
    Run { spec: PathBuf },
    /// Build an algebra and verify its bracket identities and simplicity.
    Build {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Character grading of an algebra under a tuple.
    Grade {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Simplicity / module-shape / order conditions, plus the axiom suite
    /// when they pass.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Full torus report: axioms, semilattices, grading pair, centroid.
    Torus {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Isotope along a base shift; reports admissibility and fingerprints.
    Isotope {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
        /// Shift images per base root: rows split by ';', entries by ','.
        #[arg(long)]
        shift: String,
    },
    /// Normalize an integer matrix modulo the right ideal of a chain.
    Normalize {
        /// Divisibility chain, e.g. 4,2,2.
        #[arg(long)]
        modulus: String,
        /// Row-major n*n integer matrix, e.g. 1,0,0,2.
        #[arg(long)]
        matrix: String,
        /// Optional row-major witness; solved from the congruence if absent.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Orbit representatives for generating tuples of an abelian group.
    Orbits {
        /// Decreasing invariant factors, e.g. 5,5.
        #[arg(long)]
        group: String,
        /// Number of tuple slots (defaults to the factor count).
        #[arg(long)]
        slots: Option<usize>,
    },
    /// Conjugation-invariant fingerprint of a torus.
    Fingerprint {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Verify a bi-isomorphism or isotopy certificate between two tuples
    /// on the same base algebra.
    Certify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        tuple: TupleArgs,
        /// Second tuple specs, same forms as --auto.
        #[arg(long = "auto2")]
        autos2: Vec<String>,
        /// Unimodular matrix rows, ';'-separated (defaults to identity).
        #[arg(long)]
        p_matrix: Option<String>,
        /// Base isomorphism matrix rows (defaults to identity).
        #[arg(long)]
        phi: Option<String>,
        /// biiso (default) or isotopy.
        #[arg(long)]
        mode: Option<String>,
        /// Twist specs for isotopy mode, same forms as --auto.
        #[arg(long = "twist")]
        twists: Vec<String>,
    },
    /// Reproduce a worked example: b3, untwisted, diagram-a2, diagram-a3,
    /// diagram-a4, diagram-d4, diagram-d4-triality, diagram-e6,
    /// f4-untwisted.
    Example {
        name: String,
        /// Externally supplied generator matrices (JSON array of
        /// automorphism objects) for the f4 pipeline.
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Degree window radius (also LIETORUS_WINDOW).
        #[arg(long)]
        window: Option<i64>,
    },
}

fn parse_int_rows(s: &str) -> Result<Vec<Vec<i64>>, LtError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| LtError::SchemaError(format!("bad integer {e:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_str_rows(s: &str) -> Vec<Vec<String>> {
    s.split(';')
        .map(|row| row.split(',').map(|e| e.trim().to_string()).collect())
        .collect()
}

fn parse_flat_square(s: &str) -> Result<Vec<Vec<i64>>, LtError> {
    let entries: Vec<i64> = s
        .split(',')
        .map(|e| {
            e.trim()
                .parse::<i64>()
                .map_err(|_| LtError::SchemaError(format!("bad integer {e:?}")))
        })
        .collect::<Result<_, _>>()?;
    let mut n = 0usize;
    while n * n < entries.len() {
        n += 1;
    }
    if n * n != entries.len() {
        return Err(LtError::SchemaError("matrix must be square (row-major)".into()));
    }
    Ok(entries.chunks(n).map(|c| c.to_vec()).collect())
}

fn parse_auto(s: &str) -> Result<AutoSource, LtError> {
    let s = s.trim();
    if s == "identity" {
        return Ok(AutoSource::Identity);
    }
    if let Some(rest) = s.strip_prefix("diagram:") {
        let perm = rest
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<usize>()
                    .map_err(|_| LtError::SchemaError(format!("bad index {e:?}")))
            })
            .collect::<Result<_, _>>()?;
        return Ok(AutoSource::Diagram { perm });
    }
    if let Some(rest) = s.strip_prefix("scalars:") {
        let (order, powers) = rest
            .split_once(':')
            .ok_or_else(|| LtError::SchemaError("scalars:<order>:<powers>".into()))?;
        let order = order
            .parse::<u64>()
            .map_err(|_| LtError::SchemaError("bad scalar order".into()))?;
        let powers = powers
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| LtError::SchemaError(format!("bad power {e:?}")))
            })
            .collect::<Result<_, _>>()?;
        return Ok(AutoSource::TorusScalars { order, powers });
    }
    if let Some(rest) = s.strip_prefix("conj:") {
        return Ok(AutoSource::Conjugation { matrix: parse_str_rows(rest) });
    }
    if let Some(rest) = s.strip_prefix("file:") {
        return Ok(AutoSource::MatrixFile { path: rest.to_string() });
    }
    Err(LtError::SchemaError(format!("unknown automorphism spec {s:?}")))
}

fn algebra_source(a: &AlgebraArgs) -> Result<Option<AlgebraSource>, LtError> {
    let mut out = None;
    if let Some(n) = &a.algebra {
        out = Some(AlgebraSource::Named { name: n.clone() });
    }
    if let Some(g) = &a.gram {
        if out.is_some() {
            return Err(LtError::SchemaError("multiple algebra sources".into()));
        }
        out = Some(AlgebraSource::Orthogonal { gram: parse_str_rows(g) });
    }
    if let Some(f) = &a.algebra_file {
        if out.is_some() {
            return Err(LtError::SchemaError("multiple algebra sources".into()));
        }
        out = Some(AlgebraSource::File { path: f.display().to_string() });
    }
    Ok(out)
}

fn autos_of(t: &TupleArgs) -> Result<Vec<AutoSource>, LtError> {
    t.autos.iter().map(|s| parse_auto(s)).collect()
}

fn build_spec(cmd: &Cmd) -> Result<ScenarioSpec, LtError> {
    let mut spec = ScenarioSpec::default();
    match cmd {
        Cmd::Run { spec: path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| LtError::IoError(format!("{}: {e}", path.display())))?;
            spec = serde_json::from_str(&text)
                .map_err(|e| LtError::SchemaError(format!("{}: {e}", path.display())))?;
        }
        Cmd::Build { algebra } => {
            spec.command = "build".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
        }
        Cmd::Grade { algebra, tuple } => {
            spec.command = "grade".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
        }
        Cmd::Check { algebra, tuple } => {
            spec.command = "check".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
        }
        Cmd::Torus { algebra, tuple } => {
            spec.command = "torus".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
        }
        Cmd::Isotope { algebra, tuple, shift } => {
            spec.command = "isotope".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
            spec.shift = Some(parse_int_rows(shift)?);
        }
        Cmd::Normalize { modulus, matrix, witness } => {
            spec.command = "normalize".into();
            spec.modulus = Some(
                modulus
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| LtError::SchemaError(format!("bad modulus {e:?}")))
                    })
                    .collect::<Result<_, _>>()?,
            );
            spec.matrix = Some(parse_flat_square(matrix)?);
            spec.witness = witness.as_deref().map(parse_flat_square).transpose()?;
        }
        Cmd::Orbits { group, slots } => {
            spec.command = "orbits".into();
            spec.group = Some(
                group
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| LtError::SchemaError(format!("bad factor {e:?}")))
                    })
                    .collect::<Result<_, _>>()?,
            );
            spec.slots = *slots;
        }
        Cmd::Fingerprint { algebra, tuple } => {
            spec.command = "fingerprint".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
        }
        Cmd::Certify { algebra, tuple, autos2, p_matrix, phi, mode, twists } => {
            spec.command = "certify".into();
            spec.algebra = algebra_source(algebra)?;
            spec.conductor_factor = algebra.conductor_factor;
            spec.automorphisms = autos_of(tuple)?;
            spec.automorphisms2 =
                autos2.iter().map(|s| parse_auto(s)).collect::<Result<_, _>>()?;
            spec.p_matrix = p_matrix.as_deref().map(parse_int_rows).transpose()?;
            spec.phi = phi.as_deref().map(parse_str_rows);
            spec.mode = mode.clone();
            spec.twists = twists.iter().map(|s| parse_auto(s)).collect::<Result<_, _>>()?;
        }
        Cmd::Example { name, generators, window } => {
            spec.command = "example".into();
            spec.example = Some(name.clone());
            spec.generators = generators.as_ref().map(|p| p.display().to_string());
            spec.window = *window;
        }
    }
    Ok(spec)
}

fn emit(report: &Report, output: &Option<PathBuf>) -> Result<(), LtError> {
    let text = report.to_canonical_json() + "\n";
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| LtError::IoError(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let spec = match build_spec(&cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&spec) {
        Ok(report) => {
            if let Err(e) = emit(&report, &cli.output) {
                eprintln!("{}", serde_json::json!({"error": e.to_string()}));
                return ExitCode::from(2);
            }
            if cli.timings {
                eprintln!("elapsed: {:?}", started.elapsed());
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
