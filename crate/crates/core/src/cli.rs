//! The `lie-chord` command line.
//!
//! Exit codes: 0 success (or "equal"), 1 distinct, 2 usage or malformed
//! input, 3 not semisimple, 4 budget exceeded or internal invariant broken.
//! Errors print one line `error: <kind>: <message>` to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::chord::{enumerate_diagrams, parse_diagram, Symmetry};
use crate::error::{Error, Result};
use crate::invariants::{compare_algebras_with, invariant_vector, theorem_bound, Mode, Strategy, Value, Verdict};
use crate::killing::{casimir_theta, is_semisimple, killing_matrix};
use crate::lie_algebra::{build_classical, change_basis, direct_sum, random_invertible, ClassicalFamily, StructureConstants};
use crate::linalg::format_rational;
use crate::picture::{evaluate_picture, random_picture, reduce_picture, ClosedPicture};
use crate::tensor::{DiagramEvaluator, FloatEvaluator};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "lie-chord", version, about = "Chord-diagram invariants of semisimple Lie algebras")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for diagram evaluation (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the structure constants of sl(m), so(m) or sp(m).
    New {
        #[arg(long)]
        family: ClassicalFamily,
        #[arg(long)]
        param: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the Jacobi identity of an algebra file.
    Validate { algebra: PathBuf },
    /// Print the Killing form.
    Killing { algebra: PathBuf },
    /// Print the inverse Killing form.
    Theta { algebra: PathBuf },
    /// Print whether the Killing form is non-degenerate (exit 3 if not).
    Semisimple { algebra: PathBuf },
    /// List chord diagrams with the given number of chords.
    Diagrams {
        #[arg(long)]
        chords: usize,
        #[arg(long, default_value = "rotation")]
        symmetry: Symmetry,
    },
    /// Evaluate one chord diagram.
    Eval {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        diagram: String,
        #[arg(long, default_value = "exact")]
        mode: Mode,
    },
    /// CSV of all diagram values up to a chord count.
    Invariants {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_chords: usize,
        #[arg(long, default_value = "exact")]
        mode: Mode,
    },
    /// Compare two algebras (exit 1 when a distinguishing diagram exists).
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_chords: usize,
        /// Scan in double precision first; witnesses are still confirmed exactly.
        #[arg(long)]
        float_screen: bool,
    },
    /// Reduce a closed picture to chord diagrams.
    Reduce {
        #[arg(long)]
        picture: PathBuf,
        /// Also evaluate both sides on this algebra and check they agree.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// The chord-count bound k(n).
    Bound {
        #[arg(long)]
        dim: u64,
        /// Print the integer part instead.
        #[arg(long)]
        floor: bool,
    },
    /// Apply a seeded random change of basis.
    Transform {
        algebra: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Direct sum of two algebras.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// A seeded random closed picture.
    RandomPicture {
        #[arg(long)]
        thetas: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MalformedInput(_) | Error::DimensionMismatch(_) | Error::SingularMatrix => 2,
        Error::NotSemisimple(_) | Error::NotSemisimpleFamily(_) => 3,
        Error::BudgetExceeded(_) | Error::InvariantViolated(_) => 4,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<StructureConstants> {
    StructureConstants::from_json(&read(path)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::MalformedInput(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(|e| Error::MalformedInput(e.to_string())),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Error::MalformedInput(e.to_string()))?
    };
}

fn execute(command: Command, seed: u64, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::New { family, param, out: path } => {
            let sc = build_classical(family, param)?;
            emit(out, path.as_deref(), &sc.to_json())?;
        }
        Command::Validate { algebra } => {
            let report = load(&algebra)?.validate();
            say!(out, "{}", report.to_string().trim_end());
            if !report.is_empty() {
                return Err(Error::MalformedInput("the Jacobi identity fails".into()));
            }
        }
        Command::Killing { algebra } => {
            write!(out, "{}", killing_matrix(&load(&algebra)?)?).map_err(|e| Error::MalformedInput(e.to_string()))?;
        }
        Command::Theta { algebra } => {
            let kd = casimir_theta(&load(&algebra)?)?;
            write!(out, "{}", kd.theta).map_err(|e| Error::MalformedInput(e.to_string()))?;
        }
        Command::Semisimple { algebra } => {
            let yes = is_semisimple(&load(&algebra)?)?;
            say!(out, "{yes}");
            if !yes {
                return Ok(3);
            }
        }
        Command::Diagrams { chords, symmetry } => {
            for d in enumerate_diagrams(chords, symmetry) {
                say!(out, "{d}");
            }
        }
        Command::Eval { algebra, diagram, mode } => {
            let sc = load(&algebra)?;
            let kd = casimir_theta(&sc)?;
            let d = parse_diagram(&diagram)?;
            match mode {
                Mode::Exact => say!(out, "{}", format_rational(&DiagramEvaluator::new(&sc, &kd)?.evaluate(&d)?)),
                Mode::Float => say!(out, "{}", Value::Float(FloatEvaluator::new(&sc, &kd)?.evaluate(&d)?)),
            }
        }
        Command::Invariants { algebra, max_chords, mode } => {
            let mut v = invariant_vector(&load(&algebra)?, max_chords, mode)?;
            v.label = algebra.display().to_string();
            write!(out, "{}", v.to_csv()).map_err(|e| Error::MalformedInput(e.to_string()))?;
        }
        Command::Compare {
            a,
            b,
            max_chords,
            float_screen,
        } => {
            let strategy = if float_screen { Strategy::FloatScreen } else { Strategy::Exact };
            let verdict = compare_algebras_with(&load(&a)?, &load(&b)?, max_chords, strategy)?;
            say!(out, "{verdict}");
            if let Verdict::Distinct { .. } = verdict {
                return Ok(1);
            }
        }
        Command::Reduce { picture, verify } => {
            let p = ClosedPicture::from_json(&read(&picture)?)?;
            let combination = reduce_picture(&p)?;
            write!(out, "{combination}").map_err(|e| Error::MalformedInput(e.to_string()))?;
            if let Some(path) = verify {
                let sc = load(&path)?;
                let kd = casimir_theta(&sc)?;
                let direct = evaluate_picture(&p, &sc, &kd)?;
                let reduced = combination.evaluate(&DiagramEvaluator::new(&sc, &kd)?)?;
                say!(out, "direct {}", format_rational(&direct));
                say!(out, "reduced {}", format_rational(&reduced));
                if direct != reduced {
                    return Err(Error::InvariantViolated("reduction changed the value".into()));
                }
            }
        }
        Command::Bound { dim, floor } => {
            if dim == 0 {
                return Err(Error::MalformedInput("dimension must be positive".into()));
            }
            let (value, integer) = theorem_bound(dim);
            if floor {
                say!(out, "{integer}");
            } else {
                say!(out, "{}", format_rational(&value));
            }
        }
        Command::Transform { algebra, out: path } => {
            let sc = load(&algebra)?;
            let moved = change_basis(&sc, &random_invertible(sc.dim(), seed))?;
            emit(out, path.as_deref(), &moved.to_json())?;
        }
        Command::Sum { a, b, out: path } => {
            let sum = direct_sum(&load(&a)?, &load(&b)?)?;
            emit(out, path.as_deref(), &sum.to_json())?;
        }
        Command::RandomPicture { thetas, out: path } => {
            emit(out, path.as_deref(), &random_picture(thetas, seed).to_json())?;
        }
    }
    Ok(0)
}

/// Runs the CLI on `argv` (program name first), writing to the given streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let first = text.lines().next().unwrap_or("invalid arguments");
                let first = first.trim_start_matches("error: ");
                let _ = writeln!(err, "error: usage: {first}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: usage: {e}");
            return 2;
        }
    };
    let seed = cli.seed;
    let mut buffer: Vec<u8> = Vec::new();
    let result = pool.install(|| execute(cli.command, seed, &mut buffer));
    let _ = out.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(e) => {
            let message = e.detail().replace('\n', " ");
            let _ = writeln!(err, "error: {}: {message}", e.kind());
            exit_code(&e)
        }
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
