//! The `bott` command line.
//!
//! Exit codes: 0 success (whatever the verdict), 1 a verification or
//! cross-check failure, 2 bad usage or unreadable input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cohomology::total_sw_class;
use crate::criteria::{is_spin, is_spin_general};
use crate::digraph::{digraph_spin, export_dot, BottDigraph};
use crate::enumeration::{sweep, Limits, Mode};
use crate::error::Error;
use crate::parse::{parse_inline, parse_matrix, ParsedMatrix};
use crate::reference::{verify_representatives, verify_with, FixtureSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bott", version, about = "Spin structures and Stiefel-Whitney classes of real Bott manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide orientability and spin, with a witness on failure.
    Check(InputArgs),
    /// Print the Stiefel-Whitney classes and numbers.
    Sw {
        #[command(flatten)]
        input: InputArgs,
        /// Print w_0..w_n (default unless only --numbers is given).
        #[arg(long)]
        classes: bool,
        /// Print every Stiefel-Whitney number.
        #[arg(long)]
        numbers: bool,
    },
    /// Export the digraph as Graphviz DOT, annotated with the spin verdict.
    Digraph {
        #[command(flatten)]
        input: InputArgs,
        /// Emit DOT (the default).
        #[arg(long)]
        dot: bool,
        /// Leave out the verdict annotation.
        #[arg(long)]
        no_verdict: bool,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Sweep all (or sampled) n x n Bott matrices and cross-check every criterion.
    Enumerate {
        #[arg(short)]
        n: usize,
        /// Sample this many random matrices instead of enumerating all.
        #[arg(long, requires = "seed")]
        sample: Option<u64>,
        /// Seed for --sample.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 0 means all available, 1 forces the serial path.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Check every published reference matrix.
    VerifyPaper {
        /// Directory of fixture files (defaults to the built-in copies).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Matrix file (text or JSON format); `-` reads stdin.
    #[arg(conflicts_with = "matrix", required_unless_present = "matrix")]
    pub path: Option<PathBuf>,
    /// Inline matrix, rows separated by `;`, e.g. "0110;0011;0000;0000".
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let limits = Limits::from_env();
    match &cli.command {
        Command::Check(input) => {
            let format = pick(cli.format, Format::Text, &[Format::Text, Format::Json], "check")?;
            cmd_check(&read_input(input, limits)?, format, out)
        }
        Command::Sw { input, classes, numbers } => {
            let format = pick(cli.format, Format::Text, &[Format::Text, Format::Json], "sw")?;
            cmd_sw(&read_input(input, limits)?, *classes || !*numbers, *numbers, format, out)
        }
        Command::Digraph { input, dot, no_verdict, output } => {
            let default = Format::Dot;
            let format = pick(cli.format, default, &[Format::Dot, Format::Text, Format::Json], "digraph")?;
            if *dot && format != Format::Dot {
                return Err(Failure::usage("--dot conflicts with --format"));
            }
            let text = cmd_digraph(&read_input(input, limits)?, !*no_verdict, format);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, sample, seed, threads } => {
            let format =
                pick(cli.format, Format::Text, &[Format::Text, Format::Json, Format::Csv], "enumerate")?;
            let mode = match sample {
                Some(count) => Mode::Sample { count: *count, seed: seed.expect("clap enforces --seed") },
                None if seed.is_some() => return Err(Failure::usage("--seed needs --sample")),
                None => Mode::Exhaustive,
            };
            let report = sweep(*n, mode, *threads, limits)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).unwrap())?,
                Format::Csv => write!(out, "{}", report.to_csv())?,
                _ => write!(out, "{report}")?,
            }
            Ok(if report.is_clean() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::VerifyPaper { fixtures } => {
            let format = pick(cli.format, Format::Text, &[Format::Text, Format::Json], "verify-paper")?;
            let report = match fixtures {
                None => verify_representatives(),
                Some(dir) => {
                    let set = FixtureSet::from_dir(dir)
                        .map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
                    verify_with(&set)
                }
            };
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).unwrap();
                    v["all_passed"] = report.all_passed().into();
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap())?;
                }
                _ => {
                    write!(out, "{report}")?;
                    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
                    if failed.is_empty() {
                        writeln!(out, "all {} checks passed", report.checks.len())?;
                    } else {
                        writeln!(out, "FAILED: {}", failed.join(", "))?;
                    }
                }
            }
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn pick(requested: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    let f = requested.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::usage(format!("format {f:?} is not available for {command}").to_lowercase()))
    }
}

fn read_input(input: &InputArgs, limits: Limits) -> Result<ParsedMatrix, Failure> {
    let parsed = match (&input.path, &input.matrix) {
        (_, Some(inline)) => parse_inline(inline)?,
        (Some(path), None) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
            };
            parse_matrix(&text)?
        }
        (None, None) => return Err(Failure::usage("no matrix given")),
    };
    if parsed.dim() > limits.check_cap {
        return Err(Error::DimensionTooLarge { n: parsed.dim(), max: limits.check_cap }.into());
    }
    Ok(parsed)
}

fn cmd_check(m: &ParsedMatrix, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let verdict = match m {
        ParsedMatrix::Bott(c) => is_spin(c),
        ParsedMatrix::General(b) => is_spin_general(b),
    };
    match format {
        Format::Json => writeln!(out, "{}", verdict.to_json())?,
        _ => {
            writeln!(out, "{verdict}")?;
            if let ParsedMatrix::General(b) = m {
                let (sigma, c) = b.normalize();
                writeln!(out, "normalized with sigma={:?} to {}", sigma.images(), c.to_inline())?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sw(
    m: &ParsedMatrix,
    classes: bool,
    numbers: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let c = match m {
        ParsedMatrix::Bott(c) => c.clone(),
        ParsedMatrix::General(b) => {
            let (sigma, c) = b.normalize();
            if format == Format::Text {
                writeln!(out, "normalized with sigma={:?} to {}", sigma.images(), c.to_inline())?;
            }
            c
        }
    };
    let profile = total_sw_class(&c);
    if format == Format::Json {
        writeln!(out, "{}", profile.to_json(numbers))?;
        return Ok(EXIT_OK);
    }
    if classes {
        for (k, w) in profile.classes().iter().enumerate() {
            writeln!(out, "w{k} = {w}")?;
        }
        let spin = profile.spin().map_or("n/a".to_string(), |s| s.to_string());
        writeln!(out, "orientable={} spin={spin}", profile.orientable())?;
    }
    if numbers {
        for (p, v) in profile.sw_numbers() {
            writeln!(out, "<{p}, mu> = {}", u8::from(*v))?;
        }
        writeln!(out, "all_sw_numbers_zero={}", profile.sw_numbers_all_zero())?;
    }
    Ok(EXIT_OK)
}

fn cmd_digraph(m: &ParsedMatrix, annotate: bool, format: Format) -> String {
    let (d, verdict) = match m {
        ParsedMatrix::Bott(c) => {
            let d = BottDigraph::from(c);
            let v = digraph_spin(&d);
            (d, v)
        }
        ParsedMatrix::General(b) => {
            let d = BottDigraph::from(b);
            let v = digraph_spin(&d);
            (d, v)
        }
    };
    match format {
        Format::Json => {
            let n = d.vertex_count();
            let vertices: Vec<serde_json::Value> = (1..=n)
                .map(|i| {
                    serde_json::json!({
                        "vertex": i,
                        "out": d.out_neighbours(i),
                        "in": d.in_neighbours(i),
                        "out_degree": d.out_degree(i),
                        "in_degree": d.in_degree(i),
                    })
                })
                .collect();
            let v = serde_json::json!({"vertices": vertices, "verdict": verdict.to_json()});
            format!("{v}\n")
        }
        Format::Text => {
            let mut s = String::new();
            for i in 1..=d.vertex_count() {
                s.push_str(&format!(
                    "u{i}: N={} I={} out={:?}\n",
                    d.out_degree(i),
                    d.in_degree(i),
                    d.out_neighbours(i)
                ));
            }
            s.push_str(&format!("{verdict}\n"));
            s
        }
        _ => export_dot(&d, annotate.then_some(&verdict)),
    }
}
