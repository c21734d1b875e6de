//! Command-line front end for the `earring` binary.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::limits::{auto_depth, phi, project};
use crate::loops::{compile, sup_distance, CombLoop, DurationScheme, Move, PaddedWord};
use crate::oscillation::{oscillation, rational_string};
use crate::report::EvidenceReport;
use crate::witness::{
    convergence_report, limit_point_report, oscillation_bounds_report, product_class_report,
    square_grid, vanishing_report,
};
use crate::words::{Sign, Word};

#[derive(Debug, Parser)]
#[command(name = "earring", version, about = "Hawaiian earring word, loop and oscillation toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportName {
    Convergence,
    Vanishing,
    OscBounds,
    Product,
    LimitPoint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free reduction of a word literal (read from stdin when omitted).
    Reduce {
        #[arg(allow_hyphen_values = true, trailing_var_arg = true)]
        word: Vec<String>,
    },
    /// Image of a word in the free group on the first LEVEL generators.
    Project {
        #[arg(long)]
        level: u32,
        #[arg(allow_hyphen_values = true, trailing_var_arg = true)]
        word: Vec<String>,
    },
    /// Inverse-limit levels 1..=depth of a word.
    Phi {
        /// Truncation depth; defaults to the largest generator in the word.
        #[arg(long)]
        depth: Option<u32>,
        #[arg(allow_hyphen_values = true, trailing_var_arg = true)]
        word: Vec<String>,
    },
    /// Oscillation number O_gen of a loop literal, with its witness set.
    Osc {
        #[arg(long)]
        gen: u32,
        #[arg(allow_hyphen_values = true, trailing_var_arg = true)]
        tokens: Vec<String>,
    },
    /// Uniform distance between two loop literals (each one quoted argument).
    Dist {
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Uniformly parameterized loop for a loop literal.
    Compile {
        #[arg(allow_hyphen_values = true, trailing_var_arg = true)]
        tokens: Vec<String>,
    },
    /// Evidence reports over parameter grids.
    Report {
        #[arg(value_enum)]
        name: ReportName,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
        /// N for the convergence report.
        #[arg(long = "n", default_value_t = 3)]
        big_n: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated thresholds for the limit-point report.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.2, 0.1, 0.05])]
        eps: Vec<f64>,
    },
}

/// Text to emit and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { output, status: 0 }
    }
}

/// Parses a word literal.
pub fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

pub fn parse_loop(text: &str) -> Result<CombLoop> {
    compile(&text.parse::<PaddedWord>()?, &DurationScheme::Uniform)
}

fn literal(args: &[String]) -> Result<String> {
    if !args.is_empty() {
        return Ok(args.join(" "));
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Domain(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: &serde_json::Value) -> String {
    line(serde_json::to_string(v).expect("json value"))
}

fn render(report: &EvidenceReport, format: Format) -> Outcome {
    let output = match format {
        Format::Table => report.to_table(),
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    Outcome {
        output,
        status: if report.passed() { 0 } else { 1 },
    }
}

fn move_json(m: &Move) -> serde_json::Value {
    match m {
        Move::Dwell { duration } => json!({"kind": "dwell", "duration": rational_string(duration)}),
        Move::Traverse { gen, dir, duration } => json!({
            "kind": "traverse",
            "gen": gen,
            "dir": if *dir == Sign::Plus { 1 } else { -1 },
            "duration": rational_string(duration),
        }),
    }
}

/// Runs a parsed command. Errors map to exit status 2 in the binary.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Reduce { word } => {
            let w = parse_word(&literal(word)?)?.reduce();
            Ok(Outcome::ok(match fmt {
                Format::Json => json_line(&json!(w.to_string())),
                _ => line(w),
            }))
        }
        Command::Project { level, word } => {
            let w = project(&parse_word(&literal(word)?)?, *level);
            Ok(Outcome::ok(match fmt {
                Format::Json => json_line(&json!(w.to_string())),
                _ => line(w),
            }))
        }
        Command::Phi { depth, word } => {
            let w = parse_word(&literal(word)?)?;
            let seq = phi(&w, depth.unwrap_or_else(|| auto_depth([&w])))?;
            Ok(Outcome::ok(match fmt {
                Format::Json => line(serde_json::to_string(&seq).expect("json")),
                Format::Csv => {
                    let mut out = String::from("level,word\n");
                    for (i, lvl) in seq.levels().iter().enumerate() {
                        out.push_str(&format!("{},{}\n", i + 1, lvl));
                    }
                    out
                }
                Format::Table => seq
                    .levels()
                    .iter()
                    .enumerate()
                    .map(|(i, lvl)| format!("{}: {}\n", i + 1, lvl))
                    .collect(),
            }))
        }
        Command::Osc { gen, tokens } => {
            if *gen == 0 {
                return Err(Error::Parameter("--gen must be at least 1".to_string()));
            }
            let f = parse_loop(&literal(tokens)?)?;
            let o = oscillation(&f, *gen);
            Ok(Outcome::ok(match fmt {
                Format::Json => line(serde_json::to_string(&o.witness).expect("json")),
                _ => line(o.m),
            }))
        }
        Command::Dist { eps, a, b } => {
            if !(*eps > 0.0 && eps.is_finite()) {
                return Err(Error::Parameter("--eps must be positive".to_string()));
            }
            let d = sup_distance(&parse_loop(a)?, &parse_loop(b)?, *eps);
            Ok(Outcome::ok(match fmt {
                Format::Json => line(format!("{{\"distance\":{d:.6},\"eps\":{eps:e}}}")),
                _ => line(format!("{d:.6}")),
            }))
        }
        Command::Compile { tokens } => {
            let f = parse_loop(&literal(tokens)?)?;
            Ok(Outcome::ok(match fmt {
                Format::Json => json_line(&serde_json::Value::Array(
                    f.moves().iter().map(move_json).collect(),
                )),
                _ => f
                    .moves()
                    .iter()
                    .zip(f.boundaries())
                    .map(|(m, start)| {
                        let what = match m.letter() {
                            Some(l) => format!("traverse {l}"),
                            None => "dwell".to_string(),
                        };
                        format!("{} +{} {}\n", rational_string(start), rational_string(m.duration()), what)
                    })
                    .collect(),
            }))
        }
        Command::Report {
            name,
            nmax,
            kmax,
            big_n,
            trials,
            seed,
            eps,
        } => {
            let grid = square_grid(2, *nmax, *kmax);
            let report = match name {
                ReportName::Convergence => {
                    let ks: Vec<u32> = (2..=*kmax).collect();
                    convergence_report(*big_n, &ks)?
                }
                ReportName::Vanishing => vanishing_report(&grid)?,
                ReportName::OscBounds => oscillation_bounds_report(&grid, *trials, *seed)?,
                ReportName::Product => product_class_report(&grid)?,
                ReportName::LimitPoint => limit_point_report(eps)?,
            };
            Ok(render(&report, fmt))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("earring").chain(args.iter().copied()))
            .expect("arguments parse");
        execute(&cli)
    }

    #[test]
    fn parse_word_examples() {
        assert_eq!(parse_word("1 5 -1 -5").unwrap().to_signed(), vec![1, 5, -1, -5]);
        assert!(parse_word("e").unwrap().is_empty());
        assert!(matches!(parse_word("1 0 2"), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn reduce_prints_identity() {
        assert_eq!(run(&["reduce", "1 -1"]).unwrap(), Outcome::ok("e\n".into()));
        assert_eq!(run(&["reduce", "1", "2", "-2"]).unwrap().output, "1\n");
    }

    #[test]
    fn osc_counts() {
        let out = run(&["osc", "--gen", "1", "1 3 -1 -3 1 3 -1 -3"]).unwrap();
        assert_eq!(out, Outcome::ok("4\n".into()));
        let out = run(&["--format", "json", "osc", "--gen", "1", "1"]).unwrap();
        assert_eq!(out.output, "{\"gen\":1,\"m\":1,\"times\":[\"0/1\",\"1/2\",\"1/1\"]}\n");
    }

    #[test]
    fn project_and_phi() {
        assert_eq!(run(&["project", "--level", "2", "2 3"]).unwrap().output, "2\n");
        let out = run(&["--format", "json", "phi", "1 3"]).unwrap();
        assert_eq!(out.output, "[\"1\",\"1\",\"1 3\"]\n");
        let out = run(&["phi", "--depth", "2", "1 3"]).unwrap();
        assert_eq!(out.output, "1: 1\n2: 1\n");
    }

    #[test]
    fn dist_and_compile() {
        let out = run(&["dist", "--eps", "1e-4", "5", "."]).unwrap();
        assert_eq!(out.output, "0.400000\n");
        let out = run(&["compile", "1 . -1"]).unwrap();
        assert_eq!(
            out.output,
            "0/1 +1/3 traverse 1\n1/3 +1/3 dwell\n2/3 +1/3 traverse -1\n"
        );
    }

    #[test]
    fn errors_surface() {
        assert!(run(&["reduce", "1 0"]).is_err());
        assert!(run(&["compile", "e"]).is_err());
        assert!(run(&["osc", "--gen", "0", "1"]).is_err());
        assert!(Cli::try_parse_from(["earring", "report", "nonsense"]).is_err());
    }

    #[test]
    fn failing_report_exits_1() {
        let cell = crate::report::Cell::new(None, None);
        let report = EvidenceReport::new("always fails", vec![], vec![cell], 0);
        assert_eq!(render(&report, Format::Json).status, 1);
        assert_eq!(render(&report, Format::Table).status, 1);
    }

    #[test]
    fn product_report_passes() {
        let out = run(&["report", "product", "--nmax", "4", "--kmax", "4", "--format", "csv"]).unwrap();
        assert_eq!(out.status, 0);
        assert_eq!(out.output.lines().count(), 1 + 9);
    }
}
