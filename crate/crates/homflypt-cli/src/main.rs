//! Command-line front end: polynomial evaluation, bound reports, castle
//! inspection, sharpness decomposition, script verification, and the
//! acceptance self-test. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success (or verified / decomposable), 1 failed check
//! (mismatched engines, unverified script, bound not realized), 2 input
//! errors.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use homflypt::bounds::{bounds_report, positive_equalities_check};
use homflypt::castle::{
    braces, build_castle, candidate_base_points, find_appropriate_point, towers,
};
use homflypt::decompose::{decompose_positive, replay, MoveScript, SharpnessCertificate};
use homflypt::diagram::{LinkDiagram, Point};
use homflypt::resolve::{homfly_coherent, homfly_oracle, PolyCache};
use homflypt::seifert::SeifertStructure;
use homflypt::{parse_braid, parse_pd, serialize_pd};

#[derive(Parser)]
#[command(
    name = "homflypt",
    about = "HOMFLY-PT polynomials, degree bounds, and constructive sharpness certificates for link diagrams",
    after_help = "Inputs are braid words (\"3: 1 2 1 2 1 2\") or PD-code JSON, inline or as a file path.\n\
                  The HOMFLYPT_CACHE_CAP environment variable bounds the polynomial memo tables."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Braid,
    Pd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Coherent,
    Oracle,
    Both,
}

#[derive(Args)]
struct InputArgs {
    /// Braid word or PD-code JSON; a path is read, anything else is parsed
    /// inline.
    input: String,
    /// Input format; inferred from the extension or leading '{' when
    /// omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

fn emit(args: &InputArgs, json: &str) -> Result<(), String> {
    match &args.output {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomial of a diagram.
    Homfly {
        #[command(flatten)]
        input: InputArgs,
        /// Which engine to run; `both` cross-checks them.
        #[arg(long, value_enum, default_value = "coherent")]
        engine: EngineArg,
    },
    /// Print the degree-bound report.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        /// Also check the equalities that positive diagrams always satisfy.
        #[arg(long)]
        assert_positive: bool,
    },
    /// Describe the castle grown from a base point.
    Castle {
        #[command(flatten)]
        input: InputArgs,
        /// Arc id of the base point; defaults to the first appropriate one.
        #[arg(long)]
        point: Option<usize>,
        /// Also print a DOT rendering of the floor graph to stderr.
        #[arg(long)]
        dot: bool,
    },
    /// Decide right-bound sharpness constructively for a positive diagram.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Replay a move script against a diagram.
    Verify {
        /// Path to the script JSON.
        script: String,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Seed for the randomized corpora.
        #[arg(long, default_value = "24141")]
        seed: u64,
    },
}

fn read_input(args: &InputArgs) -> Result<LinkDiagram, String> {
    let path = Path::new(&args.input);
    let (text, from_file) = if path.is_file() {
        (
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", args.input))?,
            true,
        )
    } else {
        (args.input.clone(), false)
    };
    let format = args.format.unwrap_or_else(|| {
        if from_file {
            match path.extension().and_then(|e| e.to_str()) {
                Some("json") | Some("pd") => Format::Pd,
                _ => infer_format(&text),
            }
        } else {
            infer_format(&text)
        }
    });
    match format {
        Format::Braid => parse_braid(text.trim()).map_err(|e| e.to_string()),
        Format::Pd => parse_pd(&text).map_err(|e| e.to_string()),
    }
}

fn infer_format(text: &str) -> Format {
    if text.trim_start().starts_with('{') {
        Format::Pd
    } else {
        Format::Braid
    }
}

fn run() -> Result<ExitCode, String> {
    match Cli::parse().command {
        Command::Homfly { input, engine } => {
            let d = read_input(&input)?;
            let cache = PolyCache::new();
            let (p, agree) = match engine {
                EngineArg::Coherent => (homfly_coherent(&d, &cache), true),
                EngineArg::Oracle => (homfly_oracle(&d, &cache), true),
                EngineArg::Both => {
                    let a = homfly_coherent(&d, &cache);
                    let b = homfly_oracle(&d, &PolyCache::new());
                    let agree = a == b;
                    (a, agree)
                }
            };
            emit(&input, &p.to_json().to_string())?;
            if !agree {
                eprintln!("engines disagree");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { input, assert_positive } => {
            let d = read_input(&input)?;
            let cache = PolyCache::new();
            let report = bounds_report(&d, &cache);
            let mut json = serde_json::to_value(&report).map_err(|e| e.to_string())?;
            if assert_positive {
                let eq = positive_equalities_check(&d, &cache).map_err(|e| e.to_string())?;
                json["positive_equalities"] =
                    serde_json::to_value(&eq).map_err(|e| e.to_string())?;
            }
            emit(&input, &json.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Castle { input, point, dot } => {
            let d = read_input(&input)?;
            let s = SeifertStructure::new(&d);
            let x = match point {
                Some(arc) if arc < d.arc_count() => Point::Arc(arc),
                Some(arc) => return Err(format!("no arc {arc}")),
                None => find_appropriate_point(&d, &s).map_err(|e| e.to_string())?,
            };
            let castle = build_castle(&d, &s, x).map_err(|e| e.to_string())?;
            let brace_list = braces(&d, &s, &castle);
            let tower_list = towers(&s, &castle);
            let trapped = brace_list.iter().any(|b| b.is_trap);
            let json = serde_json::json!({
                "base": castle.base,
                "candidates": candidate_base_points(&d, &s).map_err(|e| e.to_string())?.len(),
                "floors": castle.floors,
                "ladders": castle.ladders,
                "braces": brace_list,
                "towers": tower_list,
                "has_traps": trapped,
                "appropriate": !trapped,
            });
            emit(&input, &json.to_string())?;
            if dot {
                eprintln!("{}", floor_graph_dot(&castle));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input } => {
            let d = read_input(&input)?;
            let cache = PolyCache::new();
            let cert = decompose_positive(&d, &cache).map_err(|e| e.to_string())?;
            emit(&input, &serde_json::to_value(&cert).map_err(|e| e.to_string())?.to_string())?;
            Ok(match cert {
                SharpnessCertificate::Decomposable { .. } => ExitCode::SUCCESS,
                SharpnessCertificate::NotSharp { .. } => ExitCode::from(1),
            })
        }
        Command::Verify { script, input } => {
            let text = std::fs::read_to_string(&script)
                .map_err(|e| format!("cannot read {script}: {e}"))?;
            let script: MoveScript =
                serde_json::from_str(&text).map_err(|e| format!("bad script: {e}"))?;
            let d = read_input(&input)?;
            let rebuilt = replay(&script).map_err(|e| e.to_string())?;
            let ok = homflypt::diagrams_isomorphic(&rebuilt, &d);
            let json = serde_json::json!({
                "verified": ok,
                "replayed": serde_json::from_str::<serde_json::Value>(&serialize_pd(&rebuilt))
                    .expect("pd is json"),
            });
            emit(&input, &json.to_string())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Selftest { seed } => {
            let results = homflypt::selftest::run_all(seed).map_err(|e| e.to_string())?;
            let all = results.iter().all(|r| r.passed);
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn floor_graph_dot(castle: &homflypt::castle::Castle) -> String {
    let mut out = String::from("graph floors {\n");
    for (i, f) in castle.floors.iter().enumerate() {
        out.push_str(&format!(
            "  f{i} [label=\"floor {i}\\ncircle {} level {}\"];\n",
            f.circle, f.level
        ));
    }
    for l in &castle.ladders {
        out.push_str(&format!(
            "  f{} -- f{} [label=\"x{}\"];\n",
            l.floors.0, l.floors.1, l.crossing
        ));
    }
    out.push('}');
    out
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
