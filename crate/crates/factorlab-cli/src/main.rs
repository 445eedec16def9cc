//! Command-line front end: toughness-style cut conditions, degree-set and
//! parity factor solvers, and corpus audits. Exit codes: 0 holds / factor
//! found, 1 condition fails / factor absent, 2 usage or parse error, 3 audit
//! disagreement.

use clap::{Args, Parser, Subcommand};
use factorlab::audit::{
    critical_failure_certificate, failing_h_certificate, run_corpus, spec_to_pair, CorpusOptions,
    CorpusSource, FPolicy,
};
use factorlab::certify::{Certificate, CutMeasure};
use factorlab::graph::{parse_edge_list, parse_graph6, Graph};
use factorlab::parity::{parity_feasible_oracle, solve_parity_factor, ParityIntervalSpec, ParityVerdict};
use factorlab::set_factor::{is_h_critical, solve_h_factor, HAssignment};
use factorlab::toughness::{classify, condition_check};
use serde_json::json;
use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "factorlab", version, about = "Graph factor and toughness toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file: a graph6 record, or an edge list ("n m" header then one
    /// "u v" line per edge). "-" reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check omega(G - S) <= f(S) + slack over all relevant cut sets S.
    CheckTough {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex weights: "const:K" or "file:PATH" (one integer per vertex).
        #[arg(long, default_value = "const:1")]
        f: String,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(i64).range(0..=1))]
        slack: i64,
    },
    /// Solve for a factor whose degrees obey a two-sided assignment.
    HFactor {
        #[command(flatten)]
        input: InputArgs,
        /// Per-vertex side bits, '1' = odd side {1,3,...}, '0' = even side.
        #[arg(long)]
        assign: String,
        /// Odd-side caps: "const:K" or "file:PATH", odd positive values.
        #[arg(long, default_value = "const:1")]
        f: String,
    },
    /// Check pendant-criticality of an assignment at every vertex.
    HCritical {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        assign: String,
        #[arg(long, default_value = "const:1")]
        f: String,
    },
    /// Solve for a factor with per-vertex degree intervals of fixed parity.
    ParityFactor {
        #[command(flatten)]
        input: InputArgs,
        /// Per-vertex bounds file: one "l u" line per vertex ("-" for an
        /// explicitly empty degree set).
        #[arg(long, value_name = "FILE")]
        spec: String,
        /// Cross-check the solver against the exhaustive eta scan.
        #[arg(long)]
        oracle: bool,
    },
    /// Run selected audits over a generated or file-based corpus.
    Audit {
        /// Generate every labeled connected graph on N vertices.
        #[arg(long, value_name = "N", conflicts_with = "corpus")]
        gen: Option<usize>,
        /// graph6 records, one per line.
        #[arg(long, value_name = "FILE", required_unless_present = "gen")]
        corpus: Option<String>,
        /// Comma-separated tags from T1,T2,T3,T4,T4i,T4ii,T5,T5i,T5ii,L1.
        #[arg(long, default_value = "T1")]
        checks: String,
        /// Seed for random odd caps; omitted means f = 1 everywhere.
        #[arg(long, value_name = "S")]
        f_seed: Option<u64>,
        /// Report sink, one JSON object per line. "-" writes stdout.
        #[arg(long, value_name = "FILE", default_value = "-")]
        out: String,
        /// Audit graphs concurrently (report order is preserved).
        #[arg(long)]
        parallel: bool,
    },
}

fn read_source(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

/// Edge lists always start with a whitespace-separated header; a graph6
/// record never contains whitespace.
fn load_graph(args: &InputArgs) -> Result<Graph, String> {
    let text = read_source(&args.input).map_err(|e| format!("{}: {e}", args.input))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| format!("{}: empty input", args.input))?;
    let parsed = if first.split_whitespace().nth(1).is_some() {
        parse_edge_list(&text)
    } else {
        parse_graph6(first)
    };
    parsed.map_err(|e| format!("{}: {e}", args.input))
}

/// "const:K" or "file:PATH" with one integer per vertex.
fn load_weights(arg: &str, n: usize) -> Result<Vec<i64>, String> {
    if let Some(k) = arg.strip_prefix("const:") {
        let k: i64 = k.parse().map_err(|_| format!("bad weight constant {k:?}"))?;
        return Ok(vec![k; n]);
    }
    if let Some(path) = arg.strip_prefix("file:") {
        let text = read_source(path).map_err(|e| format!("{path}: {e}"))?;
        let vals: Result<Vec<i64>, _> = text.split_whitespace().map(str::parse).collect();
        let vals = vals.map_err(|e| format!("{path}: {e}"))?;
        if vals.len() != n {
            return Err(format!("{path}: {} weights for {n} vertices", vals.len()));
        }
        return Ok(vals);
    }
    Err(format!("--f must be const:K or file:PATH, got {arg:?}"))
}

fn odd_caps(arg: &str, n: usize) -> Result<Vec<u32>, String> {
    load_weights(arg, n)?
        .into_iter()
        .map(|v| {
            if v > 0 && v % 2 == 1 {
                Ok(v as u32)
            } else {
                Err(format!("odd cap must be positive and odd, got {v}"))
            }
        })
        .collect()
}

/// One "l u" line per vertex; a bare "-" denotes an empty degree set.
fn load_spec(path: &str, n: usize) -> Result<ParityIntervalSpec, String> {
    let text = read_source(path).map_err(|e| format!("{path}: {e}"))?;
    let mut bounds = Vec::new();
    for (i, line) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
        if line == "-" {
            bounds.push(None);
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u32, String> {
            tok.and_then(|t| t.parse().ok())
                .ok_or_else(|| format!("{path}:{}: expected \"l u\"", i + 1))
        };
        let (l, u) = (parse(it.next())?, parse(it.next())?);
        bounds.push(Some((l, u)));
    }
    if bounds.len() != n {
        return Err(format!("{path}: {} bounds for {n} vertices", bounds.len()));
    }
    ParityIntervalSpec::new(bounds).map_err(|e| e.to_string())
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}

const USAGE: u8 = 2;

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::CheckTough { input, f, slack } => {
            let g = load_graph(&input)?;
            let f = load_weights(&f, g.order())?;
            let verdict = condition_check(&g, &f, slack).map_err(|e| e.to_string())?;
            let certificate = verdict.witness.map(|set| Certificate::ViolatingSet {
                set,
                measure: CutMeasure::Omega,
                f: f.clone(),
                slack,
                observed: verdict.witness_omega.unwrap(),
            });
            let classification = classify(&g, &f).map_err(|e| e.to_string())?;
            emit(json!({
                "verdict": verdict,
                "classification": classification,
                "certificate": certificate,
            }));
            Ok(if verdict.holds { 0 } else { 1 })
        }
        Command::HFactor { input, assign, f } => {
            let g = load_graph(&input)?;
            let caps = odd_caps(&f, g.order())?;
            let h = HAssignment::from_bitstring(&assign, caps).map_err(|e| e.to_string())?;
            match solve_h_factor(&g, &h).map_err(|e| e.to_string())? {
                Some(factor) => {
                    emit(json!({ "factor": factor.edges }));
                    Ok(0)
                }
                None => {
                    emit(json!({
                        "factor": null,
                        "certificate": failing_h_certificate(&g, &h),
                    }));
                    Ok(1)
                }
            }
        }
        Command::HCritical { input, assign, f } => {
            let g = load_graph(&input)?;
            let caps = odd_caps(&f, g.order())?;
            let h = HAssignment::from_bitstring(&assign, caps).map_err(|e| e.to_string())?;
            let report = is_h_critical(&g, &h).map_err(|e| e.to_string())?;
            let certificate = report
                .failures
                .first()
                .map(|&x| critical_failure_certificate(&g, &h, x));
            emit(json!({ "report": report, "certificate": certificate }));
            Ok(if report.critical { 0 } else { 1 })
        }
        Command::ParityFactor { input, spec, oracle } => {
            let g = load_graph(&input)?;
            let spec = load_spec(&spec, g.order())?;
            let factor = solve_parity_factor(&g, &spec).map_err(|e| e.to_string())?;
            let mut out = json!({ "factor": factor.as_ref().map(|f| &f.edges) });
            let mut code = if factor.is_some() { 0 } else { 1 };
            if oracle {
                let verdict =
                    parity_feasible_oracle(&g, &spec_to_pair(&spec)).map_err(|e| e.to_string())?;
                let feasible = matches!(verdict, ParityVerdict::Feasible);
                out["oracle"] = serde_json::to_value(&verdict).unwrap();
                if feasible != factor.is_some() {
                    out["disagreement"] = json!(true);
                    code = 3;
                }
            }
            emit(out);
            Ok(code)
        }
        Command::Audit { gen, corpus, checks, f_seed, out, parallel } => {
            let checks = factorlab::audit::parse_checks(&checks).map_err(|e| e.to_string())?;
            let source = match (gen, corpus) {
                (Some(n), _) => CorpusSource::Generate(n),
                (None, Some(path)) => {
                    let text = read_source(&path).map_err(|e| format!("{path}: {e}"))?;
                    CorpusSource::Graph6Lines(text.lines().map(str::to_owned).collect())
                }
                (None, None) => unreachable!("clap enforces gen xor corpus"),
            };
            let opts = CorpusOptions {
                checks,
                f_policy: match f_seed {
                    Some(s) => FPolicy::RandomSeed(s),
                    None => FPolicy::Const(1),
                },
                parallel,
                t3_trials: 5,
            };
            let summary = if out == "-" {
                let stdout = std::io::stdout();
                let mut sink = stdout.lock();
                let s = run_corpus(&source, &opts, &mut sink).map_err(|e| e.to_string())?;
                sink.flush().ok();
                s
            } else {
                let mut sink = fs::File::create(&out).map_err(|e| format!("{out}: {e}"))?;
                run_corpus(&source, &opts, &mut sink).map_err(|e| e.to_string())?
            };
            emit(serde_json::to_value(&summary).unwrap());
            Ok(if summary.disagreements > 0 { 3 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
