//! Command-line front end for the local Arthur packet calculus.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use arthurkit_core::corank::{corank_report, enumerate_arthur_gp_levels, standard_sc};
use arthurkit_core::decide::Decider;
use arthurkit_core::ems::ExtendedMultiSegment;
use arthurkit_core::error::Error;
use arthurkit_core::half::HalfInt;
use arthurkit_core::ldata::LData;
use arthurkit_core::oracle::{Oracle, WallConfig};
use arthurkit_core::packet::{
    absolutely_maximal, enumerate_packet, intersection_set, pi_of, pi_of_variant2,
    psi_set_of_supercuspidal, DEFAULT_BUDGET,
};
use arthurkit_core::params::{ArthurParameter, SupercuspidalData};
use arthurkit_core::regions::abar_regions;
use arthurkit_core::symbol::{parse_symbol, to_brace_string, to_grid_string};

#[derive(Parser)]
#[command(
    name = "arthurkit",
    version,
    about = "Local Arthur packets of Sp(2n) and SO(2n+1): packets, intersections, Arthur-type decisions, corank tables and unitary-dual regions"
)]
struct Cli {
    /// Pretty text output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Emit JSON (the default; kept for symmetry with --pretty).
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the data-parallel sections; 1 forces sequential.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Node budget for the operator-graph searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Wall-table configuration for the reducibility oracle.
    #[arg(long, global = true)]
    oracle: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an input document (multi-segment, parameter,
    /// Langlands data or supercuspidal data).
    Validate { file: PathBuf },
    /// Langlands data of the representation of an extended multi-segment.
    PiOf {
        file: PathBuf,
        /// Use the reduction peeling every minimal-B row at once.
        #[arg(long)]
        variant2: bool,
        /// Print the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// The Aubert–Zelevinsky dual multi-segment.
    Dual { file: PathBuf },
    /// Members of the packet of a good-parity parameter.
    Packet { file: PathBuf },
    /// All multi-segments and parameters attached to one representation.
    Intersect { file: PathBuf },
    /// Decide whether a Langlands datum is of Arthur type.
    Arthur {
        file: PathBuf,
        /// Use the reduction along the minimal first exponent.
        #[arg(long)]
        v2: bool,
    },
    /// Good-parity Arthur representations over a cuspidal line by corank.
    Classify {
        /// Supercuspidal base document; omit to use the standard base.
        #[arg(long)]
        sc: Option<PathBuf>,
        /// Reducibility point of the standard base (when --sc is absent).
        #[arg(long)]
        alpha: Option<String>,
        /// Line label inside the base document.
        #[arg(long, default_value = "rho")]
        rho: String,
        #[arg(long)]
        corank: i64,
    },
    /// Chamber report of the candidate-unitary-dual regions.
    Abar {
        #[arg(long)]
        sc: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value = "rho")]
        rho: String,
        #[arg(long)]
        corank: i64,
        /// Also dump two-dimensional chambers for plotting.
        #[arg(long)]
        dump_2d: bool,
    },
    /// Markdown regression tables against the low-corank classification.
    Report {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 3)]
        max_corank: i64,
    },
    /// All parameters whose packet contains the given supercuspidal.
    PsiSets { file: PathBuf },
}

fn read_to_string(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { pos: 0, msg: format!("{}: {e}", path.display()) })
}

fn load_ems(path: &Path) -> Result<ExtendedMultiSegment, Error> {
    let text = read_to_string(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') && trimmed.contains("\"group\"") {
        serde_json::from_str(&text).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
    } else {
        parse_symbol(&text)
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
}

fn load_oracle(path: &Option<PathBuf>) -> Result<Oracle, Error> {
    match path {
        None => Ok(Oracle::default()),
        Some(p) => {
            let resolved = resolve_fixture(p);
            let cfg: WallConfig = load_json(&resolved)?;
            Ok(Oracle::with_config(cfg))
        }
    }
}

/// Paths that do not exist are retried under ARTHURKIT_FIXTURES.
fn resolve_fixture(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    if let Ok(root) = std::env::var("ARTHURKIT_FIXTURES") {
        let candidate = Path::new(&root).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn load_base(
    sc: &Option<PathBuf>,
    alpha: &Option<String>,
    rho: &str,
) -> Result<(SupercuspidalData, arthurkit_core::label::CuspLabel), Error> {
    match (sc, alpha) {
        (Some(path), _) => {
            let sc: SupercuspidalData = load_json(&resolve_fixture(path))?;
            let rho = sc
                .rep
                .phi
                .iter()
                .map(|(r, _)| r.clone())
                .find(|r| r.name == rho)
                .unwrap_or_else(|| arthurkit_core::label::CuspLabel::orth(rho));
            Ok((sc, rho))
        }
        (None, Some(alpha)) => {
            let alpha: HalfInt = alpha.parse().map_err(|msg| Error::Parse { pos: 0, msg })?;
            standard_sc(alpha)
        }
        (None, None) => Err(Error::invalid("one of --sc or --alpha is required")),
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    if let Some(threads) = cli.threads {
        if threads <= 1 {
            arthurkit_core::par::set_sequential(true);
        } else {
            configure_pool(threads);
        }
    }
    let budget = cli.budget;
    match &cli.command {
        Command::Validate { file } => {
            let text = read_to_string(&resolve_fixture(file))?;
            let kinds: Vec<(&str, bool)> = vec![
                ("ems", serde_json::from_str::<ExtendedMultiSegment>(&text).is_ok()),
                ("psi", serde_json::from_str::<ArthurParameter>(&text).is_ok()),
                ("ldata", serde_json::from_str::<LData>(&text).is_ok()),
                ("sc", serde_json::from_str::<SupercuspidalData>(&text).is_ok()),
                ("symbol", parse_symbol(&text).is_ok()),
            ];
            let matched: Vec<&str> =
                kinds.iter().filter(|(_, ok)| *ok).map(|(k, _)| *k).collect();
            if matched.is_empty() {
                return match parse_symbol(&text) {
                    Err(e @ Error::Parse { .. }) => Err(e),
                    _ => Err(Error::Parse {
                        pos: 0,
                        msg: "input matches no known document type".into(),
                    }),
                };
            }
            Ok(json!({ "valid": true, "kinds": matched }).to_string())
        }
        Command::PiOf { file, variant2, trace } => {
            let ems = load_ems(&resolve_fixture(file))?;
            if *trace {
                let variant = if *variant2 {
                    arthurkit_core::packet::PiOfVariant::MinB
                } else {
                    arthurkit_core::packet::PiOfVariant::MaxTriangle
                };
                let (ld, steps) = arthurkit_core::packet::pi_of_traced(&ems, variant)?;
                if cli.pretty {
                    let mut out = format!("{ld}\n");
                    for (i, s) in steps.iter().enumerate() {
                        out.push_str(&format!(
                            "step {}:\n{}",
                            i + 1,
                            to_grid_string(&s.maximal, false)
                        ));
                    }
                    Ok(out)
                } else {
                    Ok(serde_json::to_string_pretty(&json!({"ldata": ld, "steps": steps}))
                        .unwrap())
                }
            } else {
                let ld = if *variant2 { pi_of_variant2(&ems)? } else { pi_of(&ems)? };
                if cli.pretty {
                    Ok(format!("{ld}"))
                } else {
                    Ok(serde_json::to_string_pretty(&ld).unwrap())
                }
            }
        }
        Command::Dual { file } => {
            let ems = load_ems(&resolve_fixture(file))?;
            let d = arthurkit_core::ops::dual(&arthurkit_core::ops::canonical_form(&ems)?)?;
            if cli.pretty {
                Ok(format!("{}\n{}", to_brace_string(&d), to_grid_string(&d, false)))
            } else {
                Ok(serde_json::to_string_pretty(&d).unwrap())
            }
        }
        Command::Packet { file } => {
            let psi: ArthurParameter = load_json(&resolve_fixture(file))?;
            let entries = enumerate_packet(&psi)?;
            if cli.pretty {
                let mut out = format!("packet of {psi}: {} members\n", entries.len());
                for e in &entries {
                    out.push_str(&format!("  {}  =  {}\n", to_brace_string(&e.ems), e.ldata));
                }
                Ok(out)
            } else {
                Ok(serde_json::to_string_pretty(&json!({"psi": psi, "entries": entries}))
                    .unwrap())
            }
        }
        Command::Intersect { file } => {
            let path = resolve_fixture(file);
            let text = read_to_string(&path)?;
            let from_ems = serde_json::from_str::<ExtendedMultiSegment>(&text)
                .ok()
                .or_else(|| parse_symbol(&text).ok());
            let (ldata, members) = match from_ems {
                Some(ems) => (pi_of(&ems)?, intersection_set(&ems, budget)?),
                None => {
                    let ld: LData = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
                    let mut decider = Decider::with_budget(budget);
                    let verdict = decider.is_arthur_type(&ld)?;
                    if !verdict.arthur {
                        return Err(Error::pre("the representation is not of Arthur type"));
                    }
                    (ld, verdict.witnesses)
                }
            };
            let psi_max = absolutely_maximal(&members[0], budget)?.psi()?;
            let mut psis: Vec<ArthurParameter> = Vec::new();
            for m in &members {
                psis.push(m.psi()?);
            }
            psis.sort();
            psis.dedup();
            if cli.pretty {
                let mut out =
                    format!("{ldata}\n{} members, {} parameters\n", members.len(), psis.len());
                for m in &members {
                    out.push_str(&format!("  {}\n", to_brace_string(m)));
                }
                Ok(out)
            } else {
                Ok(serde_json::to_string_pretty(&json!({
                    "ldata": ldata,
                    "emss": members,
                    "psi_list": psis,
                    "psi_max": psi_max,
                }))
                .unwrap())
            }
        }
        Command::Arthur { file, v2 } => {
            let ld: LData = load_json(&resolve_fixture(file))?;
            let mut decider = Decider::with_budget(budget);
            let verdict = if *v2 {
                decider.is_arthur_type_v2(&ld)?
            } else {
                decider.is_arthur_type(&ld)?
            };
            let reason = match arthurkit_core::decide::prefilter_not_arthur(&ld)? {
                arthurkit_core::decide::Prefilter::DefinitelyNot(r) => Some(r),
                arthurkit_core::decide::Prefilter::Unknown => None,
            };
            if cli.pretty {
                Ok(format!(
                    "{}: {}",
                    ld,
                    if verdict.arthur { "of Arthur type" } else { "not of Arthur type" }
                ))
            } else {
                Ok(serde_json::to_string_pretty(&json!({
                    "arthur": verdict.arthur,
                    "psi_list": verdict.psi_list,
                    "psi_max": verdict.psi_max,
                    "witness_count": verdict.witnesses.len(),
                    "witnesses": verdict.witnesses,
                    "prefilter_reason": reason,
                }))
                .unwrap())
            }
        }
        Command::Classify { sc, alpha, rho, corank } => {
            let (sc, rho) = load_base(sc, alpha, rho)?;
            let mut decider = Decider::with_budget(budget);
            let levels = enumerate_arthur_gp_levels(&sc, &rho, *corank, &mut decider)?;
            if cli.pretty {
                let mut out = String::new();
                for (s, level) in levels.iter().enumerate() {
                    out.push_str(&format!("corank {s}: {} members\n", level.len()));
                    for pi in level {
                        out.push_str(&format!("  {pi}\n"));
                    }
                }
                Ok(out)
            } else {
                Ok(serde_json::to_string_pretty(&json!({ "levels": levels })).unwrap())
            }
        }
        Command::Abar { sc, alpha, rho, corank, dump_2d } => {
            let (sc, rho) = load_base(sc, alpha, rho)?;
            let oracle = load_oracle(&cli.oracle)?;
            let mut decider = Decider::with_budget(budget);
            let report = abar_regions(&sc, &rho, *corank, &oracle, &mut decider)?;
            if cli.pretty {
                Ok(report.to_markdown())
            } else {
                let mut doc = serde_json::to_value(&report).unwrap();
                if *dump_2d {
                    let chambers2d: Vec<_> = report
                        .triples
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| t.tuple.len() == 2)
                        .map(|(i, t)| {
                            json!({
                                "tuple": t.tuple,
                                "signs": t.chamber.signs,
                                "witness": t.chamber.witness,
                                "bounded": t.chamber.bounded,
                                "in_abar": report.in_abar[i],
                            })
                        })
                        .collect();
                    doc["chambers_2d"] = json!(chambers2d);
                }
                Ok(serde_json::to_string_pretty(&doc).unwrap())
            }
        }
        Command::Report { alpha, max_corank } => {
            let alpha: HalfInt = alpha.parse().map_err(|msg| Error::Parse { pos: 0, msg })?;
            let mut decider = Decider::with_budget(budget);
            let report = corank_report(alpha, *max_corank, &mut decider)?;
            if cli.pretty {
                Ok(report.to_markdown())
            } else {
                Ok(serde_json::to_string_pretty(&report).unwrap())
            }
        }
        Command::PsiSets { file } => {
            let sc: SupercuspidalData = load_json(&resolve_fixture(file))?;
            let psis = psi_set_of_supercuspidal(&sc)?;
            if cli.pretty {
                let mut out = format!("{} parameters\n", psis.len());
                for p in &psis {
                    out.push_str(&format!("  {p}\n"));
                }
                Ok(out)
            } else {
                Ok(serde_json::to_string_pretty(&psis).unwrap())
            }
        }
    }
}

fn configure_pool(_threads: usize) {
    // rayon is an implementation detail of the core crate; the pool size is
    // communicated through the environment it reads on first use
    std::env::set_var("RAYON_NUM_THREADS", _threads.to_string());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match &e {
                Error::Parse { .. } => 64,
                Error::BudgetExceeded { .. } => 69,
                _ => 2,
            };
            eprintln!("error: {e}");
            ExitCode::from(code as u8)
        }
    }
}
