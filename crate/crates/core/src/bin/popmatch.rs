use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use popmatch::instance::{validate_instance, Instance, Matching};
use popmatch::io::{
    parse_assignment, parse_instance, parse_matching, parse_witness, write_instance,
    write_matching, write_witness,
};
use popmatch::reduction::{
    build_reduction, construct_matching, construct_witness, parse_formula, to_dot, Formula,
};
use popmatch::satdecide::{
    assignment_from_matching, decide_desired_popular, decide_popular_exhaustive,
    one_in_three_solutions, sample_desired_popular, DecideOutcome,
};
use popmatch::stable::{deferred_acceptance, stable_vertex_set, SideChoice};
use popmatch::verify::{
    best_response, hk_verify, is_popular_exhaustive, max_delta_exhaustive,
    popular_edges_exhaustive, popular_matchings_exhaustive, popular_subgraph_components,
    ExhaustiveConfig,
};
use popmatch::witness::{check_witness, find_witness, DEFAULT_WITNESS_BUDGET};

#[derive(Parser)]
#[command(
    name = "popmatch",
    version,
    about = "Popular matchings and the 1-in-3 SAT gadget reduction"
)]
struct Cli {
    /// Worker threads for candidate search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exit with status 1 when the answer is negative.
    #[arg(long, global = true)]
    fail_on_no: bool,
    /// Include wall-clock time in the report (makes reports run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G, G_0 and H from a formula.
    Reduce {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        out_g: Option<PathBuf>,
        #[arg(long)]
        out_g0: Option<PathBuf>,
        #[arg(long)]
        out_h: Option<PathBuf>,
        /// Vertex roles and gadget options as JSON.
        #[arg(long)]
        layout: Option<PathBuf>,
        /// Graphviz rendering of H with one cluster per gadget.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Desired popular matching of H and its witness from a 1-in-3 assignment.
    Construct {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        out_matching: Option<PathBuf>,
        #[arg(long)]
        out_witness: Option<PathBuf>,
    },
    /// Decide whether a matching is popular. `all` runs every verifier that
    /// applies (enumeration only within the cap) and requires agreement.
    Verify {
        #[arg(long)]
        inst: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::BestResponse)]
        mode: Mode,
        /// Vertex cap for the exhaustive verifier.
        #[arg(long, default_value_t = ExhaustiveConfig::default().vertex_cap)]
        cap: usize,
    },
    /// Find a {-1, 0, 1} witness, or check a given one.
    Witness {
        #[arg(long)]
        inst: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        check: Option<PathBuf>,
        /// Write the found witness here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: u64,
    },
    /// Proposer-optimal stable matching of a bipartite instance.
    Stable {
        #[arg(long)]
        inst: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the gadget-restricted candidates of H for a desired popular matching.
    Decide {
        #[arg(long)]
        formula: PathBuf,
        /// Maximum number of candidates tested in order.
        #[arg(long)]
        budget: u128,
        /// Test this many uniformly sampled candidates instead.
        #[arg(long)]
        sample: Option<u64>,
    },
    /// All 1-in-3 satisfying assignments by brute force.
    Sat {
        #[arg(long)]
        formula: PathBuf,
    },
    /// Popular matchings, popular edges and components by enumeration.
    Oracle {
        #[arg(long)]
        inst: PathBuf,
        #[arg(long, default_value_t = ExhaustiveConfig::default().pairwise_cap)]
        cap: usize,
    },
    /// Check list symmetry, duplicates and side labels.
    Validate {
        #[arg(long)]
        inst: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Exhaustive,
    BestResponse,
    Hk,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

/// Command output: the report body and whether the answer was positive.
struct Outcome {
    results: Value,
    positive: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    let inst =
        parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let violations = validate_instance(&inst);
    if !violations.is_empty() {
        return Err(anyhow!(
            "{}: {}",
            path.display(),
            popmatch::Error::InvalidInstance(violations)
        ));
    }
    Ok(inst)
}

fn load_formula(path: &Path) -> Result<Formula> {
    parse_formula(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_matching(inst: &Instance, path: &Path) -> Result<Matching> {
    parse_matching(inst, &read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn pairs_json(inst: &Instance, m: &Matching) -> Value {
    json!(m.named_pairs(inst))
}

fn bits(a: &popmatch::reduction::Assignment) -> String {
    a.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Reduce {
            formula,
            out_g,
            out_g0,
            out_h,
            layout,
            emit_dot,
        } => {
            let f = load_formula(formula)?;
            let red = build_reduction(&f)?;
            for (path, inst) in [(out_g, &red.g), (out_g0, &red.g0), (out_h, &red.h)] {
                if let Some(p) = path {
                    write(p, &write_instance(inst))?;
                }
            }
            if let Some(p) = layout {
                write(p, &(serde_json::to_string_pretty(&red.layout)? + "\n"))?;
            }
            if let Some(p) = emit_dot {
                write(p, &to_dot(&red))?;
            }
            Ok(Outcome {
                results: json!({
                    "variables": f.variables.len(),
                    "clauses": f.clauses.len(),
                    "vertices_g": red.g.len(),
                    "vertices_g0": red.g0.len(),
                    "vertices_h": red.h.len(),
                    "edges_g": red.g.edges().len(),
                    "edges_h": red.h.edges().len(),
                }),
                positive: true,
            })
        }
        Command::Construct {
            formula,
            assignment,
            out_matching,
            out_witness,
        } => {
            let f = load_formula(formula)?;
            let a = parse_assignment(&f, &read(assignment)?)?;
            let red = build_reduction(&f)?;
            let m = construct_matching(&red, &a)?;
            let w = construct_witness(&red, &a)?;
            if let Some(p) = out_matching {
                write(p, &write_matching(&red.h, &m))?;
            }
            if let Some(p) = out_witness {
                write(p, &write_witness(&red.h, &w))?;
            }
            let violations = check_witness(&red.h, &m, &w)?;
            Ok(Outcome {
                results: json!({
                    "assignment": bits(&a),
                    "matching_size": m.len(),
                    "witness_passes": violations.is_empty(),
                }),
                positive: true,
            })
        }
        Command::Verify {
            inst,
            matching,
            mode,
            cap,
        } => {
            let inst = load_instance(inst)?;
            let m = load_matching(&inst, matching)?;
            let cfg = ExhaustiveConfig {
                vertex_cap: *cap,
                ..ExhaustiveConfig::default()
            };
            let mut report = serde_json::Map::new();
            report.insert("mode".into(), json!(mode));
            let mut verdicts = Vec::new();
            let run_exhaustive = match mode {
                Mode::Exhaustive => true,
                Mode::All => inst.len() <= cfg.vertex_cap,
                _ => false,
            };
            if matches!(mode, Mode::All) && !run_exhaustive {
                report.insert("skipped".into(), json!(["exhaustive"]));
            }
            if run_exhaustive {
                let v = is_popular_exhaustive(&inst, &m, &cfg)?;
                let (max_delta, _) = max_delta_exhaustive(&inst, &m, &cfg)?;
                verdicts.push(("exhaustive", v.popular));
                report.insert("max_delta".into(), json!(max_delta));
                if let Some((cx, margin)) = v.counterexample {
                    report.insert(
                        "counterexample".into(),
                        json!({"matching": pairs_json(&inst, &cx), "delta": margin}),
                    );
                }
            }
            if matches!(mode, Mode::BestResponse | Mode::All) {
                let br = best_response(&inst, &m)?;
                verdicts.push(("best_response", br.is_popular()));
                report.insert("max_delta".into(), json!(br.max_delta));
                if !br.is_popular() && !report.contains_key("counterexample") {
                    report.insert(
                        "counterexample".into(),
                        json!({"matching": pairs_json(&inst, &br.witness_matching), "delta": br.max_delta}),
                    );
                }
            }
            if matches!(mode, Mode::Hk | Mode::All) {
                let v = hk_verify(&inst, &m)?;
                verdicts.push(("hk", v.is_none()));
                if let Some(v) = v {
                    let names = |vs: &[popmatch::VertexId]| -> Vec<String> {
                        vs.iter().map(|&x| inst.name(x).to_string()).collect()
                    };
                    let blocking: Vec<[String; 2]> = v
                        .blocking
                        .iter()
                        .map(|&(a, b)| [inst.name(a).to_string(), inst.name(b).to_string()])
                        .collect();
                    report.insert(
                        "violations".into(),
                        json!([{ "kind": v.kind, "vertices": names(&v.vertices), "blocking": blocking }]),
                    );
                }
            }
            if matches!(mode, Mode::All) {
                verdicts.push((
                    "witness",
                    find_witness(&inst, &m, DEFAULT_WITNESS_BUDGET)?.is_some(),
                ));
            }
            let popular = verdicts[0].1;
            if verdicts.iter().any(|&(_, p)| p != popular) {
                return Err(anyhow!("verifiers disagree: {verdicts:?}"));
            }
            report.insert("popular".into(), json!(popular));
            report.insert(
                "verifiers".into(),
                Value::Object(
                    verdicts
                        .iter()
                        .map(|&(k, p)| (k.to_string(), json!(p)))
                        .collect(),
                ),
            );
            Ok(Outcome {
                results: Value::Object(report),
                positive: popular,
            })
        }
        Command::Witness {
            inst,
            matching,
            check,
            out,
            budget,
        } => {
            let inst = load_instance(inst)?;
            let m = load_matching(&inst, matching)?;
            if let Some(path) = check {
                let w = parse_witness(&inst, &read(path)?)?;
                let violations = check_witness(&inst, &m, &w)?;
                return Ok(Outcome {
                    positive: violations.is_empty(),
                    results: json!({ "passes": violations.is_empty(), "violations": violations }),
                });
            }
            let found = find_witness(&inst, &m, *budget)?;
            if let (Some(w), Some(p)) = (&found, out) {
                write(p, &write_witness(&inst, w))?;
            }
            let values: Option<Vec<(String, i8)>> = found.as_ref().map(|w| {
                inst.vertices()
                    .map(|v| (inst.name(v).to_string(), w.get(v)))
                    .collect()
            });
            Ok(Outcome {
                positive: found.is_some(),
                results: json!({ "found": found.is_some(), "witness": values }),
            })
        }
        Command::Stable { inst, side, out } => {
            let inst = load_instance(inst)?;
            let side = match side {
                SideArg::Left => SideChoice::Left,
                SideArg::Right => SideChoice::Right,
            };
            let m = deferred_acceptance(&inst, side)?;
            if let Some(p) = out {
                write(p, &write_matching(&inst, &m))?;
            }
            let stable_vertices: Vec<String> = stable_vertex_set(&inst)?
                .into_iter()
                .map(|v| inst.name(v).to_string())
                .collect();
            Ok(Outcome {
                results: json!({ "matching": pairs_json(&inst, &m), "stable_vertices": stable_vertices }),
                positive: true,
            })
        }
        Command::Decide {
            formula,
            budget,
            sample,
        } => {
            let f = load_formula(formula)?;
            let sat = !one_in_three_solutions(&f)?.is_empty();
            let red = build_reduction(&f)?;
            let (found, tested, assignment) = match sample {
                Some(k) => {
                    let report = sample_desired_popular(&red, *k, cli.seed)?;
                    let a = match report.certified.first() {
                        Some(d) => Some(assignment_from_matching(
                            &red,
                            &popmatch::reduction::matching_from_options(&red, d)?,
                        )?),
                        None => None,
                    };
                    (a.is_some(), report.tested as u128, a)
                }
                None => match decide_desired_popular(&red, *budget)? {
                    DecideOutcome::Found {
                        matching, tested, ..
                    } => (
                        true,
                        tested,
                        Some(assignment_from_matching(&red, &matching)?),
                    ),
                    DecideOutcome::ExhaustedNone { tested }
                    | DecideOutcome::BudgetExceeded { tested } => (false, tested, None),
                },
            };
            let total = popmatch::satdecide::CandidateSpace::new(&red).count();
            let mut results = json!({
                "satisfiable_by_sat_oracle": sat,
                "popular_found": found,
                "candidates_tested": tested.to_string(),
                "candidates_total": total.to_string(),
                "exhausted": sample.is_none() && tested == total,
            });
            if let Some(a) = &assignment {
                results["assignment"] = json!(bits(a));
                results["assignment_is_one_in_three"] = json!(a.is_one_in_three(&f));
            }
            Ok(Outcome {
                results,
                positive: found,
            })
        }
        Command::Sat { formula } => {
            let f = load_formula(formula)?;
            let sols = one_in_three_solutions(&f)?;
            Ok(Outcome {
                positive: !sols.is_empty(),
                results: json!({
                    "variables": f.variables,
                    "satisfiable": !sols.is_empty(),
                    "count": sols.len(),
                    "assignments": sols.iter().map(bits).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Oracle { inst, cap } => {
            let inst = load_instance(inst)?;
            let cfg = ExhaustiveConfig {
                pairwise_cap: *cap,
                ..ExhaustiveConfig::default()
            };
            let popular = popular_matchings_exhaustive(&inst, &cfg)?;
            let edges: Vec<[String; 2]> = popular_edges_exhaustive(&inst, &cfg)?
                .into_iter()
                .map(|(u, v)| [inst.name(u).to_string(), inst.name(v).to_string()])
                .collect();
            let components: Vec<Vec<String>> = popular_subgraph_components(&inst, &cfg)?
                .into_iter()
                .map(|c| c.into_iter().map(|v| inst.name(v).to_string()).collect())
                .collect();
            let first = decide_popular_exhaustive(&inst, &cfg)?;
            Ok(Outcome {
                positive: first.is_some(),
                results: json!({
                    "popular_matchings": popular.iter().map(|m| pairs_json(&inst, m)).collect::<Vec<_>>(),
                    "popular_edges": edges,
                    "components": components,
                    "first_popular": first.map(|m| pairs_json(&inst, &m)),
                }),
            })
        }
        Command::Validate { inst } => {
            let inst = parse_instance(&read(inst)?)?;
            let violations = validate_instance(&inst);
            Ok(Outcome {
                positive: violations.is_empty(),
                results: json!({ "valid": violations.is_empty(), "violations": violations }),
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce { .. } => "reduce",
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::Witness { .. } => "witness",
        Command::Stable { .. } => "stable",
        Command::Decide { .. } => "decide",
        Command::Sat { .. } => "sat",
        Command::Oracle { .. } => "oracle",
        Command::Validate { .. } => "validate",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let started = Instant::now();
    match run(&cli) {
        Ok(out) => {
            let mut report = json!({
                "command": command_name(&cli.command),
                "config": { "seed": cli.seed, "threads": cli.threads },
                "results": out.results,
            });
            if cli.timing {
                report["timing_ms"] = json!(started.elapsed().as_millis() as u64);
            }
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if cli.fail_on_no && !out.positive {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
