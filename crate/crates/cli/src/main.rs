//! `bunchkit`: command-line front end over the JSON formats.
//!
//! Exit codes: 0 = success or verified; 1 = semantic negative (a
//! countermodel was found, a check reported violations); 2 = usage or
//! input error.

use anyhow::{anyhow, Context, Result};
use bunchkit_core::algebras::{check_algebra, residuation_report, PropertyLine};
use bunchkit_core::duality::{
    complex_algebra, correspondence_check, eta_check, inverse_image_check, prime_filter_frame,
    theta_check,
};
use bunchkit_core::explorer::{countermodel_search, soundness_fuzz, SearchBudget, SearchOutcome};
use bunchkit_core::formula::print_formula;
use bunchkit_core::frames::{check_frame, entails_in_model, satisfies, Mode, Model};
use bunchkit_core::heap::{heap_frame, indexed_sat, pointer_sat, separation_properties, Variant};
use bunchkit_core::json::{self, FrameJson};
use bunchkit_core::logic::{Logic, SigmaAxiom};
use bunchkit_core::models::sample_library;
use bunchkit_core::parser::{parse_formula, parse_pointer_formula, parse_sequent};
use bunchkit_core::proofs::check_proof;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bunchkit", about = "finite-model workbench for bunched logics", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    out: String,
    /// Worker threads for the explorer commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct LogicArgs {
    /// Logic name: LGL, ILGL, BI, BBI, SML, DMBI, CBI, BiBI, BiBBI, CKBI.
    #[arg(long)]
    logic: String,
    /// Subclassical axiom flags (BiBI/BiBBI): assoc, mbot-weak, mbot-contr,
    /// mor-contr, weak-dist.
    #[arg(long, value_delimiter = ',')]
    sigma: Vec<String>,
    /// Modal class for SML: none, s4, s5.
    #[arg(long, default_value = "none")]
    modal: String,
}

impl LogicArgs {
    fn to_logic(&self) -> Result<Logic> {
        Ok(json::logic_from_parts(&self.logic, &self.sigma, &self.modal)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula, signature-check it, and print the canonical form.
    Parse {
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long)]
        formula: String,
        /// Also print the defined-connective expansion.
        #[arg(long)]
        expand: bool,
    },
    /// Check a Hilbert proof object.
    CheckProof {
        #[arg(long)]
        proof: PathBuf,
    },
    /// Check every frame axiom of the frame's kind.
    CheckFrame {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Check every algebra law of the algebra's kind.
    CheckAlgebra {
        #[arg(long)]
        algebra: PathBuf,
        /// Also run the residuation-property report.
        #[arg(long)]
        report: bool,
    },
    /// Evaluate a formula at a state of a model.
    Sat {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        val: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "strong", value_parser = ["strong", "udmf"])]
        mode: String,
    },
    /// Does every state satisfying the antecedent satisfy the consequent?
    Entails {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        val: PathBuf,
        /// Sequent, written `phi |- psi`.
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "strong", value_parser = ["strong", "udmf"])]
        mode: String,
    },
    /// Complex algebra of a frame.
    Com {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Prime filter frame of an algebra.
    Pr {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Representation round trip: theta on an algebra, eta on a frame.
    Roundtrip {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Check the morphism clauses for a state map between two frames.
    Morphism {
        /// JSON file {"map": {"source-state": "target-state", ...}}.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Also verify the inverse image is a complex-algebra homomorphism.
        #[arg(long)]
        inverse_image: bool,
    },
    /// Subclassical correspondence check for one axiom row.
    Correspondence {
        #[arg(long)]
        frame: PathBuf,
        /// Row: assoc, mbot-weak, mbot-contr, mor-contr, weak-dist.
        #[arg(long)]
        row: String,
    },
    /// Pointer-logic satisfaction over a store and a heap.
    HeapSat {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        heap: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "bbi", value_parser = ["bi", "bbi"])]
        variant: String,
    },
    /// Satisfaction on the store-indexed frame (context-growing clauses).
    IndexedSat {
        #[arg(long)]
        universe: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        heap: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "bbi", value_parser = ["bi", "bbi"])]
        variant: String,
    },
    /// The six separation properties of a frame (or of the heap frame of a
    /// universe).
    SepProps {
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long)]
        universe: Option<PathBuf>,
        #[arg(long, default_value = "bbi", value_parser = ["bi", "bbi"])]
        variant: String,
    },
    /// Bounded countermodel search for a sequent.
    Countermodel {
        #[command(flatten)]
        logic: LogicArgs,
        /// Sequent, written `phi |- psi`.
        #[arg(long)]
        seq: String,
        /// Maximum number of states.
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Cap on frames kept per size (0 = exhaustive).
        #[arg(long, default_value_t = 500)]
        max_frames: usize,
    },
    /// Local soundness fuzzing of the logic's Hilbert rules.
    Fuzz {
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of states in sampled frames.
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
    /// Dump the sample library to a directory.
    Samples {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load_frame(path: &PathBuf) -> Result<bunchkit_core::frames::Frame> {
    let j: FrameJson = read_json(path)?;
    Ok(json::frame_from_json(&j)?)
}

fn load_algebra(path: &PathBuf) -> Result<bunchkit_core::algebras::Algebra> {
    let j: json::AlgebraJson = read_json(path)?;
    Ok(json::algebra_from_json(&j)?)
}

fn emit(out: &str, text_form: String, json_form: serde_json::Value) {
    if out == "json" {
        println!("{}", serde_json::to_string_pretty(&json_form).expect("serializable"));
    } else {
        println!("{text_form}");
    }
}

fn lines_value(lines: &[PropertyLine]) -> serde_json::Value {
    serde_json::to_value(lines).expect("serializable")
}

fn lines_text(lines: &[PropertyLine]) -> String {
    lines
        .iter()
        .map(|l| {
            if l.holds {
                format!("ok   {}", l.name)
            } else {
                format!("FAIL {} at ({})", l.name, l.witness.join(", "))
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Result<u8> {
    let out = cli.out.clone();
    match cli.command {
        Command::Parse { logic, formula, expand } => {
            let logic = logic.to_logic()?;
            let f = parse_formula(&formula, &logic)?;
            let canonical = print_formula(&f);
            if expand {
                let e = print_formula(&bunchkit_core::formula::expand_defined(&f, &logic));
                emit(
                    &out,
                    format!("{canonical}\n{e}"),
                    json!({"formula": canonical, "expanded": e}),
                );
            } else {
                emit(&out, canonical.clone(), json!({"formula": canonical}));
            }
            Ok(0)
        }
        Command::CheckProof { proof } => {
            let j: json::ProofJson = read_json(&proof)?;
            let (p, logic) = json::proof_from_json(&j)?;
            let verdict = check_proof(&p, &logic);
            let ok = verdict.is_accepted();
            emit(&out, verdict.to_string(), json!({"ok": ok, "verdict": verdict.to_string()}));
            Ok(if ok { 0 } else { 1 })
        }
        Command::CheckFrame { frame } => {
            let f = load_frame(&frame)?;
            let viols = check_frame(&f);
            let ok = viols.is_empty();
            emit(
                &out,
                if ok {
                    "ok".to_string()
                } else {
                    viols.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
                },
                json!({"ok": ok, "violations": viols}),
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::CheckAlgebra { algebra, report } => {
            let a = load_algebra(&algebra)?;
            let viols = check_algebra(&a);
            let ok = viols.is_empty();
            let mut text = if ok {
                "ok".to_string()
            } else {
                viols.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
            };
            let mut body = json!({"ok": ok, "violations": viols});
            if report && ok {
                let rep = residuation_report(&a);
                text.push('\n');
                text.push_str(&lines_text(&rep));
                body["report"] = lines_value(&rep);
            }
            emit(&out, text, body);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Sat { frame, val, state, formula, mode } => {
            let f = load_frame(&frame)?;
            let v = json::valuation_from_json(&read_json(&val)?, &f)?;
            let x = f.state_index(&state)?;
            let kind = f.kind.clone();
            let phi = parse_formula(&formula, &kind)?;
            let mode = if mode == "udmf" { Mode::Udmf } else { Mode::Strong };
            let m = Model::new(f, v, mode).map_err(|e| anyhow!("{e}"))?;
            let result = satisfies(&m, x, &phi);
            emit(&out, result.to_string(), json!({"result": result}));
            Ok(0)
        }
        Command::Entails { frame, val, seq, mode } => {
            let f = load_frame(&frame)?;
            let v = json::valuation_from_json(&read_json(&val)?, &f)?;
            let kind = f.kind.clone();
            let s = parse_sequent(&seq, &kind)?;
            let mode = if mode == "udmf" { Mode::Udmf } else { Mode::Strong };
            let m = Model::new(f, v, mode).map_err(|e| anyhow!("{e}"))?;
            let result = entails_in_model(&m, &s);
            emit(&out, result.to_string(), json!({"result": result}));
            Ok(0)
        }
        Command::Com { frame } => {
            let f = load_frame(&frame)?;
            let com = complex_algebra(&f)?;
            let j = json::algebra_to_json(&com.algebra);
            println!("{}", serde_json::to_string_pretty(&j)?);
            Ok(0)
        }
        Command::Pr { algebra } => {
            let a = load_algebra(&algebra)?;
            let pf = prime_filter_frame(&a)?;
            let j = json::frame_to_json(&pf.frame);
            println!("{}", serde_json::to_string_pretty(&j)?);
            Ok(0)
        }
        Command::Roundtrip { algebra, frame } => match (algebra, frame) {
            (Some(path), None) => {
                let a = load_algebra(&path)?;
                let rep = theta_check(&a)?;
                let ok = rep.embedding_ok();
                let text = format!(
                    "{}\nembedding: {}\nsurjective: {}\nprime filters: {}",
                    lines_text(&rep.lines),
                    ok,
                    rep.surjective,
                    rep.prime_filter_count
                );
                emit(
                    &out,
                    text,
                    json!({
                        "ok": ok,
                        "surjective": rep.surjective,
                        "prime_filters": rep.prime_filter_count,
                        "lines": lines_value(&rep.lines),
                    }),
                );
                Ok(if ok { 0 } else { 1 })
            }
            (None, Some(path)) => {
                let f = load_frame(&path)?;
                let rep = eta_check(&f)?;
                let ok = rep.ok();
                let text = format!(
                    "{}\nkernel = order-equivalence: {}\nantisymmetric: {}\nbijective: {}",
                    lines_text(&rep.lines),
                    rep.kernel_ok,
                    rep.antisymmetric,
                    rep.bijective
                );
                emit(
                    &out,
                    text,
                    json!({
                        "ok": ok,
                        "kernel_ok": rep.kernel_ok,
                        "antisymmetric": rep.antisymmetric,
                        "bijective": rep.bijective,
                        "lines": lines_value(&rep.lines),
                    }),
                );
                Ok(if ok { 0 } else { 1 })
            }
            _ => Err(anyhow!("pass exactly one of --algebra or --frame")),
        },
        Command::Morphism { map, from, to, inverse_image } => {
            let a = load_frame(&from)?;
            let b = load_frame(&to)?;
            #[derive(serde::Deserialize)]
            struct MapJson {
                map: std::collections::BTreeMap<String, String>,
            }
            let mj: MapJson = read_json(&map)?;
            let mut g = vec![0usize; a.n()];
            for (i, s) in a.states.iter().enumerate() {
                let t = mj
                    .map
                    .get(s)
                    .ok_or_else(|| anyhow!("map does not cover state `{s}`"))?;
                g[i] = b.state_index(t)?;
            }
            let viols = bunchkit_core::frames::check_morphism(&g, &a, &b);
            let ok = viols.is_empty();
            let mut text = if ok {
                "ok".to_string()
            } else {
                viols.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
            };
            let mut body = json!({"ok": ok, "violations": viols});
            let mut code = if ok { 0 } else { 1 };
            if inverse_image && ok {
                let lines = inverse_image_check(&g, &a, &b)?;
                text.push('\n');
                text.push_str(&lines_text(&lines));
                body["inverse_image"] = lines_value(&lines);
                if !lines.iter().all(|l| l.holds) {
                    code = 1;
                }
            }
            emit(&out, text, body);
            Ok(code)
        }
        Command::Correspondence { frame, row } => {
            let f = load_frame(&frame)?;
            let row = SigmaAxiom::parse(&row).ok_or_else(|| anyhow!("unknown row `{row}`"))?;
            let rep = correspondence_check(&f, row)?;
            let ok = !rep.correspondent_holds || rep.axiom_valid == Some(true);
            let text = format!(
                "correspondent holds: {}\naxiom valid: {:?}\nfalsifier: {:?}",
                rep.correspondent_holds, rep.axiom_valid, rep.falsifier
            );
            emit(
                &out,
                text,
                json!({
                    "row": row.as_str(),
                    "correspondent_holds": rep.correspondent_holds,
                    "correspondent_witness": rep.correspondent_witness,
                    "axiom_valid": rep.axiom_valid,
                    "falsifier": rep.falsifier,
                }),
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::HeapSat { universe, store, heap, formula, variant } => {
            let u = json::universe_from_json(&read_json(&universe)?)?;
            let s = json::store_from_json(&read_json(&store)?);
            let h = json::heap_from_json(&read_json(&heap)?)?;
            let f = parse_pointer_formula(&formula)?;
            let variant = Variant::parse(&variant).expect("validated by clap");
            let result = pointer_sat(&u, &s, &h, &f, variant)?;
            emit(&out, result.to_string(), json!({"result": result}));
            Ok(0)
        }
        Command::IndexedSat { universe, store, heap, formula, variant } => {
            let u = json::universe_from_json(&read_json(&universe)?)?;
            let s = json::store_from_json(&read_json(&store)?);
            let h = json::heap_from_json(&read_json(&heap)?)?;
            let f = parse_pointer_formula(&formula)?;
            let variant = Variant::parse(&variant).expect("validated by clap");
            let result = indexed_sat(&u, &s.ctx, &s.vals, &h, &f, variant)?;
            emit(&out, result.to_string(), json!({"result": result}));
            Ok(0)
        }
        Command::SepProps { frame, universe, variant } => {
            let f = match (frame, universe) {
                (Some(path), None) => load_frame(&path)?,
                (None, Some(path)) => {
                    let u = json::universe_from_json(&read_json(&path)?)?;
                    heap_frame(&u, Variant::parse(&variant).expect("validated"))
                }
                _ => return Err(anyhow!("pass exactly one of --frame or --universe")),
            };
            let rep = separation_properties(&f);
            emit(&out, lines_text(&rep), json!({"properties": lines_value(&rep)}));
            Ok(0)
        }
        Command::Countermodel { logic, seq, budget, max_frames } => {
            let logic = logic.to_logic()?;
            let s = parse_sequent(&seq, &logic)?;
            let mut b = SearchBudget::new(logic, budget);
            b = b.with_frame_cap(if max_frames == 0 { None } else { Some(max_frames) });
            match countermodel_search(&s, &b) {
                SearchOutcome::Found(cm) => {
                    let fj = json::frame_to_json(&cm.frame);
                    let vj = json::valuation_to_json(&cm.valuation, &cm.frame);
                    let state = cm.frame.states[cm.state].clone();
                    let body = json!({
                        "frame": fj,
                        "valuation": vj,
                        "state": state,
                    });
                    // the witness is the payload in either output mode
                    println!("{}", serde_json::to_string_pretty(&body)?);
                    Ok(1)
                }
                SearchOutcome::Exhausted { frames_checked } => {
                    emit(
                        &out,
                        format!("no countermodel within budget ({frames_checked} frames checked)"),
                        json!({"result": "exhausted", "frames_checked": frames_checked}),
                    );
                    Ok(0)
                }
            }
        }
        Command::Fuzz { logic, trials, seed, budget } => {
            let logic = logic.to_logic()?;
            let b = SearchBudget::new(logic, budget);
            let rep = soundness_fuzz(&b, trials, seed);
            let ok = rep.violations.is_empty();
            let viols: Vec<serde_json::Value> = rep
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "rule": v.rule,
                        "frame": json::frame_to_json(&v.frame),
                        "valuation": json::valuation_to_json(&v.valuation, &v.frame),
                        "substitution": v.substitution,
                    })
                })
                .collect();
            emit(
                &out,
                format!(
                    "models sampled: {}\nrule instances checked: {}\nviolations: {}",
                    rep.models_sampled,
                    rep.instances_checked,
                    rep.violations.len()
                ),
                json!({
                    "models_sampled": rep.models_sampled,
                    "instances_checked": rep.instances_checked,
                    "violations": viols,
                }),
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::Samples { out_dir } => {
            std::fs::create_dir_all(&out_dir)?;
            let mut names = Vec::new();
            for (name, f) in sample_library() {
                let j = json::frame_to_json(&f);
                let path = out_dir.join(format!("{name}.json"));
                let mut text = serde_json::to_string_pretty(&j)?;
                text.push('\n');
                std::fs::write(&path, text)?;
                names.push(name);
            }
            emit(&out, names.join("\n"), json!({"written": names}));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
