use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use eicat_core::cartan::{classify, CartanTriple};
use eicat_core::ei_category::{build_ei_quiver, category_algebra, enumerate_category};
use eicat_core::ffield::DEFAULT_SEED;
use eicat_core::gls::build_h;
use eicat_core::transform::{
    build_main_isomorphism, construct_prime_triple, lusztig_forward, lusztig_inverse,
    lusztig_labels, table_report, theorem_field,
};
use eicat_core::Error;
use serde_json::{json, Value};

mod input;
mod render;

use input::{read_json, GraphDoc, TripleDoc};

#[derive(Parser)]
#[command(
    name = "eicat",
    version,
    about = "Cartan-type EI categories and GLS algebras over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the field search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Eicat,
    Gls,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Subcommand)]
enum Command {
    /// Check (C1)-(C3), the symmetrizer and the orientation of a triple file.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build (C', D', Omega') for a prime (0 for characteristic zero).
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Build kC(C, D, Omega) and/or H(C', D', Omega') over the same field.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
        /// Include the full structure-constant tables.
        #[arg(long)]
        dump_algebra: bool,
        /// Include objects, morphisms and the composition table of the category.
        #[arg(long)]
        dump_category: bool,
    },
    /// Build and exhaustively check the isomorphism kC(C, D, Omega) -> H(C', D', Omega').
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Report wall-clock time (makes the output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Dynkin / Euclidean / indefinite type of each connected component.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Pass between (C, D) and a graph with an admissible automorphism.
    Lusztig {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Regenerate the tables of non-simply-laced Dynkin and Euclidean graphs.
    Tables,
}

/// What a command produced: a document, its text rendering, and whether the
/// mathematical checks it ran all passed.
struct Outcome {
    doc: Value,
    text: String,
    passed: bool,
    /// A failed check is a validation failure (exit 1) rather than a mismatch (exit 2).
    validation: bool,
}

fn load_triple(path: &Path) -> anyhow::Result<CartanTriple> {
    read_json::<TripleDoc>(path)?.to_triple()
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { input } => {
            let doc: TripleDoc = read_json(input)?;
            let report = doc.validate()?;
            Ok(Outcome {
                text: render::validation(&report),
                doc: json!({ "input": doc, "valid": report.valid(), "checks": report.checks }),
                passed: report.valid(),
                validation: true,
            })
        }
        Command::Construct { input, prime } => {
            let t = load_triple(input)?;
            let pt = construct_prime_triple(&t, *prime)?;
            let doc = render::prime_triple_doc(&pt);
            Ok(Outcome {
                text: render::prime_triple(&pt),
                doc: json!({ "input": TripleDoc::from_triple(&t), "prime": prime, "result": doc }),
                passed: true,
                validation: false,
            })
        }
        Command::Build {
            input,
            prime,
            which,
            dump_algebra,
            dump_category,
        } => {
            let t = load_triple(input)?;
            let (pt, field) = theorem_field(&t, *prime, seed)?;
            let mut result = serde_json::Map::new();
            let mut text = format!("field: {}\n", render::field(&field.params()));
            if matches!(which, Which::Eicat | Which::Both) {
                let cat = enumerate_category(&build_ei_quiver(&t));
                let mut entry =
                    json!({ "objects": cat.object_count(), "dim": cat.morphism_count() });
                text += &format!(
                    "kC(C,D,Omega): {} objects, dim {}\n",
                    cat.object_count(),
                    cat.morphism_count()
                );
                if *dump_category {
                    let dump = cat.dump();
                    text += &render::category(&dump);
                    entry["category"] = serde_json::to_value(dump)?;
                }
                if *dump_algebra {
                    let dump = category_algebra(&cat, Arc::clone(&field)).dump();
                    text += &render::algebra(&dump);
                    entry["algebra"] = serde_json::to_value(dump)?;
                }
                result.insert("eicat".into(), entry);
            }
            if matches!(which, Which::Gls | Which::Both) {
                let h = build_h(&pt.triple, Arc::clone(&field));
                let mut entry = json!({
                    "triple": TripleDoc::from_triple(&pt.triple),
                    "vertices": pt.triple.rank(),
                    "dim": h.dim(),
                });
                text += &format!(
                    "H(C',D',Omega'): {} vertices, dim {}\n",
                    pt.triple.rank(),
                    h.dim()
                );
                if *dump_algebra {
                    let dump = h.algebra.dump();
                    text += &render::algebra(&dump);
                    entry["algebra"] = serde_json::to_value(dump)?;
                }
                result.insert("gls".into(), entry);
            }
            Ok(Outcome {
                doc: json!({ "input": TripleDoc::from_triple(&t), "prime": prime, "seed": seed, "result": result }),
                text,
                passed: true,
                validation: false,
            })
        }
        Command::Verify {
            input,
            prime,
            timing,
        } => {
            let t = load_triple(input)?;
            let start = Instant::now();
            let m = build_main_isomorphism(&t, *prime, seed)?;
            let seconds = start.elapsed().as_secs_f64();
            let mut doc = json!({
                "input": TripleDoc::from_triple(&t),
                "prime": prime,
                "seed": seed,
                "prime_triple": render::prime_triple_doc(&m.prime_triple),
                "report": m.report,
            });
            let mut text = render::verification(&m);
            if *timing {
                doc["seconds"] = json!(seconds);
                text += &format!("time: {seconds:.3} s\n");
            }
            Ok(Outcome {
                doc,
                text,
                passed: m.report.passed,
                validation: false,
            })
        }
        Command::Classify { input } => {
            let t = load_triple(input)?;
            let parts = classify(&t.c, &t.d);
            let components: Vec<Value> = parts
                .iter()
                .map(|p| {
                    json!({
                        "vertices": p.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                        "type": p.class.tag.to_string(),
                        "name": p.class.name,
                    })
                })
                .collect();
            Ok(Outcome {
                text: render::classification(&parts),
                doc: json!({ "input": TripleDoc::from_triple(&t), "components": components }),
                passed: true,
                validation: false,
            })
        }
        Command::Lusztig {
            input,
            direction: Direction::Forward,
        } => {
            let t = load_triple(input)?;
            let g = lusztig_forward(&t.c, &t.d)?;
            let doc = GraphDoc::from_graph(&g, Some(lusztig_labels(&t.d)));
            Ok(Outcome {
                text: render::graph(&doc),
                doc: json!({ "input": TripleDoc::from_triple(&t), "result": doc }),
                passed: true,
                validation: false,
            })
        }
        Command::Lusztig {
            input,
            direction: Direction::Inverse,
        } => {
            let doc: GraphDoc = read_json(input)?;
            let (c, d) = lusztig_inverse(&doc.to_graph()?)?;
            let t = CartanTriple::new(
                c.clone(),
                d,
                eicat_core::cartan::Orientation::default_for(&c),
            )?;
            let out = TripleDoc {
                omega: None,
                ..TripleDoc::from_triple(&t)
            };
            Ok(Outcome {
                text: format!("C = {}\nD = {}\n", t.c, t.d),
                doc: json!({ "input": doc, "result": out }),
                passed: true,
                validation: false,
            })
        }
        Command::Tables => {
            let report = table_report()?;
            Ok(Outcome {
                text: render::tables(&report),
                passed: report.all_matched(),
                doc: serde_json::to_value(&report)?,
                validation: false,
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Construct { .. } => "construct",
        Command::Build { .. } => "build",
        Command::Verify { .. } => "verify",
        Command::Classify { .. } => "classify",
        Command::Lusztig { .. } => "lusztig",
        Command::Tables => "tables",
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::TheoremViolation(_) | Error::TableMismatch { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli).context(command_name(&cli.command)) {
        Ok(o) => o,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(exit_code_for(&err));
        }
    };
    match cli.format {
        Format::Text => print!("{}", outcome.text),
        Format::Json => {
            let doc = json!({
                "command": command_name(&cli.command),
                "version": env!("CARGO_PKG_VERSION"),
                "passed": outcome.passed,
                "data": outcome.doc,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("documents serialize")
            );
        }
    }
    match (outcome.passed, outcome.validation) {
        (true, _) => ExitCode::SUCCESS,
        (false, true) => ExitCode::from(1),
        (false, false) => ExitCode::from(2),
    }
}
