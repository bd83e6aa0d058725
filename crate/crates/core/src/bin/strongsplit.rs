//! `strongsplit`: decide, build and check strong arc decompositions from the
//! command line. Digraphs travel as JSON on stdin/stdout.
//!
//! Exit codes: 0 decomposed / true, 2 refuted / false, 3 out of scope or
//! budget exhausted, 4 malformed input, 1 internal error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use strongsplit::connectivity::is_k_arc_strong;
use strongsplit::decompose::{decompose_traced, verify_decomposition, DecomposeOutcome, VerifyError};
use strongsplit::generate::{self, CutShape};
use strongsplit::oracle::{search_decompose, SearchConfig, SearchOutcome};
use strongsplit::structure::{composition_structure, finest_structure};
use strongsplit::{compose, extension, gallery, io, Digraph, Error};

#[derive(Parser)]
#[command(name = "strongsplit", version, about = "Strong arc decompositions of semicomplete compositions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Extension whose quotient has the requested cut-arcs.
    Extension,
    /// Random composition with arbitrary class digraphs.
    Composition,
    Semicomplete,
    Multigraph,
    QuasiTransitive,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide and build a strong arc decomposition of the digraph on stdin.
    Decompose {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Node budget for search fallbacks (overrides STRONGSPLIT_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        /// Include the list of construction branches taken.
        #[arg(long)]
        trace: bool,
    },
    /// Check a decomposition (stdin, as printed by `decompose`) against a digraph.
    Verify {
        #[arg(long)]
        graph: std::path::PathBuf,
    },
    /// Print a composition structure of the digraph on stdin.
    Recognize {
        /// Finest structure instead of the coarsest.
        #[arg(long)]
        finest: bool,
    },
    /// Exact search for a decomposition.
    Oracle {
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Emit a reproducible random instance.
    Gen {
        #[arg(long, value_enum, default_value = "extension")]
        kind: Kind,
        /// Quotient (or digraph) size.
        #[arg(long, default_value_t = 8)]
        t: usize,
        /// Number of cut-arcs of the quotient, 0 to 3.
        #[arg(long, default_value_t = 0)]
        quotient_cut_arcs: usize,
        /// Comma separated class sizes; the quotient gets one vertex per entry.
        #[arg(long, value_delimiter = ',')]
        class_sizes: Option<Vec<usize>>,
        /// Probability of each internal arc inside a class.
        #[arg(long, default_value_t = 0.0)]
        internal_arcs: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List or print the named digraphs.
    Gallery {
        #[arg(long)]
        name: Option<String>,
        /// Size for the `Kn` and `Cn` families.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Report whether the digraph on stdin is k-arc-strong.
    Karc {
        #[arg(short, long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("strongsplit: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MalformedInput(_) => 4,
        Error::OutOfScope(_)
        | Error::Capability(_)
        | Error::Precondition(_)
        | Error::BudgetExhausted(_) => 3,
        Error::Internal(_) => 1,
    }
}

fn stdin() -> Result<String, Error> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Error::MalformedInput(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn print(v: &Value) {
    println!("{v}");
}

/// Node budget from `--budget`, else from `STRONGSPLIT_BUDGET`.
fn budget(flag: Option<u64>) -> Result<Option<u64>, Error> {
    let env = match std::env::var("STRONGSPLIT_BUDGET") {
        Ok(s) => Some(
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::MalformedInput(format!("STRONGSPLIT_BUDGET={s} is not a count")))?,
        ),
        Err(_) => None,
    };
    match flag.or(env) {
        Some(0) => Err(Error::MalformedInput("budget must be positive".into())),
        b => Ok(b),
    }
}

fn emit_digraph(d: &Digraph, format: Format) {
    match format {
        Format::Json => println!("{}", io::digraph_json(d)),
        Format::Dot => print!("{}", io::digraph_dot(d)),
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Decompose { format, budget, trace } => {
            let d = io::parse_digraph(&stdin()?)?;
            let mut cfg = SearchConfig::default();
            if let Some(b) = self::budget(budget)? {
                cfg.node_budget = b;
            }
            let (out, tr) = match decompose_traced(&d, &cfg) {
                Ok(x) => x,
                Err(Error::OutOfScope(m)) => {
                    print(&json!({ "status": "out_of_scope", "a1": [], "a2": [], "witness": null, "reason": m }));
                    return Ok(3);
                }
                Err(e) => return Err(e),
            };
            match (format, &out) {
                (Format::Dot, DecomposeOutcome::Decomposed(dec)) => print!("{}", io::decomposition_dot(&d, dec)),
                _ => {
                    let mut v = io::outcome_value(&out);
                    if trace {
                        v["trace"] = serde_json::to_value(&tr.branches).expect("plain data");
                    }
                    print(&v);
                }
            }
            Ok(if out.is_decomposed() { 0 } else { 2 })
        }
        Cmd::Verify { graph } => {
            let text = std::fs::read_to_string(&graph)
                .map_err(|e| Error::MalformedInput(format!("{}: {e}", graph.display())))?;
            let d = io::parse_digraph(&text)?;
            let dec = io::parse_decomposition(&stdin()?)?;
            match verify_decomposition(&d, &dec) {
                Ok(()) => {
                    print(&json!({ "valid": true }));
                    Ok(0)
                }
                Err(e) => {
                    let mut v = json!({ "valid": false, "reason": e.to_string() });
                    if let VerifyError::NotStrong { witness, .. } = &e {
                        v["witness"] = io::witness_value(witness);
                    }
                    print(&v);
                    Ok(2)
                }
            }
        }
        Cmd::Recognize { finest } => {
            let d = io::parse_digraph(&stdin()?)?;
            let s = if finest { finest_structure(&d)? } else { composition_structure(&d)? };
            print(&io::structure_value(&s));
            Ok(0)
        }
        Cmd::Oracle { exhaustive, budget, seed } => {
            let d = io::parse_digraph(&stdin()?)?;
            let mut cfg = if exhaustive { SearchConfig::exhaustive() } else { SearchConfig::default() };
            if let Some(b) = self::budget(budget)? {
                cfg.node_budget = b;
            }
            cfg.seed = seed;
            match search_decompose(&d, &cfg) {
                SearchOutcome::Found(dec) => {
                    let mut v = io::decomposition_value(&dec);
                    v["status"] = json!("found");
                    print(&v);
                    Ok(0)
                }
                SearchOutcome::ProvenNone => {
                    print(&json!({ "status": "proven_none" }));
                    Ok(2)
                }
                SearchOutcome::BudgetExhausted => {
                    print(&json!({ "status": "budget_exhausted" }));
                    Ok(3)
                }
            }
        }
        Cmd::Gen { kind, t, quotient_cut_arcs, class_sizes, internal_arcs, seed, format } => {
            if !(0.0..=1.0).contains(&internal_arcs) {
                return Err(Error::MalformedInput("--internal-arcs must lie in [0, 1]".into()));
            }
            let mut rng = generate::rng(seed);
            let d = match kind {
                Kind::Extension => gen_extension(t, quotient_cut_arcs, class_sizes, internal_arcs, &mut rng)?,
                Kind::Composition => generate::random_composition(t, 3, internal_arcs > 0.0, true, &mut rng)?.0,
                Kind::Semicomplete => generate::random_semicomplete(t, &mut rng),
                Kind::Multigraph => generate::random_semicomplete_multigraph(t, &mut rng),
                Kind::QuasiTransitive => generate::random_quasi_transitive(t, 3, &mut rng)?,
            };
            emit_digraph(&d, format);
            Ok(0)
        }
        Cmd::Gallery { name, size, format } => {
            match name {
                None => print(&json!({ "names": gallery::NAMES })),
                Some(n) => emit_digraph(&gallery::named(&n, size)?, format),
            }
            Ok(0)
        }
        Cmd::Karc { k } => {
            let d = io::parse_digraph(&stdin()?)?;
            match is_k_arc_strong(&d, k) {
                Ok(()) => {
                    print(&json!({ "k": k, "k_arc_strong": true, "witness": null }));
                    Ok(0)
                }
                Err(w) => {
                    print(&json!({ "k": k, "k_arc_strong": false, "witness": io::witness_value(&w) }));
                    Ok(2)
                }
            }
        }
    }
}

fn gen_extension<R: Rng>(
    t: usize,
    cuts: usize,
    class_sizes: Option<Vec<usize>>,
    internal: f64,
    rng: &mut R,
) -> Result<Digraph, Error> {
    let shape = match cuts {
        0 => CutShape::None,
        1 => CutShape::OneBoth,
        2 => [CutShape::TwoShared, CutShape::TwoSamePart, CutShape::TwoSplit][rng.gen_range(0..3)],
        3 => CutShape::Three,
        c => return Err(Error::MalformedInput(format!("a quotient here has at most 3 cut-arcs, not {c}"))),
    };
    let (q, classes) = match class_sizes {
        None => {
            let (_, s) = generate::cut_extension(shape, t, 0.3, false, rng)?;
            (s.quotient, s.classes.iter().map(Vec::len).collect::<Vec<_>>())
        }
        Some(sizes) => {
            if sizes.contains(&0) {
                return Err(Error::MalformedInput("class sizes must be positive".into()));
            }
            let (q, _) = generate::cut_quotient(shape, sizes.len(), rng)?;
            if q.vertex_count() != sizes.len() {
                return Err(Error::MalformedInput(format!(
                    "{} cut-arcs need a quotient on {} vertices here, got {} class sizes",
                    cuts,
                    q.vertex_count(),
                    sizes.len()
                )));
            }
            (q, sizes)
        }
    };
    if internal == 0.0 {
        return Ok(extension(&q, &classes)?.0);
    }
    let parts: Vec<Digraph> = classes.iter().map(|&m| generate::random_digraph(m, internal, rng)).collect();
    Ok(compose(&q, &parts)?.0)
}
