//! The `bjclass` command line. [`run`] executes in-process and returns the exit code and
//! both output streams, so the binary only forwards them.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bjortho::{is_bj_orthogonal, is_bj_orthogonal_bruteforce, OrthogonalityVerdict};
use crate::classify::{classify, simplicity_test};
use crate::error::Error;
use crate::io::{self, ChainFile, MatrixFile};
use crate::matkernel::KMatrix;
use crate::orthograph::{
    build_maximal_chain, graph_dimension_search, left_asymmetry_witness, reduced_classes,
    right_asymmetry_witness, sample_digraph, Chain, DigraphOptions,
};
use crate::random::random_matrix;
use crate::verify::{chain_file_checks, run_suite, Suite};

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "BJ_SEED";

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "bjclass", version, about = "Birkhoff-James orthogonality graphs of matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Right,
    Left,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test A ⊥ B for two matrix files.
    BjCheck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Build a maximal chain through a random or given element, or validate a chain file.
    Chain {
        #[arg(long, required_unless_present = "from", conflicts_with = "from")]
        algebra: Option<String>,
        /// A matrix file (chain through it) or a chain file (validated as is).
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recover (F, K, n) of a simple algebra from its orthogonality graph.
    Classify {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Exit 1 unless the result names the input algebra.
        #[arg(long)]
        expect: bool,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value = "M2(R)")]
        algebra: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Random cases per property (pairs for the oracle suite).
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Also check a stored chain file.
        #[arg(long)]
        chain: Option<PathBuf>,
    },
    /// Sample the ortho-digraph.
    Digraph {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        include_zero: bool,
        #[arg(long)]
        projective: bool,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a right or left asymmetry witness for A.
    Witness {
        #[arg(value_enum)]
        kind: Kind,
        a: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain-length simplicity test for a complex algebra.
    Simplicity {
        #[arg(long)]
        algebra: String,
    },
    /// Heuristic search for the graph dimension.
    Dimension {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 32)]
        pool: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Failure of a command: bad input (exit 2) or a failed property (exit 1).
enum Failure {
    Input(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_)
            | Error::InvalidChain(_)
            | Error::NotMaximalChain(_)
            | Error::NotSimpleFiniteDimensional { .. }
            | Error::ChainTooShort(_) => Failure::Semantic(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn ok(code: i32, stdout: String) -> Outcome {
    Outcome { code, stdout, stderr: String::new() }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn seed(arg: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(s) = arg {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

/// `components` is the number of real components per scalar of the algebra.
fn verdict_json(v: &OrthogonalityVerdict, components: usize) -> Value {
    let witness = v.witness.as_ref().map(|w| w.entries().iter().map(|e| e.components()[..components].to_vec()).collect::<Vec<_>>());
    json!({ "orthogonal": v.orthogonal, "margin": v.margin, "witness": witness })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                ok(0, text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Semantic(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("failure: {msg}\n") },
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::BjCheck { a, b, method } => bj_check(&a, &b, method),
        Command::Chain { algebra, from, out, seed: s } => chain(algebra.as_deref(), from.as_deref(), out.as_deref(), seed(s)?),
        Command::Classify { algebra, samples, seed: s, expect } => {
            let spec = io::load_algebra(&algebra)?;
            let r = classify(&spec, samples, seed(s)?)?;
            let matches = r.matches(&spec);
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["algebra"] = json!(spec.to_string());
            let code = if expect && !matches { 1 } else { 0 };
            let mut o = ok(code, pretty(&v));
            if code == 1 {
                o.stderr = format!("classification of {spec} does not match the input\n");
            }
            Ok(o)
        }
        Command::Verify { suite, algebra, seed: s, trials, chain } => {
            let spec = io::load_algebra(&algebra)?;
            let mut report = run_suite(suite, &spec, seed(s)?, trials)?;
            if let Some(path) = chain {
                report.checks.extend(chain_file_checks(&io::read_chain_file(&path)?));
            }
            let failures: Vec<_> = report.failures().into_iter().cloned().collect();
            let stdout = pretty(&serde_json::to_value(&report).expect("serializable"));
            let stderr = if failures.is_empty() { String::new() } else { pretty(&json!(failures)) };
            Ok(Outcome { code: if failures.is_empty() { 0 } else { 1 }, stdout, stderr })
        }
        Command::Digraph { algebra, count, seed: s, include_zero, projective, format, out } => {
            let spec = io::load_algebra(&algebra)?;
            let g = sample_digraph(&spec, DigraphOptions { count, seed: seed(s)?, include_zero, projective })?;
            let text = match format {
                Format::Dot => g.to_dot(),
                Format::Json => pretty(&json!({
                    "algebra": spec.to_string(),
                    "seed": g.seed,
                    "labels": g.labels,
                    "edges": g.edges,
                    "reduced_classes": reduced_classes(&g),
                })),
            };
            match out {
                Some(p) => {
                    write_file(&p, &text)?;
                    Ok(ok(0, format!("wrote {} vertices, {} edges to {}\n", g.len(), g.edges.len(), p.display())))
                }
                None => Ok(ok(0, text)),
            }
        }
        Command::Witness { kind, a, out } => witness(kind, &a, out.as_deref()),
        Command::Simplicity { algebra } => {
            let r = simplicity_test(&io::load_algebra(&algebra)?)?;
            Ok(ok(0, pretty(&serde_json::to_value(r).expect("serializable"))))
        }
        Command::Dimension { algebra, pool, trials, seed: s } => {
            let spec = io::load_algebra(&algebra)?;
            let r = graph_dimension_search(&spec, pool, trials, seed(s)?)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["algebra"] = json!(spec.to_string());
            Ok(ok(0, pretty(&v)))
        }
    }
}

fn bj_check(a: &Path, b: &Path, method: Method) -> CmdResult {
    let a = io::read_matrix(a)?;
    let b = io::read_matrix(b)?;
    a.same_algebra(&b)?;
    let d = a.algebra().real_dim();
    let exact = || is_bj_orthogonal(&a, &b);
    let brute = || is_bj_orthogonal_bruteforce(&a, &b);
    let (v, code) = match method {
        Method::Exact => {
            let mut v = verdict_json(&exact()?, d);
            v["method"] = json!("exact");
            (v, 0)
        }
        Method::Brute => (json!({ "orthogonal": brute()?, "method": "brute" }), 0),
        Method::Both => {
            let e = exact()?;
            let br = brute()?;
            let mut v = verdict_json(&e, d);
            v["method"] = json!("both");
            v["brute_orthogonal"] = json!(br);
            v["agree"] = json!(e.orthogonal == br);
            (v, if e.orthogonal == br { 0 } else { 1 })
        }
    };
    Ok(ok(code, pretty(&v)))
}

fn chain(algebra: Option<&str>, from: Option<&Path>, out: Option<&Path>, seed: u64) -> CmdResult {
    let c: Chain = match (algebra, from) {
        (Some(alg), _) => {
            let spec = io::load_algebra(alg)?;
            let block = spec.single_block().ok_or(Error::NotSimple(spec.blocks().len()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, block.division_algebra, spec.base_field(), block.n);
            build_maximal_chain(&a)?
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
            if v.get("elements").is_some() {
                let file: ChainFile = serde_json::from_value(v).map_err(|e| Failure::Input(format!("invalid chain file: {e}")))?;
                file.matrices()?;
                file.to_chain()?
            } else {
                let m: MatrixFile = serde_json::from_value(v).map_err(|e| Failure::Input(format!("invalid matrix file: {e}")))?;
                build_maximal_chain(&KMatrix::try_from(m)?)?
            }
        }
        (None, None) => unreachable!("clap requires --algebra or --from"),
    };
    let file = ChainFile::from(&c);
    let mut report = json!({
        "algebra": file.algebra,
        "length": c.len(),
        "n": c.n(),
        "maximal": c.is_maximal(),
        "m0_dims": c.m0_dims(),
    });
    match out {
        Some(p) => {
            write_file(p, &io::to_json(&file))?;
            report["out"] = json!(p.display().to_string());
        }
        None => report["chain"] = serde_json::to_value(&file).expect("serializable"),
    }
    let code = if c.is_maximal() { 0 } else { 1 };
    let mut o = ok(code, pretty(&report));
    if code == 1 {
        o.stderr = format!("chain has length {} but the algebra has n = {}\n", c.len(), c.n());
    }
    Ok(o)
}

fn witness(kind: Kind, a: &Path, out: Option<&Path>) -> CmdResult {
    let a = io::read_matrix(a)?;
    let w = match kind {
        Kind::Right => right_asymmetry_witness(&a)?,
        Kind::Left => left_asymmetry_witness(&a)?,
    };
    let d = a.algebra().real_dim();
    let (holds, reverse) = match kind {
        Kind::Right => ("b_perp_a", "a_perp_b"),
        Kind::Left => ("a_perp_b", "b_perp_a"),
    };
    let mut report = json!({
        "kind": match kind { Kind::Right => "right", Kind::Left => "left" },
        "stage": w.stage,
        holds: verdict_json(&w.holds, d),
        reverse: verdict_json(&w.reverse, d),
        "verified": w.verified(),
    });
    match out {
        Some(p) => {
            write_file(p, &io::matrix_to_json(&w.matrix))?;
            report["out"] = json!(p.display().to_string());
        }
        None => report["witness"] = serde_json::to_value(MatrixFile::from(&w.matrix)).expect("serializable"),
    }
    let mut o = ok(if w.verified() { 0 } else { 1 }, pretty(&report));
    if !w.verified() {
        o.stderr = "witness failed its orthogonality checks\n".into();
    }
    Ok(o)
}
