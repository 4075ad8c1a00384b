use std::fmt::{self, Debug, Display, Write as _};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use annular_core::exec::ExecMode;
use annular_core::gen::{random_closure, random_word, WordLimits};
use annular_core::invariant::{link_class_with, ClassOptions};
use annular_core::kauffman::{bracket, framed_polynomial};
use annular_core::sakh::{build_complex, check_sl2, homology, report};
use annular_core::skein::{evaluate_in_s3, evaluate_randomized, evaluate_with, to_irreducible, Randomized};
use annular_core::skewhowe::{paper_example_complex, trace_class};
use annular_core::{ladder, DiagramWord, SkeinElement};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "annular",
    version,
    about = "Annular link invariants and sutured annular Khovanov homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for every randomized suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a crossing-free word in the annular skein algebra.
    Eval(ClassArgs),
    /// Skein class of a link diagram.
    Invariant(ClassArgs),
    /// Sutured annular Khovanov homology of a 1-colored diagram at n = 2.
    Sakh {
        input: PathBuf,
        /// Verify the sl_2 action on the chain complex first.
        #[arg(long)]
        check_sl2: bool,
    },
    /// Compare evaluation strategies and the q = 1 character oracle on random words.
    OracleCheck {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
    /// Homology table of the degree-zero trefoil complex for general n.
    Regression {
        #[arg(long)]
        n: u32,
    },
    /// Brute-force bracket of a diagram, or a seeded fixture of random braids.
    KauffmanOracle {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Args)]
struct ClassArgs {
    /// Word file, `-` for stdin.
    input: PathBuf,
    /// Override the rank stored in the word.
    #[arg(long)]
    n: Option<u32>,
    /// Expand in the irreducible basis.
    #[arg(long, conflicts_with = "s3")]
    irreducible: bool,
    /// Reduce partitions to sl_n (drop full columns).
    #[arg(long, requires = "irreducible")]
    sln_normalize: bool,
    /// Evaluate in the 3-sphere.
    #[arg(long)]
    s3: bool,
    /// Drop n-labeled circles.
    #[arg(long)]
    strip_n_circles: bool,
}

enum Failure {
    Domain { kind: String, message: String },
    Input(String),
}

impl Failure {
    fn domain<E: Debug + Display>(e: E) -> Self {
        let debug = format!("{e:?}");
        let kind = debug
            .split(|c: char| !c.is_alphanumeric() && c != '_')
            .next()
            .unwrap_or("Error")
            .to_string();
        Failure::Domain {
            kind,
            message: e.to_string(),
        }
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: impl Display) -> Self {
        Self {
            json: serde_json::to_value(value).expect("serializable output"),
            text: text.to_string(),
            ok: true,
        }
    }
}

fn read_word(path: &PathBuf, n: Option<u32>) -> Result<DiagramWord, Failure> {
    let raw = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let mut word: DiagramWord =
        serde_json::from_str(&raw).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if let Some(n) = n {
        word.n = n;
    }
    ladder::validate(&word).map_err(Failure::domain)?;
    Ok(word)
}

fn class_output(x: &SkeinElement, w: &DiagramWord, a: &ClassArgs) -> Output {
    if a.s3 {
        let p = evaluate_in_s3(x, w.n);
        Output::new(&p, &p)
    } else if a.irreducible {
        let r = to_irreducible(x, w.n, a.sln_normalize);
        Output::new(&r, &r)
    } else {
        Output::new(x, x)
    }
}

fn run_class(a: &ClassArgs, crossings_allowed: bool) -> Result<Output, Failure> {
    let w = read_word(&a.input, a.n)?;
    let mut x = if crossings_allowed {
        link_class_with(&w, ClassOptions::default()).map_err(Failure::domain)?
    } else {
        evaluate_with(&w, &mut annular_core::skein::Canonical, None)
            .map_err(Failure::domain)?
            .0
    };
    if a.strip_n_circles {
        x = x.strip_label(w.n);
    }
    Ok(class_output(&x, &w, a))
}

fn run_sakh(input: &PathBuf, check: bool) -> Result<Output, Failure> {
    let w = read_word(input, None)?;
    let complex = build_complex(&w).map_err(Failure::domain)?;
    if check {
        check_sl2(&complex).map_err(Failure::domain)?;
    }
    let h = homology(&complex, ExecMode::Parallel).map_err(Failure::domain)?;
    let rep = report(&complex, &h);
    let mut text = String::from("   i    q  modules\n");
    for row in &rep.homology {
        let mods: Vec<String> = row.modules.iter().map(|k| format!("V{k}")).collect();
        let _ = writeln!(text, "{:>4} {:>4}  {}", row.i, row.q, mods.join(" + "));
    }
    let _ = write!(text, "euler: {}", rep.euler);
    Ok(Output::new(&rep, text))
}

#[derive(Serialize)]
struct TrialFailure {
    trial: usize,
    check: &'static str,
    detail: String,
    word: DiagramWord,
}

fn run_oracle_check(trials: usize, max_n: u32, seed: u64) -> Result<Output, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = WordLimits {
        max_n,
        ..WordLimits::default()
    };
    let words: Vec<DiagramWord> = (0..trials).map(|_| random_word(&mut rng, limits)).collect();
    let mut failures = Vec::new();
    for (t, w) in words.iter().enumerate() {
        let trial_seed = seed.wrapping_mul(1_000_003).wrapping_add(t as u64);
        let a = evaluate_with(w, &mut Randomized::new(trial_seed), None).map(|r| r.0);
        let b = evaluate_randomized(w, trial_seed ^ 0x9e37_79b9);
        let fail = |check, detail: String| TrialFailure {
            trial: t,
            check,
            detail,
            word: w.clone(),
        };
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {
                let ours = to_irreducible(&a, w.n, false).at_q_one();
                match trace_class(w) {
                    Ok(oracle) if oracle == ours => {}
                    Ok(oracle) => failures.push(fail("oracle", format!("{ours} vs {oracle}"))),
                    Err(e) => failures.push(fail("oracle", e.to_string())),
                }
            }
            (Ok(a), Ok(b)) => failures.push(fail("confluence", format!("{a} vs {b}"))),
            (Err(e), _) | (_, Err(e)) => failures.push(fail("evaluate", e.to_string())),
        }
    }
    let passes = trials - failures.len();
    let value = json!({
        "seed": seed,
        "trials": trials,
        "max_n": max_n,
        "passes": passes,
        "failures": failures,
    });
    let text = format!("{passes}/{trials} trials passed (seed {seed}, max n {max_n})");
    Ok(Output {
        ok: failures.is_empty(),
        ..Output::new(&value, text)
    })
}

fn run_regression(n: u32) -> Result<Output, Failure> {
    if n < 2 {
        return Err(Failure::Input(format!("--n must be at least 2, got {n}")));
    }
    let rows = paper_example_complex(n).map_err(Failure::domain)?;
    let mut text = format!("n = {n}\n   i    q  module  dim\n");
    for r in &rows {
        let parts: Vec<String> = r.module.parts().iter().map(u32::to_string).collect();
        let module = format!("({})", parts.join(","));
        let _ = writeln!(text, "{:>4} {:>4}  {module:<6} {:>5}", r.i, r.q, r.dim);
    }
    Ok(Output::new(&json!({ "n": n, "rows": rows }), text.trim_end()))
}

fn run_kauffman(input: Option<&PathBuf>, trials: usize, seed: u64) -> Result<Output, Failure> {
    let entry = |w: &DiagramWord| -> Result<Value, Failure> {
        let b = bracket(w).map_err(Failure::domain)?;
        let f = framed_polynomial(w).map_err(Failure::domain)?;
        Ok(json!({ "word": w, "bracket": b, "framed": f }))
    };
    if let Some(path) = input {
        let w = read_word(path, None)?;
        let v = entry(&w)?;
        let text = format!("bracket (in A): {}\nframed (in q): {}", v["bracket"], v["framed"]);
        return Ok(Output::new(&v, text));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // crossingless closures are redrawn
    let fixtures = (0..trials)
        .map(|_| loop {
            let w = random_closure(&mut rng, 2, 4, 7);
            if w.crossing_count() > 0 {
                break entry(&w);
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = format!("{} fixtures (seed {seed})", fixtures.len());
    Ok(Output::new(&json!({ "seed": seed, "fixtures": fixtures }), text))
}

struct ErrorJson<'a>(&'a str, &'a str);

impl fmt::Display for ErrorJson<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = json!({ "error": { "kind": self.0, "message": self.1 } });
        write!(f, "{v}")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => run_class(a, false),
        Command::Invariant(a) => run_class(a, true),
        Command::Sakh { input, check_sl2 } => run_sakh(input, *check_sl2),
        Command::OracleCheck { trials, max_n } => run_oracle_check(*trials, *max_n, cli.seed),
        Command::Regression { n } => run_regression(*n),
        Command::KauffmanOracle { input, trials } => run_kauffman(input.as_ref(), *trials, cli.seed),
    };
    match result {
        Ok(out) => {
            if cli.pretty {
                println!("{}", out.text);
            } else {
                println!("{}", out.json);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}", ErrorJson("CheckFailed", "one or more trials failed"));
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain { kind, message }) => {
            eprintln!("{}", ErrorJson(&kind, &message));
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("{}", ErrorJson("MalformedInput", &message));
            ExitCode::from(2)
        }
    }
}
