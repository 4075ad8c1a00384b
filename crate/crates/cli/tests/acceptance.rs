//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! measured time and limit; the process fails if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use annular_core::exec::ExecMode;
use annular_core::gen::{random_braid, random_ri, random_rii, random_riii, random_word, WordLimits};
use annular_core::invariant::{link_class, unit_ratio};
use annular_core::ladder::{braid_closure, colored_unknot};
use annular_core::sakh::{build_complex, euler_characteristic, homology, TriGradedComplex};
use annular_core::skein::{evaluate_in_s3, evaluate_with, multiply, to_irreducible, Randomized};
use annular_core::skewhowe::trace_class;
use annular_core::{
    evaluate, quantum_binomial, quantum_factorial, CircleMultiset, DiagramWord, LaurentPoly, SkeinElement,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const SEED: u64 = 20_240_601;

fn criterion(
    id: u32,
    name: &str,
    limit: Option<Duration>,
    check: impl FnOnce() -> Result<String, String>,
) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let bound = limit.map_or("no time bound".to_string(), |l| {
        format!("limit {:.0} s", l.as_secs_f64())
    });
    let (status, detail) = match (&outcome, in_time) {
        (Ok(d), true) => ("PASS", d.clone()),
        (Ok(d), false) => ("FAIL", format!("{d}; over time")),
        (Err(e), _) => ("FAIL", e.clone()),
    };
    println!(
        "criterion {id:>2} {status}: {name} ({:.3} s, {bound}) {detail}",
        elapsed.as_secs_f64()
    );
    status == "PASS"
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn annular(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_annular"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

/// 50 seeded 1-colored braid closures at n = 2.
fn braid_suite() -> Vec<DiagramWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..50)
        .map(|_| {
            let (strands, braid) = random_braid(&mut rng, 3, 6);
            braid_closure(2, &vec![1; strands], &braid).unwrap()
        })
        .collect()
}

/// 100 seeded crossing-free closed words.
fn word_suite() -> Vec<DiagramWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    (0..100)
        .map(|_| random_word(&mut rng, WordLimits::default()))
        .collect()
}

fn c01_trefoil_homology() -> bool {
    criterion(
        1,
        "sakh of the trefoil closure at n = 2",
        Some(Duration::from_secs(1)),
        || {
            let v = annular(&["sakh", fixture("trefoil.json").to_str().unwrap()])?;
            let expected = json!([
                {"i": -3, "q": -3, "modules": [2]},
                {"i": -2, "q": -1, "modules": [0]},
                {"i": -1, "q": -1, "modules": [0]},
                {"i": 0, "q": 3, "modules": [0]},
            ]);
            ensure(v["homology"] == expected, || format!("got {}", v["homology"]))?;
            Ok("V2 at (-3,-3); V0 at (-2,-1), (-1,-1), (0,3)".into())
        },
    )
}

fn c02_regression_general_n() -> bool {
    criterion(
        2,
        "regression table for n = 2..5",
        Some(Duration::from_secs(5)),
        || {
            for k in 2..=5u64 {
                let v = annular(&["regression", "--n", &k.to_string()])?;
                let (sym, wedge) = (k * (k + 1) / 2, k * (k - 1) / 2);
                let expected = json!([
                    {"i": -3, "q": -3, "module": [2], "dim": sym},
                    {"i": -2, "q": -1, "module": [1, 1], "dim": wedge},
                    {"i": -1, "q": -1, "module": [1, 1], "dim": wedge},
                    {"i": 0, "q": 3, "module": [1, 1], "dim": wedge},
                ]);
                ensure(v["rows"] == expected, || format!("n={k}: got {}", v["rows"]))?;
            }
            Ok("Sym2 dims 3, 6, 10, 15 and wedge2 dims 1, 3, 6, 10".into())
        },
    )
}

fn c03_decategorification() -> bool {
    criterion(
        3,
        "euler characteristic equals the skein class",
        Some(Duration::from_secs(60)),
        || {
            let suite = braid_suite();
            for w in &suite {
                let c = build_complex(w).map_err(|e| e.to_string())?;
                let chi = euler_characteristic(&c).map_err(|e| e.to_string())?;
                let class = to_irreducible(&link_class(w).map_err(|e| e.to_string())?, 2, true);
                ensure(chi == class, || format!("{w}: {chi} vs {class}"))?;
            }
            Ok(format!("{} braids", suite.len()))
        },
    )
}

fn commutes(c: &TriGradedComplex, ops: &[annular_core::linalg::SparseMatrix]) -> bool {
    c.d.iter()
        .enumerate()
        .all(|(k, d)| d.mul(&ops[k]).sub(&ops[k + 1].mul(d)).is_zero())
}

fn c04_sl2_equivariance() -> bool {
    criterion(
        4,
        "[d,e] = [d,f] = 0 and nonnegative multiplicities",
        None,
        || {
            let suite = braid_suite();
            let mut modules = 0;
            for w in &suite {
                let c = build_complex(w).map_err(|e| e.to_string())?;
                ensure(commutes(&c, &c.e), || format!("{w}: [d,e] != 0"))?;
                ensure(commutes(&c, &c.f), || format!("{w}: [d,f] != 0"))?;
                let h = homology(&c, ExecMode::Parallel).map_err(|e| format!("{w}: {e}"))?;
                for (key, by_w) in &h.dims {
                    let ks = &h.modules[key];
                    let from_modules: usize = ks.iter().map(|&k| k as usize + 1).sum();
                    let total: usize = by_w.values().sum();
                    ensure(from_modules == total, || {
                        format!("{w}: {key:?} dims do not decompose")
                    })?;
                    modules += ks.len();
                }
            }
            Ok(format!(
                "{} complexes, {modules} irreducible summands",
                suite.len()
            ))
        },
    )
}

fn c05_confluence() -> bool {
    criterion(
        5,
        "two randomized strategies agree",
        Some(Duration::from_secs(30)),
        || {
            let suite = word_suite();
            for (t, w) in suite.iter().enumerate() {
                let a =
                    evaluate_with(w, &mut Randomized::new(2 * t as u64), None).map_err(|e| e.to_string())?;
                let b = evaluate_with(w, &mut Randomized::new(2 * t as u64 + 1), None)
                    .map_err(|e| e.to_string())?;
                ensure(a.0 == b.0, || format!("{w}: {} vs {}", a.0, b.0))?;
            }
            Ok(format!("{} words", suite.len()))
        },
    )
}

fn c06_character_oracle() -> bool {
    criterion(6, "q = 1 character oracle agrees", None, || {
        let suite = word_suite();
        for w in &suite {
            let ours = to_irreducible(&evaluate(w).map_err(|e| e.to_string())?, w.n, false).at_q_one();
            let oracle = trace_class(w).map_err(|e| e.to_string())?;
            ensure(ours == oracle, || format!("{w}: {ours} vs {oracle}"))?;
        }
        Ok(format!("{} words", suite.len()))
    })
}

fn c07_unknots() -> bool {
    criterion(7, "colored unknot normalizations, 1 <= a <= n <= 4", None, || {
        let mut count = 0;
        for n in 1..=4 {
            for a in 1..=n {
                let ess = evaluate(&colored_unknot(n, a, true)).map_err(|e| e.to_string())?;
                ensure(ess == SkeinElement::circle(a), || {
                    format!("essential n={n} a={a}: {ess}")
                })?;
                let triv = evaluate(&colored_unknot(n, a, false)).map_err(|e| e.to_string())?;
                let expect = SkeinElement::from_term(
                    CircleMultiset::new(vec![n]),
                    quantum_binomial(n as i64, a as u64),
                );
                ensure(triv == expect, || format!("trivial n={n} a={a}: {triv}"))?;
                count += 2;
            }
        }
        Ok(format!("{count} unknots"))
    })
}

fn c08_reidemeister() -> bool {
    criterion(8, "RII and RIII invariance, RI unit monomial", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
        let class = |w: &DiagramWord| link_class(w).map_err(|e| format!("{w}: {e}"));
        for _ in 0..20 {
            let n = rng.gen_range(1..=3);
            let p = random_rii(&mut rng, n, 3, 6);
            ensure(class(&p.before)? == class(&p.after)?, || {
                format!("RII {}", p.after)
            })?;
            let p = random_riii(&mut rng, n, 3, 6);
            ensure(class(&p.before)? == class(&p.after)?, || {
                format!("RIII {}", p.after)
            })?;
            let k = random_ri(&mut rng, n, 3, 6);
            let base = multiply(&SkeinElement::circle(n), &class(&k.plain)?);
            ensure(class(&k.walled)? == base, || format!("wall {}", k.walled))?;
            let ratio = unit_ratio(&class(&k.kinked)?, &base);
            ensure(ratio.is_some(), || format!("RI {}", k.kinked))?;
        }
        Ok("20 instances of each move".into())
    })
}

fn c09_kauffman_fixture() -> bool {
    criterion(9, "S3 evaluation equals the frozen bracket fixture", None, || {
        let raw = std::fs::read_to_string(fixture("kauffman.json")).map_err(|e| e.to_string())?;
        let frozen: Value = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
        let entries = frozen["fixtures"].as_array().ok_or("no fixtures")?;
        ensure(entries.len() == 20, || format!("{} fixtures", entries.len()))?;
        for f in entries {
            let w: DiagramWord = serde_json::from_value(f["word"].clone()).map_err(|e| e.to_string())?;
            let expect: LaurentPoly =
                serde_json::from_value(f["framed"].clone()).map_err(|e| e.to_string())?;
            let ours = evaluate_in_s3(&link_class(&w).map_err(|e| e.to_string())?, 2);
            ensure(ours == expect, || format!("{w}: {ours} vs {expect}"))?;
        }
        Ok("20 braids, framing A^-writhe with A^2 = -q".into())
    })
}

/// Exact quotient of Laurent polynomials by long division.
fn divide(num: &LaurentPoly, den: &LaurentPoly) -> Option<LaurentPoly> {
    let mut rest = num.clone();
    let mut out = LaurentPoly::zero();
    let top = den.max_degree()?;
    let lead = den.coeff(top);
    while let Some(t) = rest.max_degree() {
        let c = rest.coeff(t);
        if &c % &lead != BigInt::from(0) {
            return None;
        }
        let m = LaurentPoly::monomial(c / &lead, t - top);
        rest = &rest - &(&m * den);
        out += m;
    }
    Some(out)
}

fn classical(a: i64, b: u64) -> BigInt {
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for j in 0..b as i64 {
        num *= a - j;
        den *= j + 1;
    }
    num / den
}

fn c10_quantum_binomials() -> bool {
    criterion(
        10,
        "quantum binomial identities over |a| <= 12, b <= 12",
        None,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
            let samples = 600;
            for _ in 0..samples {
                let a: i64 = rng.gen_range(-12..=12);
                let b: u64 = rng.gen_range(0..=12);
                let p = quantum_binomial(a, b);
                let at = format!("[{a} choose {b}]");
                if a >= 0 && b as i64 <= a {
                    let ua = a as u64;
                    ensure(p == quantum_binomial(a, ua - b), || format!("symmetry {at}"))?;
                    let q = divide(
                        &quantum_factorial(ua),
                        &(&quantum_factorial(b) * &quantum_factorial(ua - b)),
                    );
                    ensure(q.as_ref() == Some(&p), || format!("factorial quotient {at}"))?;
                }
                ensure(p.is_palindromic(), || format!("palindromic {at}"))?;
                if b >= 1 {
                    let (x, y) = (quantum_binomial(a - 1, b), quantum_binomial(a - 1, b - 1));
                    let bb = b as i64;
                    ensure(&x.shift(-bb) + &y.shift(a - bb) == p, || format!("Pascal {at}"))?;
                    ensure(&x.shift(bb) + &y.shift(bb - a) == p, || {
                        format!("mirror Pascal {at}")
                    })?;
                }
                ensure(p.eval_at_one() == classical(a, b), || format!("q = 1 {at}"))?;
                let r = quantum_binomial(-a + b as i64 - 1, b);
                let signed = if b.is_multiple_of(2) { r } else { -r };
                ensure(p == signed, || format!("signed identity {at}"))?;
            }
            Ok(format!("{samples} samples"))
        },
    )
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let results = [
        c01_trefoil_homology(),
        c02_regression_general_n(),
        c03_decategorification(),
        c04_sl2_equivariance(),
        c05_confluence(),
        c06_character_oracle(),
        c07_unknots(),
        c08_reidemeister(),
        c09_kauffman_fixture(),
        c10_quantum_binomials(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
