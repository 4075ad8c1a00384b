use annular_core::gen::{random_word, WordLimits};
use annular_core::ladder::colored_unknot;
use annular_core::skein::{evaluate_with, to_irreducible, Canonical, Randomized};
use annular_core::skewhowe::trace_class;
use annular_core::{evaluate, quantum_binomial, CircleMultiset, LaurentPoly, SkeinElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn suite(seed: u64, count: usize) -> Vec<annular_core::DiagramWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_word(&mut rng, WordLimits::default()))
        .collect()
}

#[test]
fn strategies_agree() {
    for (t, w) in suite(1, 100).iter().enumerate() {
        let (a, _) = evaluate_with(w, &mut Randomized::new(2 * t as u64), None).unwrap();
        let (b, _) = evaluate_with(w, &mut Randomized::new(2 * t as u64 + 1), None).unwrap();
        let (c, _) = evaluate_with(w, &mut Canonical, None).unwrap();
        assert_eq!(a, b, "word {t}: {w:?}");
        assert_eq!(a, c, "word {t}: {w:?}");
    }
}

#[test]
fn symmetries_agree() {
    for w in suite(4, 60) {
        let v = evaluate(&w).unwrap();
        assert_eq!(evaluate(&w.reflected()).unwrap(), v);
        let len = w.letters.len().max(1);
        assert_eq!(evaluate(&w.rotated(len / 2).unwrap()).unwrap(), v);
        assert_eq!(annular_core::skein::evaluate_randomized(&w, 17).unwrap(), v);
    }
}

#[test]
fn character_oracle_agrees() {
    for w in suite(1, 100) {
        let v = evaluate(&w).unwrap();
        let ours = to_irreducible(&v, w.n, false).at_q_one();
        assert_eq!(trace_class(&w).unwrap(), ours, "{w:?}");
    }
}

#[test]
fn unknot_normalizations() {
    for n in 1..=4 {
        for a in 1..=n {
            let ess = evaluate(&colored_unknot(n, a, true)).unwrap();
            assert_eq!(ess, SkeinElement::circle(a));
            let triv = evaluate(&colored_unknot(n, a, false)).unwrap();
            let expect =
                SkeinElement::from_term(CircleMultiset::new(vec![n]), quantum_binomial(n as i64, a as u64));
            assert_eq!(triv, expect, "n={n} a={a}");
        }
    }
}

#[test]
fn steps_stay_under_budget() {
    let mut worst = 0.0f64;
    for w in suite(8, 200) {
        let (_, stats) = evaluate_with(&w, &mut Canonical, None).unwrap();
        assert!(stats.steps <= stats.budget);
        worst = worst.max(stats.steps as f64 / stats.budget as f64);
    }
    println!("max steps/budget = {worst:.4}");
}

#[test]
fn positivity_report() {
    let words = suite(1, 100);
    let positive = words
        .iter()
        .filter(|w| evaluate(w).unwrap().all_coefficients_nonnegative())
        .count();
    println!(
        "{positive}/{} evaluations with nonnegative coefficients",
        words.len()
    );
    assert!(LaurentPoly::one().has_nonnegative_coefficients());
}
