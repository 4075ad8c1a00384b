//! Annular web evaluation.
//!
//! A crossing-free closed ladder word is rewritten into a `Z[q, q^-1]`-linear
//! combination of nested labeled essential circles. The rewriting uses only
//! relations that hold in the n-bounded quotient of `U_q(gl_m)` together with
//! cyclic rotation of the word (sliding rungs around the annulus):
//!
//! * merge: `E_i^{(a)} E_i^{(b)} = [a+b choose a] E_i^{(a+b)}`, same for `F`;
//! * slide: `F_j` and `E_i` commute for `i != j`;
//! * switch: reading bottom to top from weight `(k, l)` on uprights
//!   `(i, i+1)`,
//!   `F_i^{(j1)} E_i^{(j2)} = sum_{j'} [k - j1 - l + j2 choose j'] E_i^{(j2-j')} F_i^{(j1-j')}`,
//!   where the binomial top may be negative.
//!
//! Terms passing through a weight with an entry outside `0..=n` vanish and
//! are dropped as soon as they appear.
//!
//! The canonical strategy frees the outermost upright first. It picks a
//! valley on upright 1 (an `F_1` followed, cyclically, by the next index-1
//! rung being an `E_1`), rotates the word so the `F_1` comes first, sorts the
//! rungs trapped between the pair so that every `E` sits below every `F`,
//! slides the `E` block under the `F_1` and the `F` block over the `E_1`, and
//! switches the pair. Each such step either removes an index-1 rung or raises
//! one label on upright 1, so the process ends once upright 1 carries no
//! rungs; its label is then recorded as a circle and the upright deleted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ladder::{self, DiagramWord, Direction, LadderError, Letter};
use crate::qpoly::{quantum_binomial, LaurentPoly};

/// Multiplier in the default rewrite budget
/// `STEP_BUDGET_FACTOR * max(1, rungs) * (n * m)^2`.
pub const STEP_BUDGET_FACTOR: u64 = 4096;

/// Environment variable overriding the rewrite budget.
pub const STEP_BUDGET_ENV: &str = "ANNULAR_STEP_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error("word contains crossings; resolve them first")]
    HasCrossings,
    #[error("rewrite budget of {budget} steps exceeded")]
    NonTerminating { budget: u64 },
    #[error("n mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
}

/// Labels of a family of nested essential circles, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CircleMultiset(Vec<u32>);

impl CircleMultiset {
    pub fn new(mut labels: Vec<u32>) -> Self {
        labels.sort_unstable();
        Self(labels)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::new(v)
    }
}

/// A finitely supported map from circle multisets to coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SkeinElement {
    terms: BTreeMap<CircleMultiset, LaurentPoly>,
}

impl SkeinElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty diagram.
    pub fn one() -> Self {
        Self::from_term(CircleMultiset::empty(), LaurentPoly::one())
    }

    pub fn from_term(circles: CircleMultiset, coeff: LaurentPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(circles, coeff);
        s
    }

    pub fn circle(label: u32) -> Self {
        Self::from_term(CircleMultiset::new(vec![label]), LaurentPoly::one())
    }

    pub fn add_term(&mut self, circles: CircleMultiset, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(circles).or_default();
        *entry += coeff;
        if entry.is_zero() {
            // re-borrow to remove the now-zero entry
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CircleMultiset, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, circles: &CircleMultiset) -> LaurentPoly {
        self.terms.get(circles).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, other: &SkeinElement) {
        for (c, p) in &other.terms {
            self.add_term(c.clone(), p.clone());
        }
    }

    pub fn scaled(&self, p: &LaurentPoly) -> SkeinElement {
        let mut out = SkeinElement::zero();
        for (c, x) in &self.terms {
            out.add_term(c.clone(), x * p);
        }
        out
    }

    /// Drop every `n`-labeled circle, which is trivial after sl_n
    /// normalization.
    pub fn strip_label(&self, label: u32) -> SkeinElement {
        let mut out = SkeinElement::zero();
        for (c, x) in &self.terms {
            let kept = c.0.iter().copied().filter(|&a| a != label).collect();
            out.add_term(CircleMultiset::new(kept), x.clone());
        }
        out
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(LaurentPoly::has_nonnegative_coefficients)
    }
}

impl fmt::Debug for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (c, p)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p}){{{}}}", join(c.labels()))?;
        }
        Ok(())
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireSkeinTerm {
    circles: Vec<u32>,
    coeff: LaurentPoly,
}

impl Serialize for SkeinElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<WireSkeinTerm> = self
            .terms
            .iter()
            .map(|(c, p)| WireSkeinTerm {
                circles: c.0.clone(),
                coeff: p.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SkeinElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<WireSkeinTerm>::deserialize(deserializer)?;
        let mut out = SkeinElement::zero();
        for t in terms {
            out.add_term(CircleMultiset::new(t.circles), t.coeff);
        }
        Ok(out)
    }
}

/// Product in the annular skein algebra: annular nesting, i.e. union of
/// circle multisets.
pub fn multiply(x: &SkeinElement, y: &SkeinElement) -> SkeinElement {
    let mut out = SkeinElement::zero();
    for (c1, p1) in &x.terms {
        for (c2, p2) in &y.terms {
            out.add_term(c1.union(c2), p1 * p2);
        }
    }
    out
}

/// A partition, weakly decreasing with positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn row(k: u32) -> Self {
        Self::new(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Delete full-height columns of an `n`-row partition.
    pub fn sl_normalized(&self, n: u32) -> Partition {
        if self.0.len() == n as usize && n > 0 {
            let last = *self.0.last().expect("nonempty");
            Partition::new(self.0.iter().map(|p| p - last).collect())
        } else {
            self.clone()
        }
    }
}

/// A finitely supported map from partitions (irreducible classes) to
/// coefficients: an element of `Z[q, q^-1] (x) R_n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RepClass {
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl RepClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(p: Partition, coeff: LaurentPoly) -> Self {
        let mut r = Self::zero();
        r.add_term(p, coeff);
        r
    }

    pub fn add_term(&mut self, p: Partition, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&mut self, other: &RepClass) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> LaurentPoly {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sl_normalized(&self, n: u32) -> RepClass {
        let mut out = RepClass::zero();
        for (p, c) in &self.terms {
            out.add_term(p.sl_normalized(n), c.clone());
        }
        out
    }

    /// Coefficientwise specialization at `q = 1`.
    pub fn at_q_one(&self) -> RepClass {
        let mut out = RepClass::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), LaurentPoly::from(c.eval_at_one()));
        }
        out
    }
}

impl fmt::Debug for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (p, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})s[{}]", join(p.parts()))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRepTerm {
    partition: Vec<u32>,
    coeff: LaurentPoly,
}

impl Serialize for RepClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<WireRepTerm> = self
            .terms
            .iter()
            .map(|(p, c)| WireRepTerm {
                partition: p.0.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RepClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<WireRepTerm>::deserialize(deserializer)?;
        let mut out = RepClass::zero();
        for t in terms {
            out.add_term(Partition::new(t.partition), t.coeff);
        }
        Ok(out)
    }
}

/// Partitions obtained from `lambda` by adding a vertical strip of `a`
/// boxes, keeping at most `max_rows` rows.
pub fn add_vertical_strip(lambda: &Partition, a: u32, max_rows: usize) -> Vec<Partition> {
    let rows = (lambda.rows() + a as usize).min(max_rows);
    let mut base = lambda.0.clone();
    base.resize(rows, 0);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    strip_rec(&base, a as usize, 0, &mut chosen, &mut out);
    out
}

fn strip_rec(base: &[u32], remaining: usize, row: usize, chosen: &mut Vec<bool>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        let mut mu: Vec<u32> = base.to_vec();
        for (r, &c) in chosen.iter().enumerate() {
            if c {
                mu[r] += 1;
            }
        }
        out.push(Partition::new(mu));
        return;
    }
    if row >= base.len() || base.len() - row < remaining {
        return;
    }
    // adding to `row` keeps a partition iff the row above stays at least as long
    let can_add = row == 0 || {
        let above = base[row - 1] + u32::from(chosen[row - 1]);
        base[row] < above
    };
    if can_add {
        chosen.push(true);
        strip_rec(base, remaining - 1, row + 1, chosen, out);
        chosen.pop();
    }
    chosen.push(false);
    strip_rec(base, remaining, row + 1, chosen, out);
    chosen.pop();
}

/// Expand the product `e_{a_1} ... e_{a_k}` of elementary classes in the
/// Schur basis of polynomial gl_n representations.
pub fn elementary_product(labels: &[u32], n: u32) -> BTreeMap<Partition, BigInt> {
    let mut current: BTreeMap<Partition, BigInt> = BTreeMap::new();
    current.insert(Partition::empty(), BigInt::from(1));
    for &a in labels {
        let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (lambda, c) in &current {
            for mu in add_vertical_strip(lambda, a, n as usize) {
                *next.entry(mu).or_default() += c;
            }
        }
        current = next;
    }
    current
}

/// Image of a skein element in the irreducible basis: circle label `a` is
/// the class of the `a`-th exterior power, products expand by the dual Pieri
/// rule. With `sln_normalize`, full columns are removed (`e_n = 1`).
pub fn to_irreducible(x: &SkeinElement, n: u32, sln_normalize: bool) -> RepClass {
    let mut out = RepClass::zero();
    for (circles, coeff) in &x.terms {
        for (lambda, c) in elementary_product(circles.labels(), n) {
            let lambda = if sln_normalize {
                lambda.sl_normalized(n)
            } else {
                lambda
            };
            out.add_term(lambda, coeff.scale(&c));
        }
    }
    out
}

/// Embed the annulus in S^3: a label-`a` circle becomes its quantum
/// dimension `[n choose a]`.
pub fn evaluate_in_s3(x: &SkeinElement, n: u32) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (circles, coeff) in &x.terms {
        let mut term = coeff.clone();
        for &a in circles.labels() {
            term = &term * &quantum_binomial(n as i64, a as u64);
        }
        out += term;
    }
    out
}

/// Choices made while rewriting. Every strategy must give the same result.
pub trait Strategy {
    /// Pick one of `options` (always at least one) alternatives.
    fn choose(&mut self, options: usize) -> usize;
    /// Whether to merge adjacent same-direction rungs when possible.
    fn merge(&mut self) -> bool;
}

/// Deterministic strategy: first option, always merge.
#[derive(Debug, Default, Clone, Copy)]
pub struct Canonical;

impl Strategy for Canonical {
    fn choose(&mut self, _options: usize) -> usize {
        0
    }

    fn merge(&mut self) -> bool {
        true
    }
}

/// Seeded random choices, used to check that evaluation is independent of
/// the rewriting order.
#[derive(Debug, Clone)]
pub struct Randomized {
    rng: ChaCha8Rng,
}

impl Randomized {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Strategy for Randomized {
    fn choose(&mut self, options: usize) -> usize {
        self.rng.gen_range(0..options)
    }

    fn merge(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

/// Counters collected during one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub steps: u64,
    pub budget: u64,
    /// Switches whose binomial top argument was negative.
    pub signed_switches: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Rung {
    dir: Direction,
    /// 0-based: joins uprights `index` and `index + 1`.
    index: u32,
    k: u32,
}

impl Rung {
    fn apply(&self, w: &mut [u32]) {
        let i = self.index as usize;
        match self.dir {
            Direction::E => {
                w[i] += self.k;
                w[i + 1] -= self.k;
            }
            Direction::F => {
                w[i] -= self.k;
                w[i + 1] += self.k;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    circles: Vec<u32>,
    base: Vec<u32>,
    letters: Vec<Rung>,
}

/// Default budget for a word; `ANNULAR_STEP_BUDGET` overrides it.
pub fn step_budget(word: &DiagramWord) -> u64 {
    if let Ok(v) = std::env::var(STEP_BUDGET_ENV) {
        if let Ok(b) = v.trim().parse::<u64>() {
            return b;
        }
    }
    let rungs = word.rung_count().max(1) as u64;
    let nm = word.n as u64 * word.m.max(1) as u64;
    STEP_BUDGET_FACTOR.saturating_mul(rungs).saturating_mul(nm * nm)
}

/// Evaluate a crossing-free closed word with the canonical strategy.
pub fn evaluate(word: &DiagramWord) -> Result<SkeinElement, SkeinError> {
    evaluate_with(word, &mut Canonical, None).map(|(s, _)| s)
}

/// Evaluate with an explicit strategy and optional budget override.
pub fn evaluate_with(
    word: &DiagramWord,
    strategy: &mut dyn Strategy,
    budget: Option<u64>,
) -> Result<(SkeinElement, EvalStats), SkeinError> {
    ladder::validate(word)?;
    if word.has_crossings() {
        return Err(SkeinError::HasCrossings);
    }
    let letters = word
        .letters
        .iter()
        .map(|l| match *l {
            Letter::Rung {
                dir,
                index,
                thickness,
            } => Rung {
                dir,
                index: (index - 1) as u32,
                k: thickness,
            },
            Letter::Crossing { .. } => unreachable!("checked above"),
        })
        .collect();
    let start = State {
        circles: Vec::new(),
        base: word.base.0.clone(),
        letters,
    };
    let mut ev = Evaluator {
        n: word.n,
        strategy,
        stats: EvalStats {
            budget: budget.unwrap_or_else(|| step_budget(word)),
            ..EvalStats::default()
        },
    };
    let result = ev.run(start)?;
    Ok((result, ev.stats))
}

/// Evaluate with seeded random choices, optionally reflecting the word
/// first (reflection reverses the upright order and so frees the innermost
/// upright first).
pub fn evaluate_randomized(word: &DiagramWord, seed: u64) -> Result<SkeinElement, SkeinError> {
    let mut strategy = Randomized::new(seed);
    let reflect = strategy.rng().gen_bool(0.5);
    let mut w = if reflect { word.reflected() } else { word.clone() };
    if !w.letters.is_empty() {
        let k = strategy.rng().gen_range(0..w.letters.len());
        w = w.rotated(k)?;
    }
    evaluate_with(&w, &mut strategy, None).map(|(s, _)| s)
}

enum Step {
    Done(Vec<u32>),
    Rewrite(Vec<(LaurentPoly, State)>),
}

struct Evaluator<'a> {
    n: u32,
    strategy: &'a mut dyn Strategy,
    stats: EvalStats,
}

impl Evaluator<'_> {
    fn tick(&mut self) -> Result<(), SkeinError> {
        self.stats.steps += 1;
        if self.stats.steps > self.stats.budget {
            return Err(SkeinError::NonTerminating {
                budget: self.stats.budget,
            });
        }
        Ok(())
    }

    fn run(&mut self, start: State) -> Result<SkeinElement, SkeinError> {
        let mut pending: BTreeMap<State, LaurentPoly> = BTreeMap::new();
        pending.insert(start, LaurentPoly::one());
        let mut out = SkeinElement::zero();
        while !pending.is_empty() {
            let pick = self.strategy.choose(pending.len());
            let key = pending.keys().nth(pick).expect("in range").clone();
            let coeff = pending.remove(&key).expect("present");
            self.tick()?;
            match self.step(key)? {
                Step::Done(circles) => out.add_term(CircleMultiset::new(circles), coeff),
                Step::Rewrite(terms) => {
                    for (c, s) in terms {
                        debug_assert!(self.is_valid(&s), "rewrite produced invalid state");
                        let entry = pending.entry(s.clone()).or_default();
                        *entry += &c * &coeff;
                        if entry.is_zero() {
                            pending.remove(&s);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn is_valid(&self, s: &State) -> bool {
        let mut w = s.base.clone();
        if w.iter().any(|&a| a > self.n) {
            return false;
        }
        for r in &s.letters {
            let i = r.index as usize;
            if i + 1 >= w.len() {
                return false;
            }
            let (a, b) = (w[i] as i64, w[i + 1] as i64);
            let (a, b) = match r.dir {
                Direction::E => (a + r.k as i64, b - r.k as i64),
                Direction::F => (a - r.k as i64, b + r.k as i64),
            };
            let n = self.n as i64;
            if !(0..=n).contains(&a) || !(0..=n).contains(&b) {
                return false;
            }
            r.apply(&mut w);
        }
        w == s.base
    }

    fn step(&mut self, mut s: State) -> Result<Step, SkeinError> {
        // free uprights that no rung touches
        while !s.base.is_empty() && !s.letters.iter().any(|r| r.index == 0) {
            let a = s.base.remove(0);
            if a > 0 {
                s.circles.push(a);
            }
            for r in &mut s.letters {
                r.index -= 1;
            }
        }
        if s.base.is_empty() {
            debug_assert!(s.letters.is_empty());
            return Ok(Step::Done(s.circles));
        }

        if self.strategy.merge() {
            if let Some(p) = (0..s.letters.len().saturating_sub(1)).find(|&p| {
                let (x, y) = (s.letters[p], s.letters[p + 1]);
                x.dir == y.dir && x.index == y.index
            }) {
                let (x, y) = (s.letters[p], s.letters[p + 1]);
                let coeff = quantum_binomial((x.k + y.k) as i64, x.k as u64);
                s.letters[p].k += y.k;
                s.letters.remove(p + 1);
                return Ok(Step::Rewrite(vec![(coeff, s)]));
            }
        }

        let positions: Vec<usize> = s
            .letters
            .iter()
            .enumerate()
            .filter(|(_, r)| r.index == 0)
            .map(|(p, _)| p)
            .collect();
        let r = positions.len();
        let valleys: Vec<(usize, usize)> = (0..r)
            .filter_map(|j| {
                let (p, q) = (positions[j], positions[(j + 1) % r]);
                (s.letters[p].dir == Direction::F && s.letters[q].dir == Direction::E).then_some((p, q))
            })
            .collect();
        // a closed word always has an F_1 followed cyclically by an E_1
        debug_assert!(!valleys.is_empty(), "no valley on upright 1");
        let (p, q) = valleys[self.strategy.choose(valleys.len())];

        // rotate so the chosen F_1 comes first
        let len = s.letters.len();
        let mut base = s.base.clone();
        for r in &s.letters[..p] {
            r.apply(&mut base);
        }
        let mut rotated = s.letters[p..].to_vec();
        rotated.extend_from_slice(&s.letters[..p]);
        let q = (q + len - p) % len;
        let f1 = rotated[0];
        let e1 = rotated[q];
        let trapped = rotated[1..q].to_vec();
        let rest = rotated[q + 1..].to_vec();

        let mut after_f = base.clone();
        f1.apply(&mut after_f);
        let sorted = self.sort_segment(&after_f, trapped)?;

        let mut out = Vec::new();
        for (coeff, seg) in sorted {
            let split = seg
                .iter()
                .position(|r| r.dir == Direction::F)
                .unwrap_or(seg.len());
            let (e_block, f_block) = seg.split_at(split);
            let mut w = base.clone();
            for r in e_block {
                r.apply(&mut w);
            }
            for (c, replacement) in self.switch(&w, f1, e1) {
                let mut letters = e_block.to_vec();
                letters.extend(replacement);
                letters.extend_from_slice(f_block);
                letters.extend_from_slice(&rest);
                out.push((
                    &coeff * &c,
                    State {
                        circles: s.circles.clone(),
                        base: base.clone(),
                        letters,
                    },
                ));
            }
        }
        Ok(Step::Rewrite(out))
    }

    /// Rewrite a linear segment (rungs on indices >= 1, starting at weight
    /// `start`) so that all `E` rungs come before all `F` rungs.
    fn sort_segment(
        &mut self,
        start: &[u32],
        segment: Vec<Rung>,
    ) -> Result<Vec<(LaurentPoly, Vec<Rung>)>, SkeinError> {
        let mut pending: BTreeMap<Vec<Rung>, LaurentPoly> = BTreeMap::new();
        pending.insert(segment, LaurentPoly::one());
        let mut done: BTreeMap<Vec<Rung>, LaurentPoly> = BTreeMap::new();
        while !pending.is_empty() {
            let pick = self.strategy.choose(pending.len());
            let seg = pending.keys().nth(pick).expect("in range").clone();
            let coeff = pending.remove(&seg).expect("present");
            let inversions: Vec<usize> = (0..seg.len().saturating_sub(1))
                .filter(|&p| seg[p].dir == Direction::F && seg[p + 1].dir == Direction::E)
                .collect();
            if inversions.is_empty() {
                add_to(&mut done, seg, coeff);
                continue;
            }
            self.tick()?;
            if self.strategy.merge() {
                if let Some(p) = (0..seg.len() - 1)
                    .find(|&p| seg[p].dir == seg[p + 1].dir && seg[p].index == seg[p + 1].index)
                {
                    let mut merged = seg.clone();
                    let c = quantum_binomial((seg[p].k + seg[p + 1].k) as i64, seg[p].k as u64);
                    merged[p].k += seg[p + 1].k;
                    merged.remove(p + 1);
                    add_to(&mut pending, merged, &coeff * &c);
                    continue;
                }
            }
            let p = inversions[self.strategy.choose(inversions.len())];
            let (f, e) = (seg[p], seg[p + 1]);
            if f.index != e.index {
                let mut swapped = seg.clone();
                swapped.swap(p, p + 1);
                add_to(&mut pending, swapped, coeff);
                continue;
            }
            let mut w = start.to_vec();
            for r in &seg[..p] {
                r.apply(&mut w);
            }
            for (c, replacement) in self.switch(&w, f, e) {
                let mut next = seg[..p].to_vec();
                next.extend(replacement);
                next.extend_from_slice(&seg[p + 2..]);
                add_to(&mut pending, next, &coeff * &c);
            }
        }
        Ok(done.into_iter().map(|(s, c)| (c, s)).collect())
    }

    /// The switch relation for `F_i^{(j1)}` followed by `E_i^{(j2)}` acting
    /// on weight `w`. Terms through out-of-range weights are dropped.
    fn switch(&mut self, w: &[u32], f: Rung, e: Rung) -> Vec<(LaurentPoly, Vec<Rung>)> {
        debug_assert_eq!(f.index, e.index);
        let i = f.index as usize;
        let (k, l) = (w[i] as i64, w[i + 1] as i64);
        let (j1, j2) = (f.k as i64, e.k as i64);
        let top = k - j1 - l + j2;
        if top < 0 {
            self.stats.signed_switches += 1;
        }
        let n = self.n as i64;
        let mut out = Vec::new();
        for jp in 0..=j1.min(j2) {
            let mid_left = k + j2 - jp;
            let mid_right = l - j2 + jp;
            if !(0..=n).contains(&mid_left) || !(0..=n).contains(&mid_right) {
                continue;
            }
            let c = quantum_binomial(top, jp as u64);
            if c.is_zero() {
                continue;
            }
            let mut replacement = Vec::with_capacity(2);
            if j2 - jp > 0 {
                replacement.push(Rung {
                    dir: Direction::E,
                    index: f.index,
                    k: (j2 - jp) as u32,
                });
            }
            if j1 - jp > 0 {
                replacement.push(Rung {
                    dir: Direction::F,
                    index: f.index,
                    k: (j1 - jp) as u32,
                });
            }
            out.push((c, replacement));
        }
        out
    }
}

fn add_to<K: Ord + Clone>(map: &mut BTreeMap<K, LaurentPoly>, key: K, coeff: LaurentPoly) {
    let entry = map.entry(key.clone()).or_default();
    *entry += coeff;
    if entry.is_zero() {
        map.remove(&key);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::colored_unknot;
    use crate::qpoly::quantum_int;

    fn cm(v: &[u32]) -> CircleMultiset {
        CircleMultiset::new(v.to_vec())
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn lone_upright() {
        for n in 1..=4 {
            for a in 1..=n {
                let w = DiagramWord::new(n, vec![a], vec![]);
                assert_eq!(evaluate(&w).unwrap(), SkeinElement::circle(a));
            }
        }
    }

    #[test]
    fn digon_on_one_one() {
        let w = DiagramWord::new(2, vec![1, 1], vec![Letter::e(1, 1), Letter::f(1, 1)]);
        assert_eq!(
            evaluate(&w).unwrap(),
            SkeinElement::from_term(cm(&[2]), quantum_int(2))
        );
    }

    #[test]
    fn trivial_unknots() {
        let w = DiagramWord::new(2, vec![2, 0], vec![Letter::f(1, 1), Letter::e(1, 1)]);
        assert_eq!(
            evaluate(&w).unwrap(),
            SkeinElement::from_term(cm(&[2]), quantum_int(2))
        );
        let w = DiagramWord::new(3, vec![3, 0], vec![Letter::f(1, 2), Letter::e(1, 2)]);
        assert_eq!(
            evaluate(&w).unwrap(),
            SkeinElement::from_term(cm(&[3]), lp(&[(2, 1), (0, 1), (-2, 1)]))
        );
    }

    #[test]
    fn unknot_normalization() {
        for n in 1..=4u32 {
            for a in 1..=n {
                assert_eq!(
                    evaluate(&colored_unknot(n, a, true)).unwrap(),
                    SkeinElement::circle(a)
                );
                assert_eq!(
                    evaluate(&colored_unknot(n, a, false)).unwrap(),
                    SkeinElement::from_term(cm(&[n]), quantum_binomial(n as i64, a as u64))
                );
            }
        }
    }

    #[test]
    fn zero_labels_are_deleted() {
        let w = DiagramWord::new(3, vec![0, 2, 0], vec![]);
        assert_eq!(evaluate(&w).unwrap(), SkeinElement::circle(2));
        let w = DiagramWord::new(3, vec![0, 0], vec![]);
        assert_eq!(evaluate(&w).unwrap(), SkeinElement::one());
    }

    #[test]
    fn crossings_rejected() {
        let w = DiagramWord::new(
            2,
            vec![1, 1],
            vec![Letter::crossing(1, crate::ladder::Sign::Positive)],
        );
        assert_eq!(evaluate(&w), Err(SkeinError::HasCrossings));
    }

    #[test]
    fn budget_fuse_fires_when_tiny() {
        let w = DiagramWord::new(2, vec![1, 1], vec![Letter::e(1, 1), Letter::f(1, 1)]);
        assert!(matches!(
            evaluate_with(&w, &mut Canonical, Some(1)),
            Err(SkeinError::NonTerminating { budget: 1 })
        ));
    }

    #[test]
    fn multiplication() {
        let one = SkeinElement::circle(1);
        assert_eq!(
            multiply(&one, &one),
            SkeinElement::from_term(cm(&[1, 1]), LaurentPoly::one())
        );
        let x = SkeinElement::from_term(cm(&[2, 3]), quantum_int(3));
        assert_eq!(multiply(&SkeinElement::one(), &x), x);
        let a = SkeinElement::from_term(cm(&[2]), LaurentPoly::q_pow(1));
        let b = SkeinElement::from_term(cm(&[1]), LaurentPoly::q_pow(-1));
        assert_eq!(
            multiply(&a, &b),
            SkeinElement::from_term(cm(&[1, 2]), LaurentPoly::one())
        );
    }

    #[test]
    fn pieri_examples() {
        let x = SkeinElement::from_term(cm(&[1, 1]), LaurentPoly::one());
        let r = to_irreducible(&x, 2, false);
        assert_eq!(r.coeff(&Partition::new(vec![2])), LaurentPoly::one());
        assert_eq!(r.coeff(&Partition::new(vec![1, 1])), LaurentPoly::one());
        assert_eq!(r.len(), 2);

        for n in 1..=5 {
            let r = to_irreducible(&SkeinElement::circle(n), n, true);
            assert_eq!(r, RepClass::from_term(Partition::empty(), LaurentPoly::one()));
        }

        // (q^3 + q^-3){2} - q^-3{1,1} at n = 2
        let mut x = SkeinElement::from_term(cm(&[2]), lp(&[(3, 1), (-3, 1)]));
        x.add_term(cm(&[1, 1]), lp(&[(-3, -1)]));
        let r = to_irreducible(&x, 2, false);
        assert_eq!(r.coeff(&Partition::new(vec![2])), lp(&[(-3, -1)]));
        assert_eq!(r.coeff(&Partition::new(vec![1, 1])), lp(&[(3, 1)]));
        let r = to_irreducible(&x, 2, true);
        assert_eq!(r.coeff(&Partition::new(vec![2])), lp(&[(-3, -1)]));
        assert_eq!(r.coeff(&Partition::empty()), lp(&[(3, 1)]));
    }

    #[test]
    fn rows_are_capped_at_n() {
        // e_1^3 in gl_2 drops the (1,1,1) term
        let x = SkeinElement::from_term(cm(&[1, 1, 1]), LaurentPoly::one());
        let r = to_irreducible(&x, 2, false);
        assert_eq!(r.coeff(&Partition::new(vec![3])), LaurentPoly::one());
        assert_eq!(r.coeff(&Partition::new(vec![2, 1])), LaurentPoly::from(2));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn s3_examples() {
        assert_eq!(evaluate_in_s3(&SkeinElement::circle(1), 2), quantum_int(2));
        assert_eq!(evaluate_in_s3(&SkeinElement::circle(3), 3), LaurentPoly::one());
        let x = SkeinElement::from_term(cm(&[2]), quantum_int(2));
        assert_eq!(evaluate_in_s3(&x, 2), quantum_int(2));
    }

    #[test]
    fn json_shapes() {
        let x = SkeinElement::circle(1);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"[{"circles":[1],"coeff":{"0":1}}]"#
        );
        let r = RepClass::from_term(Partition::row(2), LaurentPoly::monomial(-1, -3));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v.to_string(), r#"[{"coeff":{"-3":-1},"partition":[2]}]"#);
        let back: RepClass = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn switch_with_negative_top() {
        // F then E^(2) on [0,2] at n=2: top = 0-1-2+2 = -1
        let w = DiagramWord::new(
            2,
            vec![1, 1],
            vec![Letter::e(1, 1), Letter::f(1, 2), Letter::e(1, 1)],
        );
        let (_, stats) = evaluate_with(&w, &mut Canonical, None).unwrap();
        assert!(stats.steps > 0);
    }
}
