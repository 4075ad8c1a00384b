//! Brute-force Kauffman bracket of a 1-colored annular braid closure,
//! viewed in the 3-sphere.
//!
//! Every crossing has an A-smoothing and a B-smoothing; the bracket is
//! `sum_states A^{#A - #B} d^{#loops}` with `d = -A^2 - A^-2`. For a positive
//! crossing the A-smoothing is the turnback, for a negative one it is the
//! vertical pair. The framed polynomial reported here is
//! `A^{-writhe} <D>` written in `q` via `A^2 = -q`, which is the
//! normalization under which a 1-labeled loop is worth `q + q^-1` and a
//! positive crossing is `turnback - q^-1 * vertical`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::ladder::{DiagramWord, Letter, Sign};
use crate::qpoly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KauffmanError {
    #[error("the bracket oracle needs n = 2, got {0}")]
    WrongRank(u32),
    #[error("the bracket oracle needs every upright labeled 1")]
    NotOneColored,
    #[error("the bracket oracle accepts crossings only, letter {0} is a rung")]
    HasRungs(usize),
    #[error("the bracket oracle handles at most 20 crossings")]
    TooLarge,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Number of loops after smoothing; `turnback[c]` picks the smoothing of
/// the `c`-th crossing.
fn loops(m: usize, crossings: &[(usize, Sign)], turnback: &[bool]) -> usize {
    let len = crossings.len();
    if len == 0 {
        return m;
    }
    // node (g, u): upright u in the gap below letter g
    let node = |g: usize, u: usize| (g % len) * m + u;
    let mut uf = UnionFind::new(len * m);
    for (t, &(i, _)) in crossings.iter().enumerate() {
        for u in 0..m {
            if u != i && u != i + 1 {
                uf.union(node(t, u), node(t + 1, u));
            }
        }
        if turnback[t] {
            uf.union(node(t, i), node(t, i + 1));
            uf.union(node(t + 1, i), node(t + 1, i + 1));
        } else {
            uf.union(node(t, i), node(t + 1, i));
            uf.union(node(t, i + 1), node(t + 1, i + 1));
        }
    }
    uf.components()
}

/// `<D>` as a Laurent polynomial in `A`.
pub fn bracket(word: &DiagramWord) -> Result<LaurentPoly, KauffmanError> {
    let crossings = crossings_of(word)?;
    let c = crossings.len();
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut total = LaurentPoly::zero();
    for state in 0u32..(1 << c) {
        // bit set: B-smoothing
        let mut a_minus_b = 0i64;
        let turnback: Vec<bool> = crossings
            .iter()
            .enumerate()
            .map(|(k, &(_, s))| {
                let b = state >> k & 1 == 1;
                a_minus_b += if b { -1 } else { 1 };
                let a_is_turnback = s == Sign::Positive;
                a_is_turnback != b
            })
            .collect();
        let l = loops(word.m, &crossings, &turnback);
        total += &LaurentPoly::q_pow(a_minus_b) * &delta.pow(l as u32);
    }
    Ok(total)
}

/// The framed polynomial `A^{-writhe} <D>` with `A^2 = -q`.
pub fn framed_polynomial(word: &DiagramWord) -> Result<LaurentPoly, KauffmanError> {
    let crossings = crossings_of(word)?;
    let writhe: i64 = crossings.iter().map(|&(_, s)| s.as_int()).sum();
    let in_a = bracket(word)?.shift(-writhe);
    let mut out = LaurentPoly::zero();
    for (e, c) in in_a.terms() {
        debug_assert_eq!(e.rem_euclid(2), 0, "odd power of A");
        let h = e / 2;
        let sign = if h.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(h, c * BigInt::from(sign));
    }
    Ok(out)
}

fn crossings_of(word: &DiagramWord) -> Result<Vec<(usize, Sign)>, KauffmanError> {
    if word.n != 2 {
        return Err(KauffmanError::WrongRank(word.n));
    }
    if word.base.0.iter().any(|&a| a != 1) {
        return Err(KauffmanError::NotOneColored);
    }
    let crossings = word
        .letters
        .iter()
        .enumerate()
        .map(|(t, l)| match *l {
            Letter::Crossing { index, sign } => Ok((index - 1, sign)),
            Letter::Rung { .. } => Err(KauffmanError::HasRungs(t + 1)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if crossings.len() > 20 {
        return Err(KauffmanError::TooLarge);
    }
    Ok(crossings)
}
