//! Decategorified annular link invariant.
//!
//! Each crossing is expanded into crossing-free webs with signs and
//! q-shifts; the signed, shifted sum of their evaluations is the class of
//! the link in the annular skein module.
//!
//! A crossing between labels `x` (upright `i`) and `y` (upright `i+1`)
//! with `a = min(x, y)` and `b = max(x, y)` has `a + 1` terms indexed by
//! `k = 0..=a`:
//!
//! * `x >= y`: the web `E_i^{(k)} F_i^{(b-a+k)}`;
//! * `x < y`: the web `F_i^{(k)} E_i^{(b-a+k)}`.
//!
//! Term `k` sits in homological degree `k - a` with q-shift `k - a` for a
//! positive crossing, and in degree `a - k` with q-shift `a - k` for a
//! negative one. For two 1-labeled strands this is the usual pair
//! (identity, digon).

use serde::Serialize;

use crate::exec::ExecMode;
use crate::ladder::{self, DiagramWord, Direction, Letter, Sign};
use crate::qpoly::LaurentPoly;
use crate::skein::{self, SkeinElement, SkeinError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub hom_degree: i64,
    pub q_shift: i64,
    pub word: DiagramWord,
}

/// One term of a single crossing expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingTerm {
    pub hom_degree: i64,
    pub q_shift: i64,
    pub letters: Vec<Letter>,
}

/// Expansion of the crossing `X_i^sign` sitting at labels `(x, y)`.
pub fn crossing_terms(index: usize, sign: Sign, x: u32, y: u32) -> Vec<CrossingTerm> {
    let (a, b) = (x.min(y), x.max(y));
    (0..=a)
        .map(|k| {
            let (lower, upper) = if x >= y {
                (Direction::E, Direction::F)
            } else {
                (Direction::F, Direction::E)
            };
            let mut letters = Vec::with_capacity(2);
            for (dir, t) in [(lower, k), (upper, b - a + k)] {
                if t > 0 {
                    letters.push(Letter::Rung {
                        dir,
                        index,
                        thickness: t,
                    });
                }
            }
            let degree = match sign {
                Sign::Positive => k as i64 - a as i64,
                Sign::Negative => a as i64 - k as i64,
            };
            CrossingTerm {
                hom_degree: degree,
                q_shift: degree,
                letters,
            }
        })
        .collect()
}

/// All nonvanishing crossing-free resolutions of a word, in lexicographic
/// order of the per-crossing term choices.
pub fn resolve_crossings(word: &DiagramWord) -> Result<Vec<Resolution>, SkeinError> {
    let weights = ladder::validate(word)?;
    // per letter: the list of alternatives it expands to
    let options: Vec<Vec<CrossingTerm>> = word
        .letters
        .iter()
        .enumerate()
        .map(|(t, l)| match *l {
            Letter::Crossing { index, sign } => {
                let w = &weights[t].0;
                crossing_terms(index, sign, w[index - 1], w[index])
            }
            rung => vec![CrossingTerm {
                hom_degree: 0,
                q_shift: 0,
                letters: vec![rung],
            }],
        })
        .collect();

    let mut out = vec![Resolution {
        hom_degree: 0,
        q_shift: 0,
        word: DiagramWord {
            letters: Vec::new(),
            ..word.clone()
        },
    }];
    for choice in &options {
        let mut next = Vec::with_capacity(out.len() * choice.len());
        for r in &out {
            for term in choice {
                let mut w = r.word.clone();
                w.letters.extend_from_slice(&term.letters);
                next.push(Resolution {
                    hom_degree: r.hom_degree + term.hom_degree,
                    q_shift: r.q_shift + term.q_shift,
                    word: w,
                });
            }
        }
        out = next;
    }
    // webs through labels outside 0..=n vanish
    out.retain(|r| ladder::validate(&r.word).is_ok());
    Ok(out)
}

/// Options for [`link_class_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassOptions {
    pub mode: ExecMode,
    /// Drop `n`-labeled circles from the result.
    pub strip_n_circles: bool,
}

/// The class of the annular closure in the skein module.
pub fn link_class(word: &DiagramWord) -> Result<SkeinElement, SkeinError> {
    link_class_with(word, ClassOptions::default())
}

pub fn link_class_with(word: &DiagramWord, options: ClassOptions) -> Result<SkeinElement, SkeinError> {
    let resolutions = resolve_crossings(word)?;
    let parts = options.mode.try_map(&resolutions, |r| {
        let value = skein::evaluate(&r.word)?;
        let sign = if r.hom_degree.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok::<_, SkeinError>(value.scaled(&LaurentPoly::monomial(sign, r.q_shift)))
    })?;
    let mut total = SkeinElement::zero();
    for p in &parts {
        total.add(p);
    }
    if options.strip_n_circles {
        total = total.strip_label(word.n);
    }
    Ok(total)
}

/// If `x = c * y` for a unit monomial `c = sign * q^shift`, return
/// `(sign, shift)`.
pub fn unit_ratio(x: &SkeinElement, y: &SkeinElement) -> Option<(i64, i64)> {
    if x.len() != y.len() || x.is_zero() {
        return None;
    }
    let mut ratio = None;
    for (c, p) in x.terms() {
        let r = p.monomial_ratio(&y.coeff(c))?;
        if (r.0 != 1 && r.0 != -1) || ratio.is_some_and(|q| q != r) {
            return None;
        }
        ratio = Some(r);
    }
    ratio
}
