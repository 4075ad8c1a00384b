//! Annular ladder diagrams.
//!
//! A diagram is a gl_m weight (the labels on `m` uprights at the bottom) and
//! a bottom-to-top word of letters. Uprights are numbered `1..=m`, upright 1
//! being the outermost circle of the annulus; the top of the word is glued
//! back to the bottom around the core. Letter indices are 1-based in the
//! public API and JSON, matching the upright numbering.
//!
//! * `E_i^{(k)}` moves `k` units from upright `i+1` to upright `i`.
//! * `F_i^{(k)}` moves `k` units from upright `i` to upright `i+1`.
//! * A crossing on `i` swaps the labels of uprights `i` and `i+1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("entry {value} on upright {upright} after letter {position} is outside 0..={n}")]
    InvalidEntry {
        position: usize,
        upright: usize,
        value: i64,
        n: u32,
    },
    #[error("word does not close: final weight {last} differs from base {base}")]
    NotClosed { base: Weight, last: Weight },
    #[error("braid closure does not return colors {colors:?} to themselves (got {got:?})")]
    ColorMismatch { colors: Vec<u32>, got: Vec<u32> },
    #[error("letter {position} has index {index}, outside 1..{m}")]
    IndexOutOfRange { position: usize, index: usize, m: usize },
    #[error("letter {position} is a rung of zero thickness")]
    ZeroThickness { position: usize },
    #[error("base has {len} entries but m = {m}")]
    LengthMismatch { len: usize, m: usize },
    #[error("n must be positive")]
    ZeroN,
    #[error("malformed letter {position}: {reason}")]
    MalformedLetter { position: usize, reason: String },
}

/// Labels on the uprights at one height of a ladder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, a) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    E,
    F,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::E => Direction::F,
            Direction::F => Direction::E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(s: i64) -> Option<Self> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Rung {
        dir: Direction,
        index: usize,
        thickness: u32,
    },
    Crossing {
        index: usize,
        sign: Sign,
    },
}

impl Letter {
    pub fn e(index: usize, thickness: u32) -> Self {
        Letter::Rung {
            dir: Direction::E,
            index,
            thickness,
        }
    }

    pub fn f(index: usize, thickness: u32) -> Self {
        Letter::Rung {
            dir: Direction::F,
            index,
            thickness,
        }
    }

    pub fn crossing(index: usize, sign: Sign) -> Self {
        Letter::Crossing { index, sign }
    }

    pub fn index(&self) -> usize {
        match *self {
            Letter::Rung { index, .. } | Letter::Crossing { index, .. } => index,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Letter::Crossing { .. })
    }

    /// Entries `(i, i+1)` after this letter acts on `(a, b)`, in signed
    /// arithmetic so out-of-range results can be reported.
    pub fn act_pair(&self, a: i64, b: i64) -> (i64, i64) {
        match *self {
            Letter::Rung {
                dir: Direction::E,
                thickness,
                ..
            } => (a + thickness as i64, b - thickness as i64),
            Letter::Rung {
                dir: Direction::F,
                thickness,
                ..
            } => (a - thickness as i64, b + thickness as i64),
            Letter::Crossing { .. } => (b, a),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Rung {
                dir,
                index,
                thickness,
            } => {
                let d = if dir == Direction::E { 'E' } else { 'F' };
                if thickness == 1 {
                    write!(f, "{d}{index}")
                } else {
                    write!(f, "{d}{index}^({thickness})")
                }
            }
            Letter::Crossing { index, sign } => {
                write!(f, "X{index}{}", if sign == Sign::Positive { '+' } else { '-' })
            }
        }
    }
}

/// A closed annular ladder diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramWord {
    pub n: u32,
    pub m: usize,
    pub base: Weight,
    pub letters: Vec<Letter>,
}

impl DiagramWord {
    pub fn new(n: u32, base: Vec<u32>, letters: Vec<Letter>) -> Self {
        Self {
            n,
            m: base.len(),
            base: Weight(base),
            letters,
        }
    }

    pub fn has_crossings(&self) -> bool {
        self.letters.iter().any(Letter::is_crossing)
    }

    pub fn rung_count(&self) -> usize {
        self.letters.iter().filter(|l| !l.is_crossing()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_crossing()).count()
    }

    /// The word read top-to-bottom: letters reversed, E and F swapped and
    /// crossing signs flipped. The base is unchanged.
    pub fn reversed(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match *l {
                Letter::Rung {
                    dir,
                    index,
                    thickness,
                } => Letter::Rung {
                    dir: dir.opposite(),
                    index,
                    thickness,
                },
                Letter::Crossing { index, sign } => Letter::Crossing {
                    index,
                    sign: sign.flip(),
                },
            })
            .collect();
        Self {
            letters,
            ..self.clone()
        }
    }

    /// Uprights renumbered `i -> m+1-i`. Rungs change direction
    /// (`E_i <-> F_{m-i}`), crossing signs are kept.
    pub fn reflected(&self) -> Self {
        let m = self.m;
        let letters = self
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Rung {
                    dir,
                    index,
                    thickness,
                } => Letter::Rung {
                    dir: dir.opposite(),
                    index: m - index,
                    thickness,
                },
                Letter::Crossing { index, sign } => Letter::Crossing {
                    index: m - index,
                    sign,
                },
            })
            .collect();
        let mut base = self.base.0.clone();
        base.reverse();
        Self {
            n: self.n,
            m,
            base: Weight(base),
            letters,
        }
    }

    /// Cyclic rotation: the word starting at letter `k`, with the base moved
    /// to the weight at that height. Requires a valid word.
    pub fn rotated(&self, k: usize) -> Result<Self, LadderError> {
        let weights = validate(self)?;
        let len = self.letters.len();
        if len == 0 {
            return Ok(self.clone());
        }
        let k = k % len;
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Ok(Self {
            n: self.n,
            m: self.m,
            base: weights[k].clone(),
            letters,
        })
    }
}

impl fmt::Display for DiagramWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {}:", self.n, self.base)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Check the word and return every intermediate weight, base first.
pub fn validate(word: &DiagramWord) -> Result<Vec<Weight>, LadderError> {
    if word.n == 0 {
        return Err(LadderError::ZeroN);
    }
    if word.base.len() != word.m {
        return Err(LadderError::LengthMismatch {
            len: word.base.len(),
            m: word.m,
        });
    }
    let n = word.n as i64;
    let mut current: Vec<i64> = word.base.0.iter().map(|&a| a as i64).collect();
    for (u, &a) in current.iter().enumerate() {
        if a > n {
            return Err(LadderError::InvalidEntry {
                position: 0,
                upright: u + 1,
                value: a,
                n: word.n,
            });
        }
    }
    let mut weights = vec![word.base.clone()];
    for (pos, letter) in word.letters.iter().enumerate() {
        let i = letter.index();
        if i < 1 || i + 1 > word.m {
            return Err(LadderError::IndexOutOfRange {
                position: pos + 1,
                index: i,
                m: word.m,
            });
        }
        if let Letter::Rung { thickness: 0, .. } = letter {
            return Err(LadderError::ZeroThickness { position: pos + 1 });
        }
        let (a, b) = letter.act_pair(current[i - 1], current[i]);
        for (u, v) in [(i, a), (i + 1, b)] {
            if !(0..=n).contains(&v) {
                return Err(LadderError::InvalidEntry {
                    position: pos + 1,
                    upright: u,
                    value: v,
                    n: word.n,
                });
            }
        }
        current[i - 1] = a;
        current[i] = b;
        weights.push(Weight(current.iter().map(|&x| x as u32).collect()));
    }
    let last = weights.last().expect("base is always present").clone();
    if last != word.base {
        return Err(LadderError::NotClosed {
            base: word.base.clone(),
            last,
        });
    }
    Ok(weights)
}

/// Closure of a colored braid on `colors.len()` strands. `braid` lists
/// generators `(i, sign)` with `i` 1-based, bottom to top.
pub fn braid_closure(n: u32, colors: &[u32], braid: &[(usize, Sign)]) -> Result<DiagramWord, LadderError> {
    let m = colors.len();
    let mut perm = colors.to_vec();
    let mut letters = Vec::with_capacity(braid.len());
    for (pos, &(i, sign)) in braid.iter().enumerate() {
        if i < 1 || i + 1 > m {
            return Err(LadderError::IndexOutOfRange {
                position: pos + 1,
                index: i,
                m,
            });
        }
        perm.swap(i - 1, i);
        letters.push(Letter::Crossing { index: i, sign });
    }
    if perm != colors {
        return Err(LadderError::ColorMismatch {
            colors: colors.to_vec(),
            got: perm,
        });
    }
    let word = DiagramWord::new(n, colors.to_vec(), letters);
    validate(&word)?;
    Ok(word)
}

/// An `a`-colored unknot. The essential one is a lone upright; the trivial
/// one is drawn against an outer `n`-labeled upright via a cup and a cap.
pub fn colored_unknot(n: u32, a: u32, essential: bool) -> DiagramWord {
    assert!(1 <= a && a <= n, "unknot color {a} outside 1..={n}");
    if essential {
        DiagramWord::new(n, vec![a], vec![])
    } else {
        DiagramWord::new(n, vec![n, 0], vec![Letter::f(1, a), Letter::e(1, a)])
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireLetter {
    t: String,
    i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireWord {
    n: u32,
    m: usize,
    base: Vec<u32>,
    letters: Vec<WireLetter>,
}

impl Serialize for DiagramWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let letters = self
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Rung {
                    dir,
                    index,
                    thickness,
                } => WireLetter {
                    t: if dir == Direction::E { "E" } else { "F" }.to_string(),
                    i: index,
                    k: Some(thickness),
                    s: None,
                },
                Letter::Crossing { index, sign } => WireLetter {
                    t: "X".to_string(),
                    i: index,
                    k: None,
                    s: Some(sign.as_int()),
                },
            })
            .collect();
        WireWord {
            n: self.n,
            m: self.m,
            base: self.base.0.clone(),
            letters,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiagramWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = WireWord::deserialize(deserializer)?;
        let mut letters = Vec::with_capacity(wire.letters.len());
        for (pos, l) in wire.letters.into_iter().enumerate() {
            let position = pos + 1;
            let bad = |reason: &str| {
                D::Error::custom(LadderError::MalformedLetter {
                    position,
                    reason: reason.to_string(),
                })
            };
            let letter = match l.t.as_str() {
                "E" | "F" => {
                    if l.s.is_some() {
                        return Err(bad("rungs take a thickness k, not a sign s"));
                    }
                    let thickness = l.k.unwrap_or(1);
                    if thickness == 0 {
                        return Err(D::Error::custom(LadderError::ZeroThickness { position }));
                    }
                    let dir = if l.t == "E" { Direction::E } else { Direction::F };
                    Letter::Rung {
                        dir,
                        index: l.i,
                        thickness,
                    }
                }
                "X" => {
                    if l.k.is_some() {
                        return Err(bad("crossings take a sign s, not a thickness k"));
                    }
                    let sign =
                        l.s.and_then(Sign::from_int)
                            .ok_or_else(|| bad("crossing sign s must be 1 or -1"))?;
                    Letter::Crossing { index: l.i, sign }
                }
                other => return Err(bad(&format!("unknown letter type {other:?}"))),
            };
            letters.push(letter);
        }
        Ok(DiagramWord {
            n: wire.n,
            m: wire.m,
            base: Weight(wire.base),
            letters,
        })
    }
}
