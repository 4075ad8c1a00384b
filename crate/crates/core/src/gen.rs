//! Seeded random diagrams for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ladder::{self, DiagramWord, Direction, Letter, Sign};

/// Limits for random crossing-free words.
#[derive(Debug, Clone, Copy)]
pub struct WordLimits {
    pub max_n: u32,
    pub max_m: usize,
    pub max_rungs: usize,
    pub max_thickness: u32,
}

impl Default for WordLimits {
    fn default() -> Self {
        Self {
            max_n: 4,
            max_m: 5,
            max_rungs: 8,
            max_thickness: 2,
        }
    }
}

/// A random valid closed crossing-free word.
///
/// A random walk of rungs is followed by the inverse rungs in shuffled
/// order (retrying shuffles that leave `0..=n`, falling back to the mirror
/// order, which always stays in range).
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, limits: WordLimits) -> DiagramWord {
    let n = rng.gen_range(1..=limits.max_n);
    let m = rng.gen_range(1..=limits.max_m);
    let base: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=n)).collect();
    let half = if m < 2 {
        0
    } else {
        rng.gen_range(0..=limits.max_rungs / 2)
    };

    let mut w = base.clone();
    let mut first = Vec::new();
    for _ in 0..half {
        let moves: Vec<Letter> = (1..m)
            .flat_map(|i| {
                let (a, b) = (w[i - 1], w[i]);
                let up = b.min(n - a).min(limits.max_thickness);
                let down = a.min(n - b).min(limits.max_thickness);
                (1..=up)
                    .map(move |k| Letter::e(i, k))
                    .chain((1..=down).map(move |k| Letter::f(i, k)))
            })
            .collect();
        let Some(&l) = moves.choose(rng) else { break };
        let (a, b) = l.act_pair(w[l.index() - 1] as i64, w[l.index()] as i64);
        w[l.index() - 1] = a as u32;
        w[l.index()] = b as u32;
        first.push(l);
    }

    let inverse: Vec<Letter> = first.iter().rev().map(|l| invert(*l)).collect();
    for _ in 0..8 {
        let mut tail = inverse.clone();
        tail.shuffle(rng);
        let mut letters = first.clone();
        letters.extend(tail);
        let word = DiagramWord::new(n, base.clone(), letters);
        if ladder::validate(&word).is_ok() {
            return word;
        }
    }
    let mut letters = first;
    letters.extend(inverse);
    DiagramWord::new(n, base, letters)
}

fn invert(l: Letter) -> Letter {
    match l {
        Letter::Rung {
            dir,
            index,
            thickness,
        } => Letter::Rung {
            dir: match dir {
                Direction::E => Direction::F,
                Direction::F => Direction::E,
            },
            index,
            thickness,
        },
        x => x,
    }
}

/// A braid word on `strands` strands.
pub type Braid = Vec<(usize, Sign)>;

pub fn random_braid<R: Rng + ?Sized>(
    rng: &mut R,
    max_strands: usize,
    max_crossings: usize,
) -> (usize, Braid) {
    let strands = rng.gen_range(1..=max_strands);
    if strands < 2 {
        return (strands, Vec::new());
    }
    let len = rng.gen_range(0..=max_crossings);
    let braid = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands);
            let s = if rng.gen_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            (i, s)
        })
        .collect();
    (strands, braid)
}

/// Colors that are constant on the cycles of the braid permutation, drawn
/// from `1..=max_color`.
pub fn random_colors<R: Rng + ?Sized>(
    rng: &mut R,
    strands: usize,
    braid: &[(usize, Sign)],
    max_color: u32,
) -> Vec<u32> {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &(i, _) in braid {
        perm.swap(i - 1, i);
    }
    let mut colors = vec![0; strands];
    for start in 0..strands {
        if colors[start] != 0 {
            continue;
        }
        let c = rng.gen_range(1..=max_color);
        let mut j = start;
        while colors[j] == 0 {
            colors[j] = c;
            j = perm[j];
        }
    }
    colors
}

/// Closure of a random 1-colored braid.
pub fn random_closure<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_strands: usize,
    max_crossings: usize,
) -> DiagramWord {
    let (strands, braid) = random_braid(rng, max_strands, max_crossings);
    ladder::braid_closure(n, &vec![1; strands], &braid).expect("1-colored braids always close")
}

/// The same link drawn before and after a local move.
#[derive(Debug, Clone)]
pub struct MovePair {
    pub before: DiagramWord,
    pub after: DiagramWord,
}

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn closures(n: u32, colors: &[u32], before: &[(usize, Sign)], after: &[(usize, Sign)]) -> MovePair {
    MovePair {
        before: ladder::braid_closure(n, colors, before).expect("colors follow the permutation"),
        after: ladder::braid_closure(n, colors, after).expect("moves keep the permutation"),
    }
}

/// Insert `sigma_i^s sigma_i^-s` into a random colored braid on at least two
/// strands, colors in `1..=n`.
pub fn random_rii<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_strands: usize,
    max_crossings: usize,
) -> MovePair {
    let (strands, braid) = random_braid(rng, max_strands.max(2), max_crossings);
    let strands = strands.max(2);
    let colors = random_colors(rng, strands, &braid, n);
    let p = rng.gen_range(0..=braid.len());
    let i = rng.gen_range(1..strands);
    let s = random_sign(rng);
    let mut after = braid.clone();
    after.splice(p..p, [(i, s), (i, s.flip())]);
    closures(n, &colors, &braid, &after)
}

/// Replace `sigma_i sigma_{i+1} sigma_i` by `sigma_{i+1} sigma_i sigma_{i+1}`
/// (all of one sign) inside a random colored braid on at least three strands.
pub fn random_riii<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_strands: usize,
    max_crossings: usize,
) -> MovePair {
    let strands = rng.gen_range(3..=max_strands.max(3));
    let len = rng.gen_range(0..=max_crossings);
    let mut braid: Braid = (0..len)
        .map(|_| (rng.gen_range(1..strands), random_sign(rng)))
        .collect();
    let p = rng.gen_range(0..=braid.len());
    let i = rng.gen_range(1..strands - 1);
    let s = random_sign(rng);
    let mut after = braid.clone();
    braid.splice(p..p, [(i, s), (i + 1, s), (i, s)]);
    after.splice(p..p, [(i + 1, s), (i, s), (i + 1, s)]);
    let colors = random_colors(rng, strands, &braid, n);
    closures(n, &colors, &braid, &after)
}

/// Letters of a kink of sign `s` on a `c`-labeled strand at upright 2,
/// drawn against an `n`-labeled upright 1 with a `0`-labeled upright 3.
pub fn kink_letters(c: u32, s: Sign) -> [Letter; 5] {
    [
        Letter::f(2, c),
        Letter::f(1, c),
        Letter::crossing(2, s),
        Letter::e(1, c),
        Letter::e(2, c),
    ]
}

/// A kink inserted into a colored braid closure.
#[derive(Debug, Clone)]
pub struct KinkInstance {
    /// The braid closure itself.
    pub plain: DiagramWord,
    /// The same braid beside an `n`-labeled and a `0`-labeled upright on the
    /// left, so its class is the plain one times the `n`-circle.
    pub walled: DiagramWord,
    /// `walled` with a kink on its first strand at some height.
    pub kinked: DiagramWord,
    pub color: u32,
    pub sign: Sign,
}

pub fn random_ri<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_strands: usize,
    max_crossings: usize,
) -> KinkInstance {
    let (strands, braid) = random_braid(rng, max_strands, max_crossings);
    let colors = random_colors(rng, strands, &braid, n);
    let p = rng.gen_range(0..=braid.len());
    let sign = random_sign(rng);
    let mut labels = colors.clone();
    for &(i, _) in &braid[..p] {
        labels.swap(i - 1, i);
    }
    let c = labels[0];

    let base: Vec<u32> = [n, 0].into_iter().chain(colors.iter().copied()).collect();
    let shifted: Vec<Letter> = braid.iter().map(|&(i, s)| Letter::crossing(i + 2, s)).collect();
    let mut kinked = shifted.clone();
    let mut insert = vec![Letter::e(2, c)];
    insert.extend(kink_letters(c, sign));
    insert.push(Letter::f(2, c));
    kinked.splice(p..p, insert);
    KinkInstance {
        plain: ladder::braid_closure(n, &colors, &braid).expect("colors follow the permutation"),
        walled: DiagramWord::new(n, base.clone(), shifted),
        kinked: DiagramWord::new(n, base, kinked),
        color: c,
        sign,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let w = random_word(&mut rng, WordLimits::default());
            ladder::validate(&w).unwrap();
            assert!(w.rung_count() <= 8);
            assert!(w.n <= 4 && w.m <= 5);
        }
    }

    #[test]
    fn colored_braids_close() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (s, b) = random_braid(&mut rng, 3, 6);
            let colors = random_colors(&mut rng, s, &b, 3);
            ladder::braid_closure(3, &colors, &b).unwrap();
        }
    }

    #[test]
    fn moves_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let p = random_rii(&mut rng, 3, 3, 5);
            assert_eq!(p.after.crossing_count(), p.before.crossing_count() + 2);
            let p = random_riii(&mut rng, 3, 4, 4);
            assert_eq!(p.after.crossing_count(), p.before.crossing_count());
            let k = random_ri(&mut rng, 3, 3, 5);
            ladder::validate(&k.walled).unwrap();
            ladder::validate(&k.kinked).unwrap();
            assert!((1..=3).contains(&k.color));
        }
    }
}
