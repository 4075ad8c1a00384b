//! Classical skew Howe duality at q = 1.
//!
//! The gl_m weight space of weight `a` in the exterior algebra of
//! `C^n (x) C^m` is `L^{a_1} C^n (x) ... (x) L^{a_m} C^n`. Its basis is
//! indexed by tuples of subsets `(S_1, ..., S_m)` of `{1..n}`, the wedge of
//! the variables `x_{c,f}` for `c in S_f`, ordered by factor then color.
//! `E_i = sum_c x_{c,i} d/dx_{c,i+1}` and `F_i` is its mirror; both commute
//! with gl_n. A closed crossing-free word therefore acts on the base weight
//! space by a gl_n-equivariant endomorphism, whose graded trace is a
//! symmetric polynomial: the class of the web in the representation ring.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ladder::{self, DiagramWord, Direction, LadderError, Letter, Weight};
use crate::linalg::{self, SparseMatrix};
use crate::qpoly::LaurentPoly;
use crate::skein::{Partition, RepClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewHoweError {
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error("word contains crossings")]
    HasCrossings,
    #[error("character is not symmetric (leading exponent {0:?})")]
    NotSymmetric(Vec<u32>),
}

/// One subset of colors per tensor factor, as bitmasks.
pub type FockState = Vec<u32>;

/// A sparse vector in a weight space.
pub type Vector = BTreeMap<FockState, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    pub n: u32,
    pub weight: Weight,
    pub states: Vec<FockState>,
}

fn subsets(n: u32, size: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|s| s.count_ones() == size).collect()
}

impl FockBasis {
    /// Basis of `L^{a_1} C^n (x) ... (x) L^{a_m} C^n`; empty if some entry
    /// exceeds `n`.
    pub fn new(n: u32, weight: &[u32]) -> Self {
        let mut states: Vec<FockState> = vec![Vec::new()];
        for &a in weight {
            let choices = if a <= n { subsets(n, a) } else { Vec::new() };
            states = states
                .iter()
                .flat_map(|s| {
                    choices.iter().map(move |&c| {
                        let mut t = s.clone();
                        t.push(c);
                        t
                    })
                })
                .collect();
        }
        Self {
            n,
            weight: Weight(weight.to_vec()),
            states,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &FockState) -> Option<usize> {
        self.states.binary_search(s).ok()
    }
}

/// gl_n weight of a basis vector: how many factors contain each color.
pub fn gl_weight(n: u32, state: &FockState) -> Vec<u32> {
    (0..n)
        .map(|c| state.iter().filter(|&&s| s >> c & 1 == 1).count() as u32)
        .collect()
}

fn below(state: &FockState, factor: usize, color: u32) -> u32 {
    let before: u32 = state[..factor].iter().map(|s| s.count_ones()).sum();
    before + (state[factor] & ((1 << color) - 1)).count_ones()
}

/// One application of `E_i` (`dir = E`) or `F_i` to a basis vector; `i`
/// is 0-based.
fn single(dir: Direction, i: usize, n: u32, state: &FockState) -> Vec<(FockState, i64)> {
    let (from, to) = match dir {
        Direction::E => (i + 1, i),
        Direction::F => (i, i + 1),
    };
    let mut out = Vec::new();
    for c in 0..n {
        if state[from] >> c & 1 == 0 || state[to] >> c & 1 == 1 {
            continue;
        }
        let removed = below(state, from, c);
        let mut t = state.clone();
        t[from] &= !(1 << c);
        let inserted = below(&t, to, c);
        t[to] |= 1 << c;
        let sign = if (removed + inserted).is_multiple_of(2) {
            1
        } else {
            -1
        };
        out.push((t, sign));
    }
    out
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Apply the divided power `E_i^{(k)}` or `F_i^{(k)}` (`i` 0-based): the
/// k-fold composite divided by `k!`.
pub fn apply_rung(dir: Direction, i: usize, k: u32, n: u32, v: &Vector) -> Vector {
    let mut cur = v.clone();
    for _ in 0..k {
        let mut next = Vector::new();
        for (s, c) in &cur {
            for (t, sign) in single(dir, i, n, s) {
                *next.entry(t).or_default() += c * sign;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let kf = factorial(k);
    for c in cur.values_mut() {
        debug_assert!((&*c % &kf).is_zero(), "divided power is not integral");
        *c = &*c / &kf;
    }
    cur
}

/// A linear map between weight spaces, as a matrix from the source basis
/// to the target basis.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub source: FockBasis,
    pub target: FockBasis,
    pub matrix: SparseMatrix,
}

/// The matrix of a rung letter on weight `a`. If the target weight leaves
/// `0..=n` the target basis is empty and the matrix is zero.
pub fn act(letter: &Letter, a: &[u32], n: u32) -> Intertwiner {
    let Letter::Rung {
        dir,
        index,
        thickness,
    } = *letter
    else {
        panic!("act takes rung letters");
    };
    let source = FockBasis::new(n, a);
    let (x, y) = letter.act_pair(a[index - 1] as i64, a[index] as i64);
    let valid = (0..=n as i64).contains(&x) && (0..=n as i64).contains(&y);
    let mut tw = a.to_vec();
    let target = if valid {
        tw[index - 1] = x as u32;
        tw[index] = y as u32;
        FockBasis::new(n, &tw)
    } else {
        FockBasis {
            n,
            weight: Weight(tw),
            states: Vec::new(),
        }
    };
    let mut matrix = SparseMatrix::zeros(target.len(), source.len());
    if valid {
        for (col, s) in source.states.iter().enumerate() {
            let v = Vector::from([(s.clone(), BigInt::one())]);
            for (t, c) in apply_rung(dir, index - 1, thickness, n, &v) {
                let row = target.index_of(&t).expect("image lies in target");
                matrix.add(row, col, c);
            }
        }
    }
    Intertwiner {
        source,
        target,
        matrix,
    }
}

/// Apply a crossing-free word to one vector of its base weight space.
pub fn apply_word(word: &DiagramWord, v: &Vector) -> Vector {
    let mut cur = v.clone();
    for l in &word.letters {
        if let Letter::Rung {
            dir,
            index,
            thickness,
        } = *l
        {
            cur = apply_rung(dir, index - 1, thickness, word.n, &cur);
        }
    }
    cur
}

/// A polynomial in `x_1..x_n`, keyed by exponent vectors.
pub type Character = BTreeMap<Vec<u32>, BigInt>;

/// Monomial expansion of the Schur polynomial `s_lambda(x_1..x_n)` by
/// semistandard tableaux.
pub fn schur_polynomial(lambda: &Partition, n: u32) -> Character {
    let shape = lambda.parts().to_vec();
    let mut out = Character::new();
    if shape.len() > n as usize {
        return out;
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut filling = vec![vec![0u32; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
    fill(&cells, 0, n, &mut filling, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], k: usize, n: u32, t: &mut Vec<Vec<u32>>, out: &mut Character) {
    if k == cells.len() {
        let mut content = vec![0u32; n as usize];
        for (r, c) in cells {
            content[t[*r][*c] as usize - 1] += 1;
        }
        *out.entry(content).or_default() += 1;
        return;
    }
    let (r, c) = cells[k];
    // rows weakly increase, columns strictly increase
    let lo_row = if c > 0 { t[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=n {
        t[r][c] = v;
        fill(cells, k + 1, n, t, out);
    }
    t[r][c] = 0;
}

/// Expand a symmetric polynomial in Schur polynomials by repeatedly
/// removing the lexicographically leading monomial.
pub fn schur_expand(chi: &Character, n: u32) -> Result<BTreeMap<Partition, BigInt>, SkewHoweError> {
    let mut rest = chi.clone();
    rest.retain(|_, c| !c.is_zero());
    let mut cache: HashMap<Partition, Character> = HashMap::new();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(SkewHoweError::NotSymmetric(lead));
        }
        let lambda = Partition::new(lead.clone());
        let s = cache
            .entry(lambda.clone())
            .or_insert_with(|| schur_polynomial(&lambda, n));
        for (e, x) in s.iter() {
            let entry = rest.entry(e.clone()).or_default();
            *entry -= &c * x;
            if entry.is_zero() {
                rest.remove(e);
            }
        }
        out.insert(lambda, c);
    }
    Ok(out)
}

/// Graded trace of the endomorphism a closed crossing-free word induces on
/// its base weight space, expanded in irreducible classes.
pub fn trace_class(word: &DiagramWord) -> Result<RepClass, SkewHoweError> {
    ladder::validate(word)?;
    if word.has_crossings() {
        return Err(SkewHoweError::HasCrossings);
    }
    let basis = FockBasis::new(word.n, &word.base.0);
    let mut chi = Character::new();
    for s in &basis.states {
        let image = apply_word(word, &Vector::from([(s.clone(), BigInt::one())]));
        if let Some(c) = image.get(s) {
            *chi.entry(gl_weight(word.n, s)).or_default() += c;
        }
    }
    let mut out = RepClass::zero();
    for (lambda, c) in schur_expand(&chi, word.n)? {
        out.add_term(lambda, LaurentPoly::from(c));
    }
    Ok(out)
}

/// One row of the trefoil table: the homology in degree `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegressionRow {
    pub i: i64,
    pub q: i64,
    pub module: Partition,
    pub dim: usize,
}

/// The degree-zero truncation of the trefoil complex for general `n`:
///
/// ```text
/// q^-3 V(x)V --(pi, 0)--> q^-3 L2 + q^-1 L2 --0--> q^-1 L2 + q L2 --[[0,2],[0,0]]--> q L2 + q^3 L2
/// ```
///
/// with `V = C^n`, `L2` its exterior square and `pi = E_1` from weight
/// `[1,1]` to `[2,0]`. Returns the homology in each `(i, q)` with its
/// irreducible decomposition.
pub fn paper_example_complex(n: u32) -> Result<Vec<RegressionRow>, SkewHoweError> {
    assert!(n >= 2, "needs n >= 2");
    let vv = FockBasis::new(n, &[1, 1]);
    let l2 = FockBasis::new(n, &[2, 0]);
    let pi = act(&Letter::e(1, 1), &[1, 1], n).matrix;

    // groups: list of (q, basis) summands per degree -3..=0
    let groups: Vec<Vec<(i64, &FockBasis)>> = vec![
        vec![(-3, &vv)],
        vec![(-3, &l2), (-1, &l2)],
        vec![(-1, &l2), (1, &l2)],
        vec![(1, &l2), (3, &l2)],
    ];
    let (dl, dv) = (l2.len(), vv.len());
    let mut d = [
        SparseMatrix::zeros(2 * dl, dv),
        SparseMatrix::zeros(2 * dl, 2 * dl),
        SparseMatrix::zeros(2 * dl, 2 * dl),
    ];
    for (r, c, v) in pi.entries() {
        d[0].add(r, c, v.clone());
    }
    for j in 0..dl {
        d[2].add(j, dl + j, 2);
    }
    debug_assert!(d[1].mul(&d[0]).is_zero() && d[2].mul(&d[1]).is_zero());

    // flatten each degree into (q, gl_n weight) labels
    let labels: Vec<Vec<(i64, Vec<u32>)>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .flat_map(|&(q, b)| b.states.iter().map(move |s| (q, gl_weight(n, s))))
                .collect()
        })
        .collect();
    let mut blocks: BTreeMap<(usize, i64, Vec<u32>), Vec<usize>> = BTreeMap::new();
    for (k, ls) in labels.iter().enumerate() {
        for (j, key) in ls.iter().enumerate() {
            blocks.entry((k, key.0, key.1.clone())).or_default().push(j);
        }
    }
    let empty = Vec::new();
    let mut chars: BTreeMap<(i64, i64), Character> = BTreeMap::new();
    for ((k, q, wt), cols) in &blocks {
        let out_rank = match d.get(*k) {
            Some(m) => {
                linalg::rank(m.submatrix(blocks.get(&(k + 1, *q, wt.clone())).unwrap_or(&empty), cols))
            }
            None => 0,
        };
        let in_rank = if *k > 0 {
            let src = blocks.get(&(k - 1, *q, wt.clone())).unwrap_or(&empty);
            linalg::rank(d[*k - 1].submatrix(cols, src))
        } else {
            0
        };
        let dim = cols.len() - out_rank - in_rank;
        if dim > 0 {
            *chars
                .entry((*k as i64 - 3, *q))
                .or_default()
                .entry(wt.clone())
                .or_default() += BigInt::from(dim);
        }
    }
    let mut rows = Vec::new();
    for ((i, q), chi) in chars {
        for (lambda, mult) in schur_expand(&chi, n)? {
            let dim = schur_polynomial(&lambda, n).values().sum::<BigInt>();
            let mult: usize = mult.try_into().expect("nonnegative multiplicity");
            for _ in 0..mult {
                rows.push(RegressionRow {
                    i,
                    q,
                    module: lambda.clone(),
                    dim: dim.clone().try_into().expect("small dimension"),
                });
            }
        }
    }
    Ok(rows)
}
