//! Sparse integer matrices and exact rank over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major sparse matrix with integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        let v = v.into();
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        let entry = row.entry(c).or_default();
        *entry += v;
        if entry.is_zero() {
            row.remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.data[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.data[r].iter().map(|(&c, v)| (c, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add(r, c, -v);
        }
        out
    }

    pub fn scaled(&self, s: &BigInt) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.add(r, c, v * s);
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().map(|(&c, v)| v * &x[c]).sum())
            .collect()
    }

    /// Dense copy of the submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<BigInt>> {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        rows.iter()
            .map(|&r| {
                let mut dense = vec![BigInt::zero(); cols.len()];
                for (c, v) in &self.data[r] {
                    if let Some(&j) = col_pos.get(c) {
                        dense[j] = v.clone();
                    }
                }
                dense
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        rank(self.submatrix(&rows, &cols))
    }
}

/// Rank over `Q` of an integer matrix, by fraction-free elimination with
/// row content removal.
pub fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows)
            .filter(|&r| !m[r][c].is_zero())
            .min_by_key(|&r| m[r][c].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[c].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let a = &pivot / &g;
            let b = &row[c] / &g;
            for j in c..cols {
                row[j] = &row[j] * &a - &pivot_row[j] * &b;
            }
            normalize_row(row);
        }
        rank += 1;
    }
    rank
}

fn normalize_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Basis of the rational kernel of an integer matrix, scaled to integer
/// vectors.
pub fn kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    use num_rational::BigRational;
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pr = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r != row && !other[c].is_zero() {
                let f = other[c].clone();
                for j in 0..cols {
                    other[j] -= &f * &pr[j];
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            let denom = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            v.iter()
                .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
                .collect()
        })
        .collect()
}
