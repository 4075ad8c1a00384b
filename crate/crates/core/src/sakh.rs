//! Sutured annular Khovanov homology for n = 2.
//!
//! Labels 0 and 2 are erased, leaving a 1-manifold diagram in the annulus
//! whose crossings between two 1-labeled strands are smoothed in all ways.
//! Each smoothing is a family of circles; a trivial circle carries
//! `A = <u, x>` (q-degrees +1 and -1) and an essential one carries
//! `V = <v+, v->` (weights +1 and -1). Saddles between neighbouring
//! smoothings act by the annular merge and split maps, with essential
//! circles always listed outer first.
//!
//! For a positive crossing bit 0 is the vertical smoothing and bit 1 the
//! turnback; for a negative crossing it is the other way round. A vertex
//! `v` sits in homological degree `|v| - n+` with the same q-shift.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exec::ExecMode;
use crate::ladder::{self, DiagramWord, LadderError, Letter, Sign};
use crate::linalg::{self, SparseMatrix};
use crate::qpoly::LaurentPoly;
use crate::skein::{Partition, RepClass};

/// Largest number of smoothable crossings accepted.
pub const MAX_CROSSINGS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SakhError {
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error("sutured annular Khovanov homology needs n = 2, got {0}")]
    WrongRank(u32),
    #[error("crossing at letter {position} between labels {labels:?} has no n = 2 smoothing")]
    UnsupportedColoredCrossing { position: usize, labels: (u32, u32) },
    #[error("{0} smoothable crossings exceed the limit of {MAX_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error("negative multiplicity of V_{k} at (i, q) = ({i}, {q})")]
    NegativeMultiplicity { i: i64, q: i64, k: i64 },
    #[error("chain-level identity {identity} fails in degree {degree}")]
    IdentityFails { identity: &'static str, degree: i64 },
}

/// One circle of a smoothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub essential: bool,
    /// Sorted ids of the diagram points on this circle.
    pub points: Vec<usize>,
}

/// The circles of one smoothing, ordered by smallest point id. Points are
/// numbered level by level from the bottom and from the outside in, so
/// essential circles come out outer first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleConfig {
    pub vertex: Vec<u8>,
    pub circles: Vec<Circle>,
    /// For each smoothable crossing, the circles through its four corners.
    pub incidence: Vec<Vec<usize>>,
}

impl CircleConfig {
    pub fn essential_count(&self) -> usize {
        self.circles.iter().filter(|c| c.essential).count()
    }

    pub fn trivial_count(&self) -> usize {
        self.circles.len() - self.essential_count()
    }

    fn circle_of(&self, point: usize) -> usize {
        self.circles
            .iter()
            .position(|c| c.points.binary_search(&point).is_ok())
            .expect("every point lies on a circle")
    }
}

#[derive(Debug, Clone, Copy)]
struct Site {
    sign: Sign,
    /// Points at the lower gap on uprights `i, i+1`, then the upper gap.
    corners: [usize; 4],
}

/// Points and fixed arcs of an erased n = 2 diagram.
#[derive(Debug, Clone)]
struct Layout {
    levels: usize,
    points: usize,
    /// Point ids of the lone uprights when the word is empty.
    bare: Vec<usize>,
    fixed: Vec<(usize, usize, i64)>,
    sites: Vec<Site>,
}

impl Layout {
    fn new(word: &DiagramWord) -> Result<Self, SakhError> {
        if word.n != 2 {
            return Err(SakhError::WrongRank(word.n));
        }
        let weights = ladder::validate(word)?;
        let m = word.m;
        let levels = word.letters.len();
        let mut ids: Vec<Vec<Option<usize>>> = Vec::new();
        let mut points = 0;
        for w in weights.iter().take(levels.max(1)) {
            ids.push(
                w.0.iter()
                    .map(|&a| {
                        (a == 1).then(|| {
                            points += 1;
                            points - 1
                        })
                    })
                    .collect(),
            );
        }
        if levels == 0 {
            let bare = ids[0].iter().flatten().copied().collect();
            return Ok(Self {
                levels,
                points,
                bare,
                fixed: Vec::new(),
                sites: Vec::new(),
            });
        }

        let mut fixed = Vec::new();
        let mut sites = Vec::new();
        for (t, letter) in word.letters.iter().enumerate() {
            let (lo, hi) = (&ids[t], &ids[(t + 1) % levels]);
            let i = letter.index() - 1;
            for u in (0..m).filter(|&u| u != i && u != i + 1) {
                if let (Some(a), Some(b)) = (lo[u], hi[u]) {
                    fixed.push((a, b, 1));
                }
            }
            let low: Vec<usize> = [lo[i], lo[i + 1]].into_iter().flatten().collect();
            let high: Vec<usize> = [hi[i], hi[i + 1]].into_iter().flatten().collect();
            match *letter {
                Letter::Crossing { sign, .. } => {
                    let w = &weights[t].0;
                    let labels = (w[i], w[i + 1]);
                    match labels {
                        (1, 1) => sites.push(Site {
                            sign,
                            corners: [low[0], low[1], high[0], high[1]],
                        }),
                        (1, 0) | (0, 1) => fixed.push((low[0], high[0], 1)),
                        (0, 0) | (2, 2) | (2, 0) | (0, 2) => {}
                        _ => {
                            return Err(SakhError::UnsupportedColoredCrossing {
                                position: t + 1,
                                labels,
                            })
                        }
                    }
                }
                Letter::Rung { .. } => match (low.len(), high.len()) {
                    (1, 1) => fixed.push((low[0], high[0], 1)),
                    (2, 0) => fixed.push((low[0], low[1], 0)),
                    (0, 2) => fixed.push((high[0], high[1], 0)),
                    (0, 0) => {}
                    other => unreachable!("rung with visible ends {other:?}"),
                },
            }
        }
        if sites.len() > MAX_CROSSINGS {
            return Err(SakhError::TooManyCrossings(sites.len()));
        }
        Ok(Self {
            levels,
            points,
            bare: Vec::new(),
            fixed,
            sites,
        })
    }

    fn turnback(site: &Site, bit: u8) -> bool {
        (bit == 1) == (site.sign == Sign::Positive)
    }

    fn smooth(&self, vertex: &[u8]) -> CircleConfig {
        assert_eq!(vertex.len(), self.sites.len(), "vertex has wrong length");
        if self.levels == 0 {
            let circles = self
                .bare
                .iter()
                .map(|&p| Circle {
                    essential: true,
                    points: vec![p],
                })
                .collect();
            return CircleConfig {
                vertex: vertex.to_vec(),
                circles,
                incidence: Vec::new(),
            };
        }
        let mut edges = self.fixed.clone();
        for (site, &bit) in self.sites.iter().zip(vertex) {
            let [a, b, c, d] = site.corners;
            if Self::turnback(site, bit) {
                edges.push((a, b, 0));
                edges.push((c, d, 0));
            } else {
                edges.push((a, c, 1));
                edges.push((b, d, 1));
            }
        }
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.points];
        for (e, &(a, b, _)) in edges.iter().enumerate() {
            ends[a].push((e, 0));
            ends[b].push((e, 1));
        }
        debug_assert!(ends.iter().all(|v| v.len() == 2), "diagram is not a 1-manifold");

        let mut used = vec![false; edges.len()];
        let mut circles = Vec::new();
        for start in 0..edges.len() {
            if used[start] {
                continue;
            }
            let mut points = Vec::new();
            let mut total = 0i64;
            let (mut e, mut from) = (start, 0usize);
            loop {
                used[e] = true;
                let (a, b, step) = edges[e];
                let (p, s) = if from == 0 { (b, step) } else { (a, -step) };
                total += s;
                points.push(p);
                let arrived = (e, 1 - from);
                let &(next, end) = ends[p].iter().find(|&&x| x != arrived).expect("degree two");
                if next == start && end == 0 {
                    break;
                }
                e = next;
                from = end;
            }
            points.sort_unstable();
            points.dedup();
            circles.push(Circle {
                essential: total != 0,
                points,
            });
            debug_assert!(total.abs() == 0 || total.abs() == self.levels as i64);
        }
        circles.sort_by_key(|c| c.points[0]);
        let mut config = CircleConfig {
            vertex: vertex.to_vec(),
            circles,
            incidence: Vec::new(),
        };
        config.incidence = self
            .sites
            .iter()
            .map(|s| {
                let mut cs: Vec<usize> = s.corners.iter().map(|&p| config.circle_of(p)).collect();
                cs.sort_unstable();
                cs.dedup();
                cs
            })
            .collect();
        config
    }
}

/// Smooth every crossing between two 1-labeled strands as selected by
/// `vertex` (crossings numbered bottom to top).
pub fn smooth(word: &DiagramWord, vertex: &[u8]) -> Result<CircleConfig, SakhError> {
    Ok(Layout::new(word)?.smooth(vertex))
}

/// Number of crossings that get smoothed.
pub fn smoothable_crossings(word: &DiagramWord) -> Result<usize, SakhError> {
    Ok(Layout::new(word)?.sites.len())
}

/// A basis element: a cube vertex and one generator per circle (bit set:
/// `x` on a trivial circle, `v-` on an essential one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: u32,
    pub labels: u32,
    pub q: i64,
    pub w: i64,
}

#[derive(Debug, Clone)]
pub struct TriGradedComplex {
    pub min_degree: i64,
    /// Chain groups by homological degree, starting at `min_degree`.
    pub groups: Vec<Vec<Generator>>,
    /// `d[k]` maps `groups[k]` to `groups[k + 1]`.
    pub d: Vec<SparseMatrix>,
    pub e: Vec<SparseMatrix>,
    pub f: Vec<SparseMatrix>,
    pub configs: Vec<CircleConfig>,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl TriGradedComplex {
    pub fn degree(&self, k: usize) -> i64 {
        self.min_degree + k as i64
    }

    pub fn total_dimension(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

type Image = Vec<(u32, i64)>;

fn bit(labels: u32, c: usize) -> u32 {
    labels >> c & 1
}

/// `(-1)^p` for the essential circle `c` at nesting position `p`, counted
/// from the outside. The essential merge and split maps pick up this sign
/// for the outer circle of the pair; without it the squares of the cube
/// fail to commute.
fn parity_sign(cfg: &CircleConfig, c: usize) -> i64 {
    let p = cfg.circles[..c].iter().filter(|x| x.essential).count();
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The saddle map on one generator of the source vertex.
fn saddle(src: &CircleConfig, tgt: &CircleConfig, site: usize, labels: u32) -> Image {
    let s_inc = &src.incidence[site];
    let t_inc = &tgt.incidence[site];
    // untouched circles keep their label
    let mut base = 0u32;
    for (ci, c) in src.circles.iter().enumerate() {
        if s_inc.contains(&ci) {
            continue;
        }
        let tj = tgt
            .circles
            .iter()
            .position(|d| d.points[0] == c.points[0])
            .expect("untouched circle survives");
        base |= bit(labels, ci) << tj;
    }
    let set = |l: u32, c: usize, v: u32| l | v << c;
    match (s_inc.len(), t_inc.len()) {
        (2, 1) => {
            let (a, b, c) = (s_inc[0], s_inc[1], t_inc[0]);
            let (la, lb) = (bit(labels, a), bit(labels, b));
            let (ea, eb) = (src.circles[a].essential, src.circles[b].essential);
            let out = match (ea, eb) {
                (false, false) => match (la, lb) {
                    (0, 0) => Some((0, 1)),
                    (0, 1) | (1, 0) => Some((1, 1)),
                    _ => None,
                },
                (true, false) => (lb == 0).then_some((la, 1)),
                (false, true) => (la == 0).then_some((lb, 1)),
                (true, true) => {
                    let s = parity_sign(src, a);
                    match (la, lb) {
                        (0, 1) => Some((1, s)),
                        (1, 0) => Some((1, -s)),
                        _ => None,
                    }
                }
            };
            out.map(|(l, s)| vec![(set(base, c, l), s)]).unwrap_or_default()
        }
        (1, 2) => {
            let (c, a, b) = (s_inc[0], t_inc[0], t_inc[1]);
            let lc = bit(labels, c);
            let (ea, eb) = (tgt.circles[a].essential, tgt.circles[b].essential);
            let two = |la: u32, lb: u32| set(set(base, a, la), b, lb);
            match (src.circles[c].essential, ea, eb) {
                (false, false, false) => {
                    if lc == 0 {
                        vec![(two(0, 1), 1), (two(1, 0), 1)]
                    } else {
                        vec![(two(1, 1), 1)]
                    }
                }
                (true, true, false) => vec![(two(lc, 1), 1)],
                (true, false, true) => vec![(two(1, lc), 1)],
                (false, true, true) => {
                    let s = parity_sign(tgt, a);
                    if lc == 0 {
                        vec![(two(0, 1), s), (two(1, 0), -s)]
                    } else {
                        Vec::new()
                    }
                }
                other => unreachable!("impossible split {other:?}"),
            }
        }
        other => unreachable!("saddle touching {other:?} circles"),
    }
}

/// Build the cube-of-resolutions complex with its sl_2 action.
pub fn build_complex(word: &DiagramWord) -> Result<TriGradedComplex, SakhError> {
    let layout = Layout::new(word)?;
    let c = layout.sites.len();
    let n_plus = layout.sites.iter().filter(|s| s.sign == Sign::Positive).count();
    let n_minus = c - n_plus;
    let configs: Vec<CircleConfig> = (0..1u32 << c)
        .map(|v| {
            let vertex: Vec<u8> = (0..c).map(|j| (v >> j & 1) as u8).collect();
            layout.smooth(&vertex)
        })
        .collect();

    let min_degree = -(n_plus as i64);
    let mut groups: Vec<Vec<Generator>> = vec![Vec::new(); c + 1];
    for (v, cfg) in configs.iter().enumerate() {
        let h = v.count_ones() as usize;
        let shift = h as i64 + min_degree;
        for labels in 0..1u32 << cfg.circles.len() {
            let (mut q, mut w) = (shift, 0);
            for (ci, circle) in cfg.circles.iter().enumerate() {
                let s = if bit(labels, ci) == 0 { 1 } else { -1 };
                if circle.essential {
                    w += s;
                } else {
                    q += s;
                }
            }
            groups[h].push(Generator {
                vertex: v as u32,
                labels,
                q,
                w,
            });
        }
    }
    let index: Vec<HashMap<(u32, u32), usize>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .map(|(j, x)| ((x.vertex, x.labels), j))
                .collect()
        })
        .collect();

    let mut d = Vec::with_capacity(c);
    for k in 0..c {
        let mut m = SparseMatrix::zeros(groups[k + 1].len(), groups[k].len());
        for (col, g) in groups[k].iter().enumerate() {
            let v = g.vertex;
            for j in (0..c).filter(|&j| v >> j & 1 == 0) {
                let target = v | 1 << j;
                let sign = if (v & ((1 << j) - 1)).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                };
                let image = saddle(&configs[v as usize], &configs[target as usize], j, g.labels);
                for (labels, s) in image {
                    let row = index[k + 1][&(target, labels)];
                    m.add(row, col, sign * s);
                }
            }
        }
        d.push(m);
    }

    let sl2 = |raise: bool| -> Vec<SparseMatrix> {
        groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let mut m = SparseMatrix::zeros(g.len(), g.len());
                for (col, x) in g.iter().enumerate() {
                    let cfg = &configs[x.vertex as usize];
                    for (ci, circle) in cfg.circles.iter().enumerate() {
                        let b = bit(x.labels, ci);
                        if circle.essential && (b == 1) == raise {
                            let row = index[k][&(x.vertex, x.labels ^ 1 << ci)];
                            m.add(row, col, 1);
                        }
                    }
                }
                m
            })
            .collect()
    };
    let e = sl2(true);
    let f = sl2(false);

    let complex = TriGradedComplex {
        min_degree,
        groups,
        d,
        e,
        f,
        configs,
        n_plus,
        n_minus,
    };
    for k in 1..complex.d.len() {
        if !complex.d[k].mul(&complex.d[k - 1]).is_zero() {
            return Err(SakhError::IdentityFails {
                identity: "d^2 = 0",
                degree: complex.degree(k - 1),
            });
        }
    }
    Ok(complex)
}

/// Verify `d^2 = 0`, `[d, e] = [d, f] = 0` and `[e, f] = w` exactly.
pub fn check_sl2(complex: &TriGradedComplex) -> Result<(), SakhError> {
    let fail = |identity, k: usize| SakhError::IdentityFails {
        identity,
        degree: complex.degree(k),
    };
    for (k, dk) in complex.d.iter().enumerate() {
        if k + 1 < complex.d.len() && !complex.d[k + 1].mul(dk).is_zero() {
            return Err(fail("d^2 = 0", k));
        }
        if !dk.mul(&complex.e[k]).sub(&complex.e[k + 1].mul(dk)).is_zero() {
            return Err(fail("[d, e] = 0", k));
        }
        if !dk.mul(&complex.f[k]).sub(&complex.f[k + 1].mul(dk)).is_zero() {
            return Err(fail("[d, f] = 0", k));
        }
    }
    for (k, g) in complex.groups.iter().enumerate() {
        let ef = complex.e[k]
            .mul(&complex.f[k])
            .sub(&complex.f[k].mul(&complex.e[k]));
        let mut h = SparseMatrix::zeros(g.len(), g.len());
        for (j, x) in g.iter().enumerate() {
            h.add(j, j, x.w);
        }
        if ef != h {
            return Err(fail("[e, f] = w", k));
        }
        let shifted = |m: &SparseMatrix, dw: i64| {
            m.entries()
                .all(|(r, c, _)| g[r].w == g[c].w + dw && g[r].q == g[c].q)
        };
        if !shifted(&complex.e[k], 2) || !shifted(&complex.f[k], -2) {
            return Err(fail("e, f shift w by 2", k));
        }
    }
    for (k, dk) in complex.d.iter().enumerate() {
        let (src, tgt) = (&complex.groups[k], &complex.groups[k + 1]);
        if dk
            .entries()
            .any(|(r, c, _)| (src[c].q, src[c].w) != (tgt[r].q, tgt[r].w))
        {
            return Err(fail("d preserves (q, w)", k));
        }
    }
    Ok(())
}

/// Homology with its sl_2 decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// `(i, q) -> w -> dimension`, nonzero entries only.
    pub dims: BTreeMap<(i64, i64), BTreeMap<i64, usize>>,
    /// `(i, q) -> highest weights k of the summands V_k`, descending.
    pub modules: BTreeMap<(i64, i64), Vec<u32>>,
}

impl Homology {
    pub fn total_dimension(&self) -> usize {
        self.dims.values().flat_map(|m| m.values()).sum()
    }

    /// `sum (-1)^i q^q [V_k]`, with `V_k` written as the partition `(k)`.
    pub fn euler(&self) -> RepClass {
        let mut out = RepClass::zero();
        for (&(i, q), ks) in &self.modules {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            for &k in ks {
                out.add_term(Partition::row(k), LaurentPoly::monomial(sign, q));
            }
        }
        out
    }
}

fn decompose(i: i64, q: i64, by_w: &BTreeMap<i64, usize>) -> Result<Vec<u32>, SakhError> {
    let dim = |w: i64| by_w.get(&w).copied().unwrap_or(0) as i64;
    let top = by_w.keys().map(|w| w.abs()).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in (0..=top).rev() {
        let mult = dim(k) - dim(k + 2);
        if mult < 0 {
            return Err(SakhError::NegativeMultiplicity { i, q, k });
        }
        out.extend(std::iter::repeat_n(k as u32, mult as usize));
    }
    // every weight must be accounted for by the V_k found
    let mut rebuilt: BTreeMap<i64, usize> = BTreeMap::new();
    for &k in &out {
        let k = k as i64;
        for j in 0..=k {
            *rebuilt.entry(k - 2 * j).or_default() += 1;
        }
    }
    let nonzero: BTreeMap<i64, usize> = by_w
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&w, &d)| (w, d))
        .collect();
    if rebuilt != nonzero {
        return Err(SakhError::NegativeMultiplicity { i, q, k: -1 });
    }
    Ok(out)
}

/// Exact rational homology, one `(i, q, w)` block at a time.
pub fn homology(complex: &TriGradedComplex, mode: ExecMode) -> Result<Homology, SakhError> {
    let mut blocks: BTreeMap<(usize, i64, i64), Vec<usize>> = BTreeMap::new();
    for (k, g) in complex.groups.iter().enumerate() {
        for (j, x) in g.iter().enumerate() {
            blocks.entry((k, x.q, x.w)).or_default().push(j);
        }
    }
    let keys: Vec<(usize, i64, i64)> = blocks.keys().copied().collect();
    let empty = Vec::new();
    let dims = mode.map(&keys, |&(k, q, w)| {
        let cols = &blocks[&(k, q, w)];
        let out_rank = if k < complex.d.len() {
            let rows = blocks.get(&(k + 1, q, w)).unwrap_or(&empty);
            linalg::rank(complex.d[k].submatrix(rows, cols))
        } else {
            0
        };
        let in_rank = if k > 0 {
            let src = blocks.get(&(k - 1, q, w)).unwrap_or(&empty);
            linalg::rank(complex.d[k - 1].submatrix(cols, src))
        } else {
            0
        };
        cols.len() - out_rank - in_rank
    });
    let mut table: BTreeMap<(i64, i64), BTreeMap<i64, usize>> = BTreeMap::new();
    for (&(k, q, w), dim) in keys.iter().zip(dims) {
        if dim > 0 {
            table.entry((complex.degree(k), q)).or_default().insert(w, dim);
        }
    }
    let mut modules = BTreeMap::new();
    for (&(i, q), by_w) in &table {
        modules.insert((i, q), decompose(i, q, by_w)?);
    }
    Ok(Homology { dims: table, modules })
}

/// Graded Euler characteristic computed from the chain groups.
pub fn euler_characteristic(complex: &TriGradedComplex) -> Result<RepClass, SakhError> {
    let mut by: BTreeMap<(i64, i64), BTreeMap<i64, usize>> = BTreeMap::new();
    for (k, g) in complex.groups.iter().enumerate() {
        for x in g {
            *by.entry((complex.degree(k), x.q))
                .or_default()
                .entry(x.w)
                .or_default() += 1;
        }
    }
    let mut out = RepClass::zero();
    for (&(i, q), by_w) in &by {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        for k in decompose(i, q, by_w)? {
            out.add_term(Partition::row(k), LaurentPoly::monomial(sign, q));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyRow {
    pub i: i64,
    pub q: i64,
    pub modules: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    pub n_plus: usize,
    pub n_minus: usize,
    /// Added to `|v|` to get the homological degree of a cube vertex.
    pub hom_shift: i64,
    /// Added to `|v|` plus the generator degrees to get the q-degree.
    pub q_shift: i64,
}

/// Payload of `annular sakh`.
#[derive(Debug, Clone, Serialize)]
pub struct SakhReport {
    pub homology: Vec<HomologyRow>,
    pub euler: RepClass,
    pub normalization: Normalization,
}

pub fn report(complex: &TriGradedComplex, h: &Homology) -> SakhReport {
    SakhReport {
        homology: h
            .modules
            .iter()
            .map(|(&(i, q), ks)| HomologyRow {
                i,
                q,
                modules: ks.clone(),
            })
            .collect(),
        euler: h.euler(),
        normalization: Normalization {
            n_plus: complex.n_plus,
            n_minus: complex.n_minus,
            hom_shift: -(complex.n_plus as i64),
            q_shift: -(complex.n_plus as i64),
        },
    }
}
