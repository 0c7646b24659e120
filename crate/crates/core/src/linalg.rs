//! Exact linear algebra over the rationals.
//!
//! Dense routines (`rank`, `nullspace`, `determinant`, `solve`) work on
//! row-major `Vec<Vec<Scalar>>`. [`SpanBuilder`] keeps an incremental echelon
//! form of sparse vectors keyed by any ordered type, which is what the span
//! and closure computations need.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::poly::{Exponents, SparsePoly};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
pub fn nullspace(rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); cols];
            x[f] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut a = m.to_vec();
    let mut sign = Scalar::one();
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `A x = b`, returning one solution if the system is consistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][cols].clone();
    }
    Some(x)
}

struct EchelonRow<K> {
    entries: BTreeMap<K, Scalar>,
    /// This row as a combination of the vectors accepted so far.
    combo: Vec<Scalar>,
}

/// Incremental echelon basis for sparse vectors.
///
/// Each row is normalized so that its largest key (the pivot) has
/// coefficient one, and new vectors are reduced from the top key down.
pub struct SpanBuilder<K: Ord + Clone> {
    rows: BTreeMap<K, EchelonRow<K>>,
    accepted: usize,
}

impl<K: Ord + Clone> Default for SpanBuilder<K> {
    fn default() -> Self {
        SpanBuilder { rows: BTreeMap::new(), accepted: 0 }
    }
}

impl<K: Ord + Clone> SpanBuilder<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// coefficients (over accepted vectors) that were subtracted.
    fn reduce(&self, v: &BTreeMap<K, Scalar>) -> (BTreeMap<K, Scalar>, Vec<Scalar>) {
        let mut v = v.clone();
        let mut used = vec![Scalar::zero(); self.accepted];
        let mut bound: Bound<K> = Bound::Unbounded;
        loop {
            let next = v.range((Bound::Unbounded, bound.clone())).next_back().map(|(k, _)| k.clone());
            let Some(k) = next else { break };
            match self.rows.get(&k) {
                Some(row) => {
                    let f = v[&k].clone();
                    for (rk, rc) in &row.entries {
                        let e = v.entry(rk.clone()).or_insert_with(Scalar::zero);
                        *e -= &f * rc;
                        if e.is_zero() {
                            v.remove(rk);
                        }
                    }
                    for (u, c) in used.iter_mut().zip(&row.combo) {
                        *u += &f * c;
                    }
                }
                None => bound = Bound::Excluded(k),
            }
        }
        (v, used)
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients expressing `v` over the accepted vectors, in acceptance
    /// order, if `v` lies in the span.
    pub fn express(&self, v: &BTreeMap<K, Scalar>) -> Option<Vec<Scalar>> {
        let (res, used) = self.reduce(v);
        res.is_empty().then_some(used)
    }

    /// Adds `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        let (mut res, used) = self.reduce(v);
        let Some((pivot, lead)) = res.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        for c in res.values_mut() {
            *c *= &inv;
        }
        let idx = self.accepted;
        self.accepted += 1;
        for row in self.rows.values_mut() {
            row.combo.push(Scalar::zero());
        }
        // res = v - sum used_j * orig_j
        let mut combo: Vec<Scalar> = used.iter().map(|u| -(u * &inv)).collect();
        combo.push(inv);
        debug_assert_eq!(combo.len(), idx + 1);
        self.rows.insert(pivot, EchelonRow { entries: std::mem::take(&mut res), combo });
        true
    }
}

impl SpanBuilder<Exponents> {
    pub fn insert_poly(&mut self, p: &SparsePoly) -> bool {
        self.insert(&poly_map(p))
    }

    pub fn contains_poly(&self, p: &SparsePoly) -> bool {
        self.contains(&poly_map(p))
    }

    pub fn express_poly(&self, p: &SparsePoly) -> Option<Vec<Scalar>> {
        self.express(&poly_map(p))
    }
}

pub fn poly_map(p: &SparsePoly) -> BTreeMap<Exponents, Scalar> {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

/// Dimension of the span of a family of polynomials.
pub fn poly_span_dim<'a>(polys: impl IntoIterator<Item = &'a SparsePoly>) -> usize {
    let mut span = SpanBuilder::new();
    for p in polys {
        span.insert_poly(p);
    }
    span.dim()
}
