//! Sparse exact linear algebra: vectors, column-major matrices and an
//! incremental column reducer that yields kernels, images with preimages,
//! and exact solves.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::rational::{self, Q};

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Q::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (usize, Q)>>(it: I) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, x) in it {
            *map.entry(i).or_insert_with(Q::zero) += x;
        }
        Self { entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn from_dense(xs: &[Q]) -> Self {
        Self {
            entries: xs
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Q> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Q, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while a < xs.len() || b < ys.len() {
            if b == ys.len() || (a < xs.len() && xs[a].0 < ys[b].0) {
                out.push(xs[a].clone());
                a += 1;
            } else if a == xs.len() || ys[b].0 < xs[a].0 {
                out.push((ys[b].0, c * &ys[b].1));
                b += 1;
            } else {
                let s = &xs[a].1 + c * &ys[b].1;
                if !s.is_zero() {
                    out.push((xs[a].0, s));
                }
                a += 1;
                b += 1;
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        Self { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// Reindexes through `f`, dropping entries mapped to `None`.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().filter_map(|(i, x)| f(*i).map(|j| (j, x.clone()))))
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![SparseVec::new(); cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        Self { rows, columns }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|j| SparseVec::from_entries((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        Self { rows: nrows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.columns[j].get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.iter() {
            out.add_scaled(x, &self.columns[j]);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows(), "matrix shape mismatch");
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix {
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols()]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut r = Reducer::new();
        for c in &self.columns {
            r.insert(c.clone(), SparseVec::new());
        }
        r.rank()
    }

    /// Kernel basis in the column-reduction order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut r = Reducer::new();
        self.columns
            .iter()
            .enumerate()
            .filter_map(|(j, c)| r.insert(c.clone(), SparseVec::unit(j)))
            .collect()
    }

    /// Row-major text dump: a `rows cols` header, then one line per row of
    /// space-separated exact rationals (`n` or `n/d`).
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols());
        for row in self.to_dense() {
            let line: Vec<String> = row.iter().map(rational::render).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn parse_dump(text: &str) -> Option<SparseMatrix> {
        let mut lines = text.lines();
        let mut header = lines.next()?.split_whitespace();
        let rows: usize = header.next()?.parse().ok()?;
        let cols: usize = header.next()?.parse().ok()?;
        let mut dense = Vec::with_capacity(rows);
        for _ in 0..rows {
            let row: Option<Vec<Q>> = lines.next()?.split_whitespace().map(rational::parse).collect();
            let row = row?;
            if row.len() != cols {
                return None;
            }
            dense.push(row);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return None;
        }
        let mut m = SparseMatrix::from_dense(&dense);
        if rows == 0 {
            m.columns = vec![SparseVec::new(); cols];
        }
        Some(m)
    }
}

/// Incremental column reduction. Stored vectors are normalized so that their
/// leading (smallest-index) entry is one, and each carries a preimage: the
/// combination of inserted tags that produced it.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    pivots: BTreeMap<usize, usize>,
    entries: Vec<(SparseVec, SparseVec)>,
}

/// Outcome of reducing a vector against a [`Reducer`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: SparseVec,
    /// Coefficients on stored entries (by insertion index) that were subtracted.
    pub coefficients: SparseVec,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize) -> (&SparseVec, &SparseVec) {
        let (v, p) = &self.entries[k];
        (v, p)
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates every entry of `v` that sits on a pivot row.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut residual = v.clone();
        let mut coeffs = Vec::new();
        let mut cursor = 0;
        loop {
            let hit = residual
                .iter()
                .find(|(i, _)| *i >= cursor && self.pivots.contains_key(i))
                .map(|(i, x)| (i, x.clone()));
            let Some((row, c)) = hit else { break };
            let k = self.pivots[&row];
            residual.add_scaled(&-c.clone(), &self.entries[k].0);
            coeffs.push((k, c));
            cursor = row + 1;
        }
        Reduction { residual, coefficients: SparseVec::from_entries(coeffs) }
    }

    /// Inserts `v` tagged with `tag`. Returns `Some(kernel vector)` when `v`
    /// is dependent on what is stored: the combination of tags mapping to zero.
    pub fn insert(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let red = self.reduce(&v);
        let pre = self.combine_preimages(&tag, &red.coefficients);
        match red.residual.leading() {
            None => Some(pre),
            Some((row, lead)) => {
                let inv = lead.recip();
                let img = red.residual.scaled(&inv);
                let pre = pre.scaled(&inv);
                self.pivots.insert(row, self.entries.len());
                self.entries.push((img, pre));
                None
            }
        }
    }

    fn combine_preimages(&self, tag: &SparseVec, coefficients: &SparseVec) -> SparseVec {
        let mut pre = tag.clone();
        for (k, c) in coefficients.iter() {
            pre.add_scaled(&-c.clone(), &self.entries[k].1);
        }
        pre
    }

    /// Returns a preimage `x` with `Σ x_tag · v_tag = v`, when `v` lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(v);
        if !red.residual.is_zero() {
            return None;
        }
        let mut x = SparseVec::new();
        for (k, c) in red.coefficients.iter() {
            x.add_scaled(c, &self.entries[k].1);
        }
        Some(x)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residual.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn solve_finds_preimage() {
        let a = m(&[&[1, 1], &[0, 2], &[3, 0]]);
        let mut r = Reducer::new();
        for (j, c) in a.columns().iter().enumerate() {
            r.insert(c.clone(), SparseVec::unit(j));
        }
        let b = SparseVec::from_dense(&[q(3), q(4), q(3)]);
        let x = r.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(r.solve(&SparseVec::unit(0)).is_none());
    }

    #[test]
    fn add_scaled_cancels() {
        let mut v = SparseVec::from_dense(&[q(1), q(0), qr(1, 2)]);
        let w = SparseVec::from_dense(&[q(2), q(1), q(1)]);
        v.add_scaled(&qr(-1, 2), &w);
        assert_eq!(v, SparseVec::from_entries([(1, qr(-1, 2))]));
    }

    #[test]
    fn dump_roundtrip() {
        let a = m(&[&[1, -2], &[0, 5]]);
        let mut b = a.clone();
        b.columns[1] = SparseVec::from_entries([(0, qr(-7, 3))]);
        for x in [a, b, SparseMatrix::zeros(0, 3), SparseMatrix::zeros(2, 0)] {
            assert_eq!(SparseMatrix::parse_dump(&x.dump()).unwrap(), x);
        }
    }
}
