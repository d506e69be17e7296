//! Cochains of a finite simplicial set: normalized (non-degenerate basis),
//! full (all simplices up to a degree), and relative variants.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::Q;
use crate::simplicial::{Monotone, Simplex, SimplexRef, SimplicialMap, SimplicialSet, SubSet};

fn sign(i: usize) -> Q {
    if i % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `NC*(X, A)`: cochains on the non-degenerate simplices of `X` outside `A`.
#[derive(Clone, Debug)]
pub struct NormalizedCochains {
    host: SimplicialSet,
    relative: SubSet,
    basis: Vec<Vec<SimplexRef>>,
    index: Vec<HashMap<SimplexRef, usize>>,
    complex: CochainComplex,
}

impl NormalizedCochains {
    pub fn new(host: &SimplicialSet) -> Self {
        Self::relative(&SubSet::empty(host))
    }

    pub fn relative(a: &SubSet) -> Self {
        let host = a.host().clone();
        let degrees = host.num_dims();
        let basis: Vec<Vec<SimplexRef>> =
            (0..degrees).map(|n| host.simplices_of_dim(n).filter(|r| !a.contains(*r)).collect()).collect();
        let index: Vec<HashMap<SimplexRef, usize>> =
            basis.iter().map(|b| b.iter().enumerate().map(|(i, r)| (*r, i)).collect()).collect();
        let mut diffs = Vec::new();
        for n in 0..degrees.saturating_sub(1) {
            let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); basis[n].len()];
            for (row, &s) in basis[n + 1].iter().enumerate() {
                for (i, f) in host.faces(s).iter().enumerate() {
                    if f.is_degenerate() {
                        continue;
                    }
                    if let Some(&col) = index[n].get(&f.root) {
                        cols[col].push((row, sign(i)));
                    }
                }
            }
            let cols = cols.into_iter().map(SparseVec::from_entries).collect();
            diffs.push(SparseMatrix::from_columns(basis[n + 1].len(), cols));
        }
        let dims = basis.iter().map(Vec::len).collect();
        let complex = CochainComplex::new(dims, diffs).expect("simplicial coboundary squares to zero");
        Self { host, relative: a.clone(), basis, index, complex }
    }

    pub fn host(&self) -> &SimplicialSet {
        &self.host
    }

    pub fn relative_to(&self) -> &SubSet {
        &self.relative
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn basis(&self, n: usize) -> &[SimplexRef] {
        self.basis.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, r: SimplexRef) -> Option<usize> {
        self.index.get(r.dim)?.get(&r).copied()
    }

    /// `⟨c, σ⟩` for any simplex; zero on degenerate simplices and on `A`.
    pub fn evaluate(&self, c: &SparseVec, s: &Simplex) -> Q {
        if s.is_degenerate() {
            return Q::zero();
        }
        self.position(s.root).and_then(|i| c.get(i).cloned()).unwrap_or_else(Q::zero)
    }

    /// Cochain from values on simplices; entries on `A` or outside the
    /// basis must be zero.
    pub fn cochain(&self, n: usize, values: impl IntoIterator<Item = (SimplexRef, Q)>) -> Result<SparseVec> {
        let mut entries = Vec::new();
        for (r, x) in values {
            if x.is_zero() {
                continue;
            }
            if r.dim != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.dim });
            }
            let i = self.position(r).ok_or_else(|| Error::UnknownSimplex(r.to_string()))?;
            entries.push((i, x));
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// The unit 0-cochain (absolute complexes only meaningfully).
    pub fn unit(&self) -> SparseVec {
        SparseVec::from_entries((0..self.basis(0).len()).map(|i| (i, Q::one())))
    }

    /// Alexander–Whitney product `⟨α ⌣ β, σ⟩ = ⟨α, front_p σ⟩⟨β, back_q σ⟩`.
    /// `other` supplies the cochain space of `β` (same host, possibly
    /// another relative subset); the result lives in `target`.
    pub fn cup(&self, p: usize, alpha: &SparseVec, other: &NormalizedCochains, q: usize, beta: &SparseVec, target: &NormalizedCochains) -> Result<SparseVec> {
        if self.host != other.host || self.host != target.host {
            return Err(Error::HostMismatch);
        }
        let n = p + q;
        let front = Monotone::new((0..=p).collect(), n);
        let back = Monotone::new((p..=n).collect(), n);
        let mut entries = Vec::new();
        for (i, &s) in target.basis(n).iter().enumerate() {
            let s = Simplex::nondegenerate(s);
            let a = self.evaluate(alpha, &self.host.apply(&front, &s));
            if a.is_zero() {
                continue;
            }
            let b = other.evaluate(beta, &self.host.apply(&back, &s));
            if !b.is_zero() {
                entries.push((i, a * b));
            }
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// `f^*: NC*(Y) → NC*(X)` for `f: X → Y`, degreewise; `self` is the
    /// cochains of `X`, `target_side` those of `Y`.
    pub fn pullback_matrices(&self, f: &SimplicialMap, target_side: &NormalizedCochains) -> Result<Vec<SparseMatrix>> {
        if f.source() != &self.host || f.target() != &target_side.host {
            return Err(Error::HostMismatch);
        }
        let degrees = self.complex.len();
        let mut out = Vec::with_capacity(degrees);
        for n in 0..degrees {
            let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); target_side.basis(n).len()];
            for (row, &s) in self.basis(n).iter().enumerate() {
                let img = f.image_of(s);
                if img.is_degenerate() {
                    continue;
                }
                if let Some(col) = target_side.position(img.root) {
                    cols[col].push((row, Q::one()));
                }
            }
            let cols = cols.into_iter().map(SparseVec::from_entries).collect();
            out.push(SparseMatrix::from_columns(self.basis(n).len(), cols));
        }
        Ok(out)
    }

    /// Extension by zero into cochains on a space sharing this one's simplices
    /// (a larger truncation level), degreewise.
    pub fn extension_by_zero(&self, other: &NormalizedCochains) -> Result<Vec<SparseMatrix>> {
        let mut out = Vec::new();
        for n in 0..self.complex.len() {
            let mut cols = Vec::new();
            for &r in self.basis(n) {
                let name = self.host.name(r);
                let i = other
                    .host
                    .find(r.dim, name)
                    .and_then(|t| other.position(t))
                    .ok_or_else(|| Error::UnknownSimplex(name.to_string()))?;
                cols.push(SparseVec::unit(i));
            }
            out.push(SparseMatrix::from_columns(other.complex.dim(n), cols));
        }
        Ok(out)
    }
}

/// `C*X` on every simplex, degenerate ones included, in degrees `0..=top + 1`.
#[derive(Clone, Debug)]
pub struct FullCochains {
    basis: Vec<Vec<Simplex>>,
    complex: CochainComplex,
}

impl FullCochains {
    pub fn new(host: &SimplicialSet, top: usize) -> Self {
        let basis: Vec<Vec<Simplex>> = (0..=top + 1).map(|n| host.all_simplices(n)).collect();
        let index: Vec<HashMap<&Simplex, usize>> =
            basis.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let mut diffs = Vec::new();
        for n in 0..=top {
            let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); basis[n].len()];
            for (row, s) in basis[n + 1].iter().enumerate() {
                for i in 0..=n + 1 {
                    let f = host.face_of(s, i);
                    cols[index[n][&f]].push((row, sign(i)));
                }
            }
            let cols = cols.into_iter().map(SparseVec::from_entries).collect();
            diffs.push(SparseMatrix::from_columns(basis[n + 1].len(), cols));
        }
        let dims = basis.iter().map(Vec::len).collect();
        let complex = CochainComplex::new(dims, diffs).expect("simplicial coboundary squares to zero");
        Self { basis, complex }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn basis(&self, n: usize) -> &[Simplex] {
        self.basis.get(n).map_or(&[], Vec::as_slice)
    }
}
