//! Finite-dimensional cochain complexes over the rationals and their cohomology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Reducer, SparseMatrix, SparseVec};
use crate::rational::{self, Q};

/// `C⁰ → C¹ → … → C^N`, with `differential(n): Cⁿ → Cⁿ⁺¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl CochainComplex {
    /// `diffs[n]` has `dims[n + 1]` rows and `dims[n]` columns; one fewer
    /// differential than degrees. Checks `d ∘ d = 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::DimensionMismatch { expected: dims.len().saturating_sub(1), found: diffs.len() });
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(Error::DimensionMismatch { expected: dims[n], found: d.cols() });
            }
        }
        for n in 1..diffs.len() {
            if !diffs[n].mul(&diffs[n - 1]).is_zero() {
                return Err(Error::NotAComplex(n - 1));
            }
        }
        Ok(Self { dims, diffs })
    }

    pub fn zero(len: usize) -> Self {
        Self { dims: vec![0; len], diffs: vec![SparseMatrix::zeros(0, 0); len.saturating_sub(1)] }
    }

    /// Number of degrees `N + 1`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `dⁿ`, the zero map past the top degree.
    pub fn differential(&self, n: usize) -> SparseMatrix {
        self.diffs.get(n).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    pub fn apply_d(&self, n: usize, v: &SparseVec) -> SparseVec {
        match self.diffs.get(n) {
            Some(d) => d.mul_vec(v),
            None => SparseVec::new(),
        }
    }
}

/// Per-degree data for [`Cohomology`].
#[derive(Clone, Debug)]
struct Degree {
    /// Image of `dⁿ⁻¹` followed by the representatives; tags index
    /// `Cⁿ⁻¹` first, then representatives at offset `dim Cⁿ⁻¹`.
    span: Reducer,
    offset: usize,
    representatives: Vec<SparseVec>,
    kernel_dim: usize,
    image_dim: usize,
}

/// Cohomology of a [`CochainComplex`] with chosen representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    complex: CochainComplex,
    degrees: Vec<Degree>,
}

/// A cocycle written as `Σ cₖ repₖ + d(witness)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub coordinates: Vec<Q>,
    pub witness: SparseVec,
}

/// Kernel basis of `m`, one vector per dependent column, leftmost pivots.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut red = Reducer::new();
    let mut out = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Some(k) = red.insert(c.clone(), SparseVec::unit(j)) {
            out.push(k);
        }
    }
    out
}

impl Cohomology {
    pub fn new(complex: &CochainComplex) -> Self {
        let mut degrees = Vec::with_capacity(complex.len());
        for n in 0..complex.len() {
            let mut span = Reducer::new();
            let mut image_dim = 0;
            let offset = if n == 0 { 0 } else { complex.dim(n - 1) };
            if n > 0 {
                let d = complex.differential(n - 1);
                for (j, c) in d.columns().iter().enumerate() {
                    if span.insert(c.clone(), SparseVec::unit(j)).is_none() {
                        image_dim += 1;
                    }
                }
            }
            let kernel = kernel_basis(&complex.differential(n));
            let mut representatives = Vec::new();
            for z in &kernel {
                if span.insert(z.clone(), SparseVec::unit(offset + representatives.len())).is_none() {
                    representatives.push(z.clone());
                }
            }
            degrees.push(Degree { span, offset, representatives, kernel_dim: kernel.len(), image_dim });
        }
        Self { complex: complex.clone(), degrees }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.representatives.len()).collect()
    }

    pub fn betti_at(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.representatives.len())
    }

    pub fn kernel_dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.kernel_dim)
    }

    pub fn image_dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.image_dim)
    }

    pub fn representatives(&self, n: usize) -> &[SparseVec] {
        self.degrees.get(n).map_or(&[], |d| &d.representatives)
    }

    pub fn is_cocycle(&self, n: usize, z: &SparseVec) -> bool {
        self.complex.apply_d(n, z).is_zero()
    }

    /// Writes a cocycle in terms of the representatives plus a coboundary.
    pub fn classify(&self, n: usize, z: &SparseVec) -> Result<Classification> {
        if !self.is_cocycle(n, z) {
            return Err(Error::NoSolution(format!("vector is not a cocycle in degree {n}")));
        }
        let deg = self
            .degrees
            .get(n)
            .ok_or(Error::IndexOutOfRange { index: n, dim: self.degrees.len() })?;
        let x = deg
            .span
            .solve(z)
            .ok_or_else(|| Error::NoSolution(format!("cocycle outside kernel span in degree {n}")))?;
        let mut coordinates = vec![rational::zero(); deg.representatives.len()];
        let mut witness = Vec::new();
        for (i, c) in x.iter() {
            if i >= deg.offset {
                coordinates[i - deg.offset] = c.clone();
            } else {
                witness.push((i, c.clone()));
            }
        }
        Ok(Classification { coordinates, witness: SparseVec::from_entries(witness) })
    }

    /// `Some(w)` with `d w = z` when `z` is a coboundary.
    pub fn coboundary_witness(&self, n: usize, z: &SparseVec) -> Option<SparseVec> {
        let c = self.classify(n, z).ok()?;
        c.coordinates.iter().all(|x| *x == rational::zero()).then_some(c.witness)
    }
}

/// Matrix (rows: target classes, columns: source classes) of the map on
/// cohomology induced by a chain map given degreewise.
pub fn induced_matrix(source: &Cohomology, target: &Cohomology, chain_map: &SparseMatrix, n: usize) -> Result<SparseMatrix> {
    let mut cols = Vec::new();
    for z in source.representatives(n) {
        let image = chain_map.mul_vec(z);
        let c = target.classify(n, &image)?;
        cols.push(SparseVec::from_dense(&c.coordinates));
    }
    Ok(SparseMatrix::from_columns(target.betti_at(n), cols))
}

/// Verdicts for a linear map between finite-dimensional spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapRank {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl MapRank {
    pub fn of(m: &SparseMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), rank: m.rank() }
    }

    pub fn injective(&self) -> bool {
        self.rank == self.cols
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.rows
    }

    pub fn isomorphism(&self) -> bool {
        self.injective() && self.surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mat(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn circle_cohomology() {
        // two vertices, two edges: δ(v) rows = edges
        let d0 = mat(&[&[-1, 1], &[1, -1]]);
        let c = CochainComplex::new(vec![2, 2], vec![d0]).unwrap();
        let h = Cohomology::new(&c);
        assert_eq!(h.betti(), vec![1, 1]);
        let z = SparseVec::from_dense(&[q(3), q(-1)]);
        let cls = h.classify(1, &z).unwrap();
        let rep = &h.representatives(1)[0];
        let mut back = c.apply_d(0, &cls.witness);
        back.add_scaled(&cls.coordinates[0], rep);
        assert_eq!(back, z);
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = mat(&[&[1]]);
        let d1 = mat(&[&[1]]);
        assert!(matches!(CochainComplex::new(vec![1, 1, 1], vec![d0, d1]), Err(Error::NotAComplex(0))));
    }

    #[test]
    fn coboundary_witnesses() {
        let d0 = mat(&[&[-1, 1, 0], &[0, -1, 1]]);
        let c = CochainComplex::new(vec![3, 2], vec![d0]).unwrap();
        let h = Cohomology::new(&c);
        assert_eq!(h.betti(), vec![1, 0]);
        let z = SparseVec::from_dense(&[q(2), q(5)]);
        let w = h.coboundary_witness(1, &z).unwrap();
        assert_eq!(c.apply_d(0, &w), z);
    }
}
