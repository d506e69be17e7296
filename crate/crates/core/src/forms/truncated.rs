//! Finite-dimensional windows `A^q_{≤D}(X, A)` onto the form complex: forms
//! with coefficient degree `≤ D − q`, vanishing on `A`.
//!
//! Basis: for each non-degenerate `τ ∉ A` and each face-free form `b` on
//! `τ` (see [`bubble_basis`]), the form equal to `b` on `τ`, zero on every
//! other simplex of dimension `≤ dim τ`, and filled upward over the star of
//! `τ` by the extension operator. Coordinates of a form `ω` at `τ` are the
//! bubble coordinates of `ω|τ − E(∂ω|τ)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{value_at, GlobalForm};
use crate::cochains::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::nabla::{bubble_basis, bubble_coordinates, extend_faces, PolyForm};
use crate::simplicial::{SimplexRef, SimplicialSet, SubSet};

/// Basis element of a [`TruncatedComplex`]: simplex and bubble index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisLabel {
    pub simplex: SimplexRef,
    pub bubble: usize,
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    host: SimplicialSet,
    relative: SubSet,
    bound: u32,
    labels: Vec<Vec<BasisLabel>>,
    forms: Vec<Vec<GlobalForm>>,
    index: Vec<HashMap<BasisLabel, usize>>,
    complex: CochainComplex,
}

/// Non-degenerate simplices having `r` as an iterated face, `r` excluded,
/// in increasing (dimension, index) order.
pub(crate) fn upward(host: &SimplicialSet, r: SimplexRef) -> BTreeSet<SimplexRef> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<SimplexRef> = host.cofaces(r).to_vec();
    while let Some(x) = stack.pop() {
        if out.insert(x) {
            stack.extend(host.cofaces(x).iter().copied());
        }
    }
    out
}

/// Fills `values` over `region` (ascending) by extending boundary data.
pub(crate) fn fill(host: &SimplicialSet, degree: usize, values: &mut BTreeMap<SimplexRef, PolyForm>, region: &BTreeSet<SimplexRef>) -> Result<()> {
    for &s in region {
        let faces: Vec<PolyForm> = host.faces(s).iter().map(|f| value_at(values, degree, f)).collect();
        if faces.iter().all(PolyForm::is_zero) {
            continue;
        }
        let w = extend_faces(faces)?;
        values.insert(s, w);
    }
    Ok(())
}

impl TruncatedComplex {
    /// `A*_{≤D} X`. Requires `D ≥ dim X`.
    pub fn new(host: &SimplicialSet, bound: u32) -> Result<Self> {
        Self::relative(&SubSet::empty(host), bound)
    }

    /// `A*_{≤D}(X, A)` for `A ⊆ X` face-closed.
    pub fn relative(a: &SubSet, bound: u32) -> Result<Self> {
        let host = a.host().clone();
        let top = host.dim().unwrap_or(0);
        if (bound as usize) < top {
            return Err(Error::WindowTooSmall { bound, dim: top });
        }
        let degrees = if host.is_empty() { 0 } else { top + 1 };
        let mut labels = vec![Vec::new(); degrees];
        let mut forms = vec![Vec::new(); degrees];
        let mut index = vec![HashMap::new(); degrees];
        for q in 0..degrees {
            let r = bound - q as u32;
            for tau in host.simplices().filter(|t| t.dim >= q && !a.contains(*t)) {
                let region = upward(&host, tau);
                for (k, b) in bubble_basis(tau.dim, q, r).into_iter().enumerate() {
                    let mut values = BTreeMap::from([(tau, b)]);
                    fill(&host, q, &mut values, &region)?;
                    let label = BasisLabel { simplex: tau, bubble: k };
                    index[q].insert(label, labels[q].len());
                    labels[q].push(label);
                    forms[q].push(GlobalForm::from_values_unchecked(&host, q, values));
                }
            }
        }
        let mut out = Self {
            host,
            relative: a.clone(),
            bound,
            labels,
            forms,
            index,
            complex: CochainComplex::zero(0),
        };
        let dims: Vec<usize> = out.forms.iter().map(Vec::len).collect();
        let mut diffs = Vec::new();
        for q in 0..degrees.saturating_sub(1) {
            let cols = out.forms[q].iter().map(|g| out.coordinates(&g.d())).collect::<Result<Vec<_>>>()?;
            diffs.push(SparseMatrix::from_columns(dims[q + 1], cols));
        }
        out.complex = CochainComplex::new(dims, diffs)?;
        Ok(out)
    }

    pub fn host(&self) -> &SimplicialSet {
        &self.host
    }

    pub fn relative_to(&self) -> &SubSet {
        &self.relative
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn dims(&self) -> Vec<usize> {
        self.complex.dims().to_vec()
    }

    pub fn labels(&self, q: usize) -> &[BasisLabel] {
        self.labels.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self, q: usize) -> &[GlobalForm] {
        self.forms.get(q).map_or(&[], Vec::as_slice)
    }

    /// The form with the given coordinates in degree `q`.
    pub fn form(&self, q: usize, coords: &SparseVec) -> GlobalForm {
        let mut out = GlobalForm::zero(&self.host, q);
        for (i, c) in coords.iter() {
            out = out.add_scaled(c, &self.forms[q][i]).expect("basis forms share the host");
        }
        out
    }

    /// Coordinates of `ω` in the basis of its degree.
    pub fn coordinates(&self, w: &GlobalForm) -> Result<SparseVec> {
        if w.host() != &self.host {
            return Err(Error::HostMismatch);
        }
        let q = w.degree();
        if q >= self.forms.len() {
            return if w.is_zero() { Ok(SparseVec::new()) } else { Err(Error::OutsideWindow(format!("degree {q}"))) };
        }
        let r = self.bound - q as u32;
        let mut entries = Vec::new();
        let mut touched: BTreeSet<SimplexRef> = BTreeSet::new();
        for (s, _) in w.values() {
            touched.insert(s);
        }
        for s in touched {
            if s.dim < q {
                continue;
            }
            if self.relative.contains(s) {
                return Err(Error::OutsideWindow(format!("nonzero on {} in the relative subset", self.host.name(s))));
            }
            let value = w.value(s);
            let local = if s.dim == 0 {
                value
            } else {
                let faces: Vec<PolyForm> = self.host.faces(s).iter().map(|f| w.value_at(f)).collect();
                if faces.iter().all(PolyForm::is_zero) {
                    value
                } else {
                    value.sub(&extend_faces(faces)?)?
                }
            };
            if local.is_zero() {
                continue;
            }
            if local.degree().is_some_and(|d| d > r) {
                return Err(Error::OutsideWindow(format!("coefficient degree above {r} on {}", self.host.name(s))));
            }
            for (k, c) in bubble_coordinates(&local, r)?.into_iter().enumerate() {
                if c != crate::rational::zero() {
                    entries.push((self.index[q][&BasisLabel { simplex: s, bubble: k }], c));
                }
            }
        }
        Ok(SparseVec::from_entries(entries))
    }

    /// Degreewise matrices of the inclusion into a window on the same pair
    /// with a larger bound, or into a larger host sharing this one's simplices.
    pub fn inclusion_into(&self, other: &TruncatedComplex) -> Result<Vec<SparseMatrix>> {
        (0..self.forms.len())
            .map(|q| {
                let cols = self.forms[q]
                    .iter()
                    .map(|g| other.coordinates(&g.transport(&other.host)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SparseMatrix::from_columns(other.complex.dim(q), cols))
            })
            .collect()
    }
}
