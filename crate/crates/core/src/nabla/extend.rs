//! The extension operator `E` and the face-free ("bubble") subspaces of `∇(p, q)`.
//!
//! Both come from one linear system per `(p, q, r)`: unknowns are the
//! coefficients of a form with coefficient degree `≤ r`, columns ordered by
//! monomial degree; equations are the coefficients of its `p + 1` faces.
//! Column reduction keeps the leftmost independent columns, so the solution
//! supported on them is unique and does not change when `r` grows.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};


use super::form::PolyForm;
use super::poly::{monomials, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{Reducer, SparseVec};
use crate::rational::{self, Q};

type Column = (Vec<usize>, Monomial);

struct System {
    p: usize,
    columns: Vec<Column>,
    rows: HashMap<(usize, Vec<usize>, Monomial), usize>,
    reducer: Reducer,
    free: Vec<usize>,
    bubbles: Vec<PolyForm>,
}

fn index_sets(p: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, p: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            go(i + 1, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, p, q, &mut Vec::new(), &mut out);
    out
}

impl System {
    fn build(p: usize, q: usize, r: u32) -> System {
        let mut columns = Vec::new();
        for m in monomials(p, r) {
            for index in index_sets(p, q) {
                columns.push((index, m.clone()));
            }
        }
        let mut rows = HashMap::new();
        let mut reducer = Reducer::new();
        let mut free = Vec::new();
        let mut kernel = Vec::new();
        for (c, (index, m)) in columns.iter().enumerate() {
            let form = PolyForm::term(index.clone(), Poly::monomial(m.clone(), rational::one()))
                .expect("valid basis term");
            let mut entries = Vec::new();
            for i in 0..=p {
                let face = form.face(i).expect("face in range");
                for (idx, f) in face.terms() {
                    for (mm, x) in f.terms() {
                        let key = (i, idx.clone(), mm.clone());
                        let n = rows.len();
                        let row = *rows.entry(key).or_insert(n);
                        entries.push((row, x.clone()));
                    }
                }
            }
            if let Some(k) = reducer.insert(SparseVec::from_entries(entries), SparseVec::unit(c)) {
                free.push(c);
                kernel.push(k);
            }
        }
        let mut sys = System { p, columns, rows, reducer, free, bubbles: Vec::new() };
        sys.bubbles = kernel.iter().map(|k| sys.assemble(q, k)).collect();
        sys
    }

    fn assemble(&self, q: usize, x: &SparseVec) -> PolyForm {
        let mut out = PolyForm::zero(self.p, q);
        for (c, v) in x.iter() {
            let (index, m) = &self.columns[c];
            let t = PolyForm::term(index.clone(), Poly::monomial(m.clone(), v.clone())).expect("valid basis term");
            out.add_scaled_mut(&rational::one(), &t);
        }
        out
    }

    /// Right-hand side for prescribed faces, `None` if some face term is out of range.
    fn rhs(&self, faces: &[PolyForm]) -> Option<SparseVec> {
        let mut entries = Vec::new();
        for (i, w) in faces.iter().enumerate() {
            for (idx, f) in w.terms() {
                for (m, x) in f.terms() {
                    let row = *self.rows.get(&(i, idx.clone(), m.clone()))?;
                    entries.push((row, x.clone()));
                }
            }
        }
        Some(SparseVec::from_entries(entries))
    }
}

fn system(p: usize, q: usize, r: u32) -> Arc<System> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, u32), Arc<System>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(p, q, r)) {
        return s.clone();
    }
    let built = Arc::new(System::build(p, q, r));
    cache.lock().unwrap().entry((p, q, r)).or_insert(built).clone()
}

/// A compatible tuple `w₀ … w_p` in `∇(p − 1, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionInput {
    faces: Vec<PolyForm>,
}

impl ExtensionInput {
    /// Checks shapes and `∂_i w_j = ∂_{j−1} w_i` for `i < j`.
    pub fn new(faces: Vec<PolyForm>) -> Result<Self> {
        if faces.len() < 2 {
            return Err(Error::Malformed(format!("extension needs at least two faces, got {}", faces.len())));
        }
        let p = faces.len() - 1;
        let q = faces[0].q();
        for w in &faces {
            if w.p() != p - 1 {
                return Err(Error::DimensionMismatch { expected: p - 1, found: w.p() });
            }
            if w.q() != q {
                return Err(Error::DimensionMismatch { expected: q, found: w.q() });
            }
        }
        if p >= 2 {
            for j in 0..=p {
                for i in 0..j {
                    if faces[j].face(i)? != faces[i].face(j - 1)? {
                        return Err(Error::IncompatibleFaces { i, j });
                    }
                }
            }
        }
        Ok(Self { faces })
    }

    pub fn p(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn q(&self) -> usize {
        self.faces[0].q()
    }

    pub fn faces(&self) -> &[PolyForm] {
        &self.faces
    }
}

/// `E(w₀, …, w_p)`: a form on `Δ^p` whose `i`-th face is `w_i`.
///
/// Linear in its input, and of coefficient degree at most that of the input.
pub fn extend(input: &ExtensionInput) -> Result<PolyForm> {
    let (p, q) = (input.p(), input.q());
    if input.faces.iter().all(PolyForm::is_zero) {
        return Ok(PolyForm::zero(p, q));
    }
    let top = input.faces.iter().filter_map(PolyForm::degree).max().unwrap_or(0);
    for r in top + 1..=top + 2 + p as u32 {
        let sys = system(p, q, r);
        let Some(b) = sys.rhs(&input.faces) else { continue };
        if let Some(x) = sys.reducer.solve(&b) {
            return Ok(sys.assemble(q, &x));
        }
    }
    Err(Error::NoSolution(format!("no extension found on the {p}-simplex in degree {q}")))
}

/// Shorthand for [`ExtensionInput::new`] followed by [`extend`].
pub fn extend_faces(faces: Vec<PolyForm>) -> Result<PolyForm> {
    extend(&ExtensionInput::new(faces)?)
}

/// Forms in `∇(p, q)` of coefficient degree `≤ r` with every face zero.
/// The basis for `r` is a prefix of the basis for `r + 1`.
pub fn bubble_basis(p: usize, q: usize, r: u32) -> Vec<PolyForm> {
    if p == 0 {
        return if q == 0 { vec![PolyForm::one(0)] } else { Vec::new() };
    }
    system(p, q, r).bubbles.clone()
}

/// Coordinates of a face-free form in [`bubble_basis`]`(p, q, r)`.
pub fn bubble_coordinates(w: &PolyForm, r: u32) -> Result<Vec<Q>> {
    let (p, q) = (w.p(), w.q());
    if p == 0 {
        return Ok(if q == 0 { vec![w.coefficient(&[]).coefficient(&[])] } else { Vec::new() });
    }
    if w.degree().is_some_and(|d| d > r) {
        return Err(Error::Malformed(format!("form has coefficient degree above {r}")));
    }
    for i in 0..=p {
        if !w.face(i)?.is_zero() {
            return Err(Error::Malformed(format!("form has a nonzero face {i}")));
        }
    }
    let sys = system(p, q, r);
    let coords = sys
        .free
        .iter()
        .map(|&c| {
            let (index, m) = &sys.columns[c];
            w.coefficient(index).coefficient(m)
        })
        .collect();
    Ok(coords)
}

/// Number of bubble basis elements, without materializing them.
pub fn bubble_dimension(p: usize, q: usize, r: u32) -> usize {
    if p == 0 {
        return usize::from(q == 0);
    }
    system(p, q, r).free.len()
}

