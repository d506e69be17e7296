//! Simplicial sets presented by their non-degenerate simplices.
//!
//! Every simplex of a [`SimplicialSet`] is written uniquely as `X(η) x` with
//! `x` non-degenerate and `η` a monotone surjection (Eilenberg–Zilber normal
//! form). A presentation stores, for each non-degenerate `n`-simplex, its
//! `n + 1` faces in that normal form; everything else is derived. Any monotone
//! map `θ: [k] → [n]` acts on simplices through [`SimplicialSet::apply`].

mod exhaustion;
mod generators;
mod map;
mod subset;
pub mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exhaustion::{check_nested, embed_by_name, Exhaustion, FiniteExhaustion, HalfLine, PlaneExhaustion, RealLine};
pub use generators::{
    boundary_simplex, circle, cylinder, plane_tessellation, plane_tessellation_origin, real_line,
    standard_simplex, torus, torus_grid, Generator,
};
pub use map::{is_proper, is_proper_tower, pushout, Properness, Pushout, SimplicialMap};
pub use subset::SubSet;

/// A non-degenerate simplex of some host, by dimension and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
}

impl SimplexRef {
    pub fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// A monotone map `[k] → [n]`, stored as its list of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    target: usize,
    values: Vec<usize>,
}

impl Monotone {
    pub fn new(values: Vec<usize>, target: usize) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= target));
        Self { target, values }
    }

    pub fn identity(n: usize) -> Self {
        Self { target: n, values: (0..=n).collect() }
    }

    /// The coface `d^i: [n-1] → [n]` skipping `i`.
    pub fn coface(i: usize, n: usize) -> Self {
        Self { target: n, values: (0..=n).filter(|&v| v != i).collect() }
    }

    /// The codegeneracy `s^j: [n+1] → [n]` hitting `j` twice.
    pub fn codegeneracy(j: usize, n: usize) -> Self {
        Self { target: n, values: (0..=n + 1).map(|v| if v > j { v - 1 } else { v }).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.values.len() == self.target + 1 && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        self.values.first() == Some(&0)
            && self.values.last() == Some(&self.target)
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &Monotone) -> Monotone {
        assert_eq!(inner.target, self.source_dim(), "monotone maps not composable");
        Monotone { target: self.target, values: inner.values.iter().map(|&i| self.values[i]).collect() }
    }

    /// Factors `self = mono ∘ epi`.
    pub fn epi_mono(&self) -> (Monotone, Monotone) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let r = image.len() - 1;
        let epi = self.values.iter().map(|v| image.binary_search(v).unwrap()).collect();
        (Monotone { target: r, values: epi }, Monotone { target: self.target, values: image })
    }

    /// Parses a degeneracy word `s_{w1} … s_{wk}` (composition as written)
    /// acting on an `m`-simplex into its surjection `[m+k] → [m]`.
    pub fn from_word(word: &[usize], m: usize) -> Result<Monotone> {
        let k = word.len();
        let mut current = Monotone::identity(m + k);
        // s_{w1} is applied last, so its codegeneracy acts first on [m+k].
        for (pos, &w) in word.iter().enumerate() {
            let dim = m + k - pos - 1;
            if w > dim {
                return Err(Error::Malformed(format!("degeneracy s_{w} cannot act on a {dim}-simplex")));
            }
            current = Monotone::codegeneracy(w, dim).after(&current);
        }
        Ok(current)
    }

    /// The canonical weakly increasing degeneracy word of a surjection.
    pub fn to_word(&self) -> Vec<usize> {
        debug_assert!(self.is_surjective());
        let mut word: Vec<usize> =
            (0..self.source_dim()).rev().filter(|&j| self.values[j] == self.values[j + 1]).collect();
        // s_a s_b = s_b s_{a-1} for a > b.
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..word.len().saturating_sub(1) {
                if word[p] > word[p + 1] {
                    let (a, b) = (word[p], word[p + 1]);
                    word[p] = b;
                    word[p + 1] = a - 1;
                    changed = true;
                }
            }
        }
        word
    }
}

/// A possibly degenerate simplex `X(degeneracy) root`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub root: SimplexRef,
    pub degeneracy: Monotone,
}

impl Simplex {
    pub fn nondegenerate(root: SimplexRef) -> Self {
        Self { root, degeneracy: Monotone::identity(root.dim) }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.source_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_identity()
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    cofaces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: Vec<HashMap<String, usize>>,
}

/// A finite simplicial set. Immutable and cheap to clone.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    inner: Arc<Inner>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.names == other.inner.names && self.inner.faces == other.inner.faces)
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    /// Builds and validates a simplicial set from per-dimension names and
    /// face lists. `faces[n][k]` holds the `n + 1` faces of the `k`-th
    /// non-degenerate `n`-simplex (none for vertices).
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let x = Self::new_unchecked(names, faces)?;
        x.validate()?;
        Ok(x)
    }

    fn new_unchecked(mut names: Vec<Vec<String>>, mut faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        if names.len() != faces.len() {
            return Err(Error::Malformed("names and faces disagree on the number of dimensions".into()));
        }
        while names.last().is_some_and(Vec::is_empty) && faces.last().is_some_and(Vec::is_empty) {
            names.pop();
            faces.pop();
        }
        let mut lookup = Vec::with_capacity(names.len());
        for (n, (ns, fs)) in names.iter().zip(&faces).enumerate() {
            if ns.len() != fs.len() {
                return Err(Error::Malformed(format!("dimension {n}: names and faces disagree")));
            }
            let mut map = HashMap::new();
            for (k, name) in ns.iter().enumerate() {
                if map.insert(name.clone(), k).is_some() {
                    return Err(Error::Malformed(format!("duplicate simplex name {name} in dimension {n}")));
                }
            }
            lookup.push(map);
            for (k, face_list) in fs.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if face_list.len() != expected {
                    return Err(Error::Malformed(format!(
                        "simplex {} of dimension {n} has {} faces, expected {expected}",
                        ns[k],
                        face_list.len()
                    )));
                }
                for face in face_list {
                    let r = face.root;
                    if face.dim() + 1 != n || r.dim >= n || r.index >= faces[r.dim].len() {
                        return Err(Error::Malformed(format!("bad face {face:?} on simplex {}", ns[k])));
                    }
                    if face.degeneracy.target_dim() != r.dim || !face.degeneracy.is_surjective() {
                        return Err(Error::Malformed(format!("bad degeneracy on a face of {}", ns[k])));
                    }
                }
            }
        }
        let mut cofaces: Vec<Vec<Vec<SimplexRef>>> = faces.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
        for (n, fs) in faces.iter().enumerate() {
            for (k, face_list) in fs.iter().enumerate() {
                for face in face_list {
                    let c = &mut cofaces[face.root.dim][face.root.index];
                    let me = SimplexRef::new(n, k);
                    if !c.contains(&me) {
                        c.push(me);
                    }
                }
            }
        }
        Ok(Self { inner: Arc::new(Inner { names, faces, cofaces, lookup }) })
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every non-degenerate simplex.
    pub fn validate(&self) -> Result<()> {
        for n in 2..self.num_dims() {
            for k in 0..self.count(n) {
                let r = SimplexRef::new(n, k);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face_of(self.face(r, j), i);
                        let rhs = self.face_of(self.face(r, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::Identity { simplex: self.name(r).to_string(), i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::new_unchecked(Vec::new(), Vec::new()).unwrap()
    }

    /// One more than the top dimension, or zero when empty.
    pub fn num_dims(&self) -> usize {
        self.inner.faces.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.num_dims().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.num_dims() == 0
    }

    pub fn count(&self, dim: usize) -> usize {
        self.inner.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..self.num_dims()).map(|d| self.count(d)).collect()
    }

    pub fn total_count(&self) -> usize {
        self.counts().iter().sum()
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        r.index < self.count(r.dim)
    }

    pub fn check(&self, r: SimplexRef) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::UnknownSimplex(r.to_string()))
        }
    }

    pub fn simplices_of_dim(&self, dim: usize) -> impl Iterator<Item = SimplexRef> {
        (0..self.count(dim)).map(move |k| SimplexRef::new(dim, k))
    }

    /// All non-degenerate simplices ordered by dimension, then index.
    pub fn simplices(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        (0..self.num_dims()).flat_map(move |d| self.simplices_of_dim(d))
    }

    pub fn name(&self, r: SimplexRef) -> &str {
        &self.inner.names[r.dim][r.index]
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<SimplexRef> {
        self.inner.lookup.get(dim)?.get(name).map(|&k| SimplexRef::new(dim, k))
    }

    pub fn names(&self) -> &[Vec<String>] {
        &self.inner.names
    }

    pub fn faces(&self, r: SimplexRef) -> &[Simplex] {
        &self.inner.faces[r.dim][r.index]
    }

    pub fn face(&self, r: SimplexRef, i: usize) -> &Simplex {
        &self.inner.faces[r.dim][r.index][i]
    }

    /// Non-degenerate simplices having `r` as the root of one of their faces.
    pub fn cofaces(&self, r: SimplexRef) -> &[SimplexRef] {
        &self.inner.cofaces[r.dim][r.index]
    }

    /// `X(θ) s` for a monotone `θ: [k] → [dim s]`.
    pub fn apply(&self, theta: &Monotone, s: &Simplex) -> Simplex {
        let (epi, mono) = s.degeneracy.after(theta).epi_mono();
        let y = self.apply_mono(&mono, s.root);
        Simplex { root: y.root, degeneracy: y.degeneracy.after(&epi) }
    }

    fn apply_mono(&self, delta: &Monotone, x: SimplexRef) -> Simplex {
        let m = x.dim;
        if delta.source_dim() == m {
            return Simplex::nondegenerate(x);
        }
        let missing = (0..=m).find(|v| delta.values.binary_search(v).is_err()).unwrap();
        let rest = Monotone {
            target: m - 1,
            values: delta.values.iter().map(|&v| if v > missing { v - 1 } else { v }).collect(),
        };
        self.apply(&rest, self.face(x, missing))
    }

    /// `d_i s` for a possibly degenerate simplex.
    pub fn face_of(&self, s: &Simplex, i: usize) -> Simplex {
        self.apply(&Monotone::coface(i, s.dim()), s)
    }

    /// `s_j s` for a possibly degenerate simplex.
    pub fn degeneracy_of(&self, s: &Simplex, j: usize) -> Simplex {
        self.apply(&Monotone::codegeneracy(j, s.dim()), s)
    }

    /// Non-degenerate simplices of `⟨r⟩`, including `r`.
    pub fn closure_of(&self, r: SimplexRef) -> BTreeSet<SimplexRef> {
        let mut out = BTreeSet::new();
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.faces(x).iter().map(|f| f.root));
            }
        }
        out
    }

    /// Every simplex of dimension `n`, degenerate ones included.
    pub fn all_simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.num_dims().saturating_sub(1)) {
            if self.count(m) == 0 {
                continue;
            }
            for eta in surjections(n, m) {
                for k in 0..self.count(m) {
                    out.push(Simplex { root: SimplexRef::new(m, k), degeneracy: eta.clone() });
                }
            }
        }
        out
    }
}

/// All monotone surjections `[n] → [m]`, in lexicographic order of values.
pub fn surjections(n: usize, m: usize) -> Vec<Monotone> {
    fn go(pos: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if pos > n {
            if *cur.last().unwrap() == m {
                out.push(Monotone { target: m, values: cur.clone() });
            }
            return;
        }
        let last = *cur.last().unwrap();
        for step in 0..=1 {
            let v = last + step;
            // remaining positions must be able to reach m
            if v <= m && m - v <= n - pos {
                cur.push(v);
                go(pos + 1, n, m, cur, out);
                cur.pop();
            }
        }
    }
    if m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(1, n, m, &mut cur, &mut out);
    out
}

/// All monotone maps `[k] → [n]`.
pub fn monotone_maps(k: usize, n: usize) -> Vec<Monotone> {
    fn go(len: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if cur.len() == len {
            out.push(Monotone { target: n, values: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=n {
            cur.push(v);
            go(len, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k + 1, n, &mut Vec::new(), &mut out);
    out
}
