//! Polynomial differential forms on the standard simplex.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{render_term, Monomial, Poly};
use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::simplicial::Monotone;

/// An element of `∇(p, q)`: `Σ_I f_I dt_I` over sorted index sets `I`,
/// coefficients polynomial in the affine coordinates `t₁ … t_p`.
///
/// Index sets are stored 0-based; `dt₁` is index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyForm {
    p: usize,
    q: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of the permutation sorting `a ++ b`, or `None` when they overlap.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions % 2 == 1))
}

impl PolyForm {
    pub fn zero(p: usize, q: usize) -> Self {
        Self { p, q, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(f: Poly) -> Self {
        let p = f.nvars();
        let mut w = Self::zero(p, 0);
        w.add_term(Vec::new(), f);
        w
    }

    pub fn constant(p: usize, c: Q) -> Self {
        Self::function(Poly::constant(p, c))
    }

    pub fn one(p: usize) -> Self {
        Self::constant(p, Q::one())
    }

    /// The coordinate function `t_{i+1}`.
    pub fn coordinate(p: usize, i: usize) -> Self {
        Self::function(Poly::var(p, i))
    }

    /// `dt_{i+1}`.
    pub fn dt(p: usize, i: usize) -> Self {
        let mut w = Self::zero(p, 1);
        w.add_term(vec![i], Poly::one(p));
        w
    }

    /// `f dt_I` with `I` sorted, 0-based.
    pub fn term(index: Vec<usize>, f: Poly) -> Result<Self> {
        let p = f.nvars();
        if index.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed(format!("exterior index set {index:?} is not strictly increasing")));
        }
        if let Some(&i) = index.iter().find(|&&i| i >= p) {
            return Err(Error::IndexOutOfRange { index: i + 1, dim: p });
        }
        let mut w = Self::zero(p, index.len());
        w.add_term(index, f);
        Ok(w)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: &[usize]) -> Poly {
        self.terms.get(index).cloned().unwrap_or_else(|| Poly::zero(self.p))
    }

    /// Largest coefficient degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Poly::degree).max()
    }

    fn add_term(&mut self, index: Vec<usize>, f: Poly) {
        debug_assert_eq!(index.len(), self.q);
        debug_assert_eq!(f.nvars(), self.p);
        if f.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(&Q::one(), &f);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &PolyForm) -> Result<()> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::DimensionMismatch { expected: self.p, found: other.p });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_scaled_mut(&Q::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_scaled_mut(&-Q::one(), other);
        Ok(out)
    }

    /// `self += c · other`; shapes must agree.
    pub fn add_scaled_mut(&mut self, c: &Q, other: &PolyForm) {
        assert!(self.p == other.p && self.q == other.q, "form shape mismatch");
        for (i, f) in &other.terms {
            self.add_term(i.clone(), f.scale(c));
        }
    }

    pub fn scale(&self, c: &Q) -> PolyForm {
        let mut out = PolyForm::zero(self.p, self.q);
        out.add_scaled_mut(c, self);
        out
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-Q::one())
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch { expected: self.p, found: other.p });
        }
        let mut out = PolyForm::zero(self.p, self.q + other.q);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if let Some((k, odd)) = merge_sign(i, j) {
                    let fg = f * g;
                    out.add_term(k, if odd { -&fg } else { fg });
                }
            }
        }
        Ok(out)
    }

    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.p, self.q + 1);
        for (i, f) in &self.terms {
            for k in 0..self.p {
                let df = f.derivative(k);
                if df.is_zero() {
                    continue;
                }
                if let Some((idx, odd)) = merge_sign(&[k], i) {
                    out.add_term(idx, if odd { -&df } else { df });
                }
            }
        }
        out
    }

    /// `∇(θ)`: pullback along the affine map `Δ^k → Δ^p` of a monotone
    /// `θ: [k] → [p]`, sending vertex `j` to vertex `θ(j)`.
    pub fn pullback(&self, theta: &Monotone) -> Result<PolyForm> {
        if theta.target_dim() != self.p {
            return Err(Error::DimensionMismatch { expected: self.p, found: theta.target_dim() });
        }
        let k = theta.source_dim();
        // barycentric μ_j on Δ^k: μ_0 = 1 - Σu, μ_j = u_j
        let mu = |j: usize| -> Poly {
            if j == 0 {
                (0..k).fold(Poly::one(k), |acc, i| &acc - &Poly::var(k, i))
            } else {
                Poly::var(k, j - 1)
            }
        };
        // t_l ↦ Σ_{θ(j) = l} μ_j for l = 1..p
        let images: Vec<Poly> = (1..=self.p)
            .map(|l| {
                (0..=k).filter(|&j| theta.apply(j) == l).fold(Poly::zero(k), |acc, j| &acc + &mu(j))
            })
            .collect();
        // differentials of the images have constant coefficients
        let dimages: Vec<Vec<Q>> = images
            .iter()
            .map(|f| (0..k).map(|i| f.derivative(i).coefficient(&vec![0; k])).collect())
            .collect();
        let mut out = PolyForm::zero(k, self.q);
        if self.q > k {
            return Ok(out);
        }
        for (index, f) in &self.terms {
            let coef = f.substitute(k, &images);
            if coef.is_zero() {
                continue;
            }
            // expand dL_{i1} ∧ … ∧ dL_{iq}
            let mut acc: BTreeMap<Vec<usize>, Q> = BTreeMap::from([(Vec::new(), Q::one())]);
            for &l in index {
                let mut next = BTreeMap::new();
                for (idx, c) in &acc {
                    for (i, a) in dimages[l].iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        if let Some((merged, odd)) = merge_sign(idx, &[i]) {
                            let v = c * a;
                            let e: &mut Q = next.entry(merged).or_insert_with(Q::zero);
                            if odd {
                                *e -= v;
                            } else {
                                *e += v;
                            }
                        }
                    }
                }
                acc = next;
            }
            for (idx, c) in acc {
                if !c.is_zero() {
                    out.add_term(idx, coef.scale(&c));
                }
            }
        }
        Ok(out)
    }

    pub fn face(&self, i: usize) -> Result<PolyForm> {
        if self.p == 0 || i > self.p {
            return Err(Error::IndexOutOfRange { index: i, dim: self.p });
        }
        self.pullback(&Monotone::coface(i, self.p))
    }

    pub fn degeneracy(&self, j: usize) -> Result<PolyForm> {
        if j > self.p {
            return Err(Error::IndexOutOfRange { index: j, dim: self.p });
        }
        self.pullback(&Monotone::codegeneracy(j, self.p))
    }

    /// `Σ (−1)^i ∂_i`.
    pub fn total_boundary(&self) -> Result<PolyForm> {
        if self.p == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
        }
        let mut out = PolyForm::zero(self.p - 1, self.q);
        for i in 0..=self.p {
            let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
            out.add_scaled_mut(&sign, &self.face(i)?);
        }
        Ok(out)
    }

    /// `∫_{|Δ^p|} ω` for a top-degree form.
    pub fn integrate(&self) -> Result<Q> {
        if self.q != self.p {
            return Err(Error::NotTopForm { dim: self.p, degree: self.q });
        }
        let full: Vec<usize> = (0..self.p).collect();
        Ok(self.coefficient(&full).integrate_over_simplex())
    }

    /// Canonical text: terms `c t1^a … dt_i …` joined by ` + `, sorted by
    /// exterior index and monomial; `0` for the zero form.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (index, f) in &self.terms {
            for (m, c) in f.terms() {
                parts.push(render_term(c, m, index));
            }
        }
        parts.join(" + ")
    }

    pub fn parse(p: usize, q: usize, text: &str) -> Result<PolyForm> {
        let bad = |msg: String| Error::Malformed(msg);
        let mut out = PolyForm::zero(p, q);
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for term in text.split(" + ") {
            let mut tokens = term.split_whitespace();
            let c = tokens
                .next()
                .and_then(rational::parse)
                .ok_or_else(|| bad(format!("term `{term}` lacks a rational coefficient")))?;
            let mut m: Monomial = vec![0; p];
            let mut index = Vec::new();
            for tok in tokens {
                if let Some(rest) = tok.strip_prefix("dt") {
                    let i: usize = rest.parse().map_err(|_| bad(format!("bad differential `{tok}`")))?;
                    if i == 0 || i > p {
                        return Err(Error::IndexOutOfRange { index: i, dim: p });
                    }
                    index.push(i - 1);
                } else if let Some(rest) = tok.strip_prefix('t') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad(format!("bad exponent in `{tok}`")))?),
                        None => (rest, 1),
                    };
                    let i: usize = var.parse().map_err(|_| bad(format!("bad variable `{tok}`")))?;
                    if i == 0 || i > p {
                        return Err(Error::IndexOutOfRange { index: i, dim: p });
                    }
                    m[i - 1] += exp;
                } else {
                    return Err(bad(format!("unexpected token `{tok}`")));
                }
            }
            if index.len() != q {
                return Err(bad(format!("term `{term}` has degree {} not {q}", index.len())));
            }
            let sorted = {
                let mut s = index.clone();
                s.sort_unstable();
                s
            };
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let odd = (0..index.len()).flat_map(|a| (a + 1..index.len()).map(move |b| (a, b))).filter(|&(a, b)| index[a] > index[b]).count() % 2 == 1;
            let c = if odd { -c } else { c };
            out.add_term(sorted, Poly::monomial(m, c));
        }
        Ok(out)
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
