//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Q};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in a fixed number of variables `t₁ … t_n` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    /// The variable `t_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let nvars = m.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.add_term(m2, c * Q::from_integer(m[i].into()));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t_i ↦ images[i]`, each a polynomial in `target` variables.
    pub fn substitute(&self, target: usize, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        assert!(images.iter().all(|p| p.nvars == target), "image arity");
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out.add_scaled(&Q::one(), &term);
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    /// `∫_{|Δⁿ|} f dt₁…dt_n` via `∫ t^a = a₁!…a_n! / (n + Σa)!`.
    pub fn integrate_over_simplex(&self) -> Q {
        let n = self.nvars as u32;
        self.terms
            .iter()
            .map(|(m, c)| {
                let num = m.iter().fold(num_bigint::BigInt::one(), |acc, &a| acc * rational::factorial(a));
                let den = rational::factorial(n + m.iter().sum::<u32>());
                c * Q::new(num, den)
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms.iter().map(|(m, c)| render_term(c, m, &[])).collect::<Vec<_>>().join(" + ")
    }
}

/// `c t1^a t2 … dt1 dt3`, with 1-based variable names.
pub(crate) fn render_term(c: &Q, m: &[u32], form: &[usize]) -> String {
    let mut parts = vec![rational::render(c)];
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, e)),
        }
    }
    for &i in form {
        parts.push(format!("dt{}", i + 1));
    }
    parts.join(" ")
}

/// All monomials in `nvars` variables of total degree `≤ max_degree`,
/// ordered by degree, then reverse-lexicographically within a degree.
pub fn monomials(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    for d in 0..=max_degree {
        if nvars == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        go(0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m: Monomial = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(m, x * y);
            }
        }
        out
    }
}
