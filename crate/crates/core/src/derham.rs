//! The integration map `ρ: A*(X, A) → NC*(X, A)`, `⟨ρω, σ⟩ = ∫ ω|σ`, and
//! executable de Rham comparisons (absolute, relative, compactly supported).

use serde::Serialize;

use crate::cochains::{
    colimit, induced_matrix, CochainComplex, Cohomology, Colimit, CompactCochains, CompactLevel, DirectedSystem,
    MapRank, NormalizedCochains,
};
use crate::error::{Error, Result};
use crate::forms::{GlobalForm, TruncatedComplex};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::{self, Q};
use crate::simplicial::{Exhaustion, Simplex, SimplicialSet, SubSet};

/// `ρω` as a cochain in `c`.
pub fn rho_form(w: &GlobalForm, c: &NormalizedCochains) -> Result<SparseVec> {
    if w.host() != c.host() {
        return Err(Error::HostMismatch);
    }
    let mut entries = Vec::new();
    for (i, &s) in c.basis(w.degree()).iter().enumerate() {
        entries.push((i, w.integrate_on(&Simplex::nondegenerate(s))?));
    }
    Ok(SparseVec::from_entries(entries))
}

/// Degreewise matrices of `ρ` from a truncated form complex to cochains
/// relative to the same subset.
pub fn rho(t: &TruncatedComplex, c: &NormalizedCochains) -> Result<Vec<SparseMatrix>> {
    if t.host() != c.host() || t.relative_to() != c.relative_to() {
        return Err(Error::HostMismatch);
    }
    (0..t.complex().len())
        .map(|q| {
            let cols = t.basis(q).iter().map(|g| rho_form(g, c)).collect::<Result<Vec<_>>>()?;
            Ok(SparseMatrix::from_columns(c.complex().dim(q), cols))
        })
        .collect()
}

/// `ρ ∘ d = δ ∘ ρ` exactly.
pub fn is_chain_map(source: &CochainComplex, target: &CochainComplex, maps: &[SparseMatrix]) -> bool {
    (0..source.len().saturating_sub(1)).all(|q| {
        let lhs = maps[q + 1].mul(&source.differential(q));
        let rhs = target.differential(q).mul(&maps[q]);
        lhs == rhs
    })
}

/// One sampled product `[a] ∧ [b]` compared with `ρa ⌣ ρb`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub degrees: (usize, usize),
    pub classes: (usize, usize),
    pub holds: bool,
    /// Cochain `w` with `δw = ρ(a ∧ b) − ρa ⌣ ρb`, as `(simplex, value)`.
    pub witness: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub space: String,
    pub variant: String,
    pub degree_bound: u32,
    pub form_betti: Vec<usize>,
    pub cochain_betti: Vec<usize>,
    /// Matrix of `ρ` on cohomology per degree, rows then entries.
    pub rho_on_cohomology: Vec<Vec<Vec<String>>>,
    pub chain_map: bool,
    pub isomorphism: bool,
    pub stabilized: bool,
    pub stabilization_level: Option<usize>,
    pub products: Vec<ProductCheck>,
    pub multiplicative: bool,
}

pub(crate) fn render_matrix(m: &SparseMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|row| row.iter().map(rational::render).collect()).collect()
}

impl ComparisonReport {
    /// Recomputes the isomorphism verdict from the stored matrices.
    pub fn recompute_isomorphism(&self) -> bool {
        self.rho_on_cohomology.iter().enumerate().all(|(q, rows)| {
            let dense: Vec<Vec<Q>> =
                rows.iter().map(|r| r.iter().map(|x| rational::parse(x).unwrap_or_else(rational::zero)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            let (a, c) = (self.form_betti[q], self.cochain_betti[q]);
            a == c && (a == 0 || MapRank::of(&m).rank == a)
        })
    }

    pub fn all_verdicts(&self) -> bool {
        self.chain_map && self.isomorphism && self.stabilized && self.multiplicative
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("space {} ({})\n", self.space, self.variant));
        out.push_str(&format!("degree bound {}\n", self.degree_bound));
        out.push_str(&format!("forms betti {:?}\n", self.form_betti));
        out.push_str(&format!("cochains betti {:?}\n", self.cochain_betti));
        for (q, m) in self.rho_on_cohomology.iter().enumerate() {
            let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            out.push_str(&format!("rho H{q} {}\n", if rows.is_empty() { "[]".to_string() } else { rows.join(" ") }));
        }
        out.push_str(&format!("chain map {}\n", self.chain_map));
        out.push_str(&format!("isomorphism {}\n", self.isomorphism));
        match self.stabilization_level {
            Some(n) => out.push_str(&format!("stabilized {} at level {n}\n", self.stabilized)),
            None => out.push_str(&format!("stabilized {}\n", self.stabilized)),
        }
        for p in &self.products {
            out.push_str(&format!(
                "product H{}[{}] x H{}[{}] {} witness {}\n",
                p.degrees.0,
                p.classes.0,
                p.degrees.1,
                p.classes.1,
                if p.holds { "ok" } else { "FAILED" },
                p.witness.len()
            ));
        }
        out.push_str(&format!("multiplicative {}\n", self.multiplicative));
        out
    }
}

/// `ρ` on cohomology and whether it is an isomorphism in every degree.
fn rho_on_cohomology(ha: &Cohomology, hc: &Cohomology, maps: &[SparseMatrix]) -> Result<(Vec<SparseMatrix>, bool)> {
    let mut mats = Vec::new();
    let mut iso = true;
    for q in 0..ha.complex().len().max(hc.complex().len()) {
        let m = if q < maps.len() {
            induced_matrix(ha, hc, &maps[q], q)?
        } else {
            SparseMatrix::zeros(hc.betti_at(q), ha.betti_at(q))
        };
        iso &= MapRank::of(&m).isomorphism();
        mats.push(m);
    }
    Ok((mats, iso))
}

/// Checks `ρ(a ∧ b) − ρa ⌣ ρb = δw` for every pair of representatives
/// `a ∈ H^p`, `b ∈ H^q` with `p, q ≥ 1`, `p + q ≤ top`.
fn products(t: &TruncatedComplex, ha: &Cohomology, c: &NormalizedCochains, hc: &Cohomology) -> Result<Vec<ProductCheck>> {
    let top = t.complex().len();
    let mut out = Vec::new();
    for p in 1..top {
        for q in p..top - p {
            for (i, a) in ha.representatives(p).iter().enumerate() {
                for (j, b) in ha.representatives(q).iter().enumerate() {
                    let fa = t.form(p, a);
                    let fb = t.form(q, b);
                    let lhs = rho_form(&fa.wedge(&fb)?, c)?;
                    let rhs = c.cup(p, &rho_form(&fa, c)?, c, q, &rho_form(&fb, c)?, c)?;
                    let diff = lhs.sub(&rhs);
                    let witness = hc.coboundary_witness(p + q, &diff);
                    let holds = witness.as_ref().is_some_and(|w| c.complex().apply_d(p + q - 1, w) == diff);
                    let witness = witness
                        .map(|w| {
                            w.iter()
                                .map(|(k, x)| (c.host().name(c.basis(p + q - 1)[k]).to_string(), rational::render(x)))
                                .collect()
                        })
                        .unwrap_or_default();
                    out.push(ProductCheck { degrees: (p, q), classes: (i, j), holds, witness });
                }
            }
        }
    }
    Ok(out)
}

/// Whether the window inclusion `D → D + 1` is a cohomology isomorphism.
fn window_stable(t: &TruncatedComplex, ha: &Cohomology) -> Result<bool> {
    let bigger = TruncatedComplex::relative(t.relative_to(), t.bound() + 1)?;
    let hb = Cohomology::new(bigger.complex());
    let inc = t.inclusion_into(&bigger)?;
    for (q, m) in inc.iter().enumerate() {
        if !MapRank::of(&induced_matrix(ha, &hb, m, q)?).isomorphism() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn compare(label: &str, variant: &str, a: &SubSet, bound: u32) -> Result<ComparisonReport> {
    let t = TruncatedComplex::relative(a, bound)?;
    let c = NormalizedCochains::relative(a);
    let maps = rho(&t, &c)?;
    let chain_map = is_chain_map(t.complex(), c.complex(), &maps);
    let ha = Cohomology::new(t.complex());
    let hc = Cohomology::new(c.complex());
    let (mats, isomorphism) = rho_on_cohomology(&ha, &hc, &maps)?;
    let stabilized = window_stable(&t, &ha)?;
    let products = products(&t, &ha, &c, &hc)?;
    Ok(ComparisonReport {
        space: label.to_string(),
        variant: variant.to_string(),
        degree_bound: bound,
        form_betti: ha.betti(),
        cochain_betti: hc.betti(),
        rho_on_cohomology: mats.iter().map(render_matrix).collect(),
        chain_map,
        isomorphism,
        stabilized,
        stabilization_level: None,
        multiplicative: products.iter().all(|p| p.holds),
        products,
    })
}

/// PL de Rham comparison for a finite simplicial set.
pub fn derham_check(label: &str, x: &SimplicialSet, bound: u32) -> Result<ComparisonReport> {
    compare(label, "absolute", &SubSet::empty(x), bound)
}

/// Relative comparison `A*(X, A) → NC*(X, A)`.
pub fn derham_check_relative(label: &str, a: &SubSet, bound: u32) -> Result<ComparisonReport> {
    compare(label, "relative", a, bound)
}

/// The directed system `A*_{≤D}(X_{n+1}, ⟨X_{n+1} ∖ K_n⟩)` with extension by zero.
pub struct CompactForms<'a> {
    exhaustion: &'a dyn Exhaustion,
    bound: u32,
    cache: Vec<Option<TruncatedComplex>>,
}

impl<'a> CompactForms<'a> {
    pub fn new(exhaustion: &'a dyn Exhaustion, bound: u32) -> Self {
        Self { exhaustion, bound, cache: Vec::new() }
    }

    pub fn level(&mut self, n: usize) -> Result<&TruncatedComplex> {
        if self.cache.len() <= n {
            self.cache.resize_with(n + 1, || None);
        }
        if self.cache[n].is_none() {
            let level = CompactLevel::new(self.exhaustion, n)?;
            self.cache[n] = Some(TruncatedComplex::relative(&level.frontier, self.bound)?);
        }
        Ok(self.cache[n].as_ref().unwrap())
    }
}

impl DirectedSystem for CompactForms<'_> {
    fn complex(&mut self, n: usize) -> Result<CochainComplex> {
        Ok(self.level(n)?.complex().clone())
    }

    fn map(&mut self, n: usize) -> Result<Vec<SparseMatrix>> {
        let small = self.level(n)?.clone();
        let big = self.level(n + 1)?;
        small.inclusion_into(big)
    }
}

/// `colim_n H A*(X, ⟨X ∖ K_n⟩)` with its stabilization certificate.
pub fn colimit_hc(exhaustion: &dyn Exhaustion, bound: u32, max_level: usize) -> Result<Colimit> {
    Ok(colimit(&mut CompactForms::new(exhaustion, bound), max_level)?.0)
}

/// Compactly supported comparison: both colimits, and `ρ_c` at the stable level.
pub fn derham_check_compact(exhaustion: &dyn Exhaustion, bound: u32, max_level: usize) -> Result<ComparisonReport> {
    let mut forms = CompactForms::new(exhaustion, bound);
    let (fcol, fcoh) = colimit(&mut forms, max_level)?;
    let mut cochains = CompactCochains::new(exhaustion);
    let (ccol, ccoh) = colimit(&mut cochains, max_level)?;
    let level = match (fcol.stable_level, ccol.stable_level) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    let n = level.unwrap_or(fcoh.len().min(ccoh.len()));
    let t = forms.level(n)?.clone();
    let c = cochains.level(n)?.1.clone();
    let maps = rho(&t, &c)?;
    let ha = &fcoh[n - 1];
    let hc = &ccoh[n - 1];
    let mut chain_map = is_chain_map(t.complex(), c.complex(), &maps);
    // naturality of ρ against the directed-system maps out of level n
    if n + 1 <= fcoh.len().min(ccoh.len()) {
        let t2 = forms.level(n + 1)?.clone();
        let c2 = cochains.level(n + 1)?.1.clone();
        let maps2 = rho(&t2, &c2)?;
        let phi = t.inclusion_into(&t2)?;
        let psi = c.extension_by_zero(&c2)?;
        chain_map &= (0..phi.len()).all(|q| maps2[q].mul(&phi[q]) == psi[q].mul(&maps[q]));
    }
    let (mats, isomorphism) = rho_on_cohomology(ha, hc, &maps)?;
    let products = products(&t, ha, &c, hc)?;
    Ok(ComparisonReport {
        space: exhaustion.name(),
        variant: "compact".into(),
        degree_bound: bound,
        form_betti: fcol.betti.clone().unwrap_or_else(|| ha.betti()),
        cochain_betti: ccol.betti.clone().unwrap_or_else(|| hc.betti()),
        rho_on_cohomology: mats.iter().map(render_matrix).collect(),
        chain_map,
        isomorphism,
        stabilized: level.is_some(),
        stabilization_level: level,
        multiplicative: products.iter().all(|p| p.holds),
        products,
    })
}
