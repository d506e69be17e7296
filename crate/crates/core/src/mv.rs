//! Mayer–Vietoris sequences for PL forms.
//!
//! Both variants reduce to the same square of truncated complexes
//!
//! ```text
//!   X ──a──> U
//!   │        │ c
//!   b        v
//!   V ──e──> W
//! ```
//!
//! (arrows are pullbacks) with `θ₁ ω = (s₁ a ω, s₂ b ω)` and
//! `θ₂ (α, β) = t₁ c α + t₂ e β`. For a cover `{U, V}` of a finite `X`
//! the maps are restrictions and `W = U ∩ V`. For a pushout
//! `X = U ⊔_W V` they are pullbacks along `h`, `g`, `f` and `ι`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bump::{bump_function, good_intersection, partition_of_unity, BumpSpec};
use crate::cochains::{colimit, induced_matrix, CochainComplex, Cohomology, CompactLevel};
use crate::derham::{render_matrix, CompactForms};
use crate::error::{Error, Hypothesis, Result};
use crate::forms::{GlobalForm, TruncatedComplex};
use crate::linalg::{Reducer, SparseMatrix, SparseVec};
use crate::rational::Q;
use crate::simplicial::{
    is_proper, is_proper_tower, pushout, Exhaustion, HalfLine, Properness, Pushout, SimplicialMap, SimplicialSet,
    SubSet,
};

/// Short exact sequence verdicts in one form degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesDegree {
    pub degree: usize,
    /// Dimensions of the `X`, `U ⊕ V` and `W` terms.
    pub dims: [usize; 3],
    pub chain_maps: bool,
    pub composition_zero: bool,
    pub injective: bool,
    pub middle_exact: bool,
    pub surjective: bool,
}

impl SesDegree {
    pub fn exact(&self) -> bool {
        self.chain_maps && self.composition_zero && self.injective && self.middle_exact && self.surjective
    }
}

/// One group of the long exact sequence with the ranks of the maps in and out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composition_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutProperness {
    pub f: Properness,
    pub g: Properness,
    pub h: Properness,
}

#[derive(Clone, Debug, Serialize)]
pub struct MvReport {
    pub variant: String,
    pub space: String,
    pub degree_bound: u32,
    /// Truncation level of the compactly supported computation.
    pub level: Option<usize>,
    pub betti_x: Vec<usize>,
    pub betti_u: Vec<usize>,
    pub betti_v: Vec<usize>,
    pub betti_w: Vec<usize>,
    pub ses: Vec<SesDegree>,
    pub les: Vec<LesNode>,
    /// Matrix of the connecting map `H^q(W) → H^{q+1}(X)` per `q`.
    pub connecting: Vec<Vec<Vec<String>>>,
    /// Surjectivity of `θ₂` through the construction of the proof: the
    /// partition splitting for covers, the bump extension `ψω₀` for pushouts.
    pub splitting: Option<bool>,
    pub gluing: Option<bool>,
    pub properness: Option<PushoutProperness>,
    /// Stable level of each corner's colimit, in the order `X, U, V, W`.
    pub stable_levels: Option<Vec<Option<usize>>>,
}

impl MvReport {
    pub fn ses_exact(&self) -> bool {
        self.ses.iter().all(SesDegree::exact)
    }

    pub fn les_exact(&self) -> bool {
        self.les.iter().all(|n| n.exact)
    }

    pub fn stabilized(&self) -> bool {
        self.stable_levels.as_ref().is_none_or(|ls| ls.iter().all(Option::is_some))
    }

    pub fn all_verdicts(&self) -> bool {
        self.ses_exact()
            && self.les_exact()
            && self.splitting.unwrap_or(true)
            && self.gluing.unwrap_or(true)
            && self.stabilized()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("mayer-vietoris {} on {}\n", self.variant, self.space);
        out.push_str(&format!("degree bound {}\n", self.degree_bound));
        if let Some(n) = self.level {
            out.push_str(&format!("level {n}\n"));
        }
        if let Some(ls) = &self.stable_levels {
            let shown: Vec<String> = ls.iter().map(|l| l.map_or("none".into(), |n| n.to_string())).collect();
            out.push_str(&format!("stable levels {}\n", shown.join(" ")));
        }
        if let Some(p) = &self.properness {
            out.push_str(&format!(
                "proper f {} g {} h {}\n",
                p.f.is_proper(),
                p.g.is_proper(),
                p.h.is_proper()
            ));
        }
        out.push_str(&format!("betti X {:?}\n", self.betti_x));
        out.push_str(&format!("betti U {:?}\n", self.betti_u));
        out.push_str(&format!("betti V {:?}\n", self.betti_v));
        out.push_str(&format!("betti W {:?}\n", self.betti_w));
        for s in &self.ses {
            out.push_str(&format!(
                "ses degree {} dims {:?} chain {} zero {} injective {} middle {} surjective {}\n",
                s.degree, s.dims, s.chain_maps, s.composition_zero, s.injective, s.middle_exact, s.surjective
            ));
        }
        for n in &self.les {
            out.push_str(&format!(
                "les {} dim {} in {} out {} exact {}\n",
                n.label, n.dim, n.rank_in, n.rank_out, n.exact
            ));
        }
        for (q, m) in self.connecting.iter().enumerate() {
            let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            out.push_str(&format!("connecting H{q} {}\n", if rows.is_empty() { "[]".into() } else { rows.join(" ") }));
        }
        if let Some(s) = self.splitting {
            out.push_str(&format!("splitting {s}\n"));
        }
        if let Some(g) = self.gluing {
            out.push_str(&format!("gluing {g}\n"));
        }
        out.push_str(&format!("exact {}\n", self.ses_exact() && self.les_exact()));
        out
    }
}

struct Square<'a> {
    x: &'a TruncatedComplex,
    u: &'a TruncatedComplex,
    v: &'a TruncatedComplex,
    w: &'a TruncatedComplex,
    /// `X ← U`, `X ← V`, `U ← W`, `V ← W` as simplicial maps.
    a: &'a SimplicialMap,
    b: &'a SimplicialMap,
    c: &'a SimplicialMap,
    e: &'a SimplicialMap,
    s: (Q, Q),
    t: (Q, Q),
}

/// Results of the square: everything except variant-specific checks.
struct Sequence {
    len: usize,
    theta1: Vec<SparseMatrix>,
    theta2: Vec<SparseMatrix>,
    ses: Vec<SesDegree>,
    les: Vec<LesNode>,
    connecting: Vec<SparseMatrix>,
    betti: [Vec<usize>; 4],
}

fn dim_at(t: &TruncatedComplex, q: usize) -> usize {
    if q < t.complex().len() {
        t.complex().dim(q)
    } else {
        0
    }
}

fn basis_at(t: &TruncatedComplex, q: usize) -> &[GlobalForm] {
    if q < t.complex().len() {
        t.basis(q)
    } else {
        &[]
    }
}

fn coordinates_at(t: &TruncatedComplex, w: &GlobalForm) -> Result<SparseVec> {
    if w.degree() < t.complex().len() {
        t.coordinates(w)
    } else if w.is_zero() {
        Ok(SparseVec::new())
    } else {
        Err(Error::OutsideWindow(format!("nonzero form of degree {} above the top degree", w.degree())))
    }
}

/// The complex extended by zero groups up to `len` degrees.
fn padded(c: &CochainComplex, len: usize) -> Result<CochainComplex> {
    let dims: Vec<usize> = (0..len).map(|q| if q < c.len() { c.dim(q) } else { 0 }).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|q| if q + 1 < c.len() { c.differential(q) } else { SparseMatrix::zeros(dims[q + 1], dims[q]) })
        .collect();
    CochainComplex::new(dims, diffs)
}

fn shift(v: &SparseVec, by: usize) -> SparseVec {
    v.remap(|i| Some(i + by))
}

fn direct_sum(p: &CochainComplex, q: &CochainComplex) -> Result<CochainComplex> {
    let dims: Vec<usize> = (0..p.len()).map(|n| p.dim(n) + q.dim(n)).collect();
    let diffs = (0..p.len().saturating_sub(1))
        .map(|n| {
            let (dp, dq) = (p.differential(n), q.differential(n));
            let mut cols: Vec<SparseVec> = dp.columns().to_vec();
            cols.extend(dq.columns().iter().map(|c| shift(c, dp.rows())));
            SparseMatrix::from_columns(dims[n + 1], cols)
        })
        .collect();
    CochainComplex::new(dims, diffs)
}

fn rank_of(m: &SparseMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

fn solver(m: &SparseMatrix) -> Reducer {
    let mut r = Reducer::new();
    for (j, c) in m.columns().iter().enumerate() {
        r.insert(c.clone(), SparseVec::unit(j));
    }
    r
}

impl Square<'_> {
    fn run(&self) -> Result<Sequence> {
        let len = [self.x, self.u, self.v, self.w].iter().map(|t| t.complex().len()).max().unwrap_or(0);
        let mut theta1 = Vec::with_capacity(len);
        let mut theta2 = Vec::with_capacity(len);
        for q in 0..len {
            let (du, dv, dw) = (dim_at(self.u, q), dim_at(self.v, q), dim_at(self.w, q));
            let cols = basis_at(self.x, q)
                .iter()
                .map(|g| {
                    let cu = coordinates_at(self.u, &g.pullback(self.a)?)?.scaled(&self.s.0);
                    let cv = coordinates_at(self.v, &g.pullback(self.b)?)?.scaled(&self.s.1);
                    Ok(cu.add(&shift(&cv, du)))
                })
                .collect::<Result<Vec<_>>>()?;
            theta1.push(SparseMatrix::from_columns(du + dv, cols));
            let mut cols = Vec::with_capacity(du + dv);
            for g in basis_at(self.u, q) {
                cols.push(coordinates_at(self.w, &g.pullback(self.c)?)?.scaled(&self.t.0));
            }
            for g in basis_at(self.v, q) {
                cols.push(coordinates_at(self.w, &g.pullback(self.e)?)?.scaled(&self.t.1));
            }
            theta2.push(SparseMatrix::from_columns(dw, cols));
        }
        let cx = padded(self.x.complex(), len)?;
        let cu = padded(self.u.complex(), len)?;
        let cv = padded(self.v.complex(), len)?;
        let cw = padded(self.w.complex(), len)?;
        let cuv = direct_sum(&cu, &cv)?;

        let mut ses = Vec::with_capacity(len);
        for q in 0..len {
            let (t1, t2) = (&theta1[q], &theta2[q]);
            let chain_maps = q + 1 >= len
                || (theta1[q + 1].mul(&cx.differential(q)) == cuv.differential(q).mul(t1)
                    && theta2[q + 1].mul(&cuv.differential(q)) == cw.differential(q).mul(t2));
            let (r1, r2) = (rank_of(t1), rank_of(t2));
            ses.push(SesDegree {
                degree: q,
                dims: [cx.dim(q), cuv.dim(q), cw.dim(q)],
                chain_maps,
                composition_zero: t2.mul(t1).is_zero(),
                injective: r1 == cx.dim(q),
                middle_exact: r1 + r2 == cuv.dim(q),
                surjective: r2 == cw.dim(q),
            });
        }

        let (hx, hu, hv, hw, huv) = (
            Cohomology::new(&cx),
            Cohomology::new(&cu),
            Cohomology::new(&cv),
            Cohomology::new(&cw),
            Cohomology::new(&cuv),
        );
        let mut alpha = Vec::with_capacity(len);
        let mut beta = Vec::with_capacity(len);
        let mut delta = Vec::with_capacity(len);
        for q in 0..len {
            alpha.push(induced_matrix(&hx, &huv, &theta1[q], q)?);
            beta.push(induced_matrix(&huv, &hw, &theta2[q], q)?);
            delta.push(self.connecting(q, &theta1, &theta2, &cuv, &hx, &hw)?);
        }

        // H^0 X → H^0(U⊕V) → H^0 W → H^1 X → …, with a zero map into the first term
        let mut maps: Vec<&SparseMatrix> = Vec::with_capacity(3 * len);
        for q in 0..len {
            maps.push(&alpha[q]);
            maps.push(&beta[q]);
            maps.push(&delta[q]);
        }
        let mut les = Vec::with_capacity(3 * len);
        for (k, out) in maps.iter().enumerate() {
            let q = k / 3;
            let (label, dim) = match k % 3 {
                0 => (format!("H{q}(X)"), hx.betti_at(q)),
                1 => (format!("H{q}(U)+H{q}(V)"), huv.betti_at(q)),
                _ => (format!("H{q}(W)"), hw.betti_at(q)),
            };
            let (rank_in, composition_zero) = match k.checked_sub(1) {
                Some(i) => (rank_of(maps[i]), out.mul(maps[i]).is_zero()),
                None => (0, true),
            };
            let rank_out = rank_of(out);
            les.push(LesNode { label, dim, rank_in, rank_out, composition_zero, exact: composition_zero && rank_in + rank_out == dim });
        }
        Ok(Sequence {
            len,
            theta1,
            theta2,
            ses,
            les,
            connecting: delta,
            betti: [hx.betti(), hu.betti(), hv.betti(), hw.betti()],
        })
    }

    /// The zig-zag: lift a representative along `θ₂`, differentiate, pull
    /// back along `θ₁` and classify in `H^{q+1}(X)`.
    fn connecting(
        &self,
        q: usize,
        theta1: &[SparseMatrix],
        theta2: &[SparseMatrix],
        cuv: &CochainComplex,
        hx: &Cohomology,
        hw: &Cohomology,
    ) -> Result<SparseMatrix> {
        let reps = hw.representatives(q);
        if q + 1 >= theta1.len() {
            return Ok(SparseMatrix::zeros(0, reps.len()));
        }
        let lift = solver(&theta2[q]);
        let back = solver(&theta1[q + 1]);
        let mut cols = Vec::with_capacity(reps.len());
        for z in reps {
            let y = lift.solve(z).ok_or_else(|| Error::NoSolution(format!("no lift along theta2 in degree {q}")))?;
            let dy = cuv.apply_d(q, &y);
            let x = back
                .solve(&dy)
                .ok_or_else(|| Error::NoSolution(format!("d of the lift is not in the image of theta1 in degree {}", q + 1)))?;
            cols.push(SparseVec::from_dense(&hx.classify(q + 1, &x)?.coordinates));
        }
        Ok(SparseMatrix::from_columns(hx.betti_at(q + 1), cols))
    }
}

fn report(variant: &str, space: String, bound: u32, seq: &Sequence) -> MvReport {
    let [bx, bu, bv, bw] = seq.betti.clone();
    MvReport {
        variant: variant.into(),
        space,
        degree_bound: bound,
        level: None,
        betti_x: bx,
        betti_u: bu,
        betti_v: bv,
        betti_w: bw,
        ses: seq.ses.clone(),
        les: seq.les.clone(),
        connecting: seq.connecting.iter().map(render_matrix).collect(),
        splitting: None,
        gluing: None,
        properness: None,
        stable_levels: None,
    }
}

/// Mayer–Vietoris for a cover `{U, V}` of a finite `X` with good intersection,
/// on the truncated complexes `A*_{≤D}`. Requires `D ≥ dim X`.
pub fn mv_v1(label: &str, u: &SubSet, v: &SubSet, bound: u32) -> Result<MvReport> {
    if u.host() != v.host() {
        return Err(Error::HostMismatch);
    }
    if !good_intersection(u, v)? {
        return Err(Error::Hypothesis(Hypothesis::GoodIntersection));
    }
    let host = u.host();
    let w = u.intersection(v)?;
    let (us, _) = u.to_simplicial_set();
    let (vs, _) = v.to_simplicial_set();
    let (ws, _) = w.to_simplicial_set();
    let a = SimplicialMap::inclusion_by_name(&us, host)?;
    let b = SimplicialMap::inclusion_by_name(&vs, host)?;
    let c = SimplicialMap::inclusion_by_name(&ws, &us)?;
    let e = SimplicialMap::inclusion_by_name(&ws, &vs)?;
    let tx = TruncatedComplex::new(host, bound)?;
    let tu = TruncatedComplex::new(&us, bound)?;
    let tv = TruncatedComplex::new(&vs, bound)?;
    let tw = TruncatedComplex::new(&ws, bound)?;
    let one = Q::from_integer(1.into());
    let square = Square {
        x: &tx,
        u: &tu,
        v: &tv,
        w: &tw,
        a: &a,
        b: &b,
        c: &c,
        e: &e,
        s: (one.clone(), -one.clone()),
        t: (one.clone(), one),
    };
    let seq = square.run()?;
    let mut out = report("v1", label.to_string(), bound, &seq);
    out.splitting = Some(splitting_holds(u, v, &tw, &us, &vs)?);
    out.gluing = Some(gluing_holds(&square, &seq)?);
    Ok(out)
}

/// For each basis form `ω` of `A*(U ∩ V)`, the pair
/// `(ext_U(φ_V ω), ext_V(φ_U ω))` consists of valid forms restricting back to `ω`.
fn splitting_holds(u: &SubSet, v: &SubSet, tw: &TruncatedComplex, us: &SimplicialSet, vs: &SimplicialSet) -> Result<bool> {
    let (phi_u, phi_v) = partition_of_unity(u, v)?;
    let ws = tw.host();
    let iw = SimplicialMap::inclusion_by_name(ws, u.host())?;
    let (fu, fv) = (phi_u.restrict(&iw)?, phi_v.restrict(&iw)?);
    let cu = SimplicialMap::inclusion_by_name(ws, us)?;
    let cv = SimplicialMap::inclusion_by_name(ws, vs)?;
    for q in 0..tw.complex().len() {
        for omega in tw.basis(q) {
            let left = fv.wedge(omega)?.transport(us);
            let right = fu.wedge(omega)?.transport(vs);
            let (Ok(left), Ok(right)) = (left, right) else { return Ok(false) };
            let diff = left.restrict(&cu)?.add(&right.restrict(&cv)?)?.sub(omega)?;
            if !diff.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs in the kernel of `θ₂` glue to a form on `X` mapping to them under `θ₁`.
fn gluing_holds(square: &Square, seq: &Sequence) -> Result<bool> {
    let host = square.x.host();
    for q in 0..seq.len {
        let du = dim_at(square.u, q);
        for k in seq.theta2[q].kernel() {
            let alpha = square.u.form(q, &k.remap(|i| (i < du).then_some(i)));
            let beta = square.v.form(q, &k.remap(|i| i.checked_sub(du)));
            let minus_beta = beta.scale(&-Q::from_integer(1.into()));
            let mut values = BTreeMap::new();
            for part in [&alpha, &minus_beta] {
                for (r, w) in part.values() {
                    let name = part.host().name(r);
                    let t = host.find(r.dim, name).ok_or_else(|| Error::UnknownSimplex(name.to_string()))?;
                    match values.get(&t) {
                        Some(existing) if existing != w => return Ok(false),
                        Some(_) => {}
                        None => {
                            values.insert(t, w.clone());
                        }
                    }
                }
            }
            let Ok(psi) = GlobalForm::from_values(host, q, values) else { return Ok(false) };
            let Ok(coords) = square.x.coordinates(&psi) else { return Ok(false) };
            if seq.theta1[q].mul_vec(&coords) != k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every basis form `ω` of `A*_c(W)` is the restriction of `ψω₀ ∈ A*_c(V)`,
/// where `ω₀` extends `ω` and `ψ` is a bump function equal to one on
/// `supp ω` and zero outside `ε(supp ω)`.
fn bump_extension_holds(tw: &TruncatedComplex, tv: &TruncatedComplex, iota: &SimplicialMap) -> Result<bool> {
    for q in 0..tw.complex().len() {
        for omega in tw.basis(q) {
            let omega0 = omega.extend_along(iota)?;
            let support = iota.image(&omega.support())?;
            let psi = bump_function(&BumpSpec::new(support.clone(), support.minimal_neighborhood())?)?;
            let lifted = psi.wedge(&omega0)?;
            if !lifted.pullback(iota)?.sub(omega)?.is_zero() || !lifted.vanishes_on(tv.relative_to()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pushout data `f: W → U`, `ι: W ↪ V` given level by level. For an
/// infinite system, level `n` consists of truncations of `W`, `U` and `V`
/// with names stable across levels.
pub trait PushoutTower {
    fn name(&self) -> String;
    fn is_finite(&self) -> bool;
    /// `(f_n, ι_n)` for `n ≥ 1`.
    fn level(&self, n: usize) -> Result<(SimplicialMap, SimplicialMap)>;
}

/// A single finite pushout square.
#[derive(Clone, Debug)]
pub struct FinitePushout {
    pub label: String,
    pub f: SimplicialMap,
    pub iota: SimplicialMap,
}

impl PushoutTower for FinitePushout {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn level(&self, _n: usize) -> Result<(SimplicialMap, SimplicialMap)> {
        Ok((self.f.clone(), self.iota.clone()))
    }
}

/// The real line as two closed half-lines glued at their end points.
#[derive(Clone, Copy, Debug, Default)]
pub struct HalfLinesAtPoint;

impl PushoutTower for HalfLinesAtPoint {
    fn name(&self) -> String {
        "two half-lines glued at a point".into()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn level(&self, n: usize) -> Result<(SimplicialMap, SimplicialMap)> {
        let point = crate::simplicial::standard_simplex(0);
        let half = HalfLine.level(n);
        let origin = half.find(0, "v0").ok_or_else(|| Error::UnknownSimplex("v0".into()))?;
        let f = SimplicialMap::constant(&point, &half, origin)?;
        Ok((f.clone(), f))
    }
}

/// Constant levels, or levels matched by name.
struct Levels {
    levels: Vec<SimplicialSet>,
    finite: bool,
    label: String,
}

impl Exhaustion for Levels {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn level(&self, n: usize) -> SimplicialSet {
        self.levels[n.clamp(1, self.levels.len()) - 1].clone()
    }

    fn is_finite(&self) -> bool {
        self.finite
    }
}

fn properness_of(levels: Vec<SimplicialMap>, finite: bool) -> Result<Properness> {
    if finite || levels.len() == 1 {
        return Ok(is_proper(&levels[0]));
    }
    let last = levels.last().expect("nonempty").target().clone();
    let moved = levels
        .iter()
        .map(|m| m.compose(&SimplicialMap::inclusion_by_name(m.target(), &last)?))
        .collect::<Result<Vec<_>>>()?;
    is_proper_tower(&moved)
}

/// Mayer–Vietoris for a pushout `X = U ⊔_W V` along `f: W → U` and
/// `ι: W ↪ V`, on compactly supported forms: `θ₁ = (h^*, g^*)` and
/// `θ₂ = ι^* ∘ pr_V − f^* ∘ pr_U`. Infinite systems are computed at the
/// first level where every corner's colimit has stabilized.
pub fn mv_v2(tower: &dyn PushoutTower, bound: u32, max_level: usize) -> Result<MvReport> {
    let count = if tower.is_finite() { 1 } else { max_level + 2 };
    let mut squares: Vec<(SimplicialMap, SimplicialMap, Pushout)> = Vec::with_capacity(count);
    for n in 1..=count {
        let (f, iota) = tower.level(n)?;
        if !iota.is_inclusion() {
            return Err(Error::Hypothesis(Hypothesis::Inclusion));
        }
        let p = pushout(&f, &iota)?;
        squares.push((f, iota, p));
    }
    let finite = tower.is_finite();
    let f_proper = properness_of(squares.iter().map(|s| s.0.clone()).collect(), finite)?;
    if !f_proper.is_proper() {
        return Err(Error::Hypothesis(Hypothesis::ProperMap));
    }
    let properness = PushoutProperness {
        f: f_proper,
        g: properness_of(squares.iter().map(|s| s.2.g.clone()).collect(), finite)?,
        h: properness_of(squares.iter().map(|s| s.2.h.clone()).collect(), finite)?,
    };
    let corner = |pick: &dyn Fn(&(SimplicialMap, SimplicialMap, Pushout)) -> SimplicialSet, label: &str| Levels {
        levels: squares.iter().map(pick).collect(),
        finite,
        label: format!("{} {label}", tower.name()),
    };
    let corners = [
        corner(&|s| s.2.space.clone(), "X"),
        corner(&|s| s.0.target().clone(), "U"),
        corner(&|s| s.1.target().clone(), "V"),
        corner(&|s| s.0.source().clone(), "W"),
    ];
    let (level, stable_levels) = if finite {
        (1, None)
    } else {
        let mut stable = Vec::with_capacity(4);
        for (k, c) in corners.iter().enumerate() {
            let outcome = colimit(&mut CompactForms::new(c, bound), max_level);
            match outcome {
                Err(Error::Hypothesis(Hypothesis::Exhaustion)) if k == 2 => {
                    return Err(Error::Hypothesis(Hypothesis::LocallyFinite))
                }
                other => stable.push(other?.0.stable_level),
            }
        }
        let n = stable.iter().map(|s| s.unwrap_or(max_level)).max().unwrap_or(1).min(max_level);
        (n, Some(stable))
    };
    let windows = corners
        .iter()
        .map(|c| TruncatedComplex::relative(&CompactLevel::new(c, level)?.frontier, bound))
        .collect::<Result<Vec<_>>>()?;
    let (f, iota, p) = &squares[if finite { 0 } else { level }];
    let one = Q::from_integer(1.into());
    let square = Square {
        x: &windows[0],
        u: &windows[1],
        v: &windows[2],
        w: &windows[3],
        a: &p.h,
        b: &p.g,
        c: f,
        e: iota,
        s: (one.clone(), one.clone()),
        t: (-one.clone(), one),
    };
    let seq = square.run()?;
    let mut out = report("v2", tower.name(), bound, &seq);
    out.splitting = Some(bump_extension_holds(&windows[3], &windows[2], iota)?);
    out.level = (!finite).then_some(level);
    out.properness = Some(properness);
    out.stable_levels = stable_levels;
    Ok(out)
}

/// The covers and pushout squares used as standard instances.
pub mod instances {
    use super::FinitePushout;
    use crate::error::Result;
    use crate::simplicial::{boundary_simplex, circle, standard_simplex, torus_grid, SimplexRef, SimplicialMap, SimplicialSet, SubSet};

    /// Hexagonal circle covered by the arcs `e0..e3` and `e3, e4, e5, e0`.
    pub fn circle_by_arcs() -> Result<(SubSet, SubSet)> {
        let x = circle(6)?;
        let arc = |ks: [usize; 4]| SubSet::generated(&x, ks.map(|k| SimplexRef::new(1, k)));
        Ok((arc([0, 1, 2, 3])?, arc([3, 4, 5, 0])?))
    }

    /// The `3 × 6` grid torus covered by two cylinders of four rows each,
    /// overlapping in rows 0 and 3.
    pub fn torus_by_cylinders() -> Result<(SubSet, SubSet)> {
        let t = torus_grid(3, 6)?;
        let strip = |rows: [usize; 4]| {
            SubSet::generated(
                &t,
                t.simplices_of_dim(2).filter(|r| rows.iter().any(|j| t.name(*r).ends_with(&format!("_{j}")))),
            )
        };
        Ok((strip([0, 1, 2, 3])?, strip([3, 4, 5, 0])?))
    }

    /// `Δ¹ ⊔ ∂Δ²` glued along the empty set.
    pub fn disjoint_union() -> Result<FinitePushout> {
        let w = SimplicialSet::empty();
        Ok(FinitePushout {
            label: "disjoint union of an interval and a triangle boundary".into(),
            f: SimplicialMap::new(w.clone(), standard_simplex(1), vec![])?,
            iota: SimplicialMap::new(w, boundary_simplex(2), vec![])?,
        })
    }

    /// `Δ¹` with both end points collapsed to a point.
    pub fn circle_from_interval() -> Result<FinitePushout> {
        let v = standard_simplex(1);
        let w = boundary_simplex(1);
        let iota = SimplicialMap::inclusion_by_name(&w, &v)?;
        let f = SimplicialMap::constant(&w, &standard_simplex(0), SimplexRef::new(0, 0))?;
        Ok(FinitePushout { label: "interval with end points glued".into(), f, iota })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle, real_line, standard_simplex, torus_grid, SimplexRef};

    #[test]
    fn hexagon_circle() {
        let (u, v) = instances::circle_by_arcs().unwrap();
        let r = mv_v1("hexagon", &u, &v, 1).unwrap();
        assert_eq!(r.betti_x, vec![1, 1]);
        assert_eq!(r.betti_u, vec![1, 0]);
        assert_eq!(r.betti_w, vec![2, 0]);
        assert!(r.ses_exact() && r.les_exact(), "{}", r.render_text());
        assert_eq!(r.splitting, Some(true));
        assert_eq!(r.gluing, Some(true));
        // H⁰(W) = Q² → H¹(X) = Q is onto
        assert_eq!(r.connecting[0].len(), 1);
        assert!(r.connecting[0][0].iter().any(|x| x != "0"));
    }

    #[test]
    fn torus_from_two_cylinders() {
        let (u, v) = instances::torus_by_cylinders().unwrap();
        let r = mv_v1("torus", &u, &v, 2).unwrap();
        assert_eq!(r.betti_x, vec![1, 2, 1]);
        assert_eq!(r.betti_u, vec![1, 1, 0]);
        assert_eq!(r.betti_w, vec![2, 2, 0]);
        assert!(r.all_verdicts(), "{}", r.render_text());
    }

    #[test]
    fn trivial_cover() {
        let x = torus_grid(3, 3).unwrap();
        let full = SubSet::full(&x);
        let r = mv_v1("torus", &full, &full, 2).unwrap();
        assert_eq!(r.betti_x, vec![1, 2, 1]);
        assert!(r.all_verdicts(), "{}", r.render_text());
    }

    #[test]
    fn bad_cover_is_rejected() {
        let x = circle(6).unwrap();
        let u = SubSet::generated(&x, [SimplexRef::new(1, 0)]).unwrap();
        assert_eq!(mv_v1("c", &u, &u, 1).unwrap_err(), Error::Hypothesis(Hypothesis::Cover));
    }

    #[test]
    fn disjoint_union_pushout() {
        let r = mv_v2(&instances::disjoint_union().unwrap(), 2, 4).unwrap();
        assert_eq!(r.betti_x, vec![2, 1]);
        assert!(r.all_verdicts(), "{}", r.render_text());
    }

    #[test]
    fn circle_from_interval() {
        let r = mv_v2(&instances::circle_from_interval().unwrap(), 1, 4).unwrap();
        assert_eq!(r.betti_x, vec![1, 1]);
        assert_eq!(r.betti_w, vec![2, 0]);
        assert!(r.all_verdicts(), "{}", r.render_text());
    }

    #[test]
    fn real_line_from_half_lines() {
        let r = mv_v2(&HalfLinesAtPoint, 1, 5).unwrap();
        assert_eq!(r.betti_x, vec![0, 1]);
        assert_eq!(r.betti_u, vec![0, 0]);
        assert_eq!(r.splitting, Some(true));
        assert_eq!(r.betti_w, vec![1, 0]);
        assert!(r.all_verdicts(), "{}", r.render_text());
        assert_eq!(r.connecting[0].len(), 1);
        assert_ne!(r.connecting[0][0][0], "0");
    }

    struct Collapse;

    impl PushoutTower for Collapse {
        fn name(&self) -> String {
            "collapse".into()
        }

        fn is_finite(&self) -> bool {
            false
        }

        fn level(&self, n: usize) -> Result<(SimplicialMap, SimplicialMap)> {
            let w = real_line(n);
            let f = SimplicialMap::constant(&w, &standard_simplex(0), SimplexRef::new(0, 0))?;
            Ok((f, SimplicialMap::identity(&w)))
        }
    }

    #[test]
    fn non_proper_map_is_rejected() {
        assert_eq!(mv_v2(&Collapse, 1, 3).unwrap_err(), Error::Hypothesis(Hypothesis::ProperMap));
    }
}
