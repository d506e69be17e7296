//! Global polynomial forms `A*X`: compatible assignments of `∇`-forms to the
//! simplices of a finite simplicial set, stored on non-degenerate simplices.

mod truncated;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{Error, Hypothesis, Result};
use crate::nabla::PolyForm;
use crate::rational::Q;
use crate::simplicial::{Properness, Simplex, SimplexRef, SimplicialMap, SimplicialSet, SubSet};

pub use truncated::{BasisLabel, TruncatedComplex};

/// Value at a possibly degenerate simplex of a partial assignment.
pub(crate) fn value_at(values: &BTreeMap<SimplexRef, PolyForm>, degree: usize, s: &Simplex) -> PolyForm {
    match values.get(&s.root) {
        None => PolyForm::zero(s.dim(), degree),
        Some(w) if !s.is_degenerate() => w.clone(),
        Some(w) => w.pullback(&s.degeneracy).expect("degeneracy targets the root"),
    }
}

/// An element of `A^q X`. Simplices with zero value are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalForm {
    host: SimplicialSet,
    degree: usize,
    values: BTreeMap<SimplexRef, PolyForm>,
}

/// Outcome of a support computation on a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    /// `⟨supp ω⟩`; the form vanishes on `⟨X ∖ K⟩`.
    Compact(SubSet),
    /// The support reaches the outermost layer of truncation `level`.
    NotCompactAtTruncation { level: usize },
}

impl GlobalForm {
    pub fn zero(host: &SimplicialSet, degree: usize) -> Self {
        Self { host: host.clone(), degree, values: BTreeMap::new() }
    }

    /// Builds and validates a form from its values on non-degenerate simplices.
    pub fn from_values(host: &SimplicialSet, degree: usize, values: BTreeMap<SimplexRef, PolyForm>) -> Result<Self> {
        for (r, w) in &values {
            host.check(*r)?;
            if w.p() != r.dim || w.q() != degree {
                return Err(Error::DimensionMismatch { expected: r.dim, found: w.p() });
            }
        }
        let form = Self::from_values_unchecked(host, degree, values);
        form.validate()?;
        Ok(form)
    }

    pub(crate) fn from_values_unchecked(host: &SimplicialSet, degree: usize, values: BTreeMap<SimplexRef, PolyForm>) -> Self {
        let values = values.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Self { host: host.clone(), degree, values }
    }

    /// The constant 0-form `c`.
    pub fn constant(host: &SimplicialSet, c: Q) -> Self {
        let values = host.simplices().map(|r| (r, PolyForm::constant(r.dim, c.clone()))).collect();
        Self::from_values_unchecked(host, 0, values)
    }

    pub fn one(host: &SimplicialSet) -> Self {
        Self::constant(host, Q::one())
    }

    pub fn host(&self) -> &SimplicialSet {
        &self.host
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `ω|σ` for a non-degenerate simplex.
    pub fn value(&self, r: SimplexRef) -> PolyForm {
        self.values.get(&r).cloned().unwrap_or_else(|| PolyForm::zero(r.dim, self.degree))
    }

    /// `ω|σ` for any simplex: `X(η)x ↦ ∇(η)(ω|x)`.
    pub fn value_at(&self, s: &Simplex) -> PolyForm {
        value_at(&self.values, self.degree, s)
    }

    pub fn values(&self) -> impl Iterator<Item = (SimplexRef, &PolyForm)> {
        self.values.iter().map(|(r, w)| (*r, w))
    }

    /// Largest coefficient degree over all simplices.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.values.values().filter_map(PolyForm::degree).max()
    }

    /// Checks `∂_i(ω|σ) = ω|∂_iσ` wherever either side can be nonzero.
    pub fn validate(&self) -> Result<()> {
        let mut candidates: BTreeSet<SimplexRef> = self.values.keys().copied().collect();
        for r in self.values.keys() {
            candidates.extend(self.host.cofaces(*r).iter().copied());
        }
        for r in candidates {
            if r.dim == 0 {
                continue;
            }
            let w = self.value(r);
            for (i, f) in self.host.faces(r).iter().enumerate() {
                if w.face(i)? != self.value_at(f) {
                    return Err(Error::FormNotCompatible { simplex: self.host.name(r).to_string(), face: i });
                }
            }
        }
        Ok(())
    }

    fn same_host(&self, other: &GlobalForm) -> Result<()> {
        if self.host != other.host {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }

    fn combine(&self, other: &GlobalForm, c: &Q) -> Result<GlobalForm> {
        self.same_host(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: other.degree });
        }
        let mut values = self.values.clone();
        for (r, w) in &other.values {
            values.entry(*r).or_insert_with(|| PolyForm::zero(r.dim, self.degree)).add_scaled_mut(c, w);
        }
        Ok(Self::from_values_unchecked(&self.host, self.degree, values))
    }

    pub fn add(&self, other: &GlobalForm) -> Result<GlobalForm> {
        self.combine(other, &Q::one())
    }

    pub fn sub(&self, other: &GlobalForm) -> Result<GlobalForm> {
        self.combine(other, &-Q::one())
    }

    pub fn add_scaled(&self, c: &Q, other: &GlobalForm) -> Result<GlobalForm> {
        self.combine(other, c)
    }

    pub fn scale(&self, c: &Q) -> GlobalForm {
        let values = self.values.iter().map(|(r, w)| (*r, w.scale(c))).collect();
        Self::from_values_unchecked(&self.host, self.degree, values)
    }

    pub fn wedge(&self, other: &GlobalForm) -> Result<GlobalForm> {
        self.same_host(other)?;
        let mut values = BTreeMap::new();
        for (r, a) in &self.values {
            if let Some(b) = other.values.get(r) {
                values.insert(*r, a.wedge(b)?);
            }
        }
        Ok(Self::from_values_unchecked(&self.host, self.degree + other.degree, values))
    }

    pub fn d(&self) -> GlobalForm {
        let values = self.values.iter().map(|(r, w)| (*r, w.d())).collect();
        Self::from_values_unchecked(&self.host, self.degree + 1, values)
    }

    /// `⟨{σ | ω|σ ≠ 0}⟩`: the smallest `K` with `ω|⟨X∖K⟩ = 0`.
    pub fn support(&self) -> SubSet {
        SubSet::generated(&self.host, self.values.keys().copied()).expect("stored simplices belong to the host")
    }

    /// Support of a form living on truncation `level` of an exhaustion whose
    /// previous level is `inner`: compact when the support stays inside `inner`.
    pub fn support_at_truncation(&self, inner: &SubSet, level: usize) -> Result<Support> {
        if inner.host() != &self.host {
            return Err(Error::HostMismatch);
        }
        let k = self.support();
        if k.is_subset_of(inner) {
            Ok(Support::Compact(k))
        } else {
            Ok(Support::NotCompactAtTruncation { level })
        }
    }

    /// Vanishes on every simplex of `a`.
    pub fn vanishes_on(&self, a: &SubSet) -> bool {
        self.values.keys().all(|r| !a.contains(*r))
    }

    /// Restriction along an inclusion `ι: Y ↪ Z` of a form on `Z`.
    pub fn restrict(&self, iota: &SimplicialMap) -> Result<GlobalForm> {
        if !iota.is_inclusion() {
            return Err(Error::Hypothesis(Hypothesis::Inclusion));
        }
        self.pullback(iota)
    }

    /// `(f^*ω)|σ = ω|f(σ)` for `f: Y → Z` and `ω` on `Z`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<GlobalForm> {
        if f.target() != &self.host {
            return Err(Error::HostMismatch);
        }
        let y = f.source();
        let values = y.simplices().map(|r| (r, self.value_at(f.image_of(r)))).collect();
        Ok(Self::from_values_unchecked(y, self.degree, values))
    }

    /// Pullback of a compactly supported form, gated on a properness verdict for `f`.
    pub fn pullback_compact(&self, f: &SimplicialMap, properness: &Properness) -> Result<GlobalForm> {
        if !properness.is_proper() {
            return Err(Error::Hypothesis(Hypothesis::ProperPullback));
        }
        self.pullback(f)
    }

    /// Moves a form to another host whose simplices of the same names carry
    /// the same faces (truncation levels).
    pub fn transport(&self, target: &SimplicialSet) -> Result<GlobalForm> {
        let mut values = BTreeMap::new();
        for (r, w) in &self.values {
            let name = self.host.name(*r);
            let t = target.find(r.dim, name).ok_or_else(|| Error::UnknownSimplex(format!("{name} ({r})")))?;
            values.insert(t, w.clone());
        }
        let form = Self::from_values_unchecked(target, self.degree, values);
        form.validate()?;
        Ok(form)
    }

    /// An extension of a form on `Y` along an inclusion `ι: Y ↪ Z`: the
    /// values on `ι(Y)` are kept and the remaining simplices are filled by
    /// the extension operator in increasing dimension.
    pub fn extend_along(&self, iota: &SimplicialMap) -> Result<GlobalForm> {
        if iota.source() != &self.host {
            return Err(Error::HostMismatch);
        }
        if !iota.is_inclusion() {
            return Err(Error::Hypothesis(Hypothesis::Inclusion));
        }
        let z = iota.target();
        let mut values = BTreeMap::new();
        for (r, w) in &self.values {
            values.insert(iota.image_of(*r).root, w.clone());
        }
        let image: BTreeSet<SimplexRef> = self.host.simplices().map(|r| iota.image_of(r).root).collect();
        let region: BTreeSet<SimplexRef> = z.simplices().filter(|r| !image.contains(r)).collect();
        truncated::fill(z, self.degree, &mut values, &region)?;
        let form = Self::from_values_unchecked(z, self.degree, values);
        form.validate()?;
        Ok(form)
    }

    /// `∫ ω|σ` for a simplex of dimension equal to the degree.
    pub fn integrate_on(&self, s: &Simplex) -> Result<Q> {
        self.value_at(s).integrate()
    }

    /// `form q` followed by one line `dim name : ∇-form` per stored simplex.
    pub fn render(&self) -> String {
        let mut out = format!("form {}\n", self.degree);
        for (r, w) in &self.values {
            out.push_str(&format!("{} {} : {}\n", r.dim, self.host.name(*r), w.render()));
        }
        out
    }

    pub fn parse(host: &SimplicialSet, text: &str) -> Result<GlobalForm> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, head) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty form".into() })?;
        let degree = head
            .trim()
            .strip_prefix("form ")
            .and_then(|d| d.trim().parse().ok())
            .ok_or(Error::Parse { line: 1, msg: "expected `form DEGREE`".into() })?;
        let mut values = BTreeMap::new();
        for (no, line) in lines {
            let err = |msg: String| Error::Parse { line: no + 1, msg };
            let (key, body) = line.split_once(':').ok_or_else(|| err("expected `dim name : form`".into()))?;
            let mut key = key.split_whitespace();
            let dim: usize = key.next().and_then(|d| d.parse().ok()).ok_or_else(|| err("bad dimension".into()))?;
            let name = key.next().ok_or_else(|| err("missing simplex name".into()))?;
            let r = host.find(dim, name).ok_or_else(|| err(format!("unknown simplex {name}")))?;
            let w = PolyForm::parse(dim, degree, body).map_err(|e| err(e.to_string()))?;
            values.insert(r, w);
        }
        Self::from_values(host, degree, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::Cohomology;
    use crate::rational::qr;
    use crate::simplicial::{boundary_simplex, circle, real_line, standard_simplex, torus, SimplicialMap};

    fn edge_form(x: &SimplicialSet, w: &str) -> GlobalForm {
        let e = SimplexRef::new(1, 0);
        GlobalForm::from_values(x, 1, BTreeMap::from([(e, PolyForm::parse(1, 1, w).unwrap())])).unwrap()
    }

    #[test]
    fn unit_and_constants() {
        let x = standard_simplex(2);
        let one = GlobalForm::one(&x);
        one.validate().unwrap();
        assert!(one.d().is_zero());
        let t = TruncatedComplex::new(&x, 2).unwrap();
        let w = t.basis(1)[3].clone();
        assert_eq!(one.wedge(&w).unwrap(), w);
    }

    #[test]
    fn wedge_on_interval() {
        let x = standard_simplex(1);
        let v0 = SimplexRef::new(0, 0);
        let v1 = SimplexRef::new(0, 1);
        let e = SimplexRef::new(1, 0);
        let f = GlobalForm::from_values(
            &x,
            0,
            BTreeMap::from([(v1, PolyForm::one(0)), (e, PolyForm::coordinate(1, 0))]),
        )
        .unwrap();
        let w = edge_form(&x, "1 dt1");
        let fw = f.wedge(&w).unwrap();
        assert_eq!(fw.value(e), PolyForm::parse(1, 1, "1 t1 dt1").unwrap());
        assert!(fw.value(v0).is_zero());
        assert_eq!(f.d(), edge_form(&x, "1 dt1"));
        assert_eq!(fw.integrate_on(&Simplex::nondegenerate(e)).unwrap(), qr(1, 2));
    }

    #[test]
    fn rejects_incompatible_values() {
        let x = standard_simplex(1);
        let e = SimplexRef::new(1, 0);
        let bad = GlobalForm::from_values(&x, 0, BTreeMap::from([(e, PolyForm::coordinate(1, 0))]));
        assert!(matches!(bad, Err(Error::FormNotCompatible { face: 0, .. })));
    }

    #[test]
    fn supports() {
        let x = real_line(3);
        assert!(GlobalForm::zero(&x, 0).support().is_empty());
        let one = GlobalForm::one(&x);
        assert_eq!(one.support().len(), x.total_count());
        let inner = crate::simplicial::RealLine;
        let k = crate::simplicial::Exhaustion::level_in(&inner, 2, 3).unwrap();
        assert_eq!(one.support_at_truncation(&k, 3).unwrap(), Support::NotCompactAtTruncation { level: 3 });
    }

    #[test]
    fn restriction_to_boundary_is_facewise() {
        let x = standard_simplex(2);
        let t = TruncatedComplex::new(&x, 3).unwrap();
        let (sub, iota) = SubSet::generated(&x, x.simplices_of_dim(1)).unwrap().to_simplicial_set();
        for w in t.basis(1) {
            let r = w.restrict(&iota).unwrap();
            r.validate().unwrap();
            let top = w.value(SimplexRef::new(2, 0));
            for e in sub.simplices_of_dim(1) {
                let img = iota.image_of(e).root;
                let i = x.faces(SimplexRef::new(2, 0)).iter().position(|f| f.root == img).unwrap();
                assert_eq!(r.value(e), top.face(i).unwrap());
            }
        }
        assert_eq!(GlobalForm::one(&x).pullback(&SimplicialMap::identity(&x)).unwrap(), GlobalForm::one(&x));
    }

    #[test]
    fn properness_gate() {
        let x = real_line(2);
        let pt = standard_simplex(0);
        let collapse = SimplicialMap::constant(&x, &pt, SimplexRef::new(0, 0)).unwrap();
        let verdict = Properness::NotProper { simplex: "0".into(), preimage_sizes: vec![3, 5, 7] };
        let w = GlobalForm::one(&pt);
        assert_eq!(w.pullback_compact(&collapse, &verdict), Err(Error::Hypothesis(Hypothesis::ProperPullback)));
        assert!(w.pullback_compact(&collapse, &Properness::Proper).is_ok());
    }

    #[test]
    fn serialization_round_trip() {
        let x = torus();
        let t = TruncatedComplex::new(&x, 3).unwrap();
        for q in 0..3 {
            for w in t.basis(q) {
                let text = w.render();
                assert_eq!(&GlobalForm::parse(&x, &text).unwrap(), w);
            }
        }
        let err = GlobalForm::parse(&x, "form 0\n0 nowhere : 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn relative_interval_window() {
        let x = standard_simplex(1);
        let a = SubSet::generated(&x, x.simplices_of_dim(0)).unwrap();
        let t = TruncatedComplex::relative(&a, 2).unwrap();
        assert_eq!(t.dims(), vec![1, 2]);
        // the single 0-form is a multiple of t(1 − t)
        let b = t.basis(0)[0].value(SimplexRef::new(1, 0));
        let bubble = PolyForm::parse(1, 0, "1 t1 + -1 t1^2").unwrap();
        assert!(b.sub(&bubble.scale(&b.coefficient(&[]).coefficient(&[1]))).unwrap().is_zero());
        assert_eq!(Cohomology::new(t.complex()).betti(), vec![0, 1]);
        let full = TruncatedComplex::relative(&SubSet::full(&x), 2).unwrap();
        assert_eq!(full.dims(), vec![0, 0]);
    }

    #[test]
    fn window_dimensions_and_cohomology() {
        let tri = standard_simplex(2);
        assert_eq!(TruncatedComplex::new(&tri, 2).unwrap().dims(), vec![6, 6, 1]);
        assert_eq!(TruncatedComplex::new(&tri, 3).unwrap().dims(), vec![10, 12, 3]);
        assert!(matches!(TruncatedComplex::new(&tri, 1), Err(Error::WindowTooSmall { .. })));
        let cases: Vec<(SimplicialSet, Vec<usize>)> = vec![
            (standard_simplex(2), vec![1, 0, 0]),
            (boundary_simplex(2), vec![1, 1]),
            (circle(1).unwrap(), vec![1, 1]),
            (torus(), vec![1, 2, 1]),
        ];
        for (x, betti) in cases {
            let d = x.dim().unwrap() as u32;
            let t = TruncatedComplex::new(&x, d.max(1)).unwrap();
            assert_eq!(Cohomology::new(t.complex()).betti(), betti);
        }
    }

    #[test]
    fn basis_forms_are_valid_and_coordinates_invert() {
        let x = torus();
        let t = TruncatedComplex::new(&x, 3).unwrap();
        for q in 0..3 {
            for (i, g) in t.basis(q).iter().enumerate() {
                g.validate().unwrap();
                assert_eq!(t.coordinates(g).unwrap(), crate::linalg::SparseVec::unit(i));
                let dg = g.d();
                assert_eq!(t.form(q + 1, &t.coordinates(&dg).unwrap()), dg);
            }
        }
        let small = TruncatedComplex::new(&x, 2).unwrap();
        let inc = small.inclusion_into(&t).unwrap();
        assert_eq!(inc[1].rank(), small.dims()[1]);
    }
}
