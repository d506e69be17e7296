//! PL bump functions, the good-intersection condition, and partitions of unity.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Hypothesis, Result};
use crate::forms::{value_at, GlobalForm};
use crate::nabla::{extend_faces, PolyForm};
use crate::rational::Q;
use crate::simplicial::{SimplicialSet, SubSet};

/// `L ⊆ K ⊆ X` with `ε(L) ⊆ K`.
#[derive(Clone, Debug)]
pub struct BumpSpec {
    l: SubSet,
    k: SubSet,
}

impl BumpSpec {
    pub fn new(l: SubSet, k: SubSet) -> Result<Self> {
        if l.host() != k.host() {
            return Err(Error::HostMismatch);
        }
        if !l.is_subset_of(&k) {
            return Err(Error::Hypothesis(Hypothesis::Containment));
        }
        if !l.minimal_neighborhood().is_subset_of(&k) {
            return Err(Error::Hypothesis(Hypothesis::NeighbourhoodContainment));
        }
        Ok(Self { l, k })
    }

    pub fn host(&self) -> &SimplicialSet {
        self.l.host()
    }

    pub fn l(&self) -> &SubSet {
        &self.l
    }

    pub fn k(&self) -> &SubSet {
        &self.k
    }
}

/// A degree-0 form with `φ|L = 1` and `φ|⟨X∖K⟩ = 0`.
///
/// Built skeleton by skeleton over `ε(L)` in `SimplexRef` order: `1` on
/// `L`, `0` on simplices with no iterated face in `L`, otherwise the
/// extension of the values already assigned to the faces; `0` elsewhere.
pub fn bump_function(spec: &BumpSpec) -> Result<GlobalForm> {
    let x = spec.host();
    let l = &spec.l;
    let nbhd = l.minimal_neighborhood();
    let mut values: BTreeMap<_, PolyForm> = BTreeMap::new();
    for r in nbhd.members().iter().copied() {
        let value = if l.contains(r) {
            PolyForm::one(r.dim)
        } else if x.closure_of(r).iter().all(|f| !l.contains(*f)) {
            continue;
        } else {
            let faces: Vec<PolyForm> = x.faces(r).iter().map(|f| value_at(&values, 0, f)).collect();
            extend_faces(faces)?
        };
        values.insert(r, value);
    }
    let phi = GlobalForm::from_values_unchecked(x, 0, values);
    phi.validate()?;
    check_bump(&phi, l, &spec.k)?;
    Ok(phi)
}

/// `φ|L = 1` and `φ|⟨X∖K⟩ = 0`, simplex by simplex.
pub fn check_bump(phi: &GlobalForm, l: &SubSet, k: &SubSet) -> Result<()> {
    for r in l.members() {
        if phi.value(*r) != PolyForm::one(r.dim) {
            return Err(Error::NoSolution(format!("bump is not 1 on {}", l.host().name(*r))));
        }
    }
    let outside = k.complement_closure();
    for r in outside.members() {
        if !phi.value(*r).is_zero() {
            return Err(Error::NoSolution(format!("bump is nonzero on {}", l.host().name(*r))));
        }
    }
    Ok(())
}

/// The two conditions `ε(⟨V∖U⟩) ⊆ V` and `ε(⟨U∖V⟩) ⊆ U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub v_side: bool,
    pub u_side: bool,
}

fn check_cover(u: &SubSet, v: &SubSet) -> Result<()> {
    if u.host() != v.host() {
        return Err(Error::HostMismatch);
    }
    if u.union(v)?.len() != u.host().total_count() {
        return Err(Error::Hypothesis(Hypothesis::Cover));
    }
    Ok(())
}

pub fn intersection_report(u: &SubSet, v: &SubSet) -> Result<IntersectionReport> {
    check_cover(u, v)?;
    let x = u.host();
    let v_minus_u = SubSet::generated(x, v.difference(u)?)?;
    let u_minus_v = SubSet::generated(x, u.difference(v)?)?;
    Ok(IntersectionReport {
        v_side: v_minus_u.minimal_neighborhood().is_subset_of(v),
        u_side: u_minus_v.minimal_neighborhood().is_subset_of(u),
    })
}

/// Whether the cover `{U, V}` has good intersection. Both conditions are
/// evaluated; they always agree.
pub fn good_intersection(u: &SubSet, v: &SubSet) -> Result<bool> {
    let r = intersection_report(u, v)?;
    assert_eq!(r.v_side, r.u_side, "good intersection must be symmetric");
    Ok(r.v_side)
}

/// `(φ_U, φ_V)` with `φ_U|⟨U∖V⟩ = 1`, `φ_U|⟨X∖U⟩ = 0`, `φ_V = 1 − φ_U`.
pub fn partition_of_unity(u: &SubSet, v: &SubSet) -> Result<(GlobalForm, GlobalForm)> {
    if !good_intersection(u, v)? {
        return Err(Error::Hypothesis(Hypothesis::GoodIntersection));
    }
    let x = u.host();
    let l = SubSet::generated(x, u.difference(v)?)?;
    let phi = bump_function(&BumpSpec::new(l, u.clone())?)?;
    let rest = GlobalForm::one(x).sub(&phi)?;
    Ok((phi, rest))
}

/// `1 − φ`, for callers that hold only one half of a partition.
pub fn complement(phi: &GlobalForm) -> Result<GlobalForm> {
    GlobalForm::constant(phi.host(), Q::one()).sub(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{plane_tessellation, plane_tessellation_origin, standard_simplex, torus_grid, SimplexRef};

    fn path(n: usize) -> SimplicialSet {
        crate::simplicial::Exhaustion::level(&crate::simplicial::HalfLine, n)
    }

    fn segment(x: &SimplicialSet, from: usize, to: usize) -> SubSet {
        SubSet::generated(x, (from..to).map(|k| SimplexRef::new(1, k))).unwrap()
    }

    #[test]
    fn hexagon_bump() {
        let x = plane_tessellation(2);
        let v = plane_tessellation_origin();
        let l = SubSet::generated(&x, [v]).unwrap();
        let k = l.minimal_neighborhood();
        assert_eq!(k.members().iter().filter(|r| r.dim == 2).count(), 6);
        let phi = bump_function(&BumpSpec::new(l.clone(), k.clone()).unwrap()).unwrap();
        assert_eq!(phi.value(v), PolyForm::one(0));
        assert!(phi.support().is_subset_of(&k));
        check_bump(&phi, &l, &k).unwrap();
    }

    #[test]
    fn trivial_bumps() {
        let x = standard_simplex(2);
        let all = SubSet::full(&x);
        let phi = bump_function(&BumpSpec::new(all.clone(), all.clone()).unwrap()).unwrap();
        assert_eq!(phi, GlobalForm::one(&x));
        let none = SubSet::empty(&x);
        assert!(bump_function(&BumpSpec::new(none, all).unwrap()).unwrap().is_zero());
        let v = SubSet::generated(&x, [SimplexRef::new(0, 0)]).unwrap();
        assert_eq!(BumpSpec::new(v.clone(), v).unwrap_err(), Error::Hypothesis(Hypothesis::NeighbourhoodContainment));
    }

    #[test]
    fn path_covers() {
        let x = path(5);
        assert!(good_intersection(&segment(&x, 0, 3), &segment(&x, 2, 5)).unwrap());
        let y = path(4);
        assert!(!good_intersection(&segment(&y, 0, 2), &segment(&y, 2, 4)).unwrap());
        let full = SubSet::full(&x);
        assert!(good_intersection(&full, &full).unwrap());
        assert_eq!(
            good_intersection(&segment(&x, 0, 2), &segment(&x, 3, 5)),
            Err(Error::Hypothesis(Hypothesis::Cover))
        );
    }

    fn check_partition(u: &SubSet, v: &SubSet) {
        let x = u.host();
        let (pu, pv) = partition_of_unity(u, v).unwrap();
        assert_eq!(pu.add(&pv).unwrap(), GlobalForm::one(x));
        let umv = SubSet::generated(x, u.difference(v).unwrap()).unwrap();
        for r in umv.members() {
            assert_eq!(pu.value(*r), PolyForm::one(r.dim));
        }
        assert!(pu.vanishes_on(&u.complement_closure()));
        pu.validate().unwrap();
        pv.validate().unwrap();
    }

    #[test]
    fn partitions() {
        let x = path(5);
        check_partition(&segment(&x, 0, 3), &segment(&x, 2, 5));
        let full = SubSet::full(&x);
        check_partition(&full, &full);
        let t = torus_grid(3, 6).unwrap();
        let strip = |rows: &[usize]| {
            SubSet::generated(
                &t,
                t.simplices_of_dim(2).filter(|r| rows.iter().any(|j| t.name(*r).ends_with(&format!("_{j}")))),
            )
            .unwrap()
        };
        let u = strip(&[0, 1, 2, 3]);
        let v = strip(&[3, 4, 5, 0]);
        assert!(good_intersection(&u, &v).unwrap());
        check_partition(&u, &v);
    }
}
