//! Simplicial cochains and the exact cohomology engine.

mod compact;
mod complex;
mod simplicial;

pub use compact::{colimit, CompactCochains, CompactLevel, Colimit, DirectedSystem};
pub use complex::{induced_matrix, kernel_basis, Classification, CochainComplex, Cohomology, MapRank};
pub use simplicial::{FullCochains, NormalizedCochains};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SparseVec;
    use crate::rational::q;
    use crate::simplicial::{
        boundary_simplex, circle, standard_simplex, torus, FiniteExhaustion, PlaneExhaustion, RealLine, SimplexRef,
        SimplicialMap, SubSet,
    };

    #[test]
    fn normalized_ranks() {
        assert_eq!(NormalizedCochains::new(&standard_simplex(2)).complex().dims(), &[3, 3, 1]);
        assert_eq!(NormalizedCochains::new(&circle(1).unwrap()).complex().dims(), &[1, 1]);
        let x = standard_simplex(1);
        let a = SubSet::generated(&x, x.simplices_of_dim(0)).unwrap();
        assert_eq!(NormalizedCochains::relative(&a).complex().dims(), &[0, 1]);
    }

    #[test]
    fn betti_numbers() {
        let cases = [
            (standard_simplex(2), vec![1, 0, 0]),
            (boundary_simplex(3), vec![1, 0, 1]),
            (torus(), vec![1, 2, 1]),
            (circle(1).unwrap(), vec![1, 1]),
        ];
        for (x, betti) in cases {
            assert_eq!(Cohomology::new(NormalizedCochains::new(&x).complex()).betti(), betti);
        }
    }

    #[test]
    fn full_cochains_agree_with_normalized() {
        for x in [torus(), circle(1).unwrap(), boundary_simplex(2)] {
            let top = x.dim().unwrap();
            let full = Cohomology::new(FullCochains::new(&x, top).complex()).betti();
            let norm = Cohomology::new(NormalizedCochains::new(&x).complex()).betti();
            assert_eq!(&full[..=top], &norm[..]);
        }
    }

    #[test]
    fn cup_products() {
        let x = torus();
        let c = NormalizedCochains::new(&x);
        let h = Cohomology::new(c.complex());
        let unit = c.unit();
        let a = h.representatives(1)[0].clone();
        let b = h.representatives(1)[1].clone();
        assert_eq!(c.cup(0, &unit, &c, 1, &a, &c).unwrap(), a);
        let ab = c.cup(1, &a, &c, 1, &b, &c).unwrap();
        let cls = h.classify(2, &ab).unwrap();
        assert_ne!(cls.coordinates[0], q(0));
        let ba = c.cup(1, &b, &c, 1, &a, &c).unwrap();
        let sum = h.classify(2, &ab.add(&ba)).unwrap();
        assert_eq!(sum.coordinates[0], q(0));
        // degree 0: pointwise
        let f = SparseVec::from_dense(&[q(3)]);
        assert_eq!(c.cup(0, &f, &c, 0, &f, &c).unwrap(), SparseVec::from_dense(&[q(9)]));
    }

    #[test]
    fn induced_maps() {
        let x = standard_simplex(2);
        let c = NormalizedCochains::new(&x);
        let h = Cohomology::new(c.complex());
        let id = c.pullback_matrices(&SimplicialMap::identity(&x), &c).unwrap();
        for n in 0..3 {
            let m = induced_matrix(&h, &h, &id[n], n).unwrap();
            assert_eq!(m, crate::linalg::SparseMatrix::identity(h.betti_at(n)));
        }
        let sub = SubSet::generated(&x, [SimplexRef::new(1, 0)]).unwrap();
        let (edge, iota) = sub.to_simplicial_set();
        let ce = NormalizedCochains::new(&edge);
        let he = Cohomology::new(ce.complex());
        let m = ce.pullback_matrices(&iota, &c).unwrap();
        let h0 = induced_matrix(&h, &he, &m[0], 0).unwrap();
        assert_eq!(MapRank::of(&h0), MapRank { rows: 1, cols: 1, rank: 1 });
    }

    #[test]
    fn compact_real_line_and_plane() {
        let (line, _) = colimit(&mut CompactCochains::new(&RealLine), 6).unwrap();
        assert_eq!(line.betti, Some(vec![0, 1]));
        assert_eq!(line.stable_level, Some(1));
        let (plane, _) = colimit(&mut CompactCochains::new(&PlaneExhaustion), 5).unwrap();
        assert_eq!(plane.betti, Some(vec![0, 0, 1]));
    }

    #[test]
    fn compact_finite_is_constant() {
        let x = torus();
        let exh = FiniteExhaustion::new(x.clone(), "torus");
        let (col, _) = colimit(&mut CompactCochains::new(&exh), 4).unwrap();
        assert_eq!(col.stable_level, Some(1));
        assert_eq!(col.betti, Some(Cohomology::new(NormalizedCochains::new(&x).complex()).betti()));
    }

    #[test]
    fn matrix_dump_round_trip() {
        let c = NormalizedCochains::new(&torus());
        let d = c.complex().differential(1);
        assert_eq!(crate::linalg::SparseMatrix::parse_dump(&d.dump()).unwrap(), d);
    }
}
