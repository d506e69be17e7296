//! `∇(p, q)`: polynomial differential forms on the standard `p`-simplex, with
//! their cosimplicial structure, exact integration and an extension operator.

mod extend;
mod form;
mod poly;

pub use extend::{bubble_basis, bubble_coordinates, bubble_dimension, extend, extend_faces, ExtensionInput};
pub use form::PolyForm;
pub use poly::{monomials, Monomial, Poly};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn t(p: usize, i: usize) -> PolyForm {
        PolyForm::coordinate(p, i)
    }

    fn dt(p: usize, i: usize) -> PolyForm {
        PolyForm::dt(p, i)
    }

    #[test]
    fn wedge_examples() {
        let a = dt(2, 0).wedge(&dt(2, 1)).unwrap();
        let b = dt(2, 1).wedge(&dt(2, 0)).unwrap();
        assert_eq!(a, b.neg());
        assert_eq!(t(1, 0).wedge(&dt(1, 0)).unwrap().render(), "1 t1 dt1");
        let s = dt(2, 0).add(&dt(2, 1)).unwrap();
        let d = dt(2, 0).sub(&dt(2, 1)).unwrap();
        assert_eq!(s.wedge(&d).unwrap(), a.scale(&q(-2)));
        assert!(dt(1, 0).wedge(&dt(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn differential_examples() {
        let t1 = t(1, 0);
        assert_eq!(t1.wedge(&t1).unwrap().d(), t1.wedge(&dt(1, 0)).unwrap().scale(&q(2)));
        assert!(t1.wedge(&dt(1, 0)).unwrap().d().is_zero());
        let w = t(2, 0).wedge(&t(2, 1)).unwrap().wedge(&dt(2, 0)).unwrap();
        let expected = t(2, 0).wedge(&dt(2, 0)).unwrap().wedge(&dt(2, 1)).unwrap().neg();
        assert_eq!(w.d(), expected);
    }

    #[test]
    fn face_examples() {
        assert_eq!(t(1, 0).face(0).unwrap(), PolyForm::one(0));
        assert!(t(1, 0).face(1).unwrap().is_zero());
        let t1t2 = t(2, 0).wedge(&t(2, 1)).unwrap();
        assert!(t1t2.face(2).unwrap().is_zero());
        assert_eq!(dt(2, 0).face(0).unwrap(), dt(1, 0).neg());
        assert!(t(1, 0).face(2).is_err());
    }

    #[test]
    fn degeneracy_examples() {
        let c = PolyForm::constant(0, qr(3, 4));
        assert_eq!(c.degeneracy(0).unwrap(), PolyForm::constant(1, qr(3, 4)));
        // s_0: Δ² → Δ¹ merges vertices 0,1, so t1 ↦ u2
        assert_eq!(t(1, 0).degeneracy(0).unwrap(), t(2, 1));
        // s_1 merges vertices 1,2: t1 ↦ u1 + u2
        assert_eq!(t(1, 0).degeneracy(1).unwrap(), t(2, 0).add(&t(2, 1)).unwrap());
    }

    #[test]
    fn integration_examples() {
        assert_eq!(dt(1, 0).integrate().unwrap(), q(1));
        let vol = dt(2, 0).wedge(&dt(2, 1)).unwrap();
        assert_eq!(vol.integrate().unwrap(), qr(1, 2));
        let w = t(2, 0).wedge(&t(2, 1)).unwrap().wedge(&vol).unwrap();
        assert_eq!(w.integrate().unwrap(), qr(1, 24));
        assert!(dt(2, 0).integrate().is_err());
    }

    #[test]
    fn total_boundary_examples() {
        assert_eq!(t(1, 0).total_boundary().unwrap(), PolyForm::one(0));
        assert!(PolyForm::one(0).total_boundary().is_err());
        // ω = t1² dt2 on Δ²:
        //   ∂0: t1 ↦ 1−u, t2 ↦ u  → (1−u)² du
        //   ∂1: t1 ↦ 0            → 0
        //   ∂2: t2 ↦ 0            → 0 (dt2 ↦ 0)
        let w = t(2, 0).wedge(&t(2, 0)).unwrap().wedge(&dt(2, 1)).unwrap();
        let expected = PolyForm::parse(1, 1, "1 dt1 + -2 t1 dt1 + 1 t1^2 dt1").unwrap();
        assert_eq!(w.total_boundary().unwrap(), expected);
    }

    #[test]
    fn render_round_trip() {
        let w = PolyForm::parse(3, 2, "3/2 t1^2 t3 dt1 dt2 + -1 dt2 dt3 + 7 t2 dt1 dt3").unwrap();
        let text = w.render();
        assert_eq!(PolyForm::parse(3, 2, &text).unwrap(), w);
        assert_eq!(text, "3/2 t1^2 t3 dt1 dt2 + 7 t2 dt1 dt3 + -1 dt2 dt3");
        assert_eq!(PolyForm::parse(2, 2, "1 dt2 dt1").unwrap(), PolyForm::parse(2, 2, "-1 dt1 dt2").unwrap());
        assert_eq!(PolyForm::zero(2, 1).render(), "0");
        assert!(PolyForm::parse(2, 1, "1 dt3").is_err());
        assert!(PolyForm::parse(2, 1, "1 t1").is_err());
    }

    #[test]
    fn forms_above_dimension_vanish() {
        assert!(dt(1, 0).wedge(&dt(1, 0)).unwrap().is_zero());
        assert!(bubble_basis(1, 2, 3).is_empty());
        assert!(dt(2, 0).face(1).unwrap().pullback(&crate::simplicial::Monotone::coface(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn extend_examples() {
        let zero = ExtensionInput::new(vec![PolyForm::zero(1, 1); 3]).unwrap();
        assert!(extend(&zero).unwrap().is_zero());

        let e = extend_faces(vec![PolyForm::one(0), PolyForm::zero(0, 0)]).unwrap();
        assert_eq!(e.face(0).unwrap(), PolyForm::one(0));
        assert!(e.face(1).unwrap().is_zero());

        let e = extend_faces(vec![PolyForm::one(1); 3]).unwrap();
        for i in 0..3 {
            assert_eq!(e.face(i).unwrap(), PolyForm::one(1));
        }
        assert_eq!(e, PolyForm::one(2));
    }

    #[test]
    fn extend_rejects_incompatible_faces() {
        let faces = vec![PolyForm::one(1), PolyForm::one(1), PolyForm::zero(1, 0)];
        match ExtensionInput::new(faces) {
            Err(crate::Error::IncompatibleFaces { i, j }) => assert_eq!((i, j), (0, 2)),
            other => panic!("expected incompatibility, got {other:?}"),
        }
    }

    #[test]
    fn bubble_dimensions() {
        // face-free 0-forms on Δ¹ of degree ≤ 2: t(1−t)
        assert_eq!(bubble_dimension(1, 0, 2), 1);
        // 1-forms on Δ¹ have zero faces automatically
        assert_eq!(bubble_dimension(1, 1, 1), 2);
        // triangle bubble t1 t2 (1 − t1 − t2)
        assert_eq!(bubble_dimension(2, 0, 3), 1);
        let b = &bubble_basis(1, 0, 3);
        assert_eq!(b.len(), 2);
        assert_eq!(bubble_basis(1, 0, 2)[0], b[0]);
        let w = b[0].scale(&q(3)).add(&b[1].scale(&qr(-1, 2))).unwrap();
        assert_eq!(bubble_coordinates(&w, 3).unwrap(), vec![q(3), qr(-1, 2)]);
    }
}
