mod common;

use common::*;
use plderham::nabla::{bubble_basis, bubble_coordinates, extend_faces, PolyForm};
use plderham::rational::Q;
use plderham::simplicial::Monotone;
use proptest::prelude::*;

fn sign(k: usize) -> Q {
    if k % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_identities(seed in any::<u64>(), p in 2usize..=3, q in 0usize..=2) {
        let mut r = rng(seed);
        let w = random_form(&mut r, p, q, 3);
        for j in 0..=p {
            for i in 0..j {
                prop_assert_eq!(w.face(j).unwrap().face(i).unwrap(), w.face(i).unwrap().face(j - 1).unwrap());
            }
        }
    }

    #[test]
    fn degeneracy_identities(seed in any::<u64>(), p in 1usize..=2, q in 0usize..=2) {
        let mut r = rng(seed);
        let w = random_form(&mut r, p, q, 3);
        for j in 0..=p {
            let s = w.degeneracy(j).unwrap();
            prop_assert_eq!(&s.face(j).unwrap(), &w);
            prop_assert_eq!(&s.face(j + 1).unwrap(), &w);
            for i in 0..j {
                prop_assert_eq!(s.face(i).unwrap(), w.face(i).unwrap().degeneracy(j - 1).unwrap());
            }
            for i in j + 2..=p + 1 {
                prop_assert_eq!(s.face(i).unwrap(), w.face(i - 1).unwrap().degeneracy(j).unwrap());
            }
            for i in 0..=j {
                prop_assert_eq!(
                    s.degeneracy(i).unwrap(),
                    w.degeneracy(i).unwrap().degeneracy(j + 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn pullback_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_form(&mut r, 3, 1, 2);
        let a = Monotone::new(vec![0, 2, 3], 3);
        let b = Monotone::new(vec![0, 0, 1, 2], 2);
        let direct = w.pullback(&a.after(&b)).unwrap();
        prop_assert_eq!(direct, w.pullback(&a).unwrap().pullback(&b).unwrap());
    }

    #[test]
    fn d_squared_and_leibniz(seed in any::<u64>(), p in 1usize..=3, qa in 0usize..=2, qb in 0usize..=1) {
        let mut r = rng(seed);
        let a = random_form(&mut r, p, qa, 3);
        let b = random_form(&mut r, p, qb, 3);
        prop_assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap().add(&a.wedge(&b.d()).unwrap().scale(&sign(qa))).unwrap();
        prop_assert_eq!(lhs, rhs);
        let ab = a.wedge(&b).unwrap();
        prop_assert_eq!(ab, b.wedge(&a).unwrap().scale(&sign(qa * qb)));
    }

    #[test]
    fn faces_are_algebra_maps(seed in any::<u64>(), p in 1usize..=3, q in 0usize..=2) {
        let mut r = rng(seed);
        let a = random_form(&mut r, p, q, 2);
        let b = random_form(&mut r, p, 1, 2);
        for i in 0..=p {
            prop_assert_eq!(a.d().face(i).unwrap(), a.face(i).unwrap().d());
            prop_assert_eq!(a.wedge(&b).unwrap().face(i).unwrap(), a.face(i).unwrap().wedge(&b.face(i).unwrap()).unwrap());
        }
        for j in 0..=p {
            prop_assert_eq!(a.d().degeneracy(j).unwrap(), a.degeneracy(j).unwrap().d());
        }
        prop_assert_eq!(a.d().total_boundary().unwrap(), a.total_boundary().unwrap().d());
    }

    #[test]
    fn stokes(seed in any::<u64>(), p in 1usize..=3) {
        let mut r = rng(seed);
        let w = random_form(&mut r, p, p - 1, 4);
        prop_assert_eq!(w.d().integrate().unwrap(), w.total_boundary().unwrap().integrate().unwrap());
    }

    #[test]
    fn extension_contract(seed in any::<u64>(), p in 1usize..=3, q in 0usize..=2) {
        let mut r = rng(seed);
        let source = random_form(&mut r, p, q, 3);
        let w: Vec<PolyForm> = (0..=p).map(|i| source.face(i).unwrap()).collect();
        let v = random_compatible(&mut r, p, q, 3);
        let ew = extend_faces(w.clone()).unwrap();
        let ev = extend_faces(v.clone()).unwrap();
        for i in 0..=p {
            prop_assert_eq!(&ew.face(i).unwrap(), &w[i]);
        }
        let sum: Vec<PolyForm> = w.iter().zip(&v).map(|(a, b)| a.add(b).unwrap()).collect();
        prop_assert_eq!(extend_faces(sum).unwrap(), ew.add(&ev).unwrap());
        prop_assert_eq!(extend_faces(w.clone()).unwrap(), ew.clone());
        prop_assert!(ew.degree() <= source.degree());
    }

    #[test]
    fn bubble_round_trip(seed in any::<u64>(), p in 1usize..=3, q in 0usize..=2) {
        let mut r = rng(seed);
        let basis = bubble_basis(p, q, 3);
        let coeffs: Vec<Q> = basis.iter().map(|_| small_rational(&mut r)).collect();
        let mut w = PolyForm::zero(p, q);
        for (c, b) in coeffs.iter().zip(&basis) {
            w.add_scaled_mut(c, b);
        }
        for i in 0..=p {
            prop_assert!(w.face(i).unwrap().is_zero());
        }
        prop_assert_eq!(bubble_coordinates(&w, 3).unwrap(), coeffs);
    }
}

#[test]
fn render_is_canonical() {
    let mut r = rng(7);
    for _ in 0..50 {
        let w = random_form(&mut r, 3, 2, 3);
        assert_eq!(PolyForm::parse(3, 2, &w.render()).unwrap(), w);
    }
}
