#![allow(dead_code)]

use plderham::nabla::{monomials, Poly, PolyForm};
use plderham::rational::Q;
use plderham::simplicial::{Monotone, Simplex, SimplexRef, SimplicialSet, SubSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_degree: u32) -> Poly {
    let ms = monomials(nvars, max_degree);
    let mut f = Poly::zero(nvars);
    for _ in 0..rng.gen_range(0..=4) {
        let m = ms[rng.gen_range(0..ms.len())].clone();
        f.add_term(m, small_rational(rng));
    }
    f
}

pub fn index_sets(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << p) {
        if mask.count_ones() as usize == q {
            out.push((0..p).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

pub fn random_form(rng: &mut impl Rng, p: usize, q: usize, max_degree: u32) -> PolyForm {
    let mut w = PolyForm::zero(p, q);
    for index in index_sets(p, q) {
        if rng.gen_bool(0.6) {
            let t = PolyForm::term(index, random_poly(rng, p, max_degree)).unwrap();
            w.add_scaled_mut(&Q::from_integer(1.into()), &t);
        }
    }
    w
}

/// Faces of a random form: a compatible extension problem.
pub fn random_compatible(rng: &mut impl Rng, p: usize, q: usize, max_degree: u32) -> Vec<PolyForm> {
    let w = random_form(rng, p, q, max_degree);
    (0..=p).map(|i| w.face(i).unwrap()).collect()
}

/// A random finite simplicial set of dimension ≤ 2: vertices, edges with
/// arbitrary end points (loops allowed), then triangles whose faces are
/// edges or degenerate vertices with matching end points.
pub fn random_simplicial_set(rng: &mut impl Rng, max_vertices: usize, max_edges: usize, max_triangles: usize) -> SimplicialSet {
    let nv = rng.gen_range(1..=max_vertices);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_edges) {
        edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    let point = |v: usize| Simplex::nondegenerate(SimplexRef::new(0, v));
    let mut triangles: Vec<[Simplex; 3]> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_triangles) {
        let v = [rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv)];
        // faces d0, d1, d2 span (v1, v2), (v0, v2), (v0, v1)
        let mut faces = Vec::new();
        for (a, b) in [(v[1], v[2]), (v[0], v[2]), (v[0], v[1])] {
            let mut options: Vec<Simplex> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(s, t))| s == a && t == b)
                .map(|(k, _)| Simplex::nondegenerate(SimplexRef::new(1, k)))
                .collect();
            if a == b {
                options.push(Simplex { root: SimplexRef::new(0, a), degeneracy: Monotone::new(vec![0, 0], 0) });
            }
            if options.is_empty() || rng.gen_bool(0.2) && a != b {
                edges.push((a, b));
                options.push(Simplex::nondegenerate(SimplexRef::new(1, edges.len() - 1)));
            }
            faces.push(options[rng.gen_range(0..options.len())].clone());
        }
        triangles.push([faces[0].clone(), faces[1].clone(), faces[2].clone()]);
    }
    let mut names = vec![(0..nv).map(|k| format!("v{k}")).collect::<Vec<_>>()];
    let mut all_faces = vec![vec![Vec::new(); nv]];
    if !edges.is_empty() {
        names.push((0..edges.len()).map(|k| format!("e{k}")).collect());
        all_faces.push(edges.iter().map(|&(s, t)| vec![point(t), point(s)]).collect());
    }
    if !triangles.is_empty() {
        if edges.is_empty() {
            names.push(Vec::new());
            all_faces.push(Vec::new());
        }
        names.push((0..triangles.len()).map(|k| format!("t{k}")).collect());
        all_faces.push(triangles.into_iter().map(|f| f.to_vec()).collect());
    }
    SimplicialSet::new(names, all_faces).expect("generated faces satisfy the simplicial identities")
}

/// A random simplicial subset generated by about `fraction` of the simplices.
pub fn random_subset(rng: &mut impl Rng, x: &SimplicialSet, fraction: f64) -> SubSet {
    let picked: Vec<SimplexRef> = x.simplices().filter(|_| rng.gen_bool(fraction)).collect();
    SubSet::generated(x, picked).unwrap()
}

/// A random cover `{U, V}` of `x`.
pub fn random_cover(rng: &mut impl Rng, x: &SimplicialSet) -> (SubSet, SubSet) {
    let u = random_subset(rng, x, 0.5);
    let rest: Vec<SimplexRef> = x.simplices().filter(|r| !u.contains(*r) || rng.gen_bool(0.3)).collect();
    let v = SubSet::generated(x, rest).unwrap();
    (u, v)
}
