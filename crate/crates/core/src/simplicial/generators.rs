//! Built-in simplicial sets used as a test corpus and by the CLI.

use std::collections::{BTreeMap, BTreeSet};

use super::{Simplex, SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

fn nd(dim: usize, index: usize) -> Simplex {
    Simplex::nondegenerate(SimplexRef::new(dim, index))
}

/// Builds the simplicial set of an ordered simplicial complex. `simplices`
/// lists vertex tuples (any dimension, closed under faces not required);
/// their faces are added. Each dimension is ordered by `(level, tuple)`,
/// where the level of a simplex is the largest level of its vertices.
fn ordered_complex(vertex_names: &[String], vertex_level: &[usize], simplices: &[Vec<usize>]) -> SimplicialSet {
    let mut all: BTreeSet<Vec<usize>> = (0..vertex_names.len()).map(|v| vec![v]).collect();
    let mut stack: Vec<Vec<usize>> = simplices.to_vec();
    while let Some(mut s) = stack.pop() {
        s.sort_unstable();
        if s.len() > 1 {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                stack.push(f);
            }
        }
        all.insert(s);
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in all {
        by_dim[s.len() - 1].push(s);
    }
    for (d, list) in by_dim.iter_mut().enumerate() {
        if d == 0 {
            continue;
        }
        list.sort_by_key(|s| (s.iter().map(|&v| vertex_level[v]).max().unwrap(), s.clone()));
    }
    let index: Vec<BTreeMap<Vec<usize>, usize>> =
        by_dim.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect()).collect();
    let mut names = Vec::new();
    let mut faces = Vec::new();
    for (d, list) in by_dim.iter().enumerate() {
        names.push(
            list.iter()
                .map(|s| {
                    if d == 0 {
                        vertex_names[s[0]].clone()
                    } else {
                        s.iter().map(|&v| vertex_names[v].as_str()).collect::<Vec<_>>().join("_")
                    }
                })
                .collect(),
        );
        faces.push(
            list.iter()
                .map(|s| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            nd(d - 1, index[d - 1][&f])
                        })
                        .collect()
                })
                .collect(),
        );
    }
    SimplicialSet::new(names, faces).expect("ordered complexes satisfy the simplicial identities")
}

fn subsets_simplex(n: usize, include_top: bool) -> SimplicialSet {
    let names: Vec<String> = (0..=n).map(|v| v.to_string()).collect();
    let levels = vec![0; n + 1];
    let mut simplices = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let s: Vec<usize> = (0..=n).filter(|&v| mask & (1 << v) != 0).collect();
        if s.len() == n + 1 && !include_top {
            continue;
        }
        simplices.push(s);
    }
    let x = ordered_complex(&names, &levels, &simplices);
    // rename to concatenated vertex labels, "012" style
    let names = x
        .names()
        .iter()
        .map(|row| row.iter().map(|s| s.replace('_', "")).collect())
        .collect();
    let faces = (0..x.num_dims()).map(|d| x.simplices_of_dim(d).map(|r| x.faces(r).to_vec()).collect()).collect();
    SimplicialSet::new(names, faces).unwrap()
}

/// The standard simplex `Δⁿ`; simplices are named by their vertex lists, e.g. `01`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    subsets_simplex(n, true)
}

/// The boundary `∂Δⁿ` for `n ≥ 1`.
pub fn boundary_simplex(n: usize) -> SimplicialSet {
    assert!(n >= 1, "the boundary of a point is empty");
    subsets_simplex(n, false)
}

/// A circle with `n ≥ 1` vertices `v0..` and edges `e_i: v_i → v_{i+1}`.
pub fn circle(n: usize) -> Result<SimplicialSet> {
    if n == 0 {
        return Err(Error::Malformed("a circle needs at least one vertex".into()));
    }
    let names = vec![(0..n).map(|i| format!("v{i}")).collect(), (0..n).map(|i| format!("e{i}")).collect()];
    let faces = vec![vec![Vec::new(); n], (0..n).map(|i| vec![nd(0, (i + 1) % n), nd(0, i)]).collect()];
    SimplicialSet::new(names, faces)
}

/// The minimal torus: one vertex `v`, edges `a`, `b`, `c` (diagonal) and two
/// triangles `lower`, `upper`.
pub fn torus() -> SimplicialSet {
    let names = vec![
        vec!["v".to_string()],
        vec!["a".to_string(), "b".to_string(), "c".to_string()],
        vec!["lower".to_string(), "upper".to_string()],
    ];
    let (a, b, c) = (nd(1, 0), nd(1, 1), nd(1, 2));
    let faces = vec![
        vec![Vec::new()],
        vec![vec![nd(0, 0), nd(0, 0)]; 3],
        vec![vec![b.clone(), c.clone(), a.clone()], vec![a, c, b]],
    ];
    SimplicialSet::new(names, faces).expect("torus model")
}

fn grid(cols: usize, rows: usize, periodic_rows: bool) -> Result<SimplicialSet> {
    if cols == 0 || rows == 0 {
        return Err(Error::Malformed("grid dimensions must be positive".into()));
    }
    let vrows = if periodic_rows { rows } else { rows + 1 };
    let vid = |i: usize, j: usize| (j % vrows) * cols + (i % cols);
    let mut names = vec![Vec::new(), Vec::new(), Vec::new()];
    for j in 0..vrows {
        for i in 0..cols {
            names[0].push(format!("p{i}_{j}"));
        }
    }
    // edges per vertex: horizontal, then (when a row above exists) vertical and diagonal
    let mut edge_faces = Vec::new();
    let mut h = vec![0; cols * vrows];
    let mut v = vec![usize::MAX; cols * vrows];
    let mut g = vec![usize::MAX; cols * vrows];
    for j in 0..vrows {
        for i in 0..cols {
            let p = vid(i, j);
            h[p] = edge_faces.len();
            names[1].push(format!("h{i}_{j}"));
            edge_faces.push(vec![nd(0, vid(i + 1, j)), nd(0, p)]);
            if periodic_rows || j < rows {
                v[p] = edge_faces.len();
                names[1].push(format!("v{i}_{j}"));
                edge_faces.push(vec![nd(0, vid(i, j + 1)), nd(0, p)]);
                g[p] = edge_faces.len();
                names[1].push(format!("g{i}_{j}"));
                edge_faces.push(vec![nd(0, vid(i + 1, j + 1)), nd(0, p)]);
            }
        }
    }
    let mut tri_faces = Vec::new();
    for j in 0..rows {
        for i in 0..cols {
            let p = vid(i, j);
            names[2].push(format!("L{i}_{j}"));
            tri_faces.push(vec![nd(1, v[vid(i + 1, j)]), nd(1, g[p]), nd(1, h[p])]);
            names[2].push(format!("U{i}_{j}"));
            tri_faces.push(vec![nd(1, h[vid(i, j + 1)]), nd(1, g[p]), nd(1, v[p])]);
        }
    }
    SimplicialSet::new(names, vec![vec![Vec::new(); cols * vrows], edge_faces, tri_faces])
}

/// A torus triangulated as a `cols × rows` periodic grid, two triangles per square.
/// Strip `j` consists of the triangles `L*_j`, `U*_j` between vertex rows `j` and `j+1`.
pub fn torus_grid(cols: usize, rows: usize) -> Result<SimplicialSet> {
    grid(cols, rows, true)
}

/// A cylinder: `cols` periodic columns, `strips` strips of triangles.
pub fn cylinder(cols: usize, strips: usize) -> Result<SimplicialSet> {
    grid(cols, strips, false)
}

/// The triangulated line on vertices `-n..=n`, ordered so that each
/// truncation is a prefix of the next: `v0, v1, v-1, v2, v-2, …`.
pub fn real_line(n: usize) -> SimplicialSet {
    let positions: Vec<i64> = std::iter::once(0)
        .chain((1..=n as i64).flat_map(|k| [k, -k]))
        .collect();
    let names: Vec<String> = positions.iter().map(|p| format!("v{p}")).collect();
    let levels: Vec<usize> = positions.iter().map(|p| p.unsigned_abs() as usize).collect();
    let index = |p: i64| positions.iter().position(|&q| q == p).unwrap();
    let edges: Vec<Vec<usize>> = (-(n as i64)..n as i64).map(|a| vec![index(a), index(a + 1)]).collect();
    ordered_complex(&names, &levels, &edges)
}

/// Axial coordinates of the vertices of the hexagonal ball of the given radius
/// in the equilateral triangle lattice, in prefix-nested order.
fn hex_vertices(radius: usize) -> Vec<(i64, i64)> {
    let r = radius as i64;
    let mut out = Vec::new();
    for d in 0..=r {
        let mut ring: Vec<(i64, i64)> = Vec::new();
        for q in -r..=r {
            for s in -r..=r {
                if hex_distance(q, s) == d {
                    ring.push((q, s));
                }
            }
        }
        out.extend(ring);
    }
    out
}

fn hex_distance(q: i64, r: i64) -> i64 {
    (q.abs() + r.abs() + (q + r).abs()) / 2
}

/// The tessellation of the plane by equilateral triangles, truncated to the
/// hexagonal ball of the given radius around the origin vertex (index 0).
/// Radius `r` gives `3r(r+1)+1` vertices and `6r²` triangles.
pub fn plane_tessellation(radius: usize) -> SimplicialSet {
    let verts = hex_vertices(radius);
    let index: BTreeMap<(i64, i64), usize> = verts.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let names: Vec<String> = verts.iter().map(|(q, r)| format!("p{q},{r}")).collect();
    let levels: Vec<usize> = verts.iter().map(|&(q, r)| hex_distance(q, r) as usize).collect();
    let mut tris = Vec::new();
    let big = radius as i64 + 1;
    for (q, r) in (-big..=big).flat_map(|q| (-big..=big).map(move |r| (q, r))) {
        for tri in [[(q, r), (q + 1, r), (q, r + 1)], [(q + 1, r), (q, r + 1), (q + 1, r + 1)]] {
            if let (Some(&a), Some(&b), Some(&c)) = (index.get(&tri[0]), index.get(&tri[1]), index.get(&tri[2])) {
                tris.push(vec![a, b, c]);
            }
        }
    }
    ordered_complex(&names, &levels, &tris)
}

pub fn plane_tessellation_origin() -> SimplexRef {
    SimplexRef::new(0, 0)
}

/// Named entries of the built-in catalogue, parsed from `name` or
/// `name:param[,param]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Simplex(usize),
    Boundary(usize),
    Circle(usize),
    Torus,
    TorusGrid(usize, usize),
    Cylinder(usize, usize),
    RealLine(usize),
    Plane(usize),
}

impl Generator {
    pub const CATALOGUE: &'static [(&'static str, &'static str)] = &[
        ("simplex:N", "standard N-simplex"),
        ("boundary:N", "boundary of the standard N-simplex"),
        ("circle:N", "circle with N vertices and N edges"),
        ("torus", "minimal torus: 1 vertex, 3 edges, 2 triangles"),
        ("torus-grid:C,R", "torus as a periodic C x R grid"),
        ("cylinder:C,S", "cylinder with C periodic columns and S strips"),
        ("real-line:N", "line on vertices -N..N"),
        ("plane:R", "triangle tessellation of the plane, hexagonal ball of radius R"),
    ];

    pub fn parse(spec: &str) -> Result<Self> {
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        let nums: Vec<usize> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| Error::Malformed(format!("bad generator parameter {p:?}"))))
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Malformed(format!("generator {name} takes {k} parameter(s)")))
            }
        };
        Ok(match name {
            "simplex" => {
                arity(1)?;
                Generator::Simplex(nums[0])
            }
            "boundary" => {
                arity(1)?;
                if nums[0] == 0 {
                    return Err(Error::Malformed("boundary needs N >= 1".into()));
                }
                Generator::Boundary(nums[0])
            }
            "circle" => {
                arity(1)?;
                Generator::Circle(nums[0])
            }
            "torus" => {
                arity(0)?;
                Generator::Torus
            }
            "torus-grid" => {
                arity(2)?;
                Generator::TorusGrid(nums[0], nums[1])
            }
            "cylinder" => {
                arity(2)?;
                Generator::Cylinder(nums[0], nums[1])
            }
            "real-line" => {
                arity(1)?;
                Generator::RealLine(nums[0])
            }
            "plane" => {
                arity(1)?;
                Generator::Plane(nums[0])
            }
            other => return Err(Error::Malformed(format!("unknown generator {other:?}"))),
        })
    }

    pub fn build(&self) -> Result<SimplicialSet> {
        Ok(match *self {
            Generator::Simplex(n) => standard_simplex(n),
            Generator::Boundary(n) => boundary_simplex(n),
            Generator::Circle(n) => circle(n)?,
            Generator::Torus => torus(),
            Generator::TorusGrid(c, r) => torus_grid(c, r)?,
            Generator::Cylinder(c, s) => cylinder(c, s)?,
            Generator::RealLine(n) => real_line(n),
            Generator::Plane(r) => plane_tessellation(r),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SubSet;

    #[test]
    fn catalogue_counts() {
        assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).counts(), vec![4, 6, 4, 1]);
        assert_eq!(boundary_simplex(3).counts(), vec![4, 6, 4]);
        assert_eq!(circle(6).unwrap().counts(), vec![6, 6]);
        assert_eq!(torus().counts(), vec![1, 3, 2]);
        assert_eq!(torus_grid(3, 6).unwrap().counts(), vec![18, 54, 36]);
        assert_eq!(cylinder(3, 1).unwrap().counts(), vec![6, 12, 6]);
        for n in 0..5 {
            assert_eq!(real_line(n).counts().get(0), Some(&(2 * n + 1)));
            assert_eq!(real_line(n).count(1), 2 * n);
        }
        for r in 1..4 {
            let p = plane_tessellation(r);
            assert_eq!(p.count(0), 3 * r * (r + 1) + 1);
            assert_eq!(p.count(2), 6 * r * r);
        }
    }

    #[test]
    fn hexagon_neighbourhood() {
        let x = plane_tessellation(2);
        let v = plane_tessellation_origin();
        let l = SubSet::generated(&x, [v]).unwrap();
        let eps = l.minimal_neighborhood();
        let counts: Vec<usize> = (0..3).map(|d| eps.members().iter().filter(|r| r.dim == d).count()).collect();
        assert_eq!(counts, vec![7, 12, 6]);
        // every triangle of the neighbourhood meets v
        for t in eps.members().iter().filter(|r| r.dim == 2) {
            assert!(x.closure_of(*t).contains(&v));
        }
        // radius one is exactly the hexagon
        assert_eq!(plane_tessellation(1).counts(), vec![7, 12, 6]);
    }

    #[test]
    fn truncations_are_prefixes() {
        for (a, b) in [(real_line(2), real_line(3)), (plane_tessellation(1), plane_tessellation(2))] {
            for d in 0..a.num_dims() {
                for r in a.simplices_of_dim(d) {
                    assert_eq!(a.name(r), b.name(r));
                    assert_eq!(a.faces(r), b.faces(r));
                }
            }
        }
    }

    #[test]
    fn generator_parsing() {
        assert_eq!(Generator::parse("torus").unwrap(), Generator::Torus);
        assert_eq!(Generator::parse("torus-grid:3,6").unwrap(), Generator::TorusGrid(3, 6));
        assert!(Generator::parse("torus:1").is_err());
        assert!(Generator::parse("nope").is_err());
        for (name, _) in Generator::CATALOGUE {
            let concrete = name.replace('N', "2").replace('R', "2").replace('C', "3").replace('S', "2");
            Generator::parse(&concrete).unwrap().build().unwrap();
        }
    }
}
