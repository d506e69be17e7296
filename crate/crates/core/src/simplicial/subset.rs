use std::collections::BTreeSet;

use super::{Simplex, SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// A face-closed set of non-degenerate simplices of a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSet {
    host: SimplicialSet,
    members: BTreeSet<SimplexRef>,
}

impl SubSet {
    pub fn empty(host: &SimplicialSet) -> Self {
        Self { host: host.clone(), members: BTreeSet::new() }
    }

    pub fn full(host: &SimplicialSet) -> Self {
        Self { host: host.clone(), members: host.simplices().collect() }
    }

    /// `⟨S⟩`: the smallest simplicial subset containing every simplex of `S`.
    pub fn generated<I: IntoIterator<Item = SimplexRef>>(host: &SimplicialSet, simplices: I) -> Result<Self> {
        let mut members = BTreeSet::new();
        let mut stack = Vec::new();
        for r in simplices {
            host.check(r)?;
            stack.push(r);
        }
        while let Some(x) = stack.pop() {
            if members.insert(x) {
                stack.extend(host.faces(x).iter().map(|f| f.root));
            }
        }
        Ok(Self { host: host.clone(), members })
    }

    /// Wraps an already face-closed set, checking closure.
    pub fn from_closed(host: &SimplicialSet, members: BTreeSet<SimplexRef>) -> Result<Self> {
        for &r in &members {
            host.check(r)?;
            if host.faces(r).iter().any(|f| !members.contains(&f.root)) {
                return Err(Error::Malformed(format!("subset is not closed under faces at {}", host.name(r))));
            }
        }
        Ok(Self { host: host.clone(), members })
    }

    pub fn host(&self) -> &SimplicialSet {
        &self.host
    }

    pub fn members(&self) -> &BTreeSet<SimplexRef> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        self.members.contains(&r)
    }

    /// Membership of a possibly degenerate simplex.
    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.members.contains(&s.root)
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        self.members.is_subset(&other.members)
    }

    fn same_host(&self, other: &SubSet) -> Result<()> {
        if self.host == other.host {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn union(&self, other: &SubSet) -> Result<SubSet> {
        self.same_host(other)?;
        Ok(Self { host: self.host.clone(), members: self.members.union(&other.members).copied().collect() })
    }

    pub fn intersection(&self, other: &SubSet) -> Result<SubSet> {
        self.same_host(other)?;
        Ok(Self {
            host: self.host.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    /// The raw set difference, which is generally not face-closed.
    pub fn difference(&self, other: &SubSet) -> Result<BTreeSet<SimplexRef>> {
        self.same_host(other)?;
        Ok(self.members.difference(&other.members).copied().collect())
    }

    /// `⟨X ∖ K⟩`.
    pub fn complement_closure(&self) -> SubSet {
        let rest = self.host.simplices().filter(|r| !self.members.contains(r));
        SubSet::generated(&self.host, rest).expect("host simplices are valid")
    }

    /// Non-degenerate simplices with some iterated face in `self`.
    pub fn star(&self) -> BTreeSet<SimplexRef> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<SimplexRef> = self.members.iter().copied().collect();
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.host.cofaces(x).iter().copied());
            }
        }
        out
    }

    /// The minimal neighbourhood `ε(K)`: generated by every simplex having an
    /// iterated face in `K`.
    pub fn minimal_neighborhood(&self) -> SubSet {
        SubSet::generated(&self.host, self.star()).expect("host simplices are valid")
    }

    /// Restricts to the simplicial set spanned by the members, with its
    /// inclusion into the host. Simplices keep their relative order.
    pub fn to_simplicial_set(&self) -> (SimplicialSet, SimplicialMap) {
        let dims = self.host.num_dims();
        let mut position: Vec<Vec<Option<usize>>> = (0..dims).map(|d| vec![None; self.host.count(d)]).collect();
        let mut names: Vec<Vec<String>> = vec![Vec::new(); dims];
        let mut back: Vec<Vec<SimplexRef>> = vec![Vec::new(); dims];
        for &r in &self.members {
            position[r.dim][r.index] = Some(names[r.dim].len());
            names[r.dim].push(self.host.name(r).to_string());
            back[r.dim].push(r);
        }
        let faces: Vec<Vec<Vec<Simplex>>> = back
            .iter()
            .map(|rs| {
                rs.iter()
                    .map(|&r| {
                        self.host
                            .faces(r)
                            .iter()
                            .map(|f| Simplex {
                                root: SimplexRef::new(f.root.dim, position[f.root.dim][f.root.index].unwrap()),
                                degeneracy: f.degeneracy.clone(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let sub = SimplicialSet::new_unchecked(names, faces).expect("restriction of a valid presentation");
        let images = back.iter().map(|rs| rs.iter().map(|&r| Simplex::nondegenerate(r)).collect()).collect();
        let inclusion = SimplicialMap::new_unchecked(sub.clone(), self.host.clone(), images);
        (sub, inclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_simplex, real_line, standard_simplex};

    fn edge(x: &SimplicialSet, name: &str) -> SimplexRef {
        x.find(1, name).unwrap()
    }

    #[test]
    fn generated_edge_in_triangle() {
        let x = standard_simplex(2);
        let s = SubSet::generated(&x, [edge(&x, "01")]).unwrap();
        let names: Vec<_> = s.members().iter().map(|&r| x.name(r).to_string()).collect();
        assert_eq!(names, ["0", "1", "01"]);
        assert!(SubSet::generated(&x, []).unwrap().is_empty());
        assert!(SubSet::generated(&x, [SimplexRef::new(3, 0)]).is_err());
    }

    #[test]
    fn generated_boundary_by_brute_force() {
        let x = boundary_simplex(2);
        let edges: Vec<_> = x.simplices_of_dim(1).collect();
        let s = SubSet::generated(&x, edges.clone()).unwrap();
        // brute force: every simplex that is a face of a chosen edge, or the edge itself
        let mut brute = BTreeSet::new();
        for e in edges {
            brute.insert(e);
            for f in x.faces(e) {
                brute.insert(f.root);
            }
        }
        assert_eq!(s.members(), &brute);
        assert_eq!(s, SubSet::full(&x));
    }

    #[test]
    fn neighbourhood_of_vertex_in_triangle() {
        let x = standard_simplex(2);
        let l = SubSet::generated(&x, [x.find(0, "0").unwrap()]).unwrap();
        assert_eq!(l.minimal_neighborhood(), SubSet::full(&x));
        let full = SubSet::full(&x);
        assert_eq!(full.minimal_neighborhood(), full);
        assert!(SubSet::empty(&x).minimal_neighborhood().is_empty());
    }

    #[test]
    fn complement_closures() {
        let x = standard_simplex(1);
        assert!(SubSet::full(&x).complement_closure().is_empty());
        assert_eq!(SubSet::empty(&x).complement_closure(), SubSet::full(&x));
        let a = SubSet::generated(&x, [x.find(0, "0").unwrap()]).unwrap();
        assert_eq!(a.complement_closure(), SubSet::full(&x));
    }

    #[test]
    fn restriction_is_valid() {
        let x = real_line(3);
        let k = SubSet::generated(&x, x.simplices_of_dim(1).take(3)).unwrap();
        let (y, inc) = k.to_simplicial_set();
        y.validate().unwrap();
        inc.validate().unwrap();
        assert_eq!(y.count(1), 3);
    }
}
