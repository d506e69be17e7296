use std::collections::BTreeSet;

use serde::Serialize;

use super::{Simplex, SimplexRef, SimplicialSet, SubSet};
use crate::error::{Error, Hypothesis, Result};

/// A simplicial map, given by the image of each non-degenerate source simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialSet,
    target: SimplicialSet,
    images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialSet, target: SimplicialSet, images: Vec<Vec<Simplex>>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, images);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: SimplicialSet, target: SimplicialSet, images: Vec<Vec<Simplex>>) -> Self {
        Self { source, target, images }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let images = (0..x.num_dims()).map(|d| x.simplices_of_dim(d).map(Simplex::nondegenerate).collect()).collect();
        Self::new_unchecked(x.clone(), x.clone(), images)
    }

    /// The constant map onto a vertex.
    pub fn constant(source: &SimplicialSet, target: &SimplicialSet, vertex: SimplexRef) -> Result<Self> {
        target.check(vertex)?;
        let images = (0..source.num_dims())
            .map(|d| {
                source
                    .simplices_of_dim(d)
                    .map(|_| Simplex { root: vertex, degeneracy: super::Monotone::new(vec![0; d + 1], 0) })
                    .collect()
            })
            .collect();
        Self::new(source.clone(), target.clone(), images)
    }

    /// The inclusion of `small` into `big` matching simplices by name.
    pub fn inclusion_by_name(small: &SimplicialSet, big: &SimplicialSet) -> Result<Self> {
        let images = (0..small.num_dims())
            .map(|d| {
                small
                    .simplices_of_dim(d)
                    .map(|r| {
                        big.find(d, small.name(r))
                            .map(Simplex::nondegenerate)
                            .ok_or_else(|| Error::UnknownSimplex(small.name(r).to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(small.clone(), big.clone(), images)
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn image_of(&self, r: SimplexRef) -> &Simplex {
        &self.images[r.dim][r.index]
    }

    /// `f(X(η) x) = X(η) f(x)`.
    pub fn map_simplex(&self, s: &Simplex) -> Simplex {
        let img = self.image_of(s.root);
        Simplex { root: img.root, degeneracy: img.degeneracy.after(&s.degeneracy) }
    }

    /// Checks shapes and `f ∘ d_i = d_i ∘ f` on non-degenerate simplices.
    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.num_dims() {
            return Err(Error::Malformed("map images do not cover every source dimension".into()));
        }
        for r in self.source.simplices() {
            let img = self.images.get(r.dim).and_then(|v| v.get(r.index)).ok_or_else(|| {
                Error::Malformed(format!("no image for {}", self.source.name(r)))
            })?;
            if img.dim() != r.dim
                || !self.target.contains(img.root)
                || img.degeneracy.target_dim() != img.root.dim
                || !img.degeneracy.is_surjective()
            {
                return Err(Error::Malformed(format!("bad image for {}", self.source.name(r))));
            }
            if r.dim == 0 {
                continue;
            }
            for i in 0..=r.dim {
                let lhs = self.map_simplex(self.source.face(r, i));
                let rhs = self.target.face_of(img, i);
                if lhs != rhs {
                    return Err(Error::MapNotSimplicial { simplex: self.source.name(r).to_string(), face: i });
                }
            }
        }
        Ok(())
    }

    /// Injective on non-degenerate simplices and sends them to non-degenerate ones.
    pub fn is_inclusion(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.source.simplices().all(|r| {
            let img = self.image_of(r);
            !img.is_degenerate() && seen.insert(img.root)
        })
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != after.source {
            return Err(Error::HostMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|row| row.iter().map(|s| after.map_simplex(s)).collect())
            .collect();
        Ok(Self::new_unchecked(self.source.clone(), after.target.clone(), images))
    }

    /// Non-degenerate source simplices whose image lies in `sub`.
    pub fn preimage(&self, sub: &SubSet) -> Result<SubSet> {
        if sub.host() != &self.target {
            return Err(Error::HostMismatch);
        }
        let members = self.source.simplices().filter(|&r| sub.contains(self.image_of(r).root)).collect();
        SubSet::from_closed(&self.source, members)
    }

    /// Image of a subset of the source.
    pub fn image(&self, sub: &SubSet) -> Result<SubSet> {
        if sub.host() != &self.source {
            return Err(Error::HostMismatch);
        }
        SubSet::generated(&self.target, sub.members().iter().map(|&r| self.image_of(r).root))
    }
}

/// Verdict of a properness query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Properness {
    Proper,
    /// A preimage grew at every inspected truncation level.
    NotProper { simplex: String, preimage_sizes: Vec<usize> },
    /// Preimages neither stabilized nor grew monotonically by the last level.
    Indeterminate { level: usize },
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper)
    }
}

/// Properness of a map with a finite source: preimages of finite subsets are
/// subsets of a finite set.
pub fn is_proper(f: &SimplicialMap) -> Properness {
    let _ = f;
    Properness::Proper
}

/// Properness of a map from an exhausted source, given as the restrictions
/// `f_n: X_n → Y` of the map to successive nested truncations. For each
/// non-degenerate `σ` of `Y`, the preimage of `⟨σ⟩` is counted at every
/// level: stable over the last two levels for all `σ` means proper, strictly
/// growing at every level for some `σ` means not proper.
pub fn is_proper_tower(levels: &[SimplicialMap]) -> Result<Properness> {
    let Some(last) = levels.last() else {
        return Err(Error::Malformed("empty tower".into()));
    };
    let target = last.target().clone();
    if levels.iter().any(|f| f.target() != &target) {
        return Err(Error::HostMismatch);
    }
    if levels.iter().all(SimplicialMap::is_inclusion) {
        return Ok(Properness::Proper);
    }
    if levels.len() < 2 {
        return Ok(Properness::Indeterminate { level: levels.len() });
    }
    let mut stable = true;
    for sigma in target.simplices() {
        let closure = SubSet::generated(&target, [sigma])?;
        let sizes: Vec<usize> = levels.iter().map(|f| f.preimage(&closure).map(|p| p.len())).collect::<Result<_>>()?;
        if sizes.windows(2).all(|w| w[1] > w[0]) {
            return Ok(Properness::NotProper { simplex: target.name(sigma).to_string(), preimage_sizes: sizes });
        }
        if sizes[sizes.len() - 1] != sizes[sizes.len() - 2] {
            stable = false;
        }
    }
    Ok(if stable { Properness::Proper } else { Properness::Indeterminate { level: levels.len() } })
}

/// The pushout `X = U ⊔_W V` of `f: W → U` along an inclusion `ι: W ↪ V`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub space: SimplicialSet,
    /// `g: V → X`.
    pub g: SimplicialMap,
    /// `h: U → X`, an inclusion.
    pub h: SimplicialMap,
}

/// Computes the pushout dimensionwise. Non-degenerate simplices of `X` are
/// those of `U` (same positions, names prefixed `u.`) followed by those of
/// `V ∖ ι(W)` (names prefixed `v.`).
pub fn pushout(f: &SimplicialMap, iota: &SimplicialMap) -> Result<Pushout> {
    if f.source() != iota.source() {
        return Err(Error::HostMismatch);
    }
    if !iota.is_inclusion() {
        return Err(Error::Hypothesis(Hypothesis::Inclusion));
    }
    let (w, u, v) = (f.source(), f.target(), iota.target());
    let dims = u.num_dims().max(v.num_dims());
    // preimage under ι of each non-degenerate simplex of V
    let mut from_w: Vec<Vec<Option<SimplexRef>>> = (0..v.num_dims()).map(|d| vec![None; v.count(d)]).collect();
    for r in w.simplices() {
        let img = iota.image_of(r).root;
        from_w[img.dim][img.index] = Some(r);
    }
    let mut names: Vec<Vec<String>> = vec![Vec::new(); dims];
    let mut new_index: Vec<Vec<Option<usize>>> = (0..v.num_dims()).map(|d| vec![None; v.count(d)]).collect();
    for d in 0..dims {
        for r in u.simplices_of_dim(d) {
            names[d].push(format!("u.{}", u.name(r)));
        }
        for r in v.simplices_of_dim(d) {
            if from_w[d][r.index].is_none() {
                new_index[d][r.index] = Some(names[d].len());
                names[d].push(format!("v.{}", v.name(r)));
            }
        }
    }
    let g_simplex = |s: &Simplex| -> Simplex {
        match from_w[s.root.dim][s.root.index] {
            Some(wr) => f.map_simplex(&Simplex { root: wr, degeneracy: s.degeneracy.clone() }),
            None => Simplex {
                root: SimplexRef::new(s.root.dim, new_index[s.root.dim][s.root.index].unwrap()),
                degeneracy: s.degeneracy.clone(),
            },
        }
    };
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); dims];
    for d in 0..dims {
        for r in u.simplices_of_dim(d) {
            faces[d].push(u.faces(r).to_vec());
        }
        for r in v.simplices_of_dim(d) {
            if from_w[d][r.index].is_none() {
                faces[d].push(v.faces(r).iter().map(&g_simplex).collect());
            }
        }
    }
    let space = SimplicialSet::new(names, faces)?;
    let h_images = (0..u.num_dims()).map(|d| u.simplices_of_dim(d).map(Simplex::nondegenerate).collect()).collect();
    let h = SimplicialMap::new(u.clone(), space.clone(), h_images)?;
    let g_images = (0..v.num_dims())
        .map(|d| v.simplices_of_dim(d).map(|r| g_simplex(&Simplex::nondegenerate(r))).collect())
        .collect();
    let g = SimplicialMap::new(v.clone(), space.clone(), g_images)?;
    Ok(Pushout { space, g, h })
}
