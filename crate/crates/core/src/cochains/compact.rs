//! Compactly supported cohomology through an exhaustion `K₁ ⊂ K₂ ⊂ …`.
//!
//! Level `n` is the pair `(X_{n+1}, ⟨X_{n+1} ∖ K_n⟩)`. A cochain or form on
//! `X` vanishing on `⟨X ∖ K_n⟩` only involves simplices of `ε(K_n)`, so
//! the pair computes `H*(X, ⟨X ∖ K_n⟩)` as soon as `ε(K_n) ⊆ X_{n+1}`,
//! which is checked against `X_{n+2}`.

use serde::Serialize;

use super::complex::{induced_matrix, CochainComplex, Cohomology, MapRank};
use super::simplicial::NormalizedCochains;
use crate::error::{Error, Hypothesis, Result};
use crate::linalg::SparseMatrix;
use crate::simplicial::{Exhaustion, SimplicialSet, SubSet};

/// `(X_{n+1}, K_n, ⟨X_{n+1} ∖ K_n⟩)`.
#[derive(Clone, Debug)]
pub struct CompactLevel {
    pub n: usize,
    pub space: SimplicialSet,
    pub compact: SubSet,
    pub frontier: SubSet,
}

impl CompactLevel {
    pub fn new(exhaustion: &dyn Exhaustion, n: usize) -> Result<Self> {
        let space = exhaustion.level(n + 1);
        let compact = exhaustion.level_in(n, n + 1)?;
        if !exhaustion.is_finite() {
            let probe = exhaustion.level_in(n, n + 2)?;
            let next = exhaustion.level_in(n + 1, n + 2)?;
            if !probe.minimal_neighborhood().is_subset_of(&next) {
                return Err(Error::Hypothesis(Hypothesis::Exhaustion));
            }
        }
        let frontier = compact.complement_closure();
        Ok(Self { n, space, compact, frontier })
    }
}

/// A directed system of finite cochain complexes with chain maps between
/// consecutive levels, starting at level 1.
pub trait DirectedSystem {
    fn complex(&mut self, n: usize) -> Result<CochainComplex>;
    /// Degreewise matrices of the map from level `n` to level `n + 1`.
    fn map(&mut self, n: usize) -> Result<Vec<SparseMatrix>>;
}

/// Stabilization certificate for a colimit of cohomology groups.
#[derive(Clone, Debug, Serialize)]
pub struct Colimit {
    /// Betti numbers per computed level, starting at level 1.
    pub levels: Vec<Vec<usize>>,
    /// Ranks of the induced maps from level `n` to `n + 1`.
    pub transitions: Vec<Vec<MapRank>>,
    /// First level `n` whose outgoing map and the next one are both isomorphisms.
    pub stable_level: Option<usize>,
    pub betti: Option<Vec<usize>>,
    pub max_level: usize,
}

impl Colimit {
    pub fn stabilized(&self) -> bool {
        self.stable_level.is_some()
    }
}

/// Computes levels `1, 2, …` until two consecutive induced maps are
/// isomorphisms, or `max_level` is reached.
pub fn colimit(system: &mut dyn DirectedSystem, max_level: usize) -> Result<(Colimit, Vec<Cohomology>)> {
    let mut cohomology = vec![Cohomology::new(&system.complex(1)?)];
    let mut transitions: Vec<Vec<MapRank>> = Vec::new();
    let mut stable_level = None;
    let mut n = 1;
    while n < max_level {
        let next = Cohomology::new(&system.complex(n + 1)?);
        let maps = system.map(n)?;
        let ranks = (0..cohomology[n - 1].complex().len())
            .map(|q| {
                let m = induced_matrix(&cohomology[n - 1], &next, &maps[q], q)?;
                Ok(MapRank::of(&m))
            })
            .collect::<Result<Vec<_>>>()?;
        cohomology.push(next);
        transitions.push(ranks);
        let iso = |t: &Vec<MapRank>| t.iter().all(MapRank::isomorphism);
        if transitions.len() >= 2 && iso(&transitions[n - 2]) && iso(&transitions[n - 1]) {
            stable_level = Some(n - 1);
            break;
        }
        n += 1;
    }
    let levels: Vec<Vec<usize>> = cohomology.iter().map(Cohomology::betti).collect();
    let betti = stable_level.map(|k| levels[k - 1].clone());
    Ok((Colimit { levels, transitions, stable_level, betti, max_level }, cohomology))
}

/// The directed system `NC*(X_{n+1}, ⟨X_{n+1} ∖ K_n⟩)` with extension by zero.
pub struct CompactCochains<'a> {
    exhaustion: &'a dyn Exhaustion,
    cache: Vec<Option<(CompactLevel, NormalizedCochains)>>,
}

impl<'a> CompactCochains<'a> {
    pub fn new(exhaustion: &'a dyn Exhaustion) -> Self {
        Self { exhaustion, cache: Vec::new() }
    }

    pub fn level(&mut self, n: usize) -> Result<&(CompactLevel, NormalizedCochains)> {
        if self.cache.len() <= n {
            self.cache.resize_with(n + 1, || None);
        }
        if self.cache[n].is_none() {
            let level = CompactLevel::new(self.exhaustion, n)?;
            let cochains = NormalizedCochains::relative(&level.frontier);
            self.cache[n] = Some((level, cochains));
        }
        Ok(self.cache[n].as_ref().unwrap())
    }
}

impl DirectedSystem for CompactCochains<'_> {
    fn complex(&mut self, n: usize) -> Result<CochainComplex> {
        Ok(self.level(n)?.1.complex().clone())
    }

    fn map(&mut self, n: usize) -> Result<Vec<SparseMatrix>> {
        let small = self.level(n)?.1.clone();
        let big = &self.level(n + 1)?.1;
        small.extension_by_zero(big)
    }
}
