//! Locally finite simplicial sets presented by nested finite truncations
//! `K₁ ⊂ K₂ ⊂ …`. Simplices are matched across levels by name.

use std::collections::BTreeSet;

use super::{generators, SimplexRef, SimplicialSet, SubSet};
use crate::error::{Error, Result};

pub trait Exhaustion {
    fn name(&self) -> String;

    /// The truncation `K_n`, for `n ≥ 1`.
    fn level(&self, n: usize) -> SimplicialSet;

    /// True when every level is the same finite simplicial set.
    fn is_finite(&self) -> bool {
        false
    }

    /// `K_n` as a simplicial subset of `K_m`, `n ≤ m`, after checking nesting.
    fn level_in(&self, n: usize, m: usize) -> Result<SubSet> {
        embed_by_name(&self.level(n), &self.level(m)).map_err(|_| Error::NotNested(n, m))
    }
}

/// The simplices of `big` carrying the names of those of `small`, after
/// checking that faces correspond.
pub fn embed_by_name(small: &SimplicialSet, big: &SimplicialSet) -> Result<SubSet> {
    let locate = |r: SimplexRef| big.find(r.dim, small.name(r)).ok_or_else(|| Error::UnknownSimplex(small.name(r).to_string()));
    let mut members = BTreeSet::new();
    for r in small.simplices() {
        let target = locate(r)?;
        for (a, b) in small.faces(r).iter().zip(big.faces(target)) {
            if locate(a.root)? != b.root || a.degeneracy != b.degeneracy {
                return Err(Error::NotNested(0, 0));
            }
        }
        members.insert(target);
    }
    SubSet::from_closed(big, members)
}

/// Checks that the simplices of `small` are a prefix of those of `big`, with
/// equal names and faces.
pub fn check_nested(small: &SimplicialSet, big: &SimplicialSet) -> Result<()> {
    if small.num_dims() > big.num_dims() {
        return Err(Error::NotNested(0, 0));
    }
    for r in small.simplices() {
        if !big.contains(r) || small.name(r) != big.name(r) || small.faces(r) != big.faces(r) {
            return Err(Error::NotNested(0, 0));
        }
    }
    Ok(())
}

/// The real line, `K_n` on vertices `-n..=n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RealLine;

impl Exhaustion for RealLine {
    fn name(&self) -> String {
        "real-line".into()
    }

    fn level(&self, n: usize) -> SimplicialSet {
        generators::real_line(n)
    }
}

/// The closed half-line on vertices `0..=n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HalfLine;

impl Exhaustion for HalfLine {
    fn name(&self) -> String {
        "half-line".into()
    }

    fn level(&self, n: usize) -> SimplicialSet {
        let names = vec![(0..=n).map(|k| format!("v{k}")).collect(), (0..n).map(|k| format!("e{k}")).collect()];
        let faces = vec![
            vec![Vec::new(); n + 1],
            (0..n)
                .map(|k| {
                    vec![
                        super::Simplex::nondegenerate(SimplexRef::new(0, k + 1)),
                        super::Simplex::nondegenerate(SimplexRef::new(0, k)),
                    ]
                })
                .collect(),
        ];
        SimplicialSet::new(names, faces).expect("path graph")
    }
}

/// The triangle tessellation of the plane, `K_n` the hexagonal ball of radius `n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PlaneExhaustion;

impl Exhaustion for PlaneExhaustion {
    fn name(&self) -> String {
        "plane".into()
    }

    fn level(&self, n: usize) -> SimplicialSet {
        generators::plane_tessellation(n)
    }
}

/// A finite simplicial set as a constant exhaustion.
#[derive(Clone, Debug)]
pub struct FiniteExhaustion {
    pub space: SimplicialSet,
    pub label: String,
}

impl FiniteExhaustion {
    pub fn new(space: SimplicialSet, label: impl Into<String>) -> Self {
        Self { space, label: label.into() }
    }
}

impl Exhaustion for FiniteExhaustion {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn level(&self, _n: usize) -> SimplicialSet {
        self.space.clone()
    }

    fn is_finite(&self) -> bool {
        true
    }
}
