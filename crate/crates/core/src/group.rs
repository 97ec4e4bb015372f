//! Permutation groups with a stabilizer chain.
//!
//! The chain is built by a randomized Schreier–Sims pass followed by a full
//! deterministic verification of every Schreier generator, which also completes
//! the chain whenever the random pass missed something. Orders are therefore
//! exact.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = alloc::vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: alloc::vec![base], transversal }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut transversal: Vec<Option<Permutation>> = alloc::vec![None; degree];
        transversal[self.base as usize] = Some(Permutation::identity(degree));
        let mut orbit = alloc::vec![self.base];
        let mut queue = VecDeque::from([self.base]);
        while let Some(p) = queue.pop_front() {
            for s in &self.gens {
                let q = s.apply(p);
                if transversal[q as usize].is_none() {
                    let u = transversal[p as usize].as_ref().unwrap().compose(s);
                    transversal[q as usize] = Some(u);
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PermGroupData {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "PermGroupData", try_from = "PermGroupData")]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
}

impl From<PermGroup> for PermGroupData {
    fn from(g: PermGroup) -> Self {
        PermGroupData { degree: g.degree, generators: g.generators.into_iter().map(Permutation::into_images).collect() }
    }
}

impl TryFrom<PermGroupData> for PermGroup {
    type Error = Error;
    fn try_from(d: PermGroupData) -> Result<Self> {
        let gens = d.generators.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>>>()?;
        PermGroup::new(d.degree, gens)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::PreconditionViolation("permutation group of degree 0".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        let mut group = PermGroup { degree, generators, chain: Vec::new() };
        group.build_chain();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree: degree.max(1), generators: Vec::new(), chain: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.iter().map(|l| l.base).collect()
    }

    /// Exact order, or `None` if it does not fit in a `u128`.
    pub fn order_checked(&self) -> Option<u128> {
        self.chain.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Exact order. Panics if it exceeds `u128`; use [`Self::order_checked`]
    /// for arbitrary input.
    pub fn order(&self) -> u128 {
        self.order_checked().expect("group order exceeds u128")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (res, _) = self.sift(g.clone(), 0);
            res.is_identity()
        }
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit(&self.generators, self.degree, point)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Order of the stabilizer of `point`.
    pub fn stabilizer_order(&self, point: u32) -> u128 {
        self.order() / self.orbit(point).len() as u128
    }

    /// The subgroup generated by `elems`, with its own chain.
    pub fn subgroup_generated(&self, elems: &[Permutation]) -> Result<PermGroup> {
        if let Some(bad) = elems.iter().find(|g| g.degree() != self.degree) {
            return Err(Error::DegreeMismatch { expected: self.degree, found: bad.degree() });
        }
        PermGroup::new(self.degree, elems.to_vec())
    }

    /// All elements in ascending image-array order. Refuses groups with more
    /// than `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order_checked().unwrap_or(u128::MAX);
        if order > limit as u128 {
            return Err(Error::GroupTooLarge(order.min(u64::MAX as u128) as u64));
        }
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.compose(s);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Uniform element from the stabilizer chain.
    pub fn random_element(&self, rng: &mut impl RngCore) -> Permutation {
        let mut g = self.identity();
        for level in self.chain.iter().rev() {
            let p = level.orbit[(rng.next_u64() % level.orbit.len() as u64) as usize];
            g = g.compose(level.transversal[p as usize].as_ref().unwrap());
        }
        g
    }

    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.chain.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match &level.transversal[beta as usize] {
                Some(u) => g = g.compose(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.chain.len())
    }

    /// Inserts a sifted residue that stopped at level `at`.
    fn insert_residue(&mut self, residue: Permutation, at: usize) {
        if at == self.chain.len() {
            let moved = (0..self.degree as u32).find(|&p| residue.apply(p) != p).expect("nonidentity residue");
            self.chain.push(Level::new(moved, self.degree));
        }
        for level in self.chain.iter_mut().take(at + 1) {
            level.gens.push(residue.clone());
        }
        for level in self.chain.iter_mut().take(at + 1) {
            level.rebuild_orbit();
        }
    }

    fn build_chain(&mut self) {
        let gens: Vec<Permutation> = self.generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return;
        }
        for g in &gens {
            let (res, at) = self.sift(g.clone(), 0);
            if !res.is_identity() {
                self.insert_residue(res, at);
            }
        }

        // Randomized pass: random subproducts until a run of clean sifts.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut clean = 0;
        let mut attempts = 0;
        while clean < 12 && attempts < 400 {
            attempts += 1;
            let mut g = self.identity();
            for s in &gens {
                if rng.next_u32() & 1 == 1 {
                    g = g.compose(s);
                }
            }
            if let Some(level) = self.chain.first() {
                let p = level.orbit[(rng.next_u64() % level.orbit.len() as u64) as usize];
                g = g.compose(level.transversal[p as usize].as_ref().unwrap());
            }
            let (res, at) = self.sift(g, 0);
            if res.is_identity() {
                clean += 1;
            } else {
                clean = 0;
                self.insert_residue(res, at);
            }
        }

        // Deterministic verification: every Schreier generator must sift.
        let mut i = self.chain.len();
        while i > 0 {
            i -= 1;
            let mut restart = None;
            'outer: for pi in 0..self.chain[i].orbit.len() {
                let p = self.chain[i].orbit[pi];
                for si in 0..self.chain[i].gens.len() {
                    let level = &self.chain[i];
                    let s = &level.gens[si];
                    let q = s.apply(p);
                    let h = level.transversal[p as usize]
                        .as_ref()
                        .unwrap()
                        .compose(s)
                        .compose(&level.transversal[q as usize].as_ref().unwrap().inverse());
                    let (res, at) = self.sift(h, i + 1);
                    if !res.is_identity() {
                        self.insert_residue(res, at);
                        restart = Some(at);
                        break 'outer;
                    }
                }
            }
            if let Some(at) = restart {
                i = at + 1;
            }
        }
    }
}

/// Orbit of `point` under `gens`, in breadth-first order.
pub fn orbit(gens: &[Permutation], degree: usize, point: u32) -> Vec<u32> {
    let mut seen = alloc::vec![false; degree];
    seen[point as usize] = true;
    let mut out = alloc::vec![point];
    let mut k = 0;
    while k < out.len() {
        let p = out[k];
        k += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                out.push(q);
            }
        }
    }
    out
}

/// Partition of `{0..degree}` into orbits, each sorted by discovery from its
/// least point.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<u32>> {
    let mut seen = alloc::vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree as u32 {
        if !seen[p as usize] {
            let o = orbit(gens, degree, p);
            for &q in &o {
                seen[q as usize] = true;
            }
            out.push(o);
        }
    }
    out
}
