//! Transitive permutation actions of Fuchsian groups, i.e. finite-index
//! subgroups given by their coset actions.

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{FuchsianPresentation, FuchsianSignature, Rational};
use crate::error::{Error, Result};
use crate::group::{orbit, PermGroup};
use crate::perm::Permutation;
use crate::word::{evaluate, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetAction {
    signature: FuchsianSignature,
    degree: usize,
    /// One image per generator of the standard presentation.
    images: Vec<Permutation>,
}

impl CosetAction {
    /// Validates degree, relators and transitivity.
    pub fn new(signature: FuchsianSignature, images: Vec<Permutation>) -> Result<Self> {
        let fp = signature.presentation();
        let expected = fp.presentation.generator_count();
        if images.len() != expected {
            return Err(Error::ImageCountMismatch { expected, found: images.len() });
        }
        let degree = images.first().map(Permutation::degree).unwrap_or(1);
        if let Some(bad) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        for r in fp.presentation.relators() {
            if !evaluate(&images, r)?.is_identity() {
                return Err(Error::InvalidAction(format!(
                    "relator {} acts nontrivially",
                    fp.presentation.display_word(r)
                )));
            }
        }
        if degree > 0 && orbit(&images, degree, 0).len() != degree {
            return Err(Error::InvalidAction("action is not transitive".into()));
        }
        Ok(CosetAction { signature, degree, images })
    }

    /// The trivial action on one point.
    pub fn trivial(signature: FuchsianSignature) -> Self {
        let k = signature.presentation().presentation.generator_count();
        CosetAction { signature, degree: 1, images: alloc::vec![Permutation::identity(1); k] }
    }

    pub fn signature(&self) -> &FuchsianSignature {
        &self.signature
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn presentation(&self) -> FuchsianPresentation {
        self.signature.presentation()
    }

    /// Images of the generating vector.
    pub fn vector_images(&self) -> Vec<Permutation> {
        self.presentation().vector_images(&self.images).expect("validated action")
    }

    /// Whether the point stabilizer is torsion-free: every elliptic element
    /// of period `m` acts with all cycles of length exactly `m`.
    pub fn has_torsion_free_stabilizer(&self) -> bool {
        let fp = self.presentation();
        let ok = fp.elliptic().all(|(w, m)| {
            let p = evaluate(&self.images, w).expect("validated action");
            p.cycle_lengths().iter().all(|&l| l as u32 == m)
        });
        ok
    }
}

/// Signature of the point stabilizer: a cycle of length `ℓ < m` of a period-`m`
/// generator contributes the period `m/ℓ`; the genus follows from
/// Riemann–Hurwitz. Periods are sorted ascending.
pub fn subgroup_signature(action: &CosetAction) -> Result<FuchsianSignature> {
    let fp = action.presentation();
    let mut periods = Vec::new();
    for (w, m) in fp.elliptic() {
        let p = evaluate(action.images(), w)?;
        for l in p.cycle_lengths() {
            let l = l as u32;
            if m % l != 0 {
                return Err(Error::CertificationFailure(format!("cycle length {l} does not divide period {m}")));
            }
            if l < m {
                periods.push(m / l);
            }
        }
    }
    periods.sort_unstable();
    let chi_h = action.signature().orbifold_euler_char() * Rational::from_integer(action.degree() as i64);
    let mut two_minus_2g = chi_h;
    for &p in &periods {
        two_minus_2g += Rational::new(p as i64 - 1, p as i64);
    }
    if !two_minus_2g.is_integer() || (2 - two_minus_2g.to_integer()) % 2 != 0 || two_minus_2g.to_integer() > 2 {
        return Err(Error::CertificationFailure(format!(
            "Riemann–Hurwitz genus is not a non-negative integer (2-2g = {two_minus_2g})"
        )));
    }
    let genus = ((2 - two_minus_2g.to_integer()) / 2) as u32;
    FuchsianSignature::new(genus, periods)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    /// Permutation group generated by the action; this is `F/core`.
    pub image: PermGroup,
    /// Order of the point-0 stabilizer in the image (the image of the
    /// subgroup in `F/core`).
    pub stabilizer_image_order: u128,
    /// Index of the normal core, `|image|`.
    pub core_index: u128,
}

pub fn normal_core(action: &CosetAction) -> Result<CoreReport> {
    let image = PermGroup::new(action.degree(), action.images().to_vec())?;
    let core_index = image.order_checked().ok_or(Error::GroupTooLarge(u64::MAX))?;
    let stabilizer_image_order = core_index / action.degree() as u128;
    Ok(CoreReport { image, stabilizer_image_order, core_index })
}

/// Schreier generators of the point-0 stabilizer with respect to a
/// breadth-first transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerators {
    /// `transversal[c]` carries point 0 to point `c`.
    pub transversal: Vec<Word>,
    pub generators: Vec<Word>,
    /// `edge[c][g]` is the Schreier generator `u_c g u_{c^g}⁻¹`, or `None` for
    /// tree edges where it is freely trivial.
    pub edge: Vec<Vec<Option<usize>>>,
}

pub fn schreier_generators(action: &CosetAction) -> SchreierGenerators {
    let n = action.degree();
    let k = action.images().len();
    let mut transversal: Vec<Option<Word>> = alloc::vec![None; n];
    let mut tree = alloc::vec![alloc::vec![false; k]; n];
    transversal[0] = Some(Word::empty());
    let mut queue = alloc::collections::VecDeque::from([0u32]);
    while let Some(c) = queue.pop_front() {
        for (g, img) in action.images().iter().enumerate() {
            let d = img.apply(c);
            if transversal[d as usize].is_none() {
                transversal[d as usize] = Some(transversal[c as usize].as_ref().unwrap().concat(&Word::generator(g)));
                tree[c as usize][g] = true;
                queue.push_back(d);
            }
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|w| w.expect("transitive action")).collect();
    let mut generators = Vec::new();
    let mut edge = alloc::vec![alloc::vec![None; k]; n];
    for c in 0..n {
        for (g, img) in action.images().iter().enumerate() {
            if tree[c][g] {
                continue;
            }
            let d = img.apply(c as u32) as usize;
            let s = transversal[c].concat(&Word::generator(g)).concat(&transversal[d].inverse());
            edge[c][g] = Some(generators.len());
            generators.push(s);
        }
    }
    SchreierGenerators { transversal, generators, edge }
}

/// Traces a word from coset `c`, returning the end coset and the Schreier
/// generator letters (signed, 1-based) picked up on the way.
pub(crate) fn trace_schreier(action: &CosetAction, inverses: &[Permutation], sg: &SchreierGenerators, c: usize, w: &Word) -> (usize, Vec<i32>) {
    let mut at = c;
    let mut letters = Vec::new();
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            if let Some(s) = sg.edge[at][g] {
                letters.push(s as i32 + 1);
            }
            at = action.images()[g].apply(at as u32) as usize;
        } else {
            let prev = inverses[g].apply(at as u32) as usize;
            if let Some(s) = sg.edge[prev][g] {
                letters.push(-(s as i32 + 1));
            }
            at = prev;
        }
    }
    (at, letters)
}

/// Basis of `Hom(Stab(0), Z/2)`, as 0/1 vectors over the Schreier generators,
/// from the Reidemeister–Schreier relations.
pub fn stabilizer_homs_mod2(action: &CosetAction) -> Vec<Vec<u8>> {
    let sg = schreier_generators(action);
    let m = sg.generators.len();
    let inverses: Vec<Permutation> = action.images().iter().map(Permutation::inverse).collect();
    let fp = action.presentation();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for c in 0..action.degree() {
        for r in fp.presentation.relators() {
            let (_, letters) = trace_schreier(action, &inverses, &sg, c, r);
            let mut row = alloc::vec![0u8; m];
            for l in letters {
                row[l.unsigned_abs() as usize - 1] ^= 1;
            }
            rows.push(row);
        }
    }
    nullspace_mod2(rows, m)
}

fn nullspace_mod2(mut rows: Vec<Vec<u8>>, m: usize) -> Vec<Vec<u8>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = alloc::vec![0u8; m];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[i][f];
            }
            v
        })
        .collect()
}

impl core::fmt::Display for CosetAction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} on {} points:", self.signature, self.degree)?;
        let fp = self.presentation();
        for (name, p) in fp.presentation.generators().iter().zip(&self.images) {
            write!(f, " {name}={}", p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::epi_search;
    use crate::library;

    fn sig(s: &str) -> FuchsianSignature {
        s.parse().unwrap()
    }

    fn deg2_238() -> CosetAction {
        CosetAction::new(
            sig("(0;2,3,8)"),
            alloc::vec![Permutation::from_images(alloc::vec![1, 0]).unwrap(), Permutation::identity(2)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_actions() {
        let s = sig("(0;2,3,7)");
        let x = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(matches!(
            CosetAction::new(s.clone(), alloc::vec![x, Permutation::identity(3)]),
            Err(Error::InvalidAction(_))
        ));
        assert!(CosetAction::new(s.clone(), alloc::vec![Permutation::identity(2), Permutation::identity(2)]).is_err());
        assert!(CosetAction::new(s, alloc::vec![Permutation::identity(1)]).is_err());
    }

    #[test]
    fn trivial_action_signature() {
        let s = sig("(0;2,3,7)");
        assert_eq!(subgroup_signature(&CosetAction::trivial(s.clone())).unwrap(), s);
    }

    #[test]
    fn degree_two_action_of_238() {
        let a = deg2_238();
        assert_eq!(subgroup_signature(&a).unwrap(), sig("(0;3,3,4)"));
        let core = normal_core(&a).unwrap();
        assert_eq!(core.core_index, 2);
        assert_eq!(core.image.order(), 2);
        assert_eq!(core.stabilizer_image_order, 1);
    }

    #[test]
    fn regular_hurwitz_action_is_genus_three() {
        let target = library::psl2(7).unwrap();
        let hom = epi_search(&sig("(0;2,3,7)"), &target).unwrap().remove(0);
        let a = hom.regular_action().unwrap();
        assert_eq!(a.degree(), 168);
        assert_eq!(subgroup_signature(&a).unwrap(), sig("(3;)"));
        assert!(a.has_torsion_free_stabilizer());
        let core = normal_core(&a).unwrap();
        assert_eq!(core.stabilizer_image_order, 1);
        assert_eq!(core.core_index, 168);
    }

    #[test]
    fn schreier_generators_fix_base_point_and_generate_stabilizer() {
        let a = deg2_238();
        let sg = schreier_generators(&a);
        for w in &sg.generators {
            assert_eq!(evaluate(a.images(), w).unwrap().apply(0), 0);
        }
        let trivial = CosetAction::trivial(sig("(0;2,3,8)"));
        let sg1 = schreier_generators(&trivial);
        assert_eq!(sg1.generators, alloc::vec![Word::generator(0), Word::generator(1)]);

        let target = library::psl2(7).unwrap();
        let hom = epi_search(&sig("(0;2,3,7)"), &target).unwrap().remove(0);
        // Action on the 8 points of the projective line.
        let a = CosetAction::new(sig("(0;2,3,7)"), hom.images().to_vec()).unwrap();
        let sg = schreier_generators(&a);
        let imgs: Vec<Permutation> = sg.generators.iter().map(|w| evaluate(a.images(), w).unwrap()).collect();
        assert!(imgs.iter().all(|p| p.apply(0) == 0));
        let core = normal_core(&a).unwrap();
        let stab = core.image.subgroup_generated(&imgs).unwrap();
        assert_eq!(stab.order(), core.stabilizer_image_order);
        assert_eq!(stab.order(), 21);
    }

    #[test]
    fn homs_mod2_of_small_stabilizers() {
        // Stabilizer (0;3,3,4) has abelianization Z/3: no nontrivial sign.
        assert!(stabilizer_homs_mod2(&deg2_238()).is_empty());
        // Whole (2,3,8) group: exactly one sign character.
        assert_eq!(stabilizer_homs_mod2(&CosetAction::trivial(sig("(0;2,3,8)"))).len(), 1);
        // Genus-two surface group: H^1(S; Z/2) has rank 4.
        let hom = epi_search(&sig("(0;2,3,8)"), &library::gl2(3).unwrap()).unwrap().remove(0);
        let reg = hom.regular_action().unwrap();
        assert_eq!(subgroup_signature(&reg).unwrap(), sig("(2;)"));
        assert_eq!(stabilizer_homs_mod2(&reg).len(), 4);
    }
}
