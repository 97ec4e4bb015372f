use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{boundary_subgroups, OrbifoldPresentation, SpatialGraphDiagram};
use crate::error::{Error, Result};
use crate::fuchsian::FuchsianSignature;
use crate::group::PermGroup;
use crate::homs::{epi_search, GroupHom};
use crate::library;
use crate::word::{evaluate, Word};

/// Generator images of the orbifold group in the boundary group of the
/// diagram's base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Retraction {
    pub boundary: FuchsianSignature,
    /// Image of each Wirtinger generator, a word in the boundary generators.
    pub images: Vec<Word>,
}

impl Retraction {
    /// Image of a word, freely reduced.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images).expect("word in the Wirtinger generators").reduce()
    }

    pub fn display(&self, w: &Word) -> String {
        let text = self.boundary.presentation().presentation.display_word(w);
        if text.is_empty() {
            "1".into()
        } else {
            text
        }
    }
}

/// Assembles the retraction from the edge images of the diagram. Arcs after
/// an under-crossing get the conjugated image forced by the crossing relator.
/// Checks that the meridians of the base vertex map to the generating vector
/// of the boundary group.
pub fn retraction(d: &SpatialGraphDiagram, pres: &OrbifoldPresentation) -> Result<Retraction> {
    let mut images: Vec<Option<Word>> = alloc::vec![None; pres.generator_count()];
    for (e, edge) in d.edges.iter().enumerate() {
        let w = edge
            .image
            .clone()
            .ok_or_else(|| Error::PreconditionViolation(format!("edge {} has no retraction image", edge.name)))?;
        images[pres.arcs[e][0]] = Some(w);
    }
    loop {
        let mut changed = false;
        for c in &d.crossings {
            let unders = d.under_crossings(c.under);
            let k = unders.iter().position(|&x| d.crossings[x] == *c).unwrap();
            let o_arc = d.under_crossings(c.over).iter().filter(|&&x| d.crossings[x].under_t < c.over_t).count();
            let (u_in, u_out, o) = (pres.arcs[c.under][k], pres.arcs[c.under][k + 1], pres.arcs[c.over][o_arc]);
            if images[u_out].is_none() {
                if let (Some(u), Some(ow)) = (&images[u_in], &images[o]) {
                    let conj = ow.pow(-(c.sign as i64));
                    images[u_out] = Some(conj.concat(u).concat(&conj.inverse()).reduce());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let images = images
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::CertificationFailure("crossings do not determine every arc image".into()))?;
    let r = Retraction { boundary: d.boundary.clone(), images };
    let vector = d.boundary.presentation().vector;
    let base = &boundary_subgroups(d, pres)[d.base_vertex];
    if base.meridians.len() != vector.len() {
        return Err(Error::CertificationFailure("base vertex degree differs from the boundary signature".into()));
    }
    for (m, v) in base.meridians.iter().zip(&vector) {
        if r.apply(m) != v.reduce() {
            return Err(Error::CertificationFailure(format!(
                "base meridian maps to {} instead of {}",
                r.display(&r.apply(m)),
                r.display(v)
            )));
        }
    }
    Ok(r)
}

/// Rewrites `w` under the extra relation `g² = 1` for generator `g`: inverse
/// letters become plain ones and squares cancel.
pub fn involution_reduce(w: &Word, generator: usize) -> Word {
    let g = generator as i32 + 1;
    let mut out: Vec<i32> = Vec::new();
    for &l in w.letters() {
        let l = if l == -g { g } else { l };
        if out.last() == Some(&l) && l == g || out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word::from_letters(out)
}

/// Extends a smooth epimorphism `φ` of the boundary group to the orbifold
/// group by `ψ = φ ∘ r`, verifying every relator. The first relator with
/// nontrivial image is reported together with its retraction image.
pub fn extend_hom(d: &SpatialGraphDiagram, pres: &OrbifoldPresentation, phi: &GroupHom) -> Result<GroupHom> {
    let fp = d.boundary.presentation();
    if phi.images().len() != fp.presentation.generator_count() || !phi.verify() {
        return Err(Error::PreconditionViolation(format!("φ is not a homomorphism on {}", d.boundary)));
    }
    if !phi.is_smooth(&d.boundary) {
        return Err(Error::NonSmoothInput(format!("φ is not smooth on {}", d.boundary)));
    }
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let r = retraction(d, pres)?;
    let images = r
        .images
        .iter()
        .map(|w| evaluate(phi.images(), w))
        .collect::<Result<Vec<_>>>()?;
    for rel in pres.relators() {
        if !evaluate(&images, rel)?.is_identity() {
            return Err(Error::RelatorViolation {
                relator: pres.presentation.display_word(rel),
                image: r.display(&r.apply(rel)),
            });
        }
    }
    let base = &boundary_subgroups(d, pres)[d.base_vertex];
    for (m, v) in base.meridians.iter().zip(&fp.vector) {
        if evaluate(&images, m)? != evaluate(phi.images(), v)? {
            return Err(Error::CertificationFailure("extension differs from φ on the base vertex".into()));
        }
    }
    GroupHom::new(pres.presentation.clone(), phi.codomain().clone(), images)
}

/// Outcome of screening the retraction through finite quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCertificate {
    pub quotients: usize,
    /// Group orders of the quotients used.
    pub orders: Vec<u128>,
    /// `(quotient, relator)` pairs whose retraction image is nontrivial.
    pub failures: Vec<(usize, usize)>,
}

impl QuotientCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the retraction images of all relators vanish in each of the
/// given quotients of the boundary group.
pub fn quotient_certificate(r: &Retraction, pres: &OrbifoldPresentation, quotients: &[GroupHom]) -> QuotientCertificate {
    let words: Vec<Word> = pres.relators().iter().map(|w| r.apply(w)).collect();
    let mut failures = Vec::new();
    for (qi, q) in quotients.iter().enumerate() {
        for (ri, w) in words.iter().enumerate() {
            if !evaluate(q.images(), w).map(|p| p.is_identity()).unwrap_or(false) {
                failures.push((qi, ri));
            }
        }
    }
    QuotientCertificate { quotients: quotients.len(), orders: quotients.iter().map(|q| q.image().order()).collect(), failures }
}

fn screening_targets() -> Vec<PermGroup> {
    let mut out = alloc::vec![
        library::alternating(4),
        library::symmetric(4),
        library::alternating(5),
        library::symmetric(5),
    ];
    for p in [7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 71, 83] {
        out.push(library::psl2(p).expect("prime"));
    }
    out.push(library::alternating(6));
    out.push(library::symmetric(6));
    out.push(library::alternating(7));
    out.push(library::gl2(3).expect("prime"));
    out.push(library::gl2(5).expect("prime"));
    out
}

/// Smooth epimorphisms of the signature's group onto small library groups,
/// at most `per_target` from each, until `count` are found. Targets whose
/// search would be too expensive for the number of periods are skipped.
pub fn screening_quotients(sig: &FuchsianSignature, count: usize, per_target: usize) -> Vec<GroupHom> {
    let mut out = Vec::new();
    let free = sig.periods().len().saturating_sub(2) + 2 * sig.genus() as usize;
    for g in screening_targets() {
        if out.len() >= count {
            break;
        }
        let order = g.order() as f64;
        if libm::pow(order, free as f64) > 3.0e8 {
            continue;
        }
        if sig.periods().iter().any(|&p| !(order as u128).is_multiple_of(p as u128)) {
            continue;
        }
        if let Ok(homs) = epi_search(sig, &g) {
            out.extend(homs.into_iter().filter(|h| h.is_smooth(sig)).take(per_target));
        }
    }
    out
}
