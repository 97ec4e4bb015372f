//! Homomorphisms from finitely presented groups to permutation groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fuchsian::{schreier_generators, CosetAction, FuchsianSignature};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::word::{evaluate, Presentation};

/// Element limit for enumerating a target group.
pub const ELEMENT_LIMIT: u64 = 1 << 20;

/// A map on generators. Relators are not checked on construction; see
/// [`GroupHom::verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupHom {
    domain: Presentation,
    codomain: PermGroup,
    images: Vec<Permutation>,
    signature: Option<FuchsianSignature>,
}

impl GroupHom {
    pub fn new(domain: Presentation, codomain: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != domain.generator_count() {
            return Err(Error::ImageCountMismatch { expected: domain.generator_count(), found: images.len() });
        }
        if let Some(p) = images.iter().find(|p| p.degree() != codomain.degree()) {
            return Err(Error::DegreeMismatch { expected: codomain.degree(), found: p.degree() });
        }
        Ok(GroupHom { domain, codomain, images, signature: None })
    }

    /// Hom on the standard presentation of `sig`.
    pub fn on_signature(sig: &FuchsianSignature, codomain: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        let mut h = Self::new(sig.presentation().presentation, codomain, images)?;
        h.signature = Some(sig.clone());
        Ok(h)
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn codomain(&self) -> &PermGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn signature(&self) -> Option<&FuchsianSignature> {
        self.signature.as_ref()
    }

    /// Whether every relator maps to the identity.
    pub fn verify(&self) -> bool {
        self.failing_relator().is_none()
    }

    /// Index of the first relator with nontrivial image.
    pub fn failing_relator(&self) -> Option<usize> {
        self.domain
            .relators()
            .iter()
            .position(|r| !evaluate(&self.images, r).expect("degrees checked").is_identity())
    }

    pub fn image(&self) -> PermGroup {
        PermGroup::new(self.codomain.degree(), self.images.clone()).expect("degrees checked")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order_checked() == self.codomain.order_checked()
    }

    /// Orders of the elliptic generators are exactly their periods.
    pub fn is_smooth(&self, sig: &FuchsianSignature) -> bool {
        let fp = sig.presentation();
        if fp.presentation.generator_count() != self.images.len() {
            return false;
        }
        let smooth = fp
            .elliptic()
            .all(|(w, m)| evaluate(&self.images, w).map(|p| p.order() == m as u64).unwrap_or(false));
        smooth
    }

    /// The action on the elements of the image by right multiplication;
    /// point 0 is the identity. Its point stabilizer is the kernel.
    pub fn regular_action(&self) -> Result<CosetAction> {
        let sig = self
            .signature
            .clone()
            .ok_or_else(|| Error::PreconditionViolation("regular action needs a Fuchsian domain".into()))?;
        let elems = self.image().elements(ELEMENT_LIMIT)?;
        let index = |x: &Permutation| elems.binary_search(x).expect("closed under products") as u32;
        let images = self
            .images
            .iter()
            .map(|s| Permutation::from_images(elems.iter().map(|e| index(&e.compose(s))).collect()))
            .collect::<Result<Vec<_>>>()?;
        CosetAction::new(sig, images)
    }
}

/// `verify_hom`: every relator maps to the identity.
pub fn verify_hom(h: &GroupHom) -> Result<bool> {
    let d = h.codomain.degree();
    if let Some(p) = h.images.iter().find(|p| p.degree() != d) {
        return Err(Error::DegreeMismatch { expected: d, found: p.degree() });
    }
    Ok(h.verify())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EpiOptions {
    /// Also merge classes related by conjugation in the normalizer of the
    /// target inside the full symmetric group (degree ≤ 8 only).
    pub outer: bool,
}

/// All smooth epimorphisms from the signature's group onto `target`, one per
/// conjugacy class under the target's inner automorphisms.
pub fn epi_search(sig: &FuchsianSignature, target: &PermGroup) -> Result<Vec<GroupHom>> {
    epi_search_with(sig, target, EpiOptions::default())
}

pub fn epi_search_with(sig: &FuchsianSignature, target: &PermGroup, opts: EpiOptions) -> Result<Vec<GroupHom>> {
    sig.ensure_hyperbolic()?;
    let elems = target.elements(ELEMENT_LIMIT)?;
    let order = elems.len() as u128;
    let fp = sig.presentation();
    let g = sig.genus() as usize;
    let n = sig.periods().len();
    let slots = 2 * g + n;
    // Required element order per vector slot (0 = unconstrained).
    let required: Vec<u64> = (0..slots).map(|i| if i < 2 * g { 0 } else { sig.periods()[i - 2 * g] as u64 }).collect();
    let mut by_order: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, e) in elems.iter().enumerate() {
        by_order.entry(e.order()).or_default().push(i);
    }
    if required.iter().any(|&m| m != 0 && !by_order.contains_key(&m)) {
        return Ok(Vec::new());
    }
    let index = |x: &Permutation| elems.binary_search(x).expect("closed under products");
    // Conjugacy class representative (least element) of every element.
    let mut class_min = alloc::vec![usize::MAX; elems.len()];
    for i in 0..elems.len() {
        if class_min[i] != usize::MAX {
            continue;
        }
        let mut class = alloc::vec![i];
        class_min[i] = i;
        let mut k = 0;
        while k < class.len() {
            let e = &elems[class[k]];
            for s in target.generators() {
                let j = index(&e.conjugate_by(s));
                if class_min[j] == usize::MAX {
                    class_min[j] = i;
                    class.push(j);
                }
            }
            k += 1;
        }
    }
    let candidates = |slot: usize| -> Vec<usize> {
        if required[slot] == 0 {
            (0..elems.len()).collect()
        } else {
            by_order[&required[slot]].clone()
        }
    };
    let identity = target.identity();
    let mut out: Vec<Vec<Permutation>> = Vec::new();
    let firsts: Vec<usize> = candidates(0).into_iter().filter(|&i| class_min[i] == i).collect();
    for &first in &firsts {
        let x = &elems[first];
        let centralizer: Vec<&Permutation> = elems.iter().filter(|c| x.compose(c) == c.compose(x)).collect();
        let mut vector = alloc::vec![x.clone()];
        search(&elems, &required, &candidates, &centralizer, &identity, g, &mut vector, &mut |v| {
            if PermGroup::new(target.degree(), v.to_vec()).ok().and_then(|h| h.order_checked()) == Some(order) {
                out.push(v.to_vec());
            }
        });
    }
    let mut homs: Vec<GroupHom> = out
        .into_iter()
        .map(|v| {
            let images = fp.images_from_vector(&v);
            GroupHom::on_signature(sig, target.clone(), images).expect("images match the presentation")
        })
        .collect();
    if opts.outer {
        homs = merge_outer(homs, target)?;
    }
    Ok(homs)
}

/// Product of the long relation over a partial or full vector.
fn long_product(vector: &[Permutation], genus: usize, identity: &Permutation) -> Permutation {
    let mut acc = identity.clone();
    for i in 0..genus.min(vector.len() / 2) {
        let a = &vector[2 * i];
        let b = &vector[2 * i + 1];
        acc = acc.compose(&a.inverse()).compose(&b.inverse()).compose(a).compose(b);
    }
    for c in vector.iter().skip(2 * genus) {
        acc = acc.compose(c);
    }
    acc
}

#[allow(clippy::too_many_arguments)]
fn search(
    elems: &[Permutation],
    required: &[u64],
    candidates: &dyn Fn(usize) -> Vec<usize>,
    centralizer: &[&Permutation],
    identity: &Permutation,
    genus: usize,
    vector: &mut Vec<Permutation>,
    emit: &mut dyn FnMut(&[Permutation]),
) {
    let slots = required.len();
    let at = vector.len();
    let last_elliptic = slots > 2 * genus;
    if at == slots || (last_elliptic && at == slots - 1) {
        if at == slots - 1 {
            let last = long_product(vector, genus, identity).inverse();
            if last.order() != required[at] {
                return;
            }
            vector.push(last);
        } else if !long_product(vector, genus, identity).is_identity() {
            return;
        }
        // Keep only the least representative under the centralizer of the
        // first entry.
        let canonical = centralizer.iter().all(|c| {
            for v in &vector[1..] {
                let w = v.conjugate_by(c);
                match w.cmp(v) {
                    core::cmp::Ordering::Less => return false,
                    core::cmp::Ordering::Greater => return true,
                    core::cmp::Ordering::Equal => {}
                }
            }
            true
        });
        if canonical {
            emit(vector);
        }
        if vector.len() > at {
            vector.pop();
        }
        return;
    }
    for i in candidates(at) {
        vector.push(elems[i].clone());
        search(elems, required, candidates, centralizer, identity, genus, vector, emit);
        vector.pop();
    }
}

fn merge_outer(homs: Vec<GroupHom>, target: &PermGroup) -> Result<Vec<GroupHom>> {
    let n = target.degree();
    if n > 8 {
        return Err(Error::PreconditionViolation(format!("outer-class merging needs degree ≤ 8, got {n}")));
    }
    let sym = crate::library::symmetric(n);
    let normalizer: Vec<Permutation> = sym
        .elements(ELEMENT_LIMIT)?
        .into_iter()
        .filter(|c| target.generators().iter().all(|s| target.contains(&s.conjugate_by(c))))
        .collect();
    let mut seen: Vec<Vec<Permutation>> = Vec::new();
    let mut out = Vec::new();
    for h in homs {
        let key = |imgs: &[Permutation]| -> Vec<Permutation> { imgs.to_vec() };
        let orbit: Vec<Vec<Permutation>> =
            normalizer.iter().map(|c| h.images().iter().map(|p| p.conjugate_by(c)).collect()).collect();
        // Compare up to inner conjugation by canonicalizing each image tuple.
        let canon = |imgs: &Vec<Permutation>| -> Vec<Permutation> {
            let elems = target.elements(ELEMENT_LIMIT).expect("already enumerated");
            elems.iter().map(|c| imgs.iter().map(|p| p.conjugate_by(c)).collect::<Vec<_>>()).min().unwrap()
        };
        let my = canon(&key(h.images()));
        if seen.iter().any(|s| orbit.iter().any(|o| &canon(o) == s)) {
            continue;
        }
        seen.push(my);
        out.push(h);
    }
    Ok(out)
}

/// The action of the ambient group on pairs `(coset c, h ∈ H)` where
/// `H` is generated by the images of the base's Schreier generators. Its
/// point stabilizer is the kernel of the stabilizer hom.
pub fn induced_cover_action(base: &CosetAction, stabilizer_hom: &[Permutation]) -> Result<CosetAction> {
    let sg = schreier_generators(base);
    if stabilizer_hom.len() != sg.generators.len() {
        return Err(Error::ImageCountMismatch { expected: sg.generators.len(), found: stabilizer_hom.len() });
    }
    let m = stabilizer_hom.first().map(Permutation::degree).unwrap_or(1);
    if let Some(p) = stabilizer_hom.iter().find(|p| p.degree() != m) {
        return Err(Error::DegreeMismatch { expected: m, found: p.degree() });
    }
    let h = PermGroup::new(m, stabilizer_hom.to_vec())?;
    let elems = h.elements(ELEMENT_LIMIT)?;
    let index = |x: &Permutation| elems.binary_search(x).expect("closed under products") as u32;
    let hn = elems.len();
    let n = base.degree();
    let mut images = Vec::new();
    for (g, p) in base.images().iter().enumerate() {
        let mut img = alloc::vec![0u32; n * hn];
        for c in 0..n {
            let d = p.apply(c as u32) as usize;
            let mult: Vec<u32> = match sg.edge[c][g] {
                None => (0..hn as u32).collect(),
                Some(s) => elems.iter().map(|e| index(&e.compose(&stabilizer_hom[s]))).collect(),
            };
            for (hi, &hj) in mult.iter().enumerate() {
                img[c * hn + hi] = (d * hn) as u32 + hj;
            }
        }
        images.push(Permutation::from_images(img)?);
    }
    let fp = base.presentation();
    for r in fp.presentation.relators() {
        let p = evaluate(&images, r)?;
        if let Some(point) = (0..p.degree() as u32).find(|&i| p.apply(i) != i) {
            return Err(Error::InconsistentStabilizerHom { relator: fp.presentation.display_word(r), point: point as usize });
        }
    }
    CosetAction::new(base.signature().clone(), images)
}
