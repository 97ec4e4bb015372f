//! Pipelines that start from a transitive action of a triangle group, i.e.
//! from a finite-index subgroup, rather than from a smooth epimorphism.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{build, embed_irreducible, route_triangle, ClosedManifold, EmbedOptions, EmbeddingReport, EulerCheck};
use crate::diagram::{boundary_subgroups, retraction, wirtinger_presentation, PolyhedronKind};
use crate::error::{Error, Result};
use crate::fuchsian::{normal_core, reorder_vector, subgroup_signature, CosetAction, FuchsianSignature, Rational};
use crate::group::{orbits, PermGroup};
use crate::homs::{induced_cover_action, GroupHom};
use crate::perm::Permutation;
use crate::word::evaluate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary2Report {
    pub signature: FuchsianSignature,
    pub degree: usize,
    /// Signature of the surface group `π₁(S)` (no periods).
    pub subgroup_signature: FuchsianSignature,
    /// `|G|` for `G = F / core`.
    pub group_order: u128,
    /// `|G₀|`, the image of the point stabilizer in `G`.
    pub stabilizer_image_order: u128,
    /// Genus of the quasiplatonic cover `S̃ = H²/core`.
    pub quasiplatonic_genus: u64,
    /// Genus of `S`.
    pub base_genus: u32,
    /// Degree of `S̃ → S`, equal to `|G₀|`.
    pub covering_degree: u128,
    /// `χ(S̃) = |G₀|·χ(S)`.
    pub euler_consistent: bool,
    pub embedding: EmbeddingReport,
}

/// A surface whose group has finite index in a triangle group is covered by
/// the quasiplatonic surface of the normal core, which embeds through the
/// triangle route.
pub fn corollary2_pipeline(action: &CosetAction, opts: &EmbedOptions) -> Result<Corollary2Report> {
    let sig = action.signature().clone();
    if !sig.is_triangle() {
        return Err(Error::PreconditionViolation(format!("{sig} is not a triangle signature")));
    }
    sig.ensure_hyperbolic()?;
    let sub = subgroup_signature(action)?;
    if !sub.periods().is_empty() {
        return Err(Error::TorsionInSubgroup(sub.to_string()));
    }
    let core = normal_core(action)?;
    let quasiplatonic_genus = sig.quotient_genus(core.core_index)?;
    let g0 = core.stabilizer_image_order;
    let lhs = 2 - 2 * quasiplatonic_genus as i128;
    let rhs = g0 as i128 * (2 - 2 * sub.genus() as i128);
    let phi = GroupHom::on_signature(&sig, core.image.clone(), action.images().to_vec())?;
    let embedding = embed_irreducible(&phi, opts)?;
    Ok(Corollary2Report {
        signature: sig,
        degree: action.degree(),
        base_genus: sub.genus(),
        subgroup_signature: sub,
        group_order: core.core_index,
        stabilizer_image_order: g0,
        quasiplatonic_genus,
        covering_degree: g0,
        euler_consistent: lhs == rhs,
        embedding,
    })
}

/// Boundary surfaces over one truncated vertex of the manifold cover: one
/// per orbit of the boundary group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBoundary {
    pub vertex: usize,
    pub signature: FuchsianSignature,
    pub orbit_sizes: Vec<usize>,
    pub genera: Vec<u64>,
    /// Every orbit's point stabilizer is a surface group of the same genus.
    pub cross_check: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Report {
    pub signature: FuchsianSignature,
    pub base_degree: usize,
    /// Signature of the point stabilizer of the base action.
    pub base_subgroup_signature: FuchsianSignature,
    /// Group generated by the stabilizer homomorphism.
    pub group: PermGroup,
    pub group_order: u128,
    pub induced_degree: usize,
    /// Signature of the kernel `K`, the group of the surface `S`.
    pub surface_signature: FuchsianSignature,
    pub reordering: Vec<usize>,
    pub polyhedron: PolyhedronKind,
    /// The pulled-back action of the orbifold group on `induced_degree`
    /// points, one image per meridian generator.
    pub pulled_back: Vec<Permutation>,
    pub relators_trivial: bool,
    pub kernel_torsion_free: bool,
    pub boundary: Vec<CoverBoundary>,
    pub euler: EulerCheck,
    pub closed_manifold: ClosedManifold,
}

/// The action of `G = F_S / K` on `S = H²/K`, where `F_S` is the
/// point stabilizer of `action` and `K` the kernel of `stabilizer_hom`
/// (images of the Schreier generators), embeds into the manifold cover of the
/// orbifold obtained by pulling the action back through the retraction.
pub fn theorem3_pipeline(action: &CosetAction, stabilizer_hom: &[Permutation]) -> Result<Theorem3Report> {
    let sig = action.signature().clone();
    if !sig.is_triangle() {
        return Err(Error::PreconditionViolation(format!("{sig} is not a triangle signature")));
    }
    sig.ensure_hyperbolic()?;
    let base_sub = subgroup_signature(action)?;
    let cover = induced_cover_action(action, stabilizer_hom)?;
    if !cover.has_torsion_free_stabilizer() {
        let s = subgroup_signature(&cover)?;
        return Err(Error::TorsionInKernel(format!("kernel has signature {s}")));
    }
    let surface_signature = subgroup_signature(&cover)?;
    let m = stabilizer_hom.first().map(Permutation::degree).unwrap_or(1);
    let group = PermGroup::new(m, stabilizer_hom.to_vec())?;
    let group_order = group.order();

    let (order, kind) = route_triangle(&sig)?;
    let routed_sig = FuchsianSignature::new(0, order.iter().map(|&i| sig.periods()[i]).collect())?;
    let vector = sig.presentation().vector_images(cover.images())?;
    let routed_images = routed_sig.presentation().images_from_vector(&reorder_vector(&vector, &order));
    let routed = CosetAction::new(routed_sig.clone(), routed_images)?;

    let d = build(kind, &routed_sig)?;
    let pres = wirtinger_presentation(&d);
    let r = retraction(&d, &pres)?;
    let pulled_back = r.images.iter().map(|w| evaluate(routed.images(), w)).collect::<Result<Vec<_>>>()?;
    for rel in pres.relators() {
        if !evaluate(&pulled_back, rel)?.is_identity() {
            return Err(Error::RelatorViolation {
                relator: pres.presentation.display_word(rel),
                image: r.display(&r.apply(rel)),
            });
        }
    }
    for (g, &label) in pulled_back.iter().zip(&pres.labels) {
        if g.cycle_lengths().iter().any(|&l| l as u32 != label) {
            return Err(Error::TorsionInKernel(format!("a meridian of label {label} has a short cycle")));
        }
    }

    let n = cover.degree();
    let mut boundary = Vec::new();
    let mut from_genera = Rational::from_integer(0);
    let mut orbifold_sum = Rational::from_integer(0);
    for b in boundary_subgroups(&d, &pres) {
        let meridians = b.meridians.iter().map(|w| evaluate(&pulled_back, w)).collect::<Result<Vec<_>>>()?;
        let chi = b.signature.orbifold_euler_char();
        orbifold_sum += chi;
        let fp = b.signature.presentation();
        let gens = fp.images_from_vector(&meridians);
        let mut orbit_sizes = Vec::new();
        let mut genera = Vec::new();
        let mut cross_check = true;
        for orbit in orbits(&gens, n) {
            let k = orbit.len();
            let total = chi * Rational::from_integer(k as i64);
            if !total.is_integer() || total.to_integer() % 2 != 0 {
                return Err(Error::NotASmoothSurfaceKernel(format!("orbit of size {k} over {}", b.signature)));
            }
            let genus = ((2 - total.to_integer()) / 2) as u64;
            from_genera += total;
            let restricted = restrict(&gens, &orbit)?;
            cross_check &= CosetAction::new(b.signature.clone(), restricted)
                .and_then(|a| subgroup_signature(&a))
                .map(|s| s.periods().is_empty() && s.genus() as u64 == genus)
                .unwrap_or(false);
            orbit_sizes.push(k);
            genera.push(genus);
        }
        boundary.push(CoverBoundary { vertex: b.vertex, signature: b.signature, orbit_sizes, genera, cross_check });
    }
    let euler = EulerCheck::new(from_genera, orbifold_sum * Rational::from_integer(n as i64));
    let boundary_genera = boundary.iter().flat_map(|b| b.genera.iter().copied()).collect();
    Ok(Theorem3Report {
        signature: sig,
        base_degree: action.degree(),
        base_subgroup_signature: base_sub,
        group,
        group_order,
        induced_degree: n,
        surface_signature,
        reordering: order,
        polyhedron: kind,
        pulled_back,
        relators_trivial: true,
        kernel_torsion_free: true,
        boundary,
        euler,
        closed_manifold: ClosedManifold { construction: "double".into(), boundary_genera, euler_characteristic: 0 },
    })
}

/// The permutations restricted to an invariant set, renumbered by position.
fn restrict(gens: &[Permutation], orbit: &[u32]) -> Result<Vec<Permutation>> {
    let mut index = alloc::collections::BTreeMap::new();
    for (i, &p) in orbit.iter().enumerate() {
        index.insert(p, i as u32);
    }
    gens.iter().map(|g| Permutation::from_images(orbit.iter().map(|&p| index[&g.apply(p)]).collect())).collect()
}
