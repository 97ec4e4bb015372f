//! End-to-end embeddings: route a smooth epimorphism to a polyhedron,
//! extend it over the orbifold group of the truncated polyhedron, and
//! analyze the boundary of the resulting manifold cover.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    bipyramid_diagram, boundary_subgroups, check_labeling, cube_diagram, extend_hom, octahedron_diagram,
    retraction, tetrahedron_diagram, wirtinger_presentation, OrbifoldPresentation, PolyhedronKind,
    SpatialGraphDiagram, VertexKind,
};
use crate::error::{Error, Result};
use crate::fuchsian::{reorder_vector, subgroup_signature, FuchsianSignature, Rational};
use crate::geometry::{realize_polyhedron, retraction_residuals, wirtinger_residual, RealizeOptions};
use crate::group::PermGroup;
use crate::homs::GroupHom;
use crate::perm::Permutation;
use crate::word::evaluate;

mod covers;

pub use covers::{corollary2_pipeline, theorem3_pipeline, Corollary2Report, CoverBoundary, Theorem3Report};

/// Boundary image groups up to this order get the regular-action cross-check
/// of their genus.
pub const CROSS_CHECK_LIMIT: u128 = 20_000;

/// Residual bound for the numerical Wirtinger and retraction checks.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedOptions {
    /// Solver settings for the geometric certificate; `None` skips it.
    pub realize: Option<RealizeOptions>,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { realize: Some(RealizeOptions::default()) }
    }
}

impl EmbedOptions {
    pub fn without_geometry() -> Self {
        EmbedOptions { realize: None }
    }
}

/// Boundary surfaces over one truncated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFamily {
    pub vertex: usize,
    pub signature: FuchsianSignature,
    pub kind: Option<VertexKind>,
    /// `[G : ψ(B)]`.
    pub component_count: u128,
    pub surface_genus: u64,
    pub image_subgroup_order: u128,
    /// `ψ(B) = G`: the component carries the full action.
    pub full_action: bool,
    /// Genus recomputed from the regular action of `ψ(B)`, when small enough.
    pub cross_check: Option<bool>,
}

/// `χ(∂M)` from the component genera and from the boundary orbifolds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub from_genera: Rational,
    pub from_orbifolds: Rational,
    pub consistent: bool,
}

impl EulerCheck {
    fn new(from_genera: Rational, from_orbifolds: Rational) -> Self {
        EulerCheck { from_genera, from_orbifolds, consistent: from_genera == from_orbifolds }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GeometricCertificate {
    Verified {
        residual: f64,
        signature: (usize, usize, usize),
        orthogonality: f64,
        wirtinger_residual: f64,
        retraction_residual: f64,
        restart: usize,
    },
    Unverified {
        reason: String,
    },
    Skipped,
}

impl GeometricCertificate {
    pub fn is_verified(&self) -> bool {
        matches!(self, GeometricCertificate::Verified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedManifold {
    pub construction: String,
    pub boundary_genera: Vec<u64>,
    /// Always zero for a closed 3-manifold; recorded, not computed.
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub signature: FuchsianSignature,
    pub group: PermGroup,
    pub group_order: u128,
    /// Generator images of the input homomorphism.
    pub phi: Vec<Permutation>,
    /// Position `i` of the routed signature holds the input period `order[i]`.
    pub reordering: Vec<usize>,
    pub routed_signature: FuchsianSignature,
    pub polyhedron: PolyhedronKind,
    /// Image of every meridian generator of the orbifold group.
    pub extension: Vec<(String, Permutation)>,
    pub kernel_smooth: bool,
    pub boundary_components: Vec<BoundaryFamily>,
    pub euler: EulerCheck,
    pub geometry: GeometricCertificate,
    pub closed_manifold: ClosedManifold,
}

impl EmbeddingReport {
    /// Genera of the boundary families carrying the full action.
    pub fn full_action_genera(&self) -> Vec<u64> {
        self.boundary_components.iter().filter(|b| b.full_action).map(|b| b.surface_genus).collect()
    }

    /// Total number of boundary surfaces.
    pub fn component_total(&self) -> u128 {
        self.boundary_components.iter().map(|b| b.component_count).sum()
    }
}

fn input_signature(phi: &GroupHom) -> Result<FuchsianSignature> {
    let sig = phi
        .signature()
        .cloned()
        .ok_or_else(|| Error::PreconditionViolation("homomorphism is not defined on a Fuchsian signature".into()))?;
    sig.ensure_hyperbolic()?;
    if !phi.verify() {
        return Err(Error::PreconditionViolation(format!("φ does not respect the relators of {sig}")));
    }
    if !phi.is_smooth(&sig) {
        return Err(Error::NonSmoothInput(format!("some generator of {sig} maps to an element of the wrong order")));
    }
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    Ok(sig)
}

/// The same action on the signature with periods permuted by braid moves.
pub fn reorder_hom(phi: &GroupHom, order: &[usize]) -> Result<GroupHom> {
    let sig = phi
        .signature()
        .ok_or_else(|| Error::PreconditionViolation("homomorphism is not defined on a Fuchsian signature".into()))?;
    if sig.genus() != 0 || order.len() != sig.periods().len() {
        return Err(Error::PreconditionViolation(format!("cannot reorder the periods of {sig}")));
    }
    let periods: Vec<u32> = order.iter().map(|&i| sig.periods()[i]).collect();
    let routed = FuchsianSignature::new(0, periods)?;
    let vector = sig.presentation().vector_images(phi.images())?;
    let images = routed.presentation().images_from_vector(&reorder_vector(&vector, order));
    GroupHom::on_signature(&routed, phi.codomain().clone(), images)
}

fn to_front(n: usize, i: usize) -> Vec<usize> {
    core::iter::once(i).chain((0..n).filter(|&j| j != i)).collect()
}

/// Triangle routing: a period 2 is moved to the diagonal label of the
/// tetrahedron; otherwise the truncated cube is used.
pub fn route_triangle(sig: &FuchsianSignature) -> Result<(Vec<usize>, PolyhedronKind)> {
    if !sig.is_triangle() {
        return Err(Error::PreconditionViolation(format!("{sig} is not a triangle signature")));
    }
    Ok(match sig.periods().iter().position(|&p| p == 2) {
        Some(i) => (to_front(3, i), PolyhedronKind::Tetrahedron),
        None => (alloc::vec![0, 1, 2], PolyhedronKind::Cube),
    })
}

/// Four periods go to the octahedron once an opposite pair exceeds 2;
/// `(2,2,2,s)` has no such arrangement and goes to the bipyramid.
pub fn route_quadrangle(sig: &FuchsianSignature) -> Result<(Vec<usize>, PolyhedronKind)> {
    let p = sig.periods();
    if sig.genus() != 0 || p.len() != 4 {
        return Err(Error::PreconditionViolation(format!("{sig} is not a quadrangle signature")));
    }
    sig.ensure_hyperbolic()?;
    if p[0].min(p[2]) > 2 || p[1].min(p[3]) > 2 {
        return Ok((alloc::vec![0, 1, 2, 3], PolyhedronKind::Octahedron));
    }
    let big: Vec<usize> = (0..4).filter(|&i| p[i] > 2).collect();
    let rest: Vec<usize> = (0..4).filter(|&i| p[i] == 2).collect();
    match big.len() {
        0 => Err(Error::NotHyperbolic(sig.to_string())),
        1 => Ok((to_front(4, big[0]), PolyhedronKind::Bipyramid)),
        _ => {
            let others: Vec<usize> = (0..4).filter(|i| *i != big[0] && *i != big[1]).collect();
            debug_assert!(others.iter().all(|i| rest.contains(i)));
            Ok((alloc::vec![big[0], others[0], big[1], others[1]], PolyhedronKind::Octahedron))
        }
    }
}

/// The bipyramid needs its first period above 2.
pub fn route_planar(sig: &FuchsianSignature) -> Result<(Vec<usize>, PolyhedronKind)> {
    let p = sig.periods();
    if sig.genus() != 0 || p.len() < 3 {
        return Err(Error::PreconditionViolation(format!("{sig} is not a planar signature with at least 3 periods")));
    }
    match p.iter().position(|&x| x > 2) {
        None => Err(Error::Excluded(format!("{sig}: all periods are 2"))),
        Some(i) => Ok((to_front(p.len(), i), PolyhedronKind::Bipyramid)),
    }
}

fn build(kind: PolyhedronKind, sig: &FuchsianSignature) -> Result<SpatialGraphDiagram> {
    let p = sig.periods();
    match kind {
        PolyhedronKind::Tetrahedron => tetrahedron_diagram(p[0], p[1], p[2]),
        PolyhedronKind::Cube => cube_diagram(p[0], p[1], p[2]),
        PolyhedronKind::Octahedron => octahedron_diagram(p[0], p[1], p[2], p[3]),
        PolyhedronKind::Bipyramid => bipyramid_diagram(p),
        PolyhedronKind::Custom => Err(Error::PreconditionViolation("no builder for custom diagrams".into())),
    }
}

fn embed_routed(phi: &GroupHom, route: (Vec<usize>, PolyhedronKind), opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = input_signature(phi)?;
    let (order, kind) = route;
    let routed = reorder_hom(phi, &order)?;
    let d = build(kind, routed.signature().expect("signature set"))?;
    let mut report = embed_on_diagram(&routed, &d, opts)?;
    report.signature = sig;
    report.phi = phi.images().to_vec();
    report.reordering = order;
    Ok(report)
}

/// Embedding for a smooth epimorphism of a triangle group.
pub fn embed_irreducible(phi: &GroupHom, opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = input_signature(phi)?;
    embed_routed(phi, route_triangle(&sig)?, opts)
}

/// Embedding for a smooth epimorphism of a quadrangle group.
pub fn embed_quadrangle(phi: &GroupHom, opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = input_signature(phi)?;
    embed_routed(phi, route_quadrangle(&sig)?, opts)
}

/// Embedding for a planar signature, through the bipyramid.
pub fn embed_planar(phi: &GroupHom, opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = phi
        .signature()
        .cloned()
        .ok_or_else(|| Error::PreconditionViolation("homomorphism is not defined on a Fuchsian signature".into()))?;
    let route = route_planar(&sig)?;
    input_signature(phi)?;
    embed_routed(phi, route, opts)
}

/// Dispatches on the number of periods.
pub fn embed(phi: &GroupHom, opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = input_signature(phi)?;
    if sig.genus() != 0 {
        return Err(Error::PreconditionViolation(format!("{sig} has positive genus")));
    }
    match sig.periods().len() {
        3 => embed_irreducible(phi, opts),
        4 => embed_quadrangle(phi, opts),
        _ => embed_planar(phi, opts),
    }
}

/// Extends `φ` over the orbifold group of `d` (whose boundary signature must
/// be that of `φ`) and analyzes the boundary.
pub fn embed_on_diagram(phi: &GroupHom, d: &SpatialGraphDiagram, opts: &EmbedOptions) -> Result<EmbeddingReport> {
    let sig = input_signature(phi)?;
    if sig != d.boundary {
        return Err(Error::PreconditionViolation(format!("diagram boundary {} differs from {sig}", d.boundary)));
    }
    let pres = wirtinger_presentation(d);
    let psi = extend_hom(d, &pres, phi)?;
    let kernel_smooth =
        psi.images().iter().zip(&pres.labels).all(|(g, &label)| g.order() == label as u64);
    if !kernel_smooth {
        return Err(Error::TorsionInKernel("a meridian maps to an element of smaller order".into()));
    }
    let group_order = phi.codomain().order();
    let kinds = check_labeling(d).ok().map(|r| r.kinds);
    let (families, euler) = boundary_analysis(d, &pres, psi.images(), group_order, kinds.as_deref())?;
    let geometry = match &opts.realize {
        Some(ro) => geometric_certificate(d, &pres, ro),
        None => GeometricCertificate::Skipped,
    };
    let boundary_genera = families
        .iter()
        .flat_map(|f| core::iter::repeat_n(f.surface_genus, f.component_count as usize))
        .collect();
    Ok(EmbeddingReport {
        signature: sig.clone(),
        group: phi.codomain().clone(),
        group_order,
        phi: phi.images().to_vec(),
        reordering: (0..sig.periods().len()).collect(),
        routed_signature: sig,
        polyhedron: d.kind,
        extension: pres.presentation.generators().iter().cloned().zip(psi.images().iter().cloned()).collect(),
        kernel_smooth,
        boundary_components: families,
        euler,
        geometry,
        closed_manifold: ClosedManifold { construction: "double".into(), boundary_genera, euler_characteristic: 0 },
    })
}

/// Per truncated vertex: `ψ(B_v)`, its index and the genus of the boundary
/// surfaces; plus the exact Euler characteristic cross-check.
pub fn boundary_analysis(
    d: &SpatialGraphDiagram,
    pres: &OrbifoldPresentation,
    images: &[Permutation],
    group_order: u128,
    kinds: Option<&[VertexKind]>,
) -> Result<(Vec<BoundaryFamily>, EulerCheck)> {
    let degree = images.first().map(Permutation::degree).unwrap_or(1);
    let mut families = Vec::new();
    let mut from_genera = Rational::from_integer(0);
    let mut orbifold_sum = Rational::from_integer(0);
    for b in boundary_subgroups(d, pres) {
        let meridians = b.meridians.iter().map(|m| evaluate(images, m)).collect::<Result<Vec<_>>>()?;
        let image = PermGroup::new(degree, meridians.clone())?;
        let h = image.order();
        if !group_order.is_multiple_of(h) {
            return Err(Error::CertificationFailure(format!("|ψ(B)| = {h} does not divide |G| = {group_order}")));
        }
        let genus = b.signature.quotient_genus(h)?;
        let cross_check = (h <= CROSS_CHECK_LIMIT).then(|| {
            let fp = b.signature.presentation();
            let gens = fp.images_from_vector(&meridians);
            GroupHom::on_signature(&b.signature, image.clone(), gens)
                .and_then(|hom| hom.regular_action())
                .and_then(|a| subgroup_signature(&a))
                .map(|s| s.periods().is_empty() && s.genus() as u64 == genus)
                .unwrap_or(false)
        });
        let count = group_order / h;
        from_genera += Rational::from_integer(count as i64 * (2 - 2 * genus as i64));
        orbifold_sum += b.signature.orbifold_euler_char();
        families.push(BoundaryFamily {
            vertex: b.vertex,
            kind: kinds.map(|k| k[b.vertex]),
            signature: b.signature,
            component_count: count,
            surface_genus: genus,
            image_subgroup_order: h,
            full_action: h == group_order,
            cross_check,
        });
    }
    let euler = EulerCheck::new(from_genera, orbifold_sum * Rational::from_integer(group_order as i64));
    Ok((families, euler))
}

/// Realizes the polyhedron and checks the Wirtinger relators and, when the
/// diagram carries a retraction, its relator images numerically. Failure is
/// reported, not raised: the group-theoretic certificate stands on its own.
pub fn geometric_certificate(d: &SpatialGraphDiagram, pres: &OrbifoldPresentation, opts: &RealizeOptions) -> GeometricCertificate {
    let unverified = |reason: String| GeometricCertificate::Unverified { reason };
    let real = match realize_polyhedron(&d.polyhedron(), opts) {
        Ok(r) => r,
        Err(e) => return unverified(e.to_string()),
    };
    let wres = match wirtinger_residual(d, pres, &real) {
        Ok(w) => w,
        Err(e) => return unverified(e.to_string()),
    };
    let rres = match retraction(d, pres) {
        Ok(r) => match retraction_residuals(d, pres, &r, &real) {
            Ok(v) => v.into_iter().fold(0.0, f64::max),
            Err(e) => return unverified(e.to_string()),
        },
        Err(_) => 0.0,
    };
    if !(wres < NUMERIC_TOL && rres < NUMERIC_TOL) {
        return unverified(format!("relator residuals {wres:e} and {rres:e} exceed {NUMERIC_TOL:e}"));
    }
    GeometricCertificate::Verified {
        residual: real.residual,
        signature: real.signature,
        orthogonality: real.orthogonality,
        wirtinger_residual: wres,
        retraction_residual: rres,
        restart: real.restart,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HurwitzCheck {
    Passed,
    Failed,
    NotApplicable,
}

/// `|G| = 84(g − 1)` for every boundary surface carrying the full action of
/// a `(2,3,7)` report.
pub fn hurwitz_check(report: &EmbeddingReport) -> HurwitzCheck {
    if report.signature.canonical() != FuchsianSignature::triangle(2, 3, 7).expect("valid") {
        return HurwitzCheck::NotApplicable;
    }
    let genera = report.full_action_genera();
    if !genera.is_empty() && genera.iter().all(|&g| g >= 2 && report.group_order == 84 * (g as u128 - 1)) {
        HurwitzCheck::Passed
    } else {
        HurwitzCheck::Failed
    }
}
