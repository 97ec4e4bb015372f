use geoembed_core::diagram::{tetrahedron_diagram, PolyhedronKind, VertexKind};
use geoembed_core::fuchsian::*;
use geoembed_core::homs::*;
use geoembed_core::library;
use geoembed_core::pipeline::*;
use geoembed_core::*;
use proptest::prelude::*;

fn sig(s: &str) -> FuchsianSignature {
    s.parse().unwrap()
}

fn smooth_epi(s: &str, target: &PermGroup) -> GroupHom {
    let s = sig(s);
    epi_search(&s, target).unwrap().into_iter().find(|h| h.is_smooth(&s)).expect("a smooth epimorphism")
}

fn hurwitz() -> GroupHom {
    smooth_epi("(0;2,3,7)", &library::psl2(7).unwrap())
}

/// Riemann–Hurwitz, written out independently of the library.
fn rh_genus(periods: &[u32], order: u128) -> u64 {
    // 2g − 2 = |G| (−2 + Σ (1 − 1/p)), scaled by the lcm-free product.
    let prod: u128 = periods.iter().map(|&p| p as u128).product();
    let sum: u128 = periods.iter().map(|&p| (p as u128 - 1) * (prod / p as u128)).sum();
    let num = order * sum - 2 * order * prod;
    assert_eq!(num % prod, 0);
    (num / prod / 2 + 1) as u64
}

fn euler_by_hand(r: &EmbeddingReport) -> (i128, i128, i128) {
    let left: i128 = r.boundary_components.iter().map(|b| b.component_count as i128 * (2 - 2 * b.surface_genus as i128)).sum();
    // |G| · Σ χ, with χ = 2 − Σ (1 − 1/p), over a common denominator.
    let mut num = 0i128;
    let mut den = 1i128;
    for b in &r.boundary_components {
        let prod: i128 = b.signature.periods().iter().map(|&p| p as i128).product();
        let sum: i128 = b.signature.periods().iter().map(|&p| (p as i128 - 1) * (prod / p as i128)).sum();
        let (n, d) = (2 * prod - sum, prod);
        num = num * d + n * den;
        den *= d;
    }
    (left, num * r.group_order as i128, den)
}

#[test]
fn klein_quartic() {
    let phi = hurwitz();
    assert_eq!(phi.codomain().order(), 168);
    let r = embed_irreducible(&phi, &EmbedOptions::default()).unwrap();
    assert_eq!(r.polyhedron, PolyhedronKind::Tetrahedron);
    assert!(r.kernel_smooth);
    assert_eq!(r.boundary_components.len(), 4);
    for b in &r.boundary_components {
        assert_eq!((b.component_count, b.surface_genus, b.image_subgroup_order), (1, 3, 168));
        assert_eq!(b.cross_check, Some(true));
        assert_eq!(rh_genus(b.signature.periods(), 168), 3);
    }
    assert!(r.euler.consistent);
    let (left, num, den) = euler_by_hand(&r);
    assert_eq!(left * den, num);
    assert_eq!(left, -16);
    assert_eq!(hurwitz_check(&r), HurwitzCheck::Passed);
    assert_eq!(r.closed_manifold.boundary_genera, vec![3; 4]);
    match r.geometry {
        GeometricCertificate::Verified { residual, signature, .. } => {
            assert!(residual < 1e-8);
            assert_eq!(signature, (3, 1, 0));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn period_two_is_moved_to_the_diagonal() {
    let target = library::psl2(7).unwrap();
    for s in ["(0;3,2,7)", "(0;7,3,2)"] {
        let phi = smooth_epi(s, &target);
        let r = embed_irreducible(&phi, &EmbedOptions::without_geometry()).unwrap();
        assert_eq!(r.polyhedron, PolyhedronKind::Tetrahedron);
        assert_eq!(r.routed_signature.periods()[0], 2);
        assert_eq!(r.signature, sig(s));
        assert!(r.boundary_components.iter().all(|b| b.surface_genus == 3));
        assert_eq!(hurwitz_check(&r), HurwitzCheck::Passed);
    }
}

#[test]
fn odd_triangle_goes_through_the_cube() {
    let phi = smooth_epi("(0;3,3,4)", &library::psl2(7).unwrap());
    // The tetrahedron fails exactly where x has order 2 would be needed.
    let forced = embed_on_diagram(&phi, &tetrahedron_diagram(3, 3, 4).unwrap(), &EmbedOptions::without_geometry());
    assert!(matches!(forced, Err(Error::RelatorViolation { ref relator, .. }) if relator == "u^4"));
    let r = embed_irreducible(&phi, &EmbedOptions::default()).unwrap();
    assert_eq!(r.polyhedron, PolyhedronKind::Cube);
    assert_eq!(r.boundary_components.len(), 8);
    assert!(r.boundary_components.iter().all(|b| b.kind == Some(VertexKind::Full) && b.full_action));
    assert!(r.euler.consistent);
    assert!(r.geometry.is_verified());
    assert_eq!(hurwitz_check(&r), HurwitzCheck::NotApplicable);
}

#[test]
fn preconditions() {
    let phi = hurwitz();
    let bigger = GroupHom::on_signature(&sig("(0;2,3,7)"), library::symmetric(8), phi.images().to_vec()).unwrap();
    assert!(matches!(embed_irreducible(&bigger, &EmbedOptions::without_geometry()), Err(Error::NotSurjective)));
    let s = sig("(0;2,3,7)");
    let g = library::cyclic(7);
    let id = g.identity();
    let trivial = GroupHom::on_signature(&s, g.clone(), vec![id.clone(), id]).unwrap();
    assert!(matches!(embed_irreducible(&trivial, &EmbedOptions::without_geometry()), Err(Error::NonSmoothInput(_))));
    let s = sig("(0;2,2,2,2)");
    let g = library::dihedral(2);
    let hom = GroupHom::on_signature(&s, g.clone(), g.generators().iter().cloned().chain(g.generators().iter().cloned()).collect()).unwrap();
    assert!(matches!(embed(&hom, &EmbedOptions::without_geometry()), Err(Error::NotHyperbolic(_))));
    assert!(matches!(route_planar(&sig("(0;2,2,2,2,2,2)")), Err(Error::Excluded(_))));
}

#[test]
fn quadrangle_with_two_pairs_of_involutions() {
    let phi = smooth_epi("(0;2,2,3,3)", &library::symmetric(4));
    let r = embed_quadrangle(&phi, &EmbedOptions::default()).unwrap();
    assert_eq!(r.polyhedron, PolyhedronKind::Octahedron);
    assert_eq!(r.routed_signature, sig("(0;3,2,3,2)"));
    let full: Vec<_> = r.boundary_components.iter().filter(|b| b.kind == Some(VertexKind::Full)).collect();
    let same: Vec<_> = r.boundary_components.iter().filter(|b| b.kind == Some(VertexKind::Same)).collect();
    assert_eq!((full.len(), same.len()), (4, 2));
    assert!(full.iter().all(|b| b.component_count == 1 && b.full_action));
    assert!(same.iter().all(|b| b.image_subgroup_order == 3 && b.signature == sig("(0;3,3,3,3)")));
    assert!(r.euler.consistent);
    assert!(r.geometry.is_verified());
}

#[test]
fn quadrangle_with_three_involutions_uses_the_bipyramid() {
    let phi = smooth_epi("(0;2,2,2,3)", &library::symmetric(4));
    let r = embed_quadrangle(&phi, &EmbedOptions::default()).unwrap();
    assert_eq!(r.polyhedron, PolyhedronKind::Bipyramid);
    assert_eq!(r.routed_signature.periods()[0], 3);
    assert!(r.euler.consistent);
    assert!(r.geometry.is_verified());
}

#[test]
fn planar_five_periods() {
    let phi = smooth_epi("(0;3,3,3,3,3)", &library::alternating(5));
    let r = embed_planar(&phi, &EmbedOptions::default()).unwrap();
    assert_eq!(r.polyhedron, PolyhedronKind::Bipyramid);
    assert_eq!(r.boundary_components.len(), 7);
    let apex: Vec<_> = r.boundary_components.iter().filter(|b| b.kind == Some(VertexKind::Full)).collect();
    assert_eq!(apex.len(), 2);
    assert!(apex.iter().all(|b| b.full_action && b.component_count == 1));
    assert!(r
        .boundary_components
        .iter()
        .filter(|b| b.kind == Some(VertexKind::Equatorial))
        .all(|b| b.signature.periods().len() == 4 && b.signature.periods().contains(&3)));
    assert!(r.euler.consistent);
    let (left, num, den) = euler_by_hand(&r);
    assert_eq!(left * den, num);
    assert!(r.geometry.is_verified());
}

#[test]
fn planar_and_quadrangle_routes_agree_on_four_periods() {
    let phi = smooth_epi("(0;3,3,3,3)", &library::alternating(4));
    let oct = embed_quadrangle(&phi, &EmbedOptions::without_geometry()).unwrap();
    let bip = embed_planar(&phi, &EmbedOptions::without_geometry()).unwrap();
    assert_eq!(oct.polyhedron, PolyhedronKind::Octahedron);
    assert_eq!(bip.polyhedron, PolyhedronKind::Bipyramid);
    // Both are octahedra; the full-action families have the same genus.
    let g = oct.full_action_genera()[0];
    assert!(oct.full_action_genera().iter().chain(&bip.full_action_genera()).all(|&x| x == g));
    assert_eq!(oct.boundary_components.len(), bip.boundary_components.len());
    assert!(oct.euler.consistent && bip.euler.consistent);
}

#[test]
fn corollary2_regular_hurwitz_action() {
    let phi = hurwitz();
    let c = corollary2_pipeline(&phi.regular_action().unwrap(), &EmbedOptions::default()).unwrap();
    assert_eq!(c.stabilizer_image_order, 1);
    assert_eq!((c.quasiplatonic_genus, c.base_genus, c.group_order), (3, 3, 168));
    assert!(c.euler_consistent);
    assert_eq!(c.embedding.boundary_components.len(), 4);
    assert!(c.embedding.boundary_components.iter().all(|b| b.surface_genus == 3 && b.component_count == 1));
    assert_eq!(hurwitz_check(&c.embedding), HurwitzCheck::Passed);
}

/// `PGL(2,7)` on the projective line, generated by `z ↦ z + 1`, `z ↦ −1/z`
/// and `z ↦ 3z`.
fn pgl27() -> PermGroup {
    let p = 7u32;
    let inf = p;
    let f = |g: &dyn Fn(u32) -> u32| Permutation::from_images((0..=p).map(g).collect()).unwrap();
    let inv = |z: u32| (1..p).find(|w| z * w % p == 1).unwrap();
    let t = f(&|z| if z == inf { inf } else { (z + 1) % p });
    let s = f(&|z| if z == inf { 0 } else if z == 0 { inf } else { (p - inv(z)) % p });
    let d = f(&|z| if z == inf { inf } else { 3 * z % p });
    PermGroup::new(8, vec![t, s, d]).unwrap()
}

/// The action on right cosets `Hg` of the subgroup generated by `h`.
fn coset_action(s: &FuchsianSignature, phi: &GroupHom, group: &PermGroup, h: &[Permutation]) -> CosetAction {
    let elems = group.elements(10_000).unwrap();
    let sub = group.subgroup_generated(h).unwrap().elements(10_000).unwrap();
    let mut cosets: Vec<Vec<Permutation>> = Vec::new();
    for g in &elems {
        if cosets.iter().any(|c| c.contains(g)) {
            continue;
        }
        let mut c: Vec<Permutation> = sub.iter().map(|x| x.compose(g)).collect();
        c.sort();
        cosets.push(c);
    }
    let find = |x: &Permutation| cosets.iter().position(|c| c.binary_search(x).is_ok()).unwrap() as u32;
    let images = phi
        .images()
        .iter()
        .map(|gen| Permutation::from_images(cosets.iter().map(|c| find(&c[0].compose(gen))).collect()).unwrap())
        .collect();
    CosetAction::new(s.clone(), images).unwrap()
}

#[test]
fn corollary2_semiplatonic_cover() {
    let s = sig("(0;2,3,8)");
    let g = pgl27();
    assert_eq!(g.order(), 336);
    let phi = smooth_epi("(0;2,3,8)", &g);
    // A Sylow 7-subgroup contains no elliptic image, so its preimage is a
    // surface group of index 48 and genus 2 that is not normal.
    let t = g.generators()[0].clone();
    let action = coset_action(&s, &phi, &g, &[t]);
    assert_eq!(action.degree(), 48);
    assert!(action.has_torsion_free_stabilizer());
    let c = corollary2_pipeline(&action, &EmbedOptions::without_geometry()).unwrap();
    assert_eq!(c.subgroup_signature, sig("(2;)"));
    assert_eq!(c.group_order, 336);
    assert_eq!(c.stabilizer_image_order, 7);
    assert_eq!(c.quasiplatonic_genus, rh_genus(&[2, 3, 8], 336));
    assert_eq!(c.quasiplatonic_genus, 8);
    assert_eq!(2 - 2 * c.quasiplatonic_genus as i64, 7 * (2 - 2 * c.base_genus as i64));
    assert!(c.euler_consistent);
    assert!(c.embedding.euler.consistent);
}

#[test]
fn corollary2_rejects_torsion() {
    let a = low_index_actions(&sig("(0;2,3,8)"), 2).into_iter().find(|a| a.degree() == 2).unwrap();
    assert!(matches!(corollary2_pipeline(&a, &EmbedOptions::without_geometry()), Err(Error::TorsionInSubgroup(_))));
}

/// Applies a word to a point letter by letter.
fn trace(images: &[Permutation], w: &Word, mut point: u32) -> u32 {
    for &l in w.letters() {
        let p = &images[l.unsigned_abs() as usize - 1];
        point = if l > 0 { p.apply(point) } else { p.images().iter().position(|&x| x == point).unwrap() as u32 };
    }
    point
}

#[test]
fn theorem3_free_action_of_order_two() {
    let phi = smooth_epi("(0;2,3,8)", &library::gl2(3).unwrap());
    let base = phi.regular_action().unwrap();
    assert_eq!(base.degree(), 48);
    assert_eq!(subgroup_signature(&base).unwrap(), sig("(2;)"));
    let basis = stabilizer_homs_mod2(&base);
    assert!(!basis.is_empty());
    let swap = Permutation::from_images(vec![1, 0]).unwrap();
    let stab: Vec<Permutation> =
        basis[0].iter().map(|&b| if b == 1 { swap.clone() } else { Permutation::identity(2) }).collect();
    let r = theorem3_pipeline(&base, &stab).unwrap();
    assert_eq!(r.induced_degree, 96);
    assert_eq!(r.group_order, 2);
    assert_eq!(r.surface_signature, sig("(3;)"));
    // Brute force: every relator fixes every one of the 96 points.
    let d = tetrahedron_diagram(2, 3, 8).unwrap();
    let pres = geoembed_core::diagram::wirtinger_presentation(&d);
    for rel in pres.relators() {
        assert!((0..96).all(|pt| trace(&r.pulled_back, rel, pt) == pt));
    }
    for (g, &label) in r.pulled_back.iter().zip(&pres.labels) {
        assert!((0..96).all(|pt| {
            let mut x = pt;
            let mut k = 0;
            loop {
                x = g.apply(x);
                k += 1;
                if x == pt {
                    break k == label;
                }
            }
        }));
    }
    assert!(r.euler.consistent);
    assert!(r.boundary.iter().all(|b| b.cross_check));
    // The base vertex carries S itself.
    assert_eq!(r.boundary[0].genera, vec![3]);
    let total: i64 = r.boundary.iter().flat_map(|b| &b.genera).map(|&g| 2 - 2 * g as i64).sum();
    assert_eq!(total, -16);
}

#[test]
fn theorem3_trivial_stabilizer_hom_recovers_the_base() {
    let phi = hurwitz();
    let base = phi.regular_action().unwrap();
    let count = schreier_generators(&base).generators.len();
    let r = theorem3_pipeline(&base, &vec![Permutation::identity(1); count]).unwrap();
    assert_eq!(r.induced_degree, 168);
    assert_eq!(r.surface_signature, sig("(3;)"));
    let c = corollary2_pipeline(&base, &EmbedOptions::without_geometry()).unwrap();
    let genera: Vec<u64> = r.boundary.iter().flat_map(|b| b.genera.clone()).collect();
    assert_eq!(genera, c.embedding.closed_manifold.boundary_genera);
}

#[test]
fn theorem3_rejects_inconsistent_and_torsion() {
    let phi = hurwitz();
    let base = phi.regular_action().unwrap();
    let count = schreier_generators(&base).generators.len();
    let swap = Permutation::from_images(vec![1, 0]).unwrap();
    let mut stab = vec![Permutation::identity(2); count];
    stab[0] = swap;
    assert!(matches!(theorem3_pipeline(&base, &stab), Err(Error::InconsistentStabilizerHom { .. })));
    // A degree-2 action of (2,3,8) has stabilizer (3,3,4); the trivial hom
    // keeps its torsion.
    let s = sig("(0;2,3,8)");
    let a = low_index_actions(&s, 2).into_iter().find(|a| a.degree() == 2).unwrap();
    let count = schreier_generators(&a).generators.len();
    assert!(matches!(theorem3_pipeline(&a, &vec![Permutation::identity(1); count]), Err(Error::TorsionInKernel(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hurwitz_identity_for_every_smooth_237_quotient(i in 0usize..8) {
        let targets = [library::psl2(7).unwrap(), library::psl2(13).unwrap(), library::psl2(29).unwrap(), library::psl2(43).unwrap()];
        let target = &targets[i % targets.len()];
        let s = sig("(0;2,3,7)");
        let homs: Vec<_> = epi_search(&s, target).unwrap().into_iter().filter(|h| h.is_smooth(&s)).collect();
        prop_assume!(!homs.is_empty());
        let h = &homs[i % homs.len()];
        let r = embed_irreducible(h, &EmbedOptions::without_geometry()).unwrap();
        prop_assert_eq!(hurwitz_check(&r), HurwitzCheck::Passed);
        prop_assert!(r.euler.consistent);
        prop_assert!(r.boundary_components.iter().all(|b| b.full_action && b.component_count == 1));
    }
}
