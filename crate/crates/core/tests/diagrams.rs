use geoembed_core::abelian::abelian_invariants;
use geoembed_core::diagram::*;
use geoembed_core::fuchsian::FuchsianSignature;
use geoembed_core::homs::{epi_search, GroupHom};
use geoembed_core::library;
use geoembed_core::{evaluate, Error, Permutation, Word};

fn sig(s: &str) -> FuchsianSignature {
    s.parse().unwrap()
}

fn hurwitz() -> GroupHom {
    epi_search(&sig("(0;2,3,7)"), &library::psl2(7).unwrap()).unwrap().remove(0)
}

fn gen(pres: &OrbifoldPresentation, name: &str) -> usize {
    pres.presentation.generator_index(name).unwrap()
}

#[test]
fn relator_count_is_edges_vertices_crossings() {
    for d in [
        tetrahedron_diagram(2, 3, 7).unwrap(),
        tetrahedron_planar_diagram(2, 3, 7).unwrap(),
        octahedron_diagram(2, 3, 4, 5).unwrap(),
        cube_diagram(3, 3, 4).unwrap(),
        bipyramid_diagram(&[3, 3, 3, 3, 3]).unwrap(),
    ] {
        let pres = wirtinger_presentation(&d);
        assert_eq!(pres.relators().len(), d.edges.len() + d.vertices.len() + d.crossings.len());
        assert_eq!(pres.labels.len(), pres.generator_count());
        assert_eq!(pres.generator_count(), d.edges.len() + d.crossings.len());
    }
}

#[test]
fn two_projections_of_the_tetrahedron_have_equal_abelianizations() {
    for (p, q, r) in [(2, 3, 7), (2, 4, 5), (3, 3, 4), (2, 5, 5)] {
        let a = abelian_invariants(&wirtinger_presentation(&tetrahedron_diagram(p, q, r).unwrap()).presentation);
        let b = abelian_invariants(&wirtinger_presentation(&tetrahedron_planar_diagram(p, q, r).unwrap()).presentation);
        assert_eq!(a, b, "({p},{q},{r})");
    }
}

#[test]
fn tetrahedron_extension_satisfies_the_classical_relators() {
    let d = tetrahedron_diagram(2, 3, 7).unwrap();
    let pres = wirtinger_presentation(&d);
    let phi = hurwitz();
    let psi = extend_hom(&d, &pres, &phi).unwrap();
    let img = |n: &str| psi.images()[gen(&pres, n)].clone();
    assert_eq!(img("a"), phi.images()[0]);
    assert_eq!(img("b"), phi.images()[1]);
    assert_eq!(img("x"), phi.images()[0]);
    assert_eq!(img("y"), phi.images()[1]);
    // The relators b^q, a^2, x^2, y^q, ab = xy, (ab)^r, (xy)^r, (x⁻¹b)^r hold
    // in the Wirtinger group itself, hence in every quotient.
    let names = pres.presentation.generators().to_vec();
    let w = |s: &str| geoembed_core::word::parse_word(s, &names).unwrap();
    for rel in ["b^3", "a^2", "x^2", "y^3", "a*b*(x*y)^-1", "(a*b)^7", "(x*y)^7", "(x^-1*b)^7"] {
        assert!(evaluate(psi.images(), &w(rel)).unwrap().is_identity(), "{rel}");
    }
    for q in screening_quotients(&sig("(0;2,3,7)"), 6, 2) {
        let psi = extend_hom(&d, &pres, &q).unwrap();
        for rel in ["a*b*(x*y)^-1", "(x^-1*b)^7"] {
            assert!(evaluate(psi.images(), &w(rel)).unwrap().is_identity());
        }
    }
}

#[test]
fn tetrahedron_with_odd_diagonal_label_violates_the_bottom_relator() {
    let d = tetrahedron_diagram(3, 3, 4).unwrap();
    let pres = wirtinger_presentation(&d);
    let homs = screening_quotients(&sig("(0;3,3,4)"), 4, 2);
    assert!(!homs.is_empty());
    for phi in &homs {
        match extend_hom(&d, &pres, phi) {
            Err(Error::RelatorViolation { relator, image }) => {
                assert_eq!(relator, "u^4");
                assert_eq!(image, "x^-1*y*x^-1*y*x^-1*y*x^-1*y");
            }
            other => panic!("expected a relator violation, got {other:?}"),
        }
    }
}

#[test]
fn bottom_relator_reduces_to_triangle_relator_when_x_is_an_involution() {
    for r in [7, 8, 9] {
        let d = tetrahedron_diagram(2, 3, r).unwrap();
        let pres = wirtinger_presentation(&d);
        let ret = retraction(&d, &pres).unwrap();
        let u = Word::generator_pow(gen(&pres, "u"), r as i64);
        let image = ret.apply(&u);
        assert_eq!(image, Word::from_letters(vec![-1, 2]).pow(r as i64));
        let xy = Word::from_letters(vec![1, 2]).pow(r as i64);
        assert_eq!(involution_reduce(&image, 0), xy);
        // Every other relator maps to the empty word without using x² = 1.
        for rel in pres.relators() {
            if *rel != u {
                let w = ret.apply(rel);
                assert!(w.is_empty() || w.cyclic_reduce() == Word::generator_pow(0, 2).cyclic_reduce() || is_boundary_relator(&w, r), "{}", ret.display(&w));
            }
        }
    }
}

fn is_boundary_relator(w: &Word, r: u32) -> bool {
    let x2 = Word::generator_pow(0, 2);
    let y3 = Word::generator_pow(1, 3);
    let xyr = Word::from_letters(vec![1, 2]).pow(r as i64);
    let c = w.cyclic_reduce();
    [x2, y3, xyr.clone(), xyr.inverse()].iter().any(|b| {
        let b = b.cyclic_reduce();
        let n = b.len();
        n == c.len() && (0..n).any(|s| (0..n).all(|i| c.letters()[i] == b.letters()[(i + s) % n]))
    })
}

#[test]
fn boundary_orbifolds_have_the_expected_signatures() {
    let d = tetrahedron_diagram(2, 3, 7).unwrap();
    let pres = wirtinger_presentation(&d);
    let bs = boundary_subgroups(&d, &pres);
    assert_eq!(bs.len(), 4);
    for b in &bs {
        let mut p = b.signature.periods().to_vec();
        p.sort_unstable();
        assert_eq!(p, [2, 3, 7]);
    }
    assert_eq!(bs[d.base_vertex].signature, sig("(0;2,3,7)"));

    let d = octahedron_diagram(2, 3, 4, 5).unwrap();
    let pres = wirtinger_presentation(&d);
    let bs = boundary_subgroups(&d, &pres);
    let full = bs.iter().filter(|b| is_cyclic_rotation(b.signature.periods(), &[2, 3, 4, 5])).count();
    let same = bs.iter().filter(|b| b.signature.periods().iter().all(|&p| p == b.signature.periods()[0])).count();
    assert_eq!((full, same), (4, 2));
}

fn is_cyclic_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(i + s) % b.len()]))
}

fn check_extension(d: &SpatialGraphDiagram, quotients: usize) {
    let pres = wirtinger_presentation(d);
    let bs = boundary_subgroups(d, &pres);
    let qs = screening_quotients(&d.boundary, quotients, 2);
    assert!(!qs.is_empty());
    for phi in qs.iter().filter(|h| h.is_surjective()) {
        let psi = extend_hom(d, &pres, phi).unwrap();
        assert!(psi.verify());
        // Smoothness transfer: meridian orders equal labels.
        for (g, &label) in pres.labels.iter().enumerate() {
            assert_eq!(psi.images()[g].order(), label as u64);
        }
        // Identity on the distinguished boundary subgroup.
        let base = &bs[d.base_vertex];
        let vector = d.boundary.presentation().vector;
        for (m, v) in base.meridians.iter().zip(&vector) {
            assert_eq!(evaluate(psi.images(), m).unwrap(), evaluate(phi.images(), v).unwrap());
        }
        // Meridian products of every vertex vanish.
        for b in &bs {
            let prod = b.meridians.iter().fold(Permutation::identity(phi.codomain().degree()), |acc, m| {
                acc.compose(&evaluate(psi.images(), m).unwrap())
            });
            assert!(prod.is_identity());
        }
    }
}

#[test]
fn extensions_over_every_builder() {
    check_extension(&tetrahedron_diagram(2, 3, 7).unwrap(), 4);
    check_extension(&cube_diagram(3, 3, 4).unwrap(), 4);
    check_extension(&octahedron_diagram(2, 3, 4, 5).unwrap(), 2);
    check_extension(&octahedron_diagram(3, 3, 3, 3).unwrap(), 2);
    check_extension(&bipyramid_diagram(&[3, 3, 3, 3]).unwrap(), 2);
}

#[test]
fn octahedron_vertex_relators_follow_from_the_quadrangle_relation() {
    let d = octahedron_diagram(2, 3, 4, 5).unwrap();
    let pres = wirtinger_presentation(&d);
    let r = retraction(&d, &pres).unwrap();
    for v in 0..d.vertices.len() {
        let w = r.apply(pres.vertex_relator(v)).cyclic_reduce();
        let xyzw = Word::from_letters(vec![1, 2, 3, 4]);
        assert!(w.is_empty() || is_cyclic_rotation(w.letters(), xyzw.letters()) || is_cyclic_rotation(w.letters(), xyzw.inverse().letters()), "{}", r.display(&w));
    }
}

#[test]
fn diagrams_without_images_have_no_retraction() {
    let d = tetrahedron_planar_diagram(2, 3, 7).unwrap();
    let pres = wirtinger_presentation(&d);
    assert!(matches!(retraction(&d, &pres), Err(Error::PreconditionViolation(_))));
}

#[test]
fn validation_rejects_broken_diagrams() {
    let good = cube_diagram(3, 3, 4).unwrap();
    let mut d = good.clone();
    d.edges[0].label = 1;
    assert!(matches!(d.validate(), Err(Error::InvalidDiagram(_))));
    let mut d = good.clone();
    d.vertices[0].rotation.swap(0, 1);
    assert!(d.validate().is_err());
    let mut d = tetrahedron_diagram(2, 3, 7).unwrap();
    d.crossings[0].under = d.crossings[0].over;
    assert!(d.validate().is_err());
}
