//! Labeled diagrams of the truncated polyhedra.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::labeling::{Constraint, SlotProblem};
use super::{trace_planar_faces, Crossing, DiagramEdge, DiagramVertex, PolyhedronKind, SpatialGraphDiagram};
use crate::error::{Error, Result};
use crate::fuchsian::FuchsianSignature;
use crate::word::Word;

struct EdgeSpec {
    name: String,
    tail: usize,
    head: usize,
    label: u32,
    image: Option<Word>,
}

fn edge(name: impl Into<String>, tail: usize, head: usize, label: u32, image: Option<Word>) -> EdgeSpec {
    EdgeSpec { name: name.into(), tail, head, label, image }
}

fn angle(from: [f64; 2], to: [f64; 2]) -> f64 {
    libm::atan2(to[1] - from[1], to[0] - from[0])
}

/// Counterclockwise rotations from plane positions; `None` is the point at
/// infinity, whose neighbours are seen in clockwise order from the origin.
fn plane_rotations(plane: &[Option<[f64; 2]>], ends: &[(usize, usize)]) -> Vec<Vec<usize>> {
    (0..plane.len())
        .map(|v| {
            let mut inc: Vec<(f64, usize)> = ends
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(e, &(a, b))| {
                    let w = if a == v { b } else { a };
                    let ang = match (plane[v], plane[w]) {
                        (Some(p), Some(q)) => angle(p, q),
                        (Some(p), None) => angle([0.0, 0.0], p),
                        (None, Some(q)) => -angle([0.0, 0.0], q),
                        (None, None) => unreachable!("one point at infinity"),
                    };
                    (ang, e)
                })
                .collect();
            inc.sort_by(|a, b| a.0.total_cmp(&b.0));
            inc.into_iter().map(|(_, e)| e).collect()
        })
        .collect()
}

fn inverse_stereographic(p: Option<[f64; 2]>) -> [f64; 3] {
    match p {
        None => [0.0, 0.0, -1.0],
        Some([x, y]) => {
            let r2 = x * x + y * y;
            [2.0 * x / (1.0 + r2), 2.0 * y / (1.0 + r2), (1.0 - r2) / (1.0 + r2)]
        }
    }
}

fn polar(r: f64, theta: f64) -> Option<[f64; 2]> {
    Some([r * libm::cos(theta), r * libm::sin(theta)])
}

/// Rotates the rotation at `v` so that `first` comes first.
fn start_at(rotation: &mut [usize], first: usize) {
    let k = rotation.iter().position(|&e| e == first).expect("edge at vertex");
    rotation.rotate_left(k);
}

fn assemble_planar(
    kind: PolyhedronKind,
    boundary: FuchsianSignature,
    plane: &[Option<[f64; 2]>],
    edges: Vec<EdgeSpec>,
    base_vertex: usize,
    first_edge: usize,
) -> Result<SpatialGraphDiagram> {
    let ends: Vec<(usize, usize)> = edges.iter().map(|e| (e.tail, e.head)).collect();
    let mut rotations = plane_rotations(plane, &ends);
    start_at(&mut rotations[base_vertex], first_edge);
    let vertices: Vec<DiagramVertex> = rotations
        .into_iter()
        .enumerate()
        .map(|(v, rotation)| DiagramVertex { position: inverse_stereographic(plane[v]), rotation })
        .collect();
    let (sides, face_count) = trace_planar_faces(&vertices, &ends);
    let d = SpatialGraphDiagram {
        kind,
        boundary,
        base_vertex,
        face_count,
        vertices,
        edges: edges
            .into_iter()
            .zip(sides)
            .map(|(e, faces)| DiagramEdge { name: e.name, label: e.label, tail: e.tail, head: e.head, faces, image: e.image })
            .collect(),
        crossings: Vec::new(),
    };
    d.validate()?;
    Ok(d)
}

fn hyperbolic(sig: &FuchsianSignature) -> Result<()> {
    sig.ensure_hyperbolic()
}

/// The tetrahedron drawn as a square with both diagonals: the diagonal `x`
/// passes over the diagonal `a`. Diagonals carry `p`, the left and right
/// sides `q`, the top and bottom sides `r`. Each edge records the
/// retraction image of its first arc; the bottom edge maps to `x⁻¹y`, which
/// has order `r` only when `x` is an involution.
pub fn tetrahedron_diagram(p: u32, q: u32, r: u32) -> Result<SpatialGraphDiagram> {
    let boundary = FuchsianSignature::triangle(p, q, r)?;
    hyperbolic(&boundary)?;
    const TL: usize = 0;
    const TR: usize = 1;
    const BR: usize = 2;
    const BL: usize = 3;
    let positions = [[-1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [-1.0, -1.0, -1.0]];
    let x = Word::generator(0);
    let y = Word::generator(1);
    let specs = alloc::vec![
        edge("x", BR, TL, p, Some(x.clone())),
        edge("y", BL, TL, q, Some(y.clone())),
        edge("t", TR, TL, r, Some(x.concat(&y).inverse())),
        edge("b", TR, BR, q, Some(y.clone())),
        edge("u", BR, BL, r, Some(x.inverse().concat(&y))),
        edge("a", TR, BL, p, Some(x)),
    ];
    // Faces as vertex triples: the two upper faces contain `x`, the two
    // lower faces contain `a`.
    let faces = [[TL, BR, TR], [TL, BL, BR], [TR, BR, BL], [BL, TL, TR]];
    let ends: Vec<(usize, usize)> = specs.iter().map(|e| (e.tail, e.head)).collect();
    let plane: Vec<Option<[f64; 2]>> = positions.iter().map(|p| Some([p[0], p[1]])).collect();
    let mut rotations = plane_rotations(&plane, &ends);
    start_at(&mut rotations[TL], 0);
    let face_pair = |e: usize| -> Vec<usize> {
        let (a, b) = ends[e];
        (0..4).filter(|&f| faces[f].contains(&a) && faces[f].contains(&b)).collect()
    };
    // Face sides are read at an upper vertex (TL or BR), where the
    // projection shows the surface from outside; the sides of the lower
    // diagonal are only used through its solved arcs.
    let read_at = [TL, TL, TL, BR, BR, TR];
    let sides: Vec<[usize; 2]> = (0..ends.len())
        .map(|e| {
            let v = read_at[e];
            let rot = &rotations[v];
            let i = rot.iter().position(|&t| t == e).unwrap();
            let k = rot.len();
            let shared = |a: usize, b: usize| {
                let (fa, fb) = (face_pair(a), face_pair(b));
                *fa.iter().find(|f| fb.contains(f)).unwrap()
            };
            let before = shared(rot[(i + k - 1) % k], e);
            let after = shared(e, rot[(i + 1) % k]);
            if ends[e].0 == v {
                [before, after]
            } else {
                [after, before]
            }
        })
        .collect();
    let d = SpatialGraphDiagram {
        kind: PolyhedronKind::Tetrahedron,
        boundary,
        base_vertex: TL,
        face_count: 4,
        vertices: positions
            .iter()
            .zip(rotations)
            .map(|(&position, rotation)| DiagramVertex { position, rotation })
            .collect(),
        edges: specs
            .into_iter()
            .zip(sides)
            .map(|(e, faces)| DiagramEdge { name: e.name, label: e.label, tail: e.tail, head: e.head, faces, image: e.image })
            .collect(),
        crossings: alloc::vec![Crossing { over: 0, under: 5, over_t: 0.5, under_t: 0.5, sign: 1 }],
    };
    d.validate()?;
    Ok(d)
}

/// The same labeled tetrahedron drawn without crossings: the vertex `BL` sits
/// inside the triangle of the other three. Carries no retraction images.
pub fn tetrahedron_planar_diagram(p: u32, q: u32, r: u32) -> Result<SpatialGraphDiagram> {
    let boundary = FuchsianSignature::triangle(p, q, r)?;
    hyperbolic(&boundary)?;
    let (tl, tr, br, bl) = (0, 1, 2, 3);
    let s = libm::sqrt(2.0);
    let plane = [polar(s, PI / 2.0), polar(s, -PI / 6.0), polar(s, 7.0 * PI / 6.0), Some([0.0, 0.0])];
    let specs = alloc::vec![
        edge("x", br, tl, p, None),
        edge("y", bl, tl, q, None),
        edge("t", tr, tl, r, None),
        edge("b", tr, br, q, None),
        edge("u", br, bl, r, None),
        edge("a", tr, bl, p, None),
    ];
    assemble_planar(PolyhedronKind::Tetrahedron, boundary, &plane, specs, tl, 0)
}

/// The octahedron as a square with its diagonals meeting at a centre vertex
/// `N`, plus a vertex `S` outside joined to the four corners. The corners see
/// the four periods in cyclic order; the edges at `N` share one label, as do
/// the edges at `S`, and these two labels are periods in opposite positions.
/// The opposite pair with the larger minimum is used. If that minimum is 2,
/// one pole is a Euclidean `(2,2,2,2)` vertex: the diagram is valid, but the
/// truncated polyhedron is not realizable.
pub fn octahedron_diagram(p: u32, q: u32, r: u32, s: u32) -> Result<SpatialGraphDiagram> {
    let periods = [p, q, r, s];
    let boundary = FuchsianSignature::new(0, periods.to_vec())?;
    hyperbolic(&boundary)?;
    let pair = |i: usize| (periods[i].min(periods[i + 2]), periods[i].max(periods[i + 2]));
    let pole_slot = if pair(1) > pair(0) { 1 } else { 0 };
    let (n, sv) = (0, 5);
    let e = |i: usize| 1 + i % 4;
    let mut ends = Vec::new();
    let mut names = Vec::new();
    for i in 0..4 {
        // Corners alternate between all-out (even) and all-in (odd).
        let (a, b) = if i % 2 == 0 { (e(i), e(i + 1)) } else { (e(i + 1), e(i)) };
        ends.push((a, b));
        names.push(format!("e{i}"));
    }
    for i in 0..4 {
        ends.push(if i % 2 == 0 { (e(i), n) } else { (n, e(i)) });
        names.push(format!("n{i}"));
    }
    for i in 0..4 {
        ends.push(if i % 2 == 0 { (e(i), sv) } else { (sv, e(i)) });
        names.push(format!("s{i}"));
    }
    let mut plane = alloc::vec![Some([0.0, 0.0])];
    plane.extend((0..4).map(|i| polar(1.0, i as f64 * PI / 2.0)));
    plane.push(None);
    let rotations = plane_rotations(&plane, &ends);
    let mut constraints = alloc::vec![Constraint::Full; 6];
    constraints[n] = Constraint::Same;
    constraints[sv] = Constraint::Same;
    let mut fixed = alloc::vec![None; ends.len()];
    fixed[8] = Some(pole_slot);
    let slots = SlotProblem { rotations: &rotations, ends: &ends, constraints: &constraints, slots: 4 }
        .solve(&fixed)
        .ok_or(Error::LabelingFailure)?;
    let vector = boundary.presentation().vector;
    let base = e(0);
    let first = (0..ends.len()).find(|&k| slots[k] == 0 && (ends[k].0 == base || ends[k].1 == base)).unwrap();
    let specs = (0..ends.len())
        .map(|k| edge(names[k].clone(), ends[k].0, ends[k].1, periods[slots[k]], Some(vector[slots[k]].clone())))
        .collect();
    assemble_planar(PolyhedronKind::Octahedron, boundary, &plane, specs, base, first)
}

/// The cube as two concentric squares joined by four spokes. Edges are
/// oriented from one colour class of the bipartite vertex set to the other,
/// and every vertex sees `p, q, r` in cyclic order.
pub fn cube_diagram(p: u32, q: u32, r: u32) -> Result<SpatialGraphDiagram> {
    if p == 2 || q == 2 || r == 2 {
        return Err(Error::WrongConstructionUseTetrahedron);
    }
    let boundary = FuchsianSignature::triangle(p, q, r)?;
    hyperbolic(&boundary)?;
    let periods = [p, q, r];
    // Inner square 0..4, outer square 4..8; colour of inner i is i mod 2.
    let colour = |v: usize| if v < 4 { v % 2 } else { (v + 1) % 2 };
    let orient = |a: usize, b: usize| if colour(a) == 0 { (a, b) } else { (b, a) };
    let mut ends = Vec::new();
    let mut names = Vec::new();
    for i in 0..4 {
        ends.push(orient(i, (i + 1) % 4));
        names.push(format!("i{i}"));
    }
    for i in 0..4 {
        ends.push(orient(4 + i, 4 + (i + 1) % 4));
        names.push(format!("o{i}"));
    }
    for i in 0..4 {
        ends.push(orient(i, 4 + i));
        names.push(format!("k{i}"));
    }
    // Radii chosen so that inverse stereographic projection gives the
    // vertices of a round cube.
    let (rin, rout) = (libm::sqrt(2.0 / 3.0) / (1.0 + 1.0 / libm::sqrt(3.0)), libm::sqrt(2.0 / 3.0) / (1.0 - 1.0 / libm::sqrt(3.0)));
    let mut plane = Vec::new();
    plane.extend((0..4).map(|i| polar(rin, PI / 4.0 + i as f64 * PI / 2.0)));
    plane.extend((0..4).map(|i| polar(rout, PI / 4.0 + i as f64 * PI / 2.0)));
    let rotations = plane_rotations(&plane, &ends);
    let constraints = alloc::vec![Constraint::Full; 8];
    let mut fixed = alloc::vec![None; ends.len()];
    fixed[0] = Some(0);
    let slots = SlotProblem { rotations: &rotations, ends: &ends, constraints: &constraints, slots: 3 }
        .solve(&fixed)
        .ok_or(Error::LabelingFailure)?;
    let vector = boundary.presentation().vector;
    let specs = (0..ends.len())
        .map(|k| edge(names[k].clone(), ends[k].0, ends[k].1, periods[slots[k]], Some(vector[slots[k]].clone())))
        .collect();
    assemble_planar(PolyhedronKind::Cube, boundary, &plane, specs, 0, 0)
}

/// The double cone over an `n`-gon. The apex `N` sees the periods in cyclic
/// order with meridians `x₁, …, xₙ`; the equator is oriented coherently and
/// labeled `p₁` with image `x₁`; the edges from the apex `S` map to the
/// conjugates `x₁⁻¹ xᵢ x₁`. Equatorial vertices see `(pᵢ, p₁, pᵢ, p₁)`.
pub fn bipyramid_diagram(periods: &[u32]) -> Result<SpatialGraphDiagram> {
    let n = periods.len();
    if n < 3 {
        return Err(Error::PreconditionViolation("a bipyramid needs at least three periods".into()));
    }
    if periods[0] <= 2 {
        return Err(Error::PreconditionViolation(format!("first period must exceed 2, got {}", periods[0])));
    }
    let boundary = FuchsianSignature::new(0, periods.to_vec())?;
    hyperbolic(&boundary)?;
    let vector = boundary.presentation().vector;
    let x1 = vector[0].clone();
    let (nv, sv) = (0, n + 1);
    let e = |i: usize| 1 + i % n;
    let mut specs = Vec::new();
    for i in 0..n {
        specs.push(edge(format!("n{}", i + 1), e(i), nv, periods[i], Some(vector[i].clone())));
    }
    for i in 0..n {
        specs.push(edge(format!("s{}", i + 1), sv, e(i), periods[i], Some(vector[i].conjugate_by(&x1).reduce())));
    }
    for i in 0..n {
        specs.push(edge(format!("e{}", i + 1), e(i), e(i + 1), periods[0], Some(x1.clone())));
    }
    // Equatorial vertices clockwise around the apex at the centre.
    let mut plane = alloc::vec![Some([0.0, 0.0])];
    plane.extend((0..n).map(|i| polar(1.0, -2.0 * PI * i as f64 / n as f64)));
    plane.push(None);
    assemble_planar(PolyhedronKind::Bipyramid, boundary, &plane, specs, nv, 0)
}
