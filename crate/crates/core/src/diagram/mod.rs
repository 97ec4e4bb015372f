//! Labeled planar diagrams of the singular sets of truncated-polyhedron
//! orbifolds, their Wirtinger-style presentations, boundary subgroups and the
//! extension and retraction homomorphisms.
//!
//! Conventions, fixed for every builder:
//!
//! * the rotation at a vertex lists incident edges counterclockwise as seen
//!   from above the projection plane;
//! * the meridian of an arc passes down on its right (looking along the edge
//!   orientation) and up on its left; with the faces `[right, left]` of the
//!   edge it is represented by `R_right · R_left`. In diagrams with crossings
//!   the face sides describe the arcs of edges that never pass under, as
//!   seen from the basepoint above the diagram;
//! * the relator of a vertex is the counterclockwise product of the meridians
//!   of its edge ends, inverted for incoming edges;
//! * at a crossing of sign `s` (the sign of `over × under`), the under-arc
//!   leaving the crossing is `o^{-s} · u_in · o^{s}`.

mod builders;
mod labeling;
mod retraction;
mod wirtinger;

pub use builders::{bipyramid_diagram, cube_diagram, octahedron_diagram, tetrahedron_diagram, tetrahedron_planar_diagram};
pub use labeling::{check_labeling, LabelingReport, VertexKind};
pub use retraction::{
    extend_hom, involution_reduce, quotient_certificate, retraction, screening_quotients, QuotientCertificate, Retraction,
};
pub use wirtinger::{boundary_subgroups, wirtinger_presentation, BoundaryOrbifold, OrbifoldPresentation};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuchsian::FuchsianSignature;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyhedronKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Bipyramid,
    Custom,
}

impl core::fmt::Display for PolyhedronKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            PolyhedronKind::Tetrahedron => "tetrahedron",
            PolyhedronKind::Cube => "cube",
            PolyhedronKind::Octahedron => "octahedron",
            PolyhedronKind::Bipyramid => "bipyramid",
            PolyhedronKind::Custom => "custom",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramVertex {
    /// Point of a round model of the polyhedron, used to seed the geometry.
    pub position: [f64; 3],
    /// Incident edges, counterclockwise.
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramEdge {
    pub name: String,
    pub label: u32,
    pub tail: usize,
    pub head: usize,
    /// Polyhedron faces on the right and on the left of the edge.
    pub faces: [usize; 2],
    /// Retraction image of the arc leaving the tail, as a word in the
    /// boundary presentation.
    pub image: Option<Word>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    /// Positions along the two edges, in `(0, 1)` from tail to head.
    pub over_t: f64,
    pub under_t: f64,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialGraphDiagram {
    pub kind: PolyhedronKind,
    /// Signature of the distinguished boundary orbifold, the target of the
    /// retraction.
    pub boundary: FuchsianSignature,
    pub base_vertex: usize,
    pub face_count: usize,
    pub vertices: Vec<DiagramVertex>,
    pub edges: Vec<DiagramEdge>,
    pub crossings: Vec<Crossing>,
}

impl SpatialGraphDiagram {
    /// Checks labels, rotation system, crossings, faces and planarity.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if self.base_vertex >= self.vertices.len() {
            return bad(format!("base vertex {} out of range", self.base_vertex));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.label < 2 {
                return bad(format!("edge {i} has label {} < 2", e.label));
            }
            if e.tail >= self.vertices.len() || e.head >= self.vertices.len() || e.tail == e.head {
                return bad(format!("edge {i} has invalid ends"));
            }
            if e.faces.iter().any(|&f| f >= self.face_count) || e.faces[0] == e.faces[1] {
                return bad(format!("edge {i} has invalid faces"));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            let expected: BTreeSet<usize> =
                (0..self.edges.len()).filter(|&i| self.edges[i].tail == v || self.edges[i].head == v).collect();
            let got: BTreeSet<usize> = vert.rotation.iter().copied().collect();
            if got.len() != vert.rotation.len() || got != expected {
                return bad(format!("rotation at vertex {v} does not list its incident edges"));
            }
        }
        for (i, c) in self.crossings.iter().enumerate() {
            if c.over == c.under || c.over >= self.edges.len() || c.under >= self.edges.len() {
                return bad(format!("crossing {i} must reference two distinct edges"));
            }
            if !(c.over_t > 0.0 && c.over_t < 1.0 && c.under_t > 0.0 && c.under_t < 1.0) || c.sign.abs() != 1 {
                return bad(format!("crossing {i} has invalid parameters"));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate().filter(|_| self.crossings.is_empty()) {
            let rot = &vert.rotation;
            for i in 0..rot.len() {
                let next = rot[(i + 1) % rot.len()];
                if self.ccw_face(rot[i], v) != self.cw_face(next, v) {
                    return bad(format!("faces around vertex {v} are inconsistent with its rotation"));
                }
            }
        }
        let (v, e, f) = self.projection_euler_counts();
        if v as i64 - e as i64 + f as i64 != 2 {
            return bad(format!("rotation system is not planar (V - E + F = {})", v as i64 - e as i64 + f as i64));
        }
        Ok(())
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.vertices[v].rotation.len()
    }

    /// `+1` if the edge leaves `v`, `-1` if it enters.
    pub fn end_sign(&self, edge: usize, v: usize) -> i32 {
        if self.edges[edge].tail == v {
            1
        } else {
            -1
        }
    }

    /// Crossings where `edge` passes under, sorted along the edge.
    pub fn under_crossings(&self, edge: usize) -> Vec<usize> {
        let mut cs: Vec<usize> = (0..self.crossings.len()).filter(|&c| self.crossings[c].under == edge).collect();
        cs.sort_by(|&a, &b| self.crossings[a].under_t.total_cmp(&self.crossings[b].under_t));
        cs
    }

    /// Face on the counterclockwise side of `edge` at `v`.
    pub fn ccw_face(&self, edge: usize, v: usize) -> usize {
        let e = &self.edges[edge];
        if e.tail == v {
            e.faces[1]
        } else {
            e.faces[0]
        }
    }

    /// Face on the clockwise side of `edge` at `v`.
    pub fn cw_face(&self, edge: usize, v: usize) -> usize {
        let e = &self.edges[edge];
        if e.tail == v {
            e.faces[0]
        } else {
            e.faces[1]
        }
    }

    /// Faces around a vertex: entry `i` lies between rotation entries `i`
    /// and `i + 1`.
    pub fn vertex_faces(&self, v: usize) -> Vec<usize> {
        let rot = &self.vertices[v].rotation;
        (0..rot.len())
            .map(|i| {
                let a = self.edges[rot[i]].faces;
                let b = self.edges[rot[(i + 1) % rot.len()]].faces;
                *a.iter().find(|f| b.contains(f)).unwrap_or(&a[1])
            })
            .collect()
    }

    /// Counts for the projection graph with crossings as 4-valent vertices.
    fn projection_euler_counts(&self) -> (usize, usize, usize) {
        // Darts of the projection graph: (node, slot) with nodes = vertices
        // then crossings. Each sub-segment of an edge is one edge.
        let nv = self.vertices.len();
        let mut segments: Vec<(usize, usize)> = Vec::new(); // (from node, to node)
        let mut seg_at_tail = alloc::vec![0usize; self.edges.len()];
        let mut seg_at_head = alloc::vec![0usize; self.edges.len()];
        // Points along each edge: crossing ids sorted by parameter.
        let mut stops: Vec<Vec<(f64, usize)>> = alloc::vec![Vec::new(); self.edges.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            stops[c.over].push((c.over_t, ci));
            stops[c.under].push((c.under_t, ci));
        }
        // For each crossing: (over-in, over-out, under-in, under-out) segments.
        let mut cross_segs = alloc::vec![[usize::MAX; 4]; self.crossings.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            stops[e].sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut prev = edge.tail;
            let mut prev_cross: Option<usize> = None;
            for &(_, ci) in &stops[e] {
                let s = segments.len();
                segments.push((prev, nv + ci));
                if let Some(pc) = prev_cross {
                    let slot = if self.crossings[pc].over == e { 1 } else { 3 };
                    cross_segs[pc][slot] = s;
                } else {
                    seg_at_tail[e] = s;
                }
                let slot = if self.crossings[ci].over == e { 0 } else { 2 };
                cross_segs[ci][slot] = s;
                prev = nv + ci;
                prev_cross = Some(ci);
            }
            let s = segments.len();
            segments.push((prev, edge.head));
            seg_at_head[e] = s;
            match prev_cross {
                None => seg_at_tail[e] = s,
                Some(pc) => {
                    let slot = if self.crossings[pc].over == e { 1 } else { 3 };
                    cross_segs[pc][slot] = s;
                }
            }
        }
        // Rotation of every node as a list of segment ids.
        let mut rot: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vert)| {
                vert.rotation
                    .iter()
                    .map(|&e| if self.edges[e].tail == v { seg_at_tail[e] } else { seg_at_head[e] })
                    .collect()
            })
            .collect();
        for (ci, c) in self.crossings.iter().enumerate() {
            let [oi, oo, ui, uo] = cross_segs[ci];
            // Counterclockwise for a positive crossing: over-out, under-out,
            // over-in, under-in.
            rot.push(if c.sign > 0 { alloc::vec![oo, uo, oi, ui] } else { alloc::vec![oo, ui, oi, uo] });
        }
        let nodes = rot.len();
        let other = |s: usize, node: usize| if segments[s].0 == node { segments[s].1 } else { segments[s].0 };
        // Trace faces: dart (node, segment) going out of node along segment.
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut faces = 0;
        for node in 0..nodes {
            for &s in &rot[node] {
                if seen.contains(&(node, s)) {
                    continue;
                }
                faces += 1;
                let (mut n, mut seg) = (node, s);
                while seen.insert((n, seg)) {
                    let m = other(seg, n);
                    let r = &rot[m];
                    let k = r.iter().position(|&t| t == seg).expect("segment at both ends");
                    seg = r[(k + r.len() - 1) % r.len()];
                    n = m;
                }
            }
        }
        (nodes, segments.len(), faces)
    }

    /// Combinatorics of the polyhedron for the geometry module.
    pub fn polyhedron(&self) -> crate::geometry::Polyhedron {
        crate::geometry::Polyhedron {
            face_count: self.face_count,
            edges: self.edges.iter().map(|e| (e.faces[0], e.faces[1], e.label)).collect(),
            vertices: (0..self.vertices.len()).map(|v| self.vertex_faces(v)).collect(),
            model: self.vertices.iter().map(|v| v.position).collect(),
        }
    }

    /// Labels of the edges at `v` in rotation order.
    pub fn vertex_labels(&self, v: usize) -> Vec<u32> {
        self.vertices[v].rotation.iter().map(|&e| self.edges[e].label).collect()
    }
}

/// Faces of a planar (crossing-free) diagram from its rotation system;
/// returns, per edge, the faces `[right, left]` and the number of faces.
pub(crate) fn trace_planar_faces(vertices: &[DiagramVertex], ends: &[(usize, usize)]) -> (Vec<[usize; 2]>, usize) {
    let mut dart_face: alloc::collections::BTreeMap<(usize, usize), usize> = alloc::collections::BTreeMap::new();
    let mut faces = 0;
    for v in 0..vertices.len() {
        for &e in &vertices[v].rotation {
            if dart_face.contains_key(&(v, e)) {
                continue;
            }
            let (mut n, mut edge) = (v, e);
            while !dart_face.contains_key(&(n, edge)) {
                // The face on the left of the dart leaving `n` along `edge`.
                dart_face.insert((n, edge), faces);
                let m = if ends[edge].0 == n { ends[edge].1 } else { ends[edge].0 };
                let r = &vertices[m].rotation;
                let k = r.iter().position(|&t| t == edge).unwrap();
                edge = r[(k + r.len() - 1) % r.len()];
                n = m;
            }
            faces += 1;
        }
    }
    let sides = ends
        .iter()
        .enumerate()
        .map(|(e, &(t, h))| [dart_face[&(h, e)], dart_face[&(t, e)]])
        .collect();
    (sides, faces)
}

// ---- JSON form -------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VertexFile {
    id: usize,
    position: [f64; 3],
    rotation: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EdgeFile {
    id: usize,
    name: String,
    label: u32,
    ends: [usize; 2],
    faces: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    image: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CrossingFile {
    over: usize,
    under: usize,
    over_t: f64,
    under_t: f64,
    sign: i8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DiagramFile {
    kind: PolyhedronKind,
    boundary: FuchsianSignature,
    base_vertex: usize,
    face_count: usize,
    vertices: Vec<VertexFile>,
    edges: Vec<EdgeFile>,
    #[serde(default)]
    crossings: Vec<CrossingFile>,
}

impl Serialize for SpatialGraphDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let bp = self.boundary.presentation().presentation;
        DiagramFile {
            kind: self.kind,
            boundary: self.boundary.clone(),
            base_vertex: self.base_vertex,
            face_count: self.face_count,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexFile { id, position: v.position, rotation: v.rotation.clone() })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeFile {
                    id,
                    name: e.name.clone(),
                    label: e.label,
                    ends: [e.tail, e.head],
                    faces: e.faces,
                    image: e.image.as_ref().map(|w| bp.display_word(w)),
                })
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingFile { over: c.over, under: c.under, over_t: c.over_t, under_t: c.under_t, sign: c.sign })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpatialGraphDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let f = DiagramFile::deserialize(d)?;
        SpatialGraphDiagram::try_from(f).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<DiagramFile> for SpatialGraphDiagram {
    type Error = Error;

    fn try_from(f: DiagramFile) -> Result<Self> {
        let bp = f.boundary.presentation().presentation;
        let check_ids = |ids: Vec<usize>, what: &str| -> Result<()> {
            if ids.iter().enumerate().any(|(i, &id)| i != id) {
                return Err(Error::InvalidDiagram(format!("{what} ids must be 0, 1, 2, … in order")));
            }
            Ok(())
        };
        check_ids(f.vertices.iter().map(|v| v.id).collect(), "vertex")?;
        check_ids(f.edges.iter().map(|e| e.id).collect(), "edge")?;
        let edges = f
            .edges
            .into_iter()
            .map(|e| {
                Ok(DiagramEdge {
                    name: e.name,
                    label: e.label,
                    tail: e.ends[0],
                    head: e.ends[1],
                    faces: e.faces,
                    image: e.image.map(|s| bp.parse_word(&s)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = SpatialGraphDiagram {
            kind: f.kind,
            boundary: f.boundary,
            base_vertex: f.base_vertex,
            face_count: f.face_count,
            vertices: f.vertices.into_iter().map(|v| DiagramVertex { position: v.position, rotation: v.rotation }).collect(),
            edges,
            crossings: f
                .crossings
                .into_iter()
                .map(|c| Crossing { over: c.over, under: c.under, over_t: c.over_t, under_t: c.under_t, sign: c.sign })
                .collect(),
        };
        d.validate()?;
        Ok(d)
    }
}

impl core::fmt::Display for SpatialGraphDiagram {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{} diagram: {} vertices, {} edges, {} crossings, boundary {}",
            self.kind,
            self.vertices.len(),
            self.edges.len(),
            self.crossings.len(),
            self.boundary
        )
    }
}
