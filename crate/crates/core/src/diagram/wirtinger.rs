use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use serde::{Deserialize, Serialize};

use super::SpatialGraphDiagram;
use crate::fuchsian::FuchsianSignature;
use crate::word::{Presentation, Word};

/// Presentation of the orbifold group with one meridian generator per arc.
///
/// Relators come in three blocks: one order relator per edge (on its first
/// arc), one relator per vertex and one per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldPresentation {
    pub presentation: Presentation,
    /// Label of the edge of each generator.
    pub labels: Vec<u32>,
    /// Edge of each generator.
    pub edge_of: Vec<usize>,
    /// Generators of each edge, from tail to head.
    pub arcs: Vec<Vec<usize>>,
    pub order_relators: Range<usize>,
    pub vertex_relators: Range<usize>,
    pub crossing_relators: Range<usize>,
}

impl OrbifoldPresentation {
    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn relators(&self) -> &[Word] {
        self.presentation.relators()
    }

    /// Generator of the arc of `edge` that ends at vertex `v`.
    pub fn arc_at(&self, d: &SpatialGraphDiagram, edge: usize, v: usize) -> usize {
        let arcs = &self.arcs[edge];
        if d.edges[edge].tail == v {
            arcs[0]
        } else {
            *arcs.last().unwrap()
        }
    }

    /// The relator of vertex `v`.
    pub fn vertex_relator(&self, v: usize) -> &Word {
        &self.relators()[self.vertex_relators.start + v]
    }
}

/// Builds the Wirtinger-style presentation of the diagram.
pub fn wirtinger_presentation(d: &SpatialGraphDiagram) -> OrbifoldPresentation {
    let mut names: Vec<String> = Vec::new();
    let mut labels = Vec::new();
    let mut edge_of = Vec::new();
    let mut arcs = Vec::with_capacity(d.edges.len());
    let unders: Vec<Vec<usize>> = (0..d.edges.len()).map(|e| d.under_crossings(e)).collect();
    for (e, edge) in d.edges.iter().enumerate() {
        let mut list = Vec::new();
        for k in 0..=unders[e].len() {
            let base = if edge.name.is_empty() { format!("g{e}") } else { edge.name.clone() };
            let mut name = if k == 0 { base.clone() } else { format!("{base}{}", k + 1) };
            while names.contains(&name) {
                name.push('\'');
            }
            list.push(names.len());
            names.push(name);
            labels.push(edge.label);
            edge_of.push(e);
        }
        arcs.push(list);
    }
    let mut relators = Vec::new();
    for (e, edge) in d.edges.iter().enumerate() {
        relators.push(Word::generator_pow(arcs[e][0], edge.label as i64));
    }
    let order_relators = 0..relators.len();
    for (v, vert) in d.vertices.iter().enumerate() {
        let mut w = Word::empty();
        for &e in &vert.rotation {
            let g = if d.edges[e].tail == v { arcs[e][0] } else { *arcs[e].last().unwrap() };
            w = w.concat(&Word::generator_pow(g, d.end_sign(e, v) as i64));
        }
        relators.push(w);
    }
    let vertex_relators = order_relators.end..relators.len();
    for (ci, c) in d.crossings.iter().enumerate() {
        let k = unders[c.under].iter().position(|&x| x == ci).unwrap();
        let u_in = Word::generator(arcs[c.under][k]);
        let u_out = Word::generator(arcs[c.under][k + 1]);
        let o_arc = unders[c.over].iter().filter(|&&x| d.crossings[x].under_t < c.over_t).count();
        let o = Word::generator_pow(arcs[c.over][o_arc], -(c.sign as i64));
        relators.push(o.concat(&u_in).concat(&o.inverse()).concat(&u_out.inverse()));
    }
    let crossing_relators = vertex_relators.end..relators.len();
    let presentation = Presentation::new(names, relators).expect("Wirtinger relators are nontrivial");
    OrbifoldPresentation { presentation, labels, edge_of, arcs, order_relators, vertex_relators, crossing_relators }
}

/// A truncating orbifold: the triangle or polygon orbifold cut out around a
/// vertex of the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryOrbifold {
    pub vertex: usize,
    pub signature: FuchsianSignature,
    /// Edges at the vertex in meridian order.
    pub edges: Vec<usize>,
    /// Meridian words in the Wirtinger generators; their product is a
    /// vertex relator or its inverse.
    pub meridians: Vec<Word>,
}

/// One boundary orbifold per vertex. Meridians are the arc generators at the
/// vertex, read counterclockwise with exponent `-1` on incoming edges, or
/// clockwise with exponent `+1` when all edges are incoming; both start at
/// the first edge of the rotation. With the basepoint above the diagram no
/// conjugators are needed.
pub fn boundary_subgroups(d: &SpatialGraphDiagram, pres: &OrbifoldPresentation) -> Vec<BoundaryOrbifold> {
    (0..d.vertices.len())
        .map(|v| {
            let rot = &d.vertices[v].rotation;
            let all_in = rot.iter().all(|&e| d.end_sign(e, v) < 0);
            let edges: Vec<usize> = if all_in {
                let mut r: Vec<usize> = rot.iter().rev().copied().collect();
                r.rotate_right(1);
                r
            } else {
                rot.clone()
            };
            let meridians = edges
                .iter()
                .map(|&e| Word::generator_pow(pres.arc_at(d, e, v), if all_in { 1 } else { d.end_sign(e, v) as i64 }))
                .collect();
            let periods = edges.iter().map(|&e| d.edges[e].label).collect();
            BoundaryOrbifold {
                vertex: v,
                signature: FuchsianSignature::new(0, periods).expect("labels are at least 2"),
                edges,
                meridians,
            }
        })
        .collect()
}
