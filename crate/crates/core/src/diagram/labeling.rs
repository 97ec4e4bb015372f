//! Edge-labeling search for the builders and an independent, label-based
//! condition checker.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{PolyhedronKind, SpatialGraphDiagram};
use crate::error::{Error, Result};

/// Constraint on the slots (indices into the boundary periods) of the edges
/// at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Constraint {
    /// All edges point the same way and, read counterclockwise (clockwise
    /// for incoming edges), the slots are a rotation of `0, 1, …, k − 1`.
    Full,
    /// All edges carry the same slot.
    Same,
}

pub(crate) struct SlotProblem<'a> {
    pub rotations: &'a [Vec<usize>],
    pub ends: &'a [(usize, usize)],
    pub constraints: &'a [Constraint],
    pub slots: usize,
}

impl SlotProblem<'_> {
    /// Edges at `v` in oriented order, or `None` if directions are mixed.
    fn oriented(&self, v: usize) -> Option<Vec<usize>> {
        let rot = &self.rotations[v];
        let outs = rot.iter().filter(|&&e| self.ends[e].0 == v).count();
        if outs == rot.len() {
            Some(rot.clone())
        } else if outs == 0 {
            let mut r: Vec<usize> = rot.iter().rev().copied().collect();
            r.rotate_right(1);
            Some(r)
        } else {
            None
        }
    }

    fn consistent(&self, v: usize, slot: &[Option<usize>]) -> bool {
        match self.constraints[v] {
            Constraint::Same => {
                let mut seen = None;
                self.rotations[v].iter().filter_map(|&e| slot[e]).all(|s| *seen.get_or_insert(s) == s)
            }
            Constraint::Full => {
                let Some(order) = self.oriented(v) else { return false };
                if order.len() != self.slots {
                    return false;
                }
                let k = self.slots;
                let mut shift = None;
                order
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &e)| slot[e].map(|s| (s + k - i % k) % k))
                    .all(|d| *shift.get_or_insert(d) == d)
            }
        }
    }

    /// Depth-first search over edges in index order; `fixed` pins slots.
    pub fn solve(&self, fixed: &[Option<usize>]) -> Option<Vec<usize>> {
        let mut slot: Vec<Option<usize>> = fixed.to_vec();
        if !(0..self.rotations.len()).all(|v| self.consistent(v, &slot)) {
            return None;
        }
        self.rec(0, &mut slot).then(|| slot.into_iter().map(|s| s.unwrap()).collect())
    }

    fn rec(&self, e: usize, slot: &mut Vec<Option<usize>>) -> bool {
        if e == slot.len() {
            return true;
        }
        if slot[e].is_some() {
            return self.rec(e + 1, slot);
        }
        let (a, b) = self.ends[e];
        for s in 0..self.slots {
            slot[e] = Some(s);
            if self.consistent(a, slot) && self.consistent(b, slot) && self.rec(e + 1, slot) {
                return true;
            }
        }
        slot[e] = None;
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// Boundary periods in cyclic order, all edges in or all out.
    Full,
    /// Four equal labels, edges alternating in and out.
    Same,
    /// Labels `(pᵢ, p₁, pᵢ, p₁)` around an equatorial bipyramid vertex.
    Equatorial,
    /// Labels form the multiset of boundary periods.
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingReport {
    pub kinds: Vec<VertexKind>,
}

impl LabelingReport {
    pub fn count(&self, kind: VertexKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }
}

fn is_rotation_of(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(i + s) % b.len()])))
}

/// Checks the labeling conditions of a builder's output from labels and
/// orientations alone. Fails with [`Error::LabelingFailure`] if some vertex
/// violates the conditions of its polyhedron type.
pub fn check_labeling(d: &SpatialGraphDiagram) -> Result<LabelingReport> {
    let periods = d.boundary.periods();
    let mut kinds = Vec::with_capacity(d.vertices.len());
    for v in 0..d.vertices.len() {
        let rot = &d.vertices[v].rotation;
        let labels = d.vertex_labels(v);
        let dirs: Vec<i32> = rot.iter().map(|&e| d.end_sign(e, v)).collect();
        let all_out = dirs.iter().all(|&s| s > 0);
        let all_in = dirs.iter().all(|&s| s < 0);
        let mut reversed = labels.clone();
        reversed.reverse();
        let full = (all_out && is_rotation_of(&labels, periods)) || (all_in && is_rotation_of(&reversed, periods));
        let same = labels.len() == 4
            && labels.iter().all(|&l| l == labels[0])
            && (0..4).all(|i| dirs[i] == -dirs[(i + 1) % 4]);
        let equatorial = labels.len() == 4
            && labels[0] == labels[2]
            && labels[1] == labels[3]
            && (labels[0] == periods[0] || labels[1] == periods[0]);
        let triangle = {
            let mut a = labels.clone();
            let mut b = periods.to_vec();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        };
        let kind = match d.kind {
            PolyhedronKind::Tetrahedron if triangle => VertexKind::Triangle,
            PolyhedronKind::Cube if full => VertexKind::Full,
            PolyhedronKind::Octahedron if full => VertexKind::Full,
            PolyhedronKind::Octahedron if same => VertexKind::Same,
            PolyhedronKind::Bipyramid if full && labels.len() == periods.len() => VertexKind::Full,
            PolyhedronKind::Bipyramid if equatorial => VertexKind::Equatorial,
            PolyhedronKind::Custom if full => VertexKind::Full,
            PolyhedronKind::Custom if same => VertexKind::Same,
            _ => return Err(Error::LabelingFailure),
        };
        kinds.push(kind);
    }
    let report = LabelingReport { kinds };
    let n = d.vertices.len();
    let ok = match d.kind {
        PolyhedronKind::Tetrahedron => n == 4,
        PolyhedronKind::Cube => n == 8,
        PolyhedronKind::Octahedron => report.count(VertexKind::Full) == 4 && report.count(VertexKind::Same) == 2,
        PolyhedronKind::Bipyramid => report.count(VertexKind::Full) == 2 && report.count(VertexKind::Equatorial) == n - 2,
        PolyhedronKind::Custom => true,
    };
    if ok {
        Ok(report)
    } else {
        Err(Error::LabelingFailure)
    }
}
