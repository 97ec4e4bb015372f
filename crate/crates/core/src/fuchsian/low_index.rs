//! Low-index subgroups by coset-table backtracking.
//!
//! Tables have one column per generator and per inverse (`2g`, `2g + 1`).
//! Entries are filled at the first undefined position in row-major order,
//! either with an existing coset whose inverse slot is free or with the next
//! new coset, so every complete table is standard with respect to coset 0.
//! Relators are scanned to a fixpoint after every choice. A complete table is
//! kept only when it is lexicographically least among the standard tables
//! from all basepoints, which leaves one action per conjugacy class.

use alloc::vec::Vec;

use super::{CosetAction, FuchsianSignature};
use crate::perm::Permutation;

const UNDEF: u32 = u32::MAX;

#[derive(Clone)]
struct Table {
    cols: usize,
    rows: usize,
    cells: Vec<u32>,
}

impl Table {
    fn get(&self, c: usize, col: usize) -> u32 {
        self.cells[c * self.cols + col]
    }

    fn set(&mut self, c: usize, col: usize, d: u32) {
        self.cells[c * self.cols + col] = d;
        self.cells[d as usize * self.cols + (col ^ 1)] = c as u32;
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        let i = self.cells[..self.rows * self.cols].iter().position(|&v| v == UNDEF)?;
        Some((i / self.cols, i % self.cols))
    }

    /// Scans every relator from every coset until nothing changes.
    /// Returns `false` on a contradiction.
    fn close(&mut self, relators: &[Vec<usize>]) -> bool {
        loop {
            let mut changed = false;
            for c in 0..self.rows {
                for r in relators {
                    let mut f = c;
                    let mut i = 0;
                    while i < r.len() {
                        let v = self.get(f, r[i]);
                        if v == UNDEF {
                            break;
                        }
                        f = v as usize;
                        i += 1;
                    }
                    if i == r.len() {
                        if f != c {
                            return false;
                        }
                        continue;
                    }
                    let mut b = c;
                    let mut j = r.len();
                    while j > i {
                        let v = self.get(b, r[j - 1] ^ 1);
                        if v == UNDEF {
                            break;
                        }
                        b = v as usize;
                        j -= 1;
                    }
                    if j == i {
                        if f != b {
                            return false;
                        }
                    } else if j == i + 1 {
                        self.set(f, r[i], b as u32);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Standard relabeling starting from `base`, as a flat cell vector.
    fn standardized(&self, base: usize) -> Vec<u32> {
        let mut label = alloc::vec![UNDEF; self.rows];
        let mut order = Vec::with_capacity(self.rows);
        label[base] = 0;
        order.push(base);
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for col in 0..self.cols {
                let d = self.get(c, col) as usize;
                if label[d] == UNDEF {
                    label[d] = order.len() as u32;
                    order.push(d);
                }
            }
            k += 1;
        }
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for &c in &order {
            for col in 0..self.cols {
                out.push(label[self.get(c, col) as usize]);
            }
        }
        out
    }

    fn is_canonical(&self) -> bool {
        let own = &self.cells[..self.rows * self.cols];
        (1..self.rows).all(|b| own <= &self.standardized(b)[..])
    }
}

/// All transitive actions of the signature's group of degree at most
/// `max_degree`, one per conjugacy class of subgroups (i.e. up to
/// simultaneous relabeling of points), sorted by degree and then by coset
/// table.
pub fn low_index_actions(sig: &FuchsianSignature, max_degree: usize) -> Vec<CosetAction> {
    let fp = sig.presentation();
    let k = fp.presentation.generator_count();
    let cols = 2 * k;
    let relators: Vec<Vec<usize>> = fp
        .presentation
        .relators()
        .iter()
        .map(|r| {
            r.reduce()
                .letters()
                .iter()
                .map(|&l| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0))
                .collect()
        })
        .collect();
    let max_degree = max_degree.max(1);
    let mut found: Vec<(usize, Vec<u32>)> = Vec::new();
    let start = Table { cols, rows: 1, cells: alloc::vec![UNDEF; cols * max_degree] };
    let mut stack = Vec::new();
    let mut t = start;
    if k == 0 || t.close(&relators) {
        stack.push(t);
    }
    while let Some(t) = stack.pop() {
        let Some((c, col)) = t.first_undefined() else {
            if t.is_canonical() {
                found.push((t.rows, t.cells[..t.rows * cols].to_vec()));
            }
            continue;
        };
        // Push in reverse so that exploration order is ascending.
        let mut children = Vec::new();
        for d in 0..t.rows {
            if t.get(d, col ^ 1) == UNDEF {
                let mut u = t.clone();
                u.set(c, col, d as u32);
                if u.close(&relators) {
                    children.push(u);
                }
            }
        }
        if t.rows < max_degree {
            let mut u = t.clone();
            let n = u.rows;
            u.rows += 1;
            u.set(c, col, n as u32);
            if u.close(&relators) {
                children.push(u);
            }
        }
        stack.extend(children.into_iter().rev());
    }
    found.sort();
    found
        .into_iter()
        .map(|(n, cells)| {
            let images = (0..k)
                .map(|g| Permutation::from_images((0..n).map(|c| cells[c * cols + 2 * g]).collect()).expect("complete coset table"))
                .collect();
            CosetAction::new(sig.clone(), images).expect("coset table satisfies relators")
        })
        .collect()
}
