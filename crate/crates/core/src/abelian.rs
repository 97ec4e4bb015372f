//! Abelianization of finitely presented groups via Smith normal form.

use alloc::vec::Vec;

use crate::word::Presentation;

/// Invariants of the abelianization: torsion coefficients `d₁ | d₂ | …`
/// (all `> 1`) followed by `0` for each free summand.
pub fn abelian_invariants(pres: &Presentation) -> Vec<u64> {
    let n = pres.generator_count();
    let mut m: Vec<Vec<i128>> = pres
        .relators()
        .iter()
        .map(|r| {
            let mut row = alloc::vec![0i128; n];
            for &l in r.letters() {
                row[l.unsigned_abs() as usize - 1] += l.signum() as i128;
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&mut m, n);
    let mut out: Vec<u64> = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    let rank = diag.iter().filter(|&&d| d != 0).count();
    out.extend(core::iter::repeat_n(0, n - rank));
    out
}

fn smith_diagonal(m: &mut [Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut pivot = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && pivot.is_none_or(|(_, _, best): (usize, usize, i128)| v.abs() < best) {
                    pivot = Some((i, j, v.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // Divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t into the pivot.
            let mut best = (t, t, m[t][t].abs());
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < best.2 {
                    best = (i, t, m[i][t].abs());
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < best.2 {
                    best = (t, j, m[t][j].abs());
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
