//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use geoembed_core::fuchsian::{CosetAction, FuchsianSignature};
use geoembed_core::{evaluate, PermGroup, Permutation};

pub fn sig(s: &str) -> FuchsianSignature {
    s.parse().unwrap()
}

/// All permutations of `{0, …, n-1}` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_images(prefix.clone()).unwrap());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u32);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Elements of the group generated by `gens`, by breadth-first closure.
pub fn closure(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let id = Permutation::identity(degree);
    let mut queue = vec![id.clone()];
    seen.insert(id);
    while let Some(g) = queue.pop() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                queue.push(h);
            }
        }
    }
    seen.into_iter().collect()
}

fn transitive(images: &[Permutation], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for g in images {
            let q = g.apply(p) as usize;
            if !seen[q] {
                seen[q] = true;
                stack.push(q as u32);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical representative of an image tuple under simultaneous
/// conjugation by `conj`.
pub fn canonical(images: &[Permutation], conj: &[Permutation]) -> Vec<Vec<u32>> {
    conj.iter().map(|c| images.iter().map(|p| p.conjugate_by(c).into_images()).collect::<Vec<_>>()).min().unwrap()
}

/// Conjugacy classes of transitive actions of degree `n`, by trying every
/// tuple of generator images.
pub fn brute_force_actions(s: &FuchsianSignature, n: usize) -> Vec<Vec<Vec<u32>>> {
    let perms = all_perms(n);
    let fp = s.presentation();
    let k = fp.presentation.generator_count();
    let mut classes = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<Permutation> = idx.iter().map(|&i| perms[i].clone()).collect();
        if fp.presentation.relators().iter().all(|r| evaluate(&images, r).unwrap().is_identity()) && transitive(&images, n) {
            classes.insert(canonical(&images, &perms));
        }
        let mut j = 0;
        loop {
            if j == k {
                return classes.into_iter().collect();
            }
            idx[j] += 1;
            if idx[j] < perms.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub fn canonical_action(a: &CosetAction) -> Vec<Vec<u32>> {
    canonical(a.images(), &all_perms(a.degree()))
}

/// Inner-conjugacy classes of smooth generating tuples for a genus-0
/// signature in `target`, by enumerating elements of the right orders.
pub fn brute_force_epis(s: &FuchsianSignature, target: &PermGroup) -> usize {
    let els = closure(target.generators(), target.degree());
    let fp = s.presentation();
    let k = fp.presentation.generator_count();
    let order = els.len();
    let mut classes = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<Permutation> = idx.iter().map(|&i| els[i].clone()).collect();
        let smooth = fp.elliptic().all(|(w, m)| evaluate(&images, w).unwrap().order() == m as u64);
        if smooth
            && fp.presentation.relators().iter().all(|r| evaluate(&images, r).unwrap().is_identity())
            && closure(&images, target.degree()).len() == order
        {
            classes.insert(canonical(&images, &els));
        }
        let mut j = 0;
        loop {
            if j == k {
                return classes.len();
            }
            idx[j] += 1;
            if idx[j] < els.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
