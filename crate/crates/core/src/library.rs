//! Standard finite groups as permutation groups.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("library generator is a bijection")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let n = n.max(1);
    let gen = perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    PermGroup::new(n, alloc::vec![gen]).unwrap()
}

/// Dihedral group of order `2n`: on `n` points for `n ≥ 3`; the Klein four
/// group acting regularly for `n = 2`; order 2 on two points for `n = 1`.
pub fn dihedral(n: usize) -> PermGroup {
    match n {
        0 | 1 => cyclic(2),
        2 => {
            let a = perm(alloc::vec![1, 0, 3, 2]);
            let b = perm(alloc::vec![2, 3, 0, 1]);
            PermGroup::new(4, alloc::vec![a, b]).unwrap()
        }
        _ => {
            let r = perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
            let s = perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
            PermGroup::new(n, alloc::vec![r, s]).unwrap()
        }
    }
}

pub fn symmetric(n: usize) -> PermGroup {
    let n = n.max(1);
    if n == 1 {
        return PermGroup::new(1, alloc::vec![]).unwrap();
    }
    let cycle = perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    let mut t: Vec<u32> = (0..n as u32).collect();
    t.swap(0, 1);
    PermGroup::new(n, alloc::vec![cycle, perm(t)]).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    let n = n.max(1);
    if n < 3 {
        return PermGroup::new(n, alloc::vec![]).unwrap();
    }
    // 3-cycles (0 1 i) generate A_n.
    let gens = (2..n as u32)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::PreconditionViolation(format!("{p} is not prime")));
    }
    Ok(())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `PSL(2, p)` acting on the projective line over `F_p` (point `p` is ∞),
/// generated by `z ↦ z + 1` and `z ↦ −1/z`.
pub fn psl2(p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    let inf = p;
    let t: Vec<u32> = (0..=p).map(|z| if z == inf { inf } else { (z + 1) % p } as u32).collect();
    let s: Vec<u32> = (0..=p)
        .map(|z| {
            if z == inf {
                0
            } else if z == 0 {
                inf
            } else {
                (p - inv_mod(z, p)) % p
            }
        } as u32)
        .collect();
    PermGroup::new(p as usize + 1, alloc::vec![perm(t), perm(s)])
}

/// `GL(2, p)` acting on the `p² − 1` nonzero vectors of `F_p²`.
pub fn gl2(p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    let prim = (2..p.max(3))
        .find(|&g| (1..p - 1).all(|k| {
            let mut x = 1;
            for _ in 0..k {
                x = x * g % p;
            }
            x != 1
        }))
        .unwrap_or(1);
    let index = |a: u64, b: u64| (a + p * b - 1) as u32;
    let act = |m: [u64; 4]| -> Permutation {
        let mut images = alloc::vec![0u32; (p * p - 1) as usize];
        for b in 0..p {
            for a in 0..p {
                if a == 0 && b == 0 {
                    continue;
                }
                let a2 = (m[0] * a + m[1] * b) % p;
                let b2 = (m[2] * a + m[3] * b) % p;
                images[index(a, b) as usize] = index(a2, b2);
            }
        }
        perm(images)
    };
    let gens = alloc::vec![act([1, 1, 0, 1]), act([1, 0, 1, 1]), act([prim, 0, 0, 1])];
    PermGroup::new((p * p - 1) as usize, gens)
}

/// Regular (right multiplication) representation of a group of at most
/// `limit` elements, with the sorted element list indexing the points.
pub fn regular_representation(g: &PermGroup, limit: u64) -> Result<(PermGroup, Vec<Permutation>)> {
    let elems = g.elements(limit)?;
    let index = |x: &Permutation| elems.binary_search(x).expect("closed under products") as u32;
    let gens = g
        .generators()
        .iter()
        .map(|s| perm(elems.iter().map(|e| index(&e.compose(s))).collect()))
        .collect();
    Ok((PermGroup::new(elems.len(), gens)?, elems))
}

/// Looks up a library group by name: `C12`, `D6`, `S5`, `A5`, `PSL2(7)`,
/// `GL2(3)`.
pub fn by_name(name: &str) -> Result<PermGroup> {
    let bad = || Error::Parse { message: format!("unknown group name {name}"), column: 1 };
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let upper: String = name.trim().chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase();
    if let Some(rest) = upper.strip_prefix("PSL2(").and_then(|r| r.strip_suffix(')')) {
        return psl2(num(rest)?);
    }
    if let Some(rest) = upper.strip_prefix("GL2(").and_then(|r| r.strip_suffix(')')) {
        return gl2(num(rest)?);
    }
    let (kind, n) = upper.split_at(1);
    let n = num(n)? as usize;
    match kind {
        "C" => Ok(cyclic(n)),
        "D" => Ok(dihedral(n)),
        "S" => Ok(symmetric(n)),
        "A" => Ok(alternating(n)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(dihedral(2).order(), 4);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(gl2(3).unwrap().order(), 48);
        assert_eq!(gl2(3).unwrap().degree(), 8);
        assert_eq!(psl2(11).unwrap().order(), 660);
        assert!(psl2(8).is_err());
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("PSL2(7)").unwrap().order(), 168);
        assert_eq!(by_name("s4").unwrap().order(), 24);
        assert!(by_name("Q8").is_err());
    }

    #[test]
    fn regular_rep_has_degree_order() {
        let (r, els) = regular_representation(&dihedral(4), 100).unwrap();
        assert_eq!(r.degree(), 8);
        assert_eq!(els.len(), 8);
        assert_eq!(r.order(), 8);
        assert!(r.is_transitive());
    }
}
