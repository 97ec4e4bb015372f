//! Fuchsian signatures, their standard presentations and Euler characteristics.

mod action;
mod low_index;

pub use action::{
    normal_core, schreier_generators, stabilizer_homs_mod2, subgroup_signature, CoreReport, CosetAction,
    SchreierGenerators,
};
pub use low_index::low_index_actions;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{evaluate, Presentation, Word};

pub type Rational = Ratio<i64>;

/// Signature `(ḡ; p₁, …, pₙ)` of a cocompact Fuchsian group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FuchsianSignature {
    genus: u32,
    periods: Vec<u32>,
}

impl FuchsianSignature {
    pub fn new(genus: u32, periods: Vec<u32>) -> Result<Self> {
        if let Some(&p) = periods.iter().find(|&&p| p < 2) {
            return Err(Error::PreconditionViolation(format!("period {p} is smaller than 2")));
        }
        Ok(FuchsianSignature { genus, periods })
    }

    pub fn triangle(p: u32, q: u32, r: u32) -> Result<Self> {
        Self::new(0, alloc::vec![p, q, r])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn is_triangle(&self) -> bool {
        self.genus == 0 && self.periods.len() == 3
    }

    /// Same signature with periods sorted ascending.
    pub fn canonical(&self) -> Self {
        let mut periods = self.periods.clone();
        periods.sort_unstable();
        FuchsianSignature { genus: self.genus, periods }
    }

    /// `χ = 2 − 2ḡ − Σ (1 − 1/pᵢ)`, exactly.
    pub fn orbifold_euler_char(&self) -> Rational {
        let mut chi = Rational::from_integer(2 - 2 * self.genus as i64);
        for &p in &self.periods {
            chi -= Rational::new(p as i64 - 1, p as i64);
        }
        chi
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.orbifold_euler_char() < Rational::from_integer(0)
    }

    pub fn ensure_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::NotHyperbolic(self.to_string()))
        }
    }

    /// Genus `g` of the surface with `2 − 2g = |G|·χ`, for a smooth quotient
    /// of order `group_order`. Refuses data that is not the Euler
    /// characteristic of a closed hyperbolic surface.
    pub fn quotient_genus(&self, group_order: u128) -> Result<u64> {
        self.ensure_hyperbolic()?;
        let chi = self.orbifold_euler_char();
        let n = i64::try_from(group_order).map_err(|_| Error::GroupTooLarge(u64::MAX))?;
        let total = chi * Rational::from_integer(n);
        if !total.is_integer() || total.to_integer() % 2 != 0 || total.to_integer() > -2 {
            return Err(Error::NotASmoothSurfaceKernel(format!("{group_order} · ({chi}) = {total}")));
        }
        Ok((2 - total.to_integer()) as u64 / 2)
    }

    /// Standard presentation; see [`FuchsianPresentation`].
    pub fn presentation(&self) -> FuchsianPresentation {
        FuchsianPresentation::of(self)
    }
}

impl fmt::Display for FuchsianSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.genus)?;
        for (i, p) in self.periods.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<FuchsianSignature> for String {
    fn from(s: FuchsianSignature) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for FuchsianSignature {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for FuchsianSignature {
    type Err = Error;

    /// Parses `"(0;2,3,7)"`, `"(2;)"`, `"(2)"`; spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse { message: message.into(), column };
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0;
        let col = |pos: usize| chars.get(pos).map(|c| c.0 + 1).unwrap_or(s.len() + 1);
        if chars.get(pos).map(|c| c.1) != Some('(') {
            return Err(err(col(pos), "expected '('"));
        }
        pos += 1;
        let read_num = |pos: &mut usize| -> Result<u32> {
            let start = *pos;
            let mut v: u64 = 0;
            while let Some(d) = chars.get(*pos).and_then(|c| c.1.to_digit(10)) {
                v = v * 10 + d as u64;
                if v > u32::MAX as u64 {
                    return Err(err(col(start), "number too large"));
                }
                *pos += 1;
            }
            if *pos == start {
                return Err(err(col(start), "expected a number"));
            }
            Ok(v as u32)
        };
        let genus = read_num(&mut pos)?;
        let mut periods = Vec::new();
        match chars.get(pos).map(|c| c.1) {
            Some(')') => {}
            Some(';') => {
                pos += 1;
                if chars.get(pos).map(|c| c.1) != Some(')') {
                    loop {
                        let at = col(pos);
                        let p = read_num(&mut pos)?;
                        if p < 2 {
                            return Err(err(at, "periods must be at least 2"));
                        }
                        periods.push(p);
                        match chars.get(pos).map(|c| c.1) {
                            Some(',') => pos += 1,
                            Some(')') => break,
                            _ => return Err(err(col(pos), "expected ',' or ')'")),
                        }
                    }
                }
            }
            _ => return Err(err(col(pos), "expected ';' or ')'")),
        }
        pos += 1;
        if pos != chars.len() {
            return Err(err(col(pos), "trailing characters"));
        }
        FuchsianSignature::new(genus, periods)
    }
}

/// Standard presentation of a Fuchsian group together with its generating
/// vector.
///
/// * triangle signatures `(0;p,q,r)`: generators `x, y`, relators
///   `x^p, y^q, (xy)^r`; the third vector entry is `z = (xy)⁻¹`;
/// * other genus-0 signatures: generators `x, y, z, w` (or `x1…xn` when
///   `n > 4`), relators `xᵢ^pᵢ` and `x₁⋯xₙ`;
/// * genus `ḡ > 0`: generators `a1, b1, …, c1, …, cn`, relators `cᵢ^pᵢ` and
///   `[a1,b1]⋯[aḡ,bḡ]c₁⋯cₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianPresentation {
    pub signature: FuchsianSignature,
    pub presentation: Presentation,
    /// Words of the generating vector: hyperbolic pairs first, then one
    /// elliptic word per period.
    pub vector: Vec<Word>,
}

impl FuchsianPresentation {
    pub fn of(sig: &FuchsianSignature) -> Self {
        let n = sig.periods.len();
        let g = sig.genus as usize;
        let mut names: Vec<String> = Vec::new();
        let mut relators = Vec::new();
        let mut vector = Vec::new();
        if g == 0 && n == 3 {
            names = alloc::vec!["x".into(), "y".into()];
            let x = Word::generator(0);
            let y = Word::generator(1);
            let xy = x.concat(&y);
            relators.push(x.pow(sig.periods[0] as i64));
            relators.push(y.pow(sig.periods[1] as i64));
            relators.push(xy.pow(sig.periods[2] as i64));
            vector = alloc::vec![x, y, xy.inverse()];
        } else {
            for i in 1..=g {
                names.push(format!("a{i}"));
                names.push(format!("b{i}"));
            }
            for i in 0..n {
                names.push(if g == 0 && n <= 4 {
                    ["x", "y", "z", "w"][i].to_string()
                } else if g == 0 {
                    format!("x{}", i + 1)
                } else {
                    format!("c{}", i + 1)
                });
            }
            let mut long = Word::empty();
            for i in 0..g {
                let a = Word::generator(2 * i);
                let b = Word::generator(2 * i + 1);
                vector.push(a.clone());
                vector.push(b.clone());
                long = long.concat(&Word::commutator(&a, &b));
            }
            for (i, &p) in sig.periods.iter().enumerate() {
                let c = Word::generator(2 * g + i);
                relators.push(c.pow(p as i64));
                long = long.concat(&c);
                vector.push(c);
            }
            if !long.is_empty() {
                relators.push(long);
            }
        }
        let presentation = Presentation::new(names, relators).expect("standard presentation is well formed");
        FuchsianPresentation { signature: sig.clone(), presentation, vector }
    }

    /// Elliptic vector entries with their periods.
    pub fn elliptic(&self) -> impl Iterator<Item = (&Word, u32)> {
        let skip = 2 * self.signature.genus as usize;
        self.vector[skip..].iter().zip(self.signature.periods.iter().copied())
    }

    /// Images of the generating vector under generator images.
    pub fn vector_images(&self, images: &[Permutation]) -> Result<Vec<Permutation>> {
        self.vector.iter().map(|w| evaluate(images, w)).collect()
    }

    /// Generator images from a generating vector (inverse of
    /// [`Self::vector_images`] on vectors satisfying the long relation).
    pub fn images_from_vector(&self, vector: &[Permutation]) -> Vec<Permutation> {
        if self.signature.is_triangle() {
            vector[..2].to_vec()
        } else {
            vector.to_vec()
        }
    }
}

/// Applies Hurwitz braid moves and cyclic rotations to a genus-0 generating
/// vector `(g₁, …, gₙ)` with `g₁⋯gₙ = 1`, so that the entry in position `i`
/// afterwards has the period of the original entry `order[i]`.
///
/// Each move preserves the product and replaces entries by conjugates, so the
/// resulting vector defines an equivalent action.
pub fn reorder_vector(vector: &[Permutation], order: &[usize]) -> Vec<Permutation> {
    let n = vector.len();
    debug_assert_eq!(order.len(), n);
    // Track which original slot sits at each position.
    let mut slots: Vec<usize> = (0..n).collect();
    let mut v = vector.to_vec();
    for target in 0..n {
        let want = order[target];
        let mut at = slots.iter().position(|&s| s == want).unwrap();
        while at > target {
            // (…, a, b, …) -> (…, b, b⁻¹ a b, …)
            let a = v[at - 1].clone();
            let b = v[at].clone();
            v[at - 1] = b.clone();
            v[at] = a.conjugate_by(&b);
            slots.swap(at - 1, at);
            at -= 1;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn sig(s: &str) -> FuchsianSignature {
        s.parse().unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(sig("(0;2,3,7)").orbifold_euler_char(), Rational::new(-1, 42));
        assert_eq!(sig("(2;)").orbifold_euler_char(), Rational::from_integer(-2));
        assert_eq!(sig("(0;2,2,2,2)").orbifold_euler_char(), Rational::from_integer(0));
        // 2 - 1/2 - 2/3 - 7/8 = -1/24
        assert_eq!(sig("(0;2,3,8)").orbifold_euler_char(), Rational::new(-1, 24));
    }

    #[test]
    fn hyperbolicity() {
        assert!(sig("(0;2,3,7)").is_hyperbolic());
        assert!(!sig("(0;3,3,3)").is_hyperbolic());
        assert!(!sig("(0;2,2,2,2)").is_hyperbolic());
        assert!(sig("(0;2,2,2,3)").is_hyperbolic());
        assert!(!sig("(1;)").is_hyperbolic());
    }

    #[test]
    fn quotient_genus_values() {
        assert_eq!(sig("(0;2,3,7)").quotient_genus(168).unwrap(), 3);
        assert_eq!(sig("(0;2,3,8)").quotient_genus(48).unwrap(), 2);
        assert!(matches!(sig("(0;2,3,7)").quotient_genus(42), Err(Error::NotASmoothSurfaceKernel(_))));
        assert!(matches!(sig("(0;2,3,8)").quotient_genus(24), Err(Error::NotASmoothSurfaceKernel(_))));
        assert!(matches!(sig("(0;3,3,3)").quotient_genus(9), Err(Error::NotHyperbolic(_))));
        // Hurwitz bound: N = 84 (g - 1)
        for g in 2..20u128 {
            let n = 84 * (g - 1);
            assert_eq!(sig("(0;2,3,7)").quotient_genus(n).unwrap() as u128, g);
        }
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(sig("(0;2,3,7)").periods(), &[2, 3, 7]);
        assert_eq!(sig("(2;)").genus(), 2);
        assert_eq!(sig("( 0 ; 2 , 2 , 3 , 3 )").periods(), &[2, 2, 3, 3]);
        assert_eq!(sig("(0;2,3,7)").to_string(), "(0;2,3,7)");
        assert_eq!(sig("(2;)").to_string(), "(2;)");
        for bad in ["0;2,3,7)", "(0;2,1)", "(0;2,3", "(0;2,,3)", "(x;2)", "(0;2,3,7)x"] {
            assert!(matches!(bad.parse::<FuchsianSignature>(), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn standard_presentations() {
        let t = sig("(0;2,3,7)").presentation();
        assert_eq!(t.presentation.generators(), &["x", "y"]);
        let shown: Vec<String> = t.presentation.relators().iter().map(|r| t.presentation.display_word(r)).collect();
        assert_eq!(shown, ["x^2", "y^3", "x*y*x*y*x*y*x*y*x*y*x*y*x*y"]);

        let q = sig("(0;2,3,4,5)").presentation();
        assert_eq!(q.presentation.generators(), &["x", "y", "z", "w"]);
        assert_eq!(q.presentation.display_word(q.presentation.relators().last().unwrap()), "x*y*z*w");

        let torus = sig("(1;)").presentation();
        assert_eq!(torus.presentation.relators().len(), 1);
        assert_eq!(torus.presentation.display_word(&torus.presentation.relators()[0]), "a1^-1*b1^-1*a1*b1");

        let g2 = sig("(2;3)").presentation();
        assert_eq!(g2.presentation.generator_count(), 5);
        assert_eq!(g2.elliptic().count(), 1);
    }

    #[test]
    fn braid_reordering_preserves_product_and_orders() {
        let g = library::symmetric(5);
        let x = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let y = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        let z = Permutation::from_cycles(5, &[&[2, 4]]).unwrap();
        let w = x.compose(&y).compose(&z).inverse();
        let v = alloc::vec![x, y, z, w];
        let orders: Vec<u64> = v.iter().map(Permutation::order).collect();
        let perm = [3usize, 1, 0, 2];
        let r = reorder_vector(&v, &perm);
        let prod = r.iter().fold(g.identity(), |a, b| a.compose(b));
        assert!(prod.is_identity());
        for (i, &src) in perm.iter().enumerate() {
            assert_eq!(r[i].order(), orders[src]);
        }
        let gen_old = g.subgroup_generated(&v).unwrap().order();
        assert_eq!(g.subgroup_generated(&r).unwrap().order(), gen_old);
    }
}
