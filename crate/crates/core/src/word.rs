//! Words over a finite generating set and finitely presented groups.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A word in signed generator letters. Letter `k > 0` is generator `k - 1`,
/// letter `-k` its inverse. Words are kept as written; call [`Word::reduce`]
/// before comparing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0));
        Word { letters }
    }

    /// The single-letter word for generator `index`.
    pub fn generator(index: usize) -> Self {
        Word { letters: alloc::vec![index as i32 + 1] }
    }

    pub fn generator_pow(index: usize, exp: i64) -> Self {
        Word::generator(index).pow(exp)
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free and cyclic reduction.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.reduce().letters;
        while w.len() >= 2 && w[0] == -w[w.len() - 1] {
            w.pop();
            w.remove(0);
        }
        Word { letters: w }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `c⁻¹ · self · c`
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().concat(self).concat(c)
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Product of a sequence of words.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut letters = Vec::new();
        for w in words {
            letters.extend_from_slice(&w.letters);
        }
        Word { letters }
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut letters = Vec::new();
        for &l in &self.letters {
            let g = l.unsigned_abs() as usize - 1;
            let img = images.get(g).ok_or(Error::GeneratorOutOfRange(g))?;
            if l > 0 {
                letters.extend_from_slice(&img.letters);
            } else {
                letters.extend(img.letters.iter().rev().map(|x| -x));
            }
        }
        Ok(Word { letters })
    }

    /// Renders the word with generator names, using `^-1` for inverses and
    /// collapsing runs into powers.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            let g = l.unsigned_abs() as usize - 1;
            match names.get(g) {
                Some(n) => out.push_str(n),
                None => {
                    let _ = write!(out, "g{g}");
                }
            }
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            if exp != 1 {
                let _ = write!(out, "^{exp}");
            }
            i += run;
        }
        out
    }
}

/// Left-to-right product of the (inverse) images along the word.
pub fn evaluate(images: &[Permutation], w: &Word) -> Result<Permutation> {
    let degree = images.first().map(Permutation::degree).unwrap_or(0);
    if let Some(bad) = images.iter().find(|p| p.degree() != degree) {
        return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
    }
    let mut inverses: Vec<Option<Permutation>> = alloc::vec![None; images.len()];
    let mut acc: Vec<u32> = (0..degree as u32).collect();
    for &l in &w.letters {
        let g = l.unsigned_abs() as usize - 1;
        let img = images.get(g).ok_or(Error::GeneratorOutOfRange(g))?;
        let p = if l > 0 {
            img
        } else {
            inverses[g].get_or_insert_with(|| img.inverse())
        };
        for a in acc.iter_mut() {
            *a = p.apply(*a);
        }
    }
    Permutation::from_images(acc)
}

/// Image of a single point under the word, without forming the product.
pub fn trace_point(images: &[Permutation], inverses: &[Permutation], w: &Word, point: u32) -> u32 {
    let mut p = point;
    for &l in &w.letters {
        let g = l.unsigned_abs() as usize - 1;
        p = if l > 0 { images[g].apply(p) } else { inverses[g].apply(p) };
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Parse { message: format!("duplicate generator {g}"), column: 0 });
            }
        }
        for r in &relators {
            if r.generator_bound() > generators.len() {
                return Err(Error::GeneratorOutOfRange(r.generator_bound() - 1));
            }
            if r.reduce().is_empty() {
                return Err(Error::Parse {
                    message: "relator is trivial after free reduction".into(),
                    column: 0,
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relator strings against the given generator names.
    pub fn parse<S: AsRef<str>>(generators: &[S], relators: &[S]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| parse_word(r.as_ref(), &names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(names, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display_with(&self.generators)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators)
    }
}

/// Parses a word: juxtaposition or `*` for products, `^k` powers (negative
/// allowed), parentheses, `[a,b]` commutators, and an uppercase letter as the
/// inverse of the matching single-letter lowercase generator. `1` denotes the
/// empty word.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = WordParser { chars: text.char_indices().collect(), pos: 0, names };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(w)
}

struct WordParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, message: &str) -> Error {
        let column = self.chars.get(self.pos).map(|c| c.0).unwrap_or_else(|| {
            self.chars.last().map(|c| c.0 + c.1.len_utf8()).unwrap_or(0)
        }) + 1;
        let found = self.chars.get(self.pos).map(|c| format!(" '{}'", c.1)).unwrap_or_default();
        Error::Parse { message: format!("{message}{found}"), column }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => break,
                Some('*') if !letters.is_empty() => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            let t = self.term()?;
            letters.extend_from_slice(t.letters());
        }
        Ok(Word::from_letters(letters))
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.integer()?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value.checked_mul(10).and_then(|v| v.checked_add(d as i64)).ok_or_else(|| self.err("exponent overflow"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer exponent"));
        }
        Ok(if neg { -value } else { value })
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.err("expected ','"));
                }
                self.pos += 1;
                let b = self.word()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&a, &b))
            }
            Some(_) => self.name(),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn name(&mut self) -> Result<Word> {
        let rest: String = self.chars[self.pos..].iter().map(|c| c.1).collect();
        let mut best: Option<(usize, usize)> = None;
        for (i, n) in self.names.iter().enumerate() {
            if !n.is_empty() && rest.starts_with(n.as_str()) && best.is_none_or(|(_, l)| n.len() > l) {
                best = Some((i, n.len()));
            }
        }
        if let Some((i, len)) = best {
            self.pos += rest[..len].chars().count();
            return Ok(Word::generator(i));
        }
        let c = self.peek().unwrap();
        if c.is_uppercase() {
            let lower: String = c.to_lowercase().collect();
            if let Some(i) = self.names.iter().position(|n| *n == lower) {
                self.pos += 1;
                return Ok(Word::generator(i).inverse());
            }
        }
        if c == '1' {
            self.pos += 1;
            return Ok(Word::empty());
        }
        Err(self.err("unknown generator"))
    }
}
