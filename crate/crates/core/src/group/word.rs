use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of letters in any stored word.
pub const MAX_WORD_LEN: usize = 1 << 20;

/// A generator reference with an exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Letter from a nonzero 1-based signed index (`-2` is the inverse of
    /// the second generator).
    pub fn from_signed(i: i64) -> Option<Self> {
        if i == 0 {
            return None;
        }
        let g = u32::try_from(i.unsigned_abs() - 1).ok()?;
        Some(Letter::new(g, i < 0))
    }

    pub fn to_signed(self) -> i64 {
        let g = self.generator as i64 + 1;
        if self.inverse {
            -g
        } else {
            g
        }
    }
}

/// A freely reduced word in the free group on the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: u32) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Freely reduce a raw letter sequence, checking every generator is
    /// below `generator_count`.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>, generator_count: usize) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if l.generator as usize >= generator_count {
                return Err(Error::MalformedWord(format!(
                    "generator index {} out of range (have {})",
                    l.generator, generator_count
                )));
            }
            push_reduced(&mut out, l);
        }
        if out.len() > MAX_WORD_LEN {
            return Err(Error::ResourceLimit(format!(
                "word of length {} exceeds the {}-letter cap",
                out.len(),
                MAX_WORD_LEN
            )));
        }
        Ok(Word(out))
    }

    /// Like [`Word::reduce`] but without a generator bound.
    pub fn reduce_unchecked(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in raw {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn from_signed(indices: &[i64], generator_count: usize) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&i| Letter::from_signed(i).ok_or_else(|| Error::MalformedWord("zero letter index".into())))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(letters, generator_count)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.to_signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// `w · self · w⁻¹`
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.mul(self).mul(&w.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Strip inverse pairs between the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j - i >= 2 && v[i] == v[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// All cyclic rotations and their inverses; the minimum is a canonical
    /// representative of the relator up to conjugation and inversion.
    pub fn cyclic_canonical(&self) -> Word {
        let c = self.cyclically_reduced();
        let n = c.len();
        if n == 0 {
            return c;
        }
        let inv = c.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for src in [&c.0, &inv.0] {
            for r in 0..n {
                let rot: Vec<Letter> = src[r..].iter().chain(&src[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: u32) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    pub fn exponent_sum(&self, g: u32) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Replace every generator by a word. `images[g]` is the image of `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator as usize];
            if l.inverse {
                for &x in img.0.iter().rev() {
                    push_reduced(&mut out, x.inv());
                }
            } else {
                for &x in &img.0 {
                    push_reduced(&mut out, x);
                }
            }
        }
        Word(out)
    }

    /// Render with the given generator names; inverses are upper-cased.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::reduce_unchecked(iter)
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self
                .names
                .get(l.generator as usize)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.generator + 1));
            if l.inverse {
                write!(f, "{}", invert_name(&name))?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

/// `x1` ↦ `X1`. Names are required to start with a lowercase letter.
pub(crate) fn invert_name(name: &str) -> String {
    let mut cs = name.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// Serialized as 1-based signed generator indices.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|l| l.to_signed()))
    }
}
