use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::word::{Letter, Word};

/// A finitely presented group `⟨x₁,…,xₙ | r₁,…,r_m⟩`.
///
/// Relators are stored freely and cyclically reduced. Generator ids are
/// `0..generator_count`; every generator has a display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
    pub metadata: Option<String>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        let names = (1..=generator_count).map(|i| format!("g{i}")).collect();
        Presentation::with_names(names, relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if !is_valid_name(n) {
                return Err(Error::Invalid(format!("invalid generator name {n:?}")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator name {n:?}")));
            }
        }
        let count = names.len();
        let relators = relators
            .into_iter()
            .map(|r| {
                if r.max_generator().is_some_and(|g| g as usize >= count) {
                    Err(Error::MalformedWord(format!(
                        "relator references a generator beyond {count}"
                    )))
                } else {
                    Ok(r.cyclically_reduced())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            names,
            relators,
            metadata: None,
        })
    }

    pub fn free_group(rank: usize) -> Self {
        let names = (1..=rank).map(|i| format!("f{i}")).collect();
        Presentation::with_names(names, vec![]).expect("valid free group")
    }

    /// `⟨a₁,b₁,…,a_g,b_g | [a₁,b₁]⋯[a_g,b_g]⟩`; the sphere group for `g = 0`.
    pub fn surface_group(genus: usize) -> Self {
        let mut names = Vec::with_capacity(2 * genus);
        let mut rel = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            names.push(format!("a{}", i + 1));
            names.push(format!("b{}", i + 1));
            let (a, b) = (2 * i as u32, 2 * i as u32 + 1);
            rel.extend([Letter::pos(a), Letter::pos(b), Letter::neg(a), Letter::neg(b)]);
        }
        let relators = if genus == 0 {
            vec![]
        } else {
            vec![Word::reduce_unchecked(rel)]
        };
        let mut p = Presentation::with_names(names, relators).expect("valid surface group");
        p.metadata = Some(format!("surface group of genus {genus}"));
        p
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_id(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Validate and reduce a word against this presentation's generators.
    pub fn word(&self, signed: &[i64]) -> Result<Word> {
        Word::from_signed(signed, self.generator_count())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g as usize >= self.generator_count() => Err(Error::MalformedWord(format!(
                "word references generator {} but the presentation has {}",
                g + 1,
                self.generator_count()
            ))),
            _ => Ok(()),
        }
    }

    /// Free product `self ∗ other`. The second factor's generators are
    /// shifted by `self.generator_count()`; names are de-duplicated with a
    /// prime suffix.
    pub fn free_product(&self, other: &Presentation) -> (Presentation, FreeProductInjections) {
        let offset = self.generator_count() as u32;
        let mut names = self.names.clone();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for n in &other.names {
            let mut cand = n.clone();
            while taken.contains(&cand) {
                cand.push('\'');
            }
            taken.insert(cand.clone());
            names.push(cand);
        }
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| shift_word(r, offset)));
        let p = Presentation {
            names,
            relators,
            metadata: None,
        };
        (
            p,
            FreeProductInjections {
                left_offset: 0,
                right_offset: offset,
            },
        )
    }
}

fn is_valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

pub(crate) fn shift_word(w: &Word, offset: u32) -> Word {
    w.letters()
        .iter()
        .map(|l| Letter::new(l.generator + offset, l.inverse))
        .collect()
}

/// Generator-id offsets of the two factors inside a free product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeProductInjections {
    pub left_offset: u32,
    pub right_offset: u32,
}

impl FreeProductInjections {
    pub fn left(&self, w: &Word) -> Word {
        shift_word(w, self.left_offset)
    }

    pub fn right(&self, w: &Word) -> Word {
        shift_word(w, self.right_offset)
    }
}

impl fmt::Display for Presentation {
    /// The line-oriented text format: `gens: …` then one `rel: …` per relator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.metadata {
            for line in m.lines() {
                writeln!(f, "# {line}")?;
            }
        }
        writeln!(f, "gens: {}", self.names.join(", "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_groups() {
        let s0 = Presentation::surface_group(0);
        assert_eq!(s0.generator_count(), 0);
        assert!(s0.relators().is_empty());
        let s1 = Presentation::surface_group(1);
        assert_eq!(s1.relators()[0].to_signed(), vec![1, 2, -1, -2]);
        let s2 = Presentation::surface_group(2);
        assert_eq!(s2.generator_count(), 4);
        assert_eq!(s2.relators()[0].len(), 8);
    }

    #[test]
    fn free_product_shapes() {
        let x = Presentation::free_group(1);
        let (p, inj) = x.free_product(&x);
        assert_eq!(p.generator_count(), 2);
        assert!(p.relators().is_empty());
        assert_eq!(inj.right_offset, 1);
        assert_eq!(p.names()[1], "f1'");

        let t = Presentation::new(2, vec![Word::from_signed(&[1, 2, 1, -2, -1, -2], 2).unwrap()]).unwrap();
        let (u, _) = t.free_product(&Presentation::free_group(0));
        assert_eq!(u, t);
        let (tt, _) = t.free_product(&t);
        assert_eq!(tt.relators()[1].to_signed(), vec![3, 4, 3, -4, -3, -4]);
    }

    #[test]
    fn relators_are_cyclically_reduced_and_validated() {
        let p = Presentation::new(2, vec![Word::from_signed(&[2, 1, -2], 2).unwrap()]).unwrap();
        assert_eq!(p.relators()[0].to_signed(), vec![1]);
        assert!(Presentation::new(1, vec![Word::from_signed(&[2], 2).unwrap()]).is_err());
        assert!(Presentation::with_names(vec!["x".into(), "x".into()], vec![]).is_err());
        assert!(Presentation::with_names(vec!["X".into()], vec![]).is_err());
    }
}
