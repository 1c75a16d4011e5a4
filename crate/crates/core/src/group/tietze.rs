//! Tietze transformations and greedy presentation simplification.
//!
//! Every transformation reports how the old generators are expressed in
//! the new presentation, so words attached to a presentation (peripheral
//! data, edge maps) can be carried along.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::presentation::Presentation;
use crate::group::word::{Letter, Word, MAX_WORD_LEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    AddRedundantRelator,
    RemoveRedundantRelator,
    AddGeneratorWithDefinition,
    RemoveDefinedGenerator,
}

impl TietzeMove {
    pub const ALL: [TietzeMove; 4] = [
        TietzeMove::AddRedundantRelator,
        TietzeMove::RemoveRedundantRelator,
        TietzeMove::AddGeneratorWithDefinition,
        TietzeMove::RemoveDefinedGenerator,
    ];
}

/// Result of a Tietze move or of [`simplify`].
#[derive(Clone, Debug)]
pub struct Rewritten {
    pub presentation: Presentation,
    /// `images[g]` expresses old generator `g` in the new generators.
    pub images: Vec<Word>,
    /// False when the move was not applicable and the input is returned as is.
    pub applied: bool,
}

impl Rewritten {
    fn unchanged(p: &Presentation) -> Self {
        Rewritten {
            presentation: p.clone(),
            images: identity_images(p.generator_count()),
            applied: false,
        }
    }

    /// Compose with a later rewrite of `self.presentation`.
    pub fn then(self, next: Rewritten) -> Rewritten {
        let images = self.images.iter().map(|w| w.substitute(&next.images)).collect();
        Rewritten {
            presentation: next.presentation,
            images,
            applied: self.applied || next.applied,
        }
    }

    /// Carry a word over the old generators into the new presentation.
    pub fn map_word(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

fn identity_images(n: usize) -> Vec<Word> {
    (0..n as u32).map(Word::generator).collect()
}

/// Apply one Tietze move. `seed` drives the random choices (which relators
/// to combine, which defining word to introduce).
pub fn tietze_move(p: &Presentation, mv: TietzeMove, seed: u64) -> Result<Rewritten> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mv {
        TietzeMove::AddRedundantRelator => {
            let n = p.generator_count();
            let rels = p.relators();
            let w1 = random_word(&mut rng, n, 3);
            let mut new = if rels.is_empty() {
                w1.mul(&w1.inverse())
            } else {
                rels[rng.gen_range(0..rels.len())].conjugate_by(&w1)
            };
            if !rels.is_empty() && rng.gen_bool(0.5) {
                let w2 = random_word(&mut rng, n, 3);
                let r2 = rels[rng.gen_range(0..rels.len())].pow(if rng.gen_bool(0.5) { 1 } else { -1 });
                new = new.mul(&r2.conjugate_by(&w2));
            }
            add_relator(p, new)
        }
        TietzeMove::RemoveRedundantRelator => {
            let candidates = redundant_relators(p);
            if candidates.is_empty() {
                return Ok(Rewritten::unchanged(p));
            }
            let pick = candidates[rng.gen_range(0..candidates.len())];
            remove_relator(p, pick)
        }
        TietzeMove::AddGeneratorWithDefinition => {
            let n = p.generator_count();
            if n == 0 {
                return add_defined_generator(p, Word::identity());
            }
            let mut def = Word::identity();
            while def.is_empty() {
                def = random_word(&mut rng, n, 4);
            }
            add_defined_generator(p, def)
        }
        TietzeMove::RemoveDefinedGenerator => {
            let last = (0..p.generator_count() as u32)
                .rev()
                .find_map(|g| definition_for(p, g).map(|r| (g, r)));
            match last {
                Some((g, r)) => eliminate(p, g, r),
                None => Ok(Rewritten::unchanged(p)),
            }
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    if n == 0 {
        return Word::identity();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..n as u32), rng.gen_bool(0.5)))
        .collect()
}

pub fn add_relator(p: &Presentation, r: Word) -> Result<Rewritten> {
    p.check_word(&r)?;
    let mut rels = p.relators().to_vec();
    rels.push(r);
    rebuild(p, p.names().to_vec(), rels, identity_images(p.generator_count()))
}

fn remove_relator(p: &Presentation, idx: usize) -> Result<Rewritten> {
    let mut rels = p.relators().to_vec();
    rels.remove(idx);
    rebuild(p, p.names().to_vec(), rels, identity_images(p.generator_count()))
}

/// Relators that are trivial or duplicate an earlier relator up to cyclic
/// permutation and inversion.
fn redundant_relators(p: &Presentation) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let c = r.cyclic_canonical();
        if c.is_empty() || !seen.insert(c) {
            out.push(i);
        }
    }
    out
}

/// Add a generator `t` together with the relator `t⁻¹·def`.
pub fn add_defined_generator(p: &Presentation, def: Word) -> Result<Rewritten> {
    p.check_word(&def)?;
    let n = p.generator_count() as u32;
    let mut names = p.names().to_vec();
    let mut k = 1;
    while names.iter().any(|x| *x == format!("t{k}")) {
        k += 1;
    }
    names.push(format!("t{k}"));
    let mut rels = p.relators().to_vec();
    rels.push(Word::generator(n).inverse().mul(&def));
    rebuild(p, names, rels, identity_images(n as usize))
}

/// Index of the shortest relator in which `g` occurs exactly once.
fn definition_for(p: &Presentation, g: u32) -> Option<usize> {
    p.relators()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.occurrences(g) == 1)
        .min_by_key(|(i, r)| (r.len(), *i))
        .map(|(i, _)| i)
}

/// Eliminate generator `g` using relator `rel_idx`, in which `g` occurs once.
pub fn eliminate(p: &Presentation, g: u32, rel_idx: usize) -> Result<Rewritten> {
    let r = &p.relators()[rel_idx];
    let pos = r
        .letters()
        .iter()
        .position(|l| l.generator == g)
        .ok_or_else(|| Error::Precondition(format!("generator {} absent from relator", g + 1)))?;
    if r.occurrences(g) != 1 {
        return Err(Error::Precondition(format!(
            "generator {} occurs more than once in the defining relator",
            g + 1
        )));
    }
    // r ~ g^ε · w  ⇒  g = w⁻¹ (ε = +1) or g = w (ε = −1)
    let letters = r.letters();
    let w: Word = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
    let def = if letters[pos].inverse { w } else { w.inverse() };

    let n = p.generator_count() as u32;
    let renumber = |x: u32| if x > g { x - 1 } else { x };
    let def_new: Word = def
        .letters()
        .iter()
        .map(|l| Letter::new(renumber(l.generator), l.inverse))
        .collect();
    let images: Vec<Word> = (0..n)
        .map(|x| if x == g { def_new.clone() } else { Word::generator(renumber(x)) })
        .collect();
    let mut rels = Vec::with_capacity(p.relators().len() - 1);
    for (i, rel) in p.relators().iter().enumerate() {
        if i == rel_idx {
            continue;
        }
        let s = rel.substitute(&images);
        if s.len() > MAX_WORD_LEN {
            return Err(Error::ResourceLimit("relator grew beyond the word cap during elimination".into()));
        }
        rels.push(s);
    }
    let mut names = p.names().to_vec();
    names.remove(g as usize);
    rebuild(p, names, rels, images)
}

fn rebuild(p: &Presentation, names: Vec<String>, rels: Vec<Word>, images: Vec<Word>) -> Result<Rewritten> {
    let mut q = Presentation::with_names(names, rels)?;
    q.metadata = p.metadata.clone();
    Ok(Rewritten {
        presentation: q,
        images,
        applied: true,
    })
}

/// Greedy simplification: drop trivial and duplicate relators, then
/// eliminate the lowest-index generator that occurs exactly once in some
/// relator (using the shortest such relator), until neither applies.
pub fn simplify(p: &Presentation) -> Result<Rewritten> {
    let mut acc = Rewritten::unchanged(p);
    loop {
        let cur = &acc.presentation;
        let dups = redundant_relators(cur);
        if !dups.is_empty() {
            let keep: Vec<Word> = cur
                .relators()
                .iter()
                .enumerate()
                .filter(|(i, _)| !dups.contains(i))
                .map(|(_, r)| r.clone())
                .collect();
            let step = rebuild(cur, cur.names().to_vec(), keep, identity_images(cur.generator_count()))?;
            acc = acc.then(step);
            continue;
        }
        let next = (0..cur.generator_count() as u32).find_map(|g| definition_for(cur, g).map(|r| (g, r)));
        match next {
            Some((g, r)) => {
                let step = eliminate(cur, g, r)?;
                acc = acc.then(step);
            }
            None => return Ok(acc),
        }
    }
}
