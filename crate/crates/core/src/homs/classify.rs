use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{automorphism_group, inner_automorphisms, Automorphism, FiniteGroup};
use crate::homs::enumerate::Homomorphism;

/// Which automorphisms of the target identify homomorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifyMode {
    None,
    Conjugation,
    Automorphism,
}

impl FromStr for ClassifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "raw" => Ok(ClassifyMode::None),
            "conj" | "conjugation" | "inner" => Ok(ClassifyMode::Conjugation),
            "aut" | "automorphism" => Ok(ClassifyMode::Automorphism),
            _ => Err(Error::Invalid(format!("unknown classification mode {s:?} (none|conj|aut)"))),
        }
    }
}

impl fmt::Display for ClassifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassifyMode::None => "none",
            ClassifyMode::Conjugation => "conj",
            ClassifyMode::Automorphism => "aut",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomOrbit {
    /// Lexicographically least image vector in the orbit.
    pub representative: Homomorphism,
    pub size: usize,
    pub mode: ClassifyMode,
}

/// The automorphisms acting in `mode`.
pub fn mode_automorphisms(g: &FiniteGroup, mode: ClassifyMode) -> Result<Vec<Automorphism>> {
    match mode {
        ClassifyMode::None => Ok(vec![g.elements().collect()]),
        ClassifyMode::Conjugation => Ok(inner_automorphisms(g)),
        ClassifyMode::Automorphism => automorphism_group(g),
    }
}

/// Partition `homs` into orbits under post-composition with the
/// automorphisms selected by `mode`. Orbits are ordered by representative.
pub fn classify(homs: &[Homomorphism], g: &FiniteGroup, mode: ClassifyMode) -> Result<Vec<HomOrbit>> {
    let auts = mode_automorphisms(g, mode)?;
    Ok(classify_with(homs, &auts, mode))
}

pub fn classify_with(homs: &[Homomorphism], auts: &[Automorphism], mode: ClassifyMode) -> Vec<HomOrbit> {
    let index: HashMap<&[u32], usize> = homs.iter().enumerate().map(|(i, h)| (h.images.as_slice(), i)).collect();
    let mut done = vec![false; homs.len()];
    let mut orbits = Vec::new();
    for (i, h) in homs.iter().enumerate() {
        if done[i] {
            continue;
        }
        let orbit: BTreeSet<Vec<u32>> = auts
            .iter()
            .map(|phi| h.images.iter().map(|&x| phi[x as usize]).collect())
            .collect();
        for img in &orbit {
            if let Some(&j) = index.get(img.as_slice()) {
                done[j] = true;
            }
        }
        let rep = orbit.iter().next().cloned().unwrap_or_default();
        orbits.push(HomOrbit {
            representative: Homomorphism::new(rep),
            size: orbit.len(),
            mode,
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Presentation;
    use crate::homs::{enumerate_homomorphisms, plan_search, SearchOptions};

    fn all_homs(p: &Presentation, g: &FiniteGroup) -> Vec<Homomorphism> {
        enumerate_homomorphisms(p, g, &plan_search(p), SearchOptions::default()).unwrap()
    }

    #[test]
    fn z_into_a4() {
        let a4: FiniteGroup = "A4".parse().unwrap();
        let homs = all_homs(&Presentation::free_group(1), &a4);
        let aut = classify(&homs, &a4, ClassifyMode::Automorphism).unwrap();
        assert_eq!(aut.len(), 3);
        let mut sizes: Vec<usize> = aut.iter().map(|o| o.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 8]);
        let conj = classify(&homs, &a4, ClassifyMode::Conjugation).unwrap();
        assert_eq!(conj.len(), a4.conjugacy_classes().len());
        assert_eq!(conj.len(), 4);
        let none = classify(&homs, &a4, ClassifyMode::None).unwrap();
        assert_eq!(none.len(), 12);
        assert!(none.iter().all(|o| o.size == 1));
    }

    #[test]
    fn orbit_stabilizer() {
        let s4: FiniteGroup = "S4".parse().unwrap();
        let homs = all_homs(&Presentation::free_group(2), &s4);
        let auts = automorphism_group(&s4).unwrap();
        let orbits = classify(&homs, &s4, ClassifyMode::Automorphism).unwrap();
        assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), homs.len());
        assert!(orbits.iter().all(|o| auts.len().is_multiple_of(o.size)));
        assert!(orbits.windows(2).all(|w| w[0].representative < w[1].representative));
    }

    #[test]
    fn modes_parse() {
        assert_eq!("aut".parse::<ClassifyMode>().unwrap(), ClassifyMode::Automorphism);
        assert_eq!("conj".parse::<ClassifyMode>().unwrap(), ClassifyMode::Conjugation);
        assert_eq!("none".parse::<ClassifyMode>().unwrap(), ClassifyMode::None);
        assert!("all".parse::<ClassifyMode>().is_err());
    }
}
