use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finite::group::{Elem, FiniteGroup};

/// An automorphism as the image of every element id.
pub type Automorphism = Vec<Elem>;

pub const MAX_AUT_GROUP_ORDER: usize = 256;
const MAX_AUTOMORPHISMS: usize = 1_000_000;

/// Prefix subgroup `⟨g₀,…,g_k⟩` in BFS order, each element with the
/// `(parent, generator index)` it was reached from.
struct Prefix {
    order: Vec<(Elem, Elem, usize)>,
}

fn prefix_closures(g: &FiniteGroup) -> Vec<Prefix> {
    let gens = g.generators();
    (0..gens.len())
        .map(|k| {
            let mut seen = vec![false; g.order()];
            seen[0] = true;
            let mut order = vec![(0, 0, usize::MAX)];
            let mut i = 0;
            while i < order.len() {
                let x = order[i].0;
                i += 1;
                for (j, &t) in gens[..=k].iter().enumerate() {
                    let y = g.mul(x, t);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        order.push((y, x, j));
                    }
                }
            }
            Prefix { order }
        })
        .collect()
}

/// All automorphisms of `g`, found by backtracking over generator images
/// of matching element order. The identity automorphism comes first; the
/// list is sorted.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<Automorphism>> {
    if g.order() > MAX_AUT_GROUP_ORDER {
        return Err(Error::ResourceLimit(format!(
            "automorphism search limited to |G| ≤ {MAX_AUT_GROUP_ORDER}, got {}",
            g.order()
        )));
    }
    let gens = g.generators().to_vec();
    if gens.is_empty() {
        return Ok(vec![vec![0]]);
    }
    let prefixes = prefix_closures(g);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&t| g.elements().filter(|&a| g.element_order(a) == g.element_order(t)).collect())
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    let mut phi = vec![0 as Elem; g.order()];
    search(g, &gens, &prefixes, &candidates, 0, &mut images, &mut phi, &mut out)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &FiniteGroup,
    gens: &[Elem],
    prefixes: &[Prefix],
    candidates: &[Vec<Elem>],
    k: usize,
    images: &mut Vec<Elem>,
    phi: &mut Vec<Elem>,
    out: &mut Vec<Automorphism>,
) -> Result<()> {
    for &c in &candidates[k] {
        images[k] = c;
        let pre = &prefixes[k];
        let mut used = vec![false; g.order()];
        let mut ok = true;
        for &(x, parent, j) in &pre.order {
            let v = if j == usize::MAX { 0 } else { g.mul(phi[parent as usize], images[j]) };
            if std::mem::replace(&mut used[v as usize], true) {
                ok = false;
                break;
            }
            phi[x as usize] = v;
        }
        if !ok {
            continue;
        }
        let consistent = pre.order.iter().all(|&(x, _, _)| {
            (0..=k).all(|j| phi[g.mul(x, gens[j]) as usize] == g.mul(phi[x as usize], images[j]))
        });
        if !consistent {
            continue;
        }
        if k + 1 == gens.len() {
            out.push(phi.clone());
            if out.len() > MAX_AUTOMORPHISMS {
                return Err(Error::ResourceLimit(format!(
                    "more than {MAX_AUTOMORPHISMS} automorphisms"
                )));
            }
        } else {
            search(g, gens, prefixes, candidates, k + 1, images, phi, out)?;
        }
    }
    Ok(())
}

/// The distinct inner automorphisms `x ↦ c⁻¹xc`, sorted.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<Automorphism> {
    let set: BTreeSet<Automorphism> = g
        .elements()
        .map(|c| g.elements().map(|x| g.conj(x, c)).collect())
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_automorphism(g: &FiniteGroup, phi: &[Elem]) -> bool {
        let mut seen = vec![false; g.order()];
        for &v in phi {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        g.elements()
            .all(|a| g.elements().all(|b| phi[g.mul(a, b) as usize] == g.mul(phi[a as usize], phi[b as usize])))
    }

    /// Brute force over all bijections fixing the identity, for tiny groups.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, phi: &mut Vec<Elem>, used: &mut Vec<bool>, count: &mut usize) {
            let k = phi.len();
            if k == g.order() {
                if is_automorphism(g, phi) {
                    *count += 1;
                }
                return;
            }
            for v in 1..g.order() as Elem {
                if !used[v as usize] && g.element_order(v) == g.element_order(k as Elem) {
                    used[v as usize] = true;
                    phi.push(v);
                    rec(g, phi, used, count);
                    phi.pop();
                    used[v as usize] = false;
                }
            }
        }
        let mut used = vec![false; g.order()];
        used[0] = true;
        let mut count = 0;
        rec(g, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn aut_counts() {
        let cases = [("Z6", 2), ("A4", 24), ("D2", 6), ("S3", 6), ("Z5", 4), ("S4", 24), ("D4", 8), ("Z1", 1)];
        for (name, n) in cases {
            let g: FiniteGroup = name.parse().unwrap();
            let auts = automorphism_group(&g).unwrap();
            assert_eq!(auts.len(), n, "{name}");
            assert!(auts.iter().all(|phi| is_automorphism(&g, phi)), "{name}");
            assert!(auts.contains(&g.elements().collect::<Vec<_>>()));
        }
        for name in ["Z6", "A4", "D2", "S3"] {
            let g: FiniteGroup = name.parse().unwrap();
            assert_eq!(brute_force_count(&g), automorphism_group(&g).unwrap().len(), "{name}");
        }
    }

    #[test]
    fn inner_automorphisms_are_listed() {
        let g: FiniteGroup = "A4".parse().unwrap();
        let inner = inner_automorphisms(&g);
        assert_eq!(inner.len(), 12);
        let all = automorphism_group(&g).unwrap();
        assert!(inner.iter().all(|i| all.contains(i)));
        let z6: FiniteGroup = "Z6".parse().unwrap();
        assert_eq!(inner_automorphisms(&z6).len(), 1);
    }

    #[test]
    fn large_group_rejected() {
        let g: FiniteGroup = "A6".parse().unwrap();
        assert!(matches!(automorphism_group(&g), Err(Error::ResourceLimit(_))));
    }
}
