use std::fmt;

use crate::error::{Error, Result};
use crate::finite::group::{Elem, FiniteGroup};

/// A subgroup of a [`FiniteGroup`], stored as a bitset over element ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Vec<u64>,
    order: usize,
    group_order: usize,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut s = Subgroup::empty(g.order());
        s.insert(0);
        s
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut s = Subgroup::empty(g.order());
        for a in g.elements() {
            s.insert(a);
        }
        s
    }

    fn empty(n: usize) -> Self {
        Subgroup {
            bits: vec![0; n.div_ceil(64)],
            order: 0,
            group_order: n,
        }
    }

    fn insert(&mut self, a: Elem) -> bool {
        let (w, b) = (a as usize / 64, a as usize % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.order += 1;
        }
        fresh
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        let a = a as usize;
        a < self.group_order && self.bits[a / 64] & (1 << (a % 64)) != 0
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.group_order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.group_order as Elem).filter(|&a| self.contains(a))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// Smallest subgroup containing `seed`.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[Elem]) -> Subgroup {
    let mut s = Subgroup::empty(g.order());
    s.insert(0);
    let gens: Vec<Elem> = seed.iter().copied().filter(|&x| x != 0).collect();
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &t in &gens {
            let y = g.mul(x, t);
            if s.insert(y) {
                queue.push(y);
            }
        }
    }
    s
}

/// Smallest subgroup of `ambient` containing `seeds` and normalized by
/// every element of `ambient`.
pub fn normal_closure_within(g: &FiniteGroup, seeds: &[Elem], ambient: &Subgroup) -> Result<Subgroup> {
    if let Some(bad) = seeds.iter().find(|&&s| !ambient.contains(s)) {
        return Err(Error::Precondition(format!("seed element {bad} lies outside the ambient subgroup")));
    }
    let mut conjugates: Vec<Elem> = Vec::new();
    for &s in seeds {
        for c in ambient.elements() {
            conjugates.push(g.conj(s, c));
        }
    }
    conjugates.sort_unstable();
    conjugates.dedup();
    Ok(subgroup_closure(g, &conjugates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a4() -> FiniteGroup {
        "A4".parse().unwrap()
    }

    fn of_order(g: &FiniteGroup, k: u32) -> Vec<Elem> {
        g.elements().filter(|&a| g.element_order(a) == k).collect()
    }

    fn check_invariants(g: &FiniteGroup, h: &Subgroup) {
        assert!(h.contains(0));
        for a in h.elements() {
            assert!(h.contains(g.inv(a)));
            for b in h.elements() {
                assert!(h.contains(g.mul(a, b)));
            }
        }
        assert_eq!(g.order() % h.order(), 0, "Lagrange");
    }

    #[test]
    fn closure_examples() {
        let g = a4();
        assert!(subgroup_closure(&g, &[]).is_trivial());
        let three = of_order(&g, 3);
        assert_eq!(subgroup_closure(&g, &three[..1]).order(), 3);
        let two = of_order(&g, 2);
        assert_eq!(two.len(), 3);
        assert_eq!(subgroup_closure(&g, &two[..2]).order(), 4);
        assert!(subgroup_closure(&g, &[three[0], two[0]]).is_whole());
    }

    #[test]
    fn normal_closure_examples() {
        let g = a4();
        let whole = Subgroup::whole(&g);
        assert!(normal_closure_within(&g, &[0], &whole).unwrap().is_trivial());
        let two = of_order(&g, 2);
        let v4 = normal_closure_within(&g, &two[..1], &whole).unwrap();
        assert_eq!(v4.order(), 4);
        let t = of_order(&g, 3)[0];
        let z3 = subgroup_closure(&g, &[t]);
        assert_eq!(normal_closure_within(&g, &[t], &z3).unwrap(), z3);
        assert!(normal_closure_within(&g, &two[..1], &z3).is_err());
    }

    /// Fixpoint oracle: grow a set under products and conjugation until stable.
    fn normal_closure_oracle(g: &FiniteGroup, seeds: &[Elem]) -> Vec<Elem> {
        let mut set: std::collections::BTreeSet<Elem> = seeds.iter().copied().collect();
        set.insert(0);
        loop {
            let before = set.len();
            let cur: Vec<Elem> = set.iter().copied().collect();
            for &a in &cur {
                for &b in &cur {
                    set.insert(g.mul(a, b));
                }
                for c in g.elements() {
                    set.insert(g.conj(a, c));
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    #[test]
    fn random_seeds_in_builtins() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["Z6", "S3", "A4", "S4", "D5", "A5"] {
            let g: FiniteGroup = name.parse().unwrap();
            let whole = Subgroup::whole(&g);
            for _ in 0..1000 {
                let k = rng.gen_range(0..4);
                let seed: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..g.order() as Elem)).collect();
                let h = subgroup_closure(&g, &seed);
                assert!(seed.iter().all(|&s| h.contains(s)));
                if rng.gen_range(0..20) == 0 {
                    check_invariants(&g, &h);
                    let n = normal_closure_within(&g, &seed, &whole).unwrap();
                    assert_eq!(n.elements().collect::<Vec<_>>(), normal_closure_oracle(&g, &seed));
                }
            }
        }
    }
}
