use std::fmt;

use serde::Serialize;

use crate::tree::based::BasedTree;

/// Canonical encoding of a based edge-labeled tree. Two trees have equal
/// codes iff they are isomorphic as based labeled trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub(crate) fn from_raw(code: String) -> Self {
        CanonicalCode(code)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Node code: `(` then the sorted list of `label:childcode` then `)`.
/// The single-node tree encodes as `()`. Payloads are ignored.
pub fn canonical_code(t: &BasedTree) -> CanonicalCode {
    let n = t.node_count();
    let mut codes: Vec<Option<String>> = vec![None; n];
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, p, _) in t.edges() {
        kids[p].push(c);
    }
    for &v in t.bfs_order().iter().rev() {
        let mut parts: Vec<String> = kids[v]
            .iter()
            .map(|&c| format!("{}:{}", t.label(c).unwrap_or(0), codes[c].take().unwrap_or_default()))
            .collect();
        parts.sort_unstable();
        codes[v] = Some(format!("({})", parts.concat()));
    }
    CanonicalCode(codes[0].take().unwrap_or_default())
}

pub fn are_isomorphic(a: &BasedTree, b: &BasedTree) -> bool {
    a.node_count() == b.node_count() && canonical_code(a) == canonical_code(b)
}

/// Code of the underlying unbased labeled tree: the least code over all
/// choices of base.
pub fn unbased_code(t: &BasedTree) -> CanonicalCode {
    (0..t.node_count())
        .map(|v| canonical_code(&t.rerooted(v).expect("node in range").0))
        .min()
        .expect("tree has a node")
}

pub fn are_isomorphic_unbased(a: &BasedTree, b: &BasedTree) -> bool {
    a.node_count() == b.node_count() && unbased_code(a) == unbased_code(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tree(rng: &mut ChaCha8Rng, n: usize, max_label: u32) -> BasedTree {
        let edges: Vec<(usize, u32)> = (1..n).map(|i| (rng.gen_range(0..i), rng.gen_range(0..=max_label))).collect();
        BasedTree::from_edges(&edges).unwrap()
    }

    /// Relabel non-base nodes by a random permutation.
    fn shuffle(rng: &mut ChaCha8Rng, t: &BasedTree) -> BasedTree {
        let n = t.node_count();
        let mut perm: Vec<usize> = (1..n).collect();
        perm.shuffle(rng);
        let new_id = |v: usize| if v == 0 { 0 } else { perm[v - 1] };
        let mut parents = vec![None; n];
        let mut labels = vec![None; n];
        for (c, p, l) in t.edges() {
            parents[new_id(c)] = Some(new_id(p));
            labels[new_id(c)] = Some(l);
        }
        BasedTree::from_parts(parents, labels).unwrap()
    }

    /// Brute force over all base-fixing bijections.
    fn oracle_isomorphic(a: &BasedTree, b: &BasedTree) -> bool {
        let n = a.node_count();
        if n != b.node_count() {
            return false;
        }
        fn permutations(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(k - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        permutations(n - 1).into_iter().any(|perm| {
            let f = |v: usize| if v == 0 { 0 } else { perm[v - 1] + 1 };
            (1..n).all(|v| b.parent(f(v)) == a.parent(v).map(f) && b.label(f(v)) == a.label(v))
        })
    }

    #[test]
    fn examples() {
        assert_eq!(canonical_code(&BasedTree::single()).as_str(), "()");
        let star = BasedTree::from_edges(&[(0, 1), (0, 1), (0, 1)]).unwrap();
        let path = BasedTree::from_edges(&[(0, 1), (1, 1), (2, 1)]).unwrap();
        assert_ne!(canonical_code(&star), canonical_code(&path));
        // nested tori vs two unnested tori
        let shell = BasedTree::from_edges(&[(0, 1), (1, 1)]).unwrap();
        let hopf = BasedTree::from_edges(&[(0, 1), (0, 1)]).unwrap();
        assert!(!are_isomorphic(&shell, &hopf));
        assert!(are_isomorphic_unbased(&shell, &hopf));
        let relabeled = BasedTree::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert!(!are_isomorphic(&shell, &relabeled));
        assert!(!are_isomorphic(&shell, &path));
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=12);
            let t = random_tree(&mut rng, n, 2);
            let code = canonical_code(&t);
            for _ in 0..10 {
                let s = shuffle(&mut rng, &t);
                assert_eq!(canonical_code(&s), code);
                assert_eq!(unbased_code(&s), unbased_code(&t));
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..600 {
            let n = rng.gen_range(1..=8);
            let a = random_tree(&mut rng, n, 1);
            // perturbations: a fresh random tree, one label flipped, one node moved
            let mut candidates = vec![random_tree(&mut rng, n, 1), shuffle(&mut rng, &a)];
            if n > 1 {
                let v = rng.gen_range(1..n);
                let mut edges: Vec<(usize, u32)> = a.edges().map(|(_, p, l)| (p, l)).collect();
                edges[v - 1].1 ^= 1;
                candidates.push(BasedTree::from_edges(&edges).unwrap());
                let mut moved: Vec<(usize, u32)> = a.edges().map(|(_, p, l)| (p, l)).collect();
                moved[v - 1].0 = rng.gen_range(0..v);
                candidates.push(BasedTree::from_edges(&moved).unwrap());
            }
            for b in &candidates {
                assert_eq!(are_isomorphic(&a, b), oracle_isomorphic(&a, b), "{a} vs {b}");
            }
        }
    }
}
