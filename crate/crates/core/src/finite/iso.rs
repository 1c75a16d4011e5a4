use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::group::{Elem, FiniteGroup};
use crate::finite::subgroup::Subgroup;

/// Largest subgroup order [`iso_class`] will label.
pub const MAX_LABELED_ORDER: usize = 32;

/// Canonical name of an abstract isomorphism type: `0`, `Z2`, `Z2xZ2`,
/// `S3`, `A4`, …
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsoClassLabel(pub String);

impl IsoClassLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for IsoClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for IsoClassLabel {
    fn from(s: &str) -> Self {
        IsoClassLabel(s.to_string())
    }
}

/// Label the isomorphism type of `h`.
///
/// Abelian groups are named by invariant factors. Non-abelian groups of
/// order ≤ 12 are told apart by their number of involutions; larger ones
/// fall back to an exhaustive canonical Cayley table.
pub fn iso_class(g: &FiniteGroup, h: &Subgroup) -> Result<IsoClassLabel> {
    let n = h.order();
    if n > MAX_LABELED_ORDER {
        return Err(Error::ResourceLimit(format!(
            "isomorphism labels limited to order ≤ {MAX_LABELED_ORDER}, got {n}"
        )));
    }
    let elems: Vec<Elem> = h.elements().collect();
    let abelian = elems.iter().all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    let orders: Vec<u32> = elems.iter().map(|&a| g.element_order(a)).collect();
    if abelian {
        return Ok(IsoClassLabel(abelian_label(&invariant_factors(n, &orders))));
    }
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let name = match (n, involutions) {
        (6, _) => Some("S3"),
        (8, 5) => Some("D4"),
        (8, 1) => Some("Q8"),
        (10, _) => Some("D5"),
        (12, 3) => Some("A4"),
        (12, 7) => Some("D6"),
        (12, 1) => Some("Dic3"),
        _ => None,
    };
    if let Some(name) = name {
        return Ok(IsoClassLabel(name.into()));
    }
    let code = canonical_table(g, &elems);
    for (c, label) in catalog() {
        if *c == code {
            return Ok(IsoClassLabel(label.clone()));
        }
    }
    Ok(IsoClassLabel(format!("G{n}#{:016x}", fnv1a(&code))))
}

/// Invariant factors `d₁ | d₂ | …` (all > 1) of an abelian group from its
/// element orders.
fn invariant_factors(n: usize, orders: &[u32]) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime, the partition of exponents of cyclic p-factors
    let mut factors: Vec<u64> = Vec::new();
    for p in primes {
        let mut prev_log = 0;
        let mut at_least = Vec::new();
        let mut pk = 1u64;
        loop {
            pk *= p as u64;
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o as u64)).count();
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            if log == prev_log {
                break;
            }
            at_least.push(log - prev_log);
            prev_log = log;
        }
        // at_least[k] = number of cyclic factors of order ≥ p^{k+1}
        let parts = at_least.first().copied().unwrap_or(0);
        let mut exps = vec![0u32; parts];
        for (k, &cnt) in at_least.iter().enumerate() {
            for e in exps.iter_mut().take(cnt) {
                *e = k as u32 + 1;
            }
        }
        // exps sorted descending; merge into factors from the largest
        for (i, &e) in exps.iter().enumerate() {
            if factors.len() <= i {
                factors.push(1);
            }
            factors[i] *= (p as u64).pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors.reverse();
    factors
}

fn abelian_label(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    }
}

/// Lexicographically least relabeled Cayley table over all minimal
/// generating tuples.
fn canonical_table(g: &FiniteGroup, elems: &[Elem]) -> Vec<u8> {
    let n = elems.len();
    let local: BTreeMap<Elem, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mul = |a: usize, b: usize| local[&g.mul(elems[a], elems[b])];
    let nonid: Vec<usize> = (1..n).collect();
    let mut best: Option<Vec<u8>> = None;
    for d in 1..=5 {
        let mut tuple = vec![0usize; d];
        let mut found = false;
        for_each_tuple(&nonid, d, &mut tuple, 0, &mut |t| {
            let mut label = vec![usize::MAX; n];
            let mut order = vec![0usize];
            label[0] = 0;
            let mut i = 0;
            while i < order.len() {
                let x = order[i];
                i += 1;
                for &s in t {
                    let y = mul(x, s);
                    if label[y] == usize::MAX {
                        label[y] = order.len();
                        order.push(y);
                    }
                }
            }
            if order.len() < n {
                return;
            }
            found = true;
            let mut code = Vec::with_capacity(n * n);
            for &a in &order {
                for &b in &order {
                    code.push(label[mul(a, b)] as u8);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        if found {
            break;
        }
    }
    best.unwrap_or_default()
}

fn for_each_tuple(pool: &[usize], d: usize, tuple: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == d {
        f(tuple);
        return;
    }
    for &x in pool {
        tuple[k] = x;
        for_each_tuple(pool, d, tuple, k + 1, f);
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn catalog() -> &'static [(Vec<u8>, String)] {
    static CATALOG: OnceLock<Vec<(Vec<u8>, String)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut specs: Vec<(String, String)> = (7..=16).map(|k| (format!("D{k}"), format!("D{k}"))).collect();
        specs.push(("S4".into(), "S4".into()));
        specs.push(("perm:(1 2 3),(2 3 4),(5 6)".into(), "A4xZ2".into()));
        specs.push(("perm:(1 2 3),(4 5 6),(4 5)".into(), "Z3xS3".into()));
        specs.push(("perm:(1 2 3 4),(1 3),(5 6)".into(), "D4xZ2".into()));
        specs
            .into_iter()
            .map(|(spec, label)| {
                let grp: FiniteGroup = spec.parse().expect("catalog group builds");
                let elems: Vec<Elem> = grp.elements().collect();
                (canonical_table(&grp, &elems), label)
            })
            .collect()
    })
}
