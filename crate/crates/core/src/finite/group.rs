use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Element id inside a [`FiniteGroup`]; the identity is always `0`.
pub type Elem = u32;

/// Largest order for which a multiplication table is materialized.
pub const MAX_TABLE_ORDER: usize = 2520;

/// Largest degree accepted for user-supplied permutation generators.
pub const MAX_PERM_DEGREE: usize = 12;

/// How to build a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Alternating(usize),
    Symmetric(usize),
    /// Permutation generators, 0-based images on `degree` points.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// Explicit multiplication table, `table[a][b] = a·b`.
    Table(Vec<Vec<usize>>),
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `A4`, `S4`, `Z6`, `D5`, or `perm:(1 2 3)(4 5),(1 2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("perm:") {
            return parse_perm_list(body);
        }
        let bad = || Error::InvalidGroup(format!("unrecognized group spec {s:?}"));
        let mut cs = s.chars();
        let family = cs.next().ok_or_else(bad)?;
        let n: usize = cs.as_str().parse().map_err(|_| bad())?;
        let spec = match family {
            'Z' | 'C' => GroupSpec::Cyclic(n),
            'D' => GroupSpec::Dihedral(n),
            'A' => GroupSpec::Alternating(n),
            'S' => GroupSpec::Symmetric(n),
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

fn parse_perm_list(body: &str) -> Result<GroupSpec> {
    let mut cycles_per_gen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::new();
    let mut rest = body.trim();
    let err = |m: &str| Error::InvalidGroup(format!("bad permutation list {body:?}: {m}"));
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix(',') {
            cycles_per_gen.push(std::mem::take(&mut cur));
            rest = r.trim_start();
            continue;
        }
        let r = rest.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let close = r.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let pts = r[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err("non-numeric point")))
            .collect::<Result<Vec<_>>>()?;
        if pts.contains(&0) {
            return Err(err("points are 1-based"));
        }
        cur.push(pts);
        rest = r[close + 1..].trim_start();
    }
    cycles_per_gen.push(cur);
    let degree = cycles_per_gen.iter().flatten().flatten().copied().max().unwrap_or(1);
    let mut generators = Vec::new();
    for cycles in cycles_per_gen {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for c in &cycles {
            for (i, &p) in c.iter().enumerate() {
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(err("point repeated within a generator"));
                }
                img[p - 1] = c[(i + 1) % c.len()] - 1;
            }
        }
        generators.push(img);
    }
    Ok(GroupSpec::Permutations { degree, generators })
}

/// A finite group materialized as a multiplication table.
///
/// Elements are numbered in breadth-first order from the generators, the
/// identity first, ties broken by the lexicographic order of the
/// permutation images, so numbering is reproducible.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_order: Vec<u32>,
    generators: Vec<Elem>,
    perms: Vec<Vec<u16>>,
    show_perms: bool,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(n) => {
                let n = *n;
                if n == 0 {
                    return Err(Error::InvalidGroup("Z0 is not finite".into()));
                }
                let g: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                // Z1 has no non-trivial generator
                let gens = if n == 1 { vec![] } else { vec![g] };
                FiniteGroup::from_perms(format!("Z{n}"), n, &gens, true)
            }
            GroupSpec::Dihedral(n) => {
                let n = *n;
                if n < 1 {
                    return Err(Error::InvalidGroup("D0 is undefined".into()));
                }
                if n <= 2 {
                    // D1 ≅ Z2, D2 ≅ Z2×Z2; act on 4 points to stay faithful
                    let gens: Vec<Vec<usize>> = if n == 1 {
                        vec![vec![1, 0]]
                    } else {
                        vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]
                    };
                    let deg = gens[0].len();
                    return FiniteGroup::from_perms(format!("D{n}"), deg, &gens, true);
                }
                let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                FiniteGroup::from_perms(format!("D{n}"), n, &[rot, refl], true)
            }
            GroupSpec::Alternating(n) => {
                let n = *n;
                if !(1..=6).contains(&n) {
                    return Err(Error::InvalidGroup(format!("A{n} is outside the supported range n ≤ 6")));
                }
                let gens: Vec<Vec<usize>> = if n < 3 {
                    vec![]
                } else if n == 3 {
                    vec![cycle(n, &[0, 1, 2])]
                } else if n % 2 == 1 {
                    vec![cycle(n, &[0, 1, 2]), cycle(n, &(0..n).collect::<Vec<_>>())]
                } else {
                    vec![cycle(n, &[0, 1, 2]), cycle(n, &(1..n).collect::<Vec<_>>())]
                };
                FiniteGroup::from_perms(format!("A{n}"), n.max(1), &gens, true)
            }
            GroupSpec::Symmetric(n) => {
                let n = *n;
                if !(1..=5).contains(&n) {
                    return Err(Error::InvalidGroup(format!("S{n} is outside the supported range n ≤ 5")));
                }
                let gens: Vec<Vec<usize>> = match n {
                    1 => vec![],
                    2 => vec![cycle(2, &[0, 1])],
                    _ => vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())],
                };
                FiniteGroup::from_perms(format!("S{n}"), n, &gens, true)
            }
            GroupSpec::Permutations { degree, generators } => {
                if *degree > MAX_PERM_DEGREE {
                    return Err(Error::InvalidGroup(format!(
                        "permutation degree {degree} exceeds {MAX_PERM_DEGREE}"
                    )));
                }
                for g in generators {
                    check_perm(g, *degree)?;
                }
                let name = format!("perm:{}", generators.iter().map(|g| cycle_string(g)).collect::<Vec<_>>().join(","));
                FiniteGroup::from_perms(name, *degree, generators, true)
            }
            GroupSpec::Table(t) => FiniteGroup::from_table(t),
        }
    }

    fn from_table(t: &[Vec<usize>]) -> Result<Self> {
        let n = t.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!("table order {n} outside 1..={MAX_TABLE_ORDER}")));
        }
        for row in t {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            check_perm(row, n).map_err(|_| Error::InvalidGroup("table row is not a permutation".into()))?;
        }
        for c in 0..n {
            let col: Vec<usize> = t.iter().map(|r| r[c]).collect();
            check_perm(&col, n).map_err(|_| Error::InvalidGroup("table column is not a permutation".into()))?;
        }
        (0..n)
            .find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let assoc = |a: usize, b: usize, c: usize| t[t[a][b]][c] == t[a][t[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        // right-regular representation x ↦ x·a, then greedy generators in input order
        let regular: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|x| t[x][a]).collect()).collect();
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut covered = 1usize;
        for r in &regular {
            if covered == n {
                break;
            }
            let mut trial = gens.clone();
            trial.push(r.clone());
            let size = closure_size(&trial, n);
            if size > covered {
                covered = size;
                gens = trial;
            }
        }
        FiniteGroup::from_perms(format!("table{n}"), n, &gens, false)
    }

    fn from_perms(name: String, degree: usize, gens: &[Vec<usize>], show_perms: bool) -> Result<Self> {
        let gens16: Vec<Vec<u16>> = gens.iter().map(|g| g.iter().map(|&x| x as u16).collect()).collect();
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut index: HashMap<Vec<u16>, Elem> = HashMap::new();
        let mut perms = vec![id.clone()];
        let mut bfs_parent = vec![(0, 0)];
        index.insert(id, 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut level: Vec<(Vec<u16>, (Elem, u32))> = Vec::new();
            let mut pending = std::collections::HashSet::new();
            for &e in &frontier {
                for (k, g) in gens16.iter().enumerate() {
                    let p = compose(&perms[e], g);
                    if !index.contains_key(&p) && pending.insert(p.clone()) {
                        level.push((p, (e as Elem, k as u32)));
                    }
                }
            }
            level.sort_by(|a, b| a.0.cmp(&b.0));
            frontier.clear();
            for (p, parent) in level {
                let id = perms.len();
                if id >= MAX_TABLE_ORDER {
                    return Err(Error::ResourceLimit(format!(
                        "closure exceeds the {MAX_TABLE_ORDER}-element table limit"
                    )));
                }
                index.insert(p.clone(), id as Elem);
                perms.push(p);
                bfs_parent.push(parent);
                frontier.push(id);
            }
        }
        let n = perms.len();
        // right multiplication by generators, then mul[a][b] along b's BFS word
        let right: Vec<Vec<Elem>> = (0..n)
            .map(|e| gens16.iter().map(|g| index[&compose(&perms[e], g)]).collect())
            .collect();
        let mut mul = vec![0 as Elem; n * n];
        for a in 0..n {
            mul[a * n] = a as Elem;
            for b in 1..n {
                let (p, k) = bfs_parent[b];
                let ap = mul[a * n + p as usize];
                mul[a * n + b] = right[ap as usize][k as usize];
            }
        }
        let mut inv = vec![0 as Elem; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("group has inverses") as Elem;
        }
        let mut elem_order = vec![1u32; n];
        for a in 0..n {
            let (mut x, mut k) = (a, 1u32);
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        let generators = (0..gens16.len())
            .map(|k| index[&gens16[k]])
            .collect();
        Ok(FiniteGroup {
            name,
            order: n,
            mul,
            inv,
            elem_order,
            generators,
            perms,
            show_perms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// The flat row-major table, `table[a·|G| + b] = a·b`.
    pub fn table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn inverse_table(&self) -> &[Elem] {
        &self.inv
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.elem_order[a as usize]
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// `c⁻¹·a·c`
    pub fn conj(&self, a: Elem, c: Elem) -> Elem {
        self.mul(self.mul(self.inv(c), a), c)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&g| self.generators.iter().all(|&h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Elements of the conjugacy classes, each sorted, classes ordered by
    /// their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for a in self.elements() {
            if seen[a as usize] {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|c| self.conj(a, c)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x as usize] = true;
            }
            out.push(class);
        }
        out
    }

    /// Cycle notation (1-based) for permutation groups, `e<i>` otherwise.
    pub fn element_label(&self, a: Elem) -> String {
        if self.show_perms {
            let p: Vec<usize> = self.perms[a as usize].iter().map(|&x| x as usize).collect();
            cycle_string(&p)
        } else {
            format!("e{a}")
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FiniteGroup::build(&s.parse::<GroupSpec>()?)
    }
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn cycle(degree: usize, pts: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = (0..degree).collect();
    for (i, &p) in pts.iter().enumerate() {
        img[p] = pts[(i + 1) % pts.len()];
    }
    img
}

fn check_perm(p: &[usize], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidGroup(format!("permutation of length {} on {degree} points", p.len())));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidGroup(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

fn closure_size(gens: &[Vec<usize>], n: usize) -> usize {
    // the regular action is free, so an element is determined by the image of point 0
    let mut stack: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut firsts = std::collections::HashSet::new();
    firsts.insert(0usize);
    while let Some(p) = stack.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if firsts.insert(q[0]) {
                stack.push(q);
            }
        }
    }
    firsts.len()
}

pub(crate) fn cycle_string(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
