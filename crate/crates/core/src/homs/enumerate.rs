use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{subgroup_closure, Elem, FiniteGroup};
use crate::group::{Presentation, Word};
use crate::homs::plan::SearchPlan;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// A homomorphism from a presentation to a finite group, given by the
/// image of every generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Homomorphism {
    pub images: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(images: Vec<Elem>) -> Self {
        Homomorphism { images }
    }

    /// Evaluate a word left to right.
    pub fn eval(&self, g: &FiniteGroup, w: &Word) -> Result<Elem> {
        let mut cur = 0;
        for l in w.letters() {
            let x = *self.images.get(l.generator as usize).ok_or_else(|| {
                Error::MalformedWord(format!(
                    "word uses generator {} but the homomorphism has {} images",
                    l.generator + 1,
                    self.images.len()
                ))
            })?;
            cur = g.mul(cur, if l.inverse { g.inv(x) } else { x });
        }
        Ok(cur)
    }

    /// True iff every relator of `p` maps to the identity.
    pub fn respects(&self, p: &Presentation, g: &FiniteGroup) -> bool {
        self.images.len() == p.generator_count()
            && p.relators().iter().all(|r| self.eval(g, r) == Ok(0))
    }
}

/// Evaluate each word under `h`.
pub fn restrict_along(h: &Homomorphism, g: &FiniteGroup, words: &[Word]) -> Result<Vec<Elem>> {
    words.iter().map(|w| h.eval(g, w)).collect()
}

/// True iff the generator images generate all of `g`.
pub fn is_surjective(h: &Homomorphism, g: &FiniteGroup) -> bool {
    subgroup_closure(g, &h.images).is_whole()
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs inline.
    pub threads: Option<usize>,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Relator letters compiled to (generator, inverse) pairs.
struct Compiled {
    relators: Vec<Vec<(usize, bool)>>,
}

struct Searcher<'a> {
    g: &'a FiniteGroup,
    plan: &'a SearchPlan,
    compiled: Compiled,
    budget: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

const FLUSH_EVERY: u64 = 4096;

impl Searcher<'_> {
    fn holds(&self, r: usize, img: &[Elem], inv: &[Elem]) -> bool {
        let n = self.g.order();
        let table = self.g.table();
        let mut cur = 0usize;
        for &(gen, neg) in &self.compiled.relators[r] {
            let x = if neg { inv[gen] } else { img[gen] };
            cur = table[cur * n + x as usize] as usize;
        }
        cur == 0
    }

    /// Depth-first search below a fixed prefix; calls `emit` per hom.
    fn run(&self, first: Option<Elem>, emit: &mut dyn FnMut(&[Elem])) {
        let gens = self.plan.order.len();
        let mut img = vec![0 as Elem; gens];
        let mut inv = vec![0 as Elem; gens];
        let order = self.g.order() as Elem;
        let mut local = 0u64;
        // next candidate per depth
        let mut next = vec![0 as Elem; gens + 1];
        let start_depth = match first {
            Some(v) => {
                let gen = self.plan.order[0] as usize;
                img[gen] = v;
                inv[gen] = self.g.inv(v);
                local += 1;
                if !self.plan.checks[1].iter().all(|&r| self.holds(r, &img, &inv)) {
                    self.flush(local);
                    return;
                }
                1
            }
            None => 0,
        };
        if gens == start_depth {
            emit(&img);
            self.flush(local);
            return;
        }
        let mut depth = start_depth;
        next[depth] = 0;
        loop {
            if next[depth] == order {
                if depth == start_depth {
                    break;
                }
                depth -= 1;
                continue;
            }
            let v = next[depth];
            next[depth] += 1;
            local += 1;
            if local >= FLUSH_EVERY {
                if self.flush(local) {
                    return;
                }
                local = 0;
            }
            let gen = self.plan.order[depth] as usize;
            img[gen] = v;
            inv[gen] = self.g.inv(v);
            if !self.plan.checks[depth + 1].iter().all(|&r| self.holds(r, &img, &inv)) {
                continue;
            }
            if depth + 1 == gens {
                emit(&img);
            } else {
                depth += 1;
                next[depth] = 0;
            }
        }
        self.flush(local);
    }

    /// Add to the shared node count; true when the budget is exhausted.
    fn flush(&self, local: u64) -> bool {
        let total = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if total > self.budget {
            self.abort.store(true, Ordering::Relaxed);
        }
        self.abort.load(Ordering::Relaxed)
    }
}

fn searcher<'a>(p: &Presentation, g: &'a FiniteGroup, plan: &'a SearchPlan, budget: u64) -> Searcher<'a> {
    let compiled = Compiled {
        relators: p
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|l| (l.generator as usize, l.inverse)).collect())
            .collect(),
    };
    Searcher {
        g,
        plan,
        compiled,
        budget,
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn drive<T: Send>(
    s: &Searcher<'_>,
    opts: SearchOptions,
    per_branch: impl Fn(&Searcher<'_>, Option<Elem>) -> T + Sync,
) -> Result<Vec<T>> {
    let parts = if s.plan.order.is_empty() || opts.threads == Some(1) {
        vec![per_branch(s, None)]
    } else {
        let order = s.g.order() as Elem;
        with_pool(opts.threads, || {
            (0..order).into_par_iter().map(|v| per_branch(s, Some(v))).collect::<Vec<T>>()
        })?
    };
    if s.abort.load(Ordering::Relaxed) {
        return Err(Error::BudgetExhausted {
            budget: s.budget,
            visited: s.nodes.load(Ordering::Relaxed),
        });
    }
    Ok(parts)
}

/// All homomorphisms `p → g`, sorted by image vector.
///
/// Generators are assigned in plan order and each relator is evaluated as
/// soon as its generators are all assigned. Work is split over the image of
/// the first planned generator; output does not depend on thread count.
pub fn enumerate_homomorphisms(
    p: &Presentation,
    g: &FiniteGroup,
    plan: &SearchPlan,
    opts: SearchOptions,
) -> Result<Vec<Homomorphism>> {
    check_plan(p, plan)?;
    let s = searcher(p, g, plan, opts.node_budget);
    let parts = drive(&s, opts, |s, first| {
        let mut found = Vec::new();
        s.run(first, &mut |img| found.push(Homomorphism::new(img.to_vec())));
        found
    })?;
    let mut all: Vec<Homomorphism> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all)
}

/// `|Hom(p, g)|` without materializing the list.
pub fn count_homomorphisms(p: &Presentation, g: &FiniteGroup, plan: &SearchPlan, opts: SearchOptions) -> Result<u64> {
    check_plan(p, plan)?;
    let s = searcher(p, g, plan, opts.node_budget);
    let parts = drive(&s, opts, |s, first| {
        let mut n = 0u64;
        s.run(first, &mut |_| n += 1);
        n
    })?;
    Ok(parts.into_iter().sum())
}

fn check_plan(p: &Presentation, plan: &SearchPlan) -> Result<()> {
    let n = p.generator_count();
    let mut seen = vec![false; n];
    let valid = plan.order.len() == n
        && plan.checks.len() == n + 1
        && plan.order.iter().all(|&g| (g as usize) < n && !std::mem::replace(&mut seen[g as usize], true));
    let covered: usize = plan.checks.iter().map(|c| c.len()).sum();
    if !valid || covered != p.relators().len() {
        return Err(Error::Precondition("search plan does not match the presentation".into()));
    }
    Ok(())
}
