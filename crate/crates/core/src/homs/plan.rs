use crate::group::Presentation;

/// Generator assignment order for the backtracking search, with the
/// relators that become fully determined after each prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchPlan {
    /// Generators in assignment order.
    pub order: Vec<u32>,
    /// `checks[k]` lists the relators whose generators all lie in the first
    /// `k` assigned generators but not in the first `k - 1`.
    pub checks: Vec<Vec<usize>>,
}

impl SearchPlan {
    /// The prefix length at which relator `r` is checked.
    pub fn check_prefix(&self, r: usize) -> Option<usize> {
        self.checks.iter().position(|c| c.contains(&r))
    }
}

/// Greedy plan: repeatedly assign the generator occurring in the most
/// relators that are not yet checkable (ties to the lowest id).
pub fn plan_search(p: &Presentation) -> SearchPlan {
    let n = p.generator_count();
    let rel_gens: Vec<Vec<u32>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut gs: Vec<u32> = r.letters().iter().map(|l| l.generator).collect();
            gs.sort_unstable();
            gs.dedup();
            gs
        })
        .collect();
    let mut assigned = vec![false; n];
    let mut checked = vec![false; rel_gens.len()];
    let mut order = Vec::with_capacity(n);
    let mut checks = vec![Vec::new(); n + 1];
    let settle = |assigned: &[bool], checked: &mut [bool], k: usize, checks: &mut Vec<Vec<usize>>| {
        for (r, gs) in rel_gens.iter().enumerate() {
            if !checked[r] && gs.iter().all(|&g| assigned[g as usize]) {
                checked[r] = true;
                checks[k].push(r);
            }
        }
    };
    settle(&assigned, &mut checked, 0, &mut checks);
    for k in 1..=n {
        let next = (0..n as u32)
            .filter(|&g| !assigned[g as usize])
            .max_by_key(|&g| {
                let pending = rel_gens
                    .iter()
                    .enumerate()
                    .filter(|(r, gs)| !checked[*r] && gs.contains(&g))
                    .count();
                (pending, std::cmp::Reverse(g))
            })
            .expect("unassigned generator remains");
        assigned[next as usize] = true;
        order.push(next);
        settle(&assigned, &mut checked, k, &mut checks);
    }
    SearchPlan { order, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;

    fn pres(n: usize, rels: &[&[i64]]) -> Presentation {
        Presentation::new(n, rels.iter().map(|r| Word::from_signed(r, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn free_group_has_no_checks() {
        let plan = plan_search(&Presentation::free_group(3));
        assert_eq!(plan.order, vec![0, 1, 2]);
        assert!(plan.checks.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn two_generator_trefoil() {
        let plan = plan_search(&pres(2, &[&[1, 2, 1, -2, -1, -2]]));
        assert_eq!(plan.check_prefix(0), Some(2));
    }

    #[test]
    fn wirtinger_trefoil() {
        let p = pres(3, &[&[-2, 1, 3, -1], &[-3, 2, 1, -2], &[-1, 3, 2, -3]]);
        let plan = plan_search(&p);
        assert_eq!(plan.order, vec![0, 1, 2]);
        assert_eq!(plan.checks[3], vec![0, 1, 2]);
    }

    #[test]
    fn shared_generator_goes_first() {
        // generator 3 appears in all three relators
        let p = pres(4, &[&[1, 3], &[2, 3], &[3, 3, 4]]);
        let plan = plan_search(&p);
        assert_eq!(plan.order[0], 2);
        let total: usize = plan.checks.iter().map(|c| c.len()).sum();
        assert_eq!(total, 3);
        for r in 0..3 {
            assert!(plan.check_prefix(r).is_some());
        }
    }
}
