//! Exhaustive census of involutive solutions up to isomorphism, with the
//! bound functions and conjecture audits run against it.

mod search;

use crate::brace::enumerate_braces;
use crate::error::{Error, Result};
use crate::perm::lcm;
use crate::solution::{canonical_form, MultipermutationLevel, Solution};

/// Default size bound for the census; 7 and 8 are reachable with the
/// explicit long-run bound.
pub const DEFAULT_CENSUS_BOUND: usize = 6;
pub const LONG_RUN_CENSUS_BOUND: usize = 8;

/// One isomorphism class in a census.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub canonical_sigma: Vec<Vec<usize>>,
    pub group_order: usize,
    pub group_name: String,
    pub abelian_group: bool,
    pub indecomposable: bool,
    pub uniconnected: bool,
    pub multipermutation_level: MultipermutationLevel,
    pub dehornoy_class: usize,
}

impl CensusEntry {
    pub fn solution(&self) -> Solution {
        Solution::from_sigma(self.canonical_sigma.clone()).expect("census entries are valid")
    }
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub n: usize,
    pub total: usize,
    pub indecomposable: usize,
    pub entries: Vec<CensusEntry>,
    pub violations: Vec<String>,
}

/// All involutive solutions of size `n` up to isomorphism, with their
/// invariants and the conjecture audit filled in.
pub fn enumerate_solutions(n: usize) -> Result<CensusReport> {
    enumerate_solutions_bounded(n, DEFAULT_CENSUS_BOUND)
}

pub fn enumerate_solutions_bounded(n: usize, bound: usize) -> Result<CensusReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("size must be positive".to_string()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "size for the solution census",
            size: n,
            bound,
        });
    }
    let mut canonical = std::collections::BTreeSet::new();
    stream_canonical_tables(n, &mut |table| {
        canonical.insert(table.to_vec());
    });
    let entries: Vec<CensusEntry> = canonical
        .into_iter()
        .map(|sigma| {
            let s = Solution::from_sigma(sigma.clone()).expect("search output is valid");
            let group = s.permutation_group();
            CensusEntry {
                group_order: group.order(),
                group_name: group.name(),
                abelian_group: group.is_abelian(),
                indecomposable: s.is_indecomposable(),
                uniconnected: s.is_uniconnected(),
                multipermutation_level: s.multipermutation_level(),
                dehornoy_class: s.dehornoy_class_direct(),
                canonical_sigma: sigma,
            }
        })
        .collect();
    let mut report = CensusReport {
        n,
        total: entries.len(),
        indecomposable: entries.iter().filter(|e| e.indecomposable).count(),
        entries,
        violations: Vec::new(),
    };
    report.violations = audit_conjectures(&report);
    Ok(report)
}

/// Runs the backtracking search and hands every isomorphism class's
/// canonical σ-table to the sink exactly once, without retaining the
/// corpus. Used directly for the long-run sizes.
pub fn stream_canonical_tables(n: usize, sink: &mut impl FnMut(&[Vec<usize>])) {
    let mut seen = std::collections::BTreeSet::new();
    let mut search = search::RowSearch::new(n);
    search.run(&mut |table| {
        let s = Solution::from_sigma(table.to_vec()).expect("search output is valid");
        let canon = canonical_form(&s);
        if seen.insert(canon.clone()) {
            sink(&canon);
        }
    });
}

/// Independent census oracle: filter every σ-table whose rows are
/// permutations through the validator, no pruning at all, then
/// deduplicate by canonical form. Feasible for `n ≤ 4`.
pub fn unpruned_census(n: usize) -> Vec<Vec<Vec<usize>>> {
    assert!(n <= 4, "the unpruned oracle is exponential");
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn gen(n: usize, used: &mut Vec<bool>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                gen(n, used, current, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    gen(n, &mut used, &mut current, &mut rows);

    let mut canonical = std::collections::BTreeSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let table: Vec<Vec<usize>> = choice.iter().map(|&i| rows[i].clone()).collect();
        if crate::solution::validate_sigma_table(&table).is_valid() {
            let s = Solution::from_sigma(table).expect("validated");
            canonical.insert(canonical_form(&s));
        }
        // Odometer over the row choices.
        let mut k = 0;
        loop {
            if k == n {
                return canonical.into_iter().collect();
            }
            choice[k] += 1;
            if choice[k] < rows.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Greatest product of pairwise distinct positive integers summing to `n`.
pub fn a_n(n: usize) -> usize {
    fn best(rest: usize, min_part: usize) -> usize {
        if rest == 0 {
            return 1;
        }
        let mut max = 0;
        for part in min_part..=rest {
            let tail = best(rest - part, part + 1);
            if tail > 0 {
                max = max.max(part * tail);
            }
        }
        max
    }
    assert!(n >= 1);
    best(n, 1)
}

/// Landau's function: the greatest order of a permutation of `n` points,
/// i.e. the greatest lcm over all partitions of `n`.
pub fn g_n(n: usize) -> usize {
    fn best(rest: usize, max_part: usize, acc: usize) -> usize {
        if rest == 0 {
            return acc;
        }
        let mut max = acc; // pad with fixed points
        for part in 2..=rest.min(max_part) {
            max = max.max(best(rest - part, part, lcm(acc, part)));
        }
        max
    }
    assert!(n >= 1);
    best(n, n, 1)
}

/// Bound audit: every class must satisfy `d ≤ a_n`, and indecomposable
/// classes `d ≤ n`. Returns one line per violation, empty when all hold.
pub fn audit_conjectures(report: &CensusReport) -> Vec<String> {
    let bound = a_n(report.n);
    let mut violations = Vec::new();
    for (i, entry) in report.entries.iter().enumerate() {
        if entry.dehornoy_class > bound {
            violations.push(format!(
                "class #{}: Dehornoy class {} exceeds a_{} = {}",
                i, entry.dehornoy_class, report.n, bound
            ));
        }
        if entry.indecomposable && entry.dehornoy_class > report.n {
            violations.push(format!(
                "class #{}: indecomposable with Dehornoy class {} above the size {}",
                i, entry.dehornoy_class, report.n
            ));
        }
    }
    violations
}

/// Per-brace outcome of the dihedral exponent law at order `2^k · m`.
#[derive(Clone, Debug)]
pub struct DihedralBraceClass {
    pub additive: Vec<usize>,
    pub cyclic_additive: bool,
    pub class: usize,
    pub predicted: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct DihedralClassCheck {
    pub order: usize,
    /// Whether the law `class = 2^k·m (cyclic) / 2^{k−1}·m (otherwise)`
    /// applies, which needs `k > 3`.
    pub covered: bool,
    pub reason: Option<String>,
    pub braces: Vec<DihedralBraceClass>,
}

impl DihedralClassCheck {
    pub fn all_agree(&self) -> bool {
        self.braces
            .iter()
            .all(|b| b.predicted.map_or(true, |p| p == b.class))
    }
}

/// Examines every brace of order `2^k · m` with dihedral multiplicative
/// group: its solutions all have Dehornoy class equal to the additive
/// exponent, which the law pins to `2^k·m` or `2^{k−1}·m` when `k > 3`.
pub fn dihedral_class_check(k: usize, m: usize) -> Result<DihedralClassCheck> {
    if m % 2 == 0 || m == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "need k ≥ 1 and odd m".to_string(),
        ));
    }
    let order = (1usize << k) * m;
    let covered = k > 3;
    let reason = if covered {
        None
    } else {
        Some(format!("the exponent law requires 2-part above 8, got 2^{}", k))
    };
    let braces = match enumerate_braces(order) {
        Ok(braces) => braces,
        Err(Error::BoundExceeded { .. }) => {
            return Ok(DihedralClassCheck {
                order,
                covered: false,
                reason: Some(format!(
                    "order {} is above the brace enumeration bound",
                    order
                )),
                braces: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    for b in &braces {
        if !b.multiplicative_table().is_dihedral() {
            continue;
        }
        let additive = b.additive_invariants();
        let cyclic_additive = additive.len() == 1;
        let predicted = covered.then(|| {
            if cyclic_additive {
                (1usize << k) * m
            } else {
                (1usize << (k - 1)) * m
            }
        });
        rows.push(DihedralBraceClass {
            additive,
            cyclic_additive,
            class: b.additive_exponent(),
            predicted,
        });
    }
    Ok(DihedralClassCheck {
        order,
        covered,
        reason,
        braces: rows,
    })
}
