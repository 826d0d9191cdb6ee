//! Solution isomorphism, relabeling, and the canonical form used for
//! census deduplication and catalog hashing.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::solution::Solution;

/// Default point bound for the backtracking isomorphism test.
pub const DEFAULT_ISO_BOUND: usize = 12;

/// The solution with points renamed by `f`: `σ'_{f(x)}(f(y)) = f(σ_x(y))`.
pub fn relabel(s: &Solution, f: &Permutation) -> Solution {
    let n = s.size();
    assert_eq!(f.degree(), n);
    let mut sigma = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            sigma[f.apply(x)][f.apply(y)] = f.apply(s.sigma(x)[y]);
        }
    }
    Solution::from_sigma(sigma).expect("relabeling preserves validity")
}

/// Isomorphism with the default bound; returns a witness bijection
/// `f: s1 → s2` or `None`.
pub fn isomorphic(s1: &Solution, s2: &Solution) -> Result<Option<Permutation>> {
    isomorphic_bounded(s1, s2, DEFAULT_ISO_BOUND)
}

/// Backtracking isomorphism search with constraint propagation. Candidates
/// are pruned by σ-row cycle type; every assignment propagates through
/// `f(σ_x(y)) = σ'_{f(x)}(f(y))` before the next choice.
pub fn isomorphic_bounded(
    s1: &Solution,
    s2: &Solution,
    bound: usize,
) -> Result<Option<Permutation>> {
    if s1.size() != s2.size() {
        return Ok(None);
    }
    let n = s1.size();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "solution for isomorphism testing",
            size: n,
            bound,
        });
    }
    // Cheap invariants first.
    let types1 = row_invariants(s1);
    let types2 = row_invariants(s2);
    {
        let mut a = types1.clone();
        let mut b = types2.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(s1, s2, &types1, &types2, &mut map, &mut used) {
        // Final exhaustive verification.
        for x in 0..n {
            for y in 0..n {
                debug_assert_eq!(s2.sigma(map[x])[map[y]], map[s1.sigma(x)[y]]);
            }
        }
        return Ok(Some(
            Permutation::from_images(map).expect("complete injective map"),
        ));
    }
    Ok(None)
}

/// Per-point invariant: the cycle type of the σ-row plus the multiplicity
/// of that row in the table.
fn row_invariants(s: &Solution) -> Vec<(Vec<usize>, usize)> {
    (0..s.size())
        .map(|x| {
            let ct = s.sigma_perm(x).cycle_type();
            let mult = (0..s.size())
                .filter(|&y| s.sigma(y) == s.sigma(x))
                .count();
            (ct, mult)
        })
        .collect()
}

fn search(
    s1: &Solution,
    s2: &Solution,
    types1: &[(Vec<usize>, usize)],
    types2: &[(Vec<usize>, usize)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = s1.size();
    let Some(x) = (0..n).find(|&x| map[x] == usize::MAX) else {
        // Complete: verify the full compatibility condition.
        return (0..n).all(|x| (0..n).all(|y| s2.sigma(map[x])[map[y]] == map[s1.sigma(x)[y]]));
    };
    for cand in 0..n {
        if used[cand] || types1[x] != types2[cand] {
            continue;
        }
        let mut trail: Vec<usize> = Vec::new();
        if assign(s1, s2, map, used, &mut trail, x, cand)
            && search(s1, s2, types1, types2, map, used)
        {
            return true;
        }
        for &p in trail.iter().rev() {
            used[map[p]] = false;
            map[p] = usize::MAX;
        }
    }
    false
}

/// Assigns `map[x] = y` and propagates through σ-compatibility on all
/// currently mapped pairs; records assignments in `trail` for rollback.
fn assign(
    s1: &Solution,
    s2: &Solution,
    map: &mut [usize],
    used: &mut [bool],
    trail: &mut Vec<usize>,
    x: usize,
    y: usize,
) -> bool {
    let n = s1.size();
    let mut queue = vec![(x, y)];
    while let Some((p, q)) = queue.pop() {
        if map[p] != usize::MAX {
            if map[p] != q {
                return false;
            }
            continue;
        }
        if used[q] {
            return false;
        }
        map[p] = q;
        used[q] = true;
        trail.push(p);
        // New consequences: for every mapped a, the pairs (a, p) and (p, a).
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            queue.push((s1.sigma(a)[p], s2.sigma(map[a])[map[p]]));
            queue.push((s1.sigma(p)[a], s2.sigma(map[p])[map[a]]));
        }
    }
    true
}

/// The lexicographically least σ-table over all relabelings: full
/// minimization over `n!` bijections with early row-by-row abandonment.
/// Canonical forms are equal exactly for isomorphic solutions.
pub fn canonical_form(s: &Solution) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut f: Vec<usize> = (0..n).collect();
    permute_all(&mut f, 0, &mut |f| {
        // Build the relabeled table row by row, comparing against best.
        let mut f_inv = vec![0usize; n];
        for (i, &v) in f.iter().enumerate() {
            f_inv[v] = i;
        }
        let mut candidate: Vec<Vec<usize>> = Vec::with_capacity(n);
        for x_new in 0..n {
            let x_old = f_inv[x_new];
            let mut row = vec![0usize; n];
            for y_new in 0..n {
                row[y_new] = f[s.sigma(x_old)[f_inv[y_new]]];
            }
            if let Some(b) = &best {
                match row.cmp(&b[x_new]) {
                    std::cmp::Ordering::Less => {}
                    std::cmp::Ordering::Equal => {
                        candidate.push(row);
                        continue;
                    }
                    std::cmp::Ordering::Greater => return,
                }
            }
            candidate.push(row);
            // Strictly smaller prefix: fill in the rest unconditionally.
            for x_new in candidate.len()..n {
                let x_old = f_inv[x_new];
                let mut row = vec![0usize; n];
                for y_new in 0..n {
                    row[y_new] = f[s.sigma(x_old)[f_inv[y_new]]];
                }
                candidate.push(row);
            }
            best = Some(candidate);
            return;
        }
        // Equal to best all the way: keep best.
    });
    best.expect("at least the identity relabeling")
}

fn permute_all(values: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == values.len() {
        visit(values);
        return;
    }
    for i in k..values.len() {
        values.swap(k, i);
        permute_all(values, k + 1, visit);
        values.swap(k, i);
    }
}
