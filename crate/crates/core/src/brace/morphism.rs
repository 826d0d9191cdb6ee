//! Brace isomorphisms and automorphism groups, by backtracking over
//! multiplicative generator images with order-profile pruning; additive
//! preservation is checked on the extended map.

use std::collections::BTreeMap;

use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::perm::DEFAULT_GROUP_BOUND;

/// A map preserving both operations. `map[x]` is the image of `x`;
/// source and target are implied by the call that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceMorphism {
    pub map: Vec<usize>,
}

impl BraceMorphism {
    pub fn is_valid(&self, source: &Brace, target: &Brace) -> bool {
        let m = source.order();
        if target.order() != m || self.map.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &v in &self.map {
            if v >= m || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        (0..m).all(|a| {
            (0..m).all(|b| {
                self.map[source.add(a, b)] == target.add(self.map[a], self.map[b])
                    && self.map[source.mul(a, b)] == target.mul(self.map[a], self.map[b])
            })
        })
    }
}

fn dual_order_profile(b: &Brace) -> BTreeMap<(usize, usize), usize> {
    let mut profile = BTreeMap::new();
    for x in 0..b.order() {
        *profile
            .entry((b.additive_order(x), b.multiplicative_order(x)))
            .or_insert(0) += 1;
    }
    profile
}

/// An isomorphism `b1 → b2`, or `None`.
pub fn brace_isomorphic(b1: &Brace, b2: &Brace) -> Option<BraceMorphism> {
    isomorphisms(b1, b2, false).into_iter().next()
}

/// Every automorphism of `b`, exhaustively, in a deterministic order.
pub fn automorphisms(b: &Brace) -> Result<Vec<BraceMorphism>> {
    if b.order() > DEFAULT_GROUP_BOUND {
        return Err(Error::BoundExceeded {
            what: "brace for automorphism enumeration",
            size: b.order(),
            bound: DEFAULT_GROUP_BOUND,
        });
    }
    Ok(isomorphisms(b, b, true))
}

fn isomorphisms(b1: &Brace, b2: &Brace, all: bool) -> Vec<BraceMorphism> {
    if b1.order() != b2.order() {
        return Vec::new();
    }
    let m = b1.order();
    if m == 1 {
        return vec![BraceMorphism { map: vec![0] }];
    }
    if dual_order_profile(b1) != dual_order_profile(b2)
        || b1.socle().len() != b2.socle().len()
        || b1.additive_invariants() != b2.additive_invariants()
    {
        return Vec::new();
    }

    let gens = b1.multiplicative_table().generating_tuple();
    // BFS over ∘-products: for each element, a (predecessor, generator
    // index) pair; visit order is recorded so extension is one pass.
    let mut parent = vec![(usize::MAX, usize::MAX); m];
    let mut order = vec![0usize];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let e = order[head];
        head += 1;
        for (j, &g) in gens.iter().enumerate() {
            let next = b1.mul(e, g);
            if !seen[next] {
                seen[next] = true;
                parent[next] = (e, j);
                order.push(next);
            }
        }
    }

    let mut found = Vec::new();
    let mut images = vec![usize::MAX; gens.len()];
    assign(
        b1, b2, &gens, &parent, &order, 0, &mut images, all, &mut found,
    );
    found
}

#[allow(clippy::too_many_arguments)]
fn assign(
    b1: &Brace,
    b2: &Brace,
    gens: &[usize],
    parent: &[(usize, usize)],
    order: &[usize],
    k: usize,
    images: &mut Vec<usize>,
    all: bool,
    found: &mut Vec<BraceMorphism>,
) {
    if k == gens.len() {
        if let Some(map) = extend_and_verify(b1, b2, parent, order, images) {
            found.push(BraceMorphism { map });
        }
        return;
    }
    let want = (
        b1.additive_order(gens[k]),
        b1.multiplicative_order(gens[k]),
    );
    for cand in 0..b2.order() {
        if (b2.additive_order(cand), b2.multiplicative_order(cand)) != want {
            continue;
        }
        images[k] = cand;
        assign(b1, b2, gens, parent, order, k + 1, images, all, found);
        if !all && !found.is_empty() {
            return;
        }
    }
    images[k] = usize::MAX;
}

fn extend_and_verify(
    b1: &Brace,
    b2: &Brace,
    parent: &[(usize, usize)],
    order: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let m = b1.order();
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; m];
    map[0] = 0;
    used[0] = true;
    for &e in order.iter().skip(1) {
        let (p, j) = parent[e];
        let img = b2.mul(map[p], images[j]);
        if used[img] {
            return None;
        }
        map[e] = img;
        used[img] = true;
    }
    for a in 0..m {
        for b in 0..m {
            if map[b1.mul(a, b)] != b2.mul(map[a], map[b])
                || map[b1.add(a, b)] != b2.add(map[a], map[b])
            {
                return None;
            }
        }
    }
    Some(map)
}

/// Canonical table pair for a brace: the lexicographically least
/// `(add, mul)` over breadth-first relabelings driven by all minimal
/// generating tuples of `(B, ∘)`. Equal exactly for isomorphic braces.
pub fn canonical_tables(b: &Brace) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let m = b.order();
    if m == 1 {
        return (vec![vec![0]], vec![vec![0]]);
    }
    let mut best: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = None;
    let mut tuple: Vec<usize> = Vec::new();
    // Minimal generating length first; every minimal-length tuple has
    // strictly growing prefix closures, so requiring each generator to lie
    // outside the running closure enumerates exactly those tuples.
    let table = b.multiplicative_table();
    let min_len = table.generating_tuple().len();
    search_tuples(b, &table, min_len, &mut tuple, &mut best);
    best.expect("some tuple generates")
}

fn search_tuples(
    b: &Brace,
    table: &crate::perm::GroupTable,
    remaining: usize,
    tuple: &mut Vec<usize>,
    best: &mut Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
) {
    let span = table.subgroup_closure(tuple);
    if span.len() == b.order() {
        if remaining == 0 {
            consider_tuple(b, tuple, best);
        }
        return;
    }
    if remaining == 0 {
        return;
    }
    for g in 1..b.order() {
        if span.binary_search(&g).is_ok() {
            continue;
        }
        tuple.push(g);
        search_tuples(b, table, remaining - 1, tuple, best);
        tuple.pop();
    }
}

fn consider_tuple(
    b: &Brace,
    tuple: &[usize],
    best: &mut Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
) {
    let m = b.order();
    // Breadth-first labeling over ∘-products with the tuple.
    let mut label = vec![usize::MAX; m];
    let mut order = vec![0usize];
    label[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let e = order[head];
        head += 1;
        for &g in tuple {
            let next = b.mul(e, g);
            if label[next] == usize::MAX {
                label[next] = order.len();
                order.push(next);
            }
        }
    }
    debug_assert_eq!(order.len(), m);
    let relabeled = |rows: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![0usize; m]; m];
        for a in 0..m {
            for c in 0..m {
                out[label[a]][label[c]] = label[rows(a, c)];
            }
        }
        out
    };
    let add = relabeled(&|a, c| b.add(a, c));
    let mul = relabeled(&|a, c| b.mul(a, c));
    let candidate = (add, mul);
    if best.as_ref().map_or(true, |b| candidate < *b) {
        *best = Some(candidate);
    }
}
