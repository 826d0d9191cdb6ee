//! A small-group engine over explicit composition tables.
//!
//! Everything here is exhaustive and only meant for groups of order up to
//! about a hundred: subgroup lattices, cores, cosets, isomorphism testing
//! and structural recognizers. Element `0` is always the identity.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::perm::lcm;

/// Default order bound for exhaustive subgroup work.
pub const DEFAULT_GROUP_BOUND: usize = 100;

/// A finite group given by its multiplication table, with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// The Miller–Moreno classification of minimal non-cyclic groups:
/// non-cyclic groups all of whose proper subgroups are cyclic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MillerMoreno {
    /// Type a): elementary abelian of rank two, order `p²`.
    ElementaryAbelian { p: usize },
    /// Type b): the quaternion group of order 8.
    Quaternion,
    /// Type c): `⟨a, b | a^p = b^(q^n) = 1, b⁻¹ab = a^r⟩` of order `p·qⁿ`.
    Metacyclic { p: usize, q: usize, n: usize },
}

impl GroupTable {
    /// Builds a table after verifying the group axioms (identity `0`,
    /// inverses, associativity).
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty multiplication table".into()));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidParameter(format!("row {} out of range", i)));
            }
        }
        for i in 0..n {
            if mul[0][i] != i || mul[i][0] != i {
                return Err(Error::InvalidParameter(
                    "element 0 is not an identity".into(),
                ));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| mul[i][j] == 0 && mul[j][i] == 0) {
                Some(j) => inv[i] = j,
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "element {} has no inverse",
                        i
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidParameter(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { n, mul, inv })
    }

    /// Builds a table that is already known to satisfy the group axioms.
    pub(crate) fn from_parts_unchecked(mul: Vec<Vec<usize>>, inv: Vec<usize>) -> Self {
        let n = mul.len();
        GroupTable { n, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conjugate_element(&self, g: usize, h: usize) -> usize {
        // g h g⁻¹
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    /// Multiset of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for a in 0..self.n {
            *profile.entry(self.element_order(a)).or_insert(0) += 1;
        }
        profile
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Smallest subgroup containing `seed`, as a sorted element list.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.n];
        in_set[0] = true;
        let mut members = vec![0];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        while let Some(g) = queue.pop() {
            let snapshot: Vec<usize> = members.clone();
            for &h in &snapshot {
                for &prod in &[self.mul(g, h), self.mul(h, g)] {
                    if !in_set[prod] {
                        in_set[prod] = true;
                        members.push(prod);
                        queue.push(prod);
                    }
                }
            }
            let gi = self.inv(g);
            if !in_set[gi] {
                in_set[gi] = true;
                members.push(gi);
                queue.push(gi);
            }
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let sorted: BTreeSet<usize> = set.iter().copied().collect();
        if sorted.len() != set.len() || !sorted.contains(&0) {
            return false;
        }
        sorted
            .iter()
            .all(|&a| sorted.iter().all(|&b| sorted.contains(&self.mul(a, b))))
    }

    /// Every subgroup, each exactly once, built bottom-up by joining cyclic
    /// subgroups. Deterministic order: by size, then lexicographically.
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        self.subgroups_bounded(DEFAULT_GROUP_BOUND)
    }

    pub fn subgroups_bounded(&self, bound: usize) -> Result<Vec<Vec<usize>>> {
        if self.n > bound {
            return Err(Error::BoundExceeded {
                what: "group for subgroup enumeration",
                size: self.n,
                bound,
            });
        }
        let mut cyclics: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..self.n {
            cyclics.insert(self.subgroup_closure(&[a]));
        }
        let cyclics: Vec<Vec<usize>> = cyclics.into_iter().collect();
        let mut all: BTreeSet<Vec<usize>> = cyclics.iter().cloned().collect();
        let mut worklist: Vec<Vec<usize>> = cyclics.clone();
        while let Some(h) = worklist.pop() {
            for c in &cyclics {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = h.clone();
                seed.extend_from_slice(c);
                let joined = self.subgroup_closure(&seed);
                if all.insert(joined.clone()) {
                    worklist.push(joined);
                }
            }
        }
        let mut result: Vec<Vec<usize>> = all.into_iter().collect();
        result.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(result)
    }

    pub fn conjugate_subgroup(&self, sub: &[usize], g: usize) -> Vec<usize> {
        let mut conj: Vec<usize> = sub.iter().map(|&h| self.conjugate_element(g, h)).collect();
        conj.sort_unstable();
        conj
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let sorted: Vec<usize> = {
            let mut s = sub.to_vec();
            s.sort_unstable();
            s
        };
        (0..self.n).all(|g| self.conjugate_subgroup(&sorted, g) == sorted)
    }

    /// The core `⋂_g g·sub·g⁻¹`, the largest normal subgroup inside `sub`.
    pub fn core(&self, sub: &[usize]) -> Vec<usize> {
        let mut current: BTreeSet<usize> = sub.iter().copied().collect();
        for g in 0..self.n {
            let conj: BTreeSet<usize> = sub.iter().map(|&h| self.conjugate_element(g, h)).collect();
            current = current.intersection(&conj).copied().collect();
        }
        current.into_iter().collect()
    }

    /// Left cosets of `sub`, ordered by minimal member; returns
    /// `(cosets, representatives)` with the representative being the minimal
    /// member of each coset. The identity coset comes first.
    pub fn left_cosets(&self, sub: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut seen = vec![false; self.n];
        let mut cosets = Vec::new();
        let mut reps = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = sub.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            reps.push(coset[0]);
            cosets.push(coset);
        }
        (cosets, reps)
    }

    /// A short generating tuple: greedy, starting from an element of maximal
    /// order. Deterministic.
    pub fn generating_tuple(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let first = (0..self.n)
            .max_by_key(|&a| (self.element_order(a), std::cmp::Reverse(a)))
            .unwrap();
        let mut gens = vec![first];
        let mut span = self.subgroup_closure(&gens);
        while span.len() < self.n {
            let next = (0..self.n)
                .find(|g| span.binary_search(g).is_err())
                .expect("span is proper, some element lies outside");
            gens.push(next);
            span = self.subgroup_closure(&gens);
        }
        gens
    }

    /// Isomorphism test by backtracking over generator images, with
    /// order-profile pruning. Returns an element map on success.
    pub fn isomorphic_to(&self, other: &GroupTable) -> Option<Vec<usize>> {
        if self.n != other.n || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.generating_tuple();
        if gens.is_empty() {
            return Some(vec![0]);
        }
        // Reach every element as word · generator, scanning elements in a
        // fixed BFS order so a generator assignment extends uniquely.
        let bfs = self.bfs_from_generators(&gens);
        let mut images = vec![usize::MAX; gens.len()];
        self.assign_generator(0, &gens, &bfs, &mut images, other)
    }

    /// BFS decomposition: for each element (except 0) a pair
    /// `(earlier element, generator index)` whose product reaches it.
    fn bfs_from_generators(&self, gens: &[usize]) -> Vec<(usize, usize)> {
        let mut parent = vec![(usize::MAX, usize::MAX); self.n];
        let mut order = vec![0usize];
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let e = order[head];
            head += 1;
            for (j, &g) in gens.iter().enumerate() {
                let next = self.mul(e, g);
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = (e, j);
                    order.push(next);
                }
            }
        }
        debug_assert_eq!(order.len(), self.n);
        parent
    }

    fn assign_generator(
        &self,
        k: usize,
        gens: &[usize],
        bfs: &[(usize, usize)],
        images: &mut Vec<usize>,
        other: &GroupTable,
    ) -> Option<Vec<usize>> {
        if k == gens.len() {
            return self.extend_and_verify(gens, bfs, images, other);
        }
        let want = self.element_order(gens[k]);
        for cand in 0..other.n {
            if other.element_order(cand) != want {
                continue;
            }
            images[k] = cand;
            if let Some(map) = self.assign_generator(k + 1, gens, bfs, images, other) {
                return Some(map);
            }
        }
        images[k] = usize::MAX;
        None
    }

    fn extend_and_verify(
        &self,
        _gens: &[usize],
        bfs: &[(usize, usize)],
        images: &mut [usize],
        other: &GroupTable,
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[0] = 0;
        // Fill in BFS order; every element's parent precedes it.
        let mut pending: Vec<usize> = (1..self.n).collect();
        pending.sort_by_key(|&e| self.bfs_depth(bfs, e));
        let mut used = vec![false; self.n];
        used[0] = true;
        for &e in &pending {
            let (p, j) = bfs[e];
            let img = other.mul(map[p], images[j]);
            if map[e] != usize::MAX || used[img] {
                if map[e] != img {
                    return None;
                }
                continue;
            }
            map[e] = img;
            used[img] = true;
        }
        if map.iter().any(|&v| v == usize::MAX) {
            return None;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn bfs_depth(&self, bfs: &[(usize, usize)], mut e: usize) -> usize {
        let mut depth = 0;
        while e != 0 {
            e = bfs[e].0;
            depth += 1;
        }
        depth
    }

    /// Dihedral of order `2m` with `m ≥ 3`: a cyclic subgroup of index 2
    /// with every outside element an involution.
    pub fn is_dihedral(&self) -> bool {
        if self.n < 6 || self.n % 2 != 0 {
            return false;
        }
        let half = self.n / 2;
        for a in 0..self.n {
            if self.element_order(a) != half {
                continue;
            }
            let c = self.subgroup_closure(&[a]);
            if (0..self.n)
                .filter(|g| c.binary_search(g).is_err())
                .all(|g| self.element_order(g) == 2)
            {
                return true;
            }
        }
        false
    }

    /// Generalized dihedral: `A ⋊ Z/2` with the involution inverting the
    /// abelian group `A`. Equivalently an abelian index-2 subgroup whose
    /// complement consists of involutions.
    pub fn is_generalized_dihedral(&self) -> bool {
        if self.n % 2 != 0 {
            return false;
        }
        for sub in self.index_two_subgroups() {
            let abelian = sub
                .iter()
                .all(|&a| sub.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
            if abelian
                && (0..self.n)
                    .filter(|g| sub.binary_search(g).is_err())
                    .all(|g| self.element_order(g) == 2)
            {
                return true;
            }
        }
        false
    }

    /// A 2-group with a unique involution is cyclic or generalized
    /// quaternion; this tests for the latter.
    pub fn is_generalized_quaternion(&self) -> bool {
        if self.n < 8 || !self.n.is_power_of_two() || self.is_cyclic() {
            return false;
        }
        (0..self.n).filter(|&a| self.element_order(a) == 2).count() == 1
    }

    /// All subgroups are normal.
    pub fn is_dedekind(&self) -> bool {
        (0..self.n).all(|a| self.is_normal(&self.subgroup_closure(&[a])))
    }

    /// Subgroups of index 2, via functionals on the quotient by the
    /// subgroup generated by squares and commutators.
    fn index_two_subgroups(&self) -> Vec<Vec<usize>> {
        let mut seed = Vec::new();
        for a in 0..self.n {
            seed.push(self.mul(a, a));
        }
        for a in 0..self.n {
            for b in 0..self.n {
                // a⁻¹ b⁻¹ a b
                seed.push(self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)));
            }
        }
        seed.sort_unstable();
        seed.dedup();
        let m = self.subgroup_closure(&seed);
        if m.len() == self.n {
            return Vec::new();
        }
        // The quotient is elementary abelian of order 2^k; pick basis cosets.
        let coset_of = |x: usize, reps: &[usize]| -> usize {
            // index of the coset of x among reps: x ∈ rep·M
            reps.iter()
                .position(|&r| m.binary_search(&self.mul(self.inv(r), x)).is_ok())
                .expect("cosets partition the group")
        };
        let (cosets, reps) = self.left_cosets(&m);
        let k = cosets.len().trailing_zeros() as usize;
        debug_assert_eq!(1 << k, cosets.len());
        // Greedily pick basis cosets: nonidentity cosets independent so far.
        let mut basis: Vec<usize> = Vec::new();
        let mut spanned: BTreeSet<usize> = [0].into_iter().collect();
        for idx in 1..reps.len() {
            if spanned.contains(&idx) {
                continue;
            }
            basis.push(idx);
            let snapshot: Vec<usize> = spanned.iter().copied().collect();
            for s in snapshot {
                spanned.insert(coset_of(self.mul(reps[s], reps[idx]), &reps));
            }
            spanned.insert(idx);
            if basis.len() == k {
                break;
            }
        }
        // Express each coset in the basis to evaluate functionals.
        let mut coords: Vec<u32> = vec![u32::MAX; reps.len()];
        coords[0] = 0;
        let mut frontier = vec![0usize];
        let mut mask_of = vec![0u32; reps.len()];
        mask_of[0] = 0;
        let mut head = 0;
        while head < frontier.len() {
            let idx = frontier[head];
            head += 1;
            for (bit, &b) in basis.iter().enumerate() {
                let nidx = coset_of(self.mul(reps[idx], reps[b]), &reps);
                if coords[nidx] == u32::MAX {
                    coords[nidx] = coords[idx] ^ (1 << bit);
                    mask_of[nidx] = coords[nidx];
                    frontier.push(nidx);
                }
            }
        }
        let mut result = Vec::new();
        for functional in 1u32..(1 << k) {
            let mut sub = Vec::new();
            for g in 0..self.n {
                let idx = coset_of(g, &reps);
                if (mask_of[idx] & functional).count_ones() % 2 == 0 {
                    sub.push(g);
                }
            }
            debug_assert!(self.is_subgroup(&sub));
            result.push(sub);
        }
        result
    }

    /// Minimal non-cyclic test (every proper subgroup cyclic but the group
    /// is not), classified per Miller–Moreno. Checking 2-generated
    /// subgroups suffices: all three minimal non-cyclic types are
    /// 2-generated, so any non-cyclic proper subgroup contains one.
    pub fn minimal_non_cyclic(&self) -> Option<MillerMoreno> {
        if self.is_cyclic() {
            return None;
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                let h = self.subgroup_closure(&[a, b]);
                if h.len() == self.n {
                    continue;
                }
                let cyclic = h.iter().any(|&x| self.element_order(x) == h.len());
                if !cyclic {
                    return None;
                }
            }
        }
        if self.is_abelian() {
            let p = (1..).find(|&p| p * p == self.n)?;
            return Some(MillerMoreno::ElementaryAbelian { p });
        }
        if self.n == 8 && self.is_generalized_quaternion() {
            return Some(MillerMoreno::Quaternion);
        }
        // Type c): order p·qⁿ with a normal subgroup of order p.
        let factors = factorize(self.n);
        for (&p, &e) in &factors {
            if e != 1 {
                continue;
            }
            let rest = self.n / p;
            let qs: Vec<usize> = factors.keys().copied().filter(|&r| r != p).collect();
            if qs.len() != 1 {
                continue;
            }
            let q = qs[0];
            let n_exp = factors[&q];
            debug_assert_eq!(q.pow(n_exp as u32), rest);
            let gen_p = (0..self.n).find(|&x| self.element_order(x) == p)?;
            let sylow_p = self.subgroup_closure(&[gen_p]);
            if self.is_normal(&sylow_p) && (0..self.n).any(|x| self.element_order(x) == rest) {
                return Some(MillerMoreno::Metacyclic { p, q, n: n_exp });
            }
        }
        None
    }

    /// Invariant factors `d₁ | d₂ | …` when the group is abelian.
    pub fn abelian_invariants(&self) -> Option<Vec<usize>> {
        if !self.is_abelian() {
            return None;
        }
        let mut primary: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&p, &e) in &factorize(self.n) {
            // s_k = #elements killed by p^k; parts of the partition follow.
            let mut s = vec![1usize];
            for k in 1..=e {
                let pk = p.pow(k as u32);
                s.push((0..self.n).filter(|&x| self.power(x, pk) == 0).count());
            }
            let logs: Vec<usize> = s.iter().map(|&c| ilog(c, p)).collect();
            let mut parts = Vec::new();
            for k in 1..=e {
                let ge_k = logs[k] - logs[k - 1];
                let ge_next = if k < e { logs[k + 1] - logs[k] } else { 0 };
                for _ in 0..ge_k.saturating_sub(ge_next) {
                    parts.push(p.pow(k as u32));
                }
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            primary.insert(p, parts);
        }
        let rank = primary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1usize; rank];
        for parts in primary.values() {
            for (i, &part) in parts.iter().enumerate() {
                factors[i] *= part;
            }
        }
        factors.reverse(); // ascending, d₁ | d₂ | …
        Some(factors)
    }

    fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// A short structural name: cyclic `Cn`, abelian products, dihedral
    /// `Dn` (n the order), generalized quaternion `Qn`, metacyclic
    /// `Cp:Cq^n`, else `Gn`.
    pub fn name(&self) -> String {
        if self.n == 1 {
            return "1".to_string();
        }
        if self.is_cyclic() {
            return format!("C{}", self.n);
        }
        if let Some(factors) = self.abelian_invariants() {
            return factors
                .iter()
                .map(|d| format!("C{}", d))
                .collect::<Vec<_>>()
                .join("x");
        }
        if self.is_dihedral() {
            return format!("D{}", self.n);
        }
        if self.is_generalized_quaternion() {
            return format!("Q{}", self.n);
        }
        if let Some(MillerMoreno::Metacyclic { p, q, n }) = self.minimal_non_cyclic() {
            return format!("C{}:C{}", p, q.pow(n as u32));
        }
        if self.is_generalized_dihedral() {
            return format!("GD{}", self.n);
        }
        format!("G{}", self.n)
    }
}

pub(crate) fn factorize(mut n: usize) -> BTreeMap<usize, usize> {
    let mut factors = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            *factors.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *factors.entry(n).or_insert(0) += 1;
    }
    factors
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n).values().sum::<usize>() == 1
}

fn ilog(mut value: usize, base: usize) -> usize {
    let mut log = 0;
    while value > 1 {
        debug_assert_eq!(value % base, 0);
        value /= base;
        log += 1;
    }
    log
}

/// Lookup table from permutation products; useful in tests and for deriving
/// group tables from explicit element lists.
pub(crate) fn table_from_products<T, F>(elements: &[T], mut product: F) -> GroupTable
where
    T: Eq + std::hash::Hash + Clone,
    F: FnMut(&T, &T) -> T,
{
    let index: HashMap<T, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let n = elements.len();
    let mut mul = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            mul[i][j] = index[&product(&elements[i], &elements[j])];
        }
    }
    let mut inv = vec![0usize; n];
    for i in 0..n {
        inv[i] = (0..n)
            .find(|&j| mul[i][j] == 0 && mul[j][i] == 0)
            .expect("closed element list has inverses");
    }
    GroupTable::from_parts_unchecked(mul, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> GroupTable {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(mul).unwrap()
    }

    fn dihedral(m: usize) -> GroupTable {
        // Elements (r, s) ↦ index s*m + r with (r1,s1)(r2,s2) given by the
        // usual presentation; index 0 = identity.
        let n = 2 * m;
        let idx = |r: usize, s: usize| s * m + r;
        let mut mul = vec![vec![0usize; n]; n];
        for s1 in 0..2 {
            for r1 in 0..m {
                for s2 in 0..2 {
                    for r2 in 0..m {
                        let r = if s1 == 0 { (r1 + r2) % m } else { (r1 + m - r2 % m) % m };
                        let s = (s1 + s2) % 2;
                        mul[idx(r1, s1)][idx(r2, s2)] = idx(r, s);
                    }
                }
            }
        }
        GroupTable::new(mul).unwrap()
    }

    fn quaternion8() -> GroupTable {
        // 1, i, -1, -i, j, k, -j, -k with quaternion multiplication.
        const TABLE: [[usize; 8]; 8] = [
            [0, 1, 2, 3, 4, 5, 6, 7],
            [1, 2, 3, 0, 5, 6, 7, 4],
            [2, 3, 0, 1, 6, 7, 4, 5],
            [3, 0, 1, 2, 7, 4, 5, 6],
            [4, 7, 6, 5, 2, 1, 0, 3],
            [5, 4, 7, 6, 3, 2, 1, 0],
            [6, 5, 4, 7, 0, 3, 2, 1],
            [7, 6, 5, 4, 1, 0, 3, 2],
        ];
        GroupTable::new(TABLE.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn cyclic_six_has_four_subgroups() {
        let g = cyclic(6);
        let subs = g.subgroups().unwrap();
        assert_eq!(subs.len(), 4);
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
    }

    #[test]
    fn core_of_reflection_in_s3_is_trivial() {
        let g = dihedral(3);
        let reflection = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let sub = g.subgroup_closure(&[reflection]);
        assert!(!g.is_normal(&sub));
        assert_eq!(g.core(&sub), vec![0]);
    }

    #[test]
    fn quaternion_subgroups_all_normal() {
        let g = quaternion8();
        for sub in g.subgroups().unwrap() {
            assert!(g.is_normal(&sub));
            assert_eq!(g.core(&sub), sub);
        }
        assert!(g.is_dedekind());
        assert!(g.is_generalized_quaternion());
        assert_eq!(g.minimal_non_cyclic(), Some(MillerMoreno::Quaternion));
        assert_eq!(g.name(), "Q8");
    }

    #[test]
    fn lagrange_and_closure_fixpoint() {
        for g in [cyclic(8), dihedral(4), quaternion8(), dihedral(6)] {
            for sub in g.subgroups().unwrap() {
                assert_eq!(g.order() % sub.len(), 0);
                assert_eq!(g.subgroup_closure(&sub), sub);
                let core = g.core(&sub);
                assert!(g.is_normal(&core));
                assert!(core.iter().all(|x| sub.binary_search(x).is_ok()));
                assert_eq!(g.core(&core), core);
            }
        }
    }

    #[test]
    fn recognizers() {
        assert!(cyclic(5).is_cyclic());
        assert!(dihedral(4).is_dihedral());
        assert!(dihedral(4).is_generalized_dihedral());
        assert!(!dihedral(4).is_cyclic());
        assert!(!quaternion8().is_dihedral());
        assert_eq!(dihedral(4).name(), "D8");
        assert_eq!(dihedral(3).name(), "D6");
        assert_eq!(cyclic(9).name(), "C9");
    }

    #[test]
    fn klein_four_not_isomorphic_to_c4() {
        let klein = {
            let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            GroupTable::new(mul).unwrap()
        };
        assert!(klein.isomorphic_to(&cyclic(4)).is_none());
        assert!(klein.is_generalized_dihedral());
        assert_eq!(
            klein.minimal_non_cyclic(),
            Some(MillerMoreno::ElementaryAbelian { p: 2 })
        );
        assert_eq!(klein.name(), "C2xC2");
    }

    #[test]
    fn dihedral_presentations_isomorphic() {
        let d8a = dihedral(4);
        // Same group, elements listed in a scrambled order.
        let relabel = [3usize, 5, 1, 0, 7, 2, 6, 4];
        let mut inverse = [0usize; 8];
        for (i, &v) in relabel.iter().enumerate() {
            inverse[v] = i;
        }
        // Keep identity at 0 by swapping.
        let mut relabel = relabel;
        let z = inverse[0];
        relabel.swap(0, z);
        let mut mul = vec![vec![0usize; 8]; 8];
        let mut pos = [0usize; 8];
        for (i, &v) in relabel.iter().enumerate() {
            pos[v] = i;
        }
        for a in 0..8 {
            for b in 0..8 {
                mul[pos[a]][pos[b]] = pos[d8a.mul(a, b)];
            }
        }
        let d8b = GroupTable::new(mul).unwrap();
        let map = d8a.isomorphic_to(&d8b).expect("isomorphic");
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(map[d8a.mul(a, b)], d8b.mul(map[a], map[b]));
            }
        }
    }

    #[test]
    fn abelian_invariants_of_products() {
        // Z/2 × Z/4 as a table: index = a*4 + b.
        let mul = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (a1, b1) = (x / 4, x % 4);
                        let (a2, b2) = (y / 4, y % 4);
                        ((a1 + a2) % 2) * 4 + (b1 + b2) % 4
                    })
                    .collect()
            })
            .collect();
        let g = GroupTable::new(mul).unwrap();
        assert_eq!(g.abelian_invariants(), Some(vec![2, 4]));
        assert_eq!(g.name(), "C2xC4");
        assert_eq!(cyclic(12).abelian_invariants(), Some(vec![12]));
    }

    #[test]
    fn metacyclic_f21_recognized() {
        // ⟨a, b | a^7 = b^3 = 1, b⁻¹ab = a²⟩ as pairs (i, j) ↦ a^i b^j.
        let idx = |i: usize, j: usize| i * 3 + j;
        let mut mul = vec![vec![0usize; 21]; 21];
        for i1 in 0..7 {
            for j1 in 0..3 {
                for i2 in 0..7 {
                    for j2 in 0..3 {
                        // a^i1 b^j1 a^i2 b^j2 = a^(i1 + i2·2^j1) b^(j1+j2)
                        let shift = [1usize, 2, 4][j1];
                        let i = (i1 + i2 * shift) % 7;
                        let j = (j1 + j2) % 3;
                        mul[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
                    }
                }
            }
        }
        let g = GroupTable::new(mul).unwrap();
        assert_eq!(
            g.minimal_non_cyclic(),
            Some(MillerMoreno::Metacyclic { p: 7, q: 3, n: 1 })
        );
        // Oracle: every proper subgroup is cyclic, by full enumeration.
        for sub in g.subgroups().unwrap() {
            if sub.len() < 21 {
                assert!(sub.iter().any(|&x| g.element_order(x) == sub.len()));
            }
        }
        assert_eq!(g.name(), "C7:C3");
    }
}
