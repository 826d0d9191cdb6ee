//! Enumeration of all left braces of a given order, up to isomorphism.
//!
//! Braces with additive group `A` correspond to regular subgroups of the
//! holomorph `Hol(A) = A ⋊ Aut(A)`: such a subgroup contains, for each
//! `a ∈ A`, exactly one affine map `x ↦ a + λ_a(x)`, and the function
//! `a ↦ λ_a` determines the multiplication `a ∘ b = a + λ_a(b)`. The
//! search below backtracks over the generator candidates `(a, λ_a)` with
//! constraint propagation: once `λ` is known at `x` and `y` it is forced
//! at `x ∘ y`. The first branch level is reduced to conjugacy-class
//! representatives under the stabilizer of the first point, which loses
//! nothing up to brace isomorphism.

use std::collections::HashMap;

use crate::brace::morphism::brace_isomorphic;
use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::perm::cayley::factorize;

/// Default order bound for exhaustive brace enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// A finite abelian group in mixed-radix coordinates over a factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: &[usize]) -> Result<AbelianGroup> {
        if factors.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParameter("zero factor".to_string()));
        }
        let kept: Vec<usize> = factors.iter().copied().filter(|&d| d > 1).collect();
        let order = kept.iter().try_fold(1usize, |acc, &d| {
            acc.checked_mul(d).filter(|&o| o <= 1 << 16)
        });
        let Some(order) = order else {
            return Err(Error::InvalidParameter("group too large".to_string()));
        };
        Ok(AbelianGroup {
            factors: kept,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            coords[i] = x % d;
            x /= d;
        }
        coords
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let mut x = 0;
        for (i, &d) in self.factors.iter().enumerate() {
            x = x * d + coords[i] % d;
        }
        x
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let cx = self.coords(x);
        let cy = self.coords(y);
        let sum: Vec<usize> = cx
            .iter()
            .zip(&cy)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<usize> = self
            .coords(x)
            .iter()
            .zip(&self.factors)
            .map(|(a, d)| (d - a) % d)
            .collect();
        self.index(&c)
    }

    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.add(x, y)).collect())
            .collect()
    }

    /// All automorphisms as image vectors, sorted. Determined by images of
    /// the mixed-radix unit vectors, which must be annihilated by the
    /// matching factor; bijectivity is checked directly.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        if self.order == 1 {
            return vec![vec![0]];
        }
        let k = self.factors.len();
        let units: Vec<usize> = (0..k)
            .map(|i| {
                let mut c = vec![0; k];
                c[i] = 1;
                self.index(&c)
            })
            .collect();
        let candidates: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&d| {
                (0..self.order)
                    .filter(|&x| d % self.order_of(x) == 0)
                    .collect()
            })
            .collect();
        let mut result = Vec::new();
        let mut images = vec![0usize; k];
        self.collect_automorphisms(0, &units, &candidates, &mut images, &mut result);
        result.sort();
        result
    }

    fn collect_automorphisms(
        &self,
        i: usize,
        units: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == units.len() {
            // φ(x) = Σ coords_i(x) · images[i]
            let mut table = vec![0usize; self.order];
            for x in 0..self.order {
                let c = self.coords(x);
                let mut acc = 0;
                for (j, &cj) in c.iter().enumerate() {
                    for _ in 0..cj {
                        acc = self.add(acc, images[j]);
                    }
                }
                table[x] = acc;
            }
            let mut seen = vec![false; self.order];
            if table.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) {
                out.push(table);
            }
            return;
        }
        for &cand in &candidates[i] {
            images[i] = cand;
            self.collect_automorphisms(i + 1, units, candidates, images, out);
        }
    }
}

/// The abelian groups of order `m` in invariant-factor form, deterministic
/// order.
pub fn abelian_groups_of_order(m: usize) -> Vec<AbelianGroup> {
    if m == 1 {
        return vec![AbelianGroup::new(&[]).expect("trivial group")];
    }
    let factorization = factorize(m);
    // Partitions of each prime exponent, descending parts.
    let mut per_prime: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for (&p, &e) in &factorization {
        per_prime.push((p, partitions(e)));
    }
    let mut combos: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new()];
    for (p, parts_list) in &per_prime {
        let mut next = Vec::new();
        for combo in &combos {
            for parts in parts_list {
                let mut c = combo.clone();
                c.push((*p, parts.clone()));
                next.push(c);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|combo| {
            let rank = combo.iter().map(|(_, parts)| parts.len()).max().unwrap();
            let mut factors = vec![1usize; rank];
            for (p, parts) in combo {
                for (i, &e) in parts.iter().enumerate() {
                    factors[i] *= p.pow(e as u32);
                }
            }
            factors.reverse(); // ascending invariant factors
            AbelianGroup::new(&factors).expect("valid factor list")
        })
        .collect()
}

/// Partitions of `e` into weakly decreasing positive parts.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// All left braces of order `m`, pairwise non-isomorphic.
pub fn enumerate_braces(m: usize) -> Result<Vec<Brace>> {
    enumerate_braces_bounded(m, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_braces_bounded(m: usize, bound: usize) -> Result<Vec<Brace>> {
    if m == 0 {
        return Err(Error::InvalidParameter("order must be positive".to_string()));
    }
    if m > bound {
        return Err(Error::BoundExceeded {
            what: "order for brace enumeration",
            size: m,
            bound,
        });
    }
    let mut result: Vec<Brace> = Vec::new();
    for group in abelian_groups_of_order(m) {
        for brace in braces_on(&group) {
            // Braces over distinct additive groups are never isomorphic,
            // so deduplication within the group suffices; kept global for
            // robustness.
            if result.iter().all(|b| brace_isomorphic(b, &brace).is_none()) {
                result.push(brace);
            }
        }
    }
    Ok(result)
}

struct LambdaSearch<'a> {
    group: &'a AbelianGroup,
    auts: Vec<Vec<usize>>,
    aut_index: HashMap<Vec<usize>, usize>,
    add: Vec<Vec<usize>>,
    /// Automorphisms whose order divides the group order; λ values lie in
    /// the image of a homomorphism from `(B, ∘)`, so nothing else can
    /// occur.
    pool: Vec<usize>,
    found: Vec<Vec<usize>>, // complete λ assignments (as aut indices per point)
}

/// All braces with additive group `group`, already reduced up to
/// isomorphism.
fn braces_on(group: &AbelianGroup) -> Vec<Brace> {
    let m = group.order();
    if m == 1 {
        return vec![Brace::from_tables_unchecked(vec![vec![0]], vec![vec![0]])];
    }
    let auts = group.automorphisms();
    let aut_index: HashMap<Vec<usize>, usize> = auts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let add = group.add_table();
    let identity_idx = aut_index[&(0..m).collect::<Vec<usize>>()];

    let mut search = LambdaSearch {
        group,
        auts,
        aut_index,
        add,
        pool: Vec::new(),
        found: Vec::new(),
    };
    search.pool = (0..search.auts.len())
        .filter(|&i| m % search.aut_order(i) == 0)
        .collect();

    let mut assigned: Vec<Option<usize>> = vec![None; m];
    assigned[0] = Some(identity_idx);
    let first_candidates = search.first_level_candidates();
    search.descend(&mut assigned, Some(&first_candidates));

    // Convert to braces and deduplicate by isomorphism, cheap invariants
    // first.
    let mut braces: Vec<Brace> = Vec::new();
    let found = std::mem::take(&mut search.found);
    for lambda in found {
        let mul: Vec<Vec<usize>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| search.add[a][search.auts[lambda[a]][b]])
                    .collect()
            })
            .collect();
        debug_assert!(crate::brace::validate_tables(&search.add, &mul).is_valid());
        let brace = Brace::from_tables_unchecked(search.add.clone(), mul);
        if braces.iter().all(|b| brace_isomorphic(b, &brace).is_none()) {
            braces.push(brace);
        }
    }
    braces
}

impl LambdaSearch<'_> {
    fn compose(&self, a: usize, b: usize) -> usize {
        let va = &self.auts[a];
        let vb = &self.auts[b];
        let composed: Vec<usize> = (0..va.len()).map(|i| va[vb[i]]).collect();
        self.aut_index[&composed]
    }

    fn aut_order(&self, a: usize) -> usize {
        let identity = self.aut_index[&(0..self.group.order()).collect::<Vec<usize>>()];
        let mut x = a;
        let mut k = 1;
        while x != identity {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    fn inverse(&self, a: usize) -> usize {
        let va = &self.auts[a];
        let mut inv = vec![0usize; va.len()];
        for (i, &v) in va.iter().enumerate() {
            inv[v] = i;
        }
        self.aut_index[&inv]
    }

    /// Conjugacy-class representatives of Aut(A) under the subgroup fixing
    /// the point 1 (the first point the search assigns).
    fn first_level_candidates(&self) -> Vec<usize> {
        let stab: Vec<usize> = (0..self.auts.len())
            .filter(|&i| self.auts[i][1] == 1)
            .collect();
        // Small generating set of the stabilizer, greedily.
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<bool> = vec![false; self.auts.len()];
        let identity = self
            .aut_index[&(0..self.group.order()).collect::<Vec<usize>>()];
        span[identity] = true;
        let mut span_count = 1;
        for &s in &stab {
            if span[s] {
                continue;
            }
            gens.push(s);
            // Re-close the span.
            let mut frontier: Vec<usize> = (0..self.auts.len()).filter(|&i| span[i]).collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    for y in [self.compose(x, g), self.compose(g, x)] {
                        if !span[y] {
                            span[y] = true;
                            span_count += 1;
                            frontier.push(y);
                        }
                    }
                    let xi = self.inverse(x);
                    if !span[xi] {
                        span[xi] = true;
                        span_count += 1;
                        frontier.push(xi);
                    }
                }
            }
            if span_count == stab.len() {
                break;
            }
        }
        // Orbits of conjugation by the stabilizer generators.
        let mut rep: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.auts.len()];
        for start in 0..self.auts.len() {
            if seen[start] {
                continue;
            }
            rep.push(start);
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &gens {
                    let gi = self.inverse(g);
                    let conj = self.compose(self.compose(g, x), gi);
                    if !seen[conj] {
                        seen[conj] = true;
                        orbit.push(conj);
                    }
                }
            }
        }
        rep
    }

    fn descend(&mut self, assigned: &mut Vec<Option<usize>>, first: Option<&[usize]>) {
        let m = self.group.order();
        let unassigned: Vec<usize> = (0..m).filter(|&x| assigned[x].is_none()).collect();
        if unassigned.is_empty() {
            self.found
                .push(assigned.iter().map(|o| o.unwrap()).collect());
            return;
        }
        // Prefer a point whose λ is already forced: if y is assigned and
        // the product y ∘ a lands on an assigned point c, then
        // λ_a = λ_y⁻¹ λ_c.
        let (point, candidates): (usize, Vec<usize>) = match first {
            Some(reps) => (unassigned[0], reps.to_vec()),
            None => {
                let mut forced = None;
                'outer: for &a in &unassigned {
                    for y in 0..m {
                        let Some(ly) = assigned[y] else { continue };
                        let c = self.add[y][self.auts[ly][a]];
                        if let Some(lc) = assigned[c] {
                            forced = Some((a, self.compose(self.inverse(ly), lc)));
                            break 'outer;
                        }
                    }
                }
                match forced {
                    Some((a, l)) => (a, vec![l]),
                    None => {
                        let a = unassigned[0];
                        (a, self.open_candidates(assigned, a))
                    }
                }
            }
        };
        for cand in candidates {
            let mut trail: Vec<usize> = Vec::new();
            if self.propagate(assigned, &mut trail, point, cand) {
                self.descend(assigned, None);
            }
            for &p in trail.iter().rev() {
                assigned[p] = None;
            }
        }
    }

    /// Candidates for `λ_a` when no product forces it. Each candidate φ
    /// either sends every product `a ∘ y` (with `y` assigned) to an
    /// unassigned point, or is pinned by one assigned target `c`:
    /// `λ_c = φ λ_y` gives `φ = λ_c λ_y⁻¹`, checkable in constant time.
    /// Everything is drawn from the order-respecting pool.
    fn open_candidates(&self, assigned: &[Option<usize>], a: usize) -> Vec<usize> {
        let m = self.group.order();
        let assigned_points: Vec<(usize, usize)> = (0..m)
            .filter_map(|y| assigned[y].map(|ly| (y, ly)))
            .collect();
        let mut candidates: Vec<usize> = Vec::new();
        for &(y, ly) in &assigned_points {
            if y == 0 {
                continue;
            }
            let ly_inv = self.inverse(ly);
            for &(c, lc) in &assigned_points {
                let phi = self.compose(lc, ly_inv);
                if self.add[a][self.auts[phi][y]] == c {
                    candidates.push(phi);
                }
            }
        }
        'pool: for &phi in &self.pool {
            for &(y, _) in &assigned_points {
                if y == 0 {
                    continue;
                }
                if assigned[self.add[a][self.auts[phi][y]]].is_some() {
                    continue 'pool;
                }
            }
            candidates.push(phi);
        }
        candidates.sort_unstable();
        candidates.dedup();
        candidates
    }

    /// Assigns `λ_point = cand` and closes under the product rule
    /// `λ_{x + λ_x(y)} = λ_x λ_y`; returns false on conflict.
    fn propagate(
        &self,
        assigned: &mut Vec<Option<usize>>,
        trail: &mut Vec<usize>,
        point: usize,
        cand: usize,
    ) -> bool {
        let m = self.group.order();
        let mut queue: Vec<(usize, usize)> = vec![(point, cand)];
        while let Some((x, lx)) = queue.pop() {
            if let Some(existing) = assigned[x] {
                if existing != lx {
                    return false;
                }
                continue;
            }
            assigned[x] = Some(lx);
            trail.push(x);
            for y in 0..m {
                let Some(ly) = assigned[y] else { continue };
                // x ∘ y and y ∘ x.
                queue.push((self.add[x][self.auts[lx][y]], self.compose(lx, ly)));
                queue.push((self.add[y][self.auts[ly][x]], self.compose(ly, lx)));
            }
        }
        true
    }
}
