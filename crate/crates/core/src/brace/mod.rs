//! Finite left braces as a pair of Cayley tables sharing the identity 0:
//! an abelian group `(B, +)` and a group `(B, ∘)` tied together by the
//! left brace law `a ∘ (b + c) = a ∘ b − a + a ∘ c`.
//!
//! The λ-action `λ_a(b) = −a + a ∘ b` is precomputed at construction;
//! validation checks every axiom exhaustively and reports a witness triple
//! on failure.

mod enumerate;
mod families;
mod morphism;

pub use enumerate::{
    abelian_groups_of_order, enumerate_braces, enumerate_braces_bounded, AbelianGroup,
    DEFAULT_ENUMERATION_BOUND,
};
pub use families::{
    cyclic_brace, direct_product, mnc_brace, semidirect_product, trivial_brace, ActionHom,
};
pub use morphism::{automorphisms, brace_isomorphic, canonical_tables, BraceMorphism};

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{lcm, GroupTable};

/// Witness-carrying validation outcome for a pair of tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraceReport {
    pub additive_group: Option<String>,
    pub multiplicative_group: Option<String>,
    pub brace_law: Option<String>,
    pub lambda: Option<String>,
}

impl BraceReport {
    pub fn is_valid(&self) -> bool {
        self.additive_group.is_none()
            && self.multiplicative_group.is_none()
            && self.brace_law.is_none()
            && self.lambda.is_none()
    }

    pub fn witnesses(&self) -> Vec<&str> {
        [
            &self.additive_group,
            &self.multiplicative_group,
            &self.brace_law,
            &self.lambda,
        ]
        .into_iter()
        .flatten()
        .map(String::as_str)
        .collect()
    }
}

fn check_group_table(table: &[Vec<usize>], what: &str) -> std::result::Result<Vec<usize>, String> {
    let m = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != m {
            return Err(format!("{} row {} has wrong length", what, i));
        }
        if row.iter().any(|&v| v >= m) {
            return Err(format!("{} row {} out of range", what, i));
        }
    }
    for i in 0..m {
        if table[0][i] != i {
            return Err(format!("{}: 0 is not a left identity at {}", what, i));
        }
        if table[i][0] != i {
            return Err(format!("{}: 0 is not a right identity at {}", what, i));
        }
    }
    let mut inv = vec![usize::MAX; m];
    for i in 0..m {
        match (0..m).find(|&j| table[i][j] == 0 && table[j][i] == 0) {
            Some(j) => inv[i] = j,
            None => return Err(format!("{}: element {} has no inverse", what, i)),
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(format!(
                        "{}: associativity fails at ({}, {}, {})",
                        what, a, b, c
                    ));
                }
            }
        }
    }
    Ok(inv)
}

/// Exhaustive validation of an (add, mul) table pair as a left brace.
pub fn validate_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> BraceReport {
    let mut report = BraceReport::default();
    if add.len() != mul.len() {
        report.additive_group = Some("tables have different sizes".into());
        return report;
    }
    let m = add.len();
    if m == 0 {
        report.additive_group = Some("empty tables".into());
        return report;
    }

    let neg = match check_group_table(add, "addition") {
        Ok(neg) => {
            if let Some((a, b)) = (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .find(|&(a, b)| add[a][b] != add[b][a])
            {
                report.additive_group =
                    Some(format!("addition is not commutative at ({}, {})", a, b));
                return report;
            }
            neg
        }
        Err(w) => {
            report.additive_group = Some(w);
            return report;
        }
    };

    if let Err(w) = check_group_table(mul, "multiplication") {
        report.multiplicative_group = Some(w);
        return report;
    }

    'law: for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                // a∘(b+c) = a∘b − a + a∘c
                let left = mul[a][add[b][c]];
                let right = add[add[mul[a][b]][neg[a]]][mul[a][c]];
                if left != right {
                    report.brace_law =
                        Some(format!("brace law fails at ({}, {}, {})", a, b, c));
                    break 'law;
                }
            }
        }
    }
    if report.brace_law.is_some() {
        return report;
    }

    // λ_a: b ↦ −a + a∘b must be an additive automorphism, and a ↦ λ_a a
    // homomorphism from (B, ∘) to Aut(B, +).
    let lambda: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| add[neg[a]][mul[a][b]]).collect())
        .collect();
    for a in 0..m {
        let mut seen = vec![false; m];
        for &v in &lambda[a] {
            if seen[v] {
                report.lambda = Some(format!("lambda_{} is not a bijection", a));
                return report;
            }
            seen[v] = true;
        }
        for b in 0..m {
            for c in 0..m {
                if lambda[a][add[b][c]] != add[lambda[a][b]][lambda[a][c]] {
                    report.lambda = Some(format!(
                        "lambda_{} is not additive at ({}, {})",
                        a, b, c
                    ));
                    return report;
                }
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            let ab = mul[a][b];
            for x in 0..m {
                if lambda[ab][x] != lambda[a][lambda[b][x]] {
                    report.lambda = Some(format!(
                        "lambda is not multiplicative at ({}, {}) on {}",
                        a, b, x
                    ));
                    return report;
                }
            }
        }
    }
    report
}

/// A validated finite left brace.
#[derive(Clone, PartialEq, Eq)]
pub struct Brace {
    m: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
    lambda: Vec<Vec<usize>>,
}

impl fmt::Debug for Brace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Brace(order {})", self.m)
    }
}

impl Brace {
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Brace> {
        let report = validate_tables(&add, &mul);
        if !report.is_valid() {
            return Err(Error::InvalidBrace(report.witnesses().join("; ")));
        }
        Ok(Brace::from_tables_unchecked(add, mul))
    }

    pub(crate) fn from_tables_unchecked(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Brace {
        let m = add.len();
        let mut neg = vec![0usize; m];
        let mut inv = vec![0usize; m];
        for a in 0..m {
            neg[a] = (0..m).find(|&b| add[a][b] == 0).expect("additive inverse");
            inv[a] = (0..m)
                .find(|&b| mul[a][b] == 0 && mul[b][a] == 0)
                .expect("multiplicative inverse");
        }
        let lambda = (0..m)
            .map(|a| (0..m).map(|b| add[neg[a]][mul[a][b]]).collect())
            .collect();
        Brace {
            m,
            add,
            mul,
            neg,
            inv,
            lambda,
        }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// Additive inverse `−a`.
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Multiplicative inverse `a⁻`.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda[a][b]
    }

    pub fn add_rows(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_rows(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn lambda_table(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    /// `k·a` in `(B, +)`.
    pub fn add_multiple(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    pub fn additive_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `exp(B, +)`: for an abelian group this equals the maximal order.
    pub fn additive_exponent(&self) -> usize {
        (0..self.m).fold(1, |acc, a| lcm(acc, self.additive_order(a)))
    }

    /// `{a : λ_a = id}`; equivalently `{a : a + b = a ∘ b for all b}`.
    pub fn socle(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&a| (0..self.m).all(|b| self.lambda[a][b] == b))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.mul
    }

    pub fn additive_table(&self) -> GroupTable {
        GroupTable::from_parts_unchecked(self.add.clone(), self.neg.clone())
    }

    pub fn multiplicative_table(&self) -> GroupTable {
        GroupTable::from_parts_unchecked(self.mul.clone(), self.inv.clone())
    }

    /// Invariant factors of `(B, +)`.
    pub fn additive_invariants(&self) -> Vec<usize> {
        self.additive_table()
            .abelian_invariants()
            .expect("the additive group is abelian")
    }

    /// Left ideal: a ∘-subgroup closed under every λ_a.
    pub fn is_left_ideal(&self, subset: &[usize]) -> Result<bool> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.multiplicative_table().is_subgroup(&sorted) {
            return Err(Error::NotSubgroup);
        }
        Ok((0..self.m).all(|a| {
            sorted
                .iter()
                .all(|&x| sorted.binary_search(&self.lambda[a][x]).is_ok())
        }))
    }

    /// Ideal: a left ideal that is normal in `(B, ∘)`.
    pub fn is_ideal(&self, subset: &[usize]) -> Result<bool> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(self.is_left_ideal(&sorted)? && self.multiplicative_table().is_normal(&sorted))
    }

    /// The elements of p-power additive order, for each prime p dividing
    /// the order; each is the (unique) additive Sylow subgroup.
    pub fn additive_sylow(&self, p: usize) -> Vec<usize> {
        (0..self.m)
            .filter(|&x| {
                let mut o = self.additive_order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect()
    }

    /// Quotient brace by the socle; cosets are labeled by least member,
    /// in increasing order, so the zero coset is element 0.
    pub fn quotient_by_socle(&self) -> Brace {
        let socle = self.socle();
        self.quotient_by_ideal(&socle)
            .expect("the socle is an ideal")
    }

    pub(crate) fn quotient_by_ideal(&self, ideal: &[usize]) -> Result<Brace> {
        if !self.is_ideal(ideal)? {
            return Err(Error::InvalidParameter(
                "subset is not an ideal".to_string(),
            ));
        }
        let table = self.multiplicative_table();
        let (cosets, _) = table.left_cosets(ideal);
        // On an ideal, multiplicative and additive cosets agree.
        let class_of = |x: usize| -> usize {
            cosets
                .iter()
                .position(|c| c.binary_search(&x).is_ok())
                .expect("cosets partition")
        };
        let k = cosets.len();
        let mut add = vec![vec![0usize; k]; k];
        let mut mul = vec![vec![0usize; k]; k];
        for (i, ci) in cosets.iter().enumerate() {
            for (j, cj) in cosets.iter().enumerate() {
                add[i][j] = class_of(self.add(ci[0], cj[0]));
                mul[i][j] = class_of(self.mul(ci[0], cj[0]));
            }
        }
        Brace::new(add, mul)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_brace_on_z4_is_valid() {
        let b = trivial_brace(&[4]).unwrap();
        assert!(b.is_trivial());
        assert_eq!(b.socle(), vec![0, 1, 2, 3]);
        assert_eq!(b.additive_exponent(), 4);
    }

    #[test]
    fn c321_is_valid_with_expected_structure() {
        let b = cyclic_brace(3, 2, 1).unwrap();
        assert_eq!(b.order(), 9);
        // Multiplicative powers of 1: 1, 5, 3, 4, 8, 6, 7, 2, 0.
        let mut x = 1;
        let mut seq = vec![1];
        loop {
            x = b.mul(x, 1);
            seq.push(x);
            if x == 0 {
                break;
            }
        }
        assert_eq!(seq, vec![1, 5, 3, 4, 8, 6, 7, 2, 0]);
        assert_eq!(b.multiplicative_order(1), 9);
        assert_eq!(b.socle(), vec![0, 3, 6]);
        assert_eq!(b.additive_exponent(), 9);
    }

    #[test]
    fn invalid_multiplication_is_rejected_with_witness() {
        // a∘b = a + b + ab mod 4: element 1 has no ∘-inverse.
        let add: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect();
        let mul: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| (a + b + a * b) % 4).collect())
            .collect();
        let report = validate_tables(&add, &mul);
        assert!(!report.is_valid());
        assert!(report
            .witnesses()
            .iter()
            .any(|w| w.contains("no inverse") || w.contains("multiplication")));
        assert!(Brace::new(add, mul).is_err());
    }

    #[test]
    fn cpnn_coincides_with_trivial() {
        let b = cyclic_brace(2, 2, 2).unwrap();
        assert!(b.is_trivial());
        let t = trivial_brace(&[4]).unwrap();
        assert_eq!(b.add_rows(), t.add_rows());
        assert_eq!(b.mul_rows(), t.mul_rows());
    }

    #[test]
    fn trivial_klein_brace_has_identity_lambda() {
        let b = trivial_brace(&[2, 2]).unwrap();
        for a in 0..4 {
            for x in 0..4 {
                assert_eq!(b.lambda(a, x), x);
            }
        }
    }

    #[test]
    fn c221_has_exponent_four_and_involutive_multiplication() {
        let b = cyclic_brace(2, 2, 1).unwrap();
        assert_eq!(b.additive_exponent(), 4);
        for x in 1..4 {
            assert!(b.multiplicative_order(x) <= 2);
        }
    }

    #[test]
    fn lambda_identities_hold() {
        for b in [
            cyclic_brace(3, 2, 1).unwrap(),
            cyclic_brace(2, 2, 1).unwrap(),
            trivial_brace(&[2, 3]).unwrap(),
        ] {
            let m = b.order();
            for a in 0..m {
                assert_eq!(b.lambda(a, 0), 0);
                for x in 0..m {
                    // a∘x = a + λ_a(x)
                    assert_eq!(b.mul(a, x), b.add(a, b.lambda(a, x)));
                    // a + x = a ∘ λ_{a⁻}(x)
                    assert_eq!(b.add(a, x), b.mul(a, b.lambda(b.inv(a), x)));
                }
            }
        }
    }

    #[test]
    fn socle_is_an_ideal_and_quotient_works() {
        let b = cyclic_brace(3, 2, 1).unwrap();
        let socle = b.socle();
        assert!(b.is_ideal(&socle).unwrap());
        let q = b.quotient_by_socle();
        assert_eq!(q.order(), 3);
        assert!(q.is_trivial());

        let t = trivial_brace(&[6]).unwrap();
        assert_eq!(t.quotient_by_socle().order(), 1);
    }

    #[test]
    fn additive_sylow_subgroups_are_left_ideals() {
        for b in [
            trivial_brace(&[6]).unwrap(),
            cyclic_brace(3, 2, 1).unwrap(),
            cyclic_brace(2, 2, 1).unwrap(),
        ] {
            for p in [2usize, 3] {
                if b.order() % p != 0 {
                    continue;
                }
                let sylow = b.additive_sylow(p);
                if sylow.len() > 1 {
                    assert!(b.is_left_ideal(&sylow).unwrap());
                }
            }
        }
    }

    #[test]
    fn exponent_equals_max_additive_order() {
        for b in [
            cyclic_brace(3, 2, 1).unwrap(),
            cyclic_brace(2, 3, 1).unwrap(),
            trivial_brace(&[2, 2, 3]).unwrap(),
        ] {
            let max = (0..b.order()).map(|x| b.additive_order(x)).max().unwrap();
            assert_eq!(b.additive_exponent(), max);
        }
    }

    #[test]
    fn non_subgroup_subset_is_an_error() {
        let b = trivial_brace(&[4]).unwrap();
        assert!(b.is_left_ideal(&[0, 1]).is_err());
    }
}
