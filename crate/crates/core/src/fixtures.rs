//! Built-in example objects: two small solutions with notable behaviour,
//! the shift family, and the brace families used throughout the tests and
//! the CLI `examples` verb.

use crate::brace::{semidirect_product, trivial_brace, ActionHom, Brace};
use crate::catalog::{brace_record, solution_record, CatalogRecord};
use crate::perm::Permutation;
use crate::solution::Solution;

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles_one_indexed(n, &cycles).expect("fixture cycles are valid")
}

/// Four-point indecomposable solution whose permutation group is dihedral
/// of order 8; indecomposable but not uniconnected, Dehornoy class 2.
pub fn size4_d8() -> Solution {
    let rows = [
        perm(4, &[&[3, 4]]),
        perm(4, &[&[1, 3, 2, 4]]),
        perm(4, &[&[1, 4, 2, 3]]),
        perm(4, &[&[1, 2]]),
    ];
    Solution::from_sigma(rows.iter().map(|p| p.images().to_vec()).collect())
        .expect("fixture is a valid solution")
}

/// Eight-point uniconnected solution whose retraction is not uniconnected.
pub fn size8_uniconnected() -> Solution {
    let s12 = perm(8, &[&[1, 2], &[3, 5], &[4, 7], &[6, 8]]);
    let s38 = perm(8, &[&[1, 6, 4, 3], &[2, 5, 7, 8]]);
    let s47 = perm(8, &[&[1, 3, 4, 6], &[2, 8, 7, 5]]);
    let s56 = perm(8, &[&[1, 7], &[2, 4], &[3, 8], &[5, 6]]);
    let rows = [&s12, &s12, &s38, &s47, &s56, &s56, &s47, &s38];
    Solution::from_sigma(rows.iter().map(|p| p.images().to_vec()).collect())
        .expect("fixture is a valid solution")
}

/// The shift solution on `n` points with γ a single n-cycle.
pub fn shift(n: usize) -> Solution {
    let gamma = Permutation::from_cycles(n, &[(0..n).collect()]).expect("one full cycle");
    Solution::shift(&gamma)
}

/// The brace of order `2n` whose multiplicative group is dihedral: the
/// trivial brace on `Z/n` extended by `Z/2` acting by inversion.
pub fn dihedral_brace(n: usize) -> Brace {
    let bn = trivial_brace(&[n]).expect("cyclic group");
    let b2 = trivial_brace(&[2]).expect("cyclic group");
    let alpha = ActionHom::inversion(&bn, &b2).expect("inversion is a valid action");
    semidirect_product(&bn, &b2, &alpha).expect("semidirect product of trivial braces")
}

/// A named built-in object with the invariants it is expected to have;
/// the CLI `examples` verb prints the record and the test suite verifies
/// the sidecar.
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub record: CatalogRecord,
    pub expected: Vec<(&'static str, &'static str)>,
}

pub fn all_fixtures() -> Vec<Fixture> {
    let mut fixtures = vec![
        Fixture {
            name: "size4-d8",
            description: "4-point indecomposable solution, dihedral group of order 8",
            record: solution_record(&size4_d8()),
            expected: vec![
                ("indecomposable", "true"),
                ("uniconnected", "false"),
                ("group", "D8"),
                ("group_order", "8"),
                ("dehornoy_class", "2"),
                ("mpl", "none"),
            ],
        },
        Fixture {
            name: "size8-uniconnected",
            description: "8-point uniconnected solution whose retraction is not uniconnected",
            record: solution_record(&size8_uniconnected()),
            expected: vec![
                ("indecomposable", "true"),
                ("uniconnected", "true"),
                ("group_order", "8"),
            ],
        },
        Fixture {
            name: "brace-trivial-6",
            description: "trivial brace on Z/6",
            record: brace_record(&trivial_brace(&[6]).unwrap()),
            expected: vec![("trivial", "true"), ("multiplicative", "C6")],
        },
        Fixture {
            name: "brace-c-3-2-1",
            description: "brace on Z/9 with a∘b = a+b+3ab",
            record: brace_record(&crate::brace::cyclic_brace(3, 2, 1).unwrap()),
            expected: vec![
                ("trivial", "false"),
                ("multiplicative", "C9"),
                ("socle", "3"),
                ("additive_exponent", "9"),
            ],
        },
        Fixture {
            name: "brace-mnc-7-3-1",
            description: "order-21 brace with metacyclic C7:C3 multiplicative group",
            record: brace_record(&crate::brace::mnc_brace(7, 3, 1, 1).unwrap()),
            expected: vec![("multiplicative", "C7:C3"), ("additive_exponent", "21")],
        },
    ];
    for n in [3usize, 5, 7] {
        let name: &'static str = match n {
            3 => "brace-dihedral-6",
            5 => "brace-dihedral-10",
            _ => "brace-dihedral-14",
        };
        let mult: &'static str = match n {
            3 => "D6",
            5 => "D10",
            _ => "D14",
        };
        fixtures.push(Fixture {
            name,
            description: "brace with dihedral multiplicative group (trivial Z/n by inversion)",
            record: brace_record(&dihedral_brace(n)),
            expected: vec![("multiplicative", mult), ("trivial", "false")],
        });
    }
    for n in 2..=6usize {
        let name: &'static str = match n {
            2 => "shift-2",
            3 => "shift-3",
            4 => "shift-4",
            5 => "shift-5",
            _ => "shift-6",
        };
        let class: &'static str = match n {
            2 => "2",
            3 => "3",
            4 => "4",
            5 => "5",
            _ => "6",
        };
        fixtures.push(Fixture {
            name,
            description: "shift solution: every σ-row is the same full cycle",
            record: solution_record(&shift(n)),
            expected: vec![("dehornoy_class", class), ("mpl", "1")],
        });
    }
    fixtures
}

pub fn fixture(name: &str) -> Option<Fixture> {
    all_fixtures().into_iter().find(|f| f.name == name)
}
