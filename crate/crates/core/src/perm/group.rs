//! Permutation groups materialized by breadth-first closure, with generator
//! words recorded for every element.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::cayley::{table_from_products, GroupTable};
use crate::perm::Permutation;

/// A fully materialized permutation group. Element 0 is the identity and
/// the element order is the deterministic BFS order (generator index as
/// tiebreak), so two closures of the same generator list are identical.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
    words: Vec<Vec<usize>>,
    index: HashMap<Permutation, usize>,
    table: OnceLock<GroupTable>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(t.clone());
        }
        PermGroup {
            degree: self.degree,
            elements: self.elements.clone(),
            generators: self.generators.clone(),
            words: self.words.clone(),
            index: self.index.clone(),
            table,
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for PermGroup {}

impl PermGroup {
    /// Breadth-first product closure of the generators, recording for each
    /// element one factorization as a word in the (deduplicated) generators.
    pub fn closure(generators: &[Permutation]) -> Result<PermGroup> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidParameter(
                "closure requires at least one generator".to_string(),
            ));
        };
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);

        // Deduplicate generators, keeping first-occurrence order.
        let mut gen_perms: Vec<Permutation> = Vec::new();
        for g in generators {
            if !gen_perms.contains(g) {
                gen_perms.push(g.clone());
            }
        }

        let mut head = 0;
        while head < elements.len() {
            for j in 0..gen_perms.len() {
                let next = elements[head].compose_unchecked(&gen_perms[j]);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    let mut word = words[head].clone();
                    word.push(j);
                    words.push(word);
                    elements.push(next);
                }
            }
            head += 1;
        }

        let generators = gen_perms.iter().map(|g| index[g]).collect();
        Ok(PermGroup {
            degree,
            elements,
            generators,
            words,
            index,
            table: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Indices of the generators within the element list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// One factorization of each element as generator indices (into
    /// [`generator_indices`](Self::generator_indices)).
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Orbits of the natural action, sorted internally and by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for &g in &self.generators {
                    let q = self.elements[g].apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Regular: transitive with order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    /// Indices of elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].apply(point) == point)
            .collect()
    }

    /// The composition table of this group (identity at index 0), cached.
    pub fn table(&self) -> &GroupTable {
        self.table.get_or_init(|| {
            table_from_products(&self.elements, |a: &Permutation, b: &Permutation| {
                a.compose_unchecked(b)
            })
        })
    }

    /// Every subgroup (as sorted element-index lists), exactly once.
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        self.table().subgroups()
    }

    pub fn subgroups_bounded(&self, bound: usize) -> Result<Vec<Vec<usize>>> {
        self.table().subgroups_bounded(bound)
    }

    /// Largest normal subgroup of the group contained in `sub`.
    pub fn core(&self, sub: &[usize]) -> Vec<usize> {
        self.table().core(sub)
    }

    pub fn is_cyclic(&self) -> bool {
        self.table().is_cyclic()
    }

    pub fn is_abelian(&self) -> bool {
        self.table().is_abelian()
    }

    pub fn is_dihedral(&self) -> bool {
        self.table().is_dihedral()
    }

    pub fn is_generalized_dihedral(&self) -> bool {
        self.table().is_generalized_dihedral()
    }

    pub fn is_generalized_quaternion(&self) -> bool {
        self.table().is_generalized_quaternion()
    }

    pub fn is_dedekind(&self) -> bool {
        self.table().is_dedekind()
    }

    pub fn minimal_non_cyclic(&self) -> Option<super::MillerMoreno> {
        self.table().minimal_non_cyclic()
    }

    pub fn name(&self) -> String {
        self.table().name()
    }
}

/// Abstract-group isomorphism of two permutation groups.
pub fn group_isomorphic(g1: &PermGroup, g2: &PermGroup) -> bool {
    g1.table().isomorphic_to(g2.table()).is_some()
}

/// The left cosets of a subgroup, ordered by least member; the
/// representative of each coset is its least member, so the identity coset
/// comes first with representative 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    pub subgroup: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
}

impl CosetSpace {
    pub fn new(group: &PermGroup, subgroup: &[usize]) -> Result<CosetSpace> {
        let mut sub = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if !group.table().is_subgroup(&sub) {
            return Err(Error::NotSubgroup);
        }
        let (cosets, representatives) = group.table().left_cosets(&sub);
        Ok(CosetSpace {
            subgroup: sub,
            cosets,
            representatives,
        })
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.binary_search(&element).is_ok())
            .expect("cosets partition the group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::MillerMoreno;

    fn perm(n: usize, cycles: &[Vec<usize>]) -> Permutation {
        Permutation::from_cycles_one_indexed(n, cycles).unwrap()
    }

    #[test]
    fn cyclic_closure_has_order_three() {
        let g = PermGroup::closure(&[perm(3, &[vec![1, 2, 3]])]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic());
        assert!(g.is_regular());
    }

    #[test]
    fn four_point_sample_generators_close_to_dihedral_eight() {
        let gens = [
            perm(4, &[vec![3, 4]]),
            perm(4, &[vec![1, 3, 2, 4]]),
            perm(4, &[vec![1, 4, 2, 3]]),
            perm(4, &[vec![1, 2]]),
        ];
        let g = PermGroup::closure(&gens).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_dihedral());
        assert!(g.is_transitive());
        assert!(!g.is_regular());

        // Abstract dihedral group of order 8 from a presentation closure.
        let d8 = PermGroup::closure(&[perm(4, &[vec![1, 2, 3, 4]]), perm(4, &[vec![2, 4]])]).unwrap();
        assert!(group_isomorphic(&g, &d8));
    }

    #[test]
    fn eight_point_sample_generators_close_to_order_eight() {
        let gens = [
            perm(8, &[vec![1, 2], vec![3, 5], vec![4, 7], vec![6, 8]]),
            perm(8, &[vec![1, 6, 4, 3], vec![2, 5, 7, 8]]),
            perm(8, &[vec![1, 3, 4, 6], vec![2, 8, 7, 5]]),
            perm(8, &[vec![1, 7], vec![2, 4], vec![3, 8], vec![5, 6]]),
        ];
        let g = PermGroup::closure(&gens).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_regular());
    }

    #[test]
    fn trivial_group_orbits_are_singletons() {
        let g = PermGroup::closure(&[Permutation::identity(3)]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0], vec![1], vec![2]]);
        assert!(!g.is_transitive());
    }

    #[test]
    fn shift_group_of_order_five_is_regular() {
        let g = PermGroup::closure(&[perm(5, &[vec![1, 2, 3, 4, 5]])]).unwrap();
        assert!(g.is_regular());
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let gens = [perm(4, &[vec![1, 2, 3, 4]]), perm(4, &[vec![2, 4]])];
        let g = PermGroup::closure(&gens).unwrap();
        for (i, word) in g.words().iter().enumerate() {
            let mut acc = Permutation::identity(4);
            for &j in word {
                acc = acc
                    .compose(g.element(g.generator_indices()[j]))
                    .unwrap();
            }
            assert_eq!(&acc, g.element(i));
        }
    }

    #[test]
    fn closure_is_a_fixpoint() {
        let gens = [perm(4, &[vec![1, 2, 3, 4]]), perm(4, &[vec![2, 4]])];
        let g = PermGroup::closure(&gens).unwrap();
        let again = PermGroup::closure(g.elements()).unwrap();
        assert_eq!(again.order(), g.order());
        for e in again.elements() {
            assert!(g.contains(e));
        }
    }

    #[test]
    fn regular_representation_of_f21_is_minimal_non_cyclic() {
        // Build the order-21 metacyclic group on 7 points, then pass to its
        // regular representation on 21 points.
        let a = perm(7, &[vec![1, 2, 3, 4, 5, 6, 7]]);
        // Conjugation x ↦ 2x on Z/7 fixes 0.
        let b = Permutation::from_images(vec![0, 2, 4, 6, 1, 3, 5]).unwrap();
        let small = PermGroup::closure(&[a, b]).unwrap();
        assert_eq!(small.order(), 21);

        let regular_gens: Vec<Permutation> = small
            .generator_indices()
            .iter()
            .map(|&gi| {
                let images = (0..21)
                    .map(|x| {
                        small
                            .index_of(
                                &small.element(gi).compose_unchecked(small.element(x)),
                            )
                            .unwrap()
                    })
                    .collect();
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let regular = PermGroup::closure(&regular_gens).unwrap();
        assert_eq!(regular.order(), 21);
        assert!(regular.is_regular());
        assert_eq!(
            regular.minimal_non_cyclic(),
            Some(MillerMoreno::Metacyclic { p: 7, q: 3, n: 1 })
        );
    }

    #[test]
    fn subgroup_enumeration_refuses_above_the_bound() {
        // S5 on 5 points has order 120, above the default bound of 100.
        let s5 = PermGroup::closure(&[
            perm(5, &[vec![1, 2, 3, 4, 5]]),
            perm(5, &[vec![1, 2]]),
        ])
        .unwrap();
        assert_eq!(s5.order(), 120);
        assert!(matches!(
            s5.subgroups(),
            Err(Error::BoundExceeded { size: 120, .. })
        ));
        assert!(s5.subgroups_bounded(120).is_ok());
    }

    #[test]
    fn regularity_is_transitivity_plus_order_both_ways() {
        // Dual route: regular iff transitive with trivial point stabilizers,
        // iff transitive with order equal to the degree. Checked over a
        // spread of small generator sets.
        let samples: Vec<Vec<Permutation>> = vec![
            vec![perm(4, &[vec![1, 2, 3, 4]])],
            vec![perm(4, &[vec![1, 2], vec![3, 4]]), perm(4, &[vec![1, 3], vec![2, 4]])],
            vec![perm(4, &[vec![1, 2, 3, 4]]), perm(4, &[vec![2, 4]])],
            vec![perm(5, &[vec![1, 2, 3]])],
            vec![perm(6, &[vec![1, 2, 3, 4, 5, 6]]), perm(6, &[vec![2, 6], vec![3, 5]])],
            vec![perm(6, &[vec![1, 2], vec![3, 4], vec![5, 6]]), perm(6, &[vec![1, 3, 5], vec![2, 4, 6]])],
        ];
        for gens in samples {
            let g = PermGroup::closure(&gens).unwrap();
            let by_definition = g.is_transitive()
                && (0..g.degree()).all(|p| g.stabilizer(p).len() == 1);
            let by_order = g.is_transitive() && g.order() == g.degree();
            assert_eq!(g.is_regular(), by_definition);
            assert_eq!(g.is_regular(), by_order);
        }
    }

    #[test]
    fn coset_space_partitions_the_group() {
        let gens = [perm(4, &[vec![1, 2, 3, 4]]), perm(4, &[vec![2, 4]])];
        let g = PermGroup::closure(&gens).unwrap();
        let stab = g.stabilizer(0);
        let cosets = CosetSpace::new(&g, &stab).unwrap();
        assert_eq!(cosets.len(), g.order() / stab.len());
        assert_eq!(cosets.representatives[0], 0);
        let total: usize = cosets.cosets.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order());
        for c in &cosets.cosets {
            assert_eq!(c.len(), stab.len());
        }
        assert!(CosetSpace::new(&g, &[0, 3]).is_err() || g.table().is_subgroup(&[0, 3]));
    }
}
