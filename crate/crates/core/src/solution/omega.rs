//! The Ω recursion over the derived operation `x · y = σ_x⁻¹(y)` and the
//! Dehornoy class it defines.

use crate::solution::Solution;

/// A solution together with its derived `·` table.
pub struct OmegaContext<'a> {
    solution: &'a Solution,
    dot: Vec<Vec<usize>>,
}

impl<'a> OmegaContext<'a> {
    pub fn new(solution: &'a Solution) -> Self {
        let n = solution.size();
        let mut dot = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                dot[x][solution.sigma(x)[y]] = y;
            }
        }
        OmegaContext { solution, dot }
    }

    /// `x · y = σ_x⁻¹(y)`.
    pub fn dot(&self, x: usize, y: usize) -> usize {
        self.dot[x][y]
    }

    pub fn dot_table(&self) -> &[Vec<usize>] {
        &self.dot
    }

    /// `Ω_k(args)` for `k = args.len()`, by dynamic programming over the
    /// shared-prefix recursion (quadratic instead of the exponential
    /// unfolding of the definition).
    pub fn omega(&self, args: &[usize]) -> usize {
        assert!(!args.is_empty(), "omega needs at least one argument");
        let k = args.len();
        // level[j] = Ω_l(args[0..l-1], args[j]) for the current level l.
        let mut level: Vec<usize> = args.to_vec();
        for l in 2..=k {
            let head = level[l - 2];
            for j in l - 1..k {
                level[j] = self.dot(head, level[j]);
            }
        }
        level[k - 1]
    }

    /// The least `d ≥ 1` with `Ω_{d+1}(x, …, x, y) = y` for all `x, y`,
    /// found by iterating the specialized recursion
    /// `g_{k+1}(x, y) = d_k(x) · g_k(x, y)`, `d_{k+1}(x) = d_k(x) · d_k(x)`.
    pub fn dehornoy_class(&self) -> usize {
        let n = self.solution.size();
        // The class divides the order of the permutation group.
        let cap = self.solution.permutation_group().order();
        let mut heads: Vec<usize> = (0..n).collect(); // d_k(x), k = 1
        let mut tails: Vec<Vec<usize>> = vec![(0..n).collect(); n]; // g_k(x, ·), k = 1
        for d in 1..=cap {
            for x in 0..n {
                for y in 0..n {
                    tails[x][y] = self.dot(heads[x], tails[x][y]);
                }
                heads[x] = self.dot(heads[x], heads[x]);
            }
            // tails now holds g_{d+1}.
            if tails
                .iter()
                .all(|row| row.iter().enumerate().all(|(y, &v)| v == y))
            {
                return d;
            }
        }
        unreachable!("the Dehornoy class of a valid solution divides the group order");
    }
}
