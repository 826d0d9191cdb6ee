//! Backtracking enumeration of all valid σ-tables of a given size.
//!
//! Rows are chosen one at a time. For an involutive solution the braid
//! relation forces `σ_u ∘ σ_v = σ_x ∘ σ_y` where `u = σ_x(y)` and
//! `v = τ_y(x)`; whenever three of the four rows are known the fourth is
//! determined, so each guessed row propagates into forced rows before the
//! next choice. Leaves are re-checked with the full validator.

use crate::solution::validate_sigma_table;

type Row = Vec<usize>;

pub(crate) struct RowSearch {
    n: usize,
    all_rows: Vec<Row>,
    first_row_candidates: Vec<usize>,
    rows: Vec<Option<usize>>, // indices into all_rows
}

impl RowSearch {
    pub(crate) fn new(n: usize) -> Self {
        let mut all_rows = Vec::new();
        generate_lex(n, &mut vec![false; n], &mut Vec::new(), &mut all_rows);
        // The canonical (lex-least) table of every isomorphism class has a
        // first row that is lex-least under conjugation by 0-fixing
        // permutations: relabeling by such a g keeps row 0 in place and
        // replaces it with g·row·g⁻¹. Restricting row 0 accordingly keeps
        // one representative per class reachable.
        let mut zero_fixing = Vec::new();
        generate_lex(n - 1, &mut vec![false; n - 1], &mut Vec::new(), &mut zero_fixing);
        let zero_fixing: Vec<Row> = zero_fixing
            .into_iter()
            .map(|g| {
                let mut full = vec![0usize];
                full.extend(g.into_iter().map(|v| v + 1));
                full
            })
            .collect();
        let first_row_candidates = (0..all_rows.len())
            .filter(|&i| {
                let p = &all_rows[i];
                zero_fixing.iter().all(|g| {
                    let mut g_inv = vec![0usize; n];
                    for (a, &b) in g.iter().enumerate() {
                        g_inv[b] = a;
                    }
                    let conj: Row = (0..n).map(|x| g[p[g_inv[x]]]).collect();
                    conj >= *p
                })
            })
            .collect();
        RowSearch {
            n,
            all_rows,
            first_row_candidates,
            rows: vec![None; n],
        }
    }

    pub(crate) fn run(&mut self, sink: &mut impl FnMut(&[Vec<usize>])) {
        self.descend(sink);
    }

    fn descend(&mut self, sink: &mut impl FnMut(&[Vec<usize>])) {
        let Some(next) = (0..self.n).find(|&x| self.rows[x].is_none()) else {
            let table: Vec<Row> = self
                .rows
                .iter()
                .map(|r| self.all_rows[r.unwrap()].clone())
                .collect();
            if validate_sigma_table(&table).is_valid() {
                sink(&table);
            }
            return;
        };
        let candidates: Vec<usize> = if next == 0 {
            self.first_row_candidates.clone()
        } else {
            (0..self.all_rows.len()).collect()
        };
        for cand in candidates {
            let mut trail = Vec::new();
            if self.assign_and_propagate(next, cand, &mut trail) {
                self.descend(sink);
            }
            for &x in trail.iter().rev() {
                self.rows[x] = None;
            }
        }
    }

    /// Sets row `x`, then closes under the forced-row rule; false on
    /// conflict. All touched rows are recorded in `trail`.
    fn assign_and_propagate(&mut self, x: usize, cand: usize, trail: &mut Vec<usize>) -> bool {
        self.rows[x] = Some(cand);
        trail.push(x);
        loop {
            match self.scan() {
                ScanOutcome::Conflict => return false,
                ScanOutcome::Forced(y, row) => {
                    let Some(idx) = self.row_index(&row) else {
                        return false;
                    };
                    self.rows[y] = Some(idx);
                    trail.push(y);
                }
                ScanOutcome::Stable => return true,
            }
        }
    }

    fn row_index(&self, row: &Row) -> Option<usize> {
        self.all_rows.binary_search(row).ok()
    }

    fn scan(&self) -> ScanOutcome {
        let n = self.n;
        // Partial injectivity of every τ_y.
        for y in 0..n {
            let mut seen = vec![false; n];
            for x in 0..n {
                let Some(rx) = self.rows[x] else { continue };
                let u = self.all_rows[rx][y];
                let Some(ru) = self.rows[u] else { continue };
                let v = self.all_rows[ru]
                    .iter()
                    .position(|&w| w == x)
                    .expect("rows are permutations");
                if seen[v] {
                    return ScanOutcome::Conflict;
                }
                seen[v] = true;
            }
        }
        // σ_u σ_v = σ_x σ_y with u = σ_x(y), v = τ_y(x).
        for x in 0..n {
            let Some(rx) = self.rows[x] else { continue };
            for y in 0..n {
                let u = self.all_rows[rx][y];
                let Some(ru) = self.rows[u] else { continue };
                let v = self.all_rows[ru]
                    .iter()
                    .position(|&w| w == x)
                    .expect("rows are permutations");
                match (self.rows[y], self.rows[v]) {
                    (Some(ry), Some(rv)) => {
                        let sx = &self.all_rows[rx];
                        let sy = &self.all_rows[ry];
                        let su = &self.all_rows[ru];
                        let sv = &self.all_rows[rv];
                        if (0..n).any(|p| sx[sy[p]] != su[sv[p]]) {
                            return ScanOutcome::Conflict;
                        }
                    }
                    (Some(ry), None) => {
                        // σ_v = σ_u⁻¹ σ_x σ_y.
                        let su_inv = invert(&self.all_rows[ru]);
                        let sx = &self.all_rows[rx];
                        let sy = &self.all_rows[ry];
                        let forced: Row = (0..n).map(|p| su_inv[sx[sy[p]]]).collect();
                        if let Some(rv) = self.rows[v] {
                            if self.all_rows[rv] != forced {
                                return ScanOutcome::Conflict;
                            }
                        } else {
                            return ScanOutcome::Forced(v, forced);
                        }
                    }
                    (None, Some(rv)) => {
                        // σ_y = σ_x⁻¹ σ_u σ_v.
                        let sx_inv = invert(&self.all_rows[rx]);
                        let su = &self.all_rows[ru];
                        let sv = &self.all_rows[rv];
                        let forced: Row = (0..n).map(|p| sx_inv[su[sv[p]]]).collect();
                        return ScanOutcome::Forced(y, forced);
                    }
                    (None, None) => {}
                }
            }
        }
        ScanOutcome::Stable
    }
}

enum ScanOutcome {
    Conflict,
    Forced(usize, Row),
    Stable,
}

fn invert(row: &[usize]) -> Row {
    let mut inv = vec![0usize; row.len()];
    for (i, &v) in row.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn generate_lex(n: usize, used: &mut Vec<bool>, current: &mut Vec<usize>, out: &mut Vec<Row>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            generate_lex(n, used, current, out);
            current.pop();
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_are_generated_in_lex_order() {
        let search = RowSearch::new(3);
        assert_eq!(search.all_rows.len(), 6);
        let mut sorted = search.all_rows.clone();
        sorted.sort();
        assert_eq!(search.all_rows, sorted);
    }

    #[test]
    fn two_point_search_finds_both_tables() {
        let mut search = RowSearch::new(2);
        let mut found = Vec::new();
        search.run(&mut |table| found.push(table.to_vec()));
        assert_eq!(found.len(), 2);
    }
}
