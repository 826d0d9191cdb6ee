//! Involutive non-degenerate set-theoretic solutions as σ-tables.
//!
//! A solution is stored by its σ-table only; τ is forced by involutivity,
//! `τ_y(x) = σ⁻¹_{σ_x(y)}(x)`, and derived at construction. Validation
//! checks non-degeneracy of both families, `r² = id` and the braid
//! relation exhaustively.

mod iso;
mod omega;

pub use iso::{canonical_form, isomorphic, isomorphic_bounded, relabel, DEFAULT_ISO_BOUND};
pub use omega::OmegaContext;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Outcome of validating a σ-table. `None` entries are passes; failures
/// carry a human-readable witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub nondegenerate: Option<String>,
    pub involutive: Option<String>,
    pub braid: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.nondegenerate.is_none() && self.involutive.is_none() && self.braid.is_none()
    }

    pub fn witnesses(&self) -> Vec<&str> {
        [&self.nondegenerate, &self.involutive, &self.braid]
            .into_iter()
            .flatten()
            .map(String::as_str)
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "non-degenerate: {}",
            if self.nondegenerate.is_none() { "yes" } else { "no" }
        )?;
        writeln!(
            f,
            "involutive: {}",
            if self.involutive.is_none() { "yes" } else { "no" }
        )?;
        write!(
            f,
            "braid: {}",
            if self.braid.is_none() { "yes" } else { "no" }
        )?;
        for w in self.witnesses() {
            write!(f, "\nwitness: {}", w)?;
        }
        Ok(())
    }
}

/// Checks the shape of a σ-table: square, entries in range.
pub fn check_table_shape(sigma: &[Vec<usize>]) -> Result<()> {
    let n = sigma.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty sigma table".to_string()));
    }
    for (x, row) in sigma.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidParameter(format!(
                "sigma row {} has length {}, expected {}",
                x,
                row.len(),
                n
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidParameter(format!(
                "sigma[{}] contains out-of-range value {}",
                x, v
            )));
        }
    }
    Ok(())
}

/// Validates a shape-correct σ-table against the three defining conditions.
pub fn validate_sigma_table(sigma: &[Vec<usize>]) -> ValidationReport {
    let n = sigma.len();
    let mut report = ValidationReport::default();

    for (x, row) in sigma.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if seen[v] {
                report.nondegenerate =
                    Some(format!("sigma_{} is not a bijection", x + 1));
                report.involutive = Some("not evaluated: sigma degenerate".to_string());
                report.braid = Some("not evaluated: sigma degenerate".to_string());
                return report;
            }
            seen[v] = true;
        }
    }

    let tau = derive_tau(sigma);
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            let v = tau[y][x];
            if seen[v] {
                report.nondegenerate = Some(format!("tau_{} is not a bijection", y + 1));
                break;
            }
            seen[v] = true;
        }
        if report.nondegenerate.is_some() {
            break;
        }
    }

    // r(x, y) = (σ_x(y), τ_y(x)).
    let r = |x: usize, y: usize| (sigma[x][y], tau[y][x]);
    'inv: for x in 0..n {
        for y in 0..n {
            let (u, v) = r(x, y);
            if r(u, v) != (x, y) {
                report.involutive = Some(format!("r² moves ({}, {})", x + 1, y + 1));
                break 'inv;
            }
        }
    }

    'braid: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // (r×id)(id×r)(r×id) applied to (x, y, z):
                let (a, b) = r(x, y);
                let (c, d) = r(b, z);
                let (e, f) = r(a, c);
                let left = (e, f, d);
                // (id×r)(r×id)(id×r):
                let (a2, b2) = r(y, z);
                let (c2, d2) = r(x, a2);
                let (e2, f2) = r(d2, b2);
                let right = (c2, e2, f2);
                if left != right {
                    report.braid = Some(format!(
                        "braid relation fails at ({}, {}, {})",
                        x + 1,
                        y + 1,
                        z + 1
                    ));
                    break 'braid;
                }
            }
        }
    }
    report
}

fn derive_tau(sigma: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    // Row inverses first: sigma_inv[x][v] = y with sigma[x][y] = v.
    let mut sigma_inv = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            sigma_inv[x][sigma[x][y]] = y;
        }
    }
    let mut tau = vec![vec![0usize; n]; n];
    for y in 0..n {
        for x in 0..n {
            tau[y][x] = sigma_inv[sigma[x][y]][x];
        }
    }
    tau
}

/// A validated involutive non-degenerate solution.
#[derive(Debug)]
pub struct Solution {
    n: usize,
    sigma: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
    group: OnceLock<PermGroup>,
}

impl Clone for Solution {
    fn clone(&self) -> Self {
        let group = OnceLock::new();
        if let Some(g) = self.group.get() {
            let _ = group.set(g.clone());
        }
        Solution {
            n: self.n,
            sigma: self.sigma.clone(),
            tau: self.tau.clone(),
            group,
        }
    }
}

impl PartialEq for Solution {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma
    }
}
impl Eq for Solution {}

impl std::hash::Hash for Solution {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sigma.hash(state);
    }
}

/// The result of iterating retractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipermutationLevel {
    Level(usize),
    NotMultipermutation,
}

impl fmt::Display for MultipermutationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultipermutationLevel::Level(k) => write!(f, "{}", k),
            MultipermutationLevel::NotMultipermutation => write!(f, "none"),
        }
    }
}

impl Solution {
    /// Builds a solution from a σ-table, validating it fully.
    pub fn from_sigma(sigma: Vec<Vec<usize>>) -> Result<Solution> {
        check_table_shape(&sigma)?;
        let report = validate_sigma_table(&sigma);
        if !report.is_valid() {
            return Err(Error::InvalidSolution(report.witnesses().join("; ")));
        }
        let tau = derive_tau(&sigma);
        Ok(Solution {
            n: sigma.len(),
            sigma,
            tau,
            group: OnceLock::new(),
        })
    }

    /// The trivial solution `r(x, y) = (y, x)` on `n` points.
    pub fn trivial(n: usize) -> Solution {
        let sigma = vec![(0..n).collect(); n];
        Solution::from_sigma(sigma).expect("the flip solution is valid")
    }

    /// The shift solution: `σ_x = γ` for every `x`.
    pub fn shift(gamma: &Permutation) -> Solution {
        let sigma = vec![gamma.images().to_vec(); gamma.degree()];
        Solution::from_sigma(sigma).expect("constant sigma rows give a valid solution")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, x: usize) -> &[usize] {
        &self.sigma[x]
    }

    pub fn sigma_table(&self) -> &[Vec<usize>] {
        &self.sigma
    }

    pub fn tau(&self, y: usize) -> &[usize] {
        &self.tau[y]
    }

    pub fn sigma_perm(&self, x: usize) -> Permutation {
        Permutation::from_images(self.sigma[x].clone()).expect("validated row")
    }

    pub fn r_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y], self.tau[y][x])
    }

    pub fn validate(&self) -> ValidationReport {
        validate_sigma_table(&self.sigma)
    }

    /// The group generated by the σ-maps, cached.
    pub fn permutation_group(&self) -> &PermGroup {
        self.group.get_or_init(|| {
            let gens: Vec<Permutation> = (0..self.n).map(|x| self.sigma_perm(x)).collect();
            PermGroup::closure(&gens).expect("nonempty generator list of equal degree")
        })
    }

    pub fn is_indecomposable(&self) -> bool {
        self.permutation_group().is_transitive()
    }

    pub fn is_uniconnected(&self) -> bool {
        self.permutation_group().is_regular()
    }

    /// The retraction: quotient by equality of σ-rows. Returns the quotient
    /// solution and the class map `X → X/∼`.
    pub fn retraction(&self) -> (Solution, Vec<usize>) {
        let mut class_of = vec![usize::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.n {
            match reps.iter().position(|&r| self.sigma[r] == self.sigma[x]) {
                Some(c) => class_of[x] = c,
                None => {
                    class_of[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let mut sigma = vec![vec![0usize; m]; m];
        for (c, &x) in reps.iter().enumerate() {
            for (d, &y) in reps.iter().enumerate() {
                sigma[c][d] = class_of[self.sigma[x][y]];
            }
        }
        let quotient = Solution::from_sigma(sigma)
            .expect("the retraction of a valid solution is valid");
        (quotient, class_of)
    }

    /// Iterates retraction to a single point, or reports failure when the
    /// size stabilizes above one.
    pub fn multipermutation_level(&self) -> MultipermutationLevel {
        let mut current = self.clone();
        let mut level = 0;
        loop {
            if current.size() == 1 {
                return MultipermutationLevel::Level(level);
            }
            let (next, _) = current.retraction();
            if next.size() == current.size() {
                return MultipermutationLevel::NotMultipermutation;
            }
            current = next;
            level += 1;
        }
    }

    pub fn omega_context(&self) -> OmegaContext<'_> {
        OmegaContext::new(self)
    }

    /// Dehornoy's class computed directly from the Ω recursion: the least
    /// `d ≥ 1` with `Ω_{d+1}(x, …, x, y) = y` for all `x, y`.
    pub fn dehornoy_class_direct(&self) -> usize {
        self.omega_context().dehornoy_class()
    }
}
