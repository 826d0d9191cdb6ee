//! Permutations on `{0, …, n−1}` and a small fully-materialized group engine.
//!
//! The composition convention is fixed once for the whole crate:
//! `(p ∘ q)(i) = p(q(i))`, i.e. `q` acts first. Points are 0-indexed
//! everywhere in code; cycle notation is printed 1-indexed.

pub(crate) mod cayley;
mod group;

pub use cayley::{GroupTable, MillerMoreno, DEFAULT_GROUP_BOUND};
pub use group::{group_isomorphic, CosetSpace, PermGroup};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n−1}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameter(format!(
                    "image table {:?} is not a bijection of 0..{}",
                    image, n
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 0-indexed points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p >= n || q >= n {
                    return Err(Error::InvalidParameter(format!(
                        "cycle point out of range for degree {}",
                        n
                    )));
                }
                if moved[p] {
                    return Err(Error::InvalidParameter(
                        "cycles are not disjoint".to_string(),
                    ));
                }
                moved[p] = true;
                image[p] = q;
            }
        }
        Permutation::from_images(image)
    }

    /// Same as [`from_cycles`](Self::from_cycles) but with 1-indexed points,
    /// the convention used in printed cycle notation.
    pub fn from_cycles_one_indexed(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let shifted: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&p| {
                        p.checked_sub(1).ok_or_else(|| {
                            Error::InvalidParameter("1-indexed cycle contains 0".to_string())
                        })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_cycles(n, &shifted)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(i) = self(other(i))`; `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    pub fn order(&self) -> usize {
        self.cycle_type().iter().fold(1, |acc, &l| lcm(acc, l))
    }

    /// Disjoint cycles of length ≥ 2, each starting at its minimal point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image[p];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.image[p];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-indexed points, e.g. `(1 3)(2 4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the serialized form: space-separated 0-indexed images.
    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!("bad image entry {:?}", tok))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        if image.is_empty() {
            return Err(Error::InvalidParameter("empty permutation".to_string()));
        }
        Permutation::from_images(image)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
