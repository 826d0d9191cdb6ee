//! Finite involutive non-degenerate set-theoretic solutions of the
//! Yang-Baxter equation, finite left braces, and the machinery connecting
//! them: the coset construction of solutions from braces, the permutation
//! left brace of a solution, Dehornoy's class computed by independent
//! methods, exhaustive censuses, and a textual catalog format.
//!
//! Everything is exhaustive and exact, aimed at structures of size up to a
//! few dozen points (groups up to order ~100).

pub mod error;
pub mod fixtures;
pub mod brace;
pub mod catalog;
pub mod census;
pub mod construct;
pub mod perm;
pub mod permbrace;
pub mod solution;

pub use error::{Error, Result};
