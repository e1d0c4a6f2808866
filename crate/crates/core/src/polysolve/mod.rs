//! Gröbner bases and exact solving of polynomial systems over ℚ(i).

pub mod groebner;
pub mod solve;

use crate::algebra::{SparsePoly, TermOrder};
use crate::error::Result;

pub use groebner::{groebner, normal_form, reduces_to_zero};
pub use solve::{solve_system, solve_zero_dim, Family, SolutionSet};

/// Work limits for a single Gröbner computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Critical pairs actually reduced.
    pub max_pairs: usize,
    /// Largest total degree allowed in the basis.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 20_000, max_degree: 40 }
    }
}

impl Budget {
    /// Reads `max_pairs,max_degree` (either part optional) from an environment-style string.
    pub fn parse(s: &str) -> Option<Budget> {
        let mut b = Budget::default();
        let mut parts = s.split(',');
        if let Some(p) = parts.next().map(str::trim).filter(|p| !p.is_empty()) {
            b.max_pairs = p.parse().ok()?;
        }
        if let Some(d) = parts.next().map(str::trim).filter(|d| !d.is_empty()) {
            b.max_degree = d.parse().ok()?;
        }
        parts.next().is_none().then_some(b)
    }
}

#[derive(Clone, Debug)]
pub struct Ideal {
    pub generators: Vec<SparsePoly>,
    pub term_order: TermOrder,
}

impl Ideal {
    pub fn new(generators: Vec<SparsePoly>, term_order: TermOrder) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { generators, term_order }
    }

    pub fn groebner(&self, budget: &Budget) -> Result<Vec<SparsePoly>> {
        groebner(&self.generators, self.term_order, budget)
    }
}
