use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Exponent vector. The derived `Ord` is graded-lexicographic with the first
/// variable largest, which is the iteration order of every polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, if `self` divides `o`.
    pub fn div_of(&self, o: &Monomial) -> Option<Monomial> {
        if self.divides(o) {
            Some(Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        TermOrder::GrLex.cmp(self, o)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrder {
    Lex,
    #[default]
    GrLex,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
        }
    }
}

/// Ordered variable names shared between polynomials of one ring.
#[derive(Clone, Eq)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into())
    }

    pub fn xy() -> Self {
        Self::new(&["x", "y"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let y2 = Monomial(vec![0, 2]);
        let one = Monomial(vec![0, 0]);
        assert!(x > y);
        assert!(y2 > x);
        assert!(y > one);
        assert_eq!(TermOrder::Lex.cmp(&x, &y2), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        let a = Monomial(vec![1, 2]);
        let b = Monomial(vec![2, 3]);
        assert!(a.divides(&b));
        assert_eq!(a.div_of(&b), Some(Monomial(vec![1, 1])));
        assert_eq!(a.lcm(&Monomial(vec![3, 0])), Monomial(vec![3, 2]));
    }
}
