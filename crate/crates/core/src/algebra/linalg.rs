//! Exact linear algebra over ℚ(i).

use num_traits::{One, Zero};

use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<Vec<Scalar>>,
    pub nullspace_basis: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        for c in col..m[row].len() {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..m[r].len() {
                if m[row][c].is_zero() {
                    continue;
                }
                let v = &m[r][c] - &(&f * &m[row][c]);
                m[r][c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Kernel basis of an `rows × cols` matrix; one vector per free column, with a 1 there.
pub fn nullspace(m: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// All solutions of `m·v = rhs`.
pub fn solve(m: &[Vec<Scalar>], rhs: &[Scalar], cols: usize) -> LinearSolution {
    assert_eq!(m.len(), rhs.len());
    let mut aug: Vec<Vec<Scalar>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.resize(cols, Scalar::zero());
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols);
    let consistent = aug.iter().all(|r| r[..cols].iter().any(|c| !c.is_zero()) || r[cols].is_zero());
    let particular = consistent.then(|| {
        let mut v = vec![Scalar::zero(); cols];
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = aug[r][cols].clone();
        }
        v
    });
    LinearSolution { particular, nullspace_basis: nullspace(m, cols) }
}

fn hermitian_dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(&x.conj() * y))
}

/// The solution orthogonal (Hermitian inner product) to the nullspace: the
/// unique minimum-norm representative of `particular + span(nullspace)`.
pub fn min_norm_particular(particular: &[Scalar], basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    if basis.is_empty() {
        return particular.to_vec();
    }
    let k = basis.len();
    // Gram system G a = N^H p
    let gram: Vec<Vec<Scalar>> = (0..k).map(|i| (0..k).map(|j| hermitian_dot(&basis[i], &basis[j])).collect()).collect();
    let rhs: Vec<Scalar> = (0..k).map(|i| hermitian_dot(&basis[i], particular)).collect();
    let sol = solve(&gram, &rhs, k).particular.expect("Gram matrix is nonsingular");
    let mut out = particular.to_vec();
    for (a, v) in sol.iter().zip(basis) {
        for (o, c) in out.iter_mut().zip(v) {
            *o = &*o - &(a * c);
        }
    }
    out
}

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))).collect()
}
