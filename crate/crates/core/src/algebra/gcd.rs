//! Multivariate gcd over ℚ(i) by recursive primitive remainder sequences.

use super::poly::SparsePoly;
use super::univariate::UniPoly;

/// Greatest common divisor, normalized monic in graded-lex (gcd(0,0) = 0).
pub fn poly_gcd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(a.vars());
    }
    // cheap exits before the recursion
    if let Some(_q) = a.exact_div(b) {
        return b.monic();
    }
    if let Some(_q) = b.exact_div(a) {
        return a.monic();
    }
    let n = a.nvars();
    let main = (0..n).rev().find(|&v| a.involves(v) || b.involves(v)).unwrap();
    let others_used = (0..n).any(|v| v != main && (a.involves(v) || b.involves(v)));
    if !others_used {
        let ua = UniPoly::from_sparse(a, main).unwrap();
        let ub = UniPoly::from_sparse(b, main).unwrap();
        return ua.gcd(&ub).to_sparse(a.vars(), main);
    }
    let ca = content(a, main);
    let cb = content(b, main);
    let c = poly_gcd(&ca, &cb);
    let mut pa = a.exact_div(&ca).expect("content divides");
    let mut pb = b.exact_div(&cb).expect("content divides");
    if pa.degree_in(main) < pb.degree_in(main) {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !pb.is_zero() && pb.degree_in(main) > 0 {
        let r = pa.divrem_in(&pb, main, true).expect("positive degree").remainder;
        pa = pb;
        pb = if r.is_zero() { r } else { primitive_part(&r, main) };
    }
    let g = if pb.is_zero() { primitive_part(&pa, main) } else { SparsePoly::one(a.vars()) };
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &SparsePoly, var: usize) -> SparsePoly {
    let mut g = SparsePoly::zero(p.vars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_constant() {
            return SparsePoly::one(p.vars());
        }
    }
    g
}

pub fn primitive_part(p: &SparsePoly, var: usize) -> SparsePoly {
    let c = content(p, var);
    p.exact_div(&c).expect("content divides")
}
