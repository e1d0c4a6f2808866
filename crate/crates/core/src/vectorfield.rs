//! Planar polynomial vector fields `x' = P, y' = Q`.

use crate::algebra::{log_quadrature, Monomial, RationalFunction, Scalar, SparsePoly, SymbolicExpIntegral, Vars};
use crate::error::{Error, Result};

/// The pair `(P, Q)` over a two-variable ring (normally `x, y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    p: SparsePoly,
    q: SparsePoly,
}

impl VectorField {
    pub fn new(p: SparsePoly, q: SparsePoly) -> Result<Self> {
        if p.nvars() != 2 || p.vars() != q.vars() {
            return Err(Error::Invalid("P and Q must share a two-variable ring".into()));
        }
        if p.is_zero() && q.is_zero() {
            return Err(Error::Invalid("(P, Q) = (0, 0)".into()));
        }
        Ok(Self { p, q })
    }

    /// Field over `x, y` from integer term lists, as in tests: `&[(coeff, &[ex, ey])]`.
    pub fn from_int_terms(p: &[(i64, &[u32])], q: &[(i64, &[u32])]) -> Result<Self> {
        let v = Vars::xy();
        Self::new(SparsePoly::from_int_terms(&v, p), SparsePoly::from_int_terms(&v, q))
    }

    pub fn p(&self) -> &SparsePoly {
        &self.p
    }

    pub fn q(&self) -> &SparsePoly {
        &self.q
    }

    pub fn vars(&self) -> &Vars {
        self.p.vars()
    }

    /// `max(deg P, deg Q)`.
    pub fn degree(&self) -> u32 {
        self.p.total_degree().unwrap_or(0).max(self.q.total_degree().unwrap_or(0))
    }

    /// Cofactor degree bound `m - 1` (0 for linear and constant fields).
    pub fn cofactor_degree(&self) -> u32 {
        self.degree().saturating_sub(1)
    }

    pub fn is_real(&self) -> bool {
        self.p.is_real() && self.q.is_real()
    }

    /// `X(f) = P f_x + Q f_y`.
    pub fn lie_derivative(&self, f: &SparsePoly) -> SparsePoly {
        &(&self.p * &f.derivative(0)) + &(&self.q * &f.derivative(1))
    }

    pub fn lie_derivative_rational(&self, f: &RationalFunction) -> RationalFunction {
        f.derivative(0).mul_poly(&self.p).add(&f.derivative(1).mul_poly(&self.q))
    }

    pub fn divergence(&self) -> SparsePoly {
        &self.p.derivative(0) + &self.q.derivative(1)
    }

    /// `H` with `H_x = Q`, `H_y = -P` and `H(0,0) = 0`.
    pub fn polynomial_potential(&self) -> Result<SparsePoly> {
        if !(&self.p.derivative(0) + &self.q.derivative(1)).is_zero() {
            return Err(Error::NotExact);
        }
        let hx = integrate(&self.q, 0);
        let rest = &(-&self.p) - &hx.derivative(1);
        debug_assert!(!rest.involves(0));
        Ok(&hx + &integrate(&rest, 1))
    }

    /// `R(x)` with `∂(RP)/∂x + ∂(RQ)/∂y = 0`, when `(P_x + Q_y)/P` does not depend on y.
    pub fn x_only_integrating_factor(&self) -> Result<XOnlyIntegratingFactor> {
        if self.p.is_zero() {
            return Err(Error::DependsOnY);
        }
        let ratio = RationalFunction::new(self.divergence(), self.p.clone())?;
        if ratio.involves(1) {
            return Err(Error::DependsOnY);
        }
        let r = ratio.neg();
        let big_r = log_quadrature(&r, 0)?;
        let out = XOnlyIntegratingFactor { r, big_r };
        if !out.verify(self) {
            return Err(Error::Invalid("integrating factor failed its closedness check".into()));
        }
        Ok(out)
    }

    /// Rewrites `dy/dx = Q/P` in the coordinates of `map` as a coprime pair
    /// `(P~, Q~)` over the target variables, `P~` monic.
    pub fn change_variables(&self, map: &RationalMap) -> Result<VectorField> {
        if map.forward[0].vars() != self.vars() {
            return Err(Error::InvalidMap("forward map is not over the field's variables".into()));
        }
        let dx = self.lie_derivative_rational(&map.forward[0]);
        if dx.is_zero() {
            return Err(Error::DegenerateMap("X applied to the new abscissa vanishes identically".into()));
        }
        let dy = self.lie_derivative_rational(&map.forward[1]);
        let slope = dy.div(&dx)?;
        let target = map.inverse[0].vars().clone();
        let back = slope
            .compose(&map.inverse, &target)
            .ok_or_else(|| Error::DegenerateMap("slope has a pole along the image".into()))?;
        VectorField::new(back.den().clone(), back.num().clone())
    }

    /// `(P, Q)` with common factors cancelled and `P` monic; the canonical form of `dy/dx = Q/P`.
    pub fn reduced(&self) -> VectorField {
        if self.p.is_zero() {
            return VectorField { p: self.p.clone(), q: self.q.monic() };
        }
        let r = RationalFunction::new(self.q.clone(), self.p.clone()).unwrap();
        VectorField { p: r.den().clone(), q: r.num().clone() }
    }
}

/// Antiderivative in one variable, without constant.
pub fn integrate(p: &SparsePoly, var: usize) -> SparsePoly {
    SparsePoly::from_terms(
        p.vars(),
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e[var] += 1;
            let k = Scalar::from_int(e[var] as i64);
            (Monomial(e), c / &k)
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XOnlyIntegratingFactor {
    /// `R'/R`.
    pub r: RationalFunction,
    pub big_r: SymbolicExpIntegral,
}

impl XOnlyIntegratingFactor {
    /// `∂(RP)/∂x + ∂(RQ)/∂y = R·(r·P + div)`, so the check is `r·P + div ≡ 0`
    /// together with `(log R)' = r`.
    pub fn verify(&self, field: &VectorField) -> bool {
        let lhs = self.r.mul_poly(field.p()).add(&RationalFunction::from_poly(field.divergence()));
        lhs.is_zero() && self.big_r.log_derivative() == self.r && !self.big_r.log_derivative().involves(1)
    }
}

/// A birational change of coordinates with its verified inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    /// `(X(x,y), Y(x,y))`.
    pub forward: [RationalFunction; 2],
    /// `(x(X,Y), y(X,Y))`.
    pub inverse: [RationalFunction; 2],
}

impl RationalMap {
    pub fn new(forward: [RationalFunction; 2], inverse: [RationalFunction; 2]) -> Result<Self> {
        let src = forward[0].vars().clone();
        let dst = inverse[0].vars().clone();
        if src.len() != 2 || dst.len() != 2 || forward[1].vars() != &src || inverse[1].vars() != &dst {
            return Err(Error::InvalidMap("maps must be pairs over two-variable rings".into()));
        }
        // inverse ∘ forward = id on (x, y), forward ∘ inverse = id on (X, Y)
        for (k, f) in forward.iter().enumerate() {
            let back = f.compose(&inverse, &dst);
            if back != Some(RationalFunction::from_poly(SparsePoly::var(&dst, k))) {
                return Err(Error::InvalidMap(format!("forward[{k}] after inverse is not the identity")));
            }
        }
        for (k, g) in inverse.iter().enumerate() {
            let back = g.compose(&forward, &src);
            if back != Some(RationalFunction::from_poly(SparsePoly::var(&src, k))) {
                return Err(Error::InvalidMap(format!("inverse[{k}] after forward is not the identity")));
            }
        }
        Ok(Self { forward, inverse })
    }

    /// The same map read backwards.
    pub fn inverted(&self) -> RationalMap {
        RationalMap { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: &[(i64, &[u32])], q: &[(i64, &[u32])]) -> VectorField {
        VectorField::from_int_terms(p, q).unwrap()
    }

    #[test]
    fn lie_and_divergence() {
        let f = field(&[(1, &[1, 0])], &[(-1, &[0, 1])]);
        let v = f.vars().clone();
        let xy = SparsePoly::from_int_terms(&v, &[(1, &[1, 1])]);
        assert!(f.lie_derivative(&xy).is_zero());
        assert_eq!(f.lie_derivative(&SparsePoly::var(&v, 0)), SparsePoly::var(&v, 0));
        assert!(f.divergence().is_zero());
        let g = field(&[(1, &[2, 0]), (-1, &[1, 0])], &[(1, &[0, 2]), (-1, &[0, 1])]);
        assert_eq!(g.divergence().to_string(), "2*x + 2*y - 2");
    }

    #[test]
    fn potential() {
        let f = field(&[(-1, &[1, 0])], &[(1, &[0, 1])]);
        let h = f.polynomial_potential().unwrap();
        assert_eq!(h.to_string(), "x*y");
        assert_eq!(field(&[(1, &[1, 0])], &[(1, &[0, 1])]).polynomial_potential(), Err(Error::NotExact));
        assert_eq!(field(&[], &[(1, &[0, 0])]).polynomial_potential().unwrap().to_string(), "x");
    }

    #[test]
    fn x_only_factor() {
        let f = field(&[(1, &[0, 0])], &[(1, &[1, 0]), (1, &[0, 1])]);
        let r = f.x_only_integrating_factor().unwrap();
        assert_eq!(r.big_r.to_string(), "exp(-x)");
        let g = field(&[(1, &[0, 1])], &[(1, &[0, 2])]);
        assert_eq!(g.x_only_integrating_factor().unwrap().big_r.to_string(), "exp(-2*x)");
        let h = field(&[(1, &[1, 0])], &[(-1, &[0, 1])]);
        assert!(h.x_only_integrating_factor().unwrap().big_r.is_one());
        let k = field(&[(1, &[0, 1])], &[(1, &[0, 2]), (1, &[1, 0])]);
        assert!(k.x_only_integrating_factor().is_ok());
        let bad = field(&[(1, &[1, 0])], &[(1, &[0, 2])]);
        assert_eq!(bad.x_only_integrating_factor(), Err(Error::DependsOnY));
    }

    #[test]
    fn abel_to_riccati() {
        let f = field(&[(1, &[0, 0])], &[(1, &[0, 3]), (-2, &[1, 2])]);
        let v = Vars::xy();
        let w = Vars::new(&["X", "Y"]);
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        let bx = SparsePoly::var(&w, 0);
        let by = SparsePoly::var(&w, 1);
        let fx = RationalFunction::new(&(&(&x * &x) * &y) - &SparsePoly::one(&v), y.clone()).unwrap();
        let map = RationalMap::new(
            [fx, RationalFunction::from_poly(x.clone())],
            [RationalFunction::from_poly(by.clone()), RationalFunction::new(SparsePoly::one(&w), &(&by * &by) - &bx).unwrap()],
        )
        .unwrap();
        let out = f.change_variables(&map).unwrap();
        assert_eq!(out.p().to_string(), "1");
        assert_eq!(out.q().to_string(), "Y^2 - X");
        // a wrong inverse is rejected
        let bad = RationalMap::new(map.forward.clone(), [RationalFunction::from_poly(bx.clone()), RationalFunction::from_poly(by.clone())]);
        assert!(matches!(bad, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn swap_twice_is_identity() {
        let f = field(&[(1, &[0, 2]), (1, &[1, 0])], &[(2, &[1, 1]), (-1, &[0, 0])]);
        let v = Vars::xy();
        let w = Vars::new(&["X", "Y"]);
        let map = RationalMap::new(
            [RationalFunction::from_poly(SparsePoly::var(&v, 1)), RationalFunction::from_poly(SparsePoly::var(&v, 0))],
            [RationalFunction::from_poly(SparsePoly::var(&w, 1)), RationalFunction::from_poly(SparsePoly::var(&w, 0))],
        )
        .unwrap();
        let once = f.change_variables(&map).unwrap();
        let twice = once.change_variables(&map.inverted()).unwrap();
        assert_eq!(twice, f.reduced());
    }
}
