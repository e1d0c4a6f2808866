//! Lex elimination with back-substitution over ℚ(i).
//!
//! Variables that occur linearly with a scalar coefficient are eliminated
//! directly before any Gröbner basis is formed; this keeps the bilinear
//! systems from the certificate searches small.

use num_traits::Zero;

use crate::algebra::{extract_roots, Scalar, SparsePoly, TermOrder, UniPoly, Vars};
use crate::error::{Error, Result};

use super::{Budget, Ideal};

/// A parametrized solution component: unknown `i` equals `values[i]`, a
/// polynomial in the unknowns listed in `free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub free: Vec<usize>,
    pub values: Vec<SparsePoly>,
}

impl Family {
    /// Member obtained by giving the free unknowns the listed values.
    pub fn member(&self, params: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(params.len(), self.free.len());
        let n = self.values.len();
        let mut point = vec![Scalar::zero(); n];
        for (k, &f) in self.free.iter().enumerate() {
            point[f] = params[k].clone();
        }
        self.values.iter().map(|v| v.eval(&point)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub points: Vec<Vec<Scalar>>,
    /// Positive-dimensional components given parametrically.
    pub families: Vec<Family>,
    /// False when some elimination polynomial kept a factor without ℚ(i) roots,
    /// or a component had to be sampled.
    pub complete: bool,
    /// True when the variety has positive dimension.
    pub non_isolated: bool,
}

/// All ℚ(i) points of a zero-dimensional ideal.
pub fn solve_zero_dim(ideal: &Ideal, budget: &Budget) -> Result<SolutionSet> {
    let Some(first) = ideal.generators.first() else {
        return Err(Error::Invalid("empty ideal".into()));
    };
    solve_with(first.vars(), &ideal.generators, budget, false)
}

/// Like [`solve_zero_dim`] but positive-dimensional components are allowed:
/// linear ones come back as [`Family`] values, the others are sampled by
/// specializing a free unknown to 0, 1 and -1 (and the set is marked incomplete).
/// An empty generator list makes every unknown free.
pub fn solve_system(vars: &Vars, generators: &[SparsePoly], budget: &Budget) -> Result<SolutionSet> {
    solve_with(vars, generators, budget, true)
}

fn solve_with(vars: &Vars, generators: &[SparsePoly], budget: &Budget, allow_families: bool) -> Result<SolutionSet> {
    let vars = vars.clone();
    let mut ctx = Ctx {
        vars: vars.clone(),
        budget,
        allow_families,
        out: SolutionSet { points: Vec::new(), families: Vec::new(), complete: true, non_isolated: false },
    };
    let gens: Vec<SparsePoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    ctx.rec(gens, Vec::new())?;

    let mut out = ctx.out;
    out.points.retain(|p| generators.iter().all(|g| g.eval(p).is_zero()));
    let mut seen: Vec<Vec<Scalar>> = Vec::new();
    out.points.retain(|p| {
        if seen.contains(p) {
            false
        } else {
            seen.push(p.clone());
            true
        }
    });
    out.families.retain(|f| generators.iter().all(|g| g.compose(&f.values, &vars).is_zero()));
    if !out.families.is_empty() {
        out.non_isolated = true;
    }
    Ok(out)
}

struct Ctx<'a> {
    vars: Vars,
    budget: &'a Budget,
    allow_families: bool,
    out: SolutionSet,
}

type Subs = Vec<(usize, SparsePoly)>;

/// `p` with `expr` substituted for variable `v`.
fn substitute(p: &SparsePoly, v: usize, expr: &SparsePoly) -> SparsePoly {
    if !p.involves(v) {
        return p.clone();
    }
    let cs = p.coeffs_in(v);
    let mut acc = SparsePoly::zero(p.vars());
    for c in cs.iter().rev() {
        acc = &(&acc * expr) + c;
    }
    acc
}

fn normalize(gens: Vec<SparsePoly>) -> Option<Vec<SparsePoly>> {
    let mut out: Vec<SparsePoly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return None;
        }
        let g = g.monic();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.num_terms().cmp(&b.num_terms()).then_with(|| a.lt().map(|t| t.0).cmp(&b.lt().map(|t| t.0))));
    Some(out)
}

/// A generator of the form `c·v + rest` with `c` scalar and `v` absent from `rest`.
fn linear_pick(gens: &[SparsePoly]) -> Option<(usize, usize)> {
    for (gi, g) in gens.iter().enumerate() {
        let nv = g.nvars();
        for v in (0..nv).rev() {
            if g.degree_in(v) == 1 {
                let cs = g.coeffs_in(v);
                if cs[1].is_constant() {
                    return Some((gi, v));
                }
            }
        }
    }
    None
}

impl Ctx<'_> {
    fn rec(&mut self, mut gens: Vec<SparsePoly>, mut subs: Subs) -> Result<()> {
        loop {
            let Some(g) = normalize(gens) else { return Ok(()) };
            gens = g;
            let Some((gi, v)) = linear_pick(&gens) else { break };
            let g = gens.swap_remove(gi);
            let cs = g.coeffs_in(v);
            let c = cs[1].constant_term();
            let expr = cs[0].scale(&-c.inv().unwrap());
            gens = gens.iter().map(|p| substitute(p, v, &expr)).collect();
            subs.push((v, expr));
        }
        if gens.is_empty() {
            return self.finish(&subs);
        }

        let gb = Ideal::new(gens, TermOrder::Lex).groebner(self.budget)?;
        if gb.iter().any(|p| p.is_constant()) {
            return Ok(());
        }
        if linear_pick(&gb).is_some() {
            return self.rec(gb, subs);
        }

        let n = self.vars.len();
        let assigned: Vec<bool> = (0..n).map(|i| subs.iter().any(|(v, _)| *v == i)).collect();
        let active: Vec<usize> = (0..n).filter(|&i| !assigned[i]).collect();
        let pure_power = |v: usize| gb.iter().any(|p| p.leading_term(TermOrder::Lex).unwrap().0.support().eq([v]));
        let zero_dim = active.iter().all(|&v| pure_power(v));

        if !zero_dim {
            if !self.allow_families {
                return Err(Error::NotZeroDimensional);
            }
            // sample the component through a lex-smallest free unknown
            let v = *active.iter().rev().find(|&&v| !pure_power(v)).unwrap();
            self.out.complete = false;
            self.out.non_isolated = true;
            for val in [0i64, 1, -1] {
                let s = Scalar::from_int(val);
                let next: Vec<SparsePoly> = gb.iter().map(|p| p.substitute_scalar(v, &s)).collect();
                let mut subs2 = subs.clone();
                subs2.push((v, SparsePoly::constant(&self.vars, s)));
                self.rec(next, subs2)?;
            }
            return Ok(());
        }

        // univariate element in the lex-smallest variable present
        let (v, uni) = gb
            .iter()
            .filter_map(|p| {
                let sup: Vec<usize> = (0..n).filter(|&i| p.involves(i)).collect();
                (sup.len() == 1).then(|| (sup[0], p))
            })
            .max_by_key(|(v, _)| *v)
            .expect("zero-dimensional lex basis has a univariate element");
        let f = UniPoly::from_sparse(uni, v).expect("univariate");
        let ext = extract_roots(&f);
        if !ext.fully_split() || !ext.exhaustive {
            self.out.complete = false;
        }
        for (root, _) in &ext.roots {
            let next: Vec<SparsePoly> = gb.iter().map(|p| p.substitute_scalar(v, root)).collect();
            let mut subs2 = subs.clone();
            subs2.push((v, SparsePoly::constant(&self.vars, root.clone())));
            self.rec(next, subs2)?;
        }
        Ok(())
    }

    fn finish(&mut self, subs: &Subs) -> Result<()> {
        let n = self.vars.len();
        let mut values: Vec<SparsePoly> = (0..n).map(|i| SparsePoly::var(&self.vars, i)).collect();
        for (v, expr) in subs.iter().rev() {
            values[*v] = expr.compose(&values, &self.vars);
        }
        let free: Vec<usize> = (0..n).filter(|&i| !subs.iter().any(|(v, _)| *v == i)).collect();
        if free.is_empty() {
            self.out.points.push(values.iter().map(|p| p.constant_term()).collect());
            return Ok(());
        }
        if !self.allow_families {
            return Err(Error::NotZeroDimensional);
        }
        self.out.non_isolated = true;
        self.out.families.push(Family { free, values });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> (Vars, SparsePoly, SparsePoly, SparsePoly) {
        let v = Vars::xy();
        (v.clone(), SparsePoly::var(&v, 0), SparsePoly::var(&v, 1), SparsePoly::one(&v))
    }

    fn pt(a: i64, b: i64) -> Vec<Scalar> {
        vec![Scalar::from_int(a), Scalar::from_int(b)]
    }

    #[test]
    fn two_points() {
        let (_v, x, y, one) = ring();
        let id = Ideal::new(vec![&(&x * &x) - &one, &y - &x], TermOrder::Lex);
        let s = solve_zero_dim(&id, &Budget::default()).unwrap();
        assert!(s.complete);
        let mut pts = s.points.clone();
        pts.sort_by_key(|p| p[0].to_i64());
        assert_eq!(pts, vec![pt(-1, -1), pt(1, 1)]);
    }

    #[test]
    fn irrational_roots_flag_incomplete() {
        let (_v, x, y, one) = ring();
        let id = Ideal::new(vec![&(&x * &x) - &one.scale(&Scalar::from_int(2)), y], TermOrder::Lex);
        let s = solve_zero_dim(&id, &Budget::default()).unwrap();
        assert!(s.points.is_empty());
        assert!(!s.complete);
    }

    #[test]
    fn origin() {
        let (_v, x, y, _one) = ring();
        let s = solve_zero_dim(&Ideal::new(vec![x, y], TermOrder::Lex), &Budget::default()).unwrap();
        assert_eq!(s.points, vec![pt(0, 0)]);
        assert!(s.complete);
    }

    #[test]
    fn positive_dimension() {
        let (v, x, y, _one) = ring();
        let id = Ideal::new(vec![&(&x * &y) - &(&y * &y)], TermOrder::Lex);
        assert_eq!(solve_zero_dim(&id, &Budget::default()), Err(Error::NotZeroDimensional));
        let s = solve_system(&v, &id.generators, &Budget::default()).unwrap();
        assert!(s.non_isolated);
        assert!(!s.points.is_empty());
    }

    #[test]
    fn linear_family() {
        let (v, x, y, one) = ring();
        let s = solve_system(&v, &[&(&x - &y) + &one], &Budget::default()).unwrap();
        assert_eq!(s.families.len(), 1);
        let f = &s.families[0];
        let m = f.member(&[Scalar::from_int(5)]);
        assert_eq!(&m[0] - &m[1], Scalar::from_int(-1));
    }

    #[test]
    fn gaussian_points() {
        let (_v, x, y, one) = ring();
        // x^2 + 1 = 0, y = 2x
        let id = Ideal::new(vec![&(&x * &x) + &one, &y - &x.scale(&Scalar::from_int(2))], TermOrder::Lex);
        let s = solve_zero_dim(&id, &Budget::default()).unwrap();
        assert_eq!(s.points.len(), 2);
        assert!(s.complete);
    }
}
