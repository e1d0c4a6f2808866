//! Buchberger's algorithm with the coprime and chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Scalar, SparsePoly, TermOrder, Vars};
use crate::error::{Error, Result};

use super::Budget;

/// Terms sorted descending in the active order; leading term first.
#[derive(Clone, Debug)]
pub(crate) struct OrdPoly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl OrdPoly {
    pub fn from_sparse(p: &SparsePoly, order: TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrdPoly { terms }
    }

    pub fn to_sparse(&self, vars: &Vars) -> SparsePoly {
        SparsePoly::from_terms(vars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() || self.terms[0].1.is_one() {
            return;
        }
        let inv = self.terms[0].1.inv().unwrap();
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

/// `a + c·m·b` for descending term lists.
fn add_scaled(a: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, b: &[(Monomial, Scalar)], order: TermOrder) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
    while i < a.len() || bi.peek().is_some() {
        let take = match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => out.push(bi.next().unwrap()),
            Ordering::Equal => {
                let (bm, bc) = bi.next().unwrap();
                let s = &a[i].1 + &bc;
                i += 1;
                if !s.is_zero() {
                    out.push((bm, s));
                }
            }
        }
    }
    out
}

/// Full reduction of `f` modulo monic `basis`.
pub(crate) fn reduce(f: &OrdPoly, basis: &[OrdPoly], order: TermOrder) -> OrdPoly {
    let mut terms = f.terms.clone();
    let mut i = 0;
    while i < terms.len() {
        let (m, c) = terms[i].clone();
        let hit = basis.iter().find_map(|g| g.lm().div_of(&m).map(|q| (g, q)));
        match hit {
            Some((g, q)) => {
                let tail = add_scaled(&terms[i..], &-&c, &q, &g.terms, order);
                terms.truncate(i);
                terms.extend(tail);
            }
            None => i += 1,
        }
    }
    OrdPoly { terms }
}

fn s_poly(f: &OrdPoly, g: &OrdPoly, order: TermOrder) -> OrdPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().div_of(&l).unwrap();
    let mg = g.lm().div_of(&l).unwrap();
    let a: Vec<(Monomial, Scalar)> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    OrdPoly { terms: add_scaled(&a, &-Scalar::one(), &mg, &g.terms, order) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis, monic, sorted ascending by leading monomial.
pub fn groebner(generators: &[SparsePoly], order: TermOrder, budget: &Budget) -> Result<Vec<SparsePoly>> {
    let Some(first) = generators.first() else { return Ok(Vec::new()) };
    let vars = first.vars().clone();
    let basis = groebner_ord(generators.iter().map(|g| OrdPoly::from_sparse(g, order)).collect(), order, budget)?;
    Ok(basis.iter().map(|p| p.to_sparse(&vars)).collect())
}

pub(crate) fn groebner_ord(gens: Vec<OrdPoly>, order: TermOrder, budget: &Budget) -> Result<Vec<OrdPoly>> {
    let mut g: Vec<OrdPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    // pair bookkeeping for the chain criterion: created ever, and still pending
    let mut created: HashSet<(usize, usize)> = HashSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut processed = 0usize;

    let mut queue: Vec<OrdPoly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
    queue.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let add = |p: OrdPoly,
               g: &mut Vec<OrdPoly>,
               pairs: &mut Vec<Pair>,
               live: &mut Vec<bool>,
               created: &mut HashSet<(usize, usize)>,
               pending: &mut HashSet<(usize, usize)>|
     -> Result<bool> {
        if p.degree() > budget.max_degree {
            return Err(Error::ResourceLimit(format!("basis degree {} exceeds {}", p.degree(), budget.max_degree)));
        }
        let is_unit = p.lm().is_one();
        let k = g.len();
        for (i, q) in g.iter().enumerate() {
            if live[i] {
                pairs.push(Pair { i, j: k, lcm: q.lm().lcm(p.lm()) });
                created.insert((i, k));
                pending.insert((i, k));
            }
        }
        // elements whose leading monomial the new one divides become redundant for new pairs
        for (i, q) in g.iter().enumerate() {
            if live[i] && p.lm().divides(q.lm()) {
                live[i] = false;
            }
        }
        g.push(p);
        live.push(true);
        Ok(is_unit)
    };

    for p in queue {
        let mut r = reduce(&p, &g, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if add(r, &mut g, &mut pairs, &mut live, &mut created, &mut pending)? {
            return Ok(vec![unit_poly(g.last().unwrap())]);
        }
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm by degree then order, ties by index
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&g[pair.i], &g[pair.j]);
        if fi.lm().coprime(fj.lm()) {
            continue;
        }
        // chain criterion
        let treated = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            created.contains(&key) && !pending.contains(&key)
        };
        let chain = (0..g.len()).any(|k| {
            k != pair.i && k != pair.j && g[k].lm().divides(&pair.lcm) && treated(pair.i, k) && treated(pair.j, k)
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} critical pairs", budget.max_pairs)));
        }
        let s = s_poly(fi, fj, order);
        let mut r = reduce(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if add(r, &mut g, &mut pairs, &mut live, &mut created, &mut pending)? {
            return Ok(vec![unit_poly(g.last().unwrap())]);
        }
    }
    Ok(interreduce(g, order))
}

fn unit_poly(p: &OrdPoly) -> OrdPoly {
    OrdPoly { terms: vec![(Monomial::one(p.lm().nvars()), Scalar::one())] }
}

/// Minimal then fully reduced basis.
fn interreduce(g: Vec<OrdPoly>, order: TermOrder) -> Vec<OrdPoly> {
    let mut minimal: Vec<OrdPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && q.lm().divides(p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OrdPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let mut r = reduce(&minimal[i], &others, order);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// Whether `f` reduces to zero modulo a Gröbner basis.
pub fn reduces_to_zero(f: &SparsePoly, basis: &[SparsePoly], order: TermOrder) -> bool {
    let b: Vec<OrdPoly> = basis
        .iter()
        .map(|p| {
            let mut o = OrdPoly::from_sparse(p, order);
            o.make_monic();
            o
        })
        .collect();
    reduce(&OrdPoly::from_sparse(f, order), &b, order).is_zero()
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form(f: &SparsePoly, basis: &[SparsePoly], order: TermOrder) -> SparsePoly {
    let b: Vec<OrdPoly> = basis
        .iter()
        .map(|p| {
            let mut o = OrdPoly::from_sparse(p, order);
            o.make_monic();
            o
        })
        .collect();
    reduce(&OrdPoly::from_sparse(f, order), &b, order).to_sparse(f.vars())
}
