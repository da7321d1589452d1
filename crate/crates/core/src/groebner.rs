//! Buchberger's algorithm for graded reverse lexicographic order, standard
//! monomials of zero-dimensional ideals, and multiplication matrices on the
//! quotient algebra.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly};

/// Reduced Gröbner basis: monic generators sorted by leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    generators: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().map(|g| g.leading_term().expect("nonzero").0)
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Result<Poly<F>> {
        normal_form(p, &self.generators)
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Buchberger's criterion, checked directly on every pair.
    pub fn verify(&self) -> Result<bool> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if !self.normal_form(&s_polynomial(a, b)?)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn s_polynomial<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    let (ma, ca) = a.leading_term().ok_or_else(|| Error::Internal("S-polynomial of zero".into()))?;
    let (mb, cb) = b.leading_term().ok_or_else(|| Error::Internal("S-polynomial of zero".into()))?;
    let l = ma.lcm(mb);
    let left = a.mul_term(&ma.quotient_of(&l), &ca.inv()?);
    let right = b.mul_term(&mb.quotient_of(&l), &cb.inv()?);
    left.sub(&right)
}

/// Full reduction of `p` modulo `basis`.
pub fn normal_form<F: Field>(p: &Poly<F>, basis: &[Poly<F>]) -> Result<Poly<F>> {
    let leads: Vec<(Monomial, F)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("basis elements are nonzero");
            Ok((m.clone(), c.inv()?))
        })
        .collect::<Result<_>>()?;
    let mut rest = p.clone();
    let mut out = p.zero_like();
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let factor = c.mul(&leads[k].1);
                rest = rest.sub(&basis[k].mul_term(&leads[k].0.quotient_of(&m), &factor))?;
            }
            None => {
                let term = rest.constant_like(c).mul_term(&m, &F::one(p.context()));
                out = out.add(&term)?;
                rest = rest.sub(&term)?;
            }
        }
    }
    Ok(out)
}

fn monic<F: Field>(p: &Poly<F>) -> Result<Poly<F>> {
    let (_, c) = p.leading_term().expect("nonzero");
    Ok(p.scale(&c.inv()?))
}

pub fn groebner_basis<F: Field>(generators: &[Poly<F>]) -> Result<GroebnerBasis<F>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Structural("empty generator list".into()))?;
    for g in generators {
        if g.vars() != first.vars() {
            return Err(Error::Structural("generators live in different rings".into()));
        }
    }
    let mut basis: Vec<Poly<F>> = Vec::new();
    for g in generators {
        if !g.is_zero() {
            basis.push(monic(g)?);
        }
    }
    if basis.iter().any(Poly::is_constant) {
        return Ok(GroebnerBasis { generators: vec![first.constant_like(F::one(first.context()))] });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let lead = |p: &Poly<F>| p.leading_term().expect("nonzero").0.clone();
    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lead(&basis[a.0]).lcm(&lead(&basis[a.1]));
                let lb = lead(&basis[b.0]).lcm(&lead(&basis[b.1]));
                la.cmp(&lb).then(a.cmp(b))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let in_pairs = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|t| {
            t != i && t != j && lead(&basis[t]).divides(&l) && !in_pairs(i, t) && !in_pairs(j, t)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j])?, &basis)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis { generators: vec![first.constant_like(F::one(first.context()))] });
        }
        let n = basis.len();
        basis.push(monic(&r)?);
        for t in 0..n {
            pairs.push((t, n));
        }
    }
    Ok(GroebnerBasis { generators: reduce(basis)? })
}

fn reduce<F: Field>(basis: Vec<Poly<F>>) -> Result<Vec<Poly<F>>> {
    let lead = |p: &Poly<F>| p.leading_term().expect("nonzero").0.clone();
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = lead(g);
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = lead(h);
            j != i && lh.divides(&lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly<F>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let (m, c) = minimal[i].leading_term().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let head = minimal[i].constant_like(c).mul_term(&m, &F::one(minimal[i].context()));
        let tail = normal_form(&minimal[i].sub(&head)?, &others)?;
        reduced.push(monic(&head.add(&tail)?)?);
    }
    reduced.sort_by_key(lead);
    Ok(reduced)
}

/// `F[x₁..xₙ]/I` for a zero-dimensional ideal, with its monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlgebra {
    basis: Vec<Monomial>,
}

impl QuotientAlgebra {
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Standard monomials of `gb`; fails with [`Error::NonIsolated`] when the
/// ideal has positive dimension.
pub fn quotient_basis<F: Field>(gb: &GroebnerBasis<F>) -> Result<QuotientAlgebra> {
    if gb.is_unit_ideal() {
        return Ok(QuotientAlgebra { basis: Vec::new() });
    }
    let nvars = gb.generators.first().map_or(0, Poly::nvars);
    let leads: Vec<&Monomial> = gb.leading_monomials().collect();
    let mut bounds = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let pure = leads
            .iter()
            .filter(|m| m.exps().iter().enumerate().all(|(i, e)| i == v || *e == 0))
            .map(|m| m.exps()[v])
            .min();
        match pure {
            Some(e) => bounds.push(e),
            None => return Err(Error::NonIsolated),
        }
    }
    let mut basis = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::new(exps.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            basis.push(m);
        }
        // odometer over the bounding box
        let mut v = 0;
        loop {
            if v == nvars {
                basis.sort();
                return Ok(QuotientAlgebra { basis });
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

/// Matrix of `[h] ↦ [g·h]` in the standard-monomial basis; column `j` holds
/// the coordinates of `g·basis[j]`.
pub fn mult_matrix<F: Field>(qa: &QuotientAlgebra, gb: &GroebnerBasis<F>, g: &Poly<F>) -> Result<Matrix<F>> {
    let n = qa.dimension();
    let ctx = g.context();
    let mut m = vec![vec![F::zero(ctx); n]; n];
    for (j, b) in qa.basis.iter().enumerate() {
        let image = gb.normal_form(&g.mul_term(b, &F::one(ctx)))?;
        for (mono, c) in image.terms() {
            let i = qa
                .basis
                .binary_search(mono)
                .map_err(|_| Error::Internal("normal form left the standard monomials".into()))?;
            m[i][j] = c.clone();
        }
    }
    Ok(m)
}
