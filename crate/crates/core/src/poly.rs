//! Sparse multivariate polynomials.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! reverse lexicographic with the variables in their declared order, so the
//! last entry of the map is always the leading term for Gröbner purposes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::upoly::UPoly;

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // reverse lex: the smaller exponent in the last differing variable wins
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, F>,
    ctx: F::Ctx,
}

impl<F: Field> Poly<F> {
    pub fn zero(vars: &[&str], ctx: &F::Ctx) -> Self {
        Poly { vars: vars.iter().map(|v| v.to_string()).collect(), terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn zero_like(&self) -> Self {
        Poly { vars: self.vars.clone(), terms: BTreeMap::new(), ctx: self.ctx.clone() }
    }

    pub fn from_terms(
        vars: Vec<String>,
        ctx: F::Ctx,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Result<Self> {
        let mut p = Poly { vars, terms: BTreeMap::new(), ctx };
        for (m, c) in terms {
            if m.0.len() != p.vars.len() {
                return Err(Error::Structural(format!(
                    "monomial with {} exponents in a ring of {} variables",
                    m.0.len(),
                    p.vars.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn constant_like(&self, c: F) -> Self {
        let mut p = self.zero_like();
        p.add_term(Monomial::one(self.nvars()), c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var_like(&self, i: usize) -> Self {
        let mut p = self.zero_like();
        p.add_term(Monomial::var(self.nvars(), i), F::one(&self.ctx));
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn context(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Leading term for the graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Structural(format!(
                "variable order mismatch: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.zero_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = self.zero_like();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    /// `c · m · self`
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        let mut out = self.zero_like();
        for (mm, a) in &self.terms {
            out.add_term(mm.mul(m), a.mul(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant_like(F::one(&self.ctx));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars() {
            return Err(Error::Structural(format!("no variable with index {var}")));
        }
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, c.mul(&F::from_int(&self.ctx, e as i64)));
        }
        Ok(out)
    }

    /// Substitutes polynomials (or constants, as constant polynomials) for
    /// some variables; unbound variables are kept.
    pub fn evaluate(&self, bindings: &[(usize, Poly<F>)]) -> Result<Self> {
        for (v, p) in bindings {
            if *v >= self.nvars() {
                return Err(Error::Structural(format!("no variable with index {v}")));
            }
            self.check_compatible(p)?;
        }
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut term = self.constant_like(c.clone());
            for (v, p) in bindings {
                let e = kept.0[*v];
                if e > 0 {
                    term = term.mul(&p.pow(e))?;
                    kept.0[*v] = 0;
                }
            }
            out = out.add(&term.mul_term(&kept, &F::one(&self.ctx)))?;
        }
        Ok(out)
    }

    pub fn map_coeffs<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G>) -> Result<Poly<G>> {
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new(), ctx: ctx.clone() };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Exchanges the roles of variables `i` and `j` (names stay in place).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            e.0.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    fn check_bivariate(&self) -> Result<()> {
        if self.nvars() > 2 {
            return Err(Error::Structural(format!(
                "elimination is implemented for at most two variables, got {}",
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Recursive view `F[other][main]`: outer coefficients are polynomials in
    /// the remaining variable (or constants when there is none).
    pub fn to_recursive(&self, main: usize) -> Result<UPoly<UPoly<F>>> {
        self.check_bivariate()?;
        if main >= self.nvars() {
            return Err(Error::Structural(format!("no variable with index {main}")));
        }
        let other = (0..self.nvars()).find(|&v| v != main);
        let n = self.degree_in(main).map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<F>> = vec![Vec::new(); n];
        for (m, c) in &self.terms {
            let i = m.0[main] as usize;
            let j = other.map_or(0, |o| m.0[o] as usize);
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, F::zero(&self.ctx));
            }
            row[j] = c.clone();
        }
        Ok(UPoly::new(
            rows.into_iter().map(|r| UPoly::new(r, self.ctx.clone())).collect(),
            self.ctx.clone(),
        ))
    }

    /// Inverse of [`Poly::to_recursive`] with the same variables.
    pub fn from_recursive_like(&self, rec: &UPoly<UPoly<F>>, main: usize) -> Result<Self> {
        self.check_bivariate()?;
        let other = (0..self.nvars()).find(|&v| v != main);
        let mut out = self.zero_like();
        for (i, row) in rec.coeffs().iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                let mut e = vec![0; self.nvars()];
                e[main] = i as u32;
                match other {
                    Some(o) => e[o] = j as u32,
                    None if j > 0 => return Err(Error::Structural("stray inner degree".into())),
                    None => {}
                }
                out.add_term(Monomial(e), c.clone());
            }
        }
        Ok(out)
    }

    /// View as a univariate polynomial in `var`; fails if another variable occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UPoly<F>> {
        let n = self.degree_in(var).map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![F::zero(&self.ctx); n];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, e)| i != var && *e > 0) {
                return Err(Error::Structural("polynomial is not univariate".into()));
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs, self.ctx.clone()))
    }

    pub fn from_univariate_like(&self, u: &UPoly<F>, var: usize) -> Self {
        let mut out = self.zero_like();
        for (i, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; self.nvars()];
            e[var] = i as u32;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficient gcd with respect to `var` and the matching primitive part:
    /// `self = content · primitive`, the content monic and free of `var`.
    pub fn content_primitive(&self, var: usize) -> Result<(Self, Self)> {
        if self.is_zero() {
            return Err(Error::Degenerate("content of the zero polynomial".into()));
        }
        let rec = self.to_recursive(var)?;
        let c = rec.content()?;
        let other = (0..self.nvars()).find(|&v| v != var).unwrap_or(var);
        let content = if self.nvars() == 1 {
            self.constant_like(c.coeff(0))
        } else {
            self.from_univariate_like(&c, other)
        };
        let prim = UPoly::new(
            rec.coeffs().iter().map(|a| a.exact_quo(&c)).collect::<Result<_>>()?,
            self.ctx.clone(),
        );
        Ok((content, self.from_recursive_like(&prim, var)?))
    }

    /// Greatest common divisor in `var` over the fraction field of the other
    /// variable, via the subresultant sequence; returned primitive and with
    /// leading coefficient made monic. `gcd(p, 0)` is `p` normalized.
    pub fn gcd_subresultant(&self, other: &Self, var: usize) -> Result<Self> {
        self.check_compatible(other)?;
        let a = self.to_recursive(var)?;
        let b = other.to_recursive(var)?;
        let g = a.prs_gcd(&b)?;
        let mut g = g.primitive_part()?;
        if let Some(lc) = g.lc() {
            let unit = lc.lc().expect("nonzero").inv()?;
            g = g.map(&self.ctx, |c| c.scale(&unit));
        }
        self.from_recursive_like(&g, var)
    }

    /// `self / gcd(self, ∂self/∂var)` made primitive: same zero set, every
    /// factor involving `var` simple.
    pub fn squarefree_part(&self, var: usize) -> Result<Self> {
        let d = self.partial_derivative(var)?;
        if d.is_zero() {
            return Ok(self.clone());
        }
        let g = self.gcd_subresultant(&d, var)?;
        let a = self.to_recursive(var)?;
        let q = a.exact_div_poly(&g.to_recursive(var)?)?;
        self.from_recursive_like(&q, var)
    }

    /// Sylvester resultant eliminating `var`; `self`'s coefficients are the
    /// top rows of the Sylvester matrix.
    pub fn resultant(&self, other: &Self, var: usize) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Degenerate("resultant of two zero polynomials".into()));
        }
        let a = self.to_recursive(var)?;
        let b = other.to_recursive(var)?;
        let r = a.resultant(&b)?;
        let other_var = (0..self.nvars()).find(|&v| v != var);
        Ok(match other_var {
            Some(o) => self.from_univariate_like(&r, o),
            None => self.constant_like(r.coeff(0)),
        })
    }

    /// Renders with the given coefficient formatter, terms in descending order.
    pub fn render_with(&self, coeff: impl Fn(&F) -> (bool, String)) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = coeff(c);
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let body = match (mono.is_empty(), mag == "1") {
                (true, _) => mag,
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            match (k, negative) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

impl Poly<Rat> {
    /// Canonical text form, reparseable by [`crate::parse::parse_polynomial`].
    pub fn render(&self) -> String {
        self.render_with(|c| (c.is_negative(), c.abs().to_string()))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render_with(|c| (false, format!("({c})")).clone()).replace("(1)*", "");
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial as p;

    #[test]
    fn degrevlex_order() {
        let m = |a, b| Monomial::new(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 3) > m(2, 0));
        assert_eq!(p("x^2*y - x").unwrap().leading_term().unwrap().0, &m(2, 1));
    }

    #[test]
    fn ring_operations() {
        assert_eq!(p("(x+y) + (x-y)").unwrap(), p("2*x").unwrap());
        assert_eq!(p("(x+y)^2").unwrap(), p("x^2 + 2*x*y + y^2").unwrap());
        assert_eq!(p("x").unwrap().mul(&p("x*y - 1").unwrap()).unwrap(), p("x^2*y - x").unwrap());
        let other = Poly::<Rat>::zero(&["y", "x"], &());
        assert!(matches!(p("x").unwrap().add(&other), Err(Error::Structural(_))));
    }

    #[test]
    fn derivatives() {
        let f = p("x^2*y - x").unwrap();
        assert_eq!(f.partial_derivative(0).unwrap(), p("2*x*y - 1").unwrap());
        assert_eq!(f.partial_derivative(1).unwrap(), p("x^2").unwrap());
        assert!(p("7").unwrap().partial_derivative(0).unwrap().is_zero());
        assert!(f.partial_derivative(2).is_err());
    }

    #[test]
    fn substitution() {
        let f = p("x^2*y - x").unwrap();
        assert!(f.evaluate(&[(0, f.constant_like(Rat::int(0)))]).unwrap().is_zero());
        assert_eq!(f.evaluate(&[(1, f.constant_like(Rat::int(1)))]).unwrap(), p("x^2 - x").unwrap());
        let full = f
            .evaluate(&[(0, f.constant_like(Rat::int(2))), (1, f.constant_like(Rat::int(3)))])
            .unwrap();
        assert_eq!(full, p("10").unwrap());
    }

    #[test]
    fn content_and_primitive() {
        let (c, q) = p("x^2*y - x").unwrap().content_primitive(1).unwrap();
        assert_eq!((c, q), (p("x").unwrap(), p("x*y - 1").unwrap()));
        let (c, q) = p("x*y").unwrap().content_primitive(1).unwrap();
        assert_eq!((c, q), (p("x").unwrap(), p("y").unwrap()));
        let (c, q) = p("y^2 - x^3").unwrap().content_primitive(1).unwrap();
        assert_eq!((c, q), (p("1").unwrap(), p("y^2 - x^3").unwrap()));
        assert!(p("0").unwrap().content_primitive(1).is_err());
    }

    #[test]
    fn gcd_and_squarefree() {
        let g = p("y^2 - x^2").unwrap().gcd_subresultant(&p("y - x").unwrap(), 1).unwrap();
        assert_eq!(g, p("y - x").unwrap());
        let g = p("y^2").unwrap().gcd_subresultant(&p("y^3").unwrap(), 1).unwrap();
        assert_eq!(g, p("y^2").unwrap());
        let g = p("2*y^2 - 4*x").unwrap().gcd_subresultant(&p("0").unwrap(), 1).unwrap();
        assert_eq!(g, p("y^2 - 2*x").unwrap());
        let s = p("(y-1)^2*(y+2)").unwrap().squarefree_part(1).unwrap();
        assert_eq!(s, p("(y-1)*(y+2)").unwrap());
        assert_eq!(p("y^3").unwrap().squarefree_part(1).unwrap(), p("y").unwrap());
        // x^2·D with D = y^2 - x squarefree and coprime to x, split along x
        let s = p("x^2*(y^2 - x)").unwrap().squarefree_part(0).unwrap();
        assert_eq!(s, p("x*(y^2 - x)").unwrap());
    }

    #[test]
    fn resultants() {
        let r = p("y^2 - x").unwrap().resultant(&p("y").unwrap(), 1).unwrap();
        assert_eq!(r, p("-x").unwrap());
        let r = p("y - 1").unwrap().resultant(&p("y + 1").unwrap(), 1).unwrap();
        assert_eq!(r, p("2").unwrap());
        assert!(p("0").unwrap().resultant(&p("0").unwrap(), 1).is_err());
    }
}
