//! Dense univariate polynomials over a [`Ring`].
//!
//! Coefficients are stored in ascending order with no trailing structural
//! zeros, so `degree()` is `None` exactly for the zero polynomial.
//!
//! Over an integral domain with exact division (`F[x]`, `Q(a)[x]`, ...) the
//! subresultant recurrences give resultants and gcds up to a unit without
//! leaving the domain. Over a field the usual Euclidean machinery applies.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

#[derive(Clone, PartialEq)]
pub struct UPoly<R: Ring> {
    coeffs: Vec<R>,
    ctx: R::Ctx,
}

impl<R: Ring + Eq> Eq for UPoly<R> {}

impl<R: Ring + std::hash::Hash> std::hash::Hash for UPoly<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut coeffs: Vec<R>, ctx: R::Ctx) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs, ctx }
    }

    pub fn zero(ctx: &R::Ctx) -> Self {
        UPoly { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &R::Ctx) -> Self {
        Self::constant(R::one(ctx))
    }

    pub fn constant(c: R) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], ctx)
    }

    /// `c · x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![R::zero(&ctx); k];
        coeffs.push(c);
        Self::new(coeffs, ctx)
    }

    /// The indeterminate `x`.
    pub fn var(ctx: &R::Ctx) -> Self {
        Self::monomial(R::one(ctx), 1)
    }

    /// `x - c`
    pub fn linear_root(c: &R) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c.neg(), R::one(&ctx)], ctx)
    }

    pub fn context(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Certifies the leading coefficient so that `degree()` may be relied on.
    pub fn certify_lead(&self) -> Result<()> {
        match self.coeffs.last() {
            Some(c) => c.certify(),
            None => Ok(()),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, self.ctx.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(R::neg).collect(), self.ctx.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = vec![R::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, self.ctx.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.ctx.clone())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.ctx.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| R::from_int(&self.ctx, i as i64).mul(c))
            .collect();
        Self::new(coeffs, self.ctx.clone())
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(f).collect(), ctx.clone())
    }

    pub fn try_map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> Result<S>) -> Result<UPoly<S>> {
        Ok(UPoly::new(self.coeffs.iter().map(f).collect::<Result<_>>()?, ctx.clone()))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let db = d.degree().ok_or_else(|| Error::Internal("pseudo-division by zero".into()))?;
        let Some(da) = self.degree() else { return Ok(self.clone()) };
        if da < db {
            return Ok(self.clone());
        }
        let lcd = d.lc().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        let mut e = (da - db + 1) as u32;
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - db;
            for c in r.iter_mut() {
                *c = c.mul(&lcd);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&lr.mul(dc));
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            e -= 1;
        }
        let scale = lcd.pow(e);
        Ok(Self::new(r, self.ctx.clone()).scale(&scale))
    }

    /// Exact division in `R[x]`, using exact division of coefficients.
    pub fn exact_div_poly(&self, d: &Self) -> Result<Self> {
        let db = d.degree().ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let Some(da) = self.degree() else { return Ok(self.clone()) };
        if da < db {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        let lcd = d.lc().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(&self.ctx); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let t = c.exact_div(lcd)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&t.mul(dc));
            }
            q[k] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(Self::new(q, self.ctx.clone()))
    }

    /// Sylvester resultant `Res(self, other)` by subresultant recurrences;
    /// `self`'s coefficients occupy the top rows of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> Result<R> {
        self.certify_lead()?;
        other.certify_lead()?;
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Ok(R::zero(&self.ctx));
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut negate = false;
        if a.degree() < b.degree() {
            if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
                negate = true;
            }
            std::mem::swap(&mut a, &mut b);
        }
        let one = R::one(&self.ctx);
        if b.degree() == Some(0) {
            let r = b.lc().unwrap().pow(a.degree().unwrap() as u32);
            return Ok(if negate { r.neg() } else { r });
        }
        let mut g = one.clone();
        let mut h = one;
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                negate = !negate;
            }
            let r = a.pseudo_rem(&b)?;
            r.certify_lead()?;
            if r.is_zero() {
                return Ok(R::zero(&self.ctx));
            }
            a = b;
            let div = g.mul(&h.pow(delta));
            b = UPoly::new(
                R::exact_div_all(&r.coeffs, &div)?,
                self.ctx.clone(),
            );
            g = a.lc().unwrap().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g.pow(delta).exact_div(&h.pow(delta - 1))?,
            };
            if b.degree() == Some(0) {
                let dega = a.degree().unwrap() as u32;
                let res = b.lc().unwrap().pow(dega).exact_div(&h.pow(dega - 1))?;
                return Ok(if negate { res.neg() } else { res });
            }
        }
    }

    /// Last nonzero element of the subresultant remainder sequence: a
    /// greatest common divisor over the fraction field, up to a scalar.
    pub fn prs_gcd(&self, other: &Self) -> Result<Self> {
        Ok(self.subresultant_prs(other)?.pop().expect("nonempty"))
    }

    /// Subresultant remainder sequence of `self` and `other`, from the input
    /// of larger degree to the last nonzero remainder.
    pub fn subresultant_prs(&self, other: &Self) -> Result<Vec<Self>> {
        self.certify_lead()?;
        other.certify_lead()?;
        if other.is_zero() {
            return Ok(vec![self.clone()]);
        }
        if self.is_zero() {
            return Ok(vec![other.clone()]);
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        let mut seq = vec![a.clone()];
        let one = R::one(&self.ctx);
        let mut g = one.clone();
        let mut h = one;
        loop {
            if b.degree() == Some(0) {
                seq.push(b);
                return Ok(seq);
            }
            let delta = (a.degree().unwrap() - b.degree().unwrap()) as u32;
            let r = a.pseudo_rem(&b)?;
            r.certify_lead()?;
            if r.is_zero() {
                seq.push(b);
                return Ok(seq);
            }
            seq.push(b.clone());
            a = b;
            let div = g.mul(&h.pow(delta));
            b = UPoly::new(
                R::exact_div_all(&r.coeffs, &div)?,
                self.ctx.clone(),
            );
            g = a.lc().unwrap().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g.pow(delta).exact_div(&h.pow(delta - 1))?,
            };
        }
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            parts.push(match (i, c.is_one()) {
                (0, _) => format!("({cs})"),
                (_, true) => mono,
                _ => format!("({cs})*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field> UPoly<F> {
    /// Division with remainder; inverts the leading coefficient of `d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        d.certify_lead()?;
        let db = d.degree().ok_or_else(|| Error::Internal("division by zero polynomial".into()))?;
        let inv = d.lc().unwrap().inv()?;
        let Some(da) = self.degree() else { return Ok((self.clone(), self.clone())) };
        if da < db {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(&self.ctx); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = r[k + db].clone();
            if c.is_zero() {
                continue;
            }
            let t = c.mul(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&t.mul(dc));
            }
            r[k + db] = F::zero(&self.ctx);
            q[k] = t;
        }
        Ok((Self::new(q, self.ctx.clone()), Self::new(r, self.ctx.clone())))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Remainder modulo a monic polynomial; never inverts.
    pub fn rem_monic(&self, m: &Self) -> Self {
        let db = m.degree().expect("monic modulus");
        let Some(da) = self.degree() else { return self.clone() };
        if da < db {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for k in (0..=da - db).rev() {
            let c = r[k + db].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mc) in m.coeffs.iter().enumerate().take(db) {
                r[k + j] = r[k + j].sub(&c.mul(mc));
            }
            r[k + db] = F::zero(&self.ctx);
        }
        Self::new(r, self.ctx.clone())
    }

    pub fn exact_quo(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Result<Self> {
        self.certify_lead()?;
        match self.lc() {
            None => Ok(self.clone()),
            Some(c) => Ok(self.scale(&c.inv()?)),
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if let Some(g) = F::poly_gcd(self, other) {
            return g;
        }
        let mut a = self.monic()?;
        let mut b = other.monic()?;
        while !b.is_zero() {
            let r = a.rem(&b)?.monic()?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        loop {
            r1.certify_lead()?;
            if r1.is_zero() {
                break;
            }
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        r0.certify_lead()?;
        match r0.lc() {
            None => Ok((r0, s0, t0)),
            Some(c) => {
                let inv = c.inv()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative())?.degree().unwrap_or(0) == 0)
    }

    /// Monic polynomial with the same roots, all simple (characteristic 0).
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_quo(&g)?.monic()
    }

    /// Yun's decomposition: entry `i` is the monic product of the irreducible
    /// factors of multiplicity exactly `i + 1` (characteristic 0).
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>> {
        let f = self.monic()?;
        if f.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let df = f.derivative();
        let b = f.gcd(&df)?;
        let mut c = f.exact_quo(&b)?;
        let mut d = df.exact_quo(&b)?.sub(&c.derivative());
        let mut out = Vec::new();
        loop {
            let a = c.gcd(&d)?;
            c = c.exact_quo(&a)?;
            d = d.exact_quo(&a)?.sub(&c.derivative());
            out.push(a);
            c.certify_lead()?;
            if c.degree() == Some(0) {
                break;
            }
        }
        while out.last().is_some_and(|a| a.degree() == Some(0)) {
            out.pop();
        }
        Ok(out)
    }
}

impl<F: Field> UPoly<UPoly<F>> {
    /// Monic gcd of the coefficients (the content in `F[x]`).
    pub fn content(&self) -> Result<UPoly<F>> {
        let mut g = UPoly::zero(&self.ctx);
        for c in &self.coeffs {
            g = g.gcd(c)?;
            g.certify_lead()?;
            if g.degree() == Some(0) {
                break;
            }
        }
        Ok(g)
    }

    /// Divides out the content; the result has unit content.
    pub fn primitive_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let c = self.content()?;
        Ok(UPoly::new(
            self.coeffs.iter().map(|a| a.exact_quo(&c)).collect::<Result<_>>()?,
            self.ctx.clone(),
        ))
    }
}

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("x"))
    }
}

impl<R: Ring> fmt::Display for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("x"))
    }
}

/// `F[x]` as a coefficient domain; used for the recursive view `F[x][y]`.
impl<F: Field> Ring for UPoly<F> {
    type Ctx = F::Ctx;

    fn zero(ctx: &F::Ctx) -> Self {
        UPoly::zero(ctx)
    }
    fn one(ctx: &F::Ctx) -> Self {
        UPoly::one(ctx)
    }
    fn from_int(ctx: &F::Ctx, n: i64) -> Self {
        UPoly::constant(F::from_int(ctx, n))
    }
    fn ctx(&self) -> F::Ctx {
        self.ctx.clone()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        UPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        UPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        UPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        UPoly::neg(self)
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.exact_quo(divisor)
    }
    fn certify(&self) -> Result<()> {
        self.certify_lead()
    }
    fn pow(&self, e: u32) -> Self {
        UPoly::pow(self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn euclid_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = q(&[1, -2, 1]).mul(&q(&[2, 1]));
        assert_eq!(f.squarefree_part().unwrap(), q(&[-1, 1]).mul(&q(&[2, 1])));
        assert_eq!(q(&[0, 0, 0, 1]).squarefree_part().unwrap(), q(&[0, 1]));
        let yun = f.squarefree_decomposition().unwrap();
        assert_eq!(yun, vec![q(&[2, 1]), q(&[-1, 1])]);
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[1, 1])).unwrap(), q(&[1, 1]));
    }

    #[test]
    fn resultant_small_cases() {
        // Res(x - 1, x + 1) = 2
        assert_eq!(q(&[-1, 1]).resultant(&q(&[1, 1])).unwrap(), Rat::int(2));
        // Res(x^2 - 2, x) = -2 : (−1)^{2·1} · 1^2 · (−2)
        assert_eq!(q(&[-2, 0, 1]).resultant(&q(&[0, 1])).unwrap(), Rat::int(-2));
        assert_eq!(q(&[1, 1]).resultant(&q(&[])).unwrap(), Rat::int(0));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[1, 1, 1, 0, 2]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
