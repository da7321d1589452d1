//! The rational function field `Q(a)`, coefficient field of the generic fiber.
//!
//! Elements are kept as `num/den` with `den` monic and `gcd(num, den) = 1`.
//! Polynomial gcds over `Q(a)` run fraction-free over `Q[a]`.
//!
//! While a [`DegeneracyRecorder`] is active on the current thread, elements
//! passed to [`Field::note_degeneracy`] contribute their numerator and
//! denominator to it.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rat, Ring};
use crate::upoly::UPoly;

#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: UPoly<Rat>,
    den: UPoly<Rat>,
}

impl RatFunc {
    pub fn from_poly(p: UPoly<Rat>) -> Self {
        RatFunc { num: p, den: UPoly::one(&()) }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// The transcendental `a` itself.
    pub fn symbol() -> Self {
        Self::from_poly(UPoly::var(&()))
    }

    pub fn new(num: UPoly<Rat>, den: UPoly<Rat>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = num.gcd(&den)?;
        let num = num.exact_quo(&g)?;
        let den = den.exact_quo(&g)?;
        let lc = den.lc().expect("nonzero").inv()?;
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    fn build(num: UPoly<Rat>, den: UPoly<Rat>) -> Self {
        Self::new(num, den).expect("rational arithmetic over Q never fails")
    }

    pub fn numer(&self) -> &UPoly<Rat> {
        &self.num
    }

    pub fn denom(&self) -> &UPoly<Rat> {
        &self.den
    }

    /// Value at `a = a0`, or `None` when the denominator vanishes there.
    pub fn eval(&self, a0: &Rat) -> Option<Rat> {
        let d = self.den.eval(a0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(a0).div(&d).expect("nonzero"))
    }

    fn record(&self) {
        RECORDER.with(|r| {
            if let Some(set) = r.borrow_mut().as_mut() {
                for p in [&self.num, &self.den] {
                    if p.degree().unwrap_or(0) > 0 {
                        let monic = p.monic().expect("Q is a field");
                        set.insert(monic.into_coeffs());
                    }
                }
            }
        });
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.fmt_in("a"))
        } else {
            write!(f, "({})/({})", self.num.fmt_in("a"), self.den.fmt_in("a"))
        }
    }
}

impl Ring for RatFunc {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Self::from_poly(UPoly::zero(&()))
    }
    fn one(_: &()) -> Self {
        Self::from_poly(UPoly::one(&()))
    }
    fn from_int(_: &(), n: i64) -> Self {
        Self::constant(Rat::int(n))
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::build(self.num.add(&rhs.num), self.den.clone());
        }
        Self::build(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&());
        }
        Self::build(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }
    fn certify(&self) -> Result<()> {
        Ok(())
    }
    fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree() == Some(0) && self.num.coeff(0).is_one()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Internal("inverse of zero in Q(a)".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    fn from_rat(_: &(), q: &Rat) -> Result<Self> {
        Ok(Self::constant(q.clone()))
    }

    fn note_degeneracy(&self) {
        self.record();
    }

    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> Option<Result<UPoly<Self>>> {
        Some(fraction_free_gcd(a, b))
    }
}

/// `p` times the lcm of its denominators, as a polynomial over `Q[a]`.
fn clear_denominators(p: &UPoly<RatFunc>) -> Result<UPoly<UPoly<Rat>>> {
    let mut l = UPoly::one(&());
    for c in p.coeffs() {
        let g = l.gcd(&c.den)?;
        l = l.mul(&c.den.exact_quo(&g)?);
    }
    let coeffs = p.coeffs().iter().map(|c| Ok(c.num.mul(&l.exact_quo(&c.den)?))).collect::<Result<_>>()?;
    Ok(UPoly::new(coeffs, ()))
}

/// At a value keeping both leading coefficients the gcd can only grow, so
/// coprime values prove coprimality over `Q(a)`.
fn specializes_coprime(a: &UPoly<UPoly<Rat>>, b: &UPoly<UPoly<Rat>>) -> bool {
    let (la, lb) = (a.lc().expect("nonzero"), b.lc().expect("nonzero"));
    let at = |p: &UPoly<UPoly<Rat>>, v: &Rat| UPoly::new(p.coeffs().iter().map(|c| c.eval(v)).collect(), ());
    [0, 1, -1, 2, -2, 3, -3]
        .into_iter()
        .map(Rat::int)
        .filter(|v| !la.eval(v).is_zero() && !lb.eval(v).is_zero())
        .any(|v| {
            let (sa, sb) = (at(a, &v), at(b, &v));
            Rat::coprime_hint(&sa, &sb) || sa.gcd(&sb).is_ok_and(|g| g.degree() == Some(0))
        })
}

/// Monic gcd over `Q(a)` through the subresultant sequence over `Q[a]`,
/// avoiding the coefficient growth of Euclid over the fraction field.
fn fraction_free_gcd(a: &UPoly<RatFunc>, b: &UPoly<RatFunc>) -> Result<UPoly<RatFunc>> {
    if a.is_zero() || b.is_zero() {
        return if a.is_zero() { b.monic() } else { a.monic() };
    }
    let (a, b) = (clear_denominators(a)?, clear_denominators(b)?);
    if specializes_coprime(&a, &b) {
        return Ok(UPoly::one(&()));
    }
    let g = a.prs_gcd(&b)?.primitive_part()?;
    UPoly::new(g.coeffs().iter().map(|c| RatFunc::from_poly(c.clone())).collect(), ()).monic()
}

thread_local! {
    static RECORDER: RefCell<Option<BTreeSet<Vec<Rat>>>> = const { RefCell::new(None) };
}

/// Scoped collector of degeneracy polynomials on the current thread.
pub struct DegeneracyRecorder {
    // outer `Some` until the previous recorder state has been restored
    saved: Option<Option<BTreeSet<Vec<Rat>>>>,
}

impl DegeneracyRecorder {
    pub fn start() -> Self {
        let saved = RECORDER.with(|r| r.borrow_mut().replace(BTreeSet::new()));
        DegeneracyRecorder { saved: Some(saved) }
    }

    /// Adds a polynomial by hand (leading coefficients, contents, ...).
    pub fn note(p: &UPoly<Rat>) {
        RatFunc::from_poly(p.clone()).record();
    }

    /// Monic non-constant polynomials recorded so far, in a fixed order.
    pub fn finish(mut self) -> Vec<UPoly<Rat>> {
        let collected = RECORDER.with(|r| {
            let mut slot = r.borrow_mut();
            let out = slot.take().unwrap_or_default();
            *slot = self.saved.take().flatten();
            out
        });
        collected.into_iter().map(|c| UPoly::new(c, ())).collect()
    }
}

impl Drop for DegeneracyRecorder {
    fn drop(&mut self) {
        if let Some(saved) = self.saved.take() {
            RECORDER.with(|r| *r.borrow_mut() = saved);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn normalized_arithmetic() {
        let a = RatFunc::symbol();
        let one = RatFunc::one(&());
        // (a^2 - 1)/(a - 1) = a + 1
        let x = RatFunc::new(q(&[-1, 0, 1]), q(&[-1, 1])).unwrap();
        assert_eq!(x, a.add(&one));
        let y = one.div(&a).unwrap().add(&one);
        assert_eq!(y.denom(), &q(&[0, 1]));
        assert_eq!(y.mul(&a), a.add(&one));
        assert_eq!(y.eval(&Rat::int(2)), Some(Rat::new(3, 2).unwrap()));
        assert_eq!(y.eval(&Rat::int(0)), None);
    }

    #[test]
    fn recorder_collects_notes() {
        let rec = DegeneracyRecorder::start();
        let a = RatFunc::symbol();
        a.sub(&RatFunc::one(&())).inv().unwrap().note_degeneracy();
        let _ = a.add(&a).inv();
        let polys = rec.finish();
        assert_eq!(polys, vec![q(&[-1, 1])]);
    }

    #[test]
    fn fraction_free_gcd_matches_euclid() {
        let a = RatFunc::symbol();
        let one = RatFunc::one(&());
        // (x - a)(x + 1/a) and (x - a)(x - 2)
        let x = UPoly::var(&());
        let lin = |c: &RatFunc| x.sub(&UPoly::constant(c.clone()));
        let inv_a = one.div(&a).unwrap().neg();
        let p1 = lin(&a).mul(&lin(&inv_a));
        let p2 = lin(&a).mul(&lin(&RatFunc::from_int(&(), 2)));
        assert_eq!(p1.gcd(&p2).unwrap(), lin(&a));
        assert_eq!(p1.gcd(&UPoly::zero(&())).unwrap(), p1.monic().unwrap());
    }
}
