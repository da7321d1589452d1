//! Coefficient rings and fields.
//!
//! Every element carries (or is able to produce) its context, so a zero or
//! one can always be built next to an existing value. Zero tests here are
//! structural: an element of `Q[x]/(q)` is zero iff its reduced
//! representative is the zero polynomial. Algorithms that depend on an
//! element being a *unit* must ask through [`Ring::certify`] or
//! [`Field::inv`], which is where dynamic evaluation may split.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::upoly::UPoly;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Division that is known to be exact in the ring.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;

    /// [`Ring::exact_div`] of every entry by one divisor.
    fn exact_div_all(values: &[Self], divisor: &Self) -> Result<Vec<Self>> {
        values.iter().map(|v| v.exact_div(divisor)).collect()
    }

    /// Confirms that a structurally nonzero element is nonzero on the current
    /// branch, splitting or recording as the ring requires.
    fn certify(&self) -> Result<()> {
        Ok(())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
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
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self>;

    fn from_rat(ctx: &Self::Ctx, q: &Rat) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Hands the element to an active degeneracy recorder, if the field
    /// has one.
    fn note_degeneracy(&self) {}

    /// Replacement for the Euclidean gcd in `Self[x]`, for fields where a
    /// fraction-free method is much cheaper.
    fn poly_gcd(_a: &UPoly<Self>, _b: &UPoly<Self>) -> Option<Result<UPoly<Self>>> {
        None
    }

    /// `true` only if `a` and `b` are certainly coprime; `false` means
    /// unknown.
    fn coprime_hint(_a: &UPoly<Self>, _b: &UPoly<Self>) -> bool {
        false
    }
}

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn from_inner(q: BigRational) -> Self {
        Rat(q)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("`{text}` is not a rational number p/q"));
        let text = text.trim();
        match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::new(n, d)
            }
            None => Ok(Rat::from_bigint(text.parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Ring for Rat {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Rat(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rat(BigRational::one())
    }
    fn from_int(_: &(), n: i64) -> Self {
        Rat::int(n)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Field for Rat {
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::Internal("inverse of zero rational".into()));
        }
        Ok(Rat(self.0.recip()))
    }
    fn from_rat(_: &(), q: &Rat) -> Result<Self> {
        Ok(q.clone())
    }

    /// Coprime modulo a prime that keeps both degrees implies coprime over Q.
    fn coprime_hint(a: &UPoly<Self>, b: &UPoly<Self>) -> bool {
        const PRIMES: [u64; 3] = [2147483647, 2147483629, 2147483587];
        let reduce = |f: &UPoly<Rat>, p: PrimeModulus| -> Option<UPoly<Fp>> {
            let c = f.coeffs().iter().map(|c| Fp::from_rat(&p, c).ok()).collect::<Option<Vec<_>>>()?;
            let r = UPoly::new(c, p);
            (r.degree() == f.degree() && !r.is_zero()).then_some(r)
        };
        PRIMES.iter().any(|&p| {
            let p = PrimeModulus(p);
            match (reduce(a, p), reduce(b, p)) {
                (Some(ra), Some(rb)) => ra.gcd(&rb).is_ok_and(|g| g.degree() == Some(0)),
                _ => false,
            }
        })
    }
}

/// A validated prime modulus `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Precondition(format!("prime {p} is too large (limit 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn element(self, v: i64) -> Fp {
        Fp { v: v.rem_euclid(self.0 as i64) as u64, p: self.0 }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> PrimeModulus {
        PrimeModulus(self.p)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Ring for Fp {
    type Ctx = PrimeModulus;

    fn zero(ctx: &PrimeModulus) -> Self {
        Fp { v: 0, p: ctx.0 }
    }
    fn one(ctx: &PrimeModulus) -> Self {
        Fp { v: 1 % ctx.0, p: ctx.0 }
    }
    fn from_int(ctx: &PrimeModulus, n: i64) -> Self {
        ctx.element(n)
    }
    fn ctx(&self) -> PrimeModulus {
        PrimeModulus(self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp { v: (self.v + rhs.v) % self.p, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp { v: (self.v * rhs.v) % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::Internal("inverse of zero in F_p".into()));
        }
        // Fermat: v^(p-2)
        Ok(Ring::pow(self, (self.p - 2) as u32))
    }

    fn from_rat(ctx: &PrimeModulus, q: &Rat) -> Result<Self> {
        let p = BigInt::from(ctx.0);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::Precondition(format!(
                "prime {} divides the denominator of {q}",
                ctx.0
            )));
        }
        let num = q.numer().mod_floor(&p).to_u64().expect("reduced residue fits");
        let den = den.to_u64().expect("reduced residue fits");
        Ok(Fp { v: num, p: ctx.0 }.mul(&Fp { v: den, p: ctx.0 }.inv()?))
    }
}

/// Total order on rationals used for deterministic sorting.
pub fn cmp_rat_slices(a: &[Rat], b: &[Rat]) -> Ordering {
    a.iter().cmp(b.iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let q = Rat::new(6, -4).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(Rat::zero(&()).denom(), &BigInt::from(1));
        assert!(Rat::new(1, 0).is_err());
        assert_eq!(Rat::parse(" -3/6 ").unwrap(), Rat::new(-1, 2).unwrap());
        assert!(Rat::parse("1/x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        assert!(PrimeModulus::new(4).is_err());
        assert!(PrimeModulus::new(1).is_err());
        let p = PrimeModulus::new(7).unwrap();
        let a = p.element(3);
        assert_eq!(a.mul(&a.inv().unwrap()), Fp::one(&p));
        assert_eq!(p.element(-1).value(), 6);
        let half = Fp::from_rat(&p, &Rat::new(1, 2).unwrap()).unwrap();
        assert_eq!(half.value(), 4);
        assert!(Fp::from_rat(&p, &Rat::new(1, 14).unwrap()).is_err());
    }
}
