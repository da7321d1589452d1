//! Real roots of squarefree rational polynomials: Sturm isolation, bisection
//! to decimal precision, and exact rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::field::{Field, Rat, Ring};
use crate::upoly::UPoly;

fn sturm_chain(p: &UPoly<Rat>) -> Result<Vec<UPoly<Rat>>> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().expect("nonempty").is_zero() {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1])?.neg();
        chain.push(r);
    }
    chain.pop();
    Ok(chain)
}

fn sign_changes(chain: &[UPoly<Rat>], x: &Rat) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_negative())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy bound: every real root lies in `(-b, b)`.
fn root_bound(p: &UPoly<Rat>) -> Rat {
    let lc = p.lc().expect("nonzero").clone();
    let mut m = Rat::int(0);
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.div_exact(&lc).abs();
        if r > m {
            m = r;
        }
    }
    m.add(&Rat::int(1))
}

impl Rat {
    fn div_exact(&self, d: &Rat) -> Rat {
        Rat::from_inner(self.inner() / d.inner())
    }

    fn half_sum(&self, other: &Rat) -> Rat {
        Rat::from_inner((self.inner() + other.inner()) / BigInt::from(2))
    }
}

/// Disjoint intervals `(lo, hi]`, each containing exactly one real root of
/// the squarefree polynomial `p`, in increasing order.
pub fn isolate_real_roots(p: &UPoly<Rat>) -> Result<Vec<(Rat, Rat)>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(p)?;
    let b = root_bound(p);
    let mut stack = vec![(b.neg(), b)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = lo.half_sum(&hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn refine(p: &UPoly<Rat>, chain: &[UPoly<Rat>], lo: &mut Rat, hi: &mut Rat) {
    let mid = lo.half_sum(hi);
    if p.eval(&mid).is_zero() {
        *lo = mid.clone();
        *hi = mid;
        return;
    }
    if sign_changes(chain, lo) - sign_changes(chain, &mid) == 1 {
        *hi = mid;
    } else {
        *lo = mid;
    }
}

/// Rounds to `digits` decimal places, half away from zero.
pub fn to_decimal(x: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = x.inner().abs() * &scale;
    let rounded = (scaled + num_rational::BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded_is_zero(&int, &frac) { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

fn rounded_is_zero(int: &BigInt, frac: &BigInt) -> bool {
    int.is_zero() && frac.is_zero()
}

/// Decimal approximations of the real roots, correctly rounded to `digits`
/// places. Non-authoritative: for display only.
pub fn approximate_real_roots(p: &UPoly<Rat>, digits: u32) -> Result<Vec<String>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(p)?;
    let ints = integer_form(p);
    let target = Rat::from_inner(num_rational::BigRational::new(
        BigInt::one(),
        BigInt::from(10).pow(digits + 3),
    ));
    let mut out = Vec::new();
    for (mut lo, mut hi) in isolate_real_roots(p)? {
        let mut rounds = 0;
        narrow(p, &chain, &ints, &mut lo, &mut hi, |lo, hi| {
            rounds += 1;
            // the root sits in (lo, hi]; once both ends round alike so does it
            hi.sub(lo) < target && (rounds > 400 || to_decimal(lo, digits) == to_decimal(hi, digits))
        });
        out.push(to_decimal(&hi, digits));
    }
    Ok(out)
}

/// Sign of `p(x)` from the integer form of `p`, without rational arithmetic.
fn sign_at(ints: &[BigInt], x: &Rat) -> i8 {
    let (num, den) = (x.inner().numer(), x.inner().denom());
    let d = ints.len() - 1;
    let mut den_pow = vec![BigInt::one(); d + 1];
    for i in 1..=d {
        den_pow[i] = &den_pow[i - 1] * den;
    }
    let mut acc = ints[d].clone();
    for i in (0..d).rev() {
        acc = acc * num + &ints[i] * &den_pow[d - i];
    }
    if acc.is_zero() {
        0
    } else if acc.is_negative() {
        -1
    } else {
        1
    }
}

/// Shrinks an isolating interval `(lo, hi]` by sign bisection until `done`
/// holds or the root is hit exactly (then `lo == hi`).
fn narrow(
    p: &UPoly<Rat>,
    chain: &[UPoly<Rat>],
    ints: &[BigInt],
    lo: &mut Rat,
    hi: &mut Rat,
    mut done: impl FnMut(&Rat, &Rat) -> bool,
) {
    if sign_at(ints, hi) == 0 {
        *lo = hi.clone();
        return;
    }
    while *lo != *hi && sign_at(ints, lo) == 0 {
        refine(p, chain, lo, hi);
    }
    if *lo == *hi {
        return;
    }
    let lo_sign = sign_at(ints, lo);
    while !done(lo, hi) {
        let mid = lo.half_sum(hi);
        match sign_at(ints, &mid) {
            0 => {
                *lo = mid.clone();
                *hi = mid;
                return;
            }
            s if s == lo_sign => *lo = mid,
            _ => *hi = mid,
        }
    }
}

fn integer_form(p: &UPoly<Rat>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// The rational with the smallest denominator in `[lo, hi]`, `lo <= hi`.
fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    let zero = Rat::int(0);
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return simplest_between(&hi.neg(), &lo.neg()).neg();
    }
    let n = lo.inner().floor();
    let n_rat = Rat::from_inner(n.clone());
    if lo.inner().ceil() <= *hi.inner() {
        return Rat::from_inner(lo.inner().ceil());
    }
    // lo and hi lie in (n, n + 1)
    let (a, b) = (hi.sub(&n_rat).inv().expect("nonzero"), lo.sub(&n_rat).inv().expect("nonzero"));
    n_rat.add(&simplest_between(&a, &b).inv().expect("nonzero"))
}

/// Exact rational roots of a squarefree polynomial, increasing.
///
/// A root `r/q` has `q | L` for the leading coefficient `L` of the integer
/// form, and two such rationals differ by at least `1/L²`. Once an isolating
/// interval is narrower than that, its only candidate is the simplest
/// rational it contains.
pub fn rational_roots(p: &UPoly<Rat>) -> Result<Vec<Rat>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let ints = integer_form(p);
    let lead = ints.last().expect("nonzero").abs();
    let chain = sturm_chain(p)?;
    let limit = Rat::from_inner(num_rational::BigRational::new(BigInt::one(), &lead * &lead * 2));
    let mut out = Vec::new();
    for (mut lo, mut hi) in isolate_real_roots(p)? {
        narrow(p, &chain, &ints, &mut lo, &mut hi, |lo, hi| hi.sub(lo) <= limit);
        let cand = simplest_between(&lo, &hi);
        if p.eval(&cand).is_zero() && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn isolates_and_approximates() {
        let p = q(&[-2, 0, 1]);
        assert_eq!(isolate_real_roots(&p).unwrap().len(), 2);
        let approx = approximate_real_roots(&p, 20).unwrap();
        assert_eq!(approx, vec!["-1.41421356237309504880", "1.41421356237309504880"]);
        assert!(approximate_real_roots(&q(&[1, 0, 1]), 20).unwrap().is_empty());
        assert_eq!(approximate_real_roots(&q(&[0, 1]), 3).unwrap(), vec!["0.000"]);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&Rat::new(1, 3).unwrap(), 4), "0.3333");
        assert_eq!(to_decimal(&Rat::new(-2, 3).unwrap(), 2), "-0.67");
        assert_eq!(to_decimal(&Rat::new(-1, 1000).unwrap(), 2), "0.00");
        assert_eq!(to_decimal(&Rat::int(7), 0), "7");
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (2a - 1)(a + 3)(a^2 - 2)
        let p = q(&[-1, 2]).mul(&q(&[3, 1])).mul(&q(&[-2, 0, 1]));
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![Rat::int(-3), Rat::new(1, 2).unwrap()]);
        assert_eq!(rational_roots(&q(&[-2, 0, 1])).unwrap(), vec![]);
        assert_eq!(rational_roots(&q(&[0, 1])).unwrap(), vec![Rat::int(0)]);
        // leading coefficient far beyond trial division
        let big = Rat::from_inner(num_rational::BigRational::new(BigInt::from(7), BigInt::from(10).pow(30) + 1));
        let p = UPoly::linear_root(&big).mul(&q(&[0, 1])).mul(&q(&[-3, 0, 1]));
        assert_eq!(rational_roots(&p).unwrap(), vec![Rat::int(0), big]);
        assert_eq!(simplest_between(&Rat::new(3, 10).unwrap(), &Rat::new(4, 10).unwrap()), Rat::new(1, 3).unwrap());
        assert_eq!(simplest_between(&Rat::new(-7, 2).unwrap(), &Rat::new(-3, 1).unwrap()), Rat::int(-3));
    }
}
