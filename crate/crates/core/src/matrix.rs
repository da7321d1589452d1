//! Dense matrices, fraction-free determinants and characteristic polynomials.

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::upoly::UPoly;

pub type Matrix<R> = Vec<Vec<R>>;

/// Determinant by Bareiss elimination: every division is exact in `R`.
pub fn determinant<R: Ring>(m: &Matrix<R>, ctx: &R::Ctx) -> Result<R> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Structural("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(R::one(ctx));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one(ctx);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(R::zero(ctx));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let mut updated = Vec::with_capacity((n - k - 1) * (n - k - 1));
        for i in k + 1..n {
            for j in k + 1..n {
                updated.push(a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j])));
            }
        }
        let mut quotients = R::exact_div_all(&updated, &prev)?.into_iter();
        for row in a.iter_mut().skip(k + 1) {
            for entry in row.iter_mut().skip(k + 1) {
                *entry = quotients.next().expect("one quotient per entry");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// `det(λ·I − m)`, monic of degree `m.len()`.
pub fn charpoly<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> Result<UPoly<F>> {
    let n = m.len();
    let shifted: Matrix<UPoly<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UPoly::constant(m[i][j].neg());
                    if i == j {
                        c.add(&UPoly::var(ctx))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    determinant(&shifted, ctx)
}

/// Sylvester matrix of `a` (top `deg b` rows) and `b` (bottom `deg a` rows),
/// columns indexed by descending powers.
pub fn sylvester<R: Ring>(a: &UPoly<R>, b: &UPoly<R>) -> Matrix<R> {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else { return Vec::new() };
    let size = m + n;
    let ctx = a.context();
    let mut out = vec![vec![R::zero(ctx); size]; size];
    for i in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            out[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            out[n + i][i + k] = c.clone();
        }
    }
    out
}

/// `k`-th principal subresultant coefficient of `a` and `b`: the
/// determinant of the rows `x^i·a` (`i < deg b - k`) and `x^j·b`
/// (`j < deg a - k`) restricted to the powers `x^k` and above. It vanishes
/// at a specialization (with leading coefficients intact) exactly when
/// the gcd there has degree above `k`, provided the lower ones do.
pub fn principal_subresultant<R: Ring>(a: &UPoly<R>, b: &UPoly<R>, k: usize) -> Result<R> {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Err(Error::Structural("subresultant of a zero polynomial".into()));
    };
    if k > m.min(n) {
        return Err(Error::Structural("subresultant index above both degrees".into()));
    }
    let ctx = a.context();
    let size = m + n - 2 * k;
    let top = m + n - k - 1;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts) in [(a, n - k), (b, m - k)] {
        for i in (0..shifts).rev() {
            rows.push((0..size).map(|j| if top - j >= i { p.coeff(top - j - i) } else { R::zero(ctx) }).collect());
        }
    }
    determinant(&rows, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn r(v: i64) -> Rat {
        Rat::int(v)
    }

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn characteristic_polynomials() {
        let zero = vec![vec![r(0), r(0)], vec![r(0), r(0)]];
        assert_eq!(charpoly(&zero, &()).unwrap(), q(&[0, 0, 1]));
        let id = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        assert_eq!(charpoly(&id, &()).unwrap(), q(&[1, -2, 1]));
        let diag = vec![vec![r(1), r(0)], vec![r(0), r(2)]];
        assert_eq!(charpoly(&diag, &()).unwrap(), q(&[2, -3, 1]));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = vec![vec![r(0), r(1), r(2)], vec![r(1), r(0), r(3)], vec![r(4), r(-3), r(8)]];
        // cofactor expansion: 0·(0+9) − 1·(8−12) + 2·(−3−0) = −2
        assert_eq!(determinant(&m, &()).unwrap(), r(-2));
    }

    #[test]
    fn sylvester_matches_subresultant() {
        let a = q(&[3, -1, 0, 2]);
        let b = q(&[-5, 2, 7]);
        let det = determinant(&sylvester(&a, &b), &()).unwrap();
        assert_eq!(det, a.resultant(&b).unwrap());
        assert_eq!(determinant(&sylvester(&b, &a), &()).unwrap(), b.resultant(&a).unwrap());
    }

    #[test]
    fn principal_subresultants() {
        let a = q(&[3, -1, 0, 2]);
        let b = q(&[-5, 2, 7]);
        assert_eq!(principal_subresultant(&a, &b, 0).unwrap(), a.resultant(&b).unwrap());
        assert_eq!(principal_subresultant(&a, &b, 2).unwrap(), r(7));
        // (x-1)^2 (x+2) and its derivative share x - 1 only
        let f = q(&[1, -2, 1]).mul(&q(&[2, 1]));
        let d = f.derivative();
        assert!(principal_subresultant(&f, &d, 0).unwrap().is_zero());
        assert!(!principal_subresultant(&f, &d, 1).unwrap().is_zero());
    }
}
