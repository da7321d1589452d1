//! Critical values and Milnor numbers via the eigenvalues of multiplication
//! by `f` on the Jacobian algebra `Q[x,y]/(f_x, f_y)`.
//!
//! The multiplicity of `(λ - a)` in the characteristic polynomial of that
//! operator is the sum of the local intersection multiplicities of
//! `f_x = f_y = 0` at the critical points on `f = a`, i.e. `μ_a(f)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{cmp_rat_slices, Rat, Ring};
use crate::groebner::{groebner_basis, mult_matrix, quotient_basis};
use crate::matrix::charpoly;
use crate::poly::Poly;
use crate::roots::{approximate_real_roots, rational_roots};
use crate::upoly::UPoly;

/// A Galois-stable finite set of values: the roots of a squarefree monic
/// polynomial over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ValueClass {
    minpoly: UPoly<Rat>,
}

impl ValueClass {
    pub fn new(p: &UPoly<Rat>) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::Precondition("a value class needs a non-constant polynomial".into()));
        }
        if !p.is_squarefree()? {
            return Err(Error::Precondition(format!("{p} is not squarefree")));
        }
        Ok(ValueClass { minpoly: p.monic()? })
    }

    pub fn rational(a: &Rat) -> Self {
        ValueClass { minpoly: UPoly::linear_root(a) }
    }

    pub fn minpoly(&self) -> &UPoly<Rat> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().expect("non-constant")
    }

    pub fn rational_hint(&self) -> Option<Rat> {
        (self.degree() == 1).then(|| self.minpoly.coeff(0).neg())
    }

    pub fn contains(&self, a: &Rat) -> bool {
        self.minpoly.eval(a).is_zero()
    }

    /// Real members to `digits` decimal places; display only.
    pub fn approx(&self, digits: u32) -> Result<Vec<String>> {
        approximate_real_roots(&self.minpoly, digits)
    }

    /// Splits off the rational members as classes of their own.
    pub fn split_rational(&self) -> Result<Vec<ValueClass>> {
        if self.degree() == 1 {
            return Ok(vec![self.clone()]);
        }
        let roots = rational_roots(&self.minpoly)?;
        let mut rest = self.minpoly.clone();
        let mut out = Vec::new();
        for r in roots {
            let lin = UPoly::linear_root(&r);
            rest = rest.exact_quo(&lin)?;
            out.push(ValueClass { minpoly: lin });
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push(ValueClass { minpoly: rest });
        }
        out.sort();
        Ok(out)
    }
}

impl Ord for ValueClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_rat_slices(self.minpoly.coeffs(), other.minpoly.coeffs()))
    }
}

impl PartialOrd for ValueClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ValueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ValueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_hint() {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "roots of {}", self.minpoly.fmt_in("a")),
        }
    }
}

/// Gcd-free basis: pairwise coprime monic squarefree polynomials whose
/// products cover exactly the roots of the inputs.
pub fn coprime_refinement(polys: &[UPoly<Rat>]) -> Result<Vec<UPoly<Rat>>> {
    let mut basis: Vec<UPoly<Rat>> = Vec::new();
    for p in polys {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut p = p.squarefree_part()?;
        let mut i = 0;
        while i < basis.len() && p.degree().unwrap_or(0) > 0 {
            let g = p.gcd(&basis[i])?;
            if g.degree().unwrap_or(0) > 0 {
                let rest = basis[i].exact_quo(&g)?;
                p = p.exact_quo(&g)?;
                basis[i] = g;
                if rest.degree().unwrap_or(0) > 0 {
                    basis.push(rest);
                }
            }
            i += 1;
        }
        if p.degree().unwrap_or(0) > 0 {
            basis.push(p.monic()?);
        }
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: ValueClass,
    /// Milnor number `μ_a` of each single value `a` of the class.
    pub mu: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CritSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub mu_total: u64,
    /// Characteristic polynomial of multiplication by `f`.
    pub charpoly: UPoly<Rat>,
}

impl CritSpectrum {
    /// `μ_a` for the members of `class`; zero off the discriminant. Fails
    /// if the class mixes values with different Milnor numbers.
    pub fn mu_of(&self, class: &ValueClass) -> Result<u64> {
        let mut found = None;
        for e in &self.entries {
            let g = e.value.minpoly.gcd(&class.minpoly)?;
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            if g != class.minpoly || found.is_some() {
                return Err(Error::Precondition(format!(
                    "the values {class} do not share a single Milnor number"
                )));
            }
            found = Some(e.mu);
        }
        Ok(found.unwrap_or(0))
    }

    pub fn discriminant(&self) -> Vec<ValueClass> {
        let mut d: Vec<ValueClass> = self.entries.iter().map(|e| e.value.clone()).collect();
        d.sort();
        d
    }
}

/// Critical values of `f ∈ Q[x,y]` grouped into classes of equal Milnor number.
pub fn critical_spectrum(f: &Poly<Rat>) -> Result<CritSpectrum> {
    if f.nvars() != 2 {
        return Err(Error::Structural("critical spectrum needs two variables".into()));
    }
    if f.is_constant() {
        return Err(Error::Degenerate("f is constant".into()));
    }
    let gb = groebner_basis(&[f.partial_derivative(0)?, f.partial_derivative(1)?])?;
    let qa = quotient_basis(&gb)?;
    let m = mult_matrix(&qa, &gb, f)?;
    let cp = charpoly(&m, &())?;
    if cp.degree() != Some(qa.dimension()) {
        return Err(Error::Internal("characteristic polynomial has the wrong degree".into()));
    }
    let mut entries = Vec::new();
    if qa.dimension() > 0 {
        for (i, factor) in cp.squarefree_decomposition()?.iter().enumerate() {
            if factor.degree().unwrap_or(0) == 0 {
                continue;
            }
            for value in ValueClass::new(factor)?.split_rational()? {
                entries.push(SpectrumEntry { value, mu: i as u64 + 1 });
            }
        }
    }
    entries.sort_by(|a, b| a.value.cmp(&b.value));
    let mu_total: u64 = entries.iter().map(|e| e.value.degree() as u64 * e.mu).sum();
    if mu_total != qa.dimension() as u64 {
        return Err(Error::Internal(format!(
            "Milnor numbers sum to {mu_total}, Jacobian algebra has dimension {}",
            qa.dimension()
        )));
    }
    Ok(CritSpectrum { entries, mu_total, charpoly: cp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial as p;

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn spectrum_examples() {
        let s = critical_spectrum(&p("y^2 - x^3").unwrap()).unwrap();
        assert_eq!(s.entries, vec![SpectrumEntry { value: ValueClass::rational(&Rat::int(0)), mu: 2 }]);
        assert_eq!(s.mu_total, 2);
        let s = critical_spectrum(&p("x^2*y - x").unwrap()).unwrap();
        assert!(s.entries.is_empty());
        assert_eq!(s.mu_total, 0);
        let s = critical_spectrum(&p("x^2 + y^2").unwrap()).unwrap();
        assert_eq!(s.entries, vec![SpectrumEntry { value: ValueClass::rational(&Rat::int(0)), mu: 1 }]);
        assert!(matches!(critical_spectrum(&p("x^2*y^2").unwrap()), Err(Error::NonIsolated)));
    }

    #[test]
    fn galois_orbit_classes() {
        // critical points (±√2, 0) with values ∓4√2/3
        let s = critical_spectrum(&p("x^3/3 - 2*x + y^2").unwrap()).unwrap();
        let orbit = ValueClass::new(&UPoly::new(vec![Rat::new(-32, 9).unwrap(), Rat::int(0), Rat::int(1)], ())).unwrap();
        assert_eq!(s.entries, vec![SpectrumEntry { value: orbit.clone(), mu: 1 }]);
        assert_eq!(s.mu_of(&orbit).unwrap(), 1);
        assert_eq!(s.mu_of(&ValueClass::rational(&Rat::int(5))).unwrap(), 0);
        // two critical points x = ±1 on one fiber
        let s = critical_spectrum(&p("x^6/6 - 3/4*x^4 + x^2 + y^2").unwrap()).unwrap();
        let mus: Vec<(Option<Rat>, u64)> = s.entries.iter().map(|e| (e.value.rational_hint(), e.mu)).collect();
        assert_eq!(
            mus,
            vec![(Some(Rat::new(5, 12).unwrap()), 2), (Some(Rat::new(1, 3).unwrap()), 2), (Some(Rat::int(0)), 1)]
        );
        assert!(s.mu_of(&ValueClass::new(&q(&[0, 1]).mul(&q(&[-1, 3]))).unwrap()).is_err());
    }

    #[test]
    fn refinement_is_coprime() {
        let a = q(&[0, -1, 0, 1]);
        let b = q(&[-1, 0, 1]).mul(&q(&[-2, 1]));
        let basis = coprime_refinement(&[a, b, q(&[3])]).unwrap();
        let total: usize = basis.iter().map(|b| b.degree().unwrap()).sum();
        assert_eq!(total, 4);
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                assert_eq!(u.gcd(v).unwrap().degree(), Some(0));
            }
        }
    }

    #[test]
    fn classes_sort_by_degree_then_coefficients() {
        let mut v = [
            ValueClass::new(&q(&[-2, 0, 1])).unwrap(),
            ValueClass::rational(&Rat::int(1)),
            ValueClass::rational(&Rat::int(-1)),
        ];
        v.sort();
        assert_eq!(v[0].rational_hint(), Some(Rat::int(1)));
        assert_eq!(v[1].rational_hint(), Some(Rat::int(-1)));
        assert_eq!(v[2].degree(), 2);
        let split = ValueClass::new(&q(&[0, -1, 0, 1])).unwrap().split_rational().unwrap();
        assert_eq!(split.len(), 3);
    }
}
