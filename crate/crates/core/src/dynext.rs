//! Dynamic evaluation: computing in `F[x]/(q)` for a squarefree `q` as if
//! it were a field.
//!
//! `F[x]/(q)` is a product of fields, one per irreducible factor of `q`.
//! Whenever an algorithm needs an element to be a unit and it is a nonzero
//! zero divisor, inversion fails with [`Error::Split`] carrying a nontrivial
//! factor of `q` found by a gcd. [`split_evaluate`] catches splits that belong
//! to its own modulus, replaces the modulus by the two coprime factors, and
//! reruns the computation on each branch. Splits of an enclosing extension
//! pass through untouched.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result, Split};
use crate::field::{Field, Rat, Ring};
use crate::upoly::UPoly;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct ExtCtx<F: Field> {
    id: u64,
    modulus: UPoly<F>,
}

impl<F: Field> ExtCtx<F> {
    /// Registers a fresh extension. `modulus` must be monic of degree ≥ 1.
    pub fn new(modulus: UPoly<F>) -> Result<Arc<Self>> {
        if modulus.degree().unwrap_or(0) == 0 || !modulus.lc().is_some_and(Ring::is_one) {
            return Err(Error::Internal("extension modulus must be monic and non-constant".into()));
        }
        Ok(Arc::new(ExtCtx { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), modulus }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn modulus(&self) -> &UPoly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("non-constant")
    }

    /// Class of `p` modulo the modulus.
    pub fn reduce(self: &Arc<Self>, p: &UPoly<F>) -> DynExt<F> {
        DynExt { rep: p.rem_monic(&self.modulus), ctx: self.clone() }
    }

    /// The class of the indeterminate: a generic root of the modulus.
    pub fn generator(self: &Arc<Self>) -> DynExt<F> {
        self.reduce(&UPoly::var(self.modulus.context()))
    }

    pub fn embed(self: &Arc<Self>, c: &F) -> DynExt<F> {
        self.reduce(&UPoly::constant(c.clone()))
    }
}

impl<F: Field> PartialEq for ExtCtx<F> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl<F: Field> fmt::Debug for ExtCtx<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F[x]/({:?}) #{}", self.modulus, self.id)
    }
}

/// Element of `F[x]/(q)` stored as its remainder modulo `q`.
#[derive(Clone)]
pub struct DynExt<F: Field> {
    rep: UPoly<F>,
    ctx: Arc<ExtCtx<F>>,
}

impl<F: Field> DynExt<F> {
    pub fn rep(&self) -> &UPoly<F> {
        &self.rep
    }

    pub fn ext(&self) -> &Arc<ExtCtx<F>> {
        &self.ctx
    }
}

impl<F: Field> PartialEq for DynExt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id == other.ctx.id && self.rep == other.rep
    }
}

impl<F: Field> fmt::Debug for DynExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep.fmt_in("α"))
    }
}

impl<F: Field> fmt::Display for DynExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.fmt_in("α"))
    }
}

impl<F: Field> Ring for DynExt<F> {
    type Ctx = Arc<ExtCtx<F>>;

    fn zero(ctx: &Self::Ctx) -> Self {
        DynExt { rep: UPoly::zero(ctx.modulus.context()), ctx: ctx.clone() }
    }
    fn one(ctx: &Self::Ctx) -> Self {
        DynExt { rep: UPoly::one(ctx.modulus.context()), ctx: ctx.clone() }
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        ctx.embed(&F::from_int(ctx.modulus.context(), n))
    }
    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        DynExt { rep: self.rep.add(&rhs.rep), ctx: self.ctx.clone() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        DynExt { rep: self.rep.sub(&rhs.rep), ctx: self.ctx.clone() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.ctx.reduce(&self.rep.mul(&rhs.rep))
    }
    fn neg(&self) -> Self {
        DynExt { rep: self.rep.neg(), ctx: self.ctx.clone() }
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.div(divisor)
    }
    fn exact_div_all(values: &[Self], divisor: &Self) -> Result<Vec<Self>> {
        let inv = divisor.inv()?;
        Ok(values.iter().map(|v| v.mul(&inv)).collect())
    }
    fn certify(&self) -> Result<()> {
        if F::coprime_hint(&self.rep, &self.ctx.modulus) {
            return Ok(());
        }
        self.inv().map(|_| ())
    }
    fn is_one(&self) -> bool {
        self.rep.degree() == Some(0) && self.rep.coeff(0).is_one()
    }
}

impl<F: Field> Field for DynExt<F> {
    fn inv(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::Internal("inverse of zero in a dynamic extension".into()));
        }
        let (g, s, _) = self.rep.ext_gcd(&self.ctx.modulus)?;
        if g.degree() == Some(0) {
            return Ok(self.ctx.reduce(&s));
        }
        Err(Error::Split(Split { ext_id: self.ctx.id, factor: Arc::new(g) }))
    }

    fn from_rat(ctx: &Self::Ctx, q: &Rat) -> Result<Self> {
        Ok(ctx.embed(&F::from_rat(ctx.modulus.context(), q)?))
    }

    /// Subresultant sequence: one inversion per step instead of one per
    /// coefficient, and no growth from repeated monic normalisation.
    fn poly_gcd(a: &UPoly<Self>, b: &UPoly<Self>) -> Option<Result<UPoly<Self>>> {
        if a.is_zero() || b.is_zero() {
            return None;
        }
        Some(a.prs_gcd(b).and_then(|g| g.monic()))
    }
}

/// Factors `q = q₁·q₂` from a zero divisor `witness` of `F[x]/(q)`.
pub fn univ_split<F: Field>(q: &UPoly<F>, witness: &DynExt<F>) -> Result<(UPoly<F>, UPoly<F>)> {
    if witness.rep.is_zero() {
        return Err(Error::Internal("split witness is zero".into()));
    }
    let g = witness.rep.gcd(q)?;
    if g.degree() == Some(0) {
        return Err(Error::Internal("split witness is invertible".into()));
    }
    let other = q.monic()?.exact_quo(&g)?;
    Ok((g, other))
}

/// Runs `compute` over `F[x]/(modulus)` and over the factors of every split
/// it triggers. Returns one `(branch modulus, result)` per final branch; the
/// branch moduli are pairwise coprime and multiply to `modulus` (made monic).
pub fn split_evaluate<F: Field, T>(
    modulus: &UPoly<F>,
    mut compute: impl FnMut(&Arc<ExtCtx<F>>) -> Result<T>,
) -> Result<Vec<(UPoly<F>, T)>> {
    let m = modulus.monic()?;
    let mut pending = vec![m];
    let mut done = Vec::new();
    while let Some(m) = pending.pop() {
        let ctx = ExtCtx::new(m.clone())?;
        match compute(&ctx) {
            Ok(t) => done.push((m, t)),
            Err(Error::Split(s)) if s.ext_id == ctx.id => {
                let g = s
                    .factor
                    .downcast_ref::<UPoly<F>>()
                    .ok_or_else(|| Error::Internal("split factor of the wrong type".into()))?
                    .clone();
                let h = m.exact_quo(&g)?;
                if g.degree().unwrap_or(0) == 0 || h.degree().unwrap_or(0) == 0 {
                    return Err(Error::Internal("trivial split".into()));
                }
                // pop order: g first, then h
                pending.push(h);
                pending.push(g);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UPoly<Rat> {
        UPoly::new(c.iter().map(|&v| Rat::int(v)).collect(), ())
    }

    #[test]
    fn split_examples() {
        let m = q(&[-1, 0, 1]);
        let ctx = ExtCtx::new(m.clone()).unwrap();
        let w = ctx.reduce(&q(&[-1, 1]));
        assert!(matches!(w.inv(), Err(Error::Split(_))));
        assert_eq!(univ_split(&m, &w).unwrap(), (q(&[-1, 1]), q(&[1, 1])));

        let cubic = q(&[0, -1, 0, 1]);
        let ctx = ExtCtx::new(cubic.clone()).unwrap();
        let (a, b) = univ_split(&cubic, &ctx.generator()).unwrap();
        assert_eq!((a, b), (q(&[0, 1]), q(&[-1, 0, 1])));
    }

    #[test]
    fn irreducible_modulus_never_splits() {
        let ctx = ExtCtx::new(q(&[-2, 0, 1])).unwrap();
        let alpha = ctx.generator();
        for e in [alpha.clone(), alpha.add(&DynExt::one(&ctx)), alpha.mul(&alpha).add(&alpha)] {
            let inv = e.inv().unwrap();
            assert!(e.mul(&inv).is_one());
            assert!(univ_split(ctx.modulus(), &e).is_err());
        }
    }

    #[test]
    fn split_driver_partitions_roots() {
        // number of nonzero roots of x^3 - x, decided branch by branch
        let branches = split_evaluate(&q(&[0, -1, 0, 1]), |ctx| {
            let alpha = ctx.generator();
            if alpha.is_zero() {
                return Ok(0);
            }
            alpha.certify()?;
            Ok(ctx.degree())
        })
        .unwrap();
        assert_eq!(branches, vec![(q(&[0, 1]), 0), (q(&[-1, 0, 1]), 2)]);
    }
}
