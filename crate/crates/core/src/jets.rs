//! Exact counts of jets on the plane over `F_p`.
//!
//! A jet of level `n` is a pair `(x(t), y(t))` of polynomials of degree
//! `≤ n`, i.e. power series modulo `t^(n+1)`. The counters enumerate all
//! `p^(2(n+1))` pairs and test either `f(φ) ≡ 0` or `f(φ) ≡ t^n`
//! (`ord f(φ) = n` and `ac f(φ) = 1`) modulo `t^(n+1)`.

use crate::error::{Error, Result};
use crate::field::{Field, Fp, PrimeModulus, Rat, Ring};
use crate::groebner::groebner_basis;
use crate::poly::Poly;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Number of series variables.
const D: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    /// `f(φ) ≡ 0 mod t^(n+1)`.
    OnFiber,
    /// `f(φ) ≡ t^n mod t^(n+1)`.
    OrderAc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetSpec {
    pub p: PrimeModulus,
    pub n: u32,
    pub filter: Filter,
    pub budget: u64,
    pub workers: usize,
}

impl JetSpec {
    pub fn new(p: u64, n: u32, filter: Filter) -> Result<Self> {
        Ok(JetSpec { p: PrimeModulus::new(p)?, n, filter, budget: DEFAULT_BUDGET, workers: 1 })
    }

    pub fn with_budget(self, budget: u64) -> Self {
        JetSpec { budget, ..self }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        JetSpec { workers: workers.max(1), ..self }
    }

    /// `p^(d(n+1))`, the size of the enumeration.
    pub fn states(&self) -> u128 {
        (self.p.get() as u128).pow(D * (self.n + 1))
    }

    fn check_budget(&self) -> Result<()> {
        let needed = self.states();
        if needed > self.budget as u128 {
            return Err(Error::Budget { needed, budget: self.budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCount {
    pub spec: JetSpec,
    pub count: u128,
}

impl JetCount {
    /// `count / p^(n·d)`.
    pub fn normalized(&self) -> Rat {
        let scale = num_bigint::BigInt::from(self.spec.p.get()).pow(self.spec.n * D);
        Rat::from_inner(num_rational::BigRational::new(self.count.into(), scale))
    }
}

/// `f` reduced modulo `p` as a list of `(i, j, c)` for `c·x^i·y^j`.
fn reduce_terms(f: &Poly<Rat>, p: PrimeModulus) -> Result<Vec<(usize, usize, u64)>> {
    if f.nvars() != 2 {
        return Err(Error::Structural("jets are counted on the plane: two variables".into()));
    }
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        let r = Fp::from_rat(&p, c)?;
        if !r.is_zero() {
            out.push((m.exps()[0] as usize, m.exps()[1] as usize, r.value()));
        }
    }
    Ok(out)
}

/// Truncated series arithmetic modulo `t^len` with coefficients mod `p`.
fn series_mul(a: &[u64], b: &[u64], p: u64, out: &mut [u64]) {
    let len = out.len();
    out.iter_mut().for_each(|c| *c = 0);
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b[..len - i].iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
}

/// `powers[k]` is `s^k` truncated.
fn powers(s: &[u64], max: usize, p: u64) -> Vec<Vec<u64>> {
    let len = s.len();
    let mut out = Vec::with_capacity(max + 1);
    let mut one = vec![0; len];
    one[0] = 1 % p;
    out.push(one);
    for k in 1..=max {
        let mut next = vec![0; len];
        series_mul(&out[k - 1], s, p, &mut next);
        out.push(next);
    }
    out
}

fn decode(mut index: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = index % p;
        index /= p;
    }
    out
}

fn target(spec: &JetSpec) -> Vec<u64> {
    let mut t = vec![0; spec.n as usize + 1];
    if spec.filter == Filter::OrderAc {
        t[spec.n as usize] = 1 % spec.p.get();
    }
    t
}

/// Counts by exhaustive enumeration. The `x`-jets are split into contiguous
/// blocks, one per worker; the per-block counts are summed.
pub fn count_jets_filtered(f: &Poly<Rat>, spec: &JetSpec) -> Result<JetCount> {
    spec.check_budget()?;
    let p = spec.p.get();
    let terms = reduce_terms(f, spec.p)?;
    let len = spec.n as usize + 1;
    let side = p.pow(len as u32);
    let max_i = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let want = target(spec);
    let y_powers: Vec<Vec<Vec<u64>>> = (0..side).map(|k| powers(&decode(k, p, len), max_j, p)).collect();

    let count_block = |from: u64, to: u64| -> u128 {
        let mut hits = 0u128;
        let mut acc = vec![0u64; len];
        let mut prod = vec![0u64; len];
        for xi in from..to {
            let xp = powers(&decode(xi, p, len), max_i, p);
            for yp in &y_powers {
                acc.iter_mut().for_each(|c| *c = 0);
                for &(i, j, c) in &terms {
                    series_mul(&xp[i], &yp[j], p, &mut prod);
                    for (a, b) in acc.iter_mut().zip(&prod) {
                        *a = (*a + c * b) % p;
                    }
                }
                if acc == want {
                    hits += 1;
                }
            }
        }
        hits
    };

    let workers = (spec.workers as u64).clamp(1, side);
    let count = if workers == 1 {
        count_block(0, side)
    } else {
        let chunk = side.div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let (from, to) = (w * chunk, ((w + 1) * chunk).min(side));
                    let count_block = &count_block;
                    s.spawn(move || count_block(from, to))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    Ok(JetCount { spec: *spec, count })
}

/// Jets on `V(f)`: `f(φ) ≡ 0 mod t^(n+1)`.
pub fn count_jets(f: &Poly<Rat>, spec: &JetSpec) -> Result<JetCount> {
    count_jets_filtered(f, &JetSpec { filter: Filter::OnFiber, ..*spec })
}

/// Filtered counts for `n = 0..=levels`.
pub fn jet_series_table(f: &Poly<Rat>, p: u64, levels: u32, filter: Filter) -> Result<Vec<JetCount>> {
    let base = JetSpec::new(p, 0, filter)?;
    (0..=levels).map(|n| count_jets_filtered(f, &JetSpec { n, ..base })).collect()
}

/// Second strategy for `f = A(y)·x + B(y)` (or the same with `x`, `y`
/// exchanged): for each jet `y(t)` the congruence `A·x ≡ T - B` has either
/// no solution or exactly `p^v` of them, `v = ord A`.
pub fn count_jets_linear(f: &Poly<Rat>, spec: &JetSpec) -> Result<JetCount> {
    let p = spec.p.get();
    let mut terms = reduce_terms(f, spec.p)?;
    if terms.iter().any(|t| t.0 > 1) {
        if terms.iter().any(|t| t.1 > 1) {
            return Err(Error::Precondition("f is linear in neither variable".into()));
        }
        terms = terms.into_iter().map(|(i, j, c)| (j, i, c)).collect();
    }
    let len = spec.n as usize + 1;
    let side = p.pow(len as u32);
    if side as u128 > spec.budget as u128 {
        return Err(Error::Budget { needed: side as u128, budget: spec.budget });
    }
    let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let want = target(spec);
    let mut count = 0u128;
    for k in 0..side {
        let yp = powers(&decode(k, p, len), max_j, p);
        let (mut a, mut b) = (vec![0u64; len], vec![0u64; len]);
        for &(i, j, c) in &terms {
            let dst = if i == 1 { &mut a } else { &mut b };
            for (d, s) in dst.iter_mut().zip(&yp[j]) {
                *d = (*d + c * s) % p;
            }
        }
        let rhs: Vec<u64> = want.iter().zip(&b).map(|(t, b)| (t + p - b) % p).collect();
        let v = a.iter().position(|&c| c != 0).unwrap_or(len);
        // A = t^v·unit: solvable iff t^v divides the right side; the top v
        // coefficients of x are then free
        if rhs[..v].iter().all(|&c| c == 0) {
            count += (p as u128).pow(v as u32);
        }
    }
    Ok(JetCount { spec: *spec, count })
}

/// `V(f) mod p` has no singular point over the algebraic closure of `F_p`.
pub fn is_smooth_mod_p(f: &Poly<Rat>, p: PrimeModulus) -> Result<bool> {
    let g = f.map_coeffs(&p, |c| Fp::from_rat(&p, c))?;
    if g.is_zero() {
        return Ok(false);
    }
    let gb = groebner_basis(&[g.clone(), g.partial_derivative(0)?, g.partial_derivative(1)?])?;
    Ok(gb.is_unit_ideal())
}

/// Affine bundle law on a smooth curve: `|L_n| = p^n · |L_0|`.
pub fn smooth_bundle_check(f: &Poly<Rat>, p: u64, n: u32) -> Result<bool> {
    let spec = JetSpec::new(p, n, Filter::OnFiber)?;
    if !is_smooth_mod_p(f, spec.p)? {
        return Err(Error::Precondition(format!("V(f) is singular modulo {p}")));
    }
    let top = count_jets(f, &spec)?.count;
    let base = count_jets(f, &JetSpec { n: 0, ..spec })?.count;
    Ok(top == (p as u128).pow(n) * base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial as poly;

    fn on(f: &str, p: u64, n: u32) -> u128 {
        count_jets(&poly(f).unwrap(), &JetSpec::new(p, n, Filter::OnFiber).unwrap()).unwrap().count
    }

    fn ac(f: &str, p: u64, n: u32) -> u128 {
        count_jets_filtered(&poly(f).unwrap(), &JetSpec::new(p, n, Filter::OrderAc).unwrap()).unwrap().count
    }

    #[test]
    fn on_fiber_counts() {
        assert_eq!(on("x*y", 2, 1), 8);
        assert_eq!(on("x", 2, 1), 4);
        assert_eq!(on("x - y^2", 3, 1), 9);
    }

    #[test]
    fn order_ac_counts() {
        assert_eq!(ac("x", 2, 1), 4);
        assert_eq!(ac("x", 3, 2), 27);
        assert_eq!(ac("x*y", 2, 0), 1);
        let table = jet_series_table(&poly("x").unwrap(), 2, 2, Filter::OrderAc).unwrap();
        assert_eq!(table.iter().map(|c| c.count).collect::<Vec<_>>(), vec![2, 4, 8]);
        assert_eq!(table[2].normalized(), Rat::new(1, 2).unwrap());
    }

    #[test]
    fn bundle_law() {
        assert!(smooth_bundle_check(&poly("x - y^2").unwrap(), 3, 2).unwrap());
        assert!(smooth_bundle_check(&poly("x").unwrap(), 2, 3).unwrap());
        assert!(matches!(smooth_bundle_check(&poly("x*y").unwrap(), 2, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn guards() {
        let f = poly("x/3 + y").unwrap();
        assert!(matches!(count_jets(&f, &JetSpec::new(3, 0, Filter::OnFiber).unwrap()), Err(Error::Precondition(_))));
        let big = JetSpec::new(5, 3, Filter::OnFiber).unwrap().with_budget(1000);
        assert!(matches!(count_jets(&poly("x").unwrap(), &big), Err(Error::Budget { needed: 390625, .. })));
        assert!(JetSpec::new(4, 1, Filter::OnFiber).is_err());
    }

    #[test]
    fn strategies_and_workers_agree() {
        for f in ["x", "x - y^2", "x*y + y^3 - 1", "y - x^2 + x"] {
            for (p, n) in [(2, 2), (3, 1), (5, 1)] {
                for filter in [Filter::OnFiber, Filter::OrderAc] {
                    let spec = JetSpec::new(p, n, filter).unwrap();
                    let g = poly(f).unwrap();
                    let brute = count_jets_filtered(&g, &spec).unwrap();
                    assert_eq!(count_jets_linear(&g, &spec).unwrap(), brute, "{f} p={p} n={n}");
                    assert_eq!(count_jets_filtered(&g, &spec.with_workers(3)).unwrap().count, brute.count);
                }
            }
        }
    }
}
