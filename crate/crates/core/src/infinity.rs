//! The defect `λ_a(f)`, the Euler characteristic of the nearby cycles at
//! infinity and the bifurcation sets of `f: A² → A¹`.
//!
//! With `d = 2` variables and isolated critical points,
//!
//! ```text
//! χ_c(f⁻¹(a)) - χ_c(f⁻¹(a_gen)) = (-1)^d (μ_a + λ_a)
//! χ_c(S^∞_{f,a})               = χ_gen - χ_a + (-1)^d μ_a = (-1)^(d-1) λ_a
//! χ_gen                        = 1 + (-1)^(d-1) (Σ μ_a + Σ λ_a)
//! ```
//!
//! `λ_a` is defined here by the first line. The second is cross-checked on
//! every value, and the third is an independent global check: it holds
//! because `χ_c(A²) = 1`, and fails if a special value is missed.
//!
//! Isolated singularities are assumed in the plane `A²`. The jump set is
//! the topological bifurcation set when `f` has isolated singularities at
//! infinity; that hypothesis is not verified.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fiber::{euler_affine_curve, euler_fiber, euler_fiber_split, euler_generic};
use crate::field::Rat;
use crate::parallel::parallel_map;
use crate::poly::Poly;
use crate::spectrum::{critical_spectrum, CritSpectrum, ValueClass};

/// Ambient dimension of the source of `f`.
pub const D: i64 = 2;

fn sign(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberInvariants {
    pub value: ValueClass,
    pub chi_a: i64,
    /// `None` when the critical locus is not isolated.
    pub mu_a: Option<u64>,
    pub lambda_a: Option<i64>,
    /// `χ_c(S^∞_{f,a})`.
    pub chi_infinity: Option<i64>,
    pub is_critical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub chi_gen: i64,
    pub mu_sum: i64,
    pub lambda_sum: i64,
    /// `1 + (-1)^(d-1) (Σμ + Σλ)`.
    pub rhs: i64,
}

impl Consistency {
    pub fn holds(&self) -> bool {
        self.chi_gen == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub polynomial: Poly<Rat>,
    pub chi_gen: i64,
    pub fibers: Vec<FiberInvariants>,
    pub euler_jump_set: Vec<ValueClass>,
    /// `{λ_a ≠ 0} ∪ disc(f)`; `None` without isolated singularities.
    pub lambda_set: Option<Vec<ValueClass>>,
    pub discriminant: Option<Vec<ValueClass>>,
    pub mu_total: Option<u64>,
    pub consistency: Option<Consistency>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub workers: usize,
    /// Random rational values off the candidate set checked against `χ_gen`.
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { workers: 1, spot_checks: 2, seed: 0x5eed }
    }
}

fn invariants(value: ValueClass, chi_gen: i64, chi_a: i64, spectrum: Option<&CritSpectrum>) -> Result<FiberInvariants> {
    let Some(s) = spectrum else {
        return Ok(FiberInvariants { value, chi_a, mu_a: None, lambda_a: None, chi_infinity: None, is_critical: false });
    };
    let mu = s.mu_of(&value)?;
    let mu_i = mu as i64;
    let lambda = sign(D) * (chi_a - chi_gen) - mu_i;
    let chi_inf = chi_gen - chi_a + sign(D) * mu_i;
    if chi_a - chi_gen != sign(D) * (mu_i + lambda) {
        return Err(Error::Internal(format!("Euler characteristic relation fails at {value}")));
    }
    if chi_inf != sign(D - 1) * lambda {
        return Err(Error::Internal(format!("nearby cycles at infinity disagree with λ at {value}")));
    }
    if mu == 0 && chi_inf != chi_gen - chi_a {
        return Err(Error::Internal(format!("non-critical value {value} breaks χ_gen - χ_a")));
    }
    Ok(FiberInvariants {
        value,
        chi_a,
        mu_a: Some(mu),
        lambda_a: Some(lambda),
        chi_infinity: Some(chi_inf),
        is_critical: mu > 0,
    })
}

fn check_input(f: &Poly<Rat>) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::Structural("only polynomials in x and y are supported".into()));
    }
    if f.is_constant() {
        return Err(Error::Degenerate("f is constant".into()));
    }
    Ok(())
}

/// `μ_a(f)` for every `a` in `class`.
pub fn milnor_at(f: &Poly<Rat>, class: &ValueClass) -> Result<u64> {
    check_input(f)?;
    critical_spectrum(f)?.mu_of(class)
}

/// All invariants of the fibers over `class`, which must share them.
pub fn fiber_invariants(f: &Poly<Rat>, class: &ValueClass) -> Result<FiberInvariants> {
    check_input(f)?;
    let s = critical_spectrum(f)?;
    let chi_gen = euler_generic(f)?.chi_gen;
    invariants(class.clone(), chi_gen, euler_fiber(f, class)?, Some(&s))
}

/// `λ_a(f) = (-1)^d (χ_a - χ_gen) - μ_a`.
pub fn lambda_at(f: &Poly<Rat>, class: &ValueClass) -> Result<i64> {
    Ok(fiber_invariants(f, class)?.lambda_a.expect("isolated"))
}

/// `χ_c(S^∞_{f,a}) = χ_gen - χ_a + (-1)^d μ_a`.
pub fn euler_at_infinity(f: &Poly<Rat>, class: &ValueClass) -> Result<i64> {
    Ok(fiber_invariants(f, class)?.chi_infinity.expect("isolated"))
}

pub fn euler_jump_set(f: &Poly<Rat>) -> Result<Vec<ValueClass>> {
    Ok(analyze_with(f, &AnalyzeOptions { spot_checks: 0, ..Default::default() })?.euler_jump_set)
}

pub fn lambda_bifurcation_set(f: &Poly<Rat>) -> Result<Vec<ValueClass>> {
    let report = analyze_with(f, &AnalyzeOptions { spot_checks: 0, ..Default::default() })?;
    report.lambda_set.ok_or(Error::NonIsolated)
}

pub fn global_consistency(f: &Poly<Rat>) -> Result<Consistency> {
    let report = analyze_with(f, &AnalyzeOptions { spot_checks: 0, ..Default::default() })?;
    report.consistency.ok_or(Error::NonIsolated)
}

pub fn analyze(f: &Poly<Rat>) -> Result<AnalysisReport> {
    analyze_with(f, &AnalyzeOptions::default())
}

fn random_value(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = rng.gen_range(-997..=997);
    let den: i64 = rng.gen_range(1..=97);
    Rat::new(num, den).expect("nonzero denominator")
}

pub fn analyze_with(f: &Poly<Rat>, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    check_input(f)?;
    let mut warnings = Vec::new();
    let generic = euler_generic(f)?;
    let chi_gen = generic.chi_gen;
    let spectrum = match critical_spectrum(f) {
        Ok(s) => Some(s),
        Err(Error::NonIsolated) => {
            warnings.push(
                "the critical locus of f is not isolated: Milnor numbers and λ are undefined, only fiber Euler characteristics are reported".into(),
            );
            None
        }
        Err(e) => return Err(e),
    };

    let per_class = parallel_map(&generic.candidates, opts.workers, |c| euler_fiber_split(f, c));
    let mut fibers = Vec::new();
    for parts in per_class {
        for (value, chi_a) in parts? {
            fibers.push(invariants(value, chi_gen, chi_a, spectrum.as_ref())?);
        }
    }
    fibers.sort_by(|a, b| a.value.cmp(&b.value));

    if opts.spot_checks > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut values = Vec::new();
        while values.len() < opts.spot_checks {
            let a = random_value(&mut rng);
            if !generic.candidates.iter().any(|c| c.contains(&a)) && !values.contains(&a) {
                values.push(a);
            }
        }
        let chis = parallel_map(&values, opts.workers, |a| euler_affine_curve(&f.sub(&f.constant_like(a.clone()))?));
        for (a, chi) in values.iter().zip(chis) {
            if chi?.chi != chi_gen {
                return Err(Error::Internal(format!("the fiber over {a} is special but was not a candidate")));
            }
        }
    }

    let euler_jump_set: Vec<ValueClass> = fibers.iter().filter(|v| v.chi_a != chi_gen).map(|v| v.value.clone()).collect();
    let (lambda_set, discriminant, mu_total, consistency) = match &spectrum {
        Some(s) => {
            let lambda_set: Vec<ValueClass> = fibers
                .iter()
                .filter(|v| v.is_critical || v.lambda_a != Some(0))
                .map(|v| v.value.clone())
                .collect();
            let weighted = |g: &dyn Fn(&FiberInvariants) -> i64| -> i64 {
                fibers.iter().map(|v| v.value.degree() as i64 * g(v)).sum()
            };
            let mu_sum = weighted(&|v| v.mu_a.expect("isolated") as i64);
            let lambda_sum = weighted(&|v| v.lambda_a.expect("isolated"));
            if mu_sum != s.mu_total as i64 {
                return Err(Error::Internal("a critical value is missing from the candidate set".into()));
            }
            let rhs = 1 + sign(D - 1) * (mu_sum + lambda_sum);
            let consistency = Consistency { chi_gen, mu_sum, lambda_sum, rhs };
            if !consistency.holds() {
                warnings.push(format!("global relation fails: χ_gen = {chi_gen} but 1 - (Σμ + Σλ) = {rhs}"));
            }
            (Some(lambda_set), Some(s.discriminant()), Some(s.mu_total), Some(consistency))
        }
        None => (None, None, None, None),
    };
    if let Some(ls) = &lambda_set {
        for v in &euler_jump_set {
            if !ls.contains(v) {
                return Err(Error::Internal(format!("jump value {v} is missing from the λ-bifurcation set")));
            }
        }
    }
    Ok(AnalysisReport {
        polynomial: f.clone(),
        chi_gen,
        fibers,
        euler_jump_set,
        lambda_set,
        discriminant,
        mu_total,
        consistency,
        warnings,
    })
}
