//! JSON rendering with a fixed schema. Integers that may not fit in 64 bits
//! (jet counts, rational coefficients) are written as decimal strings.

use serde::Serialize;

use crate::error::Error;
use crate::infinity::{AnalysisReport, FiberInvariants};
use crate::jets::{Filter, JetCount};
use crate::newton::NewtonPolygonInf;
use crate::spectrum::{CritSpectrum, ValueClass};

/// Decimal places of the displayed approximations.
pub const APPROX_DIGITS: u32 = 20;

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ValueClassJson {
    /// Coefficients of the minimal polynomial, constant term first.
    pub minpoly: Vec<String>,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_hint: Option<String>,
    /// Real members rounded to 20 places; display only, not authoritative.
    pub approx: Vec<String>,
}

impl From<&ValueClass> for ValueClassJson {
    fn from(v: &ValueClass) -> Self {
        ValueClassJson {
            minpoly: v.minpoly().coeffs().iter().map(ToString::to_string).collect(),
            degree: v.degree(),
            rational_hint: v.rational_hint().map(|r| r.to_string()),
            approx: v.approx(APPROX_DIGITS).unwrap_or_default(),
        }
    }
}

fn classes(v: &[ValueClass]) -> Vec<ValueClassJson> {
    v.iter().map(ValueClassJson::from).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct FiberJson {
    pub value: ValueClassJson,
    pub chi_a: i64,
    pub mu_a: Option<u64>,
    pub lambda_a: Option<i64>,
    pub chi_infinity: Option<i64>,
    pub is_critical: bool,
}

impl From<&FiberInvariants> for FiberJson {
    fn from(f: &FiberInvariants) -> Self {
        FiberJson {
            value: (&f.value).into(),
            chi_a: f.chi_a,
            mu_a: f.mu_a,
            lambda_a: f.lambda_a,
            chi_infinity: f.chi_infinity,
            is_critical: f.is_critical,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ReportJson {
    pub polynomial: String,
    pub chi_gen: i64,
    pub fibers: Vec<FiberJson>,
    pub euler_jump_set: Vec<ValueClassJson>,
    pub lambda_set: Option<Vec<ValueClassJson>>,
    pub discriminant: Option<Vec<ValueClassJson>>,
    pub consistency_12: Option<bool>,
    pub warnings: Vec<String>,
}

impl From<&AnalysisReport> for ReportJson {
    fn from(r: &AnalysisReport) -> Self {
        ReportJson {
            polynomial: r.polynomial.render(),
            chi_gen: r.chi_gen,
            fibers: r.fibers.iter().map(FiberJson::from).collect(),
            euler_jump_set: classes(&r.euler_jump_set),
            lambda_set: r.lambda_set.as_deref().map(classes),
            discriminant: r.discriminant.as_deref().map(classes),
            consistency_12: r.consistency.as_ref().map(|c| c.holds()),
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SpectrumJson {
    pub entries: Vec<SpectrumEntryJson>,
    pub mu_total: u64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SpectrumEntryJson {
    pub value: ValueClassJson,
    pub mu: u64,
}

impl From<&CritSpectrum> for SpectrumJson {
    fn from(s: &CritSpectrum) -> Self {
        SpectrumJson {
            entries: s.entries.iter().map(|e| SpectrumEntryJson { value: (&e.value).into(), mu: e.mu }).collect(),
            mu_total: s.mu_total,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct NewtonJson {
    pub support: Vec<(i64, i64)>,
    pub vertices: Vec<(i64, i64)>,
    pub faces_at_infinity: Vec<((i64, i64), (i64, i64))>,
    pub face_polynomials: Vec<String>,
    pub x_intercept: Option<i64>,
    pub y_intercept: Option<i64>,
    pub convenient: bool,
    pub nondegenerate: bool,
    pub kouchnirenko_number: Option<i64>,
}

impl NewtonJson {
    pub fn new(np: &NewtonPolygonInf, faces: Vec<String>, nondegenerate: bool) -> Self {
        let convenient = np.x_intercept.is_some() && np.y_intercept.is_some();
        let nu = match (np.x_intercept, np.y_intercept) {
            (Some(a), Some(b)) => Some(np.doubled_area() - a - b + 1),
            _ => None,
        };
        NewtonJson {
            support: np.support.clone(),
            vertices: np.vertices.clone(),
            faces_at_infinity: np.faces_at_infinity.clone(),
            face_polynomials: faces,
            x_intercept: np.x_intercept,
            y_intercept: np.y_intercept,
            convenient,
            nondegenerate,
            kouchnirenko_number: nu,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JetJson {
    pub prime: u64,
    pub level: u32,
    pub filter: &'static str,
    pub count: String,
    /// `count / p^(2n)` as an exact fraction.
    pub normalized: String,
}

pub fn filter_name(f: Filter) -> &'static str {
    match f {
        Filter::OnFiber => "on_fiber",
        Filter::OrderAc => "order_ac",
    }
}

impl From<&JetCount> for JetJson {
    fn from(c: &JetCount) -> Self {
        JetJson {
            prime: c.spec.p.get(),
            level: c.spec.n,
            filter: filter_name(c.spec.filter),
            count: c.count.to_string(),
            normalized: c.normalized().to_string(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ErrorJson {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ErrorEnvelope {
    pub error: ErrorJson,
}

impl From<&Error> for ErrorEnvelope {
    fn from(e: &Error) -> Self {
        let (line, column) = match e {
            Error::Parse { line, column, .. } => (Some(*line), Some(*column)),
            _ => (None, None),
        };
        ErrorEnvelope { error: ErrorJson { kind: e.kind(), message: e.to_string(), line, column } }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
