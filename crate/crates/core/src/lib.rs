//! Exact invariants of polynomial maps `f: A² → A¹` at infinity.
//!
//! The crate computes, with exact arithmetic only, the compactly supported
//! Euler characteristic of every fiber of `f`, the Milnor numbers `μ_a`, the
//! defect `λ_a` that measures the failure of equisingularity at infinity, the
//! Euler characteristic of the nearby cycles at infinity (`-λ_a` for plane
//! curves) and the set of values where the fiber Euler characteristic jumps.
//!
//! Independent oracles live alongside: the Kouchnirenko number of the Newton
//! polygon at infinity bounds-checks the total Milnor number, and a jet
//! counter over small prime fields exercises the arc-space conditions
//! (`ord f(φ) = n`, `ac f(φ) = 1`) behind the motivic constructions.
//!
//! Layout:
//! - [`field`], [`upoly`], [`poly`], [`ratfunc`], [`dynext`]: coefficient
//!   fields and polynomial arithmetic, including resultants, subresultant
//!   gcds and dynamic evaluation over squarefree moduli.
//! - [`groebner`], [`spectrum`]: Jacobian quotient algebra and critical values.
//! - [`fiber`]: Euler characteristics of affine plane curves.
//! - [`infinity`]: `λ_a`, `χ_c(S^∞_{f,a})`, bifurcation sets.
//! - [`newton`], [`jets`]: the two independent oracles.
//! - [`parse`], [`report`]: text front end and JSON rendering.

pub mod dynext;
pub mod error;
pub mod fiber;
pub mod field;
pub mod groebner;
pub mod infinity;
pub mod jets;
pub mod matrix;
pub mod newton;
pub mod parallel;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod roots;
pub mod spectrum;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeModulus, Rat, Ring};
pub use fiber::{euler_affine_curve, euler_fiber, euler_generic, EulerResult, GenericFiber};
pub use infinity::{analyze, AnalysisReport, FiberInvariants};
pub use parse::parse_polynomial;
pub use poly::{Monomial, Poly};
pub use spectrum::{critical_spectrum, CritSpectrum, ValueClass};
pub use upoly::UPoly;
