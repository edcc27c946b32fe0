//! Exact gap structure of the sequence `k·α mod 1`.
//!
//! The crate computes, with arbitrary-precision integer and rational
//! arithmetic only:
//!
//! - continued-fraction expansions, convergents and semiconvergents ([`cf`]);
//! - periodic expansions of quadratic irrationals and the eigenvalue closed
//!   form for their convergent denominators ([`quadratic`], [`field`]);
//! - the brute-force gap multiset of `{⟨kα⟩ : 0 ≤ k < N} ∪ {1}` on a rational
//!   surrogate of α ([`oracle`]);
//! - the continued-fraction prediction of which `N` produce exactly two
//!   distinct gaps, with frequency counts and upper bounds ([`predictor`]);
//! - seeded Monte Carlo checks of the metric statistics of continued-fraction
//!   digits ([`metric`]).

pub mod cf;
pub mod field;
pub mod matrix;
pub mod metric;
pub mod oracle;
pub mod predictor;
pub mod quadratic;
pub mod source;

mod error;

pub use cf::{cf_from_rational, CfError, CfExpansion, Convergent, Tail};
pub use error::Error;
pub use field::QuadElem;
pub use matrix::{ConvergentMatrix, Mat2};
pub use metric::{MetricReport, SampleError, SampleSpec};
pub use oracle::{GapClass, GapReport, OracleError, Surrogate, UPermutation};
pub use predictor::{FrequencyRow, FrequencyTrace, Scenario, TwoGapPrediction};
pub use quadratic::{EigenSplit, PeriodDecomposition, QuadraticSurd, SurdError};
pub use source::{AlphaSource, ParseAlphaError};

pub type Result<T, E = Error> = std::result::Result<T, E>;
