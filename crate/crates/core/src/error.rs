use thiserror::Error;

use crate::{CfError, OracleError, SampleError, SurdError};

/// Union of the per-module errors, tagged with the module that raised them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cf_core: {0}")]
    Cf(#[from] CfError),
    #[error("quadratic: {0}")]
    Surd(#[from] SurdError),
    #[error("gap_oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("metric_mc: {0}")]
    Sample(#[from] SampleError),
}
