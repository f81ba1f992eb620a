//! Precision management, multiprecision complex numbers, truncated power
//! series and series acceleration.

pub mod accel;
pub mod complex;
pub mod context;
pub mod series;

pub use accel::{accelerate_sum, levin_u, Accelerated};
pub use complex::Complex;
pub use context::{fmt_float, make_context, make_context_with_cap, PrecisionContext, DEFAULT_DIGIT_CAP};
pub use series::{binom_lambda_series, series_elementary, Coeff, SeriesOp, TruncatedSeries};
