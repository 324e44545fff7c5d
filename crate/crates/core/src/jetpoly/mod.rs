//! Sparse polynomials in jet variables and truncated series over them.

mod poly;
mod series;

pub use poly::{JetPolynomial, JetVariable, Monomial, Ring};
pub use series::{series_derivative, series_mul, NumericSeries, Series, TruncatedSeries};

/// Evaluates `p` at `point`.
pub fn evaluate(
    p: &JetPolynomial,
    point: &std::collections::HashMap<JetVariable, num_rational::BigRational>,
) -> crate::Result<num_rational::BigRational> {
    p.evaluate(point)
}
