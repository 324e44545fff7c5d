use num_bigint::BigInt;
use num_rational::BigRational;

use super::{JetPolynomial, JetVariable, Ring};
use crate::error::{Error, Result};

/// Power series in `s` known up to and including `s^trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type TruncatedSeries = Series<JetPolynomial>;
pub type NumericSeries = Series<BigRational>;

impl<C: Ring> Series<C> {
    /// Pads or cuts `coeffs` to exactly `trunc + 1` entries.
    pub fn new(mut coeffs: Vec<C>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, C::zero_el());
        Series { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Series::new(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Series::new(vec![C::one_el()], trunc)
    }

    /// `None` when no coefficient is known (after differentiating past the bound).
    pub fn trunc(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Option<&C> {
        self.coeffs.get(d)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero_el)
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(trunc + 1);
        Series { coeffs: c }
    }

    /// Product known up to `min(trunc, self.trunc, other.trunc)`.
    pub fn mul(&self, other: &Self, trunc: usize) -> Self {
        let len = (trunc + 1).min(self.coeffs.len()).min(other.coeffs.len());
        let mut out = vec![C::zero_el(); len];
        for (a, fa) in self.coeffs.iter().enumerate().take(len) {
            if fa.is_zero_el() {
                continue;
            }
            for (b, gb) in other.coeffs.iter().enumerate().take(len - a) {
                out[a + b].add_mul(fa, gb);
            }
        }
        Series { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|d| {
                let mut c = self.coeffs[d].clone();
                c.add_assign_ref(&other.coeffs[d]);
                c
            })
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&crate::rational::int(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// `self += c * other` on the common precision.
    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        self.coeffs.truncate(other.coeffs.len());
        for (d, x) in self.coeffs.iter_mut().enumerate() {
            if !other.coeffs[d].is_zero_el() {
                x.add_assign_ref(&other.coeffs[d].scale(c));
            }
        }
    }

    /// `order`-th derivative: coefficient of `s^d` is `(d+1)...(d+order) f_{d+order}`.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|e| {
                let d = e - order;
                let f: BigInt = ((d + 1)..=(d + order)).map(BigInt::from).product();
                self.coeffs[e].scale(&BigRational::from_integer(f))
            })
            .collect();
        Series { coeffs }
    }
}

impl NumericSeries {
    /// Inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs.first()?;
        if Ring::is_zero_el(a0) {
            return None;
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = vec![inv0.clone()];
        for d in 1..self.coeffs.len() {
            let mut acc = <BigRational as Ring>::zero_el();
            for j in 1..=d {
                acc += &self.coeffs[j] * &out[d - j];
            }
            out.push(-acc * &inv0);
        }
        Some(Series { coeffs: out })
    }
}

impl TruncatedSeries {
    /// The generic entry series with coefficient `z_{row,col}^{(k)}` at `s^k`.
    pub fn generic_entry(var: impl Fn(u8) -> JetVariable, trunc: usize) -> Self {
        Series { coeffs: (0..=trunc).map(|k| JetPolynomial::var(var(k as u8))).collect() }
    }

    fn kinds(&self) -> Vec<crate::Kind> {
        let mut ks: Vec<_> = self.coeffs.iter().flat_map(JetPolynomial::kinds).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn evaluate(&self, point: &std::collections::HashMap<JetVariable, BigRational>) -> Result<NumericSeries> {
        let coeffs = self.coeffs.iter().map(|c| c.evaluate(point)).collect::<Result<Vec<_>>>()?;
        Ok(Series { coeffs })
    }
}

/// Product of two series over the same variable universe, truncated at `trunc`.
pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries, trunc: usize) -> Result<TruncatedSeries> {
    let (a, b) = (f.kinds(), g.kinds());
    if a.len() > 1 || b.len() > 1 || (a.len() == 1 && b.len() == 1 && a != b) {
        return Err(Error::AlphabetMismatch(format!("{a:?}"), format!("{b:?}")));
    }
    Ok(f.mul(g, trunc))
}

pub fn series_derivative(f: &TruncatedSeries, order: usize) -> TruncatedSeries {
    f.derivative(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::Kind;

    fn zv(k: u8) -> JetPolynomial {
        JetPolynomial::var(JetVariable::new(Kind::A, 1, 1, k))
    }

    #[test]
    fn difference_of_squares() {
        let z = zv(0);
        let f = Series::new(vec![JetPolynomial::one(), z.clone()], 2);
        let g = Series::new(vec![JetPolynomial::one(), -&z], 2);
        let p = series_mul(&f, &g, 2).unwrap();
        assert_eq!(p.coeffs()[0], JetPolynomial::one());
        assert!(p.coeffs()[1].is_zero());
        assert_eq!(p.coeffs()[2], -&(&z * &z));
        assert_eq!(series_mul(&f, &Series::one(2), 2).unwrap(), f);
    }

    #[test]
    fn mismatch_rejected() {
        let f = TruncatedSeries::generic_entry(|k| JetVariable::new(Kind::A, 1, 1, k), 2);
        let g = TruncatedSeries::generic_entry(|k| JetVariable::new(Kind::C, 1, 1, k), 2);
        assert!(series_mul(&f, &g, 2).is_err());
    }

    #[test]
    fn power_rule() {
        let f: NumericSeries = Series::new(vec![int(5), int(7), int(3)], 2);
        assert_eq!(f.derivative(0), f);
        assert_eq!(f.derivative(1).coeffs(), &[int(7), int(6)]);
        assert_eq!(f.derivative(1).trunc(), Some(1));
        assert_eq!(f.derivative(3).trunc(), None);
    }

    #[test]
    fn geometric_inverse() {
        let f: NumericSeries = Series::new(vec![int(1), int(1)], 4);
        let g = f.inverse().unwrap();
        assert_eq!(g.coeffs(), &[int(1), int(-1), int(1), int(-1), int(1)]);
        let h: NumericSeries = Series::new(vec![frac(1, 2), int(3)], 3);
        assert_eq!(h.mul(&h.inverse().unwrap(), 3), Series::one(3));
    }
}
