use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{letter_token, Kind};
use crate::error::{Error, Result};

/// The jet variable `z_{row,col}^{(jet)}`: coefficient of `s^jet` in entry (row, col).
///
/// Rows are letter positions of the alphabet; the derived order is a storage
/// order, see [`JetVariable::cmp_blind`] for the order on leading terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVariable {
    kind: Kind,
    col: u8,
    row: u8,
    jet: u8,
}

impl JetVariable {
    pub fn new(kind: Kind, row: u8, col: u8, jet: u8) -> Self {
        JetVariable { kind, col, row, jet }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn row(&self) -> u8 {
        self.row
    }

    pub fn col(&self) -> u8 {
        self.col
    }

    pub fn jet(&self) -> u8 {
        self.jet
    }

    /// Compare by (col, row) with the jet index invisible.
    pub fn cmp_blind(&self, other: &Self) -> Ordering {
        (self.col, self.row).cmp(&(other.col, other.row))
    }

    pub fn with_kind(&self, kind: Kind) -> Self {
        JetVariable { kind, ..*self }
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{}][{}]^({})", letter_token(self.kind, self.row), self.col, self.jet)
    }
}

/// A monomial: a sorted multiset of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<JetVariable>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_vars(mut vars: Vec<JetVariable>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[JetVariable] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Degree first, then lexicographic on (col,row) exponents starting from the
    /// largest variable; jets are ignored.
    pub fn cmp_blind(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a: Vec<(u8, u8)> = self.0.iter().map(|v| (v.col, v.row)).collect();
            let mut b: Vec<(u8, u8)> = other.0.iter().map(|v| (v.col, v.row)).collect();
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            a.cmp(&b)
        })
    }

    pub fn rename(&self, f: impl Fn(&JetVariable) -> JetVariable) -> Monomial {
        Monomial::from_vars(self.0.iter().map(f).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Coefficient ring of truncated series.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero_el() && !b.is_zero_el() {
            self.add_assign_ref(&a.mul_ref(b));
        }
    }
}

impl Ring for BigRational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

/// Sparse polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl JetPolynomial {
    pub fn one() -> Self {
        JetPolynomial::constant(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        JetPolynomial { terms }
    }

    pub fn var(v: JetVariable) -> Self {
        Self::term(Monomial(vec![v]), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = JetPolynomial::default();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn kinds(&self) -> Vec<Kind> {
        let mut ks: Vec<Kind> = self.terms.keys().flat_map(|m| m.0.iter().map(|v| v.kind)).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn evaluate(&self, point: &HashMap<JetVariable, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in &m.0 {
                let x = point.get(v).ok_or_else(|| Error::UnassignedVariable(v.to_string()))?;
                t *= x;
            }
            total += t;
        }
        Ok(total)
    }

    /// The terms whose monomials are maximal for the jet-blind order.
    pub fn leading_part(&self) -> Result<JetPolynomial> {
        let top = self
            .terms
            .keys()
            .max_by(|a, b| a.cmp_blind(b))
            .ok_or(Error::ZeroPolynomial)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.cmp_blind(top) == Ordering::Equal)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(JetPolynomial { terms })
    }

    pub fn rename(&self, f: impl Fn(&JetVariable) -> JetVariable) -> JetPolynomial {
        let mut out = JetPolynomial::default();
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }
}

impl Ring for JetPolynomial {
    fn zero_el() -> Self {
        JetPolynomial::default()
    }
    fn one_el() -> Self {
        JetPolynomial::one()
    }
    fn is_zero_el(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        JetPolynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
    fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return JetPolynomial::default();
        }
        JetPolynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", crate::rational::to_text(c), m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl std::ops::$tr<&JetPolynomial> for &JetPolynomial {
            type Output = JetPolynomial;
            fn $f(self, rhs: &JetPolynomial) -> JetPolynomial {
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &JetPolynomial, b: &JetPolynomial| {
    let mut r = a.clone();
    r.add_assign_ref(b);
    r
});
binop!(Sub, sub, |a: &JetPolynomial, b: &JetPolynomial| {
    let mut r = a.clone();
    r.sub_assign_ref(b);
    r
});
binop!(Mul, mul, |a: &JetPolynomial, b: &JetPolynomial| a.mul_ref(b));

impl std::ops::Neg for &JetPolynomial {
    type Output = JetPolynomial;
    fn neg(self) -> JetPolynomial {
        self.scale(&-BigRational::one())
    }
}
