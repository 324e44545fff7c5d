//! Generic jet matrices, minor series and their diagonal leading parts.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;

use crate::combinatorics::{Alphabet, Kind, RowSet};
use crate::error::{Error, Result};
use crate::jetpoly::{JetPolynomial, JetVariable, Monomial, Ring, Series, TruncatedSeries};
use crate::rational::int;

/// Entry `(u, v)` is the series with coefficient `z_{uv}^{(k)}` at `s^k`.
///
/// Only the first `alphabet.max_set_len()` columns enter minors; in type C these are
/// the unbarred columns, a Lagrangian block for the symplectic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericJetMatrix {
    alphabet: Alphabet,
    trunc: usize,
}

impl GenericJetMatrix {
    pub fn new(alphabet: Alphabet, trunc: usize) -> Self {
        GenericJetMatrix { alphabet, trunc }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn columns(&self) -> usize {
        self.alphabet.max_set_len()
    }

    pub fn variable(&self, row: u8, col: u8, jet: u8) -> JetVariable {
        JetVariable::new(self.alphabet.kind(), row, col, jet)
    }

    pub fn entry(&self, row: u8, col: usize) -> TruncatedSeries {
        let kind = self.alphabet.kind();
        TruncatedSeries::generic_entry(|k| JetVariable::new(kind, row, col as u8, k), self.trunc)
    }

    pub fn table(&self) -> MinorTable<JetPolynomial> {
        let m = *self;
        MinorTable::new(Box::new(move |r, c| m.entry(r, c)), self.trunc)
    }
}

type EntryFn<C> = Box<dyn Fn(u8, usize) -> Series<C> + Send + Sync>;

/// Memoized determinants of `rows x columns 1..|rows|`, expanded along the last column.
pub struct MinorTable<C: Ring> {
    entry: EntryFn<C>,
    trunc: usize,
    memo: HashMap<Vec<u8>, Series<C>>,
}

impl<C: Ring> MinorTable<C> {
    pub fn new(entry: EntryFn<C>, trunc: usize) -> Self {
        MinorTable { entry, trunc, memo: HashMap::new() }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Determinant with rows in the given order; repeated rows give zero.
    pub fn get(&mut self, rows: &[u8]) -> Series<C> {
        if rows.is_empty() {
            return Series::one(self.trunc);
        }
        if let Some(s) = self.memo.get(rows) {
            return s.clone();
        }
        let k = rows.len();
        let mut acc = Series::zero(self.trunc);
        let distinct = rows.iter().collect::<HashSet<_>>().len() == k;
        if distinct {
            for p in 0..k {
                let mut sub = rows.to_vec();
                sub.remove(p);
                let minor = self.get(&sub);
                let term = (self.entry)(rows[p], k).mul(&minor, self.trunc);
                let sign = if (p + k - 1).is_multiple_of(2) { 1 } else { -1 };
                acc.add_scaled(&term, &int(sign));
            }
        }
        self.memo.insert(rows.to_vec(), acc.clone());
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinorSeries {
    pub index: RowSet,
    pub series: TruncatedSeries,
}

fn check_fits(i: &RowSet, m: &GenericJetMatrix) -> Result<()> {
    if i.kind() != m.alphabet.kind() {
        return Err(Error::AlphabetMismatch(i.kind().to_string(), m.alphabet.kind().to_string()));
    }
    if i.len() > m.columns() {
        return Err(Error::TooManyRows { size: i.len(), cols: m.columns() });
    }
    if i.letters().iter().any(|&x| x as usize > m.alphabet.size()) {
        return Err(Error::InvalidRowSet(format!("{i} outside {}", m.alphabet)));
    }
    Ok(())
}

pub fn minor_series(i: &RowSet, m: &GenericJetMatrix) -> Result<MinorSeries> {
    check_fits(i, m)?;
    let series = m.table().get(i.letters());
    Ok(MinorSeries { index: i.clone(), series })
}

/// `d_I(s) = z_{i_1 1}(s) ... z_{i_k k}(s)`.
pub fn leading_series(i: &RowSet, m: &GenericJetMatrix) -> Result<TruncatedSeries> {
    check_fits(i, m)?;
    let mut acc = TruncatedSeries::one(m.trunc);
    for (p, &x) in i.letters().iter().enumerate() {
        acc = acc.mul(&m.entry(x, p + 1), m.trunc);
    }
    Ok(acc)
}

/// The part of `p` in the top class of the order with jets invisible.
pub fn leading_term(p: &JetPolynomial) -> Result<JetPolynomial> {
    p.leading_part()
}

/// `d_I^{(l)}`: sum over jet distributions of the diagonal monomial.
pub fn leading_coefficient(i: &RowSet, l: usize) -> JetPolynomial {
    let letters = i.letters();
    let mut out = JetPolynomial::default();
    let mut parts = vec![0usize; letters.len()];
    fn rec(p: usize, left: usize, parts: &mut Vec<usize>, letters: &[u8], kind: Kind, out: &mut JetPolynomial) {
        if p + 1 == parts.len() {
            parts[p] = left;
            let vars = letters
                .iter()
                .enumerate()
                .map(|(q, &x)| JetVariable::new(kind, x, (q + 1) as u8, parts[q] as u8))
                .collect();
            out.add_term(Monomial::from_vars(vars), BigRational::from_integer(1.into()));
            return;
        }
        for a in 0..=left {
            parts[p] = a;
            rec(p + 1, left - a, parts, letters, kind, out);
        }
    }
    if letters.is_empty() {
        return if l == 0 { JetPolynomial::one() } else { out };
    }
    rec(0, l, &mut parts, letters, i.kind(), &mut out);
    out
}

/// Leading part of `prod m_I^{(l)}`: the product of the `d_I^{(l)}`.
pub fn product_leading_part(factors: &[(RowSet, usize)]) -> JetPolynomial {
    factors
        .iter()
        .fold(JetPolynomial::one(), |acc, (i, l)| acc.mul_ref(&leading_coefficient(i, *l)))
}

/// True iff the leading parts of the given products are pairwise distinct.
pub fn distinct_leading_check(products: &[Vec<(RowSet, usize)>]) -> bool {
    let mut seen = HashSet::new();
    products.iter().all(|p| seen.insert(product_leading_part(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::comparable;

    fn z(r: u8, c: u8, k: u8) -> JetPolynomial {
        JetPolynomial::var(JetVariable::new(Kind::A, r, c, k))
    }

    #[test]
    fn one_by_one_and_two_by_two() {
        let a = Alphabet::type_a(3).unwrap();
        let m = GenericJetMatrix::new(a, 1);
        let s = minor_series(&a.parse_set("2").unwrap(), &m).unwrap();
        assert_eq!(s.series, m.entry(2, 1));
        let s = minor_series(&a.parse_set("1,2").unwrap(), &m).unwrap().series;
        let c0 = &(&z(1, 1, 0) * &z(2, 2, 0)) - &(&z(1, 2, 0) * &z(2, 1, 0));
        assert_eq!(s.coeffs()[0], c0);
        let c1 = &(&(&z(1, 1, 0) * &z(2, 2, 1)) + &(&z(1, 1, 1) * &z(2, 2, 0)))
            - &(&(&z(1, 2, 0) * &z(2, 1, 1)) + &(&z(1, 2, 1) * &z(2, 1, 0)));
        assert_eq!(s.coeffs()[1], c1);
        assert!(minor_series(&RowSet::from_sorted(Kind::A, vec![1, 2, 3]), &m).is_err());
    }

    #[test]
    fn repeated_rows_vanish() {
        let m = GenericJetMatrix::new(Alphabet::type_a(3).unwrap(), 2);
        assert!(m.table().get(&[2, 2]).is_zero());
    }

    #[test]
    fn diagonal_is_leading() {
        let a = Alphabet::type_a(4).unwrap();
        let m = GenericJetMatrix::new(a, 3);
        let d = leading_series(&a.parse_set("1,3").unwrap(), &m).unwrap();
        assert_eq!(d, m.entry(1, 1).mul(&m.entry(3, 2), 3));
        for i in a.proper_sets() {
            let ms = minor_series(&i, &m).unwrap().series;
            let ds = leading_series(&i, &m).unwrap();
            for k in 0..=3 {
                assert_eq!(leading_term(&ms.coeffs()[k]).unwrap(), ds.coeffs()[k], "{i} {k}");
                assert_eq!(leading_coefficient(&i, k), ds.coeffs()[k]);
            }
        }
    }

    #[test]
    fn comparable_pairs_have_distinct_leads() {
        let a = Alphabet::type_a(3).unwrap();
        let sets = a.proper_sets();
        let mut prods = Vec::new();
        for (x, i) in sets.iter().enumerate() {
            for j in &sets[x..] {
                if comparable(i, j) {
                    prods.push(vec![(i.clone(), 0), (j.clone(), 0)]);
                }
            }
        }
        assert!(distinct_leading_check(&prods));
        let dup = vec![prods[0].clone(), prods[0].clone()];
        assert!(!distinct_leading_check(&dup));
    }
}
