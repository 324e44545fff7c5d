use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MinorCombination;
use crate::combinatorics::{combinations, compare_sets, is_allowed, remark_position, Alphabet, Kind, RowSet};
use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumTerm {
    pub l: usize,
    /// `None` when `l` or `lb` already lies in the base (a repeated row).
    pub rows: Option<RowSet>,
}

/// `sum_l m_{I u {l, lb}}(s) = 0` on symplectic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSum {
    pub alphabet: Alphabet,
    pub base: RowSet,
    pub terms: Vec<SumTerm>,
}

impl SymplecticSum {
    pub fn combination(&self) -> MinorCombination {
        self.terms.iter().filter_map(|t| t.rows.clone()).map(|r| (r, BigRational::one())).collect()
    }
}

fn with_pair(base: &RowSet, l: usize) -> Option<RowSet> {
    let (x, y) = ((2 * l - 1) as u8, (2 * l) as u8);
    if base.contains(x) || base.contains(y) {
        return None;
    }
    let mut v = base.letters().to_vec();
    v.push(x);
    v.push(y);
    v.sort_unstable();
    Some(RowSet::from_sorted(Kind::C, v))
}

pub fn symplectic_sum_relation(alphabet: &Alphabet, base: &RowSet) -> Result<SymplecticSum> {
    if alphabet.kind() != Kind::C || base.kind() != Kind::C {
        return Err(Error::Unsupported("sum relations live in type C".into()));
    }
    let n = alphabet.n();
    if base.len() + 2 > n {
        return Err(Error::InvalidRowSet(format!("base {base} has more than n-2 = {} letters", n as i64 - 2)));
    }
    if base.letters().iter().any(|&x| x as usize > alphabet.size()) {
        return Err(Error::InvalidRowSet(format!("{base} outside {alphabet}")));
    }
    let terms = (1..=n).map(|l| SumTerm { l, rows: with_pair(base, l) }).collect();
    Ok(SymplecticSum { alphabet: *alphabet, base: base.clone(), terms })
}

/// Rows: `s`-subsets, columns: `(s+1)`-subsets of a `(2s+1)`-set; entry 1 on inclusion.
pub fn inclusion_matrix(s: usize) -> Vec<Vec<BigInt>> {
    let rows = combinations(2 * s + 1, s);
    let cols = combinations(2 * s + 1, s + 1);
    rows.iter()
        .map(|e| {
            cols.iter()
                .map(|f| if e.iter().all(|x| f.contains(x)) { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn inclusion_determinant(s: usize) -> BigInt {
    determinant(&inclusion_matrix(s))
}

/// One elimination step: `m_J` as a combination of strictly larger minors.
fn straighten_step(alphabet: &Alphabet, j: &RowSet) -> Result<MinorCombination> {
    let n = alphabet.n();
    let b = remark_position(j).ok_or_else(|| Error::NotForbidden(j.to_string()))?;
    let has = |p: usize, barred: bool| j.contains((2 * p - usize::from(!barred)) as u8);
    let a_set: Vec<usize> = (1..b).filter(|&p| has(p, false) && has(p, true)).collect();
    let c_set: Vec<usize> = (1..b).filter(|&p| !has(p, false) && !has(p, true)).collect();
    let s = a_set.len();
    let mut d: Vec<usize> = a_set.iter().chain(&c_set).copied().collect();
    d.push(b);
    d.sort_unstable();
    let removed: Vec<usize> = a_set.iter().copied().chain([b]).collect();
    let rest: Vec<u8> = j
        .letters()
        .iter()
        .filter(|&&x| !removed.contains(&(x as usize).div_ceil(2)))
        .copied()
        .collect();
    let rest = RowSet::from_sorted(Kind::C, rest);

    let subsets_e = combinations(2 * s + 1, s);
    let subsets_f = combinations(2 * s + 1, s + 1);
    let base_of = |e: &[usize]| {
        let mut v = rest.letters().to_vec();
        for &q in e {
            v.push((2 * d[q] - 1) as u8);
            v.push((2 * d[q]) as u8);
        }
        v.sort_unstable();
        RowSet::from_sorted(Kind::C, v)
    };
    // right-hand side of row E: minus the terms with l > b
    let rhs: Vec<MinorCombination> = subsets_e
        .iter()
        .map(|e| {
            let base = base_of(e);
            let mut r = MinorCombination::new();
            for l in b + 1..=n {
                if let Some(k) = with_pair(&base, l) {
                    *r.entry(k).or_insert_with(BigRational::zero) -= BigRational::one();
                }
            }
            r
        })
        .collect();
    let m: Vec<Vec<BigRational>> = inclusion_matrix(s)
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let inv = inverse(&m).ok_or(Error::SingularSystem(s))?;
    let target: Vec<usize> = a_set.iter().chain([&b]).map(|p| d.iter().position(|x| x == p).expect("in D")).collect();
    let mut target = target;
    target.sort_unstable();
    let f0 = subsets_f.iter().position(|f| *f == target).expect("target subset");
    let mut out = MinorCombination::new();
    for (e, r) in rhs.iter().enumerate() {
        let w = &inv[f0][e];
        if w.is_zero() {
            continue;
        }
        for (k, c) in r {
            let v = out.entry(k.clone()).or_insert_with(BigRational::zero);
            *v += w * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

const FORBIDDEN_GUARD: usize = 100_000;

/// Writes a forbidden minor as a combination of allowed minors, all larger than `J`.
pub fn straighten_forbidden(alphabet: &Alphabet, j: &RowSet) -> Result<MinorCombination> {
    if alphabet.kind() != Kind::C || j.kind() != Kind::C {
        return Err(Error::Unsupported("straightening of forbidden minors is a type C operation".into()));
    }
    alphabet.set(j.letters())?;
    if is_allowed(j) {
        return Err(Error::NotForbidden(j.to_string()));
    }
    let mut work = MinorCombination::new();
    work.insert(j.clone(), BigRational::one());
    for _ in 0..FORBIDDEN_GUARD {
        let next = work.keys().filter(|k| !is_allowed(k)).min_by(|a, b| compare_sets(a, b)).cloned();
        let Some(k) = next else {
            return Ok(work);
        };
        let c = work.remove(&k).expect("present");
        for (t, v) in straighten_step(alphabet, &k)? {
            let e = work.entry(t.clone()).or_insert_with(BigRational::zero);
            *e += &c * v;
            if e.is_zero() {
                work.remove(&t);
            }
        }
    }
    Err(Error::NonTermination(FORBIDDEN_GUARD))
}
