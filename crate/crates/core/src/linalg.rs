//! Exact rank, determinant and inverse.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type SparseRow = Vec<(usize, BigInt)>;

fn primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

/// `a * row - b * pivot` where `a`, `b` are the leading entries of pivot and row.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Rank of a sparse integer matrix by fraction-free elimination with content removal.
pub fn rank(rows: Vec<SparseRow>) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut r in rows {
        r.retain(|(_, v)| !v.is_zero());
        r.sort_by_key(|x| x.0);
        while !r.is_empty() {
            let lead = r[0].0;
            match pivots.get(&lead) {
                Some(p) => {
                    r = eliminate(&r, p);
                    if !r.is_empty() {
                        primitive(&mut r);
                    }
                }
                None => {
                    primitive(&mut r);
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Clears denominators of a rational sparse row.
pub fn integer_row(row: &BTreeMap<usize, BigRational>) -> SparseRow {
    let l = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(&c, v)| (c, v.numer() * (&l / v.denom())))
        .collect()
}

pub fn rank_rational(rows: &[BTreeMap<usize, BigRational>]) -> usize {
    rank(rows.iter().map(integer_row).collect())
}

/// Bareiss determinant of a square integer matrix.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Gauss-Jordan inverse, `None` if singular.
pub fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].recip();
        for j in 0..n {
            a[c][j] *= &f;
            inv[c][j] *= &f;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let g = a[r][c].clone();
                for j in 0..n {
                    let (x, y) = (&a[c][j] * &g, &inv[c][j] * &g);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn determinants() {
        let m = vec![vec![bi(2), bi(0), bi(1)], vec![bi(1), bi(3), bi(2)], vec![bi(1), bi(1), bi(2)]];
        assert_eq!(determinant(&m), bi(6));
        let s = vec![vec![bi(0), bi(1)], vec![bi(1), bi(0)]];
        assert_eq!(determinant(&s), bi(-1));
        let z = vec![vec![bi(1), bi(2)], vec![bi(2), bi(4)]];
        assert_eq!(determinant(&z), bi(0));
    }

    #[test]
    fn ranks() {
        let rows = vec![
            vec![(0, bi(1)), (1, bi(2))],
            vec![(0, bi(2)), (1, bi(4))],
            vec![(1, bi(1)), (5, bi(-3))],
            vec![(0, bi(1)), (1, bi(3)), (5, bi(-3))],
        ];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(vec![]), 0);
        let mut r = BTreeMap::new();
        r.insert(0, frac(1, 2));
        r.insert(3, frac(1, 3));
        assert_eq!(integer_row(&r), vec![(0, bi(3)), (3, bi(2))]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let i = inverse(&m).unwrap();
        assert_eq!(i, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(inverse(&[vec![int(1), int(1)], vec![int(1), int(1)]]).is_none());
    }
}
