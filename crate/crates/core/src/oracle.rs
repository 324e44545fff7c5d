//! Random exact points of the jet groups `SL_n[[s]]/(s^{D+1})` and
//! `Sp_2n[[s]]/(s^{D+1})`, and evaluation of minors at them.
//!
//! Matrices are indexed by letter positions, so in type C row and column
//! `2p-1` belong to `p` and `2p` to `pb`. The form is
//! `omega(x, y) = sum_l x_l y_lb - x_lb y_l`.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Alphabet, Kind, RowSet};
use crate::error::{Error, Result};
use crate::jetpoly::{JetVariable, NumericSeries, Ring, Series};
use crate::minors::MinorTable;
use crate::rational::{frac, from_text, int, to_text};

pub type SeriesMatrix = Vec<Vec<NumericSeries>>;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupJetPoint {
    alphabet: Alphabet,
    trunc: usize,
    seed: Option<u64>,
    matrix: Arc<SeriesMatrix>,
}

fn identity(size: usize, trunc: usize) -> SeriesMatrix {
    (0..size)
        .map(|i| (0..size).map(|j| if i == j { Series::one(trunc) } else { Series::zero(trunc) }).collect())
        .collect()
}

fn mat_mul(a: &SeriesMatrix, b: &SeriesMatrix, trunc: usize) -> SeriesMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Series::zero(trunc);
                    for (k, aik) in a[i].iter().enumerate() {
                        if !aik.is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&aik.mul(&b[k][j], trunc));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &SeriesMatrix) -> SeriesMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

/// Index (0-based) of the partner letter: `p <-> pb`.
fn partner(i: usize) -> usize {
    i ^ 1
}

pub fn omega(n: usize, trunc: usize) -> SeriesMatrix {
    let mut m: SeriesMatrix = (0..2 * n).map(|_| (0..2 * n).map(|_| Series::zero(trunc)).collect()).collect();
    for l in 0..n {
        m[2 * l][2 * l + 1] = Series::one(trunc);
        m[2 * l + 1][2 * l] = Series::one(trunc).scale(&int(-1));
    }
    m
}

fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    let num = loop {
        let v: i64 = rng.gen_range(-3..=3);
        if v != 0 || !nonzero {
            break v;
        }
    };
    frac(num, rng.gen_range(1..=3))
}

fn random_poly(rng: &mut ChaCha8Rng, trunc: usize) -> NumericSeries {
    Series::new((0..=trunc).map(|_| small_rational(rng, false)).collect(), trunc)
}

fn random_unit(rng: &mut ChaCha8Rng, trunc: usize) -> NumericSeries {
    let mut c: Vec<BigRational> = vec![small_rational(rng, true)];
    c.extend((1..=trunc).map(|_| small_rational(rng, false)));
    Series::new(c, trunc)
}

impl GroupJetPoint {
    /// Wraps a matrix after checking the group condition modulo `s^{trunc+1}`.
    pub fn from_matrix(alphabet: Alphabet, trunc: usize, seed: Option<u64>, matrix: SeriesMatrix) -> Result<Self> {
        let size = alphabet.size();
        if matrix.len() != size || matrix.iter().any(|r| r.len() != size) {
            return Err(Error::Internal(format!("matrix must be {size}x{size}")));
        }
        let matrix: SeriesMatrix = matrix.into_iter().map(|r| r.into_iter().map(|e| e.truncate(trunc)).collect()).collect();
        if matrix.iter().flatten().any(|e| e.trunc() != Some(trunc)) {
            return Err(Error::Internal("entries are known to lower precision than the truncation".into()));
        }
        let p = GroupJetPoint { alphabet, trunc, seed, matrix: Arc::new(matrix) };
        if !p.satisfies_group_condition() {
            return Err(Error::Internal(format!("matrix is not a point of the {} jet group", alphabet)));
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }

    /// `det = 1` in type A, `M^T Omega M = Omega` and `M Omega M^T = Omega` in type C.
    pub fn satisfies_group_condition(&self) -> bool {
        let d = self.trunc;
        match self.alphabet.kind() {
            Kind::A => {
                let m = self.matrix.clone();
                let mut t = MinorTable::new(Box::new(move |r, c| m[r as usize - 1][c - 1].clone()), d);
                let rows: Vec<u8> = (1..=self.alphabet.size() as u8).collect();
                t.get(&rows) == Series::one(d)
            }
            Kind::C => {
                let om = omega(self.alphabet.n(), d);
                let mt = transpose(&self.matrix);
                mat_mul(&mat_mul(&mt, &om, d), &self.matrix, d) == om
                    && mat_mul(&mat_mul(&self.matrix, &om, d), &mt, d) == om
            }
        }
    }

    fn column_index(&self, c: usize) -> usize {
        match self.alphabet.kind() {
            Kind::A => c,
            Kind::C => 2 * c - 1,
        }
    }

    /// Memoized numeric minors on the columns used by minors.
    pub fn table(&self) -> MinorTable<BigRational> {
        let m = self.matrix.clone();
        let kind = self.alphabet.kind();
        MinorTable::new(
            Box::new(move |r, c| {
                let col = if kind == Kind::A { c } else { 2 * c - 1 };
                m[r as usize - 1][col - 1].clone()
            }),
            self.trunc,
        )
    }

    pub fn minor(&self, i: &RowSet) -> NumericSeries {
        self.table().get(i.letters())
    }

    /// Values of all jet variables of the minor columns.
    pub fn jet_assignment(&self) -> HashMap<JetVariable, BigRational> {
        let kind = self.alphabet.kind();
        let mut out = HashMap::new();
        for r in 1..=self.alphabet.size() {
            for c in 1..=self.alphabet.max_set_len() {
                let e = &self.matrix[r - 1][self.column_index(c) - 1];
                for (k, v) in e.coeffs().iter().enumerate() {
                    out.insert(JetVariable::new(kind, r as u8, c as u8, k as u8), v.clone());
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let matrix: Vec<Vec<Vec<String>>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.coeffs().iter().map(to_text).collect()).collect())
            .collect();
        serde_json::to_value(PointJson {
            kind: self.alphabet.kind(),
            n: self.alphabet.n(),
            trunc: self.trunc,
            seed: self.seed,
            matrix,
        })
        .expect("point serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: PointJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse { position: 0, message: e.to_string() })?;
        let alphabet = Alphabet::new(p.kind, p.n)?;
        let matrix = p
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(Series::new(e.iter().map(|t| from_text(t)).collect::<Result<Vec<_>>>()?, p.trunc)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupJetPoint::from_matrix(alphabet, p.trunc, p.seed, matrix)
    }
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    #[serde(rename = "type")]
    kind: Kind,
    n: usize,
    trunc: usize,
    seed: Option<u64>,
    matrix: Vec<Vec<Vec<String>>>,
}

/// `N * H * M` with `N` lower and `M` upper unipotent and `H = diag(a_1, ..., a_{n-1}, (a_1...a_{n-1})^{-1})`.
pub fn sl_point_from_parts(
    n: usize,
    trunc: usize,
    lower: &SeriesMatrix,
    diag: &[NumericSeries],
    upper: &SeriesMatrix,
) -> Result<GroupJetPoint> {
    let alphabet = Alphabet::type_a(n)?;
    if diag.len() != n - 1 {
        return Err(Error::Internal(format!("need {} diagonal entries", n - 1)));
    }
    let mut h = identity(n, trunc);
    let mut prod = Series::one(trunc);
    for (i, a) in diag.iter().enumerate() {
        h[i][i] = a.truncate(trunc);
        prod = prod.mul(a, trunc);
    }
    h[n - 1][n - 1] = prod.inverse().ok_or_else(|| Error::Internal("diagonal entry is not a unit".into()))?;
    let m = mat_mul(&mat_mul(lower, &h, trunc), upper, trunc);
    GroupJetPoint::from_matrix(alphabet, trunc, None, m)
}

pub fn random_sl_point(n: usize, trunc: usize, seed: u64) -> GroupJetPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = identity(n, trunc);
    let mut upper = identity(n, trunc);
    for i in 0..n {
        for j in 0..i {
            lower[i][j] = random_poly(&mut rng, trunc);
            upper[j][i] = random_poly(&mut rng, trunc);
        }
    }
    let diag: Vec<NumericSeries> = (0..n - 1).map(|_| random_unit(&mut rng, trunc)).collect();
    let mut p = sl_point_from_parts(n, trunc, &lower, &diag, &upper).expect("construction is total");
    p.seed = Some(seed);
    p
}

/// A root generator `X` of `sp_2n` as sparse `(row, col, value)` entries, 0-based.
pub type RootGenerator = Vec<(usize, usize, i64)>;

/// All root generators `E_ab + sigma E_{b'a'}` (or `E_{a a'}`) with
/// `X^T Omega + Omega X = 0` and `X^2 = 0`; there are `2n^2` of them.
pub fn root_generators(n: usize) -> Vec<RootGenerator> {
    let size = 2 * n;
    let om = |i: usize, j: usize| -> i64 {
        if partner(i) != j {
            0
        } else if i.is_multiple_of(2) {
            1
        } else {
            -1
        }
    };
    let is_symplectic = |x: &RootGenerator| {
        let mut dense = vec![vec![0i64; size]; size];
        for &(i, j, v) in x {
            dense[i][j] += v;
        }
        (0..size).all(|i| {
            (0..size).all(|j| {
                let s: i64 = (0..size).map(|k| dense[k][i] * om(k, j) + om(i, k) * dense[k][j]).sum();
                s == 0
            })
        })
    };
    let mut out: Vec<RootGenerator> = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a == b {
                continue;
            }
            let (bp, ap) = (partner(b), partner(a));
            let mut candidates: Vec<RootGenerator> = vec![vec![(a, b, 1)]];
            if (bp, ap) != (a, b) {
                candidates.push(vec![(a, b, 1), (bp, ap, 1)]);
                candidates.push(vec![(a, b, 1), (bp, ap, -1)]);
            }
            for mut x in candidates {
                x.sort_unstable();
                if x[0].2 < 0 {
                    x.iter_mut().for_each(|e| e.2 = -e.2);
                }
                if is_symplectic(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpFactor {
    /// `I + c(s) X` for the root generator with this index.
    Root { index: usize, coeff: NumericSeries },
    /// `a(s)` at `l`, `a(s)^{-1}` at `lb` (1-based `l`).
    Torus { l: usize, a: NumericSeries },
}

pub fn sp_point_from_factors(n: usize, trunc: usize, factors: &[SpFactor]) -> Result<GroupJetPoint> {
    let alphabet = Alphabet::type_c(n)?;
    let gens = root_generators(n);
    let mut m = identity(2 * n, trunc);
    for f in factors {
        let mut g = identity(2 * n, trunc);
        match f {
            SpFactor::Root { index, coeff } => {
                let x = gens.get(*index).ok_or_else(|| Error::Internal(format!("no root generator {index}")))?;
                for &(i, j, v) in x {
                    g[i][j] = g[i][j].add(&coeff.scale(&int(v)).truncate(trunc));
                }
            }
            SpFactor::Torus { l, a } => {
                if *l == 0 || *l > n {
                    return Err(Error::Internal(format!("torus index {l} outside 1..{n}")));
                }
                let inv = a.inverse().ok_or_else(|| Error::Internal("torus entry is not a unit".into()))?;
                g[2 * l - 2][2 * l - 2] = a.truncate(trunc);
                g[2 * l - 1][2 * l - 1] = inv.truncate(trunc);
            }
        }
        m = mat_mul(&m, &g, trunc);
    }
    GroupJetPoint::from_matrix(alphabet, trunc, None, m)
}

pub fn random_sp_factors(n: usize, trunc: usize, seed: u64) -> Vec<SpFactor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots = 2 * n * n;
    let count = rng.gen_range(10..=30);
    (0..count)
        .map(|_| {
            if rng.gen_range(0..4) == 0 {
                SpFactor::Torus { l: rng.gen_range(1..=n), a: random_unit(&mut rng, trunc) }
            } else {
                SpFactor::Root { index: rng.gen_range(0..roots), coeff: random_poly(&mut rng, trunc) }
            }
        })
        .collect()
}

pub fn random_sp_point(n: usize, trunc: usize, seed: u64) -> GroupJetPoint {
    let factors = random_sp_factors(n, trunc, seed);
    let mut p = sp_point_from_factors(n, trunc, &factors).expect("construction is total");
    p.seed = Some(seed);
    p
}

pub fn random_point(alphabet: Alphabet, trunc: usize, seed: u64) -> GroupJetPoint {
    match alphabet.kind() {
        Kind::A => random_sl_point(alphabet.n(), trunc, seed),
        Kind::C => random_sp_point(alphabet.n(), trunc, seed),
    }
}

/// Deterministic batch of points, seeds `seed, seed+1, ...`.
pub fn sample_points(alphabet: Alphabet, trunc: usize, seed: u64, count: usize) -> Vec<GroupJetPoint> {
    use rayon::prelude::*;
    (0..count as u64)
        .into_par_iter()
        .map(|i| random_point(alphabet, trunc, seed.wrapping_add(i)))
        .collect()
}

/// `prod m_I^{(l)}` at the point.
pub fn evaluate_monomial(point: &GroupJetPoint, factors: &[(RowSet, usize)]) -> Result<BigRational> {
    let mut t = point.table();
    evaluate_with(&mut t, point.trunc, factors)
}

pub(crate) fn evaluate_with(
    table: &mut MinorTable<BigRational>,
    trunc: usize,
    factors: &[(RowSet, usize)],
) -> Result<BigRational> {
    let mut acc = int(1);
    for (i, l) in factors {
        if *l > trunc {
            return Err(Error::JetBeyondTruncation { jet: *l, trunc });
        }
        let m = table.get(i.letters());
        acc *= m.coeff(*l).cloned().unwrap_or_else(BigRational::zero_el);
        if acc.is_zero_el() {
            break;
        }
    }
    Ok(acc)
}

/// `prod m_I(s)` at the point, as a series.
pub fn evaluate_product_series(point: &GroupJetPoint, sets: &[RowSet]) -> NumericSeries {
    let mut t = point.table();
    sets.iter()
        .fold(Series::one(point.trunc), |acc, i| acc.mul(&t.get(i.letters()), point.trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{minor_series, GenericJetMatrix};

    #[test]
    fn trivial_points() {
        let n = 2;
        let id = identity(n, 3);
        let p = sl_point_from_parts(n, 3, &id, &[Series::one(3)], &id).unwrap();
        assert_eq!(p.matrix().as_slice(), identity(n, 3).as_slice());
        let a = Series::new(vec![int(1), int(1)], 3);
        let p = sl_point_from_parts(n, 3, &id, std::slice::from_ref(&a), &id).unwrap();
        assert_eq!(p.matrix()[0][0], a);
        assert_eq!(p.matrix()[1][1].coeffs(), &[int(1), int(-1), int(1), int(-1)]);
        let one = Alphabet::type_a(2).unwrap().parse_set("1").unwrap();
        assert_eq!(evaluate_monomial(&p, &[(one.clone(), 1)]).unwrap(), int(1));
        assert!(evaluate_monomial(&p, &[(one, 4)]).is_err());
        let e = sp_point_from_factors(2, 3, &[]).unwrap();
        assert_eq!(e.matrix().as_slice(), identity(4, 3).as_slice());
        let c1 = Alphabet::type_c(2).unwrap().parse_set("1").unwrap();
        assert_eq!(evaluate_monomial(&e, &[(c1.clone(), 0)]).unwrap(), int(1));
        assert_eq!(evaluate_monomial(&e, &[(c1, 1)]).unwrap(), int(0));
    }

    #[test]
    fn root_count() {
        for n in 1..=4 {
            assert_eq!(root_generators(n).len(), 2 * n * n);
        }
    }

    #[test]
    fn random_points_are_group_points() {
        for seed in 0..4 {
            assert!(random_sl_point(3, 4, seed).satisfies_group_condition());
            assert!(random_sp_point(2, 4, seed).satisfies_group_condition());
            assert!(random_sp_point(1, 3, seed).satisfies_group_condition());
        }
        let p = random_sl_point(3, 2, 5);
        assert_eq!(p, random_sl_point(3, 2, 5));
        assert_ne!(p, random_sl_point(3, 2, 6));
    }

    #[test]
    fn symplectic_relations_of_columns() {
        // z_{lu} z_{lb v} - z_{lb u} z_{l v} summed over l vanishes for any two columns
        let p = random_sp_point(3, 4, 11);
        let m = p.matrix();
        for u in 0..6 {
            for v in 0..6 {
                let mut acc = Series::zero(4);
                for l in 0..3 {
                    acc = acc.add(&m[2 * l][u].mul(&m[2 * l + 1][v], 4));
                    acc = acc.sub(&m[2 * l + 1][u].mul(&m[2 * l][v], 4));
                }
                let expect = if partner(u) == v { if u % 2 == 0 { 1 } else { -1 } } else { 0 };
                assert_eq!(acc, Series::one(4).scale(&int(expect)), "{u} {v}");
            }
        }
    }

    #[test]
    fn evaluation_commutes_with_minors() {
        for alphabet in [Alphabet::type_a(3).unwrap(), Alphabet::type_c(2).unwrap()] {
            let p = random_point(alphabet, 3, 3);
            let gm = GenericJetMatrix::new(alphabet, 3);
            let assign = p.jet_assignment();
            for i in alphabet.proper_sets() {
                let sym = minor_series(&i, &gm).unwrap().series.evaluate(&assign).unwrap();
                assert_eq!(sym, p.minor(&i), "{i}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = random_sp_point(2, 2, 9);
        let q = GroupJetPoint::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_json().to_string(), random_sp_point(2, 2, 9).to_json().to_string());
    }
}
