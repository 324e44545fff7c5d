//! Truncated q-series and the graded characters of Weyl modules.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{allowed_sets, compare_sets, k_value, Alphabet, Kind, RowSet};
use crate::error::{Error, Result};

/// Integer power series in `q` known up to `q^qmax`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QSeries {
    coeffs: Vec<i64>,
}

impl QSeries {
    pub fn new(mut coeffs: Vec<i64>, qmax: usize) -> Self {
        coeffs.resize(qmax + 1, 0);
        QSeries { coeffs }
    }

    pub fn zero(qmax: usize) -> Self {
        QSeries::new(Vec::new(), qmax)
    }

    pub fn one(qmax: usize) -> Self {
        QSeries::new(vec![1], qmax)
    }

    pub fn qmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let qmax = self.qmax().min(other.qmax());
        let mut out = vec![0i64; qmax + 1];
        for (a, &x) in self.coeffs.iter().enumerate().take(qmax + 1) {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate().take(qmax + 1 - a) {
                out[a + b] = out[a + b].checked_add(x.checked_mul(y).expect("q-series overflow")).expect("q-series overflow");
            }
        }
        QSeries { coeffs: out }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let qmax = self.qmax().min(other.qmax());
        QSeries { coeffs: (0..=qmax).map(|d| self.coeffs[d] + other.coeffs[d]).collect() }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: usize) -> QSeries {
        let qmax = self.qmax();
        let mut out = vec![0i64; qmax + 1];
        if e <= qmax {
            out[e..].copy_from_slice(&self.coeffs[..=qmax - e]);
        }
        QSeries { coeffs: out }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Sum of all known coefficients (the value at `q = 1` of a polynomial inside the window).
    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// `1 / prod_{i=1}^{r} (1 - q^i)`.
pub fn pochhammer_inv(r: usize, qmax: usize) -> QSeries {
    let mut c = vec![0i64; qmax + 1];
    c[0] = 1;
    for i in 1..=r {
        for d in i..=qmax {
            c[d] += c[d - i];
        }
    }
    QSeries { coeffs: c }
}

/// `(q)_r = prod_{i=1}^{r} (1 - q^i)`.
pub fn pochhammer(r: usize, qmax: usize) -> QSeries {
    let mut c = vec![0i64; qmax + 1];
    c[0] = 1;
    for i in 1..=r {
        for d in (i..=qmax).rev() {
            c[d] -= c[d - i];
        }
    }
    QSeries { coeffs: c }
}

/// The linear order on row sets used in exponents and basis offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MinorOrder {
    /// Restriction of the order on products to single minors.
    #[default]
    Monomial,
    Reversed,
}

impl MinorOrder {
    pub fn cmp(&self, a: &RowSet, b: &RowSet) -> Ordering {
        match self {
            MinorOrder::Monomial => compare_sets(a, b),
            MinorOrder::Reversed => compare_sets(b, a),
        }
    }
}

/// Multiplicities `r_I`; zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVectorR {
    entries: BTreeMap<RowSet, u32>,
}

impl WeightVectorR {
    pub fn new(alphabet: &Alphabet, entries: impl IntoIterator<Item = (RowSet, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, r) in entries {
            if s.kind() != alphabet.kind() {
                return Err(Error::AlphabetMismatch(s.kind().to_string(), alphabet.kind().to_string()));
            }
            alphabet.set(s.letters())?;
            if r > 0 && !crate::combinatorics::is_allowed(&s) {
                return Err(Error::InvalidWeight(format!("{s} is forbidden")));
            }
            if r > 0 {
                *map.entry(s).or_insert(0) += r;
            }
        }
        Ok(WeightVectorR { entries: map })
    }

    /// Each factor of a product adds one to its multiplicity.
    pub fn from_product(alphabet: &Alphabet, factors: &[RowSet]) -> Result<Self> {
        Self::new(alphabet, factors.iter().map(|f| (f.clone(), 1)))
    }

    pub fn entries(&self) -> &BTreeMap<RowSet, u32> {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }

    /// `lambda_p = sum_{|I| = p} r_I`, for `p = 1..max_set_len`.
    pub fn shape(&self, alphabet: &Alphabet) -> Vec<u32> {
        let mut l = vec![0; alphabet.max_set_len()];
        for (s, r) in &self.entries {
            l[s.len() - 1] += r;
        }
        l
    }

    /// Torus weight in epsilon coordinates.
    pub fn weight(&self, alphabet: &Alphabet) -> Vec<i32> {
        let mut w = vec![0; alphabet.rank_coords()];
        for (s, r) in &self.entries {
            for (x, y) in w.iter_mut().zip(s.weight(alphabet.rank_coords())) {
                *x += y * *r as i32;
            }
        }
        w
    }

    /// `sum_{I < J} k(I,J) r_I r_J` for the given order.
    pub fn exponent(&self, order: MinorOrder) -> usize {
        let items: Vec<(&RowSet, u32)> = self.entries.iter().map(|(s, r)| (s, *r)).collect();
        let mut e = 0;
        for (i, ri) in &items {
            for (j, rj) in &items {
                if order.cmp(i, j) == Ordering::Less {
                    e += k_value(i, j) * (*ri as usize) * (*rj as usize);
                }
            }
        }
        e
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .flat_map(|(s, r)| std::iter::repeat_n(s.to_string(), *r as usize))
            .collect();
        parts.join("|")
    }
}

pub fn component_character_with(r: &WeightVectorR, qmax: usize, order: MinorOrder) -> QSeries {
    r.entries
        .values()
        .fold(QSeries::one(qmax), |acc, &m| acc.mul(&pochhammer_inv(m as usize, qmax)))
        .shift(r.exponent(order))
}

/// `q^{sum k r r} / prod (q)_{r_I}`.
pub fn component_character(r: &WeightVectorR, qmax: usize) -> QSeries {
    component_character_with(r, qmax, MinorOrder::Monomial)
}

/// Weighted character: torus weight to q-series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedQSeries {
    pub kind: Kind,
    pub n: usize,
    pub qmax: usize,
    pub terms: BTreeMap<Vec<i32>, QSeries>,
}

impl WeightedQSeries {
    pub fn new(alphabet: &Alphabet, qmax: usize) -> Self {
        WeightedQSeries { kind: alphabet.kind(), n: alphabet.n(), qmax, terms: BTreeMap::new() }
    }

    pub fn add_at(&mut self, weight: Vec<i32>, s: &QSeries) {
        let e = self.terms.entry(weight).or_insert_with(|| QSeries::zero(self.qmax));
        *e = e.add(s);
    }

    /// All weights set to 1.
    pub fn specialize(&self) -> QSeries {
        self.terms.values().fold(QSeries::zero(self.qmax), |a, s| a.add(s))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(QSeries::is_nonnegative)
    }

    pub fn map_series(&self, f: impl Fn(&QSeries) -> QSeries) -> WeightedQSeries {
        WeightedQSeries { terms: self.terms.iter().map(|(w, s)| (w.clone(), f(s))).collect(), ..self.clone() }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let head: Vec<String> = (1..=self.n).map(|i| format!("w{i}")).collect();
        out.push_str(&format!("{},q,coeff\n", head.join(",")));
        for (w, s) in &self.terms {
            let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            for (d, c) in s.coeffs().iter().enumerate() {
                if *c != 0 {
                    out.push_str(&format!("{},{d},{c}\n", ws.join(",")));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WeightedJson {
            kind: self.kind,
            n: self.n,
            qmax: self.qmax,
            terms: self.terms.iter().map(|(w, s)| WeightedTerm { weight: w.clone(), coeffs: s.coeffs.clone() }).collect(),
        })
        .expect("character serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: WeightedJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse { position: 0, message: e.to_string() })?;
        Ok(WeightedQSeries {
            kind: j.kind,
            n: j.n,
            qmax: j.qmax,
            terms: j.terms.into_iter().map(|t| (t.weight, QSeries::new(t.coeffs, j.qmax))).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct WeightedJson {
    #[serde(rename = "type")]
    kind: Kind,
    n: usize,
    qmax: usize,
    terms: Vec<WeightedTerm>,
}

#[derive(Serialize, Deserialize)]
struct WeightedTerm {
    weight: Vec<i32>,
    coeffs: Vec<i64>,
}

/// Index sets of size `p` that may carry multiplicity.
pub fn generator_sets(alphabet: &Alphabet, p: usize) -> Vec<RowSet> {
    match alphabet.kind() {
        Kind::A => alphabet.sets_of_size(p),
        Kind::C => allowed_sets(alphabet, p),
    }
}

fn normalize_lambda(alphabet: &Alphabet, lambda: &[u32]) -> Result<Vec<u32>> {
    let m = alphabet.max_set_len();
    if lambda.len() > m && lambda[m..].iter().any(|&x| x != 0) {
        return Err(Error::InvalidWeight(format!("{} has only {m} fundamental weights", alphabet)));
    }
    let mut l = lambda.to_vec();
    l.resize(m, 0);
    Ok(l)
}

fn distributions(count: usize, total: u32) -> Vec<Vec<u32>> {
    if count == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in distributions(count - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `r` with `sum_{|I| = p} r_I = lambda_p` (allowed sets only in type C).
pub fn components(alphabet: &Alphabet, lambda: &[u32]) -> Result<Vec<WeightVectorR>> {
    let lambda = normalize_lambda(alphabet, lambda)?;
    let mut partial: Vec<Vec<(RowSet, u32)>> = vec![vec![]];
    for (p, &lp) in lambda.iter().enumerate() {
        let sets = generator_sets(alphabet, p + 1);
        let dists = distributions(sets.len(), lp);
        let mut next = Vec::with_capacity(partial.len() * dists.len());
        for base in &partial {
            for d in &dists {
                let mut v = base.clone();
                v.extend(sets.iter().cloned().zip(d.iter().copied()).filter(|(_, r)| *r > 0));
                next.push(v);
            }
        }
        partial = next;
    }
    partial.into_iter().map(|e| WeightVectorR::new(alphabet, e)).collect()
}

pub fn weyl_character_with(alphabet: &Alphabet, lambda: &[u32], qmax: usize, order: MinorOrder) -> Result<WeightedQSeries> {
    let comps = components(alphabet, lambda)?;
    let parts: Vec<(Vec<i32>, QSeries)> = comps
        .par_iter()
        .map(|r| (r.weight(alphabet), component_character_with(r, qmax, order)))
        .collect();
    let mut out = WeightedQSeries::new(alphabet, qmax);
    for (w, s) in parts {
        out.add_at(w, &s);
    }
    Ok(out)
}

/// Character of the global Weyl module: sum over components with torus weights.
pub fn weyl_character(alphabet: &Alphabet, lambda: &[u32], qmax: usize) -> Result<WeightedQSeries> {
    weyl_character_with(alphabet, lambda, qmax, MinorOrder::Monomial)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolynomialStatus {
    /// Every coefficient above the degree bound and up to `qmax` is zero.
    Certified,
    /// The degree bound reaches `qmax`.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCharacter {
    pub series: WeightedQSeries,
    pub status: PolynomialStatus,
    pub degree_bound: usize,
}

impl LocalCharacter {
    /// Value at `q = 1`, meaningful when certified.
    pub fn dimension(&self) -> i64 {
        self.series.specialize().total()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.series.to_json();
        v["status"] = serde_json::to_value(self.status).expect("status");
        v["degreeBound"] = self.degree_bound.into();
        if self.status == PolynomialStatus::Certified {
            v["dimension"] = self.dimension().into();
        }
        v
    }
}

/// Largest q-degree of `(q)_lambda / prod (q)_{r_I}` times the component shift.
pub fn local_degree_bound(alphabet: &Alphabet, lambda: &[u32]) -> Result<usize> {
    let lambda = normalize_lambda(alphabet, lambda)?;
    let comps = components(alphabet, &lambda)?;
    Ok(comps
        .iter()
        .map(|r| {
            let sq: usize = r.entries.values().map(|&x| (x * x) as usize).sum();
            let lam: usize = lambda.iter().map(|&x| (x * x) as usize).sum();
            r.exponent(MinorOrder::Monomial) + (lam - sq) / 2
        })
        .max()
        .unwrap_or(0))
}

pub fn local_weyl_character_with(alphabet: &Alphabet, lambda: &[u32], qmax: usize, order: MinorOrder) -> Result<LocalCharacter> {
    let lam = normalize_lambda(alphabet, lambda)?;
    let global = weyl_character_with(alphabet, &lam, qmax, order)?;
    let factor = lam.iter().fold(QSeries::one(qmax), |a, &l| a.mul(&pochhammer(l as usize, qmax)));
    let series = global.map_series(|s| s.mul(&factor));
    let degree_bound = local_degree_bound(alphabet, &lam)?;
    let status = if degree_bound < qmax {
        if series.terms.values().any(|s| s.coeffs()[degree_bound + 1..].iter().any(|&c| c != 0)) {
            return Err(Error::Internal("local character exceeds its degree bound".into()));
        }
        PolynomialStatus::Certified
    } else {
        PolynomialStatus::Inconclusive
    };
    Ok(LocalCharacter { series, status, degree_bound })
}

/// `(q)_lambda` times the global character.
pub fn local_weyl_character(alphabet: &Alphabet, lambda: &[u32], qmax: usize) -> Result<LocalCharacter> {
    local_weyl_character_with(alphabet, lambda, qmax, MinorOrder::Monomial)
}
