//! Basis monomials with the offset condition and rank certification of the presentation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{component_character_with, components, MinorOrder, WeightVectorR};
use crate::combinatorics::{k_value, Alphabet, Kind, RowSet};
use crate::error::{Error, Result};
use crate::jetpoly::{JetPolynomial, Monomial, Ring};
use crate::linalg::rank_rational;
use crate::minors::{product_leading_part, GenericJetMatrix};
use crate::oracle::{evaluate_with, sample_points};

/// `prod m_I^{(l)}`, factors sorted by set then jet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisMonomial {
    factors: Vec<(RowSet, u32)>,
}

impl BasisMonomial {
    pub fn new(mut factors: Vec<(RowSet, u32)>) -> Self {
        factors.sort();
        BasisMonomial { factors }
    }

    pub fn factors(&self) -> &[(RowSet, u32)] {
        &self.factors
    }

    pub fn jet_degree(&self) -> usize {
        self.factors.iter().map(|(_, l)| *l as usize).sum()
    }

    pub fn generator_list(&self) -> Vec<(RowSet, usize)> {
        self.factors.iter().map(|(s, l)| (s.clone(), *l as usize)).collect()
    }

    /// Leading part of the product, i.e. the product of the `d_I^{(l)}`.
    pub fn leading_part(&self) -> JetPolynomial {
        product_leading_part(&self.generator_list())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.factors
                .iter()
                .map(|(s, l)| serde_json::json!({"set": s.to_string(), "jet": l}))
                .collect(),
        )
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(s, l)| format!("{s}^{l}")).collect();
        f.write_str(&parts.join("|"))
    }
}

/// `o_I = sum_{J < I} k(I,J) r_J`.
pub fn offsets(r: &WeightVectorR, order: MinorOrder) -> BTreeMap<RowSet, usize> {
    let e = r.entries();
    e.keys()
        .map(|i| {
            let o = e
                .iter()
                .filter(|(j, _)| order.cmp(j, i) == std::cmp::Ordering::Less)
                .map(|(j, rj)| k_value(i, j) * *rj as usize)
                .sum();
            (i.clone(), o)
        })
        .collect()
}

// Weakly increasing jet sequences per set, each starting at its offset, total in [lo, hi].
fn jet_sequences(sets: &[(RowSet, u32, usize)], lo: usize, hi: usize) -> Vec<BasisMonomial> {
    fn seq(len: u32, min: usize, budget: usize, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, usize)>) {
        if len == 0 {
            let used = cur.iter().map(|&x| x as usize).sum();
            out.push((cur.clone(), used));
            return;
        }
        // the remaining len entries are all at least min
        let mut v = min;
        while v * len as usize <= budget {
            cur.push(v as u32);
            seq(len - 1, v, budget - v, cur, out);
            cur.pop();
            v += 1;
        }
    }
    fn rec(
        sets: &[(RowSet, u32, usize)],
        p: usize,
        budget: usize,
        acc: &mut Vec<(RowSet, u32)>,
        lo: usize,
        hi: usize,
        out: &mut Vec<BasisMonomial>,
    ) {
        if p == sets.len() {
            let d = hi - budget;
            if d >= lo {
                out.push(BasisMonomial::new(acc.clone()));
            }
            return;
        }
        let (s, r, o) = &sets[p];
        let mut seqs = Vec::new();
        seq(*r, *o, budget, &mut Vec::new(), &mut seqs);
        for (ls, used) in seqs {
            let base = acc.len();
            acc.extend(ls.into_iter().map(|l| (s.clone(), l)));
            rec(sets, p + 1, budget - used, acc, lo, hi, out);
            acc.truncate(base);
        }
    }
    let mut out = Vec::new();
    rec(sets, 0, hi, &mut Vec::new(), lo, hi, &mut out);
    out
}

pub fn enumerate_basis_with(r: &WeightVectorR, dmax: usize, order: MinorOrder) -> Vec<BasisMonomial> {
    let off = offsets(r, order);
    let sets: Vec<(RowSet, u32, usize)> = r.entries().iter().map(|(s, m)| (s.clone(), *m, off[s])).collect();
    let mut out = jet_sequences(&sets, 0, dmax);
    out.sort_by(|a, b| a.jet_degree().cmp(&b.jet_degree()).then_with(|| a.cmp(b)));
    out
}

/// Basis monomials of multidegree `r` with total jet degree at most `dmax`.
pub fn enumerate_basis(r: &WeightVectorR, dmax: usize) -> Vec<BasisMonomial> {
    enumerate_basis_with(r, dmax, MinorOrder::Monomial)
}

/// Number of basis monomials at each jet degree `0..=dmax`.
pub fn basis_counts(r: &WeightVectorR, dmax: usize, order: MinorOrder) -> Vec<u64> {
    let mut c = vec![0; dmax + 1];
    for m in enumerate_basis_with(r, dmax, order) {
        c[m.jet_degree()] += 1;
    }
    c
}

/// Products of generators sharing shape, torus weight and jet degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductClass {
    pub shape: Vec<u32>,
    pub weight: Vec<i32>,
}

impl ProductClass {
    pub fn of(alphabet: &Alphabet, r: &WeightVectorR) -> Self {
        ProductClass { shape: r.shape(alphabet), weight: r.weight(alphabet) }
    }

    /// Multidegrees of basis monomials in the class.
    pub fn components(&self, alphabet: &Alphabet) -> Result<Vec<WeightVectorR>> {
        Ok(components(alphabet, &self.shape)?
            .into_iter()
            .filter(|r| r.weight(alphabet) == self.weight)
            .collect())
    }

    /// Every product of generators in the class at jet degree `d`, forbidden type-C minors included.
    pub fn products(&self, alphabet: &Alphabet, d: usize) -> Vec<BasisMonomial> {
        let mut multisets: Vec<Vec<(RowSet, u32)>> = vec![vec![]];
        for (p, &lp) in self.shape.iter().enumerate() {
            let sets = alphabet.sets_of_size(p + 1);
            let mut next = Vec::new();
            for base in &multisets {
                for dist in distributions(sets.len(), lp) {
                    let mut v = base.clone();
                    v.extend(sets.iter().cloned().zip(dist).filter(|(_, m)| *m > 0));
                    next.push(v);
                }
            }
            multisets = next;
        }
        let coords = alphabet.rank_coords();
        let mut out = Vec::new();
        for ms in multisets {
            let mut w = vec![0i32; coords];
            for (s, m) in &ms {
                for (x, y) in w.iter_mut().zip(s.weight(coords)) {
                    *x += y * *m as i32;
                }
            }
            if w != self.weight {
                continue;
            }
            let sets: Vec<(RowSet, u32, usize)> = ms.into_iter().map(|(s, m)| (s, m, 0)).collect();
            out.extend(jet_sequences(&sets, d, d));
        }
        out.sort();
        out
    }
}

fn distributions(count: usize, total: u32) -> Vec<Vec<u32>> {
    if count == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            distributions(count - 1, total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// All classes with `1 <= sum r_I <= max_total`.
pub fn classes(alphabet: &Alphabet, max_total: u32) -> Result<Vec<ProductClass>> {
    let m = alphabet.max_set_len();
    let mut out = std::collections::BTreeSet::new();
    for total in 1..=max_total {
        for shape in distributions(m, total) {
            for r in components(alphabet, &shape)? {
                out.insert(ProductClass::of(alphabet, &r));
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    /// Basis count differs from the character coefficient.
    CountMismatch,
    /// Fewer independent products than basis monomials.
    RankDeficient,
    /// More independent products than basis monomials: the engine is wrong.
    RankExceedsCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multidegree {
    pub shape: Vec<u32>,
    pub weight: Vec<i32>,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationEntry {
    pub multidegree: Multidegree,
    pub jet_degree: usize,
    pub basis_count: u64,
    pub char_coeff: i64,
    pub rank: usize,
    pub products: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    #[serde(rename = "type")]
    pub kind: Kind,
    pub n: usize,
    pub mode: RankMode,
    pub entries: Vec<PresentationEntry>,
}

impl PresentationReport {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Agree)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse { position: 0, message: e.to_string() })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NumericOptions {
    pub seed: u64,
    pub min_samples: usize,
    pub resamples: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { seed: 1, min_samples: 40, resamples: 2 }
    }
}

fn symbolic_rank(alphabet: &Alphabet, products: &[BasisMonomial], dmax: usize) -> usize {
    let table = GenericJetMatrix::new(*alphabet, dmax).table();
    let table = std::sync::Mutex::new(table);
    let polys: Vec<JetPolynomial> = products
        .par_iter()
        .map(|p| {
            let factors: Vec<JetPolynomial> = p
                .factors()
                .iter()
                .map(|(s, l)| {
                    let series = table.lock().expect("minor table").get(s.letters());
                    series.coeff(*l as usize).cloned().unwrap_or_default()
                })
                .collect();
            factors.iter().fold(JetPolynomial::one(), |a, f| a.mul_ref(f))
        })
        .collect();
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let rows: Vec<BTreeMap<usize, BigRational>> = polys
        .iter()
        .map(|p| {
            p.terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    rank_rational(&rows)
}

fn numeric_rank(alphabet: &Alphabet, products: &[BasisMonomial], dmax: usize, samples: usize, seed: u64) -> Result<usize> {
    let points = sample_points(*alphabet, dmax, seed, samples);
    let lists: Vec<Vec<(RowSet, usize)>> = products.iter().map(BasisMonomial::generator_list).collect();
    let cols: Vec<Vec<BigRational>> = points
        .par_iter()
        .map(|pt| {
            let mut t = pt.table();
            lists.iter().map(|f| evaluate_with(&mut t, dmax, f)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<BTreeMap<usize, BigRational>> = (0..products.len())
        .map(|i| {
            cols.iter()
                .enumerate()
                .filter(|(_, c)| !c[i].is_zero_el())
                .map(|(j, c)| (j, c[i].clone()))
                .collect()
        })
        .collect();
    Ok(rank_rational(&rows))
}

/// Rank, count and character coefficient for one class at every jet degree up to `dmax`.
pub fn verify_class(
    alphabet: &Alphabet,
    class: &ProductClass,
    dmax: usize,
    mode: RankMode,
    opts: NumericOptions,
) -> Result<Vec<PresentationEntry>> {
    if mode == RankMode::Symbolic && alphabet.kind() != Kind::A {
        return Err(Error::Unsupported("symbolic rank is only available in type A".into()));
    }
    let comps = class.components(alphabet)?;
    let mut counts = vec![0u64; dmax + 1];
    let mut chars = vec![0i64; dmax + 1];
    for r in &comps {
        for (d, c) in basis_counts(r, dmax, MinorOrder::Monomial).into_iter().enumerate() {
            counts[d] += c;
        }
        for (d, c) in component_character_with(r, dmax, MinorOrder::Monomial).coeffs().iter().enumerate() {
            chars[d] += c;
        }
    }
    let multidegree = Multidegree {
        shape: class.shape.clone(),
        weight: class.weight.clone(),
        components: comps.iter().map(WeightVectorR::to_text).collect(),
    };
    let mut out = Vec::new();
    for d in 0..=dmax {
        let products = class.products(alphabet, d);
        let count = counts[d];
        let (rank, samples, seed) = match mode {
            RankMode::Symbolic => (symbolic_rank(alphabet, &products, dmax), None, None),
            RankMode::Numeric => {
                let mut samples = opts.min_samples.max(count as usize + 10);
                let mut seed = opts.seed.wrapping_add(d as u64 * 7919);
                let mut rank = numeric_rank(alphabet, &products, dmax, samples, seed)?;
                for attempt in 1..=opts.resamples {
                    if rank as u64 >= count {
                        break;
                    }
                    samples *= 2;
                    seed = opts.seed.wrapping_add(1_000_003 * attempt as u64 + d as u64 * 7919);
                    rank = numeric_rank(alphabet, &products, dmax, samples, seed)?;
                }
                (rank, Some(samples), Some(seed))
            }
        };
        let verdict = if count as i64 != chars[d] {
            Verdict::CountMismatch
        } else if rank as u64 > count {
            Verdict::RankExceedsCount
        } else if (rank as u64) < count {
            Verdict::RankDeficient
        } else {
            Verdict::Agree
        };
        out.push(PresentationEntry {
            multidegree: multidegree.clone(),
            jet_degree: d,
            basis_count: count,
            char_coeff: chars[d],
            rank,
            products: products.len(),
            samples,
            seed,
            verdict,
        });
    }
    Ok(out)
}

/// Certify the class containing `r` on jet degrees `0..=dmax`.
pub fn verify_presentation(
    alphabet: &Alphabet,
    r: &WeightVectorR,
    dmax: usize,
    mode: RankMode,
    opts: NumericOptions,
) -> Result<PresentationReport> {
    let entries = verify_class(alphabet, &ProductClass::of(alphabet, r), dmax, mode, opts)?;
    Ok(PresentationReport { kind: alphabet.kind(), n: alphabet.n(), mode, entries })
}

/// Every class with `sum r_I <= max_total`.
pub fn verify_all(
    alphabet: &Alphabet,
    max_total: u32,
    dmax: usize,
    mode: RankMode,
    opts: NumericOptions,
) -> Result<PresentationReport> {
    let cls = classes(alphabet, max_total)?;
    let per: Vec<Vec<PresentationEntry>> =
        cls.par_iter().map(|c| verify_class(alphabet, c, dmax, mode, opts)).collect::<Result<_>>()?;
    Ok(PresentationReport { kind: alphabet.kind(), n: alphabet.n(), mode, entries: per.concat() })
}

fn renamed_to_a(p: &JetPolynomial) -> JetPolynomial {
    p.rename(|v| v.with_kind(Kind::A))
}

/// Leading parts of the basis monomials of `r` up to `dmax` are pairwise distinct.
pub fn leading_monomial_basis_check(r: &WeightVectorR, dmax: usize) -> bool {
    let mut seen = std::collections::HashSet::new();
    enumerate_basis(r, dmax).iter().all(|m| seen.insert(m.leading_part()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeadingReport {
    pub multidegree: Multidegree,
    pub monomials: usize,
    pub distinct: bool,
    pub rank: usize,
    /// Type C only: renamed leading parts coincide with the type-A leading parts of the embedded sets.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub embeds: Option<bool>,
}

impl LeadingReport {
    pub fn ok(&self) -> bool {
        self.distinct && self.rank == self.monomials && self.embeds.unwrap_or(true)
    }
}

/// Distinctness and independence of the leading parts over a whole class, jets up to `dmax`.
pub fn leading_class_check(alphabet: &Alphabet, class: &ProductClass, dmax: usize) -> Result<LeadingReport> {
    let comps = class.components(alphabet)?;
    let monos: Vec<BasisMonomial> = comps.iter().flat_map(|r| enumerate_basis(r, dmax)).collect();
    let leads: Vec<JetPolynomial> = monos.par_iter().map(BasisMonomial::leading_part).collect();
    let distinct = {
        let mut seen = std::collections::HashSet::new();
        leads.iter().all(|p| seen.insert(p.clone()))
    };
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let rows: Vec<BTreeMap<usize, BigRational>> = leads
        .iter()
        .map(|p| {
            p.terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    let rank = rank_rational(&rows);
    let embeds = (alphabet.kind() == Kind::C).then(|| {
        monos.iter().zip(&leads).all(|(m, lead)| {
            let embedded: Vec<(RowSet, usize)> = m.factors().iter().map(|(s, l)| (s.embed(), *l as usize)).collect();
            renamed_to_a(lead) == product_leading_part(&embedded)
        })
    });
    Ok(LeadingReport {
        multidegree: Multidegree {
            shape: class.shape.clone(),
            weight: class.weight.clone(),
            components: comps.iter().map(WeightVectorR::to_text).collect(),
        },
        monomials: monos.len(),
        distinct,
        rank,
        embeds,
    })
}
