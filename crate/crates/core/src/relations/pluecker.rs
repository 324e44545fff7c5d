use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{verify_relation_symbolic, Family, RelationRecord, RelationTerm};
use crate::combinatorics::{
    canonicalize, combinations, comparable, compare_products, compare_sets, perm_sign, snake, Alphabet, Origin, RowSet,
};
use crate::error::{Error, Result};
use crate::jetpoly::Ring;
use crate::minors::GenericJetMatrix;
use crate::rational::int;

/// Terms `sign * m_{X u B} m_{Y u (seq \ B)}` over subsets `B` of positions of `seq`.
fn exchange_terms(kind: crate::Kind, seq: &[u8], size_b: usize, x: &[u8], y: &[u8], deriv: usize) -> Vec<RelationTerm> {
    let mut merged: BTreeMap<(RowSet, RowSet), i64> = BTreeMap::new();
    for b in combinations(seq.len(), size_b) {
        let rest: Vec<usize> = (0..seq.len()).filter(|q| !b.contains(q)).collect();
        let order: Vec<u8> = b.iter().chain(&rest).map(|&q| q as u8).collect();
        let bv: Vec<u8> = b.iter().map(|&q| seq[q]).collect();
        let rv: Vec<u8> = rest.iter().map(|&q| seq[q]).collect();
        let left: Vec<u8> = x.iter().chain(&bv).copied().collect();
        let right: Vec<u8> = y.iter().chain(&rv).copied().collect();
        let c = perm_sign(&order) * perm_sign(&left) * perm_sign(&right);
        if c == 0 {
            continue;
        }
        let mut l = left;
        let mut r = right;
        l.sort_unstable();
        r.sort_unstable();
        *merged.entry((RowSet::from_sorted(kind, l), RowSet::from_sorted(kind, r))).or_default() += c as i64;
    }
    let mut terms: Vec<RelationTerm> = merged
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((left, right), c)| RelationTerm { coeff: int(c), deriv, left, right })
        .collect();
    terms.sort_by(|a, b| compare_products(&[b.left.clone(), b.right.clone()], &[a.left.clone(), a.right.clone()]));
    terms
}

fn leading_of(terms: &[RelationTerm]) -> Option<(RowSet, RowSet)> {
    terms
        .iter()
        .max_by(|a, b| compare_products(&[a.left.clone(), a.right.clone()], &[b.left.clone(), b.right.clone()]))
        .map(|t| (t.left.clone(), t.right.clone()))
}

fn alphabet_for(i: &RowSet, j: &RowSet, alphabet: &Alphabet) -> Result<()> {
    for s in [i, j] {
        if s.kind() != alphabet.kind() {
            return Err(Error::AlphabetMismatch(s.kind().to_string(), alphabet.kind().to_string()));
        }
        alphabet.set(s.letters())?;
    }
    Ok(())
}

/// The classical quadratic relation with leading product `m_I m_J`.
pub fn finite_pluecker(alphabet: &Alphabet, i: &RowSet, j: &RowSet) -> Result<RelationRecord> {
    alphabet_for(i, j, alphabet)?;
    if comparable(i, j) {
        return Err(Error::Comparable(i.to_string(), j.to_string()));
    }
    let (first, second) = canonicalize(i, j);
    let (a, b) = (first.letters(), second.letters());
    let s = (1..=b.len()).filter(|&p| a[p - 1] > b[p - 1]).max().expect("incomparable pair has an inversion");
    let seq: Vec<u8> = b[..s].iter().chain(&a[s - 1..]).copied().collect();
    let terms = exchange_terms(alphabet.kind(), &seq, a.len() - s + 1, &a[..s - 1], &b[s..], 0);
    Ok(RelationRecord {
        family: Family::FinitePluecker,
        alphabet: *alphabet,
        leading: leading_of(&terms),
        pair: (first, second),
        k_prime: 0,
        terms,
    })
}

/// The snake exchange sum with `d^{k'}` on the first factor, for any `k'`.
pub fn semiinf_alternating_sum(alphabet: &Alphabet, i: &RowSet, j: &RowSet, k_prime: usize) -> Result<RelationRecord> {
    alphabet_for(i, j, alphabet)?;
    let sn = snake(i, j);
    let seq = sn.letters();
    let tagged_i = sn.tagged(Origin::I);
    let tagged_j = sn.tagged(Origin::J);
    let x: Vec<u8> = sn.first.letters().iter().filter(|v| !tagged_i.contains(v)).copied().collect();
    let y: Vec<u8> = sn.second.letters().iter().filter(|v| !tagged_j.contains(v)).copied().collect();
    let terms = exchange_terms(alphabet.kind(), &seq, tagged_i.len(), &x, &y, k_prime);
    Ok(RelationRecord {
        family: Family::SemiInfinitePluecker,
        alphabet: *alphabet,
        leading: leading_of(&terms),
        pair: (sn.first, sn.second),
        k_prime,
        terms,
    })
}

/// Semi-infinite Plücker relation, defined for `k' < k(I,J)`.
pub fn semiinf_pluecker(alphabet: &Alphabet, i: &RowSet, j: &RowSet, k_prime: usize) -> Result<RelationRecord> {
    let k = snake(i, j).k;
    if k_prime >= k {
        return Err(Error::DerivativeTooLarge { k_prime, k });
    }
    semiinf_alternating_sum(alphabet, i, j, k_prime)
}

#[derive(Clone, Debug, Default)]
pub struct GenerationReport {
    pub relations: Vec<RelationRecord>,
    /// Relations that failed the zero check or whose leading product is not the source pair.
    pub failures: Vec<(RelationRecord, String)>,
    /// Pairs whose alternating sum at `k' = k` vanished although it should not.
    pub sharpness_failures: Vec<(RowSet, RowSet)>,
}

// verified relations, rejected ones, sharpness at k' = k
type PairOutcome = (Vec<RelationRecord>, Vec<(RelationRecord, String)>, bool);

/// All semi-infinite relations for incomparable pairs with sizes `<= max_size`,
/// each checked symbolically up to `s^trunc` before being emitted.
pub fn generate_relations(alphabet: &Alphabet, max_size: usize, trunc: usize) -> GenerationReport {
    let sets: Vec<RowSet> = alphabet.proper_sets().into_iter().filter(|s| s.len() <= max_size).collect();
    let mut pairs = Vec::new();
    for (x, i) in sets.iter().enumerate() {
        for j in &sets[x + 1..] {
            if !comparable(i, j) {
                pairs.push(canonicalize(i, j));
            }
        }
    }
    let results: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|(i, j)| {
            let k = snake(i, j).k;
            let mut ok = Vec::new();
            let mut bad = Vec::new();
            for kp in 0..k {
                let rel = semiinf_pluecker(alphabet, i, j, kp).expect("k' below k");
                if !verify_relation_symbolic(&rel, trunc) {
                    bad.push((rel, "does not vanish".to_string()));
                } else if !rel.pair_leads() {
                    bad.push((rel, "source pair is not the leading product".to_string()));
                } else {
                    ok.push(rel);
                }
            }
            let sharp = !verify_relation_symbolic(&semiinf_alternating_sum(alphabet, i, j, k).expect("valid"), trunc);
            (ok, bad, sharp)
        })
        .collect();
    let mut report = GenerationReport::default();
    for ((ok, bad, sharp), (i, j)) in results.into_iter().zip(pairs) {
        report.relations.extend(ok);
        report.failures.extend(bad);
        if !sharp {
            report.sharpness_failures.push((i, j));
        }
    }
    report
}

/// Unordered product of two minors, larger factor first.
fn product_key(a: &RowSet, b: &RowSet) -> (RowSet, RowSet) {
    if compare_sets(a, b) == Ordering::Less {
        (b.clone(), a.clone())
    } else {
        (a.clone(), b.clone())
    }
}

pub type ProductCombination = BTreeMap<(RowSet, RowSet), BigRational>;

const STRAIGHTEN_GUARD: usize = 100_000;

/// Rewrites `m_I m_J` as a combination of products of comparable minors.
pub fn straighten_product(alphabet: &Alphabet, i: &RowSet, j: &RowSet) -> Result<ProductCombination> {
    alphabet_for(i, j, alphabet)?;
    let mut combo = ProductCombination::new();
    combo.insert(product_key(i, j), BigRational::one());
    for _ in 0..STRAIGHTEN_GUARD {
        let worst = combo
            .keys()
            .filter(|(a, b)| !comparable(a, b))
            .max_by(|x, y| compare_products(&[x.0.clone(), x.1.clone()], &[y.0.clone(), y.1.clone()]))
            .cloned();
        let Some(key) = worst else {
            return Ok(combo);
        };
        let c = combo.remove(&key).expect("key present");
        let rel = finite_pluecker(alphabet, &key.0, &key.1)?;
        let mut lead = BigRational::zero();
        let mut others: Vec<((RowSet, RowSet), BigRational)> = Vec::new();
        for t in rel.terms {
            let k = product_key(&t.left, &t.right);
            if k == key {
                lead += t.coeff;
            } else {
                others.push((k, t.coeff));
            }
        }
        if lead.is_zero() {
            return Err(Error::Internal(format!("relation for {} {} lost its leading term", key.0, key.1)));
        }
        for (k, v) in others {
            let e = combo.entry(k.clone()).or_insert_with(BigRational::zero);
            *e -= &c * v / &lead;
            if e.is_zero() {
                combo.remove(&k);
            }
        }
    }
    Err(Error::NonTermination(STRAIGHTEN_GUARD))
}

/// Checks `m_I m_J = sum c m_P m_Q` in the free ring at `s`-degree 0.
pub fn verify_straightened_product(alphabet: &Alphabet, i: &RowSet, j: &RowSet, combo: &ProductCombination) -> bool {
    let mut t = GenericJetMatrix::new(*alphabet, 0).table();
    let mut acc = t.get(i.letters()).mul(&t.get(j.letters()), 0);
    for ((p, q), c) in combo {
        let prod = t.get(p.letters()).mul(&t.get(q.letters()), 0);
        acc.add_scaled(&prod, &-c.clone());
    }
    acc.coeffs()[0].is_zero_el()
}
