//! Relation families among minors: finite and semi-infinite Plücker
//! relations, symplectic sum relations, and straightening.

mod pluecker;
mod symplectic;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Alphabet, Kind, RowSet};
use crate::error::{Error, Result};
use crate::jetpoly::{NumericSeries, Ring, Series, TruncatedSeries};
use crate::minors::{GenericJetMatrix, MinorTable};
use crate::oracle::GroupJetPoint;
use crate::rational::{from_text, to_text};

pub use pluecker::{
    finite_pluecker, generate_relations, semiinf_alternating_sum, semiinf_pluecker, straighten_product,
    verify_straightened_product, GenerationReport, ProductCombination,
};
pub use symplectic::{
    inclusion_determinant, inclusion_matrix, straighten_forbidden, symplectic_sum_relation, SumTerm, SymplecticSum,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FinitePluecker,
    SemiInfinitePluecker,
}

/// `coeff * d^deriv m_left(s) * m_right(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: BigRational,
    pub deriv: usize,
    pub left: RowSet,
    pub right: RowSet,
}

/// A formal sum of terms that vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRecord {
    pub family: Family,
    pub alphabet: Alphabet,
    pub pair: (RowSet, RowSet),
    pub k_prime: usize,
    pub terms: Vec<RelationTerm>,
    /// The largest product among the terms.
    pub leading: Option<(RowSet, RowSet)>,
}

impl RelationRecord {
    /// Whether the source pair is the unique largest product among the terms.
    pub fn pair_leads(&self) -> bool {
        use crate::combinatorics::compare_products;
        use std::cmp::Ordering;
        let pair = [self.pair.0.clone(), self.pair.1.clone()];
        let mut found = false;
        for t in &self.terms {
            match compare_products(&[t.left.clone(), t.right.clone()], &pair) {
                Ordering::Greater => return false,
                Ordering::Equal => found = true,
                Ordering::Less => {}
            }
        }
        found
    }

    /// Copy with one coefficient negated, for negative controls.
    pub fn with_flipped_sign(&self, index: usize) -> RelationRecord {
        let mut r = self.clone();
        if let Some(t) = r.terms.get_mut(index) {
            t.coeff = -t.coeff.clone();
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RelationJson {
            family: self.family,
            kind: self.alphabet.kind(),
            n: self.alphabet.n(),
            pair: [self.pair.0.to_string(), self.pair.1.to_string()],
            k_prime: self.k_prime,
            leading: self.leading.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff: to_text(&t.coeff),
                    deriv: t.deriv,
                    left: t.left.to_string(),
                    right: t.right.to_string(),
                })
                .collect(),
        })
        .expect("relation serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let r: RelationJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse { position: 0, message: e.to_string() })?;
        let alphabet = Alphabet::new(r.kind, r.n)?;
        let set = |s: &str| alphabet.parse_set(s);
        let terms = r
            .terms
            .iter()
            .map(|t| {
                Ok(RelationTerm { coeff: from_text(&t.coeff)?, deriv: t.deriv, left: set(&t.left)?, right: set(&t.right)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let leading = match &r.leading {
            Some([a, b]) => Some((set(a)?, set(b)?)),
            None => None,
        };
        Ok(RelationRecord {
            family: r.family,
            alphabet,
            pair: (set(&r.pair[0])?, set(&r.pair[1])?),
            k_prime: r.k_prime,
            terms,
            leading,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RelationJson {
    family: Family,
    #[serde(rename = "type")]
    kind: Kind,
    n: usize,
    pair: [String; 2],
    k_prime: usize,
    leading: Option<[String; 2]>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    deriv: usize,
    left: String,
    right: String,
}

fn max_deriv(rel: &RelationRecord) -> usize {
    rel.terms.iter().map(|t| t.deriv).max().unwrap_or(0)
}

fn expand<C: Ring>(rel: &RelationRecord, table: &mut MinorTable<C>, trunc: usize) -> Series<C> {
    let mut acc = Series::zero(trunc);
    for t in &rel.terms {
        let l = table.get(t.left.letters()).derivative(t.deriv).truncate(trunc);
        let r = table.get(t.right.letters());
        acc.add_scaled(&l.mul(&r, trunc), &t.coeff);
    }
    acc
}

/// Full expansion of the relation in the free jet ring up to `s^trunc`.
pub fn relation_series(rel: &RelationRecord, trunc: usize) -> TruncatedSeries {
    let m = GenericJetMatrix::new(rel.alphabet, trunc + max_deriv(rel));
    expand(rel, &mut m.table(), trunc)
}

/// True iff the expansion in the free jet ring vanishes up to `s^trunc`.
///
/// The generic matrix has no relations among the entries of the minor
/// columns, so vanishing here means vanishing on the whole group.
pub fn verify_relation_symbolic(rel: &RelationRecord, trunc: usize) -> bool {
    relation_series(rel, trunc).is_zero()
}

/// True iff the relation vanishes at every point up to the points' truncation minus the derivative order.
pub fn verify_relation_numeric(rel: &RelationRecord, points: &[GroupJetPoint]) -> bool {
    points.iter().all(|p| {
        let trunc = p.trunc().saturating_sub(max_deriv(rel));
        expand(rel, &mut p.table(), trunc).is_zero()
    })
}

/// A linear combination of minors.
pub type MinorCombination = BTreeMap<RowSet, BigRational>;

pub fn combination_at(point: &GroupJetPoint, combo: &MinorCombination) -> NumericSeries {
    let mut t = point.table();
    let mut acc = Series::zero(point.trunc());
    for (i, c) in combo {
        acc.add_scaled(&t.get(i.letters()), c);
    }
    acc
}

/// True iff `m_J - sum c_K m_K` vanishes at every point.
pub fn verify_straightening_numeric(j: &RowSet, combo: &MinorCombination, points: &[GroupJetPoint]) -> bool {
    points.iter().all(|p| {
        let lhs = p.minor(j);
        lhs.sub(&combination_at(p, combo)).is_zero()
    })
}

pub fn combination_to_json(alphabet: &Alphabet, input: &RowSet, combo: &MinorCombination) -> serde_json::Value {
    serde_json::json!({
        "type": alphabet.kind(),
        "n": alphabet.n(),
        "input": input.to_string(),
        "terms": combo.iter().map(|(k, c)| serde_json::json!({"coeff": to_text(c), "set": k.to_string()})).collect::<Vec<_>>(),
    })
}
