use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::RowSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetRelation {
    Equal,
    /// The first set is `<=` the second.
    Leq,
    /// The second set is `<=` the first.
    Geq,
    Incomparable,
}

fn leq(i: &[u8], j: &[u8]) -> bool {
    i.len() >= j.len() && i.iter().zip(j).all(|(a, b)| a <= b)
}

/// `I <= J` when `|I| >= |J|` and `i_s <= j_s` for `s <= |J|`.
pub fn subset_leq(i: &RowSet, j: &RowSet) -> SubsetRelation {
    let (a, b) = (i.letters(), j.letters());
    if a == b {
        SubsetRelation::Equal
    } else if leq(a, b) {
        SubsetRelation::Leq
    } else if leq(b, a) {
        SubsetRelation::Geq
    } else {
        SubsetRelation::Incomparable
    }
}

pub fn comparable(i: &RowSet, j: &RowSet) -> bool {
    subset_leq(i, j) != SubsetRelation::Incomparable
}

/// `{i_l, ..., i_|I|}`, empty when `l > |I|`.
pub fn truncate(i: &RowSet, level: usize) -> RowSet {
    assert!(level >= 1, "truncation level starts at 1");
    let drop = (level - 1).min(i.len());
    RowSet::from_sorted(i.kind(), i.letters()[drop..].to_vec())
}

/// The order on single minors: larger sets first, then the larger top-most differing letter.
pub fn compare_sets(a: &RowSet, b: &RowSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.letters().iter().rev().cmp(b.letters().iter().rev()))
}

/// Order on the lexicographic sets of the truncation stage: at the first
/// difference the smaller letter is smaller, a proper extension is smaller
/// than its prefix, so the empty set is the largest.
fn lexset_cmp(u: &[u8], v: &[u8]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        if a != b {
            return a.cmp(b);
        }
    }
    v.len().cmp(&u.len())
}

fn sorted_multiset(p: &[RowSet], drop: usize) -> Vec<&[u8]> {
    let mut v: Vec<&[u8]> = p.iter().filter(|l| l.len() > drop).map(|l| &l.letters()[drop..]).collect();
    v.sort_unstable();
    v
}

/// Compares products of minors given by their row sets (order of factors irrelevant).
pub fn compare_products(p: &[RowSet], q: &[RowSet]) -> Ordering {
    // stage 1: number of factors
    match p.len().cmp(&q.len()) {
        Ordering::Equal => {}
        o => return o,
    }
    // stage 2: shape
    let mut sp: Vec<usize> = p.iter().map(RowSet::len).collect();
    let mut sq: Vec<usize> = q.iter().map(RowSet::len).collect();
    sp.sort_unstable_by(|a, b| b.cmp(a));
    sq.sort_unstable_by(|a, b| b.cmp(a));
    match sp.cmp(&sq) {
        Ordering::Equal => {}
        o => return o,
    }
    // stage 3: weight scanned from the largest letter down
    let mut wt: BTreeMap<u8, i64> = BTreeMap::new();
    for l in p {
        for &x in l.letters() {
            *wt.entry(x).or_default() += 1;
        }
    }
    for l in q {
        for &x in l.letters() {
            *wt.entry(x).or_default() -= 1;
        }
    }
    if let Some((_, &d)) = wt.iter().rev().find(|(_, &d)| d != 0) {
        return d.cmp(&0);
    }
    // stage 4: truncations
    if sorted_multiset(p, 0) == sorted_multiset(q, 0) {
        return Ordering::Equal;
    }
    let maxlen = sp[0];
    let level = (1..=maxlen)
        .find(|&l| sorted_multiset(p, l) == sorted_multiset(q, l))
        .unwrap_or(maxlen);
    let drop = level - 1;
    let mut counts: BTreeMap<(std::cmp::Reverse<u8>, LexKey), i64> = BTreeMap::new();
    for (prod, sign) in [(p, 1i64), (q, -1i64)] {
        for l in prod.iter().filter(|l| l.len() > drop) {
            let t = &l.letters()[drop..];
            *counts.entry((std::cmp::Reverse(t[0]), LexKey(t[1..].to_vec()))).or_default() += sign;
        }
    }
    match counts.values().find(|&&d| d != 0) {
        Some(&d) => d.cmp(&0),
        None => Ordering::Equal,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LexKey(Vec<u8>);

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        lexset_cmp(&self.0, &other.0)
    }
}

/// A product of minors with factors kept in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductIndex {
    factors: Vec<RowSet>,
}

impl ProductIndex {
    pub fn new(mut factors: Vec<RowSet>) -> Self {
        factors.sort_by(|a, b| compare_sets(b, a));
        ProductIndex { factors }
    }

    pub fn factors(&self) -> &[RowSet] {
        &self.factors
    }

    pub fn shape(&self) -> Vec<usize> {
        self.factors.iter().map(RowSet::len).collect()
    }

    /// Multiplicity of each letter, indexed by letter position minus one.
    pub fn weight(&self, letters: usize) -> Vec<usize> {
        let mut w = vec![0; letters];
        for f in &self.factors {
            for &x in f.letters() {
                w[x as usize - 1] += 1;
            }
        }
        w
    }
}

impl PartialOrd for ProductIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(compare_products(&self.factors, &other.factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Alphabet;

    fn prod(a: &Alphabet, s: &str) -> Vec<RowSet> {
        a.parse_product(s).unwrap()
    }

    #[test]
    fn subset_order_examples() {
        let a = Alphabet::type_a(5).unwrap();
        let s = |t| a.parse_set(t).unwrap();
        assert_eq!(subset_leq(&s("1,2"), &s("2,3")), SubsetRelation::Leq);
        assert_eq!(subset_leq(&s("1,4"), &s("2,3")), SubsetRelation::Incomparable);
        assert_eq!(subset_leq(&s("2,3"), &s("1")), SubsetRelation::Incomparable);
        assert_eq!(subset_leq(&s("2,3"), &s("2,3")), SubsetRelation::Equal);
        assert_eq!(subset_leq(&s("3"), &s("1,2")), SubsetRelation::Geq);
    }

    #[test]
    fn truncation_examples() {
        let a = Alphabet::type_a(9).unwrap();
        let i = a.parse_set("1,2,6,8").unwrap();
        assert_eq!(truncate(&i, 2).letters(), &[2, 6, 8]);
        assert_eq!(truncate(&i, 3).letters(), &[6, 8]);
        assert!(truncate(&a.parse_set("1").unwrap(), 3).is_empty());
    }

    #[test]
    fn lengths_then_weights() {
        let a = Alphabet::type_a(9).unwrap();
        let c = |x: &str, y: &str| compare_products(&prod(&a, x), &prod(&a, y));
        assert_eq!(c("123|46|1|1", "78|67|36|45"), Ordering::Greater);
        assert_eq!(c("126|15|1|1", "123|46|3|1"), Ordering::Greater);
        assert_eq!(c("123|46|1|1", "1|46|1|123"), Ordering::Equal);
    }

    #[test]
    fn single_sets_top_down() {
        let a = Alphabet::type_a(5).unwrap();
        let s = |t| a.parse_set(t).unwrap();
        assert_eq!(compare_sets(&s("1,4"), &s("2,3")), Ordering::Greater);
        assert_eq!(compare_sets(&s("1,2,3"), &s("4,5")), Ordering::Greater);
        assert_eq!(compare_products(&[s("1,4")], &[s("2,3")]), Ordering::Greater);
    }

    #[test]
    fn two_by_two_pair_leads() {
        let a = Alphabet::type_a(5).unwrap();
        let c = |x: &str, y: &str| compare_products(&prod(&a, x), &prod(&a, y));
        assert_eq!(c("23|14", "13|24"), Ordering::Greater);
        assert_eq!(c("23|14", "12|34"), Ordering::Greater);
        assert_eq!(c("345|12", "235|14"), Ordering::Greater);
        assert_eq!(c("345|12", "135|24"), Ordering::Greater);
    }

    #[test]
    fn lexset_examples() {
        assert_eq!(lexset_cmp(&[], &[3]), Ordering::Greater);
        assert_eq!(lexset_cmp(&[3, 5], &[3]), Ordering::Less);
        assert_eq!(lexset_cmp(&[2, 9], &[3]), Ordering::Less);
    }
}
