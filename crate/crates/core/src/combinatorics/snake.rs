use serde::{Deserialize, Serialize};

use super::RowSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    I,
    J,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeData {
    /// Canonical first set (`|I| >= |J|`).
    pub first: RowSet,
    pub second: RowSet,
    /// Strictly decreasing letters with their origin.
    pub sequence: Vec<(u8, Origin)>,
    pub k: usize,
}

impl SnakeData {
    pub fn letters(&self) -> Vec<u8> {
        self.sequence.iter().map(|&(x, _)| x).collect()
    }

    pub fn tagged(&self, origin: Origin) -> Vec<u8> {
        self.sequence.iter().filter(|&&(_, o)| o == origin).map(|&(x, _)| x).collect()
    }
}

/// Orders the pair so that `|I| >= |J|`, and for equal sizes the highest
/// differing coordinate has `i < j`.
pub fn canonicalize(i: &RowSet, j: &RowSet) -> (RowSet, RowSet) {
    let swap = if i.len() != j.len() {
        i.len() < j.len()
    } else {
        i.letters()
            .iter()
            .zip(j.letters())
            .rev()
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a > b)
    };
    if swap {
        (j.clone(), i.clone())
    } else {
        (i.clone(), j.clone())
    }
}

pub fn snake(i: &RowSet, j: &RowSet) -> SnakeData {
    let (first, second) = canonicalize(i, j);
    let (a, b) = (first.letters(), second.letters());
    let mut seq = Vec::with_capacity(a.len() + b.len());
    for p in (b.len()..a.len()).rev() {
        seq.push((a[p], Origin::I));
    }
    let mut mode = Origin::I;
    for p in (0..b.len()).rev() {
        let (x, y) = (a[p], b[p]);
        match mode {
            Origin::I if x > y => {
                seq.push((x, Origin::I));
                seq.push((y, Origin::J));
                mode = Origin::J;
            }
            Origin::I => seq.push((x, Origin::I)),
            Origin::J if x < y => {
                seq.push((y, Origin::J));
                seq.push((x, Origin::I));
                mode = Origin::I;
            }
            Origin::J => seq.push((y, Origin::J)),
        }
    }
    let k = seq.len() - a.len();
    SnakeData { first, second, sequence: seq, k }
}

/// `k(I,J)` as a function of the unordered pair.
pub fn k_value(i: &RowSet, j: &RowSet) -> usize {
    snake(i, j).k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{comparable, Alphabet};

    #[test]
    fn worked_snakes() {
        let a = Alphabet::type_a(7).unwrap();
        let s = |t| a.parse_set(t).unwrap();
        let d = snake(&s("2,3"), &s("1,4"));
        assert_eq!(d.letters(), vec![3, 2, 1]);
        assert_eq!(d.k, 1);
        let d = snake(&s("1,4,5"), &s("2,3,6"));
        assert_eq!(d.letters(), vec![5, 4, 3, 2, 1]);
        assert_eq!(d.k, 2);
        assert_eq!(k_value(&s("1,2"), &s("2,3")), 0);
        assert_eq!(k_value(&s("1,4"), &s("2,3")), 1);
    }

    #[test]
    fn k_zero_iff_comparable_n6() {
        let a = Alphabet::type_a(6).unwrap();
        let sets = a.proper_sets();
        for x in &sets {
            for y in &sets {
                let d = snake(x, y);
                assert_eq!(d.k == 0, comparable(x, y), "{x} {y}");
                assert!(d.sequence.windows(2).all(|w| w[0].0 > w[1].0), "{x} {y}");
                assert_eq!(d.tagged(Origin::I).len() + d.tagged(Origin::J).len(), d.sequence.len());
                assert_eq!(d.k, k_value(y, x));
            }
        }
    }
}
