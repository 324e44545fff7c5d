use super::{binomial, Alphabet, Kind, RowSet};

/// Type-C test `iota(j_p) >= 2p - 1` on the letter positions. Type-A sets are always allowed.
pub fn is_allowed(j: &RowSet) -> bool {
    j.kind() == Kind::A || j.letters().iter().enumerate().all(|(p, &x)| x as usize > 2 * p)
}

/// Some position `b` holds a barred letter `ā` with `a < b`.
pub fn forbidden_by_definition(j: &RowSet) -> bool {
    j.kind() == Kind::C
        && j.letters()
            .iter()
            .enumerate()
            .any(|(p, &x)| x % 2 == 0 && (x as usize / 2) < p + 1)
}

/// Some position `b` holds `b` and position `b+1` holds `b̄`.
pub fn forbidden_by_pair(j: &RowSet) -> bool {
    j.kind() == Kind::C && remark_position(j).is_some()
}

/// Smallest `b` with `j_b = b` and `j_{b+1} = b̄`.
pub(crate) fn remark_position(j: &RowSet) -> Option<usize> {
    let l = j.letters();
    (1..l.len()).find(|&b| l[b - 1] as usize == 2 * b - 1 && l[b] as usize == 2 * b)
}

/// `binom(2n, l) - binom(2n, l - 2)`.
pub fn allowed_count(n: usize, l: usize) -> u64 {
    let low = if l >= 2 { binomial(2 * n, l - 2) } else { 0 };
    binomial(2 * n, l) - low
}

pub fn allowed_sets(alphabet: &Alphabet, size: usize) -> Vec<RowSet> {
    alphabet.sets_of_size(size).into_iter().filter(is_allowed).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = Alphabet::type_c(4).unwrap();
        let s = |t| c.parse_set(t).unwrap();
        assert!(!is_allowed(&s("1,1b")));
        assert!(is_allowed(&s("1,2b")));
        assert!(!is_allowed(&s("2,2b,3,3b")));
        assert_eq!(remark_position(&s("2,2b,3,3b")), Some(3));
        assert_eq!(allowed_count(2, 2), 5);
        assert_eq!(allowed_count(3, 2), 14);
        assert_eq!(allowed_count(3, 3), 14);
        assert_eq!(allowed_count(3, 1), 6);
    }

    #[test]
    fn counts_and_criteria_agree() {
        for n in 1..=5 {
            let c = Alphabet::type_c(n).unwrap();
            for l in 1..=n {
                let sets = c.sets_of_size(l);
                assert_eq!(sets.iter().filter(|s| is_allowed(s)).count() as u64, allowed_count(n, l));
                for s in &sets {
                    assert_eq!(!is_allowed(s), forbidden_by_definition(s), "{s}");
                    assert_eq!(!is_allowed(s), forbidden_by_pair(s), "{s}");
                }
            }
        }
    }
}
