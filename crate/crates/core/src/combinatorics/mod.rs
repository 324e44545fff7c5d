//! Alphabets, row sets, the subset order, the order on products of minors,
//! snakes and the allowed sets of type C.

mod allowed;
mod alphabet;
mod order;
mod snake;

pub use allowed::{allowed_count, allowed_sets, forbidden_by_definition, forbidden_by_pair, is_allowed};
pub(crate) use allowed::remark_position;
pub use alphabet::{letter_token, Alphabet, Kind, RowSet};
pub use order::{comparable, compare_products, compare_sets, subset_leq, truncate, ProductIndex, SubsetRelation};
pub use snake::{canonicalize, k_value, snake, Origin, SnakeData};

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// Sign of the permutation sorting `seq`, or 0 when a value repeats.
pub fn perm_sign(seq: &[u8]) -> i32 {
    let mut s = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Greater => s = -s,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    s
}

/// Index combinations of size `k` from `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut p = k;
        while p > 0 && cur[p - 1] == n - k + p - 1 {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        cur[p - 1] += 1;
        for q in p..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(perm_sign(&[2, 1, 3]), -1);
        assert_eq!(perm_sign(&[3, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 1]), 0);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
