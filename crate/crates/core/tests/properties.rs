use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use semiflag_core::combinatorics::{compare_sets, snake, Origin};
use semiflag_core::jetpoly::{JetPolynomial, JetVariable, Monomial, NumericSeries, Series, TruncatedSeries};
use semiflag_core::minors::{minor_series, GenericJetMatrix};
use semiflag_core::oracle::random_point;
use semiflag_core::{Alphabet, Kind};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn var() -> impl Strategy<Value = JetVariable> {
    (1u8..=3, 1u8..=2, 0u8..=2).prop_map(|(r, c, k)| JetVariable::new(Kind::A, r, c, k))
}

fn poly() -> impl Strategy<Value = JetPolynomial> {
    prop::collection::vec((prop::collection::vec(var(), 0..3), -4i64..=4, 1i64..=3), 0..4).prop_map(|terms| {
        let mut p = JetPolynomial::default();
        for (vars, n, d) in terms {
            p.add_term(Monomial::from_vars(vars), q(n, d));
        }
        p
    })
}

fn series(trunc: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(poly(), trunc + 1).prop_map(move |c| Series::new(c, trunc))
}

fn point() -> impl Strategy<Value = HashMap<JetVariable, BigRational>> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 18).prop_map(|vals| {
        let mut m = HashMap::new();
        let mut it = vals.into_iter();
        for r in 1..=3 {
            for c in 1..=2 {
                for k in 0..=2 {
                    let (n, d) = it.next().unwrap();
                    m.insert(JetVariable::new(Kind::A, r, c, k), q(n, d));
                }
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &JetPolynomial::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), pt in point()) {
        let ab = (&a * &b).evaluate(&pt).unwrap();
        prop_assert_eq!(ab, a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap());
        let s = (&a + &b).evaluate(&pt).unwrap();
        prop_assert_eq!(s, a.evaluate(&pt).unwrap() + b.evaluate(&pt).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_series_product(f in series(2), g in series(2), pt in point()) {
        let lhs = f.mul(&g, 2).evaluate(&pt).unwrap();
        let rhs: NumericSeries = f.evaluate(&pt).unwrap().mul(&g.evaluate(&pt).unwrap(), 2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_consistency(f in series(3), g in series(3), d in 0usize..=3) {
        // pad to a larger bound so the untruncated product is exact
        let fp = Series::new(f.coeffs().to_vec(), 6);
        let gp = Series::new(g.coeffs().to_vec(), 6);
        prop_assert_eq!(f.truncate(d).mul(&g.truncate(d), d), fp.mul(&gp, 6).truncate(d));
    }

    #[test]
    fn leibniz_rule(f in series(3), g in series(3)) {
        let lhs = f.mul(&g, 3).derivative(1);
        let rhs = f.derivative(1).mul(&g, 2).add(&f.mul(&g.derivative(1), 2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_minors_match_symbolic(seed in 0u64..1000, rows in prop::sample::subsequence(vec![1u8, 2, 3, 4], 1..=3)) {
        let a = Alphabet::type_a(4).unwrap();
        let set = a.set(&rows).unwrap();
        let pt = random_point(a, 2, seed);
        let sym = minor_series(&set, &GenericJetMatrix::new(a, 2)).unwrap().series;
        prop_assert_eq!(sym.evaluate(&pt.jet_assignment()).unwrap(), pt.minor(&set));
    }

    #[test]
    fn single_set_order_is_total(x in prop::sample::subsequence((1u8..=6).collect::<Vec<_>>(), 1..=5),
                                 y in prop::sample::subsequence((1u8..=6).collect::<Vec<_>>(), 1..=5)) {
        let a = Alphabet::type_a(6).unwrap();
        let (i, j) = (a.set(&x).unwrap(), a.set(&y).unwrap());
        let o = compare_sets(&i, &j);
        prop_assert_eq!(o == Ordering::Equal, i == j);
        prop_assert_eq!(compare_sets(&j, &i), o.reverse());
    }

    #[test]
    fn snake_is_strictly_decreasing(x in prop::sample::subsequence((1u8..=7).collect::<Vec<_>>(), 1..=6),
                                    y in prop::sample::subsequence((1u8..=7).collect::<Vec<_>>(), 1..=6)) {
        let a = Alphabet::type_a(7).unwrap();
        let s = snake(&a.set(&x).unwrap(), &a.set(&y).unwrap());
        let letters = s.letters();
        prop_assert!(letters.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(letters.len(), s.tagged(Origin::I).len() + s.tagged(Origin::J).len());
        prop_assert_eq!(s.k, letters.len() - s.first.len());
    }
}
