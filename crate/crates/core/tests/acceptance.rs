//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use std::cmp::Ordering;
use std::time::Instant;

use semiflag_core::basis::{
    basis_counts, classes, leading_class_check, verify_all, NumericOptions, RankMode, Verdict,
};
use semiflag_core::characters::{component_character, local_weyl_character, MinorOrder, PolynomialStatus};
use semiflag_core::combinatorics::{
    allowed_count, allowed_sets, binomial, compare_products, forbidden_by_definition, forbidden_by_pair, is_allowed,
};
use semiflag_core::oracle::sample_points;
use semiflag_core::relations::{
    generate_relations, inclusion_determinant, straighten_forbidden, symplectic_sum_relation,
    verify_straightening_numeric, MinorCombination,
};
use semiflag_core::{Alphabet, RowSet};

fn report(criterion: usize, started: Instant, failures: &[String]) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("criterion {criterion}: PASS ({secs:.1}s)");
    } else {
        println!("criterion {criterion}: FAIL ({secs:.1}s)");
        for f in failures {
            println!("  {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {criterion} failed: {failures:#?}");
}

// Multisets of sets with 1..=max factors, as sorted index lists.
fn products(sets: &[RowSet], max: usize) -> Vec<Vec<RowSet>> {
    fn rec(sets: &[RowSet], start: usize, left: usize, cur: &mut Vec<RowSet>, out: &mut Vec<Vec<RowSet>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..sets.len() {
            cur.push(sets[i].clone());
            rec(sets, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(sets, 0, max, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_1_order_golden_and_monomial_axiom() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let a8 = Alphabet::type_a(8).unwrap();
    let golden = [
        ("123|46|1|1", "78|67|36|45"),
        ("126|15|1|1", "123|46|3|1"),
        ("1268|157|1|1", "2468|467|3|1"),
        ("1268|157|1|1", "2568|127|3|1"),
    ];
    for (no, (l, r)) in golden.iter().enumerate() {
        let p = a8.parse_product(l).unwrap();
        let q = a8.parse_product(r).unwrap();
        let got = compare_products(&p, &q);
        if got != Ordering::Greater || compare_products(&q, &p) != Ordering::Less {
            fails.push(format!("example {}: {l} vs {r} gives {got:?}, expected Greater", no + 1));
        }
    }
    let a4 = Alphabet::type_a(4).unwrap();
    let sets = a4.proper_sets();
    let prods = products(&sets, 3);
    let mut bad = 0usize;
    for p in &prods {
        for q in &prods {
            let base = compare_products(p, q);
            for r in &sets {
                let mut pr = p.clone();
                pr.push(r.clone());
                let mut qr = q.clone();
                qr.push(r.clone());
                if compare_products(&pr, &qr) != base {
                    bad += 1;
                }
            }
        }
    }
    if bad > 0 {
        fails.push(format!("monomial axiom violated in {bad} cases (n=4, up to 3 factors times one factor)"));
    }
    report(1, t, &fails);
}

#[test]
fn criterion_2_allowed_counts() {
    let t = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=5 {
        let c = Alphabet::type_c(n).unwrap();
        for l in 2..=n {
            let expected = binomial(2 * n, l) - binomial(2 * n, l - 2);
            let listed = allowed_sets(&c, l).len() as u64;
            if listed != expected || allowed_count(n, l) != expected {
                fails.push(format!("n={n} l={l}: listed {listed}, formula {}, expected {expected}", allowed_count(n, l)));
            }
        }
    }
    for n in 1..=4 {
        let c = Alphabet::type_c(n).unwrap();
        for s in c.proper_sets() {
            let a = is_allowed(&s);
            if a == forbidden_by_definition(&s) || a == forbidden_by_pair(&s) {
                fails.push(format!("n={n} {s}: criteria disagree"));
            }
        }
    }
    report(2, t, &fails);
}

#[test]
fn criterion_3_type_a_relations() {
    let t = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=4 {
        let a = Alphabet::type_a(n).unwrap();
        let rep = generate_relations(&a, 3, 4);
        for (rel, why) in &rep.failures {
            fails.push(format!("n={n} {}|{} k'={}: {why}", rel.pair.0, rel.pair.1, rel.k_prime));
        }
        for (i, j) in &rep.sharpness_failures {
            fails.push(format!("n={n} {i}|{j}: vanishes at k' = k"));
        }
        if n >= 4 && rep.relations.is_empty() {
            fails.push(format!("n={n}: no relations generated"));
        }
    }
    report(3, t, &fails);
}

fn corrupt(combo: &MinorCombination) -> MinorCombination {
    let mut c = combo.clone();
    if let Some(v) = c.values_mut().next() {
        *v = -v.clone();
    }
    c
}

#[test]
fn criterion_4_type_c_identities() {
    let t = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=4 {
        let c = Alphabet::type_c(n).unwrap();
        let pts = sample_points(c, 4, 1000 + n as u64, 20);
        let mut sums = 0;
        let mut bases = vec![c.empty_set()];
        for l in 1..=n - 2 {
            bases.extend(c.sets_of_size(l));
        }
        for base in &bases {
            let rel = symplectic_sum_relation(&c, base).unwrap();
            let combo = rel.combination();
            if combo.is_empty() {
                continue;
            }
            sums += 1;
            let (head, rest) = {
                let mut it = combo.clone().into_iter();
                let (k, _) = it.next().unwrap();
                (k, it.map(|(k, v)| (k, -v)).collect::<MinorCombination>())
            };
            // m_head = -(sum of the others)
            if !verify_straightening_numeric(&head, &rest, &pts) {
                fails.push(format!("n={n}: sum relation on base {{{base}}} does not vanish"));
            }
            if sums == 1 && verify_straightening_numeric(&head, &corrupt(&rest), &pts) && !rest.is_empty() {
                fails.push(format!("n={n}: corrupted sum relation on base {{{base}}} still vanishes"));
            }
        }
        let mut straightened = 0;
        let mut control_done = false;
        for j in c.proper_sets().into_iter().filter(|s| !is_allowed(s)) {
            let combo = match straighten_forbidden(&c, &j) {
                Ok(x) => x,
                Err(e) => {
                    fails.push(format!("n={n} {j}: {e}"));
                    continue;
                }
            };
            straightened += 1;
            if combo.keys().any(|k| !is_allowed(k)) {
                fails.push(format!("n={n} {j}: output has a forbidden minor"));
            }
            if !verify_straightening_numeric(&j, &combo, &pts) {
                fails.push(format!("n={n} {j}: straightening does not vanish"));
            }
            if !control_done && !combo.is_empty() {
                control_done = true;
                if verify_straightening_numeric(&j, &corrupt(&combo), &pts) {
                    fails.push(format!("n={n} {j}: corrupted straightening still vanishes"));
                }
            }
        }
        println!("  n={n}: {sums} sum relations, {straightened} straightenings at 20 points");
    }
    for s in 0..=3 {
        if inclusion_determinant(s) == 0.into() {
            fails.push(format!("inclusion matrix s={s} is singular"));
        }
    }
    report(4, t, &fails);
}

#[test]
fn criterion_5_count_character_rank() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let cases = [
        (Alphabet::type_a(3).unwrap(), 3, RankMode::Symbolic),
        (Alphabet::type_c(2).unwrap(), 2, RankMode::Numeric),
    ];
    for (a, total, mode) in cases {
        for class in classes(&a, total).unwrap() {
            for r in class.components(&a).unwrap() {
                let counts = basis_counts(&r, 4, MinorOrder::Monomial);
                let ch = component_character(&r, 4);
                if counts.iter().zip(ch.coeffs()).any(|(x, y)| *x as i64 != *y) {
                    fails.push(format!("{a} {}: counts {counts:?} vs character {:?}", r.to_text(), ch.coeffs()));
                }
            }
        }
        let opts = NumericOptions { seed: 5, min_samples: 40, resamples: 2 };
        let rep = verify_all(&a, total, 4, mode, opts).unwrap();
        for e in rep.entries.iter().filter(|e| e.verdict != Verdict::Agree) {
            fails.push(format!(
                "{a} shape {:?} weight {:?} d={}: count {} char {} rank {} ({:?})",
                e.multidegree.shape, e.multidegree.weight, e.jet_degree, e.basis_count, e.char_coeff, e.rank, e.verdict
            ));
        }
        println!("  {a}: {} class/degree cells", rep.entries.len());
    }
    report(5, t, &fails);
}

fn shapes(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_total - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn criterion_6_character_sanity() {
    let t = Instant::now();
    let mut fails = Vec::new();
    let alphabets: Vec<Alphabet> = (2..=4)
        .map(|n| Alphabet::type_a(n).unwrap())
        .chain((1..=3).map(|n| Alphabet::type_c(n).unwrap()))
        .collect();
    for a in &alphabets {
        let m = a.max_set_len();
        for lambda in shapes(m, 2) {
            let loc = local_weyl_character(a, &lambda, 12).unwrap();
            if loc.status != PolynomialStatus::Certified || !loc.series.is_nonnegative() {
                fails.push(format!("{a} lambda {lambda:?}: {:?}, nonnegative {}", loc.status, loc.series.is_nonnegative()));
            }
        }
        for p in 1..=m {
            let mut lambda = vec![0; m];
            lambda[p - 1] = 1;
            let dim = local_weyl_character(a, &lambda, 12).unwrap().dimension();
            let expected = match a.kind() {
                semiflag_core::Kind::A => binomial(a.n(), p),
                semiflag_core::Kind::C => allowed_count(a.n(), p),
            } as i64;
            if dim != expected {
                fails.push(format!("{a} omega_{p}: dimension {dim}, expected {expected}"));
            }
        }
    }
    let c2 = Alphabet::type_c(2).unwrap();
    if local_weyl_character(&c2, &[0, 1], 12).unwrap().dimension() != 5 {
        fails.push("sp4 omega_2 is not 5-dimensional".into());
    }
    report(6, t, &fails);
}

#[test]
fn criterion_7_leading_monomials_distinct() {
    let t = Instant::now();
    let mut fails = Vec::new();
    for (a, total) in [(Alphabet::type_a(3).unwrap(), 3), (Alphabet::type_c(2).unwrap(), 2)] {
        let mut monomials = 0;
        let cls = classes(&a, total).unwrap();
        for class in &cls {
            let rep = leading_class_check(&a, class, 4).unwrap();
            monomials += rep.monomials;
            if !rep.ok() {
                fails.push(format!(
                    "{a} shape {:?} weight {:?}: {} monomials, distinct {}, rank {}, embeds {:?}",
                    class.shape, class.weight, rep.monomials, rep.distinct, rep.rank, rep.embeds
                ));
            }
        }
        println!("  {a}: {monomials} basis monomials in {} classes", cls.len());
    }
    report(7, t, &fails);
}
