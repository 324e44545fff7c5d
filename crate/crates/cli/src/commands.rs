use std::cmp::Ordering;

use serde_json::{json, Value};

use semiflag_core::basis::{
    basis_counts, enumerate_basis, leading_monomial_basis_check, verify_all, verify_presentation, NumericOptions,
    PresentationReport, RankMode,
};
use semiflag_core::characters::{component_character, local_weyl_character, weyl_character, PolynomialStatus, QSeries, WeightVectorR, WeightedQSeries};
use semiflag_core::combinatorics::{
    allowed_sets, compare_products, forbidden_by_definition, forbidden_by_pair, is_allowed, letter_token, snake, Origin,
};
use semiflag_core::oracle::sample_points;
use semiflag_core::rational::to_text;
use semiflag_core::relations::{
    combination_to_json, generate_relations, semiinf_pluecker, straighten_forbidden, straighten_product,
    verify_relation_numeric, verify_relation_symbolic, verify_straightened_product, verify_straightening_numeric,
    RelationRecord,
};
use semiflag_core::{Alphabet, Error, Kind, RowSet};

use crate::{BasisCmd, CharacterCmd, Cli, Command, Format, Group, ModeArg, OracleCmd, OrderCmd, RelationsCmd, StraightenCmd};

pub struct Outcome {
    pub text: String,
    pub success: bool,
}

#[derive(Debug)]
pub struct CmdError {
    pub code: u8,
    pub message: String,
}

type CmdResult<T> = std::result::Result<T, CmdError>;

fn usage(message: impl Into<String>) -> CmdError {
    CmdError { code: 2, message: message.into() }
}

fn core(context: &str, e: Error) -> CmdError {
    let code = match e {
        Error::Internal(_) | Error::SingularSystem(_) | Error::NonTermination(_) => 1,
        _ => 2,
    };
    let message = if context.is_empty() { e.to_string() } else { format!("{context}: {e}") };
    CmdError { code, message }
}

trait Context<T> {
    fn ctx(self, context: &str) -> CmdResult<T>;
}

impl<T> Context<T> for semiflag_core::Result<T> {
    fn ctx(self, context: &str) -> CmdResult<T> {
        self.map_err(|e| core(context, e))
    }
}

// What a command produced, before formatting.
struct Report {
    json: Value,
    plain: Option<String>,
    csv: Option<String>,
    success: bool,
}

impl Report {
    fn new(json: Value, success: bool) -> Self {
        Report { json, plain: None, csv: None, success }
    }

    fn plain(mut self, text: String) -> Self {
        self.plain = Some(text);
        self
    }

    fn csv(mut self, text: String) -> Self {
        self.csv = Some(text);
        self
    }

    fn render(self, format: Format) -> CmdResult<Outcome> {
        let text = match format {
            Format::Json => format!("{}\n", self.json),
            Format::Plain => match self.plain {
                Some(p) => p,
                None => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json")),
            },
            Format::Csv => self.csv.ok_or_else(|| usage("csv output is not available for this command"))?,
        };
        Ok(Outcome { text, success: self.success })
    }
}

fn alphabet(g: &Group) -> CmdResult<Alphabet> {
    Alphabet::new(g.kind.into(), g.n).ctx("--n")
}

fn parse_set(a: &Alphabet, flag: &str, text: &str) -> CmdResult<RowSet> {
    a.parse_set(text).ctx(flag)
}

/// Comma-separated nonnegative integers.
fn parse_lambda(text: &str) -> CmdResult<Vec<u32>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in text.split(',') {
        let t = tok.trim();
        let lead = tok.len() - tok.trim_start().len();
        out.push(t.parse::<u32>().map_err(|_| {
            usage(format!("--lambda: parse error at position {}: expected a nonnegative integer, found {t:?}", pos + lead))
        })?);
        pos += tok.len() + 1;
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> CmdResult<Outcome> {
    let report = match &cli.command {
        Command::Order { cmd: OrderCmd::Compare { group, lhs, rhs } } => order_compare(group, lhs, rhs)?,
        Command::Snake { kind, n, lhs, rhs } => snake_cmd((*kind).into(), *n, lhs, rhs)?,
        Command::Allowed { n, set, size } => allowed_cmd(*n, set.as_deref(), *size)?,
        Command::Relations { cmd } => relations_cmd(cmd, cli.seed)?,
        Command::Straighten { cmd } => straighten_cmd(cmd, cli.seed)?,
        Command::Character { cmd } => character_cmd(cmd)?,
        Command::Basis { cmd } => basis_cmd(cmd, cli.seed)?,
        Command::Oracle { cmd: OracleCmd::Sample { group, trunc, count } } => {
            let a = alphabet(group)?;
            let pts: Vec<Value> = sample_points(a, *trunc, cli.seed, *count).iter().map(|p| p.to_json()).collect();
            Report::new(Value::Array(pts), true)
        }
    };
    report.render(cli.format)
}

fn order_compare(group: &Group, lhs: &str, rhs: &str) -> CmdResult<Report> {
    let a = alphabet(group)?;
    let p = a.parse_product(lhs).ctx("--lhs")?;
    let q = a.parse_product(rhs).ctx("--rhs")?;
    let word = match compare_products(&p, &q) {
        Ordering::Greater => "GT",
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
    };
    Ok(Report::new(json!(word), true).plain(format!("{word}\n")))
}

fn infer_n(lhs: &str, rhs: &str) -> CmdResult<usize> {
    let mut top = 0usize;
    let mut len = 0usize;
    for (flag, text) in [("--lhs", lhs), ("--rhs", rhs)] {
        // compact digits are read with the largest alphabet that allows them
        let a = if text.contains(',') { Alphabet::type_a(60) } else { Alphabet::type_a(9) }.ctx("")?;
        let s = a.parse_set(text).ctx(flag)?;
        top = top.max(*s.letters().last().unwrap_or(&0) as usize);
        len = len.max(s.len());
    }
    Ok(top.max(len + 1))
}

fn snake_cmd(kind: Kind, n: Option<usize>, lhs: &str, rhs: &str) -> CmdResult<Report> {
    let n = match (n, kind) {
        (Some(n), _) => n,
        (None, Kind::A) => infer_n(lhs, rhs)?,
        (None, Kind::C) => return Err(usage("--n is required in type C")),
    };
    let a = Alphabet::new(kind, n).ctx("--n")?;
    let i = parse_set(&a, "--lhs", lhs)?;
    let j = parse_set(&a, "--rhs", rhs)?;
    let sn = snake(&i, &j);
    let seq: Vec<Value> = match kind {
        Kind::A => sn.sequence.iter().map(|(x, _)| json!(x)).collect(),
        Kind::C => sn.sequence.iter().map(|(x, _)| json!(letter_token(kind, *x))).collect(),
    };
    let plain = sn
        .sequence
        .iter()
        .map(|(x, o)| format!("{}{}", letter_token(kind, *x), if *o == Origin::I { "" } else { "'" }))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Report::new(json!({"S": seq, "k": sn.k}), true).plain(format!("S = {plain}\nk = {}\n", sn.k)))
}

fn allowed_cmd(n: usize, set: Option<&str>, size: Option<usize>) -> CmdResult<Report> {
    let a = Alphabet::type_c(n).ctx("--n")?;
    if let Some(text) = set {
        let s = parse_set(&a, "--set", text)?;
        let ok = is_allowed(&s);
        let j = json!({
            "set": s.to_string(),
            "allowed": ok,
            "forbiddenByDefinition": forbidden_by_definition(&s),
            "forbiddenByPair": forbidden_by_pair(&s),
        });
        return Ok(Report::new(j, true).plain(format!("{s}: {}\n", if ok { "allowed" } else { "forbidden" })));
    }
    let sizes: Vec<usize> = match size {
        Some(l) if l == 0 || l > n => return Err(usage(format!("--size must lie in 1..={n}"))),
        Some(l) => vec![l],
        None => (1..=n).collect(),
    };
    let mut by_size = serde_json::Map::new();
    let mut plain = String::new();
    for l in sizes {
        let sets: Vec<String> = allowed_sets(&a, l).iter().map(|s| s.to_string()).collect();
        plain.push_str(&format!("size {l}: {} sets\n", sets.len()));
        for s in &sets {
            plain.push_str(&format!("  {s}\n"));
        }
        by_size.insert(l.to_string(), json!({"count": sets.len(), "sets": sets}));
    }
    Ok(Report::new(json!({"type": "C", "n": n, "sizes": by_size}), true).plain(plain))
}

fn check_record(rel: &RelationRecord, trunc: usize, points: usize, seed: u64) -> Value {
    let vanishes = match rel.alphabet.kind() {
        Kind::A => verify_relation_symbolic(rel, trunc),
        Kind::C => verify_relation_numeric(rel, &sample_points(rel.alphabet, trunc, seed, points)),
    };
    json!({
        "pair": [rel.pair.0.to_string(), rel.pair.1.to_string()],
        "kPrime": rel.k_prime,
        "vanishes": vanishes,
        "pairLeads": rel.pair_leads(),
    })
}

fn relations_cmd(cmd: &RelationsCmd, seed: u64) -> CmdResult<Report> {
    match cmd {
        RelationsCmd::Generate { group, max_size, trunc } => {
            let a = alphabet(group)?;
            let rep = generate_relations(&a, *max_size, *trunc);
            let ok = rep.failures.is_empty() && rep.sharpness_failures.is_empty();
            let j = json!({
                "relations": rep.relations.iter().map(RelationRecord::to_json).collect::<Vec<_>>(),
                "failures": rep.failures.iter().map(|(r, why)| json!({"relation": r.to_json(), "reason": why})).collect::<Vec<_>>(),
                "sharpnessFailures": rep.sharpness_failures.iter().map(|(i, j)| json!([i.to_string(), j.to_string()])).collect::<Vec<_>>(),
            });
            let plain = format!(
                "{} relations verified, {} failures, {} sharpness failures\n",
                rep.relations.len(),
                rep.failures.len(),
                rep.sharpness_failures.len()
            );
            Ok(Report::new(j, ok).plain(plain))
        }
        RelationsCmd::Verify { input, kind, n, lhs, rhs, k_prime, trunc, points } => {
            let records: Vec<RelationRecord> = if let Some(path) = input {
                let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--input: {e}")))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("--input: {e}")))?;
                let items = match v {
                    Value::Array(xs) => xs,
                    other => vec![other],
                };
                items.iter().map(|x| RelationRecord::from_json(x).ctx("--input")).collect::<CmdResult<_>>()?
            } else {
                let (Some(l), Some(r)) = (lhs, rhs) else {
                    return Err(usage("give --input or both --lhs and --rhs"));
                };
                let n = n.ok_or_else(|| usage("--n is required with --lhs/--rhs"))?;
                let a = Alphabet::new((*kind).into(), n).ctx("--n")?;
                let i = parse_set(&a, "--lhs", l)?;
                let j = parse_set(&a, "--rhs", r)?;
                let k = snake(&i, &j).k;
                if k == 0 {
                    return Err(core("", Error::Comparable(i.to_string(), j.to_string())));
                }
                let orders: Vec<usize> = match k_prime {
                    Some(kp) => vec![*kp],
                    None => (0..k).collect(),
                };
                orders.into_iter().map(|kp| semiinf_pluecker(&a, &i, &j, kp).ctx("--k-prime")).collect::<CmdResult<_>>()?
            };
            let results: Vec<Value> = records.iter().map(|r| check_record(r, *trunc, *points, seed)).collect();
            let ok = results.iter().all(|r| r["vanishes"] == json!(true) && r["pairLeads"] == json!(true));
            let plain = results
                .iter()
                .map(|r| format!("{} {} k'={} vanishes={} leads={}\n", r["pair"][0], r["pair"][1], r["kPrime"], r["vanishes"], r["pairLeads"]))
                .collect();
            Ok(Report::new(json!({"checked": results.len(), "verified": ok, "results": results}), ok).plain(plain))
        }
    }
}

fn straighten_cmd(cmd: &StraightenCmd, seed: u64) -> CmdResult<Report> {
    match cmd {
        StraightenCmd::Minor { n, set, trunc, points } => {
            let a = Alphabet::type_c(*n).ctx("--n")?;
            let j = parse_set(&a, "--set", set)?;
            let combo = straighten_forbidden(&a, &j).ctx("--set")?;
            let pts = sample_points(a, *trunc, seed, *points);
            let ok = verify_straightening_numeric(&j, &combo, &pts);
            let mut out = combination_to_json(&a, &j, &combo);
            out["verified"] = json!(ok);
            out["points"] = json!(points);
            out["seed"] = json!(seed);
            let plain = format!(
                "m_{{{j}}} = {}\nverified at {points} points: {ok}\n",
                combo.iter().map(|(s, c)| format!("({}) m_{{{s}}}", to_text(c))).collect::<Vec<_>>().join(" + ")
            );
            Ok(Report::new(out, ok).plain(plain))
        }
        StraightenCmd::Product { group, lhs, rhs } => {
            let a = alphabet(group)?;
            let i = parse_set(&a, "--lhs", lhs)?;
            let j = parse_set(&a, "--rhs", rhs)?;
            let combo = straighten_product(&a, &i, &j).ctx("--lhs/--rhs")?;
            let ok = verify_straightened_product(&a, &i, &j, &combo);
            let terms: Vec<Value> = combo
                .iter()
                .map(|((l, r), c)| json!({"coeff": to_text(c), "left": l.to_string(), "right": r.to_string()}))
                .collect();
            let plain = format!(
                "m_{{{i}}} m_{{{j}}} = {}\nverified: {ok}\n",
                combo.iter().map(|((l, r), c)| format!("({}) m_{{{l}}} m_{{{r}}}", to_text(c))).collect::<Vec<_>>().join(" + ")
            );
            let out = json!({"type": a.kind(), "n": a.n(), "lhs": i.to_string(), "rhs": j.to_string(), "terms": terms, "verified": ok});
            Ok(Report::new(out, ok).plain(plain))
        }
    }
}

fn series_text(s: &QSeries) -> String {
    let mut parts = Vec::new();
    for (d, &c) in s.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        parts.push(match d {
            0 => c.to_string(),
            1 => format!("{c}q"),
            _ => format!("{c}q^{d}"),
        });
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("{} + O(q^{})", parts.join(" + "), s.qmax() + 1)
}

fn weighted_plain(w: &WeightedQSeries) -> String {
    w.terms
        .iter()
        .map(|(wt, s)| format!("{wt:?}: {}\n", series_text(s)))
        .collect()
}

fn character_cmd(cmd: &CharacterCmd) -> CmdResult<Report> {
    match cmd {
        CharacterCmd::Component { group, r, qmax } => {
            let a = alphabet(group)?;
            let rv = WeightVectorR::from_product(&a, &a.parse_product(r).ctx("--r")?).ctx("--r")?;
            let s = component_character(&rv, *qmax);
            let ok = s.is_nonnegative();
            let csv: String = std::iter::once("q,coeff\n".to_string())
                .chain(s.coeffs().iter().enumerate().map(|(d, c)| format!("{d},{c}\n")))
                .collect();
            let out = json!({"type": a.kind(), "n": a.n(), "r": rv.to_text(), "qmax": qmax, "coeffs": s.coeffs()});
            Ok(Report::new(out, ok).plain(format!("{}\n", series_text(&s))).csv(csv))
        }
        CharacterCmd::Weyl { group, lambda, qmax } => {
            let a = alphabet(group)?;
            let l = parse_lambda(lambda)?;
            let w = weyl_character(&a, &l, *qmax).ctx("--lambda")?;
            let mut out = w.to_json();
            out["lambda"] = json!(l);
            Ok(Report::new(out, w.is_nonnegative()).plain(weighted_plain(&w)).csv(w.to_csv()))
        }
        CharacterCmd::Local { group, lambda, qmax } => {
            let a = alphabet(group)?;
            let l = parse_lambda(lambda)?;
            let loc = local_weyl_character(&a, &l, *qmax).ctx("--lambda")?;
            let certified = loc.status == PolynomialStatus::Certified;
            let mut out = loc.to_json();
            out["lambda"] = json!(l);
            let head = if certified {
                format!("dimension {} (certified, degree bound {})\n", loc.dimension(), loc.degree_bound)
            } else {
                format!("inconclusive: degree bound {} reaches qmax {}\n", loc.degree_bound, qmax)
            };
            let ok = certified && loc.series.is_nonnegative();
            Ok(Report::new(out, ok).plain(head + &weighted_plain(&loc.series)).csv(loc.series.to_csv()))
        }
    }
}

fn report_csv(rep: &PresentationReport) -> String {
    let mut out = String::from("shape,weight,jetDegree,basisCount,charCoeff,rank,verdict\n");
    for e in &rep.entries {
        let join = |v: Vec<String>| v.join(" ");
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            join(e.multidegree.shape.iter().map(|x| x.to_string()).collect()),
            join(e.multidegree.weight.iter().map(|x| x.to_string()).collect()),
            e.jet_degree,
            e.basis_count,
            e.char_coeff,
            e.rank,
            serde_json::to_value(e.verdict).expect("verdict").as_str().unwrap_or_default()
        ));
    }
    out
}

fn basis_cmd(cmd: &BasisCmd, seed: u64) -> CmdResult<Report> {
    match cmd {
        BasisCmd::Enumerate { group, r, dmax } => {
            let a = alphabet(group)?;
            let rv = WeightVectorR::from_product(&a, &a.parse_product(r).ctx("--r")?).ctx("--r")?;
            let monos = enumerate_basis(&rv, *dmax);
            let counts = basis_counts(&rv, *dmax, Default::default());
            let ch = component_character(&rv, *dmax);
            let distinct = leading_monomial_basis_check(&rv, *dmax);
            let agree = counts.iter().zip(ch.coeffs()).all(|(x, y)| *x as i64 == *y);
            let out = json!({
                "type": a.kind(),
                "n": a.n(),
                "r": rv.to_text(),
                "dmax": dmax,
                "counts": counts,
                "character": ch.coeffs(),
                "leadingDistinct": distinct,
                "monomials": monos.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            });
            let plain: String = monos.iter().map(|m| format!("{m}\n")).collect();
            Ok(Report::new(out, agree && distinct).plain(plain))
        }
        BasisCmd::Verify { group, r, max_total, dmax, mode, samples } => {
            let a = alphabet(group)?;
            let mode = match mode {
                Some(ModeArg::Symbolic) => RankMode::Symbolic,
                Some(ModeArg::Numeric) => RankMode::Numeric,
                None if a.kind() == Kind::A => RankMode::Symbolic,
                None => RankMode::Numeric,
            };
            let opts = NumericOptions { seed, min_samples: *samples, ..Default::default() };
            let rep = match (r, max_total) {
                (Some(text), _) => {
                    let rv = WeightVectorR::from_product(&a, &a.parse_product(text).ctx("--r")?).ctx("--r")?;
                    verify_presentation(&a, &rv, *dmax, mode, opts).ctx("")?
                }
                (None, Some(t)) => verify_all(&a, *t, *dmax, mode, opts).ctx("")?,
                (None, None) => return Err(usage("give --r or --max-total")),
            };
            let plain: String = rep
                .entries
                .iter()
                .map(|e| {
                    format!(
                        "shape {:?} weight {:?} d={}: count {} char {} rank {} {:?}\n",
                        e.multidegree.shape, e.multidegree.weight, e.jet_degree, e.basis_count, e.char_coeff, e.rank, e.verdict
                    )
                })
                .collect();
            let csv = report_csv(&rep);
            Ok(Report::new(rep.to_json(), rep.all_agree()).plain(plain).csv(csv))
        }
    }
}
