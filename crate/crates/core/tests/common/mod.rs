#![allow(dead_code)]

use std::path::PathBuf;

use modcurve::ingest::parse_basis;
use modcurve::qseries::parse_rational;
use modcurve::{CuspBasis, QSeries, Rational};
use num_traits::One;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(level: u64) -> CuspBasis {
    let path = fixtures_dir().join(format!("g0n{level}_s2.qexp"));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    parse_basis(&text).unwrap_or_else(|e| panic!("parsing {}: {e}", path.display()))
}

/// One published echelon row: the monomial combination and its expansion.
pub struct GoldenRow {
    pub combination: Vec<(Vec<u32>, Rational)>,
    pub combination_text: String,
    pub expansion: QSeries,
}

pub fn golden_rows(name: &str, genus: usize) -> (usize, Vec<GoldenRow>) {
    let path = fixtures_dir().join("golden").join(name);
    let text = std::fs::read_to_string(&path).expect("golden file");
    let mut prec = None;
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(p) = line.strip_prefix("PREC ") {
            prec = Some(p.trim().parse().expect("PREC value"));
            continue;
        }
        let (comb, exp) = line.split_once('|').expect("'combination | expansion'");
        rows.push(GoldenRow {
            combination: parse_combination(comb.trim(), genus),
            combination_text: comb.trim().to_string(),
            expansion: QSeries::parse(exp.trim(), prec).expect("expansion"),
        });
    }
    (prec.expect("PREC line"), rows)
}

/// Parses sums like `-f1f2 + f0f3 + 2f2f3 - f3^2` into (exponent vector, coefficient) terms.
pub fn parse_combination(text: &str, genus: usize) -> Vec<(Vec<u32>, Rational)> {
    let normalized = text.replace(" - ", " + -").replace(' ', "");
    normalized
        .split('+')
        .filter(|t| !t.is_empty())
        .map(|term| {
            let (negative, term) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let split = term.find('f').expect("a factor f<i>");
            let coeff = if split == 0 {
                Rational::one()
            } else {
                parse_rational(term[..split].trim_end_matches('*')).expect("coefficient")
            };
            let mut exps = vec![0u32; genus];
            for factor in term[split..].split('f').filter(|s| !s.is_empty()) {
                let (idx, pow) = match factor.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().expect("power")),
                    None => (factor, 1),
                };
                exps[idx.parse::<usize>().expect("index")] += pow;
            }
            (exps, if negative { -coeff } else { coeff })
        })
        .collect()
}

/// Evaluates a combination of monomials in the basis series.
pub fn evaluate(combination: &[(Vec<u32>, Rational)], basis: &[QSeries], prec: usize) -> QSeries {
    let mut acc = QSeries::zero(prec);
    for (exps, c) in combination {
        let mut term = QSeries::one(prec);
        for (f, &a) in basis.iter().zip(exps) {
            term = &term * &f.truncate(prec).pow(a);
        }
        acc = &acc + &term.scale(c);
    }
    acc
}
