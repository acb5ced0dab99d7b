//! Text formats: `QEXP` basis files and `SIG` signature files.
//!
//! A basis file looks like
//!
//! ```text
//! QEXP 1
//! # comment lines start with '#'
//! LEVEL 34
//! WEIGHT 2
//! PREC 5
//! FORMS 1
//! FORM f0
//! 0 1 0 0 -2
//! ```
//!
//! with one line of `PREC` rationals (`a` or `a/b`) per form. A signature
//! file has the lines `SIG 1`, `GENUS g`, `CUSPS t` and `ELLIPTIC e1 e2 ..`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::qseries::{format_rational, parse_rational, QSeries, Rational};
use crate::surface::SurfaceSignature;
use crate::weierstrass::{CuspBasis, ModularFormRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisHeader {
    pub level_label: String,
    pub weight: u32,
    pub prec: usize,
    pub form_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisForm {
    pub label: String,
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFile {
    pub header: BasisHeader,
    pub forms: Vec<BasisForm>,
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

struct Lines<'a, I: Iterator<Item = (usize, &'a str)>> {
    inner: I,
    last: usize,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Lines<'a, I> {
    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::parse(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    /// A line `KEY value`; returns the trimmed value.
    fn keyed(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next_line(key)?;
        let (k, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if k != key {
            return Err(Error::parse(n, format!("expected {key}, found {k:?}")));
        }
        Ok((n, rest.trim()))
    }

    fn keyed_number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (n, v) = self.keyed(key)?;
        v.parse()
            .map_err(|_| Error::parse(n, format!("{key} needs a nonnegative integer, found {v:?}")))
    }
}

pub fn parse_basis_file(text: &str) -> Result<BasisFile> {
    let mut lines = Lines {
        inner: content_lines(text),
        last: 0,
    };
    let (n, version) = lines.keyed("QEXP")?;
    if version != "1" {
        return Err(Error::parse(
            n,
            format!("unsupported QEXP version {version:?}"),
        ));
    }
    let (n, level_label) = lines.keyed("LEVEL")?;
    if level_label.is_empty() {
        return Err(Error::parse(n, "empty LEVEL label"));
    }
    let weight = lines.keyed_number("WEIGHT")?;
    let prec: usize = lines.keyed_number("PREC")?;
    if prec == 0 {
        return Err(Error::parse(lines.last, "PREC must be positive"));
    }
    let form_count: usize = lines.keyed_number("FORMS")?;
    let mut forms = Vec::new();
    while let Some((n, line)) = lines.inner.next() {
        lines.last = n;
        let (k, label) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if k != "FORM" {
            return Err(Error::parse(n, format!("expected FORM, found {k:?}")));
        }
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::parse(n, "empty FORM label"));
        }
        let (cn, coeff_line) = lines.next_line("a coefficient line")?;
        let coeffs = coeff_line
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|e| Error::parse(cn, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != prec {
            return Err(Error::Validation(format!(
                "line {cn}: form {label} has {} coefficients, PREC is {prec}",
                coeffs.len()
            )));
        }
        forms.push(BasisForm {
            label: label.to_string(),
            coeffs,
        });
    }
    if forms.len() != form_count {
        return Err(Error::Validation(format!(
            "FORMS is {form_count} but {} forms follow",
            forms.len()
        )));
    }
    Ok(BasisFile {
        header: BasisHeader {
            level_label: level_label.to_string(),
            weight,
            prec,
            form_count,
        },
        forms,
    })
}

impl BasisFile {
    /// Canonical text form; [`parse_basis_file`] inverts it.
    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "QEXP 1\nLEVEL {}\nWEIGHT {}\nPREC {}\nFORMS {}\n",
            h.level_label, h.weight, h.prec, h.form_count
        );
        for f in &self.forms {
            let coeffs: Vec<String> = f.coeffs.iter().map(format_rational).collect();
            let _ = writeln!(out, "FORM {}\n{}", f.label, coeffs.join(" "));
        }
        out
    }

    /// The level as an integer, when the label is one.
    pub fn level(&self) -> Option<u64> {
        self.header.level_label.parse().ok()
    }

    pub fn into_cusp_basis(self) -> Result<CuspBasis> {
        if self.header.weight != 2 {
            return Err(Error::Validation(format!(
                "a cusp basis has weight 2, the file has weight {}",
                self.header.weight
            )));
        }
        let level = self.level();
        let forms = self
            .forms
            .into_iter()
            .map(|f| ModularFormRecord {
                label: f.label,
                series: QSeries::new(f.coeffs),
                weight: 2,
                level,
                cusp_width: 1,
            })
            .collect();
        CuspBasis::new(self.header.level_label, forms)
    }

    pub fn from_cusp_basis(basis: &CuspBasis) -> BasisFile {
        BasisFile {
            header: BasisHeader {
                level_label: basis.level_label.clone(),
                weight: 2,
                prec: basis.prec,
                form_count: basis.genus(),
            },
            forms: basis
                .forms
                .iter()
                .map(|f| BasisForm {
                    label: f.label.clone(),
                    coeffs: f.series.coeffs().to_vec(),
                })
                .collect(),
        }
    }
}

/// Parses a basis file into a [`CuspBasis`]; its genus is the number of forms.
pub fn parse_basis(text: &str) -> Result<CuspBasis> {
    parse_basis_file(text)?.into_cusp_basis()
}

pub fn parse_signature(text: &str) -> Result<SurfaceSignature> {
    let mut lines = Lines {
        inner: content_lines(text),
        last: 0,
    };
    let (n, version) = lines.keyed("SIG")?;
    if version != "1" {
        return Err(Error::parse(
            n,
            format!("unsupported SIG version {version:?}"),
        ));
    }
    let genus = lines.keyed_number("GENUS")?;
    let cusps = lines.keyed_number("CUSPS")?;
    let (n, list) = lines.keyed("ELLIPTIC")?;
    let orders = list
        .split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::parse(n, format!("bad elliptic order {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some((extra, _)) = lines.inner.next() {
        return Err(Error::parse(extra, "unexpected content after ELLIPTIC"));
    }
    SurfaceSignature::new(genus, cusps, orders).map_err(|e| Error::parse(n, e.to_string()))
}

pub fn signature_to_text(sig: &SurfaceSignature) -> String {
    let orders: Vec<String> = sig.elliptic_orders.iter().map(u32::to_string).collect();
    format!(
        "SIG 1\nGENUS {}\nCUSPS {}\nELLIPTIC {}\n",
        sig.genus,
        sig.cusp_count,
        orders.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;
    use proptest::prelude::*;

    const TWO_FORMS: &str = "QEXP 1\n# test\nLEVEL 37\nWEIGHT 2\nPREC 5\nFORMS 2\n\
                             FORM f0\n0 1 0 -1/2 3\nFORM f1\n0 0 1 2 -4\n";

    #[test]
    fn parses_basis() {
        let b = parse_basis(TWO_FORMS).unwrap();
        assert_eq!(b.genus(), 2);
        assert_eq!(b.prec, 5);
        assert_eq!(b.forms[0].series.valuation(), Some(1));
        assert_eq!(
            b.forms[0].series.coeff(3),
            Some(&Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(b.forms[1].level, Some(37));
        assert_eq!(b.forms[1].series.coeff(4), Some(&rat(-4)));
    }

    #[test]
    fn round_trip() {
        let f = parse_basis_file(TWO_FORMS).unwrap();
        assert_eq!(parse_basis_file(&f.to_text()).unwrap(), f);
        let b = f.clone().into_cusp_basis().unwrap();
        assert_eq!(BasisFile::from_cusp_basis(&b), f);
    }

    #[test]
    fn errors_carry_lines() {
        let bad_rational = TWO_FORMS.replace("-1/2", "-1/0");
        assert!(matches!(
            parse_basis(&bad_rational),
            Err(Error::Parse { line: 8, .. })
        ));
        let short = TWO_FORMS.replace("0 0 1 2 -4", "0 0 1 2");
        assert!(matches!(parse_basis(&short), Err(Error::Validation(_))));
        let count = TWO_FORMS.replace("FORMS 2", "FORMS 3");
        assert!(matches!(parse_basis(&count), Err(Error::Validation(_))));
        let magic = TWO_FORMS.replace("QEXP 1", "QEXP 2");
        assert!(matches!(
            parse_basis(&magic),
            Err(Error::Parse { line: 1, .. })
        ));
        let order = TWO_FORMS.replace("WEIGHT 2\nPREC 5", "PREC 5\nWEIGHT 2");
        assert!(matches!(
            parse_basis(&order),
            Err(Error::Parse { line: 4, .. })
        ));
        let truncated = "QEXP 1\nLEVEL 3\nWEIGHT 2\nPREC 1\nFORMS 1\nFORM f\n";
        assert!(matches!(
            parse_basis(truncated),
            Err(Error::Parse { line: 7, .. })
        ));
        let weight4 = TWO_FORMS.replace("WEIGHT 2", "WEIGHT 4");
        assert!(parse_basis_file(&weight4).is_ok());
        assert!(matches!(parse_basis(&weight4), Err(Error::Validation(_))));
        assert_eq!(
            parse_basis("QEXP 1\nLEVEL 3\nWEIGHT 2\nPREC 1\nFORMS 0\n"),
            Err(Error::EmptyInput)
        );
    }

    #[test]
    fn signatures() {
        let s = parse_signature("SIG 1\nGENUS 3\n# c\nCUSPS 4\nELLIPTIC 2 2\n").unwrap();
        assert_eq!(s, SurfaceSignature::new(3, 4, vec![2, 2]).unwrap());
        assert_eq!(parse_signature(&signature_to_text(&s)).unwrap(), s);
        let none = parse_signature("SIG 1\nGENUS 2\nCUSPS 0\nELLIPTIC\n").unwrap();
        assert!(none.elliptic_orders.is_empty());
        assert!(parse_signature("SIG 1\nGENUS 2\nCUSPS 0\nELLIPTIC 1\n").is_err());
        assert!(parse_signature("SIG 1\nGENUS -2\nCUSPS 0\nELLIPTIC\n").is_err());
        assert!(parse_signature("SIG 1\nGENUS 2\nCUSPS 0\nELLIPTIC\nX\n").is_err());
    }

    fn arb_file() -> impl Strategy<Value = BasisFile> {
        (
            "[A-Za-z0-9_()]{1,8}",
            1usize..6,
            prop::collection::vec(
                (
                    "[a-z][a-z0-9]{0,3}",
                    prop::collection::vec((-50i64..50, 1i64..9), 6),
                ),
                0..4,
            ),
        )
            .prop_map(|(level, prec, forms)| BasisFile {
                header: BasisHeader {
                    level_label: level,
                    weight: 2,
                    prec,
                    form_count: forms.len(),
                },
                forms: forms
                    .into_iter()
                    .map(|(label, c)| BasisForm {
                        label,
                        coeffs: c[..prec]
                            .iter()
                            .map(|&(n, d)| Rational::new(n.into(), d.into()))
                            .collect(),
                    })
                    .collect(),
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(f in arb_file()) {
            prop_assert_eq!(parse_basis_file(&f.to_text()).unwrap(), f);
        }

        #[test]
        fn never_panics(text in "(QEXP 1\n)?[A-Z0-9 /#\n-]{0,80}") {
            let _ = parse_basis_file(&text);
            let _ = parse_signature(&text);
        }
    }
}
