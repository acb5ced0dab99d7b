//! Truncated power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^0 .. q^(prec-1)`; its length is
//! its precision, i.e. the series is known modulo `q^prec`. Every operation
//! computes the precision it can guarantee and stores it with the result.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` (optional leading sign, `b > 0`) into a reduced rational.
pub fn parse_rational(token: &str) -> Result<Rational> {
    fn digits(s: &str) -> Option<BigInt> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigInt::parse_bytes(s.as_bytes(), 10)
    }
    let bad = || Error::Syntax(format!("invalid rational {token:?}"));
    let (negative, body) = match token.as_bytes().first() {
        Some(b'-') => (true, &token[1..]),
        Some(b'+') => (false, &token[1..]),
        _ => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n).ok_or_else(bad)?, digits(d).ok_or_else(bad)?),
        None => (digits(body).ok_or_else(bad)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Syntax(format!("zero denominator in {token:?}")));
    }
    let num = if negative { -num } else { num };
    Ok(Rational::new(num, den))
}

/// Formats a rational as `a` or `a/b`, the inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// The series `sum coeffs[n] q^n + O(q^coeffs.len())`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        QSeries { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        QSeries::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(prec: usize) -> Self {
        QSeries::new(vec![Rational::zero(); prec])
    }

    pub fn one(prec: usize) -> Self {
        QSeries::monomial(0, Rational::one(), prec)
    }

    /// `c * q^exponent` known modulo `q^prec`; the term is dropped when `exponent >= prec`.
    pub fn monomial(exponent: usize, c: Rational, prec: usize) -> Self {
        let mut s = QSeries::zero(prec);
        if exponent < prec {
            s.coeffs[exponent] = c;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` when `n` is beyond the known precision.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient; `None` when every stored
    /// coefficient vanishes (the true valuation is then `>= prec`).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the series vanishes modulo its precision.
    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, prec: usize) -> QSeries {
        QSeries::new(self.coeffs[..prec.min(self.prec())].to_vec())
    }

    /// True when both series agree on their common precision.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let p = self.prec().min(other.prec());
        self.coeffs[..p] == other.coeffs[..p]
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The operator `q d/dq`: `a_n` becomes `n a_n`; precision is unchanged.
    pub fn q_derive(&self) -> QSeries {
        QSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * Rational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    /// Ordinary derivative `d/dq`, known modulo `q^(prec-1)`.
    pub fn derivative(&self) -> QSeries {
        QSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a * Rational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    /// Multiplication by `q^n`; precision grows by `n`.
    pub fn mul_q_power(&self, n: usize) -> QSeries {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        QSeries::new(coeffs)
    }

    /// Division by `q^n`; the coefficients below `q^n` must vanish.
    pub fn div_q_power(&self, n: usize) -> Result<QSeries> {
        if let Some(v) = self.valuation() {
            if v < n {
                return Err(Error::Valuation {
                    dividend: v,
                    divisor: n,
                });
            }
        }
        Ok(QSeries::new(
            self.coeffs.get(n..).map(<[_]>::to_vec).unwrap_or_default(),
        ))
    }

    /// Truncated power `self^e` by repeated squaring, at precision `self.prec()`.
    pub fn pow(&self, mut e: u32) -> QSeries {
        let mut result = QSeries::one(self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Requires `valuation(divisor) <= valuation(self)`; the result is known
    /// modulo `q^(min(prec) - valuation(divisor))`.
    pub fn exact_div(&self, divisor: &QSeries) -> Result<QSeries> {
        let v = divisor.valuation().ok_or(Error::DivisionByZeroSeries)?;
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(Error::Valuation {
                    dividend: va,
                    divisor: v,
                });
            }
        }
        let p = self.prec().min(divisor.prec());
        let out_prec = p.saturating_sub(v);
        let num = &self.coeffs[v.min(p)..p];
        let den = &divisor.coeffs[v..p];
        let inv_lead = den[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(out_prec);
        for n in 0..out_prec {
            let mut acc = num[n].clone();
            for i in 1..=n {
                if !den[i].is_zero() && !out[n - i].is_zero() {
                    acc -= &den[i] * &out[n - i];
                }
            }
            out.push(acc * &inv_lead);
        }
        Ok(QSeries::new(out))
    }

    /// Parses text such as `q^{2}-4q^{5}+3/2*q^7 + O(q^11)`.
    ///
    /// Exponents may be written `q^n` or `q^{n}`, a coefficient may be joined
    /// to `q` with or without `*`. The `O(q^n)` term fixes the precision; when
    /// it is absent `default_prec` is used.
    pub fn parse(text: &str, default_prec: Option<usize>) -> Result<QSeries> {
        let terms = ExpansionParser::new(text).terms()?;
        let prec = match (terms.order, default_prec) {
            (Some(p), _) => p,
            (None, Some(p)) => p,
            (None, None) => {
                return Err(Error::Syntax(
                    "no O(q^n) term and no default precision".into(),
                ))
            }
        };
        let mut s = QSeries::zero(prec);
        for (exp, c) in terms.terms {
            if exp >= prec {
                return Err(Error::Syntax(format!(
                    "term q^{exp} lies beyond the precision {prec}"
                )));
            }
            s.coeffs[exp] += c;
        }
        Ok(s)
    }
}

fn add_coeffs(a: &QSeries, b: &QSeries, sign: bool) -> QSeries {
    QSeries::new(
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect(),
    )
}

/// Common denominator form: `s = nums / den` coefficientwise.
fn integer_parts(s: &QSeries, prec: usize) -> (Vec<BigInt>, BigInt) {
    let coeffs = &s.coeffs[..prec];
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() {
            acc
        } else {
            acc.lcm(c.denom())
        }
    });
    let nums = if den.is_one() {
        coeffs.iter().map(|c| c.numer().clone()).collect()
    } else {
        coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect()
    };
    (nums, den)
}

fn mul_series(a: &QSeries, b: &QSeries) -> QSeries {
    let p = a.prec().min(b.prec());
    let (an, ad) = integer_parts(a, p);
    let (bn, bd) = integer_parts(b, p);
    let mut acc = vec![BigInt::zero(); p];
    for (i, x) in an.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bn[..p - i].iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
    let den = ad * bd;
    QSeries::new(
        acc.into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect(),
    )
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(self, rhs)
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_coeffs(a, b, true));
forward_binop!(Sub, sub, |a, b| add_coeffs(a, b, false));
forward_binop!(Mul, mul, mul_series);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match n {
                0 => write!(f, "{}", format_rational(&abs))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", format_rational(&abs))?;
                    }
                    if n == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.prec())
    }
}

struct ParsedTerms {
    terms: Vec<(usize, Rational)>,
    order: Option<usize>,
}

struct ExpansionParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExpansionParser<'a> {
    fn new(text: &'a str) -> Self {
        ExpansionParser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Syntax(format!("{what} at byte {}", self.pos))
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| BigInt::parse_bytes(&self.src[start..self.pos], 10))?
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let braced = self.eat(b'{');
        let n = self.number().ok_or_else(|| self.err("expected exponent"))?;
        if braced && !self.eat(b'}') {
            return Err(self.err("expected '}'"));
        }
        usize::try_from(n).map_err(|_| self.err("exponent too large"))
    }

    fn terms(mut self) -> Result<ParsedTerms> {
        let mut terms = Vec::new();
        let mut order = None;
        let mut first = true;
        while self.peek().is_some() {
            if order.is_some() {
                return Err(self.err("text after O-term"));
            }
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            if self.eat(b'O') {
                if negative || !self.eat(b'(') {
                    return Err(self.err("malformed O-term"));
                }
                let p = if self.eat(b'q') {
                    self.exponent()?
                } else if self.number().is_some_and(|n| n.is_one()) {
                    0
                } else {
                    return Err(self.err("malformed O-term"));
                };
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                order = Some(p);
                continue;
            }
            let mut coeff = match self.number() {
                Some(n) => {
                    let mut c = Rational::from_integer(n);
                    if self.eat(b'/') {
                        let d = self
                            .number()
                            .ok_or_else(|| self.err("expected denominator"))?;
                        if d.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        c /= Rational::from_integer(d);
                    }
                    Some(c)
                }
                None => None,
            };
            let exp = if coeff.is_some() {
                let star = self.eat(b'*');
                if self.eat(b'q') {
                    self.exponent()?
                } else if star {
                    return Err(self.err("expected 'q' after '*'"));
                } else {
                    0
                }
            } else if self.eat(b'q') {
                self.exponent()?
            } else {
                return Err(self.err("expected a term"));
            };
            let c = coeff.take().unwrap_or_else(Rational::one);
            terms.push((exp, if negative { -c } else { c }));
        }
        Ok(ParsedTerms { terms, order })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64]) -> QSeries {
        QSeries::from_integers(c.iter().copied())
    }

    // q - 24q^2 + 252q^3 - 1472q^4 + 4830q^5
    fn delta6() -> QSeries {
        s(&[0, 1, -24, 252, -1472, 4830])
    }

    #[test]
    fn add_takes_common_precision() {
        assert_eq!(&s(&[1, 2, 0]) + &s(&[0, 3]), s(&[1, 5]));
        let a = s(&[4, -1, 7]);
        assert_eq!(&a + &QSeries::zero(3), a);
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1, 0]) * &s(&[1, -1, 0]), s(&[1, 0, -1]));
        let d = delta6();
        let d2 = &d * &d;
        assert_eq!(d2.valuation(), Some(2));
        assert_eq!(d2.coeff(2), Some(&rat(1)));
        assert_eq!(&d * &QSeries::one(6), d);
    }

    #[test]
    fn q_derive_examples() {
        assert_eq!(s(&[1, 1, 1]).q_derive(), s(&[0, 1, 2]));
        assert!(QSeries::one(5).q_derive().is_zero());
        assert_eq!(delta6().q_derive().truncate(4), s(&[0, 1, -48, 756]));
    }

    #[test]
    fn valuation_examples() {
        let x = s(&[0, 0, 1, 0, 0, -4, -4]);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(QSeries::zero(10).valuation(), None);
        assert_eq!(delta6().valuation(), Some(1));
    }

    #[test]
    fn pow_examples() {
        let a = s(&[3, 5, 7]);
        assert_eq!(a.pow(0), QSeries::one(3));
        assert_eq!(s(&[1, 1, 0]).pow(2), s(&[1, 2, 1]));
        assert_eq!(a.pow(5), &(&(&(&a * &a) * &a) * &a) * &a);
    }

    #[test]
    fn exact_div_examples() {
        let q = QSeries::monomial(1, rat(1), 4);
        assert_eq!(s(&[0, 0, 1, 1]).exact_div(&q).unwrap(), s(&[0, 1, 1]));
        let d = delta6();
        let d3 = d.pow(3);
        let quotient = d3.exact_div(&d).unwrap();
        assert_eq!(quotient.prec(), 5);
        assert!(quotient.agrees_with(&d.pow(2)));
    }

    #[test]
    fn exact_div_errors() {
        let z = QSeries::zero(5);
        assert_eq!(s(&[1, 2]).exact_div(&z), Err(Error::DivisionByZeroSeries));
        let q2 = QSeries::monomial(2, rat(1), 5);
        assert_eq!(
            s(&[0, 1, 0, 0, 0]).exact_div(&q2),
            Err(Error::Valuation {
                dividend: 1,
                divisor: 2
            })
        );
        // A dividend vanishing to its precision divides by anything nonzero.
        assert!(QSeries::zero(5).exact_div(&q2).unwrap().is_zero());
    }

    #[test]
    fn q_power_shifts() {
        let a = s(&[0, 0, 3, 4]);
        assert_eq!(a.div_q_power(2).unwrap(), s(&[3, 4]));
        assert!(a.div_q_power(3).is_err());
        assert_eq!(s(&[3, 4]).mul_q_power(2), a);
        assert_eq!(s(&[1, 2, 3]).derivative(), s(&[2, 6]));
    }

    #[test]
    fn rationals_parse_and_print() {
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert_eq!(parse_rational("+7").unwrap(), rat(7));
        for bad in ["", "-", "1/", "/2", "1/0", "1/-2", "a", "1.5", "--1", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert_eq!(
            format_rational(&Rational::new(6.into(), (-4).into())),
            "-3/2"
        );
    }

    #[test]
    fn display_and_parse() {
        let a = QSeries::new(vec![
            rat(1),
            rat(-1),
            rat(0),
            Rational::new(3.into(), 2.into()),
        ]);
        assert_eq!(a.to_string(), "1 - q + 3/2*q^3 + O(q^4)");
        assert_eq!(QSeries::parse(&a.to_string(), None).unwrap(), a);
        assert_eq!(QSeries::zero(3).to_string(), "O(q^3)");
        let braced = QSeries::parse("q^{2}-4q^{5}-4q^{6}+12q^{8}", Some(9)).unwrap();
        assert_eq!(braced, s(&[0, 0, 1, 0, 0, -4, -4, 0, 12]));
        assert!(QSeries::parse("q^2", None).is_err());
        assert!(QSeries::parse("q^9", Some(5)).is_err());
        assert!(QSeries::parse("q q", Some(5)).is_err());
        assert!(QSeries::parse("O(q^3) + q", None).is_err());
    }

    fn arb_series(prec: usize) -> impl Strategy<Value = QSeries> {
        prop::collection::vec((-20i64..20, 1i64..4), prec).prop_map(|v| {
            QSeries::new(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(8), b in arb_series(7), c in arb_series(8)) {
            prop_assert!(((&a + &b) + &c).agrees_with(&(&a + &(&b + &c))));
            prop_assert!((&a * &(&b + &c)).agrees_with(&(&(&a * &b) + &(&a * &c))));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn q_derive_is_a_derivation(a in arb_series(9), b in arb_series(9)) {
            let lhs = (&a * &b).q_derive();
            let rhs = &(&a.q_derive() * &b) + &(&a * &b.q_derive());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn valuation_is_additive(a in arb_series(10), b in arb_series(10)) {
            if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
                if va + vb < 10 {
                    prop_assert_eq!((&a * &b).valuation(), Some(va + vb));
                }
            }
        }

        #[test]
        fn exact_div_round_trip(a in arb_series(10), b in arb_series(10), shift in 0usize..3) {
            let b = b.mul_q_power(shift).truncate(10);
            let a = (&a * &b).truncate(10);
            if let Some(v) = b.valuation() {
                let c = a.exact_div(&b).unwrap();
                prop_assert_eq!(c.prec(), 10 - v);
                prop_assert!((&b * &c).agrees_with(&a));
            }
        }

        #[test]
        fn display_round_trips(a in arb_series(6)) {
            prop_assert_eq!(QSeries::parse(&a.to_string(), None).unwrap(), a);
        }
    }
}
