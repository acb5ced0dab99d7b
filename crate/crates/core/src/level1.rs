//! Modular forms for `SL_2(Z)`: Eisenstein series, the discriminant `Delta`,
//! the monomial basis `E4^a E6^b` of `M_m`, and the Wronskians of the
//! monomials `(E4^3)^u (E6^2)^(t-u)`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::RatMatrix;
use crate::qseries::{rat, QSeries, Rational};
use crate::wronskian::q_wronskian;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level1Form {
    pub series: QSeries,
    pub weight: u32,
}

impl Level1Form {
    pub fn new(series: QSeries, weight: u32) -> Result<Self> {
        if !weight.is_multiple_of(2) {
            return Err(Error::Domain(format!("odd weight {weight}")));
        }
        Ok(Level1Form { series, weight })
    }
}

/// The monomial `E4^alpha * E6^beta`, of weight `4 alpha + 6 beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialExponent {
    pub alpha: u32,
    pub beta: u32,
}

impl MonomialExponent {
    pub fn weight(&self) -> u32 {
        4 * self.alpha + 6 * self.beta
    }

    pub fn series(&self, prec: usize) -> QSeries {
        let e4 = eisenstein_e4(prec).series.pow(self.alpha);
        let e6 = eisenstein_e6(prec).series.pow(self.beta);
        &e4 * &e6
    }
}

/// Sum of `d^k` over the positive divisors `d` of `n`.
pub fn sigma(n: i64, k: u32) -> Result<BigInt> {
    if n <= 0 {
        return Err(Error::Domain(format!("sigma({n}, {k}) needs n >= 1")));
    }
    let mut total = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(total)
}

fn eisenstein(prec: usize, k: u32, factor: i64, weight: u32) -> Level1Form {
    let coeffs = (0..prec)
        .map(|n| {
            if n == 0 {
                Rational::one()
            } else {
                Rational::from_integer(sigma(n as i64, k).expect("n >= 1") * factor)
            }
        })
        .collect();
    Level1Form {
        series: QSeries::new(coeffs),
        weight,
    }
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(prec: usize) -> Level1Form {
    eisenstein(prec, 3, 240, 4)
}

/// `E6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein_e6(prec: usize) -> Level1Form {
    eisenstein(prec, 5, -504, 6)
}

/// `Delta = (E4^3 - E6^2) / 1728`.
pub fn delta(prec: usize) -> Level1Form {
    let e4 = eisenstein_e4(prec).series;
    let e6 = eisenstein_e6(prec).series;
    let diff = &e4.pow(3) - &e6.pow(2);
    Level1Form {
        series: diff.scale(&Rational::new(BigInt::one(), BigInt::from(1728))),
        weight: 12,
    }
}

/// `q * prod (1 - q^n)^24`, computed independently of the Eisenstein series.
pub fn delta_product_oracle(prec: usize) -> QSeries {
    // Coefficients of prod_{n>=1} (1 - q^n) up to q^(prec-1), then the 24th power.
    let mut eta = vec![BigInt::zero(); prec];
    if prec > 0 {
        eta[0] = BigInt::one();
    }
    for n in 1..prec {
        for i in (n..prec).rev() {
            let t = eta[i - n].clone();
            eta[i] -= t;
        }
    }
    let e = QSeries::from_integers(eta).pow(24);
    e.mul_q_power(1).truncate(prec)
}

fn check_even(m: i64) -> Result<()> {
    if m < 0 || m % 2 != 0 {
        return Err(Error::Domain(format!(
            "weight {m} must be even and nonnegative"
        )));
    }
    Ok(())
}

/// Dimension of `M_m(SL_2(Z))`.
pub fn dim_m(m: i64) -> Result<usize> {
    check_even(m)?;
    let base = (m / 12) as usize;
    Ok(if m % 12 == 2 { base } else { base + 1 })
}

/// All `(alpha, beta)` with `4 alpha + 6 beta = m`, by decreasing `alpha`.
pub fn m_basis(m: i64) -> Result<Vec<MonomialExponent>> {
    check_even(m)?;
    if m == 2 {
        return Err(Error::Domain(
            "there are no modular forms of weight 2".into(),
        ));
    }
    let m = m as u32;
    Ok((0..=m / 4)
        .rev()
        .filter(|a| (m - 4 * a).is_multiple_of(6))
        .map(|alpha| MonomialExponent {
            alpha,
            beta: (m - 4 * alpha) / 6,
        })
        .collect())
}

/// Coordinates of `f` in the monomial basis of its weight.
///
/// The coefficients come from the first `dim` coefficients of `f`; every
/// further known coefficient must then agree, so a successful result
/// certifies membership in `M_weight` to the precision of `f`.
pub fn express_in_monomials(f: &Level1Form) -> Result<Vec<(MonomialExponent, Rational)>> {
    let basis = m_basis(i64::from(f.weight))?;
    let dim = basis.len();
    let prec = f.series.prec();
    if prec < dim + 1 {
        return Err(Error::Precision(format!(
            "weight {} needs at least {} coefficients, got {prec}",
            f.weight,
            dim + 1
        )));
    }
    let monomials: Vec<QSeries> = basis.iter().map(|e| e.series(prec)).collect();
    let square: Vec<Rational> = (0..dim)
        .flat_map(|i| monomials.iter().map(move |s| s.coeffs()[i].clone()))
        .collect();
    let square = RatMatrix::new(dim, dim, square)?;
    let coords = square
        .solve(&f.series.coeffs()[..dim])?
        .expect("monomials are independent on their first dim coefficients");
    let mut combination = QSeries::zero(prec);
    for (s, c) in monomials.iter().zip(&coords) {
        combination = &combination + &s.scale(c);
    }
    if let Some(n) = (&combination - &f.series).valuation() {
        return Err(Error::NotInSpace {
            weight: f.weight,
            reason: format!("coefficient of q^{n} disagrees with the best fit"),
        });
    }
    Ok(basis.into_iter().zip(coords).collect())
}

/// Outcome of factoring the Wronskian of `(E4^3)^u (E6^2)^(t-u)`, `u = t..0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    pub t: u32,
    /// The constant with `W = lambda * Delta^s * E4^(2s) * E6^s`, `s = t(t+1)/2`.
    pub lambda: Rational,
    pub delta_power: u32,
    /// Valuation of the Wronskian itself.
    pub valuation: Option<usize>,
    /// Coordinates of `W / Delta^s` in the monomial basis.
    pub expression: Vec<(MonomialExponent, Rational)>,
}

impl LambdaReport {
    /// The monomial `E4^(t(t+1)) E6^(t(t+1)/2)` expected to carry `lambda`.
    pub fn expected_monomial(&self) -> MonomialExponent {
        MonomialExponent {
            alpha: 2 * self.delta_power,
            beta: self.delta_power,
        }
    }

    /// True when `W / Delta^s` is `lambda` times the expected monomial and nothing else.
    pub fn is_pure(&self) -> bool {
        let target = self.expected_monomial();
        self.expression
            .iter()
            .all(|(e, c)| (*e == target) != c.is_zero())
    }
}

/// The monomials `(E4^3)^u (E6^2)^(t-u)`, `u = t, t-1, .., 0`, of weight `12 t`.
pub fn delta_family(t: u32, prec: usize) -> Vec<QSeries> {
    let e43 = eisenstein_e4(prec).series.pow(3);
    let e62 = eisenstein_e6(prec).series.pow(2);
    (0..=t)
        .rev()
        .map(|u| &e43.pow(u) * &e62.pow(t - u))
        .collect()
}

/// Computes the Wronskian of [`delta_family`], divides out `Delta^(t(t+1)/2)`
/// and expresses the quotient in the monomial basis.
pub fn wronskian_lambda(t: u32, prec: usize) -> Result<LambdaReport> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let s = t * (t + 1) / 2;
    let w = q_wronskian(&delta_family(t, prec), 12 * t)?;
    let delta_s = delta(prec).series.pow(s);
    let quotient = w.series.exact_div(&delta_s)?;
    let weight = w.output_weight - 12 * s;
    let expression = express_in_monomials(&Level1Form::new(quotient, weight)?)?;
    let target = MonomialExponent {
        alpha: 2 * s,
        beta: s,
    };
    let lambda = expression
        .iter()
        .find(|(e, _)| *e == target)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero);
    Ok(LambdaReport {
        t,
        lambda,
        delta_power: s,
        valuation: w.series.valuation(),
        expression,
    })
}

/// `-1728`, the value of `lambda` for `t = 1`.
pub fn lambda_one() -> Rational {
    rat(-1728)
}
