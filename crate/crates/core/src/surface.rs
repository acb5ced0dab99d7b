//! Signatures of Fuchsian groups, dimension and divisor-degree formulas, and
//! the invariants of `Gamma_0(N)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::qseries::Rational;

/// Genus, number of inequivalent cusps, and the orders of the elliptic points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub cusp_count: u32,
    pub elliptic_orders: Vec<u32>,
}

impl SurfaceSignature {
    pub fn new(genus: u32, cusp_count: u32, mut elliptic_orders: Vec<u32>) -> Result<Self> {
        if let Some(e) = elliptic_orders.iter().find(|&&e| e < 2) {
            return Err(Error::Domain(format!("elliptic order {e} is below 2")));
        }
        elliptic_orders.sort_unstable();
        Ok(SurfaceSignature {
            genus,
            cusp_count,
            elliptic_orders,
        })
    }

    /// The signature of `SL_2(Z)`: genus 0, one cusp, elliptic points of orders 2 and 3.
    pub fn sl2z() -> Self {
        SurfaceSignature {
            genus: 0,
            cusp_count: 1,
            elliptic_orders: vec![2, 3],
        }
    }

    fn g(&self) -> i64 {
        i64::from(self.genus)
    }

    fn t(&self) -> i64 {
        i64::from(self.cusp_count)
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "genus {}, {} cusps, elliptic orders {:?}",
            self.genus, self.cusp_count, self.elliptic_orders
        )
    }
}

fn check_weight(m: u32, min: u32) -> Result<i64> {
    if !m.is_multiple_of(2) || m < min {
        return Err(Error::Domain(format!(
            "weight {m} must be even and at least {min}"
        )));
    }
    Ok(i64::from(m))
}

/// `dim S_m`.
pub fn dim_cusp_forms(sig: &SurfaceSignature, m: u32) -> Result<i64> {
    let mi = check_weight(m, 2)?;
    if m == 2 {
        return Ok(sig.g());
    }
    let elliptic: i64 = sig
        .elliptic_orders
        .iter()
        .map(|&e| {
            let e = i64::from(e);
            // floor((m/2)(1 - 1/e))
            (mi * (e - 1)).div_euclid(2 * e)
        })
        .sum();
    Ok((mi - 1) * (sig.g() - 1) + (mi / 2 - 1) * sig.t() + elliptic)
}

/// `dim M_m`.
pub fn dim_modular_forms(sig: &SurfaceSignature, m: u32) -> Result<i64> {
    let s = dim_cusp_forms(sig, m)?;
    Ok(if m == 2 && sig.cusp_count > 0 {
        s + sig.t() - 1
    } else {
        s + sig.t()
    })
}

/// Degree of the divisor of a nonzero weight-`m` form:
/// `m (g - 1) + (m/2) (t + sum (1 - 1/e))`.
pub fn deg_div(sig: &SurfaceSignature, m: u32) -> Result<Rational> {
    let mi = check_weight(m, 2)?;
    let mut inner = Rational::from_integer(sig.t().into());
    for &e in &sig.elliptic_orders {
        inner += Rational::new((i64::from(e) - 1).into(), i64::from(e).into());
    }
    Ok(Rational::from_integer((mi * (sig.g() - 1)).into())
        + inner * Rational::from_integer((mi / 2).into()))
}

/// Degree of the integral divisor `c'_f`.
pub fn deg_c_prime(sig: &SurfaceSignature, m: u32) -> Result<i64> {
    let d = dim_modular_forms(sig, m)?;
    Ok(if m == 2 && sig.cusp_count == 0 {
        2 * (sig.g() - 1)
    } else {
        d + sig.g() - 1
    })
}

/// Degree of the integral divisor `c_f` of a cusp form.
pub fn deg_c(sig: &SurfaceSignature, m: u32) -> Result<i64> {
    let d = dim_cusp_forms(sig, m)?;
    Ok(if m == 2 {
        2 * (sig.g() - 1)
    } else {
        d + sig.g() - 1
    })
}

/// `dim S^H_m`, the cusp forms matching holomorphic `m/2`-differentials.
pub fn dim_s_h(sig: &SurfaceSignature, m: u32) -> Result<i64> {
    let mi = check_weight(m, 2)?;
    Ok(match (sig.genus, m) {
        (0, _) => 0,
        (_, 2) => sig.g(),
        (1, _) => 1,
        _ => (mi - 1) * (sig.g() - 1),
    })
}

/// `m/2 + m (g - 1) <= dim S_m - g`, evaluated literally.
pub fn weierstrass_bound_holds(sig: &SurfaceSignature, m: u32) -> Result<bool> {
    let mi = check_weight(m, 4)?;
    Ok(mi / 2 + mi * (sig.g() - 1) <= dim_cusp_forms(sig, m)? - sig.g())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperellipticStatus {
    GenusLessThanTwo,
    Hyperelliptic,
    NotHyperelliptic,
}

impl fmt::Display for HyperellipticStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperellipticStatus::GenusLessThanTwo => "genus < 2",
            HyperellipticStatus::Hyperelliptic => "hyperelliptic",
            HyperellipticStatus::NotHyperelliptic => "not hyperelliptic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma0Invariants {
    pub level: u64,
    /// `[SL_2(Z) : Gamma_0(N)]`.
    pub index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub signature: SurfaceSignature,
    pub hyperelliptic_status: HyperellipticStatus,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// `(-1 | p)`.
fn kronecker_minus_one(p: u64) -> i64 {
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `(-3 | p)`.
fn kronecker_minus_three(p: u64) -> i64 {
    match p {
        3 => 0,
        2 => -1,
        _ if p % 3 == 1 => 1,
        _ => -1,
    }
}

/// Levels of genus at least 2 whose modular curve is not hyperelliptic; every
/// other level of genus at least 2 is hyperelliptic.
pub fn ogg_not_hyperelliptic(n: u64) -> bool {
    matches!(n, 34 | 38 | 42 | 43 | 44 | 45 | 51..=58 | 60..=70) || n >= 72
}

/// Index, elliptic points, cusps, genus and hyperelliptic status of `Gamma_0(N)`.
pub fn gamma0_invariants(n: i64) -> Result<Gamma0Invariants> {
    if n <= 0 {
        return Err(Error::Domain(format!("level {n} must be positive")));
    }
    let n = n as u64;
    let primes = factor(n);
    let index = primes
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * p.pow(e - 1) * (p + 1));
    let nu2 = if n.is_multiple_of(4) {
        0
    } else {
        primes
            .iter()
            .map(|&(p, _)| 1 + kronecker_minus_one(p))
            .product::<i64>() as u64
    };
    let nu3 = if n.is_multiple_of(9) {
        0
    } else {
        primes
            .iter()
            .map(|&(p, _)| 1 + kronecker_minus_three(p))
            .product::<i64>() as u64
    };
    let cusps: u64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| euler_phi(gcd(d, n / d)))
        .sum();
    let twelve_g = 12 + index as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0);
    let genus = (twelve_g / 12) as u32;
    let mut elliptic = vec![2; nu2 as usize];
    elliptic.extend(std::iter::repeat_n(3, nu3 as usize));
    let hyperelliptic_status = if genus < 2 {
        HyperellipticStatus::GenusLessThanTwo
    } else if ogg_not_hyperelliptic(n) {
        HyperellipticStatus::NotHyperelliptic
    } else {
        HyperellipticStatus::Hyperelliptic
    };
    Ok(Gamma0Invariants {
        level: n,
        index,
        nu2,
        nu3,
        signature: SurfaceSignature {
            genus,
            cusp_count: cusps as u32,
            elliptic_orders: elliptic,
        },
        hyperelliptic_status,
    })
}

impl Gamma0Invariants {
    /// A weight-12 form has divisor degree equal to the index.
    pub fn index_consistent(&self) -> bool {
        deg_div(&self.signature, 12)
            .map(|d| d == Rational::from_integer(self.index.into()))
            .unwrap_or(false)
    }
}
