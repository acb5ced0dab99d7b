//! Deciding whether the cusp at infinity is an `m/2`-Weierstrass point.
//!
//! Given a basis `f_0, .., f_{g-1}` of weight-2 cusp forms, the degree-`m/2`
//! monomials in the `f_i` span (on a non-hyperelliptic curve) the space
//! `S^H_m` of dimension `t = (m-1)(g-1)`. Echelon reduction of their
//! coefficient matrix exposes the leading exponents `i_1 < .. < i_t` attained
//! in that space; infinity is *not* a Weierstrass point exactly when they are
//! the consecutive run `m/2, m/2 + 1, .., m/2 + t - 1`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{det_bareiss, echelon_reduce, pivot_columns, RatMatrix};
use crate::qseries::{format_rational, QSeries, Rational};
use crate::surface::{dim_s_h, HyperellipticStatus, SurfaceSignature};
use crate::wronskian::q_wronskian;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularFormRecord {
    pub label: String,
    pub series: QSeries,
    pub weight: u32,
    pub level: Option<u64>,
    /// Width of the cusp at infinity; the q-expansion is in `e^(2 pi i z / h)`.
    pub cusp_width: u32,
}

impl ModularFormRecord {
    pub fn weight_two(label: impl Into<String>, series: QSeries) -> Self {
        ModularFormRecord {
            label: label.into(),
            series,
            weight: 2,
            level: None,
            cusp_width: 1,
        }
    }
}

/// A basis of `S_2`, all forms known to the same precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspBasis {
    pub level_label: String,
    pub forms: Vec<ModularFormRecord>,
    pub prec: usize,
}

impl CuspBasis {
    pub fn new(level_label: impl Into<String>, forms: Vec<ModularFormRecord>) -> Result<Self> {
        let first = forms.first().ok_or(Error::EmptyInput)?;
        let prec = first.series.prec();
        for f in &forms {
            if f.weight != 2 {
                return Err(Error::Validation(format!(
                    "form {} has weight {}, expected 2",
                    f.label, f.weight
                )));
            }
            if f.series.prec() != prec {
                return Err(Error::Validation(format!(
                    "form {} has precision {}, expected {prec}",
                    f.label,
                    f.series.prec()
                )));
            }
        }
        Ok(CuspBasis {
            level_label: level_label.into(),
            forms,
            prec,
        })
    }

    /// Labels the series `f0, f1, ..`.
    pub fn from_series(level_label: impl Into<String>, series: Vec<QSeries>) -> Result<Self> {
        let forms = series
            .into_iter()
            .enumerate()
            .map(|(i, s)| ModularFormRecord::weight_two(format!("f{i}"), s))
            .collect();
        CuspBasis::new(level_label, forms)
    }

    pub fn genus(&self) -> usize {
        self.forms.len()
    }

    pub fn series(&self) -> Vec<QSeries> {
        self.forms.iter().map(|f| f.series.clone()).collect()
    }

    /// The basis `h_i = sum_j change[i][j] f_j`; `change` must be invertible.
    pub fn change_basis(&self, change: &RatMatrix) -> Result<CuspBasis> {
        let g = self.genus();
        if change.rows() != g || change.cols() != g {
            return Err(Error::Shape(format!(
                "change of basis must be {g}x{g}, got {}x{}",
                change.rows(),
                change.cols()
            )));
        }
        if det_bareiss(change)?.is_zero() {
            return Err(Error::Domain("change of basis is singular".into()));
        }
        let forms = (0..g)
            .map(|i| {
                let mut s = QSeries::zero(self.prec);
                for (j, f) in self.forms.iter().enumerate() {
                    let c = change.get(i, j);
                    if !c.is_zero() {
                        s = &s + &f.series.scale(c);
                    }
                }
                ModularFormRecord {
                    label: format!("h{i}"),
                    series: s,
                    ..self.forms[i].clone()
                }
            })
            .collect();
        CuspBasis::new(self.level_label.clone(), forms)
    }
}

fn half_weight(m: u32) -> Result<u32> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "weight {m} must be even and at least 2"
        )));
    }
    Ok(m / 2)
}

/// Coefficients needed to see every leading exponent of `S^H_m`:
/// `m/2 + m(g-1) + 1`, one beyond the largest possible one.
pub fn required_precision(g: usize, m: u32) -> usize {
    let m = m as usize;
    m / 2 + m * g.saturating_sub(1) + 1
}

/// `C(g + d - 1, d)`, the number of degree-`d` monomials in `g` variables.
pub fn monomial_count(g: usize, d: u32) -> usize {
    let d = d as usize;
    (1..=d).fold(1usize, |acc, i| acc * (g + i - 1) / i)
}

/// Exponent vectors of total degree `d` in `g` variables, lexicographically decreasing.
pub fn exponent_vectors(g: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(g: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == g {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(g, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if g > 0 {
        rec(g, d, &mut Vec::with_capacity(g), &mut out);
    }
    out
}

/// All degree-`m/2` monomials in the basis, truncated to [`required_precision`].
pub fn monomials(basis: &CuspBasis, m: u32) -> Result<Vec<(Vec<u32>, QSeries)>> {
    let d = half_weight(m)?;
    let g = basis.genus();
    let p = required_precision(g, m);
    if basis.prec < p {
        return Err(Error::Precision(format!(
            "genus {g} and weight {m} need {p} coefficients, the basis has {}",
            basis.prec
        )));
    }
    let fs: Vec<QSeries> = basis.forms.iter().map(|f| f.series.truncate(p)).collect();
    // Degree-by-degree memo: a monomial is f_i times a lower one, with i the
    // first variable it contains.
    let mut level: HashMap<Vec<u32>, QSeries> = HashMap::new();
    level.insert(vec![0; g], QSeries::one(p));
    for deg in 1..=d {
        let mut next = HashMap::with_capacity(monomial_count(g, deg));
        for e in exponent_vectors(g, deg) {
            let i = e.iter().position(|&a| a > 0).expect("positive degree");
            let mut lower = e.clone();
            lower[i] -= 1;
            let product = &fs[i] * &level[&lower];
            next.insert(e, product);
        }
        level = next;
    }
    Ok(exponent_vectors(g, d)
        .into_iter()
        .map(|e| {
            let s = level.remove(&e).expect("memoized");
            (e, s)
        })
        .collect())
}

fn coefficient_matrix(series: &[QSeries], p: usize) -> Result<RatMatrix> {
    RatMatrix::from_rows(series.iter().map(|s| s.coeffs()[..p].to_vec()).collect())
}

/// Rank of the monomial matrix, i.e. the dimension of the monomial span.
pub fn subspace_dimension(basis: &CuspBasis, m: u32) -> Result<usize> {
    let p = required_precision(basis.genus(), m);
    let series: Vec<QSeries> = monomials(basis, m)?.into_iter().map(|(_, s)| s).collect();
    Ok(pivot_columns(&coefficient_matrix(&series, p)?).len())
}

/// Whether the monomials are known to span all of `S^H_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanStatus {
    /// The rank equals `dim S^H_m`.
    Complete,
    /// The rank is smaller and the curve's hyperelliptic status is unknown,
    /// so the gap sequence may describe a proper subspace.
    NotGuaranteed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub m: u32,
    pub genus: usize,
    /// `t = dim S^H_m`.
    pub expected_dim: usize,
    pub monomial_count: usize,
    pub rank: usize,
    /// Leading exponents of the echelon rows, increasing.
    pub gap_sequence: Vec<usize>,
    /// False exactly when `rank = t` and the gaps are `m/2, .., m/2 + t - 1`.
    pub is_weierstrass: bool,
    /// `m/2 + m(g-1)`, the largest leading exponent possible in `S^H_m`.
    pub criterion_bound: usize,
    /// Number of coefficients used.
    pub precision: usize,
    pub span_status: SpanStatus,
    /// Exponent vectors of the monomials, in matrix row order.
    pub exponents: Vec<Vec<u32>>,
    /// Echelon rows as q-expansions.
    pub rows: Vec<QSeries>,
    /// `combinations[r][j]`: coefficient of monomial `j` in `rows[r]`.
    pub combinations: Vec<Vec<Rational>>,
    /// Primitive integer relations among the monomials.
    pub relations: Vec<Vec<Rational>>,
}

impl WeierstrassReport {
    /// `Some(is_weierstrass)` when the span is complete, otherwise `None`.
    pub fn verdict(&self) -> Option<bool> {
        match self.span_status {
            SpanStatus::Complete => Some(self.is_weierstrass),
            SpanStatus::NotGuaranteed => None,
        }
    }

    /// Renders `combinations[r]` in terms of the basis labels, e.g. `-f1f2 + f0f3`.
    pub fn combination_text(&self, r: usize, names: &[String]) -> String {
        format_combination(&self.exponents, &self.combinations[r], names)
    }
}

fn monomial_text(e: &[u32], names: &[String]) -> String {
    let mut s = String::new();
    for (a, name) in e.iter().zip(names) {
        match a {
            0 => {}
            1 => s.push_str(name),
            _ => s.push_str(&format!("{name}^{a}")),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// `sum c_j * monomial_j` as text, skipping zero coefficients.
pub fn format_combination(exponents: &[Vec<u32>], coeffs: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (e, c) in exponents.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mono = monomial_text(e, names);
        let abs = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Runs the monomial-elimination test at weight `m`.
///
/// `status` is the hyperelliptic status of the curve if known. It only
/// matters when the monomials fail to span `S^H_m`: a non-hyperelliptic curve
/// then signals bad input, a hyperelliptic one an unsupported case, and an
/// unknown one a report flagged [`SpanStatus::NotGuaranteed`].
pub fn weierstrass_test(
    basis: &CuspBasis,
    m: u32,
    sig: &SurfaceSignature,
    status: Option<HyperellipticStatus>,
) -> Result<WeierstrassReport> {
    let d = half_weight(m)?;
    let g = basis.genus();
    if sig.genus as usize != g {
        return Err(Error::Validation(format!(
            "signature has genus {} but the basis has {g} forms",
            sig.genus
        )));
    }
    if g < 2 {
        return Err(Error::Domain(format!(
            "genus {g} curves have no higher-order Weierstrass points to test"
        )));
    }
    let p = required_precision(g, m);
    let monos = monomials(basis, m)?;
    let (exponents, series): (Vec<_>, Vec<_>) = monos.into_iter().unzip();
    let ech = echelon_reduce(&coefficient_matrix(&series, p)?);
    let t = dim_s_h(sig, m)? as usize;
    let rank = ech.rank;
    if rank > t {
        return Err(Error::Validation(format!(
            "monomials span {rank} dimensions, more than dim S^H_{m} = {t}"
        )));
    }
    let span_status = if rank == t {
        SpanStatus::Complete
    } else {
        match status {
            Some(HyperellipticStatus::NotHyperelliptic) => {
                return Err(Error::RankDeficit { rank, expected: t })
            }
            Some(HyperellipticStatus::Hyperelliptic) => {
                return Err(Error::HyperellipticUnsupported {
                    degree: d,
                    rank,
                    expected: t,
                })
            }
            _ => SpanStatus::NotGuaranteed,
        }
    };
    let gap_sequence = ech.pivots.clone();
    let consecutive = gap_sequence
        .iter()
        .enumerate()
        .all(|(u, &i)| i == u + d as usize);
    let rows = (0..rank)
        .map(|r| QSeries::new(ech.echelon.row(r).to_vec()))
        .collect();
    let combinations = (0..rank).map(|r| ech.transform.row(r).to_vec()).collect();
    let relations = ech.relations().map(<[_]>::to_vec).collect();
    Ok(WeierstrassReport {
        m,
        genus: g,
        expected_dim: t,
        monomial_count: exponents.len(),
        rank,
        is_weierstrass: !(rank == t && consecutive),
        gap_sequence,
        criterion_bound: d as usize + m as usize * (g - 1),
        precision: p,
        span_status,
        exponents,
        rows,
        combinations,
        relations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WronskianCriterion {
    /// Order of vanishing of the Wronskian of the basis at infinity.
    pub order: usize,
    /// `1 + t(m - 1 + t)/2`.
    pub bound: usize,
    pub is_weierstrass: bool,
}

/// The Wronskian form of the test: infinity is a Weierstrass point exactly
/// when the Wronskian of a basis of `S^H_m` vanishes there to order at least
/// `1 + t(m - 1 + t)/2`.
pub fn wronskian_criterion(basis_of_sh: &[QSeries], m: u32) -> Result<WronskianCriterion> {
    half_weight(m)?;
    let t = basis_of_sh.len();
    if t < 2 {
        return Err(Error::Domain(format!(
            "the Wronskian criterion needs at least two forms, got {t}"
        )));
    }
    let w = q_wronskian(basis_of_sh, m)?;
    let order = w.series.valuation().ok_or_else(|| {
        Error::Precision(format!(
            "Wronskian vanishes to its full precision {}",
            w.series.prec()
        ))
    })?;
    let bound = 1 + t * (m as usize - 1 + t) / 2;
    Ok(WronskianCriterion {
        order,
        bound,
        is_weierstrass: order >= bound,
    })
}

impl fmt::Display for SpanStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpanStatus::Complete => "complete",
            SpanStatus::NotGuaranteed => "not guaranteed",
        })
    }
}
