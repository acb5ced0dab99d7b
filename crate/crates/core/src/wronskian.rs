//! q-Wronskians `det((q d/dq)^i f_j)` and the valuations of spans of series.

use crate::error::{Error, Result};
use crate::exactlinalg::{pivot_columns, RatMatrix};
use crate::qseries::{QSeries, Rational};

/// Wronskian orders at or below this size use cofactor expansion.
const LAPLACE_MAX: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianOutput {
    pub series: QSeries,
    pub input_count: usize,
    pub input_weight: u32,
    /// `k (m + k - 1)`.
    pub output_weight: u32,
    /// `k (k - 1) / 2`: the power of `2 pi i / h` separating `W` from `W_q`.
    pub scalar_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanValuations {
    /// The distinct orders at `q = 0` attained in the span, increasing.
    pub valuations: Vec<usize>,
    pub total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderIdentity {
    /// Valuation of the q-Wronskian.
    pub lhs: usize,
    /// Sum of the span valuations.
    pub rhs: usize,
    pub holds: bool,
}

pub fn wronskian_weight(k: u32, m: u32) -> u32 {
    k * (m + k - 1)
}

pub fn scalar_exponent(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

/// The q-Wronskian of `fs`, viewed as forms of weight `m`.
///
/// Each input is written `q^v g` with `g(0) != 0`, and
/// `(q d/dq)^i (q^v g) = q^v (q d/dq + v)^i g` lets the factor `q^(sum v)`
/// come out of the determinant exactly. The result is therefore known to at
/// least the common input precision `P`, and exactly to
/// `P + sum v - max v`.
pub fn q_wronskian(fs: &[QSeries], m: u32) -> Result<WronskianOutput> {
    let k = fs.len();
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    let p = fs.iter().map(QSeries::prec).min().unwrap_or(0);
    if p < k {
        return Err(Error::Precision(format!(
            "Wronskian of {k} series needs precision at least {k}, got {p}"
        )));
    }
    let output = |series| WronskianOutput {
        series,
        input_count: k,
        input_weight: m,
        output_weight: wronskian_weight(k as u32, m),
        scalar_exponent: scalar_exponent(k as u32),
    };
    let vals: Option<Vec<usize>> = fs.iter().map(|f| f.truncate(p).valuation()).collect();
    let Some(vals) = vals else {
        // A column vanishing to precision P.
        return Ok(output(QSeries::zero(p)));
    };
    let shift: usize = vals.iter().sum();
    let columns: Vec<Vec<QSeries>> = fs
        .iter()
        .zip(&vals)
        .map(|(f, &v)| {
            let g = f.truncate(p).div_q_power(v).expect("valuation is v");
            let v = Rational::from_integer(v.into());
            let mut col = Vec::with_capacity(k);
            let mut h = g;
            for _ in 0..k {
                let next = &h.q_derive() + &h.scale(&v);
                col.push(h);
                h = next;
            }
            col
        })
        .collect();
    let det = if k <= LAPLACE_MAX {
        det_laplace(&columns)
    } else {
        det_elimination(columns)
    };
    Ok(output(det.mul_q_power(shift)))
}

/// Cofactor expansion along rows, memoized over column subsets.
/// `columns[j][i]` is the entry in row `i`, column `j`.
fn det_laplace(columns: &[Vec<QSeries>]) -> QSeries {
    let k = columns.len();
    let prec = columns.iter().map(|c| c[0].prec()).min().unwrap_or(0);
    // minors[mask] = det of rows 0..popcount(mask) on the columns in mask.
    let mut minors: Vec<Option<QSeries>> = vec![None; 1 << k];
    minors[0] = Some(QSeries::one(prec));
    for mask in 1usize..1 << k {
        let row = mask.count_ones() as usize - 1;
        let mut acc = QSeries::zero(prec);
        // Expanding along the last row: the sign is (-1)^(row + position of j).
        let mut sign_positive = row.is_multiple_of(2);
        for (j, col) in columns.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let minor = minors[mask & !(1 << j)].as_ref().expect("computed earlier");
            let entry = &col[row];
            if !entry.is_zero() && !minor.is_zero() {
                let term = entry * minor;
                acc = if sign_positive {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            sign_positive = !sign_positive;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

/// Gaussian elimination over the series ring with a minimal-valuation pivot.
///
/// Writing each pivot as `q^v u` with `u` a unit, the quotient `a / pivot`
/// is a power series whenever `v` is minimal in its column. The determinant is
/// `q^(sum v) * prod u`, which keeps the relative precision of every factor.
fn det_elimination(columns: Vec<Vec<QSeries>>) -> QSeries {
    let k = columns.len();
    // Row-major copy: a[i][j].
    let mut a: Vec<Vec<QSeries>> = (0..k)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut negate = false;
    let mut shift = 0usize;
    let mut units: Vec<QSeries> = Vec::with_capacity(k);
    for c in 0..k {
        let best = (c..k)
            .filter_map(|r| a[r][c].valuation().map(|v| (v, r)))
            .min();
        let Some((v, r)) = best else {
            // Every term of the remaining minor contains an entry of this column.
            let rest = (c..k).map(|r| a[r][c].prec()).min().unwrap_or(0);
            return QSeries::zero(shift + rest);
        };
        if r != c {
            a.swap(r, c);
            negate = !negate;
        }
        let (top, below) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let pivot = pivot_row[c].clone();
        for row in below {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c]
                .exact_div(&pivot)
                .expect("pivot has minimal valuation");
            for (x, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *x = &*x - &(&factor * p);
            }
        }
        shift += v;
        units.push(pivot.div_q_power(v).expect("valuation is v"));
    }
    let prec = units.iter().map(QSeries::prec).min().unwrap_or(0);
    let mut det = QSeries::one(prec);
    for u in &units {
        det = &det * u;
    }
    let det = det.mul_q_power(shift);
    if negate {
        -det
    } else {
        det
    }
}

/// Distinct valuations attained in the span of `fs`: the pivot columns of the
/// echelon form of their coefficient matrix.
pub fn span_valuations(fs: &[QSeries]) -> Result<SpanValuations> {
    if fs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let p = fs.iter().map(QSeries::prec).min().unwrap_or(0);
    let rows = fs.iter().map(|f| f.coeffs()[..p].to_vec()).collect();
    let pivots = pivot_columns(&RatMatrix::from_rows(rows)?);
    if pivots.len() < fs.len() {
        return Err(Error::DependentInput {
            rank: pivots.len(),
            count: fs.len(),
        });
    }
    Ok(SpanValuations {
        total: pivots.iter().sum(),
        valuations: pivots,
    })
}

/// Compares the valuation of the q-Wronskian with the sum of span valuations.
pub fn cusp_order_identity_check(fs: &[QSeries], m: u32) -> Result<OrderIdentity> {
    let w = q_wronskian(fs, m)?;
    let lhs = w.series.valuation().ok_or_else(|| {
        Error::Precision(format!(
            "Wronskian vanishes to its full precision {}",
            w.series.prec()
        ))
    })?;
    let rhs = span_valuations(fs)?.total;
    Ok(OrderIdentity {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// `(span_total - k(k-1)/2) / e`: the Wronskian order at an elliptic point
/// of order `e`, given the span valuations there.
pub fn elliptic_wronskian_order(span_total: i64, k: i64, e: i64) -> Result<Rational> {
    if e < 1 {
        return Err(Error::Domain(format!(
            "elliptic order {e} must be at least 1"
        )));
    }
    if k < 1 {
        return Err(Error::Domain(format!("k = {k} must be at least 1")));
    }
    Ok(Rational::new(
        (span_total - k * (k - 1) / 2).into(),
        e.into(),
    ))
}
