//! Exact rational matrices, sorted integral echelon reduction and
//! fraction-free determinants.
//!
//! Elimination works on integer rows. Each input row is scaled to clear its
//! denominators, then the loop below runs until the rows are in echelon form:
//!
//! 1. sort rows by their number of leading zeros, ties by original row index;
//! 2. inside every block of rows with the same leading column, replace each
//!    row (bottom up) by an integer cross-multiple that kills its leading
//!    entry against the row just above it.
//!
//! Alongside each row we carry an integer transformation row `T` and a
//! positive scale `s` with `T * input = s * row`, so the final transform is
//! `T / s`. Rows are divided by their content as they go, which keeps entries
//! small without changing any leading column.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qseries::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    /// Row-major constructor; `entries.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length. An empty list gives `0 x cols`
    /// with `cols = 0`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        RatMatrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Solves `self * x = rhs` for a square nonsingular matrix; `None` when singular.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.is_square() || rhs.len() != self.rows {
            return Err(Error::Shape(format!(
                "solve needs a square matrix and matching right-hand side, got {}x{} and {}",
                self.rows,
                self.cols,
                rhs.len()
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self
            .row_iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut v = r.to_vec();
                v.push(b.clone());
                v
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(None);
            };
            a.swap(col, p);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        Ok(Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect()))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonResult {
    /// Row echelon form, zero rows last. Nonzero rows are primitive integer
    /// vectors with a positive leading entry.
    pub echelon: RatMatrix,
    /// Invertible matrix with `transform * input = echelon`. Rows belonging to
    /// zero echelon rows are primitive integer relations among the inputs.
    pub transform: RatMatrix,
    /// Leading column of each nonzero echelon row, strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// Input row index from which each echelon row descends.
    pub origins: Vec<usize>,
}

impl EchelonResult {
    /// Transform rows of the zero echelon rows: a basis of the left kernel.
    pub fn relations(&self) -> impl Iterator<Item = &[Rational]> {
        (self.rank..self.transform.rows()).map(move |r| self.transform.row(r))
    }
}

struct WorkRow {
    origin: usize,
    lead: usize,
    entries: Vec<BigInt>,
    transform: Vec<BigInt>,
    scale: BigInt,
}

fn leading(entries: &[BigInt]) -> usize {
    entries
        .iter()
        .position(|x| !x.is_zero())
        .unwrap_or(entries.len())
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn divide_all(v: &mut [BigInt], d: &BigInt) {
    for x in v.iter_mut() {
        *x = &*x / d;
    }
}

fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (ints, den)
}

impl WorkRow {
    fn new(origin: usize, row: &[Rational], n: usize, track: bool) -> Self {
        let (entries, den) = integer_row(row);
        let transform = if track {
            let mut t = vec![BigInt::zero(); n];
            t[origin] = den;
            t
        } else {
            Vec::new()
        };
        let mut w = WorkRow {
            origin,
            lead: leading(&entries),
            entries,
            transform,
            scale: BigInt::one(),
        };
        w.reduce();
        w
    }

    /// Divides the row by its content and moves that factor into the scale.
    fn reduce(&mut self) {
        let g = content(&self.entries);
        if !g.is_zero() && !g.is_one() {
            divide_all(&mut self.entries, &g);
            self.scale *= g;
        }
        if self.transform.is_empty() {
            return;
        }
        let g = content(&self.transform).gcd(&self.scale);
        if !g.is_one() {
            divide_all(&mut self.transform, &g);
            self.scale = &self.scale / &g;
        }
    }

    /// `self <- c_self * pred - c_pred * self`, killing the shared leading entry.
    fn cancel_against(&mut self, pred: &WorkRow) {
        let col = self.lead;
        let g = self.entries[col].gcd(&pred.entries[col]);
        let c_self = &self.entries[col] / &g;
        let c_pred = &pred.entries[col] / &g;
        for (x, p) in self.entries.iter_mut().zip(&pred.entries).skip(col) {
            *x = &c_self * p - &c_pred * &*x;
        }
        if !self.transform.is_empty() {
            let l = self.scale.lcm(&pred.scale);
            let a = &c_self * (&l / &pred.scale);
            let b = &c_pred * (&l / &self.scale);
            for (x, p) in self.transform.iter_mut().zip(&pred.transform) {
                *x = &a * p - &b * &*x;
            }
            self.scale = l;
        }
        self.lead = leading(&self.entries);
        self.reduce();
    }
}

fn eliminate(m: &RatMatrix, track: bool) -> Vec<WorkRow> {
    let n = m.rows();
    let cols = m.cols();
    let mut rows: Vec<WorkRow> = (0..n)
        .map(|i| WorkRow::new(i, m.row(i), n, track))
        .collect();
    loop {
        rows.sort_unstable_by_key(|r| (r.lead, r.origin));
        let mut changed = false;
        let mut start = 0;
        while start < rows.len() && rows[start].lead < cols {
            let lead = rows[start].lead;
            let end = rows[start..]
                .iter()
                .position(|r| r.lead != lead)
                .map_or(rows.len(), |k| start + k);
            for j in (start + 1..end).rev() {
                let (head, tail) = rows.split_at_mut(j);
                tail[0].cancel_against(&head[j - 1]);
                changed = true;
            }
            start = end;
        }
        if !changed {
            return rows;
        }
    }
}

/// Echelon form of `m` together with its transformation matrix.
pub fn echelon_reduce(m: &RatMatrix) -> EchelonResult {
    let n = m.rows();
    let cols = m.cols();
    let mut rows = eliminate(m, true);
    let mut echelon = Vec::with_capacity(n * cols);
    let mut transform = Vec::with_capacity(n * n);
    let mut pivots = Vec::new();
    for row in rows.iter_mut() {
        if row.lead < cols {
            pivots.push(row.lead);
            if row.entries[row.lead].is_negative() {
                row.entries.iter_mut().for_each(|x| *x = -&*x);
                row.transform.iter_mut().for_each(|x| *x = -&*x);
            }
            echelon.extend(
                row.entries
                    .iter()
                    .map(|x| Rational::from_integer(x.clone())),
            );
            let s = Rational::from_integer(row.scale.clone());
            transform.extend(
                row.transform
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &s),
            );
        } else {
            // A zero row: T * input = 0, so only the direction of T matters.
            let g = content(&row.transform);
            divide_all(&mut row.transform, &g);
            if row
                .transform
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative())
            {
                row.transform.iter_mut().for_each(|x| *x = -&*x);
            }
            echelon.extend((0..cols).map(|_| Rational::zero()));
            transform.extend(
                row.transform
                    .iter()
                    .map(|x| Rational::from_integer(x.clone())),
            );
        }
    }
    EchelonResult {
        rank: pivots.len(),
        pivots,
        origins: rows.iter().map(|r| r.origin).collect(),
        echelon: RatMatrix::new(n, cols, echelon).expect("shape preserved"),
        transform: RatMatrix::new(n, n, transform).expect("square transform"),
    }
}

/// Pivot columns of the echelon form, without building the transform.
pub fn pivot_columns(m: &RatMatrix) -> Vec<usize> {
    eliminate(m, false)
        .iter()
        .map(|r| r.lead)
        .filter(|&l| l < m.cols())
        .collect()
}

pub fn rank(m: &RatMatrix) -> usize {
    pivot_columns(m).len()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut den = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .row_iter()
        .map(|r| {
            let (ints, d) = integer_row(r);
            den *= d;
            ints
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { prev };
    let det = if negate { -det } else { det };
    Ok(Rational::new(det, den))
}
