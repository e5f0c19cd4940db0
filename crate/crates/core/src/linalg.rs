//! Exact rational scalars and dense matrices.
//!
//! Determinants and inverses use fraction-free (Bareiss) elimination on an
//! integer scaling of the input, so intermediate values stay polynomially
//! bounded instead of accumulating rational denominators.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Whitespace around the string is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::MalformedInput(format!("invalid rational {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form, `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators of `values` (1 for an empty input).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator pairs: scale through the bit lengths.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
        let shift = shift.max(0) as usize;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows of rational strings, the JSON shape used by the CLI.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }

    /// Integer matrix `d * self` where `d` clears every denominator.
    fn integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let d = common_denominator(&self.entries);
        let ints = self
            .entries
            .iter()
            .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
            .collect();
        (ints, d)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination on an `rows x width` integer block, in place.
///
/// Pivots are taken from the first `pivot_cols` columns. Returns the sign of
/// the row permutation and the last pivot (the determinant of the leading
/// square block, up to that sign), or `None` if the block is singular.
fn bareiss(a: &mut [BigInt], rows: usize, width: usize, pivot_cols: usize) -> Option<(bool, BigInt)> {
    let mut prev = BigInt::one();
    let mut negated = false;
    for k in 0..pivot_cols.min(rows) {
        let pivot_row = (k..rows).find(|&r| !a[r * width + k].is_zero())?;
        if pivot_row != k {
            for j in 0..width {
                a.swap(k * width + j, pivot_row * width + j);
            }
            negated = !negated;
        }
        let pivot = a[k * width + k].clone();
        for i in (k + 1)..rows {
            let factor = a[i * width + k].clone();
            for j in (k + 1)..width {
                let v = &pivot * &a[i * width + j] - &factor * &a[k * width + j];
                // Exact by Sylvester's identity.
                a[i * width + j] = v / &prev;
            }
            a[i * width + k] = BigInt::zero();
        }
        prev = pivot;
    }
    Some((negated, prev))
}

/// Exact determinant by fraction-free elimination.
pub fn det_exact(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, d) = m.integer_scaled();
    let Some((negated, last)) = bareiss(&mut a, n, n, n) else {
        return Ok(Rational::zero());
    };
    let det = if negated { -last } else { last };
    Ok(Rational::new(det, num_traits::pow(d, n)))
}

/// Exact inverse via fraction-free elimination of `[A | I]` followed by
/// back substitution on the integer upper-triangular block.
pub fn invert_exact(m: &RationalMatrix) -> Result<RationalMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "inverse of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let (scaled, d) = m.integer_scaled();
    let width = 2 * n;
    let mut a = vec![BigInt::zero(); n * width];
    for i in 0..n {
        for j in 0..n {
            a[i * width + j] = scaled[i * n + j].clone();
        }
        a[i * width + n + i] = BigInt::one();
    }
    if bareiss(&mut a, n, width, n).is_none() {
        return Err(Error::SingularMatrix);
    }
    // Now a = [U | L] with U upper triangular; solve U X = L exactly.
    let mut x = vec![vec![Rational::zero(); n]; n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i * width + n + col].clone());
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                let u = &a[i * width + j];
                if !u.is_zero() && !xj[col].is_zero() {
                    acc -= Rational::from_integer(u.clone()) * &xj[col];
                }
            }
            x[i][col] = acc / Rational::from_integer(a[i * width + i].clone());
        }
    }
    // The scaled system inverted d*A, so multiply back by d.
    let d = Rational::from_integer(d);
    let rows = x
        .into_iter()
        .map(|row| row.into_iter().map(|v| v * &d).collect())
        .collect();
    RationalMatrix::from_rows(rows)
}
