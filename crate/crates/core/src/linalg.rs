//! Exact rational and integer linear algebra.
//!
//! Rationals are arbitrary precision (`num_rational::BigRational`) and
//! always normalized. Integer matrices use `i64` entries; the Smith normal
//! form routine works for any shape, including zero and non-square input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        if den
            .trim()
            .parse::<BigInt>()
            .map(|d| d.is_zero())
            .unwrap_or(true)
        {
            return Err(Error::InvalidRational(s.to_string()));
        }
    }
    Rational::from_str(t).map_err(|_| Error::InvalidRational(s.to_string()))
}

/// Renders as `"p/q"`, or `"n"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Submatrix keeping the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let sum = (0..self.cols)
                    .map(|l| self[(i, l)] as i128 * rhs[(l, j)] as i128)
                    .try_fold(0i128, i128::checked_add)
                    .and_then(|x| i64::try_from(x).ok())
                    .ok_or(Error::Overflow)?;
                out[(i, j)] = sum;
            }
        }
        Ok(out)
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| rat(x)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_rational_rows())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Smith normal form `U * A * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elementary row and column operations. Rows and
/// columns are put in Hermite form in alternation, each column eliminated
/// by pivoting on an entry of minimal nonzero absolute value; the
/// transforms ride along as an adjoined identity block, which keeps their
/// entries reduced.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = Work::from_int(a);
    let mut u = Work::identity(m);
    let mut v = Work::identity(n);
    loop {
        let mut du = d.hcat(&u);
        du.hermite();
        (d, u) = du.split(n);
        let mut dv = d.transpose().hcat(&v.transpose());
        dv.hermite();
        let (dt, vt) = dv.split(m);
        d = dt.transpose();
        v = vt.transpose();
        if !d.is_diagonal() {
            continue;
        }
        // divisibility chain along the diagonal
        let r = m.min(n);
        let bad = (0..r).find_map(|i| {
            let p = d.at(i, i);
            (!p.is_zero())
                .then(|| (i + 1..r).find(|&j| !(d.at(j, j) % p).is_zero()))
                .flatten()
                .map(|j| (i, j))
        });
        match bad {
            Some((i, j)) => {
                d.add_col(i, j, &BigInt::one());
                v.add_col(i, j, &BigInt::one());
            }
            None => break,
        }
    }
    SnfResult {
        u: u.to_int(),
        d: d.to_int(),
        v: v.to_int(),
    }
}

/// Dense big-integer matrix used during elimination.
struct Work {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Work {
    fn from_int(a: &IntMatrix) -> Self {
        Work {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        Self::from_int(&IntMatrix::identity(n))
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.at(i, j).clone())
            .collect();
        Work {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `[self | rhs]`
    fn hcat(&self, rhs: &Work) -> Self {
        let data = (0..self.rows)
            .flat_map(|i| self.row(i).into_iter().chain(rhs.row(i)))
            .collect();
        Work {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            data,
        }
    }

    /// Splits off the first `c` columns.
    fn split(&self, c: usize) -> (Work, Work) {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for i in 0..self.rows {
            let row = self.row(i);
            l.extend_from_slice(&row[..c]);
            r.extend_from_slice(&row[c..]);
        }
        let left = Work {
            rows: self.rows,
            cols: c,
            data: l,
        };
        let right = Work {
            rows: self.rows,
            cols: self.cols - c,
            data: r,
        };
        (left, right)
    }

    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.at(i, j).is_zero()))
    }

    /// In-place row Hermite normal form: echelon with positive pivots and
    /// entries above each pivot reduced into `[0, pivot)`.
    fn hermite(&mut self) {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            while let Some(p) = (r..self.rows)
                .filter(|&i| !self.at(i, c).is_zero())
                .min_by(|&x, &y| self.at(x, c).abs().cmp(&self.at(y, c).abs()))
            {
                self.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..self.rows {
                    let q = self.at(i, c) / self.at(r, c);
                    if !q.is_zero() {
                        self.add_row(i, r, &-q);
                    }
                    done &= self.at(i, c).is_zero();
                }
                if done {
                    break;
                }
            }
            if self.at(r, c).is_zero() {
                continue;
            }
            if self.at(r, c).is_negative() {
                self.negate_row(r);
            }
            for i in 0..r {
                let q = self.at(i, c).div_floor(self.at(r, c));
                if !q.is_zero() {
                    self.add_row(i, r, &-q);
                }
            }
            r += 1;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let x = factor * self.at(src, j);
            self.data[dst * self.cols + j] += x;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let x = factor * self.at(i, src);
            self.data[i * self.cols + dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -&*x;
        }
    }

    fn to_int(&self) -> IntMatrix {
        let data = self
            .data
            .iter()
            .map(|x| i64::try_from(x).expect("Smith transform entry exceeds i64"))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    row_reduce(&mut m)
}

/// In-place reduced row echelon form; returns the rank.
fn row_reduce(m: &mut [Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

fn check_dims(generators: &[Vec<Rational>], target: &[Rational]) -> Result<()> {
    for g in generators {
        if g.len() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                found: g.len(),
            });
        }
    }
    Ok(())
}

/// Solves `sum_i x_i * columns[i] = target` when the columns are linearly
/// independent and the system is consistent.
fn solve_independent(columns: &[&Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let dim = target.len();
    let s = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let rk = row_reduce(&mut m);
    // reduced form: pivots must be exactly the first s columns
    if rk != s {
        return None;
    }
    for (i, row) in m.iter().enumerate().take(s) {
        if row[i] != Rational::one() {
            return None;
        }
    }
    Some((0..s).map(|i| m[i][s].clone()).collect())
}

/// True iff `target` is a nonnegative rational combination of `generators`.
///
/// By Carathéodory it suffices to look for a nonnegative solution supported
/// on a linearly independent subset of at most `dim` generators.
pub fn cone_contains(generators: &[Vec<Rational>], target: &[Rational]) -> Result<bool> {
    check_dims(generators, target)?;
    if target.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let gens: Vec<&Vec<Rational>> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .collect();
    let max = target.len().min(gens.len());
    for size in 1..=max {
        let mut found = false;
        for_each_subset(gens.len(), size, |idx| {
            if found {
                return;
            }
            let cols: Vec<&Vec<Rational>> = idx.iter().map(|&i| gens[i]).collect();
            if let Some(x) = solve_independent(&cols, target) {
                if x.iter().all(|c| !c.is_negative()) {
                    found = true;
                }
            }
        });
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `target` lies in the rational linear span of `generators`.
pub fn linear_span_contains(generators: &[Vec<Rational>], target: &[Rational]) -> Result<bool> {
    check_dims(generators, target)?;
    let base = rank(generators);
    let mut extended = generators.to_vec();
    extended.push(target.to_vec());
    Ok(rank(&extended) == base)
}

/// Calls `f` with every strictly increasing index tuple of length `size`
/// drawn from `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for l in i + 1..size {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

pub fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
