//! Dense exact matrices, the matrix `M(s, t)`, Doolittle LU and two
//! independent determinant routes.
//!
//! All public indices are 1-based `(row, column)` as in the formulas.
//! Storage is row-major: entry `(i, l)` lives at `(i - 1) * cols + (l - 1)`.

use std::collections::HashMap;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::arith::{Field, RationalFunction};
use crate::error::{Error, Result};
use crate::par;

/// Default size limit for [`det_cofactor`].
pub const DEFAULT_COFACTOR_CAP: usize = 7;

#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for l in 1..=cols {
                entries.push(f(i, l));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn try_from_fn<E>(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> std::result::Result<F, E>,
    ) -> std::result::Result<Self, E> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for l in 1..=cols {
                entries.push(f(i, l)?);
            }
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: n_rows,
            cols: n_cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, l| if i == l { F::one() } else { F::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
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

    /// Entry `(i, l)`, 1-based.
    pub fn get(&self, i: usize, l: usize) -> &F {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&l), "index ({i}, {l}) out of range");
        &self.entries[(i - 1) * self.cols + (l - 1)]
    }

    pub fn set(&mut self, i: usize, l: usize, value: F) {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&l), "index ({i}, {l}) out of range");
        self.entries[(i - 1) * self.cols + (l - 1)] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[(i - 1) * self.cols..i * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.entries.chunks(self.cols.max(1)).map(<[F]>::to_vec).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ExactMatrix<G> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<ExactMatrix<G>, E> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    /// First position (row-major) where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols + 1, k % self.cols + 1))
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, l| self.get(i, l).clone())
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|i| {
                (1..=self.cols).all(|l| match l.cmp(&i) {
                    std::cmp::Ordering::Equal => self.get(i, l).is_one(),
                    std::cmp::Ordering::Greater => self.get(i, l).is_zero(),
                    std::cmp::Ordering::Less => true,
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (1..=self.rows).all(|i| (1..i).all(|l| self.get(i, l).is_zero()))
    }
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    /// `[[a, b], [c, d]]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 1..=self.rows {
            if i > 1 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, x) in self.row(i).iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Row-major nested arrays of canonical strings.
impl<F: Field> Serialize for ExactMatrix<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 1..=self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Unit lower triangular `l` and upper triangular `u` with `l * u = m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors<F: Field> {
    pub l: ExactMatrix<F>,
    pub u: ExactMatrix<F>,
}

/// `M(s, t)` with `M[i][l] = 1 / ((2l)^2 - t^2 (2i-1)^2)`.
///
/// Pass `RationalFunction::t()` for symbolic `t`. Fails with every position
/// whose denominator vanishes.
pub fn build_matrix<F: Field>(s: usize, t: &F) -> Result<ExactMatrix<F>> {
    let t2 = t.mul_ref(t);
    let mut singular = Vec::new();
    let mut entries = Vec::with_capacity(s * s);
    for i in 1..=s {
        let odd = (2 * i - 1) as i64;
        let t2_odd2 = t2.mul_ref(&F::from_integer(odd * odd));
        for l in 1..=s {
            let even = (2 * l) as i64;
            let den = F::from_integer(even * even).sub_ref(&t2_odd2);
            match den.recip() {
                Ok(v) => entries.push(v),
                Err(_) => {
                    singular.push((i, l));
                    entries.push(F::zero());
                }
            }
        }
    }
    if !singular.is_empty() {
        return Err(Error::SingularEntry(singular));
    }
    Ok(ExactMatrix { rows: s, cols: s, entries })
}

pub fn build_matrix_symbolic(s: usize) -> ExactMatrix<RationalFunction> {
    build_matrix(s, &RationalFunction::t()).expect("symbolic entries never vanish")
}

pub fn transpose<F: Field>(m: &ExactMatrix<F>) -> ExactMatrix<F> {
    ExactMatrix::from_fn(m.cols, m.rows, |i, l| m.get(l, i).clone())
}

pub fn matmul<F: Field>(a: &ExactMatrix<F>, b: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let rows = par::map_range(1..a.rows + 1, |i| {
        (1..=b.cols)
            .map(|l| {
                a.row(i).iter().enumerate().fold(F::zero(), |acc, (k, x)| {
                    if x.is_zero() {
                        return acc;
                    }
                    let y = b.get(k + 1, l);
                    if y.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&x.mul_ref(y))
                    }
                })
            })
            .collect::<Vec<F>>()
    });
    Ok(ExactMatrix {
        rows: a.rows,
        cols: b.cols,
        entries: rows.into_iter().flatten().collect(),
    })
}

/// Doolittle elimination without pivoting.
///
/// Fails with `ZeroPivot(k)` when the `k`-th leading principal minor vanishes.
pub fn lu_doolittle<F: Field>(m: &ExactMatrix<F>) -> Result<LuFactors<F>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("LU of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut l = ExactMatrix::<F>::identity(n);
    let mut u = ExactMatrix::<F>::zeros(n, n);
    for k in 1..=n {
        for j in k..=n {
            let mut acc = m.get(k, j).clone();
            for p in 1..k {
                acc = acc.sub_ref(&l.get(k, p).mul_ref(u.get(p, j)));
            }
            u.set(k, j, acc);
        }
        let pivot = u.get(k, k).clone();
        if pivot.is_zero() {
            return Err(Error::ZeroPivot(k));
        }
        for i in k + 1..=n {
            let mut acc = m.get(i, k).clone();
            for p in 1..k {
                acc = acc.sub_ref(&l.get(i, p).mul_ref(u.get(p, k)));
            }
            l.set(i, k, acc.checked_div(&pivot)?);
        }
    }
    Ok(LuFactors { l, u })
}

/// Laplace expansion along the first row, memoized over column subsets.
pub fn det_cofactor<F: Field>(m: &ExactMatrix<F>) -> Result<F> {
    det_cofactor_capped(m, DEFAULT_COFACTOR_CAP)
}

pub fn det_cofactor_capped<F: Field>(m: &ExactMatrix<F>, cap: usize) -> Result<F> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows > cap {
        return Err(Error::SizeCapExceeded { size: m.rows, cap });
    }
    let full: u32 = if m.rows == 0 { 0 } else { (1u32 << m.rows) - 1 };
    let mut memo = HashMap::new();
    Ok(minor(m, full, &mut memo))
}

// Determinant of the rows `n - |cols| + 1 ..= n` restricted to column set `cols`.
fn minor<F: Field>(m: &ExactMatrix<F>, cols: u32, memo: &mut HashMap<u32, F>) -> F {
    if cols == 0 {
        return F::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = m.rows - cols.count_ones() as usize + 1;
    let mut acc = F::zero();
    for (position, c) in (0..m.cols).filter(|c| cols & (1 << c) != 0).enumerate() {
        let entry = m.get(row, c + 1);
        if entry.is_zero() {
            continue;
        }
        let term = entry.mul_ref(&minor(m, cols & !(1 << c), memo));
        acc = if position % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Bareiss elimination with row swaps.
///
/// Uses the fraction-free recurrence `a'[i][j] = (a[i][j] a[k][k] - a[i][k] a[k][j]) / p`
/// where `p` is the previous pivot; the division is exact. Independent of
/// [`lu_doolittle`]. A singular matrix yields zero.
pub fn det_elimination<F: Field>(m: &ExactMatrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(F::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = F::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(F::zero());
            };
            a.swap(k, r);
            negate = !negate;
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let cross = row[j].mul_ref(&pivot_row[k]).sub_ref(&row[k].mul_ref(&pivot_row[j]));
                row[j] = cross.checked_div(&prev)?;
            }
            row[k] = F::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg_ref() } else { det })
}
