//! Exact dense linear algebra over prime fields GF(p).
//!
//! Matrices here are tiny (at most 32 x 32), so everything is a plain
//! row-major `Vec<u32>` and Gaussian elimination. All operations are pure and
//! deterministic: the same inputs always produce the same outputs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of rows or columns a [`GfMatrix`] may have.
pub const MAX_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u32),
    #[error("entry {value} at ({row}, {col}) is not reduced mod {p}")]
    EntryOutOfRange { row: usize, col: usize, value: u32, p: u32 },
    #[error("matrix shape {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM} or is inconsistent")]
    BadShape { rows: usize, cols: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("fields differ: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("prefix of {level} rows has rank {rank}")]
    RankDeficient { level: usize, rank: usize },
    #[error("no invertible transform relates the two matrices")]
    NoTransform,
    #[error("levels must be strictly increasing and at most the row count")]
    BadLevels,
}

impl GfError {
    pub fn code(&self) -> &'static str {
        match self {
            GfError::NotPrime(_) => "not_prime",
            GfError::EntryOutOfRange { .. } => "entry_out_of_range",
            GfError::BadShape { .. } => "bad_shape",
            GfError::IndexOutOfRange { .. } => "index_out_of_range",
            GfError::FieldMismatch(..) => "field_mismatch",
            GfError::RankDeficient { .. } => "rank_deficient",
            GfError::NoTransform => "no_transform",
            GfError::BadLevels => "bad_levels",
        }
    }
}

/// The prime modulus of a field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u32")]
pub struct FieldPrime(u32);

impl FieldPrime {
    pub fn new(p: u32) -> Result<Self, GfError> {
        if !(2..1 << 16).contains(&p) || !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(FieldPrime(p))
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.0
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }
}

impl From<FieldPrime> for u32 {
    fn from(f: FieldPrime) -> u32 {
        f.0
    }
}

impl<'de> Deserialize<'de> for FieldPrime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = u32::deserialize(d)?;
        FieldPrime::new(p).map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    field: FieldPrime,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl GfMatrix {
    pub fn zeros(field: FieldPrime, rows: usize, cols: usize) -> Result<Self, GfError> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(GfError::BadShape { rows, cols });
        }
        Ok(GfMatrix { field, rows, cols, entries: vec![0; rows * cols] })
    }

    pub fn identity(field: FieldPrime, n: usize) -> Result<Self, GfError> {
        let mut m = Self::zeros(field, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Build from explicit rows. Entries must already be reduced mod p.
    pub fn from_rows(field: FieldPrime, rows: &[Vec<u32>]) -> Result<Self, GfError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, c).inspect(|m| {
            debug_assert_eq!(m.rows, r);
        })
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// which matters when there are no rows.
    pub fn from_rows_with_cols(
        field: FieldPrime,
        rows: &[Vec<u32>],
        cols: usize,
    ) -> Result<Self, GfError> {
        let r = rows.len();
        if r > MAX_DIM || cols > MAX_DIM || rows.iter().any(|row| row.len() != cols) {
            return Err(GfError::BadShape { rows: r, cols });
        }
        let mut entries = Vec::with_capacity(r * cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= field.p() {
                    return Err(GfError::EntryOutOfRange { row: i, col: j, value: v, p: field.p() });
                }
                entries.push(v);
            }
        }
        Ok(GfMatrix { field, rows: r, cols, entries })
    }

    /// Build from arbitrary integers, reducing each mod p.
    pub fn from_i64_rows(field: FieldPrime, rows: &[Vec<i64>]) -> Result<Self, GfError> {
        let p = field.p() as i64;
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| v.rem_euclid(p) as u32).collect())
            .collect();
        Self::from_rows(field, &reduced)
    }

    #[inline]
    pub fn field(&self) -> FieldPrime {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries: vec![0; self.entries.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix, GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.rows {
            return Err(GfError::BadShape { rows: other.rows, cols: other.cols });
        }
        let f = self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `A * v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// The first `d` rows.
    pub fn prefix_rows(&self, d: usize) -> Result<GfMatrix, GfError> {
        if d > self.rows {
            return Err(GfError::IndexOutOfRange { index: d, bound: self.rows });
        }
        Ok(GfMatrix {
            field: self.field,
            rows: d,
            cols: self.cols,
            entries: self.entries[..d * self.cols].to_vec(),
        })
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Result<GfMatrix, GfError> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(GfError::IndexOutOfRange { index: bad, bound: self.cols });
        }
        let mut out = GfMatrix::zeros(self.field, self.rows, cols.len())?;
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.entries[i * cols.len() + jj] = self.get(i, j);
            }
        }
        Ok(out)
    }

    pub fn remove_col(&self, col: usize) -> Result<GfMatrix, GfError> {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != col).collect();
        if col >= self.cols {
            return Err(GfError::IndexOutOfRange { index: col, bound: self.cols });
        }
        self.select_cols(&keep)
    }

    /// Stack `self` on top of `other`.
    pub fn stack(&self, other: &GfMatrix) -> Result<GfMatrix, GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.cols || self.rows + other.rows > MAX_DIM {
            return Err(GfError::BadShape { rows: self.rows + other.rows, cols: self.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(GfMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a nonsingular square matrix.
    pub fn inverse(&self) -> Option<GfMatrix> {
        if !self.is_nonsingular() {
            return None;
        }
        let n = self.rows;
        let mut aug = GfMatrix::zeros(self.field, n, 2 * n).ok()?;
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, _) = aug.rref();
        let back: Vec<usize> = (n..2 * n).collect();
        red.select_cols(&back).ok()
    }

    /// Canonical basis of the right kernel: one vector per free column of
    /// the reduced row echelon form, free columns in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(red.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Vectors `x_1, .., x_{n-d_1}` such that for every level `d_i` the first
    /// `n - d_i` of them form a basis of the kernel of the first `d_i` rows.
    pub fn nested_kernel_chain(&self, levels: &[usize]) -> Result<Vec<Vec<u32>>, GfError> {
        if levels.windows(2).any(|w| w[0] >= w[1]) || levels.last().is_some_and(|&d| d > self.rows)
        {
            return Err(GfError::BadLevels);
        }
        for &d in levels {
            let rank = self.prefix_rows(d)?.rank();
            if rank != d {
                return Err(GfError::RankDeficient { level: d, rank });
            }
        }
        let mut chain: Vec<Vec<u32>> = Vec::new();
        for &d in levels.iter().rev() {
            for v in self.prefix_rows(d)?.kernel_basis() {
                if chain.len() == self.cols - d {
                    break;
                }
                let mut trial = chain.clone();
                trial.push(v.clone());
                let m = GfMatrix::from_rows_with_cols(self.field, &trial, self.cols)?;
                if m.rank() == trial.len() {
                    chain.push(v);
                }
            }
            debug_assert_eq!(chain.len(), self.cols - d);
        }
        Ok(chain)
    }

    /// Row spaces equal (the literal sense of projective equivalence).
    pub fn same_row_space(&self, other: &GfMatrix) -> Result<bool, GfError> {
        if self.field != other.field {
            return Err(GfError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.cols {
            return Err(GfError::BadShape { rows: other.rows, cols: other.cols });
        }
        let (a, pa) = self.rref();
        let (b, pb) = other.rref();
        Ok(pa == pb && a.prefix_rows(pa.len())? == b.prefix_rows(pb.len())?)
    }
}

/// Invertible `T` with `T * b == a`, for full-row-rank `a`, `b` of equal shape
/// and equal row space.
pub fn solve_left_transform(a: &GfMatrix, b: &GfMatrix) -> Result<GfMatrix, GfError> {
    if a.field != b.field {
        return Err(GfError::FieldMismatch(a.field.p(), b.field.p()));
    }
    if a.rows != b.rows || a.cols != b.cols {
        return Err(GfError::NoTransform);
    }
    let (_, pivots) = b.rref();
    if pivots.len() != b.rows || a.rank() != a.rows {
        return Err(GfError::NoTransform);
    }
    let b_inv = b.select_cols(&pivots)?.inverse().ok_or(GfError::NoTransform)?;
    let t = a.select_cols(&pivots)?.mul(&b_inv)?;
    if t.mul(b)? != *a {
        return Err(GfError::NoTransform);
    }
    Ok(t)
}

/// Wire form: `{"p": .., "rows": .., "cols": .., "entries": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl Serialize for GfMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson { p: self.field.p(), rows: self.rows, cols: self.cols, entries: self.to_rows() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GfMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MatrixJson::deserialize(d)?;
        let field = FieldPrime::new(raw.p).map_err(D::Error::custom)?;
        if raw.entries.len() != raw.rows {
            return Err(D::Error::custom(GfError::BadShape { rows: raw.entries.len(), cols: raw.cols }));
        }
        GfMatrix::from_rows_with_cols(field, &raw.entries, raw.cols).map_err(D::Error::custom)
    }
}

/// The 3 x 7 binary matrix whose column matroid is the Fano plane.
pub fn fano_matrix() -> GfMatrix {
    let f2 = FieldPrime::new(2).expect("2 is prime");
    GfMatrix::from_rows(
        f2,
        &[
            vec![1, 1, 1, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 1, 1, 0],
            vec![1, 0, 1, 0, 1, 0, 1],
        ],
    )
    .expect("static matrix")
}

/// `rows x n` Vandermonde matrix with nodes `0, 1, .., n-1` and rows of powers
/// `0, .., rows-1`.
pub fn vandermonde(field: FieldPrime, rows: usize, n: usize) -> Result<GfMatrix, GfError> {
    let mut m = GfMatrix::zeros(field, rows, n)?;
    for j in 0..n {
        for i in 0..rows {
            m.set(i, j, field.pow(j as u32 % field.p(), i as u32));
        }
    }
    Ok(m)
}
