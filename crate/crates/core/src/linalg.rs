//! Dense exact linear algebra: row reduction, rank, kernels, determinants,
//! and incrementally maintained row spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::par;

/// Below this many entries elimination steps run on the current thread.
const PAR_THRESHOLD: usize = 1 << 12;

/// Dense `rows x cols` matrix of exact scalars, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form: nonzero rows only, pivots strictly increasing.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(field: Field, cols: usize, data: Vec<Vec<Scalar>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            rows: data.len(),
            cols,
            field,
            data,
        }
    }

    pub fn from_i64(field: Field, data: &[Vec<i64>]) -> Self {
        let cols = data.first().map_or(0, Vec::len);
        Self::from_rows(
            field,
            cols,
            data.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Vec<Scalar>] {
        &self.data
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|row| dot(self.field, row, v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Scalar::is_zero)
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry.
    pub fn rref(&self) -> Rref {
        rref_rows(self.field, self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => fraction_free::echelon(self.cols, &self.data, false).0.len(),
            Field::Prime(_) => self.rref().pivots.len(),
        }
    }

    /// Rank and a kernel basis. Kernel vectors are indexed by free columns:
    /// each has a 1 at its own free column and 0 at every other free column.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let r = self.rref();
        let kernel = r.kernel_basis(self.field);
        (r.pivots.len(), kernel)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let mut a = self.data.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv().unwrap();
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] * &inv;
                axpy(row, &factor, &pivot_row);
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let augmented: Vec<Vec<Scalar>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let r = rref_rows(self.field, 2 * n, augmented);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(ExactMatrix::from_rows(
            self.field,
            n,
            r.rows.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    /// Adjugate (transposed cofactor matrix), so that `A * adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut adj = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let d = minor.determinant()?;
                // adj[j][i] = (-1)^(i+j) * M_ij
                adj.data[j][i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(adj)
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> ExactMatrix {
        let data = self
            .data
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        ExactMatrix::from_rows(self.field, self.cols.saturating_sub(1), data)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data
            .iter()
            .map(|r| r.iter().map(Scalar::to_string).collect())
            .collect()
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self, field: Field) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); self.cols];
                v[free] = field.one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}

pub(crate) fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `row -= factor * pivot`, skipping zero entries of `pivot`.
fn axpy(row: &mut [Scalar], factor: &Scalar, pivot: &[Scalar]) {
    for (x, p) in row.iter_mut().zip(pivot) {
        if !p.is_zero() {
            *x = &*x - &(factor * p);
        }
    }
}

fn rref_rows(field: Field, cols: usize, mut rows: Vec<Vec<Scalar>>) -> Rref {
    if field == Field::Rational {
        let (pivots, rows) = fraction_free::echelon(cols, &rows, true);
        return Rref {
            rows: fraction_free::normalize(&pivots, rows),
            pivots,
            cols,
        };
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    let big = rows.len() * cols >= PAR_THRESHOLD;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(p, next);
        let inv = rows[next][c].inv().unwrap();
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        let eliminate = |row: &mut Vec<Scalar>| {
            if !row[c].is_zero() {
                let factor = row[c].clone();
                axpy(row, &factor, &pivot_row);
            }
        };
        let (before, rest) = rows.split_at_mut(next);
        let after = &mut rest[1..];
        if big {
            par::for_each_mut(before, eliminate);
            par::for_each_mut(after, eliminate);
        } else {
            before.iter_mut().for_each(eliminate);
            after.iter_mut().for_each(eliminate);
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    Rref { rows, pivots, cols }
}

/// Elimination over `Z` on primitive integer rows. Every update is
/// `row <- a row - b pivot` followed by division by the row content, so no
/// per-entry fraction reduction is needed.
mod fraction_free {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use super::PAR_THRESHOLD;
    use crate::field::Scalar;
    use crate::par;

    fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
        let mut g = BigInt::zero();
        for x in v.iter().filter(|x| !x.is_zero()) {
            g = g.gcd(x);
            if g.is_one() {
                return v;
            }
        }
        if !g.is_zero() {
            for x in v.iter_mut().filter(|x| !x.is_zero()) {
                *x /= &g;
            }
        }
        v
    }

    fn to_integers(row: &[Scalar]) -> Vec<BigInt> {
        let rational = |x: &Scalar| x.as_rational().expect("rational row").clone();
        let mut lcm = BigInt::one();
        for x in row.iter().filter(|x| !x.is_zero()) {
            lcm = lcm.lcm(rational(x).denom());
        }
        primitive(
            row.iter()
                .map(|x| {
                    let q = rational(x);
                    q.numer() * (&lcm / q.denom())
                })
                .collect(),
        )
    }

    /// Clears column `c` of `row` using `pivot`.
    fn eliminate(row: &mut Vec<BigInt>, pivot: &[BigInt], c: usize) {
        if row[c].is_zero() {
            return;
        }
        let g = row[c].gcd(&pivot[c]);
        let a = &pivot[c] / &g;
        let b = &row[c] / &g;
        for (x, p) in row.iter_mut().zip(pivot) {
            if p.is_zero() {
                if !x.is_zero() {
                    *x *= &a;
                }
            } else {
                *x = &*x * &a - p * &b;
            }
        }
        *row = primitive(std::mem::take(row));
    }

    fn eliminate_all(rows: &mut [Vec<BigInt>], pivot: &[BigInt], c: usize, big: bool) {
        if big {
            par::for_each_mut(rows, |r| eliminate(r, pivot, c));
        } else {
            rows.iter_mut().for_each(|r| eliminate(r, pivot, c));
        }
    }

    /// Row echelon form over `Z`, fully reduced above pivots when `reduce`
    /// is set. Returns the pivot columns and the nonzero rows.
    pub(super) fn echelon(cols: usize, input: &[Vec<Scalar>], reduce: bool) -> (Vec<usize>, Vec<Vec<BigInt>>) {
        let mut rows: Vec<Vec<BigInt>> = input
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| to_integers(r))
            .collect();
        let big = rows.len() * cols >= PAR_THRESHOLD;
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            if next == rows.len() {
                break;
            }
            // the smallest pivot keeps multipliers short
            let Some(p) = (next..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by_key(|&r| rows[r][c].bits())
            else {
                continue;
            };
            rows.swap(p, next);
            let pivot = rows[next].clone();
            eliminate_all(&mut rows[next + 1..], &pivot, c, big);
            pivots.push(c);
            next += 1;
        }
        rows.truncate(next);
        if reduce {
            for j in (1..rows.len()).rev() {
                let (above, rest) = rows.split_at_mut(j);
                eliminate_all(above, &rest[0], pivots[j], big);
            }
        }
        (pivots, rows)
    }

    /// Scales each row so its pivot entry is one.
    pub(super) fn normalize(pivots: &[usize], rows: Vec<Vec<BigInt>>) -> Vec<Vec<Scalar>> {
        rows.into_iter()
            .zip(pivots)
            .map(|(row, &c)| {
                let d = row[c].clone();
                row.into_iter()
                    .map(|x| Scalar::Q(BigRational::new(x, d.clone())))
                    .collect()
            })
            .collect()
    }
}

/// A subspace of `field^dim`, kept as a fully reduced row echelon basis.
///
/// Because the basis is fully reduced it is canonical: two subspaces are
/// equal iff their stored rows are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, dim: usize) -> Self {
        Subspace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![field.zero(); dim];
                r[i] = field.one();
                r
            })
            .collect();
        Subspace {
            field,
            dim,
            rows,
            pivots: (0..dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: Field, dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, dim);
        }
        let r = rref_rows(field, dim, vectors);
        Subspace {
            field,
            dim,
            rows: r.rows,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots, in increasing order. Their unit vectors
    /// project to a basis of the quotient `field^dim / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Normal form of `v` modulo the subspace (zero at every pivot column).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                axpy(&mut w, &factor, row);
            }
        }
        w
    }

    /// Coordinates of `v + self` in the quotient, over [`Self::non_pivots`].
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.non_pivots().into_iter().map(|c| w[c].clone()).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].inv().unwrap();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let factor = row[pc].clone();
                axpy(row, &factor, &w);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r);
        }
        out
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}
