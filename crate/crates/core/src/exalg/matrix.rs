//! Dense matrices over ℚ(i) and the exact elimination routines built on them.
//!
//! Every routine is deterministic: elimination scans columns left to right and
//! picks the first nonzero entry at or below the current row as pivot.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational as C;
use crate::error::{Error, Result};

/// Column vector over ℚ(i).
pub type Vector = Vec<C>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    /// Builds a matrix from its rows. All rows must share one length.
    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Builds a matrix whose columns are `cols`, each of length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {} instead of {nrows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(C::is_real)
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
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

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(C::conj).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![C::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &C) -> Matrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..a.cols {
                if !a[(r, j)].is_zero() {
                    a[(r, j)] = &a[(r, j)] * &inv;
                }
            }
            let pivot_row: Vector = a.row(r).to_vec();
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        a[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column of the reduced
    /// echelon form (free entry 1, other free entries 0).
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[C]) -> Result<Vector> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {} instead of {}",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NotSolvable);
        }
        let mut x = vec![C::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Ok(x)
    }

    /// The solution of `self · x = b` orthogonal to `ker self` under the
    /// standard Hermitian form. Unique when it exists.
    pub fn solve_in_image(&self, b: &[C]) -> Result<Vector> {
        let x = self.solve(b)?;
        let kernel = self.kernel_basis();
        let along = project_onto_span(&x, &kernel)?;
        Ok(sub(&x, &along))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = C::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Standard Hermitian form `⟨u, v⟩ = Σ u_i · conj(v_i)`.
pub fn inner(u: &[C], v: &[C]) -> C {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * &b.conj())
        .sum()
}

pub fn add(u: &[C], v: &[C]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[C], v: &[C]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &C, v: &[C]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c · v`.
pub fn axpy(acc: &mut [C], c: &C, v: &[C]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn is_zero_vec(v: &[C]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn conj_vec(v: &[C]) -> Vector {
    v.iter().map(C::conj).collect()
}

/// Hermitian Gram matrix `G[i][j] = ⟨v_i, v_j⟩`.
pub fn gram(vs: &[Vector]) -> Matrix {
    let mut g = Matrix::zeros(vs.len(), vs.len());
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let x = inner(&vs[i], &vs[j]);
            g[(j, i)] = x.conj();
            g[(i, j)] = x;
        }
    }
    g
}

/// Canonical basis of `span(vs)`: the nonzero rows of the reduced echelon
/// form of the matrix whose rows are `vs`.
pub fn span_basis(len: usize, vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vs).expect("vectors of equal length");
    debug_assert_eq!(m.cols(), len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Dimension of `span(vs)`.
pub fn span_dim(vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vs)
        .expect("vectors of equal length")
        .rank()
}

/// Whether `v ∈ span(basis)`.
pub fn in_span(v: &[C], basis: &[Vector]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(&all) == span_dim(basis)
}

/// Coordinates of `v` in a linearly independent list `basis`, if `v` lies in
/// its span.
pub fn coordinates(v: &[C], basis: &[Vector]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), basis).ok()?;
    m.solve(v).ok()
}

/// Orthogonal projection of `v` onto `span(basis)` (basis need not be
/// orthogonal, only linearly independent).
pub fn project_onto_span(v: &[C], basis: &[Vector]) -> Result<Vector> {
    if basis.is_empty() {
        return Ok(vec![C::zero(); v.len()]);
    }
    // solve G^T c = (⟨v, b_i⟩)_i for the coefficients of the projection
    let g = gram(basis);
    let rhs: Vector = basis.iter().map(|b| inner(v, b)).collect();
    let c = g.transpose().solve(&rhs)?;
    let mut out = vec![C::zero(); v.len()];
    for (ci, b) in c.iter().zip(basis) {
        axpy(&mut out, ci, b);
    }
    Ok(out)
}

/// Exact basis of `{v ∈ span(inside) : ⟨v, s⟩ = 0 for all s ∈ S}`.
pub fn orthogonal_complement(s: &[Vector], inside: &[Vector]) -> Result<Vec<Vector>> {
    let Some(len) = inside.first().map(Vec::len) else {
        if s.iter().any(|x| !is_zero_vec(x)) {
            return Err(Error::Precondition(
                "span(S) is not contained in span(inside)".into(),
            ));
        }
        return Ok(Vec::new());
    };
    if s.iter().chain(inside).any(|x| x.len() != len) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let t = span_basis(len, inside);
    let mut joined = t.clone();
    joined.extend(s.iter().cloned());
    if span_dim(&joined) != t.len() {
        return Err(Error::Precondition(
            "span(S) is not contained in span(inside)".into(),
        ));
    }
    if s.is_empty() {
        return Ok(t);
    }
    // v = Σ c_j t_j with Σ c_j ⟨t_j, s_i⟩ = 0
    let mut constraints = Matrix::zeros(s.len(), t.len());
    for (i, si) in s.iter().enumerate() {
        for (j, tj) in t.iter().enumerate() {
            constraints[(i, j)] = inner(tj, si);
        }
    }
    let combos = constraints.kernel_basis();
    let vs: Vec<Vector> = combos
        .iter()
        .map(|c| {
            let mut v = vec![C::zero(); len];
            for (cj, tj) in c.iter().zip(&t) {
                axpy(&mut v, cj, tj);
            }
            v
        })
        .collect();
    Ok(span_basis(len, &vs))
}
