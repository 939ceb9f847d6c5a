//! Exact rational linear algebra.
//!
//! Everything on the certification path runs over arbitrary-precision
//! rationals: the kernels and ranks computed here are exact, with a
//! floating-point singular-value rank as an independent cross-check oracle.

use crate::error::{Error, Result};
use num::traits::ToPrimitive;
use num::{BigInt, BigRational, One, Signed, Zero};

/// A dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut BigRational {
        &mut self.entries[r * self.cols + c]
    }

    /// Matrix-vector product, exact.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = BigRational::zero();
                for c in 0..self.cols {
                    let e = self.entry(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += e * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn permuted_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut rows = Vec::with_capacity(self.rows);
        for &p in perm {
            rows.push((0..self.cols).map(|c| self.entry(p, c).clone()).collect());
        }
        RationalMatrix::from_rows(rows)
    }
}

/// Reduced row echelon form (Gauss-Jordan) with the fixed pivot rule: scan
/// columns left to right, take the first row with a nonzero entry. With the
/// rule pinned the output is reproducible across implementations.
struct Echelon {
    mat: RationalMatrix,
    pivot_cols: Vec<usize>,
}

fn rref(mat: &RationalMatrix) -> Echelon {
    let mut m = mat.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let found = (pivot_row..rows).find(|&r| !m.entry(r, col).is_zero());
        let Some(r) = found else { continue };
        if r != pivot_row {
            for c in 0..cols {
                let tmp = m.entry(r, c).clone();
                *m.entry_mut(r, c) = m.entry(pivot_row, c).clone();
                *m.entry_mut(pivot_row, c) = tmp;
            }
        }
        // normalize the pivot row
        let inv = m.entry(pivot_row, col).recip();
        for c in col..cols {
            if !m.entry(pivot_row, c).is_zero() {
                let v = m.entry(pivot_row, c) * &inv;
                *m.entry_mut(pivot_row, c) = v;
            }
        }
        // eliminate everywhere else; skipping zero factors keeps this fast on
        // the sparse constraint systems we feed it
        for r2 in 0..rows {
            if r2 == pivot_row || m.entry(r2, col).is_zero() {
                continue;
            }
            let factor = m.entry(r2, col).clone();
            for c in col..cols {
                if !m.entry(pivot_row, c).is_zero() {
                    let v = m.entry(r2, c) - &factor * m.entry(pivot_row, c);
                    *m.entry_mut(r2, c) = v;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Echelon { mat: m, pivot_cols }
}

/// Exact rank.
pub fn rank_exact(mat: &RationalMatrix) -> usize {
    rref(mat).pivot_cols.len()
}

/// Exact basis of the right kernel, one vector per free column in canonical
/// form (1 in the free coordinate). Empty when the matrix has full column
/// rank.
pub fn nullspace(mat: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let ech = rref(mat);
    let cols = mat.cols;
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (row, &pc) in ech.pivot_cols.iter().enumerate() {
            v[pc] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec = vec![BigRational::zero(); cols];
        vec[free] = BigRational::one();
        for (pc, row) in pivot_set.iter().enumerate() {
            if let Some(r) = row {
                vec[pc] = -ech.mat.entry(*r, free).clone();
            }
        }
        basis.push(vec);
    }
    basis
}

/// Numerical rank: entries converted to f64, singular values counted above
/// `tol * sigma_max`. Cross-check oracle for `rank_exact`.
pub fn rank_float(mat: &RationalMatrix, tol: f64) -> usize {
    assert!(tol > 0.0, "tolerance must be positive");
    if mat.rows == 0 || mat.cols == 0 {
        return 0;
    }
    let dm = nalgebra::DMatrix::from_fn(mat.rows, mat.cols, |r, c| {
        mat.entry(r, c).to_f64().expect("rational out of f64 range")
    });
    let svals = dm.singular_values();
    let sigma_max = svals.iter().cloned().fold(0.0_f64, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    svals.iter().filter(|&&s| s > tol * sigma_max).count()
}

/// The real parameterization of Hermitian `d x d` operators: `d` diagonal
/// units, then for each `i < j` (lexicographic) the symmetric unit
/// `E_ij + E_ji` followed by the antisymmetric unit `i(E_ij - E_ji)`.
/// Coordinates in this basis are real; the basis has exactly `d^2` elements.
#[derive(Debug, Clone, Copy)]
pub struct HermitianBasis {
    dim: usize,
}

impl HermitianBasis {
    pub fn new(dim: usize) -> Self {
        HermitianBasis { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements, `d^2`.
    pub fn len(&self) -> usize {
        self.dim * self.dim
    }

    /// Column of the diagonal unit `E_ii` (0-based `i`).
    pub fn diag_col(&self, i: usize) -> usize {
        debug_assert!(i < self.dim);
        i
    }

    /// Column of the symmetric unit for the pair `i < j` (0-based).
    pub fn sym_col(&self, i: usize, j: usize) -> usize {
        self.dim + 2 * self.pair_index(i, j)
    }

    /// Column of the antisymmetric unit for the pair `i < j` (0-based).
    pub fn antisym_col(&self, i: usize, j: usize) -> usize {
        self.dim + 2 * self.pair_index(i, j) + 1
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        // pairs (0,1),(0,2),...,(0,d-1),(1,2),... in lexicographic order
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    /// The coordinate vector of the identity operator: 1 on every diagonal
    /// column, 0 elsewhere.
    pub fn identity_coords(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.len()];
        for i in 0..self.dim {
            v[i] = BigRational::one();
        }
        v
    }

    /// Materializes a coordinate vector as a Hermitian operator.
    pub fn operator(&self, coords: &[BigRational]) -> HermitianOp {
        assert_eq!(coords.len(), self.len());
        let d = self.dim;
        let mut op = HermitianOp::zero(d);
        for i in 0..d {
            op.set(i, i, coords[self.diag_col(i)].clone(), BigRational::zero());
        }
        for i in 0..d {
            for j in (i + 1)..d {
                let re = coords[self.sym_col(i, j)].clone();
                let im = coords[self.antisym_col(i, j)].clone();
                op.set(i, j, re, im);
            }
        }
        op
    }
}

/// True when `coords` is a (possibly zero) scalar multiple of the identity's
/// coordinate vector.
pub fn is_identity_multiple(basis: &HermitianBasis, coords: &[BigRational]) -> bool {
    let d = basis.dim();
    let first = &coords[basis.diag_col(0)];
    for i in 1..d {
        if &coords[basis.diag_col(i)] != first {
            return false;
        }
    }
    coords[d..].iter().all(|c| c.is_zero())
}

/// A Hermitian operator with exact rational entries `re + i*im`.
/// Stored dense; `re` is symmetric and `im` antisymmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    dim: usize,
    re: Vec<BigRational>,
    im: Vec<BigRational>,
}

impl HermitianOp {
    pub fn zero(dim: usize) -> Self {
        HermitianOp {
            dim,
            re: vec![BigRational::zero(); dim * dim],
            im: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = HermitianOp::zero(dim);
        for i in 0..dim {
            op.re[i * dim + i] = BigRational::one();
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets entry (i, j) and mirrors the conjugate into (j, i).
    fn set(&mut self, i: usize, j: usize, re: BigRational, im: BigRational) {
        let d = self.dim;
        self.re[i * d + j] = re.clone();
        self.im[i * d + j] = im.clone();
        self.re[j * d + i] = re;
        self.im[j * d + i] = -im;
    }

    pub fn re(&self, i: usize, j: usize) -> &BigRational {
        &self.re[i * self.dim + j]
    }

    pub fn im(&self, i: usize, j: usize) -> &BigRational {
        &self.im[i * self.dim + j]
    }

    pub fn is_hermitian(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.re(i, j) != self.re(j, i) || *self.im(i, j) != -self.im(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// True when the operator equals `c * I` for some scalar `c`.
    pub fn is_identity_multiple(&self) -> bool {
        let c = self.re(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.im(i, j).is_zero() {
                    return false;
                }
                let expect = if i == j { &c } else { &BigRational::zero() };
                if self.re(i, j) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Coordinates of this operator in the canonical Hermitian basis.
    pub fn coords(&self, basis: &HermitianBasis) -> Vec<BigRational> {
        assert_eq!(basis.dim(), self.dim);
        let mut v = vec![BigRational::zero(); basis.len()];
        for i in 0..self.dim {
            v[basis.diag_col(i)] = self.re(i, i).clone();
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                v[basis.sym_col(i, j)] = self.re(i, j).clone();
                v[basis.antisym_col(i, j)] = self.im(i, j).clone();
            }
        }
        v
    }

    /// `max_i sum_j (|re| + |im|)` over row `i`: a rational upper bound on
    /// the spectral radius (each modulus is bounded by |re| + |im|).
    pub fn gershgorin_radius(&self) -> BigRational {
        let mut best = BigRational::zero();
        for i in 0..self.dim {
            let mut row = BigRational::zero();
            for j in 0..self.dim {
                row += self.re(i, j).abs() + self.im(i, j).abs();
            }
            if row > best {
                best = row;
            }
        }
        best
    }

    /// Strict diagonal-dominance check: for every row,
    /// `re(i,i) > sum_{j != i} (|re(i,j)| + |im(i,j)|)`.
    /// Implies the operator is positive definite (Gershgorin discs stay in
    /// the right half line; the |re|+|im| sum over-bounds each modulus).
    pub fn gershgorin_positive(&self) -> bool {
        for i in 0..self.dim {
            let mut off = BigRational::zero();
            for j in 0..self.dim {
                if j != i {
                    off += self.re(i, j).abs() + self.im(i, j).abs();
                }
            }
            if self.im(i, i) != &BigRational::zero() || self.re(i, i) <= &off {
                return false;
            }
        }
        true
    }

    /// Exact positive-definiteness audit via leading principal minors of the
    /// real embedding `[[Re, -Im], [Im, Re]]` (a Hermitian operator is
    /// positive definite iff its real embedding is).
    pub fn minors_positive(&self) -> Result<()> {
        let d = self.dim;
        let n = 2 * d;
        let mut emb = RationalMatrix::zero(n, n);
        for i in 0..d {
            for j in 0..d {
                *emb.entry_mut(i, j) = self.re(i, j).clone();
                *emb.entry_mut(i, j + d) = -self.im(i, j);
                *emb.entry_mut(i + d, j) = self.im(i, j).clone();
                *emb.entry_mut(i + d, j + d) = self.re(i, j).clone();
            }
        }
        for k in 1..=n {
            let det = leading_minor(&emb, k);
            if det <= BigRational::zero() {
                return Err(Error::Logic(format!(
                    "leading principal minor {k} is {det}, not positive"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for HermitianOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let re = self.re(i, j);
                    let im = self.im(i, j);
                    if im.is_zero() {
                        format!("{re}")
                    } else if im.is_positive() {
                        format!("{re}+{im}i")
                    } else {
                        format!("{re}{im}i")
                    }
                })
                .collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// Determinant of the leading k x k submatrix, by exact elimination with
/// sign-tracked row swaps.
fn leading_minor(mat: &RationalMatrix, k: usize) -> BigRational {
    let mut m: Vec<Vec<BigRational>> = (0..k)
        .map(|r| (0..k).map(|c| mat.entry(r, c).clone()).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let pivot = m[col][col].clone();
        for r in (col + 1)..k {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..k {
                let v = &m[r][c] - &factor * &m[col][c];
                m[r][c] = v;
            }
        }
    }
    det
}
