//! Dense complex linear algebra used by every other module.
//!
//! Matrices are small (at most a few hundred rows), so everything is stored
//! dense. SVD and Hermitian eigendecomposition are delegated to `nalgebra`;
//! Kronecker products, partial traces and the Schmidt decomposition are
//! written out directly.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{ComplexField, DMatrix, SymmetricEigen, SVD};
use num_complex::Complex;

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Real dense matrix, used for correlation matrices.
pub type RealMatrix = DMatrix<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong counts and
    /// non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    pub fn from_dmatrix(inner: DMatrix<C64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                let z = inner[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { inner })
    }

    /// Real matrix promoted to complex.
    pub fn from_real(m: &RealMatrix) -> Result<Self> {
        Self::from_dmatrix(m.map(|x| C64::new(x, 0.0)))
    }

    pub(crate) fn wrap(inner: DMatrix<C64>) -> Self {
        Self { inner }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::wrap(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(DMatrix::identity(n, n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        Self::wrap(m)
    }

    /// `|u><v|`
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::wrap(DMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj()))
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.inner[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.inner
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.inner.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(self.inner.transpose())
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::wrap(self.inner.map(|z| z * factor))
    }

    /// Real parts, for matrices known to be real.
    pub fn real_part(&self) -> RealMatrix {
        self.inner.map(|z| z.re)
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows(), self.cols()),
            (other.rows(), other.cols()),
            "max_abs_diff on matrices of different shape"
        );
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|`, or infinity for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.inner[(i, j)] - self.inner[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> C64 {
        debug_assert_eq!(self.cols(), other.rows());
        debug_assert_eq!(self.rows(), other.cols());
        let mut acc = ZERO;
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                acc += self.inner[(i, k)] * other.inner[(k, i)];
            }
        }
        acc
    }

    /// `self + alpha * I`
    pub(crate) fn add_scaled_identity(&self, alpha: f64) -> Self {
        let mut m = self.inner.clone();
        for i in 0..m.nrows().min(m.ncols()) {
            m[(i, i)] += alpha;
        }
        Self::wrap(m)
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: C64) {
        self.inner[(row, col)] = value;
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.inner + &rhs.inner)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.inner - &rhs.inner)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.inner * &rhs.inner)
    }
}

/// Which factor of a bipartite system to keep or act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_limit(a, b, Tolerances::default().max_dimension)
}

pub fn kron_with_limit(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_dimension: usize,
) -> Result<ComplexMatrix> {
    let rows = a.rows().checked_mul(b.rows());
    let cols = a.cols().checked_mul(b.cols());
    match (rows, cols) {
        (Some(r), Some(c)) if r <= max_dimension && c <= max_dimension => {
            Ok(ComplexMatrix::wrap(a.inner.kronecker(&b.inner)))
        }
        _ => Err(Error::TooLarge {
            rows: a.rows().saturating_mul(b.rows()),
            cols: a.cols().saturating_mul(b.cols()),
            max: max_dimension,
        }),
    }
}

fn check_bipartite(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let n = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 || m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "expected a {n}x{n} matrix for {dim_a}x{dim_b} subsystems, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Reduced operator on the `keep` subsystem. Index convention: `|i j>` sits at
/// row `i * dim_b + j`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    let out = match keep {
        Subsystem::A => DMatrix::from_fn(dim_a, dim_a, |i, k| {
            (0..dim_b)
                .map(|j| m.inner[(i * dim_b + j, k * dim_b + j)])
                .sum()
        }),
        Subsystem::B => DMatrix::from_fn(dim_b, dim_b, |j, l| {
            (0..dim_a)
                .map(|i| m.inner[(i * dim_b + j, i * dim_b + l)])
                .sum()
        }),
    };
    Ok(ComplexMatrix::wrap(out))
}

/// Transpose on one tensor factor.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    on: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    let n = dim_a * dim_b;
    let out = DMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / dim_b, r % dim_b);
        let (k, l) = (c / dim_b, c % dim_b);
        match on {
            Subsystem::A => m.inner[(k * dim_b + j, i * dim_b + l)],
            Subsystem::B => m.inner[(i * dim_b + l, k * dim_b + j)],
        }
    });
    Ok(ComplexMatrix::wrap(out))
}

/// The swap operator on `C^d (x) C^d` in the computational basis.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let n = d * d;
    let mut m = DMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + j, j * d + i)] = ONE;
        }
    }
    ComplexMatrix::wrap(m)
}

fn singular_values_of<T>(m: DMatrix<T>, max_iterations: usize) -> Result<Vec<f64>>
where
    T: ComplexField<RealField = f64>,
{
    let svd = SVD::try_new(m, false, false, f64::EPSILON, max_iterations).ok_or(
        Error::NoConvergence {
            what: "SVD",
            iterations: max_iterations,
            eps: f64::EPSILON,
        },
    )?;
    let mut values: Vec<f64> = svd.singular_values.iter().map(|&s| s.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Singular values in non-increasing order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    singular_values_of(m.inner.clone(), Tolerances::default().max_iterations)
}

pub fn singular_values_real(m: &RealMatrix) -> Result<Vec<f64>> {
    singular_values_of(m.clone(), Tolerances::default().max_iterations)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

pub fn trace_norm_real(m: &RealMatrix) -> Result<f64> {
    Ok(singular_values_real(m)?.iter().sum())
}

/// Eigenvalues (ascending) and matching eigenvectors as columns.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    hermitian_eig_with(m, &Tolerances::default())
}

pub fn hermitian_eig_with(
    m: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<(Vec<f64>, ComplexMatrix)> {
    let deviation = m.hermiticity_deviation();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::try_new(m.inner.clone(), f64::EPSILON, tol.max_iterations).ok_or(
        Error::NoConvergence {
            what: "Hermitian eigendecomposition",
            iterations: tol.max_iterations,
            eps: f64::EPSILON,
        },
    )?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = m.rows();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, ComplexMatrix::wrap(vectors)))
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let deviation = m.hermiticity_deviation();
    let tol = Tolerances::default();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation });
    }
    let mut values: Vec<f64> = m.inner.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Normalized bipartite pure state, amplitude of `|i j>` at `i * dim_b + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<C64>) -> Result<Self> {
        Self::new_with(dim_a, dim_b, amplitudes, &Tolerances::default())
    }

    pub fn new_with(
        dim_a: usize,
        dim_b: usize,
        amplitudes: Vec<C64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || amplitudes.len() != dim_a * dim_b {
            return Err(Error::Dimension(format!(
                "{} amplitudes for a {dim_a}x{dim_b} system",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol.normalization {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Normalizes the given amplitudes first.
    pub fn normalized(dim_a: usize, dim_b: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        Self::new(dim_a, dim_b, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// `|a> (x) |b>` from two (not necessarily normalized) local vectors.
    pub fn product(a: &[C64], b: &[C64]) -> Result<Self> {
        let amps = a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect();
        Self::normalized(a.len(), b.len(), amps)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// The `dim_a x dim_b` matrix of amplitudes.
    pub fn amplitude_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::wrap(DMatrix::from_row_slice(
            self.dim_a,
            self.dim_b,
            &self.amplitudes,
        ))
    }

    /// `|psi><psi|`
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Schmidt coefficients (non-increasing) with the local bases as columns.
#[derive(Debug, Clone)]
pub struct SchmidtData {
    pub coefficients: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
    pub rank: usize,
}

impl SchmidtData {
    /// `sum_i lambda_i left_i (x) right_i`
    pub fn reconstruct(&self) -> Vec<C64> {
        let (da, db) = (self.left.rows(), self.right.rows());
        let mut out = vec![ZERO; da * db];
        for (k, &lambda) in self.coefficients.iter().enumerate() {
            for i in 0..da {
                let a = self.left.get(i, k) * lambda;
                for j in 0..db {
                    out[i * db + j] += a * self.right.get(j, k);
                }
            }
        }
        out
    }

    /// `sum_{i<j} lambda_i lambda_j`
    pub fn pairwise_sum(&self) -> f64 {
        let total: f64 = self.coefficients.iter().sum();
        let squares: f64 = self.coefficients.iter().map(|l| l * l).sum();
        0.5 * (total * total - squares)
    }
}

pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtData> {
    schmidt_decompose_with(psi, &Tolerances::default())
}

pub fn schmidt_decompose_with(psi: &PureState, tol: &Tolerances) -> Result<SchmidtData> {
    let norm_sqr: f64 = psi.amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > tol.normalization {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let amp = psi.amplitude_matrix().into_dmatrix();
    let svd = SVD::try_new(amp, true, true, f64::EPSILON, tol.max_iterations).ok_or(
        Error::NoConvergence {
            what: "SVD",
            iterations: tol.max_iterations,
            eps: f64::EPSILON,
        },
    )?;
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let coefficients: Vec<f64> = order
        .iter()
        .map(|&i| svd.singular_values[i].max(0.0))
        .collect();
    // psi_{jk} = sum_i s_i u_{ji} (v^dagger)_{ik}, so the right vectors are rows of v^dagger.
    let left = DMatrix::from_fn(psi.dim_a, k, |r, c| u[(r, order[c])]);
    let right = DMatrix::from_fn(psi.dim_b, k, |r, c| v_t[(order[c], r)]);
    let rank = coefficients.iter().filter(|&&l| l > tol.schmidt_rank).count();
    Ok(SchmidtData {
        coefficients,
        left: ComplexMatrix::wrap(left),
        right: ComplexMatrix::wrap(right),
        rank,
    })
}
