//! Benchmark and fixture states.
//!
//! Two families of PPT bound entangled states on `C^3 (x) C^3` (the tiles
//! UPB state and Horodecki's `rho_upsilon`), their white-noise mixtures,
//! maximally entangled and random states, and density-matrix file I/O.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::io::{DensityFile, MatrixRecord};
use crate::linalg::{self, ComplexMatrix, PureState, Subsystem, C64};

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    /// Validates every invariant and names the first one that fails.
    pub fn new_with(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState(format!(
                "not square ({}x{})",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > tol.density_hermitian {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |rho - rho^dagger| = {dev:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.density_trace || tr.im.abs() > tol.density_trace {
            return Err(Error::InvalidState(format!("trace is {tr}, not 1")));
        }
        let min = linalg::hermitian_eigenvalues(&matrix)?[0];
        if min < -tol.density_min_eigenvalue {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(Self {
            dim: matrix.rows(),
            matrix,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// `weight * self + (1 - weight) I/dim`
    pub fn with_white_noise(&self, weight: f64) -> Result<Self> {
        check_unit("mixing weight", weight)?;
        let noise = (1.0 - weight) / self.dim as f64;
        Self::new(self.matrix.scale(weight).add_scaled_identity(noise))
    }

    /// Smallest eigenvalue of the partial transpose on `B`, for a
    /// `dim_a x dim_b` split.
    pub fn min_partial_transpose_eigenvalue(&self, dim_a: usize, dim_b: usize) -> Result<f64> {
        let pt = linalg::partial_transpose(&self.matrix, dim_a, dim_b, Subsystem::B)?;
        Ok(linalg::hermitian_eigenvalues(&pt)?[0])
    }

    pub fn to_file(&self) -> DensityFile {
        DensityFile {
            dim: self.dim,
            matrix: MatrixRecord::from_matrix(&self.matrix),
        }
    }

    pub fn from_file(file: &DensityFile) -> Result<Self> {
        let m = file.matrix.to_matrix()?;
        if m.rows() != file.dim || m.cols() != file.dim {
            return Err(Error::Format(format!(
                "dim = {} but matrix is {}x{}",
                file.dim,
                m.rows(),
                m.cols()
            )));
        }
        Self::new(m)
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        Self {
            dim: psi.dim_a() * psi.dim_b(),
            matrix: psi.density(),
        }
    }
}

fn check_unit(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter(format!(
            "{name} = {value} is outside [0, 1]"
        )));
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// The five product vectors of the tiles unextendible product basis.
pub fn tiles_vectors() -> [Vec<C64>; 5] {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let r3 = 1.0 / 3f64.sqrt();
    let ket = |a: [f64; 3], b: [f64; 3]| -> Vec<C64> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| real(x * y)))
            .collect()
    };
    let e0 = [1.0, 0.0, 0.0];
    let e2 = [0.0, 0.0, 1.0];
    let m01 = [r2, -r2, 0.0];
    let m12 = [0.0, r2, -r2];
    let plus = [r3, r3, r3];
    [
        ket(e0, m01),
        ket(m01, e2),
        ket(e2, m12),
        ket(m12, e0),
        ket(plus, plus),
    ]
}

/// `(I - sum_i |psi_i><psi_i|) / 4` over the tiles vectors.
pub fn tiles_state() -> DensityMatrix {
    let mut m = ComplexMatrix::identity(9);
    for v in tiles_vectors() {
        m = &m - &ComplexMatrix::outer(&v, &v);
    }
    DensityMatrix {
        dim: 9,
        matrix: m.scale(0.25),
    }
}

/// `(1 - p)/9 I + p rho_tiles`
pub fn tiles_noisy(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    tiles_state().with_white_noise(p)
}

/// Horodecki's 3x3 bound entangled state `rho_upsilon`.
pub fn horodecki_state(upsilon: f64) -> Result<DensityMatrix> {
    check_unit("upsilon", upsilon)?;
    let u = upsilon;
    let mut m = ComplexMatrix::from_real_diagonal(&[u; 9]);
    for a in [0, 4, 8] {
        for b in [0, 4, 8] {
            m.set(a, b, real(u));
        }
    }
    let corner = (1.0 - u * u).sqrt() / 2.0;
    m.set(6, 6, real((1.0 + u) / 2.0));
    m.set(8, 8, real((1.0 + u) / 2.0));
    m.set(6, 8, real(corner));
    m.set(8, 6, real(corner));
    Ok(DensityMatrix {
        dim: 9,
        matrix: m.scale(1.0 / (1.0 + 8.0 * u)),
    })
}

/// `q rho_upsilon + (1 - q)/9 I`
pub fn horodecki_noisy(upsilon: f64, q: f64) -> Result<DensityMatrix> {
    check_unit("q", q)?;
    horodecki_state(upsilon)?.with_white_noise(q)
}

/// `sum_i |ii> / sqrt d`
pub fn max_entangled(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    let mut amps = vec![C64::new(0.0, 0.0); d * d];
    let a = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        amps[i * d + i] = real(a);
    }
    PureState::new(d, d, amps)
}

fn complex_normal(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Normalized complex Gaussian amplitudes, deterministic per seed.
pub fn random_pure(dim_a: usize, dim_b: usize, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..dim_a * dim_b).map(|_| complex_normal(&mut rng)).collect();
    PureState::normalized(dim_a, dim_b, amps)
}

/// Random product state `|a> (x) |b>`.
pub fn random_product(dim_a: usize, dim_b: usize, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<C64> = (0..dim_a).map(|_| complex_normal(&mut rng)).collect();
    let b: Vec<C64> = (0..dim_b).map(|_| complex_normal(&mut rng)).collect();
    PureState::product(&a, &b)
}

/// `G G^dagger / Tr(G G^dagger)` with complex Gaussian `G` of shape
/// `dim x rank`.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} is not in 1..={dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..dim * rank).map(|_| complex_normal(&mut rng)).collect();
    let g = ComplexMatrix::from_row_major(dim, rank, entries)?;
    let gg = &g * &g.adjoint();
    let herm = (&gg + &gg.adjoint()).scale(0.5);
    let tr = herm.trace().re;
    DensityMatrix::new(herm.scale(1.0 / tr))
}

pub fn save_state(state: &DensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    state.to_file().write(path)
}

/// Reads and validates a density-matrix file.
pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    DensityMatrix::from_file(&DensityFile::read(path)?)
}
