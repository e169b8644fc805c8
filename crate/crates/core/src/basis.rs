//! Orthonormal traceless Hermitian operator bases.
//!
//! The generalized Gell-Mann matrices, scaled so that `Tr(F_i F_j) = delta_ij`,
//! partitioned into `d + 1` groups of `d - 1` operators.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Generalized Gell-Mann generators with `Tr(F^2) = 1`.
///
/// Order: symmetric off-diagonal pairs `(i, j)`, `i < j`, lexicographic; then
/// antisymmetric pairs in the same order; then the `d - 1` diagonal matrices.
pub fn gellmann_generators(d: usize) -> Result<Vec<ComplexMatrix>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "operator basis needs d >= 2, got {d}"
        )));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();

    let mut out = Vec::with_capacity(d * d - 1);
    for &(i, j) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m.set(i, j, C64::new(r, 0.0));
        m.set(j, i, C64::new(r, 0.0));
        out.push(m);
    }
    for &(i, j) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m.set(i, j, C64::new(0.0, -r));
        m.set(j, i, C64::new(0.0, r));
        out.push(m);
    }
    for k in 1..d {
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut diag = vec![0.0; d];
        diag[..k].fill(1.0 / norm);
        diag[k] = -(k as f64) / norm;
        out.push(ComplexMatrix::from_real_diagonal(&diag));
    }
    Ok(out)
}

/// `d^2 - 1` orthonormal traceless Hermitian operators `F_{n,b}`, stored as
/// `groups[b][n]` with zero-based `b < d + 1`, `n < d - 1`.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    d: usize,
    groups: Vec<Vec<ComplexMatrix>>,
}

impl OperatorBasis {
    /// Lexicographically partitioned Gell-Mann basis.
    pub fn gell_mann(d: usize) -> Result<Self> {
        partition_basis(gellmann_generators(d)?, d)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn groups(&self) -> &[Vec<ComplexMatrix>] {
        &self.groups
    }

    /// `F_{n,b}` with zero-based indices.
    pub fn operator(&self, n: usize, b: usize) -> &ComplexMatrix {
        &self.groups[b][n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.groups.iter().flatten()
    }

    /// Largest deviation from Hermiticity, tracelessness and orthonormality.
    pub fn invariant_deviation(&self) -> f64 {
        let ops: Vec<&ComplexMatrix> = self.iter().collect();
        let mut dev = 0.0f64;
        for (i, a) in ops.iter().enumerate() {
            dev = dev.max(a.hermiticity_deviation());
            dev = dev.max(a.trace().norm());
            for (j, b) in ops.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((a.trace_product(b) - C64::new(target, 0.0)).norm());
            }
        }
        dev
    }
}

/// Fills groups `b = 1..d+1` with `d - 1` consecutive generators each.
pub fn partition_basis(generators: Vec<ComplexMatrix>, d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "operator basis needs d >= 2, got {d}"
        )));
    }
    if generators.len() != d * d - 1 {
        return Err(Error::Dimension(format!(
            "expected {} generators for d = {d}, got {}",
            d * d - 1,
            generators.len()
        )));
    }
    if let Some(g) = generators.iter().find(|g| g.rows() != d || g.cols() != d) {
        return Err(Error::Dimension(format!(
            "generator of size {}x{} in a d = {d} basis",
            g.rows(),
            g.cols()
        )));
    }
    let mut iter = generators.into_iter();
    let groups = (0..=d)
        .map(|_| iter.by_ref().take(d - 1).collect())
        .collect();
    Ok(OperatorBasis { d, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli() -> [ComplexMatrix; 3] {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        [
            ComplexMatrix::from_row_major(2, 2, vec![z, one, one, z]).unwrap(),
            ComplexMatrix::from_row_major(2, 2, vec![z, -i, i, z]).unwrap(),
            ComplexMatrix::from_row_major(2, 2, vec![one, z, z, -one]).unwrap(),
        ]
    }

    #[test]
    fn d2_is_scaled_pauli() {
        let g = gellmann_generators(2).unwrap();
        assert_eq!(g.len(), 3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (gen, p) in g.iter().zip(pauli().iter()) {
            assert!(gen.max_abs_diff(&p.scale(s)) < 1e-15);
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        for d in 2..=6 {
            let g = gellmann_generators(d).unwrap();
            assert_eq!(g.len(), d * d - 1);
            for (i, a) in g.iter().enumerate() {
                assert!(a.hermiticity_deviation() < 1e-15);
                assert!(a.trace().norm() < 1e-12);
                for (j, b) in g.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    // Entrywise double sum, independent of trace_product.
                    let mut acc = C64::new(0.0, 0.0);
                    for r in 0..d {
                        for c in 0..d {
                            acc += a.get(r, c) * b.get(c, r);
                        }
                    }
                    assert!((acc.re - expected).abs() < 1e-12 && acc.im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_small_d_and_wrong_count() {
        assert!(gellmann_generators(1).is_err());
        let g = gellmann_generators(3).unwrap();
        assert!(matches!(
            partition_basis(g[..7].to_vec(), 3),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn partition_shapes() {
        let b2 = OperatorBasis::gell_mann(2).unwrap();
        assert_eq!(b2.groups().len(), 3);
        assert!(b2.groups().iter().all(|g| g.len() == 1));
        let b3 = OperatorBasis::gell_mann(3).unwrap();
        assert_eq!(b3.groups().len(), 4);
        assert!(b3.groups().iter().all(|g| g.len() == 2));
        assert!(b3.invariant_deviation() < 1e-12);
    }

    #[test]
    fn permuted_generators_still_valid() {
        let mut g = gellmann_generators(4).unwrap();
        g.reverse();
        g.swap(0, 7);
        let basis = partition_basis(g, 4).unwrap();
        assert!(basis.invariant_deviation() < 1e-12);
    }
}
