//! Correlation matrices of MUM outcomes and the concurrence bounds and
//! separability tests built on their trace norm.
//!
//! For two MUM families with a common `kappa`, the correlation matrix has
//! entries `J[(b,n), (b',n')] = Tr(rho (P_n^(b) (x) P_n'^(b')))`. On a pure
//! state with Schmidt coefficients `lambda_i`,
//!
//! ```text
//! ||J||_tr = 2 (kappa d - 1)/(d - 1) * sum_{i<j} lambda_i lambda_j + 1 + kappa
//! ```
//!
//! so `||J||_tr > 1 + kappa` certifies entanglement, and together with
//! `C(psi) >= 2 sqrt(2/(d(d-1))) sum_{i<j} lambda_i lambda_j` and convexity of
//! the trace norm this gives a lower bound on the concurrence of mixed states.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, PureState, RealMatrix, SchmidtData, Subsystem, C64};
use crate::mum::MumFamily;

/// Which operators populate the correlation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// POVM effects `P_n^(b)`. This is the convention the bounds use.
    P,
    /// Traceless blocks `F_n^(b)`; diagnostic only.
    F,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::P => "P",
            Convention::F => "F",
        })
    }
}

/// Which coefficient multiplies `||J|| - (1 + kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `sqrt(2(d-1)/(d(kappa d - 1)))`
    Literal,
    /// `sqrt(2(d-1)/d) / (kappa d - 1)`, tight on maximally entangled states.
    #[default]
    Derived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Literal => "literal",
            Variant::Derived => "derived",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Variant::Literal),
            "derived" => Ok(Variant::Derived),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Entangled,
    Undetected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "entangled",
            Verdict::Undetected => "undetected",
        })
    }
}

/// `J(rho)` with its singular values. Rows and columns are flattened as
/// `b * d + n` (zero-based).
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub d: usize,
    pub convention: Convention,
    pub matrix: RealMatrix,
    pub singular_values: Vec<f64>,
    pub trace_norm: f64,
    /// Largest imaginary part dropped when the entries were made real.
    pub max_imaginary: f64,
}

fn check_density(rho: &ComplexMatrix, n: usize) -> Result<()> {
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::Dimension(format!(
            "state is {}x{}, expected {n}x{n}",
            rho.rows(),
            rho.cols()
        )));
    }
    let dev = rho.hermiticity_deviation();
    if dev > 1e-9 {
        return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:.3e})")));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::InvalidState(format!("trace is {tr}")));
    }
    let min = linalg::hermitian_eigenvalues(rho)?[0];
    if min < -1e-9 {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

fn check_families(fam_a: &MumFamily, fam_b: &MumFamily) -> Result<usize> {
    if fam_a.d() != fam_b.d() {
        return Err(Error::Dimension(format!(
            "MUM families act on d = {} and d = {}",
            fam_a.d(),
            fam_b.d()
        )));
    }
    if (fam_a.kappa() - fam_b.kappa()).abs() > 1e-12 {
        return Err(Error::KappaMismatch {
            a: fam_a.kappa(),
            b: fam_b.kappa(),
        });
    }
    Ok(fam_a.d())
}

/// `R = Tr_A(rho (X (x) I))`, so that `Tr(rho (X (x) Y)) = Tr(R Y)`.
fn contract_left(rho: &ComplexMatrix, x: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let mut r = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        for l in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..d {
                for j in 0..d {
                    acc += rho.get(i * d + k, j * d + l) * x.get(j, i);
                }
            }
            r.set(k, l, acc);
        }
    }
    r
}

pub fn build_correlation_matrix(
    rho: &ComplexMatrix,
    fam_a: &MumFamily,
    fam_b: &MumFamily,
    convention: Convention,
) -> Result<CorrelationMatrix> {
    let d = check_families(fam_a, fam_b)?;
    check_density(rho, d * d)?;

    let ops = |fam: &MumFamily| -> Vec<ComplexMatrix> {
        match convention {
            Convention::P => fam.effects().cloned().collect(),
            Convention::F => fam.blocks().iter().cloned().collect(),
        }
    };
    let left = ops(fam_a);
    let right = ops(fam_b);
    let size = left.len();

    let mut matrix = RealMatrix::zeros(size, size);
    let mut max_imaginary = 0.0f64;
    for (row, x) in left.iter().enumerate() {
        let reduced = contract_left(rho, x, d);
        for (col, y) in right.iter().enumerate() {
            let value = reduced.trace_product(y);
            max_imaginary = max_imaginary.max(value.im.abs());
            matrix[(row, col)] = value.re;
        }
    }
    let singular_values = linalg::singular_values_real(&matrix)?;
    let trace_norm = singular_values.iter().sum();
    Ok(CorrelationMatrix {
        d,
        convention,
        matrix,
        singular_values,
        trace_norm,
        max_imaginary,
    })
}

/// `2 (kappa d - 1)/(d - 1) sum_{i<j} lambda_i lambda_j + 1 + kappa`
pub fn pure_trace_norm_closed_form(schmidt: &SchmidtData, d: usize, kappa: f64) -> f64 {
    let df = d as f64;
    2.0 * (kappa * df - 1.0) / (df - 1.0) * schmidt.pairwise_sum() + 1.0 + kappa
}

/// `sqrt(2(d-1)/(d(kappa d - 1)))`
pub fn literal_coefficient(d: usize, kappa: f64) -> f64 {
    let df = d as f64;
    (2.0 * (df - 1.0) / (df * (kappa * df - 1.0))).sqrt()
}

/// `sqrt(2(d-1)/d) / (kappa d - 1)`
pub fn derived_coefficient(d: usize, kappa: f64) -> f64 {
    let df = d as f64;
    (2.0 * (df - 1.0) / df).sqrt() / (kappa * df - 1.0)
}

/// `max(0, coefficient * (||J|| - (1 + kappa)))`
pub fn bound_from_trace_norm(trace_norm: f64, d: usize, kappa: f64, variant: Variant) -> f64 {
    let coefficient = match variant {
        Variant::Literal => literal_coefficient(d, kappa),
        Variant::Derived => derived_coefficient(d, kappa),
    };
    (coefficient * (trace_norm - (1.0 + kappa))).max(0.0)
}

/// `1 + (d - 1)(||J|| - 1 - kappa)/(kappa d - 1)`, never below 1.
///
/// Follows from `2 sum_{i<j} lambda_i lambda_j <= r - 1` and convexity.
pub fn schmidt_number_lower_bound(trace_norm: f64, d: usize, kappa: f64) -> f64 {
    let df = d as f64;
    (1.0 + (df - 1.0) * (trace_norm - 1.0 - kappa) / (kappa * df - 1.0)).max(1.0)
}

/// Everything the criteria say about one state.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub d: usize,
    pub t: f64,
    pub kappa: f64,
    /// `||J||_tr` with effects; drives every bound and verdict.
    pub trace_norm_p: f64,
    /// `||J||_tr` with the traceless blocks (diagnostic).
    pub trace_norm_f: f64,
    /// `1 + kappa`
    pub threshold: f64,
    pub bound_literal: f64,
    pub bound_derived: f64,
    pub schmidt_number_lb: f64,
    pub verdict: Verdict,
    pub variant: Variant,
}

impl BoundReport {
    /// The bound selected by `variant`.
    pub fn headline(&self) -> f64 {
        match self.variant {
            Variant::Literal => self.bound_literal,
            Variant::Derived => self.bound_derived,
        }
    }

    /// `||J|| - (1 + kappa)`
    pub fn margin(&self) -> f64 {
        self.trace_norm_p - self.threshold
    }
}

pub fn concurrence_lower_bound(
    rho: &ComplexMatrix,
    fam_a: &MumFamily,
    fam_b: &MumFamily,
    variant: Variant,
) -> Result<BoundReport> {
    concurrence_lower_bound_with(rho, fam_a, fam_b, variant, &Tolerances::default())
}

pub fn concurrence_lower_bound_with(
    rho: &ComplexMatrix,
    fam_a: &MumFamily,
    fam_b: &MumFamily,
    variant: Variant,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let jp = build_correlation_matrix(rho, fam_a, fam_b, Convention::P)?;
    let jf = build_correlation_matrix(rho, fam_a, fam_b, Convention::F)?;
    let (d, kappa) = (fam_a.d(), fam_a.kappa());
    let threshold = 1.0 + kappa;
    Ok(BoundReport {
        d,
        t: fam_a.t(),
        kappa,
        trace_norm_p: jp.trace_norm,
        trace_norm_f: jf.trace_norm,
        threshold,
        bound_literal: bound_from_trace_norm(jp.trace_norm, d, kappa, Variant::Literal),
        bound_derived: bound_from_trace_norm(jp.trace_norm, d, kappa, Variant::Derived),
        schmidt_number_lb: schmidt_number_lower_bound(jp.trace_norm, d, kappa),
        verdict: verdict_for(jp.trace_norm, kappa, tol.verdict),
        variant,
    })
}

fn verdict_for(trace_norm: f64, kappa: f64, tol: f64) -> Verdict {
    if trace_norm > 1.0 + kappa + tol {
        Verdict::Entangled
    } else {
        Verdict::Undetected
    }
}

/// `||J|| > 1 + kappa + tol` means entangled.
pub fn separability_test(
    rho: &ComplexMatrix,
    fam_a: &MumFamily,
    fam_b: &MumFamily,
    tol: f64,
) -> Result<Verdict> {
    let j = build_correlation_matrix(rho, fam_a, fam_b, Convention::P)?;
    Ok(verdict_for(j.trace_norm, fam_a.kappa(), tol))
}

/// `sqrt(2 (1 - Tr rho_A^2))`
pub fn pure_concurrence(psi: &PureState) -> Result<f64> {
    let norm_sqr: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > Tolerances::default().normalization {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let rho_a = linalg::partial_trace(&psi.density(), psi.dim_a(), psi.dim_b(), Subsystem::A)?;
    let purity = rho_a.trace_product(&rho_a).re;
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

/// Separability threshold for an informationally complete (N, M)-POVM with
/// free parameter `x`: `(d-1)(x M^2 + d^2) / (d M (M-1))`.
pub fn nm_povm_threshold(d: usize, m: usize, x: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need M >= 2, got {m}")));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    let (df, mf) = (d as f64, m as f64);
    let value = (df - 1.0) * (x * mf * mf + df * df) / (df * mf * (mf - 1.0));
    if !(value > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "x = {x} gives a non-positive threshold"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::schmidt_decompose;
    use crate::mum::{t_interval, build_f_blocks};
    use crate::basis::OperatorBasis;
    use crate::states;

    fn fam(d: usize, t: f64) -> MumFamily {
        MumFamily::gell_mann(d, t).unwrap()
    }

    fn mixed(d: usize) -> ComplexMatrix {
        ComplexMatrix::identity(d * d).scale(1.0 / (d * d) as f64)
    }

    #[test]
    fn maximally_mixed_entries() {
        let f = fam(3, 0.05);
        let jp = build_correlation_matrix(&mixed(3), &f, &f, Convention::P).unwrap();
        assert!(jp.matrix.iter().all(|&x| (x - 1.0 / 9.0).abs() < 1e-14));
        let jf = build_correlation_matrix(&mixed(3), &f, &f, Convention::F).unwrap();
        assert!(jf.matrix.iter().all(|&x| x.abs() < 1e-14));
        assert!((jp.trace_norm - jp.singular_values.iter().sum::<f64>()).abs() < 1e-10);
    }

    #[test]
    fn effect_and_block_entries_are_affinely_related() {
        let d = 3;
        let t = 0.07;
        let f = fam(d, t);
        let rho = states::random_density(d * d, 4, 17).unwrap();
        let rho = rho.matrix();
        let jp = build_correlation_matrix(rho, &f, &f, Convention::P).unwrap();
        let jf = build_correlation_matrix(rho, &f, &f, Convention::F).unwrap();
        let rho_a = linalg::partial_trace(rho, d, d, Subsystem::A).unwrap();
        let rho_b = linalg::partial_trace(rho, d, d, Subsystem::B).unwrap();
        let blocks: Vec<&ComplexMatrix> = f.blocks().iter().collect();
        for (r, x) in blocks.iter().enumerate() {
            for (c, y) in blocks.iter().enumerate() {
                let expected = 1.0 / (d * d) as f64
                    + t / d as f64 * rho_a.trace_product(x).re
                    + t / d as f64 * rho_b.trace_product(y).re
                    + t * t * jf.matrix[(r, c)];
                assert!((jp.matrix[(r, c)] - expected).abs() < 1e-13);
                assert!((0.0..=1.0).contains(&jp.matrix[(r, c)]));
            }
        }
        assert!(jp.max_imaginary < 1e-12 && jf.max_imaginary < 1e-12);
    }

    #[test]
    fn mismatched_families_are_rejected() {
        let a = fam(3, 0.05);
        let b = fam(3, 0.06);
        assert!(matches!(
            build_correlation_matrix(&mixed(3), &a, &b, Convention::P),
            Err(Error::KappaMismatch { .. })
        ));
        // Same kappa through t -> -t is allowed.
        let c = fam(3, -0.05);
        assert!(build_correlation_matrix(&mixed(3), &a, &c, Convention::P).is_ok());
        let e = fam(2, 0.05);
        assert!(matches!(
            build_correlation_matrix(&mixed(3), &a, &e, Convention::P),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            build_correlation_matrix(&mixed(2), &a, &a, Convention::P),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn closed_form_on_product_and_max_entangled() {
        let d = 3;
        let kappa = 5.0 / 9.0;
        let prod = PureState::product(
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            &[C64::new(0.6, 0.0), C64::new(0.0, 0.8), C64::new(0.0, 0.0)],
        )
        .unwrap();
        let s = schmidt_decompose(&prod).unwrap();
        assert!((pure_trace_norm_closed_form(&s, d, kappa) - (1.0 + kappa)).abs() < 1e-14);

        let me = states::max_entangled(d).unwrap();
        let s = schmidt_decompose(&me).unwrap();
        assert!((pure_trace_norm_closed_form(&s, d, kappa) - 20.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_numerical_j() {
        for (d, seed) in [(2, 1u64), (3, 2), (4, 3)] {
            let iv = t_interval(&build_f_blocks(&OperatorBasis::gell_mann(d).unwrap())).unwrap();
            let f = fam(d, 0.5 * iv.upper);
            for k in 0..20 {
                let psi = states::random_pure(d, d, seed * 1000 + k).unwrap();
                let j = build_correlation_matrix(&psi.density(), &f, &f, Convention::P).unwrap();
                let cf = pure_trace_norm_closed_form(&schmidt_decompose(&psi).unwrap(), d, f.kappa());
                assert!((j.trace_norm - cf).abs() < 1e-8, "d={d}: {} vs {cf}", j.trace_norm);
            }
        }
    }

    #[test]
    fn product_state_bounds_clamp_to_zero() {
        let f = fam(3, 0.1);
        let psi = PureState::product(
            &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            &[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        )
        .unwrap();
        let r = concurrence_lower_bound(&psi.density(), &f, &f, Variant::Derived).unwrap();
        assert_eq!(r.bound_literal, 0.0);
        assert_eq!(r.bound_derived, 0.0);
        assert_eq!(r.verdict, Verdict::Undetected);
        assert_eq!(r.schmidt_number_lb, 1.0);
    }

    #[test]
    fn derived_bound_is_tight_on_max_entangled() {
        let d = 3;
        let f = fam(d, 0.122);
        let me = states::max_entangled(d).unwrap();
        let r = concurrence_lower_bound(&me.density(), &f, &f, Variant::Derived).unwrap();
        let exact = (4.0f64 / 3.0).sqrt();
        assert!((r.bound_derived - exact).abs() < 1e-8);
        assert!((pure_concurrence(&me).unwrap() - exact).abs() < 1e-14);
        assert!((r.bound_literal - r.bound_derived * (f.kappa() * 3.0 - 1.0).sqrt()).abs() < 1e-10);
        assert!((r.schmidt_number_lb - 3.0).abs() < 1e-8);
        assert_eq!(r.headline(), r.bound_derived);
    }

    #[test]
    fn variants_coincide_in_the_d2_mub_limit() {
        let iv = t_interval(&build_f_blocks(&OperatorBasis::gell_mann(2).unwrap())).unwrap();
        let f = fam(2, iv.upper);
        assert!((f.kappa() - 1.0).abs() < 1e-12);
        assert!((literal_coefficient(2, f.kappa()) - derived_coefficient(2, f.kappa())).abs() < 1e-10);
    }

    #[test]
    fn separability_verdicts() {
        let f = fam(3, crate::mum::t_for_kappa(3, 5.0 / 9.0).unwrap());
        assert!((f.kappa() - 5.0 / 9.0).abs() < 1e-12);
        assert_eq!(separability_test(&mixed(3), &f, &f, 1e-9).unwrap(), Verdict::Undetected);
        let me = states::max_entangled(3).unwrap();
        assert_eq!(separability_test(&me.density(), &f, &f, 1e-9).unwrap(), Verdict::Entangled);
    }

    #[test]
    fn pure_concurrence_cases() {
        let prod = PureState::product(&[C64::new(1.0, 0.0); 2], &[C64::new(1.0, 0.0); 3]).unwrap();
        assert!(pure_concurrence(&prod).unwrap() < 1e-7);
        for d in 2..=5 {
            let me = states::max_entangled(d).unwrap();
            let expected = (2.0 * (d as f64 - 1.0) / d as f64).sqrt();
            assert!((pure_concurrence(&me).unwrap() - expected).abs() < 1e-14);
        }
        let psi = states::random_pure(3, 3, 99).unwrap();
        let s = schmidt_decompose(&psi).unwrap();
        let mut acc = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                acc += (s.coefficients[i] * s.coefficients[j]).powi(2);
            }
        }
        assert!((pure_concurrence(&psi).unwrap() - 2.0 * acc.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn schmidt_number_bound_cases() {
        let kappa = 0.4;
        assert_eq!(schmidt_number_lower_bound(1.0 + kappa, 3, kappa), 1.0);
        assert_eq!(schmidt_number_lower_bound(1.0, 3, kappa), 1.0);
        // Max entangled: ||J|| = kappa (d + 1)
        assert!((schmidt_number_lower_bound(kappa * 4.0, 3, kappa) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn nm_povm_threshold_cases() {
        assert!((nm_povm_threshold(3, 3, 1.0).unwrap() - 2.0).abs() < 1e-14);
        let v = nm_povm_threshold(2, 2, 0.5).unwrap();
        assert!((v - 1.0 * (2.0 + 4.0) / (2.0 * 2.0 * 1.0)).abs() < 1e-14);
        assert!(nm_povm_threshold(3, 3, 0.5).unwrap() < nm_povm_threshold(3, 3, 0.6).unwrap());
        assert!(nm_povm_threshold(3, 1, 1.0).is_err());
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("literal".parse::<Variant>().unwrap(), Variant::Literal);
        assert_eq!("derived".parse::<Variant>().unwrap(), Variant::Derived);
        assert!("eq4".parse::<Variant>().is_err());
        assert_eq!(Variant::default(), Variant::Derived);
    }
}
