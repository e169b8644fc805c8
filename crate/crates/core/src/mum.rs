//! Complete sets of `d + 1` mutually unbiased measurements.
//!
//! From an orthonormal traceless basis `F_{n,b}` the building blocks are
//!
//! ```text
//! F_n^(b) = F^(b) - (d + sqrt d) F_{n,b}     n = 1..d-1
//! F_d^(b) = (1 + sqrt d) F^(b)               F^(b) = sum_n F_{n,b}
//! ```
//!
//! and the POVM effects are `P_n^(b) = I/d + t F_n^(b)`. Positivity of every
//! effect restricts `t` to an interval set by the extremal eigenvalues of the
//! blocks; the sharpness of the resulting measurements is
//! `kappa = 1/d + t^2 (1 + sqrt d)^2 (d - 1)`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::OperatorBasis;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::io::MatrixRecord;
use crate::linalg::{self, ComplexMatrix, C64};

/// The `d(d + 1)` traceless blocks `F_n^(b)`, stored as `blocks[b][n]`.
#[derive(Debug, Clone)]
pub struct FBlocks {
    d: usize,
    blocks: Vec<Vec<ComplexMatrix>>,
}

impl FBlocks {
    pub fn d(&self) -> usize {
        self.d
    }

    /// `F_n^(b)` with zero-based indices.
    pub fn block(&self, n: usize, b: usize) -> &ComplexMatrix {
        &self.blocks[b][n]
    }

    pub fn groups(&self) -> &[Vec<ComplexMatrix>] {
        &self.blocks
    }

    /// Blocks in `(b, n)` order, matching correlation-matrix row flattening.
    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.blocks.iter().flatten()
    }

    /// Every block multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> FBlocks {
        FBlocks {
            d: self.d,
            blocks: self
                .blocks
                .iter()
                .map(|g| g.iter().map(|m| m.scale(factor)).collect())
                .collect(),
        }
    }
}

pub fn build_f_blocks(basis: &OperatorBasis) -> FBlocks {
    let d = basis.d();
    let sqrt_d = (d as f64).sqrt();
    let blocks = basis
        .groups()
        .iter()
        .map(|group| {
            let sum = group
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, f| &acc + f);
            let mut out: Vec<ComplexMatrix> = group
                .iter()
                .map(|f| &sum - &f.scale(d as f64 + sqrt_d))
                .collect();
            out.push(sum.scale(1.0 + sqrt_d));
            out
        })
        .collect();
    FBlocks { d, blocks }
}

/// Admissible range of the sharpness parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TInterval {
    pub lower: f64,
    pub upper: f64,
}

impl TInterval {
    /// Membership with a relative slack at both ends.
    pub fn contains(&self, t: f64, relative_slack: f64) -> bool {
        t >= self.lower * (1.0 + relative_slack) && t <= self.upper * (1.0 + relative_slack)
    }

    /// `n >= 2` evenly spaced points including both endpoints.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        (0..n)
            .map(|k| self.lower + (self.upper - self.lower) * k as f64 / (n - 1) as f64)
            .collect()
    }
}

/// `-1/(d lambda_max) <= t <= 1/(d |lambda_min|)`, with the extremal
/// eigenvalues taken over all blocks.
pub fn t_interval(blocks: &FBlocks) -> Result<TInterval> {
    let d = blocks.d() as f64;
    let mut lambda_min = f64::INFINITY;
    let mut lambda_max = f64::NEG_INFINITY;
    for block in blocks.iter() {
        let values = linalg::hermitian_eigenvalues(block)?;
        lambda_min = lambda_min.min(values[0]);
        lambda_max = lambda_max.max(values[values.len() - 1]);
    }
    if lambda_max <= 0.0 || lambda_min >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "blocks have no spectrum on both sides of zero \
             (lambda_min = {lambda_min}, lambda_max = {lambda_max})"
        )));
    }
    Ok(TInterval {
        lower: -1.0 / (d * lambda_max),
        upper: 1.0 / (d * lambda_min.abs()),
    })
}

pub fn kappa_of_t(d: usize, t: f64) -> f64 {
    let d = d as f64;
    1.0 / d + t * t * (1.0 + d.sqrt()).powi(2) * (d - 1.0)
}

/// Non-negative `t` with `kappa_of_t(d, t) == kappa`.
pub fn t_for_kappa(d: usize, kappa: f64) -> Result<f64> {
    let df = d as f64;
    let excess = kappa - 1.0 / df;
    if d < 2 || excess < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kappa = {kappa} is below 1/d for d = {d}"
        )));
    }
    Ok((excess / (df - 1.0)).sqrt() / (1.0 + df.sqrt()))
}

/// `1/d + 2/d^2`, the best kappa a Gell-Mann operator basis can reach.
pub fn optimal_kappa(d: usize) -> f64 {
    let d = d as f64;
    1.0 / d + 2.0 / (d * d)
}

/// A complete set of `d + 1` MUMs together with the data that produced it.
#[derive(Debug, Clone)]
pub struct MumFamily {
    d: usize,
    t: f64,
    kappa: f64,
    interval: TInterval,
    blocks: FBlocks,
    effects: Vec<Vec<ComplexMatrix>>,
}

pub fn build_mums(basis: &OperatorBasis, t: f64) -> Result<MumFamily> {
    build_mums_with(basis, t, &Tolerances::default())
}

pub fn build_mums_with(basis: &OperatorBasis, t: f64, tol: &Tolerances) -> Result<MumFamily> {
    let blocks = build_f_blocks(basis);
    let interval = t_interval(&blocks)?;
    if !t.is_finite() || !interval.contains(t, tol.t_endpoint_slack) {
        return Err(Error::InadmissibleT {
            t,
            lower: interval.lower,
            upper: interval.upper,
        });
    }
    if t == 0.0 {
        return Err(Error::InvalidParameter(
            "t = 0 gives kappa = 1/d, which is not a MUM".into(),
        ));
    }
    let d = basis.d();
    let effects = blocks
        .groups()
        .iter()
        .map(|g| {
            g.iter()
                .map(|f| f.scale(t).add_scaled_identity(1.0 / d as f64))
                .collect()
        })
        .collect();
    Ok(MumFamily {
        d,
        t,
        kappa: kappa_of_t(d, t),
        interval,
        blocks,
        effects,
    })
}

impl MumFamily {
    /// Gell-Mann basis with the lexicographic partition.
    pub fn gell_mann(d: usize, t: f64) -> Result<Self> {
        build_mums(&OperatorBasis::gell_mann(d)?, t)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn interval(&self) -> TInterval {
        self.interval
    }

    pub fn blocks(&self) -> &FBlocks {
        &self.blocks
    }

    /// `P_n^(b)` with zero-based indices.
    pub fn effect(&self, n: usize, b: usize) -> &ComplexMatrix {
        &self.effects[b][n]
    }

    pub fn effect_groups(&self) -> &[Vec<ComplexMatrix>] {
        &self.effects
    }

    /// Effects in `(b, n)` order.
    pub fn effects(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.effects.iter().flatten()
    }

    pub fn to_record(&self) -> MumFamilyFile {
        let rec = |groups: &[Vec<ComplexMatrix>]| {
            groups
                .iter()
                .map(|g| g.iter().map(MatrixRecord::from_matrix).collect())
                .collect()
        };
        MumFamilyFile {
            d: self.d,
            t: self.t,
            kappa: self.kappa,
            interval: self.interval,
            blocks: rec(self.blocks.groups()),
            effects: rec(&self.effects),
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_record())
            .map_err(|e| Error::Format(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Serialized MUM family: `blocks[b][n]` and `effects[b][n]` as matrix records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MumFamilyFile {
    pub d: usize,
    pub t: f64,
    pub kappa: f64,
    pub interval: TInterval,
    pub blocks: Vec<Vec<MatrixRecord>>,
    pub effects: Vec<Vec<MatrixRecord>>,
}

impl MumFamilyFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Maximum absolute deviations from the MUM defining relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MumRelationReport {
    /// `|Tr P_n^(b) - 1|`
    pub trace_one: f64,
    /// `|Tr(P_n^(b) P_n'^(b')) - 1/d|` for `b != b'`
    pub cross_basis: f64,
    /// `|Tr(P_n^(b) P_n'^(b)) - (kappa delta + (1 - delta)(1 - kappa)/(d - 1))|`
    pub within_basis: f64,
    /// `|sum_n P_n^(b) - I|`, elementwise
    pub completeness: f64,
    /// Smallest eigenvalue over all effects.
    pub min_eigenvalue: f64,
    /// Largest eigenvalue over all effects.
    pub max_eigenvalue: f64,
}

impl MumRelationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.trace_one < tol && self.cross_basis < tol && self.within_basis < tol
    }
}

pub fn verify_mum_relations(fam: &MumFamily) -> Result<MumRelationReport> {
    relation_report(&fam.effects, fam.d, fam.kappa)
}

fn relation_report(
    effects: &[Vec<ComplexMatrix>],
    d: usize,
    kappa: f64,
) -> Result<MumRelationReport> {
    let df = d as f64;
    let off_diag = (1.0 - kappa) / (df - 1.0);
    let mut report = MumRelationReport {
        trace_one: 0.0,
        cross_basis: 0.0,
        within_basis: 0.0,
        completeness: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_eigenvalue: f64::NEG_INFINITY,
    };
    let identity = ComplexMatrix::identity(d);
    for (b, group) in effects.iter().enumerate() {
        let sum = group
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, p| &acc + p);
        report.completeness = report.completeness.max(sum.max_abs_diff(&identity));
        for (n, p) in group.iter().enumerate() {
            report.trace_one = report.trace_one.max((p.trace() - C64::new(1.0, 0.0)).norm());
            let values = linalg::hermitian_eigenvalues(p)?;
            report.min_eigenvalue = report.min_eigenvalue.min(values[0]);
            report.max_eigenvalue = report.max_eigenvalue.max(values[values.len() - 1]);
            for (b2, group2) in effects.iter().enumerate() {
                for (n2, q) in group2.iter().enumerate() {
                    let overlap = p.trace_product(q);
                    let target = if b != b2 {
                        1.0 / df
                    } else if n == n2 {
                        kappa
                    } else {
                        off_diag
                    };
                    let dev = (overlap - C64::new(target, 0.0)).norm();
                    if b == b2 {
                        report.within_basis = report.within_basis.max(dev);
                    } else {
                        report.cross_basis = report.cross_basis.max(dev);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `sum_{n,b} X_n^(b) (x) X_n^(b)` over the given operators.
fn tensor_square_sum<'a>(
    d: usize,
    ops: impl Iterator<Item = &'a ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    for op in ops {
        acc = &acc + &linalg::kron(op, op)?;
    }
    Ok(acc)
}

/// `(1 + (1 - kappa)/(d - 1)) I + ((kappa d - 1)/(d - 1)) SWAP`
pub fn two_design_target(d: usize, kappa: f64) -> ComplexMatrix {
    let df = d as f64;
    let identity_coeff = 1.0 + (1.0 - kappa) / (df - 1.0);
    let swap_coeff = (kappa * df - 1.0) / (df - 1.0);
    &ComplexMatrix::identity(d * d).scale(identity_coeff)
        + &linalg::swap_operator(d).scale(swap_coeff)
}

/// Elementwise residual of `sum P (x) P` against the 2-design target.
pub fn two_design_residual(fam: &MumFamily) -> Result<f64> {
    let lhs = tensor_square_sum(fam.d, fam.effects())?;
    Ok(lhs.max_abs_diff(&two_design_target(fam.d, fam.kappa)))
}

/// The same target with the F-blocks in place of the effects. This does not
/// hold: the block sum is independent of `t`.
pub fn block_two_design_residual(fam: &MumFamily) -> Result<f64> {
    let lhs = tensor_square_sum(fam.d, fam.blocks.iter())?;
    Ok(lhs.max_abs_diff(&two_design_target(fam.d, fam.kappa)))
}

/// Residual of the identity the blocks do satisfy:
/// `sum F (x) F = d (1 + sqrt d)^2 (SWAP - I/d)`.
pub fn block_frame_residual(blocks: &FBlocks) -> Result<f64> {
    let d = blocks.d();
    let df = d as f64;
    let lhs = tensor_square_sum(d, blocks.iter())?;
    let c = df * (1.0 + df.sqrt()).powi(2);
    let target = &linalg::swap_operator(d).scale(c) - &ComplexMatrix::identity(d * d).scale(c / df);
    Ok(lhs.max_abs_diff(&target))
}
