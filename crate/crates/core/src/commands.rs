//! Parameter sweeps, detection-threshold search and the other operations
//! behind the command-line tool.
//!
//! Everything here returns plain data; printing is left to the caller.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Tolerances;
use crate::criteria::{self, BoundReport, Convention, Variant, Verdict};
use crate::error::{Error, Result};
use crate::mum::{self, MumFamily, MumRelationReport, TInterval};
use crate::states::{self, DensityMatrix};
use crate::basis::OperatorBasis;

/// A state, possibly parameterized.
#[derive(Debug, Clone)]
pub enum StateSpec {
    /// `(1 - p)/9 I + p rho_tiles`
    Tiles { p: f64 },
    /// `q rho_upsilon + (1 - q)/9 I`
    Horodecki { upsilon: f64, q: f64 },
    /// A fixed state, e.g. loaded from a file.
    Fixed(DensityMatrix),
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Tiles { p } => states::tiles_noisy(*p),
            StateSpec::Horodecki { upsilon, q } => states::horodecki_noisy(*upsilon, *q),
            StateSpec::Fixed(rho) => Ok(rho.clone()),
        }
    }

    /// Local dimension of the `d x d` system.
    pub fn local_dim(&self) -> Result<usize> {
        match self {
            StateSpec::Tiles { .. } | StateSpec::Horodecki { .. } => Ok(3),
            StateSpec::Fixed(rho) => local_dim(rho.dim()),
        }
    }

    fn with(&self, variable: SweepVariable, value: f64) -> Result<StateSpec> {
        match (self, variable) {
            (StateSpec::Tiles { .. }, SweepVariable::P) => Ok(StateSpec::Tiles { p: value }),
            (StateSpec::Horodecki { upsilon, .. }, SweepVariable::Q) => Ok(StateSpec::Horodecki {
                upsilon: *upsilon,
                q: value,
            }),
            (StateSpec::Horodecki { q, .. }, SweepVariable::Upsilon) => Ok(StateSpec::Horodecki {
                upsilon: value,
                q: *q,
            }),
            (_, SweepVariable::T) => Ok(self.clone()),
            (spec, var) => Err(Error::InvalidParameter(format!(
                "cannot vary {var} for {}",
                spec.family_name()
            ))),
        }
    }

    fn family_name(&self) -> &'static str {
        match self {
            StateSpec::Tiles { .. } => "tiles",
            StateSpec::Horodecki { .. } => "horodecki",
            StateSpec::Fixed(_) => "a fixed state",
        }
    }
}

/// `d` with `d * d == dim`.
pub fn local_dim(dim: usize) -> Result<usize> {
    let d = (dim as f64).sqrt().round() as usize;
    if d < 2 || d * d != dim {
        return Err(Error::Dimension(format!(
            "state dimension {dim} is not d*d for some d >= 2"
        )));
    }
    Ok(d)
}

/// Bounds for `rho` with both sides measured by the Gell-Mann MUMs at `t`.
pub fn evaluate(rho: &DensityMatrix, t: f64, variant: Variant, tol: &Tolerances) -> Result<BoundReport> {
    let d = local_dim(rho.dim())?;
    let fam = MumFamily::gell_mann(d, t)?;
    criteria::concurrence_lower_bound_with(rho.matrix(), &fam, &fam, variant, tol)
}

/// MUM construction diagnostics for `verify`.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub d: usize,
    pub t: f64,
    pub kappa: f64,
    pub interval: TInterval,
    pub relations: MumRelationReport,
    pub two_design_residual: f64,
    pub passed: bool,
}

pub fn verify(d: usize, t: f64, tol: &Tolerances) -> Result<VerifyReport> {
    let fam = mum::build_mums_with(&OperatorBasis::gell_mann(d)?, t, tol)?;
    let relations = mum::verify_mum_relations(&fam)?;
    let two_design_residual = mum::two_design_residual(&fam)?;
    let passed = relations.passes(tol.mum_relations)
        && relations.completeness < tol.mum_relations
        && two_design_residual < tol.mum_relations;
    Ok(VerifyReport {
        d,
        t,
        kappa: fam.kappa(),
        interval: fam.interval(),
        relations,
        two_design_residual,
        passed,
    })
}

/// Admissible `t` for the lexicographic Gell-Mann construction.
pub fn gell_mann_interval(d: usize) -> Result<TInterval> {
    mum::t_interval(&mum::build_f_blocks(&OperatorBasis::gell_mann(d)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    T,
    P,
    Q,
    Upsilon,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::T => "t",
            SweepVariable::P => "p",
            SweepVariable::Q => "q",
            SweepVariable::Upsilon => "upsilon",
        })
    }
}

impl FromStr for SweepVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(SweepVariable::T),
            "p" => Ok(SweepVariable::P),
            "q" => Ok(SweepVariable::Q),
            "upsilon" => Ok(SweepVariable::Upsilon),
            other => Err(Error::InvalidParameter(format!("unknown sweep variable {other:?}"))),
        }
    }
}

/// A one-dimensional grid over one parameter, the others held fixed.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub state: StateSpec,
    /// Used unless `variable` is `t`.
    pub t: f64,
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub var: f64,
    pub trace_norm: f64,
    pub kappa: f64,
    pub threshold: f64,
    pub bound_literal: f64,
    pub bound_derived: f64,
    pub verdict: Verdict,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.start < self.stop) {
            return Err(Error::InvalidParameter(format!(
                "sweep start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidParameter("a sweep needs at least 2 steps".into()));
        }
        let n = self.steps - 1;
        Ok((0..self.steps)
            .map(|k| {
                if k == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / n as f64
                }
            })
            .collect())
    }
}

/// Evaluates every grid point; rows come back in ascending order.
pub fn run_sweep(spec: &SweepSpec, tol: &Tolerances) -> Result<Vec<SweepRow>> {
    let grid = spec.grid()?;
    // Reject bad combinations before fanning out.
    spec.state.with(spec.variable, grid[0])?;
    let fixed = match &spec.state {
        StateSpec::Fixed(rho) => Some(rho.clone()),
        _ => None,
    };
    grid.par_iter()
        .map(|&x| {
            let t = if spec.variable == SweepVariable::T { x } else { spec.t };
            let rho = match &fixed {
                Some(rho) => rho.clone(),
                None => spec.state.with(spec.variable, x)?.build()?,
            };
            let d = local_dim(rho.dim())?;
            let fam = MumFamily::gell_mann(d, t)?;
            let j = criteria::build_correlation_matrix(rho.matrix(), &fam, &fam, Convention::P)?;
            let kappa = fam.kappa();
            Ok(SweepRow {
                var: x,
                trace_norm: j.trace_norm,
                kappa,
                threshold: 1.0 + kappa,
                bound_literal: criteria::bound_from_trace_norm(j.trace_norm, d, kappa, Variant::Literal),
                bound_derived: criteria::bound_from_trace_norm(j.trace_norm, d, kappa, Variant::Derived),
                verdict: if j.trace_norm > 1.0 + kappa + tol.verdict {
                    Verdict::Entangled
                } else {
                    Verdict::Undetected
                },
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "var,traceNormP,kappa,threshold,bound_literal,bound_derived,verdict";

/// 12 significant digits.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            sig12(r.var),
            sig12(r.trace_norm),
            sig12(r.kappa),
            sig12(r.threshold),
            sig12(r.bound_literal),
            sig12(r.bound_derived),
            r.verdict
        )?;
    }
    Ok(())
}

/// What counts as detection during a threshold search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// `||J|| > 1 + kappa + tol`
    Separability,
    /// Unclamped concurrence bound above zero.
    BoundPositive,
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separability" => Ok(Criterion::Separability),
            "bound-positive" => Ok(Criterion::BoundPositive),
            other => Err(Error::InvalidParameter(format!("unknown criterion {other:?}"))),
        }
    }
}

/// Search for the smallest mixing weight at which a family is detected.
#[derive(Debug, Clone)]
pub struct ThresholdQuery {
    /// The mixing weight inside is ignored.
    pub state: StateSpec,
    pub t: f64,
    pub criterion: Criterion,
    pub variant: Variant,
    /// Final bracket width.
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// Upper bracket end: detected here and above (on the scanned grid).
    pub threshold: f64,
    pub lower: f64,
    pub upper: f64,
    pub margin_lower: f64,
    pub margin_upper: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThresholdOutcome {
    Found(Threshold),
    /// Not detected anywhere on `[0, 1]`.
    Undetected,
}

pub const PRESCAN_POINTS: usize = 64;

impl ThresholdQuery {
    fn search_variable(&self) -> Result<SweepVariable> {
        match self.state {
            StateSpec::Tiles { .. } => Ok(SweepVariable::P),
            StateSpec::Horodecki { .. } => Ok(SweepVariable::Q),
            StateSpec::Fixed(_) => Err(Error::InvalidParameter(
                "threshold search needs a parameterized family".into(),
            )),
        }
    }

    /// Positive where the criterion detects entanglement.
    pub fn margin_fn(&self, tol: &Tolerances) -> Result<impl Fn(f64) -> Result<f64> + '_> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let var = self.search_variable()?;
        let d = self.state.local_dim()?;
        let fam = MumFamily::gell_mann(d, self.t)?;
        let verdict_tol = tol.verdict;
        Ok(move |x: f64| {
            let rho = self.state.with(var, x)?.build()?;
            let j = criteria::build_correlation_matrix(rho.matrix(), &fam, &fam, Convention::P)?;
            let excess = j.trace_norm - (1.0 + fam.kappa());
            Ok(match self.criterion {
                Criterion::Separability => excess - verdict_tol,
                Criterion::BoundPositive => {
                    let c = match self.variant {
                        Variant::Literal => criteria::literal_coefficient(d, fam.kappa()),
                        Variant::Derived => criteria::derived_coefficient(d, fam.kappa()),
                    };
                    c * excess
                }
            })
        })
    }
}

/// Coarse scan of `[0, 1]` then bisection on the bracket closest to 1.
pub fn find_threshold(query: &ThresholdQuery, tol: &Tolerances) -> Result<ThresholdOutcome> {
    let margin = query.margin_fn(tol)?;
    let n = PRESCAN_POINTS - 1;
    let xs: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let margins = xs
        .par_iter()
        .map(|&x| margin(x))
        .collect::<Result<Vec<f64>>>()?;
    let mut evaluations = margins.len();

    if margins[n] <= 0.0 {
        return Ok(ThresholdOutcome::Undetected);
    }
    let Some(k) = (0..n).rev().find(|&k| margins[k] <= 0.0) else {
        return Ok(ThresholdOutcome::Found(Threshold {
            threshold: 0.0,
            lower: 0.0,
            upper: 0.0,
            margin_lower: margins[0],
            margin_upper: margins[0],
            evaluations,
        }));
    };
    let (mut lo, mut hi) = (xs[k], xs[k + 1]);
    let (mut m_lo, mut m_hi) = (margins[k], margins[k + 1]);
    while hi - lo > query.tolerance {
        let mid = 0.5 * (lo + hi);
        let m = margin(mid)?;
        evaluations += 1;
        if m > 0.0 {
            hi = mid;
            m_hi = m;
        } else {
            lo = mid;
            m_lo = m;
        }
    }
    Ok(ThresholdOutcome::Found(Threshold {
        threshold: hi,
        lower: lo,
        upper: hi,
        margin_lower: m_lo,
        margin_upper: m_hi,
        evaluations,
    }))
}
