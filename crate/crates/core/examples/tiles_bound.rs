//! The tiles UPB state is bound entangled, so the partial transpose stays
//! positive, but the correlation criterion still sees it.
//!
//!     cargo run --example tiles_bound

use mum_bounds::{commands, states, Tolerances, Variant};

fn main() -> mum_bounds::Result<()> {
    let tol = Tolerances::default();
    for p in [1.0, 0.99, 0.9] {
        let rho = states::tiles_noisy(p)?;
        let ppt = rho.min_partial_transpose_eigenvalue(3, 3)?;
        for t in [0.01, 0.12] {
            let r = commands::evaluate(&rho, t, Variant::Derived, &tol)?;
            println!(
                "p={p:<4} t={t:<4} min eig(rho^T_B)={ppt:+.2e} ||J||-(1+kappa)={:+.3e} bound={:.3e} {}",
                r.margin(),
                r.bound_derived,
                r.verdict
            );
        }
    }
    Ok(())
}
