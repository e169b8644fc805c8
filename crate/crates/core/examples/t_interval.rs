//! Admissible range of the sharpness parameter and the kappa it reaches,
//! against the best kappa any Gell-Mann grouping could give.
//!
//!     cargo run --example t_interval

use mum_bounds::commands;
use mum_bounds::mum::{kappa_of_t, optimal_kappa};

fn main() -> mum_bounds::Result<()> {
    for d in 2..=6 {
        let iv = commands::gell_mann_interval(d)?;
        let best = kappa_of_t(d, iv.lower).max(kappa_of_t(d, iv.upper));
        println!(
            "d={d}: t in [{:.7}, {:.7}], kappa up to {best:.6} (optimal {:.6})",
            iv.lower,
            iv.upper,
            optimal_kappa(d)
        );
    }
    Ok(())
}
