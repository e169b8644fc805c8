//! Build the d+1 Gell-Mann MUMs for a few dimensions and print how well they
//! satisfy the defining relations.
//!
//!     cargo run --example verify_mums

use mum_bounds::commands;
use mum_bounds::mum::{two_design_residual, verify_mum_relations};
use mum_bounds::MumFamily;

fn main() -> mum_bounds::Result<()> {
    println!("{:>2} {:>10} {:>9} {:>10} {:>10} {:>10}", "d", "t", "kappa", "relations", "complete", "2-design");
    for d in 2..=5 {
        let iv = commands::gell_mann_interval(d)?;
        for t in [iv.lower, 0.01, iv.upper] {
            let fam = MumFamily::gell_mann(d, t)?;
            let r = verify_mum_relations(&fam)?;
            let rel = r.trace_one.max(r.cross_basis).max(r.within_basis);
            println!(
                "{d:>2} {t:>10.6} {:>9.6} {rel:>10.1e} {:>10.1e} {:>10.1e}",
                fam.kappa(),
                r.completeness,
                two_design_residual(&fam)?
            );
        }
    }
    Ok(())
}
