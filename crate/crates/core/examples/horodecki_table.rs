//! Detection thresholds in the white-noise weight q for the Horodecki
//! family at t = 0.01.
//!
//!     cargo run --release --example horodecki_table

use mum_bounds::commands::{find_threshold, Criterion, StateSpec, ThresholdOutcome, ThresholdQuery};
use mum_bounds::{Tolerances, Variant};

fn main() -> mum_bounds::Result<()> {
    println!("upsilon  detected for q >=");
    for upsilon in [0.2, 0.4, 0.6, 0.8, 0.9] {
        let query = ThresholdQuery {
            state: StateSpec::Horodecki { upsilon, q: 1.0 },
            t: 0.01,
            criterion: Criterion::Separability,
            variant: Variant::Derived,
            tolerance: 1e-8,
        };
        match find_threshold(&query, &Tolerances::default())? {
            ThresholdOutcome::Found(th) => println!("{upsilon:<8} {:.6}", th.threshold),
            ThresholdOutcome::Undetected => println!("{upsilon:<8} never"),
        }
    }
    Ok(())
}
