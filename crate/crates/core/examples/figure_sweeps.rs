//! Writes the curve data for the tiles and Horodecki families as CSV into a
//! directory (default `target/sweeps`).
//!
//!     cargo run --release --example figure_sweeps -- out/

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use mum_bounds::commands::{self, run_sweep, write_csv, StateSpec, SweepSpec, SweepVariable};
use mum_bounds::{Tolerances, Variant};

fn main() -> mum_bounds::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/sweeps".into()));
    fs::create_dir_all(&dir)?;
    let upper = commands::gell_mann_interval(3)?.upper;
    let sweeps = [
        ("tiles_t.csv", SweepVariable::T, 1e-3, upper, StateSpec::Tiles { p: 0.99 }, 0.0),
        ("tiles_p.csv", SweepVariable::P, 0.8, 1.0, StateSpec::Tiles { p: 1.0 }, 0.12),
        ("horodecki_t.csv", SweepVariable::T, 1e-3, upper, StateSpec::Horodecki { upsilon: 0.2, q: 0.995 }, 0.0),
        ("horodecki_upsilon.csv", SweepVariable::Upsilon, 0.0, 1.0, StateSpec::Horodecki { upsilon: 0.0, q: 0.995 }, 0.08),
    ];
    for (name, variable, start, stop, state, t) in sweeps {
        let spec = SweepSpec { variable, start, stop, steps: 201, state, t, variant: Variant::Derived };
        let rows = run_sweep(&spec, &Tolerances::default())?;
        let path = dir.join(name);
        write_csv(&rows, BufWriter::new(File::create(&path)?))?;
        let hits = rows.iter().filter(|r| r.bound_derived > 0.0).count();
        println!("{}: {} rows, {hits} with a positive bound", path.display(), rows.len());
    }
    Ok(())
}
