//! Density matrices and MUM families round-trip through JSON files.
//!
//!     cargo run --example state_files

use mum_bounds::mum::MumFamilyFile;
use mum_bounds::{commands, states, MumFamily, Tolerances, Variant};

fn main() -> mum_bounds::Result<()> {
    let dir = std::env::temp_dir().join("mum-bounds-example");
    std::fs::create_dir_all(&dir)?;

    let rho = states::horodecki_noisy(0.4, 0.999)?;
    let path = dir.join("horodecki.json");
    states::save_state(&rho, &path)?;
    let back = states::load_state(&path)?;
    println!("wrote {}, max entry change {:.1e}", path.display(), back.matrix().max_abs_diff(rho.matrix()));

    let r = commands::evaluate(&back, 0.01, Variant::Derived, &Tolerances::default())?;
    println!("loaded state: {}", r.verdict);

    let fam = MumFamily::gell_mann(3, 0.05)?;
    let fam_path = dir.join("mums_d3.json");
    fam.save(&fam_path)?;
    let file = MumFamilyFile::load(&fam_path)?;
    println!("family d={} t={} kappa={:.6}, {} bases", file.d, file.t, file.kappa, file.effects.len());
    Ok(())
}
