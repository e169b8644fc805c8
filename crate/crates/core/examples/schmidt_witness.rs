//! Pure states: the bound against the exact concurrence, and the Schmidt
//! number certified by ||J||.
//!
//!     cargo run --example schmidt_witness

use mum_bounds::criteria::{concurrence_lower_bound, pure_concurrence};
use mum_bounds::linalg::schmidt_decompose;
use mum_bounds::{states, MumFamily, PureState, Variant, C64};

fn main() -> mum_bounds::Result<()> {
    let fam = MumFamily::gell_mann(3, 0.1)?;
    let s = 0.5f64.sqrt();
    let two_level = PureState::new(3, 3, {
        let mut a = vec![C64::new(0.0, 0.0); 9];
        a[0] = C64::new(s, 0.0);
        a[4] = C64::new(s, 0.0);
        a
    })?;
    let cases = [
        ("maximally entangled", states::max_entangled(3)?),
        ("rank-2 Bell-like", two_level),
        ("random seed 7", states::random_pure(3, 3, 7)?),
        ("product", states::random_product(3, 3, 7)?),
    ];
    for (name, psi) in cases {
        let r = concurrence_lower_bound(&psi.density(), &fam, &fam, Variant::Derived)?;
        println!(
            "{name:<20} C={:.6} bound={:.6} schmidt rank {} >= {:.3}",
            pure_concurrence(&psi)?,
            r.bound_derived,
            schmidt_decompose(&psi)?.rank,
            r.schmidt_number_lb
        );
    }
    Ok(())
}
