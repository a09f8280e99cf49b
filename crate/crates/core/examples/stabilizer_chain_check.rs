//! For each witness Δ with extension Σ = Δ ∪ {β}, compare how the setwise
//! stabilizers move Δ and Σ: k+1 ≥ |Δ^{G_Σ}| > |Σ^{G_Δ}| ≥ 1. Also checks
//! that k = 3 witnesses of primitive groups sit in a longest 3-orbit.
//!
//! `cargo run --release --example stabilizer_chain_check`

use sw_orbits::action::{is_primitive, DEFAULT_ELEMENT_BOUND};
use sw_orbits::catalogue::{builtin_catalogue, find_record};
use sw_orbits::swcheck::{default_k_range, max_orbit_check, sw1_chain_check, sw_scan};
use sw_orbits::StabilizerChain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = builtin_catalogue();
    for name in [
        "L2(5)", "L2(7)", "PGL(2,7)", "Sym(6)", "L2(11)", "G1", "G2", "G3",
    ] {
        let group = find_record(&records, name)?.group();
        let chain = StabilizerChain::build(&group);
        let primitive = is_primitive(&group, &chain)?;
        for w in sw_scan(&group, &chain, default_k_range(group.degree()))? {
            let report = sw1_chain_check(&group, &chain, &w, DEFAULT_ELEMENT_BOUND)?;
            print!("{name} {report}");
            if primitive && w.k == 3 {
                println!(
                    "  longest 3-orbit: {}",
                    max_orbit_check(&group, &chain, &w)?
                );
            }
        }
    }
    Ok(())
}
