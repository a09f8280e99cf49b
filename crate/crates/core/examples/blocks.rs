//! Block systems and primitivity.
//!
//! `cargo run --example blocks`

use sw_orbits::action::{induced_on_bisections, is_primitive, nontrivial_block_systems};
use sw_orbits::catalogue::{builtin_catalogue, find_record};
use sw_orbits::{GeneratedGroup, StabilizerChain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = builtin_catalogue();
    for name in ["G1", "G2", "G3", "L2(7)", "ASL(2,4)"] {
        let group = find_record(&records, name)?.group();
        let chain = StabilizerChain::build(&group);
        println!("{name}: primitive {}", is_primitive(&group, &chain)?);
        for system in nontrivial_block_systems(&group) {
            let blocks: Vec<String> = system
                .blocks()
                .iter()
                .map(|b| {
                    format!(
                        "{{{}}}",
                        b.iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            println!("  {}", blocks.join(";"));
        }
    }

    // the 10 ways to split {1..6} into two halves of size 3
    let s6 = GeneratedGroup::symmetric(6);
    let on_halves = induced_on_bisections(&s6)?;
    let chain = StabilizerChain::build(&on_halves);
    let primitive = is_primitive(&on_halves, &chain)?;
    println!(
        "Sym(6) on bisections: degree {} order {} primitive {primitive}",
        on_halves.degree(),
        chain.order()
    );
    Ok(())
}
