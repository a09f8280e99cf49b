//! Parse generators in cycle notation, build a stabilizer chain and ask
//! questions of it.
//!
//! `cargo run --example group_order`

use sw_orbits::{GeneratedGroup, Permutation, StabilizerChain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m24 = GeneratedGroup::from_cycles(
        24,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
            "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
            "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
        ],
    )?
    .named("M24");
    let chain = StabilizerChain::build(&m24);
    println!("order {} {}", m24.name().unwrap(), chain.order());
    println!("base {:?}", chain.base());
    println!("basic orbit sizes {:?}", chain.orbit_sizes());

    // products of generators lie in the group, a transposition does not
    let g = &m24.generators()[0];
    let h = &m24.generators()[2];
    let word = g.then(h).then(&g.inverse()).pow(5);
    println!("{word} in M24: {}", chain.contains(&word)?);
    let t = Permutation::parse_cycles("(1,2)", 24)?;
    println!("{t} in M24: {}", chain.contains(&t)?);

    let sym = GeneratedGroup::symmetric(10);
    println!(
        "order {} {}",
        sym.name().unwrap(),
        StabilizerChain::build(&sym).order()
    );
    Ok(())
}
