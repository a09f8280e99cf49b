//! Orbits on k-subsets: the orbit of a single subset, and the full
//! partition of all k-subsets with its orbit count σ_k.
//!
//! `cargo run --release --example subset_orbits`

use sw_orbits::action::{subset_orbit, subset_orbits};
use sw_orbits::catalogue::{builtin_catalogue, find_record};
use sw_orbits::{KSubset, StabilizerChain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = builtin_catalogue();
    for name in ["G1", "G2", "G3", "M22"] {
        let record = find_record(&records, name)?;
        let group = record.group();
        let chain = StabilizerChain::build(&group);
        let delta = KSubset::new(record.degree, [1, 2, 3])?;
        let orbit = subset_orbit(&group, &chain, &delta)?;
        let sigma: Vec<usize> = (1..=record.degree / 2)
            .map(|k| subset_orbits(&group, &chain, k).map(|p| p.sigma()))
            .collect::<Result<_, _>>()?;
        println!(
            "{name}: |G|={} |{delta}^G|={} sigma={sigma:?}",
            chain.order(),
            orbit.length()
        );
    }

    // orbit lengths of the 3-subsets of M22, longest first
    let m22 = find_record(&records, "M22")?.group();
    let chain = StabilizerChain::build(&m22);
    let part = subset_orbits(&m22, &chain, 3)?;
    let mut lengths: Vec<(u64, String)> = part
        .orbits()
        .iter()
        .map(|o| (o.length(), o.representative().to_string()))
        .collect();
    lengths.sort_by_key(|l| std::cmp::Reverse(l.0));
    for (len, rep) in lengths {
        println!("M22 3-orbit {rep} length {len}");
    }
    Ok(())
}
