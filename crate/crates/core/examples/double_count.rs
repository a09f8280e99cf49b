//! Double counting between a k-orbit and a (k+1)-orbit: with u the number of
//! ways to extend Δ into Σ^G and d the number of ways to shrink Σ into Δ^G,
//! d·|Σ^G| = u·|Δ^G|.
//!
//! `cargo run --release --example double_count`

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sw_orbits::catalogue::{builtin_catalogue, find_record};
use sw_orbits::perm::parse_subset;
use sw_orbits::swcheck::ud_counts;
use sw_orbits::{KSubset, StabilizerChain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = builtin_catalogue();
    for (name, delta, sigma) in [
        ("Sym(8)", "{1,2,3}", "{1,2,3,4}"),
        ("G1", "{1,2,3}", "{1,2,3,4}"),
        ("G1", "{1,2,3}", "{4,5,6,7}"),
    ] {
        let record = find_record(&records, name)?;
        let group = record.group();
        let chain = StabilizerChain::build(&group);
        let (d, s) = (
            parse_subset(delta, record.degree)?,
            parse_subset(sigma, record.degree)?,
        );
        println!(
            "{name} {d} {s}: {}",
            ud_counts(&group, &chain, &d, &s)?.report_line()
        );
    }

    // random nested pairs in G3
    let record = find_record(&records, "G3")?;
    let group = record.group();
    let chain = StabilizerChain::build(&group);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut points: Vec<usize> = (1..=record.degree).collect();
    for k in 2..=6 {
        points.shuffle(&mut rng);
        let sigma = KSubset::new(record.degree, points[..=k].iter().copied())?;
        let delta = KSubset::new(record.degree, points[..k].iter().copied())?;
        println!(
            "G3 {delta} {sigma}: {}",
            ud_counts(&group, &chain, &delta, &sigma)?.report_line()
        );
    }
    Ok(())
}
