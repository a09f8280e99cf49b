//! Scan a group for k-subsets whose orbit is strictly longer than the orbit
//! of every (k+1)-subset containing it, and show the extension lengths that
//! make each one a witness.
//!
//! `cargo run --release --example witness_scan [name]`

use sw_orbits::catalogue::{builtin_catalogue, find_record};
use sw_orbits::swcheck::{default_k_range, sw_scan};
use sw_orbits::StabilizerChain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "PGL(2,7)".to_string());
    let records = builtin_catalogue();
    let record = find_record(&records, &name)?;
    let group = record.group();
    let chain = StabilizerChain::build(&group);
    let range = default_k_range(record.degree);
    println!(
        "{name}: degree {} order {} scanning k in {range:?}",
        record.degree,
        chain.order()
    );
    let witnesses = sw_scan(&group, &chain, range)?;
    if witnesses.is_empty() {
        println!("no witness");
    }
    for w in &witnesses {
        println!("{}", w.report_line(&name));
        for (beta, len) in &w.extensions {
            println!("  + {beta}: |Sigma^G| = {len}");
        }
    }
    Ok(())
}
