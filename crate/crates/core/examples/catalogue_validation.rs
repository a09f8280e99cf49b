//! Read a catalogue (the shipped one, or a file given on the command line)
//! and check every record's metadata against computation.
//!
//! `cargo run --release --example catalogue_validation [path]`

use sw_orbits::catalogue::{builtin_catalogue, parse_catalogue, validate_record, Verification};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = match std::env::args().nth(1) {
        Some(path) => parse_catalogue(&std::fs::read_to_string(path)?)?,
        None => builtin_catalogue(),
    };
    let mut failed = 0;
    for record in &records {
        let report = validate_record(record, Verification::Full);
        print!("{report}");
        if !report.passed() {
            failed += 1;
        }
    }
    println!("{} records, {failed} failed", records.len());
    Ok(())
}
