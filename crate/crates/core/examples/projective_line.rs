//! PSL(2,q) and PGL(2,q) on the projective line: the stabilizers of the
//! 4-sets {0, 1, ∞, x}, the involution that swaps 0 with x and 1 with ∞,
//! and whether it lies in PSL.
//!
//! `cargo run --release --example projective_line [q...]`

use sw_orbits::action::DEFAULT_ELEMENT_BOUND;
use sw_orbits::projline::{
    moebius_perm, swap_matrix, theorem_check, valid_exponents, FiniteField, ProjPoint,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let qs: Vec<u32> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let qs = if qs.is_empty() { vec![7, 11, 23] } else { qs };

    let f = FiniteField::of_order(11)?;
    let x = valid_exponents(&f)?[0];
    let a = moebius_perm(&swap_matrix(x, &f), &f)?;
    let sigma = [
        ProjPoint::Finite(f.zero()),
        ProjPoint::Finite(f.one()),
        ProjPoint::Infinity,
        ProjPoint::Finite(x),
    ];
    let images: Vec<String> = sigma
        .iter()
        .map(|&p| {
            format!(
                "{p}->{}",
                ProjPoint::from_index(a.image(p.index(&f)), &f).unwrap()
            )
        })
        .collect();
    println!(
        "GF(11), x = {x}: A on {{0,1,inf,x}} is {}",
        images.join(" ")
    );
    println!(
        "det A = {}, x - 1 = {}",
        swap_matrix(x, &f).det(&f),
        f.sub(x, f.one())
    );
    println!();

    for q in qs {
        print!("{}", theorem_check(q, DEFAULT_ELEMENT_BOUND)?);
        println!();
    }
    Ok(())
}
