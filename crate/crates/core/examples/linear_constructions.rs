//! Builds the affine and linear groups of the shipped catalogue from their
//! defining actions and prints them as catalogue records.
//!
//! ASL(2,4) and 2^4:Alt(7) act on the 16 vectors of GF(4)^2 and GF(2)^4,
//! L3(4) on the 21 points of the projective plane over GF(4), and Alt(7) on
//! the 15 points of PG(3,2). The Alt(7) inside GL(4,2) is found by a seeded
//! search for a pair of matrices generating a group of order 2520.
//!
//! Run with `cargo run --release --example linear_constructions`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sw_orbits::catalogue::{render_catalogue, GroupRecord};
use sw_orbits::projline::{FieldElem, FiniteField};
use sw_orbits::{GeneratedGroup, Permutation, StabilizerChain};

type Matrix = Vec<Vec<FieldElem>>;

/// Row vector times matrix over `field`.
fn act(field: &FiniteField, v: &[FieldElem], m: &Matrix) -> Vec<FieldElem> {
    (0..m[0].len())
        .map(|j| {
            v.iter().zip(m).fold(field.zero(), |acc, (&x, row)| {
                field.add(acc, field.mul(x, row[j]))
            })
        })
        .collect()
}

fn code(field: &FiniteField, v: &[FieldElem]) -> usize {
    v.iter()
        .rev()
        .fold(0, |acc, x| acc * field.order() as usize + x.code() as usize)
}

fn vector(field: &FiniteField, mut c: usize, dim: usize) -> Vec<FieldElem> {
    let q = field.order() as usize;
    (0..dim)
        .map(|_| {
            let x = field.element((c % q) as u32).unwrap();
            c /= q;
            x
        })
        .collect()
}

/// Affine map `v ↦ v·m + t` on all of GF(q)^dim; vector with code `c` is point `c + 1`.
fn affine_perm(field: &FiniteField, dim: usize, m: &Matrix, t: &[FieldElem]) -> Permutation {
    let size = (field.order() as usize).pow(dim as u32);
    let images: Vec<usize> = (0..size)
        .map(|c| {
            let w = act(field, &vector(field, c, dim), m);
            let w: Vec<FieldElem> = w.iter().zip(t).map(|(&a, &b)| field.add(a, b)).collect();
            code(field, &w) + 1
        })
        .collect();
    Permutation::from_images(&images).unwrap()
}

/// Linear map on the nonzero vectors of GF(2)^dim; vector with code `c` is point `c`.
fn nonzero_perm(field: &FiniteField, dim: usize, m: &Matrix) -> Permutation {
    let size = 1usize << dim;
    let images: Vec<usize> = (1..size)
        .map(|c| code(field, &act(field, &vector(field, c, dim), m)))
        .collect();
    Permutation::from_images(&images).unwrap()
}

/// Projective points of GF(q)^dim: first nonzero coordinate equal to 1.
fn projective_perm(field: &FiniteField, points: &[Vec<FieldElem>], m: &Matrix) -> Permutation {
    let normalize = |v: Vec<FieldElem>| {
        let lead = *v.iter().find(|x| x.code() != 0).unwrap();
        let inv = field.inv(lead).unwrap();
        v.into_iter().map(|x| field.mul(x, inv)).collect::<Vec<_>>()
    };
    let images: Vec<usize> = points
        .iter()
        .map(|p| {
            points
                .iter()
                .position(|r| *r == normalize(act(field, p, m)))
                .unwrap()
                + 1
        })
        .collect();
    Permutation::from_images(&images).unwrap()
}

fn identity(field: &FiniteField, dim: usize) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

fn rank_gf2(m: &Matrix) -> usize {
    let mut rows: Vec<u32> = m
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .fold(0, |acc, (j, x)| acc | (x.code() << j))
        })
        .collect();
    let mut rank = 0;
    for bit in 0..rows.len() {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

fn record(name: &str, group: &GeneratedGroup, primitive: bool, note: &str) -> GroupRecord {
    let mut r = GroupRecord::from_group(name, group);
    r.expected_order = Some(StabilizerChain::build(group).order());
    r.expected_primitive = Some(primitive);
    r.source_note = note.to_string();
    r
}

fn main() {
    let gf4 = FiniteField::new(2, 2).unwrap();
    let gf2 = FiniteField::new(2, 1).unwrap();
    let (o, l, w) = (gf4.zero(), gf4.one(), gf4.generator());
    let w_inv = gf4.inv(w).unwrap();

    // ASL(2,4): SL(2,4) = <[[1,1],[0,1]], [[1,0],[1,1]], diag(w, w^-1)> plus one translation
    let sl2: Vec<Matrix> = vec![
        vec![vec![l, l], vec![o, l]],
        vec![vec![l, o], vec![l, l]],
        vec![vec![w, o], vec![o, w_inv]],
    ];
    let mut gens: Vec<Permutation> = sl2
        .iter()
        .map(|m| affine_perm(&gf4, 2, m, &[o, o]))
        .collect();
    gens.push(affine_perm(&gf4, 2, &identity(&gf4, 2), &[l, o]));
    let asl = GeneratedGroup::new(gens).unwrap();
    assert_eq!(StabilizerChain::build(&asl).order(), 960);

    // L3(4): SL(3,4) acting on the 21 projective points, generated by
    // elementary transvections and a diagonal matrix
    let points: Vec<Vec<FieldElem>> = (1..64)
        .map(|c| vector(&gf4, c, 3))
        .filter(|v| v.iter().find(|x| x.code() != 0).unwrap().code() == 1)
        .collect();
    let mut mats = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let mut m = identity(&gf4, 3);
        m[i][j] = l;
        mats.push(m);
    }
    let mut d = identity(&gf4, 3);
    d[0][0] = w;
    d[1][1] = w_inv;
    mats.push(d);
    let l34 = GeneratedGroup::new(
        mats.iter()
            .map(|m| projective_perm(&gf4, &points, m))
            .collect(),
    )
    .unwrap();
    assert_eq!(StabilizerChain::build(&l34).order(), 20160);

    // Alt(7) < GL(4,2) = Alt(8): search for a generating pair of a subgroup of order 2520
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random_invertible = || loop {
        let m: Matrix = (0..4)
            .map(|_| {
                (0..4)
                    .map(|_| gf2.element(rng.gen_range(0..2)).unwrap())
                    .collect()
            })
            .collect();
        if rank_gf2(&m) == 4 {
            return m;
        }
    };
    let (a, b, alt7_15) = loop {
        let (a, b) = (random_invertible(), random_invertible());
        let g = GeneratedGroup::new(vec![nonzero_perm(&gf2, 4, &a), nonzero_perm(&gf2, 4, &b)])
            .unwrap();
        if StabilizerChain::build(&g).order() == 2520 {
            break (a, b, g);
        }
    };
    let zero4 = vec![gf2.zero(); 4];
    let mut unit = zero4.clone();
    unit[0] = gf2.one();
    let affine_a7 = GeneratedGroup::new(vec![
        affine_perm(&gf2, 4, &a, &zero4),
        affine_perm(&gf2, 4, &b, &zero4),
        affine_perm(&gf2, 4, &identity(&gf2, 4), &unit),
    ])
    .unwrap();
    assert_eq!(StabilizerChain::build(&affine_a7).order(), 40320);

    let records = vec![
        record("Alt(7)", &alt7_15, true, "Alt(7) inside GL(4,2) acting on the 15 points of PG(3,2); vector with binary code c is point c"),
        record("ASL(2,4)", &asl, true, "affine special linear group on GF(4)^2; vector (x,y) is point 1+x+4y with GF(4) codes 0..3 and modulus x^2+x+1"),
        record("2^4:Alt(7)", &affine_a7, true, "translations of GF(2)^4 extended by the Alt(7) of the 15-point record; vector with binary code c is point c+1"),
        record("L3(4)", &l34, true, "SL(3,4) acting on the 21 points of the projective plane over GF(4), points normalized with first nonzero coordinate 1 and listed by code"),
    ];
    print!("{}", render_catalogue(&records));
}
