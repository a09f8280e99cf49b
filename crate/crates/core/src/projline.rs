//! Finite fields, the projective line over them, and the groups
//! `PSL(2,q) ≤ PGL(2,q)` acting on it by Möbius transformations.
//!
//! Field elements are coded as integers `c_0 + c_1 p + … + c_{e-1} p^{e-1}`
//! where `c_i` is the coefficient of `x^i` in the residue polynomial, so the
//! prime subfield keeps its natural codes `0..p`.
//!
//! Projective points: code `x < q` is the span of `(1, x)`, and `∞` is the
//! span of `(0, 1)`. As permutation points, code `x` is point `x + 1` and `∞`
//! is point `q + 1`. Matrices act on row vectors from the right, which makes
//! `moebius_perm(m1 · m2) = moebius_perm(m1).then(moebius_perm(m2))`.

use std::fmt;

use thiserror::Error;

use crate::action::{
    binomial, setwise_stab_order, setwise_stabilizer_small, subset_orbit, ActionError,
};
use crate::bsgs::{GeneratedGroup, StabilizerChain};
use crate::perm::{KSubset, Permutation};
use crate::swcheck::{sw_scan, SwError, SwWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} exceeds 65536")]
    TooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("singular matrix")]
    Singular,
    #[error("q = {0} has even characteristic")]
    EvenCharacteristic(u32),
    #[error("q = {q} is below the minimum {min}")]
    QTooSmall { q: u32, min: u32 },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Sw(#[from] SwError),
}

/// An element of some [`FiniteField`], by code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `GF(p^e)` with log/antilog tables over a fixed primitive element.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, coefficients from `x^0` up to `x^e`.
    modulus: Vec<u32>,
    omega: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
        }
    }
    a
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `index`.
fn monic_from_index(index: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut coeffs = digits(index, p, deg as usize);
    coeffs.push(1);
    coeffs
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() as u32 - 1;
    if e <= 1 {
        return true;
    }
    if e <= 3 {
        // no roots suffices
        return (0..p).all(|x| {
            f.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                != 0
        });
    }
    for deg in 1..=e / 2 {
        for idx in 0..p.pow(deg) {
            let divisor = monic_from_index(idx, deg, p);
            if poly_rem(f.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// `GF(p^e)`. The modulus is the least monic irreducible of degree `e`
    /// (ordering lower coefficients as base-p integers) and the stored
    /// generator is the least element of full multiplicative order.
    pub fn new(p: u32, e: u32) -> Result<Self, ProjError> {
        if !is_prime(p) {
            return Err(ProjError::NotPrime(p));
        }
        if e == 0 {
            return Err(ProjError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= 1 << 16)
            .ok_or(ProjError::TooLarge(p as u64))?;
        let q = q as u32;
        let modulus = (0..p.pow(e))
            .map(|idx| monic_from_index(idx, e, p))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            omega: FieldElem(1),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.omega = (1..q)
            .map(FieldElem)
            .find(|&x| field.slow_order(x) == q - 1)
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElem(1);
        for i in 0..q - 1 {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = field.slow_mul(x, field.omega);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    /// The field with `q` elements.
    pub fn of_order(q: u32) -> Result<Self, ProjError> {
        let p = (2..=q)
            .find(|d| q % d == 0)
            .ok_or(ProjError::NotPrimePower(q))?;
        let mut rest = q;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(ProjError::NotPrimePower(q));
        }
        Self::new(p, e)
    }

    fn slow_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let n = self.e as usize;
        let (da, db) = (digits(a.0, self.p, n), digits(b.0, self.p, n));
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, &self.modulus, self.p);
        FieldElem(r.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    fn slow_order(&self, x: FieldElem) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != FieldElem(1) {
            y = self.slow_mul(y, x);
            k += 1;
        }
        k
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element `ω`.
    pub fn generator(&self) -> FieldElem {
        self.omega
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    pub fn element(&self, code: u32) -> Option<FieldElem> {
        (code < self.q).then_some(FieldElem(code))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.e == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let s = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        FieldElem(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, ProjError> {
        if a.0 == 0 {
            return Err(ProjError::ZeroInverse);
        }
        let l = self.log[a.0 as usize];
        Ok(FieldElem(
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize],
        ))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, ProjError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        let l = self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        FieldElem(self.exp[l as usize])
    }

    /// Whether `a = z²` for some `z`; true for zero, and for every element in
    /// characteristic 2.
    pub fn is_square(&self, a: FieldElem) -> bool {
        if a.0 == 0 || self.p == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == FieldElem(1)
    }
}

/// A point of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FieldElem),
    Infinity,
}

impl ProjPoint {
    /// 1-based permutation point: code `x` ↦ `x + 1`, `∞` ↦ `q + 1`.
    pub fn index(self, field: &FiniteField) -> usize {
        match self {
            ProjPoint::Finite(x) => x.0 as usize + 1,
            ProjPoint::Infinity => field.order() as usize + 1,
        }
    }

    pub fn from_index(index: usize, field: &FiniteField) -> Option<Self> {
        let q = field.order() as usize;
        match index {
            i if i >= 1 && i <= q => Some(ProjPoint::Finite(FieldElem(i as u32 - 1))),
            i if i == q + 1 => Some(ProjPoint::Infinity),
            _ => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity(field: &FiniteField) -> Self {
        Self::new(field.one(), field.zero(), field.zero(), field.one())
    }

    pub fn det(&self, field: &FiniteField) -> FieldElem {
        field.sub(field.mul(self.a, self.d), field.mul(self.b, self.c))
    }

    pub fn mul(&self, other: &Mat2, f: &FiniteField) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, other.a), f.mul(self.b, other.c)),
            b: f.add(f.mul(self.a, other.b), f.mul(self.b, other.d)),
            c: f.add(f.mul(self.c, other.a), f.mul(self.d, other.c)),
            d: f.add(f.mul(self.c, other.b), f.mul(self.d, other.d)),
        }
    }

    pub fn scale(&self, s: FieldElem, f: &FiniteField) -> Mat2 {
        Mat2 {
            a: f.mul(s, self.a),
            b: f.mul(s, self.b),
            c: f.mul(s, self.c),
            d: f.mul(s, self.d),
        }
    }

    /// Image of a projective point under the right action on row vectors.
    pub fn apply(&self, point: ProjPoint, f: &FiniteField) -> ProjPoint {
        let (x0, x1) = match point {
            ProjPoint::Finite(x) => (
                f.add(self.a, f.mul(x, self.c)),
                f.add(self.b, f.mul(x, self.d)),
            ),
            ProjPoint::Infinity => (self.c, self.d),
        };
        match f.div(x1, x0) {
            Ok(y) => ProjPoint::Finite(y),
            Err(_) => ProjPoint::Infinity,
        }
    }
}

/// The permutation of the `q + 1` projective points induced by `m`.
pub fn moebius_perm(m: &Mat2, field: &FiniteField) -> Result<Permutation, ProjError> {
    if m.det(field) == field.zero() {
        return Err(ProjError::Singular);
    }
    let q = field.order() as usize;
    let images: Vec<usize> = (1..=q + 1)
        .map(|i| {
            m.apply(ProjPoint::from_index(i, field).expect("in range"), field)
                .index(field)
        })
        .collect();
    Ok(Permutation::from_images(&images).expect("nonsingular matrices permute the line"))
}

/// `(PSL(2,q), PGL(2,q))` on the `q + 1` points of the projective line.
///
/// PGL is generated by `diag(ω,1)`, `[[1,1],[0,1]]` and `[[0,1],[1,0]]`;
/// PSL by `diag(ω²,1)`, `[[1,1],[0,1]]` and `[[0,1],[-1,0]]`, all of square
/// determinant.
pub fn psl_pgl_groups(field: &FiniteField) -> Result<(GeneratedGroup, GeneratedGroup), ProjError> {
    let q = field.order();
    if q < 4 {
        return Err(ProjError::QTooSmall { q, min: 4 });
    }
    let (zero, one, w) = (field.zero(), field.one(), field.generator());
    let translation = Mat2::new(one, one, zero, one);
    let pgl_mats = [
        Mat2::new(w, zero, zero, one),
        translation,
        Mat2::new(zero, one, one, zero),
    ];
    let psl_mats = [
        Mat2::new(field.mul(w, w), zero, zero, one),
        translation,
        Mat2::new(zero, one, field.neg(one), zero),
    ];
    let to_group = |mats: &[Mat2]| -> Result<Vec<Permutation>, ProjError> {
        mats.iter().map(|m| moebius_perm(m, field)).collect()
    };
    let psl = GeneratedGroup::new(to_group(&psl_mats)?)
        .expect("generators share a degree")
        .named(format!("L2({q})"));
    let pgl = GeneratedGroup::new(to_group(&pgl_mats)?)
        .expect("generators share a degree")
        .named(format!("PGL(2,{q})"));
    Ok((psl, pgl))
}

/// `q(q²−1)` and `q(q²−1)/gcd(2, q−1)`.
pub fn pgl_psl_orders(q: u32) -> (u128, u128) {
    let q = q as u128;
    let pgl = q * (q * q - 1);
    (pgl, if q % 2 == 1 { pgl / 2 } else { pgl })
}

/// Elements `x ∉ {0, 1, −1, 2, 2⁻¹}` with `x² − x + 1 ≠ 0`, ascending by code.
pub fn valid_exponents(field: &FiniteField) -> Result<Vec<FieldElem>, ProjError> {
    if field.characteristic() == 2 {
        return Err(ProjError::EvenCharacteristic(field.order()));
    }
    let two = field.from_int(2);
    let excluded = [
        field.zero(),
        field.one(),
        field.neg(field.one()),
        two,
        field.inv(two)?,
    ];
    Ok(field
        .elements()
        .filter(|x| !excluded.contains(x))
        .filter(|&x| field.add(field.sub(field.mul(x, x), x), field.one()) != field.zero())
        .collect())
}

/// The matrix `[[1, x], [−1, −1]]` that swaps `0 ↔ x` and `1 ↔ ∞`.
pub fn swap_matrix(x: FieldElem, field: &FiniteField) -> Mat2 {
    let m1 = field.neg(field.one());
    Mat2::new(field.one(), x, m1, m1)
}

/// Facts computed for one `Σ = {0, 1, ∞, x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentReport {
    pub x: FieldElem,
    pub sigma: KSubset,
    /// Via orbit-stabilizer.
    pub pgl_stab: u128,
    pub psl_stab: u128,
    /// Via element filtering, when the group is small enough.
    pub pgl_stab_brute: Option<u128>,
    pub psl_stab_brute: Option<u128>,
    pub det_a: FieldElem,
    /// `A` restricted to `Σ` is `(0,x)(1,∞)`.
    pub a_swaps: bool,
    /// `det A` is a square.
    pub a_in_psl: bool,
    /// Membership of `A` decided by sifting through the PSL chain.
    pub a_in_psl_chain: bool,
    pub psl_orbit: u64,
    /// `C(q+1, 3)`.
    pub omega3: u128,
}

impl ExponentReport {
    pub fn exceeds_three_subsets(&self) -> bool {
        self.psl_orbit as u128 > self.omega3
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub q: u32,
    pub omega: FieldElem,
    pub exponents: Vec<ExponentReport>,
    /// k = 3 witnesses of PSL and PGL; only computed when no valid exponent exists.
    pub psl_witnesses: Vec<SwWitness>,
    pub pgl_witnesses: Vec<SwWitness>,
    pub psl_name: String,
    pub pgl_name: String,
}

impl TheoremReport {
    pub fn a_inside(&self) -> usize {
        self.exponents.iter().filter(|e| e.a_in_psl).count()
    }

    pub fn a_outside(&self) -> usize {
        self.exponents.len() - self.a_inside()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "projline q={} omega={}", self.q, self.omega)?;
        writeln!(f, "valid_exponents {}", self.exponents.len())?;
        let opt = |v: Option<u128>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
        for e in &self.exponents {
            writeln!(
                f,
                "exponent x={} pgl_stab={} psl_stab={} pgl_stab_brute={} psl_stab_brute={} det_a={} a_swaps={} a_in_psl={} a_in_psl_chain={} psl_orbit={} omega3={} exceeds={}",
                e.x,
                e.pgl_stab,
                e.psl_stab,
                opt(e.pgl_stab_brute),
                opt(e.psl_stab_brute),
                e.det_a,
                e.a_swaps,
                e.a_in_psl,
                e.a_in_psl_chain,
                e.psl_orbit,
                e.omega3,
                e.exceeds_three_subsets()
            )?;
        }
        writeln!(
            f,
            "a_membership inside={} outside={}",
            self.a_inside(),
            self.a_outside()
        )?;
        if self.exponents.is_empty() {
            for w in &self.psl_witnesses {
                writeln!(f, "{}", w.report_line(&self.psl_name))?;
            }
            for w in &self.pgl_witnesses {
                writeln!(f, "{}", w.report_line(&self.pgl_name))?;
            }
        }
        Ok(())
    }
}

/// Checks the stabilizer argument on `PG(q)` for odd `q ≥ 7`. Brute-force
/// stabilizers are filled in when the group order is at most `bound`.
pub fn theorem_check(q: u32, bound: u128) -> Result<TheoremReport, ProjError> {
    let field = FiniteField::of_order(q)?;
    if field.characteristic() == 2 {
        return Err(ProjError::EvenCharacteristic(q));
    }
    if q < 7 {
        return Err(ProjError::QTooSmall { q, min: 7 });
    }
    let (psl, pgl) = psl_pgl_groups(&field)?;
    let (psl_chain, pgl_chain) = (StabilizerChain::build(&psl), StabilizerChain::build(&pgl));
    let n = q as usize + 1;
    let inf = ProjPoint::Infinity;
    let mut exponents = Vec::new();
    for x in valid_exponents(&field)? {
        let pts = [
            ProjPoint::Finite(field.zero()),
            ProjPoint::Finite(field.one()),
            inf,
            ProjPoint::Finite(x),
        ];
        let sigma =
            KSubset::new(n, pts.iter().map(|p| p.index(&field))).expect("four distinct points");
        let pgl_orbit = subset_orbit(&pgl, &pgl_chain, &sigma)?;
        let psl_orbit = subset_orbit(&psl, &psl_chain, &sigma)?;
        let brute = |g: &GeneratedGroup, c: &StabilizerChain| -> Result<Option<u128>, ProjError> {
            if c.order() > bound {
                return Ok(None);
            }
            Ok(Some(
                setwise_stabilizer_small(g, c, &sigma, bound)?
                    .generators()
                    .len() as u128,
            ))
        };
        let a = swap_matrix(x, &field);
        let a_perm = moebius_perm(&a, &field)?;
        let image = |p: ProjPoint| a_perm.image(p.index(&field));
        let (p0, p1, px) = (
            ProjPoint::Finite(field.zero()),
            ProjPoint::Finite(field.one()),
            ProjPoint::Finite(x),
        );
        let a_swaps = image(p0) == px.index(&field)
            && image(px) == p0.index(&field)
            && image(p1) == inf.index(&field)
            && image(inf) == p1.index(&field);
        let det_a = a.det(&field);
        exponents.push(ExponentReport {
            x,
            pgl_stab: setwise_stab_order(&pgl_chain, &pgl_orbit)?,
            psl_stab: setwise_stab_order(&psl_chain, &psl_orbit)?,
            pgl_stab_brute: brute(&pgl, &pgl_chain)?,
            psl_stab_brute: brute(&psl, &psl_chain)?,
            det_a,
            a_swaps,
            a_in_psl: field.is_square(det_a),
            a_in_psl_chain: psl_chain.contains(&a_perm).expect("same degree"),
            psl_orbit: psl_orbit.length(),
            omega3: binomial(n, 3),
            sigma,
        });
    }
    let (mut psl_witnesses, mut pgl_witnesses) = (Vec::new(), Vec::new());
    if exponents.is_empty() {
        psl_witnesses = sw_scan(&psl, &psl_chain, 3..=3)?;
        pgl_witnesses = sw_scan(&pgl, &pgl_chain, 3..=3)?;
    }
    Ok(TheoremReport {
        q,
        omega: field.generator(),
        exponents,
        psl_witnesses,
        pgl_witnesses,
        psl_name: psl.name().unwrap_or_default().to_string(),
        pgl_name: pgl.name().unwrap_or_default().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.generator(), FieldElem(3));
        assert_eq!(f.mul(FieldElem(3), FieldElem(5)), FieldElem(1));
        assert!(f.is_square(FieldElem(2)));
        assert!(!f.is_square(FieldElem(3)));
        assert!(f.is_square(f.zero()));
        assert_eq!(f.neg(FieldElem(2)), FieldElem(5));
        assert_eq!(f.inv(FieldElem(0)), Err(ProjError::ZeroInverse));
    }

    #[test]
    fn trivial_multiplicative_group() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.generator(), FieldElem(1));
    }

    #[test]
    fn gf9_modulus_is_least_root_free_quadratic() {
        let f = FiniteField::new(3, 2).unwrap();
        // x² + 1 (index 1 = [1, 0]) has no root mod 3; x² (index 0) does
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        assert_eq!(f.pow(f.generator(), 8), f.one());
        assert_ne!(f.pow(f.generator(), 4), f.one());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(9, 1).unwrap_err(), ProjError::NotPrime(9));
        assert_eq!(
            FiniteField::of_order(12).unwrap_err(),
            ProjError::NotPrimePower(12)
        );
        assert!(matches!(
            FiniteField::new(2, 17),
            Err(ProjError::TooLarge(_))
        ));
        assert_eq!(FiniteField::of_order(16).unwrap().degree(), 4);
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = FiniteField::new(5, 1).unwrap();
        let m = Mat2::new(f.one(), f.one(), f.one(), f.one());
        assert_eq!(moebius_perm(&m, &f), Err(ProjError::Singular));
        assert!(moebius_perm(&Mat2::identity(&f), &f).unwrap().is_identity());
    }

    #[test]
    fn exponent_exclusions() {
        assert!(valid_exponents(&FiniteField::new(7, 1).unwrap())
            .unwrap()
            .is_empty());
        let f11 = FiniteField::new(11, 1).unwrap();
        let v: Vec<u32> = valid_exponents(&f11)
            .unwrap()
            .into_iter()
            .map(|x| x.code())
            .collect();
        assert_eq!(v, vec![3, 4, 5, 7, 8, 9]);
        assert_eq!(
            valid_exponents(&FiniteField::new(2, 2).unwrap()),
            Err(ProjError::EvenCharacteristic(4))
        );
    }

    #[test]
    fn theorem_check_preconditions() {
        assert!(matches!(
            theorem_check(4, 1_000_000),
            Err(ProjError::EvenCharacteristic(4))
        ));
        assert!(matches!(
            theorem_check(5, 1_000_000),
            Err(ProjError::QTooSmall { .. })
        ));
        assert!(matches!(
            theorem_check(15, 1_000_000),
            Err(ProjError::NotPrimePower(15))
        ));
    }

    #[test]
    fn psl_stabilizer_is_klein_exactly_when_both_squares() {
        for q in [11, 13, 19, 23] {
            let f = FiniteField::of_order(q).unwrap();
            let report = theorem_check(q, 0).unwrap();
            assert!(!report.exponents.is_empty());
            assert!(report.exponents.iter().any(|e| e.psl_stab <= 2));
            for e in &report.exponents {
                assert_eq!(e.pgl_stab, 4);
                let both = f.is_square(f.sub(e.x, f.one())) && f.is_square(f.neg(e.x));
                assert_eq!(e.psl_stab, if both { 4 } else { 2 }, "q={q} x={}", e.x);
                assert_eq!(e.exceeds_three_subsets(), e.psl_stab == 2);
                assert_eq!(e.a_in_psl, e.a_in_psl_chain);
            }
        }
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::bsgs::StabilizerChain;

    fn nonsingular(q: u32) -> impl Strategy<Value = Mat2> {
        let f = FiniteField::of_order(q).unwrap();
        (0..q, 0..q, 0..q, 0..q)
            .prop_map(move |(a, b, c, d)| {
                Mat2::new(FieldElem(a), FieldElem(b), FieldElem(c), FieldElem(d))
            })
            .prop_filter("singular", move |m| m.det(&f).code() != 0)
    }

    proptest! {
        #[test]
        fn field_axioms(q in prop::sample::select(vec![5u32, 7, 9, 11, 13, 25, 27]), a in 0u32..27, b in 0u32..27, c in 0u32..27) {
            let f = FiniteField::of_order(q).unwrap();
            let (a, b, c) = (FieldElem(a % q), FieldElem(b % q), FieldElem(c % q));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a.code() != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                prop_assert_eq!(f.pow(a, q as u64 - 1), f.one());
            }
            prop_assert!(f.is_square(f.mul(a, a)));
        }
    }

    macro_rules! moebius_props {
        ($name:ident, $q:expr) => {
            mod $name {
                use super::*;

                proptest! {
                    #[test]
                    fn homomorphism(m1 in nonsingular($q), m2 in nonsingular($q)) {
                        let f = FiniteField::of_order($q).unwrap();
                        let lhs = moebius_perm(&m1.mul(&m2, &f), &f).unwrap();
                        let rhs = moebius_perm(&m1, &f).unwrap().then(&moebius_perm(&m2, &f).unwrap());
                        prop_assert_eq!(lhs, rhs);
                    }

                    #[test]
                    fn scalars_act_trivially(m in nonsingular($q), s in 1u32..$q) {
                        let f = FiniteField::of_order($q).unwrap();
                        let s = FieldElem(s);
                        prop_assert_eq!(moebius_perm(&m.scale(s, &f), &f).unwrap(), moebius_perm(&m, &f).unwrap());
                    }

                    #[test]
                    fn psl_membership_is_square_determinant(m in nonsingular($q)) {
                        let f = FiniteField::of_order($q).unwrap();
                        let (psl, pgl) = psl_pgl_groups(&f).unwrap();
                        let g = moebius_perm(&m, &f).unwrap();
                        prop_assert!(StabilizerChain::build(&pgl).contains(&g).unwrap());
                        prop_assert_eq!(StabilizerChain::build(&psl).contains(&g).unwrap(), f.is_square(m.det(&f)));
                    }
                }
            }
        };
    }

    moebius_props!(gf5, 5);
    moebius_props!(gf7, 7);
    moebius_props!(gf9, 9);
    moebius_props!(gf11, 11);
    moebius_props!(gf23, 23);
    moebius_props!(gf27, 27);
}
