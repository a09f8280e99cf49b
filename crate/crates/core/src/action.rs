//! The induced action of a permutation group on k-subsets.
//!
//! Whole-partition work (every orbit on `Ω_k` at once) assigns an orbit id to
//! every k-subset in a dense table indexed by the subset's colex rank. Subsets
//! are visited in lexicographic order of their sorted members, so the first
//! subset that starts a new orbit is that orbit's lexicographic minimum.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::bsgs::{BsgsError, GeneratedGroup, StabilizerChain};
use crate::perm::{KSubset, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Bsgs(#[from] BsgsError),
    #[error("subset size {got} does not match orbit subset size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("k = {k} is outside 1..={degree}")]
    KOutOfRange { k: usize, degree: usize },
    #[error("subset partitions need degree at most 64, got {0}")]
    DegreeTooLarge(usize),
    #[error("group order {order} is not divisible by orbit length {length}")]
    NonDivisible { order: u128, length: u64 },
    #[error("malformed block partition: {0}")]
    MalformedPartition(String),
    #[error("group is not transitive")]
    NotTransitive,
}

/// Binomial coefficients `C(n, k)` for `n, k ≤ 64`.
#[derive(Debug)]
pub(crate) struct Binomials {
    table: Vec<[u64; 65]>,
}

impl Binomials {
    pub(crate) fn new() -> Self {
        let mut table = vec![[0u64; 65]; 65];
        for n in 0..=64 {
            table[n][0] = 1;
            for k in 1..=n {
                table[n][k] =
                    table[n - 1][k - 1].saturating_add(if k < n { table[n - 1][k] } else { 0 });
            }
        }
        Self { table }
    }

    pub(crate) fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }

    /// Colex rank of a k-subset mask among all k-subsets.
    #[inline]
    pub(crate) fn rank(&self, mut mask: u64) -> usize {
        let mut r = 0u64;
        let mut i = 1;
        while mask != 0 {
            let pos = mask.trailing_zeros() as usize;
            r += self.table[pos][i];
            mask &= mask - 1;
            i += 1;
        }
        r as usize
    }
}

/// Exact `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Byte-sliced image tables: the image of a mask under one permutation is
/// the OR of one lookup per byte.
#[derive(Debug, Clone)]
pub(crate) struct MaskImage {
    tables: Vec<[u64; 256]>,
}

impl MaskImage {
    pub(crate) fn new(p: &Permutation) -> Self {
        let n = p.degree();
        assert!(n <= 64);
        let chunks = n.div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for byte in 0..256usize {
                let mut img = 0u64;
                for bit in 0..8 {
                    let point = c * 8 + bit;
                    if byte >> bit & 1 == 1 && point < n {
                        img |= 1 << p.raw()[point];
                    }
                }
                table[byte] = img;
            }
        }
        Self { tables }
    }

    #[inline]
    pub(crate) fn apply(&self, mask: u64) -> u64 {
        let mut out = 0;
        for (c, t) in self.tables.iter().enumerate() {
            out |= t[(mask >> (8 * c)) as usize & 0xff];
        }
        out
    }
}

/// Dense orbit-id table over all k-subsets of `1..=n`.
#[derive(Debug)]
pub struct PartitionTable {
    degree: usize,
    k: usize,
    binomials: Binomials,
    ids: Vec<u32>,
}

impl PartitionTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Orbit index of a k-subset given as a bitmask.
    #[inline]
    pub fn orbit_id_of_mask(&self, mask: u64) -> usize {
        self.ids[self.binomials.rank(mask)] as usize
    }

    pub fn orbit_id(&self, subset: &KSubset) -> Result<usize, ActionError> {
        if subset.len() != self.k {
            return Err(ActionError::SizeMismatch {
                expected: self.k,
                got: subset.len(),
            });
        }
        if subset.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: subset.degree(),
            }
            .into());
        }
        Ok(self.orbit_id_of_mask(subset.mask().expect("degree at most 64")))
    }
}

#[derive(Debug, Clone)]
enum Membership {
    Masks(HashSet<u64>),
    Subsets(HashSet<KSubset>),
    Table { table: Arc<PartitionTable>, id: u32 },
}

/// One orbit of the group on k-subsets.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    representative: KSubset,
    length: u64,
    members: Membership,
}

impl OrbitRecord {
    /// Lexicographically least member.
    pub fn representative(&self) -> &KSubset {
        &self.representative
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn k(&self) -> usize {
        self.representative.len()
    }

    /// Calls `f` on every member of the orbit (in no particular order).
    pub fn for_each_member(&self, mut f: impl FnMut(&KSubset)) {
        let n = self.representative.degree();
        match &self.members {
            Membership::Masks(set) => set.iter().for_each(|&m| f(&KSubset::from_mask(n, m))),
            Membership::Subsets(set) => set.iter().for_each(f),
            Membership::Table { table, id } => for_each_k_subset(n, self.k(), |m| {
                if table.orbit_id_of_mask(m) == *id as usize {
                    f(&KSubset::from_mask(n, m));
                }
            }),
        }
    }

    pub fn contains(&self, subset: &KSubset) -> Result<bool, ActionError> {
        if subset.len() != self.k() {
            return Err(ActionError::SizeMismatch {
                expected: self.k(),
                got: subset.len(),
            });
        }
        if subset.degree() != self.representative.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.representative.degree(),
                right: subset.degree(),
            }
            .into());
        }
        Ok(match &self.members {
            Membership::Masks(set) => set.contains(&subset.mask().expect("degree at most 64")),
            Membership::Subsets(set) => set.contains(subset),
            Membership::Table { table, id } => table.orbit_id(subset)? == *id as usize,
        })
    }
}

/// All orbits of the group on `Ω_k`, ordered by representative.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    k: usize,
    orbits: Vec<OrbitRecord>,
    table: Arc<PartitionTable>,
}

impl OrbitPartition {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn orbits(&self) -> &[OrbitRecord] {
        &self.orbits
    }

    /// Number of orbits, `σ_k`.
    pub fn sigma(&self) -> usize {
        self.orbits.len()
    }

    pub fn table(&self) -> &PartitionTable {
        &self.table
    }

    pub fn orbit_of(&self, subset: &KSubset) -> Result<&OrbitRecord, ActionError> {
        Ok(&self.orbits[self.table.orbit_id(subset)?])
    }

    /// Length of the orbit containing the k-subset with this mask.
    #[inline]
    pub fn length_of_mask(&self, mask: u64) -> u64 {
        self.orbits[self.table.orbit_id_of_mask(mask)].length
    }

    pub fn max_length(&self) -> u64 {
        self.orbits.iter().map(|o| o.length).max().unwrap_or(0)
    }
}

/// Orbit of `subset` under the group, by breadth-first closure under the
/// generators.
pub fn subset_orbit(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    subset: &KSubset,
) -> Result<OrbitRecord, ActionError> {
    if subset.degree() != group.degree() {
        return Err(PermError::DegreeMismatch {
            left: group.degree(),
            right: subset.degree(),
        }
        .into());
    }
    let gens = group.effective_generators();
    let record = if let Some(start) = subset.mask() {
        let images: Vec<MaskImage> = gens.iter().map(MaskImage::new).collect();
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let mut least = subset.clone();
        while let Some(m) = queue.pop_front() {
            for img in &images {
                let t = img.apply(m);
                if seen.insert(t) {
                    let s = KSubset::from_mask(subset.degree(), t);
                    if s < least {
                        least = s;
                    }
                    queue.push_back(t);
                }
            }
        }
        OrbitRecord {
            representative: least,
            length: seen.len() as u64,
            members: Membership::Masks(seen),
        }
    } else {
        let mut seen = HashSet::from([subset.clone()]);
        let mut queue = VecDeque::from([subset.clone()]);
        while let Some(s) = queue.pop_front() {
            for g in &gens {
                let t = g.image_of_subset(&s)?;
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let least = seen.iter().min().expect("orbit is nonempty").clone();
        OrbitRecord {
            representative: least,
            length: seen.len() as u64,
            members: Membership::Subsets(seen),
        }
    };
    debug_assert_eq!(chain.order() % record.length as u128, 0);
    Ok(record)
}

/// Visits every k-subset of `0..n` as a bitmask, in lexicographic order of
/// sorted members.
fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k == 0 {
        f(0);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Partition of `Ω_k` into orbits.
pub fn subset_orbits(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    k: usize,
) -> Result<OrbitPartition, ActionError> {
    let n = group.degree();
    if k == 0 || k > n {
        return Err(ActionError::KOutOfRange { k, degree: n });
    }
    if n > 64 {
        return Err(ActionError::DegreeTooLarge(n));
    }
    let binomials = Binomials::new();
    let total = binomials.get(n, k) as usize;
    let images: Vec<MaskImage> = group
        .effective_generators()
        .iter()
        .map(MaskImage::new)
        .collect();
    let mut ids = vec![u32::MAX; total];
    let mut reps: Vec<(u64, u64)> = Vec::new();
    let mut stack: Vec<u64> = Vec::new();
    for_each_k_subset(n, k, |start| {
        let r = binomials.rank(start);
        if ids[r] != u32::MAX {
            return;
        }
        let id = reps.len() as u32;
        ids[r] = id;
        let mut length = 1u64;
        stack.push(start);
        while let Some(m) = stack.pop() {
            for img in &images {
                let t = img.apply(m);
                let rt = binomials.rank(t);
                if ids[rt] == u32::MAX {
                    ids[rt] = id;
                    length += 1;
                    stack.push(t);
                }
            }
        }
        reps.push((start, length));
    });
    let order = chain.order();
    let table = Arc::new(PartitionTable {
        degree: n,
        k,
        binomials,
        ids,
    });
    let orbits = reps
        .into_iter()
        .enumerate()
        .map(|(id, (mask, length))| {
            debug_assert_eq!(order % length as u128, 0);
            OrbitRecord {
                representative: KSubset::from_mask(n, mask),
                length,
                members: Membership::Table {
                    table: Arc::clone(&table),
                    id: id as u32,
                },
            }
        })
        .collect();
    Ok(OrbitPartition { k, orbits, table })
}

/// `|G| / |S^G|`, the order of the setwise stabilizer of any orbit member.
pub fn setwise_stab_order(
    chain: &StabilizerChain,
    orbit: &OrbitRecord,
) -> Result<u128, ActionError> {
    let order = chain.order();
    let length = orbit.length();
    if length == 0 || order % length as u128 != 0 {
        return Err(ActionError::NonDivisible { order, length });
    }
    Ok(order / length as u128)
}

pub const DEFAULT_ELEMENT_BOUND: u128 = 1_000_000;

/// The full setwise stabilizer `{g ∈ G : S^g = S}`, found by filtering every
/// group element. Its generator list is the complete element list.
pub fn setwise_stabilizer_small(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    subset: &KSubset,
    bound: u128,
) -> Result<GeneratedGroup, ActionError> {
    if subset.degree() != group.degree() {
        return Err(PermError::DegreeMismatch {
            left: group.degree(),
            right: subset.degree(),
        }
        .into());
    }
    let mut elements = Vec::new();
    for g in chain.elements_up_to(bound)? {
        if subset.members().all(|x| subset.contains(g.image(x))) {
            elements.push(g);
        }
    }
    Ok(GeneratedGroup::new(elements)?)
}

/// A partition of `1..=n` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    /// Validates coverage and disjointness; blocks are sorted internally and
    /// ordered by least element.
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let mut owner = vec![false; degree];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(ActionError::MalformedPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > degree {
                    return Err(ActionError::MalformedPartition(format!(
                        "point {x} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut owner[x - 1], true) {
                    return Err(ActionError::MalformedPartition(format!(
                        "point {x} lies in two blocks"
                    )));
                }
            }
        }
        if let Some(missing) = owner.iter().position(|&o| !o) {
            return Err(ActionError::MalformedPartition(format!(
                "point {} is not covered",
                missing + 1
            )));
        }
        blocks.sort();
        Ok(Self { degree, blocks })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.blocks.len() == self.degree
    }
}

/// True iff every generator maps every block onto a block.
pub fn verify_blocks(
    group: &GeneratedGroup,
    partition: &BlockPartition,
) -> Result<bool, ActionError> {
    let n = group.degree();
    if partition.degree() != n {
        return Err(ActionError::MalformedPartition(format!(
            "partition of {} points for a group of degree {n}",
            partition.degree()
        )));
    }
    let mut block_of = vec![0usize; n];
    for (i, b) in partition.blocks().iter().enumerate() {
        for &x in b {
            block_of[x - 1] = i;
        }
    }
    for g in group.generators() {
        for b in partition.blocks() {
            let target = block_of[g.image(b[0]) - 1];
            let target_len = partition.blocks()[target].len();
            if target_len != b.len() || b.iter().any(|&x| block_of[g.image(x) - 1] != target) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest block system in which `a` and `b` share a block (union-find
/// closure over the generators).
pub fn minimal_block_system(group: &GeneratedGroup, a: usize, b: usize) -> BlockPartition {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a - 1), find(&mut parent, b - 1));
    if ra != rb {
        parent[rb] = ra;
        queue.push_back((a - 1, b - 1));
    }
    let gens = group.effective_generators();
    while let Some((x, y)) = queue.pop_front() {
        for g in &gens {
            let (gx, gy) = (g.raw()[x] as usize, g.raw()[y] as usize);
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[ry] = rx;
                queue.push_back((gx, gy));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = find(&mut parent, x);
        blocks[r].push(x + 1);
    }
    BlockPartition::new(n, blocks.into_iter().filter(|b| !b.is_empty()).collect())
        .expect("union-find classes partition the points")
}

/// Nontrivial block systems containing a block through point 1, one per
/// distinct minimal closure of a pair `(1, β)`.
pub fn nontrivial_block_systems(group: &GeneratedGroup) -> Vec<BlockPartition> {
    let mut out: Vec<BlockPartition> = Vec::new();
    for beta in 2..=group.degree() {
        let system = minimal_block_system(group, 1, beta);
        if !system.is_trivial() && !out.contains(&system) {
            out.push(system);
        }
    }
    out
}

/// Primitivity of a transitive group.
pub fn is_primitive(group: &GeneratedGroup, _chain: &StabilizerChain) -> Result<bool, ActionError> {
    if !group.is_transitive() {
        return Err(ActionError::NotTransitive);
    }
    Ok((2..=group.degree()).all(|beta| minimal_block_system(group, 1, beta).blocks().len() == 1))
}

/// Action on the `C(n, n/2) / 2` splittings of an even number of points
/// into two halves. Splittings are numbered by the lexicographic order of the
/// half that contains point 1.
pub fn induced_on_bisections(group: &GeneratedGroup) -> Result<GeneratedGroup, ActionError> {
    let n = group.degree();
    if n % 2 != 0 || n == 0 || n > 64 {
        return Err(ActionError::MalformedPartition(format!(
            "cannot split {n} points into equal halves"
        )));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut halves = Vec::new();
    for_each_k_subset(n, n / 2, |m| {
        if m & 1 == 1 {
            halves.push(m);
        }
    });
    let index_of = |m: u64| {
        let m = if m & 1 == 1 { m } else { full ^ m };
        halves
            .binary_search_by(|h| KSubset::from_mask(n, *h).cmp(&KSubset::from_mask(n, m)))
            .expect("a half containing 1")
    };
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let img = MaskImage::new(g);
            let images: Vec<usize> = halves.iter().map(|&h| index_of(img.apply(h)) + 1).collect();
            Permutation::from_images(&images).expect("splittings are permuted")
        })
        .collect();
    let induced = GeneratedGroup::new(gens)?;
    Ok(match group.name() {
        Some(name) => induced.named(name),
        None => induced,
    })
}

/// Whether every 2-subset of the points lies inside some member of the orbit.
pub fn covers_all_pairs(orbit: &OrbitRecord) -> bool {
    let n = orbit.representative().degree();
    let mut covered = vec![false; n * n];
    let mut remaining = n * (n - 1) / 2;
    orbit.for_each_member(|s| {
        let pts: Vec<usize> = s.members().collect();
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                if !std::mem::replace(&mut covered[(x - 1) * n + (y - 1)], true) {
                    remaining -= 1;
                }
            }
        }
    });
    remaining == 0
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::bsgs::strategies::{group, subset};

    proptest! {
        #[test]
        fn orbits_partition_the_subsets(g in group(8), k in 1usize..=7) {
            let chain = StabilizerChain::build(&g);
            let part = subset_orbits(&g, &chain, k).unwrap();
            let total: u128 = part.orbits().iter().map(|o| o.length() as u128).sum();
            prop_assert_eq!(total, binomial(8, k));
            for o in part.orbits() {
                prop_assert_eq!(chain.order() % o.length() as u128, 0);
            }
        }

        #[test]
        fn orbit_stabilizer(g in group(7), s in (1usize..=6).prop_flat_map(|k| subset(7, k))) {
            let chain = StabilizerChain::build(&g);
            let orbit = subset_orbit(&g, &chain, &s).unwrap();
            let stab = setwise_stabilizer_small(&g, &chain, &s, DEFAULT_ELEMENT_BOUND).unwrap();
            prop_assert_eq!(StabilizerChain::build(&stab).order() * orbit.length() as u128, chain.order());
            let part = subset_orbits(&g, &chain, s.len()).unwrap();
            prop_assert_eq!(orbit.representative(), part.orbit_of(&s).unwrap().representative());
        }
    }
}
