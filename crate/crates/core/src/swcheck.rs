//! Siemons-Wagner witnesses: k-subsets whose orbit is strictly longer than
//! the orbit of every (k+1)-superset.

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use thiserror::Error;

use crate::action::{
    covers_all_pairs, setwise_stabilizer_small, subset_orbit, subset_orbits, ActionError,
    OrbitPartition,
};
use crate::bsgs::{GeneratedGroup, StabilizerChain};
use crate::perm::{KSubset, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("k range {start}..={end} is not within 1..={max}")]
    KRange {
        start: usize,
        end: usize,
        max: usize,
    },
    #[error("expected a witness with k = {expected}, got k = {got}")]
    WrongK { expected: usize, got: usize },
    #[error("|Sigma| = {sigma} must be |Delta| + 1 = {}", delta + 1)]
    SizeMismatch { delta: usize, sigma: usize },
}

impl From<PermError> for SwError {
    fn from(e: PermError) -> Self {
        SwError::Action(e.into())
    }
}

/// A k-subset orbit strictly longer than each of its extension orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwWitness {
    pub k: usize,
    /// Lexicographically least member of the orbit.
    pub delta: KSubset,
    /// `|Δ^G|`.
    pub big_n: u64,
    /// Largest `|(Δ ∪ {β})^G|` over `β ∉ Δ`.
    pub big_l: u64,
    /// `(β, |(Δ ∪ {β})^G|)` for every `β ∉ Δ`, ascending in `β`.
    pub extensions: Vec<(usize, u64)>,
}

impl SwWitness {
    /// `SW k=<k> group=<name> delta={a,b,c} N=<N> L=<L>`
    pub fn report_line(&self, group: &str) -> String {
        format!(
            "SW k={} group={} delta={} N={} L={}",
            self.k, group, self.delta, self.big_n, self.big_l
        )
    }
}

/// `2..=⌊n/2⌋−1`, empty when `n < 6`.
#[allow(clippy::reversed_empty_ranges)]
pub fn default_k_range(degree: usize) -> RangeInclusive<usize> {
    match (degree / 2).checked_sub(1) {
        Some(hi) if hi >= 2 => 2..=hi,
        _ => 2..=1,
    }
}

/// Witnesses among the orbits of `lower` (k-subsets), using `upper`
/// ((k+1)-subsets) to resolve extension orbit lengths.
pub fn witnesses_between(lower: &OrbitPartition, upper: &OrbitPartition) -> Vec<SwWitness> {
    assert_eq!(lower.k() + 1, upper.k());
    let n = lower.table().degree();
    let mut out = Vec::new();
    for orbit in lower.orbits() {
        let delta = orbit.representative();
        let mask = delta.mask().expect("partitions are limited to degree 64");
        let extensions: Vec<(usize, u64)> = (0..n)
            .filter(|&b| mask >> b & 1 == 0)
            .map(|b| (b + 1, upper.length_of_mask(mask | 1 << b)))
            .collect();
        let big_l = extensions.iter().map(|&(_, len)| len).max().unwrap_or(0);
        if orbit.length() > big_l {
            out.push(SwWitness {
                k: lower.k(),
                delta: delta.clone(),
                big_n: orbit.length(),
                big_l,
                extensions,
            });
        }
    }
    out
}

/// All witnesses for `k` in `k_range`, sorted by `(k, representative)`.
///
/// For each k the partitions of `Ω_k` and `Ω_{k+1}` are built once; the
/// `(k+1)` partition is reused as the lower one for the next k.
pub fn sw_scan(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    k_range: RangeInclusive<usize>,
) -> Result<Vec<SwWitness>, SwError> {
    let n = group.degree();
    let (start, end) = (*k_range.start(), *k_range.end());
    if k_range.is_empty() {
        return Ok(Vec::new());
    }
    if start < 1 || end + 1 > n {
        return Err(SwError::KRange {
            start,
            end,
            max: n.saturating_sub(1),
        });
    }
    let mut out = Vec::new();
    let mut lower = subset_orbits(group, chain, start)?;
    for k in start..=end {
        let upper = subset_orbits(group, chain, k + 1)?;
        out.extend(witnesses_between(&lower, &upper));
        lower = upper;
    }
    Ok(out)
}

/// Same output as [`sw_scan`], with the partitions for every k built
/// concurrently on the current rayon pool.
pub fn sw_scan_par(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    k_range: RangeInclusive<usize>,
) -> Result<Vec<SwWitness>, SwError> {
    let n = group.degree();
    let (start, end) = (*k_range.start(), *k_range.end());
    if k_range.is_empty() {
        return Ok(Vec::new());
    }
    if start < 1 || end + 1 > n {
        return Err(SwError::KRange {
            start,
            end,
            max: n.saturating_sub(1),
        });
    }
    let parts = (start..=end + 1)
        .into_par_iter()
        .map(|k| subset_orbits(group, chain, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parts
        .windows(2)
        .flat_map(|w| witnesses_between(&w[0], &w[1]))
        .collect())
}

/// Counts `u` and `d` for a k-subset `Δ` and a (k+1)-subset `Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdCounts {
    /// `#{β ∉ Δ : Δ ∪ {β} ∈ Σ^G}`.
    pub u: u64,
    /// `#{α ∈ Σ : Σ ∖ {α} ∈ Δ^G}`.
    pub d: u64,
    pub delta_len: u64,
    pub sigma_len: u64,
    /// `Δ ⊂ Σ`.
    pub nested: bool,
}

impl UdCounts {
    /// `d·|Σ^G| = u·|Δ^G|`.
    pub fn identity_holds(&self) -> bool {
        self.d as u128 * self.sigma_len as u128 == self.u as u128 * self.delta_len as u128
    }

    /// `ud u=<u> d=<d> |D^G|=<x> |S^G|=<y> identity=<ok|fail>`.
    ///
    /// The identity is only checked for nested inputs. Non-nested inputs print
    /// `fail` followed by a note saying the check was skipped.
    pub fn report_line(&self) -> String {
        let verdict = match (self.nested, self.identity_holds()) {
            (true, true) => "ok",
            (true, false) => "fail",
            (false, _) => "fail note=not-nested-skipped",
        };
        format!(
            "ud u={} d={} |D^G|={} |S^G|={} identity={}",
            self.u, self.d, self.delta_len, self.sigma_len, verdict
        )
    }
}

pub fn ud_counts(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    delta: &KSubset,
    sigma: &KSubset,
) -> Result<UdCounts, SwError> {
    if sigma.len() != delta.len() + 1 {
        return Err(SwError::SizeMismatch {
            delta: delta.len(),
            sigma: sigma.len(),
        });
    }
    let delta_orbit = subset_orbit(group, chain, delta)?;
    let sigma_orbit = subset_orbit(group, chain, sigma)?;
    let mut d = 0;
    for alpha in sigma.members() {
        if delta_orbit.contains(&sigma.without(alpha).expect("member"))? {
            d += 1;
        }
    }
    let mut u = 0;
    for beta in delta.complement_points() {
        if sigma_orbit.contains(&delta.with(beta).expect("non-member"))? {
            u += 1;
        }
    }
    let counts = UdCounts {
        u,
        d,
        delta_len: delta_orbit.length(),
        sigma_len: sigma_orbit.length(),
        nested: delta.is_subset_of(sigma),
    };
    if counts.nested {
        assert!(
            counts.identity_holds(),
            "double count failed for {delta} in {sigma}: {counts:?}"
        );
    }
    Ok(counts)
}

/// True iff the k=3 witness orbit is a longest orbit on 3-subsets.
pub fn max_orbit_check(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    witness: &SwWitness,
) -> Result<bool, SwError> {
    if witness.k != 3 {
        return Err(SwError::WrongK {
            expected: 3,
            got: witness.k,
        });
    }
    let part = subset_orbits(group, chain, 3)?;
    Ok(witness.big_n == part.max_length())
}

/// The inequality chain for one extension `Σ = Δ ∪ {β}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainExtension {
    pub beta: usize,
    pub sigma_len: u64,
    /// `|Δ^{G_Σ}|`.
    pub delta_under_sigma_stab: u64,
    /// `|Σ^{G_Δ}|`.
    pub sigma_under_delta_stab: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub k: usize,
    pub delta: KSubset,
    pub extensions: Vec<ChainExtension>,
    /// Every 2-subset of the points lies in some image of `Δ`.
    pub covers_all_pairs: bool,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.extensions.iter().all(|e| e.holds)
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "chain k={} delta={} pairs_covered={}",
            self.k, self.delta, self.covers_all_pairs
        )?;
        for e in &self.extensions {
            writeln!(
                f,
                "  beta={} |S^G|={} |D^(G_S)|={} |S^(G_D)|={} holds={}",
                e.beta, e.sigma_len, e.delta_under_sigma_stab, e.sigma_under_delta_stab, e.holds
            )?;
        }
        Ok(())
    }
}

/// Checks `k+1 ≥ |Δ^{G_Σ}| > |Σ^{G_Δ}| ≥ 1` for every extension `Σ` of the
/// witness with `|Σ^G| < |Δ^G|`, using brute-force setwise stabilizers.
pub fn sw1_chain_check(
    group: &GeneratedGroup,
    chain: &StabilizerChain,
    witness: &SwWitness,
    bound: u128,
) -> Result<ChainReport, SwError> {
    let delta = &witness.delta;
    let n = group.degree();
    let delta_orbit = subset_orbit(group, chain, delta)?;
    let delta_stab = setwise_stabilizer_small(group, chain, delta, bound)?;
    let mut extensions = Vec::new();
    for &(beta, sigma_len) in &witness.extensions {
        if sigma_len >= delta_orbit.length() {
            continue;
        }
        let sigma = delta.with(beta).expect("beta lies outside delta");
        let sigma_stab = setwise_stabilizer_small(group, chain, &sigma, bound)?;
        // images of Δ under G_Σ are the sets Σ ∖ {α^g}, so count the orbit of
        // the omitted point β inside Σ
        let mut hit = vec![false; n + 1];
        for g in sigma_stab.generators() {
            hit[g.image(beta)] = true;
        }
        let delta_under_sigma_stab = hit.iter().filter(|&&h| h).count() as u64;
        // images of Σ under G_Δ are Δ ∪ {β^g}
        let mut hit = vec![false; n + 1];
        for g in delta_stab.generators() {
            hit[g.image(beta)] = true;
        }
        let sigma_under_delta_stab = hit.iter().filter(|&&h| h).count() as u64;
        let holds = (witness.k as u64 + 1) >= delta_under_sigma_stab
            && delta_under_sigma_stab > sigma_under_delta_stab
            && sigma_under_delta_stab >= 1;
        extensions.push(ChainExtension {
            beta,
            sigma_len,
            delta_under_sigma_stab,
            sigma_under_delta_stab,
            holds,
        });
    }
    Ok(ChainReport {
        k: witness.k,
        delta: delta.clone(),
        extensions,
        covers_all_pairs: covers_all_pairs(&delta_orbit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::binomial;

    fn sub(n: usize, pts: &[usize]) -> KSubset {
        KSubset::new(n, pts.iter().copied()).unwrap()
    }

    #[test]
    fn default_range() {
        assert_eq!(default_k_range(6), 2..=2);
        assert_eq!(default_k_range(24), 2..=11);
        assert_eq!(default_k_range(9), 2..=3);
        assert!(default_k_range(5).is_empty());
        assert!(default_k_range(1).is_empty());
    }

    #[test]
    fn symmetric_groups_have_no_witness() {
        for n in 6..=9 {
            let g = GeneratedGroup::symmetric(n);
            let chain = StabilizerChain::build(&g);
            assert!(sw_scan(&g, &chain, default_k_range(n)).unwrap().is_empty());
        }
    }

    #[test]
    fn scan_range_is_validated() {
        let g = GeneratedGroup::symmetric(5);
        let chain = StabilizerChain::build(&g);
        assert!(matches!(
            sw_scan(&g, &chain, 1..=5),
            Err(SwError::KRange { .. })
        ));
        assert!(matches!(
            sw_scan(&g, &chain, 0..=2),
            Err(SwError::KRange { .. })
        ));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert_eq!(sw_scan(&g, &chain, empty).unwrap(), vec![]);
    }

    #[test]
    fn ud_for_symmetric_group() {
        let n = 8;
        let g = GeneratedGroup::symmetric(n);
        let chain = StabilizerChain::build(&g);
        for k in 1..n {
            let delta = KSubset::new(n, 1..=k).unwrap();
            let sigma = KSubset::new(n, 1..=k + 1).unwrap();
            let c = ud_counts(&g, &chain, &delta, &sigma).unwrap();
            assert_eq!((c.u, c.d), ((n - k) as u64, (k + 1) as u64));
            assert_eq!(c.delta_len as u128, binomial(n, k));
            assert!(c.nested && c.identity_holds());
        }
        let c = ud_counts(&g, &chain, &sub(8, &[1, 2, 3]), &sub(8, &[1, 2, 3, 4])).unwrap();
        assert_eq!(c.report_line(), "ud u=5 d=4 |D^G|=56 |S^G|=70 identity=ok");
    }

    #[test]
    fn ud_non_nested_and_errors() {
        let g = GeneratedGroup::from_cycles(8, &["(1,2,3)"]).unwrap();
        let chain = StabilizerChain::build(&g);
        let c = ud_counts(&g, &chain, &sub(8, &[1, 2, 3]), &sub(8, &[4, 5, 6, 7])).unwrap();
        assert_eq!((c.u, c.d), (0, 0));
        assert!(!c.nested);
        assert!(c
            .report_line()
            .ends_with("identity=fail note=not-nested-skipped"));
        assert!(matches!(
            ud_counts(&g, &chain, &sub(8, &[1, 2, 3]), &sub(8, &[4, 5])),
            Err(SwError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn witness_line_format() {
        let w = SwWitness {
            k: 3,
            delta: sub(8, &[1, 2, 3]),
            big_n: 56,
            big_l: 42,
            extensions: vec![],
        };
        assert_eq!(
            w.report_line("L2(7)"),
            "SW k=3 group=L2(7) delta={1,2,3} N=56 L=42"
        );
    }

    #[test]
    fn max_orbit_rejects_other_k() {
        let g = GeneratedGroup::symmetric(6);
        let chain = StabilizerChain::build(&g);
        let w = SwWitness {
            k: 2,
            delta: sub(6, &[1, 2]),
            big_n: 15,
            big_l: 1,
            extensions: vec![],
        };
        assert_eq!(
            max_orbit_check(&g, &chain, &w),
            Err(SwError::WrongK {
                expected: 3,
                got: 2
            })
        );
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::bsgs::strategies::group;

    proptest! {
        #[test]
        fn double_count_on_random_groups(
            g in group(8),
            pts in Just((1..=8).collect::<Vec<usize>>()).prop_shuffle(),
            k in 1usize..=6,
        ) {
            let chain = StabilizerChain::build(&g);
            let delta = KSubset::new(8, pts[..k].iter().copied()).unwrap();
            let sigma = KSubset::new(8, pts[..=k].iter().copied()).unwrap();
            let c = ud_counts(&g, &chain, &delta, &sigma).unwrap();
            prop_assert!(c.nested && c.identity_holds());
            prop_assert!(c.u >= 1 && c.d >= 1);
        }
    }
}
