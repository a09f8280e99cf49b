//! Stabilizer chains by the deterministic Schreier-Sims algorithm.
//!
//! Transversals are stored as explicit permutations together with their
//! inverses. At the degrees this crate targets (at most 64, usually at most
//! 24) that costs little memory and keeps sifting a plain loop.

use thiserror::Error;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsgsError {
    #[error("group has no generators")]
    NoGenerators,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderExceedsBound { order: u128, bound: u128 },
}

/// A permutation group given by generators.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    name: Option<String>,
}

impl GeneratedGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, BsgsError> {
        let degree = generators.first().ok_or(BsgsError::NoGenerators)?.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            }
            .into());
        }
        Ok(Self {
            degree,
            generators,
            name: None,
        })
    }

    /// Convenience constructor from cycle-notation strings.
    pub fn from_cycles<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self, BsgsError> {
        let perms = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        if perms.is_empty() {
            return Ok(Self::trivial(degree));
        }
        Self::new(perms)
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: vec![Permutation::identity(degree)],
            name: None,
        }
    }

    /// `Sym(n)` as `⟨(1,2), (1,2,…,n)⟩`.
    pub fn symmetric(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree).named(format!("Sym({degree})"));
        }
        let mut cycle: Vec<usize> = (2..=degree).collect();
        cycle.push(1);
        let gens = vec![
            Permutation::parse_cycles("(1,2)", degree).expect("valid transposition"),
            Permutation::from_images(&cycle).expect("valid cycle"),
        ];
        Self {
            degree,
            generators: gens,
            name: Some(format!("Sym({degree})")),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Generators with identities and exact duplicates removed, in the
    /// original order.
    pub(crate) fn effective_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for g in &self.generators {
            if !g.is_identity() && !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    /// Orbit of a 1-based point, in BFS discovery order.
    pub fn point_orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point - 1] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.image(x);
                if !std::mem::replace(&mut seen[y - 1], true) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbit(1).len() == self.degree
    }
}

#[derive(Debug, Clone)]
struct Level {
    /// 0-based base point.
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: u32, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            transversal: Vec::new(),
            inverse: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverse = vec![None; degree];
        self.orbit = vec![self.base];
        self.transversal[self.base as usize] = Some(Permutation::identity(degree));
        self.inverse[self.base as usize] = Some(Permutation::identity(degree));
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i] as usize;
            for s in &self.gens {
                let gamma = s.raw()[beta] as usize;
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta]
                        .as_ref()
                        .expect("orbit point has a transversal")
                        .then(s);
                    self.inverse[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma as u32);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set with per-level transversals.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims. Base points are chosen as the least point
    /// moved by the generator that forces a new level.
    pub fn build(group: &GeneratedGroup) -> Self {
        let degree = group.degree();
        let gens = group.effective_generators();
        let mut base: Vec<u32> = Vec::new();
        for s in &gens {
            if base.iter().all(|&b| s.raw()[b as usize] == b) {
                base.push((s.least_moved_point().expect("non-identity") - 1) as u32);
            }
        }
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|s| base[..i].iter().all(|&c| s.raw()[c as usize] == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, level_gens, degree));
        }

        let mut i = chain.levels.len();
        while i > 0 {
            let level = i - 1;
            match chain.find_missing_schreier_generator(level) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == chain.levels.len() {
                        let b =
                            (residue.least_moved_point().expect("non-identity residue") - 1) as u32;
                        chain.levels.push(Level::new(b, Vec::new(), degree));
                    }
                    for l in level + 1..=drop {
                        chain.levels[l].gens.push(residue.clone());
                        chain.levels[l].rebuild(degree);
                    }
                    i = drop + 1;
                }
            }
        }
        chain
    }

    /// Returns the first Schreier generator at `level` that does not sift
    /// through the levels below it, as (residue, level where sifting stopped).
    fn find_missing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u = lv.transversal[beta as usize].as_ref().expect("orbit point");
            for s in &lv.gens {
                let gamma = s.raw()[beta as usize] as usize;
                let h = u
                    .then(s)
                    .then(lv.inverse[gamma].as_ref().expect("orbit closed"));
                if h.is_identity() {
                    continue;
                }
                let (residue, drop) = self.sift_from(h, level + 1);
                if drop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            let beta = g.raw()[lv.base as usize] as usize;
            match &lv.inverse[beta] {
                None => return (g, l),
                Some(inv) => g = g.then(inv),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact group order, the product of the fundamental orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, lv| {
            acc.checked_mul(lv.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.base as usize + 1).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.orbit.len()).collect()
    }

    /// Fundamental orbit at `level` (1-based points).
    pub fn fundamental_orbit(&self, level: usize) -> Vec<usize> {
        self.levels[level]
            .orbit
            .iter()
            .map(|&x| x as usize + 1)
            .collect()
    }

    /// Strong generators assigned to `level`; each fixes the earlier base points.
    pub fn level_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].gens
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Residue of sifting `g` through the whole chain and the level where it
    /// stopped (`depth()` when every level was passed).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, BsgsError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            }
            .into());
        }
        let (residue, drop) = self.sift(g);
        Ok(drop == self.levels.len() && residue.is_identity())
    }

    /// Every element exactly once, as products of transversal elements.
    pub fn elements_up_to(&self, bound: u128) -> Result<Elements<'_>, BsgsError> {
        let order = self.order();
        if order > bound {
            return Err(BsgsError::OrderExceedsBound { order, bound });
        }
        Ok(Elements {
            chain: self,
            counter: vec![0; self.levels.len()],
            done: false,
        })
    }
}

/// Iterator over all group elements; see [`StabilizerChain::elements_up_to`].
pub struct Elements<'a> {
    chain: &'a StabilizerChain,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        // g = u_{m-1} ⋯ u_1 u_0 with u_i from level i's transversal
        let mut g = Permutation::identity(self.chain.degree);
        for (lv, &c) in levels.iter().zip(&self.counter).rev() {
            g = g.then(
                lv.transversal[lv.orbit[c] as usize]
                    .as_ref()
                    .expect("orbit point"),
            );
        }
        self.done = true;
        for (lv, c) in levels.iter().zip(self.counter.iter_mut()) {
            *c += 1;
            if *c < lv.orbit.len() {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn group(n: usize, gens: &[&str]) -> GeneratedGroup {
        GeneratedGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn sym4_order() {
        let g = group(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(StabilizerChain::build(&g).order(), 24);
        assert_eq!(
            StabilizerChain::build(&GeneratedGroup::symmetric(7)).order(),
            5040
        );
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::build(&GeneratedGroup::trivial(5));
        assert_eq!(chain.order(), 1);
        assert_eq!(chain.depth(), 0);
        assert!(chain.contains(&Permutation::identity(5)).unwrap());
        assert_eq!(chain.elements_up_to(1).unwrap().count(), 1);
    }

    #[test]
    fn membership() {
        let c3 = StabilizerChain::build(&group(3, &["(1,2,3)"]));
        assert!(!c3
            .contains(&Permutation::parse_cycles("(1,2)", 3).unwrap())
            .unwrap());
        assert!(c3
            .contains(&Permutation::parse_cycles("(1,3,2)", 3).unwrap())
            .unwrap());
        assert!(c3.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn enumeration_is_exact() {
        let s3 = StabilizerChain::build(&GeneratedGroup::symmetric(3));
        let all: HashSet<_> = s3.elements_up_to(10).unwrap().collect();
        assert_eq!(all.len(), 6);
        assert!(matches!(
            s3.elements_up_to(5),
            Err(BsgsError::OrderExceedsBound { order: 6, bound: 5 })
        ));
    }

    #[test]
    fn chain_invariants() {
        let g = group(8, &["(1,2,3,4,5,6,7)", "(1,2)(3,6)"]);
        let chain = StabilizerChain::build(&g);
        let base = chain.base();
        for l in 0..chain.depth() {
            for s in chain.level_generators(l) {
                for &b in &base[..l] {
                    assert_eq!(s.image(b), b);
                }
            }
        }
        for s in g.generators() {
            let (r, drop) = chain.sift(s);
            assert!(r.is_identity());
            assert_eq!(drop, chain.depth());
        }
        assert_eq!(
            chain.orbit_sizes().iter().product::<usize>() as u128,
            chain.order()
        );
    }

    #[test]
    fn identity_generators_are_ignored() {
        let g = GeneratedGroup::new(vec![
            Permutation::identity(4),
            Permutation::parse_cycles("(1,2)", 4).unwrap(),
        ])
        .unwrap();
        assert_eq!(StabilizerChain::build(&g).order(), 2);
    }

    #[test]
    fn generator_degrees_must_agree() {
        let err = GeneratedGroup::new(vec![Permutation::identity(4), Permutation::identity(5)])
            .unwrap_err();
        assert!(matches!(
            err,
            BsgsError::Perm(PermError::DegreeMismatch { .. })
        ));
        assert_eq!(
            GeneratedGroup::new(vec![]).unwrap_err(),
            BsgsError::NoGenerators
        );
    }
}


#[cfg(test)]
mod props {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::strategies::{group, perm};
    use super::*;

    proptest! {
        #[test]
        fn chain_membership_matches_enumeration(g in group(6), probe in perm(6)) {
            let chain = StabilizerChain::build(&g);
            let elements: HashSet<Permutation> = chain.elements_up_to(u128::MAX).unwrap().collect();
            prop_assert_eq!(elements.len() as u128, chain.order());
            for gen in g.generators() {
                prop_assert!(elements.contains(gen));
            }
            prop_assert_eq!(chain.contains(&probe).unwrap(), elements.contains(&probe));
        }
    }
}
