//! Permutations of the points `1..=n` and the subsets they act on.
//!
//! Points are 1-based at every public boundary. Internally images are kept
//! 0-based in a `Vec<u32>`; nothing outside this module should need to know.
//!
//! Composition is left-to-right: `p.then(&q)` maps `x` to `(x^p)^q`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("malformed cycle notation at byte {offset}: {reason}")]
    Malformed { offset: usize, reason: &'static str },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 1..={degree}")]
    NotBijective { degree: usize },
}

/// A bijection on `{1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be positive");
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list: entry `i` is the
    /// image of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        let mut raw = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(PermError::NotBijective { degree: n });
            }
            raw.push((x - 1) as u32);
        }
        Ok(Self { images: raw })
    }

    /// Product of disjoint cycles, e.g. `"(4,7)(5,9)(6,1)"`.
    ///
    /// Whitespace between tokens is ignored. Singleton cycles are allowed. A
    /// point may appear at most once across the whole expression.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(PermError::Malformed {
                    offset: pos,
                    reason: "expected '('",
                });
            }
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                // "()" is the identity
                pos += 1;
                continue;
            }
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(PermError::Malformed {
                        offset: pos,
                        reason: "expected a point",
                    });
                }
                let point: usize = text[start..pos].parse().map_err(|_| PermError::Malformed {
                    offset: start,
                    reason: "point too large",
                })?;
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                if std::mem::replace(&mut used[point - 1], true) {
                    return Err(PermError::RepeatedPoint { point });
                }
                cycle.push(point - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => {
                        return Err(PermError::Malformed {
                            offset: pos,
                            reason: "expected ',' or ')'",
                        })
                    }
                    None => {
                        return Err(PermError::Malformed {
                            offset: pos,
                            reason: "unclosed cycle",
                        })
                    }
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Least 1-based point not fixed, if any.
    pub fn least_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i + 1)
    }

    /// `x ↦ (x^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other.degree())?;
        Ok(self.then(other))
    }

    /// Unchecked form of [`compose`](Self::compose) for callers that already
    /// know the degrees agree.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1u64, |acc, c| {
            acc / gcd(acc, c.len() as u64) * c.len() as u64
        })
    }

    /// Non-trivial cycles as 1-based point lists, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn image_of_subset(&self, subset: &KSubset) -> Result<KSubset, PermError> {
        self.check_degree(subset.degree())?;
        let mut members: Vec<u32> = subset
            .members
            .iter()
            .map(|&x| self.images[x as usize - 1] + 1)
            .collect();
        members.sort_unstable();
        Ok(KSubset {
            degree: subset.degree,
            members,
        })
    }

    fn check_degree(&self, other: usize) -> Result<(), PermError> {
        if self.degree() != other {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// A subset of `{1, …, n}` in canonical (strictly increasing) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    degree: u32,
    members: Vec<u32>,
}

impl KSubset {
    /// Sorts `members`; rejects duplicates and out-of-range points.
    pub fn new(degree: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut m: Vec<u32> = Vec::new();
        for x in members {
            if x == 0 || x > degree {
                return Err(PermError::PointOutOfRange { point: x, degree });
            }
            m.push(x as u32);
        }
        m.sort_unstable();
        if let Some(w) = m.windows(2).find(|w| w[0] == w[1]) {
            return Err(PermError::RepeatedPoint {
                point: w[0] as usize,
            });
        }
        Ok(Self {
            degree: degree as u32,
            members: m,
        })
    }

    /// Decodes a bitmask where bit `i` stands for point `i + 1`.
    pub fn from_mask(degree: usize, mask: u64) -> Self {
        debug_assert!(degree >= 64 || mask >> degree == 0);
        let members = (0..64u32)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        Self {
            degree: degree as u32,
            members,
        }
    }

    /// Bitmask with bit `i` for point `i + 1`; `None` past degree 64.
    pub fn mask(&self) -> Option<u64> {
        (self.degree <= 64).then(|| self.members.iter().fold(0u64, |m, &x| m | 1 << (x - 1)))
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.members.iter().map(|&x| x as usize)
    }

    pub fn contains(&self, point: usize) -> bool {
        self.members.binary_search(&(point as u32)).is_ok()
    }

    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.members().all(|x| other.contains(x))
    }

    /// `self ∪ {point}`; `None` if the point is already present.
    pub fn with(&self, point: usize) -> Option<KSubset> {
        match self.members.binary_search(&(point as u32)) {
            Ok(_) => None,
            Err(i) => {
                let mut members = self.members.clone();
                members.insert(i, point as u32);
                Some(KSubset {
                    degree: self.degree,
                    members,
                })
            }
        }
    }

    /// `self ∖ {point}`; `None` if the point is absent.
    pub fn without(&self, point: usize) -> Option<KSubset> {
        let i = self.members.binary_search(&(point as u32)).ok()?;
        let mut members = self.members.clone();
        members.remove(i);
        Some(KSubset {
            degree: self.degree,
            members,
        })
    }

    /// Points of `1..=n` outside the subset, ascending.
    pub fn complement_points(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.degree()).filter(move |&x| !self.contains(x))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSubset[{}]{}", self.degree, self)
    }
}

/// Parses `{a,b,c}` (braces optional) into a subset of `1..=degree`.
pub fn parse_subset(text: &str, degree: usize) -> Result<KSubset, PermError> {
    let t = text.trim();
    let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => {
            return Err(PermError::Malformed {
                offset: 0,
                reason: "unbalanced braces",
            })
        }
    };
    let mut points = Vec::new();
    if !inner.trim().is_empty() {
        for tok in inner.split(',') {
            let p: usize = tok.trim().parse().map_err(|_| PermError::Malformed {
                offset: 0,
                reason: "expected a point",
            })?;
            points.push(p);
        }
    }
    KSubset::new(degree, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parse_three_cycle() {
        assert_eq!(p("(1,2,3)", 3).images(), vec![2, 3, 1]);
    }

    #[test]
    fn parse_g2_generator_fixes_the_rest() {
        let g = p("(4,7)(5,9)(6,1)", 9);
        for x in [2, 3, 8] {
            assert_eq!(g.image(x), x);
        }
        assert_eq!(g.image(6), 1);
        assert_eq!(g.image(1), 6);
        assert_eq!(g.to_string(), "(1,6)(4,7)(5,9)");
    }

    #[test]
    fn empty_text_is_identity() {
        assert!(p("", 5).is_identity());
        assert!(p("  () ", 5).is_identity());
        assert_eq!(p("", 5).to_string(), "()");
    }

    #[test]
    fn whitespace_and_singletons() {
        let g = p(" ( 1 , 2 ) (3) \n(4,5)", 5);
        assert_eq!(g.images(), vec![2, 1, 3, 5, 4]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse_cycles("(1,2)(2,3)", 3),
            Err(PermError::RepeatedPoint { point: 2 })
        );
        assert_eq!(
            Permutation::parse_cycles("(1,2,9)", 8),
            Err(PermError::PointOutOfRange {
                point: 9,
                degree: 8
            })
        );
        assert!(matches!(
            Permutation::parse_cycles("(1,2", 3),
            Err(PermError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("1,2)", 3),
            Err(PermError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 2)", 3),
            Err(PermError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1,)", 3),
            Err(PermError::Malformed { .. })
        ));
        assert_eq!(Permutation::parse_cycles("", 0), Err(PermError::ZeroDegree));
    }

    #[test]
    fn compose_left_to_right() {
        let a = p("(1,2,3)", 3);
        let b = p("(1,2)", 3);
        // 1→2→1, 2→3→3, 3→1→2
        assert_eq!(a.compose(&b).unwrap(), p("(2,3)", 3));
        assert_eq!(Permutation::identity(3).compose(&b).unwrap(), b);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_reverses_cycles() {
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
        assert!(Permutation::identity(4).inverse().is_identity());
    }

    #[test]
    fn order_and_pow() {
        let g = p("(1,2,3)(4,5)", 6);
        assert_eq!(g.order(), 6);
        assert!(g.pow(6).is_identity());
        assert!(!g.pow(3).is_identity());
        assert_eq!(Permutation::identity(2).order(), 1);
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert_eq!(
            Permutation::from_images(&[1, 1]),
            Err(PermError::NotBijective { degree: 2 })
        );
        assert_eq!(Permutation::from_images(&[]), Err(PermError::ZeroDegree));
        assert_eq!(
            Permutation::from_images(&[3, 1]),
            Err(PermError::PointOutOfRange {
                point: 3,
                degree: 2
            })
        );
    }

    #[test]
    fn subset_images() {
        let s = KSubset::new(5, [1, 2, 3]).unwrap();
        assert_eq!(Permutation::identity(5).image_of_subset(&s).unwrap(), s);
        let g = p("(1,4)(2,5)", 5);
        assert_eq!(
            g.image_of_subset(&s).unwrap(),
            KSubset::new(5, [3, 4, 5]).unwrap()
        );
        assert!(Permutation::identity(6).image_of_subset(&s).is_err());
    }

    #[test]
    fn subset_canonical_form() {
        let a = KSubset::new(8, [3, 1, 2]).unwrap();
        let b = KSubset::new(8, [1, 2, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mask(), Some(0b111));
        assert_eq!(KSubset::from_mask(8, 0b111), a);
        assert_eq!(a.to_string(), "{1,2,3}");
        assert_eq!(
            KSubset::new(4, [1, 1]),
            Err(PermError::RepeatedPoint { point: 1 })
        );
        assert_eq!(a.with(4).unwrap().to_string(), "{1,2,3,4}");
        assert!(a.with(3).is_none());
        assert_eq!(a.without(2).unwrap().to_string(), "{1,3}");
        assert_eq!(
            a.complement_points().collect::<Vec<_>>(),
            vec![4, 5, 6, 7, 8]
        );
    }

    #[test]
    fn subset_parsing() {
        assert_eq!(
            parse_subset("{4,5,6,7}", 8).unwrap().to_string(),
            "{4,5,6,7}"
        );
        assert_eq!(parse_subset("1, 2", 8).unwrap().len(), 2);
        assert!(parse_subset("{1,2", 8).is_err());
        assert!(parse_subset("{1,x}", 8).is_err());
        assert!(parse_subset("{}", 8).unwrap().is_empty());
    }
}
