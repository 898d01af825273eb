//! Permutations of a fixed finite point set `{0, 1, ..., degree-1}`.
//!
//! Everything downstream (stabilizer chains, coset spaces, graph symmetry)
//! is built on the two conventions fixed here:
//!
//! * points are `0`-based internally; the text form uses `1`-based cycles,
//! * products act left-to-right: `point^(p*q) = (point^p)^q`, so
//!   `compose(p, q)` means "apply `p`, then `q`".
//!
//! Conjugation follows the same convention: `p^g = g⁻¹ · p · g`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection: {0}")]
    NotBijective(String),
    #[error("cycle text: point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cycle text: point {0} appears twice")]
    RepeatedPoint(usize),
    #[error("cycle text: points are 1-based, found 0")]
    ZeroPoint,
    #[error("cycle text: {0}")]
    Malformed(String),
}

/// A permutation stored as its image array: `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(PermError::NotBijective(format!(
                    "image {im} out of range for degree {n}"
                )));
            }
            if seen[im] {
                return Err(PermError::NotBijective(format!("image {im} repeated")));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from a list of cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if seen[p] {
                    return Err(PermError::RepeatedPoint(p));
                }
                seen[p] = true;
                let q = cycle[(k + 1) % cycle.len()];
                if q >= degree {
                    return Err(PermError::PointOutOfRange { point: q, degree });
                }
                images[p] = q as u32;
            }
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `self` then `other`; panics on degree mismatch (see [`Perm::try_compose`]).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose: degree mismatch ({} vs {})",
            self.degree(),
            other.degree()
        );
        let images = self
            .images
            .iter()
            .map(|&im| other.images[im as usize])
            .collect();
        Perm { images }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    /// In-place variant for hot loops: `out = self ∘ other`.
    pub fn compose_into(&self, other: &Perm, out: &mut Vec<u32>) {
        debug_assert_eq!(self.degree(), other.degree());
        out.clear();
        out.extend(self.images.iter().map(|&im| other.images[im as usize]));
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Perm { images }
    }

    /// `g⁻¹ · self · g`, computed in one pass.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        assert_eq!(self.degree(), g.degree(), "conjugate_by: degree mismatch");
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.images.len() {
            images[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Perm { images }
    }

    pub fn power(&self, k: i64) -> Perm {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths ≥ 2, unsorted (fixed points omitted).
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.image(p);
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        let mut fixed = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            if self.image(start) == start {
                seen[start] = true;
                fixed.push(start);
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles, fixed }
    }

    /// Multiset of cycle lengths including fixed points; a conjugation invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut lengths = self.cycle_lengths();
        let moved: usize = lengths.iter().sum();
        lengths.extend(std::iter::repeat(1).take(n - moved));
        lengths.sort_unstable();
        lengths
    }

    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for len in self.cycle_lengths() {
            acc = acc.lcm(&BigUint::from(len));
        }
        acc
    }

    /// Element order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for len in self.cycle_lengths() {
            let len = len as u64;
            let g = acc.gcd(&len);
            acc = acc.checked_mul(len / g)?;
        }
        Some(acc)
    }

    /// True iff the order is a power of two (every cycle length is).
    pub fn is_two_element(&self) -> bool {
        self.cycle_lengths().iter().all(|len| len.is_power_of_two())
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths()
            .iter()
            .map(|len| len - 1)
            .sum::<usize>()
            % 2
            == 0
    }

    pub fn moves(&self, point: usize) -> bool {
        self.image(point) != point
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&p| self.moves(p))
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.moves(p)).collect()
    }

    /// Disjoint-cycle text, 1-based, cycles and entry points canonical
    /// (each cycle starts at its least point; cycles ordered by that point).
    /// The identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let decomposition = self.cycles();
        if decomposition.cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in &decomposition.cycles {
            out.push('(');
            for (k, &p) in cycle.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&(p + 1).to_string());
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self.to_cycle_string())
    }
}

/// Cycles of length ≥ 2 plus the fixed points. Cycles are rotated to start
/// at their least point and listed in increasing order of that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
}

/// Parses 1-based disjoint-cycle text like `(1,2)(3,7)` into a permutation
/// of the given degree. Whitespace is insignificant; points within a cycle
/// may be separated by commas or spaces; `()` and the empty string both
/// denote the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, PermError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut digits = String::new();
    let mut seen = vec![false; degree];

    let flush_point = |digits: &mut String,
                           current: &mut Option<Vec<usize>>,
                           seen: &mut Vec<bool>|
     -> Result<(), PermError> {
        if digits.is_empty() {
            return Ok(());
        }
        let value: usize = digits
            .parse()
            .map_err(|_| PermError::Malformed(format!("bad point {digits:?}")))?;
        digits.clear();
        if value == 0 {
            return Err(PermError::ZeroPoint);
        }
        let point = value - 1;
        if point >= degree {
            return Err(PermError::PointOutOfRange {
                point: value,
                degree,
            });
        }
        if seen[point] {
            return Err(PermError::RepeatedPoint(value));
        }
        seen[point] = true;
        match current {
            Some(cycle) => cycle.push(point),
            None => {
                return Err(PermError::Malformed(format!(
                    "point {value} outside any cycle"
                )))
            }
        }
        Ok(())
    };

    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(PermError::Malformed("nested '('".into()));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush_point(&mut digits, &mut current, &mut seen)?;
                match current.take() {
                    Some(cycle) => {
                        if !cycle.is_empty() {
                            cycles.push(cycle);
                        }
                    }
                    None => return Err(PermError::Malformed("unmatched ')'".into())),
                }
            }
            ',' => {
                if current.is_none() {
                    return Err(PermError::Malformed("',' outside a cycle".into()));
                }
                flush_point(&mut digits, &mut current, &mut seen)?;
            }
            c if c.is_ascii_digit() => digits.push(c),
            c if c.is_whitespace() => flush_point(&mut digits, &mut current, &mut seen)?,
            c => return Err(PermError::Malformed(format!("unexpected character {c:?}"))),
        }
    }
    if current.is_some() {
        return Err(PermError::Malformed("unterminated cycle".into()));
    }
    if !digits.is_empty() {
        return Err(PermError::Malformed("digits outside any cycle".into()));
    }
    Perm::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images.shuffle(rng);
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        // (0 1) then (1 2) sends 0→1→2, so the product is the 3-cycle (0 2 1).
        let p = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let pq = p.compose(&q);
        assert_eq!(pq, Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap());
        assert_eq!(pq.image(0), 2);
    }

    #[test]
    fn compose_identity_is_noop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_perm(&mut rng, 9);
            let id = Perm::identity(9);
            assert_eq!(p.compose(&id), p);
            assert_eq!(id.compose(&p), p);
        }
    }

    #[test]
    fn try_compose_rejects_degree_mismatch() {
        let p = Perm::identity(4);
        let q = Perm::identity(5);
        assert_eq!(
            p.try_compose(&q),
            Err(PermError::DegreeMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn inverse_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let p = random_perm(&mut rng, 11);
            assert!(p.compose(&p.inverse()).is_identity());
            assert!(p.inverse().compose(&p).is_identity());
            assert_eq!(p.inverse().inverse(), p);
        }
    }

    #[test]
    fn composition_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = random_perm(&mut rng, 10);
            let b = random_perm(&mut rng, 10);
            let c = random_perm(&mut rng, 10);
            assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }

    // Independent order computation: compose until the identity returns.
    fn order_by_iteration(p: &Perm) -> u64 {
        let mut acc = p.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            acc = acc.compose(p);
            k += 1;
            assert!(k < 100_000, "runaway order loop");
        }
        k
    }

    #[test]
    fn order_matches_repeated_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..60 {
            let p = random_perm(&mut rng, 12);
            assert_eq!(p.order_u64().unwrap(), order_by_iteration(&p));
            assert_eq!(p.order(), BigUint::from(order_by_iteration(&p)));
        }
        assert_eq!(Perm::identity(5).order_u64(), Some(1));
    }

    #[test]
    fn power_agrees_with_order() {
        let p = parse_cycles("(1,2,3,4,5,6)", 6).unwrap();
        assert_eq!(p.order_u64(), Some(6));
        assert!(p.power(6).is_identity());
        assert_eq!(p.power(-1), p.inverse());
        assert_eq!(p.power(0), Perm::identity(6));
        assert_eq!(p.power(7), p);
    }

    #[test]
    fn two_element_test_reads_cycle_lengths() {
        assert!(Perm::identity(6).is_two_element());
        assert!(parse_cycles("(1,2,3,4)(5,6)", 6).unwrap().is_two_element());
        assert!(!parse_cycles("(1,2,3)", 6).unwrap().is_two_element());
        assert!(!parse_cycles("(1,2,3,4,5,6)", 6).unwrap().is_two_element());
    }

    #[test]
    fn parity() {
        assert!(Perm::identity(4).is_even());
        assert!(!parse_cycles("(1,2)", 4).unwrap().is_even());
        assert!(parse_cycles("(1,2,3)", 4).unwrap().is_even());
        assert!(parse_cycles("(1,2)(3,4)", 4).unwrap().is_even());
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..40 {
            let p = random_perm(&mut rng, 10);
            let g = random_perm(&mut rng, 10);
            assert_eq!(p.cycle_type(), p.conjugate_by(&g).cycle_type());
        }
    }

    #[test]
    fn conjugate_matches_product_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..40 {
            let p = random_perm(&mut rng, 9);
            let g = random_perm(&mut rng, 9);
            let expected = g.inverse().compose(&p).compose(&g);
            assert_eq!(p.conjugate_by(&g), expected);
        }
    }

    #[test]
    fn parse_basic_forms() {
        let p = parse_cycles("(1,2)(3,7)", 8).unwrap();
        assert_eq!(p.image(0), 1);
        assert_eq!(p.image(2), 6);
        assert_eq!(p.image(4), 4);
        assert_eq!(parse_cycles("", 5).unwrap(), Perm::identity(5));
        assert_eq!(parse_cycles("()", 5).unwrap(), Perm::identity(5));
        assert_eq!(parse_cycles("(3)", 5).unwrap(), Perm::identity(5));
        // spaces as separators, and between cycles
        assert_eq!(
            parse_cycles(" (1 2)  (3, 7) ", 8).unwrap(),
            parse_cycles("(1,2)(3,7)", 8).unwrap()
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            parse_cycles("(1,2)(2,3)", 5),
            Err(PermError::RepeatedPoint(2))
        );
        assert_eq!(
            parse_cycles("(1,9)", 5),
            Err(PermError::PointOutOfRange { point: 9, degree: 5 })
        );
        assert_eq!(parse_cycles("(0,1)", 5), Err(PermError::ZeroPoint));
        assert!(matches!(
            parse_cycles("(1,2", 5),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            parse_cycles("1,2", 5),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            parse_cycles("(1,2))", 5),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            parse_cycles("(1,x)", 5),
            Err(PermError::Malformed(_))
        ));
    }

    #[test]
    fn cycle_string_is_canonical() {
        let p = parse_cycles("(7,3)(2,1)", 8).unwrap();
        assert_eq!(p.to_cycle_string(), "(1,2)(3,7)");
        assert_eq!(Perm::identity(3).to_cycle_string(), "()");
        let q = parse_cycles("(4,5,2)", 6).unwrap();
        assert_eq!(q.to_cycle_string(), "(2,4,5)");
    }

    proptest! {
        #[test]
        fn cycle_string_round_trips(images in Just((0u32..14).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Perm::from_images(images).unwrap();
            let text = p.to_cycle_string();
            prop_assert_eq!(parse_cycles(&text, 14).unwrap(), p);
        }
    }
}
