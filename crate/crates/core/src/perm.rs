//! Permutations of `{1, …, n}` in one-line notation, with composition,
//! inversion, the transposition generators, and Lehmer-code ranking.
//!
//! Composition convention (important, it is the opposite of the common one):
//! `compose(a, b)(i) = b(a(i))`: the left operand is applied first, as a map
//! on positions. Under this convention, swapping the entries of `p` at
//! positions `i` and `i + 1` equals `compose(&t, &p)` where `t` is the
//! one-line permutation `[1, …, i+1, i, …, n]`.

use std::fmt;

use crate::{Error, Result};

/// Largest supported number of symbols. Ranks are stored in a `u64` and
/// `21!` overflows it.
pub const MAX_N: usize = 20;

const FACTORIALS: [u64; MAX_N + 1] = [
    1,
    1,
    2,
    6,
    24,
    120,
    720,
    5_040,
    40_320,
    362_880,
    3_628_800,
    39_916_800,
    479_001_600,
    6_227_020_800,
    87_178_291_200,
    1_307_674_368_000,
    20_922_789_888_000,
    355_687_428_096_000,
    6_402_373_705_728_000,
    121_645_100_408_832_000,
    2_432_902_008_176_640_000,
];

/// `n!` as a `u64`. Panics if `n > MAX_N`.
pub fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

/// A permutation of `{1, …, n}` stored as its one-line notation
/// `[σ(1), …, σ(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

/// The lexicographic rank of a permutation among all of `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermRank {
    pub n: usize,
    pub index: u64,
}

impl PermRank {
    pub fn new(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!(
                "n must be in 1..={MAX_N}, got {n}"
            )));
        }
        if index >= factorial(n) {
            return Err(Error::RankOutOfRange {
                index,
                n,
                max: factorial(n) - 1,
            });
        }
        Ok(PermRank { n, index })
    }

    pub fn to_permutation(self) -> Permutation {
        Permutation::unrank(self.n, self.index).expect("PermRank is validated on construction")
    }
}

impl Permutation {
    /// Builds a permutation from its one-line notation over symbols `1..=n`.
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!(
                "length must be in 1..={MAX_N}, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!("symbol {v} repeated")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds from 0-based one-line notation (symbols `0..n`) by shifting
    /// every symbol up by one.
    pub fn from_zero_based(image: Vec<u8>) -> Result<Self> {
        let shifted = image
            .iter()
            .map(|&v| {
                v.checked_add(1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("symbol {v} too large")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Permutation::new(shifted)
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n must be in 1..={MAX_N}");
        Permutation {
            image: (1..=n as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    /// `σ(i)` with a 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `compose(a, b)(i) = b(a(i))`: `a` acts first, as a position map.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let image = self
            .image
            .iter()
            .map(|&v| other.image[v as usize - 1])
            .collect();
        Ok(Permutation { image })
    }

    /// The inverse under `compose`: `compose(p, inverse(p))` is the identity,
    /// and so is `compose(inverse(p), p)`.
    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { image }
    }

    /// Exchanges the entries at positions `i` and `i + 1` (1-based,
    /// `1 <= i <= n - 1`).
    pub fn adjacent_transpose(&self, i: usize) -> Result<Permutation> {
        if i < 1 || i >= self.n() {
            return Err(Error::PositionOutOfRange { pos: i, n: self.n() });
        }
        let mut image = self.image.clone();
        image.swap(i - 1, i);
        Ok(Permutation { image })
    }

    /// Exchanges the entries at positions `1` and `n`.
    pub fn wrap_transpose(&self) -> Result<Permutation> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Precondition(
                "wrap transposition needs n >= 2".into(),
            ));
        }
        let mut image = self.image.clone();
        image.swap(0, n - 1);
        Ok(Permutation { image })
    }

    /// `[σ(n), …, σ(2), σ(1)]`.
    pub fn reverse(&self) -> Permutation {
        let mut image = self.image.clone();
        image.reverse();
        Permutation { image }
    }

    /// Cyclic rotation of the one-line notation:
    /// `[σ(k+1), …, σ(n), σ(1), …, σ(k)]`.
    pub fn rotate_left(&self, k: usize) -> Permutation {
        let n = self.n();
        let k = k % n;
        let mut image = Vec::with_capacity(n);
        image.extend_from_slice(&self.image[k..]);
        image.extend_from_slice(&self.image[..k]);
        Permutation { image }
    }

    /// Lexicographic rank via the Lehmer code (factorial number system).
    pub fn rank(&self) -> PermRank {
        let n = self.n();
        let mut index = 0u64;
        for i in 0..n {
            let smaller_later = self.image[i + 1..]
                .iter()
                .filter(|&&v| v < self.image[i])
                .count() as u64;
            index += smaller_later * factorial(n - 1 - i);
        }
        PermRank { n, index }
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, index: u64) -> Result<Permutation> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidPermutation(format!(
                "n must be in 1..={MAX_N}, got {n}"
            )));
        }
        if index >= factorial(n) {
            return Err(Error::RankOutOfRange {
                index,
                n,
                max: factorial(n) - 1,
            });
        }
        let mut available: Vec<u8> = (1..=n as u8).collect();
        let mut remainder = index;
        let mut image = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let digit = (remainder / f) as usize;
            remainder %= f;
            image.push(available.remove(digit));
        }
        Ok(Permutation { image })
    }

    /// Parses comma- or space-separated one-line notation, e.g. `"2 4 1 3"`
    /// or `"2,4,1,3"`. With `zero_based`, symbols `0..n` are shifted to
    /// `1..=n` on ingestion.
    pub fn parse(s: &str, zero_based: bool) -> Result<Permutation> {
        let symbols = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad symbol {t:?} in permutation {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if symbols.is_empty() {
            return Err(Error::Parse(format!("no symbols in permutation {s:?}")));
        }
        if zero_based {
            Permutation::from_zero_based(symbols)
        } else {
            Permutation::new(symbols)
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Iterates all of `S_n` in lexicographic (rank) order.
///
/// Panics if `n` is outside `1..=MAX_N`; the full space has `n!` elements,
/// so keep `n` small.
pub fn iter_sn(n: usize) -> impl Iterator<Item = Permutation> {
    assert!((1..=MAX_N).contains(&n), "n must be in 1..={MAX_N}");
    (0..factorial(n)).map(move |index| {
        Permutation::unrank(n, index).expect("index ranges over 0..n!")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(image: &[u8]) -> Permutation {
        Permutation::new(image.to_vec()).unwrap()
    }

    #[test]
    fn compose_identity_either_side() {
        let e = Permutation::identity(3);
        let sigma = p(&[3, 1, 2]);
        assert_eq!(e.compose(&sigma).unwrap(), sigma);
        assert_eq!(sigma.compose(&e).unwrap(), sigma);
    }

    #[test]
    fn compose_transposition_acts_on_positions() {
        // (2,3) in one-line notation is [1,3,2,4]; applied first to the
        // identity it swaps the entries at positions 2 and 3.
        let t = p(&[1, 3, 2, 4]);
        let e = Permutation::identity(4);
        assert_eq!(t.compose(&e).unwrap(), p(&[1, 3, 2, 4]));
        let sigma = p(&[2, 4, 1, 3]);
        assert_eq!(t.compose(&sigma).unwrap(), p(&[2, 1, 4, 3]));
    }

    #[test]
    fn compose_matches_pointwise_definition() {
        for a in iter_sn(4) {
            for b in iter_sn(4) {
                let c = a.compose(&b).unwrap();
                for i in 1..=4 {
                    assert_eq!(c.apply(i), b.apply(a.apply(i)));
                }
            }
        }
    }

    #[test]
    fn compose_size_mismatch_rejected() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::SizeMismatch(3, 4))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[1, 2, 3]).inverse(), p(&[1, 2, 3]));
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
    }

    #[test]
    fn inverse_cancels_exhaustively_s4() {
        let e = Permutation::identity(4);
        for sigma in iter_sn(4) {
            assert_eq!(sigma.compose(&sigma.inverse()).unwrap(), e);
            assert_eq!(sigma.inverse().compose(&sigma).unwrap(), e);
            assert_eq!(sigma.inverse().inverse(), sigma);
        }
    }

    #[test]
    fn adjacent_transpose_examples() {
        assert_eq!(p(&[1, 2, 3, 4]).adjacent_transpose(1).unwrap(), p(&[2, 1, 3, 4]));
        assert_eq!(
            p(&[1, 2, 3, 4, 5]).adjacent_transpose(4).unwrap(),
            p(&[1, 2, 3, 5, 4])
        );
        assert!(p(&[1, 2, 3]).adjacent_transpose(0).is_err());
        assert!(p(&[1, 2, 3]).adjacent_transpose(3).is_err());
    }

    #[test]
    fn adjacent_transpose_touches_exactly_two_positions() {
        for sigma in iter_sn(5) {
            for i in 1..5 {
                let tau = sigma.adjacent_transpose(i).unwrap();
                for j in 1..=5 {
                    if j == i || j == i + 1 {
                        assert_ne!(tau.apply(j), sigma.apply(j));
                    } else {
                        assert_eq!(tau.apply(j), sigma.apply(j));
                    }
                }
                // involution, and identical to composing with the generator
                assert_eq!(tau.adjacent_transpose(i).unwrap(), sigma);
                let mut gen_image: Vec<u8> = (1..=5).collect();
                gen_image.swap(i - 1, i);
                let g = Permutation::new(gen_image).unwrap();
                assert_eq!(g.compose(&sigma).unwrap(), tau);
            }
        }
    }

    #[test]
    fn wrap_transpose_examples() {
        assert_eq!(p(&[1, 2, 3, 4]).wrap_transpose().unwrap(), p(&[4, 2, 3, 1]));
        assert_eq!(p(&[1, 2]).wrap_transpose().unwrap(), p(&[2, 1]));
        let sigma = p(&[3, 1, 4, 2, 5]);
        assert_eq!(sigma.wrap_transpose().unwrap().wrap_transpose().unwrap(), sigma);
        assert!(Permutation::identity(1).wrap_transpose().is_err());
    }

    #[test]
    fn reverse_and_rotate() {
        assert_eq!(p(&[1, 2, 3, 4]).reverse(), p(&[4, 3, 2, 1]));
        assert_eq!(p(&[1, 2, 3, 4, 5]).rotate_left(1), p(&[2, 3, 4, 5, 1]));
        assert_eq!(p(&[1, 2, 3, 4, 5]).rotate_left(5), p(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn rank_unrank_examples() {
        for n in 1..=6 {
            assert_eq!(Permutation::identity(n).rank().index, 0);
            assert_eq!(Permutation::unrank(n, 0).unwrap(), Permutation::identity(n));
        }
        assert!(Permutation::unrank(4, 24).is_err());
    }

    #[test]
    fn rank_is_a_bijection_up_to_s6() {
        for n in 1..=6 {
            let mut seen = vec![false; factorial(n) as usize];
            for sigma in iter_sn(n) {
                let r = sigma.rank();
                assert_eq!(r.n, n);
                assert!(!seen[r.index as usize]);
                seen[r.index as usize] = true;
                assert_eq!(Permutation::unrank(n, r.index).unwrap(), sigma);
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn parse_accepts_both_separators() {
        assert_eq!(Permutation::parse("2 4 1 3", false).unwrap(), p(&[2, 4, 1, 3]));
        assert_eq!(Permutation::parse("2,4,1,3", false).unwrap(), p(&[2, 4, 1, 3]));
        assert_eq!(
            Permutation::parse("0,1,2,3,4", true).unwrap(),
            p(&[1, 2, 3, 4, 5])
        );
        assert!(Permutation::parse("1 2 2", false).is_err());
        assert!(Permutation::parse("0 1 2", false).is_err());
        assert!(Permutation::parse("", false).is_err());
        assert!(Permutation::parse("1 x 3", false).is_err());
    }
}
