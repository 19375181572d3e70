//! Braid words, embedded bands and band representations.
//!
//! Strands, letter indices and band endpoints are 1-based throughout, matching
//! the usual σ_1, …, σ_{n-1} naming. Words are stored exactly as written: no
//! free reduction or normal form is ever applied.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// σ_index or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, sign: Sign::Pos }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: self.sign.flip() }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "s{}", self.index),
            Sign::Neg => write!(f, "s{}^-1", self.index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter("braid words need at least one strand".into()));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::InvalidLetter { index: l.index, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == Sign::Pos)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Concatenation `self · other`; both words must live in the same braid group.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::InvalidParameter("strand counts differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Re-tags the word into B_n under the standard inclusion B_m ⊂ B_n.
    pub fn widen(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::InvalidParameter("cannot narrow a braid word".into()));
        }
        BraidWord::new(strands, self.letters.clone())
    }

    /// The permutation `τ_1 ∘ τ_2 ∘ … ∘ τ_k`, where τ_t is the transposition of
    /// letter t; `permutation(w₁·w₂) = permutation(w₁) ∘ permutation(w₂)`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            images.swap(l.index - 1, l.index);
        }
        Permutation { images }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

/// σ_{i,j}^{±1}, a band joining disks i < j in front of the disks between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddedBand {
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

impl EmbeddedBand {
    pub fn new(i: usize, j: usize, sign: Sign) -> Self {
        EmbeddedBand { i, j, sign }
    }

    pub fn positive(i: usize, j: usize) -> Self {
        EmbeddedBand { i, j, sign: Sign::Pos }
    }

    pub fn check(&self, strands: usize) -> Result<()> {
        if self.i >= 1 && self.i < self.j && self.j <= strands {
            Ok(())
        } else {
            Err(Error::InvalidBand { i: self.i, j: self.j, strands })
        }
    }

    /// `(σ_i ⋯ σ_{j-2}) σ_{j-1}^ε (σ_i ⋯ σ_{j-2})^{-1}` as a fully expanded word.
    pub fn expand(&self, strands: usize) -> Result<BraidWord> {
        self.check(strands)?;
        let mut letters = Vec::with_capacity(2 * (self.j - self.i) - 1);
        letters.extend((self.i..self.j - 1).map(Letter::pos));
        letters.push(Letter { index: self.j - 1, sign: self.sign });
        letters.extend((self.i..self.j - 1).rev().map(Letter::neg));
        BraidWord::new(strands, letters)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandRepresentation {
    strands: usize,
    bands: Vec<EmbeddedBand>,
}

impl BandRepresentation {
    pub fn new(strands: usize, bands: Vec<EmbeddedBand>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter("band representations need at least one strand".into()));
        }
        for b in &bands {
            b.check(strands)?;
        }
        Ok(Self { strands, bands })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Reads a braidword as the band representation whose bands are its letters.
    pub fn from_word(word: &BraidWord) -> Self {
        let bands = word
            .letters()
            .iter()
            .map(|l| EmbeddedBand::new(l.index, l.index + 1, l.sign))
            .collect();
        Self { strands: word.strands(), bands }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[EmbeddedBand] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn is_quasipositive(&self) -> bool {
        self.bands.iter().all(|b| b.sign == Sign::Pos)
    }

    /// True when every band is a usual generator σ_i^{±1}.
    pub fn is_braidword(&self) -> bool {
        self.bands.iter().all(|b| b.j == b.i + 1)
    }

    pub fn sign_sum(&self) -> i64 {
        self.bands.iter().map(|b| b.sign.value()).sum()
    }

    /// β(b) = b(1) ⋯ b(k), expanded.
    pub fn beta(&self) -> BraidWord {
        let mut letters = Vec::new();
        for b in &self.bands {
            // bands are validated on construction
            let w = b.expand(self.strands).expect("validated band");
            letters.extend_from_slice(w.letters());
        }
        BraidWord { strands: self.strands, letters }
    }

    pub fn widen(&self, strands: usize) -> Result<BandRepresentation> {
        if strands < self.strands {
            return Err(Error::InvalidParameter("cannot narrow a band representation".into()));
        }
        BandRepresentation::new(strands, self.bands.clone())
    }
}

/// A permutation of `{1, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds from 1-based images; `None` unless they form a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Some(Permutation { images: out })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based images in order.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// Cycles as 1-based point lists, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let parity = self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn word(n: usize, letters: &[(usize, i64)]) -> BraidWord {
        BraidWord::new(
            n,
            letters.iter().map(|&(i, s)| Letter { index: i, sign: Sign::from_value(s).unwrap() }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn expand_generator_is_itself() {
        let w = EmbeddedBand::positive(1, 2).expand(2).unwrap();
        assert_eq!(w, word(2, &[(1, 1)]));
    }

    #[test]
    fn expand_band_one_three() {
        let w = EmbeddedBand::positive(1, 3).expand(3).unwrap();
        assert_eq!(w, word(3, &[(1, 1), (2, 1), (1, -1)]));
    }

    #[test]
    fn expand_negative_band_two_five() {
        let w = EmbeddedBand::new(2, 5, Sign::Neg).expand(5).unwrap();
        assert_eq!(w, word(5, &[(2, 1), (3, 1), (4, -1), (3, -1), (2, -1)]));
        assert_eq!(w.len(), 5);
        assert_eq!(w.exponent_sum(), -1);
    }

    #[test]
    fn expand_rejects_bad_indices() {
        assert!(matches!(EmbeddedBand::positive(2, 2).expand(3), Err(Error::InvalidBand { .. })));
        assert!(matches!(EmbeddedBand::positive(1, 4).expand(3), Err(Error::InvalidBand { .. })));
        assert!(matches!(EmbeddedBand::positive(0, 2).expand(3), Err(Error::InvalidBand { .. })));
    }

    #[test]
    fn beta_examples() {
        let empty = BandRepresentation::empty(3).unwrap();
        assert!(empty.beta().is_empty());

        let rep = BandRepresentation::new(
            3,
            vec![
                EmbeddedBand::positive(1, 2),
                EmbeddedBand::new(2, 3, Sign::Neg),
                EmbeddedBand::positive(1, 3),
            ],
        )
        .unwrap();
        assert_eq!(rep.beta(), word(3, &[(1, 1), (2, -1), (1, 1), (2, 1), (1, -1)]));

        let rep = BandRepresentation::new(2, vec![EmbeddedBand::positive(1, 2); 2]).unwrap();
        assert_eq!(rep.beta(), word(2, &[(1, 1), (1, 1)]));
    }

    #[test]
    fn quasipositivity() {
        let qp = BandRepresentation::new(4, vec![EmbeddedBand::positive(1, 3), EmbeddedBand::positive(2, 4)]).unwrap();
        assert!(qp.is_quasipositive());
        let not =
            BandRepresentation::new(3, vec![EmbeddedBand::positive(1, 2), EmbeddedBand::new(2, 3, Sign::Neg)]).unwrap();
        assert!(!not.is_quasipositive());
        assert!(BandRepresentation::empty(2).unwrap().is_quasipositive());
    }

    #[test]
    fn permutation_examples() {
        assert!(BraidWord::empty(3).unwrap().permutation().is_identity());
        let p = word(3, &[(1, 1), (2, 1)]).permutation();
        assert_eq!(p.images(), vec![2, 3, 1]);
        assert_eq!(p.cycle_count(), 1);
        // full twist on three strands
        let full = word(3, &[(1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1)]);
        assert!(full.permutation().is_identity());
        assert_eq!(full.exponent_sum(), 6);
    }

    #[test]
    fn letters_must_be_in_range() {
        assert!(matches!(
            BraidWord::new(3, vec![Letter::pos(3)]),
            Err(Error::InvalidLetter { index: 3, strands: 3 })
        ));
        assert!(BraidWord::new(1, vec![]).is_ok());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn widen_keeps_letters() {
        let w = word(2, &[(1, 1)]);
        let v = w.widen(4).unwrap();
        assert_eq!(v.strands(), 4);
        assert_eq!(v.letters(), w.letters());
        assert!(w.widen(1).is_err());
    }
}
