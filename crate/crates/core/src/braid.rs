//! Braid words, their exponent sums, permutation images and closure
//! component counts.
//!
//! The word `u·v` is `u` followed by `v`, and every representation in this
//! crate sends it to the matrix product `rep(u) * rep(v)`. Permutations
//! multiply the same way, as functions: `perm(u·v) = perm(u) ∘ perm(v)`,
//! which is what permutation matrices `e_x -> e_{p(x)}` do.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("malformed braid token {0:?}; expected sK or sK^-1")]
    Syntax(String),
    #[error("generator s{index} does not exist on {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("cannot combine braids on {0} and {1} strands")]
    StrandMismatch(usize, usize),
}

/// One generator `s_i` (1-based) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "s{}^-1", self.index)
        } else {
            write!(f, "s{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange {
                index: bad.index,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Word from signed 1-based indices: `k` is `s_k`, `-k` is `s_k^-1`.
    pub fn from_signed(strands: usize, gens: &[i64]) -> Result<Self, BraidError> {
        let letters = gens
            .iter()
            .map(|&g| Letter::new(g.unsigned_abs() as usize, g < 0))
            .collect();
        Self::new(strands, letters)
    }

    /// Parses whitespace-separated tokens `sK` or `sK^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let letters = text
            .split_whitespace()
            .map(parse_token)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
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

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(Letter::sign).sum()
    }

    /// Image in the symmetric group under `s_i -> (i, i+1)`.
    pub fn permutation(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.strands), |p, l| {
                p * Permutation::transposition(self.strands, l.index - 1, l.index)
            })
    }

    /// Number of components of the closure link.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `u · self · u^-1`.
    pub fn conjugated_by(&self, u: &Self) -> Result<Self, BraidError> {
        u.concat(self)?.concat(&u.inverse())
    }

    /// Markov stabilization: the same word on `n + 1` strands followed by
    /// `s_n^{+1}` or `s_n^{-1}`.
    pub fn stabilized(&self, inverse: bool) -> Self {
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.strands, inverse));
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// The same letters viewed on more strands.
    pub fn widened(&self, strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, self.letters.clone())
    }
}

fn parse_token(tok: &str) -> Result<Letter, BraidError> {
    let syntax = || BraidError::Syntax(tok.to_string());
    let body = tok.strip_prefix('s').ok_or_else(syntax)?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax());
    }
    let index: usize = digits.parse().map_err(|_| syntax())?;
    if index == 0 {
        return Err(syntax());
    }
    Ok(Letter::new(index, inverse))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Mul for &BraidWord {
    type Output = BraidWord;

    /// Concatenation. Panics on a strand-count mismatch.
    fn mul(self, rhs: &BraidWord) -> BraidWord {
        self.concat(rhs)
            .expect("braid words on different strand counts")
    }
}

/// A bijection of `{0, .., n-1}`; displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Swap of the 0-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// Build from 0-based images; `None` unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "permutations of different degree");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        cycles
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    /// Composition `self ∘ rhs`, matching word concatenation.
    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut any = false;
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{}", x + 1)?;
                x = self.images[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            w("s1 s1 s1", 2),
            BraidWord::from_signed(2, &[1, 1, 1]).unwrap()
        );
        assert_eq!(
            w("s1 s2^-1", 3),
            BraidWord::from_signed(3, &[1, -2]).unwrap()
        );
        assert_eq!(
            BraidWord::parse("s3", 3),
            Err(BraidError::IndexOutOfRange {
                index: 3,
                strands: 3
            })
        );
    }

    #[test]
    fn parse_rejects_malformed_tokens() {
        for bad in ["x1", "s", "s0", "s1^2", "s-1", "s1^-", "S1", "s1s2"] {
            assert!(
                matches!(BraidWord::parse(bad, 4), Err(BraidError::Syntax(_))),
                "{bad}"
            );
        }
        assert_eq!(BraidWord::parse("", 1), Err(BraidError::TooFewStrands(1)));
        assert!(w("", 3).is_empty());
        assert_eq!(w("  s1\t s2^-1 ", 3).len(), 2);
    }

    #[test]
    fn display_roundtrip() {
        let word = w("s1 s2^-1 s3", 4);
        assert_eq!(word.to_string(), "s1 s2^-1 s3");
        assert_eq!(w(&word.to_string(), 4), word);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("s1 s2^-1", 3).exponent_sum(), 0);
        assert_eq!(w("s1 s1 s1", 2).exponent_sum(), 3);
        assert_eq!(w("", 2).exponent_sum(), 0);
    }

    #[test]
    fn permutation_examples() {
        assert!(w("s1 s1", 2).permutation().is_identity());
        let p = w("s1 s2", 3).permutation();
        assert_eq!(p.cycle_count(), 1);
        // (12)∘(23): 1 -> 2 -> 3 -> 1
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(
            w("s1^-1", 2).permutation(),
            Permutation::transposition(2, 0, 1)
        );
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(w("", 3).closure_components(), 3);
        assert_eq!(w("s1 s1 s1", 2).closure_components(), 1);
        assert_eq!(w("s1 s1", 2).closure_components(), 2);
        assert_eq!(w("s1 s2^-1 s1 s2^-1", 3).closure_components(), 1);
    }

    #[test]
    fn markov_helpers() {
        let t = w("s1 s1 s1", 2);
        let st = t.stabilized(false);
        assert_eq!(st.strands(), 3);
        assert_eq!(st.to_string(), "s1 s1 s1 s2");
        assert_eq!(st.closure_components(), t.closure_components());
        let u = w("s1 s2", 3);
        let c = st.conjugated_by(&u).unwrap();
        assert_eq!(c.to_string(), "s1 s2 s1 s1 s1 s2 s2^-1 s1^-1");
        assert_eq!(c.exponent_sum(), st.exponent_sum());
    }

    #[test]
    fn permutation_from_images_checks_bijectivity() {
        assert!(Permutation::from_images(vec![1, 0, 2]).is_some());
        assert!(Permutation::from_images(vec![1, 1, 2]).is_none());
        assert!(Permutation::from_images(vec![0, 3]).is_none());
    }

    fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n, any::<bool>()), 0..max_len).prop_map(move |ls| {
            BraidWord::new(
                n,
                ls.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1_000))]

        #[test]
        fn permutation_is_a_homomorphism(
            (a, b) in (2usize..8).prop_flat_map(|n| (arb_word(n, 12), arb_word(n, 12)))
        ) {
            let ab = a.concat(&b).unwrap();
            prop_assert_eq!(ab.permutation(), a.permutation() * b.permutation());
        }

        #[test]
        fn components_ignore_signs_and_are_bounded(
            (word, flip) in (2usize..8).prop_flat_map(|n| (arb_word(n, 12), any::<usize>()))
        ) {
            let mut letters = word.letters().to_vec();
            if !letters.is_empty() {
                let k = flip % letters.len();
                letters[k] = letters[k].inverted();
            }
            let flipped = BraidWord::new(word.strands(), letters).unwrap();
            let c = word.closure_components();
            prop_assert_eq!(c, flipped.closure_components());
            prop_assert!(1 <= c && c <= word.strands());
        }
    }
}
