//! Braid words in B_n as sequences of signed Artin generators.
//!
//! A letter `k > 0` is the generator σ_k, and `k < 0` is σ_{|k|}^{-1}. No free
//! reduction or normal form is applied: the representation itself collapses
//! trivial words, which is something to test, not a precondition.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators of the braid group on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Builds a word, validating every letter index against `n`.
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        assert!(n >= 2, "braid group needs at least 2 strands");
        for &k in &letters {
            let idx = k.unsigned_abs() as usize;
            if k == 0 || idx > n - 1 {
                return Err(Error::GeneratorIndex { n, index: k as i64 });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    /// Parses whitespace/comma-separated signed integers: `-j` means σ_j^{-1}.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let k: i32 = tok
                .parse()
                .map_err(|_| Error::WordParse(format!("malformed token {tok:?}")))?;
            if k == 0 {
                return Err(Error::WordParse("zero is not a generator".into()));
            }
            letters.push(k);
        }
        Self::new(n, letters)
    }

    /// Renders back to the text format `parse` accepts (space separated).
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in reversed order, signs unchanged. Reading the braid
    /// right-to-left realizes the composite of the inverse with the mirror
    /// involution on both sides, which is why its spectral data matches the
    /// original's.
    pub fn reverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Image under the mirror automorphism σ_i ↦ σ_i^{-1}: every sign flipped,
    /// order preserved.
    pub fn mirror(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|k| -k).collect(),
        }
    }

    /// The group inverse as a word: reversed order with flipped signs.
    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    /// Concatenation (group multiplication of the underlying braids).
    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    /// Sum of letter signs — the image under the abelianization sending every
    /// generator to 1.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| k.signum() as i64).sum()
    }

    /// A uniformly random word of exactly `len` letters.
    pub fn random(n: usize, len: usize, rng: &mut impl Rng) -> Self {
        let letters = (0..len)
            .map(|_| {
                let idx = rng.random_range(1..n as i32);
                if rng.random_bool(0.5) {
                    idx
                } else {
                    -idx
                }
            })
            .collect();
        BraidWord { n, letters }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_basic_words() {
        let w = BraidWord::parse("1 1 1", 2).unwrap();
        assert_eq!(w.letters(), &[1, 1, 1]);
        let w = BraidWord::parse("1 -2 1 -2", 3).unwrap();
        assert_eq!(w.letters(), &[1, -2, 1, -2]);
        let w = BraidWord::parse("1, -2,1", 3).unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
    }

    #[test]
    fn parse_rejects_out_of_range_and_garbage() {
        assert!(matches!(
            BraidWord::parse("3", 3),
            Err(Error::GeneratorIndex { n: 3, index: 3 })
        ));
        assert!(matches!(BraidWord::parse("0", 3), Err(Error::WordParse(_))));
        assert!(matches!(
            BraidWord::parse("x1", 3),
            Err(Error::WordParse(_))
        ));
    }

    #[test]
    fn parse_render_round_trip() {
        let w = BraidWord::parse("1 -2 3 -3 2", 4).unwrap();
        assert_eq!(BraidWord::parse(&w.render(), 4).unwrap(), w);
    }

    #[test]
    fn reverse_examples() {
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        assert_eq!(w.reverse().letters(), &[2, 1]);
        let pal = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        assert_eq!(pal.reverse(), pal);
        let w = BraidWord::new(4, vec![1, -3, 2, 2, -1]).unwrap();
        assert_eq!(w.reverse().reverse(), w);
    }

    #[test]
    fn mirror_examples() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(w.mirror().letters(), &[-1]);
        let w = BraidWord::new(4, vec![1, -3, 2]).unwrap();
        assert_eq!(w.mirror().mirror(), w);
        // mirror ∘ reverse ∘ inverse = identity on words
        assert_eq!(w.inverse().reverse().mirror(), w);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(BraidWord::new(2, vec![1, 1, 1]).unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::new(3, vec![1, -2]).unwrap().exponent_sum(), 0);
        let w = BraidWord::new(4, vec![1, -3, 2, 2, -1]).unwrap();
        assert_eq!(w.reverse().exponent_sum(), w.exponent_sum());
        assert_eq!(w.inverse().exponent_sum(), -w.exponent_sum());
    }

    #[test]
    fn random_words_are_valid_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = BraidWord::random(4, 20, &mut rng);
        assert_eq!(w.len(), 20);
        assert!(w.letters().iter().all(|&k| k != 0 && k.unsigned_abs() <= 3));
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(BraidWord::random(4, 20, &mut rng2), w);
    }

    #[test]
    fn json_shape() {
        let w = BraidWord::new(3, vec![1, -2]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":3,"letters":[1,-2]}"#);
    }
}
