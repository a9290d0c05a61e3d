use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::error::{Error, Result};

/// A finite row of binary cells, packed 64 per word.
///
/// Cell `i` lives in bit `i % 64` of word `i / 64`. Bits beyond `width` in
/// the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tape {
    words: Vec<u64>,
    width: usize,
}

#[inline]
pub(crate) fn words_for(width: usize) -> usize {
    width.div_ceil(64)
}

#[inline]
fn tail_mask(width: usize) -> u64 {
    match width % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Tape {
    pub fn zeros(width: usize) -> Self {
        Tape {
            words: vec![0; words_for(width)],
            width,
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut tape = Tape {
            words: vec![u64::MAX; words_for(width)],
            width,
        };
        tape.mask_tail();
        tape
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut tape = Tape::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            tape.set(i, b);
        }
        tape
    }

    /// Build a tape from raw words; bits past `width` are cleared.
    pub fn from_words(words: Vec<u64>, width: usize) -> Result<Self> {
        if words.len() != words_for(width) {
            return Err(Error::Domain(format!(
                "{} words cannot hold exactly {width} cells",
                words.len()
            )));
        }
        let mut tape = Tape { words, width };
        tape.mask_tail();
        Ok(tape)
    }

    /// A periodic tape of `width` cells repeating `pattern`.
    pub fn periodic(pattern: &[bool], width: usize) -> Self {
        assert!(!pattern.is_empty(), "pattern must be non-empty");
        let bits: Vec<bool> = (0..width).map(|i| pattern[i % pattern.len()]).collect();
        Tape::from_bits(&bits)
    }

    /// Uniformly random cells drawn from `rng`, 64 cells per `next_u64` call.
    pub fn random<R: RngCore + ?Sized>(width: usize, rng: &mut R) -> Self {
        let words = (0..words_for(width)).map(|_| rng.next_u64()).collect();
        let mut tape = Tape { words, width };
        tape.mask_tail();
        tape
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.width == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width, "cell {i} out of range for width {}", self.width);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Tape {
        let mut out = Tape {
            words: self.words.iter().map(|w| !w).collect(),
            width: self.width,
        };
        out.mask_tail();
        out
    }

    pub fn reversed(&self) -> Tape {
        let bits: Vec<bool> = (0..self.width).rev().map(|i| self.get(i)).collect();
        Tape::from_bits(&bits)
    }

    /// Copy of cells `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Tape {
        assert!(start + len <= self.width, "slice out of range");
        let mut out = Tape::zeros(len);
        let shift = start % 64;
        let base = start / 64;
        for (k, word) in out.words.iter_mut().enumerate() {
            let lo = self.words.get(base + k).copied().unwrap_or(0);
            *word = if shift == 0 {
                lo
            } else {
                let hi = self.words.get(base + k + 1).copied().unwrap_or(0);
                (lo >> shift) | (hi << (64 - shift))
            };
        }
        out.mask_tail();
        out
    }

    /// Concatenate tapes left to right.
    pub fn concat(parts: &[&Tape]) -> Tape {
        let width = parts.iter().map(|t| t.width).sum();
        let mut out = Tape::zeros(width);
        let mut offset = 0;
        for part in parts {
            out.write_at(offset, part);
            offset += part.width;
        }
        out
    }

    fn write_at(&mut self, offset: usize, src: &Tape) {
        if offset.is_multiple_of(64) {
            let base = offset / 64;
            for (k, &w) in src.words.iter().enumerate() {
                self.words[base + k] |= w;
            }
        } else {
            for i in 0..src.width {
                if src.get(i) {
                    self.set(offset + i, true);
                }
            }
        }
    }

    pub(crate) fn mask_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.width);
        }
    }
}

impl FromStr for Tape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Domain(format!("invalid cell character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tape::from_bits(&bits))
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.width <= 128 {
            write!(f, "Tape({self})")
        } else {
            write!(f, "Tape(width={}, ones={})", self.width, self.count_ones())
        }
    }
}
