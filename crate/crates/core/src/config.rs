//! Black/white configurations stored as fixed-length bit vectors.
//!
//! Bit `v` set means node `v` is black. The same type doubles as a node set
//! wherever a set needs set algebra (subset tests, boundary counts).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Configuration {
    pub fn all_white(len: usize) -> Self {
        Configuration { words: vec![0; word_count(len)], len }
    }

    pub fn all_black(len: usize) -> Self {
        let mut c = Self::all_white(len);
        for w in c.words.iter_mut() {
            *w = u64::MAX;
        }
        c.trim();
        c
    }

    /// Builds a configuration whose black nodes are exactly `nodes`.
    pub fn from_nodes(len: usize, nodes: &[usize]) -> Result<Self> {
        let mut c = Self::all_white(len);
        for &v in nodes {
            if v >= len {
                return Err(Error::InvalidNode { node: v, n: len });
            }
            c.set(v, true);
        }
        Ok(c)
    }

    /// Low `len` bits of `mask`; `len` must be at most 64.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= 64);
        let mut c = Self::all_white(len);
        if len > 0 {
            c.words[0] = mask;
            c.trim();
        }
        c
    }

    /// The configuration as a single word, if it fits.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, v: usize) -> bool {
        (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, v: usize, black: bool) {
        let bit = 1u64 << (v % 64);
        if black {
            self.words[v / 64] |= bit;
        } else {
            self.words[v / 64] &= !bit;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// b_t, the number of black nodes.
    pub fn black_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// w_t, the number of white nodes.
    pub fn white_count(&self) -> usize {
        self.len - self.black_count()
    }

    pub fn is_all_black(&self) -> bool {
        self.white_count() == 0
    }

    pub fn is_all_white(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &Configuration) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// |self \ other|
    pub fn difference_count(&self, other: &Configuration) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn black_nodes(&self) -> Vec<usize> {
        (0..self.len).filter(|&v| self.get(v)).collect()
    }

    /// Length-n string over {0,1}; character i is node i.
    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|v| if self.get(v) { '1' } else { '0' }).collect()
    }

    pub fn parse_bitstring(s: &str, expected_len: usize) -> Result<Self> {
        let c: Configuration = s.parse()?;
        if c.len != expected_len {
            return Err(Error::DimensionMismatch { expected: expected_len, got: c.len });
        }
        Ok(c)
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut c = Configuration::all_white(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(i, true),
                other => {
                    return Err(Error::params(format!(
                        "configuration contains {other:?}; only '0' and '1' are allowed"
                    )))
                }
            }
        }
        Ok(c)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({})", self.to_bitstring())
    }
}
