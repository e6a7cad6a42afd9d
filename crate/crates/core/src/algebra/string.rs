//! Hermitian Majorana strings stored as fixed-width bitmasks.
//!
//! A string `X ⊂ {0, .., N-1}` denotes the monomial
//! `γ_X = i^{r_X} γ_{x_1} γ_{x_2} ⋯ γ_{x_k}` with `x_1 < x_2 < ⋯ < x_k` and
//! `r_X = k(k-1)/2 mod 2`, which makes every `γ_X` Hermitian and unitary.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of 64-bit words in a mask.
pub const MASK_WORDS: usize = 4;

/// Largest supported number of Majorana modes.
pub const MAX_MODES: usize = 64 * MASK_WORDS;

/// A power of `i`, stored as the exponent mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    /// The exponent `k` in `i^k`, in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Multiply `c` by this phase without rounding.
    #[inline]
    pub fn apply(self, c: Complex64) -> Complex64 {
        match self.0 {
            0 => c,
            1 => Complex64::new(-c.im, c.re),
            2 => -c,
            _ => Complex64::new(c.im, -c.re),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// A Majorana string: the set of mode indices of one basis monomial.
///
/// The number of modes is not stored here; it is carried by the polynomial
/// or Hamiltonian that owns the string. Ordering is numeric on the mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MajoranaString {
    words: [u64; MASK_WORDS],
}

impl MajoranaString {
    /// The empty string, `γ_∅ = 1`.
    pub const IDENTITY: MajoranaString = MajoranaString { words: [0; MASK_WORDS] };

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    /// Build a string from mode indices. Repeated indices cancel pairwise
    /// (as `γ_i² = 1` would), so `from_modes(&[1, 1])` is the identity.
    ///
    /// Panics if an index is `>= MAX_MODES`.
    pub fn from_modes(modes: &[usize]) -> Self {
        let mut s = Self::IDENTITY;
        for &m in modes {
            s.toggle(m);
        }
        s
    }

    pub fn single(mode: usize) -> Self {
        Self::from_modes(&[mode])
    }

    pub fn from_words(words: [u64; MASK_WORDS]) -> Self {
        Self { words }
    }

    pub fn words(&self) -> &[u64; MASK_WORDS] {
        &self.words
    }

    #[inline]
    pub fn toggle(&mut self, mode: usize) {
        assert!(mode < MAX_MODES, "mode {mode} exceeds {MAX_MODES}");
        self.words[mode / 64] ^= 1u64 << (mode % 64);
    }

    #[inline]
    pub fn contains(&self, mode: usize) -> bool {
        mode < MAX_MODES && (self.words[mode / 64] >> (mode % 64)) & 1 == 1
    }

    /// `|X|`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn overlap(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    /// Highest mode index present, or `None` for the identity.
    pub fn max_mode(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| 64 * i + 63 - w.leading_zeros() as usize)
    }

    /// Whether every mode lies below `n_modes`.
    pub fn fits(&self, n_modes: usize) -> bool {
        self.max_mode().is_none_or(|m| m < n_modes)
    }

    /// Mode indices in increasing order.
    pub fn modes(&self) -> Modes {
        Modes { words: self.words, word: 0 }
    }

    /// `r_X`, the power of `i` in the Hermitian normalization.
    #[inline]
    pub fn hermitian_exponent(&self) -> u32 {
        hermitian_exponent(self.degree())
    }

    /// Lowercase hexadecimal mask without prefix; `"0"` for the identity.
    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        for &w in self.words.iter().rev() {
            if out.is_empty() {
                if w != 0 {
                    out = format!("{w:x}");
                }
            } else {
                out.push_str(&format!("{w:016x}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse a hexadecimal mask, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        let bad = || Error::InvalidArgument(format!("invalid hex mask {s:?}"));
        if digits.is_empty() || digits.len() > 16 * MASK_WORDS {
            return Err(bad());
        }
        let mut words = [0u64; MASK_WORDS];
        let bytes = digits.as_bytes();
        for (i, chunk) in bytes.rchunks(16).enumerate() {
            let chunk = std::str::from_utf8(chunk).map_err(|_| bad())?;
            words[i] = u64::from_str_radix(chunk, 16).map_err(|_| bad())?;
        }
        Ok(Self { words })
    }
}

/// `k(k-1)/2 mod 2`.
#[inline]
pub fn hermitian_exponent(degree: usize) -> u32 {
    ((degree * degree.saturating_sub(1) / 2) % 2) as u32
}

impl Ord for MajoranaString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for MajoranaString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXor for MajoranaString {
    type Output = Self;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        let mut words = self.words;
        for (w, r) in words.iter_mut().zip(rhs.words.iter()) {
            *w ^= r;
        }
        Self { words }
    }
}

impl BitAnd for MajoranaString {
    type Output = Self;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        let mut words = self.words;
        for (w, r) in words.iter_mut().zip(rhs.words.iter()) {
            *w &= r;
        }
        Self { words }
    }
}

impl BitOr for MajoranaString {
    type Output = Self;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        let mut words = self.words;
        for (w, r) in words.iter_mut().zip(rhs.words.iter()) {
            *w |= r;
        }
        Self { words }
    }
}

impl fmt::Debug for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("γ")?;
        f.debug_set().entries(self.modes()).finish()
    }
}

impl fmt::Display for MajoranaString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for MajoranaString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl FromIterator<usize> for MajoranaString {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::IDENTITY;
        for m in iter {
            s.toggle(m);
        }
        s
    }
}

pub struct Modes {
    words: [u64; MASK_WORDS],
    word: usize,
}

impl Iterator for Modes {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < MASK_WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(64 * self.word + bit);
            }
            self.word += 1;
        }
        None
    }
}

/// Parity of `|{(s, t) ∈ S × T : t < s}|`.
///
/// For each position `x` the exclusive suffix parity of `S` (parity of the
/// number of elements of `S` strictly above `x`) is built word by word, and
/// the inversion parity is the parity of its overlap with `T`.
#[inline]
fn inversion_parity(s: &MajoranaString, t: &MajoranaString) -> u32 {
    let mut carry = 0u64; // all-ones if an odd number of S bits lie in higher words
    let mut acc = 0u32;
    for i in (0..MASK_WORDS).rev() {
        let w = s.words[i];
        let tw = t.words[i];
        if tw != 0 {
            let mut y = w;
            y ^= y >> 1;
            y ^= y >> 2;
            y ^= y >> 4;
            y ^= y >> 8;
            y ^= y >> 16;
            y ^= y >> 32;
            let above = (y >> 1) ^ carry;
            acc ^= (above & tw).count_ones() & 1;
        }
        if w.count_ones() & 1 == 1 {
            carry = !carry;
        }
    }
    acc
}

/// `γ_S γ_T = p · γ_{S △ T}`.
#[inline]
pub fn string_multiply(s: &MajoranaString, t: &MajoranaString) -> (Phase, MajoranaString) {
    let r = *s ^ *t;
    let k = s.hermitian_exponent() + t.hermitian_exponent() + 4 - r.hermitian_exponent()
        + 2 * inversion_parity(s, t);
    (Phase::from_exponent(k), r)
}

/// Whether `{γ_S, γ_T} = 0`, i.e. `|S||T| - |S ∩ T|` is odd.
#[inline]
pub fn strings_anticommute(s: &MajoranaString, t: &MajoranaString) -> bool {
    (s.degree() * t.degree() + s.overlap(t)) % 2 == 1
}

/// The image of `γ_S` under conjugation by `e^{i(θ/2)γ_T}`.
///
/// Returns `(coefficient on γ_S, Some((R, coefficient on γ_R)))` when the
/// strings anticommute, and `(1, None)` otherwise.
#[inline]
pub fn rotation_image(
    theta: f64,
    t: &MajoranaString,
    s: &MajoranaString,
) -> (Complex64, Option<(MajoranaString, Complex64)>) {
    if !strings_anticommute(t, s) {
        return (Complex64::new(1.0, 0.0), None);
    }
    let (phase, r) = string_multiply(t, s);
    let (sin, cos) = theta.sin_cos();
    let off = (Phase::I * phase).apply(Complex64::new(sin, 0.0));
    (Complex64::new(cos, 0.0), Some((r, off)))
}
