//! Dense polynomials over GF(2), 64 coefficients per word, and the linear
//! complexity routines built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::BitSequence;

/// Polynomial over GF(2); coefficient of `x^i` is bit `i % 64` of word
/// `i / 64`. The word vector never has trailing zero words, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitPolynomial {
    words: Vec<u64>,
}

#[inline]
fn extract_word(words: &[u64], bit: usize) -> u64 {
    let (w, b) = (bit / 64, bit % 64);
    let lo = words.get(w).copied().unwrap_or(0) >> b;
    if b == 0 {
        lo
    } else {
        lo | (words.get(w + 1).copied().unwrap_or(0) << (64 - b))
    }
}

/// `dst ^= src << shift`, growing `dst` as needed.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let (ws, bs) = (shift / 64, shift % 64);
    let need = src.len() + ws + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (d, &s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            dst[ws + i] ^= s << bs;
            dst[ws + i + 1] ^= s >> (64 - bs);
        }
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    let top = words.iter().rposition(|&w| w != 0)?;
    Some(top * 64 + 63 - words[top].leading_zeros() as usize)
}

impl BitPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn monomial(exp: usize) -> Self {
        let mut words = vec![0; exp / 64 + 1];
        words[exp / 64] = 1 << (exp % 64);
        Self { words }
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.words[0] ^= 1;
        p.normalize();
        p
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Self { words }
    }

    /// Coefficients packed into a `u128`, bit `i` for `x^i`.
    pub fn from_u128(v: u128) -> Self {
        Self::from_words(vec![v as u64, (v >> 64) as u64])
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words = Vec::new();
        for e in exps {
            if words.len() <= e / 64 {
                words.resize(e / 64 + 1, 0);
            }
            words[e / 64] ^= 1 << (e % 64);
        }
        Self::from_words(words)
    }

    /// `S(x) = s_0 + s_1 x + ... + s_{N-1} x^{N-1}`.
    pub fn from_sequence(seq: &BitSequence) -> Self {
        Self::from_words(seq.words().to_vec())
    }

    fn normalize(&mut self) {
        trim(&mut self.words);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        degree_of(&self.words)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Low 128 coefficients; `None` if the degree is 128 or more.
    pub fn to_u128(&self) -> Option<u128> {
        if self.words.len() > 2 {
            return None;
        }
        let lo = self.words.first().copied().unwrap_or(0) as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        Some(lo | (hi << 64))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        xor_shifted(&mut words, &other.words, 0);
        Self::from_words(words)
    }

    pub fn shl(&self, shift: usize) -> Self {
        let mut words = Vec::new();
        xor_shifted(&mut words, &self.words, shift);
        Self::from_words(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = Vec::new();
        for (wi, &w) in small.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                xor_shifted(&mut words, &big.words, wi * 64 + b);
                w &= w - 1;
            }
        }
        Self::from_words(words)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.words.clone();
        let mut quot = Vec::new();
        while let Some(dr) = degree_of(&rem) {
            if dr < db {
                break;
            }
            let shift = dr - db;
            if quot.len() <= shift / 64 {
                quot.resize(shift / 64 + 1, 0);
            }
            quot[shift / 64] |= 1 << (shift % 64);
            xor_shifted(&mut rem, &divisor.words, shift);
            rem.truncate(dr / 64 + 1);
        }
        (Self::from_words(quot), Self::from_words(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let mut r = self.words.clone();
        reduce_in_place(&mut r, &divisor.words);
        Self::from_words(r)
    }

    /// Coefficient string in hex, lowest coefficients first: nibble `k`
    /// holds `x^{4k}..x^{4k+3}` with `x^{4k}` in its low bit.
    pub fn to_hex(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".to_string();
        };
        (0..=deg / 4)
            .map(|k| {
                let nib = (self.words[k / 16] >> ((k % 16) * 4)) & 0xf;
                char::from_digit(nib as u32, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let mut words = vec![0u64; s.len().div_ceil(16)];
        for (k, c) in s.chars().enumerate() {
            let nib = c.to_digit(16).ok_or(Error::BadHex)? as u64;
            words[k / 16] |= nib << ((k % 16) * 4);
        }
        Ok(Self::from_words(words))
    }

    /// Coefficients in reverse order relative to degree `deg`
    /// (`x^deg * f(1/x)`).
    pub fn reciprocal(&self, deg: usize) -> Self {
        Self::from_exponents((0..=deg).filter(|&i| self.coeff(i)).map(|i| deg - i))
    }
}

/// `a <- a mod m` on raw word vectors (`m` nonzero and trimmed).
fn reduce_in_place(a: &mut Vec<u64>, m: &[u64]) {
    let dm = degree_of(m).expect("reduction by the zero polynomial");
    while let Some(da) = degree_of(&a[..]) {
        if da < dm {
            break;
        }
        xor_shifted(a, m, da - dm);
        a.truncate(da / 64 + 1);
    }
    trim(a);
}

/// Euclidean gcd on word vectors. Over GF(2) every nonzero result is monic.
pub fn gcd(a: &BitPolynomial, b: &BitPolynomial) -> Result<BitPolynomial> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let mut x = a.words.clone();
    let mut y = b.words.clone();
    if degree_of(&x) < degree_of(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        reduce_in_place(&mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    Ok(BitPolynomial::from_words(x))
}

impl fmt::Display for BitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for BitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPolynomial({self})")
    }
}

/// `N - deg gcd(x^N + 1, S(x))`; zero for the all-zero sequence.
pub fn linear_complexity_gcd(seq: &BitSequence) -> usize {
    let n = seq.period();
    let s = BitPolynomial::from_sequence(seq);
    if s.is_zero() {
        return 0;
    }
    let g = gcd(&BitPolynomial::x_pow_plus_one(n), &s).expect("x^N + 1 is nonzero");
    n - g.degree().expect("gcd is nonzero")
}

/// `m(x) = (x^N + 1) / gcd(x^N + 1, S(x))`, with `m = 1` for the all-zero
/// sequence.
pub fn minimal_polynomial(seq: &BitSequence) -> BitPolynomial {
    let xn1 = BitPolynomial::x_pow_plus_one(seq.period());
    let s = BitPolynomial::from_sequence(seq);
    let g = gcd(&xn1, &s).expect("x^N + 1 is nonzero");
    let (quot, rem) = xn1.div_rem(&g);
    debug_assert!(rem.is_zero());
    quot
}

/// Result of Berlekamp-Massey: the linear complexity and the connection
/// polynomial `1 + c_1 x + ... + c_L x^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSynthesis {
    pub complexity: usize,
    pub connection: BitPolynomial,
}

/// Berlekamp-Massey over GF(2) on the bits of `stream` in order.
///
/// The discrepancy is a word-parallel dot product between the connection
/// polynomial and the bit-reversed stream.
pub fn berlekamp_massey(stream: &BitSequence) -> LfsrSynthesis {
    let len = stream.period();
    // rev bit k = stream bit len-1-k
    let rev = BitSequence::from_bits((0..len).rev().map(|i| stream.get(i)));
    let rev = rev.words();

    let mut conn: Vec<u64> = vec![1];
    let mut prev: Vec<u64> = vec![1];
    let mut complexity = 0usize;
    let mut gap = 1usize;

    for n in 0..len {
        // sum_{i=0}^{L} c_i s_{n-i}, with s_{n-i} = rev[len-1-n+i]
        let base = len - 1 - n;
        let mut acc = 0u64;
        for (w, &c) in conn.iter().enumerate() {
            acc ^= c & extract_word(rev, base + 64 * w);
        }
        if acc.count_ones() & 1 == 0 {
            gap += 1;
            continue;
        }
        if 2 * complexity <= n {
            let saved = conn.clone();
            xor_shifted(&mut conn, &prev, gap);
            trim(&mut conn);
            complexity = n + 1 - complexity;
            prev = saved;
            gap = 1;
        } else {
            xor_shifted(&mut conn, &prev, gap);
            trim(&mut conn);
            gap += 1;
        }
    }
    LfsrSynthesis {
        complexity,
        connection: BitPolynomial::from_words(conn),
    }
}

/// Berlekamp-Massey over two full periods of `seq`.
pub fn berlekamp_massey_periodic(seq: &BitSequence) -> LfsrSynthesis {
    berlekamp_massey(&seq.extend_periodic(2 * seq.period()))
}

/// Checks `s_i + c_1 s_{i-1} + ... + c_L s_{i-L} = 0` for every `i >= L`
/// over one full period past `L` of the periodic extension.
pub fn generates(connection: &BitPolynomial, complexity: usize, seq: &BitSequence) -> bool {
    if connection.degree().is_some_and(|d| d > complexity) || !connection.coeff(0) {
        return false;
    }
    let taps: Vec<usize> = (0..=complexity).filter(|&k| connection.coeff(k)).collect();
    (complexity..complexity + seq.period())
        .all(|i| !taps.iter().fold(false, |acc, &k| acc ^ seq.at(i - k)))
}
