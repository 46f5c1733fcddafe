//! One period of the generalized cyclotomic sequence, bit-packed.

use crate::cyclotomy::{ClassLabel, CyclotomyContext};
use crate::residue::mul_mod;

/// One period of a binary sequence, 64 bits per word, bit `i` of the
/// period at word `i / 64`, position `i % 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut seq = Self::zeros(0);
        for b in bits {
            if seq.len % 64 == 0 {
                seq.words.push(0);
            }
            if b {
                seq.words[seq.len / 64] |= 1 << (seq.len % 64);
            }
            seq.len += 1;
        }
        seq
    }

    /// Parses a string of ASCII `'0'`/`'1'`; whitespace is ignored.
    pub fn from_ascii(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                _ => return None,
            }
        }
        Some(Self::from_bits(bits))
    }

    pub fn period(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for period {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Periodic extension: bit `i` for any `i >= 0`.
    pub fn at(&self, i: usize) -> bool {
        self.get(i % self.len)
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `(ones, zeros)` over one period.
    pub fn balance(&self) -> (usize, usize) {
        let ones = self.ones();
        (ones, self.len - ones)
    }

    pub fn to_ascii(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Packed little-endian bytes: bit `i` is bit `i % 8` of byte `i / 8`.
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.len.div_ceil(8));
        out
    }

    /// The first `count` bits of the periodic extension.
    pub fn extend_periodic(&self, count: usize) -> BitSequence {
        BitSequence::from_bits((0..count).map(|i| self.at(i)))
    }
}

/// Generates one period of the sequence of order `d` for `ctx` by
/// enumerating the classes `D_j`, `P_j`, `Q_j` for `d/2 <= j < d` directly
/// from their defining exponents.
pub fn generate(ctx: &CyclotomyContext) -> BitSequence {
    let (p, q, d) = (ctx.p(), ctx.q(), ctx.d());
    let n = ctx.n();
    let g = ctx.g();
    let mut seq = BitSequence::zeros(n as usize);

    let f_powers: Vec<u64> = std::iter::successors(Some(1u64), |&x| Some(mul_mod(x, ctx.f(), n)))
        .take(d as usize)
        .collect();
    let g_to_d = crate::residue::pow_mod(g, d, n);

    for j in d / 2..d {
        // D_j = { g^(j + d t) f^v }
        let mut gidt = crate::residue::pow_mod(g, j, n);
        for _ in 0..ctx.e() / d {
            for &fv in &f_powers {
                seq.set(mul_mod(gidt, fv, n) as usize);
            }
            gidt = mul_mod(gidt, g_to_d, n);
        }
        // Q_j = q * D_j^(p)
        for t in 0..(p - 1) / d {
            seq.set((q * ctx.table_p().power(j + d * t)) as usize);
        }
        // P_j = p * D_j^(q)
        for t in 0..(q - 1) / d {
            seq.set((p * ctx.table_q().power(j + d * t)) as usize);
        }
    }
    seq
}

/// Same sequence via class labels: a unit lies in `D_j` exactly when its
/// index modulo `q` is `j (mod d)`, since `f = 1 (mod q)`.
pub fn generate_from_labels(ctx: &CyclotomyContext) -> BitSequence {
    let half = ctx.d() as usize / 2;
    BitSequence::from_bits((0..ctx.n()).map(|k| match ctx.class_of(k) {
        ClassLabel::Zero => false,
        ClassLabel::D(_, j) | ClassLabel::P(j) | ClassLabel::Q(j) => j >= half,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, q: u64) -> CyclotomyContext {
        CyclotomyContext::new(p, q, None).unwrap()
    }

    #[test]
    fn balance_examples() {
        let s = generate(&ctx(17, 41));
        assert_eq!(s.period(), 697);
        assert_eq!(s.balance(), (348, 349));
        assert!(!s.get(0));
        assert_eq!(generate(&ctx(17, 73)).ones(), 620);
        assert_eq!(generate(&ctx(41, 73)).balance(), (1496, 1497));
        assert_eq!(BitSequence::zeros(5).balance(), (0, 5));
    }

    #[test]
    fn almost_balanced_for_any_order() {
        for (p, q) in [
            (3, 5),
            (3, 7),
            (5, 7),
            (7, 13),
            (13, 37),
            (17, 41),
            (41, 73),
        ] {
            let c = ctx(p, q);
            let s = generate(&c);
            assert_eq!(s.ones() as u64, (c.n() - 1) / 2, "({p},{q})");
            assert!(!s.get(0));
        }
    }

    #[test]
    fn set_union_matches_label_path() {
        for (p, q) in [(3, 5), (5, 13), (17, 41), (17, 73), (41, 73), (73, 17)] {
            let c = ctx(p, q);
            assert_eq!(generate(&c), generate_from_labels(&c), "({p},{q})");
        }
        let c = CyclotomyContext::new(17, 41, Some(7 + 697)).unwrap();
        assert_eq!(generate(&c), generate_from_labels(&c));
    }

    #[test]
    fn ascii_and_bytes() {
        let s = BitSequence::from_ascii("1011 0000 1").unwrap();
        assert_eq!(s.period(), 9);
        assert_eq!(s.to_ascii(), "101100001");
        assert_eq!(s.to_packed_bytes(), vec![0b0000_1101, 0b1]);
        assert!(BitSequence::from_ascii("10x").is_none());
        assert_eq!(s.extend_periodic(12).to_ascii(), "101100001101");
    }
}
