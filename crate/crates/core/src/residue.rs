//! Modular arithmetic over `u64`: primality, multiplicative orders,
//! primitive roots, CRT lifting, discrete logarithms and the power-residue
//! classification `Res(c, p)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut base = base % n;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `n` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, n: u64) -> Result<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return Err(Error::NonCoprime { a, n });
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

// Witnesses that make Miller-Rabin deterministic for every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` in increasing order (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |phi, r| phi / r * (r - 1))
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::BadModulus {
            modulus: n,
            requirement: "n >= 2",
        });
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::NonCoprime { a, n });
    }
    let mut order = euler_phi(n);
    for r in prime_factors(order) {
        while order % r == 0 && pow_mod(a, order / r, n) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_probable_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Order test against the prime factors of `p - 1`; `p` must be prime.
pub fn is_primitive_root(g: u64, p: u64) -> bool {
    if g % p == 0 {
        return false;
    }
    prime_factors(p - 1)
        .into_iter()
        .all(|r| pow_mod(g, (p - 1) / r, p) != 1)
}

/// Smallest primitive root of the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let factors = prime_factors(p - 1);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root");
    Ok(g)
}

/// Smallest `g >= 2` generating both `Z_p^*` and `Z_q^*`.
pub fn common_primitive_root(p: u64, q: u64) -> Result<u64> {
    require_odd_prime(p)?;
    require_odd_prime(q)?;
    if p == q {
        return Err(Error::DistinctnessViolated(p));
    }
    let g = (2..)
        .find(|&g| is_primitive_root(g, p) && is_primitive_root(g, q))
        .expect("CRT guarantees a common primitive root below pq");
    Ok(g)
}

/// The residue `x mod pq` with `x = a (mod p)` and `x = b (mod q)`.
pub fn crt_lift(a: u64, p: u64, b: u64, q: u64) -> Result<u64> {
    let p_inv = mod_inverse(p % q, q)?;
    let (a, b) = (a % p, b % q);
    let diff = (b + q - a % q) % q;
    let t = mul_mod(diff, p_inv, q);
    Ok(a + p * t)
}

/// Baby-step giant-step: `x` in `[0, p-2]` with `g^x = a (mod p)`.
pub fn discrete_log(g: u64, a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::NotInGroup(a, p));
    }
    let group = p - 1;
    let step = (group as f64).sqrt().ceil() as u64 + 1;

    let mut baby = HashMap::with_capacity(step as usize);
    let mut cur = 1u64;
    for j in 0..step {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, g, p);
    }
    let giant = mod_inverse(pow_mod(g, step, p), p)?;
    let mut gamma = a;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * step + j) % group);
        }
        gamma = mul_mod(gamma, giant, p);
    }
    Err(Error::NotInGroup(a, p))
}

/// Full index table `ind_g(a)` for every unit `a` modulo a prime.
///
/// Built by walking the powers of `g` once; lookups are O(1). Used where a
/// context needs the index of every residue (class labelling, cyclotomic
/// number counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexTable {
    modulus: u64,
    generator: u64,
    index: Vec<u32>,
    power: Vec<u32>,
}

impl IndexTable {
    pub fn new(generator: u64, modulus: u64) -> Result<Self> {
        require_odd_prime(modulus)?;
        if !is_primitive_root(generator, modulus) {
            return Err(Error::NotPrimitiveRoot {
                g: generator,
                p: modulus,
            });
        }
        let n = modulus as usize;
        let mut index = vec![u32::MAX; n];
        let mut power = Vec::with_capacity(n - 1);
        let mut cur = 1u64;
        for k in 0..(n - 1) {
            index[cur as usize] = k as u32;
            power.push(cur as u32);
            cur = mul_mod(cur, generator % modulus, modulus);
        }
        Ok(Self {
            modulus,
            generator: generator % modulus,
            index,
            power,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `ind_g(a)`, or `None` when `a = 0 (mod p)`.
    #[inline]
    pub fn index(&self, a: u64) -> Option<u64> {
        match self.index[(a % self.modulus) as usize] {
            u32::MAX => None,
            k => Some(k as u64),
        }
    }

    /// `g^k mod p` for any `k`.
    #[inline]
    pub fn power(&self, k: u64) -> u64 {
        self.power[(k % (self.modulus - 1)) as usize] as u64
    }
}

/// `Res(c, p)`: the largest `k` in {1, 2, 4, 8} such that `c` is a nonzero
/// `k`-th power residue modulo `p`, or `Zero` when `p | c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueClass {
    Zero,
    NonResidue,
    Quadratic,
    Quartic,
    Octic,
}

impl ResidueClass {
    pub fn value(self) -> u8 {
        match self {
            ResidueClass::Zero => 0,
            ResidueClass::NonResidue => 1,
            ResidueClass::Quadratic => 2,
            ResidueClass::Quartic => 4,
            ResidueClass::Octic => 8,
        }
    }

    pub fn from_value(v: u8) -> Option<Self> {
        Some(match v {
            0 => ResidueClass::Zero,
            1 => ResidueClass::NonResidue,
            2 => ResidueClass::Quadratic,
            4 => ResidueClass::Quartic,
            8 => ResidueClass::Octic,
            _ => return None,
        })
    }

    /// `(c/p)_k = 1` for `k` in {2, 4, 8}.
    pub fn is_kth_power(self, k: u8) -> bool {
        debug_assert!(matches!(k, 1 | 2 | 4 | 8));
        self != ResidueClass::Zero && self.value() >= k
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Euler-criterion evaluation of `Res(c, p)` for a prime `p = 1 (mod 8)`.
pub fn power_residue_class(c: u64, p: u64) -> Result<ResidueClass> {
    if p % 8 != 1 {
        return Err(Error::BadModulus {
            modulus: p,
            requirement: "p = 1 (mod 8)",
        });
    }
    let c = c % p;
    Ok(if c == 0 {
        ResidueClass::Zero
    } else if pow_mod(c, (p - 1) / 8, p) == 1 {
        ResidueClass::Octic
    } else if pow_mod(c, (p - 1) / 4, p) == 1 {
        ResidueClass::Quartic
    } else if pow_mod(c, (p - 1) / 2, p) == 1 {
        ResidueClass::Quadratic
    } else {
        ResidueClass::NonResidue
    })
}
