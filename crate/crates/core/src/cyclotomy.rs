//! Ding-Helleseth generalized cyclotomic classes over `Z_pq`, classical
//! cyclotomic numbers, and Gauss's order-8 cyclotomic-number formulas.

use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{
    common_primitive_root, crt_lift, gcd, is_primitive_root, is_probable_prime,
    power_residue_class, IndexTable, ResidueClass,
};

/// The tuple `(p, q, g, f, d, e)` plus the index tables modulo each prime.
///
/// Immutable once built. `g` is stored reduced modulo `pq`.
#[derive(Debug, Clone)]
pub struct CyclotomyContext {
    p: u64,
    q: u64,
    g: u64,
    f: u64,
    d: u64,
    e: u64,
    ind_q_p: u64,
    ind_p_q: u64,
    table_p: IndexTable,
    table_q: IndexTable,
}

fn require_prime(n: u64) -> Result<()> {
    if !is_probable_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if n == 2 {
        return Err(Error::NotOddPrime(n));
    }
    Ok(())
}

impl CyclotomyContext {
    /// Builds the context, using the smallest common primitive root unless
    /// `g_override` is given.
    pub fn new(p: u64, q: u64, g_override: Option<u64>) -> Result<Self> {
        require_prime(p)?;
        require_prime(q)?;
        if p == q {
            return Err(Error::DistinctnessViolated(p));
        }
        let n = p * q;
        let g = match g_override {
            Some(g) => {
                if !(is_primitive_root(g, p) && is_primitive_root(g, q)) {
                    return Err(Error::NotCommonPrimitiveRoot { g, p, q });
                }
                g % n
            }
            None => common_primitive_root(p, q)?,
        };
        let f = crt_lift(g % p, p, 1, q)?;
        let d = gcd(p - 1, q - 1);
        let e = (p - 1) / d * (q - 1);
        let table_p = IndexTable::new(g, p)?;
        let table_q = IndexTable::new(g, q)?;
        let ind_q_p = table_q.index(p).expect("p is a unit mod q");
        let ind_p_q = table_p.index(q).expect("q is a unit mod p");
        Ok(Self {
            p,
            q,
            g,
            f,
            d,
            e,
            ind_q_p,
            ind_p_q,
            table_p,
            table_q,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Period `pq` of the sequence.
    pub fn n(&self) -> u64 {
        self.p * self.q
    }
    pub fn g(&self) -> u64 {
        self.g
    }
    pub fn f(&self) -> u64 {
        self.f
    }
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn e(&self) -> u64 {
        self.e
    }
    /// `ind_g^{(q)} p`.
    pub fn ind_q_p(&self) -> u64 {
        self.ind_q_p
    }
    /// `ind_g^{(p)} q`.
    pub fn ind_p_q(&self) -> u64 {
        self.ind_p_q
    }
    pub fn table_p(&self) -> &IndexTable {
        &self.table_p
    }
    pub fn table_q(&self) -> &IndexTable {
        &self.table_q
    }

    /// Class of `k mod pq` under the `(p-index, q-index)` labelling.
    pub fn class_of(&self, k: u64) -> ClassLabel {
        let (p, q, d) = (self.p, self.q, self.d);
        let k = k % (p * q);
        let (kp, kq) = (k % p, k % q);
        let reduce = |ind: Option<u64>| (ind.expect("unit residue") % d) as usize;
        match (kp == 0, kq == 0) {
            (true, true) => ClassLabel::Zero,
            (false, true) => ClassLabel::Q(reduce(self.table_p.index(k / q))),
            (true, false) => ClassLabel::P(reduce(self.table_q.index(k / p))),
            (false, false) => ClassLabel::D(
                reduce(self.table_p.index(kp)),
                reduce(self.table_q.index(kq)),
            ),
        }
    }

    /// Expected class sizes `(|D(i,j)|, |P(j)|, |Q(i)|)`.
    pub fn class_sizes(&self) -> (u64, u64, u64) {
        (
            self.e / self.d,
            (self.q - 1) / self.d,
            (self.p - 1) / self.d,
        )
    }
}

/// Label of a residue modulo `pq`. `D(i, j)` carries the index of
/// `k mod p` and of `k mod q`, each reduced modulo `d`; `P(j)` holds the
/// multiples of `p` and `Q(i)` the multiples of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    Zero,
    D(usize, usize),
    P(usize),
    Q(usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Zero => write!(f, "0"),
            ClassLabel::D(i, j) => write!(f, "D({i},{j})"),
            ClassLabel::P(j) => write!(f, "P({j})"),
            ClassLabel::Q(i) => write!(f, "Q({i})"),
        }
    }
}

fn check_order_params(p: u64, g: u64, d: u64) -> Result<IndexTable> {
    require_prime(p)?;
    if d == 0 || (p - 1) % d != 0 {
        return Err(Error::BadModulus {
            modulus: p,
            requirement: "d | p - 1",
        });
    }
    IndexTable::new(g, p)
}

/// `(i, j)_d = |(D_i^{(p)} + 1) ∩ D_j^{(p)}|` counted over every
/// `u` in `[0, (p-1)/d)`.
pub fn classical_cyclotomic_number(p: u64, g: u64, d: u64, i: u64, j: u64) -> Result<u64> {
    let table = check_order_params(p, g, d)?;
    let (i, j) = (i % d, j % d);
    let count = (0..(p - 1) / d)
        .filter(|&u| {
            let shifted = (table.power(i + d * u) + 1) % p;
            table.index(shifted).is_some_and(|v| v % d == j)
        })
        .count();
    Ok(count as u64)
}

/// All `d^2` cyclotomic numbers of order `d` in one pass over `Z_p^*`.
/// Entry `[i][j]` is `(i, j)_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicMatrix {
    d: usize,
    counts: Vec<u64>,
}

impl CyclotomicMatrix {
    pub fn new(p: u64, g: u64, d: u64) -> Result<Self> {
        let table = check_order_params(p, g, d)?;
        let du = d as usize;
        let mut counts = vec![0u64; du * du];
        for x in 1..p - 1 {
            let i = table.index(x).expect("unit") % d;
            let j = table.index(x + 1).expect("unit") % d;
            counts[i as usize * du + j as usize] += 1;
        }
        Ok(Self { d: du, counts })
    }

    pub fn order(&self) -> usize {
        self.d
    }

    /// `(i, j)_d` for arbitrary integer indices.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        let d = self.d as i64;
        self.counts[(i.rem_euclid(d) * d + j.rem_euclid(d)) as usize]
    }
}

/// `p = x^2 + 4y^2 = a^2 + 2b^2` with `x = a = 1 (mod 4)` and `y, b >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForms {
    pub x: i64,
    pub y: u64,
    pub a: i64,
    pub b: u64,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Finds `(x, y)` with `p = x^2 + coeff * y^2`, `x` odd, `x = 1 (mod 4)`.
fn represent(p: u64, coeff: u64) -> Option<(i64, u64)> {
    (0..).take_while(|&y| coeff * y * y <= p).find_map(|y| {
        let rest = p - coeff * y * y;
        let x = isqrt(rest);
        if x * x != rest || x % 2 == 0 {
            return None;
        }
        let x = x as i64;
        Some((if x % 4 == 1 { x } else { -x }, y))
    })
}

/// Exhaustive-scan representations of a prime `p = 1 (mod 8)`.
pub fn quadratic_form_representations(p: u64) -> Result<QuadraticForms> {
    require_prime(p)?;
    if p % 8 != 1 {
        return Err(Error::BadModulus {
            modulus: p,
            requirement: "p = 1 (mod 8)",
        });
    }
    let (x, y) = represent(p, 4).expect("p = 1 (mod 4) is a sum of two squares");
    let (a, b) = represent(p, 2).expect("p = 1 (mod 8) is of the form a^2 + 2b^2");
    Ok(QuadraticForms { x, y, a, b })
}

/// Numerators `64 (4, j)_8` for `j = 0..=3`, read from Gauss's order-8
/// formulas for the given signed `y`.
///
/// The column is chosen by `p mod 16` and whether 2 is a quartic residue.
pub fn order8_numerators(p: u64, x: i64, y: i64, a: i64, two_is_quartic: bool) -> [i64; 4] {
    let p = p as i64;
    match (two_is_quartic, p % 16) {
        (true, 1) => [
            p - 7 - 2 * x + 8 * a,
            p + 1 + 2 * x - 4 * a,
            p + 1 - 2 * x,
            p + 1 + 2 * x - 4 * a,
        ],
        (true, _) => [
            p - 15 - 2 * x,
            p - 7 + 2 * x + 4 * a,
            p - 7 - 2 * x - 8 * a,
            p - 7 + 2 * x + 4 * a,
        ],
        (false, 1) => [
            p - 7 - 10 * x,
            p + 1 + 2 * x - 4 * a + 16 * y,
            p + 1 + 6 * x + 8 * a,
            p + 1 + 2 * x - 4 * a - 16 * y,
        ],
        (false, _) => [
            p - 15 - 10 * x - 8 * a,
            p - 7 + 2 * x + 4 * a + 16 * y,
            p - 7 + 6 * x,
            p - 7 + 2 * x + 4 * a - 16 * y,
        ],
    }
}

/// `(4, j)_8` for `j = 0..=3` from the closed formulas, together with the
/// sign of `y` that matches the primitive root `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussNumbers {
    pub values: [u64; 4],
    pub signed_y: i64,
}

/// Evaluates the order-8 formulas for `(p, g)`.
///
/// The sign of `y` depends on `g`; it is resolved by matching the `(4,1)_8`
/// formula against a direct count. When the formulas do not involve `y`
/// the positive sign is reported.
pub fn gauss_numbers_order8(p: u64, g: u64) -> Result<GaussNumbers> {
    let forms = quadratic_form_representations(p)?;
    let two_is_quartic = power_residue_class(2, p)?.is_kth_power(4);
    let brute_41 = classical_cyclotomic_number(p, g, 8, 4, 1)?;
    let y = forms.y as i64;

    let evaluate = |signed_y: i64| {
        order8_numerators(p, forms.x, signed_y, forms.a, two_is_quartic).map(|n| {
            debug_assert!(n >= 0 && n % 64 == 0, "64 must divide {n}");
            (n / 64) as u64
        })
    };
    let plus = evaluate(y);
    if plus[1] == brute_41 {
        return Ok(GaussNumbers {
            values: plus,
            signed_y: y,
        });
    }
    let minus = evaluate(-y);
    if minus[1] == brute_41 {
        return Ok(GaussNumbers {
            values: minus,
            signed_y: -y,
        });
    }
    Ok(GaussNumbers {
        values: plus,
        signed_y: y,
    })
}

/// Res(2, p) for `p = 1 (mod 8)`; convenience for the order-8 modules.
pub fn res2(p: u64) -> Result<ResidueClass> {
    power_residue_class(2, p)
}
