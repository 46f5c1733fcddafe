use std::fmt;
use std::str::FromStr;

use cyclo_core::closed_form::lc_closed_form;
use cyclo_core::gf2poly::berlekamp_massey_periodic;
use cyclo_core::residue::{gcd, is_primitive_root};
use cyclo_core::smatrix::{lc_smatrix, lc_smatrix_split, period_field, smatrix_field_degree};
use cyclo_core::{generate, linear_complexity_gcd, BitSequence, CyclotomyContext, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Gcd,
    Bm,
    Smatrix,
    Split,
    Closed,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Gcd,
        Method::Bm,
        Method::Smatrix,
        Method::Split,
        Method::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Gcd => "gcd",
            Method::Bm => "bm",
            Method::Smatrix => "smatrix",
            Method::Split => "split",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                format!("unknown method '{s}' (expected gcd, bm, smatrix, split or closed)")
            })
    }
}

pub enum Outcome {
    Value(u64),
    Skipped(String),
}

/// Computes `L` for one context. The sequence is generated on demand and
/// cached across methods.
pub struct Evaluator<'a> {
    ctx: &'a CyclotomyContext,
    seq: Option<BitSequence>,
    smatrix_max_degree: u32,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a CyclotomyContext, smatrix_max_degree: u32) -> Self {
        Self {
            ctx,
            seq: None,
            smatrix_max_degree,
        }
    }

    fn sequence(&mut self) -> &BitSequence {
        self.seq.get_or_insert_with(|| generate(self.ctx))
    }

    pub fn run(&mut self, method: Method) -> Result<Outcome, Error> {
        let (p, q) = (self.ctx.p(), self.ctx.q());
        let value = match method {
            Method::Gcd => linear_complexity_gcd(self.sequence()) as u64,
            Method::Bm => berlekamp_massey_periodic(self.sequence()).complexity as u64,
            Method::Closed => lc_closed_form(p, q)?,
            Method::Smatrix => {
                let m = smatrix_field_degree(p, q)?;
                if m > self.smatrix_max_degree {
                    return Ok(Outcome::Skipped(format!(
                        "field degree {m} > {}",
                        self.smatrix_max_degree
                    )));
                }
                lc_smatrix(self.ctx)?
            }
            Method::Split => match (period_field(p), period_field(q)) {
                (Ok(_), Ok(_)) => lc_smatrix_split(self.ctx)?,
                _ => return Ok(Outcome::Skipped("period field degree > 128".into())),
            },
        };
        Ok(Outcome::Value(value))
    }
}

/// A common primitive root of `p` and `q` found by scanning forward
/// (cyclically) from a uniform random start in `[0, pq)`. The generator
/// is seeded from `seed` and the ordered pair so results do not depend on
/// scheduling.
pub fn random_common_root(p: u64, q: u64, seed: u64) -> u64 {
    let n = p * q;
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (p << 32 | q).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = rng.gen_range(0..n);
    (0..n)
        .map(|k| (start + k) % n)
        .find(|&g| gcd(g, n) == 1 && is_primitive_root(g % p, p) && is_primitive_root(g % q, q))
        .expect("p and q have a common primitive root")
}
