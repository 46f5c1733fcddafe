//! Closed-form linear complexity for order 8, keyed on the power-residue
//! classes `Res(2, p)`, `Res(2, q)` and `Res(p, q)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{gcd, is_probable_prime, power_residue_class, ResidueClass};

/// The three residue classes of a pair and the matching branch of the
/// twelve-way case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairClassification {
    pub res_2p: ResidueClass,
    pub res_2q: ResidueClass,
    pub res_pq: ResidueClass,
    pub case_id: u8,
}

impl fmt::Display for PairClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}) case {}",
            self.res_2p, self.res_2q, self.res_pq, self.case_id
        )
    }
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    for r in [p, q] {
        if !is_probable_prime(r) {
            return Err(Error::NotPrime(r));
        }
    }
    if p == q {
        return Err(Error::DistinctnessViolated(p));
    }
    let d = gcd(p - 1, q - 1);
    if d != 8 {
        return Err(Error::WrongOrder {
            expected: 8,
            found: d,
        });
    }
    Ok(())
}

/// Branch predicates of the twelve-way split, in order. Each takes the
/// numeric classes `(Res(2,p), Res(2,q), Res(p,q))`.
const CASES: [fn(u8, u8, u8) -> bool; 12] = [
    |rp, rq, _| rp == 2 && rq != 8,
    |rp, rq, _| rp == 4 && rq == 4,
    |rp, rq, rpq| rp == 4 && rq == 2 && rpq >= 4,
    |rp, rq, rpq| rp == 8 && rq == 2 && rpq == 2,
    |rp, rq, _| rp == 2 && rq == 8,
    |rp, rq, _| rp == 4 && rq == 8,
    |rp, rq, rpq| rp == 4 && rq == 2 && rpq == 2,
    |rp, rq, _| rp == 8 && rq == 4,
    |rp, rq, rpq| rp == 8 && rq == 2 && rpq >= 4,
    |rp, rq, _| rp == 8 && rq == 8,
    |rp, rq, rpq| rp == 4 && rq == 2 && rpq == 1,
    |rp, rq, rpq| rp == 8 && rq == 2 && rpq == 1,
];

pub fn classify(p: u64, q: u64) -> Result<PairClassification> {
    check_pair(p, q)?;
    let res_2p = power_residue_class(2, p)?;
    let res_2q = power_residue_class(2, q)?;
    let res_pq = power_residue_class(p % q, q)?;
    let (rp, rq, rpq) = (res_2p.value(), res_2q.value(), res_pq.value());
    let matches: Vec<usize> = (0..CASES.len())
        .filter(|&k| CASES[k](rp, rq, rpq))
        .collect();
    assert_eq!(
        matches.len(),
        1,
        "case split for ({p}, {q}) with classes ({rp}, {rq}, {rpq}) matched {matches:?}"
    );
    Ok(PairClassification {
        res_2p,
        res_2q,
        res_pq,
        case_id: matches[0] as u8 + 1,
    })
}

/// Coefficients of `pq - 1 - eps (p-1) - kappa (q-1) - eta (p-1)(q-1)`,
/// each stored in quarters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deficit {
    pub eps_quarters: u64,
    pub kappa_quarters: u64,
    pub eta_quarters: u64,
}

impl Deficit {
    pub fn apply(&self, p: u64, q: u64) -> u64 {
        let sub = self.eps_quarters * (p - 1)
            + self.kappa_quarters * (q - 1)
            + self.eta_quarters * (p - 1) * (q - 1);
        debug_assert_eq!(sub % 4, 0);
        p * q - 1 - sub / 4
    }
}

impl fmt::Display for Deficit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |k: u64| match k {
            0 => "0",
            1 => "1/4",
            2 => "1/2",
            _ => "?",
        };
        write!(
            f,
            "eps={} kappa={} eta={}",
            show(self.eps_quarters),
            show(self.kappa_quarters),
            show(self.eta_quarters)
        )
    }
}

/// The `eps / kappa / eta` coefficient table.
pub fn deficit(c: &PairClassification) -> Deficit {
    use ResidueClass::*;
    let octic_p = c.res_2p == Octic;
    let quartic_p = matches!(c.res_2p, Quartic | Octic);
    let quartic_q = matches!(c.res_2q, Quartic | Octic);
    let pq_quartic = matches!(c.res_pq, Quartic | Octic);
    let pq_square = c.res_pq != NonResidue;

    let half = (octic_p && quartic_q)
        || (octic_p && !quartic_q && pq_quartic)
        || (quartic_p && !octic_p && !quartic_q && pq_square && !pq_quartic);
    let quarter = quartic_p && !quartic_q && !pq_square;
    let eta = if half {
        2
    } else if quarter {
        1
    } else {
        0
    };
    Deficit {
        eps_quarters: if octic_p { 2 } else { 0 },
        kappa_quarters: if c.res_2q == Octic { 2 } else { 0 },
        eta_quarters: eta,
    }
}

/// `L(p, q)` from the coefficient table.
pub fn lc_theorem1(p: u64, q: u64) -> Result<u64> {
    let c = classify(p, q)?;
    Ok(deficit(&c).apply(p, q))
}

/// `L(p, q)` from the twelve-way case split.
pub fn lc_twelve_cases(p: u64, q: u64) -> Result<u64> {
    let c = classify(p, q)?;
    let base = p * q - 1;
    let half_p = (p - 1) / 2;
    let half_q = (q - 1) / 2;
    let half_pq = (p - 1) * (q - 1) / 2;
    let quarter_pq = (p - 1) * (q - 1) / 4;
    Ok(match c.case_id {
        1..=3 => base,
        4 => base - half_p,
        5 | 6 => base - half_q,
        7 => base - half_pq,
        8 | 9 => base - half_pq - half_p,
        10 => base - half_pq - half_p - half_q,
        11 => base - quarter_pq,
        12 => base - quarter_pq - half_p,
        _ => unreachable!(),
    })
}

/// The closed-form expression for each branch of the twelve-way split.
pub fn case_formula(case_id: u8) -> &'static str {
    match case_id {
        1..=3 => "pq-1",
        4 => "pq-1-(p-1)/2",
        5 | 6 => "pq-1-(q-1)/2",
        7 => "pq-1-(p-1)(q-1)/2",
        8 | 9 => "pq-1-(p-1)(q-1)/2-(p-1)/2",
        10 => "pq-1-(p-1)(q-1)/2-(p-1)/2-(q-1)/2",
        11 => "pq-1-(p-1)(q-1)/4",
        12 => "pq-1-(p-1)(q-1)/4-(p-1)/2",
        _ => "?",
    }
}

/// Both closed forms, asserted equal.
pub fn lc_closed_form(p: u64, q: u64) -> Result<u64> {
    let a = lc_theorem1(p, q)?;
    let b = lc_twelve_cases(p, q)?;
    assert_eq!(a, b, "closed forms disagree for ({p}, {q})");
    Ok(a)
}

/// `L(p, q) >= (pq - 1) / 2`.
pub fn yan_bound_check(p: u64, q: u64) -> Result<bool> {
    Ok(lc_closed_form(p, q)? >= (p * q - 1) / 2)
}

/// Expected zero counts `(block, column, row)` of the order-8 matrix.
/// The block count is out of 64; column and row counts out of 8.
pub fn predicted_zero_counts(c: &PairClassification) -> (u64, u64, u64) {
    use ResidueClass::*;
    let quartic_q = matches!(c.res_2q, Quartic | Octic);
    let pq_quartic = matches!(c.res_pq, Quartic | Octic);
    let block = match c.res_2p {
        Quadratic => 0,
        rp if quartic_q || pq_quartic => {
            if rp == Octic {
                32
            } else {
                0
            }
        }
        rp if c.res_pq == Quadratic => {
            if rp == Octic {
                0
            } else {
                32
            }
        }
        _ => 16,
    };
    let column = if c.res_2p == Octic { 4 } else { 0 };
    let row = if c.res_2q == Octic { 4 } else { 0 };
    (block, column, row)
}

/// `L` from the predicted zero counts and the class sizes.
pub fn lc_from_zero_counts(p: u64, q: u64) -> Result<u64> {
    let c = classify(p, q)?;
    let (block, column, row) = predicted_zero_counts(&c);
    Ok(p * q - 1 - (p - 1) * (q - 1) / 64 * block - (p - 1) / 8 * column - (q - 1) / 8 * row)
}

/// Both primes of a valid order-8 pair lie in `[17, max]`; pairs are
/// returned with `p < q` in lexicographic order.
pub fn order8_pairs(max: u64) -> Vec<(u64, u64)> {
    let primes: Vec<u64> = (17..=max)
        .filter(|&n| n % 8 == 1 && is_probable_prime(n))
        .collect();
    let mut out = Vec::new();
    for (k, &p) in primes.iter().enumerate() {
        for &q in &primes[k + 1..] {
            if gcd(p - 1, q - 1) == 8 {
                out.push((p, q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ResidueClass::*;

    #[test]
    fn classify_examples() {
        let c = classify(17, 41).unwrap();
        assert_eq!(
            (c.res_2p, c.res_2q, c.res_pq, c.case_id),
            (Quadratic, Quadratic, NonResidue, 1)
        );
        let c = classify(17, 73).unwrap();
        assert_eq!(
            (c.res_2p, c.res_2q, c.res_pq, c.case_id),
            (Quadratic, Octic, NonResidue, 5)
        );
        let c = classify(73, 233).unwrap();
        assert_eq!((c.res_2p, c.res_2q, c.case_id), (Octic, Octic, 10));
        assert_eq!(
            classify(17, 19),
            Err(Error::WrongOrder {
                expected: 8,
                found: 2
            })
        );
        assert_eq!(
            classify(17, 17).unwrap_err(),
            Error::DistinctnessViolated(17)
        );
        assert_eq!(classify(17, 45).unwrap_err(), Error::NotPrime(45));
    }

    #[test]
    fn closed_form_examples() {
        for (p, q, l) in [
            (17, 41, 696),
            (41, 17, 696),
            (73, 113, 4180),
            (113, 73, 8212),
            (41, 89, 3604),
            (89, 41, 2724),
            (449, 457, 205192),
            (457, 449, 205192),
            (17, 73, 1204),
            (73, 233, 8504),
            (233, 73, 8504),
        ] {
            assert_eq!(lc_closed_form(p, q).unwrap(), l, "({p},{q})");
        }
    }

    #[test]
    fn three_routes_agree_to_2000() {
        let pairs = order8_pairs(2000);
        assert!(pairs.len() > 1000);
        let mut cases = [0usize; 12];
        for (p, q) in pairs {
            for (a, b) in [(p, q), (q, p)] {
                let l = lc_closed_form(a, b).unwrap();
                assert_eq!(l, lc_from_zero_counts(a, b).unwrap(), "({a},{b})");
                assert!(2 * l >= a * b - 1);
                cases[classify(a, b).unwrap().case_id as usize - 1] += 1;
            }
        }
        assert!(cases.iter().all(|&n| n > 0), "{cases:?}");
    }

    #[test]
    fn yan_bound_tight_case() {
        // eps = kappa = eta = 1/2 is exactly (pq - 1) / 2
        let full = Deficit {
            eps_quarters: 2,
            kappa_quarters: 2,
            eta_quarters: 2,
        };
        assert_eq!(full.apply(73, 233), (73 * 233 - 1) / 2);
        assert!(yan_bound_check(17, 41).unwrap());
        assert!(yan_bound_check(73, 113).unwrap());
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(order8_pairs(500).len(), 99);
        assert_eq!(order8_pairs(500)[0], (17, 41));
        assert!(order8_pairs(40).is_empty());
    }
}
