//! Linear complexity of the order-8 sequence through the matrix of
//! Gauss-period sums `S(alpha^k)` over the classes `D_{i,j}`, `Q_i`, `P_j`.
//!
//! `S_d(x) = sum of x^u over D_0^(p)` and `T_d` likewise over `D_0^(q)`;
//! with `beta = alpha^q` and `gamma = alpha^p` the matrix entries are
//!
//! ```text
//! s_{i,j} = sum_{t=d/2}^{d-1} T(gamma^{g^{j+t-ind_q p}}) + T(gamma^{g^{j+t}}) + S(beta^{g^{i+t}})
//! s_{i,d} = sum_{t=d/2}^{d-1} S(beta^{g^{i+t}})
//! s_{d,j} = sum_{t=d/2}^{d-1} T(gamma^{g^{j+t}}) + (p-1)/2
//! s_{d,d} = (p-1)/2 + (q-1)/2
//! ```

use std::fmt;
use std::sync::OnceLock;

use crate::cyclotomy::{quadratic_form_representations, res2, CyclotomicMatrix, CyclotomyContext};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::residue::{crt_lift, mult_order, IndexTable, ResidueClass};
use crate::sequence::generate;

const ORDER: u64 = 8;

fn check_root_of_unity(x: FieldElement<'_>, n: u64) -> Result<()> {
    // n is prime here, so order n means x != 1 and x^n = 1
    if x.value() == 1 || x.pow(n as u128).value() != 1 {
        return Err(Error::WrongElementOrder(n));
    }
    Ok(())
}

fn check_order(ctx: &CyclotomyContext) -> Result<()> {
    if ctx.d() != ORDER {
        return Err(Error::WrongOrder {
            expected: ORDER,
            found: ctx.d(),
        });
    }
    Ok(())
}

/// `S_d(x^{g^i})` for every `0 <= i < d`, where `table` fixes `p` and `g`.
pub fn period_vector<'f>(
    table: &IndexTable,
    d: u64,
    x: FieldElement<'f>,
) -> Result<CaseVector<'f>> {
    let p = table.modulus();
    if d == 0 || (p - 1) % d != 0 {
        return Err(Error::BadModulus {
            modulus: p,
            requirement: "d | p - 1",
        });
    }
    check_root_of_unity(x, p)?;
    let field = x.field();
    let mut powers = Vec::with_capacity(p as usize);
    let mut cur = 1u128;
    for _ in 0..p {
        powers.push(cur);
        cur = field.mul_raw(cur, x.value());
    }
    let values = (0..d)
        .map(|i| {
            let sum = (0..(p - 1) / d).fold(0u128, |acc, t| {
                acc ^ powers[table.power(i + d * t) as usize]
            });
            field.element(sum).expect("in range")
        })
        .collect();
    Ok(CaseVector { values })
}

/// `S_d(beta^{g^i})` for the `p` side of `ctx`.
pub fn eval_sd<'f>(
    ctx: &CyclotomyContext,
    beta: FieldElement<'f>,
    i: u64,
) -> Result<FieldElement<'f>> {
    Ok(period_vector(ctx.table_p(), ctx.d(), beta)?.get(i as i64))
}

/// `T_d(gamma^{g^j})` for the `q` side of `ctx`.
pub fn eval_td<'f>(
    ctx: &CyclotomyContext,
    gamma: FieldElement<'f>,
    j: u64,
) -> Result<FieldElement<'f>> {
    Ok(period_vector(ctx.table_q(), ctx.d(), gamma)?.get(j as i64))
}

/// `A_d(x) = sum_{t=d/2}^{d-1} sigma_t(S_d(x))` for even `d`.
pub fn vector_ad<'f>(table: &IndexTable, d: u64, x: FieldElement<'f>) -> Result<CaseVector<'f>> {
    let s = period_vector(table, d, x)?;
    Ok(half_window_sum(&s))
}

fn half_window_sum<'f>(s: &CaseVector<'f>) -> CaseVector<'f> {
    let d = s.len();
    let values = (0..d)
        .map(|i| {
            (d / 2..d).fold(s.values[0].field().zero(), |acc, t| {
                acc + s.values[(i + t) % d]
            })
        })
        .collect();
    CaseVector { values }
}

/// `(s_{i,8})_i`.
pub fn vector_a8<'f>(ctx: &CyclotomyContext, beta: FieldElement<'f>) -> Result<CaseVector<'f>> {
    check_order(ctx)?;
    vector_ad(ctx.table_p(), ORDER, beta)
}

/// `B_8(gamma)`, which equals `(s_{8,j})_j` because `(p-1)/2` is even.
pub fn vector_b8<'f>(ctx: &CyclotomyContext, gamma: FieldElement<'f>) -> Result<CaseVector<'f>> {
    check_order(ctx)?;
    vector_ad(ctx.table_q(), ORDER, gamma)
}

/// A length-`d` vector of field elements indexed cyclically.
#[derive(Clone, PartialEq, Eq)]
pub struct CaseVector<'f> {
    values: Vec<FieldElement<'f>>,
}

impl<'f> CaseVector<'f> {
    pub fn new(values: Vec<FieldElement<'f>>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[FieldElement<'f>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: i64) -> FieldElement<'f> {
        self.values[i.rem_euclid(self.len() as i64) as usize]
    }

    /// `sigma_u(a)_k = a_{k+u}`.
    pub fn rotate(&self, u: i64) -> Self {
        Self {
            values: (0..self.len() as i64).map(|k| self.get(k + u)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn zeros(&self) -> usize {
        self.values.iter().filter(|v| v.is_zero()).count()
    }
}

impl fmt::Debug for CaseVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

/// The `(d+1) x (d+1)` matrix, row-major.
#[derive(Clone)]
pub struct SMatrix<'f> {
    p: u64,
    q: u64,
    d: u64,
    ind_q_p: u64,
    entries: Vec<FieldElement<'f>>,
}

impl<'f> SMatrix<'f> {
    pub fn order(&self) -> usize {
        self.d as usize + 1
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement<'f> {
        self.entries[i * self.order() + j]
    }

    pub fn entries(&self) -> &[FieldElement<'f>] {
        &self.entries
    }

    /// Zeros among `s_{i,j}` with `i, j < d`.
    pub fn block_zeros(&self) -> usize {
        let d = self.d as usize;
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j).is_zero())
            .count()
    }

    /// Zeros among `s_{i,d}`.
    pub fn column_zeros(&self) -> usize {
        let d = self.d as usize;
        (0..d).filter(|&i| self.get(i, d).is_zero()).count()
    }

    /// Zeros among `s_{d,j}`.
    pub fn row_zeros(&self) -> usize {
        let d = self.d as usize;
        (0..d).filter(|&j| self.get(d, j).is_zero()).count()
    }

    pub fn corner_is_zero(&self) -> bool {
        let d = self.d as usize;
        self.get(d, d).is_zero()
    }

    /// `pq` minus the sizes of the classes whose entry vanishes.
    pub fn linear_complexity(&self) -> u64 {
        let (p, q, d) = (self.p, self.q, self.d);
        let e = (p - 1) * (q - 1) / d;
        p * q
            - (e / d) * self.block_zeros() as u64
            - ((p - 1) / d) * self.column_zeros() as u64
            - ((q - 1) / d) * self.row_zeros() as u64
            - u64::from(self.corner_is_zero())
    }

    /// `s_{i,j} = s_{i,d} + s_{d,j} + s_{d,j'}` with `j' = j - ind_q p`.
    pub fn satisfies_relation(&self) -> bool {
        let d = self.d as usize;
        let shift = self.ind_q_p as usize % d;
        (0..d).all(|i| {
            (0..d).all(|j| {
                let jp = (j + d - shift) % d;
                self.get(i, j) == self.get(i, d) + self.get(d, j) + self.get(d, jp)
            })
        })
    }
}

impl fmt::Display for SMatrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| format!("{:>width$}", cells[i * n + j]))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SMatrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SMatrix({}, {})\n{}", self.p, self.q, self)
    }
}

/// Builds the matrix from the Gauss periods of `beta = alpha^q` and
/// `gamma = alpha^p`.
pub fn build_smatrix<'f>(ctx: &CyclotomyContext, alpha: FieldElement<'f>) -> Result<SMatrix<'f>> {
    check_order(ctx)?;
    let (p, q) = (ctx.p(), ctx.q());
    let alpha_ok = alpha.pow((p * q) as u128).value() == 1
        && alpha.pow(p as u128).value() != 1
        && alpha.pow(q as u128).value() != 1;
    if !alpha_ok {
        return Err(Error::WrongElementOrder(p * q));
    }
    let s = period_vector(ctx.table_p(), ORDER, alpha.pow(q as u128))?;
    let t = period_vector(ctx.table_q(), ORDER, alpha.pow(p as u128))?;
    Ok(assemble(ctx, alpha.field(), &s, &t))
}

fn assemble<'f>(
    ctx: &CyclotomyContext,
    field: &'f FieldSpec,
    s: &CaseVector<'f>,
    t: &CaseVector<'f>,
) -> SMatrix<'f> {
    let (p, q) = (ctx.p(), ctx.q());
    let bit = |b: u64| {
        if b % 2 == 1 {
            field.one()
        } else {
            field.zero()
        }
    };
    let d = ORDER as i64;
    let ind = ctx.ind_q_p() as i64;
    let half = d / 2..d;
    let n = ORDER as usize + 1;
    let mut entries = vec![field.zero(); n * n];
    for i in 0..d {
        for j in 0..d {
            let v = half.clone().fold(field.zero(), |acc, tt| {
                acc + t.get(j + tt - ind) + t.get(j + tt) + s.get(i + tt)
            });
            entries[i as usize * n + j as usize] = v;
        }
        entries[i as usize * n + n - 1] = half
            .clone()
            .fold(field.zero(), |acc, tt| acc + s.get(i + tt));
    }
    for j in 0..d {
        let v = half
            .clone()
            .fold(bit((p - 1) / 2), |acc, tt| acc + t.get(j + tt));
        entries[(n - 1) * n + j as usize] = v;
    }
    entries[n * n - 1] = bit((p - 1) / 2 + (q - 1) / 2);
    SMatrix {
        p,
        q,
        d: ORDER,
        ind_q_p: ctx.ind_q_p(),
        entries,
    }
}

/// GF(16) as GF(2)[z] / (z^4 + z + 1).
pub fn gf16() -> &'static FieldSpec {
    static GF16: OnceLock<FieldSpec> = OnceLock::new();
    GF16.get_or_init(|| FieldSpec::new(4).expect("degree 4"))
}

/// Rewrites a vector with entries in the GF(16) subfield of its field in
/// the basis `1, eta, eta^2, eta^3` for the smallest root `eta` of
/// `z^4 + z + 1`, landing in [`gf16`] with `eta` sent to `z`.
fn project_to_gf16(v: &CaseVector<'_>) -> Result<CaseVector<'static>> {
    let field = v.values()[0].field();
    let eta = field.quartic_roots()?[0];
    let image: Vec<u128> = (0u8..16)
        .map(|n| {
            (0..4)
                .filter(|k| n >> k & 1 == 1)
                .fold(0, |acc, k| acc ^ eta.pow(k as u128).value())
        })
        .collect();
    let values = v
        .values()
        .iter()
        .map(|x| {
            let n = image
                .iter()
                .position(|&y| y == x.value())
                .ok_or(Error::NotInSubfield(4))?;
            gf16().element(n as u128)
        })
        .collect::<Result<_>>()?;
    Ok(CaseVector { values })
}

/// The matrix with the `p` side and the `q` side evaluated in separate
/// fields and both projected into GF(16).
///
/// Conjugating one side alone amounts to replacing `alpha` by `alpha^k`
/// with `k = 2 (mod p)` and `k = 1 (mod q)`, which only permutes entries,
/// so zero counts and the resulting linear complexity agree with
/// [`build_smatrix`] whenever both apply.
pub fn build_smatrix_split(ctx: &CyclotomyContext) -> Result<SMatrix<'static>> {
    check_order(ctx)?;
    let field_p = period_field(ctx.p())?;
    let s = period_vector(ctx.table_p(), ORDER, field_p.primitive_nth_root(ctx.p())?)?;
    let field_q = period_field(ctx.q())?;
    let t = period_vector(ctx.table_q(), ORDER, field_q.primitive_nth_root(ctx.q())?)?;
    let (s, t) = (project_to_gf16(&s)?, project_to_gf16(&t)?);
    Ok(assemble(ctx, gf16(), &s, &t))
}

/// Same matrix with every entry evaluated as `S(alpha^k) = sum s_u alpha^{ku}`
/// for a representative `k` of its class.
pub fn build_smatrix_direct<'f>(
    ctx: &CyclotomyContext,
    alpha: FieldElement<'f>,
) -> Result<SMatrix<'f>> {
    check_order(ctx)?;
    let (p, q, n) = (ctx.p(), ctx.q(), ctx.n());
    let field = alpha.field();
    let seq = generate(ctx);
    let ones: Vec<u64> = (0..n).filter(|&u| seq.get(u as usize)).collect();
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = 1u128;
    for _ in 0..n {
        powers.push(cur);
        cur = field.mul_raw(cur, alpha.value());
    }
    if cur != 1 || alpha.pow(p as u128).value() == 1 || alpha.pow(q as u128).value() == 1 {
        return Err(Error::WrongElementOrder(n));
    }
    let eval = |k: u64| {
        let v = ones.iter().fold(0u128, |acc, &u| {
            acc ^ powers[((k as u128 * u as u128) % n as u128) as usize]
        });
        field.element(v).expect("in range")
    };
    let size = ORDER as usize + 1;
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..=ORDER {
        for j in 0..=ORDER {
            let kp = if i < ORDER { ctx.table_p().power(i) } else { 0 };
            let kq = if j < ORDER { ctx.table_q().power(j) } else { 0 };
            entries.push(eval(crt_lift(kp, p, kq, q)?));
        }
    }
    Ok(SMatrix {
        p,
        q,
        d: ORDER,
        ind_q_p: ctx.ind_q_p(),
        entries,
    })
}

/// `mult_order(2, pq)`, the degree of the smallest field holding a
/// primitive `pq`-th root of unity.
pub fn smatrix_field_degree(p: u64, q: u64) -> Result<u32> {
    Ok(mult_order(2, p * q)? as u32)
}

/// Linear complexity via the matrix, building the field and choosing
/// `alpha` deterministically.
pub fn lc_smatrix(ctx: &CyclotomyContext) -> Result<u64> {
    check_order(ctx)?;
    let m = smatrix_field_degree(ctx.p(), ctx.q())?;
    let field = FieldSpec::new(m)?;
    let alpha = field.primitive_nth_root(ctx.n())?;
    Ok(lc_from_smatrix(&build_smatrix(ctx, alpha)?))
}

/// Linear complexity via [`build_smatrix_split`].
pub fn lc_smatrix_split(ctx: &CyclotomyContext) -> Result<u64> {
    Ok(lc_from_smatrix(&build_smatrix_split(ctx)?))
}

pub fn lc_from_smatrix(sm: &SMatrix<'_>) -> u64 {
    sm.linear_complexity()
}

/// Checks both halves of the order-`d` period identities for every
/// `0 <= i < d/2`: the sum `S_d(x^{g^i}) + S_d(x^{g^{i+d/2}}) = S_{d/2}(x^{g^i})`
/// and the product expressed through cyclotomic numbers `(d/2, j-i)_d`.
pub fn verify_lemma_sd(table: &IndexTable, d: u64, beta: FieldElement<'_>) -> Result<bool> {
    let p = table.modulus();
    if d % 2 != 0 || (p - 1) % d != 0 {
        return Err(Error::BadModulus {
            modulus: p,
            requirement: "d even and d | p - 1",
        });
    }
    let field = beta.field();
    let sd = period_vector(table, d, beta)?;
    let sh = period_vector(table, d / 2, beta)?;
    let cyc = CyclotomicMatrix::new(p, table.generator(), d)?;
    // ((p-1)/d) * (1 - (-1)^((p-1)/d)) / 2 is (p-1)/d when odd, else 0
    let constant = ((p - 1) / d) % 2;
    let half = (d / 2) as i64;
    for i in 0..half {
        let a = sd.get(i);
        let b = sd.get(i + half);
        if a + b != sh.get(i) {
            return Ok(false);
        }
        let mut rhs = if constant == 1 {
            field.one()
        } else {
            field.zero()
        };
        for j in 0..half {
            if cyc.get(half, j - i) % 2 == 1 {
                rhs += sh.get(j);
            }
        }
        if a * b != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c_{i+1} - c_i = S_{d/2}(x^{g^i})` for `0 <= i <= d-2`, plus the
/// closed expression for every `c_j`.
pub fn verify_corollary_ad(table: &IndexTable, d: u64, beta: FieldElement<'_>) -> Result<bool> {
    let c = vector_ad(table, d, beta)?;
    let sd = period_vector(table, d, beta)?;
    let sh = period_vector(table, d / 2, beta)?;
    let d = d as i64;
    let field = beta.field();
    let c0 = (d / 2..d).fold(field.zero(), |acc, t| acc + sd.get(t));
    if c.get(0) != c0 {
        return Ok(false);
    }
    let mut running = c0;
    for i in 0..d - 1 {
        if c.get(i + 1) + c.get(i) != sh.get(i) {
            return Ok(false);
        }
        running += sh.get(i);
        if c.get(i + 1) != running {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(via_residue, via_y)`: whether 2 is an octic residue modulo `p`, once
/// from the residue class and once from `p = x^2 + 4y^2`, where the
/// condition reads `y = 0 (mod 8)` for `p = 1 (mod 16)` and
/// `y = 4 (mod 8)` for `p = 9 (mod 16)`.
pub fn octic_criterion(p: u64) -> Result<(bool, bool)> {
    let via_residue = res2(p)? == ResidueClass::Octic;
    let y = quadratic_form_representations(p)?.y;
    let via_y = match p % 16 {
        1 => y % 8 == 0,
        9 => y % 8 == 4,
        _ => unreachable!("p = 1 (mod 8)"),
    };
    Ok((via_residue, via_y))
}

/// Symbolic length-8 vector over GF(16): nibble bit `k` is the
/// coefficient of `eta^k`, with `mu = eta^2 + eta`.
pub type Template = [u8; 8];

const ETA: u8 = 0b0010;
const ETA2: u8 = 0b0100;
const ETA1: u8 = 0b0011;
const ETA21: u8 = 0b0101;
const MU: u8 = 0b0110;
const MU1: u8 = 0b0111;

/// The predicted `A_8` (for `p`) or `B_8` (for `q`) up to rotation and
/// conjugation, selected by `Res(2, prime)` and `prime mod 16`.
pub fn predicted_period_sums(prime: u64) -> Result<Vec<Template>> {
    let class = res2(prime)?;
    let r16 = prime % 16;
    let t = match (class, r16) {
        (ResidueClass::Octic, 1) => vec![[0, 0, 0, 0, 1, 1, 1, 1]],
        (ResidueClass::Octic, 9) => vec![[0, 1, 0, 1, 1, 0, 1, 0]],
        (ResidueClass::Quartic, 1) => vec![[MU, MU, MU, MU, MU1, MU1, MU1, MU1]],
        (ResidueClass::Quartic, 9) => vec![[MU, MU1, MU, MU1, MU1, MU, MU1, MU]],
        (ResidueClass::Quadratic, 1) => vec![
            [ETA, ETA2, ETA21, ETA, ETA1, ETA21, ETA2, ETA1],
            [ETA2, ETA, ETA1, ETA2, ETA21, ETA1, ETA, ETA21],
        ],
        (ResidueClass::Quadratic, 9) => vec![
            [ETA, ETA, ETA2, ETA2, ETA1, ETA1, ETA21, ETA21],
            [ETA2, ETA2, ETA, ETA, ETA21, ETA21, ETA1, ETA1],
        ],
        _ => {
            return Err(Error::BadModulus {
                modulus: prime,
                requirement: "p = 1 (mod 8)",
            })
        }
    };
    Ok(t)
}

/// The predicted `B_8 + sigma_{-ind}(B_8)` for `q` and `ind = ind_q p`.
pub fn predicted_b8_pair_sum(q: u64, ind: u64) -> Result<Template> {
    let quartic = matches!(res2(q)?, ResidueClass::Quartic | ResidueClass::Octic);
    let r16 = q % 16;
    let t = match ind % 8 {
        0 => [0; 8],
        4 => [1; 8],
        2 | 6 if quartic => [1, 1, 0, 0, 1, 1, 0, 0],
        2 | 6 => [MU, MU, MU1, MU1, MU, MU, MU1, MU1],
        r => {
            let near = r == 1 || r == 7;
            let sparse = (near && r16 == 1) || (!near && r16 == 9);
            match (sparse, quartic) {
                (true, true) => [1, 0, 0, 0, 1, 0, 0, 0],
                (true, false) => [MU, 1, MU1, 1, MU, 1, MU1, 1],
                (false, true) => [1, 1, 1, 0, 1, 1, 1, 0],
                (false, false) => [MU, 0, MU1, 0, MU, 0, MU1, 0],
            }
        }
    };
    Ok(t)
}

/// Evaluations of a template in `field`: one per choice of `eta` among the
/// roots of `z^4 + z + 1` when GF(16) is a subfield, one per `mu` when
/// only GF(4) is, and the GF(2) reading otherwise. Templates that need a
/// missing subfield produce no evaluation.
fn evaluations(field: &FieldSpec, template: &Template) -> Result<Vec<Vec<u128>>> {
    let m = field.degree();
    let basis_sets: Vec<[u128; 4]> = if m % 4 == 0 {
        field
            .quartic_roots()?
            .into_iter()
            .map(|eta| [1, eta.value(), eta.pow(2).value(), eta.pow(3).value()])
            .collect()
    } else if m % 2 == 0 {
        let mu = field.subfield_mu()?.value();
        let needs_eta = template.iter().any(|&n| !matches!(n, 0 | 1 | MU | MU1));
        if needs_eta {
            return Ok(Vec::new());
        }
        vec![[1, mu, 0, 0], [1, mu ^ 1, 0, 0]]
    } else {
        if template.iter().any(|&n| n > 1) {
            return Ok(Vec::new());
        }
        vec![[1, 0, 0, 0]]
    };
    Ok(basis_sets
        .iter()
        .map(|basis| {
            template
                .iter()
                .map(|&nib| {
                    if m % 4 != 0 && m % 2 == 0 {
                        // mu basis: nibble 0b0110 -> mu, 0b0111 -> mu + 1
                        match nib {
                            0 => 0,
                            1 => 1,
                            MU => basis[1],
                            _ => basis[1] ^ 1,
                        }
                    } else {
                        (0..4)
                            .filter(|k| nib >> k & 1 == 1)
                            .fold(0, |acc, k| acc ^ basis[k])
                    }
                })
                .collect()
        })
        .collect())
}

/// Whether `v` equals some rotation of some conjugate evaluation of one of
/// the `templates`.
pub fn in_orbit(v: &CaseVector<'_>, templates: &[Template]) -> Result<bool> {
    if v.len() != 8 {
        return Ok(false);
    }
    let field = v.values()[0].field();
    for t in templates {
        for cand in evaluations(field, t)? {
            for h in 0..8 {
                let rotated = v.rotate(h);
                if rotated
                    .values()
                    .iter()
                    .zip(&cand)
                    .all(|(a, b)| a.value() == *b)
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// A field holding both the `prime`-th roots of unity and GF(16):
/// degree `lcm(mult_order(2, prime), 4)`.
pub fn period_field(prime: u64) -> Result<FieldSpec> {
    let o = mult_order(2, prime)? as u32;
    let m = if o % 4 == 0 {
        o
    } else if o % 2 == 0 {
        2 * o
    } else {
        4 * o
    };
    FieldSpec::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::linear_complexity_gcd;

    fn ctx(p: u64, q: u64) -> CyclotomyContext {
        CyclotomyContext::new(p, q, None).unwrap()
    }

    #[test]
    fn period_sums_total_one() {
        for p in [17u64, 41, 73] {
            let field = period_field(p).unwrap();
            let beta = field.primitive_nth_root(p).unwrap();
            let table = IndexTable::new(crate::residue::primitive_root(p).unwrap(), p).unwrap();
            for d in [1u64, 2, 4, 8] {
                let s = period_vector(&table, d, beta).unwrap();
                let total = s.values().iter().fold(field.zero(), |a, b| a + *b);
                assert_eq!(total, field.one(), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn period_sums_lie_in_gf16() {
        let field = FieldSpec::new(8).unwrap();
        let beta = field.primitive_nth_root(17).unwrap();
        let table = IndexTable::new(3, 17).unwrap();
        for v in period_vector(&table, 8, beta).unwrap().values() {
            assert_eq!(v.pow(16), *v);
        }
    }

    #[test]
    fn rejects_wrong_root() {
        let field = FieldSpec::new(8).unwrap();
        let table = IndexTable::new(3, 17).unwrap();
        assert_eq!(
            period_vector(&table, 8, field.one()).unwrap_err(),
            Error::WrongElementOrder(17)
        );
        let c = ctx(3, 5);
        let f = FieldSpec::new(4).unwrap();
        let a = f.primitive_nth_root(15).unwrap();
        assert!(matches!(
            build_smatrix(&c, a),
            Err(Error::WrongOrder {
                expected: 8,
                found: 2
            })
        ));
    }

    #[test]
    fn smatrix_examples() {
        for (p, q, expected_lc) in [(17u64, 41u64, 696u64), (17, 73, 1204), (73, 17, 916)] {
            let c = ctx(p, q);
            let field = FieldSpec::new(smatrix_field_degree(p, q).unwrap()).unwrap();
            let alpha = field.primitive_nth_root(p * q).unwrap();
            let sm = build_smatrix(&c, alpha).unwrap();
            assert!(sm.corner_is_zero());
            assert!(sm.satisfies_relation());
            assert_eq!(lc_from_smatrix(&sm), expected_lc);
            let direct = build_smatrix_direct(&c, alpha).unwrap();
            assert_eq!(sm.entries(), direct.entries(), "({p},{q})");
        }
        let c = ctx(17, 41);
        let field = FieldSpec::new(40).unwrap();
        let sm = build_smatrix(&c, field.primitive_nth_root(697).unwrap()).unwrap();
        assert_eq!(sm.block_zeros(), 0);
    }

    #[test]
    fn alpha_choice_keeps_lc() {
        let c = ctx(17, 41);
        let field = FieldSpec::new(40).unwrap();
        let alpha = field.primitive_nth_root(697).unwrap();
        let base = lc_from_smatrix(&build_smatrix(&c, alpha).unwrap());
        for k in [2u128, 3, 5, 7, 11, 100, 696] {
            let sm = build_smatrix(&c, alpha.pow(k)).unwrap();
            assert_eq!(lc_from_smatrix(&sm), base);
        }
        assert_eq!(base as usize, linear_complexity_gcd(&generate(&c)));
    }

    #[test]
    fn split_route_matches_compositum() {
        for (p, q) in [(17u64, 41u64), (17, 73), (17, 89), (73, 89)] {
            for (a, b) in [(p, q), (q, p)] {
                let c = ctx(a, b);
                let split = build_smatrix_split(&c).unwrap();
                assert!(split.satisfies_relation());
                let field = FieldSpec::new(smatrix_field_degree(a, b).unwrap()).unwrap();
                let full = build_smatrix(&c, field.primitive_nth_root(a * b).unwrap()).unwrap();
                assert_eq!(split.block_zeros(), full.block_zeros(), "({a},{b})");
                assert_eq!(split.column_zeros(), full.column_zeros());
                assert_eq!(split.row_zeros(), full.row_zeros());
                assert_eq!(lc_from_smatrix(&split), lc_smatrix(&c).unwrap());
            }
        }
    }

    #[test]
    fn identities_hold() {
        for p in [17u64, 41, 73, 89, 97, 113] {
            let field = period_field(p).unwrap();
            let beta = field.primitive_nth_root(p).unwrap();
            let table = IndexTable::new(crate::residue::primitive_root(p).unwrap(), p).unwrap();
            for d in [2u64, 4, 8] {
                assert!(verify_lemma_sd(&table, d, beta).unwrap(), "p={p} d={d}");
                assert!(verify_corollary_ad(&table, d, beta).unwrap(), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn octic_examples() {
        assert_eq!(octic_criterion(73).unwrap(), (true, true));
        assert_eq!(octic_criterion(17).unwrap(), (false, false));
        assert_eq!(octic_criterion(113).unwrap(), (false, false));
    }

    #[test]
    fn rotation() {
        let f = FieldSpec::new(4).unwrap();
        let v = CaseVector::new((0..8).map(|k| f.element(k).unwrap()).collect());
        assert_eq!(v.rotate(3).get(0).value(), 3);
        assert_eq!(v.rotate(-1).get(0).value(), 7);
        assert_eq!(v.rotate(8), v);
    }

    #[test]
    fn templates_match_themselves() {
        let f = FieldSpec::new(4).unwrap();
        let eta = f.quartic_roots().unwrap()[1];
        let mu = eta * eta + eta;
        let v = CaseVector::new(
            [ETA, ETA2, ETA21, ETA, ETA1, ETA21, ETA2, ETA1]
                .iter()
                .map(|&n| {
                    (0..4)
                        .filter(|k| n >> k & 1 == 1)
                        .fold(f.zero(), |acc, k| acc + eta.pow(k as u128))
                })
                .collect(),
        )
        .rotate(5);
        assert!(in_orbit(&v, &predicted_period_sums(17).unwrap()).unwrap());
        assert!(!in_orbit(&v, &predicted_period_sums(73).unwrap()).unwrap());
        let w = CaseVector::new(vec![mu, mu, f.one(), f.one(), mu, mu, f.one(), f.one()]);
        assert!(!in_orbit(&w, &[[MU, MU, MU1, MU1, MU, MU, MU1, MU1]]).unwrap());
    }
}
