use cyclo_core::closed_form::{classify, lc_closed_form, predicted_zero_counts};
use cyclo_core::cyclotomy::res2;
use cyclo_core::residue::{gcd, primitive_root, IndexTable};
use cyclo_core::smatrix::{
    build_smatrix_split, in_orbit, period_field, predicted_b8_pair_sum, predicted_period_sums,
    vector_ad,
};
use cyclo_core::{CyclotomyContext, ResidueClass};

// primes p = 1 (mod 8) below 1000 whose p-th roots of unity and GF(16)
// fit together in GF(2^m) with m <= 128
const SMALL_FIELD_PRIMES: [u64; 19] = [
    17, 41, 73, 89, 97, 113, 137, 193, 233, 241, 257, 337, 353, 433, 457, 601, 641, 673, 953,
];

#[test]
fn small_field_prime_list() {
    let found: Vec<u64> = (17..1000)
        .filter(|&p| p % 8 == 1 && cyclo_core::residue::is_probable_prime(p))
        .filter(|&p| period_field(p).is_ok())
        .collect();
    assert_eq!(found, SMALL_FIELD_PRIMES);
}

#[test]
fn a8_in_predicted_orbit() {
    let mut seen = Vec::new();
    for &p in &SMALL_FIELD_PRIMES {
        let field = period_field(p).unwrap();
        let beta = field.primitive_nth_root(p).unwrap();
        let g0 = primitive_root(p).unwrap();
        let other_g = (g0 + 1..p)
            .find(|&g| IndexTable::new(g, p).is_ok())
            .unwrap();
        for g in [g0, other_g] {
            let table = IndexTable::new(g, p).unwrap();
            let a8 = vector_ad(&table, 8, beta).unwrap();
            assert!(
                in_orbit(&a8, &predicted_period_sums(p).unwrap()).unwrap(),
                "p={p} g={g}"
            );
            // the vector matches no other family
            for &r in &SMALL_FIELD_PRIMES {
                if (res2(r).unwrap(), r % 16) != (res2(p).unwrap(), p % 16) {
                    assert!(
                        !in_orbit(&a8, &predicted_period_sums(r).unwrap()).unwrap(),
                        "p={p} r={r}"
                    );
                }
            }
        }
        seen.push((res2(p).unwrap(), p % 16));
    }
    for class in [
        ResidueClass::Quadratic,
        ResidueClass::Quartic,
        ResidueClass::Octic,
    ] {
        for r in [1, 9] {
            if class == ResidueClass::Quartic && r == 9 {
                // no prime below 1000 in this family has a small enough field
                continue;
            }
            assert!(seen.contains(&(class, r)), "{class:?} {r}");
        }
    }
}

#[test]
fn named_primes_cover_the_four_derivations() {
    let families: Vec<_> = [17u64, 41, 73, 113, 257]
        .iter()
        .map(|&p| (p, res2(p).unwrap().value(), p % 16))
        .collect();
    assert_eq!(
        families,
        vec![(17, 2, 1), (41, 2, 9), (73, 8, 9), (113, 4, 1), (257, 8, 1)]
    );
}

#[test]
fn b8_pair_sum_table() {
    let mut ind_classes = [false; 8];
    for &p in &SMALL_FIELD_PRIMES {
        for &q in &SMALL_FIELD_PRIMES {
            if p == q || gcd(p - 1, q - 1) != 8 {
                continue;
            }
            let ctx = CyclotomyContext::new(p, q, None).unwrap();
            let field = period_field(q).unwrap();
            let gamma = field.primitive_nth_root(q).unwrap();
            let b8 = vector_ad(ctx.table_q(), 8, gamma).unwrap();
            assert!(in_orbit(&b8, &predicted_period_sums(q).unwrap()).unwrap());
            let ind = ctx.ind_q_p();
            let pair_sum = b8.add(&b8.rotate(-(ind as i64)));
            let expected = predicted_b8_pair_sum(q, ind).unwrap();
            assert!(
                in_orbit(&pair_sum, &[expected]).unwrap(),
                "({p},{q}) ind={ind}"
            );
            ind_classes[(ind % 8) as usize] = true;
        }
    }
    assert!(ind_classes.iter().all(|&b| b), "{ind_classes:?}");
}

// one pair per cell of the zero-count table: rows by the q-side and
// Res(p, q) condition, columns by Res(2, p)
const CELL_REPRESENTATIVES: [((u8, u8), (u64, u64)); 8] = [
    ((1, 8), (73, 89)),
    ((1, 4), (113, 41)),
    ((1, 2), (17, 73)),
    ((2, 8), (73, 41)),
    ((2, 4), (353, 8681)),
    ((2, 2), (17, 137)),
    ((3, 8), (73, 17)),
    ((3, 4), (113, 137)),
];

fn table_row(p: u64, q: u64) -> u8 {
    let c = classify(p, q).unwrap();
    let quartic_q = c.res_2q.value() >= 4;
    match (quartic_q || c.res_pq.value() >= 4, c.res_pq.value()) {
        (true, _) => 1,
        (false, 2) => 2,
        _ => 3,
    }
}

#[test]
fn zero_count_cells() {
    for ((row, col), (p, q)) in CELL_REPRESENTATIVES {
        assert_eq!(table_row(p, q), row, "({p},{q})");
        assert_eq!(res2(p).unwrap().value(), col, "({p},{q})");
        let ctx = CyclotomyContext::new(p, q, None).unwrap();
        let sm = build_smatrix_split(&ctx).unwrap();
        let expected = match (row, col) {
            (_, 2) => 0,
            (1, 8) | (2, 4) => 32,
            (3, _) => 16,
            _ => 0,
        };
        assert_eq!(sm.block_zeros() as u64, expected, "({p},{q})");
        let c = classify(p, q).unwrap();
        assert_eq!(predicted_zero_counts(&c).0, expected);
        assert_eq!(sm.linear_complexity(), lc_closed_form(p, q).unwrap());
    }
}

#[test]
fn zero_counts_for_every_small_field_pair() {
    for &p in &SMALL_FIELD_PRIMES {
        for &q in &SMALL_FIELD_PRIMES {
            if p == q || gcd(p - 1, q - 1) != 8 {
                continue;
            }
            let ctx = CyclotomyContext::new(p, q, None).unwrap();
            let sm = build_smatrix_split(&ctx).unwrap();
            let c = classify(p, q).unwrap();
            let got = (
                sm.block_zeros() as u64,
                sm.column_zeros() as u64,
                sm.row_zeros() as u64,
            );
            assert_eq!(got, predicted_zero_counts(&c), "({p},{q})");
            assert!(sm.corner_is_zero());
            assert!(sm.satisfies_relation());
            assert_eq!(
                sm.linear_complexity(),
                lc_closed_form(p, q).unwrap(),
                "({p},{q})"
            );
        }
    }
}
