use proptest::prelude::*;

use stern_core::analysis;
use stern_core::exactnum::scalar::{int, pow};
use stern_core::exactnum::{min_recurrence, ExactPoly, Matrix, Poly, Scalar};
use stern_core::powersums::{self, ProductSpec, WindowPattern};
use stern_core::sternarrays::{self, ArrayKind, RowMethod};
use stern_core::transfer::{self, build_system, canonicalize, expand};
use stern_core::Limits;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 0..6).prop_map(|c| Poly::from_i64(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let rows: Vec<Vec<Scalar>> = v
                .chunks(n)
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect();
            Matrix::from_rows(rows).unwrap()
        })
    })
}

/// Patterns with positive ends, interior zeros allowed.
fn pattern(max_len: usize, max_exp: u32) -> impl Strategy<Value = WindowPattern> {
    (1..=max_len).prop_flat_map(move |len| {
        (
            1..=max_exp,
            prop::collection::vec(0..=max_exp, len.saturating_sub(2)),
            1..=max_exp,
        )
            .prop_map(move |(first, mid, last)| {
                let mut e = vec![first];
                if len > 1 {
                    e.extend(mid);
                    e.push(last);
                }
                WindowPattern::new(&e).unwrap()
            })
    })
}

/// Integer kernel and prefactor with nonzero constant terms.
fn small_spec() -> impl Strategy<Value = ProductSpec> {
    let coeffs = |max_deg: usize| {
        (1i64..=3, prop::collection::vec(-2i64..=2, 0..=max_deg)).prop_map(|(c0, rest)| {
            let mut c = vec![c0];
            c.extend(rest);
            c
        })
    };
    (coeffs(3), coeffs(2), 2u32..=3)
        .prop_map(|(p, q, b)| {
            ProductSpec::new(ExactPoly::uni(&p), ExactPoly::uni(&q), &[b]).unwrap()
        })
        .prop_filter("nonconstant kernel", |s| match s.kernel() {
            ExactPoly::Uni(p) => p.degree().unwrap_or(0) > 0,
            ExactPoly::Multi(_) => true,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y);
        prop_assert!(g.divides(&x) && g.divides(&y));
        prop_assert!(c.monic().divides(&g));
    }

    #[test]
    fn minpoly_divides_charpoly(m in matrix(5)) {
        let mp = m.minpoly();
        prop_assert!(mp.divides(&m.charpoly()));
        prop_assert!(m.eval_poly(&mp).is_zero());
    }

    #[test]
    fn block_triangular_charpoly(a in matrix(3), b in matrix(3), fill in prop::collection::vec(-3i64..=3, 9)) {
        let (na, nb) = (a.dim(), b.dim());
        let mut m = Matrix::zeros(na + nb);
        for i in 0..na {
            for j in 0..na {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                m.set(na + i, na + j, b.get(i, j).clone());
            }
            for j in 0..na {
                m.set(na + i, j, int(fill[(i * 3 + j) % 9]));
            }
        }
        prop_assert_eq!(m.charpoly(), &a.charpoly() * &b.charpoly());
    }

    #[test]
    fn sequence_recurrence_divides_minpoly(m in matrix(4), v in prop::collection::vec(-3i64..=3, 4)) {
        let n = m.dim();
        let mut state: Vec<Scalar> = v[..n].iter().map(|&x| int(x)).collect();
        let mut seq = Vec::new();
        for _ in 0..3 * n + 6 {
            seq.push(state[0].clone());
            state = m.mul_vec(&state);
        }
        let rec = min_recurrence(&seq, 0).unwrap();
        prop_assert!(rec.poly.divides(&m.minpoly()));
    }

    #[test]
    fn stern_rows(n in 0usize..=10) {
        let row = sternarrays::stern_row(n, ArrayKind::Triangle, RowMethod::Recursive).unwrap();
        prop_assert!(row.is_palindrome());
        prop_assert_eq!(row.entries.len(), (1usize << (n + 1)) - 1);
        prop_assert_eq!(row.entries.iter().sum::<u64>(), 3u64.pow(n as u32));
    }

    #[test]
    fn reversal_symmetry(alpha in pattern(4, 3), n in 0usize..=8) {
        prop_assume!(alpha.weight() <= 6);
        let limits = Limits::default();
        let u = powersums::u_brute(&ProductSpec::stern(), &alpha, n, &limits).unwrap();
        let w = powersums::u_brute(&ProductSpec::stern(), &alpha.reflected(), n, &limits).unwrap();
        prop_assert_eq!(u, w);
    }

    #[test]
    fn canonical_form_is_idempotent(alpha in pattern(5, 3), sym in any::<bool>()) {
        let c = canonicalize(&alpha, sym);
        prop_assert_eq!(canonicalize(&c, sym), c.clone());
        if sym {
            prop_assert_eq!(canonicalize(&alpha.reflected(), true), c);
        }
    }

    #[test]
    fn expansion_conserves_weight_and_bounds_spread(
        kernel in prop::collection::vec(-2i64..=2, 0..=4),
        b in 2u32..=3,
        alpha in pattern(5, 3),
    ) {
        let mut k = vec![1];
        k.extend(kernel);
        let deg = Poly::from_i64(&k).degree().unwrap();
        let combo = expand(&ExactPoly::uni(&k), &[b], &alpha, false).unwrap();
        for beta in combo.patterns() {
            prop_assert_eq!(beta.weight(), alpha.weight());
        }
        let b = b as usize;
        prop_assert!(combo.spread() <= 1 + (alpha.length() - 1 + deg) / b);
    }

    #[test]
    fn transfer_matches_brute_force(spec in small_spec(), alpha in pattern(3, 2)) {
        let system = build_system(&spec, &alpha, false).unwrap();
        let brute = powersums::u_brute(&spec, &alpha, 7, &Limits::default()).unwrap();
        prop_assert_eq!(transfer::iterate(&system, 7), brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rmp_divides_mmp(alpha in pattern(4, 3)) {
        let report = analysis::recurrence_report(&ProductSpec::stern(), &alpha).unwrap();
        prop_assert!(report.divisibility_ok);
        prop_assert!(report.rmp.divides(&report.mmp));
    }
}

#[test]
fn single_site_sums_are_powers_of_three() {
    let u = powersums::u_brute(
        &ProductSpec::stern(),
        &WindowPattern::single(1, 1),
        20,
        &Limits::default(),
    )
    .unwrap();
    for (n, value) in u.iter().enumerate() {
        assert_eq!(*value, pow(&int(3), n as u32));
        assert_eq!(
            powersums::support_count(&ProductSpec::stern(), n),
            (1u128 << (n + 1)) - 1
        );
    }
}
