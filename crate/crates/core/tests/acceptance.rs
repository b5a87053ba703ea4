//! The fourteen reproduction criteria at exact equality, one test each.
//!
//! Run with `cargo test -p stern-core --test acceptance -- --nocapture` to
//! see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stern_core::analysis;
use stern_core::exactnum::scalar::{int, pow};
use stern_core::exactnum::{ExactPoly, Matrix, Poly, Scalar};
use stern_core::powersums::{self, patterns_of_weight, ProductSpec, WindowPattern};
use stern_core::sternarrays::{self, ArrayKind, RowMethod};
use stern_core::transfer::{self, build_system, display_form};
use stern_core::verify::{self, Status};
use stern_core::{Error, Limits};

fn report(id: &str, ok: bool, detail: impl AsRef<str>) {
    println!(
        "{id} {} {}",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    assert!(ok, "{id}: {}", detail.as_ref());
}

fn within(id: &str, start: Instant, limit: Duration) {
    let took = start.elapsed();
    assert!(took < limit, "{id} took {took:?}, limit {limit:?}");
}

fn pat(e: &[u32]) -> WindowPattern {
    WindowPattern::new(e).unwrap()
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

fn row(n: usize, kind: ArrayKind, method: RowMethod) -> Vec<u64> {
    sternarrays::stern_row(n, kind, method).unwrap().entries
}

#[test]
fn criterion_01_rows() {
    let start = Instant::now();
    let triangle: [&[u64]; 4] = [
        &[1],
        &[1, 1, 1],
        &[1, 1, 2, 1, 2, 1, 1],
        &[1, 1, 2, 1, 3, 2, 3, 1, 3, 2, 3, 1, 2, 1, 1],
    ];
    let diatomic: [&[u64]; 5] = [
        &[1, 1],
        &[1, 2, 1],
        &[1, 3, 2, 3, 1],
        &[1, 4, 3, 5, 2, 5, 3, 4, 1],
        &[1, 5, 4, 7, 3, 8, 5, 7, 2, 7, 5, 8, 3, 7, 4, 5, 1],
    ];
    let mut bad = Vec::new();
    for (n, printed) in triangle.iter().enumerate() {
        if row(n, ArrayKind::Triangle, RowMethod::Recursive) != *printed {
            bad.push(format!("triangle row {n}"));
        }
    }
    for (n, printed) in diatomic.iter().enumerate() {
        if row(n, ArrayKind::Diatomic, RowMethod::Recursive) != *printed {
            bad.push(format!("diatomic row {n}"));
        }
    }
    for n in 0..=12 {
        if row(n, ArrayKind::Triangle, RowMethod::Recursive)
            != row(n, ArrayKind::Triangle, RowMethod::Product)
        {
            bad.push(format!("product row {n}"));
        }
    }
    for n in 1..=8 {
        let entries = row(n, ArrayKind::Triangle, RowMethod::Recursive);
        for k in -2..entries.len() as i64 + 2 {
            let expected = if k >= 0 && (k as usize) < entries.len() {
                entries[k as usize]
            } else {
                0
            };
            if sternarrays::partition_count(n, k) != expected {
                bad.push(format!("partition n={n} k={k}"));
            }
        }
    }
    within("C1", start, Duration::from_secs(5));
    report(
        "C1",
        bad.is_empty(),
        format!("rows, product formula, partition counts {bad:?}"),
    );
}

#[test]
fn criterion_02_concatenation() {
    let bad: Vec<usize> = (1..=8)
        .filter(|&n| !sternarrays::concat_check(n).unwrap())
        .collect();
    report(
        "C2",
        bad.is_empty(),
        format!("concatenation for n = 1..8, failures {bad:?}"),
    );
}

#[test]
fn criterion_03_u2_values() {
    let expected = ints(&[1, 3, 13, 59, 269, 1227, 5597, 25531]);
    let brute =
        powersums::u_brute(&ProductSpec::stern(), &pat(&[2]), 7, &Limits::default()).unwrap();
    let iterated = build_system(&ProductSpec::stern(), &pat(&[2]), true)
        .unwrap()
        .iterate(40);
    let recurrence = iterated
        .windows(3)
        .all(|w| w[2] == int(5) * &w[1] - int(2) * &w[0]);
    report(
        "C3",
        brute == expected && iterated[..8] == expected[..] && recurrence,
        format!(
            "u_2(0..7) brute {} transfer {} recurrence to n=40 {recurrence}",
            brute == expected,
            iterated[..8] == expected[..]
        ),
    );
}

#[test]
fn criterion_04_u3_and_u21() {
    let spec = ProductSpec::stern();
    let limits = Limits::default();
    let u3 = build_system(&spec, &pat(&[3]), true).unwrap().iterate(12);
    let u21 = build_system(&spec, &pat(&[2, 1]), true)
        .unwrap()
        .iterate(12);
    let b3 = powersums::u_brute(&spec, &pat(&[3]), 12, &limits).unwrap();
    let b21 = powersums::u_brute(&spec, &pat(&[2, 1]), 12, &limits).unwrap();
    let mut bad = Vec::new();
    for n in 1..=12usize {
        let p = pow(&int(7), n as u32 - 1);
        if u3[n] != int(3) * &p || b3[n] != u3[n] {
            bad.push(format!("u3({n})"));
        }
        if u21[n] != int(2) * &p || b21[n] != u21[n] {
            bad.push(format!("u21({n})"));
        }
    }
    report(
        "C4",
        bad.is_empty(),
        format!("closed forms for n = 1..12, failures {bad:?}"),
    );
}

#[test]
fn criterion_05_transfer_matrices() {
    let a2 = build_system(&ProductSpec::stern(), &pat(&[2]), true).unwrap();
    let a3 = build_system(&ProductSpec::stern(), &pat(&[3]), true).unwrap();
    let a1111 = build_system(&ProductSpec::stern(), &pat(&[1, 1, 1, 1]), true).unwrap();
    let order: Vec<Vec<u32>> = a1111
        .closure
        .iter()
        .map(|c| display_form(c, true).exponents())
        .collect();
    let printed_order: Vec<Vec<u32>> = [
        &[4][..],
        &[3, 1],
        &[2, 2],
        &[1, 2, 1],
        &[2, 1, 1],
        &[1, 1, 1, 1],
    ]
    .iter()
    .map(|e| e.to_vec())
    .collect();
    let printed = Matrix::from_i64(&[
        &[3, 8, 6, 0, 0, 0],
        &[2, 5, 3, 0, 0, 0],
        &[2, 4, 2, 0, 0, 0],
        &[1, 4, 2, 1, 0, 0],
        &[1, 3, 1, 2, 1, 0],
        &[0, 2, 2, 2, 2, 0],
    ])
    .unwrap();
    let checks = [
        (
            "A2",
            a2.matrix == Matrix::from_i64(&[&[3, 2], &[2, 2]]).unwrap(),
        ),
        (
            "A3",
            a3.matrix == Matrix::from_i64(&[&[3, 6], &[2, 4]]).unwrap(),
        ),
        ("mmp(2)", a2.matrix.minpoly() == Poly::from_i64(&[2, -5, 1])),
        ("mmp(3)", a3.matrix.minpoly() == Poly::from_i64(&[0, -7, 1])),
        ("order", order == printed_order),
        ("A_1111", a1111.matrix == printed),
    ];
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    let differing: Vec<String> = (0..a1111.size())
        .filter(|&i| a1111.matrix.row(i) != printed.row(i))
        .map(|i| {
            let computed: Vec<String> = a1111.matrix.row(i).iter().map(|x| x.to_string()).collect();
            format!(
                "row {} computed [{}]",
                display_form(&a1111.closure[i], true),
                computed.join(",")
            )
        })
        .collect();
    report(
        "C5",
        failed.is_empty(),
        format!("mismatches {failed:?} {differing:?}"),
    );
}

#[test]
fn criterion_06_rmp_table() {
    let start = Instant::now();
    let x1 = Poly::from_i64(&[1, 1]);
    let printed = [
        Poly::from_i64(&[-3, 1]),
        Poly::from_i64(&[2, -5, 1]),
        Poly::from_i64(&[-7, 1]),
        &x1 * &Poly::from_i64(&[2, -11, 1]),
        Poly::from_i64(&[-47, -14, 1]),
        Poly::from_i64(&[4, -40, -161, -20, 1]),
        Poly::from_i64(&[-327, -485, -29, 1]),
        &x1 * &Poly::from_i64(&[4, -88, -1313, -44, 1]),
        Poly::from_i64(&[-3843, -3653, -65, 1]),
        &x1 * &Poly::from_i64(&[4, -200, -9601, -100, 1]),
    ];
    let bad: Vec<String> = (1..=10u32)
        .filter_map(|r| {
            let got = analysis::stern_rmp(r).unwrap();
            (got != printed[r as usize - 1]).then(|| format!("r={r}: {got}"))
        })
        .collect();
    let block = verify::check("E1", verify::Profile::Full).unwrap();
    within("C6", start, Duration::from_secs(30));
    report(
        "C6",
        bad.is_empty() && block.status == Status::FlaggedErratum,
        format!(
            "table rows {bad:?}; block A_4 quadratic {:?}: {}",
            block.status, block.computed
        ),
    );
}

#[test]
fn criterion_07_theorem4() {
    let mut bad = Vec::new();
    let mut count = 0;
    for w in 1..=5 {
        for alpha in patterns_of_weight(w, 4) {
            count += 1;
            if !analysis::theorem4_decompose(&alpha).unwrap().ok {
                bad.push(alpha.to_string());
            }
        }
    }
    report(
        "C7",
        bad.is_empty() && count == 70,
        format!("{count} patterns, failures {bad:?}"),
    );
}

#[test]
fn criterion_08_oracle_equivalence() {
    let limits = Limits::default();
    let mut bad = Vec::new();
    let mut count = 0;
    for w in 1..=4 {
        for alpha in patterns_of_weight(w, 5) {
            count += 1;
            let iterated = build_system(&ProductSpec::stern(), &alpha, true)
                .unwrap()
                .iterate(16);
            if iterated != powersums::u_brute(&ProductSpec::stern(), &alpha, 16, &limits).unwrap() {
                bad.push(alpha.to_string());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let alphas = [
        pat(&[1]),
        pat(&[2]),
        pat(&[1, 1]),
        pat(&[2, 1]),
        pat(&[3]),
        pat(&[1, 0, 1]),
    ];
    for i in 0..10 {
        let spec = verify::random_spec(&mut rng);
        let alpha = &alphas[i % alphas.len()];
        let iterated = build_system(&spec, alpha, false).unwrap().iterate(10);
        if iterated != powersums::u_brute(&spec, alpha, 10, &limits).unwrap() {
            bad.push(format!("random {i}"));
        }
    }
    report(
        "C8",
        bad.is_empty(),
        format!("{count} Stern patterns and 10 random specs, failures {bad:?}"),
    );
}

#[test]
fn criterion_09_conjecture_census() {
    let start = Instant::now();
    let report_ = analysis::conjecture_check(40).unwrap();
    let sizes: Vec<usize> = report_.rows.iter().map(|r| r.closure_size).collect();
    let expected_sizes: Vec<usize> = (1..=40).map(|r| 1 + r / 2).collect();
    within("C9", start, Duration::from_secs(600));
    report(
        "C9",
        report_.rows.len() == 40 && report_.all_pass() && sizes == expected_sizes,
        format!("r <= 40, mismatches {:?}", report_.mismatches()),
    );
}

#[test]
fn criterion_10_speyer() {
    let rows = analysis::speyer_check(40).unwrap();
    let bad: Vec<u32> = rows
        .iter()
        .filter(|r| !(r.weights.is_some() && r.minpoly_squarefree))
        .map(|r| r.r)
        .collect();
    report(
        "C10",
        rows.len() == 40 && bad.is_empty(),
        format!("B_r for r <= 40, failures {bad:?}"),
    );
}

#[test]
fn criterion_11_series_identity() {
    let x_minus_1 = Poly::from_i64(&[-1, 1]);
    let rmp: [&[i64]; 6] = [
        &[-3, 1],
        &[2, -5, 1],
        &[-7, 1],
        &[2, -9, -10, 1],
        &[-47, -14, 1],
        &[4, -40, -161, -20, 1],
    ];
    let mut bad = Vec::new();
    for r in 1..=6u32 {
        let rep = analysis::vrur_check(r, 40).unwrap();
        if r <= 3 && !rep.identity_holds {
            bad.push(format!("identity r={r}"));
        }
        let expected = &x_minus_1 * &Poly::from_i64(rmp[r as usize - 1]);
        if rep.r_poly != expected {
            bad.push(format!("R_{r} = {}", rep.r_poly));
        }
    }
    report(
        "C11",
        bad.is_empty(),
        format!("order 40 for r <= 3, R_r for r <= 6, failures {bad:?}"),
    );
}

#[test]
fn criterion_12_univariate_and_fits() {
    let printed: [((u32, u32), &[i64]); 6] = [
        ((2, 2), &[2, 8]),
        ((2, 3), &[4, 16]),
        ((2, 4), &[2, 8, 32]),
        ((3, 2), &[2, 8, 32]),
        ((3, 3), &[2, 8, 32, 128]),
        ((3, 4), &[2, 8, 32, 128, 512]),
    ];
    let mut bad = Vec::new();
    for ((d, r), roots) in printed {
        let rmp = analysis::recurrence_report(
            &ProductSpec::geometric_power(d, 2),
            &WindowPattern::single(1, r),
        )
        .unwrap()
        .rmp;
        if rmp != Poly::from_roots(roots) {
            bad.push(format!("(1+x)^{d} r={r}: {rmp}"));
        }
    }
    let one = ExactPoly::uni(&[1]);
    for d in 1..=3 {
        for b in 2..=3 {
            for r in 1..=4 {
                let fit = analysis::exp_fit(d, b, &WindowPattern::single(1, r), &one).unwrap();
                if !fit.parity_ok() {
                    bad.push(format!("parity d={d} b={b} r={r}"));
                }
                if d == 3 && b == 2 {
                    // coefficient of b^(i n) sits at index i
                    let support: Vec<usize> = (0..fit.coeffs.len())
                        .filter(|&i| fit.coeffs[i] != int(0))
                        .collect();
                    if support.is_empty() || support.iter().any(|i| i % 2 == 0) {
                        bad.push(format!("exponent set r={r}: {support:?}"));
                    }
                }
            }
        }
    }
    report(
        "C12",
        bad.is_empty(),
        format!("six rmps, parity and exponent sets, failures {bad:?}"),
    );
}

#[test]
fn criterion_13_multivariate() {
    let start = Instant::now();
    let printed: [((u32, [u32; 2]), &[i64]); 4] = [
        ((2, [2, 2]), &[132, -27, 1]),
        ((2, [2, 3]), &[104, -23, 1]),
        ((3, [2, 3]), &[402, -45, 1]),
        ((4, [2, 3]), &[-28320, 3176, -107, 1]),
    ];
    let mut bad = Vec::new();
    for ((r, b), coeffs) in printed {
        let rep = verify::multivariate_report(r, b).unwrap();
        if rep.report.rmp != Poly::from_i64(coeffs) || !rep.consistent() {
            bad.push(format!("r={r} b={b:?}: {}", rep.report.rmp));
        }
    }
    let cubic = verify::multivariate_report(3, [2, 2]).unwrap();
    let exact = Poly::from_i64(&[-4704, 1020, -67, 1]);
    let printed_literally = Poly::from_i64(&[-4704, -67, 1020, 1]);
    if cubic.report.rmp != exact || cubic.brute_rmp.as_ref() != Some(&exact) {
        bad.push(format!("r=3 b=(2,2): {}", cubic.report.rmp));
    }
    let flag = verify::check("E2", verify::Profile::Full).unwrap();
    let flagged = cubic.report.rmp != printed_literally && flag.status == Status::FlaggedErratum;
    within("C13", start, Duration::from_secs(300));
    report(
        "C13",
        bad.is_empty() && flagged,
        format!("five rmps, printed cubic flagged {flagged}, failures {bad:?}"),
    );
}

#[test]
fn criterion_14_pascal_breakdown() {
    let spec =
        ProductSpec::new_allow_unit_base(ExactPoly::uni(&[1, 1]), ExactPoly::uni(&[1]), &[1])
            .unwrap();
    let limits = Limits {
        closure_budget: 500,
        ..Limits::default()
    };
    let result = transfer::build_system_with(&spec, &pat(&[2]), false, &limits);
    let ok = matches!(result, Err(Error::ClosureBudgetExceeded { budget: 500 }));
    report("C14", ok, "b = 1 exceeds the closure budget");
}
