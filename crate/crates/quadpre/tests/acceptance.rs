//! Acceptance gate: one test per criterion, each printing its own
//! pass/fail line. Tolerances are pinned in the assertions; exact
//! claims use exact arithmetic, never a tolerance.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use quadpre_core::coding;
use quadpre_core::numeric::{linspace, BigFixed, Real};
use quadpre_core::paramsets;
use quadpre_core::poly::{self, IntPolynomial};
use quadpre_core::roots;
use quadpre_core::symdyn::{self, Sign, SignSequence};

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

/// Criterion 1: bounded intersections reproduce the classified sets
/// with exact integer equality; the five disjoint pairs certify
/// completeness at unbounded depth.
#[test]
fn criterion_1_classified_intersections_exact() {
    let report = paramsets::intersect(0, 1, 6, 6).unwrap();
    assert_eq!(report.common_values(), ints(&[-2, -1, 0]));
    assert_eq!(report.verdict_matches, Some(true));

    let report = paramsets::intersect(0, 2, 6, 6).unwrap();
    assert_eq!(report.common_values(), ints(&[-2]));
    assert_eq!(report.verdict_matches, Some(true));
    assert!(report.complete);

    for a in 1..=4i64 {
        let report = paramsets::intersect(a, a + 1, 6, 6).unwrap();
        assert_eq!(
            report.common_values(),
            ints(&[-a * a - a - 1, -a * a - a]),
            "adjacent pair ({a}, {})",
            a + 1
        );
        assert_eq!(report.verdict_matches, Some(true));
        assert!(report.complete, "adjacent pair ({a}, {}) completeness", a + 1);
    }

    for (a, b) in [(0i64, 3i64), (0, 4), (1, 3), (2, 4), (1, 4)] {
        let report = paramsets::intersect(a, b, 6, 6).unwrap();
        assert!(report.common_values().is_empty(), "pair ({a}, {b}) must be empty");
        assert_eq!(report.verdict_matches, Some(true));
        assert!(report.complete, "pair ({a}, {b}) completeness");
    }
    println!("criterion 1 PASS: 11 intersections at depth 6, exact equality");
}

/// Criterion 2: the example table of closed-form parameter sets for
/// the four smallest cells, base points 0..=5, exact value sets.
#[test]
fn criterion_2_example_table_exact() {
    for a in 0..=5i64 {
        let q = a * a;
        let table: [(u32, u32, Vec<i64>); 4] = [
            (0, 1, vec![-q + a]),
            (1, 1, vec![-q - a, -q + a]),
            (0, 2, vec![-q - a - 1, -q + a]),
            (1, 2, vec![-q - a - 1, -q - a, -q + a - 1, -q + a]),
        ];
        for (k, p, values) in table {
            let report = paramsets::param_set(a, k, p).unwrap();
            let got: Vec<BigInt> =
                report.roots.exact_integer_roots.iter().map(|(v, _)| v.clone()).collect();
            let expected: Vec<BigInt> =
                values.into_iter().map(BigInt::from).collect::<BTreeSet<_>>().into_iter().collect();
            assert_eq!(got, expected, "value set at (a, k, p) = ({a}, {k}, {p})");
            assert!(report.roots.isolated_real_roots.is_empty(), "({a}, {k}, {p})");
            assert!(report.roots.complex_roots.is_empty(), "({a}, {k}, {p})");
            assert!(report.roots.is_complete(), "({a}, {k}, {p})");
        }
    }
    println!("criterion 2 PASS: 24 closed-form cells, exact value sets");
}

/// Criterion 3: parameter solver vs Sturm isolation on every cell with
/// k + p <= 8 for a in {2, 3}: counts equal 2^(k+p-1) on both routes
/// and sorted values match within 1e-9.
#[test]
fn criterion_3_two_oracle_parameter_match() {
    let mut cells = 0u32;
    for a in [2i64, 3] {
        for s in 1..=8u32 {
            for k in 0..s {
                let p = s - k;
                assert!(
                    paramsets::parashift_cell_check(a, k, p, 1e-9).unwrap(),
                    "cell (a, k, p) = ({a}, {k}, {p})"
                );
                cells += 1;
            }
        }
    }
    assert_eq!(cells, 72);
    println!("criterion 3 PASS: {cells} cells matched to 1e-9 with exact counts");
}

/// Criterion 4: distinct coding values at c = -2 counted through exact
/// angles match the closed-form count for k + p <= 12 and the distinct
/// root counts of the point sets for k + p <= 6.
#[test]
fn criterion_4_counting_at_minus_two() {
    for s in 1..=12u32 {
        for k in 0..s {
            let p = s - k;
            let mut distinct: BTreeSet<BigRational> = BTreeSet::new();
            for seq in symdyn::enumerate(k, p, None).unwrap() {
                distinct.insert(seq.psi_minus2_angle());
            }
            let formula = symdyn::count_x_minus2(k, p);
            let direct = if k == 0 {
                BigInt::one() << p
            } else {
                (BigInt::one() << (k + p)) - (BigInt::one() << (k - 1)) + BigInt::one()
            };
            assert_eq!(formula, direct, "formula shape at ({k}, {p})");
            assert_eq!(BigInt::from(distinct.len()), formula, "angle count at ({k}, {p})");
        }
    }
    let c = BigRational::from_integer(BigInt::from(-2));
    for s in 1..=6u32 {
        for k in 0..s {
            let p = s - k;
            let count = paramsets::point_set_distinct_count(&c, k, p).unwrap();
            assert_eq!(
                BigInt::from(count),
                symdyn::count_x_minus2(k, p),
                "point-set distinct count at ({k}, {p})"
            );
        }
    }
    println!("criterion 4 PASS: counts match on 78 angle cells and 21 point-set cells");
}

/// Criterion 5: conjugacy residuals and sign conditions at five
/// parameters for k + p <= 10; in-cell distinctness for c < -2; the
/// collision biconditional at c = -2 checked combinatorially against
/// exact angle equality.
#[test]
fn criterion_5_conjugacy_suite() {
    let mut worst_residual = 0f64;
    for c in [-2.0f64, -2.1, -2.5, -3.0, -4.0] {
        for s in 1..=10u32 {
            for k in 0..s {
                let p = s - k;
                let seqs = symdyn::enumerate(k, p, None).unwrap();
                let mut values = Vec::with_capacity(seqs.len());
                for seq in &seqs {
                    let v = coding::psi_f64(c, seq).unwrap();
                    let shifted = coding::psi_f64(c, &seq.shift()).unwrap();
                    let residual = (v * v + c - shifted).abs();
                    assert!(residual <= 1e-9, "residual {residual:e} at c = {c}, seq = {seq}");
                    if residual > worst_residual {
                        worst_residual = residual;
                    }
                    match seq.first_sign() {
                        Sign::Plus => assert!(v >= -1e-12, "sign at c = {c}, seq = {seq}"),
                        Sign::Minus => assert!(v <= 1e-12, "sign at c = {c}, seq = {seq}"),
                    }
                    if c < -2.0 {
                        assert!(v != 0.0, "strict sign at c = {c}, seq = {seq}");
                        assert_eq!(v > 0.0, seq.first_sign() == Sign::Plus);
                    }
                    values.push(v);
                }
                if c < -2.0 {
                    // Distinct codes in one cell differ within the first
                    // k + p symbols, so genuine gaps dwarf solver error.
                    values.sort_by(f64::total_cmp);
                    for w in values.windows(2) {
                        assert!(
                            w[1] - w[0] > 1e-8,
                            "collision-sized gap {:e} at c = {c}, cell ({k}, {p})",
                            w[1] - w[0]
                        );
                    }
                }
            }
        }
    }

    let mut collisions = 0u64;
    for s in 1..=6u32 {
        for k in 0..s {
            let p = s - k;
            let seqs = symdyn::enumerate(k, p, None).unwrap();
            let angles: Vec<BigRational> = seqs.iter().map(|seq| seq.psi_minus2_angle()).collect();
            for i in 0..seqs.len() {
                for j in i + 1..seqs.len() {
                    let combinatorial = symdyn::collides_at_minus2(&seqs[i], &seqs[j]);
                    let by_value = angles[i] == angles[j];
                    assert_eq!(
                        combinatorial, by_value,
                        "biconditional at {} vs {}",
                        seqs[i], seqs[j]
                    );
                    if by_value {
                        collisions += 1;
                    }
                }
            }
        }
    }
    assert!(collisions > 0, "the collision pattern at c = -2 must be nonempty");
    println!(
        "criterion 5 PASS: worst residual {worst_residual:.2e}, {collisions} collisions matched"
    );
}

/// Criterion 6: the exact cosine form of the coding map at c = -2
/// against the bisection solver at 128 fractional bits for k + p <= 10,
/// and the four closed-form parameter curves against the solver at 50
/// samples each.
#[test]
fn criterion_6_closed_form_cross_checks() {
    let bits = 128;
    let c = BigFixed::from_f64_with_bits(-2.0, bits);
    let tol = BigFixed::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << 112), bits);
    let mut cycle_points: BTreeMap<String, BigFixed> = BTreeMap::new();
    let mut worst = 0f64;
    let mut count = 0u64;
    for s in 1..=10u32 {
        for k in 0..s {
            let p = s - k;
            for seq in symdyn::enumerate(k, p, None).unwrap() {
                let key: String = seq.cycle().iter().map(|x| x.as_char()).collect();
                let cycle_point = cycle_points
                    .entry(key)
                    .or_insert_with(|| coding::fixed_point(&c, seq.cycle(), &tol).unwrap())
                    .clone();
                let solved = coding::apply_prefix(&c, seq.prefix(), cycle_point);
                let exact = seq.psi_minus2_with_bits(bits);
                let diff = Real::to_f64(&solved.sub(&exact).abs());
                assert!(diff <= 1e-9, "solver vs cosine {diff:e} at {seq}");
                if diff > worst {
                    worst = diff;
                }
                count += 1;
            }
        }
    }
    assert_eq!(count, 18434);

    type Curve = Box<dyn Fn(f64) -> f64>;
    let alpha = |c: f64| 0.5 * (1.0 - (1.0 - 4.0 * c).sqrt());
    let beta = |c: f64| 0.5 * (1.0 + (1.0 - 4.0 * c).sqrt());
    let forms: [(&str, Curve); 4] = [
        ("|+", Box::new(beta)),
        ("+|-", Box::new(move |c| -alpha(c))),
        ("++|-", Box::new(move |c| (-alpha(c) - c).sqrt())),
        ("+-|+", Box::new(move |c| (-beta(c) - c).sqrt())),
    ];
    for (text, closed) in &forms {
        let seq: SignSequence = text.parse().unwrap();
        for x in linspace(-4.5, -2.0, 50) {
            let solved = coding::zeta_f64(&seq, x).unwrap();
            let expected = closed(x);
            assert!(
                (solved - expected).abs() <= 1e-9,
                "form {text} at c = {x}: {solved} vs {expected}"
            );
        }
    }
    println!(
        "criterion 6 PASS: {count} sequences at 128 bits (worst {worst:.2e}), 200 curve samples"
    );
}

/// Criterion 7: localization. Every reported element lies in the disk
/// of radius R_a; R_a equals the interval endpoint through two
/// independent routes; preperiodic integer orbits stay within rho_c.
#[test]
fn criterion_7_localization_bounds() {
    let cells: [(u32, u32); 9] =
        [(0, 1), (1, 1), (0, 2), (1, 2), (2, 1), (2, 2), (0, 3), (1, 3), (3, 1)];
    let mut elements = 0u64;
    for a in -3..=5i64 {
        let radius = paramsets::localization_radius(a);
        for (k, p) in cells {
            let report = paramsets::param_set(a, k, p).unwrap();
            for (v, _) in &report.roots.exact_integer_roots {
                assert!(paramsets::integer_within_disk(v, a), "integer {v} at ({a}, {k}, {p})");
                let orbit = paramsets::is_preperiodic_exact(v, &BigInt::from(a), 64);
                assert!(orbit.preperiodic().is_some(), "{v} must be preperiodic at a = {a}");
                assert!(
                    paramsets::orbit_within_escape_radius(v, &BigInt::from(a), 64),
                    "orbit of {a} at c = {v} must respect rho_c"
                );
                elements += 1;
            }
            for root in &report.roots.isolated_real_roots {
                let mid = (&root.lo + &root.hi) / BigRational::from_integer(BigInt::from(2));
                let approx = num_traits::ToPrimitive::to_f64(&mid).unwrap();
                assert!(approx.abs() <= radius + 1e-9, "interval root at ({a}, {k}, {p})");
                elements += 1;
            }
            for root in &report.roots.complex_roots {
                assert!(root.re.hypot(root.im) <= radius + 1e-9, "complex root at ({a}, {k}, {p})");
                elements += 1;
            }
        }
    }
    for a in 2..=6i64 {
        let via_disk = paramsets::localization_radius(a);
        let via_interval = -coding::c_interval_minus(&(a as f64));
        assert!(
            (via_disk - via_interval).abs() <= 1e-12,
            "radius identity at |a| = {a}: {via_disk} vs {via_interval}"
        );
        assert_eq!(paramsets::localization_radius(-a), via_disk);
    }
    println!("criterion 7 PASS: {elements} elements within R_a, radius identity to 1e-12");
}

/// Criterion 8: the half-open-interval conjugate test against 50 monic
/// integer polynomials with independently known root multisets.
#[test]
fn criterion_8_halfopen_interval_oracle() {
    let linear = |r: i64| IntPolynomial::from_coeffs(vec![BigInt::from(-r), BigInt::one()]);
    let mut cases: Vec<(IntPolynomial, i64, bool)> = Vec::new();

    // Structured cases: multiplicity patterns inside {m-1, m}, single
    // outliers at both boundary sides, and non-real or irrational roots
    // (never inside a real half-open interval).
    for (i, j) in [(1u32, 0u32), (0, 1), (1, 1), (2, 1), (1, 3), (4, 2)] {
        for m in [-2i64, 1] {
            let p = &linear(m - 1).pow(i) * &linear(m).pow(j);
            cases.push((p, m, true));
        }
    }
    for m in [-1i64, 0, 3] {
        cases.push((&linear(m - 2) * &linear(m), m, false));
        cases.push((&linear(m + 1) * &linear(m - 1), m, false));
    }
    for m in [0i64, 2] {
        // z^2 + 1: conjugate pair off the real line.
        let gauss = IntPolynomial::from_coeffs(vec![BigInt::one(), BigInt::zero(), BigInt::one()]);
        cases.push((&gauss * &linear(m), m, false));
        // z^2 - 2: irrational pair with |root| > 1, never both in a
        // length-two window ending at an integer.
        let sqrt2 =
            IntPolynomial::from_coeffs(vec![BigInt::from(-2), BigInt::zero(), BigInt::one()]);
        cases.push((&sqrt2 * &linear(m), m, false));
    }

    // Deterministic pseudo-random products over the pool
    // {m-2, m-1, m, m+1}: expectation decided by the known multiset.
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    while cases.len() < 50 {
        let m = (next() % 9) as i64 - 4;
        let degree = 1 + (next() % 4) as usize;
        let mut product = IntPolynomial::constant(BigInt::one());
        let mut inside = true;
        for _ in 0..degree {
            let r = m - 2 + (next() % 4) as i64;
            inside = inside && (r == m - 1 || r == m);
            product = &product * &linear(r);
        }
        cases.push((product, m, inside));
    }
    assert_eq!(cases.len(), 50);

    let mut positives = 0u32;
    let mut negatives = 0u32;
    for (idx, (p, m, expected)) in cases.iter().enumerate() {
        let got = roots::conjugates_in_halfopen_interval(p, &BigInt::from(*m)).unwrap();
        assert_eq!(got, *expected, "case {idx} with m = {m}");
        if *expected {
            positives += 1;
        } else {
            negatives += 1;
        }
    }
    assert!(positives >= 12 && negatives >= 12, "{positives} / {negatives}");
    println!("criterion 8 PASS: 50 oracle polynomials ({positives} inside, {negatives} outside)");
}

/// Criterion 9: structural invariants of the iterate polynomials and
/// parameter/point sets.
#[test]
fn criterion_9_structural_invariants() {
    for a in 0..=3i64 {
        for n in 1..=8u32 {
            let f = poly::iterate_poly(a, n).unwrap();
            assert_eq!(f.degree(), Some(1usize << (n - 1)), "degree of F_{n} at a = {a}");
            assert!(f.is_monic(), "monicity of F_{n} at a = {a}");
        }
        for n in 0..=5u32 {
            assert!(poly::telescoping_identity_check(a, n).unwrap(), "telescoping at ({a}, {n})");
        }
        assert!(
            paramsets::nonstabilization_check(a, 4).unwrap(),
            "non-stabilization through n = 4 at a = {a}"
        );
    }
    for a in 1..=4i64 {
        for (k, p) in [(1u32, 1u32), (1, 2), (2, 1), (2, 2), (3, 2)] {
            assert_eq!(
                poly::difference_poly(a, k, p).unwrap(),
                poly::difference_poly(-a, k, p).unwrap(),
                "sign symmetry at ({a}, {k}, {p})"
            );
        }
    }
    let params = [
        BigRational::from_integer(BigInt::from(-2)),
        BigRational::new(BigInt::from(-5), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(3)),
    ];
    for c in &params {
        for (k, p) in [(1u32, 1u32), (2, 1), (1, 2), (2, 2)] {
            let d = poly::point_difference_poly(c, k, p, 4096).unwrap();
            for (i, coeff) in d.coeffs().iter().enumerate() {
                if i % 2 == 1 {
                    assert!(coeff.is_zero(), "odd coefficient {i} at c = {c}, cell ({k}, {p})");
                }
            }
        }
    }
    println!("criterion 9 PASS: degrees, telescoping, symmetries, non-stabilization");
}
