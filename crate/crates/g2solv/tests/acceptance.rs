//! Acceptance battery: one test per shipped guarantee, so that
//! `cargo test --test acceptance` prints a single pass/fail line per
//! criterion. Every exact claim is checked in rational (or ℚ(i√2))
//! arithmetic with zero tolerance; the numeric searches use the library
//! defaults (residual 1e-9, torsion magnitude 1e-6).
//!
//! The data pinned here (Table 2, the printed connection matrices, the
//! catalogued spinors) is embedded directly in this file on purpose: it is
//! an independent witness, not a re-export of the library's own tables.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use g2solv::ansatz::{
    complex_solution, complex_torsion_display, family_torsion, isolated_solutions,
    reduction_kernel, torsion_contraction, verify_parallel, ReductionCase,
};
use g2solv::exterior::{parse_form, KForm};
use g2solv::fixtures::load;
use g2solv::g2::{lambda_mu, omega, phi_base, phi_family, psi_family, tau_extract};
use g2solv::lie::FrameConnection;
use g2solv::linalg::Matrix;
use g2solv::scalar::{rational_to_f64, QuadExt, Rational, Scalar};
use g2solv::search::{catalog_distance_example2, numeric_search, SearchConfig};
use g2solv::spin::{
    calibrate, calibration_sweep, parallel_spinors, phi_from_spinor, spin_lift, spin_rep,
    CANONICAL_CONSTANTS,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn reference_spinor() -> Vec<Rational> {
    [0, 0, 0, 0, 1, 1, -1, 1].iter().map(|&n| q(n, 1)).collect()
}

/// 7×7 rational grid for the two-parameter family; symmetric around zero so
/// it contains the diagonals r = s and r = −s.
fn grid() -> Vec<Rational> {
    [(-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (3, 2)]
        .iter()
        .map(|&(n, d)| q(n, d))
        .collect()
}

fn gtilde(example: usize) -> FrameConnection<Rational> {
    load(&format!("example{example}"))
        .expect("bundled fixture")
        .connection_gtilde(&Rational::one())
        .expect("fixture extends")
}

#[test]
fn criterion_01_clifford_relations_are_exact() {
    let rep = spin_rep::<Rational>();
    assert_eq!(rep.len(), 7);
    let minus_two_id = Matrix::<Rational>::identity(8).map(|v| -(v.clone() * q(2, 1)));
    for i in 0..7 {
        for j in i..7 {
            let anti = rep[i].mul(&rep[j]).add(&rep[j].mul(&rep[i]));
            if i == j {
                assert!(anti == minus_two_id, "e{0}·e{0} + e{0}·e{0} ≠ −2·Id", i + 1);
            } else {
                assert!(anti.is_zero(), "e{}·e{} + e{}·e{} ≠ 0", i + 1, j + 1, j + 1, i + 1);
            }
        }
    }
}

#[test]
fn criterion_02_stable_form_from_the_reference_spinor() {
    let expected =
        parse_form::<Rational>("e147 - e237 + e567 + e125 + e136 + e246 - e345").unwrap();
    let phi = phi_from_spinor(&reference_spinor()).expect("nonzero spinor");
    assert!(
        phi.equals(&expected),
        "φ(Ψ) mismatch: expected {expected}, got {phi}"
    );
}

/// All 33 Table 2 entries (d, ∗, δ of the eleven ansatz monomials on the
/// running example, m = 1). The d(e237) entry is sign-corrected: the
/// displayed +2/5·e1257 contradicts dφ = 0 for the reference form, which the
/// final assertion witnesses.
#[test]
fn criterion_03_table_2_entries_reproduce_exactly() {
    const TABLE: [(&str, &str, &str, &str); 11] = [
        ("e125", "-6/5*e1257", "e3467", "2/5*e14 - 2/5*e23 + 2/5*e56"),
        ("e136", "0", "e2457", "0"),
        ("e246", "0", "e1357", "0"),
        ("e345", "0", "e1267", "0"),
        ("e126", "-3/5*e1267", "-e3457", "0"),
        ("e135", "-3/5*e1357", "-e2467", "0"),
        ("e245", "-3/5*e2457", "-e1367", "0"),
        ("e346", "-2/5*e1234 + 2/5*e1456 - 2/5*e2356 + 3/5*e3467", "-e1257", "0"),
        ("e147", "2/5*e1257", "e2356", "-2/5*e14"),
        ("e237", "-2/5*e1257", "e1456", "-2/5*e23"),
        ("e567", "2/5*e1257", "e1234", "-2/5*e56"),
    ];
    let conn = gtilde(2);
    for (mon, d_str, star_str, delta_str) in TABLE {
        let indices: Vec<u8> = mon[1..].bytes().map(|b| b - b'0').collect();
        let form = KForm::<Rational>::monomial(&indices);
        for (label, expected_str, got) in [
            ("d", d_str, conn.d(&form)),
            ("∗", star_str, form.hodge()),
            ("δ", delta_str, conn.delta(&form)),
        ] {
            let expected = parse_form::<Rational>(expected_str).unwrap();
            assert!(
                got.equals(&expected),
                "Table 2 row {mon}, column {label}: expected {expected}, got {got}"
            );
        }
    }
    // The sign correction above is forced: the reference form is closed.
    assert!(
        conn.d(&phi_base::<Rational>()).is_zero(),
        "dφ ≠ 0 on the running example"
    );
}

#[test]
fn criterion_04_calibration_fixes_the_constants_and_the_printed_matrices_match() {
    let conn = gtilde(2);
    let one = Rational::one();
    let zero = KForm::<Rational>::zero();
    let psi_ref = reference_spinor();
    let t12 = family_torsion(&q(1, 1), &q(2, 1), &one).expect("family torsion");
    let psi12 = psi_family(&q(1, 1), &q(2, 1));
    let witnesses = [
        (&conn, &zero, psi_ref.as_slice()),
        (&conn, &t12, psi12.as_slice()),
    ];

    // Both anchors are invariant under (lc, κ) → (c·lc, c·κ), so the passing
    // set cannot be a single pair: it is exactly the ray κ = 2·lc inside the
    // 6×6 grid, and the calibration is unique modulo that rescaling gauge.
    let passing = calibration_sweep(&witnesses, &[]);
    assert_eq!(
        passing,
        vec![((1, 2), (1, 1)), ((-1, 2), (-1, 1)), ((1, 4), (1, 2)), ((-1, 4), (-1, 2))],
        "passing set is not the κ = 2·lc ray"
    );
    let constants = calibrate(&witnesses, &[]).expect("calibration succeeds");
    assert_eq!(constants, CANONICAL_CONSTANTS);
    assert_eq!(constants.lift, (1, 2));
    assert_eq!(constants.torsion, (1, 1));

    // With the calibrated conventions, the Koszul + conformal-change pipeline
    // reproduces the displayed connection matrices of the running example
    // entry by entry.
    const PRINTED: [&[(u8, u8, i64, i64)]; 7] = [
        &[(1, 7, -2, 5), (3, 5, -1, 5), (2, 6, 1, 5)],
        &[(1, 6, -1, 5), (2, 7, -2, 5), (4, 5, -1, 5)],
        &[(1, 5, -1, 5), (3, 7, 1, 5)],
        &[(2, 5, -1, 5), (4, 7, 1, 5)],
        &[(1, 3, -1, 5), (2, 4, -1, 5), (5, 7, -2, 5)],
        &[(1, 2, -1, 5), (6, 7, 1, 5)],
        &[],
    ];
    for (i, entries) in PRINTED.iter().enumerate() {
        let frame = (i + 1) as u8;
        let mut expected = vec![vec![q(0, 1); 8]; 8];
        for &(j, k, n, d) in *entries {
            expected[j as usize][k as usize] = q(n, d);
            expected[k as usize][j as usize] = q(-n, d);
        }
        for j in 1..=7u8 {
            for k in 1..=7u8 {
                let got = conn.coefficient(frame, j, k);
                assert!(
                    got == expected[j as usize][k as usize],
                    "Γ̃^({frame}) entry ({j}, {k}): expected {}, got {got}",
                    expected[j as usize][k as usize]
                );
            }
        }
    }
}

#[test]
fn criterion_05_catalogued_solutions_verify_and_the_search_recovers_only_them() {
    let conn = gtilde(2);
    let one = Rational::one();

    // (T_{r,s}, ψ_{r,s}) is parallel at every grid point, exactly.
    for r in grid() {
        for s in grid() {
            if r.is_zero() && s.is_zero() {
                continue;
            }
            let torsion = family_torsion(&r, &s, &one).expect("nonzero point");
            if r == s {
                assert!(torsion.is_zero(), "T_({r},{r}) ≠ 0");
            }
            let psi = psi_family(&r, &s);
            let (ok, worst) = verify_parallel(&conn, &torsion, &psi, CANONICAL_CONSTANTS);
            assert!(ok, "(T, ψ) at (r, s) = ({r}, {s}) is not parallel: residual entry {worst}");
        }
    }

    // All six isolated solutions verify exactly.
    let solutions = isolated_solutions();
    assert_eq!(solutions.len(), 6);
    for sol in &solutions {
        let (ok, worst) = verify_parallel(&conn, &sol.torsion, &sol.psi, CANONICAL_CONSTANTS);
        assert!(ok, "{} is not parallel: residual entry {worst}", sol.label);
    }

    // A 500-start numeric search on the running example finds candidates and
    // every one of them lies on the known solution set.
    let cfg = SearchConfig { starts: 500, ..SearchConfig::default() };
    let numeric = conn.map_scalars(rational_to_f64);
    let found = numeric_search(&numeric, &cfg);
    assert!(!found.is_empty(), "500-start search found nothing");
    for cand in &found {
        let dist = catalog_distance_example2(cand);
        assert!(
            dist < 1e-6,
            "candidate off the known solution set: ∞-distance {dist:.3e}, torsion norm {:.3e}",
            cand.torsion_norm
        );
    }
}

#[test]
fn criterion_06_torsion_component_machinery() {
    let fixture = load("example2").expect("bundled fixture");

    // Base form under the plain (un-conformal) metric: pure τ4 with
    // τ4 = m·e7, for two symbolic slopes m.
    let phi = phi_base::<Rational>();
    for m in [q(1, 1), q(3, 7)] {
        let conn_g = fixture.connection_g(&m).expect("fixture extends");
        let comps = tau_extract(&conn_g, &phi).expect("components defined");
        assert_eq!(comps.class_label(), "R⁷", "base φ at m = {m} is not pure τ4");
        assert!(
            comps.tau4.equals(&KForm::monomial(&[7]).scale_by(&m)),
            "τ4 ≠ m·e7 at m = {m}: got {}",
            comps.tau4
        );
        assert!(comps.reconstructs(&phi), "reconstruction fails for base φ at m = {m}");
    }

    // The family over the grid, m = 1: τ2 vanishes, τ1 vanishes on r = −s,
    // δφ has the displayed closed form, and both reconstruction identities
    // hold exactly. Alongside, evaluate the displayed τ1 polynomial.
    let conn = gtilde(2);
    let omega_form = omega::<Rational>();
    let three_tenths = q(3, 10);
    let twelve_35 = q(12, 35);
    let mut tau1_mismatches: Vec<(Rational, Rational, Rational, Rational)> = Vec::new();
    let mut points = 0usize;
    for r in grid() {
        for s in grid() {
            if r.is_zero() && s.is_zero() {
                continue;
            }
            points += 1;
            let phi_rs = phi_family(&r, &s);
            let comps = tau_extract(&conn, &phi_rs).expect("components defined");
            assert!(comps.tau2.is_zero(), "τ2 ≠ 0 at ({r}, {s})");
            if r == -s.clone() {
                assert!(comps.tau1.is_zero(), "τ1 ≠ 0 at (r, −r) = ({r}, {s})");
            }
            let rs2 = r.clone() * r.clone() + s.clone() * s.clone();
            let diff = r.clone() - s.clone();
            let delta_expected =
                omega_form.scale_by(&(-(diff.clone() * diff.clone()) / q(5, 1)));
            assert!(
                comps.delta_phi.equals(&delta_expected),
                "δφ ≠ −(1/5)(r−s)²·ω at ({r}, {s}): got {}",
                comps.delta_phi
            );
            assert!(comps.reconstructs(&phi_rs), "reconstruction fails at ({r}, {s})");

            // Provenance facts for the τ1 clause below, both exact:
            // ⟨dφ, ∗φ⟩ = −(3/10)(r²−s²)·(2r²+2s²) on the nose, and the
            // normalized τ1 = ⟨dφ, ∗φ⟩/(7t²) has the closed form
            // (12/35)(s²−r²)/(r²+s²).
            let r2_minus_s2 = r.clone() * r.clone() - s.clone() * s.clone();
            let pairing = comps.dphi.inner(&phi_rs.hodge());
            assert!(
                pairing
                    == -(three_tenths.clone() * r2_minus_s2.clone() * q(2, 1) * rs2.clone()),
                "⟨dφ, ∗φ⟩ ≠ −(3/10)(r²−s²)(2r²+2s²) at ({r}, {s})"
            );
            assert!(
                comps.tau1 == -(twelve_35.clone() * r2_minus_s2.clone()) / rs2.clone(),
                "τ1 ≠ (12/35)(s²−r²)/(r²+s²) at ({r}, {s})"
            );

            // The displayed closed form for τ1 (m = 1).
            let displayed = -(three_tenths.clone()
                * r2_minus_s2.clone()
                * (q(2, 1) * rs2.clone() - r.clone() * s.clone()));
            if comps.tau1 != displayed {
                tau1_mismatches.push((r.clone(), s.clone(), comps.tau1.clone(), displayed));
            }
        }
    }

    if !tau1_mismatches.is_empty() {
        let (r, s, got, displayed) = &tau1_mismatches[0];
        panic!(
            "the displayed τ1 closed form −(3m/10)(r²−s²)(2r²+2s²−rs) disagrees with the exact \
             computation at {}/{points} grid points (every point off the two diagonals r = ±s, \
             where both sides vanish); first \
             counterexample (r, s) = ({r}, {s}): computed τ1 = {got}, displayed polynomial = \
             {displayed}.\n\
             The clause is internally contradictory, not an implementation gap:\n\
             (1) τ1 is invariant under (r, s) ↦ (t·r, t·s) — φ is quadratic in ψ_{{r,s}} and τ1 \
             is a ratio of pairings quadratic in φ — while the displayed polynomial is \
             homogeneous of degree 4, so no normalization reconciles them;\n\
             (2) the unnormalized pairing ⟨dφ, ∗φ⟩ equals −(3m/10)(r²−s²)·(2r²+2s²) exactly \
             (asserted above on the full grid): the displayed polynomial is that pairing with a \
             stray “−rs” term, quoted as if it were τ1;\n\
             (3) with the normalization that makes this same criterion's reconstruction \
             identities hold exactly (τ1 = ⟨dφ, ∗φ⟩/(7t²), t² = ⟨φ, φ⟩/7), the honest closed \
             form is τ1 = (12m/35)(s²−r²)/(r²+s²), asserted above at every grid point.\n\
             Every other clause of this criterion passed before this check ran.",
            tau1_mismatches.len()
        );
    }
}

#[test]
fn criterion_07_family_classes_trace_the_ellipse() {
    let one = Rational::one();
    let four = q(4, 1);
    for r in grid() {
        for s in grid() {
            if r.is_zero() && s.is_zero() {
                continue;
            }
            let (lambda, mu) = lambda_mu(&r, &s).expect("nonzero point");
            let lhs = (mu.clone() - one.clone()) * (mu.clone() - one.clone())
                + four.clone() * lambda.clone() * lambda.clone();
            assert!(
                lhs == one,
                "(μ−1)² + 4λ² ≠ 1 at ({r}, {s}): λ = {lambda}, μ = {mu}, lhs = {lhs}"
            );
        }
    }
}

#[test]
fn criterion_08_levi_civita_kernel_dimensions_and_printed_spinors() {
    let rep = spin_rep::<Rational>();
    let half = q(1, 2);
    let psi_ref = reference_spinor();
    let spinor = |coords: [i64; 8]| -> Vec<Rational> {
        coords.iter().map(|&n| q(n, 1)).collect()
    };

    let expectations: [(usize, usize, Vec<Vec<Rational>>); 4] = [
        (
            1,
            4,
            vec![
                spinor([1, 1, 0, 0, 0, 0, 0, 0]),
                spinor([0, 0, -1, 1, 0, 0, 0, 0]),
                spinor([0, 0, 0, 0, 1, 1, 0, 0]),
                spinor([0, 0, 0, 0, 0, 0, -1, 1]),
            ],
        ),
        (3, 2, vec![psi_ref.clone(), spinor([1, 1, 1, -1, 0, 0, 0, 0])]),
        (5, 2, vec![psi_ref.clone(), spinor([-1, 1, 1, 1, 0, 0, 0, 0])]),
        (6, 1, vec![psi_ref.clone()]),
    ];
    for (example, dim, printed) in expectations {
        let conn = gtilde(example);
        let kernel = parallel_spinors(&spin_lift(&conn, &half, &rep));
        assert_eq!(
            kernel.len(),
            dim,
            "example ({example}): Levi-Civita parallel spinor space has dimension {}, expected \
             {dim}",
            kernel.len()
        );
        let span = Matrix::from_fn(8, kernel.len(), |r, c| kernel[c][r].clone());
        for (which, psi) in printed.iter().enumerate() {
            assert!(
                span.contains_in_span(psi),
                "example ({example}): printed spinor #{index} is not in the kernel span",
                index = which + 1
            );
        }
    }
}

#[test]
fn criterion_09_searches_yield_zero_candidates_on_examples_1_3_5_6() {
    let cfg = SearchConfig { starts: 1000, ..SearchConfig::default() };
    for example in [1usize, 3, 5, 6] {
        let numeric = gtilde(example).map_scalars(rational_to_f64);
        let found = numeric_search(&numeric, &cfg);
        assert!(
            found.is_empty(),
            "example ({example}): {} candidate(s) at residual < {:.0e} with torsion norm > \
             {:.0e}; first has residual {:.3e}, torsion norm {:.3e}",
            found.len(),
            cfg.residual_threshold,
            cfg.torsion_threshold,
            found[0].residual,
            found[0].torsion_norm
        );
    }
}

#[test]
fn criterion_10_complex_solutions_verify_over_the_quadratic_extension() {
    let conn = gtilde(4).map_scalars(|r| QuadExt::from_rational(r.clone()));
    let zero = Rational::zero();
    // Signs of the purely imaginary contraction entries (1,4), (2,3), (5,6)
    // in units of (8/3)·√2·i·ε, computed on the display-normalized torsion.
    let computed: [(char, [i64; 3]); 3] =
        [('a', [1, -1, -1]), ('b', [1, -1, 1]), ('c', [-1, -1, -1])];
    // The displayed note carries the same three patterns with the (a) and
    // (c) labels transposed; the multiset is asserted below.
    let displayed: [[i64; 3]; 3] = [[-1, -1, -1], [1, -1, 1], [1, -1, -1]];
    let pairs: [(usize, usize); 3] = [(0, 3), (1, 2), (4, 5)];

    for (case, pattern) in computed {
        for eps in [1i64, -1] {
            let sol = complex_solution(case, eps);
            let (ok, worst) = verify_parallel(&conn, &sol.torsion, &sol.psi, CANONICAL_CONSTANTS);
            assert!(ok, "{} is not parallel: residual entry {worst}", sol.label);

            let contraction = torsion_contraction(&complex_torsion_display(case, eps));
            for (k, &(i, j)) in pairs.iter().enumerate() {
                let expected = QuadExt::new(zero.clone(), q(8 * pattern[k] * eps, 3));
                assert!(
                    contraction[(i, j)] == expected,
                    "{}: contraction entry ({}, {}) is {}, expected {expected}",
                    sol.label,
                    i + 1,
                    j + 1,
                    contraction[(i, j)]
                );
            }
            for i in 0..7 {
                for j in 0..7 {
                    if pairs.contains(&(i, j)) || pairs.contains(&(j, i)) {
                        continue;
                    }
                    assert!(
                        contraction[(i, j)].is_rational(),
                        "{}: contraction entry ({}, {}) is not real: {}",
                        sol.label,
                        i + 1,
                        j + 1,
                        contraction[(i, j)]
                    );
                }
            }
        }
    }

    let mut computed_set: Vec<[i64; 3]> = computed.iter().map(|(_, p)| *p).collect();
    let mut displayed_set = displayed.to_vec();
    computed_set.sort_unstable();
    displayed_set.sort_unstable();
    assert_eq!(
        computed_set, displayed_set,
        "the displayed sign patterns are not a relabeling of the computed ones"
    );
}

#[test]
fn criterion_11_reduction_kernel_dimensions() {
    // Representatives of the four clean cases.
    let cases: [((i64, i64, i64), usize, ReductionCase); 4] = [
        ((1, -1, 0), 4, ReductionCase::A),
        ((1, 1, 0), 4, ReductionCase::C),
        ((1, 1, 2), 2, ReductionCase::B { eps: 1 }),
        ((2, 1, 1), 2, ReductionCase::D { eps: 1 }),
    ];
    for ((c147, c237, c567), dim, expected_case) in cases {
        let (kernel, case) =
            reduction_kernel(&q(c147, 1), &q(c237, 1), &q(c567, 1));
        assert_eq!(
            kernel.len(),
            dim,
            "c = ({c147}, {c237}, {c567}): kernel dimension {} ≠ {dim}",
            kernel.len()
        );
        assert_eq!(case, expected_case, "c = ({c147}, {c237}, {c567}): wrong case label");
    }

    // 100 random triples off the four conforming hyperplanes: trivial kernel.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sample = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=5);
        q(n, d)
    };
    let conforming = |a: &Rational, b: &Rational, c: &Rational| -> bool {
        for eps in [1i64, -1] {
            let e = q(eps, 1);
            let upper = a.clone() + b.clone() - e.clone() * c.clone();
            let lower = a.clone() - b.clone() - e * c.clone();
            if upper.is_zero() || lower.is_zero() {
                return true;
            }
        }
        false
    };
    let mut tested = 0usize;
    while tested < 100 {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        if (a.is_zero() && b.is_zero() && c.is_zero()) || conforming(&a, &b, &c) {
            continue;
        }
        let (kernel, case) = reduction_kernel(&a, &b, &c);
        assert!(
            kernel.is_empty() && case == ReductionCase::None,
            "non-conforming c = ({a}, {b}, {c}) got kernel dimension {} with case {case}",
            kernel.len()
        );
        tested += 1;
    }
}
