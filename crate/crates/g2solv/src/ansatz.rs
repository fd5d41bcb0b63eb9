//! The 11-dimensional torsion ansatz, the catalogued torsion/spinor
//! solutions (the two-parameter family, the six isolated real pairs, the
//! three complex families), the Ricci-style torsion contraction, and the
//! block-reduction kernel of the e_7-contracted torsion.

use crate::exterior::KForm;
use crate::g2::{eta_minus, eta_plus, lambda_mu, omega};
use crate::lie::FrameConnection;
use crate::linalg::Matrix;
use crate::scalar::{QuadExt, Rational, Scalar};
use crate::spin::{spin_rep, torsion_connection, ConventionConstants};
use std::fmt;

/// The monomials spanning the torsion search space, in canonical order.
pub const ANSATZ_MONOMIALS: [[u8; 3]; 11] = [
    [1, 2, 5],
    [1, 3, 6],
    [2, 4, 6],
    [3, 4, 5],
    [1, 2, 6],
    [3, 4, 6],
    [1, 3, 5],
    [2, 4, 5],
    [1, 4, 7],
    [5, 6, 7],
    [2, 3, 7],
];

/// A 3-form constrained to the 11-monomial span, stored as a coefficient
/// vector in `ANSATZ_MONOMIALS` order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionAnsatz<F: Scalar> {
    pub coeffs: [F; 11],
}

impl<F: Scalar> TorsionAnsatz<F> {
    pub fn zero() -> Self {
        TorsionAnsatz { coeffs: std::array::from_fn(|_| F::zero()) }
    }

    pub fn to_form(&self) -> KForm<F> {
        let mut out = KForm::zero();
        for (c, idx) in self.coeffs.iter().zip(ANSATZ_MONOMIALS.iter()) {
            if !c.is_zero() {
                out.add_term(c.clone(), idx);
            }
        }
        out
    }

    /// Fails when the form has support outside the 11-monomial span.
    pub fn from_form(form: &KForm<F>) -> Result<Self, String> {
        let mut coeffs: [F; 11] = std::array::from_fn(|_| F::zero());
        for (idx, c) in form.terms() {
            match ANSATZ_MONOMIALS.iter().position(|m| m.as_slice() == idx.as_slice()) {
                Some(pos) => coeffs[pos] = c.clone(),
                None => {
                    return Err(format!(
                        "monomial e{}{}{} lies outside the torsion ansatz span",
                        idx[0], idx[1], idx[2]
                    ))
                }
            }
        }
        Ok(TorsionAnsatz { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }
}

/// A catalogued (torsion, spinor) pair.
#[derive(Clone, Debug)]
pub struct SolutionRecord<F: Scalar> {
    pub label: String,
    /// Torsion that actually verifies (exactly parallel spinor).
    pub torsion: KForm<F>,
    /// Torsion as displayed in the source write-up (differs from `torsion`
    /// exactly when `erratum` is set).
    pub display_torsion: KForm<F>,
    pub psi: Vec<F>,
    /// The linear relation among c147, c237, c567 this solution satisfies.
    pub constraint: &'static str,
    pub erratum: Option<&'static str>,
}

/// T_{r,s} = −(m/10)·[λ·(η⁺ − 6e125) + μ·(η⁻ + 3e346)].
///
/// Returns `None` when r = s = 0.
pub fn family_torsion<F: Scalar>(r: &F, s: &F, m: &F) -> Option<KForm<F>> {
    let (lambda, mu) = lambda_mu(r, s)?;
    let six = F::from_int(6);
    let three = F::from_int(3);
    let a = eta_plus::<F>()
        .sub(&KForm::monomial(&[1, 2, 5]).scale_by(&six))
        .scale_by(&lambda);
    let b = eta_minus::<F>()
        .add(&KForm::monomial(&[3, 4, 6]).scale_by(&three))
        .scale_by(&mu);
    Some(a.add(&b).scale_by(&(-m.clone() / F::from_int(10))))
}

/// The family member (r,s) as a catalogued solution (m = 1 normalization).
pub fn family_solution<F: Scalar>(r: &F, s: &F) -> Option<SolutionRecord<F>> {
    let torsion = family_torsion(r, s, &F::one())?;
    Some(SolutionRecord {
        label: format!("family ({r},{s})"),
        display_torsion: torsion.clone(),
        torsion,
        psi: crate::g2::psi_family(r, s),
        constraint: "c147 = c237 = c567 = 0",
        erratum: None,
    })
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// The three isolated-pair building blocks: (η⁺-group, η⁻-group, e7-group)
/// with e7-group = (ω + w)∧e7 for the case's 2-form offset w.
fn isolated_groups(i: usize) -> (KForm<Rational>, KForm<Rational>, KForm<Rational>) {
    let four = q(4, 1);
    let plus_group;
    let minus_group;
    let w;
    match i {
        1 => {
            plus_group = eta_plus::<Rational>()
                .add(&KForm::monomial(&[1, 2, 5]).scale_by(&four))
                .sub(&KForm::monomial(&[2, 4, 6]).scale_by(&q(2, 1)));
            minus_group = eta_minus::<Rational>()
                .sub(&KForm::monomial(&[1, 3, 5]).scale_by(&q(2, 1)))
                .sub(&KForm::monomial(&[3, 4, 6]));
            w = KForm::monomial(&[2, 3]).scale_by(&q(-1, 1));
        }
        2 => {
            plus_group = eta_plus::<Rational>()
                .add(&KForm::monomial(&[1, 2, 5]).scale_by(&four))
                .sub(&KForm::monomial(&[1, 3, 6]).scale_by(&q(2, 1)));
            minus_group = eta_minus::<Rational>()
                .add(&KForm::monomial(&[2, 4, 5]).scale_by(&q(2, 1)))
                .sub(&KForm::monomial(&[3, 4, 6]));
            w = KForm::monomial(&[1, 4]);
        }
        3 => {
            plus_group = eta_plus::<Rational>()
                .add(&KForm::monomial(&[1, 2, 5]).scale_by(&four))
                .add(&KForm::monomial(&[3, 4, 5]).scale_by(&q(2, 1)));
            minus_group = eta_minus::<Rational>()
                .sub(&KForm::monomial(&[1, 2, 6]).scale_by(&q(2, 1)))
                .sub(&KForm::monomial(&[3, 4, 6]));
            w = KForm::monomial(&[5, 6]);
        }
        _ => panic!("isolated solutions are indexed 1..=3"),
    }
    let e7_group = omega::<Rational>().add(&w).wedge(&KForm::monomial(&[7]));
    (plus_group, minus_group, e7_group)
}

/// Isolated torsion exactly as displayed in the source write-up.
pub fn isolated_torsion_display(i: usize, eps: i64) -> KForm<Rational> {
    assert!(eps == 1 || eps == -1);
    let (plus_group, minus_group, e7_group) = isolated_groups(i);
    let e = q(eps, 1);
    // The display scales the η⁺ group by ε/2 for cases 1 and 2 but by a
    // plain 1/2 for case 3.
    let plus_scale = if i == 3 { q(1, 2) } else { e.clone() * q(1, 2) };
    plus_group
        .scale_by(&plus_scale)
        .add(&minus_group.scale_by(&q(1, 3)))
        .add(&e7_group.scale_by(&(-e * q(2, 3))))
        .scale_by(&q(-1, 10))
}

pub fn isolated_spinor(i: usize, eps: i64) -> Vec<Rational> {
    let z = q(0, 1);
    let o = q(1, 1);
    match (i, eps) {
        (1, 1) => vec![z.clone(), o.clone(), z.clone(), -o, z.clone(), z.clone(), z.clone(), z],
        (1, -1) => vec![o.clone(), z.clone(), o, z.clone(), z.clone(), z.clone(), z.clone(), z],
        (2, 1) => vec![z.clone(), o.clone(), z.clone(), o, z.clone(), z.clone(), z.clone(), z],
        (2, -1) => vec![o.clone(), z.clone(), -o, z.clone(), z.clone(), z.clone(), z.clone(), z],
        (3, 1) => vec![z.clone(), z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), o, z],
        (3, -1) => vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), o.clone(), z, -o],
        _ => panic!("isolated solutions are indexed (1..=3, ±1)"),
    }
}

const ISOLATED_CONSTRAINTS: [&str; 3] = [
    "c147 = -c567 - c237",
    "c147 = c567 - c237",
    "c147 = c567 + c237",
];

/// The isolated solution (i, ε) with the torsion that actually makes the
/// spinor parallel. For (2,±1) and (3,+1) this is the displayed torsion;
/// the other three displays carry documented misprints.
pub fn isolated_solution(i: usize, eps: i64) -> SolutionRecord<Rational> {
    assert!(eps == 1 || eps == -1);
    let display = isolated_torsion_display(i, eps);
    let (torsion, erratum): (KForm<Rational>, Option<&'static str>) = match i {
        1 => {
            // Display pairs the spinor of sign ε with the torsion written for
            // −ε, and its η⁻ group has "−2e135" where "+2e135" is forced.
            let (plus_group, minus_group, e7_group) = isolated_groups(1);
            let e = q(eps, 1);
            let minus_fixed = minus_group.add(&KForm::monomial(&[1, 3, 5]).scale_by(&q(4, 1)));
            let t = plus_group
                .scale_by(&(-e.clone() * q(1, 2)))
                .add(&minus_fixed.scale_by(&q(1, 3)))
                .add(&e7_group.scale_by(&(e * q(2, 3))))
                .scale_by(&q(-1, 10));
            (t, Some("display swaps the ε-pairing and prints −2e135 for +2e135"))
        }
        2 => (display.clone(), None),
        3 => {
            if eps == 1 {
                (display.clone(), None)
            } else {
                // The η⁺ group factor must carry ε like cases 1 and 2.
                let (plus_group, minus_group, e7_group) = isolated_groups(3);
                let t = plus_group
                    .scale_by(&q(-1, 2))
                    .add(&minus_group.scale_by(&q(1, 3)))
                    .add(&e7_group.scale_by(&q(2, 3)))
                    .scale_by(&q(-1, 10));
                (t, Some("display drops ε from the η⁺-group factor (1/2 for ε/2)"))
            }
        }
        _ => panic!("isolated solutions are indexed 1..=3"),
    };
    SolutionRecord {
        label: format!("isolated ({i},{})", if eps == 1 { "+" } else { "-" }),
        torsion,
        display_torsion: display,
        psi: isolated_spinor(i, eps),
        constraint: ISOLATED_CONSTRAINTS[i - 1],
        erratum,
    }
}

pub fn isolated_solutions() -> Vec<SolutionRecord<Rational>> {
    let mut out = Vec::with_capacity(6);
    for i in 1..=3 {
        for eps in [1, -1] {
            out.push(isolated_solution(i, eps));
        }
    }
    out
}

fn qr(n: i64, d: i64) -> QuadExt {
    QuadExt::from_rational(Rational::from_ratio(n, d))
}

/// n/d · α, with α² = −2 (α plays the role of i√2).
fn qa(n: i64, d: i64) -> QuadExt {
    QuadExt::new(Rational::from_ratio(0, 1), Rational::from_ratio(n, d))
}

/// Complex-case torsion exactly as displayed (cases 'a', 'b', 'c').
pub fn complex_torsion_display(case: char, eps: i64) -> KForm<QuadExt> {
    assert!(eps == 1 || eps == -1);
    let e = qr(eps, 1);
    let ea = e.clone() * qa(1, 1);
    let (real_part, alpha_part, seven_part): (KForm<QuadExt>, KForm<QuadExt>, KForm<QuadExt>) =
        match case {
            'a' => (
                KForm::from_terms(&[
                    (qr(-4, 3), &[1, 2, 6]),
                    (qr(2, 3), &[1, 3, 5]),
                    (qr(-8, 3), &[2, 4, 5]),
                    (qr(2, 3), &[3, 4, 6]),
                ]),
                KForm::from_terms(&[
                    (qr(1, 1), &[1, 2, 5]),
                    (qr(1, 1), &[1, 3, 6]),
                    (qr(1, 1), &[2, 4, 6]),
                    (qr(1, 1), &[3, 4, 5]),
                ]),
                KForm::from_terms(&[
                    (qr(-1, 1), &[1, 4, 7]),
                    (qr(-1, 1), &[5, 6, 7]),
                    (qr(2, 1), &[2, 3, 7]),
                ]),
            ),
            'b' => (
                KForm::from_terms(&[
                    (qr(2, 3), &[1, 2, 6]),
                    (qr(-2, 3), &[1, 3, 5]),
                    (qr(8, 3), &[2, 4, 5]),
                    (qr(-4, 3), &[3, 4, 6]),
                ]),
                KForm::from_terms(&[
                    (qr(-1, 1), &[1, 2, 5]),
                    (qr(1, 1), &[1, 3, 6]),
                    (qr(1, 1), &[2, 4, 6]),
                    (qr(-1, 1), &[3, 4, 5]),
                ]),
                KForm::from_terms(&[
                    (qr(-1, 1), &[1, 4, 7]),
                    (qr(1, 1), &[5, 6, 7]),
                    (qr(2, 1), &[2, 3, 7]),
                ]),
            ),
            'c' => (
                KForm::from_terms(&[
                    (qr(2, 3), &[1, 2, 6]),
                    (qr(-4, 3), &[1, 3, 5]),
                    (qr(8, 3), &[2, 4, 5]),
                    (qr(-2, 3), &[3, 4, 6]),
                ]),
                KForm::from_terms(&[
                    (qr(1, 1), &[1, 2, 5]),
                    (qr(1, 1), &[1, 3, 6]),
                    (qr(-1, 1), &[2, 4, 6]),
                    (qr(-1, 1), &[3, 4, 5]),
                ]),
                KForm::from_terms(&[
                    (qr(1, 1), &[1, 4, 7]),
                    (qr(-1, 1), &[5, 6, 7]),
                    (qr(2, 1), &[2, 3, 7]),
                ]),
            ),
            _ => panic!("complex solutions are labelled 'a', 'b', 'c'"),
        };
    real_part
        .add(&alpha_part.scale_by(&ea))
        .add(&seven_part.scale_by(&(ea * qr(2, 3))))
}

pub fn complex_spinor(case: char, eps: i64) -> Vec<QuadExt> {
    let head = qr(1, 1) + qr(2 * eps, 1) * qa(1, 1); // 1 + 2εα
    let z = qr(0, 1);
    match case {
        'a' => vec![
            head.clone(),
            qr(3, 1),
            head,
            qr(-3, 1),
            z.clone(),
            z.clone(),
            z.clone(),
            z,
        ],
        'b' => {
            let mid = qr(-1, 1) + qr(2 * eps, 1) * qa(1, 1); // −1 + 2εα
            vec![
                qr(3, 1),
                mid.clone(),
                qr(-3, 1),
                mid,
                z.clone(),
                z.clone(),
                z.clone(),
                z,
            ]
        }
        'c' => vec![
            z.clone(),
            z.clone(),
            z.clone(),
            z,
            head.clone(),
            qr(3, 1),
            head,
            qr(-3, 1),
        ],
        _ => panic!("complex solutions are labelled 'a', 'b', 'c'"),
    }
}

/// The complex solution (case, ε): the verifying torsion is −1/10 of the
/// display (the display omits the −m/10 prefactor carried by every real
/// torsion display).
pub fn complex_solution(case: char, eps: i64) -> SolutionRecord<QuadExt> {
    let display = complex_torsion_display(case, eps);
    SolutionRecord {
        label: format!("complex ({case},{})", if eps == 1 { "+" } else { "-" }),
        torsion: display.scale_by(&qr(-1, 10)),
        display_torsion: display,
        psi: complex_spinor(case, eps),
        constraint: "c147, c237, c567 purely imaginary",
        erratum: Some("display omits the −1/10 prefactor"),
    }
}

pub fn complex_solutions() -> Vec<SolutionRecord<QuadExt>> {
    let mut out = Vec::with_capacity(6);
    for case in ['a', 'b', 'c'] {
        for eps in [1, -1] {
            out.push(complex_solution(case, eps));
        }
    }
    out
}

/// Contraction T(i,j) = Σ_{m<n} T_{imn}·T_{jmn} of a 3-form with itself
/// (the torsion contribution to the Ricci tensor, up to a constant).
pub fn torsion_contraction<F: Scalar>(t: &KForm<F>) -> Matrix<F> {
    assert_eq!(t.degree().unwrap_or(3), 3, "contraction expects a 3-form");
    let mut out = Matrix::zeros(7, 7);
    for i in 1..=7u8 {
        let ti = t.interior(i);
        for j in i..=7u8 {
            let v = ti.inner(&t.interior(j));
            out[((i - 1) as usize, (j - 1) as usize)] = v.clone();
            out[((j - 1) as usize, (i - 1) as usize)] = v;
        }
    }
    out
}

/// Exact parallelism check: do all seven torsion-connection matrices
/// annihilate ψ? Returns the verdict together with the largest residual
/// entry (as a magnitude hint; exactly 0 in exact arithmetic on success).
pub fn verify_parallel<F: Scalar>(
    conn: &FrameConnection<F>,
    torsion: &KForm<F>,
    psi: &[F],
    consts: ConventionConstants,
) -> (bool, f64) {
    assert!(!psi.iter().all(F::is_zero), "spinor must be nonzero");
    let rep = spin_rep::<F>();
    let mats = torsion_connection(conn, torsion, &consts.lc::<F>(), &consts.kappa::<F>(), &rep);
    let mut ok = true;
    let mut worst = 0.0f64;
    for m in &mats {
        for v in m.mul_vec(psi) {
            if !v.is_zero() {
                ok = false;
            }
            worst = worst.max(v.abs_hint());
        }
    }
    (ok, worst)
}

/// Which of the four linear block relations hold for (c147, c237, c567).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// c567 = 0, c147 = −c237: full upper block, dimension 4.
    A,
    /// c147 = −c237 + ε·c567 for exactly one ε: upper 2-dimensional block.
    B { eps: i8 },
    /// c567 = 0, c147 = c237: full lower block, dimension 4.
    C,
    /// c147 = c237 + ε·c567 for exactly one ε: lower 2-dimensional block.
    D { eps: i8 },
    /// One upper and one lower relation hold simultaneously.
    Mixed { upper_eps: i8, lower_eps: i8 },
    /// No relation holds: trivial kernel.
    None,
}

impl fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionCase::A => write!(f, "(A)"),
            ReductionCase::B { eps } => write!(f, "(B, ε={eps:+})"),
            ReductionCase::C => write!(f, "(C)"),
            ReductionCase::D { eps } => write!(f, "(D, ε={eps:+})"),
            ReductionCase::Mixed { upper_eps, lower_eps } => {
                write!(f, "(B, ε={upper_eps:+}) ∧ (D, ε={lower_eps:+})")
            }
            ReductionCase::None => write!(f, "(none)"),
        }
    }
}

/// Kernel of the Clifford action of c147·e14 + c237·e23 + c567·e56 (the
/// e_7-contraction of an ansatz torsion), with its case label.
///
/// Panics when all three coefficients vanish (the kernel is everything).
pub fn reduction_kernel<F: Scalar>(c147: &F, c237: &F, c567: &F) -> (Vec<Vec<F>>, ReductionCase) {
    assert!(
        !(c147.is_zero() && c237.is_zero() && c567.is_zero()),
        "all three coefficients vanish: the kernel is the whole spinor space"
    );
    let two_form = KForm::from_terms(&[
        (c147.clone(), &[1, 4]),
        (c237.clone(), &[2, 3]),
        (c567.clone(), &[5, 6]),
    ]);
    let rep = spin_rep::<F>();
    let kernel = crate::spin::clifford_matrix(&two_form, &rep).kernel();

    let upper: Vec<i8> = [1i8, -1]
        .into_iter()
        .filter(|&e| {
            (c147.clone() + c237.clone()
                - F::from_int(e as i64) * c567.clone())
            .is_zero()
        })
        .collect();
    let lower: Vec<i8> = [1i8, -1]
        .into_iter()
        .filter(|&e| {
            (c147.clone() - c237.clone()
                - F::from_int(e as i64) * c567.clone())
            .is_zero()
        })
        .collect();
    let case = match (upper.as_slice(), lower.as_slice()) {
        ([_, _], []) => ReductionCase::A,
        ([], [_, _]) => ReductionCase::C,
        ([e], []) => ReductionCase::B { eps: *e },
        ([], [e]) => ReductionCase::D { eps: *e },
        ([u], [l]) => ReductionCase::Mixed { upper_eps: *u, lower_eps: *l },
        ([], []) => ReductionCase::None,
        _ => unreachable!("both relations of a block cannot hold unless c567 = 0"),
    };
    (kernel, case)
}
