//! The 8-dimensional real spin representation in dimension 7: Clifford
//! multiplication, spin lifts of metric connections, connections with
//! totally skew torsion, parallel-spinor kernels, and the grid calibration
//! that pins down the lift and torsion constants.

use crate::exterior::KForm;
use crate::lie::FrameConnection;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Generators E_ab: the skew matrix sending basis vector a ↦ b, b ↦ −a
/// (1-based indices into ℝ⁸).
fn e_ab<F: Scalar>(a: usize, b: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(8, 8);
    m[(b - 1, a - 1)] = F::one();
    m[(a - 1, b - 1)] = -F::one();
    m
}

/// The seven 8×8 matrices giving Clifford multiplication by the frame
/// vectors e_1,…,e_7 on spinors, with e_i e_j + e_j e_i = −2δ_ij.
pub fn spin_rep<F: Scalar>() -> Vec<Matrix<F>> {
    let sum = |terms: &[(i64, usize, usize)]| -> Matrix<F> {
        let mut m = Matrix::zeros(8, 8);
        for &(s, a, b) in terms {
            let t = e_ab::<F>(a, b);
            m = if s > 0 { m.add(&t) } else { m.sub(&t) };
        }
        m
    };
    vec![
        sum(&[(1, 1, 8), (1, 2, 7), (-1, 3, 6), (-1, 4, 5)]),
        sum(&[(-1, 1, 7), (1, 2, 8), (1, 3, 5), (-1, 4, 6)]),
        sum(&[(-1, 1, 6), (1, 2, 5), (-1, 3, 8), (1, 4, 7)]),
        sum(&[(-1, 1, 5), (-1, 2, 6), (-1, 3, 7), (-1, 4, 8)]),
        sum(&[(-1, 1, 3), (-1, 2, 4), (1, 5, 7), (1, 6, 8)]),
        sum(&[(1, 1, 4), (-1, 2, 3), (-1, 5, 8), (1, 6, 7)]),
        sum(&[(1, 1, 2), (-1, 3, 4), (-1, 5, 6), (1, 7, 8)]),
    ]
}

/// Clifford multiplication of a form (degree ≤ 3) as an 8×8 matrix: each
/// monomial e_{i1…ip} acts as the product e_{i1}·…·e_{ip}.
pub fn clifford_matrix<F: Scalar>(form: &KForm<F>, rep: &[Matrix<F>]) -> Matrix<F> {
    let mut out = Matrix::zeros(8, 8);
    for (idx, c) in form.terms() {
        let mut prod = Matrix::identity(8);
        for &i in idx.iter().rev() {
            prod = rep[(i - 1) as usize].mul(&prod);
        }
        out = out.add(&prod.map(|v| v.clone() * c.clone()));
    }
    out
}

/// Clifford action of a form on a single spinor.
pub fn clifford_action<F: Scalar>(form: &KForm<F>, psi: &[F], rep: &[Matrix<F>]) -> Vec<F> {
    clifford_matrix(form, rep).mul_vec(psi)
}

/// Standard inner product on spinors.
pub fn spinor_inner<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// The stable 3-form attached to a unit spinor:
/// φ(e_i,e_j,e_k) = ¼⟨e_i·e_j·e_k·Ψ, Ψ⟩.
///
/// Returns `None` for the zero spinor.
pub fn phi_from_spinor<F: Scalar>(psi: &[F]) -> Option<KForm<F>> {
    if psi.iter().all(F::is_zero) {
        return None;
    }
    let rep = spin_rep::<F>();
    let quarter = F::from_ratio(1, 4);
    let mut phi = KForm::zero();
    for i in 1..=7u8 {
        for j in (i + 1)..=7u8 {
            for k in (j + 1)..=7u8 {
                let mut v = psi.to_vec();
                for idx in [k, j, i] {
                    v = rep[(idx - 1) as usize].mul_vec(&v);
                }
                let c = spinor_inner(&v, psi) * quarter.clone();
                if !c.is_zero() {
                    phi.add_term(c, &[i, j, k]);
                }
            }
        }
    }
    Some(phi)
}

/// Spin lift of a metric frame connection with lift constant `lc`:
/// ∇_{e_i} = ∂_i + lc·Σ_{j<k} Γ⁽ⁱ⁾[j][k]·e_j·e_k (frame-constant spinors,
/// so ∂_i drops out and the lift is seven 8×8 matrices).
pub fn spin_lift<F: Scalar>(conn: &FrameConnection<F>, lc: &F, rep: &[Matrix<F>]) -> Vec<Matrix<F>> {
    (0..7)
        .map(|i| {
            let mut m = Matrix::zeros(8, 8);
            for j in 0..7 {
                for k in (j + 1)..7 {
                    let g = conn.gamma[i][(j, k)].clone();
                    if g.is_zero() {
                        continue;
                    }
                    let prod = rep[j].mul(&rep[k]);
                    m = m.add(&prod.map(|v| v.clone() * g.clone() * lc.clone()));
                }
            }
            m
        })
        .collect()
}

/// Spinor connection with totally skew torsion T (a 3-form): the lift of the
/// metric connection plus κ·(e_i ⨼ T) acting by Clifford multiplication.
pub fn torsion_connection<F: Scalar>(
    conn: &FrameConnection<F>,
    torsion: &KForm<F>,
    lc: &F,
    kappa: &F,
    rep: &[Matrix<F>],
) -> Vec<Matrix<F>> {
    let mut mats = spin_lift(conn, lc, rep);
    for (i, m) in mats.iter_mut().enumerate() {
        let contracted = torsion.interior((i + 1) as u8);
        let cm = clifford_matrix(&contracted, rep).map(|v| v.clone() * kappa.clone());
        *m = m.add(&cm);
    }
    mats
}

/// Joint kernel of the seven connection matrices: a basis of the space of
/// parallel spinors.
pub fn parallel_spinors<F: Scalar>(mats: &[Matrix<F>]) -> Vec<Vec<F>> {
    let stacked = Matrix::vstack(mats);
    stacked.kernel()
}

/// Residual of a single spinor under the stacked connection (exact zero
/// means parallel).
pub fn parallel_residual<F: Scalar>(mats: &[Matrix<F>], psi: &[F]) -> F {
    let mut acc = F::zero();
    for m in mats {
        for v in m.mul_vec(psi) {
            acc = acc + v.clone() * v;
        }
    }
    acc
}

/// The constants fixed by calibration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConventionConstants {
    pub lift: (i64, i64),
    pub torsion: (i64, i64),
}

impl ConventionConstants {
    pub fn lc<F: Scalar>(&self) -> F {
        F::from_ratio(self.lift.0, self.lift.1)
    }
    pub fn kappa<F: Scalar>(&self) -> F {
        F::from_ratio(self.torsion.0, self.torsion.1)
    }
}

pub const CALIBRATION_GRID: [(i64, i64); 6] =
    [(1, 1), (-1, 1), (1, 2), (-1, 2), (1, 4), (-1, 4)];

/// The calibrated pair used everywhere else: lc = 1/2, κ = 1.
pub const CANONICAL_CONSTANTS: ConventionConstants =
    ConventionConstants { lift: (1, 2), torsion: (1, 1) };

/// Scans the 6×6 grid {±1, ±1/2, ±1/4}² of (lift, torsion) constants for the
/// pairs making the given witness spinors parallel under the given
/// connection/torsion data. The passing set is exactly the ray κ = 2·lc
/// inside the grid; the canonical representative (1/2, 1) is returned.
///
/// `witnesses` are (connection, torsion, spinor) triples that must all be
/// parallel; `rejects` are spinors that must *not* be parallel for the
/// pair to qualify (guards against degenerate constants).
pub fn calibrate<F: Scalar>(
    witnesses: &[(&FrameConnection<F>, &KForm<F>, &[F])],
    rejects: &[(&FrameConnection<F>, &KForm<F>, &[F])],
) -> Result<ConventionConstants, String> {
    let passing = calibration_sweep(witnesses, rejects);
    if passing.is_empty() {
        return Err("no (lift, torsion) pair on the grid calibrates".into());
    }
    // Every passing pair must lie on the ray κ = 2·lc; the scale is a gauge
    // freedom (torsion rescales inversely), so the set is a ray, not a point.
    for &((ln, ld), (kn, kd)) in &passing {
        if kn * ld != 2 * ln * kd {
            return Err(format!(
                "calibration passed off the κ = 2·lc ray: lc = {ln}/{ld}, κ = {kn}/{kd}"
            ));
        }
    }
    let canonical = ((1, 2), (1, 1));
    if !passing.contains(&canonical) {
        return Err("canonical pair (1/2, 1) did not calibrate".into());
    }
    Ok(ConventionConstants { lift: canonical.0, torsion: canonical.1 })
}

/// The raw sweep behind [`calibrate`]: every grid pair (lift, torsion) for
/// which all witnesses are parallel and no reject is.
pub fn calibration_sweep<F: Scalar>(
    witnesses: &[(&FrameConnection<F>, &KForm<F>, &[F])],
    rejects: &[(&FrameConnection<F>, &KForm<F>, &[F])],
) -> Vec<((i64, i64), (i64, i64))> {
    let rep = spin_rep::<F>();
    let mut passing: Vec<((i64, i64), (i64, i64))> = Vec::new();
    for &lift in CALIBRATION_GRID.iter() {
        for &torsion in CALIBRATION_GRID.iter() {
            let lc = F::from_ratio(lift.0, lift.1);
            let kappa = F::from_ratio(torsion.0, torsion.1);
            let ok = witnesses.iter().all(|(conn, t, psi)| {
                let mats = torsion_connection(*conn, t, &lc, &kappa, &rep);
                parallel_residual(&mats, psi).is_zero()
            }) && rejects.iter().all(|(conn, t, psi)| {
                let mats = torsion_connection(*conn, t, &lc, &kappa, &rep);
                !parallel_residual(&mats, psi).is_zero()
            });
            if ok {
                passing.push((lift, torsion));
            }
        }
    }
    passing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn clifford_relations_hold() {
        let rep = spin_rep::<Rational>();
        for i in 0..7 {
            for j in 0..7 {
                let anti = rep[i].mul(&rep[j]).add(&rep[j].mul(&rep[i]));
                let expected = if i == j {
                    Matrix::identity(8).map(|v: &Rational| -(v.clone() * q(2, 1)))
                } else {
                    Matrix::zeros(8, 8)
                };
                assert_eq!(anti, expected, "e{} e{} + e{} e{}", i + 1, j + 1, j + 1, i + 1);
            }
        }
    }

    #[test]
    fn generators_are_skew() {
        for m in spin_rep::<Rational>() {
            assert!(m.is_skew_symmetric());
        }
    }

    fn reference_spinor() -> Vec<Rational> {
        [0, 0, 0, 0, 1, 1, -1, 1].iter().map(|&n| q(n, 1)).collect()
    }

    #[test]
    fn phi_from_reference_spinor_is_the_standard_form() {
        let phi = phi_from_spinor(&reference_spinor()).unwrap();
        let expected = crate::g2::phi_base::<Rational>();
        assert!(phi.equals(&expected), "got {phi}");
    }

    #[test]
    fn phi_acts_as_plus_seven_on_its_spinor() {
        let psi = reference_spinor();
        let phi = phi_from_spinor(&psi).unwrap();
        let rep = spin_rep::<Rational>();
        let image = clifford_action(&phi, &psi, &rep);
        let expected: Vec<Rational> = psi.iter().map(|v| v.clone() * q(7, 1)).collect();
        assert_eq!(image, expected);
    }

    #[test]
    fn zero_spinor_is_rejected() {
        assert!(phi_from_spinor(&vec![q(0, 1); 8]).is_none());
    }

    #[test]
    fn interior_then_clifford_is_skew() {
        // e_i ⨼ T is a 2-form; its Clifford matrix must be skew.
        let t: KForm<Rational> =
            KForm::from_terms(&[(q(1, 4), &[1, 2, 5]), (q(-1, 15), &[3, 4, 6])]);
        let rep = spin_rep::<Rational>();
        for i in 1..=7u8 {
            assert!(clifford_matrix(&t.interior(i), &rep).is_skew_symmetric());
        }
    }

    #[test]
    fn parallel_spinors_of_zero_connection_is_everything() {
        let conn = FrameConnection::<Rational>::zero();
        let rep = spin_rep::<Rational>();
        let mats = spin_lift(&conn, &q(1, 2), &rep);
        assert_eq!(parallel_spinors(&mats).len(), 8);
    }
}
