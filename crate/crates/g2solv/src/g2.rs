//! Stable 3-forms in dimension 7: the reference form, the two-parameter
//! family, torsion-component extraction (the four components τ₁…τ₄ of dφ and
//! δφ), and the classification of the resulting structure type.

use crate::exterior::KForm;
use crate::lie::FrameConnection;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use thiserror::Error;

/// ω = e14 − e23 + e56.
pub fn omega<F: Scalar>() -> KForm<F> {
    KForm::from_terms(&[
        (F::one(), &[1, 4]),
        (-F::one(), &[2, 3]),
        (F::one(), &[5, 6]),
    ])
}

/// η⁺ = e125 + e136 + e246 − e345.
pub fn eta_plus<F: Scalar>() -> KForm<F> {
    KForm::from_terms(&[
        (F::one(), &[1, 2, 5]),
        (F::one(), &[1, 3, 6]),
        (F::one(), &[2, 4, 6]),
        (-F::one(), &[3, 4, 5]),
    ])
}

/// η⁻ = e126 − e135 − e245 − e346.
pub fn eta_minus<F: Scalar>() -> KForm<F> {
    KForm::from_terms(&[
        (F::one(), &[1, 2, 6]),
        (-F::one(), &[1, 3, 5]),
        (-F::one(), &[2, 4, 5]),
        (-F::one(), &[3, 4, 6]),
    ])
}

/// The reference stable form φ = ω∧e7 + η⁺.
pub fn phi_base<F: Scalar>() -> KForm<F> {
    omega::<F>().wedge(&KForm::monomial(&[7])).add(&eta_plus())
}

/// Spinor ψ_{r,s} = (0,0,0,0,r,s,−r,s).
pub fn psi_family<F: Scalar>(r: &F, s: &F) -> Vec<F> {
    vec![
        F::zero(),
        F::zero(),
        F::zero(),
        F::zero(),
        r.clone(),
        s.clone(),
        -r.clone(),
        s.clone(),
    ]
}

/// φ_{r,s} = rs·η⁺ + ((s²−r²)/2)·η⁻ + ((r²+s²)/2)·ω∧e7.
pub fn phi_family<F: Scalar>(r: &F, s: &F) -> KForm<F> {
    let half = F::from_ratio(1, 2);
    let r2 = r.clone() * r.clone();
    let s2 = s.clone() * s.clone();
    let mut out = eta_plus::<F>().scale_by(&(r.clone() * s.clone()));
    out = out.add(&eta_minus().scale_by(&((s2.clone() - r2.clone()) * half.clone())));
    out = out.add(
        &omega()
            .wedge(&KForm::monomial(&[7]))
            .scale_by(&((r2 + s2) * half)),
    );
    out
}

/// Shape coordinates of the family member (r,s):
/// λ = (r²−s²)/(2(r²+s²)), μ = (r−s)²/(r²+s²).
///
/// Returns `None` when r = s = 0.
pub fn lambda_mu<F: Scalar>(r: &F, s: &F) -> Option<(F, F)> {
    let r2 = r.clone() * r.clone();
    let s2 = s.clone() * s.clone();
    let denom = r2.clone() + s2.clone();
    if denom.is_zero() {
        return None;
    }
    let lambda = (r2.clone() - s2.clone()) / (denom.clone() + denom.clone());
    let diff = r.clone() - s.clone();
    let mu = diff.clone() * diff / denom;
    Some((lambda, mu))
}

#[derive(Debug, Error)]
pub enum TauError {
    #[error("‖φ‖²/7 = {0} is not a perfect square in the scalar field")]
    NonSquareNorm(String),
    #[error("the δφ remainder does not lie in the 14-dimensional component (residual {0})")]
    Tau2Inconsistent(String),
}

/// The four torsion components of a stable form under a torsion-free metric
/// connection, normalized so that
///   dφ = τ₁·∗φ + 3·τ₄∧φ + ∗τ₃  and  δφ = −4·∗(τ₄∧∗φ) + ∗(τ₂∧φ).
#[derive(Clone, Debug)]
pub struct TorsionComponents<F: Scalar> {
    pub tau1: F,
    pub tau2: KForm<F>,
    pub tau3: KForm<F>,
    pub tau3_star: KForm<F>,
    pub tau4: KForm<F>,
    pub t: F,
    pub dphi: KForm<F>,
    pub delta_phi: KForm<F>,
    pub cosymplectic: bool,
}

impl<F: Scalar> TorsionComponents<F> {
    /// Nonzero components as (index, component-space name) pairs, in order.
    pub fn active(&self) -> Vec<(u8, &'static str)> {
        let mut out = Vec::new();
        if !self.tau1.is_zero() {
            out.push((1, "R"));
        }
        if !self.tau2.is_zero() {
            out.push((2, "g₂"));
        }
        if !self.tau3_star.is_zero() {
            out.push((3, "S²₀(R⁷)"));
        }
        if !self.tau4.is_zero() {
            out.push((4, "R⁷"));
        }
        out
    }

    /// Class label: the direct sum of the active component spaces, or
    /// "integrable" when every component vanishes.
    pub fn class_label(&self) -> String {
        let active = self.active();
        if active.is_empty() {
            "integrable".to_string()
        } else {
            active
                .iter()
                .map(|(_, name)| *name)
                .collect::<Vec<_>>()
                .join(" ⊕ ")
        }
    }

    /// Checks dφ = τ₁·∗φ + 3·τ₄∧φ + ∗τ₃ and δφ = −4·∗(τ₄∧∗φ) + ∗(τ₂∧φ)
    /// with the extracted values, plus ∗∗τ₃ = ∗τ₃ consistency.
    pub fn reconstructs(&self, phi: &KForm<F>) -> bool {
        let star_phi = phi.hodge();
        let three = F::from_int(3);
        let four = F::from_int(4);
        let d_rebuilt = star_phi
            .scale_by(&self.tau1)
            .add(&self.tau4.wedge(phi).scale_by(&three))
            .add(&self.tau3_star);
        let delta_rebuilt = self
            .tau4
            .wedge(&star_phi)
            .hodge()
            .scale_by(&-four)
            .add(&self.tau2.wedge(phi).hodge());
        d_rebuilt.equals(&self.dphi)
            && delta_rebuilt.equals(&self.delta_phi)
            && self.tau3.hodge().equals(&self.tau3_star)
    }
}

/// Extracts the torsion components of φ under the connection.
pub fn tau_extract<F: Scalar>(
    conn: &FrameConnection<F>,
    phi: &KForm<F>,
) -> Result<TorsionComponents<F>, TauError> {
    let seven = F::from_int(7);
    let norm2 = phi.inner(phi);
    let t2 = norm2 / seven.clone();
    let t = t2
        .try_sqrt()
        .ok_or_else(|| TauError::NonSquareNorm(format!("{t2}")))?;
    let star_phi = phi.hodge();
    let dphi = conn.d(phi);
    let delta_phi = conn.delta(phi);

    let tau1 = dphi.inner(&star_phi) / (seven * t2.clone());
    let twelve = F::from_int(12);
    let tau4 = dphi
        .hodge()
        .wedge(phi)
        .hodge()
        .scale_by(&(-F::one() / (twelve * t2)));
    let three = F::from_int(3);
    let tau3_star = dphi
        .sub(&star_phi.scale_by(&tau1))
        .sub(&tau4.wedge(phi).scale_by(&three));
    let tau3 = tau3_star.hodge();

    // ∗(τ₂∧φ) = δφ + 4·∗(τ₄∧∗φ); on the 14-dimensional component the map
    // β ↦ ∗(β∧φ) is t·id, so τ₂ = rhs/t once rhs is confirmed to lie there.
    let four = F::from_int(4);
    let rhs2 = delta_phi.add(&tau4.wedge(&star_phi).hodge().scale_by(&four));
    let image = rhs2.wedge(phi).hodge();
    let residual = image.sub(&rhs2.scale_by(&t));
    if !residual.is_zero() {
        return Err(TauError::Tau2Inconsistent(format!("{}", residual.max_abs())));
    }
    let tau2 = rhs2.scale_by(&(F::one() / t.clone()));

    let cosymplectic = conn.d(&star_phi).is_zero();
    Ok(TorsionComponents {
        tau1,
        tau2,
        tau3,
        tau3_star,
        tau4,
        t,
        dphi,
        delta_phi,
        cosymplectic,
    })
}

/// Basis of 2-form monomials e_ij (i < j), in lexicographic order (21 of them).
pub fn two_form_basis() -> Vec<[u8; 2]> {
    let mut out = Vec::with_capacity(21);
    for i in 1..=7u8 {
        for j in (i + 1)..=7u8 {
            out.push([i, j]);
        }
    }
    out
}

/// The 21×21 matrix of β ↦ ∗(β∧φ) on 2-forms in the monomial basis.
pub fn two_form_operator<F: Scalar>(phi: &KForm<F>) -> Matrix<F> {
    let basis = two_form_basis();
    let mut m = Matrix::zeros(21, 21);
    for (col, idx) in basis.iter().enumerate() {
        let image = KForm::monomial(idx).wedge(phi).hodge();
        for (row, target) in basis.iter().enumerate() {
            m[(row, col)] = image.coeff(target);
        }
    }
    m
}

/// Dimension of the λ-eigenspace of β ↦ ∗(β∧φ) on 2-forms.
pub fn two_form_eigenspace_dim<F: Scalar>(phi: &KForm<F>, lambda: &F) -> usize {
    let m = two_form_operator(phi);
    let shifted = m.sub(&Matrix::identity(21).map(|v: &F| v.clone() * lambda.clone()));
    shifted.kernel().len()
}
