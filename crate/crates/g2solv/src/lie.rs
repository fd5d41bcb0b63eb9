//! Six-dimensional nilpotent Lie algebras given in differential ("tuple")
//! notation, their rank-one solvable extensions with diagonal derivation,
//! the Koszul Levi-Civita connection, conformal change, and pointwise d/δ of
//! frame-constant forms.

use crate::exterior::{parse_form, KForm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("tuple literal must be parenthesized: '{0}'")]
    NotParenthesized(String),
    #[error("expected 6 slots, found {0}")]
    WrongSlotCount(usize),
    #[error("slot {slot}: {message}")]
    BadSlot { slot: usize, message: String },
    #[error("slot {slot} must be a 2-form, found degree {found}")]
    WrongDegree { slot: usize, found: usize },
    #[error("Jacobi identity fails on the triple (e{0}, e{1}, e{2})")]
    JacobiFailure(u8, u8, u8),
}

/// A 6-dimensional nilpotent algebra in differential notation: slot k holds
/// the 2-form d̂e_k, so a term c·e_ij in slot k encodes d̂e_k(e_i,e_j) = c.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra<F: Scalar> {
    pub slots: Vec<KForm<F>>,
    pub source: String,
}

/// Parses a tuple literal such as `(0,0,e15,e25,0,e12)`.
///
/// Each slot is `0` or a signed e-monomial sum in the shared form grammar.
pub fn parse_algebra<F: Scalar>(spec: &str) -> Result<NilpotentAlgebra<F>, AlgebraError> {
    let s = spec.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| AlgebraError::NotParenthesized(s.into()))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 6 {
        return Err(AlgebraError::WrongSlotCount(parts.len()));
    }
    let mut slots = Vec::with_capacity(6);
    for (k, part) in parts.iter().enumerate() {
        let form = parse_form::<F>(part)
            .map_err(|message| AlgebraError::BadSlot { slot: k + 1, message })?;
        if let Some(deg) = form.degree() {
            if deg != 2 {
                return Err(AlgebraError::WrongDegree { slot: k + 1, found: deg });
            }
            for (idx, _) in form.terms() {
                if idx.iter().any(|&i| i > 6) {
                    return Err(AlgebraError::BadSlot {
                        slot: k + 1,
                        message: format!("index above 6 in e{}{}", idx[0], idx[1]),
                    });
                }
            }
        }
        slots.push(form);
    }
    let algebra = NilpotentAlgebra { slots, source: s.to_string() };
    algebra.check_jacobi()?;
    Ok(algebra)
}

impl<F: Scalar> NilpotentAlgebra<F> {
    /// Structure constants in bracket form: de_k(e_i,e_j) = −c^k_ij, so
    /// slot term c·e_ij gives [e_i,e_j] = −c·e_k.
    pub fn ce_brackets(&self) -> BracketTable<F> {
        let mut table = BracketTable::new();
        for (k, slot) in self.slots.iter().enumerate() {
            for (idx, c) in slot.terms() {
                table.add(idx[0], idx[1], (k + 1) as u8, -c.clone());
            }
        }
        table
    }

    fn check_jacobi(&self) -> Result<(), AlgebraError> {
        self.ce_brackets().check_jacobi(6)
    }

    /// Rank-one solvable extension: the tuple is read positively, so a slot-k
    /// term c·e_ij gives [e_i,e_j] = c·s·m·e_k, and the derivation acts as
    /// [e_i, e_7] = −C_i·m·e_i.
    pub fn extend(
        &self,
        eigenvalues: &[F; 6],
        s: &F,
        m: &F,
    ) -> Result<SolvableExtension<F>, AlgebraError> {
        let mut table = BracketTable::new();
        let factor = s.clone() * m.clone();
        for (k, slot) in self.slots.iter().enumerate() {
            for (idx, c) in slot.terms() {
                table.add(idx[0], idx[1], (k + 1) as u8, c.clone() * factor.clone());
            }
        }
        for i in 1..=6u8 {
            table.add(i, 7, i, -(eigenvalues[(i - 1) as usize].clone() * m.clone()));
        }
        table.check_jacobi(7)?;
        Ok(SolvableExtension { brackets: table })
    }
}

/// Antisymmetric bracket table [e_i,e_j] = Σ_k c^k_ij e_k, stored for i < j.
#[derive(Clone, Debug, Default)]
pub struct BracketTable<F: Scalar> {
    entries: BTreeMap<(u8, u8), BTreeMap<u8, F>>,
}

impl<F: Scalar> BracketTable<F> {
    pub fn new() -> Self {
        BracketTable { entries: BTreeMap::new() }
    }

    pub fn add(&mut self, i: u8, j: u8, k: u8, c: F) {
        if c.is_zero() || i == j {
            return;
        }
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let slot = self.entries.entry((i, j)).or_default();
        let entry = slot.entry(k).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            slot.remove(&k);
        }
    }

    /// Structure constant c^k_ij (antisymmetric in i, j).
    pub fn constant(&self, i: u8, j: u8, k: u8) -> F {
        if i == j {
            return F::zero();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let c = self
            .entries
            .get(&(a, b))
            .and_then(|m| m.get(&k))
            .cloned()
            .unwrap_or_else(F::zero);
        if flip {
            -c
        } else {
            c
        }
    }

    /// [e_i, e_j] as a 1-form (coefficient vector over the frame).
    pub fn bracket(&self, i: u8, j: u8) -> KForm<F> {
        let mut out = KForm::zero();
        for k in 1..=crate::exterior::DIM {
            let c = self.constant(i, j, k);
            if !c.is_zero() {
                out.add_term(c, &[k]);
            }
        }
        out
    }

    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.entries
            .iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(&(i, j), _)| (i, j))
    }

    pub fn check_jacobi(&self, dim: u8) -> Result<(), AlgebraError> {
        for i in 1..=dim {
            for j in (i + 1)..=dim {
                for k in (j + 1)..=dim {
                    // Σ_cyc [[e_i,e_j],e_k] coefficient-wise
                    let mut acc = vec![F::zero(); dim as usize];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for l in 1..=dim {
                            let cl = self.constant(a, b, l);
                            if cl.is_zero() {
                                continue;
                            }
                            for t in 1..=dim {
                                let ct = self.constant(l, c, t);
                                if !ct.is_zero() {
                                    let slot = &mut acc[(t - 1) as usize];
                                    *slot = slot.clone() + cl.clone() * ct;
                                }
                            }
                        }
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(AlgebraError::JacobiFailure(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Chevalley–Eilenberg differential on a frame-constant form:
    /// d e^l = −Σ_{i<j} c^l_ij e^i∧e^j, extended as an antiderivation.
    pub fn ce_differential(&self, a: &KForm<F>) -> KForm<F> {
        let mut out = KForm::zero();
        for (key, v) in a.terms() {
            for (pos, &l) in key.iter().enumerate() {
                // Replace factor e^l by de^l with the antiderivation sign.
                let sign = if pos % 2 == 0 { F::one() } else { -F::one() };
                for i in 1..=crate::exterior::DIM {
                    for j in (i + 1)..=crate::exterior::DIM {
                        let c = self.constant(i, j, l);
                        if c.is_zero() {
                            continue;
                        }
                        let mut idx: Vec<u8> = Vec::with_capacity(key.len() + 1);
                        idx.push(i);
                        idx.push(j);
                        idx.extend(key.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &q)| q));
                        out.add_term(-(v.clone() * c.clone() * sign.clone()), &idx);
                    }
                }
            }
        }
        out
    }

    /// Verifies d∘d = 0 on every frame covector (equivalent to Jacobi).
    pub fn check_d_squared(&self, dim: u8) -> Result<(), AlgebraError> {
        for l in 1..=dim {
            let dd = self.ce_differential(&self.ce_differential(&KForm::monomial(&[l])));
            if !dd.is_zero() {
                // Identify a failing triple for the diagnostic.
                for i in 1..=dim {
                    for j in (i + 1)..=dim {
                        for k in (j + 1)..=dim {
                            if !dd.coeff(&[i, j, k]).is_zero() {
                                return Err(AlgebraError::JacobiFailure(i, j, k));
                            }
                        }
                    }
                }
                return Err(AlgebraError::JacobiFailure(0, 0, l));
            }
        }
        Ok(())
    }
}

/// The 7-dimensional solvable extension with its bracket table.
#[derive(Clone, Debug)]
pub struct SolvableExtension<F: Scalar> {
    pub brackets: BracketTable<F>,
}

/// Seven 7×7 skew matrices Γ⁽ⁱ⁾ with Γ⁽ⁱ⁾[j][k] = g(∇_{e_i} e_j, e_k) at the
/// base point (conformal factor normalized to 1).
#[derive(Clone, Debug, PartialEq)]
pub struct FrameConnection<F: Scalar> {
    pub gamma: Vec<Matrix<F>>,
}

impl<F: Scalar> FrameConnection<F> {
    pub fn zero() -> Self {
        FrameConnection { gamma: (0..7).map(|_| Matrix::zeros(7, 7)).collect() }
    }

    pub fn coefficient(&self, i: u8, j: u8, k: u8) -> F {
        self.gamma[(i - 1) as usize][((j - 1) as usize, (k - 1) as usize)].clone()
    }

    pub fn is_metric(&self) -> bool {
        self.gamma.iter().all(Matrix::is_skew_symmetric)
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> FrameConnection<G> {
        FrameConnection { gamma: self.gamma.iter().map(|g| g.map(f)).collect() }
    }

    /// Covariant derivative ∇_{e_i} of a frame-constant form.
    pub fn nabla(&self, i: u8, a: &KForm<F>) -> KForm<F> {
        let g = &self.gamma[(i - 1) as usize];
        let mut out = KForm::zero();
        for (key, v) in a.terms() {
            for (pos, &j) in key.iter().enumerate() {
                for k in 1..=7u8 {
                    let c = &g[((j - 1) as usize, (k - 1) as usize)];
                    if c.is_zero() {
                        continue;
                    }
                    let mut idx = key.clone();
                    idx[pos] = k;
                    out.add_term(v.clone() * c.clone(), &idx);
                }
            }
        }
        out
    }

    /// Exterior derivative d = Σ_i e^i ∧ ∇_{e_i}.
    pub fn d(&self, a: &KForm<F>) -> KForm<F> {
        let mut out = KForm::zero();
        for i in 1..=7u8 {
            out = out.add(&KForm::monomial(&[i]).wedge(&self.nabla(i, a)));
        }
        out
    }

    /// Codifferential δ = −Σ_i e_i ⨼ ∇_{e_i}.
    pub fn delta(&self, a: &KForm<F>) -> KForm<F> {
        let mut out = KForm::zero();
        for i in 1..=7u8 {
            out = out.sub(&self.nabla(i, a).interior(i));
        }
        out
    }

    /// Frame commutators recovered from torsion-freeness:
    /// [e_i,e_j] = ∇_{e_i}e_j − ∇_{e_j}e_i.
    pub fn brackets_from_connection(&self) -> BracketTable<F> {
        let mut table = BracketTable::new();
        for i in 1..=7u8 {
            for j in (i + 1)..=7u8 {
                for k in 1..=7u8 {
                    let c = self.coefficient(i, j, k) - self.coefficient(j, i, k);
                    table.add(i, j, k, c);
                }
            }
        }
        table
    }
}

/// Levi-Civita connection by the Koszul formula on an orthonormal frame:
/// 2Γ⁽ⁱ⁾[j][k] = c_ijk − c_jki + c_kij with c_ijk = g([e_i,e_j], e_k).
pub fn koszul<F: Scalar>(algebra: &SolvableExtension<F>) -> FrameConnection<F> {
    let half = F::from_ratio(1, 2);
    let c = |i: u8, j: u8, k: u8| algebra.brackets.constant(i, j, k);
    let gamma = (1..=7u8)
        .map(|i| {
            Matrix::from_fn(7, 7, |j0, k0| {
                let (j, k) = ((j0 + 1) as u8, (k0 + 1) as u8);
                (c(i, j, k) - c(j, k, i) + c(k, i, j)) * half.clone()
            })
        })
        .collect();
    FrameConnection { gamma }
}

/// Conformal change at the base point for a frame-constant differential df:
/// Γ̃⁽ⁱ⁾[j][k] = Γ⁽ⁱ⁾[j][k] + df(e_j)·δ_ik − δ_ij·df(e_k).
pub fn conformal_change<F: Scalar>(conn: &FrameConnection<F>, df: &KForm<F>) -> FrameConnection<F> {
    assert!(df.is_zero() || df.degree() == Some(1), "df must be a 1-form");
    let gamma = (1..=7u8)
        .map(|i| {
            Matrix::from_fn(7, 7, |j0, k0| {
                let (j, k) = ((j0 + 1) as u8, (k0 + 1) as u8);
                let mut v = conn.coefficient(i, j, k);
                if i == k {
                    v = v + df.coeff(&[j]);
                }
                if i == j {
                    v = v - df.coeff(&[k]);
                }
                v
            })
        })
        .collect();
    FrameConnection { gamma }
}

impl<F: Scalar> fmt::Display for BracketTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in self.nonzero_pairs() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "[e{i},e{j}] = {}", self.bracket(i, j))?;
        }
        if first {
            write!(f, "(abelian)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parse_reports_ce_brackets() {
        let a: NilpotentAlgebra<Rational> = parse_algebra("(0,0,e15,e25,0,e12)").unwrap();
        let b = a.ce_brackets();
        assert_eq!(b.constant(1, 5, 3), q(-1, 1));
        assert_eq!(b.constant(2, 5, 4), q(-1, 1));
        assert_eq!(b.constant(1, 2, 6), q(-1, 1));
        assert_eq!(b.constant(5, 1, 3), q(1, 1));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_algebra::<Rational>("(0,0,e15,0,0,e11)").is_err());
        assert!(parse_algebra::<Rational>("(0,0,e15,0,0)").is_err());
        assert!(parse_algebra::<Rational>("0,0,e15,0,0,e12").is_err());
        assert!(parse_algebra::<Rational>("(0,0,e157,0,0,0)").is_err());
    }

    #[test]
    fn abelian_parses_and_extends() {
        let a: NilpotentAlgebra<Rational> = parse_algebra("(0,0,0,0,0,0)").unwrap();
        assert!(a.ce_brackets().nonzero_pairs().next().is_none());
        let ones: [Rational; 6] = std::array::from_fn(|_| q(1, 1));
        let ext = a.extend(&ones, &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(ext.brackets.constant(3, 7, 3), q(-1, 1));
        // Abelian extension: zero connection off the e_7 interactions.
        let conn = koszul(&ext);
        assert!(conn.is_metric());
    }

    #[test]
    fn jacobi_diagnostic_names_failing_triple() {
        // [e1,e5] = -e2 and [e2,e3] = -e4 leave [[e5,e1],e3] = -e4 uncancelled.
        let err = parse_algebra::<Rational>("(0,e15,0,e23,0,0)").unwrap_err();
        assert!(matches!(err, AlgebraError::JacobiFailure(1, 3, 5)));
    }

    #[test]
    fn d_squared_matches_jacobi() {
        let a: NilpotentAlgebra<Rational> = parse_algebra("(0,0,e15,e25,0,e12)").unwrap();
        let c: [Rational; 6] =
            [q(3, 5), q(3, 5), q(6, 5), q(6, 5), q(3, 5), q(6, 5)];
        let ext = a.extend(&c, &q(2, 5), &q(1, 1)).unwrap();
        ext.brackets.check_d_squared(7).unwrap();
    }

    #[test]
    fn koszul_is_torsion_free_and_metric() {
        let a: NilpotentAlgebra<Rational> = parse_algebra("(0,0,e15,e25,0,e12)").unwrap();
        let c: [Rational; 6] =
            [q(3, 5), q(3, 5), q(6, 5), q(6, 5), q(3, 5), q(6, 5)];
        let ext = a.extend(&c, &q(2, 5), &q(1, 1)).unwrap();
        let conn = koszul(&ext);
        assert!(conn.is_metric());
        // ∇_{e_i}e_j − ∇_{e_j}e_i = [e_i,e_j]
        let recovered = conn.brackets_from_connection();
        for i in 1..=7u8 {
            for j in (i + 1)..=7u8 {
                for k in 1..=7u8 {
                    assert_eq!(recovered.constant(i, j, k), ext.brackets.constant(i, j, k));
                }
            }
        }
        // g(∇_{e_1}e_7, e_1) = −3/5 at m = 1
        assert_eq!(conn.coefficient(1, 7, 1), q(-3, 5));
    }

    #[test]
    fn conformal_change_with_zero_df_is_identity() {
        let a: NilpotentAlgebra<Rational> = parse_algebra("(0,0,e15,0,0,0)").unwrap();
        let c: [Rational; 6] = [q(2, 3), q(1, 1), q(4, 3), q(1, 1), q(2, 3), q(1, 1)];
        let ext = a.extend(&c, &q(2, 3), &q(1, 1)).unwrap();
        let conn = koszul(&ext);
        let same = conformal_change(&conn, &KForm::zero());
        assert_eq!(conn, same);
    }
}
