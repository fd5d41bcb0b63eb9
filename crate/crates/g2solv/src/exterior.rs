//! Exterior algebra over an oriented orthonormal frame e_1,…,e_7: wedge,
//! interior product, Hodge star, inner product, and the form-literal parser.
//!
//! Monomials are kept as strictly increasing index tuples; the orientation is
//! fixed by e_1∧…∧e_7 = +vol.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Dimension of the frame.
pub const DIM: u8 = 7;

/// Strictly increasing tuple of frame indices in 1..=7.
pub type IndexTuple = Vec<u8>;

/// Sorts an index list, tracking the permutation sign; `None` on repeats.
pub fn canonical(indices: &[u8]) -> Option<(i8, IndexTuple)> {
    let mut idx = indices.to_vec();
    let mut sign = 1i8;
    // Insertion sort, counting inversions.
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, idx))
}

/// Exterior form with pruned, canonically sorted coefficient table.
///
/// The zero form carries no degree; all nonzero terms of one form must share
/// a degree (enforced on construction and preserved by the operations).
#[derive(Clone, PartialEq)]
pub struct KForm<F> {
    coeffs: BTreeMap<IndexTuple, F>,
}

impl<F: Scalar> Default for KForm<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> KForm<F> {
    pub fn zero() -> Self {
        KForm { coeffs: BTreeMap::new() }
    }

    /// Constant 0-form.
    pub fn constant(c: F) -> Self {
        let mut f = Self::zero();
        f.add_term(c, &[]);
        f
    }

    pub fn monomial(indices: &[u8]) -> Self {
        let mut f = Self::zero();
        f.add_term(F::one(), indices);
        f
    }

    pub fn from_terms(terms: &[(F, &[u8])]) -> Self {
        let mut f = Self::zero();
        for (c, idx) in terms {
            f.add_term(c.clone(), idx);
        }
        f
    }

    /// Adds `c·e_indices` (indices in any order) to the form.
    pub fn add_term(&mut self, c: F, indices: &[u8]) {
        assert!(
            indices.iter().all(|&i| (1..=DIM).contains(&i)),
            "frame index out of range in {indices:?}"
        );
        let Some((sign, key)) = canonical(indices) else { return };
        if !self.coeffs.is_empty() {
            let deg = self.coeffs.keys().next().unwrap().len();
            assert_eq!(deg, key.len(), "mixed degrees in one form");
        }
        let signed = if sign > 0 { c } else { -c };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(F::zero);
        *entry = entry.clone() + signed;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero form; `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next().map(Vec::len)
    }

    pub fn coeff(&self, indices: &[u8]) -> F {
        match canonical(indices) {
            Some((sign, key)) => {
                let c = self.coeffs.get(&key).cloned().unwrap_or_else(F::zero);
                if sign > 0 {
                    c
                } else {
                    -c
                }
            }
            None => F::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &F)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(v.clone(), k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_by(&-F::one())
    }

    pub fn scale_by(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(v.clone() * c.clone(), k);
        }
        out
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> KForm<G> {
        let mut out = KForm::zero();
        for (k, v) in &self.coeffs {
            out.add_term(f(v), k);
        }
        out
    }

    /// Wedge product; bilinear with the sign of index interleaving.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                out.add_term(va.clone() * vb.clone(), &idx);
            }
        }
        out
    }

    /// Hodge star for the orientation e_1∧…∧e_7 = +vol.
    pub fn hodge(&self) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            let comp: Vec<u8> = (1..=DIM).filter(|i| !k.contains(i)).collect();
            let mut perm = k.clone();
            perm.extend_from_slice(&comp);
            let (sign, _) = canonical(&perm).expect("complement is disjoint");
            let signed = if sign > 0 { v.clone() } else { -v.clone() };
            out.add_term(signed, &comp);
        }
        out
    }

    /// Interior product with the frame vector `e_x` (an antiderivation).
    pub fn interior(&self, x: u8) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            if let Some(pos) = k.iter().position(|&i| i == x) {
                let rest: Vec<u8> = k.iter().copied().filter(|&i| i != x).collect();
                let signed = if pos % 2 == 0 { v.clone() } else { -v.clone() };
                out.add_term(signed, &rest);
            }
        }
        out
    }

    /// Inner product making the monomials `e_I` orthonormal.
    pub fn inner(&self, other: &Self) -> F {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            assert_eq!(a, b, "inner product of mismatched degrees");
        }
        let mut acc = F::zero();
        for (k, v) in &self.coeffs {
            if let Some(w) = other.coeffs.get(k) {
                acc = acc + v.clone() * w.clone();
            }
        }
        acc
    }

    pub fn norm_squared(&self) -> F {
        self.inner(self)
    }

    /// Approximate Euclidean magnitude of the coefficient vector.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(Scalar::abs_hint).fold(0.0, f64::max)
    }

    /// True when the difference with `other` vanishes (tolerance-aware for
    /// doubles via [`Scalar::is_zero`]).
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<F: Scalar> fmt::Display for KForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let idx: String = k.iter().map(u8::to_string).collect();
            if k.is_empty() {
                write!(f, "({v})")?;
            } else {
                write!(f, "({v})e{idx}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for KForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the form-literal grammar: signed terms `[+|-] [p/q*] e<digits>`
/// summed, e.g. `e125 - 3/5*e136`; `0` denotes the zero form.
pub fn parse_form<F: Scalar>(input: &str) -> Result<KForm<F>, String> {
    let src = input.trim();
    if src.is_empty() {
        return Err("empty form literal".into());
    }
    if src == "0" {
        return Ok(KForm::zero());
    }
    let mut form = KForm::zero();
    let mut rest = src;
    let mut sign = 1i64;
    let mut first = true;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            if first {
                return Err("empty form literal".into());
            }
            break;
        }
        if let Some(r) = rest.strip_prefix('+') {
            if r.trim_start().is_empty() {
                return Err("dangling sign".into());
            }
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            if r.trim_start().is_empty() {
                return Err("dangling sign".into());
            }
            sign = -sign;
            rest = r;
            continue;
        }
        // One term: optional rational coefficient with '*', then e<digits>.
        let term_end = rest
            .find(|c: char| c == '+' || c == '-')
            .unwrap_or(rest.len());
        let term = rest[..term_end].trim();
        rest = &rest[term_end..];
        let (coeff, mono) = match term.split_once('*') {
            Some((c, m)) => (parse_coeff::<F>(c.trim())?, m.trim()),
            None => (F::one(), term),
        };
        let Some(digits) = mono.strip_prefix('e') else {
            return Err(format!("expected e-monomial, found '{term}'"));
        };
        if digits.is_empty() {
            return Err(format!("empty index list in '{term}'"));
        }
        let mut indices = Vec::new();
        for ch in digits.chars() {
            let d = ch.to_digit(10).ok_or_else(|| format!("bad index '{ch}' in '{term}'"))?;
            if !(1..=DIM as u32).contains(&d) {
                return Err(format!("index {d} out of range 1..7 in '{term}'"));
            }
            indices.push(d as u8);
        }
        if canonical(&indices).is_none() {
            return Err(format!("repeated index in '{term}'"));
        }
        let signed = if sign < 0 { -coeff } else { coeff };
        form.add_term(signed, &indices);
        sign = 1;
        first = false;
    }
    Ok(form)
}

fn parse_coeff<F: Scalar>(s: &str) -> Result<F, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|e| format!("bad numerator '{n}': {e}"))?,
            d.trim().parse::<i64>().map_err(|e| format!("bad denominator '{d}': {e}"))?,
        ),
        None => (s.parse::<i64>().map_err(|e| format!("bad coefficient '{s}': {e}"))?, 1),
    };
    if den == 0 {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(F::from_ratio(num, den))
}

/// Volume form e_{1…7}.
pub fn volume<F: Scalar>() -> KForm<F> {
    KForm::monomial(&[1, 2, 3, 4, 5, 6, 7])
}
