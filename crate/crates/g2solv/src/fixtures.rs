//! Fixture files describing the six catalogued algebras: line 1 the tuple
//! spec, line 2 the six derivation eigenvalues (in units of m), line 3 the
//! nilpotent scale. Lookup order: explicit path, then `$G2SOLV_FIXTURES`,
//! then the bundled copies.

use crate::lie::{
    conformal_change, koszul, parse_algebra, AlgebraError, FrameConnection, NilpotentAlgebra,
    SolvableExtension,
};
use crate::exterior::KForm;
use crate::scalar::{parse_rational, Rational, Scalar};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture '{0}': {1}")]
    Io(String, std::io::Error),
    #[error("fixture '{0}' is not a bundled id, a readable path, or present under $G2SOLV_FIXTURES")]
    Unknown(String),
    #[error("fixture '{name}' line {line}: {message}")]
    Malformed {
        name: String,
        line: usize,
        message: String,
    },
    #[error("fixture '{0}': {1}")]
    Algebra(String, AlgebraError),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub tuple: String,
    pub eigenvalues: [Rational; 6],
    pub scale: Rational,
}

pub const BUNDLED: [(&str, &str); 6] = [
    ("example1", include_str!("../fixtures/example1")),
    ("example2", include_str!("../fixtures/example2")),
    ("example3", include_str!("../fixtures/example3")),
    ("example4", include_str!("../fixtures/example4")),
    ("example5", include_str!("../fixtures/example5")),
    ("example6", include_str!("../fixtures/example6")),
];

pub fn parse_fixture(name: &str, text: &str) -> Result<Fixture, FixtureError> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() != 3 {
        return Err(FixtureError::Malformed {
            name: name.into(),
            line: lines.len().min(3) + 1,
            message: format!("expected 3 non-empty lines, found {}", lines.len()),
        });
    }
    let parts: Vec<&str> = lines[1].split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(FixtureError::Malformed {
            name: name.into(),
            line: 2,
            message: format!("expected 6 eigenvalues, found {}", parts.len()),
        });
    }
    let mut eigenvalues: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
    for (i, p) in parts.iter().enumerate() {
        eigenvalues[i] = parse_rational(p).map_err(|message| FixtureError::Malformed {
            name: name.into(),
            line: 2,
            message,
        })?;
    }
    let scale = parse_rational(lines[2]).map_err(|message| FixtureError::Malformed {
        name: name.into(),
        line: 3,
        message,
    })?;
    Ok(Fixture {
        name: name.into(),
        tuple: lines[0].to_string(),
        eigenvalues,
        scale,
    })
}

/// Resolves a fixture id or path: an existing file wins, then
/// `$G2SOLV_FIXTURES/<target>`, then the bundled ids.
pub fn load(target: &str) -> Result<Fixture, FixtureError> {
    let path = Path::new(target);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FixtureError::Io(target.into(), e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| target.to_string());
        return parse_fixture(&name, &text);
    }
    if let Ok(dir) = std::env::var("G2SOLV_FIXTURES") {
        let candidate = Path::new(&dir).join(target);
        if candidate.is_file() {
            let text = std::fs::read_to_string(&candidate)
                .map_err(|e| FixtureError::Io(candidate.display().to_string(), e))?;
            return parse_fixture(target, &text);
        }
    }
    for (id, text) in BUNDLED {
        if id == target {
            return parse_fixture(id, text);
        }
    }
    Err(FixtureError::Unknown(target.into()))
}

impl Fixture {
    pub fn algebra(&self) -> Result<NilpotentAlgebra<Rational>, FixtureError> {
        parse_algebra(&self.tuple).map_err(|e| FixtureError::Algebra(self.name.clone(), e))
    }

    pub fn extension(&self, m: &Rational) -> Result<SolvableExtension<Rational>, FixtureError> {
        self.algebra()?
            .extend(&self.eigenvalues, &self.scale, m)
            .map_err(|e| FixtureError::Algebra(self.name.clone(), e))
    }

    /// Levi-Civita connection of the conformally rescaled metric at the base
    /// point: Koszul of the +m extension followed by the conformal change
    /// with df = m·e7.
    pub fn connection_gtilde(&self, m: &Rational) -> Result<FrameConnection<Rational>, FixtureError> {
        let conn = koszul(&self.extension(m)?);
        let df = KForm::from_terms(&[(m.clone(), &[7])]);
        Ok(conformal_change(&conn, &df))
    }

    /// Levi-Civita connection of the plain product metric: Koszul of the −m
    /// extension.
    pub fn connection_g(&self, m: &Rational) -> Result<FrameConnection<Rational>, FixtureError> {
        Ok(koszul(&self.extension(&-m.clone())?))
    }
}

/// Reference eigenvalue table for the bundled ids (used by `validate` to
/// cross-check fixtures against the catalogued values).
pub fn reference_eigenvalues(name: &str) -> Option<[Rational; 6]> {
    let row: [(i64, i64); 6] = match name {
        "example1" => [(2, 3), (1, 1), (4, 3), (1, 1), (2, 3), (1, 1)],
        "example2" => [(3, 5), (3, 5), (6, 5), (6, 5), (3, 5), (6, 5)],
        "example3" => [(3, 4), (1, 1), (3, 2), (3, 4), (3, 4), (3, 4)],
        "example4" => [(4, 5), (6, 5), (7, 5), (3, 5), (3, 5), (4, 5)],
        "example5" => [(1, 1), (5, 4), (5, 4), (1, 2), (3, 4), (3, 4)],
        "example6" => [(2, 3), (4, 3), (4, 3), (2, 3), (2, 3), (2, 3)],
        _ => return None,
    };
    Some(std::array::from_fn(|i| Rational::from_ratio(row[i].0, row[i].1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse_and_validate() {
        for (id, _) in BUNDLED {
            let fx = load(id).unwrap();
            assert_eq!(fx.name, id);
            assert_eq!(Some(fx.eigenvalues.clone()), reference_eigenvalues(id));
            let ext = fx.extension(&Rational::one()).unwrap();
            ext.brackets.check_d_squared(7).unwrap();
            let conn = fx.connection_gtilde(&Rational::one()).unwrap();
            assert!(conn.is_metric());
        }
    }

    #[test]
    fn unknown_target_is_rejected() {
        assert!(matches!(load("example9"), Err(FixtureError::Unknown(_))));
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(parse_fixture("x", "(0,0,0,0,0,0)\n1,1,1\n1").is_err());
        assert!(parse_fixture("x", "(0,0,0,0,0,0)\n1,1,1,1,1,1").is_err());
        assert!(parse_fixture("x", "(0,0,0,0,0,0)\n1,1,1,1,1,1\nnot-a-number").is_err());
    }

    #[test]
    fn env_dir_lookup() {
        let dir = std::env::temp_dir().join("g2solv-fixture-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("custom");
        std::fs::write(&path, "(0,0,0,0,0,0)\n1, 1, 1, 1, 1, 1\n1\n").unwrap();
        // Direct path load works without the env var.
        let fx = load(path.to_str().unwrap()).unwrap();
        assert_eq!(fx.name, "custom");
        assert_eq!(fx.scale, Rational::one());
    }
}
