//! Structured run reports shared by the command-line binary and the C
//! bindings.
//!
//! Every command produces a [`RunReport`]: a `schema: 1` JSON document with
//! the command name, echoed inputs, computed results, a list of named
//! [`Check`]s, and the process exit status (0 when every check passed,
//! 1 otherwise). Serialization is deterministic, so identical invocations
//! produce byte-identical output. Malformed arguments never produce a
//! report; they surface as [`UsageError`] and exit status 2.

use crate::exterior::{parse_form, KForm};
use crate::fixtures::{self, Fixture};
use crate::g2::{phi_base, phi_family, tau_extract};
use crate::lie::{parse_algebra, AlgebraError, FrameConnection};
use crate::scalar::{parse_rational, rational_string, Rational, Scalar};
use crate::search::{catalog_distance_example2, numeric_search, SearchConfig};
use crate::verify;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;

/// One named assertion with its expected and computed values rendered as
/// strings.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    /// A check that passes exactly when the rendered values agree.
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
    ) -> Self {
        let expected = expected.into();
        let got = got.into();
        let pass = expected == got;
        Check { name: name.into(), expected, got, pass }
    }

    /// A check whose verdict is decided by the caller (for comparisons that
    /// are not plain string equality).
    pub fn with_pass(
        name: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check { name: name.into(), expected: expected.into(), got: got.into(), pass }
    }

    /// Exact comparison of two differential forms.
    pub fn forms<F: Scalar>(name: impl Into<String>, expected: &KForm<F>, got: &KForm<F>) -> Self {
        let pass = expected.equals(got);
        Check::with_pass(name, expected.to_string(), got.to_string(), pass)
    }
}

/// The report printed by every command.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, checks: Vec<Check>) -> Self {
        let exit_status = i32::from(!checks.iter().all(|c| c.pass));
        RunReport { schema: 1, command: command.to_string(), inputs, results, checks, exit_status }
    }

    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    /// Pretty JSON with a trailing newline; field and map order are fixed,
    /// so equal reports serialize to equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering for interactive use.
    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("g2solv {}\n", self.command));
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                let rendered = match v {
                    Value::String(s) => s.clone(),
                    other => serde_json::to_string(other).expect("value serializes"),
                };
                out.push_str(&format!("  {k}: {rendered}\n"));
            }
        }
        let mut failures = 0usize;
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("[ ok ] {}\n", c.name));
            } else {
                failures += 1;
                out.push_str(&format!(
                    "[FAIL] {}\n       expected: {}\n       got:      {}\n",
                    c.name, c.expected, c.got
                ));
            }
        }
        out.push_str(&format!("{} checks, {} failures\n", self.checks.len(), failures));
        out
    }
}

/// A malformed invocation: the command cannot run at all. Maps to exit
/// status 2.
#[derive(Clone, Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<fixtures::FixtureError> for UsageError {
    fn from(e: fixtures::FixtureError) -> Self {
        UsageError(e.to_string())
    }
}

fn eigenvalue_row(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(rational_string(v))).collect())
}

/// `validate <target>`: check that a fixture (bundled name, file path, or
/// inline bracket tuple) defines a nilpotent Lie algebra whose rank-one
/// extension closes.
pub fn run_validate(target: &str) -> Result<RunReport, UsageError> {
    let trimmed = target.trim();
    let inputs = json!({ "target": trimmed });
    if trimmed.starts_with('(') {
        // Inline bracket tuple: structural errors are usage errors, a Jacobi
        // failure is a failing check.
        let mut checks = Vec::new();
        match parse_algebra::<Rational>(trimmed) {
            Ok(algebra) => {
                checks.push(Check::new(
                    "bracket tuple defines a nilpotent Lie algebra (Jacobi)",
                    "holds",
                    "holds",
                ));
                let got = match algebra.ce_brackets().check_d_squared(6) {
                    Ok(()) => "holds".to_string(),
                    Err(e) => e.to_string(),
                };
                checks.push(Check::new("structure equations close (d² = 0)", "holds", got));
            }
            Err(AlgebraError::JacobiFailure(i, j, k)) => {
                checks.push(Check::new(
                    "bracket tuple defines a nilpotent Lie algebra (Jacobi)",
                    "holds",
                    format!("Jacobi identity fails on (e{i}, e{j}, e{k})"),
                ));
            }
            Err(e) => return Err(UsageError(e.to_string())),
        }
        let results = json!({ "source": "inline", "tuple": trimmed });
        return Ok(RunReport::new("validate", inputs, results, checks));
    }

    let fixture = fixtures::load(trimmed)?;
    let one = Rational::one();
    let mut checks = Vec::new();
    let mut extension_ok = false;
    let jacobi_got = match fixture.extension(&one) {
        Ok(_) => {
            extension_ok = true;
            "holds".to_string()
        }
        Err(e) => e.to_string(),
    };
    checks.push(Check::new(
        "bracket tuple defines a nilpotent Lie algebra (Jacobi)",
        "holds",
        jacobi_got,
    ));
    if extension_ok {
        let ext = fixture.extension(&one).expect("already validated");
        let got = match ext.brackets.check_d_squared(7) {
            Ok(()) => "holds".to_string(),
            Err(e) => e.to_string(),
        };
        checks.push(Check::new("rank-one extension closes (d² = 0)", "holds", got));
    }
    if let Some(reference) = fixtures::reference_eigenvalues(&fixture.name) {
        let expected: Vec<String> = reference.iter().map(rational_string).collect();
        let got: Vec<String> = fixture.eigenvalues.iter().map(rational_string).collect();
        checks.push(Check::new(
            format!("Table 1 row ({}): eigenvalue echo", fixture.name),
            expected.join(", "),
            got.join(", "),
        ));
    }
    let results = json!({
        "source": "fixture",
        "fixture": fixture.name,
        "tuple": fixture.tuple,
        "eigenvalues": eigenvalue_row(&fixture.eigenvalues),
        "nilpotent_scale": rational_string(&fixture.scale),
    });
    Ok(RunReport::new("validate", inputs, results, checks))
}

enum PhiSpec {
    Base,
    Family(Rational, Rational),
    Literal(KForm<Rational>),
}

fn parse_phi_spec(spec: &str) -> Result<PhiSpec, UsageError> {
    let spec = spec.trim();
    if spec == "base" {
        return Ok(PhiSpec::Base);
    }
    if let Some(rest) = spec.strip_prefix("family:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(UsageError(format!(
                "family spinor parameters must be `family:r,s`, got `{spec}`"
            )));
        }
        let r = parse_rational(parts[0].trim()).map_err(UsageError)?;
        let s = parse_rational(parts[1].trim()).map_err(UsageError)?;
        if r.is_zero() && s.is_zero() {
            return Err(UsageError("the family degenerates at r = s = 0".into()));
        }
        return Ok(PhiSpec::Family(r, s));
    }
    let form = parse_form::<Rational>(spec).map_err(UsageError)?;
    match form.degree() {
        Some(3) => Ok(PhiSpec::Literal(form)),
        _ => Err(UsageError("phi literal must be a nonzero 3-form".into())),
    }
}

fn connection_for(
    fixture: &Fixture,
    metric: &str,
    m: &Rational,
) -> Result<FrameConnection<Rational>, UsageError> {
    match metric {
        "g" => Ok(fixture.connection_g(m)?),
        "gtilde" => Ok(fixture.connection_gtilde(m)?),
        other => Err(UsageError(format!("unknown metric `{other}` (expected g or gtilde)"))),
    }
}

/// `tau <target> --phi ... [--metric g|gtilde] [--m p/q]`: extract the four
/// torsion components of a 3-form on the chosen extension and classify it.
pub fn run_tau(
    target: &str,
    phi_spec: &str,
    metric: Option<&str>,
    m_text: &str,
) -> Result<RunReport, UsageError> {
    let m = parse_rational(m_text.trim()).map_err(UsageError)?;
    if m.is_zero() {
        return Err(UsageError("the extension parameter m must be nonzero".into()));
    }
    let fixture = fixtures::load(target.trim())?;
    let spec = parse_phi_spec(phi_spec)?;
    // The plain metric is the natural home of the base form; everything
    // else is stated for the conformally rescaled one.
    let metric = metric.unwrap_or(match &spec {
        PhiSpec::Base => "g",
        _ => "gtilde",
    });
    let conn = connection_for(&fixture, metric, &m)?;
    let (phi, phi_name) = match &spec {
        PhiSpec::Base => (phi_base::<Rational>(), "base".to_string()),
        PhiSpec::Family(r, s) => {
            (phi_family(r, s), format!("family:{},{}", rational_string(r), rational_string(s)))
        }
        PhiSpec::Literal(f) => (f.clone(), f.to_string()),
    };
    let inputs = json!({
        "target": target.trim(),
        "phi": phi_name,
        "metric": metric,
        "m": rational_string(&m),
    });
    match tau_extract(&conn, &phi) {
        Ok(comps) => {
            let results = json!({
                "fixture": fixture.name,
                "phi": phi.to_string(),
                "t": rational_string(&comps.t),
                "tau1": rational_string(&comps.tau1),
                "tau2": comps.tau2.to_string(),
                "tau3_star": comps.tau3_star.to_string(),
                "tau4": comps.tau4.to_string(),
                "class": comps.class_label(),
                "cosymplectic": comps.cosymplectic,
            });
            let checks = vec![
                Check::new(
                    "τ2 lives in the 14-dimensional eigenspace (consistency)",
                    "holds",
                    "holds",
                ),
                Check::with_pass(
                    "dφ and δφ reconstruct from (τ1, τ2, τ3, τ4)",
                    "holds",
                    if comps.reconstructs(&phi) { "holds" } else { "reconstruction mismatch" },
                    comps.reconstructs(&phi),
                ),
            ];
            Ok(RunReport::new("tau", inputs, results, checks))
        }
        Err(e) => {
            let checks = vec![Check::new(
                "torsion components are defined for this 3-form",
                "defined",
                e.to_string(),
            )];
            let results = json!({ "fixture": fixture.name, "phi": phi.to_string() });
            Ok(RunReport::new("tau", inputs, results, checks))
        }
    }
}

/// `verify-paper [--section all|2|3|4|5|6]`: run the exact cross-check
/// batteries.
pub fn run_verify(section: &str) -> Result<RunReport, UsageError> {
    let section = section.trim();
    let sections: Vec<u8> = match section {
        "all" => verify::SECTIONS.to_vec(),
        "2" | "3" | "4" | "5" | "6" => vec![section.parse().expect("validated digit")],
        other => {
            return Err(UsageError(format!(
                "unknown section `{other}` (expected all or one of 2..6)"
            )))
        }
    };
    let mut checks = Vec::new();
    for &s in &sections {
        checks.extend(verify::run_section(s));
    }
    let failures = checks.iter().filter(|c| !c.pass).count();
    let inputs = json!({ "section": section });
    let results = json!({
        "sections": sections,
        "checks_run": checks.len(),
        "failures": failures,
    });
    Ok(RunReport::new("verify-paper", inputs, results, checks))
}

/// `search <target> [--starts N] [--seed S] [--config file]`: random-restart
/// numeric search for torsions with a parallel spinor.
pub fn run_search(target: &str, cfg: &SearchConfig) -> Result<RunReport, UsageError> {
    if cfg.starts == 0 {
        return Err(UsageError("the search needs at least one start".into()));
    }
    let fixture = fixtures::load(target.trim())?;
    let one = Rational::one();
    let conn_exact = fixture.connection_gtilde(&one)?;
    let conn = conn_exact.map_scalars(|r| crate::scalar::rational_to_f64(r));
    let candidates = numeric_search(&conn, cfg);
    let inputs = json!({
        "target": target.trim(),
        "starts": cfg.starts,
        "seed": cfg.seed,
    });
    let mut results = json!({
        "fixture": fixture.name,
        "config": serde_json::to_value(cfg).expect("config serializes"),
        "count": candidates.len(),
        "candidates": serde_json::to_value(&candidates).expect("candidates serialize"),
    });
    let mut checks = Vec::new();
    if fixture.name == "example2" {
        let distances: Vec<f64> = candidates.iter().map(catalog_distance_example2).collect();
        let worst = distances.iter().cloned().fold(0.0f64, f64::max);
        let pass = distances.iter().all(|&d| d < 1e-6);
        results["catalog_distances"] = serde_json::to_value(&distances).expect("serializes");
        checks.push(Check::with_pass(
            "every candidate matches the catalogued solution set (∞-distance < 1e-6)",
            "all candidates within 1e-6",
            if pass {
                "all candidates within 1e-6".to_string()
            } else {
                format!("worst distance {worst:e}")
            },
            pass,
        ));
    }
    Ok(RunReport::new("search", inputs, results, checks))
}
