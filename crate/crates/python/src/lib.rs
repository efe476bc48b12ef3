//! Python bindings: build and check `.gd` definitions, and query the
//! closed-form counts, from Python.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vgroupoid::constructions::{CATALOG, DEFAULT_MAX_CARRIER};
use vgroupoid::dsl::{self, EvalOptions, Format};
use vgroupoid::CheckOptions;

fn check_options(witness_cap: Option<usize>) -> CheckOptions {
    witness_cap.map_or_else(CheckOptions::default, CheckOptions::with_cap)
}

/// Runs a definition file's text and returns the JSON report, or every
/// diagnostic joined one per line.
fn run(src: &str, witness_cap: Option<usize>, max_carrier: usize) -> Result<String, String> {
    match dsl::verify_source(src, &EvalOptions { max_carrier }, &check_options(witness_cap)) {
        Ok((report, _)) => Ok(dsl::emit_report(&report, Format::Json)),
        Err(diags) => Err(diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n")),
    }
}

/// `(|SG_n|, |SG_n,0|)`: partial bijections of `{1..n}` and their units.
#[pyfunction]
fn sg_cardinality(n: u32) -> PyResult<(u128, u128)> {
    if n == 0 || n > 100 {
        return Err(PyValueError::new_err("n must be in 1..=100"));
    }
    Ok(vgroupoid::sg_cardinality(n))
}

/// The construction kinds as `(syntax, description)` pairs.
#[pyfunction]
fn catalog() -> Vec<(&'static str, &'static str)> {
    CATALOG.to_vec()
}

/// Parses, builds and checks `src`; returns the JSON report as a string.
/// Raises `ValueError` carrying `line:col: error[Code]: ...` diagnostics
/// when the definitions are invalid.
#[pyfunction]
#[pyo3(signature = (src, witness_cap=None, max_carrier=DEFAULT_MAX_CARRIER))]
fn verify(src: &str, witness_cap: Option<usize>, max_carrier: usize) -> PyResult<String> {
    run(src, witness_cap, max_carrier).map_err(PyValueError::new_err)
}

/// Diagnostics for `src` as `(line, col, code, message)` tuples; empty when
/// it parses and builds.
#[pyfunction]
fn diagnostics(src: &str) -> Vec<(usize, usize, String, String)> {
    let ast = match dsl::parse(src) {
        Ok(ast) => ast,
        Err(d) => return d.iter().map(|d| (d.line(), d.col(), d.code.clone(), d.message.clone())).collect(),
    };
    match dsl::evaluate(&ast, &EvalOptions::default()) {
        Ok(ws) => ws.warnings.iter().map(|d| (d.line(), d.col(), d.code.clone(), d.message.clone())).collect(),
        Err(d) => d.iter().map(|d| (d.line(), d.col(), d.code.clone(), d.message.clone())).collect(),
    }
}

#[pymodule]
fn vgroupoid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(sg_cardinality, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(diagnostics, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_reports_json_or_diagnostics() {
        let ok = run("field F = Zp(3)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G vector\n", None, 100).unwrap();
        assert!(ok.contains("\"status\": \"pass\""));
        let err = run("field F = Zp(4)\n", None, 100).unwrap_err();
        assert!(err.starts_with("1:") && err.contains("NotPrime"), "{err}");
    }

    #[test]
    fn diagnostics_cover_parse_and_build_errors() {
        assert_eq!(diagnostics("field F = Zp(9)")[0].2, "NotPrime");
        let built = diagnostics("field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=2)\n");
        assert_eq!((built[0].0, built[0].2.as_str()), (3, "NotInverse"));
        assert_eq!(diagnostics("field F = Zp(2)\n")[0].2, "NoChecks");
    }
}
