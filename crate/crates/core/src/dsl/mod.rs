//! The definition language: parse a `.gd` file, build what it declares,
//! run its check directives and render the outcome.

pub mod ast;
pub mod diagnostic;
pub mod eval;
pub mod parser;

use std::fmt::Write as _;

pub use ast::{CheckKind, Construction, Ident, Literal, MorphismBody, Span, SpecAst, Statement, StmtKind};
pub use diagnostic::{Diagnostic, Diagnostics, Severity};
pub use eval::{evaluate, input_digest, run_checks, DirectiveReport, EvalOptions, MorphismValue, RunReport, Workspace};
pub use parser::parse;

use crate::report::{CheckOptions, Status};

/// Environment variable overriding the default witness cap.
pub const WITNESS_CAP_ENV: &str = "VGROUPOID_WITNESS_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Flag value, then the environment variable, then the default.
pub fn resolve_witness_cap(flag: Option<usize>, env: Option<&str>) -> CheckOptions {
    match flag.or_else(|| env.and_then(|v| v.trim().parse().ok())) {
        Some(cap) => CheckOptions::with_cap(cap),
        None => CheckOptions::default(),
    }
}

/// Parse, evaluate and check in one go. Warnings come back alongside the
/// report; errors stop the run.
pub fn verify_source(
    src: &str,
    eval: &EvalOptions,
    check: &CheckOptions,
) -> Result<(RunReport, Vec<Diagnostic>), Diagnostics> {
    let ast = parse(src)?;
    let ws = evaluate(&ast, eval)?;
    let report = run_checks(&ws, &ast, src, check);
    Ok((report, ws.warnings))
}

pub fn emit_report(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(r).expect("report serializes");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            for d in &r.directives {
                let _ = writeln!(
                    out,
                    "check {} {}: {} ({} cases, line {})",
                    d.target, d.check, d.status, d.examined, d.line
                );
                for law in &d.laws {
                    let _ = write!(out, "  {:<4}  {}  {} cases", law.status().to_string(), law.law, law.examined);
                    if law.violations > 0 {
                        let _ = write!(out, ", {} violations", law.violations);
                    }
                    if let Some(diag) = &law.diagnosis {
                        if law.violations > 0 {
                            let _ = write!(out, " [{diag}]");
                        }
                    }
                    out.push('\n');
                    for w in &law.witnesses {
                        let _ =
                            writeln!(out, "        {}: expected {}, got {}", w.inputs.join(", "), w.expected, w.actual);
                    }
                }
            }
            let verdict = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(
                out,
                "{verdict}: {} directive(s) in {:.2?} (vgroupoid {}, input sha256 {})",
                r.directives.len(),
                r.elapsed,
                r.version,
                &r.input_digest[..12]
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Result<(RunReport, Vec<Diagnostic>), Diagnostics> {
        verify_source(src, &EvalOptions::default(), &CheckOptions::default())
    }

    #[test]
    fn pair_over_z3_passes() {
        let (r, warnings) = run("field F = Zp(3)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G vector\n").unwrap();
        assert!(r.passed());
        assert!(warnings.is_empty());
        let json = emit_report(&r, Format::Json);
        assert!(json.contains("\"status\": \"pass\""));
        assert!(json.contains("\"witnesses\": []"));
    }

    #[test]
    fn not_inverse_is_an_elaboration_error() {
        let d = run("field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=2)\ncheck G vector").unwrap_err();
        assert_eq!(d.first().code, "NotInverse");
        assert!(d.first().message.starts_with("p·q ≠ 1"));
        assert_eq!(d.first().line(), 3);
    }

    #[test]
    fn size_and_base_errors() {
        let d = run("groupoid S = sg(9)").unwrap_err();
        assert_eq!((d.first().code.as_str(), d.first().line()), ("SizeGuard", 1));
        let src =
            "field F = Zp(2)\nspace V = F^1\ngroupoid P = pair(V)\ngroupoid N = null(V)\ngroupoid W = whitney(P, N)";
        let d = run(src).unwrap_err();
        assert_eq!((d.first().code.as_str(), d.first().line()), ("BaseMismatch", 5));
    }

    #[test]
    fn mutated_table_fails_with_witness() {
        let src = "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n\
                   morphism M : G -> G = table{ (0,0)->(0,0), (0,1)->(1,0), (1,0)->(1,0), (1,1)->(1,1) }\ncheck M morphism";
        let (r, _) = run(src).unwrap();
        assert!(!r.passed());
        assert!(r.directives[0].witnesses.iter().any(|w| w.law == "preserves-products"));
    }

    #[test]
    fn duplicate_table_entry_is_rejected() {
        let src = "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n\
                   morphism M : G -> G = table{ (0,0)->(0,0), (0,1)->(0,1), (1,0)->(1,0), (1,1)->(1,1), (2,1)->(0,0) }";
        let d = run(src).unwrap_err();
        assert_eq!((d.first().code.as_str(), d.first().line()), ("DomainMismatch", 4));
        assert!(d.first().message.contains("(0,1) is listed twice"), "{}", d.first().message);
    }

    #[test]
    fn table_across_fields_is_rejected() {
        let src = "field F2 = Zp(2)\nfield F3 = Zp(3)\nspace A = F2^1\nspace C = F3^1\ngroupoid P = pair(A)\n\
                   groupoid Q = pair(C)\nmorphism M : Q -> P = table{ (0,0)->(0,0), (0,1)->(0,1), (0,2)->(1,0),\n\
                   (1,0)->(1,0), (1,1)->(1,1), (1,2)->(0,0), (2,0)->(0,0), (2,1)->(0,0), (2,2)->(0,0) }\ncheck M vector_morphism";
        let d = run(src).unwrap_err();
        assert_eq!((d.first().code.as_str(), d.first().line()), ("FieldMismatch", 7));
    }

    #[test]
    fn table_key_of_wrong_arity_is_a_diagnostic() {
        let src = "field F = Zp(3)\nspace V = F^1\ngroupoid G = pair(V)\nmorphism M : G -> G = table{ (20) -> (0,0) }";
        let d = run(src).unwrap_err();
        assert_eq!((d.first().code.as_str(), d.first().line()), ("UnknownElement", 4));
        assert!(d.first().message.contains("(2)"), "{}", d.first().message);
    }

    #[test]
    fn empty_check_list_warns() {
        let (r, warnings) = run("field F = Zp(2)\n").unwrap();
        assert!(r.passed());
        assert!(r.directives.is_empty());
        assert_eq!(warnings[0].code, "NoChecks");
    }

    #[test]
    fn witness_cap_precedence() {
        assert_eq!(resolve_witness_cap(Some(3), Some("7")).witness_cap, 3);
        assert_eq!(resolve_witness_cap(None, Some("7")).witness_cap, 7);
        assert_eq!(resolve_witness_cap(None, Some("x")).witness_cap, 10);
        assert_eq!(resolve_witness_cap(None, None).witness_cap, 10);
    }

    #[test]
    fn json_is_deterministic() {
        let src = "field F = Zp(2)\nspace V = F^1\ngroupoid G = v3(V)\ncheck G vector\ncheck G brandt\n";
        let a = emit_report(&run(src).unwrap().0, Format::Json);
        let b = emit_report(&run(src).unwrap().0, Format::Json);
        assert_eq!(a, b);
        assert!(!a.contains("elapsed"));
    }
}
