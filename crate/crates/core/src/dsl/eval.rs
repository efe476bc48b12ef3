//! Builds every declared object and runs the check directives.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::ast::{CheckKind, Construction, Ident, Literal, MorphismBody, Span, SpecAst, StmtKind};
use super::diagnostic::{Diagnostic, Diagnostics};
use crate::constructions::{Built, ConstructionSpec, Constructor, DEFAULT_MAX_CARRIER};
use crate::error::Error;
use crate::field::PrimeField;
use crate::groupoid::{verify_brandt, verify_calculus, verify_transitive, FiniteGroupoid};
use crate::linalg::{FVector, Subspace};
use crate::morphism::{
    anchor_morphism, product_projections, sgn_sharp, verify_homomorphism, verify_morphism, whitney_projections,
    GroupoidMorphism, VectorMorphism,
};
use crate::notation::Notation;
use crate::report::{AxiomReport, CheckOptions, LawResult, Status, Witness};
use crate::space::{CoordSpace, SpaceRef};
use crate::vector_groupoid::{verify_structural_consequences, verify_vector_axioms};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub max_carrier: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_carrier: DEFAULT_MAX_CARRIER }
    }
}

#[derive(Clone, Debug)]
pub enum MorphismValue {
    Plain(GroupoidMorphism),
    Vector(VectorMorphism),
}

impl MorphismValue {
    pub fn groupoid_morphism(&self) -> &GroupoidMorphism {
        match self {
            MorphismValue::Plain(m) => m,
            MorphismValue::Vector(v) => &v.morphism,
        }
    }
}

/// Everything a definition file declares, by name.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub fields: HashMap<String, PrimeField>,
    pub spaces: HashMap<String, SpaceRef>,
    pub subspaces: HashMap<String, Subspace>,
    pub groupoids: HashMap<String, Built>,
    pub morphisms: HashMap<String, MorphismValue>,
    pub warnings: Vec<Diagnostic>,
}

fn elaboration(e: &Error, span: Span, token: &str) -> Diagnostics {
    Diagnostics::single(Diagnostic::error(e.code(), e.to_string(), span, token))
}

fn fail(code: &str, message: impl Into<String>, span: Span, token: &str) -> Diagnostics {
    Diagnostics::single(Diagnostic::error(code, message, span, token))
}

impl Workspace {
    fn groupoid(&self, id: &Ident) -> &Built {
        &self.groupoids[&id.name]
    }

    fn vector(&self, id: &Ident) -> Result<&crate::vector_groupoid::VectorGroupoid, Diagnostics> {
        self.groupoid(id).vector().ok_or_else(|| {
            fail("NotAVectorGroupoid", format!("`{}` has no linear structure", id.name), id.span, &id.name)
        })
    }

    fn morphism(
        &self,
        span: Span,
        source: &Ident,
        target: &Option<Ident>,
        body: &MorphismBody,
    ) -> Result<MorphismValue, Diagnostics> {
        let src = self.groupoid(source);
        let token = body.to_string();
        let err = |e: Error| elaboration(&e, span, &token);
        let value = match body {
            MorphismBody::Anchor => MorphismValue::Vector(anchor_morphism(self.vector(source)?).map_err(err)?),
            MorphismBody::SgnSharp => {
                let Notation::PartialBijection { n } = src.groupoid().notation() else {
                    return Err(fail(
                        "WrongKind",
                        format!("sgn_sharp needs a symmetry groupoid, `{}` is not one", source.name),
                        source.span,
                        &source.name,
                    ));
                };
                MorphismValue::Plain(sgn_sharp(*n).map_err(err)?)
            }
            MorphismBody::Proj1 | MorphismBody::Proj2 => {
                let (p1, p2) = match src {
                    Built::Product(p) => product_projections(p).map_err(err)?,
                    Built::Whitney(w) => whitney_projections(w).map_err(err)?,
                    _ => {
                        return Err(fail(
                            "WrongKind",
                            format!("`{}` is not a product or Whitney sum", source.name),
                            source.span,
                            &source.name,
                        ))
                    }
                };
                MorphismValue::Vector(if matches!(body, MorphismBody::Proj1) { p1 } else { p2 })
            }
            MorphismBody::Table(entries) => {
                let Some(target) = target else {
                    return Err(fail("MissingTarget", "a table morphism needs an explicit target", span, "_"));
                };
                let dst = self.groupoid(target);
                let pairs: Vec<(Vec<u32>, Vec<u32>)> =
                    entries.iter().map(|(a, b)| (key(src, a), key(dst, b))).collect();
                let m =
                    GroupoidMorphism::from_keys(src.groupoid().clone(), dst.groupoid().clone(), &pairs).map_err(err)?;
                return Ok(match (src.vector(), dst.vector()) {
                    (Some(v), Some(w)) => MorphismValue::Vector(VectorMorphism::from_morphism(m, v, w).map_err(err)?),
                    _ => MorphismValue::Plain(m),
                });
            }
        };
        if let Some(t) = target {
            let declared = self.groupoid(t).groupoid();
            if declared.elements() != value.groupoid_morphism().target().elements() {
                return Err(fail(
                    "CarrierMismatch",
                    format!("`{}` is not the target of {token}; write `_` for the canonical target", t.name),
                    t.span,
                    &t.name,
                ));
            }
        }
        Ok(value)
    }
}

/// Carrier key of a literal: coordinates reduced mod p for vector
/// groupoids, raw entries otherwise.
fn key(b: &Built, lit: &Literal) -> Vec<u32> {
    let flat = lit.flatten();
    match b.vector() {
        Some(v) => {
            let f = v.space().field();
            flat.into_iter().map(|x| f.reduce(x)).collect()
        }
        None => flat.into_iter().map(|x| u32::try_from(x).unwrap_or(u32::MAX)).collect(),
    }
}

/// Constructs every declared object. Construction errors surface as
/// diagnostics at the declaring statement.
pub fn evaluate(ast: &SpecAst, opts: &EvalOptions) -> Result<Workspace, Diagnostics> {
    let ctor = Constructor::new(opts.max_carrier);
    let mut ws = Workspace::default();
    for stmt in &ast.statements {
        let span = stmt.span;
        match &stmt.kind {
            StmtKind::Field { name, modulus } => {
                let f = PrimeField::new(*modulus).map_err(|e| elaboration(&e, span, &modulus.to_string()))?;
                ws.fields.insert(name.name.clone(), f);
            }
            StmtKind::Space { name, field, dim } => {
                let f = ws.fields[&field.name];
                let s = CoordSpace::full(f, *dim).map_err(|e| elaboration(&e, span, &name.name))?;
                ws.spaces.insert(name.name.clone(), Arc::new(s));
            }
            StmtKind::Subspace { name, space, generators } => {
                let s = &ws.spaces[&space.name];
                let f = s.field();
                let dim = s.shape().dim();
                let gens: Vec<FVector> = generators.iter().map(|g| FVector::new(f, g.iter().copied())).collect();
                let sub = Subspace::span(f, dim, &gens).map_err(|e| elaboration(&e, span, &name.name))?;
                ws.subspaces.insert(name.name.clone(), sub);
            }
            StmtKind::Groupoid { name, construction } => {
                let sp = |id: &Ident| ws.spaces[&id.name].clone();
                let vg = |id: &Ident| ws.vector(id).cloned();
                let spec = match construction {
                    Construction::Pair(s) => ConstructionSpec::Pair(sp(s)),
                    Construction::Null(s) => ConstructionSpec::Null(sp(s)),
                    Construction::SingleUnit(s) => ConstructionSpec::SingleUnit(sp(s)),
                    Construction::V3(s) => ConstructionSpec::V3(sp(s)),
                    Construction::Vpq { space, p, q } => ConstructionSpec::Vpq { space: sp(space), p: *p, q: *q },
                    Construction::Tvg { space, subspace } => {
                        ConstructionSpec::Tvg { space: sp(space), subspace: ws.subspaces[&subspace.name].clone() }
                    }
                    Construction::Product(a, b) => ConstructionSpec::DirectProduct(vg(a)?, vg(b)?),
                    Construction::Whitney(a, b) => ConstructionSpec::Whitney(vg(a)?, vg(b)?),
                    Construction::Sg(n) => ConstructionSpec::Symmetry(usize::try_from(*n).unwrap_or(usize::MAX)),
                };
                let built = ctor.build(&spec).map_err(|e| elaboration(&e, span, &construction.to_string()))?;
                ws.groupoids.insert(name.name.clone(), built);
            }
            StmtKind::Morphism { name, source, target, body } => {
                let m = ws.morphism(span, source, target, body)?;
                ws.morphisms.insert(name.name.clone(), m);
            }
            StmtKind::Check { target, kind } => {
                let needs_vector = matches!(kind, CheckKind::Vector | CheckKind::Consequences);
                if needs_vector {
                    ws.vector(target)?;
                }
                if *kind == CheckKind::VectorMorphism
                    && matches!(ws.morphisms.get(&target.name), Some(MorphismValue::Plain(_)))
                {
                    return Err(fail(
                        "NotAVectorMorphism",
                        format!("`{}` is not a map between vector groupoids", target.name),
                        target.span,
                        &target.name,
                    ));
                }
            }
        }
    }
    if ast.checks().next().is_none() {
        let span = ast.statements.last().map_or(Span { line: 1, col: 1 }, |s| s.span);
        ws.warnings.push(Diagnostic::warning("NoChecks", "the file has no check directives", span, ""));
    }
    Ok(ws)
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectiveReport {
    pub target: String,
    pub check: String,
    pub status: Status,
    pub examined: u64,
    pub witnesses: Vec<Witness>,
    #[serde(skip)]
    pub line: usize,
    #[serde(skip)]
    pub laws: Vec<LawResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub status: Status,
    pub directives: Vec<DirectiveReport>,
    pub version: String,
    pub input_digest: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Hex SHA-256 of the input text.
pub fn input_digest(src: &str) -> String {
    Sha256::digest(src.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn run_one(ws: &Workspace, target: &Ident, kind: CheckKind, opts: &CheckOptions) -> AxiomReport {
    let groupoid = || ws.groupoids[&target.name].groupoid();
    let vector = || ws.groupoids[&target.name].vector().expect("checked during evaluation");
    let morphism = || &ws.morphisms[&target.name];
    match kind {
        CheckKind::Brandt => verify_brandt(groupoid(), opts),
        CheckKind::Calculus => verify_calculus(groupoid(), opts),
        CheckKind::Vector => verify_vector_axioms(vector(), opts),
        CheckKind::Consequences => verify_structural_consequences(vector(), opts),
        CheckKind::Transitive => verify_transitive(groupoid(), opts),
        CheckKind::Morphism => verify_morphism(morphism().groupoid_morphism(), opts),
        CheckKind::Homomorphism => verify_homomorphism(morphism().groupoid_morphism(), opts),
        CheckKind::VectorMorphism => match morphism() {
            MorphismValue::Vector(v) => v.verify(opts),
            MorphismValue::Plain(_) => unreachable!("rejected during evaluation"),
        },
    }
}

/// Runs every check directive in file order.
pub fn run_checks(ws: &Workspace, ast: &SpecAst, input: &str, opts: &CheckOptions) -> RunReport {
    let start = Instant::now();
    let directives: Vec<DirectiveReport> = ast
        .checks()
        .map(|(target, kind, span)| {
            let report = run_one(ws, target, kind, opts);
            DirectiveReport {
                target: target.name.clone(),
                check: kind.keyword().to_string(),
                status: report.status(),
                examined: report.examined(),
                witnesses: report.witnesses().cloned().collect(),
                line: span.line,
                laws: report.laws,
            }
        })
        .collect();
    let status = if directives.iter().all(|d| d.status == Status::Pass) { Status::Pass } else { Status::Fail };
    RunReport {
        status,
        directives,
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: input_digest(input),
        elapsed: start.elapsed(),
    }
}

impl Workspace {
    /// The groupoid declared under `name`, with or without linear structure.
    pub fn groupoid_named(&self, name: &str) -> Option<&FiniteGroupoid> {
        self.groupoids.get(name).map(Built::groupoid)
    }
}
