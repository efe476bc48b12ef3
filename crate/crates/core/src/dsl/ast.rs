//! Syntax tree of definition files, with a canonical renderer.

use std::fmt;

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: &str) -> Self {
        Ident { name: name.to_string(), span: Span::default() }
    }
}

/// An element literal: an integer or a (possibly nested) tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Tuple(Vec<Literal>),
}

impl Literal {
    /// Leaves in order; nested tuples mirror product carriers.
    pub fn flatten(&self) -> Vec<i64> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<i64>) {
        match self {
            Literal::Int(v) => out.push(*v),
            Literal::Tuple(items) => items.iter().for_each(|l| l.flatten_into(out)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Pair(Ident),
    Null(Ident),
    SingleUnit(Ident),
    Vpq { space: Ident, p: i64, q: i64 },
    V3(Ident),
    Tvg { space: Ident, subspace: Ident },
    Product(Ident, Ident),
    Whitney(Ident, Ident),
    Sg(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismBody {
    Anchor,
    SgnSharp,
    Proj1,
    Proj2,
    Table(Vec<(Literal, Literal)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Brandt,
    Calculus,
    Vector,
    Consequences,
    Transitive,
    Morphism,
    Homomorphism,
    VectorMorphism,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Brandt,
        CheckKind::Calculus,
        CheckKind::Vector,
        CheckKind::Consequences,
        CheckKind::Transitive,
        CheckKind::Morphism,
        CheckKind::Homomorphism,
        CheckKind::VectorMorphism,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CheckKind::Brandt => "brandt",
            CheckKind::Calculus => "calculus",
            CheckKind::Vector => "vector",
            CheckKind::Consequences => "consequences",
            CheckKind::Transitive => "transitive",
            CheckKind::Morphism => "morphism",
            CheckKind::Homomorphism => "homomorphism",
            CheckKind::VectorMorphism => "vector_morphism",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }

    /// Whether the check applies to morphisms rather than groupoids.
    pub fn on_morphism(self) -> bool {
        matches!(self, CheckKind::Morphism | CheckKind::Homomorphism | CheckKind::VectorMorphism)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Field {
        name: Ident,
        modulus: u64,
    },
    Space {
        name: Ident,
        field: Ident,
        dim: usize,
    },
    Subspace {
        name: Ident,
        space: Ident,
        generators: Vec<Vec<i64>>,
    },
    Groupoid {
        name: Ident,
        construction: Construction,
    },
    /// `target` is `None` when written `_`: the canonical target of the body.
    Morphism {
        name: Ident,
        source: Ident,
        target: Option<Ident>,
        body: MorphismBody,
    },
    Check {
        target: Ident,
        kind: CheckKind,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StmtKind,
    /// Position of the leading keyword.
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecAst {
    pub statements: Vec<Statement>,
}

impl SpecAst {
    pub fn checks(&self) -> impl Iterator<Item = (&Ident, CheckKind, Span)> {
        self.statements.iter().filter_map(|s| match &s.kind {
            StmtKind::Check { target, kind } => Some((target, *kind, s.span)),
            _ => None,
        })
    }

    /// Copy with every span reset, for structural comparison.
    pub fn without_spans(&self) -> SpecAst {
        let z = |i: &Ident| Ident::new(&i.name);
        let statements = self
            .statements
            .iter()
            .map(|s| {
                let kind = match &s.kind {
                    StmtKind::Field { name, modulus } => StmtKind::Field { name: z(name), modulus: *modulus },
                    StmtKind::Space { name, field, dim } => {
                        StmtKind::Space { name: z(name), field: z(field), dim: *dim }
                    }
                    StmtKind::Subspace { name, space, generators } => {
                        StmtKind::Subspace { name: z(name), space: z(space), generators: generators.clone() }
                    }
                    StmtKind::Groupoid { name, construction } => {
                        let construction = match construction {
                            Construction::Pair(a) => Construction::Pair(z(a)),
                            Construction::Null(a) => Construction::Null(z(a)),
                            Construction::SingleUnit(a) => Construction::SingleUnit(z(a)),
                            Construction::Vpq { space, p, q } => Construction::Vpq { space: z(space), p: *p, q: *q },
                            Construction::V3(a) => Construction::V3(z(a)),
                            Construction::Tvg { space, subspace } => {
                                Construction::Tvg { space: z(space), subspace: z(subspace) }
                            }
                            Construction::Product(a, b) => Construction::Product(z(a), z(b)),
                            Construction::Whitney(a, b) => Construction::Whitney(z(a), z(b)),
                            Construction::Sg(n) => Construction::Sg(*n),
                        };
                        StmtKind::Groupoid { name: z(name), construction }
                    }
                    StmtKind::Morphism { name, source, target, body } => StmtKind::Morphism {
                        name: z(name),
                        source: z(source),
                        target: target.as_ref().map(z),
                        body: body.clone(),
                    },
                    StmtKind::Check { target, kind } => StmtKind::Check { target: z(target), kind: *kind },
                };
                Statement { kind, span: Span::default() }
            })
            .collect();
        SpecAst { statements }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Pair(a) => write!(f, "pair({})", a.name),
            Construction::Null(a) => write!(f, "null({})", a.name),
            Construction::SingleUnit(a) => write!(f, "single_unit({})", a.name),
            Construction::Vpq { space, p, q } => write!(f, "vpq({}, p={p}, q={q})", space.name),
            Construction::V3(a) => write!(f, "v3({})", a.name),
            Construction::Tvg { space, subspace } => write!(f, "tvg({}, {})", space.name, subspace.name),
            Construction::Product(a, b) => write!(f, "product({}, {})", a.name, b.name),
            Construction::Whitney(a, b) => write!(f, "whitney({}, {})", a.name, b.name),
            Construction::Sg(n) => write!(f, "sg({n})"),
        }
    }
}

impl fmt::Display for MorphismBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismBody::Anchor => f.write_str("anchor"),
            MorphismBody::SgnSharp => f.write_str("sgn_sharp"),
            MorphismBody::Proj1 => f.write_str("proj1"),
            MorphismBody::Proj2 => f.write_str("proj2"),
            MorphismBody::Table(entries) => {
                let parts: Vec<String> = entries.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                write!(f, "table{{ {} }}", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Field { name, modulus } => write!(f, "field {} = Zp({modulus})", name.name),
            StmtKind::Space { name, field, dim } => write!(f, "space {} = {}^{dim}", name.name, field.name),
            StmtKind::Subspace { name, space, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| tuple(g)).collect();
                write!(f, "subspace {} of {} = span{{ {} }}", name.name, space.name, gens.join(", "))
            }
            StmtKind::Groupoid { name, construction } => write!(f, "groupoid {} = {construction}", name.name),
            StmtKind::Morphism { name, source, target, body } => {
                let target = target.as_ref().map_or("_", |t| t.name.as_str());
                write!(f, "morphism {} : {} -> {target} = {body}", name.name, source.name)
            }
            StmtKind::Check { target, kind } => write!(f, "check {} {}", target.name, kind.keyword()),
        }
    }
}

impl fmt::Display for SpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
