//! Line-oriented parser. A statement ends at the end of a line unless a
//! bracket is still open. Names are resolved and moduli checked for
//! primality while parsing.

use std::collections::HashMap;

use super::ast::{CheckKind, Construction, Ident, Literal, MorphismBody, Span, SpecAst, Statement, StmtKind};
use super::diagnostic::{Diagnostic, Diagnostics};
use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(i64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
    text: String,
}

const SYMBOLS: [&str; 11] = ["->", "=", "(", ")", ",", "{", "}", "^", ":", "-", "+"];

type PResult<T> = std::result::Result<T, Diagnostic>;

/// Splits the source into statements of tokens.
fn lex(src: &str) -> (Vec<Vec<Token>>, Vec<Diagnostic>) {
    let mut statements = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut depth: i64 = 0;
    let mut errors = Vec::new();
    for (l, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span { line: l + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                match text.parse::<i64>() {
                    Ok(v) => current.push(Token { tok: Tok::Int(v), span, text }),
                    Err(_) => {
                        errors.push(Diagnostic::error("IntegerOverflow", "integer literal is too large", span, &text))
                    }
                }
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                current.push(Token { tok: Tok::Word(text.clone()), span, text });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                match *sym {
                    "(" | "{" => depth += 1,
                    ")" | "}" => depth -= 1,
                    _ => {}
                }
                current.push(Token { tok: Tok::Sym(sym), span, text: sym.to_string() });
                i += sym.chars().count();
                continue;
            }
            errors.push(Diagnostic::error(
                "UnexpectedCharacter",
                format!("unexpected character `{c}`"),
                span,
                &c.to_string(),
            ));
            i += 1;
        }
        if depth <= 0 && !current.is_empty() {
            statements.push(std::mem::take(&mut current));
            depth = 0;
        }
    }
    if !current.is_empty() {
        statements.push(current);
    }
    (statements, errors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Field,
    Space,
    Subspace,
    Groupoid,
    Morphism,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Field => "a field",
            Kind::Space => "a space",
            Kind::Subspace => "a subspace",
            Kind::Groupoid => "a groupoid",
            Kind::Morphism => "a morphism",
        }
    }
}

struct Symbol {
    kind: Kind,
    /// Dimension, for spaces.
    dim: usize,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Error positioned at the current token, or at the last one when the
    /// statement ended early.
    fn error(&self, code: &str, expected: &str) -> Diagnostic {
        match self.peek() {
            Some(t) => Diagnostic::error(code, format!("expected {expected}, found `{}`", t.text), t.span, &t.text),
            None => {
                let last = self.toks.last().expect("statements are nonempty");
                Diagnostic::error(code, format!("expected {expected} after `{}`", last.text), last.span, &last.text)
            }
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(x), .. }) if *x == s)
    }

    fn sym(&mut self, s: &str) -> PResult<&'a Token> {
        if self.is_sym(s) {
            Ok(self.next().expect("peeked"))
        } else {
            Err(self.error("Syntax", &format!("`{s}`")))
        }
    }

    fn word(&mut self, what: &str) -> PResult<Ident> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), span, .. }) => {
                let id = Ident { name: w.clone(), span: *span };
                self.pos += 1;
                Ok(id)
            }
            _ => Err(self.error("Syntax", what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error("Syntax", &format!("`{kw}`"))),
        }
    }

    fn int(&mut self) -> PResult<(i64, Span)> {
        let mut sign = 1;
        let mut span = None;
        if self.is_sym("-") || self.is_sym("+") {
            let t = self.next().expect("peeked");
            if t.text == "-" {
                sign = -1;
            }
            span = Some(t.span);
        }
        match self.peek() {
            Some(Token { tok: Tok::Int(v), span: s, .. }) => {
                self.pos += 1;
                Ok((sign * v, span.unwrap_or(*s)))
            }
            _ => Err(self.error("Syntax", "an integer")),
        }
    }

    fn unsigned(&mut self, what: &str) -> PResult<(u64, Span)> {
        let start = self.pos;
        let (v, span) = self.int()?;
        if v < 0 {
            let t = &self.toks[start];
            return Err(Diagnostic::error("Syntax", format!("{what} must be non-negative"), span, &t.text));
        }
        Ok((v as u64, span))
    }

    fn end(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Diagnostic::error(
                "Syntax",
                format!("unexpected `{}` after the statement", t.text),
                t.span,
                &t.text,
            )),
        }
    }
}

enum Arg {
    Name(Ident),
    Named(Ident, i64),
    Int(i64, Span),
}

impl Arg {
    fn span(&self) -> Span {
        match self {
            Arg::Name(i) | Arg::Named(i, _) => i.span,
            Arg::Int(_, s) => *s,
        }
    }
}

struct Parser {
    symbols: HashMap<String, Symbol>,
}

impl Parser {
    fn declare(&mut self, name: &Ident, kind: Kind, dim: usize) -> PResult<()> {
        if self.symbols.contains_key(&name.name) {
            return Err(Diagnostic::error(
                "Redeclaration",
                format!("`{}` is already declared", name.name),
                name.span,
                &name.name,
            ));
        }
        self.symbols.insert(name.name.clone(), Symbol { kind, dim });
        Ok(())
    }

    fn resolve(&self, id: &Ident, expected: &[Kind]) -> PResult<&Symbol> {
        let Some(sym) = self.symbols.get(&id.name) else {
            return Err(Diagnostic::error(
                "UndeclaredIdentifier",
                format!("`{}` is not declared", id.name),
                id.span,
                &id.name,
            ));
        };
        if !expected.contains(&sym.kind) {
            let want: Vec<&str> = expected.iter().map(|k| k.noun()).collect();
            return Err(Diagnostic::error(
                "WrongKind",
                format!("`{}` is {}, expected {}", id.name, sym.kind.noun(), want.join(" or ")),
                id.span,
                &id.name,
            ));
        }
        Ok(sym)
    }

    fn statement(&mut self, toks: &[Token]) -> PResult<Statement> {
        let mut c = Cursor { toks, pos: 0 };
        let head = c.word("a statement keyword")?;
        let kind = match head.name.as_str() {
            "field" => self.field(&mut c)?,
            "space" => self.space(&mut c)?,
            "subspace" => self.subspace(&mut c)?,
            "groupoid" => self.groupoid(&mut c)?,
            "morphism" => self.morphism(&mut c)?,
            "check" => self.check(&mut c)?,
            other => {
                return Err(Diagnostic::error(
                    "UnknownKeyword",
                    format!("unknown keyword `{other}`; expected field, space, subspace, groupoid, morphism or check"),
                    head.span,
                    other,
                ))
            }
        };
        c.end()?;
        Ok(Statement { kind, span: head.span })
    }

    fn field(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let name = c.word("a field name")?;
        c.sym("=")?;
        c.keyword("Zp")?;
        c.sym("(")?;
        let at = c.pos;
        let (modulus, span) = c.unsigned("the modulus")?;
        c.sym(")")?;
        if let Err(e) = PrimeField::new(modulus) {
            return Err(Diagnostic::error(e.code(), e.to_string(), span, &toks_text(c, at)));
        }
        self.declare(&name, Kind::Field, 0)?;
        Ok(StmtKind::Field { name, modulus })
    }

    fn space(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let name = c.word("a space name")?;
        c.sym("=")?;
        let field = c.word("a field name")?;
        self.resolve(&field, &[Kind::Field])?;
        c.sym("^")?;
        let (dim, _) = c.unsigned("the dimension")?;
        self.declare(&name, Kind::Space, dim as usize)?;
        Ok(StmtKind::Space { name, field, dim: dim as usize })
    }

    fn subspace(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let name = c.word("a subspace name")?;
        c.keyword("of")?;
        let space = c.word("a space name")?;
        let dim = self.resolve(&space, &[Kind::Space])?.dim;
        c.sym("=")?;
        c.keyword("span")?;
        c.sym("{")?;
        let mut generators = Vec::new();
        while !c.is_sym("}") {
            let at = c.pos;
            let lit = literal(c)?;
            let coords = lit.flatten();
            if coords.len() != dim {
                let t = &c.toks[at];
                return Err(Diagnostic::error(
                    "DimensionMismatch",
                    format!("generator has {} coordinates, `{}` has dimension {dim}", coords.len(), space.name),
                    t.span,
                    &lit.to_string(),
                ));
            }
            generators.push(coords);
            if !c.is_sym("}") {
                c.sym(",")?;
            }
        }
        c.sym("}")?;
        self.declare(&name, Kind::Subspace, dim)?;
        Ok(StmtKind::Subspace { name, space, generators })
    }

    fn groupoid(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let name = c.word("a groupoid name")?;
        c.sym("=")?;
        let ctor = c.word("a construction")?;
        c.sym("(")?;
        let mut args = Vec::new();
        while !c.is_sym(")") {
            let arg = match c.peek() {
                Some(Token { tok: Tok::Word(_), .. }) => {
                    let id = c.word("an argument")?;
                    if c.is_sym("=") {
                        c.next();
                        let (v, _) = c.int()?;
                        Arg::Named(id, v)
                    } else {
                        Arg::Name(id)
                    }
                }
                _ => {
                    let (v, s) = c.int()?;
                    Arg::Int(v, s)
                }
            };
            args.push(arg);
            if !c.is_sym(")") {
                c.sym(",")?;
            }
        }
        let close = c.sym(")")?;
        let construction = self.construction(&ctor, args, close.span)?;
        self.declare(&name, Kind::Groupoid, 0)?;
        Ok(StmtKind::Groupoid { name, construction })
    }

    fn construction(&self, ctor: &Ident, args: Vec<Arg>, close: Span) -> PResult<Construction> {
        let arity = |n: usize| -> PResult<()> {
            if args.len() != n {
                let span = args.get(n).map_or(close, Arg::span);
                return Err(Diagnostic::error(
                    "Arity",
                    format!(
                        "`{}` takes {n} argument{}, found {}",
                        ctor.name,
                        if n == 1 { "" } else { "s" },
                        args.len()
                    ),
                    span,
                    &ctor.name,
                ));
            }
            Ok(())
        };
        let name = |a: &Arg, kinds: &[Kind]| -> PResult<Ident> {
            match a {
                Arg::Name(id) => {
                    self.resolve(id, kinds)?;
                    Ok(id.clone())
                }
                other => {
                    Err(Diagnostic::error("Syntax", format!("expected {} name", kinds[0].noun()), other.span(), ""))
                }
            }
        };
        let named = |a: &Arg, key: &str| -> PResult<i64> {
            match a {
                Arg::Named(id, v) if id.name == key => Ok(*v),
                other => Err(Diagnostic::error("Syntax", format!("expected `{key}=<int>`"), other.span(), "")),
            }
        };
        let sp = [Kind::Space];
        let gr = [Kind::Groupoid];
        Ok(match ctor.name.as_str() {
            "pair" | "null" | "single_unit" | "v3" => {
                arity(1)?;
                let s = name(&args[0], &sp)?;
                match ctor.name.as_str() {
                    "pair" => Construction::Pair(s),
                    "null" => Construction::Null(s),
                    "single_unit" => Construction::SingleUnit(s),
                    _ => Construction::V3(s),
                }
            }
            "vpq" => {
                arity(3)?;
                Construction::Vpq { space: name(&args[0], &sp)?, p: named(&args[1], "p")?, q: named(&args[2], "q")? }
            }
            "tvg" => {
                arity(2)?;
                Construction::Tvg { space: name(&args[0], &sp)?, subspace: name(&args[1], &[Kind::Subspace])? }
            }
            "product" | "whitney" => {
                arity(2)?;
                let (a, b) = (name(&args[0], &gr)?, name(&args[1], &gr)?);
                if ctor.name == "product" {
                    Construction::Product(a, b)
                } else {
                    Construction::Whitney(a, b)
                }
            }
            "sg" => {
                arity(1)?;
                match &args[0] {
                    Arg::Int(n, _) if *n >= 0 => Construction::Sg(*n as u64),
                    other => {
                        return Err(Diagnostic::error("Syntax", "expected a non-negative integer", other.span(), ""))
                    }
                }
            }
            other => {
                return Err(Diagnostic::error(
                    "UnknownConstruction",
                    format!("unknown construction `{other}`"),
                    ctor.span,
                    other,
                ))
            }
        })
    }

    fn morphism(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let name = c.word("a morphism name")?;
        c.sym(":")?;
        let source = c.word("a source groupoid")?;
        self.resolve(&source, &[Kind::Groupoid])?;
        c.sym("->")?;
        let target = c.word("a target groupoid or `_`")?;
        let target = if target.name == "_" {
            None
        } else {
            self.resolve(&target, &[Kind::Groupoid])?;
            Some(target)
        };
        c.sym("=")?;
        let body_kw = c.word("a morphism body")?;
        let body = match body_kw.name.as_str() {
            "anchor" => MorphismBody::Anchor,
            "sgn_sharp" => MorphismBody::SgnSharp,
            "proj1" => MorphismBody::Proj1,
            "proj2" => MorphismBody::Proj2,
            "table" => {
                c.sym("{")?;
                let mut entries = Vec::new();
                while !c.is_sym("}") {
                    let a = literal(c)?;
                    c.sym("->")?;
                    let b = literal(c)?;
                    entries.push((a, b));
                    if !c.is_sym("}") {
                        c.sym(",")?;
                    }
                }
                c.sym("}")?;
                MorphismBody::Table(entries)
            }
            other => {
                return Err(Diagnostic::error(
                    "UnknownMorphism",
                    format!(
                        "unknown morphism body `{other}`; expected anchor, sgn_sharp, proj1, proj2 or table{{...}}"
                    ),
                    body_kw.span,
                    other,
                ))
            }
        };
        self.declare(&name, Kind::Morphism, 0)?;
        Ok(StmtKind::Morphism { name, source, target, body })
    }

    fn check(&mut self, c: &mut Cursor) -> PResult<StmtKind> {
        let target = c.word("a groupoid or morphism name")?;
        let sym_kind = self.resolve(&target, &[Kind::Groupoid, Kind::Morphism])?.kind;
        let kw = c.word("a check kind")?;
        let Some(kind) = CheckKind::from_keyword(&kw.name) else {
            let all: Vec<&str> = CheckKind::ALL.iter().map(|k| k.keyword()).collect();
            return Err(Diagnostic::error(
                "UnknownCheck",
                format!("unknown check `{}`; expected one of {}", kw.name, all.join(", ")),
                kw.span,
                &kw.name,
            ));
        };
        if kind.on_morphism() != (sym_kind == Kind::Morphism) {
            return Err(Diagnostic::error(
                "CheckMismatch",
                format!(
                    "`{}` applies to {}s, `{}` is {}",
                    kind.keyword(),
                    if kind.on_morphism() { "morphism" } else { "groupoid" },
                    target.name,
                    sym_kind.noun()
                ),
                kw.span,
                &kw.name,
            ));
        }
        Ok(StmtKind::Check { target, kind })
    }
}

fn toks_text(c: &Cursor, at: usize) -> String {
    c.toks.get(at).map(|t| t.text.clone()).unwrap_or_default()
}

fn literal(c: &mut Cursor) -> PResult<Literal> {
    if c.is_sym("(") {
        c.next();
        let mut items = vec![literal(c)?];
        while c.is_sym(",") {
            c.next();
            items.push(literal(c)?);
        }
        c.sym(")")?;
        Ok(Literal::Tuple(items))
    } else {
        match c.peek() {
            Some(Token { tok: Tok::Int(_), .. }) | Some(Token { tok: Tok::Sym("-" | "+"), .. }) => {
                Ok(Literal::Int(c.int()?.0))
            }
            _ => Err(c.error("Syntax", "an element literal")),
        }
    }
}

/// Parses a definition file. Every failing statement contributes one
/// diagnostic; parsing continues with the next statement.
pub fn parse(src: &str) -> Result<SpecAst, Diagnostics> {
    let (statements, mut errors) = lex(src);
    let mut parser = Parser { symbols: HashMap::new() };
    let mut ast = SpecAst::default();
    for toks in &statements {
        match parser.statement(toks) {
            Ok(s) => ast.statements.push(s),
            Err(d) => errors.push(d),
        }
    }
    if errors.is_empty() {
        Ok(ast)
    } else {
        errors.sort_by_key(|d| d.span);
        Err(Diagnostics(errors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_error(src: &str) -> Diagnostic {
        parse(src).unwrap_err().first().clone()
    }

    #[test]
    fn four_statement_example() {
        let ast = parse("field F = Zp(5)\nspace V = F^1\ngroupoid G = vpq(V, p=2, q=3)\ncheck G vector").unwrap();
        assert_eq!(ast.statements.len(), 4);
        assert_eq!(ast.statements[2].span, Span { line: 3, col: 1 });
        match &ast.statements[2].kind {
            StmtKind::Groupoid { construction: Construction::Vpq { p: 2, q: 3, .. }, .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn not_prime() {
        let d = first_error("field F = Zp(6)");
        assert_eq!(d.code, "NotPrime");
        assert_eq!(d.message, "6 is not prime");
        assert_eq!((d.line(), d.col()), (1, 14));
    }

    #[test]
    fn positioned_errors() {
        let d = first_error("field F = Zp(5)\nspace V = G^1");
        assert_eq!((d.code.as_str(), d.line(), d.col()), ("UndeclaredIdentifier", 2, 11));
        let d = first_error("field F = Zp(5)\n\nfeld G = Zp(3)");
        assert_eq!((d.code.as_str(), d.line()), ("UnknownKeyword", 3));
        let d = first_error("field F = Zp(5)\nspace V = F^1\ngroupoid G = pair(V, V)");
        assert_eq!((d.code.as_str(), d.line(), d.col()), ("Arity", 3, 22));
        let d = first_error("field F = Zp(5)\nspace V = F^1\ngroupoid G = pear(V)");
        assert_eq!(d.code, "UnknownConstruction");
        let d = first_error("field F = Zp(5)\ncheck F brandt");
        assert_eq!(d.code, "WrongKind");
        let d = first_error("field F = Zp(5)\nfield F = Zp(3)");
        assert_eq!((d.code.as_str(), d.line()), ("Redeclaration", 2));
    }

    #[test]
    fn comments_and_multiline_tables() {
        let src = "# header\nfield F = Zp(2) # trailing\nspace V = F^1\ngroupoid G = pair(V)\n\
                   morphism M : G -> G = table{\n  (0,0) -> (0,0), (0,1) -> (0,1),\n  (1,0) -> (1,0), (1,1) -> (1,1),\n}\ncheck M morphism\n";
        let ast = parse(src).unwrap();
        assert_eq!(ast.statements.len(), 5);
        assert_eq!(ast.statements[4].span.line, 9);
        match &ast.statements[3].kind {
            StmtKind::Morphism { body: MorphismBody::Table(t), .. } => assert_eq!(t.len(), 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subspace_and_underscore_target() {
        let src = "field F = Zp(2)\nspace V = F^2\nsubspace W of V = span{ (1,0) }\ngroupoid T = tvg(V, W)\n\
                   morphism A : T -> _ = anchor\ncheck A vector_morphism";
        let ast = parse(src).unwrap();
        match &ast.statements[4].kind {
            StmtKind::Morphism { target: None, body: MorphismBody::Anchor, .. } => {}
            other => panic!("{other:?}"),
        }
        let d = first_error("field F = Zp(2)\nspace V = F^2\nsubspace W of V = span{ (1,0,1) }");
        assert_eq!((d.code.as_str(), d.line()), ("DimensionMismatch", 3));
    }

    #[test]
    fn check_kind_must_match_target() {
        let d = first_error("field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\ncheck G homomorphism");
        assert_eq!((d.code.as_str(), d.line(), d.col()), ("CheckMismatch", 4, 9));
    }

    #[test]
    fn render_round_trip() {
        let src = "field F = Zp(3)\nspace V = F^2\nsubspace W of V = span{(1,2)}\ngroupoid G = vpq(V, p=2, q=-1)\n\
                   groupoid S = sg(3)\nmorphism M : G -> G = table{ ((0,0),(0,0)) -> ((0,0),(0,0)) }\ncheck M morphism\n";
        let ast = parse(src).unwrap();
        let again = parse(&ast.to_string()).unwrap();
        assert_eq!(ast.without_spans(), again.without_spans());
    }

    #[test]
    fn unbalanced_bracket_reports_a_position_in_the_text() {
        let src = "field F = Zp(5\nspace V = F^1";
        let d = first_error(src);
        assert!(d.line() >= 1 && d.line() <= 2);
    }
}
