//! Finite vector spaces addressed by element index.
//!
//! Every space enumerates its elements in lexicographic order of their
//! ambient coordinates, and the arithmetic works directly on those indices.
//! Verification sweeps never touch coordinates except to render witnesses.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{FVector, Subspace};
use crate::notation::Shape;
use crate::report::{AxiomReport, CheckOptions, LawCheck};

/// Hard ceiling on materialized spaces.
pub const MAX_SPACE_ELEMENTS: usize = 1 << 20;

pub trait AbstractSpace: Send + Sync + fmt::Debug {
    fn field(&self) -> PrimeField;
    fn len(&self) -> usize;
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn scale(&self, k: u32, a: usize) -> usize;
    /// Ambient coordinates of element `i`.
    fn point(&self, i: usize) -> &[u32];
    fn index_of(&self, coords: &[u32]) -> Option<usize>;
    fn shape(&self) -> Shape;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn neg(&self, a: usize) -> usize {
        self.scale(self.field().neg(1), a)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `a·x + b·y`.
    fn combine(&self, a: u32, x: usize, b: u32, y: usize) -> usize {
        self.add(self.scale(a, x), self.scale(b, y))
    }

    fn render(&self, i: usize) -> String {
        self.shape().render(self.point(i))
    }

    fn vector(&self, i: usize) -> FVector {
        FVector::from_residues(self.field(), self.point(i).to_vec())
    }
}

pub type SpaceRef = Arc<dyn AbstractSpace>;

/// Elements of `s` in canonical order.
pub fn enumerate(s: &dyn AbstractSpace) -> Vec<FVector> {
    (0..s.len()).map(|i| s.vector(i)).collect()
}

fn guard(card: u128) -> Result<usize> {
    if card > MAX_SPACE_ELEMENTS as u128 {
        return Err(Error::SizeGuard(format!("space with {card} elements exceeds {MAX_SPACE_ELEMENTS}")));
    }
    Ok(card as usize)
}

/// A subspace of `Z_p^n` (the whole of `Z_p^n` included). Indices are the
/// base-p numerals of the echelon coefficients, which orders elements
/// lexicographically by coordinates.
#[derive(Debug)]
pub struct CoordSpace {
    subspace: Subspace,
    p: usize,
    points: Vec<Vec<u32>>,
}

impl CoordSpace {
    pub fn new(subspace: Subspace) -> Result<Self> {
        let n = guard(subspace.cardinality())?;
        let points = subspace.enumerate().into_iter().map(FVector::into_coords).collect::<Vec<_>>();
        debug_assert_eq!(points.len(), n);
        let p = subspace.field().modulus() as usize;
        Ok(CoordSpace { subspace, p, points })
    }

    pub fn full(field: PrimeField, dim: usize) -> Result<Self> {
        CoordSpace::new(Subspace::full(field, dim))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Applies `op` to matching base-p digits of `a` and `b`.
    fn digitwise(&self, mut a: usize, mut b: usize, op: impl Fn(usize, usize) -> usize) -> usize {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.subspace.rank() {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn number(&self, digits: impl Iterator<Item = usize>) -> usize {
        digits.fold(0, |acc, d| acc * self.p + d)
    }
}

impl AbstractSpace for CoordSpace {
    fn field(&self) -> PrimeField {
        self.subspace.field()
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn zero(&self) -> usize {
        0
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        let k = k as usize % self.p;
        self.digitwise(a, 0, |x, _| x * k % self.p)
    }

    fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        if coords.len() != self.subspace.ambient_dim() || coords.iter().any(|&c| c as usize >= self.p) {
            return None;
        }
        let c = self.subspace.coefficients(coords)?;
        Some(self.number(c.into_iter().map(|x| x as usize)))
    }

    fn shape(&self) -> Shape {
        Shape::Leaf(self.subspace.ambient_dim())
    }
}

/// Cartesian product of spaces; coordinates are concatenated.
#[derive(Debug)]
pub struct ProductSpace {
    factors: Vec<SpaceRef>,
    dims: Vec<usize>,
    sizes: Vec<usize>,
    points: Vec<Vec<u32>>,
}

impl ProductSpace {
    pub fn new(factors: Vec<SpaceRef>) -> Result<Self> {
        let field = factors[0].field();
        if let Some(bad) = factors.iter().find(|f| f.field() != field) {
            return Err(Error::FieldMismatch { left: field.modulus(), right: bad.field().modulus() });
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        let total = guard(sizes.iter().map(|&s| s as u128).product())?;
        let dims = factors.iter().map(|f| f.shape().dim()).collect();
        let mut space = ProductSpace { factors, dims, sizes, points: Vec::with_capacity(total) };
        for i in 0..total {
            let parts = space.split(i);
            let mut pt = Vec::new();
            for (f, j) in space.factors.iter().zip(parts) {
                pt.extend_from_slice(f.point(j));
            }
            space.points.push(pt);
        }
        Ok(space)
    }

    pub fn factors(&self) -> &[SpaceRef] {
        &self.factors
    }

    /// Component indices of element `i`.
    pub fn split(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &s) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = i % s;
            i /= s;
        }
        out
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.sizes).fold(0, |acc, (&j, &s)| acc * s + j)
    }

    /// Applies `op` factor by factor without materialising the split.
    fn componentwise(
        &self,
        mut a: usize,
        mut b: usize,
        op: impl Fn(&dyn AbstractSpace, usize, usize) -> usize,
    ) -> usize {
        let (mut out, mut place) = (0, 1);
        for (f, &s) in self.factors.iter().zip(&self.sizes).rev() {
            out += op(f.as_ref(), a % s, b % s) * place;
            a /= s;
            b /= s;
            place *= s;
        }
        out
    }
}

impl AbstractSpace for ProductSpace {
    fn field(&self) -> PrimeField {
        self.factors[0].field()
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn zero(&self) -> usize {
        let z: Vec<usize> = self.factors.iter().map(|f| f.zero()).collect();
        self.join(&z)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.componentwise(a, b, |f, x, y| f.add(x, y))
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        self.componentwise(a, 0, |f, x, _| f.scale(k, x))
    }

    fn point(&self, i: usize) -> &[u32] {
        &self.points[i]
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        if coords.len() != self.dims.iter().sum::<usize>() {
            return None;
        }
        let mut at = 0;
        let mut parts = Vec::with_capacity(self.factors.len());
        for (f, &d) in self.factors.iter().zip(&self.dims) {
            parts.push(f.index_of(&coords[at..at + d])?);
            at += d;
        }
        Some(self.join(&parts))
    }

    fn shape(&self) -> Shape {
        Shape::Product(self.factors.iter().map(|f| f.shape()).collect())
    }
}

/// Local numbering of a subset of a parent space.
#[derive(Debug, Clone)]
struct Members {
    members: Vec<usize>,
    local: HashMap<usize, usize>,
}

impl Members {
    fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let local = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Members { members, local }
    }

    fn local(&self, parent: usize) -> usize {
        *self.local.get(&parent).expect("operation leaves the subset")
    }
}

/// A linear subspace of a parent space with the inherited operations.
#[derive(Debug)]
pub struct SubsetSpace {
    parent: SpaceRef,
    members: Members,
}

impl SubsetSpace {
    /// Fails with `NotASubspace` unless `members` contains zero and is closed
    /// under addition and scaling.
    pub fn new(parent: SpaceRef, members: Vec<usize>) -> Result<Self> {
        let report = check_subspace(parent.as_ref(), &members, &CheckOptions::with_cap(1));
        if let Some(w) = report.witnesses().next() {
            return Err(Error::NotASubspace(format!("{}: {}", w.law, w.inputs.join(", "))));
        }
        Ok(SubsetSpace { parent, members: Members::new(members) })
    }

    pub fn parent(&self) -> &SpaceRef {
        &self.parent
    }

    pub fn to_parent(&self, i: usize) -> usize {
        self.members.members[i]
    }

    pub fn from_parent(&self, j: usize) -> Option<usize> {
        self.members.local.get(&j).copied()
    }

    pub fn members(&self) -> &[usize] {
        &self.members.members
    }
}

impl AbstractSpace for SubsetSpace {
    fn field(&self) -> PrimeField {
        self.parent.field()
    }

    fn len(&self) -> usize {
        self.members.members.len()
    }

    fn zero(&self) -> usize {
        self.members.local(self.parent.zero())
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let m = &self.members.members;
        self.members.local(self.parent.add(m[a], m[b]))
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        self.members.local(self.parent.scale(k, self.members.members[a]))
    }

    fn point(&self, i: usize) -> &[u32] {
        self.parent.point(self.members.members[i])
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.from_parent(self.parent.index_of(coords)?)
    }

    fn shape(&self) -> Shape {
        self.parent.shape()
    }
}

/// A subset of a parent space re-based at `origin`:
/// `x ⊞ y = x + y - origin` and `k ⊠ x = k·x + (1-k)·origin`.
#[derive(Debug)]
pub struct ShiftedSpace {
    parent: SpaceRef,
    origin: usize,
    members: Members,
}

impl ShiftedSpace {
    /// Fails with `NotASubspace` when the shifted operations leave `members`.
    pub fn new(parent: SpaceRef, origin: usize, members: Vec<usize>) -> Result<Self> {
        let members = Members::new(members);
        if !members.local.contains_key(&origin) {
            return Err(Error::NotASubspace(format!("origin {} is not a member", parent.render(origin))));
        }
        let f = parent.field();
        for &x in &members.members {
            for &y in &members.members {
                let s = parent.sub(parent.add(x, y), origin);
                if !members.local.contains_key(&s) {
                    return Err(Error::NotASubspace(format!(
                        "{} ⊞ {} leaves the subset",
                        parent.render(x),
                        parent.render(y)
                    )));
                }
            }
            for k in f.elements() {
                let s = parent.combine(k, x, f.one_minus(k), origin);
                if !members.local.contains_key(&s) {
                    return Err(Error::NotASubspace(format!("{k} ⊠ {} leaves the subset", parent.render(x))));
                }
            }
        }
        Ok(ShiftedSpace { parent, origin, members })
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn to_parent(&self, i: usize) -> usize {
        self.members.members[i]
    }

    pub fn from_parent(&self, j: usize) -> Option<usize> {
        self.members.local.get(&j).copied()
    }

    pub fn parent(&self) -> &SpaceRef {
        &self.parent
    }
}

impl AbstractSpace for ShiftedSpace {
    fn field(&self) -> PrimeField {
        self.parent.field()
    }

    fn len(&self) -> usize {
        self.members.members.len()
    }

    fn zero(&self) -> usize {
        self.members.local(self.origin)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let m = &self.members.members;
        let p = &self.parent;
        self.members.local(p.sub(p.add(m[a], m[b]), self.origin))
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        let f = self.parent.field();
        let x = self.members.members[a];
        self.members.local(self.parent.combine(k, x, f.one_minus(k), self.origin))
    }

    fn point(&self, i: usize) -> &[u32] {
        self.parent.point(self.members.members[i])
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.from_parent(self.parent.index_of(coords)?)
    }

    fn shape(&self) -> Shape {
        self.parent.shape()
    }
}

/// Exhaustive linearity check of an element map given as an index table:
/// `m(a·x + b·y) = a·m(x) + b·m(y)` for all scalars `a, b` and `x, y` in the
/// domain. Cost is `p²·|dom|²`.
/// Largest space whose addition table is precomputed for a sweep.
const TABULATE_LIMIT: usize = 4096;

/// A borrowed space with its addition and scaling precomputed, so that the
/// quadratic and cubic sweeps do table lookups instead of digit arithmetic.
#[derive(Debug)]
pub struct Tabulated<'a> {
    inner: &'a dyn AbstractSpace,
    add: Vec<u32>,
    scale: Vec<u32>,
}

impl<'a> Tabulated<'a> {
    pub fn new(inner: &'a dyn AbstractSpace) -> Self {
        let n = inner.len();
        let p = inner.field().modulus() as usize;
        let add = (0..n * n).map(|i| inner.add(i / n, i % n) as u32).collect();
        let scale = (0..p * n).map(|i| inner.scale((i / n) as u32, i % n) as u32).collect();
        Tabulated { inner, add, scale }
    }

    /// Tabulates `s` when it is small enough, otherwise returns it unchanged.
    pub fn wrap(s: &'a dyn AbstractSpace) -> Box<dyn AbstractSpace + 'a> {
        if s.len() <= TABULATE_LIMIT {
            Box::new(Tabulated::new(s))
        } else {
            Box::new(Borrowed(s))
        }
    }
}

impl AbstractSpace for Tabulated<'_> {
    fn field(&self) -> PrimeField {
        self.inner.field()
    }

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn zero(&self) -> usize {
        self.inner.zero()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b] as usize
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        let k = k as usize % self.field().modulus() as usize;
        self.scale[k * self.len() + a] as usize
    }

    fn point(&self, i: usize) -> &[u32] {
        self.inner.point(i)
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.inner.index_of(coords)
    }

    fn shape(&self) -> Shape {
        self.inner.shape()
    }
}

#[derive(Debug)]
struct Borrowed<'a>(&'a dyn AbstractSpace);

impl AbstractSpace for Borrowed<'_> {
    fn field(&self) -> PrimeField {
        self.0.field()
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn zero(&self) -> usize {
        self.0.zero()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.0.add(a, b)
    }

    fn scale(&self, k: u32, a: usize) -> usize {
        self.0.scale(k, a)
    }

    fn point(&self, i: usize) -> &[u32] {
        self.0.point(i)
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.0.index_of(coords)
    }

    fn shape(&self) -> Shape {
        self.0.shape()
    }
}

pub fn check_linear(
    map: &[usize],
    dom: &dyn AbstractSpace,
    cod: &dyn AbstractSpace,
    opts: &CheckOptions,
) -> Result<AxiomReport> {
    if map.len() != dom.len() {
        return Err(Error::DomainMismatch(format!(
            "table has {} entries, domain has {} elements",
            map.len(),
            dom.len()
        )));
    }
    if let Some((x, &bad)) = map.iter().enumerate().find(|(_, &y)| y >= cod.len()) {
        return Err(Error::DomainMismatch(format!("image of {} is index {bad}", dom.render(x))));
    }
    if dom.field() != cod.field() {
        return Err(Error::FieldMismatch { left: dom.field().modulus(), right: cod.field().modulus() });
    }
    let f = dom.field();
    let (dom, cod) = (Tabulated::wrap(dom), Tabulated::wrap(cod));
    let mut law = LawCheck::new("linear", opts);
    for a in f.elements() {
        for b in f.elements() {
            for x in 0..dom.len() {
                let ax = dom.scale(a, x);
                let amx = cod.scale(a, map[x]);
                for y in 0..dom.len() {
                    let lhs = map[dom.add(ax, dom.scale(b, y))];
                    let rhs = cod.add(amx, cod.scale(b, map[y]));
                    law.check(lhs == rhs, || {
                        (
                            vec![
                                format!("a={a}"),
                                format!("b={b}"),
                                format!("x={}", dom.render(x)),
                                format!("y={}", dom.render(y)),
                            ],
                            cod.render(rhs),
                            cod.render(lhs),
                        )
                    });
                }
            }
        }
    }
    let mut report = AxiomReport::new();
    report.push(law.finish());
    Ok(report)
}

/// Checks that `members` (indices into `space`) contain zero and are closed
/// under addition and scaling. The remaining axioms are inherited.
pub fn check_subspace(space: &dyn AbstractSpace, members: &[usize], opts: &CheckOptions) -> AxiomReport {
    let mut inside = vec![false; space.len()];
    for &m in members {
        inside[m] = true;
    }
    let mut report = AxiomReport::new();

    let mut zero = LawCheck::new("contains-zero", opts);
    zero.check(inside[space.zero()], || {
        (vec![], "zero in subset".into(), format!("{} missing", space.render(space.zero())))
    });
    report.push(zero.finish());

    let mut add = LawCheck::new("closed-under-addition", opts);
    for &x in members {
        for &y in members {
            let s = space.add(x, y);
            add.check(inside[s], || (vec![space.render(x), space.render(y)], "sum in subset".into(), space.render(s)));
        }
    }
    report.push(add.finish());

    let mut scale = LawCheck::new("closed-under-scaling", opts);
    for k in space.field().elements() {
        for &x in members {
            let s = space.scale(k, x);
            scale.check(inside[s], || {
                (vec![format!("k={k}"), space.render(x)], "multiple in subset".into(), space.render(s))
            });
        }
    }
    report.push(scale.finish());
    report
}

/// The full vector-space axiom suite, evaluated through the space's own
/// operations. Associativity makes this cubic in `len()`.
pub fn verify_space_axioms(space: &dyn AbstractSpace, opts: &CheckOptions) -> AxiomReport {
    let n = space.len();
    let f = space.field();
    let r = |i: usize| space.render(i);
    let mut report = AxiomReport::new();

    let mut comm = LawCheck::new("add-commutative", opts);
    for x in 0..n {
        for y in 0..n {
            let (l, rr) = (space.add(x, y), space.add(y, x));
            comm.check(l == rr, || (vec![r(x), r(y)], r(rr), r(l)));
        }
    }
    report.push(comm.finish());

    let mut assoc = LawCheck::new("add-associative", opts);
    for x in 0..n {
        for y in 0..n {
            let xy = space.add(x, y);
            for z in 0..n {
                let (l, rr) = (space.add(xy, z), space.add(x, space.add(y, z)));
                assoc.check(l == rr, || (vec![r(x), r(y), r(z)], r(rr), r(l)));
            }
        }
    }
    report.push(assoc.finish());

    let zero = space.zero();
    let mut ident = LawCheck::new("zero-identity", opts);
    let mut inverse = LawCheck::new("additive-inverse", opts);
    let mut unit = LawCheck::new("scalar-unit", opts);
    for x in 0..n {
        let s = space.add(x, zero);
        ident.check(s == x, || (vec![r(x)], r(x), r(s)));
        let s = space.add(x, space.neg(x));
        inverse.check(s == zero, || (vec![r(x)], r(zero), r(s)));
        let s = space.scale(1 % f.modulus(), x);
        unit.check(s == x, || (vec![r(x)], r(x), r(s)));
    }
    report.push(ident.finish());
    report.push(inverse.finish());
    report.push(unit.finish());

    let mut compat = LawCheck::new("scalar-compatible", opts);
    let mut field_dist = LawCheck::new("distributive-over-field", opts);
    for a in f.elements() {
        for b in f.elements() {
            for x in 0..n {
                let l = space.scale(f.mul(a, b), x);
                let rr = space.scale(a, space.scale(b, x));
                compat.check(l == rr, || (vec![format!("a={a}"), format!("b={b}"), r(x)], r(rr), r(l)));
                let l = space.scale(f.add(a, b), x);
                let rr = space.add(space.scale(a, x), space.scale(b, x));
                field_dist.check(l == rr, || (vec![format!("a={a}"), format!("b={b}"), r(x)], r(rr), r(l)));
            }
        }
    }
    report.push(compat.finish());
    report.push(field_dist.finish());

    let mut vec_dist = LawCheck::new("distributive-over-vectors", opts);
    for a in f.elements() {
        for x in 0..n {
            for y in 0..n {
                let l = space.scale(a, space.add(x, y));
                let rr = space.add(space.scale(a, x), space.scale(a, y));
                vec_dist.check(l == rr, || (vec![format!("a={a}"), r(x), r(y)], r(rr), r(l)));
            }
        }
    }
    report.push(vec_dist.finish());
    report
}
