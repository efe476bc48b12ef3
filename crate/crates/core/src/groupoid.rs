//! Finite Brandt groupoids over an indexed carrier.
//!
//! Source, target and inversion are stored as index tables. Multiplication
//! is a closure returning `None` off its domain; constructions define it
//! intensionally and the verifiers only ever call it.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::notation::Notation;
use crate::report::{AxiomReport, CheckOptions, LawCheck};

pub type MulFn = Arc<dyn Fn(usize, usize) -> Option<usize> + Send + Sync>;

/// Element-keyed description of a groupoid, validated by [`build_groupoid`].
#[derive(Clone, Debug)]
pub struct GroupoidTables {
    pub notation: Notation,
    pub elements: Vec<Vec<u32>>,
    pub alpha: HashMap<Vec<u32>, Vec<u32>>,
    pub beta: HashMap<Vec<u32>, Vec<u32>>,
    pub inv: HashMap<Vec<u32>, Vec<u32>>,
    pub mul: HashMap<(Vec<u32>, Vec<u32>), Vec<u32>>,
    pub units: Vec<Vec<u32>>,
}

struct GroupoidData {
    notation: Notation,
    keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    inv: Vec<usize>,
    units: Vec<usize>,
    is_unit: Vec<bool>,
    alpha_fibres: Vec<Vec<usize>>,
    beta_fibres: Vec<Vec<usize>>,
    mul: MulFn,
}

#[derive(Clone)]
pub struct FiniteGroupoid(Arc<GroupoidData>);

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid").field("elements", &self.len()).field("units", &self.0.units.len()).finish()
    }
}

/// Validates element-keyed tables and builds the groupoid. No axioms are
/// assumed; run [`verify_brandt`] separately.
pub fn build_groupoid(tables: GroupoidTables) -> Result<FiniteGroupoid> {
    let GroupoidTables { notation, mut elements, alpha, beta, inv, mul, units } = tables;
    elements.sort();
    elements.dedup();
    let index: HashMap<Vec<u32>, usize> = elements.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let render = |k: &[u32]| notation.render(k);
    let lookup = |k: &Vec<u32>| index.get(k).copied().ok_or_else(|| Error::UnknownElement(format!("{k:?}")));

    let table = |map: &HashMap<Vec<u32>, Vec<u32>>, name: &'static str| -> Result<Vec<usize>> {
        elements
            .iter()
            .map(|k| {
                let v = map.get(k).ok_or_else(|| Error::PartialMap { map: name, element: render(k) })?;
                lookup(v)
            })
            .collect()
    };
    let alpha = table(&alpha, "alpha")?;
    let beta = table(&beta, "beta")?;
    let inv = table(&inv, "inv")?;
    let units = units.iter().map(lookup).collect::<Result<Vec<_>>>()?;

    let mut products = HashMap::with_capacity(mul.len());
    for ((x, y), z) in &mul {
        let (xi, yi, zi) = (lookup(x)?, lookup(y)?, lookup(z)?);
        if beta[xi] != alpha[yi] {
            return Err(Error::MulDomainMismatch(format!(
                "defined on non-composable pair ({}, {})",
                render(x),
                render(y)
            )));
        }
        products.insert((xi, yi), zi);
    }
    for x in 0..elements.len() {
        for y in 0..elements.len() {
            if beta[x] == alpha[y] && !products.contains_key(&(x, y)) {
                return Err(Error::MulDomainMismatch(format!(
                    "missing on composable pair ({}, {})",
                    render(&elements[x]),
                    render(&elements[y])
                )));
            }
        }
    }
    let mul: MulFn = Arc::new(move |x, y| products.get(&(x, y)).copied());
    FiniteGroupoid::from_parts(notation, elements, alpha, beta, inv, units, mul)
}

impl FiniteGroupoid {
    /// Builds from index tables. `keys` must be strictly increasing.
    pub fn from_parts(
        notation: Notation,
        keys: Vec<Vec<u32>>,
        alpha: Vec<usize>,
        beta: Vec<usize>,
        inv: Vec<usize>,
        mut units: Vec<usize>,
        mul: MulFn,
    ) -> Result<Self> {
        let n = keys.len();
        if let Some(w) = keys.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::CarrierMismatch(format!(
                "carrier keys not strictly increasing at {}",
                notation.render(&w[1])
            )));
        }
        for (name, t) in [("alpha", &alpha), ("beta", &beta), ("inv", &inv)] {
            if t.len() != n {
                let at = keys.get(t.len()).map(|k| notation.render(k)).unwrap_or_default();
                return Err(Error::PartialMap { map: name, element: at });
            }
            if let Some(&bad) = t.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownElement(format!("{name} value index {bad}")));
            }
        }
        if let Some(&bad) = units.iter().find(|&&u| u >= n) {
            return Err(Error::UnknownElement(format!("unit index {bad}")));
        }
        units.sort_unstable();
        units.dedup();
        let mut is_unit = vec![false; n];
        for &u in &units {
            is_unit[u] = true;
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let fibres = |t: &[usize]| {
            let mut fib = vec![Vec::new(); n];
            for (x, &v) in t.iter().enumerate() {
                fib[v].push(x);
            }
            fib
        };
        let alpha_fibres = fibres(&alpha);
        let beta_fibres = fibres(&beta);
        Ok(FiniteGroupoid(Arc::new(GroupoidData {
            notation,
            keys,
            index,
            alpha,
            beta,
            inv,
            units,
            is_unit,
            alpha_fibres,
            beta_fibres,
            mul,
        })))
    }

    fn rebuild(&self, alpha: Vec<usize>, beta: Vec<usize>, inv: Vec<usize>, units: Vec<usize>, mul: MulFn) -> Self {
        FiniteGroupoid::from_parts(self.0.notation.clone(), self.0.keys.clone(), alpha, beta, inv, units, mul)
            .expect("tables derived from a valid groupoid")
    }

    /// Same groupoid with a replaced inversion table.
    pub fn with_inverse(&self, inv: Vec<usize>) -> Result<Self> {
        let d = &self.0;
        FiniteGroupoid::from_parts(
            d.notation.clone(),
            d.keys.clone(),
            d.alpha.clone(),
            d.beta.clone(),
            inv,
            d.units.clone(),
            d.mul.clone(),
        )
    }

    pub fn with_source_target(&self, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        let d = &self.0;
        FiniteGroupoid::from_parts(
            d.notation.clone(),
            d.keys.clone(),
            alpha,
            beta,
            d.inv.clone(),
            d.units.clone(),
            d.mul.clone(),
        )
    }

    pub fn with_units(&self, units: Vec<usize>) -> Result<Self> {
        let d = &self.0;
        FiniteGroupoid::from_parts(
            d.notation.clone(),
            d.keys.clone(),
            d.alpha.clone(),
            d.beta.clone(),
            d.inv.clone(),
            units,
            d.mul.clone(),
        )
    }

    /// Overrides a single product; `None` removes it from the domain.
    pub fn with_product(&self, x: usize, y: usize, value: Option<usize>) -> Self {
        let base = self.0.mul.clone();
        let mul: MulFn = Arc::new(move |a, b| if (a, b) == (x, y) { value } else { base(a, b) });
        let d = &self.0;
        self.rebuild(d.alpha.clone(), d.beta.clone(), d.inv.clone(), d.units.clone(), mul)
    }

    pub fn len(&self) -> usize {
        self.0.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.keys.is_empty()
    }

    pub fn notation(&self) -> &Notation {
        &self.0.notation
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.0.keys[i]
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.0.keys
    }

    pub fn index_of(&self, key: &[u32]) -> Option<usize> {
        self.0.index.get(key).copied()
    }

    pub fn render(&self, i: usize) -> String {
        self.0.notation.render(&self.0.keys[i])
    }

    pub fn alpha(&self, x: usize) -> usize {
        self.0.alpha[x]
    }

    pub fn beta(&self, x: usize) -> usize {
        self.0.beta[x]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.0.inv[x]
    }

    pub fn alpha_table(&self) -> &[usize] {
        &self.0.alpha
    }

    pub fn beta_table(&self) -> &[usize] {
        &self.0.beta
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.0.inv
    }

    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        (self.0.mul)(x, y)
    }

    pub fn units(&self) -> &[usize] {
        &self.0.units
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.0.is_unit[x]
    }

    /// `β(x) = α(y)`.
    pub fn composable(&self, x: usize, y: usize) -> bool {
        self.0.beta[x] == self.0.alpha[y]
    }

    /// Key-level composability test.
    pub fn composable_keys(&self, x: &[u32], y: &[u32]) -> Result<bool> {
        let find = |k: &[u32]| self.index_of(k).ok_or_else(|| Error::UnknownElement(self.0.notation.render(k)));
        Ok(self.composable(find(x)?, find(y)?))
    }

    /// `α⁻¹(u)`, the elements with source `u`.
    pub fn alpha_fibre(&self, u: usize) -> &[usize] {
        &self.0.alpha_fibres[u]
    }

    /// `β⁻¹(u)`, the elements with target `u`.
    pub fn beta_fibre(&self, u: usize) -> &[usize] {
        &self.0.beta_fibres[u]
    }

    /// Arrows from `u` to `v`.
    pub fn hom(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.alpha_fibre(u).iter().copied().filter(move |&x| self.beta(x) == v)
    }

    pub fn anchor(&self, x: usize) -> (usize, usize) {
        (self.alpha(x), self.beta(x))
    }

    /// Anchor map onto `G₀ × G₀`.
    pub fn is_transitive(&self) -> bool {
        let units = self.units();
        let hit: HashSet<(usize, usize)> = (0..self.len()).map(|x| self.anchor(x)).collect();
        units.iter().all(|&u| units.iter().all(|&v| hit.contains(&(u, v))))
    }

    /// `α(x) = β(x)` everywhere.
    pub fn is_group_bundle(&self) -> bool {
        (0..self.len()).all(|x| self.alpha(x) == self.beta(x))
    }

    pub fn isotropy_group(&self, u: usize) -> Result<IsotropyGroup> {
        if u >= self.len() || !self.is_unit(u) {
            let name = if u < self.len() { self.render(u) } else { format!("index {u}") };
            return Err(Error::NotAUnit(name));
        }
        let elements = self.hom(u, u).collect();
        Ok(IsotropyGroup { unit: u, elements })
    }

    /// `z ↦ x⁻¹·z·x` from `G(α(x))` to `G(β(x))`.
    pub fn conjugation_iso(&self, x: usize) -> Result<GroupIso> {
        if x >= self.len() {
            return Err(Error::UnknownElement(format!("index {x}")));
        }
        let source = self.isotropy_group(self.alpha(x))?;
        let target = self.isotropy_group(self.beta(x))?;
        let xi = self.inv(x);
        let image = source.elements.iter().map(|&z| self.mul(xi, z).and_then(|w| self.mul(w, x))).collect();
        Ok(GroupIso { source, target, image })
    }

    /// Restriction to `{x : α(x) = β(x)}`.
    pub fn isotropy_bundle(&self) -> FiniteGroupoid {
        let kept: Vec<usize> = (0..self.len()).filter(|&x| self.alpha(x) == self.beta(x)).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in kept.iter().enumerate() {
            local[x] = i;
        }
        let remap = |t: &[usize]| kept.iter().map(|&x| local[t[x]]).collect::<Vec<_>>();
        let alpha = remap(&self.0.alpha);
        let beta = remap(&self.0.beta);
        let inv = remap(&self.0.inv);
        let units = self.units().iter().filter(|&&u| local[u] != usize::MAX).map(|&u| local[u]).collect();
        let keys = kept.iter().map(|&x| self.0.keys[x].clone()).collect();
        let parent = self.clone();
        let kept_for_mul = kept.clone();
        let local_for_mul = local;
        let mul: MulFn = Arc::new(move |a, b| {
            let z = parent.mul(kept_for_mul[a], kept_for_mul[b])?;
            let l = local_for_mul[z];
            (l != usize::MAX).then_some(l)
        });
        FiniteGroupoid::from_parts(self.0.notation.clone(), keys, alpha, beta, inv, units, mul)
            .expect("restriction of a valid groupoid")
    }
}

/// `G(u) = α⁻¹(u) ∩ β⁻¹(u)` with the restricted multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyGroup {
    unit: usize,
    elements: Vec<usize>,
}

impl IsotropyGroup {
    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Group axioms for the induced operation, exhaustively.
    pub fn verify(&self, g: &FiniteGroupoid, opts: &CheckOptions) -> AxiomReport {
        let r = |x: usize| g.render(x);
        let show = |z: Option<usize>| z.map(r).unwrap_or_else(|| "undefined".into());
        let mut report = AxiomReport::new();

        let mut closed = LawCheck::new("group-closed", opts);
        let mut assoc = LawCheck::new("group-associative", opts);
        for &x in &self.elements {
            for &y in &self.elements {
                let xy = g.mul(x, y);
                closed.check(xy.is_some_and(|z| self.contains(z)), || {
                    (vec![r(x), r(y)], "product in group".into(), show(xy))
                });
                for &z in &self.elements {
                    let lhs = xy.and_then(|w| g.mul(w, z));
                    let rhs = g.mul(y, z).and_then(|w| g.mul(x, w));
                    assoc.check(lhs.is_some() && lhs == rhs, || (vec![r(x), r(y), r(z)], show(lhs), show(rhs)));
                }
            }
        }
        report.push(closed.finish());
        report.push(assoc.finish());

        let u = self.unit;
        let mut ident = LawCheck::new("group-identity", opts);
        let mut inverse = LawCheck::new("group-inverse", opts);
        for &x in &self.elements {
            let (l, rr) = (g.mul(u, x), g.mul(x, u));
            ident.check(l == Some(x) && rr == Some(x), || (vec![r(x)], r(x), format!("{} / {}", show(l), show(rr))));
            let xi = g.inv(x);
            let (l, rr) = (g.mul(xi, x), g.mul(x, xi));
            inverse.check(self.contains(xi) && l == Some(u) && rr == Some(u), || {
                (vec![r(x)], r(u), format!("{} / {}", show(l), show(rr)))
            });
        }
        report.push(ident.finish());
        report.push(inverse.finish());
        report
    }
}

/// A map between isotropy groups, stored parallel to `source.elements()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIso {
    pub source: IsotropyGroup,
    pub target: IsotropyGroup,
    /// `None` where a product in the defining formula was undefined.
    pub image: Vec<Option<usize>>,
}

impl GroupIso {
    pub fn apply(&self, z: usize) -> Option<usize> {
        let i = self.source.elements.binary_search(&z).ok()?;
        self.image[i]
    }

    /// Bijective onto the target group and multiplicative.
    pub fn verify(&self, g: &FiniteGroupoid, opts: &CheckOptions) -> AxiomReport {
        let r = |x: usize| g.render(x);
        let show = |z: Option<usize>| z.map(r).unwrap_or_else(|| "undefined".into());
        let mut report = AxiomReport::new();

        let mut bij = LawCheck::new("iso-bijective", opts);
        let mut seen = HashSet::new();
        for (&z, &w) in self.source.elements.iter().zip(&self.image) {
            let ok = w.is_some_and(|w| self.target.contains(w) && seen.insert(w));
            bij.check(ok, || (vec![r(z)], "distinct element of target group".into(), show(w)));
        }
        bij.check(self.source.order() == self.target.order(), || {
            (
                vec![],
                format!("|G({})| = {}", r(self.target.unit), self.target.order()),
                format!("|G({})| = {}", r(self.source.unit), self.source.order()),
            )
        });
        report.push(bij.finish());

        let mut hom = LawCheck::new("iso-multiplicative", opts);
        for (i, &a) in self.source.elements.iter().enumerate() {
            for (j, &b) in self.source.elements.iter().enumerate() {
                let lhs = g.mul(a, b).and_then(|ab| self.apply(ab));
                let rhs = match (self.image[i], self.image[j]) {
                    (Some(x), Some(y)) => g.mul(x, y),
                    _ => None,
                };
                hom.check(lhs.is_some() && lhs == rhs, || (vec![r(a), r(b)], show(rhs), show(lhs)));
            }
        }
        report.push(hom.finish());
        report
    }
}

fn show(g: &FiniteGroupoid, z: Option<usize>) -> String {
    z.map(|z| g.render(z)).unwrap_or_else(|| "undefined".into())
}

/// Exhaustive check of the groupoid axioms: multiplication domain,
/// surjectivity of source and target onto the units, associativity in both
/// directions of definedness, units, and inverses.
pub fn verify_brandt(g: &FiniteGroupoid, opts: &CheckOptions) -> AxiomReport {
    let n = g.len();
    let r = |x: usize| g.render(x);
    let mut report = AxiomReport::new();

    let mut domain = LawCheck::new("mul-domain", opts);
    for x in 0..n {
        for y in 0..n {
            let defined = g.mul(x, y).is_some();
            let composable = g.composable(x, y);
            domain.check(defined == composable, || {
                let want = if composable { "defined" } else { "undefined" };
                (vec![r(x), r(y)], want.into(), show(g, g.mul(x, y)))
            });
        }
    }
    report.push(domain.finish());

    for (law, table) in [("source-onto-units", g.alpha_table()), ("target-onto-units", g.beta_table())] {
        let mut check = LawCheck::new(law, opts);
        let mut hit = vec![false; n];
        for (x, &v) in table.iter().enumerate() {
            hit[v] = true;
            check.check(g.is_unit(v), || (vec![r(x)], "a unit".into(), r(v)));
        }
        for &u in g.units() {
            check.check(hit[u], || (vec![r(u)], "in the image".into(), "not hit".into()));
        }
        report.push(check.finish());
    }

    let mut assoc = LawCheck::new("G1", opts);
    let lhs_of = |x: usize, y: usize, z: usize| {
        if !g.composable(x, y) {
            return None;
        }
        let xy = g.mul(x, y)?;
        if !g.composable(xy, z) {
            return None;
        }
        g.mul(xy, z)
    };
    let rhs_of = |x: usize, y: usize, z: usize| {
        if !g.composable(y, z) {
            return None;
        }
        let yz = g.mul(y, z)?;
        if !g.composable(x, yz) {
            return None;
        }
        g.mul(x, yz)
    };
    for x in 0..n {
        for &y in g.alpha_fibre(g.beta(x)) {
            let Some(xy) = g.mul(x, y) else { continue };
            for &z in g.alpha_fibre(g.beta(xy)) {
                let Some(lhs) = g.mul(xy, z) else { continue };
                let rhs = rhs_of(x, y, z);
                assoc.check(rhs == Some(lhs), || (vec![r(x), r(y), r(z)], r(lhs), show(g, rhs)));
            }
        }
    }
    // triples where only the right-hand side is defined
    for y in 0..n {
        for &z in g.alpha_fibre(g.beta(y)) {
            let Some(yz) = g.mul(y, z) else { continue };
            for &x in g.beta_fibre(g.alpha(yz)) {
                let Some(rhs) = g.mul(x, yz) else { continue };
                if lhs_of(x, y, z).is_some() {
                    continue;
                }
                assoc.check(false, || (vec![r(x), r(y), r(z)], "undefined".into(), r(rhs)));
            }
        }
    }
    report.push(assoc.finish());

    let mut units = LawCheck::new("G2", opts);
    let mut inverses = LawCheck::new("G3", opts);
    let product = |a: usize, b: usize| if g.composable(a, b) { g.mul(a, b) } else { None };
    for x in 0..n {
        let (a, b) = (g.alpha(x), g.beta(x));
        let left = product(a, x);
        units.check(left == Some(x), || {
            (vec![r(x)], format!("α(x)·x = {}", r(x)), format!("α(x)·x = {}", show(g, left)))
        });
        let right = product(x, b);
        units.check(right == Some(x), || {
            (vec![r(x)], format!("x·β(x) = {}", r(x)), format!("x·β(x) = {}", show(g, right)))
        });

        let xi = g.inv(x);
        let l = product(xi, x);
        inverses.check(l == Some(b), || (vec![r(x)], format!("x⁻¹·x = {}", r(b)), format!("x⁻¹·x = {}", show(g, l))));
        let rr = product(x, xi);
        inverses.check(rr == Some(a), || (vec![r(x)], format!("x·x⁻¹ = {}", r(a)), format!("x·x⁻¹ = {}", show(g, rr))));
    }
    report.push(units.finish());
    report.push(inverses.finish());
    report
}

const TABLE_INCONSISTENCY: &str = "table inconsistency: this rule follows from the groupoid axioms";

/// Exhaustive sweep of the derived calculus rules. They hold in every
/// groupoid, so a failure here means the tables are inconsistent.
pub fn verify_calculus(g: &FiniteGroupoid, opts: &CheckOptions) -> AxiomReport {
    let n = g.len();
    let r = |x: usize| g.render(x);
    let sh = |z: Option<usize>| show(g, z);
    let product = |a: usize, b: usize| if g.composable(a, b) { g.mul(a, b) } else { None };
    let law = |id: &str| LawCheck::new(id, opts).diagnosis(TABLE_INCONSISTENCY);
    let mut report = AxiomReport::new();

    let mut fixed = law("units-fixed");
    for &u in g.units() {
        let uu = product(u, u);
        let ok = g.alpha(u) == u && g.beta(u) == u && uu == Some(u) && g.inv(u) == u;
        fixed.check(ok, || {
            (
                vec![r(u)],
                format!("α=β=ι=u·u={}", r(u)),
                format!("α={} β={} ι={} u·u={}", r(g.alpha(u)), r(g.beta(u)), r(g.inv(u)), sh(uu)),
            )
        });
    }
    report.push(fixed.finish());

    let mut ends = law("product-endpoints");
    let mut inv_prod = law("inverse-of-product");
    let mut division = law("division");
    for x in 0..n {
        for &y in g.alpha_fibre(g.beta(x)) {
            let xy = g.mul(x, y);
            let ok = xy.is_some_and(|z| g.alpha(z) == g.alpha(x) && g.beta(z) == g.beta(y));
            ends.check(ok, || {
                let got =
                    xy.map(|z| format!("α={} β={}", r(g.alpha(z)), r(g.beta(z)))).unwrap_or_else(|| "undefined".into());
                (vec![r(x), r(y)], format!("α={} β={}", r(g.alpha(x)), r(g.beta(y))), got)
            });

            let lhs = xy.map(|z| g.inv(z));
            let rhs = product(g.inv(y), g.inv(x));
            inv_prod.check(lhs.is_some() && lhs == rhs, || (vec![r(x), r(y)], sh(lhs), sh(rhs)));

            let back = xy.and_then(|z| product(g.inv(x), z));
            division.check(back == Some(y), || {
                (vec![r(x), r(y)], format!("x⁻¹(xy) = {}", r(y)), format!("x⁻¹(xy) = {}", sh(back)))
            });
            let fwd = xy.and_then(|z| product(z, g.inv(y)));
            division.check(fwd == Some(x), || {
                (vec![r(x), r(y)], format!("(xy)y⁻¹ = {}", r(x)), format!("(xy)y⁻¹ = {}", sh(fwd)))
            });
        }
    }

    let mut inv_ends = law("inverse-endpoints");
    let mut involution = law("inverse-involution");
    let mut src_inv = law("source-of-inverse");
    let mut tgt_inv = law("target-of-inverse");
    let mut inv_sq = law("inverse-squared");
    for x in 0..n {
        let xi = g.inv(x);
        inv_ends.check(g.alpha(xi) == g.beta(x) && g.beta(xi) == g.alpha(x), || {
            (
                vec![r(x)],
                format!("α(x⁻¹)={} β(x⁻¹)={}", r(g.beta(x)), r(g.alpha(x))),
                format!("α(x⁻¹)={} β(x⁻¹)={}", r(g.alpha(xi)), r(g.beta(xi))),
            )
        });
        involution.check(g.inv(xi) == x, || (vec![r(x)], r(x), r(g.inv(xi))));
        src_inv.check(g.alpha(xi) == g.beta(x), || (vec![r(x)], r(g.beta(x)), r(g.alpha(xi))));
        tgt_inv.check(g.beta(xi) == g.alpha(x), || (vec![r(x)], r(g.alpha(x)), r(g.beta(xi))));
        inv_sq.check(g.inv(xi) == x, || (vec![r(x)], r(x), r(g.inv(xi))));
    }

    let mut cancel = law("cancellation");
    for x in 0..n {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for &y in g.alpha_fibre(g.beta(x)) {
            let Some(z) = g.mul(x, y) else { continue };
            cancel.tick();
            if let Some(&y0) = seen.get(&z) {
                cancel.fail_with(|| (vec![format!("x={}", r(x)), r(y0), r(y)], "distinct products".into(), r(z)));
            } else {
                seen.insert(z, y);
            }
        }
        seen.clear();
        for &y in g.beta_fibre(g.alpha(x)) {
            let Some(z) = g.mul(y, x) else { continue };
            cancel.tick();
            if let Some(&y0) = seen.get(&z) {
                cancel.fail_with(|| (vec![format!("z={}", r(x)), r(y0), r(y)], "distinct products".into(), r(z)));
            } else {
                seen.insert(z, y);
            }
        }
    }

    report.push(ends.finish());
    report.push(inv_ends.finish());
    report.push(cancel.finish());
    report.push(involution.finish());
    report.push(inv_prod.finish());
    report.push(division.finish());
    report.push(src_inv.finish());
    report.push(tgt_inv.finish());
    report.push(inv_sq.finish());
    report
}

/// Anchor surjectivity plus, when transitive, conjugation isomorphisms
/// between the isotropy groups of every ordered pair of units.
pub fn verify_transitive(g: &FiniteGroupoid, opts: &CheckOptions) -> AxiomReport {
    let r = |x: usize| g.render(x);
    let mut report = AxiomReport::new();
    let mut first_arrow: HashMap<(usize, usize), usize> = HashMap::new();
    for x in 0..g.len() {
        first_arrow.entry(g.anchor(x)).or_insert(x);
    }
    let mut onto = LawCheck::new("anchor-surjective", opts);
    for &u in g.units() {
        for &v in g.units() {
            onto.check(first_arrow.contains_key(&(u, v)), || {
                (vec![r(u), r(v)], "an arrow u → v".into(), "none".into())
            });
        }
    }
    let transitive = onto.finish();
    let is_transitive = transitive.passed();
    report.push(transitive);

    let mut conj = LawCheck::new("isotropy-conjugate", opts);
    if is_transitive {
        for &u in g.units() {
            for &v in g.units() {
                let x = first_arrow[&(u, v)];
                conj.tick();
                match g.conjugation_iso(x) {
                    Ok(iso) => {
                        let sub = iso.verify(g, opts);
                        let first = sub.witnesses().next().cloned();
                        if let Some(w) = first {
                            conj.fail_with(|| (vec![r(x), w.law.clone()], w.expected, w.actual));
                        }
                    }
                    Err(e) => conj.fail_with(|| (vec![r(x)], "isomorphism".into(), e.to_string())),
                }
            }
        }
    }
    report.push(conj.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::Shape;

    /// The pair groupoid on `{0, .., m-1}` from element-keyed tables.
    fn pair_tables(m: u32) -> GroupoidTables {
        let mut t = GroupoidTables {
            notation: Notation::Tuple(Shape::Product(vec![Shape::Leaf(1), Shape::Leaf(1)])),
            elements: vec![],
            alpha: HashMap::new(),
            beta: HashMap::new(),
            inv: HashMap::new(),
            mul: HashMap::new(),
            units: vec![],
        };
        for a in 0..m {
            t.units.push(vec![a, a]);
            for b in 0..m {
                t.elements.push(vec![a, b]);
                t.alpha.insert(vec![a, b], vec![a, a]);
                t.beta.insert(vec![a, b], vec![b, b]);
                t.inv.insert(vec![a, b], vec![b, a]);
                for c in 0..m {
                    t.mul.insert((vec![a, b], vec![b, c]), vec![a, c]);
                }
            }
        }
        t
    }

    fn null_tables(m: u32) -> GroupoidTables {
        let mut t = GroupoidTables {
            notation: Notation::Tuple(Shape::Leaf(1)),
            elements: vec![],
            alpha: HashMap::new(),
            beta: HashMap::new(),
            inv: HashMap::new(),
            mul: HashMap::new(),
            units: vec![],
        };
        for a in 0..m {
            let k = vec![a];
            t.elements.push(k.clone());
            t.units.push(k.clone());
            t.alpha.insert(k.clone(), k.clone());
            t.beta.insert(k.clone(), k.clone());
            t.inv.insert(k.clone(), k.clone());
            t.mul.insert((k.clone(), k.clone()), k);
        }
        t
    }

    #[test]
    fn build_examples() {
        let g = build_groupoid(pair_tables(2)).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.units().len(), 2);
        assert_eq!(build_groupoid(null_tables(3)).unwrap().len(), 3);

        let mut bad = pair_tables(2);
        bad.mul.insert((vec![0, 1], vec![0, 1]), vec![0, 1]);
        assert!(matches!(build_groupoid(bad), Err(Error::MulDomainMismatch(_))));

        let mut missing = pair_tables(2);
        missing.mul.remove(&(vec![0, 1], vec![1, 0]));
        assert!(matches!(build_groupoid(missing), Err(Error::MulDomainMismatch(_))));

        let mut partial = pair_tables(2);
        partial.inv.remove(&vec![1, 0]);
        assert!(matches!(build_groupoid(partial), Err(Error::PartialMap { map: "inv", .. })));
    }

    #[test]
    fn composable_examples() {
        let g = build_groupoid(pair_tables(3)).unwrap();
        assert!(g.composable_keys(&[1, 2], &[2, 0]).unwrap());
        assert!(!g.composable_keys(&[1, 2], &[0, 1]).unwrap());
        for &u in g.units() {
            assert!(g.composable(u, u));
        }
        assert!(matches!(g.composable_keys(&[5, 5], &[0, 0]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn pair_passes_with_81_triples() {
        let g = build_groupoid(pair_tables(3)).unwrap();
        let report = verify_brandt(&g, &CheckOptions::default());
        assert!(report.passed(), "{report}");
        // (a,b),(b,c),(c,d): one triple per 4-tuple of points
        assert_eq!(report.law("G1").unwrap().examined, 81);
        assert!(verify_calculus(&g, &CheckOptions::default()).passed());
    }

    #[test]
    fn identity_inverse_fails_g3() {
        let g = build_groupoid(pair_tables(3)).unwrap();
        let id: Vec<usize> = (0..g.len()).collect();
        let bad = g.with_inverse(id).unwrap();
        let report = verify_brandt(&bad, &CheckOptions::default());
        let g3 = report.law("G3").unwrap();
        assert!(!g3.passed());
        assert_eq!(g3.witnesses[0].inputs, vec!["(0,1)"]);
        assert_eq!(g3.witnesses[0].actual, "x⁻¹·x = undefined");
    }

    #[test]
    fn null_groupoid_properties() {
        let g = build_groupoid(null_tables(3)).unwrap();
        assert!(verify_brandt(&g, &CheckOptions::default()).passed());
        assert!(verify_calculus(&g, &CheckOptions::default()).passed());
        assert!(g.is_group_bundle());
        assert!(!build_groupoid(null_tables(2)).unwrap().is_transitive());
        assert!(build_groupoid(null_tables(1)).unwrap().is_transitive());
    }

    #[test]
    fn calculus_reports_ten_rule_families() {
        let g = build_groupoid(pair_tables(4)).unwrap();
        let report = verify_calculus(&g, &CheckOptions::default());
        assert_eq!(report.laws.len(), 10);
        assert!(report.passed());
    }

    #[test]
    fn pair_isotropy_is_trivial_and_transitive() {
        let g = build_groupoid(pair_tables(3)).unwrap();
        for &u in g.units() {
            let h = g.isotropy_group(u).unwrap();
            assert_eq!(h.elements(), &[u]);
            assert!(h.verify(&g, &CheckOptions::default()).passed());
        }
        assert!(matches!(g.isotropy_group(1), Err(Error::NotAUnit(_))));
        assert!(g.is_transitive());
        assert!(verify_transitive(&g, &CheckOptions::default()).passed());
        let iso = g.conjugation_iso(1).unwrap();
        assert_eq!(iso.image.len(), 1);
    }

    #[test]
    fn bundle_of_pair_is_diagonal() {
        let g = build_groupoid(pair_tables(2)).unwrap();
        let b = g.isotropy_bundle();
        assert_eq!(b.len(), 2);
        assert!(b.is_group_bundle());
        assert_eq!(b.units().len(), 2);
        assert!(verify_brandt(&b, &CheckOptions::default()).passed());
    }

    #[test]
    fn every_single_product_flip_is_detected() {
        let g = build_groupoid(pair_tables(2)).unwrap();
        let opts = CheckOptions::default();
        for x in 0..g.len() {
            for &y in g.alpha_fibre(g.beta(x)) {
                let good = g.mul(x, y).unwrap();
                for other in (0..g.len()).filter(|&z| z != good) {
                    let bad = g.with_product(x, y, Some(other));
                    let mut report = verify_brandt(&bad, &opts);
                    report.extend(verify_calculus(&bad, &opts));
                    let failed = report.failed_laws();
                    assert!(
                        failed.iter().any(|l| ["G1", "G2", "G3", "cancellation"].contains(l)),
                        "flip ({x},{y}) -> {other} undetected: {failed:?}"
                    );
                }
            }
        }
    }
}
