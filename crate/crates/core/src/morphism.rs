//! Groupoid morphisms, strong morphisms and vector groupoid morphisms, with
//! the anchor, signature and Whitney-sum examples.

use std::sync::Arc;

use crate::constructions::{pair_vg, sign_group, symmetry_groupoid, DirectProduct, WhitneySum};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::partial_bijection::PartialBijection;
use crate::report::{AxiomReport, CheckOptions, LawCheck, Witness};
use crate::space::{check_linear, SpaceRef};
use crate::vector_groupoid::VectorGroupoid;

/// An element map between groupoids. The unit map is always the
/// restriction of the element map to the units.
#[derive(Clone, Debug)]
pub struct GroupoidMorphism {
    source: FiniteGroupoid,
    target: FiniteGroupoid,
    map: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn new(source: FiniteGroupoid, target: FiniteGroupoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            let at =
                if map.len() < source.len() { source.render(map.len()) } else { format!("index {}", source.len()) };
            return Err(Error::PartialMap { map: "f", element: at });
        }
        if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= target.len()) {
            return Err(Error::DomainMismatch(format!("f({}) is index {y}", source.render(x))));
        }
        Ok(GroupoidMorphism { source, target, map })
    }

    /// Like [`GroupoidMorphism::new`], also taking an explicit unit map,
    /// which must agree with the element map on every unit it mentions.
    pub fn with_unit_map(
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        map: Vec<usize>,
        unit_map: &[(usize, usize)],
    ) -> Result<Self> {
        let m = Self::new(source, target, map)?;
        for &(u, v) in unit_map {
            if u >= m.source.len() || !m.source.is_unit(u) {
                return Err(Error::NotAUnit(if u < m.source.len() {
                    m.source.render(u)
                } else {
                    format!("index {u}")
                }));
            }
            if m.map[u] != v {
                return Err(Error::UnitMapConflict(m.source.render(u)));
            }
        }
        Ok(m)
    }

    /// Builds from `(source key, target key)` pairs covering the source carrier.
    pub fn from_keys(source: FiniteGroupoid, target: FiniteGroupoid, pairs: &[(Vec<u32>, Vec<u32>)]) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (a, b) in pairs {
            let x = source.index_of(a).ok_or_else(|| Error::UnknownElement(source.notation().render(a)))?;
            let y = target.index_of(b).ok_or_else(|| Error::UnknownElement(target.notation().render(b)))?;
            if map[x].replace(y).is_some() {
                return Err(Error::DomainMismatch(format!("{} is listed twice", source.render(x))));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::PartialMap { map: "f", element: source.render(x) }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, map)
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidMorphism { source: g.clone(), target: g.clone(), map: (0..g.len()).collect() }
    }

    pub fn source(&self) -> &FiniteGroupoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroupoid {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `f₀ = f|G₀`.
    pub fn unit_map(&self) -> Vec<(usize, usize)> {
        self.source.units().iter().map(|&u| (u, self.map[u])).collect()
    }

    /// Same morphism with `f(x)` replaced by `y`.
    pub fn with_entry(&self, x: usize, y: usize) -> Result<Self> {
        let mut map = self.map.clone();
        map[x] = y;
        Self::new(self.source.clone(), self.target.clone(), map)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupoidMorphism) -> Result<Self> {
        if self.target.elements() != next.source.elements() {
            return Err(Error::CarrierMismatch("target of the first map is not the source of the second".into()));
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        Self::new(self.source.clone(), next.target.clone(), map)
    }
}

/// Def 2.2 (composability and products preserved) together with its
/// consequences: units go to units, inverses are preserved, and source and
/// target commute with the unit map.
pub fn verify_morphism(m: &GroupoidMorphism, opts: &CheckOptions) -> AxiomReport {
    let (g, h, f) = (&m.source, &m.target, &m.map);
    let r = |x: usize| g.render(x);
    let rt = |y: usize| h.render(y);
    let show = |z: Option<usize>| z.map(rt).unwrap_or_else(|| "undefined".into());
    let mut report = AxiomReport::new();

    let mut comp = LawCheck::new("preserves-composability", opts);
    let mut prod = LawCheck::new("preserves-products", opts);
    for x in 0..g.len() {
        for &y in g.alpha_fibre(g.beta(x)) {
            let ok = h.composable(f[x], f[y]);
            comp.check(ok, || {
                (
                    vec![format!("x={}", r(x)), format!("y={}", r(y))],
                    format!("β'({}) = α'({})", rt(f[x]), rt(f[y])),
                    format!("{} ≠ {}", rt(h.beta(f[x])), rt(h.alpha(f[y]))),
                )
            });
            let lhs = g.mul(x, y).map(|xy| f[xy]);
            let rhs = if ok { h.mul(f[x], f[y]) } else { None };
            prod.check(lhs.is_some() && lhs == rhs, || {
                (vec![format!("x={}", r(x)), format!("y={}", r(y))], show(rhs), show(lhs))
            });
        }
    }
    report.push(comp.finish());
    report.push(prod.finish());

    let mut units = LawCheck::new("units-to-units", opts);
    for &u in g.units() {
        units.check(h.is_unit(f[u]), || (vec![format!("u={}", r(u))], "a unit".into(), rt(f[u])));
    }
    report.push(units.finish());

    let mut inv = LawCheck::new("preserves-inverse", opts);
    let mut source = LawCheck::new("source-naturality", opts);
    let mut target = LawCheck::new("target-naturality", opts);
    for x in 0..g.len() {
        let (lhs, rhs) = (f[g.inv(x)], h.inv(f[x]));
        inv.check(lhs == rhs, || (vec![format!("x={}", r(x))], rt(rhs), rt(lhs)));
        let (lhs, rhs) = (h.alpha(f[x]), f[g.alpha(x)]);
        source.check(lhs == rhs, || (vec![format!("x={}", r(x))], rt(rhs), rt(lhs)));
        let (lhs, rhs) = (h.beta(f[x]), f[g.beta(x)]);
        target.check(lhs == rhs, || (vec![format!("x={}", r(x))], rt(rhs), rt(lhs)));
    }
    report.push(inv.finish());
    report.push(source.finish());
    report.push(target.finish());
    report
}

/// The witness showing that `(x, y)` violates reflection of composability,
/// if it does: `(f(x), f(y))` composable while `(x, y)` is not.
pub fn reflection_counterexample(m: &GroupoidMorphism, x: usize, y: usize) -> Option<Witness> {
    let (g, h, f) = (&m.source, &m.target, &m.map);
    (h.composable(f[x], f[y]) && !g.composable(x, y)).then(|| Witness {
        law: "reflects-composability".into(),
        inputs: vec![format!("x={}", g.render(x)), format!("y={}", g.render(y))],
        expected: "β(x) = α(y)".into(),
        actual: format!("{} ≠ {}", g.render(g.beta(x)), g.render(g.alpha(y))),
    })
}

/// Morphism laws plus reflection of composability (strong morphism).
pub fn verify_homomorphism(m: &GroupoidMorphism, opts: &CheckOptions) -> AxiomReport {
    let mut report = verify_morphism(m, opts);
    let mut reflect = LawCheck::new("reflects-composability", opts);
    let n = m.source.len();
    for x in 0..n {
        for y in 0..n {
            reflect.tick();
            if let Some(w) = reflection_counterexample(m, x, y) {
                reflect.fail_with(|| (w.inputs, w.expected, w.actual));
            }
        }
    }
    report.push(reflect.finish());
    report
}

/// A morphism between vector groupoids.
#[derive(Clone, Debug)]
pub struct VectorMorphism {
    pub morphism: GroupoidMorphism,
    pub source: VectorGroupoid,
    pub target: VectorGroupoid,
}

impl VectorMorphism {
    pub fn new(source: &VectorGroupoid, target: &VectorGroupoid, map: Vec<usize>) -> Result<Self> {
        let morphism = GroupoidMorphism::new(source.groupoid().clone(), target.groupoid().clone(), map)?;
        Self::from_morphism(morphism, source, target)
    }

    /// Pairs a groupoid morphism with the linear structures on its ends,
    /// which must be over the same field.
    pub fn from_morphism(morphism: GroupoidMorphism, source: &VectorGroupoid, target: &VectorGroupoid) -> Result<Self> {
        let (f, g) = (source.space().field(), target.space().field());
        if f != g {
            return Err(Error::FieldMismatch { left: f.modulus(), right: g.modulus() });
        }
        Ok(VectorMorphism { morphism, source: source.clone(), target: target.clone() })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.morphism.apply(x)
    }

    pub fn map(&self) -> &[usize] {
        self.morphism.map()
    }

    pub fn verify(&self, opts: &CheckOptions) -> AxiomReport {
        verify_vector_morphism(&self.morphism, &self.source, &self.target, opts)
            .expect("carriers match by construction")
    }
}

/// Morphism laws plus linearity of the element map.
pub fn verify_vector_morphism(
    m: &GroupoidMorphism,
    src: &VectorGroupoid,
    dst: &VectorGroupoid,
    opts: &CheckOptions,
) -> Result<AxiomReport> {
    if m.source.elements() != src.groupoid().elements() {
        return Err(Error::CarrierMismatch("morphism source is not the given vector groupoid".into()));
    }
    if m.target.elements() != dst.groupoid().elements() {
        return Err(Error::CarrierMismatch("morphism target is not the given vector groupoid".into()));
    }
    let mut report = verify_morphism(m, opts);
    report.extend(check_linear(&m.map, src.space().as_ref(), dst.space().as_ref(), opts)?);
    Ok(report)
}

/// `x ↦ (α(x), β(x))` into the pair vector groupoid of the base.
pub fn anchor_morphism(v: &VectorGroupoid) -> Result<VectorMorphism> {
    let base: SpaceRef = Arc::new(v.base_space()?);
    let target = pair_vg(&base)?;
    let g = v.groupoid();
    let map = (0..v.len())
        .map(|x| {
            let mut key = g.element(g.alpha(x)).to_vec();
            key.extend_from_slice(g.element(g.beta(x)));
            target.index_of(&key).expect("anchor lands in the pair groupoid")
        })
        .collect();
    VectorMorphism::new(v, &target, map)
}

/// Signature of each partial bijection, into `{+1, -1}` regarded as a
/// groupoid over `{+1}`.
pub fn sgn_sharp(n: usize) -> Result<GroupoidMorphism> {
    let sg = symmetry_groupoid(n)?;
    let map = (0..sg.len())
        .map(|x| {
            let f = PartialBijection::from_key(sg.element(x)).expect("carrier keys are partial bijections");
            usize::from(f.sign() < 0)
        })
        .collect();
    GroupoidMorphism::new(sg, sign_group(), map)
}

/// Canonical projections of a direct product.
pub fn product_projections(p: &DirectProduct) -> Result<(VectorMorphism, VectorMorphism)> {
    Ok((
        VectorMorphism::new(&p.groupoid, &p.left, p.proj1.clone())?,
        VectorMorphism::new(&p.groupoid, &p.right, p.proj2.clone())?,
    ))
}

/// Projections `p`, `p′` of a Whitney sum onto its summands.
pub fn whitney_projections(w: &WhitneySum) -> Result<(VectorMorphism, VectorMorphism)> {
    Ok((
        VectorMorphism::new(&w.groupoid, &w.left, w.proj1.clone())?,
        VectorMorphism::new(&w.groupoid, &w.right, w.proj2.clone())?,
    ))
}

/// `φ(x) = (q(x), q′(x))` into the Whitney sum of the targets of `q`, `q′`.
pub fn whitney_universal(w: &WhitneySum, q: &VectorMorphism, q2: &VectorMorphism) -> Result<VectorMorphism> {
    if q.source.groupoid().elements() != q2.source.groupoid().elements() {
        return Err(Error::CarrierMismatch("q and q′ have different sources".into()));
    }
    if q.target.groupoid().elements() != w.left.groupoid().elements()
        || q2.target.groupoid().elements() != w.right.groupoid().elements()
    {
        return Err(Error::CarrierMismatch("q, q′ do not land in the summands".into()));
    }
    let u = &q.source;
    let map = (0..u.len())
        .map(|x| w.pair_index(q.apply(x), q2.apply(x)).ok_or_else(|| Error::ImageOutsidePullback(u.render(x))))
        .collect::<Result<Vec<_>>>()?;
    VectorMorphism::new(u, &w.groupoid, map)
}

/// `p∘φ = q`, `p′∘φ = q′`, and pointwise uniqueness: replacing any single
/// entry `φ(x)` by another element breaks one of the two equations at `x`.
pub fn verify_universal(
    w: &WhitneySum,
    q: &VectorMorphism,
    q2: &VectorMorphism,
    phi: &VectorMorphism,
    opts: &CheckOptions,
) -> AxiomReport {
    let u = &phi.source;
    let r = |x: usize| u.render(x);
    let mut report = AxiomReport::new();
    for (name, proj, qq) in [("first-projection", &w.proj1, q), ("second-projection", &w.proj2, q2)] {
        let summand = &qq.target;
        let mut law = LawCheck::new(name, opts);
        for x in 0..u.len() {
            let (lhs, rhs) = (proj[phi.apply(x)], qq.apply(x));
            law.check(lhs == rhs, || (vec![format!("x={}", r(x))], summand.render(rhs), summand.render(lhs)));
        }
        report.push(law.finish());
    }
    let mut unique = LawCheck::new("pointwise-unique", opts);
    for x in 0..u.len() {
        for z in (0..w.groupoid.len()).filter(|&z| z != phi.apply(x)) {
            let still_commutes = w.proj1[z] == q.apply(x) && w.proj2[z] == q2.apply(x);
            unique.check(!still_commutes, || {
                (
                    vec![format!("x={}", r(x)), format!("ψ(x)={}", w.groupoid.render(z))],
                    "an equation broken".into(),
                    "both equations hold".into(),
                )
            });
        }
    }
    report.push(unique.finish());
    report
}

/// The identity of `v` as a vector groupoid morphism.
pub fn identity_vector_morphism(v: &VectorGroupoid) -> VectorMorphism {
    VectorMorphism { morphism: GroupoidMorphism::identity(v.groupoid()), source: v.clone(), target: v.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{direct_product, null_vg, single_unit, v3, vpq, whitney_sum};
    use crate::field::PrimeField;
    use crate::groupoid::verify_brandt;
    use crate::space::CoordSpace;

    fn space(p: u64, d: usize) -> SpaceRef {
        Arc::new(CoordSpace::full(PrimeField::new(p).unwrap(), d).unwrap())
    }

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn identity_and_collapse_pass() {
        let v = pair_vg(&space(2, 1)).unwrap();
        assert!(verify_homomorphism(&GroupoidMorphism::identity(v.groupoid()), &opts()).passed());
        let s = single_unit(&space(2, 2)).unwrap();
        let zero = s.space().zero();
        let collapse = GroupoidMorphism::new(s.groupoid().clone(), s.groupoid().clone(), vec![zero; s.len()]).unwrap();
        assert!(verify_morphism(&collapse, &opts()).passed());
    }

    #[test]
    fn swap_fails_composability_and_products() {
        let v = pair_vg(&space(2, 1)).unwrap();
        let g = v.groupoid();
        let swap = g.inv_table().to_vec();
        let m = GroupoidMorphism::new(g.clone(), g.clone(), swap).unwrap();
        let report = verify_morphism(&m, &opts());
        let comp = report.law("preserves-composability").unwrap();
        assert!(!comp.passed());
        // (f(0,1), f(1,1)) = ((1,0),(1,1)): β' = (0,0) but α' = (1,1)
        assert!(comp.witnesses.iter().any(|w| w.inputs == ["x=(0,1)", "y=(1,1)"]));
        // f((0,1)·(1,0)) = (0,0) but (1,0)·(0,1) = (1,1)
        let prod = report.law("preserves-products").unwrap();
        let w = prod.witnesses.iter().find(|w| w.inputs == ["x=(0,1)", "y=(1,0)"]).unwrap();
        assert_eq!((w.expected.as_str(), w.actual.as_str()), ("(1,1)", "(0,0)"));
    }

    #[test]
    fn unit_map_conflict() {
        let v = pair_vg(&space(2, 1)).unwrap();
        let g = v.groupoid();
        let id: Vec<usize> = (0..g.len()).collect();
        let u = g.units()[0];
        assert!(GroupoidMorphism::with_unit_map(g.clone(), g.clone(), id.clone(), &[(u, u)]).is_ok());
        let err = GroupoidMorphism::with_unit_map(g.clone(), g.clone(), id, &[(u, g.units()[1])]);
        assert!(matches!(err, Err(Error::UnitMapConflict(_))));
    }

    #[test]
    fn anchor_of_v3() {
        let v = v3(&space(2, 1)).unwrap();
        let a = anchor_morphism(&v).unwrap();
        let x = v.index_of(&[1, 0, 1]).unwrap();
        assert_eq!(a.target.render(a.apply(x)), "((1,1,0),(0,0,0))");
        assert!(a.verify(&opts()).passed());
        assert!(verify_homomorphism(&a.morphism, &opts()).passed());
        for &u in v.base() {
            let (s, t) = a.target.groupoid().anchor(a.apply(u));
            assert_eq!(s, t);
        }
    }

    #[test]
    fn anchor_of_single_unit_is_constant() {
        let v = single_unit(&space(3, 1)).unwrap();
        let a = anchor_morphism(&v).unwrap();
        assert!(a.map().iter().all(|&y| y == a.map()[0]));
        assert_eq!(a.target.render(a.map()[0]), "(0,0)");
        assert!(verify_homomorphism(&a.morphism, &opts()).passed());
    }

    #[test]
    fn affine_shift_is_not_a_vector_morphism() {
        let v = pair_vg(&space(3, 1)).unwrap();
        let one = v.index_of(&[1, 1]).unwrap();
        let map = (0..v.len()).map(|x| v.space().add(x, one)).collect();
        let m = VectorMorphism::new(&v, &v, map).unwrap();
        assert!(!m.verify(&opts()).law("linear").unwrap().passed());
        let other = null_vg(&space(3, 1)).unwrap();
        assert!(matches!(verify_vector_morphism(&m.morphism, &other, &v, &opts()), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn sgn_sharp_example() {
        let m = sgn_sharp(4).unwrap();
        assert!(verify_morphism(&m, &opts()).passed());
        let report = verify_homomorphism(&m, &opts());
        assert_eq!(report.failed_laws(), vec!["reflects-composability"]);
        let sg = m.source();
        let f = sg.index_of(&PartialBijection::from_pairs(4, &[(1, 2), (2, 3), (3, 1)]).unwrap().key()).unwrap();
        let g = sg.index_of(&PartialBijection::from_pairs(4, &[(1, 4), (3, 3), (4, 1)]).unwrap().key()).unwrap();
        assert_eq!(m.target().render(m.apply(f)), "+1");
        assert_eq!(m.target().render(m.apply(g)), "-1");
        let w = reflection_counterexample(&m, f, g).unwrap();
        assert_eq!(w.inputs, ["x={1->2,2->3,3->1}", "y={1->4,3->3,4->1}"]);
        assert!(verify_homomorphism(&sgn_sharp(1).unwrap(), &opts()).passed());
        assert!(matches!(sgn_sharp(7), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn projections_are_vector_morphisms() {
        let s = space(2, 1);
        let pair = pair_vg(&s).unwrap();
        let w = whitney_sum(&pair, &pair).unwrap();
        let (p, p2) = whitney_projections(&w).unwrap();
        assert!(p.verify(&opts()).passed());
        assert!(p2.verify(&opts()).passed());
        let d = direct_product(&pair, &null_vg(&s).unwrap()).unwrap();
        let (d1, d2) = product_projections(&d).unwrap();
        assert!(d1.verify(&opts()).passed() && d2.verify(&opts()).passed());
    }

    #[test]
    fn universal_property_of_whitney_sum() {
        let pair = pair_vg(&space(2, 1)).unwrap();
        let w = whitney_sum(&pair, &pair).unwrap();
        let id = identity_vector_morphism(&pair);
        let phi = whitney_universal(&w, &id, &id).unwrap();
        for x in 0..pair.len() {
            assert_eq!(w.proj1[phi.apply(x)], x);
            assert_eq!(w.proj2[phi.apply(x)], x);
        }
        assert!(phi.verify(&opts()).passed());
        assert!(verify_universal(&w, &id, &id, &phi, &opts()).passed());
        // q′ = ι is not base-compatible with q = id
        let inv = VectorMorphism::new(&pair, &pair, pair.groupoid().inv_table().to_vec()).unwrap();
        assert!(matches!(whitney_universal(&w, &id, &inv), Err(Error::ImageOutsidePullback(_))));
    }

    #[test]
    fn universal_property_single_unit() {
        let s = single_unit(&space(3, 1)).unwrap();
        let w = whitney_sum(&s, &s).unwrap();
        assert_eq!(w.groupoid.len(), 9);
        let id = identity_vector_morphism(&s);
        let neg = VectorMorphism::new(&s, &s, s.groupoid().inv_table().to_vec()).unwrap();
        let phi = whitney_universal(&w, &id, &neg).unwrap();
        assert!(phi.verify(&opts()).passed());
        assert!(verify_universal(&w, &id, &neg, &phi, &opts()).passed());
    }

    #[test]
    fn composition_of_morphisms() {
        let v = vpq(&space(3, 1), 2, 2).unwrap();
        let a = anchor_morphism(&v).unwrap();
        let back = GroupoidMorphism::identity(a.target.groupoid());
        let composite = a.morphism.then(&back).unwrap();
        assert!(verify_morphism(&composite, &opts()).passed());
        assert!(verify_brandt(a.target.groupoid(), &opts()).passed());
    }
}
