//! Vector groupoids: a groupoid whose carrier is a finite vector space with
//! linear structure maps and the four compatibility laws tying `⊙` to the
//! linear operations.
//!
//! All laws are evaluated through [`AbstractSpace`], never through raw
//! coordinates, so the same checks run unchanged on re-based isotropy spaces.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, MulFn};
use crate::linalg::FVector;
use crate::report::{AxiomReport, CheckOptions, LawCheck, LawResult};
use crate::space::{check_linear, check_subspace, AbstractSpace, ShiftedSpace, SpaceRef, SubsetSpace, Tabulated};

#[derive(Clone, Debug)]
pub struct VectorGroupoid {
    groupoid: FiniteGroupoid,
    space: SpaceRef,
    base: Vec<usize>,
}

/// Pairs a groupoid with a vector space on the same carrier and a base
/// (unit) set. The vector groupoid laws are not checked here.
pub fn attach_vector_structure(groupoid: FiniteGroupoid, space: SpaceRef, base: &[FVector]) -> Result<VectorGroupoid> {
    check_carrier(&groupoid, space.as_ref())?;
    let base = base
        .iter()
        .map(|b| {
            space
                .index_of(b.coords())
                .ok_or_else(|| Error::UnitSetMismatch(format!("base element {b} is not in the space")))
        })
        .collect::<Result<Vec<_>>>()?;
    VectorGroupoid::from_parts(groupoid, space, base)
}

fn check_carrier(groupoid: &FiniteGroupoid, space: &dyn AbstractSpace) -> Result<()> {
    if groupoid.len() != space.len() {
        return Err(Error::CarrierMismatch(format!(
            "groupoid has {} elements, space has {}",
            groupoid.len(),
            space.len()
        )));
    }
    if let Some(i) = (0..space.len()).find(|&i| groupoid.element(i) != space.point(i)) {
        return Err(Error::CarrierMismatch(format!(
            "element {i} is {} in the groupoid but {} in the space",
            groupoid.render(i),
            space.render(i)
        )));
    }
    Ok(())
}

impl VectorGroupoid {
    /// Index-level form of [`attach_vector_structure`].
    pub fn from_parts(groupoid: FiniteGroupoid, space: SpaceRef, mut base: Vec<usize>) -> Result<Self> {
        check_carrier(&groupoid, space.as_ref())?;
        base.sort_unstable();
        base.dedup();
        if base != groupoid.units() {
            return Err(Error::UnitSetMismatch(format!(
                "base has {} elements, groupoid has {} units",
                base.len(),
                groupoid.units().len()
            )));
        }
        Ok(VectorGroupoid { groupoid, space, base })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.groupoid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groupoid.is_empty()
    }

    pub fn render(&self, i: usize) -> String {
        self.groupoid.render(i)
    }

    pub fn index_of(&self, coords: &[u32]) -> Option<usize> {
        self.space.index_of(coords)
    }

    /// The base as a space with the inherited operations.
    pub fn base_space(&self) -> Result<SubsetSpace> {
        SubsetSpace::new(self.space.clone(), self.base.clone())
    }

    /// `α⁻¹(0)`.
    pub fn source_kernel(&self) -> Vec<usize> {
        self.groupoid.alpha_fibre(self.space.zero()).to_vec()
    }

    /// `β⁻¹(0)`.
    pub fn target_kernel(&self) -> Vec<usize> {
        self.groupoid.beta_fibre(self.space.zero()).to_vec()
    }

    /// `V(0) = α⁻¹(0) ∩ β⁻¹(0)`.
    pub fn isotropy_kernel(&self) -> Vec<usize> {
        let z = self.space.zero();
        self.groupoid.hom(z, z).collect()
    }

    fn product(&self, x: usize, y: usize) -> Option<usize> {
        if self.groupoid.composable(x, y) {
            self.groupoid.mul(x, y)
        } else {
            None
        }
    }
}

fn renamed(mut report: AxiomReport, law: &str) -> LawResult {
    let mut l = report.laws.remove(0);
    l.law = law.to_string();
    for w in &mut l.witnesses {
        w.law = law.to_string();
    }
    l
}

fn linear_law(
    table: &[usize],
    dom: &dyn AbstractSpace,
    cod: &dyn AbstractSpace,
    law: &str,
    opts: &CheckOptions,
) -> LawResult {
    match check_linear(table, dom, cod, opts) {
        Ok(r) => renamed(r, law),
        Err(e) => {
            let mut c = LawCheck::new(law, opts);
            c.check(false, || (vec![], "a table on the carrier".into(), e.to_string()));
            c.finish()
        }
    }
}

/// Exhaustive check of the vector groupoid laws: the base is a subspace;
/// source, target and inversion are linear; `x + x⁻¹ = α(x) + β(x)`; and the
/// four compatibility laws between `⊙` and the linear structure, over every
/// admissible triple and every scalar `k` (0 and 1 included).
pub fn verify_vector_axioms(v: &VectorGroupoid, opts: &CheckOptions) -> AxiomReport {
    let g = &v.groupoid;
    let tab = Tabulated::wrap(v.space.as_ref());
    let s = tab.as_ref();
    let f = s.field();
    let n = g.len();
    let r = |x: usize| v.render(x);
    let sh = |z: Option<usize>| z.map(r).unwrap_or_else(|| "undefined".into());
    let mut report = AxiomReport::new();

    report.extend(check_subspace(s, &v.base, opts).prefixed("units-subspace:"));
    report.push(linear_law(g.alpha_table(), s, s, "source-linear", opts));
    report.push(linear_law(g.beta_table(), s, s, "target-linear", opts));
    report.push(linear_law(g.inv_table(), s, s, "inverse-linear", opts));

    let mut inv_sum = LawCheck::new("inverse-sum", opts);
    for x in 0..n {
        let lhs = s.add(x, g.inv(x));
        let rhs = s.add(g.alpha(x), g.beta(x));
        inv_sum.check(lhs == rhs, || (vec![format!("x={}", r(x))], r(rhs), r(lhs)));
    }
    report.push(inv_sum.finish());

    let mut well_formed = LawCheck::new("well-formed", opts);
    let mut left_add = LawCheck::new("left-additive", opts);
    let mut left_hom = LawCheck::new("left-homogeneous", opts);
    let mut right_add = LawCheck::new("right-additive", opts);
    let mut right_hom = LawCheck::new("right-homogeneous", opts);

    for x in 0..n {
        let b = g.beta(x);
        let a = g.alpha(x);
        let right_fibre = g.alpha_fibre(b);
        let left_fibre = g.beta_fibre(a);

        // x ⊙ (y + z - β(x)) = x⊙y + x⊙z - x   where α(y) = β(x) = α(z)
        for &y in right_fibre {
            let xy = v.product(x, y);
            for &z in right_fibre {
                let arg = s.sub(s.add(y, z), b);
                let closed = g.alpha(arg) == b;
                well_formed.check(closed, || {
                    (
                        vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("z={}", r(z))],
                        format!("α(y+z-β(x)) = {}", r(b)),
                        r(g.alpha(arg)),
                    )
                });
                let lhs = v.product(x, arg);
                let rhs = match (xy, v.product(x, z)) {
                    (Some(xy), Some(xz)) => Some(s.sub(s.add(xy, xz), x)),
                    _ => None,
                };
                if closed && (lhs.is_none() || rhs.is_none()) {
                    well_formed.fail_with(|| {
                        (
                            vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("z={}", r(z))],
                            "defined products".into(),
                            "undefined product".into(),
                        )
                    });
                }
                left_add.check(lhs.is_some() && lhs == rhs, || {
                    (vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("z={}", r(z))], sh(rhs), sh(lhs))
                });
            }
            // x ⊙ (k·y + (1-k)·β(x)) = k·(x⊙y) + (1-k)·x
            for k in f.elements() {
                let arg = s.combine(k, y, f.one_minus(k), b);
                let lhs = v.product(x, arg);
                let rhs = xy.map(|xy| s.combine(k, xy, f.one_minus(k), x));
                left_hom.check(lhs.is_some() && lhs == rhs, || {
                    (vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("k={k}")], sh(rhs), sh(lhs))
                });
            }
        }

        // (y + z - α(x)) ⊙ x = y⊙x + z⊙x - x   where α(x) = β(y) = β(z)
        for &y in left_fibre {
            let yx = v.product(y, x);
            for &z in left_fibre {
                let arg = s.sub(s.add(y, z), a);
                let closed = g.beta(arg) == a;
                well_formed.check(closed, || {
                    (
                        vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("z={}", r(z))],
                        format!("β(y+z-α(x)) = {}", r(a)),
                        r(g.beta(arg)),
                    )
                });
                let lhs = v.product(arg, x);
                let rhs = match (yx, v.product(z, x)) {
                    (Some(yx), Some(zx)) => Some(s.sub(s.add(yx, zx), x)),
                    _ => None,
                };
                right_add.check(lhs.is_some() && lhs == rhs, || {
                    (vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("z={}", r(z))], sh(rhs), sh(lhs))
                });
            }
            // (k·y + (1-k)·α(x)) ⊙ x = k·(y⊙x) + (1-k)·x
            for k in f.elements() {
                let arg = s.combine(k, y, f.one_minus(k), a);
                let lhs = v.product(arg, x);
                let rhs = yx.map(|yx| s.combine(k, yx, f.one_minus(k), x));
                right_hom.check(lhs.is_some() && lhs == rhs, || {
                    (vec![format!("x={}", r(x)), format!("y={}", r(y)), format!("k={k}")], sh(rhs), sh(lhs))
                });
            }
        }
    }
    report.push(well_formed.finish());
    report.push(left_add.finish());
    report.push(left_hom.finish());
    report.push(right_add.finish());
    report.push(right_hom.finish());
    report
}

fn onto_base(v: &VectorGroupoid, table: &[usize], law: &str, opts: &CheckOptions) -> LawResult {
    let mut check = LawCheck::new(law, opts);
    let mut hit = vec![false; v.len()];
    for (x, &y) in table.iter().enumerate() {
        hit[y] = true;
        check.check(v.groupoid.is_unit(y), || (vec![v.render(x)], "a base element".into(), v.render(y)));
    }
    for &u in &v.base {
        check.check(hit[u], || (vec![v.render(u)], "in the image".into(), "not hit".into()));
    }
    check.finish()
}

/// `x ↦ x - t(x)` is injective on `fibre`.
fn translation_injective(
    v: &VectorGroupoid,
    fibre: &[usize],
    t: &[usize],
    law: &str,
    opts: &CheckOptions,
) -> LawResult {
    let s = v.space.as_ref();
    let mut check = LawCheck::new(law, opts);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for &x in fibre {
        let d = s.sub(x, t[x]);
        check.tick();
        if let Some(&x0) = seen.get(&d) {
            check.fail_with(|| (vec![v.render(x0), v.render(x)], "distinct differences".into(), v.render(d)));
        } else {
            seen.insert(d, x);
        }
    }
    check.finish()
}

/// Consequences of the vector groupoid laws: source and target are onto the
/// base, inversion is a linear bijection, the 0-fibres and `V(0)` are
/// subspaces, `0` acts as an identity on the 0-fibres, and the two
/// cancellation-by-translation implications hold.
pub fn verify_structural_consequences(v: &VectorGroupoid, opts: &CheckOptions) -> AxiomReport {
    let g = &v.groupoid;
    let s = v.space.as_ref();
    let zero = s.zero();
    let r = |x: usize| v.render(x);
    let sh = |z: Option<usize>| z.map(r).unwrap_or_else(|| "undefined".into());
    let mut report = AxiomReport::new();

    report.push(onto_base(v, g.alpha_table(), "source-onto-base", opts));
    report.push(onto_base(v, g.beta_table(), "target-onto-base", opts));

    let mut bij = LawCheck::new("inverse-bijective", opts);
    let mut hit = vec![false; v.len()];
    for x in 0..v.len() {
        let y = g.inv(x);
        bij.check(!hit[y], || (vec![r(x)], "an unused image".into(), r(y)));
        hit[y] = true;
    }
    report.push(bij.finish());
    report.push(linear_law(g.inv_table(), s, s, "inverse-linear", opts));

    let source_kernel = v.source_kernel();
    let target_kernel = v.target_kernel();
    report.extend(check_subspace(s, &source_kernel, opts).prefixed("source-kernel:"));
    report.extend(check_subspace(s, &target_kernel, opts).prefixed("target-kernel:"));
    report.extend(check_subspace(s, &v.isotropy_kernel(), opts).prefixed("isotropy-at-zero:"));

    let mut left = LawCheck::new("zero-left-identity", opts);
    for &x in &source_kernel {
        let p = v.product(zero, x);
        left.check(p == Some(x), || (vec![r(x)], r(x), sh(p)));
    }
    report.push(left.finish());
    let mut right = LawCheck::new("zero-right-identity", opts);
    for &x in &target_kernel {
        let p = v.product(x, zero);
        right.check(p == Some(x), || (vec![r(x)], r(x), sh(p)));
    }
    report.push(right.finish());

    report.push(translation_injective(v, &target_kernel, g.alpha_table(), "source-translation-injective", opts));
    report.push(translation_injective(v, &source_kernel, g.beta_table(), "target-translation-injective", opts));
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslationKind {
    /// `t_β(x) = β(x) - x`, from `α⁻¹(0)` to `β⁻¹(0)`.
    Target,
    /// `t_α(x) = α(x) - x`, from `β⁻¹(0)` to `α⁻¹(0)`.
    Source,
}

#[derive(Clone, Debug)]
pub struct FibreTranslation {
    pub kind: TranslationKind,
    /// Domain fibre, as carrier indices.
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    /// Images, parallel to `domain`.
    pub map: Vec<usize>,
}

impl FibreTranslation {
    pub fn apply(&self, x: usize) -> Option<usize> {
        let i = self.domain.binary_search(&x).ok()?;
        Some(self.map[i])
    }
}

/// Builds `t_β` and `t_α` on the 0-fibres computed from the α, β tables.
pub fn fibre_translations(v: &VectorGroupoid) -> (FibreTranslation, FibreTranslation) {
    let s = v.space.as_ref();
    let g = &v.groupoid;
    let source_kernel = v.source_kernel();
    let target_kernel = v.target_kernel();
    let t_beta = FibreTranslation {
        kind: TranslationKind::Target,
        map: source_kernel.iter().map(|&x| s.sub(g.beta(x), x)).collect(),
        domain: source_kernel.clone(),
        codomain: target_kernel.clone(),
    };
    let t_alpha = FibreTranslation {
        kind: TranslationKind::Source,
        map: target_kernel.iter().map(|&x| s.sub(g.alpha(x), x)).collect(),
        domain: target_kernel,
        codomain: source_kernel,
    };
    (t_beta, t_alpha)
}

/// Both translations are linear bijections between the 0-fibres and each
/// inverts the other.
pub fn verify_fibre_translations(v: &VectorGroupoid, opts: &CheckOptions) -> AxiomReport {
    let (t_beta, t_alpha) = fibre_translations(v);
    let r = |x: usize| v.render(x);
    let mut report = AxiomReport::new();

    for (t, name) in [(&t_beta, "target-translation"), (&t_alpha, "source-translation")] {
        let mut bij = LawCheck::new(&format!("{name}-bijective"), opts);
        let mut hit = HashMap::new();
        for (&x, &y) in t.domain.iter().zip(&t.map) {
            let ok = t.codomain.binary_search(&y).is_ok() && hit.insert(y, x).is_none();
            bij.check(ok, || (vec![r(x)], "a fresh element of the target fibre".into(), r(y)));
        }
        bij.check(t.domain.len() == t.codomain.len(), || {
            (vec![], format!("{} elements", t.codomain.len()), format!("{} elements", t.domain.len()))
        });
        report.push(bij.finish());

        let law = format!("{name}-linear");
        let spaces = SubsetSpace::new(v.space.clone(), t.domain.clone())
            .and_then(|d| SubsetSpace::new(v.space.clone(), t.codomain.clone()).map(|c| (d, c)));
        match spaces {
            Ok((dom, cod)) => match t.map.iter().map(|&y| cod.from_parent(y)).collect::<Option<Vec<_>>>() {
                Some(table) => report.push(linear_law(&table, &dom, &cod, &law, opts)),
                None => {
                    let mut c = LawCheck::new(&law, opts);
                    c.check(false, || (vec![], "images inside the target fibre".into(), "image outside".into()));
                    report.push(c.finish());
                }
            },
            Err(e) => {
                let mut c = LawCheck::new(&law, opts);
                c.check(false, || (vec![], "fibres are subspaces".into(), e.to_string()));
                report.push(c.finish());
            }
        }
    }

    let mut round = LawCheck::new("translations-mutually-inverse", opts);
    for &x in &t_beta.domain {
        let back = t_beta.apply(x).and_then(|y| t_alpha.apply(y));
        round.check(back == Some(x), || {
            (vec![format!("t_α(t_β({}))", r(x))], r(x), back.map(r).unwrap_or_else(|| "undefined".into()))
        });
    }
    for &x in &t_alpha.domain {
        let back = t_alpha.apply(x).and_then(|y| t_beta.apply(y));
        round.check(back == Some(x), || {
            (vec![format!("t_β(t_α({}))", r(x))], r(x), back.map(r).unwrap_or_else(|| "undefined".into()))
        });
    }
    report.push(round.finish());
    report
}

/// `V(u)` with `x ⊞ y = x + y - u`, `k ⊠ x = k·x + (1-k)·u` and
/// `x ⊡ y = (x - u) ⊙ (y - u) + u`: a vector groupoid with the single unit `u`.
pub fn isotropy_vector_groupoid(v: &VectorGroupoid, u: usize) -> Result<VectorGroupoid> {
    let g = &v.groupoid;
    if u >= v.len() || !g.is_unit(u) {
        let name = if u < v.len() { v.render(u) } else { format!("index {u}") };
        return Err(Error::NotAUnit(name));
    }
    let members: Vec<usize> = g.hom(u, u).collect();
    let shifted = Arc::new(ShiftedSpace::new(v.space.clone(), u, members.clone())?);
    let local = |x: usize| shifted.from_parent(x);
    let lu = local(u).expect("u is in its isotropy group");

    let inv = members
        .iter()
        .map(|&x| local(g.inv(x)).ok_or_else(|| Error::NotASubspace(format!("ι({}) leaves V(u)", v.render(x)))))
        .collect::<Result<Vec<_>>>()?;
    let keys = members.iter().map(|&x| g.element(x).to_vec()).collect();
    let m = members.len();

    let parent = v.clone();
    let sp = shifted.clone();
    let mul: MulFn = Arc::new(move |a, b| {
        let s = parent.space.as_ref();
        let (x, y) = (sp.to_parent(a), sp.to_parent(b));
        let prod = parent.product(s.sub(x, u), s.sub(y, u))?;
        sp.from_parent(s.add(prod, u))
    });
    let groupoid =
        FiniteGroupoid::from_parts(g.notation().clone(), keys, vec![lu; m], vec![lu; m], inv, vec![lu], mul)?;
    VectorGroupoid::from_parts(groupoid, shifted, vec![lu])
}
