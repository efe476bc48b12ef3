//! The catalog: single-unit, null, pair, type-(p,q), `V³` and trivial vector
//! groupoids, direct products, Whitney sums, the symmetry groupoids `SG_n`
//! and the sign group.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, MulFn};
use crate::linalg::Subspace;
use crate::notation::Notation;
use crate::partial_bijection::PartialBijection;
use crate::space::{AbstractSpace, ProductSpace, SpaceRef, SubsetSpace};
use crate::vector_groupoid::VectorGroupoid;

pub const DEFAULT_MAX_CARRIER: usize = 10_000;

/// Largest ground set accepted by [`Constructor::symmetry_groupoid`].
pub const MAX_SYMMETRY_DEGREE: usize = 6;

/// Builds catalog instances, refusing carriers above `max_carrier` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constructor {
    pub max_carrier: usize,
}

impl Default for Constructor {
    fn default() -> Self {
        Constructor { max_carrier: DEFAULT_MAX_CARRIER }
    }
}

/// Kind tag plus validated-on-build parameters.
#[derive(Clone, Debug)]
pub enum ConstructionSpec {
    SingleUnit(SpaceRef),
    Null(SpaceRef),
    Pair(SpaceRef),
    Vpq { space: SpaceRef, p: i64, q: i64 },
    V3(SpaceRef),
    Tvg { space: SpaceRef, subspace: Subspace },
    DirectProduct(VectorGroupoid, VectorGroupoid),
    Whitney(VectorGroupoid, VectorGroupoid),
    Symmetry(usize),
}

impl ConstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::SingleUnit(_) => "single_unit",
            ConstructionSpec::Null(_) => "null",
            ConstructionSpec::Pair(_) => "pair",
            ConstructionSpec::Vpq { .. } => "vpq",
            ConstructionSpec::V3(_) => "v3",
            ConstructionSpec::Tvg { .. } => "tvg",
            ConstructionSpec::DirectProduct(..) => "direct_product",
            ConstructionSpec::Whitney(..) => "whitney",
            ConstructionSpec::Symmetry(_) => "symmetry",
        }
    }
}

/// One-line descriptions of every construction kind, in catalog order.
pub const CATALOG: &[(&str, &str)] = &[
    ("single_unit(V)", "carrier V, one unit 0, x⊙y = x + y"),
    ("null(V)", "carrier V, every element a unit, x⊙x = x"),
    ("pair(V)", "carrier V×V, (x,y)⊙(y,z) = (x,z), units the diagonal"),
    ("vpq(V, p=, q=)", "carrier V×V, α(x,y) = (x,px), β(x,y) = (qy,y), needs pq = 1"),
    ("v3(V)", "carrier V³, (x1,x2,x3)⊙(x2,y2,y3) = (x1,y2,x3+y3)"),
    ("tvg(V, W)", "carrier W×V×W, (w1,v1,w2)⊙(w2,v2,w3) = (w1,v1+v2,w3)"),
    ("product(G, H)", "componentwise structure on G×H"),
    ("whitney(G, H)", "pullback of G and H over a shared base, componentwise structure"),
    ("sg(n)", "partial bijections of {1..n}, f⊙g = f∘g when domains agree (no linear structure)"),
];

/// A construction result.
#[derive(Clone, Debug)]
pub enum Built {
    Vector(VectorGroupoid),
    Product(DirectProduct),
    Whitney(WhitneySum),
    /// A groupoid without linear structure.
    Plain(FiniteGroupoid),
}

impl Built {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        match self {
            Built::Plain(g) => g,
            other => other.vector().expect("vector kinds").groupoid(),
        }
    }

    pub fn vector(&self) -> Option<&VectorGroupoid> {
        match self {
            Built::Vector(v) => Some(v),
            Built::Product(p) => Some(&p.groupoid),
            Built::Whitney(w) => Some(&w.groupoid),
            Built::Plain(_) => None,
        }
    }
}

/// `V × W` with its canonical projections (index tables).
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub groupoid: VectorGroupoid,
    pub left: VectorGroupoid,
    pub right: VectorGroupoid,
    pub proj1: Vec<usize>,
    pub proj2: Vec<usize>,
}

/// `V ⊕ V′`: pairs whose sources and targets correspond under the shared
/// base, with the projections onto each summand.
#[derive(Clone, Debug)]
pub struct WhitneySum {
    pub groupoid: VectorGroupoid,
    pub left: VectorGroupoid,
    pub right: VectorGroupoid,
    pub proj1: Vec<usize>,
    pub proj2: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
}

impl WhitneySum {
    /// Carrier index of `(a, b)`, if the pair lies in the pullback.
    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

/// Assembles a vector groupoid on `space` from index-level structure maps.
/// The unit set is the image of α; products are only attempted on pairs
/// with `β(x) = α(y)`.
fn assemble(
    space: SpaceRef,
    alpha: impl Fn(usize) -> usize,
    beta: impl Fn(usize) -> usize,
    inv: impl Fn(usize) -> usize,
    raw_mul: impl Fn(usize, usize) -> usize,
) -> Result<VectorGroupoid> {
    let n = space.len();
    let alpha: Vec<usize> = (0..n).map(alpha).collect();
    let beta: Vec<usize> = (0..n).map(beta).collect();
    let inv: Vec<usize> = (0..n).map(inv).collect();
    let mut units = alpha.clone();
    units.sort_unstable();
    units.dedup();
    let keys = (0..n).map(|i| space.point(i).to_vec()).collect();
    // Tabulate every composable product once: row x lists x⊙y for y in the
    // α-fibre over β(x), in index order; `slot[y]` is y's position there.
    let mut slot = vec![0; n];
    let mut fibre_len = vec![0; n];
    for y in 0..n {
        slot[y] = fibre_len[alpha[y]];
        fibre_len[alpha[y]] += 1;
    }
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); n];
    for y in 0..n {
        fibres[alpha[y]].push(y);
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|x| fibres[beta[x]].iter().map(|&y| raw_mul(x, y)).collect()).collect();
    let (a, b) = (alpha.clone(), beta.clone());
    let mul: MulFn = Arc::new(move |x, y| (b[x] == a[y]).then(|| rows[x][slot[y]]));
    let g = FiniteGroupoid::from_parts(Notation::Tuple(space.shape()), keys, alpha, beta, inv, units.clone(), mul)?;
    VectorGroupoid::from_parts(g, space, units)
}

impl Constructor {
    pub fn new(max_carrier: usize) -> Self {
        Constructor { max_carrier }
    }

    fn guard(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_carrier as u128 {
            return Err(Error::SizeGuard(format!(
                "{what} would have {size} elements, above the cap of {}",
                self.max_carrier
            )));
        }
        Ok(())
    }

    fn power(&self, what: &str, space: &SpaceRef, k: u32) -> Result<Arc<ProductSpace>> {
        self.guard(what, (space.len() as u128).pow(k))?;
        Ok(Arc::new(ProductSpace::new(vec![space.clone(); k as usize])?))
    }

    pub fn build(&self, spec: &ConstructionSpec) -> Result<Built> {
        Ok(match spec {
            ConstructionSpec::SingleUnit(v) => Built::Vector(self.single_unit(v)?),
            ConstructionSpec::Null(v) => Built::Vector(self.null(v)?),
            ConstructionSpec::Pair(v) => Built::Vector(self.pair(v)?),
            ConstructionSpec::Vpq { space, p, q } => Built::Vector(self.vpq(space, *p, *q)?),
            ConstructionSpec::V3(v) => Built::Vector(self.v3(v)?),
            ConstructionSpec::Tvg { space, subspace } => Built::Vector(self.tvg(space, subspace)?),
            ConstructionSpec::DirectProduct(a, b) => Built::Product(self.direct_product(a, b)?),
            ConstructionSpec::Whitney(a, b) => Built::Whitney(self.whitney_sum(a, b)?),
            ConstructionSpec::Symmetry(n) => Built::Plain(self.symmetry_groupoid(*n)?),
        })
    }

    /// `α = β = 0`, `ι = -id`, `x ⊙ y = x + y`.
    pub fn single_unit(&self, space: &SpaceRef) -> Result<VectorGroupoid> {
        self.guard("single_unit", space.len() as u128)?;
        let s = space.clone();
        let z = space.zero();
        assemble(space.clone(), |_| z, |_| z, |x| space.neg(x), move |x, y| s.add(x, y))
    }

    /// Every element a unit; only `x ⊙ x = x` is defined.
    pub fn null(&self, space: &SpaceRef) -> Result<VectorGroupoid> {
        self.guard("null", space.len() as u128)?;
        assemble(space.clone(), |x| x, |x| x, |x| x, |x, _| x)
    }

    /// `(x,y) ⊙ (y,z) = (x,z)` on `V × V`.
    pub fn pair(&self, space: &SpaceRef) -> Result<VectorGroupoid> {
        self.pq_groupoid("pair", space, 1, 1)
    }

    /// Type-(p,q) coarse groupoid: `α(x,y) = (x,px)`, `β(x,y) = (qy,y)`,
    /// `ι(x,y) = (qy,px)` and `(x,y) ⊙ (qy,z) = (x,z)`.
    pub fn vpq(&self, space: &SpaceRef, p: i64, q: i64) -> Result<VectorGroupoid> {
        let f = space.field();
        let (p, q) = (f.reduce(p), f.reduce(q));
        let product = f.mul(p, q);
        if product != 1 {
            return Err(Error::NotInverse { p, q, product, modulus: f.modulus() });
        }
        self.pq_groupoid("vpq", space, p, q)
    }

    fn pq_groupoid(&self, what: &str, space: &SpaceRef, p: u32, q: u32) -> Result<VectorGroupoid> {
        let prod = self.power(what, space, 2)?;
        let (pa, pb, pi, pm) = (prod.clone(), prod.clone(), prod.clone(), prod.clone());
        let s = space.clone();
        assemble(
            prod.clone(),
            move |i| {
                let [x, _] = pa.split(i)[..] else { unreachable!() };
                pa.join(&[x, s.scale(p, x)])
            },
            {
                let s = space.clone();
                move |i| {
                    let [_, y] = pb.split(i)[..] else { unreachable!() };
                    pb.join(&[s.scale(q, y), y])
                }
            },
            {
                let s = space.clone();
                move |i| {
                    let [x, y] = pi.split(i)[..] else { unreachable!() };
                    pi.join(&[s.scale(q, y), s.scale(p, x)])
                }
            },
            move |i, j| {
                let (a, b) = (pm.split(i), pm.split(j));
                pm.join(&[a[0], b[1]])
            },
        )
    }

    /// `(x1,x2,x3) ⊙ (x2,y2,y3) = (x1,y2,x3+y3)` with base `{(x,x,0)}`.
    pub fn v3(&self, space: &SpaceRef) -> Result<VectorGroupoid> {
        let prod = self.power("v3", space, 3)?;
        let z = space.zero();
        let (pa, pb, pi, pm) = (prod.clone(), prod.clone(), prod.clone(), prod.clone());
        let (si, sm) = (space.clone(), space.clone());
        assemble(
            prod.clone(),
            move |i| {
                let x = pa.split(i)[0];
                pa.join(&[x, x, z])
            },
            move |i| {
                let x = pb.split(i)[1];
                pb.join(&[x, x, z])
            },
            move |i| {
                let c = pi.split(i);
                pi.join(&[c[1], c[0], si.neg(c[2])])
            },
            move |i, j| {
                let (a, b) = (pm.split(i), pm.split(j));
                pm.join(&[a[0], b[1], sm.add(a[2], b[2])])
            },
        )
    }

    /// Trivial vector groupoid on `W × V × W`:
    /// `(w1,v1,w2) ⊙ (w2,v2,w3) = (w1,v1+v2,w3)`, `ι(w1,v,w2) = (w2,-v,w1)`.
    pub fn tvg(&self, space: &SpaceRef, w: &Subspace) -> Result<VectorGroupoid> {
        if w.field() != space.field() {
            return Err(Error::NotASubspace(format!("W is over {}, V over {}", w.field(), space.field())));
        }
        let members = w
            .enumerate()
            .iter()
            .map(|x| space.index_of(x.coords()).ok_or_else(|| Error::NotASubspace(format!("{x} is not in V"))))
            .collect::<Result<Vec<_>>>()?;
        let w_len = members.len() as u128;
        self.guard("tvg", w_len * w_len * space.len() as u128)?;
        let ws: SpaceRef = Arc::new(SubsetSpace::new(space.clone(), members)?);
        let prod = Arc::new(ProductSpace::new(vec![ws.clone(), space.clone(), ws])?);
        let z = space.zero();
        let (pa, pb, pi, pm) = (prod.clone(), prod.clone(), prod.clone(), prod.clone());
        let (si, sm) = (space.clone(), space.clone());
        assemble(
            prod.clone(),
            move |i| {
                let c = pa.split(i);
                pa.join(&[c[0], z, c[0]])
            },
            move |i| {
                let c = pb.split(i);
                pb.join(&[c[2], z, c[2]])
            },
            move |i| {
                let c = pi.split(i);
                pi.join(&[c[2], si.neg(c[1]), c[0]])
            },
            move |i, j| {
                let (a, b) = (pm.split(i), pm.split(j));
                pm.join(&[a[0], sm.add(a[1], b[1]), b[2]])
            },
        )
    }

    /// Componentwise structure on `V × W`.
    pub fn direct_product(&self, v: &VectorGroupoid, w: &VectorGroupoid) -> Result<DirectProduct> {
        let (fv, fw) = (v.space().field(), w.space().field());
        if fv != fw {
            return Err(Error::FieldMismatch { left: fv.modulus(), right: fw.modulus() });
        }
        self.guard("product", v.len() as u128 * w.len() as u128)?;
        let prod = Arc::new(ProductSpace::new(vec![v.space().clone(), w.space().clone()])?);
        let componentwise = |f: fn(&FiniteGroupoid, usize) -> usize| {
            let (p, gv, gw) = (prod.clone(), v.groupoid().clone(), w.groupoid().clone());
            move |i: usize| {
                let c = p.split(i);
                p.join(&[f(&gv, c[0]), f(&gw, c[1])])
            }
        };
        let (pm, gv, gw) = (prod.clone(), v.groupoid().clone(), w.groupoid().clone());
        let groupoid = assemble(
            prod.clone(),
            componentwise(FiniteGroupoid::alpha),
            componentwise(FiniteGroupoid::beta),
            componentwise(FiniteGroupoid::inv),
            move |i, j| {
                let (a, b) = (pm.split(i), pm.split(j));
                let first = gv.mul(a[0], b[0]).expect("composable components");
                let second = gw.mul(a[1], b[1]).expect("composable components");
                pm.join(&[first, second])
            },
        )?;
        let (proj1, proj2) = (0..prod.len())
            .map(|i| {
                let c = prod.split(i);
                (c[0], c[1])
            })
            .unzip();
        Ok(DirectProduct { groupoid, left: v.clone(), right: w.clone(), proj1, proj2 })
    }

    /// Pullback of `v` and `w` over their common base. Composable pairs are
    /// those with `β(first) = α(second)` in each component.
    pub fn whitney_sum(&self, v: &VectorGroupoid, w: &VectorGroupoid) -> Result<WhitneySum> {
        let (fv, fw) = (v.space().field(), w.space().field());
        if fv != fw {
            return Err(Error::BaseMismatch(format!("summands are over {fv} and {fw}")));
        }
        let w_base: HashMap<&[u32], usize> = w.base().iter().map(|&u| (w.groupoid().element(u), u)).collect();
        let mut to_w = HashMap::new();
        for &u in v.base() {
            let key = v.groupoid().element(u);
            let Some(&u2) = w_base.get(key) else {
                return Err(Error::BaseMismatch(format!("{} is a unit of the first summand only", v.render(u))));
            };
            to_w.insert(u, u2);
        }
        if to_w.len() != w.base().len() {
            return Err(Error::BaseMismatch(format!("bases have {} and {} elements", v.base().len(), w.base().len())));
        }

        let (gv, gw) = (v.groupoid(), w.groupoid());
        let mut pairs = Vec::new();
        for a in 0..v.len() {
            let (s, t) = (to_w[&gv.alpha(a)], to_w[&gv.beta(a)]);
            for &b in gw.alpha_fibre(s) {
                if gw.beta(b) == t {
                    pairs.push((a, b));
                }
            }
        }
        self.guard("whitney", pairs.len() as u128)?;
        let prod: SpaceRef = Arc::new(ProductSpace::new(vec![v.space().clone(), w.space().clone()])?);
        let join = |a: usize, b: usize| a * w.len() + b;
        let members: Vec<usize> = pairs.iter().map(|&(a, b)| join(a, b)).collect();
        let carrier = Arc::new(SubsetSpace::new(prod, members)?);

        // `pairs` is generated in lexicographic order, matching the carrier.
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let lookup = Arc::new(index.clone());
        let pairs = Arc::new(pairs);
        let componentwise = |f: fn(&FiniteGroupoid, usize) -> usize| {
            let (pairs, lookup, gv, gw) = (pairs.clone(), lookup.clone(), gv.clone(), gw.clone());
            move |i: usize| {
                let (a, b) = pairs[i];
                lookup[&(f(&gv, a), f(&gw, b))]
            }
        };
        let (pm, lm, gvm, gwm) = (pairs.clone(), lookup.clone(), gv.clone(), gw.clone());
        let groupoid = assemble(
            carrier,
            componentwise(FiniteGroupoid::alpha),
            componentwise(FiniteGroupoid::beta),
            componentwise(FiniteGroupoid::inv),
            move |i, j| {
                let ((a1, b1), (a2, b2)) = (pm[i], pm[j]);
                let first = gvm.mul(a1, a2).expect("composable components");
                let second = gwm.mul(b1, b2).expect("composable components");
                lm[&(first, second)]
            },
        )?;
        let (proj1, proj2) = pairs.iter().copied().unzip();
        Ok(WhitneySum { groupoid, left: v.clone(), right: w.clone(), proj1, proj2, index })
    }

    /// `SG_n`: partial bijections of `{1..n}`, `f ⊙ g = f ∘ g` when
    /// `D(f) = D(g)`, units the identities, `ι(f) = f⁻¹`.
    pub fn symmetry_groupoid(&self, n: usize) -> Result<FiniteGroupoid> {
        if !(1..=MAX_SYMMETRY_DEGREE).contains(&n) {
            return Err(Error::SizeGuard(format!("sg({n}) is outside 1..={MAX_SYMMETRY_DEGREE}")));
        }
        self.guard("sg", crate::partial_bijection::sg_cardinality(n as u32).0)?;
        let mut elements = PartialBijection::all(n);
        elements.sort_by_key(PartialBijection::key);
        let keys: Vec<Vec<u32>> = elements.iter().map(PartialBijection::key).collect();
        let index: HashMap<Vec<u32>, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let find = |f: &PartialBijection| index[&f.key()];
        let units_of: Vec<usize> = elements
            .iter()
            .map(|f| find(&PartialBijection::identity(n, f.domain()).expect("nonempty domain")))
            .collect();
        let inv = elements.iter().map(|f| find(&f.inverse())).collect();
        let mut units = units_of.clone();
        units.sort_unstable();
        units.dedup();
        let elements = Arc::new(elements);
        let mul: MulFn = Arc::new(move |x, y| {
            let composed = elements[x].compose(&elements[y])?;
            index.get(&composed.key()).copied()
        });
        FiniteGroupoid::from_parts(Notation::PartialBijection { n }, keys, units_of.clone(), units_of, inv, units, mul)
    }
}

/// `{+1, -1}` under multiplication, as a groupoid with the single unit `+1`.
pub fn sign_group() -> FiniteGroupoid {
    let mul: MulFn = Arc::new(|x, y| Some(x ^ y));
    FiniteGroupoid::from_parts(Notation::Sign, vec![vec![0], vec![1]], vec![0, 0], vec![0, 0], vec![0, 1], vec![0], mul)
        .expect("sign group tables")
}

pub fn single_unit(space: &SpaceRef) -> Result<VectorGroupoid> {
    Constructor::default().single_unit(space)
}

pub fn null_vg(space: &SpaceRef) -> Result<VectorGroupoid> {
    Constructor::default().null(space)
}

pub fn pair_vg(space: &SpaceRef) -> Result<VectorGroupoid> {
    Constructor::default().pair(space)
}

pub fn vpq(space: &SpaceRef, p: i64, q: i64) -> Result<VectorGroupoid> {
    Constructor::default().vpq(space, p, q)
}

pub fn v3(space: &SpaceRef) -> Result<VectorGroupoid> {
    Constructor::default().v3(space)
}

pub fn trivial_tvg(space: &SpaceRef, w: &Subspace) -> Result<VectorGroupoid> {
    Constructor::default().tvg(space, w)
}

pub fn direct_product(v: &VectorGroupoid, w: &VectorGroupoid) -> Result<DirectProduct> {
    Constructor::default().direct_product(v, w)
}

pub fn whitney_sum(v: &VectorGroupoid, w: &VectorGroupoid) -> Result<WhitneySum> {
    Constructor::default().whitney_sum(v, w)
}

pub fn symmetry_groupoid(n: usize) -> Result<FiniteGroupoid> {
    Constructor::default().symmetry_groupoid(n)
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Vpq { p, q, .. } => write!(f, "vpq(p={p}, q={q})"),
            ConstructionSpec::Symmetry(n) => write!(f, "sg({n})"),
            other => f.write_str(other.kind()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groupoid::{verify_brandt, verify_calculus};
    use crate::linalg::FVector;
    use crate::report::CheckOptions;
    use crate::space::{verify_space_axioms, CoordSpace};
    use crate::vector_groupoid::{verify_structural_consequences, verify_vector_axioms};

    fn space(p: u64, d: usize) -> SpaceRef {
        Arc::new(CoordSpace::full(PrimeField::new(p).unwrap(), d).unwrap())
    }

    fn idx(v: &VectorGroupoid, c: &[u32]) -> usize {
        v.index_of(c).unwrap()
    }

    fn mul(v: &VectorGroupoid, a: &[u32], b: &[u32]) -> String {
        let (x, y) = (idx(v, a), idx(v, b));
        assert!(v.groupoid().composable(x, y));
        v.render(v.groupoid().mul(x, y).unwrap())
    }

    fn passes_all(v: &VectorGroupoid) {
        let opts = CheckOptions::default();
        for report in [
            verify_brandt(v.groupoid(), &opts),
            verify_calculus(v.groupoid(), &opts),
            verify_vector_axioms(v, &opts),
            verify_structural_consequences(v, &opts),
        ] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn single_unit_examples() {
        let v = single_unit(&space(5, 1)).unwrap();
        assert_eq!(mul(&v, &[2], &[4]), "(1)");
        assert_eq!(v.base().len(), 1);
        let v = single_unit(&space(2, 2)).unwrap();
        assert_eq!(v.len(), 4);
        assert!((0..4).all(|x| (0..4).all(|y| v.groupoid().composable(x, y))));
        passes_all(&v);
    }

    #[test]
    fn null_examples() {
        let v = null_vg(&space(3, 1)).unwrap();
        let composable =
            (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&(x, y)| v.groupoid().composable(x, y));
        assert_eq!(composable.count(), 3);
        assert!(!v.groupoid().is_transitive());
        assert!(v.groupoid().is_group_bundle());
        passes_all(&v);
    }

    #[test]
    fn pair_examples() {
        let v = pair_vg(&space(3, 1)).unwrap();
        assert_eq!(mul(&v, &[1, 2], &[2, 0]), "(1,0)");
        assert_eq!(v.render(v.groupoid().inv(idx(&v, &[1, 2]))), "(2,1)");
        assert!(v.groupoid().is_transitive());
        passes_all(&v);
    }

    #[test]
    fn vpq_examples() {
        let v = vpq(&space(5, 1), 2, 3).unwrap();
        let x = idx(&v, &[1, 1]);
        assert_eq!(v.render(v.groupoid().inv(x)), "(3,2)");
        assert_eq!(v.render(v.groupoid().alpha(x)), "(1,2)");
        assert_eq!(v.render(v.groupoid().beta(x)), "(3,1)");
        assert_eq!(mul(&v, &[1, 1], &[3, 4]), "(1,4)");
        assert!(v.groupoid().is_transitive());
        passes_all(&v);
        assert!(matches!(vpq(&space(5, 1), 2, 2), Err(Error::NotInverse { product: 4, .. })));
        let err = vpq(&space(5, 1), 2, 2).unwrap_err().to_string();
        assert!(err.starts_with("p·q ≠ 1"), "{err}");
    }

    #[test]
    fn vpq_one_one_is_pair() {
        let s = space(3, 1);
        let (a, b) = (vpq(&s, 1, 1).unwrap(), pair_vg(&s).unwrap());
        let (ga, gb) = (a.groupoid(), b.groupoid());
        assert_eq!(ga.elements(), gb.elements());
        assert_eq!(ga.alpha_table(), gb.alpha_table());
        assert_eq!(ga.beta_table(), gb.beta_table());
        assert_eq!(ga.inv_table(), gb.inv_table());
        for x in 0..a.len() {
            for y in 0..a.len() {
                if ga.composable(x, y) {
                    assert_eq!(ga.mul(x, y), gb.mul(x, y));
                }
            }
        }
    }

    #[test]
    fn v3_examples() {
        let v = v3(&space(2, 1)).unwrap();
        assert_eq!(mul(&v, &[1, 0, 1], &[0, 1, 1]), "(1,1,0)");
        let x = idx(&v, &[1, 0, 1]);
        assert_eq!(v.render(v.groupoid().inv(x)), "(0,1,1)");
        assert_eq!(v.render(v.groupoid().alpha(x)), "(1,1,0)");
        assert_eq!(v.render(v.groupoid().beta(x)), "(0,0,0)");
        passes_all(&v);
        for &u in v.base() {
            assert_eq!(v.groupoid().isotropy_group(u).unwrap().order(), 2);
        }
    }

    #[test]
    fn tvg_examples() {
        let f = PrimeField::new(2).unwrap();
        let s = space(2, 2);
        let w = Subspace::span(f, 2, &[FVector::new(f, [1, 0])]).unwrap();
        let v = trivial_tvg(&s, &w).unwrap();
        assert_eq!(v.len(), 16);
        assert_eq!(mul(&v, &[1, 0, 0, 1, 0, 0], &[0, 0, 1, 1, 1, 0]), "((1,0),(1,0),(1,0))");
        let x = idx(&v, &[1, 0, 0, 1, 0, 0]);
        assert_eq!(v.render(v.groupoid().inv(x)), "((0,0),(0,1),(1,0))");
        assert_eq!(v.render(v.groupoid().alpha(x)), "((1,0),(0,0),(1,0))");
        passes_all(&v);
        for &u in v.base() {
            assert_eq!(v.groupoid().isotropy_group(u).unwrap().order(), 4);
        }
        let wrong = Subspace::full(f, 3);
        assert!(matches!(trivial_tvg(&s, &wrong), Err(Error::NotASubspace(_))));
    }

    #[test]
    fn direct_product_examples() {
        let s = space(2, 1);
        let p = direct_product(&pair_vg(&s).unwrap(), &null_vg(&s).unwrap()).unwrap();
        assert_eq!(p.groupoid.len(), 8);
        passes_all(&p.groupoid);
        let pp = direct_product(&pair_vg(&s).unwrap(), &pair_vg(&s).unwrap()).unwrap();
        assert!(pp.groupoid.groupoid().is_transitive());
        let z3 = pair_vg(&space(3, 1)).unwrap();
        assert!(matches!(direct_product(&pair_vg(&s).unwrap(), &z3), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn whitney_examples() {
        let s = space(2, 1);
        let w = whitney_sum(&pair_vg(&s).unwrap(), &pair_vg(&s).unwrap()).unwrap();
        assert_eq!(w.groupoid.len(), 4);
        for x in 0..4 {
            assert_eq!(w.proj1[x], w.proj2[x]);
        }
        assert!(w.groupoid.groupoid().is_transitive());
        passes_all(&w.groupoid);
        assert_eq!(w.pair_index(1, 1), Some(1));
        assert_eq!(w.pair_index(1, 2), None);

        let w3 = whitney_sum(&v3(&s).unwrap(), &v3(&s).unwrap()).unwrap();
        assert_eq!(w3.groupoid.len(), 16);

        // pair's base is the diagonal of V×V, null's base is V itself
        let err = whitney_sum(&pair_vg(&s).unwrap(), &null_vg(&s).unwrap());
        assert!(matches!(err, Err(Error::BaseMismatch(_))));
        let err = whitney_sum(&pair_vg(&s).unwrap(), &pair_vg(&space(3, 1)).unwrap());
        assert!(matches!(err, Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn symmetry_examples() {
        let sg = symmetry_groupoid(2).unwrap();
        assert_eq!(sg.len(), 4);
        assert!(!sg.is_transitive());
        assert!(sg.is_group_bundle());
        let full = sg.index_of(&[1, 2]).unwrap();
        assert_eq!(sg.isotropy_group(full).unwrap().order(), 2);
        assert!(verify_brandt(&sg, &CheckOptions::default()).passed());
        assert!(verify_brandt(&symmetry_groupoid(4).unwrap(), &CheckOptions::default()).passed());
        assert!(matches!(symmetry_groupoid(7), Err(Error::SizeGuard(_))));
        assert!(matches!(symmetry_groupoid(0), Err(Error::SizeGuard(_))));
        assert!(matches!(Constructor::new(10).symmetry_groupoid(3), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn size_guard() {
        let c = Constructor::new(100);
        assert!(matches!(c.v3(&space(5, 1)), Err(Error::SizeGuard(_))));
        assert!(c.pair(&space(5, 1)).is_ok());
    }

    #[test]
    fn sign_group_is_a_group() {
        let g = sign_group();
        assert!(verify_brandt(&g, &CheckOptions::default()).passed());
        assert_eq!(g.render(1), "-1");
    }

    #[test]
    fn carriers_are_vector_spaces() {
        let s = space(3, 1);
        let opts = CheckOptions::default();
        for v in [pair_vg(&s).unwrap(), v3(&s).unwrap()] {
            assert!(verify_space_axioms(v.space().as_ref(), &opts).passed());
        }
    }
}
