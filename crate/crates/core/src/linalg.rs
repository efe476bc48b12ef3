//! Coordinate vectors, matrices and row-reduced subspaces over `Z_p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector {
    field: PrimeField,
    coords: Vec<u32>,
}

impl FVector {
    /// Builds a vector, reducing every coordinate mod p.
    pub fn new(field: PrimeField, coords: impl IntoIterator<Item = i64>) -> Self {
        let coords = coords.into_iter().map(|c| field.reduce(c)).collect();
        FVector { field, coords }
    }

    pub(crate) fn from_residues(field: PrimeField, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < field.modulus()));
        FVector { field, coords }
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        FVector { field, coords: vec![0; dim] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    fn compatible(&self, other: &FVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.modulus(), right: other.field.modulus() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn add(&self, other: &FVector) -> Result<FVector> {
        self.compatible(other)?;
        let f = self.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FVector { field: f, coords })
    }

    pub fn sub(&self, other: &FVector) -> Result<FVector> {
        self.compatible(other)?;
        let f = self.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(FVector { field: f, coords })
    }

    pub fn scale(&self, k: u32) -> FVector {
        let f = self.field;
        FVector { field: f, coords: self.coords.iter().map(|&a| f.mul(k, a)).collect() }
    }

    pub fn neg(&self) -> FVector {
        self.scale(self.field.neg(1))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A matrix acting on column vectors, `Z_p^cols -> Z_p^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLinearMap {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FLinearMap {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: impl IntoIterator<Item = i64>) -> Result<Self> {
        let entries: Vec<u32> = entries.into_iter().map(|e| field.reduce(e)).collect();
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(FLinearMap { field, rows, cols, entries })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % field.modulus();
        }
        FLinearMap { field, rows: n, cols: n, entries }
    }

    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FLinearMap { field, rows, cols, entries: vec![0; rows * cols] }
    }

    /// Stacks blocks `[[A, B], [C, D]]`-style: `blocks[r][c]` must share row
    /// counts along a block row and column counts along a block column.
    pub fn from_blocks(blocks: &[Vec<FLinearMap>]) -> Result<Self> {
        let field = blocks[0][0].field;
        let rows: usize = blocks.iter().map(|row| row[0].rows).sum();
        let cols: usize = blocks[0].iter().map(|b| b.cols).sum();
        let mut entries = vec![0; rows * cols];
        let mut r0 = 0;
        for block_row in blocks {
            let mut c0 = 0;
            let h = block_row[0].rows;
            for b in block_row {
                if b.rows != h {
                    return Err(Error::DimensionMismatch { expected: h, found: b.rows });
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        entries[(r0 + i) * cols + c0 + j] = b.entries[i * b.cols + j];
                    }
                }
                c0 += b.cols;
            }
            if c0 != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: c0 });
            }
            r0 += h;
        }
        Ok(FLinearMap { field, rows, cols, entries })
    }

    pub fn scaled(&self, k: u32) -> Self {
        let f = self.field;
        FLinearMap { entries: self.entries.iter().map(|&e| f.mul(k, e)).collect(), ..self.clone() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn apply(&self, x: &FVector) -> Result<FVector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.dim() });
        }
        Ok(FVector::from_residues(self.field, self.apply_coords(x.coords())))
    }

    pub(crate) fn apply_coords(&self, x: &[u32]) -> Vec<u32> {
        let p = self.field.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                (row.iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            })
            .collect()
    }
}

/// A subspace of `Z_p^n`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form of `rows`; zero rows are dropped.
fn rref(field: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                let pivot_row = rows[r].clone();
                for (e, &p) in rows[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *e = field.sub(*e, field.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl Subspace {
    /// Row space of `generators` inside `Z_p^ambient_dim`.
    pub fn span(field: PrimeField, ambient_dim: usize, generators: &[FVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch { left: field.modulus(), right: g.field().modulus() });
            }
            if g.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.dim() });
            }
            rows.push(g.coords().to_vec());
        }
        let (basis, pivots) = rref(field, rows, ambient_dim);
        Ok(Subspace { field, ambient_dim, basis, pivots })
    }

    pub fn full(field: PrimeField, dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut row = vec![0; dim];
                row[i] = 1;
                row
            })
            .collect();
        Subspace { field, ambient_dim: dim, basis, pivots: (0..dim).collect() }
    }

    pub fn zero(field: PrimeField, dim: usize) -> Self {
        Subspace { field, ambient_dim: dim, basis: vec![], pivots: vec![] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<FVector> {
        self.basis.iter().map(|r| FVector::from_residues(self.field, r.clone())).collect()
    }

    /// Number of elements, `p^rank`.
    pub fn cardinality(&self) -> u128 {
        (self.field.modulus() as u128).pow(self.rank() as u32)
    }

    /// `Σ c_i b_i` for coefficient vector `c`.
    pub(crate) fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.ambient_dim];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(*c, b));
            }
        }
        out
    }

    /// Coefficients of `v` in the echelon basis, or `None` when `v` is not
    /// in the span. In reduced echelon form the coefficient of row `i` is the
    /// coordinate of `v` at pivot `i`.
    pub(crate) fn coefficients(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        (self.combine(&coeffs) == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &FVector) -> Result<bool> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.dim() });
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field.modulus(), right: v.field().modulus() });
        }
        Ok(self.coefficients(v.coords()).is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.field == other.field
            && self.basis.iter().all(|r| other.coefficients(r).is_some())
    }

    /// Elements in lexicographic coordinate order.
    pub fn enumerate(&self) -> Vec<FVector> {
        let p = self.field.modulus();
        let r = self.rank();
        let total = (p as usize).pow(r as u32);
        let mut coeffs = vec![0u32; r];
        let mut out = Vec::with_capacity(total);
        for _ in 0..total {
            out.push(FVector::from_residues(self.field, self.combine(&coeffs)));
            for d in (0..r).rev() {
                coeffs[d] += 1;
                if coeffs[d] < p {
                    break;
                }
                coeffs[d] = 0;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn v(p: u64, c: &[i64]) -> FVector {
        FVector::new(f(p), c.iter().copied())
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::span(f(2), 2, &[v(2, &[1, 0])]).unwrap();
        assert!(s.contains(&v(2, &[1, 0])).unwrap());
        assert!(!s.contains(&v(2, &[0, 1])).unwrap());
        let t = Subspace::span(f(3), 2, &[v(3, &[1, 1])]).unwrap();
        assert!(t.contains(&v(3, &[2, 2])).unwrap());
        assert_eq!(s.contains(&v(2, &[1, 0, 0])), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn enumeration_order() {
        let full = Subspace::full(f(2), 2);
        let got: Vec<_> = full.enumerate().into_iter().map(|x| x.into_coords()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let line = Subspace::span(f(3), 2, &[v(3, &[1, 0])]).unwrap();
        let got: Vec<_> = line.enumerate().into_iter().map(|x| x.into_coords()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        assert_eq!(Subspace::full(f(5), 1).enumerate().len(), 5);
    }

    #[test]
    fn rref_canonical() {
        let a = Subspace::span(f(3), 3, &[v(3, &[1, 1, 0]), v(3, &[0, 1, 1])]).unwrap();
        let b = Subspace::span(f(3), 3, &[v(3, &[1, 2, 1]), v(3, &[2, 2, 0]), v(3, &[0, 2, 2])]).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(a, b);
        assert!(a.is_subspace_of(&Subspace::full(f(3), 3)));
    }

    #[test]
    fn linear_map_blocks() {
        let id = FLinearMap::identity(f(3), 1);
        let z = FLinearMap::zero(f(3), 1, 1);
        let alpha = FLinearMap::from_blocks(&[vec![id.clone(), z.clone()], vec![id.clone(), z]]).unwrap();
        assert_eq!(alpha.apply(&v(3, &[1, 2])).unwrap(), v(3, &[1, 1]));
        assert!(alpha.apply(&v(3, &[1])).is_err());
    }

    #[test]
    fn vector_ops_check_shape() {
        assert!(v(3, &[1]).add(&v(3, &[1, 2])).is_err());
        assert!(v(3, &[1]).add(&v(5, &[1])).is_err());
        assert_eq!(v(3, &[1, 2]).add(&v(3, &[2, 2])).unwrap(), v(3, &[0, 1]));
        assert_eq!(v(3, &[1, 2]).neg(), v(3, &[2, 1]));
    }
}
