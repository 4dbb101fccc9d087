//! Exact linear algebra over F_q.
//!
//! Subspaces are always held in reduced row-echelon form, so two
//! [`Subspace`] values compare equal exactly when they span the same space.
//! Every choice (pivot selection, complements, coset representatives) is
//! deterministic with lowest index first.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r).iter().map(|e| e.value()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> Result<()> {
    if std::sync::Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl Matrix {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldRef, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: &FieldRef, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for &e in r {
                field.elem(e.value())?;
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from canonical integer encodings.
    pub fn from_u32_rows(field: &FieldRef, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.elem(v)).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_u32_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.value()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        same_field(&self.field, &other.field)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Keeps the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        same_field(&self.field, &other.field)?;
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `{x : M x = 0}` as a subspace of F_q^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[fc] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, fc));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis).expect("kernel vectors have the right length")
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FieldElement::ONE);
        }
        let red = aug.rref();
        if red.pivots.iter().take(n).copied().ne(0..n) || red.rank < n {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(red.matrix.select_columns(&cols))
    }

    /// Some `x` with `x · M = b`, or `None` when b is outside the row space.
    pub fn solve_left(&self, b: &[FieldElement]) -> Option<Vector> {
        if b.len() != self.cols {
            return None;
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows + 1, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
        }
        for (c, &x) in b.iter().enumerate() {
            aug.set(self.rows, c, x);
        }
        let kernel = aug.transpose().kernel_basis();
        let y = kernel.basis_vectors().into_iter().find(|y| !y[self.rows].is_zero())?;
        let scale = f.neg(f.inv(y[self.rows]).expect("nonzero"));
        Some(y[..self.rows].iter().map(|&a| f.mul(a, scale)).collect())
    }
}

/// A subspace of F_q^n held as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{}) {:?}", self.dim(), self.basis.field.order(), self.ambient_dim(), self.basis.to_u32_rows())
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.to_u32_rows().serialize(s)
    }
}

impl Subspace {
    pub fn from_matrix(generators: &Matrix) -> Subspace {
        let Rref { matrix, rank, pivots } = generators.rref();
        let keep: Vec<Vector> = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        let basis = Matrix {
            field: matrix.field.clone(),
            rows: rank,
            cols: matrix.cols,
            data: keep.concat(),
        };
        Subspace { basis, pivots }
    }

    pub fn span(field: &FieldRef, ambient: usize, generators: &[Vector]) -> Result<Subspace> {
        Ok(Self::from_matrix(&Matrix::from_rows(field, ambient, generators)?))
    }

    pub fn zero(field: &FieldRef, ambient: usize) -> Subspace {
        Self::from_matrix(&Matrix::zeros(field, 0, ambient))
    }

    pub fn full(field: &FieldRef, ambient: usize) -> Subspace {
        Self::from_matrix(&Matrix::identity(field, ambient))
    }

    /// `{x : x_i = 0 for i in zero_coords}`.
    pub fn coordinate_kernel(field: &FieldRef, ambient: usize, zero_coords: &[usize]) -> Subspace {
        let gens: Vec<Vector> = (0..ambient)
            .filter(|i| !zero_coords.contains(i))
            .map(|i| unit(ambient, i))
            .collect();
        Self::span(field, ambient, &gens).expect("unit vectors")
    }

    pub fn field(&self) -> &FieldRef {
        &self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        same_field(self.field(), other.field())?;
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&p| v[p]).collect();
        (self.basis.apply_row(&coords) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[FieldElement]) -> Vector {
        self.basis.apply_row(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus construction: eliminate
    /// `[[A, A], [B, 0]]`; rows with a zero left half carry `A ∩ B` on
    /// the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient_dim();
        let f = self.field();
        let mut z = Matrix::zeros(f, self.dim() + other.dim(), 2 * n);
        for r in 0..self.dim() {
            for c in 0..n {
                z.set(r, c, self.basis.get(r, c));
                z.set(r, n + c, self.basis.get(r, c));
            }
        }
        for r in 0..other.dim() {
            for c in 0..n {
                z.set(self.dim() + r, c, other.basis.get(r, c));
            }
        }
        let red = z.rref();
        let gens: Vec<Vector> = (0..red.rank)
            .filter(|&r| red.pivots[r] >= n)
            .map(|r| red.matrix.row(r)[n..].to_vec())
            .collect();
        Self::span(f, n, &gens)
    }

    /// Image under the coordinate projection onto `coords` (in that order).
    pub fn project(&self, coords: &[usize]) -> Subspace {
        Self::from_matrix(&self.basis.select_columns(coords))
    }

    /// The annihilator `{y : <x, y> = 0 for all x}` under the standard
    /// bilinear form.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel_basis()
    }

    /// Vectors extending a basis of `sub` to a basis of `self`: the rows of
    /// `self` reduced modulo `sub`, brought to RREF. Their pivots are
    /// ascending and avoid the pivot columns of `sub`.
    pub fn quotient_representatives(&self, sub: &Subspace) -> Result<Vec<Vector>> {
        self.check(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(Error::NotNested);
        }
        let f = self.field();
        let reduced: Vec<Vector> = self
            .basis_vectors()
            .into_iter()
            .map(|v| sub.reduce(&v))
            .collect();
        let m = Matrix::from_rows(f, self.ambient_dim(), &reduced)?;
        let red = m.rref();
        Ok((0..red.rank).map(|r| red.matrix.row(r).to_vec()).collect())
    }

    /// `v` minus its component along this subspace's pivot columns.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    /// A complement `U` of `self` inside `ambient` (`self ⊕ U = ambient`).
    ///
    /// Works in coordinates relative to `ambient`'s RREF basis: those
    /// ambient basis rows sitting at non-pivot coordinate positions of
    /// `self` span the complement.
    pub fn complement_in(&self, ambient: &Subspace) -> Result<Subspace> {
        self.check(ambient)?;
        let f = self.field();
        let coords = self
            .basis_vectors()
            .iter()
            .map(|v| ambient.coordinates(v).ok_or(Error::NotNested))
            .collect::<Result<Vec<_>>>()?;
        let local = Subspace::span(f, ambient.dim(), &coords)?;
        let gens: Vec<Vector> = (0..ambient.dim())
            .filter(|c| !local.pivots.contains(c))
            .map(|c| ambient.basis.row(c).to_vec())
            .collect();
        Self::span(f, self.ambient_dim(), &gens)
    }

    /// Complement inside the whole space F_q^n.
    pub fn complement(&self) -> Subspace {
        self.complement_in(&Subspace::full(self.field(), self.ambient_dim()))
            .expect("every subspace lies in the full space")
    }

    /// Enumerates every vector of the subspace (q^dim of them).
    pub fn elements(&self) -> Vec<Vector> {
        let f = self.field();
        let q = f.order() as u64;
        let total = q.pow(self.dim() as u32);
        (0..total)
            .map(|mut code| {
                let coords: Vector = (0..self.dim())
                    .map(|_| {
                        let d = (code % q) as u32;
                        code /= q;
                        f.elem_unchecked(d)
                    })
                    .collect();
                self.combine(&coords)
            })
            .collect()
    }
}

/// An ordered, linearly independent list of vectors with fast coordinate
/// extraction. Unlike [`Subspace`] the given order and scaling are kept.
#[derive(Clone, Debug)]
pub struct OrderedBasis {
    vectors: Matrix,
    pivots: Vec<usize>,
    // inverse of the square submatrix on the pivot columns
    solve: Matrix,
}

impl OrderedBasis {
    pub fn new(field: &FieldRef, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        let red = m.rref();
        if red.rank != vectors.len() {
            return Err(Error::InternalInconsistency(
                "ordered basis vectors are linearly dependent".into(),
            ));
        }
        let solve = m.select_columns(&red.pivots).inverse()?;
        Ok(OrderedBasis {
            vectors: m,
            pivots: red.pivots,
            solve,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    /// Coordinates `c` with `c · vectors = v`, or `None` outside the span.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        if v.len() != self.vectors.cols() {
            return None;
        }
        let restricted: Vector = self.pivots.iter().map(|&p| v[p]).collect();
        let c = if self.is_empty() { Vec::new() } else { self.solve.apply_row(&restricted) };
        let back = if self.is_empty() {
            vec![FieldElement::ZERO; v.len()]
        } else {
            self.vectors.apply_row(&c)
        };
        (back == v).then_some(c)
    }
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![FieldElement::ZERO; n];
    v[i] = FieldElement::ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn m(f: &FieldRef, cols: usize, rows: &[&[u32]]) -> Matrix {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_u32_rows(f, cols, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let r = m(&f7, 2, &[&[2, 4], &[1, 2]]).rref();
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(Matrix::identity(&f5, 3).rank(), 3);
    }

    #[test]
    fn kernel_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(m(&f7, 5, &[&[1, 1, 1, 1, 1]]).kernel_basis().dim(), 4);
        let inv = m(&f7, 2, &[&[1, 2], &[3, 4]]);
        assert!(inv.kernel_basis().is_zero());
        // kernel vectors really are in the kernel
        let a = m(&f7, 4, &[&[1, 2, 3, 4], &[0, 1, 5, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            let col = Matrix::from_rows(&f7, 1, &v.iter().map(|&e| vec![e]).collect::<Vec<_>>()).unwrap();
            assert!(a.mul(&col).unwrap().row_vectors().iter().all(|r| r[0].is_zero()));
        }
    }

    #[test]
    fn sum_and_intersection() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let a = Subspace::span(&f7, 4, &m(&f7, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).row_vectors()).unwrap();
        let b = Subspace::span(&f7, 4, &m(&f7, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]).row_vectors()).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(&f7, 4));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let c = Subspace::zero(&f7, 3);
        assert_eq!(a.sum(&c), Err(Error::AmbientMismatch(4, 3)));
    }

    #[test]
    fn quotient_representatives_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let a = Subspace::full(&f7, 2);
        assert!(a.quotient_representatives(&a).unwrap().is_empty());
        assert_eq!(a.quotient_representatives(&Subspace::zero(&f7, 2)).unwrap().len(), 2);
        let line = Subspace::span(&f7, 2, &[vec![f7.elem(1).unwrap(); 2]]).unwrap();
        let e0 = Subspace::span(&f7, 2, &[unit(2, 0)]).unwrap();
        assert_eq!(e0.quotient_representatives(&line), Err(Error::NotNested));
    }

    #[test]
    fn complement_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let full = Subspace::full(&f3, 2);
        let line = Subspace::span(&f3, 2, &[vec![FieldElement::ONE; 2]]).unwrap();
        let u = line.complement_in(&full).unwrap();
        assert_eq!(u.basis_vectors(), vec![unit(2, 1)]);
        assert!(full.complement_in(&full).unwrap().is_zero());
        assert_eq!(Subspace::zero(&f3, 2).complement_in(&full).unwrap(), full);
        // not nested
        let e0 = Subspace::span(&f3, 2, &[unit(2, 0)]).unwrap();
        assert_eq!(line.complement_in(&e0), Err(Error::NotNested));
    }

    #[test]
    fn inverse_and_ordered_basis() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let a = m(&f7, 2, &[&[1, 2], &[3, 4]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(&f7, 2));
        assert!(m(&f7, 2, &[&[1, 2], &[2, 4]]).inverse().is_err());
        let b = OrderedBasis::new(&f7, 3, &m(&f7, 3, &[&[2, 1, 0], &[0, 0, 1]]).row_vectors()).unwrap();
        let v = m(&f7, 3, &[&[4, 2, 5]]).row(0).to_vec();
        assert_eq!(b.coordinates(&v).unwrap(), vec![f7.elem(2).unwrap(), f7.elem(5).unwrap()]);
        assert!(b.coordinates(&unit(3, 0)).is_none());
    }

    #[test]
    fn zero_column_matrices() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let z = Matrix::zeros(&f2, 3, 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.transpose().kernel_basis().dim(), 3);
        let s = Subspace::full(&f2, 3).project(&[]);
        assert_eq!((s.dim(), s.ambient_dim()), (0, 0));
    }
}
