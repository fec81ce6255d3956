use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Output of Gauss-Jordan elimination: `transform * m = echelon`.
#[derive(Clone, Debug)]
pub struct RowReduction<K: Field> {
    pub echelon: Matrix<K>,
    pub pivots: Vec<usize>,
    pub transform: Matrix<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            data: field.zeros(rows * cols),
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: &K, rows: Vec<Vec<K::Elem>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    /// Builds from column vectors; `rows` is needed when `columns` is empty.
    pub fn from_columns(field: &K, columns: &[Vec<K::Elem>], rows: usize) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows, cols)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<K::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let k = &self.field;
        let mut out = Self::zero(k, self.rows, other.cols);
        for i in 0..self.rows {
            let acc = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for l in 0..self.cols {
                let a = self.get(i, l);
                if !k.is_zero(a) {
                    k.axpy(acc, a, other.row(l));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| self.field.dot(self.row(i), x)).collect()
    }

    /// `x^T * self`, i.e. the transpose applied to `x`.
    pub fn transpose_mul_vec(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.rows, x.len(), "dimension mismatch in transposed product");
        let mut out = self.field.zeros(self.cols);
        for (i, c) in x.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        Matrix {
            data: self.data.iter().map(|v| k.neg(v)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_vec(&self.data)
    }

    /// Reduced row-echelon form with the transform that produces it.
    pub fn row_reduce(&self) -> RowReduction<K> {
        let (rows, pivots, transform) = eliminate(&self.field, self.row_vecs(), self.cols, true);
        RowReduction {
            echelon: Matrix::from_rows(&self.field, rows, self.cols),
            pivots,
            transform: Matrix::from_rows(&self.field, transform.unwrap(), self.rows),
        }
    }

    /// Reduced row-echelon form without the transform.
    pub fn echelon(&self) -> (Matrix<K>, Vec<usize>) {
        let (rows, pivots, _) = eliminate(&self.field, self.row_vecs(), self.cols, false);
        (Matrix::from_rows(&self.field, rows, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.field, self.row_vecs(), self.cols)
    }

    /// Kernel basis, one vector per free column in increasing order; the
    /// vector for free column `f` has a 1 at `f` and 0 at the other free
    /// columns.
    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        let k = &self.field;
        let (e, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = k.zeros(self.cols);
                v[f] = k.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(e.get(r, f));
                }
                v
            })
            .collect()
    }

    /// Image basis in the target: the nonzero rows of the reduced transpose.
    pub fn image_basis(&self) -> Vec<Vec<K::Elem>> {
        let (rows, pivots, _) = eliminate(&self.field, self.transpose().row_vecs(), self.rows, false);
        rows.into_iter().take(pivots.len()).collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let red = self.row_reduce();
        (red.pivots.len() == self.rows).then_some(red.transform)
    }
}

/// Gauss-Jordan elimination on a list of rows. Returns the reduced rows
/// (pivot rows first, then zero rows), the pivot columns and, on request,
/// the transform rows. Row updates only touch the nonzero entries of the
/// pivot row, which keeps sparse inputs cheap.
pub(crate) fn eliminate<K: Field>(
    k: &K,
    mut a: Vec<Vec<K::Elem>>,
    cols: usize,
    track: bool,
) -> (Vec<Vec<K::Elem>>, Vec<usize>, Option<Vec<Vec<K::Elem>>>) {
    let n = a.len();
    let mut t: Option<Vec<Vec<K::Elem>>> = track.then(|| (0..n).map(|i| k.unit_vector(n, i)).collect());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !k.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        if let Some(t) = t.as_mut() {
            t.swap(r, p);
        }
        let inv = k.inv(&a[r][c]);
        if !k.is_one(&inv) {
            for v in a[r].iter_mut() {
                if !k.is_zero(v) {
                    *v = k.mul(v, &inv);
                }
            }
            if let Some(t) = t.as_mut() {
                for v in t[r].iter_mut() {
                    if !k.is_zero(v) {
                        *v = k.mul(v, &inv);
                    }
                }
            }
        }
        let nz: Vec<usize> = (c..cols).filter(|&j| !k.is_zero(&a[r][j])).collect();
        let pivot_row: Vec<K::Elem> = nz.iter().map(|&j| a[r][j].clone()).collect();
        let (tnz, trow): (Vec<usize>, Vec<K::Elem>) = match t.as_ref() {
            Some(t) => (0..n)
                .filter(|&j| !k.is_zero(&t[r][j]))
                .map(|j| (j, t[r][j].clone()))
                .unzip(),
            None => (Vec::new(), Vec::new()),
        };
        for i in 0..n {
            if i == r || k.is_zero(&a[i][c]) {
                continue;
            }
            let f = a[i][c].clone();
            for (&j, v) in nz.iter().zip(&pivot_row) {
                a[i][j] = k.sub(&a[i][j], &k.mul(&f, v));
            }
            if let Some(t) = t.as_mut() {
                for (&j, v) in tnz.iter().zip(&trow) {
                    t[i][j] = k.sub(&t[i][j], &k.mul(&f, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, t)
}

pub(crate) fn rank_of_rows<K: Field>(k: &K, rows: Vec<Vec<K::Elem>>, cols: usize) -> usize {
    eliminate(k, rows, cols, false).1.len()
}

/// Reduced row-echelon basis of the span of `vectors` (nonzero rows only).
pub fn echelon_basis<K: Field>(k: &K, vectors: Vec<Vec<K::Elem>>, dim: usize) -> (Vec<Vec<K::Elem>>, Vec<usize>) {
    let (mut rows, pivots, _) = eliminate(k, vectors, dim, false);
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// Indices `i` such that the standard vectors `e_i` complete the
/// independent family `sub` to a basis of the ambient space.
pub fn complement_indices<K: Field>(k: &K, sub: &[Vec<K::Elem>], dim: usize) -> Result<Vec<usize>> {
    let (_, pivots) = echelon_basis(k, sub.to_vec(), dim);
    if pivots.len() != sub.len() {
        return Err(Error::DependentFamily {
            given: sub.len(),
            rank: pivots.len(),
        });
    }
    let mut is_pivot = vec![false; dim];
    for p in pivots {
        is_pivot[p] = true;
    }
    Ok((0..dim).filter(|&i| !is_pivot[i]).collect())
}

/// Standard-vector complement of an independent family.
pub fn canonical_complement<K: Field>(k: &K, sub: &[Vec<K::Elem>], dim: usize) -> Result<Vec<Vec<K::Elem>>> {
    Ok(complement_indices(k, sub, dim)?
        .into_iter()
        .map(|i| k.unit_vector(dim, i))
        .collect())
}

/// Reduces `v` against an echelon basis (pivot rows with identity on the
/// pivot columns). The result vanishes on every pivot column.
pub fn reduce_against<K: Field>(k: &K, v: &mut [K::Elem], echelon: &[Vec<K::Elem>], pivots: &[usize]) {
    for (row, &p) in echelon.iter().zip(pivots) {
        if !k.is_zero(&v[p]) {
            let c = k.neg(&v[p]);
            k.axpy(v, &c, row);
        }
    }
}
