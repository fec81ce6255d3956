//! The cobar complex `T(S⁻¹m#)`: tensor words in the duals of the positive
//! pieces of `A`, with differential `∂` and concatenation product.
//!
//! `T^n_{-s}` has a basis of words `[φ_1|…|φ_n]` where `φ_j` runs over the
//! dual basis of `A_{i_j}`, `i_j ≥ 1`, `Σ i_j = s`. Words are ordered by the
//! composition `(i_1, …, i_n)` lexicographically, then by the factor indices
//! with the last factor varying fastest.
//!
//! The bar differential on `m^{⊗n}` is
//! `d[a_1|…|a_n] = Σ_{i≥2} (-1)^{i-1} [a_1|…|a_{i-1}a_i|…|a_n]`, and the cobar
//! differential is `∂ = -dᵀ` in every hom degree. With this choice `∂` is a
//! derivation for concatenation and `∂` on `T^1` is the transposed
//! multiplication.

mod koszul;

use std::collections::HashMap;

pub use koszul::{koszul_apply, koszul_sign, GradedMap};

use crate::cutoffs::Cutoffs;
use crate::error::Result;
use crate::linear::{Basis, Field, LinearMap, Matrix};
use crate::presentation::GradedAlgebra;

/// Basis of `T^n_{-s}` (equivalently of `m^{⊗n}` in Adams degree `s`).
#[derive(Clone, Debug)]
pub struct WordBasis {
    compositions: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
    dims_of: Vec<usize>,
    dim: usize,
}

impl WordBasis {
    fn new(n: usize, s: usize, piece_dims: &[usize]) -> Self {
        let mut compositions = Vec::new();
        fn rec(n: usize, s: usize, dims: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                if s == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for i in 1..=s {
                if dims.get(i).copied().unwrap_or(0) == 0 {
                    continue;
                }
                cur.push(i);
                rec(n - 1, s - i, dims, cur, out);
                cur.pop();
            }
        }
        rec(n, s, piece_dims, &mut Vec::new(), &mut compositions);
        let mut offsets = Vec::with_capacity(compositions.len());
        let mut dim = 0;
        for c in &compositions {
            offsets.push(dim);
            dim += c.iter().map(|&i| piece_dims[i]).product::<usize>();
        }
        let lookup = compositions.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        WordBasis {
            compositions,
            offsets,
            lookup,
            dims_of: piece_dims.to_vec(),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn compositions(&self) -> &[Vec<usize>] {
        &self.compositions
    }

    fn block_size(&self, comp: &[usize]) -> usize {
        comp.iter().map(|&i| self.dims_of[i]).product()
    }

    /// Index of the word with the given composition and factor indices.
    pub fn index_of(&self, comp: &[usize], idx: &[usize]) -> Option<usize> {
        let c = *self.lookup.get(comp)?;
        let mut r = 0;
        for (&i, &x) in comp.iter().zip(idx) {
            r = r * self.dims_of[i] + x;
        }
        Some(self.offsets[c] + r)
    }

    /// Composition and factor indices of a word.
    pub fn word(&self, index: usize) -> (&[usize], Vec<usize>) {
        let c = self.offsets.partition_point(|&o| o <= index) - 1;
        let comp = &self.compositions[c];
        let mut r = index - self.offsets[c];
        let mut idx = vec![0; comp.len()];
        for (slot, &i) in idx.iter_mut().zip(comp).rev() {
            *slot = r % self.dims_of[i];
            r /= self.dims_of[i];
        }
        (comp, idx)
    }
}

/// A bihomogeneous element of the cobar complex, dense in `T^n_{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobarElement<K: Field> {
    pub hom: usize,
    pub adams: usize,
    pub coords: Vec<K::Elem>,
}

impl<K: Field> CobarElement<K> {
    pub fn is_zero(&self, k: &K) -> bool {
        k.is_zero_vec(&self.coords)
    }

    pub fn scale(&self, k: &K, c: &K::Elem) -> Self {
        CobarElement {
            coords: k.scale(c, &self.coords),
            ..self.clone()
        }
    }

    pub fn add_assign(&mut self, k: &K, other: &Self) {
        assert_eq!((self.hom, self.adams), (other.hom, other.adams), "bidegree mismatch");
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !k.is_zero(b) {
                *a = k.add(a, b);
            }
        }
    }

    pub fn add_scaled(&mut self, k: &K, c: &K::Elem, other: &Self) {
        assert_eq!((self.hom, self.adams), (other.hom, other.adams), "bidegree mismatch");
        k.axpy(&mut self.coords, c, &other.coords);
    }

    pub fn neg(&self, k: &K) -> Self {
        self.scale(k, &k.neg(&k.one()))
    }
}

/// Cached truncation of the cobar complex: bases for `n ≤ N + 1`, `s ≤ S`,
/// differentials `∂^n` for `n ≤ N`.
#[derive(Clone, Debug)]
pub struct CobarComplex<K: Field> {
    field: K,
    algebra: GradedAlgebra<K>,
    cutoffs: Cutoffs,
    bases: Vec<Vec<WordBasis>>,
    differentials: Vec<Vec<Matrix<K>>>,
}

impl<K: Field> CobarComplex<K> {
    pub fn new(algebra: &GradedAlgebra<K>, cutoffs: Cutoffs) -> Result<Self> {
        if algebra.max_degree() < cutoffs.adams {
            return Err(crate::Error::Cutoffs(format!(
                "algebra computed through degree {}, cutoff is {}",
                algebra.max_degree(),
                cutoffs.adams
            )));
        }
        let dims: Vec<usize> = (0..=cutoffs.adams).map(|s| algebra.dim(s)).collect();
        let bases = (0..=cutoffs.hom + 1)
            .map(|n| (0..=cutoffs.adams).map(|s| WordBasis::new(n, s, &dims)).collect())
            .collect();
        let mut c = CobarComplex {
            field: algebra.field().clone(),
            algebra: algebra.clone(),
            cutoffs,
            bases,
            differentials: Vec::new(),
        };
        c.differentials = (0..=cutoffs.hom)
            .map(|n| (0..=cutoffs.adams).map(|s| c.build_differential(n, s)).collect())
            .collect();
        Ok(c)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn algebra(&self) -> &GradedAlgebra<K> {
        &self.algebra
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.cutoffs
    }

    fn check(&self, n: usize, s: usize) -> Result<()> {
        if n > self.cutoffs.hom + 1 || s > self.cutoffs.adams {
            return Err(self.cutoffs.truncation(n, s));
        }
        Ok(())
    }

    pub fn basis(&self, n: usize, s: usize) -> Result<&WordBasis> {
        self.check(n, s)?;
        Ok(&self.bases[n][s])
    }

    pub fn dim(&self, n: usize, s: usize) -> usize {
        self.bases.get(n).and_then(|b| b.get(s)).map_or(0, |b| b.dim())
    }

    pub fn zero(&self, n: usize, s: usize) -> CobarElement<K> {
        CobarElement {
            hom: n,
            adams: s,
            coords: self.field.zeros(self.dim(n, s)),
        }
    }

    pub fn unit(&self) -> CobarElement<K> {
        CobarElement {
            hom: 0,
            adams: 0,
            coords: vec![self.field.one()],
        }
    }

    pub fn basis_element(&self, n: usize, s: usize, i: usize) -> CobarElement<K> {
        CobarElement {
            hom: n,
            adams: s,
            coords: self.field.unit_vector(self.dim(n, s), i),
        }
    }

    /// Label such as `[x1#|x1*x2#]`.
    pub fn word_label(&self, n: usize, s: usize, index: usize) -> String {
        let (comp, idx) = self.bases[n][s].word(index);
        let parts: Vec<String> = comp
            .iter()
            .zip(&idx)
            .map(|(&i, &x)| format!("{}#", self.algebra.word_label(&self.algebra.basis_words(i)[x])))
            .collect();
        format!("[{}]", parts.join("|"))
    }

    /// Nonzero terms of an element as `(label, coefficient)`.
    pub fn terms(&self, x: &CobarElement<K>) -> Vec<(String, K::Elem)> {
        x.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (self.word_label(x.hom, x.adams, i), c.clone()))
            .collect()
    }

    pub fn format(&self, x: &CobarElement<K>) -> String {
        let terms = self.terms(x);
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(l, c)| {
                if self.field.is_one(c) {
                    l.clone()
                } else {
                    format!("{}*{l}", self.field.format(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Bar differential `d : m^{⊗(n)} → m^{⊗(n-1)}` in Adams degree `s`.
    pub fn bar_differential(&self, n: usize, s: usize) -> Result<LinearMap<K>> {
        self.check(n, s)?;
        let k = &self.field;
        let src = &self.bases[n][s];
        let tgt_dim = if n == 0 { 0 } else { self.dim(n - 1, s) };
        let mut m = Matrix::zero(k, tgt_dim, src.dim());
        if n >= 2 {
            for w in 0..src.dim() {
                for (t, c) in self.bar_terms(n, s, w) {
                    m.set(t, w, k.add(m.get(t, w), &c));
                }
            }
        }
        let labels = |n: usize| -> Basis {
            let b = Basis::new((0..self.dim(n, s)).map(|i| self.word_label(n, s, i).replace('#', "")).collect());
            b.expect("word labels are distinct")
        };
        let target = if n == 0 { Basis::new(Vec::new()).unwrap() } else { labels(n - 1) };
        Ok(LinearMap::new(labels(n), target, m))
    }

    /// Terms of `d` applied to word `w` of `m^{⊗n}_s`.
    fn bar_terms(&self, n: usize, s: usize, w: usize) -> Vec<(usize, K::Elem)> {
        let k = &self.field;
        let (comp, idx) = self.bases[n][s].word(w);
        let tgt = &self.bases[n - 1][s];
        let mut out = Vec::new();
        for j in 0..n - 1 {
            let sign = k.sign(j as i64 + 1);
            let prod = self.algebra.product(comp[j], idx[j], comp[j + 1], idx[j + 1]);
            if prod.is_empty() {
                continue;
            }
            let mut new_comp = comp[..j].to_vec();
            new_comp.push(comp[j] + comp[j + 1]);
            new_comp.extend_from_slice(&comp[j + 2..]);
            let mut new_idx = idx[..j].to_vec();
            new_idx.push(0);
            new_idx.extend_from_slice(&idx[j + 2..]);
            for (t, c) in prod {
                new_idx[j] = *t;
                let target = tgt.index_of(&new_comp, &new_idx).expect("merged word exists");
                out.push((target, k.mul(&sign, c)));
            }
        }
        out
    }

    /// `∂^n : T^n_{-s} → T^{n+1}_{-s}`, the negated transpose of `d`.
    fn build_differential(&self, n: usize, s: usize) -> Matrix<K> {
        let k = &self.field;
        let rows = self.dim(n + 1, s);
        let mut m = Matrix::zero(k, rows, self.dim(n, s));
        for w in 0..rows {
            for (t, c) in self.bar_terms(n + 1, s, w) {
                m.set(w, t, k.sub(m.get(w, t), &c));
            }
        }
        m
    }

    /// Matrix of `∂^n` on `T^n_{-s}`, available for `n ≤ N`.
    pub fn differential_matrix(&self, n: usize, s: usize) -> Result<&Matrix<K>> {
        if n > self.cutoffs.hom || s > self.cutoffs.adams {
            return Err(self.cutoffs.truncation(n + 1, s));
        }
        Ok(&self.differentials[n][s])
    }

    /// `∂^n` as a labelled map.
    pub fn cobar_differential(&self, n: usize, s: usize) -> Result<LinearMap<K>> {
        let m = self.differential_matrix(n, s)?.clone();
        let labels = |n: usize| Basis::new((0..self.dim(n, s)).map(|i| self.word_label(n, s, i)).collect()).unwrap();
        Ok(LinearMap::new(labels(n), labels(n + 1), m))
    }

    pub fn differential(&self, x: &CobarElement<K>) -> Result<CobarElement<K>> {
        let m = self.differential_matrix(x.hom, x.adams)?;
        Ok(CobarElement {
            hom: x.hom + 1,
            adams: x.adams,
            coords: m.mul_vec(&x.coords),
        })
    }

    /// Concatenation product `λ_2`.
    pub fn concat(&self, u: &CobarElement<K>, v: &CobarElement<K>) -> Result<CobarElement<K>> {
        let (n, s) = (u.hom + v.hom, u.adams + v.adams);
        self.check(n, s)?;
        let k = &self.field;
        let mut out = self.zero(n, s);
        let bu = &self.bases[u.hom][u.adams];
        let bv = &self.bases[v.hom][v.adams];
        let bt = &self.bases[n][s];
        let nz_v: Vec<(usize, &K::Elem)> = v.coords.iter().enumerate().filter(|(_, c)| !k.is_zero(c)).collect();
        if nz_v.is_empty() {
            return Ok(out);
        }
        let mut block_cache: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (i, cu) in u.coords.iter().enumerate() {
            if k.is_zero(cu) {
                continue;
            }
            let cu_block = bu.offsets.partition_point(|&o| o <= i) - 1;
            let ru = i - bu.offsets[cu_block];
            for &(j, cv) in &nz_v {
                let cv_block = bv.offsets.partition_point(|&o| o <= j) - 1;
                let rv = j - bv.offsets[cv_block];
                let (offset, size_v) = *block_cache.entry((cu_block, cv_block)).or_insert_with(|| {
                    let mut comp = bu.compositions[cu_block].clone();
                    comp.extend_from_slice(&bv.compositions[cv_block]);
                    let c = bt.lookup[&comp];
                    (bt.offsets[c], bv.block_size(&bv.compositions[cv_block]))
                });
                let t = offset + ru * size_v + rv;
                out.coords[t] = k.add(&out.coords[t], &k.mul(cu, cv));
            }
        }
        Ok(out)
    }

    /// `Σ_n (-1)^n dim H^n_{-s}`-style ranks: `dim ker ∂^n - dim im ∂^{n-1}`.
    pub fn cohomology_dim(&self, n: usize, s: usize) -> Result<usize> {
        let dn = self.differential_matrix(n, s)?;
        let ker = self.dim(n, s) - dn.rank();
        let im = if n == 0 { 0 } else { self.differential_matrix(n - 1, s)?.rank() };
        Ok(ker - im)
    }
}
