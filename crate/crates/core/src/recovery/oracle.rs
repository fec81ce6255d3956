//! `Ext_A(k, k)` from a minimal free resolution of `k`.
//!
//! The algebra is rebuilt here from scratch as `F/I` in free-word
//! coordinates, with no normal forms, sections or cobar words, so the
//! resulting dimensions are an independent check on the cobar side.

use std::collections::HashMap;

use crate::linear::{echelon_basis, reduce_against, Field, Matrix};
use crate::presentation::AlgebraPresentation;

/// `dims[n][s] = dim Ext^n_{-s}` for `n ≤ max_hom`, `s ≤ max_adams`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub dims: Vec<Vec<usize>>,
}

impl ExtTable {
    pub fn dim(&self, n: usize, s: usize) -> usize {
        self.dims.get(n).and_then(|r| r.get(s)).copied().unwrap_or(0)
    }
}

struct Quotient<K: Field> {
    k: K,
    gen_degrees: Vec<usize>,
    /// Free words of each degree and their indices.
    words: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// Echelon basis of `I_s` with pivots.
    ideal: Vec<(Vec<Vec<K::Elem>>, Vec<usize>)>,
    /// Free-word indices of the non-pivot words, a basis of `A_s`.
    basis: Vec<Vec<usize>>,
}

impl<K: Field> Quotient<K> {
    fn new(k: &K, p: &AlgebraPresentation, top: usize) -> Self {
        let gen_degrees: Vec<usize> = p.generators.iter().map(|g| g.degree).collect();
        let mut words: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        for s in 1..=top {
            let mut ws = Vec::new();
            for (g, &d) in gen_degrees.iter().enumerate() {
                if d <= s {
                    for w in &words[s - d] {
                        let mut v = vec![g];
                        v.extend_from_slice(w);
                        ws.push(v);
                    }
                }
            }
            ws.sort();
            words.push(ws);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> =
            words.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect();
        let relations: Vec<(usize, Vec<(Vec<usize>, K::Elem)>)> = p
            .relations
            .iter()
            .filter_map(|r| {
                let d = r.adams_degree(&p.generators)?;
                Some((d, r.terms().map(|(w, c)| (w.clone(), k.from_i64(*c))).collect()))
            })
            .collect();

        let mut ideal: Vec<(Vec<Vec<K::Elem>>, Vec<usize>)> = Vec::with_capacity(top + 1);
        for s in 0..=top {
            let dim = words[s].len();
            let mut span = Vec::new();
            for (g, &d) in gen_degrees.iter().enumerate() {
                if d <= s {
                    for row in &ideal[s - d].0 {
                        let mut v = k.zeros(dim);
                        for (i, c) in row.iter().enumerate() {
                            if !k.is_zero(c) {
                                let mut w = vec![g];
                                w.extend_from_slice(&words[s - d][i]);
                                v[index[s][&w]] = c.clone();
                            }
                        }
                        span.push(v);
                    }
                }
            }
            for (d, terms) in &relations {
                if *d == 0 || *d > s {
                    continue;
                }
                for tail in &words[s - d] {
                    let mut v = k.zeros(dim);
                    for (w, c) in terms {
                        let mut full = w.clone();
                        full.extend_from_slice(tail);
                        let i = index[s][&full];
                        v[i] = k.add(&v[i], c);
                    }
                    span.push(v);
                }
            }
            ideal.push(echelon_basis(k, span, dim));
        }
        let basis = ideal
            .iter()
            .zip(&words)
            .map(|((_, pivots), ws)| (0..ws.len()).filter(|i| !pivots.contains(i)).collect())
            .collect();
        Quotient {
            k: k.clone(),
            gen_degrees,
            words,
            index,
            ideal,
            basis,
        }
    }

    fn dim(&self, s: usize) -> usize {
        self.basis[s].len()
    }

    /// `x · g` for `x ∈ A_t`.
    fn right_gen(&self, t: usize, x: &[K::Elem], g: usize) -> Vec<K::Elem> {
        let k = &self.k;
        let u = t + self.gen_degrees[g];
        let mut v = k.zeros(self.words[u].len());
        for (c, &wi) in x.iter().zip(&self.basis[t]) {
            if !k.is_zero(c) {
                let mut w = self.words[t][wi].clone();
                w.push(g);
                let i = self.index[u][&w];
                v[i] = k.add(&v[i], c);
            }
        }
        let (rows, pivots) = &self.ideal[u];
        reduce_against(k, &mut v, rows, pivots);
        self.basis[u].iter().map(|&i| v[i].clone()).collect()
    }
}

/// A free right module with generators in the given degrees.
struct Free<'a, K: Field> {
    a: &'a Quotient<K>,
    gens: Vec<usize>,
}

impl<K: Field> Free<'_, K> {
    fn blocks(&self, s: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for (j, &d) in self.gens.iter().enumerate() {
            if d <= s {
                let n = self.a.dim(s - d);
                out.push((j, off, n));
                off += n;
            }
        }
        out
    }

    fn dim(&self, s: usize) -> usize {
        self.blocks(s).iter().map(|b| b.2).sum()
    }

    fn right_gen(&self, t: usize, x: &[K::Elem], g: usize) -> Vec<K::Elem> {
        let u = t + self.a.gen_degrees[g];
        let mut out = self.a.k.zeros(self.dim(u));
        let src: HashMap<usize, (usize, usize)> = self.blocks(t).into_iter().map(|(j, o, n)| (j, (o, n))).collect();
        for (j, off, _) in self.blocks(u) {
            if let Some(&(o, n)) = src.get(&j) {
                let y = self.a.right_gen(t - self.gens[j], &x[o..o + n], g);
                out[off..off + y.len()].clone_from_slice(&y);
            }
        }
        out
    }

    fn right_word(&self, t: usize, x: &[K::Elem], word: &[usize]) -> Vec<K::Elem> {
        let mut cur = x.to_vec();
        let mut deg = t;
        for &g in word {
            cur = self.right_gen(deg, &cur, g);
            deg += self.a.gen_degrees[g];
        }
        cur
    }
}

/// Dimensions of `Ext^n_{-s}` from a minimal resolution built degree by
/// degree.
pub fn ext_oracle<K: Field>(k: &K, p: &AlgebraPresentation, max_hom: usize, max_adams: usize) -> ExtTable {
    let a = Quotient::new(k, p, max_adams);
    let mut dims = vec![vec![0; max_adams + 1]; max_hom + 1];
    dims[0][0] = 1;
    // P_n generators with their images in P_{n-1}; P_0 = A with ε.
    let mut current = Free { a: &a, gens: vec![0] };
    let mut images: Vec<Vec<K::Elem>> = Vec::new();
    let mut previous: Option<Free<K>> = None;
    for n in 0..max_hom {
        let mut kernels: Vec<Vec<Vec<K::Elem>>> = Vec::with_capacity(max_adams + 1);
        let mut next_gens = Vec::new();
        let mut next_images = Vec::new();
        for s in 0..=max_adams {
            let dim = current.dim(s);
            let kernel = match &previous {
                None if s == 0 => Vec::new(),
                None => (0..dim).map(|i| k.unit_vector(dim, i)).collect(),
                Some(prev) => {
                    let mut columns = Vec::with_capacity(dim);
                    for (j, _, n_b) in current.blocks(s) {
                        let d = current.gens[j];
                        for b in 0..n_b {
                            let word = &a.words[s - d][a.basis[s - d][b]];
                            columns.push(prev.right_word(d, &images[j], word));
                        }
                    }
                    Matrix::from_columns(k, &columns, prev.dim(s)).kernel_basis()
                }
            };
            let mut decomposable = Vec::new();
            for (g, &d) in a.gen_degrees.iter().enumerate() {
                if d <= s {
                    for v in &kernels[s - d] {
                        decomposable.push(current.right_gen(s - d, v, g));
                    }
                }
            }
            let (mut rows, mut pivots) = echelon_basis(k, decomposable, dim);
            for v in &kernel {
                let mut r = v.clone();
                reduce_against(k, &mut r, &rows, &pivots);
                if let Some(p) = r.iter().position(|c| !k.is_zero(c)) {
                    let inv = k.inv(&r[p]);
                    let r = k.scale(&inv, &r);
                    for row in rows.iter_mut() {
                        if !k.is_zero(&row[p]) {
                            let c = k.neg(&row[p]);
                            k.axpy(row, &c, &r);
                        }
                    }
                    rows.push(r);
                    pivots.push(p);
                    next_gens.push(s);
                    next_images.push(v.clone());
                    dims[n + 1][s] += 1;
                }
            }
            kernels.push(kernel);
        }
        previous = Some(current);
        current = Free { a: &a, gens: next_gens };
        images = next_images;
    }
    ExtTable { dims }
}
