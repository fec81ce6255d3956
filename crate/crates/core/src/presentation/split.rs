use std::collections::BTreeMap;

use super::algebra::GradedAlgebra;
use crate::linear::{complement_indices, echelon_basis, reduce_against, Basis, Field, LinearMap, Matrix};

/// A basis element `q ⊗ a` of `V_s = ⊕_{1≤i≤s} Q_i ⊗ A_{s-i}`: `q` is the
/// `q`-th basis vector of `Q_i`, `a` the `a`-th basis word of `A_{s-i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VIndex {
    pub i: usize,
    pub q: usize,
    pub a: usize,
}

/// Element of `⊕_n Q^{⊗n}`: each key lists `(degree, index in Q_degree)`
/// letters.
pub type QTensor<K> = BTreeMap<Vec<(usize, usize)>, <K as Field>::Elem>;

/// Everything computed for one Adams degree.
#[derive(Clone, Debug)]
pub struct DegreeSplit<K: Field> {
    pub s: usize,
    /// Basis of `V_s`; the `Q_s ⊗ A_0` block comes last.
    pub v_basis: Vec<VIndex>,
    /// `dim V'_s`, where `V'_s = ⊕_{i<s} Q_i ⊗ A_{s-i}` is the leading block.
    pub v_prime_dim: usize,
    /// `offsets[i]` is the position of the `Q_i ⊗ A_{s-i}` block in `V_s`.
    offsets: Vec<usize>,
    /// Multiplication `V_s → A_s` (columns indexed by `v_basis`).
    pub mu: Matrix<K>,
    /// Echelon basis of the decomposables `D_s ⊂ A_s`.
    pub d_basis: Vec<Vec<K::Elem>>,
    pub d_pivots: Vec<usize>,
    /// `Q_s` is spanned by the standard vectors at these positions.
    pub q_indices: Vec<usize>,
    /// Section `ξ_s : A_s → V_s` of `-μ_s`, one column per basis word.
    pub xi: Matrix<K>,
    /// `θ⁺_s` of each basis word.
    pub theta: Vec<QTensor<K>>,
    /// Kernel of `μ` on `V'_s`.
    pub kernel: Vec<Vec<K::Elem>>,
    /// Minimal relations `R_s ⊂ V'_s`.
    pub relations: Vec<Vec<K::Elem>>,
}

impl<K: Field> DegreeSplit<K> {
    pub fn q_dim(&self) -> usize {
        self.q_indices.len()
    }

    pub fn v_dim(&self) -> usize {
        self.v_basis.len()
    }

    /// Position of `q ⊗ a` (with `q ∈ Q_i`) in `V_s`.
    pub fn v_position(&self, i: usize, q: usize, a: usize, dim_a: usize) -> usize {
        self.offsets[i] + q * dim_a + a
    }
}

/// Per-degree split data for `A_1, ..., A_S`.
#[derive(Clone, Debug)]
pub struct GradedSplitData<K: Field> {
    algebra: GradedAlgebra<K>,
    degrees: Vec<DegreeSplit<K>>,
    declared: Vec<usize>,
}

/// Declared relation count versus the minimal count in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub degree: usize,
    pub declared: usize,
    pub minimal: usize,
}

impl<K: Field> GradedSplitData<K> {
    /// `declared_relation_degrees` lists the Adams degree of every relation
    /// in the input presentation.
    pub fn new(algebra: GradedAlgebra<K>, declared_relation_degrees: &[usize]) -> Self {
        let top = algebra.max_degree();
        let mut declared = vec![0; top + 1];
        for &d in declared_relation_degrees {
            if d <= top {
                declared[d] += 1;
            }
        }
        let mut data = GradedSplitData {
            algebra,
            degrees: Vec::with_capacity(top + 1),
            declared,
        };
        for s in 0..=top {
            let d = data.build_degree(s);
            data.degrees.push(d);
        }
        data
    }

    pub fn algebra(&self) -> &GradedAlgebra<K> {
        &self.algebra
    }

    pub fn field(&self) -> &K {
        self.algebra.field()
    }

    pub fn max_degree(&self) -> usize {
        self.algebra.max_degree()
    }

    pub fn degree(&self, s: usize) -> &DegreeSplit<K> {
        &self.degrees[s]
    }

    /// Standard-vector indices in `A_s` spanning `Q_s`.
    pub fn q_indices(&self, s: usize) -> &[usize] {
        &self.degrees[s].q_indices
    }

    /// Labels for `Q_s`: the normal-form words.
    pub fn q_labels(&self, s: usize) -> Vec<String> {
        let words = self.algebra.basis_words(s);
        self.q_indices(s).iter().map(|&i| self.algebra.word_label(&words[i])).collect()
    }

    /// `μ_s` on `V_s = ⊕_{1≤i≤s} Q_i ⊗ A_{s-i}` as a labelled map.
    pub fn multiplication_mu(&self, s: usize) -> LinearMap<K> {
        let d = &self.degrees[s];
        LinearMap::new(self.v_basis_labels(s), Basis::new(self.algebra.basis_labels(s)).unwrap(), d.mu.clone())
    }

    fn v_basis_labels(&self, s: usize) -> Basis {
        let d = &self.degrees[s];
        let labels = d
            .v_basis
            .iter()
            .map(|v| {
                let q = self.q_labels(v.i)[v.q].clone();
                let a = self.algebra.word_label(&self.algebra.basis_words(s - v.i)[v.a]);
                format!("{q}|{a}")
            })
            .collect();
        Basis::new(labels).unwrap()
    }

    /// `(Q_s, D_s)` as coordinate vectors in `A_s`.
    pub fn split_indecomposables(&self, s: usize) -> (Vec<Vec<K::Elem>>, Vec<Vec<K::Elem>>) {
        let d = &self.degrees[s];
        let k = self.field();
        let dim = self.algebra.dim(s);
        (d.q_indices.iter().map(|&i| k.unit_vector(dim, i)).collect(), d.d_basis.clone())
    }

    /// `ξ_s : A_s → V_s` as a labelled map.
    pub fn section_xi(&self, s: usize) -> LinearMap<K> {
        LinearMap::new(
            Basis::new(self.algebra.basis_labels(s)).unwrap(),
            self.v_basis_labels(s),
            self.degrees[s].xi.clone(),
        )
    }

    /// `θ⁺_s` of the basis word `a` of `A_s`.
    pub fn theta(&self, s: usize, a: usize) -> &QTensor<K> {
        &self.degrees[s].theta[a]
    }

    /// Words in the `Q` letters of total degree `s`, each letter a pair
    /// `(degree, index in Q_degree)`, in lexicographic order.
    pub fn q_words(&self, s: usize) -> Vec<Vec<(usize, usize)>> {
        if s == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..=s {
            for q in 0..self.degrees[i].q_dim() {
                for mut rest in self.q_words(s - i) {
                    rest.insert(0, (i, q));
                    out.push(rest);
                }
            }
        }
        out
    }

    /// `θ⁺_s` as a labelled map `A_s → ⊕_n (Q^{⊗n})_s`.
    pub fn iterated_theta(&self, s: usize) -> LinearMap<K> {
        let k = self.field();
        let words = self.q_words(s);
        let index: BTreeMap<&Vec<(usize, usize)>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = Matrix::zero(k, words.len(), self.algebra.dim(s));
        for a in 0..self.algebra.dim(s) {
            for (w, c) in self.theta(s, a) {
                m.set(index[w], a, c.clone());
            }
        }
        let labels = words.iter().map(|w| self.q_word_label(w)).collect();
        LinearMap::new(Basis::new(self.algebra.basis_labels(s)).unwrap(), Basis::new(labels).unwrap(), m)
    }

    pub fn q_word_label(&self, w: &[(usize, usize)]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&(i, q)| self.q_labels(i)[q].clone()).collect::<Vec<_>>().join("|")
    }

    /// Minimal relations `R_s ⊂ V'_s`.
    pub fn minimal_relations(&self, s: usize) -> &[Vec<K::Elem>] {
        &self.degrees[s].relations
    }

    /// Degrees where the declared relation count differs from the minimal one.
    pub fn relation_discrepancies(&self) -> Vec<RelationReport> {
        (1..=self.max_degree())
            .filter_map(|s| {
                let minimal = self.degrees[s].relations.len();
                let declared = self.declared[s];
                (declared != minimal).then_some(RelationReport {
                    degree: s,
                    declared,
                    minimal,
                })
            })
            .collect()
    }

    /// The composite `R_s → V'_s → ⊕_n (Q^{⊗n})_s`, `q ⊗ a ↦ q ⊗ θ⁺(a)`.
    pub fn relation_tensor(&self, s: usize, r: &[K::Elem]) -> QTensor<K> {
        let k = self.field();
        let d = &self.degrees[s];
        let mut out: QTensor<K> = BTreeMap::new();
        for (pos, c) in r.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let v = d.v_basis[pos];
            for (w, tc) in self.theta(s - v.i, v.a) {
                let mut key = vec![(v.i, v.q)];
                key.extend_from_slice(w);
                let e = out.entry(key).or_insert_with(|| k.zero());
                *e = k.add(e, &k.mul(c, tc));
            }
        }
        out.retain(|_, c| !k.is_zero(c));
        out
    }

    fn build_degree(&self, s: usize) -> DegreeSplit<K> {
        let k = self.field().clone();
        let alg = &self.algebra;
        let dim = alg.dim(s);
        if s == 0 {
            let mut theta = BTreeMap::new();
            theta.insert(Vec::new(), k.one());
            return DegreeSplit {
                s,
                v_basis: Vec::new(),
                v_prime_dim: 0,
                offsets: vec![0],
                mu: Matrix::zero(&k, dim, 0),
                d_basis: Vec::new(),
                d_pivots: Vec::new(),
                q_indices: Vec::new(),
                xi: Matrix::zero(&k, 0, dim),
                theta: vec![theta],
                kernel: Vec::new(),
                relations: Vec::new(),
            };
        }

        // V'_s and multiplication on it.
        let mut v_basis = Vec::new();
        let mut offsets = vec![0; s + 1];
        for i in 1..s {
            offsets[i] = v_basis.len();
            for q in 0..self.degrees[i].q_dim() {
                for a in 0..alg.dim(s - i) {
                    v_basis.push(VIndex { i, q, a });
                }
            }
        }
        let v_prime_dim = v_basis.len();
        let mut mu_cols: Vec<Vec<K::Elem>> = Vec::with_capacity(v_prime_dim);
        for v in &v_basis {
            let qi = self.degrees[v.i].q_indices[v.q];
            let mut col = k.zeros(dim);
            for (t, c) in alg.product(v.i, qi, s - v.i, v.a) {
                col[*t] = c.clone();
            }
            mu_cols.push(col);
        }
        let mu_prime = Matrix::from_columns(&k, &mu_cols, dim);

        // D_s = image, Q_s = standard complement.
        let d_basis = mu_prime.image_basis();
        let (_, d_pivots) = echelon_basis(&k, d_basis.clone(), dim);
        let q_indices = complement_indices(&k, &d_basis, dim).expect("echelon rows are independent");

        offsets[s] = v_prime_dim;
        for q in 0..q_indices.len() {
            v_basis.push(VIndex { i: s, q, a: 0 });
        }
        let mut mu = Matrix::zero(&k, dim, v_basis.len());
        for (j, col) in mu_cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                mu.set(i, j, c.clone());
            }
        }
        for (q, &qi) in q_indices.iter().enumerate() {
            mu.set(qi, v_prime_dim + q, k.one());
        }

        // ξ_s. Solve μ' v = d with v supported on pivot columns of μ'.
        let red = mu_prime.row_reduce();
        let rank = red.pivots.len();
        let mut xi = Matrix::zero(&k, v_basis.len(), dim);
        for e in 0..dim {
            // Split e_e into D and Q parts using the echelon basis of D.
            let mut d_part = k.zeros(dim);
            if let Some(r) = d_pivots.iter().position(|&p| p == e) {
                d_part = d_basis[r].clone();
            }
            let mut q_part = k.unit_vector(dim, e);
            for (x, y) in q_part.iter_mut().zip(&d_part) {
                *x = k.sub(x, y);
            }
            let td = red.transform.mul_vec(&d_part);
            for (row, &pc) in red.pivots.iter().enumerate().take(rank) {
                xi.set(pc, e, k.neg(&td[row]));
            }
            for (q, &qi) in q_indices.iter().enumerate() {
                if !k.is_zero(&q_part[qi]) {
                    xi.set(v_prime_dim + q, e, k.neg(&q_part[qi]));
                }
            }
        }

        // θ⁺_s(a) = π_Q(a) + Σ_{v ∈ V'} ξ(a)_v · q_v ⊗ θ⁺(a_v).
        let mut theta = Vec::with_capacity(dim);
        for e in 0..dim {
            let mut t: QTensor<K> = BTreeMap::new();
            for (pos, v) in v_basis.iter().enumerate() {
                let c = xi.get(pos, e);
                if k.is_zero(c) {
                    continue;
                }
                if v.i == s {
                    let entry = t.entry(vec![(s, v.q)]).or_insert_with(|| k.zero());
                    *entry = k.sub(entry, c);
                } else {
                    for (w, tc) in &self.degrees[s - v.i].theta[v.a] {
                        let mut key = vec![(v.i, v.q)];
                        key.extend_from_slice(w);
                        let entry = t.entry(key).or_insert_with(|| k.zero());
                        *entry = k.add(entry, &k.mul(c, tc));
                    }
                }
            }
            t.retain(|_, c| !k.is_zero(c));
            theta.push(t);
        }

        // Relations: K_s = ker μ'; (K·m)_s spanned by k·a for k ∈ K_t, t < s;
        // R_s is a complement of (K·m)_s in K_s.
        let kernel = mu_prime.kernel_basis();
        let mut km: Vec<Vec<K::Elem>> = Vec::new();
        for t in 1..s {
            for kv in &self.degrees[t].kernel {
                for a in 0..alg.dim(s - t) {
                    let mut out = k.zeros(v_prime_dim);
                    for (pos, c) in kv.iter().enumerate() {
                        if k.is_zero(c) {
                            continue;
                        }
                        let v = self.degrees[t].v_basis[pos];
                        for (b, pc) in alg.product(t - v.i, v.a, s - t, a) {
                            let target = offsets[v.i] + v.q * alg.dim(s - v.i) + b;
                            out[target] = k.add(&out[target], &k.mul(c, pc));
                        }
                    }
                    if !k.is_zero_vec(&out) {
                        km.push(out);
                    }
                }
            }
        }
        let (mut ech, mut piv) = echelon_basis(&k, km, v_prime_dim);
        let mut relations = Vec::new();
        for kv in &kernel {
            let mut r = kv.clone();
            reduce_against(&k, &mut r, &ech, &piv);
            if k.is_zero_vec(&r) {
                continue;
            }
            relations.push(r.clone());
            ech.push(r);
            let (e2, p2) = echelon_basis(&k, ech, v_prime_dim);
            ech = e2;
            piv = p2;
        }

        DegreeSplit {
            s,
            v_basis,
            v_prime_dim,
            offsets,
            mu,
            d_basis,
            d_pivots,
            q_indices,
            xi,
            theta,
            kernel,
            relations,
        }
    }
}
