use std::collections::HashMap;

use super::{word_text, AlgebraPresentation, Generator, NcPolynomial};
use crate::linear::{echelon_basis, Field};

/// Sparse vector as `(index, nonzero coefficient)` pairs, sorted by index.
pub type SparseVec<K> = Vec<(usize, <K as Field>::Elem)>;

/// Degree-`s` piece of the algebra.
#[derive(Clone, Debug)]
struct Piece<K: Field> {
    /// Normal-form words spanning `A_s`, in basis order.
    words: Vec<Vec<usize>>,
    /// Basis word `i` is generator `split[i].0` times basis word
    /// `split[i].1` of degree `s - |g|`.
    split: Vec<(usize, usize)>,
    /// Normal form of `g * b` for every generator `g` and basis word `b`
    /// of degree `s - |g|`.
    pair_nf: HashMap<(usize, usize), SparseVec<K>>,
}

/// The graded pieces `A_0, ..., A_S` of `k⟨X⟩/(R)` with multiplication
/// tables between them.
///
/// `A_s` is computed as the quotient of `⊕_g g ⊗ A_{s-|g|}` by the span of
/// the relation multiples `r · b`, which is the degree-`s` part of the exact
/// sequence `R ⊗ A → X ⊗ A → A → k`. Columns are ordered by descending
/// lexicographic order of the words `g·b`, so pivots fall on leading words
/// and the basis consists of the remaining normal-form words.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<K: Field> {
    field: K,
    generators: Vec<Generator>,
    relations: Vec<(usize, Vec<(Vec<usize>, K::Elem)>)>,
    pieces: Vec<Piece<K>>,
    /// `mult[i][j][a][b]` is the normal form of basis word `a` of degree `i`
    /// times basis word `b` of degree `j`.
    mult: Vec<Vec<Vec<Vec<SparseVec<K>>>>>,
}

impl<K: Field> GradedAlgebra<K> {
    pub fn from_presentation(field: &K, p: &AlgebraPresentation, max_degree: usize) -> Self {
        let rels = p
            .relations
            .iter()
            .map(|r| r.map(|&c| field.from_i64(c)))
            .collect::<Vec<_>>();
        Self::new(field, p.generators.clone(), &rels, max_degree)
    }

    pub fn new(field: &K, generators: Vec<Generator>, relations: &[NcPolynomial<K::Elem>], max_degree: usize) -> Self {
        let relations = relations
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let d = r.adams_degree(&generators).unwrap_or(0);
                (d, r.terms().map(|(w, c)| (w.clone(), c.clone())).collect())
            })
            .collect();
        let mut alg = GradedAlgebra {
            field: field.clone(),
            generators,
            relations,
            pieces: Vec::new(),
            mult: Vec::new(),
        };
        alg.pieces.push(Piece {
            words: vec![Vec::new()],
            split: vec![(usize::MAX, usize::MAX)],
            pair_nf: HashMap::new(),
        });
        alg.mult.push(vec![vec![vec![vec![(0, field.one())]]]]);
        for s in 1..=max_degree {
            let piece = alg.build_piece(s);
            alg.pieces.push(piece);
            alg.extend_mult(s);
        }
        alg
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn dim(&self, s: usize) -> usize {
        self.pieces.get(s).map_or(0, |p| p.words.len())
    }

    /// Normal-form words spanning `A_s`, in basis order.
    pub fn basis_words(&self, s: usize) -> &[Vec<usize>] {
        &self.pieces[s].words
    }

    pub fn word_label(&self, word: &[usize]) -> String {
        word_text(word, |g| self.generators[g].name.as_str())
    }

    /// Labels of the basis of `A_s`.
    pub fn basis_labels(&self, s: usize) -> Vec<String> {
        self.basis_words(s).iter().map(|w| self.word_label(w)).collect()
    }

    pub fn word_degree(&self, word: &[usize]) -> usize {
        word.iter().map(|&g| self.generators[g].degree).sum()
    }

    /// Normal form of basis word `a ∈ A_i` times basis word `b ∈ A_j`.
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> &SparseVec<K> {
        &self.mult[i][j][a][b]
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, i: usize, x: &[K::Elem], j: usize, y: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.field;
        let mut out = k.zeros(self.dim(i + j));
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !k.is_zero(v)) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !k.is_zero(v)) {
                let c = k.mul(xa, yb);
                for (t, v) in self.product(i, a, j, b) {
                    out[*t] = k.add(&out[*t], &k.mul(&c, v));
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary word of degree at most `S`.
    pub fn reduce_word(&self, word: &[usize]) -> SparseVec<K> {
        let k = &self.field;
        let mut v: SparseVec<K> = vec![(0, k.one())];
        let mut d = 0;
        for &g in word.iter().rev() {
            v = self.left_multiply(g, d, &v);
            d += self.generators[g].degree;
        }
        v
    }

    /// Normal form of a polynomial, as a dense vector in `A_s`.
    pub fn reduce_polynomial(&self, s: usize, poly: &NcPolynomial<K::Elem>) -> Vec<K::Elem> {
        let k = &self.field;
        let mut out = k.zeros(self.dim(s));
        for (w, c) in poly.terms() {
            debug_assert_eq!(self.word_degree(w), s);
            for (t, v) in self.reduce_word(w) {
                out[t] = k.add(&out[t], &k.mul(c, &v));
            }
        }
        out
    }

    /// `g · v` for `v ∈ A_d`, as a sparse vector in `A_{d+|g|}`.
    fn left_multiply(&self, g: usize, d: usize, v: &SparseVec<K>) -> SparseVec<K> {
        let k = &self.field;
        let target = d + self.generators[g].degree;
        let mut acc = k.zeros(self.dim(target));
        if let Some(piece) = self.pieces.get(target) {
            for (b, c) in v {
                for (t, x) in &piece.pair_nf[&(g, *b)] {
                    acc[*t] = k.add(&acc[*t], &k.mul(c, x));
                }
            }
        }
        to_sparse(k, &acc)
    }

    fn build_piece(&self, s: usize) -> Piece<K> {
        let k = &self.field;
        // Candidate columns g·b.
        let mut cols: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (g, gen) in self.generators.iter().enumerate() {
            if gen.degree > s {
                continue;
            }
            for (b, w) in self.pieces[s - gen.degree].words.iter().enumerate() {
                let mut word = vec![g];
                word.extend_from_slice(w);
                cols.push((word, g, b));
            }
        }
        cols.sort_by(|x, y| y.0.cmp(&x.0));
        let col_of: HashMap<(usize, usize), usize> = cols.iter().enumerate().map(|(i, c)| ((c.1, c.2), i)).collect();

        // Relation multiples r·b'.
        let mut rows = Vec::new();
        for (t, terms) in &self.relations {
            if *t > s {
                continue;
            }
            for b in 0..self.dim(s - t) {
                let mut row = k.zeros(cols.len());
                for (w, c) in terms {
                    let g = w[0];
                    let head = self.reduce_word(&w[1..]);
                    let rest_deg = t - self.generators[g].degree;
                    for (h, hc) in &head {
                        for (x, xc) in self.product(rest_deg, *h, s - t, b) {
                            let col = col_of[&(g, *x)];
                            row[col] = k.add(&row[col], &k.mul(c, &k.mul(hc, xc)));
                        }
                    }
                }
                if !k.is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        let (ech, pivots) = echelon_basis(k, rows, cols.len());
        let mut is_pivot = vec![false; cols.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis_pos = vec![usize::MAX; cols.len()];
        let mut words = Vec::new();
        let mut split = Vec::new();
        for (c, (w, g, b)) in cols.iter().enumerate() {
            if !is_pivot[c] {
                basis_pos[c] = words.len();
                words.push(w.clone());
                split.push((*g, *b));
            }
        }
        let mut pivot_row = vec![usize::MAX; cols.len()];
        for (r, &p) in pivots.iter().enumerate() {
            pivot_row[p] = r;
        }
        let mut pair_nf = HashMap::new();
        for (c, (_, g, b)) in cols.iter().enumerate() {
            let nf = if is_pivot[c] {
                let row = &ech[pivot_row[c]];
                (0..cols.len())
                    .filter(|&j| !is_pivot[j] && !k.is_zero(&row[j]))
                    .map(|j| (basis_pos[j], k.neg(&row[j])))
                    .collect::<Vec<_>>()
            } else {
                vec![(basis_pos[c], k.one())]
            };
            let mut nf = nf;
            nf.sort_by_key(|e| e.0);
            pair_nf.insert((*g, *b), nf);
        }
        Piece { words, split, pair_nf }
    }

    /// Fills `mult[i][j]` for all `i + j = s`.
    fn extend_mult(&mut self, s: usize) {
        for i in 0..s {
            debug_assert_eq!(self.mult[i].len(), s - i);
        }
        let mut new_rows: Vec<Vec<Vec<SparseVec<K>>>> = Vec::with_capacity(s + 1);
        for i in 0..=s {
            let j = s - i;
            let mut table = Vec::with_capacity(self.dim(i));
            for a in 0..self.dim(i) {
                let mut row = Vec::with_capacity(self.dim(j));
                for b in 0..self.dim(j) {
                    let v = if i == 0 {
                        vec![(b, self.field.one())]
                    } else if j == 0 {
                        vec![(a, self.field.one())]
                    } else {
                        let (g, a1) = self.pieces[i].split[a];
                        let d1 = i - self.generators[g].degree;
                        let inner = self.mult[d1][j][a1][b].clone();
                        self.left_multiply(g, d1 + j, &inner)
                    };
                    row.push(v);
                }
                table.push(row);
            }
            new_rows.push(table);
        }
        for (i, table) in new_rows.into_iter().enumerate() {
            if i == s {
                self.mult.push(vec![table]);
            } else {
                self.mult[i].push(table);
            }
        }
    }
}

pub(crate) fn to_sparse<K: Field>(k: &K, v: &[K::Elem]) -> SparseVec<K> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !k.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{Matrix, PrimeField, Rationals};
    use crate::presentation::parse_presentation;

    fn build<K: Field>(k: &K, text: &str, s: usize) -> GradedAlgebra<K> {
        GradedAlgebra::from_presentation(k, &parse_presentation(text).unwrap(), s)
    }

    /// Degree-`s` part of the two-sided ideal, spanned by all `u·r·v`.
    fn ideal_dim_bruteforce<K: Field>(k: &K, p: &AlgebraPresentation, s: usize) -> (usize, usize) {
        fn words(gens: &[Generator], s: usize) -> Vec<Vec<usize>> {
            if s == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for (g, gen) in gens.iter().enumerate() {
                if gen.degree <= s {
                    for mut w in words(gens, s - gen.degree) {
                        w.insert(0, g);
                        out.push(w);
                    }
                }
            }
            out
        }
        let all = words(&p.generators, s);
        let index: HashMap<Vec<usize>, usize> = all.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::new();
        for (ri, r) in p.relations.iter().enumerate() {
            let t = p.relation_degree(ri);
            if t > s {
                continue;
            }
            for du in 0..=s - t {
                for u in words(&p.generators, du) {
                    for v in words(&p.generators, s - t - du) {
                        let mut row = k.zeros(all.len());
                        for (w, c) in r.terms() {
                            let full: Vec<usize> = u.iter().chain(w).chain(&v).copied().collect();
                            row[index[&full]] = k.add(&row[index[&full]], &k.from_i64(*c));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let rank = Matrix::from_rows(k, rows, all.len()).rank();
        (all.len(), rank)
    }

    #[test]
    fn truncated_polynomial_ring() {
        let a = build(&Rationals, "field = 0; gen x:1; rel x^3", 5);
        assert_eq!((0..=5).map(|s| a.dim(s)).collect::<Vec<_>>(), vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(a.basis_labels(2), vec!["x^2"]);
        assert_eq!(a.product(1, 0, 1, 0), &vec![(0, Rationals.one())]);
        assert!(a.product(1, 0, 2, 0).is_empty());
    }

    #[test]
    fn two_generator_commuting_example() {
        let a = build(&Rationals, "field = 0; gen x2:2, x3:3; rel x2*x3 - x3*x2; rel x3^2 - x2^3", 15);
        assert_eq!(a.dim(0), 1);
        assert_eq!(a.dim(1), 0);
        for s in 2..=15 {
            assert_eq!(a.dim(s), 1, "degree {s}");
        }
        // x2·x3 and x3·x2 both reduce to the basis element of A_5.
        assert_eq!(a.product(2, 0, 3, 0), &vec![(0, Rationals.one())]);
        assert_eq!(a.product(3, 0, 2, 0), &vec![(0, Rationals.one())]);
        assert_eq!(a.basis_labels(5), vec!["x2*x3"]);
    }

    #[test]
    fn free_algebra_counts_words() {
        let a = build(&PrimeField::new(2).unwrap(), "field = 2; gen x1:1, x2:1", 6);
        for s in 0..=6 {
            assert_eq!(a.dim(s), 1 << s);
        }
    }

    #[test]
    fn quotient_dims_match_bruteforce_ideal() {
        let cases = [
            "field = 2; gen x1:1, x2:2; rel x1^2; rel x1*x2*x1 + x2^2",
            "field = 0; gen x1:1, x2:1; rel x2*x1*x1 + x1*x1*x2",
            "field = 3; gen a:1, b:1, c:1; rel a*b - b*a; rel a*c + c*a; rel b*c - 2*c*b",
            "field = 0; gen x:1, y:2; rel x*y - y*x - x^3; rel y^2",
        ];
        for text in cases {
            let p = parse_presentation(text).unwrap();
            p.field.dispatch(Check(&p));
        }
        struct Check<'a>(&'a AlgebraPresentation);
        impl crate::presentation::FieldVisitor for Check<'_> {
            type Output = ();
            fn visit<K: Field>(self, k: K) {
                let a = GradedAlgebra::from_presentation(&k, self.0, 6);
                for s in 0..=6 {
                    let (free, ideal) = ideal_dim_bruteforce(&k, self.0, s);
                    assert_eq!(a.dim(s) + ideal, free, "degree {s} of {:?}", self.0.to_text());
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let a = build(&PrimeField::new(2).unwrap(), "field = 2; gen x1:1, x2:2; rel x1^2; rel x1*x2*x1 + x2^2", 8);
        let k = a.field().clone();
        for i in 1..=3 {
            for j in 1..=3 {
                for l in 1..=2 {
                    for x in 0..a.dim(i) {
                        for y in 0..a.dim(j) {
                            for z in 0..a.dim(l) {
                                let ex = k.unit_vector(a.dim(i), x);
                                let ey = k.unit_vector(a.dim(j), y);
                                let ez = k.unit_vector(a.dim(l), z);
                                let left = a.multiply(i + j, &a.multiply(i, &ex, j, &ey), l, &ez);
                                let right = a.multiply(i, &ex, j + l, &a.multiply(j, &ey, l, &ez));
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}
