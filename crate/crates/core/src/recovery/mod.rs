//! Recovering `A` from the higher products on `E¹`.
//!
//! For each `n`, `m_n` restricted to `(E¹)^{⊗n}_{-s} → E²_{-s}` is dual to
//! the length-`n` part of the composite `R_s → ⊕ Q_i ⊗ A_{s-i} → ⊕ Q^{⊗n}`,
//! `q ⊗ a ↦ q ⊗ θ⁺(a)`, up to the sign `σ_n = (-1)^{n(n+1)/2 + 1}`.
//! Dualizing the assembled restrictions gives back a relation space that
//! presents `A`.

mod oracle;

use std::collections::BTreeMap;

pub use oracle::{ext_oracle, ExtTable};

use crate::cutoffs::Cutoffs;
use crate::error::{Error, Result};
use crate::linear::{Basis, Field, LinearMap, Matrix};
use crate::merkulov::{AInftyModel, Engine};
use crate::presentation::{AlgebraPresentation, Generator, GradedAlgebra, GradedSplitData, NcPolynomial};

/// `(-1)^{n(n+1)/2 + 1}`, the sign relating `m_n` on `E¹` to the dual of
/// the iterated section.
pub fn sigma_sign(n: usize) -> i64 {
    (n * (n + 1) / 2 + 1) as i64
}

/// `E¹` classes of a model in index order.
fn e1_classes<K: Field>(model: &AInftyModel<K>) -> Vec<usize> {
    (1..model.classes.len()).filter(|&c| model.classes[c].hom == 1).collect()
}

/// Tuples of `E¹` classes of length `n` and total Adams degree `s`.
fn e1_tuples<K: Field>(model: &AInftyModel<K>, n: usize, s: usize) -> Vec<Vec<usize>> {
    let e1 = e1_classes(model);
    let mut out = Vec::new();
    fn rec<K: Field>(m: &AInftyModel<K>, e1: &[usize], n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if s == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &c in e1 {
            let a = m.classes[c].adams;
            if a <= s {
                cur.push(c);
                rec(m, e1, n - 1, s - a, cur, out);
                cur.pop();
            }
        }
    }
    rec(model, &e1, n, s, &mut Vec::new(), &mut out);
    out
}

fn tuple_label<K: Field>(model: &AInftyModel<K>, t: &[usize]) -> String {
    t.iter().map(|&c| model.class_label(c)).collect::<Vec<_>>().join("⊗")
}

/// The matrix of `m_n : (E¹)^{⊗n}_{-s} → E²_{-s}`.
pub fn restrict_m_to_e1<K: Field>(model: &AInftyModel<K>, n: usize, s: usize) -> Result<LinearMap<K>> {
    let k = &model.field;
    let tuples = e1_tuples(model, n, s);
    let targets = model.classes_in(2, s);
    let mut m = Matrix::zero(k, targets.len(), tuples.len());
    for (col, t) in tuples.iter().enumerate() {
        for (c, x) in model.m(t)? {
            let row = targets
                .iter()
                .position(|&r| r == c)
                .ok_or_else(|| Error::Internal(format!("m_{n} on E¹ left E²_-{s}")))?;
            m.set(row, col, x);
        }
    }
    let source = Basis::new(tuples.iter().map(|t| tuple_label(model, t)).collect())?;
    let target = Basis::new(targets.iter().map(|&c| model.class_label(c).to_string()).collect())?;
    Ok(LinearMap::new(source, target, m))
}

/// `σ_n (i^n_s)#` built from the presentation alone: row `j` lists the
/// coefficients of the length-`n` words in `i(r_j)` for the minimal
/// relations `r_j` of degree `s`, columns ordered like
/// [`restrict_m_to_e1`].
pub fn relation_dual_map<K: Field>(data: &GradedSplitData<K>, model: &AInftyModel<K>, n: usize, s: usize) -> Result<LinearMap<K>> {
    let k = data.field();
    let tuples = e1_tuples(model, n, s);
    let relations = data.minimal_relations(s);
    let sign = k.sign(sigma_sign(n));
    // The local index of an `E¹` class within its bidegree is its `Q` index.
    let letter = |c: usize| -> Result<(usize, usize)> {
        let adams = model.classes[c].adams;
        let q = model
            .classes_in(1, adams)
            .iter()
            .position(|&x| x == c)
            .ok_or_else(|| Error::Internal(format!("{} is not an E¹ class", model.classes[c].label)))?;
        Ok((adams, q))
    };
    let words: Vec<Vec<(usize, usize)>> = tuples.iter().map(|t| t.iter().map(|&c| letter(c)).collect()).collect::<Result<_>>()?;
    let mut m = Matrix::zero(k, relations.len(), tuples.len());
    for (row, r) in relations.iter().enumerate() {
        let tensor = data.relation_tensor(s, r);
        for (col, w) in words.iter().enumerate() {
            if let Some(c) = tensor.get(w) {
                m.set(row, col, k.mul(&sign, c));
            }
        }
    }
    let source = Basis::new(tuples.iter().map(|t| tuple_label(model, t)).collect())?;
    let target = Basis::new((0..relations.len()).map(|j| format!("r{s}_{j}#")).collect())?;
    Ok(LinearMap::new(source, target, m))
}

/// A presentation read back from a model.
#[derive(Clone, Debug)]
pub struct RecoveredPresentation<K: Field> {
    pub field: K,
    /// Generator `i` is dual to the `E¹` class with label `name#`.
    pub generators: Vec<Generator>,
    /// Relations with their Adams degrees, over generator indices.
    pub relations: Vec<(usize, NcPolynomial<K::Elem>)>,
}

impl<K: Field> RecoveredPresentation<K> {
    pub fn to_text(&self) -> String {
        let k = &self.field;
        let mut out = format!("field = {}\n", k.characteristic());
        if !self.generators.is_empty() {
            let g: Vec<String> = self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
            out.push_str(&format!("gen {}\n", g.join(", ")));
        }
        for (_, r) in &self.relations {
            let text = r.display_with(|c| k.format(c), |i| self.generators[i].name.as_str());
            out.push_str(&format!("rel {text}\n"));
        }
        out
    }

    pub fn algebra(&self, max_degree: usize) -> GradedAlgebra<K> {
        let rels: Vec<NcPolynomial<K::Elem>> = self.relations.iter().map(|(_, r)| r.clone()).collect();
        GradedAlgebra::new(&self.field, self.generators.clone(), &rels, max_degree)
    }
}

/// Relations of degree `s` recovered by dualizing `⊕_n m_n|_{(E¹)^{⊗n}}`.
/// A word of length `n` with coefficient `c` in that map contributes
/// `(-1)^n σ_n c` to the relation polynomial.
pub fn recover_relations<K: Field>(model: &AInftyModel<K>, s: usize) -> Result<Vec<NcPolynomial<K::Elem>>> {
    let k = &model.field;
    let e1 = e1_classes(model);
    let gen_of: BTreeMap<usize, usize> = e1.iter().enumerate().map(|(g, &c)| (c, g)).collect();
    let rows = model.classes_in(2, s).len();
    let mut terms: Vec<Vec<(Vec<usize>, K::Elem)>> = vec![Vec::new(); rows];
    for n in 2..=s {
        let map = restrict_m_to_e1(model, n, s)?;
        let tuples = e1_tuples(model, n, s);
        let sign = k.sign(n as i64 + sigma_sign(n));
        for (row, acc) in terms.iter_mut().enumerate() {
            for (col, t) in tuples.iter().enumerate() {
                let c = map.matrix.get(row, col);
                if !k.is_zero(c) {
                    acc.push((t.iter().map(|c| gen_of[c]).collect(), k.mul(&sign, c)));
                }
            }
        }
    }
    Ok(terms.into_iter().map(|t| NcPolynomial::collect_in(k, t)).collect())
}

pub fn recover_presentation<K: Field>(model: &AInftyModel<K>) -> Result<RecoveredPresentation<K>> {
    let generators = e1_classes(model)
        .into_iter()
        .map(|c| Generator {
            name: model.classes[c].label.trim_end_matches('#').to_string(),
            degree: model.classes[c].adams,
        })
        .collect();
    let mut relations = Vec::new();
    for s in 2..=model.cutoffs.adams {
        for r in recover_relations(model, s)? {
            relations.push((s, r));
        }
    }
    Ok(RecoveredPresentation {
        field: model.field.clone(),
        generators,
        relations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub original_dims: Vec<usize>,
    pub recovered_dims: Vec<usize>,
    /// Every recovered relation vanishes in the original algebra.
    pub recovered_in_original: bool,
    /// Every original relation vanishes in the recovered algebra.
    pub original_in_recovered: bool,
    /// Recovered relations in degree `s` number `dim E²_{-s}` and are
    /// independent.
    pub relation_counts_match: bool,
    pub first_failing_degree: Option<usize>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.first_failing_degree.is_none() && self.recovered_in_original && self.original_in_recovered && self.relation_counts_match
    }
}

pub fn roundtrip_check<K: Field>(field: &K, presentation: &AlgebraPresentation, cutoffs: Cutoffs) -> Result<RoundTripReport> {
    let engine = Engine::build(field, presentation, cutoffs)?;
    let model = engine.build_model()?;
    roundtrip_model(&model, engine.split_data().algebra())
}

/// Round trip for an already built model against the algebra it came from.
pub fn roundtrip_model<K: Field>(model: &AInftyModel<K>, original: &GradedAlgebra<K>) -> Result<RoundTripReport> {
    let k = &model.field;
    let top = model.cutoffs.adams;
    let recovered = recover_presentation(model)?;
    let rebuilt = recovered.algebra(top);
    let original_dims: Vec<usize> = (0..=top).map(|s| original.dim(s)).collect();
    let recovered_dims: Vec<usize> = (0..=top).map(|s| rebuilt.dim(s)).collect();
    let first_failing_degree = (0..=top).find(|&s| original_dims[s] != recovered_dims[s]);

    // Recovered generators follow the order of the E¹ classes; match them
    // to the original ones by name.
    let gens = original.generators();
    let to_original: Vec<usize> = recovered
        .generators
        .iter()
        .map(|g| {
            gens.iter()
                .position(|o| o.name == g.name)
                .ok_or_else(|| Error::Internal(format!("recovered generator {} has no original", g.name)))
        })
        .collect::<Result<_>>()?;
    let rename = |r: &NcPolynomial<K::Elem>, map: &dyn Fn(usize) -> usize| {
        NcPolynomial::collect_in(k, r.terms().map(|(w, c)| (w.iter().map(|&g| map(g)).collect(), c.clone())))
    };
    let recovered_in_original = recovered
        .relations
        .iter()
        .all(|(s, r)| k.is_zero_vec(&original.reduce_polynomial(*s, &rename(r, &|g| to_original[g]))));
    let to_recovered = |g: usize| to_original.iter().position(|&o| o == g);
    let original_in_recovered = model.presentation.relations.iter().all(|r| {
        let s = r.adams_degree(gens).unwrap_or(0);
        if s > top {
            return true;
        }
        let poly = r.map(|c| k.from_i64(*c));
        if poly.terms().any(|(w, _)| w.iter().any(|&g| to_recovered(g).is_none())) {
            return false;
        }
        let poly = rename(&poly, &|g| to_recovered(g).unwrap_or(0));
        k.is_zero_vec(&rebuilt.reduce_polynomial(s, &poly))
    });

    let mut relation_counts_match = true;
    for s in 2..=top {
        let rels: Vec<&NcPolynomial<K::Elem>> = recovered.relations.iter().filter(|(d, _)| *d == s).map(|(_, r)| r).collect();
        if rels.len() != model.classes_in(2, s).len() {
            relation_counts_match = false;
        }
        let mut words: Vec<&Vec<usize>> = rels.iter().flat_map(|r| r.terms().map(|(w, _)| w)).collect();
        words.sort();
        words.dedup();
        let rows: Vec<Vec<K::Elem>> = rels
            .iter()
            .map(|r| {
                let t: BTreeMap<&Vec<usize>, &K::Elem> = r.terms().collect();
                words.iter().map(|w| t.get(w).map_or_else(|| k.zero(), |c| (*c).clone())).collect()
            })
            .collect();
        if Matrix::from_rows(k, rows, words.len()).rank() != rels.len() {
            relation_counts_match = false;
        }
    }
    Ok(RoundTripReport {
        original_dims,
        recovered_dims,
        recovered_in_original,
        original_in_recovered,
        relation_counts_match,
        first_failing_degree,
    })
}
