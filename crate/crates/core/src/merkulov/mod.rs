//! The transferred A∞-structure on cohomology.
//!
//! Given the splitting `T = B ⊕ H ⊕ L` with homotopy `G`, the recursion
//!
//! ```text
//! λ_2 = concatenation,   Gλ_1 = -id,
//! λ_n = Σ_{t=1}^{n-1} (-1)^{t+1} λ_2 (Gλ_t ⊗ Gλ_{n-t})
//! ```
//!
//! (tensor products applied with Koszul signs) gives `m_n = p λ_n` and the
//! quasi-isomorphism `f_n = -G λ_n`, `f_1` the inclusion of harmonic
//! representatives.

mod model;
mod splitting;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use model::{parse_document, AInftyModel, ClassDocument, Cochain, FEntry, MEntry, ModelClass, ModelDocument, SCHEMA_VERSION};
pub use splitting::{Piece, Splitting};

use crate::cobar::{koszul_sign, CobarComplex, CobarElement};
use crate::cutoffs::Cutoffs;
use crate::error::{Error, Result};
use crate::linear::Field;
use crate::presentation::{AlgebraPresentation, GradedAlgebra, GradedSplitData};

/// A basis class of `H`, globally indexed. Index 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub hom: usize,
    pub adams: usize,
    /// Position in the harmonic basis of its bidegree.
    pub local: usize,
}

type Memo<K> = RwLock<HashMap<Vec<usize>, Option<Arc<CobarElement<K>>>>>;

pub struct Engine<K: Field> {
    presentation: AlgebraPresentation,
    splitting: Splitting<K>,
    classes: Vec<ClassInfo>,
    offsets: HashMap<(usize, usize), usize>,
    memo: Memo<K>,
}

impl<K: Field> Engine<K> {
    pub fn build(field: &K, presentation: &AlgebraPresentation, cutoffs: Cutoffs) -> Result<Self> {
        let algebra = GradedAlgebra::from_presentation(field, presentation, cutoffs.adams);
        let degrees: Vec<usize> = (0..presentation.relations.len()).map(|r| presentation.relation_degree(r)).collect();
        let data = GradedSplitData::new(algebra.clone(), &degrees);
        let cobar = CobarComplex::new(&algebra, cutoffs)?;
        let splitting = Splitting::new(cobar, data)?;

        let mut classes = Vec::new();
        let mut offsets = HashMap::new();
        for n in 0..=cutoffs.hom {
            for s in 0..=cutoffs.adams {
                let dim = splitting.piece(n, s)?.h_dim();
                if dim == 0 {
                    continue;
                }
                offsets.insert((n, s), classes.len());
                let q_labels = if n == 1 { splitting.split_data().q_labels(s) } else { Vec::new() };
                for local in 0..dim {
                    let label = match n {
                        0 => "1".to_string(),
                        1 => format!("{}#", q_labels[local]),
                        _ => format!("e{n}_{s}_{local}"),
                    };
                    classes.push(ClassInfo { label, hom: n, adams: s, local });
                }
            }
        }
        Ok(Engine {
            presentation: presentation.clone(),
            splitting,
            classes,
            offsets,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn splitting(&self) -> &Splitting<K> {
        &self.splitting
    }

    pub fn cobar(&self) -> &CobarComplex<K> {
        self.splitting.cobar()
    }

    pub fn split_data(&self) -> &GradedSplitData<K> {
        self.splitting.split_data()
    }

    pub fn field(&self) -> &K {
        self.splitting.field()
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.cobar().cutoffs()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    /// Global indices of the classes in bidegree `(n, -s)`.
    pub fn classes_in(&self, n: usize, s: usize) -> Vec<usize> {
        match self.offsets.get(&(n, s)) {
            Some(&o) => (o..o + self.splitting.pieces_dim(n, s)).collect(),
            None => Vec::new(),
        }
    }

    /// Looks up a class by label; a bare generator name stands for its dual.
    pub fn find_class(&self, label: &str) -> Result<usize> {
        find_label(self.classes.iter().map(|c| c.label.as_str()), label)
    }

    pub fn representative(&self, c: usize) -> Result<CobarElement<K>> {
        let info = &self.classes[c];
        let k = self.field();
        let dim = self.splitting.pieces_dim(info.hom, info.adams);
        let coords: Vec<K::Elem> = (0..dim).map(|i| if i == info.local { k.one() } else { k.zero() }).collect();
        self.splitting.include(info.hom, info.adams, &coords)
    }

    /// Sparse global coordinates of `p(x)`.
    pub fn project(&self, x: &CobarElement<K>) -> Result<Vec<(usize, K::Elem)>> {
        let local = self.splitting.project(x)?;
        let k = self.field();
        let base = self.offsets.get(&(x.hom, x.adams)).copied().unwrap_or(0);
        Ok(local
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (base + i, c))
            .collect())
    }

    fn degrees(&self, tuple: &[usize]) -> (Vec<i64>, usize) {
        let degs = tuple.iter().map(|&c| self.classes[c].hom as i64).collect();
        let adams = tuple.iter().map(|&c| self.classes[c].adams).sum();
        (degs, adams)
    }

    /// `Gλ_n` on a tuple of classes; `None` when the value lies in a
    /// negative hom degree and so vanishes identically.
    pub fn g_lambda(&self, tuple: &[usize]) -> Result<Option<Arc<CobarElement<K>>>> {
        if tuple.is_empty() {
            return Err(Error::Internal("empty tuple".into()));
        }
        if tuple.len() == 1 {
            return Ok(Some(Arc::new(self.representative(tuple[0])?.neg(self.field()))));
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(tuple) {
            return Ok(v.clone());
        }
        let value = match self.lambda(tuple)? {
            Some(l) => self.splitting.homotopy(&l)?.map(Arc::new),
            None => None,
        };
        self.memo.write().expect("memo lock").insert(tuple.to_vec(), value.clone());
        Ok(value)
    }

    /// `λ_n` for `n ≥ 2`.
    pub fn lambda(&self, tuple: &[usize]) -> Result<Option<CobarElement<K>>> {
        let n = tuple.len();
        if n < 2 {
            return Err(Error::Internal("λ_n needs n ≥ 2".into()));
        }
        let (degs, adams) = self.degrees(tuple);
        let hom = degs.iter().sum::<i64>() + 2 - n as i64;
        if hom < 0 {
            return Ok(None);
        }
        let hom = hom as usize;
        let cobar = self.cobar();
        cobar.basis(hom, adams)?;
        let k = self.field();
        let mut out = cobar.zero(hom, adams);
        for t in 1..n {
            let (Some(a), Some(b)) = (self.g_lambda(&tuple[..t])?, self.g_lambda(&tuple[t..])?) else {
                continue;
            };
            let blocks = [(1 - t as i64, t), (1 - (n - t) as i64, n - t)];
            let parity = (t as i64 + 1) + koszul_sign(&blocks, &degs);
            out.add_scaled(k, &k.sign(parity), &cobar.concat(&a, &b)?);
        }
        Ok(Some(out))
    }

    /// `m_n = pλ_n` computed from the recursion, without unit shortcuts.
    pub fn m_value(&self, tuple: &[usize]) -> Result<Vec<(usize, K::Elem)>> {
        match self.lambda(tuple)? {
            Some(l) => self.project(&l),
            None => Ok(Vec::new()),
        }
    }

    /// `f_n = -Gλ_n` (`f_1` the inclusion), without unit shortcuts.
    pub fn f_value(&self, tuple: &[usize]) -> Result<Option<CobarElement<K>>> {
        if tuple.len() == 1 {
            return self.representative(tuple[0]).map(Some);
        }
        Ok(self.g_lambda(tuple)?.map(|g| g.neg(self.field())))
    }

    /// Whether `m_n` and `f_n` on this tuple are stored in a model table.
    pub fn in_table_domain(&self, tuple: &[usize]) -> bool {
        table_domain(self.cutoffs(), tuple.iter().map(|&c| (self.classes[c].hom, self.classes[c].adams)))
    }

    /// All non-unit tuples of length ≥ 2 inside the table domain, in
    /// lexicographic order.
    pub fn table_tuples(&self) -> Vec<Vec<usize>> {
        let cut = self.cutoffs();
        let items: Vec<(usize, usize, usize)> = self
            .classes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i, c.hom, c.adams))
            .collect();
        enumerate_tuples(&items, cut.adams, cut.hom.saturating_sub(2), 2)
    }

    pub fn build_model(&self) -> Result<AInftyModel<K>> {
        let k = self.field().clone();
        let mut classes = Vec::with_capacity(self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            classes.push(ModelClass {
                label: c.label.clone(),
                hom: c.hom,
                adams: c.adams,
                representative: Cochain::from_element(&k, &self.representative(i)?),
            });
        }
        let mut m = std::collections::BTreeMap::new();
        let mut f = std::collections::BTreeMap::new();
        for tuple in self.table_tuples() {
            m.insert(tuple.clone(), self.m_value(&tuple)?);
            let (degs, adams) = self.degrees(&tuple);
            let hom = (degs.iter().sum::<i64>() + 1 - tuple.len() as i64) as usize;
            let value = match self.f_value(&tuple)? {
                Some(v) => Cochain::from_element(&k, &v),
                None => Cochain { hom, adams, terms: Vec::new() },
            };
            f.insert(tuple, value);
        }
        Ok(AInftyModel {
            field: k,
            presentation: self.presentation.clone(),
            cutoffs: self.cutoffs(),
            classes,
            m,
            f,
        })
    }
}

impl<K: Field> Splitting<K> {
    fn pieces_dim(&self, n: usize, s: usize) -> usize {
        self.piece(n, s).map_or(0, |p| p.h_dim())
    }
}

pub(crate) fn find_label<'a>(labels: impl Iterator<Item = &'a str> + Clone, label: &str) -> Result<usize> {
    let alias = format!("{label}#");
    labels
        .clone()
        .position(|l| l == label)
        .or_else(|| labels.clone().position(|l| l == alias))
        .ok_or_else(|| Error::UnknownClass(label.to_string()))
}

/// Tuples with `Σ adams ≤ S` and `Σ (hom - 1) ≤ N - 2`, units excluded.
pub(crate) fn table_domain(cut: Cutoffs, bidegrees: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut adams = 0;
    let mut excess = 0;
    let mut n = 0;
    for (h, s) in bidegrees {
        if h == 0 {
            return false;
        }
        adams += s;
        excess += h - 1;
        n += 1;
    }
    n >= 2 && adams <= cut.adams && excess + 2 <= cut.hom
}

/// Tuples of `items = (index, hom, adams)` with hom ≥ 1, total Adams degree
/// at most `max_adams`, total `Σ(hom - 1)` at most `max_excess`, length at
/// least `min_len`.
pub(crate) fn enumerate_tuples(items: &[(usize, usize, usize)], max_adams: usize, max_excess: usize, min_len: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[(usize, usize, usize)],
        adams: usize,
        excess: usize,
        min_len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() >= min_len {
            out.push(cur.clone());
        }
        for &(i, h, s) in items {
            if h == 0 || s == 0 || s > adams || h - 1 > excess {
                continue;
            }
            cur.push(i);
            rec(items, adams - s, excess - (h - 1), min_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, max_adams, max_excess, min_len, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests;
