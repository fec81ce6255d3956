use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{find_label, table_domain};
use crate::cobar::{CobarComplex, CobarElement};
use crate::cutoffs::Cutoffs;
use crate::error::{Error, Result};
use crate::linear::Field;
use crate::presentation::AlgebraPresentation;

pub const SCHEMA_VERSION: u64 = 1;

/// A sparse cobar element: `(word index, coefficient)` pairs in `T^hom_{-adams}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<K: Field> {
    pub hom: usize,
    pub adams: usize,
    pub terms: Vec<(usize, K::Elem)>,
}

impl<K: Field> Cochain<K> {
    pub fn from_element(k: &K, x: &CobarElement<K>) -> Self {
        Cochain {
            hom: x.hom,
            adams: x.adams,
            terms: x
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !k.is_zero(c))
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_element(&self, cobar: &CobarComplex<K>) -> Result<CobarElement<K>> {
        let mut x = cobar.zero(self.hom, self.adams);
        cobar.basis(self.hom, self.adams)?;
        for (i, c) in &self.terms {
            let slot = x
                .coords
                .get_mut(*i)
                .ok_or_else(|| Error::CorruptModel(format!("word index {i} out of range in T^{}_-{}", self.hom, self.adams)))?;
            *slot = c.clone();
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelClass<K: Field> {
    pub label: String,
    pub hom: usize,
    pub adams: usize,
    pub representative: Cochain<K>,
}

/// The minimal A∞-model `(H, m_2, m_3, ...)` with the quasi-isomorphism
/// `f` into the cobar complex, tabulated on basis tuples.
///
/// Tables cover non-unit tuples of length `n ≥ 2` with `Σ adams ≤ S` and
/// `Σ (hom - 1) ≤ N - 2`. Unit-containing tuples follow the strict-unit
/// rules and are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInftyModel<K: Field> {
    pub field: K,
    pub presentation: AlgebraPresentation,
    pub cutoffs: Cutoffs,
    /// Index 0 is the unit.
    pub classes: Vec<ModelClass<K>>,
    /// `m_n(tuple)` as sparse class coordinates.
    pub m: BTreeMap<Vec<usize>, Vec<(usize, K::Elem)>>,
    pub f: BTreeMap<Vec<usize>, Cochain<K>>,
}

impl<K: Field> AInftyModel<K> {
    pub fn find_class(&self, label: &str) -> Result<usize> {
        find_label(self.classes.iter().map(|c| c.label.as_str()), label)
    }

    pub fn class_label(&self, c: usize) -> &str {
        &self.classes[c].label
    }

    /// Classes in bidegree `(hom, -adams)`.
    pub fn classes_in(&self, hom: usize, adams: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].hom == hom && self.classes[c].adams == adams)
            .collect()
    }

    pub fn is_unit(&self, c: usize) -> bool {
        c == 0
    }

    pub fn in_domain(&self, tuple: &[usize]) -> bool {
        table_domain(self.cutoffs, tuple.iter().map(|&c| (self.classes[c].hom, self.classes[c].adams)))
    }

    /// Hom degree `Σ hom + 2 - n` and Adams degree of `m_n(tuple)`.
    pub fn m_bidegree(&self, tuple: &[usize]) -> (i64, usize) {
        let hom: i64 = tuple.iter().map(|&c| self.classes[c].hom as i64).sum();
        let adams = tuple.iter().map(|&c| self.classes[c].adams).sum();
        (hom + 2 - tuple.len() as i64, adams)
    }

    fn truncated(&self, tuple: &[usize], shift: i64) -> Error {
        let (h, s) = self.m_bidegree(tuple);
        self.cutoffs.truncation((h + shift).max(0) as usize, s)
    }

    /// `m_n` on basis classes, with the strict-unit rules for the unit.
    pub fn m(&self, tuple: &[usize]) -> Result<Vec<(usize, K::Elem)>> {
        let n = tuple.len();
        if n == 0 {
            return Err(Error::Internal("m_0 is not defined".into()));
        }
        if n == 1 {
            return Ok(Vec::new());
        }
        if let Some(u) = tuple.iter().position(|&c| self.is_unit(c)) {
            return Ok(if n == 2 {
                vec![(tuple[1 - u], self.field.one())]
            } else {
                Vec::new()
            });
        }
        self.m.get(tuple).cloned().ok_or_else(|| self.truncated(tuple, 0))
    }

    /// `f_n` on basis classes; `None` for values in negative hom degree.
    pub fn f(&self, tuple: &[usize]) -> Result<Option<Cochain<K>>> {
        let n = tuple.len();
        if n == 1 {
            return Ok(Some(self.classes[tuple[0]].representative.clone()));
        }
        let (h, s) = self.m_bidegree(tuple);
        if tuple.iter().any(|&c| self.is_unit(c)) {
            return Ok((h >= 1).then(|| Cochain {
                hom: (h - 1) as usize,
                adams: s,
                terms: Vec::new(),
            }));
        }
        self.f.get(tuple).cloned().map(Some).ok_or_else(|| self.truncated(tuple, -1))
    }

    pub fn format_value(&self, v: &[(usize, K::Elem)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(c, x)| {
                let label = &self.classes[*c].label;
                if self.field.is_one(x) {
                    label.clone()
                } else {
                    format!("{}*{label}", self.field.format(x))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_document(&self) -> ModelDocument {
        let k = &self.field;
        let terms = |t: &[(usize, K::Elem)]| t.iter().map(|(i, c)| (*i, k.format(c))).collect::<Vec<_>>();
        let labels = |tuple: &[usize]| tuple.iter().map(|&c| self.classes[c].label.clone()).collect::<Vec<_>>();
        ModelDocument {
            schema_version: SCHEMA_VERSION,
            characteristic: k.characteristic(),
            cutoffs: self.cutoffs,
            presentation: self.presentation.to_text(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassDocument {
                    label: c.label.clone(),
                    hom: c.hom,
                    adams: c.adams,
                    representative: terms(&c.representative.terms),
                })
                .collect(),
            m: self
                .m
                .iter()
                .map(|(t, v)| MEntry {
                    inputs: labels(t),
                    output: v.iter().map(|(c, x)| (self.classes[*c].label.clone(), k.format(x))).collect(),
                })
                .collect(),
            f: self
                .f
                .iter()
                .map(|(t, v)| FEntry {
                    inputs: labels(t),
                    hom: v.hom,
                    adams: v.adams,
                    value: terms(&v.terms),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_document(k: &K, doc: &ModelDocument) -> Result<Self> {
        let corrupt = |m: String| Error::CorruptModel(m);
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: doc.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        if doc.characteristic != k.characteristic() {
            return Err(corrupt(format!("field characteristic {} does not match {}", doc.characteristic, k.characteristic())));
        }
        let presentation = AlgebraPresentation::parse(&doc.presentation).map_err(|e| corrupt(format!("presentation: {e}")))?;
        if presentation.field.characteristic() != k.characteristic() {
            return Err(corrupt("presentation field does not match the model field".into()));
        }
        let coeff = |s: &str| k.parse(s).ok_or_else(|| corrupt(format!("bad coefficient {s:?}")));
        let terms = |t: &[(usize, String)]| -> Result<Vec<(usize, K::Elem)>> { t.iter().map(|(i, c)| Ok((*i, coeff(c)?))).collect() };

        let mut classes = Vec::with_capacity(doc.classes.len());
        for c in &doc.classes {
            classes.push(ModelClass {
                label: c.label.clone(),
                hom: c.hom,
                adams: c.adams,
                representative: Cochain {
                    hom: c.hom,
                    adams: c.adams,
                    terms: terms(&c.representative)?,
                },
            });
        }
        if classes.first().map(|c| (c.hom, c.adams)) != Some((0, 0)) {
            return Err(corrupt("the first class must be the unit".into()));
        }
        let index: BTreeMap<&str, usize> = classes.iter().enumerate().map(|(i, c)| (c.label.as_str(), i)).collect();
        if index.len() != classes.len() {
            return Err(corrupt("duplicate class labels".into()));
        }
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| corrupt(format!("unknown class {l:?}")));
        let tuple = |ls: &[String]| -> Result<Vec<usize>> { ls.iter().map(|l| lookup(l)).collect() };

        let mut m = BTreeMap::new();
        for e in &doc.m {
            let out = e.output.iter().map(|(l, c)| Ok((lookup(l)?, coeff(c)?))).collect::<Result<Vec<_>>>()?;
            m.insert(tuple(&e.inputs)?, out);
        }
        let mut f = BTreeMap::new();
        for e in &doc.f {
            f.insert(
                tuple(&e.inputs)?,
                Cochain {
                    hom: e.hom,
                    adams: e.adams,
                    terms: terms(&e.value)?,
                },
            );
        }
        Ok(AInftyModel {
            field: k.clone(),
            presentation,
            cutoffs: doc.cutoffs,
            classes,
            m,
            f,
        })
    }
}

/// The serialized form of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: u64,
    /// 0 for the rationals.
    pub characteristic: u64,
    pub cutoffs: Cutoffs,
    pub presentation: String,
    pub classes: Vec<ClassDocument>,
    pub m: Vec<MEntry>,
    pub f: Vec<FEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDocument {
    pub label: String,
    pub hom: usize,
    pub adams: usize,
    pub representative: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MEntry {
    pub inputs: Vec<String>,
    pub output: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEntry {
    pub inputs: Vec<String>,
    pub hom: usize,
    pub adams: usize,
    pub value: Vec<(usize, String)>,
}

/// Parses a model file, checking the schema version before the layout.
pub fn parse_document(text: &str) -> Result<ModelDocument> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::CorruptModel(e.to_string()))?;
    let found = value
        .get("schema_version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::CorruptModel("missing schema_version".into()))?;
    if found != SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            found,
            expected: SCHEMA_VERSION,
        });
    }
    serde_json::from_value(value).map_err(|e| Error::CorruptModel(e.to_string()))
}
