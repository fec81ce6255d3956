//! Connected graded algebras given by generators and relations.
//!
//! A presentation file is parsed into an [`AlgebraPresentation`], which is
//! field-agnostic (integer coefficients). [`GradedAlgebra`] then computes the
//! graded pieces over a concrete field, and [`GradedSplitData`] the
//! indecomposable split, the sections `ξ_s`, the iterated sections `θ_s` and
//! a minimal relation space.

mod algebra;
mod parse;
mod split;

use std::collections::BTreeMap;
use std::fmt;

pub use algebra::{GradedAlgebra, SparseVec};
pub use split::{DegreeSplit, GradedSplitData, QTensor, RelationReport, VIndex};

use crate::linear::{Field, PrimeField, Rationals};

/// Coefficient field named in a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn prime_field(&self) -> Option<PrimeField> {
        match self {
            FieldSpec::Prime(p) => PrimeField::new(*p).ok(),
            FieldSpec::Rationals => None,
        }
    }

    /// Runs `v` with the concrete field.
    pub fn dispatch<V: FieldVisitor>(&self, v: V) -> V::Output {
        match self {
            FieldSpec::Prime(p) => v.visit(PrimeField::new(*p).expect("validated at parse time")),
            FieldSpec::Rationals => v.visit(Rationals),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.characteristic())
    }
}

/// Generic code that needs a concrete field chosen at runtime.
pub trait FieldVisitor {
    type Output;
    fn visit<K: Field>(self, field: K) -> Self::Output;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcMonomial {
    pub word: Vec<usize>,
    pub adams_degree: usize,
}

impl NcMonomial {
    pub fn new(word: Vec<usize>, generators: &[Generator]) -> Self {
        let adams_degree = word.iter().map(|&g| generators[g].degree).sum();
        NcMonomial { word, adams_degree }
    }

    /// `x1*x2^2`; the empty word prints as `1`.
    pub fn display(&self, generators: &[Generator]) -> String {
        word_text(&self.word, |g| generators[g].name.as_str())
    }
}

/// Formats a word with `^` for runs of a repeated letter.
pub fn word_text<'a>(word: &[usize], name: impl Fn(usize) -> &'a str) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let n = name(word[i]);
        parts.push(if j - i == 1 { n.to_string() } else { format!("{n}^{}", j - i) });
        i = j;
    }
    parts.join("*")
}

/// A noncommutative polynomial with nonzero coefficients of type `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPolynomial<C> {
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C> Default for NcPolynomial<C> {
    fn default() -> Self {
        NcPolynomial { terms: BTreeMap::new() }
    }
}

impl<C: Clone> NcPolynomial<C> {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> D) -> NcPolynomial<D> {
        NcPolynomial {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), f(c))).collect(),
        }
    }

    pub fn adams_degree(&self, generators: &[Generator]) -> Option<usize> {
        let w = self.terms.keys().next()?;
        Some(w.iter().map(|&g| generators[g].degree).sum())
    }
}

impl<C: Clone> NcPolynomial<C> {
    /// Builds from a field-valued term list, merging repeated words and
    /// dropping zeros.
    pub fn collect_in<K: Field<Elem = C>>(k: &K, terms: impl IntoIterator<Item = (Vec<usize>, C)>) -> Self {
        let mut map: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        for (w, c) in terms {
            let e = map.entry(w).or_insert_with(|| k.zero());
            *e = k.add(e, &c);
        }
        map.retain(|_, c| !k.is_zero(c));
        NcPolynomial { terms: map }
    }

    pub fn display_with<'n>(&self, coef: impl Fn(&C) -> String, name: impl Fn(usize) -> &'n str + Copy) -> String {
        poly_text(self.terms.iter().map(|(w, c)| (w.as_slice(), coef(c))), name)
    }
}

impl NcPolynomial<i64> {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<usize>, i64)>, modulus: u64) -> Self {
        let mut map: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (w, c) in terms {
            *map.entry(w).or_insert(0) += c;
        }
        if modulus > 0 {
            for c in map.values_mut() {
                *c = c.rem_euclid(modulus as i64);
            }
        }
        map.retain(|_, c| *c != 0);
        NcPolynomial { terms: map }
    }

    pub fn display(&self, generators: &[Generator]) -> String {
        self.display_with(|c| c.to_string(), |g| generators[g].name.as_str())
    }
}

fn poly_text<'a, 'n>(terms: impl Iterator<Item = (&'a [usize], String)>, name: impl Fn(usize) -> &'n str + Copy) -> String {
    let mut out = String::new();
    for (i, (w, c)) in terms.enumerate() {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let word = word_text(w, name);
        if mag == "1" {
            out.push_str(&word);
        } else if w.is_empty() {
            out.push_str(&mag);
        } else {
            out.push_str(&format!("{mag}*{word}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Optional cutoffs recorded in a presentation file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DeclaredCutoffs {
    pub adams: Option<usize>,
    pub hom: Option<usize>,
}

/// `k⟨generators⟩ / (relations)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub field: FieldSpec,
    pub generators: Vec<Generator>,
    pub relations: Vec<NcPolynomial<i64>>,
    pub cutoffs: DeclaredCutoffs,
}

impl AlgebraPresentation {
    pub fn parse(text: &str) -> crate::Result<Self> {
        parse::parse_presentation(text)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn relation_degree(&self, r: usize) -> usize {
        self.relations[r].adams_degree(&self.generators).unwrap_or(0)
    }

    /// Canonical text form; parsing it gives back an equal presentation.
    pub fn to_text(&self) -> String {
        let mut out = format!("field = {}\n", self.field);
        if !self.generators.is_empty() {
            let gens: Vec<String> = self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
            out.push_str(&format!("gen {}\n", gens.join(", ")));
        }
        for r in &self.relations {
            out.push_str(&format!("rel {}\n", r.display(&self.generators)));
        }
        if let Some(s) = self.cutoffs.adams {
            out.push_str(&format!("cutoff_adams = {s}\n"));
        }
        if let Some(n) = self.cutoffs.hom {
            out.push_str(&format!("cutoff_hom = {n}\n"));
        }
        out
    }
}

pub fn parse_presentation(text: &str) -> crate::Result<AlgebraPresentation> {
    parse::parse_presentation(text)
}
