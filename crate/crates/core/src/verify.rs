//! Exhaustive checks of the Stasheff identities, the morphism identities
//! for `f`, and strict unitality.
//!
//! `SI(n)`: `Σ (-1)^{r+st} m_u (id^{⊗r} ⊗ m_s ⊗ id^{⊗t}) = 0` over
//! `r + s + t = n`, `u = r + 1 + t`.
//!
//! `MI(n)`: `Σ (-1)^{r+st} f_u (id^{⊗r} ⊗ m_s ⊗ id^{⊗t})
//!          = Σ (-1)^w m_q (f_{i_1} ⊗ ... ⊗ f_{i_q})`, where on the cobar
//! side `m_1 = ∂`, `m_2` is concatenation and `m_q = 0` for `q ≥ 3`, and
//! `w = Σ_j (q - j)(i_j - 1)`.
//!
//! The tested range is every tuple of basis classes, with at most one unit,
//! such that the non-unit classes satisfy `Σ adams ≤ S` and
//! `Σ (hom - 1) ≤ N - 3`; this is exactly where every term is tabulated.

use std::collections::BTreeMap;
use std::fmt;

use crate::cobar::{koszul_apply, CobarComplex, CobarElement, GradedMap};
use crate::error::Result;
use crate::linear::Field;
use crate::merkulov::{AInftyModel, Engine};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub tuples_tested: usize,
    pub violations: Vec<Violation>,
    /// Tested and failed tuple counts keyed by the total bidegree
    /// `(Σ hom, Σ adams)` of the inputs.
    pub bidegrees: BTreeMap<(usize, usize), BidegreeTally>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BidegreeTally {
    pub tested: usize,
    pub failed: usize,
}

impl IdentityReport {
    fn new(name: impl Into<String>) -> Self {
        IdentityReport {
            name: name.into(),
            tuples_tested: 0,
            violations: Vec::new(),
            bidegrees: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, bidegree: (usize, usize), violation: Option<Violation>) {
        self.tuples_tested += 1;
        let tally = self.bidegrees.entry(bidegree).or_default();
        tally.tested += 1;
        if let Some(v) = violation {
            tally.failed += 1;
            self.violations.push(v);
        }
    }
}

fn total_bidegree<K: Field>(model: &AInftyModel<K>, tuple: &[usize]) -> (usize, usize) {
    tuple.iter().fold((0, 0), |(h, a), &c| (h + model.classes[c].hom, a + model.classes[c].adams))
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{:<12} {:>7} tuples  {verdict}", self.name, self.tuples_tested)?;
        for v in &self.violations {
            write!(f, "\n    ({}): {} != {}", v.inputs.join(", "), v.lhs, v.rhs)?;
        }
        Ok(())
    }
}

type Sparse<K> = Vec<(usize, <K as Field>::Elem)>;

/// Tuples of length `n` checked for `SI(n)` and `MI(n)`.
pub fn identity_tuples<K: Field>(model: &AInftyModel<K>, n: usize) -> Vec<Vec<usize>> {
    let cut = model.cutoffs;
    if cut.hom < 3 || n == 0 {
        return Vec::new();
    }
    let items: Vec<(usize, usize, usize)> = model
        .classes
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i, c.hom, c.adams))
        .collect();
    let mut out = Vec::new();
    let max_excess = cut.hom - 3;
    let base = crate::merkulov::enumerate_tuples(&items, cut.adams, max_excess, 0);
    for t in &base {
        if t.len() == n {
            out.push(t.clone());
        }
        if t.len() + 1 == n {
            for pos in 0..=t.len() {
                let mut u = t.clone();
                u.insert(pos, 0);
                out.push(u);
            }
        }
    }
    out.sort();
    out
}

fn add_into<K: Field>(k: &K, acc: &mut Sparse<K>, c: &K::Elem, v: &[(usize, K::Elem)]) {
    for (i, x) in v {
        let term = k.mul(c, x);
        match acc.iter_mut().find(|(j, _)| j == i) {
            Some((_, y)) => *y = k.add(y, &term),
            None => acc.push((*i, term)),
        }
    }
    acc.retain(|(_, y)| !k.is_zero(y));
    acc.sort_by_key(|(i, _)| *i);
}

/// Expands a tensor of linear combinations of classes into basis tuples.
fn expand<K: Field>(k: &K, factors: &[Sparse<K>]) -> Vec<(Vec<usize>, K::Elem)> {
    let mut out = vec![(Vec::new(), k.one())];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for (t, c) in &out {
            for (i, x) in f {
                let mut t2 = t.clone();
                t2.push(*i);
                next.push((t2, k.mul(c, x)));
            }
        }
        out = next;
    }
    out
}

/// `(id^{⊗r} ⊗ m_s ⊗ id^{⊗t})(tuple)` as a signed sum of basis tuples.
fn insert_product<K: Field>(model: &AInftyModel<K>, tuple: &[usize], r: usize, s: usize) -> Result<Vec<(Vec<usize>, K::Elem)>> {
    let k = &model.field;
    let identity = |x: &[usize]| -> Result<Sparse<K>> { Ok(vec![(x[0], k.one())]) };
    let product = |x: &[usize]| model.m(x);
    let t = tuple.len() - r - s;
    let mut maps: Vec<GradedMap<usize, Sparse<K>>> = Vec::with_capacity(r + 1 + t);
    maps.extend((0..r).map(|_| GradedMap::new(0, 1, &identity)));
    maps.push(GradedMap::new(2 - s as i64, s, &product));
    maps.extend((0..t).map(|_| GradedMap::new(0, 1, &identity)));
    let (parity, outputs) = koszul_apply(&maps, tuple, |&c| model.classes[c].hom as i64)?;
    let sign = k.sign(parity);
    Ok(expand(k, &outputs).into_iter().map(|(t, c)| (t, k.mul(&sign, &c))).collect())
}

fn labels<K: Field>(model: &AInftyModel<K>, tuple: &[usize]) -> Vec<String> {
    tuple.iter().map(|&c| model.class_label(c).to_string()).collect()
}

pub fn check_stasheff<K: Field>(model: &AInftyModel<K>, n: usize) -> Result<IdentityReport> {
    let k = &model.field;
    let mut report = IdentityReport::new(format!("SI({n})"));
    for tuple in &identity_tuples(model, n) {
        let mut total: Sparse<K> = Vec::new();
        for s in 2..n {
            for r in 0..=n - s {
                let t = n - r - s;
                let sign = k.sign((r + s * t) as i64);
                for (inner, c) in insert_product(model, tuple, r, s)? {
                    add_into(k, &mut total, &k.mul(&sign, &c), &model.m(&inner)?);
                }
            }
        }
        let violation = (!total.is_empty()).then(|| Violation {
            inputs: labels(model, tuple),
            lhs: model.format_value(&total),
            rhs: "0".into(),
        });
        report.record(total_bidegree(model, tuple), violation);
    }
    Ok(report)
}

fn f_element<K: Field>(model: &AInftyModel<K>, cobar: &CobarComplex<K>, tuple: &[usize]) -> Result<Option<CobarElement<K>>> {
    model.f(tuple)?.map(|c| c.to_element(cobar)).transpose()
}

pub fn check_morphism<K: Field>(model: &AInftyModel<K>, cobar: &CobarComplex<K>, n: usize) -> Result<IdentityReport> {
    let k = &model.field;
    let mut report = IdentityReport::new(format!("MI({n})"));
    for tuple in &identity_tuples(model, n) {
        let (hom, adams) = model.m_bidegree(tuple);
        if hom < 0 {
            continue;
        }
        let hom = hom as usize;

        let mut lhs = cobar.zero(hom, adams);
        for s in 2..=n {
            for r in 0..=n - s {
                let t = n - r - s;
                let sign = k.sign((r + s * t) as i64);
                for (inner, c) in insert_product(model, tuple, r, s)? {
                    if let Some(v) = f_element(model, cobar, &inner)? {
                        lhs.add_scaled(k, &k.mul(&sign, &c), &v);
                    }
                }
            }
        }

        let mut rhs = cobar.zero(hom, adams);
        if let Some(fx) = f_element(model, cobar, tuple)? {
            rhs.add_assign(k, &cobar.differential(&fx)?);
        }
        let f_map = |x: &[usize]| f_element(model, cobar, x);
        for i in 1..n {
            let maps = [GradedMap::new(1 - i as i64, i, &f_map), GradedMap::new(1 - (n - i) as i64, n - i, &f_map)];
            let (parity, outs) = koszul_apply(&maps, tuple, |&c| model.classes[c].hom as i64)?;
            if let (Some(a), Some(b)) = (&outs[0], &outs[1]) {
                rhs.add_scaled(k, &k.sign(parity + i as i64 - 1), &cobar.concat(a, b)?);
            }
        }
        let violation = (lhs != rhs).then(|| Violation {
            inputs: labels(model, tuple),
            lhs: cobar.format(&lhs),
            rhs: cobar.format(&rhs),
        });
        report.record(total_bidegree(model, tuple), violation);
    }
    Ok(report)
}

/// Strict unitality of the stored model: `f_1(1)` is the cobar unit and
/// the table agrees with the unit rules wherever it could be consulted.
pub fn check_strict_unit<K: Field>(model: &AInftyModel<K>, cobar: &CobarComplex<K>) -> Result<IdentityReport> {
    let k = &model.field;
    let mut report = IdentityReport::new("unit");
    let unit = model.f(&[0])?.map(|c| c.to_element(cobar)).transpose()?;
    let violation = (unit.as_ref() != Some(&cobar.unit())).then(|| Violation {
        inputs: vec!["1".into()],
        lhs: unit.map_or("none".into(), |u| cobar.format(&u)),
        rhs: "[]".into(),
    });
    report.record((0, 0), violation);
    for c in 0..model.classes.len() {
        for pair in [[0, c], [c, 0]] {
            let v = model.m(&pair)?;
            let violation = (v != vec![(c, k.one())]).then(|| Violation {
                inputs: labels(model, &pair),
                lhs: model.format_value(&v),
                rhs: model.class_label(c).into(),
            });
            report.record(total_bidegree(model, &pair), violation);
        }
    }
    // Stored entries on unit tuples would shadow the rules.
    for tuple in model.m.keys().filter(|t| t.contains(&0)) {
        let bidegree = total_bidegree(model, tuple);
        let tally = report.bidegrees.entry(bidegree).or_default();
        tally.failed += 1;
        report.violations.push(Violation {
            inputs: labels(model, tuple),
            lhs: "stored".into(),
            rhs: "unit rule".into(),
        });
    }
    Ok(report)
}

/// Strict unitality of the transferred structure itself: evaluates the
/// recursion with the unit among the inputs instead of applying the rules.
pub fn check_unit_lemma<K: Field>(engine: &Engine<K>, max_len: usize) -> Result<IdentityReport> {
    let k = engine.field();
    let mut report = IdentityReport::new("unit-lemma");
    let label = |t: &[usize]| t.iter().map(|&c| engine.classes()[c].label.clone()).collect::<Vec<_>>();
    let mut bases: Vec<Vec<usize>> = (1..engine.classes().len()).map(|c| vec![c]).collect();
    bases.extend(engine.table_tuples());
    bases.push(Vec::new());
    for base in bases.iter().filter(|b| b.len() < max_len) {
        for pos in 0..=base.len() {
            let mut t = base.clone();
            t.insert(pos, 0);
            if t.len() < 2 {
                continue;
            }
            let m = engine.m_value(&t)?;
            let expected: Vec<(usize, K::Elem)> = if t.len() == 2 {
                vec![(t[1 - pos], k.one())]
            } else {
                Vec::new()
            };
            let mut violation = (m != expected).then(|| Violation {
                inputs: label(&t),
                lhs: format!("m = {m:?}"),
                rhs: format!("{expected:?}"),
            });
            if let Some(f) = engine.f_value(&t)? {
                if violation.is_none() && !f.is_zero(k) {
                    violation = Some(Violation {
                        inputs: label(&t),
                        lhs: format!("f = {}", engine.cobar().format(&f)),
                        rhs: "0".into(),
                    });
                }
            }
            let bidegree = t.iter().fold((0, 0), |(h, a), &c| (h + engine.classes()[c].hom, a + engine.classes()[c].adams));
            report.record(bidegree, violation);
        }
    }
    Ok(report)
}

/// Longest tuple length with something to check.
pub fn max_identity_length<K: Field>(model: &AInftyModel<K>) -> usize {
    let min_adams = model.classes.iter().skip(1).map(|c| c.adams).min().unwrap_or(1).max(1);
    model.cutoffs.adams / min_adams + 1
}

/// `SI(n)` for every `n ≥ 3`, `MI(n)` for `2 ≤ n ≤ mi_max` and the unit
/// checks.
pub fn verify_model<K: Field>(model: &AInftyModel<K>, cobar: &CobarComplex<K>, mi_max: usize) -> Result<Vec<IdentityReport>> {
    let top = max_identity_length(model);
    let mut reports = Vec::new();
    for n in 3..=top {
        reports.push(check_stasheff(model, n)?);
    }
    for n in 2..=mi_max.min(top) {
        reports.push(check_morphism(model, cobar, n)?);
    }
    reports.push(check_strict_unit(model, cobar)?);
    Ok(reports)
}
