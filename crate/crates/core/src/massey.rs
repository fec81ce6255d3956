//! Massey products from the canonical defining system
//! `a_{i-1,j} = (-1)^{b_ij} Gλ_{j-i+1}(α_i ⊗ ... ⊗ α_j)`, where
//! `b_ij = 1 + deg α_{j-1} + deg α_{j-3} + ...` (indices at least `i`).
//!
//! With `ā = (-1)^{1+deg a} a` the defining identities read
//! `∂ a_ij = Σ_{i<k<j} ā_ik a_kj`, and the product is the class of
//! `Σ_{0<k<n} ā_0k a_kn`. The transferred structure satisfies
//! `(-1)^b m_n(α_1 ⊗ ... ⊗ α_n) = [Σ ā_0k a_kn]` with `b = b_1n`.

use std::collections::BTreeMap;

use crate::cobar::CobarElement;
use crate::error::{Error, Result};
use crate::linear::{Field, Matrix};
use crate::merkulov::Engine;

pub struct MasseyDefiningSystem<K: Field> {
    pub classes: Vec<usize>,
    /// `a_ij` for `0 ≤ i < j ≤ n`, `(i, j) ≠ (0, n)`.
    pub cochains: BTreeMap<(usize, usize), CobarElement<K>>,
    /// Sign exponent `b = 1 + deg α_{n-1} + deg α_{n-3} + ...`.
    pub b: i64,
}

#[derive(Clone, Debug)]
pub struct MasseyResult<K: Field> {
    pub classes: Vec<usize>,
    pub hom: usize,
    pub adams: usize,
    pub b: i64,
    /// Class of the boundary cocycle, sparse in global class indices.
    pub representative: Vec<(usize, K::Elem)>,
    /// `m_n(α_1 ⊗ ... ⊗ α_n)`.
    pub m_value: Vec<(usize, K::Elem)>,
    /// Whether `(-1)^b m_n(α) equals the representative.
    pub agrees: bool,
}

/// `b_ij` for the 1-based range `α_i ... α_j`.
pub fn sign_exponent(degrees: &[usize], i: usize, j: usize) -> i64 {
    let mut b = 1i64;
    let mut idx = j as i64 - 1;
    while idx >= i as i64 {
        b += degrees[idx as usize - 1] as i64;
        idx -= 2;
    }
    b
}

fn bar<K: Field>(k: &K, a: &CobarElement<K>) -> CobarElement<K> {
    a.scale(k, &k.sign(1 + a.hom as i64))
}

/// `Σ_{i<k<j} ā_ik a_kj`.
fn boundary_sum<K: Field>(engine: &Engine<K>, cochains: &BTreeMap<(usize, usize), CobarElement<K>>, i: usize, j: usize) -> Result<Option<CobarElement<K>>> {
    let k = engine.field();
    let mut acc: Option<CobarElement<K>> = None;
    for m in i + 1..j {
        let prod = engine.cobar().concat(&bar(k, &cochains[&(i, m)]), &cochains[&(m, j)])?;
        match acc.as_mut() {
            Some(a) => a.add_assign(k, &prod),
            None => acc = Some(prod),
        }
    }
    Ok(acc)
}

fn validate<K: Field>(engine: &Engine<K>, classes: &[usize]) -> Result<Vec<usize>> {
    if classes.len() < 2 {
        return Err(Error::MasseyInput("at least two classes are needed".into()));
    }
    if classes.iter().any(|&c| c == 0 || c >= engine.classes().len()) {
        return Err(Error::MasseyInput("inputs must be non-unit basis classes".into()));
    }
    Ok(classes.iter().map(|&c| engine.classes()[c].hom).collect())
}

pub fn build_defining_system<K: Field>(engine: &Engine<K>, classes: &[usize]) -> Result<MasseyDefiningSystem<K>> {
    let degrees = validate(engine, classes)?;
    let n = classes.len();
    let k = engine.field();
    let mut cochains = BTreeMap::new();
    for len in 1..n {
        for i in 1..=n + 1 - len {
            let j = i + len - 1;
            let sub = &classes[i - 1..j];
            let g = engine
                .g_lambda(sub)?
                .ok_or_else(|| Error::Internal("defining cochain in negative hom degree".into()))?;
            let a = g.scale(k, &k.sign(sign_exponent(&degrees, i, j)));
            if len >= 2 {
                let sum = boundary_sum(engine, &cochains, i - 1, j)?.expect("interior terms");
                if !engine.project(&sum)?.is_empty() {
                    return Err(Error::MasseyUndefined { i: i - 1, j });
                }
                if engine.cobar().differential(&a)? != sum {
                    return Err(Error::Internal(format!("defining identity fails for a[{}][{j}]", i - 1)));
                }
            }
            cochains.insert((i - 1, j), a);
        }
    }
    Ok(MasseyDefiningSystem {
        classes: classes.to_vec(),
        cochains,
        b: sign_exponent(&degrees, 1, n),
    })
}

fn boundary_cocycle<K: Field>(engine: &Engine<K>, system: &MasseyDefiningSystem<K>) -> Result<CobarElement<K>> {
    let n = system.classes.len();
    let c = boundary_sum(engine, &system.cochains, 0, n)?.expect("n ≥ 2");
    if !engine.cobar().differential(&c)?.is_zero(engine.field()) {
        return Err(Error::Internal("Massey boundary element is not a cocycle".into()));
    }
    Ok(c)
}

/// The canonical representative of `⟨α_1, ..., α_n⟩`, compared with
/// `(-1)^b m_n(α_1 ⊗ ... ⊗ α_n)`.
pub fn massey_product<K: Field>(engine: &Engine<K>, classes: &[usize]) -> Result<MasseyResult<K>> {
    let k = engine.field();
    let system = build_defining_system(engine, classes)?;
    let cocycle = boundary_cocycle(engine, &system)?;
    let representative = engine.project(&cocycle)?;
    let m_value = engine.m_value(classes)?;
    let sign = k.sign(system.b);
    let signed: Vec<(usize, K::Elem)> = m_value.iter().map(|(c, x)| (*c, k.mul(&sign, x))).collect();
    Ok(MasseyResult {
        classes: classes.to_vec(),
        hom: cocycle.hom,
        adams: cocycle.adams,
        b: system.b,
        agrees: signed == representative,
        representative,
        m_value,
    })
}

/// Outcome of perturbing interior cochains of a length-3 system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndeterminacyCheck {
    pub perturbations: usize,
    pub all_in_indeterminacy: bool,
}

/// Perturbs `a_02` and `a_13` by every harmonic cocycle of their bidegree
/// and checks that the representative moves inside
/// `H·α_3 + α_1·H`.
pub fn indeterminacy_spot_check<K: Field>(engine: &Engine<K>, classes: &[usize]) -> Result<IndeterminacyCheck> {
    if classes.len() != 3 {
        return Err(Error::MasseyInput("the spot check is for triple products".into()));
    }
    let k = engine.field();
    let system = build_defining_system(engine, classes)?;
    let base = engine.project(&boundary_cocycle(engine, &system)?)?;
    let a02 = &system.cochains[&(0, 2)];
    let a13 = &system.cochains[&(1, 3)];
    let left = engine.classes_in(a02.hom, a02.adams);
    let right = engine.classes_in(a13.hom, a13.adams);

    // Spanning set of the indeterminacy, in global class coordinates.
    let mut span: Vec<Vec<(usize, K::Elem)>> = Vec::new();
    for &h in &left {
        span.push(engine.m_value(&[h, classes[2]])?);
    }
    for &h in &right {
        span.push(engine.m_value(&[classes[0], h])?);
    }

    let mut moves = Vec::new();
    for (slot, hs) in [((0, 2), &left), ((1, 3), &right)] {
        for &h in hs.iter() {
            let mut perturbed = MasseyDefiningSystem {
                classes: system.classes.clone(),
                cochains: system.cochains.clone(),
                b: system.b,
            };
            perturbed.cochains.get_mut(&slot).unwrap().add_assign(k, &engine.representative(h)?);
            let rep = engine.project(&boundary_cocycle(engine, &perturbed)?)?;
            let mut diff = rep;
            for (c, x) in &base {
                match diff.iter_mut().find(|(d, _)| d == c) {
                    Some((_, y)) => *y = k.sub(y, x),
                    None => diff.push((*c, k.neg(x))),
                }
            }
            diff.retain(|(_, y)| !k.is_zero(y));
            moves.push(diff);
        }
    }
    let dim = engine.classes().len();
    let dense = |v: &Vec<(usize, K::Elem)>| {
        let mut d = k.zeros(dim);
        for (c, x) in v {
            d[*c] = x.clone();
        }
        d
    };
    let span_rows: Vec<Vec<K::Elem>> = span.iter().map(dense).collect();
    let span_rank = Matrix::from_rows(k, span_rows.clone(), dim).rank();
    let all = moves.iter().all(|mv| {
        let mut rows = span_rows.clone();
        rows.push(dense(mv));
        Matrix::from_rows(k, rows, dim).rank() == span_rank
    });
    Ok(IndeterminacyCheck {
        perturbations: moves.len(),
        all_in_indeterminacy: all,
    })
}
