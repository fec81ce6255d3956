//! The Koszul sign rule for tensor products of graded maps.
//!
//! `(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)`, and in general a block
//! map `f_j` picks up `(-1)^{|f_j| · (total degree of the inputs consumed
//! by the blocks before it)}`. Degrees are homological only.

use crate::error::Result;

/// A multilinear map of the given degree and arity, evaluated on basis
/// inputs.
pub struct GradedMap<'a, X, Y> {
    pub degree: i64,
    pub arity: usize,
    pub eval: &'a dyn Fn(&[X]) -> Result<Y>,
}

impl<'a, X, Y> GradedMap<'a, X, Y> {
    pub fn new(degree: i64, arity: usize, eval: &'a dyn Fn(&[X]) -> Result<Y>) -> Self {
        GradedMap { degree, arity, eval }
    }
}

/// Parity of the Koszul sign for blocks `(degree, arity)` applied in order
/// to inputs of the given degrees. Returns 0 or 1.
pub fn koszul_sign(blocks: &[(i64, usize)], input_degrees: &[i64]) -> i64 {
    let total: usize = blocks.iter().map(|b| b.1).sum();
    assert_eq!(total, input_degrees.len(), "arity mismatch in Koszul sign");
    let mut consumed = 0i64;
    let mut parity = 0i64;
    let mut pos = 0;
    for &(deg, arity) in blocks {
        parity += deg * consumed;
        consumed += input_degrees[pos..pos + arity].iter().sum::<i64>();
        pos += arity;
    }
    parity.rem_euclid(2)
}

/// Applies `maps[0] ⊗ maps[1] ⊗ ...` to a tensor of basis inputs. Returns
/// the Koszul parity and the block outputs in order.
pub fn koszul_apply<X, Y>(maps: &[GradedMap<'_, X, Y>], inputs: &[X], degree: impl Fn(&X) -> i64) -> Result<(i64, Vec<Y>)> {
    let blocks: Vec<(i64, usize)> = maps.iter().map(|m| (m.degree, m.arity)).collect();
    let degrees: Vec<i64> = inputs.iter().map(degree).collect();
    let parity = koszul_sign(&blocks, &degrees);
    let mut outputs = Vec::with_capacity(maps.len());
    let mut pos = 0;
    for m in maps {
        outputs.push((m.eval)(&inputs[pos..pos + m.arity])?);
        pos += m.arity;
    }
    Ok((parity, outputs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_maps_have_no_sign() {
        assert_eq!(koszul_sign(&[(0, 1), (0, 1)], &[1, 1]), 0);
    }

    #[test]
    fn odd_map_past_odd_input() {
        assert_eq!(koszul_sign(&[(0, 1), (1, 1)], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[(1, 1), (0, 1)], &[1, 1]), 0);
        // Three blocks: third map of degree -1 passes inputs of total degree 3.
        assert_eq!(koszul_sign(&[(0, 2), (2, 1), (-1, 1)], &[1, 2, 0, 5]), 1);
    }

    #[test]
    fn apply_returns_outputs_in_order() {
        let double = |x: &[i64]| -> Result<i64> { Ok(2 * x[0]) };
        let sum = |x: &[i64]| -> Result<i64> { Ok(x.iter().sum()) };
        let maps = [GradedMap::new(1, 1, &double), GradedMap::new(1, 2, &sum)];
        let (parity, out) = koszul_apply(&maps, &[3, 4, 5], |&x| x).unwrap();
        assert_eq!(out, vec![6, 9]);
        assert_eq!(parity, 1);
    }
}
