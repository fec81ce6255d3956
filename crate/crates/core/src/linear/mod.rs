//! Exact fields and deterministic dense linear algebra.

mod field;
mod map;
mod matrix;
mod rational;

pub use field::{Field, PrimeField, Rationals};
pub use map::{dual_label, Basis, LinearMap};
pub use matrix::{canonical_complement, complement_indices, echelon_basis, reduce_against, Matrix, RowReduction};
pub use rational::Rational;

#[cfg(test)]
pub(crate) use matrix::rank_of_rows;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
    }

    fn build<K: Field>(k: &K, r: usize, c: usize, vals: &[i64]) -> Matrix<K> {
        let rows: Vec<Vec<K::Elem>> = vals[..r * c].chunks(c).map(|ch| ch.iter().map(|&v| k.from_i64(v)).collect()).collect();
        Matrix::from_rows(k, rows, c)
    }

    fn check_rank_nullity<K: Field>(m: &Matrix<K>) {
        let ker = m.kernel_basis();
        let im = m.image_basis();
        assert_eq!(ker.len() + im.len(), m.cols());
        for v in &ker {
            assert!(m.field().is_zero_vec(&m.mul_vec(v)));
        }
        assert_eq!(rank_of_rows(m.field(), ker.clone(), m.cols()), ker.len());
    }

    fn check_idempotent<K: Field>(m: &Matrix<K>) {
        let red = m.row_reduce();
        assert_eq!(red.transform.mul(m), red.echelon);
        let again = red.echelon.row_reduce();
        assert_eq!(again.echelon, red.echelon);
        assert_eq!(again.pivots, red.pivots);
        assert!(red.pivots.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #[test]
        fn rank_nullity_gf2((r, c, v) in small_matrix()) {
            check_rank_nullity(&build(&PrimeField::new(2).unwrap(), r, c, &v));
        }

        #[test]
        fn rank_nullity_gf5((r, c, v) in small_matrix()) {
            check_rank_nullity(&build(&PrimeField::new(5).unwrap(), r, c, &v));
        }

        #[test]
        fn rank_nullity_rationals((r, c, v) in small_matrix()) {
            check_rank_nullity(&build(&Rationals, r, c, &v));
        }

        #[test]
        fn row_reduce_idempotent((r, c, v) in small_matrix()) {
            check_idempotent(&build(&Rationals, r, c, &v));
            check_idempotent(&build(&PrimeField::new(3).unwrap(), r, c, &v));
        }

        #[test]
        fn dual_reverses_composition(
            (a, b, c) in (1usize..5, 1usize..5, 1usize..5),
            seed in prop::collection::vec(-4i64..5, 50),
        ) {
            let k = Rationals;
            let f = LinearMap::new(Basis::indexed("u", a), Basis::indexed("v", b), build(&k, b, a, &seed[..a * b]));
            let g = LinearMap::new(Basis::indexed("v", b), Basis::indexed("w", c), build(&k, c, b, &seed[a * b..a * b + b * c]));
            let lhs = g.compose(&f).unwrap().dual();
            let rhs = f.dual().compose(&g.dual()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn complement_is_deterministic_and_spans(
            (r, c, v) in small_matrix(),
        ) {
            let k = PrimeField::new(5).unwrap();
            let m = build(&k, r, c, &v);
            let (basis, _) = echelon_basis(&k, m.row_vecs(), c);
            let comp = canonical_complement(&k, &basis, c).unwrap();
            prop_assert_eq!(&comp, &canonical_complement(&k, &basis, c).unwrap());
            let mut all = basis.clone();
            all.extend(comp);
            prop_assert_eq!(rank_of_rows(&k, all, c), c);
        }
    }
}
