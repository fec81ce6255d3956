use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// An ordered list of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    labels: Vec<String>,
}

impl Basis {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Basis { labels })
    }

    /// `prefix0, prefix1, ...`
    pub fn indexed(prefix: &str, dim: usize) -> Self {
        Basis {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The dual basis; labels gain or lose a trailing `#`.
    pub fn dual(&self) -> Basis {
        Basis {
            labels: self.labels.iter().map(|l| dual_label(l)).collect(),
        }
    }
}

pub fn dual_label(l: &str) -> String {
    match l.strip_suffix('#') {
        Some(base) => base.to_string(),
        None => format!("{l}#"),
    }
}

/// A matrix together with labelled source and target bases. Column `j` is
/// the image of source basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<K: Field> {
    pub source: Basis,
    pub target: Basis,
    pub matrix: Matrix<K>,
}

impl<K: Field> LinearMap<K> {
    pub fn new(source: Basis, target: Basis, matrix: Matrix<K>) -> Self {
        assert_eq!(matrix.rows(), target.dim(), "target dimension mismatch");
        assert_eq!(matrix.cols(), source.dim(), "source dimension mismatch");
        LinearMap { source, target, matrix }
    }

    pub fn apply(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap<K>) -> Result<LinearMap<K>> {
        if inner.target != self.source {
            return Err(Error::BasisMismatch);
        }
        Ok(LinearMap::new(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix)))
    }

    /// The transpose, between the dual bases.
    pub fn dual(&self) -> LinearMap<K> {
        LinearMap::new(self.target.dual(), self.source.dual(), self.matrix.transpose())
    }

    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        self.matrix.kernel_basis()
    }

    pub fn image_basis(&self) -> Vec<Vec<K::Elem>> {
        self.matrix.image_basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Rationals;

    #[test]
    fn dual_is_transpose_and_involution() {
        let m = Matrix::from_i64(&Rationals, &[&[1, 2], &[3, 4]]);
        let f = LinearMap::new(Basis::indexed("a", 2), Basis::indexed("b", 2), m);
        let d = f.dual();
        assert_eq!(d.matrix, Matrix::from_i64(&Rationals, &[&[1, 3], &[2, 4]]));
        assert_eq!(d.source.labels()[0], "b0#");
        assert_eq!(d.dual(), f);
        let id = LinearMap::new(Basis::indexed("a", 2), Basis::indexed("a", 2), Matrix::identity(&Rationals, 2));
        assert_eq!(id.dual().matrix, id.matrix);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Basis::new(vec!["x".into(), "x".into()]).is_err());
    }
}
