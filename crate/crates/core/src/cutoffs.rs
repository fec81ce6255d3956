use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation bounds: hom degree `n ≤ hom`, Adams degree `s ≤ adams`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cutoffs {
    pub hom: usize,
    pub adams: usize,
}

impl Cutoffs {
    pub fn new(hom: usize, adams: usize) -> Result<Self> {
        if hom < 1 || adams < 1 {
            return Err(Error::Cutoffs(format!("cutoffs must be positive (hom {hom}, Adams {adams})")));
        }
        Ok(Cutoffs { hom, adams })
    }

    pub fn truncation(&self, hom: usize, adams: usize) -> Error {
        Error::Truncation {
            hom,
            adams,
            max_hom: self.hom,
            max_adams: self.adams,
        }
    }

    pub fn check(&self, hom: usize, adams: usize) -> Result<()> {
        if hom > self.hom || adams > self.adams {
            Err(self.truncation(hom, adams))
        } else {
            Ok(())
        }
    }
}

impl Default for Cutoffs {
    fn default() -> Self {
        Cutoffs { hom: 4, adams: 10 }
    }
}
