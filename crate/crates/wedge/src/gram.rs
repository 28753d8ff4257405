use std::ops::Deref;

use pdc_algebra::{Error, IntMatrix, Result};

use crate::Pi7Wedge;

/// Symmetric integer matrix of an intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() || !m.is_symmetric() {
            return Err(Error::Precondition("Gram matrix must be square and symmetric".into()));
        }
        Ok(Self(m))
    }

    pub fn into_inner(self) -> IntMatrix {
        self.0
    }
}

impl Deref for GramMatrix {
    type Target = IntMatrix;

    fn deref(&self) -> &IntMatrix {
        &self.0
    }
}

/// `g_ii = sᵢ`, `g_ij = g_ji = w_ij`.
pub fn gram_of(l: &Pi7Wedge) -> GramMatrix {
    let k = l.k();
    GramMatrix(IntMatrix::from_fn(k, k, |i, j| if i == j { l.s(i) } else { l.w(i, j) }))
}
