use discretization::StateField;

use crate::error::DdmError;

/// Vertical strips `cuts[q]..cuts[q + 1]` of grid columns; interface `q`
/// lies between strips `q` and `q + 1`, with strip `q` upstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    cuts: Vec<usize>,
}

impl Decomposition {
    pub fn from_cuts(cuts: Vec<usize>) -> Result<Self, DdmError> {
        if cuts.len() < 2 || cuts[0] != 0 {
            return Err(DdmError::Decomposition(format!("cuts must start at 0 and name at least one strip: {cuts:?}")));
        }
        if cuts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DdmError::Decomposition(format!("strips must be non-empty and ordered: {cuts:?}")));
        }
        Ok(Self { cuts })
    }

    /// `n` strips of (nearly) equal width.
    pub fn uniform(nx: usize, n: usize) -> Result<Self, DdmError> {
        if n == 0 || n > nx {
            return Err(DdmError::Decomposition(format!("cannot cut {nx} columns into {n} strips")));
        }
        Self::from_cuts((0..=n).map(|q| q * nx / n).collect())
    }

    pub fn n_strips(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn n_interfaces(&self) -> usize {
        self.cuts.len() - 2
    }

    pub fn strip(&self, q: usize) -> (usize, usize) {
        (self.cuts[q], self.cuts[q + 1])
    }

    /// Column index of the first cell right of interface `k`.
    pub fn interface_column(&self, k: usize) -> usize {
        self.cuts[k + 1]
    }

    pub fn nx(&self) -> usize {
        *self.cuts.last().expect("non-empty")
    }

    /// Checks that the strips tile `nx` columns and that the flow crosses
    /// every interface from left to right.
    pub fn check(&self, nx: usize, states: &StateField) -> Result<(), DdmError> {
        if self.nx() != nx {
            return Err(DdmError::Decomposition(format!("strips cover {} columns, grid has {nx}", self.nx())));
        }
        if self.n_interfaces() > 0 {
            for s in states.rows() {
                s.require_outflow()?;
            }
        }
        Ok(())
    }
}
