use crate::error::{Error, Result};
use crate::quaternion::{is_unit_vector, Quaternion, DEFAULT_TOLERANCE};

/// `p` unit-quaternion vectors of common length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalMemorySet {
    n: usize,
    memories: Vec<Vec<Quaternion>>,
}

impl FundamentalMemorySet {
    pub fn new(memories: Vec<Vec<Quaternion>>) -> Result<Self> {
        let first = memories
            .first()
            .ok_or_else(|| Error::InvalidMemorySet("at least one memory is required".into()))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidMemorySet("memories must have length >= 1".into()));
        }
        for (xi, u) in memories.iter().enumerate() {
            if u.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: u.len(),
                });
            }
            if !is_unit_vector(u, DEFAULT_TOLERANCE) {
                return Err(Error::InvalidMemorySet(format!(
                    "memory {xi} has a component that is not a unit quaternion"
                )));
            }
        }
        Ok(Self { n, memories })
    }

    /// Bipolar memories from `±1` entries.
    pub fn from_bipolar(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Quaternion::real(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.memories.len()
    }

    pub fn get(&self, xi: usize) -> &[Quaternion] {
        &self.memories[xi]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Quaternion]> {
        self.memories.iter().map(Vec::as_slice)
    }
}
