//! Partitions of the ground set, optionally carrying a transversal witness.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{self, ElemSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<ElemSet>,
    /// One element per block, forming an independent set of the constraint
    /// matroid. Aligned with `blocks`.
    witness: Option<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks, validating disjointness and coverage.
    /// Blocks are stored sorted by their smallest element.
    pub fn new(n: usize, blocks: Vec<ElemSet>) -> Result<Self> {
        let mut seen: ElemSet = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b & !set::full_set(n) != 0 {
                return Err(Error::InvalidPartition("block out of range".into()));
            }
            if b & seen != 0 {
                return Err(Error::InvalidPartition("blocks are not disjoint".into()));
            }
            seen |= b;
        }
        if seen != set::full_set(n) {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|&b| b.trailing_zeros());
        Ok(Partition { blocks, witness: None })
    }

    pub fn with_witness(mut self, witness: Vec<usize>) -> Result<Self> {
        if witness.len() != self.blocks.len() {
            return Err(Error::InvalidPartition("witness size differs from block count".into()));
        }
        for (i, &e) in witness.iter().enumerate() {
            if !set::contains(self.blocks[i], e) {
                return Err(Error::InvalidPartition(format!(
                    "witness element {e} not in block {i}"
                )));
            }
        }
        self.witness = Some(witness);
        Ok(self)
    }

    pub fn blocks(&self) -> &[ElemSet] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.witness.as_deref()
    }

    pub fn witness_set(&self) -> Option<ElemSet> {
        self.witness
            .as_ref()
            .map(|w| set::from_elems(w.iter().copied()))
    }

    /// Checks that the attached witness is a transversal independent in `m`
    /// with exactly `k` elements, one per block.
    pub fn verify_witness(&self, m: &Matroid) -> Result<()> {
        let Some(w) = &self.witness else {
            return Err(Error::InvalidPartition("no witness attached".into()));
        };
        let mask = set::from_elems(w.iter().copied());
        if set::size(mask) != self.blocks.len() {
            return Err(Error::InvalidPartition("witness elements are not distinct".into()));
        }
        if !m.is_independent(mask)? {
            return Err(Error::PropertyViolation("witness is not independent".into()));
        }
        Ok(())
    }
}
