//! Party partitions and their enumeration.
//!
//! A partition groups the m parties into disjoint non-empty blocks; merging
//! the tensor indices of each block turns an m-party entanglement question
//! into a coarser one, which is how the hierarchy of K-separable distances
//! is computed.

use crate::error::{GmeError, Result};

/// Ordered grouping of party indices (0-based) into disjoint covering blocks.
///
/// Canonical form: members ascending inside each block, blocks sorted by
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    arity: usize,
}

impl Partition {
    /// Validates that `blocks` partition {0..arity-1} exactly once and
    /// stores the canonical form. Blocks may be non-contiguous.
    pub fn new(blocks: Vec<Vec<usize>>, arity: usize) -> Result<Self> {
        let mut seen = vec![false; arity];
        for b in &blocks {
            if b.is_empty() {
                return Err(GmeError::InvalidPartition("empty block".into()));
            }
            for &p in b {
                if p >= arity {
                    return Err(GmeError::InvalidPartition(format!(
                        "party {p} out of range for {arity} parties"
                    )));
                }
                if seen[p] {
                    return Err(GmeError::InvalidPartition(format!(
                        "party {p} appears in more than one block"
                    )));
                }
                seen[p] = true;
            }
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return Err(GmeError::InvalidPartition(format!(
                "party {p} is not covered"
            )));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { blocks, arity })
    }

    /// The finest partition: every party its own block.
    pub fn singletons(arity: usize) -> Self {
        Self {
            blocks: (0..arity).map(|p| vec![p]).collect(),
            arity,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Sorted block sizes, e.g. `[1, 4]` for a 1|2345 split of five parties.
    pub fn signature(&self) -> Vec<usize> {
        let mut sig: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sig.sort_unstable();
        sig
    }

    /// True if every block of `self` is contained in some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.arity != coarser.arity {
            return false;
        }
        let mut owner = vec![0usize; self.arity];
        for (i, b) in coarser.blocks.iter().enumerate() {
            for &p in b {
                owner[p] = i;
            }
        }
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&p| owner[p] == owner[b[0]]))
    }

    pub(crate) fn check_arity(&self, arity: usize) -> Result<()> {
        if self.arity != arity {
            return Err(GmeError::InvalidPartition(format!(
                "partition is over {} parties, tensor has {}",
                self.arity, arity
            )));
        }
        Ok(())
    }

    /// Human-readable 1-based form, e.g. `{1}|{2,3,4,5}`.
    pub fn display_one_based(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// All set partitions of {0..m-1} in canonical (restricted growth string)
/// order, optionally keeping only those with exactly `max_blocks` blocks.
/// Guarded at m <= 12 (Bell numbers explode beyond that).
pub fn enumerate_partitions(m: usize, block_count: Option<usize>) -> Result<Vec<Partition>> {
    if m == 0 {
        return Err(GmeError::InvalidPartition("no parties".into()));
    }
    if m > 12 {
        return Err(GmeError::TooManyParties(m));
    }
    let mut out = Vec::new();
    // restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; m];
    loop {
        let nblocks = rgs.iter().copied().max().unwrap() + 1;
        if block_count.map_or(true, |k| k == nblocks) {
            let mut blocks = vec![Vec::new(); nblocks];
            for (p, &b) in rgs.iter().enumerate() {
                blocks[b].push(p);
            }
            out.push(Partition::new(blocks, m)?);
        }
        // next string
        let mut i = m - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for r in rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!(enumerate_partitions(1, None).unwrap().len(), 1);
        assert_eq!(enumerate_partitions(3, None).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(5, None).unwrap().len(), 52);
        assert_eq!(enumerate_partitions(6, None).unwrap().len(), 203);
    }

    #[test]
    fn stirling_two_blocks_of_five() {
        assert_eq!(enumerate_partitions(5, Some(2)).unwrap().len(), 15);
    }

    #[test]
    fn too_many_parties() {
        assert!(matches!(
            enumerate_partitions(13, None),
            Err(GmeError::TooManyParties(13))
        ));
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![vec![0], vec![0, 1]], 2).is_err());
        assert!(Partition::new(vec![vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![0], vec![]], 1).is_err());
        assert!(Partition::new(vec![vec![0, 2]], 2).is_err());
    }

    #[test]
    fn canonical_order_and_signature() {
        let p = Partition::new(vec![vec![3, 1], vec![2, 0]], 4).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(p.signature(), vec![2, 2]);
        assert_eq!(p.display_one_based(), "{1,3}|{2,4}");
    }

    #[test]
    fn refinement() {
        let fine = Partition::singletons(4);
        let coarse = Partition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&coarse));
    }
}
