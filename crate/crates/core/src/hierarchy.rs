//! Entanglement hierarchies by index merging.
//!
//! Grouping parties into blocks and merging each block into one tensor index
//! measures the distance to K-separable states: the coarser the partition,
//! the closer some product state can get, so overlap is monotone under
//! coarsening. Partition evaluations are independent and run through the
//! crate's data-parallel map.

use crate::error::Result;
use crate::optimizer::{best_rank_one_sequential, OptimizerConfig};
use crate::parallel::run_indexed;
use crate::partition::{enumerate_partitions, Partition};
use crate::tensor::ComplexTensor;

/// One evaluated partition: merged dims, overlap and E.
#[derive(Debug, Clone)]
pub struct HierarchyRow {
    pub partition: Partition,
    pub merged_dims: Vec<usize>,
    pub overlap: f64,
    pub entanglement: f64,
}

/// Hierarchy of a single source tensor over all its partitions (or one row
/// per block-size signature for symmetric states).
#[derive(Debug, Clone)]
pub struct HierarchyReport {
    pub rows: Vec<HierarchyRow>,
}

/// GME of the tensor merged along one partition.
pub fn partition_gme(
    t: &ComplexTensor,
    partition: &Partition,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    let merged = t.merge_indices(partition)?;
    let r = best_rank_one_sequential(&merged, cfg)?;
    Ok((r.overlap, r.entanglement))
}

fn signature_key(sig: &[usize]) -> String {
    sig.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Evaluates every partition of the tensor's parties. With
/// `group_by_signature` the report keeps, per block-size signature, the row
/// with the maximal overlap (minimal E) — the convention used when tabulating
/// symmetric states, where all partitions of a signature agree anyway.
pub fn hierarchy_report(
    t: &ComplexTensor,
    cfg: &OptimizerConfig,
    group_by_signature: bool,
) -> Result<HierarchyReport> {
    let partitions = enumerate_partitions(t.dims().len(), None)?;
    let evaluated: Vec<Result<HierarchyRow>> = run_indexed(partitions.len(), true, |i| {
        let p = &partitions[i];
        let merged = t.merge_indices(p)?;
        let r = best_rank_one_sequential(&merged, cfg)?;
        Ok(HierarchyRow {
            partition: p.clone(),
            merged_dims: merged.dims().to_vec(),
            overlap: r.overlap,
            entanglement: r.entanglement,
        })
    });
    let mut rows = Vec::with_capacity(evaluated.len());
    for r in evaluated {
        rows.push(r?);
    }
    if group_by_signature {
        let mut best: Vec<HierarchyRow> = Vec::new();
        for row in rows {
            let key = signature_key(&row.partition.signature());
            match best
                .iter_mut()
                .find(|b| signature_key(&b.partition.signature()) == key)
            {
                Some(b) if row.overlap > b.overlap => *b = row,
                Some(_) => {}
                None => best.push(row),
            }
        }
        rows = best;
    }
    // coarse to fine: fewer blocks first, then signature lexicographically
    rows.sort_by(|a, b| {
        (a.partition.num_blocks(), a.partition.signature(), a.partition.blocks().to_vec()).cmp(&(
            b.partition.num_blocks(),
            b.partition.signature(),
            b.partition.blocks().to_vec(),
        ))
    });
    Ok(HierarchyReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_block_is_rank_one() {
        let t = states::dicke_state(3, 1).unwrap();
        let p = Partition::new(vec![vec![0, 1, 2]], 3).unwrap();
        let (lam, e) = partition_gme(&t, &p, &OptimizerConfig::default()).unwrap();
        assert_abs_diff_eq!(lam, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(e, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn w5_bipartition_one_four() {
        let t = states::w_state(5).unwrap();
        let p = Partition::new(vec![vec![0], vec![1, 2, 3, 4]], 5).unwrap();
        let (lam, e) = partition_gme(&t, &p, &OptimizerConfig::default()).unwrap();
        assert_abs_diff_eq!(lam, 0.8944, epsilon = 5e-4);
        assert_abs_diff_eq!(e, 0.2000, epsilon = 5e-4);
    }

    #[test]
    fn w5_partition_one_two_two() {
        let t = states::w_state(5).unwrap();
        let p = Partition::new(vec![vec![0], vec![1, 2], vec![3, 4]], 5).unwrap();
        let (_, e) = partition_gme(&t, &p, &OptimizerConfig::default()).unwrap();
        assert_abs_diff_eq!(e, 0.5429, epsilon = 5e-4);
    }

    #[test]
    fn singleton_partition_matches_plain_gme() {
        let t = states::dicke_state(4, 2).unwrap();
        let cfg = OptimizerConfig::default();
        let (lam, _) = partition_gme(&t, &Partition::singletons(4), &cfg).unwrap();
        let direct = crate::optimizer::best_rank_one_sequential(&t, &cfg).unwrap();
        assert_eq!(lam.to_bits(), direct.overlap.to_bits());
    }

    #[test]
    fn product_state_hierarchy_is_flat() {
        let t = states::dicke_state(5, 0).unwrap();
        let cfg = OptimizerConfig::default().with_restarts(5);
        let report = hierarchy_report(&t, &cfg, true).unwrap();
        assert_eq!(report.rows.len(), 7); // 7 signatures of 5 parties
        for row in &report.rows {
            assert_abs_diff_eq!(row.entanglement, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn signature_grouping_matches_table_rows() {
        let t = states::w_state(5).unwrap();
        let cfg = OptimizerConfig::default().with_restarts(8);
        let report = hierarchy_report(&t, &cfg, true).unwrap();
        let find = |sig: &[usize]| {
            report
                .rows
                .iter()
                .find(|r| r.partition.signature() == sig)
                .unwrap()
        };
        assert_abs_diff_eq!(find(&[1, 4]).overlap, 0.8944, epsilon = 5e-4);
        assert_abs_diff_eq!(find(&[2, 3]).overlap, 0.7745, epsilon = 5e-4);
        assert_abs_diff_eq!(find(&[1, 1, 1, 1, 1]).entanglement, 0.5904, epsilon = 5e-4);
    }
}
