//! Monte Carlo search for highly entangled 0/1-coefficient states and
//! parameter sweeps over state families.
//!
//! A search sample places `ones_count` unit amplitudes on distinct basis
//! indices of an n-qubit register, normalizes, and optimizes. Each sample
//! draws its support and its optimizer seed from a dedicated ChaCha
//! substream, so the ranked output is identical whether samples run on one
//! thread or many.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GmeError, Result};
use crate::optimizer::{best_rank_one_sequential, OptimizerConfig};
use crate::parallel::run_indexed;
use crate::states::StateFamily;
use crate::tensor::ComplexTensor;

/// Monte Carlo search parameters.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n_qubits: usize,
    /// Unit amplitudes per sample; fixed within one search run.
    pub ones_count: usize,
    pub samples: usize,
    pub seed: u64,
    /// Per-sample optimizer budget (kept small for throughput; the risk of
    /// stopping in a local minimum is handled by the confirmation pass).
    pub optimizer: OptimizerConfig,
    pub keep_top: usize,
    /// Restart budget for re-evaluating the surviving candidates.
    pub confirm_restarts: usize,
}

impl SearchConfig {
    pub fn new(n_qubits: usize, ones_count: usize, samples: usize, seed: u64) -> Self {
        Self {
            n_qubits,
            ones_count,
            samples,
            seed,
            optimizer: OptimizerConfig {
                restarts: 8,
                ..OptimizerConfig::default()
            },
            keep_top: 10,
            confirm_restarts: 30,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_qubits < 2 {
            return Err(GmeError::InvalidParams("need at least 2 qubits".into()));
        }
        if self.samples == 0 {
            return Err(GmeError::InvalidParams("samples must be >= 1".into()));
        }
        if self.keep_top == 0 {
            return Err(GmeError::InvalidParams("keep_top must be >= 1".into()));
        }
        let space = 1usize << self.n_qubits;
        if self.ones_count == 0 || self.ones_count > space {
            return Err(GmeError::InvalidParams(format!(
                "ones_count must be in 1..={space}, got {}",
                self.ones_count
            )));
        }
        Ok(())
    }
}

/// One search result: the support set (sorted basis indices) and its GME.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub support: Vec<usize>,
    pub overlap: f64,
    pub entanglement: f64,
}

/// Equal-amplitude state with unit entries on `support`, normalized.
pub fn support_state(n_qubits: usize, support: &[usize]) -> Result<ComplexTensor> {
    let len = 1usize << n_qubits;
    let mut data = vec![Complex64::ZERO; len];
    for &idx in support {
        if idx >= len {
            return Err(GmeError::InvalidParams(format!(
                "basis index {idx} out of range for {n_qubits} qubits"
            )));
        }
        data[idx] = Complex64::ONE;
    }
    ComplexTensor::new(vec![2; n_qubits], data)?.normalize()
}

fn evaluate_support(
    n_qubits: usize,
    support: &[usize],
    cfg: &OptimizerConfig,
) -> Result<SearchHit> {
    let t = support_state(n_qubits, support)?;
    let r = best_rank_one_sequential(&t, cfg)?;
    Ok(SearchHit {
        support: support.to_vec(),
        overlap: r.overlap,
        entanglement: r.entanglement,
    })
}

fn rank(mut hits: Vec<SearchHit>, keep_top: usize) -> Vec<SearchHit> {
    hits.sort_by(|a, b| {
        b.entanglement
            .total_cmp(&a.entanglement)
            .then_with(|| a.support.cmp(&b.support))
    });
    hits.truncate(keep_top);
    hits
}

/// Samples `cfg.samples` random supports, ranks them by entanglement,
/// deduplicates by support set, and re-confirms the survivors with a larger
/// restart budget. Deterministic for a given config.
pub fn mc_search(cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    cfg.validate()?;
    let space = 1usize << cfg.n_qubits;
    let hits: Vec<Result<SearchHit>> = run_indexed(cfg.samples, true, |j| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(j as u64 + 1);
        let support: Vec<usize> = {
            let mut s = rand::seq::index::sample(&mut rng, space, cfg.ones_count).into_vec();
            s.sort_unstable();
            s
        };
        let opt = OptimizerConfig {
            seed: rng.gen(),
            ..cfg.optimizer.clone()
        };
        evaluate_support(cfg.n_qubits, &support, &opt)
    });
    // dedup by support, keeping the best evaluation of each
    let mut by_support: HashMap<Vec<usize>, SearchHit> = HashMap::new();
    for h in hits {
        let h = h?;
        match by_support.get_mut(&h.support) {
            Some(existing) if existing.entanglement >= h.entanglement => {}
            Some(existing) => *existing = h,
            None => {
                by_support.insert(h.support.clone(), h);
            }
        }
    }
    let survivors = rank(by_support.into_values().collect(), cfg.keep_top);

    // confirmation pass with the full restart budget
    let confirm_cfg = OptimizerConfig {
        restarts: cfg.confirm_restarts,
        seed: cfg.seed,
        ..cfg.optimizer.clone()
    };
    let confirmed: Vec<Result<SearchHit>> = run_indexed(survivors.len(), true, |i| {
        evaluate_support(cfg.n_qubits, &survivors[i].support, &confirm_cfg)
    });
    let mut out = Vec::with_capacity(confirmed.len());
    for h in confirmed {
        out.push(h?);
    }
    Ok(rank(out, cfg.keep_top))
}

/// Evaluates every support of the given size; the oracle that Monte Carlo
/// results are checked against on small instances.
pub fn exhaustive_search(
    n_qubits: usize,
    ones_count: usize,
    cfg: &OptimizerConfig,
    cap: usize,
) -> Result<Vec<SearchHit>> {
    let space = 1usize << n_qubits;
    if ones_count == 0 || ones_count > space {
        return Err(GmeError::InvalidParams(format!(
            "ones_count must be in 1..={space}, got {ones_count}"
        )));
    }
    let mut count = 1u128;
    for i in 0..ones_count {
        count = count * (space - i) as u128 / (i + 1) as u128;
    }
    if count > cap as u128 {
        return Err(GmeError::CapExceeded {
            requested: count,
            cap: cap as u128,
        });
    }
    use itertools::Itertools;
    let supports: Vec<Vec<usize>> = (0..space).combinations(ones_count).collect();
    let hits: Vec<Result<SearchHit>> = run_indexed(supports.len(), true, |i| {
        evaluate_support(n_qubits, &supports[i], cfg)
    });
    let mut out = Vec::with_capacity(hits.len());
    for h in hits {
        out.push(h?);
    }
    let n = out.len();
    Ok(rank(out, n))
}

/// A family, the parameter to vary, and the grid to vary it over.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: StateFamily,
    pub parameter: String,
    pub grid: Vec<f64>,
}

/// One sweep row.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub value: f64,
    pub overlap: f64,
    pub entanglement: f64,
}

/// Runs the optimizer once per grid point, rows in grid order.
pub fn sweep(spec: &SweepSpec, cfg: &OptimizerConfig) -> Result<Vec<SweepPoint>> {
    if spec.grid.is_empty() {
        return Err(GmeError::InvalidParams("empty sweep grid".into()));
    }
    let points: Vec<Result<SweepPoint>> = run_indexed(spec.grid.len(), true, |i| {
        let value = spec.grid[i];
        let family = spec.family.clone().with_param(&spec.parameter, value);
        let t = family.state()?;
        let r = best_rank_one_sequential(&t, cfg)?;
        Ok(SweepPoint {
            value,
            overlap: r.overlap,
            entanglement: r.entanglement,
        })
    });
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        out.push(p?);
    }
    Ok(out)
}

/// Evenly spaced grid start..=stop with `count` points.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| start + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{FamilyName, StateFamily};
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_states_are_separable() {
        let hits = exhaustive_search(2, 1, &OptimizerConfig::default().with_restarts(4), 100)
            .unwrap();
        assert_eq!(hits.len(), 4);
        for h in &hits {
            assert_abs_diff_eq!(h.entanglement, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn two_qubit_pairs_top_out_at_bell() {
        let hits = exhaustive_search(2, 2, &OptimizerConfig::default().with_restarts(5), 100)
            .unwrap();
        assert_eq!(hits.len(), 6);
        assert_abs_diff_eq!(hits[0].entanglement, 0.5, epsilon = 1e-6);
        // Bell supports {00,11} and {01,10} lead the ranking
        assert_eq!(hits[0].support, vec![0, 3]);
        assert_eq!(hits[1].support, vec![1, 2]);
    }

    #[test]
    fn mc_matches_exhaustive_on_two_qubits() {
        let mut cfg = SearchConfig::new(2, 2, 200, 11);
        cfg.keep_top = 6;
        let mc = mc_search(&cfg).unwrap();
        let ex = exhaustive_search(2, 2, &OptimizerConfig::default().with_restarts(5), 100)
            .unwrap();
        assert_abs_diff_eq!(mc[0].entanglement, ex[0].entanglement, epsilon = 1e-6);
    }

    #[test]
    fn search_rejects_zero_samples() {
        let cfg = SearchConfig::new(4, 4, 0, 1);
        assert!(matches!(mc_search(&cfg), Err(GmeError::InvalidParams(_))));
    }

    #[test]
    fn exhaustive_cap() {
        assert!(matches!(
            exhaustive_search(4, 8, &OptimizerConfig::default(), 10),
            Err(GmeError::CapExceeded { .. })
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig::new(3, 3, 40, 99);
        let a = mc_search(&cfg).unwrap();
        let b = mc_search(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_rows_follow_grid_order() {
        let spec = SweepSpec {
            family: StateFamily::new(FamilyName::WSuperposition),
            parameter: "s".into(),
            grid: vec![0.0, 0.5, 1.0],
        };
        let rows = sweep(&spec, &OptimizerConfig::default().with_restarts(6)).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].value, 0.0);
        assert_eq!(rows[2].value, 1.0);
        assert_abs_diff_eq!(rows[0].overlap, 2.0 / 3.0, epsilon = 1e-6);
    }
}
