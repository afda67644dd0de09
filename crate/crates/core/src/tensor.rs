//! Dense complex tensors representing pure multipartite states.
//!
//! A state on m parties with local dimensions n_1..n_m is stored as a flat
//! row-major array of Π n_i complex amplitudes. All operations are pure
//! functions on immutable inputs; a constructed tensor never changes.

use num_complex::Complex64;

use crate::error::{GmeError, Result};
use crate::partition::Partition;

/// Dense m-way array of complex amplitudes, one index per party.
///
/// Entries are laid out in row-major lexicographic order: the last index
/// varies fastest. Construction rejects NaN/Inf amplitudes so every norm
/// downstream is a total function.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTensor {
    dims: Vec<usize>,
    data: Vec<Complex64>,
}

impl ComplexTensor {
    /// Builds a tensor from per-party dimensions and a flat amplitude array.
    pub fn new(dims: Vec<usize>, data: Vec<Complex64>) -> Result<Self> {
        if dims.iter().any(|&d| d == 0) {
            return Err(GmeError::DimensionMismatch(
                "every party dimension must be >= 1".into(),
            ));
        }
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(GmeError::DimensionMismatch(format!(
                "data length {} does not match product of dims {}",
                data.len(),
                len
            )));
        }
        for (i, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(GmeError::NonFiniteAmplitude(i));
            }
        }
        Ok(Self { dims, data })
    }

    /// All-zero tensor with the given dimensions.
    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len: usize = dims.iter().product();
        Self::new(dims, vec![Complex64::ZERO; len])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of parties (tensor order). Zero for a scalar left over after
    /// contracting every mode.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// The single entry of an order-0 tensor.
    pub fn scalar(&self) -> Option<Complex64> {
        if self.dims.is_empty() {
            Some(self.data[0])
        } else {
            None
        }
    }

    /// Row-major flat offset of a multi-index.
    pub fn flat_index(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.dims.len() {
            return Err(GmeError::DimensionMismatch(format!(
                "index arity {} vs tensor order {}",
                idx.len(),
                self.dims.len()
            )));
        }
        let mut flat = 0usize;
        for (&i, &d) in idx.iter().zip(&self.dims) {
            if i >= d {
                return Err(GmeError::DimensionMismatch(format!(
                    "index {i} out of range for dimension {d}"
                )));
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn get(&self, idx: &[usize]) -> Result<Complex64> {
        Ok(self.data[self.flat_index(idx)?])
    }

    /// sqrt of the summed squared moduli of all entries.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Scales all entries by one real positive factor so the Frobenius norm
    /// becomes 1. Fails on the zero tensor.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return Err(GmeError::ZeroTensor);
        }
        let inv = 1.0 / norm;
        let data = self.data.iter().map(|z| z * inv).collect();
        Ok(Self {
            dims: self.dims.clone(),
            data,
        })
    }

    /// Contracts one mode against a vector using the bra convention:
    ///
    /// result[i_1..î_k..i_m] = Σ_{i_k} conj(v[i_k]) · T[i_1..i_k..i_m]
    ///
    /// so contracting against every factor of a product state yields ⟨φ|ψ⟩.
    pub fn mode_contract(&self, mode: usize, v: &[Complex64]) -> Result<Self> {
        if mode >= self.dims.len() {
            return Err(GmeError::DimensionMismatch(format!(
                "mode {mode} out of range for order {}",
                self.dims.len()
            )));
        }
        if v.len() != self.dims[mode] {
            return Err(GmeError::DimensionMismatch(format!(
                "vector length {} vs dimension {} of mode {mode}",
                v.len(),
                self.dims[mode]
            )));
        }
        let d = self.dims[mode];
        // stride of `mode`, and the size of the blocks to its left/right
        let inner: usize = self.dims[mode + 1..].iter().product();
        let outer: usize = self.dims[..mode].iter().product();
        let mut out = vec![Complex64::ZERO; outer * inner];
        let vconj: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        for o in 0..outer {
            let src_base = o * d * inner;
            let dst_base = o * inner;
            for (i, &c) in vconj.iter().enumerate() {
                let src = &self.data[src_base + i * inner..src_base + (i + 1) * inner];
                let dst = &mut out[dst_base..dst_base + inner];
                for (dz, sz) in dst.iter_mut().zip(src) {
                    *dz += c * sz;
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.remove(mode);
        Ok(Self { dims, data: out })
    }

    /// Applies a square matrix to one mode: T'[..i'..] = Σ_i U[i',i]·T[..i..].
    /// Used for local basis changes; a unitary U leaves the norm unchanged.
    pub fn mode_apply_matrix(&self, mode: usize, u: &[Vec<Complex64>]) -> Result<Self> {
        if mode >= self.dims.len() {
            return Err(GmeError::DimensionMismatch(format!(
                "mode {mode} out of range for order {}",
                self.dims.len()
            )));
        }
        let d = self.dims[mode];
        if u.len() != d || u.iter().any(|row| row.len() != d) {
            return Err(GmeError::DimensionMismatch(format!(
                "matrix must be {d}x{d} for mode {mode}"
            )));
        }
        let inner: usize = self.dims[mode + 1..].iter().product();
        let outer: usize = self.dims[..mode].iter().product();
        let mut out = vec![Complex64::ZERO; self.data.len()];
        for o in 0..outer {
            let base = o * d * inner;
            for (ip, row) in u.iter().enumerate() {
                let dst_base = base + ip * inner;
                for (i, &c) in row.iter().enumerate() {
                    let src = &self.data[base + i * inner..base + (i + 1) * inner];
                    for (k, sz) in src.iter().enumerate() {
                        out[dst_base + k] += c * sz;
                    }
                }
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            data: out,
        })
    }

    /// ⟨φ|ψ⟩ for a product state φ given by per-party factors:
    /// Σ conj(a¹⊗…⊗aᵐ)·T. By Cauchy–Schwarz its modulus is bounded by
    /// ‖T‖ when the factors are unit vectors.
    pub fn full_overlap(&self, factors: &[Vec<Complex64>]) -> Result<Complex64> {
        if factors.len() != self.dims.len() {
            return Err(GmeError::DimensionMismatch(format!(
                "{} factors vs tensor order {}",
                factors.len(),
                self.dims.len()
            )));
        }
        let mut cur = self.clone();
        // contract highest mode first so strides of earlier modes stay valid
        for (mode, v) in factors.iter().enumerate().rev() {
            cur = cur.mode_contract(mode, v)?;
        }
        Ok(cur.data[0])
    }

    /// Reorders parties: result index (i_{perm[0]}, …, i_{perm[m-1]}).
    pub fn permute_modes(&self, perm: &[usize]) -> Result<Self> {
        let m = self.dims.len();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true))
        {
            return Err(GmeError::DimensionMismatch(format!(
                "invalid mode permutation {perm:?} for order {m}"
            )));
        }
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = vec![Complex64::ZERO; self.data.len()];
        let mut digits = vec![0usize; m];
        for slot in out.iter_mut() {
            let mut src = 0usize;
            for (j, &d) in digits.iter().enumerate() {
                src += d * strides[perm[j]];
            }
            *slot = self.data[src];
            for j in (0..m).rev() {
                digits[j] += 1;
                if digits[j] < new_dims[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        Self::new(new_dims, out)
    }

    /// Regroups parties into one index per partition block. Block dimension
    /// is the product of its members' dims; a block's members map to a
    /// mixed-radix composite index in ascending party order. Entries are
    /// relocated bijectively, no arithmetic, so the Frobenius norm is
    /// preserved exactly.
    pub fn merge_indices(&self, partition: &Partition) -> Result<Self> {
        partition.check_arity(self.dims.len())?;
        let perm: Vec<usize> = partition.blocks().iter().flatten().copied().collect();
        let merged_dims: Vec<usize> = partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&p| self.dims[p]).product())
            .collect();
        let m = self.dims.len();
        // strides of the original layout
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        let mut out = vec![Complex64::ZERO; self.data.len()];
        // walk destination indices in order; digit j runs over perm[j]
        let perm_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut digits = vec![0usize; m];
        for slot in out.iter_mut() {
            let mut src = 0usize;
            for (j, &d) in digits.iter().enumerate() {
                src += d * strides[perm[j]];
            }
            *slot = self.data[src];
            for j in (0..m).rev() {
                digits[j] += 1;
                if digits[j] < perm_dims[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        Self::new(merged_dims, out)
    }
}

/// The nearest product state: one unit vector per party plus the overlap λ.
///
/// After gauge fixing (a global phase pushed into the first factor) the
/// overlap is real and non-negative.
#[derive(Debug, Clone)]
pub struct RankOneState {
    pub factors: Vec<Vec<Complex64>>,
    pub overlap: Complex64,
}

impl RankOneState {
    /// The rank-one tensor λ·a¹∘…∘aᵐ reassembled from the factors.
    pub fn to_tensor(&self) -> Result<ComplexTensor> {
        let dims: Vec<usize> = self.factors.iter().map(|f| f.len()).collect();
        let len: usize = dims.iter().product();
        let mut data = vec![self.overlap; len];
        let mut block = len;
        for f in &self.factors {
            block /= f.len();
            for (i, slot) in data.iter_mut().enumerate() {
                *slot *= f[(i / block) % f.len()];
            }
        }
        ComplexTensor::new(dims, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_norm_is_one() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = ComplexTensor::new(
            vec![2, 2],
            vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(t.frobenius_norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_tensor_norm_and_normalize() {
        let t = ComplexTensor::zeros(vec![2, 2, 2]).unwrap();
        assert_eq!(t.frobenius_norm(), 0.0);
        assert!(matches!(t.normalize(), Err(GmeError::ZeroTensor)));
    }

    #[test]
    fn single_entry_modulus() {
        let t = ComplexTensor::new(vec![1], vec![c(3.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(t.frobenius_norm(), 5.0, epsilon = 1e-14);
    }

    #[test]
    fn normalize_all_ones() {
        let t = ComplexTensor::new(vec![2, 2], vec![c(1.0, 0.0); 4]).unwrap();
        let n = t.normalize().unwrap();
        for z in n.data() {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let t = ComplexTensor::new(vec![2], vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let n = t.normalize().unwrap();
        let n2 = n.normalize().unwrap();
        for (a, b) in n.data().iter().zip(n2.data()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_nan() {
        let r = ComplexTensor::new(vec![2], vec![c(f64::NAN, 0.0), c(0.0, 0.0)]);
        assert!(matches!(r, Err(GmeError::NonFiniteAmplitude(0))));
    }

    #[test]
    fn mode_contract_identity_over_sqrt2() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = ComplexTensor::new(
            vec![2, 2],
            vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
        )
        .unwrap();
        let r = t
            .mode_contract(0, &[c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert_eq!(r.dims(), &[2]);
        assert_abs_diff_eq!(r.data()[0].re, s, epsilon = 1e-14);
        assert_abs_diff_eq!(r.data()[1].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn w_state_mode_contract() {
        // |W> on 3 qubits = S(3,2); picking the |1> branch of party 1
        // leaves the single amplitude 1/sqrt(3) at (0,0)
        let w = crate::states::dicke_state(3, 2).unwrap();
        let r = w.mode_contract(0, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.dims(), &[2, 2]);
        assert_abs_diff_eq!(r.get(&[0, 0]).unwrap().re, 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.get(&[0, 1]).unwrap().norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.get(&[1, 0]).unwrap().norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.get(&[1, 1]).unwrap().norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn product_state_self_overlap() {
        let a = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let b = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let p = RankOneState {
            factors: vec![a.clone(), b.clone()],
            overlap: c(1.0, 0.0),
        };
        let t = p.to_tensor().unwrap();
        let lam = t.full_overlap(&[a, b]).unwrap();
        assert_abs_diff_eq!(lam.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lam.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_factor_overlap_is_zero() {
        let w = crate::states::dicke_state(3, 2).unwrap();
        // all-|1> product state is orthogonal to W's single-excitation support
        let f = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let lam = w.full_overlap(&[f.clone(), f.clone(), f]).unwrap();
        assert_abs_diff_eq!(lam.norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn dicke_42_symmetric_factor_overlap() {
        // S(4,2) against (1/sqrt2, 1/sqrt2) on each party -> Table 1 value
        let t = crate::states::dicke_state(4, 2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f = vec![c(s, 0.0), c(s, 0.0)];
        let lam = t.full_overlap(&[f.clone(), f.clone(), f.clone(), f]).unwrap();
        assert_abs_diff_eq!(lam.re, 0.6124, epsilon = 1e-4);
    }

    #[test]
    fn merge_2x3x4() {
        let data: Vec<Complex64> = (0..24).map(|i| c(i as f64, -(i as f64))).collect();
        let t = ComplexTensor::new(vec![2, 3, 4], data).unwrap();
        let p = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
        let m = t.merge_indices(&p).unwrap();
        assert_eq!(m.dims(), &[6, 4]);
        // entry ((i,j),k) must equal T[i,j,k]
        assert_eq!(m.get(&[5, 3]).unwrap(), t.get(&[1, 2, 3]).unwrap());
        assert_eq!(m.get(&[2, 1]).unwrap(), t.get(&[0, 2, 1]).unwrap());
        assert_abs_diff_eq!(m.frobenius_norm(), t.frobenius_norm(), epsilon = 0.0);
    }

    #[test]
    fn merge_w5_bipartition() {
        let w = crate::states::w_state(5).unwrap();
        let p = Partition::new(vec![vec![0], vec![1, 2, 3, 4]], 5).unwrap();
        let m = w.merge_indices(&p).unwrap();
        assert_eq!(m.dims(), &[2, 16]);
        assert_abs_diff_eq!(m.frobenius_norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn merge_singletons_is_identity() {
        let data: Vec<Complex64> = (0..8).map(|i| c(i as f64, 1.0)).collect();
        let t = ComplexTensor::new(vec![2, 2, 2], data).unwrap();
        let p = Partition::singletons(3);
        let m = t.merge_indices(&p).unwrap();
        assert_eq!(m, t);
    }

    #[test]
    fn merge_non_contiguous_block() {
        let data: Vec<Complex64> = (0..8).map(|i| c(i as f64, 0.0)).collect();
        let t = ComplexTensor::new(vec![2, 2, 2], data).unwrap();
        let p = Partition::new(vec![vec![0, 2], vec![1]], 3).unwrap();
        let m = t.merge_indices(&p).unwrap();
        assert_eq!(m.dims(), &[4, 2]);
        // composite index (i0,i2) in ascending party order
        assert_eq!(m.get(&[3, 0]).unwrap(), t.get(&[1, 0, 1]).unwrap());
        assert_eq!(m.get(&[1, 1]).unwrap(), t.get(&[0, 1, 1]).unwrap());
    }
}
