//! JSON state files.
//!
//! Format: `{"dims": [2,2,2], "amplitudes": [{"idx": [0,0,1], "re": 0.57735,
//! "im": 0.0}, ...]}`. Index tuples not listed are zero. Merged indices use
//! ascending-party mixed-radix composite labels, so files written from
//! merged tensors stay stable across versions.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GmeError, Result};
use crate::tensor::ComplexTensor;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub idx: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<AmplitudeEntry>,
}

impl StateFile {
    pub fn from_tensor(t: &ComplexTensor) -> Self {
        let dims = t.dims().to_vec();
        let mut amplitudes = Vec::new();
        let mut idx = vec![0usize; dims.len()];
        for z in t.data() {
            if z.norm() > 0.0 {
                amplitudes.push(AmplitudeEntry {
                    idx: idx.clone(),
                    re: z.re,
                    im: z.im,
                });
            }
            for j in (0..dims.len()).rev() {
                idx[j] += 1;
                if idx[j] < dims[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        Self { dims, amplitudes }
    }

    /// Materializes the tensor; normalizes unless told not to. A repeated
    /// index tuple overwrites the earlier entry.
    pub fn to_tensor(&self, normalize: bool) -> Result<ComplexTensor> {
        let mut t = ComplexTensor::zeros(self.dims.clone())?;
        let mut data = t.data().to_vec();
        for e in &self.amplitudes {
            let flat = t.flat_index(&e.idx).map_err(|err| {
                GmeError::MalformedStateFile(format!("bad index {:?}: {err}", e.idx))
            })?;
            data[flat] = Complex64::new(e.re, e.im);
        }
        t = ComplexTensor::new(self.dims.clone(), data)?;
        if normalize {
            t.normalize()
        } else {
            Ok(t)
        }
    }
}

pub fn load_state(path: &Path, normalize: bool) -> Result<ComplexTensor> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| GmeError::MalformedStateFile(e.to_string()))?;
    file.to_tensor(normalize)
}

pub fn save_state(path: &Path, t: &ComplexTensor) -> Result<()> {
    let file = StateFile::from_tensor(t);
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| GmeError::MalformedStateFile(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    #[test]
    fn round_trip_preserves_amplitudes() {
        let t = states::hs_state(1.3).unwrap();
        let file = StateFile::from_tensor(&t);
        let back = file.to_tensor(false).unwrap();
        for (a, b) in t.data().iter().zip(back.data()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn loader_normalizes_by_default() {
        let file = StateFile {
            dims: vec![2, 2],
            amplitudes: vec![
                AmplitudeEntry {
                    idx: vec![0, 0],
                    re: 2.0,
                    im: 0.0,
                },
                AmplitudeEntry {
                    idx: vec![1, 1],
                    re: 2.0,
                    im: 0.0,
                },
            ],
        };
        let t = file.to_tensor(true).unwrap();
        assert_abs_diff_eq!(t.frobenius_norm(), 1.0, epsilon = 1e-14);
        let raw = file.to_tensor(false).unwrap();
        assert_abs_diff_eq!(raw.frobenius_norm(), 8f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn bad_index_is_malformed() {
        let file = StateFile {
            dims: vec![2, 2],
            amplitudes: vec![AmplitudeEntry {
                idx: vec![0, 2],
                re: 1.0,
                im: 0.0,
            }],
        };
        assert!(matches!(
            file.to_tensor(true),
            Err(GmeError::MalformedStateFile(_))
        ));
    }

    #[test]
    fn file_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let t = states::phi_state(4, 1).unwrap();
        save_state(&path, &t).unwrap();
        let back = load_state(&path, true).unwrap();
        for (a, b) in t.data().iter().zip(back.data()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
