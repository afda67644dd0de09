//! Named states, parametric families, and closed-form overlap oracles.
//!
//! The constructors here cover symmetric Dicke states, W superpositions,
//! qudit symmetric states, weighted W states, the HS / L / BSSB families and
//! a catalog of highly entangled 0/1-coefficient states. Each oracle gives
//! the overlap in closed form, independently of the alternating optimizer,
//! so the two routes can be checked against each other.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{GmeError, Result};
use crate::partition::Partition;
use crate::tensor::ComplexTensor;

/// Default cap on the number of complex amplitudes a constructor may
/// allocate (2^28 entries = 4 GiB).
pub const DEFAULT_MEMORY_CAP: u128 = 1 << 28;

fn check_cap(entries: u128, cap: u128) -> Result<()> {
    if entries > cap {
        return Err(GmeError::CapacityExceeded {
            requested: entries,
            cap,
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Builds a unit-norm n-qubit tensor from (coefficient, bitstring) terms.
fn state_from_kets(n: usize, terms: &[(Complex64, &str)]) -> Result<ComplexTensor> {
    let mut t = ComplexTensor::zeros(vec![2; n])?;
    let mut data = t.data().to_vec();
    for (coeff, ket) in terms {
        if ket.len() != n || ket.bytes().any(|b| b != b'0' && b != b'1') {
            return Err(GmeError::InvalidParams(format!(
                "ket {ket} is not an {n}-bit string"
            )));
        }
        let idx = usize::from_str_radix(ket, 2).expect("validated binary string");
        data[idx] += coeff;
    }
    t = ComplexTensor::new(vec![2; n], data)?;
    t.normalize()
}

/// Symmetric Dicke state S(n,k): equal superposition of all n-qubit basis
/// states with exactly k zeros, amplitude sqrt(k!(n−k)!/n!) each.
pub fn dicke_state(n: usize, k: usize) -> Result<ComplexTensor> {
    if n == 0 || k > n {
        return Err(GmeError::InvalidParams(format!(
            "dicke state needs n >= 1 and 0 <= k <= n, got n={n} k={k}"
        )));
    }
    check_cap(1u128 << n, DEFAULT_MEMORY_CAP)?;
    let amp = Complex64::new(1.0 / binomial(n, k).sqrt(), 0.0);
    let len = 1usize << n;
    let mut data = vec![Complex64::ZERO; len];
    for (idx, slot) in data.iter_mut().enumerate() {
        let zeros = n - idx.count_ones() as usize;
        if zeros == k {
            *slot = amp;
        }
    }
    ComplexTensor::new(vec![2; n], data)
}

/// Single-excitation W state on n qubits, S(n, n−1).
pub fn w_state(n: usize) -> Result<ComplexTensor> {
    dicke_state(n, n.checked_sub(1).ok_or_else(|| {
        GmeError::InvalidParams("w state needs n >= 1".into())
    })?)
}

/// GHZ state (|0…0⟩ + |1…1⟩)/√2 on n qubits.
pub fn ghz_state(n: usize) -> Result<ComplexTensor> {
    if n == 0 {
        return Err(GmeError::InvalidParams("ghz state needs n >= 1".into()));
    }
    check_cap(1u128 << n, DEFAULT_MEMORY_CAP)?;
    let len = 1usize << n;
    let mut data = vec![Complex64::ZERO; len];
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    data[0] = amp;
    data[len - 1] = amp;
    ComplexTensor::new(vec![2; n], data)
}

/// Closed-form overlap of S(n,k):
/// Λ = sqrt(n!/(k!(n−k)!)) · (k/n)^{k/2} · ((n−k)/n)^{(n−k)/2}, with 0⁰ := 1
/// so the separable endpoints k = 0 and k = n give exactly 1.
pub fn dicke_overlap_oracle(n: usize, k: usize) -> Result<f64> {
    if n == 0 || k > n {
        return Err(GmeError::InvalidParams(format!(
            "need n >= 1 and 0 <= k <= n, got n={n} k={k}"
        )));
    }
    // evaluate via (min, max) of (k, n-k) so the k <-> n-k symmetry of the
    // formula holds bit-exactly, with 0^0 := 1 at the separable endpoints
    let nf = n as f64;
    let lo = k.min(n - k) as f64;
    let hi = k.max(n - k) as f64;
    let a = if lo == 0.0 { 1.0 } else { (lo / nf).powf(lo / 2.0) };
    let b = if hi == 0.0 { 1.0 } else { (hi / nf).powf(hi / 2.0) };
    Ok(binomial(n, k).sqrt() * a * b)
}

/// √s·|S(3,2)⟩ + √(1−s)·e^{iφ}·|S(3,1)⟩ on three qubits. The two Dicke
/// components have disjoint supports, so the result is unit norm for any s.
pub fn w_superposition_state(s: f64, phi: f64) -> Result<ComplexTensor> {
    if !(0.0..=1.0).contains(&s) {
        return Err(GmeError::InvalidParams(format!("s must be in [0,1], got {s}")));
    }
    let w = dicke_state(3, 2)?;
    let wt = dicke_state(3, 1)?;
    let cw = Complex64::new(s.sqrt(), 0.0);
    let cwt = Complex64::from_polar((1.0 - s).sqrt(), phi);
    let data: Vec<Complex64> = w
        .data()
        .iter()
        .zip(wt.data())
        .map(|(a, b)| cw * a + cwt * b)
        .collect();
    ComplexTensor::new(vec![2, 2, 2], data)
}

/// Stationary point of the W-superposition overlap: t = tanθ solving the
/// cubic, the angle θ, and the resulting overlap Λ.
///
/// The printed form of this cubic (with a unit coefficient on the linear
/// term) does not reproduce the s = 0 endpoint; the stationarity condition
/// ∂Λ/∂θ = 0 of Λ(θ) = (√3/2)(√s·cosθ + √(1−s)·sinθ)·sin2θ works out to
/// √(1−s)·t³ + 2√s·t² − 2√(1−s)·t − √s = 0, which is what this solver uses
/// and what the alternating optimizer confirms across the whole s range.
#[derive(Debug, Clone, Copy)]
pub struct WOverlapContext {
    pub s: f64,
    pub t: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl WOverlapContext {
    /// Residual of the stationarity cubic at this context's root.
    pub fn cubic_residual(&self) -> f64 {
        let (s, t) = (self.s, self.t);
        let (rs, rq) = (s.sqrt(), (1.0 - s).sqrt());
        (rq * t * t * t + 2.0 * rs * t * t - 2.0 * rq * t - rs).abs()
    }
}

/// Real roots of ax³ + bx² + cx + d via eigenvalues of the companion
/// matrix, with degenerate leading coefficients handled explicitly and a
/// couple of Newton steps to polish.
pub fn real_cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let eval = |x: f64| ((a * x + b) * x + c) * x + d;
    let deriv = |x: f64| (3.0 * a * x + 2.0 * b) * x + c;
    let mut roots = Vec::new();
    if a.abs() < 1e-14 {
        if b.abs() < 1e-14 {
            if c.abs() >= 1e-14 {
                roots.push(-d / c);
            }
        } else {
            let disc = c * c - 4.0 * b * d;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                roots.push((-c + sq) / (2.0 * b));
                roots.push((-c - sq) / (2.0 * b));
            }
        }
    } else {
        let (p, q, r) = (b / a, c / a, d / a);
        let companion = nalgebra::Matrix3::new(
            0.0, 0.0, -r, //
            1.0, 0.0, -q, //
            0.0, 1.0, -p,
        );
        for ev in companion.complex_eigenvalues().iter() {
            if ev.im.abs() < 1e-8 * (1.0 + ev.re.abs()) {
                roots.push(ev.re);
            }
        }
    }
    for x in roots.iter_mut() {
        for _ in 0..3 {
            let f = eval(*x);
            let df = deriv(*x);
            if df.abs() > 1e-300 {
                *x -= f / df;
            }
        }
    }
    roots
}

/// Closed-form overlap for the W superposition at mixing parameter s,
/// maximized over the real roots of the stationarity cubic.
pub fn w_superposition_overlap_oracle(s: f64) -> Result<WOverlapContext> {
    if !(0.0..=1.0).contains(&s) {
        return Err(GmeError::InvalidParams(format!("s must be in [0,1], got {s}")));
    }
    let rs = s.sqrt();
    let rq = (1.0 - s).sqrt();
    let roots = real_cubic_roots(rq, 2.0 * rs, -2.0 * rq, -rs);
    let mut best: Option<WOverlapContext> = None;
    for t in roots {
        let theta = t.atan();
        let lambda = (3f64.sqrt() / 2.0)
            * (rs * theta.cos() + rq * theta.sin())
            * (2.0 * theta).sin();
        if best.map_or(true, |b| lambda > b.lambda) {
            best = Some(WOverlapContext { s, t, theta, lambda });
        }
    }
    best.ok_or_else(|| GmeError::InvalidParams(format!("no real stationary point at s={s}")))
}

/// Symmetric qudit state: n parties of local dimension d, one party excited
/// to level d−1 and the rest at 0, summed over which party is excited.
pub fn qudit_symmetric_state(n: usize, d: usize, cap: Option<u128>) -> Result<ComplexTensor> {
    if n < 2 || d < 2 {
        return Err(GmeError::InvalidParams(format!(
            "qudit symmetric state needs n >= 2 and d >= 2, got n={n} d={d}"
        )));
    }
    let entries = (d as u128)
        .checked_pow(n as u32)
        .ok_or(GmeError::CapacityExceeded {
            requested: u128::MAX,
            cap: cap.unwrap_or(DEFAULT_MEMORY_CAP),
        })?;
    check_cap(entries, cap.unwrap_or(DEFAULT_MEMORY_CAP))?;
    let len = entries as usize;
    let mut data = vec![Complex64::ZERO; len];
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    // flat index of |0..0 (d-1) 0..0> with the excitation at party i
    let mut stride = 1usize;
    for _ in 0..n {
        data[(d - 1) * stride] = amp;
        stride *= d;
    }
    ComplexTensor::new(vec![d; n], data)
}

/// Overlap of the symmetric qudit state: Λ = √n·(1/n)^{1/2}·((n−1)/n)^{(n−1)/2},
/// independent of d.
pub fn qudit_overlap_oracle(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(GmeError::InvalidParams(format!("need n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(nf.sqrt() * (1.0 / nf).sqrt() * (((nf - 1.0) / nf).powf((nf - 1.0) / 2.0)))
}

/// Weighted W state N·Σ γ_i |e_i⟩ where |e_i⟩ excites party i alone.
pub fn weighted_w_state(gammas: &[f64]) -> Result<ComplexTensor> {
    let m = gammas.len();
    if m < 2 {
        return Err(GmeError::InvalidParams("need at least 2 weights".into()));
    }
    if gammas.iter().any(|&g| !(g > 0.0)) {
        return Err(GmeError::InvalidParams("all weights must be > 0".into()));
    }
    let len = 1usize << m;
    let mut data = vec![Complex64::ZERO; len];
    for (i, &g) in gammas.iter().enumerate() {
        data[1 << (m - 1 - i)] = Complex64::new(g, 0.0);
    }
    ComplexTensor::new(vec![2; m], data)?.normalize()
}

/// Closed-form squared overlap of a weighted W state across a bipartition:
/// Λ²(A|B) = N²·max[Σ_{i∈A} γ_i², Σ_{i∈B} γ_i²] with N² = 1/Σγ².
pub fn weighted_w_overlap_oracle(gammas: &[f64], partition: &Partition) -> Result<f64> {
    if gammas.iter().any(|&g| !(g > 0.0)) {
        return Err(GmeError::InvalidParams("all weights must be > 0".into()));
    }
    partition.check_arity(gammas.len()).map_err(|_| {
        GmeError::InvalidParams(format!(
            "partition arity {} does not match {} weights",
            partition.arity(),
            gammas.len()
        ))
    })?;
    if partition.num_blocks() != 2 {
        return Err(GmeError::InvalidParams(
            "oracle is defined for bipartitions only".into(),
        ));
    }
    let total: f64 = gammas.iter().map(|g| g * g).sum();
    let block_sum = |b: &[usize]| b.iter().map(|&p| gammas[p] * gammas[p]).sum::<f64>();
    let a = block_sum(&partition.blocks()[0]);
    let b = block_sum(&partition.blocks()[1]);
    Ok(a.max(b) / total)
}

/// HS family: √(1/6)[|0011⟩+|1100⟩+w(|1010⟩+|0101⟩)+w²(|1001⟩+|0110⟩)]
/// with w = e^{it}. t = 2π/3 is the HS state itself.
pub fn hs_state(t: f64) -> Result<ComplexTensor> {
    let w = Complex64::from_polar(1.0, t);
    let one = Complex64::ONE;
    state_from_kets(
        4,
        &[
            (one, "0011"),
            (one, "1100"),
            (w, "1010"),
            (w, "0101"),
            (w * w, "1001"),
            (w * w, "0110"),
        ],
    )
}

/// L family: √(1/12)[(1+w)(|0000⟩+|1111⟩)+(1−w)(|0011⟩+|1100⟩)
/// +w²(|0101⟩+|0110⟩+|1001⟩+|1010⟩)], w = e^{it}.
pub fn l_state(t: f64) -> Result<ComplexTensor> {
    let w = Complex64::from_polar(1.0, t);
    let one = Complex64::ONE;
    state_from_kets(
        4,
        &[
            (one + w, "0000"),
            (one + w, "1111"),
            (one - w, "0011"),
            (one - w, "1100"),
            (w * w, "0101"),
            (w * w, "0110"),
            (w * w, "1001"),
            (w * w, "1010"),
        ],
    )
}

/// BSSB four-qubit family:
/// |0110⟩+|1011⟩+w(|0010⟩+|1111⟩)+(1+w)(|0101⟩+|1000⟩), normalized;
/// w = i recovers the fixed BSSB4 state.
pub fn bssb4_family_state(t: f64) -> Result<ComplexTensor> {
    let w = Complex64::from_polar(1.0, t);
    let one = Complex64::ONE;
    state_from_kets(
        4,
        &[
            (one, "0110"),
            (one, "1011"),
            (w, "0010"),
            (w, "1111"),
            (one + w, "0101"),
            (one + w, "1000"),
        ],
    )
}

/// The BSSB4 state, the w = i member of the family.
pub fn bssb4_state() -> Result<ComplexTensor> {
    bssb4_family_state(std::f64::consts::FRAC_PI_2)
}

/// The five-qubit BSSB state.
pub fn bssb5_state() -> Result<ComplexTensor> {
    let p = Complex64::ONE;
    let m = -Complex64::ONE;
    state_from_kets(
        5,
        &[
            (p, "00001"),
            (m, "00010"),
            (p, "01000"),
            (m, "01011"),
            (p, "10001"),
            (p, "10010"),
            (p, "11100"),
            (p, "11111"),
        ],
    )
}

/// Catalog of highly entangled equal-amplitude states found by Monte Carlo
/// support search, keyed by (qubit count, index).
///
/// The source listing of φ_{6,2} shows its first ket with only five digits;
/// it is taken here as |110000⟩, which reproduces the quoted overlap 0.3954
/// (the alternative reading |011000⟩ gives 0.4168 instead).
const PHI_CATALOG: &[(usize, usize, &[&str])] = &[
    (4, 1, &["0000", "1110", "0101", "1011"]),
    (4, 2, &["1100", "0010", "0101", "1011"]),
    (4, 3, &["1000", "0110", "0001", "1111"]),
    (4, 4, &["0100", "0010", "1001", "1111"]),
    (4, 5, &["0110", "1010", "0001", "1101"]),
    (4, 6, &["0010", "1110", "0101", "1001"]),
    (4, 7, &["0000", "1100", "0011", "1111"]),
    (5, 1, &["00000", "01100", "10010", "11001", "00111", "11111"]),
    (
        5,
        2,
        &["11000", "01100", "10010", "10110", "00001", "01001", "00111", "11111"],
    ),
    (
        6,
        1,
        &["100000", "011000", "011110", "101110", "101001", "110101", "000011"],
    ),
    (
        6,
        2,
        &["110000", "001100", "010110", "100110", "001001", "100101", "111101", "101011"],
    ),
    (
        7,
        1,
        &[
            "0110000", "0011000", "1100100", "0001100", "1110010", "1001010", "1101001",
            "1010101", "0000011", "1111111",
        ],
    ),
    (
        7,
        2,
        &[
            "0110000", "0000100", "1100100", "1011100", "1001010", "0011110", "0101101",
            "1110011", "0000011", "0011011", "1010111",
        ],
    ),
];

/// All (n, index) pairs present in the φ catalog.
pub fn phi_catalog_entries() -> Vec<(usize, usize)> {
    PHI_CATALOG.iter().map(|&(n, i, _)| (n, i)).collect()
}

/// The catalog state φ_{n,index}.
pub fn phi_state(n: usize, index: usize) -> Result<ComplexTensor> {
    let kets = PHI_CATALOG
        .iter()
        .find(|&&(cn, ci, _)| cn == n && ci == index)
        .map(|&(_, _, k)| k)
        .ok_or(GmeError::UnknownCatalogIndex { n, index })?;
    let terms: Vec<(Complex64, &str)> = kets.iter().map(|&k| (Complex64::ONE, k)).collect();
    state_from_kets(n, &terms)
}

/// Names of the parametric families addressable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Dicke,
    WSuperposition,
    QuditSymmetric,
    WeightedW3,
    WeightedW4,
    W5,
    Ghz,
    Hs,
    L,
    Bssb4Family,
    Bssb4,
    Bssb5,
    PhiCatalog,
}

impl FromStr for FamilyName {
    type Err = GmeError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "dicke" => Self::Dicke,
            "wsup" | "w-superposition" => Self::WSuperposition,
            "qudit" => Self::QuditSymmetric,
            "weighted-w3" => Self::WeightedW3,
            "weighted-w4" => Self::WeightedW4,
            "w5" => Self::W5,
            "ghz" => Self::Ghz,
            "hs" => Self::Hs,
            "l" => Self::L,
            "bssb4-family" => Self::Bssb4Family,
            "bssb4" => Self::Bssb4,
            "bssb5" => Self::Bssb5,
            "phi" => Self::PhiCatalog,
            other => {
                return Err(GmeError::InvalidParams(format!("unknown family '{other}'")))
            }
        })
    }
}

/// A named family plus its parameter assignment, e.g. Dicke with n=4, k=2.
#[derive(Debug, Clone)]
pub struct StateFamily {
    pub name: FamilyName,
    pub params: BTreeMap<String, f64>,
}

impl StateFamily {
    pub fn new(name: FamilyName) -> Self {
        Self {
            name,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param(&self, key: &str) -> Result<f64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| GmeError::InvalidParams(format!("missing parameter '{key}'")))
    }

    fn param_or(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn usize_param(&self, key: &str) -> Result<usize> {
        let v = self.param(key)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(GmeError::InvalidParams(format!(
                "parameter '{key}' must be a non-negative integer, got {v}"
            )));
        }
        Ok(v as usize)
    }

    fn gammas(&self, count: usize) -> Result<Vec<f64>> {
        (1..=count)
            .map(|i| self.param(&format!("gamma{i}")))
            .collect()
    }

    /// Constructs the family member as a unit-norm tensor.
    pub fn state(&self) -> Result<ComplexTensor> {
        match self.name {
            FamilyName::Dicke => dicke_state(self.usize_param("n")?, self.usize_param("k")?),
            FamilyName::WSuperposition => {
                w_superposition_state(self.param("s")?, self.param_or("phi", 0.0))
            }
            FamilyName::QuditSymmetric => {
                let cap = self.params.get("cap").map(|&c| c as u128);
                qudit_symmetric_state(self.usize_param("n")?, self.usize_param("d")?, cap)
            }
            FamilyName::WeightedW3 => weighted_w_state(&self.gammas(3)?),
            FamilyName::WeightedW4 => weighted_w_state(&self.gammas(4)?),
            FamilyName::W5 => w_state(5),
            FamilyName::Ghz => ghz_state(self.usize_param("n")?),
            FamilyName::Hs => hs_state(self.param("t")?),
            FamilyName::L => l_state(self.param("t")?),
            FamilyName::Bssb4Family => bssb4_family_state(self.param("t")?),
            FamilyName::Bssb4 => bssb4_state(),
            FamilyName::Bssb5 => bssb5_state(),
            FamilyName::PhiCatalog => phi_state(self.usize_param("n")?, self.usize_param("i")?),
        }
    }
}

/// Constructs the state for a family instance.
pub fn family_state(family: &StateFamily) -> Result<ComplexTensor> {
    family.state()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn w_state_amplitudes() {
        let w = dicke_state(3, 2).unwrap();
        let amp = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(w.get(&[0, 0, 1]).unwrap().re, amp, epsilon = 1e-14);
        assert_abs_diff_eq!(w.get(&[0, 1, 0]).unwrap().re, amp, epsilon = 1e-14);
        assert_abs_diff_eq!(w.get(&[1, 0, 0]).unwrap().re, amp, epsilon = 1e-14);
        assert_abs_diff_eq!(w.get(&[1, 1, 1]).unwrap().norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn dicke_endpoints_and_counts() {
        let t = dicke_state(4, 0).unwrap();
        assert_abs_diff_eq!(t.get(&[1, 1, 1, 1]).unwrap().re, 1.0, epsilon = 1e-14);
        let t = dicke_state(5, 2).unwrap();
        let nonzero = t.data().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 10);
        assert_abs_diff_eq!(
            t.data().iter().find(|z| z.norm() > 0.0).unwrap().re,
            1.0 / 10f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn dicke_oracle_table_values() {
        assert_abs_diff_eq!(dicke_overlap_oracle(4, 2).unwrap(), 0.6124, epsilon = 5e-5);
        assert_abs_diff_eq!(dicke_overlap_oracle(6, 3).unwrap(), 0.5590, epsilon = 5e-5);
        assert_abs_diff_eq!(dicke_overlap_oracle(7, 0).unwrap(), 1.0, epsilon = 0.0);
    }

    #[test]
    fn dicke_oracle_symmetry() {
        for n in 1..=8 {
            for k in 0..=n {
                assert_eq!(
                    dicke_overlap_oracle(n, k).unwrap().to_bits(),
                    dicke_overlap_oracle(n, n - k).unwrap().to_bits(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn w_superposition_endpoints() {
        let t = w_superposition_state(1.0, 0.7).unwrap();
        let w = dicke_state(3, 2).unwrap();
        for (a, b) in t.data().iter().zip(w.data()) {
            assert!((a - b).norm() < 1e-14);
        }
        let t = w_superposition_state(0.0, 0.0).unwrap();
        let wt = dicke_state(3, 1).unwrap();
        for (a, b) in t.data().iter().zip(wt.data()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn w_superposition_oracle_endpoints() {
        // both endpoints are three-qubit W-class states with overlap 2/3
        let c = w_superposition_overlap_oracle(1.0).unwrap();
        assert_abs_diff_eq!(c.lambda, 2.0 / 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(c.lambda, dicke_overlap_oracle(3, 2).unwrap(), epsilon = 1e-10);
        let c = w_superposition_overlap_oracle(0.0).unwrap();
        assert_abs_diff_eq!(c.lambda, dicke_overlap_oracle(3, 1).unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn cubic_residual_on_grid() {
        for i in 0..=200 {
            let s = i as f64 / 200.0;
            let c = w_superposition_overlap_oracle(s).unwrap();
            assert!(
                c.cubic_residual() < 1e-10,
                "residual {} at s={s}",
                c.cubic_residual()
            );
        }
    }

    #[test]
    fn qudit_matches_dicke_at_d2() {
        let q = qudit_symmetric_state(4, 2, None).unwrap();
        let d = dicke_state(4, 3).unwrap();
        for (a, b) in q.data().iter().zip(d.data()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn qudit_oracle_values() {
        assert_abs_diff_eq!(qudit_overlap_oracle(4).unwrap(), 0.6495, epsilon = 5e-5);
        assert_abs_diff_eq!(qudit_overlap_oracle(6).unwrap(), 0.6339, epsilon = 5e-5);
        assert_abs_diff_eq!(
            qudit_overlap_oracle(2).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-14
        );
    }

    #[test]
    fn qudit_capacity_guard() {
        assert!(matches!(
            qudit_symmetric_state(5, 200, None),
            Err(GmeError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn weighted_w_oracle_values() {
        let p = Partition::new(vec![vec![2], vec![0, 1]], 3).unwrap();
        let v = weighted_w_overlap_oracle(&[1.0, 2.0, 3.0], &p).unwrap();
        assert_abs_diff_eq!(v, 9.0 / 14.0, epsilon = 1e-12);

        let p = Partition::new(vec![vec![2, 3], vec![0, 1]], 4).unwrap();
        let v = weighted_w_overlap_oracle(&[1.0, 2.0, 3.0, 4.0], &p).unwrap();
        assert_abs_diff_eq!(v, 25.0 / 30.0, epsilon = 1e-12);

        let p = Partition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let v = weighted_w_overlap_oracle(&[1.0, 1.0, 1.0], &p).unwrap();
        assert_abs_diff_eq!(v, 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn constructors_are_unit_norm() {
        let tensors = vec![
            dicke_state(5, 2).unwrap(),
            w_superposition_state(0.3, 1.1).unwrap(),
            qudit_symmetric_state(4, 5, None).unwrap(),
            weighted_w_state(&[1.0, 2.0, 3.0]).unwrap(),
            ghz_state(4).unwrap(),
            hs_state(1.0).unwrap(),
            l_state(2.0).unwrap(),
            bssb4_family_state(0.4).unwrap(),
            bssb5_state().unwrap(),
            phi_state(5, 1).unwrap(),
            phi_state(7, 2).unwrap(),
        ];
        for t in tensors {
            assert_abs_diff_eq!(t.frobenius_norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn unknown_catalog_index() {
        assert!(matches!(
            phi_state(4, 9),
            Err(GmeError::UnknownCatalogIndex { n: 4, index: 9 })
        ));
    }

    #[test]
    fn family_params_round_trip() {
        let f = StateFamily::new(FamilyName::Dicke)
            .with_param("n", 4.0)
            .with_param("k", 2.0);
        let t = f.state().unwrap();
        let d = dicke_state(4, 2).unwrap();
        assert_eq!(t, d);
        assert!(StateFamily::new(FamilyName::Dicke).state().is_err());
        assert!("nope".parse::<FamilyName>().is_err());
    }
}
