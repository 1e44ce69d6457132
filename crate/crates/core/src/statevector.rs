//! Dense statevector backend.
//!
//! Amplitude index `k` is the basis state whose label, read left to right,
//! is `k` in binary; qubit `q` of an `n`-qubit register therefore lives on
//! bit `n - 1 - q` of the index.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::exec::{Exec, PAR_MIN_AMPLITUDES};
use crate::linalg::{check_unitary, CMatrix, MAX_DENSE_QUBITS};

/// Largest register the gate path accepts.
pub const MAX_STATEVECTOR_QUBITS: usize = 24;

/// Tolerance for norm preservation and unitarity checks.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Name of the sampling generator, recorded in every report.
pub const RNG_ALGORITHM: &str = "ChaCha20Rng (rand_chacha 0.9, seed_from_u64) + WeightedIndex<f64>";

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    /// Observed labels only, sorted.
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl Histogram {
    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }
}

pub fn index_to_label(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if (index >> (n_qubits - 1 - q)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn label_to_index(label: &str, n_qubits: usize) -> Result<usize> {
    if label.len() != n_qubits || !label.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::BadLabel(label.to_string()));
    }
    Ok(label.bytes().fold(0usize, |acc, b| (acc << 1) | (b - b'0') as usize))
}

type Mat2 = [[Complex64; 2]; 2];

fn gate_matrix(g: &Gate) -> Option<Mat2> {
    let z = Complex64::new(0.0, 0.0);
    match *g {
        Gate::H(_) => {
            let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            Some([[h, h], [h, -h]])
        }
        Gate::Rx { angle, .. } => {
            let c = Complex64::new((angle / 2.0).cos(), 0.0);
            let s = Complex64::new(0.0, -(angle / 2.0).sin());
            Some([[c, s], [s, c]])
        }
        Gate::Rz { angle, .. } => Some([
            [Complex64::from_polar(1.0, -angle / 2.0), z],
            [z, Complex64::from_polar(1.0, angle / 2.0)],
        ]),
        Gate::X(_) | Gate::Cnot { .. } => None,
    }
}

/// Applies `m` to the pair `(lo[i], hi[i])` for every `i`.
fn rotate_pairs(lo: &mut [Complex64], hi: &mut [Complex64], m: &Mat2) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = m[0][0] * x + m[0][1] * y;
        *b = m[1][0] * x + m[1][1] * y;
    }
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_STATEVECTOR_QUBITS {
            return Err(Error::TooWide { width: n_qubits, max: MAX_STATEVECTOR_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn init_basis(n_qubits: usize, label: &str) -> Result<Self> {
        let k = label_to_index(label, n_qubits)?;
        let mut s = Self::zero(n_qubits)?;
        s.amps.swap(0, k);
        Ok(s)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("amplitude count {dim} is not a power of two")));
        }
        let s = StateVector { n_qubits: dim.trailing_zeros() as usize, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("state has squared norm {norm}")));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, label: &str) -> Result<Complex64> {
        Ok(self.amps[label_to_index(label, self.n_qubits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn bit_of(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        self.apply_gate_with(g, Exec::default())
    }

    pub fn apply_gate_with(&mut self, g: &Gate, exec: Exec) -> Result<()> {
        for q in g.qubits() {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
            }
        }
        let parallel = exec.is_parallel() && self.amps.len() >= PAR_MIN_AMPLITUDES;
        let stride = self.bit_of(g.target());
        match *g {
            Gate::Cnot { control, .. } => {
                let cbit = self.bit_of(control);
                for_each_block(&mut self.amps, stride, parallel, |base, lo, hi| {
                    for (i, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                        if (base + i) & cbit != 0 {
                            std::mem::swap(a, b);
                        }
                    }
                });
            }
            Gate::X(_) => for_each_block(&mut self.amps, stride, parallel, |_, lo, hi| lo.swap_with_slice(hi)),
            _ => {
                let m = gate_matrix(g).expect("single-qubit rotation");
                for_each_block(&mut self.amps, stride, parallel, |_, lo, hi| rotate_pairs(lo, hi, &m));
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        self.apply_circuit_with(c, Exec::default())
    }

    pub fn apply_circuit_with(&mut self, c: &Circuit, exec: Exec) -> Result<()> {
        if c.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: c.n_qubits() });
        }
        for g in c.gates() {
            self.apply_gate_with(g, exec)?;
        }
        Ok(())
    }

    /// Matrix-vector product with a unitary `m`; non-unitary input is an error.
    pub fn apply_dense(&self, m: &CMatrix) -> Result<StateVector> {
        let dim = self.amps.len();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: m.nrows().max(m.ncols()) });
        }
        check_unitary(m, NORM_TOLERANCE)?;
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        let out = m * v;
        let s = StateVector { n_qubits: self.n_qubits, amps: out.as_slice().to_vec() };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Invariant(format!("dense application drifted norm to {norm}")));
        }
        Ok(s)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws `shots` independent measurements of all qubits.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let probs = self.probabilities();
        let dist = WeightedIndex::new(&probs)
            .map_err(|e| Error::Invariant(format!("cannot sample from state: {e}")))?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut tally = vec![0u64; probs.len()];
        for _ in 0..shots {
            tally[dist.sample(&mut rng)] += 1;
        }
        let counts = tally
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| (index_to_label(k, self.n_qubits), c))
            .collect();
        Ok(Histogram { counts, shots })
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let overlap: Complex64 = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        Ok(overlap.norm_sqr().min(1.0))
    }
}

/// Visits every block of `2 * stride` amplitudes, handing the callback the
/// block's base index and its lower and upper halves (target bit 0 and 1).
fn for_each_block<F>(amps: &mut [Complex64], stride: usize, parallel: bool, f: F)
where
    F: Fn(usize, &mut [Complex64], &mut [Complex64]) + Sync + Send,
{
    let block = 2 * stride;
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        amps.par_chunks_mut(block).enumerate().for_each(|(k, chunk)| {
            let (lo, hi) = chunk.split_at_mut(stride);
            f(k * block, lo, hi);
        });
        return;
    }
    let _ = parallel;
    for (k, chunk) in amps.chunks_mut(block).enumerate() {
        let (lo, hi) = chunk.split_at_mut(stride);
        f(k * block, lo, hi);
    }
}

/// Dense unitary of a circuit, built column by column on the gate path.
pub fn circuit_unitary(c: &Circuit, exec: Exec) -> Result<CMatrix> {
    let n = c.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooWide { width: n, max: MAX_DENSE_QUBITS });
    }
    let dim = 1usize << n;
    let columns: Vec<usize> = (0..dim).collect();
    let cols = exec.map(&columns, |_, &k| -> Result<Vec<Complex64>> {
        let mut s = StateVector::zero(n)?;
        s.amps.swap(0, k);
        s.apply_circuit_with(c, Exec::Sequential)?;
        Ok(s.amps)
    });
    let mut m = CMatrix::zeros(dim, dim);
    for (k, col) in cols.into_iter().enumerate() {
        m.set_column(k, &nalgebra::DVector::from_vec(col?));
    }
    Ok(m)
}
