//! Gray-code encoding of truncated Fock states and the matching ladder
//! operators.
//!
//! Fock state `|n>` of a mode is stored on `q` qubits as the binary-reflected
//! Gray code of `n`, most significant bit on the leftmost qubit. Successive
//! Fock states differ in a single bit, so the creation operator is a sum of
//! strings that each flip one qubit (a spin ladder operator) while projecting
//! the others onto their current value.
//!
//! The general table sometimes quoted for this code lists the top state
//! `|2^q - 1>` as all ones. That is not what the binary-reflected code gives
//! (for `q = 2`, `|3> -> 10`); this module follows the code itself.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliAxis, PauliOp, PauliTerm};

/// Upper bound on qubits per mode; keeps `2^q` comfortably inside `usize`.
pub const MAX_QUBITS_PER_MODE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockEncoding {
    qubits_per_mode: usize,
}

pub fn gray_code(n: usize) -> usize {
    n ^ (n >> 1)
}

/// Inverse of [`gray_code`].
pub fn gray_decode(mut g: usize) -> usize {
    let mut n = g;
    while g > 0 {
        g >>= 1;
        n ^= g;
    }
    n
}

/// `P_0 = (I + Z)/2` for `bit = 0`, `P_1 = (I - Z)/2` for `bit = 1`.
pub fn projector(bit: u8) -> PauliOp {
    let z = if bit == 0 { 0.5 } else { -0.5 };
    PauliOp::from_terms(
        1,
        vec![
            PauliTerm::new(Complex64::new(0.5, 0.0), vec![PauliAxis::I]),
            PauliTerm::new(Complex64::new(z, 0.0), vec![PauliAxis::Z]),
        ],
    )
    .expect("width 1")
}

/// Spin ladder operator that flips a qubit *into* `bit`:
/// `Q_0 = (X + iY)/2 = |0><1|`, `Q_1 = (X - iY)/2 = |1><0|`.
pub fn ladder(bit: u8) -> PauliOp {
    let y = if bit == 0 { 0.5 } else { -0.5 };
    PauliOp::from_terms(
        1,
        vec![
            PauliTerm::new(Complex64::new(0.5, 0.0), vec![PauliAxis::X]),
            PauliTerm::new(Complex64::new(0.0, y), vec![PauliAxis::Y]),
        ],
    )
    .expect("width 1")
}

impl FockEncoding {
    pub fn new(qubits_per_mode: usize) -> Result<Self> {
        if qubits_per_mode == 0 || qubits_per_mode > MAX_QUBITS_PER_MODE {
            return Err(Error::InvalidArgument(format!(
                "qubits per mode must be in 1..={MAX_QUBITS_PER_MODE}, got {qubits_per_mode}"
            )));
        }
        Ok(FockEncoding { qubits_per_mode })
    }

    pub fn qubits_per_mode(&self) -> usize {
        self.qubits_per_mode
    }

    /// Largest representable photon number, `2^q - 1`.
    pub fn capacity(&self) -> usize {
        (1usize << self.qubits_per_mode) - 1
    }

    fn check_index(&self, n: usize, min: usize) -> Result<()> {
        if n < min || n > self.capacity() {
            return Err(Error::FockOutOfRange { index: n, min, capacity: self.capacity() });
        }
        Ok(())
    }

    /// Gray code of `n` as an integer; bit `q - 1` is the leftmost qubit.
    pub fn encode(&self, n: usize) -> Result<usize> {
        self.check_index(n, 0)?;
        Ok(gray_code(n))
    }

    /// Gray code of `n` as bits, leftmost qubit first.
    pub fn gray_bits(&self, n: usize) -> Result<Vec<u8>> {
        let g = self.encode(n)?;
        let w = self.qubits_per_mode;
        Ok((0..w).map(|k| ((g >> (w - 1 - k)) & 1) as u8).collect())
    }

    pub fn label(&self, n: usize) -> Result<String> {
        Ok(self.gray_bits(n)?.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect())
    }

    /// Computational basis index (within one mode) of every Fock state,
    /// in photon-number order.
    pub fn fock_order(&self) -> Vec<usize> {
        (0..=self.capacity()).map(gray_code).collect()
    }

    /// The single-transition operator `|n><n-1|` in Pauli form.
    pub fn hop_term(&self, n: usize) -> Result<PauliOp> {
        self.check_index(n, 1)?;
        let from = self.gray_bits(n - 1)?;
        let to = self.gray_bits(n)?;
        let mut op = PauliOp::identity(0);
        for (&a, &b) in from.iter().zip(&to) {
            let factor = if a == b { projector(b) } else { ladder(b) };
            op = op.tensor(&factor);
        }
        Ok(op.simplify())
    }

    /// Truncated creation operator `sum_n sqrt(n) |n><n-1|`.
    pub fn creation_op(&self) -> PauliOp {
        let mut op = PauliOp::zero(self.qubits_per_mode);
        for n in 1..=self.capacity() {
            let hop = self.hop_term(n).expect("index within capacity");
            op = op.add(&hop.scale_real((n as f64).sqrt())).expect("equal widths");
        }
        op
    }

    pub fn annihilation_op(&self) -> PauliOp {
        self.creation_op().adjoint()
    }

    /// `b^dagger b`, diagonal with entry `n` on the encoded `|n>`.
    pub fn number_op(&self) -> PauliOp {
        self.creation_op()
            .multiply(&self.annihilation_op())
            .expect("equal widths")
    }
}
