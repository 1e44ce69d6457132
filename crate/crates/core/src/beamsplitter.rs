//! Two-mode beam-splitter interaction `b^dagger a + b a^dagger` and its exact
//! unitary `exp(+i theta (b^dagger a + b a^dagger))`.
//!
//! Mode B sits on qubits `0..q`, mode A on qubits `q..2q`. With `q = 2` the
//! two-photon input `|1>_B |1>_A` is the label `0101`.

use crate::error::{Error, Result};
use crate::gray::{ladder, projector, FockEncoding};
use crate::linalg::{expm_i_hermitian, CMatrix, MAX_DENSE_QUBITS};
use crate::pauli::PauliOp;

#[derive(Debug, Clone, PartialEq)]
pub struct Interaction {
    pub op: PauliOp,
    pub encoding: FockEncoding,
    /// Built from the pruned two-photon form rather than the full operators.
    pub reduced: bool,
}

impl Interaction {
    pub fn n_qubits(&self) -> usize {
        self.op.width()
    }
}

pub fn interaction(encoding: FockEncoding) -> Interaction {
    let b_dag = encoding.creation_op();
    let b = encoding.annihilation_op();
    let op = b_dag
        .tensor(&b)
        .add(&b.tensor(&b_dag))
        .expect("both products span two modes");
    Interaction { op, encoding, reduced: false }
}

/// Interaction restricted to the transitions that touch `|1>|1>` in the
/// two-qubit encoding:
///
/// `sqrt(2) [ (P0 Q1 Q0 P1 + h.c.) + (Q1 P1 P0 Q0 + h.c.) ]`
///
/// The two dropped blocks (vacuum-to-one-photon hopping and the `2 <-> 2`
/// hop) never connect to the two-photon sector reached from `|1>|1>`, so
/// evolution of that input is unchanged while the Pauli sum halves.
pub fn reduced_interaction(encoding: FockEncoding) -> Result<Interaction> {
    if encoding.qubits_per_mode() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the reduced interaction exists only for 2 qubits per mode, got {}",
            encoding.qubits_per_mode()
        )));
    }
    let (p0, p1, q0, q1) = (projector(0), projector(1), ladder(0), ladder(1));
    // mode A: 2 -> 1, mode B: 0 -> 1
    let first = p0.tensor(&q1).tensor(&q0).tensor(&p1);
    // mode B: 1 -> 2, mode A: 1 -> 0
    let second = q1.tensor(&p1).tensor(&p0).tensor(&q0);
    let op = first
        .add(&first.adjoint())
        .and_then(|s| s.add(&second))
        .and_then(|s| s.add(&second.adjoint()))?
        .scale_real(std::f64::consts::SQRT_2)
        .simplify();
    Ok(Interaction { op, encoding, reduced: true })
}

/// Total photon number `N_B + N_A` on a two-mode register.
pub fn total_number_op(encoding: FockEncoding) -> PauliOp {
    let n = encoding.number_op();
    let id = PauliOp::identity(encoding.qubits_per_mode());
    n.tensor(&id).add(&id.tensor(&n)).expect("equal widths")
}

/// Basis label of the product state `|n_b>_B |n_a>_A`.
pub fn fock_label(encoding: FockEncoding, n_b: usize, n_a: usize) -> Result<String> {
    Ok(format!("{}{}", encoding.label(n_b)?, encoding.label(n_a)?))
}

/// `exp(+i theta H)` for the interaction `H`, as a dense matrix.
pub fn exact_unitary(theta: f64, inter: &Interaction) -> Result<CMatrix> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    if inter.n_qubits() > MAX_DENSE_QUBITS {
        return Err(Error::TooWide { width: inter.n_qubits(), max: MAX_DENSE_QUBITS });
    }
    if !inter.op.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let h = inter.op.to_matrix()?;
    Ok(expm_i_hermitian(&h, theta))
}
