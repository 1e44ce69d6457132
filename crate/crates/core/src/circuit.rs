//! Lowering of Hermitian Pauli sums to gate circuits.
//!
//! A Pauli string `P` is exponentiated with the usual construction: rotate
//! every active qubit into the Z basis, fold the parity onto the last active
//! qubit with an ascending CNOT chain, apply `RZ`, then undo everything. The
//! interaction is Trotterized term by term (first order), with terms in the
//! canonical lexicographic order produced by [`PauliOp::simplify`].

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::beamsplitter::Interaction;
use crate::error::{Error, Result};
use crate::fmt::significant;
use crate::pauli::{PauliAxis, PauliTerm};

/// Imaginary parts above this in a Hermitian sum indicate a broken invariant.
const REAL_COEFF_TOLERANCE: f64 = 1e-12;

/// Gate set of the synthesized circuits. Rotations use the half-angle
/// convention `RX(t) = exp(-i t X / 2)`, `RZ(t) = exp(-i t Z / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    X(usize),
    H(usize),
    Rx { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::X(t) | Gate::H(t) => t,
            Gate::Rx { target, .. } | Gate::Rz { target, .. } | Gate::Cnot { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cnot { control, .. } => Some(control),
            _ => None,
        }
    }

    /// Lower-case OpenQASM mnemonic, also used as the gate-count key.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::H(_) => "h",
            Gate::Rx { .. } => "rx",
            Gate::Rz { .. } => "rz",
            Gate::Cnot { .. } => "cx",
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        self.control().into_iter().chain(std::iter::once(self.target()))
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
        }
        match *self {
            Gate::Cnot { control, target } if control == target => Err(Error::InvalidArgument(format!(
                "CNOT control and target coincide on qubit {control}"
            ))),
            Gate::Rx { angle, .. } | Gate::Rz { angle, .. } if !angle.is_finite() => {
                Err(Error::InvalidArgument(format!("non-finite rotation angle {angle}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::WidthMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }
}

/// One factor `exp(+i angle P)` of the product formula.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterEntry {
    pub term: PauliTerm,
    pub angle: f64,
}

/// First-order product formula for `exp(+i theta H)`: every non-identity
/// term of `H` in canonical order with angle `theta * c / steps`, the list
/// repeated `steps` times.
pub fn trotter_sequence(inter: &Interaction, theta: f64, steps: usize) -> Result<Vec<TrotterEntry>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("Trotter steps must be at least 1".into()));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    if !inter.op.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let op = inter.op.simplify();
    let mut one_step = Vec::with_capacity(op.len());
    for term in op.terms() {
        if term.coeff.im.abs() > REAL_COEFF_TOLERANCE {
            return Err(Error::Invariant(format!(
                "Hermitian sum carries complex coefficient {} on {}",
                term.coeff,
                term.label()
            )));
        }
        if term.is_identity() {
            log::info!("skipping identity term {} (global phase only)", term);
            continue;
        }
        one_step.push(TrotterEntry { term: term.clone(), angle: theta * term.coeff.re / steps as f64 });
    }
    let mut seq = Vec::with_capacity(one_step.len() * steps);
    for _ in 0..steps {
        seq.extend(one_step.iter().cloned());
    }
    Ok(seq)
}

/// Circuit implementing `exp(-i alpha P)` exactly, with no extra global phase.
pub fn rotation_circuit(axes: &[PauliAxis], alpha: f64) -> Result<Circuit> {
    let n = axes.len();
    let active: Vec<usize> = (0..n).filter(|&q| !axes[q].is_identity()).collect();
    let Some(&last) = active.last() else {
        return Err(Error::InvalidArgument("cannot exponentiate an all-identity string".into()));
    };
    let mut c = Circuit::new(n);

    if let [q] = active[..] {
        if axes[q] == PauliAxis::X {
            c.push(Gate::Rx { target: q, angle: 2.0 * alpha })?;
            return Ok(c);
        }
    }

    for &q in &active {
        match axes[q] {
            PauliAxis::X => c.push(Gate::H(q))?,
            PauliAxis::Y => c.push(Gate::Rx { target: q, angle: FRAC_PI_2 })?,
            _ => {}
        }
    }
    for pair in active.windows(2) {
        c.push(Gate::Cnot { control: pair[0], target: pair[1] })?;
    }
    c.push(Gate::Rz { target: last, angle: 2.0 * alpha })?;
    for pair in active.windows(2).rev() {
        c.push(Gate::Cnot { control: pair[0], target: pair[1] })?;
    }
    for &q in active.iter().rev() {
        match axes[q] {
            PauliAxis::X => c.push(Gate::H(q))?,
            PauliAxis::Y => c.push(Gate::Rx { target: q, angle: -FRAC_PI_2 })?,
            _ => {}
        }
    }
    Ok(c)
}

/// Circuit for the first-order approximant of `exp(+i theta H)`.
pub fn synthesize(inter: &Interaction, theta: f64, steps: usize) -> Result<Circuit> {
    let seq = trotter_sequence(inter, theta, steps)?;
    let mut c = Circuit::new(inter.n_qubits());
    for entry in &seq {
        // exp(+i a P) = exp(-i (-a) P)
        c.append(&rotation_circuit(&entry.term.axes, -entry.angle)?)?;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMetrics {
    pub depth: usize,
    #[serde(rename = "cx")]
    pub cx_count: usize,
    pub gate_counts: BTreeMap<String, usize>,
    pub total_gates: usize,
}

/// Depth counts layers where gates on disjoint qubits share a layer.
pub fn metrics(c: &Circuit) -> CircuitMetrics {
    let mut level = vec![0usize; c.n_qubits()];
    let mut depth = 0;
    let mut gate_counts = BTreeMap::new();
    for g in c.gates() {
        let layer = g.qubits().map(|q| level[q]).max().unwrap_or(0) + 1;
        for q in g.qubits() {
            level[q] = layer;
        }
        depth = depth.max(layer);
        *gate_counts.entry(g.name().to_string()).or_insert(0) += 1;
    }
    CircuitMetrics {
        depth,
        cx_count: gate_counts.get("cx").copied().unwrap_or(0),
        gate_counts,
        total_gates: c.len(),
    }
}

/// Header lines emitted before any gate by [`export_qasm`].
pub const QASM_HEADER_LINES: usize = 3;

/// OpenQASM 2.0 text; angles carry 15 significant digits.
pub fn export_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.n_qubits());
    for g in c.gates() {
        let _ = match *g {
            Gate::X(t) => writeln!(out, "x q[{t}];"),
            Gate::H(t) => writeln!(out, "h q[{t}];"),
            Gate::Rx { target, angle } => writeln!(out, "rx({}) q[{target}];", significant(angle, 15)),
            Gate::Rz { target, angle } => writeln!(out, "rz({}) q[{target}];", significant(angle, 15)),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamsplitter::{interaction, reduced_interaction};
    use crate::gray::FockEncoding;
    use crate::pauli::{parse_axes, PauliOp};
    use num_complex::Complex64;

    fn axes(label: &str) -> Vec<PauliAxis> {
        parse_axes(label).unwrap()
    }

    fn hom() -> Interaction {
        interaction(FockEncoding::new(2).unwrap())
    }

    #[test]
    fn single_x_is_one_rx() {
        let c = rotation_circuit(&axes("X"), 0.3).unwrap();
        assert_eq!(c.gates(), &[Gate::Rx { target: 0, angle: 0.6 }]);
    }

    #[test]
    fn xy_structure() {
        let a = 0.4;
        let c = rotation_circuit(&axes("XY"), a).unwrap();
        assert_eq!(
            c.gates(),
            &[
                Gate::H(0),
                Gate::Rx { target: 1, angle: FRAC_PI_2 },
                Gate::Cnot { control: 0, target: 1 },
                Gate::Rz { target: 1, angle: 2.0 * a },
                Gate::Cnot { control: 0, target: 1 },
                Gate::Rx { target: 1, angle: -FRAC_PI_2 },
                Gate::H(0),
            ]
        );
        assert_eq!(metrics(&c).cx_count, 2);
    }

    #[test]
    fn identity_qubits_are_skipped() {
        let c = rotation_circuit(&axes("XIZY"), 0.2).unwrap();
        assert!(c.gates().iter().all(|g| g.qubits().all(|q| q != 1)));
        let cnots: Vec<_> = c.gates().iter().filter_map(|g| g.control().map(|ctl| (ctl, g.target()))).collect();
        assert_eq!(cnots, [(0, 2), (2, 3), (2, 3), (0, 2)]);
    }

    #[test]
    fn all_identity_rejected() {
        assert!(rotation_circuit(&axes("II"), 0.1).is_err());
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2);
        assert!(matches!(c.push(Gate::X(2)), Err(Error::QubitOutOfRange { index: 2, .. })));
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
        assert!(c.push(Gate::Rz { target: 0, angle: f64::INFINITY }).is_err());
        assert!(c.is_empty());
    }

    #[test]
    fn trotter_counts() {
        let single = Interaction {
            op: PauliOp::term(0.7, "XX").unwrap(),
            encoding: FockEncoding::new(1).unwrap(),
            reduced: false,
        };
        let seq = trotter_sequence(&single, 0.5, 1).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0].term.label(), "XX");
        assert!((seq[0].angle - 0.35).abs() < 1e-15);

        let h = hom();
        for steps in [1, 3, 8] {
            assert_eq!(trotter_sequence(&h, 1.0, steps).unwrap().len(), steps * h.op.len());
        }
    }

    #[test]
    fn trotter_skips_identity_and_rejects_bad_input() {
        let op = "XX + 0.5·II".parse::<PauliOp>().unwrap().simplify();
        let inter = Interaction { op, encoding: FockEncoding::new(1).unwrap(), reduced: false };
        assert_eq!(trotter_sequence(&inter, 1.0, 2).unwrap().len(), 2);
        assert!(trotter_sequence(&inter, 1.0, 0).is_err());

        let skew = Interaction {
            op: PauliOp::complex_term(Complex64::new(0.0, 1.0), "XY").unwrap(),
            encoding: FockEncoding::new(1).unwrap(),
            reduced: false,
        };
        assert_eq!(trotter_sequence(&skew, 1.0, 1), Err(Error::NotHermitian));
    }

    #[test]
    fn zero_angle_circuit_has_zero_rotations() {
        let c = synthesize(&hom(), 0.0, 1).unwrap();
        for g in c.gates() {
            if let Gate::Rz { angle, .. } = g {
                assert_eq!(*angle, 0.0);
            }
        }
    }

    #[test]
    fn metrics_basics() {
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        let m = metrics(&c);
        assert_eq!((m.depth, m.cx_count, m.total_gates), (1, 0, 1));

        let mut c = Circuit::new(3);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::H(1)).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        c.push(Gate::X(2)).unwrap();
        assert_eq!(metrics(&c).depth, 2);
    }

    #[test]
    fn hom_circuit_sizes() {
        let full = metrics(&synthesize(&hom(), std::f64::consts::FRAC_PI_4, 1).unwrap());
        let red = metrics(
            &synthesize(&reduced_interaction(FockEncoding::new(2).unwrap()).unwrap(), std::f64::consts::FRAC_PI_4, 1)
                .unwrap(),
        );
        // 32 strings: 16 of weight 2 (2 CX each) and 16 of weight 4 (6 CX each).
        assert_eq!(full.cx_count, 128);
        assert!(red.cx_count < full.cx_count);
        assert!(full.depth >= full.total_gates.div_ceil(4));
    }

    #[test]
    fn qasm_layout() {
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        let text = export_qasm(&c);
        assert_eq!(text.lines().filter(|l| *l == "x q[0];").count(), 1);

        let empty = export_qasm(&Circuit::new(2));
        assert_eq!(empty, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n");

        let hom_c = synthesize(&hom(), std::f64::consts::FRAC_PI_4, 1).unwrap();
        let text = export_qasm(&hom_c);
        assert_eq!(text.lines().count(), hom_c.len() + QASM_HEADER_LINES);
        assert_eq!(text, export_qasm(&synthesize(&hom(), std::f64::consts::FRAC_PI_4, 1).unwrap()));
    }

    #[test]
    fn qasm_angles() {
        let mut c = Circuit::new(2);
        c.push(Gate::Rz { target: 1, angle: std::f64::consts::PI }).unwrap();
        c.push(Gate::Rx { target: 0, angle: -FRAC_PI_2 }).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let body: Vec<_> = export_qasm(&c).lines().skip(QASM_HEADER_LINES).map(String::from).collect();
        assert_eq!(body, ["rz(3.14159265358979) q[1];", "rx(-1.5707963267949) q[0];", "cx q[0],q[1];"]);
    }
}
