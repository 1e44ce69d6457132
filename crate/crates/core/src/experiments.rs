//! Hong-Ou-Mandel runs: state preparation, evolution through the synthesized
//! circuit (or the exact unitary), sampling and reporting.
//!
//! The input `|1>_B |1>_A` is prepared with X gates on the qubits that are
//! set in its Gray label (`0101` for two qubits per mode). Coincidences are
//! counted on that same label; the bunched outcomes are `|0>_B |2>_A`
//! (`0011`) and `|2>_B |0>_A` (`1100`).

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::beamsplitter::{exact_unitary, fock_label, interaction, reduced_interaction, Interaction};
use crate::circuit::{export_qasm, metrics, synthesize, Circuit, CircuitMetrics, Gate};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gray::FockEncoding;
use crate::statevector::{index_to_label, StateVector, RNG_ALGORITHM};

/// Probability vectors must sum to one within this.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    /// Beam-splitter angle in radians; `pi/4` is the balanced splitter.
    pub theta: f64,
    pub trotter_steps: usize,
    pub shots: u64,
    pub seed: u64,
    /// Use the pruned two-photon interaction (two qubits per mode only).
    pub reduced: bool,
    /// Skip circuit synthesis and evolve with the exact unitary.
    pub exact: bool,
    pub qubits_per_mode: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            theta: FRAC_PI_4,
            trotter_steps: 10,
            shots: 10_000,
            seed: 0,
            reduced: false,
            exact: false,
            qubits_per_mode: 2,
        }
    }
}

impl ExperimentConfig {
    /// The settings of the hardware run (reduced circuit, two Trotter steps,
    /// 4000 shots), executed here on the noiseless simulator.
    pub fn hardware_preset() -> Self {
        ExperimentConfig { trotter_steps: 2, shots: 4000, reduced: true, ..Default::default() }
    }

    pub const HARDWARE_PRESET_NOTE: &'static str = "noiseless reproduction of the 2-step, 4000-shot hardware run";

    pub fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta must be finite, got {}", self.theta)));
        }
        if self.trotter_steps == 0 {
            return Err(Error::InvalidArgument("trotter steps must be at least 1".into()));
        }
        if self.shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        if self.reduced && self.qubits_per_mode != 2 {
            return Err(Error::InvalidArgument("--reduced requires 2 qubits per mode".into()));
        }
        FockEncoding::new(self.qubits_per_mode)?;
        Ok(())
    }

    pub fn encoding(&self) -> Result<FockEncoding> {
        FockEncoding::new(self.qubits_per_mode)
    }

    /// First 12 hex digits of the SHA-256 of the config's JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .take(6)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn interaction(&self) -> Result<Interaction> {
        let enc = self.encoding()?;
        if self.reduced {
            reduced_interaction(enc)
        } else {
            Ok(interaction(enc))
        }
    }
}

/// Output file name for a result of the given kind, e.g.
/// `hom-run-3fa81c0b94d2.json`.
pub fn report_file_name(kind: &str, config: &ExperimentConfig, ext: &str) -> String {
    format!("hom-{kind}-{}.{ext}", config.hash())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub input_label: String,
    /// Every basis label of the register, label order.
    pub probabilities: BTreeMap<String, f64>,
    /// Observed labels only.
    pub counts: BTreeMap<String, u64>,
    /// Absent on the exact path.
    pub metrics: Option<CircuitMetrics>,
    /// `|<exact|out>|^2` against the full interaction's exact evolution.
    pub fidelity_to_exact: f64,
    /// Pauli strings in the order one Trotter step applies them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trotter_order: Option<Vec<String>>,
    pub rng: RngInfo,
}

impl ExperimentReport {
    pub fn probability(&self, label: &str) -> f64 {
        self.probabilities.get(label).copied().unwrap_or(0.0)
    }

    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report JSON: {e}")))
    }
}

/// Labels of the three two-photon outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLabels {
    /// One photon per mode: the input and the coincidence outcome.
    pub coincidence: String,
    /// Both photons in mode A.
    pub bunched_a: String,
    /// Both photons in mode B.
    pub bunched_b: String,
}

impl HomLabels {
    pub fn new(enc: FockEncoding) -> Result<Self> {
        Ok(HomLabels {
            coincidence: fock_label(enc, 1, 1)?,
            bunched_a: fock_label(enc, 0, 2)?,
            bunched_b: fock_label(enc, 2, 0)?,
        })
    }
}

/// Preparation of `|1>|1>` followed by the Trotterized beam splitter.
pub fn hom_circuit(config: &ExperimentConfig) -> Result<Circuit> {
    config.validate()?;
    let inter = config.interaction()?;
    let labels = HomLabels::new(inter.encoding)?;
    let mut c = Circuit::new(inter.n_qubits());
    for (q, bit) in labels.coincidence.chars().enumerate() {
        if bit == '1' {
            c.push(Gate::X(q))?;
        }
    }
    c.append(&synthesize(&inter, config.theta, config.trotter_steps)?)?;
    Ok(c)
}

fn exact_output(inter: &Interaction, theta: f64, input: &StateVector) -> Result<StateVector> {
    input.apply_dense(&exact_unitary(theta, inter)?)
}

pub fn run_hom(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let enc = config.encoding()?;
    let n = 2 * enc.qubits_per_mode();
    let labels = HomLabels::new(enc)?;
    let input = StateVector::init_basis(n, &labels.coincidence)?;
    let reference = exact_output(&interaction(enc), config.theta, &input)?;

    let (output, circuit_metrics, trotter_order) = if config.exact {
        let out = if config.reduced { exact_output(&config.interaction()?, config.theta, &input)? } else { reference.clone() };
        (out, None, None)
    } else {
        let circuit = hom_circuit(config)?;
        let mut state = StateVector::zero(n)?;
        state.apply_circuit(&circuit)?;
        let order = config.interaction()?.op.terms().iter().map(|t| t.label()).collect();
        (state, Some(metrics(&circuit)), Some(order))
    };

    let norm = output.norm_sqr();
    if (norm - 1.0).abs() > crate::statevector::NORM_TOLERANCE {
        return Err(Error::Invariant(format!("output state norm drifted to {norm}")));
    }
    let probs = output.probabilities();
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
        return Err(Error::Invariant(format!("probabilities sum to {total}")));
    }
    let histogram = output.sample(config.shots, config.seed)?;
    let fidelity = reference.fidelity(&output)?;
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Invariant(format!("fidelity {fidelity} outside [0, 1]")));
    }

    Ok(ExperimentReport {
        config: config.clone(),
        note: None,
        input_label: labels.coincidence,
        probabilities: probs.iter().enumerate().map(|(k, p)| (index_to_label(k, n), *p)).collect(),
        counts: histogram.counts,
        metrics: circuit_metrics,
        fidelity_to_exact: fidelity,
        trotter_order,
        rng: RngInfo { algorithm: RNG_ALGORITHM.to_string(), seed: config.seed },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterRow {
    pub steps: usize,
    pub p_coincidence: f64,
    pub p_bunched_a: f64,
    pub p_bunched_b: f64,
    pub count_coincidence: u64,
    pub count_bunched_a: u64,
    pub count_bunched_b: u64,
    pub fidelity: f64,
    pub depth: usize,
    pub cx: usize,
    pub seed: u64,
}

/// One circuit-path run per step count. Row `k` samples with seed
/// `config.seed + k`.
pub fn sweep_trotter(config: &ExperimentConfig, steps_list: &[usize], exec: Exec) -> Result<Vec<TrotterRow>> {
    if steps_list.is_empty() {
        return Err(Error::InvalidArgument("steps list is empty".into()));
    }
    config.validate()?;
    let labels = HomLabels::new(config.encoding()?)?;
    exec.map(steps_list, |k, &steps| {
        let row_config = ExperimentConfig {
            trotter_steps: steps,
            seed: config.seed.wrapping_add(k as u64),
            exact: false,
            ..config.clone()
        };
        let r = run_hom(&row_config)?;
        let m = r.metrics.as_ref().expect("circuit path reports metrics");
        Ok(TrotterRow {
            steps,
            p_coincidence: r.probability(&labels.coincidence),
            p_bunched_a: r.probability(&labels.bunched_a),
            p_bunched_b: r.probability(&labels.bunched_b),
            count_coincidence: r.count(&labels.coincidence),
            count_bunched_a: r.count(&labels.bunched_a),
            count_bunched_b: r.count(&labels.bunched_b),
            fidelity: r.fidelity_to_exact,
            depth: m.depth,
            cx: m.cx_count,
            seed: row_config.seed,
        })
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaRow {
    pub theta: f64,
    pub p_coincidence: f64,
}

/// `n` evenly spaced angles covering `[start, stop]` inclusive.
pub fn theta_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Coincidence probability per angle, on the exact path when
/// `config.exact` is set and through the synthesized circuit otherwise.
pub fn sweep_theta(config: &ExperimentConfig, grid: &[f64], exec: Exec) -> Result<Vec<ThetaRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("theta grid is empty".into()));
    }
    config.validate()?;
    let enc = config.encoding()?;
    let labels = HomLabels::new(enc)?;
    let n = 2 * enc.qubits_per_mode();
    let inter = config.interaction()?;
    let input = StateVector::init_basis(n, &labels.coincidence)?;
    exec.map(grid, |_, &theta| {
        let out = if config.exact {
            exact_output(&inter, theta, &input)?
        } else {
            let c = hom_circuit(&ExperimentConfig { theta, ..config.clone() })?;
            let mut s = StateVector::zero(n)?;
            s.apply_circuit(&c)?;
            s
        };
        Ok(ThetaRow { theta, p_coincidence: out.amplitude(&labels.coincidence)?.norm_sqr() })
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitSummary {
    pub interaction_terms: usize,
    pub metrics: CircuitMetrics,
    pub trotter_order: Vec<String>,
    #[serde(skip)]
    pub qasm: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitReport {
    pub config: ExperimentConfig,
    pub full: CircuitSummary,
    /// Only available for two qubits per mode.
    pub reduced: Option<CircuitSummary>,
}

/// Metrics and QASM for the full and reduced HOM circuits side by side.
pub fn circuit_report(config: &ExperimentConfig) -> Result<CircuitReport> {
    if config.exact {
        return Err(Error::InvalidArgument("circuit report needs the circuit path, not --exact".into()));
    }
    let summarize = |reduced: bool| -> Result<CircuitSummary> {
        let cfg = ExperimentConfig { reduced, ..config.clone() };
        let inter = cfg.interaction()?;
        let c = hom_circuit(&cfg)?;
        Ok(CircuitSummary {
            interaction_terms: inter.op.len(),
            metrics: metrics(&c),
            trotter_order: inter.op.terms().iter().map(|t| t.label()).collect(),
            qasm: export_qasm(&c),
        })
    };
    let reduced = if config.qubits_per_mode == 2 { Some(summarize(true)?) } else { None };
    Ok(CircuitReport { config: ExperimentConfig { reduced: false, ..config.clone() }, full: summarize(false)?, reduced })
}

/// Serializes table rows as CSV with a header line.
pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
