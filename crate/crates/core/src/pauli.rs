//! Complex-weighted sums of Pauli strings.
//!
//! [`PauliOp`] is the operator representation used from the single-mode
//! ladder operators up to the full two-mode interaction. Products track the
//! `i^k` phase exactly through [`Phase`]; floating point only enters through
//! the user-supplied coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, MAX_DENSE_QUBITS};

/// Terms whose coefficient magnitude falls below this are dropped by
/// [`PauliOp::simplify`].
pub const DROP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

/// An element of the phase group `{1, i, -1, -i}`, stored as the exponent of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn power_of_i(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl PauliAxis {
    /// Single-qubit product `self * rhs = phase * axis`.
    pub fn product(self, rhs: PauliAxis) -> (Phase, PauliAxis) {
        use PauliAxis::*;
        match (self, rhs) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MINUS_I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MINUS_I, X),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MINUS_I, Y),
        }
    }

    pub fn is_identity(self) -> bool {
        self == PauliAxis::I
    }

    pub fn as_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<PauliAxis> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    pub fn matrix(self) -> CMatrix {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliAxis::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            PauliAxis::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            PauliAxis::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            PauliAxis::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a string label such as `"XIZY"`; qubit 0 is the first character.
pub fn parse_axes(label: &str) -> Result<Vec<PauliAxis>> {
    label
        .chars()
        .map(|c| PauliAxis::from_char(c).ok_or_else(|| Error::BadLabel(label.to_string())))
        .collect()
}

pub fn axes_label(axes: &[PauliAxis]) -> String {
    axes.iter().map(|a| a.as_char()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: Complex64,
    pub axes: Vec<PauliAxis>,
}

impl PauliTerm {
    pub fn new(coeff: Complex64, axes: Vec<PauliAxis>) -> Self {
        PauliTerm { coeff, axes }
    }

    pub fn identity(width: usize) -> Self {
        PauliTerm::new(Complex64::new(1.0, 0.0), vec![PauliAxis::I; width])
    }

    pub fn width(&self) -> usize {
        self.axes.len()
    }

    pub fn label(&self) -> String {
        axes_label(&self.axes)
    }

    pub fn is_identity(&self) -> bool {
        self.axes.iter().all(|a| a.is_identity())
    }

    /// Number of non-identity axes.
    pub fn weight(&self) -> usize {
        self.axes.iter().filter(|a| !a.is_identity()).count()
    }

    pub fn multiply(&self, rhs: &PauliTerm) -> Result<PauliTerm> {
        if self.width() != rhs.width() {
            return Err(Error::WidthMismatch { left: self.width(), right: rhs.width() });
        }
        let mut phase = Phase::ONE;
        let axes = self
            .axes
            .iter()
            .zip(&rhs.axes)
            .map(|(&a, &b)| {
                let (p, axis) = a.product(b);
                phase = phase * p;
                axis
            })
            .collect();
        Ok(PauliTerm::new(self.coeff * rhs.coeff * phase.to_complex(), axes))
    }

    pub fn tensor(&self, rhs: &PauliTerm) -> PauliTerm {
        let mut axes = self.axes.clone();
        axes.extend_from_slice(&rhs.axes);
        PauliTerm::new(self.coeff * rhs.coeff, axes)
    }

    /// Bit masks of the string in amplitude-index space: qubit `q` maps to bit
    /// `width - 1 - q`. Returns `(x_mask, z_mask, y_count)` with `Y = i X Z`.
    pub(crate) fn masks(&self) -> (usize, usize, u32) {
        let w = self.width();
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0u32);
        for (q, axis) in self.axes.iter().enumerate() {
            let bit = 1usize << (w - 1 - q);
            match axis {
                PauliAxis::I => {}
                PauliAxis::X => x |= bit,
                PauliAxis::Z => z |= bit,
                PauliAxis::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }
}

/// A sum of Pauli strings over a fixed register width.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOp {
    width: usize,
    terms: Vec<PauliTerm>,
}

impl PauliOp {
    /// The zero operator on `width` qubits.
    pub fn zero(width: usize) -> Self {
        PauliOp { width, terms: Vec::new() }
    }

    pub fn identity(width: usize) -> Self {
        PauliOp { width, terms: vec![PauliTerm::identity(width)] }
    }

    pub fn from_term(term: PauliTerm) -> Self {
        PauliOp { width: term.width(), terms: vec![term] }
    }

    pub fn from_terms(width: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| t.width() != width) {
            return Err(Error::WidthMismatch { left: width, right: bad.width() });
        }
        Ok(PauliOp { width, terms })
    }

    /// Single string with a real coefficient, e.g. `PauliOp::term(0.5, "XZ")`.
    pub fn term(coeff: f64, label: &str) -> Result<Self> {
        Self::complex_term(Complex64::new(coeff, 0.0), label)
    }

    pub fn complex_term(coeff: Complex64, label: &str) -> Result<Self> {
        Ok(Self::from_term(PauliTerm::new(coeff, parse_axes(label)?)))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the string `label` after collecting like terms.
    pub fn coefficient(&self, label: &str) -> Result<Complex64> {
        let axes = parse_axes(label)?;
        Ok(self.terms.iter().filter(|t| t.axes == axes).map(|t| t.coeff).sum())
    }

    pub fn add(&self, rhs: &PauliOp) -> Result<PauliOp> {
        self.check_width(rhs)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&rhs.terms);
        Ok(PauliOp { width: self.width, terms }.simplify())
    }

    pub fn sub(&self, rhs: &PauliOp) -> Result<PauliOp> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> PauliOp {
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm::new(t.coeff * c, t.axes.clone()))
            .collect();
        PauliOp { width: self.width, terms }
    }

    pub fn scale_real(&self, c: f64) -> PauliOp {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Collects like strings, drops negligible coefficients and sorts the
    /// result lexicographically by string (`I < X < Y < Z`, qubit 0 first).
    pub fn simplify(&self) -> PauliOp {
        let mut acc: BTreeMap<Vec<PauliAxis>, Complex64> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry(t.axes.clone()).or_insert(Complex64::new(0.0, 0.0)) += t.coeff;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .map(|(axes, coeff)| PauliTerm::new(coeff, axes))
            .collect();
        PauliOp { width: self.width, terms }
    }

    /// Operator product `self * rhs`, simplified.
    pub fn multiply(&self, rhs: &PauliOp) -> Result<PauliOp> {
        self.check_width(rhs)?;
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(a.multiply(b)?);
            }
        }
        Ok(PauliOp { width: self.width, terms }.simplify())
    }

    pub fn commutator(&self, rhs: &PauliOp) -> Result<PauliOp> {
        self.multiply(rhs)?.sub(&rhs.multiply(self)?)
    }

    /// Tensor product with `self` on the low-index (left) qubits.
    pub fn tensor(&self, rhs: &PauliOp) -> PauliOp {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| rhs.terms.iter().map(move |b| a.tensor(b)))
            .collect();
        PauliOp { width: self.width + rhs.width, terms }
    }

    /// Conjugates every coefficient; Pauli strings are self-adjoint.
    pub fn adjoint(&self) -> PauliOp {
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm::new(t.coeff.conj(), t.axes.clone()))
            .collect();
        PauliOp { width: self.width, terms }
    }

    pub fn is_hermitian(&self) -> bool {
        self.sub(&self.adjoint()).map(|d| d.is_empty()).unwrap_or(false)
    }

    /// Dense `2^w x 2^w` realization. Row/column `k` is the computational
    /// basis state whose bitstring, qubit 0 leftmost, spells `k` in binary.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.width > MAX_DENSE_QUBITS {
            return Err(Error::TooWide { width: self.width, max: MAX_DENSE_QUBITS });
        }
        let dim = 1usize << self.width;
        let mut m = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            let (x, z, ny) = t.masks();
            let base = t.coeff * Phase(ny as u8 % 4).to_complex();
            for col in 0..dim {
                let v = if (col & z).count_ones() % 2 == 0 { base } else { -base };
                m[(col ^ x, col)] += v;
            }
        }
        Ok(m)
    }

    fn check_width(&self, rhs: &PauliOp) -> Result<()> {
        if self.width != rhs.width {
            return Err(Error::WidthMismatch { left: self.width, right: rhs.width });
        }
        Ok(())
    }
}

fn fmt_coeff(c: Complex64) -> String {
    use crate::fmt::significant;
    if c.im == 0.0 {
        significant(c.re, 12)
    } else if c.re == 0.0 {
        format!("{}i", significant(c.im, 12))
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        format!("({}{}{}i)", significant(c.re, 12), sign, significant(c.im.abs(), 12))
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", fmt_coeff(self.coeff), self.label())
    }
}

/// Renders `0.25·XZIY + -0.5·IIZZ`; the zero operator renders as `0`.
impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Parses sums of bare labels with optional real coefficients, e.g.
    /// `"XZ + 0.5·IY + -2*ZZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut width = None;
        let mut terms = Vec::new();
        for chunk in s.split(" + ") {
            let chunk = chunk.trim();
            let (coeff, label) = match chunk.rsplit_once(['·', '*']) {
                Some((c, l)) => {
                    let c: f64 = c.trim().parse().map_err(|_| Error::BadLabel(chunk.to_string()))?;
                    (c, l.trim())
                }
                None => (1.0, chunk),
            };
            let axes = parse_axes(label)?;
            match width {
                None => width = Some(axes.len()),
                Some(w) if w != axes.len() => {
                    return Err(Error::WidthMismatch { left: w, right: axes.len() })
                }
                _ => {}
            }
            terms.push(PauliTerm::new(Complex64::new(coeff, 0.0), axes));
        }
        let width = width.ok_or_else(|| Error::BadLabel(s.to_string()))?;
        Ok(PauliOp { width, terms })
    }
}
