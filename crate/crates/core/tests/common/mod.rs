//! Test-only reference implementations, kept independent of the library's
//! own code paths.
#![allow(dead_code)]

use graybeam::circuit::Gate;
use graybeam::gray::gray_code;
use graybeam::{CMatrix, Circuit, Complex64, PauliAxis};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `exp(i t H)` by Taylor series with scaling and squaring.
pub fn expm_taylor(h: &CMatrix, t: f64) -> CMatrix {
    let dim = h.nrows();
    let a = h * Complex64::new(0.0, t);
    let norm: f64 = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as u32) + 4;
    let scaled = &a * c(1.0 / 2f64.powi(squarings as i32));
    let mut term = CMatrix::identity(dim, dim);
    let mut sum = CMatrix::identity(dim, dim);
    for k in 1..=30 {
        term = &term * &scaled * c(1.0 / k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Textbook truncated creation operator in photon-number order.
pub fn fock_creation(capacity: usize) -> CMatrix {
    let d = capacity + 1;
    CMatrix::from_fn(d, d, |i, j| if i == j + 1 { c((i as f64).sqrt()) } else { c(0.0) })
}

/// Embeds a photon-number-ordered single-mode operator into the
/// computational basis of its Gray encoding.
pub fn embed_gray(op: &CMatrix) -> CMatrix {
    let d = op.nrows();
    let mut out = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(gray_code(i), gray_code(j))] = op[(i, j)];
        }
    }
    out
}

pub fn pauli_matrix(axes: &[PauliAxis]) -> CMatrix {
    let mut m = CMatrix::identity(1, 1);
    for a in axes {
        m = m.kronecker(&a.matrix());
    }
    m
}

/// `exp(-i a P) = cos a I - i sin a P` for a Pauli string `P`.
pub fn pauli_rotation(axes: &[PauliAxis], alpha: f64) -> CMatrix {
    let p = pauli_matrix(axes);
    let dim = p.nrows();
    CMatrix::identity(dim, dim) * c(alpha.cos()) - p * Complex64::new(0.0, alpha.sin())
}

fn single(n: usize, q: usize, m: &CMatrix) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    let mut out = CMatrix::identity(1, 1);
    for k in 0..n {
        out = out.kronecker(if k == q { m } else { &id });
    }
    out
}

/// Gate matrix on the full register built from Kronecker products.
pub fn gate_unitary(n: usize, g: &Gate) -> CMatrix {
    let o = c(0.0);
    let l = c(1.0);
    let m2 = |a, b, cc, d| CMatrix::from_row_slice(2, 2, &[a, b, cc, d]);
    match *g {
        Gate::X(q) => single(n, q, &m2(o, l, l, o)),
        Gate::H(q) => {
            let h = c(std::f64::consts::FRAC_1_SQRT_2);
            single(n, q, &m2(h, h, h, -h))
        }
        Gate::Rx { target, angle } => {
            let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            single(n, target, &m2(c(co), Complex64::new(0.0, -si), Complex64::new(0.0, -si), c(co)))
        }
        Gate::Rz { target, angle } => single(
            n,
            target,
            &m2(Complex64::from_polar(1.0, -angle / 2.0), o, o, Complex64::from_polar(1.0, angle / 2.0)),
        ),
        Gate::Cnot { control, target } => {
            let p0 = m2(l, o, o, o);
            let p1 = m2(o, o, o, l);
            let x = m2(o, l, l, o);
            let mut a = CMatrix::identity(1, 1);
            let mut b = CMatrix::identity(1, 1);
            for k in 0..n {
                let id = CMatrix::identity(2, 2);
                a = a.kronecker(if k == control { &p0 } else { &id });
                b = b.kronecker(if k == control { &p1 } else if k == target { &x } else { &id });
            }
            a + b
        }
    }
}

pub fn circuit_unitary_kron(c: &Circuit) -> CMatrix {
    let dim = 1 << c.n_qubits();
    c.gates().iter().fold(CMatrix::identity(dim, dim), |acc, g| gate_unitary(c.n_qubits(), g) * acc)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn phase_fidelity(u: &CMatrix, v: &CMatrix) -> f64 {
    let tr: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
    tr.norm() / u.nrows() as f64
}
