mod common;

use common::{c, embed_gray, expm_taylor, fock_creation, max_abs_diff};
use graybeam::beamsplitter::{exact_unitary, interaction, total_number_op};
use graybeam::linalg::permute;
use graybeam::{CMatrix, FockEncoding};

#[test]
fn creation_matches_textbook_operator() {
    for q in 1..=4 {
        let e = FockEncoding::new(q).unwrap();
        let got = e.creation_op().to_matrix().unwrap();
        let expected = embed_gray(&fock_creation(e.capacity()));
        assert!(max_abs_diff(&got, &expected) < 1e-12, "q = {q}");
    }
}

#[test]
fn annihilation_is_adjoint_of_creation() {
    for q in 1..=3 {
        let e = FockEncoding::new(q).unwrap();
        let b = e.annihilation_op().to_matrix().unwrap();
        let b_dag = e.creation_op().to_matrix().unwrap();
        assert!(max_abs_diff(&b, &b_dag.adjoint()) < 1e-12);
    }
}

#[test]
fn truncated_commutator() {
    for q in 1..=3 {
        let e = FockEncoding::new(q).unwrap();
        let comm = e.annihilation_op().commutator(&e.creation_op()).unwrap();
        let m = permute(&comm.to_matrix().unwrap(), &e.fock_order());
        let top = e.capacity();
        let expected = CMatrix::from_fn(top + 1, top + 1, |i, j| match (i == j, i == top) {
            (true, true) => c(-(top as f64)),
            (true, false) => c(1.0),
            _ => c(0.0),
        });
        assert!(max_abs_diff(&m, &expected) < 1e-12, "q = {q}");
    }
}

#[test]
fn eigendecomposition_agrees_with_taylor_series() {
    let h = interaction(FockEncoding::new(2).unwrap());
    let hm = h.op.to_matrix().unwrap();
    for theta in [-0.9, 0.1, std::f64::consts::FRAC_PI_4, 1.0, 3.0] {
        let u = exact_unitary(theta, &h).unwrap();
        assert!(max_abs_diff(&u, &expm_taylor(&hm, theta)) < 1e-12, "theta {theta}");
    }
}

#[test]
fn photon_number_is_conserved_for_product_inputs() {
    let e = FockEncoding::new(2).unwrap();
    let h = interaction(e);
    let n_total = total_number_op(e).to_matrix().unwrap();
    for theta in [0.2, 0.7, 1.9] {
        let u = exact_unitary(theta, &h).unwrap();
        for nb in 0..=3 {
            for na in 0..=3 {
                let k = (e.encode(nb).unwrap() << 2) | e.encode(na).unwrap();
                let psi = u.column(k).into_owned();
                let mean = psi.dotc(&(&n_total * &psi)).re;
                assert!((mean - (nb + na) as f64).abs() < 1e-10, "{nb},{na} at {theta}: {mean}");
            }
        }
    }
}
