//! Acceptance suite: one test per criterion, every tolerance pinned in
//! `brody_lab::accept`. Run with `--nocapture` to see the pass/fail lines:
//!
//! ```text
//! cargo test -p brody-lab --test acceptance -- --nocapture
//! ```

use brody_lab::accept;

fn check(c: accept::Criterion) {
    println!("{}", c.line());
    assert!(c.pass, "{}", c.line());
}

#[test]
fn criterion_1_characteristic_route_agreement() {
    check(accept::criterion_1());
}

#[test]
fn criterion_2_laplacian_identity() {
    check(accept::criterion_2());
}

#[test]
fn criterion_3_harmonic_gradient_bound_suite() {
    check(accept::criterion_3());
}

#[test]
fn criterion_4_order_one_base_cases() {
    check(accept::criterion_4());
}

#[test]
fn criterion_5_sup_bound_inequality_and_chain() {
    check(accept::criterion_5());
}

#[test]
fn criterion_6_disc_density_bound() {
    check(accept::criterion_6());
}

#[test]
fn criterion_7_example_curve() {
    check(accept::criterion_7());
}

#[test]
fn criterion_8_dual_path_products() {
    check(accept::criterion_8());
}
