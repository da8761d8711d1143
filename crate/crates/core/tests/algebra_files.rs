//! The bundled algebra presentations pass the full structure checker.

use gcross_core::frob::{
    check_algebra, g_cocommutativity_residual, g_commutativity_residual, FrobeniusAlgebra,
};
use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use std::path::PathBuf;
use std::sync::Arc;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn engine(name: &str) -> Engine {
    Engine::new(Arc::new(load_spec(&data(name)).unwrap()))
}

fn assert_all_pass(e: &Engine, alg: &FrobeniusAlgebra, label: &str) {
    for c in check_algebra(e, alg).unwrap() {
        assert!(c.pass, "{label}: {} residual {:.3e}", c.name, c.residual);
    }
}

#[test]
fn algebra_1_on_every_spec() {
    for spec in [
        "trivial.json",
        "vec_z2_semion.json",
        "vec_z2_symmetric.json",
        "vec_z4.json",
        "ising_trivialG.json",
        "ising_z2crossed.json",
    ] {
        let e = engine(spec);
        let a = FrobeniusAlgebra::load(&e.spec, &data("algebra_1.json")).unwrap();
        assert_all_pass(&e, &a, spec);
        assert!(g_commutativity_residual(&e, &a).unwrap() < 1e-12);
        assert!(g_cocommutativity_residual(&e, &a).unwrap() < 1e-12);
    }
}

#[test]
fn algebra_1psi_in_ising() {
    for spec in ["ising_trivialG.json", "ising_z2crossed.json"] {
        let e = engine(spec);
        let a = FrobeniusAlgebra::load(&e.spec, &data("algebra_1psi.json")).unwrap();
        assert_all_pass(&e, &a, spec);
        assert!((a.dim(&e.spec).re - 2.0).abs() < 1e-12);
        // The fermionic double point is not commutative.
        assert!(g_commutativity_residual(&e, &a).unwrap() > 0.5);
    }
}

#[test]
fn algebra_1_2_in_vec_z4() {
    let e = engine("vec_z4.json");
    let a = FrobeniusAlgebra::load(&e.spec, &data("algebra_1_2.json")).unwrap();
    assert_all_pass(&e, &a, "vec_z4");
    // The boson at label 2 gives a commutative algebra.
    assert!(g_commutativity_residual(&e, &a).unwrap() < 1e-12);
    assert!(g_cocommutativity_residual(&e, &a).unwrap() < 1e-12);
}

#[test]
fn function_algebra_in_crossed_ising() {
    let e = engine("ising_z2crossed.json");
    let a = FrobeniusAlgebra::load(&e.spec, &data("algebra_func_z2.json")).unwrap();
    assert_all_pass(&e, &a, "algebra_func_z2");
    assert!(g_commutativity_residual(&e, &a).unwrap() < 1e-12);
    assert!(g_cocommutativity_residual(&e, &a).unwrap() < 1e-12);
}
