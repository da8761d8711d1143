//! End-to-end checks of the recoupling/braiding/duality engine on the
//! bundled category files: validation, twists, traces, braid values.

use gcross_core::morphism::Morphism;
use gcross_core::object::ObjectExpr;
use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use gcross_core::validate::validate_spec;
use gcross_core::C64;
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

const ALL: &[&str] = &[
    "trivial.json",
    "vec_z2_semion.json",
    "vec_z2_symmetric.json",
    "vec_z4.json",
    "ising_trivialG.json",
    "ising_z2crossed.json",
];

#[test]
fn all_bundled_specs_validate() {
    for name in ALL {
        let e = engine(name);
        let rep = validate_spec(&e);
        for c in &rep.checks {
            assert!(c.pass, "{name}: check {} residual {:.3e}", c.name, c.residual);
        }
        assert!(rep.max_residual() < 1e-9, "{name}: {:.3e}", rep.max_residual());
    }
}

/// The scalar by which a twist endomorphism of a simple acts.
fn twist_scalar(e: &Engine, l: usize) -> C64 {
    let t = e.twist(l).unwrap();
    let id = Morphism::identity(&e.spec, &ObjectExpr::simple(l));
    // t = s * id; read off s from the unique block.
    let b = t.blocks.values().next().unwrap();
    let _ = id;
    b[(0, 0)]
}

#[test]
fn ising_twists_and_traces() {
    for name in ["ising_trivialG.json", "ising_z2crossed.json"] {
        let e = engine(name);
        let th_psi = twist_scalar(&e, 1);
        assert!((th_psi + C64::new(1.0, 0.0)).norm() < 1e-12, "{name}: theta_psi = {th_psi}");
        let th_sigma = twist_scalar(&e, 2);
        let expect = C64::from_polar(1.0, std::f64::consts::PI / 8.0);
        assert!(
            (th_sigma - expect).norm() < 1e-12,
            "{name}: theta_sigma = {th_sigma}"
        );
        let id_sigma = Morphism::identity(&e.spec, &ObjectExpr::simple(2));
        let tl = e.trace_left_diagram(&id_sigma).unwrap();
        assert!((tl - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
    }
}

#[test]
fn semion_twist_is_i() {
    let e = engine("vec_z2_semion.json");
    let th = twist_scalar(&e, 1);
    assert!((th - C64::new(0.0, 1.0)).norm() < 1e-12, "theta_s = {th}");
}

#[test]
fn vec_z4_twists() {
    let e = engine("vec_z4.json");
    for a in 0..4usize {
        let th = twist_scalar(&e, a);
        let expect = C64::i().powu(((a * a) % 4) as u32);
        assert!((th - expect).norm() < 1e-12, "theta_{a} = {th}, want {expect}");
    }
}

#[test]
fn sigma_sigma_braid_matches_r_data() {
    let e = engine("ising_trivialG.json");
    let b = e.braid_words(&[2], &[2]).unwrap();
    // hom(c, σσ) is 1-dimensional for c ∈ {1, ψ}; blocks are the R values.
    let r0 = b.block(0, 0, 0).unwrap()[(0, 0)];
    let r1 = b.block(0, 0, 1).unwrap()[(0, 0)];
    assert!((r0 - C64::from_polar(1.0, -std::f64::consts::PI / 8.0)).norm() < 1e-12);
    assert!((r1 - C64::from_polar(1.0, 3.0 * std::f64::consts::PI / 8.0)).norm() < 1e-12);
}

#[test]
fn braid_inverse_roundtrip_on_words() {
    let e = engine("ising_trivialG.json");
    for w in [vec![2usize, 1], vec![2, 2], vec![1, 2, 2]] {
        for v in [vec![2usize], vec![2, 1]] {
            let b = e.braid_words(&w, &v).unwrap();
            let binv = e.braid_words_rev(&w, &v).unwrap();
            let round = binv.compose(&b).unwrap();
            let mut wv = w.clone();
            wv.extend_from_slice(&v);
            let id = Morphism::identity(&e.spec, &ObjectExpr::word(wv));
            assert!(round.distance(&id) < 1e-12);
        }
    }
}

#[test]
fn merge_tensor_unit_laws() {
    let e = engine("ising_z2crossed.json");
    let w = ObjectExpr::word(vec![2, 1, 2]);
    let id = Morphism::identity(&e.spec, &w);
    let idu = Morphism::identity(&e.spec, &ObjectExpr::unit());
    let l = e.tensor(&idu, &id);
    let r = e.tensor(&id, &idu);
    // Unit has empty word; tensoring with it must be the identity block map.
    assert!(l.distance(&id) < 1e-12);
    assert!(r.distance(&id) < 1e-12);
    // Tensor of identities is the identity.
    let v = ObjectExpr::word(vec![2, 2]);
    let idv = Morphism::identity(&e.spec, &v);
    let t = e.tensor(&id, &idv);
    let idwv = Morphism::identity(&e.spec, &w.tensor(&v));
    assert!(t.distance(&idwv) < 1e-12);
}

#[test]
fn conjugate_of_identity_is_identity() {
    for name in ALL {
        let e = engine(name);
        let rank = e.spec.rank();
        for l in 0..rank {
            let id = Morphism::identity(&e.spec, &ObjectExpr::simple(l));
            let c = e.conjugate(&id).unwrap();
            let idc = Morphism::identity(
                &e.spec,
                &ObjectExpr::word(e.dual_word(&[l])),
            );
            assert!(
                c.distance(&idc) < 1e-9,
                "{name}: conjugate(id_{l}) distance {:.3e}",
                c.distance(&idc)
            );
        }
    }
}

#[test]
fn trace_of_identity_is_qdim() {
    for name in ALL {
        let e = engine(name);
        for l in 0..e.spec.rank() {
            let id = Morphism::identity(&e.spec, &ObjectExpr::simple(l));
            let t = e.trace(&id).unwrap();
            assert!((t - C64::new(e.spec.qdim(l), 0.0)).norm() < 1e-12);
        }
    }
}
