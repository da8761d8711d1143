//! Derived categories (reverse, crossed product, neutral double), algebra
//! induction, Frobenius–Perron dimensions and modular data.

use gcross_core::construct::{
    crossed_product, fpdim_object, fpdim_simples, induce_algebra, is_modular, modular_data,
    neutral_double, reverse_category,
};
use gcross_core::frob::{check_algebra, g_commutativity_residual, FrobeniusAlgebra};
use gcross_core::object::ObjectExpr;
use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use gcross_core::validate::{validate_spec, validate_spec_monoidal};
use gcross_core::CategorySpec;
use std::path::PathBuf;
use std::sync::Arc;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn spec(name: &str) -> CategorySpec {
    load_spec(&data(name)).unwrap()
}

const ALL: &[&str] = &[
    "trivial.json",
    "vec_z2_semion.json",
    "vec_z2_symmetric.json",
    "vec_z4.json",
    "ising_trivialG.json",
    "ising_z2crossed.json",
];

fn assert_validates(s: CategorySpec, label: &str) {
    let e = Engine::new(Arc::new(s));
    let rep = validate_spec(&e);
    for c in &rep.checks {
        assert!(c.pass, "{label}: {} residual {:.3e}", c.name, c.residual);
    }
}

#[test]
fn reverse_categories_validate() {
    for name in ALL {
        let rev = reverse_category(&spec(name)).unwrap();
        assert_validates(rev, &format!("reverse({name})"));
    }
}

#[test]
fn reverse_is_an_involution() {
    for name in ALL {
        let s = spec(name);
        let rr = reverse_category(&reverse_category(&s).unwrap()).unwrap();
        assert_eq!(rr.n, s.n, "{name}: fusion rules differ");
        for (k, m) in &s.f {
            let m2 = rr.f.get(k).expect("missing F block");
            assert!((m - m2).norm() < 1e-12, "{name}: F{k:?} differs");
        }
        for (k, m) in &s.r {
            let m2 = rr.r.get(k).expect("missing R block");
            assert!((m - m2).norm() < 1e-12, "{name}: R{k:?} differs");
        }
        for a in 0..s.rank() {
            assert_eq!(rr.labels[a].dual, s.labels[a].dual);
            assert_eq!(rr.labels[a].grade, s.labels[a].grade);
        }
    }
}

#[test]
fn crossed_product_with_point_category_is_identity() {
    for name in ALL {
        let c = spec(name);
        // A one-object category over the same group with trivial everything.
        let mut triv = spec("trivial.json");
        triv.group = c.group.clone();
        triv.perm = vec![vec![0]; c.group.order()];
        let p = crossed_product(&c, &triv).unwrap();
        assert_eq!(p.spec.rank(), c.rank(), "{name}");
        assert_eq!(p.spec.n, c.n, "{name}: fusion rules differ");
        for (k, m) in &c.f {
            let m2 = p.spec.f.get(k).expect("missing F block");
            assert!((m - m2).norm() < 1e-12, "{name}: F{k:?} differs");
        }
        let e = Engine::new(Arc::new(p.spec));
        let rep = validate_spec_monoidal(&e);
        for chk in &rep.checks {
            assert!(chk.pass, "{name}: {} {:.3e}", chk.name, chk.residual);
        }
    }
}

#[test]
fn crossed_product_of_crossed_ising_validates() {
    let c = spec("ising_z2crossed.json");
    let p = crossed_product(&c, &c).unwrap();
    assert_eq!(p.spec.rank(), 9);
    let e = Engine::new(Arc::new(p.spec));
    let rep = validate_spec_monoidal(&e);
    for chk in &rep.checks {
        assert!(chk.pass, "{}: residual {:.3e}", chk.name, chk.residual);
    }
}

#[test]
fn neutral_double_of_crossed_ising() {
    let c = spec("ising_z2crossed.json");
    let d = neutral_double(&c).unwrap();
    // Grade-diagonal pairs: 4 in the neutral sector plus (σ, σ).
    assert_eq!(d.spec.rank(), 5);
    let ss = d.index[&(2, 2)];
    assert!((d.spec.qdim(ss) - 2.0).abs() < 1e-12);
    assert_validates(d.spec, "double(ising_z2crossed)");
}

#[test]
fn neutral_double_of_trivially_graded_specs() {
    for name in ["ising_trivialG.json", "vec_z4.json", "vec_z2_semion.json"] {
        let c = spec(name);
        let d = neutral_double(&c).unwrap();
        assert_eq!(d.spec.rank(), c.rank() * c.rank());
        assert_validates(d.spec, &format!("double({name})"));
    }
}

#[test]
fn induced_algebra_from_trivial_subgroup() {
    let s = spec("ising_z2crossed.json");
    let e = Engine::new(Arc::new(s));
    let a = FrobeniusAlgebra::trivial(&e.spec);
    let ind = induce_algebra(&e, &a, &[0]).unwrap();
    // |G/H| = 2 copies of the unit.
    let empty: Vec<Vec<usize>> = vec![vec![], vec![]];
    assert_eq!(ind.carrier.words, empty);
    assert!((ind.dim(&e.spec).re - 2.0).abs() < 1e-12);
    for c in check_algebra(&e, &ind).unwrap() {
        assert!(c.pass, "{}: residual {:.3e}", c.name, c.residual);
    }
    assert!(g_commutativity_residual(&e, &ind).unwrap() < 1e-9);
    // It coincides with the bundled function algebra on Z/2.
    let f = FrobeniusAlgebra::load(&e.spec, &data("algebra_func_z2.json")).unwrap();
    assert!(ind.mult.distance(&f.mult) < 1e-12);
    for g in 0..2 {
        assert!(ind.z[g].distance(&f.z[g]) < 1e-12);
    }
}

#[test]
fn induced_algebra_from_full_group_is_unchanged() {
    let s = spec("ising_z2crossed.json");
    let e = Engine::new(Arc::new(s));
    let a = FrobeniusAlgebra::load(&e.spec, &data("algebra_1psi.json")).unwrap();
    let ind = induce_algebra(&e, &a, &[0, 1]).unwrap();
    assert!(ind.mult.distance(&a.mult) < 1e-12);
    assert!(ind.comult.distance(&a.comult) < 1e-12);
}

#[test]
fn fpdims_match_quantum_dims_on_unitary_specs() {
    for name in ALL {
        let s = spec(name);
        let fp = fpdim_simples(&s);
        for a in 0..s.rank() {
            assert!(
                (fp[a] - s.qdim(a)).abs() < 1e-9,
                "{name}: fp[{a}] = {}, qdim = {}",
                fp[a],
                s.qdim(a)
            );
        }
        let all = ObjectExpr::sum_of_simples(&(0..s.rank()).collect::<Vec<_>>());
        let total: f64 = (0..s.rank()).map(|a| s.qdim(a)).sum();
        assert!((fpdim_object(&s, &all) - total).abs() < 1e-9);
    }
}

#[test]
fn modular_data_of_ising_and_friends() {
    let e = Engine::new(Arc::new(spec("ising_trivialG.json")));
    let (s, t) = modular_data(&e).unwrap();
    // Unnormalized S: S[0][·] = qdims; S[σ,σ] = 0; S[ψ,σ] = -√2.
    assert!((s[(0, 2)].re - 2f64.sqrt()).abs() < 1e-9);
    assert!(s[(2, 2)].norm() < 1e-9);
    assert!((s[(1, 2)].re + 2f64.sqrt()).abs() < 1e-9);
    assert!((t[(1, 1)].re + 1.0).abs() < 1e-12);
    assert!(is_modular(&e).unwrap());

    let e2 = Engine::new(Arc::new(spec("vec_z2_semion.json")));
    assert!(is_modular(&e2).unwrap());

    // The symmetric point category has a degenerate braiding.
    let e3 = Engine::new(Arc::new(spec("vec_z2_symmetric.json")));
    assert!(!is_modular(&e3).unwrap());
}
