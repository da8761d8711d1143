//! End-to-end acceptance battery: one test per shipped guarantee. Each test
//! prints a single summary line (visible with --nocapture) and fails when
//! the corresponding residual bound or runtime budget is violated.

mod common;

use gcross_core::alphamod::{
    build_theta, idempotent_p, idempotent_ptilde, z_matrix, z_matrix_oracle,
};
use gcross_core::centermod::{compare_center_theta, longo_rehren, modularity_report};
use gcross_core::construct::induce_algebra;
use gcross_core::frob::{
    check_algebra, g_cocommutativity_residual, g_commutativity_residual, product_algebra,
    FrobeniusAlgebra,
};
use gcross_core::morphism::Morphism;
use gcross_core::object::{object_qdim, ObjectExpr};
use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use gcross_core::validate::validate_spec;
use gcross_core::C64;
use std::sync::Arc;
use std::time::Instant;

/// Every bundled (category, algebra) combination.
const ALL_ALGEBRAS: [(&str, &str); 9] = [
    ("trivial.json", "algebra_1.json"),
    ("vec_z2_semion.json", "algebra_1.json"),
    ("vec_z2_symmetric.json", "algebra_1.json"),
    ("vec_z4.json", "algebra_1.json"),
    ("vec_z4.json", "algebra_1_2.json"),
    ("ising_trivialG.json", "algebra_1.json"),
    ("ising_trivialG.json", "algebra_1psi.json"),
    ("ising_z2crossed.json", "algebra_1.json"),
    ("ising_z2crossed.json", "algebra_func_z2.json"),
];

fn alg(e: &Engine, name: &str) -> FrobeniusAlgebra {
    FrobeniusAlgebra::load(&e.spec, &common::data(name)).unwrap()
}

#[test]
fn criterion_1_validation_and_sensitivity() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for name in common::SPECS {
        let e = common::engine(name);
        let v = validate_spec(&e);
        assert!(v.all_pass(), "{name}: validation failed");
        worst = worst.max(v.max_residual());
    }
    assert!(worst < 1e-9, "validation residual {worst:.3e}");
    // Sensitivity: a 1e-3 perturbation of any single F coefficient must be
    // caught by the pentagon check.
    let base = load_spec(&common::data("ising_trivialG.json")).unwrap();
    let mut weakest = f64::INFINITY;
    let keys: Vec<_> = base.f.keys().cloned().collect();
    for key in keys {
        let shape = base.f[&key].shape();
        for i in 0..shape.0 {
            for j in 0..shape.1 {
                let mut spec = base.clone();
                spec.f.get_mut(&key).unwrap()[(i, j)] += C64::new(1e-3, 0.0);
                let v = validate_spec(&Engine::new(Arc::new(spec)));
                let pent = v
                    .checks
                    .iter()
                    .find(|c| c.name == "pentagon")
                    .unwrap()
                    .residual;
                weakest = weakest.min(pent);
            }
        }
    }
    assert!(weakest >= 1e-4, "pentagon sensitivity only {weakest:.3e}");
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 5.0, "criterion 1 took {secs:.1}s (budget 5s)");
    println!("criterion 1 (validation + sensitivity): pass, max residual {worst:.2e}, weakest detection {weakest:.2e}, {secs:.1}s");
}

#[test]
fn criterion_2_graphical_identity_suite() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for (lemma, residuals) in common::all_lemma_residuals(100) {
        for (spec, r) in residuals {
            assert!(r < 1e-8, "{lemma} on {spec}: residual {r:.3e}");
            worst = worst.max(r);
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 120.0, "criterion 2 took {secs:.1}s (budget 120s)");
    println!("criterion 2 (graphical identities, 11 suites x 100 instances): pass, max residual {worst:.2e}, {secs:.1}s");
}

#[test]
fn criterion_3_local_projectors() {
    let mut worst = 0.0f64;
    for (sname, aname) in ALL_ALGEBRAS {
        let e = common::engine(sname);
        let a = alg(&e, aname);
        // Both projectors are idempotent at every simple / at the carrier.
        for l in 0..e.spec.rank() {
            let lam = ObjectExpr::simple(l);
            let p = idempotent_ptilde(&e, &a, &lam).unwrap();
            let r = p.compose(&p).unwrap().distance(&p);
            assert!(r < 1e-9, "{sname}/{aname} simple {l}: residual {r:.3e}");
            worst = worst.max(r);
        }
        let p = idempotent_p(&e, &a, &a.carrier, &a.z).unwrap();
        let r = p.compose(&p).unwrap().distance(&p);
        assert!(r < 1e-9, "{sname}/{aname} carrier: residual {r:.3e}");
        worst = worst.max(r);
        // For G-commutative algebras the equivariant projector at the
        // algebra itself is the identity.
        if g_commutativity_residual(&e, &a).unwrap() < 1e-9 {
            let idm = Morphism::identity(&e.spec, &a.carrier.tensor(&a.carrier));
            let r = p.distance(&idm);
            assert!(r < 1e-9, "{sname}/{aname}: P ≠ id, residual {r:.3e}");
            worst = worst.max(r);
        }
    }
    // The central idempotent of a product with a G-commutative factor equals
    // the projector of the first factor at the second.
    for (name, an, bn) in [
        ("vec_z4.json", "algebra_1_2.json", "algebra_1_2.json"),
        ("ising_z2crossed.json", "algebra_1psi.json", "algebra_func_z2.json"),
        ("ising_trivialG.json", "algebra_1psi.json", "algebra_1.json"),
    ] {
        let e = common::engine(name);
        let a = alg(&e, an);
        let b = alg(&e, bn);
        let ab = product_algebra(&e, &a, &b).unwrap();
        let unit = ObjectExpr::simple(e.spec.unit);
        let unit_z: Vec<Morphism> = (0..e.spec.group.order())
            .map(|_| Morphism::identity(&e.spec, &unit))
            .collect();
        let lhs = idempotent_p(&e, &ab, &unit, &unit_z).unwrap();
        let rhs_core = idempotent_p(&e, &a, &b.carrier, &b.z).unwrap();
        let rhs = e.tensor(&rhs_core, &Morphism::identity(&e.spec, &unit));
        let r = lhs.distance(&rhs);
        assert!(r < 1e-9, "{name} {an}x{bn}: residual {r:.3e}");
        worst = worst.max(r);
    }
    println!("criterion 3 (local projectors): pass, max residual {worst:.2e}");
}

#[test]
fn criterion_4_induced_double_algebras() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for (sname, aname) in common::PAIRS {
        let e = common::engine(sname);
        let a = alg(&e, aname);
        let th = build_theta(&e, &a, None).unwrap();
        let ed = Engine::new(th.ctx.double.clone());
        for c in check_algebra(&ed, &th.algebra).unwrap() {
            assert!(
                c.pass && c.residual < 1e-9,
                "{sname}/{aname}: {} residual {:.3e}",
                c.name,
                c.residual
            );
            worst = worst.max(c.residual);
        }
        // m∘Δ is dim Θ times the identity.
        let dim = object_qdim(&ed.spec, &th.algebra.carrier);
        let md = th.algebra.mult.compose(&th.algebra.comult).unwrap();
        let idm = th.algebra.id(&ed.spec);
        let scaled = idm.scale(C64::new(dim, 0.0));
        let r = md.distance(&scaled);
        assert!(r < 1e-9, "{sname}/{aname}: m∘Δ residual {r:.3e}");
        worst = worst.max(r);
        let rc = g_commutativity_residual(&ed, &th.algebra).unwrap();
        let rcc = g_cocommutativity_residual(&ed, &th.algebra).unwrap();
        assert!(rc < 1e-9 && rcc < 1e-9, "{sname}/{aname}: commutativity {rc:.3e}/{rcc:.3e}");
        worst = worst.max(rc).max(rcc);
        // Gauge independence under randomized re-gauging.
        for seed in [3u64, 41] {
            let g = build_theta(&e, &a, Some(seed)).unwrap();
            let drift = th
                .algebra
                .mult
                .distance(&g.algebra.mult)
                .max(th.algebra.comult.distance(&g.algebra.comult));
            assert!(drift < 1e-8, "{sname}/{aname} seed {seed}: drift {drift:.3e}");
            worst = worst.max(drift);
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 180.0, "criterion 4 took {secs:.1}s (budget 180s)");
    println!("criterion 4 (induced double algebras): pass, max residual {worst:.2e}, {secs:.1}s");
}

#[test]
fn criterion_5_multiplicity_matrices() {
    // Trivial algebra: identity pattern on every category.
    for name in common::SPECS {
        let e = common::engine(name);
        let a = alg(&e, "algebra_1.json");
        let zm = z_matrix(&e, &a).unwrap();
        for l in 0..zm.n {
            for m in 0..zm.n {
                assert_eq!(
                    zm.entries[l][m],
                    usize::from(l == m),
                    "{name}: Z[{l}][{m}]"
                );
            }
        }
    }
    // Nontrivial algebras against the brute-force rank oracle.
    for (sname, aname) in [
        ("ising_trivialG.json", "algebra_1psi.json"),
        ("vec_z4.json", "algebra_1_2.json"),
    ] {
        let e = common::engine(sname);
        let a = alg(&e, aname);
        let zm = z_matrix(&e, &a).unwrap();
        let oracle = z_matrix_oracle(&e, &a).unwrap();
        assert_eq!(zm.entries, oracle, "{sname}/{aname}: oracle mismatch");
    }
    println!("criterion 5 (multiplicity matrices vs oracle): pass");
}

#[test]
fn criterion_6_modular_invariance() {
    let mut worst = 0.0f64;
    for (sname, aname) in [
        ("ising_trivialG.json", "algebra_1.json"),
        ("vec_z4.json", "algebra_1_2.json"),
    ] {
        let e = common::engine(sname);
        let a = alg(&e, aname);
        let m = modularity_report(&e, &a).unwrap();
        let (zs, zt) = m.st_commutation.expect("trivial group expected");
        assert!(zs < 1e-9 && zt < 1e-9, "{sname}/{aname}: ZS {zs:.3e} ZT {zt:.3e}");
        worst = worst.max(zs).max(zt);
    }
    println!("criterion 6 (modular invariance): pass, max residual {worst:.2e}");
}

#[test]
fn criterion_7_center_matches_theta() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for (sname, aname) in common::PAIRS {
        let e = common::engine(sname);
        let a = alg(&e, aname);
        let cmp = compare_center_theta(&e, &a).unwrap();
        assert!(cmp.multiplicities_equal, "{sname}/{aname}: multiplicities differ");
        assert!(cmp.iso_found, "{sname}/{aname}: no isomorphism found");
        assert!(
            cmp.iso_residual < 1e-8,
            "{sname}/{aname}: iso residual {:.3e}",
            cmp.iso_residual
        );
        worst = worst.max(cmp.iso_residual);
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 300.0, "criterion 7 took {secs:.1}s (budget 300s)");
    println!("criterion 7 (full center = induced double algebra): pass, max residual {worst:.2e}, {secs:.1}s");
}

#[test]
fn criterion_8_induction() {
    let e = common::engine("ising_z2crossed.json");
    let a = alg(&e, "algebra_1.json");
    let ind = induce_algebra(&e, &a, &[0]).unwrap();
    let r = g_commutativity_residual(&e, &ind).unwrap();
    assert!(r < 1e-9, "induced algebra not G-commutative: {r:.3e}");
    let dim_ind = object_qdim(&e.spec, &ind.carrier);
    let dim_a = object_qdim(&e.spec, &a.carrier);
    let expected = e.spec.group.order() as f64 * dim_a;
    assert!(
        (dim_ind - expected).abs() < 1e-12,
        "dim {dim_ind} ≠ |G/H|·dim A = {expected}"
    );
    println!("criterion 8 (induction from the trivial subgroup): pass, residual {r:.2e}");
}

#[test]
fn criterion_9_dimension_criterion() {
    let mut worst = 0.0f64;
    for name in common::SPECS {
        let e = common::engine(name);
        let th = longo_rehren(&e).unwrap();
        let dim = object_qdim(&th.ctx.double, &th.algebra.carrier);
        let r = (dim - e.spec.global_dim()).abs();
        assert!(r < 1e-9, "{name}: dim Θ = {dim}, residual {r:.3e}");
        worst = worst.max(r);
    }
    println!("criterion 9 (dimension criterion): pass, max residual {worst:.2e}");
}
