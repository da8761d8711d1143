//! Coherence validation of a category spec: group axioms, grading, duality,
//! pentagon, G-braiding coherence, action coherence, sphericality, and
//! (optionally) unitarity. Failures are report entries, not errors.

use crate::morphism::Morphism;
use crate::object::ObjectExpr;
use crate::recouple::Engine;
use crate::C64;
use nalgebra::DMatrix;
use serde::Serialize;

/// One named check with its maximal residual.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
}

/// The full validation report.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
    fn push(&mut self, name: &str, residual: f64, tol: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass: residual < tol,
            residual,
        });
    }
}

fn mat_residual(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Runs all coherence checks against the spec tolerance.
pub fn validate_spec(engine: &Engine) -> ValidationReport {
    validate_impl(engine, true)
}

/// Runs the coherence checks that do not involve a braiding: for fusion
/// categories with a G-action but no G-braiding (e.g. crossed products).
pub fn validate_spec_monoidal(engine: &Engine) -> ValidationReport {
    validate_impl(engine, false)
}

fn validate_impl(engine: &Engine, braided: bool) -> ValidationReport {
    let spec = engine.spec.clone();
    let tol = spec.tol;
    let rank = spec.rank();
    let mut rep = ValidationReport { checks: vec![] };

    // Group axioms.
    rep.push(
        "group_axioms",
        spec.group.associativity_defect() as f64,
        tol.max(0.5),
    );

    // Unit label.
    let u = spec.unit;
    let unit_ok = spec.grade(u) == spec.group.e()
        && spec.dual(u) == u
        && (spec.qdim(u) - 1.0).abs() < tol;
    rep.push("unit_label", if unit_ok { 0.0 } else { 1.0 }, 0.5);

    // Duality involution and sphericality of dimensions.
    let mut dual_res = 0.0f64;
    for a in 0..rank {
        if spec.dual(spec.dual(a)) != a {
            dual_res = 1.0;
        }
        if spec.grade(spec.dual(a)) != spec.group.inv(spec.grade(a)) {
            dual_res = 1.0;
        }
        dual_res = dual_res.max((spec.qdim(a) - spec.qdim(spec.dual(a))).abs());
        if spec.qdim(a) <= 0.0 {
            dual_res = 1.0;
        }
    }
    rep.push("duality_involution", dual_res, tol.max(1e-9));

    // Fusion grading compatibility and qdim consistency.
    let mut grade_res = 0.0f64;
    let mut qdim_res = 0.0f64;
    for a in 0..rank {
        for b in 0..rank {
            let mut s = 0.0;
            for c in 0..rank {
                let n = spec.nabc(a, b, c);
                if n > 0 && spec.group.mul(spec.grade(a), spec.grade(b)) != spec.grade(c) {
                    grade_res = grade_res.max(n as f64);
                }
                s += n as f64 * spec.qdim(c);
            }
            qdim_res = qdim_res.max((spec.qdim(a) * spec.qdim(b) - s).abs());
        }
    }
    rep.push("fusion_grading", grade_res, 0.5);
    rep.push("qdim_consistency", qdim_res, 1e-6_f64.max(tol));

    // Pentagon.
    rep.push("pentagon", pentagon_residual(engine), tol);

    if braided {
        // G-braiding coherence: R blocks invertible, naturality of the
        // braiding against fusion vertices in both arguments.
        rep.push("braiding_invertible", braid_invertible_residual(engine), tol);
        rep.push("braiding_coherence", braiding_naturality_residual(engine), tol);
    }

    // Action coherence.
    rep.push("action_permutation", action_perm_residual(engine), 0.5);
    rep.push("action_cocycle", action_cocycle_residual(engine), tol);
    rep.push("action_f_compat", action_f_residual(engine), tol);
    if braided {
        rep.push("action_r_compat", action_r_residual(engine), tol);
    }

    // Duality zig-zags and sphericality of traces.
    rep.push("zigzag", zigzag_residual(engine), tol);
    rep.push("sphericality", spherical_residual(engine), tol);

    if braided {
        // Twist naturality (ribbon identities at the vertex level).
        rep.push("ribbon", ribbon_residual(engine), tol);
    }

    if spec.unitary_mode {
        rep.push("unitarity", unitarity_residual(engine, braided), tol);
    }
    rep
}

fn pentagon_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let mut worst = 0.0f64;
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                for d in 0..rank {
                    for r in 0..rank {
                        worst = worst.max(pentagon_residual_at(engine, a, b, c, d, r));
                    }
                }
            }
        }
    }
    worst
}

/// Compares the two F-paths (((ab)c)d → a(b(cd)) for a fixed root r.
fn pentagon_residual_at(engine: &Engine, a: usize, b: usize, c: usize, d: usize, r: usize) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    // Basis 1: (e, α, f, β, γ); basis 5: (q, ρ, s, τ, υ).
    let mut b1 = Vec::new();
    for e in 0..rank {
        for al in 0..spec.nabc(a, b, e) {
            for f in 0..rank {
                for be in 0..spec.nabc(e, c, f) {
                    for ga in 0..spec.nabc(f, d, r) {
                        b1.push((e, al, f, be, ga));
                    }
                }
            }
        }
    }
    if b1.is_empty() {
        return 0.0;
    }
    let mut b5 = Vec::new();
    for q in 0..rank {
        for ro in 0..spec.nabc(c, d, q) {
            for s in 0..rank {
                for ta in 0..spec.nabc(b, q, s) {
                    for up in 0..spec.nabc(a, s, r) {
                        b5.push((q, ro, s, ta, up));
                    }
                }
            }
        }
    }
    if b5.len() != b1.len() {
        return f64::INFINITY;
    }

    let zero = C64::new(0.0, 0.0);
    // Path A.
    let mut pa = DMatrix::from_element(b5.len(), b1.len(), zero);
    for (j, &(e, al, f, be, ga)) in b1.iter().enumerate() {
        let f1 = spec.f_matrix(e, c, d, r);
        let lr1 = spec.basis_lr(e, c, d, r);
        let rl1 = spec.basis_rl(e, c, d, r);
        let col1 = lr1.iter().position(|&t| t == (f, be, ga)).unwrap();
        for (i1, &(q, ro, si)) in rl1.iter().enumerate() {
            let c1 = f1[(i1, col1)];
            if c1 == zero {
                continue;
            }
            let f2 = spec.f_matrix(a, b, q, r);
            let lr2 = spec.basis_lr(a, b, q, r);
            let rl2 = spec.basis_rl(a, b, q, r);
            let col2 = lr2.iter().position(|&t| t == (e, al, si)).unwrap();
            for (i2, &(s, ta, up)) in rl2.iter().enumerate() {
                let c2 = f2[(i2, col2)];
                if c2 == zero {
                    continue;
                }
                let row = b5.iter().position(|&t| t == (q, ro, s, ta, up)).unwrap();
                pa[(row, j)] += c1 * c2;
            }
        }
    }
    // Path B.
    let mut pb = DMatrix::from_element(b5.len(), b1.len(), zero);
    for (j, &(e, al, f, be, ga)) in b1.iter().enumerate() {
        let f1 = spec.f_matrix(a, b, c, f);
        let lr1 = spec.basis_lr(a, b, c, f);
        let rl1 = spec.basis_rl(a, b, c, f);
        let col1 = lr1.iter().position(|&t| t == (e, al, be)).unwrap();
        for (i1, &(p, mu, nu)) in rl1.iter().enumerate() {
            let c1 = f1[(i1, col1)];
            if c1 == zero {
                continue;
            }
            let f2 = spec.f_matrix(a, p, d, r);
            let lr2 = spec.basis_lr(a, p, d, r);
            let rl2 = spec.basis_rl(a, p, d, r);
            let col2 = lr2.iter().position(|&t| t == (f, nu, ga)).unwrap();
            for (i2, &(t, xi, ze)) in rl2.iter().enumerate() {
                let c2 = f2[(i2, col2)];
                if c2 == zero {
                    continue;
                }
                let f3 = spec.f_matrix(b, c, d, t);
                let lr3 = spec.basis_lr(b, c, d, t);
                let rl3 = spec.basis_rl(b, c, d, t);
                let col3 = lr3.iter().position(|&v| v == (p, mu, xi)).unwrap();
                for (i3, &(q, ro, ta)) in rl3.iter().enumerate() {
                    let c3 = f3[(i3, col3)];
                    if c3 == zero {
                        continue;
                    }
                    let row = b5.iter().position(|&v| v == (q, ro, t, ta, ze)).unwrap();
                    pb[(row, j)] += c1 * c2 * c3;
                }
            }
        }
    }
    mat_residual(&pa, &pb)
}

fn braid_invertible_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let mut worst = 0.0f64;
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                let r = spec.r_matrix(a, b, c);
                if r.nrows() != r.ncols() {
                    return f64::INFINITY;
                }
                if r.nrows() == 0 {
                    continue;
                }
                match r.clone().try_inverse() {
                    Some(inv) => {
                        let id = DMatrix::identity(r.nrows(), r.nrows());
                        worst = worst.max(mat_residual(&(&r * inv), &id));
                    }
                    None => return f64::INFINITY,
                }
            }
        }
    }
    worst
}

fn braiding_naturality_residual(engine: &Engine) -> f64 {
    let spec = engine.spec.clone();
    let rank = spec.rank();
    let mut worst = 0.0f64;
    for b in 0..rank {
        for c in 0..rank {
            for u in 0..rank {
                for mu in 0..spec.nabc(b, c, u) {
                    let s = engine.vertex(u, b, c, mu);
                    for a in 0..rank {
                        // Second-argument naturality.
                        let ida = Morphism::identity(&spec, &ObjectExpr::simple(a));
                        let g = spec.grade(a);
                        let lhs = match engine.braid_words(&[a], &[b, c]) {
                            Ok(bb) => bb
                                .compose(&engine.tensor(&ida, &s))
                                .map(|m| m)
                                .unwrap_or_else(|_| return_inf()),
                            Err(_) => return f64::INFINITY,
                        };
                        let gs = engine.act(g, &s);
                        let rhs = match engine.braid_words(&[a], &[u]) {
                            Ok(bb) => engine.tensor(&gs, &ida).compose(&bb).unwrap_or_else(|_| return_inf()),
                            Err(_) => return f64::INFINITY,
                        };
                        worst = worst.max(lhs.distance(&rhs));
                        // First-argument naturality.
                        let gu = spec.grade(u);
                        let lhs2 = match engine.braid_words(&[b, c], &[a]) {
                            Ok(bb) => bb
                                .compose(&engine.tensor(&s, &ida))
                                .unwrap_or_else(|_| return_inf()),
                            Err(_) => return f64::INFINITY,
                        };
                        let ga = spec.act_label(gu, a);
                        let idga = Morphism::identity(&spec, &ObjectExpr::simple(ga));
                        let rhs2 = match engine.braid_words(&[u], &[a]) {
                            Ok(bb) => engine.tensor(&idga, &s).compose(&bb).unwrap_or_else(|_| return_inf()),
                            Err(_) => return f64::INFINITY,
                        };
                        worst = worst.max(lhs2.distance(&rhs2));
                    }
                }
            }
        }
    }
    worst
}

fn return_inf() -> Morphism {
    // Sentinel for shape errors inside closures; compared against anything it
    // yields an infinite residual.
    Morphism::zero(ObjectExpr::zero(), ObjectExpr::zero())
}

fn action_perm_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let ord = spec.group.order();
    let mut bad = 0.0f64;
    for a in 0..rank {
        if spec.act_label(spec.group.e(), a) != a {
            bad = 1.0;
        }
        for g in 0..ord {
            let ga = spec.act_label(g, a);
            if spec.dual(ga) != spec.act_label(g, spec.dual(a)) {
                bad = 1.0;
            }
            if (spec.qdim(ga) - spec.qdim(a)).abs() > 1e-9 {
                bad = 1.0;
            }
            let want = spec
                .group
                .mul(spec.group.mul(g, spec.grade(a)), spec.group.inv(g));
            if spec.grade(ga) != want {
                bad = 1.0;
            }
            if (spec.labels[ga].pivotal - spec.labels[a].pivotal).norm() > 1e-9 {
                bad = 1.0;
            }
            for h in 0..ord {
                if spec.act_label(g, spec.act_label(h, a))
                    != spec.act_label(spec.group.mul(g, h), a)
                {
                    bad = 1.0;
                }
            }
        }
    }
    bad
}

fn action_cocycle_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let ord = spec.group.order();
    let mut worst = 0.0f64;
    for g in 0..ord {
        for h in 0..ord {
            let gh = spec.group.mul(g, h);
            for a in 0..rank {
                for b in 0..rank {
                    for c in 0..rank {
                        if spec.nabc(a, b, c) == 0 {
                            continue;
                        }
                        let uh = spec.u_matrix(h, a, b, c);
                        let ug = spec.u_matrix(
                            g,
                            spec.act_label(h, a),
                            spec.act_label(h, b),
                            spec.act_label(h, c),
                        );
                        let ugh = spec.u_matrix(gh, a, b, c);
                        worst = worst.max(mat_residual(&(&ug * &uh), &ugh));
                    }
                }
            }
        }
    }
    worst
}

fn action_f_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let ord = spec.group.order();
    let mut worst = 0.0f64;
    for g in 0..ord {
        if g == spec.group.e() {
            continue;
        }
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    for d in 0..rank {
                        let lr = spec.basis_lr(a, b, c, d);
                        let rl = spec.basis_rl(a, b, c, d);
                        if lr.is_empty() {
                            continue;
                        }
                        let (ga, gb, gc, gd) = (
                            spec.act_label(g, a),
                            spec.act_label(g, b),
                            spec.act_label(g, c),
                            spec.act_label(g, d),
                        );
                        let glr = spec.basis_lr(ga, gb, gc, gd);
                        let grl = spec.basis_rl(ga, gb, gc, gd);
                        // Transport on the lr basis: U[g,a,b,e] ⊗ U[g,e,c,d].
                        let mut t1 = DMatrix::<C64>::zeros(glr.len(), lr.len());
                        for (j, &(e, al, be)) in lr.iter().enumerate() {
                            let u1 = spec.u_matrix(g, a, b, e);
                            let u2 = spec.u_matrix(g, e, c, d);
                            let ge = spec.act_label(g, e);
                            for (i, &(e2, al2, be2)) in glr.iter().enumerate() {
                                if e2 != ge {
                                    continue;
                                }
                                t1[(i, j)] = u1[(al2, al)] * u2[(be2, be)];
                            }
                        }
                        // Transport on the rl basis: U[g,b,c,f] ⊗ U[g,a,f,d].
                        let mut t2 = DMatrix::<C64>::zeros(grl.len(), rl.len());
                        for (j, &(f, mu, nu)) in rl.iter().enumerate() {
                            let u1 = spec.u_matrix(g, b, c, f);
                            let u2 = spec.u_matrix(g, a, f, d);
                            let gf = spec.act_label(g, f);
                            for (i, &(f2, mu2, nu2)) in grl.iter().enumerate() {
                                if f2 != gf {
                                    continue;
                                }
                                t2[(i, j)] = u1[(mu2, mu)] * u2[(nu2, nu)];
                            }
                        }
                        let lhs = spec.f_matrix(ga, gb, gc, gd) * t1;
                        let rhs = t2 * spec.f_matrix(a, b, c, d);
                        worst = worst.max(mat_residual(&lhs, &rhs));
                    }
                }
            }
        }
    }
    worst
}

fn action_r_residual(engine: &Engine) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let ord = spec.group.order();
    let mut worst = 0.0f64;
    for g in 0..ord {
        if g == spec.group.e() {
            continue;
        }
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    if spec.nabc(a, b, c) == 0 {
                        continue;
                    }
                    let (ga, gb, gc) = (
                        spec.act_label(g, a),
                        spec.act_label(g, b),
                        spec.act_label(g, c),
                    );
                    let da = spec.grade(a);
                    let dab = spec.act_label(da, b);
                    let lhs = spec.r_matrix(ga, gb, gc) * spec.u_matrix(g, a, b, c);
                    let rhs = spec.u_matrix(g, dab, a, c) * spec.r_matrix(a, b, c);
                    worst = worst.max(mat_residual(&lhs, &rhs));
                }
            }
        }
    }
    worst
}

fn zigzag_residual(engine: &Engine) -> f64 {
    let spec = engine.spec.clone();
    let mut worst = 0.0f64;
    for l in 0..spec.rank() {
        let ld = spec.dual(l);
        let idl = Morphism::identity(&spec, &ObjectExpr::simple(l));
        let idld = Morphism::identity(&spec, &ObjectExpr::simple(ld));
        // Left duality zig-zags.
        let z1 = engine
            .tensor(&idl, &engine.ev(l))
            .compose(&engine.tensor(&engine.coev(l), &idl));
        let z2 = engine
            .tensor(&engine.ev(l), &idld)
            .compose(&engine.tensor(&idld, &engine.coev(l)));
        // Right duality zig-zags.
        let z3 = engine
            .tensor(&engine.ev_r(l), &idl)
            .compose(&engine.tensor(&idl, &engine.coev_r(l)));
        let z4 = engine
            .tensor(&idld, &engine.ev_r(l))
            .compose(&engine.tensor(&engine.coev_r(l), &idld));
        for (z, id) in [(z1, &idl), (z2, &idld), (z3, &idl), (z4, &idld)] {
            match z {
                Ok(z) => worst = worst.max(z.distance(id)),
                Err(_) => return f64::INFINITY,
            }
        }
    }
    worst
}

fn spherical_residual(engine: &Engine) -> f64 {
    let spec = engine.spec.clone();
    let mut worst = 0.0f64;
    for l in 0..spec.rank() {
        let idl = Morphism::identity(&spec, &ObjectExpr::simple(l));
        let d = spec.qdim(l);
        let tl = engine.trace_left_diagram(&idl);
        let tr = engine.trace_right_diagram(&idl);
        match (tl, tr) {
            (Ok(tl), Ok(tr)) => {
                worst = worst.max((tl - C64::new(d, 0.0)).norm());
                worst = worst.max((tr - C64::new(d, 0.0)).norm());
            }
            _ => return f64::INFINITY,
        }
    }
    worst
}

fn ribbon_residual(engine: &Engine) -> f64 {
    let spec = engine.spec.clone();
    let mut worst = 0.0f64;
    // θ_1 = id.
    match engine.twist(spec.unit) {
        Ok(t) => {
            let idu = Morphism::identity(&spec, &ObjectExpr::simple(spec.unit));
            worst = worst.max(t.distance(&idu));
        }
        Err(_) => return f64::INFINITY,
    }
    // ^g θ_λ = θ_{^gλ}.
    for g in 0..spec.group.order() {
        for l in 0..spec.rank() {
            match (engine.twist(l), engine.twist(spec.act_label(g, l))) {
                (Ok(t), Ok(tg)) => worst = worst.max(engine.act(g, &t).distance(&tg)),
                _ => return f64::INFINITY,
            }
        }
    }
    worst
}

fn unitarity_residual(engine: &Engine, braided: bool) -> f64 {
    let spec = &engine.spec;
    let rank = spec.rank();
    let mut worst = 0.0f64;
    let check_unitary = |m: &DMatrix<C64>| -> f64 {
        if m.nrows() == 0 {
            return 0.0;
        }
        let id = DMatrix::identity(m.nrows(), m.nrows());
        mat_residual(&(m * m.adjoint()), &id)
    };
    for a in 0..rank {
        for b in 0..rank {
            for c in 0..rank {
                if braided {
                    worst = worst.max(check_unitary(&spec.r_matrix(a, b, c)));
                }
                for g in 0..spec.group.order() {
                    worst = worst.max(check_unitary(&spec.u_matrix(g, a, b, c)));
                }
                for d in 0..rank {
                    worst = worst.max(check_unitary(&spec.f_matrix(a, b, c, d)));
                }
            }
        }
    }
    worst
}
