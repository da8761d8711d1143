//! Equivariant full centers: the Longo–Rehren algebra, the A⊠1 embedding,
//! the left-central splitting of (A⊠1)·Θ_LR, the comparison with the
//! alpha-induction algebra, and the modularity report.

use crate::alphamod::{build_theta, idempotent_p, z_matrix, ThetaAlgebra};
use crate::construct::{
    modular_data, pair_morphism, pair_object, DoubleContext,
};
use crate::frob::{
    check_algebra, g_cocommutativity_residual, g_commutativity_residual, product_algebra,
    split_idempotent, FrobeniusAlgebra,
};
use crate::morphism::Morphism;
use crate::object::{object_qdim, ObjectExpr};
use crate::randmorph::rng_for_seed;
use crate::recouple::Engine;
use crate::spec::CategorySpec;
use crate::{C64, Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use std::collections::BTreeMap;

/// The trivial algebra A = 1 with identity structure maps.
pub fn trivial_algebra(spec: &CategorySpec) -> FrobeniusAlgebra {
    let carrier = ObjectExpr::word(vec![spec.unit]);
    let one = DMatrix::<C64>::from_element(1, 1, C64::new(1.0, 0.0));
    let block = |src: ObjectExpr, tgt: ObjectExpr| {
        let mut m = Morphism::zero(src, tgt);
        m.blocks.insert((0, 0, spec.unit), one.clone());
        m
    };
    let mult = block(carrier.tensor(&carrier), carrier.clone());
    let unit = block(ObjectExpr::unit(), carrier.clone());
    let comult = block(carrier.clone(), carrier.tensor(&carrier));
    let counit = block(carrier.clone(), ObjectExpr::unit());
    let z = (0..spec.group.order())
        .map(|_| block(carrier.clone(), carrier.clone()))
        .collect();
    FrobeniusAlgebra {
        carrier,
        mult,
        unit,
        comult,
        counit,
        z,
    }
}

/// The Longo–Rehren algebra in the neutral double: the induced algebra of
/// the trivial algebra, with carrier ⊕ λ⊠λ^∨ over grade-matching simples.
pub fn longo_rehren(engine: &Engine) -> Result<ThetaAlgebra> {
    build_theta(engine, &trivial_algebra(&engine.spec), None)
}

/// Embeds a base morphism into the double by pairing it with the canonical
/// unit-word morphism on the reverse side. Requires the source and target
/// summand words to have uniform lengths.
pub fn boxtimes_unit(ctx: &DoubleContext, f: &Morphism) -> Result<Morphism> {
    let unit = ctx.base.unit;
    let uniform = |o: &ObjectExpr| -> Result<usize> {
        let k = o.words.first().map(|w| w.len()).unwrap_or(0);
        if o.words.iter().any(|w| w.len() != k) {
            return Err(Error::Precondition(
                "boxtimes_unit: summand word lengths are not uniform".into(),
            ));
        }
        Ok(k)
    };
    let ks = uniform(&f.source)?;
    let kt = uniform(&f.target)?;
    let mut fr = Morphism::zero(
        ObjectExpr::word(vec![unit; ks]),
        ObjectExpr::word(vec![unit; kt]),
    );
    fr.blocks.insert(
        (0, 0, unit),
        DMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
    );
    pair_morphism(ctx, f, &fr)
}

/// The algebra A⊠1 in the neutral double.
pub fn boxtimes_unit_algebra(
    ctx: &DoubleContext,
    a: &FrobeniusAlgebra,
) -> Result<FrobeniusAlgebra> {
    let unit = ctx.base.unit;
    let carrier_pairs = |o: &ObjectExpr| -> Result<ObjectExpr> {
        let mut words = Vec::new();
        for w in &o.words {
            words.push(pair_object(ctx, &ObjectExpr::word(w.clone()), &ObjectExpr::word(vec![unit; w.len()]))?.words.remove(0));
        }
        Ok(ObjectExpr { words })
    };
    let carrier = carrier_pairs(&a.carrier)?;
    let mut z = Vec::with_capacity(a.z.len());
    for zg in &a.z {
        z.push(boxtimes_unit(ctx, zg)?);
    }
    Ok(FrobeniusAlgebra {
        carrier,
        mult: boxtimes_unit(ctx, &a.mult)?,
        unit: boxtimes_unit(ctx, &a.unit)?,
        comult: boxtimes_unit(ctx, &a.comult)?,
        counit: boxtimes_unit(ctx, &a.counit)?,
        z,
    })
}

/// The equivariant full center of A and the data of its construction.
pub struct CenterAlgebra {
    pub theta_lr: ThetaAlgebra,
    /// The product algebra (A⊠1)·Θ_LR in the double.
    pub product: FrobeniusAlgebra,
    /// The split left-central subalgebra Z(A).
    pub algebra: FrobeniusAlgebra,
    /// Section Z → (A⊠1)·Θ_LR and retraction back.
    pub section: Morphism,
    pub retraction: Morphism,
}

/// Builds the equivariant full center: the left-central subalgebra of
/// (A⊠1)·Θ_LR split with subalgebra parameter ζ.
pub fn full_center(engine: &Engine, a: &FrobeniusAlgebra, zeta: C64) -> Result<CenterAlgebra> {
    let th = longo_rehren(engine)?;
    let ed = Engine::new(th.ctx.double.clone());
    let a_box = boxtimes_unit_algebra(&th.ctx, a)?;
    let prod = product_algebra(&ed, &a_box, &th.algebra)?;
    // The left-central idempotent of the product: the commutativity of Θ_LR
    // reduces it to the local projector of A⊠1 on the Θ_LR strand.
    let e = idempotent_p(&ed, &a_box, &th.algebra.carrier, &th.algebra.z)?;
    let (algebra, s, r) = split_idempotent(&ed, &prod, &e, zeta)?;
    Ok(CenterAlgebra {
        theta_lr: th,
        product: prod,
        algebra,
        section: s,
        retraction: r,
    })
}

/// Comparison of the full center with the induced double algebra.
pub struct ComparisonReport {
    pub multiplicities_equal: bool,
    pub iso_found: bool,
    pub iso_residual: f64,
    /// The intertwiner Θ → Z when found.
    pub iso: Option<Morphism>,
    /// Per-axiom residuals: (name, theta residual, center residual).
    pub checks: Vec<(String, f64, f64)>,
}

fn letter_counts(o: &ObjectExpr) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for w in &o.words {
        if w.len() != 1 {
            return Err(Error::Precondition(
                "carrier summands are not single letters".into(),
            ));
        }
        *m.entry(w[0]).or_insert(0usize) += 1;
    }
    Ok(m)
}

/// The residual morphisms of the Frobenius-homomorphism conditions for
/// f: Θ → Z.
fn iso_constraints(
    ed: &Engine,
    th: &FrobeniusAlgebra,
    zc: &FrobeniusAlgebra,
    f: &Morphism,
) -> Result<Vec<Morphism>> {
    let ff = ed.tensor(f, f);
    let mut out = vec![
        f.compose(&th.mult)?.axpy(
            C64::new(-1.0, 0.0),
            &zc.mult.compose(&ff)?,
        )?,
        ff.compose(&th.comult)?.axpy(
            C64::new(-1.0, 0.0),
            &zc.comult.compose(f)?,
        )?,
        f.compose(&th.unit)?.axpy(C64::new(-1.0, 0.0), &zc.unit)?,
        zc.counit.compose(f)?.axpy(C64::new(-1.0, 0.0), &th.counit)?,
    ];
    for g in 0..ed.spec.group.order() {
        let gf = ed.act(g, f);
        out.push(
            f.compose(&th.z[g])?
                .axpy(C64::new(-1.0, 0.0), &zc.z[g].compose(&gf)?)?,
        );
    }
    Ok(out)
}

fn flatten(residuals: &[Morphism]) -> Vec<f64> {
    let mut v = Vec::new();
    for r in residuals {
        for b in r.blocks.values() {
            for x in b.iter() {
                v.push(x.re);
                v.push(x.im);
            }
        }
    }
    v
}

/// Compares the full center (with ζ = dim A) to the induced double algebra:
/// equal carrier multiplicities and a Frobenius isomorphism found by a
/// Gauss–Newton solve over the letter-matched blocks.
pub fn compare_center_theta(engine: &Engine, a: &FrobeniusAlgebra) -> Result<ComparisonReport> {
    let zeta = a.dim(&engine.spec);
    let zc = full_center(engine, a, zeta)?;
    let th = build_theta(engine, a, None)?;
    let ed = Engine::new(th.ctx.double.clone());

    let mc_z = letter_counts(&zc.algebra.carrier)?;
    let mc_t = letter_counts(&th.algebra.carrier)?;
    let multiplicities_equal = mc_z == mc_t;

    let mut checks = Vec::new();
    let ct = check_algebra(&ed, &th.algebra)?;
    let cz = check_algebra(&ed, &zc.algebra)?;
    for (x, y) in ct.iter().zip(cz.iter()) {
        checks.push((x.name.clone(), x.residual, y.residual));
    }
    checks.push((
        "g_commutative".into(),
        g_commutativity_residual(&ed, &th.algebra)?,
        g_commutativity_residual(&ed, &zc.algebra)?,
    ));
    checks.push((
        "g_cocommutative".into(),
        g_cocommutativity_residual(&ed, &th.algebra)?,
        g_cocommutativity_residual(&ed, &zc.algebra)?,
    ));

    if !multiplicities_equal {
        return Ok(ComparisonReport {
            multiplicities_equal,
            iso_found: false,
            iso_residual: f64::INFINITY,
            iso: None,
            checks,
        });
    }

    // Letter-matched slots for the intertwiner f: Θ → Z.
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for (ti, wz) in zc.algebra.carrier.words.iter().enumerate() {
        for (si, wt) in th.algebra.carrier.words.iter().enumerate() {
            if wz[0] == wt[0] {
                slots.push((ti, si, wz[0]));
            }
        }
    }
    let p = slots.len();
    let build = |x: &[f64]| -> Morphism {
        let mut f = Morphism::zero(th.algebra.carrier.clone(), zc.algebra.carrier.clone());
        for (k, &(ti, si, c)) in slots.iter().enumerate() {
            let v = C64::new(x[2 * k], x[2 * k + 1]);
            f.blocks
                .insert((ti, si, c), DMatrix::from_element(1, 1, v));
        }
        f
    };
    let eval = |x: &[f64]| -> Result<Vec<f64>> {
        Ok(flatten(&iso_constraints(&ed, &th.algebra, &zc.algebra, &build(x))?))
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut rng = rng_for_seed(20260826);
    'restarts: for attempt in 0..17 {
        let mut x = vec![0.0f64; 2 * p];
        if attempt == 0 {
            // Identity-pattern start: match equal letters in order.
            let mut used: BTreeMap<usize, usize> = BTreeMap::new();
            for (k, &(ti, _, c)) in slots.iter().enumerate() {
                let cnt = used.entry(c).or_insert(0);
                let _ = ti;
                if *cnt == 0 {
                    x[2 * k] = 1.0;
                }
                *cnt += 1;
            }
        } else {
            for v in x.iter_mut() {
                *v = rng.gen::<f64>() * 2.0 - 1.0;
            }
        }
        let mut r = eval(&x)?;
        for _ in 0..60 {
            let norm: f64 = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-12 {
                break;
            }
            // Central-difference Jacobian (exact for the quadratic system).
            let m = r.len();
            let mut j = DMatrix::<f64>::zeros(m, 2 * p);
            let h = 1e-4;
            for k in 0..2 * p {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                let rp = eval(&xp)?;
                let rm = eval(&xm)?;
                for i in 0..m {
                    j[(i, k)] = (rp[i] - rm[i]) / (2.0 * h);
                }
            }
            let rv = DVector::from_vec(r.clone());
            let svd = j.svd(true, true);
            let delta = match svd.solve(&rv, 1e-10) {
                Ok(d) => d,
                Err(_) => continue 'restarts,
            };
            let mut improved = false;
            for step in [1.0f64, 0.5, 0.25, 0.125] {
                let xn: Vec<f64> = x
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| v - step * delta[k])
                    .collect();
                let rn = eval(&xn)?;
                let nn: f64 = rn.iter().map(|v| v * v).sum::<f64>().sqrt();
                if nn < norm {
                    x = xn;
                    r = rn;
                    improved = true;
                    break;
                }
            }
            if !improved {
                break;
            }
        }
        // Residual as the max constraint distance, plus invertibility.
        let f = build(&x);
        let cons = iso_constraints(&ed, &th.algebra, &zc.algebra, &f)?;
        let res = cons
            .iter()
            .map(|c| c.blocks.values().map(|b| b.norm()).fold(0.0f64, f64::max))
            .fold(0.0f64, f64::max);
        let invertible = f.try_inverse(&ed.spec).is_ok();
        if invertible && best.as_ref().map(|(b, _)| res < *b).unwrap_or(true) {
            best = Some((res, x));
        }
        if let Some((b, _)) = &best {
            if *b < 1e-10 {
                break;
            }
        }
    }

    let (iso_residual, iso) = match best {
        Some((res, x)) => (res, Some(build(&x))),
        None => (f64::INFINITY, None),
    };
    Ok(ComparisonReport {
        multiplicities_equal,
        iso_found: iso_residual < 1e-8,
        iso_residual,
        iso,
        checks,
    })
}

/// Modularity report for the induced double algebra of A.
pub struct ModularityReport {
    /// Quantum dimension of the carrier of Θ.
    pub dim_theta: f64,
    pub group_order: usize,
    /// Global dimension of the whole category.
    pub global_dim: f64,
    /// Global dimension of the neutral component.
    pub neutral_dim: f64,
    /// |dim Θ − |G|·(neutral global dimension)|.
    pub criterion_residual: f64,
    pub modular_flag: bool,
    /// For a trivial group on a modular category: (‖ZS−SZ‖, ‖ZT−TZ‖).
    pub st_commutation: Option<(f64, f64)>,
}

pub fn modularity_report(engine: &Engine, a: &FrobeniusAlgebra) -> Result<ModularityReport> {
    let spec = &engine.spec;
    let th = build_theta(engine, a, None)?;
    let dim_theta = object_qdim(&th.ctx.double, &th.algebra.carrier);
    let group_order = spec.group.order();
    let global_dim = spec.global_dim();
    let neutral_dim: f64 = (0..spec.rank())
        .filter(|&l| spec.grade(l) == spec.group.e())
        .map(|l| spec.qdim(l).powi(2))
        .sum();
    let criterion_residual = (dim_theta - group_order as f64 * neutral_dim).abs();
    let mut st_commutation = None;
    if group_order == 1 {
        let (s, t) = modular_data(engine)?;
        let zm = z_matrix(engine, a)?;
        let n = zm.n;
        let mut z = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                z[(i, j)] = C64::new(zm.entries[i][j] as f64, 0.0);
            }
        }
        let zs = &z * &s - &s * &z;
        let zt = &z * &t - &t * &z;
        st_commutation = Some((zs.norm(), zt.norm()));
    }
    Ok(ModularityReport {
        dim_theta,
        group_order,
        global_dim,
        neutral_dim,
        criterion_residual,
        modular_flag: criterion_residual < 1e-9,
        st_commutation,
    })
}
