//! Category-level constructions: reverse category, crossed product, neutral
//! double, algebra induction, Frobenius–Perron dimensions, and trivial-G
//! modular data.
//!
//! All constructions produce ordinary `CategorySpec` values (the label set of
//! a product construction is the pair set, flattened), so every derived
//! category can be fed back into the validator and the whole engine.

use crate::frob::FrobeniusAlgebra;
use crate::morphism::Morphism;
use crate::object::{act_object, ObjectExpr};
use crate::recouple::Engine;
use crate::spec::{CategorySpec, SimpleLabel};
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Reverse category
// ---------------------------------------------------------------------------

/// The reverse category: same labels, inverted grading, tensor twisted by the
/// grade of the right factor, braiding replaced by the reverse braiding.
pub fn reverse_category(spec: &CategorySpec) -> Result<CategorySpec> {
    let r = spec.rank();
    let gr = |x: usize| spec.grade(x);
    let inv = |g: usize| spec.group.inv(g);
    let act = |g: usize, x: usize| spec.act_label(g, x);

    let labels: Vec<SimpleLabel> = (0..r)
        .map(|a| SimpleLabel {
            name: format!("rev({})", spec.labels[a].name),
            dual: act(inv(gr(a)), spec.dual(a)),
            grade: inv(gr(a)),
            qdim: spec.qdim(a),
            pivotal: spec.labels[a].pivotal,
        })
        .collect();

    // N'(a,b,c) = N(^{∂b}a, b, c).
    let mut n = vec![0u32; r * r * r];
    for a in 0..r {
        for b in 0..r {
            let ta = act(gr(b), a);
            for c in 0..r {
                n[(a * r + b) * r + c] = spec.nabc(ta, b, c) as u32;
            }
        }
    }

    let basis_lr = |n: &[u32], a: usize, b: usize, c: usize, d: usize| {
        crate::spec::basis_lr_raw(n, r, a, b, c, d)
    };
    let basis_rl = |n: &[u32], a: usize, b: usize, c: usize, d: usize| {
        crate::spec::basis_rl_raw(n, r, a, b, c, d)
    };

    // F'(a,b,c,d) = F(^{g3 g2}a, ^{g3}b, c, d) ∘ T with the α-index
    // transported through U[g3, ^{g2}a, b, e].
    let mut f = HashMap::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if a == spec.unit || b == spec.unit || c == spec.unit {
                    continue;
                }
                let g2 = gr(b);
                let g3 = gr(c);
                let ta = act(spec.group.mul(g3, g2), a);
                let tb = act(g3, b);
                for d in 0..r {
                    let lr = basis_lr(&n, a, b, c, d);
                    let rl = basis_rl(&n, a, b, c, d);
                    if lr.is_empty() || rl.is_empty() {
                        continue;
                    }
                    let fc = spec.f_matrix(ta, tb, c, d);
                    let clr = spec.basis_lr(ta, tb, c, d);
                    let mut m = DMatrix::<C64>::zeros(rl.len(), lr.len());
                    for (j, &(e, al, be)) in lr.iter().enumerate() {
                        let u = spec.u_matrix(g3, act(g2, a), b, e);
                        let ge = act(g3, e);
                        for (jc, &(e2, al2, be2)) in clr.iter().enumerate() {
                            if e2 != ge || be2 != be {
                                continue;
                            }
                            let coef = u[(al2, al)];
                            if coef.norm_sqr() == 0.0 {
                                continue;
                            }
                            for i in 0..rl.len() {
                                m[(i, j)] += fc[(i, jc)] * coef;
                            }
                        }
                    }
                    f.insert((a, b, c, d), m);
                }
            }
        }
    }

    // R'(a,b,c) = R(b,a,c)^{-1}.
    let mut rm = HashMap::new();
    for a in 0..r {
        for b in 0..r {
            if a == spec.unit || b == spec.unit {
                continue;
            }
            for c in 0..r {
                let block = spec.r_matrix(b, a, c);
                if block.nrows() == 0 || block.ncols() == 0 {
                    continue;
                }
                let inv_block = block
                    .clone()
                    .try_inverse()
                    .ok_or_else(|| Error::Precondition("singular braiding block".into()))?;
                rm.insert((a, b, c), inv_block);
            }
        }
    }

    // U'(g,a,b,c) = U(g, ^{∂b}a, b, c).
    let mut u = HashMap::new();
    for g in 0..spec.group.order() {
        if g == spec.group.e() {
            continue;
        }
        for a in 0..r {
            for b in 0..r {
                if a == spec.unit || b == spec.unit {
                    continue;
                }
                for c in 0..r {
                    if n[(a * r + b) * r + c] == 0 {
                        continue;
                    }
                    u.insert((g, a, b, c), spec.u_matrix(g, act(gr(b), a), b, c));
                }
            }
        }
    }

    Ok(CategorySpec {
        group: spec.group.clone(),
        labels,
        unit: spec.unit,
        n,
        f,
        r: rm,
        perm: spec.perm.clone(),
        u,
        unitary_mode: spec.unitary_mode,
        tol: spec.tol,
        name: format!("reverse({})", spec.name),
    })
}

// ---------------------------------------------------------------------------
// Pairing helpers
// ---------------------------------------------------------------------------

/// A derived spec over pair labels with the index map back to parents.
#[derive(Debug, Clone)]
pub struct PairedSpec {
    pub spec: CategorySpec,
    /// pairs[i] = (label in first parent, label in second parent).
    pub pairs: Vec<(usize, usize)>,
    /// Inverse lookup (c, d) → derived label.
    pub index: HashMap<(usize, usize), usize>,
}

// ---------------------------------------------------------------------------
// Crossed product
// ---------------------------------------------------------------------------

/// The crossed product C ⋉ D: pair labels, tensor twisted by the action of
/// the inverse grade of the second C-factor on the first D-factor.
pub fn crossed_product(c: &CategorySpec, d: &CategorySpec) -> Result<PairedSpec> {
    if c.group.elements != d.group.elements || c.group.mul != d.group.mul {
        return Err(Error::Precondition(
            "crossed product requires identical group tables".into(),
        ));
    }
    let (rc, rd) = (c.rank(), d.rank());
    let r = rc * rd;
    let pairs: Vec<(usize, usize)> = (0..rc)
        .flat_map(|i| (0..rd).map(move |j| (i, j)))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let g = &c.group;
    let inv = |x: usize| g.inv(x);

    let labels: Vec<SimpleLabel> = pairs
        .iter()
        .map(|&(a, x)| SimpleLabel {
            name: format!("{}⊠{}", c.labels[a].name, d.labels[x].name),
            dual: index[&(c.dual(a), d.act_label(c.grade(a), d.dual(x)))],
            grade: g.mul(c.grade(a), d.grade(x)),
            qdim: c.qdim(a) * d.qdim(x),
            pivotal: c.labels[a].pivotal * d.labels[x].pivotal,
        })
        .collect();

    // N((a1,a2),(b1,b2),(c1,c2)) = N_C(a1,b1,c1) · N_D(^{b̄1}a2, b2, c2).
    let dn = |a: &(usize, usize), b: &(usize, usize), x: &(usize, usize)| -> usize {
        c.nabc(a.0, b.0, x.0) * d.nabc(d.act_label(inv(c.grade(b.0)), a.1), b.1, x.1)
    };
    let mut n = vec![0u32; r * r * r];
    for (ia, a) in pairs.iter().enumerate() {
        for (ib, b) in pairs.iter().enumerate() {
            for (ix, x) in pairs.iter().enumerate() {
                n[(ia * r + ib) * r + ix] = dn(a, b, x) as u32;
            }
        }
    }
    let unit = index[&(c.unit, d.unit)];

    // Vertex mult splits as (C mult) · (D mult) with D index inner.
    let dvert = |a: &(usize, usize), b: &(usize, usize), x: &(usize, usize)| -> usize {
        d.nabc(d.act_label(inv(c.grade(b.0)), a.1), b.1, x.1)
    };

    let mut f = HashMap::new();
    for (ia, a) in pairs.iter().enumerate() {
        for (ib, b) in pairs.iter().enumerate() {
            for (ix, x) in pairs.iter().enumerate() {
                if ia == unit || ib == unit || ix == unit {
                    continue;
                }
                let b1bar = inv(c.grade(b.0));
                let x1bar = inv(c.grade(x.0));
                let x1b1bar = g.mul(x1bar, b1bar);
                // D-part parent labels of the right-associated word.
                let ta2 = d.act_label(x1b1bar, a.1);
                let tb2 = d.act_label(x1bar, b.1);
                for (id_, dd) in pairs.iter().enumerate() {
                    let lr = crate::spec::basis_lr_raw(&n, r, ia, ib, ix, id_);
                    let rl = crate::spec::basis_rl_raw(&n, r, ia, ib, ix, id_);
                    if lr.is_empty() || rl.is_empty() {
                        continue;
                    }
                    let fcm = c.f_matrix(a.0, b.0, x.0, dd.0);
                    let clr = c.basis_lr(a.0, b.0, x.0, dd.0);
                    let crl = c.basis_rl(a.0, b.0, x.0, dd.0);
                    let fdm = d.f_matrix(ta2, tb2, x.1, dd.1);
                    let dlr = d.basis_lr(ta2, tb2, x.1, dd.1);
                    let drl = d.basis_rl(ta2, tb2, x.1, dd.1);
                    let mut m = DMatrix::<C64>::zeros(rl.len(), lr.len());
                    for (j, &(ie, al, be)) in lr.iter().enumerate() {
                        let e = pairs[ie];
                        // Split the pair multiplicities (D inner).
                        let va = dvert(a, b, &e);
                        let vb = dvert(&e, x, dd);
                        let (al_c, al_d) = (al / va, al % va);
                        let (be_c, be_d) = (be / vb, be % vb);
                        // D source transported through U_D[x̄1, ^{b̄1}a2, b2, e2].
                        let ud = d.u_matrix(x1bar, d.act_label(b1bar, a.1), b.1, e.1);
                        let ge2 = d.act_label(x1bar, e.1);
                        for (i, &(if_, mu, nu)) in rl.iter().enumerate() {
                            let fp = pairs[if_];
                            let vmu = dvert(b, x, &fp);
                            let vnu = dvert(a, &fp, dd);
                            let (mu_c, mu_d) = (mu / vmu, mu % vmu);
                            let (nu_c, nu_d) = (nu / vnu, nu % vnu);
                            // C coefficient.
                            let jc = clr
                                .iter()
                                .position(|&t| t == (e.0, al_c, be_c))
                                .expect("C lr basis");
                            let icx = crl
                                .iter()
                                .position(|&t| t == (fp.0, mu_c, nu_c))
                                .expect("C rl basis");
                            let cc = fcm[(icx, jc)];
                            if cc.norm_sqr() == 0.0 {
                                continue;
                            }
                            // D coefficient with the α transport.
                            let mut cd = C64::new(0.0, 0.0);
                            for (jd, &(e2, al2, be2)) in dlr.iter().enumerate() {
                                if e2 != ge2 || be2 != be_d {
                                    continue;
                                }
                                let idx = drl
                                    .iter()
                                    .position(|&t| t == (fp.1, mu_d, nu_d))
                                    .expect("D rl basis");
                                cd += fdm[(idx, jd)] * ud[(al2, al_d)];
                            }
                            m[(i, j)] += cc * cd;
                        }
                    }
                    f.insert((ia, ib, ix, id_), m);
                }
            }
        }
    }

    // Action: componentwise permutation; U = U_C ⊗ U_D on the twisted vertex.
    let ord = g.order();
    let perm: Vec<Vec<usize>> = (0..ord)
        .map(|gg| {
            pairs
                .iter()
                .map(|&(a, x)| index[&(c.act_label(gg, a), d.act_label(gg, x))])
                .collect()
        })
        .collect();
    let mut u = HashMap::new();
    for gg in 0..ord {
        if gg == g.e() {
            continue;
        }
        for (ia, a) in pairs.iter().enumerate() {
            for (ib, b) in pairs.iter().enumerate() {
                if ia == unit || ib == unit {
                    continue;
                }
                for (ix, x) in pairs.iter().enumerate() {
                    if n[(ia * r + ib) * r + ix] == 0 {
                        continue;
                    }
                    let b1bar = inv(c.grade(b.0));
                    let uc = c.u_matrix(gg, a.0, b.0, x.0);
                    let ud = d.u_matrix(gg, d.act_label(b1bar, a.1), b.1, x.1);
                    u.insert((gg, ia, ib, ix), uc.kronecker(&ud));
                }
            }
        }
    }

    let spec = CategorySpec {
        group: g.clone(),
        labels,
        unit,
        n,
        f,
        r: HashMap::new(),
        perm,
        u,
        unitary_mode: c.unitary_mode && d.unitary_mode,
        tol: c.tol.max(d.tol),
        name: format!("crossed({},{})", c.name, d.name),
    };
    Ok(PairedSpec { spec, pairs, index })
}

// ---------------------------------------------------------------------------
// Neutral double
// ---------------------------------------------------------------------------

/// The neutral double D(C, D): the grade-diagonal part of the plain product
/// of C with the reverse of D, G-braided componentwise.
pub fn neutral_double_of(c: &CategorySpec, d: &CategorySpec) -> Result<PairedSpec> {
    if c.group.elements != d.group.elements || c.group.mul != d.group.mul {
        return Err(Error::Precondition(
            "neutral double requires identical group tables".into(),
        ));
    }
    let e = reverse_category(d)?;
    let (rc, re) = (c.rank(), e.rank());
    // Keep pairs with matching grades (diagonal of the G×G-grading).
    let pairs: Vec<(usize, usize)> = (0..rc)
        .flat_map(|i| (0..re).map(move |j| (i, j)))
        .filter(|&(i, j)| c.grade(i) == e.grade(j))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let r = pairs.len();
    let g = &c.group;

    let labels: Vec<SimpleLabel> = pairs
        .iter()
        .map(|&(a, x)| SimpleLabel {
            name: format!("{}⊠{}", c.labels[a].name, e.labels[x].name),
            dual: index[&(c.dual(a), e.labels[x].dual)],
            grade: c.grade(a),
            qdim: c.qdim(a) * e.qdim(x),
            pivotal: c.labels[a].pivotal * e.labels[x].pivotal,
        })
        .collect();

    let mut n = vec![0u32; r * r * r];
    for (ia, a) in pairs.iter().enumerate() {
        for (ib, b) in pairs.iter().enumerate() {
            for (ix, x) in pairs.iter().enumerate() {
                n[(ia * r + ib) * r + ix] =
                    (c.nabc(a.0, b.0, x.0) * e_nabc(&e, a.1, b.1, x.1)) as u32;
            }
        }
    }
    let unit = index[&(c.unit, e.unit)];

    let dvert = |a: &(usize, usize), b: &(usize, usize), x: &(usize, usize)| -> usize {
        e_nabc(&e, a.1, b.1, x.1)
    };

    // Componentwise F and R (Deligne product of skeletal data).
    let mut f = HashMap::new();
    for (ia, a) in pairs.iter().enumerate() {
        for (ib, b) in pairs.iter().enumerate() {
            for (ix, x) in pairs.iter().enumerate() {
                if ia == unit || ib == unit || ix == unit {
                    continue;
                }
                for (id_, dd) in pairs.iter().enumerate() {
                    let lr = crate::spec::basis_lr_raw(&n, r, ia, ib, ix, id_);
                    let rl = crate::spec::basis_rl_raw(&n, r, ia, ib, ix, id_);
                    if lr.is_empty() || rl.is_empty() {
                        continue;
                    }
                    let fcm = c.f_matrix(a.0, b.0, x.0, dd.0);
                    let clr = c.basis_lr(a.0, b.0, x.0, dd.0);
                    let crl = c.basis_rl(a.0, b.0, x.0, dd.0);
                    let fem = e.f_matrix(a.1, b.1, x.1, dd.1);
                    let elr = e.basis_lr(a.1, b.1, x.1, dd.1);
                    let erl = e.basis_rl(a.1, b.1, x.1, dd.1);
                    let mut m = DMatrix::<C64>::zeros(rl.len(), lr.len());
                    for (j, &(ie, al, be)) in lr.iter().enumerate() {
                        let ep = pairs[ie];
                        let va = dvert(a, b, &ep);
                        let vb = dvert(&ep, x, dd);
                        let (al_c, al_e) = (al / va, al % va);
                        let (be_c, be_e) = (be / vb, be % vb);
                        let jc = clr.iter().position(|&t| t == (ep.0, al_c, be_c));
                        let je = elr.iter().position(|&t| t == (ep.1, al_e, be_e));
                        let (jc, je) = match (jc, je) {
                            (Some(a), Some(b)) => (a, b),
                            _ => continue,
                        };
                        for (i, &(if_, mu, nu)) in rl.iter().enumerate() {
                            let fp = pairs[if_];
                            let vmu = dvert(b, x, &fp);
                            let vnu = dvert(a, &fp, dd);
                            let (mu_c, mu_e) = (mu / vmu, mu % vmu);
                            let (nu_c, nu_e) = (nu / vnu, nu % vnu);
                            let ic = crl.iter().position(|&t| t == (fp.0, mu_c, nu_c));
                            let iex = erl.iter().position(|&t| t == (fp.1, mu_e, nu_e));
                            if let (Some(ic), Some(iex)) = (ic, iex) {
                                m[(i, j)] = fcm[(ic, jc)] * fem[(iex, je)];
                            }
                        }
                    }
                    f.insert((ia, ib, ix, id_), m);
                }
            }
        }
    }

    let mut rm = HashMap::new();
    for (ia, a) in pairs.iter().enumerate() {
        for (ib, b) in pairs.iter().enumerate() {
            if ia == unit || ib == unit {
                continue;
            }
            for (ix, x) in pairs.iter().enumerate() {
                if n[(ia * r + ib) * r + ix] == 0 {
                    continue;
                }
                let rc_m = c.r_matrix(a.0, b.0, x.0);
                let re_m = e.r_matrix(a.1, b.1, x.1);
                rm.insert((ia, ib, ix), rc_m.kronecker(&re_m));
            }
        }
    }

    let ord = g.order();
    let perm: Vec<Vec<usize>> = (0..ord)
        .map(|gg| {
            pairs
                .iter()
                .map(|&(a, x)| index[&(c.act_label(gg, a), e.act_label(gg, x))])
                .collect()
        })
        .collect();
    let mut u = HashMap::new();
    for gg in 0..ord {
        if gg == g.e() {
            continue;
        }
        for (ia, a) in pairs.iter().enumerate() {
            for (ib, b) in pairs.iter().enumerate() {
                if ia == unit || ib == unit {
                    continue;
                }
                for (ix, x) in pairs.iter().enumerate() {
                    if n[(ia * r + ib) * r + ix] == 0 {
                        continue;
                    }
                    let uc = c.u_matrix(gg, a.0, b.0, x.0);
                    let ue = e.u_matrix(gg, a.1, b.1, x.1);
                    u.insert((gg, ia, ib, ix), uc.kronecker(&ue));
                }
            }
        }
    }

    let spec = CategorySpec {
        group: g.clone(),
        labels,
        unit,
        n,
        f,
        r: rm,
        perm,
        u,
        unitary_mode: c.unitary_mode && d.unitary_mode,
        tol: c.tol.max(d.tol),
        name: format!("double({},{})", c.name, d.name),
    };
    Ok(PairedSpec { spec, pairs, index })
}

/// The neutral double D(C) = D(C, C).
pub fn neutral_double(spec: &CategorySpec) -> Result<PairedSpec> {
    neutral_double_of(spec, spec)
}

fn e_nabc(e: &CategorySpec, a: usize, b: usize, c: usize) -> usize {
    e.nabc(a, b, c)
}

// ---------------------------------------------------------------------------
// Algebra induction
// ---------------------------------------------------------------------------

/// Induces an H-equivariant algebra to a G-equivariant one along a subgroup:
/// carrier ⊕_{g ∈ G/H} γ(g)(A) with the translated equivariant structure.
///
/// `subgroup` lists the elements of H by group index. The algebra's `z`
/// vector must be indexed by the full group but is only consulted on H.
pub fn induce_algebra(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    subgroup: &[usize],
) -> Result<FrobeniusAlgebra> {
    let spec = engine.spec.clone();
    let g = &spec.group;
    if !g.is_subgroup(subgroup) {
        return Err(Error::Precondition("not a subgroup".into()));
    }
    let reps = g.coset_reps(subgroup);
    let k = reps.len();
    let na = a.carrier.words.len();

    // Carrier ⊕_i γ(g_i)(A); summand index i*na + word.
    let mut carrier = ObjectExpr { words: vec![] };
    for &gi in &reps {
        let ga = act_object(&spec, gi, &a.carrier);
        carrier.words.extend(ga.words);
    }
    let cc = carrier.tensor(&carrier);
    let one = ObjectExpr::unit();

    // Diagonal-block structure morphisms.
    let mut mult = Morphism::zero(cc.clone(), carrier.clone());
    let mut unit = Morphism::zero(one.clone(), carrier.clone());
    let mut comult = Morphism::zero(carrier.clone(), cc);
    let mut counit = Morphism::zero(carrier.clone(), one);
    let total = k * na;
    for (i, &gi) in reps.iter().enumerate() {
        let gm = engine.act(gi, &a.mult);
        for (&(ti, si, c), blk) in &gm.blocks {
            let (s1, s2) = (si / na, si % na);
            let gsi = (i * na + s1) * total + (i * na + s2);
            mult.blocks.insert((i * na + ti, gsi, c), blk.clone());
        }
        let gu = engine.act(gi, &a.unit);
        for (&(ti, si, c), blk) in &gu.blocks {
            unit.blocks.insert((i * na + ti, si, c), blk.clone());
        }
        let gd = engine.act(gi, &a.comult);
        for (&(ti, si, c), blk) in &gd.blocks {
            let (t1, t2) = (ti / na, ti % na);
            let gti = (i * na + t1) * total + (i * na + t2);
            comult.blocks.insert((gti, i * na + si, c), blk.clone());
        }
        let ge = engine.act(gi, &a.counit);
        for (&(ti, si, c), blk) in &ge.blocks {
            counit.blocks.insert((ti, i * na + si, c), blk.clone());
        }
    }

    // z_{g'}: the i-th summand γ(g')γ(g_i)(A) maps to summand ĩ with
    // g' g_i = g_ĩ h, via γ(g_ĩ)(z^A_h).
    let mut z = Vec::with_capacity(g.order());
    for gp in 0..g.order() {
        let src = act_object(&spec, gp, &carrier);
        let mut zg = Morphism::zero(src, carrier.clone());
        for (i, &gi) in reps.iter().enumerate() {
            let gpgi = g.mul(gp, gi);
            let it = reps
                .iter()
                .position(|&gt| subgroup.contains(&g.mul(g.inv(gt), gpgi)))
                .ok_or_else(|| Error::Precondition("coset decomposition failed".into()))?;
            let h = g.mul(g.inv(reps[it]), gpgi);
            let comp = engine.act(reps[it], &a.z[h]);
            for (&(ti, si, c), blk) in &comp.blocks {
                zg.blocks.insert((it * na + ti, i * na + si, c), blk.clone());
            }
        }
        z.push(zg);
    }

    Ok(FrobeniusAlgebra {
        carrier,
        mult,
        unit,
        comult,
        counit,
        z,
    })
}

// ---------------------------------------------------------------------------
// Dimensions and modular data
// ---------------------------------------------------------------------------

/// Frobenius–Perron dimensions of all simples (largest eigenvalue of each
/// fusion matrix), by power iteration on the total fusion matrix.
pub fn fpdim_simples(spec: &CategorySpec) -> Vec<f64> {
    let r = spec.rank();
    // The common Perron–Frobenius eigenvector v (v_unit-normalized) of the
    // matrix Σ_a N_a has entries FPdim(λ).
    let mut m = DMatrix::<f64>::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                m[(c, b)] += spec.nabc(a, b, c) as f64;
            }
        }
    }
    let mut v = DMatrix::<f64>::from_element(r, 1, 1.0);
    for _ in 0..10_000 {
        let w = &m * &v;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let w = w / norm;
        if (&w - &v).iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-15 {
            v = w;
            break;
        }
        v = w;
    }
    let scale = v[(spec.unit, 0)];
    (0..r).map(|a| v[(a, 0)] / scale).collect()
}

/// Frobenius–Perron dimension of an object.
pub fn fpdim_object(spec: &CategorySpec, obj: &ObjectExpr) -> f64 {
    let fp = fpdim_simples(spec);
    obj.words
        .iter()
        .map(|w| w.iter().map(|&l| fp[l]).product::<f64>())
        .sum()
}

/// Unnormalized modular data of a trivial-G spec: S from Hopf links,
/// T from twists.
pub fn modular_data(engine: &Engine) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let spec = engine.spec.clone();
    if spec.group.order() != 1 {
        return Err(Error::Precondition(
            "modular data is only computed for a trivial group".into(),
        ));
    }
    let r = spec.rank();
    let mut s = DMatrix::<C64>::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            let double = engine
                .braid_words(&[b], &[a])?
                .compose(&engine.braid_words(&[a], &[b])?)?;
            s[(a, b)] = engine.trace(&double)?;
        }
    }
    let mut t = DMatrix::<C64>::zeros(r, r);
    for a in 0..r {
        let tw = engine.twist(a)?;
        t[(a, a)] = tw
            .block(0, 0, a)
            .map(|m| m[(0, 0)])
            .unwrap_or_else(|| C64::new(0.0, 0.0));
    }
    Ok((s, t))
}

/// Whether the S matrix is invertible within tolerance.
pub fn is_modular(engine: &Engine) -> Result<bool> {
    let (s, _) = modular_data(engine)?;
    Ok(crate::frob::numeric_rank(&s, 1e-9) == s.nrows())
}

// ---------------------------------------------------------------------------
// Double context: base, reverse, and the paired spec together
// ---------------------------------------------------------------------------

/// The neutral double of a base spec bundled with the reverse spec used to
/// build it, so that morphisms of both factors can be paired into the double.
#[derive(Clone)]
pub struct DoubleContext {
    pub base: std::sync::Arc<CategorySpec>,
    pub rev: std::sync::Arc<CategorySpec>,
    pub double: std::sync::Arc<CategorySpec>,
    /// pairs[i] = (base label, reverse label) of double label i.
    pub pairs: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
}

/// Builds the double context of a base spec.
pub fn double_context(base: std::sync::Arc<CategorySpec>) -> Result<DoubleContext> {
    let rev = reverse_category(&base)?;
    let d = neutral_double(&base)?;
    Ok(DoubleContext {
        base,
        rev: std::sync::Arc::new(rev),
        double: std::sync::Arc::new(d.spec),
        pairs: d.pairs,
        index: d.index,
    })
}

/// The realization in the base category of a reverse-category word: letter i
/// is acted on by the product of the base grades of all later letters.
pub fn rev_realization_word(base: &CategorySpec, w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut h = base.group.e();
    let mut out = vec![0usize; n];
    for i in (0..n).rev() {
        out[i] = base.act_label(h, w[i]);
        h = base.group.mul(h, base.grade(w[i]));
    }
    out
}

/// Transport matrix from the fusion-tree basis of hom(root, w) in the
/// reverse category to the fusion-tree basis of hom(root, realization(w)) in
/// the base category: the k-th reverse vertex is the base vertex at
/// (^{∂a_k}u_{k-1}, a_k, u_k) transported by the product of later grades.
pub fn rev_tree_transport(
    base: &CategorySpec,
    rev: &CategorySpec,
    root: usize,
    w: &[usize],
) -> DMatrix<C64> {
    let n = w.len();
    let wc = rev_realization_word(base, w);
    let rev_trees = crate::object::fusion_trees(rev, root, w);
    let c_trees = crate::object::fusion_trees(base, root, &wc);
    let mut t = DMatrix::<C64>::zeros(c_trees.len(), rev_trees.len());
    if n <= 1 {
        for i in 0..c_trees.len().min(rev_trees.len()) {
            t[(i, i)] = C64::new(1.0, 0.0);
        }
        return t;
    }
    // Product of base grades of the letters after position k.
    let mut gk = vec![base.group.e(); n + 1];
    for k in (1..n).rev() {
        gk[k] = base.group.mul(base.grade(w[k]), gk[k + 1]);
    }
    for (col, rt) in rev_trees.iter().enumerate() {
        for (row, ct) in c_trees.iter().enumerate() {
            let mut coef = C64::new(1.0, 0.0);
            let mut ok = true;
            let mut u_prev = w[0];
            for k in 1..n {
                let (uk, mk) = rt[k - 1];
                let (vk, mck) = ct[k - 1];
                if vk != base.act_label(gk[k + 1], uk) {
                    ok = false;
                    break;
                }
                let ta = base.act_label(base.grade(w[k]), u_prev);
                let u = base.u_matrix(gk[k + 1], ta, w[k], uk);
                coef *= u[(mck, mk)];
                if coef.norm_sqr() == 0.0 {
                    ok = false;
                    break;
                }
                u_prev = uk;
            }
            if ok {
                t[(row, col)] = coef;
            }
        }
    }
    t
}

/// Reinterprets a base-category morphism between realizations of
/// reverse-category words as a morphism of the reverse category between the
/// given word objects (block by block: T_target⁻¹ · B · T_source).
pub fn rev_morphism(
    base: &CategorySpec,
    rev: &CategorySpec,
    f: &Morphism,
    src_rev: &ObjectExpr,
    tgt_rev: &ObjectExpr,
) -> Result<Morphism> {
    for (w, v) in src_rev.words.iter().zip(f.source.words.iter()) {
        if rev_realization_word(base, w) != *v {
            return Err(Error::Precondition("rev_morphism: source is not a realization".into()));
        }
    }
    for (w, v) in tgt_rev.words.iter().zip(f.target.words.iter()) {
        if rev_realization_word(base, w) != *v {
            return Err(Error::Precondition("rev_morphism: target is not a realization".into()));
        }
    }
    let mut out = Morphism::zero(src_rev.clone(), tgt_rev.clone());
    for (&(ti, si, c), b) in &f.blocks {
        let tt = rev_tree_transport(base, rev, c, &tgt_rev.words[ti]);
        let ts = rev_tree_transport(base, rev, c, &src_rev.words[si]);
        let tt_inv = tt
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Shape("singular tree transport".into()))?;
        let nb = &tt_inv * b * &ts;
        if nb.iter().any(|z| z.norm_sqr() > 0.0) {
            out.blocks.insert((ti, si, c), nb);
        }
    }
    Ok(out)
}

/// Pairs a base object and a reverse object letterwise into the double
/// (every letter pair must be grade-diagonal).
pub fn pair_object(
    ctx: &DoubleContext,
    x: &ObjectExpr,
    y: &ObjectExpr,
) -> Result<ObjectExpr> {
    let mut words = Vec::new();
    for wx in &x.words {
        for wy in &y.words {
            if wx.len() != wy.len() {
                return Err(Error::Precondition("pair_object: word lengths differ".into()));
            }
            let w: Option<Vec<usize>> = wx
                .iter()
                .zip(wy.iter())
                .map(|(&a, &b)| ctx.index.get(&(a, b)).copied())
                .collect();
            match w {
                Some(w) => words.push(w),
                None => {
                    return Err(Error::Precondition(
                        "pair_object: letter pair missing from the double".into(),
                    ))
                }
            }
        }
    }
    Ok(ObjectExpr { words })
}

/// Splits a double fusion tree over a paired word into its base-category and
/// reverse-category parts, returning their positions in the respective
/// deterministic tree enumerations.
fn split_double_tree(
    ctx: &DoubleContext,
    root: usize,
    pw: &[usize],
    tree: &[(usize, usize)],
) -> Option<(usize, usize)> {
    let base = &ctx.base;
    let rev = &ctx.rev;
    let wc: Vec<usize> = pw.iter().map(|&p| ctx.pairs[p].0).collect();
    let wr: Vec<usize> = pw.iter().map(|&p| ctx.pairs[p].1).collect();
    let (rc, rr) = (ctx.pairs[root].0, ctx.pairs[root].1);
    let mut tc: Vec<(usize, usize)> = Vec::new();
    let mut tr: Vec<(usize, usize)> = Vec::new();
    if !pw.is_empty() {
        let mut prev = ctx.pairs[pw[0]];
        for (k, &(u, m)) in tree.iter().enumerate() {
            let pu = ctx.pairs[u];
            let letter = ctx.pairs[pw[k + 1]];
            let va = e_nabc(rev, prev.1, letter.1, pu.1);
            if va == 0 {
                return None;
            }
            tc.push((pu.0, m / va));
            tr.push((pu.1, m % va));
            prev = pu;
        }
    }
    let ctrees = crate::object::fusion_trees(base, rc, &wc);
    let rtrees = crate::object::fusion_trees(rev, rr, &wr);
    let ic = ctrees.iter().position(|t| *t == tc)?;
    let ir = rtrees.iter().position(|t| *t == tr)?;
    Some((ic, ir))
}

/// Deligne pairing of morphisms: a base-category morphism and a
/// reverse-category morphism give a morphism of the double between the
/// paired objects, with coefficients multiplied on split trees.
pub fn pair_morphism(ctx: &DoubleContext, fc: &Morphism, fr: &Morphism) -> Result<Morphism> {
    let src = pair_object(ctx, &fc.source, &fr.source)?;
    let tgt = pair_object(ctx, &fc.target, &fr.target)?;
    let (nsr, ntr) = (fr.source.words.len(), fr.target.words.len());
    let mut out = Morphism::zero(src.clone(), tgt.clone());
    for (&(tic, sic, rc), bc) in &fc.blocks {
        for (&(tir, sir, rr), br) in &fr.blocks {
            let root = match ctx.index.get(&(rc, rr)) {
                Some(&p) => p,
                None => continue,
            };
            let ti = tic * ntr + tir;
            let si = sic * nsr + sir;
            let twords = &tgt.words[ti];
            let swords = &src.words[si];
            let ttrees = crate::object::fusion_trees(&ctx.double, root, twords);
            let strees = crate::object::fusion_trees(&ctx.double, root, swords);
            if ttrees.is_empty() || strees.is_empty() {
                continue;
            }
            let mut m = DMatrix::<C64>::zeros(ttrees.len(), strees.len());
            let tsplit: Vec<Option<(usize, usize)>> = ttrees
                .iter()
                .map(|t| split_double_tree(ctx, root, twords, t))
                .collect();
            let ssplit: Vec<Option<(usize, usize)>> = strees
                .iter()
                .map(|t| split_double_tree(ctx, root, swords, t))
                .collect();
            for (i, ts) in tsplit.iter().enumerate() {
                let (tci, tri) = match ts {
                    Some(p) => *p,
                    None => continue,
                };
                for (j, ss) in ssplit.iter().enumerate() {
                    let (scj, srj) = match ss {
                        Some(p) => *p,
                        None => continue,
                    };
                    m[(i, j)] = bc[(tci, scj)] * br[(tri, srj)];
                }
            }
            if m.iter().any(|z| z.norm_sqr() > 0.0) {
                out.blocks.insert((ti, si, root), m);
            }
        }
    }
    Ok(out)
}
