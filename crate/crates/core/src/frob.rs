//! G-equivariant Frobenius algebras: presentations, JSON serialization,
//! axiom/structure checkers, and the equivariant braiding used by the
//! commutativity checks.
//!
//! Conventions: the coalgebra structure is normalized so that m ∘ Δ = id and
//! ε ∘ η = dim A; the equivariant structure satisfies z_e = id and
//! z_{gh} = z_g ∘ γ(g)(z_h).

use crate::morphism::Morphism;
use crate::object::{act_object, tree_count, ObjectExpr, Word};
use crate::recouple::Engine;
use crate::spec::CategorySpec;
use crate::validate::CheckResult;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A G-equivariant Frobenius algebra presented by explicit structure blocks.
#[derive(Debug, Clone)]
pub struct FrobeniusAlgebra {
    pub carrier: ObjectExpr,
    /// m: A ⊗ A → A.
    pub mult: Morphism,
    /// η: 1 → A.
    pub unit: Morphism,
    /// Δ: A → A ⊗ A.
    pub comult: Morphism,
    /// ε: A → 1.
    pub counit: Morphism,
    /// z_g: γ(g)(A) → A, indexed by group elements.
    pub z: Vec<Morphism>,
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonAlgebra {
    carrier: Vec<Word>,
    mult: Vec<MorphEntry>,
    unit: Vec<MorphEntry>,
    comult: Vec<MorphEntry>,
    counit: Vec<MorphEntry>,
    #[serde(default)]
    z: Option<Vec<Vec<MorphEntry>>>,
}

/// One nonzero block coefficient: (target summand, source summand, root,
/// row, col, re, im).
type MorphEntry = (usize, usize, usize, usize, usize, f64, f64);

fn morphism_from_entries(
    spec: &CategorySpec,
    src: &ObjectExpr,
    tgt: &ObjectExpr,
    entries: &[MorphEntry],
) -> Result<Morphism> {
    let mut m = Morphism::zero(src.clone(), tgt.clone());
    for &(ti, si, c, i, j, re, im) in entries {
        if ti >= tgt.words.len() || si >= src.words.len() || c >= spec.rank() {
            return Err(Error::Referential(format!(
                "algebra block index ({ti},{si},{c}) out of range"
            )));
        }
        let rows = tree_count(spec, c, &tgt.words[ti]);
        let cols = tree_count(spec, c, &src.words[si]);
        if i >= rows || j >= cols {
            return Err(Error::Shape(format!(
                "algebra entry ({i},{j}) exceeds block shape {rows}x{cols}"
            )));
        }
        let b = m
            .blocks
            .entry((ti, si, c))
            .or_insert_with(|| DMatrix::zeros(rows, cols));
        b[(i, j)] = C64::new(re, im);
    }
    Ok(m)
}

fn entries_from_morphism(m: &Morphism) -> Vec<MorphEntry> {
    let mut out = Vec::new();
    for (&(ti, si, c), b) in &m.blocks {
        for j in 0..b.ncols() {
            for i in 0..b.nrows() {
                let z = b[(i, j)];
                if z.norm_sqr() > 0.0 {
                    out.push((ti, si, c, i, j, z.re, z.im));
                }
            }
        }
    }
    out
}

impl FrobeniusAlgebra {
    /// Loads an algebra presentation from a JSON file, resolving it against
    /// the given category.
    pub fn load(spec: &CategorySpec, path: &Path) -> Result<FrobeniusAlgebra> {
        let text = std::fs::read_to_string(path)?;
        let raw: JsonAlgebra =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        for w in &raw.carrier {
            for &l in w {
                if l >= spec.rank() {
                    return Err(Error::Referential(format!("carrier label {l} out of range")));
                }
            }
        }
        let a = ObjectExpr { words: raw.carrier };
        let aa = a.tensor(&a);
        let one = ObjectExpr::unit();
        let mult = morphism_from_entries(spec, &aa, &a, &raw.mult)?;
        let unit = morphism_from_entries(spec, &one, &a, &raw.unit)?;
        let comult = morphism_from_entries(spec, &a, &aa, &raw.comult)?;
        let counit = morphism_from_entries(spec, &a, &one, &raw.counit)?;
        let ord = spec.group.order();
        let z = match raw.z {
            Some(lists) => {
                if lists.len() != ord {
                    return Err(Error::Shape(format!(
                        "expected {ord} equivariant morphisms, got {}",
                        lists.len()
                    )));
                }
                lists
                    .iter()
                    .enumerate()
                    .map(|(g, ent)| {
                        morphism_from_entries(spec, &act_object(spec, g, &a), &a, ent)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            None => (0..ord)
                .map(|g| {
                    let ga = act_object(spec, g, &a);
                    if ga != a {
                        return Err(Error::Precondition(
                            "implicit identity equivariant structure requires an invariant carrier"
                                .into(),
                        ));
                    }
                    Ok(Morphism::identity(spec, &a))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(FrobeniusAlgebra {
            carrier: a,
            mult,
            unit,
            comult,
            counit,
            z,
        })
    }

    /// Serializes the presentation to JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let raw = JsonAlgebra {
            carrier: self.carrier.words.clone(),
            mult: entries_from_morphism(&self.mult),
            unit: entries_from_morphism(&self.unit),
            comult: entries_from_morphism(&self.comult),
            counit: entries_from_morphism(&self.counit),
            z: Some(self.z.iter().map(entries_from_morphism).collect()),
        };
        serde_json::to_value(raw).expect("algebra serialization")
    }

    /// The trivial algebra A = 1.
    pub fn trivial(spec: &CategorySpec) -> FrobeniusAlgebra {
        let one = ObjectExpr::unit();
        let id = Morphism::identity(spec, &one);
        // 1 ⊗ 1 has a single summand (the concatenated empty word).
        let oo = one.tensor(&one);
        let mut mult = Morphism::zero(oo.clone(), one.clone());
        mult.blocks
            .insert((0, 0, spec.unit), DMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
        let mut comult = Morphism::zero(one.clone(), oo);
        comult
            .blocks
            .insert((0, 0, spec.unit), DMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
        FrobeniusAlgebra {
            carrier: one.clone(),
            mult,
            unit: id.clone(),
            comult,
            counit: id.clone(),
            z: vec![id; spec.group.order()],
        }
    }

    /// Identity endomorphism of the carrier.
    pub fn id(&self, spec: &CategorySpec) -> Morphism {
        Morphism::identity(spec, &self.carrier)
    }

    /// dim A = ε ∘ η (a scalar).
    pub fn dim(&self, spec: &CategorySpec) -> C64 {
        let s = self
            .counit
            .compose(&self.unit)
            .expect("counit ∘ unit");
        s.block(0, 0, spec.unit)
            .map(|b| b[(0, 0)])
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }
}

// ---------------------------------------------------------------------------
// Structure checks
// ---------------------------------------------------------------------------

/// The equivariant braiding c_{A,B} = Σ_g (z^B_g ⊗ id_A) ∘ (dashed g-crossing)
/// on A ⊗ B, summing over the grades of the left factor.
pub fn equivariant_braiding(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    b: &FrobeniusAlgebra,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let ida = Morphism::identity(spec, &a.carrier);
    let ab = a.carrier.tensor(&b.carrier);
    let mut acc = Morphism::zero(ab.clone(), b.carrier.tensor(&a.carrier));
    for g in 0..spec.group.order() {
        let d = engine.dashed_crossing(&a.carrier, &b.carrier, g)?;
        let zg = engine.tensor(&b.z[g], &ida);
        acc = acc.add(&zg.compose(&d)?)?;
    }
    Ok(acc)
}

/// Inverse of the equivariant braiding, computed blockwise.
pub fn equivariant_braiding_inv(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    b: &FrobeniusAlgebra,
) -> Result<Morphism> {
    equivariant_braiding(engine, a, b)?.try_inverse(&engine.spec)
}

/// Full report on a presented algebra: Frobenius axioms, normalization,
/// symmetry, equivariance, simplicity.
pub fn check_algebra(engine: &Engine, a: &FrobeniusAlgebra) -> Result<Vec<CheckResult>> {
    let spec = engine.spec.clone();
    let tol = spec.tol;
    let mut checks = Vec::new();
    let mut push = |name: &str, residual: f64| {
        checks.push(CheckResult {
            name: name.to_string(),
            pass: residual < tol,
            residual,
        });
    };
    let ida = a.id(&spec);
    let m = &a.mult;
    let dl = &a.comult;

    // Associativity and unit laws.
    let m_mi = m.compose(&engine.tensor(m, &ida))?;
    let m_im = m.compose(&engine.tensor(&ida, m))?;
    push("associativity", m_mi.distance(&m_im));
    let ul = m.compose(&engine.tensor(&a.unit, &ida))?;
    let ur = m.compose(&engine.tensor(&ida, &a.unit))?;
    push("unit_left", ul.distance(&ida));
    push("unit_right", ur.distance(&ida));

    // Coassociativity and counit laws.
    let di_d = engine.tensor(dl, &ida).compose(dl)?;
    let id_d = engine.tensor(&ida, dl).compose(dl)?;
    push("coassociativity", di_d.distance(&id_d));
    let cl = engine.tensor(&a.counit, &ida).compose(dl)?;
    let cr = engine.tensor(&ida, &a.counit).compose(dl)?;
    push("counit_left", cl.distance(&ida));
    push("counit_right", cr.distance(&ida));

    // Frobenius relations.
    let f1 = engine.tensor(&ida, m).compose(&engine.tensor(dl, &ida))?;
    let f2 = dl.compose(m)?;
    let f3 = engine.tensor(m, &ida).compose(&engine.tensor(&ida, dl))?;
    push("frobenius_left", f1.distance(&f2));
    push("frobenius_right", f3.distance(&f2));

    // Specialness: m ∘ Δ is an invertible scalar β, and β·(ε ∘ η) equals
    // the quantum dimension of the carrier. Both the standard normalization
    // (β = 1, ε∘η = dim) and rescaled coalgebra structures pass.
    let md = m.compose(dl)?;
    let qd = crate::object::object_qdim(&spec, &a.carrier);
    let beta = engine.trace(&md)? / C64::new(qd, 0.0);
    let scaled = ida.axpy(beta - C64::new(1.0, 0.0), &ida)?;
    push("special_md", md.distance(&scaled));
    let dim = a.dim(&spec);
    push("special_dim", (beta * dim - C64::new(qd, 0.0)).norm());

    // Symmetry: the two canonical maps A → D(A) agree.
    push("symmetric", symmetry_residual(engine, a)?);

    // Equivariance.
    let mut eq = 0.0f64;
    let ord = spec.group.order();
    eq = eq.max(a.z[spec.group.e()].distance(&ida));
    for g in 0..ord {
        let zg = &a.z[g];
        // Algebra/coalgebra homomorphism conditions.
        let lhs = m.compose(&engine.tensor(zg, zg))?;
        let rhs = zg.compose(&engine.act(g, m))?;
        eq = eq.max(lhs.distance(&rhs));
        eq = eq.max(zg.compose(&engine.act(g, &a.unit))?.distance(&a.unit));
        let lhs = engine.tensor(zg, zg).compose(&engine.act(g, dl))?;
        let rhs = dl.compose(zg)?;
        eq = eq.max(lhs.distance(&rhs));
        eq = eq.max(engine.act(g, &a.counit).distance(&a.counit.compose(zg)?));
        // Cocycle.
        for h in 0..ord {
            let gh = spec.group.mul(g, h);
            let lhs = zg.compose(&engine.act(g, &a.z[h]))?;
            eq = eq.max(lhs.distance(&a.z[gh]));
        }
    }
    push("equivariance", eq);

    // Simplicity: the equivariant bimodule endomorphism space of A is 1-dim.
    let dim_end = bimodule_endo_dim(engine, a)? as f64;
    push("simple", (dim_end - 1.0).abs());
    Ok(checks)
}

/// Residual of the symmetry condition: the two canonical morphisms
/// A → D(A) built from left/right traces of the product agree.
pub fn symmetry_residual(engine: &Engine, a: &FrobeniusAlgebra) -> Result<f64> {
    let spec = engine.spec.clone();
    let em = a.counit.compose(&a.mult)?;
    let ida = a.id(&spec);
    // κ₁ = (id_{D(A)} ⊗ εm) ∘ (R'_A ⊗ id_A): A → D(A).
    let rp = object_cup_r(engine, &a.carrier)?;
    let dual = rp.target.clone(); // D(A)·A
    let _ = dual;
    let k1 = {
        let pre = engine.tensor(&rp, &ida);
        let dual_a = object_dual(engine, &a.carrier);
        let id_dual = Morphism::identity(&spec, &dual_a);
        engine.tensor(&id_dual, &em).compose(&pre)?
    };
    // κ₂ = (εm ⊗ id_{D(A)}) ∘ (id_A ⊗ R_A): A → D(A).
    let r = object_cup(engine, &a.carrier)?;
    let k2 = {
        let pre = engine.tensor(&ida, &r);
        let dual_a = object_dual(engine, &a.carrier);
        let id_dual = Morphism::identity(&spec, &dual_a);
        engine.tensor(&em, &id_dual).compose(&pre)?
    };
    Ok(k1.distance(&k2))
}

/// The dual object D(A): summand-wise twisted dual words.
pub fn object_dual(engine: &Engine, obj: &ObjectExpr) -> ObjectExpr {
    ObjectExpr {
        words: obj.words.iter().map(|w| engine.dual_word(w)).collect(),
    }
}

/// Object-level cup 1 → A · D(A): per-summand cups into diagonal summands.
pub fn object_cup(engine: &Engine, obj: &ObjectExpr) -> Result<Morphism> {
    let n = obj.words.len();
    let target = obj.tensor(&object_dual(engine, obj));
    let mut out = Morphism::zero(ObjectExpr::unit(), target);
    for (i, w) in obj.words.iter().enumerate() {
        let c = engine.cup(w)?;
        // Diagonal summand index in the product ordering.
        let ti = i * n + i;
        for (&(_, si, root), b) in &c.blocks {
            out.blocks.insert((ti, si, root), b.clone());
        }
    }
    Ok(out)
}

/// Object-level reverse cup 1 → D(A) · A.
pub fn object_cup_r(engine: &Engine, obj: &ObjectExpr) -> Result<Morphism> {
    let n = obj.words.len();
    let target = object_dual(engine, obj).tensor(obj);
    let mut out = Morphism::zero(ObjectExpr::unit(), target);
    for (i, w) in obj.words.iter().enumerate() {
        let c = engine.cup_r(w)?;
        let ti = i * n + i;
        for (&(_, si, root), b) in &c.blocks {
            out.blocks.insert((ti, si, root), b.clone());
        }
    }
    Ok(out)
}

/// Object-level cap D(A) · A → 1.
pub fn object_cap(engine: &Engine, obj: &ObjectExpr) -> Result<Morphism> {
    let n = obj.words.len();
    let source = object_dual(engine, obj).tensor(obj);
    let mut out = Morphism::zero(source, ObjectExpr::unit());
    for (i, w) in obj.words.iter().enumerate() {
        let c = engine.cap(w)?;
        let si = i * n + i;
        for (&(ti, _, root), b) in &c.blocks {
            out.blocks.insert((ti, si, root), b.clone());
        }
    }
    Ok(out)
}

/// Object-level reverse cap A · D(A) → 1.
pub fn object_cap_r(engine: &Engine, obj: &ObjectExpr) -> Result<Morphism> {
    let n = obj.words.len();
    let source = obj.tensor(&object_dual(engine, obj));
    let mut out = Morphism::zero(source, ObjectExpr::unit());
    for (i, w) in obj.words.iter().enumerate() {
        let c = engine.cap_r(w)?;
        let si = i * n + i;
        for (&(ti, _, root), b) in &c.blocks {
            out.blocks.insert((ti, si, root), b.clone());
        }
    }
    Ok(out)
}

/// Dimension of the space of equivariant A-A-bimodule endomorphisms of A.
pub fn bimodule_endo_dim(engine: &Engine, a: &FrobeniusAlgebra) -> Result<usize> {
    let spec = engine.spec.clone();
    let ida = a.id(&spec);
    let basis = crate::morphism::hom_basis(&spec, &a.carrier, &a.carrier);
    if basis.is_empty() {
        return Ok(0);
    }
    // Constraints: φ∘m = m∘(φ⊗id), φ∘m = m∘(id⊗φ), φ∘z_g = z_g∘γ(g)(φ).
    let mut rows: Vec<Vec<C64>> = Vec::new();
    let mut push_constraint = |lhs: Vec<Morphism>, rhs: Vec<Morphism>| {
        // lhs[k] - rhs[k] coefficients per basis element, flattened per slot.
        let dim = lhs.len();
        debug_assert_eq!(dim, rhs.len());
        let mut coords: Vec<Vec<C64>> = Vec::with_capacity(dim);
        for k in 0..dim {
            let diff = lhs[k].sub(&rhs[k]).expect("constraint shapes");
            coords.push(crate::morphism::hom_coords(&spec, &diff));
        }
        if coords.is_empty() {
            return;
        }
        let slots = coords[0].len();
        for s in 0..slots {
            rows.push(coords.iter().map(|c| c[s]).collect());
        }
    };
    let mut lhs1 = Vec::new();
    let mut rhs1 = Vec::new();
    let mut lhs2 = Vec::new();
    let mut rhs2 = Vec::new();
    for phi in &basis {
        lhs1.push(phi.compose(&a.mult)?);
        rhs1.push(a.mult.compose(&engine.tensor(phi, &ida))?);
        lhs2.push(phi.compose(&a.mult)?);
        rhs2.push(a.mult.compose(&engine.tensor(&ida, phi))?);
    }
    push_constraint(lhs1, rhs1);
    push_constraint(lhs2, rhs2);
    for g in 0..spec.group.order() {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for phi in &basis {
            lhs.push(phi.compose(&a.z[g])?);
            rhs.push(a.z[g].compose(&engine.act(g, phi))?);
        }
        push_constraint(lhs, rhs);
    }
    if rows.is_empty() {
        return Ok(basis.len());
    }
    let mat = DMatrix::from_fn(rows.len(), basis.len(), |i, j| rows[i][j]);
    Ok(basis.len() - numeric_rank(&mat, 1e-9))
}

/// Numerical rank by singular values relative to the largest.
pub fn numeric_rank(m: &DMatrix<C64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * smax)
        .count()
}

/// Residual of G-commutativity: m ∘ c_{A,A} = m.
pub fn g_commutativity_residual(engine: &Engine, a: &FrobeniusAlgebra) -> Result<f64> {
    let c = equivariant_braiding(engine, a, a)?;
    let lhs = a.mult.compose(&c)?;
    Ok(lhs.distance(&a.mult))
}

/// Residual of G-cocommutativity: c_{A,A} ∘ Δ = Δ.
pub fn g_cocommutativity_residual(engine: &Engine, a: &FrobeniusAlgebra) -> Result<f64> {
    let c = equivariant_braiding(engine, a, a)?;
    let lhs = c.compose(&a.comult)?;
    Ok(lhs.distance(&a.comult))
}

/// The product equivariant Frobenius algebra on A ⊗ B: multiplication pulls
/// the inner strands through the inverse equivariant braiding, and
/// comultiplication pushes them back with the equivariant braiding.
pub fn product_algebra(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    b: &FrobeniusAlgebra,
) -> Result<FrobeniusAlgebra> {
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_b = Morphism::identity(spec, &b.carrier);
    let c = equivariant_braiding(engine, a, b)?;
    let c_inv = c.try_inverse(spec)?;
    let mult = engine
        .tensor(&a.mult, &b.mult)
        .compose(&engine.tensor_all(&[&id_a, &c_inv, &id_b]))?;
    let comult = engine
        .tensor_all(&[&id_a, &c, &id_b])
        .compose(&engine.tensor(&a.comult, &b.comult))?;
    let mut z = Vec::with_capacity(spec.group.order());
    for g in 0..spec.group.order() {
        z.push(engine.tensor(&a.z[g], &b.z[g]));
    }
    Ok(FrobeniusAlgebra {
        carrier: a.carrier.tensor(&b.carrier),
        mult,
        unit: engine.tensor(&a.unit, &b.unit),
        comult,
        counit: engine.tensor(&a.counit, &b.counit),
        z,
    })
}

/// Splits an equivariant Frobenius idempotent e on the carrier of A into a
/// retract (B, s, r) with s∘r = e and r∘s = id, via a per-root rank
/// factorization, and returns the subalgebra
/// B_ζ = (B, r m (s⊗s), r η, ζ (r⊗r) Δ s, ζ⁻¹ ε s, { r z_g (ᵍs) }).
/// Also returns (s, r).
pub fn split_idempotent(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    e: &Morphism,
    zeta: C64,
) -> Result<(FrobeniusAlgebra, Morphism, Morphism)> {
    let spec = engine.spec.clone();
    if e.compose(e)?.distance(e) > 1e-8 {
        return Err(Error::Precondition("split_idempotent: e is not idempotent".into()));
    }
    // Global scale for the rank threshold.
    let mut smax_all = 0.0f64;
    let mut factors: Vec<(usize, DMatrix<C64>, DMatrix<C64>)> = Vec::new();
    let mut svds = Vec::new();
    for c in 0..spec.rank() {
        let (m, _, _) = e.root_matrix(&spec, c);
        if m.nrows() == 0 {
            continue;
        }
        let svd = m.svd(true, true);
        smax_all = svd
            .singular_values
            .iter()
            .cloned()
            .fold(smax_all, f64::max);
        svds.push((c, svd));
    }
    let thr = 1e-9 * smax_all.max(1.0);
    let mut words: Vec<Word> = Vec::new();
    for (c, svd) in svds {
        let rank = svd.singular_values.iter().filter(|&&s| s > thr).count();
        if rank == 0 {
            continue;
        }
        let u = svd.u.as_ref().expect("svd u");
        let vt = svd.v_t.as_ref().expect("svd v_t");
        // e_c = U_r · (Σ_r V_r†), and Σ_r V_r† U_r = Σ_r Σ_r⁻¹ = id because
        // e_c is idempotent.
        let s_c = u.columns(0, rank).into_owned();
        let mut r_c = DMatrix::<C64>::zeros(rank, vt.ncols());
        for i in 0..rank {
            for j in 0..vt.ncols() {
                r_c[(i, j)] = C64::new(svd.singular_values[i], 0.0) * vt[(i, j)];
            }
        }
        for _ in 0..rank {
            words.push(vec![c]);
        }
        factors.push((c, s_c, r_c));
    }
    let carrier = ObjectExpr { words };
    let mut s_mats = std::collections::BTreeMap::new();
    let mut r_mats = std::collections::BTreeMap::new();
    for (c, s_c, r_c) in factors {
        s_mats.insert(c, s_c);
        r_mats.insert(c, r_c);
    }
    let s = Morphism::from_root_matrices(&spec, &carrier, &a.carrier, &s_mats);
    let r = Morphism::from_root_matrices(&spec, &a.carrier, &carrier, &r_mats);
    let rs = r.compose(&s)?;
    if rs.distance(&Morphism::identity(&spec, &carrier)) > 1e-8 {
        return Err(Error::Precondition("split_idempotent: retract failed".into()));
    }
    let mult = r
        .compose(&a.mult)?
        .compose(&engine.tensor(&s, &s))?;
    let unit = r.compose(&a.unit)?;
    let comult = engine
        .tensor(&r, &r)
        .compose(&a.comult)?
        .compose(&s)?
        .scale(zeta);
    let counit = a.counit.compose(&s)?.scale(C64::new(1.0, 0.0) / zeta);
    let mut z = Vec::with_capacity(spec.group.order());
    for g in 0..spec.group.order() {
        let gs = engine.act(g, &s);
        z.push(r.compose(&a.z[g])?.compose(&gs)?);
    }
    Ok((
        FrobeniusAlgebra {
            carrier,
            mult,
            unit,
            comult,
            counit,
            z,
        },
        s,
        r,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::load_spec;
    use std::path::PathBuf;
    use std::sync::Arc;

    fn engine(name: &str) -> Engine {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(name);
        Engine::new(Arc::new(load_spec(&path).unwrap()))
    }

    #[test]
    fn trivial_algebra_passes_all_checks() {
        for name in ["ising_trivialG.json", "ising_z2crossed.json", "vec_z4.json"] {
            let e = engine(name);
            let a = FrobeniusAlgebra::trivial(&e.spec);
            let checks = check_algebra(&e, &a).unwrap();
            for c in &checks {
                assert!(c.pass, "{name}: {} residual {:.3e}", c.name, c.residual);
            }
            assert!(g_commutativity_residual(&e, &a).unwrap() < 1e-12);
            assert!(g_cocommutativity_residual(&e, &a).unwrap() < 1e-12);
        }
    }
}
