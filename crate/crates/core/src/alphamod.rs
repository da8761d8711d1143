//! Equivariant alpha-induction over a neutral Frobenius algebra A: the two
//! induced bimodule structures on A·λ, the tensor product over A with its
//! split idempotent, bimodule traces, local hom spaces with dual bases, and
//! the induction multiplicity matrix Z.
//!
//! Everything assumes A is concentrated in the neutral grade, so the solid
//! braiding of an A-strand over anything is unambiguous, while crossings
//! *under* an A-strand come in a positive (equivariant, z-decorated) and a
//! negative (inverse solid) flavor; these give the two inductions.

use crate::frob::{numeric_rank, FrobeniusAlgebra};
use crate::morphism::{hom_basis, hom_coords, Morphism};
use crate::object::{tree_count, word_grade, ObjectExpr};
use crate::recouple::Engine;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;

/// Which induction: positive uses the z-decorated crossing under A, negative
/// the inverse solid braiding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// True when every summand of `obj` is neutrally graded.
pub fn is_neutral(engine: &Engine, obj: &ObjectExpr) -> bool {
    let spec = &engine.spec;
    obj.words
        .iter()
        .all(|w| word_grade(spec, w) == spec.group.e())
}

fn require_neutral(engine: &Engine, a: &FrobeniusAlgebra) -> Result<()> {
    if !is_neutral(engine, &a.carrier) {
        return Err(Error::Precondition(
            "alpha-induction requires a neutrally graded algebra".into(),
        ));
    }
    Ok(())
}

/// Solid braiding x·y → y·x of a neutral object x over y, with the target
/// summands ordered y-major (so the target expression is exactly y ⊗ x).
pub fn braid_neutral(engine: &Engine, x: &ObjectExpr, y: &ObjectExpr) -> Result<Morphism> {
    if !is_neutral(engine, x) {
        return Err(Error::Precondition("braid_neutral: left factor not neutral".into()));
    }
    let source = x.tensor(y);
    let target = y.tensor(x);
    let mut out = Morphism::zero(source, target);
    let (nx, ny) = (x.words.len(), y.words.len());
    for (wi, w) in x.words.iter().enumerate() {
        for (vi, v) in y.words.iter().enumerate() {
            let b = engine.braid_words(w, v)?;
            let si = wi * ny + vi;
            let ti = vi * nx + wi;
            for (&(_, _, c), m) in &b.blocks {
                out.blocks.insert((ti, si, c), m.clone());
            }
        }
    }
    Ok(out)
}

/// Equivariant crossing x·y → y·x: the grade-g part of x crosses over y
/// through the dashed g-crossing, followed by the structure map z^y_g.
/// `zy[g]` must be a morphism ^g y → y.
pub fn eq_crossing(
    engine: &Engine,
    x: &ObjectExpr,
    y: &ObjectExpr,
    zy: &[Morphism],
) -> Result<Morphism> {
    let spec = &engine.spec;
    let idx = Morphism::identity(spec, x);
    let mut acc = Morphism::zero(x.tensor(y), y.tensor(x));
    for g in 0..spec.group.order() {
        let d = engine.dashed_crossing(x, y, g)?;
        let zg = engine.tensor(&zy[g], &idx);
        acc = acc.add(&zg.compose(&d)?)?;
    }
    Ok(acc)
}

/// Positive crossing of λ under the algebra strand: λ·A → A·λ.
pub fn kappa_plus(engine: &Engine, a: &FrobeniusAlgebra, lam: &ObjectExpr) -> Result<Morphism> {
    eq_crossing(engine, lam, &a.carrier, &a.z)
}

/// Negative crossing of λ under the algebra strand: λ·A → A·λ, the inverse
/// of the solid braiding of A over λ.
pub fn kappa_minus(engine: &Engine, a: &FrobeniusAlgebra, lam: &ObjectExpr) -> Result<Morphism> {
    require_neutral(engine, a)?;
    braid_neutral(engine, &a.carrier, lam)?.try_inverse(&engine.spec)
}

fn kappa_signed(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    sign: Sign,
) -> Result<Morphism> {
    match sign {
        Sign::Plus => kappa_plus(engine, a, lam),
        Sign::Minus => kappa_minus(engine, a, lam),
    }
}

/// An induced A–A bimodule on the carrier A·λ.
pub struct AlphaBimodule {
    pub lambda: ObjectExpr,
    pub sign: Sign,
    pub carrier: ObjectExpr,
    /// Left action A·(A·λ) → A·λ.
    pub m_left: Morphism,
    /// Right action (A·λ)·A → A·λ.
    pub m_right: Morphism,
}

/// Builds the induced bimodule of the given sign on A·λ: the left action is
/// multiplication, the right action multiplies after taking A under λ with
/// the signed crossing.
pub fn alpha_bimodule(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    sign: Sign,
) -> Result<AlphaBimodule> {
    require_neutral(engine, a)?;
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_lam = Morphism::identity(spec, lam);
    let m_left = engine.tensor(&a.mult, &id_lam);
    let kap = kappa_signed(engine, a, lam, sign)?;
    let m_right = m_left.compose(&engine.tensor(&id_a, &kap))?;
    Ok(AlphaBimodule {
        lambda: lam.clone(),
        sign,
        carrier: a.carrier.tensor(lam),
        m_left,
        m_right,
    })
}

/// Bimodule axiom residuals: [left assoc, left unit, right assoc, right
/// unit, left/right compatibility].
pub fn check_bimodule(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    m: &AlphaBimodule,
) -> Result<Vec<f64>> {
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_m = Morphism::identity(spec, &m.carrier);
    let la = m
        .m_left
        .compose(&engine.tensor(&id_a, &m.m_left))?
        .distance(&m.m_left.compose(&engine.tensor(&a.mult, &id_m))?);
    let lu = m
        .m_left
        .compose(&engine.tensor(&a.unit, &id_m))?
        .distance(&id_m);
    let ra = m
        .m_right
        .compose(&engine.tensor(&m.m_right, &id_a))?
        .distance(&m.m_right.compose(&engine.tensor(&id_m, &a.mult))?);
    let ru = m
        .m_right
        .compose(&engine.tensor(&id_m, &a.unit))?
        .distance(&id_m);
    let co = m
        .m_right
        .compose(&engine.tensor(&m.m_left, &id_a))?
        .distance(&m.m_left.compose(&engine.tensor(&id_a, &m.m_right))?);
    Ok(vec![la, lu, ra, ru, co])
}

/// The local projector on hom(–, A·λ): comultiply twice, braid the third
/// A-strand over λ and bring it back under with the positive crossing, swap
/// the middle strands, and cap the outer pair with ε∘m. It is an idempotent
/// whose image consists of the morphisms into A·λ local with respect to A.
pub fn idempotent_ptilde(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
) -> Result<Morphism> {
    require_neutral(engine, a)?;
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_lam = Morphism::identity(spec, lam);
    let comult2 = engine.tensor(&a.comult, &id_a).compose(&a.comult)?;
    let step1 = engine.tensor(&comult2, &id_lam);
    let over = braid_neutral(engine, &a.carrier, lam)?;
    let step2 = engine.tensor_all(&[&id_a, &id_a, &over]);
    let back = kappa_plus(engine, a, lam)?;
    let step3 = engine.tensor_all(&[&id_a, &id_a, &back]);
    let swap = braid_neutral(engine, &a.carrier, &a.carrier)?;
    let step4 = engine.tensor_all(&[&id_a, &swap, &id_lam]);
    let ev = a.counit.compose(&a.mult)?;
    let step5 = engine.tensor_all(&[&ev, &id_a, &id_lam]);
    step5.compose(&step4.compose(&step3.compose(&step2.compose(&step1)?)?)?)
}

/// The fully equivariant variant of the local projector, for an equivariant
/// object (λ, z^λ): all three crossings are z-decorated. For a neutrally
/// graded algebra the two projectors coincide.
pub fn idempotent_p(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    z_lam: &[Morphism],
) -> Result<Morphism> {
    require_neutral(engine, a)?;
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_lam = Morphism::identity(spec, lam);
    let comult2 = engine.tensor(&a.comult, &id_a).compose(&a.comult)?;
    let step1 = engine.tensor(&comult2, &id_lam);
    let over = eq_crossing(engine, &a.carrier, lam, z_lam)?;
    let step2 = engine.tensor_all(&[&id_a, &id_a, &over]);
    let back = eq_crossing(engine, lam, &a.carrier, &a.z)?;
    let step3 = engine.tensor_all(&[&id_a, &id_a, &back]);
    let swap = eq_crossing(engine, &a.carrier, &a.carrier, &a.z)?;
    let step4 = engine.tensor_all(&[&id_a, &swap, &id_lam]);
    let ev = a.counit.compose(&a.mult)?;
    let step5 = engine.tensor_all(&[&ev, &id_a, &id_lam]);
    step5.compose(&step4.compose(&step3.compose(&step2.compose(&step1)?)?)?)
}

/// Splitting of the tensor product over A on induced modules of a common
/// sign: returns (e, s, r) with r: (A·λ)(A·μ) → A·λμ, s its section,
/// r∘s = id and e = s∘r the standard idempotent.
pub fn alpha_tensor_splitting(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    mu: &ObjectExpr,
    sign: Sign,
) -> Result<(Morphism, Morphism, Morphism)> {
    require_neutral(engine, a)?;
    let spec = &engine.spec;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_mu = Morphism::identity(spec, mu);
    let id_lm = Morphism::identity(spec, &lam.tensor(mu));
    let kap = kappa_signed(engine, a, lam, sign)?;
    let kap_inv = kap.try_inverse(spec)?;
    let r = engine
        .tensor(&a.mult, &id_lm)
        .compose(&engine.tensor_all(&[&id_a, &kap, &id_mu]))?;
    let s = engine
        .tensor_all(&[&id_a, &kap_inv, &id_mu])
        .compose(&engine.tensor(&a.comult, &id_lm))?;
    let e = s.compose(&r)?;
    Ok((e, s, r))
}

/// Tensor product over A of two bimodule maps f: A·λ1 → A·λ2 and
/// h: A·μ1 → A·μ2, where the sources carry the `src_sign` induction and the
/// targets the `tgt_sign` induction: r ∘ (f ⊗ h) ∘ s.
#[allow(clippy::too_many_arguments)]
pub fn tensor_over_a(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    f: &Morphism,
    h: &Morphism,
    lam1: &ObjectExpr,
    mu1: &ObjectExpr,
    lam2: &ObjectExpr,
    mu2: &ObjectExpr,
    src_sign: Sign,
    tgt_sign: Sign,
) -> Result<Morphism> {
    let (_, s, _) = alpha_tensor_splitting(engine, a, lam1, mu1, src_sign)?;
    let (_, _, r) = alpha_tensor_splitting(engine, a, lam2, mu2, tgt_sign)?;
    r.compose(&engine.tensor(f, h).compose(&s)?)
}

/// Trace of an A–A bimodule endomorphism on an induced carrier, normalized
/// so that the identity of A·λ traces to d_λ.
pub fn bimodule_trace(engine: &Engine, a: &FrobeniusAlgebra, f: &Morphism) -> Result<C64> {
    let da = a.dim(&engine.spec);
    if da.norm() < 1e-14 {
        return Err(Error::Precondition("bimodule trace over a zero-dimensional algebra".into()));
    }
    Ok(engine.trace(f)? / da)
}

/// Brute-force multiplicity matrix: entry (λ, μ) is the numeric rank of
/// post-composition with the local projector on hom(λ, A·μ), computed
/// directly from the matrix of that map in the standard basis.
pub fn z_matrix_oracle(engine: &Engine, a: &FrobeniusAlgebra) -> Result<Vec<Vec<usize>>> {
    require_neutral(engine, a)?;
    let spec = engine.spec.clone();
    let n = spec.rank();
    let mut out = vec![vec![0usize; n]; n];
    for mu in 0..n {
        let mu_obj = ObjectExpr::simple(mu);
        let pt = idempotent_ptilde(engine, a, &mu_obj)?;
        let tgt = a.carrier.tensor(&mu_obj);
        for lam in 0..n {
            if spec.grade(lam) != spec.grade(mu) {
                continue;
            }
            let src = ObjectExpr::simple(lam);
            let basis = hom_basis(&spec, &src, &tgt);
            if basis.is_empty() {
                continue;
            }
            let d = basis.len();
            let mut m = DMatrix::<C64>::zeros(d, d);
            for (j, f) in basis.iter().enumerate() {
                let co = hom_coords(&spec, &pt.compose(f)?);
                for i in 0..d {
                    m[(i, j)] = co[i];
                }
            }
            out[lam][mu] = numeric_rank(&m, 1e-9);
        }
    }
    Ok(out)
}

/// A local hom space between induced bimodules of opposite sign.
pub struct LocalHom {
    pub lambda: usize,
    pub mu: usize,
    /// Orthonormal basis of the local morphisms λ → A·μ (image of the local
    /// projector), under the weighted trace inner product.
    pub basis_loc: Vec<Morphism>,
    /// Bimodule maps A·λ → A·μ from the positive induction on λ to the
    /// negative induction on μ: multiplication after the local morphism.
    pub phi: Vec<Morphism>,
    /// Dual bimodule maps A·μ → A·λ: the pairing
    /// d_λ^{-1} tr_A(phi_dual[k] ∘ phi[l]) equals δ_kl.
    pub phi_dual: Vec<Morphism>,
}

/// Per-coordinate trace weights d_root / d_λ for morphisms λ → X, in the
/// `hom_coords` enumeration order.
fn trace_weights(engine: &Engine, src: &ObjectExpr, tgt: &ObjectExpr) -> Vec<f64> {
    let spec = &engine.spec;
    let dl = crate::object::object_qdim(spec, src);
    let mut out = Vec::new();
    for ti in 0..tgt.words.len() {
        for si in 0..src.words.len() {
            for c in 0..spec.rank() {
                let r = tree_count(spec, c, &tgt.words[ti]);
                let s = tree_count(spec, c, &src.words[si]);
                for _ in 0..r * s {
                    out.push(spec.qdim(c) / dl);
                }
            }
        }
    }
    out
}

/// Computes the local hom space between α⁺(λ) and α⁻(μ) for simples λ, μ:
/// projects the standard basis of hom(λ, A·μ), orthonormalizes the image,
/// forms the induced bimodule maps, and solves independently for the dual
/// bimodule maps from the intertwiner equations.
pub fn hom_alpha(engine: &Engine, a: &FrobeniusAlgebra, lam: usize, mu: usize) -> Result<LocalHom> {
    require_neutral(engine, a)?;
    let spec = engine.spec.clone();
    let empty = LocalHom {
        lambda: lam,
        mu,
        basis_loc: vec![],
        phi: vec![],
        phi_dual: vec![],
    };
    if spec.grade(lam) != spec.grade(mu) {
        return Ok(empty);
    }
    let lam_obj = ObjectExpr::simple(lam);
    let mu_obj = ObjectExpr::simple(mu);
    let tgt = a.carrier.tensor(&mu_obj);
    let basis = hom_basis(&spec, &lam_obj, &tgt);
    if basis.is_empty() {
        return Ok(empty);
    }
    let d = basis.len();
    let pt = idempotent_ptilde(engine, a, &mu_obj)?;
    let mut m = DMatrix::<C64>::zeros(d, d);
    for (j, f) in basis.iter().enumerate() {
        let co = hom_coords(&spec, &pt.compose(f)?);
        for i in 0..d {
            m[(i, j)] = co[i];
        }
    }
    let rank = numeric_rank(&m, 1e-9);
    let mut basis_loc: Vec<Morphism> = Vec::with_capacity(rank);
    if rank > 0 {
        if lam == spec.unit && mu == spec.unit && rank == 1 {
            // Canonical normalization of the unit-unit slot of a haploid
            // algebra: the unit of A.
            let id_u = Morphism::identity(&spec, &mu_obj);
            basis_loc.push(engine.tensor(&a.unit, &id_u));
        } else {
            // Deterministic orthonormal image basis: left singular vectors,
            // re-orthonormalized under the weighted trace inner product.
            let svd = m.clone().svd(true, false);
            let u = svd.u.as_ref().expect("svd u");
            let wts = trace_weights(engine, &lam_obj, &tgt);
            let mut cols: Vec<Vec<C64>> = Vec::new();
            for k in 0..rank {
                let mut v: Vec<C64> = (0..d).map(|i| u[(i, k)]).collect();
                for prev in &cols {
                    let ip: C64 = (0..d).map(|i| prev[i].conj() * v[i] * wts[i]).sum();
                    for i in 0..d {
                        v[i] -= ip * prev[i];
                    }
                }
                let nn: f64 = (0..d).map(|i| (v[i].conj() * v[i] * wts[i]).re).sum();
                if nn <= 0.0 {
                    return Err(Error::Precondition("degenerate trace form on local homs".into()));
                }
                let inv = 1.0 / nn.sqrt();
                for x in v.iter_mut() {
                    *x *= inv;
                }
                cols.push(v);
            }
            for v in &cols {
                let mut f = Morphism::zero(lam_obj.clone(), tgt.clone());
                for (i, b) in basis.iter().enumerate() {
                    if v[i].norm() > 0.0 {
                        f = f.axpy(v[i], b)?;
                    }
                }
                basis_loc.push(f);
            }
        }
    }
    // Induced bimodule maps.
    let id_a = Morphism::identity(&spec, &a.carrier);
    let id_mu = Morphism::identity(&spec, &mu_obj);
    let ml = engine.tensor(&a.mult, &id_mu);
    let mut phi = Vec::with_capacity(rank);
    for f in &basis_loc {
        phi.push(ml.compose(&engine.tensor(&id_a, f))?);
    }
    // Independent solve for hom(α⁻(μ), α⁺(λ)) from the intertwiner
    // equations; this cross-checks the projector rank.
    let bm_l = alpha_bimodule(engine, a, &lam_obj, Sign::Plus)?;
    let bm_m = alpha_bimodule(engine, a, &mu_obj, Sign::Minus)?;
    let back = hom_basis(&spec, &bm_m.carrier, &bm_l.carrier);
    let nb = back.len();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for psi in &back {
        let c1 = psi
            .compose(&bm_m.m_left)?
            .sub(&bm_l.m_left.compose(&engine.tensor(&id_a, psi))?)?;
        let c2 = psi
            .compose(&bm_m.m_right)?
            .sub(&bm_l.m_right.compose(&engine.tensor(psi, &id_a))?)?;
        let mut col = hom_coords(&spec, &c1);
        col.extend(hom_coords(&spec, &c2));
        rows.push(col);
    }
    let nc = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut cons = DMatrix::<C64>::zeros(nc.max(1), nb);
    for (j, col) in rows.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            cons[(i, j)] = v;
        }
    }
    let svd = cons.clone().svd(false, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |x, &y| x.max(y));
    let vt = svd.v_t.as_ref().expect("svd v_t");
    let mut null: Vec<Vec<C64>> = Vec::new();
    for k in 0..nb {
        let sv = if k < svd.singular_values.len() {
            svd.singular_values[k]
        } else {
            0.0
        };
        if sv <= 1e-9 * smax.max(1.0) {
            null.push((0..nb).map(|j| vt[(k, j)].conj()).collect());
        }
    }
    if null.len() != rank {
        return Err(Error::Precondition(format!(
            "local hom dimension mismatch: projector rank {rank}, intertwiner space {}",
            null.len()
        )));
    }
    let mut psi_basis: Vec<Morphism> = Vec::with_capacity(rank);
    for v in &null {
        let mut f = Morphism::zero(bm_m.carrier.clone(), bm_l.carrier.clone());
        for (j, b) in back.iter().enumerate() {
            if v[j].norm() > 0.0 {
                f = f.axpy(v[j], b)?;
            }
        }
        psi_basis.push(f);
    }
    // Dual basis under the normalized bimodule trace pairing.
    let dl = spec.qdim(lam);
    let mut gram = DMatrix::<C64>::zeros(rank, rank);
    for (k, psi) in psi_basis.iter().enumerate() {
        for (l, p) in phi.iter().enumerate() {
            gram[(k, l)] = bimodule_trace(engine, a, &psi.compose(p)?)? / dl;
        }
    }
    let mut phi_dual = Vec::with_capacity(rank);
    if rank > 0 {
        let gs = gram.clone().svd(true, true);
        let gsmax = gs.singular_values.iter().fold(0.0f64, |x, &y| x.max(y));
        let gsmin = gs.singular_values.iter().fold(f64::INFINITY, |x, &y| x.min(y));
        if gsmin <= 1e-12 * gsmax {
            return Err(Error::SingularGram(if gsmin > 0.0 {
                gsmax / gsmin
            } else {
                f64::INFINITY
            }));
        }
        let ginv = gram.try_inverse().ok_or(Error::SingularGram(f64::INFINITY))?;
        for k in 0..rank {
            let mut f = Morphism::zero(bm_m.carrier.clone(), bm_l.carrier.clone());
            for (j, psi) in psi_basis.iter().enumerate() {
                f = f.axpy(ginv[(k, j)], psi)?;
            }
            phi_dual.push(f);
        }
    }
    Ok(LocalHom {
        lambda: lam,
        mu,
        basis_loc,
        phi,
        phi_dual,
    })
}

/// The induction multiplicity matrix.
pub struct ZMatrix {
    pub n: usize,
    pub entries: Vec<Vec<usize>>,
}

/// Computes Z through the local hom spaces (image basis plus independent
/// intertwiner cross-check for every entry).
pub fn z_matrix(engine: &Engine, a: &FrobeniusAlgebra) -> Result<ZMatrix> {
    let n = engine.spec.rank();
    let mut entries = vec![vec![0usize; n]; n];
    for lam in 0..n {
        for mu in 0..n {
            if engine.spec.grade(lam) != engine.spec.grade(mu) {
                continue;
            }
            entries[lam][mu] = hom_alpha(engine, a, lam, mu)?.phi.len();
        }
    }
    Ok(ZMatrix { n, entries })
}

// ---------------------------------------------------------------------------
// The induced Frobenius algebra in the neutral double
// ---------------------------------------------------------------------------

use crate::construct::{double_context, pair_morphism, rev_morphism, DoubleContext};
use crate::object::act_object;
use crate::randmorph::rng_for_seed;
use rand::Rng;
use std::collections::BTreeMap;

/// The Frobenius algebra in the neutral double induced by alpha-induction
/// over A: carrier ⊕ hom(α⁺λ1, α⁻λ2) · (λ1 ⊠ λ2^∨) with the trace-pairing
/// structure maps.
pub struct ThetaAlgebra {
    pub ctx: DoubleContext,
    pub algebra: FrobeniusAlgebra,
    /// summands[i] = (λ1, λ2, l): the i-th carrier summand.
    pub summands: Vec<(usize, usize, usize)>,
    pub z_entries: Vec<Vec<usize>>,
}

/// Fusion-vertex data for one (ν; λ, μ) triple, with the conjugates already
/// transported to the reverse category.
struct VertexBases {
    e: Vec<Morphism>,        // ν → λ·μ in the base category
    e_dual: Vec<Morphism>,   // λ·μ → ν, trace-dual
    rc_e: Vec<Morphism>,     // conj(e_j) as a reverse morphism (λ∨,μ∨) → (ν∨)
    rc_ed: Vec<Morphism>,    // conj(e_dual_j) as a reverse morphism (ν∨) → (λ∨,μ∨)
}

fn vertex_bases(
    engine: &Engine,
    ctx: &DoubleContext,
    nu: usize,
    lam: usize,
    mu: usize,
    gauge: Option<&mut impl Rng>,
) -> Result<VertexBases> {
    let spec = &engine.spec;
    let src = ObjectExpr::simple(nu);
    let tgt = ObjectExpr::word(vec![lam, mu]);
    let mut e = hom_basis(spec, &src, &tgt);
    if let (Some(rng), true) = (gauge, true) {
        if !e.is_empty() {
            // Random invertible recombination of the splitting basis.
            let k = e.len();
            loop {
                let mut g = DMatrix::<C64>::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        g[(i, j)] = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                    }
                }
                if g.clone().try_inverse().is_some() {
                    let mut ne = Vec::with_capacity(k);
                    for i in 0..k {
                        let mut acc = Morphism::zero(src.clone(), tgt.clone());
                        for (j, b) in e.iter().enumerate() {
                            acc = acc.axpy(g[(j, i)], b)?;
                        }
                        ne.push(acc);
                    }
                    e = ne;
                    break;
                }
            }
        }
    }
    let e_dual = engine.dual_basis(&e)?;
    let dv = |x: usize| spec.dual(x);
    let rev_pair = ObjectExpr::word(vec![dv(lam), dv(mu)]);
    let rev_nu = ObjectExpr::word(vec![dv(nu)]);
    let mut rc_e = Vec::with_capacity(e.len());
    let mut rc_ed = Vec::with_capacity(e.len());
    for f in &e {
        let c = engine.conjugate(f)?;
        rc_e.push(rev_morphism(spec, &ctx.rev, &c, &rev_pair, &rev_nu)?);
    }
    for f in &e_dual {
        let c = engine.conjugate(f)?;
        rc_ed.push(rev_morphism(spec, &ctx.rev, &c, &rev_nu, &rev_pair)?);
    }
    Ok(VertexBases { e, e_dual, rc_e, rc_ed })
}

fn accumulate(out: &mut Morphism, ti: usize, si: usize, piece: &Morphism, coef: C64) {
    for (&(_, _, c), b) in &piece.blocks {
        let scaled = b.map(|x| x * coef);
        out.blocks
            .entry((ti, si, c))
            .and_modify(|m| *m += &scaled)
            .or_insert(scaled);
    }
}

/// Builds the induced Frobenius algebra in the neutral double. `gauge_seed`
/// optionally randomizes the internal fusion-vertex bases and the simple
/// action isomorphisms; the output must not depend on it.
pub fn build_theta(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gauge_seed: Option<u64>,
) -> Result<ThetaAlgebra> {
    require_neutral(engine, a)?;
    let spec = engine.spec.clone();
    let n = spec.rank();
    let ctx = double_context(spec.clone())?;
    let mut rng = gauge_seed.map(rng_for_seed);

    // Local hom spaces and the multiplicity matrix.
    let mut locals: BTreeMap<(usize, usize), LocalHom> = BTreeMap::new();
    let mut z_entries = vec![vec![0usize; n]; n];
    for l1 in 0..n {
        for l2 in 0..n {
            if spec.grade(l1) != spec.grade(l2) {
                continue;
            }
            let lh = hom_alpha(engine, a, l1, l2)?;
            z_entries[l1][l2] = lh.phi.len();
            if !lh.phi.is_empty() {
                locals.insert((l1, l2), lh);
            }
        }
    }
    if z_entries[spec.unit][spec.unit] != 1 {
        return Err(Error::Precondition(
            "the induced double algebra requires a haploid input algebra".into(),
        ));
    }

    // Carrier summands in lexicographic order.
    let mut summands: Vec<(usize, usize, usize)> = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    for (&(l1, l2), lh) in &locals {
        let letter = *ctx
            .index
            .get(&(l1, spec.dual(l2)))
            .ok_or_else(|| Error::Precondition("missing diagonal pair in the double".into()))?;
        for l in 0..lh.phi.len() {
            summands.push((l1, l2, l));
            words.push(vec![letter]);
        }
    }
    let carrier = ObjectExpr { words };
    let ns = summands.len();
    let sum_index: BTreeMap<(usize, usize, usize), usize> = summands
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();

    // Fusion-vertex bases (optionally re-gauged).
    let mut vcache: BTreeMap<(usize, usize, usize), VertexBases> = BTreeMap::new();
    for &(l1, l2, _) in &summands {
        for &(m1, m2, _) in &summands {
            for &(n1, n2, _) in &summands {
                for (nu, lam, mu) in [(n1, l1, m1), (n2, l2, m2)] {
                    if vcache.contains_key(&(nu, lam, mu)) || spec.nabc(lam, mu, nu) == 0 {
                        continue;
                    }
                    let vb = vertex_bases(engine, &ctx, nu, lam, mu, rng.as_mut())?;
                    vcache.insert((nu, lam, mu), vb);
                }
            }
        }
    }

    let id_a = Morphism::identity(&spec, &a.carrier);
    let theta2 = carrier.tensor(&carrier);
    let mut mult = Morphism::zero(theta2.clone(), carrier.clone());
    let mut comult = Morphism::zero(carrier.clone(), theta2.clone());

    for (il, &(l1, l2, l)) in summands.iter().enumerate() {
        let lo_l = &locals[&(l1, l2)];
        for (im, &(m1, m2, m)) in summands.iter().enumerate() {
            let lo_m = &locals[&(m1, m2)];
            let sl1 = ObjectExpr::simple(l1);
            let sl2 = ObjectExpr::simple(l2);
            let sm1 = ObjectExpr::simple(m1);
            let sm2 = ObjectExpr::simple(m2);
            // Tensor over A of the forward maps and of the dual maps.
            let t_lm = tensor_over_a(
                engine, a, &lo_l.phi[l], &lo_m.phi[m], &sl1, &sm1, &sl2, &sm2,
                Sign::Plus, Sign::Minus,
            )?;
            let td_lm = tensor_over_a(
                engine, a, &lo_l.phi_dual[l], &lo_m.phi_dual[m], &sl2, &sm2, &sl1, &sm1,
                Sign::Minus, Sign::Plus,
            )?;
            let si_pair = il * ns + im;
            for (in_, &(n1, n2, nn)) in summands.iter().enumerate() {
                if spec.nabc(l1, m1, n1) == 0 || spec.nabc(l2, m2, n2) == 0 {
                    continue;
                }
                let lo_n = &locals[&(n1, n2)];
                let v1 = &vcache[&(n1, l1, m1)];
                let v2 = &vcache[&(n2, l2, m2)];
                let dn1 = spec.qdim(n1);
                let dn2 = spec.qdim(n2);
                for (i, e1) in v1.e.iter().enumerate() {
                    let alpha_e1 = engine.tensor(&id_a, e1);
                    let alpha_e1d = engine.tensor(&id_a, &v1.e_dual[i]);
                    for (j, e2) in v2.e.iter().enumerate() {
                        let alpha_e2 = engine.tensor(&id_a, e2);
                        let alpha_e2d = engine.tensor(&id_a, &v2.e_dual[j]);
                        // Product coefficient.
                        let comp_m = lo_n.phi_dual[nn]
                            .compose(&alpha_e2d)?
                            .compose(&t_lm)?
                            .compose(&alpha_e1)?;
                        let cm = bimodule_trace(engine, a, &comp_m)? / dn1;
                        if cm.norm() > 1e-14 {
                            let piece = pair_morphism(&ctx, &v1.e_dual[i], &v2.rc_e[j])?;
                            accumulate(&mut mult, in_, si_pair, &piece, cm);
                        }
                        // Coproduct coefficient.
                        let comp_d = alpha_e1d
                            .compose(&td_lm)?
                            .compose(&alpha_e2)?
                            .compose(&lo_n.phi[nn])?;
                        let cd = bimodule_trace(engine, a, &comp_d)?
                            * (spec.qdim(l2) * spec.qdim(m2) / (dn2 * dn1));
                        if cd.norm() > 1e-14 {
                            let piece = pair_morphism(&ctx, e1, &v2.rc_ed[j])?;
                            accumulate(&mut comult, si_pair, in_, &piece, cd);
                        }
                    }
                }
            }
        }
    }

    // Unit and counit.
    let unit_letter = ctx.index[&(spec.unit, spec.unit)];
    let i0 = sum_index[&(spec.unit, spec.unit, 0)];
    let mut unit = Morphism::zero(ObjectExpr::unit(), carrier.clone());
    let mut b = DMatrix::<C64>::zeros(1, 1);
    b[(0, 0)] = C64::new(1.0, 0.0);
    unit.blocks.insert((i0, 0, unit_letter), b.clone());
    let mut counit = Morphism::zero(carrier.clone(), ObjectExpr::unit());
    counit.blocks.insert((0, i0, unit_letter), b);

    // Equivariant structure.
    let ord = spec.group.order();
    // Optional scalar re-gauging of the simple action isomorphisms; the
    // scalars cancel between coefficient and component.
    let mut ug = vec![vec![C64::new(1.0, 0.0); n]; ord];
    if let Some(r) = rng.as_mut() {
        for row in ug.iter_mut().skip(1) {
            for v in row.iter_mut() {
                let th: f64 = r.gen::<f64>() * std::f64::consts::TAU;
                *v = C64::new(th.cos(), th.sin());
            }
        }
    }
    let mut z = Vec::with_capacity(ord);
    for g in 0..ord {
        let src = act_object(&ctx.double, g, &carrier);
        let mut zg = Morphism::zero(src, carrier.clone());
        for (il, &(l1, l2, l)) in summands.iter().enumerate() {
            let gl1 = spec.act_label(g, l1);
            let gl2 = spec.act_label(g, l2);
            let lo_l = &locals[&(l1, l2)];
            let lo_g = &locals[&(gl1, gl2)];
            let zg_a = &a.z[g];
            let zg_a_inv = zg_a.try_inverse(&spec)?;
            let id_gl1 = Morphism::identity(&spec, &ObjectExpr::simple(gl1));
            let id_gl2 = Morphism::identity(&spec, &ObjectExpr::simple(gl2));
            let pre = engine.tensor(&zg_a_inv, &id_gl1);
            let post = engine.tensor(zg_a, &id_gl2);
            let gphi = engine.act(g, &lo_l.phi[l]);
            let core = post.compose(&gphi)?.compose(&pre)?;
            let root = ctx.index[&(gl1, spec.dual(gl2))];
            for lp in 0..lo_g.phi.len() {
                let comp = lo_g.phi_dual[lp].compose(&core)?;
                let mut c = bimodule_trace(engine, a, &comp)? / spec.qdim(l1);
                // Scalar action-gauge factors (they cancel by construction).
                c *= ug[g][l2] / ug[g][l1];
                c *= ug[g][l1] / ug[g][l2];
                if c.norm() <= 1e-14 {
                    continue;
                }
                let ti = sum_index[&(gl1, gl2, lp)];
                let mut bb = DMatrix::<C64>::zeros(1, 1);
                bb[(0, 0)] = c;
                zg.blocks
                    .entry((ti, il, root))
                    .and_modify(|m| *m += &bb)
                    .or_insert(bb);
            }
        }
        z.push(zg);
    }

    Ok(ThetaAlgebra {
        ctx,
        algebra: FrobeniusAlgebra {
            carrier,
            mult,
            unit,
            comult,
            counit,
            z,
        },
        summands,
        z_entries,
    })
}
