//! Thick crossings: braidings that move an induced bimodule strand past a
//! free A-module strand, realized on reduced carriers. A left module is the
//! free module A·m on a generator object m, with the multiplication as
//! action; a right module is the induced module on A·p whose right action
//! takes the algebra strand under the generator with a signed crossing.
//! The four crossings produced here are the building blocks for the
//! compatibility checks between module-level and plain braidings.

use crate::alphamod::{alpha_bimodule, alpha_tensor_splitting, Sign};
use crate::frob::FrobeniusAlgebra;
use crate::morphism::Morphism;
use crate::object::{act_object, word_grade, ObjectExpr};
use crate::recouple::Engine;
use crate::{Error, Result};

/// Grade of a homogeneous object; error when summands have mixed grades.
pub fn object_grade(engine: &Engine, obj: &ObjectExpr) -> Result<usize> {
    let spec = &engine.spec;
    let mut grades = obj.words.iter().map(|w| word_grade(spec, w));
    let g = grades
        .next()
        .ok_or_else(|| Error::Precondition("grade of an empty object".into()))?;
    if grades.all(|h| h == g) {
        Ok(g)
    } else {
        Err(Error::Precondition("object is not homogeneous".into()))
    }
}

/// Braiding of a homogeneous object x over y: x·y → (^g y)·x, with target
/// summands enumerated so that the target expression is act(g, y) ⊗ x.
pub fn braid_over(engine: &Engine, x: &ObjectExpr, y: &ObjectExpr) -> Result<Morphism> {
    let spec = &engine.spec;
    let g = object_grade(engine, x)?;
    let target = act_object(spec, g, y).tensor(x);
    let mut out = Morphism::zero(x.tensor(y), target);
    let (nw, nv) = (x.words.len(), y.words.len());
    for (wi, w) in x.words.iter().enumerate() {
        for (vi, v) in y.words.iter().enumerate() {
            let b = engine.braid_words(w, v)?;
            let si = wi * nv + vi;
            let ti = vi * nw + wi;
            for (&(_, _, c), m) in &b.blocks {
                out.blocks.insert((ti, si, c), m.clone());
            }
        }
    }
    Ok(out)
}

/// Inverse braiding (^g y)·x → x·y of a homogeneous object x over y.
pub fn braid_over_inv(engine: &Engine, x: &ObjectExpr, y: &ObjectExpr) -> Result<Morphism> {
    braid_over(engine, x, y)?.try_inverse(&engine.spec)
}

/// Left action on the free module A·m: A·(A·m) → A·m.
pub fn free_left_action(engine: &Engine, a: &FrobeniusAlgebra, gen: &ObjectExpr) -> Morphism {
    engine.tensor(&a.mult, &Morphism::identity(&engine.spec, gen))
}

/// Left action on the g-twisted free module ^g(A·m): A·^g(A·m) → ^g(A·m).
pub fn free_left_action_twisted(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gen: &ObjectExpr,
    g: usize,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let m0 = free_left_action(engine, a, gen);
    let zinv = a.z[g].try_inverse(spec)?;
    let id_t = Morphism::identity(spec, &act_object(spec, g, &a.carrier.tensor(gen)));
    engine.act(g, &m0).compose(&engine.tensor(&zinv, &id_t))
}

/// Right action on the induced right module on A·p: (A·p)·A → A·p.
pub fn free_right_action(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gen: &ObjectExpr,
    sign: Sign,
) -> Result<Morphism> {
    Ok(alpha_bimodule(engine, a, gen, sign)?.m_right)
}

/// Right action on the g-twisted right module ^g(A·p): ^g(A·p)·A → ^g(A·p).
pub fn free_right_action_twisted(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gen: &ObjectExpr,
    sign: Sign,
    g: usize,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let m0 = free_right_action(engine, a, gen, sign)?;
    let zinv = a.z[g].try_inverse(spec)?;
    let id_t = Morphism::identity(spec, &act_object(spec, g, &a.carrier.tensor(gen)));
    engine.act(g, &m0).compose(&engine.tensor(&id_t, &zinv))
}

/// Thick positive crossing of the induced λ-strand over the free left module
/// on m, on the reduced carrier: A·λ·m → ^g(A·m)·λ, with g = ∂λ. The
/// algebra strand produced by the splitting acts on the twisted module after
/// the crossing.
pub fn b_plus_left(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    gen: &ObjectExpr,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let g = object_grade(engine, lam)?;
    let am = a.carrier.tensor(gen);
    let (_, s, _) = alpha_tensor_splitting(engine, a, lam, gen, Sign::Plus)?;
    let b = braid_over(engine, lam, &am)?;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_lam = Morphism::identity(spec, lam);
    let act = free_left_action_twisted(engine, a, gen, g)?;
    engine
        .tensor(&act, &id_lam)
        .compose(&engine.tensor(&id_a, &b).compose(&s)?)
}

/// Thick negative crossing of the induced λ-strand under the free left
/// module on m, on the reduced carrier: A·(^hλ)·m → (A·m)·λ, with h = ∂m.
pub fn b_minus_left(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    lam: &ObjectExpr,
    gen: &ObjectExpr,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let h = object_grade(engine, gen)?;
    let hlam = act_object(spec, h, lam);
    let am = a.carrier.tensor(gen);
    let (_, s, _) = alpha_tensor_splitting(engine, a, &hlam, gen, Sign::Minus)?;
    let binv = braid_over_inv(engine, &am, lam)?;
    let id_a = Morphism::identity(spec, &a.carrier);
    let id_lam = Morphism::identity(spec, lam);
    let act = free_left_action(engine, a, gen);
    engine
        .tensor(&act, &id_lam)
        .compose(&engine.tensor(&id_a, &binv).compose(&s)?)
}

/// Thick positive crossing of the induced λ-strand over the right module on
/// A·p, on the reduced carrier: ^g(A·p)·λ → λ·(A·p), with g = ∂λ. The
/// section re-expands the shared algebra strand, which then acts on the
/// twisted right module before the inverse crossing.
pub fn b_plus_right(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gen: &ObjectExpr,
    sign: Sign,
    lam: &ObjectExpr,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let g = object_grade(engine, lam)?;
    let r_obj = a.carrier.tensor(gen);
    let gr = act_object(spec, g, &r_obj);
    let act = free_right_action_twisted(engine, a, gen, sign, g)?;
    let id_gr = Morphism::identity(spec, &gr);
    let id_lam = Morphism::identity(spec, lam);
    let id_alam = Morphism::identity(spec, &a.carrier.tensor(lam));
    let deta = a.comult.compose(&a.unit)?;
    let section = engine
        .tensor(&act, &id_alam)
        .compose(&engine.tensor_all(&[&id_gr, &deta, &id_lam]))?;
    let binv = braid_over_inv(engine, lam, &r_obj)?;
    binv.compose(&engine.tensor(&act, &id_lam).compose(&section)?)
}

/// Thick negative crossing of the induced λ-strand under the right module on
/// A·p, on the reduced carrier: A·p·λ → (^kλ)·(A·p), with k = ∂p.
pub fn b_minus_right(
    engine: &Engine,
    a: &FrobeniusAlgebra,
    gen: &ObjectExpr,
    sign: Sign,
    lam: &ObjectExpr,
) -> Result<Morphism> {
    let spec = &engine.spec;
    let r_obj = a.carrier.tensor(gen);
    let (_, s, _) = alpha_tensor_splitting(engine, a, gen, lam, sign)?;
    let act = free_right_action(engine, a, gen, sign)?;
    let id_lam = Morphism::identity(spec, lam);
    let b = braid_over(engine, &r_obj, lam)?;
    b.compose(&engine.tensor(&act, &id_lam).compose(&s)?)
}
