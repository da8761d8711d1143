//! Seeded random generation of words, objects and morphisms for the
//! property-test batteries. All draws go through ChaCha so that results are
//! reproducible from a u64 seed.

use crate::morphism::Morphism;
use crate::object::{tree_count, ObjectExpr, Word};
use crate::spec::CategorySpec;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::C64;

/// Deterministic RNG for a given seed.
pub fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform random word of the given length over all simple labels.
pub fn random_word(spec: &CategorySpec, len: usize, rng: &mut impl Rng) -> Word {
    (0..len).map(|_| rng.gen_range(0..spec.rank())).collect()
}

/// A random object: direct sum of `summands` random words of length ≤ max_len.
pub fn random_object(
    spec: &CategorySpec,
    summands: usize,
    max_len: usize,
    rng: &mut impl Rng,
) -> ObjectExpr {
    let words = (0..summands)
        .map(|_| random_word(spec, rng.gen_range(0..=max_len), rng))
        .collect();
    ObjectExpr { words }
}

fn random_c64(rng: &mut impl Rng) -> C64 {
    // Box-Muller pairs give an isotropic complex Gaussian.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    C64::new(r * u2.cos(), r * u2.sin())
}

/// A dense random morphism in hom(src, tgt) with complex Gaussian entries.
pub fn random_morphism(
    spec: &CategorySpec,
    src: &ObjectExpr,
    tgt: &ObjectExpr,
    rng: &mut impl Rng,
) -> Morphism {
    let mut out = Morphism::zero(src.clone(), tgt.clone());
    for (ti, wt) in tgt.words.iter().enumerate() {
        for (si, ws) in src.words.iter().enumerate() {
            for c in 0..spec.rank() {
                let rows = tree_count(spec, c, wt);
                let cols = tree_count(spec, c, ws);
                if rows == 0 || cols == 0 {
                    continue;
                }
                let m = DMatrix::from_fn(rows, cols, |_, _| random_c64(rng));
                out.blocks.insert((ti, si, c), m);
            }
        }
    }
    out
}

/// A random endomorphism of an object.
pub fn random_endo(spec: &CategorySpec, obj: &ObjectExpr, rng: &mut impl Rng) -> Morphism {
    random_morphism(spec, obj, obj, rng)
}
