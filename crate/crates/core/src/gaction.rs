//! The pivotal G-action on objects and morphisms.
//!
//! Labels are permuted by the action permutation; fusion-tree coefficients
//! are transported vertex by vertex through the U blocks. Splitting trees
//! transform with U, their dual (fusion) trees with U^{-1}, so a morphism
//! block M transforms as T_target · M · T_source^{-1}.

use crate::morphism::Morphism;
use crate::object::{act_object, act_word, fusion_trees, Tree};
use crate::recouple::Engine;
use crate::C64;
use nalgebra::DMatrix;

impl Engine {
    /// Transport matrix of splitting trees: hom(c, w) → hom(gc, gw) in the
    /// standard tree bases (rows: trees of (gc, gw), cols: trees of (c, w)).
    pub fn tree_transport(&self, g: usize, c: usize, w: &[usize]) -> DMatrix<C64> {
        let spec = &self.spec;
        let src = fusion_trees(spec, c, w);
        let gw = act_word(spec, g, w);
        let gc = spec.act_label(g, c);
        let tgt = fusion_trees(spec, gc, &gw);
        let mut t = DMatrix::zeros(tgt.len(), src.len());
        let interm = |tau: &Tree, k: usize, w: &[usize], root: usize| -> usize {
            // Intermediate after fusing k letters (1-based); u_1 = w[0].
            if k == 1 {
                w[0]
            } else if k == w.len() {
                root
            } else {
                tau[k - 2].0
            }
        };
        for (sj, tau) in src.iter().enumerate() {
            for (ri, tau2) in tgt.iter().enumerate() {
                // Intermediates must match under the label permutation.
                let mut ok = true;
                let mut coef = C64::new(1.0, 0.0);
                for k in 2..=w.len() {
                    let u_prev = interm(tau, k - 1, w, c);
                    let u = interm(tau, k, w, c);
                    let u2 = interm(tau2, k, &gw, gc);
                    if u2 != spec.act_label(g, u) {
                        ok = false;
                        break;
                    }
                    let m = tau[k - 2].1;
                    let m2 = tau2[k - 2].1;
                    let ub = spec.u_matrix(g, u_prev, w[k - 1], u);
                    coef *= ub[(m2, m)];
                    if coef.norm_sqr() == 0.0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    t[(ri, sj)] = coef;
                }
            }
        }
        t
    }

    /// The functor γ(g) on morphisms.
    pub fn act(&self, g: usize, f: &Morphism) -> Morphism {
        let spec = &self.spec;
        let source = act_object(spec, g, &f.source);
        let target = act_object(spec, g, &f.target);
        let mut out = Morphism::zero(source, target);
        for (&(ti, si, c), m) in &f.blocks {
            let tt = self.tree_transport(g, c, &f.target.words[ti]);
            let ts = self.tree_transport(g, c, &f.source.words[si]);
            let ts_inv = if ts.nrows() == 0 {
                ts.clone()
            } else {
                ts.clone().try_inverse().expect("invertible tree transport")
            };
            let gc = spec.act_label(g, c);
            let block = &tt * m * &ts_inv;
            if block.iter().any(|z| z.norm_sqr() > 0.0) {
                let entry = out
                    .blocks
                    .entry((ti, si, gc))
                    .or_insert_with(|| DMatrix::zeros(block.nrows(), block.ncols()));
                *entry += block;
            }
        }
        out
    }
}
