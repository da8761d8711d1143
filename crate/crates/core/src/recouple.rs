//! Recoupling engine: merge isomorphisms between left-combed tree bases,
//! horizontal (tensor) products of morphisms, and elementary braid moves.
//!
//! The central object is the merge isomorphism for a pair of words (w, v):
//! for each root simple c it expresses the standard left-combed tree basis of
//! hom(c, w·v) in terms of the factorized basis indexed by (a, b, μ, τ_w,
//! τ_v) with a tree τ_w ∈ hom(a, w), τ_v ∈ hom(b, v) and a vertex
//! μ ∈ hom(c, ab). All recoupling is assembled from F blocks chosen
//! deterministically left-to-right; merges are cached per word pair.

use crate::morphism::Morphism;
use crate::object::{fusion_trees, tree_count, word_grade, ObjectExpr, Tree, Word};
use crate::spec::CategorySpec;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// One factorized basis vector of the merge decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MergeCol {
    /// Root of the left factor tree.
    pub a: usize,
    /// Root of the right factor tree.
    pub b: usize,
    /// Vertex index in hom(c, ab).
    pub mu: usize,
    /// Index of the left tree in `fusion_trees(a, w)`.
    pub tw: usize,
    /// Index of the right tree in `fusion_trees(b, v)`.
    pub tv: usize,
}

/// Merge data for a fixed word pair (w, v), per root simple.
#[derive(Debug)]
pub struct Merge {
    /// Factorized basis per root, in deterministic order.
    pub cols: BTreeMap<usize, Vec<MergeCol>>,
    /// Lookup table from a factorized basis vector to its position.
    pub col_index: BTreeMap<usize, HashMap<MergeCol, usize>>,
    /// Change of basis (rows: standard trees of hom(c, w·v), cols: factorized).
    pub mat: BTreeMap<usize, DMatrix<C64>>,
    /// Numeric inverse of `mat` per root.
    pub inv: BTreeMap<usize, DMatrix<C64>>,
}

/// Computation context holding an immutable spec plus caches.
pub struct Engine {
    pub spec: Arc<CategorySpec>,
    merge_cache: Mutex<HashMap<(Word, Word), Arc<Merge>>>,
    finv_cache: Mutex<HashMap<(usize, usize, usize, usize), Arc<DMatrix<C64>>>>,
    /// Zig-zag phases of the evaluation morphisms, per label.
    pub(crate) zig_cache: Mutex<HashMap<usize, C64>>,
    /// Word-level cups and caps, keyed by (word, kind).
    pub(crate) cup_cache: Mutex<HashMap<(Word, u8), Arc<Morphism>>>,
}

impl Engine {
    pub fn new(spec: Arc<CategorySpec>) -> Self {
        Engine {
            spec,
            merge_cache: Mutex::new(HashMap::new()),
            finv_cache: Mutex::new(HashMap::new()),
            zig_cache: Mutex::new(HashMap::new()),
            cup_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Numeric inverse of an F block, cached.
    pub fn f_inv(&self, a: usize, b: usize, c: usize, d: usize) -> Arc<DMatrix<C64>> {
        if let Some(m) = self.finv_cache.lock().unwrap().get(&(a, b, c, d)) {
            return m.clone();
        }
        let f = self.spec.f_matrix(a, b, c, d);
        let inv = if f.nrows() == 0 {
            f.clone()
        } else {
            f.clone()
                .try_inverse()
                .unwrap_or_else(|| DMatrix::zeros(f.ncols(), f.nrows()))
        };
        let arc = Arc::new(inv);
        self.finv_cache
            .lock()
            .unwrap()
            .insert((a, b, c, d), arc.clone());
        arc
    }

    /// The merge isomorphism for the word pair (w, v), cached.
    pub fn merge(&self, w: &[usize], v: &[usize]) -> Arc<Merge> {
        let key = (w.to_vec(), v.to_vec());
        if let Some(m) = self.merge_cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(self.build_merge(w, v));
        self.merge_cache.lock().unwrap().insert(key, m.clone());
        m
    }

    fn enumerate_cols(&self, w: &[usize], v: &[usize], c: usize) -> Vec<MergeCol> {
        let spec = &self.spec;
        let mut cols = Vec::new();
        for a in 0..spec.rank() {
            let nw = tree_count(spec, a, w);
            if nw == 0 {
                continue;
            }
            for b in 0..spec.rank() {
                let nv = tree_count(spec, b, v);
                if nv == 0 {
                    continue;
                }
                for mu in 0..spec.nabc(a, b, c) {
                    for tw in 0..nw {
                        for tv in 0..nv {
                            cols.push(MergeCol { a, b, mu, tw, tv });
                        }
                    }
                }
            }
        }
        cols
    }

    fn build_merge(&self, w: &[usize], v: &[usize]) -> Merge {
        let spec = &self.spec;
        let rank = spec.rank();
        let mut out = Merge {
            cols: BTreeMap::new(),
            col_index: BTreeMap::new(),
            mat: BTreeMap::new(),
            inv: BTreeMap::new(),
        };

        if v.is_empty() {
            // hom(c, w·1) = hom(c, w); the factorized basis is (a=c, b=unit).
            for c in 0..rank {
                let n = tree_count(spec, c, w);
                if n == 0 {
                    continue;
                }
                let cols = self.enumerate_cols(w, v, c);
                debug_assert_eq!(cols.len(), n);
                let mat = DMatrix::identity(n, n);
                out.col_index.insert(
                    c,
                    cols.iter().enumerate().map(|(i, &k)| (k, i)).collect(),
                );
                out.cols.insert(c, cols);
                out.inv.insert(c, mat.clone());
                out.mat.insert(c, mat);
            }
            return out;
        }

        let (vp, x) = (&v[..v.len() - 1], v[v.len() - 1]);
        let prev = self.merge(w, vp);
        let wv: Word = w.iter().chain(v.iter()).copied().collect();
        let wvp: Word = w.iter().chain(vp.iter()).copied().collect();

        for c in 0..rank {
            let trees = fusion_trees(spec, c, &wv);
            if trees.is_empty() {
                continue;
            }
            let tree_pos: HashMap<Tree, usize> =
                trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let cols = self.enumerate_cols(w, v, c);
            let mut mat = DMatrix::zeros(trees.len(), cols.len());

            // Pre-enumerate trees of v per root b for column decoding.
            let mut vtrees: Vec<Vec<Tree>> = Vec::with_capacity(rank);
            let mut vptrees_pos: Vec<HashMap<Tree, usize>> = Vec::with_capacity(rank);
            for b in 0..rank {
                vtrees.push(fusion_trees(spec, b, v));
                vptrees_pos.push(
                    fusion_trees(spec, b, vp)
                        .into_iter()
                        .enumerate()
                        .map(|(i, t)| (t, i))
                        .collect(),
                );
            }

            for (ci, col) in cols.iter().enumerate() {
                // Decode τ_v = τ_v' + final vertex (b from e, x via ν).
                let tv = &vtrees[col.b][col.tv];
                let (e, nu, tvp): (usize, usize, Tree) = if v.len() == 1 {
                    (spec.unit, 0, vec![])
                } else {
                    let (last_u, last_m) = *tv.last().unwrap();
                    debug_assert_eq!(last_u, col.b);
                    let tvp: Tree = tv[..tv.len() - 1].to_vec();
                    let e = if vp.len() == 1 {
                        vp[0]
                    } else {
                        tvp.last().unwrap().0
                    };
                    (e, last_m, tvp)
                };
                let tvp_idx = vptrees_pos[e][&tvp];
                // F^{-1}(a, e, x; c): rl basis (b, ν, μ) → lr basis (d, μ', m).
                let finv = self.f_inv(col.a, e, x, c);
                let rl = spec.basis_rl(col.a, e, x, c);
                let lr = spec.basis_lr(col.a, e, x, c);
                let rl_pos = rl
                    .iter()
                    .position(|&t| t == (col.b, nu, col.mu))
                    .expect("rl basis member");
                for (li, &(d, mup, m)) in lr.iter().enumerate() {
                    let coef = finv[(li, rl_pos)];
                    if coef.norm_sqr() == 0.0 {
                        continue;
                    }
                    // Look up the previous-level column (a, e, μ', τ_w, τ_v').
                    let pcol = MergeCol {
                        a: col.a,
                        b: e,
                        mu: mup,
                        tw: col.tw,
                        tv: tvp_idx,
                    };
                    let (Some(pidx), Some(pmat)) = (
                        out_prev_col(&prev, d, &pcol),
                        prev.mat.get(&d),
                    ) else {
                        continue;
                    };
                    // Rows of prev.mat[d] are standard trees of hom(d, w·v').
                    let ptrees = fusion_trees(spec, d, &wvp);
                    for (ri, pt) in ptrees.iter().enumerate() {
                        let amp = pmat[(ri, pidx)] * coef;
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        let mut full: Tree = pt.clone();
                        full.push((c, m));
                        // Words of length 1 have empty trees; appending x to a
                        // length-1 word gives a length-2 word with one entry.
                        if wvp.len() == 0 {
                            // w·v' empty: word is just [x]; tree stays empty.
                            full = vec![];
                        }
                        if let Some(&row) = tree_pos.get(&full) {
                            mat[(row, ci)] += amp;
                        }
                    }
                }
            }

            let inv = if mat.nrows() == mat.ncols() {
                mat.clone().try_inverse().unwrap_or_else(|| {
                    DMatrix::zeros(mat.ncols(), mat.nrows())
                })
            } else {
                DMatrix::zeros(mat.ncols(), mat.nrows())
            };
            out.col_index.insert(
                c,
                cols.iter().enumerate().map(|(i, &k)| (k, i)).collect(),
            );
            out.cols.insert(c, cols);
            out.mat.insert(c, mat);
            out.inv.insert(c, inv);
        }
        out
    }

    /// Horizontal product f ⊗ h.
    pub fn tensor(&self, f: &Morphism, h: &Morphism) -> Morphism {
        let spec = &self.spec;
        let source = f.source.tensor(&h.source);
        let target = f.target.tensor(&h.target);
        let mut result = Morphism::zero(source, target);
        let hs = h.source.words.len();
        let ht = h.target.words.len();

        // Collect participating summand pairs of f and h.
        let mut f_pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &(ti, si, a) in f.blocks.keys() {
            f_pairs.entry((ti, si)).or_default().push(a);
        }
        let mut h_pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &(ti, si, b) in h.blocks.keys() {
            h_pairs.entry((ti, si)).or_default().push(b);
        }

        for ((tf, sf), aroots) in &f_pairs {
            for ((th, sh), broots) in &h_pairs {
                let ws = &f.source.words[*sf];
                let wt = &f.target.words[*tf];
                let vs = &h.source.words[*sh];
                let vt = &h.target.words[*th];
                let ms = self.merge(ws, vs);
                let mt = self.merge(wt, vt);
                let ti_out = tf * ht + th;
                let si_out = sf * hs + sh;
                for c in 0..spec.rank() {
                    let (Some(src_cols), Some(tgt_cols)) = (ms.cols.get(&c), mt.cols.get(&c))
                    else {
                        continue;
                    };
                    // D: factorized source basis → factorized target basis.
                    let mut d = DMatrix::<C64>::zeros(tgt_cols.len(), src_cols.len());
                    let mut any = false;
                    for &a in aroots {
                        let Some(fb) = f.block(*tf, *sf, a) else { continue };
                        for &b in broots {
                            let Some(hb) = h.block(*th, *sh, b) else { continue };
                            for mu in 0..spec.nabc(a, b, c) {
                                for (cj, sc) in src_cols.iter().enumerate() {
                                    if sc.a != a || sc.b != b || sc.mu != mu {
                                        continue;
                                    }
                                    for (ri, tc) in tgt_cols.iter().enumerate() {
                                        if tc.a != a || tc.b != b || tc.mu != mu {
                                            continue;
                                        }
                                        let val = fb[(tc.tw, sc.tw)] * hb[(tc.tv, sc.tv)];
                                        if val.norm_sqr() > 0.0 {
                                            d[(ri, cj)] += val;
                                            any = true;
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if !any {
                        continue;
                    }
                    let block = mt.mat.get(&c).unwrap() * &d * ms.inv.get(&c).unwrap();
                    if block.iter().any(|z| z.norm_sqr() > 0.0) {
                        let entry = result
                            .blocks
                            .entry((ti_out, si_out, c))
                            .or_insert_with(|| DMatrix::zeros(block.nrows(), block.ncols()));
                        *entry += block;
                    }
                }
            }
        }
        result
    }

    /// Tensor product of several morphisms, left to right.
    pub fn tensor_all(&self, fs: &[&Morphism]) -> Morphism {
        let mut it = fs.iter();
        let mut acc = (*it.next().expect("nonempty")).clone();
        for f in it {
            acc = self.tensor(&acc, f);
        }
        acc
    }

    /// The elementary braid move on a single word: swaps the letters at
    /// positions i and i+1 (0-based), sending w = (…, a, x, …) to
    /// (…, ^{∂a}x, a, …). Assembled from F, R, F^{-1} on each tree.
    pub fn adjacent_braid(&self, w: &[usize], i: usize) -> Result<Morphism> {
        let spec = &self.spec;
        if i + 1 >= w.len() {
            return Err(Error::Shape("adjacent_braid: position out of range".into()));
        }
        let a = w[i];
        let x = w[i + 1];
        let g = spec.grade(a);
        let bx = spec.act_label(g, x);
        let mut w2 = w.to_vec();
        w2[i] = bx;
        w2[i + 1] = a;
        let source = ObjectExpr::word(w.to_vec());
        let target = ObjectExpr::word(w2.clone());
        let mut out = Morphism::zero(source, target);

        for c in 0..spec.rank() {
            let st = fusion_trees(spec, c, w);
            let tt = fusion_trees(spec, c, &w2);
            if st.is_empty() {
                continue;
            }
            let tpos: HashMap<Tree, usize> =
                tt.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
            let mut mat = DMatrix::<C64>::zeros(tt.len(), st.len());
            for (sj, tau) in st.iter().enumerate() {
                // Extended intermediates: u_0 = unit, u_1 = w[0], entries give
                // u_k for k ≥ 2. Letter positions are 1-based: p = i+1.
                let p = i + 1;
                let interm = |tau: &Tree, k: usize| -> usize {
                    match k {
                        0 => spec.unit,
                        1 => w[0],
                        _ => tau[k - 2].0,
                    }
                };
                let mult = |tau: &Tree, k: usize| -> usize {
                    if k <= 1 {
                        0
                    } else {
                        tau[k - 2].1
                    }
                };
                let s = interm(tau, p - 1);
                let t = if p + 1 == w.len() { c } else { interm(tau, p + 1) };
                let up = interm(tau, p);
                let mp = mult(tau, p);
                let mp1 = mult(tau, p + 1);
                // K = F^{-1}(s, ^ga x, a; t) · R̂ · F(s, a, x; t) acting on
                // the (u_p, m_p, m_{p+1}) data.
                let fmat = spec.f_matrix(s, a, x, t);
                let lr_src = spec.basis_lr(s, a, x, t);
                let rl_src = spec.basis_rl(s, a, x, t);
                let finv = self.f_inv(s, bx, a, t);
                let lr_tgt = spec.basis_lr(s, bx, a, t);
                let rl_tgt = spec.basis_rl(s, bx, a, t);
                let src_pos = lr_src
                    .iter()
                    .position(|&e| e == (up, mp, mp1))
                    .expect("tree vertex in lr basis");
                // Assemble K column for this source vertex.
                for (ri, &(y, ka, nu)) in rl_src.iter().enumerate() {
                    let c1 = fmat[(ri, src_pos)];
                    if c1.norm_sqr() == 0.0 {
                        continue;
                    }
                    let rmat = spec.r_matrix(a, x, y);
                    for kap in 0..rmat.nrows() {
                        let c2 = rmat[(kap, ka)];
                        if c2.norm_sqr() == 0.0 {
                            continue;
                        }
                        let rl_t_pos = rl_tgt
                            .iter()
                            .position(|&e| e == (y, kap, nu))
                            .expect("target rl member");
                        for (li, &(upn, mpn, mp1n)) in lr_tgt.iter().enumerate() {
                            let c3 = finv[(li, rl_t_pos)];
                            if c3.norm_sqr() == 0.0 {
                                continue;
                            }
                            // New tree: same as tau except the vertex entries
                            // for letters p and p+1. The intermediate after
                            // letter p+1 is unchanged (t; equal to the root c
                            // when p+1 is the last letter).
                            let mut nt = tau.clone();
                            if p >= 2 {
                                nt[p - 2] = (upn, mpn);
                            } else if upn != w2[0] || mpn != 0 {
                                continue;
                            }
                            nt[p - 1] = (t, mp1n);
                            if let Some(&row) = tpos.get(&nt) {
                                mat[(row, sj)] += c1 * c2 * c3;
                            }
                        }
                    }
                }
            }
            if mat.iter().any(|z| z.norm_sqr() > 0.0) {
                out.blocks.insert((0, 0, c), mat);
            }
        }
        Ok(out)
    }

    /// G-braiding on words: b_{w,v}: w·v → (^{∂w}v)·w, assembled from
    /// elementary braid moves by the two recursion axioms.
    pub fn braid_words(&self, w: &[usize], v: &[usize]) -> Result<Morphism> {
        let spec = &self.spec;
        let mut cur: Word = w.iter().chain(v.iter()).copied().collect();
        let mut total = Morphism::identity(spec, &ObjectExpr::word(cur.clone()));
        // Letters of w cross from right to left: a_k first, then a_{k-1}, …;
        // each letter crosses the (already twisted) v letter by letter.
        for p in (0..w.len()).rev() {
            // The letter originally at position p now sits at position p and
            // must move right across v.len() letters.
            for q in 0..v.len() {
                let step = self.adjacent_braid(&cur, p + q)?;
                total = step.compose(&total)?;
                cur = step.target.words[0].clone();
            }
        }
        Ok(total)
    }

    /// Reverse braiding b⁻: the inverse of `braid_words(w, v)`, as a
    /// morphism (^{∂w}v)·w → w·v.
    pub fn braid_words_rev(&self, w: &[usize], v: &[usize]) -> Result<Morphism> {
        self.braid_words(w, v)?.try_inverse(&self.spec)
    }

    /// Braiding on objects, summand by summand: for each source summand pair
    /// (w of λ, v of μ) the block b_{w,v} lands in the summand (^{∂w}v)·w of
    /// the target ⊕_{w,v} (^{∂w}v)·w.
    pub fn object_braid(&self, lambda: &ObjectExpr, mu: &ObjectExpr) -> Result<Morphism> {
        let spec = &self.spec;
        let source = lambda.tensor(mu);
        let mut tgt_words = Vec::new();
        for w in &lambda.words {
            let g = word_grade(spec, w);
            for v in &mu.words {
                let mut u: Word = v.iter().map(|&l| spec.act_label(g, l)).collect();
                u.extend_from_slice(w);
                tgt_words.push(u);
            }
        }
        let target = ObjectExpr { words: tgt_words };
        let mut out = Morphism::zero(source, target);
        for (wi, w) in lambda.words.iter().enumerate() {
            for (vi, v) in mu.words.iter().enumerate() {
                let b = self.braid_words(w, v)?;
                let idx = wi * mu.words.len() + vi;
                for (&(_, _, c), m) in &b.blocks {
                    out.blocks.insert((idx, idx, c), m.clone());
                }
            }
        }
        Ok(out)
    }

    /// Dashed crossing labeled g: λ·μ → (^gμ)·λ, the grade-g projection of λ
    /// composed with the braiding. Nonzero only on summands of λ of grade g.
    pub fn dashed_crossing(&self, lambda: &ObjectExpr, mu: &ObjectExpr, g: usize) -> Result<Morphism> {
        let spec = &self.spec;
        let source = lambda.tensor(mu);
        let gmu = crate::object::act_object(spec, g, mu);
        let target = gmu.tensor(lambda);
        let mut out = Morphism::zero(source, target);
        for (wi, w) in lambda.words.iter().enumerate() {
            if word_grade(spec, w) != g {
                continue;
            }
            for (vi, v) in mu.words.iter().enumerate() {
                let b = self.braid_words(w, v)?;
                let si = wi * mu.words.len() + vi;
                let ti = vi * lambda.words.len() + wi;
                for (&(_, _, c), m) in &b.blocks {
                    out.blocks.insert((ti, si, c), m.clone());
                }
            }
        }
        Ok(out)
    }

    /// The splitting vertex s_μ(c; a, b): c → a·b as a morphism.
    pub fn vertex(&self, c: usize, a: usize, b: usize, mu: usize) -> Morphism {
        let spec = &self.spec;
        let source = ObjectExpr::simple(c);
        let target = ObjectExpr::word(vec![a, b]);
        let mut out = Morphism::zero(source, target);
        let trees = fusion_trees(spec, c, &[a, b]);
        let mut m = DMatrix::zeros(trees.len(), 1);
        let row = trees
            .iter()
            .position(|t| *t == vec![(c, mu)])
            .expect("vertex exists");
        m[(row, 0)] = C64::new(1.0, 0.0);
        out.blocks.insert((0, 0, c), m);
        out
    }
}

fn out_prev_col(prev: &Merge, root: usize, col: &MergeCol) -> Option<usize> {
    prev.col_index.get(&root)?.get(col).copied()
}
