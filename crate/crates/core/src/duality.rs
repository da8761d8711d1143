//! Duality: cups and caps, word-level rotations, morphism conjugation,
//! pivotal traces, the trace pairing with dual bases, and the twist.
//!
//! Left duality on a simple λ is the pair coev: 1 → λ·λ^∨, ev: λ^∨·λ → 1
//! with explicit √d normalization; the evaluation phase is solved from the
//! zig-zag identity. Right duality is obtained from the left duality of λ^∨
//! twisted by the pivotal coefficient, so that both traces of id equal d_λ.

use crate::morphism::{hom_basis, Morphism};
use crate::object::{word_qdim, ObjectExpr, Word};
use crate::recouple::Engine;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use std::sync::Arc;

const CUP_R: u8 = 0; // R_w : 1 → w·D(w)
const CUP_E: u8 = 1; // E_w : D(w)·w → 1
const CUP_RP: u8 = 2; // R'_w : 1 → D(w)·w
const CUP_EP: u8 = 3; // E'_w : w·D(w) → 1

impl Engine {
    fn one(&self) -> C64 {
        C64::new(1.0, 0.0)
    }

    /// Unnormalized splitting vertex 1 → λ·λ^∨ (coefficient 1).
    fn coev_raw(&self, l: usize) -> Morphism {
        let spec = &self.spec;
        let ld = spec.dual(l);
        let mut m = Morphism::zero(ObjectExpr::unit(), ObjectExpr::word(vec![l, ld]));
        let mut b = DMatrix::zeros(1, 1);
        b[(0, 0)] = self.one();
        m.blocks.insert((0, 0, spec.unit), b);
        m
    }

    /// Unnormalized fusion vertex λ^∨·λ → 1 (coefficient 1).
    fn ev_raw(&self, l: usize) -> Morphism {
        let spec = &self.spec;
        let ld = spec.dual(l);
        let mut m = Morphism::zero(ObjectExpr::word(vec![ld, l]), ObjectExpr::unit());
        let mut b = DMatrix::zeros(1, 1);
        b[(0, 0)] = self.one();
        m.blocks.insert((0, 0, spec.unit), b);
        m
    }

    /// Zig-zag phase of λ: the scalar making
    /// (id_λ ⊗ ev_λ)∘(coev_λ ⊗ id_λ) = id_λ with the √d normalization.
    pub fn zig_phase(&self, l: usize) -> C64 {
        if let Some(&c) = self.zig_cache.lock().unwrap().get(&l) {
            return c;
        }
        let spec = self.spec.clone();
        let idl = Morphism::identity(&spec, &ObjectExpr::simple(l));
        let left = self.tensor(&self.coev_raw(l), &idl);
        let right = self.tensor(&idl, &self.ev_raw(l));
        let z = right.compose(&left).expect("zig-zag composite");
        let s0 = z
            .block(0, 0, l)
            .map(|b| b[(0, 0)])
            .unwrap_or_else(|| C64::new(0.0, 0.0));
        let d = spec.qdim(l);
        let c = if s0.norm() > 0.0 {
            self.one() / (s0 * d)
        } else {
            C64::new(0.0, 0.0)
        };
        self.zig_cache.lock().unwrap().insert(l, c);
        c
    }

    /// Left coevaluation 1 → λ·λ^∨.
    pub fn coev(&self, l: usize) -> Morphism {
        self.coev_raw(l).scale(C64::new(self.spec.qdim(l).sqrt(), 0.0))
    }

    /// Left evaluation λ^∨·λ → 1.
    pub fn ev(&self, l: usize) -> Morphism {
        let c = self.zig_phase(l);
        self.ev_raw(l)
            .scale(c * C64::new(self.spec.qdim(l).sqrt(), 0.0))
    }

    /// Right evaluation λ·λ^∨ → 1 (left evaluation of λ^∨ twisted by the
    /// pivotal coefficient).
    pub fn ev_r(&self, l: usize) -> Morphism {
        let ld = self.spec.dual(l);
        self.ev(ld).scale(self.spec.labels[l].pivotal)
    }

    /// Right coevaluation 1 → λ^∨·λ.
    pub fn coev_r(&self, l: usize) -> Morphism {
        let ld = self.spec.dual(l);
        self.coev(ld).scale(self.one() / self.spec.labels[l].pivotal)
    }

    /// The twisted dual word D(w): D([]) = [], D(w'·x) = ^{(∂x)^{-1}}D(w')·[x^∨].
    pub fn dual_word(&self, w: &[usize]) -> Word {
        let spec = &self.spec;
        let mut d: Word = vec![];
        for &x in w {
            let gbar = spec.group.inv(spec.grade(x));
            let mut nd: Word = d.iter().map(|&l| spec.act_label(gbar, l)).collect();
            nd.push(spec.dual(x));
            d = nd;
        }
        d
    }

    fn cup_cached(&self, w: &[usize], kind: u8) -> Option<Arc<Morphism>> {
        self.cup_cache
            .lock()
            .unwrap()
            .get(&(w.to_vec(), kind))
            .cloned()
    }

    fn cup_store(&self, w: &[usize], kind: u8, m: Morphism) -> Arc<Morphism> {
        let arc = Arc::new(m);
        self.cup_cache
            .lock()
            .unwrap()
            .insert((w.to_vec(), kind), arc.clone());
        arc
    }

    /// Word cup R_w: 1 → w·D(w).
    pub fn cup(&self, w: &[usize]) -> Result<Arc<Morphism>> {
        if let Some(m) = self.cup_cached(w, CUP_R) {
            return Ok(m);
        }
        let spec = self.spec.clone();
        let m = if w.is_empty() {
            Morphism::identity(&spec, &ObjectExpr::unit())
        } else {
            let (wp, x) = (&w[..w.len() - 1], w[w.len() - 1]);
            let prev = self.cup(wp)?;
            let dwp = self.dual_word(wp);
            let id_wp = Morphism::identity(&spec, &ObjectExpr::word(wp.to_vec()));
            let id_dwp = Morphism::identity(&spec, &ObjectExpr::word(dwp.clone()));
            let insert = self.tensor_all(&[&id_wp, &self.coev(x), &id_dwp]);
            let step1 = insert.compose(&prev)?;
            // Braid x^∨ over D(w').
            let braid = self.braid_words(&[spec.dual(x)], &dwp)?;
            let id_wx = Morphism::identity(&spec, &ObjectExpr::word(w.to_vec()));
            let step2 = self.tensor(&id_wx, &braid);
            step2.compose(&step1)?
        };
        Ok(self.cup_store(w, CUP_R, m))
    }

    /// Word cap E_w: D(w)·w → 1.
    pub fn cap(&self, w: &[usize]) -> Result<Arc<Morphism>> {
        if let Some(m) = self.cup_cached(w, CUP_E) {
            return Ok(m);
        }
        let spec = self.spec.clone();
        let m = if w.is_empty() {
            Morphism::identity(&spec, &ObjectExpr::unit())
        } else {
            let (wp, x) = (&w[..w.len() - 1], w[w.len() - 1]);
            let gbar = spec.group.inv(spec.grade(x));
            let dwp = self.dual_word(wp);
            let gdwp: Word = dwp.iter().map(|&l| spec.act_label(gbar, l)).collect();
            let id_gdwp = Morphism::identity(&spec, &ObjectExpr::word(gdwp));
            // D(w)·w = ^{ḡ}D(w')·x^∨·w'·x.
            let braid = self.braid_words(&[spec.dual(x)], wp)?;
            let idx = Morphism::identity(&spec, &ObjectExpr::simple(x));
            let step1 = self.tensor_all(&[&id_gdwp, &braid, &idx]);
            let gwp: Word = wp.iter().map(|&l| spec.act_label(gbar, l)).collect();
            let id_gwp = Morphism::identity(&spec, &ObjectExpr::word(gwp));
            let step2 = self.tensor_all(&[&id_gdwp, &id_gwp, &self.ev(x)]);
            let prev = self.cap(wp)?;
            let gprev = self.act(gbar, &prev);
            gprev.compose(&step2.compose(&step1)?)?
        };
        Ok(self.cup_store(w, CUP_E, m))
    }

    /// Word cup R'_w: 1 → D(w)·w (right duality).
    pub fn cup_r(&self, w: &[usize]) -> Result<Arc<Morphism>> {
        if let Some(m) = self.cup_cached(w, CUP_RP) {
            return Ok(m);
        }
        let spec = self.spec.clone();
        let m = if w.is_empty() {
            Morphism::identity(&spec, &ObjectExpr::unit())
        } else {
            let (wp, x) = (&w[..w.len() - 1], w[w.len() - 1]);
            let gbar = spec.group.inv(spec.grade(x));
            let prev = self.cup_r(wp)?;
            let gprev = self.act(gbar, &prev);
            let dwp = self.dual_word(wp);
            let gdwp: Word = dwp.iter().map(|&l| spec.act_label(gbar, l)).collect();
            let gwp: Word = wp.iter().map(|&l| spec.act_label(gbar, l)).collect();
            let id_gdwp = Morphism::identity(&spec, &ObjectExpr::word(gdwp));
            let id_gwp = Morphism::identity(&spec, &ObjectExpr::word(gwp.clone()));
            let insert = self.tensor_all(&[&id_gdwp, &self.coev_r(x), &id_gwp]);
            let step1 = insert.compose(&gprev)?;
            // Braid x over ^{ḡ}w' to restore the original letters of w'.
            let braid = self.braid_words(&[x], &gwp)?;
            let idxd = Morphism::identity(&spec, &ObjectExpr::simple(spec.dual(x)));
            let step2 = self.tensor_all(&[&id_gdwp, &idxd, &braid]);
            step2.compose(&step1)?
        };
        Ok(self.cup_store(w, CUP_RP, m))
    }

    /// Word cap E'_w: w·D(w) → 1 (right duality).
    pub fn cap_r(&self, w: &[usize]) -> Result<Arc<Morphism>> {
        if let Some(m) = self.cup_cached(w, CUP_EP) {
            return Ok(m);
        }
        let spec = self.spec.clone();
        let m = if w.is_empty() {
            Morphism::identity(&spec, &ObjectExpr::unit())
        } else {
            let (wp, x) = (&w[..w.len() - 1], w[w.len() - 1]);
            let dwp = self.dual_word(wp);
            // w·D(w) = w'·x·^{ḡ}D(w')·x^∨ → unbraid → w'·x·x^∨·D(w')…
            // wait: braid sends x^∨·D(w') → ^{ḡ}D(w')·x^∨, so compose with
            // its inverse, then pair x·x^∨ with the right evaluation.
            let braid_inv = self.braid_words(&[spec.dual(x)], &dwp)?.try_inverse(&spec)?;
            let id_wx = Morphism::identity(&spec, &ObjectExpr::word(w.to_vec()));
            let step1 = self.tensor(&id_wx, &braid_inv);
            let id_wp = Morphism::identity(&spec, &ObjectExpr::word(wp.to_vec()));
            let id_dwp = Morphism::identity(&spec, &ObjectExpr::word(dwp));
            let step2 = self.tensor_all(&[&id_wp, &self.ev_r(x), &id_dwp]);
            let prev = self.cap_r(wp)?;
            prev.compose(&step2.compose(&step1)?)?
        };
        Ok(self.cup_store(w, CUP_EP, m))
    }

    /// The conjugate f̄ of a morphism between single words, per the rotation
    /// construction: f̄ = (E_{w_t} ⊗ id)∘(id ⊗ f ⊗ id)∘(id ⊗ R_{w_s}).
    pub fn conjugate(&self, f: &Morphism) -> Result<Morphism> {
        let spec = self.spec.clone();
        if f.source.words.len() != 1 || f.target.words.len() != 1 {
            return Err(Error::Precondition(
                "conjugate requires single-word source and target".into(),
            ));
        }
        let ws = f.source.words[0].clone();
        let wt = f.target.words[0].clone();
        let dws = self.dual_word(&ws);
        let dwt = self.dual_word(&wt);
        let id_dwt = Morphism::identity(&spec, &ObjectExpr::word(dwt));
        let id_dws = Morphism::identity(&spec, &ObjectExpr::word(dws));
        let step1 = self.tensor(&id_dwt, &*self.cup(&ws)?);
        let step2 = self.tensor_all(&[&id_dwt, f, &id_dws]);
        let step3 = self.tensor(&*self.cap(&wt)?, &id_dws);
        step3.compose(&step2.compose(&step1)?)
    }

    /// Pivotal (spherical) trace of an endomorphism: Σ_c d_c · tr(M_c) over
    /// diagonal summand blocks. Valid in the isometry vertex gauge.
    pub fn trace(&self, f: &Morphism) -> Result<C64> {
        if f.source != f.target {
            return Err(Error::Shape("trace of non-endomorphism".into()));
        }
        let spec = &self.spec;
        let mut t = C64::new(0.0, 0.0);
        for (&(ti, si, c), m) in &f.blocks {
            if ti != si {
                continue;
            }
            let d = spec.qdim(c);
            for k in 0..m.nrows().min(m.ncols()) {
                t += m[(k, k)] * d;
            }
        }
        Ok(t)
    }

    /// Diagrammatic left trace of an endomorphism of a single word
    /// (E'_w ∘ (f ⊗ id_{D(w)}) ∘ R_w); used to validate sphericality.
    pub fn trace_left_diagram(&self, f: &Morphism) -> Result<C64> {
        let spec = self.spec.clone();
        let w = f.source.words[0].clone();
        let dw = self.dual_word(&w);
        let id_dw = Morphism::identity(&spec, &ObjectExpr::word(dw));
        let z = self
            .cap_r(&w)?
            .compose(&self.tensor(f, &id_dw).compose(&*self.cup(&w)?)?)?;
        Ok(z.block(0, 0, spec.unit)
            .map(|b| b[(0, 0)])
            .unwrap_or_else(|| C64::new(0.0, 0.0)))
    }

    /// Diagrammatic right trace (E_w ∘ (id ⊗ f) ∘ R'_w).
    pub fn trace_right_diagram(&self, f: &Morphism) -> Result<C64> {
        let spec = self.spec.clone();
        let w = f.source.words[0].clone();
        let dw = self.dual_word(&w);
        let id_dw = Morphism::identity(&spec, &ObjectExpr::word(dw));
        let z = self
            .cap(&w)?
            .compose(&self.tensor(&id_dw, f).compose(&*self.cup_r(&w)?)?)?;
        Ok(z.block(0, 0, spec.unit)
            .map(|b| b[(0, 0)])
            .unwrap_or_else(|| C64::new(0.0, 0.0)))
    }

    /// The trace pairing (f', f) = d_λ^{-1} tr(f'∘f) for f: λ → X,
    /// f': X → λ with λ a single word.
    pub fn pairing(&self, fp: &Morphism, f: &Morphism) -> Result<C64> {
        let d = word_qdim(&self.spec, &f.source.words[0]);
        if d == 0.0 {
            return Err(Error::Precondition("pairing over zero-dimensional object".into()));
        }
        Ok(self.trace(&fp.compose(f)?)? / d)
    }

    /// Dual basis under the trace pairing: given {e_i} ⊂ hom(λ, X), returns
    /// {ẽ_i} ⊂ hom(X, λ) with (ẽ_i, e_j) = δ_ij.
    pub fn dual_basis(&self, basis: &[Morphism]) -> Result<Vec<Morphism>> {
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let spec = &self.spec;
        let src = basis[0].source.clone();
        let tgt = basis[0].target.clone();
        let span = hom_basis(spec, &tgt, &src);
        let n = basis.len();
        let k = span.len();
        let mut g = DMatrix::<C64>::zeros(k, n);
        for (r, b) in span.iter().enumerate() {
            for (c, e) in basis.iter().enumerate() {
                g[(r, c)] = self.pairing(b, e)?;
            }
        }
        // Solve Cᵀ G = I for the coefficient matrix C (n × k).
        let svd = g.clone().svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
        let smin = svd
            .singular_values
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        if smin <= 0.0 || smax / smin > 1e12 {
            return Err(Error::SingularGram(if smin > 0.0 { smax / smin } else { f64::INFINITY }));
        }
        let pinv = svd.pseudo_inverse(1e-13 * smax).map_err(|e| Error::Shape(e.to_string()))?;
        // pinv is n × k with pinv · G = I_n.
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Morphism::zero(tgt.clone(), src.clone());
            for (r, b) in span.iter().enumerate() {
                acc = acc.axpy(pinv[(i, r)], b)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// The G-ribbon twist θ_λ: λ → ^{∂λ}λ.
    pub fn twist(&self, l: usize) -> Result<Morphism> {
        let spec = self.spec.clone();
        let g = spec.grade(l);
        let idl = Morphism::identity(&spec, &ObjectExpr::simple(l));
        let gl = spec.act_label(g, l);
        let id_gl = Morphism::identity(&spec, &ObjectExpr::simple(gl));
        let idld = Morphism::identity(&spec, &ObjectExpr::simple(spec.dual(l)));
        let step1 = self.tensor(&idl, &self.coev(l));
        let braid = self.braid_words(&[l], &[l])?;
        let step2 = self.tensor(&braid, &idld);
        let step3 = self.tensor(&id_gl, &self.ev_r(l));
        step3.compose(&step2.compose(&step1)?)
    }
}
