//! Morphisms as block tensors of complex coefficients in the standard
//! left-combed fusion-tree basis, with composition and linear algebra.
//!
//! A morphism f: S → T between formal direct sums of words is stored as a
//! sparse map (target summand, source summand, root simple) → complex matrix,
//! the matrix being indexed (target tree, source tree). In the isometry
//! vertex gauge, composition is plain per-root matrix multiplication.

use crate::object::{tree_count, word_grade, ObjectExpr};
use crate::spec::CategorySpec;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use std::collections::BTreeMap;

/// A morphism between two objects.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    /// (target summand, source summand, root) → (target trees × source trees).
    pub blocks: BTreeMap<(usize, usize, usize), DMatrix<C64>>,
}

impl Morphism {
    /// The zero morphism.
    pub fn zero(source: ObjectExpr, target: ObjectExpr) -> Self {
        Morphism {
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    /// The identity on an object.
    pub fn identity(spec: &CategorySpec, obj: &ObjectExpr) -> Self {
        let mut blocks = BTreeMap::new();
        for (i, w) in obj.words.iter().enumerate() {
            for c in 0..spec.rank() {
                let n = tree_count(spec, c, w);
                if n > 0 {
                    blocks.insert((i, i, c), DMatrix::identity(n, n));
                }
            }
        }
        Morphism {
            source: obj.clone(),
            target: obj.clone(),
            blocks,
        }
    }

    /// Inserts a block, checking its shape.
    pub fn set_block(
        &mut self,
        spec: &CategorySpec,
        ti: usize,
        si: usize,
        c: usize,
        m: DMatrix<C64>,
    ) -> Result<()> {
        let rows = tree_count(spec, c, &self.target.words[ti]);
        let cols = tree_count(spec, c, &self.source.words[si]);
        if m.nrows() != rows || m.ncols() != cols {
            return Err(Error::Shape(format!(
                "block ({ti},{si},{c}) is {}x{}, expected {rows}x{cols}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| z.norm_sqr() != 0.0) {
            self.blocks.insert((ti, si, c), m);
        }
        Ok(())
    }

    /// Reference to a block, if present.
    pub fn block(&self, ti: usize, si: usize, c: usize) -> Option<&DMatrix<C64>> {
        self.blocks.get(&(ti, si, c))
    }

    /// Block as a dense matrix (zeros when absent).
    pub fn block_or_zero(&self, spec: &CategorySpec, ti: usize, si: usize, c: usize) -> DMatrix<C64> {
        match self.blocks.get(&(ti, si, c)) {
            Some(m) => m.clone(),
            None => DMatrix::zeros(
                tree_count(spec, c, &self.target.words[ti]),
                tree_count(spec, c, &self.source.words[si]),
            ),
        }
    }

    /// Categorical composite self ∘ other (other applied first).
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.target {
            return Err(Error::Shape("compose: middle objects differ".into()));
        }
        let mut blocks: BTreeMap<(usize, usize, usize), DMatrix<C64>> = BTreeMap::new();
        // Group other's blocks by (source summand, root) for lookup.
        let mut by_mid: BTreeMap<(usize, usize), Vec<(usize, &DMatrix<C64>)>> = BTreeMap::new();
        for (&(mi, si, c), m) in &other.blocks {
            by_mid.entry((mi, c)).or_default().push((si, m));
        }
        for (&(ti, mi, c), f) in &self.blocks {
            if let Some(list) = by_mid.get(&(mi, c)) {
                for &(si, h) in list {
                    let prod = f * h;
                    match blocks.get_mut(&(ti, si, c)) {
                        Some(acc) => *acc += prod,
                        None => {
                            blocks.insert((ti, si, c), prod);
                        }
                    }
                }
            }
        }
        blocks.retain(|_, m| m.iter().any(|z| z.norm_sqr() > 0.0));
        Ok(Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    /// Linear combination self + c · other.
    pub fn axpy(&self, c: C64, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("axpy: shapes differ".into()));
        }
        let mut blocks = self.blocks.clone();
        for (k, m) in &other.blocks {
            match blocks.get_mut(k) {
                Some(acc) => *acc += m * c,
                None => {
                    blocks.insert(*k, m * c);
                }
            }
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.axpy(C64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: C64) -> Morphism {
        let blocks = self.blocks.iter().map(|(k, m)| (*k, m * c)).collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    /// Supremum norm over all block entries.
    pub fn norm(&self) -> f64 {
        self.blocks
            .values()
            .flat_map(|m| m.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Residual ‖self − other‖ in the supremum norm.
    pub fn distance(&self, other: &Morphism) -> f64 {
        match self.sub(other) {
            Ok(d) => d.norm(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Blockwise conjugate transpose (the *-structure of unitary mode).
    pub fn dagger(&self) -> Morphism {
        let blocks = self
            .blocks
            .iter()
            .map(|(&(ti, si, c), m)| ((si, ti, c), m.adjoint()))
            .collect();
        Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        }
    }

    /// Per-root total matrix over (summand, tree) indices; used for global
    /// inversion and rank computations. Returns (matrix, row offsets, col
    /// offsets) for the given root.
    pub fn root_matrix(&self, spec: &CategorySpec, c: usize) -> (DMatrix<C64>, Vec<usize>, Vec<usize>) {
        let row_dims: Vec<usize> = self
            .target
            .words
            .iter()
            .map(|w| tree_count(spec, c, w))
            .collect();
        let col_dims: Vec<usize> = self
            .source
            .words
            .iter()
            .map(|w| tree_count(spec, c, w))
            .collect();
        let mut row_off = vec![0usize];
        for d in &row_dims {
            row_off.push(row_off.last().unwrap() + d);
        }
        let mut col_off = vec![0usize];
        for d in &col_dims {
            col_off.push(col_off.last().unwrap() + d);
        }
        let mut m = DMatrix::zeros(*row_off.last().unwrap(), *col_off.last().unwrap());
        for (&(ti, si, cc), b) in &self.blocks {
            if cc != c {
                continue;
            }
            m.view_mut((row_off[ti], col_off[si]), (b.nrows(), b.ncols()))
                .copy_from(b);
        }
        (m, row_off, col_off)
    }

    /// Rebuilds a morphism from per-root total matrices.
    pub fn from_root_matrices(
        spec: &CategorySpec,
        source: &ObjectExpr,
        target: &ObjectExpr,
        mats: &BTreeMap<usize, DMatrix<C64>>,
    ) -> Morphism {
        let mut out = Morphism::zero(source.clone(), target.clone());
        for (&c, m) in mats {
            let row_dims: Vec<usize> = target.words.iter().map(|w| tree_count(spec, c, w)).collect();
            let col_dims: Vec<usize> = source.words.iter().map(|w| tree_count(spec, c, w)).collect();
            let mut ro = 0;
            for (ti, &rd) in row_dims.iter().enumerate() {
                if rd == 0 {
                    continue;
                }
                let mut co = 0;
                for (si, &cd) in col_dims.iter().enumerate() {
                    if cd == 0 {
                        continue;
                    }
                    let b = m.view((ro, co), (rd, cd)).into_owned();
                    if b.iter().any(|z| z.norm_sqr() > 0.0) {
                        out.blocks.insert((ti, si, c), b);
                    }
                    co += cd;
                }
                ro += rd;
            }
        }
        out
    }

    /// Numeric inverse (requires equal per-root total dimensions).
    pub fn try_inverse(&self, spec: &CategorySpec) -> Result<Morphism> {
        let mut mats = BTreeMap::new();
        for c in 0..spec.rank() {
            let (m, _, _) = self.root_matrix(spec, c);
            if m.nrows() == 0 && m.ncols() == 0 {
                continue;
            }
            if m.nrows() != m.ncols() {
                return Err(Error::Shape(format!(
                    "inverse: root {c} block is {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let inv = m
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Shape(format!("inverse: singular block at root {c}")))?;
            mats.insert(c, inv);
        }
        Ok(Morphism::from_root_matrices(spec, &self.target, &self.source, &mats))
    }

    /// Asserts that blocks between words of different grades vanish.
    pub fn grading_residual(&self, spec: &CategorySpec) -> f64 {
        let mut worst = 0.0f64;
        for (&(ti, si, _), m) in &self.blocks {
            if word_grade(spec, &self.target.words[ti]) != word_grade(spec, &self.source.words[si]) {
                worst = worst.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }
}

/// Deterministic basis of hom(src, tgt): one morphism per (target summand,
/// source summand, root, target tree, source tree) in lexicographic order.
pub fn hom_basis(spec: &CategorySpec, src: &ObjectExpr, tgt: &ObjectExpr) -> Vec<Morphism> {
    let mut out = Vec::new();
    for ti in 0..tgt.words.len() {
        for si in 0..src.words.len() {
            for c in 0..spec.rank() {
                let rows = tree_count(spec, c, &tgt.words[ti]);
                let cols = tree_count(spec, c, &src.words[si]);
                for rr in 0..rows {
                    for cc in 0..cols {
                        let mut m = Morphism::zero(src.clone(), tgt.clone());
                        let mut b = DMatrix::zeros(rows, cols);
                        b[(rr, cc)] = C64::new(1.0, 0.0);
                        m.blocks.insert((ti, si, c), b);
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Expands a morphism in the `hom_basis` coordinates (plain coefficient
/// read-off, since the basis is the standard matrix-unit basis).
pub fn hom_coords(spec: &CategorySpec, f: &Morphism) -> Vec<C64> {
    let mut out = Vec::new();
    for ti in 0..f.target.words.len() {
        for si in 0..f.source.words.len() {
            for c in 0..spec.rank() {
                let rows = tree_count(spec, c, &f.target.words[ti]);
                let cols = tree_count(spec, c, &f.source.words[si]);
                if rows * cols == 0 {
                    continue;
                }
                let b = f.block_or_zero(spec, ti, si, c);
                for rr in 0..rows {
                    for cc in 0..cols {
                        out.push(b[(rr, cc)]);
                    }
                }
            }
        }
    }
    out
}
