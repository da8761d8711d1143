//! Category data model: labels, fusion data, action data, JSON loading.
//!
//! A `CategorySpec` is a skeletal, strict presentation of a split spherical
//! G-braided fusion category: simple labels with duals/grades/dimensions, a
//! fusion multiplicity tensor N, sparse F (associator) and R (G-braiding)
//! coefficient blocks, and a strictly multiplicative pivotal G-action given by
//! a label permutation and vertex-space transport coefficients U.
//!
//! Conventions:
//! - `F[a,b,c,d]` is the change of basis hom(d, (ab)c) → hom(d, a(bc)),
//!   source basis (e, α, β) with α ∈ hom(e, ab), β ∈ hom(d, ec), target basis
//!   (f, μ, ν) with μ ∈ hom(f, bc), ν ∈ hom(d, af).
//! - `R[a,b,c]` is the braiding block hom(c, ab) → hom(c, (^{∂a}b)a).
//! - `U[g,a,b,c]` is the action transport hom(c, ab) → hom(gc, (ga)(gb)).
//! - Blocks in which any of a, b, c is the unit label are identically the
//!   identity (strict unit); stored entries for them are ignored.

use crate::group::GroupTable;
use crate::{C64, Error, Result};
use nalgebra::DMatrix;
use serde::Deserialize;
use std::collections::HashMap;
use std::path::Path;

/// One simple object of the category.
#[derive(Debug, Clone)]
pub struct SimpleLabel {
    /// Display name.
    pub name: String,
    /// Label id of the dual object λ^∨.
    pub dual: usize,
    /// Grade ∂λ as a group element index.
    pub grade: usize,
    /// Quantum dimension d_λ.
    pub qdim: f64,
    /// Pivotal coefficient folding δ_λ: λ ≅ λ^∨∨ into the chosen gauge.
    pub pivotal: C64,
}

/// Validated skeletal presentation of a split spherical G-braided fusion
/// category. Immutable after validation; safe to share across workers.
#[derive(Debug, Clone)]
pub struct CategorySpec {
    pub group: GroupTable,
    pub labels: Vec<SimpleLabel>,
    /// Index of the unit label.
    pub unit: usize,
    /// Dense fusion multiplicities, indexed `a*r*r + b*r + c` for rank r.
    pub n: Vec<u32>,
    /// Sparse F blocks keyed by (a, b, c, d); see module docs for the layout.
    pub f: HashMap<(usize, usize, usize, usize), DMatrix<C64>>,
    /// Sparse R blocks keyed by (a, b, c).
    pub r: HashMap<(usize, usize, usize), DMatrix<C64>>,
    /// Label permutation of the action: `perm[g][λ]` = g·λ.
    pub perm: Vec<Vec<usize>>,
    /// Sparse U blocks keyed by (g, a, b, c); absent blocks are identities.
    pub u: HashMap<(usize, usize, usize, usize), DMatrix<C64>>,
    /// Unitary-mode flag: additionally require all blocks unitary.
    pub unitary_mode: bool,
    /// Residual tolerance for all numeric checks.
    pub tol: f64,
    /// Short human-readable provenance string ("file:..." or a construction).
    pub name: String,
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct JsonGroup {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct JsonLabel {
    name: String,
    dual: usize,
    grade: usize,
    qdim: f64,
    #[serde(default = "one_c")]
    pivotal: [f64; 2],
}

fn one_c() -> [f64; 2] {
    [1.0, 0.0]
}

#[derive(Deserialize, Default)]
struct JsonFusion {
    #[serde(default, rename = "N")]
    n: Vec<(usize, usize, usize, u32)>,
    #[serde(default, rename = "F")]
    f: Vec<(usize, usize, usize, usize, usize, usize, usize, usize, usize, usize, f64, f64)>,
    #[serde(default, rename = "R")]
    r: Vec<(usize, usize, usize, usize, usize, f64, f64)>,
}

#[derive(Deserialize, Default)]
struct JsonAction {
    #[serde(default)]
    perm: Vec<Vec<usize>>,
    #[serde(default, rename = "U")]
    u: Vec<(usize, usize, usize, usize, usize, usize, f64, f64)>,
}

#[derive(Deserialize, Default)]
struct JsonFlags {
    #[serde(default)]
    unitary: bool,
    #[serde(default)]
    tol: Option<f64>,
}

#[derive(Deserialize)]
struct JsonSpec {
    group: JsonGroup,
    labels: Vec<JsonLabel>,
    #[serde(default)]
    fusion: JsonFusion,
    #[serde(default)]
    action: JsonAction,
    #[serde(default)]
    flags: JsonFlags,
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

/// Loads a category spec file without validating it.
pub fn load_spec(path: &Path) -> Result<CategorySpec> {
    let text = std::fs::read_to_string(path)?;
    let raw: JsonSpec = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    spec_from_json(raw, format!("file:{}", path.file_name().unwrap().to_string_lossy()))
}

fn spec_from_json(raw: JsonSpec, name: String) -> Result<CategorySpec> {
    let mut group = GroupTable {
        elements: raw.group.elements,
        mul: raw.group.mul,
        identity: 0,
        inv: vec![],
    };
    group.finalize()?;
    let rank = raw.labels.len();
    let ord = group.order();
    let labels: Vec<SimpleLabel> = raw
        .labels
        .into_iter()
        .map(|l| SimpleLabel {
            name: l.name,
            dual: l.dual,
            grade: l.grade,
            qdim: l.qdim,
            pivotal: C64::new(l.pivotal[0], l.pivotal[1]),
        })
        .collect();
    for (i, l) in labels.iter().enumerate() {
        if l.dual >= rank {
            return Err(Error::Referential(format!("label {i}: dual out of range")));
        }
        if l.grade >= ord {
            return Err(Error::Referential(format!("label {i}: grade out of range")));
        }
    }
    // The unit: grade e, self-dual, qdim 1, and N_{1b}^c = δ (checked later);
    // here we locate the unique candidate by the label invariants.
    let unit_candidates: Vec<usize> = (0..rank)
        .filter(|&i| {
            labels[i].grade == group.identity
                && labels[i].dual == i
                && (labels[i].qdim - 1.0).abs() < 1e-9
        })
        .collect();
    // A category can have several invertible self-dual neutral labels; the
    // unit is the one acting as a two-sided fusion identity. Resolve using N.
    let mut n = vec![0u32; rank * rank * rank];
    let mut seen = std::collections::HashSet::new();
    for &(a, b, c, m) in &raw.fusion.n {
        if a >= rank || b >= rank || c >= rank {
            return Err(Error::Referential(format!("N entry ({a},{b},{c}) out of range")));
        }
        if !seen.insert((a, b, c)) {
            return Err(Error::Referential(format!("duplicate N entry ({a},{b},{c})")));
        }
        n[(a * rank + b) * rank + c] = m;
    }
    let is_fusion_unit = |u: usize, n: &[u32]| -> bool {
        (0..rank).all(|b| {
            (0..rank).all(|c| {
                n[(u * rank + b) * rank + c] == u32::from(b == c)
                    && n[(b * rank + u) * rank + c] == u32::from(b == c)
            })
        })
    };
    let unit = unit_candidates
        .iter()
        .copied()
        .find(|&u| is_fusion_unit(u, &n))
        .ok_or_else(|| Error::Referential("no unit label found".into()))?;
    // Force the unit fusion rules exactly (files may omit them).
    for b in 0..rank {
        n[(unit * rank + b) * rank + b] = 1;
        n[(b * rank + unit) * rank + b] = 1;
    }

    let nn = |a: usize, b: usize, c: usize| n[(a * rank + b) * rank + c] as usize;

    // F blocks: collect sparse entries into dense per-key matrices.
    let mut f: HashMap<(usize, usize, usize, usize), DMatrix<C64>> = HashMap::new();
    for &(a, b, c, d, e, ff, al, be, mu, nu, re, im) in &raw.fusion.f {
        if [a, b, c, d, e, ff].iter().any(|&x| x >= rank) {
            return Err(Error::Referential("F entry label out of range".into()));
        }
        if a == unit || b == unit || c == unit {
            continue; // unit blocks are strict identities
        }
        let src = basis_lr_raw(&n, rank, a, b, c, d);
        let tgt = basis_rl_raw(&n, rank, a, b, c, d);
        let row = tgt
            .iter()
            .position(|&t| t == (ff, mu, nu))
            .ok_or_else(|| Error::Referential(format!("F entry target ({ff},{mu},{nu}) invalid for ({a},{b},{c};{d})")))?;
        let col = src
            .iter()
            .position(|&s| s == (e, al, be))
            .ok_or_else(|| Error::Referential(format!("F entry source ({e},{al},{be}) invalid for ({a},{b},{c};{d})")))?;
        let block = f
            .entry((a, b, c, d))
            .or_insert_with(|| DMatrix::zeros(tgt.len(), src.len()));
        if block[(row, col)] != C64::new(0.0, 0.0) {
            return Err(Error::Referential(format!("duplicate F entry ({a},{b},{c},{d})")));
        }
        block[(row, col)] = C64::new(re, im);
    }

    // R blocks.
    let mut r: HashMap<(usize, usize, usize), DMatrix<C64>> = HashMap::new();
    let perm_raw = if raw.action.perm.is_empty() {
        vec![(0..rank).collect::<Vec<usize>>(); ord]
    } else {
        raw.action.perm.clone()
    };
    if perm_raw.len() != ord || perm_raw.iter().any(|p| p.len() != rank) {
        return Err(Error::Referential("action.perm shape".into()));
    }
    for &(a, b, c, al, be, re, im) in &raw.fusion.r {
        if a >= rank || b >= rank || c >= rank {
            return Err(Error::Referential("R entry label out of range".into()));
        }
        if a == unit || b == unit {
            continue;
        }
        let gb = perm_raw[labels[a].grade][b];
        let rows = nn(gb, a, c);
        let cols = nn(a, b, c);
        let block = r
            .entry((a, b, c))
            .or_insert_with(|| DMatrix::zeros(rows, cols));
        if al >= rows || be >= cols {
            return Err(Error::Referential(format!("R entry index out of range for ({a},{b},{c})")));
        }
        block[(al, be)] = C64::new(re, im);
    }

    // U blocks.
    let mut u: HashMap<(usize, usize, usize, usize), DMatrix<C64>> = HashMap::new();
    for &(g, a, b, c, al, be, re, im) in &raw.action.u {
        if g >= ord || a >= rank || b >= rank || c >= rank {
            return Err(Error::Referential("U entry out of range".into()));
        }
        let (ga, gb, gc) = (perm_raw[g][a], perm_raw[g][b], perm_raw[g][c]);
        let rows = nn(ga, gb, gc);
        let cols = nn(a, b, c);
        let block = u
            .entry((g, a, b, c))
            .or_insert_with(|| DMatrix::zeros(rows, cols));
        if al >= rows || be >= cols {
            return Err(Error::Referential("U entry index out of range".into()));
        }
        block[(al, be)] = C64::new(re, im);
    }

    Ok(CategorySpec {
        group,
        labels,
        unit,
        n,
        f,
        r,
        perm: perm_raw,
        u,
        unitary_mode: raw.flags.unitary,
        tol: raw.flags.tol.unwrap_or(1e-9),
        name,
    })
}

pub(crate) fn basis_lr_raw(n: &[u32], rank: usize, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
    let nn = |x: usize, y: usize, z: usize| n[(x * rank + y) * rank + z] as usize;
    let mut v = Vec::new();
    for e in 0..rank {
        for al in 0..nn(a, b, e) {
            for be in 0..nn(e, c, d) {
                v.push((e, al, be));
            }
        }
    }
    v
}

pub(crate) fn basis_rl_raw(n: &[u32], rank: usize, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
    let nn = |x: usize, y: usize, z: usize| n[(x * rank + y) * rank + z] as usize;
    let mut v = Vec::new();
    for f in 0..rank {
        for mu in 0..nn(b, c, f) {
            for nu in 0..nn(a, f, d) {
                v.push((f, mu, nu));
            }
        }
    }
    v
}

// ---------------------------------------------------------------------------
// Accessors
// ---------------------------------------------------------------------------

impl CategorySpec {
    /// Number of simple labels.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Fusion multiplicity N_{ab}^c = dim hom(c, ab).
    pub fn nabc(&self, a: usize, b: usize, c: usize) -> usize {
        self.n[(a * self.rank() + b) * self.rank() + c] as usize
    }

    /// Grade of a label.
    pub fn grade(&self, a: usize) -> usize {
        self.labels[a].grade
    }

    /// Dual of a label.
    pub fn dual(&self, a: usize) -> usize {
        self.labels[a].dual
    }

    /// Quantum dimension of a label.
    pub fn qdim(&self, a: usize) -> f64 {
        self.labels[a].qdim
    }

    /// Action of g on a label.
    pub fn act_label(&self, g: usize, a: usize) -> usize {
        self.perm[g][a]
    }

    /// Deterministic basis of hom(d, (ab)c): triples (e, α, β).
    pub fn basis_lr(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
        basis_lr_raw(&self.n, self.rank(), a, b, c, d)
    }

    /// Deterministic basis of hom(d, a(bc)): triples (f, μ, ν).
    pub fn basis_rl(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<(usize, usize, usize)> {
        basis_rl_raw(&self.n, self.rank(), a, b, c, d)
    }

    /// Dense F block hom(d, (ab)c) → hom(d, a(bc)). Unit-involving blocks
    /// are strict identities; otherwise absent blocks are zero.
    pub fn f_matrix(&self, a: usize, b: usize, c: usize, d: usize) -> DMatrix<C64> {
        let rows = self.basis_rl(a, b, c, d).len();
        let cols = self.basis_lr(a, b, c, d).len();
        if a == self.unit || b == self.unit || c == self.unit {
            debug_assert_eq!(rows, cols);
            return DMatrix::identity(rows, cols);
        }
        match self.f.get(&(a, b, c, d)) {
            Some(m) => m.clone(),
            None => DMatrix::zeros(rows, cols),
        }
    }

    /// Dense R block hom(c, ab) → hom(c, (^{∂a}b)a). Unit-involving blocks
    /// are identities; otherwise absent blocks are zero.
    pub fn r_matrix(&self, a: usize, b: usize, c: usize) -> DMatrix<C64> {
        let gb = self.act_label(self.grade(a), b);
        let rows = self.nabc(gb, a, c);
        let cols = self.nabc(a, b, c);
        if a == self.unit || b == self.unit {
            debug_assert_eq!(rows, cols);
            return DMatrix::identity(rows, cols);
        }
        match self.r.get(&(a, b, c)) {
            Some(m) => m.clone(),
            None => DMatrix::zeros(rows, cols),
        }
    }

    /// Dense U block hom(c, ab) → hom(gc, (ga)(gb)). Absent blocks and the
    /// identity element are identities.
    pub fn u_matrix(&self, g: usize, a: usize, b: usize, c: usize) -> DMatrix<C64> {
        let (ga, gb, gc) = (
            self.act_label(g, a),
            self.act_label(g, b),
            self.act_label(g, c),
        );
        let rows = self.nabc(ga, gb, gc);
        let cols = self.nabc(a, b, c);
        if g == self.group.e() {
            return DMatrix::identity(rows, cols);
        }
        match self.u.get(&(g, a, b, c)) {
            Some(m) => m.clone(),
            None => {
                debug_assert_eq!(rows, cols);
                DMatrix::identity(rows, cols)
            }
        }
    }

    /// Global dimension Σ d_λ².
    pub fn global_dim(&self) -> f64 {
        self.labels.iter().map(|l| l.qdim * l.qdim).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reject_missing_unit() {
        let raw = r#"{
          "group": {"elements": ["e"], "mul": [[0]]},
          "labels": [{"name": "x", "dual": 0, "grade": 0, "qdim": 2.0}]
        }"#;
        let parsed: JsonSpec = serde_json::from_str(raw).unwrap();
        assert!(spec_from_json(parsed, "t".into()).is_err());
    }

    #[test]
    fn minimal_trivial_category() {
        let raw = r#"{
          "group": {"elements": ["e"], "mul": [[0]]},
          "labels": [{"name": "1", "dual": 0, "grade": 0, "qdim": 1.0}],
          "fusion": {"N": [[0,0,0,1]]}
        }"#;
        let parsed: JsonSpec = serde_json::from_str(raw).unwrap();
        let spec = spec_from_json(parsed, "t".into()).unwrap();
        assert_eq!(spec.rank(), 1);
        assert_eq!(spec.unit, 0);
        assert_eq!(spec.nabc(0, 0, 0), 1);
        assert_eq!(spec.global_dim(), 1.0);
    }
}
