//! Objects as formal direct sums of tensor words of simple labels, and the
//! standard left-combed fusion-tree bases of their hom spaces.

use crate::spec::CategorySpec;

/// A tensor word of simple labels; the empty word is the monoidal unit.
pub type Word = Vec<usize>;

/// A left-combed fusion tree for hom(c, a₁…a_n): the list of pairs
/// (uₖ, mₖ) for k = 2..n, where uₖ is the intermediate simple after fusing
/// the first k letters and mₖ indexes the vertex hom(uₖ, u_{k−1} aₖ).
/// The root c equals u_n (u₁ = a₁); words of length ≤ 1 have the empty tree.
pub type Tree = Vec<(usize, usize)>;

/// A formal direct sum of tensor words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectExpr {
    pub words: Vec<Word>,
}

impl ObjectExpr {
    /// The monoidal unit (a single empty word).
    pub fn unit() -> Self {
        ObjectExpr { words: vec![vec![]] }
    }

    /// A single simple label.
    pub fn simple(a: usize) -> Self {
        ObjectExpr { words: vec![vec![a]] }
    }

    /// A single word.
    pub fn word(w: Word) -> Self {
        ObjectExpr { words: vec![w] }
    }

    /// Direct sum of single-label words.
    pub fn sum_of_simples(labels: &[usize]) -> Self {
        ObjectExpr {
            words: labels.iter().map(|&a| vec![a]).collect(),
        }
    }

    /// The empty object (zero).
    pub fn zero() -> Self {
        ObjectExpr { words: vec![] }
    }

    /// Tensor product: pairwise concatenation, left factor outermost.
    pub fn tensor(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for w in &self.words {
            for v in &other.words {
                let mut u = w.clone();
                u.extend_from_slice(v);
                words.push(u);
            }
        }
        ObjectExpr { words }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        ObjectExpr { words }
    }

    pub fn num_summands(&self) -> usize {
        self.words.len()
    }
}

/// Grade of a word: the ordered product of its letter grades.
pub fn word_grade(spec: &CategorySpec, w: &[usize]) -> usize {
    let mut g = spec.group.e();
    for &a in w {
        g = spec.group.mul(g, spec.grade(a));
    }
    g
}

/// Quantum dimension of a word (product of letter dimensions).
pub fn word_qdim(spec: &CategorySpec, w: &[usize]) -> f64 {
    w.iter().map(|&a| spec.qdim(a)).product()
}

/// Quantum dimension of an object (sum over summands).
pub fn object_qdim(spec: &CategorySpec, obj: &ObjectExpr) -> f64 {
    obj.words.iter().map(|w| word_qdim(spec, w)).sum()
}

/// Applies the action permutation of g to every letter of a word.
pub fn act_word(spec: &CategorySpec, g: usize, w: &[usize]) -> Word {
    w.iter().map(|&a| spec.act_label(g, a)).collect()
}

/// Applies the action permutation of g to every word of an object.
pub fn act_object(spec: &CategorySpec, g: usize, obj: &ObjectExpr) -> ObjectExpr {
    ObjectExpr {
        words: obj.words.iter().map(|w| act_word(spec, g, w)).collect(),
    }
}

/// Enumerates the left-combed fusion trees of hom(c, w) in deterministic
/// lexicographic order (intermediates ascending, multiplicities ascending).
pub fn fusion_trees(spec: &CategorySpec, c: usize, w: &[usize]) -> Vec<Tree> {
    match w.len() {
        0 => {
            if c == spec.unit {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        1 => {
            if c == w[0] {
                vec![vec![]]
            } else {
                vec![]
            }
        }
        _ => {
            // Iteratively extend partial trees letter by letter.
            let mut partial: Vec<(usize, Tree)> = vec![(w[0], vec![])];
            for &a in &w[1..] {
                let mut next = Vec::new();
                for (u_prev, t) in &partial {
                    for u in 0..spec.rank() {
                        for m in 0..spec.nabc(*u_prev, a, u) {
                            let mut t2 = t.clone();
                            t2.push((u, m));
                            next.push((u, t2));
                        }
                    }
                }
                partial = next;
            }
            partial
                .into_iter()
                .filter(|(root, _)| *root == c)
                .map(|(_, t)| t)
                .collect()
        }
    }
}

/// Number of fusion trees of hom(c, w).
pub fn tree_count(spec: &CategorySpec, c: usize, w: &[usize]) -> usize {
    match w.len() {
        0 => usize::from(c == spec.unit),
        1 => usize::from(c == w[0]),
        _ => {
            let mut counts = vec![0usize; spec.rank()];
            counts[w[0]] = 1;
            for &a in &w[1..] {
                let mut next = vec![0usize; spec.rank()];
                for (u_prev, &cnt) in counts.iter().enumerate() {
                    if cnt == 0 {
                        continue;
                    }
                    for u in 0..spec.rank() {
                        next[u] += cnt * spec.nabc(u_prev, a, u);
                    }
                }
                counts = next;
            }
            counts[c]
        }
    }
}

/// Labels c with dim hom(c, w) > 0.
pub fn word_roots(spec: &CategorySpec, w: &[usize]) -> Vec<usize> {
    (0..spec.rank()).filter(|&c| tree_count(spec, c, w) > 0).collect()
}

/// Partitions the summands of an object by their grade.
pub fn decompose_homogeneous(
    spec: &CategorySpec,
    obj: &ObjectExpr,
) -> std::collections::BTreeMap<usize, Vec<usize>> {
    let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, w) in obj.words.iter().enumerate() {
        map.entry(word_grade(spec, w)).or_default().push(i);
    }
    map
}
