//! Wreath elements as partial automorphisms of the binary rooted tree, and
//! their action matrices on the leaf level.
//!
//! Vertices at depth `l` are indexed `1..=2^l` lexicographically by their
//! address word: the first letter picks the top branch, so the word
//! `b_1 ... b_l` has index `1 + sum (b_j - 1) 2^(l - j)`.
//!
//! The root is always mapped to itself. The empty wreath element corresponds
//! to the partial automorphism whose domain is the root alone, which keeps the
//! conversion a semigroup homomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::wreath::WreathElement;

/// A vertex of the tree: depth `level` and 1-based `index` within that depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub level: u32,
    pub index: u64,
}

impl VertexId {
    pub const ROOT: VertexId = VertexId { level: 0, index: 1 };

    pub fn parent(self) -> Option<VertexId> {
        (self.level > 0).then(|| VertexId { level: self.level - 1, index: (self.index - 1) / 2 + 1 })
    }

    pub fn children(self) -> [VertexId; 2] {
        let first = 2 * (self.index - 1) + 1;
        [VertexId { level: self.level + 1, index: first }, VertexId { level: self.level + 1, index: first + 1 }]
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}^{}", self.index, self.level)
    }
}

/// Address of a vertex as a word over `{1, 2}`; the empty word is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TreeWord(pub Vec<u8>);

impl TreeWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn word_to_vertex(word: &TreeWord) -> VertexId {
    let index = word.0.iter().fold(0u64, |acc, &b| {
        debug_assert!(b == 1 || b == 2);
        2 * acc + u64::from(b - 1)
    });
    VertexId { level: word.len() as u32, index: index + 1 }
}

pub fn vertex_to_word(v: VertexId) -> TreeWord {
    let offset = v.index - 1;
    TreeWord((0..v.level).rev().map(|shift| ((offset >> shift) & 1) as u8 + 1).collect())
}

/// Explicit vertex map of a partial automorphism of the depth-`depth` tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTreeAutomorphism {
    depth: u32,
    map: BTreeMap<VertexId, VertexId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeInvariantViolation {
    #[error("vertex {0} does not belong to the tree")]
    OutOfTree(VertexId),
    #[error("nonempty domain without the root mapped to the root")]
    RootNotPreserved,
    #[error("{from} is mapped to {to} on a different level")]
    LevelChanged { from: VertexId, to: VertexId },
    #[error("{0} is in the domain but its parent is not")]
    NotPrefixClosed(VertexId),
    #[error("{0} breaks parent consistency")]
    ParentInconsistent(VertexId),
    #[error("{0} is the image of two vertices")]
    NotInjective(VertexId),
}

impl PartialTreeAutomorphism {
    /// Wraps an arbitrary vertex map; see [`PartialTreeAutomorphism::validate`].
    pub fn from_map(depth: u32, map: BTreeMap<VertexId, VertexId>) -> Self {
        PartialTreeAutomorphism { depth, map }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.map
    }

    pub fn image(&self, v: VertexId) -> Option<VertexId> {
        self.map.get(&v).copied()
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    /// Diagrammatic composition: `self` first, then `next`.
    pub fn then(&self, next: &PartialTreeAutomorphism) -> Result<PartialTreeAutomorphism> {
        if self.depth != next.depth {
            return Err(Error::LevelMismatch { left: self.depth, right: next.depth });
        }
        let map = self
            .map
            .iter()
            .filter_map(|(&v, w)| next.image(*w).map(|u| (v, u)))
            .collect();
        Ok(PartialTreeAutomorphism { depth: self.depth, map })
    }

    /// Checks that the map is a root- and level-preserving injective map on a
    /// connected subtree that respects parents.
    pub fn validate(&self) -> std::result::Result<(), TreeInvariantViolation> {
        let in_tree = |v: VertexId| v.level <= self.depth && v.index >= 1 && v.index <= 1u64 << v.level;
        if !self.map.is_empty() && self.image(VertexId::ROOT) != Some(VertexId::ROOT) {
            return Err(TreeInvariantViolation::RootNotPreserved);
        }
        let mut seen = std::collections::HashSet::new();
        for (&v, &w) in &self.map {
            for u in [v, w] {
                if !in_tree(u) {
                    return Err(TreeInvariantViolation::OutOfTree(u));
                }
            }
            if v.level != w.level {
                return Err(TreeInvariantViolation::LevelChanged { from: v, to: w });
            }
            if !seen.insert(w) {
                return Err(TreeInvariantViolation::NotInjective(w));
            }
            if let Some(p) = v.parent() {
                match self.image(p) {
                    None => return Err(TreeInvariantViolation::NotPrefixClosed(v)),
                    Some(pw) if Some(pw) != w.parent() => return Err(TreeInvariantViolation::ParentInconsistent(v)),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Unfolds a wreath element into its vertex map.
pub fn to_tree_automorphism(x: &WreathElement) -> PartialTreeAutomorphism {
    let mut map = BTreeMap::new();
    map.insert(VertexId::ROOT, VertexId::ROOT);
    unfold(x, VertexId::ROOT, VertexId::ROOT, &mut map);
    PartialTreeAutomorphism { depth: x.level(), map }
}

// `from` is already mapped to `to`; extend the map below it according to `x`.
fn unfold(x: &WreathElement, from: VertexId, to: VertexId, map: &mut BTreeMap<VertexId, VertexId>) {
    let sources = from.children();
    let targets = to.children();
    for y in x.top().domain() {
        let image = x.top().apply(y).unwrap();
        let (v, w) = (sources[usize::from(y) - 1], targets[usize::from(image) - 1]);
        map.insert(v, w);
        if let Some(child) = x.child(y) {
            unfold(child, v, w, map);
        }
    }
}

/// Image of leaf `i` (1-based), or `None` when the leaf is outside the domain.
pub fn leaf_action(x: &WreathElement, i: u64) -> Result<Option<u64>> {
    let leaves = 1u64 << x.level();
    if i == 0 || i > leaves {
        return Err(Error::LeafOutOfRange { index: i, max: leaves });
    }
    let mut offset = i - 1;
    let mut image = 0u64;
    let mut node = x;
    for depth in (0..x.level()).rev() {
        let branch = ((offset >> depth) & 1) as u8 + 1;
        let Some(target) = node.top().apply(branch) else { return Ok(None) };
        image |= u64::from(target - 1) << depth;
        offset &= (1u64 << depth) - 1;
        if depth > 0 {
            node = node.child(branch).unwrap();
        }
    }
    Ok(Some(image + 1))
}

/// Leaf action as a vector of 0-based images, `None` for undefined rows.
pub(crate) fn leaf_map(x: &WreathElement) -> Vec<Option<u32>> {
    let mut out = vec![None; 1usize << x.level()];
    fill_leaf_map(x, 0, 0, &mut out);
    out
}

fn fill_leaf_map(x: &WreathElement, src: u32, dst: u32, out: &mut [Option<u32>]) {
    let half = 1u32 << (x.level() - 1);
    for y in x.top().domain() {
        let target = x.top().apply(y).unwrap();
        let (s, d) = (src + u32::from(y - 1) * half, dst + u32::from(target - 1) * half);
        match x.child(y) {
            Some(child) => fill_leaf_map(child, s, d, out),
            None => out[s as usize] = Some(d),
        }
    }
}

/// The leaf action matrix in sparse row form: `rows[i]` is the column of the
/// single 1 in row `i`, if any. Indices here are 0-based; the JSON form and
/// [`ActionMatrix::row`] use 1-based leaf numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionMatrix {
    n: u32,
    rows: Vec<Option<u32>>,
}

impl ActionMatrix {
    pub fn identity(n: u32) -> Self {
        ActionMatrix { n, rows: (0..1u32 << n).map(Some).collect() }
    }

    pub fn zero(n: u32) -> Self {
        ActionMatrix { n, rows: vec![None; 1usize << n] }
    }

    /// Builds a matrix from 1-based row images (`0` = empty row), checking
    /// sizes, ranges and column injectivity.
    pub fn from_rows(n: u32, rows: &[u32]) -> Result<Self> {
        let size = 1usize << n;
        if rows.len() != size {
            return Err(Error::InvalidArgument(format!("expected {size} rows, found {}", rows.len())));
        }
        let mut used = vec![false; size];
        let mut out = Vec::with_capacity(size);
        for (i, &j) in rows.iter().enumerate() {
            if j == 0 {
                out.push(None);
                continue;
            }
            if j as usize > size {
                return Err(Error::InvalidArgument(format!("row {} points to column {j} > {size}", i + 1)));
            }
            if std::mem::replace(&mut used[j as usize - 1], true) {
                return Err(Error::InvalidArgument(format!("column {j} holds two ones")));
            }
            out.push(Some(j - 1));
        }
        Ok(ActionMatrix { n, rows: out })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// 0-based sparse rows.
    pub fn rows(&self) -> &[Option<u32>] {
        &self.rows
    }

    /// Column of the 1 in row `i` (both 1-based).
    pub fn row(&self, i: usize) -> Option<u32> {
        self.rows[i - 1].map(|j| j + 1)
    }

    /// Rows in the serialized convention: 1-based columns, `0` for an empty row.
    pub fn rows_one_based(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.map_or(0, |j| j + 1)).collect()
    }

    pub fn defined_rows(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn is_column_injective(&self) -> bool {
        let mut used = vec![false; self.rows.len()];
        self.rows.iter().flatten().all(|&j| !std::mem::replace(&mut used[j as usize], true))
    }

    /// Row-vector product: row `i` of `self · other` is `other[self[i]]`.
    pub fn multiply(&self, other: &ActionMatrix) -> Result<ActionMatrix> {
        if self.n != other.n {
            return Err(Error::LevelMismatch { left: self.n, right: other.n });
        }
        let rows = self.rows.iter().map(|r| r.and_then(|j| other.rows[j as usize])).collect();
        Ok(ActionMatrix { n: self.n, rows })
    }

    /// `self^k` for `k >= 1`.
    pub fn power(&self, k: u32) -> ActionMatrix {
        assert!(k >= 1);
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.multiply(self).unwrap();
        }
        acc
    }

    pub fn trace(&self) -> u64 {
        self.rows.iter().enumerate().filter(|(i, r)| **r == Some(*i as u32)).count() as u64
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![0u8; self.rows.len()];
                if let Some(j) = r {
                    row[*j as usize] = 1;
                }
                row
            })
            .collect()
    }
}

pub fn action_matrix(x: &WreathElement) -> ActionMatrix {
    ActionMatrix { n: x.level(), rows: leaf_map(x) }
}

pub fn matrix_multiply(a: &ActionMatrix, b: &ActionMatrix) -> Result<ActionMatrix> {
    a.multiply(b)
}

#[derive(Serialize, Deserialize)]
struct SparseJson {
    n: u32,
    rows: Vec<u32>,
}

impl Serialize for ActionMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SparseJson { n: self.n, rows: self.rows_one_based() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ActionMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SparseJson::deserialize(deserializer)?;
        ActionMatrix::from_rows(raw.n, &raw.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_i2::I2Element;
    use crate::wreath::enumerate;

    fn example_one() -> WreathElement {
        WreathElement::from_json_str(r#"{"a":[2,1],"children":{"1":[1,2],"2":[0,0]}}"#, None).unwrap()
    }

    fn v(level: u32, index: u64) -> VertexId {
        VertexId { level, index }
    }

    #[test]
    fn word_index_examples() {
        assert_eq!(word_to_vertex(&TreeWord(vec![1, 1])), v(2, 1));
        assert_eq!(word_to_vertex(&TreeWord(vec![2, 1])), v(2, 3));
        assert_eq!(word_to_vertex(&TreeWord::default()), VertexId::ROOT);
        for level in 0..6 {
            for index in 1..=1u64 << level {
                assert_eq!(word_to_vertex(&vertex_to_word(v(level, index))), v(level, index));
            }
        }
    }

    #[test]
    fn identity_fixes_everything() {
        let t = to_tree_automorphism(&WreathElement::identity(2));
        assert_eq!(t.domain_size(), 7);
        assert!(t.map().iter().all(|(a, b)| a == b));
    }

    #[test]
    fn example_one_vertex_map() {
        let t = to_tree_automorphism(&example_one());
        let expected: BTreeMap<_, _> = [
            (VertexId::ROOT, VertexId::ROOT),
            (v(1, 1), v(1, 2)),
            (v(1, 2), v(1, 1)),
            (v(2, 1), v(2, 3)),
            (v(2, 2), v(2, 4)),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.map(), &expected);
        t.validate().unwrap();
    }

    #[test]
    fn empty_element_maps_only_the_root() {
        let t = to_tree_automorphism(&WreathElement::empty(3));
        assert_eq!(t.domain_size(), 1);
        t.validate().unwrap();
    }

    #[test]
    fn leaf_action_examples() {
        assert_eq!(leaf_action(&WreathElement::identity(3), 5).unwrap(), Some(5));
        assert_eq!(leaf_action(&example_one(), 1).unwrap(), Some(3));
        for i in 1..=4 {
            assert_eq!(leaf_action(&WreathElement::empty(2), i).unwrap(), None);
        }
        assert!(leaf_action(&WreathElement::identity(2), 5).is_err());
        assert!(leaf_action(&WreathElement::identity(2), 0).is_err());
    }

    #[test]
    fn example_one_matrix() {
        let a = action_matrix(&example_one());
        assert_eq!(a.rows_one_based(), vec![3, 4, 0, 0]);
        assert_eq!(
            a.to_dense(),
            vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]
        );
        assert_eq!(a.multiply(&a).unwrap(), ActionMatrix::zero(2));
        assert_eq!(ActionMatrix::identity(2).multiply(&a).unwrap(), a);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"n":2,"rows":[3,4,0,0]}"#);
    }

    #[test]
    fn identity_and_empty_matrices() {
        for n in 1..=5 {
            assert_eq!(action_matrix(&WreathElement::identity(n)), ActionMatrix::identity(n));
            assert_eq!(action_matrix(&WreathElement::empty(n)), ActionMatrix::zero(n));
        }
    }

    #[test]
    fn non_faithful_witness() {
        let x = example_one();
        let y = WreathElement::node(I2Element::new(2, 0).unwrap(), [Some(WreathElement::base(I2Element::IDENTITY)), None])
            .unwrap();
        assert_ne!(x, y);
        assert_eq!(action_matrix(&x), action_matrix(&y));
    }

    #[test]
    fn leaf_action_matches_leaf_map_and_tree_map() {
        for x in enumerate(2).unwrap() {
            let m = action_matrix(&x);
            let t = to_tree_automorphism(&x);
            for i in 1..=4u64 {
                let direct = leaf_action(&x, i).unwrap();
                assert_eq!(direct, m.row(i as usize).map(u64::from));
                assert_eq!(direct, t.image(v(2, i)).map(|w| w.index));
            }
        }
    }

    #[test]
    fn validate_catches_violations() {
        let mut map = BTreeMap::new();
        map.insert(VertexId::ROOT, VertexId::ROOT);
        map.insert(v(2, 1), v(2, 1));
        assert_eq!(
            PartialTreeAutomorphism::from_map(2, map.clone()).validate(),
            Err(TreeInvariantViolation::NotPrefixClosed(v(2, 1)))
        );
        map.insert(v(1, 1), v(1, 2));
        assert_eq!(
            PartialTreeAutomorphism::from_map(2, map.clone()).validate(),
            Err(TreeInvariantViolation::ParentInconsistent(v(2, 1)))
        );
        let mut map = BTreeMap::new();
        map.insert(VertexId::ROOT, VertexId::ROOT);
        map.insert(v(1, 1), v(1, 1));
        map.insert(v(1, 2), v(1, 1));
        assert_eq!(
            PartialTreeAutomorphism::from_map(1, map).validate(),
            Err(TreeInvariantViolation::NotInjective(v(1, 1)))
        );
        let mut map = BTreeMap::new();
        map.insert(v(1, 1), v(1, 1));
        assert_eq!(
            PartialTreeAutomorphism::from_map(1, map).validate(),
            Err(TreeInvariantViolation::RootNotPreserved)
        );
        let mut map = BTreeMap::new();
        map.insert(VertexId::ROOT, v(1, 1));
        assert!(PartialTreeAutomorphism::from_map(1, map).validate().is_err());
    }

    #[test]
    fn from_rows_rejects_bad_input() {
        assert!(ActionMatrix::from_rows(1, &[1, 1]).is_err());
        assert!(ActionMatrix::from_rows(1, &[3, 0]).is_err());
        assert!(ActionMatrix::from_rows(1, &[1]).is_err());
        let m: ActionMatrix = serde_json::from_str(r#"{"n":1,"rows":[2,0]}"#).unwrap();
        assert_eq!(m.row(1), Some(2));
    }
}
