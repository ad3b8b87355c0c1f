//! The specialization families of integer posets and their classical
//! combinatorial avatars: permutations and weak order intervals, ordered
//! partitions, binary trees and Tamari intervals, Schröder trees.
//!
//! Each family has a local recognizer on relations ([`is_in_family`]), a
//! constructive map from the classical object, and an enumeration that can run
//! either by filtering all of `IRel_n` or by generating from the classical
//! objects. The two routes must agree and are compared in the verification
//! suites.

use crate::error::Error;
use crate::relation::{enumerate_relations, enumeration_limit, IntegerRelation};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

/// Size cap for constructive family enumeration.
pub const CONSTRUCT_LIMIT: usize = 8;

/// The recognized poset families, plus the two ambient carriers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    IRel,
    IPos,
    Woep,
    Iwoip,
    Dwoip,
    Woip,
    Wofp,
    Toep,
    Toip,
    Tofp,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 10] = [
        FamilyTag::IRel,
        FamilyTag::IPos,
        FamilyTag::Woep,
        FamilyTag::Iwoip,
        FamilyTag::Dwoip,
        FamilyTag::Woip,
        FamilyTag::Wofp,
        FamilyTag::Toep,
        FamilyTag::Toip,
        FamilyTag::Tofp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::IRel => "IRel",
            FamilyTag::IPos => "IPos",
            FamilyTag::Woep => "WOEP",
            FamilyTag::Iwoip => "IWOIP",
            FamilyTag::Dwoip => "DWOIP",
            FamilyTag::Woip => "WOIP",
            FamilyTag::Wofp => "WOFP",
            FamilyTag::Toep => "TOEP",
            FamilyTag::Toip => "TOIP",
            FamilyTag::Tofp => "TOFP",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyTag> {
        FamilyTag::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates the local characterization of the family on `p`. Non-posets
/// simply fail every family except `IRel`.
pub fn is_in_family(p: &IntegerRelation, family: FamilyTag) -> bool {
    if family == FamilyTag::IRel {
        return true;
    }
    if !p.is_poset() {
        return false;
    }
    let n = p.size();
    let rel = |u: usize, v: usize| p.contains(u, v) && u != v;
    match family {
        FamilyTag::IRel => unreachable!(),
        FamilyTag::IPos => true,
        FamilyTag::Woep => (1..=n).all(|a| (a + 1..=n).all(|b| rel(a, b) || rel(b, a))),
        FamilyTag::Iwoip => for_triples(n, |a, b, c| !rel(a, c) || rel(a, b) || rel(b, c)),
        FamilyTag::Dwoip => for_triples(n, |a, b, c| !rel(c, a) || rel(b, a) || rel(c, b)),
        FamilyTag::Woip => is_in_family(p, FamilyTag::Iwoip) && is_in_family(p, FamilyTag::Dwoip),
        FamilyTag::Wofp => {
            is_in_family(p, FamilyTag::Woip)
                && for_triples(n, |a, b, c| {
                    if rel(a, c) || rel(c, a) {
                        return true;
                    }
                    (rel(a, b) == rel(c, b)) && (rel(b, a) == rel(b, c))
                })
        }
        FamilyTag::Toip => for_triples(n, |a, b, c| {
            (!rel(a, c) || rel(b, c)) && (!rel(c, a) || rel(b, a))
        }),
        FamilyTag::Toep => {
            is_in_family(p, FamilyTag::Toip)
                && incomparable_pairs(p)
                    .into_iter()
                    .all(|(a, c)| (a + 1..c).any(|b| rel(a, b) && rel(c, b)))
        }
        FamilyTag::Tofp => {
            is_in_family(p, FamilyTag::Toip)
                && incomparable_pairs(p).into_iter().all(|(a, c)| {
                    (a + 1..c).any(|b| !rel(b, a) && !rel(b, c))
                        || (a + 1..c).all(|b| rel(b, a) && rel(b, c))
                })
        }
    }
}

fn for_triples(n: usize, mut pred: impl FnMut(usize, usize, usize) -> bool) -> bool {
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if !pred(a, b, c) {
                    return false;
                }
            }
        }
    }
    true
}

fn incomparable_pairs(p: &IntegerRelation) -> Vec<(usize, usize)> {
    let n = p.size();
    let mut out = Vec::new();
    for a in 1..=n {
        for c in a + 1..=n {
            if !p.contains(a, c) && !p.contains(c, a) {
                out.push((a, c));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A permutation of `[n]` given by its one-line word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, Error> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    /// Parses digit strings like `"2751346"` (sizes up to 9).
    pub fn from_digits(s: &str) -> Result<Self, Error> {
        let word = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?;
        Permutation::new(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `positions[v]` is the 1-based position of value `v`.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n() + 1];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    /// Inversions as value pairs `(a, b)` with `a < b` appearing reversed.
    pub fn inversion_set(&self) -> BTreeSet<(usize, usize)> {
        let pos = self.positions();
        let mut inv = BTreeSet::new();
        for a in 1..=self.n() {
            for b in a + 1..=self.n() {
                if pos[a] > pos[b] {
                    inv.insert((a, b));
                }
            }
        }
        inv
    }

    /// Weak order on permutations: inclusion of inversion sets.
    pub fn weak_le(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n());
        self.inversion_set().is_subset(&other.inversion_set())
    }

    pub fn enumerate(n: usize) -> Vec<Permutation> {
        let mut acc = vec![vec![]];
        for v in 1..=n {
            let mut next = Vec::new();
            for w in &acc {
                for i in 0..=w.len() {
                    let mut w2 = w.clone();
                    w2.insert(i, v);
                    next.push(w2);
                }
            }
            acc = next;
        }
        let mut out: Vec<Permutation> = acc.into_iter().map(|word| Permutation { word }).collect();
        out.sort();
        out
    }

    /// Classical shifted shuffle: interleavings of `self` with `other`
    /// shifted by `self.n()`.
    pub fn shifted_shuffle(&self, other: &Permutation) -> Vec<Permutation> {
        let (m, n) = (self.n(), other.n());
        let mut out = Vec::new();
        for mask in crate::relation::subsets_of_size(m + n, m) {
            let mut word = vec![0; m + n];
            let mut i = 0;
            let mut j = 0;
            for k in 0..m + n {
                if mask & (1 << k) != 0 {
                    word[k] = self.word[i];
                    i += 1;
                } else {
                    word[k] = other.word[j] + m;
                    j += 1;
                }
            }
            out.push(Permutation { word });
        }
        out
    }

    /// Classical convolution: words whose first `m` positions pattern to
    /// `self` and last `n` positions pattern to `other`.
    pub fn convolution(&self, other: &Permutation) -> Vec<Permutation> {
        let (m, n) = (self.n(), other.n());
        let mut out = Vec::new();
        for mask in crate::relation::subsets_of_size(m + n, m) {
            let first: Vec<usize> = (1..=m + n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
            let rest: Vec<usize> = (1..=m + n).filter(|v| mask & (1 << (v - 1)) == 0).collect();
            let mut word = Vec::with_capacity(m + n);
            word.extend(self.word.iter().map(|&i| first[i - 1]));
            word.extend(other.word.iter().map(|&i| rest[i - 1]));
            out.push(Permutation { word });
        }
        out
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.word {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Ordered partitions
// ---------------------------------------------------------------------------

/// An ordered partition of `[n]` into nonempty blocks; elements are kept
/// sorted inside each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidOrderedPartition(format!("{blocks:?}")));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v < 1 || !seen.insert(v) {
                    return Err(Error::InvalidOrderedPartition(format!("{blocks:?}")));
                }
                count += 1;
            }
        }
        if seen.last().copied().unwrap_or(0) != count {
            return Err(Error::InvalidOrderedPartition(format!("{blocks:?}")));
        }
        Ok(OrderedPartition { blocks })
    }

    /// Parses bar-separated digit blocks like `"125|37|46"`.
    pub fn from_digits(s: &str) -> Result<Self, Error> {
        let blocks = s
            .split('|')
            .map(|part| {
                part.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidOrderedPartition(s.to_string()))?;
        OrderedPartition::new(blocks)
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// 1-based block index of each value.
    fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n() + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                idx[v] = i + 1;
            }
        }
        idx
    }

    pub fn enumerate(n: usize) -> Vec<OrderedPartition> {
        fn go(remaining: &[usize]) -> Vec<Vec<Vec<usize>>> {
            if remaining.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            let k = remaining.len();
            for mask in 1u64..(1 << k) {
                let block: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| remaining[i])
                    .collect();
                let rest: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) == 0)
                    .map(|i| remaining[i])
                    .collect();
                for mut tail in go(&rest) {
                    tail.insert(0, block.clone());
                    out.push(tail);
                }
            }
            out
        }
        let ground: Vec<usize> = (1..=n).collect();
        let mut out: Vec<OrderedPartition> = go(&ground)
            .into_iter()
            .map(|blocks| OrderedPartition { blocks })
            .collect();
        out.sort();
        out
    }

    /// Relative order induced on a value subset, standardized to an ordered
    /// partition of `[|values|]`.
    pub fn induced(&self, values: &[usize]) -> OrderedPartition {
        let set: BTreeSet<usize> = values.iter().copied().collect();
        let rank: BTreeMap<usize, usize> =
            set.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|v| set.contains(v))
                    .map(|v| rank[v])
                    .collect::<Vec<_>>()
            })
            .filter(|b: &Vec<usize>| !b.is_empty())
            .collect();
        OrderedPartition { blocks }
    }

    /// Shifted shuffle on ordered partitions, with block merging: the ordered
    /// partitions whose induced order on the low values is `self` and on the
    /// shifted values is `other`.
    pub fn shifted_shuffle(&self, other: &OrderedPartition) -> Vec<OrderedPartition> {
        let (m, n) = (self.n(), other.n());
        let low: Vec<usize> = (1..=m).collect();
        let high: Vec<usize> = (m + 1..=m + n).collect();
        OrderedPartition::enumerate(m + n)
            .into_iter()
            .filter(|t| &t.induced(&low) == self && &t.induced(&high) == other)
            .collect()
    }

    /// Convolution on ordered partitions: block sequences concatenate, the
    /// left factor taking an arbitrary value subset.
    pub fn convolution(&self, other: &OrderedPartition) -> Vec<OrderedPartition> {
        let (m, n) = (self.n(), other.n());
        let mut out = Vec::new();
        for mask in crate::relation::subsets_of_size(m + n, m) {
            let first: Vec<usize> = (1..=m + n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
            let rest: Vec<usize> = (1..=m + n).filter(|v| mask & (1 << (v - 1)) == 0).collect();
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for b in &self.blocks {
                blocks.push(b.iter().map(|&i| first[i - 1]).collect());
            }
            for b in &other.blocks {
                blocks.push(b.iter().map(|&i| rest[i - 1]).collect());
            }
            out.push(OrderedPartition { blocks });
        }
        out
    }
}

impl std::fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

// ---------------------------------------------------------------------------
// Binary trees
// ---------------------------------------------------------------------------

/// A planar binary tree; vertices are labeled in inorder when interpreted as
/// a poset, which makes every tree a binary search tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of internal vertices.
    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// All binary trees with `n` internal vertices.
    pub fn enumerate(n: usize) -> Vec<BinaryTree> {
        if n == 0 {
            return vec![BinaryTree::Leaf];
        }
        let mut out = Vec::new();
        for left_size in 0..n {
            for l in BinaryTree::enumerate(left_size) {
                for r in BinaryTree::enumerate(n - 1 - left_size) {
                    out.push(BinaryTree::node(l.clone(), r));
                }
            }
        }
        out
    }

    /// Every tree one right rotation above this one in the Tamari order.
    pub fn right_rotations(&self) -> Vec<BinaryTree> {
        let mut out = Vec::new();
        if let BinaryTree::Node(l, r) = self {
            if let BinaryTree::Node(a, b) = &**l {
                out.push(BinaryTree::node(
                    (**a).clone(),
                    BinaryTree::node((**b).clone(), (**r).clone()),
                ));
            }
            for l2 in l.right_rotations() {
                out.push(BinaryTree::node(l2, (**r).clone()));
            }
            for r2 in r.right_rotations() {
                out.push(BinaryTree::node((**l).clone(), r2));
            }
        }
        out
    }

    /// The all-left path; its element poset is the increasing chain.
    pub fn left_comb(n: usize) -> BinaryTree {
        (0..n).fold(BinaryTree::Leaf, |acc, _| {
            BinaryTree::node(acc, BinaryTree::Leaf)
        })
    }

    /// The all-right path; its element poset is the decreasing chain.
    pub fn right_comb(n: usize) -> BinaryTree {
        (0..n).fold(BinaryTree::Leaf, |acc, _| {
            BinaryTree::node(BinaryTree::Leaf, acc)
        })
    }
}

// ---------------------------------------------------------------------------
// Schröder trees
// ---------------------------------------------------------------------------

/// A Schröder tree: every internal node has at least two children. The poset
/// interpretation labels the angles between consecutive children in inorder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchroderTree {
    Leaf,
    Node(Vec<SchroderTree>),
}

impl SchroderTree {
    pub fn node(children: Vec<SchroderTree>) -> Result<Self, Error> {
        if children.len() < 2 {
            return Err(Error::Input(
                "a Schröder tree node needs at least two children".into(),
            ));
        }
        Ok(SchroderTree::Node(children))
    }

    /// Number of angles, which is the size of the associated poset.
    pub fn angles(&self) -> usize {
        match self {
            SchroderTree::Leaf => 0,
            SchroderTree::Node(cs) => cs.len() - 1 + cs.iter().map(|c| c.angles()).sum::<usize>(),
        }
    }

    /// The corolla: one node, `n + 1` leaves, antichain poset.
    pub fn corolla(n: usize) -> SchroderTree {
        SchroderTree::Node(vec![SchroderTree::Leaf; n + 1])
    }

    /// All Schröder trees with `n` angles.
    pub fn enumerate(n: usize) -> Vec<SchroderTree> {
        if n == 0 {
            return vec![SchroderTree::Leaf];
        }
        let mut out = Vec::new();
        for arity in 2..=n + 1 {
            let spare = n + 1 - arity;
            for children in distribute(spare, arity) {
                out.push(SchroderTree::Node(children));
            }
        }
        out
    }
}

/// All ways to pick `k` child subtrees whose angle counts sum to `total`.
fn distribute(total: usize, k: usize) -> Vec<Vec<SchroderTree>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for c in SchroderTree::enumerate(first) {
            for mut rest in distribute(total - first, k - 1) {
                rest.insert(0, c.clone());
                out.push(rest);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Maps into integer posets
// ---------------------------------------------------------------------------

/// The chain `σ(1) ≺ σ(2) ≺ ... ≺ σ(n)` as an integer poset.
pub fn from_permutation(sigma: &Permutation) -> IntegerRelation {
    let n = sigma.n();
    let pos = sigma.positions();
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && pos[u] < pos[v] {
                pairs.push((u, v));
            }
        }
    }
    IntegerRelation::from_pairs(n, &pairs).expect("chain poset is in range")
}

/// Reads a total order back as a permutation word.
pub fn to_permutation(p: &IntegerRelation) -> Result<Permutation, Error> {
    if !is_in_family(p, FamilyTag::Woep) {
        return Err(Error::NotInFamily("WOEP"));
    }
    let n = p.size();
    let mut word = vec![0; n];
    for v in 1..=n {
        let below = (1..=n).filter(|&u| u != v && p.contains(u, v)).count();
        word[below] = v;
    }
    Permutation::new(word)
}

/// The weak order interval poset `Inc ≺(σ') ∪ Dec ≺(σ)`; requires `σ ⩽ σ'`.
pub fn from_interval(
    sigma: &Permutation,
    sigma_up: &Permutation,
) -> Result<IntegerRelation, Error> {
    if sigma.n() != sigma_up.n() {
        return Err(Error::SizeMismatch(sigma.n(), sigma_up.n()));
    }
    if !sigma.weak_le(sigma_up) {
        return Err(Error::NotWeakOrderComparable);
    }
    let lo = from_permutation(sigma);
    let hi = from_permutation(sigma_up);
    let mut pairs = hi.inc().pairs();
    pairs.extend(lo.dec().pairs());
    IntegerRelation::from_pairs(sigma.n(), &pairs)
}

/// The face poset of an ordered partition: `u ≺ v` iff the block of `u` comes
/// strictly before the block of `v`.
pub fn from_ordered_partition(pi: &OrderedPartition) -> IntegerRelation {
    let n = pi.n();
    let idx = pi.block_index();
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && idx[u] < idx[v] {
                pairs.push((u, v));
            }
        }
    }
    IntegerRelation::from_pairs(n, &pairs).expect("face poset is in range")
}

fn tree_poset_pairs(t: &BinaryTree, lo: usize, pairs: &mut Vec<(usize, usize)>) {
    if let BinaryTree::Node(l, r) = t {
        let root = lo + l.size();
        for u in lo..lo + t.size() {
            if u != root {
                pairs.push((u, root));
            }
        }
        tree_poset_pairs(l, lo, pairs);
        tree_poset_pairs(r, root + 1, pairs);
    }
}

/// The element poset of a binary tree: `i ≺ j` iff `i` is a descendant of
/// `j`, vertices labeled in inorder.
pub fn from_binary_tree(t: &BinaryTree) -> IntegerRelation {
    let n = t.size();
    let mut pairs = Vec::new();
    tree_poset_pairs(t, 1, &mut pairs);
    IntegerRelation::from_pairs(n, &pairs).expect("tree poset is in range")
}

fn rebuild_tree(p: &IntegerRelation, lo: usize, hi: usize) -> Result<BinaryTree, Error> {
    if lo > hi {
        return Ok(BinaryTree::Leaf);
    }
    let root = (lo..=hi)
        .find(|&v| (lo..=hi).all(|u| u == v || p.contains(u, v)))
        .ok_or(Error::NotInFamily("TOEP"))?;
    Ok(BinaryTree::node(
        rebuild_tree(p, lo, root.wrapping_sub(1))?,
        rebuild_tree(p, root + 1, hi)?,
    ))
}

/// Reads a Tamari element poset back as a binary tree.
pub fn to_binary_tree(p: &IntegerRelation) -> Result<BinaryTree, Error> {
    if !is_in_family(p, FamilyTag::Toep) {
        return Err(Error::NotInFamily("TOEP"));
    }
    rebuild_tree(p, 1, p.size())
}

/// The Tamari interval poset `Inc ≺(t') ∪ Dec ≺(t)`; requires `t ⩽ t'` in the
/// Tamari order.
pub fn from_tree_interval(t: &BinaryTree, t_up: &BinaryTree) -> Result<IntegerRelation, Error> {
    if t.size() != t_up.size() {
        return Err(Error::SizeMismatch(t.size(), t_up.size()));
    }
    if !tamari_le(t, t_up) {
        return Err(Error::NotTamariComparable);
    }
    let lo = from_binary_tree(t);
    let hi = from_binary_tree(t_up);
    let mut pairs = hi.inc().pairs();
    pairs.extend(lo.dec().pairs());
    IntegerRelation::from_pairs(t.size(), &pairs)
}

/// The face poset of a Schröder tree: angle `i` is below angle `j` iff it
/// lies in one of the two children adjacent to `j`.
pub fn from_schroder_tree(t: &SchroderTree) -> IntegerRelation {
    fn walk(t: &SchroderTree, next: &mut usize, pairs: &mut Vec<(usize, usize)>) -> Vec<usize> {
        match t {
            SchroderTree::Leaf => vec![],
            SchroderTree::Node(children) => {
                let mut sub_labels: Vec<Vec<usize>> = Vec::with_capacity(children.len());
                let mut own: Vec<usize> = Vec::new();
                let mut all = Vec::new();
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        let label = *next;
                        *next += 1;
                        own.push(label);
                        all.push(label);
                    }
                    let sub = walk(c, next, pairs);
                    all.extend(sub.iter().copied());
                    sub_labels.push(sub);
                }
                for (k, &angle) in own.iter().enumerate() {
                    for &i in sub_labels[k].iter().chain(&sub_labels[k + 1]) {
                        pairs.push((i, angle));
                    }
                }
                all
            }
        }
    }
    let n = t.angles();
    let mut pairs = Vec::new();
    let mut next = 1;
    walk(t, &mut next, &mut pairs);
    IntegerRelation::from_pairs(n, &pairs).expect("schröder poset is in range")
}

/// The weak order maximal linear extension of an `IWOIP` poset: all
/// incomparable pairs are oriented decreasingly.
pub fn maxle(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    if !is_in_family(p, FamilyTag::Iwoip) {
        return Err(Error::NotInFamily("IWOIP"));
    }
    let mut pairs = p.pairs();
    pairs.extend(incomparable_pairs(p).into_iter().map(|(a, b)| (b, a)));
    IntegerRelation::from_pairs(p.size(), &pairs)
}

/// The weak order minimal linear extension of a `DWOIP` poset: all
/// incomparable pairs are oriented increasingly.
pub fn minle(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    if !is_in_family(p, FamilyTag::Dwoip) {
        return Err(Error::NotInFamily("DWOIP"));
    }
    let mut pairs = p.pairs();
    pairs.extend(incomparable_pairs(p));
    IntegerRelation::from_pairs(p.size(), &pairs)
}

// ---------------------------------------------------------------------------
// Tamari order, memoized by size
// ---------------------------------------------------------------------------

/// The Tamari order on binary trees of one size, with covers given by right
/// rotations and reachability precomputed.
pub struct TamariOrder {
    trees: Vec<BinaryTree>,
    index: HashMap<BinaryTree, usize>,
    covers: Vec<Vec<usize>>,
    le: Vec<Vec<bool>>,
}

impl TamariOrder {
    fn build(n: usize) -> TamariOrder {
        let trees = BinaryTree::enumerate(n);
        let index: HashMap<BinaryTree, usize> = trees
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let covers: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| t.right_rotations().into_iter().map(|u| index[&u]).collect())
            .collect();
        let k = trees.len();
        let mut le = vec![vec![false; k]; k];
        for start in 0..k {
            // BFS upward through rotations
            let mut stack = vec![start];
            le[start][start] = true;
            while let Some(cur) = stack.pop() {
                for &next in &covers[cur] {
                    if !le[start][next] {
                        le[start][next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        TamariOrder {
            trees,
            index,
            covers,
            le,
        }
    }

    pub fn trees(&self) -> &[BinaryTree] {
        &self.trees
    }

    pub fn le(&self, a: &BinaryTree, b: &BinaryTree) -> bool {
        self.le[self.index[a]][self.index[b]]
    }

    pub fn covers_of(&self, t: &BinaryTree) -> Vec<BinaryTree> {
        self.covers[self.index[t]]
            .iter()
            .map(|&i| self.trees[i].clone())
            .collect()
    }

    /// All ordered pairs `(t, t')` with `t ⩽ t'`.
    pub fn interval_pairs(&self) -> Vec<(BinaryTree, BinaryTree)> {
        let mut out = Vec::new();
        for (i, a) in self.trees.iter().enumerate() {
            for (j, b) in self.trees.iter().enumerate() {
                if self.le[i][j] {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }
}

fn tamari_cache() -> &'static RwLock<HashMap<usize, Arc<TamariOrder>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<TamariOrder>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The memoized Tamari order on trees with `n` vertices (`n ⩽ 8`).
pub fn tamari_order(n: usize) -> Arc<TamariOrder> {
    assert!(
        n <= CONSTRUCT_LIMIT,
        "Tamari order is memoized only up to size {CONSTRUCT_LIMIT}"
    );
    if let Some(hit) = tamari_cache()
        .read()
        .expect("tamari cache poisoned")
        .get(&n)
    {
        return hit.clone();
    }
    let built = Arc::new(TamariOrder::build(n));
    let mut cache = tamari_cache().write().expect("tamari cache poisoned");
    cache.entry(n).or_insert(built).clone()
}

/// Tamari comparison through the memoized rotation closure.
pub fn tamari_le(a: &BinaryTree, b: &BinaryTree) -> bool {
    assert_eq!(a.size(), b.size());
    tamari_order(a.size()).le(a, b)
}

// ---------------------------------------------------------------------------
// Family enumeration
// ---------------------------------------------------------------------------

/// How to enumerate a family.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Scan all of `IRel_n` through the recognizer.
    Filter,
    /// Generate from the classical combinatorial objects.
    Construct,
}

fn posets_cache() -> &'static RwLock<HashMap<usize, Arc<Vec<IntegerRelation>>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<IntegerRelation>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All integer posets on `[n]`, memoized. Subject to the enumeration limit.
pub fn all_posets(n: usize) -> Result<Arc<Vec<IntegerRelation>>, Error> {
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    if let Some(hit) = posets_cache().read().expect("poset cache poisoned").get(&n) {
        return Ok(hit.clone());
    }
    let built: Arc<Vec<IntegerRelation>> =
        Arc::new(enumerate_relations(n).filter(|r| r.is_poset()).collect());
    let mut cache = posets_cache().write().expect("poset cache poisoned");
    Ok(cache.entry(n).or_insert(built).clone())
}

/// Enumerates a family, sorted canonically. In construct mode the generators
/// are the classical objects and injectivity is asserted; `IRel`, `IPos`,
/// `IWOIP` and `DWOIP` have no classical generator and always run the filter.
pub fn enumerate_family(
    n: usize,
    family: FamilyTag,
    mode: EnumerationMode,
) -> Result<Vec<IntegerRelation>, Error> {
    let constructible = matches!(
        family,
        FamilyTag::Woep
            | FamilyTag::Woip
            | FamilyTag::Wofp
            | FamilyTag::Toep
            | FamilyTag::Toip
            | FamilyTag::Tofp
    );
    match mode {
        EnumerationMode::Filter => {
            let limit = enumeration_limit();
            if n > limit {
                return Err(Error::EnumerationLimit { n, limit });
            }
            let mut out: Vec<IntegerRelation> = enumerate_relations(n)
                .filter(|r| is_in_family(r, family))
                .collect();
            out.sort();
            Ok(out)
        }
        EnumerationMode::Construct if !constructible => {
            enumerate_family(n, family, EnumerationMode::Filter)
        }
        EnumerationMode::Construct => {
            if n > CONSTRUCT_LIMIT {
                return Err(Error::EnumerationLimit {
                    n,
                    limit: CONSTRUCT_LIMIT,
                });
            }
            let generated: Vec<IntegerRelation> = match family {
                FamilyTag::Woep => Permutation::enumerate(n)
                    .iter()
                    .map(from_permutation)
                    .collect(),
                FamilyTag::Woip => {
                    let perms = Permutation::enumerate(n);
                    let mut out = Vec::new();
                    for lo in &perms {
                        for hi in &perms {
                            if lo.weak_le(hi) {
                                out.push(from_interval(lo, hi)?);
                            }
                        }
                    }
                    out
                }
                FamilyTag::Wofp => OrderedPartition::enumerate(n)
                    .iter()
                    .map(from_ordered_partition)
                    .collect(),
                FamilyTag::Toep => BinaryTree::enumerate(n)
                    .iter()
                    .map(from_binary_tree)
                    .collect(),
                FamilyTag::Toip => {
                    let order = tamari_order(n);
                    let mut out = Vec::new();
                    for (lo, hi) in order.interval_pairs() {
                        out.push(from_tree_interval(&lo, &hi)?);
                    }
                    out
                }
                FamilyTag::Tofp => SchroderTree::enumerate(n)
                    .iter()
                    .map(from_schroder_tree)
                    .collect(),
                _ => unreachable!(),
            };
            let count = generated.len();
            let set: BTreeSet<IntegerRelation> = generated.into_iter().collect();
            // distinct classical objects must give distinct posets
            assert_eq!(
                set.len(),
                count,
                "family generator for {family} is not injective"
            );
            Ok(set.into_iter().collect())
        }
    }
}
