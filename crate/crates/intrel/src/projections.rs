//! Deletion maps from integer posets onto the weak order and Tamari families,
//! the classical tree insertions, and fiber enumeration.

use crate::error::Error;
use crate::families::{
    all_posets, enumerate_family, from_binary_tree, from_ordered_partition, from_permutation,
    from_schroder_tree, is_in_family, maxle, minle, BinaryTree, EnumerationMode, FamilyTag,
    OrderedPartition, Permutation, SchroderTree,
};
use crate::relation::IntegerRelation;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

fn require_poset(p: &IntegerRelation) -> Result<(), Error> {
    if p.is_poset() {
        Ok(())
    } else {
        Err(Error::NotAPoset)
    }
}

/// Deletes the increasing pairs `(a, c)` reachable from `a` to `c` by a chain
/// `a < b_1 < ... < b_k < c` of consecutive non-relations with `k >= 1`.
/// Projects posets onto `IWOIP`.
pub fn iwoip_increasing_deletion(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    require_poset(p)?;
    delete_increasing(p, |p, u, v| !p.contains(u, v))
}

/// Dual deletion on decreasing pairs; projects posets onto `DWOIP`.
pub fn dwoip_decreasing_deletion(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    require_poset(p)?;
    delete_decreasing(p, |p, u, v| !p.contains(v, u))
}

// Reachability by chains of "step" moves with at least one intermediate,
// O(n^2) per source, O(n^3) per relation.
fn delete_increasing(
    p: &IntegerRelation,
    step: impl Fn(&IntegerRelation, usize, usize) -> bool,
) -> Result<IntegerRelation, Error> {
    let n = p.size();
    let mut keep = Vec::new();
    let mut reach = vec![false; n + 1];
    for a in 1..=n {
        for x in reach.iter_mut() {
            *x = false;
        }
        for v in a + 1..=n {
            reach[v] = step(p, a, v) || (a + 1..v).any(|b| reach[b] && step(p, b, v));
        }
        for c in a + 1..=n {
            let deletable = (a + 1..c).any(|b| reach[b] && step(p, b, c));
            if p.contains(a, c) && !deletable {
                keep.push((a, c));
            }
        }
    }
    // decreasing pairs are untouched
    keep.extend(p.dec().pairs());
    IntegerRelation::from_pairs(n, &keep)
}

fn delete_decreasing(
    p: &IntegerRelation,
    step: impl Fn(&IntegerRelation, usize, usize) -> bool,
) -> Result<IntegerRelation, Error> {
    let n = p.size();
    let mut keep = Vec::new();
    let mut reach = vec![false; n + 1];
    for a in 1..=n {
        for x in reach.iter_mut() {
            *x = false;
        }
        for v in a + 1..=n {
            reach[v] = step(p, a, v) || (a + 1..v).any(|b| reach[b] && step(p, b, v));
        }
        for c in a + 1..=n {
            let deletable = (a + 1..c).any(|b| reach[b] && step(p, b, c));
            if p.contains(c, a) && !deletable {
                keep.push((c, a));
            }
        }
    }
    keep.extend(p.inc().pairs());
    IntegerRelation::from_pairs(n, &keep)
}

/// Composition of the two one-sided deletions; the order does not matter.
/// Projects posets onto `WOIP`.
pub fn woip_deletion(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    iwoip_increasing_deletion(&dwoip_decreasing_deletion(p)?)
}

/// One-shot deletion onto `TOIP`: drops `(a, c)` when some `a < b < c` has
/// `b ⊀ c`, and `(c, a)` when some `a < b < c` has `b ⊀ a`.
pub fn toip_deletion(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    require_poset(p)?;
    let n = p.size();
    let mut keep = Vec::new();
    for (u, v) in p.pairs() {
        let (a, c) = (u.min(v), u.max(v));
        let ok = if u < v {
            (a + 1..c).all(|b| p.contains(b, c))
        } else {
            (a + 1..c).all(|b| p.contains(b, a))
        };
        if ok {
            keep.push((u, v));
        }
    }
    IntegerRelation::from_pairs(n, &keep)
}

/// Projection onto total orders through the increasing deletion followed by
/// the maximal linear extension.
pub fn woep_id(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    maxle(&iwoip_increasing_deletion(p)?)
}

/// Projection onto total orders through the decreasing deletion followed by
/// the minimal linear extension.
pub fn woep_dd(p: &IntegerRelation) -> Result<IntegerRelation, Error> {
    minle(&dwoip_decreasing_deletion(p)?)
}

// Intermediate search trees carry explicit vertex values, since only a
// subset of [n] is present mid-insertion. The final tree holds all of [n],
// so its unlabeled shape has the same inorder labels.
enum Lbst {
    Leaf,
    Node(Box<Lbst>, usize, Box<Lbst>),
}

fn lbst_insert(t: Lbst, v: usize) -> Lbst {
    match t {
        Lbst::Leaf => Lbst::Node(Box::new(Lbst::Leaf), v, Box::new(Lbst::Leaf)),
        Lbst::Node(l, w, r) => {
            if v < w {
                Lbst::Node(Box::new(lbst_insert(*l, v)), w, r)
            } else {
                Lbst::Node(l, w, Box::new(lbst_insert(*r, v)))
            }
        }
    }
}

fn lbst_shape(t: &Lbst) -> BinaryTree {
    match t {
        Lbst::Leaf => BinaryTree::Leaf,
        Lbst::Node(l, _, r) => BinaryTree::node(lbst_shape(l), lbst_shape(r)),
    }
}

/// Binary search tree insertion, reading the word right to left; the result
/// is the unique binary search tree in which descendants appear earlier in
/// the word.
pub fn bst_insert(sigma: &Permutation) -> BinaryTree {
    let mut t = Lbst::Leaf;
    for &v in sigma.word().iter().rev() {
        t = lbst_insert(t, v);
    }
    lbst_shape(&t)
}

// children plus the angle values separating them (one fewer than children)
enum Lst {
    Leaf,
    Node(Vec<Lst>, Vec<usize>),
}

fn lst_insert(t: Lst, block: &[usize]) -> Lst {
    debug_assert!(!block.is_empty());
    match t {
        Lst::Leaf => {
            let children = (0..=block.len()).map(|_| Lst::Leaf).collect();
            Lst::Node(children, block.to_vec())
        }
        Lst::Node(children, angles) => {
            let new_children = children
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let lo = if i == 0 { 0 } else { angles[i - 1] };
                    let hi = angles.get(i).copied().unwrap_or(usize::MAX);
                    let part: Vec<usize> = block
                        .iter()
                        .copied()
                        .filter(|&v| v > lo && v < hi)
                        .collect();
                    if part.is_empty() {
                        c
                    } else {
                        lst_insert(c, &part)
                    }
                })
                .collect();
            Lst::Node(new_children, angles)
        }
    }
}

fn lst_shape(t: &Lst) -> SchroderTree {
    match t {
        Lst::Leaf => SchroderTree::Leaf,
        Lst::Node(children, _) => SchroderTree::Node(children.iter().map(lst_shape).collect()),
    }
}

/// Schröder tree insertion of an ordered partition, blocks read right to
/// left; each block descends through the existing angles and splits over
/// the corridors between them.
pub fn schroder_insert(pi: &OrderedPartition) -> SchroderTree {
    let mut t = Lst::Leaf;
    for block in pi.blocks().iter().rev() {
        t = lst_insert(t, block);
    }
    lst_shape(&t)
}

/// Checks the compatibility of the `TOIP` deletion with the binary search
/// tree insertion on one permutation.
pub fn projection_compatibility_permutation(sigma: &Permutation) -> bool {
    toip_deletion(&from_permutation(sigma))
        .map(|d| d == from_binary_tree(&bst_insert(sigma)))
        .unwrap_or(false)
}

/// Checks the compatibility on a weak order interval: deleting the interval
/// poset gives the interval poset of the inserted trees.
pub fn projection_compatibility_interval(
    sigma: &Permutation,
    sigma_up: &Permutation,
) -> Result<bool, Error> {
    let p = crate::families::from_interval(sigma, sigma_up)?;
    let expected = crate::families::from_tree_interval(&bst_insert(sigma), &bst_insert(sigma_up))?;
    Ok(toip_deletion(&p)? == expected)
}

/// Checks the compatibility with the Schröder tree insertion on one ordered
/// partition.
pub fn projection_compatibility_partition(pi: &OrderedPartition) -> bool {
    toip_deletion(&from_ordered_partition(pi))
        .map(|d| d == from_schroder_tree(&schroder_insert(pi)))
        .unwrap_or(false)
}

/// The deletion maps whose fibers build the subalgebra bases.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectionMap {
    WoipD,
    IwoipId,
    DwoipDd,
    ToipD,
    WoepId,
    WoepDd,
}

impl ProjectionMap {
    pub const ALL: [ProjectionMap; 6] = [
        ProjectionMap::WoipD,
        ProjectionMap::IwoipId,
        ProjectionMap::DwoipDd,
        ProjectionMap::ToipD,
        ProjectionMap::WoepId,
        ProjectionMap::WoepDd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProjectionMap::WoipD => "WOIPd",
            ProjectionMap::IwoipId => "IWOIPid",
            ProjectionMap::DwoipDd => "DWOIPdd",
            ProjectionMap::ToipD => "TOIPd",
            ProjectionMap::WoepId => "WOEPid",
            ProjectionMap::WoepDd => "WOEPdd",
        }
    }

    pub fn parse(s: &str) -> Option<ProjectionMap> {
        ProjectionMap::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
    }

    /// The family the map projects onto.
    pub fn image_family(&self) -> FamilyTag {
        match self {
            ProjectionMap::WoipD => FamilyTag::Woip,
            ProjectionMap::IwoipId => FamilyTag::Iwoip,
            ProjectionMap::DwoipDd => FamilyTag::Dwoip,
            ProjectionMap::ToipD => FamilyTag::Toip,
            ProjectionMap::WoepId | ProjectionMap::WoepDd => FamilyTag::Woep,
        }
    }

    pub fn apply(&self, p: &IntegerRelation) -> Result<IntegerRelation, Error> {
        match self {
            ProjectionMap::WoipD => woip_deletion(p),
            ProjectionMap::IwoipId => iwoip_increasing_deletion(p),
            ProjectionMap::DwoipDd => dwoip_decreasing_deletion(p),
            ProjectionMap::ToipD => toip_deletion(p),
            ProjectionMap::WoepId => woep_id(p),
            ProjectionMap::WoepDd => woep_dd(p),
        }
    }
}

type FiberTable = HashMap<IntegerRelation, Vec<IntegerRelation>>;

fn fiber_cache() -> &'static RwLock<HashMap<(ProjectionMap, FamilyTag, usize), Arc<FiberTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<(ProjectionMap, FamilyTag, usize), Arc<FiberTable>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All fibers of `map` over the given domain family at size `n`, grouped by
/// image point. Computed by one forward scan of the domain and memoized.
pub fn fibers(map: ProjectionMap, domain: FamilyTag, n: usize) -> Result<Arc<FiberTable>, Error> {
    if let Some(hit) = fiber_cache()
        .read()
        .expect("fiber cache poisoned")
        .get(&(map, domain, n))
    {
        return Ok(hit.clone());
    }
    let members: Vec<IntegerRelation> = match domain {
        FamilyTag::IPos => all_posets(n)?.as_ref().clone(),
        _ => enumerate_family(n, domain, EnumerationMode::Construct)?,
    };
    let mut table: FiberTable = HashMap::new();
    for p in members {
        let image = map.apply(&p)?;
        table.entry(image).or_default().push(p);
    }
    let arc = Arc::new(table);
    fiber_cache()
        .write()
        .expect("fiber cache poisoned")
        .insert((map, domain, n), arc.clone());
    Ok(arc)
}

/// The domain-family posets mapping to `target` under `map`.
pub fn fiber(
    map: ProjectionMap,
    target: &IntegerRelation,
    domain: FamilyTag,
) -> Result<Vec<IntegerRelation>, Error> {
    if !is_in_family(target, map.image_family()) {
        return Err(Error::NotInFamily(map.image_family().name()));
    }
    Ok(fibers(map, domain, target.size())?
        .get(target)
        .cloned()
        .unwrap_or_default())
}
