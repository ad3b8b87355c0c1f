//! Integer binary relations and the weak order lattice.
//!
//! An [`IntegerRelation`] is a reflexive binary relation on `[n] = {1, ..., n}`,
//! stored as an n×n bit matrix with one machine word per row. The reflexive
//! diagonal is a convention and is never stored. All other modules build on
//! the operations here: the weak order with its meet and join, restrictions,
//! the shifted shuffle, the convolution, total and primitive cuts, and the
//! two indecomposability notions.

use crate::error::Error;
use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground set, one `u64` word per row.
pub const MAX_SIZE: usize = 64;

/// Default ceiling for full sweeps over `IRel_n`, overridable with the
/// `INTREL_ENUM_LIMIT` environment variable.
pub const DEFAULT_ENUM_LIMIT: usize = 5;

/// Current ceiling for full enumerations of `IRel_n`.
pub fn enumeration_limit() -> usize {
    std::env::var("INTREL_ENUM_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_LIMIT)
}

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        !0
    } else {
        (1u64 << k) - 1
    }
}

/// A reflexive binary relation on `[n]`, diagonal implied.
///
/// Bit `(u, v)` (1-based, `u != v`) means `u R v`. Equality compares sizes and
/// off-diagonal bits. The derived order is the canonical one used for map keys
/// and serialization: lexicographic on `(n, row-major bit string)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerRelation {
    n: usize,
    rows: Vec<u64>,
}

impl IntegerRelation {
    /// The relation on `[n]` with no off-diagonal pair.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SIZE, "relation size {n} exceeds {MAX_SIZE}");
        IntegerRelation {
            n,
            rows: vec![0; n],
        }
    }

    /// The full relation `[n]²`.
    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for u in 0..n {
            r.rows[u] = low_bits(n) & !(1 << u);
        }
        r
    }

    /// Builds a relation from explicit pairs. Diagonal pairs are accepted and
    /// ignored, duplicates collapse. Out-of-range indices are reported with
    /// the offending pair.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        if n > MAX_SIZE {
            return Err(Error::SizeTooLarge { n, max: MAX_SIZE });
        }
        let mut r = Self::empty(n);
        for &(u, v) in pairs {
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::PairOutOfRange { n, pair: (u, v) });
            }
            if u != v {
                r.rows[u - 1] |= 1 << (v - 1);
            }
        }
        Ok(r)
    }

    /// Number of ground elements.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Membership test, 1-based; `u == v` holds by reflexivity.
    pub fn contains(&self, u: usize, v: usize) -> bool {
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        u == v || self.rows[u - 1] & (1 << (v - 1)) != 0
    }

    /// Off-diagonal pairs in canonical (row-major) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut row = self.rows[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                out.push((u + 1, v + 1));
                row &= row - 1;
            }
        }
        out
    }

    /// Number of off-diagonal pairs.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    fn inc_mask(&self, u: usize) -> u64 {
        // columns strictly greater than row index u (0-based)
        low_bits(self.n) & !low_bits(u + 1)
    }

    fn dec_mask(&self, u: usize) -> u64 {
        low_bits(u)
    }

    /// Increasing subrelation: pairs `(a, b)` with `a < b`.
    pub fn inc(&self) -> Self {
        let rows = (0..self.n)
            .map(|u| self.rows[u] & self.inc_mask(u))
            .collect();
        IntegerRelation { n: self.n, rows }
    }

    /// Decreasing subrelation: pairs `(b, a)` with `a < b`.
    pub fn dec(&self) -> Self {
        let rows = (0..self.n)
            .map(|u| self.rows[u] & self.dec_mask(u))
            .collect();
        IntegerRelation { n: self.n, rows }
    }

    /// Weak order comparison: `self ⩽ other` iff `Inc self ⊇ Inc other` and
    /// `Dec self ⊆ Dec other`. Panics on size mismatch.
    pub fn weak_le(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "weak_le requires equal sizes");
        for u in 0..self.n {
            let (im, dm) = (self.inc_mask(u), self.dec_mask(u));
            if other.rows[u] & im & !self.rows[u] != 0 {
                return false;
            }
            if self.rows[u] & dm & !other.rows[u] != 0 {
                return false;
            }
        }
        true
    }

    /// Weak order meet: `(Inc r ∪ Inc s) ∪ (Dec r ∩ Dec s)`.
    pub fn meet(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "meet requires equal sizes");
        let rows = (0..self.n)
            .map(|u| {
                let (im, dm) = (self.inc_mask(u), self.dec_mask(u));
                ((self.rows[u] | other.rows[u]) & im) | (self.rows[u] & other.rows[u] & dm)
            })
            .collect();
        IntegerRelation { n: self.n, rows }
    }

    /// Weak order join: `(Inc r ∩ Inc s) ∪ (Dec r ∪ Dec s)`.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "join requires equal sizes");
        let rows = (0..self.n)
            .map(|u| {
                let (im, dm) = (self.inc_mask(u), self.dec_mask(u));
                (self.rows[u] & other.rows[u] & im) | ((self.rows[u] | other.rows[u]) & dm)
            })
            .collect();
        IntegerRelation { n: self.n, rows }
    }

    /// Restriction to a subset of positions, standardized: with
    /// `x_1 < ... < x_k` enumerating `xs`, the result relates `(i, j)` iff
    /// `(x_i, x_j)` is related here. `xs` must be sorted, distinct and within
    /// range.
    pub fn restriction(&self, xs: &[usize]) -> Self {
        assert!(
            xs.windows(2).all(|w| w[0] < w[1]),
            "restriction positions must be sorted and distinct"
        );
        if let Some(&last) = xs.last() {
            assert!(
                xs[0] >= 1 && last <= self.n,
                "restriction position out of range"
            );
        }
        let k = xs.len();
        let mut r = Self::empty(k);
        for i in 0..k {
            for j in 0..k {
                if i != j && self.contains(xs[i], xs[j]) {
                    r.rows[i] |= 1 << j;
                }
            }
        }
        r
    }

    /// Restriction to the positions named by a bitmask (bit `i` for `i + 1`).
    pub fn restriction_mask(&self, mask: u64) -> Self {
        let xs: Vec<usize> = (0..self.n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| i + 1)
            .collect();
        self.restriction(&xs)
    }

    /// Pair set shifted by `m`, for embedding into a larger relation.
    pub fn shift(&self, m: usize) -> Vec<(usize, usize)> {
        self.pairs().iter().map(|&(u, v)| (u + m, v + m)).collect()
    }

    /// True iff the relation is antisymmetric and transitive (posets are
    /// reflexive by convention).
    pub fn is_poset(&self) -> bool {
        for u in 0..self.n {
            let mut row = self.rows[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                if self.rows[v] & (1 << u) != 0 {
                    return false; // antisymmetry
                }
                if self.rows[v] & !self.rows[u] & !(1 << u) != 0 {
                    return false; // transitivity
                }
            }
        }
        true
    }

    /// Canonical text form `n:uv,uv,...`, used as DOT node labels.
    pub fn canonical_label(&self) -> String {
        let body: Vec<String> = self
            .pairs()
            .iter()
            .map(|&(u, v)| {
                if self.n <= 9 {
                    format!("{u}{v}")
                } else {
                    format!("{u}.{v}")
                }
            })
            .collect();
        format!("{}:{}", self.n, body.join(","))
    }

    pub(crate) fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub(crate) fn set_pair(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u - 1] |= 1 << (v - 1);
    }
}

impl fmt::Debug for IntegerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerRelation({})", self.canonical_label())
    }
}

impl Ord for IntegerRelation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.rows.iter().zip(&other.rows) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for IntegerRelation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `R \ S`: the shuffle interval bottom, adding all increasing cross pairs.
pub fn under_product(r: &IntegerRelation, s: &IntegerRelation) -> IntegerRelation {
    let (m, n) = (r.size(), s.size());
    let mut t = embed_disjoint(r, s);
    for u in 1..=m {
        for v in m + 1..=m + n {
            t.set_pair(u, v);
        }
    }
    t
}

/// `R / S`: the shuffle interval top, adding all decreasing cross pairs.
pub fn over_product(r: &IntegerRelation, s: &IntegerRelation) -> IntegerRelation {
    let (m, n) = (r.size(), s.size());
    let mut t = embed_disjoint(r, s);
    for u in 1..=m {
        for v in m + 1..=m + n {
            t.set_pair(v, u);
        }
    }
    t
}

/// `r` on `[m]` next to `s` shifted by `m`, with no cross pair.
pub fn embed_disjoint(r: &IntegerRelation, s: &IntegerRelation) -> IntegerRelation {
    let (m, n) = (r.size(), s.size());
    let mut t = IntegerRelation::empty(m + n);
    for (u, v) in r.pairs() {
        t.set_pair(u, v);
    }
    for (u, v) in s.pairs() {
        t.set_pair(u + m, v + m);
    }
    t
}

/// Number of relations in `r ⧢ s` by sizes: `2^(2mn)`.
pub fn shuffle_count(m: usize, n: usize) -> u128 {
    1u128 << (2 * m * n)
}

/// Number of relations in `r ⋆ s` by sizes: `C(m+n, m)`.
pub fn convolution_count(m: usize, n: usize) -> u128 {
    binomial(m + n, m)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lazily enumerates the shifted shuffle `r ⧢ s`: every relation obtained
/// from `r` and shifted `s` by adding arbitrary increasing and decreasing
/// cross pairs.
pub fn shifted_shuffle<'a>(
    r: &'a IntegerRelation,
    s: &'a IntegerRelation,
) -> impl Iterator<Item = IntegerRelation> + 'a {
    let (m, n) = (r.size(), s.size());
    let base = embed_disjoint(r, s);
    let mut cells = Vec::with_capacity(2 * m * n);
    for u in 1..=m {
        for v in m + 1..=m + n {
            cells.push((u, v));
        }
    }
    for u in 1..=m {
        for v in m + 1..=m + n {
            cells.push((v, u));
        }
    }
    let total = shuffle_count(m, n);
    (0..total).map(move |bits| {
        let mut t = base.clone();
        for (k, &(u, v)) in cells.iter().enumerate() {
            if bits & (1 << k) != 0 {
                t.set_pair(u, v);
            }
        }
        t
    })
}

/// A partition `[n] = X ⊔ Y` with every `X → Y` pair related and no `Y → X`
/// pair related. Produced by [`total_cuts`] against a specific relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCut {
    /// Left part, sorted positions.
    pub left: Vec<usize>,
    /// Right part, the complement of `left` in `[n]`.
    pub right: Vec<usize>,
}

fn is_cut_mask(t: &IntegerRelation, x_mask: u64) -> bool {
    let n = t.size();
    let y_mask = low_bits(n) & !x_mask;
    for u in 0..n {
        if x_mask & (1 << u) != 0 {
            if t.row(u) & y_mask != y_mask {
                return false;
            }
        } else if t.row(u) & x_mask != 0 {
            return false;
        }
    }
    true
}

fn mask_to_positions(mask: u64, n: usize) -> Vec<usize> {
    (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i + 1)
        .collect()
}

/// All total cuts of `t`, including the two trivial ones.
pub fn total_cuts(t: &IntegerRelation) -> Vec<TotalCut> {
    let n = t.size();
    let mut out = Vec::new();
    for x_mask in 0..(1u64 << n) {
        if is_cut_mask(t, x_mask) {
            out.push(TotalCut {
                left: mask_to_positions(x_mask, n),
                right: mask_to_positions(low_bits(n) & !x_mask, n),
            });
        }
    }
    out
}

/// Lazily enumerates the convolution `r ⋆ s`: the relations on `[m+n]`
/// admitting a total cut `(X, Y)` restricting to `r` on `X` and `s` on `Y`.
/// Each choice of `X` determines exactly one relation.
pub fn convolution<'a>(
    r: &'a IntegerRelation,
    s: &'a IntegerRelation,
) -> impl Iterator<Item = IntegerRelation> + 'a {
    let (m, n) = (r.size(), s.size());
    subsets_of_size(m + n, m).map(move |x_mask| {
        let xs = mask_to_positions(x_mask, m + n);
        let ys = mask_to_positions(low_bits(m + n) & !x_mask, m + n);
        let mut t = IntegerRelation::empty(m + n);
        for (i, j) in r.pairs() {
            t.set_pair(xs[i - 1], xs[j - 1]);
        }
        for (i, j) in s.pairs() {
            t.set_pair(ys[i - 1], ys[j - 1]);
        }
        for &u in &xs {
            for &v in &ys {
                t.set_pair(u, v);
            }
        }
        t
    })
}

/// Masks of all `k`-subsets of `[n]`, ascending.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let full = low_bits(n);
    let first = low_bits(k);
    std::iter::successors(Some(first), move |&cur| {
        if cur == 0 {
            return None; // k = 0 yields only the empty mask
        }
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        let next = (((r ^ cur) >> 2) / c) | r;
        (next <= full).then_some(next)
    })
    .take_while(move |&m| m <= full)
}

/// Positions `i` such that `([i], [n] \ [i])` is a total cut; `0` and `n` are
/// always present.
pub fn primitive_cuts(t: &IntegerRelation) -> Vec<usize> {
    (0..=t.size())
        .filter(|&i| is_cut_mask(t, low_bits(i)))
        .collect()
}

fn has_nontrivial_over_cut(t: &IntegerRelation) -> bool {
    let n = t.size();
    (1..n).any(|i| {
        let x_mask = low_bits(i);
        let y_mask = low_bits(n) & !x_mask;
        (0..n).all(|u| {
            if x_mask & (1 << u) != 0 {
                t.row(u) & y_mask == 0
            } else {
                t.row(u) & x_mask == x_mask
            }
        })
    })
}

/// True iff `t` is not `under_product(r, s)` for any nonempty `r`, `s`,
/// equivalently iff its only primitive cuts are the trivial ones.
pub fn is_under_indecomposable(t: &IntegerRelation) -> bool {
    assert!(t.size() >= 1, "indecomposability is undefined for the unit");
    !(1..t.size()).any(|i| is_cut_mask(t, low_bits(i)))
}

/// Dual of [`is_under_indecomposable`] through `over_product`.
pub fn is_over_indecomposable(t: &IntegerRelation) -> bool {
    assert!(t.size() >= 1, "indecomposability is undefined for the unit");
    !has_nontrivial_over_cut(t)
}

/// `R_n = 2^(n(n-1))`, the number of reflexive relations on `[n]`.
pub fn relation_count(n: usize) -> u128 {
    1u128 << (n * n.saturating_sub(1))
}

/// The relation of index `bits` in the enumeration of `IRel_n`, off-diagonal
/// cells taken in row-major order.
pub fn relation_from_index(n: usize, bits: u64) -> IntegerRelation {
    let mut r = IntegerRelation::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if bits & (1 << k) != 0 {
                    r.rows[u] |= 1 << v;
                }
                k += 1;
            }
        }
    }
    r
}

/// Enumerates all of `IRel_n`. The caller is responsible for size sanity;
/// `n = 5` already means `2^20` relations.
pub fn enumerate_relations(n: usize) -> impl Iterator<Item = IntegerRelation> {
    assert!(
        n * n.saturating_sub(1) <= 63,
        "enumeration of IRel_{n} does not fit an index word"
    );
    (0..relation_count(n) as u64).map(move |bits| relation_from_index(n, bits))
}

/// All of `IRel_n` in enumeration order, materialized once and shared.
/// Intended for the exhaustive sweeps, so capped at `n <= 4`.
pub fn all_relations(n: usize) -> std::sync::Arc<Vec<IntegerRelation>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<IntegerRelation>>>>> = OnceLock::new();
    assert!(
        n <= 4,
        "materializing IRel_{n} is too large; use enumerate_relations"
    );
    let mut cache = CACHE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .unwrap();
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(enumerate_relations(n).collect()))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent reference model on explicit pair sets, used as the oracle
    /// for the bit-matrix implementation.
    mod oracle {
        use std::collections::BTreeSet;
        pub type Rel = (usize, BTreeSet<(usize, usize)>);

        pub fn inc(r: &Rel) -> BTreeSet<(usize, usize)> {
            r.1.iter().copied().filter(|&(a, b)| a < b).collect()
        }
        pub fn dec(r: &Rel) -> BTreeSet<(usize, usize)> {
            r.1.iter().copied().filter(|&(a, b)| a > b).collect()
        }
        pub fn weak_le(r: &Rel, s: &Rel) -> bool {
            inc(r).is_superset(&inc(s)) && dec(r).is_subset(&dec(s))
        }
        pub fn all_relations(n: usize) -> Vec<Rel> {
            let cells: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (1..=n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .collect();
            (0..1u64 << cells.len())
                .map(|bits| {
                    let set = cells
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| bits & (1 << k) != 0)
                        .map(|(_, &c)| c)
                        .collect();
                    (n, set)
                })
                .collect()
        }
        pub fn cuts(r: &Rel) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
            let n = r.0;
            let mut out = Vec::new();
            for mask in 0..1u64 << n {
                let x: BTreeSet<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let y: BTreeSet<usize> = (1..=n).filter(|i| !x.contains(i)).collect();
                let ok = x.iter().all(|&a| {
                    y.iter()
                        .all(|&b| r.1.contains(&(a, b)) && !r.1.contains(&(b, a)))
                });
                if ok {
                    out.push((x, y));
                }
            }
            out
        }
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> IntegerRelation {
        IntegerRelation::from_pairs(n, pairs).unwrap()
    }

    fn from_model(r: &oracle::Rel) -> IntegerRelation {
        let pairs: Vec<_> = r.1.iter().copied().collect();
        rel(r.0, &pairs)
    }

    #[test]
    fn from_pairs_basics() {
        let r = rel(3, &[(1, 2), (1, 3), (3, 2)]);
        assert_eq!(r.pairs(), vec![(1, 2), (1, 3), (3, 2)]);
        assert_eq!(IntegerRelation::empty(0).size(), 0);
        // diagonal entries are accepted and dropped
        assert_eq!(rel(2, &[(1, 1), (1, 2)]), rel(2, &[(1, 2)]));
        assert!(matches!(
            IntegerRelation::from_pairs(2, &[(1, 3)]),
            Err(Error::PairOutOfRange { pair: (1, 3), .. })
        ));
    }

    #[test]
    fn inc_dec_split() {
        let r = rel(3, &[(1, 2), (3, 2)]);
        assert_eq!(r.inc(), rel(3, &[(1, 2)]));
        assert_eq!(r.dec(), rel(3, &[(3, 2)]));
        let full = IntegerRelation::full(2);
        assert_eq!(full.inc(), rel(2, &[(1, 2)]));
        assert_eq!(full.dec(), rel(2, &[(2, 1)]));
        // inc and dec partition the off-diagonal pairs
        for r in enumerate_relations(3) {
            let inc: BTreeSet<_> = r.inc().pairs().into_iter().collect();
            let dec: BTreeSet<_> = r.dec().pairs().into_iter().collect();
            assert!(inc.is_disjoint(&dec));
            let all: BTreeSet<_> = r.pairs().into_iter().collect();
            assert_eq!(inc.union(&dec).copied().collect::<BTreeSet<_>>(), all);
        }
    }

    #[test]
    fn woep_figure_arc_counts() {
        // chain poset of the word 2751346: 12 increasing and 9 decreasing arcs
        let sigma = [2usize, 7, 5, 1, 3, 4, 6];
        let mut pos = [0usize; 8];
        for (i, &v) in sigma.iter().enumerate() {
            pos[v] = i;
        }
        let mut pairs = Vec::new();
        for u in 1..=7 {
            for v in 1..=7 {
                if u != v && pos[u] < pos[v] {
                    pairs.push((u, v));
                }
            }
        }
        let r = rel(7, &pairs);
        assert_eq!(r.inc().pair_count(), 12);
        assert_eq!(r.dec().pair_count(), 9);
        assert!(r.is_poset());
    }

    #[test]
    fn weak_le_matches_oracle_exhaustively() {
        for n in 0..=3 {
            let models = oracle::all_relations(n);
            for a in &models {
                for b in &models {
                    assert_eq!(
                        from_model(a).weak_le(&from_model(b)),
                        oracle::weak_le(a, b),
                        "weak_le mismatch on {a:?} vs {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn weak_le_examples() {
        let a = rel(2, &[(1, 2)]);
        let b = rel(2, &[(2, 1)]);
        assert!(a.weak_le(&a));
        assert!(a.weak_le(&b));
        assert!(!IntegerRelation::empty(2).weak_le(&a));
    }

    #[test]
    fn meet_join_are_bounds() {
        // meet is the greatest lower bound and join the least upper bound,
        // checked exhaustively against all candidates
        for n in 0..=3 {
            let rels: Vec<_> = enumerate_relations(n).collect();
            for r in &rels {
                for s in &rels {
                    let m = r.meet(s);
                    let j = r.join(s);
                    assert!(m.weak_le(r) && m.weak_le(s));
                    assert!(r.weak_le(&j) && s.weak_le(&j));
                    for t in &rels {
                        if t.weak_le(r) && t.weak_le(s) {
                            assert!(t.weak_le(&m));
                        }
                        if r.weak_le(t) && s.weak_le(t) {
                            assert!(j.weak_le(t));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn meet_join_examples() {
        let a = rel(2, &[(1, 2)]);
        let b = rel(2, &[(2, 1)]);
        assert_eq!(a.meet(&a), a);
        assert_eq!(a.meet(&b), a);
        assert_eq!(a.join(&b), b);
    }

    #[test]
    fn restriction_examples() {
        let r = rel(3, &[(1, 2), (1, 3), (3, 2)]);
        assert_eq!(r.restriction(&[1, 3]), rel(2, &[(1, 2)]));
        assert_eq!(r.restriction(&[1, 2, 3]), r);
        assert_eq!(r.restriction(&[]), IntegerRelation::empty(0));
    }

    #[test]
    fn restriction_is_functorial() {
        // restricting twice equals restricting once to the nested subset
        for r in enumerate_relations(3) {
            for x_mask in 0u64..8 {
                let xs = mask_to_positions(x_mask, 3);
                let rx = r.restriction(&xs);
                let submasks = (0..=x_mask).filter(|m| m & x_mask == *m);
                for y_mask in submasks {
                    let ys = mask_to_positions(y_mask, 3);
                    let inner: Vec<usize> = ys
                        .iter()
                        .map(|y| xs.iter().position(|x| x == y).unwrap() + 1)
                        .collect();
                    assert_eq!(rx.restriction(&inner), r.restriction(&ys));
                }
            }
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(rel(2, &[(1, 2)]).shift(2), vec![(3, 4)]);
        assert_eq!(IntegerRelation::empty(2).shift(5), vec![]);
        assert_eq!(rel(2, &[(2, 1)]).shift(1), vec![(3, 2)]);
    }

    #[test]
    fn under_over_product_examples() {
        let r = rel(2, &[(1, 2)]);
        let s = IntegerRelation::empty(1);
        assert_eq!(under_product(&r, &s), rel(3, &[(1, 2), (1, 3), (2, 3)]));
        assert_eq!(over_product(&r, &s), rel(3, &[(1, 2), (3, 1), (3, 2)]));
        let t = rel(2, &[(2, 1)]);
        assert_eq!(under_product(&IntegerRelation::empty(0), &t), t);
    }

    #[test]
    fn shuffle_counts_and_characterization() {
        let one = IntegerRelation::empty(1);
        assert_eq!(shifted_shuffle(&one, &one).count(), 4);
        let r2 = rel(2, &[(1, 2)]);
        assert_eq!(shifted_shuffle(&r2, &one).count(), 16);
        let r = rel(2, &[(2, 1)]);
        assert_eq!(
            shifted_shuffle(&r, &IntegerRelation::empty(0)).collect::<Vec<_>>(),
            vec![r.clone()]
        );

        // three-way characterization of membership in the shuffle
        for m in 0..=2 {
            for n in 0..=(3 - m) {
                for a in enumerate_relations(m) {
                    for b in enumerate_relations(n) {
                        let shuffle: BTreeSet<_> = shifted_shuffle(&a, &b).collect();
                        assert_eq!(shuffle.len() as u128, shuffle_count(m, n));
                        let under = under_product(&a, &b);
                        let over = over_product(&a, &b);
                        let lo: Vec<usize> = (1..=m).collect();
                        let hi: Vec<usize> = (m + 1..=m + n).collect();
                        for t in enumerate_relations(m + n) {
                            let in_shuffle = shuffle.contains(&t);
                            let by_restriction = t.restriction(&lo) == a && t.restriction(&hi) == b;
                            let by_interval = under.weak_le(&t) && t.weak_le(&over);
                            assert_eq!(in_shuffle, by_restriction);
                            assert_eq!(in_shuffle, by_interval);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn total_cuts_examples() {
        let r = rel(3, &[(1, 2), (1, 3), (3, 2)]);
        let cuts = total_cuts(&r);
        let as_sets: BTreeSet<(Vec<usize>, Vec<usize>)> =
            cuts.into_iter().map(|c| (c.left, c.right)).collect();
        let expected: BTreeSet<(Vec<usize>, Vec<usize>)> = [
            (vec![1, 2, 3], vec![]),
            (vec![1], vec![2, 3]),
            (vec![1, 3], vec![2]),
            (vec![], vec![1, 2, 3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(as_sets, expected);

        for n in 1..=4 {
            assert_eq!(total_cuts(&IntegerRelation::empty(n)).len(), 2);
        }
    }

    #[test]
    fn total_cuts_match_oracle() {
        for n in 0..=3 {
            for model in oracle::all_relations(n) {
                let got: BTreeSet<BTreeSet<usize>> = total_cuts(&from_model(&model))
                    .into_iter()
                    .map(|c| c.left.into_iter().collect())
                    .collect();
                let want: BTreeSet<BTreeSet<usize>> =
                    oracle::cuts(&model).into_iter().map(|(x, _)| x).collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn chain_has_prefix_cuts_only() {
        // increasing chain with transitivity: cuts are exactly the prefixes
        for n in 1..=5 {
            let mut pairs = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    pairs.push((a, b));
                }
            }
            let chain = rel(n, &pairs);
            let cuts = total_cuts(&chain);
            assert_eq!(cuts.len(), n + 1);
            for c in cuts {
                let i = c.left.len();
                assert_eq!(c.left, (1..=i).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn convolution_examples() {
        let one = IntegerRelation::empty(1);
        let got: BTreeSet<_> = convolution(&one, &one).collect();
        let want: BTreeSet<_> = [rel(2, &[(1, 2)]), rel(2, &[(2, 1)])].into_iter().collect();
        assert_eq!(got, want);

        let r2 = IntegerRelation::full(2);
        let s3 = IntegerRelation::empty(3);
        assert_eq!(
            convolution(&r2, &s3).count() as u128,
            convolution_count(2, 3)
        );
        assert_eq!(convolution_count(2, 3), 10);

        let s = rel(2, &[(2, 1)]);
        assert_eq!(
            convolution(&IntegerRelation::empty(0), &s).collect::<Vec<_>>(),
            vec![s.clone()]
        );
    }

    #[test]
    fn convolution_members_have_matching_cut() {
        for m in 0..=2 {
            for n in 0..=(4 - m).min(2) {
                for a in enumerate_relations(m) {
                    for b in enumerate_relations(n) {
                        let members: Vec<_> = convolution(&a, &b).collect();
                        assert_eq!(members.len() as u128, convolution_count(m, n));
                        let distinct: BTreeSet<_> = members.iter().cloned().collect();
                        assert_eq!(distinct.len(), members.len());
                        for t in &members {
                            assert!(total_cuts(t).iter().any(|c| {
                                t.restriction(&c.left) == a && t.restriction(&c.right) == b
                            }));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_cut_examples() {
        assert_eq!(primitive_cuts(&rel(3, &[(1, 3), (2, 3)])), vec![0, 2, 3]);
        assert_eq!(primitive_cuts(&IntegerRelation::empty(2)), vec![0, 2]);
        // the under product always has a primitive cut at the left size
        for r in enumerate_relations(2) {
            for s in enumerate_relations(2) {
                assert!(primitive_cuts(&under_product(&r, &s)).contains(&2));
            }
        }
    }

    #[test]
    fn indecomposability_on_two_elements() {
        let rels: Vec<_> = enumerate_relations(2).collect();
        let indec: Vec<_> = rels.iter().filter(|r| is_under_indecomposable(r)).collect();
        assert_eq!(indec.len(), 3);
        let decomposable = rel(2, &[(1, 2)]);
        assert!(!is_under_indecomposable(&decomposable));
        assert_eq!(primitive_cuts(&decomposable), vec![0, 1, 2]);
        assert!(is_under_indecomposable(&IntegerRelation::empty(2)));
        assert!(is_under_indecomposable(&IntegerRelation::full(2)));
    }

    #[test]
    fn over_indecomposability_is_dual() {
        // t is over-decomposable iff t equals over_product(r, s) for a split
        for n in 1..=3 {
            for t in enumerate_relations(n) {
                let mut decomposable = false;
                for i in 1..n {
                    let lo: Vec<usize> = (1..=i).collect();
                    let hi: Vec<usize> = (i + 1..=n).collect();
                    if over_product(&t.restriction(&lo), &t.restriction(&hi)) == t {
                        decomposable = true;
                    }
                }
                assert_eq!(is_over_indecomposable(&t), !decomposable);
            }
        }
    }

    #[test]
    fn is_poset_examples() {
        assert!(!rel(3, &[(1, 2), (2, 3)]).is_poset());
        assert!(!rel(2, &[(1, 2), (2, 1)]).is_poset());
        assert!(rel(3, &[(1, 2), (1, 3), (3, 2)]).is_poset());
        assert!(IntegerRelation::empty(4).is_poset());
    }

    #[test]
    fn canonical_order_is_total_on_small_sizes() {
        let mut rels: Vec<_> = enumerate_relations(2).collect();
        rels.sort();
        rels.dedup();
        assert_eq!(rels.len(), 4);
        // size dominates, then the row-major bit string with 0 before 1
        assert!(IntegerRelation::empty(1) < IntegerRelation::empty(2));
        assert!(IntegerRelation::empty(2) < rel(2, &[(1, 2)]));
        assert!(rel(2, &[(2, 1)]) < rel(2, &[(1, 2)]));
        assert!(rel(2, &[(1, 2)]) < IntegerRelation::full(2));
    }

    #[test]
    fn lattice_axioms_exhaustive() {
        for n in 0..=3 {
            let rels: Vec<_> = enumerate_relations(n).collect();
            for r in &rels {
                assert_eq!(&r.meet(r), r);
                assert_eq!(&r.join(r), r);
                for s in &rels {
                    assert_eq!(r.meet(s), s.meet(r));
                    assert_eq!(r.join(s), s.join(r));
                    assert_eq!(&r.meet(&r.join(s)), r);
                    assert_eq!(&r.join(&r.meet(s)), r);
                    for t in &rels {
                        assert_eq!(r.meet(&s.meet(t)), r.meet(s).meet(t));
                        assert_eq!(r.join(&s.join(t)), r.join(s).join(t));
                    }
                }
            }
        }
    }

    #[test]
    fn subsets_iterator_counts() {
        assert_eq!(subsets_of_size(5, 2).count() as u128, binomial(5, 2));
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![0b111]);
    }
}
