//! The free module over integer relations and its poset quotient: product,
//! coproduct, the multiplicative `E`/`H` bases, the primitive-cut coproduct,
//! and indecomposable counting.
//!
//! Everything is exact integer arithmetic with 64-bit coefficients; overflow
//! is detected and reported, never wrapped.

use crate::error::Error;
use crate::relation::{
    enumerate_relations, enumeration_limit, is_under_indecomposable, over_product, primitive_cuts,
    relation_count, relation_from_index, shifted_shuffle, total_cuts, under_product,
    IntegerRelation,
};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Which basis the stored indices refer to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    F,
    E,
    H,
}

/// Ambient space: all relations, or the poset quotient.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    IRel,
    IPos,
}

impl Carrier {
    pub fn admits(&self, r: &IntegerRelation) -> bool {
        match self {
            Carrier::IRel => true,
            Carrier::IPos => r.is_poset(),
        }
    }
}

fn checked_accumulate<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, delta: i64) -> Result<(), Error> {
    if delta == 0 {
        return Ok(());
    }
    let slot = map.entry(key).or_insert(0);
    *slot = slot.checked_add(delta).ok_or(Error::Overflow)?;
    Ok(())
}

fn prune<K: Ord>(map: &mut BTreeMap<K, i64>) {
    map.retain(|_, c| *c != 0);
}

/// Sparse exact-integer combination of relations, tagged with its basis and
/// carrier. Terms of mixed sizes are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    basis: Basis,
    carrier: Carrier,
    terms: BTreeMap<IntegerRelation, i64>,
}

impl ModuleElement {
    pub fn zero(basis: Basis, carrier: Carrier) -> Self {
        ModuleElement {
            basis,
            carrier,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: the size-0 relation with coefficient 1.
    pub fn unit(basis: Basis, carrier: Carrier) -> Self {
        let mut e = Self::zero(basis, carrier);
        e.terms.insert(IntegerRelation::empty(0), 1);
        e
    }

    pub fn singleton(
        basis: Basis,
        carrier: Carrier,
        rel: IntegerRelation,
        coeff: i64,
    ) -> Result<Self, Error> {
        if !carrier.admits(&rel) {
            return Err(Error::NotAPoset);
        }
        let mut e = Self::zero(basis, carrier);
        if coeff != 0 {
            e.terms.insert(rel, coeff);
        }
        Ok(e)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntegerRelation, i64)> {
        self.terms.iter().map(|(r, &c)| (r, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, rel: &IntegerRelation) -> i64 {
        self.terms.get(rel).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, rel: IntegerRelation, coeff: i64) -> Result<(), Error> {
        if !self.carrier.admits(&rel) {
            return Err(Error::NotAPoset);
        }
        checked_accumulate(&mut self.terms, rel, coeff)?;
        prune(&mut self.terms);
        Ok(())
    }

    pub fn add_assign(&mut self, other: &ModuleElement) -> Result<(), Error> {
        if self.basis != other.basis {
            return Err(Error::MixedBasis);
        }
        if self.carrier != other.carrier {
            return Err(Error::MixedCarrier);
        }
        for (r, c) in other.terms() {
            checked_accumulate(&mut self.terms, r.clone(), c)?;
        }
        prune(&mut self.terms);
        Ok(())
    }

    pub(crate) fn from_terms(
        basis: Basis,
        carrier: Carrier,
        terms: BTreeMap<IntegerRelation, i64>,
    ) -> Self {
        let mut e = ModuleElement {
            basis,
            carrier,
            terms,
        };
        prune(&mut e.terms);
        e
    }

    pub(crate) fn into_terms(self) -> BTreeMap<IntegerRelation, i64> {
        self.terms
    }
}

/// Sparse exact-integer combination of ordered pairs of relations, the
/// coproduct output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    basis: Basis,
    carrier: Carrier,
    terms: BTreeMap<(IntegerRelation, IntegerRelation), i64>,
}

impl TensorElement {
    pub fn zero(basis: Basis, carrier: Carrier) -> Self {
        TensorElement {
            basis,
            carrier,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(IntegerRelation, IntegerRelation), i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, left: &IntegerRelation, right: &IntegerRelation) -> i64 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(
        &mut self,
        left: IntegerRelation,
        right: IntegerRelation,
        coeff: i64,
    ) -> Result<(), Error> {
        if !self.carrier.admits(&left) || !self.carrier.admits(&right) {
            return Err(Error::NotAPoset);
        }
        checked_accumulate(&mut self.terms, (left, right), coeff)?;
        prune(&mut self.terms);
        Ok(())
    }

    pub fn add_assign(&mut self, other: &TensorElement) -> Result<(), Error> {
        if self.basis != other.basis {
            return Err(Error::MixedBasis);
        }
        if self.carrier != other.carrier {
            return Err(Error::MixedCarrier);
        }
        for (k, c) in other.terms() {
            checked_accumulate(&mut self.terms, k.clone(), c)?;
        }
        prune(&mut self.terms);
        Ok(())
    }

    pub(crate) fn from_terms(
        basis: Basis,
        carrier: Carrier,
        terms: BTreeMap<(IntegerRelation, IntegerRelation), i64>,
    ) -> Self {
        let mut e = TensorElement {
            basis,
            carrier,
            terms,
        };
        prune(&mut e.terms);
        e
    }
}

fn mul(a: i64, b: i64) -> Result<i64, Error> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Bilinear extension of `F_r · F_s = Σ F_t` over the shifted shuffle. On the
/// poset carrier, summands that are not posets are deleted.
pub fn f_product(a: &ModuleElement, b: &ModuleElement) -> Result<ModuleElement, Error> {
    assert_eq!(a.basis(), Basis::F, "f_product runs in the F basis");
    assert_eq!(b.basis(), Basis::F, "f_product runs in the F basis");
    if a.carrier != b.carrier {
        return Err(Error::MixedCarrier);
    }
    let carrier = a.carrier;
    let mut terms = BTreeMap::new();
    for (r, cr) in a.terms() {
        for (s, cs) in b.terms() {
            let c = mul(cr, cs)?;
            for t in shifted_shuffle(r, s) {
                if carrier.admits(&t) {
                    checked_accumulate(&mut terms, t, c)?;
                }
            }
        }
    }
    Ok(ModuleElement::from_terms(Basis::F, carrier, terms))
}

/// Linear extension of `Δ(F_t) = Σ F_(t|X) ⊗ F_(t|Y)` over total cuts. On the
/// poset carrier no deletion is ever needed: restrictions of posets along
/// cuts are posets.
pub fn f_coproduct(a: &ModuleElement) -> Result<TensorElement, Error> {
    assert_eq!(a.basis(), Basis::F, "f_coproduct runs in the F basis");
    let mut terms = BTreeMap::new();
    for (t, c) in a.terms() {
        for cut in total_cuts(t) {
            let left = t.restriction(&cut.left);
            let right = t.restriction(&cut.right);
            debug_assert!(a.carrier.admits(&left) && a.carrier.admits(&right));
            checked_accumulate(&mut terms, (left, right), c)?;
        }
    }
    Ok(TensorElement::from_terms(Basis::F, a.carrier, terms))
}

/// Componentwise tensor product `(a ⊗ b) · (c ⊗ d) = (a·c) ⊗ (b·d)`.
pub fn tensor_product(p: &TensorElement, q: &TensorElement) -> Result<TensorElement, Error> {
    assert_eq!(p.basis(), Basis::F);
    assert_eq!(q.basis(), Basis::F);
    if p.carrier != q.carrier {
        return Err(Error::MixedCarrier);
    }
    let carrier = p.carrier;
    let mut terms = BTreeMap::new();
    for ((a, b), cp) in p.terms() {
        for ((c, d), cq) in q.terms() {
            let coeff = mul(cp, cq)?;
            for left in shifted_shuffle(a, c) {
                if !carrier.admits(&left) {
                    continue;
                }
                for right in shifted_shuffle(b, d) {
                    if carrier.admits(&right) {
                        checked_accumulate(&mut terms, (left.clone(), right), coeff)?;
                    }
                }
            }
        }
    }
    Ok(TensorElement::from_terms(Basis::F, carrier, terms))
}

/// Checks the Hopf compatibility `Δ(F_r · F_s) = Δ(F_r) · Δ(F_s)` exactly.
pub fn hopf_compatible(
    r: &IntegerRelation,
    s: &IntegerRelation,
    carrier: Carrier,
) -> Result<bool, Error> {
    let fr = ModuleElement::singleton(Basis::F, carrier, r.clone(), 1)?;
    let fs = ModuleElement::singleton(Basis::F, carrier, s.clone(), 1)?;
    let lhs = f_coproduct(&f_product(&fr, &fs)?)?;
    let rhs = tensor_product(&f_coproduct(&fr)?, &f_coproduct(&fs)?)?;
    Ok(lhs == rhs)
}

fn weak_order_slice(
    r: &IntegerRelation,
    carrier: Carrier,
    upward: bool,
) -> Result<ModuleElement, Error> {
    let n = r.size();
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    let mut terms = BTreeMap::new();
    let mut insert = |t: &IntegerRelation| {
        let related = if upward { r.weak_le(t) } else { t.weak_le(r) };
        if related && carrier.admits(t) {
            terms.insert(t.clone(), 1);
        }
    };
    if n <= 4 {
        for t in crate::relation::all_relations(n).iter() {
            insert(t);
        }
    } else {
        for t in enumerate_relations(n) {
            insert(&t);
        }
    }
    Ok(ModuleElement::from_terms(Basis::F, carrier, terms))
}

/// `E^r` materialized in the `F` basis: the sum of `F_t` over the weak order
/// up-set of `r`. On the poset carrier only poset keys are kept.
pub fn e_from(r: &IntegerRelation, carrier: Carrier) -> Result<ModuleElement, Error> {
    weak_order_slice(r, carrier, true)
}

/// `H^r` materialized in the `F` basis: the down-set sum.
pub fn h_from(r: &IntegerRelation, carrier: Carrier) -> Result<ModuleElement, Error> {
    weak_order_slice(r, carrier, false)
}

/// Verifies `E^r · E^s = E^(r \ s)` by expanding both sides in the `F` basis.
pub fn e_product_check(
    r: &IntegerRelation,
    s: &IntegerRelation,
    carrier: Carrier,
) -> Result<bool, Error> {
    let lhs = f_product(&e_from(r, carrier)?, &e_from(s, carrier)?)?;
    let rhs = e_from(&under_product(r, s), carrier)?;
    Ok(lhs == rhs)
}

/// Verifies `H^r · H^s = H^(r / s)` by expanding both sides in the `F` basis.
pub fn h_product_check(
    r: &IntegerRelation,
    s: &IntegerRelation,
    carrier: Carrier,
) -> Result<bool, Error> {
    let lhs = f_product(&h_from(r, carrier)?, &h_from(s, carrier)?)?;
    let rhs = h_from(&over_product(r, s), carrier)?;
    Ok(lhs == rhs)
}

/// The coproduct dual to the product on the `E` basis: a sum over all
/// primitive cuts of `t`, trivial cuts included. Keys index `E`, not `F`.
pub fn bar_coproduct_e(t: &IntegerRelation) -> TensorElement {
    let n = t.size();
    let mut terms = BTreeMap::new();
    for i in primitive_cuts(t) {
        let lo: Vec<usize> = (1..=i).collect();
        let hi: Vec<usize> = (i + 1..=n).collect();
        let key = (t.restriction(&lo), t.restriction(&hi));
        *terms.entry(key).or_insert(0) += 1;
    }
    TensorElement::from_terms(Basis::E, Carrier::IRel, terms)
}

/// Reduced form of [`bar_coproduct_e`]: the two trivial cuts are dropped.
/// Vanishes exactly on under-indecomposable relations.
pub fn reduced_bar_coproduct_e(t: &IntegerRelation) -> TensorElement {
    let n = t.size();
    let mut terms = BTreeMap::new();
    for i in primitive_cuts(t) {
        if i == 0 || i == n {
            continue;
        }
        let lo: Vec<usize> = (1..=i).collect();
        let hi: Vec<usize> = (i + 1..=n).collect();
        let key = (t.restriction(&lo), t.restriction(&hi));
        *terms.entry(key).or_insert(0) += 1;
    }
    TensorElement::from_terms(Basis::E, Carrier::IRel, terms)
}

/// Componentwise product of `E`-indexed tensors, using the single-term rule
/// `E^a · E^c = E^(a \ c)` on each side.
pub fn tensor_e_product(p: &TensorElement, q: &TensorElement) -> Result<TensorElement, Error> {
    assert_eq!(p.basis(), Basis::E);
    assert_eq!(q.basis(), Basis::E);
    let mut terms = BTreeMap::new();
    for ((a, b), cp) in p.terms() {
        for ((c, d), cq) in q.terms() {
            let key = (under_product(a, c), under_product(b, d));
            checked_accumulate(&mut terms, key, mul(cp, cq)?)?;
        }
    }
    Ok(TensorElement::from_terms(Basis::E, Carrier::IRel, terms))
}

/// Checks the unital infinitesimal relation on the `E` basis:
/// `b̄Δ(E^r · E^s) = (E^r ⊗ 1) · b̄Δ(E^s) + b̄Δ(E^r) · (1 ⊗ E^s) + E^r ⊗ E^s`,
/// with all coproducts reduced.
pub fn unital_infinitesimal_check(r: &IntegerRelation, s: &IntegerRelation) -> Result<bool, Error> {
    let lhs = reduced_bar_coproduct_e(&under_product(r, s));

    let mut r_tensor_unit = TensorElement::zero(Basis::E, Carrier::IRel);
    r_tensor_unit.add_term(r.clone(), IntegerRelation::empty(0), 1)?;
    let mut unit_tensor_s = TensorElement::zero(Basis::E, Carrier::IRel);
    unit_tensor_s.add_term(IntegerRelation::empty(0), s.clone(), 1)?;

    let mut rhs = tensor_e_product(&r_tensor_unit, &reduced_bar_coproduct_e(s))?;
    rhs.add_assign(&tensor_e_product(
        &reduced_bar_coproduct_e(r),
        &unit_tensor_s,
    )?)?;
    rhs.add_term(r.clone(), s.clone(), 1)?;
    Ok(lhs == rhs)
}

fn check_enum_limit(n: usize) -> Result<(), Error> {
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::EnumerationLimit { n, limit });
    }
    Ok(())
}

/// Counts under-indecomposable relations on `[n]` by sweeping `IRel_n` and
/// testing primitive cuts.
pub fn count_indecomposables(n: usize) -> Result<u64, Error> {
    check_enum_limit(n)?;
    if n == 0 {
        return Ok(0);
    }
    let total = relation_count(n) as u64;
    let count = (0..total)
        .into_par_iter()
        .filter(|&bits| is_under_indecomposable(&relation_from_index(n, bits)))
        .count() as u64;
    Ok(count)
}

/// Evaluates the inclusion–exclusion formula
/// `I_n = Σ_(n_1+...+n_k = n) (-1)^(k+1) R_(n_1) ... R_(n_k)` with
/// `R_m = 2^(m(m-1))`, summing over all compositions of `n`.
pub fn inclusion_exclusion_in(n: usize) -> Result<i64, Error> {
    if n == 0 || n > 8 {
        return Err(Error::Input(format!(
            "inclusion-exclusion expects 1 <= n <= 8, got {n}"
        )));
    }
    let mut sum: i64 = 0;
    // compositions of n as subsets of the n-1 possible breakpoints
    for cut_bits in 0..(1u64 << (n - 1)) {
        let mut product: i64 = 1;
        let mut part = 1usize;
        let mut k = 1usize;
        for pos in 1..n {
            if cut_bits & (1 << (pos - 1)) != 0 {
                product = product
                    .checked_mul(relation_count(part) as i64)
                    .ok_or(Error::Overflow)?;
                k += 1;
                part = 1;
            } else {
                part += 1;
            }
        }
        product = product
            .checked_mul(relation_count(part) as i64)
            .ok_or(Error::Overflow)?;
        let signed = if k % 2 == 1 { product } else { -product };
        sum = sum.checked_add(signed).ok_or(Error::Overflow)?;
    }
    Ok(sum)
}

/// Convenience singleton `F_r` on the chosen carrier.
pub fn f_singleton(r: &IntegerRelation, carrier: Carrier) -> Result<ModuleElement, Error> {
    ModuleElement::singleton(Basis::F, carrier, r.clone(), 1)
}
