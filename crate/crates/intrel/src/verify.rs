//! Exhaustive verification suites over small sizes.
//!
//! Every law exposed by the library has a named check here that sweeps all
//! instances up to a size bound and reports the first counterexample as
//! JSON. The command line groups the checks into suites; each check caps its
//! own sweep so that raising `n_max` only opts into the sweeps that stay
//! tractable.

use crate::error::Error;
use crate::families::{
    all_posets, enumerate_family, from_binary_tree, from_interval, from_ordered_partition,
    from_permutation, is_in_family, maxle, minle, tamari_order, BinaryTree, EnumerationMode,
    FamilyTag, OrderedPartition, Permutation,
};
use crate::family_algebra::{
    cut_formula_coproduct, quotient_coproduct, quotient_product, subalgebra_coproduct,
    subalgebra_product, FamilyBasis, FamilyElement, SubalgebraKind,
};
use crate::hopf::{
    count_indecomposables, e_product_check, f_coproduct, f_product, f_singleton, h_product_check,
    hopf_compatible, inclusion_exclusion_in, reduced_bar_coproduct_e, unital_infinitesimal_check,
    Carrier, ModuleElement,
};
use crate::projections::{bst_insert, fibers, schroder_insert, ProjectionMap};
use crate::relation::{
    convolution, convolution_count, enumerate_relations, is_under_indecomposable, over_product,
    relation_count, shifted_shuffle, shuffle_count, total_cuts, under_product, IntegerRelation,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

/// One failed check with its first counterexample.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub counterexample: Value,
}

/// Outcome of one suite run; no failures means exit code zero.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n_max: usize,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The suites the command line exposes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Hopf,
    Bases,
    Families,
    Projections,
    Subalgebras,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lattice,
        Suite::Hopf,
        Suite::Bases,
        Suite::Families,
        Suite::Projections,
        Suite::Subalgebras,
        Suite::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Hopf => "hopf",
            Suite::Bases => "bases",
            Suite::Families => "families",
            Suite::Projections => "projections",
            Suite::Subalgebras => "subalgebras",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name().eq_ignore_ascii_case(s))
    }
}

type CheckFn = fn(usize) -> Result<Option<Value>, Error>;

struct Check {
    id: &'static str,
    cap: usize,
    run: CheckFn,
}

fn rel_json(r: &IntegerRelation) -> Value {
    serde_json::to_value(r).expect("relation serializes")
}

fn size_pairs(total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=total {
        for n in 0..=(total - m) {
            out.push((m, n));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// lattice suite
// ---------------------------------------------------------------------------

fn check_lattice_axioms(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max {
        let rels: Vec<_> = enumerate_relations(n).collect();
        for r in &rels {
            if &r.meet(r) != r || &r.join(r) != r {
                return Ok(Some(json!({"law": "idempotence", "r": rel_json(r)})));
            }
            for s in &rels {
                let m = r.meet(s);
                let j = r.join(s);
                if m != s.meet(r) || j != s.join(r) {
                    return Ok(Some(
                        json!({"law": "commutativity", "r": rel_json(r), "s": rel_json(s)}),
                    ));
                }
                if &r.meet(&j) != r || &r.join(&m) != r {
                    return Ok(Some(
                        json!({"law": "absorption", "r": rel_json(r), "s": rel_json(s)}),
                    ));
                }
                if !m.weak_le(r) || !m.weak_le(s) || !r.weak_le(&j) || !s.weak_le(&j) {
                    return Ok(Some(
                        json!({"law": "bounds", "r": rel_json(r), "s": rel_json(s)}),
                    ));
                }
                for t in &rels {
                    if r.meet(&s.meet(t)) != r.meet(s).meet(t)
                        || r.join(&s.join(t)) != r.join(s).join(t)
                    {
                        return Ok(Some(json!({
                            "law": "associativity",
                            "r": rel_json(r), "s": rel_json(s), "t": rel_json(t)
                        })));
                    }
                    if t.weak_le(r) && t.weak_le(s) && !t.weak_le(&m) {
                        return Ok(Some(
                            json!({"law": "meet is not the glb", "t": rel_json(t)}),
                        ));
                    }
                    if r.weak_le(t) && s.weak_le(t) && !j.weak_le(t) {
                        return Ok(Some(
                            json!({"law": "join is not the lub", "t": rel_json(t)}),
                        ));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_shuffle_characterization(total: usize) -> Result<Option<Value>, Error> {
    for (m, n) in size_pairs(total) {
        let lefts = crate::relation::all_relations(m);
        let rights = crate::relation::all_relations(n);
        let ambient = crate::relation::all_relations(m + n);
        let lo: Vec<usize> = (1..=m).collect();
        let hi: Vec<usize> = (m + 1..=m + n).collect();
        // the two restrictions of every ambient relation, computed once
        let split: Vec<(IntegerRelation, IntegerRelation)> = ambient
            .iter()
            .map(|t| (t.restriction(&lo), t.restriction(&hi)))
            .collect();
        for r in lefts.iter() {
            for s in rights.iter() {
                let members: std::collections::BTreeSet<_> = shifted_shuffle(r, s).collect();
                if members.len() as u128 != shuffle_count(m, n) {
                    return Ok(Some(json!({
                        "law": "shuffle cardinality", "r": rel_json(r), "s": rel_json(s),
                        "got": members.len(), "want": shuffle_count(m, n).to_string()
                    })));
                }
                let under = under_product(r, s);
                let over = over_product(r, s);
                for (t, (ta, tb)) in ambient.iter().zip(&split) {
                    let in_shuffle = members.contains(t);
                    let by_restriction = ta == r && tb == s;
                    let by_interval = under.weak_le(t) && t.weak_le(&over);
                    if in_shuffle != by_restriction || in_shuffle != by_interval {
                        return Ok(Some(json!({
                            "law": "shuffle characterization",
                            "r": rel_json(r), "s": rel_json(s), "t": rel_json(t)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_convolution_laws(total: usize) -> Result<Option<Value>, Error> {
    for (m, n) in size_pairs(total) {
        for r in enumerate_relations(m) {
            for s in enumerate_relations(n) {
                let members: Vec<_> = convolution(&r, &s).collect();
                let distinct: std::collections::BTreeSet<_> = members.iter().cloned().collect();
                if distinct.len() != members.len()
                    || members.len() as u128 != convolution_count(m, n)
                {
                    return Ok(Some(json!({
                        "law": "convolution cardinality",
                        "r": rel_json(&r), "s": rel_json(&s), "got": members.len()
                    })));
                }
                // posets propagate through the convolution in both directions
                if r.is_poset() && s.is_poset() {
                    if let Some(t) = members.iter().find(|t| !t.is_poset()) {
                        return Ok(Some(json!({
                            "law": "convolution of posets must be posets",
                            "t": rel_json(t)
                        })));
                    }
                } else if members.iter().any(|t| t.is_poset()) {
                    return Ok(Some(json!({
                        "law": "poset in convolution forces poset factors",
                        "r": rel_json(&r), "s": rel_json(&s)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_restriction_functoriality(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        for r in enumerate_relations(n) {
            for x_mask in 0u64..(1 << n) {
                let xs: Vec<usize> = (0..n)
                    .filter(|i| x_mask & (1 << i) != 0)
                    .map(|i| i + 1)
                    .collect();
                let rx = r.restriction(&xs);
                let mut y_mask = x_mask;
                loop {
                    let ys: Vec<usize> = (0..n)
                        .filter(|i| y_mask & (1 << i) != 0)
                        .map(|i| i + 1)
                        .collect();
                    let inner: Vec<usize> = ys
                        .iter()
                        .map(|y| xs.iter().position(|x| x == y).unwrap() + 1)
                        .collect();
                    if rx.restriction(&inner) != r.restriction(&ys) {
                        return Ok(Some(json!({
                            "law": "restriction functoriality",
                            "r": rel_json(&r), "xs": xs, "ys": ys
                        })));
                    }
                    if y_mask == 0 {
                        break;
                    }
                    y_mask = (y_mask - 1) & x_mask;
                }
            }
        }
    }
    Ok(None)
}

fn check_upper_ideal(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 1..=n_max {
        let rels = crate::relation::all_relations(n);
        let indec: Vec<bool> = rels.iter().map(is_under_indecomposable).collect();
        for (i, r) in rels.iter().enumerate() {
            if !indec[i] {
                continue;
            }
            for (j, s) in rels.iter().enumerate() {
                if r.weak_le(s) && !indec[j] {
                    return Ok(Some(json!({
                        "law": "indecomposables form an upper ideal",
                        "r": rel_json(r), "s": rel_json(s)
                    })));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// hopf suite
// ---------------------------------------------------------------------------

fn carrier_elements(n: usize, carrier: Carrier) -> Vec<IntegerRelation> {
    enumerate_relations(n)
        .filter(|r| carrier.admits(r))
        .collect()
}

fn check_associativity(total: usize) -> Result<Option<Value>, Error> {
    for carrier in [Carrier::IRel, Carrier::IPos] {
        for m in 0..=total {
            for n in 0..=(total - m) {
                for o in 0..=(total - m - n) {
                    for r in carrier_elements(m, carrier) {
                        let fr = f_singleton(&r, carrier)?;
                        for s in carrier_elements(n, carrier) {
                            let fs = f_singleton(&s, carrier)?;
                            let rs = f_product(&fr, &fs)?;
                            for t in carrier_elements(o, carrier) {
                                let ft = f_singleton(&t, carrier)?;
                                let left = f_product(&rs, &ft)?;
                                let right = f_product(&fr, &f_product(&fs, &ft)?)?;
                                if left != right {
                                    return Ok(Some(json!({
                                        "law": "associativity", "carrier": format!("{carrier:?}"),
                                        "r": rel_json(&r), "s": rel_json(&s), "t": rel_json(&t)
                                    })));
                                }
                                if left.terms().any(|(k, _)| k.size() != m + n + o) {
                                    return Ok(Some(json!({
                                        "law": "grading", "r": rel_json(&r), "s": rel_json(&s)
                                    })));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_coassociativity(n_max: usize) -> Result<Option<Value>, Error> {
    for carrier in [Carrier::IRel, Carrier::IPos] {
        for n in 0..=n_max {
            for t in carrier_elements(n, carrier) {
                let ft = f_singleton(&t, carrier)?;
                let cp = f_coproduct(&ft)?;
                // (Δ ⊗ id)Δ and (id ⊗ Δ)Δ as triple-split multisets
                let mut left: std::collections::BTreeMap<_, i64> = Default::default();
                let mut right: std::collections::BTreeMap<_, i64> = Default::default();
                for ((x, y), c) in cp.terms() {
                    for ((a, b), d) in f_coproduct(&f_singleton(x, carrier)?)?.terms() {
                        *left.entry((a.clone(), b.clone(), y.clone())).or_default() += c * d;
                    }
                    for ((b, cc), d) in f_coproduct(&f_singleton(y, carrier)?)?.terms() {
                        *right.entry((x.clone(), b.clone(), cc.clone())).or_default() += c * d;
                    }
                }
                left.retain(|_, v| *v != 0);
                right.retain(|_, v| *v != 0);
                if left != right {
                    return Ok(Some(json!({
                        "law": "coassociativity", "carrier": format!("{carrier:?}"),
                        "t": rel_json(&t)
                    })));
                }
                if cp.terms().any(|((x, y), _)| x.size() + y.size() != n) {
                    return Ok(Some(json!({"law": "coproduct grading", "t": rel_json(&t)})));
                }
            }
        }
    }
    Ok(None)
}

fn check_hopf_compatibility(total: usize) -> Result<Option<Value>, Error> {
    for carrier in [Carrier::IRel, Carrier::IPos] {
        for (m, n) in size_pairs(total) {
            for r in carrier_elements(m, carrier) {
                for s in carrier_elements(n, carrier) {
                    if !hopf_compatible(&r, &s, carrier)? {
                        return Ok(Some(json!({
                            "law": "hopf compatibility", "carrier": format!("{carrier:?}"),
                            "r": rel_json(&r), "s": rel_json(&s)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_product_of_intervals(total: usize) -> Result<Option<Value>, Error> {
    // products of weak order intervals are intervals with unit coefficients
    for (m, n) in size_pairs(total) {
        if m == 0 || n == 0 {
            continue; // empty factor: both sides are the same sum by the unit law
        }
        let rels_m = crate::relation::all_relations(m);
        let rels_n = crate::relation::all_relations(n);
        let rels_mn = crate::relation::all_relations(m + n);
        for r in rels_m.iter() {
            for r2 in rels_m.iter().filter(|x| r.weak_le(x)) {
                for s in rels_n.iter() {
                    for s2 in rels_n.iter().filter(|x| s.weak_le(x)) {
                        let mut left_factor =
                            ModuleElement::zero(crate::hopf::Basis::F, Carrier::IRel);
                        for u in rels_m.iter().filter(|u| r.weak_le(u) && u.weak_le(r2)) {
                            left_factor.add_term(u.clone(), 1)?;
                        }
                        let mut right_factor =
                            ModuleElement::zero(crate::hopf::Basis::F, Carrier::IRel);
                        for v in rels_n.iter().filter(|v| s.weak_le(v) && v.weak_le(s2)) {
                            right_factor.add_term(v.clone(), 1)?;
                        }
                        let product = f_product(&left_factor, &right_factor)?;
                        let lo = under_product(r, s);
                        let hi = over_product(r2, s2);
                        let mut interval =
                            ModuleElement::zero(crate::hopf::Basis::F, Carrier::IRel);
                        for t in rels_mn.iter().filter(|t| lo.weak_le(t) && t.weak_le(&hi)) {
                            interval.add_term(t.clone(), 1)?;
                        }
                        if product != interval {
                            return Ok(Some(json!({
                                "law": "product of intervals",
                                "r": rel_json(r), "r2": rel_json(r2),
                                "s": rel_json(s), "s2": rel_json(s2)
                            })));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// bases suite
// ---------------------------------------------------------------------------

fn check_multiplicative_bases(total: usize) -> Result<Option<Value>, Error> {
    for carrier in [Carrier::IRel, Carrier::IPos] {
        for (m, n) in size_pairs(total) {
            for r in carrier_elements(m, carrier) {
                for s in carrier_elements(n, carrier) {
                    if !e_product_check(&r, &s, carrier)? {
                        return Ok(Some(json!({
                            "law": "E-basis multiplicativity",
                            "carrier": format!("{carrier:?}"),
                            "r": rel_json(&r), "s": rel_json(&s)
                        })));
                    }
                    if !h_product_check(&r, &s, carrier)? {
                        return Ok(Some(json!({
                            "law": "H-basis multiplicativity",
                            "carrier": format!("{carrier:?}"),
                            "r": rel_json(&r), "s": rel_json(&s)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_bar_primitives(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 1..=n_max {
        for t in enumerate_relations(n) {
            if reduced_bar_coproduct_e(&t).is_zero() != is_under_indecomposable(&t) {
                return Ok(Some(json!({
                    "law": "primitive iff indecomposable", "t": rel_json(&t)
                })));
            }
        }
    }
    Ok(None)
}

fn check_unital_infinitesimal(total: usize) -> Result<Option<Value>, Error> {
    for (m, n) in size_pairs(total) {
        if m == 0 || n == 0 {
            continue; // the relation is stated for the reduced coproduct
        }
        for r in enumerate_relations(m) {
            for s in enumerate_relations(n) {
                if !unital_infinitesimal_check(&r, &s)? {
                    return Ok(Some(json!({
                        "law": "unital infinitesimal relation",
                        "r": rel_json(&r), "s": rel_json(&s)
                    })));
                }
            }
        }
    }
    Ok(None)
}

/// Frozen counts: `R_n` and the number of indecomposable relations.
pub const RELATION_COUNTS: [u128; 5] = [1, 4, 64, 4096, 1048576];
pub const INDECOMPOSABLE_COUNTS: [u64; 5] = [1, 3, 57, 3963, 1040097];

fn check_series_identity(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 1..=n_max.min(5) {
        let enumerated = count_indecomposables(n)?;
        let formula = inclusion_exclusion_in(n)?;
        if relation_count(n) != RELATION_COUNTS[n - 1]
            || enumerated != INDECOMPOSABLE_COUNTS[n - 1]
            || formula != enumerated as i64
        {
            return Ok(Some(json!({
                "law": "indecomposable series identity", "n": n,
                "relations": relation_count(n).to_string(),
                "enumerated": enumerated, "formula": formula
            })));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// families suite
// ---------------------------------------------------------------------------

/// Frozen family counts per size, starting at `n = 1`.
pub const WOEP_COUNTS: [usize; 5] = [1, 2, 6, 24, 120];
pub const TOEP_COUNTS: [usize; 5] = [1, 2, 5, 14, 42];
pub const WOFP_COUNTS: [usize; 4] = [1, 3, 13, 75];
pub const TOFP_COUNTS: [usize; 4] = [1, 3, 11, 45];
pub const TOIP_COUNTS: [usize; 4] = [1, 3, 13, 68];

fn check_family_counts(n_max: usize) -> Result<Option<Value>, Error> {
    let table: [(FamilyTag, &[usize]); 5] = [
        (FamilyTag::Woep, &WOEP_COUNTS),
        (FamilyTag::Toep, &TOEP_COUNTS),
        (FamilyTag::Wofp, &WOFP_COUNTS),
        (FamilyTag::Tofp, &TOFP_COUNTS),
        (FamilyTag::Toip, &TOIP_COUNTS),
    ];
    for (family, counts) in table {
        for n in 1..=n_max.min(counts.len()) {
            let got = enumerate_family(n, family, EnumerationMode::Construct)?.len();
            if got != counts[n - 1] {
                return Ok(Some(json!({
                    "law": "family count", "family": family.name(), "n": n,
                    "got": got, "want": counts[n - 1]
                })));
            }
        }
    }
    if n_max >= 3 {
        let woip3 = enumerate_family(3, FamilyTag::Woip, EnumerationMode::Construct)?.len();
        if woip3 != 17 {
            return Ok(Some(
                json!({"law": "family count", "family": "WOIP", "n": 3, "got": woip3}),
            ));
        }
    }
    Ok(None)
}

fn check_filter_vs_construct(n_max: usize) -> Result<Option<Value>, Error> {
    for family in [
        FamilyTag::Woep,
        FamilyTag::Woip,
        FamilyTag::Wofp,
        FamilyTag::Toep,
        FamilyTag::Toip,
        FamilyTag::Tofp,
    ] {
        for n in 0..=n_max.min(4) {
            let filtered = enumerate_family(n, family, EnumerationMode::Filter)?;
            let constructed = enumerate_family(n, family, EnumerationMode::Construct)?;
            if filtered != constructed {
                return Ok(Some(json!({
                    "law": "filter vs construct", "family": family.name(), "n": n,
                    "filtered": filtered.len(), "constructed": constructed.len()
                })));
            }
        }
    }
    Ok(None)
}

fn check_containments(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(5) {
        for p in all_posets(n)?.iter() {
            let woep = is_in_family(p, FamilyTag::Woep);
            let woip = is_in_family(p, FamilyTag::Woip);
            let wofp = is_in_family(p, FamilyTag::Wofp);
            let toep = is_in_family(p, FamilyTag::Toep);
            let toip = is_in_family(p, FamilyTag::Toip);
            let tofp = is_in_family(p, FamilyTag::Tofp);
            let iwoip = is_in_family(p, FamilyTag::Iwoip);
            let dwoip = is_in_family(p, FamilyTag::Dwoip);
            let ok = (!woep || woip)
                && (!wofp || woip)
                && (!toep || toip)
                && (!tofp || toip)
                && (woip == (iwoip && dwoip));
            if !ok {
                return Ok(Some(
                    json!({"law": "family containments", "p": rel_json(p)}),
                ));
            }
        }
    }
    Ok(None)
}

fn check_order_isomorphisms(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        let perms = Permutation::enumerate(n);
        for a in &perms {
            for b in &perms {
                if a.weak_le(b) != from_permutation(a).weak_le(&from_permutation(b)) {
                    return Ok(Some(json!({
                        "law": "weak order isomorphism",
                        "a": a.to_string(), "b": b.to_string()
                    })));
                }
            }
        }
        let order = tamari_order(n);
        for a in order.trees() {
            for b in order.trees() {
                if order.le(a, b) != from_binary_tree(a).weak_le(&from_binary_tree(b)) {
                    return Ok(Some(json!({"law": "tamari order isomorphism", "n": n})));
                }
            }
        }
    }
    // interval containment criterion on WOIP
    for n in 0..=n_max.min(3) {
        let perms = Permutation::enumerate(n);
        let mut intervals = Vec::new();
        for lo in &perms {
            for hi in &perms {
                if lo.weak_le(hi) {
                    intervals.push((lo.clone(), hi.clone(), from_interval(lo, hi)?));
                }
            }
        }
        for (s, s2, p) in &intervals {
            for (t, t2, q) in &intervals {
                let by_posets = p.weak_le(q);
                let by_endpoints = s.weak_le(t) && s2.weak_le(t2);
                if by_posets != by_endpoints {
                    return Ok(Some(json!({
                        "law": "interval containment criterion",
                        "lower": [s.to_string(), s2.to_string()],
                        "upper": [t.to_string(), t2.to_string()]
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_linear_extensions(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        let perms = Permutation::enumerate(n);
        for lo in &perms {
            for hi in &perms {
                if !lo.weak_le(hi) {
                    continue;
                }
                let p = from_interval(lo, hi)?;
                if minle(&p)? != from_permutation(lo) || maxle(&p)? != from_permutation(hi) {
                    return Ok(Some(json!({
                        "law": "interval endpoints are the extreme extensions",
                        "lo": lo.to_string(), "hi": hi.to_string()
                    })));
                }
            }
        }
        // maxle and minle land in WOEP, keep all relations, and only orient
        // incomparable pairs
        for p in all_posets(n)?.iter() {
            if is_in_family(p, FamilyTag::Iwoip) {
                let q = maxle(p)?;
                let extends = p.pairs().iter().all(|&(u, v)| q.contains(u, v));
                // only incomparable pairs get oriented, always decreasingly
                if !is_in_family(&q, FamilyTag::Woep)
                    || !extends
                    || q.inc() != p.inc()
                    || !p.weak_le(&q)
                {
                    return Ok(Some(json!({"law": "maxle extension", "p": rel_json(p)})));
                }
            }
            if is_in_family(p, FamilyTag::Dwoip) {
                let q = minle(p)?;
                let extends = p.pairs().iter().all(|&(u, v)| q.contains(u, v));
                if !is_in_family(&q, FamilyTag::Woep)
                    || !extends
                    || q.dec() != p.dec()
                    || !q.weak_le(p)
                {
                    return Ok(Some(json!({"law": "minle extension", "p": rel_json(p)})));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// projections suite
// ---------------------------------------------------------------------------

fn check_projection_idempotence(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        for p in all_posets(n)?.iter() {
            for map in ProjectionMap::ALL {
                let once = map.apply(p)?;
                if map.apply(&once)? != once {
                    return Ok(Some(json!({
                        "law": "idempotence", "map": map.name(), "p": rel_json(p)
                    })));
                }
                if !is_in_family(&once, map.image_family()) {
                    return Ok(Some(json!({
                        "law": "image membership", "map": map.name(), "p": rel_json(p)
                    })));
                }
            }
            let a = crate::projections::iwoip_increasing_deletion(
                &crate::projections::dwoip_decreasing_deletion(p)?,
            )?;
            let b = crate::projections::dwoip_decreasing_deletion(
                &crate::projections::iwoip_increasing_deletion(p)?,
            )?;
            if a != b {
                return Ok(Some(
                    json!({"law": "deletion commutation", "p": rel_json(p)}),
                ));
            }
        }
    }
    Ok(None)
}

fn check_bst_compatibility(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(7) {
        for sigma in Permutation::enumerate(n) {
            if !crate::projections::projection_compatibility_permutation(&sigma) {
                return Ok(Some(
                    json!({"law": "deletion matches bst insertion", "sigma": sigma.to_string()}),
                ));
            }
        }
    }
    Ok(None)
}

fn check_st_compatibility(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(5) {
        for pi in OrderedPartition::enumerate(n) {
            if !crate::projections::projection_compatibility_partition(&pi) {
                return Ok(Some(json!({
                    "law": "deletion matches schröder insertion", "pi": pi.to_string()
                })));
            }
        }
    }
    Ok(None)
}

fn check_interval_compatibility(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        let perms = Permutation::enumerate(n);
        for lo in &perms {
            for hi in &perms {
                if lo.weak_le(hi) && !crate::projections::projection_compatibility_interval(lo, hi)?
                {
                    return Ok(Some(json!({
                        "law": "deletion matches interval insertion",
                        "lo": lo.to_string(), "hi": hi.to_string()
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_deletion_windows_and_cuts(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        for p in all_posets(n)?.iter() {
            for map in [
                ProjectionMap::WoipD,
                ProjectionMap::IwoipId,
                ProjectionMap::DwoipDd,
            ] {
                for q in 1..=n {
                    for r in q..=n {
                        let window: Vec<usize> = (q..=r).collect();
                        if map.apply(&p.restriction(&window))? != map.apply(p)?.restriction(&window)
                        {
                            return Ok(Some(json!({
                                "law": "deletion commutes with windows",
                                "map": map.name(), "p": rel_json(p), "window": window
                            })));
                        }
                    }
                }
                let image = map.apply(p)?;
                if total_cuts(p) != total_cuts(&image) {
                    return Ok(Some(json!({
                        "law": "deletion preserves total cuts",
                        "map": map.name(), "p": rel_json(p)
                    })));
                }
                for cut in total_cuts(p) {
                    if image.restriction(&cut.left) != map.apply(&p.restriction(&cut.left))?
                        || image.restriction(&cut.right) != map.apply(&p.restriction(&cut.right))?
                    {
                        return Ok(Some(json!({
                            "law": "deletion commutes with cut restrictions",
                            "map": map.name(), "p": rel_json(p)
                        })));
                    }
                }
            }
            for map in [ProjectionMap::WoepId, ProjectionMap::WoepDd] {
                let image = map.apply(p)?;
                let image_cuts = total_cuts(&image);
                for cut in total_cuts(p) {
                    if !image_cuts.iter().any(|c| c.left == cut.left) {
                        return Ok(Some(json!({
                            "law": "projection keeps every total cut",
                            "map": map.name(), "p": rel_json(p)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_fiber_partitions(n_max: usize) -> Result<Option<Value>, Error> {
    for n in 0..=n_max.min(4) {
        for map in ProjectionMap::ALL {
            let table = fibers(map, FamilyTag::IPos, n)?;
            let total: usize = table.values().map(|v| v.len()).sum();
            if total != all_posets(n)?.len() {
                return Ok(Some(json!({
                    "law": "fibers partition the domain", "map": map.name(), "n": n
                })));
            }
            for (target, members) in table.iter() {
                if !is_in_family(target, map.image_family())
                    || members.iter().any(|p| &map.apply(p).unwrap() != target)
                {
                    return Ok(Some(json!({
                        "law": "fiber consistency", "map": map.name(), "target": rel_json(target)
                    })));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// subalgebras suite
// ---------------------------------------------------------------------------

fn family_members(family: FamilyTag, n: usize) -> Result<Vec<IntegerRelation>, Error> {
    enumerate_family(n, family, EnumerationMode::Construct)
}

fn check_subalgebra_closure(total: usize) -> Result<Option<Value>, Error> {
    for kind in SubalgebraKind::ALL {
        for (m, n) in size_pairs(total) {
            for t1 in family_members(kind.family(), m)? {
                for t2 in family_members(kind.family(), n)? {
                    match subalgebra_product(kind, &t1, &t2) {
                        Ok(product) => {
                            // the product is the family slice of the shuffle
                            // interval with unit coefficients
                            let lo = under_product(&t1, &t2);
                            let hi = over_product(&t1, &t2);
                            for (key, c) in product.terms() {
                                if c != 1 || !lo.weak_le(key) || !key.weak_le(&hi) {
                                    return Ok(Some(json!({
                                        "law": "product interval form", "kind": kind.name(),
                                        "t1": rel_json(&t1), "t2": rel_json(&t2),
                                        "key": rel_json(key), "coeff": c
                                    })));
                                }
                            }
                            let expected: usize = shifted_shuffle(&t1, &t2)
                                .filter(|t| is_in_family(t, kind.family()))
                                .count();
                            if product.term_count() != expected {
                                return Ok(Some(json!({
                                    "law": "product misses family members", "kind": kind.name(),
                                    "t1": rel_json(&t1), "t2": rel_json(&t2)
                                })));
                            }
                        }
                        Err(e) => {
                            return Ok(Some(json!({
                                "law": "product closure", "kind": kind.name(),
                                "t1": rel_json(&t1), "t2": rel_json(&t2), "error": e.to_string()
                            })));
                        }
                    }
                }
            }
        }
        for n in 0..=total {
            for t in family_members(kind.family(), n)? {
                if let Err(e) = subalgebra_coproduct(kind, &t) {
                    return Ok(Some(json!({
                        "law": "coproduct closure", "kind": kind.name(),
                        "t": rel_json(&t), "error": e.to_string()
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_cut_formula_for_poset_kinds(n_max: usize) -> Result<Option<Value>, Error> {
    // for the kinds fibered over all posets, the coproduct is indexed by the
    // total cuts of the target itself
    for kind in [
        SubalgebraKind::Woip,
        SubalgebraKind::WoepId,
        SubalgebraKind::WoepDd,
    ] {
        for n in 0..=n_max.min(4) {
            for t in family_members(kind.family(), n)? {
                if subalgebra_coproduct(kind, &t)? != cut_formula_coproduct(kind, &t)? {
                    return Ok(Some(json!({
                        "law": "cut formula coproduct", "kind": kind.name(), "t": rel_json(&t)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_quotient_hopf_compatibility(total: usize) -> Result<Option<Value>, Error> {
    for family in [
        FamilyTag::IPos,
        FamilyTag::Woep,
        FamilyTag::Iwoip,
        FamilyTag::Dwoip,
        FamilyTag::Woip,
        FamilyTag::Wofp,
    ] {
        for (m, n) in size_pairs(total) {
            let left: Vec<IntegerRelation> = match family {
                FamilyTag::IPos | FamilyTag::Iwoip | FamilyTag::Dwoip => {
                    enumerate_family(m, family, EnumerationMode::Filter)?
                }
                _ => family_members(family, m)?,
            };
            let right: Vec<IntegerRelation> = match family {
                FamilyTag::IPos | FamilyTag::Iwoip | FamilyTag::Dwoip => {
                    enumerate_family(n, family, EnumerationMode::Filter)?
                }
                _ => family_members(family, n)?,
            };
            for x in &left {
                let fx = FamilyElement::singleton(FamilyBasis::Quotient(family), x.clone(), 1)?;
                for y in &right {
                    let fy = FamilyElement::singleton(FamilyBasis::Quotient(family), y.clone(), 1)?;
                    let lhs = quotient_coproduct(&quotient_product(&fx, &fy)?)?;
                    // componentwise product of the two coproducts inside the
                    // quotient
                    let cx = quotient_coproduct(&fx)?;
                    let cy = quotient_coproduct(&fy)?;
                    let mut rhs: std::collections::BTreeMap<
                        (IntegerRelation, IntegerRelation),
                        i64,
                    > = Default::default();
                    for ((a, b), c1) in cx.terms() {
                        for ((c, d), c2) in cy.terms() {
                            for l in shifted_shuffle(a, c).filter(|t| is_in_family(t, family)) {
                                for r in shifted_shuffle(b, d).filter(|t| is_in_family(t, family)) {
                                    *rhs.entry((l.clone(), r)).or_default() += c1 * c2;
                                }
                            }
                        }
                    }
                    rhs.retain(|_, v| *v != 0);
                    let lhs_map: std::collections::BTreeMap<_, _> =
                        lhs.terms().map(|(k, c)| (k.clone(), c)).collect();
                    if lhs_map != rhs {
                        return Ok(Some(json!({
                            "law": "quotient hopf compatibility", "family": family.name(),
                            "x": rel_json(x), "y": rel_json(y)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_quotient_vs_subalgebra(total: usize) -> Result<Option<Value>, Error> {
    // structure constants of the quotient basis match the fiber-sum basis
    let pairs = [
        (FamilyTag::Woip, SubalgebraKind::Woip),
        (FamilyTag::Woep, SubalgebraKind::WoepId),
        (FamilyTag::Woep, SubalgebraKind::WoepDd),
    ];
    for (family, kind) in pairs {
        for (m, n) in size_pairs(total) {
            for t1 in family_members(family, m)? {
                let q1 = FamilyElement::singleton(FamilyBasis::Quotient(family), t1.clone(), 1)?;
                for t2 in family_members(family, n)? {
                    let q2 =
                        FamilyElement::singleton(FamilyBasis::Quotient(family), t2.clone(), 1)?;
                    let quo: Vec<_> = quotient_product(&q1, &q2)?
                        .terms()
                        .map(|(k, c)| (k.clone(), c))
                        .collect();
                    let sub: Vec<_> = subalgebra_product(kind, &t1, &t2)?
                        .terms()
                        .map(|(k, c)| (k.clone(), c))
                        .collect();
                    if quo != sub {
                        return Ok(Some(json!({
                            "law": "quotient and subalgebra structure constants",
                            "kind": kind.name(), "t1": rel_json(&t1), "t2": rel_json(&t2)
                        })));
                    }
                }
            }
            for t in family_members(family, m)? {
                let q = FamilyElement::singleton(FamilyBasis::Quotient(family), t.clone(), 1)?;
                let quo: Vec<_> = quotient_coproduct(&q)?
                    .terms()
                    .map(|(k, c)| (k.clone(), c))
                    .collect();
                let sub: Vec<_> = subalgebra_coproduct(kind, &t)?
                    .terms()
                    .map(|(k, c)| (k.clone(), c))
                    .collect();
                if quo != sub {
                    return Ok(Some(json!({
                        "law": "quotient and subalgebra coproduct constants",
                        "kind": kind.name(), "t": rel_json(&t)
                    })));
                }
            }
        }
    }
    Ok(None)
}

fn check_quotient_interval_form(total: usize) -> Result<Option<Value>, Error> {
    for family in [
        FamilyTag::IPos,
        FamilyTag::Woep,
        FamilyTag::Iwoip,
        FamilyTag::Dwoip,
        FamilyTag::Woip,
        FamilyTag::Wofp,
    ] {
        for (m, n) in size_pairs(total) {
            let left = enumerate_family(m, family, EnumerationMode::Filter)?;
            let right = enumerate_family(n, family, EnumerationMode::Filter)?;
            let ambient = enumerate_family(m + n, family, EnumerationMode::Filter)?;
            for x in &left {
                let fx = FamilyElement::singleton(FamilyBasis::Quotient(family), x.clone(), 1)?;
                for y in &right {
                    let fy = FamilyElement::singleton(FamilyBasis::Quotient(family), y.clone(), 1)?;
                    let product = quotient_product(&fx, &fy)?;
                    let lo = under_product(x, y);
                    let hi = over_product(x, y);
                    let interval: Vec<IntegerRelation> = ambient
                        .iter()
                        .filter(|t| lo.weak_le(t) && t.weak_le(&hi))
                        .cloned()
                        .collect();
                    let got: Vec<IntegerRelation> =
                        product.terms().map(|(k, _)| k.clone()).collect();
                    if got != interval || product.terms().any(|(_, c)| c != 1) {
                        return Ok(Some(json!({
                            "law": "quotient product interval form", "family": family.name(),
                            "x": rel_json(x), "y": rel_json(y)
                        })));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_negative_control(_: usize) -> Result<Option<Value>, Error> {
    let witness = IntegerRelation::from_pairs(3, &[(1, 2), (1, 3), (3, 2)])?;
    let left = IntegerRelation::empty(1);
    let right = IntegerRelation::from_pairs(2, &[(2, 1)])?;
    for family in [FamilyTag::Toep, FamilyTag::Toip, FamilyTag::Tofp] {
        if !is_in_family(&left, family) || !is_in_family(&right, family) {
            return Ok(Some(
                json!({"law": "negative control factors", "family": family.name()}),
            ));
        }
        if is_in_family(&witness, family) {
            return Ok(Some(
                json!({"law": "negative control witness", "family": family.name()}),
            ));
        }
    }
    if !convolution(&left, &right).any(|t| t == witness) {
        return Ok(Some(json!({"law": "negative control membership"})));
    }
    if crate::family_algebra::quotient_supported(FamilyTag::Toep).is_ok() {
        return Ok(Some(json!({"law": "tamari quotient must be refused"})));
    }
    Ok(None)
}

/// The four classical pairings whose termwise agreement is re-verified.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IsomorphismPairing {
    MalvenutoReutenauerWoep,
    ChapotonWofp,
    LodayRoncoToep,
    ChapotonSchroderTofp,
}

impl IsomorphismPairing {
    pub const ALL: [IsomorphismPairing; 4] = [
        IsomorphismPairing::MalvenutoReutenauerWoep,
        IsomorphismPairing::ChapotonWofp,
        IsomorphismPairing::LodayRoncoToep,
        IsomorphismPairing::ChapotonSchroderTofp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IsomorphismPairing::MalvenutoReutenauerWoep => "MR-WOEP",
            IsomorphismPairing::ChapotonWofp => "Chapoton-WOFP",
            IsomorphismPairing::LodayRoncoToep => "LodayRonco-TOEP",
            IsomorphismPairing::ChapotonSchroderTofp => "ChapotonSchroder-TOFP",
        }
    }
}

/// Verifies that the classical structure maps termwise onto the family
/// algebra under the poset interpretation, for all sizes with `m + n` at
/// most `n_max`.
pub fn isomorphism_check(pairing: IsomorphismPairing, n_max: usize) -> Result<bool, Error> {
    match pairing {
        IsomorphismPairing::MalvenutoReutenauerWoep => {
            for (m, n) in size_pairs(n_max) {
                for sigma in Permutation::enumerate(m) {
                    let ps = from_permutation(&sigma);
                    for tau in Permutation::enumerate(n) {
                        let pt = from_permutation(&tau);
                        let classical: std::collections::BTreeSet<_> = sigma
                            .shifted_shuffle(&tau)
                            .iter()
                            .map(from_permutation)
                            .collect();
                        let algebraic: std::collections::BTreeSet<_> = shifted_shuffle(&ps, &pt)
                            .filter(|t| is_in_family(t, FamilyTag::Woep))
                            .collect();
                        if classical != algebraic {
                            return Ok(false);
                        }
                        let classical_conv: std::collections::BTreeSet<_> = sigma
                            .convolution(&tau)
                            .iter()
                            .map(from_permutation)
                            .collect();
                        let algebraic_conv: std::collections::BTreeSet<_> =
                            convolution(&ps, &pt).collect();
                        if classical_conv != algebraic_conv {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        IsomorphismPairing::ChapotonWofp => {
            for (m, n) in size_pairs(n_max) {
                for pi in OrderedPartition::enumerate(m) {
                    let pp = from_ordered_partition(&pi);
                    for rho in OrderedPartition::enumerate(n) {
                        let pr = from_ordered_partition(&rho);
                        let classical: std::collections::BTreeSet<_> = pi
                            .shifted_shuffle(&rho)
                            .iter()
                            .map(from_ordered_partition)
                            .collect();
                        let algebraic: std::collections::BTreeSet<_> = shifted_shuffle(&pp, &pr)
                            .filter(|t| is_in_family(t, FamilyTag::Wofp))
                            .collect();
                        if classical != algebraic {
                            return Ok(false);
                        }
                        let classical_conv: std::collections::BTreeSet<_> = pi
                            .convolution(&rho)
                            .iter()
                            .map(from_ordered_partition)
                            .collect();
                        let algebraic_conv: std::collections::BTreeSet<_> =
                            convolution(&pp, &pr).collect();
                        if classical_conv != algebraic_conv {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        IsomorphismPairing::LodayRoncoToep => {
            Ok(toep_permutation_level(n_max)? && toep_permutation_level_coproduct(n_max)?)
        }
        IsomorphismPairing::ChapotonSchroderTofp => {
            Ok(tofp_partition_level(n_max)? && tofp_partition_level_coproduct(n_max)?)
        }
    }
}

/// Checks the tree algebra at the permutation level: shuffles of fibers
/// regroup into complete insertion fibers, matching the fiber-sum product.
pub fn toep_permutation_level(total_max: usize) -> Result<bool, Error> {
    use std::collections::BTreeMap;
    for (m, n) in size_pairs(total_max) {
        let trees_m = BinaryTree::enumerate(m);
        let trees_n = BinaryTree::enumerate(n);
        let mut fibers_m: BTreeMap<BinaryTree, Vec<Permutation>> = BTreeMap::new();
        for sigma in Permutation::enumerate(m) {
            fibers_m.entry(bst_insert(&sigma)).or_default().push(sigma);
        }
        let mut fibers_n: BTreeMap<BinaryTree, Vec<Permutation>> = BTreeMap::new();
        for tau in Permutation::enumerate(n) {
            fibers_n.entry(bst_insert(&tau)).or_default().push(tau);
        }
        let mut fibers_mn: BTreeMap<BinaryTree, Vec<Permutation>> = BTreeMap::new();
        for rho in Permutation::enumerate(m + n) {
            fibers_mn.entry(bst_insert(&rho)).or_default().push(rho);
        }
        let trees_mn = BinaryTree::enumerate(m + n);
        for t1 in &trees_m {
            let p1 = from_binary_tree(t1);
            let lo_w: Vec<usize> = (1..=m).collect();
            let hi_w: Vec<usize> = (m + 1..=m + n).collect();
            for t2 in &trees_n {
                let p2 = from_binary_tree(t2);
                let mut seen: BTreeMap<Permutation, usize> = BTreeMap::new();
                for sigma in &fibers_m[t1] {
                    for tau in &fibers_n[t2] {
                        for rho in sigma.shifted_shuffle(tau) {
                            *seen.entry(rho).or_default() += 1;
                        }
                    }
                }
                if seen.values().any(|&c| c != 1) {
                    return Ok(false);
                }
                // group the shuffle by insertion fibers
                let mut grouped: BTreeMap<BinaryTree, usize> = BTreeMap::new();
                for rho in seen.keys() {
                    *grouped.entry(bst_insert(rho)).or_default() += 1;
                }
                for (tree, count) in &grouped {
                    if *count != fibers_mn[tree].len() {
                        return Ok(false); // partial fiber: not in the span
                    }
                }
                // the trees that appear are exactly the family slice of the
                // shuffle, recognized by restrictions
                let expected: std::collections::BTreeSet<BinaryTree> = trees_mn
                    .iter()
                    .filter(|t| {
                        let pt = from_binary_tree(t);
                        pt.restriction(&lo_w) == p1 && pt.restriction(&hi_w) == p2
                    })
                    .cloned()
                    .collect();
                let got: std::collections::BTreeSet<BinaryTree> = grouped.keys().cloned().collect();
                if got != expected {
                    return Ok(false);
                }
                // agreement with the poset-level product at small sizes
                if m + n <= 4 {
                    let sub = subalgebra_product(SubalgebraKind::Toep, &p1, &p2)?;
                    let sub_keys: std::collections::BTreeSet<IntegerRelation> =
                        sub.terms().map(|(k, _)| k.clone()).collect();
                    let got_keys: std::collections::BTreeSet<IntegerRelation> =
                        got.iter().map(from_binary_tree).collect();
                    if sub_keys != got_keys {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn standardized(word: &[usize]) -> Permutation {
    let mut sorted: Vec<usize> = word.to_vec();
    sorted.sort_unstable();
    let ranked: Vec<usize> = word
        .iter()
        .map(|v| sorted.iter().position(|w| w == v).unwrap() + 1)
        .collect();
    Permutation::new(ranked).expect("standardization yields a permutation")
}

/// Coproduct counterpart of [`toep_permutation_level`]: splitting every
/// fiber member regroups into complete fiber pairs, matching the fiber-sum
/// coproduct.
pub fn toep_permutation_level_coproduct(n_max: usize) -> Result<bool, Error> {
    use std::collections::BTreeMap;
    for total in 0..=n_max {
        let mut fibers_by_size: Vec<BTreeMap<BinaryTree, Vec<Permutation>>> = Vec::new();
        for k in 0..=total {
            let mut table: BTreeMap<BinaryTree, Vec<Permutation>> = BTreeMap::new();
            for sigma in Permutation::enumerate(k) {
                table.entry(bst_insert(&sigma)).or_default().push(sigma);
            }
            fibers_by_size.push(table);
        }
        for tree in BinaryTree::enumerate(total) {
            // the coproduct of a word splits it at every position, with the
            // two sides standardized
            let mut classical: BTreeMap<(BinaryTree, BinaryTree), i64> = BTreeMap::new();
            for rho in &fibers_by_size[total][&tree] {
                for k in 0..=total {
                    let alpha = standardized(&rho.word()[..k]);
                    let beta = standardized(&rho.word()[k..]);
                    *classical
                        .entry((bst_insert(&alpha), bst_insert(&beta)))
                        .or_default() += 1;
                }
            }
            // each block must be a full fiber pair with one multiplicity
            let mut blocks: BTreeMap<(BinaryTree, BinaryTree), i64> = BTreeMap::new();
            for ((a, b), c) in &classical {
                let block = fibers_by_size[a.size()][a].len() as i64
                    * fibers_by_size[b.size()][b].len() as i64;
                if c % block != 0 {
                    return Ok(false);
                }
                blocks.insert((a.clone(), b.clone()), c / block);
            }
            let algebraic = subalgebra_coproduct(SubalgebraKind::Toep, &from_binary_tree(&tree))?;
            let algebraic_map: BTreeMap<(BinaryTree, BinaryTree), i64> = algebraic
                .terms()
                .map(|((l, r), c)| {
                    (
                        (
                            crate::families::to_binary_tree(l).expect("left key is a tree poset"),
                            crate::families::to_binary_tree(r).expect("right key is a tree poset"),
                        ),
                        c,
                    )
                })
                .collect();
            if blocks != algebraic_map {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn tofp_partition_level(total_max: usize) -> Result<bool, Error> {
    use std::collections::BTreeMap;
    for (m, n) in size_pairs(total_max) {
        let mut fibers_m: BTreeMap<IntegerRelation, Vec<OrderedPartition>> = BTreeMap::new();
        for pi in OrderedPartition::enumerate(m) {
            fibers_m
                .entry(crate::families::from_schroder_tree(&schroder_insert(&pi)))
                .or_default()
                .push(pi);
        }
        let mut fibers_n: BTreeMap<IntegerRelation, Vec<OrderedPartition>> = BTreeMap::new();
        for rho in OrderedPartition::enumerate(n) {
            fibers_n
                .entry(crate::families::from_schroder_tree(&schroder_insert(&rho)))
                .or_default()
                .push(rho);
        }
        let mut fibers_mn: BTreeMap<IntegerRelation, Vec<OrderedPartition>> = BTreeMap::new();
        for tau in OrderedPartition::enumerate(m + n) {
            fibers_mn
                .entry(crate::families::from_schroder_tree(&schroder_insert(&tau)))
                .or_default()
                .push(tau);
        }
        for (s1, fib1) in &fibers_m {
            for (s2, fib2) in &fibers_n {
                let mut seen: BTreeMap<OrderedPartition, usize> = BTreeMap::new();
                for pi in fib1 {
                    for rho in fib2 {
                        for tau in pi.shifted_shuffle(rho) {
                            *seen.entry(tau).or_default() += 1;
                        }
                    }
                }
                if seen.values().any(|&c| c != 1) {
                    return Ok(false);
                }
                let mut grouped: BTreeMap<IntegerRelation, usize> = BTreeMap::new();
                for tau in seen.keys() {
                    *grouped
                        .entry(crate::families::from_schroder_tree(&schroder_insert(tau)))
                        .or_default() += 1;
                }
                for (target, count) in &grouped {
                    if *count != fibers_mn[target].len() {
                        return Ok(false);
                    }
                }
                if m + n <= 4 {
                    let sub = subalgebra_product(SubalgebraKind::Tofp, s1, s2)?;
                    let sub_keys: std::collections::BTreeSet<IntegerRelation> =
                        sub.terms().map(|(k, _)| k.clone()).collect();
                    let got_keys: std::collections::BTreeSet<IntegerRelation> =
                        grouped.keys().cloned().collect();
                    if sub_keys != got_keys {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn standardized_partition(blocks: &[Vec<usize>]) -> OrderedPartition {
    let mut values: Vec<usize> = blocks.iter().flatten().copied().collect();
    values.sort_unstable();
    let ranked: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| values.iter().position(|w| w == v).unwrap() + 1)
                .collect()
        })
        .collect();
    OrderedPartition::new(ranked).expect("standardization yields an ordered partition")
}

/// Coproduct counterpart of [`tofp_partition_level`]: splitting the block
/// sequence of every fiber member regroups into complete fiber pairs,
/// matching the fiber-sum coproduct.
pub fn tofp_partition_level_coproduct(n_max: usize) -> Result<bool, Error> {
    use std::collections::BTreeMap;
    for total in 0..=n_max {
        let mut fibers_by_size: Vec<BTreeMap<IntegerRelation, Vec<OrderedPartition>>> = Vec::new();
        for k in 0..=total {
            let mut table: BTreeMap<IntegerRelation, Vec<OrderedPartition>> = BTreeMap::new();
            for pi in OrderedPartition::enumerate(k) {
                table
                    .entry(crate::families::from_schroder_tree(&schroder_insert(&pi)))
                    .or_default()
                    .push(pi);
            }
            fibers_by_size.push(table);
        }
        let targets: Vec<IntegerRelation> = fibers_by_size[total].keys().cloned().collect();
        for target in targets {
            let mut classical: BTreeMap<(IntegerRelation, IntegerRelation), i64> = BTreeMap::new();
            for pi in &fibers_by_size[total][&target] {
                let blocks = pi.blocks();
                for j in 0..=blocks.len() {
                    let alpha = standardized_partition(&blocks[..j]);
                    let beta = standardized_partition(&blocks[j..]);
                    let key = (
                        crate::families::from_schroder_tree(&schroder_insert(&alpha)),
                        crate::families::from_schroder_tree(&schroder_insert(&beta)),
                    );
                    *classical.entry(key).or_default() += 1;
                }
            }
            let mut blocks_map: BTreeMap<(IntegerRelation, IntegerRelation), i64> = BTreeMap::new();
            for ((a, b), c) in &classical {
                let block = fibers_by_size[a.size()][a].len() as i64
                    * fibers_by_size[b.size()][b].len() as i64;
                if c % block != 0 {
                    return Ok(false);
                }
                blocks_map.insert((a.clone(), b.clone()), c / block);
            }
            let algebraic = subalgebra_coproduct(SubalgebraKind::Tofp, &target)?;
            let algebraic_map: BTreeMap<(IntegerRelation, IntegerRelation), i64> =
                algebraic.terms().map(|(k, c)| (k.clone(), c)).collect();
            if blocks_map != algebraic_map {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_isomorphisms(n_max: usize) -> Result<Option<Value>, Error> {
    for pairing in IsomorphismPairing::ALL {
        if !isomorphism_check(pairing, n_max.min(4))? {
            return Ok(Some(
                json!({"law": "classical isomorphism", "pairing": pairing.name()}),
            ));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// suite runner
// ---------------------------------------------------------------------------

fn checks_for(suite: Suite) -> Vec<Check> {
    let lattice = vec![
        Check {
            id: "lattice/axioms",
            cap: 3,
            run: check_lattice_axioms,
        },
        Check {
            id: "lattice/shuffle-characterization",
            cap: 4,
            run: check_shuffle_characterization,
        },
        Check {
            id: "lattice/convolution-laws",
            cap: 4,
            run: check_convolution_laws,
        },
        Check {
            id: "lattice/restriction-functoriality",
            cap: 4,
            run: check_restriction_functoriality,
        },
        Check {
            id: "lattice/upper-ideal",
            cap: 4,
            run: check_upper_ideal,
        },
    ];
    let hopf = vec![
        Check {
            id: "hopf/associativity",
            cap: 4,
            run: check_associativity,
        },
        Check {
            id: "hopf/coassociativity",
            cap: 4,
            run: check_coassociativity,
        },
        Check {
            id: "hopf/compatibility",
            cap: 4,
            run: check_hopf_compatibility,
        },
        Check {
            id: "hopf/product-of-intervals",
            cap: 4,
            run: check_product_of_intervals,
        },
    ];
    let bases = vec![
        Check {
            id: "bases/multiplicativity",
            cap: 4,
            run: check_multiplicative_bases,
        },
        Check {
            id: "bases/bar-primitives",
            cap: 4,
            run: check_bar_primitives,
        },
        Check {
            id: "bases/unital-infinitesimal",
            cap: 3,
            run: check_unital_infinitesimal,
        },
        Check {
            id: "bases/series-identity",
            cap: 5,
            run: check_series_identity,
        },
    ];
    let families = vec![
        Check {
            id: "families/counts",
            cap: 5,
            run: check_family_counts,
        },
        Check {
            id: "families/filter-vs-construct",
            cap: 4,
            run: check_filter_vs_construct,
        },
        Check {
            id: "families/containments",
            cap: 5,
            run: check_containments,
        },
        Check {
            id: "families/order-isomorphisms",
            cap: 4,
            run: check_order_isomorphisms,
        },
        Check {
            id: "families/linear-extensions",
            cap: 4,
            run: check_linear_extensions,
        },
    ];
    let projections = vec![
        Check {
            id: "projections/idempotence",
            cap: 4,
            run: check_projection_idempotence,
        },
        Check {
            id: "projections/bst-compatibility",
            cap: 6,
            run: check_bst_compatibility,
        },
        Check {
            id: "projections/st-compatibility",
            cap: 5,
            run: check_st_compatibility,
        },
        Check {
            id: "projections/interval-compatibility",
            cap: 4,
            run: check_interval_compatibility,
        },
        Check {
            id: "projections/windows-and-cuts",
            cap: 4,
            run: check_deletion_windows_and_cuts,
        },
        Check {
            id: "projections/fiber-partitions",
            cap: 4,
            run: check_fiber_partitions,
        },
    ];
    let subalgebras = vec![
        Check {
            id: "subalgebras/closure",
            cap: 4,
            run: check_subalgebra_closure,
        },
        Check {
            id: "subalgebras/cut-formula",
            cap: 4,
            run: check_cut_formula_for_poset_kinds,
        },
        Check {
            id: "subalgebras/quotient-hopf-compatibility",
            cap: 4,
            run: check_quotient_hopf_compatibility,
        },
        Check {
            id: "subalgebras/quotient-vs-subalgebra",
            cap: 4,
            run: check_quotient_vs_subalgebra,
        },
        Check {
            id: "subalgebras/quotient-interval-form",
            cap: 4,
            run: check_quotient_interval_form,
        },
        Check {
            id: "subalgebras/negative-control",
            cap: 4,
            run: check_negative_control,
        },
        Check {
            id: "subalgebras/isomorphisms",
            cap: 4,
            run: check_isomorphisms,
        },
    ];
    match suite {
        Suite::Lattice => lattice,
        Suite::Hopf => hopf,
        Suite::Bases => bases,
        Suite::Families => families,
        Suite::Projections => projections,
        Suite::Subalgebras => subalgebras,
        Suite::All => {
            let mut all = lattice;
            all.extend(hopf);
            all.extend(bases);
            all.extend(families);
            all.extend(projections);
            all.extend(subalgebras);
            all
        }
    }
}

/// Runs one suite with every check capped at `min(n_max, check cap)`. Checks
/// fan out over the worker pool; results merge in declaration order.
pub fn run_suite(suite: Suite, n_max: usize) -> VerificationReport {
    let start = Instant::now();
    let checks = checks_for(suite);
    let results: Vec<(String, Result<Option<Value>, Error>)> = checks
        .par_iter()
        .map(|check| (check.id.to_string(), (check.run)(n_max.min(check.cap))))
        .collect();
    let mut failures = Vec::new();
    for (id, outcome) in results {
        match outcome {
            Ok(None) => {}
            Ok(Some(counterexample)) => failures.push(Failure {
                check: id,
                counterexample,
            }),
            Err(e) => failures.push(Failure {
                check: id,
                counterexample: json!({"error": e.to_string()}),
            }),
        }
    }
    VerificationReport {
        suite: suite.name().to_string(),
        n_max,
        checks_run: checks.len(),
        failures,
        wall_ms: start.elapsed().as_millis(),
    }
}
