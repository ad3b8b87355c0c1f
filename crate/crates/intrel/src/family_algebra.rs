//! Quotient Hopf algebras on the weak order families and subalgebras spanned
//! by fiber sums, with closure verification.
//!
//! The quotient construction deletes summands outside the family; it exists
//! for the poset carrier and the weak order families but not for the Tamari
//! families, where the convolution leaves the family. Those are reached as
//! subalgebras instead: the basis element of a target is the sum of `F`
//! over the fiber of a deletion map, and products and coproducts of fiber
//! sums re-expand in the fiber-sum basis with zero residue.

use crate::error::Error;
use crate::families::{is_in_family, FamilyTag};
use crate::hopf::{f_coproduct, Basis, Carrier, ModuleElement, TensorElement};
use crate::projections::{fiber, ProjectionMap};
use crate::relation::{shifted_shuffle, total_cuts, IntegerRelation};
use std::collections::BTreeMap;

pub use crate::verify::{isomorphism_check, IsomorphismPairing};

/// A subalgebra spanned by fiber sums: the target family together with the
/// deletion map and the domain of its fibers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubalgebraKind {
    Woip,
    WoepId,
    WoepDd,
    Toep,
    Toip,
    Tofp,
}

impl SubalgebraKind {
    pub const ALL: [SubalgebraKind; 6] = [
        SubalgebraKind::Woip,
        SubalgebraKind::WoepId,
        SubalgebraKind::WoepDd,
        SubalgebraKind::Toep,
        SubalgebraKind::Toip,
        SubalgebraKind::Tofp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SubalgebraKind::Woip => "WOIP",
            SubalgebraKind::WoepId => "WOEPid",
            SubalgebraKind::WoepDd => "WOEPdd",
            SubalgebraKind::Toep => "TOEP",
            SubalgebraKind::Toip => "TOIP",
            SubalgebraKind::Tofp => "TOFP",
        }
    }

    pub fn parse(s: &str) -> Option<SubalgebraKind> {
        SubalgebraKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// Family of the basis targets.
    pub fn family(&self) -> FamilyTag {
        match self {
            SubalgebraKind::Woip => FamilyTag::Woip,
            SubalgebraKind::WoepId | SubalgebraKind::WoepDd => FamilyTag::Woep,
            SubalgebraKind::Toep => FamilyTag::Toep,
            SubalgebraKind::Toip => FamilyTag::Toip,
            SubalgebraKind::Tofp => FamilyTag::Tofp,
        }
    }

    /// The deletion map whose fibers are summed.
    pub fn map(&self) -> ProjectionMap {
        match self {
            SubalgebraKind::Woip => ProjectionMap::WoipD,
            SubalgebraKind::WoepId => ProjectionMap::WoepId,
            SubalgebraKind::WoepDd => ProjectionMap::WoepDd,
            SubalgebraKind::Toep | SubalgebraKind::Toip | SubalgebraKind::Tofp => {
                ProjectionMap::ToipD
            }
        }
    }

    /// Where the fibers live; also the quotient algebra carrying the
    /// expanded computation.
    pub fn domain(&self) -> FamilyTag {
        match self {
            SubalgebraKind::Woip | SubalgebraKind::WoepId | SubalgebraKind::WoepDd => {
                FamilyTag::IPos
            }
            SubalgebraKind::Toep => FamilyTag::Woep,
            SubalgebraKind::Toip => FamilyTag::Woip,
            SubalgebraKind::Tofp => FamilyTag::Wofp,
        }
    }
}

/// Which basis a family element is written in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FamilyBasis {
    /// Image of the `F` basis in a quotient algebra.
    Quotient(FamilyTag),
    /// Fiber-sum basis of a subalgebra.
    FiberSum(SubalgebraKind),
}

impl FamilyBasis {
    pub fn family(&self) -> FamilyTag {
        match self {
            FamilyBasis::Quotient(f) => *f,
            FamilyBasis::FiberSum(k) => k.family(),
        }
    }
}

/// Sparse integer combination of family members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyElement {
    basis: FamilyBasis,
    terms: BTreeMap<IntegerRelation, i64>,
}

impl FamilyElement {
    pub fn zero(basis: FamilyBasis) -> Self {
        FamilyElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(basis: FamilyBasis, rel: IntegerRelation, coeff: i64) -> Result<Self, Error> {
        if !is_in_family(&rel, basis.family()) {
            return Err(Error::NotInFamily(basis.family().name()));
        }
        let mut e = Self::zero(basis);
        if coeff != 0 {
            e.terms.insert(rel, coeff);
        }
        Ok(e)
    }

    pub fn basis(&self) -> FamilyBasis {
        self.basis
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

    pub fn add_term(&mut self, rel: IntegerRelation, coeff: i64) -> Result<(), Error> {
        if !is_in_family(&rel, self.basis.family()) {
            return Err(Error::NotInFamily(self.basis.family().name()));
        }
        let slot = self.terms.entry(rel).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    fn from_terms(basis: FamilyBasis, mut terms: BTreeMap<IntegerRelation, i64>) -> Self {
        terms.retain(|_, c| *c != 0);
        FamilyElement { basis, terms }
    }
}

/// Coproduct output on family elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTensor {
    basis: FamilyBasis,
    terms: BTreeMap<(IntegerRelation, IntegerRelation), i64>,
}

impl FamilyTensor {
    pub fn zero(basis: FamilyBasis) -> Self {
        FamilyTensor {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> FamilyBasis {
        self.basis
    }

    pub fn add_term(
        &mut self,
        left: IntegerRelation,
        right: IntegerRelation,
        coeff: i64,
    ) -> Result<(), Error> {
        let family = self.basis.family();
        if !is_in_family(&left, family) || !is_in_family(&right, family) {
            return Err(Error::NotInFamily(family.name()));
        }
        let slot = self.terms.entry((left, right)).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
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

    fn from_terms(
        basis: FamilyBasis,
        mut terms: BTreeMap<(IntegerRelation, IntegerRelation), i64>,
    ) -> Self {
        terms.retain(|_, c| *c != 0);
        FamilyTensor { basis, terms }
    }
}

/// Families that admit the quotient construction.
pub fn quotient_supported(family: FamilyTag) -> Result<(), Error> {
    match family {
        FamilyTag::Toep => Err(Error::TamariQuotient { family: "TOEP" }),
        FamilyTag::Toip => Err(Error::TamariQuotient { family: "TOIP" }),
        FamilyTag::Tofp => Err(Error::TamariQuotient { family: "TOFP" }),
        _ => Ok(()),
    }
}

fn carrier_for(family: FamilyTag) -> Carrier {
    if family == FamilyTag::IRel {
        Carrier::IRel
    } else {
        Carrier::IPos
    }
}

// The quotient product on raw F-expansions: multiply in the relation algebra
// and delete every summand outside the family.
fn quotient_product_raw(
    family: FamilyTag,
    a: &ModuleElement,
    b: &ModuleElement,
) -> Result<ModuleElement, Error> {
    let carrier = carrier_for(family);
    let mut terms = BTreeMap::new();
    for (r, cr) in a.terms() {
        for (s, cs) in b.terms() {
            let c = cr.checked_mul(cs).ok_or(Error::Overflow)?;
            for t in shifted_shuffle(r, s) {
                if is_in_family(&t, family) {
                    let slot = terms.entry(t).or_insert(0i64);
                    *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
                }
            }
        }
    }
    Ok(ModuleElement::from_terms(Basis::F, carrier, terms))
}

/// Product in a quotient algebra: the relation product with all summands
/// outside the family deleted. Rejected for the Tamari families, which are
/// not closed under the convolution and so admit no quotient coalgebra.
pub fn quotient_product(a: &FamilyElement, b: &FamilyElement) -> Result<FamilyElement, Error> {
    let (FamilyBasis::Quotient(fa), FamilyBasis::Quotient(fb)) = (a.basis, b.basis) else {
        return Err(Error::Input(
            "quotient_product expects quotient-style elements".into(),
        ));
    };
    if fa != fb {
        return Err(Error::MixedCarrier);
    }
    quotient_supported(fa)?;
    let carrier = carrier_for(fa);
    let ea = module_of(a, carrier)?;
    let eb = module_of(b, carrier)?;
    let product = quotient_product_raw(fa, &ea, &eb)?;
    Ok(FamilyElement::from_terms(a.basis, product.into_terms()))
}

/// Coproduct in a quotient algebra. No deletion is ever needed: restrictions
/// along total cuts stay inside each quotient family, which is asserted.
pub fn quotient_coproduct(a: &FamilyElement) -> Result<FamilyTensor, Error> {
    let FamilyBasis::Quotient(family) = a.basis else {
        return Err(Error::Input(
            "quotient_coproduct expects a quotient-style element".into(),
        ));
    };
    quotient_supported(family)?;
    let carrier = carrier_for(family);
    let cp = f_coproduct(&module_of(a, carrier)?)?;
    let mut terms = BTreeMap::new();
    for ((x, y), c) in cp.terms() {
        assert!(
            is_in_family(x, family) && is_in_family(y, family),
            "coproduct left the family {family}, which cannot happen"
        );
        terms.insert((x.clone(), y.clone()), c);
    }
    Ok(FamilyTensor::from_terms(a.basis, terms))
}

fn module_of(a: &FamilyElement, carrier: Carrier) -> Result<ModuleElement, Error> {
    let mut e = ModuleElement::zero(Basis::F, carrier);
    for (r, c) in a.terms() {
        e.add_term(r.clone(), c)?;
    }
    Ok(e)
}

/// Expands the fiber-sum basis element of `target` into the ambient `F`
/// basis: the sum of `F` over the fiber of the kind's deletion map.
pub fn fiber_sum_element(
    kind: SubalgebraKind,
    target: &IntegerRelation,
) -> Result<ModuleElement, Error> {
    if !is_in_family(target, kind.family()) {
        return Err(Error::NotInFamily(kind.family().name()));
    }
    let mut e = ModuleElement::zero(Basis::F, Carrier::IPos);
    for p in fiber(kind.map(), target, kind.domain())? {
        e.add_term(p, 1)?;
    }
    Ok(e)
}

// Regroups an ambient expansion by the deletion map, demanding that every
// fiber is either absent or fully present with one common coefficient.
fn collect_fibers(
    kind: SubalgebraKind,
    expansion: &ModuleElement,
) -> Result<BTreeMap<IntegerRelation, i64>, Error> {
    let mut collected: BTreeMap<IntegerRelation, i64> = BTreeMap::new();
    for (p, c) in expansion.terms() {
        let image = kind.map().apply(p)?;
        match collected.get(&image) {
            Some(&seen) if seen != c => {
                return Err(Error::ClosureViolation(p.canonical_label()));
            }
            Some(_) => {}
            None => {
                collected.insert(image, c);
            }
        }
    }
    // zero residue: the collected fiber sums must rebuild the expansion
    let mut rebuilt = ModuleElement::zero(Basis::F, Carrier::IPos);
    for (target, c) in &collected {
        let mut f = fiber_sum_element(kind, target)?;
        scale(&mut f, *c)?;
        rebuilt.add_assign(&f)?;
    }
    if &rebuilt != expansion {
        return Err(Error::ClosureViolation(format!(
            "fiber sums do not span the {} expansion",
            kind.name()
        )));
    }
    Ok(collected)
}

fn scale(e: &mut ModuleElement, c: i64) -> Result<(), Error> {
    let terms = std::mem::replace(e, ModuleElement::zero(e.basis(), e.carrier()));
    let carrier = terms.carrier();
    let mut scaled = BTreeMap::new();
    for (r, coeff) in terms.into_terms() {
        scaled.insert(r, coeff.checked_mul(c).ok_or(Error::Overflow)?);
    }
    *e = ModuleElement::from_terms(Basis::F, carrier, scaled);
    Ok(())
}

/// Product of two fiber-sum basis elements: expand the fibers, multiply in
/// the ambient quotient algebra, and re-collect. Closure is verified term by
/// term and a violation is an error that signals a bug.
pub fn subalgebra_product(
    kind: SubalgebraKind,
    t1: &IntegerRelation,
    t2: &IntegerRelation,
) -> Result<FamilyElement, Error> {
    let a = fiber_sum_element(kind, t1)?;
    let b = fiber_sum_element(kind, t2)?;
    let ambient = quotient_product_raw(kind.domain(), &a, &b)?;
    let collected = collect_fibers(kind, &ambient)?;
    Ok(FamilyElement::from_terms(
        FamilyBasis::FiberSum(kind),
        collected,
    ))
}

/// Coproduct of a fiber-sum basis element: the ambient coproduct of the
/// expansion regroups into complete fiber-by-fiber tensor blocks. Note the
/// blocks are indexed by images of cuts of the fiber members, which for the
/// Tamari kinds is strictly more than the total cuts of the target itself.
pub fn subalgebra_coproduct(
    kind: SubalgebraKind,
    t: &IntegerRelation,
) -> Result<FamilyTensor, Error> {
    let expansion = fiber_sum_element(kind, t)?;
    let ambient = f_coproduct(&expansion)?;

    let mut collected: BTreeMap<(IntegerRelation, IntegerRelation), i64> = BTreeMap::new();
    for ((x, y), c) in ambient.terms() {
        let key = (kind.map().apply(x)?, kind.map().apply(y)?);
        match collected.get(&key) {
            Some(&seen) if seen != c => {
                return Err(Error::ClosureViolation(format!(
                    "{} (x) {}",
                    x.canonical_label(),
                    y.canonical_label()
                )));
            }
            Some(_) => {}
            None => {
                collected.insert(key, c);
            }
        }
    }

    // zero residue: the fiber-by-fiber blocks must rebuild the expansion
    let mut rebuilt = TensorElement::zero(Basis::F, Carrier::IPos);
    for ((left, right), c) in &collected {
        let fl = fiber_sum_element(kind, left)?;
        let fr = fiber_sum_element(kind, right)?;
        for (p, cp) in fl.terms() {
            for (q, cq) in fr.terms() {
                let coeff = c
                    .checked_mul(cp)
                    .and_then(|x| x.checked_mul(cq))
                    .ok_or(Error::Overflow)?;
                rebuilt.add_term(p.clone(), q.clone(), coeff)?;
            }
        }
    }
    if rebuilt != ambient {
        return Err(Error::ClosureViolation(format!(
            "coproduct of the {} fiber sum of {} left the span",
            kind.name(),
            t.canonical_label()
        )));
    }
    Ok(FamilyTensor::from_terms(
        FamilyBasis::FiberSum(kind),
        collected,
    ))
}

/// The coproduct formula special to the kinds whose fibers live over all
/// posets: one fiber-sum tensor per total cut of the target. For those kinds
/// the cut sets of a poset and of its image agree, so this must coincide
/// with [`subalgebra_coproduct`]; the verification suites compare the two.
pub fn cut_formula_coproduct(
    kind: SubalgebraKind,
    t: &IntegerRelation,
) -> Result<FamilyTensor, Error> {
    if !is_in_family(t, kind.family()) {
        return Err(Error::NotInFamily(kind.family().name()));
    }
    let mut terms: BTreeMap<(IntegerRelation, IntegerRelation), i64> = BTreeMap::new();
    for cut in total_cuts(t) {
        let key = (t.restriction(&cut.left), t.restriction(&cut.right));
        *terms.entry(key).or_insert(0) += 1;
    }
    Ok(FamilyTensor::from_terms(FamilyBasis::FiberSum(kind), terms))
}
