//! Serde representations of the wire formats.
//!
//! A relation serializes as `{"n": 3, "pairs": [[1,2],[1,3],[3,2]]}` with
//! 1-based indices, the diagonal omitted, and pairs in canonical row-major
//! order. Module, tensor and family elements carry their basis tags and a
//! canonically sorted term list. Trees serialize as nested arrays with
//! `null` leaves, permutations as value arrays, and ordered partitions as
//! arrays of sorted blocks.

use crate::error::Error;
use crate::families::{BinaryTree, FamilyTag, OrderedPartition, Permutation, SchroderTree};
use crate::family_algebra::{FamilyBasis, FamilyElement, FamilyTensor, SubalgebraKind};
use crate::hopf::{Basis, Carrier, ModuleElement, TensorElement};
use crate::relation::IntegerRelation;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Serialize for IntegerRelation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RelationRepr {
            n: self.size(),
            pairs: self.pairs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerRelation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RelationRepr::deserialize(d)?;
        IntegerRelation::from_pairs(repr.n, &repr.pairs).map_err(D::Error::custom)
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let name = match self {
            Basis::F => "F",
            Basis::E => "E",
            Basis::H => "H",
        };
        s.serialize_str(name)
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "F" => Ok(Basis::F),
            "E" => Ok(Basis::E),
            "H" => Ok(Basis::H),
            other => Err(D::Error::custom(format!("unknown basis {other:?}"))),
        }
    }
}

impl Serialize for Carrier {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Carrier::IRel => "IRel",
            Carrier::IPos => "IPos",
        })
    }
}

impl<'de> Deserialize<'de> for Carrier {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "IRel" => Ok(Carrier::IRel),
            "IPos" => Ok(Carrier::IPos),
            other => Err(D::Error::custom(format!("unknown carrier {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleTermRepr {
    rel: IntegerRelation,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ModuleElementRepr {
    basis: Basis,
    carrier: Carrier,
    terms: Vec<ModuleTermRepr>,
}

impl Serialize for ModuleElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(rel, coeff)| ModuleTermRepr {
                rel: rel.clone(),
                coeff,
            })
            .collect();
        ModuleElementRepr {
            basis: self.basis(),
            carrier: self.carrier(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ModuleElementRepr::deserialize(d)?;
        let mut e = ModuleElement::zero(repr.basis, repr.carrier);
        for term in repr.terms {
            e.add_term(term.rel, term.coeff).map_err(D::Error::custom)?;
        }
        Ok(e)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermRepr {
    left: IntegerRelation,
    right: IntegerRelation,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct TensorElementRepr {
    basis: Basis,
    carrier: Carrier,
    terms: Vec<TensorTermRepr>,
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|((l, r), coeff)| TensorTermRepr {
                left: l.clone(),
                right: r.clone(),
                coeff,
            })
            .collect();
        TensorElementRepr {
            basis: self.basis(),
            carrier: self.carrier(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TensorElementRepr::deserialize(d)?;
        let mut e = TensorElement::zero(repr.basis, repr.carrier);
        for term in repr.terms {
            e.add_term(term.left, term.right, term.coeff)
                .map_err(D::Error::custom)?;
        }
        Ok(e)
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for FamilyTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        FamilyTag::parse(&name).ok_or_else(|| D::Error::custom(format!("unknown family {name:?}")))
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyElementRepr {
    family: String,
    style: String,
    terms: Vec<ModuleTermRepr>,
}

fn basis_parts(basis: &FamilyBasis) -> (String, String) {
    match basis {
        FamilyBasis::Quotient(f) => (f.name().to_string(), "quotient".to_string()),
        FamilyBasis::FiberSum(k) => (k.name().to_string(), "fiber-sum".to_string()),
    }
}

/// Parses the `family`/`style` header of a family element.
pub fn parse_family_basis(family: &str, style: &str) -> Result<FamilyBasis, Error> {
    match style {
        "quotient" => FamilyTag::parse(family)
            .map(FamilyBasis::Quotient)
            .ok_or_else(|| Error::Input(format!("unknown family {family:?}"))),
        "fiber-sum" => SubalgebraKind::parse(family)
            .map(FamilyBasis::FiberSum)
            .ok_or_else(|| Error::Input(format!("unknown fiber-sum basis {family:?}"))),
        other => Err(Error::Input(format!("unknown style {other:?}"))),
    }
}

impl Serialize for FamilyElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (family, style) = basis_parts(&self.basis());
        let terms = self
            .terms()
            .map(|(rel, coeff)| ModuleTermRepr {
                rel: rel.clone(),
                coeff,
            })
            .collect();
        FamilyElementRepr {
            family,
            style,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FamilyElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = FamilyElementRepr::deserialize(d)?;
        let basis = parse_family_basis(&repr.family, &repr.style).map_err(D::Error::custom)?;
        let mut e = FamilyElement::zero(basis);
        for term in repr.terms {
            e.add_term(term.rel, term.coeff).map_err(D::Error::custom)?;
        }
        Ok(e)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyTensorRepr {
    family: String,
    style: String,
    terms: Vec<TensorTermRepr>,
}

impl Serialize for FamilyTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (family, style) = basis_parts(&self.basis());
        let terms = self
            .terms()
            .map(|((l, r), coeff)| TensorTermRepr {
                left: l.clone(),
                right: r.clone(),
                coeff,
            })
            .collect();
        FamilyTensorRepr {
            family,
            style,
            terms,
        }
        .serialize(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.word().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Permutation::new(Vec::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        OrderedPartition::new(Vec::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for BinaryTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BinaryTree::Leaf => s.serialize_none(),
            BinaryTree::Node(l, r) => (l, r).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let node: Option<(BinaryTree, BinaryTree)> = Option::deserialize(d)?;
        Ok(match node {
            None => BinaryTree::Leaf,
            Some((l, r)) => BinaryTree::node(l, r),
        })
    }
}

impl Serialize for SchroderTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SchroderTree::Leaf => s.serialize_none(),
            SchroderTree::Node(children) => children.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SchroderTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let node: Option<Vec<SchroderTree>> = Option::deserialize(d)?;
        match node {
            None => Ok(SchroderTree::Leaf),
            Some(children) => SchroderTree::node(children).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::f_singleton;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> IntegerRelation {
        IntegerRelation::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn relation_round_trip() {
        let r = rel(3, &[(1, 2), (1, 3), (3, 2)]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"n":3,"pairs":[[1,2],[1,3],[3,2]]}"#);
        let back: IntegerRelation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        // canonical output is byte-stable after one round trip
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn module_element_round_trip() {
        let e = f_singleton(&rel(2, &[(2, 1)]), Carrier::IPos).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: ModuleElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn family_element_headers() {
        let quo = FamilyElement::singleton(FamilyBasis::Quotient(FamilyTag::Woep), rel(1, &[]), 1)
            .unwrap();
        let json = serde_json::to_string(&quo).unwrap();
        assert!(json.contains(r#""family":"WOEP""#));
        assert!(json.contains(r#""style":"quotient""#));
        let back: FamilyElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, quo);

        let fib = FamilyElement::singleton(
            FamilyBasis::FiberSum(SubalgebraKind::WoepId),
            rel(1, &[]),
            1,
        )
        .unwrap();
        let json2 = serde_json::to_string(&fib).unwrap();
        assert!(json2.contains(r#""family":"WOEPid""#));
        assert!(json2.contains(r#""style":"fiber-sum""#));
    }

    #[test]
    fn tree_round_trips() {
        let t = BinaryTree::node(
            BinaryTree::Leaf,
            BinaryTree::node(BinaryTree::Leaf, BinaryTree::Leaf),
        );
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[null,[null,null]]");
        assert_eq!(serde_json::from_str::<BinaryTree>(&json).unwrap(), t);

        let s = SchroderTree::corolla(2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[null,null,null]");
        assert_eq!(serde_json::from_str::<SchroderTree>(&json).unwrap(), s);
        assert!(serde_json::from_str::<SchroderTree>("[null]").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<IntegerRelation>(r#"{"n":2,"pairs":[[1,5]]}"#).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,3]").is_err());
    }
}
