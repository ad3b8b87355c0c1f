//! Hopf algebra of integer binary relations and integer posets.
//!
//! The ambient object is a reflexive binary relation on `[n]`, carried by
//! [`relation::IntegerRelation`]. The free module over all relations has a
//! product summing over shifted shuffles and a coproduct summing over total
//! cuts ([`hopf`]); non-posets span a Hopf ideal, so the same formulas run on
//! the poset quotient. Classical combinatorics enters through the
//! specialization families ([`families`]): permutations, weak order
//! intervals, and ordered partitions on the weak order side; binary trees,
//! Tamari intervals, and Schröder trees on the Tamari side. Deletion maps
//! project arbitrary posets onto families ([`projections`]), and their fibers
//! span the subalgebras of [`family_algebra`], recovering the
//! Malvenuto–Reutenauer, Loday–Ronco, and Chapoton algebras plus the interval
//! algebras, all verified exhaustively at small sizes ([`verify`]).
//!
//! ```
//! use intrel::hopf::{f_coproduct, f_product, f_singleton, Carrier};
//! use intrel::relation::IntegerRelation;
//!
//! // the chain 1 < 2 times the one-element relation expands to the
//! // sixteen relations of a weak order interval
//! let chain = IntegerRelation::from_pairs(2, &[(1, 2)])?;
//! let point = IntegerRelation::empty(1);
//! let product = f_product(
//!     &f_singleton(&chain, Carrier::IRel)?,
//!     &f_singleton(&point, Carrier::IRel)?,
//! )?;
//! assert_eq!(product.term_count(), 16);
//!
//! // four total cuts, four coproduct terms
//! let t = IntegerRelation::from_pairs(3, &[(1, 2), (1, 3), (3, 2)])?;
//! let split = f_coproduct(&f_singleton(&t, Carrier::IPos)?)?;
//! assert_eq!(split.term_count(), 4);
//! # Ok::<(), intrel::Error>(())
//! ```

pub mod error;
pub mod families;
pub mod family_algebra;
pub mod hopf;
pub mod json;
pub mod projections;
pub mod relation;
pub mod verify;

pub use error::Error;
pub use families::{
    BinaryTree, EnumerationMode, FamilyTag, OrderedPartition, Permutation, SchroderTree,
};
pub use family_algebra::{FamilyBasis, FamilyElement, FamilyTensor, SubalgebraKind};
pub use hopf::{Basis, Carrier, ModuleElement, TensorElement};
pub use projections::ProjectionMap;
pub use relation::{IntegerRelation, TotalCut};
