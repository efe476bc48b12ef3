//! Finite Brandt groupoids and vector groupoids over prime fields `Z_p`.
//!
//! Every structure is small enough to enumerate, so each law is checked
//! exhaustively and failures come back as concrete witnesses in an
//! [`AxiomReport`].

pub mod constructions;
pub mod dsl;
pub mod error;
pub mod field;
pub mod groupoid;
pub mod linalg;
pub mod morphism;
pub mod notation;
pub mod partial_bijection;
pub mod report;
pub mod space;
pub mod vector_groupoid;

pub use constructions::{
    direct_product, null_vg, pair_vg, sign_group, single_unit, symmetry_groupoid, trivial_tvg, v3, vpq, whitney_sum,
    Built, ConstructionSpec, Constructor, DirectProduct, WhitneySum,
};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use groupoid::{build_groupoid, verify_brandt, verify_calculus, verify_transitive, FiniteGroupoid, GroupoidTables};
pub use linalg::{FLinearMap, FVector, Subspace};
pub use morphism::{
    anchor_morphism, product_projections, reflection_counterexample, sgn_sharp, verify_homomorphism, verify_morphism,
    verify_universal, verify_vector_morphism, whitney_projections, whitney_universal, GroupoidMorphism, VectorMorphism,
};
pub use partial_bijection::{sg_cardinality, PartialBijection};
pub use report::{AxiomReport, CheckOptions, Status, Witness};
pub use space::{check_linear, AbstractSpace, CoordSpace, SpaceRef};
pub use vector_groupoid::{
    attach_vector_structure, fibre_translations, isotropy_vector_groupoid, verify_fibre_translations,
    verify_structural_consequences, verify_vector_axioms, FibreTranslation, TranslationKind, VectorGroupoid,
};
