//! Finite 2-categories and the reflection of 2-categories into 2-preorders.
//!
//! The crate covers validation of finite 2-category data, pointwise limits,
//! the reflection with its unit and connected components, five morphism
//! classes (effective descent, vertical, stably-vertical, trivial covering,
//! covering) each paired with a brute-force oracle where one exists, and the
//! reflective and monotone-light factorizations.

pub mod axioms;
pub mod category;
pub mod cells;
pub mod classify;
pub mod coproduct;
pub mod document;
pub mod error;
pub mod factorize;
pub mod functor;
pub mod gallery;
pub mod limits;
pub mod presentation;
pub mod random;
pub mod reflection;
pub mod search;

pub use axioms::{validate, AxiomReport, Counterexample, Law, LawVerdict};
pub use category::{RelaxedTwoCategory, TwoCategory};
pub use cells::{Level, ObjIx, OneIx, TwoCategoryBuilder, TwoIx, TwoPrecategory};
pub use error::{Error, Result};
pub use functor::{
    compose_two_functors, identity_two_functor, validate_two_functor, FunctorViolation, Morphism,
    RelaxedMorphism, StructureMap, TwoFunctor,
};
pub use search::{
    enumerate_functors, enumerate_functors_where, find_isomorphism, is_isomorphic, FunctorSearch,
    SearchCap,
};
pub use classify::{
    classify, covering_oracle, is_covering, is_edm, is_stably_vertical, is_trivial_covering,
    is_vertical, trivial_covering_oracle, ClassificationReport, Predicate,
};
pub use coproduct::coproduct;
pub use factorize::{
    monotone_light_factor, reflective_factor, verify_factorization, FactorizationSystem,
    MLFactorization,
};
pub use gallery::{edm_cover, make_h4, make_h4_na, make_t, make_tn, make_v4, make_vh4, EdmCover};
pub use limits::{
    is_pullback_square, product, pullback, relaxed_pullback, terminal, FiniteSquare, Pullback,
    PullbackResult, RelaxedPullback,
};
pub use presentation::{free_two_preorder, TwoGraphPresentation};
pub use random::{random_instance, Budget};
pub use reflection::{
    check_semi_left_exact, check_stable_units, connected_component, in_class_e, is_two_preorder,
    reflect, underlying_two_graph, GraphMorphism, ReflectionResult, TwoReflexiveGraph,
};
