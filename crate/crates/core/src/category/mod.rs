//! Products, coproducts, augmented ball spaces and their lifts.

mod augmented;
mod construct;
mod universal;

pub use augmented::{
    all_augmented, alternative_coproduct, augment, augmented_coproduct, augmented_product, final_structure,
    initial_structure, initial_structure_from, is_continuous, search_alternative_coproduct_failure,
    AlternativeCoproductFailure, AugmentedBallSpace, Sink, Source, MAX_FINAL_UNIVERSE,
};
pub use construct::{
    coproduct, coproduct_family, intersection_commutation_check, mediate_coproduct, mediate_product, product,
    product_family, Coproduct, Product, MAX_COPRODUCT_CHOICES,
};
pub use universal::{
    all_tables, continuous_augmented_tables, continuous_tables, verify_coproduct_universal, verify_final_lifts,
    verify_product_universal, verify_topologicity, TopologicityReport, UniversalPropertyReport,
};
