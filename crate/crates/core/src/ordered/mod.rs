//! Lexicographic ordered groups, their ultrametric balls and bar-bells.

mod balls;
mod barbell;
mod element;

pub use balls::{Component, CosetPosition, OrderInterval, UltraBall};
pub use barbell::{
    agrees_on_samples, check_barbell_properties, convexity, is_convex_union, normalize_to_barbell, sample_points,
    union_contains, witness_separates, BarBell, BarBellPropertyReport, Convexity,
};
pub use element::{ratio, ultrametric, LexGroupElement, Rational, ValueLevel};
