//! Exact models of infinite examples: rational set algebra, the prime-gap
//! balls on Q, and designated nests with decidable emptiness.

mod discrete;
mod example;
mod nest;
mod primes;
mod rset;

pub use discrete::{DiscreteSet, FamilyRelation, GeometricFamily};
pub use example::{
    build_example_ball, example_certificate, prime_interval, removal_start, removed_family, removed_points_below_next,
    verify_example_incomparable, verify_example_union, BallSummary, ExampleCertificate, IncomparabilityWitness,
    PrefixIntersection, UnionCheck, WITNESS_DENOMINATOR_LIMIT,
};
pub use nest::{
    coproduct_with_complete_component, limit_in_prefix, nest_verdict, prefix_consistency, prefix_nested,
    ComponentVerdict, CoproductComponent, CoproductNestReport, NestDescriptor, NestMember, NestPoint, NestVerdict,
    PrefixReport, MAX_PREFIX,
};
pub use primes::{exponent_vector, factorize, nth_prime, MAX_PRIME_INDEX};
pub use rset::{Interval, RationalSet};
