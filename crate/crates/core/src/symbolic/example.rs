//! The prime-gap balls `B_i = (0, 1/p_i) \ {1/p_i^j : p_i^j > p_{i+1}}` on Q.
//!
//! Any two are incomparable, so every nest in `{B_i}` is a single ball, yet
//! `B_i ∪ B_{i+1} = (0, 1/p_i)` and those unions form a nest with empty
//! intersection. Finite-union closure therefore destroys spherical
//! completeness.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::discrete::{DiscreteSet, GeometricFamily};
use super::primes::nth_prime;
use super::rset::{Interval, RationalSet};
use crate::error::{Error, Result};
use crate::ordered::Rational;

/// Largest denominator tried when looking for incomparability witnesses.
pub const WITNESS_DENOMINATOR_LIMIT: u64 = 1000;

fn unit_fraction(d: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(d))
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::Invalid("ball indices start at 1".into()));
    }
    Ok(())
}

/// Least `j` with `p_i^j > p_{i+1}`.
pub fn removal_start(i: usize) -> Result<i64> {
    check_index(i)?;
    let (p, next) = (nth_prime(i)?, nth_prime(i + 1)?);
    let (mut power, mut j) = (p, 1i64);
    while power <= next {
        power *= p;
        j += 1;
    }
    Ok(j)
}

/// The removed tail `{1/p_i^j : j >= j_0}`.
pub fn removed_family(i: usize) -> Result<GeometricFamily> {
    let p = nth_prime(i)?;
    GeometricFamily::new(Rational::one(), unit_fraction(p), removal_start(i)?)
}

/// The open interval `(0, 1/p_i)`.
pub fn prime_interval(i: usize) -> Result<RationalSet> {
    check_index(i)?;
    let iv = Interval::open(Rational::from_integer(0.into()), unit_fraction(nth_prime(i)?)).expect("nonempty");
    Ok(RationalSet::interval(iv))
}

pub fn build_example_ball(i: usize) -> Result<RationalSet> {
    let interval = prime_interval(i)?;
    RationalSet::from_parts(
        interval.intervals().to_vec(),
        DiscreteSet::from_family(removed_family(i)?),
        DiscreteSet::empty(),
    )
}

/// Whether every removed point of `B_i` lies below `1/p_{i+1}`: the first
/// removed term is the largest.
pub fn removed_points_below_next(i: usize) -> Result<bool> {
    Ok(removed_family(i)?.first() < unit_fraction(nth_prime(i + 1)?))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IncomparabilityWitness {
    pub i: usize,
    pub j: usize,
    /// in `B_i` but not `B_j`
    pub x: String,
    /// in `B_j` but not `B_i`
    pub y: String,
}

// candidates by increasing denominator: unit fractions first, then the rest
fn first_member(inside: &RationalSet, outside: &RationalSet) -> Option<Rational> {
    let good = |x: &Rational| inside.contains(x) && !outside.contains(x);
    (2..=WITNESS_DENOMINATOR_LIMIT)
        .map(unit_fraction)
        .find(|x| good(x))
        .or_else(|| {
            (2..=WITNESS_DENOMINATOR_LIMIT).find_map(|d| {
                (2..d)
                    .map(|a| Rational::new(BigInt::from(a), BigInt::from(d)))
                    .filter(|x| x.denom() == &BigInt::from(d))
                    .find(|x| good(x))
            })
        })
}

/// Explicit `x ∈ B_i \ B_j` and `y ∈ B_j \ B_i`, cross-checked against the
/// exact set differences.
pub fn verify_example_incomparable(i: usize, j: usize) -> Result<Option<IncomparabilityWitness>> {
    if i == j {
        return Err(Error::Invalid(format!(
            "incomparability needs distinct indices, got {i} twice"
        )));
    }
    let (bi, bj) = (build_example_ball(i)?, build_example_ball(j)?);
    let (Some(x), Some(y)) = (first_member(&bi, &bj), first_member(&bj, &bi)) else {
        return Ok(None);
    };
    let (d1, d2) = (bi.difference(&bj)?, bj.difference(&bi)?);
    if !d1.contains(&x) || !d2.contains(&y) {
        return Ok(None);
    }
    Ok(Some(IncomparabilityWitness {
        i,
        j,
        x: x.to_string(),
        y: y.to_string(),
    }))
}

/// `B_i ∪ B_{i+1} = (0, 1/p_i)` exactly.
pub fn verify_example_union(i: usize) -> Result<bool> {
    let union = build_example_ball(i)?.union(&build_example_ball(i + 1)?)?;
    union.set_eq(&prime_interval(i)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct BallSummary {
    pub i: usize,
    pub prime: u64,
    pub removal_start: i64,
    pub ball: String,
    pub removed_below_next: bool,
    pub properly_inside_interval: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionCheck {
    pub i: usize,
    pub union: String,
    pub equals_interval: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrefixIntersection {
    pub n: usize,
    pub intersection: String,
    pub nonempty: bool,
    pub sample: Option<String>,
}

/// Everything needed to see that f-un of the prime-gap balls is not
/// spherically complete, up to index `max_i`.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleCertificate {
    pub max_i: usize,
    pub balls: Vec<BallSummary>,
    pub incomparable: Vec<IncomparabilityWitness>,
    pub missing_witnesses: Vec<(usize, usize)>,
    pub unions: Vec<UnionCheck>,
    pub prefix_intersections: Vec<PrefixIntersection>,
    pub nest_empty: bool,
    pub emptiness_rule: String,
    pub holds: bool,
}

pub fn example_certificate(max_i: usize) -> Result<ExampleCertificate> {
    check_index(max_i)?;
    let mut balls = Vec::new();
    for i in 1..=max_i {
        let b = build_example_ball(i)?;
        let interval = prime_interval(i)?;
        balls.push(BallSummary {
            i,
            prime: nth_prime(i)?,
            removal_start: removal_start(i)?,
            ball: b.to_string(),
            removed_below_next: removed_points_below_next(i)?,
            properly_inside_interval: b.is_subset(&interval)? && !interval.is_subset(&b)?,
        });
    }
    let mut incomparable = Vec::new();
    let mut missing_witnesses = Vec::new();
    for i in 1..=max_i {
        for j in i + 1..=max_i {
            match verify_example_incomparable(i, j)? {
                Some(w) => incomparable.push(w),
                None => missing_witnesses.push((i, j)),
            }
        }
    }
    let mut unions = Vec::new();
    for i in 1..=max_i {
        let u = build_example_ball(i)?.union(&build_example_ball(i + 1)?)?;
        unions.push(UnionCheck {
            i,
            union: u.to_string(),
            equals_interval: u.set_eq(&prime_interval(i)?)?,
        });
    }
    // the union members are nested, so a prefix meets in its last member
    let mut prefix_intersections = Vec::new();
    let mut meet: Option<RationalSet> = None;
    for n in 1..=max_i {
        let member = build_example_ball(n)?.union(&build_example_ball(n + 1)?)?;
        let next = match meet {
            None => member,
            Some(m) => m.intersection(&member)?,
        };
        prefix_intersections.push(PrefixIntersection {
            n,
            intersection: next.to_string(),
            nonempty: !next.is_empty() && next.set_eq(&prime_interval(n)?)?,
            sample: next.sample().map(|x| x.to_string()),
        });
        meet = Some(next);
    }
    let verdict = super::nest::nest_verdict(&super::nest::NestDescriptor::PrimeGapUnion)?;
    let holds = balls.iter().all(|b| b.removed_below_next && b.properly_inside_interval)
        && missing_witnesses.is_empty()
        && unions.iter().all(|u| u.equals_interval)
        && prefix_intersections.iter().all(|p| p.nonempty)
        && verdict.empty;
    Ok(ExampleCertificate {
        max_i,
        balls,
        incomparable,
        missing_witnesses,
        unions,
        prefix_intersections,
        nest_empty: verdict.empty,
        emptiness_rule: verdict.rule,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::ratio as q;

    #[test]
    fn first_balls() {
        assert_eq!(removal_start(1).unwrap(), 2);
        assert_eq!(removal_start(2).unwrap(), 2);
        // 5^2 = 25 > 7
        assert_eq!(removal_start(3).unwrap(), 2);
        let b1 = build_example_ball(1).unwrap();
        assert!(b1.contains(&q(1, 3)) && b1.contains(&q(3, 8)));
        assert!(!b1.contains(&q(1, 4)) && !b1.contains(&q(1, 8)) && !b1.contains(&q(1, 2)));
        let b2 = build_example_ball(2).unwrap();
        assert!(!b2.contains(&q(1, 9)) && !b2.contains(&q(1, 27)) && b2.contains(&q(1, 4)));
    }

    #[test]
    fn witnesses_for_first_pair() {
        let w = verify_example_incomparable(1, 2).unwrap().unwrap();
        assert_eq!((w.x.as_str(), w.y.as_str()), ("1/3", "1/4"));
        assert!(verify_example_incomparable(2, 3).unwrap().is_some());
        assert!(verify_example_incomparable(3, 3).is_err());
    }

    #[test]
    fn unions_are_intervals() {
        for i in 1..=4 {
            assert!(verify_example_union(i).unwrap(), "i = {i}");
            assert!(removed_points_below_next(i).unwrap());
        }
    }

    #[test]
    fn certificate_up_to_three() {
        let c = example_certificate(3).unwrap();
        assert!(c.holds);
        assert_eq!(c.incomparable.len(), 3);
        assert_eq!(c.prefix_intersections[2].intersection, "(0, 1/5)");
    }
}
