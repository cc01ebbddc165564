//! Designated infinite nests with a per-kind emptiness decision.

use serde::{Deserialize, Serialize};

use super::discrete::parse_rational;
use super::example::build_example_ball;
use super::primes::nth_prime;
use super::rset::RationalSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite::{Config, FiniteBallSpace};
use crate::ordered::{LexGroupElement, Rational, UltraBall, ValueLevel};
use crate::pointset::{intersect_all, PointSet, MAX_POINTS};

/// Largest prefix length accepted by the prefix checks.
pub const MAX_PREFIX: usize = 1000;

/// An infinite nest `N_0 ⊇ N_1 ⊇ ...` given by a finite description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NestDescriptor {
    /// `N_k = B_{k+1} ∪ B_{k+2}` over the prime-gap balls, i.e. `(0, 1/p_{k+1})`.
    PrimeGapUnion,
    /// `N_k = {start + k, start + k + 1, ...}` in ω.
    FinalSegments {
        #[serde(default)]
        start: u64,
    },
    /// `N_k = B_k(c_k)` in the lex group with `c_k = Σ_{l<k} s_l e_l`, where
    /// the coordinate stream `s` is `prefix` followed by `period` repeated.
    /// An empty period means zeros.
    LexUltraNest {
        #[serde(with = "rational_list")]
        prefix: Vec<Rational>,
        #[serde(with = "rational_list")]
        period: Vec<Rational>,
    },
}

mod rational_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        text.iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A member of a designated nest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NestMember {
    Rational(RationalSet),
    FinalSegment { from: u64 },
    Ball(UltraBall),
}

/// A point of the space a nest lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NestPoint {
    Rational(Rational),
    Natural(u64),
    Lex(LexGroupElement),
}

impl NestMember {
    pub fn contains(&self, x: &NestPoint) -> bool {
        match (self, x) {
            (NestMember::Rational(s), NestPoint::Rational(q)) => s.contains(q),
            (NestMember::FinalSegment { from }, NestPoint::Natural(k)) => k >= from,
            (NestMember::Ball(b), NestPoint::Lex(e)) => b.contains(e),
            _ => false,
        }
    }

    pub fn is_subset(&self, other: &NestMember) -> Result<bool> {
        match (self, other) {
            (NestMember::Rational(a), NestMember::Rational(b)) => a.is_subset(b),
            (NestMember::FinalSegment { from: a }, NestMember::FinalSegment { from: b }) => Ok(a >= b),
            (NestMember::Ball(a), NestMember::Ball(b)) => Ok(a.is_subset(b)),
            _ => Err(Error::SpaceMismatch("members live in different spaces".into())),
        }
    }
}

impl NestDescriptor {
    pub fn lex(prefix: &[(i64, i64)], period: &[(i64, i64)]) -> NestDescriptor {
        let to = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| crate::ordered::ratio(a, b)).collect();
        NestDescriptor::LexUltraNest {
            prefix: to(prefix),
            period: to(period),
        }
    }

    /// `s_l` for the lex kind.
    fn coordinate(prefix: &[Rational], period: &[Rational], level: usize) -> Rational {
        if level < prefix.len() {
            prefix[level].clone()
        } else if period.is_empty() {
            Rational::from_integer(0.into())
        } else {
            period[(level - prefix.len()) % period.len()].clone()
        }
    }

    fn lex_center(prefix: &[Rational], period: &[Rational], k: usize) -> LexGroupElement {
        LexGroupElement::from_coeffs((0..k).map(|l| (l as u32, Self::coordinate(prefix, period, l))))
    }

    pub fn member(&self, k: usize) -> Result<NestMember> {
        Ok(match self {
            NestDescriptor::PrimeGapUnion => {
                NestMember::Rational(build_example_ball(k + 1)?.union(&build_example_ball(k + 2)?)?)
            }
            NestDescriptor::FinalSegments { start } => NestMember::FinalSegment { from: start + k as u64 },
            NestDescriptor::LexUltraNest { prefix, period } => NestMember::Ball(UltraBall::new(
                Self::lex_center(prefix, period, k),
                ValueLevel::Finite(k as u32),
            )),
        })
    }

    /// A point of `N_k`; for empty nests it leaves some later member.
    pub fn representative(&self, k: usize) -> Result<NestPoint> {
        Ok(match self {
            NestDescriptor::PrimeGapUnion => {
                let (p, q) = (nth_prime(k + 1)?, nth_prime(k + 2)?);
                let (p, q) = (Rational::new(1.into(), p.into()), Rational::new(1.into(), q.into()));
                NestPoint::Rational((p + q) / Rational::from_integer(2.into()))
            }
            NestDescriptor::FinalSegments { start } => NestPoint::Natural(start + k as u64),
            NestDescriptor::LexUltraNest { prefix, period } => NestPoint::Lex(Self::lex_center(prefix, period, k)),
        })
    }

    /// Members after which the lex stream is periodic; 1 for the other kinds.
    fn escape_window(&self) -> usize {
        match self {
            NestDescriptor::LexUltraNest { prefix, period } => prefix.len() + period.len().max(1),
            _ => 1,
        }
    }
}

/// Emptiness decision with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NestVerdict {
    pub empty: bool,
    pub rule: String,
    /// the common point when the nest is nonempty and it is unique
    pub limit: Option<LexGroupElement>,
}

pub fn nest_verdict(d: &NestDescriptor) -> Result<NestVerdict> {
    Ok(match d {
        NestDescriptor::PrimeGapUnion => NestVerdict {
            empty: true,
            rule: "monotone endpoint: members are (0, 1/p_n) with open left end 0 and right ends decreasing to 0"
                .into(),
            limit: None,
        },
        NestDescriptor::FinalSegments { .. } => NestVerdict {
            empty: true,
            rule: "unbounded start: the n-th member starts at start + n, so every number is eventually left out".into(),
            limit: None,
        },
        NestDescriptor::LexUltraNest { prefix, period } => {
            if period.iter().all(|s| s == &Rational::from_integer(0.into())) {
                NestVerdict {
                    empty: false,
                    rule: "eventually zero: the centers stabilize at a finitely supported limit".into(),
                    limit: Some(NestDescriptor::lex_center(prefix, period, prefix.len())),
                }
            } else {
                NestVerdict {
                    empty: true,
                    rule: "infinite support: a common point would need the nonzero periodic coordinates at \
                           infinitely many levels"
                        .into(),
                    limit: None,
                }
            }
        }
    })
}

/// `N_{k+1} ⊆ N_k` for every `k < n_max`.
pub fn prefix_nested(d: &NestDescriptor, n_max: usize, exec: Execution) -> Result<bool> {
    check_prefix(n_max)?;
    let results = exec.map_range(0..n_max, |k| -> Result<bool> {
        d.member(k + 1)?.is_subset(&d.member(k)?)
    });
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

/// For nonempty verdicts, whether the limit lies in `N_0, ..., N_{n_max-1}`.
pub fn limit_in_prefix(d: &NestDescriptor, n_max: usize) -> Result<bool> {
    check_prefix(n_max)?;
    let verdict = nest_verdict(d)?;
    let Some(limit) = verdict.limit else {
        return Ok(false);
    };
    let point = NestPoint::Lex(limit);
    for k in 0..n_max {
        if !d.member(k)?.contains(&point) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_prefix(n_max: usize) -> Result<()> {
    if n_max > MAX_PREFIX {
        return Err(Error::EnumerationBoundExceeded {
            what: "nest prefix",
            size: n_max,
            bound: MAX_PREFIX,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub checked: usize,
    /// every finite prefix has a common point
    pub prefixes_nonempty: bool,
    /// the prefixes point the same way as the symbolic verdict
    pub consistent: bool,
}

/// Compares the symbolic verdict with the first `n_max` members.
///
/// Finite prefixes of a nest always meet in their last member. A nonempty
/// verdict must keep its limit in every member; an empty one must see each
/// representative point drop out of a later member within the prefix.
pub fn prefix_consistency(d: &NestDescriptor, n_max: usize, exec: Execution) -> Result<PrefixReport> {
    check_prefix(n_max)?;
    let verdict = nest_verdict(d)?;
    let members = exec.map_range(0..n_max, |k| d.member(k));
    let members: Vec<NestMember> = members.into_iter().collect::<Result<_>>()?;
    let reps: Vec<NestPoint> = (0..n_max).map(|k| d.representative(k)).collect::<Result<_>>()?;
    let prefixes_nonempty = reps.iter().zip(&members).all(|(r, m)| m.contains(r));
    let consistent = if verdict.empty {
        let window = d.escape_window();
        let escapes = exec.map_range(0..n_max.saturating_sub(window), |k| {
            (k + 1..(k + window + 1).min(n_max)).any(|m| !members[m].contains(&reps[k]))
        });
        escapes.into_iter().all(|e| e)
    } else {
        limit_in_prefix(d, n_max)?
    };
    Ok(PrefixReport {
        checked: n_max,
        prefixes_nonempty,
        consistent,
    })
}

/// One summand of a coproduct whose designated nest is the disjoint union of
/// the summands' nests, member by member.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "component", rename_all = "snake_case")]
pub enum CoproductComponent {
    Symbolic {
        nest: NestDescriptor,
    },
    /// A finite space with a chain of balls, read as a nest that stays at its
    /// last member.
    Finite {
        space: FiniteBallSpace,
        chain: Vec<PointSet>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentVerdict {
    pub nonempty: bool,
    pub rule: String,
    /// known only for finite components
    pub spherically_complete: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoproductNestReport {
    pub components: Vec<ComponentVerdict>,
    /// `⋂_n ⨆_i N_{i,n} = ⨆_i ⋂_n N_{i,n}` checked on the finite components
    pub identity_holds: bool,
    pub coproduct_nonempty: bool,
    pub prefixes_consistent: bool,
}

pub fn coproduct_with_complete_component(
    components: &[CoproductComponent],
    n_max: usize,
    exec: Execution,
) -> Result<CoproductNestReport> {
    if components.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut verdicts = Vec::new();
    let mut finite_sizes = Vec::new();
    let mut finite_chains = Vec::new();
    let mut prefixes_consistent = true;
    for c in components {
        match c {
            CoproductComponent::Symbolic { nest } => {
                let v = nest_verdict(nest)?;
                prefixes_consistent &= prefix_consistency(nest, n_max, exec)?.consistent;
                verdicts.push(ComponentVerdict {
                    nonempty: !v.empty,
                    rule: v.rule,
                    spherically_complete: None,
                });
            }
            CoproductComponent::Finite { space, chain } => {
                if chain.is_empty() {
                    return Err(Error::EmptySubfamily);
                }
                if !space.is_nest(chain)? {
                    return Err(Error::NotANest);
                }
                let meet = intersect_all(chain, PointSet::full(MAX_POINTS));
                let report = space.classify(&Config::default().with_execution(exec))?;
                verdicts.push(ComponentVerdict {
                    nonempty: !meet.is_empty(),
                    rule: format!("finite chain meets in {meet}"),
                    spherically_complete: Some(report.get(crate::finite::Property::S1)),
                });
                // pad to a common length with the chain's smallest member
                let mut sorted = chain.clone();
                sorted.sort_by_key(|b| std::cmp::Reverse(b.len()));
                finite_sizes.push(space.universe_size());
                finite_chains.push(sorted);
            }
        }
    }
    let identity_holds = if finite_chains.is_empty() {
        true
    } else {
        let m = finite_chains.iter().map(Vec::len).max().unwrap_or(1);
        for chain in finite_chains.iter_mut() {
            let last = *chain.last().expect("nonempty chain");
            chain.resize(m, last);
        }
        crate::category::intersection_commutation_check(&finite_sizes, &finite_chains)?
    };
    Ok(CoproductNestReport {
        coproduct_nonempty: verdicts.iter().any(|v| v.nonempty),
        components: verdicts,
        identity_holds,
        prefixes_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn final_segments_are_empty() {
        let d = NestDescriptor::FinalSegments { start: 0 };
        assert!(nest_verdict(&d).unwrap().empty);
        assert!(prefix_nested(&d, 64, Execution::Sequential).unwrap());
        let r = prefix_consistency(&d, 1000, Execution::Sequential).unwrap();
        assert!(r.prefixes_nonempty && r.consistent);
    }

    #[test]
    fn lex_nests() {
        let ones = NestDescriptor::lex(&[], &[(1, 1)]);
        assert!(nest_verdict(&ones).unwrap().empty);
        assert!(prefix_nested(&ones, 64, Execution::Sequential).unwrap());
        assert!(
            prefix_consistency(&ones, 200, Execution::Sequential)
                .unwrap()
                .consistent
        );

        let finite = NestDescriptor::lex(&[(1, 1), (1, 1)], &[(0, 1)]);
        let v = nest_verdict(&finite).unwrap();
        assert!(!v.empty);
        let limit = v.limit.unwrap();
        assert_eq!(limit.support().collect::<Vec<_>>(), vec![0, 1]);
        assert!(limit_in_prefix(&finite, 64).unwrap());
        assert!(
            prefix_consistency(&finite, 200, Execution::Sequential)
                .unwrap()
                .consistent
        );
    }

    #[test]
    fn prime_gap_unions() {
        let d = NestDescriptor::PrimeGapUnion;
        assert!(nest_verdict(&d).unwrap().empty);
        assert!(prefix_nested(&d, 8, Execution::Sequential).unwrap());
        let r = prefix_consistency(&d, 20, Execution::Sequential).unwrap();
        assert!(r.prefixes_nonempty && r.consistent);
    }

    #[test]
    fn coproduct_nests() {
        let point = FiniteBallSpace::from_lists(1, &[vec![0]]).unwrap();
        let mixed = [
            CoproductComponent::Symbolic {
                nest: NestDescriptor::FinalSegments { start: 0 },
            },
            CoproductComponent::Finite {
                space: point,
                chain: vec![PointSet::singleton(0)],
            },
        ];
        let r = coproduct_with_complete_component(&mixed, 100, Execution::Sequential).unwrap();
        assert!(r.coproduct_nonempty && r.identity_holds && r.prefixes_consistent);
        assert_eq!(r.components[1].spherically_complete, Some(true));
        let both = [
            CoproductComponent::Symbolic {
                nest: NestDescriptor::FinalSegments { start: 0 },
            },
            CoproductComponent::Symbolic {
                nest: NestDescriptor::FinalSegments { start: 3 },
            },
        ];
        let r = coproduct_with_complete_component(&both, 100, Execution::Sequential).unwrap();
        assert!(!r.coproduct_nonempty);
    }

    #[test]
    fn descriptor_json() {
        let d = NestDescriptor::lex(&[(1, 2)], &[(1, 1)]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"kind":"lex_ultra_nest","prefix":["1/2"],"period":["1"]}"#);
        assert_eq!(serde_json::from_str::<NestDescriptor>(&text).unwrap(), d);
        let f: NestDescriptor = serde_json::from_str(r#"{"kind":"final_segments"}"#).unwrap();
        assert_eq!(f, NestDescriptor::FinalSegments { start: 0 });
    }
}
