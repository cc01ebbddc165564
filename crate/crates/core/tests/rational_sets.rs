use ballspace::ordered::{ratio, Rational};
use ballspace::symbolic::{DiscreteSet, GeometricFamily, Interval, RationalSet};
use ballspace::Error;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

// endpoints on a grid of twelfths in [-1, 2]
fn interval() -> impl Strategy<Value = Interval> {
    (-12i64..=24, 0i64..=12, any::<bool>(), any::<bool>())
        .prop_map(|(lo, w, lc, hc)| Interval::new(q(lo, 12), lc, q(lo + w, 12), hc))
        .prop_filter_map("nonempty", |iv| iv)
}

// geometric tails in ratios 1/2 and 1/3 with a few bases
fn family() -> impl Strategy<Value = GeometricFamily> {
    (
        prop_oneof![Just(q(1, 2)), Just(q(1, 3))],
        prop_oneof![Just(q(1, 1)), Just(q(3, 4)), Just(q(5, 6))],
        0i64..4,
    )
        .prop_filter_map("base in range", |(r, b, s)| {
            if b <= r {
                None
            } else {
                GeometricFamily::new(b, r, s).ok()
            }
        })
}

fn discrete() -> impl Strategy<Value = DiscreteSet> {
    (
        proptest::collection::vec((-12i64..=24).prop_map(|n| q(n, 12)), 0..4),
        proptest::collection::vec(family(), 0..2),
    )
        .prop_filter_map("representable", |(points, families)| {
            DiscreteSet::from_parts(points, families).ok()
        })
}

fn rset() -> impl Strategy<Value = RationalSet> {
    (proptest::collection::vec(interval(), 0..4), discrete(), discrete())
        .prop_filter_map("representable", |(ivs, removed, added)| {
            RationalSet::from_parts(ivs, removed, added).ok()
        })
}

// probe points: the grid, the midpoints between grid points, and early
// terms of every family in play
fn probes(sets: &[&RationalSet]) -> Vec<Rational> {
    let mut out: Vec<Rational> = (-26i64..=50).map(|n| q(n, 24)).collect();
    for s in sets {
        for d in [s.removed(), s.added()] {
            out.extend(d.points().iter().cloned());
            for f in d.families() {
                out.extend((f.start() - 1..f.start() + 6).map(|j| f.term(j)));
            }
        }
    }
    for k in 0..8 {
        out.push(q(1, 1 << k));
        out.push(q(1, 3i64.pow(k)));
    }
    out
}

fn ok_or_skip<T>(r: Result<T, Error>) -> Result<T, TestCaseError> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::UnsupportedCombination(m)) => Err(TestCaseError::reject(m)),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn operations_agree_with_membership(a in rset(), b in rset()) {
        let u = ok_or_skip(a.union(&b))?;
        let i = ok_or_skip(a.intersection(&b))?;
        let d = ok_or_skip(a.difference(&b))?;
        for x in probes(&[&a, &b]) {
            let (ia, ib) = (a.contains(&x), b.contains(&x));
            prop_assert_eq!(u.contains(&x), ia || ib, "union at {}", x);
            prop_assert_eq!(i.contains(&x), ia && ib, "intersection at {}", x);
            prop_assert_eq!(d.contains(&x), ia && !ib, "difference at {}", x);
        }
    }

    #[test]
    fn boolean_algebra_laws(a in rset(), b in rset(), c in rset()) {
        let ab = ok_or_skip(a.union(&b))?;
        let ba = ok_or_skip(b.union(&a))?;
        prop_assert!(ok_or_skip(ab.set_eq(&ba))?);
        let lhs = ok_or_skip(a.intersection(&ok_or_skip(b.union(&c))?))?;
        let rhs = ok_or_skip(ok_or_skip(a.intersection(&b))?.union(&ok_or_skip(a.intersection(&c))?))?;
        prop_assert!(ok_or_skip(lhs.set_eq(&rhs))?, "{} vs {}", lhs, rhs);
        let d = ok_or_skip(a.difference(&b))?;
        prop_assert!(ok_or_skip(d.intersection(&b))?.is_empty());
        prop_assert!(ok_or_skip(a.is_subset(&ab))?);
        prop_assert!(ok_or_skip(ok_or_skip(d.union(&ok_or_skip(a.intersection(&b))?))?.set_eq(&a))?);
    }

    #[test]
    fn canonical_form_is_a_fixed_point(a in rset()) {
        let again = RationalSet::from_parts(a.intervals().to_vec(), a.removed().clone(), a.added().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let json = serde_json::to_string(&a).unwrap();
        let back: RationalSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn samples_are_members(a in rset()) {
        match a.sample() {
            Some(x) => prop_assert!(a.contains(&x)),
            None => prop_assert!(a.is_empty()),
        }
    }
}
