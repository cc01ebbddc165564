//! Countable discrete rational sets: finitely many points plus geometric tails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::primes::exponent_vector;
use super::rset::Interval;
use crate::error::{Error, Result};
use crate::ordered::Rational;

/// `{base · ratio^j : j >= start}` for `0 < ratio < 1` and `base > 0`.
///
/// Stored in orbit form with `ratio < base <= 1`, so two families describe
/// the same orbit exactly when their ratios and bases agree. The start index
/// may be negative after normalization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeometricFamily {
    ratio: Rational,
    base: Rational,
    start: i64,
}

/// How two geometric families meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRelation {
    Disjoint,
    /// exactly one common point
    Single(Rational),
    /// tails of one orbit, nested
    SameOrbit,
}

impl GeometricFamily {
    pub fn new(base: Rational, ratio: Rational, start: i64) -> Result<Self> {
        if !base.is_positive() {
            return Err(Error::Invalid(format!("family base {base} must be positive")));
        }
        if !ratio.is_positive() || ratio >= Rational::one() {
            return Err(Error::Invalid(format!("family ratio {ratio} must lie in (0, 1)")));
        }
        let (mut base, mut start) = (base, start);
        while base > Rational::one() {
            base *= &ratio;
            start -= 1;
        }
        while base <= ratio {
            base /= &ratio;
            start += 1;
        }
        Ok(GeometricFamily { ratio, base, start })
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn term(&self, j: i64) -> Rational {
        let exp = i32::try_from(j).expect("index fits in i32");
        &self.base * self.ratio.pow(exp)
    }

    /// The largest member.
    pub fn first(&self) -> Rational {
        self.term(self.start)
    }

    /// The same orbit from a later or earlier start.
    pub fn from_index(&self, start: i64) -> GeometricFamily {
        GeometricFamily {
            ratio: self.ratio.clone(),
            base: self.base.clone(),
            start,
        }
    }

    /// `j` with `x = base · ratio^j`, over all integers `j`.
    ///
    /// Found by repeated multiplication or division, no logarithms.
    pub fn orbit_index(&self, x: &Rational) -> Option<i64> {
        if !x.is_positive() {
            return None;
        }
        let mut t = x / &self.base;
        let mut j = 0i64;
        let one = Rational::one();
        if t > one {
            while t > one {
                t *= &self.ratio;
                j -= 1;
            }
        } else {
            while t < one {
                t /= &self.ratio;
                j += 1;
            }
        }
        (t == one).then_some(j)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.orbit_index(x).is_some_and(|j| j >= self.start)
    }

    /// Least index whose term satisfies `< bound` (or `<= bound`); terms
    /// decrease, so every later term does too.
    pub fn first_index_below(&self, bound: &Rational, inclusive: bool) -> Option<i64> {
        if !bound.is_positive() {
            return None;
        }
        let mut j = self.start;
        let mut t = self.first();
        while !(if inclusive { &t <= bound } else { &t < bound }) {
            t *= &self.ratio;
            j += 1;
        }
        Some(j)
    }

    pub fn relation(&self, other: &GeometricFamily) -> Result<FamilyRelation> {
        if self.ratio == other.ratio {
            return Ok(if self.base == other.base {
                FamilyRelation::SameOrbit
            } else {
                FamilyRelation::Disjoint
            });
        }
        // base_1 r_1^j = base_2 r_2^k  ⇔  j v(r_1) - k v(r_2) = v(base_2 / base_1)
        let v1 = exponent_vector(&self.ratio)?;
        let v2 = exponent_vector(&other.ratio)?;
        let d = exponent_vector(&(&other.base / &self.base))?;
        let primes: BTreeSet<&BigInt> = v1.keys().chain(v2.keys()).chain(d.keys()).collect();
        let get = |v: &BTreeMap<BigInt, i64>, p: &BigInt| v.get(p).copied().unwrap_or(0);
        let primes: Vec<&BigInt> = primes.into_iter().collect();

        let mut minor = None;
        'search: for (a, p) in primes.iter().enumerate() {
            for q in &primes[a + 1..] {
                let det = get(&v1, p) * -get(&v2, q) - (-get(&v2, p)) * get(&v1, q);
                if det != 0 {
                    minor = Some((*p, *q, det));
                    break 'search;
                }
            }
        }
        let Some((p, q, det)) = minor else {
            // parallel ratios: there is no solution unless d points the same way
            let d_parallel = primes.iter().enumerate().all(|(a, p)| {
                primes[a + 1..]
                    .iter()
                    .all(|q| get(&v1, p) * get(&d, q) - get(&d, p) * get(&v1, q) == 0)
            }) && primes.iter().all(|p| get(&v1, p) != 0 || get(&d, p) == 0);
            if !d_parallel {
                return Ok(FamilyRelation::Disjoint);
            }
            return Err(Error::UnsupportedCombination(format!(
                "families {self} and {other} have commensurable ratios"
            )));
        };
        let (dp, dq) = (get(&d, p), get(&d, q));
        let j_num = dp * -get(&v2, q) - (-get(&v2, p)) * dq;
        let k_num = get(&v1, p) * dq - dp * get(&v1, q);
        if !j_num.is_multiple_of(&det) || !k_num.is_multiple_of(&det) {
            return Ok(FamilyRelation::Disjoint);
        }
        let (j, k) = (j_num / det, k_num / det);
        let fits = primes.iter().all(|p| j * get(&v1, p) - k * get(&v2, p) == get(&d, p));
        if fits && j >= self.start && k >= other.start {
            Ok(FamilyRelation::Single(self.term(j)))
        } else {
            Ok(FamilyRelation::Disjoint)
        }
    }
}

impl fmt::Display for GeometricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.is_one() {
            write!(f, "{{({})^j : j >= {}}}", self.ratio, self.start)
        } else {
            write!(f, "{{{}*({})^j : j >= {}}}", self.base, self.ratio, self.start)
        }
    }
}

impl fmt::Debug for GeometricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finitely many rational points together with finitely many geometric tails.
///
/// Canonical form: families are pairwise disjoint, no point lies in a family,
/// and no family can be extended downwards by one of the points.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DiscreteSet {
    points: BTreeSet<Rational>,
    families: Vec<GeometricFamily>,
}

impl DiscreteSet {
    pub fn empty() -> Self {
        DiscreteSet::default()
    }

    pub fn from_points<I: IntoIterator<Item = Rational>>(points: I) -> Self {
        DiscreteSet {
            points: points.into_iter().collect(),
            families: Vec::new(),
        }
    }

    pub fn from_family(family: GeometricFamily) -> Self {
        DiscreteSet {
            points: BTreeSet::new(),
            families: vec![family],
        }
    }

    pub fn from_parts<I: IntoIterator<Item = Rational>>(points: I, families: Vec<GeometricFamily>) -> Result<Self> {
        DiscreteSet {
            points: points.into_iter().collect(),
            families,
        }
        .canonical()
    }

    pub fn points(&self) -> &BTreeSet<Rational> {
        &self.points
    }

    pub fn families(&self) -> &[GeometricFamily] {
        &self.families
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.families.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.points.contains(x) || self.families.iter().any(|f| f.contains(x))
    }

    fn canonical(mut self) -> Result<Self> {
        // one tail per orbit
        self.families.sort();
        let mut merged: Vec<GeometricFamily> = Vec::new();
        for f in self.families.drain(..) {
            match merged.last_mut() {
                Some(last) if last.ratio == f.ratio && last.base == f.base => last.start = last.start.min(f.start),
                _ => merged.push(f),
            }
        }
        // a single shared point stays with the earlier family
        let mut i = 0;
        while i < merged.len() {
            let mut j = i + 1;
            while j < merged.len() {
                if let FamilyRelation::Single(x) = merged[i].relation(&merged[j])? {
                    let (pts, rest) = family_without_point(&merged[j], &x);
                    self.points.extend(pts);
                    merged[j] = rest;
                }
                j += 1;
            }
            i += 1;
        }
        self.points.retain(|p| !merged.iter().any(|f| f.contains(p)));
        for f in merged.iter_mut() {
            loop {
                let prev = f.term(f.start - 1);
                if self.points.remove(&prev) {
                    f.start -= 1;
                } else {
                    break;
                }
            }
        }
        merged.sort();
        self.families = merged;
        Ok(self)
    }

    pub fn union(&self, other: &DiscreteSet) -> Result<DiscreteSet> {
        let mut out = self.clone();
        out.points.extend(other.points.iter().cloned());
        out.families.extend(other.families.iter().cloned());
        out.canonical()
    }

    pub fn intersection(&self, other: &DiscreteSet) -> Result<DiscreteSet> {
        let mut points: BTreeSet<Rational> = self.points.iter().filter(|p| other.contains(p)).cloned().collect();
        points.extend(other.points.iter().filter(|p| self.contains(p)).cloned());
        let mut families = Vec::new();
        for f in &self.families {
            for g in &other.families {
                match f.relation(g)? {
                    FamilyRelation::Disjoint => {}
                    FamilyRelation::Single(x) => {
                        points.insert(x);
                    }
                    FamilyRelation::SameOrbit => families.push(f.from_index(f.start.max(g.start))),
                }
            }
        }
        DiscreteSet::from_parts(points, families)
    }

    pub fn difference(&self, other: &DiscreteSet) -> Result<DiscreteSet> {
        let mut points: BTreeSet<Rational> = self.points.iter().filter(|p| !other.contains(p)).cloned().collect();
        let mut pieces: Vec<GeometricFamily> = self.families.clone();
        for g in &other.families {
            let mut next = Vec::new();
            for f in pieces {
                match f.relation(g)? {
                    FamilyRelation::Disjoint => next.push(f),
                    FamilyRelation::Single(x) => {
                        let (pts, rest) = family_without_point(&f, &x);
                        points.extend(pts);
                        next.push(rest);
                    }
                    // the part of f before g starts
                    FamilyRelation::SameOrbit => points.extend((f.start..g.start).map(|j| f.term(j))),
                }
            }
            pieces = next;
        }
        let mut next = Vec::new();
        for f in pieces {
            let mut f = f;
            for x in &other.points {
                if f.contains(x) {
                    let (pts, rest) = family_without_point(&f, x);
                    points.extend(pts);
                    f = rest;
                }
            }
            next.push(f);
        }
        points.retain(|p| !other.contains(p));
        DiscreteSet::from_parts(points, next)
    }

    pub fn remove_point(&self, x: &Rational) -> Result<DiscreteSet> {
        self.difference(&DiscreteSet::from_points([x.clone()]))
    }

    /// Splits into the parts inside and outside a union of intervals.
    pub fn split_by(&self, intervals: &[Interval]) -> Result<(DiscreteSet, DiscreteSet)> {
        let inside_any = |x: &Rational| intervals.iter().any(|i| i.contains(x));
        let (mut pin, mut pout): (Vec<Rational>, Vec<Rational>) = (Vec::new(), Vec::new());
        for p in &self.points {
            if inside_any(p) {
                pin.push(p.clone());
            } else {
                pout.push(p.clone());
            }
        }
        let (mut fin, mut fout) = (Vec::new(), Vec::new());
        // below the smallest positive endpoint every term behaves like 0+
        let eps = intervals
            .iter()
            .flat_map(|i| [i.lo(), i.hi()])
            .filter(|e| e.is_positive())
            .min()
            .cloned();
        let tail_in = intervals.iter().any(|i| !i.lo().is_positive() && i.hi().is_positive());
        for f in &self.families {
            let cut = match &eps {
                Some(e) => f.first_index_below(e, false).expect("positive bound"),
                None => f.start,
            };
            for j in f.start..cut {
                let t = f.term(j);
                if inside_any(&t) {
                    pin.push(t);
                } else {
                    pout.push(t);
                }
            }
            if tail_in {
                fin.push(f.from_index(cut));
            } else {
                fout.push(f.from_index(cut));
            }
        }
        Ok((DiscreteSet::from_parts(pin, fin)?, DiscreteSet::from_parts(pout, fout)?))
    }

    /// Some member, preferring explicit points.
    pub fn sample(&self) -> Option<Rational> {
        self.points
            .iter()
            .next()
            .cloned()
            .or_else(|| self.families.first().map(|f| f.first()))
    }
}

/// `f \ {x}` for a member `x`: the finitely many earlier terms and the tail
/// after `x`.
fn family_without_point(f: &GeometricFamily, x: &Rational) -> (Vec<Rational>, GeometricFamily) {
    let m = f.orbit_index(x).expect("x is a member");
    ((f.start..m).map(|j| f.term(j)).collect(), f.from_index(m + 1))
}

impl fmt::Display for DiscreteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.points.is_empty() {
            let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
            parts.push(format!("{{{}}}", pts.join(", ")));
        }
        parts.extend(self.families.iter().map(|g| g.to_string()));
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&parts.join(" u "))
        }
    }
}

impl fmt::Debug for DiscreteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FamilyRepr {
    base: String,
    ratio: String,
    start: i64,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct DiscreteRepr {
    #[serde(default)]
    points: Vec<String>,
    #[serde(default)]
    families: Vec<FamilyRepr>,
}

pub(crate) fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational {text:?}")))
}

impl TryFrom<DiscreteRepr> for DiscreteSet {
    type Error = Error;

    fn try_from(r: DiscreteRepr) -> Result<Self> {
        let points = r.points.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        let families = r
            .families
            .iter()
            .map(|f| GeometricFamily::new(parse_rational(&f.base)?, parse_rational(&f.ratio)?, f.start))
            .collect::<Result<Vec<_>>>()?;
        DiscreteSet::from_parts(points, families)
    }
}

impl From<&DiscreteSet> for DiscreteRepr {
    fn from(d: &DiscreteSet) -> Self {
        DiscreteRepr {
            points: d.points.iter().map(|p| p.to_string()).collect(),
            families: d
                .families
                .iter()
                .map(|f| FamilyRepr {
                    base: f.base.to_string(),
                    ratio: f.ratio.to_string(),
                    start: f.start,
                })
                .collect(),
        }
    }
}

impl Serialize for DiscreteSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiscreteRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DiscreteSet::try_from(DiscreteRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::ratio as q;

    fn fam(base: (i64, i64), ratio: (i64, i64), start: i64) -> GeometricFamily {
        GeometricFamily::new(q(base.0, base.1), q(ratio.0, ratio.1), start).unwrap()
    }

    #[test]
    fn orbit_form() {
        // 1/4 * (1/2)^j from j = 0 is (1/2)^j from j = 2
        let a = fam((1, 4), (1, 2), 0);
        assert_eq!(a, fam((1, 1), (1, 2), 2));
        assert_eq!(a.first(), q(1, 4));
        let b = fam((3, 1), (1, 2), 0);
        assert_eq!(b.base(), &q(3, 4));
        assert_eq!(b.start(), -2);
        assert_eq!(b.first(), q(3, 1));
    }

    #[test]
    fn membership_by_division() {
        let f = fam((1, 1), (1, 2), 2);
        assert!(f.contains(&q(1, 4)));
        assert!(f.contains(&q(1, 1024)));
        assert!(!f.contains(&q(1, 2)));
        assert!(!f.contains(&q(3, 8)));
        assert!(!f.contains(&q(-1, 4)));
        assert_eq!(f.orbit_index(&q(2, 1)), Some(-1));
    }

    #[test]
    fn relations() {
        let twos = fam((1, 1), (1, 2), 2);
        let threes = fam((1, 1), (1, 3), 1);
        assert_eq!(twos.relation(&threes).unwrap(), FamilyRelation::Disjoint);
        // 3/4 * (1/2)^j meets (1/3)^k? no: 3 * 2^-j-2 = 3^-k needs k = -1
        let odd = fam((3, 4), (1, 2), 0);
        assert_eq!(odd.relation(&threes).unwrap(), FamilyRelation::Disjoint);
        let odd_all = fam((3, 4), (1, 2), -10);
        let threes_all = fam((1, 1), (1, 3), -3);
        // 3 = 3/4 * (1/2)^-2 = (1/3)^-1
        assert_eq!(odd_all.relation(&threes_all).unwrap(), FamilyRelation::Single(q(3, 1)));
        assert_eq!(
            twos.relation(&fam((1, 1), (1, 2), 7)).unwrap(),
            FamilyRelation::SameOrbit
        );
        assert_eq!(
            twos.relation(&fam((3, 4), (1, 2), 0)).unwrap(),
            FamilyRelation::Disjoint
        );
        // commensurable ratios cannot be decided by these rules
        assert!(matches!(
            twos.relation(&fam((1, 1), (1, 4), 1)),
            Err(Error::UnsupportedCombination(_))
        ));
        // parallel ratios with an incommensurable offset are disjoint
        assert_eq!(
            twos.relation(&fam((1, 3), (1, 4), 0)).unwrap(),
            FamilyRelation::Disjoint
        );
    }

    #[test]
    fn powers_of_two_and_three_do_not_meet() {
        let a = DiscreteSet::from_family(fam((1, 1), (1, 2), 2));
        let b = DiscreteSet::from_family(fam((1, 1), (1, 3), 1));
        assert!(a.intersection(&b).unwrap().is_empty());
    }

    #[test]
    fn canonical_absorption() {
        let d = DiscreteSet::from_parts([q(1, 2), q(1, 4), q(1, 3)], vec![fam((1, 1), (1, 2), 3)]).unwrap();
        assert_eq!(d.families(), &[fam((1, 1), (1, 2), 1)]);
        assert_eq!(d.points().iter().cloned().collect::<Vec<_>>(), vec![q(1, 3)]);
    }

    #[test]
    fn difference_and_split() {
        let f = DiscreteSet::from_family(fam((1, 1), (1, 2), 1));
        let g = DiscreteSet::from_family(fam((1, 1), (1, 2), 3));
        let d = f.difference(&g).unwrap();
        assert_eq!(d, DiscreteSet::from_points([q(1, 2), q(1, 4)]));
        let minus = f.remove_point(&q(1, 4)).unwrap();
        assert!(!minus.contains(&q(1, 4)) && minus.contains(&q(1, 8)) && minus.contains(&q(1, 2)));
        let iv = Interval::new(q(0, 1), false, q(1, 3), false).unwrap();
        let (inside, outside) = f.split_by(&[iv]).unwrap();
        assert_eq!(outside, DiscreteSet::from_points([q(1, 2)]));
        assert_eq!(inside, DiscreteSet::from_family(fam((1, 1), (1, 2), 2)));
        let far = Interval::new(q(1, 5), true, q(1, 3), true).unwrap();
        let (inside, _) = f.split_by(&[far]).unwrap();
        assert_eq!(inside, DiscreteSet::from_points([q(1, 4)]));
    }
}
