//! Exact subsets of Q: finite unions of bounded intervals, minus a discrete
//! set of holes, plus a discrete set of extra points.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::discrete::{parse_rational, DiscreteRepr, DiscreteSet};
use crate::error::{Error, Result};
use crate::ordered::Rational;

/// A nonempty bounded interval with open or closed ends.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    lo_closed: bool,
    hi: Rational,
    hi_closed: bool,
}

// (value, closed) as a lower bound: larger value is tighter, open beats closed
fn cmp_lower(a: (&Rational, bool), b: (&Rational, bool)) -> Ordering {
    a.0.cmp(b.0).then(b.1.cmp(&a.1))
}

// (value, closed) as an upper bound: smaller value is tighter, open beats closed
fn cmp_upper(a: (&Rational, bool), b: (&Rational, bool)) -> Ordering {
    a.0.cmp(b.0).then(a.1.cmp(&b.1))
}

impl Interval {
    /// `None` when the interval would be empty.
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Option<Interval> {
        let nonempty = lo < hi || (lo == hi && lo_closed && hi_closed);
        nonempty.then_some(Interval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        })
    }

    pub fn open(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo, false, hi, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Option<Interval> {
        Interval::new(lo, true, hi, true)
    }

    pub fn point(x: Rational) -> Interval {
        Interval::new(x.clone(), true, x, true).expect("degenerate closed interval is nonempty")
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = match cmp_lower((&self.lo, self.lo_closed), (&other.lo, other.lo_closed)) {
            Ordering::Less => (&other.lo, other.lo_closed),
            _ => (&self.lo, self.lo_closed),
        };
        let hi = match cmp_upper((&self.hi, self.hi_closed), (&other.hi, other.hi_closed)) {
            Ordering::Greater => (&other.hi, other.hi_closed),
            _ => (&self.hi, self.hi_closed),
        };
        Interval::new(lo.0.clone(), lo.1, hi.0.clone(), hi.1)
    }

    /// At most two pieces.
    pub fn minus(&self, other: &Interval) -> Vec<Interval> {
        let mut out = Vec::new();
        // left piece ends where other begins
        let cut_hi = (&other.lo, !other.lo_closed);
        let hi = if cmp_upper((&self.hi, self.hi_closed), cut_hi) == Ordering::Greater {
            cut_hi
        } else {
            (&self.hi, self.hi_closed)
        };
        out.extend(Interval::new(self.lo.clone(), self.lo_closed, hi.0.clone(), hi.1));
        let cut_lo = (&other.hi, !other.hi_closed);
        let lo = if cmp_lower((&self.lo, self.lo_closed), cut_lo) == Ordering::Less {
            cut_lo
        } else {
            (&self.lo, self.lo_closed)
        };
        out.extend(Interval::new(lo.0.clone(), lo.1, self.hi.clone(), self.hi_closed));
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(⋃ intervals \ removed) ∪ added`.
///
/// Always normalized: intervals are disjoint, non-adjacent and sorted,
/// `removed` lies inside the intervals, `added` lies outside them, and
/// endpoints absorb what they can. Equal sets built from the same kind of
/// data end up with identical fields, so structural equality is usable, but
/// [`RationalSet::set_eq`] is the semantic test.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalSet {
    intervals: Vec<Interval>,
    removed: DiscreteSet,
    added: DiscreteSet,
}

fn union_intervals(mut raw: Vec<Interval>) -> (Vec<Interval>, Vec<Rational>) {
    raw.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<Interval> = Vec::new();
    let mut touching = Vec::new();
    for iv in raw {
        if let Some(last) = out.last_mut() {
            let overlaps = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
            let kisses = iv.lo == last.hi && !iv.lo_closed && !last.hi_closed;
            if overlaps || kisses {
                if kisses {
                    touching.push(iv.lo.clone());
                }
                if cmp_upper((&iv.hi, iv.hi_closed), (&last.hi, last.hi_closed)) == Ordering::Greater {
                    last.hi = iv.hi;
                    last.hi_closed = iv.hi_closed;
                }
                continue;
            }
        }
        out.push(iv);
    }
    (out, touching)
}

impl RationalSet {
    pub fn empty() -> RationalSet {
        RationalSet::default()
    }

    pub fn interval(iv: Interval) -> RationalSet {
        RationalSet {
            intervals: vec![iv],
            ..Default::default()
        }
    }

    pub fn points<I: IntoIterator<Item = Rational>>(points: I) -> Result<RationalSet> {
        RationalSet::from_parts(Vec::new(), DiscreteSet::empty(), DiscreteSet::from_points(points))
    }

    pub fn from_parts(intervals: Vec<Interval>, removed: DiscreteSet, added: DiscreteSet) -> Result<RationalSet> {
        let (mut intervals, kissing) = union_intervals(intervals);
        let removed = removed.union(&DiscreteSet::from_points(kissing))?;
        let removed = removed.difference(&added)?;
        let (mut removed, _) = removed.split_by(&intervals)?;
        let (_, mut added) = added.split_by(&intervals)?;

        // degenerate intervals become points
        let mut kept = Vec::with_capacity(intervals.len());
        for iv in intervals.drain(..) {
            if iv.is_degenerate() {
                if removed.contains(&iv.lo) {
                    removed = removed.remove_point(&iv.lo)?;
                } else {
                    added = added.union(&DiscreteSet::from_points([iv.lo.clone()]))?;
                }
            } else {
                kept.push(iv);
            }
        }
        // endpoints absorb holes and extra points
        for iv in kept.iter_mut() {
            if iv.lo_closed && removed.contains(&iv.lo) {
                removed = removed.remove_point(&iv.lo)?;
                iv.lo_closed = false;
            } else if !iv.lo_closed && added.contains(&iv.lo) {
                added = added.remove_point(&iv.lo)?;
                iv.lo_closed = true;
            }
            if iv.hi_closed && removed.contains(&iv.hi) {
                removed = removed.remove_point(&iv.hi)?;
                iv.hi_closed = false;
            } else if !iv.hi_closed && added.contains(&iv.hi) {
                added = added.remove_point(&iv.hi)?;
                iv.hi_closed = true;
            }
        }
        Ok(RationalSet {
            intervals: kept,
            removed,
            added,
        })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn removed(&self) -> &DiscreteSet {
        &self.removed
    }

    pub fn added(&self) -> &DiscreteSet {
        &self.added
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.added.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (self.intervals.iter().any(|i| i.contains(x)) && !self.removed.contains(x)) || self.added.contains(x)
    }

    /// `d ∩ self` for a discrete set `d`.
    pub fn meet_discrete(&self, d: &DiscreteSet) -> Result<DiscreteSet> {
        let (inside, _) = d.split_by(&self.intervals)?;
        inside.difference(&self.removed)?.union(&d.intersection(&self.added)?)
    }

    /// `d \ self` for a discrete set `d`.
    pub fn discrete_minus(&self, d: &DiscreteSet) -> Result<DiscreteSet> {
        let (inside, outside) = d.split_by(&self.intervals)?;
        let in_holes = inside.intersection(&self.removed)?;
        outside.union(&in_holes)?.difference(&self.added)
    }

    pub fn union(&self, other: &RationalSet) -> Result<RationalSet> {
        let intervals: Vec<Interval> = self.intervals.iter().chain(&other.intervals).cloned().collect();
        let removed = other
            .discrete_minus(&self.removed)?
            .union(&self.discrete_minus(&other.removed)?)?;
        let added = self.added.union(&other.added)?;
        RationalSet::from_parts(intervals, removed, added)
    }

    pub fn intersection(&self, other: &RationalSet) -> Result<RationalSet> {
        let mut intervals = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                intervals.extend(a.intersection(b));
            }
        }
        let removed = self.removed.union(&other.removed)?;
        let added = other
            .meet_discrete(&self.added)?
            .union(&self.meet_discrete(&other.added)?)?;
        RationalSet::from_parts(intervals, removed, added)
    }

    pub fn difference(&self, other: &RationalSet) -> Result<RationalSet> {
        let mut intervals = self.intervals.clone();
        for b in &other.intervals {
            intervals = intervals.iter().flat_map(|a| a.minus(b)).collect();
        }
        // holes of `other` that sit inside our intervals come back
        let (back, _) = other.removed.split_by(&self.intervals)?;
        let back = back.difference(&self.removed)?;
        let added = back.union(&other.discrete_minus(&self.added)?)?;
        let added = added.difference(&other.added)?;
        // extra points of `other` punch holes into what is left
        let removed = self.removed.union(&other.added)?;
        RationalSet::from_parts(intervals, removed, added)
    }

    pub fn is_subset(&self, other: &RationalSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn set_eq(&self, other: &RationalSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Some member, if any.
    pub fn sample(&self) -> Option<Rational> {
        if let Some(x) = self.added.sample() {
            return Some(x);
        }
        for iv in &self.intervals {
            // infinitely many candidates; the removed set is discrete so a
            // bisection sequence towards the midpoint soon escapes it
            let mut lo = iv.lo.clone();
            let hi = iv.hi.clone();
            for _ in 0..256 {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                if iv.contains(&mid) && !self.removed.contains(&mid) {
                    return Some(mid);
                }
                let third = (&lo * Rational::from_integer(2.into()) + &hi) / Rational::from_integer(3.into());
                if iv.contains(&third) && !self.removed.contains(&third) {
                    return Some(third);
                }
                lo = mid;
            }
        }
        None
    }
}

impl fmt::Display for RationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let ivs: Vec<String> = self.intervals.iter().map(|i| i.to_string()).collect();
        let mut text = ivs.join(" u ");
        if !self.removed.is_empty() {
            if ivs.len() > 1 {
                text = format!("({text})");
            }
            text = format!("{text} \\ {}", self.removed);
        }
        if !self.added.is_empty() {
            if text.is_empty() {
                text = self.added.to_string();
            } else {
                text = format!("{text} u {}", self.added);
            }
        }
        f.write_str(&text)
    }
}

impl fmt::Debug for RationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    lo_closed: bool,
    hi: String,
    hi_closed: bool,
}

#[derive(Serialize, Deserialize)]
struct RationalSetRepr {
    #[serde(default)]
    intervals: Vec<IntervalRepr>,
    #[serde(default)]
    removed: Option<DiscreteRepr>,
    #[serde(default)]
    added: Option<DiscreteRepr>,
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: self.lo.to_string(),
            lo_closed: self.lo_closed,
            hi: self.hi.to_string(),
            hi_closed: self.hi_closed,
        }
        .serialize(s)
    }
}

impl TryFrom<&IntervalRepr> for Interval {
    type Error = Error;

    fn try_from(r: &IntervalRepr) -> Result<Interval> {
        Interval::new(parse_rational(&r.lo)?, r.lo_closed, parse_rational(&r.hi)?, r.hi_closed)
            .ok_or(Error::InvalidInterval)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Interval::try_from(&IntervalRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RationalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalSetRepr {
            intervals: self
                .intervals
                .iter()
                .map(|i| IntervalRepr {
                    lo: i.lo.to_string(),
                    lo_closed: i.lo_closed,
                    hi: i.hi.to_string(),
                    hi_closed: i.hi_closed,
                })
                .collect(),
            removed: Some(DiscreteRepr::from(&self.removed)),
            added: Some(DiscreteRepr::from(&self.added)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalSetRepr::deserialize(d)?;
        let build = || -> Result<RationalSet> {
            let intervals = r.intervals.iter().map(Interval::try_from).collect::<Result<Vec<_>>>()?;
            let removed = match r.removed {
                Some(x) => DiscreteSet::try_from(x)?,
                None => DiscreteSet::empty(),
            };
            let added = match r.added {
                Some(x) => DiscreteSet::try_from(x)?,
                None => DiscreteSet::empty(),
            };
            RationalSet::from_parts(intervals, removed, added)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::ratio as q;
    use crate::symbolic::GeometricFamily;

    fn open(a: (i64, i64), b: (i64, i64)) -> RationalSet {
        RationalSet::interval(Interval::open(q(a.0, a.1), q(b.0, b.1)).unwrap())
    }

    fn closed(a: (i64, i64), b: (i64, i64)) -> RationalSet {
        RationalSet::interval(Interval::closed(q(a.0, a.1), q(b.0, b.1)).unwrap())
    }

    #[test]
    fn kissing_open_intervals_leave_a_hole() {
        let u = open((0, 1), (1, 2)).union(&open((1, 2), (1, 1))).unwrap();
        assert_eq!(u.intervals().len(), 1);
        assert!(!u.contains(&q(1, 2)));
        assert!(u.contains(&q(1, 3)) && u.contains(&q(2, 3)));
        let filled = u.union(&RationalSet::points([q(1, 2)]).unwrap()).unwrap();
        assert!(filled.removed().is_empty());
        assert_eq!(filled, open((0, 1), (1, 1)));
    }

    #[test]
    fn endpoints_absorb_points() {
        let s = open((0, 1), (1, 1))
            .union(&RationalSet::points([q(1, 1)]).unwrap())
            .unwrap();
        assert_eq!(s.intervals()[0].to_string(), "(0, 1]");
        assert!(s.added().is_empty());
        let t = closed((0, 1), (1, 1))
            .difference(&RationalSet::points([q(0, 1)]).unwrap())
            .unwrap();
        assert_eq!(t.intervals()[0].to_string(), "(0, 1]");
        assert!(t.removed().is_empty());
    }

    #[test]
    fn difference_with_tail() {
        let fam = GeometricFamily::new(q(1, 1), q(1, 2), 2).unwrap();
        let tail = RationalSet::from_parts(vec![], DiscreteSet::empty(), DiscreteSet::from_family(fam)).unwrap();
        let s = open((0, 1), (1, 2)).difference(&tail).unwrap();
        assert!(!s.contains(&q(1, 4)) && !s.contains(&q(1, 1 << 20)));
        assert!(s.contains(&q(1, 3)) && s.contains(&q(3, 8)));
        assert!(s.added().is_empty());
        // and back again
        let t = s.union(&tail).unwrap();
        assert!(t.set_eq(&open((0, 1), (1, 2))).unwrap());
        assert_eq!(t, open((0, 1), (1, 2)));
    }

    #[test]
    fn intersections_and_subsets() {
        let a = open((0, 1), (1, 2));
        let b = closed((1, 4), (1, 1));
        let c = a.intersection(&b).unwrap();
        assert_eq!(c.to_string(), "[1/4, 1/2)");
        assert!(c.is_subset(&a).unwrap() && c.is_subset(&b).unwrap());
        assert!(!a.is_subset(&b).unwrap());
        let d = open((0, 1), (1, 8)).intersection(&b).unwrap();
        assert!(d.is_empty());
        assert!(RationalSet::empty().is_empty());
    }

    #[test]
    fn serde_round_trip() {
        let fam = GeometricFamily::new(q(1, 1), q(1, 3), 3).unwrap();
        let s = RationalSet::from_parts(
            vec![Interval::open(q(0, 1), q(1, 3)).unwrap()],
            DiscreteSet::from_family(fam),
            DiscreteSet::from_points([q(2, 1)]),
        )
        .unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: RationalSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(
            text,
            r#"{"intervals":[{"lo":"0","lo_closed":false,"hi":"1/3","hi_closed":false}],"removed":{"points":[],"families":[{"base":"1","ratio":"1/3","start":3}]},"added":{"points":["2"],"families":[]}}"#
        );
    }
}
