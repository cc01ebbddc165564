use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::balls::{Component, OrderInterval, UltraBall};
use super::element::{ratio, ultrametric, LexGroupElement, ValueLevel};
use crate::error::{Error, Result};

/// `B_α(a) ∪ [a, b] ∪ B_β(b)` with `a <= b`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BarBell {
    pub left_radius: ValueLevel,
    pub a: LexGroupElement,
    pub b: LexGroupElement,
    pub right_radius: ValueLevel,
}

impl BarBell {
    pub fn new(
        left_radius: ValueLevel,
        a: LexGroupElement,
        b: LexGroupElement,
        right_radius: ValueLevel,
    ) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidInterval);
        }
        Ok(BarBell {
            left_radius,
            a,
            b,
            right_radius,
        })
    }

    pub fn left_ball(&self) -> UltraBall {
        UltraBall::new(self.a.clone(), self.left_radius)
    }

    pub fn right_ball(&self) -> UltraBall {
        UltraBall::new(self.b.clone(), self.right_radius)
    }

    pub fn interval(&self) -> OrderInterval {
        OrderInterval::new(self.a.clone(), self.b.clone()).expect("a <= b")
    }

    /// The three components, left ball first.
    pub fn components(&self) -> [Component; 3] {
        [
            Component::Ball(self.left_ball()),
            Component::Interval(self.interval()),
            Component::Ball(self.right_ball()),
        ]
    }

    pub fn contains(&self, x: &LexGroupElement) -> bool {
        (&self.a <= x && x <= &self.b) || self.left_ball().contains(x) || self.right_ball().contains(x)
    }
}

impl fmt::Debug for BarBell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B_{}({}) ∪ [{}, {}] ∪ B_{}({})",
            self.left_radius, self.a, self.a, self.b, self.right_radius, self.b
        )
    }
}

/// Outcome of the convexity test on a finite union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convexity {
    Convex,
    /// `witness` is outside the union, above component `below` and under
    /// component `above`.
    Gap {
        witness: LexGroupElement,
        below: usize,
        above: usize,
    },
}

pub fn union_contains(components: &[Component], x: &LexGroupElement) -> bool {
    components.iter().any(|c| c.contains(x))
}

/// Decides whether a finite union of intervals and balls is order convex.
///
/// Each component is convex, so the union is convex exactly when the
/// intersection graph is connected: two disjoint convex sets always have an
/// element strictly between them, and [`Convexity::Gap`] carries one.
pub fn convexity(components: &[Component]) -> Convexity {
    let n = components.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if components[i].intersects(&components[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let root = if n == 0 { 0 } else { find(&mut parent, 0) };
    if (0..n).all(|i| find(&mut parent, i) == root) {
        return Convexity::Convex;
    }
    // Disjoint components are linearly ordered; the gap element between the
    // topmost part of one group and the lowest part of the next is outside
    // the union, so trying every ordered pair always finds a witness.
    for i in 0..n {
        for j in 0..n {
            if i == j || components[i].intersects(&components[j]) {
                continue;
            }
            if components[i].representative() > components[j].representative() {
                continue;
            }
            let y = gap_element(&components[i], &components[j]);
            if !union_contains(components, &y) {
                return Convexity::Gap {
                    witness: y,
                    below: i,
                    above: j,
                };
            }
        }
    }
    unreachable!("disconnected union without a gap element")
}

pub fn is_convex_union(components: &[Component]) -> bool {
    convexity(components) == Convexity::Convex
}

/// For disjoint `lower < upper`, an element above all of `lower` and below
/// all of `upper`.
fn gap_element(lower: &Component, upper: &Component) -> LexGroupElement {
    let p = match lower {
        Component::Interval(i) => i.hi(),
        Component::Ball(b) => &b.center,
    };
    let q = match upper {
        Component::Interval(i) => i.lo(),
        Component::Ball(b) => &b.center,
    };
    // p < q first differ at a level below both radii, since the sets are disjoint
    let level = ultrametric(p, q).finite().expect("distinct points");
    let mid = (p.coeff(level) + q.coeff(level)) * ratio(1, 2);
    &p.truncate_below(ValueLevel::Finite(level)) + &LexGroupElement::monomial(level, mid)
}

/// Rewrites a convex finite union as a bar-bell.
///
/// Balls contained in other balls are dropped, interval endpoints not covered
/// by a ball become singleton balls, and the balls with the least and the
/// greatest center give the two ends.
pub fn normalize_to_barbell(components: &[Component]) -> Result<BarBell> {
    if components.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Convexity::Gap { witness, .. } = convexity(components) {
        return Err(Error::NotConvex { witness });
    }
    let mut balls: Vec<UltraBall> = Vec::new();
    for c in components {
        match c {
            Component::Ball(b) => balls.push(b.clone()),
            Component::Interval(i) => {
                balls.push(UltraBall::singleton(i.lo().clone()));
                balls.push(UltraBall::singleton(i.hi().clone()));
            }
        }
    }
    // keep the maximal balls, one representative per set
    let mut kept: Vec<UltraBall> = Vec::new();
    for (i, b) in balls.iter().enumerate() {
        let dominated = balls
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && b.is_subset(other) && (!other.is_subset(b) || j < i));
        if !dominated {
            kept.push(b.clone());
        }
    }
    let left = kept.iter().min_by(|x, y| x.center.cmp(&y.center)).expect("nonempty");
    let right = kept.iter().max_by(|x, y| x.center.cmp(&y.center)).expect("nonempty");
    BarBell::new(left.radius, left.center.clone(), right.center.clone(), right.radius)
}

/// Deterministic probe points for a finite union: key points, their pairwise
/// midpoints, and perturbations `p ± δ e_ℓ` for every key point `p`, every
/// relevant level `ℓ` and `δ ∈ {1, 1/3, 100}`.
pub fn sample_points(components: &[Component]) -> Vec<LexGroupElement> {
    let mut keys: BTreeSet<LexGroupElement> = BTreeSet::new();
    let mut levels: BTreeSet<u32> = BTreeSet::new();
    levels.insert(0);
    for c in components {
        keys.extend(c.key_points());
        levels.extend(c.levels());
    }
    if let Some(&top) = levels.iter().next_back() {
        levels.insert(top + 1);
    }
    let keys: Vec<LexGroupElement> = keys.into_iter().collect();
    let mut out: BTreeSet<LexGroupElement> = keys.iter().cloned().collect();
    for (i, p) in keys.iter().enumerate() {
        for q in &keys[i + 1..] {
            out.insert(p.midpoint(q));
        }
    }
    let deltas = [ratio(1, 1), ratio(1, 3), ratio(100, 1)];
    for p in &keys {
        for &l in &levels {
            for d in &deltas {
                let step = LexGroupElement::monomial(l, d.clone());
                out.insert(p + &step);
                out.insert(p - &step);
            }
        }
    }
    out.into_iter().collect()
}

/// Checks of the structural facts about bar-bells and the two ball families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarBellPropertyReport {
    /// the normal form uses at most three balls or intervals
    pub at_most_three_components: bool,
    /// every ultrametric ball that agrees with an interval is a singleton
    pub ball_interval_coincidences_singleton: bool,
    /// intersections of balls are balls and of intervals are intervals
    pub intersections_closed: bool,
}

impl BarBellPropertyReport {
    pub fn all_hold(&self) -> bool {
        self.at_most_three_components && self.ball_interval_coincidences_singleton && self.intersections_closed
    }
}

/// Runs the property checks on one instance and its normal form, using
/// [`sample_points`] as the membership oracle.
pub fn check_barbell_properties(components: &[Component], barbell: &BarBell) -> BarBellPropertyReport {
    let mut all: Vec<Component> = components.to_vec();
    all.extend(barbell.components());
    let samples = sample_points(&all);
    let at_most_three_components = barbell.components().len() <= 3;

    let balls: Vec<&UltraBall> = all
        .iter()
        .filter_map(|c| match c {
            Component::Ball(b) => Some(b),
            _ => None,
        })
        .collect();
    let intervals: Vec<&OrderInterval> = all
        .iter()
        .filter_map(|c| match c {
            Component::Interval(i) => Some(i),
            _ => None,
        })
        .collect();

    let mut coincidences_ok = true;
    for b in &balls {
        let mut candidates: Vec<OrderInterval> = intervals.iter().map(|i| (*i).clone()).collect();
        candidates.extend(b.as_interval());
        for iv in &candidates {
            let agree = samples.iter().all(|x| b.contains(x) == iv.contains(x));
            if agree && b.radius != ValueLevel::Infinity {
                coincidences_ok = false;
            }
        }
    }

    let mut intersections_ok = true;
    for (i, x) in balls.iter().enumerate() {
        for y in &balls[i + 1..] {
            if x.intersects(y) {
                let ok = match x.intersection(y) {
                    Some(z) => samples
                        .iter()
                        .all(|s| (x.contains(s) && y.contains(s)) == z.contains(s)),
                    None => false,
                };
                intersections_ok &= ok && (x.is_subset(y) || y.is_subset(x));
            }
        }
    }
    for (i, x) in intervals.iter().enumerate() {
        for y in &intervals[i + 1..] {
            if let Some(z) = x.intersection(y) {
                intersections_ok &= samples
                    .iter()
                    .all(|s| (x.contains(s) && y.contains(s)) == z.contains(s));
            }
        }
    }

    BarBellPropertyReport {
        at_most_three_components,
        ball_interval_coincidences_singleton: coincidences_ok,
        intersections_closed: intersections_ok,
    }
}

/// Whether `barbell` and the union agree on every sample point.
pub fn agrees_on_samples(components: &[Component], barbell: &BarBell) -> bool {
    let mut all: Vec<Component> = components.to_vec();
    all.extend(barbell.components());
    sample_points(&all)
        .iter()
        .all(|x| union_contains(components, x) == barbell.contains(x))
}

/// Whether a gap witness is genuine: outside the union, with some component
/// entirely below it and some entirely above.
pub fn witness_separates(components: &[Component], witness: &LexGroupElement) -> bool {
    !union_contains(components, witness)
        && components.iter().any(|c| c.is_below(witness))
        && components.iter().any(|c| c.is_above(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(terms: &[(u32, i64)]) -> LexGroupElement {
        LexGroupElement::from_coeffs(terms.iter().map(|&(l, c)| (l, ratio(c, 1))))
    }

    fn iv(a: LexGroupElement, b: LexGroupElement) -> Component {
        Component::Interval(OrderInterval::new(a, b).unwrap())
    }

    fn ball(c: LexGroupElement, r: u32) -> Component {
        Component::Ball(UltraBall::new(c, ValueLevel::Finite(r)))
    }

    #[test]
    fn single_interval() {
        let (a, b) = (el(&[]), el(&[(0, 2)]));
        let bb = normalize_to_barbell(&[iv(a.clone(), b.clone())]).unwrap();
        assert_eq!(
            bb,
            BarBell::new(ValueLevel::Infinity, a, b, ValueLevel::Infinity).unwrap()
        );
    }

    #[test]
    fn interval_with_ball_at_its_end() {
        let e0 = LexGroupElement::unit(0);
        let input = [iv(el(&[]), e0.clone()), ball(e0.clone(), 1)];
        let bb = normalize_to_barbell(&input).unwrap();
        assert_eq!(
            bb,
            BarBell::new(ValueLevel::Infinity, el(&[]), e0, ValueLevel::Finite(1)).unwrap()
        );
        assert!(agrees_on_samples(&input, &bb));
    }

    #[test]
    fn single_ball() {
        let c = el(&[(0, 1), (2, 5)]);
        let bb = normalize_to_barbell(&[ball(c.clone(), 2)]).unwrap();
        assert_eq!(
            bb,
            BarBell::new(ValueLevel::Finite(2), c.clone(), c, ValueLevel::Finite(2)).unwrap()
        );
    }

    #[test]
    fn nested_balls_keep_the_larger() {
        // the inner ball has a smaller center but is swallowed by the outer one
        let input = [
            ball(el(&[(0, 1), (1, -7)]), 2),
            ball(el(&[(0, 1)]), 1),
            iv(el(&[(0, 1)]), el(&[(0, 3)])),
        ];
        let bb = normalize_to_barbell(&input).unwrap();
        assert_eq!(bb.left_radius, ValueLevel::Finite(1));
        assert!(agrees_on_samples(&input, &bb));
    }

    #[test]
    fn separated_balls_are_rejected_with_a_witness() {
        let input = [ball(el(&[(0, 1)]), 1), ball(el(&[(0, 2)]), 1)];
        let Convexity::Gap { witness, .. } = convexity(&input) else {
            panic!("expected a gap")
        };
        assert_eq!(witness, LexGroupElement::from_ratios(&[(0, 3, 2)]));
        assert!(witness_separates(&input, &witness));
        assert!(matches!(normalize_to_barbell(&input), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn gap_skips_points_covered_by_other_components() {
        // the naive midpoint 1/2 between the outer pieces is covered
        let input = [
            iv(el(&[]), el(&[])),
            iv(
                LexGroupElement::from_ratios(&[(0, 1, 4)]),
                LexGroupElement::from_ratios(&[(0, 3, 4)]),
            ),
            iv(el(&[(0, 1)]), el(&[(0, 1)])),
        ];
        let Convexity::Gap { witness, .. } = convexity(&input) else {
            panic!("expected a gap")
        };
        assert!(witness_separates(&input, &witness));
    }

    #[test]
    fn barbell_is_convex_on_samples() {
        let bb = BarBell::new(ValueLevel::Finite(1), el(&[]), el(&[(0, 1)]), ValueLevel::Finite(2)).unwrap();
        let pts = sample_points(&bb.components());
        let inside: Vec<&LexGroupElement> = pts.iter().filter(|p| bb.contains(p)).collect();
        for y in &pts {
            let lo = inside.iter().any(|x| *x <= y);
            let hi = inside.iter().any(|z| *z >= y);
            if lo && hi {
                assert!(bb.contains(y), "{y}");
            }
        }
    }

    #[test]
    fn property_report_on_example() {
        let e0 = LexGroupElement::unit(0);
        let input = [iv(el(&[]), e0.clone()), ball(e0, 1)];
        let bb = normalize_to_barbell(&input).unwrap();
        assert!(check_barbell_properties(&input, &bb).all_hold());
    }

    #[test]
    fn serde_round_trip() {
        let bb = BarBell::new(ValueLevel::Infinity, el(&[]), el(&[(0, 1)]), ValueLevel::Finite(1)).unwrap();
        let text = serde_json::to_string(&bb).unwrap();
        assert_eq!(
            text,
            r#"{"left_radius":"inf","a":{"coeffs":{}},"b":{"coeffs":{"0":"1"}},"right_radius":1}"#
        );
        let back: BarBell = serde_json::from_str(&text).unwrap();
        assert_eq!(back, bb);
    }
}
