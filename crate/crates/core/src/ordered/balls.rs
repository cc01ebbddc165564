use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::{ultrametric, LexGroupElement, ValueLevel};
use crate::error::{Error, Result};

/// The closed ultrametric ball `{y : u(center, y) >= radius}`, i.e. the coset
/// `center + G_radius`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UltraBall {
    pub center: LexGroupElement,
    pub radius: ValueLevel,
}

/// Where a ball sits relative to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetPosition {
    /// every element of the ball is below the point
    EntirelyBelow,
    Contains,
    /// every element of the ball is above the point
    EntirelyAbove,
}

impl UltraBall {
    pub fn new(center: LexGroupElement, radius: ValueLevel) -> Self {
        UltraBall { center, radius }
    }

    /// `B(x, y) = B_{u(x,y)}(x)`.
    pub fn spanned(x: &LexGroupElement, y: &LexGroupElement) -> Self {
        UltraBall::new(x.clone(), ultrametric(x, y))
    }

    pub fn singleton(x: LexGroupElement) -> Self {
        UltraBall::new(x, ValueLevel::Infinity)
    }

    pub fn contains(&self, x: &LexGroupElement) -> bool {
        ultrametric(&self.center, x) >= self.radius
    }

    /// Compares the coordinates strictly below the radius; elements of the
    /// coset share exactly those with the center.
    pub fn position(&self, x: &LexGroupElement) -> CosetPosition {
        let c = self.center.truncate_below(self.radius);
        let t = x.truncate_below(self.radius);
        match c.cmp(&t) {
            Ordering::Less => CosetPosition::EntirelyBelow,
            Ordering::Equal => CosetPosition::Contains,
            Ordering::Greater => CosetPosition::EntirelyAbove,
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &UltraBall) -> bool {
        self.radius >= other.radius && ultrametric(&self.center, &other.center) >= other.radius
    }

    pub fn intersects(&self, other: &UltraBall) -> bool {
        ultrametric(&self.center, &other.center) >= self.radius.min(other.radius)
    }

    /// The intersection, which for ultrametric balls is empty or the smaller ball.
    pub fn intersection(&self, other: &UltraBall) -> Option<UltraBall> {
        if !self.intersects(other) {
            None
        } else if self.radius >= other.radius {
            Some(self.clone())
        } else {
            Some(other.clone())
        }
    }

    /// The ball as a closed interval, if it is one. A ball of finite radius
    /// `γ` has no largest element (add `e_γ`), so only singletons qualify.
    pub fn as_interval(&self) -> Option<OrderInterval> {
        match self.radius {
            ValueLevel::Infinity => Some(OrderInterval::point(self.center.clone())),
            ValueLevel::Finite(_) => None,
        }
    }

    /// Same set, regardless of which center was chosen.
    pub fn same_set(&self, other: &UltraBall) -> bool {
        self.radius == other.radius && self.contains(&other.center)
    }
}

impl fmt::Debug for UltraBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}({})", self.radius, self.center)
    }
}

/// A nonempty closed bounded interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr")]
pub struct OrderInterval {
    lo: LexGroupElement,
    hi: LexGroupElement,
}

#[derive(Deserialize)]
struct IntervalRepr {
    lo: LexGroupElement,
    hi: LexGroupElement,
}

impl TryFrom<IntervalRepr> for OrderInterval {
    type Error = Error;

    fn try_from(r: IntervalRepr) -> Result<Self> {
        OrderInterval::new(r.lo, r.hi)
    }
}

impl OrderInterval {
    pub fn new(lo: LexGroupElement, hi: LexGroupElement) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        Ok(OrderInterval { lo, hi })
    }

    pub fn point(x: LexGroupElement) -> Self {
        OrderInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &LexGroupElement {
        &self.lo
    }

    pub fn hi(&self) -> &LexGroupElement {
        &self.hi
    }

    pub fn contains(&self, x: &LexGroupElement) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersection(&self, other: &OrderInterval) -> Option<OrderInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        OrderInterval::new(lo, hi).ok()
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Debug for OrderInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A closed bounded interval or an ultrametric ball.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Interval(OrderInterval),
    Ball(UltraBall),
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Interval(i) => i.fmt(f),
            Component::Ball(b) => b.fmt(f),
        }
    }
}

impl Component {
    pub fn contains(&self, x: &LexGroupElement) -> bool {
        match self {
            Component::Interval(i) => i.contains(x),
            Component::Ball(b) => b.contains(x),
        }
    }

    /// Every element of the component is strictly below `x`.
    pub fn is_below(&self, x: &LexGroupElement) -> bool {
        match self {
            Component::Interval(i) => i.hi() < x,
            Component::Ball(b) => b.position(x) == CosetPosition::EntirelyBelow,
        }
    }

    /// Every element of the component is strictly above `x`.
    pub fn is_above(&self, x: &LexGroupElement) -> bool {
        match self {
            Component::Interval(i) => i.lo() > x,
            Component::Ball(b) => b.position(x) == CosetPosition::EntirelyAbove,
        }
    }

    pub fn intersects(&self, other: &Component) -> bool {
        match (self, other) {
            (Component::Interval(a), Component::Interval(b)) => a.intersection(b).is_some(),
            (Component::Ball(a), Component::Ball(b)) => a.intersects(b),
            (Component::Interval(i), Component::Ball(b)) | (Component::Ball(b), Component::Interval(i)) => {
                // a convex ball meets [lo, hi] unless it lies wholly on one side
                let lo = b.position(i.lo());
                let hi = b.position(i.hi());
                !(lo == CosetPosition::EntirelyBelow || hi == CosetPosition::EntirelyAbove)
            }
        }
    }

    /// Some element of the component.
    pub fn representative(&self) -> &LexGroupElement {
        match self {
            Component::Interval(i) => i.lo(),
            Component::Ball(b) => &b.center,
        }
    }

    /// Points that pin the component down: endpoints or centers.
    pub fn key_points(&self) -> Vec<LexGroupElement> {
        match self {
            Component::Interval(i) => vec![i.lo().clone(), i.hi().clone()],
            Component::Ball(b) => vec![b.center.clone()],
        }
    }

    /// Levels at which a perturbation can cross the component's boundary.
    pub fn levels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .key_points()
            .iter()
            .flat_map(|p| p.support().collect::<Vec<_>>())
            .collect();
        if let Component::Ball(UltraBall {
            radius: ValueLevel::Finite(r),
            ..
        }) = self
        {
            out.push(*r);
            if *r > 0 {
                out.push(r - 1);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::element::ratio;

    fn el(terms: &[(u32, i64)]) -> LexGroupElement {
        LexGroupElement::from_coeffs(terms.iter().map(|&(l, c)| (l, ratio(c, 1))))
    }

    #[test]
    fn center_belongs_and_every_element_is_a_center() {
        let b = UltraBall::new(el(&[(0, 1), (1, 2)]), ValueLevel::Finite(1));
        assert!(b.contains(&b.center));
        let y = el(&[(0, 1), (1, -50), (4, 3)]);
        assert!(b.contains(&y));
        let moved = UltraBall::new(y, b.radius);
        assert!(moved.same_set(&b));
        assert!(moved.is_subset(&b) && b.is_subset(&moved));
    }

    #[test]
    fn subset_examples() {
        let small = UltraBall::new(el(&[(0, 1)]), ValueLevel::Finite(2));
        let big = UltraBall::new(el(&[(0, 1)]), ValueLevel::Finite(1));
        assert!(small.is_subset(&big));
        assert!(!big.is_subset(&small));
        let a = UltraBall::new(el(&[(0, 1)]), ValueLevel::Finite(1));
        let b = UltraBall::new(el(&[(0, 2)]), ValueLevel::Finite(1));
        assert!(!a.is_subset(&b) && !b.is_subset(&a) && !a.intersects(&b));
    }

    #[test]
    fn coset_positions() {
        let b = UltraBall::new(el(&[(0, 1), (1, 2)]), ValueLevel::Finite(1));
        assert_eq!(b.position(&el(&[(0, 1), (1, 9)])), CosetPosition::Contains);
        assert_eq!(b.position(&el(&[(0, 2)])), CosetPosition::EntirelyBelow);
        assert_eq!(b.position(&el(&[(0, 0), (1, 1000)])), CosetPosition::EntirelyAbove);
        // radius infinity is point comparison
        let p = UltraBall::singleton(el(&[(1, 1)]));
        assert_eq!(p.position(&el(&[(1, 1)])), CosetPosition::Contains);
        assert_eq!(p.position(&el(&[(1, 2)])), CosetPosition::EntirelyBelow);
        assert_eq!(p.position(&el(&[(2, 5)])), CosetPosition::EntirelyAbove);
    }

    #[test]
    fn interval_intersection() {
        let a = OrderInterval::new(el(&[(0, 0)]), el(&[(0, 3)])).unwrap();
        let b = OrderInterval::new(el(&[(0, 2)]), el(&[(0, 5)])).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!((c.lo(), c.hi()), (&el(&[(0, 2)]), &el(&[(0, 3)])));
        assert!(OrderInterval::new(el(&[(0, 1)]), el(&[])).is_err());
    }

    #[test]
    fn singleton_ball_is_an_interval() {
        let x = el(&[(0, 1)]);
        let i = UltraBall::singleton(x.clone()).as_interval().unwrap();
        assert!(i.is_singleton());
        assert!(UltraBall::new(x, ValueLevel::Finite(3)).as_interval().is_none());
    }

    #[test]
    fn interval_ball_overlap() {
        let iv = Component::Interval(OrderInterval::new(el(&[]), el(&[(0, 1)])).unwrap());
        let touching = Component::Ball(UltraBall::new(el(&[(0, 1)]), ValueLevel::Finite(1)));
        let inside = Component::Ball(UltraBall::new(el(&[(1, 1)]), ValueLevel::Finite(2)));
        let apart = Component::Ball(UltraBall::new(el(&[(0, 3)]), ValueLevel::Finite(1)));
        assert!(iv.intersects(&touching));
        assert!(iv.intersects(&inside));
        assert!(!iv.intersects(&apart));
        assert!(iv.is_below(&el(&[(0, 2)])));
        assert!(apart.is_above(&el(&[(0, 2)])));
    }
}
