//! Seeded generators for randomized checks. The same seed always yields the
//! same instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finite::FiniteBallSpace;
use crate::ordered::{ratio, Component, LexGroupElement, OrderInterval, UltraBall, ValueLevel};
use crate::pointset::{intersect_all, PointSet};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonempty subset of `0..n`.
pub fn random_ball<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    loop {
        let s: PointSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A space with `1..=max_n` points and `1..=max_balls` drawn balls
/// (duplicates collapse, so the family may be smaller).
pub fn random_space<R: Rng>(rng: &mut R, max_n: usize, max_balls: usize) -> FiniteBallSpace {
    let n = rng.random_range(1..=max_n);
    let k = rng.random_range(1..=max_balls);
    let balls: Vec<PointSet> = (0..k).map(|_| random_ball(rng, n)).collect();
    FiniteBallSpace::new(n, balls).expect("random balls are nonempty and in range")
}

/// A space on exactly `n` points.
pub fn random_space_on<R: Rng>(rng: &mut R, n: usize, max_balls: usize) -> FiniteBallSpace {
    let k = rng.random_range(1..=max_balls);
    let balls: Vec<PointSet> = (0..k).map(|_| random_ball(rng, n)).collect();
    FiniteBallSpace::new(n, balls).expect("random balls are nonempty and in range")
}

pub fn random_table<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..m)).collect()
}

/// A surjection `0..n → 0..m` for `m <= n`.
pub fn random_surjection<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut table: Vec<usize> = (0..m).chain((m..n).map(|_| rng.random_range(0..m))).collect();
    table.shuffle(rng);
    table
}

/// A maximal centered system of `space`, grown greedily in random order
/// from a random first ball.
pub fn random_maximal_centered<R: Rng>(rng: &mut R, space: &FiniteBallSpace) -> Vec<PointSet> {
    let mut order: Vec<PointSet> = space.balls().to_vec();
    order.shuffle(rng);
    let mut members = vec![order[0]];
    let mut inter = order[0];
    for &b in &order[1..] {
        if inter.intersects(b) {
            inter = inter.intersection(b);
            members.push(b);
        }
    }
    debug_assert!(!intersect_all(&members, space.universe()).is_empty());
    members
}

/// A random chain of balls of `space` (a nest), largest first.
pub fn random_chain<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<PointSet> {
    let mut current = PointSet::full(n);
    let mut out = vec![current];
    for _ in 1..len {
        let pts = current.to_vec();
        if pts.len() > 1 && rng.random_bool(0.7) {
            let drop = pts[rng.random_range(0..pts.len())];
            current = current.difference(PointSet::singleton(drop));
        }
        out.push(current);
    }
    out
}

fn random_coeff<R: Rng>(rng: &mut R) -> crate::ordered::Rational {
    let den = rng.random_range(1..=6);
    let num = rng.random_range(-12..=12);
    ratio(num, den)
}

/// An element supported on levels `0..levels`, each coordinate zero with
/// probability one half.
pub fn random_element<R: Rng>(rng: &mut R, levels: u32) -> LexGroupElement {
    let mut coeffs = Vec::new();
    for l in 0..levels {
        if rng.random_bool(0.5) {
            coeffs.push((l, random_coeff(rng)));
        }
    }
    LexGroupElement::from_coeffs(coeffs)
}

pub fn random_radius<R: Rng>(rng: &mut R, levels: u32) -> ValueLevel {
    if rng.random_bool(0.15) {
        ValueLevel::Infinity
    } else {
        ValueLevel::Finite(rng.random_range(0..=levels))
    }
}

pub fn random_ultra_ball<R: Rng>(rng: &mut R, levels: u32) -> UltraBall {
    UltraBall::new(random_element(rng, levels), random_radius(rng, levels))
}

/// Ball radii for unions never use level 0, whose balls are the whole group.
fn bounded_radius<R: Rng>(rng: &mut R, levels: u32) -> ValueLevel {
    if rng.random_bool(0.2) {
        ValueLevel::Infinity
    } else {
        ValueLevel::Finite(rng.random_range(1..=levels))
    }
}

/// A convex union of at most `max_components` intervals and balls: a chain
/// of points `x_0 < ... < x_k` joined by intervals or spanning balls, plus
/// balls hung on the chain points, shuffled.
pub fn random_convex_union<R: Rng>(rng: &mut R, levels: u32, max_components: usize) -> Vec<Component> {
    convex_union(rng, levels, max_components, false)
}

// `bounded` keeps every ball off radius 0
fn convex_union<R: Rng>(rng: &mut R, levels: u32, max_components: usize, bounded: bool) -> Vec<Component> {
    let k = rng.random_range(1..=max_components);
    let links = rng.random_range(1..=k);
    let mut points: Vec<LexGroupElement> = (0..=links).map(|_| random_element(rng, levels)).collect();
    points.sort();
    let mut out = Vec::with_capacity(k);
    for w in points.windows(2) {
        let span = UltraBall::spanned(&w[0], &w[1]);
        if rng.random_bool(0.5) || (bounded && span.radius == ValueLevel::Finite(0)) {
            out.push(Component::Interval(
                OrderInterval::new(w[0].clone(), w[1].clone()).expect("sorted"),
            ));
        } else {
            out.push(Component::Ball(span));
        }
    }
    while out.len() < k {
        let anchor = points[rng.random_range(0..points.len())].clone();
        out.push(Component::Ball(UltraBall::new(anchor, bounded_radius(rng, levels))));
    }
    out.shuffle(rng);
    out
}

fn level_zero_span(components: &[Component]) -> i64 {
    let mut lo = 0i64;
    let mut hi = 0i64;
    for c in components {
        for p in c.key_points() {
            let x = p.coeff(0);
            let floor = x.floor().to_integer();
            let ceil = x.ceil().to_integer();
            lo = lo.min(i64::try_from(floor).unwrap_or(i64::MIN / 4));
            hi = hi.max(i64::try_from(ceil).unwrap_or(i64::MAX / 4));
        }
    }
    hi - lo
}

/// Two convex unions pushed apart at level 0, so some element of the group
/// lies strictly between them. Balls use radius at least 1 and are bounded.
pub fn random_nonconvex_union<R: Rng>(rng: &mut R, levels: u32, max_components: usize) -> Vec<Component> {
    let left_len = rng.random_range(1..max_components.max(2));
    let right_len = rng.random_range(1..=(max_components - left_len).max(1));
    let mut left = convex_union(rng, levels, left_len, true);
    let right = convex_union(rng, levels, right_len, true);
    let shift = LexGroupElement::monomial(0, ratio(level_zero_span(&left) + level_zero_span(&right) + 2, 1));
    left.extend(right.into_iter().map(|c| translate(&c, &shift)));
    left.shuffle(rng);
    left
}

fn translate(c: &Component, t: &LexGroupElement) -> Component {
    match c {
        Component::Interval(i) => Component::Interval(OrderInterval::new(i.lo() + t, i.hi() + t).expect("order kept")),
        Component::Ball(b) => Component::Ball(UltraBall::new(&b.center + t, b.radius)),
    }
}

/// `n` distinct seeds derived from one base seed.
pub fn derive_seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut rng = seeded(seed);
    (0..n).map(|_| rng.random()).collect()
}

/// Two spaces on one random universe.
pub fn random_pair_on_same_universe<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_balls: usize,
) -> (FiniteBallSpace, FiniteBallSpace) {
    let n = rng.random_range(1..=max_n);
    (random_space_on(rng, n, max_balls), random_space_on(rng, n, max_balls))
}
