//! Explicit finite ball spaces.
//!
//! A [`FiniteBallSpace`] is a universe `0..n` together with a nonempty,
//! duplicate-free family of nonempty subsets. The family is kept in canonical
//! order (size, then lexicographic) so that every greedy construction in this
//! module is deterministic.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::pointset::{canonicalize_family, intersect_all, PointSet, MAX_POINTS};

/// Limits for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_balls: usize,
    pub max_points: usize,
    pub execution: Execution,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_balls: 20,
            max_points: 24,
            execution: Execution::default(),
        }
    }
}

impl Config {
    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn check(&self, space: &FiniteBallSpace) -> Result<()> {
        if space.balls.len() > self.max_balls {
            return Err(Error::EnumerationBoundExceeded {
                what: "number of balls",
                size: space.balls.len(),
                bound: self.max_balls,
            });
        }
        if space.n > self.max_points {
            return Err(Error::EnumerationBoundExceeded {
                what: "universe size",
                size: space.n,
                bound: self.max_points,
            });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct FiniteBallSpace {
    n: usize,
    balls: Vec<PointSet>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    n: usize,
    balls: Vec<Vec<usize>>,
}

impl TryFrom<SpaceRepr> for FiniteBallSpace {
    type Error = Error;

    fn try_from(repr: SpaceRepr) -> Result<Self> {
        FiniteBallSpace::from_lists(repr.n, &repr.balls)
    }
}

impl From<FiniteBallSpace> for SpaceRepr {
    fn from(space: FiniteBallSpace) -> Self {
        SpaceRepr {
            n: space.n,
            balls: space.balls.iter().map(|b| b.to_vec()).collect(),
        }
    }
}

impl fmt::Debug for FiniteBallSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} points, [", self.n)?;
        for (i, b) in self.balls.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("])")
    }
}

/// Validates a universe size and a set against it.
pub(crate) fn check_subset(n: usize, set: PointSet) -> Result<()> {
    if !set.is_subset(PointSet::full(n)) {
        let point = set.difference(PointSet::full(n)).first().unwrap_or(n);
        return Err(Error::OutOfRangePoint { point, n });
    }
    Ok(())
}

pub(crate) fn check_universe(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
    }
    Ok(())
}

/// Converts a list of points to a set, rejecting points outside `0..n`.
pub fn set_from_points(n: usize, points: &[usize]) -> Result<PointSet> {
    check_universe(n)?;
    for &point in points {
        if point >= n {
            return Err(Error::OutOfRangePoint { point, n });
        }
    }
    Ok(PointSet::from_points(points.iter().copied()))
}

impl FiniteBallSpace {
    pub fn new<I: IntoIterator<Item = PointSet>>(n: usize, balls: I) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        check_universe(n)?;
        let mut family = Vec::new();
        for ball in balls {
            if ball.is_empty() {
                return Err(Error::EmptyBall);
            }
            check_subset(n, ball)?;
            family.push(ball);
        }
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        canonicalize_family(&mut family);
        Ok(FiniteBallSpace { n, balls: family })
    }

    pub fn from_lists(n: usize, balls: &[Vec<usize>]) -> Result<Self> {
        check_universe(n)?;
        let sets = balls
            .iter()
            .map(|b| set_from_points(n, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// Balls in canonical order.
    pub fn balls(&self) -> &[PointSet] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn contains_ball(&self, set: PointSet) -> bool {
        self.index_of(set).is_some()
    }

    pub fn index_of(&self, set: PointSet) -> Option<usize> {
        self.balls.binary_search_by(|b| b.canonical_cmp(&set)).ok()
    }

    fn check_subfamily(&self, family: &[PointSet]) -> Result<()> {
        if family.is_empty() {
            return Err(Error::EmptySubfamily);
        }
        for &set in family {
            if !self.contains_ball(set) {
                return Err(Error::NotASubfamily { set });
            }
        }
        Ok(())
    }

    /// Whether `family` is totally ordered by inclusion.
    pub fn is_nest(&self, family: &[PointSet]) -> Result<bool> {
        self.check_subfamily(family)?;
        Ok(is_chain(family))
    }

    /// Whether every finite subfamily of `family` has a common point. For a
    /// finite family this is nonemptiness of its full intersection.
    pub fn is_centered(&self, family: &[PointSet]) -> Result<bool> {
        self.check_subfamily(family)?;
        Ok(!intersect_all(family, self.universe()).is_empty())
    }

    /// The ball `B*` inside `region` that contains every ball inside `region`.
    pub fn largest_ball_in(&self, region: PointSet) -> Option<PointSet> {
        largest_ball_in(&self.balls, region)
    }

    /// Classifies the space in the S1..S4 hierarchy and its centered variants.
    pub fn classify(&self, config: &Config) -> Result<HierarchyReport> {
        config.check(self)?;
        let nests = reachable_intersections(&self.balls, Rule::Chain, config.execution);
        let centered = reachable_intersections(&self.balls, Rule::Centered, config.execution);
        let mut report = HierarchyReport::all_true();
        for (level, goal) in Goal::ALL.iter().enumerate() {
            if let Some(w) = nests.iter().find(|(t, _)| !goal.holds(&self.balls, *t)) {
                report.set(Property::nest(level), false, self.family_of(&w.1));
            }
            if let Some(w) = centered.iter().find(|(t, _)| !goal.holds(&self.balls, *t)) {
                report.set(Property::centered(level), false, self.family_of(&w.1));
            }
        }
        Ok(report)
    }

    fn family_of(&self, indices: &[usize]) -> Vec<PointSet> {
        indices.iter().map(|&i| self.balls[i]).collect()
    }

    /// The family `B1 ∪ B2` of two spaces on the same universe.
    pub fn union_families(&self, other: &FiniteBallSpace) -> Result<FiniteBallSpace> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Self::new(self.n, self.balls.iter().chain(&other.balls).copied())
    }

    /// Closure of the family under finite unions.
    pub fn f_un_closure(&self, config: &Config) -> Result<FiniteBallSpace> {
        config.check(self)?;
        Ok(self.closure_by(|_, _| true))
    }

    /// Closure under unions of pseudo-convex sequences, i.e. under unions of
    /// two members that intersect. Experimental; no completeness claim.
    pub fn pseudo_convex_closure(&self, config: &Config) -> Result<FiniteBallSpace> {
        config.check(self)?;
        Ok(self.closure_by(|acc, b| acc.intersects(b)))
    }

    fn closure_by(&self, joinable: impl Fn(PointSet, PointSet) -> bool) -> FiniteBallSpace {
        let mut seen: HashSet<PointSet> = self.balls.iter().copied().collect();
        let mut queue: Vec<PointSet> = self.balls.clone();
        while let Some(acc) = queue.pop() {
            for &b in &self.balls {
                if joinable(acc, b) {
                    let u = acc.union(b);
                    if seen.insert(u) {
                        queue.push(u);
                    }
                }
            }
        }
        let mut balls: Vec<PointSet> = seen.into_iter().collect();
        canonicalize_family(&mut balls);
        FiniteBallSpace { n: self.n, balls }
    }

    /// Whether consecutive members of `sequence` intersect.
    pub fn is_pseudo_convex(&self, sequence: &[PointSet]) -> Result<bool> {
        self.check_subfamily(sequence)?;
        Ok(sequence.windows(2).all(|w| w[0].intersects(w[1])))
    }

    /// Greedily extends a centered seed to a maximal centered system, trying
    /// balls in canonical family order. Maximal extensions are not unique;
    /// this one is the first in that order.
    pub fn extend_to_maximal_centered(&self, seed: &[PointSet]) -> Result<CenteredSystem> {
        self.check_subfamily(seed)?;
        let mut members: Vec<PointSet> = seed.to_vec();
        canonicalize_family(&mut members);
        let mut inter = intersect_all(&members, self.universe());
        if inter.is_empty() {
            return Err(Error::NotCentered);
        }
        // one pass suffices: the intersection only shrinks, so a rejected ball
        // stays rejected
        for &b in &self.balls {
            if !members.contains(&b) && inter.intersects(b) {
                inter = inter.intersection(b);
                members.push(b);
            }
        }
        canonicalize_family(&mut members);
        Ok(CenteredSystem { members })
    }

    /// For a maximal centered system of `closure` (the f-un closure of
    /// `self`), returns the members that are balls of `self`.
    pub fn extract_base_subsystem(&self, closure: &FiniteBallSpace, system: &[PointSet]) -> Result<CenteredSystem> {
        if closure.n != self.n {
            return Err(Error::UniverseMismatch {
                left: self.n,
                right: closure.n,
            });
        }
        closure.check_subfamily(&self.balls)?;
        closure.check_subfamily(system)?;
        let inter = intersect_all(system, closure.universe());
        if inter.is_empty() {
            return Err(Error::NotCentered);
        }
        if let Some(&ball) = closure
            .balls
            .iter()
            .find(|b| !system.contains(b) && b.intersects(inter))
        {
            return Err(Error::NotMaximal { ball });
        }
        let mut members: Vec<PointSet> = system.iter().copied().filter(|b| self.contains_ball(*b)).collect();
        if members.is_empty() {
            return Err(Error::EmptySubfamily);
        }
        canonicalize_family(&mut members);
        Ok(CenteredSystem { members })
    }

    /// A sub-space with one ball removed, if any ball remains.
    pub fn without_ball(&self, ball: PointSet) -> Option<FiniteBallSpace> {
        let rest: Vec<PointSet> = self.balls.iter().copied().filter(|b| *b != ball).collect();
        Self::new(self.n, rest).ok()
    }

    pub fn with_ball(&self, ball: PointSet) -> Result<FiniteBallSpace> {
        Self::new(self.n, self.balls.iter().copied().chain([ball]))
    }
}

pub(crate) fn is_chain(family: &[PointSet]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, a)| family[i + 1..].iter().all(|b| a.is_subset(*b) || b.is_subset(*a)))
}

pub(crate) fn largest_ball_in(balls: &[PointSet], region: PointSet) -> Option<PointSet> {
    let inside: Vec<PointSet> = balls.iter().copied().filter(|b| b.is_subset(region)).collect();
    let hull = inside.iter().fold(PointSet::EMPTY, |acc, b| acc.union(*b));
    inside.into_iter().find(|b| *b == hull)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    /// extend by a strict superset of the last ball
    Chain,
    /// extend by any later ball meeting the running intersection
    Centered,
}

/// Every distinct intersection of a chain (or centered subfamily) of
/// `balls`, each with the index path of one family realizing it. Families
/// are explored in increasing index order; a state is the last index plus
/// the running intersection, which determines all further extensions.
fn reachable_intersections(balls: &[PointSet], rule: Rule, execution: Execution) -> Vec<(PointSet, Vec<usize>)> {
    let per_start = execution.map_range(0..balls.len(), |start| {
        let mut visited: HashSet<(usize, PointSet)> = HashSet::new();
        let mut found: Vec<(PointSet, Vec<usize>)> = Vec::new();
        let mut seen_inter: HashSet<PointSet> = HashSet::new();
        let mut stack = vec![(start, balls[start], vec![start])];
        visited.insert((start, balls[start]));
        while let Some((last, inter, path)) = stack.pop() {
            if seen_inter.insert(inter) {
                found.push((inter, path.clone()));
            }
            for next in (last + 1..balls.len()).rev() {
                let ok = match rule {
                    Rule::Chain => balls[last].is_subset(balls[next]),
                    Rule::Centered => inter.intersects(balls[next]),
                };
                if !ok {
                    continue;
                }
                let meet = inter.intersection(balls[next]);
                if visited.insert((next, meet)) {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push((next, meet, p));
                }
            }
        }
        found
    });
    let mut seen = HashSet::new();
    per_start
        .into_iter()
        .flatten()
        .filter(|(inter, _)| seen.insert(*inter))
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Goal {
    Nonempty,
    ContainsBall,
    ContainsLargestBall,
    IsBall,
}

impl Goal {
    const ALL: [Goal; 4] = [
        Goal::Nonempty,
        Goal::ContainsBall,
        Goal::ContainsLargestBall,
        Goal::IsBall,
    ];

    fn holds(self, balls: &[PointSet], t: PointSet) -> bool {
        match self {
            Goal::Nonempty => !t.is_empty(),
            Goal::ContainsBall => balls.iter().any(|b| b.is_subset(t)),
            Goal::ContainsLargestBall => largest_ball_in(balls, t).is_some(),
            Goal::IsBall => balls.contains(&t),
        }
    }
}

/// One of the eight completeness properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    S1,
    S2,
    S3,
    S4,
    S1c,
    S2c,
    S3c,
    S4c,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::S1,
        Property::S2,
        Property::S3,
        Property::S4,
        Property::S1c,
        Property::S2c,
        Property::S3c,
        Property::S4c,
    ];

    fn nest(level: usize) -> Property {
        Property::ALL[level]
    }

    fn centered(level: usize) -> Property {
        Property::ALL[level + 4]
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::S1 => "s1",
            Property::S2 => "s2",
            Property::S3 => "s3",
            Property::S4 => "s4",
            Property::S1c => "s1c",
            Property::S2c => "s2c",
            Property::S3c => "s3c",
            Property::S4c => "s4c",
        }
    }
}

/// Exact hierarchy flags, with a violating family for every false flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub s4: bool,
    pub s1c: bool,
    pub s2c: bool,
    pub s3c: bool,
    pub s4c: bool,
    pub witnesses: BTreeMap<Property, Vec<PointSet>>,
}

impl HierarchyReport {
    fn all_true() -> Self {
        HierarchyReport {
            s1: true,
            s2: true,
            s3: true,
            s4: true,
            s1c: true,
            s2c: true,
            s3c: true,
            s4c: true,
            witnesses: BTreeMap::new(),
        }
    }

    fn set(&mut self, p: Property, value: bool, witness: Vec<PointSet>) {
        *self.flag_mut(p) = value;
        if !value {
            self.witnesses.insert(p, witness);
        }
    }

    fn flag_mut(&mut self, p: Property) -> &mut bool {
        match p {
            Property::S1 => &mut self.s1,
            Property::S2 => &mut self.s2,
            Property::S3 => &mut self.s3,
            Property::S4 => &mut self.s4,
            Property::S1c => &mut self.s1c,
            Property::S2c => &mut self.s2c,
            Property::S3c => &mut self.s3c,
            Property::S4c => &mut self.s4c,
        }
    }

    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::S1 => self.s1,
            Property::S2 => self.s2,
            Property::S3 => self.s3,
            Property::S4 => self.s4,
            Property::S1c => self.s1c,
            Property::S2c => self.s2c,
            Property::S3c => self.s3c,
            Property::S4c => self.s4c,
        }
    }

    pub fn witness(&self, p: Property) -> Option<&[PointSet]> {
        self.witnesses.get(&p).map(Vec::as_slice)
    }

    /// `S4 ⟹ S3 ⟹ S2 ⟹ S1` for both nests and centered systems, and
    /// `S_i^c ⟹ S_i`.
    pub fn implications_hold(&self) -> bool {
        let imp = |a: bool, b: bool| !a || b;
        imp(self.s4, self.s3)
            && imp(self.s3, self.s2)
            && imp(self.s2, self.s1)
            && imp(self.s4c, self.s3c)
            && imp(self.s3c, self.s2c)
            && imp(self.s2c, self.s1c)
            && imp(self.s1c, self.s1)
            && imp(self.s2c, self.s2)
            && imp(self.s3c, self.s3)
            && imp(self.s4c, self.s4)
    }
}

/// A nonempty family of balls totally ordered by inclusion, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nest {
    members: Vec<PointSet>,
}

impl Nest {
    pub fn new(space: &FiniteBallSpace, members: &[PointSet]) -> Result<Nest> {
        if !space.is_nest(members)? {
            return Err(Error::NotANest);
        }
        let mut members = members.to_vec();
        canonicalize_family(&mut members);
        Ok(Nest { members })
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn intersection(&self) -> PointSet {
        self.members[0]
    }
}

/// A nonempty family of balls with a common point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredSystem {
    members: Vec<PointSet>,
}

impl CenteredSystem {
    pub fn new(space: &FiniteBallSpace, members: &[PointSet]) -> Result<CenteredSystem> {
        if !space.is_centered(members)? {
            return Err(Error::NotCentered);
        }
        let mut members = members.to_vec();
        canonicalize_family(&mut members);
        Ok(CenteredSystem { members })
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn intersection(&self) -> PointSet {
        intersect_all(&self.members, PointSet::full(MAX_POINTS))
    }
}

/// Every ball space on `0..n`, optionally with at most `max_balls` balls.
/// Only small universes (`n <= 4`) are enumerable.
pub fn all_spaces(n: usize, max_balls: Option<usize>) -> Result<Vec<FiniteBallSpace>> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if n > 4 {
        return Err(Error::EnumerationBoundExceeded {
            what: "universe size for space enumeration",
            size: n,
            bound: 4,
        });
    }
    let subsets: Vec<PointSet> = (1u64..(1u64 << n)).map(PointSet::from_bits).collect();
    let limit = max_balls.unwrap_or(subsets.len());
    let mut spaces = Vec::new();
    for mask in 1u64..(1u64 << subsets.len()) {
        if mask.count_ones() as usize > limit {
            continue;
        }
        let balls = PointSet::from_bits(mask).iter().map(|i| subsets[i]);
        spaces.push(FiniteBallSpace::new(n, balls)?);
    }
    Ok(spaces)
}
