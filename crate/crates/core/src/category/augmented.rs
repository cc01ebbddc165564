use std::fmt;

use serde::{Deserialize, Serialize};

use super::construct::{coproduct_family, product_family};
use crate::error::{Error, Result};
use crate::finite::FiniteBallSpace;
use crate::maps::preimage;
use crate::pointset::{canonicalize_family, PointSet, MAX_POINTS};

/// A family of subsets of `0..n` containing `∅` and the whole universe.
///
/// The universe may be empty, in which case the only structure is `{∅}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AugmentedRepr", into = "AugmentedRepr")]
pub struct AugmentedBallSpace {
    n: usize,
    family: Vec<PointSet>,
}

#[derive(Serialize, Deserialize)]
struct AugmentedRepr {
    n: usize,
    family: Vec<Vec<usize>>,
    #[serde(default = "yes")]
    augmented: bool,
}

fn yes() -> bool {
    true
}

impl TryFrom<AugmentedRepr> for AugmentedBallSpace {
    type Error = Error;

    fn try_from(r: AugmentedRepr) -> Result<Self> {
        if !r.augmented {
            return Err(Error::Invalid("expected an augmented space".into()));
        }
        let mut family = Vec::with_capacity(r.family.len());
        for set in &r.family {
            if let Some(&p) = set.iter().find(|&&p| p >= r.n || p >= MAX_POINTS) {
                return Err(Error::OutOfRangePoint { point: p, n: r.n });
            }
            family.push(set.iter().copied().collect());
        }
        AugmentedBallSpace::new(r.n, family)
    }
}

impl From<AugmentedBallSpace> for AugmentedRepr {
    fn from(a: AugmentedBallSpace) -> Self {
        AugmentedRepr {
            n: a.n,
            family: a.family.iter().map(|s| s.to_vec()).collect(),
            augmented: true,
        }
    }
}

impl fmt::Debug for AugmentedBallSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aug(n={}, ", self.n)?;
        f.debug_set().entries(self.family.iter()).finish()?;
        f.write_str(")")
    }
}

impl AugmentedBallSpace {
    /// Validates a family that already contains `∅` and `X`.
    pub fn new(n: usize, family: Vec<PointSet>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        let full = PointSet::full(n);
        for &s in &family {
            if !s.is_subset(full) {
                return Err(Error::OutOfRangePoint {
                    point: s.last().unwrap_or(0),
                    n,
                });
            }
        }
        if !family.contains(&PointSet::EMPTY) {
            return Err(Error::MissingEmptySet);
        }
        if !family.contains(&full) {
            return Err(Error::MissingFullSet);
        }
        let mut family = family;
        canonicalize_family(&mut family);
        Ok(AugmentedBallSpace { n, family })
    }

    /// Adjoins `∅` and `X` to an arbitrary family of subsets.
    pub fn from_family<I: IntoIterator<Item = PointSet>>(n: usize, sets: I) -> Result<Self> {
        let mut family: Vec<PointSet> = sets.into_iter().collect();
        family.push(PointSet::EMPTY);
        family.push(PointSet::full(n.min(MAX_POINTS)));
        AugmentedBallSpace::new(n, family)
    }

    /// `(∅, {∅})`.
    pub fn empty() -> Self {
        AugmentedBallSpace {
            n: 0,
            family: vec![PointSet::EMPTY],
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn family(&self) -> &[PointSet] {
        &self.family
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.family.binary_search_by(|b| b.canonical_cmp(&set)).is_ok()
    }

    /// Adding `∅` and `X` again changes nothing.
    pub fn augment(&self) -> AugmentedBallSpace {
        self.clone()
    }

    /// The nonempty members as a ball space, when there are any.
    pub fn to_ball_space(&self) -> Result<FiniteBallSpace> {
        FiniteBallSpace::new(self.n, self.family.iter().copied().filter(|s| !s.is_empty()))
    }
}

/// `𝓑 ∪ {∅, X}`.
pub fn augment(space: &FiniteBallSpace) -> AugmentedBallSpace {
    AugmentedBallSpace::from_family(space.universe_size(), space.balls().iter().copied()).expect("valid space")
}

/// Continuity between augmented spaces: the preimage of every member of the
/// codomain family is in the domain family.
pub fn is_continuous(table: &[usize], domain: &AugmentedBallSpace, codomain: &AugmentedBallSpace) -> bool {
    codomain.family.iter().all(|&b| domain.contains(preimage(table, b)))
}

fn check_table(table: &[usize], n: usize, m: usize) -> Result<()> {
    if table.len() != n {
        return Err(Error::TableLength {
            expected: n,
            found: table.len(),
        });
    }
    if let Some((point, &value)) = table.iter().enumerate().find(|(_, &v)| v >= m) {
        return Err(Error::TableOutOfRange { point, value, size: m });
    }
    Ok(())
}

/// A map `X → Y_i` from the set carrying the initial structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sink {
    pub table: Vec<usize>,
    pub target: AugmentedBallSpace,
}

/// A map `Y_i → X` into the set carrying the final structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub table: Vec<usize>,
    pub source: AugmentedBallSpace,
}

/// All preimages `f_i⁻¹(A)` with `A ∈ 𝓐_i`.
///
/// `∅` and `X` are always included, so an empty sink list yields `{∅, X}`.
pub fn initial_structure(n: usize, sinks: &[Sink]) -> Result<AugmentedBallSpace> {
    initial_structure_from(n, sinks.iter().map(|s| (&s.table[..], &s.target)))
}

/// [`initial_structure`] over borrowed `(table, target)` pairs.
pub fn initial_structure_from<'a, I>(n: usize, sinks: I) -> Result<AugmentedBallSpace>
where
    I: IntoIterator<Item = (&'a [usize], &'a AugmentedBallSpace)>,
{
    if n > MAX_POINTS {
        return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
    }
    let mut family = vec![PointSet::EMPTY, PointSet::full(n)];
    for (table, target) in sinks {
        check_table(table, n, target.n)?;
        family.extend(target.family.iter().map(|&a| preimage(table, a)));
    }
    AugmentedBallSpace::new(n, family)
}

/// Largest universe whose powerset the final structure scans.
pub const MAX_FINAL_UNIVERSE: usize = 20;

/// All `A ⊆ X` with `f_i⁻¹(A) ∈ 𝓐_i` for every source.
pub fn final_structure(n: usize, sources: &[Source]) -> Result<AugmentedBallSpace> {
    if n > MAX_FINAL_UNIVERSE {
        return Err(Error::SizeBoundExceeded {
            size: n,
            bound: MAX_FINAL_UNIVERSE,
        });
    }
    for s in sources {
        check_table(&s.table, s.source.n, n)?;
    }
    let family = (0u64..(1u64 << n))
        .map(PointSet::from_bits)
        .filter(|&a| sources.iter().all(|s| s.source.contains(preimage(&s.table, a))))
        .collect();
    AugmentedBallSpace::new(n, family)
}

/// Every augmented structure on `0..n`, for `n <= 4`.
pub fn all_augmented(n: usize) -> Result<Vec<AugmentedBallSpace>> {
    if n > 4 {
        return Err(Error::EnumerationBoundExceeded {
            what: "universe size for augmented structures",
            size: n,
            bound: 4,
        });
    }
    if n == 0 {
        return Ok(vec![AugmentedBallSpace::empty()]);
    }
    let full = PointSet::full(n);
    let middle: Vec<PointSet> = (1u64..full.bits()).map(PointSet::from_bits).collect();
    let out = (0u64..(1u64 << middle.len()))
        .map(|mask| {
            let mut family = vec![PointSet::EMPTY, full];
            family.extend(PointSet::from_bits(mask).iter().map(|i| middle[i]));
            AugmentedBallSpace::new(n, family).expect("valid family")
        })
        .collect();
    Ok(out)
}

/// Product of augmented spaces: cylinders over members of one factor.
pub fn augmented_product(components: &[AugmentedBallSpace]) -> Result<AugmentedBallSpace> {
    if components.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let sizes: Vec<usize> = components.iter().map(|c| c.n).collect();
    let families: Vec<&[PointSet]> = components.iter().map(|c| c.family()).collect();
    let family = product_family(&sizes, &families)?;
    AugmentedBallSpace::new(sizes.iter().product(), family)
}

/// Coproduct of augmented spaces: unions choosing one member per component.
pub fn augmented_coproduct(components: &[AugmentedBallSpace]) -> Result<AugmentedBallSpace> {
    if components.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let sizes: Vec<usize> = components.iter().map(|c| c.n).collect();
    let families: Vec<&[PointSet]> = components.iter().map(|c| c.family()).collect();
    let family = coproduct_family(&sizes, &families)?;
    AugmentedBallSpace::new(sizes.iter().sum(), family)
}

/// The family `{ι_i(A) : A ∈ 𝓐_i}` on the disjoint union, which already makes
/// every injection continuous. `X` is adjoined so the result is augmented.
pub fn alternative_coproduct(components: &[AugmentedBallSpace]) -> Result<AugmentedBallSpace> {
    if components.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let total: usize = components.iter().map(|c| c.n).sum();
    if total > MAX_POINTS {
        return Err(Error::SizeBoundExceeded {
            size: total,
            bound: MAX_POINTS,
        });
    }
    let mut family = Vec::new();
    let mut offset = 0;
    for c in components {
        family.extend(c.family.iter().map(|a| PointSet::from_bits(a.bits() << offset)));
        offset += c.n;
    }
    AugmentedBallSpace::from_family(total, family)
}

/// A cocone out of augmented components whose forced copairing is not
/// continuous for the alternative coproduct family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeCoproductFailure {
    pub components: Vec<AugmentedBallSpace>,
    pub target: AugmentedBallSpace,
    pub tables: Vec<Vec<usize>>,
    /// member of the target family whose preimage is missing from `𝓐′`
    pub target_set: PointSet,
    pub alternative: AugmentedBallSpace,
}

/// Searches two-component instances in order of growing size for a
/// continuous cocone that has no continuous mediator out of `𝓐′`.
///
/// `h ∘ ι_i = f_i` forces `h` to be the copairing, so there is a mediator
/// exactly when the copairing is continuous. Returns `None` when the budget
/// `max_size` (component and target sizes) is exhausted or zero.
pub fn search_alternative_coproduct_failure(max_size: usize) -> Result<Option<AlternativeCoproductFailure>> {
    if max_size == 0 {
        return Ok(None);
    }
    let mut by_size = Vec::new();
    for n in 0..=max_size {
        by_size.push(all_augmented(n)?);
    }
    for total in 2..=(3 * max_size) {
        for n1 in 1..=max_size {
            for n2 in 1..=max_size {
                for m in 1..=max_size {
                    if n1 + n2 + m != total {
                        continue;
                    }
                    for a1 in &by_size[n1] {
                        for a2 in &by_size[n2] {
                            let comps = [a1.clone(), a2.clone()];
                            let alt = alternative_coproduct(&comps)?;
                            if alt == augmented_coproduct(&comps)? {
                                continue;
                            }
                            for z in &by_size[m] {
                                let f1s = super::universal::continuous_augmented_tables(a1, z);
                                let f2s = super::universal::continuous_augmented_tables(a2, z);
                                for f1 in &f1s {
                                    for f2 in &f2s {
                                        let h: Vec<usize> = f1.iter().chain(f2).copied().collect();
                                        if let Some(&bad) = z.family.iter().find(|&&b| !alt.contains(preimage(&h, b))) {
                                            return Ok(Some(AlternativeCoproductFailure {
                                                components: comps.to_vec(),
                                                target: z.clone(),
                                                tables: vec![f1.clone(), f2.clone()],
                                                target_set: bad,
                                                alternative: alt,
                                            }));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
