//! Exhaustive checks of universal properties on small instances.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::augmented::{
    all_augmented, final_structure, initial_structure_from, is_continuous, AugmentedBallSpace, Source,
};
use super::construct::{coproduct, product};
use crate::error::Result;
use crate::exec::Execution;
use crate::finite::FiniteBallSpace;
use crate::maps::continuity_witness;
use crate::pointset::PointSet;

/// Every table `0..n → 0..m`, in lexicographic order with the first entry
/// varying fastest. There is one empty table for `n = 0` and none for
/// `m = 0 < n`.
pub fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(m.pow(n as u32));
    let mut t = vec![0usize; n];
    loop {
        out.push(t.clone());
        let mut i = 0;
        while i < n {
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

pub fn continuous_tables(domain: &FiniteBallSpace, codomain: &FiniteBallSpace) -> Vec<Vec<usize>> {
    all_tables(domain.universe_size(), codomain.universe_size())
        .into_iter()
        .filter(|t| continuity_witness(domain.balls(), codomain.balls(), t).is_none())
        .collect()
}

pub fn continuous_augmented_tables(domain: &AugmentedBallSpace, codomain: &AugmentedBallSpace) -> Vec<Vec<usize>> {
    all_tables(domain.universe_size(), codomain.universe_size())
        .into_iter()
        .filter(|t| is_continuous(t, domain, codomain))
        .collect()
}

/// Outcome of an exhaustive universal-property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalPropertyReport {
    pub holds: bool,
    /// cones, cocones or sink families examined
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl UniversalPropertyReport {
    fn merge(parts: Vec<(u64, Option<String>)>) -> Self {
        let checked = parts.iter().map(|p| p.0).sum();
        let counterexample = parts.into_iter().find_map(|p| p.1);
        UniversalPropertyReport {
            holds: counterexample.is_none(),
            checked,
            counterexample,
        }
    }
}

/// For every pair of factors from `ys`, every `Z` in `zs` and every pair of
/// continuous maps `f_i: Z → Y_i`: the tupling is continuous into the
/// product, composes back to the `f_i`, and is the only map doing so.
pub fn verify_product_universal(
    ys: &[FiniteBallSpace],
    zs: &[FiniteBallSpace],
    exec: Execution,
) -> Result<UniversalPropertyReport> {
    let cont: Vec<Vec<Vec<Vec<usize>>>> = exec.map_slice(zs, |z| ys.iter().map(|y| continuous_tables(z, y)).collect());
    let n = ys.len();
    let parts = exec.map_range(0..n * n, |idx| -> Result<(u64, Option<String>)> {
        let (i1, i2) = (idx / n, idx % n);
        let p = product(&[ys[i1].clone(), ys[i2].clone()])?;
        for k in 0..2 {
            if !p.projection(k).is_ball_continuous() {
                return Ok((0, Some(format!("projection {k} of {:?} x {:?} is not continuous", ys[i1], ys[i2]))));
            }
        }
        let mut checked = 0u64;
        for (zi, z) in zs.iter().enumerate() {
            for f1 in &cont[zi][i1] {
                for f2 in &cont[zi][i2] {
                    checked += 1;
                    let tables: [&[usize]; 2] = [f1, f2];
                    let g = p.tuple_table(&tables);
                    let continuous = continuity_witness(z.balls(), p.space().balls(), &g).is_none();
                    let factors = (0..z.universe_size()).all(|x| p.coordinate(g[x], 0) == f1[x] && p.coordinate(g[x], 1) == f2[x]);
                    let unique = p.mediator_count(&tables, z.universe_size()) == 1;
                    if !(continuous && factors && unique) {
                        return Ok((
                            checked,
                            Some(format!(
                                "product of {:?} and {:?}, cone from {:?} with f1={f1:?} f2={f2:?}: continuous={continuous} factors={factors} unique={unique}",
                                ys[i1], ys[i2], z
                            )),
                        ));
                    }
                }
            }
        }
        Ok((checked, None))
    });
    Ok(UniversalPropertyReport::merge(
        parts.into_iter().collect::<Result<_>>()?,
    ))
}

/// Dual of [`verify_product_universal`] for continuous cocones `f_i: Y_i → Z`.
pub fn verify_coproduct_universal(
    ys: &[FiniteBallSpace],
    zs: &[FiniteBallSpace],
    exec: Execution,
) -> Result<UniversalPropertyReport> {
    let cont: Vec<Vec<Vec<Vec<usize>>>> = exec.map_slice(ys, |y| zs.iter().map(|z| continuous_tables(y, z)).collect());
    let n = ys.len();
    let parts = exec.map_range(0..n * n, |idx| -> Result<(u64, Option<String>)> {
        let (i1, i2) = (idx / n, idx % n);
        let c = coproduct(&[ys[i1].clone(), ys[i2].clone()])?;
        for j in 0..2 {
            if !c.injection(j).is_ball_continuous() {
                return Ok((0, Some(format!("injection {j} of {:?} + {:?} is not continuous", ys[i1], ys[i2]))));
            }
        }
        let inj = [c.injection_table(0), c.injection_table(1)];
        let mut checked = 0u64;
        for (zi, z) in zs.iter().enumerate() {
            for f1 in &cont[i1][zi] {
                for f2 in &cont[i2][zi] {
                    checked += 1;
                    let tables: [&[usize]; 2] = [f1, f2];
                    let h = c.copair_table(&tables);
                    let continuous = continuity_witness(c.space().balls(), z.balls(), &h).is_none();
                    let factors = inj[0].iter().zip(f1.iter()).all(|(&x, &v)| h[x] == v)
                        && inj[1].iter().zip(f2.iter()).all(|(&x, &v)| h[x] == v);
                    let unique = c.mediator_count(&tables, z.universe_size()) == 1;
                    if !(continuous && factors && unique) {
                        return Ok((
                            checked,
                            Some(format!(
                                "coproduct of {:?} and {:?}, cocone to {:?} with f1={f1:?} f2={f2:?}: continuous={continuous} factors={factors} unique={unique}",
                                ys[i1], ys[i2], z
                            )),
                        ));
                    }
                }
            }
        }
        Ok((checked, None))
    });
    Ok(UniversalPropertyReport::merge(
        parts.into_iter().collect::<Result<_>>()?,
    ))
}

// called once per sink family with its column vector; returns a counterexample
type LiftCheckFn<'a> = dyn Fn(&[usize], &Bits) -> Result<Option<String>> + 'a;

/// Fixed-length bit vector indexed by test maps.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_fn(len: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for i in 0..len {
            if f(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Bits(words)
    }

    fn ones(len: usize) -> Self {
        Bits::from_fn(len, |_| true)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

/// Key of an augmented family on a universe of at most 6 points: the set of
/// member bit patterns.
fn family_key(family: &AugmentedBallSpace) -> u64 {
    family.family().iter().fold(0u64, |acc, s| acc | (1u64 << s.bits()))
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&x| outer[x]).collect()
}

/// Shared engine for initial and final lifts.
///
/// `candidates` are all augmented structures on `X`, `tests` the probing maps,
/// `lhs(F, t)` says whether test `t` is continuous for structure `F` on `X`,
/// `arrow(a, t)` whether the composite of arrow `a` with test `t` is
/// continuous, and `lift` builds the structure induced by a family of arrows.
struct LiftCheck<'a> {
    candidates: &'a [AugmentedBallSpace],
    tests: usize,
    lhs: &'a (dyn Fn(usize, usize) -> bool + Sync),
    arrows: usize,
    arrow: &'a (dyn Fn(usize, usize) -> bool + Sync),
    lift: &'a (dyn Fn(&[usize]) -> Result<AugmentedBallSpace> + Sync),
    max_arrows: usize,
    label: &'a str,
}

impl LiftCheck<'_> {
    fn run(&self, exec: Execution) -> Result<UniversalPropertyReport> {
        let lhs: Vec<Bits> = (0..self.candidates.len())
            .map(|f| Bits::from_fn(self.tests, |t| (self.lhs)(f, t)))
            .collect();
        // lifts are unique exactly when no two structures are probed alike
        let distinct: HashSet<&Bits> = lhs.iter().collect();
        if distinct.len() != lhs.len() {
            return Ok(UniversalPropertyReport {
                holds: false,
                checked: 0,
                counterexample: Some(format!("two {} structures on X agree on every test map", self.label)),
            });
        }
        let index: HashMap<u64, usize> = self
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (family_key(c), i))
            .collect();
        let cols: Vec<Bits> = exec.map_range(0..self.arrows, |a| Bits::from_fn(self.tests, |t| (self.arrow)(a, t)));

        let check = |chosen: &[usize], rhs: &Bits| -> Result<Option<String>> {
            let lifted = (self.lift)(chosen)?;
            let i = index[&family_key(&lifted)];
            Ok((lhs[i] != *rhs).then(|| {
                format!(
                    "{} lift {lifted:?} of arrows {chosen:?} fails the characterization",
                    self.label
                )
            }))
        };

        let mut parts = vec![(1u64, check(&[], &Bits::ones(self.tests))?)];
        if self.max_arrows > 0 {
            let rest = exec.map_range(0..self.arrows, |first| -> Result<(u64, Option<String>)> {
                let mut checked = 0u64;
                let mut found = None;
                self.extend(&mut vec![first], &cols[first], &cols, &check, &mut checked, &mut found)?;
                Ok((checked, found))
            });
            for part in rest {
                parts.push(part?);
            }
        }
        Ok(UniversalPropertyReport::merge(parts))
    }

    fn extend(
        &self,
        stack: &mut Vec<usize>,
        rhs: &Bits,
        cols: &[Bits],
        check: &LiftCheckFn<'_>,
        checked: &mut u64,
        found: &mut Option<String>,
    ) -> Result<()> {
        if found.is_some() {
            return Ok(());
        }
        *checked += 1;
        if let Some(c) = check(stack, rhs)? {
            *found = Some(c);
            return Ok(());
        }
        if stack.len() == self.max_arrows {
            return Ok(());
        }
        let last = *stack.last().expect("nonempty");
        // multisets: later arrows never precede earlier ones
        for next in last..self.arrows {
            stack.push(next);
            self.extend(stack, &rhs.and(&cols[next]), cols, check, checked, found)?;
            stack.pop();
        }
        Ok(())
    }
}

/// Result of the topologicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologicityReport {
    pub holds: bool,
    /// initial lifts exist, are unique and satisfy the characterization
    pub initial_lifts: UniversalPropertyReport,
    /// families of subsets of `∅` containing `∅` and `X`
    pub structures_on_empty_set: usize,
    /// families of subsets of a point containing `∅` and `X`
    pub structures_on_point: usize,
}

/// Every family of subsets of `0..n` that contains `∅` and `0..n`, found by
/// scanning all families rather than by construction.
fn count_structures(n: usize) -> usize {
    let subsets = 1usize << n;
    let full = PointSet::full(n);
    (0u64..(1u64 << subsets))
        .filter(|mask| {
            let family: Vec<PointSet> = PointSet::from_bits(*mask)
                .iter()
                .map(|i| PointSet::from_bits(i as u64))
                .collect();
            family.contains(&PointSet::EMPTY) && family.contains(&full)
        })
        .count()
}

/// For each `X` with `|X| <= max_size`, every family of at most `max_sinks`
/// maps `f_i: X → (Y_i, 𝓐_i)` with `|Y_i| <= max_size`: the initial structure
/// `𝓐` satisfies `g` continuous iff every `f_i ∘ g` is, for every augmented
/// `Z` with `|Z| <= max_size` and every `g: Z → X`, and no other structure on
/// `X` does. Also counts the structures on the empty set and on a point.
pub fn verify_topologicity(max_size: usize, max_sinks: usize, exec: Execution) -> Result<TopologicityReport> {
    let mut by_size = Vec::new();
    for n in 0..=max_size {
        by_size.push(all_augmented(n)?);
    }
    let mut parts = Vec::new();
    for n in 0..=max_size {
        let tests: Vec<(&AugmentedBallSpace, Vec<usize>)> = (0..=max_size)
            .flat_map(|k| {
                by_size[k]
                    .iter()
                    .flat_map(move |z| all_tables(k, n).into_iter().map(move |g| (z, g)))
            })
            .collect();
        let sinks: Vec<(&AugmentedBallSpace, Vec<usize>)> = (0..=max_size)
            .flat_map(|m| {
                by_size[m]
                    .iter()
                    .flat_map(move |y| all_tables(n, m).into_iter().map(move |f| (y, f)))
            })
            .collect();
        let candidates = &by_size[n];
        let lhs = |f: usize, t: usize| is_continuous(&tests[t].1, tests[t].0, &candidates[f]);
        let arrow = |a: usize, t: usize| is_continuous(&compose(&sinks[a].1, &tests[t].1), tests[t].0, sinks[a].0);
        let lift = |chosen: &[usize]| initial_structure_from(n, chosen.iter().map(|&a| (&sinks[a].1[..], sinks[a].0)));
        let check = LiftCheck {
            candidates,
            tests: tests.len(),
            lhs: &lhs,
            arrows: sinks.len(),
            arrow: &arrow,
            lift: &lift,
            max_arrows: max_sinks,
            label: "initial",
        };
        parts.push(check.run(exec)?);
    }
    let initial_lifts =
        UniversalPropertyReport::merge(parts.into_iter().map(|r| (r.checked, r.counterexample)).collect());
    let structures_on_empty_set = count_structures(0);
    let structures_on_point = count_structures(1);
    Ok(TopologicityReport {
        holds: initial_lifts.holds && structures_on_empty_set == 1 && structures_on_point == 1,
        initial_lifts,
        structures_on_empty_set,
        structures_on_point,
    })
}

/// Dual of the initial-lift check: for families of at most `max_sources` maps
/// `f_i: (Y_i, 𝓐_i) → X`, the final structure makes `g: X → Z` continuous iff
/// every `g ∘ f_i` is, and no other structure does.
pub fn verify_final_lifts(max_size: usize, max_sources: usize, exec: Execution) -> Result<UniversalPropertyReport> {
    let mut by_size = Vec::new();
    for n in 0..=max_size {
        by_size.push(all_augmented(n)?);
    }
    let mut parts = Vec::new();
    for n in 0..=max_size {
        let tests: Vec<(&AugmentedBallSpace, Vec<usize>)> = (0..=max_size)
            .flat_map(|k| {
                by_size[k]
                    .iter()
                    .flat_map(move |z| all_tables(n, k).into_iter().map(move |g| (z, g)))
            })
            .collect();
        let sources: Vec<Source> = (0..=max_size)
            .flat_map(|m| {
                by_size[m].iter().flat_map(move |y| {
                    all_tables(m, n).into_iter().map(move |f| Source {
                        table: f,
                        source: y.clone(),
                    })
                })
            })
            .collect();
        let candidates = &by_size[n];
        let lhs = |f: usize, t: usize| is_continuous(&tests[t].1, &candidates[f], tests[t].0);
        let arrow = |a: usize, t: usize| {
            is_continuous(&compose(&tests[t].1, &sources[a].table), &sources[a].source, tests[t].0)
        };
        let lift = |chosen: &[usize]| {
            let picked: Vec<Source> = chosen.iter().map(|&a| sources[a].clone()).collect();
            final_structure(n, &picked)
        };
        let check = LiftCheck {
            candidates,
            tests: tests.len(),
            lhs: &lhs,
            arrows: sources.len(),
            arrow: &arrow,
            lift: &lift,
            max_arrows: max_sources,
            label: "final",
        };
        parts.push(check.run(exec)?);
    }
    Ok(UniversalPropertyReport::merge(
        parts.into_iter().map(|r| (r.checked, r.counterexample)).collect(),
    ))
}
