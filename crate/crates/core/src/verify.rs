//! Named verification runs, one per theorem, plus the two witness searches.
//!
//! Exhaustive parts walk every instance within the bounds; randomized parts
//! draw from a seeded generator, so a run is reproducible from its options.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::category::{
    all_augmented, final_structure, initial_structure, intersection_commutation_check,
    search_alternative_coproduct_failure, verify_coproduct_universal, verify_final_lifts, verify_product_universal,
    verify_topologicity, AlternativeCoproductFailure, AugmentedBallSpace, Sink, Source,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite::{all_spaces, Config, FiniteBallSpace, Nest, Property};
use crate::maps::{quotient, BallMap};
use crate::pointset::{intersect_all, PointSet};
use crate::random::{
    random_ball, random_chain, random_maximal_centered, random_pair_on_same_universe, random_space, random_space_on,
    random_surjection, random_table, seeded, SeededRng,
};
use crate::symbolic::{
    coproduct_with_complete_component, example_certificate, nest_verdict, prefix_consistency, CoproductComponent,
    NestDescriptor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    PropUnion,
    FunS1c,
    Bfb,
    Transfer,
    ProdCoprod,
    Topologicity,
    Example31,
    OmegaCoproduct,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::PropUnion,
        TheoremId::FunS1c,
        TheoremId::Bfb,
        TheoremId::Transfer,
        TheoremId::ProdCoprod,
        TheoremId::Topologicity,
        TheoremId::Example31,
        TheoremId::OmegaCoproduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::PropUnion => "prop-union",
            TheoremId::FunS1c => "fun-s1c",
            TheoremId::Bfb => "bfb",
            TheoremId::Transfer => "transfer",
            TheoremId::ProdCoprod => "prodcoprod",
            TheoremId::Topologicity => "topologicity",
            TheoremId::Example31 => "example31",
            TheoremId::OmegaCoproduct => "omega-coproduct",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown theorem id {s:?}")))
    }
}

/// Bounds and seed for a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// randomized instances per check
    pub samples: usize,
    /// universe bound for exhaustive parts
    pub max_size: usize,
    /// ball bound for random spaces
    pub max_balls: usize,
    /// largest prime-gap index
    pub max_i: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            samples: 500,
            max_size: 2,
            max_balls: 12,
            max_i: 8,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

struct Tally {
    checked: u64,
    counterexample: Option<String>,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            counterexample: None,
            details: Vec::new(),
        }
    }

    /// Records one check; keeps the first failure.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn finish(self, id: TheoremId, certificate: Option<serde_json::Value>) -> VerifyReport {
        VerifyReport {
            theorem: id.name().into(),
            passed: self.counterexample.is_none(),
            checked: self.checked,
            counterexample: self.counterexample,
            details: self.details,
            certificate,
        }
    }
}

pub fn verify(id: TheoremId, opts: &VerifyOptions) -> Result<VerifyReport> {
    match id {
        TheoremId::PropUnion => verify_prop_union(opts),
        TheoremId::FunS1c => verify_fun_s1c(opts),
        TheoremId::Bfb => verify_bfb(opts),
        TheoremId::Transfer => verify_transfer(opts),
        TheoremId::ProdCoprod => verify_prodcoprod(opts),
        TheoremId::Topologicity => verify_topologicity_id(opts),
        TheoremId::Example31 => verify_example31(opts),
        TheoremId::OmegaCoproduct => verify_omega_coproduct(opts),
    }
}

fn config(opts: &VerifyOptions) -> Config {
    Config {
        max_balls: Config::default().max_balls.max(opts.max_balls),
        ..Config::default()
    }
    .with_execution(Execution::Sequential)
}

fn exhaustive_spaces(max_size: usize, max_balls: Option<usize>) -> Result<Vec<FiniteBallSpace>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(all_spaces(n, max_balls)?);
    }
    Ok(out)
}

fn fold_results<T>(parts: Vec<Result<T>>) -> Result<Vec<T>> {
    parts.into_iter().collect()
}

/// `(X, 𝓑_1)`, `(X, 𝓑_2)` spherically complete ⟹ `(X, 𝓑_1 ∪ 𝓑_2)` is.
pub fn verify_prop_union(opts: &VerifyOptions) -> Result<VerifyReport> {
    let cfg = config(opts);
    let mut t = Tally::new();
    let size = opts.max_size.min(3);
    for n in 1..=size {
        let spaces = all_spaces(n, None)?;
        let parts = opts
            .execution
            .map_range(0..spaces.len(), |i| -> Result<(u64, Option<String>)> {
                let mut checked = 0;
                for j in i..spaces.len() {
                    checked += 1;
                    let u = spaces[i].union_families(&spaces[j])?;
                    let r = u.classify(&cfg)?;
                    if !(r.s1 && r.implications_hold()) {
                        return Ok((checked, Some(format!("union of {:?} and {:?}", spaces[i], spaces[j]))));
                    }
                }
                Ok((checked, None))
            });
        for (c, ce) in fold_results(parts)? {
            t.checked += c;
            if t.counterexample.is_none() {
                t.counterexample = ce;
            }
        }
    }
    t.note(format!("exhaustive pairs on universes up to {size} points"));
    let mut rng = seeded(opts.seed);
    for _ in 0..opts.samples {
        let (a, b) = random_pair_on_same_universe(&mut rng, 6, opts.max_balls);
        let (ra, rb) = (a.classify(&cfg)?, b.classify(&cfg)?);
        let u = a.union_families(&b)?;
        let ru = u.classify(&cfg)?;
        t.check(!(ra.s1 && rb.s1) || ru.s1, || {
            format!("union of {a:?} and {b:?} is not S1")
        });
    }
    t.note(format!("{} random pairs, seed {}", opts.samples, opts.seed));
    Ok(t.finish(TheoremId::PropUnion, None))
}

/// `S1^c` passes to the finite-union closure, and f-un is a closure operator.
pub fn verify_fun_s1c(opts: &VerifyOptions) -> Result<VerifyReport> {
    let cfg = config(opts);
    let mut t = Tally::new();
    let mut cases = exhaustive_spaces(opts.max_size.min(3), None)?;
    let mut rng = seeded(opts.seed);
    cases.extend((0..opts.samples).map(|_| random_space(&mut rng, 6, opts.max_balls.min(8))));
    let wide = Config { max_balls: 64, ..cfg };
    for space in &cases {
        let closure = space.f_un_closure(&cfg)?;
        let s1c = space.classify(&cfg)?.s1c;
        let closure_s1c = closure.classify(&wide)?.s1c;
        t.check(!s1c || closure_s1c, || format!("f-un of {space:?} loses S1^c"));
        let extensive = space.balls().iter().all(|b| closure.contains_ball(*b));
        let union_closed = closure
            .balls()
            .iter()
            .all(|a| closure.balls().iter().all(|b| closure.contains_ball(a.union(*b))));
        let idempotent = closure.f_un_closure(&wide)? == closure;
        t.check(extensive && union_closed && idempotent, || {
            format!("f-un of {space:?}: extensive={extensive} union_closed={union_closed} idempotent={idempotent}")
        });
    }
    for _ in 0..opts.samples {
        let (a, b) = random_pair_on_same_universe(&mut rng, 6, opts.max_balls.min(6));
        let joint = a.union_families(&b)?;
        let (fa, fj) = (a.f_un_closure(&cfg)?, joint.f_un_closure(&cfg)?);
        t.check(fa.balls().iter().all(|x| fj.contains_ball(*x)), || {
            format!("f-un is not monotone on {a:?} within {joint:?}")
        });
    }
    t.note(format!(
        "{} spaces, {} monotonicity pairs, seed {}",
        cases.len(),
        opts.samples,
        opts.seed
    ));
    Ok(t.finish(TheoremId::FunS1c, None))
}

/// One random instance of the base-from-closure lemma.
#[derive(Clone, Debug, Serialize)]
pub struct BfbInstance {
    pub base: FiniteBallSpace,
    pub system: Vec<PointSet>,
    pub extracted: Vec<PointSet>,
    pub holds: bool,
}

pub fn bfb_instance(rng: &mut SeededRng, max_balls: usize) -> Result<BfbInstance> {
    let cfg = Config::default().with_execution(Execution::Sequential);
    let base = random_space(rng, 6, max_balls.min(12));
    let closure = base.f_un_closure(&cfg)?;
    let system = random_maximal_centered(rng, &closure);
    let extracted = base.extract_base_subsystem(&closure, &system)?;
    let full = base.universe();
    let holds = intersect_all(extracted.members(), full) == intersect_all(&system, full)
        && base.is_centered(extracted.members())?;
    Ok(BfbInstance {
        base,
        system,
        extracted: extracted.members().to_vec(),
        holds,
    })
}

/// Members of a maximal centered system of f-un(𝓑) that lie in 𝓑 already
/// have the whole system's intersection.
pub fn verify_bfb(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let mut rng = seeded(opts.seed);
    for _ in 0..opts.samples {
        let inst = bfb_instance(&mut rng, opts.max_balls)?;
        t.check(inst.holds, || {
            format!(
                "base {:?}, system {:?}, extracted {:?}",
                inst.base, inst.system, inst.extracted
            )
        });
    }
    t.note(format!("{} random pairs, seed {}", opts.samples, opts.seed));
    Ok(t.finish(TheoremId::Bfb, None))
}

fn random_nest(rng: &mut SeededRng, space: &FiniteBallSpace) -> Result<Nest> {
    let mut order = space.balls().to_vec();
    order.shuffle(rng);
    let mut members: Vec<PointSet> = Vec::new();
    for b in order {
        if members.iter().all(|m| m.is_subset(b) || b.is_subset(*m)) {
            members.push(b);
        }
    }
    Nest::new(space, &members)
}

/// Transfer conditions, composition, nest transport and quotients.
pub fn verify_transfer(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let mut rng = seeded(opts.seed);
    let balls = opts.max_balls.min(6);
    for _ in 0..opts.samples {
        let x = Arc::new(random_space(&mut rng, 4, balls));
        let y = Arc::new(random_space(&mut rng, 4, balls));
        let z = Arc::new(random_space(&mut rng, 4, balls));
        let f = BallMap::new(
            x.clone(),
            y.clone(),
            random_table(&mut rng, x.universe_size(), y.universe_size()),
        )?;
        let g = BallMap::new(
            y.clone(),
            z.clone(),
            random_table(&mut rng, y.universe_size(), z.universe_size()),
        )?;
        let report = f.transfer_report();
        t.check(report.invariants_hold(), || {
            format!("transfer invariants fail for {f:?}: {report:?}")
        });
        let gf = BallMap::compose(&g, &f)?;
        let cont_ok = !(f.is_ball_continuous() && g.is_ball_continuous()) || gf.is_ball_continuous();
        let closed_ok = !(f.is_ball_closed() && g.is_ball_closed()) || gf.is_ball_closed();
        t.check(cont_ok && closed_ok, || format!("composition of {f:?} and {g:?}"));
        if f.is_ball_continuous() {
            let nest = random_nest(&mut rng, &y)?;
            let ok = f.psi_nest(&nest).is_ok();
            t.check(ok, || format!("preimages of {nest:?} under {f:?} are not a nest"));
        }
        if f.is_ball_closed() {
            let nest = random_nest(&mut rng, &x)?;
            let ok = f.phi_nest(&nest).is_ok();
            t.check(ok, || format!("images of {nest:?} under {f:?} are not a nest"));
        }
        // a quotient from saturated balls
        let n = rng.random_range(1..=5);
        let m = rng.random_range(1..=n);
        let table = random_surjection(&mut rng, n, m);
        let k = rng.random_range(1..=4);
        let saturated: Vec<PointSet> = (0..k)
            .map(|_| crate::maps::preimage(&table, random_ball(&mut rng, m)))
            .collect();
        let space = FiniteBallSpace::new(n, saturated)?;
        let q = quotient(&space, &table, m)?;
        let qr = q.map.transfer_report();
        let coarsest = space.balls().iter().all(|b| match space.without_ball(*b) {
            Some(smaller) => !BallMap::new(Arc::new(smaller), q.space.clone(), table.clone())
                .map(|h| h.is_ball_continuous())
                .unwrap_or(true),
            None => true,
        });
        t.check(
            qr.cond_beq && qr.cond_bprime_eq && qr.poset_iso && qr.continuous && coarsest,
            || format!("quotient of {space:?} by {table:?}: {qr:?}, coarsest={coarsest}"),
        );
    }
    t.note(format!("{} random instances, seed {}", opts.samples, opts.seed));
    Ok(t.finish(TheoremId::Transfer, None))
}

/// Intersection identities for products and coproducts and both universal
/// properties, exhaustively up to `max_size` points and three balls.
pub fn verify_prodcoprod(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let mut rng = seeded(opts.seed);
    for _ in 0..opts.samples {
        let k = rng.random_range(1..=3);
        let len = rng.random_range(1..=4);
        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(1..=3)).collect();
        let chains: Vec<Vec<PointSet>> = sizes.iter().map(|&n| random_chain(&mut rng, n, len)).collect();
        let ok = intersection_commutation_check(&sizes, &chains)?;
        t.check(ok, || {
            format!("intersection identity fails on {sizes:?} with {chains:?}")
        });
    }
    t.note(format!("{} random chain families, seed {}", opts.samples, opts.seed));
    let (prod, coprod) = verify_universal_properties(opts.max_size, opts.execution)?;
    t.checked += prod.checked + coprod.checked;
    if let Some(ce) = prod.counterexample.or(coprod.counterexample) {
        t.counterexample.get_or_insert(ce);
    }
    t.note(format!(
        "universal properties up to {} points: {} cones, {} cocones",
        opts.max_size, prod.checked, coprod.checked
    ));
    Ok(t.finish(TheoremId::ProdCoprod, None))
}

/// Both universal properties over factors with at most `max_size` points and
/// three balls, against every ball space `Z` with at most `max_size` points.
pub fn verify_universal_properties(
    max_size: usize,
    exec: Execution,
) -> Result<(
    crate::category::UniversalPropertyReport,
    crate::category::UniversalPropertyReport,
)> {
    let ys = exhaustive_spaces(max_size, Some(3))?;
    let zs = exhaustive_spaces(max_size, None)?;
    Ok((
        verify_product_universal(&ys, &zs, exec)?,
        verify_coproduct_universal(&ys, &zs, exec)?,
    ))
}

pub fn verify_topologicity_id(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let report = verify_topologicity(opts.max_size, 2, opts.execution)?;
    t.checked += report.initial_lifts.checked;
    if let Some(ce) = &report.initial_lifts.counterexample {
        t.counterexample = Some(ce.clone());
    }
    t.check(
        report.structures_on_empty_set == 1 && report.structures_on_point == 1,
        || {
            format!(
                "{} structures on the empty set, {} on a point",
                report.structures_on_empty_set, report.structures_on_point
            )
        },
    );
    let finals = verify_final_lifts(opts.max_size.min(2), 2, opts.execution)?;
    t.checked += finals.checked;
    if let Some(ce) = finals.counterexample {
        t.counterexample.get_or_insert(ce);
    }
    // the two small identities
    let ab = AugmentedBallSpace::new(2, vec![PointSet::EMPTY, PointSet::singleton(0), PointSet::full(2)])?;
    let constant = initial_structure(
        3,
        &[Sink {
            table: vec![0, 0, 0],
            target: ab.clone(),
        }],
    )?;
    t.check(constant.family() == [PointSet::EMPTY, PointSet::full(3)], || {
        format!("initial structure of a constant map is {constant:?}")
    });
    let left = AugmentedBallSpace::new(2, vec![PointSet::EMPTY, PointSet::singleton(0), PointSet::full(2)])?;
    let right = AugmentedBallSpace::new(2, vec![PointSet::EMPTY, PointSet::singleton(1), PointSet::full(2)])?;
    let fin = final_structure(
        2,
        &[
            Source {
                table: vec![0, 1],
                source: left,
            },
            Source {
                table: vec![0, 1],
                source: right,
            },
        ],
    )?;
    t.check(fin.family() == [PointSet::EMPTY, PointSet::full(2)], || {
        format!("final structure of two identities is {fin:?}")
    });
    t.note(format!(
        "initial lifts up to {} points with at most 2 sinks: {} sink families; final lifts up to {} points: {}",
        opts.max_size,
        report.initial_lifts.checked,
        opts.max_size.min(2),
        finals.checked
    ));
    t.note(format!(
        "structures on the empty set: {}, on a point: {}, augmented structures on 2 points: {}",
        report.structures_on_empty_set,
        report.structures_on_point,
        all_augmented(2)?.len()
    ));
    Ok(t.finish(TheoremId::Topologicity, None))
}

pub fn verify_example31(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let cert = example_certificate(opts.max_i)?;
    t.checked = (cert.incomparable.len() + cert.unions.len() + cert.prefix_intersections.len() + 1) as u64;
    if !cert.holds {
        t.counterexample = Some(format!(
            "certificate fails: missing witnesses {:?}, unions {:?}",
            cert.missing_witnesses,
            cert.unions
                .iter()
                .filter(|u| !u.equals_interval)
                .map(|u| u.i)
                .collect::<Vec<_>>()
        ));
    }
    for w in &cert.incomparable {
        t.note(format!(
            "B_{} vs B_{}: {} only in the first, {} only in the second",
            w.i, w.j, w.x, w.y
        ));
    }
    for u in &cert.unions {
        t.note(format!("B_{} u B_{} = {}", u.i, u.i + 1, u.union));
    }
    t.note(format!(
        "nest of unions: empty = {} ({})",
        cert.nest_empty, cert.emptiness_rule
    ));
    let value = serde_json::to_value(&cert)?;
    Ok(t.finish(TheoremId::Example31, Some(value)))
}

pub fn verify_omega_coproduct(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut t = Tally::new();
    let omega = NestDescriptor::FinalSegments { start: 0 };
    let v = nest_verdict(&omega)?;
    t.check(v.empty, || "final segments of omega meet".into());
    let prefix = prefix_consistency(&omega, crate::symbolic::MAX_PREFIX, opts.execution)?;
    t.check(prefix.prefixes_nonempty && prefix.consistent, || {
        format!("prefix check {prefix:?}")
    });
    let point = FiniteBallSpace::from_lists(1, &[vec![0]])?;
    let mixed = [
        CoproductComponent::Symbolic { nest: omega.clone() },
        CoproductComponent::Finite {
            space: point,
            chain: vec![PointSet::singleton(0)],
        },
    ];
    let r = coproduct_with_complete_component(&mixed, crate::symbolic::MAX_PREFIX, opts.execution)?;
    t.check(
        r.coproduct_nonempty && r.identity_holds && r.prefixes_consistent,
        || format!("omega with a point: {r:?}"),
    );
    let doubled = [
        CoproductComponent::Symbolic { nest: omega.clone() },
        CoproductComponent::Symbolic { nest: omega },
    ];
    let r2 = coproduct_with_complete_component(&doubled, crate::symbolic::MAX_PREFIX, opts.execution)?;
    t.check(!r2.coproduct_nonempty && r2.prefixes_consistent, || {
        format!("two copies of omega: {r2:?}")
    });
    t.note(format!("final segments: {}", v.rule));
    t.note(format!("omega with a point: nonempty = {}", r.coproduct_nonempty));
    t.note(format!("omega with omega: nonempty = {}", r2.coproduct_nonempty));
    Ok(t.finish(TheoremId::OmegaCoproduct, None))
}

/// Two S2^c spaces on one universe whose family union is not S2^c.
#[derive(Clone, Debug, Serialize)]
pub struct S2cUnionFailure {
    pub first: FiniteBallSpace,
    pub second: FiniteBallSpace,
    pub union: FiniteBallSpace,
    pub witness: Vec<PointSet>,
}

fn s2c_failure(a: &FiniteBallSpace, b: &FiniteBallSpace, cfg: &Config) -> Result<Option<S2cUnionFailure>> {
    if !a.classify(cfg)?.s2c || !b.classify(cfg)?.s2c {
        return Ok(None);
    }
    let union = a.union_families(b)?;
    let r = union.classify(cfg)?;
    if r.s2c {
        return Ok(None);
    }
    Ok(Some(S2cUnionFailure {
        first: a.clone(),
        second: b.clone(),
        witness: r.witness(Property::S2c).unwrap_or_default().to_vec(),
        union,
    }))
}

// drops balls while the failure persists
fn minimize(mut w: S2cUnionFailure, cfg: &Config) -> Result<S2cUnionFailure> {
    loop {
        let mut improved = false;
        for side in 0..2 {
            let space = if side == 0 { &w.first } else { &w.second };
            for &ball in space.balls() {
                let Some(smaller) = space.without_ball(ball) else {
                    continue;
                };
                let candidate = if side == 0 {
                    s2c_failure(&smaller, &w.second, cfg)?
                } else {
                    s2c_failure(&w.first, &smaller, cfg)?
                };
                if let Some(c) = candidate {
                    w = c;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            return Ok(w);
        }
    }
}

/// Looks for two S2^c spaces whose union is not S2^c: exhaustively by
/// universe size and total ball count up to three points, then at random on
/// four to `max_n` points. `budget` caps the pairs examined.
pub fn search_s2c_union_failure(max_n: usize, budget: u64, seed: u64) -> Result<Option<S2cUnionFailure>> {
    let cfg = Config::default().with_execution(Execution::Sequential);
    let mut spent = 0u64;
    for n in 1..=max_n.min(3) {
        let spaces = all_spaces(n, None)?;
        let max_total = 2 * ((1usize << n) - 1);
        for total in 2..=max_total {
            for i in 0..spaces.len() {
                for j in i..spaces.len() {
                    if spaces[i].len() + spaces[j].len() != total {
                        continue;
                    }
                    if spent >= budget {
                        return Ok(None);
                    }
                    spent += 1;
                    if let Some(w) = s2c_failure(&spaces[i], &spaces[j], &cfg)? {
                        return minimize(w, &cfg).map(Some);
                    }
                }
            }
        }
    }
    let mut rng = seeded(seed);
    while spent < budget && max_n >= 4 {
        spent += 1;
        let n = rng.random_range(4..=max_n.min(24));
        let a = random_space_on(&mut rng, n, 6);
        let b = random_space_on(&mut rng, n, 6);
        if let Some(w) = s2c_failure(&a, &b, &cfg)? {
            return minimize(w, &cfg).map(Some);
        }
    }
    Ok(None)
}

/// A small instance where the alternative coproduct family has no mediating
/// morphism, found by search.
pub fn search_aprime_not_coproduct(max_size: usize) -> Result<Option<AlternativeCoproductFailure>> {
    search_alternative_coproduct_failure(max_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            samples: 40,
            max_size: 2,
            max_i: 3,
            execution: Execution::Sequential,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn every_theorem_passes_small_bounds() {
        for id in TheoremId::ALL {
            let r = verify(id, &quick()).unwrap();
            assert!(r.passed, "{id}: {:?}", r.counterexample);
            assert!(r.checked > 0, "{id}");
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = verify(TheoremId::Bfb, &quick()).unwrap();
        let b = verify(TheoremId::Bfb, &quick()).unwrap();
        assert_eq!(a.checked, b.checked);
        assert_eq!(a.details, b.details);
    }

    #[test]
    fn s2c_union_search_finds_the_overlap_pair() {
        let w = search_s2c_union_failure(3, 1_000_000, 0).unwrap().unwrap();
        assert_eq!(w.union.universe_size(), 3);
        assert_eq!(w.first.len() + w.second.len(), 2);
        assert!(search_s2c_union_failure(3, 0, 0).unwrap().is_none());
    }
}
