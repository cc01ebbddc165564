//! Acceptance run: every criterion at its stated size and time limit, one
//! line per criterion. Exits nonzero if any criterion fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ballspace::category::verify_topologicity;
use ballspace::finite::all_spaces;
use ballspace::ordered::{
    agrees_on_samples, check_barbell_properties, normalize_to_barbell, ultrametric, witness_separates, Component,
    LexGroupElement, ValueLevel,
};
use ballspace::random::{
    random_convex_union, random_element, random_nonconvex_union, random_space, random_ultra_ball, seeded,
};
use ballspace::symbolic::{
    build_example_ball, example_certificate, limit_in_prefix, nest_verdict, prefix_nested, NestDescriptor,
};
use ballspace::verify::{bfb_instance, verify_universal_properties};
use ballspace::{Config, Error, Execution, FiniteBallSpace, PointSet, Property};
use rand::Rng;

type Outcome = ballspace::Result<(bool, String)>;
type Check = fn() -> Outcome;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

fn finite_triviality() -> Outcome {
    let mut rng = seeded(1);
    let cfg = Config::default();
    let mut failures = 0;
    for _ in 0..1000 {
        let space = random_space(&mut rng, 6, 12);
        let r = space.classify(&cfg)?;
        if !(r.s1 && r.s2 && r.s3 && r.s4 && r.s1c) {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("1000 spaces, {failures} with a false S1..S4 or S1^c flag"),
    ))
}

fn centered_hierarchy() -> Outcome {
    let space: FiniteBallSpace = serde_json::from_str(&fixture("witness_space.json"))?;
    let r = space.classify(&Config::default())?;
    let expected = [PointSet::from_points([0, 1]), PointSet::from_points([1, 2])];
    let witness_ok = r.witness(Property::S2c) == Some(&expected[..]);
    let mut seen_true = false;
    let mut seen_false = false;
    for s in all_spaces(3, None)? {
        let flag = s.classify(&Config::default())?.s2c;
        seen_true |= flag;
        seen_false |= !flag;
    }
    Ok((
        !r.s2c && witness_ok && seen_true && seen_false,
        format!(
            "fixture s2c={} witness={:?}; on 3 points S2^c true seen={seen_true}, false seen={seen_false}",
            r.s2c,
            r.witness(Property::S2c)
        ),
    ))
}

fn bfb() -> Outcome {
    let mut rng = seeded(3);
    let mut failures = 0;
    for _ in 0..500 {
        if !bfb_instance(&mut rng, 12)?.holds {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("500 pairs, {failures} failures")))
}

fn universal_properties() -> Outcome {
    let (prod, coprod) = verify_universal_properties(3, Execution::Parallel)?;
    let detail = format!(
        "{} cones, {} cocones; counterexample: {:?}",
        prod.checked,
        coprod.checked,
        prod.counterexample.as_ref().or(coprod.counterexample.as_ref())
    );
    Ok((prod.holds && coprod.holds, detail))
}

fn topologicity() -> Outcome {
    let r = verify_topologicity(3, 2, Execution::Parallel)?;
    let detail = format!(
        "{} sink families; structures on 0 points: {}, on 1 point: {}; counterexample: {:?}",
        r.initial_lifts.checked, r.structures_on_empty_set, r.structures_on_point, r.initial_lifts.counterexample
    );
    Ok((r.holds, detail))
}

fn prime_gap_certificate() -> Outcome {
    let cert = example_certificate(8)?;
    // witnesses are re-checked against freshly built balls
    let mut witnesses_ok = cert.incomparable.len() == 28;
    for w in &cert.incomparable {
        let (bi, bj) = (build_example_ball(w.i)?, build_example_ball(w.j)?);
        let x = w.x.parse().map_err(|_| Error::Invalid(w.x.clone()))?;
        let y = w.y.parse().map_err(|_| Error::Invalid(w.y.clone()))?;
        witnesses_ok &= bi.contains(&x) && !bj.contains(&x) && bj.contains(&y) && !bi.contains(&y);
    }
    let unions_ok = cert.unions.len() == 8 && cert.unions.iter().all(|u| u.equals_interval);
    let prefixes_ok = cert.prefix_intersections.len() == 8 && cert.prefix_intersections.iter().all(|p| p.nonempty);
    let rule_ok = cert.nest_empty && cert.emptiness_rule.starts_with("monotone endpoint");
    Ok((
        cert.holds && witnesses_ok && unions_ok && prefixes_ok && rule_ok,
        format!(
            "{} incomparable pairs, unions exact={unions_ok}, prefixes nonempty={prefixes_ok}, nest empty={} by {}",
            cert.incomparable.len(),
            cert.nest_empty,
            cert.emptiness_rule.split(':').next().unwrap_or("")
        ),
    ))
}

fn ultrametric_laws() -> Outcome {
    let mut rng = seeded(7);
    let zero = LexGroupElement::zero();
    let mut failures = 0u32;
    for _ in 0..100_000 {
        let (x, y, z) = (
            random_element(&mut rng, 4),
            random_element(&mut rng, 4),
            random_element(&mut rng, 4),
        );
        let um1 =
            (ultrametric(&x, &y) == ValueLevel::Infinity) == (x == y) && ultrametric(&x, &x) == ValueLevel::Infinity;
        let um2 = ultrametric(&x, &y) == ultrametric(&y, &x);
        let um3 = ultrametric(&x, &z) >= ultrametric(&x, &y).min(ultrametric(&y, &z));
        let v1 = (x.valuation() == ValueLevel::Infinity) == x.is_zero() && zero.valuation() == ValueLevel::Infinity;
        let v2 = (&x - &y).valuation() >= x.valuation().min(y.valuation());
        let (a, b) = {
            let (p, q) = (x.abs(), y.abs());
            if p <= q {
                (p, q)
            } else {
                (q, p)
            }
        };
        let mono = a.valuation() >= b.valuation();
        if !(um1 && um2 && um3 && v1 && v2 && mono) {
            failures += 1;
        }
    }
    let mut ball_failures = 0u32;
    let mut intersecting = 0u32;
    for _ in 0..10_000 {
        let a = random_ultra_ball(&mut rng, 4);
        let mut b = random_ultra_ball(&mut rng, 4);
        if rng.random_bool(0.5) {
            // nearby centers make intersections common
            b.center = &a.center + &random_element(&mut rng, 4).truncate_below(ValueLevel::Finite(2));
        }
        if a.intersects(&b) {
            intersecting += 1;
            if !(a.is_subset(&b) || b.is_subset(&a)) {
                ball_failures += 1;
            }
        }
    }
    Ok((
        failures == 0 && ball_failures == 0,
        format!(
            "100000 triples, {failures} failures; 10000 ball pairs ({intersecting} intersecting), {ball_failures} incomparable"
        ),
    ))
}

fn barbells() -> Outcome {
    let mut rng = seeded(8);
    let mut convex_failures = 0;
    for _ in 0..200 {
        let comps = random_convex_union(&mut rng, 3, 6);
        let ok = match normalize_to_barbell(&comps) {
            Ok(bb) => {
                let report = check_barbell_properties(&comps, &bb);
                bb.components().len() <= 3 && report.all_hold() && agrees_on_samples(&comps, &bb)
            }
            Err(_) => false,
        };
        if !ok {
            convex_failures += 1;
        }
    }
    let mut gap_failures = 0;
    for _ in 0..200 {
        let comps: Vec<Component> = random_nonconvex_union(&mut rng, 3, 6);
        let ok = match normalize_to_barbell(&comps) {
            Err(Error::NotConvex { witness }) => witness_separates(&comps, &witness),
            _ => false,
        };
        if !ok {
            gap_failures += 1;
        }
    }
    Ok((
        convex_failures == 0 && gap_failures == 0,
        format!("200 convex unions, {convex_failures} failures; 200 non-convex unions, {gap_failures} failures"),
    ))
}

fn nest_verdicts() -> Outcome {
    let load = |name: &str| -> ballspace::Result<NestDescriptor> { Ok(serde_json::from_str(&fixture(name))?) };
    let omega = load("nest_final_segments.json")?;
    let ones = load("nest_lex_all_ones.json")?;
    let finite = load("nest_lex_eventually_zero.json")?;
    let omega_empty = nest_verdict(&omega)?.empty;
    let ones_empty = nest_verdict(&ones)?.empty;
    let v = nest_verdict(&finite)?;
    let limit_ok = !v.empty && limit_in_prefix(&finite, 64)?;
    let nested = [&omega, &ones, &finite].iter().try_fold(true, |acc, d| {
        Ok::<bool, Error>(acc && prefix_nested(d, 64, Execution::Sequential)?)
    })?;
    Ok((
        omega_empty && ones_empty && limit_ok && nested,
        format!(
            "final segments empty={omega_empty}, all-ones empty={ones_empty}, eventually-zero limit {} in first 64 balls={limit_ok}",
            v.limit.map(|l| l.to_string()).unwrap_or_default()
        ),
    ))
}

struct Criterion {
    id: u32,
    limit_secs: u64,
}

fn main() -> ExitCode {
    let criteria: [(Criterion, &str, Check); 9] = [
        (
            Criterion { id: 1, limit_secs: 10 },
            "finite triviality oracle",
            finite_triviality,
        ),
        (
            Criterion { id: 2, limit_secs: 1 },
            "nontrivial centered hierarchy",
            centered_hierarchy,
        ),
        (Criterion { id: 3, limit_secs: 30 }, "base from closure", bfb),
        (
            Criterion { id: 4, limit_secs: 300 },
            "universal properties",
            universal_properties,
        ),
        (Criterion { id: 5, limit_secs: 300 }, "topologicity", topologicity),
        (
            Criterion { id: 6, limit_secs: 5 },
            "prime-gap certificate",
            prime_gap_certificate,
        ),
        (
            Criterion { id: 7, limit_secs: 30 },
            "ultrametric laws",
            ultrametric_laws,
        ),
        (Criterion { id: 8, limit_secs: 30 }, "bar-bell normalization", barbells),
        (
            Criterion { id: 9, limit_secs: 5 },
            "symbolic nest verdicts",
            nest_verdicts,
        ),
    ];
    let mut all = true;
    for (c, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(c.limit_secs);
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "criterion {} {:<32} {} {:>8.2}s (limit {}s) {}",
            c.id,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.limit_secs,
            detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
