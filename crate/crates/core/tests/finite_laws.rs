use ballspace::category::{coproduct, product};
use ballspace::maps::quotient;
use ballspace::random::{random_space, random_space_on, random_surjection, random_table, seeded};
use ballspace::{BallMap, Config, FiniteBallSpace};
use proptest::prelude::*;
use std::sync::Arc;

fn space(max_n: usize, max_balls: usize) -> impl Strategy<Value = FiniteBallSpace> {
    any::<u64>().prop_map(move |seed| random_space(&mut seeded(seed), max_n, max_balls))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn finite_spaces_sit_at_the_bottom(s in space(6, 10)) {
        let r = s.classify(&Config::default()).unwrap();
        prop_assert!(r.s1 && r.s2 && r.s3 && r.s4 && r.s1c);
        prop_assert!(r.implications_hold());
    }

    #[test]
    fn union_closure_is_a_closure_operator(s in space(5, 6), seed in any::<u64>()) {
        let cfg = Config::default();
        let c = s.f_un_closure(&cfg).unwrap();
        prop_assert!(s.balls().iter().all(|&b| c.contains_ball(b)));
        prop_assert_eq!(&c.f_un_closure(&cfg).unwrap(), &c);
        // closed under pairwise unions
        for &a in c.balls() {
            for &b in c.balls() {
                prop_assert!(c.contains_ball(a.union(b)));
            }
        }
        // monotone: adding a ball can only grow the closure
        let extra = random_space_on(&mut seeded(seed), s.universe_size(), 1).balls()[0];
        let bigger = s.with_ball(extra).unwrap().f_un_closure(&cfg).unwrap();
        prop_assert!(c.balls().iter().all(|&b| bigger.contains_ball(b)));
    }

    #[test]
    fn pseudo_convex_closure_is_idempotent(s in space(5, 6)) {
        let cfg = Config::default();
        let c = s.pseudo_convex_closure(&cfg).unwrap();
        prop_assert!(s.balls().iter().all(|&b| c.contains_ball(b)));
        prop_assert_eq!(&c.pseudo_convex_closure(&cfg).unwrap(), &c);
    }

    #[test]
    fn composites_of_continuous_maps_are_continuous(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let spaces: Vec<Arc<FiniteBallSpace>> = (0..3).map(|_| Arc::new(random_space(&mut rng, 4, 4))).collect();
        let f = BallMap::new(spaces[0].clone(), spaces[1].clone(), random_table(&mut rng, spaces[0].universe_size(), spaces[1].universe_size())).unwrap();
        let g = BallMap::new(spaces[1].clone(), spaces[2].clone(), random_table(&mut rng, spaces[1].universe_size(), spaces[2].universe_size())).unwrap();
        let gf = BallMap::compose(&g, &f).unwrap();
        if f.is_ball_continuous() && g.is_ball_continuous() {
            prop_assert!(gf.is_ball_continuous());
        }
        if f.is_ball_closed() && g.is_ball_closed() {
            prop_assert!(gf.is_ball_closed());
        }
        prop_assert!(f.transfer_report().invariants_hold());
        let id = BallMap::identity(spaces[0].clone());
        prop_assert!(id.is_ball_continuous() && id.is_ball_closed());
    }

    #[test]
    fn quotients_carry_image_balls(s in space(6, 6), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let n = s.universe_size();
        let m = 1 + (seed as usize) % n;
        let table = random_surjection(&mut rng, n, m);
        match quotient(&s, &table, m) {
            Ok(qt) => {
                prop_assert!(qt.map.is_surjective());
                prop_assert!(qt.map.is_ball_closed());
                prop_assert!(qt.map.transfer_report().invariants_hold());
            }
            Err(ballspace::Error::BallNotSaturated { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn structure_maps_are_continuous(a in space(3, 3), b in space(3, 3)) {
        let p = product(&[a.clone(), b.clone()]).unwrap();
        for k in 0..2 {
            prop_assert!(p.projection(k).is_ball_continuous());
        }
        for x in 0..p.space().universe_size() {
            prop_assert_eq!(p.encode(&p.decode(x)), x);
        }
        let c = coproduct(&[a, b]).unwrap();
        for j in 0..2 {
            prop_assert!(c.injection(j).is_ball_continuous());
        }
    }
}
