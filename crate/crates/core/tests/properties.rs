mod common;

use proptest::prelude::*;

use common::*;
use planar_multicut::generate::{generate, GenKind, GenSpec};
use planar_multicut::graph::io::{instance_to_json, parse_instance};
use planar_multicut::graph::{ball, CutSet, Direction};
use planar_multicut::region::{region_grow, GrowthParams};
use planar_multicut::rounding::{round, solve, RoundingConfig};
use planar_multicut::separator::SeparatorMode;

fn kind() -> impl Strategy<Value = GenKind> {
    prop_oneof![Just(GenKind::Grid), Just(GenKind::Triangulation), Just(GenKind::LayeredDag)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn solve_is_always_feasible(kind in kind(), n in 6usize..60, k in 1usize..4, seed in 0u64..1000, half in any::<bool>()) {
        if let Ok(inst) = generate(&GenSpec::new(kind, n, k, seed)) {
            let mode = if half { SeparatorMode::Half } else { SeparatorMode::Cycle };
            let r = solve(&inst, &RoundingConfig { mode, ..Default::default() }).unwrap();
            prop_assert!(separated(&inst, &r.cut.members));
            prop_assert!(r.cut.cost >= r.lp_value - 1e-6);
            prop_assert!(r.cut.members.iter().all(|&v| !inst.is_terminal(v)));
        }
    }

    #[test]
    fn instances_survive_a_text_round_trip(kind in kind(), n in 3usize..80, seed in 0u64..1000) {
        if let Ok(inst) = generate(&GenSpec::new(kind, n, 1, seed)) {
            let text = instance_to_json(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(instance_to_json(&back), text);
            prop_assert_eq!(back.graph().edges(), inst.graph().edges());
        }
    }

    #[test]
    fn balls_grow_with_the_radius(n in 5usize..40, seed in 0u64..500, r in 0.0f64..0.3, extra in 0.0f64..0.3) {
        let inst = pairless_instance(GenKind::Triangulation, n.max(3), seed);
        let x = random_lengths(&inst, 0.05, seed);
        for dir in [Direction::Out, Direction::In] {
            let small = ball(&inst, &x, 0, r, dir);
            let big = ball(&inst, &x, 0, r + extra, dir);
            prop_assert!(small.iter().all(|v| big.binary_search(v).is_ok()));
        }
    }

    #[test]
    fn region_growth_is_a_pure_function(n in 5usize..80, seed in 0u64..500, out in any::<bool>()) {
        let inst = pairless_instance(GenKind::Grid, n, seed);
        let p = GrowthParams::new(1.0 / 12.0, inst.n());
        let x = random_lengths(&inst, p.step(), seed);
        let dir = if out { Direction::Out } else { Direction::In };
        let a = region_grow(&inst, &x, 0, &p, dir).unwrap();
        let b = region_grow(&inst, &x, 0, &p, dir).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.ball.iter().all(|v| a.boundary.binary_search(v).is_err()));
    }

    #[test]
    fn rounding_cost_is_the_sum_of_cut_costs(n in 10usize..80, seed in 0u64..500, scale in 1.0f64..4.0) {
        let inst = pairless_instance(GenKind::Triangulation, n, seed);
        let step = GrowthParams::new(1.0 / 12.0, inst.n()).step();
        let x = random_lengths(&inst, scale * step, seed);
        let r = round(&inst, &x, &RoundingConfig::default()).unwrap();
        let again = CutSet::new(&inst, r.cut.members.iter().copied()).unwrap();
        prop_assert!((again.cost - r.cut.cost).abs() < 1e-9);
        prop_assert!(r.cut.cost <= r.parts.total + 1e-9);
        // Every vertex at or above the grid step is cut.
        prop_assert!((0..inst.n()).filter(|&v| x.get(v) >= step).all(|v| r.cut.contains(v)));
    }
}
