//! Property tests for the structural layers: canonical step functions,
//! locally finite sets, and the rational literal forms.

use proptest::collection::btree_set;
use proptest::prelude::*;

use bdist::bit::Bit;
use bdist::point_set::LocallyFiniteSet;
use bdist::rational::Rational;
use bdist::step_fn::StepFunction;
use bdist::window::Window;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-32i64..=32, 1i64..=8).prop_map(|(n, d)| Rational::from_pair(n, d))
}

fn arb_bit() -> impl Strategy<Value = Bit> {
    any::<bool>().prop_map(Bit::from_bool)
}

/// Raw parts of a step function: sorted distinct breakpoints plus value
/// vectors of matching lengths.
fn arb_parts() -> impl Strategy<Value = (Vec<Rational>, Vec<Bit>, Vec<Bit>)> {
    btree_set(arb_rational(), 0..6).prop_flat_map(|set| {
        let bps: Vec<Rational> = set.into_iter().collect();
        let n = bps.len();
        (
            Just(bps),
            proptest::collection::vec(arb_bit(), n),
            proptest::collection::vec(arb_bit(), n + 1),
        )
    })
}

fn arb_step_fn() -> impl Strategy<Value = StepFunction> {
    arb_parts().prop_map(|(bps, pvs, ivs)| StepFunction::from_parts(bps, pvs, ivs))
}

fn arb_point_set() -> impl Strategy<Value = LocallyFiniteSet> {
    btree_set(arb_rational(), 0..6)
        .prop_map(|set| LocallyFiniteSet::from_points(set.into_iter()))
}

/// Value lookup straight off the raw parts, bypassing canonicalization.
fn raw_eval(bps: &[Rational], pvs: &[Bit], ivs: &[Bit], t: &Rational) -> Bit {
    match bps.binary_search(t) {
        Ok(i) => pvs[i],
        Err(i) => ivs[i],
    }
}

proptest! {
    #[test]
    fn canonicalization_preserves_every_value((bps, pvs, ivs) in arb_parts(), probe in arb_rational()) {
        let f = StepFunction::from_parts(bps.clone(), pvs.clone(), ivs.clone());
        // breakpoints, midpoints, tails and an arbitrary probe
        let mut probes = vec![probe];
        probes.extend(bps.iter().cloned());
        for pair in bps.windows(2) {
            probes.push(Rational::midpoint(&pair[0], &pair[1]));
        }
        if let (Some(first), Some(last)) = (bps.first(), bps.last()) {
            probes.push(first - &Rational::one());
            probes.push(last + &Rational::one());
        }
        for t in &probes {
            prop_assert_eq!(f.eval(t), raw_eval(&bps, &pvs, &ivs, t));
        }
    }

    #[test]
    fn canonicalization_is_idempotent(f in arb_step_fn()) {
        let again = StepFunction::from_parts(
            f.breakpoints().to_vec(),
            f.point_values().to_vec(),
            f.interval_values().to_vec(),
        );
        prop_assert_eq!(again, f);
    }

    #[test]
    fn resampled_rebuild_is_identity(f in arb_step_fn()) {
        let bps = f.breakpoints().to_vec();
        let pvs: Vec<Bit> = bps.iter().map(|t| f.eval(t)).collect();
        let mut ivs = Vec::with_capacity(bps.len() + 1);
        if bps.is_empty() {
            ivs.push(f.eval(&Rational::zero()));
        } else {
            ivs.push(f.eval(&(&bps[0] - &Rational::one())));
            for pair in bps.windows(2) {
                ivs.push(f.eval(&Rational::midpoint(&pair[0], &pair[1])));
            }
            ivs.push(f.eval(&(bps.last().unwrap() + &Rational::one())));
        }
        prop_assert_eq!(StepFunction::from_parts(bps, pvs, ivs), f);
    }

    #[test]
    fn xor_and_are_pointwise(f in arb_step_fn(), g in arb_step_fn(), t in arb_rational()) {
        prop_assert_eq!(f.xor(&g).eval(&t), f.eval(&t) ^ g.eval(&t));
        prop_assert_eq!(f.and(&g).eval(&t), f.eval(&t) & g.eval(&t));
    }

    #[test]
    fn translation_is_a_morphism(f in arb_step_fn(), g in arb_step_fn(), tau in arb_rational()) {
        prop_assert_eq!(
            f.xor(&g).translate(&tau),
            f.translate(&tau).xor(&g.translate(&tau))
        );
        prop_assert_eq!(
            f.and(&g).translate(&tau),
            f.translate(&tau).and(&g.translate(&tau))
        );
    }

    #[test]
    fn lateral_limits_match_nearby_values(f in arb_step_fn(), t in arb_rational()) {
        // the left limit equals the value just left of t, where "just"
        // means closer than any gap in the breakpoint set extended by t
        let mut abscissas = f.breakpoints().to_vec();
        abscissas.push(t.clone());
        abscissas.sort();
        abscissas.dedup();
        let mut gaps: Vec<Rational> = abscissas.windows(2).map(|p| &p[1] - &p[0]).collect();
        gaps.push(Rational::one());
        let eps = gaps.into_iter().min().unwrap().half();
        prop_assert_eq!(f.left_limit(&t), f.eval(&(&t - &eps)));
        prop_assert_eq!(f.right_limit(&t), f.eval(&(&t + &eps)));
    }

    #[test]
    fn sym_diff_is_pointwise_xor(a in arb_point_set(), b in arb_point_set(), t in arb_rational()) {
        let d = a.sym_diff(&b);
        prop_assert_eq!(d.membership(&t), a.membership(&t) ^ b.membership(&t));
    }

    #[test]
    fn sym_diff_counting_identity(a in arb_point_set(), b in arb_point_set()) {
        let w = Window::new(Rational::from_int(-40), Rational::from_int(40));
        let ea = a.enumerate(&w);
        let eb = b.enumerate(&w);
        let ed = a.sym_diff(&b).enumerate(&w);
        let common = ea.iter().filter(|t| eb.contains(t)).count();
        prop_assert_eq!(ed.len(), ea.len() + eb.len() - 2 * common);
        // finite stays finite under the symmetric difference
        prop_assert_eq!(
            a.sym_diff(&b).classify(),
            bdist::point_set::SetClass::Finite
        );
    }

    #[test]
    fn rational_literals_roundtrip(q in arb_rational()) {
        let text = q.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), q);
    }
}
