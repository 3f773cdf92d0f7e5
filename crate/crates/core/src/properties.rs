//! Randomized invariants across modules.

use proptest::prelude::*;

use crate::checks::{GridScale, GridSpec, Target};
use crate::levy::theta;
use crate::numerics::{cot_a, eulerian_s, gamma, CotMode, SeriesKind};
use crate::sampling::{sample, SeedSpec};
use crate::stable::{kanter_b, AlphaParam, Family, VariableDescriptor};

fn alpha() -> impl Strategy<Value = f64> {
    0.02f64..0.98
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recursion(x in -10.0f64..10.0) {
        prop_assume!((x - x.round()).abs() > 1e-3 && (x + 1.0 - (x + 1.0).round()).abs() > 1e-3);
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-12, "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn cot_a_positive(g in 0.01f64..0.99, u in 0.001f64..3.14) {
        prop_assert!(cot_a(g, u, CotMode::Closed).unwrap() > 0.0);
    }

    #[test]
    fn eulerian_product_dominates_mixed(a in alpha(), z in 0.0f64..0.99) {
        let al = AlphaParam::new(a).unwrap();
        let sa = eulerian_s(al, z, SeriesKind::SAlpha).unwrap();
        let sb = eulerian_s(al, z, SeriesKind::SBeta).unwrap();
        let sm = eulerian_s(al, z, SeriesKind::SMixed).unwrap();
        prop_assert!(sa * sb >= 1.5 * sm);
    }

    #[test]
    fn kanter_b_symmetric_and_decreasing(a in alpha(), u in 0.01f64..3.0) {
        let al = AlphaParam::new(a).unwrap();
        let be = AlphaParam::new(1.0 - a).unwrap();
        let x = kanter_b(al, u).unwrap();
        let y = kanter_b(be, u).unwrap();
        prop_assert!(((x.b - y.b) / x.b).abs() < 1e-12);
        prop_assert!(kanter_b(al, u + 0.1).unwrap().b < x.b);
    }

    #[test]
    fn theta_is_zero_or_one(a in alpha(), t in 0.0f64..50.0) {
        let v = theta(AlphaParam::new(a).unwrap(), t);
        prop_assert!(v == 0.0 || v == 1.0, "θ({t}) = {v}");
    }

    #[test]
    fn class_p_inequality_for_quotient_t(a in alpha(), lx in -3.0f64..3.0, lc in 0.0f64..3.0, flip in any::<bool>()) {
        // (x − 1)(c − 1) ≥ 0: both logs share a sign
        let (lx, lc) = if flip { (-lx.abs(), -lc) } else { (lx.abs(), lc) };
        let (x, c) = (lx.exp(), lc.exp());
        let f = Target::QuotientT { alpha: a };
        let l = f.ln_value(x).unwrap() + f.ln_value(c / x).unwrap();
        let r = f.ln_value(1.0 / x).unwrap() + f.ln_value(c * x).unwrap();
        prop_assert!(l - r >= -1e-12 * (1.0 + l.abs()));
    }

    #[test]
    fn grid_spec_round_trips(min in 1e-6f64..1.0, span in 1.5f64..1e4, n in 1usize..500, lin in any::<bool>()) {
        let g = GridSpec::new(min, min * span, n, if lin { GridScale::Lin } else { GridScale::Log }).unwrap();
        let back: GridSpec = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
        let pts = g.points();
        prop_assert_eq!(pts.len(), n);
        prop_assert!(pts.windows(2).all(|w| w[1] > w[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampling_is_deterministic_and_thread_independent(a in alpha(), seed in any::<u64>(), n in 1usize..20_000) {
        let d = VariableDescriptor::stable(AlphaParam::new(a).unwrap());
        let s = SeedSpec::new(seed, 3);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let x = one.install(|| sample(&d, n, s)).unwrap();
        let y = sample(&d, n, s).unwrap();
        prop_assert_eq!(&x.values, &y.values);
        prop_assert!(x.values.iter().all(|v| *v > 0.0 && v.is_finite()));
    }

    #[test]
    fn kanter_samples_respect_support_edge(a in alpha(), seed in any::<u64>()) {
        let al = AlphaParam::new(a).unwrap();
        let d = VariableDescriptor::with_alpha(Family::KanterV, al).unwrap();
        let b = sample(&d, 2000, SeedSpec::new(seed, 0)).unwrap();
        let edge = al.kanter_v_edge();
        prop_assert!(b.values.iter().all(|v| *v >= edge * (1.0 - 1e-12)));
    }

    #[test]
    fn sample_csv_round_trips(seed in any::<u64>()) {
        let d = VariableDescriptor::stable(AlphaParam::new(0.6).unwrap());
        let b = sample(&d, 257, SeedSpec::new(seed, 0)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        b.save(&p).unwrap();
        let back = crate::sampling::SampleBatch::load(&p).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn class_inclusions_hold_on_builtin_targets() {
    use crate::checks::{check_class_p, check_hcm, check_hm, CheckConfig};
    let cfg = CheckConfig::default();
    let half = AlphaParam::new(0.5).unwrap();
    let targets = vec![
        Target::Exp,
        Target::Lorentz,
        Target::QuotientY { alpha: 0.3 },
        Target::QuotientY { alpha: 0.7 },
        Target::QuotientT { alpha: 0.7 },
        Target::Prop41M { alpha: 0.25 },
        Target::FT { t: 1.5 },
        Target::VHalf,
        Target::Density(VariableDescriptor::stable(half)),
    ];
    for t in &targets {
        let hcm = check_hcm(t, &cfg).unwrap().passed;
        let hm = check_hm(t, &cfg).unwrap().passed;
        let p = check_class_p(t, &cfg).unwrap().passed;
        assert!(!hcm || hm, "{}: HCM without HM", t.describe());
        assert!(!hm || p, "{}: HM without class P", t.describe());
    }
}

#[test]
fn cm_verdict_is_scale_invariant() {
    use crate::checks::{check_cm, CheckConfig};
    let cfg = CheckConfig::default();
    let al = AlphaParam::new(0.4).unwrap();
    for t in [Target::levy_w(al).unwrap(), Target::MlNeg { alpha: 0.6 }, Target::Lorentz] {
        let base = check_cm(&t, &cfg).unwrap().passed;
        for l in [0.1, 10.0] {
            let scaled = check_cm(&t.clone().scaled(l), &cfg).unwrap().passed;
            assert_eq!(scaled, base, "{} at scale {l}", t.describe());
        }
    }
}
