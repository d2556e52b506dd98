use proptest::prelude::*;
use radial_embed::exponent::*;
use radial_embed::{membership, q, qi, Dimension, Error, RegionSpec, Q};

fn d(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rat() -> impl Strategy<Value = Q> {
    (-400i64..=400, 1i64..=20).prop_map(|(a, b)| q(a, b))
}

fn unit() -> impl Strategy<Value = Q> {
    (0i64..=24).prop_map(|a| q(a, 24))
}

#[test]
fn spec_values() {
    for n in 3..9 {
        assert_eq!(alpha_star(&qi(1), d(n)), qi(0));
    }
    assert_eq!(alpha_star(&q(1, 2), d(3)), q(-3, 2));
    assert_eq!(alpha_star(&qi(0), d(4)), qi(-3));
    assert_eq!(q_star(&qi(1), &qi(0), d(3)), qi(8));
    assert_eq!(q_star(&alpha_star(&qi(0), d(3)), &qi(0), d(3)), qi(1));
    assert_eq!(q_star(&qi(0), &qi(1), d(3)), qi(2));
    assert_eq!(q_sub(&qi(0), &qi(0), &qi(0), d(3)).unwrap(), qi(2));
    assert!(matches!(
        q_sub(&qi(1), &qi(0), &qi(3), d(3)),
        Err(Error::UndefinedAtPole { .. })
    ));
    assert!(matches!(
        q_subsub(&qi(1), &qi(0), &qi(4), d(3)),
        Err(Error::UndefinedAtPole { .. })
    ));
    assert_eq!(d(3).critical_exponent::<Q>(), qi(6));
    assert!(Dimension::new(2).is_err());
}

#[test]
fn growth_pair_bounds() {
    assert!(GrowthPair::new(qi(0), q(-1, 2)).is_ok());
    assert!(GrowthPair::admissible(qi(0), q(-1, 2)).is_err());
    assert!(GrowthPair::new(qi(0), q(3, 2)).is_err());
}

proptest! {
    #[test]
    fn hardy_collapse(alpha in rat(), beta in unit(), n in 3u32..9) {
        let qs = q_star(&alpha, &beta, d(n));
        prop_assert_eq!(q_sub(&alpha, &beta, &qi(2), d(n)).unwrap(), qs.clone());
        prop_assert_eq!(q_subsub(&alpha, &beta, &qi(2), d(n)).unwrap(), qs);
    }

    #[test]
    fn critical_exponent_monotone(a in -20.0f64..20.0, da in 0.01f64..5.0, b in 0.0f64..0.9, db in 0.01f64..0.1, n in 3u32..9) {
        prop_assert!(q_star(&a, &b, d(n)) < q_star(&(a + da), &b, d(n)));
        prop_assert!(q_star(&a, &(b + db), d(n)) < q_star(&a, &b, d(n)));
    }

    #[test]
    fn alpha_star_is_where_q_star_meets_floor(beta in unit(), n in 3u32..9) {
        let a = alpha_star(&beta, d(n));
        let at = q_star(&a, &beta, d(n));
        // the floor is met exactly on one branch and never undercut
        prop_assert!(at <= base_floor(&beta));
        prop_assert_eq!(growth_threshold(&a, &beta, d(n)), base_floor(&beta));
    }

    #[test]
    fn growth_threshold_forms_agree(alpha in rat(), beta in unit(), n in 3u32..9) {
        prop_assert_eq!(growth_threshold_piecewise(&alpha, &beta, d(n)), growth_threshold(&alpha, &beta, d(n)));
    }

    #[test]
    fn decay_threshold_forms_agree(alpha in rat(), beta in unit(), g in -120i64..=24, n in 3u32..9) {
        let gamma = q(g, 12);
        prop_assert_eq!(
            decay_threshold_piecewise(&alpha, &beta, &gamma, d(n)).unwrap(),
            decay_threshold(&alpha, &beta, &gamma, d(n)).unwrap()
        );
    }

    #[test]
    fn decay_threshold_at_two_is_growth_threshold(alpha in rat(), beta in unit(), n in 3u32..9) {
        prop_assert_eq!(decay_threshold(&alpha, &beta, &qi(2), d(n)).unwrap(), growth_threshold(&alpha, &beta, d(n)));
    }

    #[test]
    fn negative_beta_shift(alpha in rat(), b in -24i64..0, g in 24i64..=240, qq in rat(), n in 3u32..9) {
        let beta = q(b, 12);
        let gamma = q(g, 12);
        let shifted = alpha.clone() - beta.clone() * gamma.clone();
        let left = membership(&alpha, &qq, &RegionSpec::new(beta, gamma.clone(), d(n)).unwrap());
        let right = membership(&shifted, &qq, &RegionSpec::new(qi(0), gamma, d(n)).unwrap());
        prop_assert_eq!(left, right);
    }
}

#[test]
fn decay_threshold_domain() {
    assert!(decay_threshold(&qi(0), &qi(0), &qi(3), d(3)).is_err());
    assert!(decay_threshold_piecewise(&qi(0), &qi(0), &q(5, 2), d(3)).is_err());
}
