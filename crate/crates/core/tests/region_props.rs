use proptest::prelude::*;
use radial_embed::region::{boundary_export, xi_feasible_brute, EdgeSide, XiSearch};
use radial_embed::{membership, q, qi, slice_interval, Dimension, GammaCase, QInterval, RegionSpec, Q};

fn d(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

#[test]
fn case_classification() {
    let n = d(4);
    let tags: Vec<GammaCase> = [2, 3, 4, 5, 6, 7]
        .iter()
        .map(|g| RegionSpec::new(qi(0), qi(*g), n).unwrap().case())
        .collect();
    assert_eq!(
        tags,
        [
            GammaCase::GammaBelowN,
            GammaCase::GammaBelowN,
            GammaCase::GammaEqN,
            GammaCase::GammaBetween,
            GammaCase::GammaEq2Nm2,
            GammaCase::GammaAbove
        ]
    );
    assert!(RegionSpec::new(qi(0), qi(1), n).is_err());
    assert!(RegionSpec::new(q(3, 2), qi(3), n).is_err());
}

#[test]
fn example_slices() {
    let spec = RegionSpec::new(qi(0), q(7, 2), d(3)).unwrap();
    assert_eq!(slice_interval(&qi(-3), &spec), QInterval::finite(qi(1), qi(6)));
    assert!(membership(&qi(-3), &qi(4), &spec));
    assert!(!membership(&qi(-3), &qi(7), &spec));
    assert!(!membership(&qi(-3), &qi(6), &spec));

    let spec = RegionSpec::new(qi(1), qi(5), d(3)).unwrap();
    assert_eq!(spec.case(), GammaCase::GammaAbove);
    assert!(membership(&qi(0), &q(201, 100), &spec));
    assert!(!membership(&qi(0), &qi(2), &spec));

    let spec = RegionSpec::new(qi(1), qi(4), d(3)).unwrap();
    assert_eq!(spec.case(), GammaCase::GammaEq2Nm2);
    assert!(slice_interval(&qi(-1), &spec).is_empty());
    assert_eq!(slice_interval(&qi(1), &spec), QInterval::above(qi(2)));

    // below N the region lies right of max{alpha2, alpha3}
    let spec = RegionSpec::new(q(1, 4), qi(3), d(5)).unwrap();
    let th = radial_embed::exponent::alpha_thresholds(&q(1, 4), &qi(3), d(5));
    assert!(slice_interval(&th.max23(), &spec).is_empty());
    assert!(slice_interval(&(th.max23() - qi(1)), &spec).is_empty());
}

#[test]
fn xi_examples() {
    let s = XiSearch::new(&0.0, 10_000, 1e-6).unwrap();
    assert!(xi_feasible_brute(&-3.0, &0.0, &3.5, &4.0, &s, d(3)).unwrap());
    assert!(!xi_feasible_brute(&-3.0, &0.0, &3.5, &7.0, &s, d(3)).unwrap());
    let s = XiSearch::new(&1.0, 1000, 1e-6).unwrap();
    assert_eq!((s.xi_lo, s.xi_hi), (0.0, 0.0));
    assert!(xi_feasible_brute(&0.0, &1.0, &3.0, &2.5, &s, d(3)).is_ok());
    assert!(xi_feasible_brute(&0.0, &1.0, &2.0, &2.5, &s, d(3)).is_err());
}

#[test]
fn boundary_labels() {
    let b = boundary_export(&RegionSpec::new(qi(0), qi(2), d(3)).unwrap(), (qi(-4), qi(4)), 50).unwrap();
    let upper: Vec<&str> = b
        .polylines
        .iter()
        .filter(|p| p.side == EdgeSide::Upper)
        .map(|p| p.label.as_str())
        .collect();
    assert!(upper.contains(&"q_*=q_**"), "{upper:?}");
    let b = boundary_export(&RegionSpec::new(qi(1), qi(3), d(3)).unwrap(), (qi(-2), qi(2)), 50).unwrap();
    assert_eq!(b.thresholds, [0.0, 0.0, 0.0]);
    assert!(boundary_export(&RegionSpec::new(qi(0), qi(3), d(3)).unwrap(), (qi(1), qi(1)), 50).is_err());
}

fn spec_strategy() -> impl Strategy<Value = (f64, f64, u32)> {
    (0.0f64..=1.0, 3u32..8).prop_flat_map(|(beta, n)| {
        let nf = f64::from(n);
        let gammas = prop_oneof![Just(2.0), Just(nf), Just(2.0 * nf - 2.0), 2.0f64..3.0 * nf];
        (Just(beta), gammas, Just(n))
    })
}

proptest! {
    #[test]
    fn slice_matches_membership((beta, gamma, n) in spec_strategy(), alpha in -20.0f64..20.0, qq in 0.0f64..30.0) {
        let spec = RegionSpec::new(beta, gamma, d(n)).unwrap();
        let slice = slice_interval(&alpha, &spec);
        prop_assert_eq!(slice.contains(&qq), membership(&alpha, &qq, &spec));
    }

    #[test]
    fn slice_matches_membership_exact(b in 0i64..=12, g in 24i64..=120, a in -240i64..=240, qn in 0i64..=360, n in 3u32..8) {
        let (beta, gamma, alpha, qq): (Q, Q, Q, Q) = (q(b, 12), q(g, 12), q(a, 12), q(qn, 12));
        let spec = RegionSpec::new(beta, gamma, d(n)).unwrap();
        prop_assert_eq!(slice_interval(&alpha, &spec).contains(&qq), membership(&alpha, &qq, &spec));
    }

    #[test]
    fn below_floor_never_member((beta, gamma, n) in spec_strategy(), alpha in -20.0f64..20.0, t in 0.0f64..=1.0) {
        let spec = RegionSpec::new(beta, gamma, d(n)).unwrap();
        let qq = t * 1f64.max(2.0 * beta);
        prop_assert!(!membership(&alpha, &qq, &spec));
    }

    #[test]
    fn boundary_vertices_separate((beta, gamma, n) in spec_strategy()) {
        let spec = RegionSpec::new(beta, gamma, d(n)).unwrap();
        let nf = f64::from(n);
        let b = boundary_export(&spec, (-2.0 * nf, 2.0 * nf), 100).unwrap();
        let eps = 1e-6;
        let mut tested = 0;
        for line in &b.polylines {
            for &(alpha, qv) in &line.points {
                let (inside, outside) = match line.side {
                    EdgeSide::Lower => ((alpha, qv + eps), (alpha, qv - eps)),
                    EdgeSide::Upper => ((alpha, qv - eps), (alpha, qv + eps)),
                    EdgeSide::Vertical => ((alpha + eps, qv), (alpha - eps, qv)),
                };
                // corners sit on two curves at once; probe the interior of each edge only
                let clear = |p: (f64, f64)| radial_embed::region::boundary_distance(p.0, p.1, beta, gamma, d(n)) > eps / 2.0;
                if !clear(inside) || !clear(outside) {
                    continue;
                }
                tested += 1;
                prop_assert!(membership(&inside.0, &inside.1, &spec), "{} {:?} inside {:?}", line.label, line.side, inside);
                prop_assert!(!membership(&outside.0, &outside.1, &spec), "{} {:?} outside {:?}", line.label, line.side, outside);
            }
        }
        prop_assert!(tested > 0 || b.polylines.is_empty());
    }
}
