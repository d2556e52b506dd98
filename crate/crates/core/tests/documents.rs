use proptest::prelude::*;
use radial_embed::document::{Overrides, ProblemSpec, VerdictDocument, SCHEMA_VERSION};
use radial_embed::{catalog, q, Dimension, Error, Potential, Side, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=8).prop_map(|(a, b)| q(a, b))
}

fn positive() -> impl Strategy<Value = Q> {
    (1i64..=40, 1i64..=8).prop_map(|(a, b)| q(a, b))
}

fn simple() -> impl Strategy<Value = Potential> {
    prop_oneof![
        (positive(), rat()).prop_map(|(c, e)| Potential::power(c, e)),
        rat().prop_map(|b| Potential::ExpInvR { b }),
        rat().prop_map(|a| Potential::ExpR { a }),
        (rat(), positive()).prop_map(|(d, b)| Potential::PowerExp { d, b }),
    ]
}

fn potential() -> impl Strategy<Value = Potential> {
    prop_oneof![
        simple(),
        (simple(), positive(), any::<bool>()).prop_map(|(p, r, o)| Potential::truncated(
            p,
            r,
            if o { Side::Origin } else { Side::Infinity }
        )),
        (simple(), simple()).prop_map(|(a, b)| Potential::sum(a, b)),
        Just(Potential::Zero),
    ]
}

proptest! {
    #[test]
    fn problem_specs_round_trip(v in potential(), k in simple(), n in 3u32..9) {
        let spec = ProblemSpec { schema_version: SCHEMA_VERSION, dimension: Dimension::new(n).unwrap(), v: Some(v), k: Some(k), overrides: None };
        prop_assert_eq!(ProblemSpec::parse(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn verdict_documents_round_trip(v in potential(), k in simple(), n in 3u32..9) {
        let spec = ProblemSpec { schema_version: SCHEMA_VERSION, dimension: Dimension::new(n).unwrap(), v: Some(v), k: Some(k), overrides: None };
        match spec.verdict() {
            Ok(verdict) => {
                let doc = VerdictDocument::new(spec.dimension, &verdict);
                let back = VerdictDocument::parse(&doc.to_json()).unwrap();
                prop_assert_eq!(back.to_json(), doc.to_json());
                prop_assert_eq!(back, doc);
            }
            Err(Error::UnsupportedCombination(_) | Error::InvalidSpec(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn catalog_instances_through_documents() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in catalog::example_catalog() {
        for _ in 0..5 {
            let b = case.sample(&mut rng).unwrap();
            let inst = case.instance(&b).unwrap();
            let spec = ProblemSpec {
                schema_version: SCHEMA_VERSION,
                dimension: inst.n,
                v: Some(inst.v),
                k: Some(inst.k),
                overrides: None,
            };
            let parsed = ProblemSpec::parse(&spec.to_json()).unwrap();
            let verdict = parsed.verdict().unwrap();
            assert_eq!(verdict.single_q, inst.expected.single_q, "{}", case.name);
            let doc = VerdictDocument::new(inst.n, &verdict);
            assert_eq!(doc.q1_interval, inst.expected.q1);
            assert_eq!(doc.embedding_target.single_space, !inst.expected.single_q.is_empty());
        }
    }
}

#[test]
fn overrides_replace_one_side() {
    let case = catalog::find("EX_BPR").unwrap();
    let b = case.bind(&[]).unwrap();
    let inst = case.instance(&b).unwrap();
    let (origin, _) = case.specs(&b).unwrap();
    let sww = catalog::find("EX_SWW").unwrap();
    let (_, infinity) = sww.specs(&sww.bind(&[]).unwrap()).unwrap();
    let spec = ProblemSpec {
        schema_version: SCHEMA_VERSION,
        dimension: inst.n,
        v: Some(inst.v),
        k: Some(inst.k),
        overrides: Some(Overrides {
            origin: None,
            infinity: Some(infinity.clone()),
        }),
    };
    let (o, i) = spec.resolve().unwrap();
    assert_eq!(o, origin);
    assert_eq!(i, infinity);
    let lonely = ProblemSpec {
        v: None,
        overrides: None,
        ..spec
    };
    assert!(matches!(lonely.resolve(), Err(Error::InvalidSpec(_))));
}

#[test]
fn unknown_fields_rejected() {
    let text = r#"{"schema_version": 1, "dimension": 3, "w": null}"#;
    assert!(matches!(ProblemSpec::parse(text), Err(Error::Parse(_))));
}
