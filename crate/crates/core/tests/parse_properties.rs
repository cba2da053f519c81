use proptest::prelude::*;

use torimax::parse::{parse_polytope_json, polytope_to_json, PolytopeDocument};
use torimax::{convex_hull, LatticeError, LatticePoint};

fn document() -> impl Strategy<Value = PolytopeDocument> {
    (1usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-50i64..=50, dim), 1..=8)
            .prop_map(move |vertices| PolytopeDocument { dim, vertices })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn documents_round_trip(doc in document()) {
        let text = serde_json::to_string(&doc).unwrap();
        let p = parse_polytope_json(&text).unwrap();
        let pts: Vec<LatticePoint> = doc.vertices.iter().map(|v| LatticePoint::from_i64(v)).collect();
        prop_assert_eq!(&p, &convex_hull(&pts).unwrap());
        let again = parse_polytope_json(&polytope_to_json(&p)).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn mixed_lengths_are_rejected(doc in document(), extra in -5i64..=5) {
        let mut doc = doc;
        doc.vertices[0].push(extra);
        let text = serde_json::to_string(&doc).unwrap();
        prop_assert!(matches!(parse_polytope_json(&text), Err(LatticeError::MixedDimension(..))), "{}", text);
    }

    #[test]
    fn parser_never_panics(s in "[{}\\[\\]\":,a-z0-9 -]{0,60}") {
        let _ = parse_polytope_json(&s);
    }
}

#[test]
fn malformed_documents() {
    for text in [
        "",
        "[]",
        r#"{"dim": 2}"#,
        r#"{"dim": 2, "vertices": [[0, 0]], "extra": 1}"#,
        r#"{"dim": 2, "vertices": [[0, 0.5]]}"#,
        r#"{"dim": -1, "vertices": []}"#,
        r#"{"dim": 1, "vertices": [[99999999999999999999]]}"#,
    ] {
        assert!(
            matches!(parse_polytope_json(text), Err(LatticeError::Parse(_))),
            "{text}"
        );
    }
    assert!(parse_polytope_json(r#"{"dim": 2, "vertices": []}"#).is_err());
}
