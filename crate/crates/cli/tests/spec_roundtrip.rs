use proptest::prelude::*;
use symdyn_cli::{parse_system_spec, print_system_spec};

fn word(k: usize, len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0..k, len).prop_map(|w| w.iter().map(|s| s.to_string()).collect())
}

proptest! {
    #[test]
    fn sft_round_trip(k in 1usize..=3, words in prop::collection::vec((1usize..=3).prop_flat_map(|l| word(3, l)), 0..5)) {
        let words: Vec<String> = words.into_iter().filter(|w| w.chars().all(|c| (c as usize - '0' as usize) < k)).collect();
        let alphabet: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let text = serde_json::json!({"kind": "sft", "alphabet": alphabet, "forbidden": words}).to_string();
        if let Ok(sys) = parse_system_spec(&text) {
            prop_assert_eq!(parse_system_spec(&print_system_spec(&sys)).unwrap(), sys);
        }
    }

    #[test]
    fn finite_round_trip(map in prop::collection::vec(0usize..6, 1..6), line in any::<bool>()) {
        let n = map.len();
        let map: Vec<usize> = map.into_iter().map(|v| v % n).collect();
        let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let images: serde_json::Map<String, serde_json::Value> =
            (0..n).map(|i| (points[i].clone(), points[map[i]].clone().into())).collect();
        let metric = if line {
            serde_json::json!({"line": (0..n).map(|i| i as f64 * 0.3).collect::<Vec<_>>()})
        } else {
            serde_json::json!("discrete")
        };
        let text = serde_json::json!({"kind": "finite_map", "points": points, "map": images, "metric": metric}).to_string();
        let sys = parse_system_spec(&text).unwrap();
        prop_assert_eq!(parse_system_spec(&print_system_spec(&sys)).unwrap(), sys);
    }

    #[test]
    fn interval_round_trip(inner in prop::collection::btree_set(1u32..1000, 0..5), vals in prop::collection::vec(0.0f64..=1.0, 7)) {
        let mut xs = vec![0.0];
        xs.extend(inner.iter().map(|&v| v as f64 / 1000.0));
        xs.push(1.0);
        let ys: Vec<f64> = vals[..xs.len()].to_vec();
        let text = serde_json::json!({"kind": "interval_pl", "breakpoints": xs, "values": ys}).to_string();
        let sys = parse_system_spec(&text).unwrap();
        prop_assert_eq!(parse_system_spec(&print_system_spec(&sys)).unwrap(), sys);
    }
}

#[test]
fn examples_parse() {
    for text in [
        r#"{"kind":"sft","alphabet":["0","1"],"forbidden":["11"]}"#,
        r#"{"kind":"finite_map","points":["a","b","c"],"map":{"a":"b","b":"c","c":"b"},"metric":"discrete"}"#,
        r#"{"kind":"interval_pl","breakpoints":[0,0.5,1],"values":[0,1,0]}"#,
    ] {
        let sys = parse_system_spec(text).unwrap();
        assert_eq!(parse_system_spec(&print_system_spec(&sys)).unwrap(), sys);
    }
}
