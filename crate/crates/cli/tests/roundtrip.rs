//! Round-trip property: writing a trace and re-parsing it reproduces the
//! identical trace, for arbitrary finite positions in either format.

use std::collections::BTreeMap;
use std::io::Cursor;

use interflow::tracefile::{parse_trace, write_csv, write_jsonl, TraceFormat};
use interflow_core::trace::{EntityId, GameTrace, Position};
use proptest::prelude::*;

fn arbitrary_trace() -> impl Strategy<Value = GameTrace> {
    let coord = prop_oneof![
        -1e6f64..1e6,
        Just(0.0),
        Just(-0.0),
        -1e-12f64..1e-12,
    ];
    (2usize..5, proptest::collection::vec(coord, 2 * 21 * 4))
        .prop_map(|(cycles, coords)| {
            let mut it = coords.into_iter().cycle();
            let entities: BTreeMap<EntityId, Vec<Position>> = EntityId::full_roster()
                .map(|e| {
                    let series = (0..cycles)
                        .map(|_| Position::new(it.next().unwrap(), it.next().unwrap()))
                        .collect();
                    (e, series)
                })
                .collect();
            GameTrace::new("g", entities).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csv_roundtrip(trace in arbitrary_trace()) {
        let mut buf = Vec::new();
        write_csv(&trace, &mut buf).unwrap();
        let again = parse_trace(Cursor::new(buf), TraceFormat::Csv, "g").unwrap();
        prop_assert_eq!(trace, again);
    }

    #[test]
    fn jsonl_roundtrip(trace in arbitrary_trace()) {
        let mut buf = Vec::new();
        write_jsonl(&trace, &mut buf).unwrap();
        let again = parse_trace(Cursor::new(buf), TraceFormat::Jsonl, "g").unwrap();
        prop_assert_eq!(trace, again);
    }
}
