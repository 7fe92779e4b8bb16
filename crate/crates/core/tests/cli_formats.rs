use cubezeta::cli::{flatten, run_with};
use cubezeta::verify::Report;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cubezeta").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

const COMMANDS: &[&[&str]] = &[
    &["classnum", "--disc", "-71"],
    &["sqrtcount", "--d", "-23", "--modulus", "360"],
    &[
        "cube",
        "construct",
        "--disc",
        "-23",
        "--m",
        "2",
        "--n",
        "3",
        "--x",
        "1",
        "--y",
        "1",
    ],
    &["cube", "invariants", "--cube", "0,1,1,-6,1,-1,-6,0"],
    &["cube", "orbits", "--disc", "-23", "--m", "6", "--n", "-3"],
    &["verify", "prop2", "--disc", "-23", "--limit", "500"],
    &["verify", "ptilde2", "--disc", "5"],
    &["verify", "composition", "--disc", "-23"],
    &[
        "verify", "local", "--disc", "-23", "--p", "3", "--order", "20",
    ],
    &["verify", "fusion", "--seed", "4", "--cases", "50"],
    &["verify", "characters", "--seed", "4", "--cases", "50"],
    &["verify", "pfaffian", "--cases", "50"],
    &[
        "zeta", "shintani", "--s", "3", "--w", "3", "--amax", "20", "--dmax", "20",
    ],
    &[
        "zeta", "wmds", "--s", "2", "--w", "2", "--mmax", "30", "--disc", "-3,5,-7",
    ],
];

#[test]
fn csv_and_json_carry_the_same_data() {
    for args in COMMANDS {
        let (code, json) = call(&[args, &["--format", "json"][..]].concat());
        assert_eq!(code, 0, "{args:?}");
        let (code, csv_text) = call(&[args, &["--format", "csv"][..]].concat());
        assert_eq!(code, 0, "{args:?}");
        let value: Value = serde_json::from_str(&json).unwrap();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1, "{args:?}");
        let fields = flatten(&value);
        let keys: Vec<String> = fields.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(headers, keys, "{args:?}");
        let mut expected: Vec<String> = fields.iter().map(|(_, v)| text(v)).collect();
        let mut got: Vec<String> = rows[0].iter().map(String::from).collect();
        // timings may differ between the two runs
        if let Some(i) = keys.iter().position(|k| k == "elapsed_ms") {
            expected.remove(i);
            got.remove(i);
        }
        assert_eq!(got, expected, "{args:?}");
    }
}

#[test]
fn reports_round_trip() {
    for args in COMMANDS.iter().filter(|a| a[0] == "verify") {
        let (_, json) = call(args);
        let report: Report = serde_json::from_str(&json).unwrap();
        assert!(report.passed(), "{args:?}");
        let again = serde_json::to_string(&report).unwrap();
        assert_eq!(
            serde_json::from_str::<Value>(&again).unwrap(),
            serde_json::from_str::<Value>(&json).unwrap()
        );
    }
}

#[test]
fn seeded_suites_are_deterministic() {
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["elapsed_ms"] = Value::Null;
        v
    };
    let a = strip(call(&["verify", "characters", "--seed", "9", "--cases", "30"]).1);
    let b = strip(call(&["verify", "characters", "--seed", "9", "--cases", "30"]).1);
    assert_eq!(a, b);
}

#[test]
fn records_parse_as_flat_objects() {
    for args in COMMANDS.iter().filter(|a| a[0] != "verify") {
        let (_, json) = call(args);
        let value: Value = serde_json::from_str(&json).unwrap();
        let map = value.as_object().unwrap();
        assert!(
            map.values().all(|v| !v.is_object() && !v.is_array()),
            "{args:?}"
        );
    }
}
