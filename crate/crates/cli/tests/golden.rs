mod common;

#[test]
fn golden_reports_are_stable() {
    for case in &common::CASES {
        if let Err(e) = common::check_case(case) {
            panic!("{e}");
        }
    }
}

#[test]
fn exit_codes_follow_the_status() {
    let (_, code) = common::run(&["validate", "f_star(2)"]).unwrap();
    assert_eq!(code, 0);
    let data = common::data_dir();
    let retract = data.join("retract.pc");
    let (_, code) = common::run(&["-f", retract.to_str().unwrap(), "extendable", "P"]).unwrap();
    assert_eq!(code, 1);
    let (json, code) = common::run(&["extendable", "no_such_pattern"]).unwrap();
    assert_eq!(code, 2);
    assert!(json.contains("\"status\": \"error\""), "{json}");
}
