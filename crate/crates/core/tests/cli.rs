use std::process::{Command, Output};

use tropsym::elementarity::verify_decomposition;
use tropsym::instances::resolve;
use tropsym::poly::{parse_poly, parse_poly_in};
use tropsym::Strategy;

fn tropsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropsym"))
        .args(args)
        .output()
        .expect("spawn tropsym")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn table_path(name: &str) -> String {
    format!("{}/data/{name}.sr", env!("CARGO_MANIFEST_DIR"))
}

const CASES: [(&str, usize, &str); 5] = [
    ("min_plus", 2, "x1^2*x2 + x1*x2^2 + 3*x1 + 3*x2"),
    ("max_plus", 3, "x1^2 + x2^2 + x3^2 + -1*x1*x2*x3"),
    ("boolean", 4, "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"),
    ("extended_tropical", 3, "x1^3 + x2^3 + x3^3 + 2v*x1*x2 + 2v*x1*x3 + 2v*x2*x3"),
    ("extended_tropical", 2, "x1^2*x2^2 + x1 + x2"),
];

#[test]
fn decompose_output_round_trips() {
    for (semiring, n, p) in CASES {
        let n_arg = n.to_string();
        let out = tropsym(&["decompose", "--semiring", semiring, "--n", &n_arg, p]);
        assert_eq!(out.status.code(), Some(0), "{semiring}: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        let r = text.lines().next().unwrap();

        let again = tropsym(&["verify", "--semiring", semiring, "--n", &n_arg, p, r]);
        assert_eq!(again.status.code(), Some(0), "{semiring}: {p} vs {r}");
        assert!(stdout(&again).starts_with("VERIFY decomposition "));

        let x = resolve(semiring, &Strategy::Sampled { count: 1000, seed: 0 }).unwrap();
        let p = parse_poly(x.as_ref(), p, n).unwrap();
        let r = parse_poly_in(x.as_ref(), r, n, "E").unwrap();
        let other_seed = Strategy::default_for(x.as_ref(), 300, 99);
        let report = verify_decomposition(x.as_ref(), &p, &r, &other_seed).unwrap();
        assert!(report.holds(), "{semiring}: {}", report.line("VERIFY"));
    }
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        &["decompose", "--semiring", "extended_tropical", "--n", "3", "--seed", "5", "x1*x2*x3 + x1 + x2 + x3"][..],
        &["props", "--semiring", "quasi:max_plus", "--seed", "3"][..],
        &["check", "--semiring", "max_plus", "--samples", "200", "--format", "machine"][..],
    ] {
        let (a, b) = (tropsym(args), tropsym(args));
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn jobs_do_not_change_suite_output() {
    let base = ["check", "--semiring", "min_plus", "--samples", "200", "--format", "machine"];
    let one = tropsym(&base);
    let four = tropsym(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).lines().last().unwrap().starts_with("SUMMARY "));
}

#[test]
fn table_files_load_as_semirings() {
    let path = table_path("supertropical3");
    let out = tropsym(&["decompose", "--semiring", &path, "--n", "2", "x1^2 + x2^2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("E1^2"));
    assert!(text.contains("VERIFY decomposition holds points=9"), "{text}");

    let props = stdout(&tropsym(&["props", "--semiring", &table_path("parity")]));
    assert!(props.lines().any(|l| l.starts_with("upper-bound") && l.contains("no")), "{props}");
}

#[test]
fn exit_statuses() {
    // x^2 + y^2 is not (x + y)^2 over the naturals
    let fails = tropsym(&["verify", "--semiring", "naturals", "--n", "2", "x1^2 + x2^2", "E1^2"]);
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("fails"));

    let inapplicable = tropsym(&["decompose", "--semiring", "naturals", "--n", "2", "x1^2 + x2^2"]);
    assert_eq!(inapplicable.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&inapplicable.stderr).starts_with("error: "));

    let unknown = tropsym(&["props", "--semiring", "no_such_semiring"]);
    assert_eq!(unknown.status.code(), Some(2));

    let not_symmetric = tropsym(&["decompose", "--semiring", "max_plus", "--n", "2", "x1^2"]);
    assert_eq!(not_symmetric.status.code(), Some(2));
}
