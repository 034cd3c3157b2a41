mod common;

use common::{golden_cases, golden_dir, run_bin, split_args};
use fptool::cli::{parse_plain, parse_structured, STRUCTURED_MARKER};

#[test]
fn golden_outputs_match() {
    for case in golden_cases() {
        let run = run_bin(&case.args, false, &[]);
        assert_eq!(run.code, case.exit, "{}: {}", case.name, run.stderr);
        let want = std::fs::read_to_string(case.golden_path()).unwrap();
        assert_eq!(run.stdout, want, "{}", case.name);
    }
}

#[test]
fn structured_goldens_round_trip() {
    for case in golden_cases() {
        let text = std::fs::read_to_string(case.golden_path()).unwrap();
        if !text.contains(STRUCTURED_MARKER) {
            continue;
        }
        let out = parse_structured(&text).unwrap();
        assert_eq!(out.lines(), parse_plain(&text), "{}", case.name);
        assert_eq!(out.exit, case.exit);
    }
}

#[test]
fn spec_examples() {
    let run = run_bin(&split_args(r#"nu --p 2 --vars x,y --ideal "x,y" --e 1"#), false, &[]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "nu=2\n"));
    let run = run_bin(&split_args("split --q 8 --c 1 --beta 3,4"), false, &[]);
    assert!(run.stdout.contains("(3,4)"));
    let args = r#"thm33 --p 2 --vars x,y --ideal "x,y" --emax 1 --assume-reduced --assume-unmixed --reduction-size 2"#;
    let run = run_bin(&split_args(args), false, &[]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("check.equality=pass"));
}

#[test]
fn generator_ceiling_exit_code() {
    let args = split_args(r#"test-ideal --p 3 --vars x,y,z --ideal "x+y, y+z" --t 3 --emax 1"#);
    let run = run_bin(&args, false, &[("FPTOOL_GEN_CEILING", "5")]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    assert!(run.stderr.contains("generator ceiling") && run.stderr.contains("level e="), "{}", run.stderr);
    assert_eq!(run_bin(&args, false, &[]).code, 0);
}

#[test]
fn failing_check_exits_one() {
    // (x^2, xy) has an embedded component, so geometric linkage breaks
    let args = split_args(r#"geomcheck --p 2 --vars x,y --ideal "x^2,x*y" --assume-reduced"#);
    let run = run_bin(&args, false, &[]);
    assert_eq!(run.code, 1, "{}{}", run.stdout, run.stderr);
    assert!(run.stdout.contains("=fail"));
    assert!(run.stdout.contains(".witness="));
}

#[test]
fn usage_errors() {
    for args in ["", "nosuch", "nu --p 2", "nu --p 2 --vars x,y --ideal \"x,\" --e 1", "split --q 4 --c 1 --beta 1,x"] {
        let run = run_bin(&split_args(args), false, &[]);
        assert_eq!(run.code, 2, "{args}");
        assert!(!run.stderr.is_empty());
    }
    let run = run_bin(&split_args("split --q 4 --c 1 --beta 1,x"), false, &[]);
    assert!(run.stderr.contains("--beta") && run.stderr.contains("entry 2"), "{}", run.stderr);
}

#[test]
fn batch_jobs_write_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let src = golden_dir();
    let a = tmp.path().join("a.job");
    let b = tmp.path().join("b.job");
    let bad = tmp.path().join("bad.job");
    std::fs::copy(src.join("thm33.job"), &a).unwrap();
    std::fs::copy(src.join("split.job"), &b).unwrap();
    std::fs::write(&bad, "command = \"nu\"\np = 4\nvars = x\nideal = x\n").unwrap();
    let args: Vec<String> =
        ["job", "--jobs"].iter().map(|s| s.to_string()).chain([&a, &b, &bad].iter().map(|p| p.display().to_string())).collect();
    for parallel in [false, true] {
        let run = run_bin(&args, parallel, &[]);
        assert_eq!(run.code, 2);
        assert_eq!(run.stdout.lines().count(), 3);
        let thm = std::fs::read_to_string(tmp.path().join("a.out")).unwrap();
        assert_eq!(thm, std::fs::read_to_string(src.join("job_thm33.out")).unwrap());
        let split = std::fs::read_to_string(tmp.path().join("b.out")).unwrap();
        assert_eq!(split, "split=(1,7,0,0),(3,0,5,0),(4,0,0,4)\n");
        let err = std::fs::read_to_string(tmp.path().join("bad.out")).unwrap();
        assert!(err.contains("bad.job") && err.contains("characteristic must be prime"), "{err}");
    }
}

#[test]
fn job_errors_name_the_file() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("t.job");
    std::fs::write(&path, "command = \"thm33\"\np = 2\nvars = [\"x\", \"y\"]\nideal = [\"x\", \"y\"]\nassume_reduced = true\n").unwrap();
    let run = run_bin(&["job".into(), path.display().to_string()], false, &[]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("t.job") && run.stderr.contains("assume_unmixed"), "{}", run.stderr);
    let run = run_bin(&["job".into(), tmp.path().join("missing.job").display().to_string()], false, &[]);
    assert!(run.stderr.contains("cannot read job file"));
}
