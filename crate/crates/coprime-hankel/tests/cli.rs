//! End-to-end exercises of the command-line surface: subcommand grammar,
//! output formats, serialization schemas, and exit codes.

use coprime_hankel::cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn count_subcommands() {
    let (code, out, _) = run_cli(&["count", "--field", "q=2", "--hankel-rank", "n=3", "r=2"]);
    assert_eq!((code, out.as_str()), (0, "12\n"));

    let (code, out, _) = run_cli(&["count", "--field", "q=2", "--coprime", "degrees=2,1,1"]);
    assert_eq!((code, out.as_str()), (0, "12\n"));

    let (code, out, _) = run_cli(&["count", "--field", "q=2", "--stratum", "n=2", "k=1"]);
    assert_eq!((code, out.as_str()), (0, "2\n"));

    let (code, out, _) = run_cli(&[
        "count",
        "--field",
        "q=2",
        "--stratum-rank",
        "n=3",
        "k=1",
        "r=2",
    ]);
    assert_eq!((code, out.as_str()), (0, "4\n"));

    let (code, out, _) = run_cli(&["count", "--field", "q=2", "--rank-le", "n=3", "r=2"]);
    assert_eq!((code, out.as_str()), (0, "16\n"));

    // extension-field order is taken from the field string
    let (code, out, _) = run_cli(&["count", "--field", "q=2^2", "--hankel-rank", "n=2", "r=2"]);
    assert_eq!((code, out.as_str()), (0, "48\n"));
}

#[test]
fn count_json_format() {
    let (code, out, _) = run_cli(&[
        "count",
        "--field",
        "q=2",
        "--hankel-rank",
        "n=3",
        "r=2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"q\":2,\"kind\":\"hankel-rank\",\"n\":3,\"r\":2,\"count\":12}\n"
    );

    let (code, out, _) = run_cli(&[
        "count",
        "--field",
        "q=3",
        "--coprime",
        "degrees=1,1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"q\":3,\"kind\":\"coprime\",\"degrees\":[1,1],\"count\":6}\n"
    );
}

#[test]
fn expand_matches_worked_example() {
    let (code, out, _) = run_cli(&[
        "expand",
        "--field",
        "q=2",
        "--u",
        "coeffs:1,1,1",
        "--v",
        "coeffs:0,1",
        "--terms",
        "4",
    ]);
    assert_eq!((code, out.as_str()), (0, "1,1,0,1\n"));

    // symbolic polynomial form is accepted too
    let (code, out, _) = run_cli(&[
        "expand", "--field", "q=2", "--u", "X^2+X+1", "--v", "X", "--terms", "4",
    ]);
    assert_eq!((code, out.as_str()), (0, "1,1,0,1\n"));

    let (_, json, _) = run_cli(&[
        "expand", "--field", "q=2", "--u", "X^2+X+1", "--v", "X", "--terms", "4", "--format",
        "json",
    ]);
    assert_eq!(
        json,
        "{\"q\":\"2\",\"u\":\"coeffs:1,1,1\",\"v\":\"coeffs:0,1\",\"terms\":4,\"coefficients\":[1,1,0,1]}\n"
    );
}

#[test]
fn bezout_hankel_sigma_single_values() {
    let (code, out, _) = run_cli(&["bezout", "--field", "q=2", "--u", "X^2+X+1", "--v", "X"]);
    assert_eq!((code, out.as_str()), (0, "1,0;0,1\n"));

    // at order 3 the pair expands to (X - Y)(XY - 1): only b11 and b22 survive
    let (code, out, _) = run_cli(&[
        "bezout", "--field", "q=2", "--u", "X^2+X+1", "--v", "X", "--n", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,0,0;0,1,0;0,0,0\n");

    let (code, out, _) = run_cli(&["hankel", "--field", "q=2", "--u", "X^2+X+1", "--v", "X"]);
    assert_eq!((code, out.as_str()), (0, "H:q=2;n=2;a=1,1,0\n"));

    let (code, out, _) = run_cli(&[
        "sigma",
        "--field",
        "q=2",
        "--f",
        "coeffs:1,0,1",
        "--g",
        "coeffs:1,1,1",
    ]);
    assert_eq!((code, out.as_str()), (0, "T:q=2;n=2;a=1,0,1\n"));

    // non-coprime input violates the pair precondition
    let (code, _, err) = run_cli(&[
        "sigma",
        "--field",
        "q=2",
        "--f",
        "coeffs:0,0,1",
        "--g",
        "coeffs:0,1,1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("coprime"));
}

#[test]
fn fiber_emits_sorted_json() {
    let (code, out, _) = run_cli(&["fiber", "--hankel", "H:q=2;n=2;a=1,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "[{\"lambda\":0,\"u\":\"coeffs:1,0,1\",\"v\":\"coeffs:1,1,1\",\"n\":2,\"q\":\"2\"},\
         {\"lambda\":1,\"u\":\"coeffs:1,1,1\",\"v\":\"coeffs:0,0,1\",\"n\":2,\"q\":\"2\"}]\n"
    );

    let (code, out, _) = run_cli(&["fiber", "--hankel", "H:q=2;n=2;a=1,0,1", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "lambda=0 u=coeffs:1,0,1 v=coeffs:1,1,1\nlambda=1 u=coeffs:1,1,1 v=coeffs:0,0,1\n"
    );

    // singular matrices have no fiber
    let (code, _, err) = run_cli(&["fiber", "--hankel", "H:q=2;n=2;a=0,0,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("singular"));

    // a --field flag must agree with the embedded field
    let (code, _, _) = run_cli(&["fiber", "--field", "q=3", "--hankel", "H:q=2;n=2;a=1,0,1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_cli(&["fiber", "--field", "q=2", "--hankel", "H:q=2;n=2;a=1,0,1"]);
    assert_eq!(code, 0);
}

#[test]
fn census_json_schemas() {
    let (code, out, _) = run_cli(&["census", "--field", "q=2", "--hankel", "n=2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"q\":2,\"n\":2,\"cells\":[\
         {\"rank\":0,\"delta\":0,\"count\":1},\
         {\"rank\":1,\"delta\":0,\"count\":1},\
         {\"rank\":1,\"delta\":1,\"count\":2},\
         {\"rank\":2,\"delta\":2,\"count\":4}],\"total\":8}\n"
    );

    let (code, out, _) = run_cli(&["census", "--field", "q=2", "--coprime", "degrees=1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"q\":2,\"degrees\":[1,1,1],\"by_gcd_degree\":[\
         {\"degree\":0,\"count\":6},{\"degree\":1,\"count\":2}],\"total\":8}\n"
    );

    let (code, out, _) = run_cli(&[
        "census", "--field", "q=2", "--hankel", "n=2", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("rank=2 delta=2 count=4"));
    assert!(out.ends_with("total=8\n"));
}

#[test]
fn census_is_deterministic_and_parallelizable() {
    let (_, reference, _) = run_cli(&["census", "--field", "q=3", "--hankel", "n=3"]);
    for jobs in ["2", "5"] {
        let (code, out, _) = run_cli(&[
            "census", "--field", "q=3", "--hankel", "n=3", "--jobs", jobs,
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, reference);
    }
    // byte-identical across repeat runs
    let (_, again, _) = run_cli(&["census", "--field", "q=3", "--hankel", "n=3"]);
    assert_eq!(again, reference);
}

#[test]
fn verify_sigma_reports() {
    let (code, out, _) = run_cli(&[
        "verify", "--field", "q=2", "--sigma", "n=2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"q\":2,\"n\":2,\"pairs\":8,\"images\":4,\"surjective\":true,\
         \"all_images_nonsingular\":true,\"fibers_uniform\":true,\"fiber_size\":2,\
         \"fibers_reconstruct\":true,\"pass\":true}\n"
    );

    let (code, out, _) = run_cli(&[
        "verify", "--field", "q=3", "--sigma", "n=2", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("pairs=54"));
    assert!(out.contains("images=18"));
    assert!(out.contains("pass=true"));
}

#[test]
fn budget_cap_is_honored() {
    let (code, _, err) = run_cli(&[
        "census", "--field", "q=2", "--hankel", "n=4", "--budget", "100",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));

    let (code, _, _) = run_cli(&[
        "verify", "--field", "q=2", "--sigma", "n=4", "--budget", "100",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn invalid_inputs_exit_2() {
    // malformed polynomial
    let (code, _, _) = run_cli(&[
        "expand", "--field", "q=2", "--u", "Y^2", "--v", "X", "--terms", "3",
    ]);
    assert_eq!(code, 2);
    // coefficient out of range
    let (code, _, _) = run_cli(&[
        "expand",
        "--field",
        "q=3",
        "--u",
        "coeffs:3,0,1",
        "--v",
        "X",
        "--terms",
        "3",
    ]);
    assert_eq!(code, 2);
    // missing --field
    let (code, _, err) = run_cli(&["count", "--hankel-rank", "n=3", "r=2"]);
    assert_eq!(code, 2);
    assert!(err.contains("--field"));
    // unknown subcommand
    let (code, _, _) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
    // deg v >= deg u violates the pair precondition
    let (code, _, _) = run_cli(&["hankel", "--field", "q=2", "--u", "X^2+1", "--v", "X^2"]);
    assert_eq!(code, 2);
}

#[test]
fn extension_field_end_to_end() {
    // GF(4): expansion of 1/(X + alpha), geometric with ratio alpha (code 2):
    // a_i = alpha^(i-1) * (-1)^(i-1) = alpha^(i-1) in characteristic 2.
    let (code, out, _) = run_cli(&[
        "expand",
        "--field",
        "q=2^2",
        "--u",
        "coeffs:2,1",
        "--v",
        "coeffs:1",
        "--terms",
        "4",
    ]);
    assert_eq!(code, 0);
    // alpha^0=1, alpha=2, alpha^2=alpha+1=3, alpha^3=1
    assert_eq!(out, "1,2,3,1\n");

    let (code, out, _) = run_cli(&[
        "census", "--field", "q=2^2", "--hankel", "n=1", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "rank=0 delta=0 count=1\nrank=1 delta=1 count=3\ntotal=4\n"
    );
}
