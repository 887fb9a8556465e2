//! Golden-file tests: every command's output is byte-identical across
//! runs and equal to the checked-in transcript, and the transcripts
//! coincide with direct library calls (no arithmetic hides in the CLI).

use std::path::PathBuf;
use std::process::{Command, Output};

use btspin::assembly::{
    apply_gluck, build_closed_complex, build_complement_complex, sphere_certificate, vankampen_pi1,
};
use btspin::knotfile::parse_knot_file;
use btspin::orbitdata::{classify, reduce_to_base, BTSIndex, Site, TwinState};

fn knot_path(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../knots");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btspin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn assert_golden(args: &[&str], golden: &str) {
    let first = stdout_of(args);
    let second = stdout_of(args);
    assert_eq!(first, second, "output of {args:?} is not deterministic");
    assert_eq!(first, golden, "output of {args:?} drifted from golden file");
}

macro_rules! golden {
    ($name:ident, $golden:literal, [$($arg:expr),* $(,)?]) => {
        #[test]
        fn $name() {
            let args: Vec<String> = vec![$($arg.to_string()),*];
            let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
            assert_golden(&refs, include_str!(concat!("golden/", $golden)));
        }
    };
}

golden!(twin_2_3, "twin_2_3.txt", ["twin", "2", "3"]);
golden!(twin_neg2_3, "twin_neg2_3.txt", ["twin", "-2", "3"]);
golden!(
    gluck_partner_2_3,
    "gluck_partner_2_3.txt",
    ["gluck", "--along", "partner", "2", "3"]
);
golden!(
    gluck_self_2_3,
    "gluck_self_2_3.txt",
    ["gluck", "--along", "self", "2", "3"]
);
golden!(
    gluck_partner_neg2_3,
    "gluck_partner_neg2_3.txt",
    ["gluck", "--along", "partner", "-2", "3"]
);
golden!(reduce_5_3, "reduce_5_3.txt", ["reduce", "5", "3"]);
golden!(reduce_1_1, "reduce_1_1.txt", ["reduce", "1", "1"]);
golden!(
    verify_matrices_12,
    "verify_matrices_12.txt",
    ["verify-matrices", "--max", "12"]
);
golden!(
    pi1_trefoil,
    "pi1_trefoil_2_3.txt",
    ["pi1", "--knot", knot_path("trefoil.knot"), "2", "3"]
);
golden!(
    pi1_unknot,
    "pi1_unknot_2_3.txt",
    ["pi1", "--knot", knot_path("unknot.knot"), "2", "3"]
);
golden!(
    h1_complement_trefoil,
    "h1_complement_trefoil_2_3.txt",
    ["h1", "--knot", knot_path("trefoil.knot"), "2", "3"]
);
golden!(
    h1_closed_trefoil,
    "h1_closed_trefoil_2_3.txt",
    [
        "h1",
        "--knot",
        knot_path("trefoil.knot"),
        "2",
        "3",
        "--closed"
    ]
);
golden!(
    h1_gluck_trefoil,
    "h1_gluck_trefoil_2_3.txt",
    [
        "h1",
        "--knot",
        knot_path("trefoil.knot"),
        "2",
        "3",
        "--gluck",
        "second"
    ]
);
golden!(
    classify_3_2_nontrivial,
    "classify_3_2_nontrivial.txt",
    ["classify", "3", "2", "--nontrivial"]
);
golden!(
    classify_2_3_nontrivial,
    "classify_2_3_nontrivial.txt",
    ["classify", "2", "3", "--nontrivial"]
);
golden!(
    classify_3_2_plain,
    "classify_3_2.txt",
    ["classify", "3", "2"]
);
golden!(
    certify_trefoil,
    "certify_trefoil_2_3.txt",
    [
        "certify",
        "--knot",
        knot_path("trefoil.knot"),
        "2",
        "3",
        "--kmax",
        "3"
    ]
);
golden!(
    certify_gluck_unknot,
    "certify_gluck_unknot_2_3.txt",
    [
        "certify",
        "--knot",
        knot_path("unknot.knot"),
        "2",
        "3",
        "--gluck",
        "second"
    ]
);

#[test]
fn cli_output_equals_direct_library_calls() {
    // twin
    let idx = BTSIndex::new(2, 3).unwrap();
    assert_eq!(
        stdout_of(&["twin", "2", "3"]),
        format!("{idx} | partner {}\n", idx.twin_partner().unwrap())
    );

    // gluck, both sites
    let state = TwinState::new(idx).unwrap();
    assert_eq!(
        stdout_of(&["gluck", "--along", "partner", "2", "3"]),
        format!(
            "{idx} -> {}\n",
            state.gluck_rewrite(Site::Second).unwrap().first()
        )
    );
    assert_eq!(
        stdout_of(&["gluck", "--along", "self", "2", "3"]),
        format!(
            "{idx} -> {}\n",
            state.gluck_rewrite(Site::First).unwrap().first()
        )
    );

    // reduce
    assert_eq!(
        stdout_of(&["reduce", "5", "3"]),
        format!("{}\n", reduce_to_base(BTSIndex::new(5, 3).unwrap()))
    );

    // classify
    assert_eq!(
        stdout_of(&["classify", "3", "2", "--nontrivial"]),
        format!("{}\n", classify(BTSIndex::new(3, 2).unwrap(), true))
    );

    // pi1 / h1 / certify against the assembly pipeline
    let trefoil = parse_knot_file(knot_path("trefoil.knot")).unwrap();
    let complement = build_complement_complex(&trefoil.group, 2, 3).unwrap();
    assert_eq!(
        stdout_of(&["pi1", "--knot", &knot_path("trefoil.knot"), "2", "3"]),
        format!(
            "pi1 of complement (2,3) of knot trefoil\n{}",
            vankampen_pi1(&complement).unwrap()
        )
    );
    assert_eq!(
        stdout_of(&["h1", "--knot", &knot_path("trefoil.knot"), "2", "3"]),
        format!(
            "h1 of complement (2,3) of knot trefoil: {}\n",
            btspin::assembly::h1(&complement).unwrap()
        )
    );
    let closed = build_closed_complex(&trefoil.group, 2, 3).unwrap();
    let twisted = apply_gluck(&closed, Site::Second).unwrap();
    assert_eq!(
        stdout_of(&[
            "h1",
            "--knot",
            &knot_path("trefoil.knot"),
            "2",
            "3",
            "--gluck",
            "second"
        ]),
        format!(
            "h1 of gluck(second) of closed (2,3) of knot trefoil: {}\n",
            btspin::assembly::h1(&twisted).unwrap()
        )
    );
    assert_eq!(
        stdout_of(&[
            "certify",
            "--knot",
            &knot_path("trefoil.knot"),
            "2",
            "3",
            "--kmax",
            "3"
        ]),
        format!(
            "certificate for closed (2,3) of knot trefoil\n{}\n",
            sphere_certificate(&closed, 3).unwrap()
        )
    );
}

#[test]
fn exit_codes() {
    // Success.
    assert_eq!(run(&["twin", "2", "3"]).status.code(), Some(0));
    // Domain errors.
    assert_eq!(run(&["twin", "0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["twin", "4", "6"]).status.code(), Some(1));
    assert_eq!(
        run(&["h1", "--knot", &knot_path("trefoil.knot"), "0", "1"])
            .status
            .code(),
        Some(1)
    );
    // Command-line parse errors.
    assert_eq!(run(&["twin", "x", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // Knot-file parse errors.
    let dir = std::env::temp_dir().join("btspin-golden-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.knot");
    std::fs::write(&bad, "knot k\ngens x\nrel x z\nmeridian x\nlongitude\n").unwrap();
    assert_eq!(
        run(&["pi1", "--knot", bad.to_str().unwrap(), "2", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn spun_knot_rewrite_prints_terminal_index() {
    assert_eq!(
        stdout_of(&["gluck", "--along", "partner", "-1", "1"]),
        "(-1,1) -> (0,1)\n"
    );
}
