//! Integration tests for the frontend beyond the golden suite: file and
//! stdin-style inputs, user-defined signatures, and error reporting.

use bindkit::run_args;

fn temp_file(name: &str, content: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("bindkit-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn inputs_can_be_files() {
    let term = temp_file("term.ln", "(lm (^1 (ap #0 @x)))\n");
    let map = temp_file("map.subst", "x := (lm (^1 #0));\n");
    let out = run_args(&[
        "subst",
        "--sig",
        "lambda",
        "--map",
        map.to_str().unwrap(),
        term.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, "(lm (^1 (ap #0 (lm (^1 #0)))))\n");
    std::fs::remove_file(term).unwrap();
    std::fs::remove_file(map).unwrap();
}

#[test]
fn user_defined_signature_files_load() {
    let sig = temp_file(
        "sig.txt",
        "# binders two deep\ntri : 2 0 1\npair : 0 0\nkonst :\n",
    );
    let out = run_args(&[
        "parse",
        "--sig",
        sig.to_str().unwrap(),
        "--form",
        "ln",
        "(tri (^2 (pair #0 #1)) (konst) (^1 #0))",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, "(tri (^2 (pair #0 #1)) (konst) (^1 #0))\n");

    let bad = run_args(&[
        "parse",
        "--sig",
        sig.to_str().unwrap(),
        "--form",
        "ln",
        "(tri (^1 #0) (konst) (^1 #0))",
    ]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("binds 2 names"), "stderr: {}", bad.stderr);

    // Nameful form with a two-name binder, through translation and back.
    let nom = run_args(&[
        "parse",
        "--sig",
        sig.to_str().unwrap(),
        "--form",
        "nom",
        "(tri [x y] (pair @x @y) (konst) [z] @z)",
    ]);
    assert_eq!(nom.code, 0, "stderr: {}", nom.stderr);
    assert_eq!(nom.stdout, "(tri [x y] (pair @x @y) (konst) [z] @z)\n");
    let image = run_args(&[
        "translate",
        "--sig",
        sig.to_str().unwrap(),
        "(tri [x y] (pair @x @y) (konst) [z] @z)",
    ]);
    assert_eq!(image.stdout, "(tri (^2 (pair #0 #1)) (konst) (^1 #0))\n");
    std::fs::remove_file(sig).unwrap();
}

#[test]
fn scope_and_type_errors_name_the_invariant() {
    // untranslate demands a locally closed term.
    let out = run_args(&["untranslate", "--sig", "lambda", "#1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("locally closed"), "stderr: {}", out.stderr);

    // conv rejects terms of different types rather than answering false.
    let out = run_args(&["conv", "zero", "\\x:Nat. x"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("different types"), "stderr: {}", out.stderr);

    // unknown signatures and commands.
    assert_eq!(run_args(&["parse", "--sig", "mu", "@x"]).code, 2);
    assert_eq!(run_args(&["frobnicate"]).code, 2);
    assert_eq!(run_args(&["help"]).code, 0);
}

#[test]
fn seed_environment_variable_is_the_default() {
    let with_flag = run_args(&["gen", "--sig", "lambda", "--seed", "42", "--count", "2"]);
    std::env::set_var("BINDKIT_SEED", "42");
    let with_env = run_args(&["gen", "--sig", "lambda", "--count", "2"]);
    std::env::remove_var("BINDKIT_SEED");
    assert_eq!(with_flag, with_env);
}

#[test]
fn json_errors_go_to_stdout() {
    let out = run_args(&["parse", "--sig", "lambda", "--form", "ln", "--json", "(lm"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.starts_with("{\"ok\":false,\"exit\":2,\"error\":\""));
    assert!(out.stderr.is_empty());
}

#[test]
fn normalize_accepts_and_emits_canonical_form() {
    let out = run_args(&[
        "normalize",
        "--ctx",
        "",
        "--form",
        "ln",
        "(ap (lam (Nat) (^1 #0)) (zero))",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, "(zero)\n");
}
