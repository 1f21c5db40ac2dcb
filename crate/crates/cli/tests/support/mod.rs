#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use jac_cli::syntax::{Atom, Expr};
use jac_core::rational::ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(serde::Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub env: BTreeMap<String, String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let src = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&src).expect("valid cases.json")
}

/// Command line, exit code, stdout and stderr in one record.
pub fn transcript(args: &[String], env: &BTreeMap<String, String>) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jac"));
    cmd.args(args).env_remove("JAC_MAX_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("jac runs");
    let shown: Vec<String> = env
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .chain(std::iter::once("jac".into()))
        .chain(args.iter().map(|a| format!("'{a}'")))
        .collect();
    format!(
        "$ {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        shown.join(" "),
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

/// Names of cases whose output differs from the stored file, with a diff.
pub fn golden_mismatches() -> Vec<String> {
    let mut failures = Vec::new();
    for case in cases() {
        let got = transcript(&case.args, &case.env);
        let path = golden_dir().join(format!("{}.out", case.name));
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{}:\n--- want\n{want}--- got\n{got}", case.name)),
            Err(_) => failures.push(format!("{}: missing {}", case.name, path.display())),
        }
    }
    failures
}

pub fn random_atom(r: &mut ChaCha8Rng, n: usize) -> Atom {
    let slot = r.gen_range(1..=n);
    match r.gen_range(0..10) {
        0 => Atom::X(slot),
        1 => Atom::D(slot),
        2 => Atom::H(slot),
        3 => Atom::SmallH(slot),
        4 => Atom::Int(slot),
        5 => Atom::E { slot, row: r.gen_range(0..5), col: r.gen_range(0..5) },
        6 => Atom::EMulti {
            row: (0..n).map(|_| r.gen_range(0..4)).collect(),
            col: (0..n).map(|_| r.gen_range(0..4)).collect(),
        },
        7 => Atom::Pi { slot, i: r.gen_range(0..6) },
        8 => Atom::Rho { slot, j: None, i: r.gen_range(0..6) },
        _ => Atom::Rho { slot, j: Some(r.gen_range(1..4)), i: r.gen_range(0..6) },
    }
}

pub fn random_expr(r: &mut ChaCha8Rng, n: usize, depth: u32) -> Expr {
    let leaf = depth == 0 || r.gen_bool(0.25);
    if leaf {
        return if r.gen_bool(0.3) {
            Expr::Num(ratio(r.gen_range(0..20), r.gen_range(1..6)))
        } else {
            Expr::Atom(random_atom(r, n))
        };
    }
    let sub = |r: &mut ChaCha8Rng| Box::new(random_expr(r, n, depth - 1));
    match r.gen_range(0..5) {
        0 => Expr::Neg(sub(r)),
        1 => Expr::Add(sub(r), sub(r)),
        2 => Expr::Sub(sub(r), sub(r)),
        3 => Expr::Mul(sub(r), sub(r)),
        _ => Expr::Pow(sub(r), r.gen_range(-3..=4)),
    }
}
