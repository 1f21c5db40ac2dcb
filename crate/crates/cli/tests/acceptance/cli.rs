//! The `jac` binary against its golden transcripts, and parse/pretty round
//! trips.

use std::collections::BTreeMap;

use jac_cli::syntax::{parse, pretty};
use rand::Rng;

use crate::common;
use crate::support::{cases, golden_mismatches, random_expr, transcript};
use crate::Report;

const COMMANDS: [&[&str]; 9] = [
    &["apply"],
    &["canon"],
    &["invert"],
    &["solve"],
    &["theta"],
    &["spec"],
    &["ideal", "count"],
    &["ideal", "factor"],
    &["ideal", "op"],
];

fn exit_code(args: &[&str]) -> Option<String> {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    transcript(&args, &BTreeMap::new())
        .lines()
        .find_map(|l| l.strip_prefix("exit: ").map(String::from))
}

pub fn cli(rep: &mut Report) {
    for m in golden_mismatches() {
        rep.check(false, || m);
    }
    let cs = cases();
    rep.check(!cs.is_empty(), || "no golden cases".into());
    for cmd in COMMANDS {
        let covered = cs.iter().any(|c| {
            let words: Vec<&str> = c.args.iter().map(String::as_str).filter(|a| *a != "--json").collect();
            words.starts_with(cmd)
        });
        rep.check(covered, || format!("no golden case for {cmd:?}"));
    }
    for (args, code) in [
        (&["canon", "x +"][..], "2"),
        (&["canon", "-n", "2", "x3"], "2"),
        (&["solve", "x", "1"], "3"),
        (&["invert", "1 - E[0,0]"], "3"),
        (&["ideal", "count", "-n", "9"], "3"),
    ] {
        rep.eq(exit_code(args), Some(code.to_string()), || format!("exit code of jac {args:?}"));
    }

    let mut r = common::rng(801);
    for t in 0..500 {
        let n = r.gen_range(1..=3);
        let e = random_expr(&mut r, n, 5);
        let shown = pretty(&e, n);
        match parse(&shown, n) {
            Ok(back) => {
                rep.eq(pretty(&back, n), shown.clone(), || format!("pretty is a fixed point, tree {t}"));
                rep.eq(back, e, || format!("parse(pretty(e)) = e, tree {t}: {shown}"));
            }
            Err(err) => rep.check(false, || format!("tree {t}: '{shown}' does not parse: {err}")),
        }
    }
}
