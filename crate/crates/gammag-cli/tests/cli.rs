use std::process::{Command, Output};

use serde_json::Value;

fn gammag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammag")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let o = gammag(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(gammag(&["dims", "nonsense"]).status.code(), Some(2));
    assert_eq!(gammag(&["dims", "7:[[1,2,3]]"]).status.code(), Some(2));
    let o = gammag(&["hecke", "gamma0:11", "-p", "11"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("double coset"));
    assert_eq!(gammag(&["hecke", "gamma0:11", "-p", "11", "--zero-at", "11"]).status.code(), Some(0));
}

#[test]
fn dims_json_matches_text() {
    let v: Value = serde_json::from_str(&stdout(&["--json", "dims", "gamma0:11"])).unwrap();
    assert_eq!(v["index"], 12);
    assert_eq!(v["genus"], 1);
    let text = stdout(&["dims", "gamma0:11"]);
    assert!(text.contains("index 12\n"));
    assert!(text.contains("genus 1\n"));
}

#[test]
fn eigensystem_json_round_trip() {
    let v: Value =
        serde_json::from_str(&stdout(&["--json", "eigensystem", "gamma0:11", "-L", "30", "--alpha", "1,0,0,11"]))
            .unwrap();
    assert_eq!(v["field"], "Q");
    let a: Vec<i64> = v["a"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(&a[..13], &[1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4]);
    let text = stdout(&["eigensystem", "gamma0:11", "-L", "30", "--alpha", "1,0,0,11"]);
    for (i, x) in a.iter().enumerate() {
        assert!(text.contains(&format!("\n{}: {x}\n", i + 1)));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["decompose", "ns_plus:17"][..],
        &["--threads", "4", "decompose", "ns_plus:17"],
        &["eigensystem", "ns_plus:17", "--piece", "2", "-L", "40"],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
    assert_eq!(stdout(&["decompose", "ns_plus:17"]), stdout(&["--threads", "4", "decompose", "ns_plus:17"]));
}

#[test]
fn group_file_input() {
    let path = std::env::temp_dir().join(format!("gammag-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "11:[[1,1,0,1],[2,0,0,1],[1,0,0,2]]\n").unwrap();
    let from_file = stdout(&["hecke", &format!("@{}", path.display()), "-p", "2"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file, stdout(&["hecke", "gamma0:11", "-p", "2"]));
}

fn parse_poly(s: &str) -> Vec<i64> {
    // "x^3 - 2*x + 1" style, highest degree first
    let mut c = std::collections::BTreeMap::new();
    for term in s.replace(" - ", " + -").split(" + ") {
        let (coef, deg) = match term.split_once('x') {
            None => (term.parse().unwrap(), 0),
            Some((a, b)) => {
                let a = a.trim_end_matches('*');
                let coef = match a {
                    "" => 1,
                    "-" => -1,
                    a => a.parse().unwrap(),
                };
                (coef, b.strip_prefix('^').map_or(1, |e| e.parse().unwrap()))
            }
        };
        c.insert(deg, coef);
    }
    let top = *c.keys().last().unwrap();
    (0..=top).map(|d| c.get(&d).copied().unwrap_or(0)).collect()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn product_of_labels(group: &str) -> Vec<i64> {
    let v: Value = serde_json::from_str(&stdout(&["--json", "decompose", group])).unwrap();
    let mut acc = vec![1];
    for piece in v.as_array().unwrap() {
        assert_eq!(piece["prime"], 2);
        let f = parse_poly(piece["charpoly"].as_str().unwrap());
        // the label is a power of an irreducible factor
        let d = piece["dim"].as_u64().unwrap() as usize;
        let mut p = vec![1];
        while p.len() - 1 < d {
            p = poly_mul(&p, &f);
        }
        acc = poly_mul(&acc, &p);
    }
    acc
}

#[test]
fn ns_plus_divides_ns() {
    let plus = product_of_labels("ns_plus:13");
    let full = product_of_labels("ns:13");
    assert_eq!(plus.len() - 1, 3);
    assert_eq!(full.len() - 1, 8);
    // exact division of monic integer polynomials
    let mut r = full.clone();
    let mut quot = vec![0; full.len() - plus.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = r[i + plus.len() - 1];
        quot[i] = c;
        for (j, x) in plus.iter().enumerate() {
            r[i + j] -= c * x;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "remainder {r:?}");
}
