//! One line per acceptance criterion. `-- --ignored` adds the long ns+(97) run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gammag::exact::{q, Matrix, NfElem, Poly, Rational};
use gammag::groups::induced::Gl2q;
use gammag::groups::{families, CongruenceSubgroup, GroupModN, Mat2};
use gammag::hecke::{
    condition_cn_check, enumerate_degeneracy, hecke_double_coset, hecke_tp, heilbronn_merel_set, DegeneracyData,
    HeckePath, HeilbronnSet, Parallelism,
};
use gammag::modsym::{cuspidal_subspace, plus_subspace, star_involution, sym_action, ModSymSpace, SymPoly};
use gammag::spectra::{decompose, eigen_system, local_euler_factor, sturm_bound, HeckeModule};

const H155: &str = "16:[[1,3,12,3],[1,1,12,7],[1,3,0,3],[1,0,2,3]]";
const LEVEL16: &str = "16:[[2,1,3,2],[0,3,5,8],[1,0,0,5],[1,8,0,3]]";
const E8: &str = "8:[[7,0,0,7],[2,3,3,5],[0,7,7,7],[3,0,0,3],[4,7,7,3]]";

fn group(spec: &str) -> GroupModN {
    let (n, rest) = spec.split_once(':').unwrap();
    let gens: Vec<[i64; 4]> = serde_json::from_str(rest).unwrap();
    GroupModN::generate_i64(n.parse().unwrap(), &gens).unwrap()
}

fn space(g: GroupModN, k: u32) -> Arc<ModSymSpace> {
    Arc::new(ModSymSpace::new(Arc::new(CongruenceSubgroup::new(g).unwrap()), k).unwrap())
}

fn module(g: GroupModN) -> HeckeModule {
    HeckeModule::new(space(g, 2)).unwrap()
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn criterion_1() -> Result<(), String> {
    let s = space(families::gamma0(11).unwrap(), 2);
    let cusp = cuspidal_subspace(&s);
    let plus = plus_subspace(&cusp, &star_involution(&s).unwrap()).unwrap();
    ensure((s.dim(), cusp.dim(), plus.dim()) == (3, 2, 1), "dimensions")?;
    for (p, a) in [(2, -2), (3, -1)] {
        let t = plus.restrict(&hecke_tp(&s, p, None, HeckePath::Auto, Parallelism::Sequential).unwrap()).unwrap();
        ensure(t == Matrix::from_int_rows(&[vec![a]]), "T_p on the plus space")?;
    }
    let m = HeckeModule::new(s).unwrap();
    let pieces = decompose(&m, 0).unwrap();
    ensure(local_euler_factor(&m, &pieces[0], 2).unwrap() == Poly::from_ints(&[1, 2, 2]), "Euler factor at 2")
}

fn criterion_2() -> Result<(), String> {
    let s = space(group(E8), 2);
    let c = cuspidal_subspace(&s);
    ensure(c.dim() == 2, "cuspidal dimension")?;
    let a = Gl2q::from_int(Mat2::diag(1, 97)).unwrap();
    let t = c.restrict(&hecke_double_coset(&s, &a, Parallelism::Sequential).unwrap()).unwrap();
    ensure(t.is_scalar(&q(18)), "det 97 double coset is 18 I")
}

fn criterion_3() -> Result<(), String> {
    let m = module(group(H155)).with_bad_prime(2, Vec::new());
    let pieces = decompose(&m, 0).unwrap();
    ensure(pieces.len() == 1, "one piece")?;
    let e = eigen_system(&m, &pieces[0], 100).unwrap();
    ensure(e.field.degree() == 1, "rational field")?;
    let fixed = [(5, -4), (9, -3), (13, -4), (17, -2), (29, -4), (37, 12), (41, -10), (89, 10), (97, -18)];
    for (n, a) in fixed {
        ensure(e.rational(n) == Some(q(a)), &format!("a_{n}"))?;
    }
    for n in (1..100).filter(|n| n % 2 == 0 || n % 4 == 3) {
        ensure(e.rational(n) == Some(q(0)), &format!("a_{n} vanishes"))?;
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let m = module(group(LEVEL16)).with_bad_prime(2, Vec::new());
    let pieces = decompose(&m, 0).unwrap();
    let e = eigen_system(&m, &pieces[0], 100).unwrap();
    let fixed = [(3, -2), (11, -6), (17, -6), (19, -2), (41, 6), (43, 10), (59, -6), (67, 14), (97, 10)];
    for (n, a) in fixed {
        ensure(e.rational(n) == Some(q(a)), &format!("a_{n}"))?;
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let m = module(families::nonsplit_cartan_plus(13).unwrap());
    ensure(m.working().dim() == 3, "plus dimension")?;
    let pieces = decompose(&m, 0).unwrap();
    ensure(pieces.len() == 1, "one piece")?;
    let f = Poly::from_ints(&[-1, -1, 2, 1]);
    ensure(pieces[0].label == f, "charpoly of T_2")?;
    let e = eigen_system(&m, &pieces[0], 6).unwrap();
    let a = e.get(2).unwrap().clone();
    let fld = a.field().clone();
    let k = |x: i64| NfElem::from_rational(&fld, q(x));
    let a2 = a.clone() * &a;
    ensure(a2.clone() * &a + &(a2.clone() * &k(2)) - &a - &k(1) == k(0), "a_2 is a root")?;
    ensure(e.get(3).unwrap() == &(k(0) - &a2 - &(a.clone() * &k(2))), "a_3")?;
    ensure(e.get(4).unwrap() == &(a2.clone() - &k(2)), "a_4")?;
    ensure(e.get(5).unwrap() == &(a2 + &(a * &k(2)) - &k(2)), "a_5")
}

fn criterion_6() -> Result<(), String> {
    let m = module(families::nonsplit_cartan_plus(17).unwrap());
    let pieces = decompose(&m, 0).unwrap();
    let dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
    ensure(dims == [1, 2, 3], "piece dimensions")?;
    let labels = [Poly::from_ints(&[1, 1]), Poly::from_ints(&[-3, 1, 1]), Poly::from_ints(&[1, -3, 0, 1])];
    ensure(pieces.iter().zip(&labels).all(|(p, l)| &p.label == l), "charpoly labels")?;
    let e = eigen_system(&m, &pieces[0], 8).unwrap();
    ensure([(2, -1), (5, 2), (7, -4)].iter().all(|&(n, a)| e.rational(n) == Some(q(a))), "rational piece")
}

fn criterion_7() -> Result<(), String> {
    let m = module(families::s4_exceptional(13).unwrap());
    let pieces = decompose(&m, 0).unwrap();
    let cubic = Poly::from_ints(&[-1, -1, 2, 1]);
    ensure(pieces.iter().any(|p| p.dim() == 3 && p.label == cubic), "cubic piece")
}

fn criterion_8() -> Result<(), String> {
    let m = module(families::nonsplit_cartan_plus(97).unwrap()).with_parallelism(Parallelism::Rayon);
    let dims: Vec<usize> = decompose(&m, 0).unwrap().iter().map(|p| p.dim()).collect();
    ensure(dims == [3, 4, 4, 6, 7, 7, 12, 14, 24, 24, 24, 56, 168], &format!("piece dimensions {dims:?}"))
}

fn assorted() -> Vec<GroupModN> {
    vec![
        GroupModN::gl2(1).unwrap(),
        families::gamma0(11).unwrap(),
        families::gamma0(12).unwrap(),
        families::gamma1(13).unwrap(),
        families::gamma_full(3).unwrap(),
        families::nonsplit_cartan(7).unwrap(),
        families::nonsplit_cartan_plus(13).unwrap(),
        group(H155),
        group(LEVEL16),
        group(E8),
    ]
}

fn manin_relations() -> Result<(), String> {
    for g in assorted() {
        for k in [2, 4] {
            let s = space(g.clone(), k);
            let gr = s.group();
            let d = k as usize - 2;
            let act = |p: &SymPoly, i: usize, m: &Mat2| {
                s.manin_to_vec(&sym_action(&m.adj(), p), gr.coset_index(&gr.rep(i).mul(m)) as usize)
            };
            let sum =
                |a: &[Rational], b: &[Rational]| -> Vec<Rational> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
            for i in 0..gr.index() {
                for w in 0..=d {
                    let p = SymPoly::monomial(d, w);
                    let x = s.manin_to_vec(&p, i);
                    let sigma = sum(&x, &act(&p, i, &Mat2::S));
                    let tau = sum(&sum(&x, &act(&p, i, &Mat2::TAU)), &act(&p, i, &Mat2::TAU.mul(&Mat2::TAU)));
                    ensure(sigma.iter().chain(&tau).all(|c| *c == q(0)), "sigma or tau relation")?;
                    ensure(x == act(&p, i, &Mat2::J), "J relation")?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    manin_relations()?;
    for n in 1..=30 {
        let set = heilbronn_merel_set(n);
        ensure(condition_cn_check(&set), "Heilbronn set")?;
        if n > 1 {
            let mut items = set.items.clone();
            items.pop();
            ensure(!condition_cn_check(&HeilbronnSet { n, items }), "mutated Heilbronn set")?;
        }
    }
    let seq = Parallelism::Sequential;
    for g in [families::gamma0(11).unwrap(), families::gamma1(13).unwrap(), families::nonsplit_cartan_plus(13).unwrap()]
    {
        let s = space(g, 2);
        let ts: Vec<Matrix<Rational>> = [2, 3, 5, 7]
            .iter()
            .map(|&p| {
                let fast = hecke_tp(&s, p, None, HeckePath::Merel, seq).unwrap();
                assert_eq!(fast, hecke_tp(&s, p, None, HeckePath::Naive, seq).unwrap());
                fast
            })
            .collect();
        let iota = star_involution(&s).unwrap();
        for a in &ts {
            ensure(a.commutes_with(&iota), "star commutes")?;
            ensure(ts.iter().all(|b| a.commutes_with(b)), "T_p T_q = T_q T_p")?;
        }
    }
    let src = space(families::gamma_full(11).unwrap(), 2);
    let tgt = space(families::gamma0(11).unwrap(), 2);
    let t = enumerate_degeneracy(src.group(), tgt.group()).unwrap()[0];
    let d = DegeneracyData::new(t, src.clone(), tgt.clone()).unwrap();
    let index = q(d.index() as i64);
    for i in 0..tgt.dim() {
        let mut e = vec![q(0); tgt.dim()];
        e[i] = q(1);
        let back = d.alpha_dual(&d.beta_dual(&e));
        ensure(back.iter().enumerate().all(|(j, x)| *x == if i == j { index.clone() } else { q(0) }), "alpha o beta")?;
    }
    let a = d.alpha_matrix();
    let t2 = |s: &ModSymSpace| hecke_tp(s, 2, None, HeckePath::Auto, seq).unwrap();
    ensure(t2(&tgt).mul(&a) == a.mul(&t2(&src)), "degeneracy commutes with T_2")?;
    let sturm = |k, g| sturm_bound(k, &CongruenceSubgroup::new(g).unwrap());
    ensure(sturm(2, families::gamma0(11).unwrap()) == 1, "Sturm bound at 11")?;
    ensure(sturm(12, GroupModN::gl2(1).unwrap()) == 1, "Sturm bound at level one")?;
    ensure(sturm(2, families::nonsplit_cartan_plus(13).unwrap()) == 7, "Sturm bound for ns+(13)")
}

fn cli(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_gammag")).args(args).output().unwrap();
    assert!(o.status.success(), "{args:?}");
    o.stdout
}

fn criterion_10() -> Result<(), String> {
    let runs: [&[&str]; 8] = [
        &["decompose", H155],
        &["eigensystem", H155, "--zero-at", "2", "--seed", "7"],
        &["decompose", LEVEL16],
        &["eigensystem", LEVEL16, "--zero-at", "2"],
        &["decompose", "ns_plus:13"],
        &["eigensystem", "ns_plus:13", "--seed", "3"],
        &["decompose", "ns_plus:17", "--seed", "5"],
        &["eigensystem", "ns_plus:17", "--piece", "2", "--json"],
    ];
    for args in runs {
        ensure(cli(args) == cli(args), &format!("{args:?} differs between runs"))?;
    }
    Ok(())
}

fn report(n: u32, what: &str, bound: Option<Duration>, f: fn() -> Result<(), String>) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let took = start.elapsed();
    let res = match (res, bound) {
        (Ok(()), Some(b)) if took > b => Err(format!("took {took:.2?}, bound {b:?}")),
        (r, _) => r,
    };
    match &res {
        Ok(()) => println!("PASS {n:>2} {what} ({took:.2?})"),
        Err(e) => println!("FAIL {n:>2} {what}: {e} ({took:.2?})"),
    }
    res.is_ok()
}

fn main() {
    let long = std::env::args().any(|a| a == "--ignored" || a == "--include-ignored");
    let secs = |s| Some(Duration::from_secs(s));
    let mut results = vec![
        report(1, "gamma0(11) dimensions, T_2, T_3, Euler factor", secs(1), criterion_1),
        report(2, "8E1 cuspidal dim and det 97 double coset", secs(10), criterion_2),
        report(3, "H155 eigensystem", secs(30), criterion_3),
        report(4, "level 16 eigensystem", secs(30), criterion_4),
        report(5, "ns+(13) cubic piece", secs(60), criterion_5),
        report(6, "ns+(17) pieces", secs(120), criterion_6),
        report(7, "S4(13) cubic piece", None, criterion_7),
    ];
    if long {
        results.push(report(8, "ns+(97) decomposition", None, criterion_8));
    } else {
        println!("SKIP  8 ns+(97) decomposition (long-running; pass --ignored)");
    }
    results.push(report(9, "property suite", None, criterion_9));
    results.push(report(10, "CLI determinism", None, criterion_10));
    if !results.iter().all(|&r| r) {
        std::process::exit(1);
    }
}
