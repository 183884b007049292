mod spec;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammag::exact::{parse_rational, rational_to_string, Matrix, Rational};
use gammag::groups::induced::Gl2q;
use gammag::groups::CongruenceSubgroup;
use gammag::hecke::{hecke_tp, AlphaTerm, HeckePath, Parallelism};
use gammag::modsym::{cuspidal_subspace, plus_subspace, star_involution, ModSymSpace};
use gammag::spectra::{decompose, eigen_system, EigenSystem, HeckeModule};
use gammag::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use spec::GroupSpec;

#[derive(Parser)]
#[command(name = "gammag", version, about = "Modular symbols and Hecke operators for subgroups of GL2(Z/NZ)")]
struct Cli {
    /// Worker threads for Hecke matrix columns.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// `name:N` with name one of gamma0, gamma1, gamma_full, ns, ns_plus, s4;
    /// or `N:[[a,b,c,d],...]`; or `@file` holding either form.
    group: String,
    #[arg(short = 'k', long, default_value_t = 2)]
    weight: u32,
}

#[derive(Args)]
struct BadPrimes {
    /// Double coset `a,b,c,d` (rationals, row-major), optionally `:c` for a coefficient. Repeatable.
    #[arg(long = "alpha")]
    alphas: Vec<String>,
    /// Declare `T_p = 0` at a prime dividing the level. Repeatable.
    #[arg(long = "zero-at")]
    zero_at: Vec<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Auto,
    Naive,
    Merel,
}

#[derive(Subcommand)]
enum Cmd {
    /// Index, cusps and dimensions.
    Dims(Common),
    /// Matrix of T_p on the cuspidal plus space (cuspidal space if not of real type).
    Hecke {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'p')]
        p: u64,
        #[arg(long, value_enum, default_value = "auto")]
        path: PathArg,
        #[command(flatten)]
        bad: BadPrimes,
        /// Print the matrix on the whole space of modular symbols.
        #[arg(long)]
        ambient: bool,
    },
    /// Irreducible Hecke pieces.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigenvalues a_n, n < L, of one piece.
    Eigensystem {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        piece: usize,
        #[arg(short = 'L', default_value_t = 100)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        bad: BadPrimes,
    },
    /// Time the Heilbronn and double coset paths against each other.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Comma separated primes.
        #[arg(short = 'p', value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
}

enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 1 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            let code = match e {
                Error::ResourceCap(_) => 3,
                Error::MissingBadPrime(p) => {
                    eprintln!("error: T_{p} at a prime dividing the level is only effectively computable from explicit double cosets; pass --alpha or --zero-at");
                    return ExitCode::from(4);
                }
                _ => 1,
            };
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn parallelism(threads: usize) -> Parallelism {
    if threads > 1 {
        Parallelism::default()
    } else {
        Parallelism::Sequential
    }
}

fn load(c: &Common) -> Result<Arc<ModSymSpace>, Failure> {
    let spec = GroupSpec::parse(&c.group).map_err(Failure::Parse)?;
    let g = spec.build().map_err(|e| match e {
        Error::Invalid(m) => Failure::Parse(m),
        e => Failure::Lib(e),
    })?;
    let g = Arc::new(CongruenceSubgroup::new(g)?);
    Ok(Arc::new(ModSymSpace::new(g, c.weight)?))
}

fn parse_alpha(s: &str) -> Result<AlphaTerm<Rational>, Failure> {
    let (m, c) = match s.split_once(':') {
        Some((m, c)) => (m, parse_rational(c).ok_or_else(|| Failure::Parse(format!("bad coefficient {c:?}")))?),
        None => (s, Rational::from_integer(1.into())),
    };
    let e: Vec<Rational> = m
        .split(',')
        .map(|x| parse_rational(x).ok_or_else(|| Failure::Parse(format!("bad matrix entry {x:?}"))))
        .collect::<Result<_, _>>()?;
    let e: [Rational; 4] = e.try_into().map_err(|_| Failure::Parse(format!("--alpha needs 4 entries, got {m:?}")))?;
    let a = Gl2q::new(e).map_err(|e| Failure::Parse(e.to_string()))?;
    Ok((a, c))
}

fn det_of(a: &Gl2q) -> Rational {
    let e = a.entries();
    e[0].clone() * &e[3] - e[1].clone() * &e[2]
}

/// Supplied operators keyed by the determinant of each double coset.
fn bad_prime_data(bad: &BadPrimes) -> Result<BTreeMap<u64, Vec<AlphaTerm<Rational>>>, Failure> {
    let mut out: BTreeMap<u64, Vec<AlphaTerm<Rational>>> = BTreeMap::new();
    for p in &bad.zero_at {
        out.entry(*p).or_default();
    }
    for s in &bad.alphas {
        let t = parse_alpha(s)?;
        let d = det_of(&t.0);
        let p = (d.is_integer() && d > Rational::from_integer(0.into()))
            .then(|| d.to_integer().to_string().parse::<u64>().ok())
            .flatten()
            .ok_or_else(|| Failure::Parse(format!("--alpha {s:?} must have a positive integer determinant")))?;
        out.entry(p).or_default().push(t);
    }
    Ok(out)
}

fn q_str(x: &Rational) -> String {
    rational_to_string(x)
}

fn matrix_text(m: &Matrix<Rational>) -> String {
    let mut s = String::new();
    for r in m.to_rows() {
        s.push_str(&r.iter().map(q_str).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    Value::Array(
        m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(q_str(x))).collect())).collect(),
    )
}

fn run(cli: &Cli) -> Out {
    let par = parallelism(cli.threads);
    match &cli.cmd {
        Cmd::Dims(c) => dims(c, cli.json),
        Cmd::Hecke { common, p, path, bad, ambient } => {
            let s = load(common)?;
            let path = match path {
                PathArg::Auto => HeckePath::Auto,
                PathArg::Naive => HeckePath::Naive,
                PathArg::Merel => HeckePath::Merel,
            };
            let data = bad_prime_data(bad)?;
            let terms: Option<Vec<AlphaTerm<Rational>>> =
                if data.is_empty() { None } else { Some(data.into_values().flatten().collect()) };
            let t = hecke_tp(&s, *p, terms.as_deref(), path, par)?;
            let t = if *ambient {
                t
            } else {
                let cusp = cuspidal_subspace(&s);
                let w = match star_involution(&s) {
                    Ok(i) => plus_subspace(&cusp, &i)?,
                    Err(Error::NotRealType) => cusp,
                    Err(e) => return Err(e.into()),
                };
                w.restrict(&t)?
            };
            Ok(if cli.json { format!("{}\n", matrix_json(&t)) } else { matrix_text(&t) })
        }
        Cmd::Decompose { common, seed } => {
            let m = HeckeModule::new(load(common)?)?.with_parallelism(par);
            let pieces = decompose(&m, *seed)?;
            if cli.json {
                let v: Vec<Value> = pieces
                    .iter()
                    .map(|p| json!({"dim": p.dim(), "prime": p.label_prime, "charpoly": p.label.to_string()}))
                    .collect();
                return Ok(format!("{}\n", Value::Array(v)));
            }
            let mut s = String::new();
            for (i, p) in pieces.iter().enumerate() {
                s.push_str(&format!("{i}: dim {}, charpoly T_{} = {}\n", p.dim(), p.label_prime, p.label));
            }
            Ok(s)
        }
        Cmd::Eigensystem { common, piece, l, seed, bad } => {
            let mut m = HeckeModule::new(load(common)?)?.with_parallelism(par);
            for (p, terms) in bad_prime_data(bad)? {
                m = m.with_bad_prime(p, terms);
            }
            let pieces = decompose(&m, *seed)?;
            let pc = pieces
                .get(*piece)
                .ok_or_else(|| Failure::Parse(format!("piece {piece} out of range; there are {}", pieces.len())))?;
            let e = eigen_system(&m, pc, *l)?;
            if cli.json {
                let a: Vec<Value> =
                    e.a.iter().map(|x| x.as_ref().map_or(Value::Null, |x| Value::String(x.to_string()))).collect();
                return Ok(format!("{}\n", json!({"field": field_text(&e), "a": a})));
            }
            let mut s = format!("field: {}\n", field_text(&e));
            for (i, x) in e.a.iter().enumerate() {
                s.push_str(&format!("{}: {}\n", i + 1, x.as_ref().map_or("?".to_string(), |x| x.to_string())));
            }
            Ok(s)
        }
        Cmd::Bench { common, primes } => bench(common, primes, par, cli.json),
    }
}

/// `Q` for rational systems, else the defining polynomial in `a`.
fn field_text(e: &EigenSystem) -> String {
    if e.modulus().degree() == Some(1) {
        "Q".into()
    } else {
        e.modulus().to_string().replace('x', "a")
    }
}

fn dims(c: &Common, json: bool) -> Out {
    let s = load(c)?;
    let g = s.group();
    let cusp = cuspidal_subspace(&s);
    let plus = match star_involution(&s) {
        Ok(i) => Some(plus_subspace(&cusp, &i)?.dim()),
        Err(Error::NotRealType) => None,
        Err(e) => return Err(e.into()),
    };
    if json {
        let v = json!({
            "level": g.level(), "index": g.index(), "cusps": g.cusp_count(), "genus": g.genus(),
            "weight": c.weight, "dim": s.dim(), "cuspidal": cusp.dim(), "plus": plus,
        });
        return Ok(format!("{v}\n"));
    }
    let plus = plus.map_or("n/a (not of real type)".to_string(), |d| d.to_string());
    Ok(format!(
        "level {}\nindex {}\ncusps {}\ngenus {}\nweight {}\ndim {}\ncuspidal {}\nplus {}\n",
        g.level(),
        g.index(),
        g.cusp_count(),
        g.genus(),
        c.weight,
        s.dim(),
        cusp.dim(),
        plus
    ))
}

fn bench(c: &Common, primes: &[u64], par: Parallelism, json: bool) -> Out {
    let s = load(c)?;
    let mut rows = Vec::new();
    for &p in primes {
        let t0 = Instant::now();
        let fast = hecke_tp(&s, p, None, HeckePath::Merel, par)?;
        let t1 = Instant::now();
        let naive = hecke_tp(&s, p, None, HeckePath::Naive, par)?;
        let t2 = Instant::now();
        if fast != naive {
            return Err(Failure::Lib(Error::Other(format!("paths disagree at p = {p}"))));
        }
        let hash = Sha256::digest(matrix_text(&fast).as_bytes());
        let hex: String = hash.iter().take(8).map(|b| format!("{b:02x}")).collect();
        rows.push((p, (t1 - t0).as_secs_f64() * 1e3, (t2 - t1).as_secs_f64() * 1e3, hex));
    }
    if json {
        let v: Vec<Value> =
            rows.iter().map(|(p, a, b, h)| json!({"p": p, "merel_ms": a, "naive_ms": b, "sha256": h})).collect();
        return Ok(format!("{}\n", Value::Array(v)));
    }
    let mut out = format!("dim {}\n{:>6} {:>12} {:>12}  sha256\n", s.dim(), "p", "merel ms", "naive ms");
    for (p, a, b, h) in rows {
        out.push_str(&format!("{p:>6} {a:>12.2} {b:>12.2}  {h}\n"));
    }
    Ok(out)
}
