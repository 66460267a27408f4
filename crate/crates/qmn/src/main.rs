use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qmn::{
    expr_to_json, expr_to_text, format_rational, read_poset, ChiTable, FormatError, IdentityReport,
};
use qmn_core::identities::{alpha_from_beta, probabilistic_terms, staircase_monte_carlo};
use qmn_core::rewrites::{add_edge_pair, split_weight};
use qmn_core::schur::{shape_to_poset, SkewShape};
use qmn_core::{
    mn_expansion, monomial_expansion, Basis, Composition, LabeledPoset, Partition, QsymExpr,
    Rational, SizeGuard,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "qmn",
    version,
    about = "Weighted poset generating functions in the quasisymmetric power sum basis"
)]
struct Cli {
    /// Largest poset size accepted before any enumeration.
    #[arg(long, global = true, env = "QMN_MAX_N", default_value_t = SizeGuard::DEFAULT_MAX_N)]
    max_n: usize,
    /// Emit JSON instead of tab-separated text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "M")]
    Monomial,
    #[value(name = "Psi")]
    Psi,
    #[value(name = "PsiHat")]
    PsiHat,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Monomial => Basis::Monomial,
            BasisArg::Psi => Basis::Psi,
            BasisArg::PsiHat => Basis::PsiHat,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Expansion by the signed border strip rule, converted to the chosen basis.
    Expand {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum, default_value = "PsiHat")]
        basis: BasisArg,
    },
    /// Monomial expansion by direct enumeration of poset partitions.
    Oracle {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Compares the border strip rule against direct enumeration.
    Verify {
        #[arg(long)]
        poset: PathBuf,
        /// Perturb the rule's output first; the comparison must then fail.
        #[arg(long)]
        corrupt: bool,
    },
    /// Expansion of the (skew) diagram poset of a shape.
    Schur {
        #[arg(long)]
        shape: Partition,
        #[arg(long, default_value = "")]
        inner: Partition,
        #[arg(long, value_enum, default_value = "PsiHat")]
        basis: BasisArg,
    },
    /// Character table of the symmetric group on `n` letters.
    Chi {
        #[arg(long)]
        n: u32,
    },
    /// Coarsening identities for a weighted chain.
    Identities {
        #[arg(long)]
        d: Composition,
        /// Also sample the staircase model this many times.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Main rule and both recurrences on seeded random posets.
    RandomCheck {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] FormatError),
    #[error(transparent)]
    Guard(qmn_core::Error),
}

impl From<qmn_core::Error> for CliError {
    fn from(e: qmn_core::Error) -> Self {
        match e {
            qmn_core::Error::SizeGuard { .. } => CliError::Guard(e),
            other => CliError::Input(other.into()),
        }
    }
}

const PASS: u8 = 0;
const FAIL: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Guard(_) => 3,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let guard = SizeGuard::new(cli.max_n);
    let load = |path: &PathBuf| -> Result<LabeledPoset, CliError> {
        let p = read_poset(path)?;
        guard.check(&p)?;
        Ok(p)
    };
    match &cli.command {
        Command::Expand { poset, basis } => {
            let e = mn_expansion(&load(poset)?).to_basis((*basis).into());
            emit_expr(cli, &e);
            Ok(PASS)
        }
        Command::Oracle { poset } => {
            emit_expr(cli, &monomial_expansion(&load(poset)?));
            Ok(PASS)
        }
        Command::Verify { poset, corrupt } => {
            let p = load(poset)?;
            let mut rule = mn_expansion(&p);
            if *corrupt {
                let top = Composition::single(p.total_weight())?;
                rule.add_term(top, Rational::from_integer(1.into()));
            }
            let verdict = compare(&rule.to_monomial(), &monomial_expansion(&p));
            match &verdict {
                None => println!("PASS"),
                Some(diff) => println!("FAIL: {diff}"),
            }
            Ok(if verdict.is_none() { PASS } else { FAIL })
        }
        Command::Schur {
            shape,
            inner,
            basis,
        } => {
            let shape = SkewShape::new(shape.clone(), inner.clone())?;
            let p = shape_to_poset(&shape);
            guard.check(&p)?;
            emit_expr(cli, &mn_expansion(&p).to_basis((*basis).into()));
            Ok(PASS)
        }
        Command::Chi { n } => {
            guard_size(cli, *n as usize)?;
            let table = ChiTable::compute(*n);
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&table).expect("plain data serializes")
                );
            } else {
                for row in &table.table {
                    println!("{}\t{}\t{}", row.lambda, row.mu, row.chi);
                }
            }
            Ok(PASS)
        }
        Command::Identities { d, samples, seed } => {
            guard_size(cli, d.len())?;
            identities(cli, d, *samples, *seed)
        }
        Command::RandomCheck { count, n_max, seed } => {
            guard_size(cli, *n_max)?;
            Ok(random_check(cli, *count, *n_max, *seed))
        }
    }
}

fn guard_size(cli: &Cli, n: usize) -> Result<(), CliError> {
    if n > cli.max_n {
        return Err(CliError::Guard(qmn_core::Error::SizeGuard {
            n,
            max: cli.max_n,
        }));
    }
    Ok(())
}

fn emit_expr(cli: &Cli, e: &QsymExpr) {
    if cli.json {
        println!("{}", expr_to_json(e));
    } else {
        print!("{}", expr_to_text(e));
    }
}

/// First coefficient, in canonical order, where the two expressions differ.
fn compare(got: &QsymExpr, want: &QsymExpr) -> Option<String> {
    let keys: BTreeSet<&Composition> = got.terms().chain(want.terms()).map(|(k, _)| k).collect();
    keys.into_iter().find_map(|alpha| {
        let (g, w) = (got.coefficient(alpha), want.coefficient(alpha));
        (g != w).then(|| {
            format!(
                "coefficient of {}_{alpha}: rule gives {}, enumeration gives {}",
                want.basis().tag(),
                format_rational(&g),
                format_rational(&w)
            )
        })
    })
}

#[derive(serde::Serialize)]
struct SampleRow {
    beta: String,
    exact: String,
    frequency: String,
}

#[derive(serde::Serialize)]
struct SampledReport<'a> {
    #[serde(flatten)]
    report: &'a IdentityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<Vec<SampleRow>>,
}

fn identities(cli: &Cli, d: &Composition, samples: Option<u64>, seed: u64) -> Result<u8, CliError> {
    let report = IdentityReport::compute(d);
    let ok = report.holds();
    let mut sampled = Vec::new();
    if let Some(k) = samples {
        if k == 0 {
            return Err(FormatError::Coefficient("--samples must be positive".into()).into());
        }
        let terms: std::collections::BTreeMap<_, _> = probabilistic_terms(d).into_iter().collect();
        let freq = staircase_monte_carlo(d, k, seed);
        for beta in qmn_core::compositions::compositions_of(d.len() as u32) {
            let exact = terms[&alpha_from_beta(d, &beta)?].clone();
            let f = freq.get(&beta).cloned().unwrap_or_default();
            sampled.push((beta, exact, f));
        }
    }
    if cli.json {
        let out = SampledReport {
            report: &report,
            samples: samples.map(|_| {
                sampled
                    .iter()
                    .map(|(b, e, f)| SampleRow {
                        beta: b.to_string(),
                        exact: format_rational(e),
                        frequency: format_rational(f),
                    })
                    .collect()
            }),
        };
        println!(
            "{}",
            serde_json::to_string(&out).expect("plain data serializes")
        );
    } else {
        println!("sum\t{}", report.sum);
        println!("q_identity\t{}", report.q_identity);
        println!("linext\t{}\t{}", report.linext_lhs, report.linext_rhs);
        for (b, e, f) in &sampled {
            println!("beta {b}\t{}\t{}", format_rational(e), format_rational(f));
        }
    }
    Ok(if ok { PASS } else { FAIL })
}

const DENSITIES: [(u32, u32); 3] = [(1, 4), (1, 2), (3, 4)];

fn draw(rng: &mut ChaCha8Rng, n_max: usize) -> LabeledPoset {
    let n = rng.gen_range(1..=n_max);
    let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    LabeledPoset::random(n, density, rng.gen())
}

fn random_check(cli: &Cli, count: usize, n_max: usize, seed: u64) -> u8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = [[0usize; 2]; 3];
    for _ in 0..count {
        let p = draw(&mut rng, n_max);
        tally[0][1] += 1;
        tally[0][0] += usize::from(mn_expansion(&p).to_monomial() == monomial_expansion(&p));

        // addEdge needs an incomparable pair; impossible when n_max = 1
        if n_max >= 2 {
            let (q, a, b) = loop {
                let q = draw(&mut rng, n_max);
                let pairs: Vec<(usize, usize)> = (0..q.len())
                    .flat_map(|a| (a + 1..q.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| !q.comparable(a, b))
                    .collect();
                if !pairs.is_empty() {
                    let (a, b) = pairs[rng.gen_range(0..pairs.len())];
                    break (q, a, b);
                }
            };
            let (lo, hi) = add_edge_pair(&q, a, b).expect("pair is incomparable");
            let ok = monomial_expansion(&q) == &monomial_expansion(&lo) + &monomial_expansion(&hi)
                && mn_expansion(&q) == &mn_expansion(&lo) + &mn_expansion(&hi);
            tally[1][1] += 1;
            tally[1][0] += usize::from(ok);
        }

        let q = draw(&mut rng, n_max);
        let a = rng.gen_range(0..q.len());
        let q = if q.weight(a) < 2 {
            let mut w = q.weights().to_vec();
            w[a] = rng.gen_range(2..=3);
            q.with_weights(w).expect("weights stay positive")
        } else {
            q
        };
        let d1 = rng.gen_range(1..q.weight(a));
        let s = split_weight(&q, a, d1, q.weight(a) - d1).expect("parts sum to the weight");
        let ok = monomial_expansion(&q)
            == &monomial_expansion(&s.p_prime) - &monomial_expansion(&s.p_doubleprime)
            && mn_expansion(&q) == &mn_expansion(&s.p_prime) - &mn_expansion(&s.p_doubleprime);
        tally[2][1] += 1;
        tally[2][0] += usize::from(ok);
    }
    let all_ok = tally.iter().all(|[ok, total]| ok == total);
    let names = ["main", "addEdge", "splitWeight"];
    if cli.json {
        let mut obj = serde_json::Map::new();
        obj.insert("count".into(), count.into());
        for (name, [ok, total]) in names.iter().zip(tally) {
            obj.insert(
                (*name).into(),
                serde_json::json!({"passed": ok, "total": total}),
            );
        }
        obj.insert("pass".into(), all_ok.into());
        println!("{}", serde_json::Value::Object(obj));
    } else {
        let parts: Vec<String> = names
            .iter()
            .zip(tally)
            .map(|(name, [ok, total])| format!("{ok}/{total} {name}"))
            .collect();
        println!("{}", parts.join(", "));
        println!("{}", if all_ok { "PASS" } else { "FAIL" });
    }
    if all_ok {
        PASS
    } else {
        FAIL
    }
}
