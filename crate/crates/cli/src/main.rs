//! `pieri-rank`: command-line front end.
//!
//! Exit status is 0 on success, 1 when a verification check fails, 2 on
//! usage or input errors and 3 on internal failures.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pieri_rank::bounds::{self, BoundOptions, RankSource};
use pieri_rank::bwb::bwb;
use pieri_rank::cache::{cache_key, PieriCache};
use pieri_rank::euler::{dim_poly, euler_poly, exceptional_k, koszul_complex_weights, WeightComplex};
use pieri_rank::exactla::{to_matrix_market_string, RankStrategy};
use pieri_rank::flatten::report_for_tensor;
use pieri_rank::partitions::{hook_lengths, parse_int_list, schur_dim, ssyt_count, Partition, Weight};
use pieri_rank::pieri::{build_pieri_tensor, check_pieri_pair, PieriTensor, UKind};
use pieri_rank::schurmodule::{cols_to_matrix, Generator, SchurModule, BASIS_VERSION};
use pieri_rank::weylkostant::{family_generator, kostant_weights, CartanType, FamilyKind, RootDatum};
use pieri_rank::Error;

use output::{emit, Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "pieri-rank", version, about = "Young-flattening ranks and border-rank bounds for Pieri tensors")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled points and random primes.
    #[arg(long, global = true, default_value_t = bounds::DEFAULT_SEED)]
    seed: u64,
    /// Use exact rational rank instead of modular rank.
    #[arg(long, global = true)]
    exact: bool,
    /// Number of random points for generic-rank probes.
    #[arg(long, global = true, default_value_t = bounds::DEFAULT_TRIALS)]
    trials: usize,
    /// Cache directory (else $PIERI_RANK_CACHE, else the user cache directory).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Do not read or write the tensor cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// v, sym2, wedge2, symd:D or wedged:D.
    #[arg(long)]
    u: String,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of S_λC^n.
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
        /// Also count semistandard tableaux and compare.
        #[arg(long)]
        check: bool,
    },
    /// Hook lengths of a Young diagram.
    Hooks {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Build the Pieri tensor and optionally export its matrices.
    Pieri {
        #[command(flatten)]
        pair: PairArgs,
        /// Directory for MatrixMarket files and the manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the Young flattening.
    FlattenRank {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Ranks of φ(u) at random points u.
    GenericRank {
        #[command(flatten)]
        pair: PairArgs,
        /// Half-width of the sampling box.
        #[arg(long, default_value_t = bounds::DEFAULT_SAMPLE_BOUND)]
        bound: i64,
    },
    /// Border-rank lower bound for one pair.
    Bound {
        #[command(flatten)]
        pair: PairArgs,
        /// theorem, oracle or both.
        #[arg(long, default_value = "both")]
        r_source: String,
        /// Measure the flattening rank even when the isomorphism theorem applies.
        #[arg(long)]
        measure_flattening: bool,
    },
    /// Recompute the published table of bounds.
    Table1,
    /// Weights of Lie algebra homology by Kostant's theorem.
    Kostant {
        /// A, C, D or E6.
        #[arg(long = "type")]
        cartan_type: String,
        /// n for A(n), C(n), D(n); ignored for E6.
        #[arg(long, default_value_t = 6)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Node whose complement is the Levi; defaults to the last node.
        #[arg(long)]
        node: Option<usize>,
    },
    /// Cohomology of S_λR(d) on the Grassmannian of hyperplanes.
    Bwb {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        n: usize,
    },
    /// Euler polynomial of a lifted complex and its integer roots.
    Euler {
        /// Complex as JSON.
        #[arg(long, conflicts_with = "koszul")]
        complex: Option<PathBuf>,
        /// Use the Koszul complex of sym2 or wedge2 instead.
        #[arg(long)]
        koszul: Option<String>,
        /// Dimension of W for --koszul.
        #[arg(long, default_value_t = 4)]
        source_n: usize,
        /// Top degree for --koszul; defaults to dim U.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Dimension the complex is lifted to.
        #[arg(long)]
        n: usize,
    },
    /// Partitions of a named family.
    Families {
        /// sym2-row2, wedge2-col, 1a, 1b, 2a, 2b, 2c or e6-beta; omit to list.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Semistandard basis of S_λC^n.
    SchurBasis {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: usize,
        /// Directory for the generator matrices.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect or clear the tensor cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum CacheAction {
    /// Print the cache directory.
    Path,
    /// List cached tensors.
    List,
    /// Remove every cached tensor.
    Clear,
}

struct Context {
    global: Global,
}

impl Context {
    fn cache(&self) -> Option<PieriCache> {
        if self.global.no_cache {
            return None;
        }
        cache_dir(&self.global).map(PieriCache::new)
    }

    fn tensor(&self, pair: &ParsedPair) -> Result<PieriTensor, Error> {
        check_pieri_pair(&pair.lambda, &pair.mu, pair.u, pair.n)?;
        match self.cache() {
            Some(c) => c.get_or_build(&pair.lambda, &pair.mu, pair.u, pair.n),
            None => build_pieri_tensor(&pair.lambda, &pair.mu, pair.u, pair.n),
        }
    }

    fn strategy(&self) -> RankStrategy {
        if self.global.exact {
            RankStrategy::Exact
        } else {
            RankStrategy::modular(self.global.seed)
        }
    }

    fn bound_options(&self, source: RankSource, measure_flattening: bool) -> BoundOptions {
        BoundOptions {
            source,
            trials: self.global.trials,
            seed: self.global.seed,
            exact: self.global.exact.then_some(true),
            measure_flattening,
            cache: self.cache(),
            ..BoundOptions::default()
        }
    }
}

fn cache_dir(g: &Global) -> Option<PathBuf> {
    g.cache
        .clone()
        .or_else(|| std::env::var_os("PIERI_RANK_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from))
        .or_else(|| dirs::cache_dir().map(|d| d.join("pieri-rank")))
}

struct ParsedPair {
    lambda: Partition,
    mu: Partition,
    u: UKind,
    n: usize,
}

fn parse_pair(p: &PairArgs) -> Result<ParsedPair, Error> {
    Ok(ParsedPair { lambda: p.lambda.parse()?, mu: p.mu.parse()?, u: p.u.parse()?, n: p.n })
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, Error> {
    Ok(serde_json::to_value(x)?)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let ctx = Context { global: cli.global.clone() };
    let seed = ctx.global.seed;
    let ok = |v: Value| Ok(Outcome::ok(v));
    match cli.command {
        Command::Dim { lambda, n, check } => {
            let lambda: Partition = lambda.parse()?;
            let dim = schur_dim(&lambda, n);
            if !check {
                return Ok(Outcome::scalar(dim.to_string()));
            }
            let count = ssyt_count(&lambda, n);
            let agree = dim == count.into();
            let v = json!({"lambda": lambda, "n": n, "dim": dim.to_string(), "ssyt_count": count, "agree": agree});
            Ok(Outcome { value: v, success: agree, table: None })
        }
        Command::Hooks { lambda } => {
            let lambda: Partition = lambda.parse()?;
            let hooks = hook_lengths(&lambda);
            let rows = hooks.iter().map(|r| r.iter().map(u32::to_string).collect()).collect();
            Ok(Outcome::ok(json!({"lambda": lambda, "hooks": hooks})).with_table(vec![], rows))
        }
        Command::Pieri { pair, out } => {
            let pair = parse_pair(&pair)?;
            let t = ctx.tensor(&pair)?;
            t.verify()?;
            let key = cache_key(&t.lambda, &t.mu, t.u, t.n);
            let mut files = Vec::new();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                let mut write = |name: String, m: &pieri_rank::exactla::SparseIntMatrix| -> Result<(), Error> {
                    fs::write(dir.join(&name), to_matrix_market_string(m))?;
                    files.push(name);
                    Ok(())
                };
                write("f1.mtx".into(), &t.f1)?;
                write("f2.mtx".into(), &t.f2)?;
                for (a, s) in t.phi_slices().iter().enumerate() {
                    write(format!("phi_{a}.mtx"), s)?;
                }
            }
            let manifest = json!({
                "lambda": t.lambda, "mu": t.mu, "u": t.u, "n": t.n,
                "dims": {"dim_u": t.dim_u, "k": t.k, "l": t.l},
                "basis_version": BASIS_VERSION, "content_hash": key,
                "scale_note": t.scale_note, "files": files,
            });
            if let Some(dir) = &out {
                fs::write(dir.join("manifest.json"), output::to_sorted_json(&manifest)?)?;
            }
            ok(manifest)
        }
        Command::FlattenRank { pair } => {
            let pair = parse_pair(&pair)?;
            let t = ctx.tensor(&pair)?;
            let rep = report_for_tensor(&t, &ctx.strategy())?;
            let success = rep.matches_prediction != Some(false);
            let mut v = to_value(&rep)?;
            v["seed"] = json!(seed);
            Ok(Outcome { value: v, success, table: None })
        }
        Command::GenericRank { pair, bound } => {
            let pair = parse_pair(&pair)?;
            let t = ctx.tensor(&pair)?;
            let strategy =
                if ctx.global.exact { RankStrategy::Exact } else { bounds::default_probe_strategy(&t, seed) };
            let rep = bounds::generic_rank_probe_with(&t, ctx.global.trials, seed, bound, &strategy)?;
            let mut v = to_value(&rep)?;
            v["lambda"] = to_value(&t.lambda)?;
            v["mu"] = to_value(&t.mu)?;
            v["u"] = to_value(&t.u)?;
            v["n"] = json!(t.n);
            v["k"] = json!(t.k);
            v["l"] = json!(t.l);
            ok(v)
        }
        Command::Bound { pair, r_source, measure_flattening } => {
            let pair = parse_pair(&pair)?;
            let source: RankSource = r_source.parse()?;
            let rep = bounds::border_rank_bound(
                &pair.lambda,
                &pair.mu,
                pair.u,
                pair.n,
                &ctx.bound_options(source, measure_flattening),
            )?;
            let success = !rep.r_disagreement;
            Ok(Outcome { value: to_value(&rep)?, success, table: None })
        }
        Command::Table1 => {
            let rows = bounds::table1(&ctx.bound_options(RankSource::Both, false))?;
            let success = rows.iter().all(|r| r.matches());
            let header = [
                "row",
                "U",
                "lambda",
                "mu",
                "printed_dims",
                "computed_dims",
                "r",
                "printed_bound",
                "computed_bound",
                "match",
                "flags",
            ];
            let cells = rows
                .iter()
                .map(|r| {
                    let d = |x: (usize, usize, usize)| format!("{}·{}·{}", x.0, x.1, x.2);
                    vec![
                        r.published.row.to_string(),
                        r.published.u.to_string(),
                        r.published.lambda.to_string(),
                        r.published.mu.to_string(),
                        d(r.published.dims),
                        d(r.computed_dims),
                        r.report.r.to_string(),
                        r.published.bound.to_string(),
                        r.computed_bound.to_string(),
                        r.matches().to_string(),
                        r.flags.join("; "),
                    ]
                })
                .collect();
            let v = json!({"seed": seed, "all_match": success, "rows": to_value(&rows)?});
            Ok(Outcome { value: v, success, table: None }
                .with_table(header.iter().map(|s| s.to_string()).collect(), cells))
        }
        Command::Kostant { cartan_type, rank, alpha, max_degree, node } => {
            let t: CartanType = cartan_type.parse()?;
            let datum = RootDatum::new(t, rank)?;
            let entries = parse_int_list(&alpha)?;
            let alpha = if t == CartanType::E6 { Weight::fundamental(entries) } else { Weight::epsilon(entries) };
            let node = node.unwrap_or(datum.rank());
            let table = kostant_weights(&datum, node, &alpha, max_degree)?;
            let header = ["degree", "word", "dotted", "dual_opp", "twist", "partition"];
            let rows = table
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.degree.to_string(),
                        e.word_name.clone(),
                        e.dotted.to_string(),
                        e.dual_opp.to_string(),
                        e.twist.to_string(),
                        e.partition.as_ref().map(Partition::to_string).unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            Ok(Outcome::ok(to_value(&table)?).with_table(header.iter().map(|s| s.to_string()).collect(), rows))
        }
        Command::Bwb { lambda, d, n } => ok(to_value(&bwb(&parse_int_list(&lambda)?, d, n)?)?),
        Command::Euler { complex, koszul, source_n, max_degree, n } => {
            let g: WeightComplex = match (complex, koszul) {
                (Some(path), _) => serde_json::from_slice(&fs::read(path)?)?,
                (None, Some(kind)) => {
                    let u: UKind = kind.parse()?;
                    let dim_u = schur_dim(&u.shape(), source_n);
                    let top = max_degree.unwrap_or_else(|| dim_u.try_into().unwrap_or(usize::MAX));
                    koszul_complex_weights(source_n, u, top)?
                }
                (None, None) => return Err(Error::Parameter("give --complex FILE or --koszul sym2|wedge2".into())),
            };
            let e = euler_poly(&g, n)?;
            let exceptional = if e.poly.is_zero() { None } else { Some(exceptional_k(&e.poly, e.threshold as i64)?) };
            let dims = g
                .terms
                .iter()
                .flat_map(|t| t.weights.iter())
                .map(|nu| dim_poly(nu, n).map(|d| json!({"nu": nu, "poly": d.poly})))
                .collect::<Result<Vec<_>, _>>()?;
            ok(json!({
                "complex": g, "euler": e, "exceptional": exceptional, "dim_polynomials": dims,
                "euler_characteristic": g.euler_characteristic().to_string(),
            }))
        }
        Command::Families { kind, alpha, n } => match kind {
            None => {
                let list: Vec<Value> = FamilyKind::ALL
                    .iter()
                    .map(|k| json!({"kind": k.name(), "u": k.u_kind(), "alpha_len": k.alpha_len(n)}))
                    .collect();
                ok(Value::Array(list))
            }
            Some(kind) => {
                let kind: FamilyKind = kind.parse()?;
                let alpha =
                    parse_int_list(alpha.as_deref().ok_or_else(|| Error::Parameter("--alpha is required".into()))?)?;
                ok(to_value(&family_generator(kind, &alpha, n)?)?)
            }
        },
        Command::SchurBasis { lambda, n, out } => {
            let lambda: Partition = lambda.parse()?;
            let m = SchurModule::build(&lambda, n)?;
            let basis: Vec<Value> = m
                .basis()
                .map(|t| json!({"rows": t.rows().iter().map(|r| r.to_vec()).collect::<Vec<_>>(), "weight": t.content(n)}))
                .collect();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                for g in m.module().generators() {
                    let name = match g {
                        Generator::E(i) => format!("e{i}.mtx"),
                        Generator::F(i) => format!("f{i}.mtx"),
                        Generator::H(i) => format!("h{i}.mtx"),
                    };
                    let cols = m.module().action(g)?;
                    fs::write(dir.join(name), to_matrix_market_string(&cols_to_matrix(&cols, m.dim())?))?;
                }
            }
            let rows = m
                .basis()
                .enumerate()
                .map(|(i, t)| {
                    let rows: Vec<String> = t
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                        .collect();
                    vec![i.to_string(), rows.join(" / ")]
                })
                .collect();
            let v = json!({"lambda": lambda, "n": n, "dim": m.dim(), "basis_version": BASIS_VERSION, "basis": basis});
            Ok(Outcome::ok(v).with_table(vec!["index".into(), "tableau".into()], rows))
        }
        Command::Cache { action } => {
            let dir = cache_dir(&ctx.global).ok_or_else(|| Error::Parameter("no cache directory available".into()))?;
            let cache = PieriCache::new(&dir);
            match action {
                CacheAction::Path => Ok(Outcome::scalar(dir.display().to_string())),
                CacheAction::List => ok(to_value(&cache.list()?)?),
                CacheAction::Clear => ok(json!({"removed": cache.clear()?})),
            }
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidPartition(_)
        | Error::InvalidWeight(_)
        | Error::NonDominant(_)
        | Error::IndexOutOfRange { .. }
        | Error::NotPrime(_)
        | Error::Parameter(_)
        | Error::Hypothesis(_)
        | Error::Degenerate(_)
        | Error::Parse(_)
        | Error::Json(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = if cli.global.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let format = cli.global.format;
    match run(cli).and_then(|o| emit(&o, format).map(|()| o)) {
        Ok(o) => ExitCode::from(if o.success { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
