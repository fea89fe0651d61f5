use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use angmom::exterior::{minor_certificate, verify_certificate, MinorCertificate};
use angmom::groebner::{buchberger, IdealBasis};
use angmom::hilbert::hilbert_series_quotient;
use angmom::model::{
    build_ideals, minor_generators, so_determinant_generators, subsets, EliminationOrder, GeneratorKind, GeneratorSet,
    GramRing, Group, PhaseRing,
};
use angmom::{MonomialOrder, Polynomial, Ring};
use angmom_pipeline::workflow::{basis_text, parse_basis_text, SeriesReport};
use angmom_pipeline::{
    benchmark_orders, run_case, verify_suite, Cache, CacheKey, Caps, CaseRun, CaseSpec, Mode, Mutation, PipelineError,
    Result, SuiteOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const VERIFY_FAILED: u8 = 1;
const CAPPED: u8 = 2;
const INPUT_ERROR: u8 = 3;

/// Symplectic quotients of particles at zero angular momentum: generators,
/// Gröbner bases, relation ideals and Hilbert series.
#[derive(Debug, Parser)]
#[command(name = "angmom", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the generators of one ideal of a case.
    Generate {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value_t = Kind::Moment)]
        kind: Kind,
        /// Minor size for `--kind minors`; defaults to k + 1.
        #[arg(long)]
        size: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduced Gröbner basis of a generator file.
    Groebner {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FileOrder::Grevlex)]
        order: FileOrder,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the relation ideal of a case and compare it with the quadratic ideal.
    Eliminate {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Skip elimination and only compute the quadratic ideal.
        #[arg(long)]
        quadratic_only: bool,
    },
    /// Hilbert series and Gorenstein symmetry of the quotient by a generator file.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FileOrder::Grevlex)]
        order: FileOrder,
        /// Number of Laurent coefficients at t = 1.
        #[arg(long, default_value_t = 4)]
        laurent: usize,
    },
    /// Run the identity suite over a grid of cases.
    Verify {
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificates sampled when there are too many to check all.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Corrupt one quadratic relation to check that failures are reported.
        #[arg(long)]
        mutate: bool,
    },
    /// Write minors of the Gram matrix as combinations of the quadratic relations.
    Certify {
        #[arg(long)]
        k: usize,
        /// Comma separated rows; with `--cols`, certifies a single minor.
        #[arg(long, value_delimiter = ',', requires = "cols")]
        rows: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', requires = "rows")]
        cols: Option<Vec<usize>>,
        /// Certify this many randomly chosen minors instead of all of them.
        #[arg(long, conflicts_with = "rows")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the elimination under several orders.
    Bench {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [OrderArg::Lex, OrderArg::Paper])]
        orders: Vec<OrderArg>,
        #[arg(long)]
        no_cap: bool,
    },
    /// Show a cached case report.
    Report {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        cache_dir: PathBuf,
        #[arg(long)]
        quadratic_only: bool,
    },
}

#[derive(Debug, Args)]
struct CaseArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = GroupArg::O)]
    group: GroupArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Paper)]
    order: OrderArg,
    /// Accept SO cases with n other than 2.
    #[arg(long)]
    any_so: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Lift the default limits on pairs, basis size and time.
    #[arg(long)]
    no_cap: bool,
    /// Recompute even if the cache holds the case.
    #[arg(long)]
    refresh: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    #[value(name = "O", alias = "o")]
    O,
    #[value(name = "SO", alias = "so")]
    So,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
    Block,
    Paper,
}

impl From<OrderArg> for EliminationOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => EliminationOrder::Lex,
            OrderArg::Grevlex => EliminationOrder::Grevlex,
            OrderArg::Block => EliminationOrder::Block,
            OrderArg::Paper => EliminationOrder::Interleaved,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FileOrder {
    Lex,
    Grlex,
    Grevlex,
}

impl From<FileOrder> for MonomialOrder {
    fn from(o: FileOrder) -> Self {
        match o {
            FileOrder::Lex => MonomialOrder::Lex,
            FileOrder::Grlex => MonomialOrder::GradedLex,
            FileOrder::Grevlex => MonomialOrder::GradedRevLex,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Moment,
    Quadratic,
    Minors,
    Determinants,
}

impl CaseArgs {
    fn group(&self) -> Group {
        match self.group {
            GroupArg::O => Group::O,
            GroupArg::So => Group::SO,
        }
    }

    fn spec(&self) -> Result<CaseSpec> {
        if self.group() == Group::SO && self.n != 2 && !self.any_so {
            return Err(PipelineError::Input(format!(
                "SO cases with n = {} need --any-so",
                self.n
            )));
        }
        Ok(CaseSpec::new(self.k, self.n, self.group())?.with_order(self.order.into()))
    }
}

#[derive(Serialize)]
struct BasisJson<'a> {
    ring: String,
    order: Option<String>,
    polynomials: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

fn basis_json(ring: &Ring, order: Option<&MonomialOrder>, polys: &[Polynomial], labels: Option<&[String]>) -> String {
    let j = BasisJson {
        ring: ring.header(),
        order: order.map(MonomialOrder::describe),
        polynomials: polys.iter().map(Polynomial::format).collect(),
        labels,
    };
    serde_json::to_string_pretty(&j).expect("plain data serializes")
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| PipelineError::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| PipelineError::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Reads either a labelled generator file or a plain basis file.
fn read_generators(path: &Path) -> Result<(Ring, Vec<Polynomial>)> {
    let text = read(path)?;
    if text.starts_with("# ring ") {
        parse_basis_text(&text)
    } else {
        let set = GeneratorSet::from_text(&text)?;
        Ok((set.ring, set.polynomials))
    }
}

fn generate(case: &CaseArgs, kind: Kind, size: Option<usize>) -> Result<GeneratorSet> {
    let group = case.group();
    let (moment, quadratic) = build_ideals(case.k, case.n, group)?;
    Ok(match kind {
        Kind::Moment => moment,
        Kind::Quadratic => quadratic,
        Kind::Minors => {
            let gr = GramRing::new(case.k)?;
            let r = size.unwrap_or(case.k + 1);
            let minors = minor_generators(&gr, r)?;
            GeneratorSet {
                kind: GeneratorKind::Minors(r),
                k: case.k,
                n: case.n,
                group,
                ring: gr.ring().clone(),
                labels: minors.iter().map(|m| m.label()).collect(),
                polynomials: minors.into_iter().map(|m| m.polynomial).collect(),
            }
        }
        Kind::Determinants => {
            let pr = PhaseRing::new(case.k, case.n)?;
            let (labels, polynomials) = so_determinant_generators(&pr)?.into_iter().unzip();
            GeneratorSet {
                kind: GeneratorKind::Determinants,
                k: case.k,
                n: case.n,
                group,
                ring: pr.ring().clone(),
                labels,
                polynomials,
            }
        }
    })
}

fn eliminate(json: bool, case: &CaseArgs, run: &RunArgs, quadratic_only: bool) -> Result<u8> {
    let mut spec = case.spec()?;
    if run.no_cap {
        spec = spec.with_caps(Caps::none());
    }
    if quadratic_only {
        spec = spec.with_mode(Mode::QuadraticOnly);
    }
    let cache = run.cache_dir.as_ref().map(Cache::new).transpose()?;
    let key = CacheKey::for_spec(&spec)?;
    let cached = match (&cache, run.refresh) {
        (Some(c), false) => c
            .load(&key)?
            .filter(|r| r.report.is_complete() || r.report.caps.covers(&spec.caps)),
        _ => None,
    };
    let result: CaseRun = match cached {
        Some(r) => {
            info!("using cached result for {spec}");
            r
        }
        None => {
            info!("running {spec}");
            let r = run_case(&spec)?;
            if let Some(c) = &cache {
                let path = c.store(&r)?;
                info!("stored {}", path.display());
            }
            r
        }
    };
    print_report(json, &result)?;
    Ok(result.report.exit_code() as u8)
}

fn print_report(json: bool, run: &CaseRun) -> Result<()> {
    if json {
        println!("{}", run.report.to_json()?);
    } else {
        print!("{}", run.report.render_text());
    }
    Ok(())
}

#[derive(Serialize)]
struct CertificateJson {
    certificate: String,
    verified: bool,
}

fn certify(
    json: bool,
    k: usize,
    single: Option<(Vec<usize>, Vec<usize>)>,
    sample: Option<usize>,
    seed: u64,
) -> Result<u8> {
    let gr = GramRing::new(k)?;
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = match single {
        Some(p) => vec![p],
        None => {
            let sets = subsets(gr.dim(), k + 1);
            let mut all: Vec<_> = sets
                .iter()
                .flat_map(|r| sets.iter().map(move |c| (r.clone(), c.clone())))
                .collect();
            if let Some(n) = sample {
                all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                all.truncate(n);
            }
            all
        }
    };
    let mut out = Vec::with_capacity(pairs.len());
    for (rows, cols) in &pairs {
        let cert: MinorCertificate = minor_certificate(&gr, rows, cols)?;
        let verified = verify_certificate(&cert, &gr)?;
        out.push(CertificateJson {
            certificate: cert.to_text(),
            verified,
        });
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for c in &out {
            let mark = if c.verified { "" } else { "  # FAILED" };
            println!("{}{mark}", c.certificate);
        }
    }
    Ok(if out.iter().all(|c| c.verified) {
        0
    } else {
        VERIFY_FAILED
    })
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Generate {
            case,
            kind,
            size,
            output,
        } => {
            let set = generate(&case, kind, size)?;
            let text = if json {
                basis_json(&set.ring, None, &set.polynomials, Some(&set.labels)) + "\n"
            } else {
                set.to_text()
            };
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        Command::Groebner { file, order, output } => {
            let (ring, gens) = read_generators(&file)?;
            let order = MonomialOrder::from(order);
            let gb = buchberger(&ring, &gens, &order)?;
            let text = if json {
                basis_json(&ring, Some(&order), &gb, None) + "\n"
            } else {
                basis_text(&ring, &gb)
            };
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        Command::Eliminate {
            case,
            run,
            quadratic_only,
        } => eliminate(json, &case, &run, quadratic_only),
        Command::Hilbert { file, order, laurent } => {
            let (ring, gens) = read_generators(&file)?;
            let ideal = IdealBasis::new(&ring, gens)?;
            let series = hilbert_series_quotient(&ideal, &order.into())?;
            let mut report = SeriesReport::from_series(&series)?;
            report.laurent.truncate(laurent);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("series     {}", report.rendered);
                println!("dimension  {}", report.dimension);
                println!("a          {}", report.a_invariant);
                println!(
                    "gorenstein {} (graded: {})",
                    report.gorenstein, report.graded_gorenstein
                );
                println!("laurent    [{}]", report.laurent.join(", "));
            }
            Ok(0)
        }
        Command::Verify {
            k_max,
            n_max,
            seed,
            samples,
            mutate,
        } => {
            if k_max == 0 || n_max == 0 {
                return Err(PipelineError::Input("grid bounds must be positive".into()));
            }
            let options = SuiteOptions {
                seed,
                sampled_certificates: samples,
                mutation: mutate.then_some(Mutation::CorruptQuadratic),
                ..SuiteOptions::default()
            };
            let summary = verify_suite(1..=k_max, 1..=n_max, &options)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            } else {
                print!("{}", summary.render_text());
            }
            Ok(if summary.passed() { 0 } else { VERIFY_FAILED })
        }
        Command::Certify {
            k,
            rows,
            cols,
            sample,
            seed,
        } => certify(json, k, rows.zip(cols), sample, seed),
        Command::Bench { case, orders, no_cap } => {
            let mut spec = case.spec()?;
            if no_cap {
                spec = spec.with_caps(Caps::none());
            }
            let orders: Vec<EliminationOrder> = orders.into_iter().map(Into::into).collect();
            let report = benchmark_orders(&spec, &orders)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.render_text());
            }
            Ok(match report.identical {
                Some(false) => VERIFY_FAILED,
                _ if report.rows.iter().any(|r| !r.complete) => CAPPED,
                _ => 0,
            })
        }
        Command::Report {
            case,
            cache_dir,
            quadratic_only,
        } => {
            let mut spec = case.spec()?;
            if quadratic_only {
                spec = spec.with_mode(Mode::QuadraticOnly);
            }
            let key = CacheKey::for_spec(&spec)?;
            let cache = Cache::new(&cache_dir)?;
            let run = cache.load(&key)?.ok_or_else(|| {
                PipelineError::Input(format!("no cached result for {spec} in {}", cache_dir.display()))
            })?;
            print_report(json, &run)?;
            Ok(run.report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(INPUT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
