use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use sdreg::harness::generators::{gen_fk, gen_random, RandomSpec};
use sdreg::harness::text::{parse_system, SystemFile};
use sdreg::harness::{render_report, render_report_text};
use sdreg::invariants::{verify_bounds_with, AnalysisOptions, DegreeReport, Verdict};
use sdreg::vspace::{interreduce_tops, v_space_closure};
use sdreg::{buchberger_reduced, mutantxl_gb, Error, GroebnerBasis, PolySystem, TermOrder};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sdreg",
    version,
    about = "Solving degree, degree of regularity and related bounds over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Term order; overrides the order given in the input file.
    #[arg(long, global = true)]
    order: Option<TermOrder>,
    /// Largest degree searched for d_reg and the solving degree.
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant and check all bounds.
    Analyze {
        /// System file, or `-` for stdin.
        file: PathBuf,
        /// Write the closure log at the solving degree to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print only the bound certificates.
    VerifyBounds { file: PathBuf },
    /// Emit a system file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compare the B/M loop basis with Buchberger's.
    OracleDiff { file: PathBuf },
    /// Regression table over a family of systems.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// {x^k + y, y^k + x, xy}
    Fk {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 101)]
        p: u64,
    },
    Random(RandomArgs),
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Number of polynomials.
    #[arg(long)]
    k: usize,
    /// Degree bound; one value for all polynomials or a comma-separated list of k values.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    deg: Vec<u32>,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 101)]
    p: u64,
    /// Resample until max deg <= d_reg < inf.
    #[arg(long)]
    require_hypothesis: bool,
    #[arg(long, default_value_t = 100)]
    max_retries: u32,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// d_reg, gbd, sd and lfd of {x^k + y, y^k + x, xy} for a range of k.
    Fk {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 6)]
        to: u32,
        #[arg(long, default_value_t = 101)]
        p: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_system(path: &Path, order: Option<TermOrder>) -> Result<SystemFile, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_failure(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))?
    };
    let mut file = parse_system(&text)?;
    if let Some(ord) = order {
        file.system = file.system.with_order(ord);
    }
    Ok(file)
}

fn options(cap: Option<u32>) -> AnalysisOptions {
    AnalysisOptions {
        dreg_cap: cap,
        degree_cap: cap,
        ..AnalysisOptions::default()
    }
}

fn report_code(report: &DegreeReport) -> u8 {
    if report.any_failed() {
        EXIT_FAIL
    } else if report.any_capped() {
        EXIT_CAP
    } else {
        0
    }
}

fn analyze(cli: &Cli, path: &Path, trace: Option<&Path>) -> Result<u8, Failure> {
    let file = read_system(path, cli.order)?;
    let ord = file.order();
    let report = verify_bounds_with(&file.system, ord, options(cli.cap));
    if let Some(trace) = trace {
        match report.sd {
            Some(sd) => {
                let v = v_space_closure(&file.system, sd)?;
                let mut out = v.trace_lines(&file.vars).join("\n");
                out.push('\n');
                fs::write(trace, out).map_err(|e| io_failure(trace, e))?;
            }
            None => eprintln!("no trace written: the solving degree was not computed"),
        }
    }
    if cli.json {
        println!("{}", render_report(&report));
    } else {
        print!("{}", render_report_text(&report));
    }
    Ok(report_code(&report))
}

fn verify(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let file = read_system(path, cli.order)?;
    let report = verify_bounds_with(&file.system, file.order(), options(cli.cap));
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.certificates).expect("certificates serialize")
        );
    } else {
        for c in &report.certificates {
            let status = format!("{:?}", c.verdict).to_uppercase();
            let lhs = c.lhs.map_or("-".into(), |v| v.to_string());
            let rhs = match (c.verdict, c.rhs) {
                (_, Some(v)) => v.to_string(),
                (Verdict::Skipped, None) => "-".into(),
                (_, None) => "+inf".into(),
            };
            match &c.reason {
                Some(r) => println!("{status}\t{}\t{lhs}\t{rhs}\t{r}", c.id),
                None => println!("{status}\t{}\t{lhs}\t{rhs}", c.id),
            }
        }
    }
    Ok(report_code(&report))
}

fn generate(cli: &Cli, cmd: &GenCommand) -> Result<u8, Failure> {
    let system = match cmd {
        GenCommand::Fk { k, p } => gen_fk(*k, *p)?,
        GenCommand::Random(a) => {
            let degrees = match a.deg.len() {
                1 => vec![a.deg[0]; a.k],
                len if len == a.k => a.deg.clone(),
                len => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: format!("--deg has {len} values but --k is {}", a.k),
                    })
                }
            };
            gen_random(&RandomSpec {
                seed: a.seed,
                nvars: a.n,
                degrees,
                density: a.density,
                p: a.p,
                order: cli.order.unwrap_or_default(),
                require_hypothesis: a.require_hypothesis,
                max_retries: a.max_retries,
            })?
        }
    };
    let system = match cli.order {
        Some(ord) => system.with_order(ord),
        None => system,
    };
    print!("{}", SystemFile::with_default_names(system).render());
    Ok(0)
}

fn render_basis(g: &GroebnerBasis, names: &[String]) -> Vec<String> {
    g.polys().iter().map(|f| f.render(names)).collect()
}

fn oracle_diff(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let file = read_system(path, cli.order)?;
    let ord = file.order();
    let mut note = None;
    let (mutant, stats, system) = match mutantxl_gb(&file.system, ord) {
        Ok((g, s)) => (g, s, file.system.clone()),
        Err(Error::Precondition(msg)) => {
            let reduced: PolySystem = interreduce_tops(&file.system, ord)?;
            let (g, s) = mutantxl_gb(&reduced, ord)?;
            note = Some(format!("{msg}; inputs were interreduced"));
            (g, s, reduced)
        }
        Err(e) => return Err(e.into()),
    };
    let reference = buchberger_reduced(&system, ord)?;
    let equal = mutant.polys() == reference.polys();
    let within_bound = stats.adoptions <= stats.step_bound() && stats.steps <= stats.step_bound();
    if cli.json {
        let value = serde_json::json!({
            "equal": equal,
            "within_step_bound": within_bound,
            "mutant": render_basis(&mutant, &file.vars),
            "buchberger": render_basis(&reference, &file.vars),
            "stats": stats,
            "note": note,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("equal\t{equal}");
        println!("bound\t{}\tcolumns\t{}", stats.bound, stats.columns);
        println!(
            "steps\t{}\tadoptions\t{}\tlimit\t{}",
            stats.steps,
            stats.adoptions,
            stats.step_bound()
        );
        for (m, b) in render_basis(&mutant, &file.vars)
            .iter()
            .zip(render_basis(&reference, &file.vars).iter())
        {
            println!("{m}\t{b}");
        }
        if mutant.len() != reference.len() {
            println!("basis sizes differ: {} vs {}", mutant.len(), reference.len());
        }
        if let Some(n) = note {
            println!("note: {n}");
        }
    }
    Ok(if equal && within_bound { 0 } else { EXIT_FAIL })
}

fn sweep(cli: &Cli, cmd: &SweepCommand) -> Result<u8, Failure> {
    let SweepCommand::Fk { from, to, p } = *cmd;
    let ord = cli.order.unwrap_or_default();
    let reports: Vec<(u32, DegreeReport)> = (from..=to)
        .into_par_iter()
        .map(|k| gen_fk(k, p).map(|s| (k, verify_bounds_with(&s, ord, options(cli.cap)))))
        .collect::<Result<_, Error>>()?;
    if cli.json {
        let rows: Vec<_> = reports
            .iter()
            .map(|(k, r)| serde_json::json!({ "k": k, "report": r }))
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        println!("k\td_reg\tgbd\tsd\tlfd\tcertificates");
        let show = |v: Option<u32>| v.map_or("-".to_string(), |d| d.to_string());
        for (k, r) in &reports {
            let verdict = match report_code(r) {
                0 => "pass",
                EXIT_FAIL => "FAIL",
                _ => "capped",
            };
            println!(
                "{k}\t{}\t{}\t{}\t{}\t{verdict}",
                r.d_reg,
                show(r.gbd),
                show(r.sd),
                show(r.lfd)
            );
        }
    }
    Ok(reports
        .iter()
        .map(|(_, r)| report_code(r))
        .max_by_key(|&c| match c {
            EXIT_FAIL => 2,
            EXIT_CAP => 1,
            _ => 0,
        })
        .unwrap_or(0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { file, trace } => analyze(&cli, file, trace.as_deref()),
        Command::VerifyBounds { file } => verify(&cli, file),
        Command::Gen(cmd) => generate(&cli, cmd),
        Command::OracleDiff { file } => oracle_diff(&cli, file),
        Command::Sweep(cmd) => sweep(&cli, cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
