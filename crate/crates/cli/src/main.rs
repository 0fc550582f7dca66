use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opcalc_core::algebra::ValidationReport;
use opcalc_core::calculus::SuiteReport;
use opcalc_core::comp_module::{CompModule, Complex, Operators};
use opcalc_core::exec::Strategy;
use opcalc_core::hochschild::Caps;
use opcalc_core::homology::{self, HomologyReport, MatrixCache};
use opcalc_core::mutation::Mutation;
use opcalc_core::operad::Operad;
use opcalc_core::poisson;
use opcalc_core::report::AxiomReport;
use opcalc_core::verify::{self, CheckReport, Suite, VerifyConfig};

mod input;

use input::{Instance, Sources};

/// Process failure: exit code 2 for input errors, 1 for mathematical ones.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn math(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<opcalc_core::Error> for Failure {
    fn from(e: opcalc_core::Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "opcalc", version, about = "Exact noncommutative calculus on Hochschild (co)chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra, coefficient pair and optional Poisson structure.
    Validate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        pi: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run identity suites on the Hochschild instance.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Homology tables and single operator evaluations.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Commands for a noncommutative Poisson structure given by --pi.
    Poisson {
        #[command(subcommand)]
        what: PoissonCommand,
    },
}

#[derive(Subcommand)]
enum Compute {
    /// Hochschild homology on normalized chains.
    Hh(TableArgs),
    /// Hochschild cohomology on normalized cochains.
    Hcoh(TableArgs),
    /// Connes cyclic homology.
    Hc(TableArgs),
    /// Evaluate one operator: cup|cap|lie|bracket|delta|b|B|t|S.
    Op {
        name: String,
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        chain: Option<PathBuf>,
        /// Work on normalized (co)chains.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum PoissonCommand {
    Validate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        pi: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Poisson homology (Brylinski boundary).
    Hh {
        #[arg(long)]
        pi: Option<PathBuf>,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Poisson cohomology (Koszul–Lichnerowicz coboundary).
    Hcoh {
        #[arg(long)]
        pi: Option<PathBuf>,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Identity suites with π as the operad multiplication, plus b^π = −𝓛^π_π.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        pi: Option<PathBuf>,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Algebra JSON file. Defaults to the dual numbers over ℚ.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Coefficient pair (V, γ, η) JSON file.
    #[arg(long)]
    coefficients: Option<PathBuf>,
    /// Manifest naming algebra, coefficients, π and caps.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// "Q" or "Fp:<p>"; overrides the field of the algebra file.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long = "max-degree", visible_alias = "max", default_value_t = 4)]
    max: usize,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long = "max-degree", visible_alias = "max", default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 2)]
    max_arity: usize,
    /// Largest arity in the exhaustive operad axiom sweep.
    #[arg(long, default_value_t = 3)]
    operad_cap: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, hide = true)]
    mutate: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl InstanceArgs {
    fn load(&self, pi: Option<&PathBuf>) -> Result<Instance, Failure> {
        input::load(&Sources {
            algebra: self.algebra.as_deref(),
            coefficients: self.coefficients.as_deref(),
            manifest: self.manifest.as_deref(),
            pi: pi.map(|p| p.as_path()),
            field: self.field.as_deref(),
        })
    }
}

impl SweepArgs {
    fn config(&self) -> Result<(Suite, VerifyConfig), Failure> {
        if self.max_degree == 0 || self.max_arity == 0 || self.operad_cap == 0 {
            return Err(Failure::input("caps must be at least 1".into()));
        }
        let mutation = self.mutate.as_deref().map(str::parse::<Mutation>).transpose()?;
        let cfg = VerifyConfig {
            max_degree: self.max_degree,
            max_arity: self.max_arity,
            operad_cap: self.operad_cap,
            trials: self.trials,
            seed: self.seed,
            mutation,
            strategy: Strategy::current(),
            ..VerifyConfig::default()
        };
        Ok((self.suite.parse()?, cfg))
    }
}

fn emit(output: &OutputArgs, json: impl Serialize, csv: Option<String>) -> Result<(), Failure> {
    let text = match (output.format, csv) {
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&json).expect("reports serialize");
            s.push('\n');
            s
        }
        (Format::Csv, Some(c)) => c,
        (Format::Csv, None) => return Err(Failure::input("csv output is only available for dimension tables".into())),
    };
    match &output.out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_table(output: &OutputArgs, report: &HomologyReport) -> Result<(), Failure> {
    emit(output, report, Some(report.to_csv()))
}

fn check_outcome(report: &CheckReport) -> Result<(), Failure> {
    if report.passed() {
        return Ok(());
    }
    let axiom = report.axioms.iter().find_map(|a| {
        a.first_failure().map(|c| format!("{}: {} fails{}", a.subject, c.axiom, c.violation.as_ref().map(|v| format!(" at {:?}", v.indices)).unwrap_or_default()))
    });
    let suite = || {
        report.suites.iter().find_map(|s| match s.first_failure() {
            Some(i) => Some(format!("{}: {} fails{}", s.suite, i.identity, i.witness.as_ref().map(|w| format!(" at {:?}", w.inputs)).unwrap_or_default())),
            None if s.status == "precondition-failed" => Some(format!("{}: precondition failed", s.suite)),
            None => None,
        })
    };
    Err(Failure::math(axiom.or_else(suite).unwrap_or_else(|| "check failed".into())))
}

#[derive(Serialize)]
struct ValidateReport {
    status: &'static str,
    algebra: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poisson: Option<AxiomReport>,
}

fn validate(inst: &Instance, output: &OutputArgs) -> Result<(), Failure> {
    let algebra = inst.algebra.validate();
    let coefficients = inst.pair.as_ref().map(|p| p.validate(&inst.algebra));
    let mut failures: Vec<String> = Vec::new();
    if let Some(c) = algebra.first_failure() {
        failures.push(format!("{} fails {} at {:?}: {}", algebra.subject, c.check, c.witness.clone().unwrap_or_default(), c.detail.clone().unwrap_or_default()));
    }
    if let Some(c) = coefficients.as_ref().and_then(|r| r.first_failure()) {
        failures.push(format!("coefficient pair fails {}: {}", c.check, c.detail.clone().unwrap_or_default()));
    }
    let poisson = match (&inst.pi, failures.is_empty()) {
        (Some(_), true) => {
            let m = inst.build(Caps { arity: 3, degree: 3 })?;
            let r = poisson::validate_poisson(m.hochschild_operad(), &inst.pi()?, Strategy::current())?;
            if let Some(c) = r.first_failure() {
                failures.push(format!("π fails {}{}", c.axiom, c.violation.as_ref().map(|v| format!(" at {:?}", v.indices)).unwrap_or_default()));
            }
            Some(r)
        }
        _ => None,
    };
    let status = if failures.is_empty() { "pass" } else { "fail" };
    emit(output, ValidateReport { status, algebra, coefficients, poisson }, None)?;
    match failures.is_empty() {
        true => Ok(()),
        false => Err(Failure::math(failures.join("; "))),
    }
}

fn table_caps(max: usize) -> Caps {
    Caps { arity: (max + 2).max(6), degree: (max + 2).max(6) }
}

fn cache(args: &TableArgs) -> Option<MatrixCache> {
    args.cache_dir.as_ref().map(MatrixCache::new)
}

fn compute(what: Compute) -> Result<(), Failure> {
    let strategy = Strategy::current();
    match what {
        Compute::Hh(args) => {
            let m = args.instance.load(None)?.build(table_caps(args.max))?;
            let h = homology::hochschild_homology(&m, args.max, strategy, cache(&args).as_ref())?;
            emit_table(&args.output, &h.report)
        }
        Compute::Hcoh(args) => {
            let m = args.instance.load(None)?.build(table_caps(args.max))?;
            let h = homology::hochschild_cohomology(m.operad(), args.max, strategy, cache(&args).as_ref())?;
            emit_table(&args.output, &h.report)
        }
        Compute::Hc(args) => {
            let m = args.instance.load(None)?.build(table_caps(args.max))?;
            let h = homology::connes_cyclic_homology(&m, args.max, strategy)?;
            emit_table(&args.output, &h.report)
        }
        Compute::Op { name, phi, psi, chain, normalized, instance, output } => {
            let inst = instance.load(None)?;
            let phi = phi.as_ref().map(|p| inst.cochain(p)).transpose()?;
            let psi = psi.as_ref().map(|p| inst.cochain(p)).transpose()?;
            let chain = chain.as_ref().map(|p| inst.chain(p)).transpose()?;
            let arity = phi.as_ref().map_or(0, |c| c.arity()) + psi.as_ref().map_or(0, |c| c.arity());
            let degree = chain.as_ref().map_or(0, |c| c.degree());
            let m = inst.build(Caps { arity: (arity + 2).max(6), degree: (degree + 3).max(6) })?;
            let complex = if normalized { Complex::Normalized } else { Complex::Full };
            let ops = Operators::new(&m, complex);
            let need = |what: &str, given: bool| -> Result<(), Failure> {
                match given {
                    true => Ok(()),
                    false => Err(Failure::input(format!("operator {name} needs --{what}"))),
                }
            };
            let op = m.operad();
            enum Out {
                Chain(opcalc_core::element::Chain),
                Cochain(opcalc_core::element::Cochain),
            }
            let out = match name.as_str() {
                "cup" | "bracket" => {
                    need("phi", phi.is_some())?;
                    need("psi", psi.is_some())?;
                    let (f, g) = (phi.as_ref().unwrap(), psi.as_ref().unwrap());
                    Out::Cochain(if name == "cup" { op.cup(f, g)? } else { op.bracket(f, g)? })
                }
                "delta" => {
                    need("phi", phi.is_some())?;
                    Out::Cochain(op.delta(phi.as_ref().unwrap())?)
                }
                "cap" | "lie" | "S" => {
                    need("phi", phi.is_some())?;
                    need("chain", chain.is_some())?;
                    let (f, x) = (phi.as_ref().unwrap(), chain.as_ref().unwrap());
                    if name == "cap" && f.arity() > x.degree() {
                        return Err(Failure::input(format!("{name} of a {}-cochain on a chain of degree {} leaves the complex", f.arity(), x.degree())));
                    }
                    Out::Chain(match name.as_str() {
                        "cap" => ops.iota(f, x)?,
                        "lie" => ops.lie(f, x)?,
                        _ => ops.correction(f, x)?,
                    })
                }
                "b" | "B" | "t" => {
                    need("chain", chain.is_some())?;
                    let x = chain.as_ref().unwrap();
                    Out::Chain(match name.as_str() {
                        "b" => ops.b(x)?,
                        "B" => ops.connes_b(x)?,
                        _ => ops.t(x),
                    })
                }
                _ => return Err(Failure::input(format!("unknown operator {name:?}; expected cup|cap|lie|bracket|delta|b|B|t|S"))),
            };
            match out {
                Out::Chain(c) => emit(&output, c.to_file(), None),
                Out::Cochain(c) => emit(&output, c.to_file(inst.codomain()), None),
            }
        }
    }
}

fn poisson_command(what: PoissonCommand) -> Result<(), Failure> {
    let strategy = Strategy::current();
    match what {
        PoissonCommand::Validate { instance, pi, output } => {
            let inst = instance.load(pi.as_ref())?;
            inst.pi()?;
            validate(&inst, &output)
        }
        PoissonCommand::Hh { pi, table } => {
            let inst = table.instance.load(pi.as_ref())?;
            let m = inst.build(table_caps(table.max))?;
            let h = poisson::poisson_homology(&m, &inst.pi()?, table.max, strategy, cache(&table).as_ref())?;
            emit_table(&table.output, &h.report)
        }
        PoissonCommand::Hcoh { pi, table } => {
            let inst = table.instance.load(pi.as_ref())?;
            let m = inst.build(table_caps(table.max))?;
            let h = poisson::poisson_cohomology(&m, &inst.pi()?, table.max, strategy, cache(&table).as_ref())?;
            emit_table(&table.output, &h.report)
        }
        PoissonCommand::Check { instance, pi, sweep, output } => {
            let inst = instance.load(pi.as_ref())?;
            let (suite, cfg) = sweep.config()?;
            let m = inst.build(cfg.caps())?;
            let mp = poisson::poisson_module(&m, &inst.pi()?, cfg.strategy)?;
            let mut report = verify::run(&mp, suite, &cfg)?;
            if matches!(suite, Suite::All | Suite::Calculus) {
                let mp = mp.with_caps(cfg.caps());
                let ops = Operators::new(&mp, Complex::Full).with_mutation(cfg.mutation);
                let outcome = poisson::brylinski_homotopy_check(&ops, cfg.max_degree, cfg.strategy)?;
                let inputs = format!("basis chains of degree ≤ {}", cfg.max_degree);
                report.push_suite(SuiteReport::new("brylinski", inputs, vec![outcome]));
            }
            emit(&output, &report, None)?;
            check_outcome(&report)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { instance, pi, output } => validate(&instance.load(pi.as_ref())?, &output),
        Command::Check { instance, sweep, output } => {
            let inst = instance.load(None)?;
            let (suite, cfg) = sweep.config()?;
            let m = inst.build(cfg.caps())?;
            let report = verify::run(&m, suite, &cfg)?;
            emit(&output, &report, None)?;
            check_outcome(&report)
        }
        Command::Compute { what } => compute(what),
        Command::Poisson { what } => poisson_command(what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("opcalc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
