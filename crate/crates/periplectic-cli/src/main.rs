use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use periplectic::center::{
    check_a_forms, check_antipode, check_centrality, check_centrality_control, check_e_grading, check_gr_image,
    check_independence, odd_coefficients,
};
use periplectic::pbw::{
    check_ambiguities, check_ambiguities_in, check_confluence, check_counts, check_rule_degrees, check_z_is_one,
    default_perturbation, pbw_count, ReductionSystem, Strategy,
};
use periplectic::report::{CheckReport, ReportSet};
use periplectic::reps::{check_rtt_rep, check_subquotient, check_twist_pair, check_twist_single, standard_points};
use periplectic::rmatrix::{
    check_cuv, check_f_coefficients, check_fusion_actions, check_h_vector_exchange, check_hfusion, check_q_sandwich,
    check_relation_suite, check_unitarity, check_ybe, check_ybe_mutated,
};
use periplectic::scalars::{frac, int, parse_scalar, Scalar};
use periplectic::yangian::AlgebraElement;
use periplectic::Error;

const USAGE: u8 = 2;
const OVERFLOW: u8 = 3;

#[derive(Parser)]
#[command(name = "periplectic", version, about = "Exact checks for the periplectic Yangian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one group of checks, or all of them
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        opts: Opts,
    },
    /// Normal words and the reduction system
    Pbw {
        #[command(subcommand)]
        command: PbwCommand,
    },
    /// Validate and summarize saved JSON reports
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum PbwCommand {
    /// Number of normal words of degree ≤ d and length ≤ m
    Count {
        #[command(flatten)]
        opts: Opts,
    },
    /// Seeded random words reduced under two strategies
    Confluence {
        #[command(flatten)]
        opts: Opts,
    },
    /// Normal form of an element such as "2 T[1,1,2] - T[1,1,1] T[1,1,1]"
    NormalForm {
        element: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Ybe,
    Relations,
    Hfusion,
    Apparatus,
    RttRep,
    Quotient,
    Center,
    Antipode,
    Subquotient,
    Ambiguities,
    Controls,
    All,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Opts {
    /// Half-dimension of C^{N|N}
    #[arg(long = "N", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..=4))]
    n: u16,
    /// Series truncation order L
    #[arg(long)]
    order: Option<usize>,
    /// Generator-order budget
    #[arg(long)]
    budget: Option<u32>,
    /// Evaluation point, a rational such as -1/2 (repeatable)
    #[arg(long = "t", allow_hyphen_values = true, value_parser = scalar_arg)]
    t: Vec<Scalar>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Degree budget for counts
    #[arg(long)]
    degree: Option<u32>,
    /// Length budget for counts and random words
    #[arg(long)]
    length: Option<usize>,
    #[command(flatten)]
    output: Output,
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

impl Opts {
    fn n(&self) -> usize {
        self.n as usize
    }

    fn points_or(&self, default: Vec<Scalar>) -> Vec<Scalar> {
        if self.t.is_empty() {
            default
        } else {
            self.t.clone()
        }
    }
}

fn run_check(check: Check, o: &Opts) -> Vec<CheckReport> {
    let n = o.n();
    match check {
        Check::Ybe => vec![check_ybe(n), check_unitarity(n)],
        Check::Relations => vec![check_relation_suite(n)],
        Check::Hfusion => (2..=3).flat_map(|k| check_hfusion(n, k)).collect(),
        Check::Apparatus => vec![
            check_q_sandwich(n),
            check_cuv(n),
            check_f_coefficients(n),
            check_h_vector_exchange(n),
            check_fusion_actions(n),
        ],
        Check::RttRep => {
            let mut out = check_rtt_rep(n, &o.points_or(standard_points()), 3, o.order.unwrap_or(5));
            let six = [int(0), int(1), int(-1), int(2), int(-2), frac(1, 2)];
            out.push(check_twist_single(n, &six, 4));
            out.push(check_twist_pair(n, &int(2), 4));
            out
        }
        Check::Quotient => vec![check_z_is_one(n, o.order.unwrap_or(4))],
        Check::Center => {
            let budget = o.budget.unwrap_or(3) as usize;
            let order = o.order.unwrap_or(4).max(1);
            let rs: Vec<usize> = (1..=order / 2).collect();
            vec![
                check_centrality(n, budget, budget as u32, None),
                check_gr_image(n, &rs),
                check_independence(n),
                check_a_forms(n, order),
                check_e_grading(n, order),
                odd_coefficients(n, order.min(3)),
            ]
        }
        Check::Antipode => vec![check_antipode(n, o.order.unwrap_or(2))],
        Check::Subquotient => {
            let default = if n == 1 {
                vec![int(3), int(0), frac(-1, 2)]
            } else {
                vec![int(1)]
            };
            o.points_or(default)
                .iter()
                .map(|t| check_subquotient(n, t, o.order.unwrap_or(4)))
                .collect()
        }
        Check::Ambiguities => {
            let b = o.budget.unwrap_or(3);
            vec![check_ambiguities(n, b), check_rule_degrees(n, b)]
        }
        Check::Controls => vec![
            check_ybe_mutated(n).expect_failure("control-flipped-q-sign"),
            check_ambiguities_in(
                &ReductionSystem::new(n, 6).with_perturbation(default_perturbation(n)),
                2,
                "pbw-ambiguities-perturbed",
            )
            .expect_failure("control-dropped-d-term"),
            check_centrality_control(n, 3).expect_failure("control-t2-in-place-of-b2"),
        ],
        Check::All => [
            Check::Ybe,
            Check::Relations,
            Check::Hfusion,
            Check::Apparatus,
            Check::RttRep,
            Check::Quotient,
            Check::Center,
            Check::Antipode,
            Check::Subquotient,
            Check::Ambiguities,
            Check::Controls,
        ]
        .into_iter()
        .flat_map(|c| run_check(c, o))
        .chain([check_counts(n, 4, 4), check_confluence(n, 100, 4, 3, o.seed)])
        .collect(),
    }
}

fn emit(set: &ReportSet, out: &Output) -> Result<(), String> {
    if let Some(path) = &out.out {
        std::fs::write(path, set.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if out.json {
        println!("{}", set.to_json());
    } else {
        for r in &set.reports {
            let status = format!("{:?}", r.status).to_uppercase();
            let params = serde_json::to_string(&r.params).unwrap_or_default();
            println!(
                "{status:8} {} {params} ({} identities, {} ms)",
                r.name, r.checked, r.wall_time_ms
            );
            for w in &r.witnesses {
                println!("         {w}");
            }
        }
    }
    Ok(())
}

fn finish(set: ReportSet, out: &Output) -> ExitCode {
    match emit(&set, out) {
        Ok(()) => ExitCode::from(set.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::TruncationOverflow { .. } => OVERFLOW,
        Error::Parse { .. } | Error::IndexOutOfRange { .. } => USAGE,
        _ => 1,
    }
}

fn normal_form(text: &str, o: &Opts) -> Result<(), Error> {
    let x: AlgebraElement = text.parse()?;
    x.check_range(o.n())?;
    let sys = ReductionSystem::new(o.n(), o.budget.unwrap_or_else(|| x.max_order().max(1)));
    let a = sys.normal_form_with(&x, Strategy::Leftmost)?;
    let b = sys.normal_form_with(&x, Strategy::Rightmost)?;
    println!("{a}");
    if a != b {
        eprintln!("note: the rightmost strategy gives {b}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { check, opts } => finish(ReportSet::new(run_check(check, &opts)), &opts.output),
        Command::Pbw { command } => match command {
            PbwCommand::Count { opts } => {
                let (d, m) = (opts.degree.unwrap_or(4), opts.length.unwrap_or(4));
                if opts.output.json || opts.output.out.is_some() {
                    let quiet = Output {
                        out: opts.output.out.clone(),
                        json: opts.output.json,
                    };
                    finish(ReportSet::new(vec![check_counts(opts.n(), d, m)]), &quiet)
                } else {
                    println!("{}", pbw_count(opts.n(), d, m));
                    ExitCode::SUCCESS
                }
            }
            PbwCommand::Confluence { opts } => {
                let r = check_confluence(
                    opts.n(),
                    100,
                    opts.length.unwrap_or(4),
                    opts.budget.unwrap_or(3),
                    opts.seed,
                );
                finish(ReportSet::new(vec![r]), &opts.output)
            }
            PbwCommand::NormalForm { element, opts } => match normal_form(&element, &opts) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(error_code(&e))
                }
            },
        },
        Command::Report { files, output } => {
            let mut reports = Vec::new();
            for f in &files {
                let parsed = std::fs::read_to_string(f)
                    .map_err(|e| e.to_string())
                    .and_then(|s| ReportSet::from_json(&s).map_err(|e| e.to_string()));
                match parsed {
                    Ok(set) => reports.extend(set.reports),
                    Err(e) => {
                        eprintln!("error: {}: {e}", f.display());
                        return ExitCode::from(USAGE);
                    }
                }
            }
            finish(ReportSet::new(reports), &output)
        }
    }
}
