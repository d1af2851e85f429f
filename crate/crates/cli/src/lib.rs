//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the rendered output with an exit code, so the whole
//! surface can be driven from tests without spawning a process.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use takht::approx::{RuleComparison, Winner};
use takht::newton::{self, CSV_HEADER, DEFAULT_MAX_STEPS};
use takht::takht::{render_boards, render_paper_layout};
use takht::verify::Outcome;
use takht::{
    approximate, approximate_auto, check_root, compare_methods, compare_methods_from,
    compare_rules, decimal_expansion, is_possible_square, isqrt, isqrt_zero_shortcut, newton_run,
    scaled_isqrt, to_sexagesimal, IsqrtResult, Natural, PreconditionError, Rational, Rule,
    ScalingSpec,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_REFUTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "takht",
    version,
    about = "Digit-by-digit square roots of naturals, the dust-board way"
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integer root and remainder
    Isqrt {
        n: Natural,
        /// Stop early on trailing zero pairs
        #[arg(long)]
        shortcut: bool,
    },
    /// Board states of the extraction
    Trace {
        n: Natural,
        /// One continuous table as printed in the manuscript tables
        #[arg(long)]
        paper_layout: bool,
        #[arg(long)]
        shortcut: bool,
    },
    /// Fractional approximation of a non-square root
    Approx {
        n: Natural,
        #[arg(long, value_enum, default_value_t = RuleChoice::Auto)]
        rule: RuleChoice,
    },
    /// Both approximation rules side by side
    Compare { n: Natural },
    /// Root of A^(2p)·N divided by A^p
    Scale {
        n: Natural,
        #[arg(long)]
        base: Natural,
        /// Exponent p
        #[arg(long)]
        pairs: u32,
    },
    /// Decimal and base-60 expansion of the root
    Sexagesimal {
        n: Natural,
        /// Number of base-60 places (minutes, seconds, tierces, ...)
        #[arg(long, default_value_t = 3)]
        places: usize,
        /// Decimal places extracted before conversion; defaults to --places
        #[arg(long)]
        decimals: Option<u32>,
    },
    /// Cast out nines on a claim N = root² + remainder
    Verify {
        n: Natural,
        #[arg(long)]
        root: Natural,
        #[arg(long, default_value = "0")]
        remainder: Natural,
    },
    /// Exact Newton iteration u <- (u² + a) / 2u
    Newton(NewtonArgs),
    /// Batch comparisons emitted as CSV (or summarised as text/JSON)
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleChoice {
    Auto,
    Khwarizmi,
    Conventional,
}

#[derive(Args, Debug)]
pub struct NewtonArgs {
    pub a: Natural,
    /// Starting value, `n` or `n/d`; defaults to a
    #[arg(long)]
    pub u0: Option<Rational>,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Stop once |u² − a| is at most this, `n` or `n/d`
    #[arg(long, default_value = "0")]
    pub tolerance: Rational,
    /// Also compare against board extraction with this many decimal places
    #[arg(long)]
    pub compare_places: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Newton,
    Criterion,
    Both,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepKind::Both)]
    pub kind: SweepKind,
    /// First a of the Newton/board comparison
    #[arg(long, default_value_t = 1)]
    pub newton_from: u64,
    #[arg(long, default_value_t = 1023)]
    pub newton_to: u64,
    /// Decimal places on the board side
    #[arg(long, default_value_t = 3)]
    pub places: u32,
    /// Newton steps from u0 = a
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    #[arg(long, default_value_t = 2)]
    pub criterion_from: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub criterion_to: u64,
}

/// What a command produced: exit code plus the two streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Precondition(PreconditionError),
}

impl From<PreconditionError> for Failure {
    fn from(e: PreconditionError) -> Self {
        Failure::Precondition(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> RunOutput {
    match dispatch(cli) {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => RunOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Precondition(e)) => RunOutput {
            code: EXIT_PRECONDITION,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn no_csv(what: &str) -> Failure {
    Failure::Usage(format!("csv output is not available for `{what}`"))
}

fn dispatch(cli: &Cli) -> Result<(u8, String), Failure> {
    let format = cli.format;
    let out = match &cli.command {
        Command::Isqrt { n, shortcut } => {
            let r = extract(n, *shortcut, false);
            match format {
                Format::Text => format!("root={} remainder={}\n", r.root, r.remainder),
                Format::Json => pretty(&isqrt_json(&r)),
                Format::Csv => {
                    format!("n,root,remainder\n{},{},{}\n", r.input, r.root, r.remainder)
                }
            }
        }
        Command::Trace {
            n,
            paper_layout,
            shortcut,
        } => {
            let r = extract(n, *shortcut, true);
            match format {
                Format::Text => {
                    let mut s = if *paper_layout {
                        render_paper_layout(&r)
                    } else {
                        render_boards(&r)
                    };
                    s.push_str(&format!("root={} remainder={}\n", r.root, r.remainder));
                    s
                }
                Format::Json => {
                    let mut v = isqrt_json(&r);
                    v["steps"] = to_value(&r.trace);
                    pretty(&v)
                }
                Format::Csv => {
                    let mut s = String::from("step,residual,work_row,offset,chosen_digit\n");
                    for b in &r.trace {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            b.step, b.residual, b.work_row, b.offset, b.chosen_digit
                        ));
                    }
                    s
                }
            }
        }
        Command::Approx { n, rule } => {
            let approximation = match rule {
                RuleChoice::Auto => approximate_auto(n)?,
                RuleChoice::Khwarizmi => approximate(n, Rule::Khwarizmi)?,
                RuleChoice::Conventional => approximate(n, Rule::Conventional)?,
            };
            let report = compare_rules(n)?;
            let chosen = match approximation.rule {
                Rule::Khwarizmi => &report.khwarizmi,
                Rule::Conventional => &report.conventional,
            };
            match format {
                Format::Text => {
                    let how = if *rule == RuleChoice::Auto {
                        format!(
                            " (selected by the criterion: R={} {} E={})",
                            chosen.approximation.remainder,
                            if chosen.approximation.rule == Rule::Khwarizmi {
                                "<="
                            } else {
                                ">="
                            },
                            if chosen.approximation.rule == Rule::Khwarizmi {
                                format!("{}-1", chosen.approximation.integer_part)
                            } else {
                                chosen.approximation.integer_part.to_string()
                            }
                        )
                    } else {
                        String::new()
                    };
                    format!(
                        "sqrt({n}) ~ {}  [{} rule{how}]\nsquare={} distance={}\nE={} R={}\n",
                        chosen.approximation.value().mixed(),
                        chosen.approximation.rule,
                        chosen.square,
                        chosen.distance,
                        chosen.approximation.integer_part,
                        chosen.approximation.remainder,
                    )
                }
                Format::Json => {
                    let mut v = to_value(chosen);
                    v["predicted_winner"] = to_value(&report.predicted_winner);
                    v["measured_winner"] = to_value(&report.measured_winner);
                    v["agree"] = json!(report.agree);
                    v["root"] = json!(chosen.approximation.integer_part.to_string());
                    v["remainder"] = json!(chosen.approximation.remainder.to_string());
                    pretty(&v)
                }
                Format::Csv => return Err(no_csv("approx")),
            }
        }
        Command::Compare { n } => {
            let report = compare_rules(n)?;
            match format {
                Format::Text => compare_text(&report),
                Format::Json => {
                    let mut v = to_value(&report);
                    v["root"] = json!(report.khwarizmi.approximation.integer_part.to_string());
                    v["remainder"] = json!(report.khwarizmi.approximation.remainder.to_string());
                    v["metric"] = json!("|approx^2 - n|");
                    pretty(&v)
                }
                Format::Csv => {
                    let mut s = String::from("n,rule,value,square,distance,winner\n");
                    for o in [&report.khwarizmi, &report.conventional] {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            n,
                            o.approximation.rule,
                            o.approximation.value(),
                            o.square,
                            o.distance,
                            report.measured_winner
                        ));
                    }
                    s
                }
            }
        }
        Command::Scale { n, base, pairs } => {
            let spec = ScalingSpec::new(base.clone(), *pairs)?;
            let r = scaled_isqrt(n, &spec);
            match format {
                Format::Text => format!(
                    "isqrt({}) = {} remainder {}\n{} / {} = {}\n",
                    r.scaled_input,
                    r.scaled_root,
                    r.scaled_remainder,
                    r.scaled_root,
                    r.root_factor,
                    r.value.mixed()
                ),
                Format::Json => pretty(&to_value(&r)),
                Format::Csv => return Err(no_csv("scale")),
            }
        }
        Command::Sexagesimal {
            n,
            places,
            decimals,
        } => {
            let p = decimals.unwrap_or(*places as u32);
            let fixed = decimal_expansion(n, p)?;
            let sexa = to_sexagesimal(&fixed, *places)?;
            match format {
                Format::Text => {
                    let mut s = format!(
                        "isqrt({n}·10^{}) = {} remainder {}\n",
                        2 * p,
                        fixed.scaled_root,
                        fixed.remainder
                    );
                    s.push_str(&format!("decimal: {fixed}\n"));
                    for link in &sexa.chain {
                        s.push_str(&format!(
                            "{} x 60 = {} -> {} carried, {} left\n",
                            link.residue, link.product, link.place, link.next_residue
                        ));
                    }
                    s.push_str(&format!("{sexa}\n"));
                    s
                }
                Format::Json => {
                    let mut v = to_value(&sexa);
                    v["p"] = json!(p);
                    v["remainder"] = json!(fixed.remainder.to_string());
                    v["decimal"] = json!(fixed.to_string());
                    v["chain"] = json!(sexa
                        .chain
                        .iter()
                        .map(|c| c.product.to_string())
                        .collect::<Vec<_>>());
                    pretty(&v)
                }
                Format::Csv => return Err(no_csv("sexagesimal")),
            }
        }
        Command::Verify { n, root, remainder } => {
            let report = check_root(n, root, remainder);
            let screen = is_possible_square(n);
            let code = match report.outcome() {
                Outcome::Refuted => EXIT_REFUTED,
                Outcome::ConsistentMod9 => EXIT_OK,
            };
            let text = match format {
                Format::Text => {
                    let mut s = format!(
                        "a={} b={} c={}: {} ({}; a pass is necessary, not sufficient)\n",
                        report.residue_n,
                        report.residue_root_sq,
                        report.residue_remainder,
                        report.outcome().traditional(),
                        report.outcome()
                    );
                    if remainder.is_zero() {
                        if screen.possible {
                            s.push_str(&format!(
                                "{n}: not excluded as a square by unit digit or residue\n"
                            ));
                        } else {
                            for why in &screen.reasons {
                                s.push_str(&format!("{n}: cannot be a square, {why}\n"));
                            }
                        }
                    }
                    s
                }
                Format::Json => {
                    let mut v = to_value(&report);
                    v["square_screen"] = to_value(&screen);
                    pretty(&v)
                }
                Format::Csv => format!(
                    "a,b,c,passed\n{},{},{},{}\n",
                    report.residue_n,
                    report.residue_root_sq,
                    report.residue_remainder,
                    report.passed
                ),
            };
            return Ok((code, text));
        }
        Command::Newton(args) => newton_output(args, format)?,
        Command::Sweep(args) => sweep_output(args, format)?,
    };
    Ok((EXIT_OK, out))
}

fn extract(n: &Natural, shortcut: bool, trace: bool) -> IsqrtResult {
    if shortcut {
        isqrt_zero_shortcut(n)
    } else {
        isqrt(n, trace)
    }
}

fn isqrt_json(r: &IsqrtResult) -> Value {
    json!({
        "n": r.input.to_string(),
        "root": r.root.to_string(),
        "remainder": r.remainder.to_string(),
        "zero_shortcut_used": r.zero_shortcut_used,
    })
}

fn compare_text(report: &RuleComparison) -> String {
    let mut s = format!(
        "N={} E={} R={}\n",
        report.n,
        report.khwarizmi.approximation.integer_part,
        report.khwarizmi.approximation.remainder
    );
    for o in [&report.khwarizmi, &report.conventional] {
        s.push_str(&format!(
            "{:<12} {}  square={}  distance={}\n",
            o.approximation.rule.name(),
            o.approximation.value().mixed(),
            o.square.mixed(),
            o.distance
        ));
    }
    s.push_str(&format!(
        "closer square: {}; criterion predicts: {} ({})\n",
        report.measured_winner,
        report.predicted_winner,
        if report.agree { "agree" } else { "DISAGREE" }
    ));
    if report.historical_claim != Winner::Tie && report.historical_claim != report.measured_winner {
        s.push_str("the claim that the conventional rule is always closer fails here\n");
    }
    s
}

fn newton_output(args: &NewtonArgs, format: Format) -> Result<String, Failure> {
    let u0 = args
        .u0
        .clone()
        .unwrap_or_else(|| Rational::from(args.a.clone()));
    let run = newton_run(&args.a, &u0, args.max_steps, &args.tolerance)?;
    let comparison = match args.compare_places {
        Some(p) => Some(compare_methods_from(&args.a, p, run.steps(), &u0)?),
        None => None,
    };
    let decimal = |q: &Rational| q.to_decimal_string(12);
    Ok(match format {
        Format::Text => {
            let mut s = format!("a={} u0={} tolerance={}\n", args.a, u0, args.tolerance);
            for (i, (u, gap)) in run.iterates.iter().zip(&run.gaps).enumerate() {
                s.push_str(&format!(
                    "u{i} ~ {}  |u^2-a| ~ {}  correct digits: {}\n",
                    decimal(u),
                    decimal(gap),
                    run.correct_digits[i]
                ));
            }
            s.push_str(&format!(
                "{} after {} steps\n",
                if run.converged {
                    "converged"
                } else {
                    "not converged"
                },
                run.steps()
            ));
            if let Some(c) = &comparison {
                s.push_str(&format!(
                    "board at {} places: {} error {}; newton error {}; winner {} (metric {})\n",
                    c.places,
                    c.takht,
                    c.takht_error,
                    decimal(&c.newton_error),
                    c.winner,
                    c.metric
                ));
            }
            s
        }
        Format::Json => {
            let iterates: Vec<Value> = run
                .iterates
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    json!({
                        "step": i,
                        "value": u.to_string(),
                        "decimal": decimal(u),
                        "gap": run.gaps[i].to_string(),
                        "correct_digits": run.correct_digits[i],
                    })
                })
                .collect();
            let mut v = json!({
                "a": args.a.to_string(),
                "u0": u0.to_string(),
                "tolerance": args.tolerance.to_string(),
                "converged": run.converged,
                "steps": run.steps(),
                "iterates": iterates,
            });
            if let Some(c) = &comparison {
                v["comparison"] = to_value(c);
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut s = String::from("step,value,decimal,gap,correct_digits\n");
            for (i, u) in run.iterates.iter().enumerate() {
                s.push_str(&format!(
                    "{i},{u},{},{},{}\n",
                    decimal(u),
                    run.gaps[i],
                    run.correct_digits[i]
                ));
            }
            s
        }
    })
}

fn sweep_output(args: &SweepArgs, format: Format) -> Result<String, Failure> {
    let newton_part = matches!(args.kind, SweepKind::Newton | SweepKind::Both);
    let criterion_part = matches!(args.kind, SweepKind::Criterion | SweepKind::Both);
    if newton_part && args.newton_from == 0 {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: "0".into(),
        }
        .into());
    }
    if criterion_part && args.criterion_from == 0 {
        return Err(PreconditionError::TooSmall {
            min: 1,
            got: "0".into(),
        }
        .into());
    }

    let comparisons = if newton_part {
        (args.newton_from..=args.newton_to)
            .into_par_iter()
            .map(|a| compare_methods(&Natural::from(a), args.places, args.steps))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let rules = if criterion_part {
        (args.criterion_from..=args.criterion_to)
            .into_par_iter()
            .map(|n| compare_rules(&Natural::from(n)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|r| r.measured_winner != Winner::Tie)
            .collect()
    } else {
        Vec::new()
    };

    let tally = |winner: newton::Method| comparisons.iter().filter(|c| c.winner == winner).count();
    let violations: Vec<&RuleComparison> = rules.iter().filter(|r| !r.agree).collect();
    Ok(match format {
        Format::Csv => {
            let mut s = String::new();
            if newton_part {
                s.push_str(CSV_HEADER);
                s.push('\n');
                for c in &comparisons {
                    for row in c.csv_rows() {
                        s.push_str(&row);
                        s.push('\n');
                    }
                }
            }
            if criterion_part {
                if newton_part {
                    s.push('\n');
                }
                s.push_str("n,E,R,predicted_winner,measured_winner,agree\n");
                for r in &rules {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        r.n,
                        r.khwarizmi.approximation.integer_part,
                        r.khwarizmi.approximation.remainder,
                        r.predicted_winner,
                        r.measured_winner,
                        r.agree
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            if newton_part {
                s.push_str(&format!(
                    "newton ({} steps from u0=a) vs board ({} places), a in {}..={}: board {} / newton {} / tie {}\n",
                    args.steps,
                    args.places,
                    args.newton_from,
                    args.newton_to,
                    tally(newton::Method::Takht),
                    tally(newton::Method::Newton),
                    tally(newton::Method::Tie)
                ));
            }
            if criterion_part {
                s.push_str(&format!(
                    "criterion R <= E-1 / R >= E over non-squares in {}..={}: {} checked, {} violations\n",
                    args.criterion_from,
                    args.criterion_to,
                    rules.len(),
                    violations.len()
                ));
            }
            s
        }
        Format::Json => {
            let mut v = json!({});
            if newton_part {
                v["newton"] = json!({
                    "from": args.newton_from,
                    "to": args.newton_to,
                    "places": args.places,
                    "steps": args.steps,
                    "takht_wins": tally(newton::Method::Takht),
                    "newton_wins": tally(newton::Method::Newton),
                    "ties": tally(newton::Method::Tie),
                });
            }
            if criterion_part {
                v["criterion"] = json!({
                    "from": args.criterion_from,
                    "to": args.criterion_to,
                    "checked": rules.len(),
                    "violations": violations.iter().map(|r| r.n.to_string()).collect::<Vec<_>>(),
                });
            }
            pretty(&v)
        }
    })
}
