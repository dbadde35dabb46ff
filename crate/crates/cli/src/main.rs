//! `cmlattice`: JSON front end to the hermitian-form, finite-group, D-group
//! and cyclic-algebra pipelines. Every command prints one JSON document
//! `{"status", "payload", "trace"}` and exits with 0 (ok), 2 (error) or
//! 3 (unknown).

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cmlattice::groups::{Budgets, ClassSelector, DEFAULT_CLOSURE_CAP, DEFAULT_WEAK_APPROX_BUDGET};
use cmlattice::hermitian::DEFAULT_NORM_BUDGET;
use cmlattice::json;

mod commands;
mod input;
mod result;

use result::CommandResult;

#[derive(Parser, Debug)]
#[command(name = "cmlattice", version, about = "Exact hermitian forms, finite groups and cyclic algebras over CM fields")]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Norm-search budget (candidates tried).
    #[arg(long, global = true, default_value_t = DEFAULT_NORM_BUDGET)]
    budget: u64,

    /// Maximal coordinate size for weak-approximation searches.
    #[arg(long, global = true, default_value_t = DEFAULT_WEAK_APPROX_BUDGET)]
    weak_approx_budget: u64,

    /// Maximal number of elements a group closure may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, signatures and determinant class of a form.
    Invariants {
        #[arg(long)]
        form: String,
    },
    /// Decide whether two forms are equivalent.
    Equivalent {
        #[arg(long, num_args = 2, required = true)]
        form: Vec<String>,
    },
    /// Signature (n − 1, 1) at embedding 0 and definite elsewhere.
    Admissible {
        #[arg(long)]
        form: String,
    },
    /// Invariant form of a finite group by averaging.
    Average {
        /// `{"field", "generators"}` JSON.
        #[arg(long)]
        group: String,
        /// Positive definite seed form (identity by default).
        #[arg(long)]
        form: Option<String>,
    },
    /// Embed a catalog group into U(diag(1, 1, α)).
    EmbedFirstType { name: String },
    /// Embed a finite group through an integral representation.
    RegularEmbed {
        /// `{"table"}`, `{"permutations"}`, `{"cyclic": n}` or `{"symmetric": k}`, optionally with `"images"`.
        #[arg(long)]
        group: String,
        /// `cyclotomic:R`, `gaussian` or a field JSON file.
        #[arg(long, default_value = "gaussian")]
        field: String,
        /// Total dimension of the form.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Class::Default)]
        class: Class,
    },
    /// D-groups G_{m,r}.
    Dgroup {
        #[command(subcommand)]
        action: DgroupAction,
    },
    /// The degree-3 cyclic algebra (built-in example unless --spec is given).
    Algebra {
        #[arg(long, global = true)]
        spec: Option<String>,
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Is an element of the totally real field a relative norm?
    NormResidue {
        #[arg(long, default_value = "gaussian")]
        field: String,
        /// Coordinates over the totally real field, e.g. `["-3"]`, or a bare rational.
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Check equivalent(H, TᴴHT) for random invertible T.
    CongruenceCheck {
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// List the catalog of finite groups.
    Catalog,
}

#[derive(Subcommand, Debug)]
enum DgroupAction {
    /// Verdicts for all valid (m, r) with m ≤ max-m.
    Enumerate {
        #[arg(long, default_value_t = 30)]
        max_m: u64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// One JSON record per line instead of a single document.
        #[arg(long)]
        lines: bool,
    },
    /// Verdict for one group, given as `m=7 r=2 p=3 [split=2,1]`.
    Check { params: Vec<String> },
}

#[derive(Subcommand, Debug)]
enum AlgebraAction {
    /// Verify the relations and the involution.
    Check,
    /// Reduced norm of an element.
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Whether h⁻¹x*hx is a scalar cube root of unity.
    Membership {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Signature pairs of a hermitian element at each embedding of K.
    Signature {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        h: String,
    },
    /// Search for a norm witness of α.
    Division,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Class {
    Default,
    Other,
}

fn parse_check_params(params: &[String]) -> Result<(u64, u64, u64, Option<(u64, u64)>), String> {
    let (mut m, mut r, mut p, mut split) = (None, None, 3, None);
    for kv in params {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected key=value, found {kv:?}"))?;
        let num = |s: &str| s.parse::<u64>().map_err(|e| format!("{k}={s}: {e}"));
        match k {
            "m" => m = Some(num(v)?),
            "r" => r = Some(num(v)?),
            "p" => p = num(v)?,
            "split" => {
                let (a, b) = v.split_once(',').ok_or("split must be p1,p2")?;
                split = Some((num(a)?, num(b)?));
            }
            _ => return Err(format!("unknown parameter {k:?}")),
        }
    }
    Ok((m.ok_or("missing m")?, r.ok_or("missing r")?, p, split))
}

/// `Lines` is the record stream of `dgroup enumerate --lines`.
enum Output {
    Document(CommandResult),
    Lines(Vec<serde_json::Value>),
}

fn run(cli: &Cli) -> Result<Output, String> {
    let budgets = Budgets {
        weak_approx: cli.weak_approx_budget,
        norm: cli.budget,
        closure_cap: cli.closure_cap,
    };
    Ok(Output::Document(match &cli.command {
        Command::Invariants { form } => commands::invariants(&input::form(form)?),
        Command::Equivalent { form } => commands::equivalent(&input::form(&form[0])?, &input::form(&form[1])?, cli.budget),
        Command::Admissible { form } => commands::admissible(&input::form(form)?),
        Command::Average { group, form } => {
            let (field, gens) = input::generators(group)?;
            let seed = form.as_deref().map(input::form).transpose()?;
            commands::average(field, gens, seed.as_ref(), cli.closure_cap)
        }
        Command::EmbedFirstType { name } => commands::embed_first_type(name, &budgets),
        Command::RegularEmbed { group, field, n, class } => {
            let rep = input::representation(group)?;
            let selector = match class {
                Class::Default => ClassSelector::Default,
                Class::Other => ClassSelector::Other,
            };
            commands::regular_embed(&rep, input::field(field)?, *n, selector, &budgets)
        }
        Command::Dgroup { action } => match action {
            DgroupAction::Enumerate { max_m, p, lines: false } => commands::dgroup_enumerate_result(*max_m, *p),
            DgroupAction::Enumerate { max_m, p, lines: true } => {
                return commands::dgroup_enumerate(*max_m, *p).map(Output::Lines);
            }
            DgroupAction::Check { params } => {
                let (m, r, p, split) = parse_check_params(params)?;
                commands::dgroup_check(m, r, p, split)
            }
        },
        Command::Algebra { spec, action } => {
            let alg = input::algebra(spec.as_deref())?;
            match action {
                AlgebraAction::Check => commands::algebra_check(&alg),
                AlgebraAction::Norm { x } => commands::algebra_norm(&alg, &input::algebra_element(&alg, x)?),
                AlgebraAction::Membership { h, x } => commands::algebra_membership(
                    &alg,
                    &input::algebra_element(&alg, h)?,
                    &input::algebra_element(&alg, x)?,
                ),
                AlgebraAction::Signature { h } => commands::algebra_signature(&alg, &input::algebra_element(&alg, h)?),
                AlgebraAction::Division => commands::algebra_division(&alg, cli.budget),
            }
        }
        Command::NormResidue { field, value } => {
            let e = input::field(field)?;
            let v = if value.trim_start().starts_with('[') {
                input::json_arg(value)?
            } else {
                serde_json::Value::Array(vec![serde_json::Value::String(value.clone())])
            };
            let d = json::real_elem_from_json(e.base(), &v).map_err(|e| e.to_string())?;
            commands::norm_residue(&e, &d, cli.budget)
        }
        Command::CongruenceCheck { form, trials } => commands::congruence_check(&input::form(form)?, *trials, cli.seed, cli.budget),
        Command::Catalog => commands::catalog_list(),
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let result = CommandResult::error(e.render().to_string());
            println!("{}", serde_json::to_string(&result).expect("command results serialize"));
            return ExitCode::from(result.status.exit_code() as u8);
        }
    };
    let result = match run(&cli) {
        Ok(Output::Lines(records)) => {
            let mut out = std::io::stdout().lock();
            for record in records {
                // A closed pipe ends the stream early; that is not an error.
                if writeln!(out, "{record}").is_err() {
                    break;
                }
            }
            return ExitCode::SUCCESS;
        }
        Ok(Output::Document(result)) => result,
        Err(message) => CommandResult::error(message),
    };
    let text = if cli.json {
        serde_json::to_string(&result)
    } else {
        serde_json::to_string_pretty(&result)
    }
    .expect("command results serialize");
    println!("{text}");
    ExitCode::from(result.status.exit_code() as u8)
}
