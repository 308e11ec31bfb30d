use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use nonbasis::oracle::{self, survey};
use nonbasis::report::{parse_group_spec, parse_h_list, parse_set, SurveyReport};
use nonbasis::{certify, chi, predict_S, realize, realize_all, Error, GroupType, Subset};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Sumsets and maximum-size nonbases in finite abelian groups.
///
/// Groups are given by cyclic moduli, e.g. `8` or `2,6`; elements are
/// mixed-radix indices with the first coordinate most significant.
#[derive(Parser)]
#[command(name = "nonbasis", version)]
struct Cli {
    /// Worker threads for exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the h-fold sumset certificate of a set.
    Sumset {
        #[arg(long)]
        group: String,
        /// Indices `0,1,4,5` or coordinates `(0 1),(1 1)`.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
    /// Critical number from the closed form, optionally by search.
    Chi {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Predicted sizes |hA| of the largest incomplete sets.
    Predict {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
    /// Build a largest incomplete set with |hA| = target (every target if omitted).
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Exhaustive sizes |hA| over incomplete m-subsets, with witnesses.
    Brute {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        h: usize,
        /// Subset size (default chi - 1).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare closed forms against search for every group up to an order.
    Survey {
        #[arg(long)]
        max_order: usize,
        /// Comma-separated list, e.g. `2,3`.
        #[arg(long, default_value = "2,3")]
        h: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn braces(xs: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_certificate(g: &GroupType, a: &Subset, h: usize) -> nonbasis::Result<()> {
    let c = certify(g, a, h)?;
    println!("group        {g}");
    println!("A            {a}");
    println!("|A|          {}", c.set_size);
    println!("|{h}A|         {}", c.hfold_size);
    println!("{h}A           {}", c.hfold);
    println!("stabilizer   order {}", c.stabilizer.order());
    println!("k1, k2       {}, {}", c.k1, c.k2);
    println!("kneser bound {}", c.kneser_bound);
    println!(
        "complete     {}",
        if c.complete { "yes" } else { "no (incomplete)" }
    );
    Ok(())
}

fn run(cmd: Command) -> anyhow::Result<u8> {
    let budget = |b: Option<u64>| b.unwrap_or_else(oracle::budget_from_env);
    match cmd {
        Command::Sumset { group, set, h } => {
            let g = parse_group_spec(&group)?;
            let a = parse_set(&g, &set)?;
            print_certificate(&g, &a, h)?;
        }
        Command::Chi {
            group,
            h,
            brute,
            budget: b,
        } => {
            let g = parse_group_spec(&group)?;
            match chi(&g, h) {
                Ok(c) => println!("chi({g}, {h}) = {c}"),
                Err(Error::UnsupportedH(_)) if brute => println!("chi({g}, {h}): no closed form"),
                Err(e) => return Err(e.into()),
            }
            if brute {
                let c = oracle::chi_brute(&g, h, budget(b))?;
                println!("chi_brute({g}, {h}) = {c}");
            }
        }
        Command::Predict { group, h } => {
            let g = parse_group_spec(&group)?;
            println!("{}", braces(predict_S(&g, h)?));
        }
        Command::Construct { group, h, target } => {
            let g = parse_group_spec(&group)?;
            let built = match target {
                Some(t) => vec![(t, realize(&g, h, t)?)],
                None => realize_all(&g, h)?,
            };
            for (i, (t, a)) in built.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("target       {t}");
                print_certificate(&g, a, h)?;
            }
        }
        Command::Brute {
            group,
            h,
            m,
            budget: b,
        } => {
            let g = parse_group_spec(&group)?;
            let res = oracle::brute_S(&g, h, m, budget(b))?;
            println!("m = {}", res.m);
            println!("S = {}", braces(res.sizes.iter().copied()));
            for (size, w) in &res.witnesses {
                println!("  |{h}A| = {size}: {w}");
            }
        }
        Command::Survey {
            max_order,
            h,
            format,
            out,
            budget: b,
        } => {
            let hs = parse_h_list(&h)?;
            let b = budget(b);
            let report = SurveyReport::new(max_order, hs.clone(), b, survey(max_order, &hs, b)?);
            let text = match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            if report.any_mismatch() {
                eprintln!("survey recorded a mismatch between formula and search");
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = matches!(e.downcast_ref::<Error>(), Some(Error::SearchBudget { .. }));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}
