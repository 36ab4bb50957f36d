//! `postlie` — command-line front end for the forest algebra.
//!
//! Subcommands expose tree enumeration, grafting, the Grossman-Larson
//! product, coproducts, the three exponentials, order-condition generation,
//! and tableau certification. All output is deterministic; series use the
//! same text grammar the library parses, so every emitted line round-trips.
//!
//! Exit codes: `0` success / verified, `1` verification failed (only from
//! `check`), `2` usage or parse errors.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use postlie::butcher::{
    first_violation, generate_order_conditions, order_of_tableau, rk_postlie_character,
    rkmk_character, ButcherTableau, OrderCondition,
};
use postlie::exponential::{exp_concat, exp_gl, phi_series};
use postlie::forest::{nonplanar_trees, planar_trees, ForestBasis};
use postlie::postlie::{gl_dual_coproduct, gl_product_basis, graft_basis};
use postlie::rational::{parse_rational, render_rational, Rational};
use postlie::{NonplanarForest, PlanarForest, Series, TensorSeries};

#[derive(Parser)]
#[command(
    name = "postlie",
    version,
    about = "Planar-forest algebra toolkit: grafting, Grossman-Larson products, \
             exponentials, and Runge-Kutta order theory with exact rationals"
)]
struct Cli {
    /// Upper bound accepted for degrees and orders.
    #[arg(long, global = true, default_value_t = 10)]
    cap: usize,

    /// Encoding for series- and listing-valued output.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Classical Runge-Kutta order (elementary weights vs 1/τ!).
    Rk,
    /// Uncorrected transplant of the stage recursion to the planar basis.
    RkPostlie,
    /// Munthe-Kaas corrected stages (dexpinv applied before weighting).
    Rkmk,
}

#[derive(Subcommand)]
enum Command {
    /// List the rooted trees of a given degree in canonical order.
    Trees {
        /// Number of nodes.
        #[arg(long)]
        nodes: usize,
        /// Enumerate abstract (nonplanar) trees instead of planar ones.
        #[arg(long)]
        nonplanar: bool,
        /// Print only how many trees there are.
        #[arg(long)]
        count: bool,
    },
    /// Left-graft one forest onto another and print the resulting series.
    Graft {
        /// The acting forest.
        left: String,
        /// The target forest.
        right: String,
        /// Work in the abstract (nonplanar) basis.
        #[arg(long)]
        nonplanar: bool,
    },
    /// Grossman-Larson product of two forests.
    Gl {
        left: String,
        right: String,
        /// Work in the abstract (nonplanar) basis.
        #[arg(long)]
        nonplanar: bool,
    },
    /// Coshuffle coproduct of a forest, printed as tensor lines.
    Coproduct {
        forest: String,
        /// Work in the abstract (nonplanar) basis.
        #[arg(long)]
        nonplanar: bool,
    },
    /// Dual of the Grossman-Larson product on a planar forest.
    DualCoproduct { forest: String },
    /// Exponentials of the single-node generator, truncated at a degree.
    Exp {
        /// Truncation degree.
        #[arg(long)]
        order: usize,
        /// Grossman-Larson exponential exp*(•) instead of exp(•).
        #[arg(long, conflicts_with = "phi")]
        star: bool,
        /// The solution-operator series Σ •^(*k) / (k+1)! instead of exp(•).
        #[arg(long)]
        phi: bool,
        /// Work in the abstract (nonplanar) basis.
        #[arg(long)]
        nonplanar: bool,
    },
    /// Order conditions for all trees up to a given order.
    OrderConditions {
        /// Highest tree degree to include.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify a Butcher tableau against a requested order.
    Check {
        /// Path to a tableau JSON file: {"name?", "s?", "a": [[..]], "b": [..]}.
        #[arg(long)]
        tableau: PathBuf,
        /// Requested order.
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Method::Rk)]
        method: Method,
    },
}

enum CliError {
    /// Bad flags, unreadable input, or parse failures — exit 2.
    Usage(String),
    /// The certification in `check` did not reach the requested order —
    /// exit 1 (the report has already been printed).
    Verification,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification) => ExitCode::from(1),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cap = cli.cap;
    let output = cli.output;
    match cli.command {
        Command::Trees {
            nodes,
            nonplanar,
            count,
        } => cmd_trees(nodes, nonplanar, count, cap, output),
        Command::Graft {
            left,
            right,
            nonplanar,
        } => cmd_binary(&left, &right, nonplanar, cap, output, BinaryOp::Graft),
        Command::Gl {
            left,
            right,
            nonplanar,
        } => cmd_binary(&left, &right, nonplanar, cap, output, BinaryOp::Gl),
        Command::Coproduct { forest, nonplanar } => cmd_coproduct(&forest, nonplanar, cap, output),
        Command::DualCoproduct { forest } => cmd_dual_coproduct(&forest, cap, output),
        Command::Exp {
            order,
            star,
            phi,
            nonplanar,
        } => cmd_exp(order, star, phi, nonplanar, cap, output),
        Command::OrderConditions { order, format } => cmd_order_conditions(order, format, cap),
        Command::Check {
            tableau,
            order,
            method,
        } => cmd_check(&tableau, order, method, cap),
    }
}

fn check_degree(what: &str, value: usize, cap: usize) -> Result<(), CliError> {
    if value == 0 {
        return Err(usage(format!("{what} must be at least 1")));
    }
    if value > cap {
        return Err(usage(format!(
            "{what} {value} exceeds the cap {cap}; raise --cap to allow it"
        )));
    }
    Ok(())
}

// --- trees -------------------------------------------------------------------

fn cmd_trees(
    nodes: usize,
    nonplanar: bool,
    count: bool,
    cap: usize,
    output: Output,
) -> Result<(), CliError> {
    check_degree("--nodes", nodes, cap)?;
    let listing: Vec<String> = if nonplanar {
        nonplanar_trees(nodes).iter().map(|t| t.to_string()).collect()
    } else {
        planar_trees(nodes).iter().map(|t| t.to_string()).collect()
    };
    match (count, output) {
        (true, Output::Text) => println!("{}", listing.len()),
        (true, Output::Json) => println!("{}", json!({ "count": listing.len() })),
        (false, Output::Text) => {
            for line in &listing {
                println!("{line}");
            }
        }
        (false, Output::Json) => println!("{}", Value::from(listing)),
    }
    Ok(())
}

// --- binary series commands ----------------------------------------------------

enum BinaryOp {
    Graft,
    Gl,
}

fn cmd_binary(
    left: &str,
    right: &str,
    nonplanar: bool,
    cap: usize,
    output: Output,
    op: BinaryOp,
) -> Result<(), CliError> {
    if nonplanar {
        let a = parse_forest_arg::<NonplanarForest>(left)?;
        let b = parse_forest_arg::<NonplanarForest>(right)?;
        let n = checked_truncation(a.degree() + b.degree(), cap)?;
        let series = match op {
            BinaryOp::Graft => graft_basis(&a, &b, n),
            BinaryOp::Gl => gl_product_basis(&a, &b, n),
        };
        emit_series(&series, output);
    } else {
        let a = parse_forest_arg::<PlanarForest>(left)?;
        let b = parse_forest_arg::<PlanarForest>(right)?;
        let n = checked_truncation(a.degree() + b.degree(), cap)?;
        let series = match op {
            BinaryOp::Graft => graft_basis(&a, &b, n),
            BinaryOp::Gl => gl_product_basis(&a, &b, n),
        };
        emit_series(&series, output);
    }
    Ok(())
}

fn parse_forest_arg<F: ForestBasis>(text: &str) -> Result<F, CliError> {
    F::parse(text).map_err(|e| usage(format!("`{text}`: {e}")))
}

fn checked_truncation(degree: usize, cap: usize) -> Result<usize, CliError> {
    if degree > cap {
        return Err(usage(format!(
            "total degree {degree} exceeds the cap {cap}; raise --cap to allow it"
        )));
    }
    Ok(degree)
}

// --- coproducts ----------------------------------------------------------------

fn cmd_coproduct(
    forest: &str,
    nonplanar: bool,
    cap: usize,
    output: Output,
) -> Result<(), CliError> {
    if nonplanar {
        let f = parse_forest_arg::<NonplanarForest>(forest)?;
        let n = checked_truncation(f.degree(), cap)?;
        emit_tensor(&Series::basis(f, n).coshuffle(), output);
    } else {
        let f = parse_forest_arg::<PlanarForest>(forest)?;
        let n = checked_truncation(f.degree(), cap)?;
        emit_tensor(&Series::basis(f, n).coshuffle(), output);
    }
    Ok(())
}

fn cmd_dual_coproduct(forest: &str, cap: usize, output: Output) -> Result<(), CliError> {
    let f = parse_forest_arg::<PlanarForest>(forest)?;
    let n = checked_truncation(f.degree(), cap)?;
    emit_tensor(&gl_dual_coproduct(&f, n), output);
    Ok(())
}

// --- exponentials ----------------------------------------------------------------

fn cmd_exp(
    order: usize,
    star: bool,
    phi: bool,
    nonplanar: bool,
    cap: usize,
    output: Output,
) -> Result<(), CliError> {
    check_degree("--order", order, cap)?;
    if nonplanar {
        emit_series(&exp_of_generator::<NonplanarForest>(order, star, phi), output);
    } else {
        emit_series(&exp_of_generator::<PlanarForest>(order, star, phi), output);
    }
    Ok(())
}

fn exp_of_generator<F: ForestBasis>(order: usize, star: bool, phi: bool) -> Series<F> {
    if phi {
        return phi_series(order);
    }
    let generator: Series<F> = Series::generator(order);
    let series = if star {
        exp_gl(&generator, order)
    } else {
        exp_concat(&generator, order)
    };
    series.expect("the generator has counit zero")
}

// --- order conditions --------------------------------------------------------------

fn cmd_order_conditions(order: usize, format: Format, cap: usize) -> Result<(), CliError> {
    check_degree("--order", order, cap)?;
    let conditions = generate_order_conditions(order);
    match format {
        Format::Text => {
            for c in &conditions {
                println!("{}\t{}\t{}", c.tree(), c.compact(), c.componentwise());
            }
        }
        Format::Json => {
            let records: Vec<Value> = conditions
                .iter()
                .map(|c| {
                    json!({
                        "tree": c.tree().to_string(),
                        "compact": c.compact(),
                        "componentwise": c.componentwise(),
                        "rhs": render_rational(c.rhs()),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&Value::from(records)).expect("valid json"));
        }
        Format::Latex => {
            for c in &conditions {
                println!(
                    "{} & {} & {} \\\\",
                    tree_macro(&c.tree().to_string()),
                    compact_latex(c),
                    componentwise_latex(c)
                );
            }
        }
    }
    Ok(())
}

/// `[[][]]` becomes the macro name `\aababb`: brackets map to `a`/`b`.
fn tree_macro(text: &str) -> String {
    let mut out = String::from("\\");
    for c in text.chars() {
        out.push(match c {
            '[' => 'a',
            ']' => 'b',
            other => other,
        });
    }
    out
}

fn rational_latex(q: &Rational) -> String {
    let rendered = render_rational(q);
    match rendered.split_once('/') {
        Some((numerator, denominator)) => format!("\\frac{{{numerator}}}{{{denominator}}}"),
        None => rendered,
    }
}

/// `b(Ae·A^2e) = 1/8` becomes `b(A\een\cdot A^{2}\een) = \frac{1}{8}`.
fn compact_latex(condition: &OrderCondition) -> String {
    let compact = condition.compact();
    let lhs = compact.split(" = ").next().expect("compact has an equals sign");
    let mut out = String::new();
    let mut chars = lhs.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'e' => out.push_str("\\een"),
            '·' => out.push_str("\\cdot "),
            '^' => {
                let mut digits = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    digits.push(chars.next().expect("peeked"));
                }
                out.push_str(&format!("^{{{digits}}}"));
            }
            other => out.push(other),
        }
    }
    format!("{out} = {}", rational_latex(condition.rhs()))
}

/// `Σ_ijk b_i a_ij a_ik = 1/3` becomes
/// `\sum_{ijk} b_i a_{ij} a_{ik} = \frac{1}{3}`.
fn componentwise_latex(condition: &OrderCondition) -> String {
    let text = condition.componentwise();
    let lhs = text.split(" = ").next().expect("componentwise has an equals sign");
    let words: Vec<String> = lhs
        .split(' ')
        .map(|word| {
            if let Some(indices) = word.strip_prefix("Σ_") {
                format!("\\sum_{{{indices}}}")
            } else if let Some(indices) = word.strip_prefix("a_") {
                format!("a_{{{indices}}}")
            } else {
                word.to_string()
            }
        })
        .collect();
    format!(
        "{} = {}",
        words.join(" "),
        rational_latex(condition.rhs())
    )
}

// --- check ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct TableauFile {
    name: Option<String>,
    s: Option<usize>,
    a: Vec<Vec<RationalText>>,
    b: Vec<RationalText>,
}

/// Tableau entries may be JSON integers or strings like `"1/2"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Integer(i64),
    Text(String),
}

fn to_rational(entry: RationalText) -> Result<Rational, CliError> {
    match entry {
        RationalText::Integer(i) => Ok(Rational::from_integer(i.into())),
        RationalText::Text(s) => parse_rational(&s).map_err(|e| usage(e.to_string())),
    }
}

fn load_tableau(path: &Path) -> Result<ButcherTableau, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file: TableauFile = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let a = file
        .a
        .into_iter()
        .map(|row| row.into_iter().map(to_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let b = file
        .b
        .into_iter()
        .map(to_rational)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(s) = file.s {
        if s != b.len() {
            return Err(usage(format!(
                "declared stage count {s} does not match the {} weights",
                b.len()
            )));
        }
    }
    ButcherTableau::new(file.name.unwrap_or_else(|| String::from("tableau")), a, b)
        .map_err(|e| usage(e.to_string()))
}

/// The largest degree through which two characters agree, up to `p`.
fn character_agreement(
    computed: &Series<PlanarForest>,
    reference: &Series<PlanarForest>,
    p: usize,
) -> usize {
    let mut attained = 0;
    for d in 1..=p {
        if computed.component(d) == reference.component(d) {
            attained = d;
        } else {
            break;
        }
    }
    attained
}

fn cmd_check(path: &Path, order: usize, method: Method, cap: usize) -> Result<(), CliError> {
    check_degree("--order", order, cap)?;
    let tableau = load_tableau(path)?;

    let (attained, violation): (usize, Option<(String, String, String)>) = match method {
        Method::Rk => {
            let attained = order_of_tableau(&tableau, order);
            let violation = if attained < order {
                first_violation(&tableau, order).map(|c| {
                    (
                        c.tree().to_string(),
                        render_rational(&c.lhs(&tableau)),
                        render_rational(c.rhs()),
                    )
                })
            } else {
                None
            };
            (attained, violation)
        }
        Method::RkPostlie | Method::Rkmk => {
            let computed = match method {
                Method::Rkmk => rkmk_character(&tableau, order),
                _ => rk_postlie_character(&tableau, order),
            };
            let generator: Series<PlanarForest> = Series::generator(order);
            let reference = exp_gl(&generator, order).expect("the generator has counit zero");
            let attained = character_agreement(&computed, &reference, order);
            let violation = if attained < order {
                let difference = computed.sub(&reference).component(attained + 1);
                let witness = difference.terms().next().map(|(forest, _)| forest.clone());
                witness.map(|forest| {
                    (
                        forest.to_string(),
                        render_rational(&computed.coefficient(&forest)),
                        render_rational(&reference.coefficient(&forest)),
                    )
                })
            } else {
                None
            };
            (attained, violation)
        }
    };

    println!("order {attained}");
    if let Some((tree, lhs, rhs)) = violation {
        println!("first violation: {tree}  lhs = {lhs}  rhs = {rhs}");
    }
    if attained >= order {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

// --- emission helpers -------------------------------------------------------------------

fn emit_series<F: ForestBasis + Display>(series: &Series<F>, output: Output) {
    match output {
        Output::Text => print!("{}", series.to_text()),
        Output::Json => {
            let mut by_degree = serde_json::Map::new();
            for (forest, coefficient) in series.terms() {
                by_degree
                    .entry(forest.degree().to_string())
                    .or_insert_with(|| Value::Array(Vec::new()))
                    .as_array_mut()
                    .expect("inserted as array")
                    .push(json!({
                        "coeff": render_rational(coefficient),
                        "forest": forest.to_string(),
                    }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Value::Object(by_degree)).expect("valid json")
            );
        }
    }
}

fn emit_tensor<F: ForestBasis + Display>(tensor: &TensorSeries<F>, output: Output) {
    match output {
        Output::Text => print!("{}", tensor.to_text()),
        Output::Json => {
            let mut by_degree = serde_json::Map::new();
            for (left, right, coefficient) in tensor.sorted_terms() {
                by_degree
                    .entry((left.degree() + right.degree()).to_string())
                    .or_insert_with(|| Value::Array(Vec::new()))
                    .as_array_mut()
                    .expect("inserted as array")
                    .push(json!({
                        "coeff": render_rational(coefficient),
                        "left": left.to_string(),
                        "right": right.to_string(),
                    }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Value::Object(by_degree)).expect("valid json")
            );
        }
    }
}
