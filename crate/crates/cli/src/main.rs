//! `t3f`: build 3-fields, automorphism groups and subfield lattices, and run
//! the verification suites.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use t3f::autgroup::{
    fixing_subgroup, frobenius_restriction, gamma_filtration, generate_aut_group, AutGroup,
};
use t3f::fields::{
    check_axioms, make_f0, make_multivariate, make_tf, ternary_group_algebra, ThreeField,
};
use t3f::products::{is_q_algebra, semidirect_check, unitize, QAlgebra, SplitSequence};
use t3f::qstruct::{check_qring, field_from_qring, q_of};
use t3f::structure::{find_isomorphism, DEFAULT_SEED};
use t3f::subfields::{all_subfields, subfield_lattice};
use t3f::verify::{self, SUITES};

#[derive(Parser)]
#[command(
    name = "t3f",
    version,
    about = "Finite unital 3-fields, their subfields and automorphism groups"
)]
struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for randomized search orders.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Appendix,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect TF(n), F0(n) or F(n1, ..., nk).
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(value_enum, default_value_t = FieldView::Info)]
        view: FieldView,
    },
    /// The automorphism group of F0(n).
    Aut {
        #[arg(long)]
        n: usize,
        #[arg(value_enum, default_value_t = AutView::Group)]
        view: AutView,
        /// Add the conjugation involution as dotted edges to the cycle graph.
        #[arg(long)]
        conjugation: bool,
    },
    /// Subfields of F0(n).
    Subfields {
        #[arg(long)]
        n: usize,
        #[arg(value_enum, default_value_t = SubfieldView::Lattice)]
        view: SubfieldView,
    },
    /// The Q-ring of a field.
    Qring {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(value_enum, default_value_t = QringView::Check)]
        view: QringView,
    },
    /// Unitization, split extensions and ternary group algebras.
    Products {
        #[command(subcommand)]
        view: ProductsView,
    },
    /// Run verification suites.
    Verify {
        /// Suite names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Include per-suite timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value_t = Kind::F0)]
    kind: Kind,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Exponent bounds for `--kind multi`, comma separated.
    #[arg(long, value_delimiter = ',')]
    bounds: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tf,
    F0,
    Multi,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldView {
    Info,
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutView {
    Matrices,
    Group,
    CycleGraph,
    Filtration,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubfieldView {
    Lattice,
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum QringView {
    Check,
    Reconstruct,
}

#[derive(Subcommand)]
enum ProductsView {
    /// Q-algebra test and unitization of a built-in algebra.
    Unitize {
        #[arg(long, value_enum)]
        algebra: AlgebraKind,
        /// Dimension or truncation bound of the algebra.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// F0(n) x TF(m) -> TF(m) with the constant section, and J⁺ ≅ F0(n) x TF(m).
    Semidirect {
        #[arg(long, default_value_t = 3)]
        f0: usize,
        #[arg(long, default_value_t = 2)]
        tf: usize,
    },
    /// Z/2^m[C_d1 x ... x C_dr] under both carrier readings.
    Groupalg {
        #[arg(long, default_value_t = 2)]
        modulus_exp: u32,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        group: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    /// GF(2)^n with zero product.
    Zero,
    /// t GF(2)[t]/t^n.
    Truncated,
    /// Q(TF(n)) over TF(n).
    PairsTf,
    /// Q(F0(n)) over F0(n).
    PairsF0,
}

type Failure = Box<dyn std::error::Error>;

/// Command output and whether it reports a genuine failure.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

fn unsupported(format: Format, what: &str) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    format!("--format {name} is not available for {what}").into()
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn build_field(a: &FieldArgs) -> Result<ThreeField, Failure> {
    Ok(match a.kind {
        Kind::Tf => make_tf(a.n)?,
        Kind::F0 => make_f0(a.n)?,
        Kind::Multi => make_multivariate(&a.bounds)?,
    })
}

fn carrier_text(f: &ThreeField) -> String {
    const SHOWN: usize = 64;
    let mut items: Vec<String> = f.elements().take(SHOWN).map(|a| f.render(a)).collect();
    if f.size() > SHOWN {
        items.push(format!("... ({} more)", f.size() - SHOWN));
    }
    format!("{{{}}}", items.join(", "))
}

fn field_command(cli: &Cli, a: &FieldArgs, view: FieldView) -> Result<Output, Failure> {
    let f = build_field(a)?;
    let format = if matches!(view, FieldView::Json) {
        Format::Json
    } else {
        cli.format
    };
    match (view, format) {
        (_, Format::Json) => Ok(Output::ok(pretty(
            &f.to_json(matches!(view, FieldView::Table | FieldView::Json)),
        ))),
        (FieldView::Info, Format::Text) => {
            let mut s = String::new();
            writeln!(s, "field: {}", f.label())?;
            writeln!(s, "order: {}", f.size())?;
            writeln!(s, "carrier: {}", carrier_text(&f))?;
            writeln!(s, "unit: {}", f.render(f.unit()))?;
            writeln!(s, "characteristic: {}", f.characteristic())?;
            let report = check_axioms(&f);
            let how = if report.exhaustive {
                "exhaustive"
            } else {
                "sampled"
            };
            writeln!(
                s,
                "3-field axioms: {} ({how})",
                if report.is_field() { "hold" } else { "fail" }
            )?;
            Ok(Output {
                text: s,
                failed: !report.is_field(),
            })
        }
        (FieldView::Table, Format::Text) => {
            if f.size() > 64 {
                return Err(format!(
                    "tables are printed for at most 64 elements, {} has {}",
                    f.label(),
                    f.size()
                )
                .into());
            }
            let names: Vec<String> = f.elements().map(|a| f.render(a)).collect();
            let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(1);
            let mut s = String::new();
            for (title, op) in [("a x b", 0), ("a (+) b = a + quer(1) + b", 1)] {
                writeln!(s, "{title}")?;
                for a in f.elements() {
                    let row: Vec<String> = f
                        .elements()
                        .map(|b| {
                            let v = if op == 0 { f.mul(a, b) } else { f.plus(a, b) };
                            format!("{:>width$}", names[v as usize])
                        })
                        .collect();
                    writeln!(s, "{:>width$} | {}", names[a as usize], row.join(" "))?;
                }
                s.push('\n');
            }
            writeln!(
                s,
                "quer: {}",
                f.elements()
                    .map(|a| format!("{} -> {}", names[a as usize], names[f.quer(a) as usize]))
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
            Ok(Output::ok(s))
        }
        (_, other) => Err(unsupported(other, "field")),
    }
}

fn filtration_json(g: &AutGroup) -> Result<serde_json::Value, Failure> {
    let n = g.n();
    let gamma = (2..n)
        .map(|k| gamma_filtration(g, k))
        .collect::<Result<Vec<_>, _>>()?;
    let fixing = (1..)
        .take_while(|&k| 1usize << k <= n)
        .map(|k| fixing_subgroup(g, k as u32))
        .collect::<Result<Vec<_>, _>>()?;
    let frob = if n >= 4 {
        Some(frobenius_restriction(g)?)
    } else {
        None
    };
    Ok(json!({ "n": n, "gamma": gamma, "fixing": fixing, "frobenius_restriction": frob }))
}

fn aut_command(cli: &Cli, n: usize, view: AutView, conjugation: bool) -> Result<Output, Failure> {
    let g = generate_aut_group(n)?;
    let text = match (view, cli.format) {
        (AutView::Matrices, Format::Text | Format::Appendix) => g.appendix_text(),
        (AutView::Matrices, Format::Json) => pretty(
            &json!({ "n": n, "matrices": g.matrices().iter().map(|m| m.to_json()).collect::<Vec<_>>() }),
        ),
        (AutView::Group, Format::Json) => pretty(&g.to_json()?),
        (AutView::Group, Format::Text) => {
            let mut s = format!("Aut F0({n}): order {}\n", g.order());
            if g.order() <= 64 {
                let id = g.identify()?;
                writeln!(s, "type: {}", id.display_name())?;
                writeln!(s, "element orders: {:?}", id.fingerprint.order_histogram)?;
                writeln!(
                    s,
                    "center: {}, derived subgroup: {}, exponent: {}",
                    id.fingerprint.center_order,
                    id.fingerprint.derived_order,
                    id.fingerprint.exponent
                )?;
            } else {
                writeln!(s, "type: not identified above order 64")?;
            }
            let gens: Vec<String> = g
                .group()
                .generators()
                .iter()
                .map(|&a| format!("A_{a} (P0 = {})", g.endo(a).p0()))
                .collect();
            writeln!(s, "generators: {}", gens.join(", "))?;
            s
        }
        (AutView::CycleGraph, Format::Dot | Format::Text) => {
            g.cycle_graph(conjugation)?.to_dot(&format!("Aut F0({n})"))
        }
        (AutView::Filtration, Format::Json) => pretty(&filtration_json(&g)?),
        (AutView::Filtration, Format::Text) => {
            let mut s = String::new();
            for k in 2..n {
                let l = gamma_filtration(&g, k)?;
                writeln!(
                    s,
                    "Gamma({n},{k}): order {}, normal {}, kernel of M({n},{k}) {}, splitting involution {}",
                    l.order,
                    l.normal,
                    l.kernel_matches,
                    l.splitting_involution.map_or("none".to_string(), |a| format!("A_{a}"))
                )?;
            }
            for k in (1..).take_while(|&k| 1usize << k <= n) {
                let h = fixing_subgroup(&g, k as u32)?;
                writeln!(
                    s,
                    "G({n},{k}): order {}, normal {}, abelian {}",
                    h.members.len(),
                    h.normal,
                    h.abelian
                )?;
            }
            if n >= 4 {
                let r = frobenius_restriction(&g)?;
                writeln!(s, "restriction to squares: Aut F0({n}) -> Aut F0({}), image order {}, kernel order {}", r.target, r.image_order, r.kernel.len())?;
            }
            s
        }
        (_, other) => return Err(unsupported(other, "this aut view")),
    };
    Ok(Output::ok(text))
}

fn subfields_command(cli: &Cli, n: usize, view: SubfieldView) -> Result<Output, Failure> {
    let text = match (view, cli.format) {
        (SubfieldView::Lattice, Format::Dot) => subfield_lattice(n)?.to_dot(),
        (SubfieldView::Lattice, Format::Json) => pretty(&subfield_lattice(n)?.to_json()),
        (SubfieldView::Lattice, Format::Text) => {
            let l = subfield_lattice(n)?;
            let mut s = format!("{} subfields G(S) of F0({n})\n", l.len());
            for (i, node) in l.nodes().iter().enumerate() {
                writeln!(
                    s,
                    "  [{i}] Ex = {:?}, generators {:?}, order {}",
                    node.semigroup.members, node.semigroup.generators, node.order
                )?;
            }
            writeln!(s, "covering relations: {:?}", l.edges)?;
            s
        }
        (SubfieldView::List, Format::Json) => pretty(&json!(all_subfields(n)?
            .iter()
            .map(|s| s.to_json())
            .collect::<Vec<_>>())),
        (SubfieldView::List, Format::Text) => {
            let all = all_subfields(n)?;
            let mut s = format!("{} subfields of F0({n})\n", all.len());
            for f in &all {
                let basis: Vec<String> = f.basis().iter().map(|b| b.to_string()).collect();
                writeln!(
                    s,
                    "  order {:>4}: 1 + <{}>, Ex = {:?}",
                    f.order(),
                    basis.join(", "),
                    f.exponents().members
                )?;
            }
            s
        }
        (_, other) => return Err(unsupported(other, "subfields")),
    };
    Ok(Output::ok(text))
}

fn qring_command(cli: &Cli, a: &FieldArgs, view: QringView) -> Result<Output, Failure> {
    let f = build_field(a)?;
    let q = q_of(&f)?;
    let report = check_qring(&q);
    match view {
        QringView::Check => {
            let text = match cli.format {
                Format::Json => pretty(&json!({ "passed": report.passed(), "report": report })),
                Format::Text => {
                    let mut s = format!("{}: order {}\n", q.label(), q.size());
                    writeln!(
                        s,
                        "Q-ring axioms: {}{}",
                        if report.passed() { "hold" } else { "fail" },
                        if report.degenerate {
                            " (degenerate)"
                        } else {
                            ""
                        }
                    )?;
                    writeln!(
                        s,
                        "tau = {}; 2-units: {}",
                        q.render(q.tau()),
                        report.two_units.join(", ")
                    )?;
                    s
                }
                other => return Err(unsupported(other, "qring check")),
            };
            Ok(Output {
                text,
                failed: !report.passed() && !report.degenerate,
            })
        }
        QringView::Reconstruct => {
            let g = field_from_qring(&q)?;
            let iso = find_isomorphism(&g.structure()?, &f.structure()?, cli.seed);
            let text = match cli.format {
                Format::Json => pretty(
                    &json!({ "field": f.label(), "reconstructed": g.label(), "isomorphism": iso }),
                ),
                Format::Text => match &iso {
                    Some(map) => {
                        let pairs: Vec<String> = g
                            .elements()
                            .map(|x| format!("{} -> {}", g.render(x), f.render(map[x as usize])))
                            .take(32)
                            .collect();
                        format!("{} ≅ {}\n  {}\n", g.label(), f.label(), pairs.join("\n  "))
                    }
                    None => format!("{} is not isomorphic to {}\n", g.label(), f.label()),
                },
                other => return Err(unsupported(other, "qring reconstruct")),
            };
            Ok(Output {
                text,
                failed: iso.is_none(),
            })
        }
    }
}

fn products_command(cli: &Cli, view: &ProductsView) -> Result<Output, Failure> {
    let value = match view {
        ProductsView::Unitize { algebra, n } => {
            let a = match algebra {
                AlgebraKind::Zero => QAlgebra::zero_product(*n as u32)?,
                AlgebraKind::Truncated => QAlgebra::truncated(*n)?,
                AlgebraKind::PairsTf => QAlgebra::ring_of_pairs(&make_tf(*n)?)?,
                AlgebraKind::PairsF0 => QAlgebra::ring_of_pairs(&make_f0(*n)?)?,
            };
            let r = is_q_algebra(&a);
            let u = unitize(&a)?;
            let axioms = u.axioms();
            json!({
                "algebra": a.label(),
                "order": a.size(),
                "q_algebra": r.is_q_algebra,
                "hash_unique": r.hash_unique,
                "nilpotency_index": r.nilpotency_index,
                "unitization_order": u.ternary.size(),
                "unitization_is_field": axioms.is_field(),
                "equivalence_holds": r.is_q_algebra == axioms.is_field(),
            })
        }
        ProductsView::Semidirect { f0, tf } => {
            let (a, b) = (make_f0(*f0)?, make_tf(*tf)?);
            let section = vec![a.unit(); b.size()];
            let s = SplitSequence::second_projection(&a, &b, &section)?;
            let r = semidirect_check(&s)?;
            json!({
                "total": s.total.label(),
                "quotient": s.quotient.label(),
                "kernel_order": r.kernel_order,
                "kernel_is_q_algebra": r.q_algebra.is_q_algebra,
                "is_isomorphism": r.is_isomorphism,
            })
        }
        ProductsView::Groupalg { modulus_exp, group } => {
            serde_json::to_value(ternary_group_algebra(*modulus_exp, group)?)?
        }
    };
    let failed = value.get("equivalence_holds") == Some(&json!(false))
        || value.get("is_isomorphism") == Some(&json!(false));
    let text = match cli.format {
        Format::Json => pretty(&value),
        Format::Text => text_of(&value, 0),
        other => return Err(unsupported(other, "products")),
    };
    Ok(Output { text, failed })
}

/// Indented `key: value` rendering of a JSON value.
fn text_of(v: &serde_json::Value, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    let mut s = String::new();
    match v {
        serde_json::Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || x.is_array() {
                    s.push_str(&format!("{pad}{k}:\n{}", text_of(x, depth + 1)));
                } else {
                    s.push_str(&format!("{pad}{k}: {x}\n"));
                }
            }
        }
        serde_json::Value::Array(items)
            if items.iter().all(|x| !x.is_object() && !x.is_array()) =>
        {
            s.push_str(&format!(
                "{pad}{}\n",
                serde_json::Value::Array(items.clone())
            ));
        }
        serde_json::Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                s.push_str(&format!("{pad}- [{i}]\n{}", text_of(x, depth + 1)));
            }
        }
        other => s.push_str(&format!("{pad}{other}\n")),
    }
    s
}

fn verify_command(
    cli: &Cli,
    suites: &[String],
    max_n: usize,
    timings: bool,
) -> Result<Output, Failure> {
    let names: Vec<&str> = suites.iter().map(String::as_str).collect();
    if let Some(bad) = names.iter().find(|s| **s != "all" && !SUITES.contains(s)) {
        return Err(format!(
            "unknown suite {bad:?}; expected all or one of {}",
            SUITES.join(", ")
        )
        .into());
    }
    let report = verify::run(&names, max_n)?;
    let text = match cli.format {
        Format::Text => report.to_text(timings),
        Format::Json => pretty(&report.to_json(timings)),
        other => return Err(unsupported(other, "verify")),
    };
    Ok(Output {
        text,
        failed: !report.passed(),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Field { field, view } => field_command(cli, field, *view),
        Command::Aut {
            n,
            view,
            conjugation,
        } => aut_command(cli, *n, *view, *conjugation),
        Command::Subfields { n, view } => subfields_command(cli, *n, *view),
        Command::Qring { field, view } => qring_command(cli, field, *view),
        Command::Products { view } => products_command(cli, view),
        Command::Verify {
            suite,
            max_n,
            timings,
        } => verify_command(cli, suite, *max_n, *timings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("T3F_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("warning: T3F_THREADS ignored: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
