mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use orbimilnor::catalog::{self, CatalogBounds, CatalogFile};
use orbimilnor::diagsym::{parse_group, DiagonalGroup};
use orbimilnor::milnor::{load_milnor_fixture, ActionDirection};
use orbimilnor::orblattice::{classical_sector, AssemblyOptions};
use orbimilnor::polyring::InvertiblePolynomial;
use orbimilnor::spectra::{self, SpectraOptions};
use serde_json::{json, Value};

/// Orbifold Milnor lattices, Seifert forms, zeta functions and E-functions
/// of invertible polynomials with diagonal symmetry groups.
#[derive(Parser)]
#[command(name = "orbimilnor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one pair (f, G).
    Analyze(PairArgs),
    /// Run the identity checks for one pair or for every entry of a catalog file.
    Verify(VerifyArgs),
    /// Enumerate invertible polynomials and all subgroups of their symmetry groups.
    Catalog(CatalogArgs),
    /// Berglund-Hubsch-Henningson dual pair and the duality checks.
    Dual(PairArgs),
    /// Sector, orbifold and reduced orbifold zeta functions.
    Zeta(PairArgs),
    /// E-function terms and their duality check.
    Efn(PairArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Fwd,
    Rev,
}

#[derive(Args)]
struct Conventions {
    /// Extra Milnor lattice fixture (JSON); may be repeated.
    #[arg(long = "fixture", value_name = "PATH")]
    fixtures: Vec<PathBuf>,
    /// Count H^0 of zero-dimensional Milnor fibres unreduced.
    #[arg(long)]
    unreduced_curves: bool,
    /// Seifert form of the zero-variable lattice: +1 or -1.
    #[arg(long, value_name = "SIGN", default_value = "-1", allow_hyphen_values = true)]
    lseifert_zero_vars: String,
    /// Whether a phase k/p acts on the A-series basis as the k-th or (-k)-th shift.
    #[arg(long, value_enum, default_value = "fwd")]
    action_direction: Direction,
    /// Indent the JSON output.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct PairArgs {
    /// Polynomial such as "x^3*y + x*y^5".
    polynomial: String,
    /// "max", "J", "trivial" or generators "a/b,c/d; ...".
    #[arg(long)]
    group: String,
    /// Write the report to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    conventions: Conventions,
}

#[derive(Args)]
struct VerifyArgs {
    polynomial: Option<String>,
    #[arg(long, requires = "polynomial")]
    group: Option<String>,
    /// Catalog file with entries {"polynomial", "group"}.
    #[arg(long, conflicts_with = "polynomial")]
    catalog: Option<PathBuf>,
    #[command(flatten)]
    conventions: Conventions,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, default_value_t = 2)]
    max_vars: usize,
    #[arg(long, default_value_t = 15)]
    max_det: i64,
    /// Fail (exit 2) unless every pair passes the rank, zeta and E-function duality checks.
    #[arg(long)]
    dual_check: bool,
    /// Only sums of Fermat monomials.
    #[arg(long)]
    brieskorn_pham: bool,
    /// Print the list of pairs as a catalog file instead of summaries.
    #[arg(long)]
    entries: bool,
    #[command(flatten)]
    conventions: Conventions,
}

/// Outcome of a command: the JSON document and the exit status.
struct Output {
    doc: Value,
    failed: bool,
}

fn options(c: &Conventions) -> anyhow::Result<AssemblyOptions> {
    let point_sign = match c.lseifert_zero_vars.trim() {
        "+1" | "1" => 1,
        "-1" => -1,
        other => bail!("--lseifert-zero-vars must be +1 or -1, got {other:?}"),
    };
    let mut fixtures = Vec::new();
    for path in &c.fixtures {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading fixture {}", path.display()))?;
        let (fx, _) = load_milnor_fixture(&text).with_context(|| format!("fixture {}", path.display()))?;
        fixtures.push(fx);
    }
    Ok(AssemblyOptions {
        direction: match c.action_direction {
            Direction::Fwd => ActionDirection::Forward,
            Direction::Rev => ActionDirection::Reverse,
        },
        point_sign,
        fixtures,
        spectra: SpectraOptions { unreduced_curves: c.unreduced_curves },
    })
}

fn parse_pair(poly: &str, group: &str) -> anyhow::Result<(InvertiblePolynomial, DiagonalGroup)> {
    let f = InvertiblePolynomial::parse(poly).with_context(|| format!("polynomial {poly:?}"))?;
    let g = parse_group(&f, group).with_context(|| format!("group {group:?}"))?;
    Ok((f, g))
}

fn analyze(a: &PairArgs) -> anyhow::Result<Output> {
    let (f, g) = parse_pair(&a.polynomial, &a.group)?;
    let opts = options(&a.conventions)?;
    Ok(Output { doc: report::analysis(&f, &g, &opts)?, failed: false })
}

fn dual(a: &PairArgs) -> anyhow::Result<Output> {
    let (f, g) = parse_pair(&a.polynomial, &a.group)?;
    let opts = options(&a.conventions)?;
    let rep = spectra::duality_report(&f, &g, opts.spectra)?;
    Ok(Output {
        doc: json!({
            "polynomial": f.to_string(),
            "group": report::group_json(&g),
            "dual": report::dual_json(&f, &g),
            "duality": rep,
        }),
        failed: false,
    })
}

fn zeta(a: &PairArgs) -> anyhow::Result<Output> {
    let (f, g) = parse_pair(&a.polynomial, &a.group)?;
    let opts = options(&a.conventions)?;
    let sp = spectra::sector_spectra(&f, &g, opts.spectra)?;
    let z = spectra::zeta_functions(&sp);
    let sectors: Vec<Value> = sp
        .iter()
        .zip(&z.sectors)
        .map(|(s, c)| json!({ "element": orbimilnor::diagsym::phase_to_string(&s.element), "n_fixed": s.n_fixed, "zeta": c }))
        .collect();
    Ok(Output {
        doc: json!({
            "polynomial": f.to_string(),
            "group": report::group_json(&g),
            "sectors": sectors,
            "orbifold": z.orbifold,
            "reduced": z.reduced,
        }),
        failed: false,
    })
}

fn efn(a: &PairArgs) -> anyhow::Result<Output> {
    let (f, g) = parse_pair(&a.polynomial, &a.group)?;
    let opts = options(&a.conventions)?;
    let sp = spectra::sector_spectra(&f, &g, opts.spectra)?;
    let rep = spectra::duality_report(&f, &g, opts.spectra)?;
    Ok(Output {
        doc: json!({
            "polynomial": f.to_string(),
            "group": report::group_json(&g),
            "n_vars": f.n_vars(),
            "terms": spectra::e_functions(&sp),
            "dual_identity": rep.e_function_identity,
        }),
        failed: false,
    })
}

fn verify(a: &VerifyArgs) -> anyhow::Result<Output> {
    let opts = options(&a.conventions)?;
    if let Some(path) = &a.catalog {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading catalog {}", path.display()))?;
        let file = CatalogFile::parse(&text).with_context(|| format!("catalog {}", path.display()))?;
        let rows = catalog::run(&file.entries, &opts)?;
        let failing: Vec<Value> = rows.iter().filter(|r| !r.failures().is_empty()).map(report::summary_json).collect();
        return Ok(Output {
            failed: !failing.is_empty(),
            doc: json!({ "catalog": path.display().to_string(), "pairs": rows.len(), "failing": failing }),
        });
    }
    let (Some(poly), Some(group)) = (&a.polynomial, &a.group) else {
        bail!("verify needs a polynomial with --group, or --catalog");
    };
    let (f, g) = parse_pair(poly, group)?;
    let summary = catalog::summarize(&f, &g, &opts)?;
    let all: Vec<usize> = (0..f.n_vars()).collect();
    let identity = classical_sector(&f, &g, &all, &opts)?.map(|c| {
        json!({ "source": c.source, "rank": c.rank(), "det": report::big_json(&c.gram.det()), "gram": report::int_matrix(&c.gram) })
    });
    let failures = summary.failures();
    Ok(Output {
        failed: !failures.is_empty(),
        doc: json!({ "identity_sector": identity, "summary": report::summary_json(&summary), "failures": failures }),
    })
}

fn catalog_cmd(a: &CatalogArgs) -> anyhow::Result<Output> {
    let bounds = CatalogBounds { max_vars: a.max_vars, max_det: a.max_det };
    let file = if a.brieskorn_pham {
        catalog::brieskorn_pham_catalog(bounds)
    } else {
        CatalogFile { description: format!("invertible polynomials with at most {} variables and |det E| <= {}, all subgroups of G_f", a.max_vars, a.max_det), entries: catalog::pairs(bounds) }
    };
    if a.entries {
        return Ok(Output { doc: serde_json::to_value(&file)?, failed: false });
    }
    let opts = options(&a.conventions)?;
    let rows = catalog::run(&file.entries, &opts)?;
    let dual_failures = rows.iter().filter(|r| !r.dual_check_passed()).count();
    Ok(Output {
        failed: a.dual_check && dual_failures > 0,
        doc: json!({
            "max_vars": a.max_vars,
            "max_det": a.max_det,
            "pairs": rows.len(),
            "dual_check": a.dual_check,
            "dual_failures": dual_failures,
            "rows": rows.iter().map(report::summary_json).collect::<Vec<_>>(),
        }),
    })
}

fn emit(doc: &Value, pretty: bool, output: Option<&PathBuf>) -> anyhow::Result<()> {
    let mut text = if pretty { serde_json::to_string_pretty(doc)? } else { serde_json::to_string(doc)? };
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let (out, pretty, path) = match &cli.command {
        Command::Analyze(a) => (analyze(a)?, a.conventions.pretty, a.output.as_ref()),
        Command::Dual(a) => (dual(a)?, a.conventions.pretty, a.output.as_ref()),
        Command::Zeta(a) => (zeta(a)?, a.conventions.pretty, a.output.as_ref()),
        Command::Efn(a) => (efn(a)?, a.conventions.pretty, a.output.as_ref()),
        Command::Verify(a) => (verify(a)?, a.conventions.pretty, None),
        Command::Catalog(a) => (catalog_cmd(a)?, a.conventions.pretty, None),
    };
    emit(&out.doc, pretty, path)?;
    Ok(!out.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
