//! Argument parsing, command dispatch and report rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use weight_duality_core::notation::{format_monomials, parse_matrix};
use weight_duality_core::*;

use crate::catalog::{verify_catalog, verify_entry, Catalog, Check, Table, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wdual",
    version,
    about = "Weighted magic squares, reduced zeta functions and their duals"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Any,
    Almost,
    Primitive,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Any => Filter::Any,
            FilterArg::Almost => Filter::AlmostPrimitive,
            FilterArg::Primitive => Filter::Primitive,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct SquareArgs {
    /// Row weight system `a1,...,an;h`.
    #[arg(long)]
    pub wa: String,
    /// Column weight system `b1,...,bn;k`.
    #[arg(long)]
    pub wb: String,
    /// Matrix as monomials (`x^5z, xy^3, z^2`) or integer rows (`5,0,1;1,3,0;0,0,2`).
    #[arg(long)]
    pub matrix: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a weight system to its canonical representative.
    Reduce {
        /// Row weight system `a1,...,an;h`.
        #[arg(long)]
        wa: String,
    },
    /// Validate and classify a weighted magic square.
    Check {
        /// Row weight system `a1,...,an;h`.
        #[arg(long)]
        wa: String,
        /// Omit to recover the column weights from the matrix.
        #[arg(long)]
        wb: Option<String>,
        /// Matrix as monomials or integer rows.
        #[arg(long)]
        matrix: String,
    },
    /// Enumerate weighted magic squares for a weight pair.
    Search {
        /// Row weight system `a1,...,an;h`.
        #[arg(long)]
        wa: String,
        /// Column weight system `b1,...,bn;k`.
        #[arg(long)]
        wb: String,
        /// Keep only squares of this class.
        #[arg(long, value_enum, default_value_t = FilterArg::Any)]
        filter: FilterArg,
        /// Keep only squares with a zero in every row and column.
        #[arg(long)]
        strong: bool,
        /// Stop after this many squares.
        #[arg(long, default_value_t = search::DEFAULT_CAP)]
        cap: usize,
    },
    /// Reduced zeta function of the monodromy.
    Zeta {
        #[command(flatten)]
        square: SquareArgs,
        /// Also print the Saito dual.
        #[arg(long)]
        saito_dual: bool,
        /// Print power series coefficients up to this degree.
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Milnor number, radical dimension, Picard number and value at 1.
    Invariants {
        #[command(flatten)]
        square: SquareArgs,
    },
    /// Extended Newton simplex and its polar dual.
    Polar {
        /// Row weight system `a1,...,an;h`.
        #[arg(long)]
        wa: String,
        /// With `--matrix`, also checks `A C = E + A 1`.
        #[arg(long, requires = "matrix")]
        wb: Option<String>,
        /// Matrix as monomials or integer rows.
        #[arg(long, requires = "wb")]
        matrix: Option<String>,
    },
    /// Query and verify the embedded table catalog.
    Catalog {
        /// Read the catalog from this file instead of the embedded copy.
        #[arg(long, global = true)]
        catalog_path: Option<PathBuf>,
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Recompute every claim of every entry.
    Verify,
    /// List entries.
    List,
    /// Show and verify the entries matching an index or name (`42`, `Q_17`, `T4:8`).
    Show { key: String },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, ok)) => Outcome {
            code: if ok { EXIT_OK } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn parse_weights(text: &str, flag: &str) -> anyhow::Result<WeightSystem> {
    WeightSystem::parse_allowing_zero(text).with_context(|| format!("invalid {flag}"))
}

fn parse_square(args: &SquareArgs) -> anyhow::Result<MagicSquare> {
    let wa = parse_weights(&args.wa, "--wa")?;
    let wb = parse_weights(&args.wb, "--wb")?;
    let m = parse_matrix(&args.matrix).context("invalid --matrix")?;
    MagicSquare::validate(m, wa, wb).context("not a weighted magic square")
}

fn render<T: Serialize>(
    format: Format,
    value: &T,
    human: impl FnOnce(&T) -> String,
) -> anyhow::Result<String> {
    Ok(match format {
        Format::Human => human(value),
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
    })
}

fn execute(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let f = cli.format;
    match &cli.command {
        Command::Reduce { wa } => {
            let r = ReduceReport::new(wa)?;
            Ok((render(f, &r, ReduceReport::human)?, true))
        }
        Command::Check { wa, wb, matrix } => {
            let r = CheckReport::new(wa, wb.as_deref(), matrix)?;
            let ok = r.valid;
            Ok((render(f, &r, CheckReport::human)?, ok))
        }
        Command::Search {
            wa,
            wb,
            filter,
            strong,
            cap,
        } => {
            let q = SearchQuery::new(parse_weights(wa, "--wa")?, parse_weights(wb, "--wb")?)
                .filter((*filter).into())
                .strong_only(*strong)
                .cap(*cap);
            let out = find_magic_squares(&q)?;
            let r = SearchReport {
                wa: q.wa.to_string(),
                wb: q.wb.to_string(),
                complete: out.complete,
                squares: out.squares.iter().map(SquareSummary::new).collect(),
            };
            Ok((render(f, &r, SearchReport::human)?, true))
        }
        Command::Zeta {
            square,
            saito_dual,
            expand,
        } => {
            let ms = parse_square(square)?;
            let r = ZetaReport::new(&ms, *saito_dual, *expand)?;
            Ok((render(f, &r, ZetaReport::human)?, true))
        }
        Command::Invariants { square } => {
            let ms = parse_square(square)?;
            let r = InvariantsReport::new(&ms)?;
            Ok((render(f, &r, InvariantsReport::human)?, true))
        }
        Command::Polar { wa, wb, matrix } => {
            let r = PolarReport::new(wa, wb.as_deref(), matrix.as_deref())?;
            let ok = r.closed_form_matches && r.duality_identity != Some(false);
            Ok((render(f, &r, PolarReport::human)?, ok))
        }
        Command::Catalog { catalog_path, action } => {
            let catalog = match catalog_path {
                Some(p) => Catalog::from_path(p)?,
                None => Catalog::embedded()?,
            };
            match action {
                CatalogAction::Verify => {
                    let v = verify_catalog(&catalog);
                    let ok = v.passed();
                    Ok((render(f, &v, human_verification)?, ok))
                }
                CatalogAction::List => {
                    let rows: Vec<ListRow> = catalog
                        .entries()
                        .iter()
                        .map(|e| ListRow {
                            table: e.record.table,
                            index: e.record.index,
                            name: e.record.name.clone(),
                            weights: e.record.weights.clone(),
                            monomials: e.record.monomials.clone(),
                            partner: catalog.partner(e).label(),
                        })
                        .collect();
                    Ok((render(f, &rows, |rows| human_list(rows))?, true))
                }
                CatalogAction::Show { key } => {
                    let hits = catalog.lookup(key)?;
                    let reports: Vec<VerificationReport> =
                        hits.iter().map(|e| verify_entry(&catalog, e)).collect();
                    let ok = reports.iter().all(VerificationReport::passed);
                    Ok((render(f, &reports, |r| r.iter().map(human_report).collect())?, ok))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input: String,
    pub reduced: String,
    /// `reduced.weights[i] = input.weights[permutation[i]] / scale`.
    pub permutation: Vec<usize>,
    pub scale: i64,
    pub virtual_weight: i64,
    pub calabi_yau: bool,
}

impl ReduceReport {
    fn new(text: &str) -> anyhow::Result<Self> {
        let r = parse_and_reduce(text).context("invalid --wa")?;
        Ok(Self {
            input: text.trim().to_string(),
            reduced: r.system.to_string(),
            permutation: r.permutation,
            scale: r.scale,
            virtual_weight: r.system.virtual_weight(),
            calabi_yau: r.system.is_calabi_yau(),
        })
    }

    fn human(&self) -> String {
        format!(
            "reduced      {}\npermutation  {:?}\nscale        {}\na0           {}\ncalabi-yau   {}\n",
            self.reduced, self.permutation, self.scale, self.virtual_weight, self.calabi_yau
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSummary {
    pub monomials: String,
    pub rows: Vec<Vec<i64>>,
    pub determinant: i64,
    pub classification: String,
    pub strong: bool,
}

impl SquareSummary {
    fn new(ms: &MagicSquare) -> Self {
        let r = ms.classify();
        Self {
            monomials: format_monomials(ms.entries()),
            rows: ms.entries().to_rows(),
            determinant: r.determinant,
            classification: r.classification.to_string(),
            strong: r.strong,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub wa: String,
    pub wb: Option<String>,
    pub wb_recovered: bool,
    pub matrix: String,
    pub rows: Vec<Vec<i64>>,
    pub valid: bool,
    pub error: Option<String>,
    pub determinant: Option<i64>,
    pub classification: Option<String>,
    pub primitive: Option<bool>,
    pub almost_primitive: Option<bool>,
    pub strong: Option<bool>,
    pub rows_with_zero: Option<Vec<bool>>,
    pub columns_with_zero: Option<Vec<bool>>,
    pub determinant_identity: Option<bool>,
}

impl CheckReport {
    fn new(wa: &str, wb: Option<&str>, matrix: &str) -> anyhow::Result<Self> {
        let wa = parse_weights(wa, "--wa")?;
        let m = parse_matrix(matrix).context("invalid --matrix")?;
        let mut report = Self {
            wa: wa.to_string(),
            wb: None,
            wb_recovered: wb.is_none(),
            matrix: format_monomials(&m),
            rows: m.to_rows(),
            valid: false,
            error: None,
            determinant: None,
            classification: None,
            primitive: None,
            almost_primitive: None,
            strong: None,
            rows_with_zero: None,
            columns_with_zero: None,
            determinant_identity: None,
        };
        let wb = match wb {
            Some(text) => parse_weights(text, "--wb")?,
            None => match magic::recover_weights(&m) {
                Ok(rec) if *rec.row_weights() == wa.normalized() => rec.column_weights().clone(),
                Ok(rec) => {
                    report.error = Some(format!("matrix determines row weights {}", rec.row_weights()));
                    return Ok(report);
                }
                Err(e) => {
                    report.error = Some(format!("cannot recover --wb: {e}"));
                    return Ok(report);
                }
            },
        };
        report.wb = Some(wb.to_string());
        match MagicSquare::validate(m, wa, wb) {
            Ok(ms) => {
                let r = ms.classify();
                report.valid = true;
                report.determinant = Some(r.determinant);
                report.classification = Some(r.classification.to_string());
                report.primitive = Some(r.primitive);
                report.almost_primitive = Some(r.almost_primitive);
                report.strong = Some(r.strong);
                report.rows_with_zero = Some(r.rows_with_zero);
                report.columns_with_zero = Some(r.columns_with_zero);
                report.determinant_identity = Some(ms.determinant_identity_holds());
            }
            Err(e) => report.error = Some(e.to_string()),
        }
        Ok(report)
    }

    fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "wa              {}", self.wa);
        if let Some(wb) = &self.wb {
            let how = if self.wb_recovered { " (recovered)" } else { "" };
            let _ = writeln!(s, "wb              {wb}{how}");
        }
        let _ = writeln!(s, "matrix          {}", self.matrix);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "invalid         {e}");
            return s;
        }
        let _ = writeln!(s, "determinant     {}", self.determinant.unwrap_or_default());
        let _ = writeln!(
            s,
            "classification  {}",
            self.classification.as_deref().unwrap_or("-")
        );
        let _ = writeln!(s, "strong          {}", self.strong.unwrap_or_default());
        if let (Some(r), Some(c)) = (&self.rows_with_zero, &self.columns_with_zero) {
            let _ = writeln!(s, "rows with 0     {}", bits(r));
            let _ = writeln!(s, "columns with 0  {}", bits(c));
        }
        s
    }
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub wa: String,
    pub wb: String,
    pub complete: bool,
    pub squares: Vec<SquareSummary>,
}

impl SearchReport {
    fn human(&self) -> String {
        let mut s = format!(
            "{} square(s) for ({}) x ({})\n",
            self.squares.len(),
            self.wa,
            self.wb
        );
        for q in &self.squares {
            let strong = if q.strong { ", strong" } else { "" };
            let _ = writeln!(
                s,
                "  {}  det {}, {}{strong}",
                q.monomials, q.determinant, q.classification
            );
        }
        if !self.complete {
            s.push_str("stopped at the cap; the list is incomplete\n");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductView {
    pub text: String,
    /// `(order, exponent)` pairs in ascending order.
    pub factors: Vec<(u64, i64)>,
    pub degree: i64,
    pub exponent_sum: i64,
}

impl ProductView {
    fn new(p: &CyclotomicProduct) -> Self {
        Self {
            text: p.to_string(),
            factors: p.factors().collect(),
            degree: p.degree(),
            exponent_sum: p.exponent_sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetView {
    pub columns: Vec<usize>,
    pub rows: Vec<usize>,
    pub a_j: i64,
    pub det: i64,
    pub order: u64,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub special_subsets: Vec<SubsetView>,
    pub zeta: ProductView,
    pub characteristic_polynomial: ProductView,
    pub saito_dual: Option<ProductView>,
    pub series: Option<Vec<i64>>,
}

impl ZetaReport {
    fn new(ms: &MagicSquare, dual: bool, expand: Option<usize>) -> anyhow::Result<Self> {
        let subsets = special_subsets(ms)?;
        let z = reduced_zeta(ms)?;
        let phi = characteristic_polynomial(ms)?;
        let saito = if dual {
            Some(ProductView::new(&saito_dual(
                &z,
                ms.row_weights().degree() as u64,
            )?))
        } else {
            None
        };
        Ok(Self {
            special_subsets: subsets
                .iter()
                .map(|s| SubsetView {
                    // 1-based for display
                    columns: s.columns.iter().map(|c| c + 1).collect(),
                    rows: s.rows.iter().map(|r| r + 1).collect(),
                    a_j: s.a_j,
                    det: s.det,
                    order: s.order,
                    exponent: s.exponent,
                })
                .collect(),
            zeta: ProductView::new(&z),
            characteristic_polynomial: ProductView::new(&phi),
            saito_dual: saito,
            series: expand.map(|d| z.expand_series(d)),
        })
    }

    fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "special subsets (J; I; a_J; |det C_IJ|; order; exponent)");
        for j in &self.special_subsets {
            let _ = writeln!(
                s,
                "  {:?}; {:?}; {}; {}; {}; {:+}",
                j.columns, j.rows, j.a_j, j.det, j.order, j.exponent
            );
        }
        let _ = writeln!(s, "zeta        {}", self.zeta.text);
        let _ = writeln!(s, "phi         {}", self.characteristic_polynomial.text);
        if let Some(d) = &self.saito_dual {
            let _ = writeln!(s, "saito dual  {}", d.text);
        }
        if let Some(c) = &self.series {
            let _ = writeln!(s, "series      {c:?}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub mu: i64,
    pub mu0: i64,
    pub rho: Option<i64>,
    /// Value of the reduced zeta function at `t = 1`, when `mu0 = 0`.
    pub value_at_one: Option<String>,
    pub discriminant: Option<String>,
}

impl InvariantsReport {
    fn new(ms: &MagicSquare) -> anyhow::Result<Self> {
        let inv = lattice_invariants(ms)?;
        let at_one = evaluate_at_one(&reduced_zeta(ms)?, inv.rho).ok();
        Ok(Self {
            mu: inv.mu,
            mu0: inv.mu0,
            rho: inv.rho,
            value_at_one: at_one.map(|v| v.value.to_string()),
            discriminant: at_one.and_then(|v| v.discriminant).map(|d| d.to_string()),
        })
    }

    fn human(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        format!(
            "mu            {}\nmu0           {}\nrho           {}\nzeta(1)       {}\ndiscriminant  {}\n",
            self.mu,
            self.mu0,
            self.rho.map_or("-".into(), |r| r.to_string()),
            opt(&self.value_at_one),
            opt(&self.discriminant)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarReport {
    pub extended_diagram: Vec<Vec<String>>,
    pub polar_dual: Vec<Vec<String>>,
    pub closed_form_matches: bool,
    pub duality_identity: Option<bool>,
}

fn vertex_strings(s: &RationalSimplex) -> Vec<Vec<String>> {
    s.vertices()
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .collect()
}

impl PolarReport {
    fn new(wa: &str, wb: Option<&str>, matrix: Option<&str>) -> anyhow::Result<Self> {
        let w = parse_weights(wa, "--wa")?;
        let s = extended_diagram(&w)?;
        let d = polar_dual(&s)?;
        let a0 = w.virtual_weight();
        let n = w.len();
        let mut closed: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(i64::from(i == j)))
                    .collect()
            })
            .collect();
        closed.push(w.weights().iter().map(|&x| Rational::new(-x, a0)).collect());
        let duality_identity = match (wb, matrix) {
            (Some(wb), Some(m)) => {
                let ms = parse_square(&SquareArgs {
                    wa: wa.to_string(),
                    wb: wb.to_string(),
                    matrix: m.to_string(),
                })?;
                Some(verify_duality_identity(&ms)?)
            }
            _ => None,
        };
        Ok(Self {
            extended_diagram: vertex_strings(&s),
            closed_form_matches: d.same_vertex_set(&RationalSimplex::new(closed)),
            polar_dual: vertex_strings(&d),
            duality_identity,
        })
    }

    fn human(&self) -> String {
        let fmt = |vs: &Vec<Vec<String>>| {
            vs.iter()
                .map(|v| format!("({})", v.join(",")))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!(
            "extended diagram  {}\npolar dual        {}\nclosed form       {}\n",
            fmt(&self.extended_diagram),
            fmt(&self.polar_dual),
            if self.closed_form_matches {
                "matches"
            } else {
                "DIFFERS"
            }
        );
        if let Some(b) = self.duality_identity {
            let _ = writeln!(s, "A C = E + A 1     {b}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListRow {
    pub table: Table,
    pub index: Option<u32>,
    pub name: Option<String>,
    pub weights: String,
    pub monomials: String,
    pub partner: String,
}

fn human_list(rows: &[ListRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(
            s,
            "{:<9} {:>3}  {:<18} {:<14} {:<24} -> {}",
            r.table.to_string(),
            r.index.map_or(String::new(), |i| i.to_string()),
            r.name.as_deref().unwrap_or(""),
            r.weights,
            r.monomials,
            r.partner
        );
    }
    s
}

fn human_check(c: &Check) -> String {
    format!(
        "    [{}] {:<26} {}\n",
        if c.passed { "ok" } else { "FAIL" },
        c.name,
        c.detail
    )
}

fn human_report(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}  ({}) x ({})  {}  partner {}\n",
        r.label, r.wa, r.wb, r.monomials, r.partner
    );
    if let (Some(d), Some(c), Some(st)) = (r.determinant, &r.classification, r.strong) {
        let _ = writeln!(s, "    det {d}, {c}, strong {st}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "    note: {n}");
    }
    for c in &r.checks {
        s.push_str(&human_check(c));
    }
    s
}

fn human_verification(v: &crate::catalog::CatalogVerification) -> String {
    let mut s = String::new();
    for r in v.reports.iter().filter(|r| !r.passed()) {
        s.push_str(&human_report(r));
    }
    for row in v.fuchsian.iter().filter(|r| !r.passed()) {
        let _ = writeln!(s, "{} / {}", row.left, row.right);
        for c in &row.checks {
            s.push_str(&human_check(c));
        }
    }
    for t in &v.summary {
        let _ = writeln!(
            s,
            "{:<9} {:>3}/{:<3} entries verified",
            t.table.to_string(),
            t.passed,
            t.entries
        );
    }
    let _ = writeln!(
        s,
        "Fuchsian  {:>3}/{:<3} rows reproduced",
        v.fuchsian_passed, v.fuchsian_rows
    );
    s.push_str(if v.passed() {
        "all claims verified\n"
    } else {
        "verification FAILED\n"
    });
    s
}

/// Re-validates a structured `check` report and returns its classification.
pub fn revalidate(report: &CheckReport) -> anyhow::Result<String> {
    let wb = report
        .wb
        .as_deref()
        .ok_or_else(|| anyhow!("report has no column weights"))?;
    let m = IntMatrix::from_rows(&report.rows).ok_or_else(|| anyhow!("rows are not square"))?;
    let ms = MagicSquare::validate(m, parse_weights(&report.wa, "wa")?, parse_weights(wb, "wb")?)?;
    if format_monomials(ms.entries()) != report.matrix {
        bail!("monomials and rows disagree");
    }
    Ok(ms.classify().classification.to_string())
}
