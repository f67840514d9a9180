//! Text, JSON and CSV rendering of command results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use koecher::identities::{BenchRecord, IdentityEntry, ParamKind};
use koecher::markov_apery::{ConjectureAudit, PcPolynomial};
use koecher::{BigReal, IdentityReport, PrecisionContext, SeriesValue};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One coefficient of an expansion next to its zeta reference.
#[derive(Debug, Serialize)]
pub struct ExpandRow {
    pub m: usize,
    pub s: String,
    pub coefficient: String,
    pub reference: String,
    pub abs_diff: String,
    pub err: String,
    pub terms_used: u64,
    pub tail_rule: String,
    pub pass: bool,
}

impl ExpandRow {
    pub fn new(m: usize, s: String, c: &SeriesValue, reference: &BigReal, ctx: &PrecisionContext) -> Self {
        let sig = ctx.target_digits as usize + 1;
        let diff = c.value.abs_diff(reference);
        let err = c.value.combined_err(reference);
        ExpandRow {
            m,
            s,
            coefficient: c.value.to_sci_string(sig),
            reference: reference.to_sci_string(sig),
            abs_diff: diff.to_sci_string(3),
            err: err.to_sci_string(3),
            terms_used: c.terms_used,
            tail_rule: c.rule.to_string(),
            pass: diff <= err,
        }
    }
}

/// One `P_c` row with its audit columns.
#[derive(Debug, Serialize)]
pub struct PcRow {
    pub c: u32,
    /// Coefficients low to high, comma separated.
    pub coefficients: String,
    pub degree: usize,
    pub leading: String,
    pub constant: String,
    pub degree_ok: bool,
    pub leading_ok: bool,
    pub constant_ok: bool,
    pub verdict: String,
}

impl PcRow {
    pub fn new(p: &PcPolynomial, a: &ConjectureAudit) -> Self {
        let coefficients: Vec<String> = p.poly.coeffs().iter().map(|c| c.to_string()).collect();
        PcRow {
            c: p.c,
            coefficients: coefficients.join(","),
            degree: a.degree,
            leading: a.leading.to_string(),
            constant: a.constant.to_string(),
            degree_ok: a.degree_ok,
            leading_ok: a.leading_ok,
            constant_ok: a.constant_ok,
            verdict: a.verdict().to_string(),
        }
    }
}

#[derive(Serialize)]
struct ListRow<'a> {
    id: &'a str,
    params: String,
    binding: &'a str,
    description: &'a str,
}

impl<'a> ListRow<'a> {
    fn new(e: &'a IdentityEntry) -> Self {
        let params: Vec<String> = e
            .params
            .iter()
            .map(|p| match p.kind {
                ParamKind::Integer { min, max } => format!("{}:int[{min}..={max}]", p.name),
                ParamKind::Rational { lower, upper, lower_inclusive, upper_inclusive } => format!(
                    "{}:real{}{lower},{upper}{}",
                    p.name,
                    if lower_inclusive { "[" } else { "(" },
                    if upper_inclusive { "]" } else { ")" }
                ),
            })
            .collect();
        ListRow { id: e.id, params: params.join(" "), binding: e.binding, description: e.description }
    }
}

/// Output destination with a fixed format.
pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
    csv_header_done: bool,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { out, format, csv_header_done: false })
    }

    pub fn finish(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    fn json<T: Serialize>(&mut self, v: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, v)?;
        writeln!(self.out)
    }

    fn csv_record(&mut self, header: &[&str], fields: &[String]) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        if !self.csv_header_done {
            w.write_record(header)?;
            self.csv_header_done = true;
        }
        w.write_record(fields)?;
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        self.out.write_all(&bytes)
    }

    pub fn report(&mut self, r: &IdentityReport) -> io::Result<()> {
        match self.format {
            Format::Text => {
                writeln!(self.out, "{r}")?;
                writeln!(self.out, "  lhs = {}  (err {})", r.lhs, r.lhs_err)?;
                writeln!(self.out, "  rhs = {}  (err {})", r.rhs, r.rhs_err)?;
                if let Some(n) = &r.note {
                    writeln!(self.out, "  note: {n}")?;
                }
                Ok(())
            }
            Format::Json => self.json(r),
            Format::Csv => {
                let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                self.csv_record(
                    &[
                        "identity_id", "parameters", "digits", "lhs", "rhs", "lhs_err", "rhs_err",
                        "abs_diff", "tolerance", "terms_used", "tail_rule", "elapsed_ms", "pass",
                        "status", "note",
                    ],
                    &[
                        r.identity_id.clone(),
                        params.join(";"),
                        r.digits.to_string(),
                        r.lhs.clone(),
                        r.rhs.clone(),
                        r.lhs_err.clone(),
                        r.rhs_err.clone(),
                        r.abs_diff.clone(),
                        r.tolerance.clone(),
                        r.terms_used.to_string(),
                        r.tail_rule.to_string(),
                        r.elapsed_ms.to_string(),
                        r.pass.to_string(),
                        r.status.to_string(),
                        r.note.clone().unwrap_or_default(),
                    ],
                )
            }
        }
    }

    pub fn bench(&mut self, b: &BenchRecord) -> io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{b}"),
            Format::Json => self.json(b),
            Format::Csv => {
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                self.csv_record(
                    &[
                        "identity_id", "digits", "accelerated_terms", "accelerated_ms",
                        "direct_terms_estimate", "direct_terms", "direct_ms", "feasible",
                        "acceleration_ratio",
                    ],
                    &[
                        b.identity_id.clone(),
                        b.digits.to_string(),
                        b.accelerated_terms.to_string(),
                        b.accelerated_ms.to_string(),
                        format!("{:e}", b.direct_terms_estimate),
                        opt(b.direct_terms),
                        opt(b.direct_ms),
                        b.feasible.to_string(),
                        format!("{:e}", b.acceleration_ratio),
                    ],
                )
            }
        }
    }

    pub fn list(&mut self, entries: &[IdentityEntry]) -> io::Result<()> {
        for e in entries {
            match self.format {
                Format::Text => {
                    let row = ListRow::new(e);
                    writeln!(self.out, "{:<11} {:<28} {}", row.id, row.params, row.description)?;
                }
                Format::Json => self.json(e)?,
                Format::Csv => {
                    let row = ListRow::new(e);
                    self.csv_record(
                        &["id", "params", "binding", "description"],
                        &[row.id.into(), row.params, row.binding.into(), row.description.into()],
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn expand(&mut self, rows: &[ExpandRow]) -> io::Result<()> {
        if self.format == Format::Text {
            writeln!(self.out, "{:>3}  {:>6}  {:<40}  {:<40}  {:<10}  tail", "m", "s", "coefficient", "reference", "diff")?;
        }
        for r in rows {
            match self.format {
                Format::Text => writeln!(
                    self.out,
                    "{:>3}  {:>6}  {:<40}  {:<40}  {:<10}  {} ({} terms)",
                    r.m, r.s, r.coefficient, r.reference, r.abs_diff, r.tail_rule, r.terms_used
                )?,
                Format::Json => self.json(r)?,
                Format::Csv => self.csv_record(
                    &["m", "s", "coefficient", "reference", "abs_diff", "err", "terms_used", "tail_rule", "pass"],
                    &[
                        r.m.to_string(),
                        r.s.clone(),
                        r.coefficient.clone(),
                        r.reference.clone(),
                        r.abs_diff.clone(),
                        r.err.clone(),
                        r.terms_used.to_string(),
                        r.tail_rule.clone(),
                        r.pass.to_string(),
                    ],
                )?,
            }
        }
        Ok(())
    }

    pub fn pc_table(&mut self, rows: &[PcRow]) -> io::Result<()> {
        if self.format == Format::Text {
            writeln!(self.out, "{:>2}  {:>6}  {:>7}  {:>20}  {:<9}  coefficients (low to high)", "c", "degree", "leading", "constant", "audit")?;
        }
        for r in rows {
            match self.format {
                Format::Text => writeln!(
                    self.out,
                    "{:>2}  {:>6}  {:>7}  {:>20}  {:<9}  {}",
                    r.c, r.degree, r.leading, r.constant, r.verdict, r.coefficients
                )?,
                Format::Json => self.json(r)?,
                Format::Csv => self.csv_record(
                    &["c", "coefficients", "degree", "leading", "constant", "degree_ok", "leading_ok", "constant_ok", "verdict"],
                    &[
                        r.c.to_string(),
                        r.coefficients.clone(),
                        r.degree.to_string(),
                        r.leading.clone(),
                        r.constant.clone(),
                        r.degree_ok.to_string(),
                        r.leading_ok.to_string(),
                        r.constant_ok.to_string(),
                        r.verdict.clone(),
                    ],
                )?,
            }
        }
        Ok(())
    }
}
