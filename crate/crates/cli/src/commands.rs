use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use twedge::edgeworth::{goe_sq_expansion, goe_sq_expansion_alt, gue_expansion, ExpansionValue};
use twedge::finite_n::{finite_n_row, FiniteNRow};
use twedge::fredholm::DEFAULT_NODES;
use twedge::limits::LimitTables;
use twedge::mc_harness::{
    model_cdf, rate_fit, sample_max, write_samples, Beta, EcdfSummary, EnsembleParams, LimitModel, McSummaryRow,
};
use twedge::output::{format_real, CsvRecord};

use crate::config::{Command, Ensemble, Format, GoeForm, RunConfig};
use crate::error::CliError;
use crate::validate;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Limits => limits(cfg),
        Command::Expand => expand(cfg),
        Command::FiniteN => finite_n(cfg),
        Command::Mc => mc(cfg),
        Command::Validate => validate::run(cfg),
        Command::RateFit => rate_fit_command(cfg),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|source| CliError::Output {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

/// Writes rows as CSV or JSON to the configured output.
pub fn emit<R: CsvRecord + Serialize>(cfg: &RunConfig, rows: &[R]) -> Result<(), CliError> {
    let out = open_output(cfg.output.as_deref())?;
    let wrap = |source| CliError::Output {
        path: cfg.output.clone().unwrap_or_else(|| "<stdout>".into()),
        source,
    };
    match cfg.format {
        Format::Csv => twedge::output::write_csv(out, rows).map_err(wrap),
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| wrap(e.into()))?;
            writeln!(out).and_then(|_| out.flush()).map_err(wrap)
        }
    }
}

fn tables_for(m: usize) -> Result<std::borrow::Cow<'static, LimitTables>, CliError> {
    if m == DEFAULT_NODES {
        Ok(std::borrow::Cow::Borrowed(LimitTables::shared()?))
    } else {
        Ok(std::borrow::Cow::Owned(LimitTables::build(m)?))
    }
}

fn limits(cfg: &RunConfig) -> Result<(), CliError> {
    let r = cfg.s_range;
    let points = r.points();
    let hi = *points.last().expect("validated nonempty");
    let table = LimitTables::build_range(r.min, hi, r.step, cfg.m)?;
    emit(cfg, table.points())
}

fn expand(cfg: &RunConfig) -> Result<(), CliError> {
    let tables = tables_for(cfg.m)?;
    let mut rows: Vec<ExpansionValue> = Vec::new();
    let mut ns = cfg.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        for s in cfg.s_range.points() {
            let v = match (cfg.ensemble, cfg.goe_form) {
                (Ensemble::Gue, _) => gue_expansion(&tables, n, cfg.c, s)?,
                (Ensemble::Goe, GoeForm::Standard) => goe_sq_expansion(&tables, n, cfg.c, s)?,
                (Ensemble::Goe, GoeForm::Bracket) => goe_sq_expansion_alt(&tables, n, cfg.c, s)?,
            };
            rows.push(v);
        }
    }
    emit(cfg, &rows)
}

fn finite_n(cfg: &RunConfig) -> Result<(), CliError> {
    let mut ns = cfg.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    let jobs: Vec<(usize, f64)> = ns
        .iter()
        .flat_map(|&n| cfg.s_range.points().into_iter().map(move |s| (n, s)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, s)| finite_n_row(n, cfg.c, s, cfg.m))
        .collect::<twedge::Result<Vec<FiniteNRow>>>()?;
    emit(cfg, &rows)
}

fn mc(cfg: &RunConfig) -> Result<(), CliError> {
    let tables = tables_for(cfg.m)?;
    let beta = Beta::from_index(cfg.beta)?;
    let mut ns = cfg.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    for n in ns {
        let params = EnsembleParams::new(beta, n, cfg.count, cfg.seed).with_model(cfg.model);
        let samples = sample_max(&params)?;
        if let Some(path) = &cfg.dump {
            let f = File::create(path).map_err(|source| CliError::Output {
                path: path.clone(),
                source,
            })?;
            write_samples(BufWriter::new(f), &samples).map_err(|source| CliError::Output {
                path: path.clone(),
                source,
            })?;
        }
        let ecdf = EcdfSummary::new(samples)?;
        for model in [LimitModel::Leading, LimitModel::Corrected] {
            let d = ecdf.checked_sup_distance(|x| model_cdf(&tables, beta, n, cfg.c, model, x))?;
            rows.push(McSummaryRow {
                n,
                c: cfg.c,
                beta: cfg.beta,
                count: cfg.count,
                seed: cfg.seed,
                model: model.name().to_string(),
                sup_distance: d,
            });
        }
    }
    emit(cfg, &rows)
}

/// One log-log fit per (c, s) group of a finite-n CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFitRow {
    pub ensemble: String,
    pub c: f64,
    pub s: f64,
    pub points: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl CsvRecord for RateFitRow {
    fn header() -> &'static [&'static str] {
        &["ensemble", "c", "s", "points", "slope", "intercept", "r2"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.ensemble.clone(),
            format_real(self.c),
            format_real(self.s),
            self.points.to_string(),
            format_real(self.slope),
            format_real(self.intercept),
            format_real(self.r2),
        ]
    }
}

fn column(header: &[&str], name: &str) -> Result<usize, CliError> {
    header
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| CliError::Config(format!("input CSV has no column {name:?}")))
}

/// Reads the finite-n CSV and fits |exact − expansion| against n for each
/// (c, s), using the full expansion of the chosen ensemble.
fn rate_fit_command(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg.input.as_ref().expect("validated");
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.clone(),
        source,
    })?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Config("input CSV is empty".into()))?
        .split(',')
        .collect();
    let (i_n, i_c, i_s) = (column(&header, "n")?, column(&header, "c")?, column(&header, "s")?);
    let i_exact = match cfg.ensemble {
        Ensemble::Goe => column(&header, "F_n1_sq_exact")?,
        Ensemble::Gue => column(&header, "F_n2_exact")?,
    };
    let tables = tables_for(cfg.m)?;
    let mut groups: BTreeMap<(u64, u64), (f64, f64, Vec<usize>, Vec<f64>)> = BTreeMap::new();
    for (k, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        let bad = |what: &str| CliError::Config(format!("input row {}: bad {what}", k + 2));
        let get = |i: usize, what: &str| -> Result<f64, CliError> {
            f.get(i).and_then(|v| v.trim().parse::<f64>().ok()).ok_or_else(|| bad(what))
        };
        let n = f.get(i_n).and_then(|v| v.trim().parse::<usize>().ok()).ok_or_else(|| bad("n"))?;
        let (c, s, exact) = (get(i_c, "c")?, get(i_s, "s")?, get(i_exact, "exact value")?);
        let model = match cfg.ensemble {
            Ensemble::Goe => goe_sq_expansion(&tables, n, c, s)?.total,
            Ensemble::Gue => gue_expansion(&tables, n, c, s)?.total,
        };
        let entry = groups
            .entry((c.to_bits(), s.to_bits()))
            .or_insert_with(|| (c, s, Vec::new(), Vec::new()));
        entry.2.push(n);
        entry.3.push((exact - model).abs());
    }
    let mut rows = Vec::new();
    for (c, s, ns, errs) in groups.into_values() {
        let fit = rate_fit(&ns, &errs)?;
        rows.push(RateFitRow {
            ensemble: match cfg.ensemble {
                Ensemble::Goe => "goe".into(),
                Ensemble::Gue => "gue".into(),
            },
            c,
            s,
            points: ns.len(),
            slope: fit.slope,
            intercept: fit.intercept,
            r2: fit.r2,
        });
    }
    rows.sort_by(|a, b| a.c.total_cmp(&b.c).then(a.s.total_cmp(&b.s)));
    emit(cfg, &rows)
}
