//! One function per verb; each returns the table to emit.

use anyhow::{bail, Result};
use serde_json::Value;

use threegap::cf::convergents;
use threegap::metric::{
    bb_census, digit_sum_report, first_digit_census, levy_report, sample_alpha, two_gap_frequency_report,
    MetricReport, SampleSpec,
};
use threegap::oracle::{analyze_with, surrogate_with_offset};
use threegap::predictor::{frequency_trace, predict, two_gap_set};
use threegap::quadratic::{period_decomposition, q_closed_form};
use threegap::{CfExpansion, Error, Tail};

use crate::args::{Alpha, IndexRange, Statistic};
use crate::table::{decimal, Cell, Table};

pub fn expand(alpha: &Alpha, n: Option<usize>) -> Result<Table> {
    let cf = &alpha.cf;
    let mut t = Table::new(&["index", "digit", "part"]);
    let r = cf.preperiod_len();
    let default_len = match cf.tail() {
        Tail::Periodic(p) => r + p.len(),
        _ => cf.head().len(),
    };
    let len = n.unwrap_or(default_len);
    for m in 1..=len {
        let digit = cf.try_digit(m).map_err(Error::from)?;
        let part = match cf.tail() {
            Tail::Finite => "finite",
            Tail::Prefix => "prefix",
            Tail::Periodic(_) if m <= r => "preperiod",
            Tail::Periodic(_) => "period",
        };
        t.push(vec![Cell::int(m), Cell::int(digit.clone()), Cell::text(part)]);
    }
    t.summary.insert("alpha".into(), Value::from(alpha.source.to_string()));
    t.summary.insert("expansion".into(), Value::from(cf.to_string()));
    Ok(t)
}

pub fn convergent_table(alpha: &Alpha, n: usize) -> Result<Table> {
    let mut t = Table::new(&["n", "p", "q"]);
    for c in convergents(&alpha.cf, n).map_err(Error::from)? {
        t.push(vec![Cell::int(c.index), Cell::int(c.p), Cell::int(c.q)]);
    }
    Ok(t)
}

pub fn gaps(alpha: &Alpha, n: u64, refine: usize, digits: usize) -> Result<Table> {
    let surrogate = surrogate_with_offset(&alpha.cf, n, refine).map_err(Error::from)?;
    let report = analyze_with(surrogate, n).report;
    let mut t = Table::new(&["N", "distinct_count", "gap_value_exact", "gap_value_decimal", "multiplicity"]);
    for g in &report.gaps {
        t.push(vec![
            Cell::int(n),
            Cell::int(report.distinct_count()),
            Cell::exact(&g.length),
            Cell::text(decimal(&g.length, digits)),
            Cell::int(g.multiplicity),
        ]);
    }
    let s = &report.surrogate;
    t.summary.insert("surrogate".into(), Value::from(format!("{}/{}", s.convergent.p, s.convergent.q)));
    t.summary.insert("surrogate_index".into(), Value::from(s.convergent.index as i64));
    t.summary.insert("surrogate_exact".into(), Value::from(s.exact));
    Ok(t)
}

pub fn predictions(alpha: &Alpha, points: impl IntoIterator<Item = u64>) -> Result<Table> {
    let mut t = Table::new(&["N", "scenario", "n", "i", "u2", "uN", "is_two_gap"]);
    for n in points {
        let p = predict(&alpha.cf, n).map_err(Error::from)?;
        t.push(vec![
            Cell::int(n),
            Cell::text(p.scenario.as_str()),
            Cell::int(p.index),
            Cell::opt_int(p.sub_index),
            Cell::opt_int(p.u2),
            Cell::int(p.u_last),
            Cell::Bool(p.is_two_gap),
        ]);
    }
    Ok(t)
}

pub fn twogaps(alpha: &Alpha, nmax: u64) -> Result<Table> {
    let mut t = Table::new(&["N"]);
    for n in two_gap_set(&alpha.cf, nmax).map_err(Error::from)? {
        t.push(vec![Cell::int(n)]);
    }
    Ok(t)
}

pub fn freq(alpha: &Alpha, checkpoints: &[u64], digits: usize) -> Result<Table> {
    let trace = frequency_trace(&alpha.cf, checkpoints).map_err(Error::from)?;
    let mut t = Table::new(&["N", "count", "ratio_exact", "ratio_decimal", "upper_bound_exact"]);
    for row in &trace.rows {
        t.push(vec![
            Cell::int(row.n_points),
            Cell::int(row.count),
            Cell::exact(&row.ratio),
            Cell::text(decimal(&row.ratio, digits)),
            Cell::exact(&row.upper_bound),
        ]);
    }
    Ok(t)
}

pub fn closed_form(alpha: &Alpha, nmax: usize) -> Result<Table> {
    let cf = &alpha.cf;
    if !cf.is_periodic() {
        bail!(Error::from(threegap::SurdError::RequiresPeriodic));
    }
    let r = cf.preperiod_len();
    let recurrence = convergents(cf, nmax.saturating_sub(1)).map_err(Error::from)?;
    let mut t = Table::new(&["n", "j", "l", "q_closed_form", "q_recurrence", "match"]);
    for n in r + 1..=nmax {
        let dec = period_decomposition(cf, n).map_err(Error::from)?;
        let closed = q_closed_form(cf, n).map_err(Error::from)?;
        let rec = recurrence[n - 1].q.clone();
        let ok = closed == rec;
        t.push(vec![
            Cell::int(n),
            Cell::int(dec.j),
            Cell::int(dec.l),
            Cell::int(closed),
            Cell::int(rec),
            Cell::Bool(ok),
        ]);
    }
    Ok(t)
}

pub fn draw(spec: &SampleSpec) -> Result<Vec<CfExpansion>> {
    let set = sample_alpha(spec).map_err(Error::from)?;
    if set.redraws > 0 {
        eprintln!("[mc] {} samples redrawn by the precision guard", set.redraws);
    }
    Ok(set.samples)
}

fn summarize(t: &mut Table, report: &MetricReport) {
    let num = |x: Option<f64>| x.map_or(Value::Null, Value::from);
    t.summary.insert("statistic".into(), Value::from(report.statistic.clone()));
    t.summary.insert("mean".into(), num(report.mean));
    t.summary.insert("std_dev".into(), num(report.std_dev));
    t.summary.insert("reference".into(), num(report.reference));
    t.summary.insert("tolerance".into(), num(report.tolerance));
    t.summary.insert("skipped".into(), Value::from(report.skipped));
    if let Some(ok) = report.within_tolerance() {
        t.summary.insert("within_tolerance".into(), Value::from(ok));
    }
}

pub fn mc_levy(samples: &[CfExpansion], n: usize) -> Result<Table> {
    let report = levy_report(samples, n);
    let mut t = Table::new(&["sample_id", "n", "ln_qn_over_n"]);
    for (id, cf) in samples.iter().enumerate() {
        if let Ok(v) = threegap::metric::levy_statistic(cf, n) {
            t.push(vec![Cell::int(id), Cell::int(n), Cell::Float(v)]);
        }
    }
    if let Some(mean) = report.mean {
        eprintln!(
            "[mc-levy] mean ln(q_{n})/{n} = {mean:.6} over {} samples (reference {:.5})",
            report.values.len(),
            threegap::metric::LEVY_CONSTANT
        );
    }
    summarize(&mut t, &report);
    Ok(t)
}

pub fn mc_census(samples: &[CfExpansion], statistic: Statistic, range: &IndexRange, k: u64) -> Result<Table> {
    let hi = *range.0.end();
    let t = match statistic {
        Statistic::Bb => {
            let mut t = Table::new(&["n_lo", "n_hi", "samples", "skipped", "hits", "fraction"]);
            for lo in range.0.clone() {
                let report = bb_census(samples, lo..=hi);
                let hits = report.values.iter().filter(|&&v| v > 0.0).count();
                t.push(vec![
                    Cell::int(lo),
                    Cell::int(hi),
                    Cell::int(report.values.len()),
                    Cell::int(report.skipped),
                    Cell::int(hits),
                    report.mean.map_or(Cell::Empty, Cell::Float),
                ]);
            }
            t
        }
        Statistic::FirstDigit => {
            if k == 0 {
                bail!(Error::from(threegap::CfError::InvalidInput("k must be positive".into())));
            }
            let mut t = Table::new(&["k", "samples", "skipped", "fraction", "reference", "tolerance", "within_tolerance"]);
            for d in 1..=k {
                let report = first_digit_census(samples, d);
                t.push(vec![
                    Cell::int(d),
                    Cell::int(report.values.len()),
                    Cell::int(report.skipped),
                    report.mean.map_or(Cell::Empty, Cell::Float),
                    report.reference.map_or(Cell::Empty, Cell::Float),
                    report.tolerance.map_or(Cell::Empty, Cell::Float),
                    report.within_tolerance().map_or(Cell::Empty, Cell::Bool),
                ]);
            }
            t
        }
        Statistic::DigitSum => {
            let mut t = Table::new(&["n", "samples", "skipped", "mean"]);
            for n in range.0.clone() {
                let report = digit_sum_report(samples, n);
                t.push(vec![
                    Cell::int(n),
                    Cell::int(report.values.len()),
                    Cell::int(report.skipped),
                    report.mean.map_or(Cell::Empty, Cell::Float),
                ]);
            }
            t
        }
    };
    Ok(t)
}

pub fn mc_freq(samples: &[CfExpansion], checkpoints: &[u64]) -> Result<Table> {
    let mut t = Table::new(&["N", "samples", "skipped", "mean_ratio", "max_ratio"]);
    for &n in checkpoints {
        let report = two_gap_frequency_report(samples, n);
        let max = report.values.iter().copied().fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        t.push(vec![
            Cell::int(n),
            Cell::int(report.values.len()),
            Cell::int(report.skipped),
            report.mean.map_or(Cell::Empty, Cell::Float),
            max.map_or(Cell::Empty, Cell::Float),
        ]);
    }
    Ok(t)
}
