//! Orchestrated runs writing the CSV artifacts the plotting scripts read.
//!
//! | recipe    | files                                                       |
//! |-----------|-------------------------------------------------------------|
//! | `table1`  | `table1.csv`, `table1.json`                                 |
//! | `table2`  | `table2.csv`, `table2_summary.csv`, `table2.json`           |
//! | `figures` | `an.csv`, `tau_hist.csv`, `conc.csv`, `conc_levels.csv`     |
//!
//! Every file is a pure function of the recipe arguments; the worker count only
//! changes the wall time.

use std::path::PathBuf;

use orbitlab_core::ladder::{default_level, BandMode};
use orbitlab_core::scale::RatioRow;

use crate::args::{FiguresArgs, Table1Args, Table2Args};
use crate::commands::{
    conc_failures, conc_levels_table, conc_maxima, conc_scans, conc_summary_table, dyadic_range,
    histogram_table, largest_complete_scale, maxima_table, push_sample_rows, ratio_rows, ratio_table,
    run_sampler, sample_maxima, sample_rows_header, sampler_failures, Ctx, SamplerSpec,
};
use crate::error::{CliError, Result};
use crate::output::{fmt_float, Table};
use crate::report::{ConcMax, RatioJson, SampleMax};

/// Files written by a recipe, in write order.
#[derive(Debug, Clone, Default)]
pub struct Written {
    pub files: Vec<PathBuf>,
}

impl Written {
    fn table(&mut self, t: Table, path: PathBuf) -> Result<()> {
        t.write(&path)?;
        self.files.push(path);
        Ok(())
    }
}

fn check(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

pub fn table1(ctx: &Ctx, args: &Table1Args) -> Result<(Vec<RatioRow>, Written)> {
    if !(1..=17).contains(&args.k) {
        return Err(CliError::Usage("--K must lie in 1..=17".into()));
    }
    let xs: Vec<u64> = (1..=args.k).map(|k| 10u64.pow(k)).collect();
    let (rows, failures) = ratio_rows(ctx, &xs)?;
    let mut w = Written::default();
    w.table(ratio_table(&rows, None), args.out.join("table1.csv"))?;
    let json_path = args.out.join("table1.json");
    let payload: Vec<RatioJson> = rows.iter().map(RatioJson::from).collect();
    ctx.envelope("recipe-table1", args, &payload).emit(&json_path)?;
    w.files.push(json_path);
    check(failures)?;
    Ok((rows, w))
}

pub fn table2(ctx: &Ctx, args: &Table2Args) -> Result<(Vec<SampleMax>, Written)> {
    let spec = SamplerSpec {
        samples: args.samples,
        eps: args.eps.clone(),
        seed: args.seed,
        length_factor: 0.9,
    };
    let mut rows = Table::new(&sample_rows_header());
    let mut maxima = Vec::new();
    let mut failures = Vec::new();
    for &n in &args.scales {
        for report in run_sampler(ctx, n, &[default_level(n)], &spec)? {
            push_sample_rows(&mut rows, &report);
            maxima.extend(sample_maxima(&report));
            failures.extend(sampler_failures(&report));
        }
    }
    let mut w = Written::default();
    w.table(rows, args.out.join("table2.csv"))?;
    w.table(maxima_table(&maxima), args.out.join("table2_summary.csv"))?;
    let json_path = args.out.join("table2.json");
    ctx.envelope("recipe-table2", args, &maxima).emit(&json_path)?;
    w.files.push(json_path);
    check(failures)?;
    Ok((maxima, w))
}

/// `a(n)` for every `0 <= n <= max`, from `a(n) = 1 + a(n - tau(n))`.
pub fn orbit_lengths(max: u64) -> Result<Vec<u64>> {
    let taus = orbitlab_core::sieve_block(1, max + 1)?.into_counts();
    let mut a = vec![0u64; max as usize + 1];
    for n in 1..=max as usize {
        let next = n as i64 - taus[n - 1] as i64;
        a[n] = 1 + if next > 0 { a[next as usize] } else { 0 };
    }
    Ok(a)
}

pub struct Figures {
    pub conc: Vec<ConcMax>,
    pub written: Written,
}

pub fn figures(ctx: &Ctx, args: &FiguresArgs) -> Result<Figures> {
    let mut w = Written::default();

    let a = orbit_lengths(args.an_max)?;
    let mut an = Table::new(&["n", "a_n", "n_over_log", "n_over_loglog"]);
    for n in 2..=args.an_max {
        let (nf, l) = (n as f64, (n as f64).ln());
        an.row([
            n.to_string(),
            a[n as usize].to_string(),
            fmt_float(nf / l, None),
            fmt_float(nf / (l + l.ln()), None),
        ]);
    }
    w.table(an, args.out.join("an.csv"))?;

    let spec = SamplerSpec {
        samples: args.hist_samples,
        eps: vec![0.1, 0.2, 0.3],
        seed: args.seed,
        length_factor: 0.9,
    };
    let reports = run_sampler(ctx, args.hist_scale, &[default_level(args.hist_scale)], &spec)?;
    w.table(histogram_table(&reports, 1)?, args.out.join("tau_hist.csv"))?;

    let top = largest_complete_scale(args.conc_x)
        .ok_or_else(|| CliError::Usage("--conc-x is too small for a complete crossing".into()))?;
    let scans = conc_scans(
        ctx,
        args.conc_x,
        &dyadic_range(1 << 10, top),
        &[BandMode::ExactLevel, BandMode::DyadicBand],
    )?;
    let conc = conc_maxima(&scans);
    w.table(conc_summary_table(&conc), args.out.join("conc.csv"))?;
    w.table(conc_levels_table(&scans), args.out.join("conc_levels.csv"))?;

    let mut failures: Vec<String> = reports.iter().flat_map(sampler_failures).collect();
    failures.extend(conc_failures(&scans));
    check(failures)?;
    Ok(Figures { conc, written: w })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_lengths_by_recursion() {
        let a = orbit_lengths(10_000).unwrap();
        assert_eq!((a[1], a[2], a[10], a[100], a[1000], a[10_000]), (1, 1, 3, 19, 116, 962));
    }
}
