//! One function per subcommand. Each writes its artifacts first and then reports
//! any failed invariant, so a failing run still leaves its evidence on disk.

use std::path::Path;

use orbitlab_core::ladder::{
    default_level, level_sweep, orbit_scale_concentration, sample_progressions, tau_histogram, BandMode,
    ConcentrationScan, SamplerConfig, SamplerReport,
};
use orbitlab_core::mixing::{detect_ladders, mixing_report, LadderParams, MixingReport, ModulusGrid};
use orbitlab_core::scale::RatioRow;
use orbitlab_core::{OrbitRun, OrbitSummary, OrbitWalker, RunOptions, Segment, SegmentCapture, TauSieve, WalkState};
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::envelope::ResultEnvelope;
use crate::error::{CliError, Result};
use crate::output::{fmt_float, write_bytes, Format, Table};
use crate::par::par_map;
use crate::report::{ConcMax, RatioJson, SampleMax, SummaryJson};
use crate::source::{PrefetchSource, Progress};

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub threads: usize,
    pub block_size: u64,
    pub progress_every: u64,
    pub timestamp: bool,
    pub global: GlobalArgs,
}

impl Ctx {
    pub fn new(global: &GlobalArgs) -> Self {
        Ctx {
            threads: global.thread_count(),
            block_size: global.block_size,
            progress_every: global.progress_every,
            timestamp: global.timestamp,
            global: global.clone(),
        }
    }

    /// Single-threaded, silent settings with default block size.
    pub fn quiet(threads: usize) -> Self {
        let global = GlobalArgs {
            threads: Some(threads as u64),
            block_size: orbitlab_core::sieve::DEFAULT_BLOCK_SIZE,
            progress_every: 0,
            timestamp: false,
        };
        Ctx::new(&global)
    }

    fn source(&self) -> Result<PrefetchSource> {
        Ok(PrefetchSource::new(
            TauSieve::new(self.block_size)?,
            self.threads,
            Progress::new(self.progress_every),
        ))
    }

    fn options(&self, capture: SegmentCapture) -> RunOptions {
        RunOptions {
            block_size: self.block_size,
            capture,
            ..RunOptions::default()
        }
    }

    pub fn walk(&self, x: u64, capture: SegmentCapture) -> Result<OrbitRun> {
        Ok(OrbitWalker::new(x, self.source()?, &self.options(capture))?.finish()?)
    }

    pub fn envelope<C: Serialize, P: Serialize>(&self, kind: &str, config: &C, payload: &P) -> ResultEnvelope {
        let echo = json!({ "global": &self.global, "command": config });
        let env = ResultEnvelope::new(kind, &echo, payload);
        if self.timestamp {
            env.stamped()
        } else {
            env
        }
    }
}

fn resolve(path: &Path, explicit: Option<Format>, default: Format) -> Format {
    if explicit.is_none() && path == Path::new("-") {
        default
    } else {
        Format::resolve(path, explicit)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn fail_if_any(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

/// Hard invariants of a finished walk.
pub fn summary_failures(s: &OrbitSummary) -> Vec<String> {
    let mut out = Vec::new();
    if !s.energy_identity_holds() {
        out.push(format!(
            "x = {}: energy identity fails (energy {}, n_final {}, last tau {})",
            s.x, s.total_energy, s.n_final, s.last_tau
        ));
    }
    if !s.within_baseline_bounds() {
        out.push(format!("x = {}: a(x) = {} is outside x / max tau ..= ceil(x / 2)", s.x, s.a_x));
    }
    out
}

// ---------------------------------------------------------------------------
// run

pub fn dyadic_table(s: &OrbitSummary) -> Table {
    let mut t = Table::new(&[
        "N", "j_plus", "j_minus", "V", "energy", "sum_tau_sq", "mean_tau", "var_tau", "delta", "delta_exact",
        "complete",
    ]);
    for r in &s.dyadic {
        t.row([
            r.scale.to_string(),
            r.j_plus.to_string(),
            r.j_minus.to_string(),
            r.visits.to_string(),
            r.energy.to_string(),
            r.sum_tau_sq.to_string(),
            fmt_float(r.mean_tau(), None),
            fmt_float(r.var_tau(), None),
            r.delta.to_string(),
            r.delta_exact.to_string(),
            r.complete.to_string(),
        ]);
    }
    t
}

fn segment_table(seg: &Segment) -> Table {
    let mut t = Table::new(&["j", "n", "tau"]);
    for (i, p) in seg.points.iter().enumerate() {
        t.row([(seg.j_plus + i as u64).to_string(), p.n.to_string(), p.tau.to_string()]);
    }
    t
}

pub fn run(ctx: &Ctx, args: &RunArgs) -> Result<OrbitRun> {
    let capture = match args.segments {
        SegmentsMode::None => SegmentCapture::None,
        SegmentsMode::Dyadic => SegmentCapture::All,
    };
    let options = ctx.options(capture);
    let source = ctx.source()?;
    let mut walker = match &args.checkpoint {
        Some(path) if path.exists() => {
            let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
            let state = WalkState::from_bytes(&bytes).map_err(|e| CliError::format(path, e.to_string()))?;
            if state.x() != args.x {
                return Err(usage(format!(
                    "checkpoint {} belongs to x = {}, not {}",
                    path.display(),
                    state.x(),
                    args.x
                )));
            }
            eprintln!("orbitlab: resuming x = {} at step {}", state.x(), state.steps());
            OrbitWalker::from_state(state, source, &options)
        }
        _ => OrbitWalker::new(args.x, source, &options)?,
    };
    if let Some(path) = &args.checkpoint {
        walker.run_with_checkpoints(args.every, |state| {
            write_bytes(path, &state.to_bytes())?;
            eprintln!("orbitlab: checkpoint at step {} (n = {})", state.steps(), state.current());
            Ok::<(), CliError>(())
        })?;
    }
    let run = walker.finish()?;
    if let Some(path) = &args.checkpoint {
        if path.exists() {
            std::fs::remove_file(path).map_err(|e| CliError::io(path, e))?;
        }
    }

    match resolve(&args.emit, args.format, Format::Json) {
        Format::Json => ctx
            .envelope("orbit-summary", args, &SummaryJson::from(&run.summary))
            .emit(&args.emit)?,
        Format::Csv => dyadic_table(&run.summary).write(&args.emit)?,
    }
    for seg in &run.segments {
        segment_table(seg).write(&args.segments_dir.join(format!("N_{}.csv", seg.scale)))?;
    }
    fail_if_any(summary_failures(&run.summary))?;
    Ok(run)
}

// ---------------------------------------------------------------------------
// table

pub fn ratio_rows(ctx: &Ctx, xs: &[u64]) -> Result<(Vec<RatioRow>, Vec<String>)> {
    if let Some(&bad) = xs.iter().find(|&&x| x < 10) {
        return Err(usage(format!("table starts must be >= 10, got {bad}")));
    }
    let mut rows = Vec::with_capacity(xs.len());
    let mut failures = Vec::new();
    for &x in xs {
        let s = ctx.walk(x, SegmentCapture::None)?.summary;
        failures.extend(summary_failures(&s));
        rows.push(RatioRow::new(x, s.a_x)?);
    }
    Ok((rows, failures))
}

pub fn ratio_table(rows: &[RatioRow], round: Option<usize>) -> Table {
    let mut t = Table::new(&["x", "a_x", "r_logx", "r_loglog", "r_li"]);
    for r in rows {
        t.row([
            r.x.to_string(),
            r.a_x.to_string(),
            fmt_float(r.r_log, round),
            fmt_float(r.r_loglog, round),
            fmt_float(r.r_li, round),
        ]);
    }
    t
}

pub fn table(ctx: &Ctx, args: &TableArgs) -> Result<Vec<RatioRow>> {
    let (rows, failures) = ratio_rows(ctx, &args.x)?;
    match resolve(&args.emit, args.format, Format::Csv) {
        Format::Csv => ratio_table(&rows, args.round).write(&args.emit)?,
        Format::Json => {
            let payload: Vec<RatioJson> = rows.iter().map(RatioJson::from).collect();
            ctx.envelope("ratio-table", args, &payload).emit(&args.emit)?
        }
    }
    fail_if_any(failures)?;
    Ok(rows)
}

// ---------------------------------------------------------------------------
// mixing and ladders-in-orbit

fn crossings(ctx: &Ctx, x: u64, scales: &ScaleSel) -> Result<Vec<Segment>> {
    let capture = match scales {
        ScaleSel::AllDyadic => SegmentCapture::All,
        ScaleSel::Scale(n) => {
            if *n >= x {
                return Err(orbitlab_core::Error::NoCrossing { x, scale: *n }.into());
            }
            SegmentCapture::Scales(vec![*n])
        }
    };
    let run = ctx.walk(x, capture)?;
    let segs: Vec<Segment> = run
        .segments
        .into_iter()
        .filter(|s| s.scale >= 2 && !s.is_empty())
        .collect();
    if let ScaleSel::Scale(n) = scales {
        if segs.is_empty() {
            return Err(orbitlab_core::Error::NoCrossing { x, scale: *n }.into());
        }
    }
    Ok(segs)
}

pub fn mixing_reports(ctx: &Ctx, args: &MixingArgs) -> Result<Vec<MixingReport>> {
    if args.q_max < 2 {
        return Err(usage("--q-max must be >= 2"));
    }
    let segs = crossings(ctx, args.x, &args.scale)?;
    let grid = ModulusGrid::new(args.q_max, args.prime_max);
    par_map(ctx.threads, &segs, |s| mixing_report(s, &grid))
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

pub fn mixing(ctx: &Ctx, args: &MixingArgs) -> Result<Vec<MixingReport>> {
    let reports = mixing_reports(ctx, args)?;
    let header = [
        "N", "V", "discrepancy", "discrepancy_norm", "q", "h", "bias", "phase_msq", "res_conc",
    ];
    match resolve(&args.emit, args.format, Format::Csv) {
        Format::Csv => {
            let mut t = Table::new(&header);
            for r in &reports {
                let (n, v) = (r.scale.to_string(), r.visits.to_string());
                let (d, dn) = (fmt_float(r.discrepancy, None), fmt_float(r.discrepancy_norm, None));
                for row in &r.rows {
                    t.row([
                        n.clone(),
                        v.clone(),
                        d.clone(),
                        dn.clone(),
                        row.q.to_string(),
                        row.h.to_string(),
                        fmt_float(row.bias, None),
                        fmt_float(row.phase_msq, None),
                        fmt_float(row.res_conc, None),
                    ]);
                }
            }
            t.write(&args.emit)?;
        }
        Format::Json => {
            let payload: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "N": r.scale.to_string(),
                        "V": r.visits.to_string(),
                        "discrepancy": r.discrepancy,
                        "discrepancy_norm": r.discrepancy_norm,
                        "rows": r.rows.iter().map(|p| json!([p.q, p.h, p.bias, p.phase_msq, p.res_conc])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            ctx.envelope("mixing", args, &json!({ "row_fields": ["q", "h", "bias", "phase_msq", "res_conc"], "scales": payload }))
                .emit(&args.emit)?;
        }
    }
    Ok(reports)
}

pub fn ladders_in_orbit(ctx: &Ctx, args: &LaddersArgs) -> Result<usize> {
    let params = LadderParams {
        step_tol: args.step_tol,
        level_tol: args.level_tol,
        min_len: args.min_len,
        violation_budget: args.budget,
    };
    let segs = crossings(ctx, args.x, &ScaleSel::AllDyadic)?;
    let found = par_map(ctx.threads, &segs, |s| detect_ladders(&s.points, &params));
    let header = ["N", "j_start", "len", "level", "violations", "n_first", "n_last"];
    let mut t = Table::new(&header);
    let mut rows = Vec::new();
    for (seg, runs) in segs.iter().zip(found) {
        let runs = runs?;
        for r in runs {
            let fields = [
                seg.scale.to_string(),
                (seg.j_plus + r.start as u64).to_string(),
                r.len.to_string(),
                r.level.to_string(),
                r.violations.to_string(),
                r.values[0].to_string(),
                r.values[r.len - 1].to_string(),
            ];
            rows.push(fields.clone());
            t.row(fields);
        }
    }
    let count = rows.len();
    match resolve(&args.emit, args.format, Format::Csv) {
        Format::Csv => t.write(&args.emit)?,
        Format::Json => ctx
            .envelope("ladders-in-orbit", args, &json!({ "fields": header, "runs": rows }))
            .emit(&args.emit)?,
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// ladder-sample

pub fn sampler_levels(scale: u64, sel: LevelSel) -> Vec<u64> {
    match sel {
        LevelSel::Auto => vec![default_level(scale)],
        LevelSel::Sweep => level_sweep(scale),
        LevelSel::Fixed(t) => vec![t],
    }
}

pub fn run_sampler(ctx: &Ctx, scale: u64, levels: &[u64], args: &SamplerSpec) -> Result<Vec<SamplerReport>> {
    let configs: Vec<SamplerConfig> = levels
        .iter()
        .map(|&t| {
            let mut c = SamplerConfig::new(scale, t, args.samples, args.eps.clone(), args.seed);
            c.length_factor = args.length_factor;
            c
        })
        .collect();
    par_map(ctx.threads, &configs, sample_progressions)
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

/// The sampler parameters shared by `ladder-sample` and the table-2 recipe.
#[derive(Debug, Clone)]
pub struct SamplerSpec {
    pub samples: u64,
    pub eps: Vec<f64>,
    pub seed: u64,
    pub length_factor: f64,
}

pub fn sample_rows_header() -> [&'static str; 9] {
    ["N", "T", "sample", "start", "len", "eps", "energy", "band_energy", "ratio"]
}

pub fn push_sample_rows(t: &mut Table, report: &SamplerReport) {
    let c = &report.config;
    for s in &report.samples {
        for (k, &eps) in c.eps.iter().enumerate() {
            t.row([
                c.scale.to_string(),
                c.level.to_string(),
                s.index.to_string(),
                s.start.to_string(),
                s.len.to_string(),
                eps.to_string(),
                s.energy.to_string(),
                s.band_energy[k].to_string(),
                fmt_float(s.ratio(k), None),
            ]);
        }
    }
}

pub fn sample_maxima(report: &SamplerReport) -> Vec<SampleMax> {
    let c = &report.config;
    c.eps
        .iter()
        .zip(&report.max_ratio)
        .map(|(&eps, &max_ratio)| SampleMax {
            scale: c.scale,
            level: c.level,
            samples: c.count,
            eps,
            max_ratio,
        })
        .collect()
}

pub fn maxima_table(maxima: &[SampleMax]) -> Table {
    let mut t = Table::new(&["N", "T", "samples", "eps", "max_ratio"]);
    for m in maxima {
        t.row([
            m.scale.to_string(),
            m.level.to_string(),
            m.samples.to_string(),
            m.eps.to_string(),
            fmt_float(m.max_ratio, None),
        ]);
    }
    t
}

pub fn histogram_table(reports: &[SamplerReport], bin_width: u64) -> Result<Table> {
    let mut t = Table::new(&["N", "T", "bin_lo", "bin_hi", "fraction"]);
    for r in reports {
        let h = tau_histogram(&r.samples, bin_width)?;
        for (b, &f) in h.fractions.iter().enumerate() {
            let lo = b as u64 * bin_width;
            t.row([
                r.config.scale.to_string(),
                r.config.level.to_string(),
                lo.to_string(),
                (lo + bin_width).to_string(),
                fmt_float(f, None),
            ]);
        }
    }
    Ok(t)
}

/// `R` in `[0, 1]` and non-decreasing in `eps` on every sample.
pub fn sampler_failures(report: &SamplerReport) -> Vec<String> {
    let c = &report.config;
    let mut order: Vec<usize> = (0..c.eps.len()).collect();
    order.sort_by(|&a, &b| c.eps[a].total_cmp(&c.eps[b]));
    let mut out = Vec::new();
    for s in &report.samples {
        let ratios: Vec<f64> = order.iter().map(|&k| s.ratio(k)).collect();
        let bounded = ratios.iter().all(|r| (0.0..=1.0).contains(r));
        let monotone = ratios.windows(2).all(|w| w[0] <= w[1]);
        if !bounded || !monotone {
            out.push(format!("N = {}, T = {}, sample {}: ratios {:?}", c.scale, c.level, s.index, ratios));
        }
    }
    out
}

pub fn ladder_sample(ctx: &Ctx, args: &SampleArgs) -> Result<Vec<SamplerReport>> {
    let spec = SamplerSpec {
        samples: args.samples,
        eps: args.eps.clone(),
        seed: args.seed,
        length_factor: args.length_factor,
    };
    let levels = sampler_levels(args.scale, args.level);
    let reports = run_sampler(ctx, args.scale, &levels, &spec)?;
    let maxima: Vec<SampleMax> = reports.iter().flat_map(sample_maxima).collect();
    match resolve(&args.emit, args.format, Format::Csv) {
        Format::Csv => {
            let mut t = Table::new(&sample_rows_header());
            for r in &reports {
                push_sample_rows(&mut t, r);
            }
            t.write(&args.emit)?;
        }
        Format::Json => {
            let samples: Vec<_> = reports
                .iter()
                .flat_map(|r| {
                    r.samples.iter().map(|s| {
                        json!({
                            "T": s.level,
                            "sample": s.index,
                            "start": s.start.to_string(),
                            "len": s.len.to_string(),
                            "energy": s.energy.to_string(),
                            "band_energy": s.band_energy.iter().map(u64::to_string).collect::<Vec<_>>(),
                        })
                    })
                })
                .collect();
            ctx.envelope("ladder-sample", args, &json!({ "maxima": maxima, "samples": samples }))
                .emit(&args.emit)?;
        }
    }
    if let Some(path) = &args.summary {
        maxima_table(&maxima).write(path)?;
    }
    if let Some(path) = &args.hist {
        histogram_table(&reports, args.bin_width)?.write(path)?;
    }
    fail_if_any(reports.iter().flat_map(sampler_failures).collect())?;
    Ok(reports)
}

// ---------------------------------------------------------------------------
// conc-scan

pub fn mode_name(mode: BandMode) -> &'static str {
    match mode {
        BandMode::ExactLevel => "exact",
        BandMode::DyadicBand => "dyadic",
    }
}

pub fn scan_modes(sel: ModeSel) -> Vec<BandMode> {
    match sel {
        ModeSel::Exact => vec![BandMode::ExactLevel],
        ModeSel::Dyadic => vec![BandMode::DyadicBand],
        ModeSel::Both => vec![BandMode::ExactLevel, BandMode::DyadicBand],
    }
}

/// Powers of two in `[lo, hi]`.
pub fn dyadic_range(lo: u64, hi: u64) -> Vec<u64> {
    (0..64).map(|k| 1u64 << k).filter(|&n| n >= lo && n <= hi).collect()
}

/// The largest `N = 2^k` with `2N < x`.
pub fn largest_complete_scale(x: u64) -> Option<u64> {
    (0..63).map(|k| 1u64 << k).filter(|&n| 2 * n < x).last()
}

pub fn conc_scans(ctx: &Ctx, x: u64, scales: &[u64], modes: &[BandMode]) -> Result<Vec<(Segment, Vec<ConcentrationScan>)>> {
    if scales.is_empty() {
        return Err(usage(format!("no dyadic scale in the requested range lies below x = {x}")));
    }
    if let Some(&n) = scales.iter().find(|&&n| n >= x) {
        return Err(orbitlab_core::Error::NoCrossing { x, scale: n }.into());
    }
    let run = ctx.walk(x, SegmentCapture::Scales(scales.to_vec()))?;
    let mut out = Vec::new();
    for seg in run.segments.into_iter().filter(|s| !s.is_empty()) {
        let scans = modes
            .iter()
            .map(|&m| orbit_scale_concentration(&seg, m))
            .collect::<orbitlab_core::Result<Vec<_>>>()?;
        out.push((seg, scans));
    }
    out.sort_by_key(|(s, _)| s.scale);
    Ok(out)
}

pub fn conc_maxima(scans: &[(Segment, Vec<ConcentrationScan>)]) -> Vec<ConcMax> {
    scans
        .iter()
        .flat_map(|(seg, list)| {
            list.iter().map(move |c| ConcMax {
                scale: c.scale,
                visits: seg.visits(),
                energy: c.total,
                mode: mode_name(c.mode).to_string(),
                argmax: c.argmax,
                max_frac: c.max_frac,
                smoothed_max_frac: c.smoothed_max_frac,
            })
        })
        .collect()
}

pub fn conc_levels_table(scans: &[(Segment, Vec<ConcentrationScan>)]) -> Table {
    let mut t = Table::new(&["N", "mode", "level", "energy", "frac"]);
    for (_, list) in scans {
        for c in list {
            for (&level, &e) in &c.levels {
                t.row([
                    c.scale.to_string(),
                    mode_name(c.mode).to_string(),
                    level.to_string(),
                    e.to_string(),
                    fmt_float(e as f64 / c.scale as f64, None),
                ]);
            }
        }
    }
    t
}

pub fn conc_summary_table(maxima: &[ConcMax]) -> Table {
    let mut t = Table::new(&["N", "V", "energy", "mode", "argmax", "max_frac", "smoothed_max_frac"]);
    for m in maxima {
        t.row([
            m.scale.to_string(),
            m.visits.to_string(),
            m.energy.to_string(),
            m.mode.clone(),
            m.argmax.to_string(),
            fmt_float(m.max_frac, None),
            m.smoothed_max_frac.map(|f| fmt_float(f, None)).unwrap_or_default(),
        ]);
    }
    t
}

/// Level energies partition the crossing energy, and the pigeonhole bound holds.
pub fn conc_failures(scans: &[(Segment, Vec<ConcentrationScan>)]) -> Vec<String> {
    let mut out = Vec::new();
    for (seg, list) in scans {
        for c in list {
            let sum: u64 = c.levels.values().sum();
            if sum != seg.energy() || (c.max_energy() * c.levels.len() as u64) < sum {
                out.push(format!("N = {}, mode {}: level energies do not partition", c.scale, mode_name(c.mode)));
            }
        }
    }
    out
}

pub fn conc_scan(ctx: &Ctx, args: &ConcArgs) -> Result<Vec<ConcMax>> {
    let hi = match args.max_scale {
        Some(m) => m,
        None => largest_complete_scale(args.x).ok_or_else(|| usage("x is too small for a complete crossing"))?,
    };
    let scales = dyadic_range(args.min_scale, hi);
    let scans = conc_scans(ctx, args.x, &scales, &scan_modes(args.mode))?;
    let maxima = conc_maxima(&scans);
    match resolve(&args.emit, args.format, Format::Csv) {
        Format::Csv => conc_levels_table(&scans).write(&args.emit)?,
        Format::Json => ctx.envelope("conc-scan", args, &maxima).emit(&args.emit)?,
    }
    if let Some(path) = &args.summary {
        conc_summary_table(&maxima).write(path)?;
    }
    fail_if_any(conc_failures(&scans))?;
    Ok(maxima)
}

// ---------------------------------------------------------------------------
// tau

/// Largest range the `tau` command writes in one go.
pub const TAU_RANGE_LIMIT: u64 = 100_000_000;

pub fn tau(ctx: &Ctx, args: &TauArgs) -> Result<()> {
    if args.hi < args.lo {
        return Err(usage(format!("--hi {} is below --lo {}", args.hi, args.lo)));
    }
    if args.hi - args.lo >= TAU_RANGE_LIMIT {
        return Err(usage(format!("ranges are limited to {TAU_RANGE_LIMIT} integers")));
    }
    let sieve = TauSieve::new(ctx.block_size)?;
    let mut t = Table::new(&["n", "tau"]);
    let mut values = Vec::new();
    sieve.for_each_block(args.lo, args.hi + 1, |lo, counts| {
        for (i, &c) in counts.iter().enumerate() {
            t.row([(lo + i as u64).to_string(), c.to_string()]);
            if args.emit == Format::Json {
                values.push(c);
            }
        }
    })?;
    match args.emit {
        Format::Csv => t.write(&args.out),
        Format::Json => ctx
            .envelope("tau", args, &json!({ "lo": args.lo.to_string(), "tau": values }))
            .emit(&args.out),
    }
}
