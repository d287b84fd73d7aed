//! Residue, divisor and phase diagnostics on a single dyadic crossing.
//!
//! All quantities are finite-sample statistics. Statements of the form "o(1)"
//! are surfaced as normalized ratios and left for the caller to interpret.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float::{unit_root, KahanSum};
use crate::orbit::{OrbitPoint, Segment};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Empirical distribution of the orbit modulo `q`, kept as exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDistribution {
    pub q: u64,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl ResidueDistribution {
    /// `mu_q(a)` as the fraction `(counts[a], total)`.
    pub fn ratio(&self, a: u64) -> (u64, u64) {
        (self.counts[(a % self.q) as usize], self.total)
    }

    pub fn prob(&self, a: u64) -> f64 {
        let (c, t) = self.ratio(a);
        c as f64 / t as f64
    }

    /// The induced distribution modulo a divisor `q2` of `q`.
    pub fn marginalize(&self, q2: u64) -> Result<ResidueDistribution> {
        if q2 == 0 || self.q % q2 != 0 {
            return Err(Error::invalid(alloc::format!("{q2} does not divide {}", self.q)));
        }
        let mut counts = vec![0u64; q2 as usize];
        for (a, &c) in self.counts.iter().enumerate() {
            counts[a % q2 as usize] += c;
        }
        Ok(ResidueDistribution {
            q: q2,
            counts,
            total: self.total,
        })
    }

    /// `|(1/V) sum_a counts[a] e(h a / q)|`.
    pub fn bias(&self, h: u64) -> f64 {
        character_modulus(&self.counts, self.q, h, self.total)
    }
}

fn character_modulus(counts: &[u64], q: u64, h: u64, total: u64) -> f64 {
    let (mut re, mut im) = (KahanSum::default(), KahanSum::default());
    for (a, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (cr, ci) = unit_root(mul_mod(h, a as u64, q), q);
        re.add(c as f64 * cr);
        im.add(c as f64 * ci);
    }
    let v = total as f64;
    libm::hypot(re.value() / v, im.value() / v)
}

fn check_nonempty(points: &[OrbitPoint]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::invalid("segment is empty"));
    }
    Ok(())
}

pub fn residue_distribution(points: &[OrbitPoint], q: u64) -> Result<ResidueDistribution> {
    check_nonempty(points)?;
    if q == 0 {
        return Err(Error::invalid("modulus must be >= 1"));
    }
    let mut counts = vec![0u64; q as usize];
    for p in points {
        counts[(p.n % q) as usize] += 1;
    }
    Ok(ResidueDistribution {
        q,
        counts,
        total: points.len() as u64,
    })
}

/// Divisor-count residues `tau(n_j) mod q`.
fn tau_residues(points: &[OrbitPoint], q: u64) -> Vec<u64> {
    let mut counts = vec![0u64; q as usize];
    for p in points {
        counts[(p.tau as u64 % q) as usize] += 1;
    }
    counts
}

/// One `|count_d - V/d|` term of the divisor discrepancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyTerm {
    pub d: u64,
    pub count: u64,
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    /// `sum_{d <= sqrt(2N)} |#{j : d | n_j} - V/d|`.
    pub value: f64,
    /// `value / (V ln N)`.
    pub normalized: f64,
    pub terms: Vec<DiscrepancyTerm>,
}

/// Divisor-membership discrepancy over `d <= floor(sqrt(2N))`.
///
/// Counts come from stepping through multiples of each `d` over a membership
/// bitmap of the visited values.
pub fn divisor_discrepancy(segment: &Segment) -> Result<Discrepancy> {
    check_nonempty(&segment.points)?;
    let lo = segment.values().min().unwrap();
    let hi = segment.values().max().unwrap();
    let mut present = vec![false; (hi - lo + 1) as usize];
    for n in segment.values() {
        present[(n - lo) as usize] = true;
    }
    let v = segment.visits() as f64;
    let dmax = (2 * segment.scale).isqrt();
    let mut total = KahanSum::default();
    let mut terms = Vec::with_capacity(dmax as usize);
    for d in 1..=dmax {
        let mut m = lo.div_ceil(d) * d;
        let mut count = 0u64;
        while m <= hi {
            count += present[(m - lo) as usize] as u64;
            m += d;
        }
        let term = libm::fabs(count as f64 - v / d as f64);
        total.add(term);
        terms.push(DiscrepancyTerm { d, count, term });
    }
    let value = total.value();
    let ln_n = libm::log(segment.scale as f64);
    let normalized = if ln_n > 0.0 { value / (v * ln_n) } else { f64::INFINITY };
    Ok(Discrepancy {
        value,
        normalized,
        terms,
    })
}

/// `|(1/V) sum_j e(h n_j / q)|` with compensated summation.
pub fn fourier_bias(points: &[OrbitPoint], q: u64, h: u64) -> Result<f64> {
    check_nonempty(points)?;
    if q < 2 {
        return Err(Error::invalid("fourier bias needs q >= 2"));
    }
    let (mut re, mut im) = (KahanSum::default(), KahanSum::default());
    for p in points {
        let (c, s) = unit_root(mul_mod(h % q, p.n % q, q), q);
        re.add(c);
        im.add(s);
    }
    let v = points.len() as f64;
    Ok(libm::hypot(re.value() / v, im.value() / v))
}

/// `|e(-h tau / q) - 1|^2 = 4 sin^2(pi r / q)` with `r = h tau mod q`.
#[inline]
fn increment_sq(h: u64, tau: u64, q: u64) -> f64 {
    let r = mul_mod(h % q, tau % q, q);
    let s = libm::sin(core::f64::consts::PI * r as f64 / q as f64);
    4.0 * s * s
}

/// `(1/V) sum_j |e(-h tau(n_j) / q) - 1|^2`, in `[0, 4]`.
pub fn phase_increment_msq(points: &[OrbitPoint], q: u64, h: u64) -> Result<f64> {
    check_nonempty(points)?;
    check_phase_args(q, h)?;
    let mut sum = KahanSum::default();
    for p in points {
        sum.add(increment_sq(h, p.tau as u64, q));
    }
    Ok(sum.value() / points.len() as f64)
}

fn check_phase_args(q: u64, h: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::invalid("modulus must be >= 2"));
    }
    if h % q == 0 {
        return Err(Error::invalid("h must be non-zero modulo q"));
    }
    Ok(())
}

/// Largest deviation `| |z_{j+1} - z_j| - |u_j - 1| |` over consecutive points,
/// where `z_j = e(h n_j / q)` and `u_j = e(-h tau(n_j) / q)`. Points must be
/// consecutive orbit values.
pub fn phase_identity_defect(points: &[OrbitPoint], q: u64, h: u64) -> Result<f64> {
    check_phase_args(q, h)?;
    let mut worst = 0.0f64;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (z0r, z0i) = unit_root(mul_mod(h % q, a.n % q, q), q);
        let (z1r, z1i) = unit_root(mul_mod(h % q, b.n % q, q), q);
        let lhs = libm::hypot(z1r - z0r, z1i - z0i);
        let rhs = libm::sqrt(increment_sq(h, a.tau as u64, q));
        worst = worst.max(libm::fabs(lhs - rhs));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueConcentration {
    /// `q / gcd(h, q)`.
    pub modulus: u64,
    pub hits: u64,
    pub total: u64,
    pub fraction: f64,
    /// `fraction >= threshold`.
    pub concentrated: bool,
}

/// Fraction of points with `q / gcd(h, q)` dividing `tau(n_j)`.
pub fn residue_concentration(
    points: &[OrbitPoint],
    q: u64,
    h: u64,
    threshold: f64,
) -> Result<ResidueConcentration> {
    check_nonempty(points)?;
    check_phase_args(q, h)?;
    let modulus = q / gcd(h % q, q);
    let hits = points.iter().filter(|p| p.tau as u64 % modulus == 0).count() as u64;
    let total = points.len() as u64;
    let fraction = hits as f64 / total as f64;
    Ok(ResidueConcentration {
        modulus,
        hits,
        total,
        fraction,
        concentrated: fraction >= threshold,
    })
}

/// The most frequent residue of `tau(n_j)` modulo `q` and its share.
pub fn dominant_tau_residue(points: &[OrbitPoint], q: u64) -> Result<(u64, f64)> {
    check_nonempty(points)?;
    if q == 0 {
        return Err(Error::invalid("modulus must be >= 1"));
    }
    let counts = tau_residues(points, q);
    let (a, &c) = counts
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
        .unwrap();
    Ok((a as u64, c as f64 / points.len() as f64))
}

/// Candidates for a common level from residue classes over coprime moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtLevel {
    /// Product of the moduli.
    pub modulus: u64,
    /// Combined residue modulo `modulus`.
    pub residue: u64,
    /// Number of integers in `[1, bound]` in the combined class.
    pub candidates: u64,
    /// The level, when exactly one candidate exists.
    pub level: Option<u64>,
}

/// Combines `value = residue (mod modulus)` classes and lists the candidates in `[1, bound]`.
pub fn crt_level(classes: &[(u64, u64)], bound: u64) -> Result<CrtLevel> {
    if bound == 0 {
        return Err(Error::invalid("range bound must be >= 1"));
    }
    let mut modulus = 1u64;
    let mut residue = 0u64;
    for &(r, q) in classes {
        if q == 0 {
            return Err(Error::invalid("moduli must be >= 1"));
        }
        if gcd(modulus, q) != 1 {
            return Err(Error::invalid(alloc::format!(
                "modulus {q} is not coprime to the others"
            )));
        }
        let r = r % q;
        // Solve residue + modulus * t = r (mod q).
        let inv = mod_inverse(modulus % q, q);
        let diff = (r + q - residue % q) % q;
        let t = mul_mod(diff, inv, q);
        let next = modulus
            .checked_mul(q)
            .ok_or_else(|| Error::invalid("product of moduli overflows"))?;
        residue = ((residue as u128 + modulus as u128 * t as u128) % next as u128) as u64;
        modulus = next;
    }
    let first = if residue == 0 { modulus } else { residue };
    let candidates = if first > bound { 0 } else { (bound - first) / modulus + 1 };
    Ok(CrtLevel {
        modulus,
        residue,
        candidates,
        level: (candidates == 1).then_some(first),
    })
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let k = old_r / r;
        (old_r, r) = (r, old_r - k * r);
        (old_s, s) = (s, old_s - k * s);
    }
    old_s.rem_euclid(q as i128) as u64
}

/// Indices whose divisor count is within `eta * T` of the mean level `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularSet {
    pub scale: u64,
    pub level: f64,
    pub eta: f64,
    /// Positions in the segment.
    pub members: Vec<usize>,
    /// Member energy over segment energy.
    pub saturation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    /// Mean divisor count `T`.
    pub mean: f64,
    /// Population variance of the divisor counts.
    pub variance: f64,
    pub regular: RegularSet,
}

impl VarianceReport {
    /// `#outside <= variance / (eta T)^2 * V`.
    pub fn chebyshev_holds(&self, visits: usize) -> bool {
        let outside = (visits - self.regular.members.len()) as f64;
        let spread = self.regular.eta * self.mean;
        outside * spread * spread <= self.variance * visits as f64 * (1.0 + 1e-12)
    }
}

pub fn variance_and_regular_set(segment: &Segment, eta: f64) -> Result<VarianceReport> {
    check_nonempty(&segment.points)?;
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("eta must lie in (0, 1)"));
    }
    let v = segment.visits() as u128;
    let energy = segment.energy();
    let sum_sq: u128 = segment.taus().map(|t| t as u128 * t as u128).sum();
    let mean = energy as f64 / v as f64;
    let var_num = v * sum_sq - energy as u128 * energy as u128;
    let variance = var_num as f64 / (v * v) as f64;
    let band = eta * mean;
    let mut members = Vec::new();
    let mut member_energy = 0u64;
    for (i, p) in segment.points.iter().enumerate() {
        if libm::fabs(p.tau as f64 - mean) <= band {
            members.push(i);
            member_energy += p.tau as u64;
        }
    }
    Ok(VarianceReport {
        mean,
        variance,
        regular: RegularSet {
            scale: segment.scale,
            level: mean,
            eta,
            members,
            saturation: member_energy as f64 / energy as f64,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    pub step_tol: f64,
    pub level_tol: f64,
    pub min_len: usize,
    /// Largest share of conditioned indices allowed to violate a condition.
    pub violation_budget: f64,
}

impl Default for LadderParams {
    fn default() -> Self {
        LadderParams {
            step_tol: 0.2,
            level_tol: 0.2,
            min_len: 8,
            violation_budget: 0.1,
        }
    }
}

/// A near-arithmetic run `m_1 > ... > m_r` with step and divisor count close to `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderRun {
    /// Position of `m_1` in the segment.
    pub start: usize,
    pub values: Vec<u64>,
    pub level: u64,
    pub len: usize,
    pub step_tol: f64,
    pub level_tol: f64,
    pub violations: usize,
}

/// `round(sum / count)` with ties to even.
fn round_mean(sum: u64, count: u64) -> u64 {
    let (q, rem) = (sum / count, sum % count);
    match (2 * rem).cmp(&count) {
        core::cmp::Ordering::Greater => q + 1,
        core::cmp::Ordering::Equal => q + (q & 1),
        core::cmp::Ordering::Less => q,
    }
}

/// Whether index `i` (with successor `i + 1`) fails the step or level condition at `level`.
fn violates(points: &[OrbitPoint], i: usize, level: u64, params: &LadderParams) -> bool {
    let t = level as f64;
    let (a, b) = (points[i].n, points[i + 1].n);
    if b >= a {
        return true;
    }
    let step = (a - b) as f64;
    libm::fabs(step - t) > params.step_tol * t
        || libm::fabs(points[i].tau as f64 - t) > params.level_tol * t
}

fn count_violations(points: &[OrbitPoint], s: usize, e: usize, level: u64, p: &LadderParams) -> usize {
    (s..e).filter(|&i| violates(points, i, level, p)).count()
}

/// Maximal runs of consecutive points forming a near-arithmetic ladder.
///
/// A run `points[s..=e]` conditions the indices `s..e` (each on its step to the
/// next point and on its divisor count) against the level `T`, the rounded
/// mean of `tau` over those indices. Runs grow from each start while the number
/// of violating indices stays within `floor(budget * (e - s))`; trailing
/// violations are trimmed when the shorter run remains admissible.
pub fn detect_ladders(points: &[OrbitPoint], params: &LadderParams) -> Result<Vec<LadderRun>> {
    if !(params.step_tol > 0.0 && params.step_tol < 1.0 && params.level_tol > 0.0 && params.level_tol < 1.0) {
        return Err(Error::invalid("ladder tolerances must lie in (0, 1)"));
    }
    if params.min_len < 3 {
        return Err(Error::invalid("minimum ladder length must be >= 3"));
    }
    if !(0.0..1.0).contains(&params.violation_budget) {
        return Err(Error::invalid("violation budget must lie in [0, 1)"));
    }
    let allowed = |conditioned: usize| libm::floor(params.violation_budget * conditioned as f64) as usize;

    let mut runs = Vec::new();
    let mut s = 0usize;
    while s + 1 < points.len() {
        let mut sum = 0u64;
        let mut level = 0u64;
        let mut bad = 0usize;
        let mut best: Option<(usize, u64, usize, u64)> = None;
        let mut e = s + 1;
        while e < points.len() {
            sum += points[e - 1].tau as u64;
            let c = (e - s) as u64;
            let next_level = round_mean(sum, c);
            if next_level != level {
                level = next_level;
                bad = count_violations(points, s, e, level, params);
            } else if violates(points, e - 1, level, params) {
                bad += 1;
            }
            if bad > allowed(e - s) {
                break;
            }
            best = Some((e, level, bad, sum));
            e += 1;
        }
        let Some((mut end, mut level, mut bad, mut sum)) = best else {
            s += 1;
            continue;
        };
        while end > s + 1 && violates(points, end - 1, level, params) {
            let trimmed_sum = sum - points[end - 1].tau as u64;
            let trimmed_level = round_mean(trimmed_sum, (end - 1 - s) as u64);
            let trimmed_bad = count_violations(points, s, end - 1, trimmed_level, params);
            if trimmed_bad > allowed(end - 1 - s) {
                break;
            }
            end -= 1;
            sum = trimmed_sum;
            level = trimmed_level;
            bad = trimmed_bad;
        }
        let len = end - s + 1;
        if len >= params.min_len {
            runs.push(LadderRun {
                start: s,
                values: points[s..=end].iter().map(|p| p.n).collect(),
                level,
                len,
                step_tol: params.step_tol,
                level_tol: params.level_tol,
                violations: bad,
            });
            s = end;
        } else {
            s += 1;
        }
    }
    Ok(runs)
}

/// Moduli scanned by [`mixing_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusGrid {
    pub moduli: Vec<u64>,
}

impl ModulusGrid {
    /// `2..=q_max` together with every prime in `(q_max, prime_max]`.
    pub fn new(q_max: u64, prime_max: u64) -> Self {
        let mut moduli: Vec<u64> = (2..=q_max).collect();
        let primes = crate::sieve::PrimeTable::new(prime_max);
        moduli.extend(primes.primes().iter().copied().filter(|&p| p > q_max));
        ModulusGrid { moduli }
    }
}

impl Default for ModulusGrid {
    fn default() -> Self {
        ModulusGrid::new(64, 101)
    }
}

/// Statistics for one `(q, h)` pair with `h != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow {
    pub q: u64,
    pub h: u64,
    pub bias: f64,
    pub phase_msq: f64,
    /// Share of points with `q / gcd(h, q)` dividing `tau(n_j)`.
    pub res_conc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingReport {
    pub scale: u64,
    pub visits: u64,
    pub discrepancy: f64,
    pub discrepancy_norm: f64,
    pub residues: BTreeMap<u64, ResidueDistribution>,
    pub rows: Vec<PhaseRow>,
}

impl MixingReport {
    pub fn row(&self, q: u64, h: u64) -> Option<&PhaseRow> {
        self.rows.iter().find(|r| r.q == q && r.h == h)
    }
}

/// Full diagnostic scan of one crossing over a modulus grid.
///
/// Bias and phase statistics come from residue counts of `n_j` and `tau(n_j)`
/// modulo each `q`, so the cost per modulus is `O(V + q^2)`.
pub fn mixing_report(segment: &Segment, grid: &ModulusGrid) -> Result<MixingReport> {
    let disc = divisor_discrepancy(segment)?;
    let points = &segment.points;
    let v = segment.visits();
    let mut residues = BTreeMap::new();
    let mut rows = Vec::new();
    for &q in &grid.moduli {
        if q < 2 {
            continue;
        }
        let dist = residue_distribution(points, q)?;
        let taus = tau_residues(points, q);
        for h in 1..q {
            let bias = dist.bias(h);
            let mut msq = KahanSum::default();
            for (b, &c) in taus.iter().enumerate() {
                if c > 0 {
                    msq.add(c as f64 * increment_sq(h, b as u64, q));
                }
            }
            let modulus = q / gcd(h, q);
            let hits: u64 = taus.iter().step_by(modulus as usize).sum();
            rows.push(PhaseRow {
                q,
                h,
                bias,
                phase_msq: msq.value() / v as f64,
                res_conc: hits as f64 / v as f64,
            });
        }
        residues.insert(q, dist);
    }
    Ok(MixingReport {
        scale: segment.scale,
        visits: v,
        discrepancy: disc.value,
        discrepancy_norm: disc.normalized,
        residues,
        rows,
    })
}
