//! Serializable mirrors of the core reports.

use orbitlab_core::scale::RatioRow;
use orbitlab_core::{DyadicRecord, OrbitSummary};
use serde::{Deserialize, Serialize};

use crate::envelope::dec;

/// [`OrbitSummary`] field for field, with wide integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryJson {
    #[serde(with = "dec")]
    pub x: u64,
    #[serde(with = "dec")]
    pub a_x: u64,
    #[serde(with = "dec")]
    pub n_final: i64,
    #[serde(with = "dec")]
    pub total_energy: u64,
    pub last_tau: u16,
    pub max_tau: u16,
    pub dyadic: Vec<DyadicJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicJson {
    #[serde(with = "dec")]
    pub scale: u64,
    #[serde(with = "dec")]
    pub j_plus: u64,
    #[serde(with = "dec")]
    pub j_minus: u64,
    #[serde(with = "dec")]
    pub visits: u64,
    #[serde(with = "dec")]
    pub energy: u64,
    #[serde(with = "dec")]
    pub sum_tau_sq: u64,
    pub delta: u16,
    pub delta_exact: bool,
    pub complete: bool,
}

impl From<&DyadicRecord> for DyadicJson {
    fn from(r: &DyadicRecord) -> Self {
        DyadicJson {
            scale: r.scale,
            j_plus: r.j_plus,
            j_minus: r.j_minus,
            visits: r.visits,
            energy: r.energy,
            sum_tau_sq: r.sum_tau_sq,
            delta: r.delta,
            delta_exact: r.delta_exact,
            complete: r.complete,
        }
    }
}

impl From<&DyadicJson> for DyadicRecord {
    fn from(r: &DyadicJson) -> Self {
        DyadicRecord {
            scale: r.scale,
            j_plus: r.j_plus,
            j_minus: r.j_minus,
            visits: r.visits,
            energy: r.energy,
            sum_tau_sq: r.sum_tau_sq,
            delta: r.delta,
            delta_exact: r.delta_exact,
            complete: r.complete,
        }
    }
}

impl From<&OrbitSummary> for SummaryJson {
    fn from(s: &OrbitSummary) -> Self {
        SummaryJson {
            x: s.x,
            a_x: s.a_x,
            n_final: s.n_final,
            total_energy: s.total_energy,
            last_tau: s.last_tau,
            max_tau: s.max_tau,
            dyadic: s.dyadic.iter().map(DyadicJson::from).collect(),
        }
    }
}

impl From<&SummaryJson> for OrbitSummary {
    fn from(s: &SummaryJson) -> Self {
        OrbitSummary {
            x: s.x,
            a_x: s.a_x,
            n_final: s.n_final,
            total_energy: s.total_energy,
            last_tau: s.last_tau,
            max_tau: s.max_tau,
            dyadic: s.dyadic.iter().map(DyadicRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioJson {
    #[serde(with = "dec")]
    pub x: u64,
    #[serde(with = "dec")]
    pub a_x: u64,
    pub r_logx: f64,
    pub r_loglog: f64,
    pub r_li: f64,
}

impl From<&RatioRow> for RatioJson {
    fn from(r: &RatioRow) -> Self {
        RatioJson {
            x: r.x,
            a_x: r.a_x,
            r_logx: r.r_log,
            r_loglog: r.r_loglog,
            r_li: r.r_li,
        }
    }
}

/// Maximum concentration ratio of one sampler run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMax {
    #[serde(with = "dec")]
    pub scale: u64,
    pub level: u64,
    pub samples: u64,
    pub eps: f64,
    pub max_ratio: f64,
}

/// Largest single-level energy share on one crossing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcMax {
    #[serde(with = "dec")]
    pub scale: u64,
    #[serde(with = "dec")]
    pub visits: u64,
    #[serde(with = "dec")]
    pub energy: u64,
    pub mode: String,
    pub argmax: u64,
    pub max_frac: f64,
    pub smoothed_max_frac: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_mirror_round_trips() {
        let s = orbitlab_core::run_orbit(5000, &Default::default()).unwrap().summary;
        let j = SummaryJson::from(&s);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"a_x\":\"") && text.contains("\"n_final\":\"0\""));
        let back: SummaryJson = serde_json::from_str(&text).unwrap();
        assert_eq!(OrbitSummary::from(&back), s);
    }
}
