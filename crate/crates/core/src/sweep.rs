//! Parameter sweeps over the bath temperatures and their CSV output.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{optimal_performance, PerformancePoint};
use crate::error::{invalid, EngineError, Result};
use crate::restrictions::{resolve_params, RestrictionModel};

/// Which parameter the sweep grid runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// `β_C / β_H` at fixed `β_H ω`.
    Ratio,
    /// `β_H ω` at fixed `β_C ω`.
    Bh,
    /// `β_C ω` at fixed `β_H ω`.
    Bc,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ratio => "ratio",
            Self::Bh => "bh",
            Self::Bc => "bc",
        }
    }
}

impl FromStr for Axis {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(Self::Ratio),
            "bh" => Ok(Self::Bh),
            "bc" => Ok(Self::Bc),
            _ => Err(invalid(format!("unknown axis {s:?}; expected ratio, bh or bc"))),
        }
    }
}

/// Restrictions for the hot and cold side; written `m` when both agree, else `hot/cold`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelPair {
    pub hot: RestrictionModel,
    pub cold: RestrictionModel,
}

impl ModelPair {
    pub fn both(model: RestrictionModel) -> Self {
        Self {
            hot: model,
            cold: model,
        }
    }
}

impl fmt::Display for ModelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hot == self.cold {
            write!(f, "{}", self.hot)
        } else {
            write!(f, "{}/{}", self.hot, self.cold)
        }
    }
}

impl FromStr for ModelPair {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((h, c)) => Ok(Self {
                hot: h.parse()?,
                cold: c.parse()?,
            }),
            None => Ok(Self::both(s.parse()?)),
        }
    }
}

/// Which per-model columns a sweep writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Columns {
    Efficiency,
    Work,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub beta_h_omega: f64,
    /// Only used when sweeping `β_H ω`.
    pub beta_c_omega: f64,
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub models: Vec<ModelPair>,
    pub columns: Columns,
    /// Emit non-operational points instead of blank fields.
    pub raw: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(invalid("sweep grid is empty"));
        }
        if self.grid.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(invalid("sweep grid values must be finite and positive"));
        }
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("sweep grid must be strictly increasing"));
        }
        if self.models.is_empty() {
            return Err(invalid("sweep needs at least one model"));
        }
        for b in [self.beta_h_omega, self.beta_c_omega] {
            if !(b.is_finite() && b >= 0.0) {
                return Err(invalid(format!("beta*omega = {b} must be finite and >= 0")));
            }
        }
        Ok(())
    }

    /// `(β_H ω, β_C ω)` at one grid value.
    pub fn betas_at(&self, v: f64) -> (f64, f64) {
        match self.axis {
            Axis::Ratio => (self.beta_h_omega, v * self.beta_h_omega),
            Axis::Bh => (v, self.beta_c_omega),
            Axis::Bc => (self.beta_h_omega, v),
        }
    }
}

/// `n` evenly spaced values over `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| {
                if k + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelPoint {
    pub point: PerformancePoint,
    /// A Jaynes-Cummings `λ_max` was clamped into `[0, 1]`.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub beta_h_omega: f64,
    pub beta_c_omega: f64,
    pub models: Vec<ModelPoint>,
}

impl SweepRow {
    pub fn carnot(&self) -> Option<f64> {
        (self.beta_c_omega > 0.0).then(|| 1.0 - self.beta_h_omega / self.beta_c_omega)
    }
}

/// Evaluates every model at every grid value; rows come back in grid order.
pub fn compute_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    cfg.grid
        .par_iter()
        .map(|&v| {
            let (bh, bc) = cfg.betas_at(v);
            let models = cfg
                .models
                .iter()
                .map(|m| {
                    let r = resolve_params(m.hot, m.cold, bh, bc)?;
                    Ok(ModelPoint {
                        point: optimal_performance(&r.params),
                        clamped: r.hot.clamped || r.cold.clamped,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                value: v,
                beta_h_omega: bh,
                beta_c_omega: bc,
                models,
            })
        })
        .collect()
}

/// `%.9g`-style formatting: nine significant digits, trailing zeros removed.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        trim_zeros(format!("{:.*}", (8 - exp) as usize, v))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn opt_field(v: Option<f64>) -> String {
    v.map(format_sig).unwrap_or_default()
}

/// Writes a sweep as CSV: a `#` metadata line, a header, then one row per grid value.
pub fn write_sweep_csv<W: Write + ?Sized>(
    out: &mut W,
    cfg: &SweepConfig,
    rows: &[SweepRow],
    meta: &str,
) -> io::Result<()> {
    writeln!(out, "# {meta}")?;
    let mut header = vec![
        cfg.axis.name().to_string(),
        "beta_h_omega".into(),
        "beta_c_omega".into(),
        "eta_carnot".into(),
    ];
    let eff = matches!(cfg.columns, Columns::Efficiency | Columns::Both);
    let work = matches!(cfg.columns, Columns::Work | Columns::Both);
    if eff {
        header.extend(cfg.models.iter().map(|m| format!("eta_{m}")));
    }
    if work {
        header.extend(cfg.models.iter().map(|m| format!("bh_w_{m}")));
    }
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut fields = vec![
            format_sig(row.value),
            format_sig(row.beta_h_omega),
            format_sig(row.beta_c_omega),
            opt_field(row.carnot()),
        ];
        let shown = |mp: &ModelPoint| cfg.raw || mp.point.operational;
        if eff {
            fields.extend(row.models.iter().map(|mp| {
                if shown(mp) {
                    opt_field(mp.point.eta_max)
                } else {
                    String::new()
                }
            }));
        }
        if work {
            fields.extend(row.models.iter().map(|mp| {
                if shown(mp) {
                    format_sig(row.beta_h_omega * mp.point.w_max)
                } else {
                    String::new()
                }
            }));
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Writes `(η, β_H W)` curves in long format, one block of rows per model.
/// Non-operational points are omitted unless `cfg.raw` is set.
pub fn write_tradeoff_csv<W: Write + ?Sized>(
    out: &mut W,
    cfg: &SweepConfig,
    rows: &[SweepRow],
    meta: &str,
) -> io::Result<()> {
    writeln!(out, "# {meta}")?;
    writeln!(out, "model,{},eta,bh_w", cfg.axis.name())?;
    for (k, m) in cfg.models.iter().enumerate() {
        for row in rows {
            let mp = &row.models[k];
            if !cfg.raw && !mp.point.operational {
                continue;
            }
            writeln!(
                out,
                "{},{},{},{}",
                m,
                format_sig(row.value),
                opt_field(mp.point.eta_max),
                format_sig(row.beta_h_omega * mp.point.w_max)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite_bath_sweep() -> SweepConfig {
        SweepConfig {
            beta_h_omega: 0.2,
            beta_c_omega: 0.6,
            axis: Axis::Ratio,
            grid: linspace(1.05, 10.0, 100),
            models: ["unrestricted", "fb:15", "fb:10", "fb:5"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
            columns: Columns::Both,
            raw: false,
        }
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.129_806_653_076_399_7), "0.129806653");
        assert_eq!(format_sig(3.0), "3");
        assert_eq!(format_sig(-2.5), "-2.5");
        assert_eq!(format_sig(1.0e-7), "1e-07");
        assert_eq!(format_sig(123_456_789_012.0), "1.23456789e+11");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333");
    }

    #[test]
    fn model_pair_parsing() {
        let p: ModelPair = "fb:10/jc".parse().unwrap();
        assert_eq!(p.hot, RestrictionModel::FiniteBath(10));
        assert_eq!(p.cold, RestrictionModel::JaynesCummings);
        assert_eq!(p.to_string(), "fb:10/jc");
        assert_eq!("fb:3".parse::<ModelPair>().unwrap().to_string(), "fb:3");
    }

    #[test]
    fn grid_validation() {
        let mut c = finite_bath_sweep();
        c.grid = vec![1.0, 1.0];
        assert!(c.validate().is_err());
        c.grid = vec![-1.0, 2.0];
        assert!(c.validate().is_err());
        c.grid = vec![];
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_ratio_single_row() {
        let mut c = finite_bath_sweep();
        c.grid = vec![3.0];
        let rows = compute_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &c, &rows, "test").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("3,0.2,0.6,0.666666667,0.509289743,"));
    }

    #[test]
    fn finite_bath_curves_are_ordered() {
        let c = finite_bath_sweep();
        for row in compute_sweep(&c).unwrap() {
            let pts: Vec<&PerformancePoint> = row.models.iter().map(|m| &m.point).collect();
            // models: unrestricted, 15, 10, 5
            for w in pts.windows(2) {
                if w[1].operational {
                    assert!(w[1].eta_max.unwrap() <= w[0].eta_max.unwrap() + 1e-12);
                    assert!(w[1].w_max <= w[0].w_max + 1e-12);
                }
            }
        }
    }

    #[test]
    fn tradeoff_skips_non_operational() {
        let mut c = finite_bath_sweep();
        c.grid = vec![1.01, 3.0];
        c.models = vec!["unrestricted".parse().unwrap()];
        let rows = compute_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_tradeoff_csv(&mut buf, &c, &rows, "t").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(data, vec!["unrestricted,3,0.509289743,0.0259613306"]);
    }
}
