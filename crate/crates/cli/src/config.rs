//! Run configuration shared by all subcommands.

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub const MAX_TOTAL_DIM: usize = 8;
pub const MIN_RESOLUTION: usize = 8;

/// Serialised verbatim into every report; field order is the key order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub p: usize,
    pub q: usize,
    pub s: Vec<f64>,
    pub k: usize,
    #[serde(rename = "J")]
    pub truncation: usize,
    pub res: usize,
    pub h: f64,
    pub seed: u64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

/// Command-specific sampling parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_axis: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_axis: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_range: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_range: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

/// `lo:hi:n`, n ≥ 1 equally spaced samples including both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn samples(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + step * i as f64).collect()
    }
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got '{s}'"));
        }
        let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad lo '{}': {e}", parts[0]))?;
        let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad hi '{}': {e}", parts[1]))?;
        let n: usize = parts[2].trim().parse().map_err(|e| format!("bad n '{}': {e}", parts[2]))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() || n > 10_000 {
            return Err(format!("range '{s}' needs finite ends and 1 <= n <= 10000"));
        }
        Ok(Self { lo, hi, n })
    }
}

/// Comma-separated floats, as accepted by `--s` and `--y`.
pub fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")))
        .collect()
}

impl RunConfig {
    /// Defaults used by the library entry points and tests.
    pub fn new(command: &str, p: usize, q: usize) -> Self {
        let mut s = vec![0.0; q.max(1)];
        s[0] = 1.0;
        Self {
            command: command.to_string(),
            p,
            q,
            s,
            k: 3,
            truncation: biaxial_core::fields::DEFAULT_TRUNCATION,
            res: 32,
            h: biaxial_core::fields::DEFAULT_FD_STEP,
            seed: 1,
            format: Format::Json,
            field: None,
            grid: None,
        }
    }

    /// Checks the shared invariants and normalises `s`.
    pub fn validate(mut self) -> Result<Self, CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.p < 2 {
            return bad(format!("p must be >= 2, got {}", self.p));
        }
        if self.q < 1 {
            return bad(format!("q must be >= 1, got {}", self.q));
        }
        if self.p + self.q > MAX_TOTAL_DIM {
            return bad(format!("p + q must be <= {MAX_TOTAL_DIM}, got {}", self.p + self.q));
        }
        if self.res < MIN_RESOLUTION {
            return bad(format!("res must be >= {MIN_RESOLUTION}, got {}", self.res));
        }
        let (lo, hi) = biaxial_core::fields::FD_STEP_RANGE;
        if !(lo..=hi).contains(&self.h) {
            return bad(format!("h must lie in [{lo:e}, {hi:e}], got {:e}", self.h));
        }
        if self.truncation > biaxial_core::fields::MAX_TRUNCATION {
            return bad(format!(
                "J must be <= {}, got {}",
                biaxial_core::fields::MAX_TRUNCATION,
                self.truncation
            ));
        }
        if self.k > biaxial_core::planewave::MAX_POLY_DEGREE {
            return bad(format!(
                "k must be <= {}, got {}",
                biaxial_core::planewave::MAX_POLY_DEGREE,
                self.k
            ));
        }
        if self.s.len() != self.q {
            return bad(format!("s has {} components but q = {}", self.s.len(), self.q));
        }
        let n = biaxial_core::clifford::norm(&self.s);
        if !(n > 0.0) || !n.is_finite() {
            return bad("s must be a nonzero finite vector".into());
        }
        for v in &mut self.s {
            *v /= n;
        }
        Ok(self)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid.clone().unwrap_or(GridSpec {
            x_axis: None,
            y_axis: None,
            r_range: None,
            theta_range: None,
            y: None,
            points: None,
            radius: None,
        })
    }
}
