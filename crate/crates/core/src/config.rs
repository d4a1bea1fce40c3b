use crate::error::{Error, Result};

/// How vertex degrees are measured when building preferential-attachment
/// constants and volume vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeWeighting {
    /// Sum of edge weights (trade volumes).
    #[default]
    Volume,
    /// Number of distinct neighbours.
    Count,
}

impl std::str::FromStr for DegreeWeighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "volume" => Ok(DegreeWeighting::Volume),
            "count" => Ok(DegreeWeighting::Count),
            other => Err(Error::Config(format!("unknown degree weighting `{other}`"))),
        }
    }
}

/// Every tunable shared by the ranking algorithms.
///
/// Fields are private so the open-interval bounds cannot be bypassed; use
/// [`RunConfig::builder`] to override defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    alpha: f64,
    beta: f64,
    zeta: f64,
    blend_c: f64,
    tolerance: f64,
    max_iterations: usize,
    rng_seed: u64,
    degree_weighting: DegreeWeighting,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alpha: 0.85,
            beta: 0.5,
            zeta: 0.99,
            blend_c: 0.5,
            tolerance: 1e-8,
            max_iterations: 10_000,
            rng_seed: 0,
            degree_weighting: DegreeWeighting::Volume,
        }
    }
}

impl RunConfig {
    pub fn builder() -> RunConfigBuilder {
        RunConfigBuilder { cfg: RunConfig::default() }
    }

    /// Builder seeded with this configuration.
    pub fn to_builder(&self) -> RunConfigBuilder {
        RunConfigBuilder { cfg: self.clone() }
    }

    /// PageRank damping factor.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Weight of the inlink (buying) part of the trade operator.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Smoothing factor for HITS and the trade operators.
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Blend weight of the flow ranking against reserved resources.
    pub fn blend_c(&self) -> f64 {
        self.blend_c
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn degree_weighting(&self) -> DegreeWeighting {
        self.degree_weighting
    }

    /// Key/value pairs of the resolved configuration, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("alpha", self.alpha.to_string()),
            ("beta", self.beta.to_string()),
            ("zeta", self.zeta.to_string()),
            ("c", self.blend_c.to_string()),
            ("tolerance", self.tolerance.to_string()),
            ("max_iterations", self.max_iterations.to_string()),
            ("seed", self.rng_seed.to_string()),
            (
                "degree_weighting",
                match self.degree_weighting {
                    DegreeWeighting::Volume => "volume".into(),
                    DegreeWeighting::Count => "count".into(),
                },
            ),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct RunConfigBuilder {
    cfg: RunConfig,
}

fn open_unit(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")))
    }
}

impl RunConfigBuilder {
    pub fn alpha(mut self, v: f64) -> Self {
        self.cfg.alpha = v;
        self
    }

    pub fn beta(mut self, v: f64) -> Self {
        self.cfg.beta = v;
        self
    }

    pub fn zeta(mut self, v: f64) -> Self {
        self.cfg.zeta = v;
        self
    }

    pub fn blend_c(mut self, v: f64) -> Self {
        self.cfg.blend_c = v;
        self
    }

    pub fn tolerance(mut self, v: f64) -> Self {
        self.cfg.tolerance = v;
        self
    }

    pub fn max_iterations(mut self, v: usize) -> Self {
        self.cfg.max_iterations = v;
        self
    }

    pub fn rng_seed(mut self, v: u64) -> Self {
        self.cfg.rng_seed = v;
        self
    }

    pub fn degree_weighting(mut self, v: DegreeWeighting) -> Self {
        self.cfg.degree_weighting = v;
        self
    }

    /// Set a field by its textual key, as used in config files.
    pub fn set(self, key: &str, value: &str) -> Result<Self> {
        let num =
            |v: &str| v.parse::<f64>().map_err(|_| Error::Config(format!("{key}: not a number: `{v}`")));
        let int =
            |v: &str| v.parse::<u64>().map_err(|_| Error::Config(format!("{key}: not an integer: `{v}`")));
        Ok(match key {
            "alpha" => self.alpha(num(value)?),
            "beta" => self.beta(num(value)?),
            "zeta" => self.zeta(num(value)?),
            "c" | "blend_c" => self.blend_c(num(value)?),
            "tolerance" => self.tolerance(num(value)?),
            "max_iterations" => self.max_iterations(int(value)? as usize),
            "seed" | "rng_seed" => self.rng_seed(int(value)?),
            "degree_weighting" => self.degree_weighting(value.parse()?),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        })
    }

    pub fn build(self) -> Result<RunConfig> {
        let c = self.cfg;
        open_unit("alpha", c.alpha)?;
        open_unit("beta", c.beta)?;
        open_unit("zeta", c.zeta)?;
        open_unit("c", c.blend_c)?;
        if !(c.tolerance.is_finite() && c.tolerance > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", c.tolerance)));
        }
        if c.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be positive".into()));
        }
        Ok(c)
    }
}
