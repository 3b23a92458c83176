//! Seeded synthetic datasets.
//!
//! All generators draw from xoshiro256** whose 256-bit state is filled by
//! four successive SplitMix64 outputs of the `u64` seed. A uniform draw on
//! `[0, 1)` is `(next_u64 >> 11) * 2^-53`. Values are drawn record by
//! record, dimension by dimension, so outputs are a pure function of the
//! inputs on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use super::dataset::{Dataset, NOISE_LABEL};
use crate::error::{Error, Result};

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_200_825;

/// Deterministic uniform source.
#[derive(Debug, Clone)]
pub struct UnitRng(Xoshiro256StarStar);

impl UnitRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn dimension_names(d: usize) -> Vec<String> {
    (1..=d).map(|j| format!("d{j}")).collect()
}

/// `n` records of `d` i.i.d. uniform values on `[0, 1)`.
pub fn gen_uniform_noise(n: usize, d: usize, seed: u64) -> Result<Dataset> {
    if n == 0 || d < 2 {
        return Err(Error::Dimensionality(format!("noise needs n >= 1 and d >= 2, got n={n}, d={d}")));
    }
    let mut rng = UnitRng::new(seed);
    let values = (0..n * d).map(|_| rng.next_unit()).collect();
    Dataset::new(dimension_names(d), values, None)
}

/// One box-shaped cluster: values uniform in `center ± spread` per dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub count: usize,
    pub center: Vec<f64>,
    pub spread: Vec<f64>,
}

/// Clusters plus uniform background noise over `dims` dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub dims: usize,
    pub clusters: Vec<Cluster>,
    pub noise_count: usize,
}

impl ClusterSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dims < 2 {
            return Err(Error::Dimensionality(format!("cluster spec has {} dimension(s)", self.dims)));
        }
        for (k, c) in self.clusters.iter().enumerate() {
            if c.center.len() != self.dims || c.spread.len() != self.dims {
                return Err(Error::Structure(format!("cluster {k}: center/spread must have {} entries", self.dims)));
            }
            if c.center.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::Structure(format!("cluster {k}: centers must lie in [0, 1]")));
            }
            if c.spread.iter().any(|s| !s.is_finite() || *s < 0.0) {
                return Err(Error::Structure(format!("cluster {k}: spreads must be finite and >= 0")));
            }
        }
        if self.total() == 0 {
            return Err(Error::Dimensionality("cluster spec produces no records".into()));
        }
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.clusters.iter().map(|c| c.count).sum::<usize>() + self.noise_count
    }
}

/// Cluster records first (labelled `0..`), then noise records labelled `-1`.
pub fn gen_clustered(spec: &ClusterSpec, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = UnitRng::new(seed);
    let mut values = Vec::with_capacity(spec.total() * spec.dims);
    let mut labels = Vec::with_capacity(spec.total());
    for (k, c) in spec.clusters.iter().enumerate() {
        for _ in 0..c.count {
            for (&m, &s) in c.center.iter().zip(&c.spread) {
                let u = rng.next_unit();
                values.push((m + s * (2.0 * u - 1.0)).clamp(0.0, 1.0));
            }
            labels.push(k as i64);
        }
    }
    for _ in 0..spec.noise_count {
        for _ in 0..spec.dims {
            values.push(rng.next_unit());
        }
        labels.push(NOISE_LABEL);
    }
    Dataset::new(dimension_names(spec.dims), values, Some(labels))
}
