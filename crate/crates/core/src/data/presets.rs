//! Named dataset recipes shipped with the crate.
//!
//! Each preset is a TOML file with a `name`, `description`, `seed` and a
//! `kind`. `kind = "noise"` takes `records` and `dimensions`.
//! `kind = "clustered"` takes `dimensions`, a `noise` count and one
//! `[[cluster]]` table per cluster with `count`, `center` (one entry per
//! dimension) and `spread` (a number or one entry per dimension).

use serde::Deserialize;

use super::dataset::Dataset;
use super::generate::{gen_clustered, gen_uniform_noise, Cluster, ClusterSpec};
use crate::error::{Error, Result};

const BUILTIN: &[(&str, &str)] = &[
    ("fig1", include_str!("../../presets/fig1.toml")),
    ("fig3-noise-100", include_str!("../../presets/fig3-noise-100.toml")),
    ("fig3-noise-200", include_str!("../../presets/fig3-noise-200.toml")),
    ("fig3-noise-400", include_str!("../../presets/fig3-noise-400.toml")),
    ("fig4-synthetic", include_str!("../../presets/fig4-synthetic.toml")),
];

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum Spread {
    Uniform(f64),
    PerDimension(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClusterDef {
    count: usize,
    center: Vec<f64>,
    spread: Spread,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Recipe {
    Noise {
        records: usize,
        dimensions: usize,
    },
    Clustered {
        dimensions: usize,
        #[serde(default)]
        noise: usize,
        #[serde(default)]
        cluster: Vec<ClusterDef>,
    },
}

/// A parsed preset file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Preset {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub seed: u64,
    #[serde(flatten)]
    recipe: Recipe,
}

impl Preset {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Preset(e.to_string()))
    }

    /// Generates the dataset with the preset's own seed.
    pub fn generate(&self) -> Result<Dataset> {
        self.generate_with_seed(self.seed)
    }

    pub fn generate_with_seed(&self, seed: u64) -> Result<Dataset> {
        match &self.recipe {
            Recipe::Noise { records, dimensions } => gen_uniform_noise(*records, *dimensions, seed),
            Recipe::Clustered { .. } => gen_clustered(&self.cluster_spec().unwrap(), seed),
        }
    }

    /// The cluster recipe, for clustered presets.
    pub fn cluster_spec(&self) -> Option<ClusterSpec> {
        let Recipe::Clustered { dimensions, noise, cluster } = &self.recipe else {
            return None;
        };
        Some(ClusterSpec {
            dims: *dimensions,
            noise_count: *noise,
            clusters: cluster
                .iter()
                .map(|c| Cluster {
                    count: c.count,
                    center: c.center.clone(),
                    spread: match &c.spread {
                        Spread::Uniform(s) => vec![*s; *dimensions],
                        Spread::PerDimension(v) => v.clone(),
                    },
                })
                .collect(),
        })
    }
}

/// Names of the built-in presets, sorted.
pub fn preset_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    let (_, text) = BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Preset(format!("unknown preset {name:?}; known: {}", preset_names().join(", "))))?;
    Preset::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_generate() {
        for name in preset_names() {
            let p = preset(name).unwrap();
            assert_eq!(p.name, name);
            let ds = p.generate().unwrap();
            assert!(!ds.is_empty());
        }
    }

    #[test]
    fn noise_presets_have_paper_sizes() {
        for n in [100, 200, 400] {
            let ds = preset(&format!("fig3-noise-{n}")).unwrap().generate().unwrap();
            assert_eq!(ds.len(), n);
            assert!(ds.labels().is_none());
        }
    }

    #[test]
    fn fig1_has_three_clusters_over_five_dims() {
        let spec = preset("fig1").unwrap().cluster_spec().unwrap();
        assert_eq!(spec.dims, 5);
        assert_eq!(spec.clusters.len(), 3);
        for c in &spec.clusters {
            // Flat across the first three axes.
            assert!(c.center[0] == c.center[1] && c.center[1] == c.center[2]);
        }
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(preset("nope"), Err(Error::Preset(_))));
    }

    #[test]
    fn malformed_preset() {
        assert!(Preset::parse("name = \"x\"\nseed = 1\nkind = \"spiral\"\n").is_err());
        let p = Preset::parse(
            "name = \"x\"\nseed = 1\nkind = \"clustered\"\ndimensions = 2\n[[cluster]]\ncount = 2\ncenter = [0.5]\nspread = 0.1\n",
        )
        .unwrap();
        assert!(p.generate().is_err());
    }
}
