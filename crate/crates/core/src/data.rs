//! Datasets, CSV ingestion, normalization, axis manipulation and seeded
//! synthetic generators.

mod dataset;
mod generate;
mod presets;

pub use dataset::{
    flip_axis, load_csv, normalize, reorder_axes, Dataset, NormalizedDataset, LABEL_COLUMN, NOISE_LABEL,
};
pub use generate::{gen_clustered, gen_uniform_noise, Cluster, ClusterSpec, UnitRng, DEFAULT_SEED};
pub use presets::{preset, preset_names, Preset};
