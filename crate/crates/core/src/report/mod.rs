//! CSV tables, run manifests and SVG heatmaps for sweep results.

pub mod heatmap;
pub mod manifest;
pub mod table;

pub use heatmap::{render_heatmaps, render_svg, ColorScale, ColorValue, HeatmapOptions};
pub use manifest::{write_manifest, Manifest, ManifestCell};
pub use table::{HeatmapTable, TableRow};
