//! Lightweight one-stage object detection toolkit.
//!
//! The crate is organized around the usual detector decomposition:
//!
//! - [`backbone`]: MobileDenseNet feature extractor (plus a MobileNetV1
//!   reference) producing the C3..C7 feature ladder,
//! - [`neck`]: SSDLite / SSDCLite / FPNLite / FCPNLite pyramid fusion
//!   into P3..P7,
//! - [`heads`]: classification + box regression heads with configurable
//!   weight sharing across pyramid levels,
//! - [`anchors`]: prior-box generation, SSD offset encoding and
//!   ground-truth matching,
//! - [`loss`]: cross-entropy with hard negative mining and DIoU box loss
//!   (focal / smooth-L1 ablation options),
//! - [`train`]: SGD training loop with multi-scale sampling and
//!   augmentation,
//! - [`postprocess`] / [`eval`]: decoding, NMS and COCO-style AP,
//! - [`analysis`]: static multiply-add and parameter counting,
//! - [`data`]: COCO JSON ingestion and a deterministic synthetic
//!   shapes dataset.
//!
//! Everything runs on the CPU through a small self-contained layer
//! library in [`nn`]; forward and backward passes are hand written so
//! training is bitwise reproducible for a fixed seed.

pub mod analysis;
pub mod anchors;
pub mod augment;
pub mod backbone;
pub mod checkpoint;
pub mod config;
pub mod data;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod heads;
pub mod loss;
pub mod model;
pub mod neck;
pub mod nn;
pub mod postprocess;
pub mod train;

pub use config::ModelConfig;
pub use error::{Error, Result};
pub use geometry::{BoxXYXY, LabeledBox};
