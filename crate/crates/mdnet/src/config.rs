//! Model and training configuration.
//!
//! One flat record covers every architecture and training knob so that
//! each ablation row (head sharing modes, neck variants, backbone
//! choice) is expressible as a small config delta, either in a JSON
//! file or through dotted-key overrides on the command line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackboneVariant {
    MobileDenseNet,
    MobileNetV1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeckVariant {
    SsdLite,
    SsdCLite,
    FpnLite,
    FcpnLite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeadShareMode {
    FullShare,
    ShareExcept1,
    HalfShare,
    NonShare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClsLoss {
    CeHnm,
    Focal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocLoss {
    Diou,
    SmoothL1,
}

/// Whether hard negative mining ranks negatives within each image or
/// across the whole batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MiningScope {
    PerImage,
    PerBatch,
}

/// Full architecture + training hyperparameter record.
///
/// Unknown keys in a JSON document are rejected so a typo in a
/// hyperparameter name cannot silently fall back to a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    // Architecture.
    pub input_size: usize,
    pub backbone_variant: BackboneVariant,
    pub block_layer_counts: Vec<usize>,
    pub block_channel_widths: Vec<usize>,
    /// `(block, layer)` pairs (1-based) whose unit concatenates the
    /// block's first-unit output before a 1x1 bottleneck.
    pub dense_connection_sites: Vec<(usize, usize)>,
    pub bottleneck_ratio: f64,
    /// Channel width of the C6/C7 extra levels.
    pub extra_level_channels: usize,
    pub neck_variant: NeckVariant,
    pub neck_channels: usize,
    pub head_share_mode: HeadShareMode,
    /// Number of classes including background (SSD convention;
    /// background occupies logit column 0).
    pub num_classes: usize,

    // Anchors.
    pub anchor_base_sizes: Vec<f64>,
    pub anchor_scales: Vec<f64>,
    pub anchor_ratios: Vec<f64>,
    pub anchors_per_cell: usize,
    pub match_iou_threshold: f64,

    // Losses.
    pub cls_loss: ClsLoss,
    pub loc_loss: LocLoss,
    pub pos_neg_ratio: usize,
    pub negative_coefficient: f64,
    pub balance_a: f64,
    pub mining_scope: MiningScope,
    pub focal_alpha: f64,
    pub focal_gamma: f64,

    // Training schedule.
    pub initial_lr: f64,
    pub lr_milestones: Vec<usize>,
    pub lr_gamma: f64,
    pub total_iterations: usize,
    pub weight_decay: f64,
    pub momentum: f64,
    pub batch_size: usize,
    pub multi_scale: Vec<usize>,
    pub checkpoint_interval: usize,

    // Augmentation.
    pub flip_probability: f64,
    pub crop_probability: f64,
    pub color_jitter: f64,

    // Postprocessing.
    pub score_threshold: f64,
    pub nms_iou: f64,
    pub top_k: usize,

    pub seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            input_size: 320,
            backbone_variant: BackboneVariant::MobileDenseNet,
            block_layer_counts: vec![1, 3, 3, 3, 4],
            block_channel_widths: vec![64, 64, 128, 256, 704],
            dense_connection_sites: vec![(2, 3), (3, 3), (4, 3), (5, 3), (5, 4)],
            bottleneck_ratio: 0.5,
            extra_level_channels: 256,
            neck_variant: NeckVariant::FcpnLite,
            neck_channels: 256,
            head_share_mode: HeadShareMode::HalfShare,
            num_classes: 81,
            anchor_base_sizes: vec![24.0, 48.0, 96.0, 192.0, 384.0],
            anchor_scales: vec![1.0, std::f64::consts::SQRT_2],
            anchor_ratios: vec![1.0, 0.5, 1.0 / 3.0, 2.0, 3.0],
            anchors_per_cell: 10,
            match_iou_threshold: 0.5,
            cls_loss: ClsLoss::CeHnm,
            loc_loss: LocLoss::Diou,
            pos_neg_ratio: 6,
            negative_coefficient: 0.5,
            balance_a: 1.0,
            mining_scope: MiningScope::PerImage,
            focal_alpha: 0.25,
            focal_gamma: 2.0,
            initial_lr: 1e-3,
            lr_milestones: vec![40_000, 60_000],
            lr_gamma: 0.1,
            total_iterations: 80_000,
            weight_decay: 5e-4,
            momentum: 0.9,
            batch_size: 32,
            multi_scale: vec![256, 288, 320, 352, 384],
            checkpoint_interval: 10_000,
            flip_probability: 0.5,
            crop_probability: 0.5,
            color_jitter: 0.25,
            score_threshold: 0.05,
            nms_iou: 0.45,
            top_k: 200,
            seed: 0,
        }
    }
}

impl ModelConfig {
    /// Validate the cross-field invariants. Called by every model
    /// builder so a bad config fails before any computation.
    pub fn validate(&self) -> Result<()> {
        if self.input_size == 0 || self.input_size % 32 != 0 {
            return Err(Error::config(format!(
                "input_size must be a positive multiple of 32, got {}",
                self.input_size
            )));
        }
        if self.block_layer_counts.len() != 5 {
            return Err(Error::config(format!(
                "block_layer_counts must have 5 entries, got {}",
                self.block_layer_counts.len()
            )));
        }
        if self.block_channel_widths.len() != 5 {
            return Err(Error::config(format!(
                "block_channel_widths must have 5 entries, got {}",
                self.block_channel_widths.len()
            )));
        }
        if self.block_layer_counts.iter().any(|&n| n == 0) {
            return Err(Error::config("every block needs at least one layer"));
        }
        if self.block_channel_widths.iter().any(|&w| w == 0)
            || self.neck_channels == 0
            || self.extra_level_channels == 0
        {
            return Err(Error::config("channel widths must be positive"));
        }
        for &(block, layer) in &self.dense_connection_sites {
            if !(1..=5).contains(&block) {
                return Err(Error::config(format!(
                    "dense site block index {block} out of range 1..=5"
                )));
            }
            let layers = self.block_layer_counts[block - 1];
            if layer < 2 || layer > layers {
                return Err(Error::config(format!(
                    "dense site ({block}, {layer}) needs 2 <= layer <= {layers}"
                )));
            }
        }
        if !(self.bottleneck_ratio > 0.0 && self.bottleneck_ratio <= 1.0) {
            return Err(Error::config("bottleneck_ratio must be in (0, 1]"));
        }
        if self.anchor_base_sizes.len() != 5 {
            return Err(Error::config(format!(
                "anchor_base_sizes must have 5 entries, got {}",
                self.anchor_base_sizes.len()
            )));
        }
        if self.anchors_per_cell != self.anchor_scales.len() * self.anchor_ratios.len() {
            return Err(Error::config(format!(
                "anchors_per_cell ({}) must equal |scales| x |ratios| ({} x {})",
                self.anchors_per_cell,
                self.anchor_scales.len(),
                self.anchor_ratios.len()
            )));
        }
        if self.num_classes < 2 {
            return Err(Error::config(
                "num_classes includes background and must be at least 2",
            ));
        }
        if self.multi_scale.is_empty() {
            return Err(Error::config("multi_scale set must be nonempty"));
        }
        for &s in &self.multi_scale {
            if s == 0 || s % 32 != 0 {
                return Err(Error::config(format!(
                    "multi-scale size {s} is not a positive multiple of 32"
                )));
            }
        }
        if self.batch_size == 0 {
            return Err(Error::config("batch_size must be positive"));
        }
        let mut prev = 0usize;
        for &m in &self.lr_milestones {
            if m <= prev {
                return Err(Error::config("lr_milestones must be strictly increasing"));
            }
            prev = m;
        }
        Ok(())
    }

    /// Number of foreground classes (excluding background).
    pub fn num_foreground(&self) -> usize {
        self.num_classes - 1
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let cfg: ModelConfig = serde_json::from_str(json)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Apply a `key=value` override with dotted/flat keys matching the
    /// JSON field names. Values are parsed as JSON when possible so
    /// lists (`multi_scale=[128]`) and strings both work; bare words
    /// are treated as strings (`neck_variant=ssdclite`).
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let mut doc = serde_json::to_value(&*self).expect("config serializes");
        let obj = doc.as_object_mut().expect("config is a JSON object");
        if !obj.contains_key(key) {
            return Err(Error::config(format!("unknown config key '{key}'")));
        }
        let parsed: serde_json::Value = match serde_json::from_str(value) {
            Ok(v) => v,
            Err(_) => serde_json::Value::String(value.to_string()),
        };
        obj.insert(key.to_string(), parsed);
        let updated: ModelConfig = serde_json::from_value(doc)
            .map_err(|e| Error::config(format!("invalid value for '{key}': {e}")))?;
        *self = updated;
        self.validate()
    }

    /// Reduced configuration for desk-scale experiments: half-width
    /// backbone, narrow neck/heads, small input, shortened schedule
    /// with proportionally scaled milestones.
    pub fn desk_scale(num_classes: usize, input_size: usize, total_iterations: usize) -> Self {
        let mut cfg = Self {
            input_size,
            block_channel_widths: vec![32, 32, 64, 128, 352],
            extra_level_channels: 128,
            neck_variant: NeckVariant::SsdCLite,
            neck_channels: 128,
            num_classes,
            batch_size: 16,
            total_iterations,
            multi_scale: vec![input_size],
            checkpoint_interval: total_iterations.max(1),
            ..Self::default()
        };
        // Keep the 1/2 and 3/4 split points of the full schedule.
        cfg.lr_milestones = vec![total_iterations / 2, total_iterations * 3 / 4];
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        ModelConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_unknown_keys() {
        let err = ModelConfig::from_json(r#"{"input_siz": 320}"#);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_indivisible_input() {
        let mut cfg = ModelConfig::default();
        cfg.input_size = 300;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_anchor_count_mismatch() {
        let mut cfg = ModelConfig::default();
        cfg.anchors_per_cell = 9;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn roundtrips_through_json() {
        let cfg = ModelConfig::default();
        let back = ModelConfig::from_json(&cfg.to_json_pretty()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn overrides_parse_enums_and_lists() {
        let mut cfg = ModelConfig::default();
        cfg.apply_override("neck_variant", "ssdclite").unwrap();
        assert_eq!(cfg.neck_variant, NeckVariant::SsdCLite);
        cfg.apply_override("multi_scale", "[128]").unwrap();
        assert_eq!(cfg.multi_scale, vec![128]);
        cfg.apply_override("head_share_mode", "full_share").unwrap();
        assert_eq!(cfg.head_share_mode, HeadShareMode::FullShare);
        assert!(cfg.apply_override("not_a_key", "1").is_err());
        // An override that breaks an invariant is rejected.
        assert!(cfg.apply_override("input_size", "300").is_err());
    }
}
