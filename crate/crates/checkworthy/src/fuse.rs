//! Late fusion: combine per-modality probabilities with weights derived from
//! each classifier's dev-set validation loss. Lower loss means strictly
//! higher weight, so the stronger branch has more impact on the decision.
//!
//! Default rule: w_i = (1/max(l_i, EPS)) / sum_j (1/max(l_j, EPS)). A softmax
//! over negative losses is available behind [`WeightRule`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::textclf::{ClassProbability, LossValue};

/// Guards the zero-loss singularity; a perfect dev-set classifier gets
/// weight close to 1.
pub const LOSS_EPSILON: f64 = 1e-8;

/// Default decision threshold applied to the fused probability.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Per-classifier fusion weights: positive, summing to 1, in the classifier
/// order supplied at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How validation losses map to weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightRule {
    /// Normalized inverse loss (default).
    #[default]
    InverseLoss,
    /// Softmax over negative losses.
    SoftmaxNegLoss,
}

impl WeightRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightRule::InverseLoss => "inverse-loss",
            WeightRule::SoftmaxNegLoss => "softmax-neg-loss",
        }
    }
}

/// Derive fusion weights from dev-set losses with the default rule.
pub fn compute_weights(losses: &[LossValue]) -> Result<WeightVector> {
    compute_weights_with(losses, WeightRule::InverseLoss)
}

pub fn compute_weights_with(losses: &[LossValue], rule: WeightRule) -> Result<WeightVector> {
    if losses.is_empty() {
        return Err(Error::Fusion("no losses to weight".to_string()));
    }
    for (i, loss) in losses.iter().enumerate() {
        if !loss.value().is_finite() {
            return Err(Error::Fusion(format!("loss {i} is not finite")));
        }
    }
    let raw: Vec<f64> = match rule {
        WeightRule::InverseLoss => losses
            .iter()
            .map(|l| 1.0 / l.value().max(LOSS_EPSILON))
            .collect(),
        WeightRule::SoftmaxNegLoss => {
            // Shift by the minimum loss for numerical range.
            let min = losses.iter().map(|l| l.value()).fold(f64::INFINITY, f64::min);
            losses.iter().map(|l| (-(l.value() - min)).exp()).collect()
        }
    };
    let sum: f64 = raw.iter().sum();
    Ok(WeightVector(raw.into_iter().map(|w| w / sum).collect()))
}

/// Convex combination of per-classifier probabilities.
pub fn fuse_predictions(probs: &[ClassProbability], weights: &WeightVector) -> Result<f64> {
    if probs.len() != weights.len() {
        return Err(Error::Fusion(format!(
            "{} probabilities but {} weights",
            probs.len(),
            weights.len()
        )));
    }
    Ok(probs
        .iter()
        .zip(weights.weights())
        .map(|(p, w)| p.p_yes() * w)
        .sum())
}

/// Threshold rule: Yes iff p_yes >= threshold.
pub fn decide(p_yes: f64, threshold: f64) -> Result<Label> {
    if !(0.0..=1.0).contains(&p_yes) {
        return Err(Error::Fusion(format!("p_yes {p_yes} out of [0,1]")));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Fusion(format!("threshold {threshold} out of [0,1]")));
    }
    Ok(if p_yes >= threshold { Label::Yes } else { Label::No })
}

/// One classifier's share of a fused decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub classifier_id: String,
    pub p_yes: f64,
    pub weight: f64,
}

/// Fused decision for one tweet, with the per-classifier breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusedPrediction {
    pub tweet_id: String,
    pub p_yes: f64,
    pub label: Label,
    pub contributions: Vec<Contribution>,
}

/// Fuse one record's per-classifier probabilities into a decision.
pub fn fuse_record(
    tweet_id: &str,
    branches: &[(String, ClassProbability)],
    weights: &WeightVector,
    threshold: f64,
) -> Result<FusedPrediction> {
    let probs: Vec<ClassProbability> = branches.iter().map(|(_, p)| *p).collect();
    let p_yes = fuse_predictions(&probs, weights)?;
    let label = decide(p_yes, threshold)?;
    let contributions = branches
        .iter()
        .zip(weights.weights())
        .map(|((id, p), w)| Contribution {
            classifier_id: id.clone(),
            p_yes: p.p_yes(),
            weight: *w,
        })
        .collect();
    Ok(FusedPrediction {
        tweet_id: tweet_id.to_string(),
        p_yes,
        label,
        contributions,
    })
}

/// Audit record emitted alongside every fused run: which classifiers were
/// fused, their dev losses, the weights they received, and the threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionManifest {
    pub rule: String,
    pub threshold: f64,
    pub classifiers: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub dev_loss: f64,
    pub weight: f64,
}

impl FusionManifest {
    pub fn new(
        ids: &[String],
        losses: &[LossValue],
        weights: &WeightVector,
        rule: WeightRule,
        threshold: f64,
    ) -> Result<FusionManifest> {
        if ids.len() != losses.len() || ids.len() != weights.len() {
            return Err(Error::Fusion("manifest arity mismatch".to_string()));
        }
        Ok(FusionManifest {
            rule: rule.as_str().to_string(),
            threshold,
            classifiers: ids
                .iter()
                .zip(losses)
                .zip(weights.weights())
                .map(|((id, loss), w)| ManifestEntry {
                    id: id.clone(),
                    dev_loss: loss.value(),
                    weight: *w,
                })
                .collect(),
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Fusion(format!("manifest serialization: {e}")))?;
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
        }
        fs::write(path, body).map_err(|e| Error::io(path, e))?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<FusionManifest> {
        let body = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&body).map_err(|e| Error::Fusion(format!("manifest parse: {e}")))
    }
}
