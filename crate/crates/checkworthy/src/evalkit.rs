//! Accuracy/precision/recall/F1 with Yes as the positive class, report
//! assembly over (model x split) cells, and submission file writing.
//!
//! Zero-division convention: precision is 0 when tp+fp = 0 and recall is 0
//! when tp+fn = 0, so a majority-No predictor scores P=R=F1=0 rather than
//! erroring. Values are kept at full precision and rendered to 4 decimals.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{Label, SplitName};
use crate::error::{Error, Result};

/// Binary confusion counts, Yes positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_positive: usize,
    pub false_positive: usize,
    pub false_negative: usize,
    pub true_negative: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.true_positive + self.false_positive + self.false_negative + self.true_negative
    }
}

/// The four Table-style metrics for one (model, split) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub model_id: String,
    pub split: SplitName,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Count confusion outcomes over aligned gold/pred label lists.
pub fn confusion(gold: &[Label], pred: &[Label]) -> Result<ConfusionCounts> {
    if gold.is_empty() {
        return Err(Error::Eval("confusion over empty label lists".to_string()));
    }
    if gold.len() != pred.len() {
        return Err(Error::Eval(format!(
            "gold/pred length mismatch: {} vs {}",
            gold.len(),
            pred.len()
        )));
    }
    let mut c = ConfusionCounts {
        true_positive: 0,
        false_positive: 0,
        false_negative: 0,
        true_negative: 0,
    };
    for (g, p) in gold.iter().zip(pred.iter()) {
        match (g, p) {
            (Label::Yes, Label::Yes) => c.true_positive += 1,
            (Label::No, Label::Yes) => c.false_positive += 1,
            (Label::Yes, Label::No) => c.false_negative += 1,
            (Label::No, Label::No) => c.true_negative += 1,
        }
    }
    Ok(c)
}

/// Compute the metric cell for one model on one split.
pub fn metrics(c: &ConfusionCounts, model_id: &str, split: SplitName) -> Result<MetricReport> {
    let total = c.total();
    if total == 0 {
        return Err(Error::Eval("metrics over zero evaluated records".to_string()));
    }
    let tp = c.true_positive as f64;
    let accuracy = (c.true_positive + c.true_negative) as f64 / total as f64;
    let precision = if c.true_positive + c.false_positive == 0 {
        0.0
    } else {
        tp / (c.true_positive + c.false_positive) as f64
    };
    let recall = if c.true_positive + c.false_negative == 0 {
        0.0
    } else {
        tp / (c.true_positive + c.false_negative) as f64
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(MetricReport {
        model_id: model_id.to_string(),
        split,
        accuracy,
        precision,
        recall,
        f1,
    })
}

/// Grid of metric cells keyed by (model, split), rendered as aligned text and
/// serialized as JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportTable {
    pub cells: Vec<MetricReport>,
    /// Free-form observations appended under the grid.
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Assemble a table from cells. Duplicate (model, split) cells are an error.
pub fn results_table(cells: Vec<MetricReport>) -> Result<ReportTable> {
    let mut seen = HashSet::new();
    for cell in &cells {
        if !seen.insert((cell.model_id.clone(), cell.split)) {
            return Err(Error::Eval(format!(
                "duplicate report cell for model {:?} on split {}",
                cell.model_id, cell.split
            )));
        }
    }
    Ok(ReportTable {
        cells,
        notes: Vec::new(),
    })
}

impl ReportTable {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn models(&self) -> Vec<String> {
        let mut out = Vec::new();
        for cell in &self.cells {
            if !out.contains(&cell.model_id) {
                out.push(cell.model_id.clone());
            }
        }
        out
    }

    fn splits(&self) -> Vec<SplitName> {
        SplitName::ALL
            .into_iter()
            .filter(|s| self.cells.iter().any(|c| c.split == *s))
            .collect()
    }

    pub fn cell(&self, model_id: &str, split: SplitName) -> Option<&MetricReport> {
        self.cells
            .iter()
            .find(|c| c.model_id == model_id && c.split == split)
    }

    /// Aligned plain-text rendering: one row per (metric, split), one column
    /// per model, missing cells blank.
    pub fn render_text(&self) -> String {
        if self.cells.is_empty() {
            return String::new();
        }
        let models = self.models();
        let splits = self.splits();
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(models.iter().cloned());
        rows.push(header);
        for split in &splits {
            for (metric, name) in [
                (Metric::Accuracy, "A"),
                (Metric::Precision, "P"),
                (Metric::Recall, "R"),
                (Metric::F1, "F1"),
            ] {
                let mut row = vec![format!("{}_{}", name, split.suffix())];
                for model in &models {
                    row.push(match self.cell(model, *split) {
                        Some(cell) => format!("{:.4}", metric.pick(cell)),
                        None => String::new(),
                    });
                }
                rows.push(row);
            }
        }
        let cols = rows[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{:>width$}", v, width = widths[i]))
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }

    /// Write both renderings: `<stem>.txt` and `<stem>.json`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let txt = dir.join(format!("{stem}.txt"));
        fs::write(&txt, self.render_text()).map_err(|e| Error::io(&txt, e))?;
        let json = dir.join(format!("{stem}.json"));
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Eval(format!("report serialization: {e}")))?;
        fs::write(&json, body).map_err(|e| Error::io(&json, e))?;
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Metric {
    Accuracy,
    Precision,
    Recall,
    F1,
}

impl Metric {
    fn pick(&self, cell: &MetricReport) -> f64 {
        match self {
            Metric::Accuracy => cell.accuracy,
            Metric::Precision => cell.precision,
            Metric::Recall => cell.recall,
            Metric::F1 => cell.f1,
        }
    }
}

/// Write a contest submission: one `tweet_id\tlabel\trun_id` line per tweet,
/// UTF-8, newline-terminated, input order preserved. Validates before any
/// byte is written.
pub fn write_submission(
    predictions: &[(String, Label)],
    run_id: &str,
    path: &Path,
) -> Result<()> {
    if predictions.is_empty() {
        return Err(Error::Eval("refusing to write an empty submission".to_string()));
    }
    let mut seen = HashSet::new();
    for (id, _) in predictions {
        if !seen.insert(id.as_str()) {
            return Err(Error::Eval(format!("duplicate tweet_id {id:?} in submission")));
        }
    }
    let mut body = String::new();
    for (id, label) in predictions {
        writeln!(body, "{id}\t{label}\t{run_id}").unwrap();
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    fs::write(path, body).map_err(|e| Error::io(path, e))?;
    Ok(())
}
