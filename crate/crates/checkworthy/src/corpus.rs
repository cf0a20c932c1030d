//! Loading and validation of the labeled tweet splits and their image assets.
//!
//! Split files are line-delimited JSON records (one object per line). Field
//! names vary a little between task editions, so the loader takes a
//! [`FieldMap`]. Parsing is strict by default: any malformed line aborts the
//! load with its line number. Lenient mode skips malformed lines and logs a
//! count instead.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary check-worthiness label. `Yes` means the tweet is check-worthy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Yes,
    No,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Yes => "Yes",
            Label::No => "No",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Label::Yes)
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("yes") {
            Ok(Label::Yes)
        } else if s.eq_ignore_ascii_case("no") {
            Ok(Label::No)
        } else {
            Err(format!("unknown label {s:?}"))
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The four official data splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitName {
    Train,
    Dev,
    DevTest,
    Test,
}

impl SplitName {
    pub const ALL: [SplitName; 4] = [
        SplitName::Train,
        SplitName::Dev,
        SplitName::DevTest,
        SplitName::Test,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SplitName::Train => "train",
            SplitName::Dev => "dev",
            SplitName::DevTest => "dev_test",
            SplitName::Test => "test",
        }
    }

    /// Short suffix used in report row labels (`A_d`, `F1_t`, ...).
    pub fn suffix(&self) -> &'static str {
        match self {
            SplitName::Train => "tr",
            SplitName::Dev => "d",
            SplitName::DevTest => "dt",
            SplitName::Test => "t",
        }
    }
}

impl FromStr for SplitName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "train" => Ok(SplitName::Train),
            "dev" => Ok(SplitName::Dev),
            "dev_test" | "dev-test" | "devtest" => Ok(SplitName::DevTest),
            "test" => Ok(SplitName::Test),
            other => Err(format!("unknown split {other:?}")),
        }
    }
}

impl fmt::Display for SplitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a record's image lives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageRef {
    Local(PathBuf),
    Url(String),
}

impl ImageRef {
    pub fn parse(value: &str) -> ImageRef {
        if value.starts_with("http://") || value.starts_with("https://") {
            ImageRef::Url(value.to_string())
        } else {
            ImageRef::Local(PathBuf::from(value))
        }
    }

    /// File extension hint used for the cache entry.
    fn extension(&self) -> String {
        let name = match self {
            ImageRef::Local(p) => p.to_string_lossy().into_owned(),
            // Strip query/fragment before looking for an extension.
            ImageRef::Url(u) => u.split(['?', '#']).next().unwrap_or("").to_string(),
        };
        match name.rsplit_once('.') {
            Some((_, ext)) if !ext.is_empty() && ext.len() <= 5 && !ext.contains('/') => {
                ext.to_ascii_lowercase()
            }
            _ => "img".to_string(),
        }
    }
}

/// One labeled multimodal tweet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub text: String,
    pub image_ref: ImageRef,
    /// OCR text shipped with the data set, when present.
    pub platform_ocr: Option<String>,
    /// Absent for unlabeled / prediction-time records.
    pub label: Option<Label>,
}

/// All records of one split, in file order.
#[derive(Debug, Clone)]
pub struct LabeledCorpus {
    pub split: SplitName,
    pub records: Vec<TweetRecord>,
}

impl LabeledCorpus {
    pub fn new(split: SplitName, records: Vec<TweetRecord>) -> Self {
        LabeledCorpus { split, records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TweetRecord> {
        self.records.iter()
    }
}

/// Class counts for one split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionStats {
    pub total: usize,
    pub yes: usize,
    pub no: usize,
}

/// Mapping from record fields to the JSON keys used in the split files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct FieldMap {
    pub id: String,
    pub text: String,
    pub image: String,
    pub ocr: String,
    pub label: String,
}

impl Default for FieldMap {
    fn default() -> Self {
        FieldMap {
            id: "tweet_id".to_string(),
            text: "tweet_text".to_string(),
            image: "image_url".to_string(),
            ocr: "ocr_text".to_string(),
            label: "class_label".to_string(),
        }
    }
}

/// Loader options: field naming and malformed-line policy.
#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub fields: FieldMap,
    /// Skip malformed lines (with a logged count) instead of aborting.
    pub lenient: bool,
}

/// Load one split file with default options (strict, default field names).
pub fn load_split(path: &Path, split: SplitName) -> Result<LabeledCorpus> {
    load_split_with(path, split, &LoadOptions::default())
}

/// Load one split file. Records come back in file order; labels are parsed
/// when the label field is present and non-null.
pub fn load_split_with(path: &Path, split: SplitName, opts: &LoadOptions) -> Result<LabeledCorpus> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut skipped = 0usize;

    for (idx, line) in content.lines().enumerate() {
        let line_no = idx + 1;
        match parse_line(line, &opts.fields) {
            Ok(record) => {
                if let Some(first) = seen.get(&record.tweet_id) {
                    return Err(Error::DuplicateId {
                        path: path.to_path_buf(),
                        id: record.tweet_id,
                        first: *first,
                        second: line_no,
                    });
                }
                seen.insert(record.tweet_id.clone(), line_no);
                records.push(record);
            }
            Err(LineError::UnknownLabel(value)) => {
                return Err(Error::UnknownLabel {
                    path: path.to_path_buf(),
                    line: line_no,
                    value,
                });
            }
            Err(LineError::Malformed(msg)) => {
                if opts.lenient {
                    skipped += 1;
                    log::warn!("{}:{}: skipping malformed line: {}", path.display(), line_no, msg);
                } else {
                    return Err(Error::MalformedLine {
                        path: path.to_path_buf(),
                        line: line_no,
                        msg,
                    });
                }
            }
        }
    }

    if skipped > 0 {
        log::warn!(
            "{}: skipped {} malformed line(s) in lenient mode",
            path.display(),
            skipped
        );
    }
    Ok(LabeledCorpus::new(split, records))
}

enum LineError {
    Malformed(String),
    UnknownLabel(String),
}

fn parse_line(line: &str, fields: &FieldMap) -> std::result::Result<TweetRecord, LineError> {
    if line.trim().is_empty() {
        return Err(LineError::Malformed("empty line".to_string()));
    }
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| LineError::Malformed(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| LineError::Malformed("line is not a JSON object".to_string()))?;

    let tweet_id = match obj.get(&fields.id) {
        Some(serde_json::Value::String(s)) if !s.is_empty() => s.clone(),
        Some(serde_json::Value::Number(n)) => n.to_string(),
        Some(_) => return Err(LineError::Malformed(format!("field {:?} is empty", fields.id))),
        None => return Err(LineError::Malformed(format!("missing field {:?}", fields.id))),
    };

    let text = match obj.get(&fields.text) {
        Some(serde_json::Value::String(s)) => s.clone(),
        Some(serde_json::Value::Null) | None => {
            return Err(LineError::Malformed(format!("missing field {:?}", fields.text)))
        }
        Some(_) => return Err(LineError::Malformed(format!("field {:?} is not a string", fields.text))),
    };

    let image_ref = match obj.get(&fields.image) {
        Some(serde_json::Value::String(s)) if !s.is_empty() => ImageRef::parse(s),
        _ => return Err(LineError::Malformed(format!("missing field {:?}", fields.image))),
    };

    let platform_ocr = match obj.get(&fields.ocr) {
        Some(serde_json::Value::String(s)) => Some(s.clone()),
        _ => None,
    };

    let label = match obj.get(&fields.label) {
        Some(serde_json::Value::String(s)) => {
            Some(s.parse::<Label>().map_err(|_| LineError::UnknownLabel(s.clone()))?)
        }
        Some(serde_json::Value::Null) | None => None,
        Some(other) => return Err(LineError::UnknownLabel(other.to_string())),
    };

    Ok(TweetRecord {
        tweet_id,
        text,
        image_ref,
        platform_ocr,
        label,
    })
}

/// Count Yes/No labels. Errors if any record is unlabeled.
pub fn class_distribution(corpus: &LabeledCorpus) -> Result<DistributionStats> {
    let mut yes = 0usize;
    let mut no = 0usize;
    for record in &corpus.records {
        match record.label {
            Some(Label::Yes) => yes += 1,
            Some(Label::No) => no += 1,
            None => {
                return Err(Error::Eval(format!(
                    "unlabeled record {} in {} split",
                    record.tweet_id, corpus.split
                )))
            }
        }
    }
    Ok(DistributionStats {
        total: yes + no,
        yes,
        no,
    })
}

/// Published class distribution of the 2023 task data, per split.
pub fn official_distribution(split: SplitName) -> DistributionStats {
    let (total, yes, no) = match split {
        SplitName::Train => (2356, 820, 1536),
        SplitName::Dev => (271, 87, 184),
        SplitName::DevTest => (548, 174, 374),
        SplitName::Test => (736, 277, 459),
    };
    DistributionStats { total, yes, no }
}

/// Data-integrity gate: the loaded split must match the published counts.
pub fn check_official_distribution(corpus: &LabeledCorpus) -> Result<()> {
    let got = class_distribution(corpus)?;
    let want = official_distribution(corpus.split);
    if got != want {
        return Err(Error::Eval(format!(
            "{} split distribution mismatch: got total={} yes={} no={}, expected total={} yes={} no={}",
            corpus.split, got.total, got.yes, got.no, want.total, want.yes, want.no
        )));
    }
    Ok(())
}

/// A fetched, decodable image: where its bytes live and the decoded pixels.
pub struct FetchedImage {
    pub path: PathBuf,
    pub image: image::DynamicImage,
}

/// Image fetching/caching policy.
#[derive(Debug, Clone)]
pub struct FetchOptions {
    /// Download attempts before a network failure is reported.
    pub attempts: u32,
    pub timeout: Duration,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions {
            attempts: 3,
            timeout: Duration::from_secs(20),
        }
    }
}

/// Downloads and caches record images under `cache_dir/<tweet_id>.<ext>`.
///
/// Safe for concurrent use across distinct records; concurrent fetches of the
/// same record cannot corrupt the cache because entries are written to a
/// temporary file and renamed into place.
pub struct ImageStore {
    cache_dir: PathBuf,
    options: FetchOptions,
    agent: ureq::Agent,
}

impl ImageStore {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        ImageStore::with_options(cache_dir, FetchOptions::default())
    }

    pub fn with_options(cache_dir: impl Into<PathBuf>, options: FetchOptions) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(options.timeout))
            .build()
            .into();
        ImageStore {
            cache_dir: cache_dir.into(),
            options,
            agent,
        }
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    /// Cache location for a record, keyed by tweet_id so re-hosted images
    /// reuse their entry.
    pub fn cache_path(&self, record: &TweetRecord) -> PathBuf {
        self.cache_dir
            .join(format!("{}.{}", record.tweet_id, record.image_ref.extension()))
    }

    /// Fetch a record's image, hitting the cache first for remote refs.
    pub fn fetch(&self, record: &TweetRecord) -> Result<FetchedImage> {
        match &record.image_ref {
            ImageRef::Local(path) => {
                let bytes = fs::read(path).map_err(|e| Error::Image {
                    tweet_id: record.tweet_id.clone(),
                    msg: format!("{}: {}", path.display(), e),
                })?;
                let image = decode(&record.tweet_id, &bytes)?;
                Ok(FetchedImage {
                    path: path.clone(),
                    image,
                })
            }
            ImageRef::Url(url) => {
                let cached = self.cache_path(record);
                if cached.is_file() {
                    let bytes = fs::read(&cached).map_err(|e| Error::io(&cached, e))?;
                    let image = decode(&record.tweet_id, &bytes)?;
                    return Ok(FetchedImage { path: cached, image });
                }
                let bytes = self.download(&record.tweet_id, url)?;
                let image = decode(&record.tweet_id, &bytes)?;
                fs::create_dir_all(&self.cache_dir).map_err(|e| Error::io(&self.cache_dir, e))?;
                write_atomic(&cached, &bytes)?;
                Ok(FetchedImage { path: cached, image })
            }
        }
    }

    fn download(&self, tweet_id: &str, url: &str) -> Result<Vec<u8>> {
        let mut last_err = String::new();
        for attempt in 1..=self.options.attempts {
            match self.agent.get(url).call() {
                Ok(mut response) => match response.body_mut().read_to_vec() {
                    Ok(bytes) => return Ok(bytes),
                    Err(e) => last_err = e.to_string(),
                },
                Err(e) => last_err = e.to_string(),
            }
            log::debug!("tweet {tweet_id}: fetch attempt {attempt} failed: {last_err}");
        }
        Err(Error::Image {
            tweet_id: tweet_id.to_string(),
            msg: format!(
                "download failed after {} attempts: {} ({})",
                self.options.attempts, last_err, url
            ),
        })
    }
}

fn decode(tweet_id: &str, bytes: &[u8]) -> Result<image::DynamicImage> {
    image::load_from_memory(bytes).map_err(|e| Error::Image {
        tweet_id: tweet_id.to_string(),
        msg: format!("undecodable image bytes: {e}"),
    })
}

/// Write-then-rename so readers never observe a partial entry.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// One-shot convenience wrapper around [`ImageStore::fetch`].
pub fn fetch_image(record: &TweetRecord, cache_dir: &Path) -> Result<FetchedImage> {
    ImageStore::new(cache_dir).fetch(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_jsonl(dir: &Path, name: &str, lines: &[&str]) -> PathBuf {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        path
    }

    #[test]
    fn load_split_parses_records_in_file_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_jsonl(
            dir.path(),
            "train.jsonl",
            &[
                r#"{"tweet_id":"1","tweet_text":"a","image_url":"http://x/1.png","ocr_text":"t","class_label":"Yes"}"#,
                r#"{"tweet_id":"2","tweet_text":"b","image_url":"img/2.png","class_label":"No"}"#,
            ],
        );
        let corpus = load_split(&path, SplitName::Train).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.records[0].tweet_id, "1");
        assert_eq!(corpus.records[0].label, Some(Label::Yes));
        assert_eq!(corpus.records[0].platform_ocr.as_deref(), Some("t"));
        assert_eq!(
            corpus.records[1].image_ref,
            ImageRef::Local(PathBuf::from("img/2.png"))
        );
    }

    #[test]
    fn load_split_empty_file_is_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_jsonl(dir.path(), "empty.jsonl", &[]);
        let corpus = load_split(&path, SplitName::Dev).unwrap();
        assert!(corpus.is_empty());
    }

    #[test]
    fn load_split_reports_unknown_label_with_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let mut lines: Vec<String> = (1..=6)
            .map(|i| {
                format!(
                    r#"{{"tweet_id":"{i}","tweet_text":"x","image_url":"i.png","class_label":"No"}}"#
                )
            })
            .collect();
        lines.push(
            r#"{"tweet_id":"7","tweet_text":"x","image_url":"i.png","class_label":"Maybe"}"#
                .to_string(),
        );
        let refs: Vec<&str> = lines.iter().map(|s| s.as_str()).collect();
        let path = write_jsonl(dir.path(), "bad.jsonl", &refs);
        let err = load_split(&path, SplitName::Train).unwrap_err();
        match err {
            Error::UnknownLabel { line, value, .. } => {
                assert_eq!(line, 7);
                assert_eq!(value, "Maybe");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn load_split_rejects_duplicate_ids() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_jsonl(
            dir.path(),
            "dup.jsonl",
            &[
                r#"{"tweet_id":"1","tweet_text":"a","image_url":"i.png","class_label":"Yes"}"#,
                r#"{"tweet_id":"1","tweet_text":"b","image_url":"i.png","class_label":"No"}"#,
            ],
        );
        let err = load_split(&path, SplitName::Train).unwrap_err();
        assert!(matches!(err, Error::DuplicateId { .. }));
    }

    #[test]
    fn load_split_missing_file_is_io_error() {
        let err = load_split(Path::new("/nonexistent/x.jsonl"), SplitName::Train).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn lenient_mode_skips_malformed_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_jsonl(
            dir.path(),
            "mixed.jsonl",
            &[
                r#"{"tweet_id":"1","tweet_text":"a","image_url":"i.png","class_label":"Yes"}"#,
                "not json",
                r#"{"tweet_id":"2","tweet_text":"b","image_url":"i.png","class_label":"No"}"#,
            ],
        );
        let strict = load_split(&path, SplitName::Train);
        assert!(matches!(strict, Err(Error::MalformedLine { line: 2, .. })));

        let opts = LoadOptions {
            lenient: true,
            ..LoadOptions::default()
        };
        let corpus = load_split_with(&path, SplitName::Train, &opts).unwrap();
        assert_eq!(corpus.len(), 2);
    }

    #[test]
    fn load_split_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_jsonl(
            dir.path(),
            "d.jsonl",
            &[
                r#"{"tweet_id":"a","tweet_text":"1","image_url":"i.png","class_label":"Yes"}"#,
                r#"{"tweet_id":"b","tweet_text":"2","image_url":"i.png","class_label":"No"}"#,
                r#"{"tweet_id":"c","tweet_text":"3","image_url":"i.png","class_label":"No"}"#,
            ],
        );
        let a = load_split(&path, SplitName::Dev).unwrap();
        let b = load_split(&path, SplitName::Dev).unwrap();
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn class_distribution_counts_and_total() {
        let records = vec![
            record("1", Some(Label::Yes)),
            record("2", Some(Label::No)),
            record("3", Some(Label::No)),
        ];
        let corpus = LabeledCorpus::new(SplitName::Dev, records);
        let stats = class_distribution(&corpus).unwrap();
        assert_eq!(
            stats,
            DistributionStats {
                total: 3,
                yes: 1,
                no: 2
            }
        );
    }

    #[test]
    fn class_distribution_empty_corpus_is_all_zero() {
        let corpus = LabeledCorpus::new(SplitName::Dev, vec![]);
        let stats = class_distribution(&corpus).unwrap();
        assert_eq!(
            stats,
            DistributionStats {
                total: 0,
                yes: 0,
                no: 0
            }
        );
    }

    #[test]
    fn class_distribution_rejects_unlabeled() {
        let corpus = LabeledCorpus::new(SplitName::Dev, vec![record("1", None)]);
        assert!(class_distribution(&corpus).is_err());
    }

    #[test]
    fn official_distribution_matches_published_counts() {
        assert_eq!(
            official_distribution(SplitName::Train),
            DistributionStats {
                total: 2356,
                yes: 820,
                no: 1536
            }
        );
        assert_eq!(
            official_distribution(SplitName::Dev),
            DistributionStats {
                total: 271,
                yes: 87,
                no: 184
            }
        );
        assert_eq!(
            official_distribution(SplitName::DevTest),
            DistributionStats {
                total: 548,
                yes: 174,
                no: 374
            }
        );
        assert_eq!(
            official_distribution(SplitName::Test),
            DistributionStats {
                total: 736,
                yes: 277,
                no: 459
            }
        );
        for split in SplitName::ALL {
            let d = official_distribution(split);
            assert_eq!(d.total, d.yes + d.no);
        }
    }

    fn record(id: &str, label: Option<Label>) -> TweetRecord {
        TweetRecord {
            tweet_id: id.to_string(),
            text: "text".to_string(),
            image_ref: ImageRef::Local(PathBuf::from("img.png")),
            platform_ocr: None,
            label,
        }
    }

    #[test]
    fn fetch_image_local_passthrough() {
        let dir = tempfile::tempdir().unwrap();
        let img_path = dir.path().join("pic.png");
        let img = image::RgbImage::from_pixel(4, 4, image::Rgb([10, 20, 30]));
        img.save(&img_path).unwrap();

        let rec = TweetRecord {
            tweet_id: "t1".to_string(),
            text: String::new(),
            image_ref: ImageRef::Local(img_path.clone()),
            platform_ocr: None,
            label: None,
        };
        let store = ImageStore::new(dir.path().join("cache"));
        let fetched = store.fetch(&rec).unwrap();
        assert_eq!(fetched.path, img_path);
        assert_eq!(fetched.image.width(), 4);
    }

    #[test]
    fn fetch_image_url_hits_cache_without_network() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache");
        fs::create_dir_all(&cache).unwrap();
        // Pre-seed the cache entry; the bogus URL would fail if contacted.
        let img = image::RgbImage::from_pixel(2, 2, image::Rgb([1, 2, 3]));
        img.save(cache.join("t2.png")).unwrap();

        let rec = TweetRecord {
            tweet_id: "t2".to_string(),
            text: String::new(),
            image_ref: ImageRef::Url("http://127.0.0.1:1/t2.png".to_string()),
            platform_ocr: None,
            label: None,
        };
        let store = ImageStore::new(&cache);
        let fetched = store.fetch(&rec).unwrap();
        assert_eq!(fetched.path, cache.join("t2.png"));
        assert_eq!(fetched.image.height(), 2);
    }

    #[test]
    fn fetch_image_undecodable_bytes_names_tweet() {
        let dir = tempfile::tempdir().unwrap();
        let bogus = dir.path().join("not_an_image.txt");
        fs::write(&bogus, "plain text, not pixels").unwrap();
        let rec = TweetRecord {
            tweet_id: "t3".to_string(),
            text: String::new(),
            image_ref: ImageRef::Local(bogus),
            platform_ocr: None,
            label: None,
        };
        let err = fetch_image(&rec, &dir.path().join("cache")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("t3"), "error should name the tweet: {msg}");
        assert!(msg.contains("undecodable"), "unexpected message: {msg}");
    }
}
