//! Message ingestion, preprocessing and the cross-account pair universe.

mod message;
mod normalize;

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use message::{Message, PairKey};
pub use normalize::{grapheme_text, normalize, semantic_text};

use crate::language::LanguageTag;

/// Minimum `grapheme_text` length kept by [`filter_short`].
pub const DEFAULT_MIN_LETTERS: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("duplicate message id {id:?} at lines {first_line} and {second_line}")]
    DuplicateId {
        id: String,
        first_line: usize,
        second_line: usize,
    },
    #[error("unknown input format {0:?} (expected jsonl or csv)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl FromStr for InputFormat {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "ndjson" => Ok(InputFormat::Jsonl),
            "csv" => Ok(InputFormat::Csv),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }
}

/// Where a corpus came from and what was done to it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: Option<PathBuf>,
    pub normalized: bool,
    pub retweets_removed: Option<usize>,
    pub min_letters: Option<usize>,
    pub short_removed: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    messages: Vec<Message>,
    provenance: Provenance,
}

impl Corpus {
    /// Fails if two messages share an id. Line numbers in the error are 1-based positions.
    pub fn from_messages(messages: Vec<Message>) -> Result<Self, CorpusError> {
        let mut seen = HashMap::with_capacity(messages.len());
        for (i, m) in messages.iter().enumerate() {
            if let Some(first) = seen.insert(m.id.as_str(), i + 1) {
                return Err(CorpusError::DuplicateId {
                    id: m.id.clone(),
                    first_line: first,
                    second_line: i + 1,
                });
            }
        }
        Ok(Corpus {
            messages,
            provenance: Provenance::default(),
        })
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub(crate) fn messages_mut(&mut self) -> &mut [Message] {
        &mut self.messages
    }

    pub fn into_messages(self) -> Vec<Message> {
        self.messages
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Message> {
        self.messages.iter().find(|m| m.id == id)
    }

    /// Id → position lookup table.
    pub fn index(&self) -> HashMap<&str, usize> {
        self.messages
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.as_str(), i))
            .collect()
    }

    pub fn account_count(&self) -> usize {
        self.messages
            .iter()
            .map(|m| m.account_id.as_str())
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn counts(&self) -> StageCount {
        StageCount {
            users: self.account_count(),
            messages: self.len(),
        }
    }

    /// Normalizes every message in parallel.
    pub fn normalize(mut self) -> Self {
        self.messages = self.messages.into_par_iter().map(normalize).collect();
        self.provenance.normalized = true;
        self
    }

    /// Every unordered cross-account pair, as positions `(i, j)` with `i < j`.
    pub fn pair_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.row_pairs(i))
    }

    /// The pairs `(i, j)` with `j > i`; rows partition the pair universe.
    pub fn row_pairs(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let account = &self.messages[i].account_id;
        (i + 1..self.len())
            .filter(move |&j| self.messages[j].account_id != *account)
            .map(move |j| (i, j))
    }

    pub fn pair_key(&self, i: usize, j: usize) -> PairKey {
        PairKey::new(self.messages[i].id.as_str(), self.messages[j].id.as_str()).expect("corpus ids are unique")
    }

    /// Number of pairs [`generate_pairs`] yields: C(n,2) − Σ_a C(n_a,2).
    pub fn cross_account_pair_count(&self) -> u64 {
        let mut per_account: HashMap<&str, u64> = HashMap::new();
        for m in &self.messages {
            *per_account.entry(m.account_id.as_str()).or_default() += 1;
        }
        let choose2 = |n: u64| n * n.saturating_sub(1) / 2;
        choose2(self.len() as u64) - per_account.values().map(|&n| choose2(n)).sum::<u64>()
    }

    pub fn write_jsonl(&self, path: &Path) -> Result<(), CorpusError> {
        let io_err = |source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
        for m in &self.messages {
            serde_json::to_writer(&mut out, m).map_err(|e| io_err(e.into()))?;
            out.write_all(b"\n").map_err(io_err)?;
        }
        out.flush().map_err(io_err)
    }

    /// Reads a corpus previously written by [`Corpus::write_jsonl`].
    pub fn read_jsonl(path: &Path) -> Result<Self, CorpusError> {
        let reader = open(path)?;
        let mut messages = Vec::new();
        for (n, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| CorpusError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let m: Message = serde_json::from_str(&line).map_err(|e| CorpusError::Record {
                line: n + 1,
                message: e.to_string(),
            })?;
            messages.push(m);
        }
        let mut corpus = Corpus::from_messages(messages)?;
        corpus.provenance.source = Some(path.to_path_buf());
        corpus.provenance.normalized = true;
        Ok(corpus)
    }
}

/// Generates every unordered cross-account message pair exactly once.
pub fn generate_pairs(corpus: &Corpus) -> impl Iterator<Item = PairKey> + '_ {
    corpus.pair_indices().map(|(i, j)| corpus.pair_key(i, j))
}

/// True for texts carrying the classic `RT @user` retweet prefix.
pub fn looks_like_retweet(text: &str) -> bool {
    text.trim_start().starts_with("RT @")
}

#[derive(Debug, Deserialize)]
struct InputRecord {
    id: String,
    account_id: String,
    created_at: DateTime<Utc>,
    #[serde(default)]
    lang: Option<String>,
    text: String,
    #[serde(default)]
    is_retweet: Option<bool>,
}

impl InputRecord {
    fn into_message(self) -> Message {
        let retweet = self.is_retweet;
        let mut m = Message::new(self.id, self.account_id, self.created_at, self.text)
            .with_language(LanguageTag::from(self.lang));
        if let Some(flag) = retweet {
            m.is_retweet = flag;
        }
        m
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CorpusError> {
    File::open(path).map(BufReader::new).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads raw records; derived texts are left empty until [`Corpus::normalize`].
pub fn ingest(path: &Path, format: InputFormat) -> Result<Corpus, CorpusError> {
    let reader = open(path)?;
    let mut records: Vec<(usize, Message)> = Vec::new();
    match format {
        InputFormat::Jsonl => {
            for (n, line) in reader.lines().enumerate() {
                let line = line.map_err(|source| CorpusError::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: InputRecord = serde_json::from_str(&line).map_err(|e| CorpusError::Record {
                    line: n + 1,
                    message: e.to_string(),
                })?;
                records.push((n + 1, rec.into_message()));
            }
        }
        InputFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
            for result in rdr.deserialize::<InputRecord>() {
                let rec = result.map_err(|e| CorpusError::Record {
                    line: e.position().map_or(0, |p| p.line() as usize),
                    message: e.to_string(),
                })?;
                // Header is line 1; the reader does not expose the position of a good record cheaply.
                records.push((records.len() + 2, rec.into_message()));
            }
        }
    }
    let mut lines: HashMap<String, usize> = HashMap::with_capacity(records.len());
    for (line, m) in &records {
        if let Some(first) = lines.insert(m.id.clone(), *line) {
            return Err(CorpusError::DuplicateId {
                id: m.id.clone(),
                first_line: first,
                second_line: *line,
            });
        }
    }
    let mut corpus = Corpus::from_messages(records.into_iter().map(|(_, m)| m).collect())?;
    corpus.provenance.source = Some(path.to_path_buf());
    Ok(corpus)
}

/// Keeps messages whose `grapheme_text` has at least `min_letters` codepoints.
/// Returns the filtered corpus and the number removed.
pub fn filter_short(mut corpus: Corpus, min_letters: usize) -> (Corpus, usize) {
    let before = corpus.len();
    corpus.messages.retain(|m| m.letter_count() >= min_letters);
    let removed = before - corpus.len();
    corpus.provenance.min_letters = Some(min_letters);
    corpus.provenance.short_removed = Some(removed);
    (corpus, removed)
}

/// Drops retweets; returns the filtered corpus and the number removed.
pub fn filter_retweets(mut corpus: Corpus) -> (Corpus, usize) {
    let before = corpus.len();
    corpus.messages.retain(|m| !m.is_retweet);
    let removed = before - corpus.len();
    corpus.provenance.retweets_removed = Some(removed);
    (corpus, removed)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCount {
    pub users: usize,
    pub messages: usize,
}

/// User and message counts after each preprocessing stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub whole: StageCount,
    pub after_retweet_filter: StageCount,
    pub after_length_filter: StageCount,
}

/// Normalize, drop retweets, then drop short messages.
pub fn preprocess(corpus: Corpus, min_letters: usize) -> (Corpus, StageReport) {
    let whole = corpus.counts();
    let (corpus, _) = filter_retweets(corpus.normalize());
    let after_retweet_filter = corpus.counts();
    let (corpus, _) = filter_short(corpus, min_letters);
    let report = StageReport {
        whole,
        after_retweet_filter,
        after_length_filter: corpus.counts(),
    };
    (corpus, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn msg(id: &str, account: &str, text: &str) -> Message {
        normalize(Message::new(id, account, Utc::now(), text))
    }

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn ingest_jsonl_preserves_count() {
        let f = write_tmp(concat!(
            r#"{"id":"t1","account_id":"u1","created_at":"2021-03-01T10:00:00Z","lang":"es","text":"hola"}"#,
            "\n",
            r#"{"id":"t2","account_id":"u2","created_at":"2021-03-01T10:00:00Z","text":"hi","is_retweet":true}"#,
            "\n",
            "\n",
            r#"{"id":"t3","account_id":"u2","created_at":"2021-03-01T10:00:00+02:00","text":"RT @a: x"}"#,
            "\n",
        ));
        let corpus = ingest(f.path(), InputFormat::Jsonl).unwrap();
        assert_eq!(corpus.len(), 3);
        let m = &corpus.messages()[0];
        assert_eq!(m.language.as_str(), "es");
        assert!(m.semantic_text.is_empty() && m.grapheme_text.is_empty());
        assert!(corpus.messages()[1].language.is_undetermined());
        assert!(corpus.messages()[1].is_retweet);
        assert!(corpus.messages()[2].is_retweet);
    }

    #[test]
    fn missing_account_is_a_record_error_with_line() {
        let f = write_tmp(concat!(
            r#"{"id":"t1","account_id":"u1","created_at":"2021-03-01T10:00:00Z","text":"a"}"#,
            "\n",
            r#"{"id":"t2","created_at":"2021-03-01T10:00:00Z","text":"b"}"#,
            "\n",
        ));
        match ingest(f.path(), InputFormat::Jsonl) {
            Err(CorpusError::Record { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("account_id"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_are_fatal_and_name_both_lines() {
        let f = write_tmp(concat!(
            r#"{"id":"t1","account_id":"u1","created_at":"2021-03-01T10:00:00Z","text":"a"}"#,
            "\n",
            r#"{"id":"t2","account_id":"u1","created_at":"2021-03-01T10:00:00Z","text":"a"}"#,
            "\n",
            r#"{"id":"t1","account_id":"u2","created_at":"2021-03-01T10:00:00Z","text":"b"}"#,
            "\n",
        ));
        let err = ingest(f.path(), InputFormat::Jsonl).unwrap_err();
        assert!(matches!(
            err,
            CorpusError::DuplicateId { ref id, first_line: 1, second_line: 3 } if id == "t1"
        ));
    }

    #[test]
    fn ingest_csv() {
        let f = write_tmp(
            "id,account_id,created_at,lang,text,is_retweet\n\
             a,u1,2021-03-01T10:00:00Z,ES,\"hola, mundo\",\n\
             b,u2,2021-03-01T10:00:00Z,,hello,true\n",
        );
        let corpus = ingest(f.path(), InputFormat::Csv).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.messages()[0].language.as_str(), "es");
        assert_eq!(corpus.messages()[0].raw_text, "hola, mundo");
        assert!(corpus.messages()[1].language.is_undetermined());
        assert!(corpus.messages()[1].is_retweet);

        let bad = write_tmp("id,account_id,created_at,text\na,u1,not-a-date,x\n");
        assert!(matches!(
            ingest(bad.path(), InputFormat::Csv),
            Err(CorpusError::Record { line: 2, .. })
        ));
    }

    #[test]
    fn unknown_format_rejected() {
        assert!("xml".parse::<InputFormat>().is_err());
        assert_eq!("JSONL".parse::<InputFormat>().unwrap(), InputFormat::Jsonl);
    }

    #[test]
    fn length_filter_boundary() {
        let corpus = Corpus::from_messages(vec![
            msg("a", "u1", &"x".repeat(29)),
            msg("b", "u1", &"y".repeat(30)),
            msg("c", "u2", &format!("{} !!! 😀", "z".repeat(30))),
        ])
        .unwrap();
        let (kept, removed) = filter_short(corpus, DEFAULT_MIN_LETTERS);
        assert_eq!(removed, 1);
        let ids: Vec<_> = kept.messages().iter().map(|m| m.id.as_str()).collect();
        assert_eq!(ids, ["b", "c"]);
    }

    #[test]
    fn retweet_filter() {
        let mut flagged = msg("a", "u1", "plain words here");
        flagged.is_retweet = true;
        let corpus = Corpus::from_messages(vec![
            flagged,
            msg("b", "u1", "RT @x: hello world..."),
            msg("c", "u2", "plain message"),
        ])
        .unwrap();
        let (kept, removed) = filter_retweets(corpus);
        assert_eq!(removed, 2);
        assert_eq!(kept.messages()[0].id, "c");
    }

    #[test]
    fn stage_report_counts_users_and_messages() {
        let long = "a long enough message with plenty of letters in it";
        let corpus = Corpus::from_messages(vec![
            Message::new("1", "u1", Utc::now(), long),
            Message::new("2", "u2", Utc::now(), format!("RT @u1: {long}")),
            Message::new("3", "u3", Utc::now(), "short"),
            Message::new("4", "u1", Utc::now(), long),
        ])
        .unwrap();
        let (corpus, report) = preprocess(corpus, DEFAULT_MIN_LETTERS);
        assert_eq!(report.whole, StageCount { users: 3, messages: 4 });
        assert_eq!(report.after_retweet_filter, StageCount { users: 2, messages: 3 });
        assert_eq!(report.after_length_filter, StageCount { users: 1, messages: 2 });
        assert_eq!(corpus.len(), 2);

        let (_, empty) = preprocess(Corpus::default(), DEFAULT_MIN_LETTERS);
        assert_eq!(empty, StageReport::default());
    }

    #[test]
    fn pair_counts() {
        let three = Corpus::from_messages(vec![msg("a", "u1", "x"), msg("b", "u2", "y"), msg("c", "u3", "z")]).unwrap();
        assert_eq!(generate_pairs(&three).count(), 3);
        let same = Corpus::from_messages((0..4).map(|i| msg(&i.to_string(), "u", "x")).collect()).unwrap();
        assert_eq!(generate_pairs(&same).count(), 0);
        let thousand = Corpus::from_messages(
            (0..1000)
                .map(|i| msg(&format!("m{i}"), &format!("u{i}"), "x"))
                .collect(),
        )
        .unwrap();
        assert_eq!(generate_pairs(&thousand).count(), 499_500);
        assert_eq!(thousand.cross_account_pair_count(), 499_500);
    }

    #[test]
    fn corpus_file_round_trip() {
        let corpus = Corpus::from_messages(vec![
            msg("a", "u1", "Hola @x #Tag https://t.co/q"),
            msg("b", "u2", "hello").with_language("en".into()),
        ])
        .unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        corpus.write_jsonl(f.path()).unwrap();
        let back = Corpus::read_jsonl(f.path()).unwrap();
        assert_eq!(back.messages(), corpus.messages());
    }

    proptest! {
        #[test]
        fn pair_generation_matches_formula(accounts in proptest::collection::vec(0u8..12, 0..200)) {
            let corpus = Corpus::from_messages(
                accounts.iter().enumerate().map(|(i, a)| msg(&format!("m{i:03}"), &format!("u{a}"), "x")).collect()
            ).unwrap();
            let pairs: Vec<PairKey> = generate_pairs(&corpus).collect();
            let unique: HashSet<&PairKey> = pairs.iter().collect();
            prop_assert_eq!(unique.len(), pairs.len());
            prop_assert_eq!(pairs.len() as u64, corpus.cross_account_pair_count());
            let index = corpus.index();
            for p in &pairs {
                prop_assert!(p.first() < p.second());
                let (a, b) = (&corpus.messages()[index[p.first()]], &corpus.messages()[index[p.second()]]);
                prop_assert_ne!(&a.account_id, &b.account_id);
            }
        }

        #[test]
        fn filters_preserve_survivor_order(lens in proptest::collection::vec(0usize..60, 0..50)) {
            let corpus = Corpus::from_messages(
                lens.iter().enumerate().map(|(i, &n)| msg(&format!("m{i:03}"), "u", &"a".repeat(n))).collect()
            ).unwrap();
            let (kept, _) = filter_short(corpus, 30);
            let ids: Vec<&str> = kept.messages().iter().map(|m| m.id.as_str()).collect();
            let mut sorted = ids.clone();
            sorted.sort();
            prop_assert_eq!(ids, sorted);
        }

        #[test]
        fn normalize_is_idempotent_on_messages(text in "\\PC{0,60}") {
            let once = msg("a", "u", &text);
            prop_assert_eq!(normalize(once.clone()), once);
        }
    }
}
