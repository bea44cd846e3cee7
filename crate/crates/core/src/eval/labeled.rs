use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roc::Score;
use super::EvalError;
use crate::classifier::{classify_pair, Label, PairVerdict, Thresholds};
use crate::corpus::{normalize, Message, PairKey};
use crate::grapheme::{GraphemeAlgorithm, PreparedText};
use crate::language::LanguageTag;
use crate::semantic::{EmbeddingError, EmbeddingStore, EmbeddingVector};

/// Ground truth from its fixture spelling; "control" maps to `NoMatch`.
pub fn parse_truth(s: &str) -> Option<Label> {
    match s {
        "control" => Some(Label::NoMatch),
        "copy_pasta" => Some(Label::CopyPasta),
        "rewording" => Some(Label::Rewording),
        "translation" => Some(Label::Translation),
        _ => None,
    }
}

/// Two normalized messages with a known relation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPair {
    pub id: String,
    pub a: Message,
    pub b: Message,
    pub truth: Label,
    pub embedding_a: Option<EmbeddingVector>,
    pub embedding_b: Option<EmbeddingVector>,
}

impl LabeledPair {
    /// Builds the pair; message ids are `{id}/a` and `{id}/b`, each on its own account.
    pub fn new(id: &str, text_a: &str, lang_a: &str, text_b: &str, lang_b: &str, truth: Label) -> Self {
        let side = |s: &str, text: &str, lang: &str| {
            let mid = format!("{id}/{s}");
            normalize(
                Message::new(mid.clone(), mid, DateTime::<Utc>::UNIX_EPOCH, text).with_language(LanguageTag::new(lang)),
            )
        };
        LabeledPair {
            id: id.to_string(),
            a: side("a", text_a, lang_a),
            b: side("b", text_b, lang_b),
            truth,
            embedding_a: None,
            embedding_b: None,
        }
    }

    /// Renames both messages (and their accounts), e.g. to match an embedding store.
    pub fn with_message_ids(mut self, id_a: &str, id_b: &str) -> Self {
        for (m, id) in [(&mut self.a, id_a), (&mut self.b, id_b)] {
            m.id = id.to_string();
            m.account_id = id.to_string();
        }
        self
    }

    pub fn key(&self) -> PairKey {
        PairKey::new(self.a.id.as_str(), self.b.id.as_str()).expect("sides have distinct ids")
    }
}

#[derive(Debug, Deserialize, Serialize)]
pub struct LabeledRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Message ids used for embedding lookup; default `{id}/a` and `{id}/b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id_a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id_b: Option<String>,
    pub text_a: String,
    pub text_b: String,
    pub lang_a: String,
    pub lang_b: String,
    pub truth: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_b: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default)]
pub struct LabeledSet {
    pub pairs: Vec<LabeledPair>,
    pub warnings: Vec<String>,
    /// Pairs dropped by the optional length filter.
    pub filtered: usize,
}

impl LabeledSet {
    /// Pairs per ground-truth class, keyed by report name.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out: BTreeMap<&'static str, usize> =
            super::CLASS_ORDER.iter().map(|&l| (super::class_name(l), 0)).collect();
        for p in &self.pairs {
            *out.entry(super::class_name(p.truth)).or_default() += 1;
        }
        out
    }
}

/// Reads labeled-pair JSONL. Both sides go through normalization; pairs
/// with a side shorter than `min_letters` are dropped only when it is given.
pub fn load_labeled_pairs(path: &Path, min_letters: Option<usize>) -> Result<LabeledSet, EvalError> {
    let io = |source| EvalError::Io {
        path: path.to_path_buf(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(io)?);
    let mut set = LabeledSet::default();
    let mut seen = std::collections::HashSet::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let record: LabeledRecord = serde_json::from_str(&line).map_err(|e| EvalError::Record {
            line: line_no,
            message: e.to_string(),
        })?;
        let truth = parse_truth(&record.truth).ok_or_else(|| EvalError::UnknownTruth {
            line: line_no,
            value: record.truth.clone(),
        })?;
        let id = record.id.clone().unwrap_or_else(|| format!("p{line_no:06}"));
        if !seen.insert(id.clone()) {
            return Err(EvalError::Record {
                line: line_no,
                message: format!("duplicate pair id {id:?}"),
            });
        }
        let mut pair = LabeledPair::new(
            &id,
            &record.text_a,
            &record.lang_a,
            &record.text_b,
            &record.lang_b,
            truth,
        );
        if record.id_a.is_some() || record.id_b.is_some() {
            let (a, b) = (
                record.id_a.clone().unwrap_or_else(|| pair.a.id.clone()),
                record.id_b.clone().unwrap_or_else(|| pair.b.id.clone()),
            );
            if a == b {
                return Err(EvalError::Record {
                    line: line_no,
                    message: format!("id_a and id_b are both {a:?}"),
                });
            }
            pair = pair.with_message_ids(&a, &b);
        }
        let vector = |values: Option<Vec<f64>>, side: &str| {
            values
                .map(EmbeddingVector::new)
                .transpose()
                .map_err(|e| EvalError::Record {
                    line: line_no,
                    message: format!("embedding_{side}: {e}"),
                })
        };
        pair.embedding_a = vector(record.embedding_a, "a")?;
        pair.embedding_b = vector(record.embedding_b, "b")?;
        if min_letters.is_some_and(|min| pair.a.letter_count() < min || pair.b.letter_count() < min) {
            set.filtered += 1;
            continue;
        }
        set.pairs.push(pair);
    }
    if set.pairs.is_empty() && set.filtered == 0 {
        set.warnings.push(format!("{}: no labeled pairs", path.display()));
    }
    Ok(set)
}

/// Grapheme distance per pair, positive where truth is `positive`. Pairs whose
/// truth is in neither class are skipped; distance errors are returned.
pub fn grapheme_scores(
    pairs: &[LabeledPair],
    algorithm: GraphemeAlgorithm,
    positive: &[Label],
    negative: &[Label],
) -> Result<Vec<Score>, EvalError> {
    pairs
        .par_iter()
        .filter(|p| positive.contains(&p.truth) || negative.contains(&p.truth))
        .map(|p| {
            let d = algorithm
                .distance(&PreparedText::new(algorithm, &p.a), &PreparedText::new(algorithm, &p.b))
                .map_err(|source| EvalError::Distance { pair: p.key(), source })?;
            Ok(Score::new(d.value, positive.contains(&p.truth)))
        })
        .collect()
}

fn embeddings<'p>(
    p: &'p LabeledPair,
    store: Option<&'p EmbeddingStore>,
) -> Result<(&'p EmbeddingVector, &'p EmbeddingVector), EvalError> {
    let look =
        |inline: &'p Option<EmbeddingVector>, id: &str| inline.as_ref().or_else(|| store.and_then(|s| s.get(id)));
    match (look(&p.embedding_a, &p.a.id), look(&p.embedding_b, &p.b.id)) {
        (Some(a), Some(b)) => Ok((a, b)),
        (a, b) => {
            let ids = [(a.is_none(), &p.a.id), (b.is_none(), &p.b.id)]
                .into_iter()
                .filter(|(missing, _)| *missing)
                .map(|(_, id)| id.clone())
                .collect();
            Err(EvalError::Embedding(EmbeddingError::Missing { ids }))
        }
    }
}

/// Semantic distance per pair; matches of any kind are positive, controls negative.
pub fn semantic_scores(pairs: &[LabeledPair], store: Option<&EmbeddingStore>) -> Result<Vec<Score>, EvalError> {
    pairs
        .par_iter()
        .map(|p| {
            let (a, b) = embeddings(p, store)?;
            let d = crate::semantic::dist_semantic(a, b)?;
            Ok(Score::new(d, p.truth.is_match()))
        })
        .collect()
}

/// Runs the classifier on every labeled pair. Output is in input order.
pub fn classify_labeled(
    pairs: &[LabeledPair],
    store: Option<&EmbeddingStore>,
    thresholds: &Thresholds,
) -> Result<Vec<PairVerdict>, EvalError> {
    pairs
        .par_iter()
        .map(|p| {
            let (a, b) = embeddings(p, store)?;
            Ok(classify_pair(&p.a, a, &p.b, b, thresholds)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        f
    }

    #[test]
    fn loads_and_counts() {
        let f = write(&[
            r#"{"text_a":"Hola @ana mundo","text_b":"Hello world","lang_a":"es","lang_b":"en","truth":"translation","embedding_a":[1,0],"embedding_b":[1,0.1]}"#,
            r#"{"id":"x","id_b":"m9","text_a":"one two","text_b":"two one","lang_a":"en","lang_b":"en","truth":"control"}"#,
        ]);
        let set = load_labeled_pairs(f.path(), None).unwrap();
        assert_eq!(set.pairs.len(), 2);
        assert_eq!(set.pairs[0].a.id, "p000001/a");
        assert_eq!(set.pairs[0].a.semantic_text, "Hola mundo");
        assert_eq!(set.pairs[1].truth, Label::NoMatch);
        assert_eq!((set.pairs[1].a.id.as_str(), set.pairs[1].b.id.as_str()), ("x/a", "m9"));
        assert!(set.pairs[0].embedding_b.is_some());
        let counts = set.counts();
        assert_eq!(
            (counts["translation"], counts["control"], counts["rewording"]),
            (1, 1, 0)
        );
    }

    #[test]
    fn unknown_truth_is_an_error() {
        let f = write(&[r#"{"text_a":"a","text_b":"b","lang_a":"en","lang_b":"en","truth":"parody"}"#]);
        assert!(matches!(
            load_labeled_pairs(f.path(), None),
            Err(EvalError::UnknownTruth { line: 1, value }) if value == "parody"
        ));
    }

    #[test]
    fn empty_file_warns() {
        let f = write(&[]);
        let set = load_labeled_pairs(f.path(), None).unwrap();
        assert!(set.pairs.is_empty());
        assert_eq!(set.warnings.len(), 1);
    }

    #[test]
    fn length_filter_only_when_asked() {
        let f = write(&[r#"{"text_a":"short","text_b":"tiny","lang_a":"en","lang_b":"en","truth":"copy_pasta"}"#]);
        assert_eq!(load_labeled_pairs(f.path(), None).unwrap().pairs.len(), 1);
        let filtered = load_labeled_pairs(f.path(), Some(30)).unwrap();
        assert_eq!((filtered.pairs.len(), filtered.filtered), (0, 1));
    }

    #[test]
    fn classification_needs_embeddings() {
        let p = LabeledPair::new("q", "same words here", "en", "same words here!", "en", Label::CopyPasta);
        assert!(matches!(
            classify_labeled(std::slice::from_ref(&p), None, &Thresholds::default()),
            Err(EvalError::Embedding(EmbeddingError::Missing { ids })) if ids.len() == 2
        ));
        let store = EmbeddingStore::from_values("t", [("q/a", vec![1.0, 0.0]), ("q/b", vec![1.0, 0.0])]).unwrap();
        let v = classify_labeled(&[p], Some(&store), &Thresholds::default()).unwrap();
        assert_eq!(v[0].label, Label::CopyPasta);
    }
}
