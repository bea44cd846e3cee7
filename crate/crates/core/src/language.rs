//! Binary language distance and language labelling of a corpus.
//!
//! Tags come either from the platform metadata carried by each record or
//! from an external identification tool (a subprocess or an HTTP endpoint).
//! Both tool flavours exchange `{"id": .., "text": ..}` requests for
//! `{"id": .., "lang": ..}` answers.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;

pub const UNDETERMINED: &str = "und";

/// Lowercase primary language subtag, or `"und"` when unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Option<String>", into = "String")]
pub struct LanguageTag(String);

impl LanguageTag {
    /// Normalizes `"es-MX"`, `"ES"` and `" es "` to `"es"`; empty input becomes `"und"`.
    pub fn new(code: &str) -> Self {
        let primary = code.trim().split(['-', '_']).next().unwrap_or_default().to_lowercase();
        if primary.is_empty() {
            Self::undetermined()
        } else {
            LanguageTag(primary)
        }
    }

    pub fn undetermined() -> Self {
        LanguageTag(UNDETERMINED.to_string())
    }

    pub fn is_undetermined(&self) -> bool {
        self.0 == UNDETERMINED
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for LanguageTag {
    fn default() -> Self {
        Self::undetermined()
    }
}

impl From<Option<String>> for LanguageTag {
    fn from(code: Option<String>) -> Self {
        code.map_or_else(Self::undetermined, |c| Self::new(&c))
    }
}

impl From<LanguageTag> for String {
    fn from(tag: LanguageTag) -> Self {
        tag.0
    }
}

impl From<&str> for LanguageTag {
    fn from(code: &str) -> Self {
        Self::new(code)
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// 0 when both tags name the same concrete language, 1 otherwise.
///
/// `"und"` never matches, not even another `"und"`.
pub fn dist_language(a: &LanguageTag, b: &LanguageTag) -> f64 {
    if a == b && !a.is_undetermined() {
        0.0
    } else {
        1.0
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LanguageToolError {
    #[error("failed to run language tool: {0}")]
    Io(#[from] std::io::Error),
    #[error("language tool exited with {0}")]
    Exit(std::process::ExitStatus),
    #[error("language endpoint failed: {0}")]
    Http(String),
    #[error("unreadable language tool output: {0}")]
    Decode(#[from] serde_json::Error),
}

#[derive(Debug, Serialize)]
struct IdentifyRequest<'a> {
    id: &'a str,
    text: &'a str,
}

#[derive(Debug, Deserialize)]
struct IdentifyAnswer {
    id: String,
    lang: Option<String>,
}

/// External language identifier.
pub trait LanguageIdentifier: Sync {
    /// Returns the raw language codes it could determine, keyed by message id.
    fn identify(&self, items: &[(&str, &str)]) -> Result<HashMap<String, String>, LanguageToolError>;
}

/// Runs a command that reads request JSONL on stdin and answers JSONL on stdout.
#[derive(Debug, Clone)]
pub struct CommandIdentifier {
    pub program: String,
    pub args: Vec<String>,
}

impl CommandIdentifier {
    /// Splits a shell-like command line on whitespace; no quoting support.
    pub fn from_command_line(line: &str) -> Option<Self> {
        let mut parts = line.split_whitespace().map(str::to_string);
        let program = parts.next()?;
        Some(CommandIdentifier {
            program,
            args: parts.collect(),
        })
    }
}

impl LanguageIdentifier for CommandIdentifier {
    fn identify(&self, items: &[(&str, &str)]) -> Result<HashMap<String, String>, LanguageToolError> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let mut payload = Vec::new();
        for (id, text) in items {
            serde_json::to_writer(&mut payload, &IdentifyRequest { id, text })?;
            payload.push(b'\n');
        }
        let mut stdin = child.stdin.take().expect("stdin is piped");
        // Write on a separate thread so a tool that streams answers cannot deadlock us.
        let writer = std::thread::spawn(move || stdin.write_all(&payload));
        let stdout = child.stdout.take().expect("stdout is piped");
        let mut out = HashMap::new();
        for line in BufReader::new(stdout).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let answer: IdentifyAnswer = serde_json::from_str(&line)?;
            if let Some(lang) = answer.lang {
                out.insert(answer.id, lang);
            }
        }
        writer.join().expect("writer thread panicked")?;
        let status = child.wait()?;
        if !status.success() {
            return Err(LanguageToolError::Exit(status));
        }
        Ok(out)
    }
}

/// POSTs a JSON array of requests and expects a JSON array of answers.
#[derive(Debug, Clone)]
pub struct HttpIdentifier {
    pub url: String,
    pub timeout: Duration,
}

impl LanguageIdentifier for HttpIdentifier {
    fn identify(&self, items: &[(&str, &str)]) -> Result<HashMap<String, String>, LanguageToolError> {
        let body: Vec<_> = items.iter().map(|(id, text)| IdentifyRequest { id, text }).collect();
        let response = ureq::post(&self.url)
            .timeout(self.timeout)
            .send_json(&body)
            .map_err(|e| LanguageToolError::Http(e.to_string()))?;
        let answers: Vec<IdentifyAnswer> = response
            .into_json()
            .map_err(|e| LanguageToolError::Http(e.to_string()))?;
        Ok(answers.into_iter().filter_map(|a| a.lang.map(|l| (a.id, l))).collect())
    }
}

pub enum LanguageSource<'a> {
    /// Keep the tags carried by the input records.
    Provided,
    /// Ask an identifier, in batches of `batch_size`, at most `concurrency` at a time.
    External {
        tool: &'a dyn LanguageIdentifier,
        batch_size: usize,
        concurrency: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LanguageReport {
    pub messages: usize,
    pub undetermined: usize,
    pub undetermined_share: f64,
    /// Messages that fell back to `"und"` because the tool failed or skipped them.
    pub tool_warnings: usize,
}

/// Gives every message a language tag and reports how many remain `"und"`.
pub fn label_languages(mut corpus: Corpus, source: LanguageSource<'_>) -> (Corpus, LanguageReport) {
    let mut tool_warnings = 0;
    if let LanguageSource::External {
        tool,
        batch_size,
        concurrency,
    } = source
    {
        let items: Vec<(&str, &str)> = corpus
            .messages()
            .iter()
            .map(|m| (m.id.as_str(), m.raw_text.as_str()))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(concurrency.max(1))
            .build()
            .expect("thread pool");
        let answers: Vec<HashMap<String, String>> = pool.install(|| {
            items
                .par_chunks(batch_size.max(1))
                .map(|chunk| {
                    tool.identify(chunk).unwrap_or_else(|e| {
                        log_warning(&format!("language tool failed on a batch of {}: {e}", chunk.len()));
                        HashMap::new()
                    })
                })
                .collect()
        });
        let answers: HashMap<String, String> = answers.into_iter().flatten().collect();
        for message in corpus.messages_mut() {
            let tag = answers
                .get(&message.id)
                .map(|code| LanguageTag::new(code))
                .unwrap_or_default();
            if tag.is_undetermined() {
                tool_warnings += 1;
            }
            message.language = tag;
        }
    }
    let messages = corpus.len();
    let undetermined = corpus
        .messages()
        .iter()
        .filter(|m| m.language.is_undetermined())
        .count();
    if undetermined > 0 {
        log_warning(&format!("{undetermined} untagged"));
    }
    let report = LanguageReport {
        messages,
        undetermined,
        undetermined_share: if messages == 0 {
            0.0
        } else {
            undetermined as f64 / messages as f64
        },
        tool_warnings,
    };
    (corpus, report)
}

fn log_warning(msg: &str) {
    eprintln!("warning: {msg}");
}
