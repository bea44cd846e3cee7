//! Run settings: built-in defaults, overlaid by an optional JSON file, overlaid
//! by explicit flags. The resolved settings are echoed next to every output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use copypasta_core::corpus::DEFAULT_MIN_LETTERS;
use copypasta_core::eval::DEFAULT_SEED;
use copypasta_core::semantic::FetchConfig;
use copypasta_core::{GraphemeAlgorithm, Thresholds};

/// Environment variable holding the embedding service bearer token.
pub const TOKEN_ENV: &str = "COPYPASTA_EMBEDDING_TOKEN";

/// File name of the echoed configuration in each output directory.
pub const ECHO_FILE: &str = "run_config.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmbeddingSettings {
    pub url: Option<String>,
    pub model: String,
    pub timeout_secs: u64,
    pub cache: Option<PathBuf>,
    pub fetch: FetchConfig,
}

impl Default for EmbeddingSettings {
    fn default() -> Self {
        EmbeddingSettings {
            url: None,
            model: "text-embedding-ada-002".into(),
            timeout_secs: 60,
            cache: None,
            fetch: FetchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub thresholds: Thresholds,
    /// Pair-processing threads; 0 means one per available core.
    pub workers: usize,
    pub seed: u64,
    pub min_letters: usize,
    /// Apply `min_letters` to labeled pairs in `eval` as well.
    pub filter_labeled_pairs: bool,
    pub emit_nomatch: bool,
    pub require_semantic_for_copypasta: bool,
    pub component_account_linkage: bool,
    pub prune: bool,
    pub project_accounts: bool,
    pub theme_map: Option<PathBuf>,
    pub algorithms: Vec<GraphemeAlgorithm>,
    pub bootstrap_resamples: usize,
    pub confidence_level: f64,
    pub language_tool: Option<String>,
    pub language_url: Option<String>,
    pub embedding: EmbeddingSettings,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            thresholds: Thresholds::default(),
            workers: 0,
            seed: DEFAULT_SEED,
            min_letters: DEFAULT_MIN_LETTERS,
            filter_labeled_pairs: false,
            emit_nomatch: false,
            require_semantic_for_copypasta: false,
            component_account_linkage: false,
            prune: true,
            project_accounts: false,
            theme_map: None,
            algorithms: GraphemeAlgorithm::ALL.to_vec(),
            bootstrap_resamples: 10_000,
            confidence_level: 0.95,
            language_tool: None,
            language_url: None,
            embedding: EmbeddingSettings::default(),
        }
    }
}

impl Settings {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        match path {
            None => Ok(Settings::default()),
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
            }
        }
    }

    /// Replaces `workers = 0` by the core count so the echo is explicit.
    pub fn resolve(mut self) -> Self {
        if self.workers == 0 {
            self.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        }
        self
    }
}

/// What gets written to [`ECHO_FILE`].
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub command: &'a str,
    pub inputs: BTreeMap<&'a str, &'a Path>,
    pub output_dir: &'a Path,
    pub settings: &'a Settings,
}

impl RunConfig<'_> {
    pub fn write(&self) -> anyhow::Result<()> {
        crate::output::write_json(&self.output_dir.join(ECHO_FILE), self)
    }
}
