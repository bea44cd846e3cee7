use std::collections::HashMap;
use std::path::Path;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{EmbeddingError, EmbeddingStore, EmbeddingVector};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProviderError {
    /// Worth retrying: rate limiting, 5xx, dropped connections.
    #[error("transient: {0}")]
    Transient(String),
    #[error("{0}")]
    Fatal(String),
}

/// Anything that turns a batch of texts into vectors, in input order.
pub trait EmbeddingProvider: Sync {
    fn name(&self) -> &str;
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, ProviderError>;
}

/// Maps each known text to a fixed vector; used for reproducible fixtures.
#[derive(Debug, Clone, Default)]
pub struct FixtureProvider {
    vectors: HashMap<String, Vec<f64>>,
}

impl FixtureProvider {
    pub fn new(vectors: HashMap<String, Vec<f64>>) -> Self {
        FixtureProvider { vectors }
    }
}

impl EmbeddingProvider for FixtureProvider {
    fn name(&self) -> &str {
        "fixture"
    }

    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, ProviderError> {
        texts
            .iter()
            .map(|t| {
                self.vectors
                    .get(*t)
                    .cloned()
                    .ok_or_else(|| ProviderError::Fatal(format!("no fixture vector for text {t:?}")))
            })
            .collect()
    }
}

/// OpenAI-style embedding endpoint: `POST {"input": [..], "model": ..}`
/// answered by `{"data": [{"embedding": [..]}, ..]}`.
#[derive(Debug, Clone)]
pub struct HttpProvider {
    pub url: String,
    pub model: String,
    pub token: Option<String>,
    pub timeout: Duration,
}

#[derive(Serialize)]
struct HttpRequest<'a> {
    input: &'a [&'a str],
    model: &'a str,
}

#[derive(Deserialize)]
struct HttpResponse {
    data: Vec<HttpDatum>,
}

#[derive(Deserialize)]
struct HttpDatum {
    embedding: Vec<f64>,
    #[serde(default)]
    index: Option<usize>,
}

impl EmbeddingProvider for HttpProvider {
    fn name(&self) -> &str {
        &self.model
    }

    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, ProviderError> {
        let mut request = ureq::post(&self.url).timeout(self.timeout);
        if let Some(token) = &self.token {
            request = request.set("Authorization", &format!("Bearer {token}"));
        }
        let response = match request.send_json(HttpRequest {
            input: texts,
            model: &self.model,
        }) {
            Ok(r) => r,
            Err(ureq::Error::Status(code, r)) => {
                let body = r.into_string().unwrap_or_default();
                let msg = format!("HTTP {code}: {}", body.chars().take(200).collect::<String>());
                return Err(if code == 429 || code >= 500 {
                    ProviderError::Transient(msg)
                } else {
                    ProviderError::Fatal(msg)
                });
            }
            Err(ureq::Error::Transport(t)) => return Err(ProviderError::Transient(t.to_string())),
        };
        let mut parsed: HttpResponse = response
            .into_json()
            .map_err(|e| ProviderError::Fatal(format!("bad response body: {e}")))?;
        if parsed.data.len() != texts.len() {
            return Err(ProviderError::Fatal(format!(
                "asked for {} embeddings, got {}",
                texts.len(),
                parsed.data.len()
            )));
        }
        if parsed.data.iter().all(|d| d.index.is_some()) {
            parsed.data.sort_by_key(|d| d.index);
        }
        Ok(parsed.data.into_iter().map(|d| d.embedding).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FetchConfig {
    pub batch_size: usize,
    /// Retries after the first attempt, per batch.
    pub max_retries: u32,
    /// First backoff delay; doubled on each retry.
    #[serde(with = "millis")]
    pub base_delay: Duration,
    /// Maximum number of batches in flight.
    pub concurrency: usize,
}

impl Default for FetchConfig {
    fn default() -> Self {
        FetchConfig {
            batch_size: 64,
            max_retries: 5,
            base_delay: Duration::from_millis(500),
            concurrency: 4,
        }
    }
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FetchStats {
    pub requested: usize,
    pub cache_hits: usize,
    pub requests: usize,
    pub retries: usize,
}

struct BatchOutcome {
    vectors: Vec<Vec<f64>>,
    requests: usize,
}

fn embed_with_retry(
    provider: &dyn EmbeddingProvider,
    texts: &[&str],
    config: &FetchConfig,
) -> Result<BatchOutcome, (ProviderError, usize)> {
    let mut attempt = 0;
    loop {
        match provider.embed(texts) {
            Ok(vectors) => {
                return Ok(BatchOutcome {
                    vectors,
                    requests: attempt as usize + 1,
                })
            }
            Err(ProviderError::Transient(reason)) if attempt < config.max_retries => {
                let delay = config.base_delay.saturating_mul(1 << attempt.min(16));
                eprintln!("warning: embedding request failed ({reason}); retrying in {delay:?}");
                std::thread::sleep(delay);
                attempt += 1;
            }
            Err(e) => return Err((e, attempt as usize + 1)),
        }
    }
}

/// Embeds every `(id, text)` not already in the on-disk cache, in batches,
/// retrying transient failures with exponential backoff.
///
/// Nothing is written unless every batch succeeds. On success the cache file
/// (JSONL) holds the union of old and new vectors, so reruns skip the service.
pub fn fetch_embeddings(
    items: &[(String, String)],
    provider: &dyn EmbeddingProvider,
    config: &FetchConfig,
    cache: Option<&Path>,
) -> Result<(EmbeddingStore, FetchStats), EmbeddingError> {
    let mut store = match cache {
        Some(path) if path.exists() => EmbeddingStore::load(path)?,
        _ => EmbeddingStore::new(provider.name()),
    };
    let todo: Vec<&(String, String)> = items.iter().filter(|(id, _)| !store.contains(id)).collect();
    let mut stats = FetchStats {
        requested: items.len(),
        cache_hits: items.len() - todo.len(),
        ..FetchStats::default()
    };
    if todo.is_empty() {
        return Ok((store, stats));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.concurrency.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Result<BatchOutcome, (ProviderError, usize)>> = pool.install(|| {
        todo.par_chunks(config.batch_size.max(1))
            .map(|batch| {
                let texts: Vec<&str> = batch.iter().map(|(_, t)| t.as_str()).collect();
                embed_with_retry(provider, &texts, config)
            })
            .collect()
    });

    let all_ids = || todo.iter().map(|(id, _)| id.clone()).collect::<Vec<_>>();
    let mut fresh = EmbeddingStore::new(provider.name());
    for (batch, outcome) in todo.chunks(config.batch_size.max(1)).zip(outcomes) {
        match outcome {
            Ok(out) => {
                stats.requests += out.requests;
                stats.retries += out.requests - 1;
                if out.vectors.len() != batch.len() {
                    return Err(EmbeddingError::Service {
                        reason: format!("expected {} vectors, got {}", batch.len(), out.vectors.len()),
                        ids: all_ids(),
                    });
                }
                for ((id, _), values) in batch.iter().zip(out.vectors) {
                    let vector = EmbeddingVector::new(values).map_err(|e| EmbeddingError::Service {
                        reason: format!("invalid vector for {id:?}: {e}"),
                        ids: all_ids(),
                    })?;
                    fresh.insert(id.clone(), vector)?;
                }
            }
            Err((e, _)) => {
                return Err(EmbeddingError::Service {
                    reason: e.to_string(),
                    ids: all_ids(),
                })
            }
        }
    }
    store.merge(fresh)?;
    if let Some(path) = cache {
        let tmp = path.with_extension("partial");
        store.write_jsonl(&tmp)?;
        std::fs::rename(&tmp, path).map_err(|source| EmbeddingError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok((store, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{BufRead, BufReader, Read, Write};
    use std::net::TcpListener;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::{Arc, Mutex};

    fn items(n: usize) -> Vec<(String, String)> {
        (0..n).map(|i| (format!("m{i}"), format!("text {i}"))).collect()
    }

    fn fast() -> FetchConfig {
        FetchConfig {
            batch_size: 4,
            max_retries: 3,
            base_delay: Duration::from_millis(1),
            concurrency: 2,
        }
    }

    /// Returns `[len, 1]` per text and counts calls.
    struct Counting {
        calls: AtomicUsize,
        fail_first: usize,
        fatal: bool,
    }

    impl EmbeddingProvider for Counting {
        fn name(&self) -> &str {
            "counting"
        }
        fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, ProviderError> {
            let n = self.calls.fetch_add(1, Ordering::SeqCst);
            if self.fatal {
                return Err(ProviderError::Fatal("down".into()));
            }
            if n < self.fail_first {
                return Err(ProviderError::Transient("429".into()));
            }
            Ok(texts.iter().map(|t| vec![t.len() as f64, 1.0]).collect())
        }
    }

    #[test]
    fn batches_requests() {
        let p = Counting {
            calls: AtomicUsize::new(0),
            fail_first: 0,
            fatal: false,
        };
        let (store, stats) = fetch_embeddings(&items(10), &p, &fast(), None).unwrap();
        assert_eq!(store.len(), 10);
        assert_eq!(stats.requests, 3);
        assert_eq!(p.calls.load(Ordering::SeqCst), 3);
    }

    #[test]
    fn fatal_failure_lists_every_unembedded_id() {
        let p = Counting {
            calls: AtomicUsize::new(0),
            fail_first: 0,
            fatal: true,
        };
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.jsonl");
        match fetch_embeddings(&items(10), &p, &fast(), Some(&cache)) {
            Err(EmbeddingError::Service { ids, .. }) => assert_eq!(ids.len(), 10),
            other => panic!("{other:?}"),
        }
        assert!(!cache.exists());
    }

    #[test]
    fn cache_hits_skip_the_provider() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.jsonl");
        let p = Counting {
            calls: AtomicUsize::new(0),
            fail_first: 0,
            fatal: false,
        };
        fetch_embeddings(&items(6), &p, &fast(), Some(&cache)).unwrap();
        let calls = p.calls.load(Ordering::SeqCst);
        let (store, stats) = fetch_embeddings(&items(6), &p, &fast(), Some(&cache)).unwrap();
        assert_eq!(p.calls.load(Ordering::SeqCst), calls);
        assert_eq!(stats.cache_hits, 6);
        assert_eq!(store.len(), 6);

        let (store, stats) = fetch_embeddings(&items(8), &p, &fast(), Some(&cache)).unwrap();
        assert_eq!(stats.cache_hits, 6);
        assert_eq!(stats.requests, 1);
        assert_eq!(store.len(), 8);
    }

    #[test]
    fn fixture_provider() {
        let p = FixtureProvider::new(HashMap::from([("hola".to_string(), vec![1.0, 0.0])]));
        assert_eq!(p.embed(&["hola"]).unwrap(), vec![vec![1.0, 0.0]]);
        assert!(matches!(p.embed(&["adios"]), Err(ProviderError::Fatal(_))));
    }

    /// Minimal HTTP/1.1 server answering scripted `(status, body)` responses in order.
    struct MockServer {
        url: String,
        requests: Arc<Mutex<Vec<(String, String)>>>,
    }

    fn mock_server(script: Vec<(u16, String)>) -> MockServer {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}/v1/embeddings", listener.local_addr().unwrap());
        let requests = Arc::new(Mutex::new(Vec::new()));
        let seen = requests.clone();
        std::thread::spawn(move || {
            for (status, body) in script {
                let (mut stream, _) = listener.accept().unwrap();
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut headers = String::new();
                let mut len = 0;
                loop {
                    let mut line = String::new();
                    reader.read_line(&mut line).unwrap();
                    if line == "\r\n" || line.is_empty() {
                        break;
                    }
                    if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                        len = v.trim().parse().unwrap();
                    }
                    headers.push_str(&line);
                }
                let mut payload = vec![0; len];
                reader.read_exact(&mut payload).unwrap();
                seen.lock()
                    .unwrap()
                    .push((headers, String::from_utf8(payload).unwrap()));
                let reply = format!(
                    "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
                stream.write_all(reply.as_bytes()).unwrap();
            }
        });
        MockServer { url, requests }
    }

    fn provider(url: &str) -> HttpProvider {
        HttpProvider {
            url: url.to_string(),
            model: "test-model".into(),
            token: Some("secret".into()),
            timeout: Duration::from_secs(5),
        }
    }

    #[test]
    fn http_retries_after_rate_limiting() {
        let ok = r#"{"data":[{"embedding":[1.0,0.0],"index":1},{"embedding":[0.0,1.0],"index":0}]}"#;
        let server = mock_server(vec![(429, "{}".into()), (429, "{}".into()), (200, ok.into())]);
        let items = vec![
            ("a".to_string(), "uno".to_string()),
            ("b".to_string(), "dos".to_string()),
        ];
        let config = FetchConfig {
            concurrency: 1,
            ..fast()
        };
        let (store, stats) = fetch_embeddings(&items, &provider(&server.url), &config, None).unwrap();
        assert_eq!(stats.requests, 3);
        assert_eq!(stats.retries, 2);
        // `index` reorders the answers.
        assert_eq!(store.get("a").unwrap().values(), &[0.0, 1.0]);
        let requests = server.requests.lock().unwrap();
        let (headers, body) = &requests[2];
        assert!(headers.to_ascii_lowercase().contains("authorization: bearer secret"));
        let body: serde_json::Value = serde_json::from_str(body).unwrap();
        assert_eq!(body["input"], serde_json::json!(["uno", "dos"]));
        assert_eq!(body["model"], "test-model");
    }

    #[test]
    fn http_client_error_is_not_retried() {
        let server = mock_server(vec![(400, r#"{"error":"bad"}"#.into())]);
        let items = vec![("a".to_string(), "uno".to_string())];
        let err = fetch_embeddings(&items, &provider(&server.url), &fast(), None).unwrap_err();
        assert!(matches!(err, EmbeddingError::Service { .. }));
        assert_eq!(server.requests.lock().unwrap().len(), 1);
    }

    #[test]
    fn unreachable_endpoint_aborts_with_all_ids() {
        // Bind then drop to get a port nobody listens on.
        let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
        let p = provider(&format!("http://127.0.0.1:{port}/"));
        let config = FetchConfig {
            max_retries: 1,
            ..fast()
        };
        match fetch_embeddings(&items(10), &p, &config, None) {
            Err(EmbeddingError::Service { ids, .. }) => assert_eq!(ids.len(), 10),
            other => panic!("{other:?}"),
        }
    }
}
