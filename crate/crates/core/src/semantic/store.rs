use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EmbeddingError, EmbeddingVector};
use crate::corpus::Corpus;

/// Leading bytes of the binary embedding format.
pub const BINARY_MAGIC: &[u8; 4] = b"EMB1";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProviderDescriptor {
    pub name: String,
    pub dim: usize,
}

/// Message id → embedding, all of one dimension.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingStore {
    vectors: HashMap<String, EmbeddingVector>,
    provider: ProviderDescriptor,
}

#[derive(Serialize, Deserialize)]
struct JsonlRecord<'a> {
    id: std::borrow::Cow<'a, str>,
    embedding: Vec<f64>,
}

impl EmbeddingStore {
    pub fn new(provider_name: impl Into<String>) -> Self {
        EmbeddingStore {
            vectors: HashMap::new(),
            provider: ProviderDescriptor {
                name: provider_name.into(),
                dim: 0,
            },
        }
    }

    pub fn provider(&self) -> &ProviderDescriptor {
        &self.provider
    }

    pub fn dim(&self) -> usize {
        self.provider.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&EmbeddingVector> {
        self.vectors.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vectors.contains_key(id)
    }

    /// Adds a vector; the first insertion fixes the store's dimension.
    pub fn insert(&mut self, id: impl Into<String>, vector: EmbeddingVector) -> Result<(), EmbeddingError> {
        let id = id.into();
        if self.provider.dim == 0 {
            self.provider.dim = vector.dim();
        } else if vector.dim() != self.provider.dim {
            return Err(EmbeddingError::DimensionMismatch {
                expected: self.provider.dim,
                found: vector.dim(),
                id: Some(id),
            });
        }
        if self.vectors.contains_key(&id) {
            return Err(EmbeddingError::DuplicateId(id));
        }
        self.vectors.insert(id, vector);
        Ok(())
    }

    /// Builds a store from raw values, validating each vector.
    pub fn from_values<I, S>(provider_name: &str, items: I) -> Result<Self, EmbeddingError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut store = EmbeddingStore::new(provider_name);
        for (id, values) in items {
            let id = id.into();
            let vector = EmbeddingVector::new(values).map_err(|e| with_id(e, &id))?;
            store.insert(id, vector)?;
        }
        Ok(store)
    }

    /// Fails with every id of `corpus` lacking a vector.
    pub fn check_covers(&self, corpus: &Corpus) -> Result<(), EmbeddingError> {
        let ids: Vec<String> = corpus
            .messages()
            .iter()
            .filter(|m| !self.contains(&m.id))
            .map(|m| m.id.clone())
            .collect();
        if ids.is_empty() {
            Ok(())
        } else {
            Err(EmbeddingError::Missing { ids })
        }
    }

    /// Ids in ascending order; file writers use this for byte-stable output.
    pub fn sorted(&self) -> BTreeMap<&str, &EmbeddingVector> {
        self.vectors.iter().map(|(k, v)| (k.as_str(), v)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &EmbeddingVector)> {
        self.vectors.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub(crate) fn merge(&mut self, other: EmbeddingStore) -> Result<(), EmbeddingError> {
        for (id, v) in other.vectors {
            self.insert(id, v)?;
        }
        Ok(())
    }

    /// Loads either format, picking binary when the file starts with `EMB1`.
    pub fn load(path: &Path) -> Result<Self, EmbeddingError> {
        let mut head = [0u8; 4];
        let n = File::open(path)
            .and_then(|mut f| f.read(&mut head))
            .map_err(|source| io_error(path, source))?;
        if n == 4 && &head == BINARY_MAGIC {
            Self::read_binary(path)
        } else {
            Self::read_jsonl(path)
        }
    }

    /// One `{"id": .., "embedding": [..]}` object per line.
    pub fn read_jsonl(path: &Path) -> Result<Self, EmbeddingError> {
        let reader = BufReader::new(File::open(path).map_err(|source| io_error(path, source))?);
        let mut store = EmbeddingStore::new(provider_name_from(path));
        for (n, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| io_error(path, source))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: JsonlRecord = serde_json::from_str(&line).map_err(|e| EmbeddingError::Record {
                line: n + 1,
                message: e.to_string(),
            })?;
            let id = record.id.into_owned();
            let vector = EmbeddingVector::new(record.embedding).map_err(|e| with_id(e, &id))?;
            store.insert(id, vector)?;
        }
        Ok(store)
    }

    pub fn write_jsonl(&self, path: &Path) -> Result<(), EmbeddingError> {
        let mut out = BufWriter::new(File::create(path).map_err(|source| io_error(path, source))?);
        for (id, v) in self.sorted() {
            let record = JsonlRecord {
                id: id.into(),
                embedding: v.values().to_vec(),
            };
            serde_json::to_writer(&mut out, &record).map_err(|e| io_error(path, e.into()))?;
            out.write_all(b"\n").map_err(|source| io_error(path, source))?;
        }
        out.flush().map_err(|source| io_error(path, source))
    }

    /// `EMB1`, u32-LE dim, then `[u16-LE id length, id bytes, dim × f32-LE]` records.
    pub fn read_binary(path: &Path) -> Result<Self, EmbeddingError> {
        let mut bytes = Vec::new();
        File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(|source| io_error(path, source))?;
        let mut store = EmbeddingStore::new(provider_name_from(path));
        let mut cursor = Cursor::new(&bytes);
        if cursor.take(4)? != BINARY_MAGIC {
            return Err(EmbeddingError::Framing("missing EMB1 magic".into()));
        }
        let dim = u32::from_le_bytes(cursor.take(4)?.try_into().expect("4 bytes")) as usize;
        if dim == 0 {
            return Err(EmbeddingError::Framing("declared dimension is 0".into()));
        }
        while !cursor.is_done() {
            let id_len = u16::from_le_bytes(cursor.take(2)?.try_into().expect("2 bytes")) as usize;
            let id = std::str::from_utf8(cursor.take(id_len)?)
                .map_err(|_| EmbeddingError::Framing(format!("id at byte {} is not UTF-8", cursor.pos)))?
                .to_string();
            let payload = cursor.take(dim * 4)?;
            let values = payload
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")) as f64)
                .collect();
            let vector = EmbeddingVector::new(values).map_err(|e| with_id(e, &id))?;
            store.insert(id, vector)?;
        }
        store.provider.dim = dim;
        Ok(store)
    }

    /// Values are narrowed to f32.
    pub fn write_binary(&self, path: &Path) -> Result<(), EmbeddingError> {
        let mut out = BufWriter::new(File::create(path).map_err(|source| io_error(path, source))?);
        let mut buf = Vec::with_capacity(8 + self.len() * (2 + 16 + self.dim() * 4));
        buf.extend_from_slice(BINARY_MAGIC);
        buf.extend_from_slice(&(self.dim() as u32).to_le_bytes());
        for (id, v) in self.sorted() {
            let id_len = u16::try_from(id.len())
                .map_err(|_| EmbeddingError::Framing(format!("id {id:?} longer than 65535 bytes")))?;
            buf.extend_from_slice(&id_len.to_le_bytes());
            buf.extend_from_slice(id.as_bytes());
            for x in v.values() {
                buf.extend_from_slice(&(*x as f32).to_le_bytes());
            }
        }
        out.write_all(&buf)
            .and_then(|_| out.flush())
            .map_err(|source| io_error(path, source))
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn is_done(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], EmbeddingError> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(EmbeddingError::Framing(format!(
                "truncated: needed {n} bytes at offset {}, only {} left",
                self.pos,
                self.bytes.len() - self.pos
            )));
        }
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }
}

fn io_error(path: &Path, source: std::io::Error) -> EmbeddingError {
    EmbeddingError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn with_id(err: EmbeddingError, id: &str) -> EmbeddingError {
    let id = Some(id.to_string());
    match err {
        EmbeddingError::ZeroVector { .. } => EmbeddingError::ZeroVector { id },
        EmbeddingError::NonFinite { .. } => EmbeddingError::NonFinite { id },
        other => other,
    }
}

fn provider_name_from(path: &Path) -> String {
    format!("file:{}", path.display())
}
