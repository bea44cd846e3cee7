//! Deterministic scripted fixtures: seed messages with copy-pasta, rewording
//! and translation variants, control pairs, and a grapheme-only fixture for
//! threshold recovery.

mod lexicon;

use chrono::{DateTime, Duration, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::Label;
use crate::corpus::{grapheme_text, normalize, semantic_text, Corpus, Message};
use crate::eval::{LabeledPair, LabeledRecord};
use crate::grapheme::levenshtein;
use crate::language::LanguageTag;
use crate::semantic::{EmbeddingStore, EmbeddingVector};

use lexicon::{DECORATIONS, HASHTAGS, LANGUAGES, WORDS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub seeds: usize,
    /// Variants per seed for each of copy-pasta, rewording and translation.
    pub variants: usize,
    pub controls: usize,
    pub dim: usize,
    /// Accounts per posting group; seed families rotate over `groups`.
    pub accounts_per_group: usize,
    pub groups: usize,
    pub min_seed_letters: usize,
    /// Largest share of a seed's letters a copy-pasta variant may touch.
    pub edit_budget: f64,
    pub rng_seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seeds: 100,
            variants: 10,
            controls: 1_000,
            dim: 512,
            accounts_per_group: 8,
            groups: 5,
            min_seed_letters: 60,
            edit_budget: 0.15,
            rng_seed: 7,
        }
    }
}

/// A generated corpus, its embeddings, and the labeled seed/variant and control pairs.
#[derive(Debug, Clone)]
pub struct SynthFixture {
    pub corpus: Corpus,
    pub embeddings: EmbeddingStore,
    pub pairs: Vec<LabeledPair>,
}

impl SynthFixture {
    /// Labeled-pair records that reference corpus ids instead of inlining vectors.
    pub fn records(&self) -> Vec<LabeledRecord> {
        self.pairs
            .iter()
            .map(|p| LabeledRecord {
                id: Some(p.id.clone()),
                id_a: Some(p.a.id.clone()),
                id_b: Some(p.b.id.clone()),
                text_a: p.a.raw_text.clone(),
                text_b: p.b.raw_text.clone(),
                lang_a: p.a.language.as_str().to_string(),
                lang_b: p.b.language.as_str().to_string(),
                truth: crate::eval::class_name(p.truth).to_string(),
                embedding_a: None,
                embedding_b: None,
            })
            .collect()
    }
}

fn letters(text: &str) -> usize {
    grapheme_text(&semantic_text(text)).chars().count()
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Two unit vectors with zero dot product.
fn orthogonal_pair(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<f64>, Vec<f64>) {
    let u = random_unit(rng, dim);
    loop {
        let v = random_unit(rng, dim);
        let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        let w: Vec<f64> = v.iter().zip(&u).map(|(b, a)| b - dot * a).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return (u, w.into_iter().map(|x| x / norm).collect());
        }
    }
}

/// Lexicon rows forming a sentence of at least `min_letters` letters.
fn sentence(rng: &mut ChaCha8Rng, min_letters: usize) -> Vec<usize> {
    let mut rows: Vec<usize> = (0..WORDS.len()).collect();
    rows.shuffle(rng);
    let mut out = Vec::new();
    let mut count = 0;
    for row in rows {
        if count >= min_letters {
            break;
        }
        count += letters(WORDS[row].english[0]);
        out.push(row);
    }
    out
}

fn render(tokens: &[String]) -> String {
    let mut text = tokens.join(" ");
    if let Some(first) = text.get(..1) {
        text.replace_range(..1, &first.to_uppercase());
    }
    text.push('.');
    text
}

/// Appends decorations to random tokens; leaves letters untouched.
fn churn(rng: &mut ChaCha8Rng, tokens: &mut [String]) {
    for _ in 0..rng.random_range(1..=3) {
        let i = rng.random_range(0..tokens.len());
        tokens[i].push_str(DECORATIONS.choose(rng).expect("non-empty"));
    }
}

#[derive(Debug, Clone, Copy)]
enum Edit {
    Hashtag,
    Churn,
    Swap,
}

fn copy_pasta(rng: &mut ChaCha8Rng, rows: &[usize], budget: usize) -> String {
    let mut tokens: Vec<String> = rows.iter().map(|&r| WORDS[r].english[0].to_string()).collect();
    let mut spent = 0;
    let mut edits = [Edit::Hashtag, Edit::Churn, Edit::Swap];
    edits.shuffle(rng);
    let n_edits = rng.random_range(1..=3);
    for edit in &edits[..n_edits] {
        match edit {
            Edit::Hashtag => {
                let tag = HASHTAGS.choose(rng).expect("non-empty");
                let cost = letters(tag);
                if spent + cost <= budget {
                    tokens.push(tag.to_string());
                    spent += cost;
                }
            }
            Edit::Churn => churn(rng, &mut tokens),
            Edit::Swap => {
                let i = rng.random_range(0..rows.len());
                let entry = &WORDS[rows[i]];
                let replacement = entry.english[rng.random_range(1..entry.english.len())];
                let cost = letters(&tokens[i]).max(letters(replacement));
                if spent + cost <= budget {
                    tokens[i] = replacement.to_string();
                    spent += cost;
                }
            }
        }
    }
    if spent == 0 {
        churn(rng, &mut tokens);
    }
    render(&tokens)
}

fn rewording(rng: &mut ChaCha8Rng, rows: &[usize]) -> String {
    let mut tokens: Vec<String> = rows
        .iter()
        .map(|&r| {
            let forms = WORDS[r].english;
            forms[rng.random_range(1..forms.len())].to_string()
        })
        .collect();
    tokens.shuffle(rng);
    render(&tokens)
}

fn translation(rng: &mut ChaCha8Rng, rows: &[usize], language: usize, decorate: bool) -> String {
    let mut tokens: Vec<String> = rows.iter().map(|&r| WORDS[r].foreign[language].to_string()).collect();
    if decorate {
        let i = rng.random_range(0..tokens.len() - 1);
        tokens.swap(i, i + 1);
        churn(rng, &mut tokens);
    }
    render(&tokens)
}

struct Builder {
    messages: Vec<Message>,
    vectors: Vec<(String, Vec<f64>)>,
    epoch: DateTime<Utc>,
}

impl Builder {
    fn add(&mut self, id: String, account: String, text: String, lang: &str, vector: Vec<f64>) -> Message {
        let at = self.epoch + Duration::seconds(self.messages.len() as i64);
        let m = normalize(Message::new(id.clone(), account, at, text).with_language(LanguageTag::new(lang)));
        self.messages.push(m.clone());
        self.vectors.push((id, vector));
        m
    }
}

fn labeled(id: String, a: &Message, b: &Message, truth: Label, ea: &[f64], eb: &[f64]) -> LabeledPair {
    LabeledPair {
        id,
        a: a.clone(),
        b: b.clone(),
        truth,
        embedding_a: Some(EmbeddingVector::new(ea.to_vec()).expect("unit vector")),
        embedding_b: Some(EmbeddingVector::new(eb.to_vec()).expect("unit vector")),
    }
}

/// Builds the scripted fixture. Identical configs give identical fixtures.
pub fn generate(config: &SynthConfig) -> SynthFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut b = Builder {
        messages: Vec::new(),
        vectors: Vec::new(),
        epoch: DateTime::<Utc>::from_timestamp(1_609_459_200, 0).expect("valid timestamp"),
    };
    let mut pairs = Vec::new();
    let groups = config.groups.max(1);
    let per_group = config.accounts_per_group.max(1);

    for s in 0..config.seeds {
        let rows = sentence(&mut rng, config.min_seed_letters);
        let group = s % groups;
        let account = |rng: &mut ChaCha8Rng| format!("g{group}-u{:02}", rng.random_range(0..per_group));
        let vector = random_unit(&mut rng, config.dim);
        let seed_text = render(
            &rows
                .iter()
                .map(|&r| WORDS[r].english[0].to_string())
                .collect::<Vec<_>>(),
        );
        let budget = (config.edit_budget * letters(&seed_text) as f64).floor() as usize;
        let acc = account(&mut rng);
        let seed = b.add(format!("s{s:03}"), acc, seed_text, "en", vector.clone());

        for k in 0..config.variants {
            let text = copy_pasta(&mut rng, &rows, budget);
            let acc = account(&mut rng);
            let m = b.add(format!("s{s:03}-cp{k:02}"), acc, text, "en", vector.clone());
            pairs.push(labeled(
                format!("s{s:03}-cp{k:02}"),
                &seed,
                &m,
                Label::CopyPasta,
                &vector,
                &vector,
            ));
        }
        for k in 0..config.variants {
            let text = rewording(&mut rng, &rows);
            let acc = account(&mut rng);
            let m = b.add(format!("s{s:03}-rw{k:02}"), acc, text, "en", vector.clone());
            pairs.push(labeled(
                format!("s{s:03}-rw{k:02}"),
                &seed,
                &m,
                Label::Rewording,
                &vector,
                &vector,
            ));
        }
        for k in 0..config.variants {
            let language = k % LANGUAGES.len();
            let text = translation(&mut rng, &rows, language, k >= LANGUAGES.len());
            let acc = account(&mut rng);
            let m = b.add(
                format!("s{s:03}-tr{k:02}"),
                acc,
                text,
                LANGUAGES[language],
                vector.clone(),
            );
            pairs.push(labeled(
                format!("s{s:03}-tr{k:02}"),
                &seed,
                &m,
                Label::Translation,
                &vector,
                &vector,
            ));
        }
    }

    for c in 0..config.controls {
        let (u, v) = orthogonal_pair(&mut rng, config.dim);
        let texts: Vec<String> = (0..2)
            .map(|_| {
                let rows = sentence(&mut rng, config.min_seed_letters);
                render(
                    &rows
                        .iter()
                        .map(|&r| WORDS[r].english[0].to_string())
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let acc_a = format!("c-u{:03}", rng.random_range(0..per_group * groups));
        let acc_b = format!("c-u{:03}", rng.random_range(0..per_group * groups));
        let a = b.add(format!("c{c:04}-a"), acc_a, texts[0].clone(), "en", u.clone());
        let m = b.add(format!("c{c:04}-b"), acc_b, texts[1].clone(), "en", v.clone());
        pairs.push(labeled(format!("c{c:04}"), &a, &m, Label::NoMatch, &u, &v));
    }

    SynthFixture {
        corpus: Corpus::from_messages(b.messages).expect("generated ids are unique"),
        embeddings: EmbeddingStore::from_values("synthetic", b.vectors).expect("generated vectors are valid"),
        pairs,
    }
}

/// Copy-pasta pairs with edit fractions drawn from `copy_pasta` and rewording
/// pairs whose grapheme distance lands in `rewording`, both uniform. Texts are
/// letters only, so grapheme and raw text coincide.
pub fn threshold_fixture(
    per_class: usize,
    copy_pasta: (f64, f64),
    rewording: (f64, f64),
    rng_seed: u64,
) -> Vec<LabeledPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = Vec::with_capacity(2 * per_class);
    for i in 0..2 * per_class {
        let rows = sentence(&mut rng, 80);
        let base: Vec<char> = rows
            .iter()
            .flat_map(|&r| grapheme_text(WORDS[r].english[0]).chars().collect::<Vec<_>>())
            .collect();
        let len = base.len();
        let is_copy = i < per_class;
        let (lo, hi) = if is_copy { copy_pasta } else { rewording };
        let fraction = rng.random_range(lo..=hi);
        let target = (fraction * len as f64).round() as usize;

        let mut positions: Vec<usize> = (0..len).collect();
        positions.shuffle(&mut rng);
        let mut edited = base.clone();
        let substitute = |edited: &mut Vec<char>, p: usize, rng: &mut ChaCha8Rng| {
            let old = edited[p];
            edited[p] = loop {
                let c = rng.random_range('a'..='z');
                if c != old {
                    break c;
                }
            };
        };
        let mut used = 0;
        if is_copy {
            for &p in &positions[..target] {
                substitute(&mut edited, p, &mut rng);
            }
        } else {
            // Keep editing until the realized distance reaches the drawn one.
            while used < len && levenshtein(&base, &edited) < target {
                substitute(&mut edited, positions[used], &mut rng);
                used += 1;
            }
        }
        let (truth, tag) = if is_copy {
            (Label::CopyPasta, "cp")
        } else {
            (Label::Rewording, "rw")
        };
        let a: String = base.iter().collect();
        let b: String = edited.iter().collect();
        out.push(LabeledPair::new(&format!("t{tag}{i:04}"), &a, "en", &b, "en", truth));
    }
    out
}
