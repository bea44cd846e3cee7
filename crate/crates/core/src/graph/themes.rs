use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::Corpus;

/// Theme assigned to messages that match no keyword.
pub const UNLABELED: &str = "unlabeled";

#[derive(Debug, thiserror::Error)]
pub enum ThemeError {
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("theme map is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("theme {0:?} has no keywords")]
    EmptyTheme(String),
    #[error("theme name {0:?} is reserved")]
    Reserved(String),
    #[error("keyword {keyword:?} appears in both {first:?} and {second:?}")]
    Overlap {
        keyword: String,
        first: String,
        second: String,
    },
    #[error("theme {0:?} is listed twice")]
    DuplicateTheme(String),
}

/// Ordered theme → keyword lists. Matching is case-insensitive and the first
/// theme in file order wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThemeMap {
    themes: Vec<(String, Vec<String>)>,
}

impl ThemeMap {
    pub fn new(themes: Vec<(String, Vec<String>)>) -> Result<Self, ThemeError> {
        let mut owner: HashMap<String, &str> = HashMap::new();
        for (i, (name, keywords)) in themes.iter().enumerate() {
            if name == UNLABELED {
                return Err(ThemeError::Reserved(name.clone()));
            }
            if themes[..i].iter().any(|(n, _)| n == name) {
                return Err(ThemeError::DuplicateTheme(name.clone()));
            }
            if keywords.iter().all(|k| k.trim().is_empty()) {
                return Err(ThemeError::EmptyTheme(name.clone()));
            }
            for k in keywords {
                if let Some(first) = owner.insert(k.to_lowercase(), name) {
                    if first != name {
                        return Err(ThemeError::Overlap {
                            keyword: k.clone(),
                            first: first.to_string(),
                            second: name.clone(),
                        });
                    }
                }
            }
        }
        Ok(ThemeMap { themes })
    }

    /// Politics, entertainment and alcohol keyword lists from the Venezuela 2021 analysis.
    pub fn builtin() -> Self {
        let list = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        ThemeMap::new(vec![
            (
                "politics".into(),
                list(&[
                    "#AlexSaab",
                    "Alex Saab",
                    "#YoConDavid",
                    "#KuriGanador",
                    "#KuriGobernador",
                    "#RenunciaClaraLuz",
                    "#GobernadoraNoSeras",
                    "#VamosBorrego",
                    "#BrozoConSamuel",
                    "#SamuelConBrozo",
                    "#VoyConChristian",
                ]),
            ),
            ("entertainment".into(), list(&["#TWDxSTARChannel", "#LordVideoCentro"])),
            ("alcohol".into(), list(&["#SoyPuraPiraña", "#INDIOsustentable"])),
        ])
        .expect("built-in theme map is valid")
    }

    pub fn load(path: &Path) -> Result<Self, ThemeError> {
        let text = std::fs::read_to_string(path).map_err(|source| ThemeError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn themes(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.themes.iter().map(|(n, k)| (n.as_str(), k.as_slice()))
    }

    /// First theme with a keyword occurring in `text`, ignoring case.
    pub fn classify(&self, text: &str) -> &str {
        let text = text.to_lowercase();
        self.themes
            .iter()
            .find(|(_, keywords)| {
                keywords
                    .iter()
                    .any(|k| !k.is_empty() && text.contains(&k.to_lowercase()))
            })
            .map_or(UNLABELED, |(name, _)| name.as_str())
    }
}

impl Serialize for ThemeMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.themes.len()))?;
        for (name, keywords) in &self.themes {
            map.serialize_entry(name, keywords)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ThemeMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Ordered;

        impl<'de> Visitor<'de> for Ordered {
            type Value = Vec<(String, Vec<String>)>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of theme name to keyword list")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = access.next_entry()? {
                    out.push(entry);
                }
                Ok(out)
            }
        }

        let themes = deserializer.deserialize_map(Ordered)?;
        ThemeMap::new(themes).map_err(serde::de::Error::custom)
    }
}

/// Theme per message id, with the share of messages that got a real theme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThemeLabels {
    pub by_message: BTreeMap<String, String>,
    pub labeled_share: f64,
}

impl ThemeLabels {
    pub fn theme_of(&self, id: &str) -> Option<&str> {
        self.by_message.get(id).map(String::as_str)
    }

    /// Message count per theme, `unlabeled` included.
    pub fn histogram(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        for theme in self.by_message.values() {
            *out.entry(theme.as_str()).or_default() += 1;
        }
        out
    }
}

pub fn label_themes(corpus: &Corpus, themes: &ThemeMap) -> ThemeLabels {
    let by_message: BTreeMap<String, String> = corpus
        .messages()
        .iter()
        .map(|m| (m.id.clone(), themes.classify(&m.semantic_text).to_string()))
        .collect();
    let labeled = by_message.values().filter(|t| *t != UNLABELED).count();
    let labeled_share = if by_message.is_empty() {
        0.0
    } else {
        labeled as f64 / by_message.len() as f64
    };
    ThemeLabels {
        by_message,
        labeled_share,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{normalize, Message};
    use chrono::Utc;

    fn corpus_of(texts: &[String]) -> Corpus {
        let messages = texts
            .iter()
            .enumerate()
            .map(|(i, t)| normalize(Message::new(format!("m{i:03}"), "u", Utc::now(), t.clone())))
            .collect();
        Corpus::from_messages(messages).unwrap()
    }

    #[test]
    fn default_lists_match() {
        let themes = ThemeMap::builtin();
        assert_eq!(themes.classify("Libertad para #AlexSaab ya"), "politics");
        assert_eq!(themes.classify("hoy toca #soypurapiraña"), "alcohol");
        assert_eq!(themes.classify("nothing to see here"), UNLABELED);
    }

    #[test]
    fn first_theme_wins_in_file_order() {
        let themes: ThemeMap = serde_json::from_str(r#"{"zeta": ["foo"], "alpha": ["bar"]}"#).unwrap();
        assert_eq!(themes.classify("bar and foo"), "zeta");
        assert_eq!(
            serde_json::to_string(&themes).unwrap(),
            r#"{"zeta":["foo"],"alpha":["bar"]}"#
        );
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(serde_json::from_str::<ThemeMap>(r#"{"a": []}"#).is_err());
        assert!(serde_json::from_str::<ThemeMap>(r#"{"a": ["x"], "b": ["X"]}"#).is_err());
        assert!(serde_json::from_str::<ThemeMap>(r#"{"unlabeled": ["x"]}"#).is_err());
        assert!(serde_json::from_str::<ThemeMap>(r#"{"a": ["x"], "a": ["y"]}"#).is_err());
    }

    #[test]
    fn labeled_share() {
        let texts: Vec<String> = (0..100)
            .map(|i| {
                if i < 93 {
                    format!("mensaje {i} sobre #YoConDavid")
                } else {
                    format!("mensaje {i} sin tema")
                }
            })
            .collect();
        let labels = label_themes(&corpus_of(&texts), &ThemeMap::builtin());
        assert!((labels.labeled_share - 0.93).abs() < 1e-12);
        assert_eq!(labels.histogram()["politics"], 93);
        assert_eq!(labels.histogram()[UNLABELED], 7);
    }

    #[test]
    fn links_do_not_trigger_keywords() {
        let labels = label_themes(
            &corpus_of(&["see https://x.co/AlexSaab now".into()]),
            &ThemeMap::builtin(),
        );
        assert_eq!(labels.theme_of("m000"), Some(UNLABELED));
    }
}
