use std::sync::LazyLock;

use regex::Regex;
use unicode_general_category::{get_general_category, GeneralCategory};

use super::Message;

static URL: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"(?i)\b(?:https?://|www\.)\S*|\b(?:t\.co|bit\.ly|goo\.gl|ow\.ly|buff\.ly|tinyurl\.com|dlvr\.it|is\.gd|fb\.me|youtu\.be|lnkd\.in)/\S*",
    )
    .expect("url pattern")
});

// `\B` keeps e-mail addresses like `x@bob.com` intact.
static MENTION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\B@\w+").expect("mention pattern"));

/// Removes links and `@mentions`, keeps hashtags, and collapses whitespace.
pub fn semantic_text(raw: &str) -> String {
    let mut text = collapse_whitespace(raw);
    // Removing one token can expose another (`@a@b`), so run to a fixed point.
    loop {
        let stripped = MENTION.replace_all(&URL.replace_all(&text, " "), " ").into_owned();
        let next = collapse_whitespace(&stripped);
        if next == text {
            return text;
        }
        text = next;
    }
}

/// Keeps letters and decimal digits only, lowercased.
pub fn grapheme_text(text: &str) -> String {
    text.chars()
        .flat_map(char::to_lowercase)
        .filter(|&c| is_letter_or_digit(c) && !c.is_uppercase())
        .collect()
}

fn is_letter_or_digit(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::UppercaseLetter
            | GeneralCategory::LowercaseLetter
            | GeneralCategory::TitlecaseLetter
            | GeneralCategory::ModifierLetter
            | GeneralCategory::OtherLetter
            | GeneralCategory::DecimalNumber
    )
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Recomputes both derived texts from `raw_text`.
pub fn normalize(mut msg: Message) -> Message {
    msg.semantic_text = semantic_text(&msg.raw_text);
    msg.grapheme_text = grapheme_text(&msg.semantic_text);
    msg
}
