//! Passphrases recovered from word coordinates in a shared document.
//!
//! Words are maximal runs of non-whitespace characters. Punctuation stays
//! attached and case is kept, and a selected phrase is re-joined with
//! single spaces. Both parties must apply exactly this rule: any other
//! tokenization yields a different passphrase and therefore a different
//! digest.

use crate::error::{Error, Result};
use crate::pad::Passphrase;

/// Page separator used by text extractors such as `pdftotext`.
pub const FORM_FEED: char = '\u{0c}';

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentText {
    text: String,
    /// Byte offsets at which pages 2, 3, … begin.
    page_breaks: Vec<usize>,
}

impl DocumentText {
    /// A document without page structure.
    pub fn new(text: impl Into<String>) -> Self {
        DocumentText {
            text: text.into(),
            page_breaks: Vec::new(),
        }
    }

    pub fn with_page_breaks(text: impl Into<String>, page_breaks: Vec<usize>) -> Result<Self> {
        let text = text.into();
        let mut prev = 0;
        for &b in &page_breaks {
            if b < prev || b > text.len() {
                return Err(Error::InvalidPageBreaks(format!(
                    "offset {b} is out of order or beyond {} bytes",
                    text.len()
                )));
            }
            if !text.is_char_boundary(b) {
                return Err(Error::InvalidPageBreaks(format!(
                    "offset {b} splits a character"
                )));
            }
            prev = b;
        }
        Ok(DocumentText { text, page_breaks })
    }

    /// Treats each form feed as the boundary between two pages.
    pub fn from_form_feeds(text: impl Into<String>) -> Self {
        let text = text.into();
        let page_breaks = text
            .match_indices(FORM_FEED)
            .map(|(i, _)| i + FORM_FEED.len_utf8())
            .collect();
        DocumentText { text, page_breaks }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn page_count(&self) -> usize {
        self.page_breaks.len() + 1
    }

    /// Text of 1-based `page`.
    pub fn page(&self, page: usize) -> Result<&str> {
        let pages = self.page_count();
        if page == 0 || page > pages {
            return Err(Error::PageOutOfRange { page, pages });
        }
        let start = if page == 1 {
            0
        } else {
            self.page_breaks[page - 2]
        };
        let end = self
            .page_breaks
            .get(page - 1)
            .copied()
            .unwrap_or(self.text.len());
        Ok(&self.text[start..end])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhraseSelector {
    /// 1-based page; `None` counts words across the whole document.
    pub page: Option<usize>,
    /// 1-based index of the first word.
    pub start_word: usize,
    pub word_count: usize,
}

pub fn tokenize(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// The selected words joined by single spaces.
pub fn select_words(doc: &DocumentText, sel: &PhraseSelector) -> Result<String> {
    let scope = match sel.page {
        Some(p) => doc.page(p)?,
        None => doc.text(),
    };
    let words = tokenize(scope);
    let start = sel.start_word;
    let end = start.saturating_add(sel.word_count).saturating_sub(1);
    if start == 0 || sel.word_count == 0 || end > words.len() {
        return Err(Error::WordRange {
            start,
            end,
            available: words.len(),
        });
    }
    Ok(words[start - 1..end].join(" "))
}

pub fn extract_phrase(doc: &DocumentText, sel: &PhraseSelector) -> Result<Passphrase> {
    select_words(doc, sel).map(Passphrase::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(page: Option<usize>, start_word: usize, word_count: usize) -> PhraseSelector {
        PhraseSelector {
            page,
            start_word,
            word_count,
        }
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("the quick  brown"), ["the", "quick", "brown"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("a\nb\tc"), ["a", "b", "c"]);
        assert_eq!(tokenize("  Yes, said he.\r\n"), ["Yes,", "said", "he."]);
    }

    #[test]
    fn extract_examples() {
        let doc = DocumentText::new("the quick brown fox jumps");
        let p = extract_phrase(&doc, &sel(None, 3, 2)).unwrap();
        assert_eq!(p.as_bytes(), b"brown fox");
        assert!(matches!(
            extract_phrase(&doc, &sel(None, 999, 1)),
            Err(Error::WordRange { available: 5, .. })
        ));
        assert!(extract_phrase(&doc, &sel(None, 4, 3)).is_err());
        assert!(extract_phrase(&doc, &sel(None, 0, 1)).is_err());
        assert!(extract_phrase(&doc, &sel(None, 1, 0)).is_err());
        assert_eq!(
            extract_phrase(&doc, &sel(None, 5, 1)).unwrap().as_bytes(),
            b"jumps"
        );
    }

    #[test]
    fn joins_with_single_spaces() {
        let doc = DocumentText::new("be\n\n firs\ta   husbandman");
        assert_eq!(
            select_words(&doc, &sel(None, 1, 4)).unwrap(),
            "be firs a husbandman"
        );
    }

    #[test]
    fn pages_from_form_feeds() {
        let doc = DocumentText::from_form_feeds("one two\u{0c}three four five\u{0c}six");
        assert_eq!(doc.page_count(), 3);
        assert_eq!(
            select_words(&doc, &sel(Some(2), 2, 2)).unwrap(),
            "four five"
        );
        assert_eq!(select_words(&doc, &sel(Some(3), 1, 1)).unwrap(), "six");
        assert_eq!(select_words(&doc, &sel(None, 3, 2)).unwrap(), "three four");
        assert!(matches!(
            select_words(&doc, &sel(Some(4), 1, 1)),
            Err(Error::PageOutOfRange { page: 4, pages: 3 })
        ));
        assert!(select_words(&doc, &sel(Some(0), 1, 1)).is_err());
        assert!(select_words(&doc, &sel(Some(3), 1, 2)).is_err());
    }

    #[test]
    fn explicit_page_breaks() {
        let doc = DocumentText::with_page_breaks("alpha beta gamma delta", vec![11]).unwrap();
        assert_eq!(doc.page(2).unwrap(), "gamma delta");
        assert_eq!(select_words(&doc, &sel(Some(1), 2, 1)).unwrap(), "beta");
        assert!(DocumentText::with_page_breaks("abc", vec![2, 1]).is_err());
        assert!(DocumentText::with_page_breaks("abc", vec![4]).is_err());
        assert!(DocumentText::with_page_breaks("é", vec![1]).is_err());
    }

    #[test]
    fn single_word_selection_enumerates_tokens() {
        let text = "It is, said he, a  difficult\tquestion.\nYes.";
        let doc = DocumentText::new(text);
        let words: Vec<String> = (1..=tokenize(text).len())
            .map(|i| select_words(&doc, &sel(None, i, 1)).unwrap())
            .collect();
        assert_eq!(words, tokenize(text));
    }
}
