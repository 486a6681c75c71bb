use alloc::string::String;

use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

/// Normalize a raw tweet.
///
/// Steps, in order: drop URLs (`scheme://...`, `www.`, bare `t.co/` links),
/// drop every punctuation character except `!`, turn line breaks into
/// spaces, lowercase. Whitespace runs collapse to one space and the result
/// is trimmed.
pub fn clean_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for run in WhitespaceRuns::new(raw) {
        match run {
            Run::Space => pending_space = !out.is_empty(),
            Run::Word(word) => {
                let kept = &word[..url_start(word).unwrap_or(word.len())];
                for c in kept.chars() {
                    if is_stripped_punctuation(c) {
                        continue;
                    }
                    if pending_space {
                        out.push(' ');
                        pending_space = false;
                    }
                    out.extend(c.to_lowercase());
                }
            }
        }
    }
    out
}

/// Punctuation removed by [`clean_text`]: ASCII punctuation and every
/// Unicode `P*` category, minus the exclamation mark.
pub fn is_stripped_punctuation(c: char) -> bool {
    c != '!'
        && (c.is_ascii_punctuation()
            || c.general_category_group() == GeneralCategoryGroup::Punctuation)
}

enum Run<'a> {
    Space,
    Word(&'a str),
}

struct WhitespaceRuns<'a> {
    rest: &'a str,
}

impl<'a> WhitespaceRuns<'a> {
    fn new(s: &'a str) -> Self {
        WhitespaceRuns { rest: s }
    }
}

impl<'a> Iterator for WhitespaceRuns<'a> {
    type Item = Run<'a>;

    fn next(&mut self) -> Option<Run<'a>> {
        let first = self.rest.chars().next()?;
        let is_space = first.is_whitespace();
        let end = self
            .rest
            .char_indices()
            .find(|&(_, c)| c.is_whitespace() != is_space)
            .map_or(self.rest.len(), |(i, _)| i);
        let (head, tail) = self.rest.split_at(end);
        self.rest = tail;
        Some(if is_space { Run::Space } else { Run::Word(head) })
    }
}

/// Byte offset where a URL begins inside a whitespace-free run.
fn url_start(word: &str) -> Option<usize> {
    let bytes = word.as_bytes();
    let mut best: Option<usize> = None;
    let mut consider = |pos: usize| {
        if best.is_none_or(|b| pos < b) {
            best = Some(pos);
        }
    };

    let mut from = 0;
    while let Some(found) = word[from..].find("://") {
        let sep = from + found;
        let mut start = sep;
        while start > 0 && is_scheme_byte(bytes[start - 1]) {
            start -= 1;
        }
        // the scheme must begin with a letter
        while start < sep && !bytes[start].is_ascii_alphabetic() {
            start += 1;
        }
        if start < sep {
            consider(start);
        }
        from = sep + 3;
    }

    for prefix in ["www.", "t.co/", "pic.twitter.com/"] {
        let mut from = 0;
        while let Some(found) = find_ascii_ci(&word[from..], prefix) {
            let pos = from + found;
            let at_boundary = word[..pos]
                .chars()
                .next_back()
                .is_none_or(|c| !c.is_alphanumeric());
            if at_boundary {
                consider(pos);
                break;
            }
            from = pos + prefix.len();
        }
    }
    best
}

fn is_scheme_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'+' | b'.' | b'-')
}

fn find_ascii_ci(haystack: &str, needle: &str) -> Option<usize> {
    let h = haystack.as_bytes();
    let n = needle.as_bytes();
    if n.len() > h.len() {
        return None;
    }
    (0..=h.len() - n.len()).find(|&i| h[i..i + n.len()].eq_ignore_ascii_case(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_short_link_and_lowercases() {
        assert_eq!(
            clean_text("Vaccine works! https://t.co/o7amgl8ybl"),
            "vaccine works!"
        );
    }

    #[test]
    fn keeps_only_exclamation_marks() {
        assert_eq!(clean_text("Great, News!"), "great news!");
        assert_eq!(clean_text("#Pfizer @NHS: \u{201c}safe\u{201d}\u{2026}?!"), "pfizer nhs safe!");
    }

    #[test]
    fn empty_stays_empty() {
        assert_eq!(clean_text(""), "");
        assert_eq!(clean_text("  \n\t "), "");
    }

    #[test]
    fn line_breaks_become_single_spaces() {
        assert_eq!(clean_text("first dose\r\n\n  done"), "first dose done");
    }

    #[test]
    fn url_glued_to_word_is_cut_at_scheme() {
        assert_eq!(clean_text("works!https://t.co/x more"), "works! more");
        assert_eq!(clean_text("see www.nhs.uk/covid now"), "see now");
        assert_eq!(clean_text("link t.co/abc"), "link");
        assert_eq!(clean_text("HTTP://EXAMPLE.COM/A"), "");
    }

    #[test]
    fn dotted_words_are_not_links() {
        assert_eq!(clean_text("u.s. vs t.com"), "us vs tcom");
    }

    #[test]
    fn emoji_and_non_latin_letters_survive() {
        assert_eq!(clean_text("Grateful 🙏 Ünïcödé"), "grateful 🙏 ünïcödé");
    }
}
