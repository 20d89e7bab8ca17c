//! Corpus preparation: text normalization, lexicon-based G2P, and the
//! alignment of sentences into paired phoneme/grapheme training records.
//!
//! A sentence becomes a sequence of words, each carrying one grapheme id
//! and the phoneme ids of its pronunciation. Flattened, that is an
//! [`ExampleRecord`]: the phoneme id sequence plus word spans that
//! partition it exactly.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::vocab::{GraphemeVocab, PhonemeVocab};

/// Pronunciation dictionary: case-folded word → phoneme symbol sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexiconError {
    EmptyWord,
    EmptyPronunciation(String),
    EmptySymbol(String),
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexiconError::EmptyWord => write!(f, "lexicon entry with empty word"),
            LexiconError::EmptyPronunciation(w) => {
                write!(f, "empty pronunciation for word {w:?}")
            }
            LexiconError::EmptySymbol(w) => {
                write!(f, "empty phoneme symbol in pronunciation of {w:?}")
            }
        }
    }
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Insert an entry; the word is case-folded.
    pub fn insert(&mut self, word: &str, pron: Vec<String>) -> Result<(), LexiconError> {
        if word.is_empty() {
            return Err(LexiconError::EmptyWord);
        }
        if pron.is_empty() {
            return Err(LexiconError::EmptyPronunciation(word.to_string()));
        }
        if pron.iter().any(|s| s.is_empty()) {
            return Err(LexiconError::EmptySymbol(word.to_string()));
        }
        self.entries.insert(word.to_lowercase(), pron);
        Ok(())
    }

    pub fn get(&self, word: &str) -> Option<&[String]> {
        self.entries.get(word).map(|p| p.as_slice())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(w, p)| (w.as_str(), p.as_slice()))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|w| w.as_str())
    }
}

/// Exact lexicon lookup; `None` signals an out-of-vocabulary word.
pub fn g2p<'a>(word: &str, lexicon: &'a Lexicon) -> Option<&'a [String]> {
    lexicon.get(word)
}

const ONES: [&str; 20] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen",
];
const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

fn push_below_hundred(n: u32, out: &mut Vec<String>) {
    debug_assert!(n > 0 && n < 100);
    if n < 20 {
        out.push(ONES[n as usize].to_string());
    } else {
        out.push(TENS[(n / 10) as usize].to_string());
        if n % 10 != 0 {
            out.push(ONES[(n % 10) as usize].to_string());
        }
    }
}

/// Cardinal expansion of 0..=9999, one number word per token, no "and".
pub fn expand_cardinal(n: u32, out: &mut Vec<String>) {
    debug_assert!(n <= 9999);
    if n == 0 {
        out.push("zero".to_string());
        return;
    }
    let (thousands, rest) = (n / 1000, n % 1000);
    if thousands > 0 {
        out.push(ONES[thousands as usize].to_string());
        out.push("thousand".to_string());
    }
    let (hundreds, rest) = (rest / 100, rest % 100);
    if hundreds > 0 {
        out.push(ONES[hundreds as usize].to_string());
        out.push("hundred".to_string());
    }
    if rest > 0 {
        push_below_hundred(rest, out);
    }
}

/// Minimal rule-based normalization: case-folded word tokens, digit runs
/// expanded to number words, everything else treated as a separator.
///
/// Tokens are maximal runs of letters or of digits, so "2cats" splits into
/// the number two followed by "cats". Digit runs longer than four are read
/// out digit by digit.
pub fn normalize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut word = String::new();
    let mut digits = String::new();

    fn flush_word(word: &mut String, out: &mut Vec<String>) {
        if !word.is_empty() {
            out.push(word.to_lowercase());
            word.clear();
        }
    }
    fn flush_digits(digits: &mut String, out: &mut Vec<String>) {
        if digits.is_empty() {
            return;
        }
        if digits.len() <= 4 {
            // cannot fail: at most 4 ascii digits
            let n: u32 = digits.parse().unwrap();
            expand_cardinal(n, out);
        } else {
            for d in digits.chars() {
                expand_cardinal(d.to_digit(10).unwrap(), out);
            }
        }
        digits.clear();
    }

    for c in text.chars() {
        if c.is_alphabetic() {
            flush_digits(&mut digits, &mut out);
            word.push(c);
        } else if c.is_ascii_digit() {
            flush_word(&mut word, &mut out);
            digits.push(c);
        } else {
            flush_word(&mut word, &mut out);
            flush_digits(&mut digits, &mut out);
        }
    }
    flush_word(&mut word, &mut out);
    flush_digits(&mut digits, &mut out);
    out
}

/// What to do with a sentence containing a word the lexicon cannot
/// pronounce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OovPolicy {
    /// Discard the whole sentence (default: every kept token then has a
    /// real grapheme target).
    SkipSentence,
    /// Drop the offending word, keep the rest of the sentence.
    DropWord,
}

/// One aligned word: its grapheme id and its phoneme ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedWord {
    pub grapheme_id: u32,
    pub phoneme_ids: Vec<u32>,
}

/// A sentence as a sequence of aligned words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedSentence {
    pub words: Vec<AlignedWord>,
}

impl AlignedSentence {
    pub fn phoneme_len(&self) -> usize {
        self.words.iter().map(|w| w.phoneme_ids.len()).sum()
    }

    pub fn to_record(&self) -> ExampleRecord {
        let mut phonemes = Vec::with_capacity(self.phoneme_len());
        let mut spans = Vec::with_capacity(self.words.len());
        for w in &self.words {
            spans.push(Span {
                start: phonemes.len(),
                len: w.phoneme_ids.len(),
                grapheme_id: w.grapheme_id,
            });
            phonemes.extend_from_slice(&w.phoneme_ids);
        }
        ExampleRecord { phonemes, spans }
    }
}

/// Word span inside a flattened record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
    pub grapheme_id: u32,
}

/// Flattened training example: phoneme ids plus word spans that partition
/// `[0, n)` exactly, in order, with no overlap and no gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleRecord {
    pub phonemes: Vec<u32>,
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordError {
    EmptySpan { index: usize },
    SpanMismatch { index: usize, expected_start: usize, found_start: usize },
    LengthMismatch { spans_total: usize, phonemes: usize },
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordError::EmptySpan { index } => write!(f, "span {index} is empty"),
            RecordError::SpanMismatch {
                index,
                expected_start,
                found_start,
            } => write!(
                f,
                "span {index} starts at {found_start}, expected {expected_start}"
            ),
            RecordError::LengthMismatch {
                spans_total,
                phonemes,
            } => write!(
                f,
                "spans cover {spans_total} positions but record has {phonemes} phonemes"
            ),
        }
    }
}

impl ExampleRecord {
    /// Valid length N.
    pub fn n(&self) -> usize {
        self.phonemes.len()
    }

    pub fn word_count(&self) -> usize {
        self.spans.len()
    }

    /// Check the span-partition invariant.
    pub fn validate(&self) -> Result<(), RecordError> {
        let mut cursor = 0usize;
        for (i, s) in self.spans.iter().enumerate() {
            if s.len == 0 {
                return Err(RecordError::EmptySpan { index: i });
            }
            if s.start != cursor {
                return Err(RecordError::SpanMismatch {
                    index: i,
                    expected_start: cursor,
                    found_start: s.start,
                });
            }
            cursor += s.len;
        }
        if cursor != self.phonemes.len() {
            return Err(RecordError::LengthMismatch {
                spans_total: cursor,
                phonemes: self.phonemes.len(),
            });
        }
        Ok(())
    }

    /// Per-position grapheme targets: each span's grapheme id repeated over
    /// its length.
    pub fn grapheme_targets(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n());
        for s in &self.spans {
            for _ in 0..s.len {
                out.push(s.grapheme_id);
            }
        }
        out
    }
}

/// Align normalized words against the lexicon and both vocabularies.
///
/// Returns `None` when the sentence should be skipped: an OOV word under
/// `SkipSentence`, or no alignable word at all. Sentences longer than
/// `max_len` phonemes are truncated at a word boundary.
pub fn align_sentence(
    words: &[String],
    lexicon: &Lexicon,
    pvocab: &PhonemeVocab,
    gvocab: &GraphemeVocab,
    policy: OovPolicy,
    max_len: usize,
) -> Option<AlignedSentence> {
    let mut aligned = Vec::new();
    let mut total = 0usize;
    for word in words {
        let pron = match g2p(word, lexicon) {
            Some(p) if p.iter().all(|s| pvocab.contains(s)) => p,
            // a pronunciation using symbols outside the inventory is as
            // unusable as a missing one
            _ => match policy {
                OovPolicy::SkipSentence => return None,
                OovPolicy::DropWord => continue,
            },
        };
        if total + pron.len() > max_len {
            break;
        }
        total += pron.len();
        aligned.push(AlignedWord {
            grapheme_id: gvocab.encode(word),
            phoneme_ids: pron.iter().map(|s| pvocab.encode(s)).collect(),
        });
    }
    if aligned.is_empty() {
        None
    } else {
        Some(AlignedSentence { words: aligned })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn toy_lexicon() -> Lexicon {
        let mut lex = Lexicon::new();
        for (w, p) in [
            ("the", "dh ah"),
            ("cat", "k ae t"),
            ("cats", "k ae t s"),
            ("at", "ae t"),
            ("two", "t uw"),
            ("sat", "s ae t"),
        ] {
            lex.insert(w, p.split(' ').map(|s| s.to_string()).collect())
                .unwrap();
        }
        lex
    }

    #[test]
    fn normalize_spec_cases() {
        assert_eq!(
            normalize("The cat, 2 cats."),
            vec!["the", "cat", "two", "cats"]
        );
        assert_eq!(normalize(""), Vec::<String>::new());
        assert_eq!(
            normalize("1999"),
            vec!["one", "thousand", "nine", "hundred", "ninety", "nine"]
        );
    }

    #[test]
    fn normalize_splits_mixed_runs_and_drops_symbols() {
        assert_eq!(normalize("2cats"), vec!["two", "cats"]);
        assert_eq!(normalize("a-b"), vec!["a", "b"]);
        assert_eq!(normalize("§±€"), Vec::<String>::new());
        assert_eq!(normalize("12345"), vec!["one", "two", "three", "four", "five"]);
    }

    // Independent expansion used as the oracle: builds the wording digit
    // group by digit group from scratch rather than via expand_cardinal's
    // table walk.
    fn oracle_cardinal(n: u32) -> Vec<String> {
        let ones = [
            "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
        ];
        let teens = [
            "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen",
            "eighteen", "nineteen",
        ];
        let tens = [
            "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
        ];
        if n == 0 {
            return vec!["zero".to_string()];
        }
        let mut words: Vec<String> = Vec::new();
        let d3 = n / 1000;
        let d2 = (n / 100) % 10;
        let d1 = (n / 10) % 10;
        let d0 = n % 10;
        if d3 > 0 {
            words.push(ones[d3 as usize].into());
            words.push("thousand".into());
        }
        if d2 > 0 {
            words.push(ones[d2 as usize].into());
            words.push("hundred".into());
        }
        match (d1, d0) {
            (0, 0) => {}
            (0, u) => words.push(ones[u as usize].into()),
            (1, u) => words.push(teens[u as usize].into()),
            (t, 0) => words.push(tens[t as usize].into()),
            (t, u) => {
                words.push(tens[t as usize].into());
                words.push(ones[u as usize].into());
            }
        }
        words
    }

    #[test]
    fn cardinal_expansion_matches_oracle_over_full_range() {
        for n in 0..=9999u32 {
            let mut got = Vec::new();
            expand_cardinal(n, &mut got);
            assert_eq!(got, oracle_cardinal(n), "n={n}");
        }
    }

    #[test]
    fn g2p_lookup_and_oov() {
        let lex = toy_lexicon();
        assert_eq!(
            g2p("cat", &lex).unwrap(),
            &["k".to_string(), "ae".to_string(), "t".to_string()]
        );
        assert!(g2p("zzxq", &lex).is_none());
    }

    fn vocabs(lex: &Lexicon) -> (PhonemeVocab, GraphemeVocab) {
        let p = PhonemeVocab::build(lex).unwrap();
        let g = GraphemeVocab::build(lex.words(), 1).unwrap();
        (p, g)
    }

    #[test]
    fn align_toy_sentence() {
        let lex = toy_lexicon();
        let (p, g) = vocabs(&lex);
        let words = vec!["the".to_string(), "cat".to_string()];
        let s = align_sentence(&words, &lex, &p, &g, OovPolicy::SkipSentence, 512).unwrap();
        assert_eq!(s.words.len(), 2);
        assert_eq!(s.words[0].grapheme_id, g.encode("the"));
        assert_eq!(
            s.words[0].phoneme_ids,
            vec![p.encode("dh"), p.encode("ah")]
        );
        assert_eq!(
            s.words[1].phoneme_ids,
            vec![p.encode("k"), p.encode("ae"), p.encode("t")]
        );
        let rec = s.to_record();
        rec.validate().unwrap();
        assert_eq!(rec.n(), 5);
        assert_eq!(
            rec.grapheme_targets(),
            vec![
                g.encode("the"),
                g.encode("the"),
                g.encode("cat"),
                g.encode("cat"),
                g.encode("cat")
            ]
        );
    }

    #[test]
    fn oov_policies() {
        let lex = toy_lexicon();
        let (p, g) = vocabs(&lex);
        let words = vec!["zzxq".to_string()];
        assert!(align_sentence(&words, &lex, &p, &g, OovPolicy::SkipSentence, 512).is_none());
        assert!(align_sentence(&words, &lex, &p, &g, OovPolicy::DropWord, 512).is_none());

        let words = vec!["zzxq".to_string(), "cat".to_string()];
        assert!(align_sentence(&words, &lex, &p, &g, OovPolicy::SkipSentence, 512).is_none());
        let s = align_sentence(&words, &lex, &p, &g, OovPolicy::DropWord, 512).unwrap();
        assert_eq!(s.words.len(), 1);
    }

    #[test]
    fn truncation_stops_at_word_boundary() {
        let lex = toy_lexicon();
        let (p, g) = vocabs(&lex);
        // 200 copies of "cats" = 800 phonemes; max_len 512 keeps 128 words
        let words: Vec<String> = (0..200).map(|_| "cats".to_string()).collect();
        let s = align_sentence(&words, &lex, &p, &g, OovPolicy::SkipSentence, 512).unwrap();
        let rec = s.to_record();
        rec.validate().unwrap();
        assert!(rec.n() <= 512);
        assert_eq!(rec.n() % 4, 0, "truncation must respect word boundaries");
        assert_eq!(rec.n(), 512);

        // an uneven mix: "the" (2) + repeated "cats" (4); 600 phonemes total
        let mut words = vec!["the".to_string()];
        words.extend((0..150).map(|_| "cats".to_string()));
        let s = align_sentence(&words, &lex, &p, &g, OovPolicy::SkipSentence, 512).unwrap();
        let rec = s.to_record();
        rec.validate().unwrap();
        assert!(rec.n() <= 512);
        assert_eq!(rec.n(), 510); // 2 + 127 * 4
    }

    #[test]
    fn record_validation_catches_bad_spans() {
        let rec = ExampleRecord {
            phonemes: vec![3, 4, 5],
            spans: vec![
                Span { start: 0, len: 2, grapheme_id: 2 },
                Span { start: 2, len: 2, grapheme_id: 3 },
            ],
        };
        let err = rec.validate().unwrap_err();
        assert!(format!("{err}").contains("4 positions"));

        let rec = ExampleRecord {
            phonemes: vec![3, 4],
            spans: vec![
                Span { start: 0, len: 1, grapheme_id: 2 },
                Span { start: 0, len: 1, grapheme_id: 3 },
            ],
        };
        assert!(matches!(
            rec.validate(),
            Err(RecordError::SpanMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn lexicon_rejects_degenerate_entries() {
        let mut lex = Lexicon::new();
        assert!(lex.insert("", vec!["a".into()]).is_err());
        assert!(lex.insert("x", vec![]).is_err());
        assert!(lex.insert("x", vec!["".into()]).is_err());
    }
}
