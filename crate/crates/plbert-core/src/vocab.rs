//! Phoneme and grapheme vocabularies.
//!
//! Phonemes are the only model input alphabet; graphemes exist purely as
//! prediction targets. Special-token ids are fixed so that serialized
//! corpora stay portable across vocabulary rebuilds with identical content.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::Lexicon;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VocabError {
    EmptyLexicon,
    ZeroCutoff,
    DuplicateToken(String),
    BadSpecial { index: usize, found: String },
}

impl fmt::Display for VocabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VocabError::EmptyLexicon => write!(f, "empty lexicon"),
            VocabError::ZeroCutoff => write!(f, "grapheme cutoff must be at least 1"),
            VocabError::DuplicateToken(t) => write!(f, "duplicate token {t:?}"),
            VocabError::BadSpecial { index, found } => {
                write!(f, "expected special token at id {index}, found {found:?}")
            }
        }
    }
}

/// Phoneme vocabulary. Input alphabet of the encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeVocab {
    tokens: Vec<String>,
    id_of: BTreeMap<String, u32>,
}

impl PhonemeVocab {
    pub const PAD: u32 = 0;
    pub const MSK: u32 = 1;
    pub const UNK: u32 = 2;
    pub const SPECIALS: [&'static str; 3] = ["<pad>", "<msk>", "<unk>"];

    /// Induce the phoneme inventory from a pronunciation lexicon: the three
    /// specials followed by every distinct symbol, sorted lexicographically.
    pub fn build(lexicon: &Lexicon) -> Result<Self, VocabError> {
        if lexicon.is_empty() {
            return Err(VocabError::EmptyLexicon);
        }
        let mut symbols: Vec<&str> = lexicon
            .entries()
            .flat_map(|(_, pron)| pron.iter().map(|s| s.as_str()))
            .collect();
        symbols.sort_unstable();
        symbols.dedup();
        let mut tokens: Vec<String> = Self::SPECIALS.iter().map(|s| s.to_string()).collect();
        tokens.extend(symbols.into_iter().map(|s| s.to_string()));
        Self::from_tokens(tokens)
    }

    /// Rebuild from an ordered token list (the serialized form).
    pub fn from_tokens(tokens: Vec<String>) -> Result<Self, VocabError> {
        for (i, want) in Self::SPECIALS.iter().enumerate() {
            match tokens.get(i) {
                Some(t) if t == want => {}
                other => {
                    return Err(VocabError::BadSpecial {
                        index: i,
                        found: other.cloned().unwrap_or_default(),
                    })
                }
            }
        }
        let id_of = index(&tokens)?;
        Ok(PhonemeVocab { tokens, id_of })
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Token id, or `UNK` for symbols outside the inventory.
    pub fn encode(&self, token: &str) -> u32 {
        self.id_of.get(token).copied().unwrap_or(Self::UNK)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.id_of.contains_key(token)
    }

    pub fn decode(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(|s| s.as_str())
    }

    pub fn is_special(id: u32) -> bool {
        id < Self::SPECIALS.len() as u32
    }

    /// First id eligible as a random-replacement draw.
    pub const FIRST_REGULAR: u32 = Self::SPECIALS.len() as u32;
}

/// Grapheme vocabulary: case-folded whole words, frequency-truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphemeVocab {
    tokens: Vec<String>,
    id_of: BTreeMap<String, u32>,
    cutoff: u64,
}

impl GraphemeVocab {
    pub const PAD: u32 = 0;
    pub const UNK: u32 = 1;
    pub const SPECIALS: [&'static str; 2] = ["<pad>", "<unk>"];

    /// Count case-folded words and keep those with frequency ≥ `cutoff`,
    /// ordered by descending frequency then lexicographically.
    pub fn build<I, S>(words: I, cutoff: u64) -> Result<Self, VocabError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        if cutoff == 0 {
            return Err(VocabError::ZeroCutoff);
        }
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for w in words {
            let w = w.as_ref();
            if w.is_empty() {
                continue;
            }
            *counts.entry(w.to_lowercase()).or_insert(0) += 1;
        }
        let mut kept: Vec<(u64, String)> = counts
            .into_iter()
            .filter(|(_, c)| *c >= cutoff)
            .map(|(w, c)| (c, w))
            .collect();
        kept.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let mut tokens: Vec<String> = Self::SPECIALS.iter().map(|s| s.to_string()).collect();
        tokens.extend(kept.into_iter().map(|(_, w)| w));
        Self::from_tokens(tokens, cutoff)
    }

    pub fn from_tokens(tokens: Vec<String>, cutoff: u64) -> Result<Self, VocabError> {
        for (i, want) in Self::SPECIALS.iter().enumerate() {
            match tokens.get(i) {
                Some(t) if t == want => {}
                other => {
                    return Err(VocabError::BadSpecial {
                        index: i,
                        found: other.cloned().unwrap_or_default(),
                    })
                }
            }
        }
        let id_of = index(&tokens)?;
        Ok(GraphemeVocab {
            tokens,
            id_of,
            cutoff,
        })
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Word id, or `UNK` for out-of-vocabulary words.
    pub fn encode(&self, word: &str) -> u32 {
        self.id_of.get(word).copied().unwrap_or(Self::UNK)
    }

    pub fn decode(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(|s| s.as_str())
    }
}

fn index(tokens: &[String]) -> Result<BTreeMap<String, u32>, VocabError> {
    let mut id_of = BTreeMap::new();
    for (i, t) in tokens.iter().enumerate() {
        if id_of.insert(t.clone(), i as u32).is_some() {
            return Err(VocabError::DuplicateToken(t.clone()));
        }
    }
    Ok(id_of)
}
