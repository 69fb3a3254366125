use std::collections::HashMap;

use super::SystemError;

/// Index of a symbol within its alphabet.
pub type Symbol = u16;

pub const MAX_ALPHABET: usize = 1 << 16;

/// An ordered finite set of distinct symbol names.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(SystemError::EmptyAlphabet);
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(SystemError::AlphabetTooLarge(symbols.len()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i as Symbol).is_some() {
                return Err(SystemError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `{"0", "1", ..., "n-1"}`.
    pub fn numeric(n: usize) -> Result<Self, SystemError> {
        Alphabet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word written either as a run of single-character symbols
    /// (`"0110"`) or, for longer symbol names, as whitespace-separated names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>, SystemError> {
        let bad = || SystemError::BadWord { word: text.to_string() };
        let parts: Vec<String> = if self.single_char() && !text.contains(char::is_whitespace) {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            text.split_whitespace().map(str::to_string).collect()
        };
        if parts.is_empty() {
            return Err(bad());
        }
        parts.iter().map(|p| self.lookup(p).ok_or_else(bad)).collect()
    }

    pub fn lookup_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Symbol>, SystemError> {
        names
            .iter()
            .map(|n| {
                self.lookup(n.as_ref()).ok_or_else(|| SystemError::BadWord {
                    word: names.iter().map(|n| n.as_ref()).collect::<Vec<_>>().join(" "),
                })
            })
            .collect()
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }
}
