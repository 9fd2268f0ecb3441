use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

/// A word over the generators `{x, y}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&c| c == l).count()
    }

    /// `x^i y^j`.
    pub fn normal(i: usize, j: usize) -> Self {
        let mut v = vec![Letter::X; i];
        v.extend(std::iter::repeat_n(Letter::Y, j));
        Word(v)
    }

    /// All words of exactly `len` letters, in lexicographic order with `x < y`.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        (0u64..(1u64 << len)).map(move |bits| {
            Word(
                (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 1 { Letter::Y } else { Letter::X })
                    .collect(),
            )
        })
    }

    /// Letters swapped `x ↔ y`.
    pub fn swapped(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::X => Letter::Y,
                    Letter::Y => Letter::X,
                })
                .collect(),
        )
    }
}

/// Parses `[xy]*`, case-insensitively.
pub fn parse_word(text: &str) -> Result<Word> {
    text.chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            'x' | 'X' => Ok(Letter::X),
            'y' | 'Y' => Ok(Letter::Y),
            found => Err(Error::Parse { position, found }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_the_navon_word() {
        use Letter::*;
        let w = parse_word("xyxxyxyy").unwrap();
        assert_eq!(w.0, vec![X, Y, X, X, Y, X, Y, Y]);
        assert_eq!(parse_word("XyY").unwrap().0, vec![X, Y, Y]);
    }

    #[test]
    fn empty_and_errors() {
        assert!(parse_word("").unwrap().is_empty());
        assert_eq!(parse_word("xz"), Err(Error::Parse { position: 1, found: 'z' }));
    }

    #[test]
    fn enumerates_all_words() {
        let words: Vec<_> = Word::all_of_length(2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["xx", "xy", "yx", "yy"]);
        assert_eq!(Word::all_of_length(0).count(), 1);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(s in "[xy]{0,20}") {
            let w = parse_word(&s).unwrap();
            prop_assert_eq!(w.to_string(), s);
        }
    }
}
