//! Generator alphabets and freely reduced words over them.
//!
//! A [`Word`] stores runs `(generator, exponent)` with adjacent runs merged
//! and zero exponents dropped, so construction is free reduction. Relators in
//! the surface braid presentations use large powers, which makes the run
//! encoding the natural one.

use std::collections::BTreeMap;
use std::fmt;

/// A generator symbol of one of the braid presentations.
///
/// Indices are absolute string indices (`a3` is the loop of string 3, never
/// "the third generator of the current block"). `C(i, j)` requires `i <= j`;
/// `C(i, i)` is the trivial braid and never appears inside a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A(u32),
    B(u32),
    C(u32, u32),
    Sigma(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// `C(i, j)` with `i > j`.
    MalformedC(u32, u32),
    /// Index 0 where a positive index is required.
    ZeroIndex,
    /// `substitute` was given no image for a symbol of the word.
    MissingImage(Gen),
    /// Parse error with position information.
    Parse(String),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::MalformedC(i, j) => write!(f, "malformed symbol C{i}.{j}: need i <= j"),
            WordError::ZeroIndex => write!(f, "generator indices start at 1"),
            WordError::MissingImage(g) => write!(f, "no image supplied for generator {g}"),
            WordError::Parse(msg) => write!(f, "word syntax error: {msg}"),
        }
    }
}

impl std::error::Error for WordError {}

impl Gen {
    /// Validates the symbol. `C(i, i)` is well formed but trivial; words drop it.
    pub fn validate(self) -> Result<Self, WordError> {
        match self {
            Gen::A(i) | Gen::B(i) | Gen::Sigma(i) if i == 0 => Err(WordError::ZeroIndex),
            Gen::C(i, j) if i == 0 || j == 0 => Err(WordError::ZeroIndex),
            Gen::C(i, j) if i > j => Err(WordError::MalformedC(i, j)),
            g => Ok(g),
        }
    }

    /// True for `C(i, i)`, which denotes the trivial braid.
    pub fn is_trivial_c(self) -> bool {
        matches!(self, Gen::C(i, j) if i == j)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A(i) => write!(f, "a{i}"),
            Gen::B(i) => write!(f, "b{i}"),
            Gen::C(i, j) => write!(f, "C{i}.{j}"),
            Gen::Sigma(i) => write!(f, "s{i}"),
        }
    }
}

/// A freely reduced word: a run-length sequence of `(symbol, exponent)` with
/// nonzero exponents and no two adjacent runs sharing a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    runs: Vec<(Gen, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { runs: Vec::new() }
    }

    /// Builds a word from raw runs, validating symbols, dropping trivial
    /// `C(i,i)` letters and freely reducing.
    pub fn from_runs<I: IntoIterator<Item = (Gen, i64)>>(raw: I) -> Result<Self, WordError> {
        let mut w = Word::empty();
        for (g, e) in raw {
            g.validate()?;
            w.push(g, e);
        }
        Ok(w)
    }

    /// Like [`Word::from_runs`] for callers that construct symbols internally
    /// and know they are well formed.
    pub fn from_valid_runs<I: IntoIterator<Item = (Gen, i64)>>(raw: I) -> Self {
        Self::from_runs(raw).expect("internally built symbols are well formed")
    }

    pub fn gen(g: Gen, e: i64) -> Self {
        Self::from_valid_runs([(g, e)])
    }

    /// Appends one run, merging and cancelling as needed.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 || g.is_trivial_c() {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push((g, e));
    }

    pub fn extend(&mut self, other: &Word) {
        for &(g, e) in &other.runs {
            self.push(g, e);
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// Reversed order, negated exponents.
    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for &(g, e) in self.runs.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..e.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// Replaces every symbol by its image, homomorphically:
    /// `substitute(uv) = substitute(u) substitute(v)`, freely reduced.
    pub fn substitute(&self, images: &BTreeMap<Gen, Word>) -> Result<Word, WordError> {
        let mut w = Word::empty();
        for &(g, e) in &self.runs {
            let img = images.get(&g).ok_or(WordError::MissingImage(g))?;
            w.extend(&img.pow(e));
        }
        Ok(w)
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn letter_len(&self) -> u64 {
        self.runs.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.runs
    }

    /// Letters one at a time, exponents split into `+1`/`-1` steps.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            let step = if e > 0 { 1 } else { -1 };
            (0..e.unsigned_abs()).map(move |_| (g, step))
        })
    }

    /// Exponent sum of `g` in the word.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.runs.iter().filter(|&&(h, _)| h == g).map(|&(_, e)| e).sum()
    }

    /// The set of distinct symbols appearing in the word.
    pub fn support(&self) -> impl Iterator<Item = Gen> + '_ {
        let mut seen = Vec::new();
        self.runs.iter().filter_map(move |&(g, _)| {
            if seen.contains(&g) {
                None
            } else {
                seen.push(g);
                Some(g)
            }
        })
    }

    /// Parses the textual word syntax: whitespace-separated tokens `a<i>`,
    /// `b<i>`, `C<i>.<j>`, `s<i>`, each with an optional caret exponent
    /// (`a1^-3`); the empty word is spelled `e`.
    pub fn parse(input: &str) -> Result<Word, WordError> {
        let mut runs = Vec::new();
        for tok in input.split_whitespace() {
            if tok == "e" {
                continue;
            }
            runs.push(parse_token(tok)?);
        }
        Word::from_runs(runs)
    }
}

pub(crate) fn parse_exponent(tok: &str, rest: &str) -> Result<i64, WordError> {
    if rest.is_empty() {
        return Ok(1);
    }
    let rest = rest
        .strip_prefix('^')
        .ok_or_else(|| WordError::Parse(format!("unexpected suffix in token `{tok}`")))?;
    rest.parse::<i64>()
        .map_err(|_| WordError::Parse(format!("bad exponent in token `{tok}`")))
}

fn parse_index(tok: &str, digits: &str) -> Result<u32, WordError> {
    digits
        .parse::<u32>()
        .map_err(|_| WordError::Parse(format!("bad index in token `{tok}`")))
}

fn split_digits(s: &str) -> (&str, &str) {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    s.split_at(end)
}

fn parse_token(tok: &str) -> Result<(Gen, i64), WordError> {
    let mut chars = tok.chars();
    let head = chars
        .next()
        .ok_or_else(|| WordError::Parse("empty token".into()))?;
    let body = chars.as_str();
    match head {
        'a' | 'b' | 's' => {
            let (digits, rest) = split_digits(body);
            if digits.is_empty() {
                return Err(WordError::Parse(format!("missing index in token `{tok}`")));
            }
            let i = parse_index(tok, digits)?;
            let e = parse_exponent(tok, rest)?;
            let g = match head {
                'a' => Gen::A(i),
                'b' => Gen::B(i),
                _ => Gen::Sigma(i),
            };
            Ok((g.validate()?, e))
        }
        'C' => {
            let (di, rest) = split_digits(body);
            let rest = rest
                .strip_prefix('.')
                .ok_or_else(|| WordError::Parse(format!("expected `.` in token `{tok}`")))?;
            let (dj, rest) = split_digits(rest);
            if di.is_empty() || dj.is_empty() {
                return Err(WordError::Parse(format!("missing index in token `{tok}`")));
            }
            let i = parse_index(tok, di)?;
            let j = parse_index(tok, dj)?;
            let e = parse_exponent(tok, rest)?;
            Ok((Gen::C(i, j).validate()?, e))
        }
        _ => Err(WordError::Parse(format!("unknown token `{tok}`"))),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "e");
        }
        for (k, (g, e)) in self.runs.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Convenience constructors used throughout the presentation builders.
pub fn a(i: u32) -> Word {
    Word::gen(Gen::A(i), 1)
}
pub fn b(i: u32) -> Word {
    Word::gen(Gen::B(i), 1)
}
pub fn sigma(i: u32) -> Word {
    Word::gen(Gen::Sigma(i), 1)
}
/// `C(i, j)` as a one-letter word; `i == j` yields the empty word.
pub fn c(i: u32, j: u32) -> Word {
    if i == j {
        Word::empty()
    } else {
        Word::gen(Gen::C(i, j), 1)
    }
}

/// Product of a sequence of words.
pub fn prod<I: IntoIterator<Item = Word>>(ws: I) -> Word {
    let mut acc = Word::empty();
    for w in ws {
        acc.extend(&w);
    }
    acc
}

/// `u v u^-1 v^-1`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    prod([u.clone(), v.clone(), u.inverse(), v.inverse()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("a1 a1^-1"), Word::empty());
        assert_eq!(w("a1 b1 b1^-1 a1"), w("a1^2"));
        assert_eq!(w("s1^2 s1^-1"), w("s1"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("a1 b1").inverse(), w("b1^-1 a1^-1"));
        assert_eq!(w("s1^2").inverse(), w("s1^-2"));
    }

    #[test]
    fn substitute_examples() {
        let mut images = BTreeMap::new();
        images.insert(Gen::A(1), w("a1 a2"));
        images.insert(Gen::B(1), w("b1 b2"));
        assert_eq!(w("a1 b1").substitute(&images).unwrap(), w("a1 a2 b1 b2"));
        assert_eq!(w("a1 a1^-1").substitute(&images).unwrap(), Word::empty());
        let mut im = BTreeMap::new();
        im.insert(Gen::Sigma(1), w("s1 a2^3"));
        assert_eq!(w("s1").substitute(&im).unwrap(), w("s1 a2^3"));
        let err = w("b1").substitute(&im).unwrap_err();
        assert_eq!(err, WordError::MissingImage(Gen::B(1)));
    }

    #[test]
    fn trivial_c_is_dropped() {
        assert_eq!(c(3, 3), Word::empty());
        let word = Word::from_runs([(Gen::A(1), 1), (Gen::C(2, 2), 5), (Gen::A(1), 1)]).unwrap();
        assert_eq!(word, w("a1^2"));
    }

    #[test]
    fn malformed_c_rejected() {
        assert_eq!(
            Word::from_runs([(Gen::C(3, 1), 1)]).unwrap_err(),
            WordError::MalformedC(3, 1)
        );
        assert!(Word::parse("C3.1").is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["e", "a1", "a1^-3 C1.4^2 s2 b7^5", "C2.9^-1"] {
            let word = w(s);
            assert_eq!(w(&word.to_string()), word);
        }
    }

    fn arb_gen() -> impl Strategy<Value = Gen> {
        prop_oneof![
            (1u32..6).prop_map(Gen::A),
            (1u32..6).prop_map(Gen::B),
            (1u32..6).prop_map(Gen::Sigma),
            (1u32..5, 1u32..3).prop_map(|(i, d)| Gen::C(i, i + d)),
        ]
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((arb_gen(), -3i64..=3), 0..12)
            .prop_map(|runs| Word::from_runs(runs).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_shorter(word in arb_word()) {
            let again = Word::from_runs(word.runs().to_vec()).unwrap();
            prop_assert_eq!(&again, &word);
            let doubled = word.concat(&word.inverse());
            prop_assert!(doubled.is_empty());
        }

        #[test]
        fn double_inverse(word in arb_word()) {
            prop_assert_eq!(word.inverse().inverse(), word);
        }

        #[test]
        fn substitute_respects_inversion(word in arb_word()) {
            let mut images = BTreeMap::new();
            for g in word.support() {
                let img = match g {
                    Gen::A(i) => Word::from_valid_runs([(Gen::A(i), 1), (Gen::B(i), 2)]),
                    g => Word::gen(g, 1),
                };
                images.insert(g, img);
            }
            let lhs = word.inverse().substitute(&images).unwrap();
            let rhs = word.substitute(&images).unwrap().inverse();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
