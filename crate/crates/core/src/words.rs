//! Words over a graded alphabet, Lyndon words and the multiindex
//! correspondence.
//!
//! An [`Alphabet`] materializes the letters `y_s` of grade at most a
//! truncation grade, in the configured total order. A [`Letter`] is the
//! position of the letter in that order, so the derived `Ord` on [`Word`] is
//! exactly the lexicographic order induced by the letter order (a proper
//! prefix is smaller).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::semigroup::{Product, SemigroupElement, SemigroupSpec};

pub type Letter = u16;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
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

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: u32) -> Word {
        Word(self.0.repeat(k as usize))
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// How letters are ordered.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum LetterOrder {
    /// Trivial: alphabet list order. NatPlus: `y₁ < y₂ < …`. NatVec: by
    /// grade, then descending exponent vectors.
    #[default]
    Default,
    /// Higher-grade letters first, so every letter is smaller than all
    /// letters of lower grade (`… < y₃ < y₂ < y₁` for NatPlus).
    ReverseGrade,
    /// Explicit ascending list of labels covering every letter of grade at
    /// most the truncation grade.
    Explicit(Vec<String>),
}

/// The letters of grade `≤ max_grade` of a semigroup, in a fixed total order.
pub struct Alphabet {
    spec: SemigroupSpec,
    max_grade: u32,
    elements: Vec<SemigroupElement>,
    labels: Vec<String>,
    grades: Vec<u32>,
    index: HashMap<SemigroupElement, Letter>,
    decompositions: Vec<Vec<(Letter, Letter)>>,
    single_char: bool,
    words_by_grade: OnceLock<Vec<Vec<Word>>>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("spec", &self.spec)
            .field("order", &self.labels)
            .field("max_grade", &self.max_grade)
            .finish()
    }
}

impl Alphabet {
    pub fn new(spec: SemigroupSpec, order: &LetterOrder, max_grade: u32) -> Result<Self> {
        spec.validate()?;
        let canonical = spec.elements_up_to_grade(max_grade);
        let elements = match order {
            LetterOrder::Default => canonical,
            LetterOrder::ReverseGrade => {
                let mut e = canonical;
                // stable: ties keep canonical order
                e.sort_by_key(|s| std::cmp::Reverse(spec.grade(s).unwrap_or(0)));
                e
            }
            LetterOrder::Explicit(labels) => {
                let mut e = Vec::with_capacity(labels.len());
                for label in labels {
                    let s = spec.parse_label(label)?;
                    if e.contains(&s) {
                        return Err(Error::InvalidOrder(format!(
                            "letter `{label}` listed twice"
                        )));
                    }
                    e.push(s);
                }
                for s in &canonical {
                    if !e.contains(s) {
                        return Err(Error::InvalidOrder(format!(
                            "letter `{}` of grade ≤ {max_grade} is missing from the order",
                            spec.label(s)?
                        )));
                    }
                }
                if e.len() != canonical.len() {
                    return Err(Error::InvalidOrder(format!(
                        "order lists letters of grade above {max_grade}"
                    )));
                }
                e
            }
        };
        if elements.len() > Letter::MAX as usize {
            return Err(Error::InvalidConfig("too many letters".into()));
        }
        let labels = elements
            .iter()
            .map(|s| spec.label(s))
            .collect::<Result<Vec<_>>>()?;
        let grades = elements
            .iter()
            .map(|s| spec.grade(s))
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as Letter))
            .collect();
        let decompositions = elements
            .iter()
            .map(|s| {
                spec.decompositions(s).map(|decs| {
                    decs.iter()
                        .map(|(a, b)| (index[a], index[b]))
                        .collect::<Vec<_>>()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let single_char = match &spec {
            SemigroupSpec::Trivial { alphabet } => alphabet.iter().all(|l| l.chars().count() == 1),
            _ => false,
        };
        Ok(Alphabet {
            spec,
            max_grade,
            elements,
            labels,
            grades,
            index,
            decompositions,
            single_char,
            words_by_grade: OnceLock::new(),
        })
    }

    pub fn with_default_order(spec: SemigroupSpec, max_grade: u32) -> Result<Self> {
        Self::new(spec, &LetterOrder::Default, max_grade)
    }

    pub fn spec(&self) -> &SemigroupSpec {
        &self.spec
    }

    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    pub fn letter_count(&self) -> usize {
        self.elements.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.elements.len() as Letter
    }

    pub fn element(&self, l: Letter) -> &SemigroupElement {
        &self.elements[l as usize]
    }

    pub fn label(&self, l: Letter) -> &str {
        &self.labels[l as usize]
    }

    /// Letter labels in ascending order.
    pub fn order_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn letter_grade(&self, l: Letter) -> u32 {
        self.grades[l as usize]
    }

    pub fn letter_of(&self, s: &SemigroupElement) -> Option<Letter> {
        self.index.get(s).copied()
    }

    pub fn letter_by_label(&self, label: &str) -> Result<Letter> {
        let s = self.spec.parse_label(label)?;
        self.letter_of(&s).ok_or_else(|| Error::GradeOutOfRange {
            grade: self.spec.grade(&s).unwrap_or(0),
            max: self.max_grade,
        })
    }

    /// Decompositions `s₁·s₂ = s` of the letter `y_s`, as letter pairs.
    pub fn decompositions(&self, l: Letter) -> &[(Letter, Letter)] {
        &self.decompositions[l as usize]
    }

    /// `y_{s₁·s₂}`, or `None` when the product is the zero or lies above the
    /// truncation grade.
    pub fn product(&self, a: Letter, b: Letter) -> Option<Letter> {
        match self.spec.product(self.element(a), self.element(b)).ok()? {
            Product::Zero => None,
            Product::Element(s) => self.letter_of(&s),
        }
    }

    pub fn grade(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&l| self.letter_grade(l)).sum()
    }

    pub fn check_grade(&self, grade: u32) -> Result<()> {
        if grade > self.max_grade {
            Err(Error::GradeOutOfRange {
                grade,
                max: self.max_grade,
            })
        } else {
            Ok(())
        }
    }

    /// All words of grade exactly `n`, sorted lexicographically.
    pub fn words_of_grade(&self, n: u32) -> Result<&[Word]> {
        self.check_grade(n)?;
        let all = self.words_by_grade.get_or_init(|| {
            let max = self.max_grade as usize;
            let mut by_grade: Vec<Vec<Word>> = vec![Vec::new(); max + 1];
            by_grade[0].push(Word::empty());
            for g in 1..=max {
                let mut words = Vec::new();
                for l in self.letters() {
                    let lg = self.letter_grade(l) as usize;
                    if lg > g {
                        continue;
                    }
                    for rest in &by_grade[g - lg] {
                        words.push(Word::letter(l).concat(rest));
                    }
                }
                words.sort();
                by_grade[g] = words;
            }
            by_grade
        });
        Ok(&all[n as usize])
    }

    /// Letter-count vector (the commutative image of `w`).
    pub fn multidegree(&self, w: &Word) -> Vec<u32> {
        let mut counts = vec![0; self.letter_count()];
        for &l in w.letters() {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn word_labels(&self, w: &Word) -> Vec<String> {
        w.letters()
            .iter()
            .map(|&l| self.label(l).to_string())
            .collect()
    }

    /// Concatenated labels, separated by `.` unless every label is a single
    /// character. The empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let labels = self.word_labels(w);
        if self.single_char {
            labels.concat()
        } else {
            labels.join(".")
        }
    }

    pub fn word_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Word> {
        labels
            .iter()
            .map(|l| self.letter_by_label(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    /// Parses the output of [`Alphabet::format_word`]. Without `.` separators,
    /// labels are matched greedily (longest first).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        if text.contains('.') {
            let parts: Vec<&str> = text.split('.').collect();
            return self.word_from_labels(&parts);
        }
        let mut letters = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .letters()
                .filter(|&l| rest.starts_with(self.label(l)))
                .max_by_key(|&l| self.label(l).len())
                .ok_or_else(|| Error::Parse(format!("cannot read a letter at `{rest}`")))?;
            letters.push(best);
            rest = &rest[self.label(best).len()..];
        }
        Ok(Word::from_letters(letters))
    }
}

/// Lexicographic comparison induced by the letter order.
pub fn compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// Duval's left-to-right scan. Returns the factor boundaries of the
/// Chen–Fox–Lyndon factorization.
fn duval(w: &[Letter]) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push((i, i + j - k));
            i += j - k;
        }
    }
    factors
}

pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(duval(w.letters()) == [(0, w.len())])
}

/// The unique non-increasing factorization into Lyndon words.
pub fn cfl_factorize(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(duval(w.letters())
        .into_iter()
        .map(|(a, b)| w.slice(a, b))
        .collect())
}

/// `σ(ℓ) = (ℓ₁, ℓ₂)` with `ℓ₂` the longest proper Lyndon suffix.
pub fn std_factorization(w: &Word) -> Result<(Word, Word)> {
    if !is_lyndon(w)? {
        return Err(Error::NotLyndon(format!("{w:?}")));
    }
    if w.len() < 2 {
        return Err(Error::SingleLetter);
    }
    for i in 1..w.len() {
        let suffix = w.slice(i, w.len());
        if is_lyndon(&suffix)? {
            return Ok((w.slice(0, i), suffix));
        }
    }
    unreachable!("the last letter is always a Lyndon suffix")
}

/// Lyndon words of grade `1..=n`, sorted by grade then lexicographically.
pub fn lyndon_words_up_to_grade(alphabet: &Alphabet, n: u32) -> Result<Vec<Word>> {
    alphabet.check_grade(n)?;
    let mut out = Vec::new();
    for g in 1..=n {
        for w in alphabet.words_of_grade(g)? {
            if is_lyndon(w)? {
                out.push(w.clone());
            }
        }
    }
    Ok(out)
}

/// Finitely supported map from Lyndon words to positive exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(BTreeMap<Word, u32>);

impl MultiIndex {
    pub fn new(entries: BTreeMap<Word, u32>) -> Result<Self> {
        for w in entries.keys() {
            if !is_lyndon(w)? {
                return Err(Error::NotLyndon(format!("{w:?}")));
            }
        }
        Ok(MultiIndex(
            entries.into_iter().filter(|(_, e)| *e > 0).collect(),
        ))
    }

    /// `e_ℓ`.
    pub fn unit(lyndon: Word) -> Result<Self> {
        Self::new(BTreeMap::from([(lyndon, 1)]))
    }

    pub fn exponent(&self, w: &Word) -> u32 {
        self.0.get(w).copied().unwrap_or(0)
    }

    /// Entries in increasing word order.
    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (&Word, u32)> {
        self.0.iter().map(|(w, &e)| (w, e))
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `N = Σ αᵢ`.
    pub fn weight(&self) -> u32 {
        self.0.values().sum()
    }

    /// `α! = Π αᵢ!`.
    pub fn factorial(&self) -> BigUint {
        self.0
            .values()
            .map(|&e| (1..=e).fold(BigUint::one(), |acc, k| acc * k))
            .fold(BigUint::one(), |acc, f| acc * f)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = self.0.clone();
        for (w, e) in &other.0 {
            *out.entry(w.clone()).or_insert(0) += e;
        }
        MultiIndex(out)
    }

    pub fn grade(&self, alphabet: &Alphabet) -> u32 {
        self.0.iter().map(|(w, e)| alphabet.grade(w) * e).sum()
    }

    /// JSON object `{lyndon-word-string: exponent}`.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .0
            .iter()
            .rev()
            .map(|(w, e)| (alphabet.format_word(w), serde_json::Value::from(*e)))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(alphabet: &Alphabet, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("multiindex must be a JSON object".into()))?;
        let mut entries = BTreeMap::new();
        for (k, v) in obj {
            let e = v.as_u64().ok_or_else(|| {
                Error::Parse(format!("exponent of `{k}` is not a natural number"))
            })?;
            entries.insert(alphabet.parse_word(k)?, e as u32);
        }
        Self::new(entries)
    }
}

/// Grouped CFL factorization `w = ℓ₁^{α₁}…ℓ_k^{α_k}`, `ℓ₁ > … > ℓ_k`.
pub fn word_to_multiindex(w: &Word) -> MultiIndex {
    let mut entries = BTreeMap::new();
    if !w.is_empty() {
        for f in cfl_factorize(w).expect("nonempty") {
            *entries.entry(f).or_insert(0) += 1;
        }
    }
    MultiIndex(entries)
}

/// Concatenation of the factors in decreasing order, each repeated.
pub fn multiindex_to_word(alpha: &MultiIndex) -> Word {
    alpha
        .entries()
        .rev()
        .fold(Word::empty(), |acc, (l, e)| acc.concat(&l.power(e)))
}

/// Grouped factorization as `(ℓ, exponent)` pairs in decreasing order of `ℓ`.
pub fn grouped_factorization(w: &Word) -> Vec<(Word, u32)> {
    word_to_multiindex(w)
        .entries()
        .rev()
        .map(|(l, e)| (l.clone(), e))
        .collect()
}
