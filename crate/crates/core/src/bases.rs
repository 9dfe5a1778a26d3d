//! Basis families of `k⟨Y⟩` indexed by words (equivalently by multiindices
//! over Lyndon words), their duals and the checks relating them.
//!
//! * `PS`: the PBW basis built on `π₁(y_s)`, bracketed along standard
//!   factorizations; `TS` is its dual.
//! * `P`, `S`: the classical shuffle-case pair (`S` by its closed form).
//! * `Sprime`: shuffle monomials of Lyndon words divided by `α!`; `Bprime`
//!   is its dual.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bialgebra::{shuffle, shuffle_power, Bialgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{format_rational, Poly, Rational};
use crate::semigroup::SemigroupSpec;
use crate::words::{
    grouped_factorization, is_lyndon, lyndon_words_up_to_grade, multiindex_to_word,
    std_factorization, word_to_multiindex, Alphabet, Letter, MultiIndex, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PS,
    TS,
    P,
    S,
    Sprime,
    Bprime,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PS => "PS",
            Family::TS => "TS",
            Family::P => "P",
            Family::S => "S",
            Family::Sprime => "Sprime",
            Family::Bprime => "Bprime",
        }
    }

    /// Tag of the family obtained by dualizing this one.
    pub fn dual(self) -> Family {
        match self {
            Family::PS => Family::TS,
            Family::TS => Family::PS,
            Family::P => Family::S,
            Family::S => Family::P,
            Family::Sprime => Family::Bprime,
            Family::Bprime => Family::Sprime,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "PS" => Family::PS,
            "TS" => Family::TS,
            "P" => Family::P,
            "S" => Family::S,
            "Sprime" => Family::Sprime,
            "Bprime" => Family::Bprime,
            _ => return Err(Error::Parse(format!("unknown basis family `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub word: Word,
    pub index: MultiIndex,
    pub element: Poly,
}

/// One element per word of grade `≤ max_grade`, grouped by grade and sorted
/// by word within a grade. Grade 0 holds `1_{Y*}`.
#[derive(Clone, Debug)]
pub struct BasisTable {
    family: Family,
    alphabet: Arc<Alphabet>,
    max_grade: u32,
    grades: Vec<Vec<BasisEntry>>,
}

impl BasisTable {
    fn from_elements(
        family: Family,
        alphabet: Arc<Alphabet>,
        max_grade: u32,
        mut element: impl FnMut(&Word) -> Result<Poly>,
    ) -> Result<Self> {
        alphabet.check_grade(max_grade)?;
        let mut grades = Vec::with_capacity(max_grade as usize + 1);
        for g in 0..=max_grade {
            let mut entries = Vec::new();
            for w in alphabet.words_of_grade(g)? {
                entries.push(BasisEntry {
                    word: w.clone(),
                    index: word_to_multiindex(w),
                    element: element(w)?,
                });
            }
            grades.push(entries);
        }
        Ok(BasisTable {
            family,
            alphabet,
            max_grade,
            grades,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    /// Entries of grade `g` (empty above the truncation grade).
    pub fn entries(&self, g: u32) -> &[BasisEntry] {
        self.grades.get(g as usize).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisEntry> {
        self.grades.iter().flatten()
    }

    pub fn get(&self, w: &Word) -> Option<&Poly> {
        let entries = self.grades.get(self.alphabet.grade(w) as usize)?;
        entries
            .binary_search_by(|e| e.word.cmp(w))
            .ok()
            .map(|i| &entries[i].element)
    }

    pub fn get_index(&self, alpha: &MultiIndex) -> Option<&Poly> {
        self.get(&multiindex_to_word(alpha))
    }

    /// Entries indexed by a single Lyndon word (`e_ℓ`), in increasing
    /// lexicographic order.
    pub fn lyndon_entries(&self) -> Vec<&BasisEntry> {
        let mut out: Vec<&BasisEntry> = self.iter().filter(|e| e.index.weight() == 1).collect();
        out.sort_by(|a, b| a.word.cmp(&b.word));
        out
    }

    /// `B^β`: the product of `B_{e_ℓ}^{β_ℓ}` taken in decreasing order of `ℓ`.
    pub fn ordered_product(&self, beta: &MultiIndex) -> Result<Poly> {
        let mut out = Poly::one();
        for (l, e) in beta.entries().rev() {
            let factor = self.get(l).ok_or_else(|| {
                Error::IndexMismatch(format!("no element for {}", self.alphabet.format_word(l)))
            })?;
            out = out.conc_mul(&factor.pow(e));
        }
        Ok(out)
    }

    pub fn to_json(&self, bialgebra: &Bialgebra) -> Result<Value> {
        let mut entries = Vec::new();
        for e in self.iter() {
            let flags = entry_flags(bialgebra, e)?;
            entries.push(json!({
                "word": self.alphabet.word_labels(&e.word),
                "index": e.index.to_json(&self.alphabet),
                "element": e.element.to_json(&self.alphabet),
                "flags": {
                    "lyndon": flags.lyndon,
                    "primitive": flags.primitive,
                    "upper_triangular": flags.upper_triangular,
                    "lower_triangular": flags.lower_triangular,
                },
            }));
        }
        Ok(Value::Array(entries))
    }
}

pub(crate) fn same_alphabet(a: &BasisTable, b: &BasisTable) -> Result<()> {
    if Arc::ptr_eq(&a.alphabet, &b.alphabet)
        || (a.alphabet.spec() == b.alphabet.spec()
            && a.alphabet.order_labels() == b.alphabet.order_labels())
    {
        Ok(())
    } else {
        Err(Error::IndexMismatch(
            "tables use different alphabets or letter orders".into(),
        ))
    }
}

fn require_trivial(bialgebra: &Bialgebra, op: &'static str) -> Result<()> {
    match bialgebra.alphabet().spec() {
        SemigroupSpec::Trivial { .. } => Ok(()),
        _ => Err(Error::WrongSemigroup {
            op,
            expected: "trivial",
        }),
    }
}

/// Builds the PBW family from images of the letters: brackets along `σ` for
/// Lyndon words, ordered products along the grouped factorization otherwise.
fn pbw_table(
    family: Family,
    alphabet: Arc<Alphabet>,
    n: u32,
    letter_image: impl Fn(Letter) -> Result<Poly>,
) -> Result<BasisTable> {
    let mut lyndon: HashMap<Word, Poly> = HashMap::new();
    fn lyndon_element(
        l: &Word,
        memo: &mut HashMap<Word, Poly>,
        letter_image: &dyn Fn(Letter) -> Result<Poly>,
    ) -> Result<Poly> {
        if let Some(p) = memo.get(l) {
            return Ok(p.clone());
        }
        let p = if l.len() == 1 {
            letter_image(l.letters()[0])?
        } else {
            let (l1, l2) = std_factorization(l)?;
            let p1 = lyndon_element(&l1, memo, letter_image)?;
            let p2 = lyndon_element(&l2, memo, letter_image)?;
            p1.bracket(&p2)
        };
        memo.insert(l.clone(), p.clone());
        Ok(p)
    }
    BasisTable::from_elements(family, alphabet, n, |w| {
        let mut out = Poly::one();
        for (l, e) in grouped_factorization(w) {
            let p = lyndon_element(&l, &mut lyndon, &letter_image)?;
            out = out.conc_mul(&p.pow(e));
        }
        Ok(out)
    })
}

/// `P_S`: PBW basis over the primitive letters `π₁(y_s)`.
pub fn basis_p_s(bialgebra: &Bialgebra, n: u32) -> Result<BasisTable> {
    let alphabet = bialgebra.alphabet().clone();
    let b = bialgebra.clone();
    pbw_table(Family::PS, alphabet.clone(), n, move |l| {
        b.pi1(&Poly::word(Word::letter(l)), alphabet.letter_grade(l))
    })
}

/// The classical PBW basis `P_w` of the shuffle case (letters are primitive).
pub fn basis_p(bialgebra: &Bialgebra, n: u32) -> Result<BasisTable> {
    require_trivial(bialgebra, "basis P")?;
    pbw_table(Family::P, bialgebra.alphabet().clone(), n, |l| {
        Ok(Poly::word(Word::letter(l)))
    })
}

/// The family dual to `table` for the word pairing, by exact inversion of
/// each homogeneous block.
pub fn dual_basis(table: &BasisTable) -> Result<BasisTable> {
    let alphabet = table.alphabet.clone();
    let mut grades = Vec::with_capacity(table.grades.len());
    for (g, entries) in table.grades.iter().enumerate() {
        let words = alphabet.words_of_grade(g as u32)?;
        let column: HashMap<&Word, usize> = words.iter().enumerate().map(|(j, w)| (w, j)).collect();
        let n = words.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, e) in entries.iter().enumerate() {
            for (w, c) in e.element.terms() {
                let j = *column
                    .get(w)
                    .ok_or(Error::SingularBasis { grade: g as u32 })?;
                m[i][j] = c.clone();
            }
        }
        let inv = linalg::invert(&m).ok_or(Error::SingularBasis { grade: g as u32 })?;
        // ⟨T_k | e_i⟩ = Σ_j X[k][j] M[i][j] = δ, so X = (M⁻¹)ᵀ.
        let dual_entries = entries
            .iter()
            .enumerate()
            .map(|(k, e)| BasisEntry {
                word: e.word.clone(),
                index: e.index.clone(),
                element: Poly::from_terms((0..n).map(|j| (words[j].clone(), inv[j][k].clone()))),
            })
            .collect();
        grades.push(dual_entries);
    }
    Ok(BasisTable {
        family: table.family.dual(),
        alphabet,
        max_grade: table.max_grade,
        grades,
    })
}

/// `S_w` by its closed form: `S_x = x`, `S_{xu} = x·S_u` on Lyndon words,
/// normalized shuffle monomials otherwise.
pub fn basis_s_closed(bialgebra: &Bialgebra, n: u32) -> Result<BasisTable> {
    require_trivial(bialgebra, "basis S")?;
    let mut built: HashMap<Word, Poly> = HashMap::new();
    BasisTable::from_elements(Family::S, bialgebra.alphabet().clone(), n, |w| {
        let p = if w.is_empty() {
            Poly::one()
        } else if w.len() == 1 {
            Poly::word(w.clone())
        } else if is_lyndon(w)? {
            let head = Poly::word(w.slice(0, 1));
            head.conc_mul(&built[&w.slice(1, w.len())])
        } else {
            normalized_shuffle_monomial(w, |l| Ok(built[l].clone()))?
        };
        built.insert(w.clone(), p.clone());
        Ok(p)
    })
}

/// `(Π S_{ℓᵢ}^{⧢αᵢ}) / α!` over the grouped factorization of `w`.
fn normalized_shuffle_monomial(w: &Word, factor: impl Fn(&Word) -> Result<Poly>) -> Result<Poly> {
    let alpha = word_to_multiindex(w);
    let mut out = Poly::one();
    for (l, e) in alpha.entries().rev() {
        out = shuffle(&out, &shuffle_power(&factor(l)?, e));
    }
    let denom = BigRational::from_integer(alpha.factorial().into());
    Ok(out.scale(&denom.recip()))
}

/// `S′_w`: Lyndon words map to themselves, other words to normalized
/// shuffle monomials of their Lyndon factors.
pub fn basis_s_prime(bialgebra: &Bialgebra, n: u32) -> Result<BasisTable> {
    require_trivial(bialgebra, "basis Sprime")?;
    BasisTable::from_elements(Family::Sprime, bialgebra.alphabet().clone(), n, |w| {
        if w.is_empty() {
            Ok(Poly::one())
        } else {
            normalized_shuffle_monomial(w, |l| Ok(Poly::word(l.clone())))
        }
    })
}

/// `B′`, the family dual to `S′`.
pub fn basis_b_prime(bialgebra: &Bialgebra, n: u32) -> Result<BasisTable> {
    dual_basis(&basis_s_prime(bialgebra, n)?)
}

/// Builds any family by name. `TS` and `Bprime` go through exact inversion.
pub fn build_family(bialgebra: &Bialgebra, family: Family, n: u32) -> Result<BasisTable> {
    match family {
        Family::PS => basis_p_s(bialgebra, n),
        Family::TS => dual_basis(&basis_p_s(bialgebra, n)?),
        Family::P => basis_p(bialgebra, n),
        Family::S => basis_s_closed(bialgebra, n),
        Family::Sprime => basis_s_prime(bialgebra, n),
        Family::Bprime => basis_b_prime(bialgebra, n),
    }
}

/// `B′_ℓ` for the Lyndon words `ℓ₁ < … < ℓ_m` of a given multidegree, by
/// eliminating the other Lyndon words from `P_ℓ` in decreasing order.
pub fn b_prime_gram_schmidt(
    bialgebra: &Bialgebra,
    multidegree: &[u32],
) -> Result<Vec<(Word, Poly)>> {
    require_trivial(bialgebra, "Gram-Schmidt B'")?;
    let alphabet = bialgebra.alphabet();
    if multidegree.len() != alphabet.letter_count() {
        return Err(Error::InvalidConfig(format!(
            "multidegree has {} entries, alphabet has {} letters",
            multidegree.len(),
            alphabet.letter_count()
        )));
    }
    let total: u32 = multidegree.iter().sum();
    if total == 0 {
        return Ok(Vec::new());
    }
    let p_table = basis_p(bialgebra, total)?;
    let class: Vec<Word> = lyndon_words_up_to_grade(alphabet, total)?
        .into_iter()
        .filter(|l| alphabet.multidegree(l) == multidegree)
        .collect();
    let mut out: Vec<(Word, Poly)> = Vec::with_capacity(class.len());
    for l in class.iter().rev() {
        let p = p_table
            .get(l)
            .expect("Lyndon word within the table")
            .clone();
        let mut b = p.clone();
        for (larger, b_larger) in &out {
            b.add_scaled(b_larger, &-p.coeff(larger));
        }
        out.push((l.clone(), b));
    }
    out.reverse();
    Ok(out)
}

/// `P = B′_ℓ` test: `P` primitive, exactly one Lyndon word in its support,
/// and `⟨P|ℓ⟩ = 1`.
pub fn characterize_b_prime(bialgebra: &Bialgebra, p: &Poly, l: &Word) -> Result<bool> {
    if !is_lyndon(l)? || !p.coeff(l).is_one() {
        return Ok(false);
    }
    let mut lyndon_support = 0;
    for w in p.support() {
        if !w.is_empty() && is_lyndon(w)? {
            lyndon_support += 1;
        }
    }
    Ok(lyndon_support == 1 && bialgebra.is_primitive(p)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityHit {
    /// The Lyndon index `e_i` of the linear form.
    pub lyndon: Word,
    pub beta: MultiIndex,
    /// `⟨S_{e_i}, B^β⟩`.
    pub value: Rational,
}

#[derive(Clone, Debug)]
pub struct MultiplicativityReport {
    pub max_grade: u32,
    pub min_weight: u32,
    pub hits: Vec<MultiplicativityHit>,
}

impl MultiplicativityReport {
    /// No hit: `B` is multiplicative up to the truncation grade.
    pub fn is_multiplicative(&self) -> bool {
        self.hits.is_empty()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let hits: Vec<Value> = self
            .hits
            .iter()
            .map(|h| {
                json!({
                    "lyndon": alphabet.word_labels(&h.lyndon),
                    "beta": h.beta.to_json(alphabet),
                    "value": format_rational(&h.value),
                })
            })
            .collect();
        json!({
            "grade": self.max_grade,
            "min_weight": self.min_weight,
            "multiplicative": self.is_multiplicative(),
            "violations": hits,
        })
    }
}

/// Evaluates `⟨S_{e_i}, B^β⟩` for every Lyndon `e_i` and every `β` with
/// `|β| ≥ min_weight` up to grade `n`, keeping the nonzero values.
pub fn multiplicativity_check(
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
    min_weight: u32,
) -> Result<MultiplicativityReport> {
    same_alphabet(s_table, b_table)?;
    if min_weight < 2 {
        return Err(Error::InvalidConfig("min_weight must be at least 2".into()));
    }
    let alphabet = s_table.alphabet.clone();
    for t in [s_table, b_table] {
        if t.max_grade < n {
            return Err(Error::GradeOutOfRange {
                grade: n,
                max: t.max_grade,
            });
        }
    }
    let forms: Vec<&BasisEntry> = s_table.lyndon_entries();
    if let Some(e) = forms.iter().find(|e| !e.element.constant_term().is_zero()) {
        return Err(Error::InvalidConfig(format!(
            "⟨S_e, 1⟩ ≠ 0 for {}",
            alphabet.format_word(&e.word)
        )));
    }
    let mut hits = Vec::new();
    for g in 2..=n {
        let same_grade: Vec<&&BasisEntry> = forms
            .iter()
            .filter(|e| alphabet.grade(&e.word) == g)
            .collect();
        for w in alphabet.words_of_grade(g)? {
            let beta = word_to_multiindex(w);
            if beta.weight() < min_weight {
                continue;
            }
            let product = b_table.ordered_product(&beta)?;
            for form in &same_grade {
                let value = form.element.pairing(&product);
                if !value.is_zero() {
                    hits.push(MultiplicativityHit {
                        lyndon: form.word.clone(),
                        beta: beta.clone(),
                        value,
                    });
                }
            }
        }
    }
    Ok(MultiplicativityReport {
        max_grade: n,
        min_weight,
        hits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityViolation {
    pub left: Word,
    pub right: Word,
    pub value: Rational,
}

/// All pairs `(α, β)` of equal grade `≤ n` with `⟨S_α, B_β⟩ ≠ δ_{αβ}`.
/// Pairs of different grades vanish because both families are homogeneous.
pub fn check_duality(
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
) -> Result<Vec<DualityViolation>> {
    same_alphabet(s_table, b_table)?;
    let mut out = Vec::new();
    for g in 0..=n {
        let (left, right) = (s_table.entries(g), b_table.entries(g));
        if left.len() != right.len() {
            return Err(Error::IndexMismatch(format!(
                "grade {g} has different index sets"
            )));
        }
        for s in left {
            for b in right {
                let value = s.element.pairing(&b.element);
                let expected = if s.word == b.word {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if value != expected {
                    out.push(DualityViolation {
                        left: s.word.clone(),
                        right: b.word.clone(),
                        value,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `⟨p|w⟩ = 1` and every other word of the support is larger than `w`.
pub fn is_upper_unitriangular(p: &Poly, w: &Word) -> bool {
    p.coeff(w).is_one() && p.support().all(|u| u >= w)
}

/// `⟨p|w⟩ = 1` and every other word of the support is smaller than `w`.
pub fn is_lower_unitriangular(p: &Poly, w: &Word) -> bool {
    p.coeff(w).is_one() && p.support().all(|u| u <= w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryFlags {
    pub lyndon: bool,
    /// Only evaluated for Lyndon-indexed entries.
    pub primitive: Option<bool>,
    pub upper_triangular: bool,
    pub lower_triangular: bool,
}

pub fn entry_flags(bialgebra: &Bialgebra, e: &BasisEntry) -> Result<EntryFlags> {
    let lyndon = e.index.weight() == 1;
    Ok(EntryFlags {
        lyndon,
        primitive: if lyndon {
            Some(bialgebra.is_primitive(&e.element)?)
        } else {
            None
        },
        upper_triangular: is_upper_unitriangular(&e.element, &e.word),
        lower_triangular: is_lower_unitriangular(&e.element, &e.word),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCount {
    pub grade: u32,
    pub count: usize,
    pub rank: usize,
    pub dimension: usize,
}

impl RankCount {
    pub fn is_full(&self) -> bool {
        self.count == self.dimension && self.rank == self.dimension
    }
}

fn rank_of(alphabet: &Alphabet, g: u32, family: &[Poly]) -> Result<usize> {
    let words = alphabet.words_of_grade(g)?;
    let column: HashMap<&Word, usize> = words.iter().enumerate().map(|(j, w)| (w, j)).collect();
    let m: linalg::Matrix = family
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); words.len()];
            for (w, c) in p.terms() {
                if let Some(&j) = column.get(w) {
                    row[j] = c.clone();
                }
            }
            row
        })
        .collect();
    Ok(linalg::rank(&m))
}

/// Lyndon words as a transcendence basis of the shuffle algebra: the
/// monomials `Lyn^{⧢α}` of grade `g` (no `α!` normalization).
pub fn radford_rank(bialgebra: &Bialgebra, g: u32) -> Result<RankCount> {
    require_trivial(bialgebra, "Radford rank")?;
    let alphabet = bialgebra.alphabet();
    let words = alphabet.words_of_grade(g)?;
    let monomials: Vec<Poly> = words
        .iter()
        .map(|w| {
            word_to_multiindex(w)
                .entries()
                .fold(Poly::one(), |acc, (l, e)| {
                    shuffle(&acc, &shuffle_power(&Poly::word(l.clone()), e))
                })
        })
        .collect();
    Ok(RankCount {
        grade: g,
        count: monomials.len(),
        rank: rank_of(alphabet, g, &monomials)?,
        dimension: words.len(),
    })
}

/// Number of Lyndon words of grade `g` against the rank of the Lyndon-indexed
/// elements of `table` in that grade.
pub fn primitive_rank(table: &BasisTable, g: u32) -> Result<(usize, usize)> {
    let lyndon: Vec<Poly> = table
        .entries(g)
        .iter()
        .filter(|e| e.index.weight() == 1)
        .map(|e| e.element.clone())
        .collect();
    Ok((lyndon.len(), rank_of(&table.alphabet, g, &lyndon)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaRow {
    pub grade: u32,
    /// `supp(B^w) ∩ Lyn = ∅` for every `w` with `N_w ≥ 2`.
    pub no_lyndon_in_products: bool,
    /// `⟨B^w, S_u⟩ = δ_{wu}` for all `w, u`.
    pub products_dual: bool,
}

/// Evaluates both sides of the PBW-type criterion grade by grade.
pub fn lemma_equivalence(
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
) -> Result<Vec<LemmaRow>> {
    same_alphabet(s_table, b_table)?;
    let mut rows = Vec::new();
    for g in 1..=n {
        let mut no_lyndon = true;
        let mut dual = true;
        for e in b_table.entries(g) {
            let product = b_table.ordered_product(&e.index)?;
            if e.index.weight() >= 2 {
                for w in product.support() {
                    if is_lyndon(w)? {
                        no_lyndon = false;
                    }
                }
            }
            for s in s_table.entries(g) {
                let expected = if s.word == e.word {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if s.element.pairing(&product) != expected {
                    dual = false;
                }
            }
        }
        rows.push(LemmaRow {
            grade: g,
            no_lyndon_in_products: no_lyndon,
            products_dual: dual,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{integer, rational};
    use crate::words::LetterOrder;

    fn bialg(spec: SemigroupSpec, order: LetterOrder, n: u32) -> Bialgebra {
        Bialgebra::new(Arc::new(Alphabet::new(spec, &order, n).unwrap()))
    }

    fn ab(n: u32) -> Bialgebra {
        bialg(SemigroupSpec::trivial(&["a", "b"]), LetterOrder::Default, n)
    }

    fn poly(b: &Bialgebra, terms: &[(&str, i64)]) -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(w, c)| (b.alphabet().parse_word(w).unwrap(), integer(*c))),
        )
    }

    fn w(b: &Bialgebra, s: &str) -> Word {
        b.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn p_s_examples() {
        let t = ab(4);
        let ps = basis_p_s(&t, 4).unwrap();
        assert_eq!(
            ps.get(&w(&t, "ab")).unwrap(),
            &poly(&t, &[("ab", 1), ("ba", -1)])
        );
        assert_eq!(ps.get(&w(&t, "ba")).unwrap(), &poly(&t, &[("ba", 1)]));
        let n = bialg(SemigroupSpec::NatPlus, LetterOrder::Default, 4);
        let ps = basis_p_s(&n, 4).unwrap();
        assert_eq!(
            ps.get(&w(&n, "y2")).unwrap(),
            &Poly::from_terms([(w(&n, "y2"), integer(1)), (w(&n, "y1y1"), rational(-1, 2))])
        );
    }

    #[test]
    fn dual_basis_examples() {
        let t = ab(4);
        let ts = dual_basis(&basis_p_s(&t, 4).unwrap()).unwrap();
        assert_eq!(ts.family(), Family::TS);
        assert_eq!(ts.get(&w(&t, "a")).unwrap(), &poly(&t, &[("a", 1)]));
        assert_eq!(ts.get(&w(&t, "b")).unwrap(), &poly(&t, &[("b", 1)]));
        assert_eq!(ts.get(&w(&t, "ab")).unwrap(), &poly(&t, &[("ab", 1)]));
    }

    #[test]
    fn singular_family_is_rejected() {
        let t = ab(2);
        let bad =
            BasisTable::from_elements(Family::P, t.alphabet().clone(), 2, |_| Ok(Poly::one()))
                .unwrap();
        assert_eq!(
            dual_basis(&bad).unwrap_err(),
            Error::SingularBasis { grade: 1 }
        );
    }

    #[test]
    fn s_closed_examples() {
        let t = ab(4);
        let s = basis_s_closed(&t, 4).unwrap();
        assert_eq!(s.get(&w(&t, "ab")).unwrap(), &poly(&t, &[("ab", 1)]));
        assert_eq!(
            s.get(&w(&t, "ba")).unwrap(),
            &poly(&t, &[("ab", 1), ("ba", 1)])
        );
        assert_eq!(s.get(&w(&t, "aa")).unwrap(), &poly(&t, &[("aa", 1)]));
    }

    #[test]
    fn s_prime_examples() {
        let t = ab(4);
        let s = basis_s_prime(&t, 4).unwrap();
        assert_eq!(s.get(&w(&t, "ab")).unwrap(), &poly(&t, &[("ab", 1)]));
        assert_eq!(
            s.get(&w(&t, "ba")).unwrap(),
            &poly(&t, &[("ab", 1), ("ba", 1)])
        );
        assert_eq!(
            s.get(&w(&t, "abab")).unwrap(),
            &poly(&t, &[("abab", 1), ("aabb", 2)])
        );
    }

    #[test]
    fn b_prime_examples() {
        let t = ab(4);
        let b = basis_b_prime(&t, 4).unwrap();
        assert_eq!(b.get(&w(&t, "a")).unwrap(), &poly(&t, &[("a", 1)]));
        assert_eq!(
            b.get(&w(&t, "ab")).unwrap(),
            &poly(&t, &[("ab", 1), ("ba", -1)])
        );
        assert_eq!(
            b.get(&w(&t, "aabb")).unwrap(),
            &poly(&t, &[("aabb", 1), ("abab", -2), ("baba", 2), ("bbaa", -1)])
        );
    }

    #[test]
    fn gram_schmidt_singleton_and_cross_check() {
        let t = ab(6);
        let one = b_prime_gram_schmidt(&t, &[2, 1]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(
            &one[0].1,
            basis_p(&t, 3).unwrap().get(&w(&t, "aab")).unwrap()
        );
        let bp = basis_b_prime(&t, 6).unwrap();
        for total in 1..=6u32 {
            for a in 0..=total {
                let class = b_prime_gram_schmidt(&t, &[a, total - a]).unwrap();
                for (l, p) in class {
                    assert_eq!(bp.get(&l).unwrap(), &p, "{}", t.alphabet().format_word(&l));
                }
            }
        }
        let three = b_prime_gram_schmidt(&t, &[3, 2]).unwrap();
        let labels: Vec<String> = three
            .iter()
            .map(|(l, _)| t.alphabet().format_word(l))
            .collect();
        assert_eq!(labels, ["aaabb", "aabab"]);
    }

    #[test]
    fn characterization_examples() {
        let t = ab(4);
        let bp = basis_b_prime(&t, 4).unwrap();
        let ab_word = w(&t, "ab");
        let b_ab = bp.get(&ab_word).unwrap();
        assert!(characterize_b_prime(&t, b_ab, &ab_word).unwrap());
        assert!(!characterize_b_prime(&t, &b_ab.scale(&integer(2)), &ab_word).unwrap());
        let p = basis_p(&t, 4).unwrap();
        for l in lyndon_words_up_to_grade(t.alphabet(), 4).unwrap() {
            let pl = p.get(&l).unwrap();
            let others = pl
                .support()
                .filter(|u| *u != &l && is_lyndon(u).unwrap())
                .count();
            assert_eq!(characterize_b_prime(&t, pl, &l).unwrap(), others == 0);
            assert!(characterize_b_prime(&t, bp.get(&l).unwrap(), &l).unwrap());
        }
    }

    #[test]
    fn characterization_agrees_with_equality() {
        // P_ℓ at degree 5 for multidegree (3,2) has two Lyndon words in class;
        // the smaller one keeps the larger in its support.
        let t = ab(5);
        let p = basis_p(&t, 5).unwrap();
        let bp = basis_b_prime(&t, 5).unwrap();
        for l in lyndon_words_up_to_grade(t.alphabet(), 5).unwrap() {
            let pl = p.get(&l).unwrap();
            assert_eq!(
                characterize_b_prime(&t, pl, &l).unwrap(),
                pl == bp.get(&l).unwrap()
            );
        }
    }

    #[test]
    fn multiplicativity_small_grades() {
        let t = ab(6);
        let s = basis_s_closed(&t, 6).unwrap();
        let p = basis_p(&t, 6).unwrap();
        assert!(multiplicativity_check(&s, &p, 6, 2)
            .unwrap()
            .is_multiplicative());
        assert!(matches!(
            multiplicativity_check(&s, &p, 6, 1),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn duality_of_classical_pair() {
        let t = ab(5);
        let s = basis_s_closed(&t, 5).unwrap();
        let p = basis_p(&t, 5).unwrap();
        assert!(check_duality(&s, &p, 5).unwrap().is_empty());
        let broken = BasisTable::from_elements(Family::S, t.alphabet().clone(), 5, |x| {
            Ok(s.get(x).unwrap().scale(&integer(2)))
        })
        .unwrap();
        assert!(!check_duality(&broken, &p, 5).unwrap().is_empty());
    }

    #[test]
    fn ordered_product_uses_descending_factors() {
        let t = ab(3);
        let p = basis_p(&t, 3).unwrap();
        let beta = word_to_multiindex(&w(&t, "bab"));
        assert_eq!(
            &p.ordered_product(&beta).unwrap(),
            p.get(&w(&t, "bab")).unwrap()
        );
    }

    #[test]
    fn nat_plus_p_s_not_triangular_in_ascending_order() {
        let n = bialg(SemigroupSpec::NatPlus, LetterOrder::Default, 3);
        let ps = basis_p_s(&n, 3).unwrap();
        let y2 = w(&n, "y2");
        assert!(!is_upper_unitriangular(ps.get(&y2).unwrap(), &y2));
        let r = bialg(SemigroupSpec::NatPlus, LetterOrder::ReverseGrade, 3);
        let ps = basis_p_s(&r, 3).unwrap();
        let y2 = w(&r, "y2");
        assert!(is_upper_unitriangular(ps.get(&y2).unwrap(), &y2));
    }

    #[test]
    fn family_names() {
        for f in [
            Family::PS,
            Family::TS,
            Family::P,
            Family::S,
            Family::Sprime,
            Family::Bprime,
        ] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(f.dual().dual(), f);
        }
        assert!("Q".parse::<Family>().is_err());
    }
}
