//! Truncated Schützenberger factorization: `Σ_α S_α ⊗ B_α` against the
//! ordered product of `exp(S_ℓ ⊗ B_ℓ)` over Lyndon words, and the identity
//! map recovered from a diagonal series.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bases::{same_alphabet, BasisTable};
use crate::bialgebra::Bialgebra;
use crate::error::{Error, Result};
use crate::poly::{format_rational, Poly, Rational};
use crate::words::{Alphabet, Word};

/// Direction of the ordered product, echoed in reports.
pub const ORDER_CONVENTION: &str = "decreasing";

const DEFAULT_VIOLATION_CAP: usize = 100;

/// `(Word, Word) → ℚ` restricted to pairs of equal grade `≤ n`.
#[derive(Clone, Debug)]
pub struct TruncatedTensorSeries {
    alphabet: Arc<Alphabet>,
    grade: u32,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl PartialEq for TruncatedTensorSeries {
    fn eq(&self, other: &Self) -> bool {
        self.grade == other.grade && self.terms == other.terms
    }
}

impl TruncatedTensorSeries {
    pub fn zero(alphabet: Arc<Alphabet>, grade: u32) -> Self {
        TruncatedTensorSeries {
            alphabet,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Adds `c·(p ⊗ q)`, dropping pairs above the truncation grade.
    /// Pairs of unequal grades are rejected.
    pub fn add_pure(&mut self, p: &Poly, q: &Poly, c: &Rational) -> Result<()> {
        for (u, a) in p.terms() {
            let gu = self.alphabet.grade(u);
            if gu > self.grade {
                continue;
            }
            let ac = a * c;
            for (v, b) in q.terms() {
                let gv = self.alphabet.grade(v);
                if gv > self.grade {
                    continue;
                }
                if gu != gv {
                    return Err(Error::InvalidConfig(format!(
                        "series term {}⊗{} is not grade-diagonal",
                        self.alphabet.format_word(u),
                        self.alphabet.format_word(v)
                    )));
                }
                let key = (u.clone(), v.clone());
                let entry = self.terms.entry(key).or_insert_with(Rational::zero);
                *entry += &ac * b;
                if entry.is_zero() {
                    self.terms.remove(&(u.clone(), v.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rational {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms sorted by (grade, left word, right word).
    pub fn sorted_terms(&self) -> Vec<(&Word, &Word, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|((u, w), c)| (u, w, c)).collect();
        v.sort_by(|a, b| {
            (self.alphabet.grade(a.0), a.0, a.1).cmp(&(self.alphabet.grade(b.0), b.0, b.1))
        });
        v
    }

    /// `self − other`, term by term.
    pub fn difference(&self, other: &TruncatedTensorSeries) -> TruncatedTensorSeries {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            let entry = out.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *entry -= c;
            if entry.is_zero() {
                out.terms.remove(key);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(u, v, c)| term_json(&self.alphabet, u, v, c))
            .collect();
        json!({ "grade": self.grade, "terms": terms })
    }
}

fn term_json(alphabet: &Alphabet, u: &Word, v: &Word, c: &Rational) -> Value {
    json!({
        "left": alphabet.word_labels(u),
        "right": alphabet.word_labels(v),
        "coeff": format_rational(c),
    })
}

fn check_tables(s_table: &BasisTable, b_table: &BasisTable, n: u32) -> Result<()> {
    same_alphabet(s_table, b_table)?;
    for t in [s_table, b_table] {
        if t.max_grade() < n {
            return Err(Error::IndexMismatch(format!(
                "{} table stops at grade {}, series needs {}",
                t.family(),
                t.max_grade(),
                n
            )));
        }
    }
    Ok(())
}

/// `Σ_{grade(α) ≤ n} S_α ⊗ B_α`.
pub fn diagonal_series(
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
) -> Result<TruncatedTensorSeries> {
    check_tables(s_table, b_table, n)?;
    let mut series = TruncatedTensorSeries::zero(s_table.alphabet().clone(), n);
    for g in 0..=n {
        let (left, right) = (s_table.entries(g), b_table.entries(g));
        if left.len() != right.len() || left.iter().zip(right).any(|(s, b)| s.word != b.word) {
            return Err(Error::IndexMismatch(format!(
                "index sets differ at grade {g}"
            )));
        }
        for (s, b) in left.iter().zip(right) {
            series.add_pure(&s.element, &b.element, &Rational::one())?;
        }
    }
    Ok(series)
}

fn factorial(k: u32) -> Rational {
    Rational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * i))
}

/// Truncated `exp(x)` for a tensor `x` given as `(p, q)` with `p ⊗ q`
/// homogeneous of grade `g ≥ 1`: the pure terms `(p^{*k}/k!) ⊗ q^k` with
/// `k·g ≤ n`.
fn truncated_exp(
    bialgebra: &Bialgebra,
    p: &Poly,
    q: &Poly,
    g: u32,
    n: u32,
) -> Result<Vec<(Poly, Poly)>> {
    let mut out = vec![(Poly::one(), Poly::one())];
    let (mut left, mut right) = (Poly::one(), Poly::one());
    let mut k = 1;
    while k * g <= n {
        left = bialgebra.dual_product(&left, p)?;
        right = right.conc_mul(q);
        out.push((left.scale(&factorial(k).recip()), right.clone()));
        k += 1;
    }
    Ok(out)
}

/// `→∏_{ℓ ∈ Lyn, grade(ℓ) ≤ n} exp(S_{e_ℓ} ⊗ B_{e_ℓ})` with decreasing `ℓ`,
/// multiplied with `*` on the left factor and concatenation on the right,
/// truncated at tensor grade `n`.
pub fn ordered_exponential_product(
    bialgebra: &Bialgebra,
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
) -> Result<TruncatedTensorSeries> {
    check_tables(s_table, b_table, n)?;
    let alphabet = s_table.alphabet().clone();
    // Partial products kept as pure tensors `(left, right)` of grade ≤ n.
    let mut partial: Vec<(u32, Poly, Poly)> = vec![(0, Poly::one(), Poly::one())];
    let lyndon: Vec<_> = s_table
        .lyndon_entries()
        .into_iter()
        .filter(|e| alphabet.grade(&e.word) <= n)
        .collect();
    for s in lyndon.into_iter().rev() {
        let g = alphabet.grade(&s.word);
        let b = b_table.get(&s.word).ok_or_else(|| {
            Error::IndexMismatch(format!(
                "no {} element for {}",
                b_table.family(),
                alphabet.format_word(&s.word)
            ))
        })?;
        let factors = truncated_exp(bialgebra, &s.element, b, g, n)?;
        let mut next = Vec::new();
        for (pg, pl, pr) in &partial {
            for (k, (fl, fr)) in factors.iter().enumerate() {
                let total = pg + k as u32 * g;
                if total > n {
                    break;
                }
                if k == 0 {
                    next.push((*pg, pl.clone(), pr.clone()));
                } else {
                    next.push((total, bialgebra.dual_product(pl, fl)?, pr.conc_mul(fr)));
                }
            }
        }
        partial = next;
    }
    let mut series = TruncatedTensorSeries::zero(alphabet, n);
    for (_, l, r) in &partial {
        series.add_pure(l, r, &Rational::one())?;
    }
    Ok(series)
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub grade: u32,
    pub holds: bool,
    /// Total number of differing `(left, right)` pairs.
    pub total_violations: usize,
    /// `(left, right, diagonal − product)`, smallest first, possibly capped.
    pub violations: Vec<(Word, Word, Rational)>,
}

impl FactorizationReport {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|(u, v, c)| term_json(alphabet, u, v, c))
            .collect();
        json!({
            "grade": self.grade,
            "holds": self.holds,
            "order_convention": ORDER_CONVENTION,
            "total_violations": self.total_violations,
            "violations": violations,
        })
    }
}

/// Term-by-term comparison of the diagonal series with the ordered product.
/// Violations are capped at 100 unless `full_diff` is set.
pub fn verify_factorization(
    bialgebra: &Bialgebra,
    s_table: &BasisTable,
    b_table: &BasisTable,
    n: u32,
    full_diff: bool,
) -> Result<FactorizationReport> {
    let diagonal = diagonal_series(s_table, b_table, n)?;
    let product = ordered_exponential_product(bialgebra, s_table, b_table, n)?;
    let diff = diagonal.difference(&product);
    let sorted = diff.sorted_terms();
    let total = sorted.len();
    let cap = if full_diff {
        total
    } else {
        DEFAULT_VIOLATION_CAP.min(total)
    };
    Ok(FactorizationReport {
        grade: n,
        holds: total == 0,
        total_violations: total,
        violations: sorted
            .into_iter()
            .take(cap)
            .map(|(u, v, c)| (u.clone(), v.clone(), c.clone()))
            .collect(),
    })
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub grade: u32,
    pub holds: bool,
    /// Words `w` with `Φ(w) ≠ w`, with their image.
    pub failures: Vec<(Word, Poly)>,
}

/// Applies `Φ(w) = Σ c(u,v)·⟨u|w⟩·v` to every word of grade `≤ n` and checks
/// it returns `w`.
pub fn resolution_of_identity(series: &TruncatedTensorSeries, n: u32) -> Result<IdentityReport> {
    let alphabet = series.alphabet();
    let mut images: BTreeMap<&Word, Poly> = BTreeMap::new();
    for ((u, v), c) in &series.terms {
        images.entry(u).or_default().add_term(v.clone(), c.clone());
    }
    let mut failures = Vec::new();
    for g in 0..=n {
        for w in alphabet.words_of_grade(g)? {
            let image = images.get(w).cloned().unwrap_or_default();
            if image != Poly::word(w.clone()) {
                failures.push((w.clone(), image));
            }
        }
    }
    Ok(IdentityReport {
        grade: n,
        holds: failures.is_empty(),
        failures,
    })
}
