//! Noncommutative polynomials and double polynomials with exact rational
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` (or `p` when `q = 1`).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let parsed = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{t}`")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{t}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(
            t.parse()
                .map_err(|_| Error::Parse(format!("bad rational `{t}`")))?,
        )
    };
    Ok(parsed)
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Finitely supported `Word → ℚ`. Zero coefficients are never stored, so
/// structural equality is equality of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The empty word `1_{Y*}`.
    pub fn one() -> Self {
        Poly::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Poly::monomial(w, Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Bilinear extension of concatenation.
    pub fn conc_mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.conc_mul(self))
    }

    /// `[p, q] = pq − qp`.
    pub fn bracket(&self, other: &Poly) -> Poly {
        &self.conc_mul(other) - &other.conc_mul(self)
    }

    /// `Σ_w ⟨p|w⟩⟨q|w⟩`, words being orthonormal.
    pub fn pairing(&self, other: &Poly) -> Rational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(w, a)| large.terms.get(w).map(|b| a * b))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    pub fn homogeneous_component(&self, alphabet: &Alphabet, n: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| alphabet.grade(w) == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest grade present, `None` for the zero polynomial.
    pub fn max_grade(&self, alphabet: &Alphabet) -> Option<u32> {
        self.terms.keys().map(|w| alphabet.grade(w)).max()
    }

    pub fn is_homogeneous(&self, alphabet: &Alphabet) -> bool {
        let mut grades = self.terms.keys().map(|w| alphabet.grade(w));
        match grades.next() {
            None => true,
            Some(g) => grades.all(|h| h == g),
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Terms sorted by grade, then word order.
    pub fn sorted_terms<'a>(&'a self, alphabet: &Alphabet) -> Vec<(&'a Word, &'a Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| alphabet.grade(w));
        v
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms(alphabet)
            .into_iter()
            .map(|(w, c)| json!({"word": alphabet.word_labels(w), "coeff": format_rational(c)}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(alphabet: &Alphabet, value: &Value) -> Result<Poly> {
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a `terms` array".into()))?;
        let mut p = Poly::zero();
        for t in terms {
            let labels: Vec<String> = t
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term needs a `word` array".into()))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Parse("letter labels are strings".into()))
                })
                .collect::<Result<_>>()?;
            let coeff = match t.get("coeff") {
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(n)) => parse_rational(&n.to_string())?,
                None => Rational::one(),
                _ => return Err(Error::Parse("`coeff` must be a string `p/q`".into())),
            };
            p.add_term(alphabet.word_from_labels(&labels)?, coeff);
        }
        Ok(p)
    }

    /// Human-readable form such as `2·abab + 4·aabb`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.sorted_terms(alphabet).into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let word = alphabet.format_word(w);
            if abs.is_one() {
                out.push_str(&word);
            } else if w.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                out.push_str(&format!("{}·{}", format_rational(&abs), word));
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.conc_mul(rhs)
    }
}

/// Finitely supported `(Word, Word) → ℚ`, the algebra `k⟨Y⟩ ⊗ k⟨Y⟩`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    /// `1 ⊗ 1`.
    pub fn one() -> Self {
        TensorPoly::monomial(Word::empty(), Word::empty(), Rational::one())
    }

    pub fn monomial(u: Word, v: Word, c: Rational) -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(u, v, c);
        t
    }

    /// `p ⊗ q`.
    pub fn pure(p: &Poly, q: &Poly) -> Self {
        let mut t = TensorPoly::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                t.add_term(u.clone(), v.clone(), a * b);
            }
        }
        t
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Rational) {
        add_into(&mut self.terms, (u, v), c);
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Rational) {
        for ((u, v), d) in &other.terms {
            self.add_term(u.clone(), v.clone(), d * c);
        }
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rational {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> TensorPoly {
        let mut out = TensorPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Componentwise concatenation, extended bilinearly.
    pub fn tensor_conc_mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((u1, v1), a) in &self.terms {
            for ((u2, v2), b) in &other.terms {
                out.add_term(u1.concat(u2), v1.concat(v2), a * b);
            }
        }
        out
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|((u, w), _)| (alphabet.grade(u) + alphabet.grade(w), alphabet.grade(u)));
        let terms: Vec<Value> = v
            .into_iter()
            .map(|((u, w), c)| {
                json!({
                    "left": alphabet.word_labels(u),
                    "right": alphabet.word_labels(w),
                    "coeff": format_rational(c),
                })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|((u, w), _)| {
            (
                alphabet.grade(u) + alphabet.grade(w),
                std::cmp::Reverse(alphabet.grade(u)),
            )
        });
        v.into_iter()
            .map(|((u, w), c)| {
                let t = format!("{}⊗{}", alphabet.format_word(u), alphabet.format_word(w));
                if c.is_one() {
                    t
                } else {
                    format!("{}·{}", format_rational(c), t)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &TensorPoly {
    type Output = TensorPoly;
    fn add(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &TensorPoly {
    type Output = TensorPoly;
    fn sub(self, rhs: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &TensorPoly {
    type Output = TensorPoly;
    fn mul(self, rhs: &TensorPoly) -> TensorPoly {
        self.tensor_conc_mul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupSpec;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::with_default_order(SemigroupSpec::trivial(&["a", "b"]), 8).unwrap()
    }

    fn p(a: &Alphabet, terms: &[(&str, i64)]) -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(w, c)| (a.parse_word(w).unwrap(), integer(*c))),
        )
    }

    #[test]
    fn conc_mul_examples() {
        let a = ab();
        assert_eq!(
            p(&a, &[("a", 1), ("b", 1)]).conc_mul(&p(&a, &[("a", 1)])),
            p(&a, &[("aa", 1), ("ba", 1)])
        );
        let x = p(&a, &[("ab", 1), ("ba", -1)]);
        assert_eq!(x.conc_mul(&Poly::one()), x);
        assert_eq!(
            x.conc_mul(&x),
            p(&a, &[("abab", 1), ("abba", -1), ("baab", -1), ("baba", 1)])
        );
    }

    #[test]
    fn pairing_examples() {
        let a = ab();
        assert_eq!(
            p(&a, &[("ab", 1)]).pairing(&p(&a, &[("ab", 1)])),
            integer(1)
        );
        assert_eq!(
            p(&a, &[("ab", 1), ("ba", 1)]).pairing(&p(&a, &[("ab", 1), ("ba", -1)])),
            integer(0)
        );
        assert_eq!(p(&a, &[("ab", 3)]).pairing(&Poly::zero()), integer(0));
    }

    #[test]
    fn homogeneous_components() {
        let n = Alphabet::with_default_order(SemigroupSpec::NatPlus, 4).unwrap();
        let x = p(&n, &[("1", 1), ("y1", 1), ("y2", 1), ("y1y1", 1)]);
        assert_eq!(
            x.homogeneous_component(&n, 2),
            p(&n, &[("y2", 1), ("y1y1", 1)])
        );
        assert_eq!(x.homogeneous_component(&n, 0), Poly::one());
        let sum = (0..=4).fold(Poly::zero(), |acc, g| {
            &acc + &x.homogeneous_component(&n, g)
        });
        assert_eq!(sum, x);
    }

    #[test]
    fn zero_pruning() {
        let a = ab();
        let x = p(&a, &[("ab", 2)]);
        assert!((&x - &x).is_zero());
        assert_eq!(&x - &x, Poly::zero());
        assert!(x.scale(&integer(0)).is_zero());
    }

    #[test]
    fn tensor_examples() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let one = Word::empty();
        let left = TensorPoly::monomial(w("a"), one.clone(), integer(1));
        let right = TensorPoly::monomial(one.clone(), w("b"), integer(1));
        assert_eq!(
            left.tensor_conc_mul(&right),
            TensorPoly::monomial(w("a"), w("b"), integer(1))
        );
        let d = &left + &TensorPoly::monomial(one.clone(), w("a"), integer(1));
        let mut expected = TensorPoly::zero();
        expected.add_term(w("aa"), one.clone(), integer(1));
        expected.add_term(w("a"), w("a"), integer(2));
        expected.add_term(one.clone(), w("aa"), integer(1));
        assert_eq!(d.tensor_conc_mul(&d), expected);
        assert_eq!(d.tensor_conc_mul(&TensorPoly::one()), d);
    }

    #[test]
    fn rational_format() {
        assert_eq!(format_rational(&rational(-4, 6)), "-2/3");
        assert_eq!(format_rational(&integer(5)), "5");
        assert_eq!(parse_rational("6/-4").unwrap(), rational(-3, 2));
        assert!(parse_rational("1/0").is_err());
        let a = ab();
        let x = Poly::from_terms([
            (a.parse_word("ab").unwrap(), rational(1, 2)),
            (Word::empty(), integer(-3)),
        ]);
        assert_eq!(x.display(&a), "-3 + 1/2·ab");
        assert_eq!(Poly::from_json(&a, &x.to_json(&a)).unwrap(), x);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (prop::collection::vec(0u16..2, 0..4), -3i64..4);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter()
                    .map(|(l, c)| (Word::from_letters(l), integer(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(x.conc_mul(&y).conc_mul(&z), x.conc_mul(&y.conc_mul(&z)));
            prop_assert_eq!(x.conc_mul(&(&y + &z)), &x.conc_mul(&y) + &x.conc_mul(&z));
            prop_assert_eq!((&x + &y).conc_mul(&z), &x.conc_mul(&z) + &y.conc_mul(&z));
        }

        #[test]
        fn pairing_symmetric_bilinear(x in arb_poly(), y in arb_poly(), z in arb_poly(), c in -5i64..5) {
            prop_assert_eq!(x.pairing(&y), y.pairing(&x));
            prop_assert_eq!(x.pairing(&(&y + &z.scale(&integer(c)))), x.pairing(&y) + integer(c) * x.pairing(&z));
        }

        #[test]
        fn product_respects_grading(x in arb_poly(), y in arb_poly()) {
            let a = ab();
            let prod = x.conc_mul(&y);
            for n in 0..=6u32 {
                let mut expected = Poly::zero();
                for i in 0..=n {
                    let part = x.homogeneous_component(&a, i).conc_mul(&y.homogeneous_component(&a, n - i));
                    expected = &expected + &part;
                }
                prop_assert_eq!(prod.homogeneous_component(&a, n), expected);
            }
        }
    }
}
