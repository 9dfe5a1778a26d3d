//! Commutative graded semigroups with finite fibers.
//!
//! Three instances are supported: the trivial semigroup `X ∪ {ω}` where every
//! product is the zero `ω` (yields the shuffle bialgebra), `(ℕ⁺, +)` (stuffle)
//! and `(ℕ^(X) \ {0}, +)` over a finite alphabet. The zero is never an
//! element: products that would land on it return [`Product::Zero`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Configuration of a semigroup, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SemigroupSpec {
    Trivial { alphabet: Vec<String> },
    NatPlus,
    NatVec { alphabet: Vec<String> },
}

/// An element of a semigroup other than the zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemigroupElement {
    /// Position in the alphabet of a trivial semigroup.
    Symbol(usize),
    /// `n ≥ 1` in `(ℕ⁺, +)`.
    Nat(u32),
    /// Nonzero exponent vector in `ℕ^(X)`.
    Vector(Vec<u32>),
}

/// Result of multiplying two elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Element(SemigroupElement),
    Zero,
}

fn check_alphabet(alphabet: &[String]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidConfig("alphabet must not be empty".into()));
    }
    for (i, label) in alphabet.iter().enumerate() {
        if label.is_empty()
            || label == "1"
            || label
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '.' | ',' | '(' | ')' | '[' | ']' | '"'))
        {
            return Err(Error::InvalidConfig(format!(
                "invalid letter label `{label}`"
            )));
        }
        if alphabet[..i].contains(label) {
            return Err(Error::InvalidConfig(format!(
                "duplicate letter label `{label}`"
            )));
        }
    }
    Ok(())
}

impl SemigroupSpec {
    pub fn trivial<S: AsRef<str>>(alphabet: &[S]) -> Self {
        SemigroupSpec::Trivial {
            alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn nat_vec<S: AsRef<str>>(alphabet: &[S]) -> Self {
        SemigroupSpec::NatVec {
            alphabet: alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Parses the JSON configuration and validates it.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SemigroupSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("semigroup spec serializes")
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SemigroupSpec::Trivial { alphabet } | SemigroupSpec::NatVec { alphabet } => {
                check_alphabet(alphabet)
            }
            SemigroupSpec::NatPlus => Ok(()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SemigroupSpec::Trivial { .. } => "trivial",
            SemigroupSpec::NatPlus => "nat_plus",
            SemigroupSpec::NatVec { .. } => "nat_vec",
        }
    }

    fn check(&self, s: &SemigroupElement) -> Result<()> {
        let ok = match (self, s) {
            (SemigroupSpec::Trivial { alphabet }, SemigroupElement::Symbol(i)) => {
                *i < alphabet.len()
            }
            (SemigroupSpec::NatPlus, SemigroupElement::Nat(n)) => *n >= 1,
            (SemigroupSpec::NatVec { alphabet }, SemigroupElement::Vector(v)) => {
                v.len() == alphabet.len() && v.iter().any(|&x| x > 0)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("{s:?}")))
        }
    }

    pub fn contains(&self, s: &SemigroupElement) -> bool {
        self.check(s).is_ok()
    }

    /// The grading `ℓ_S`. Letters of the trivial semigroup all have grade 1.
    pub fn grade(&self, s: &SemigroupElement) -> Result<u32> {
        self.check(s)?;
        Ok(match s {
            SemigroupElement::Symbol(_) => 1,
            SemigroupElement::Nat(n) => *n,
            SemigroupElement::Vector(v) => v.iter().sum(),
        })
    }

    pub fn label(&self, s: &SemigroupElement) -> Result<String> {
        self.check(s)?;
        Ok(match (self, s) {
            (SemigroupSpec::Trivial { alphabet }, SemigroupElement::Symbol(i)) => {
                alphabet[*i].clone()
            }
            (_, SemigroupElement::Nat(n)) => format!("y{n}"),
            (_, SemigroupElement::Vector(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn parse_label(&self, label: &str) -> Result<SemigroupElement> {
        let unknown = || Error::UnknownElement(label.to_string());
        let element = match self {
            SemigroupSpec::Trivial { alphabet } => SemigroupElement::Symbol(
                alphabet
                    .iter()
                    .position(|a| a == label)
                    .ok_or_else(unknown)?,
            ),
            SemigroupSpec::NatPlus => {
                let digits = label.strip_prefix('y').ok_or_else(unknown)?;
                SemigroupElement::Nat(digits.parse().map_err(|_| unknown())?)
            }
            SemigroupSpec::NatVec { .. } => {
                let inner = label
                    .strip_prefix('(')
                    .and_then(|l| l.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                let v = inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| unknown())?;
                SemigroupElement::Vector(v)
            }
        };
        self.check(&element).map_err(|_| unknown())?;
        Ok(element)
    }

    /// Canonical order on elements: by grade, then the index for symbols, the
    /// value for integers and descending lexicographic exponents for vectors
    /// (so `(2,0)` precedes `(1,1)` precedes `(0,2)`).
    pub fn canonical_cmp(&self, a: &SemigroupElement, b: &SemigroupElement) -> Ordering {
        let ga = self.grade(a).unwrap_or(0);
        let gb = self.grade(b).unwrap_or(0);
        ga.cmp(&gb).then_with(|| match (a, b) {
            (SemigroupElement::Symbol(i), SemigroupElement::Symbol(j)) => i.cmp(j),
            (SemigroupElement::Nat(m), SemigroupElement::Nat(n)) => m.cmp(n),
            (SemigroupElement::Vector(u), SemigroupElement::Vector(v)) => v.cmp(u),
            _ => Ordering::Equal,
        })
    }

    pub fn product(&self, s1: &SemigroupElement, s2: &SemigroupElement) -> Result<Product> {
        self.check(s1)?;
        self.check(s2)?;
        Ok(match (s1, s2) {
            (SemigroupElement::Symbol(_), SemigroupElement::Symbol(_)) => Product::Zero,
            (SemigroupElement::Nat(m), SemigroupElement::Nat(n)) => {
                Product::Element(SemigroupElement::Nat(m + n))
            }
            (SemigroupElement::Vector(u), SemigroupElement::Vector(v)) => Product::Element(
                SemigroupElement::Vector(u.iter().zip(v).map(|(a, b)| a + b).collect()),
            ),
            _ => unreachable!("both elements checked against the same spec"),
        })
    }

    /// All ordered pairs `(s₁, s₂)` with `s₁·s₂ = s`, sorted by the canonical
    /// order of `s₁`.
    pub fn decompositions(
        &self,
        s: &SemigroupElement,
    ) -> Result<Vec<(SemigroupElement, SemigroupElement)>> {
        self.check(s)?;
        let mut out = match s {
            SemigroupElement::Symbol(_) => Vec::new(),
            SemigroupElement::Nat(n) => (1..*n)
                .map(|p| (SemigroupElement::Nat(p), SemigroupElement::Nat(n - p)))
                .collect(),
            SemigroupElement::Vector(v) => {
                let mut pairs = Vec::new();
                for beta in bounded_vectors(v) {
                    if beta.iter().all(|&x| x == 0) || &beta == v {
                        continue;
                    }
                    let rest = v.iter().zip(&beta).map(|(a, b)| a - b).collect();
                    pairs.push((
                        SemigroupElement::Vector(beta),
                        SemigroupElement::Vector(rest),
                    ));
                }
                pairs
            }
        };
        out.sort_by(|a, b| self.canonical_cmp(&a.0, &b.0));
        Ok(out)
    }

    /// The finite fiber `S_n` in canonical order.
    pub fn elements_of_grade(&self, n: u32) -> Vec<SemigroupElement> {
        match self {
            SemigroupSpec::Trivial { alphabet } => {
                if n == 1 {
                    (0..alphabet.len()).map(SemigroupElement::Symbol).collect()
                } else {
                    Vec::new()
                }
            }
            SemigroupSpec::NatPlus => {
                if n >= 1 {
                    vec![SemigroupElement::Nat(n)]
                } else {
                    Vec::new()
                }
            }
            SemigroupSpec::NatVec { alphabet } => {
                if n == 0 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                compositions_desc(n, alphabet.len(), &mut Vec::new(), &mut out);
                out.into_iter().map(SemigroupElement::Vector).collect()
            }
        }
    }

    /// Elements of grade `1..=max_grade` in canonical order.
    pub fn elements_up_to_grade(&self, max_grade: u32) -> Vec<SemigroupElement> {
        (1..=max_grade)
            .flat_map(|g| self.elements_of_grade(g))
            .collect()
    }
}

/// All vectors `β` with `0 ≤ β ≤ v` componentwise.
fn bounded_vectors(v: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &bound in v {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Weak compositions of `n` into `parts` entries, first entry descending.
fn compositions_desc(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(n);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for x in (0..=n).rev() {
        prefix.push(x);
        compositions_desc(n - x, parts - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SemigroupElement::*;

    fn xy() -> SemigroupSpec {
        SemigroupSpec::nat_vec(&["x", "y"])
    }

    #[test]
    fn products() {
        let t = SemigroupSpec::trivial(&["a", "b"]);
        assert_eq!(t.product(&Symbol(0), &Symbol(1)).unwrap(), Product::Zero);
        assert_eq!(
            SemigroupSpec::NatPlus.product(&Nat(2), &Nat(3)).unwrap(),
            Product::Element(Nat(5))
        );
        assert_eq!(
            xy().product(&Vector(vec![1, 0]), &Vector(vec![0, 2]))
                .unwrap(),
            Product::Element(Vector(vec![1, 2]))
        );
        assert!(matches!(
            t.product(&Symbol(0), &Symbol(7)),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            t.product(&Nat(1), &Symbol(0)),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn decompositions_examples() {
        let t = SemigroupSpec::trivial(&["a", "b"]);
        assert!(t.decompositions(&Symbol(0)).unwrap().is_empty());
        assert_eq!(
            SemigroupSpec::NatPlus.decompositions(&Nat(4)).unwrap(),
            vec![(Nat(1), Nat(3)), (Nat(2), Nat(2)), (Nat(3), Nat(1))]
        );
        assert_eq!(
            xy().decompositions(&Vector(vec![1, 1])).unwrap(),
            vec![
                (Vector(vec![1, 0]), Vector(vec![0, 1])),
                (Vector(vec![0, 1]), Vector(vec![1, 0]))
            ]
        );
    }

    #[test]
    fn fibers() {
        let t = SemigroupSpec::trivial(&["a", "b"]);
        assert_eq!(t.elements_of_grade(1), vec![Symbol(0), Symbol(1)]);
        assert!(t.elements_of_grade(2).is_empty());
        assert_eq!(SemigroupSpec::NatPlus.elements_of_grade(3), vec![Nat(3)]);
        assert_eq!(
            xy().elements_of_grade(2),
            vec![Vector(vec![2, 0]), Vector(vec![1, 1]), Vector(vec![0, 2])]
        );
    }

    #[test]
    fn labels_round_trip() {
        for spec in [
            SemigroupSpec::trivial(&["a", "b"]),
            SemigroupSpec::NatPlus,
            xy(),
        ] {
            for s in spec.elements_up_to_grade(3) {
                let label = spec.label(&s).unwrap();
                assert_eq!(spec.parse_label(&label).unwrap(), s);
            }
        }
        assert!(SemigroupSpec::NatPlus.parse_label("y0").is_err());
        assert!(xy().parse_label("(0,0)").is_err());
    }

    #[test]
    fn json_config() {
        let spec = SemigroupSpec::from_json(r#"{"kind":"trivial","alphabet":["a","b"]}"#).unwrap();
        assert_eq!(spec, SemigroupSpec::trivial(&["a", "b"]));
        assert_eq!(
            SemigroupSpec::from_json(r#"{"kind":"nat_plus"}"#).unwrap(),
            SemigroupSpec::NatPlus
        );
        assert_eq!(
            SemigroupSpec::from_json(r#"{"kind":"nat_vec","alphabet":["x","y"]}"#).unwrap(),
            xy()
        );
        assert!(SemigroupSpec::from_json(r#"{"kind":"trivial","alphabet":["a","a"]}"#).is_err());
        assert!(SemigroupSpec::from_json(r#"{"kind":"free"}"#).is_err());
    }

    #[test]
    fn graded_decomposition_laws() {
        for spec in [
            SemigroupSpec::trivial(&["a", "b", "c"]),
            SemigroupSpec::NatPlus,
            xy(),
        ] {
            for n in 1..=6 {
                for s in spec.elements_of_grade(n) {
                    assert_eq!(spec.grade(&s).unwrap(), n);
                    let decs = spec.decompositions(&s).unwrap();
                    for (s1, s2) in &decs {
                        let g1 = spec.grade(s1).unwrap();
                        let g2 = spec.grade(s2).unwrap();
                        assert!(g1 >= 1 && g2 >= 1);
                        assert_eq!(g1 + g2, n);
                        assert_eq!(spec.product(s1, s2).unwrap(), Product::Element(s.clone()));
                        assert!(decs.contains(&(s2.clone(), s1.clone())));
                    }
                }
            }
        }
    }

    #[test]
    fn local_finiteness() {
        // k-fold factorizations need k ≤ grade(s) since every grade is ≥ 1.
        fn count_factorizations(spec: &SemigroupSpec, s: &SemigroupElement) -> usize {
            1 + spec
                .decompositions(s)
                .unwrap()
                .iter()
                .map(|(_, rest)| count_factorizations(spec, rest))
                .sum::<usize>()
        }
        assert_eq!(count_factorizations(&SemigroupSpec::NatPlus, &Nat(5)), 16);
        assert_eq!(count_factorizations(&xy(), &Vector(vec![1, 1])), 3);
    }

    #[test]
    fn commutative_and_associative() {
        for spec in [
            SemigroupSpec::trivial(&["a", "b"]),
            SemigroupSpec::NatPlus,
            xy(),
        ] {
            let elems = spec.elements_up_to_grade(3);
            let mul = |a: &Product, b: &SemigroupElement| match a {
                Product::Zero => Product::Zero,
                Product::Element(a) => spec.product(a, b).unwrap(),
            };
            for a in &elems {
                for b in &elems {
                    assert_eq!(spec.product(a, b).unwrap(), spec.product(b, a).unwrap());
                    for c in &elems {
                        let left = mul(&spec.product(a, b).unwrap(), c);
                        let right = mul(&spec.product(b, c).unwrap(), a);
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }
}
