//! The bialgebra `(k⟨Y⟩, conc, 1, Δ_S, ε)`.
//!
//! `Δ_S` is the concatenation morphism with
//! `Δ_S(y_s) = y_s⊗1 + 1⊗y_s + Σ_{s₁·s₂=s} y_{s₁}⊗y_{s₂}`. The product dual
//! to it is obtained by transposing `Δ_S` on the relevant homogeneous
//! component; the shuffle and stuffle recursions are kept as separate,
//! independent implementations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational, Poly, Rational, TensorPoly};
use crate::semigroup::SemigroupSpec;
use crate::words::{Alphabet, Word};

/// `(u, v) ↦ Σ c·w` over the words `w` of one grade with `⟨Δ_S(w)|u⊗v⟩ = c`.
type ProductTable = HashMap<(Word, Word), Vec<(Word, Rational)>>;

struct Inner {
    alphabet: Arc<Alphabet>,
    coproducts: Mutex<HashMap<Word, Arc<TensorPoly>>>,
    product_tables: Mutex<HashMap<u32, Arc<ProductTable>>>,
    augmentation_powers: Mutex<Vec<GradedEndo>>,
}

/// Handle on the bialgebra of an alphabet. Cheap to clone; memo tables are
/// shared and guarded.
#[derive(Clone)]
pub struct Bialgebra {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for Bialgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Bialgebra")
            .field("alphabet", &self.inner.alphabet)
            .finish()
    }
}

impl Bialgebra {
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        Bialgebra {
            inner: Arc::new(Inner {
                alphabet,
                coproducts: Mutex::new(HashMap::new()),
                product_tables: Mutex::new(HashMap::new()),
                augmentation_powers: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.inner.alphabet
    }

    fn check_poly(&self, p: &Poly) -> Result<()> {
        match p.max_grade(self.alphabet()) {
            Some(g) => self.alphabet().check_grade(g),
            None => Ok(()),
        }
    }

    fn letter_coproduct(&self, l: crate::words::Letter) -> TensorPoly {
        let y = Word::letter(l);
        let mut t = TensorPoly::monomial(y.clone(), Word::empty(), Rational::one());
        t.add_term(Word::empty(), y, Rational::one());
        for &(a, b) in self.alphabet().decompositions(l) {
            t.add_term(Word::letter(a), Word::letter(b), Rational::one());
        }
        t
    }

    /// `Δ_S(w)` for a single word, memoized.
    pub fn coproduct_word(&self, w: &Word) -> Arc<TensorPoly> {
        if let Some(t) = self.inner.coproducts.lock().unwrap().get(w) {
            return t.clone();
        }
        let t = match w.letters().split_first() {
            None => TensorPoly::one(),
            Some((&first, rest)) => {
                let rest = self.coproduct_word(&Word::from_letters(rest.to_vec()));
                self.letter_coproduct(first).tensor_conc_mul(&rest)
            }
        };
        let t = Arc::new(t);
        self.inner
            .coproducts
            .lock()
            .unwrap()
            .insert(w.clone(), t.clone());
        t
    }

    pub fn delta(&self, p: &Poly) -> Result<TensorPoly> {
        self.check_poly(p)?;
        let mut out = TensorPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.coproduct_word(w), c);
        }
        Ok(out)
    }

    /// `ε(p)`: the coefficient of the empty word.
    pub fn counit(&self, p: &Poly) -> Rational {
        p.constant_term()
    }

    /// `Δ₊(p) = Δ(p) − p⊗1 − 1⊗p` on the augmentation ideal.
    pub fn reduced_coproduct(&self, p: &Poly) -> Result<TensorPoly> {
        let eps = self.counit(p);
        if !eps.is_zero() {
            return Err(Error::NotAugmentationKernel(eps.to_string()));
        }
        let primitive_part =
            &TensorPoly::pure(p, &Poly::one()) + &TensorPoly::pure(&Poly::one(), p);
        Ok(&self.delta(p)? - &primitive_part)
    }

    pub fn is_primitive(&self, p: &Poly) -> Result<bool> {
        let expected = &TensorPoly::pure(p, &Poly::one()) + &TensorPoly::pure(&Poly::one(), p);
        Ok(self.delta(p)? == expected)
    }

    fn product_table(&self, grade: u32) -> Result<Arc<ProductTable>> {
        self.alphabet().check_grade(grade)?;
        if let Some(t) = self.inner.product_tables.lock().unwrap().get(&grade) {
            return Ok(t.clone());
        }
        let mut table: ProductTable = HashMap::new();
        for w in self.alphabet().words_of_grade(grade)? {
            for ((u, v), c) in self.coproduct_word(w).terms() {
                table
                    .entry((u.clone(), v.clone()))
                    .or_default()
                    .push((w.clone(), c.clone()));
            }
        }
        let table = Arc::new(table);
        self.inner
            .product_tables
            .lock()
            .unwrap()
            .insert(grade, table.clone());
        Ok(table)
    }

    /// The product dual to `Δ_S`: `⟨p*q | w⟩ = ⟨p⊗q | Δ_S(w)⟩`.
    pub fn dual_product(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        let alphabet = self.alphabet();
        let mut out = Poly::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                let table = self.product_table(alphabet.grade(u) + alphabet.grade(v))?;
                if let Some(words) = table.get(&(u.clone(), v.clone())) {
                    let ab = a * b;
                    for (w, c) in words {
                        out.add_term(w.clone(), &ab * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `p^{*k}`.
    pub fn dual_power(&self, p: &Poly, k: u32) -> Result<Poly> {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = self.dual_product(&acc, p)?;
        }
        Ok(acc)
    }

    /// Shuffle product by the interleaving recursion.
    pub fn shuffle(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        self.check_poly(u)?;
        self.check_poly(v)?;
        Ok(shuffle(u, v))
    }

    /// Stuffle product by its recursion; `(ℕ⁺, +)` only.
    pub fn stuffle(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        if *self.alphabet().spec() != SemigroupSpec::NatPlus {
            return Err(Error::WrongSemigroup {
                op: "stuffle",
                expected: "nat_plus",
            });
        }
        let alphabet = self.alphabet();
        let mut out = Poly::zero();
        for (x, a) in u.terms() {
            for (y, b) in v.terms() {
                alphabet.check_grade(alphabet.grade(x) + alphabet.grade(y))?;
                let mut memo = HashMap::new();
                let r = stuffle_words(alphabet, x.letters(), y.letters(), &mut memo);
                out.add_scaled(&r, &(a * b));
            }
        }
        Ok(out)
    }

    /// `f * g = μ ∘ (f⊗g) ∘ Δ_S`, evaluated word by word.
    pub fn convolve(&self, f: &GradedEndo, g: &GradedEndo) -> GradedEndo {
        let bialgebra = self.clone();
        convolution(f, g, move || Some(bialgebra.clone()))
    }

    /// `I₊^{*k}`, with `I₊^{*0} = η∘ε`. Memoized.
    pub fn augmentation_power(&self, k: usize) -> GradedEndo {
        let mut powers = self.inner.augmentation_powers.lock().unwrap();
        if powers.is_empty() {
            powers.push(GradedEndo::unit_counit());
        }
        while powers.len() <= k {
            let prev = powers.last().unwrap().clone();
            // the cache lives inside the bialgebra, so hold it weakly
            let weak = Arc::downgrade(&self.inner);
            let next = convolution(&GradedEndo::augmentation(), &prev, move || {
                weak.upgrade().map(|inner| Bialgebra { inner })
            });
            powers.push(next);
        }
        powers[k].clone()
    }

    /// `π₁ = Σ_{k≥1} (−1)^{k−1}/k · I₊^{*k}`, the projector onto primitives.
    ///
    /// On a word of grade `m` only `k ≤ m` contribute, since `I₊^{*k}` kills
    /// every grade below `k` (letters have grade at least 1).
    pub fn pi1(&self, p: &Poly, truncation_grade: u32) -> Result<Poly> {
        self.alphabet().check_grade(truncation_grade)?;
        if let Some(g) = p.max_grade(self.alphabet()) {
            if g > truncation_grade {
                return Err(Error::GradeOutOfRange {
                    grade: g,
                    max: truncation_grade,
                });
            }
        }
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            let m = self.alphabet().grade(w) as usize;
            for k in 1..=m {
                let coeff = log_coefficient(k as i64) * c;
                out.add_scaled(&self.augmentation_power(k).apply_word(w)?, &coeff);
            }
        }
        Ok(out)
    }
}

fn convolution<H>(f: &GradedEndo, g: &GradedEndo, handle: H) -> GradedEndo
where
    H: Fn() -> Option<Bialgebra> + Send + Sync + 'static,
{
    let (f, g) = (f.clone(), g.clone());
    let name = format!("({} * {})", f.name(), g.name());
    GradedEndo::from_fn(name, move |w| {
        let bialgebra = handle()
            .ok_or_else(|| Error::InvalidConfig("convolution outlived its bialgebra".into()))?;
        let mut out = Poly::zero();
        for ((w1, w2), c) in bialgebra.coproduct_word(w).terms() {
            let left = f.apply_word(w1)?;
            if left.is_zero() {
                continue;
            }
            let right = g.apply_word(w2)?;
            out.add_scaled(&left.conc_mul(&right), c);
        }
        Ok(out)
    })
}

fn shuffle_words(u: &[u16], v: &[u16], memo: &mut HashMap<(usize, usize), Poly>) -> Poly {
    let key = (u.len(), v.len());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let result = if u.is_empty() {
        Poly::word(Word::from_letters(v.to_vec()))
    } else if v.is_empty() {
        Poly::word(Word::from_letters(u.to_vec()))
    } else {
        let mut out = prepend(u[0], &shuffle_words(&u[1..], v, memo));
        let right = prepend(v[0], &shuffle_words(u, &v[1..], memo));
        out.add_scaled(&right, &Rational::one());
        out
    };
    memo.insert(key, result.clone());
    result
}

fn stuffle_words(
    alphabet: &Alphabet,
    u: &[u16],
    v: &[u16],
    memo: &mut HashMap<(usize, usize), Poly>,
) -> Poly {
    let key = (u.len(), v.len());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let result = if u.is_empty() {
        Poly::word(Word::from_letters(v.to_vec()))
    } else if v.is_empty() {
        Poly::word(Word::from_letters(u.to_vec()))
    } else {
        let mut out = prepend(u[0], &stuffle_words(alphabet, &u[1..], v, memo));
        out.add_scaled(
            &prepend(v[0], &stuffle_words(alphabet, u, &v[1..], memo)),
            &Rational::one(),
        );
        let sum = alphabet
            .product(u[0], v[0])
            .expect("grade of the sum letter was checked against the truncation");
        out.add_scaled(
            &prepend(sum, &stuffle_words(alphabet, &u[1..], &v[1..], memo)),
            &Rational::one(),
        );
        out
    };
    memo.insert(key, result.clone());
    result
}

fn prepend(letter: u16, p: &Poly) -> Poly {
    let head = Word::letter(letter);
    Poly::from_terms(p.terms().map(|(w, c)| (head.concat(w), c.clone())))
}

/// Shuffle product of two polynomials (alphabet-agnostic).
pub fn shuffle(u: &Poly, v: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (x, a) in u.terms() {
        for (y, b) in v.terms() {
            let mut memo = HashMap::new();
            out.add_scaled(
                &shuffle_words(x.letters(), y.letters(), &mut memo),
                &(a * b),
            );
        }
    }
    out
}

/// `p^{⧢k}`.
pub fn shuffle_power(p: &Poly, k: u32) -> Poly {
    (0..k).fold(Poly::one(), |acc, _| shuffle(&acc, p))
}

type EvalFn = dyn Fn(&Word) -> Result<Poly> + Send + Sync;

struct EndoInner {
    name: String,
    eval: Box<EvalFn>,
    memo: Mutex<HashMap<Word, Poly>>,
}

/// A degree-preserving linear endomorphism of `k⟨Y⟩`, given on words and
/// memoized per word.
#[derive(Clone)]
pub struct GradedEndo {
    inner: Arc<EndoInner>,
}

impl std::fmt::Debug for GradedEndo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedEndo({})", self.inner.name)
    }
}

impl GradedEndo {
    pub fn from_fn<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&Word) -> Result<Poly> + Send + Sync + 'static,
    {
        GradedEndo {
            inner: Arc::new(EndoInner {
                name: name.into(),
                eval: Box::new(eval),
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn identity() -> Self {
        GradedEndo::from_fn("Id", |w| Ok(Poly::word(w.clone())))
    }

    /// `I₊`, the projection onto the augmentation ideal along `k·1`.
    pub fn augmentation() -> Self {
        GradedEndo::from_fn("I+", |w| {
            Ok(if w.is_empty() {
                Poly::zero()
            } else {
                Poly::word(w.clone())
            })
        })
    }

    /// `η∘ε`, the unit for convolution.
    pub fn unit_counit() -> Self {
        GradedEndo::from_fn("eta.eps", |w| {
            Ok(if w.is_empty() {
                Poly::one()
            } else {
                Poly::zero()
            })
        })
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn apply_word(&self, w: &Word) -> Result<Poly> {
        if let Some(p) = self.inner.memo.lock().unwrap().get(w) {
            return Ok(p.clone());
        }
        let p = (self.inner.eval)(w)?;
        self.inner.memo.lock().unwrap().insert(w.clone(), p.clone());
        Ok(p)
    }

    /// Applies to `p`, which must live in grades `≤ truncation_grade`.
    pub fn apply(&self, alphabet: &Alphabet, p: &Poly, truncation_grade: u32) -> Result<Poly> {
        if let Some(g) = p.max_grade(alphabet) {
            if g > truncation_grade {
                return Err(Error::GradeOutOfRange {
                    grade: g,
                    max: truncation_grade,
                });
            }
        }
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(out)
    }
}

/// Coefficient `(−1)^{n−1}/n` used by `π₁`, exposed for reports.
pub fn log_coefficient(n: i64) -> Rational {
    let sign = if n % 2 == 1 { 1 } else { -1 };
    rational(sign, n)
}
