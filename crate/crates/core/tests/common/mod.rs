//! Independent oracles shared by the integration tests. None of these go
//! through the library's product recursions.
#![allow(dead_code)]

use std::sync::Arc;

use combialg::poly::{integer, rational};
use combialg::{Alphabet, Bialgebra, LetterOrder, Poly, Rational, SemigroupSpec, Word};

pub fn bialgebra(spec: SemigroupSpec, order: LetterOrder, n: u32) -> Bialgebra {
    Bialgebra::new(Arc::new(Alphabet::new(spec, &order, n).unwrap()))
}

pub fn two_letters(n: u32) -> Bialgebra {
    bialgebra(SemigroupSpec::trivial(&["a", "b"]), LetterOrder::Default, n)
}

pub fn nat_plus(n: u32) -> Bialgebra {
    bialgebra(SemigroupSpec::NatPlus, LetterOrder::Default, n)
}

pub fn nat_vec(n: u32) -> Bialgebra {
    bialgebra(SemigroupSpec::nat_vec(&["x", "y"]), LetterOrder::Default, n)
}

pub fn word(b: &Bialgebra, s: &str) -> Word {
    b.alphabet().parse_word(s).unwrap()
}

pub fn poly(b: &Bialgebra, terms: &[(&str, i64)]) -> Poly {
    Poly::from_terms(terms.iter().map(|(w, c)| (word(b, w), integer(*c))))
}

/// All words of grade `≤ n`.
pub fn words_up_to(b: &Bialgebra, n: u32) -> Vec<Word> {
    (0..=n)
        .flat_map(|g| b.alphabet().words_of_grade(g).unwrap().to_vec())
        .collect()
}

/// Shuffle by enumerating which positions of the result come from `u`.
pub fn interleavings(u: &Word, v: &Word) -> Poly {
    let (m, n) = (u.len(), v.len());
    let mut out = Poly::zero();
    for mask in 0u32..(1 << (m + n)) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut letters = Vec::with_capacity(m + n);
        for pos in 0..m + n {
            if mask & (1 << pos) != 0 {
                letters.push(u.letters()[i]);
                i += 1;
            } else {
                letters.push(v.letters()[j]);
                j += 1;
            }
        }
        out.add_term(Word::from_letters(letters), integer(1));
    }
    out
}

/// Quasi-shuffle over `(ℕ⁺, +)` by recursion on the last letters:
/// `ua ⧺ vb = (u ⧺ vb)a + (ua ⧺ v)b + (u ⧺ v)(a+b)`.
pub fn quasi_shuffle(b: &Bialgebra, u: &Word, v: &Word) -> Poly {
    let a = b.alphabet();
    if u.is_empty() {
        return Poly::word(v.clone());
    }
    if v.is_empty() {
        return Poly::word(u.clone());
    }
    let (u0, x) = (u.slice(0, u.len() - 1), u.slice(u.len() - 1, u.len()));
    let (v0, y) = (v.slice(0, v.len() - 1), v.slice(v.len() - 1, v.len()));
    let gx = a.letter_grade(x.letters()[0]);
    let gy = a.letter_grade(y.letters()[0]);
    let sum = a.word_from_labels(&[format!("y{}", gx + gy)]).unwrap();
    let append = |p: Poly, tail: &Word| {
        Poly::from_terms(p.terms().map(|(w, c)| (w.concat(tail), c.clone())))
    };
    let mut out = append(quasi_shuffle(b, &u0, v), &x);
    out = &out + &append(quasi_shuffle(b, u, &v0), &y);
    &out + &append(quasi_shuffle(b, &u0, &v0), &sum)
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ_k (−1)^{k−1}/k Σ_{j₁+…+j_k = j} y_{j₁}…y_{j_k}`.
pub fn pi1_nat_plus(b: &Bialgebra, j: u32) -> Poly {
    let mut out = Poly::zero();
    for c in compositions(j) {
        let k = c.len() as i64;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let labels: Vec<String> = c.iter().map(|p| format!("y{p}")).collect();
        out.add_term(
            b.alphabet().word_from_labels(&labels).unwrap(),
            rational(sign, k),
        );
    }
    out
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}
