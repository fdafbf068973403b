//! The tensor space `T(A)` with deconcatenation and its products:
//! concatenation, half-shuffles, shuffle, quasi-shuffle and the twisted
//! shuffle attached to a formal power series.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::combinat::permutations;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fps::Series;
use crate::freecomm::Monomial;
use crate::lincomb::LinComb;
use crate::nattrans::phi_apply;

/// A tensor `a1 ⊗ ... ⊗ an`, written as a word of monomials. The empty word
/// spans the scalars `T_0(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TensorWord(pub Vec<Monomial>);

impl TensorWord {
    pub fn empty() -> Self {
        TensorWord(Vec::new())
    }

    /// The word `a_{i1} a_{i2} ...` of single generators.
    pub fn gens(indices: &[u32]) -> Self {
        TensorWord(indices.iter().map(|&i| Monomial::gen(i)).collect())
    }

    /// The generic word `a_{from} a_{from+1} ... a_{from+len-1}`.
    pub fn generic(from: u32, len: usize) -> Self {
        TensorWord((0..len as u32).map(|i| Monomial::gen(from + i)).collect())
    }

    pub fn letters(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &TensorWord) -> TensorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TensorWord(v)
    }

    /// Total number of generator factors across all letters.
    pub fn weight(&self) -> usize {
        self.0.iter().map(Monomial::degree).sum()
    }
}

impl Ord for TensorWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for TensorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(TensorWord::empty());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Monomial>>>()
            .map(TensorWord)
    }
}

/// An element of `Sh(A)`.
pub type TElem = LinComb<TensorWord>;
/// An element of `Sh(A) ⊗ Sh(A)`.
pub type TPairElem = LinComb<(TensorWord, TensorWord)>;

pub fn word(w: TensorWord) -> TElem {
    LinComb::basis(w)
}

/// Longest word length occurring in `x` (0 for the zero element).
pub fn max_len(x: &TElem) -> usize {
    x.basis_elements().map(TensorWord::len).max().unwrap_or(0)
}

pub fn concat(x: &TElem, y: &TElem) -> TElem {
    x.bilinear(y, |u, v| LinComb::basis(u.concat(v)))
}

fn shuffle_into(x: &[Monomial], y: &[Monomial], prefix: &mut Vec<Monomial>, out: &mut TElem) {
    if x.is_empty() || y.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(x);
        w.extend_from_slice(y);
        out.add_term(TensorWord(w), Rational::one());
        return;
    }
    prefix.push(x[0].clone());
    shuffle_into(&x[1..], y, prefix, out);
    prefix.pop();
    prefix.push(y[0].clone());
    shuffle_into(x, &y[1..], prefix, out);
    prefix.pop();
}

fn qshuffle_into(x: &[Monomial], y: &[Monomial], prefix: &mut Vec<Monomial>, out: &mut TElem) {
    if x.is_empty() || y.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(x);
        w.extend_from_slice(y);
        out.add_term(TensorWord(w), Rational::one());
        return;
    }
    prefix.push(x[0].clone());
    qshuffle_into(&x[1..], y, prefix, out);
    prefix.pop();
    prefix.push(y[0].clone());
    qshuffle_into(x, &y[1..], prefix, out);
    prefix.pop();
    prefix.push(x[0].mul(&y[0]));
    qshuffle_into(&x[1..], &y[1..], prefix, out);
    prefix.pop();
}

pub fn shuffle_words(x: &TensorWord, y: &TensorWord) -> TElem {
    let mut out = TElem::zero();
    shuffle_into(&x.0, &y.0, &mut Vec::new(), &mut out);
    out
}

pub fn shuffle(x: &TElem, y: &TElem) -> TElem {
    x.bilinear(y, shuffle_words)
}

/// `x ≺ y`: the first letter of `x` stays in front.
pub fn half_shuffle_left(x: &TensorWord, y: &TensorWord) -> Result<TElem> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let mut out = TElem::zero();
    shuffle_into(&x.0[1..], &y.0, &mut vec![x.0[0].clone()], &mut out);
    Ok(out)
}

/// `x ≻ y := y ≺ x`.
pub fn half_shuffle_right(x: &TensorWord, y: &TensorWord) -> Result<TElem> {
    half_shuffle_left(y, x)
}

pub fn half_shuffle_left_lin(x: &TElem, y: &TElem) -> Result<TElem> {
    x.try_bilinear(y, half_shuffle_left)
}

/// The half-shuffles recomputed from permutations `α` of `[k+l]` with at most
/// one descent, in position `k`. Returns `(x ≺ y, x ≻ y)`, split by whether
/// `α⁻¹(1)` is `1` or `k+1`.
pub fn shuffle_via_descents(x: &TensorWord, y: &TensorWord) -> Result<(TElem, TElem)> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let k = x.len();
    let letters: Vec<&Monomial> = x.0.iter().chain(y.0.iter()).collect();
    let n = letters.len();
    let mut left = TElem::zero();
    let mut right = TElem::zero();
    for alpha in permutations(n) {
        let ok = alpha
            .windows(2)
            .enumerate()
            .all(|(i, p)| p[0] < p[1] || i + 1 == k);
        if !ok {
            continue;
        }
        let mut inv = vec![0usize; n];
        for (i, &a) in alpha.iter().enumerate() {
            inv[a as usize - 1] = i;
        }
        let w = TensorWord(inv.iter().map(|&i| letters[i].clone()).collect());
        if inv[0] == 0 {
            left.add_term(w, Rational::one());
        } else if inv[0] == k {
            right.add_term(w, Rational::one());
        }
    }
    Ok((left, right))
}

pub fn qshuffle_words(x: &TensorWord, y: &TensorWord) -> TElem {
    let mut out = TElem::zero();
    qshuffle_into(&x.0, &y.0, &mut Vec::new(), &mut out);
    out
}

pub fn qshuffle(x: &TElem, y: &TElem) -> TElem {
    x.bilinear(y, qshuffle_words)
}

pub fn deconcat_word(w: &TensorWord) -> TPairElem {
    (0..=w.len())
        .map(|k| {
            (
                (TensorWord(w.0[..k].to_vec()), TensorWord(w.0[k..].to_vec())),
                Rational::one(),
            )
        })
        .collect()
}

pub fn deconcat(x: &TElem) -> TPairElem {
    x.map_linear(deconcat_word)
}

/// The `n`-fold reduced coproduct: all splits of a word into `n + 1`
/// nonempty consecutive pieces.
pub fn reduced_deconcat_iter(x: &TElem, n: usize) -> LinComb<Vec<TensorWord>> {
    fn splits(w: &[Monomial], pieces: usize) -> Vec<Vec<TensorWord>> {
        if pieces == 1 {
            return if w.is_empty() {
                vec![]
            } else {
                vec![vec![TensorWord(w.to_vec())]]
            };
        }
        let mut out = Vec::new();
        for cut in 1..w.len() {
            for mut rest in splits(&w[cut..], pieces - 1) {
                rest.insert(0, TensorWord(w[..cut].to_vec()));
                out.push(rest);
            }
        }
        out
    }
    x.map_linear(|w| {
        splits(&w.0, n + 1)
            .into_iter()
            .map(|s| (s, Rational::one()))
            .collect()
    })
}

/// Componentwise product on `Sh(A) ⊗ Sh(A)`.
pub fn pair_product(
    x: &TPairElem,
    y: &TPairElem,
    mut prod: impl FnMut(&TElem, &TElem) -> TElem,
) -> TPairElem {
    x.bilinear(y, |(x1, x2), (y1, y2)| {
        let left = prod(&word(x1.clone()), &word(y1.clone()));
        let right = prod(&word(x2.clone()), &word(y2.clone()));
        left.bilinear(&right, |a, b| LinComb::basis((a.clone(), b.clone())))
    })
}

/// Applies `f ⊗ g` to an element of `Sh(A) ⊗ Sh(A)`.
pub fn pair_map(
    x: &TPairElem,
    mut f: impl FnMut(&TElem) -> TElem,
    mut g: impl FnMut(&TElem) -> TElem,
) -> TPairElem {
    x.map_linear(|(a, b)| {
        let fa = f(&word(a.clone()));
        let gb = g(&word(b.clone()));
        fa.bilinear(&gb, |u, v| LinComb::basis((u.clone(), v.clone())))
    })
}

/// `x ⧢_P y = φ_P(φ_P⁻¹(x) ⧢ φ_P⁻¹(y))`, with `φ_P⁻¹ = φ_{P⁻¹}` obtained
/// from the compositional inverse of `P`.
pub fn twisted_product(p: &Series, x: &TElem, y: &TElem) -> Result<TElem> {
    let needed = max_len(x) + max_len(y);
    if needed > p.order() {
        return Err(Error::TruncationExceeded {
            needed,
            order: p.order(),
        });
    }
    let inv = p.inverse()?;
    let xi = phi_apply(&inv, x)?;
    let yi = phi_apply(&inv, y)?;
    phi_apply(p, &shuffle(&xi, &yi))
}
