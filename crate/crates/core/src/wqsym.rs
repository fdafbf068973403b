//! Word quasi-symmetric functions.
//!
//! A packed word `u1...un` over `{1..p}` is the surjection `i ↦ u_i` from
//! `[n]` onto `[p]`. It acts on tensors by merging letters along its fibers:
//! `act(f, a1...an) = b1...bp` with `b_j = Π_{f(i)=j} a_i`. Composition of
//! surjections, `(f∘g)(i) = f(g(i))`, matches composition of the operators.
//!
//! Convolution products are computed on the generic word `a1...an` and read
//! back; the classical permutation formula for the shuffle is kept as an
//! independent route.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinat::{compositions, descent_set, packed_words, partial_sums, permutations};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rational_pow, Rational};
use crate::fps::Series;
use crate::freecomm::Monomial;
use crate::hausdorff::{NCPoly, NCWord};
use crate::lincomb::LinComb;
use crate::tensorhopf::{qshuffle, shuffle, twisted_product, word, TElem, TensorWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PackedWord(Vec<u32>);

impl PackedWord {
    /// Validates that `values` is packed (its value set is `{1..p}`).
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let w = pack(&values);
        if w.0 != values {
            return Err(Error::Parse(format!("{values:?} is not a packed word")));
        }
        Ok(w)
    }

    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        PackedWord((1..=n as u32).collect())
    }

    /// The nondecreasing surjection `1^{i1} 2^{i2} ... k^{ik}`.
    pub fn from_composition(parts: &[usize]) -> Self {
        PackedWord(
            parts
                .iter()
                .enumerate()
                .flat_map(|(j, &len)| std::iter::repeat_n(j as u32 + 1, len))
                .collect(),
        )
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Size `p` of the image.
    pub fn max_value(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn relative_degree(&self) -> usize {
        self.degree() - self.max_value()
    }

    pub fn is_permutation(&self) -> bool {
        self.max_value() == self.degree()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    /// `τ! = Π_i |τ⁻¹(i)|!`.
    pub fn fiber_factorial(&self) -> BigInt {
        let mut counts = vec![0usize; self.max_value() + 1];
        for &v in &self.0 {
            counts[v as usize] += 1;
        }
        counts.iter().map(|&c| factorial(c)).product()
    }

    /// Reversal `f̃(i) = f(n + 1 - i)`.
    pub fn reversed(&self) -> Self {
        PackedWord(self.0.iter().rev().copied().collect())
    }
}

impl Ord for PackedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PackedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for PackedWord {
    type Err = Error;

    /// Space-separated values, or the compact digit form `121`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(PackedWord::empty());
        }
        let bad = || Error::Parse(format!("invalid packed word `{s}`"));
        let values: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        PackedWord::new(values)
    }
}

pub type WElem = LinComb<PackedWord>;
pub type WPairElem = LinComb<(PackedWord, PackedWord)>;

/// Order-preserving relabeling onto `{1..p}`.
pub fn pack(w: &[u32]) -> PackedWord {
    let mut distinct: Vec<u32> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    PackedWord(
        w.iter()
            .map(|v| distinct.binary_search(v).unwrap() as u32 + 1)
            .collect(),
    )
}

/// `act(f, a1...an) = b1...bp` with `b_j` the product of the `a_i`, `f(i) = j`.
pub fn act(f: &PackedWord, w: &TensorWord) -> Result<TensorWord> {
    if f.degree() != w.len() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            found: w.len(),
        });
    }
    let mut fibers: Vec<Vec<Monomial>> = vec![Vec::new(); f.max_value()];
    for (i, &v) in f.0.iter().enumerate() {
        fibers[v as usize - 1].push(w.letters()[i].clone());
    }
    Ok(TensorWord(
        fibers.iter().map(|m| Monomial::product(m)).collect(),
    ))
}

/// Linear action of a WQSym element; terms of the wrong degree act by zero.
pub fn act_lin(f: &WElem, w: &TensorWord) -> TElem {
    f.filter(|u| u.degree() == w.len())
        .map_linear(|u| word(act(u, w).expect("degree checked")))
}

/// Inverse of `act` on the generic word `a1...an`.
pub fn readback(x: &TElem, n: usize) -> Result<WElem> {
    x.try_map_linear(|w| readback_word(w, n).map(LinComb::basis))
}

fn readback_word(w: &TensorWord, n: usize) -> Result<PackedWord> {
    let mut f = vec![0u32; n];
    for (slot, m) in w.letters().iter().enumerate() {
        for &g in m.factors() {
            let i = g as usize;
            if i == 0 || i > n || f[i - 1] != 0 {
                return Err(Error::NotExpressible(format!("[{w}]")));
            }
            f[i - 1] = slot as u32 + 1;
        }
    }
    if f.contains(&0) {
        return Err(Error::NotExpressible(format!("[{w}]")));
    }
    Ok(PackedWord(f))
}

/// `(f∘g)(i) = f(g(i))`; `g` must land in the domain of `f`.
pub fn wcompose(f: &PackedWord, g: &PackedWord) -> Result<PackedWord> {
    if g.max_value() != f.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree(),
            found: g.max_value(),
        });
    }
    Ok(PackedWord(
        g.0.iter().map(|&v| f.0[v as usize - 1]).collect(),
    ))
}

/// Bilinear composition, zero on mismatched degrees.
pub fn wcompose_lin(f: &WElem, g: &WElem) -> WElem {
    f.bilinear(g, |a, b| match wcompose(a, b) {
        Ok(c) => LinComb::basis(c),
        Err(_) => WElem::zero(),
    })
}

/// The convolution products on WQSym.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WKind {
    Shuffle,
    QShuffle,
    Twisted(Series),
}

fn product_on_words(kind: &WKind, x: &TElem, y: &TElem) -> Result<TElem> {
    match kind {
        WKind::Shuffle => Ok(shuffle(x, y)),
        WKind::QShuffle => Ok(qshuffle(x, y)),
        WKind::Twisted(p) => twisted_product(p, x, y),
    }
}

fn wproduct_words(kind: &WKind, f: &PackedWord, g: &PackedWord) -> Result<WElem> {
    let (n, m) = (f.degree(), g.degree());
    let x = word(act(f, &TensorWord::generic(1, n))?);
    let y = word(act(g, &TensorWord::generic(n as u32 + 1, m))?);
    readback(&product_on_words(kind, &x, &y)?, n + m)
}

/// `(f * g)(a1...a_{n+m}) = f(a1...an) * g(a_{n+1}...a_{n+m})`, evaluated on
/// the generic word and read back.
pub fn wproduct(kind: &WKind, f: &WElem, g: &WElem) -> Result<WElem> {
    f.try_bilinear(g, |a, b| wproduct_words(kind, a, b))
}

/// `σ ⧢ τ = Σ_{ζ ∈ Sh(n,m)} ζ∘(σ·τ)` on permutations.
pub fn fqsym_shuffle(sigma: &PackedWord, tau: &PackedWord) -> Result<WElem> {
    for p in [sigma, tau] {
        if !p.is_permutation() {
            return Err(Error::NotPermutation(p.to_string()));
        }
    }
    let (n, m) = (sigma.degree(), tau.degree());
    let mut concat = sigma.0.clone();
    concat.extend(tau.0.iter().map(|&v| v + n as u32));
    let concat = PackedWord(concat);
    let mut out = WElem::zero();
    for zeta in shuffle_permutations(n, m) {
        out.add_term(wcompose(&zeta, &concat)?, Rational::one());
    }
    Ok(out)
}

pub fn fqsym_shuffle_lin(x: &WElem, y: &WElem) -> Result<WElem> {
    x.try_bilinear(y, fqsym_shuffle)
}

/// `(n, m)`-shuffles: permutations increasing on `1..n` and on `n+1..n+m`.
fn shuffle_permutations(n: usize, m: usize) -> Vec<PackedWord> {
    let total = n + m;
    let mut out = Vec::new();
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (first, second): (Vec<u32>, Vec<u32>) =
            (1..=total as u32).partition(|v| mask & (1 << (v - 1)) != 0);
        out.push(PackedWord(first.into_iter().chain(second).collect()));
    }
    out
}

/// `Δ(u) = Σ_{i=0}^{p} u|[1,i] ⊗ pack(u|[i+1,p])`, splitting the values.
pub fn wcoproduct(u: &PackedWord) -> WPairElem {
    let p = u.max_value() as u32;
    (0..=p)
        .map(|i| {
            let low: Vec<u32> = u.0.iter().copied().filter(|&v| v <= i).collect();
            let high: Vec<u32> = u.0.iter().copied().filter(|&v| v > i).collect();
            ((PackedWord(low), pack(&high)), Rational::one())
        })
        .collect()
}

pub fn wcoproduct_lin(x: &WElem) -> WPairElem {
    x.map_linear(wcoproduct)
}

/// Componentwise product on `WQSym ⊗ WQSym`.
pub fn wpair_product(kind: &WKind, x: &WPairElem, y: &WPairElem) -> Result<WPairElem> {
    x.try_bilinear(y, |(a1, a2), (b1, b2)| {
        let left = wproduct_words(kind, a1, b1)?;
        let right = wproduct_words(kind, a2, b2)?;
        Ok(left.bilinear(&right, |l, r| LinComb::basis((l.clone(), r.clone()))))
    })
}

/// Componentwise composition on `WQSym ⊗ WQSym`, zero on mismatch.
pub fn wpair_compose(x: &WPairElem, y: &WPairElem) -> WPairElem {
    x.bilinear(y, |(f1, f2), (g1, g2)| {
        match (wcompose(f1, g1), wcompose(f2, g2)) {
            (Ok(a), Ok(b)) => LinComb::basis((a, b)),
            _ => WPairElem::zero(),
        }
    })
}

/// `σ ∝ τ` order condition: `σ(i) < σ(j) ⇒ τ(i) ≤ τ(j)`.
fn dominated_by(tau: &PackedWord, sigma: &PackedWord) -> bool {
    let n = sigma.degree();
    (0..n).all(|i| (0..n).all(|j| sigma.0[i] >= sigma.0[j] || tau.0[i] <= tau.0[j]))
}

/// `Φ_q(σ) = Σ_{τ ∝ σ} q^{r(τ)} τ / τ!`.
pub fn embed_fqsym(q: &Rational, sigma: &PackedWord) -> Result<WElem> {
    if !sigma.is_permutation() {
        return Err(Error::NotPermutation(sigma.to_string()));
    }
    let mut out = WElem::zero();
    for tau in packed_words(sigma.degree()).into_iter().map(PackedWord) {
        if !dominated_by(&tau, sigma) {
            continue;
        }
        let c =
            rational_pow(q, tau.relative_degree()) / Rational::from_integer(tau.fiber_factorial());
        out.add_term(tau, c);
    }
    Ok(out)
}

/// Degree-`n` component of `φ_P` in WQSym:
/// `Σ_{i1+...+ik=n} p_{i1}...p_{ik} 1^{i1}...k^{ik}`.
pub fn phi_component(p: &Series, n: usize) -> Result<WElem> {
    p.require_order(n)?;
    if n == 0 {
        return Ok(WElem::basis(PackedWord::empty()));
    }
    Ok(compositions(n)
        .into_iter()
        .map(|parts| {
            let c = parts
                .iter()
                .fold(Rational::one(), |acc, &i| acc * p.coeff(i).unwrap());
            (PackedWord::from_composition(&parts), c)
        })
        .collect())
}

/// `Φ_P(f) = φ_P∘f` on WQSym.
pub fn embed_via_phi(p: &Series, f: &WElem) -> Result<WElem> {
    let mut out = WElem::zero();
    for (u, c) in f.iter() {
        let component = phi_component(p, u.max_value())?;
        out.add_scaled(&wcompose_lin(&component, &WElem::basis(u.clone())), c);
    }
    Ok(out)
}

/// Degree-`n` component of `log^*(Id) = Σ_k (-1)^(k-1)/k J^{*k}` with
/// `J = Id - unit∘counit` and `*` the convolution of the given kind.
pub fn e1(n: usize, kind: &WKind) -> Result<WElem> {
    if n == 0 {
        return Ok(WElem::zero());
    }
    // powers[m] holds the degree-m component of J^{*k} for the current k.
    let ids: Vec<WElem> = (0..=n)
        .map(|m| WElem::basis(PackedWord::identity(m)))
        .collect();
    let mut powers: Vec<WElem> = ids.clone();
    powers[0] = WElem::zero();
    let mut out = WElem::zero();
    for k in 1..=n {
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&powers[n], &Rational::new(sign.into(), k.into()));
        if k == n {
            break;
        }
        let mut next = vec![WElem::zero(); n + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for j in 1..m {
                if powers[m - j].is_zero() {
                    continue;
                }
                *slot += &wproduct(kind, &powers[m - j], &ids[j])?;
            }
        }
        powers = next;
    }
    Ok(out)
}

/// Which partial sums of a composition `I` are removed from `[n]` to form
/// the prescribed descent set in the closed formula for `e1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentReading {
    /// `{i_l, i_l + i_{l-1}, ..., i_l + ... + i_1}`, as printed.
    Reversed,
    /// `{i_1, i_1 + i_2, ..., i_1 + ... + i_l}`.
    Forward,
}

/// Closed formula for the quasi-shuffle `e1` in degree `n`:
/// `(1/n) Σ_{I ⊨ n} (-1)^(l(I)-1) / C(n-1, l(I)-1) Σ_{Des(f) = [n] - S(I)} f̃`.
pub fn e1_closed(n: usize) -> WElem {
    e1_closed_with(n, DescentReading::Reversed)
}

pub fn e1_closed_with(n: usize, reading: DescentReading) -> WElem {
    if n == 0 {
        return WElem::zero();
    }
    let words: Vec<PackedWord> = packed_words(n).into_iter().map(PackedWord).collect();
    let mut out = WElem::zero();
    for comp in compositions(n) {
        let l = comp.len();
        let sums = match reading {
            DescentReading::Reversed => {
                partial_sums(&comp.iter().rev().copied().collect::<Vec<_>>())
            }
            DescentReading::Forward => partial_sums(&comp),
        };
        let target: Vec<usize> = (1..=n).filter(|i| !sums.contains(i)).collect();
        let sign: i64 = if l % 2 == 1 { 1 } else { -1 };
        let c = Rational::new(BigInt::from(sign), BigInt::from(n) * binomial(n - 1, l - 1));
        for f in &words {
            if descent_set(f.values()) == target {
                out.add_term(f.reversed(), c.clone());
            }
        }
    }
    out
}

/// Sum of all words over `x1..xk` whose packing is `u`, in the space of
/// noncommutative polynomials truncated at `degree`.
pub fn realize_in(u: &PackedWord, k: usize, degree: usize) -> Result<NCPoly> {
    let p = u.max_value();
    if p > k {
        return Err(Error::AlphabetTooSmall { size: k, needed: p });
    }
    let mut out = NCPoly::zero(k, degree);
    if u.degree() > degree {
        return Ok(out);
    }
    // Each increasing choice b1 < ... < bp of letters gives one word.
    for letters in increasing_choices(k as u8, p) {
        let w = NCWord(u.0.iter().map(|&v| letters[v as usize - 1]).collect());
        out.add_term(w, Rational::one());
    }
    Ok(out)
}

fn increasing_choices(k: u8, p: usize) -> Vec<Vec<u8>> {
    fn go(next: u8, k: u8, p: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for l in next..=k {
            cur.push(l);
            go(l + 1, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, k, p, &mut Vec::new(), &mut out);
    out
}

/// `M_u` over the alphabet `x1..xk`.
pub fn realize(u: &PackedWord, k: usize) -> Result<NCPoly> {
    realize_in(u, k, u.degree())
}

/// Checks `Δ(f∘g) = Δ(f)∘Δ(g)` for a nondecreasing `f`.
pub fn iqsym_coproduct_compat(f: &PackedWord, g: &PackedWord) -> Result<bool> {
    if !f.is_nondecreasing() {
        return Err(Error::NotNondecreasing(f.to_string()));
    }
    coproduct_compat_unchecked(f, g)
}

/// The same identity without the nondecreasing requirement on `f`; used to
/// exhibit failures for general `f`.
pub fn coproduct_compat_unchecked(f: &PackedWord, g: &PackedWord) -> Result<bool> {
    let fg = wcompose(f, g)?;
    Ok(wcoproduct(&fg) == wpair_compose(&wcoproduct(f), &wcoproduct(g)))
}

/// Reads a WQSym element off `φ_P` applied to the generic word of length `n`.
pub fn readback_phi(p: &Series, n: usize) -> Result<WElem> {
    readback(
        &crate::nattrans::phi_apply(p, &word(TensorWord::generic(1, n)))?,
        n,
    )
}

/// All permutations of degree `n` as packed words.
pub fn permutations_of(n: usize) -> Vec<PackedWord> {
    permutations(n).into_iter().map(PackedWord).collect()
}

/// All packed words of degree `n`.
pub fn packed_words_of(n: usize) -> Vec<PackedWord> {
    packed_words(n).into_iter().map(PackedWord).collect()
}

/// `Σ_{u nondecreasing, |u| = n} u / u!`.
pub fn s_hat(n: usize) -> WElem {
    compositions(n)
        .into_iter()
        .map(|parts| {
            let u = PackedWord::from_composition(&parts);
            let c = Rational::from_integer(u.fiber_factorial()).recip();
            (u, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::nattrans::phi_apply;

    fn pw(s: &str) -> PackedWord {
        s.parse().unwrap()
    }

    fn we(terms: &[(&str, Rational)]) -> WElem {
        terms.iter().map(|(s, c)| (pw(s), c.clone())).collect()
    }

    fn ones(words: &[&str]) -> WElem {
        words.iter().map(|s| (pw(s), int(1))).collect()
    }

    fn tw(s: &str) -> TensorWord {
        s.parse().unwrap()
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&[3, 5, 3, 8, 1]), pw("2 3 2 4 1"));
        assert_eq!(pack(&[1, 2, 3]), pw("123"));
        assert_eq!(pack(&[7, 7]), pw("11"));
        assert!("1 3".parse::<PackedWord>().is_err());
        assert_eq!(pw("1 2 1"), pw("121"));
        assert_eq!(pw("1 2 1").to_string(), "1 2 1");
        assert_eq!(PackedWord::empty().to_string(), "()");
    }

    #[test]
    fn act_examples() {
        assert_eq!(act(&pw("12"), &tw("1 2")).unwrap(), tw("1 2"));
        assert_eq!(act(&pw("11"), &tw("1 2")).unwrap(), tw("1.2"));
        assert_eq!(act(&pw("121"), &tw("1 2 3")).unwrap(), tw("1.3 2"));
        assert_eq!(
            act(&pw("12"), &tw("1")),
            Err(Error::DegreeMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn readback_examples() {
        let x: TElem = [(tw("1 2"), int(1)), (tw("2 1"), int(1))]
            .into_iter()
            .collect();
        assert_eq!(readback(&x, 2).unwrap(), ones(&["12", "21"]));
        assert_eq!(readback(&word(tw("1.2")), 2).unwrap(), ones(&["11"]));
        let phi = phi_apply(&Series::exp1(2), &word(tw("1 2"))).unwrap();
        assert_eq!(
            readback(&phi, 2).unwrap(),
            we(&[("12", int(1)), ("11", rat(1, 2))])
        );
        assert!(matches!(
            readback(&word(tw("1.1")), 2),
            Err(Error::NotExpressible(_))
        ));
        assert!(matches!(
            readback(&word(tw("1")), 2),
            Err(Error::NotExpressible(_))
        ));
    }

    #[test]
    fn act_readback_are_inverse() {
        for n in 0..=4 {
            let g = TensorWord::generic(1, n);
            for u in packed_words_of(n) {
                let x = word(act(&u, &g).unwrap());
                assert_eq!(readback(&x, n).unwrap(), WElem::basis(u));
            }
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(wcompose(&pw("11"), &pw("12")).unwrap(), pw("11"));
        assert_eq!(wcompose(&pw("21"), &pw("121")).unwrap(), pw("212"));
        for n in 1..=4 {
            for f in packed_words_of(n) {
                assert_eq!(wcompose(&f, &PackedWord::identity(n)).unwrap(), f);
            }
        }
        assert!(wcompose(&pw("12"), &pw("111")).is_err());
        assert!(wcompose_lin(&ones(&["12"]), &ones(&["111"])).is_zero());
    }

    #[test]
    fn composition_matches_operator_composition() {
        for g in packed_words_of(4) {
            for f in packed_words_of(g.max_value()) {
                let w = TensorWord::generic(1, 4);
                let lhs = act(&f, &act(&g, &w).unwrap()).unwrap();
                assert_eq!(lhs, act(&wcompose(&f, &g).unwrap(), &w).unwrap());
            }
        }
    }

    #[test]
    fn product_examples() {
        let one = ones(&["1"]);
        assert_eq!(
            wproduct(&WKind::Shuffle, &one, &one).unwrap(),
            ones(&["12", "21"])
        );
        assert_eq!(
            wproduct(&WKind::QShuffle, &one, &one).unwrap(),
            ones(&["12", "21", "11"])
        );
        // a1 a2 ⧢ a3 = a1a2a3 + a1a3a2 + a3a1a2, i.e. surjections 123, 132, 231.
        let lhs = wproduct(&WKind::Shuffle, &ones(&["12"]), &one).unwrap();
        assert_eq!(lhs, ones(&["123", "132", "231"]));
        assert_eq!(lhs, fqsym_shuffle(&pw("12"), &pw("1")).unwrap());
    }

    #[test]
    fn fqsym_examples() {
        assert_eq!(
            fqsym_shuffle(&pw("1"), &pw("1")).unwrap(),
            ones(&["12", "21"])
        );
        assert_eq!(
            fqsym_shuffle(&pw("1"), &pw("12")).unwrap(),
            ones(&["123", "213", "312"])
        );
        assert!(fqsym_shuffle(&pw("11"), &pw("1")).is_err());
    }

    #[test]
    fn fqsym_formula_matches_generic_evaluation() {
        for n in 0..=5 {
            for a in 0..=n {
                for s in permutations_of(a) {
                    for t in permutations_of(n - a) {
                        let generic = wproduct(
                            &WKind::Shuffle,
                            &WElem::basis(s.clone()),
                            &WElem::basis(t.clone()),
                        )
                        .unwrap();
                        assert_eq!(generic, fqsym_shuffle(&s, &t).unwrap(), "{s} ⧢ {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        let pair = |a: &str, b: &str| ((pw(a), pw(b)), int(1));
        assert_eq!(
            wcoproduct(&pw("11")),
            [pair("()", "11"), pair("11", "()")].into_iter().collect()
        );
        assert_eq!(
            wcoproduct(&pw("12")),
            [pair("()", "12"), pair("1", "1"), pair("12", "()")]
                .into_iter()
                .collect()
        );
        assert_eq!(
            wcoproduct(&pw("212")),
            [pair("()", "212"), pair("1", "11"), pair("212", "()")]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn embedding_examples() {
        for sigma in permutations_of(3) {
            assert_eq!(embed_fqsym(&int(0), &sigma).unwrap(), WElem::basis(sigma));
        }
        assert_eq!(
            embed_fqsym(&int(1), &pw("12")).unwrap(),
            we(&[("12", int(1)), ("11", rat(1, 2))])
        );
        assert_eq!(
            embed_fqsym(&int(1), &PackedWord::identity(2)).unwrap(),
            s_hat(2)
        );
    }

    #[test]
    fn embedding_formula_matches_composition_with_phi() {
        for q in [int(0), rat(1, 2), int(1), rat(-3, 2)] {
            let eq = Series::e_q(&q, 4);
            for n in 1..=4 {
                for sigma in permutations_of(n) {
                    let via_phi = embed_via_phi(&eq, &WElem::basis(sigma.clone())).unwrap();
                    assert_eq!(embed_fqsym(&q, &sigma).unwrap(), via_phi);
                }
            }
        }
    }

    #[test]
    fn phi_component_matches_readback() {
        let p = Series::from_coeffs(vec![int(1), rat(2, 3), int(-1), rat(1, 7), int(2)]);
        for n in 0..=5 {
            assert_eq!(phi_component(&p, n).unwrap(), readback_phi(&p, n).unwrap());
        }
    }

    #[test]
    fn e1_examples() {
        assert_eq!(e1(1, &WKind::Shuffle).unwrap(), ones(&["1"]));
        assert_eq!(
            e1(2, &WKind::Shuffle).unwrap(),
            we(&[("12", rat(1, 2)), ("21", rat(-1, 2))])
        );
        assert_eq!(
            e1(2, &WKind::QShuffle).unwrap(),
            we(&[("12", rat(1, 2)), ("21", rat(-1, 2)), ("11", rat(-1, 2))])
        );
        assert_eq!(e1_closed(1), ones(&["1"]));
        assert_eq!(e1_closed(2), e1(2, &WKind::QShuffle).unwrap());
    }

    #[test]
    fn e1_closed_readings_agree_with_oracle() {
        for n in 1..=5 {
            let oracle = e1(n, &WKind::QShuffle).unwrap();
            assert_eq!(
                e1_closed_with(n, DescentReading::Reversed),
                oracle,
                "n = {n}"
            );
            assert_eq!(
                e1_closed_with(n, DescentReading::Forward),
                oracle,
                "n = {n}"
            );
        }
    }

    #[test]
    fn realize_examples() {
        let r = realize(&pw("11"), 2).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.coeff(&NCWord(vec![1, 1])), int(1));
        assert_eq!(r.coeff(&NCWord(vec![2, 2])), int(1));
        let r = realize(&pw("12"), 2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coeff(&NCWord(vec![1, 2])), int(1));
        assert_eq!(realize(&pw("13132"), 5).unwrap().len(), 10);
        assert_eq!(
            realize(&pw("123"), 2),
            Err(Error::AlphabetTooSmall { size: 2, needed: 3 })
        );
    }

    #[test]
    fn iqsym_compat_examples() {
        assert!(iqsym_coproduct_compat(&pw("11"), &pw("12")).unwrap());
        for g in packed_words_of(3) {
            let id = PackedWord::identity(g.max_value());
            assert!(iqsym_coproduct_compat(&id, &g).unwrap());
        }
        assert!(matches!(
            iqsym_coproduct_compat(&pw("21"), &pw("12")),
            Err(Error::NotNondecreasing(_))
        ));
    }

    #[test]
    fn compat_fails_for_some_general_f() {
        let mut failures = 0;
        for n in 1..=3 {
            for f in packed_words_of(n) {
                for m in n..=4 {
                    for g in packed_words_of(m)
                        .into_iter()
                        .filter(|g| g.max_value() == n)
                    {
                        if !coproduct_compat_unchecked(&f, &g).unwrap() {
                            assert!(!f.is_nondecreasing());
                            failures += 1;
                        }
                    }
                }
            }
        }
        assert!(failures > 0);
    }
}
