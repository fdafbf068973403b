//! Truncated noncommutative series, the Hausdorff series and Goldberg's formula.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinat::{
    compositions, descent_count, descent_set, partial_sums, permutations, rise_count,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, Poly, Rational};
use crate::lincomb::LinComb;
use crate::wqsym::{fqsym_shuffle_lin, packed_words_of, realize_in, PackedWord, WElem};

/// A word in the letters `x1..xk`, stored as letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NCWord(pub Vec<u8>);

impl NCWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

/// Element of `Q<x1..xk>` modulo words longer than `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    alphabet: usize,
    degree: usize,
    terms: LinComb<NCWord>,
}

impl NCPoly {
    pub fn zero(alphabet: usize, degree: usize) -> Self {
        NCPoly {
            alphabet,
            degree,
            terms: LinComb::zero(),
        }
    }

    pub fn one(alphabet: usize, degree: usize) -> Self {
        let mut p = Self::zero(alphabet, degree);
        p.add_term(NCWord::default(), Rational::one());
        p
    }

    /// The letter `x_i`.
    pub fn letter(alphabet: usize, degree: usize, i: u8) -> Self {
        let mut p = Self::zero(alphabet, degree);
        p.add_term(NCWord(vec![i]), Rational::one());
        p
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c·w`; words beyond the truncation degree are dropped.
    pub fn add_term(&mut self, w: NCWord, c: Rational) {
        debug_assert!(w.0.iter().all(|&l| l >= 1 && l as usize <= self.alphabet));
        if w.len() <= self.degree {
            self.terms.add_term(w, c);
        }
    }

    pub fn coeff(&self, w: &NCWord) -> Rational {
        self.terms.coeff(w)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&NCWord::default())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Terms in (length, lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rational)> + '_ {
        self.terms.iter()
    }

    fn check_space(&self, other: &NCPoly) -> Result<()> {
        if (self.alphabet, self.degree) != (other.alphabet, other.degree) {
            return Err(Error::SpaceMismatch(format!(
                "k={}, N={} vs k={}, N={}",
                self.alphabet, self.degree, other.alphabet, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_space(other)?;
        Ok(NCPoly {
            terms: &self.terms + &other.terms,
            ..self.clone()
        })
    }

    pub fn add_assign(&mut self, other: &NCPoly) -> Result<()> {
        self.check_space(other)?;
        self.terms += &other.terms;
        Ok(())
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_space(other)?;
        Ok(NCPoly {
            terms: &self.terms - &other.terms,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        NCPoly {
            terms: self.terms.scale(c),
            ..self.clone()
        }
    }

    /// Sets `x_i := 0` for every `i > keep`.
    pub fn project(&self, keep: usize) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .filter(|w| w.0.iter().all(|&l| l as usize <= keep)),
            ..self.clone()
        }
    }
}

impl fmt::Display for NCPoly {
    /// `x1 + x2 + 1/2 x1x2 − 1/2 x2x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "−")?,
                (0, false) => {}
                (_, true) => write!(f, " − ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{magnitude} {w}")?;
            }
        }
        Ok(())
    }
}

/// Concatenation product, truncated.
pub fn nc_mul(x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
    x.check_space(y)?;
    let n = x.degree;
    // Terms are sorted by length, so each inner loop stops at the first word
    // that would overflow the truncation.
    let ys: Vec<(&NCWord, &Rational)> = y.terms().collect();
    let mut acc: BTreeMap<NCWord, Rational> = BTreeMap::new();
    for (a, ca) in x.terms() {
        for (b, cb) in ys.iter().take_while(|(b, _)| a.len() + b.len() <= n) {
            let mut w = a.0.clone();
            w.extend_from_slice(&b.0);
            *acc.entry(NCWord(w)).or_insert_with(Rational::zero) += ca * *cb;
        }
    }
    Ok(NCPoly {
        terms: acc.into_iter().collect(),
        ..x.clone()
    })
}

/// `Σ_{n ≤ N} x^n / n!` for `x` without constant term.
pub fn nc_exp(x: &NCPoly) -> Result<NCPoly> {
    if !x.constant_term().is_zero() {
        return Err(Error::ConstantTerm {
            op: "exp",
            expected: "0",
        });
    }
    let mut out = NCPoly::one(x.alphabet, x.degree);
    let mut power = out.clone();
    for n in 1..=x.degree {
        power = nc_mul(&power, x)?.scale(&Rational::new(BigInt::one(), BigInt::from(n)));
        if power.is_zero() {
            break;
        }
        out.add_assign(&power)?;
    }
    Ok(out)
}

/// `Σ_{n ≤ N} (-1)^(n-1) (y - 1)^n / n` for `y` with constant term 1.
pub fn nc_log(y: &NCPoly) -> Result<NCPoly> {
    if !y.constant_term().is_one() {
        return Err(Error::ConstantTerm {
            op: "log",
            expected: "1",
        });
    }
    let z = y.sub(&NCPoly::one(y.alphabet, y.degree))?;
    let mut out = NCPoly::zero(y.alphabet, y.degree);
    let mut power = NCPoly::one(y.alphabet, y.degree);
    for n in 1..=y.degree {
        power = nc_mul(&power, &z)?;
        if power.is_zero() {
            break;
        }
        let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
        out.add_assign(&power.scale(&Rational::new(sign.into(), n.into())))?;
    }
    Ok(out)
}

/// `log(e^{x1} e^{x2} ... e^{xk})` truncated at degree `n`.
pub fn hausdorff_series(k: usize, n: usize) -> NCPoly {
    let mut product = NCPoly::one(k, n);
    for i in 1..=k {
        let e = nc_exp(&NCPoly::letter(k, n, i as u8)).expect("letters have no constant term");
        product = nc_mul(&product, &e).expect("same space");
    }
    nc_log(&product).expect("product of exponentials has constant term 1")
}

/// Eulerian numbers `A(n, d)`, `d = 0..n-1`, by the usual recurrence.
pub fn eulerian_numbers(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m];
        for (d, slot) in next.iter_mut().enumerate() {
            if d < m - 1 {
                *slot += &row[d] * BigInt::from(d + 1);
            }
            if d >= 1 {
                *slot += &row[d - 1] * BigInt::from(m - d);
            }
        }
        row = next;
    }
    if n == 0 {
        Vec::new()
    } else {
        row
    }
}

/// Coefficients of `E_n(x, y) = Σ_{σ ∈ S_n} x^{d(σ)} y^{n-1-d(σ)}` by x-degree,
/// counted directly over permutations.
pub fn eulerian_e(n: usize) -> Vec<Rational> {
    let mut counts = vec![0i64; n];
    for sigma in permutations(n) {
        counts[descent_count(&sigma)] += 1;
    }
    counts.into_iter().map(int).collect()
}

/// `E_n(t, 1 + t)` as a polynomial in `t`.
fn eulerian_at(n: usize) -> Poly {
    let one_plus_t = Poly::from_ints(&[1, 1]);
    eulerian_numbers(n)
        .into_iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (d, a)| {
            let term = &Poly::monomial(Rational::from_integer(a), d) * &one_plus_t.pow(n - 1 - d);
            &acc + &term
        })
}

/// Checks `Σ_{I ⊨ n} t^{l(I)} S^I = (1 + t)^n 𝒜_n(t / (1 + t))` in FQSym,
/// with `S_m` the identity permutation and `𝒜_n = Σ_I t^{l(I)} R_I`.
pub fn eulerian_identity_check(n: usize) -> bool {
    let mut lhs: BTreeMap<PackedWord, Poly> = BTreeMap::new();
    let mut rhs: BTreeMap<PackedWord, Poly> = BTreeMap::new();
    let perms: Vec<PackedWord> = crate::wqsym::permutations_of(n);
    for comp in compositions(n) {
        let l = comp.len();
        let s_i = comp
            .iter()
            .fold(WElem::basis(PackedWord::empty()), |acc, &m| {
                fqsym_shuffle_lin(&acc, &WElem::basis(PackedWord::identity(m)))
                    .expect("identities are permutations")
            });
        for (sigma, c) in s_i.iter() {
            add_poly(&mut lhs, sigma, &Poly::monomial(c.clone(), l));
        }
        // R_I sums the permutations whose descent set is the set of proper
        // partial sums of I; t^l / (1+t)^l times (1+t)^n.
        let sums = partial_sums(&comp);
        let target = &sums[..l - 1];
        let weight = &Poly::monomial(int(1), l) * &Poly::from_ints(&[1, 1]).pow(n - l);
        for sigma in perms.iter().filter(|s| descent_set(s.values()) == target) {
            add_poly(&mut rhs, sigma, &weight);
        }
    }
    lhs.retain(|_, p| !p.is_zero());
    rhs.retain(|_, p| !p.is_zero());
    lhs == rhs
}

fn add_poly(map: &mut BTreeMap<PackedWord, Poly>, key: &PackedWord, p: &Poly) {
    let entry = map.entry(key.clone()).or_insert_with(Poly::zero);
    *entry = &*entry + p;
}

/// Descents, strict rises and equal-letter run lengths of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSignature {
    pub d: usize,
    pub r: usize,
    pub blocks: Vec<usize>,
}

pub fn goldberg_signature(u: &PackedWord) -> EulerSignature {
    let v = u.values();
    let mut blocks: Vec<usize> = Vec::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 && v[i - 1] == *x {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
        }
    }
    EulerSignature {
        d: descent_count(v),
        r: rise_count(v),
        blocks,
    }
}

/// `Q_u(t) = t^{d+1} (1+t)^r Π_k E_{j_k}(t, 1+t) / j_k!`; of degree `|u|`.
pub fn goldberg_integrand(u: &PackedWord) -> Poly {
    let sig = goldberg_signature(u);
    let base = &Poly::monomial(int(1), sig.d + 1) * &Poly::from_ints(&[1, 1]).pow(sig.r);
    sig.blocks.iter().fold(base, |acc, &j| {
        let inv = Rational::from_integer(factorial(j)).recip();
        &acc * &eulerian_at(j).scale(&inv)
    })
}

/// `c_u = ∫_{-1}^0 Q_u(t) dt / t`.
pub fn goldberg_coeff(u: &PackedWord) -> Rational {
    if u.degree() == 0 {
        return Rational::zero();
    }
    goldberg_integrand(u)
        .shift_down()
        .integrate(&int(-1), &int(0))
}

/// Applies `t^n ↦ f_n` to `Q_u`; `moments[n - 1] = f_n`.
pub fn goldberg_moment_coeff(u: &PackedWord, moments: &[Rational]) -> Result<Rational> {
    if u.degree() == 0 {
        return Ok(Rational::zero());
    }
    let q = goldberg_integrand(u);
    let needed = q.degree().unwrap_or(0);
    if moments.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            given: moments.len(),
        });
    }
    Ok(q.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .fold(Rational::zero(), |acc, (n, c)| acc + c * &moments[n - 1]))
}

/// Outcome of comparing `Σ_u c_u M_u` with the Hausdorff series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    /// Packed words of degree ≤ N that fit in the alphabet.
    pub words: usize,
    /// First word (in (length, lex) order) whose coefficients differ.
    pub mismatch: Option<(NCWord, Rational, Rational)>,
}

impl Reconstruction {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn reconstruct(k: usize, n: usize) -> Reconstruction {
    let words: Vec<PackedWord> = (1..=n)
        .flat_map(packed_words_of)
        .filter(|u| u.max_value() <= k)
        .collect();
    let parts: Vec<NCPoly> = words
        .par_iter()
        .map(|u| {
            let c = goldberg_coeff(u);
            realize_in(u, k, n).expect("alphabet checked").scale(&c)
        })
        .collect();
    let mut sum = NCPoly::zero(k, n);
    for p in &parts {
        sum.add_assign(p).expect("same space");
    }
    let phi = hausdorff_series(k, n);
    let diff = sum.sub(&phi).expect("same space");
    let mismatch = diff
        .terms()
        .next()
        .map(|(w, _)| (w.clone(), sum.coeff(w), phi.coeff(w)));
    Reconstruction {
        words: words.len(),
        mismatch,
    }
}

/// `Σ_{|u| ≤ N} c_u M_u = Φ` over `x1..xk`.
pub fn reconstruct_check(k: usize, n: usize) -> bool {
    reconstruct(k, n).passed()
}
