//! Natural transformations of the shuffle functor attached to a power series
//! `P = Σ p_i X^i`: the coalgebra endomorphism `φ_P`, its corestriction
//! `f_P`, and the coderivation `D_P`.
//!
//! Operators are never materialized as matrices; they are applied to words on
//! demand from the defining series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::combinat::{compositions, packed_words};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, rational_pow, Rational};
use crate::fps::Series;
use crate::freecomm::{aelem_from_monomial, substitute_monomial, AElem, Generator, Monomial};
use crate::lincomb::LinComb;
use crate::tensorhopf::{max_len, word, TElem, TensorWord};

/// Which family of operators a series stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatKind {
    Phi,
    F,
    Coder,
}

/// A natural operator described by its series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatMap {
    pub series: Series,
    pub kind: NatKind,
}

impl NatMap {
    pub fn phi(series: Series) -> Self {
        NatMap {
            series,
            kind: NatKind::Phi,
        }
    }

    pub fn coder(series: Series) -> Self {
        NatMap {
            series,
            kind: NatKind::Coder,
        }
    }

    /// Applies the operator. `F` lands in `A`, embedded as length-one words.
    pub fn apply(&self, x: &TElem) -> Result<TElem> {
        match self.kind {
            NatKind::Phi => phi_apply(&self.series, x),
            NatKind::Coder => coder_apply(&self.series, x),
            NatKind::F => x.try_map_linear(|w| {
                if w.is_empty() {
                    return Ok(TElem::zero());
                }
                Ok(f_apply(&self.series, w)?.map_linear(|m| word(TensorWord(vec![m.clone()]))))
            }),
        }
    }
}

/// `f_P(a1...an) = p_n (a1·...·an)`.
pub fn f_apply(p: &Series, w: &TensorWord) -> Result<AElem> {
    if w.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let pn = p.coeff(w.len())?;
    Ok(aelem_from_monomial(Monomial::product(w.letters())).scale(&pn))
}

fn merge_blocks(w: &TensorWord, parts: &[usize]) -> TensorWord {
    let mut letters = Vec::with_capacity(parts.len());
    let mut start = 0;
    for &len in parts {
        letters.push(Monomial::product(&w.letters()[start..start + len]));
        start += len;
    }
    TensorWord(letters)
}

/// `φ_P(a1...an) = Σ_{i1+...+ik=n} p_{i1}...p_{ik} (a1·...·a_{i1}) ... (...·an)`.
pub fn phi_apply_word(p: &Series, w: &TensorWord) -> Result<TElem> {
    p.require_order(w.len())?;
    if w.is_empty() {
        return Ok(word(TensorWord::empty()));
    }
    let mut out = TElem::zero();
    for parts in compositions(w.len()) {
        let c = parts.iter().fold(Rational::one(), |acc, &i| acc * p.p(i));
        if !c.is_zero() {
            out.add_term(merge_blocks(w, &parts), c);
        }
    }
    Ok(out)
}

pub fn phi_apply(p: &Series, x: &TElem) -> Result<TElem> {
    p.require_order(max_len(x))?;
    x.try_map_linear(|w| phi_apply_word(p, w))
}

/// `φ_P⁻¹ = φ_{P⁻¹}`.
pub fn phi_inverse_apply(p: &Series, x: &TElem) -> Result<TElem> {
    phi_apply(&p.inverse()?, x)
}

/// Checks `φ_P∘φ_Q = φ_{P(Q)}` on `w`.
pub fn phi_compose_check(p: &Series, q: &Series, w: &TensorWord) -> Result<bool> {
    let x = word(w.clone());
    let lhs = phi_apply(p, &phi_apply(q, &x)?)?;
    let rhs = phi_apply(&p.compose(q)?, &x)?;
    Ok(lhs == rhs)
}

/// `D_P(a1...an) = Σ_i Σ_j p_i a1...a_{j-1} (a_j·...·a_{j+i-1}) a_{j+i}...an`.
pub fn coder_apply_word(p: &Series, w: &TensorWord) -> Result<TElem> {
    let n = w.len();
    p.require_order(n)?;
    let mut out = TElem::zero();
    let letters = w.letters();
    for i in 1..=n {
        let pi = p.p(i);
        if pi.is_zero() {
            continue;
        }
        for j in 0..=(n - i) {
            let mut v = letters[..j].to_vec();
            v.push(Monomial::product(&letters[j..j + i]));
            v.extend_from_slice(&letters[j + i..]);
            out.add_term(TensorWord(v), pi.clone());
        }
    }
    Ok(out)
}

pub fn coder_apply(p: &Series, x: &TElem) -> Result<TElem> {
    p.require_order(max_len(x))?;
    x.try_map_linear(|w| coder_apply_word(p, w))
}

/// Degree operator `Y = D_X`.
pub fn degree_operator(x: &TElem) -> TElem {
    x.map_linear(|w| LinComb::term(w.clone(), int(w.len() as i64)))
}

/// Checks `[D_{X^m}, D_{X^n}] = (m - n) D_{X^{m+n-1}}` on `w`.
pub fn coder_bracket(m: usize, n: usize, w: &TensorWord) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::Parse("bracket exponents must be positive".into()));
    }
    let order = w.len().max(m + n - 1).max(1);
    let dm = Series::monomial(m, order);
    let dn = Series::monomial(n, order);
    let dmn = Series::monomial(m + n - 1, order);
    let x = word(w.clone());
    let lhs =
        &coder_apply(&dm, &coder_apply(&dn, &x)?)? - &coder_apply(&dn, &coder_apply(&dm, &x)?)?;
    let rhs = coder_apply(&dmn, &x)?.scale(&int(m as i64 - n as i64));
    Ok(lhs == rhs)
}

/// The series `(V∘U)/U'` of the conjugated coderivation `φ_U⁻¹∘D_V∘φ_U`.
pub fn conjugate_coder(u: &Series, v: &Series) -> Result<Series> {
    if u.coeff(1)?.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    v.compose(u)?.divide(&u.derivative())
}

/// Checks `φ_U⁻¹∘D_V∘φ_U = D_{(V∘U)/U'}` on `w`.
pub fn conjugation_check(u: &Series, v: &Series, w: &TensorWord) -> Result<bool> {
    let x = word(w.clone());
    let lhs = phi_inverse_apply(u, &coder_apply(v, &phi_apply(u, &x)?)?)?;
    let rhs = coder_apply(&conjugate_coder(u, v)?, &x)?;
    Ok(lhs == rhs)
}

/// `log_∘(φ_P)(x) = Σ_{k≥1} (-1)^(k-1)/k (φ_P - Id)^k (x)`. For tangent `P`
/// the operator `φ_P - Id` strictly shortens words, so the sum stops at the
/// word length.
pub fn operator_log_apply(p: &Series, x: &TElem) -> Result<TElem> {
    p.require_tangent()?;
    let mut out = TElem::zero();
    let mut power = x.clone();
    for k in 1..=max_len(x) {
        power = &phi_apply(p, &power)? - &power;
        if power.is_zero() {
            break;
        }
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&power, &Rational::new(sign.into(), k.into()));
    }
    Ok(out)
}

/// `exp_∘(D_V)(x) = Σ_k D_V^k(x) / k!`; needs `v1 = 0` so that `D_V`
/// strictly shortens words.
pub fn coder_exp_apply(v: &Series, x: &TElem) -> Result<TElem> {
    if !v.coeff(1)?.is_zero() {
        return Err(Error::NotInfinitesimal(v.coeff(1)?.to_string()));
    }
    let mut out = x.clone();
    let mut power = x.clone();
    for k in 1..=max_len(x) {
        power = coder_apply(v, &power)?;
        if power.is_zero() {
            break;
        }
        out.add_scaled(&power, &Rational::new(1.into(), factorial(k)));
    }
    Ok(out)
}

/// Logarithm of `φ_P` for tangent `P`: reads the series `V` off the action of
/// `L = log_∘(φ_P)` on generic words (`v_n` is the coefficient of the fully
/// merged letter), then checks `L = D_V` on every generic word up to the
/// order of `P`.
pub fn coder_log(p: &Series) -> Result<Series> {
    p.require_tangent()?;
    let n = p.order();
    let mut logs = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for len in 1..=n {
        let g = TensorWord::generic(1, len);
        let l = operator_log_apply(p, &word(g.clone()))?;
        coeffs.push(l.coeff(&TensorWord(vec![Monomial::product(g.letters())])));
        logs.push((g, l));
    }
    let v = Series::from_coeffs(coeffs);
    for (g, l) in &logs {
        if coder_apply_word(&v, g)? != *l {
            return Err(Error::VerificationFailure(format!(
                "logarithm of φ_P is not the coderivation D_V on [{g}]"
            )));
        }
    }
    Ok(v)
}

/// `φ_P ∘ π_n ∘ φ_P⁻¹`, where `π_n` keeps the words of length `n`: the
/// component of `x` in the eigenspace of `Y_P = φ_P∘Y∘φ_P⁻¹` for eigenvalue `n`.
pub fn grading_project(p: &Series, n: usize, x: &TElem) -> Result<TElem> {
    p.require_tangent()?;
    let pre = phi_inverse_apply(p, x)?;
    phi_apply(p, &pre.filter(|w| w.len() == n))
}

/// `Y_P = φ_P∘Y∘φ_P⁻¹`.
pub fn twisted_degree_apply(p: &Series, x: &TElem) -> Result<TElem> {
    phi_apply(p, &degree_operator(&phi_inverse_apply(p, x)?))
}

/// Applies an algebra morphism of `A` letterwise: `T(f)(a1...an) = f(a1)...f(an)`.
pub fn tensor_substitute(x: &TElem, images: &BTreeMap<Generator, AElem>) -> Result<TElem> {
    x.try_map_linear(|w| {
        let mut acc = word(TensorWord::empty());
        for m in w.letters() {
            let img = substitute_monomial(m, images)?;
            acc = acc.bilinear(&img, |u, a| {
                let mut v = u.0.clone();
                v.push(a.clone());
                LinComb::basis(TensorWord(v))
            });
        }
        Ok(acc)
    })
}

/// Checks that letterwise substitution commutes with `φ_P` and `D_P` on `w`.
pub fn naturality_check(
    p: &Series,
    images: &BTreeMap<Generator, AElem>,
    w: &TensorWord,
) -> Result<bool> {
    let x = word(w.clone());
    let fx = tensor_substitute(&x, images)?;
    let phi_ok = tensor_substitute(&phi_apply(p, &x)?, images)? == phi_apply(p, &fx)?;
    let coder_ok = tensor_substitute(&coder_apply(p, &x)?, images)? == coder_apply(p, &fx)?;
    Ok(phi_ok && coder_ok)
}

/// `φ_{E_q}` through nondecreasing set partitions `(P1, ..., Pk)` of the
/// positions, weighted by `q^(n-k) / (|P1|! ... |Pk|!)`.
pub fn phi_eq_by_partitions(q: &Rational, w: &TensorWord) -> TElem {
    let n = w.len();
    if n == 0 {
        return word(TensorWord::empty());
    }
    let mut out = TElem::zero();
    for blocks in packed_words(n) {
        // Blocks must be ordered: every element of P_i precedes every element of P_j.
        if blocks.windows(2).any(|p| p[0] > p[1]) {
            continue;
        }
        let k = *blocks.iter().max().unwrap() as usize;
        let mut parts: Vec<Vec<Monomial>> = vec![Vec::new(); k];
        for (i, &b) in blocks.iter().enumerate() {
            parts[b as usize - 1].push(w.letters()[i].clone());
        }
        let denom = parts
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, p| acc * factorial(p.len()));
        let c = rational_pow(q, n - k) / Rational::from_integer(denom);
        let letters = parts.iter().map(|p| Monomial::product(p)).collect();
        out.add_term(TensorWord(letters), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::tensorhopf::{deconcat, pair_map};

    fn w(s: &str) -> TensorWord {
        s.parse().unwrap()
    }

    fn t(terms: &[(&str, Rational)]) -> TElem {
        terms.iter().map(|(s, c)| (w(s), c.clone())).collect()
    }

    fn ones(words: &[&str]) -> TElem {
        words.iter().map(|s| (w(s), int(1))).collect()
    }

    #[test]
    fn f_examples() {
        let e1 = Series::exp1(4);
        assert_eq!(
            f_apply(&e1, &w("1 2")).unwrap(),
            aelem_from_monomial("1.2".parse().unwrap()).scale(&rat(1, 2))
        );
        assert!(f_apply(&Series::identity(4), &w("1 2")).unwrap().is_zero());
        let p = Series::from_coeffs(vec![rat(3, 7)]);
        assert_eq!(
            f_apply(&p, &w("1")).unwrap(),
            aelem_from_monomial("1".parse().unwrap()).scale(&rat(3, 7))
        );
        assert!(f_apply(&p, &w("1 2")).is_err());
        // Corestriction of φ_P and D_P agree with f_P.
        let phi = phi_apply(&e1, &ones(&["1 2 3"])).unwrap();
        assert_eq!(phi.coeff(&w("1.2.3")), rat(1, 6));
        let f = NatMap {
            series: e1.clone(),
            kind: NatKind::F,
        };
        assert_eq!(
            f.apply(&ones(&["1 2 3"])).unwrap(),
            t(&[("1.2.3", rat(1, 6))])
        );
    }

    #[test]
    fn phi_examples() {
        let id = Series::identity(5);
        let x = ones(&["1 2 3", "2.2 1"]);
        assert_eq!(phi_apply(&id, &x).unwrap(), x);

        let e1 = Series::exp1(5);
        assert_eq!(
            phi_apply(&e1, &ones(&["1 2"])).unwrap(),
            t(&[("1 2", int(1)), ("1.2", rat(1, 2))])
        );
        assert_eq!(
            phi_apply(&e1, &ones(&["1 2 3"])).unwrap(),
            t(&[
                ("1 2 3", int(1)),
                ("1.2 3", rat(1, 2)),
                ("1 2.3", rat(1, 2)),
                ("1.2.3", rat(1, 6)),
            ])
        );
        assert_eq!(phi_apply(&e1, &ones(&["()"])).unwrap(), ones(&["()"]));
        assert_eq!(
            phi_apply(&Series::exp1(2), &ones(&["1 2 3"])),
            Err(Error::TruncationExceeded {
                needed: 3,
                order: 2
            })
        );
    }

    #[test]
    fn phi_is_triangular() {
        let p = Series::from_coeffs(vec![int(2), rat(1, 3), int(-1), rat(5, 2), int(1)]);
        for n in 0..=5 {
            let out = phi_apply(&p, &word(TensorWord::generic(1, n))).unwrap();
            assert!(max_len(&out) <= n);
        }
    }

    #[test]
    fn compose_check_examples() {
        let id = Series::identity(5);
        let e1 = Series::exp1(5);
        let l = Series::log1p(5);
        for n in 0..=5 {
            let g = TensorWord::generic(1, n);
            assert!(phi_compose_check(&id, &id, &g).unwrap());
            assert!(phi_compose_check(&e1, &l, &g).unwrap());
            let composite = phi_apply(&e1, &phi_apply(&l, &word(g.clone())).unwrap()).unwrap();
            assert_eq!(composite, word(g));
        }
    }

    #[test]
    fn coder_examples() {
        for n in 0..=5 {
            let g = word(TensorWord::generic(1, n));
            assert_eq!(
                coder_apply(&Series::identity(5), &g).unwrap(),
                g.scale(&int(n as i64))
            );
        }
        let x2 = Series::monomial(2, 3);
        assert_eq!(coder_apply(&x2, &ones(&["1 2"])).unwrap(), ones(&["1.2"]));
        assert_eq!(
            coder_apply(&x2, &ones(&["1 2 3"])).unwrap(),
            ones(&["1.2 3", "1 2.3"])
        );
        assert!(coder_apply(&x2, &ones(&["()"])).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        assert!(coder_bracket(2, 2, &w("1 2 3")).unwrap());
        assert!(coder_bracket(2, 1, &w("1 2")).unwrap());
        // [D_{X^2}, Y] on [a1 a2]: D(2·w) - Y(D w) = 2[a1·a2] - [a1·a2] = D_{X^2}(w).
        let x2 = Series::monomial(2, 2);
        let id = Series::identity(2);
        let x = ones(&["1 2"]);
        let lhs = &coder_apply(&x2, &coder_apply(&id, &x).unwrap()).unwrap()
            - &coder_apply(&id, &coder_apply(&x2, &x).unwrap()).unwrap();
        assert_eq!(lhs, ones(&["1.2"]));
    }

    #[test]
    fn coderivation_law_and_linearity() {
        let p = Series::from_coeffs(vec![int(1), rat(-1, 2), int(3), rat(2, 5), int(0)]);
        let q = Series::from_coeffs(vec![int(0), int(1), rat(1, 3), int(-2), int(7)]);
        let lambda = rat(-3, 4);
        for n in 0..=5 {
            let x = word(TensorWord::generic(1, n));
            let lhs = deconcat(&coder_apply(&p, &x).unwrap());
            let dx = deconcat(&x);
            let rhs = &pair_map(&dx, |a| coder_apply(&p, a).unwrap(), |b| b.clone())
                + &pair_map(&dx, |a| a.clone(), |b| coder_apply(&p, b).unwrap());
            assert_eq!(lhs, rhs);

            let sum = p.add(&q.scale(&lambda)).unwrap();
            let mut expected = coder_apply(&p, &x).unwrap();
            expected.add_scaled(&coder_apply(&q, &x).unwrap(), &lambda);
            assert_eq!(coder_apply(&sum, &x).unwrap(), expected);
        }
    }

    #[test]
    fn conjugation_examples() {
        let v = Series::from_coeffs(vec![int(1), int(2), rat(1, 2), int(0), int(3)]);
        assert_eq!(conjugate_coder(&Series::identity(5), &v).unwrap(), v);
        assert_eq!(
            conjugate_coder(&Series::log1p(8), &Series::identity(8)).unwrap(),
            Series::xlog1p(8)
        );
        // 1 - e^{-X}
        let expected: Vec<Rational> = (1..=6)
            .map(|n| {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                Rational::new(sign.into(), factorial(n))
            })
            .collect();
        assert_eq!(
            conjugate_coder(&Series::exp1(6), &Series::identity(6)).unwrap(),
            Series::from_coeffs(expected)
        );
        let u = Series::log1p(8);
        let w_ = u.inverse().unwrap();
        let round =
            conjugate_coder(&u, &conjugate_coder(&w_, &Series::xlog1p(8)).unwrap()).unwrap();
        assert_eq!(round, Series::xlog1p(8));
        assert_eq!(
            conjugate_coder(&Series::monomial(2, 4), &Series::identity(4)),
            Err(Error::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn conjugation_identity_holds_with_non_tangent_u() {
        let u = Series::from_coeffs(vec![int(2), int(-1), rat(1, 3), int(1), int(0)]);
        for v in [
            Series::identity(5),
            Series::monomial(2, 5),
            Series::monomial(3, 5),
        ] {
            for n in 0..=5 {
                assert!(conjugation_check(&u, &v, &TensorWord::generic(1, n)).unwrap());
            }
        }
    }

    #[test]
    fn log_examples() {
        assert_eq!(coder_log(&Series::identity(5)).unwrap(), Series::zero(5));
        let e1 = Series::exp1(5);
        let v = coder_log(&e1).unwrap();
        assert!(v.coeff(1).unwrap().is_zero());
        for n in 0..=5 {
            let x = word(TensorWord::generic(1, n));
            assert_eq!(
                coder_exp_apply(&v, &x).unwrap(),
                phi_apply(&e1, &x).unwrap()
            );
        }
        assert!(matches!(
            coder_log(&Series::from_coeffs(vec![int(2), int(1)])),
            Err(Error::NotTangentToIdentity(_))
        ));
        assert!(matches!(
            coder_exp_apply(&Series::identity(2), &ones(&["1"])),
            Err(Error::NotInfinitesimal(_))
        ));
    }

    #[test]
    fn grading_examples() {
        let e1 = Series::exp1(5);
        let x = ones(&["1 2"]);
        let p2 = grading_project(&e1, 2, &x).unwrap();
        let p1 = grading_project(&e1, 1, &x).unwrap();
        assert_eq!(&p1 + &p2, x);
        let d = Series::xlog1p(5);
        assert_eq!(coder_apply(&d, &p2).unwrap(), p2.scale(&int(2)));
        assert_eq!(coder_apply(&d, &p1).unwrap(), p1);
        // P = X gives the homogeneous components.
        let id = Series::identity(3);
        let y = ones(&["1 2", "3", "1 2 3"]);
        assert_eq!(grading_project(&id, 2, &y).unwrap(), ones(&["1 2"]));
        assert!(grading_project(&Series::from_coeffs(vec![int(3)]), 1, &ones(&["1"])).is_err());
    }

    #[test]
    fn projections_are_orthogonal_idempotents() {
        let p = Series::from_coeffs(vec![int(1), rat(-1, 2), int(2), rat(1, 3), int(-1)]);
        for len in 1..=5 {
            let x = word(TensorWord::generic(1, len));
            let mut sum = TElem::zero();
            for n in 1..=len {
                let pn = grading_project(&p, n, &x).unwrap();
                for m in 1..=len {
                    let pmn = grading_project(&p, m, &pn).unwrap();
                    let expected = if m == n { pn.clone() } else { TElem::zero() };
                    assert_eq!(pmn, expected, "len {len}, n {n}, m {m}");
                }
                sum += &pn;
            }
            assert_eq!(sum, x);
        }
    }

    #[test]
    fn logarithms_are_infinitesimal() {
        let series = [
            Series::from_coeffs(vec![int(1), int(3), rat(-2, 5), int(1), rat(1, 7)]),
            Series::from_coeffs(vec![int(1), rat(1, 2), int(0), int(-4), int(2)]),
            Series::log1p(5),
        ];
        for p in &series {
            let v = coder_log(p).unwrap();
            assert!(v.coeff(1).unwrap().is_zero());
            for n in 0..=5 {
                let x = word(TensorWord::generic(1, n));
                assert_eq!(coder_exp_apply(&v, &x).unwrap(), phi_apply(p, &x).unwrap());
            }
        }
    }

    #[test]
    fn naturality_examples() {
        let g = |i| Generator::new(i).unwrap();
        let a = |s: &str| aelem_from_monomial(s.parse().unwrap());
        let e1 = Series::exp1(4);
        let identity: BTreeMap<_, _> = (1..=3).map(|i| (g(i), a(&i.to_string()))).collect();
        assert!(naturality_check(&e1, &identity, &w("1 2 3")).unwrap());
        let relabel = BTreeMap::from([(g(1), a("2.3"))]);
        assert!(naturality_check(&e1, &relabel, &w("1 1")).unwrap());
        let sum = BTreeMap::from([
            (g(1), &a("1") + &a("2.2")),
            (g(2), a("3").scale(&rat(1, 2))),
        ]);
        assert!(naturality_check(&e1, &sum, &w("1 2 1")).unwrap());
        assert_eq!(
            naturality_check(&e1, &relabel, &w("1 2")),
            Err(Error::MissingImage(2))
        );
    }

    #[test]
    fn partition_formula_matches_flaphi() {
        for q in [int(0), rat(1, 2), int(1), rat(-2, 3)] {
            let eq = Series::e_q(&q, 5);
            for n in 0..=5 {
                let g = TensorWord::generic(1, n);
                assert_eq!(
                    phi_eq_by_partitions(&q, &g),
                    phi_apply_word(&eq, &g).unwrap()
                );
            }
        }
    }
}
