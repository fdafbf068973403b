//! Truncated formal power series without constant term, under substitution.
//!
//! A [`Series`] of order `N` stores `p1, ..., pN` exactly. Binary operations
//! require equal orders, and asking for `p_n` with `n > N` is an error.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, parse_rational, rational_pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    /// `coeffs[i]` is the coefficient of `X^(i+1)`.
    coeffs: Vec<Rational>,
}

impl Series {
    /// The series `p1 X + p2 X^2 + ...` of order `coeffs.len()`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::from_coeffs(vec![Rational::zero(); order])
    }

    pub fn identity(order: usize) -> Self {
        Series::monomial(1, order)
    }

    /// `X^k` truncated at `order` (which must be at least 1).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if (1..=order).contains(&k) {
            s.coeffs[k - 1] = Rational::one();
        }
        s
    }

    /// `E_q = Σ q^(n-1) X^n / n!`.
    pub fn e_q(q: &Rational, order: usize) -> Self {
        Series::from_coeffs(
            (1..=order)
                .map(|n| rational_pow(q, n - 1) / Rational::from_integer(factorial(n)))
                .collect(),
        )
    }

    pub fn exp1(order: usize) -> Self {
        Series::e_q(&Rational::one(), order)
    }

    /// `ln(1 + X)`.
    pub fn log1p(order: usize) -> Self {
        Series::from_coeffs(
            (1..=order)
                .map(|n| {
                    let sign = if n % 2 == 1 { 1 } else { -1 };
                    Rational::new(sign.into(), n.into())
                })
                .collect(),
        )
    }

    /// `(1 + X) ln(1 + X) = X + Σ_{k≥2} (-1)^k X^k / (k(k-1))`.
    pub fn xlog1p(order: usize) -> Self {
        Series::from_coeffs(
            (1..=order)
                .map(|k| {
                    if k == 1 {
                        Rational::one()
                    } else {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        Rational::new(sign.into(), (k * (k - 1)).into())
                    }
                })
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `p_n`; `p_0 = 0` by construction.
    pub fn coeff(&self, n: usize) -> Result<Rational> {
        match n {
            0 => Ok(Rational::zero()),
            _ if n <= self.order() => Ok(self.coeffs[n - 1].clone()),
            _ => Err(Error::TruncationExceeded {
                needed: n,
                order: self.order(),
            }),
        }
    }

    /// Unchecked `p_n` for `1 <= n <= order`.
    pub(crate) fn p(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    pub fn is_tangent_to_identity(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn require_tangent(&self) -> Result<()> {
        if self.is_tangent_to_identity() {
            Ok(())
        } else {
            Err(Error::NotTangentToIdentity(self.coeffs[0].to_string()))
        }
    }

    /// Checks that words of length `len` can be handled.
    pub fn require_order(&self, len: usize) -> Result<()> {
        if len > self.order() {
            Err(Error::TruncationExceeded {
                needed: len,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Same coefficients, truncated or zero-extended to `order`.
    ///
    /// Zero-extension asserts that the omitted coefficients really vanish, so
    /// it is only meaningful for polynomials.
    pub fn with_order(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, Rational::zero());
        Series::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `P(Q(X))` through order `N`.
    pub fn compose(&self, q: &Series) -> Result<Series> {
        self.check_order(q)?;
        let n = self.order();
        let qs = TaylorSeries::from_series(q);
        let mut acc = TaylorSeries::zero(n);
        let mut power = TaylorSeries::one(n);
        for i in 1..=n {
            power = power.mul(&qs);
            acc = acc.add(&power.scale(self.p(i)));
        }
        acc.into_series()
    }

    /// Compositional inverse `W` with `P∘W = W∘P = X`, solved one degree at a
    /// time from the triangular system `[X^n] P(W) = δ_{n,1}`.
    pub fn inverse(&self) -> Result<Series> {
        let p1 = self.p(1).clone();
        if p1.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let n = self.order();
        let mut w = vec![Rational::zero(); n];
        for k in 1..=n {
            // With w_k = 0, the X^k coefficient of P(W) only involves w_1..w_{k-1}.
            let partial = self.compose(&Series::from_coeffs(w.clone()))?;
            let target = if k == 1 {
                Rational::one()
            } else {
                Rational::zero()
            };
            w[k - 1] = (target - partial.p(k)) / &p1;
        }
        Ok(Series::from_coeffs(w))
    }

    /// Formal derivative `P'`, known through `X^(N-1)`.
    pub fn derivative(&self) -> TaylorSeries {
        let coeffs = (1..=self.order())
            .map(|i| self.p(i) * int(i as i64))
            .collect();
        TaylorSeries::new(coeffs, self.order() - 1)
    }

    /// `self / g`, where `self` has no constant term and `g(0) != 0`.
    /// Exact through order `N` as long as `g` is known through `X^(N-1)`.
    pub fn divide(&self, g: &TaylorSeries) -> Result<Series> {
        let n = self.order();
        if g.precision + 1 < n {
            return Err(Error::TruncationExceeded {
                needed: n - 1,
                order: g.precision,
            });
        }
        if g.coeff(0).is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        // self = X * f1 with f1 known through X^(N-1).
        let f1 = TaylorSeries::new(self.coeffs.clone(), n - 1);
        let q = f1.div(&g.truncate(n - 1))?;
        Ok(Series::from_coeffs(q.coeffs))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coeffs:")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Looks up a named series: `id`, `exp1`, `log1p`, `xlog1p`.
pub fn named(name: &str, order: usize) -> Result<Series> {
    if order == 0 {
        return Err(Error::Parse("series order must be at least 1".into()));
    }
    match name {
        "id" => Ok(Series::identity(order)),
        "exp1" => Ok(Series::exp1(order)),
        "log1p" => Ok(Series::log1p(order)),
        "xlog1p" => Ok(Series::xlog1p(order)),
        _ => Err(Error::UnknownSeries(name.to_string())),
    }
}

/// Parses a series literal: a name accepted by [`named`], `Eq:<q>`, or
/// `coeffs:p1,p2,...`. Named series are built at `order`; explicit
/// coefficient lists carry their own order.
pub fn parse_series(literal: &str, order: usize) -> Result<Series> {
    if let Some(q) = literal.strip_prefix("Eq:") {
        if order == 0 {
            return Err(Error::Parse("series order must be at least 1".into()));
        }
        return Ok(Series::e_q(&parse_rational(q)?, order));
    }
    if let Some(cs) = literal.strip_prefix("coeffs:") {
        let coeffs = cs
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        return Ok(Series::from_coeffs(coeffs));
    }
    named(literal, order)
}

/// A truncated power series that may have a constant term, known through
/// `X^precision`. Derivatives and quotients live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorSeries {
    coeffs: Vec<Rational>,
    precision: usize,
}

impl TaylorSeries {
    pub fn new(mut coeffs: Vec<Rational>, precision: usize) -> Self {
        coeffs.resize(precision + 1, Rational::zero());
        TaylorSeries { coeffs, precision }
    }

    pub fn zero(precision: usize) -> Self {
        TaylorSeries::new(Vec::new(), precision)
    }

    pub fn one(precision: usize) -> Self {
        TaylorSeries::new(vec![Rational::one()], precision)
    }

    pub fn from_series(s: &Series) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend_from_slice(&s.coeffs);
        TaylorSeries::new(coeffs, s.order())
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision);
        TaylorSeries::new(self.coeffs[..=p].to_vec(), p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        TaylorSeries::new((0..=p).map(|i| self.coeff(i) + other.coeff(i)).collect(), p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TaylorSeries::new(self.coeffs.iter().map(|a| a * c).collect(), self.precision)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        let mut out = vec![Rational::zero(); p + 1];
        for i in 0..=p {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(p - i) {
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TaylorSeries::new(out, p)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let c0 = other.coeff(0);
        if c0.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let p = self.precision.min(other.precision);
        let mut out: Vec<Rational> = Vec::with_capacity(p + 1);
        for n in 0..=p {
            let mut acc = self.coeff(n);
            for (k, o) in out.iter().enumerate() {
                acc -= o * other.coeff(n - k);
            }
            out.push(acc / &c0);
        }
        Ok(TaylorSeries::new(out, p))
    }

    /// Composition `self(Q(X))` for `Q` without constant term.
    pub fn compose(&self, q: &Series) -> Self {
        let p = self.precision.min(q.order());
        let qs = TaylorSeries::from_series(q).truncate(p);
        let mut acc = TaylorSeries::zero(p);
        let mut power = TaylorSeries::one(p);
        for i in 0..=p {
            acc = acc.add(&power.scale(&self.coeffs[i]));
            power = power.mul(&qs);
        }
        acc
    }

    fn into_series(self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "series",
                expected: "0",
            });
        }
        Ok(Series::from_coeffs(self.coeffs[1..].to_vec()))
    }
}
