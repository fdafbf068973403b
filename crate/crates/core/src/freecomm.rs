//! The free nonunital commutative algebra on generators `a1, a2, ...`.
//!
//! Identities among natural operations hold for every commutative algebra
//! exactly when they hold here on words of pairwise distinct generators, so
//! this algebra is the test bed for everything built on top of it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::Parse("generator indices start at 1".into()));
        }
        Ok(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A product `a_{i1} · ... · a_{ik}` of generators (a nonempty multiset,
/// kept sorted). Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<u32>,
}

impl Monomial {
    pub fn generator(g: Generator) -> Self {
        Monomial { factors: vec![g.0] }
    }

    /// Single generator `a_index`. Panics on index 0.
    pub fn gen(index: u32) -> Self {
        Monomial::generator(Generator::new(index).expect("generator index must be positive"))
    }

    pub fn from_factors(mut factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parse("a monomial needs at least one factor".into()));
        }
        if factors.contains(&0) {
            return Err(Error::Parse("generator indices start at 1".into()));
        }
        factors.sort_unstable();
        Ok(Monomial { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.factors.iter().map(|&i| Generator(i))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            if self.factors[i] <= other.factors[j] {
                factors.push(self.factors[i]);
                i += 1;
            } else {
                factors.push(other.factors[j]);
                j += 1;
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    /// Product of a nonempty slice of monomials.
    pub fn product(ms: &[Monomial]) -> Monomial {
        let mut factors: Vec<u32> = ms.iter().flat_map(|m| m.factors.iter().copied()).collect();
        assert!(!factors.is_empty(), "empty product in a nonunital algebra");
        factors.sort_unstable();
        Monomial { factors }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split('.')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid monomial `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Monomial::from_factors(factors)
    }
}

/// An element of the algebra `A`.
pub type AElem = LinComb<Monomial>;

pub fn aelem_mul(x: &AElem, y: &AElem) -> AElem {
    x.bilinear(y, |m, n| LinComb::basis(m.mul(n)))
}

/// Applies the algebra morphism determined by `images` on generators.
pub fn substitute(e: &AElem, images: &BTreeMap<Generator, AElem>) -> Result<AElem> {
    e.try_map_linear(|m| substitute_monomial(m, images))
}

pub fn substitute_monomial(m: &Monomial, images: &BTreeMap<Generator, AElem>) -> Result<AElem> {
    let mut acc: Option<AElem> = None;
    for g in m.generators() {
        let img = images.get(&g).ok_or(Error::MissingImage(g.index()))?;
        acc = Some(match acc {
            None => img.clone(),
            Some(a) => aelem_mul(&a, img),
        });
    }
    Ok(acc.expect("monomials are nonempty"))
}

pub fn aelem_from_monomial(m: Monomial) -> AElem {
    LinComb::term(m, crate::exact::Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn multiset_union() {
        assert_eq!(mono("1").mul(&mono("2")), mono("1.2"));
        assert_eq!(mono("1.2").mul(&mono("1")), mono("1.1.2"));
        assert_eq!(mono("2.1").to_string(), "1.2");
    }

    #[test]
    fn graded_lex_order() {
        assert!(mono("3") < mono("1.1"));
        assert!(mono("1.2") < mono("1.3"));
        assert!(mono("1.3") < mono("2.2"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<Monomial>().is_err());
        assert!("0".parse::<Monomial>().is_err());
        assert!("1..2".parse::<Monomial>().is_err());
    }

    #[test]
    fn substitution_examples() {
        let g = |i| Generator::new(i).unwrap();
        let a = |s: &str| aelem_from_monomial(mono(s));

        let images = BTreeMap::from([(g(1), a("2"))]);
        assert_eq!(substitute(&a("1"), &images).unwrap(), a("2"));

        let images = BTreeMap::from([(g(1), &a("2") + &a("3"))]);
        let mut expected = a("2.2");
        expected.add_term(mono("2.3"), int(2));
        expected.add_term(mono("3.3"), int(1));
        assert_eq!(substitute(&a("1.1"), &images).unwrap(), expected);

        let images = BTreeMap::from([(g(1), a("3.4")), (g(2), a("5"))]);
        assert_eq!(substitute(&a("1.2"), &images).unwrap(), a("3.4.5"));

        let images = BTreeMap::from([(g(1), a("3"))]);
        assert_eq!(substitute(&a("1.2"), &images), Err(Error::MissingImage(2)));
    }

    #[test]
    fn mono_mul_exhaustive_small() {
        // All monomials over generators 1..=2 of degree <= 2; triple products
        // stay within total degree 6.
        let ms: Vec<Monomial> = ["1", "2", "1.1", "1.2", "2.2"]
            .iter()
            .map(|s| mono(s))
            .collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(a.mul(b), b.mul(a));
                for c in &ms {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    fn monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(1u32..5, 1..4).prop_map(|f| Monomial::from_factors(f).unwrap())
    }

    fn aelem() -> impl Strategy<Value = AElem> {
        prop::collection::vec((monomial(), -3i64..=3), 1..4)
            .prop_map(|ts| ts.into_iter().map(|(m, c)| (m, int(c))).collect())
    }

    proptest! {
        #[test]
        fn mono_mul_commutes_and_associates(a in monomial(), b in monomial(), c in monomial()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn substitution_is_a_morphism(
            e in aelem(),
            f in aelem(),
            imgs in prop::collection::vec(aelem(), 4),
        ) {
            let sigma: BTreeMap<Generator, AElem> = imgs
                .into_iter()
                .enumerate()
                .map(|(i, x)| (Generator::new(i as u32 + 1).unwrap(), x))
                .collect();
            let lhs = substitute(&aelem_mul(&e, &f), &sigma).unwrap();
            let rhs = aelem_mul(&substitute(&e, &sigma).unwrap(), &substitute(&f, &sigma).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
