//! Property suites. Each suite checks an identity exhaustively on words of
//! distinct generators up to a degree bound, which by naturality covers every
//! commutative algebra, and adds a few seeded random words with repeated or
//! merged letters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, Rational};
use crate::fps::Series;
use crate::freecomm::Monomial;
use crate::hausdorff::{
    eulerian_e, eulerian_identity_check, goldberg_coeff, hausdorff_series, reconstruct, NCWord,
};
use crate::lincomb::LinComb;
use crate::nattrans::{
    coder_apply, coder_bracket, conjugate_coder, conjugation_check, phi_apply, phi_compose_check,
};
use crate::tensorhopf::{
    deconcat, half_shuffle_left_lin, qshuffle, shuffle, shuffle_via_descents, word, TensorWord,
};
use crate::wqsym::{
    coproduct_compat_unchecked, e1, e1_closed, embed_fqsym, fqsym_shuffle, iqsym_coproduct_compat,
    packed_words_of, permutations_of, s_hat, wcompose, wcompose_lin, wcoproduct_lin, wpair_product,
    wproduct, PackedWord, WElem, WKind,
};

pub const SUITES: [&str; 11] = [
    "zinbiel",
    "hopf-compat",
    "hoffman",
    "compose-law",
    "bracket",
    "conjugation",
    "grading",
    "e1",
    "embeddings",
    "eulerian",
    "goldberg",
];

const SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> Self {
        SuiteReport {
            suite,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, outcome: Result<bool>, label: impl FnOnce() -> String) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }
}

/// Runs one suite, or every suite for `"all"`, in a fixed order.
pub fn run(name: &str, max_n: usize) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return Ok(SUITES.par_iter().map(|s| run_one(s, max_n)).collect());
    }
    let suite = SUITES
        .iter()
        .find(|s| **s == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(vec![run_one(suite, max_n)])
}

fn run_one(suite: &'static str, max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new(suite);
    match suite {
        "zinbiel" => zinbiel(&mut r, max_n),
        "hopf-compat" => hopf_compat(&mut r, max_n),
        "hoffman" => hoffman(&mut r, max_n),
        "compose-law" => compose_law(&mut r, max_n),
        "bracket" => bracket(&mut r, max_n),
        "conjugation" => conjugation(&mut r, max_n),
        "grading" => grading(&mut r, max_n),
        "e1" => e1_suite(&mut r, max_n),
        "embeddings" => embeddings(&mut r, max_n),
        "eulerian" => eulerian(&mut r, max_n),
        "goldberg" => goldberg(&mut r, max_n),
        _ => unreachable!("suite names are validated"),
    }
    r
}

/// Lengths `(l1, ..., lk)` with positive parts summing to at most `max_n`.
fn length_tuples(k: usize, max_n: usize) -> Vec<Vec<usize>> {
    (k..=max_n)
        .flat_map(|n| crate::combinat::compositions_with_parts(n, k))
        .collect()
}

/// Consecutive blocks of `a1 a2 ...` with the given lengths.
fn generic_words(lengths: &[usize]) -> Vec<TensorWord> {
    let mut next = 1u32;
    lengths
        .iter()
        .map(|&l| {
            let w = TensorWord::generic(next, l);
            next += l as u32;
            w
        })
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> TensorWord {
    TensorWord(
        (0..len)
            .map(|_| {
                let factors = (0..rng.gen_range(1..=2))
                    .map(|_| rng.gen_range(1..=3))
                    .collect();
                Monomial::from_factors(factors).expect("nonempty")
            })
            .collect(),
    )
}

/// Random words with repeated and merged letters, total length ≤ `max_n`.
fn random_tuples(
    rng: &mut ChaCha8Rng,
    k: usize,
    max_n: usize,
    count: usize,
) -> Vec<Vec<TensorWord>> {
    let tuples = length_tuples(k, max_n);
    if tuples.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let lengths = &tuples[rng.gen_range(0..tuples.len())];
            lengths.iter().map(|&l| random_word(rng, l)).collect()
        })
        .collect()
}

fn random_tangent_series(rng: &mut ChaCha8Rng, order: usize) -> Series {
    let mut coeffs = vec![Rational::from_integer(1.into())];
    coeffs.extend((1..order).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=4))));
    Series::from_coeffs(coeffs)
}

fn zinbiel(r: &mut SuiteReport, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut triples = length_tuples(3, max_n)
        .iter()
        .map(|l| generic_words(l))
        .collect::<Vec<_>>();
    triples.extend(random_tuples(&mut rng, 3, max_n, 8));
    for t in &triples {
        let (x, y, z) = (word(t[0].clone()), word(t[1].clone()), word(t[2].clone()));
        let outcome = (|| {
            let lhs = half_shuffle_left_lin(&half_shuffle_left_lin(&x, &y)?, &z)?;
            let inner = &half_shuffle_left_lin(&y, &z)? + &half_shuffle_left_lin(&z, &y)?;
            Ok(lhs == half_shuffle_left_lin(&x, &inner)?)
        })();
        r.check(outcome, || {
            format!(
                "(x≺y)≺z ≠ x≺(y≺z+z≺y) for x=[{}] y=[{}] z=[{}]",
                t[0], t[1], t[2]
            )
        });
    }
    let mut pairs: Vec<Vec<TensorWord>> = length_tuples(2, max_n)
        .iter()
        .map(|l| generic_words(l))
        .collect();
    pairs.extend(random_tuples(&mut rng, 2, max_n, 8));
    for p in &pairs {
        let outcome = shuffle_via_descents(&p[0], &p[1]).map(|(left, right)| {
            let (x, y) = (word(p[0].clone()), word(p[1].clone()));
            Ok::<bool, Error>(
                left == half_shuffle_left_lin(&x, &y)?
                    && right == half_shuffle_left_lin(&y, &x)?
                    && &left + &right == shuffle(&x, &y),
            )
        });
        r.check(outcome.and_then(|b| b), || {
            format!(
                "half-shuffles disagree with the descent formula on [{}], [{}]",
                p[0], p[1]
            )
        });
    }
}

fn hopf_compat(r: &mut SuiteReport, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let n = max_n.min(5);
    let series = [
        Series::exp1(n.max(1)),
        Series::log1p(n.max(1)),
        random_tangent_series(&mut rng, n.max(1)),
    ];
    for p in &series {
        for len in 0..=n {
            let w = TensorWord::generic(1, len);
            let outcome = (|| {
                let x = word(w.clone());
                let lhs = deconcat(&phi_apply(p, &x)?);
                let rhs = deconcat(&x).try_map_linear(|(a, b)| {
                    let fa = phi_apply(p, &word(a.clone()))?;
                    let fb = phi_apply(p, &word(b.clone()))?;
                    Ok::<_, Error>(fa.bilinear(&fb, |u, v| LinComb::basis((u.clone(), v.clone()))))
                })?;
                Ok(lhs == rhs)
            })();
            r.check(outcome, || {
                format!("Δ∘φ_P ≠ (φ_P⊗φ_P)∘Δ on [{w}] with P = {p}")
            });
        }
    }
    let m = max_n.min(4);
    for kind in [WKind::Shuffle, WKind::QShuffle] {
        for a in 0..=m {
            for b in 0..=(m - a) {
                for f in packed_words_of(a) {
                    for g in packed_words_of(b) {
                        let outcome = (|| {
                            let (fe, ge) = (WElem::basis(f.clone()), WElem::basis(g.clone()));
                            let lhs = wcoproduct_lin(&wproduct(&kind, &fe, &ge)?);
                            let rhs =
                                wpair_product(&kind, &wcoproduct_lin(&fe), &wcoproduct_lin(&ge))?;
                            Ok(lhs == rhs)
                        })();
                        r.check(outcome, || {
                            format!("Δ(f*g) ≠ Δf*Δg for f={f}, g={g}, {kind:?}")
                        });
                    }
                }
            }
        }
    }
    let mut witnessed = false;
    for n in 1..=m {
        for g in packed_words_of(n) {
            for f in packed_words_of(g.max_value()) {
                if f.is_nondecreasing() {
                    r.check(iqsym_coproduct_compat(&f, &g), || {
                        format!("Δ(f∘g) ≠ Δf∘Δg for nondecreasing f={f}, g={g}")
                    });
                } else if coproduct_compat_unchecked(&f, &g) == Ok(false) {
                    witnessed = true;
                }
            }
        }
    }
    if m >= 2 {
        r.check(Ok(witnessed), || {
            "no failure of Δ(f∘g) = Δf∘Δg witnessed for general f".into()
        });
    }
}

fn hoffman(r: &mut SuiteReport, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let e1 = Series::exp1(max_n.max(1));
    let mut pairs: Vec<Vec<TensorWord>> = (0..=max_n)
        .flat_map(|n| (0..=n).map(move |i| vec![i, n - i]))
        .map(|l| generic_words(&l))
        .collect();
    pairs.extend(random_tuples(&mut rng, 2, max_n, 8));
    for p in &pairs {
        let outcome = (|| {
            let (u, v) = (word(p[0].clone()), word(p[1].clone()));
            let lhs = phi_apply(&e1, &shuffle(&u, &v))?;
            let rhs = qshuffle(&phi_apply(&e1, &u)?, &phi_apply(&e1, &v)?);
            Ok(lhs == rhs)
        })();
        r.check(outcome, || {
            format!("φ_E1(u⧢v) ≠ φ_E1(u)⊔̄φ_E1(v) for u=[{}], v=[{}]", p[0], p[1])
        });
    }
}

fn compose_law(r: &mut SuiteReport, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let order = max_n.max(1) + 1;
    for _ in 0..20 {
        let p = random_tangent_series(&mut rng, order);
        let q = random_tangent_series(&mut rng, order);
        let mut words: Vec<TensorWord> = (0..=max_n).map(|n| TensorWord::generic(1, n)).collect();
        words.extend((0..2).map(|_| {
            let len = rng.gen_range(1..=max_n.max(1));
            random_word(&mut rng, len)
        }));
        for w in &words {
            r.check(phi_compose_check(&p, &q, w), || {
                format!("φ_P∘φ_Q ≠ φ_P(Q) on [{w}] with P = {p}, Q = {q}")
            });
        }
    }
}

fn bracket(r: &mut SuiteReport, max_n: usize) {
    for m in 1..=4 {
        for n in 1..=4 {
            for len in 0..=max_n {
                let w = TensorWord::generic(1, len);
                r.check(coder_bracket(m, n, &w), || {
                    format!("[D_X^{m}, D_X^{n}] ≠ ({m}-{n}) D_X^{} on [{w}]", m + n - 1)
                });
            }
        }
    }
}

fn conjugation(r: &mut SuiteReport, max_n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let order = max_n.max(3);
    let us = [
        Series::exp1(order),
        Series::e_q(&rat(1, 2), order),
        random_tangent_series(&mut rng, order),
    ];
    for u in &us {
        for k in 1..=3 {
            let v = Series::monomial(k, order);
            for len in 0..=max_n {
                let w = TensorWord::generic(1, len);
                r.check(conjugation_check(u, &v, &w), || {
                    format!("φ_U⁻¹ D_V φ_U ≠ D_(V∘U)/U' on [{w}] with U = {u}, V = X^{k}")
                });
            }
        }
    }
    // With U the inverse of E1, the conjugated degree operator is D_{(1+X)ln(1+X)}.
    let outcome = Series::exp1(order)
        .inverse()
        .and_then(|w| conjugate_coder(&w, &Series::identity(order)))
        .map(|s| s == Series::xlog1p(order));
    r.check(outcome, || "φ_E1 D_X φ_E1⁻¹ is not D_xlog1p".into());
}

fn grading(r: &mut SuiteReport, max_n: usize) {
    let order = max_n.max(1);
    let e1 = Series::exp1(order);
    let d = Series::xlog1p(order);
    for n in 0..=max_n {
        let w = TensorWord::generic(1, n);
        let outcome = (|| {
            let x = phi_apply(&e1, &word(w.clone()))?;
            Ok(coder_apply(&d, &x)? == x.scale(&Rational::from_integer(n.into())))
        })();
        r.check(outcome, || {
            format!("φ_E1([{w}]) is not an eigenvector of D_xlog1p for {n}")
        });
    }
}

fn e1_suite(r: &mut SuiteReport, max_n: usize) {
    for kind in [WKind::Shuffle, WKind::QShuffle] {
        let mut full = WElem::zero();
        let mut parts = Vec::new();
        for n in 1..=max_n {
            match e1(n, &kind) {
                Ok(x) => {
                    full += &x;
                    parts.push(x);
                }
                Err(e) => {
                    r.check(Err(e), || format!("e1({n}, {kind:?})"));
                    return;
                }
            }
        }
        for (i, x) in parts.iter().enumerate() {
            r.check(Ok(wcompose_lin(&full, x) == *x), || {
                format!("e1 is not idempotent in degree {} for {kind:?}", i + 1)
            });
        }
        if kind == WKind::QShuffle {
            for (i, x) in parts.iter().enumerate() {
                r.check(Ok(e1_closed(i + 1) == *x), || {
                    format!("closed formula for e1 differs in degree {}", i + 1)
                });
            }
        }
    }
}

fn embeddings(r: &mut SuiteReport, max_n: usize) {
    let m = max_n.min(4);
    for q in [rat(0, 1), rat(1, 2), rat(1, 1)] {
        let eq = Series::e_q(&q, m.max(1));
        for a in 0..=m {
            for b in 0..=(m - a) {
                for s in permutations_of(a) {
                    for t in permutations_of(b) {
                        let outcome = (|| {
                            let prod = fqsym_shuffle(&s, &t)?;
                            let mut lhs = WElem::zero();
                            for (sigma, c) in prod.iter() {
                                lhs.add_scaled(&embed_fqsym(&q, sigma)?, c);
                            }
                            let rhs = wproduct(
                                &WKind::Twisted(eq.clone()),
                                &embed_fqsym(&q, &s)?,
                                &embed_fqsym(&q, &t)?,
                            )?;
                            Ok(lhs == rhs)
                        })();
                        r.check(outcome, || {
                            format!("Φ_q(σ⧢τ) ≠ Φ_q(σ)⧢_Eq Φ_q(τ) for σ={s}, τ={t}, q={q}")
                        });
                    }
                }
            }
        }
        for n in 1..=m {
            for s in permutations_of(n) {
                for b in permutations_of(n) {
                    let outcome = (|| {
                        let lhs = embed_fqsym(&q, &wcompose(&s, &b)?)?;
                        let rhs = wcompose_lin(&embed_fqsym(&q, &s)?, &WElem::basis(b.clone()));
                        Ok(lhs == rhs)
                    })();
                    r.check(outcome, || {
                        format!("Φ_q(σ∘β) ≠ Φ_q(σ)∘β for σ={s}, β={b}, q={q}")
                    });
                }
            }
        }
    }
    for n in 1..=m {
        r.check(
            embed_fqsym(&rat(1, 1), &PackedWord::identity(n)).map(|x| x == s_hat(n)),
            || format!("Φ_1(id_{n}) ≠ Σ u/u!"),
        );
    }
}

fn eulerian(r: &mut SuiteReport, max_n: usize) {
    for n in 1..=max_n.min(6) {
        r.check(Ok(eulerian_identity_check(n)), || {
            format!("generating identity fails for n = {n}")
        });
    }
    for n in 1..=(max_n + 2).min(8) {
        let total: Rational = eulerian_e(n).into_iter().sum();
        r.check(Ok(total == Rational::from_integer(factorial(n))), || {
            format!("Eulerian numbers of {n} do not sum to {n}!")
        });
    }
}

fn goldberg(r: &mut SuiteReport, max_n: usize) {
    let n = max_n.max(1);
    let phi = hausdorff_series(n, n);
    let words: Vec<PackedWord> = (1..=n).flat_map(packed_words_of).collect();
    let mismatches: Vec<String> = words
        .par_iter()
        .filter_map(|u| {
            let c = goldberg_coeff(u);
            let oracle = phi.coeff(&NCWord(u.values().iter().map(|&v| v as u8).collect()));
            (c != oracle).then(|| format!("c_{u} = {c}, Hausdorff series has {oracle}"))
        })
        .collect();
    r.cases += words.len();
    r.failures.extend(mismatches);
    let rec = reconstruct(n, n);
    r.check(Ok(rec.passed()), || {
        let (w, a, b) = rec.mismatch.clone().expect("failed");
        format!("Σ c_u M_u has {a} at {w}, Hausdorff series has {b}")
    });
}
