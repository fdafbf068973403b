use shuffle_hopf::exact::{int, rat};
use shuffle_hopf::fps::{parse_series, Series};
use shuffle_hopf::hausdorff::{goldberg_coeff, hausdorff_series, NCWord};
use shuffle_hopf::nattrans::{coder_log, phi_apply};
use shuffle_hopf::tensorhopf::{qshuffle, shuffle, twisted_product, word, TElem, TensorWord};
use shuffle_hopf::verify;
use shuffle_hopf::wqsym::{
    act_lin, e1, embed_fqsym, pack, phi_component, readback, readback_phi, wproduct, PackedWord,
    WElem, WKind,
};

#[test]
fn twisting_by_exp_gives_the_quasi_shuffle_in_wqsym() {
    for a in 1..=2 {
        for b in 1..=2 {
            let f = WElem::basis(PackedWord::identity(a));
            let g = WElem::basis(PackedWord::identity(b));
            let twisted = wproduct(&WKind::Twisted(Series::exp1(a + b)), &f, &g).unwrap();
            assert_eq!(twisted, wproduct(&WKind::QShuffle, &f, &g).unwrap());
        }
    }
}

#[test]
fn twisted_tensor_product_matches_readback() {
    let p = parse_series("coeffs:1,-2/3,1/5,4", 4).unwrap();
    let x = word(TensorWord::generic(1, 2));
    let y = word(TensorWord::generic(3, 2));
    let z = twisted_product(&p, &x, &y).unwrap();
    let via_wqsym = wproduct(
        &WKind::Twisted(p),
        &WElem::basis(PackedWord::identity(2)),
        &WElem::basis(PackedWord::identity(2)),
    )
    .unwrap();
    assert_eq!(readback(&z, 4).unwrap(), via_wqsym);
}

#[test]
fn phi_components_and_embeddings_agree() {
    let e = Series::exp1(4);
    for n in 1..=4 {
        assert_eq!(readback_phi(&e, n).unwrap(), phi_component(&e, n).unwrap());
        assert_eq!(
            embed_fqsym(&int(1), &PackedWord::identity(n)).unwrap(),
            phi_component(&e, n).unwrap()
        );
    }
}

#[test]
fn logarithm_of_phi_exp_starts_with_half_x_squared() {
    // e^X - 1 is the time-one flow of X^2/2 + ... d/dX.
    let v = coder_log(&Series::exp1(5)).unwrap();
    assert_eq!(v.coeff(1).unwrap(), int(0));
    assert_eq!(v.coeff(2).unwrap(), rat(1, 2));
}

/// Applies the whole of `e1 = Σ_n e1(n)` to `x`.
fn apply_e1(x: &TElem, kind: &WKind) -> TElem {
    let mut out = TElem::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&act_lin(&e1(w.len(), kind).unwrap(), w), c);
    }
    out
}

#[test]
fn e1_kills_products_and_fixes_letters() {
    for kind in [WKind::Shuffle, WKind::QShuffle] {
        let x = word(TensorWord::generic(1, 2));
        let y = word(TensorWord::generic(3, 1));
        let prod = match kind {
            WKind::Shuffle => shuffle(&x, &y),
            _ => qshuffle(&x, &y),
        };
        assert!(apply_e1(&prod, &kind).is_zero());
        let a = word(TensorWord::generic(1, 1));
        assert_eq!(apply_e1(&a, &kind), a);
    }
}

#[test]
fn goldberg_agrees_with_series_over_three_letters() {
    let h = hausdorff_series(3, 5);
    for (w, c) in h.terms() {
        let u = pack(&w.letters().iter().map(|&l| l as u32).collect::<Vec<_>>());
        assert_eq!(goldberg_coeff(&u), *c, "{w}");
    }
    assert_eq!(h.coeff(&NCWord(vec![1, 2, 3])), rat(1, 3));
}

#[test]
fn phi_exp_of_generic_word() {
    let out = phi_apply(&Series::exp1(3), &word(TensorWord::generic(1, 3))).unwrap();
    assert_eq!(out.len(), 4);
}

#[test]
fn every_suite_passes_at_degree_four() {
    for r in verify::run("all", 4).unwrap() {
        assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
    }
}
