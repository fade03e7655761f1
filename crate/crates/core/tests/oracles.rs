//! Cross-checks of the library against the dense integer oracles in `common`.

mod common;

use lle_core::lle::{catalog, classify, symbol_determinant};
use lle_core::scalar::gauss_int;
use lle_core::structure::commutant_of_words;
use lle_core::Word;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn signed(sign: i8, m: &common::Dense) -> common::Dense {
    m.iter().map(|r| r.iter().map(|v| *v * i64::from(sign)).collect()).collect()
}

#[test]
fn word_products_match_dense() {
    for len in 1..=3 {
        let words = common::words_over(&['I', 'X', 'Y', 'A'], len);
        for u in &words {
            for v in &words {
                let (sign, uv) = w(u).mul(&w(v)).unwrap();
                let expected = common::mul(&common::dense_word(u), &common::dense_word(v));
                assert_eq!(signed(sign, &common::dense_word(&uv.to_string())), expected, "{u}*{v}");
            }
        }
    }
}

#[test]
fn word_matrices_match_dense() {
    for u in common::words_over(&['I', 'X', 'Y', 'A'], 3) {
        let m = w(&u).rational_matrix().unwrap();
        let d = common::dense_word(&u);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*m.get(i, j), num_rational::BigRational::from_integer((*v).into()));
            }
        }
    }
}

#[test]
fn commutant_dims_up_to_eight() {
    for spec in catalog().into_iter().filter(|s| s.n() <= 8) {
        let class = classify(&spec).unwrap();
        for words in [spec.words(), class.ambient.words.clone()] {
            let names: Vec<String> = words.iter().map(Word::to_string).collect();
            let dense: Vec<_> = common::expand_q(&names).iter().map(|s| common::dense_word(s)).collect();
            let solver = commutant_of_words(&words).unwrap().dim();
            assert_eq!(solver, common::brute_commutant_dim(&dense), "{} {names:?}", spec.name());
        }
    }
}

#[test]
fn bareiss_rank_sanity() {
    assert_eq!(common::bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(common::bareiss_rank(&[vec![0, 1, 2], vec![1, 0, 3], vec![1, 1, 5]]), 2);
    assert_eq!(common::bareiss_rank(&[vec![2, 1], vec![1, 3]]), 2);
}

#[test]
fn two_by_two_determinant_closed_form() {
    let eq6 = catalog().into_iter().next().unwrap();
    for e in [-7, 0, 2, 9] {
        for k in [-4, -1, 0, 3] {
            assert_eq!(symbol_determinant(&eq6, &gauss_int(e), &[gauss_int(k)]).unwrap(), gauss_int(k * k - e));
        }
    }
}
