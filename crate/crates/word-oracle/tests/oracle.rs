use braid_core::sampling::{perturb_word, random_word};
use braid_core::{equal, BraidWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use word_oracle::{
    brute_centralizer, brute_conjugators, oracle_equal, CurveCoordinates, OracleError,
};

fn w(n: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

#[test]
fn braid_relation_and_distinct_generators() {
    assert!(oracle_equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
    assert!(!oracle_equal(&w(3, &[1]), &w(3, &[2])).unwrap());
}

#[test]
fn agreement_with_normal_form_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..1000 {
        let n = rng.gen_range(3..8usize);
        let a = random_word(n, rng.gen_range(0..16), &mut rng);
        let b = if t % 2 == 0 {
            perturb_word(&a, 8, &mut rng)
        } else {
            random_word(n, rng.gen_range(0..16), &mut rng)
        };
        assert_eq!(
            oracle_equal(&a, &b).unwrap(),
            equal(&a, &b).unwrap(),
            "{a:?} vs {b:?}"
        );
    }
}

#[test]
fn generator_actions_are_mutually_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let n = rng.gen_range(3..8usize);
        let word = random_word(n, rng.gen_range(0..10), &mut rng);
        let mut c = CurveCoordinates::base(n);
        c.apply_word(&word).unwrap();
        let before = c.clone();
        let i = rng.gen_range(1..n) as i32;
        c.apply_letter(i).unwrap();
        c.apply_letter(-i).unwrap();
        assert_eq!(c, before);
    }
}

#[test]
fn b_coordinate_sum_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.gen_range(3..8usize);
        let word = random_word(n, rng.gen_range(0..20), &mut rng);
        let mut c = CurveCoordinates::base(n);
        c.apply_word(&word).unwrap();
        let bsum: i64 = c.coordinates().iter().skip(1).step_by(2).sum();
        assert_eq!(bsum, n as i64);
    }
}

#[test]
fn overflow_is_detected() {
    // coordinates grow exponentially under this alternating word
    let mut letters = Vec::new();
    for _ in 0..200 {
        letters.extend([1, -2]);
    }
    let word = w(3, &letters);
    let mut c = CurveCoordinates::base(3);
    assert_eq!(c.apply_word(&word).unwrap_err(), OracleError::Overflow);
}

#[test]
fn strand_cap_is_enforced() {
    let a = BraidWord::identity(13);
    assert!(matches!(
        oracle_equal(&a, &a).unwrap_err(),
        OracleError::TooManyStrands { n: 13, .. }
    ));
}

#[test]
fn brute_conjugators_identity_case() {
    let r = brute_conjugators(&w(3, &[1]), &w(3, &[1]), 0).unwrap();
    assert_eq!(r.words, vec![BraidWord::identity(3)]);
    assert!(!r.partial);
}

#[test]
fn brute_conjugators_finds_braid_relation_witness() {
    let r = brute_conjugators(&w(3, &[1]), &w(3, &[2]), 2).unwrap();
    assert!(r.words.contains(&w(3, &[1, 2])));
    for g in &r.words {
        let c = BraidWord::conjugate(g, &w(3, &[1])).unwrap();
        assert!(equal(&c, &w(3, &[2])).unwrap());
        assert!(oracle_equal(&c, &w(3, &[2])).unwrap());
    }
}

#[test]
fn brute_conjugators_exponent_sum_shortcut() {
    let r = brute_conjugators(&w(3, &[1]), &w(3, &[1, 1]), 3).unwrap();
    assert!(r.words.is_empty());
    assert!(!r.partial);
}

#[test]
fn brute_centralizer_of_central_element() {
    let d2 = BraidWord::delta_pow(3, 2);
    let r = brute_centralizer(&d2, 2).unwrap();
    // every freely reduced word of length <= 2 commutes: 1 + 4 + 4*3 words
    assert_eq!(r.words.len(), 17);
}

#[test]
fn brute_centralizer_distant_generators() {
    let r = brute_centralizer(&w(4, &[1]), 1).unwrap();
    assert!(r.words.contains(&w(4, &[1])));
    assert!(r.words.contains(&w(4, &[3])));
    assert!(!r.words.contains(&w(4, &[2])));
    for g in &r.words {
        let gu = g.product(&w(4, &[1])).unwrap();
        let ug = w(4, &[1]).product(g).unwrap();
        assert!(equal(&gu, &ug).unwrap());
    }
}

#[test]
fn brute_centralizer_self_commutation() {
    let r = brute_centralizer(&w(3, &[1, 2]), 3).unwrap();
    assert!(r.words.contains(&w(3, &[1, 2])));
}
