mod common;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coxmin::label::Label;
use coxmin::scalar::{Field, Scalar};

use common::{interval_sign, near_zero_scalar, random_scalar, two_cos_enclosure};

const CONDUCTORS: [u64; 6] = [3, 4, 5, 12, 30, 60];

fn field_and_seed() -> impl Strategy<Value = (Field, u64)> {
    (prop::sample::select(CONDUCTORS.to_vec()), any::<u64>()).prop_map(|(n, seed)| (Field::new(n).unwrap(), seed))
}

fn triple(f: &Field, seed: u64) -> (Scalar, Scalar, Scalar) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (
        random_scalar(&mut rng, f, 40),
        random_scalar(&mut rng, f, 40),
        random_scalar(&mut rng, f, 40),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((f, seed) in field_and_seed()) {
        let (a, b, c) = triple(&f, seed);
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &(&b + &c)), &f.mul(&a, &b) + &f.mul(&a, &c));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            prop_assert_eq!(f.mul(&f.div(&b, &a).unwrap(), &a), b.clone());
        }
    }

    #[test]
    fn equality_matches_zero_sign((f, seed) in field_and_seed()) {
        let (a, b, _) = triple(&f, seed);
        prop_assert_eq!(a == b, f.cmp(&a, &b) == Ordering::Equal);
        prop_assert_eq!(f.cmp(&a, &a), Ordering::Equal);
        prop_assert_eq!(f.cmp(&a, &b), f.cmp(&b, &a).reverse());
    }

    #[test]
    fn sign_matches_interval_oracle((f, seed) in field_and_seed(), tiny in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = if tiny { near_zero_scalar(&mut rng, &f) } else { random_scalar(&mut rng, &f, 1000) };
        let (lo, hi) = two_cos_enclosure(f.conductor());
        prop_assert_eq!(interval_sign(&x.coefficients(), &lo, &hi), Some(f.sign(&x)));
    }

    #[test]
    fn sign_is_multiplicative((f, seed) in field_and_seed()) {
        let (a, b, _) = triple(&f, seed);
        let expected = match (f.sign(&a), f.sign(&b)) {
            (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
            (x, y) if x == y => Ordering::Greater,
            _ => Ordering::Less,
        };
        prop_assert_eq!(f.sign(&f.mul(&a, &b)), expected);
    }
}

/// `2cos(kπ/N)` by the Chebyshev recurrence, written out here so that the
/// field's own label table is not used.
fn two_cos_multiple(f: &Field, k: u64) -> Scalar {
    let z = f.zeta();
    let (mut prev, mut cur) = (f.int(2), z.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &f.mul(&z, &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn cos_embed_squares_follow_the_double_angle_identity() {
    for m in 3..=12u32 {
        let f = Field::for_labels([m]).unwrap();
        let c = f.cos_embed(Label::Finite(m)).unwrap();
        // cos²(π/m) = (2 + 2cos(2π/m)) / 4
        let double = two_cos_multiple(&f, 2 * f.conductor() / u64::from(m));
        let expected = f.div(&(&f.int(2) + &double), &f.int(4)).unwrap();
        assert_eq!(f.mul(&c, &c), expected, "m = {m}");
        assert_eq!(f.sign(&c), Ordering::Less, "m = {m}");
    }
    let f = Field::new(1).unwrap();
    assert_eq!(f.cos_embed(Label::Finite(2)).unwrap(), f.zero());
    assert_eq!(f.cos_embed(Label::Infinite).unwrap(), f.int(-1));
}

#[test]
fn cos_embed_values_match_the_numeric_oracle() {
    let f = Field::new(60).unwrap();
    let (lo, hi) = two_cos_enclosure(60);
    for m in [3u32, 4, 5, 6, 10, 12, 15, 20, 30, 60] {
        let c = f.cos_embed(Label::Finite(m)).unwrap();
        // −cos(π/m) ± 10⁻⁹ brackets the exact value.
        let approx = -(std::f64::consts::PI / f64::from(m)).cos();
        for (offset, expect) in [(-1e-9, Ordering::Greater), (1e-9, Ordering::Less)] {
            let q = BigRational::from_float(approx + offset).unwrap();
            let diff = &c - &f.rational(&q);
            assert_eq!(interval_sign(&diff.coefficients(), &lo, &hi), Some(expect), "m = {m}");
            assert_eq!(f.sign(&diff), expect, "m = {m}");
        }
    }
}

#[test]
fn division_by_zero_is_an_error() {
    let f = Field::new(5).unwrap();
    assert!(f.inv(&f.zero()).is_err());
    assert!(f.div(&f.one(), &f.zero()).is_err());
    let tiny = f.rational(&BigRational::new(BigInt::from(1), BigInt::from(10).pow(80)));
    assert_eq!(f.sign(&tiny), Ordering::Greater);
}
