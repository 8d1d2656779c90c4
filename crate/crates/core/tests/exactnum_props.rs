use std::cmp::Ordering;

use aperiodic_core::Golden;
use num_bigint::BigInt;
use proptest::prelude::*;

fn golden() -> impl Strategy<Value = Golden> {
    (-50i64..=50, 1i64..=12, -50i64..=50, 1i64..=12).prop_map(|(p, q, r, s)| Golden::from_ratios(p, q, r, s))
}

/// `φ · 10^100`, rounded down, from an integer square root.
fn phi_scaled() -> BigInt {
    let ten100 = BigInt::from(10).pow(100);
    (&ten100 + (BigInt::from(5) * &ten100 * &ten100).sqrt()) / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn field_axioms(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &Golden::zero(), x.clone());
        prop_assert_eq!(&x * &Golden::one(), x.clone());
        prop_assert_eq!(&x + &(-&x), Golden::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), Golden::one());
        } else {
            prop_assert!(x.inverse().is_err());
        }
    }

    #[test]
    fn serialization_round_trip(x in golden()) {
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Golden>(&text).unwrap(), x.clone());
        prop_assert_eq!(x.to_string().parse::<Golden>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// Sign of `p/q + (r/s)φ` against a 100-digit decimal approximation.
    #[test]
    fn ordering_matches_decimal_oracle(p in -1000i64..=1000, q in 1i64..=40, r in -1000i64..=1000, s in 1i64..=40) {
        let x = Golden::from_ratios(p, q, r, s);
        let ten100 = BigInt::from(10).pow(100);
        let approx = BigInt::from(p * s) * &ten100 + BigInt::from(r * q) * phi_scaled();
        let oracle = approx.sign();
        let expected = match oracle {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        };
        prop_assert_eq!(x.signum(), expected);
        prop_assert_eq!(x.cmp(&Golden::zero()), expected);
        // floor agrees with the oracle too: floor(x) <= x < floor(x) + 1
        let f = Golden::from_rational(num_rational::BigRational::from_integer(x.floor()));
        prop_assert!(f <= x && x < &f + &Golden::one());
    }
}
