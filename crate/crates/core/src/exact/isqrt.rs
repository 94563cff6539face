use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `floor(sqrt(n))` by integer Newton iteration.
///
/// Starts from a power of two above the root, so the iterates decrease
/// monotonically until they cross the floor.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        for n in 0u32..2000 {
            let r = isqrt(&BigUint::from(n));
            assert_eq!(
                r,
                BigUint::from((n as f64).sqrt().floor() as u32),
                "n = {n}"
            );
        }
        assert_eq!(exact_sqrt(&BigUint::from(221u32)), None);
        assert_eq!(
            exact_sqrt(&BigUint::from(225u32)),
            Some(BigUint::from(15u32))
        );
    }

    proptest! {
        #[test]
        fn agrees_with_num_integer(bytes in prop::collection::vec(any::<u8>(), 1..80)) {
            let n = BigUint::from_bytes_le(&bytes);
            prop_assert_eq!(isqrt(&n), n.sqrt());
        }
    }
}
