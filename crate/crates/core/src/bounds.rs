//! Exact comparisons against doubly exponential bounds.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `2^(2^e)` as a big integer. Only sensible for small `e`.
pub fn tower(e: u32) -> BigUint {
    BigUint::one() << (1u64 << e)
}

/// `n ≤ 2^(2^e)`, decided without materialising the right-hand side.
pub fn le_tower(n: &BigUint, e: u64) -> bool {
    if n.is_zero() {
        return true;
    }
    // n ≤ 2^k  ⟺  bits(n - 1) ≤ k
    let bits = (n - 1u32).bits();
    e >= 64 || bits <= (1u64 << e)
}

/// `2^(2^((m-1)²))`'s exponent-of-exponent: `(m-1)²`.
pub fn tree_size_exponent(m: u64) -> u64 {
    (m - 1) * (m - 1)
}

/// Puncture count for a tree with `vertices` vertices: `|E| + 3|V| + 3`.
pub fn punctures(vertices: &BigUint) -> BigUint {
    let edges = if vertices.is_zero() { BigUint::zero() } else { vertices - 1u32 };
    edges + vertices * 3u32 + 3u32
}

/// `4·2^(2^((m-1)²)) + 2 ≤ 2^(2^(m²))`, checked symbolically.
///
/// With `A = 2^((m-1)²)` and `B = 2^(m²)` the claim is `2^(A+2) + 2 ≤ 2^B`,
/// which for `B > A + 2` is implied by `2^(A+2) + 2 ≤ 2^(A+3)`; so it reduces
/// to `B ≥ A + 3` on the exponents.
pub fn strand_bound_holds(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let a = BigUint::one() << (((m - 1) * (m - 1)) as u64);
    let b = BigUint::one() << ((m * m) as u64);
    b >= a + 3u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn towers() {
        assert_eq!(tower(0), BigUint::from(2u32));
        assert_eq!(tower(1), BigUint::from(4u32));
        assert_eq!(tower(4), BigUint::from(65536u32));
        for e in 0..5u32 {
            let t = tower(e);
            assert!(le_tower(&t, e as u64));
            assert!(!le_tower(&(t.clone() + 1u32), e as u64));
            assert!(le_tower(&(t - 1u32), e as u64));
        }
        assert!(le_tower(&BigUint::zero(), 0));
        assert!(le_tower(&BigUint::from(u64::MAX), 64));
        assert!(!le_tower(&(BigUint::one() << 65u32), 6));
    }

    #[test]
    fn strand_bound_direct() {
        // evaluate both sides outright where that is cheap
        for m in 2..=4u32 {
            let lhs = tower((m - 1) * (m - 1)) * 4u32 + 2u32;
            assert!(lhs <= tower(m * m), "m = {m}");
            assert!(strand_bound_holds(m));
        }
        assert!(!strand_bound_holds(1));
        assert_eq!(tower(4), BigUint::from(65536u32));
    }

    #[test]
    fn puncture_counts() {
        assert_eq!(punctures(&BigUint::from(1u32)), BigUint::from(6u32));
        assert_eq!(punctures(&BigUint::from(2u32)), BigUint::from(10u32));
        assert_eq!(punctures(&BigUint::from(3u32)), BigUint::from(14u32));
    }
}
