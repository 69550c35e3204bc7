//! Modular exponentiation, multiplicative orders, primitive roots, and the
//! Legendre/Jacobi/Kronecker symbol.
//!
//! All functions are pure and use 128-bit intermediates, so they are safe for
//! any 64-bit modulus.

use crate::error::Error;
use crate::primes::{factorize, pow_mod_u64};

/// A residue `value` modulo a prime `modulus`, with `value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

/// `a^e mod m` with `pow_mod(a, 0, m) = 1`.
pub fn pow_mod(a: u64, e: u64, m: u64) -> Result<u64, Error> {
    if m < 2 {
        return Err(Error::Domain(format!("modulus {} must be at least 2", m)));
    }
    Ok(pow_mod_u64(a, e, m))
}

/// Least `n >= 1` with `a^n = 1 (mod p)`, for `p` prime and `p` not dividing
/// `a`. Factors `p - 1` and descends through its divisors.
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64, Error> {
    if p < 2 {
        return Err(Error::Domain(format!("{} is not prime", p)));
    }
    let a = a % p;
    if a == 0 {
        return Err(Error::Domain(format!("{} divides the base", p)));
    }
    let mut order = p - 1;
    for (q, _) in factorize(p - 1)?.factors {
        while order % q == 0 && pow_mod_u64(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Whether `a` generates the multiplicative group mod the prime `p`.
///
/// For `p = 2` the group is trivial and every odd `a` qualifies. Multiples of
/// `p` return `false` rather than an error.
pub fn is_primitive_root(a: u64, p: u64) -> bool {
    if p == 2 {
        return a % 2 == 1;
    }
    let a = a % p;
    if a == 0 {
        return false;
    }
    let Ok(f) = factorize(p - 1) else {
        return false;
    };
    let generates = f
        .distinct_primes()
        .all(|q| pow_mod_u64(a, (p - 1) / q, p) != 1);
    generates
}

/// Primitivity check with the prime divisors of `p - 1` already in hand.
/// Used by sweeps that test many bases against the same prime.
pub(crate) fn is_primitive_root_with(a: u64, p: u64, divisors_of_p_minus_1: &[u64]) -> bool {
    let a = a % p;
    if a == 0 {
        return false;
    }
    divisors_of_p_minus_1
        .iter()
        .all(|&q| pow_mod_u64(a, (p - 1) / q, p) != 1)
}

/// Least `a >= 1` that is a primitive root mod `p`. This is the canonical
/// generator used everywhere a fixed `zeta_p` is required.
pub fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let divisors: Vec<u64> = factorize(p - 1)
        .expect("p - 1 >= 1")
        .distinct_primes()
        .collect();
    (2..p)
        .find(|&a| is_primitive_root_with(a, p, &divisors))
        .expect("every prime has a primitive root")
}

/// Kronecker symbol `(a | n)` with the standard conventions:
/// `(a | 0)` is 1 for `a = ±1` and 0 otherwise, `(a | -1)` is the sign of
/// `a` (1 for `a >= 0`), and `(a | 2)` is 0 for even `a`, 1 for
/// `a = ±1 (mod 8)`, and -1 for `a = ±3 (mod 8)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    // pull the factor 2^v out of n
    let v = n.trailing_zeros();
    n >>= v;
    if v % 2 == 1 {
        sign *= kronecker_two(a);
    }
    // n is now odd and positive: Jacobi with quadratic reciprocity
    a = a.rem_euclid(n);
    while a != 0 {
        let w = a.trailing_zeros();
        a >>= w;
        if w % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

fn kronecker_two(a: i64) -> i32 {
    match a.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Euler's totient via factorization.
pub fn euler_phi(n: u64) -> Result<u64, Error> {
    let mut phi = n;
    for (p, _) in factorize(n)?.factors {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Whether `d` is the discriminant of the ring of integers of a quadratic
/// field: `d = 1 (mod 4)` and squarefree, or `d = 4m` with `m` squarefree and
/// `m = 2, 3 (mod 4)`.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let square_free = |m: i64| -> bool {
        let m = m.unsigned_abs();
        factorize(m).map(|f| f.factors.iter().all(|&(_, e)| e == 1)).unwrap_or(false)
    };
    if d.rem_euclid(4) == 1 {
        return square_free(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && square_free(m);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force order oracle: walk powers until 1 reappears.
    fn order_brute(a: u64, p: u64) -> u64 {
        let mut x = a % p;
        let mut n = 1;
        while x != 1 {
            x = x * a % p;
            n += 1;
        }
        n
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 6, 13).unwrap(), 12);
        assert_eq!(pow_mod(5, 0, 7).unwrap(), 1);
        assert_eq!(pow_mod(0, 5, 7).unwrap(), 0);
        assert!(matches!(pow_mod(3, 4, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 101).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 13).unwrap(), order_brute(2, 13));
        assert_eq!(multiplicative_order(2, 13).unwrap(), 12);
        assert!(matches!(multiplicative_order(26, 13), Err(Error::Domain(_))));
    }

    #[test]
    fn order_divides_group_order() {
        let table = crate::primes::sieve(500).unwrap();
        for p in table.primes().skip(1) {
            for a in 2..p.min(40) {
                let ord = multiplicative_order(a, p).unwrap();
                assert_eq!((p - 1) % ord, 0, "a={} p={}", a, p);
                assert_eq!(ord, order_brute(a, p));
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert!(is_primitive_root(2, 13));
        assert!(!is_primitive_root(3, 13)); // 3^3 = 27 = 1 (mod 13)
        assert!(is_primitive_root(1, 2));
        assert!(!is_primitive_root(13, 13));
    }

    #[test]
    fn smallest_primitive_root_examples() {
        assert_eq!(smallest_primitive_root(13), 2);
        assert_eq!(smallest_primitive_root(2), 1);
        assert_eq!(smallest_primitive_root(7), 3); // 2 has order 3 mod 7
    }

    #[test]
    fn smallest_primitive_root_generates_all_units() {
        let table = crate::primes::sieve(10_000).unwrap();
        for p in table.primes() {
            if p == 2 {
                continue;
            }
            let a = smallest_primitive_root(p);
            let mut seen = vec![false; p as usize];
            let mut x = 1u64;
            for _ in 0..p - 1 {
                assert!(!seen[x as usize], "period shorter than p-1 for p={}", p);
                seen[x as usize] = true;
                x = x * a % p;
            }
            assert!((1..p).all(|u| seen[u as usize]), "p = {}", p);
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(-8, 5), -1);
        assert_eq!(kronecker(-8, 2), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(3, -1), 1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(3, 2), -1);
    }

    #[test]
    fn kronecker_matches_square_tables() {
        let table = crate::primes::sieve(10_000).unwrap();
        for p in table.primes() {
            if p == 2 {
                continue;
            }
            let mut is_square = vec![false; p as usize];
            for x in 0..p {
                is_square[(x * x % p) as usize] = true;
            }
            for d in -50i64..=50 {
                let r = d.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if is_square[r as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p as i64), expected, "D={} p={}", d, p);
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_lower_argument() {
        for a in -30i64..=30 {
            for m in -20i64..=20 {
                for n in -20i64..=20 {
                    if m == 0 || n == 0 {
                        continue;
                    }
                    let lhs = kronecker(a, m * n);
                    let rhs = kronecker(a, m) * kronecker(a, n);
                    assert_eq!(lhs, rhs, "a={} m={} n={}", a, m, n);
                }
            }
        }
    }

    #[test]
    fn euler_phi_small_values() {
        let expected = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &phi) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1).unwrap(), phi);
        }
    }

    #[test]
    fn fundamental_discriminants() {
        for d in [5, 8, -4, -8, -3, 13, -7, 12, -24] {
            assert!(is_fundamental_discriminant(d), "{}", d);
        }
        for d in [0, 1, -1, 2, 3, 4, -2, 9, 16, 25, 45] {
            assert!(!is_fundamental_discriminant(d), "{}", d);
        }
    }
}
