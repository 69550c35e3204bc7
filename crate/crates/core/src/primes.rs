//! Prime enumeration, primality, counting, and integer factorization.
//!
//! Every scan in this crate iterates over a [`SieveTable`]. Construction is
//! segmented so that limits around 10^8 stay cache-friendly; the table itself
//! is one bit per integer. Factorization combines trial division by a small
//! prime table with deterministic Miller-Rabin and Brent's rho for the large
//! cofactors, so `p - 1` factors quickly even for `p` near 2^32.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use crate::error::Error;

/// Hard cap on sieve limits (bitmap over `[2, limit]` must stay addressable).
pub const MAX_SIEVE_LIMIT: u64 = 1 << 32;

/// Segment width (in integers) used while marking composites.
const SEGMENT_BITS: u64 = 1 << 20;

/// Immutable primality bitmap over `[2, limit]`.
///
/// Bit `n` of the backing words is set exactly when `n` is prime. The table
/// never changes after construction and is safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTable {
    limit: u64,
    words: Vec<u64>,
}

impl SieveTable {
    /// Largest `n` the table answers for.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Whether `n` is prime. Panics if `n > limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "query {} beyond sieve limit {}", n, self.limit);
        (self.words[(n >> 6) as usize] >> (n & 63)) & 1 == 1
    }

    /// `#{p <= n : p prime}`.
    pub fn prime_count(&self, n: u64) -> Result<u64, Error> {
        if n > self.limit {
            return Err(Error::Bounds(format!(
                "prime_count({}) beyond sieve limit {}",
                n, self.limit
            )));
        }
        let full_words = (n + 1) / 64;
        let mut count: u64 = 0;
        for w in &self.words[..full_words as usize] {
            count += w.count_ones() as u64;
        }
        let rem = (n + 1) % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            count += (self.words[full_words as usize] & mask).count_ones() as u64;
        }
        Ok(count)
    }

    /// Iterator over all primes `<= limit` in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        PrimeIter { table: self, next: 2 }
    }

    /// Write the table to `path` in the raw cache format: an 8-byte
    /// little-endian limit header followed by the bitmap of `[2, limit]`
    /// packed LSB-first (bit `k` of the stream is the integer `2 + k`).
    pub fn write_cache<P: AsRef<Path>>(&self, path: P) -> Result<(), Error> {
        let mut out = Vec::with_capacity(8 + ((self.limit - 1) as usize).div_ceil(8));
        out.extend_from_slice(&self.limit.to_le_bytes());
        let nbits = self.limit - 1; // integers 2..=limit
        let mut byte = 0u8;
        for k in 0..nbits {
            if self.is_prime(2 + k) {
                byte |= 1 << (k & 7);
            }
            if k & 7 == 7 {
                out.push(byte);
                byte = 0;
            }
        }
        if nbits & 7 != 0 {
            out.push(byte);
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(&out)?;
        Ok(())
    }

    /// Load a table from a cache file, validating the stored limit.
    pub fn read_cache<P: AsRef<Path>>(path: P, limit: u64) -> Result<SieveTable, Error> {
        let mut data = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut data)?;
        if data.len() < 8 {
            return Err(Error::Cache("file shorter than the 8-byte header".into()));
        }
        let stored = u64::from_le_bytes(data[..8].try_into().unwrap());
        if stored != limit {
            return Err(Error::Cache(format!(
                "limit mismatch: cache holds {}, requested {}",
                stored, limit
            )));
        }
        check_limit(limit)?;
        let nbits = limit - 1;
        let expected = 8 + (nbits as usize).div_ceil(8);
        if data.len() != expected {
            return Err(Error::Cache(format!(
                "expected {} bytes for limit {}, found {}",
                expected,
                limit,
                data.len()
            )));
        }
        let mut words = vec![0u64; ((limit + 1) as usize).div_ceil(64)];
        for k in 0..nbits {
            if (data[8 + (k >> 3) as usize] >> (k & 7)) & 1 == 1 {
                let n = 2 + k;
                words[(n >> 6) as usize] |= 1 << (n & 63);
            }
        }
        Ok(SieveTable { limit, words })
    }
}

struct PrimeIter<'a> {
    table: &'a SieveTable,
    next: u64,
}

impl<'a> Iterator for PrimeIter<'a> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next <= self.table.limit {
            let n = self.next;
            self.next += 1;
            if (self.table.words[(n >> 6) as usize] >> (n & 63)) & 1 == 1 {
                return Some(n);
            }
        }
        None
    }
}

fn check_limit(limit: u64) -> Result<(), Error> {
    if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
        return Err(Error::Bounds(format!(
            "sieve limit {} outside [2, 2^32]",
            limit
        )));
    }
    Ok(())
}

/// Sieve of Eratosthenes over `[2, limit]`, marking composites segment by
/// segment against a base table of primes up to `sqrt(limit)`.
pub fn sieve(limit: u64) -> Result<SieveTable, Error> {
    check_limit(limit)?;
    let nwords = ((limit + 1) as usize).div_ceil(64);
    let mut words = vec![u64::MAX; nwords];
    // clear 0, 1 and everything past limit
    words[0] &= !0b11;
    let tail = (limit + 1) % 64;
    if tail != 0 {
        words[nwords - 1] &= (1u64 << tail) - 1;
    }

    let root = limit.isqrt();
    // base primes by the classic odd-only loop, then segments
    let mut base: Vec<u64> = Vec::new();
    {
        let mut small = vec![true; (root + 1) as usize];
        let mut p = 2u64;
        while p * p <= root {
            if small[p as usize] {
                let mut q = p * p;
                while q <= root {
                    small[q as usize] = false;
                    q += p;
                }
            }
            p += 1;
        }
        for n in 2..=root {
            if small[n as usize] {
                base.push(n);
            }
        }
    }

    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT_BITS - 1).min(limit);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = p * p;
            if start < lo {
                start = lo.div_ceil(p) * p;
            }
            let mut q = start;
            while q <= hi {
                words[(q >> 6) as usize] &= !(1 << (q & 63));
                q += p;
            }
        }
        lo = hi + 1;
    }
    Ok(SieveTable { limit, words })
}

/// `a * b mod m` without overflow.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Witnesses that make Miller-Rabin deterministic for all 64-bit inputs.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality for any `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n` with factors in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recompute `prod prime^exponent`.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// The distinct primes dividing `n`.
    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

fn small_prime_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let table = sieve(1 << 16).expect("static limit in range");
        table.primes().map(|p| p as u32).collect()
    })
}

/// Brent's cycle variant of Pollard's rho. The polynomial constant walks a
/// fixed sequence, so results are reproducible run to run.
fn rho_factor(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho exhausted the constant sequence")
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All divisors of `n >= 1` in increasing order.
pub fn divisors_of(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Complete prime factorization of `1 <= n <= 2^63`; the empty product for 1.
pub fn factorize(n: u64) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if n > 1 << 63 {
        return Err(Error::Bounds(format!("{} exceeds 2^63", n)));
    }
    let original = n;
    let mut n = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in small_prime_table() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if n > 1 {
        // remaining cofactor has no prime factor below 2^16
        let mut stack = vec![n];
        let mut large: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime_u64(m) {
                large.push(m);
            } else {
                let d = rho_factor(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    let result = Factorization { n: original, factors };
    debug_assert_eq!(result.product(), original);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: trial division.
    fn is_prime_td(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn sieve_ten() {
        let t = sieve(10).unwrap();
        let primes: Vec<u64> = t.primes().collect();
        assert_eq!(primes, vec![2, 3, 5, 7]);
    }

    #[test]
    fn sieve_rejects_out_of_range() {
        assert!(matches!(sieve(1), Err(Error::Bounds(_))));
        assert!(matches!(sieve(0), Err(Error::Bounds(_))));
        assert!(matches!(sieve(MAX_SIEVE_LIMIT + 1), Err(Error::Bounds(_))));
    }

    #[test]
    fn sieve_agrees_with_trial_division_to_1e4() {
        let t = sieve(10_000).unwrap();
        for n in 0..=10_000u64 {
            if n >= 2 {
                assert_eq!(t.is_prime(n), is_prime_td(n), "n = {}", n);
            }
        }
    }

    #[test]
    fn sieve_count_at_1e6_matches_trial_division() {
        let t = sieve(1_000_000).unwrap();
        let oracle = (2..=1_000_000u64).filter(|&n| is_prime_td(n)).count() as u64;
        assert_eq!(oracle, 78_498);
        assert_eq!(t.prime_count(1_000_000).unwrap(), 78_498);
    }

    #[test]
    fn prime_count_examples() {
        let t = sieve(1_000).unwrap();
        assert_eq!(t.prime_count(100).unwrap(), 25);
        assert_eq!(t.prime_count(2).unwrap(), 1);
        assert!(matches!(t.prime_count(1_001), Err(Error::Bounds(_))));
    }

    #[test]
    fn prime_count_is_monotone() {
        let t = sieve(10_000).unwrap();
        let mut last = 0;
        for n in 0..=10_000 {
            let c = t.prime_count(n).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        // 2^61 - 1 is a Mersenne prime; primality confirmed by the MR test
        let m61 = (1u64 << 61) - 1;
        assert!(is_prime_u64(m61));
        assert_eq!(factorize(m61).unwrap().factors, vec![(m61, 1)]);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5_000u64 {
            assert_eq!(is_prime_u64(n), is_prime_td(n), "n = {}", n);
        }
    }

    #[test]
    fn factorize_roundtrips_random_inputs() {
        // fixed-seed SplitMix64 stream, 10^4 values below 10^12
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for _ in 0..10_000 {
            let n = next() % 1_000_000_000_000 + 1;
            let f = factorize(n).unwrap();
            assert_eq!(f.product(), n);
            for &(p, _) in &f.factors {
                assert!(is_prime_u64(p), "claimed prime {} in {}", p, n);
            }
            for pair in f.factors.windows(2) {
                assert!(pair[0].0 < pair[1].0);
            }
        }
    }

    #[test]
    fn cache_roundtrip_and_mismatch() {
        let dir = std::env::temp_dir().join("primescan-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sieve.bin");
        let t = sieve(50_000).unwrap();
        t.write_cache(&path).unwrap();
        let back = SieveTable::read_cache(&path, 50_000).unwrap();
        assert_eq!(t, back);
        assert!(matches!(
            SieveTable::read_cache(&path, 60_000),
            Err(Error::Cache(_))
        ));
        std::fs::remove_file(&path).unwrap();
    }
}
