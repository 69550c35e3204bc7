//! Exact integer-polynomial arithmetic, cyclotomic polynomials, and
//! factorization-type classification modulo p.
//!
//! Coefficients are arbitrary-precision (`BigInt`): cyclotomic coefficients
//! and resultants outgrow machine words quickly. Images modulo p use machine
//! words throughout, with the quotient-ring exponentiations done by repeated
//! squaring so `x^(p^d)` never materializes its exponent.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::primes::{divisors_of, mul_mod, pow_mod_u64};

/// Integer polynomial, coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> IntPoly {
        IntPoly::from_i64(&[1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        IntPoly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division over the integers; `None` when the division leaves a
    /// remainder or a coefficient fails to divide.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lc = divisor.leading_coefficient().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let head = std::mem::take(&mut rem[k + dd]);
            if head.is_zero() {
                continue;
            }
            let (q, r) = head.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate().take(dd) {
                let sub = c * &q;
                rem[k + i] -= sub;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Reduction mod p as machine-word coefficients, ascending.
    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect();
        trim(&mut v);
        v
    }
}

impl fmt::Display for IntPoly {
    /// Comma-separated coefficients, ascending degree (`-1,-1,0,1` for
    /// x^3 - x - 1). The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPoly, Error> {
        let mut coeffs = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let c = BigInt::from_str(piece)
                .map_err(|_| Error::Parse(format!("bad coefficient {:?} in {:?}", piece, s)))?;
            coeffs.push(c);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Multiset of irreducible-factor degrees of `f mod p`.
///
/// When `f mod p` is not squarefree the degrees are not computed and
/// `squarefree_mod_p` is false.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FactorType {
    /// Degrees sorted ascending; they sum to `deg f` when squarefree.
    pub degrees: Vec<u32>,
    pub squarefree_mod_p: bool,
}

impl FactorType {
    pub fn all_linear(&self) -> bool {
        self.squarefree_mod_p && self.degrees.iter().all(|&d| d == 1)
    }
}

/// The n-th cyclotomic polynomial, for `1 <= n <= 10^4`.
///
/// Built by exact division of `x^d - 1` by the lower cyclotomics, walking the
/// divisors of n in increasing order.
pub fn cyclotomic(n: u64) -> Result<IntPoly, Error> {
    if !(1..=10_000).contains(&n) {
        return Err(Error::Bounds(format!("cyclotomic index {} outside [1, 10^4]", n)));
    }
    let divs = divisors_of(n);
    let mut phi: Vec<(u64, IntPoly)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut q = IntPoly::x_pow_minus_one(d as usize);
        for (e, phi_e) in &phi {
            if d % e == 0 {
                q = q
                    .exact_div(phi_e)
                    .expect("lower cyclotomics divide x^d - 1 exactly");
            }
        }
        phi.push((d, q));
    }
    Ok(phi.pop().unwrap().1)
}

/// Resultant of two nonzero integer polynomials; zero exactly when they share
/// a complex zero. Computed as the Sylvester determinant by fraction-free
/// (Bareiss) elimination.
pub fn poly_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    // Sylvester matrix: n shifted rows of f, then m shifted rows of g,
    // coefficients in descending order.
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Discriminant of `f` (degree >= 1) via the resultant with its derivative:
/// `Disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`. Satisfies
/// `p` does not divide `Disc(f)` implies `f` has no repeated zero mod p.
pub fn discriminant(f: &IntPoly) -> Result<BigInt, Error> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::Domain(
                "discriminant requires degree at least 1".into(),
            ))
        }
    };
    let res = poly_resultant(f, &f.derivative())?;
    let lc = f.leading_coefficient().unwrap();
    let (q, r) = res.div_rem(lc);
    debug_assert!(r.is_zero(), "resultant is divisible by the leading coefficient");
    let _ = r;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

// ---------------------------------------------------------------------------
// arithmetic on polynomials over F_p (machine words, ascending coefficients)

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    let Some(&lc) = a.last() else {
        return vec![];
    };
    if lc == 1 {
        return a.to_vec();
    }
    let inv = pow_mod_u64(lc, p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` by `b`, `b` nonzero.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if db == 0 {
        return vec![];
    }
    let inv_lc = pow_mod_u64(*b.last().unwrap(), p - 2, p);
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let q = mul_mod(*rem.last().unwrap(), inv_lc, p);
        if q != 0 {
            for (i, &c) in b.iter().enumerate() {
                let idx = k + i;
                rem[idx] = (rem[idx] + p - mul_mod(q, c, p)) % p;
            }
        }
        rem.pop();
        trim(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    rem
}

/// Exact quotient `a / b` when `b | a` over F_p.
fn fp_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = fp_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return vec![];
    }
    let da = rem.len() - 1;
    assert!(da >= db);
    let inv_lc = pow_mod_u64(*b.last().unwrap(), p - 2, p);
    let mut quot = vec![0u64; da - db + 1];
    for k in (0..=da - db).rev() {
        let head = rem.get(k + db).copied().unwrap_or(0);
        let q = mul_mod(head, inv_lc, p);
        quot[k] = q;
        if q != 0 {
            for (i, &c) in b.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mul_mod(q, c, p)) % p;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact division over F_p");
    trim(&mut quot);
    quot
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out: Vec<u64> = a[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| mul_mod(c, (i as u64 + 1) % p, p))
        .collect();
    trim(&mut out);
    out
}

/// `base^e mod f` in F_p[x]/(f), square-and-multiply.
fn fp_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), f, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

fn excluded_if_lc_vanishes(f: &IntPoly, p: u64) -> Result<Vec<u64>, Error> {
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    let pb = BigInt::from(p);
    if f.leading_coefficient().unwrap().mod_floor(&pb).is_zero() {
        return Err(Error::ExcludedPrime(p));
    }
    Ok(f.reduce_mod(p))
}

/// Factorization type of `f mod p` by distinct-degree splitting: the gcd of
/// the residual with `x^(p^d) - x` isolates the degree-d part, and a slice of
/// dimension k contributes k/d copies of d.
pub fn factor_type_mod_p(f: &IntPoly, p: u64) -> Result<FactorType, Error> {
    let fbar = excluded_if_lc_vanishes(f, p)?;
    if fbar.len() <= 1 {
        return Ok(FactorType { degrees: vec![], squarefree_mod_p: true });
    }
    let fbar = fp_monic(&fbar, p);
    let deriv = fp_derivative(&fbar, p);
    let sq = fp_gcd(&fbar, &deriv, p);
    if fp_deg(&sq) != Some(0) {
        return Ok(FactorType { degrees: vec![], squarefree_mod_p: false });
    }

    let mut degrees: Vec<u32> = Vec::new();
    let mut rem = fbar;
    let x = vec![0u64, 1];
    let mut h = fp_rem(&x, &rem, p); // x^(p^d) mod rem, starting at d = 0
    let mut d = 0u32;
    while let Some(dr) = fp_deg(&rem) {
        if dr == 0 {
            break;
        }
        d += 1;
        if dr < 2 * d as usize {
            // everything of degree < d is stripped, so rem is irreducible
            degrees.push(dr as u32);
            break;
        }
        h = fp_powmod(&h, p, &rem, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rem, p);
        if let Some(dg) = fp_deg(&g) {
            if dg > 0 {
                for _ in 0..dg / d as usize {
                    degrees.push(d);
                }
                rem = fp_div_exact(&rem, &g, p);
                h = fp_rem(&h, &rem, p);
            }
        }
    }
    degrees.sort_unstable();
    Ok(FactorType { degrees, squarefree_mod_p: true })
}

/// Whether `f` has a zero mod p: `gcd(f mod p, x^p - x)` has positive degree.
pub fn has_root_mod_p(f: &IntPoly, p: u64) -> Result<bool, Error> {
    let fbar = excluded_if_lc_vanishes(f, p)?;
    if fbar.len() <= 1 {
        return Ok(false);
    }
    let fbar = fp_monic(&fbar, p);
    let x = vec![0u64, 1];
    let xp = fp_powmod(&x, p, &fbar, p);
    let g = fp_gcd(&fp_sub(&xp, &x, p), &fbar, p);
    Ok(fp_deg(&g).is_some_and(|d| d >= 1))
}

/// Whether `f` splits into linear factors mod p. Ramified primes (where
/// `f mod p` is not squarefree) surface as [`Error::ExcludedPrime`].
pub fn splits_completely_mod_p(f: &IntPoly, p: u64) -> Result<bool, Error> {
    let ft = factor_type_mod_p(f, p)?;
    if !ft.squarefree_mod_p {
        return Err(Error::ExcludedPrime(p));
    }
    Ok(ft.all_linear())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::euler_phi;
    use crate::primes::sieve;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let f: IntPoly = "-1,-1,0,1".parse().unwrap();
        assert_eq!(f, poly(&[-1, -1, 0, 1]));
        assert_eq!(f.to_string(), "-1,-1,0,1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert!("1,,2".parse::<IntPoly>().is_err());
        assert!("1,x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn cyclotomic_small_table() {
        // hand-checkable table
        let table: [(u64, &[i64]); 8] = [
            (1, &[-1, 1]),
            (2, &[1, 1]),
            (3, &[1, 1, 1]),
            (4, &[1, 0, 1]),
            (5, &[1, 1, 1, 1, 1]),
            (6, &[1, -1, 1]),
            (9, &[1, 0, 0, 1, 0, 0, 1]),
            (12, &[1, 0, -1, 0, 1]),
        ];
        for (n, coeffs) in table {
            assert_eq!(cyclotomic(n).unwrap(), poly(coeffs), "n = {}", n);
        }
        assert!(matches!(cyclotomic(0), Err(Error::Bounds(_))));
        assert!(matches!(cyclotomic(10_001), Err(Error::Bounds(_))));
    }

    #[test]
    fn cyclotomic_degree_and_divisibility() {
        for n in 1..=200u64 {
            let phi = cyclotomic(n).unwrap();
            assert_eq!(phi.degree().unwrap() as u64, euler_phi(n).unwrap(), "n={}", n);
            let target = IntPoly::x_pow_minus_one(n as usize);
            let q = target.exact_div(&phi);
            assert!(q.is_some(), "Phi_{} does not divide x^{} - 1", n, n);
        }
    }

    #[test]
    fn resultant_examples() {
        let r = poly_resultant(&poly(&[-2, 1]), &poly(&[-3, 1])).unwrap();
        assert_eq!(r, BigInt::from(-1)); // g(2) = 2 - 3
        let f = poly(&[-1, -1, 0, 1]);
        assert_eq!(poly_resultant(&f, &f).unwrap(), BigInt::zero());
        let r = poly_resultant(&poly(&[1, 0, 1]), &poly(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r, BigInt::zero()); // shared zeros at ±i
        assert!(poly_resultant(&IntPoly::zero(), &f).is_err());
    }

    /// Laplace-expansion determinant, the independent route for small sizes.
    fn det_naive(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for col in 0..n {
            if m[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][col] * det_naive(&minor);
            if col % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn sylvester(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + k] = c.clone();
            }
        }
        mat
    }

    #[test]
    fn resultant_matches_naive_determinant() {
        // deterministic LCG over small coefficient vectors
        let mut state = 12345u64;
        let mut next = move |span: i64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64).rem_euclid(2 * span + 1) - span
        };
        for _ in 0..200 {
            let df = 1 + (next(100).rem_euclid(3)) as usize;
            let dg = 1 + (next(100).rem_euclid(3)) as usize;
            let mut fc: Vec<i64> = (0..=df).map(|_| next(5)).collect();
            let mut gc: Vec<i64> = (0..=dg).map(|_| next(5)).collect();
            if fc[df] == 0 {
                fc[df] = 1;
            }
            if gc[dg] == 0 {
                gc[dg] = 1;
            }
            let f = poly(&fc);
            let g = poly(&gc);
            let fast = poly_resultant(&f, &g).unwrap();
            let slow = det_naive(&sylvester(&f, &g));
            assert_eq!(fast, slow, "f={} g={}", f, g);
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&poly(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        for d in [-5i64, -2, 2, 3, 7, 10] {
            assert_eq!(
                discriminant(&poly(&[-d, 0, 1])).unwrap(),
                BigInt::from(4 * d),
                "x^2 - {}",
                d
            );
        }
        assert_eq!(discriminant(&poly(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        assert!(discriminant(&poly(&[7])).is_err());
    }

    #[test]
    fn discriminant_of_prime_cyclotomics() {
        // Disc(Phi_p) = (-1)^((p-1)/2) p^(p-2), an independent closed form
        for p in [3u64, 5, 7, 11] {
            let phi = cyclotomic(p).unwrap();
            let mut expected = BigInt::from(p).pow(p as u32 - 2);
            if (p - 1) / 2 % 2 == 1 {
                expected = -expected;
            }
            assert_eq!(discriminant(&phi).unwrap(), expected, "p = {}", p);
        }
    }

    #[test]
    fn factor_type_examples() {
        let f = poly(&[1, 0, 1]); // x^2 + 1
        assert_eq!(factor_type_mod_p(&f, 5).unwrap().degrees, vec![1, 1]);
        assert_eq!(factor_type_mod_p(&f, 3).unwrap().degrees, vec![2]);
        let t = factor_type_mod_p(&f, 2).unwrap();
        assert!(!t.squarefree_mod_p);
        assert!(t.degrees.is_empty());
        // excluded when p divides the leading coefficient
        let g = poly(&[1, 3]);
        assert!(matches!(factor_type_mod_p(&g, 3), Err(Error::ExcludedPrime(3))));
    }

    #[test]
    fn has_root_examples() {
        assert!(has_root_mod_p(&poly(&[2, 0, 1]), 3).unwrap()); // 1 + 2 = 0
        assert!(!has_root_mod_p(&poly(&[2, 0, 1]), 5).unwrap());
        for a in 0..20i64 {
            assert!(has_root_mod_p(&poly(&[-a, 1]), 7).unwrap());
        }
    }

    #[test]
    fn has_root_matches_exhaustive_evaluation() {
        let corpus = [
            poly(&[1, 0, 1]),
            poly(&[2, 0, 1]),
            poly(&[-2, 0, 1]),
            poly(&[-1, -1, 0, 1]),
            poly(&[-2, 0, 0, 1]),
            poly(&[1, 0, 0, 0, 1]),
            poly(&[16, 20, 0, 0, 0, 1]),
        ];
        let table = sieve(1_000).unwrap();
        for f in &corpus {
            for p in table.primes() {
                let brute = (0..p).any(|a| {
                    f.eval(&BigInt::from(a)).mod_floor(&BigInt::from(p)).is_zero()
                });
                assert_eq!(has_root_mod_p(f, p).unwrap(), brute, "f={} p={}", f, p);
            }
        }
    }

    #[test]
    fn splits_examples() {
        let f = poly(&[1, 0, 1]);
        assert!(splits_completely_mod_p(&f, 13).unwrap());
        assert!(!splits_completely_mod_p(&f, 7).unwrap());
        assert!(splits_completely_mod_p(&poly(&[-1, 1]), 97).unwrap());
        assert!(matches!(splits_completely_mod_p(&f, 2), Err(Error::ExcludedPrime(2))));
    }

    /// Brute-force factor degrees: strip roots, then search monic divisors of
    /// degree 2 exhaustively; what remains of degree <= 3 is irreducible.
    fn factor_degrees_brute(f: &IntPoly, p: u64) -> Vec<u32> {
        let pb = BigInt::from(p);
        let mut rem: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        trim(&mut rem);
        rem = fp_monic(&rem, p);
        let mut degrees: Vec<u32> = Vec::new();
        // root stripping
        let mut a = 0u64;
        while a < p && rem.len() > 1 {
            let val = rem.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, a, p) + c) % p);
            if val == 0 {
                rem = fp_div_exact(&rem, &[p - a, 1], p);
                degrees.push(1);
            } else {
                a += 1;
            }
        }
        // quadratic divisors (only irreducible ones can divide now); once the
        // search is exhausted the remainder has no factor of degree <= 2 and,
        // being of degree <= 5, is itself irreducible
        let mut b = 0u64;
        let mut c = 0u64;
        'outer: while rem.len() > 3 {
            loop {
                let q = [c, b, 1];
                if fp_rem(&rem, &q, p).is_empty() {
                    rem = fp_div_exact(&rem, &q, p);
                    degrees.push(2);
                    continue 'outer;
                }
                c += 1;
                if c == p {
                    c = 0;
                    b += 1;
                    if b == p {
                        break 'outer;
                    }
                }
            }
        }
        if rem.len() > 1 {
            degrees.push((rem.len() - 1) as u32);
        }
        degrees.sort_unstable();
        degrees
    }

    #[test]
    fn factor_type_matches_brute_force() {
        let corpus = [
            poly(&[1, 0, 1]),
            poly(&[2, 0, 1]),
            poly(&[-2, 0, 1]),
            poly(&[-1, -1, 0, 1]),
            poly(&[-2, 0, 0, 1]),
            poly(&[1, 0, 0, 0, 1]),
        ];
        let table = sieve(1_000).unwrap();
        for f in &corpus {
            let disc = discriminant(f).unwrap();
            let lc = f.leading_coefficient().unwrap().clone();
            let bad = disc * lc;
            for p in table.primes() {
                if bad.mod_floor(&BigInt::from(p)).is_zero() {
                    continue;
                }
                let ft = factor_type_mod_p(f, p).unwrap();
                assert!(ft.squarefree_mod_p, "f={} p={}", f, p);
                assert_eq!(ft.degrees, factor_degrees_brute(f, p), "f={} p={}", f, p);
                let total: u32 = ft.degrees.iter().sum();
                assert_eq!(total as usize, f.degree().unwrap());
            }
        }
    }

    #[test]
    fn unramified_implies_squarefree() {
        let corpus = [
            poly(&[1, 0, 1]),
            poly(&[-1, -1, 0, 1]),
            poly(&[16, 20, 0, 0, 0, 1]),
            poly(&[1, 0, 0, 0, 1]),
        ];
        let table = sieve(10_000).unwrap();
        for f in &corpus {
            let bad = discriminant(f).unwrap() * f.leading_coefficient().unwrap();
            for p in table.primes() {
                if bad.mod_floor(&BigInt::from(p)).is_zero() {
                    continue;
                }
                assert!(factor_type_mod_p(f, p).unwrap().squarefree_mod_p, "f={} p={}", f, p);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn product_division_roundtrip(
            fc in proptest::collection::vec(-9i64..=9, 1..6),
            gc in proptest::collection::vec(-9i64..=9, 1..6),
        ) {
            let f = poly(&fc);
            let g = poly(&gc);
            proptest::prop_assume!(!g.is_zero());
            let q = f.mul(&g).exact_div(&g).unwrap();
            proptest::prop_assert_eq!(q, f);
        }
    }

    #[test]
    fn cyclotomic_root_iff_one_mod_n() {
        // module-scale slice of the full check done in the acceptance suite
        let table = sieve(1_000).unwrap();
        for n in 1..=30u64 {
            let phi = cyclotomic(n).unwrap();
            for p in table.primes() {
                if n % p == 0 {
                    continue;
                }
                let has = has_root_mod_p(&phi, p).unwrap();
                assert_eq!(has, (p - 1) % n == 0, "n={} p={}", n, p);
            }
        }
    }
}
