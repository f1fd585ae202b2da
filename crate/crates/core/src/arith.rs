//! Multiplicative arithmetic over exactly factored integers.
//!
//! Moduli live in `u64` (factorization is plain trial division, sized for
//! desk-scale inputs); every derived quantity — φ(n), σ_k(n), tuple counts
//! n^k — is arbitrary precision, since those overflow 64 bits as soon as
//! k ≥ 3 at moderate n.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::Error;

/// A positive integer together with its prime factorization.
///
/// `parts` lists `(prime, exponent)` pairs with primes strictly ascending;
/// the empty list represents 1. Construction is only possible through
/// [`factorize`] or [`Factorization::prime_power`], so the invariants
/// (primality of each part, ascending order, product equal to the value)
/// hold by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    parts: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer itself.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// The `(prime, exponent)` parts, primes strictly ascending.
    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    /// Builds the factorization of p^m directly.
    ///
    /// `p` must be prime and `m ≥ 1`; both are enforced, the first in debug
    /// builds only (callers pass primes that came out of [`factorize`]).
    pub fn prime_power(p: u64, m: u32) -> Self {
        debug_assert!(is_prime(p), "prime_power called with composite {p}");
        assert!(m >= 1, "prime_power needs exponent >= 1");
        let value = p.checked_pow(m).expect("prime power overflows u64");
        Factorization {
            value,
            parts: vec![(p, m)],
        }
    }
}

/// Factors `n ≥ 1` by trial division.
///
/// Deterministic and exact; the division loop runs to √n, so this is meant
/// for desk-scale moduli, not cryptographic ones.
pub fn factorize(n: u64) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut rest = n;
    let mut parts = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut m = 0u32;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            m += 1;
        }
        if m > 0 {
            parts.push((p, m));
        }
    };
    take(2, &mut rest);
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= rest) {
        take(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        // What survives trial division to √rest is prime.
        parts.push((rest, 1));
    }
    Ok(Factorization { value: n, parts })
}

/// Deterministic primality by trial division. `false` for n < 2.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Euler's totient φ(n) = ∏ (p^m − p^{m−1}); φ(1) = 1.
pub fn euler_phi(f: &Factorization) -> BigUint {
    let mut phi = BigUint::from(1u32);
    for &(p, m) in f.parts() {
        let p = BigUint::from(p);
        phi *= p.pow(m) - p.pow(m - 1);
    }
    phi
}

/// φ(n) in `u64`; always fits because φ(n) ≤ n.
pub(crate) fn euler_phi_u64(f: &Factorization) -> u64 {
    let mut phi = 1u64;
    for &(p, m) in f.parts() {
        phi *= p.pow(m) - p.pow(m - 1);
    }
    phi
}

/// The divisor power sum σ_k(n) = Σ_{d|n} d^k; σ_0 counts divisors.
pub fn sigma_k(f: &Factorization, k: u32) -> BigUint {
    let mut sigma = BigUint::from(1u32);
    for &(p, m) in f.parts() {
        // Σ_{j=0..m} p^{jk}, summed directly: exact, and m is tiny.
        let mut local = BigUint::from(0u32);
        let pk = BigUint::from(p).pow(k);
        let mut term = BigUint::from(1u32);
        for _ in 0..=m {
            local += &term;
            term *= &pk;
        }
        sigma *= local;
    }
    sigma
}

/// Möbius μ(n): 0 if n is squareful, otherwise (−1)^(number of primes).
pub fn moebius(f: &Factorization) -> i32 {
    if f.parts().iter().any(|&(_, m)| m >= 2) {
        0
    } else if f.parts().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All divisors of n, strictly ascending.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, m) in f.parts() {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 1..=m {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    divs
}

/// Splits a residue mod n into its residues mod each prime-power part,
/// in the order of `f.parts()`.
pub fn crt_split(f: &Factorization, a: u64) -> Vec<u64> {
    assert!(a < f.value(), "residue {a} out of range mod {}", f.value());
    f.parts().iter().map(|&(p, m)| a % p.pow(m)).collect()
}

/// Recombines residues mod pairwise-coprime moduli into the unique residue
/// mod their product. The empty input yields 0 (mod 1).
pub fn crt_combine(moduli: &[u64], residues: &[u64]) -> Result<u64, Error> {
    assert_eq!(
        moduli.len(),
        residues.len(),
        "crt_combine needs one residue per modulus"
    );
    let mut x: u64 = 0;
    let mut q: u64 = 1; // x is the answer mod q so far
    for (&qi, &ri) in moduli.iter().zip(residues) {
        assert!(qi >= 1 && ri < qi, "residue {ri} out of range mod {qi}");
        let g = q.gcd(&qi);
        if g != 1 {
            return Err(Error::NonCoprimeModuli { a: q, b: qi, g });
        }
        // x + q·t ≡ ri (mod qi)  ⇒  t ≡ (ri − x)·q⁻¹ (mod qi)
        let q_inv = mod_inverse(q % qi, qi);
        let diff = (ri as u128 + qi as u128 - (x % qi) as u128) % qi as u128;
        let t = diff * q_inv as u128 % qi as u128;
        x += q * t as u64;
        q *= qi;
    }
    Ok(x)
}

/// Modular inverse of `a` mod `q` for coprime inputs, by extended Euclid.
fn mod_inverse(a: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (q as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    debug_assert_eq!(r0, 1, "mod_inverse needs coprime inputs");
    s0.rem_euclid(q as i128) as u64
}

/// a^e mod q with 128-bit intermediates.
pub(crate) fn mod_pow(a: u64, mut e: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let q128 = q as u128;
    let mut base = a as u128 % q128;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q128;
        }
        base = base * base % q128;
        e >>= 1;
    }
    acc as u64
}
