//! Exact evaluation of character-twisted Menon gcd sums.
//!
//! For a Dirichlet character χ mod n with conductor d, the sum
//!
//! ```text
//! S_χ(n, k) = Σ_{a ∈ Z_n^*} Σ_{b₁,…,b_k ∈ Z_n} gcd(a−1, b₁, …, b_k, n)·χ(a)
//! ```
//!
//! evaluates in closed form to φ(n)·σ_k(n/d). Setting χ trivial recovers
//! φ(n)·σ_k(n); setting k = 0 recovers φ(n)·σ₀(n/d); setting both recovers
//! the classical φ(n)·σ₀(n).
//!
//! The crate is organized so the identity can be checked, not just used:
//!
//! - [`arith`]: factorization, φ, σ_k, μ, divisors, CRT — exact, with big
//!   integers wherever values outgrow `u64`.
//! - [`cyclotomic`]: symbolic roots of unity and integer-weighted sums of
//!   them, with exact integer extraction by reduction modulo the
//!   cyclotomic polynomial. No floating point anywhere.
//! - [`characters`]: the full character group mod n via explicit unit-group
//!   generators per prime power, plus conductors computed from the unit
//!   filtration U_i = 1 + p^i·Z_{p^m}.
//! - [`menon`]: four independent evaluators for S_χ(n, k) — literal
//!   enumeration, divisor grouping, prime-power composition, and the
//!   closed form — kept deliberately separate so they can cross-check one
//!   another.
//!
//! Character indexing convention: fixed generators are chosen per prime
//! power (the smallest primitive root for odd p^m; 3 for modulus 4; the
//! pair −1, 5 for 2^m with m ≥ 3, with the −1-exponent more significant).
//! A character's index is the big-endian mixed-radix encoding of its
//! exponent digits over those generators, parts ordered by ascending
//! prime. Index 0 is always the trivial character.

pub mod arith;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod menon;

pub use arith::{
    crt_combine, crt_split, divisors, euler_phi, factorize, is_prime, moebius, sigma_k,
    Factorization,
};
pub use characters::{
    char_sum_on_unit_subgroup, character_group, CharacterGroup, DirichletCharacter, LocalCharacter,
    PrimePowerLocal, DEFAULT_ENUMERATION_CAP,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicSum, Extraction, RootOfUnity};
pub use error::Error;
pub use menon::{
    evaluate_with_mode, gcd_char_sum, gcd_char_sum_closed, menon_closed, menon_grouped,
    menon_local, menon_naive, menon_naive_with_cap, tuple_gcd_count, EvalMode, MenonEvaluation,
    DEFAULT_WORK_CAP,
};
