//! Benchmark-only crate; see `benches/`.

/// Admissible E_p primes (`p ≡ 1, 9 mod 16`) below 460, a fixed workload.
pub const EP_PRIMES: [u64; 20] =
    [17, 41, 73, 89, 97, 113, 137, 193, 233, 241, 257, 281, 313, 337, 353, 401, 409, 433, 449, 457];
