//! Bit-packed arithmetic in GF(2^k), 1 <= k <= 16.
//!
//! Elements are bit vectors `b_{k-1} ... b_1 b_0` standing for
//! `sum b_i w^i`, where `w` is a root of the pinned modulus for `k`.
//! The moduli never change: certificates written by one build must be
//! readable by every other.

/// Pinned irreducible moduli over GF(2), indexed by `k - 1`.
///
/// | k  | modulus                     |
/// |----|-----------------------------|
/// | 1  | x + 1                       |
/// | 2  | x^2 + x + 1                 |
/// | 3  | x^3 + x + 1                 |
/// | 4  | x^4 + x + 1                 |
/// | 5  | x^5 + x^2 + 1               |
/// | 6  | x^6 + x + 1                 |
/// | 7  | x^7 + x + 1                 |
/// | 8  | x^8 + x^4 + x^3 + x + 1     |
/// | 9  | x^9 + x^4 + 1               |
/// | 10 | x^10 + x^3 + 1              |
/// | 11 | x^11 + x^2 + 1              |
/// | 12 | x^12 + x^3 + 1              |
/// | 13 | x^13 + x^4 + x^3 + x + 1    |
/// | 14 | x^14 + x^5 + 1              |
/// | 15 | x^15 + x + 1                |
/// | 16 | x^16 + x^5 + x^3 + x + 1    |
pub const MODULI: [u32; 16] = [
    0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B, 0x211, 0x409, 0x805, 0x1009, 0x201B, 0x4021,
    0x8003, 0x1002B,
];

pub const MAX_DEGREE: u32 = 16;

pub fn modulus(k: u32) -> Option<u32> {
    if (1..=MAX_DEGREE).contains(&k) {
        Some(MODULI[(k - 1) as usize])
    } else {
        None
    }
}

#[inline]
pub fn mul(a: u32, b: u32, k: u32, modulus: u32) -> u32 {
    // carry-less product, at most 31 bits for k <= 16
    let mut prod: u64 = 0;
    let mut x = a as u64;
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            prod ^= x;
        }
        x <<= 1;
        y >>= 1;
    }
    reduce(prod, k, modulus)
}

#[inline]
fn reduce(mut p: u64, k: u32, modulus: u32) -> u32 {
    let m = modulus as u64;
    let mut top = 63 - p.leading_zeros() as i64;
    while p != 0 && top >= k as i64 {
        p ^= m << (top as u32 - k);
        if p == 0 {
            break;
        }
        top = 63 - p.leading_zeros() as i64;
    }
    p as u32
}

pub fn pow(a: u32, mut e: u64, k: u32, modulus: u32) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, k, modulus);
        }
        base = mul(base, base, k, modulus);
        e >>= 1;
    }
    acc
}

/// Inverse via `a^(2^k - 2)`; caller guarantees `a != 0`.
pub fn inv(a: u32, k: u32, modulus: u32) -> u32 {
    pow(a, (1u64 << k) - 2, k, modulus)
}

/// Inverse Frobenius: the unique `r` with `r^2 = a`.
pub fn sqrt(a: u32, k: u32, modulus: u32) -> u32 {
    let mut r = a;
    for _ in 1..k {
        r = mul(r, r, k, modulus);
    }
    r
}

/// Absolute trace to GF(2).
pub fn trace(a: u32, k: u32, modulus: u32) -> u32 {
    let mut t = 0;
    let mut x = a;
    for _ in 0..k {
        t ^= x;
        x = mul(x, x, k, modulus);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_generator_has_order_three() {
        let (k, m) = (2, modulus(2).unwrap());
        let w = 0b10;
        let w2 = mul(w, w, k, m);
        assert_eq!(w2, 0b11);
        assert_eq!(mul(w, w2, k, m), 1);
    }

    #[test]
    fn inverse_and_sqrt_roundtrip_every_degree() {
        for k in 1..=10 {
            let m = modulus(k).unwrap();
            for a in 1..(1u32 << k) {
                assert_eq!(mul(a, inv(a, k, m), k, m), 1, "k={k} a={a}");
                let r = sqrt(a, k, m);
                assert_eq!(mul(r, r, k, m), a);
            }
        }
    }

    #[test]
    fn trace_is_binary_and_additive() {
        for k in 1..=8 {
            let m = modulus(k).unwrap();
            for a in 0..(1u32 << k) {
                assert!(trace(a, k, m) <= 1);
                assert_eq!(trace(a ^ 0b1, k, m), trace(a, k, m) ^ trace(1, k, m));
            }
        }
    }

    #[test]
    fn frobenius_power_fixes_generator() {
        for k in 1..=16 {
            let m = modulus(k).unwrap();
            let x = if k == 1 { 1 } else { 0b10 };
            assert_eq!(pow(x, 1u64 << k, k, m), x, "k={k}");
        }
    }
}
