//! GF(q) and GF(q^2) arithmetic for small primes q.
//!
//! Elements of GF(q^2) are pairs `(c0, c1)` meaning `c0 + c1*x`, where `x`
//! satisfies the fixed modulus `x^2 + a*x + b` — the lexicographically first
//! irreducible monic quadratic over GF(q) (scan `a` then `b` ascending).
//! Fixing the modulus makes every downstream construction reproducible
//! bit-for-bit. Elements are packed as `idx = c0 + c1*q`, and the index also
//! defines the element ordering used by coordinate-lexicographic
//! enumeration, so the base field occupies indices `0..q`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not prime")]
    NotPrime(u32),
    #[error("q = {0} outside the supported range 2..=101")]
    OutOfRange(u32),
}

pub fn is_small_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic tables for GF(q) and GF(q^2).
#[derive(Clone, Debug)]
pub struct FieldTable {
    q: u32,
    /// coefficients (a, b) of the modulus x^2 + a x + b
    modulus: (u32, u32),
    /// multiplicative inverses in GF(q); entry 0 is unused
    inv_base: Vec<u32>,
    /// x^q as (d0, d1); Frobenius is z -> (c0 + c1 d0, c1 d1)
    xq: (u32, u32),
}

impl FieldTable {
    pub fn build(q: u32) -> Result<FieldTable, FieldError> {
        if !(2..=101).contains(&q) {
            return Err(FieldError::OutOfRange(q));
        }
        if !is_small_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        let modulus = first_irreducible(q);
        let mut inv_base = vec![0u32; q as usize];
        for v in 1..q {
            inv_base[v as usize] = pow_mod(v, q - 2, q);
        }
        let mut t = FieldTable {
            q,
            modulus,
            inv_base,
            xq: (0, 0),
        };
        let x = t.el(0, 1);
        let xq = t.pow(x, q as u64);
        t.xq = t.coeffs(xq);
        Ok(t)
    }

    #[inline(always)]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> (u32, u32) {
        self.modulus
    }

    /// Number of elements of GF(q^2).
    #[inline(always)]
    pub fn ext_size(&self) -> u32 {
        self.q * self.q
    }

    #[inline(always)]
    pub fn el(&self, c0: u32, c1: u32) -> u32 {
        debug_assert!(c0 < self.q && c1 < self.q);
        c0 + c1 * self.q
    }

    #[inline(always)]
    pub fn coeffs(&self, z: u32) -> (u32, u32) {
        (z % self.q, z / self.q)
    }

    #[inline(always)]
    pub fn add(&self, z: u32, w: u32) -> u32 {
        let (a0, a1) = self.coeffs(z);
        let (b0, b1) = self.coeffs(w);
        self.el((a0 + b0) % self.q, (a1 + b1) % self.q)
    }

    #[inline(always)]
    pub fn neg(&self, z: u32) -> u32 {
        let (c0, c1) = self.coeffs(z);
        self.el((self.q - c0) % self.q, (self.q - c1) % self.q)
    }

    #[inline(always)]
    pub fn sub(&self, z: u32, w: u32) -> u32 {
        self.add(z, self.neg(w))
    }

    #[inline]
    pub fn mul(&self, z: u32, w: u32) -> u32 {
        let q = self.q as u64;
        let (a0, a1) = self.coeffs(z);
        let (b0, b1) = self.coeffs(w);
        let (a0, a1, b0, b1) = (a0 as u64, a1 as u64, b0 as u64, b1 as u64);
        let (ma, mb) = (self.modulus.0 as u64, self.modulus.1 as u64);
        // (a0 + a1 x)(b0 + b1 x) with x^2 = -(ma x + mb)
        let c2 = a1 * b1 % q;
        let c0 = (a0 * b0 + (q - mb % q) * c2) % q;
        let c1 = (a0 * b1 + a1 * b0 + (q - ma % q) * c2) % q;
        self.el(c0 as u32, c1 as u32)
    }

    /// Scalar multiple by an element of the base field.
    #[inline]
    pub fn scale(&self, s: u32, z: u32) -> u32 {
        debug_assert!(s < self.q);
        self.mul(self.el(s, 0), z)
    }

    pub fn pow(&self, z: u32, mut e: u64) -> u32 {
        let mut base = z;
        let mut acc = self.el(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius z -> z^q (an involution on GF(q^2) fixing exactly GF(q)).
    #[inline]
    pub fn frob(&self, z: u32) -> u32 {
        let (c0, c1) = self.coeffs(z);
        let (d0, d1) = self.xq;
        let q = self.q as u64;
        let e0 = (c0 as u64 + c1 as u64 * d0 as u64) % q;
        let e1 = (c1 as u64 * d1 as u64) % q;
        self.el(e0 as u32, e1 as u32)
    }

    /// The norm z^{q+1} = z * z^q, always an element of the base field.
    /// Returned as a residue in `0..q`.
    #[inline]
    pub fn norm(&self, z: u32) -> u32 {
        let n = self.mul(z, self.frob(z));
        let (c0, c1) = self.coeffs(n);
        debug_assert_eq!(c1, 0, "norm must land in GF(q)");
        c0
    }

    /// Multiplicative inverse: z^{-1} = z^q / norm(z).
    pub fn inv(&self, z: u32) -> u32 {
        assert!(z != 0, "inverse of zero");
        let n = self.norm(z);
        let ninv = self.inv_base[n as usize];
        self.scale(ninv, self.frob(z))
    }
}

/// Lexicographically first (a, b) with x^2 + a x + b irreducible over GF(q).
/// A monic quadratic is reducible over a field iff it has a root.
fn first_irreducible(q: u32) -> (u32, u32) {
    for a in 0..q {
        'next: for b in 0..q {
            for r in 0..q {
                if (r * r + a * r + b) % q == 0 {
                    continue 'next;
                }
            }
            return (a, b);
        }
    }
    unreachable!("irreducible quadratics exist over every finite field");
}

fn pow_mod(b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut base = b as u64 % m as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u64;
        }
        base = base * base % m as u64;
        e >>= 1;
    }
    acc as u32
}
