//! Small finite fields. Elements of `GF(p^k)` are encoded as integers in
//! `0..q` whose base-`p` digits are polynomial coefficients (lowest first).

use crate::error::{usage, Result};

#[derive(Clone, Debug)]
pub struct GaloisField {
    q: u32,
    p: u32,
    k: u32,
    /// Low coefficients of the monic modulus (degree `k`), empty for primes.
    modulus: Vec<u32>,
}

/// An element of a [`GaloisField`]; only meaningful with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElement(pub u32);

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl GaloisField {
    /// Prime fields of any size, plus `GF(4)`, `GF(8)` and `GF(9)` with the
    /// moduli `x^2+x+1`, `x^3+x+1` and `x^2+1`.
    pub fn new(q: u32) -> Result<GaloisField> {
        let (p, k, modulus) = match q {
            4 => (2, 2, vec![1, 1]),
            8 => (2, 3, vec![1, 1, 0]),
            9 => (3, 2, vec![1, 0]),
            _ if is_prime(q) => (q, 1, Vec::new()),
            _ => return usage(format!("GF({q}) is not supported (primes, 4, 8 and 9 are)")),
        };
        Ok(GaloisField { q, p, k, modulus })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElement> {
        (0..self.q).map(GfElement)
    }

    pub fn zero(&self) -> GfElement {
        GfElement(0)
    }

    pub fn one(&self) -> GfElement {
        GfElement(1)
    }

    /// `1, x, ..., x^(k-1)`: an additive basis over the prime field.
    pub fn basis(&self) -> Vec<GfElement> {
        (0..self.k).map(|i| GfElement(self.p.pow(i))).collect()
    }

    fn digits(&self, a: GfElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> GfElement {
        GfElement(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: GfElement, b: GfElement) -> GfElement {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: GfElement) -> GfElement {
        let s: Vec<u32> = self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: GfElement, b: GfElement) -> GfElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElement, b: GfElement) -> GfElement {
        let p = self.p as u64;
        if self.k == 1 {
            return GfElement((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        let k = self.k as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // x^k = -(modulus low part)
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for (t, &m) in self.modulus.iter().enumerate() {
                    prod[i - k + t] = (prod[i - k + t] + (p - c) * m as u64) % p;
                }
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
        self.encode(&digits)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: GfElement) -> Option<GfElement> {
        if a.0 == 0 {
            return None;
        }
        self.elements().find(|&b| self.mul(a, b) == self.one())
    }
}
