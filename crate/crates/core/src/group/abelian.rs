//! Decomposition of a finite abelian group into cyclic factors of prime
//! power order, and the coordinates of every element in that basis.

use num_integer::Integer;
use serde::Serialize;

use super::{ElementId, Group};
use crate::error::{FszError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct AbelianBasis {
    /// Basis elements `b_1..b_r`; the group is the internal direct product
    /// of the cyclic groups `<b_i>`.
    pub generators: Vec<ElementId>,
    /// `o(b_i)`, each a prime power.
    pub orders: Vec<u64>,
    /// `coordinates[x]` is the exponent vector `k` with `x = prod b_i^k_i`.
    #[serde(skip)]
    pub coordinates: Vec<Vec<u32>>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            ps.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// Advances a mixed-radix counter; false once it wraps to zero.
fn odometer(k: &mut [u32], radix: &[u64]) -> bool {
    for (d, &r) in k.iter_mut().zip(radix) {
        *d += 1;
        if (*d as u64) < r {
            return true;
        }
        *d = 0;
    }
    false
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl AbelianBasis {
    /// Works prime by prime. Inside a Sylow subgroup `P` it repeatedly picks
    /// an element `x` whose image in `P/H` has maximal order `t`
    /// (`H` = span of the basis so far), then corrects it by some `h in H`
    /// with `(x h)^t = 1`, which exists by maximality.
    pub fn compute(g: &Group) -> Result<AbelianBasis> {
        if !g.is_abelian() {
            return Err(FszError::Unsupported(format!("{} is not abelian", g.name())));
        }
        let n = g.order();
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for p in prime_factors(n as u64) {
            let sylow: Vec<ElementId> = g.elements().filter(|&x| is_power_of(g.element_order(x), p)).collect();
            let mut in_h = vec![false; n];
            in_h[0] = true;
            let mut h_elems = vec![ElementId::IDENTITY];
            while h_elems.len() < sylow.len() {
                // t(x) = least p-power t with x^t in H.
                let mut best = (1u64, ElementId::IDENTITY, ElementId::IDENTITY);
                for &x in &sylow {
                    let mut t = 1u64;
                    let mut y = x;
                    while !in_h[y.index()] {
                        y = g.power(y, p as i64);
                        t *= p;
                    }
                    if t > best.0 {
                        best = (t, x, y);
                    }
                }
                let (t, x, xt) = best;
                let target = g.inverse(xt);
                let h = h_elems
                    .iter()
                    .copied()
                    .find(|&h| g.power(h, t as i64) == target)
                    .ok_or_else(|| FszError::Structural("abelian basis correction not found".into()))?;
                let b = g.mul(x, h);
                debug_assert_eq!(g.element_order(b), t);
                let mut next = Vec::with_capacity(h_elems.len() * t as usize);
                let mut bk = ElementId::IDENTITY;
                for _ in 0..t {
                    for &hh in &h_elems {
                        next.push(g.mul(hh, bk));
                    }
                    bk = g.mul(bk, b);
                }
                for &y in &next {
                    in_h[y.index()] = true;
                }
                h_elems = next;
                generators.push(b);
                orders.push(t);
            }
        }
        // Coordinates by enumerating all products.
        let mut coordinates = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut filled = 0usize;
        let r = generators.len();
        let mut k = vec![0u32; r];
        loop {
            let x =
                k.iter().zip(&generators).fold(ElementId::IDENTITY, |acc, (&e, &b)| g.mul(acc, g.power(b, e as i64)));
            if seen[x.index()] {
                return Err(FszError::Structural("abelian basis is not independent".into()));
            }
            seen[x.index()] = true;
            coordinates[x.index()] = k.clone();
            filled += 1;
            if !odometer(&mut k, &orders) {
                break;
            }
        }
        if filled != n {
            return Err(FszError::Structural("abelian basis does not span the group".into()));
        }
        Ok(AbelianBasis { generators, orders, coordinates })
    }

    /// `lcm` of the basis orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Number of linear characters (= group order).
    pub fn character_count(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// All character labels `j` (one residue per basis element), in
    /// odometer order starting from the trivial character.
    pub fn character_labels(&self) -> Vec<Vec<u32>> {
        let r = self.orders.len();
        let mut out = Vec::with_capacity(self.character_count());
        let mut j = vec![0u32; r];
        loop {
            out.push(j.clone());
            if !odometer(&mut j, &self.orders) {
                break;
            }
        }
        out
    }

    /// `eta_j(x) = zeta_E^s` with `E` the exponent; returns `s mod E`.
    pub fn character_exponent(&self, label: &[u32], x: ElementId) -> u64 {
        let e = self.exponent();
        let coords = &self.coordinates[x.index()];
        let mut s = 0u64;
        for ((&j, &k), &o) in label.iter().zip(coords).zip(&self.orders) {
            s = (s + j as u64 * k as u64 % o * (e / o)) % e;
        }
        s
    }
}
