//! Polycyclic (power-commutator) backend.
//!
//! Generators `g_1..g_k` with relative orders `r_i`. Every element has a
//! unique normal form `g_1^e_1 ... g_k^e_k` with `0 <= e_i < r_i`; its index
//! is the mixed-radix number with `e_1` most significant, so the identity is
//! index 0 and no hash map is needed. Relations:
//!
//! * power: `g_i^r_i = w_i`, a word in `g_{i+1}..g_k`;
//! * commutator: `[g_j, g_i] = g_j^-1 g_i^-1 g_j g_i = c_ji` for `j > i`,
//!   a word in `g_{j+1}..g_k`.
//!
//! Multiplication is driven by a table of right multiplications by single
//! generators, filled once by collection from the left.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{FszError, Result};
use crate::group::SIZE_CAP;

/// A power-commutator presentation. Words are exponent vectors of length
/// `k`; relations not given are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub relative_orders: Vec<u32>,
    /// `powers[i]` is the normal form of `g_i^r_i`.
    pub powers: Vec<Vec<u32>>,
    /// `commutators[j][i]` (for `j > i`) is the normal form of `[g_j, g_i]`.
    pub commutators: Vec<Vec<Vec<u32>>>,
}

impl PcPresentation {
    /// Presentation with the given relative orders and all relations trivial.
    pub fn new(relative_orders: Vec<u32>) -> Self {
        let k = relative_orders.len();
        PcPresentation {
            relative_orders,
            powers: vec![vec![0; k]; k],
            commutators: (0..k).map(|_| vec![vec![0; k]; k]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.relative_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relative_orders.is_empty()
    }

    /// Sets `g_i^r_i` (0-based `i`).
    pub fn set_power(&mut self, i: usize, word: Vec<u32>) {
        self.powers[i] = word;
    }

    /// Sets `[g_j, g_i]` (0-based, `j > i`).
    pub fn set_commutator(&mut self, j: usize, i: usize, word: Vec<u32>) {
        self.commutators[j][i] = word;
    }

    fn check_shape(&self) -> Result<()> {
        let k = self.len();
        let bad = |m: String| Err(FszError::Inconsistent(m));
        for (i, &r) in self.relative_orders.iter().enumerate() {
            if r < 2 {
                return bad(format!("relative order of g{} is {r}; must be at least 2", i + 1));
            }
        }
        let order: u128 = self.relative_orders.iter().map(|&r| r as u128).product();
        if order > SIZE_CAP as u128 {
            return Err(FszError::CapExceeded { order, cap: SIZE_CAP });
        }
        let check_word = |w: &[u32], first_allowed: usize, what: &str| -> Result<()> {
            if w.len() != k {
                return bad(format!("{what} has {} exponents, expected {k}", w.len()));
            }
            for (l, &e) in w.iter().enumerate() {
                if e >= self.relative_orders[l] {
                    return bad(format!(
                        "{what}: exponent {e} of g{} is not below its relative order {}",
                        l + 1,
                        self.relative_orders[l]
                    ));
                }
                if e != 0 && l < first_allowed {
                    return bad(format!("{what} involves g{}, which is not a later generator", l + 1));
                }
            }
            Ok(())
        };
        for i in 0..k {
            check_word(&self.powers[i], i + 1, &format!("power relation of g{}", i + 1))?;
            for j in i + 1..k {
                check_word(&self.commutators[j][i], j + 1, &format!("commutator [g{}, g{}]", j + 1, i + 1))?;
            }
        }
        Ok(())
    }
}

pub(crate) struct PcBackend {
    pub(crate) presentation: PcPresentation,
    place: Vec<usize>,
    order: usize,
    /// `right[x * k + i]` is the index of `x * g_i`.
    right: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl PcBackend {
    pub(crate) fn new(presentation: PcPresentation) -> Result<Self> {
        presentation.check_shape()?;
        let k = presentation.len();
        let mut place = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            place[i] = place[i + 1] * presentation.relative_orders[i + 1] as usize;
        }
        let order = presentation.relative_orders.iter().map(|&r| r as usize).product();
        let mut backend = PcBackend { presentation, place, order, right: vec![UNSET; order * k] };
        for x in 0..order as u32 {
            for i in 0..k {
                backend.collect_gen(x, i);
            }
        }
        backend.check_consistency()?;
        Ok(backend)
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    fn k(&self) -> usize {
        self.presentation.len()
    }

    pub(crate) fn exponents(&self, x: u32) -> Vec<u32> {
        let x = x as usize;
        (0..self.k()).map(|i| ((x / self.place[i]) % self.presentation.relative_orders[i] as usize) as u32).collect()
    }

    pub(crate) fn encode(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.place).map(|(&e, &p)| e as usize * p).sum::<usize>() as u32
    }

    pub(crate) fn generator(&self, i: usize) -> u32 {
        self.place[i] as u32
    }

    /// `x * g_i`, memoised. Only ever recurses into strictly later
    /// generators, so the recursion depth is bounded by `k`.
    fn collect_gen(&mut self, x: u32, i: usize) -> u32 {
        let k = self.k();
        let slot = x as usize * k + i;
        if self.right[slot] != UNSET {
            return self.right[slot];
        }
        let e = self.exponents(x);
        // x = head * g_i^e_i * tail with tail in <g_{i+1}..>; move g_i left
        // through tail, which conjugates it: g_j^{g_i} = g_j [g_j, g_i].
        let mut head = e.clone();
        for v in head.iter_mut().skip(i + 1) {
            *v = 0;
        }
        head[i] += 1;
        let wrapped = head[i] == self.presentation.relative_orders[i];
        if wrapped {
            head[i] = 0;
        }
        let mut y = self.encode(&head);
        if wrapped {
            let w = self.presentation.powers[i].clone();
            y = self.mul_word(y, &w);
        }
        for j in i + 1..k {
            let c = self.presentation.commutators[j][i].clone();
            for _ in 0..e[j] {
                y = self.collect_gen(y, j);
                y = self.mul_word(y, &c);
            }
        }
        self.right[slot] = y;
        y
    }

    fn mul_word(&mut self, mut y: u32, word: &[u32]) -> u32 {
        for (l, &e) in word.iter().enumerate() {
            for _ in 0..e {
                y = self.collect_gen(y, l);
            }
        }
        y
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        let k = self.k();
        let mut y = a;
        let mut rest = b as usize;
        for i in 0..k {
            let e = rest / self.place[i];
            rest %= self.place[i];
            for _ in 0..e {
                y = self.right[y as usize * k + i];
            }
        }
        y
    }

    fn pow(&self, a: u32, e: u32) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Standard consistency test words for a finite polycyclic presentation,
    /// followed by a bijectivity check of each generator column and random
    /// associativity spot checks.
    fn check_consistency(&self) -> Result<()> {
        let k = self.k();
        let r = &self.presentation.relative_orders;
        let g: Vec<u32> = (0..k).map(|i| self.generator(i)).collect();
        let p: Vec<u32> = (0..k).map(|i| self.encode(&self.presentation.powers[i])).collect();
        let fail = |what: String| Err(FszError::Inconsistent(what));
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    let lhs = self.mul(g[l], self.mul(g[j], g[i]));
                    let rhs = self.mul(self.mul(g[l], g[j]), g[i]);
                    if lhs != rhs {
                        return fail(format!(
                            "g{} (g{} g{}) != (g{} g{}) g{}",
                            l + 1,
                            j + 1,
                            i + 1,
                            l + 1,
                            j + 1,
                            i + 1
                        ));
                    }
                }
                let lhs = self.mul(self.pow(g[j], r[j] - 1), self.mul(g[j], g[i]));
                let rhs = self.mul(p[j], g[i]);
                if lhs != rhs {
                    return fail(format!("g{0}^({1}-1) (g{0} g{2}) != g{0}^{1} g{2}", j + 1, r[j], i + 1));
                }
                let lhs = self.mul(g[j], p[i]);
                let rhs = self.mul(self.mul(g[j], g[i]), self.pow(g[i], r[i] - 1));
                if lhs != rhs {
                    return fail(format!("g{0} g{1}^{2} != (g{0} g{1}) g{1}^({2}-1)", j + 1, i + 1, r[i]));
                }
            }
            if self.mul(g[i], p[i]) != self.mul(p[i], g[i]) {
                return fail(format!("g{0} g{0}^{1} != g{0}^{1} g{0}", i + 1, r[i]));
            }
        }
        let mut hit = vec![false; self.order];
        for i in 0..k {
            hit.iter_mut().for_each(|h| *h = false);
            for x in 0..self.order {
                let y = self.right[x * k + i] as usize;
                if hit[y] {
                    return fail(format!("right multiplication by g{} is not injective", i + 1));
                }
                hit[y] = true;
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed_0f6c);
        let n = self.order as u32;
        for _ in 0..256.min(self.order * self.order) {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplication is not associative".into());
            }
        }
        Ok(())
    }
}
