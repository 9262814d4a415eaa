//! Exact arithmetic in cyclotomic fields `Q(zeta_d)`.
//!
//! A [`CycNum`] is `(a_0 + a_1 z + ... + a_{phi(d)-1} z^{phi(d)-1}) / den`
//! with `z = exp(2 pi i / d)`, reduced modulo the `d`-th cyclotomic
//! polynomial. The reduced form is canonical, so equality of two values
//! with the same conductor is field-by-field equality, and a value is
//! rational exactly when every coefficient past `a_0` vanishes.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{usage, Result};

fn overflow() -> ! {
    panic!("cyclotomic coefficient overflow (64-bit range exceeded)")
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the `d`-th cyclotomic polynomial,
/// from `x^d - 1 = prod_{k | d} Phi_k(x)`.
pub fn cyclotomic_polynomial(d: u64) -> Arc<Vec<i128>> {
    assert!(d >= 1, "cyclotomic polynomial of index 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut num = vec![0i128; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for k in 1..d {
        if d.is_multiple_of(k) {
            let divisor = cyclotomic_polynomial(k);
            num = divide_monic(&num, &divisor);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(d, p.clone());
    p
}

/// Exact quotient of `num` by a monic `den` (the remainder must vanish).
fn divide_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dd] = c;
            for (t, &dc) in den.iter().enumerate() {
                rem[i - dd + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(d: u64) -> u64 {
    (1..=d).filter(|k| k.gcd(&d) == 1).count() as u64
}

/// An exact element of `Q(zeta_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<i64>,
    den: i64,
}

/// Result of [`CycNum::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycClass {
    Integer,
    RationalNonInteger,
    Irrational,
}

impl fmt::Display for CycClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycClass::Integer => "integer",
            CycClass::RationalNonInteger => "rational-non-integer",
            CycClass::Irrational => "irrational",
        })
    }
}

impl CycNum {
    /// Builds `(sum_k raw[k] z^k) / den` in `Q(zeta_d)`. Exponents are taken
    /// modulo `d`, so `raw` may have any length.
    pub fn from_raw(conductor: u64, raw: &[i64], den: i64) -> Result<CycNum> {
        let wide: Vec<i128> = raw.iter().map(|&c| c as i128).collect();
        CycNum::from_wide(conductor, &wide, den as i128)
    }

    fn from_wide(conductor: u64, raw: &[i128], den: i128) -> Result<CycNum> {
        if conductor == 0 {
            return usage("conductor must be positive");
        }
        if den == 0 {
            return usage("zero denominator");
        }
        let d = conductor as usize;
        let mut folded = vec![0i128; d];
        for (k, &c) in raw.iter().enumerate() {
            folded[k % d] = folded[k % d].checked_add(c).unwrap_or_else(|| overflow());
        }
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for i in (deg..d).rev() {
            let c = folded[i];
            if c != 0 {
                for (t, &pc) in phi.iter().enumerate() {
                    let delta = c.checked_mul(pc).unwrap_or_else(|| overflow());
                    folded[i - deg + t] = folded[i - deg + t].checked_sub(delta).unwrap_or_else(|| overflow());
                }
            }
        }
        folded.truncate(deg);
        let sign = if den < 0 { -1 } else { 1 };
        let mut den = den * sign;
        let mut g = den;
        for c in folded.iter_mut() {
            *c *= sign;
            g = g.gcd(c);
        }
        if g > 1 {
            den /= g;
            folded.iter_mut().for_each(|c| *c /= g);
        }
        let coeffs = folded.into_iter().map(|c| i64::try_from(c).unwrap_or_else(|_| overflow())).collect();
        let den = i64::try_from(den).unwrap_or_else(|_| overflow());
        Ok(CycNum { conductor, coeffs, den })
    }

    pub fn zero(conductor: u64) -> CycNum {
        CycNum::from_raw(conductor, &[], 1).expect("positive conductor")
    }

    pub fn rational(conductor: u64, num: i64, den: i64) -> Result<CycNum> {
        CycNum::from_raw(conductor, &[num], den)
    }

    pub fn integer(conductor: u64, value: i64) -> CycNum {
        CycNum::from_raw(conductor, &[value], 1).expect("positive conductor")
    }

    /// `zeta_d^k`.
    pub fn root_of_unity(conductor: u64, k: i64) -> CycNum {
        let d = conductor as i64;
        let mut raw = vec![0i64; conductor as usize];
        raw[k.rem_euclid(d) as usize] = 1;
        CycNum::from_raw(conductor, &raw, 1).expect("positive conductor")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Numerator coefficients over `z^0..z^{phi(d)-1}`.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// `(numerator, denominator)` in lowest terms when rational.
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        self.is_rational().then(|| (self.coeffs.first().copied().unwrap_or(0), self.den))
    }

    pub fn classify(&self) -> CycClass {
        match self.as_rational() {
            Some((_, 1)) => CycClass::Integer,
            Some(_) => CycClass::RationalNonInteger,
            None => CycClass::Irrational,
        }
    }

    /// Same value in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Result<CycNum> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return usage(format!("cannot lift conductor {} to {m}", self.conductor));
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![0i128; m as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c as i128;
        }
        CycNum::from_wide(m, &raw, self.den as i128)
    }

    fn align(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m).expect("lcm"), other.lift(m).expect("lcm"))
    }

    fn combine(&self, other: &CycNum, sign: i128) -> CycNum {
        let (a, b) = self.align(other);
        let l = a.den.lcm(&b.den) as i128;
        let (fa, fb) = (l / a.den as i128, l / b.den as i128);
        let raw: Vec<i128> =
            a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x as i128 * fa + sign * y as i128 * fb).collect();
        CycNum::from_wide(a.conductor, &raw, l).expect("valid operands")
    }

    /// Multiplies by the rational `num / den`.
    pub fn scale(&self, num: i64, den: i64) -> Result<CycNum> {
        let raw: Vec<i128> = self.coeffs.iter().map(|&c| c as i128 * num as i128).collect();
        CycNum::from_wide(self.conductor, &raw, self.den as i128 * den as i128)
    }

    /// Applies the automorphism `zeta_d -> zeta_d^q`.
    pub fn galois(&self, q: i64) -> Result<CycNum> {
        let d = self.conductor as i64;
        let q = q.rem_euclid(d);
        if (q as u64).gcd(&self.conductor) != 1 {
            return usage(format!("gcd({q}, {d}) != 1: not a Galois automorphism"));
        }
        let mut raw = vec![0i128; self.conductor as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            raw[(k as i64 * q % d) as usize] += c as i128;
        }
        CycNum::from_wide(self.conductor, &raw, self.den as i128)
    }

    /// Complex conjugate (`q = -1`).
    pub fn conjugate(&self) -> CycNum {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.combine(rhs, 1)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.combine(rhs, -1)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.scale(-1, 1).expect("nonzero denominator")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = self.align(rhs);
        let mut raw = vec![0i128; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                raw[i + j] = raw[i + j].checked_add(x as i128 * y as i128).unwrap_or_else(|| overflow());
            }
        }
        let den = (a.den as i128).checked_mul(b.den as i128).unwrap_or_else(|| overflow());
        CycNum::from_wide(a.conductor, &raw, den).expect("valid operands")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycNum {
    /// `a0 + a1*z + a2*z^2 (conductor d, /den)`, omitting zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match k {
                0 => format!("{}", c.abs()),
                1 => format!("{}*z", c.abs()),
                _ => format!("{}*z^{k}", c.abs()),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (conductor {}, /{})", self.conductor, self.den)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
