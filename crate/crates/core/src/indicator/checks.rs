//! Structural identities behind the reductions, checked by enumeration.

use num_integer::Integer;

use super::{abelian_centralizer_indicators, positive, power_map};
use crate::error::{usage, FszError, Result};
use crate::group::{ElementId, Group};

/// Membership mask of `G_n(u) = { a : a^n = (a u^-1)^n }`.
fn gn_mask(grp: &Group, u: ElementId, pw: &[ElementId]) -> Vec<bool> {
    let u_inv = grp.inverse(u);
    grp.elements().map(|a| pw[a.index()] == pw[grp.mul(a, u_inv).index()]).collect()
}

/// Whether `G_n(u)` is closed under every power map `a -> a^m` with
/// `gcd(m, |G|) = 1`. Only `m mod o(a)` matters, and every unit mod `o(a)`
/// lifts to a unit mod `|G|`.
pub fn power_map_closure_check(grp: &Group, u: ElementId, n: u64) -> Result<bool> {
    positive(n)?;
    grp.checked_inverse(u)?;
    let mask = gn_mask(grp, u, &power_map(grp, n));
    for a in grp.elements().filter(|a| mask[a.index()]) {
        let o = grp.element_order(a);
        let mut x = ElementId::IDENTITY;
        for m in 0..o {
            if m.gcd(&o) == 1 && !mask[x.index()] {
                return Ok(false);
            }
            x = grp.mul(x, a);
        }
    }
    Ok(true)
}

/// For `m = 1 (mod n)` checks that `a -> a^m` maps `G_n(u, g)` bijectively
/// onto `G_n(u, g^m)`; for `m = -1 (mod n)` the map is `a -> (u a^-1)^(-m)`.
pub fn unit_power_bijection_check(grp: &Group, u: ElementId, g: ElementId, n: u64, m: i64) -> Result<bool> {
    positive(n)?;
    grp.checked_inverse(u)?;
    grp.checked_inverse(g)?;
    if !grp.commutes(u, g) {
        return usage("u and g must commute");
    }
    if m.unsigned_abs().gcd(&(grp.order() as u64)) != 1 {
        return usage(format!("gcd({m}, |G|) != 1"));
    }
    let r = m.rem_euclid(n as i64) as u64;
    let plus_one = r == 1 % n;
    let minus_one = r == (n - 1) % n;
    if !plus_one && !minus_one {
        return usage(format!("{m} is not congruent to 1 or -1 mod {n}"));
    }
    let pw = power_map(grp, n);
    let u_inv = grp.inverse(u);
    let in_set = |a: ElementId, target: ElementId| pw[a.index()] == target && pw[grp.mul(a, u_inv).index()] == target;
    let gm = grp.power(g, m);
    let source: Vec<ElementId> = grp.elements().filter(|&a| in_set(a, g)).collect();
    let target_size = grp.elements().filter(|&a| in_set(a, gm)).count();
    let image = |a: ElementId| {
        if plus_one {
            grp.power(a, m)
        } else {
            grp.power(grp.mul(u, grp.inverse(a)), -m)
        }
    };
    let mut hit = vec![false; grp.order()];
    for a in source.iter().map(|&a| image(a)) {
        if !in_set(a, gm) || hit[a.index()] {
            return Ok(false);
        }
        hit[a.index()] = true;
    }
    Ok(source.len() == target_size)
}

/// Checks `G_n(u) = G_d(u)` for `d = gcd(n, e)` and, when `C(u)` is
/// abelian, `nu_n = sigma(nu_d)` label by label, where `sigma` is
/// `zeta -> zeta^q'` for a unit `q' = n/d (mod e/d)`.
pub fn galois_transport_check(grp: &Group, u: ElementId, n: u64) -> Result<bool> {
    positive(n)?;
    grp.checked_inverse(u)?;
    let e = grp.exponent();
    let d = n.gcd(&e);
    if gn_mask(grp, u, &power_map(grp, n)) != gn_mask(grp, u, &power_map(grp, d)) {
        return Ok(false);
    }
    let nu_n = match abelian_centralizer_indicators(grp, u, n) {
        Ok(v) => v,
        Err(FszError::Unsupported(_)) => return Ok(true),
        Err(err) => return Err(err),
    };
    let nu_d = abelian_centralizer_indicators(grp, u, d)?;
    let q = n / d;
    let step = e / d;
    let lift = (0..e)
        .map(|t| q + t * step)
        .find(|x| x.gcd(&e) == 1)
        .ok_or_else(|| FszError::Structural(format!("no unit lift of {q} mod {step}")))?;
    for (a, b) in nu_n.iter().zip(&nu_d) {
        if a.label != b.label || a.value != b.value.galois(lift as i64)? {
            return Ok(false);
        }
    }
    Ok(true)
}
