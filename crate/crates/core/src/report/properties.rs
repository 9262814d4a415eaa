//! Randomised invariant suites behind `verify-properties`.

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::constructions::random_subgroups;
use crate::error::Result;
use crate::group::{ElementId, Group};
use crate::indicator::{
    count_gn, divisors, galois_transport_check, is_fsz, is_fsz_n, unit_power_bijection_check, FszOptions,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    result: PropertyResult,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally { result: PropertyResult { name: name.into(), instances: 0, failures: 0, first_failure: None } }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.result.instances += 1;
        if !ok {
            self.result.failures += 1;
            if self.result.first_failure.is_none() {
                self.result.first_failure = Some(describe());
            }
        }
    }
}

fn pick<'a>(rng: &mut StdRng, groups: &'a [Group]) -> &'a Group {
    &groups[rng.gen_range(0..groups.len())]
}

fn element(rng: &mut StdRng, g: &Group) -> ElementId {
    ElementId(rng.gen_range(0..g.order() as u32))
}

fn commuting_pair(rng: &mut StdRng, g: &Group) -> (ElementId, ElementId) {
    let u = element(rng, g);
    let c = g.centralizer(&[u]).expect("valid element");
    (u, *c.choose(rng).expect("centralizer contains u"))
}

fn degree(rng: &mut StdRng, g: &Group) -> u64 {
    *divisors(g.exponent()).choose(rng).expect("nonempty")
}

/// Runs every suite with `samples` random instances each. The small-n suite
/// counts one instance per (group, n) and the FSZ+ suite one per group; both
/// walk the groups plus random subgroups of them.
pub fn run_suites(groups: &[Group], seed: u64, samples: usize) -> Result<Vec<PropertyResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut t = Tally::new("inversion-symmetry");
    for _ in 0..samples {
        let g = pick(&mut rng, groups);
        let (u, x) = commuting_pair(&mut rng, g);
        let n = degree(&mut rng, g);
        let (a, b) = (count_gn(g, u, x, n)?, count_gn(g, u, g.inverse(x), n)?);
        t.record(a == b, || format!("{}: u={u} g={x} n={n}: {a} vs {b}", g.name()));
    }
    out.push(t.result);

    let mut t = Tally::new("conjugation-equivariance");
    for _ in 0..samples {
        let g = pick(&mut rng, groups);
        let (u, x) = commuting_pair(&mut rng, g);
        let y = element(&mut rng, g);
        let n = degree(&mut rng, g);
        let a = count_gn(g, u, x, n)?;
        let b = count_gn(g, g.conjugate(u, y), g.conjugate(x, y), n)?;
        t.record(a == b, || format!("{}: u={u} g={x} x={y} n={n}: {a} vs {b}", g.name()));
    }
    out.push(t.result);

    let mut t = Tally::new("support-on-centralizer");
    for _ in 0..samples {
        let g = pick(&mut rng, groups);
        let (u, x) = (element(&mut rng, g), element(&mut rng, g));
        let n = degree(&mut rng, g);
        let c = count_gn(g, u, x, n)?;
        t.record(g.commutes(u, x) || c == 0, || format!("{}: u={u} g={x} n={n}: {c}", g.name()));
    }
    out.push(t.result);

    let mut t = Tally::new("galois-set-identity");
    for _ in 0..samples {
        let g = pick(&mut rng, groups);
        let u = element(&mut rng, g);
        let n = rng.gen_range(1..=3 * g.exponent());
        let ok = galois_transport_check(g, u, n)?;
        t.record(ok, || format!("{}: u={u} n={n}", g.name()));
    }
    out.push(t.result);

    let mut t = Tally::new("unit-power-bijection");
    while t.result.instances < samples {
        let g = pick(&mut rng, groups);
        let (u, x) = commuting_pair(&mut rng, g);
        let n = degree(&mut rng, g);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let m = sign + rng.gen_range(0..6i64) * n as i64;
        if m.unsigned_abs().gcd(&(g.order() as u64)) != 1 {
            continue;
        }
        let ok = unit_power_bijection_check(g, u, x, n, m)?;
        t.record(ok, || format!("{}: u={u} g={x} n={n} m={m}", g.name()));
    }
    out.push(t.result);

    let mut t = Tally::new("direct-product-multiplicativity");
    let small: Vec<&Group> = groups.iter().filter(|g| g.order() <= 40).collect();
    let mut products = Vec::new();
    for _ in 0..8 {
        let a = small.choose(&mut rng).copied().unwrap_or(&groups[0]);
        let b = small.choose(&mut rng).copied().unwrap_or(&groups[0]);
        products.push((a.clone(), b.clone(), Group::direct_product(a, b)?));
    }
    for _ in 0..samples {
        let (a, b, p) = products.choose(&mut rng).expect("nonempty");
        let (u1, g1) = commuting_pair(&mut rng, a);
        let (u2, g2) = commuting_pair(&mut rng, b);
        let n = degree(&mut rng, p);
        let lhs = count_gn(p, p.pair(u1, u2).expect("product"), p.pair(g1, g2).expect("product"), n)?;
        let rhs = count_gn(a, u1, g1, n)? * count_gn(b, u2, g2, n)?;
        t.record(lhs == rhs, || format!("{}: n={n}: {lhs} vs {rhs}", p.name()));
    }
    out.push(t.result);

    let mut pool: Vec<Group> = groups.to_vec();
    while pool.len() < samples.min(5 * groups.len()).max(groups.len()) {
        match random_subgroups(groups, 1, rng.gen()) {
            Ok(extra) => pool.extend(extra),
            Err(_) => break,
        }
    }

    let mut t = Tally::new("small-n-universality");
    let opts = FszOptions { reductions: false, ..FszOptions::default() };
    'outer: for g in pool.iter().cycle().take(samples.max(1) * 5) {
        for n in [1u64, 2, 3, 4, 6] {
            let v = is_fsz_n(g, n, &opts)?;
            t.record(v.passed(), || format!("{}: n={n}", g.name()));
            if t.result.instances >= samples {
                break 'outer;
            }
        }
    }
    out.push(t.result);

    let mut t = Tally::new("fsz-plus-implies-fsz");
    let opts = FszOptions::default();
    for g in pool.iter().cycle().take(samples) {
        let plus = is_fsz(g, true, &opts)?.passed();
        let plain = is_fsz(g, false, &opts)?.passed();
        t.record(!plus || plain, || g.name().to_string());
    }
    out.push(t.result);

    Ok(out)
}
