//! Builders for the standard group families, and the test corpus.

mod gf;

use std::fmt;
use std::path::Path;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{usage, FszError, Result};
use crate::group::{Group, PcPresentation, SIZE_CAP};

pub use gf::{GaloisField, GfElement};

/// A named group family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum FamilySpec {
    Cyclic {
        n: u32,
    },
    /// Direct product of cyclic groups of the given orders.
    Abelian {
        factors: Vec<u32>,
    },
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral {
        n: u32,
    },
    Symmetric {
        n: u32,
    },
    Alternating {
        n: u32,
    },
    /// Unitriangular 3x3 matrices over `GF(p)`, `p` odd.
    Heisenberg {
        p: u32,
    },
    /// `base wr Z_r` (the base acting on its natural points, or regularly).
    WreathCyclic {
        base: Box<FamilySpec>,
        r: u32,
    },
    Psl2 {
        q: u32,
    },
    Product {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
    },
}

const FAMILY_HELP: &str = "families: cyclic N | abelian N1,N2,.. | dihedral N | symmetric N | \
alternating N | heisenberg P | wreath <base family> R | psl2 Q | product <family> <family>";

fn parse_u32(tok: Option<&str>, what: &str) -> Result<u32> {
    let tok = tok.ok_or_else(|| FszError::Usage(format!("missing {what}; {FAMILY_HELP}")))?;
    tok.parse().map_err(|_| FszError::Usage(format!("expected a positive integer for {what}, got '{tok}'")))
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factorization(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FamilySpec {
    /// Parses whitespace-separated tokens such as `wreath cyclic 3 3`.
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<FamilySpec> {
        let flat: Vec<&str> = tokens.iter().flat_map(|t| t.as_ref().split_whitespace()).collect();
        let mut it = flat.into_iter();
        let spec = FamilySpec::parse_from(&mut it)?;
        if let Some(extra) = it.next() {
            return usage(format!("unexpected token '{extra}' after family {spec}"));
        }
        Ok(spec)
    }

    fn parse_from<'a>(it: &mut impl Iterator<Item = &'a str>) -> Result<FamilySpec> {
        let name = it.next().ok_or_else(|| FszError::Usage(format!("missing family; {FAMILY_HELP}")))?;
        let spec = match name.to_ascii_lowercase().as_str() {
            "cyclic" => FamilySpec::Cyclic { n: parse_u32(it.next(), "cyclic order")? },
            "abelian" => {
                let list = it.next().ok_or_else(|| FszError::Usage("abelian needs N1,N2,..".into()))?;
                let factors =
                    list.split(',').map(|t| parse_u32(Some(t), "abelian factor")).collect::<Result<Vec<_>>>()?;
                FamilySpec::Abelian { factors }
            }
            "dihedral" => FamilySpec::Dihedral { n: parse_u32(it.next(), "dihedral n")? },
            "symmetric" => FamilySpec::Symmetric { n: parse_u32(it.next(), "symmetric degree")? },
            "alternating" => FamilySpec::Alternating { n: parse_u32(it.next(), "alternating degree")? },
            "heisenberg" => FamilySpec::Heisenberg { p: parse_u32(it.next(), "heisenberg prime")? },
            "psl2" => FamilySpec::Psl2 { q: parse_u32(it.next(), "psl2 field order")? },
            "wreath" => {
                let base = Box::new(FamilySpec::parse_from(it)?);
                FamilySpec::WreathCyclic { base, r: parse_u32(it.next(), "wreath r")? }
            }
            "product" => {
                let left = Box::new(FamilySpec::parse_from(it)?);
                let right = Box::new(FamilySpec::parse_from(it)?);
                FamilySpec::Product { left, right }
            }
            other => return usage(format!("unknown family '{other}'; {FAMILY_HELP}")),
        };
        Ok(spec)
    }

    /// Order of the group the spec describes, without building it.
    pub fn order(&self) -> u128 {
        let fact = |n: u32| (1..=n as u128).product::<u128>();
        match self {
            FamilySpec::Cyclic { n } => *n as u128,
            FamilySpec::Abelian { factors } => factors.iter().map(|&f| f as u128).product(),
            FamilySpec::Dihedral { n } => 2 * *n as u128,
            FamilySpec::Symmetric { n } => fact(*n),
            FamilySpec::Alternating { n } => (fact(*n) / 2).max(1),
            FamilySpec::Heisenberg { p } => (*p as u128).pow(3),
            FamilySpec::WreathCyclic { base, r } => {
                let b = base.order();
                b.checked_pow(*r).and_then(|x| x.checked_mul(*r as u128)).unwrap_or(u128::MAX)
            }
            FamilySpec::Psl2 { q } => {
                let q = *q as u128;
                q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
            }
            FamilySpec::Product { left, right } => left.order().saturating_mul(right.order()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic { n } => write!(f, "cyclic {n}"),
            FamilySpec::Abelian { factors } => {
                let list: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
                write!(f, "abelian {}", list.join(","))
            }
            FamilySpec::Dihedral { n } => write!(f, "dihedral {n}"),
            FamilySpec::Symmetric { n } => write!(f, "symmetric {n}"),
            FamilySpec::Alternating { n } => write!(f, "alternating {n}"),
            FamilySpec::Heisenberg { p } => write!(f, "heisenberg {p}"),
            FamilySpec::WreathCyclic { base, r } => write!(f, "wreath {base} {r}"),
            FamilySpec::Psl2 { q } => write!(f, "psl2 {q}"),
            FamilySpec::Product { left, right } => write!(f, "product {left} {right}"),
        }
    }
}

/// Builds the group described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<Group> {
    let order = spec.order();
    if order > SIZE_CAP as u128 {
        return Err(FszError::CapExceeded { order, cap: SIZE_CAP });
    }
    let name = spec.to_string();
    let positive = |n: u32, what: &str| -> Result<()> {
        if n == 0 {
            usage(format!("{what} must be positive"))
        } else {
            Ok(())
        }
    };
    match spec {
        FamilySpec::Cyclic { n } => {
            positive(*n, "cyclic order")?;
            abelian_pc(name, &[*n])
        }
        FamilySpec::Abelian { factors } => {
            for &f in factors {
                positive(f, "abelian factor")?;
            }
            abelian_pc(name, factors)
        }
        FamilySpec::Dihedral { n } => dihedral(name, *n),
        FamilySpec::Symmetric { n } => {
            positive(*n, "symmetric degree")?;
            let n = *n as usize;
            let mut gens = Vec::new();
            if n >= 2 {
                let mut t: Vec<u32> = (0..n as u32).collect();
                t.swap(0, 1);
                gens.push(t);
                gens.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
            }
            Group::from_permutations(name, n, &gens)
        }
        FamilySpec::Alternating { n } => {
            positive(*n, "alternating degree")?;
            let n = *n as usize;
            // 3-cycles (1 2 k)
            let gens: Vec<Vec<u32>> = (2..n)
                .map(|k| {
                    let mut c: Vec<u32> = (0..n as u32).collect();
                    c[0] = 1;
                    c[1] = k as u32;
                    c[k] = 0;
                    c
                })
                .collect();
            Group::from_permutations(name, n, &gens)
        }
        FamilySpec::Heisenberg { p } => {
            if !is_prime(*p) || *p == 2 {
                return usage(format!("heisenberg needs an odd prime, got {p} (for p = 2 use dihedral 4)"));
            }
            let mut pres = PcPresentation::new(vec![*p; 3]);
            pres.set_commutator(1, 0, vec![0, 0, 1]);
            Group::from_pc_presentation(name, pres)
        }
        FamilySpec::WreathCyclic { base, r } => {
            let b = build_family(base)?;
            build_wreath_cyclic_named(name, &b, *r)
        }
        FamilySpec::Psl2 { q } => build_psl2(*q),
        FamilySpec::Product { left, right } => {
            let (a, b) = (build_family(left)?, build_family(right)?);
            Group::direct_product_named(name, &a, &b)
        }
    }
}

/// Power-chain presentation of a product of cyclic groups.
fn abelian_pc(name: String, factors: &[u32]) -> Result<Group> {
    let chains: Vec<Vec<u32>> = factors.iter().map(|&f| prime_factorization(f)).collect();
    let rel: Vec<u32> = chains.iter().flatten().copied().collect();
    if rel.is_empty() {
        return Group::from_permutations(name, 1, &[]);
    }
    let k = rel.len();
    let mut pres = PcPresentation::new(rel);
    let mut offset = 0;
    for chain in &chains {
        for i in 0..chain.len().saturating_sub(1) {
            let mut w = vec![0; k];
            w[offset + i + 1] = 1;
            pres.set_power(offset + i, w);
        }
        offset += chain.len();
    }
    Group::from_pc_presentation(name, pres)
}

fn dihedral(name: String, n: u32) -> Result<Group> {
    match n {
        0 => usage("dihedral n must be positive"),
        1 => Group::from_permutations(name, 2, &[vec![1, 0]]),
        2 => Group::from_permutations(name, 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        _ => {
            let rot: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
            let refl: Vec<u32> = (0..n).map(|i| (n - i) % n).collect();
            Group::from_permutations(name, n as usize, &[rot, refl])
        }
    }
}

/// `base wr Z_r` acting imprimitively on `r` blocks, each a copy of the
/// base's points. Point `(block b, point c)` is `b * m + c`; the block cycle
/// sends block `b` to `b + 1`. A base without a natural permutation
/// representation acts regularly.
pub fn build_wreath_cyclic(base: &Group, r: u32) -> Result<Group> {
    build_wreath_cyclic_named(format!("{} wr C{r}", base.name()), base, r)
}

fn build_wreath_cyclic_named(name: String, base: &Group, r: u32) -> Result<Group> {
    if r == 0 {
        return usage("wreath r must be positive");
    }
    let order = (base.order() as u128).checked_pow(r).and_then(|x| x.checked_mul(r as u128));
    match order {
        Some(o) if o <= SIZE_CAP as u128 => {}
        _ => return Err(FszError::CapExceeded { order: order.unwrap_or(u128::MAX), cap: SIZE_CAP }),
    }
    let base_perms: Vec<Vec<u32>> = match base.permutation_degree() {
        Some(_) => base.generators().iter().map(|&s| base.permutation_of(s).expect("perm")).collect(),
        None => base.generators().iter().map(|&s| base.regular_permutation(s)).collect(),
    };
    let m = base.permutation_degree().unwrap_or(base.order()) as u32;
    let degree = (m * r) as usize;
    let mut gens = Vec::new();
    for s in &base_perms {
        let mut g: Vec<u32> = (0..degree as u32).collect();
        for c in 0..m {
            g[c as usize] = s[c as usize];
        }
        gens.push(g);
    }
    if r > 1 {
        gens.push((0..degree as u32).map(|x| (x + m) % (m * r)).collect());
    }
    Group::from_permutations(name, degree, &gens)
}

/// `PSL(2, q)` acting on the projective line; points `0..q` are `[x : 1]`
/// and point `q` is `[1 : 0]`.
pub fn build_psl2(q: u32) -> Result<Group> {
    if ![2, 3, 4, 5, 7, 8, 9, 11, 13].contains(&q) {
        return usage(format!("psl2 supports q in {{2,3,4,5,7,8,9,11,13}}, got {q}"));
    }
    let f = GaloisField::new(q)?;
    let point = |x: GfElement, y: GfElement| -> u32 {
        if y == f.zero() {
            q
        } else {
            f.mul(x, f.inv(y).expect("nonzero")).0
        }
    };
    // Row vector (x, y) times [[a, b], [c, d]].
    let act = |m: [GfElement; 4]| -> Vec<u32> {
        let [a, b, c, d] = m;
        (0..=q)
            .map(|pt| {
                let (x, y) = if pt == q { (f.one(), f.zero()) } else { (GfElement(pt), f.one()) };
                point(f.add(f.mul(x, a), f.mul(y, c)), f.add(f.mul(x, b), f.mul(y, d)))
            })
            .collect()
    };
    let (zero, one) = (f.zero(), f.one());
    let mut gens: Vec<Vec<u32>> = f.basis().into_iter().map(|t| act([one, t, zero, one])).collect();
    gens.push(act([zero, one, f.neg(one), zero]));
    let g = Group::from_permutations(format!("psl2 {q}"), q as usize + 1, &gens)?;
    let expected = FamilySpec::Psl2 { q }.order() as usize;
    if g.order() != expected {
        return Err(FszError::Structural(format!(
            "PSL(2,{q}) generated a group of order {}, expected {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// Reads a group file (see [`crate::io`] for the formats).
pub fn load_group(path: impl AsRef<Path>) -> Result<Group> {
    crate::io::load_group(path)
}

/// Family instances of order at most 200 used as the standard test corpus.
pub fn catalog() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    let c = |n| FamilySpec::Cyclic { n };
    for n in (1..=12).chain([16, 25, 27, 30]) {
        specs.push(c(n));
    }
    for factors in [vec![2, 2], vec![2, 4], vec![2, 2, 2], vec![3, 3], vec![2, 6], vec![5, 5], vec![3, 9]] {
        specs.push(FamilySpec::Abelian { factors });
    }
    for n in (1..=12).chain([15, 16, 20]) {
        specs.push(FamilySpec::Dihedral { n });
    }
    for n in 1..=5 {
        specs.push(FamilySpec::Symmetric { n });
    }
    for n in 3..=5 {
        specs.push(FamilySpec::Alternating { n });
    }
    for p in [3, 5] {
        specs.push(FamilySpec::Heisenberg { p });
    }
    for q in [2, 3, 4, 5, 7] {
        specs.push(FamilySpec::Psl2 { q });
    }
    let wr = |base: FamilySpec, r| FamilySpec::WreathCyclic { base: Box::new(base), r };
    specs.push(wr(c(2), 2));
    specs.push(wr(c(2), 3));
    specs.push(wr(c(3), 2));
    specs.push(wr(c(3), 3));
    specs.push(wr(c(4), 2));
    specs.push(wr(FamilySpec::Symmetric { n: 3 }, 2));
    let prod = |a: FamilySpec, b: FamilySpec| FamilySpec::Product { left: Box::new(a), right: Box::new(b) };
    specs.push(prod(FamilySpec::Symmetric { n: 3 }, c(2)));
    specs.push(prod(FamilySpec::Alternating { n: 4 }, c(3)));
    specs.push(prod(FamilySpec::Heisenberg { p: 3 }, c(2)));
    specs.push(prod(FamilySpec::Dihedral { n: 4 }, FamilySpec::Symmetric { n: 3 }));
    specs.push(prod(FamilySpec::Dihedral { n: 5 }, FamilySpec::Dihedral { n: 3 }));
    specs
}

/// `count` subgroups of corpus groups, each generated by one or two random
/// elements, proper and nontrivial.
pub fn random_subgroups(groups: &[Group], count: usize, seed: u64) -> Result<Vec<Group>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let hosts: Vec<&Group> = groups.iter().filter(|g| g.order() >= 8 && !g.is_abelian()).collect();
    if hosts.is_empty() {
        return usage("no nonabelian host groups of order at least 8");
    }
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            return Err(FszError::Structural("could not find enough proper subgroups".into()));
        }
        let host = hosts[rng.gen_range(0..hosts.len())];
        let k = rng.gen_range(1..=2);
        let gens: Vec<_> = (0..k).map(|_| crate::group::ElementId(rng.gen_range(0..host.order() as u32))).collect();
        let members = host.generated_subgroup(&gens)?;
        if members.len() <= 1 || members.len() == host.order() {
            continue;
        }
        let label: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        out.push(host.as_group_named(format!("<{}> in {}", label.join(","), host.name()), &members)?);
    }
    Ok(out)
}

/// Every catalog group followed by 20 random subgroups (fixed seed).
pub fn corpus() -> Result<Vec<Group>> {
    let mut groups = catalog().iter().map(build_family).collect::<Result<Vec<_>>>()?;
    let subs = random_subgroups(&groups, 20, 0xC0_FFEE)?;
    groups.extend(subs);
    Ok(groups)
}
