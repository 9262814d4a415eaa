//! Counting `G_n(u, g)` and deciding FSZ_n, FSZ and FSZ+.

mod checks;
mod values;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{usage, FszError, Result};
use crate::group::{ElementId, Group};

pub use checks::{galois_transport_check, power_map_closure_check, unit_power_bijection_check};
pub use values::{
    abelian_centralizer_indicators, cyclic_restriction_from_table, cyclic_restriction_indicator, CharacterValue,
};

fn positive(n: u64) -> Result<()> {
    if n == 0 {
        usage("degree n must be positive")
    } else {
        Ok(())
    }
}

/// `a -> a^n` for every element, indexed by element.
pub fn power_map(g: &Group, n: u64) -> Vec<ElementId> {
    let e = g.exponent();
    let k = (n % e) as i64;
    g.elements().map(|a| g.power(a, k)).collect()
}

/// `|{ a in G : a^n = (a u^-1)^n = g }|`, searching only `C(g)`, which
/// contains every solution.
pub fn count_gn(grp: &Group, u: ElementId, g: ElementId, n: u64) -> Result<u64> {
    positive(n)?;
    grp.checked_inverse(u)?;
    grp.checked_inverse(g)?;
    if !grp.commutes(u, g) {
        return Ok(0);
    }
    let u_inv = grp.inverse(u);
    let k = n as i64;
    let count = grp
        .centralizer(&[g])?
        .into_iter()
        .filter(|&a| grp.power(a, k) == g && grp.power(grp.mul(a, u_inv), k) == g)
        .count();
    Ok(count as u64)
}

/// The class function `g -> |G_n(u, g)|` on `C(u)`.
#[derive(Clone, Debug)]
pub struct ZetaTable {
    pub u: ElementId,
    pub n: u64,
    /// `C(u)`, sorted.
    pub centralizer: Vec<ElementId>,
    counts: Vec<u64>,
}

impl ZetaTable {
    /// `|G_n(u, g)|`; zero off `C(u)`.
    pub fn count(&self, g: ElementId) -> u64 {
        self.counts.get(g.index()).copied().unwrap_or(0)
    }

    /// `(g, |G_n(u, g)|)` over `C(u)`.
    pub fn entries(&self) -> impl Iterator<Item = (ElementId, u64)> + '_ {
        self.centralizer.iter().map(|&g| (g, self.counts[g.index()]))
    }

    /// `|G_n(u)|`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl Serialize for ZetaTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<(ElementId, u64)> = self.entries().collect();
        let mut st = s.serialize_struct("ZetaTable", 4)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("total", &self.total())?;
        st.serialize_field("counts", &entries)?;
        st.end()
    }
}

/// Bucket pass: one multiplication per element of `G`, all `n`-th powers
/// looked up in `pw`.
fn fill_counts(grp: &Group, u: ElementId, pw: &[ElementId]) -> Vec<u64> {
    let u_inv = grp.inverse(u);
    let mut counts = vec![0u64; grp.order()];
    for a in grp.elements() {
        let x = pw[a.index()];
        if pw[grp.mul(a, u_inv).index()] == x {
            counts[x.index()] += 1;
        }
    }
    counts
}

pub fn zeta_table(grp: &Group, u: ElementId, n: u64) -> Result<ZetaTable> {
    positive(n)?;
    let centralizer = grp.centralizer(&[u])?;
    let pw = power_map(grp, n);
    Ok(ZetaTable { u, n, centralizer, counts: fill_counts(grp, u, &pw) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    /// Every divisor of the exponent.
    Full,
    /// Divisors of the exponent other than 1, 2, 3, 4, 6 and the exponent.
    Reduced,
}

pub fn divisors(e: u64) -> Vec<u64> {
    (1..=e).filter(|d| e.is_multiple_of(*d)).collect()
}

pub fn relevant_degrees(grp: &Group, mode: DegreeMode) -> Vec<u64> {
    let e = grp.exponent();
    let all = divisors(e);
    match mode {
        DegreeMode::Full => all,
        DegreeMode::Reduced => all.into_iter().filter(|&d| ![1, 2, 3, 4, 6].contains(&d) && d != e).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sufficiency {
    /// `gcd(o(a^n), n)` lies in {1, 2, 3, 4, 6} for every `a`.
    Certified,
    Inconclusive,
}

pub fn sufficient_by_orders(grp: &Group, n: u64) -> Result<Sufficiency> {
    positive(n)?;
    let ok = grp.elements().all(|a| {
        let o = grp.element_order(a);
        let ratio = (o / o.gcd(&n)).gcd(&n);
        [1, 2, 3, 4, 6].contains(&ratio)
    });
    Ok(if ok { Sufficiency::Certified } else { Sufficiency::Inconclusive })
}

/// One violated instance `|G_n(u, g)| != |G_n(u, g^m)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: u64,
    /// In FSZ+ mode: class index (in the ambient group) of the `h` whose
    /// centralizer failed. `u_class` then indexes classes of `C(h)`.
    pub centralizer_of: Option<usize>,
    pub h: Option<ElementId>,
    pub u: ElementId,
    pub u_class: usize,
    pub u_order: u64,
    pub u_class_size: usize,
    pub g: ElementId,
    pub g_order: u64,
    pub m: u64,
    pub count_g: u64,
    pub count_gm: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct FszVerdict {
    pub group: String,
    pub order: usize,
    pub exponent: u64,
    pub plus: bool,
    pub degrees: Vec<u64>,
    pub verdicts: BTreeMap<u64, DegreeStatus>,
    /// Degrees passed by the element-order criterion without counting.
    pub certified: Vec<u64>,
    pub witnesses: Vec<Witness>,
    /// Distinct centralizer subgroups tested (FSZ+ mode).
    pub centralizers_tested: usize,
}

impl FszVerdict {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&s| s == DegreeStatus::Pass)
    }

    fn empty(grp: &Group, plus: bool) -> FszVerdict {
        FszVerdict {
            group: grp.name().to_string(),
            order: grp.order(),
            exponent: grp.exponent(),
            plus,
            degrees: Vec::new(),
            verdicts: BTreeMap::new(),
            certified: Vec::new(),
            witnesses: Vec::new(),
            centralizers_tested: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FszOptions {
    /// Stop at the first witness.
    pub fail_fast: bool,
    /// Worker threads for the per-class jobs; 1 runs on the caller's thread.
    pub workers: usize,
    /// Use the reduced degree set and the element-order certificate.
    pub reductions: bool,
}

impl Default for FszOptions {
    fn default() -> Self {
        FszOptions { fail_fast: false, workers: 1, reductions: true }
    }
}

/// Witnesses of class `ci` at degree `n`: for each block
/// `{ g^m : gcd(m, o(g)) = 1 }` inside `C(u)`, every member whose count
/// differs from the leader's.
fn class_witnesses(grp: &Group, ci: usize, n: u64, pw: &[ElementId], fail_fast: bool) -> Vec<Witness> {
    let class = &grp.conjugacy_classes()[ci];
    let u = class.representative;
    let counts = fill_counts(grp, u, pw);
    let mut out = Vec::new();
    for block in &grp.rational_power_classes().blocks {
        if block.members.len() <= 1 || !grp.commutes(block.leader, u) {
            continue;
        }
        let base = counts[block.leader.index()];
        for &(x, m) in &block.members[1..] {
            let c = counts[x.index()];
            if c != base {
                out.push(Witness {
                    n,
                    centralizer_of: None,
                    h: None,
                    u,
                    u_class: ci,
                    u_order: grp.element_order(u),
                    u_class_size: class.size(),
                    g: block.leader,
                    g_order: block.order,
                    m,
                    count_g: base,
                    count_gm: c,
                });
                if fail_fast {
                    return out;
                }
            }
        }
    }
    out
}

fn run_jobs<T: Send>(workers: usize, jobs: usize, f: impl Fn(usize) -> T + Sync) -> Result<Vec<T>> {
    if workers <= 1 {
        return Ok((0..jobs).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| FszError::Usage(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..jobs).into_par_iter().map(&f).collect()))
}

/// Counting test at one degree. With `fail_fast`, only the lowest-index
/// failing class is reported (whatever the scheduling), with one witness.
fn count_degree(grp: &Group, n: u64, opts: &FszOptions) -> Result<Vec<Witness>> {
    let pw = power_map(grp, n);
    let classes = grp.conjugacy_classes().len();
    if opts.workers <= 1 {
        let mut out = Vec::new();
        for ci in 0..classes {
            let w = class_witnesses(grp, ci, n, &pw, opts.fail_fast);
            if opts.fail_fast && !w.is_empty() {
                return Ok(w);
            }
            out.extend(w);
        }
        return Ok(out);
    }
    let first_fail = AtomicUsize::new(usize::MAX);
    let per_class = run_jobs(opts.workers, classes, |ci| {
        if opts.fail_fast && first_fail.load(Ordering::Relaxed) < ci {
            return Vec::new();
        }
        let w = class_witnesses(grp, ci, n, &pw, opts.fail_fast);
        if !w.is_empty() {
            first_fail.fetch_min(ci, Ordering::Relaxed);
        }
        w
    })?;
    let mut out = Vec::new();
    for w in per_class {
        if opts.fail_fast && !w.is_empty() {
            return Ok(w);
        }
        out.extend(w);
    }
    Ok(out)
}

fn test_degrees(grp: &Group, degrees: &[u64], plus: bool, opts: &FszOptions) -> Result<FszVerdict> {
    let mut v = FszVerdict::empty(grp, plus);
    v.degrees = degrees.to_vec();
    for &n in degrees {
        positive(n)?;
        if opts.reductions && sufficient_by_orders(grp, n)? == Sufficiency::Certified {
            v.certified.push(n);
            v.verdicts.insert(n, DegreeStatus::Pass);
            continue;
        }
        let w = count_degree(grp, n, opts)?;
        let status = if w.is_empty() { DegreeStatus::Pass } else { DegreeStatus::Fail };
        v.verdicts.insert(n, status);
        let stop = opts.fail_fast && !w.is_empty();
        v.witnesses.extend(w);
        if stop {
            break;
        }
    }
    Ok(v)
}

/// FSZ_n by counting (the element-order certificate is used only when
/// `opts.reductions` is set).
pub fn is_fsz_n(grp: &Group, n: u64, opts: &FszOptions) -> Result<FszVerdict> {
    positive(n)?;
    test_degrees(grp, &[n], false, opts)
}

/// FSZ over the degrees picked by `opts.reductions`; with `plus`, FSZ of
/// the centralizer of every nonidentity class representative instead.
pub fn is_fsz(grp: &Group, plus: bool, opts: &FszOptions) -> Result<FszVerdict> {
    let mode = if opts.reductions { DegreeMode::Reduced } else { DegreeMode::Full };
    if !plus {
        return test_degrees(grp, &relevant_degrees(grp, mode), false, opts);
    }
    let mut v = FszVerdict::empty(grp, true);
    let mut degrees = BTreeSet::new();
    let mut certified: BTreeMap<u64, bool> = BTreeMap::new();
    let mut memo: HashMap<Vec<ElementId>, (Group, FszVerdict)> = HashMap::new();
    for (ci, class) in grp.conjugacy_classes().iter().enumerate().skip(1) {
        let h = class.representative;
        let members = grp.centralizer(&[h])?;
        if !memo.contains_key(&members) {
            let sub = grp.as_group_named(format!("C({h}) in {}", grp.name()), &members)?;
            let sv = test_degrees(&sub, &relevant_degrees(&sub, mode), false, opts)?;
            memo.insert(members.clone(), (sub, sv));
        }
        let (sub, sv) = &memo[&members];
        degrees.extend(sv.degrees.iter().copied());
        for &n in &sv.degrees {
            let all = certified.entry(n).or_insert(true);
            *all &= sv.certified.contains(&n);
        }
        for (&n, &s) in &sv.verdicts {
            let e = v.verdicts.entry(n).or_insert(DegreeStatus::Pass);
            if s == DegreeStatus::Fail {
                *e = DegreeStatus::Fail;
            }
        }
        for w in &sv.witnesses {
            v.witnesses.push(Witness {
                centralizer_of: Some(ci),
                h: Some(h),
                u: sub.embed(w.u).expect("subgroup element"),
                g: sub.embed(w.g).expect("subgroup element"),
                ..w.clone()
            });
        }
        if opts.fail_fast && !sv.passed() {
            break;
        }
    }
    v.centralizers_tested = memo.len();
    v.degrees = degrees.into_iter().collect();
    // certified only if every centralizer testing n certified it
    v.certified = certified.into_iter().filter(|&(_, all)| all).map(|(n, _)| n).collect();
    Ok(v)
}
