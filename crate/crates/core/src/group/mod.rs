//! Backend-agnostic finite groups with integer-indexed elements.
//!
//! A [`Group`] materialises its whole element set in a canonical order once,
//! at construction. Every later operation works on [`ElementId`]s, so the
//! counting loops of the indicator engine never touch backend encodings.

mod abelian;
mod classes;
pub(crate) mod pc;
pub(crate) mod perm;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{usage, FszError, Result};

pub use abelian::AbelianBasis;
pub use classes::{ConjClass, PowerClassPartition};
pub use pc::PcPresentation;

use classes::ClassData;
use pc::PcBackend;
use perm::PermBackend;

/// Upper bound on group orders accepted anywhere in the crate.
pub const SIZE_CAP: usize = 200_000;

/// Groups up to this order get a full Cayley table at construction.
const TABLE_LIMIT: usize = 1024;

/// Index into one group's canonical enumeration. Meaningless across groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) enum Backend {
    Permutation(PermBackend),
    Polycyclic(PcBackend),
    Table { n: usize, table: Vec<u32> },
    DirectProduct(Group, Group),
    Induced { parent: Group, members: Vec<ElementId>, position: Vec<u32> },
}

struct Inner {
    name: String,
    order: usize,
    backend: Backend,
    generators: Vec<ElementId>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    exponent: OnceLock<u64>,
    classes: OnceLock<ClassData>,
    power_classes: OnceLock<PowerClassPartition>,
}

/// A finite group. Cheap to clone (shared, immutable after construction);
/// all methods are safe to call from several threads at once.
///
/// Index 0 is always the identity.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("name", &self.0.name).field("order", &self.0.order).finish()
    }
}

impl Group {
    fn build(name: String, backend: Backend, generators: Vec<ElementId>) -> Result<Group> {
        let order = match &backend {
            Backend::Permutation(p) => p.order(),
            Backend::Polycyclic(p) => p.order(),
            Backend::Table { n, .. } => *n,
            Backend::DirectProduct(a, b) => a.order() * b.order(),
            Backend::Induced { members, .. } => members.len(),
        };
        if order > SIZE_CAP {
            return Err(FszError::CapExceeded { order: order as u128, cap: SIZE_CAP });
        }
        let mut inner = Inner {
            name,
            order,
            backend,
            generators,
            table: None,
            inverses: Vec::new(),
            orders: Vec::new(),
            exponent: OnceLock::new(),
            classes: OnceLock::new(),
            power_classes: OnceLock::new(),
        };
        if order <= TABLE_LIMIT && !matches!(inner.backend, Backend::Table { .. }) {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    table.push(backend_mul(&inner.backend, a, b));
                }
            }
            inner.table = Some(table);
        }
        let (orders, inverses) = match &inner.backend {
            Backend::Induced { parent, members, position } => {
                let orders = members.iter().map(|&m| parent.0.orders[m.index()]).collect();
                let inverses = members.iter().map(|&m| position[parent.0.inverses[m.index()] as usize]).collect();
                (orders, inverses)
            }
            _ => orders_and_inverses(&inner),
        };
        inner.orders = orders;
        inner.inverses = inverses;
        Ok(Group(Arc::new(inner)))
    }

    /// Permutation group on `degree` points generated by 0-based image lists.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<u32>]) -> Result<Group> {
        let (backend, ids) = PermBackend::from_generators(degree, gens)?;
        let gens = ids.into_iter().filter(|&i| i != 0).map(ElementId).collect();
        Group::build(name.into(), Backend::Permutation(backend), gens)
    }

    /// Group given by a consistent power-commutator presentation.
    pub fn from_pc_presentation(name: impl Into<String>, presentation: PcPresentation) -> Result<Group> {
        let backend = PcBackend::new(presentation)?;
        let gens = (0..backend.presentation.len()).map(|i| ElementId(backend.generator(i))).collect();
        Group::build(name.into(), Backend::Polycyclic(backend), gens)
    }

    /// Group given by a full multiplication table, `table[a * n + b] = ab`.
    /// Index 0 must be the identity; the group axioms are verified.
    pub fn from_cayley_table(name: impl Into<String>, n: usize, table: Vec<u32>) -> Result<Group> {
        if n == 0 || table.len() != n * n {
            return Err(FszError::Structural(format!("a Cayley table of order {n} needs {} entries", n * n)));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(FszError::Structural("table entry out of range".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(FszError::Structural("index 0 is not an identity".into()));
            }
            let mut row = vec![false; n];
            for b in 0..n {
                row[table[a * n + b] as usize] = true;
            }
            if row.iter().any(|&r| !r) {
                return Err(FszError::Structural(format!("row {a} is not a permutation")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(FszError::Structural("table is not associative".into()));
                    }
                }
            }
        }
        let name = name.into();
        let provisional = Group::build(name.clone(), Backend::Table { n, table: table.clone() }, Vec::new())?;
        let gens = provisional.minimal_generating_set(&provisional.all_elements())?;
        Group::build(name, Backend::Table { n, table }, gens)
    }

    /// The trivial group (index 0 only).
    pub fn trivial() -> Group {
        Group::from_permutations("1", 1, &[]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.0.generators
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + '_ {
        (0..self.0.order as u32).map(ElementId)
    }

    pub fn all_elements(&self) -> Vec<ElementId> {
        self.elements().collect()
    }

    pub fn contains(&self, a: ElementId) -> bool {
        a.index() < self.0.order
    }

    fn check(&self, a: ElementId) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            usage(format!("element index {a} out of range for a group of order {}", self.0.order))
        }
    }

    /// Product `ab`. Panics if an index is out of range; see
    /// [`Group::checked_multiply`].
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        let n = self.0.order;
        match &self.0.table {
            Some(t) => ElementId(t[a.index() * n + b.index()]),
            None => {
                assert!(a.index() < n && b.index() < n, "element index out of range");
                ElementId(backend_mul(&self.0.backend, a.0, b.0))
            }
        }
    }

    pub fn checked_multiply(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        ElementId(self.0.inverses[a.index()])
    }

    pub fn checked_inverse(&self, a: ElementId) -> Result<ElementId> {
        self.check(a)?;
        Ok(self.inverse(a))
    }

    /// `a^k` for any integer `k`, by square-and-multiply after reducing `k`
    /// modulo the order of `a`.
    pub fn power(&self, a: ElementId, k: i64) -> ElementId {
        let o = self.element_order(a) as i64;
        let mut e = k.rem_euclid(o) as u64;
        let mut base = a;
        let mut acc = ElementId::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn checked_power(&self, a: ElementId, k: i64) -> Result<ElementId> {
        self.check(a)?;
        Ok(self.power(a, k))
    }

    /// `x^-1 a x`.
    pub fn conjugate(&self, a: ElementId, x: ElementId) -> ElementId {
        self.mul(self.inverse(x), self.mul(a, x))
    }

    #[inline]
    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        match (&self.0.table, &self.0.backend) {
            (None, Backend::Permutation(p)) => p.commutes(a.0, b.0),
            _ => self.mul(a, b) == self.mul(b, a),
        }
    }

    #[inline]
    pub fn element_order(&self, a: ElementId) -> u64 {
        self.0.orders[a.index()] as u64
    }

    pub fn checked_element_order(&self, a: ElementId) -> Result<u64> {
        self.check(a)?;
        Ok(self.element_order(a))
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        *self.0.exponent.get_or_init(|| self.0.orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.0.generators;
        g.iter().enumerate().all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    /// `{ x : xs = sx for all s in set }`, sorted.
    pub fn centralizer(&self, set: &[ElementId]) -> Result<Vec<ElementId>> {
        if set.is_empty() {
            return usage("centralizer of an empty set");
        }
        for &s in set {
            self.check(s)?;
        }
        Ok(self.elements().filter(|&x| set.iter().all(|&s| self.commutes(x, s))).collect())
    }

    pub fn center(&self) -> Vec<ElementId> {
        let gens = &self.0.generators;
        self.elements().filter(|&x| gens.iter().all(|&s| self.commutes(x, s))).collect()
    }

    /// Conjugacy classes in canonical order: class `i` has the `i`-th
    /// smallest representative, and each representative is the smallest
    /// index in its class.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// Index (into [`Group::conjugacy_classes`]) of the class containing `a`.
    pub fn class_index(&self, a: ElementId) -> usize {
        self.class_data().class_of[a.index()] as usize
    }

    fn class_data(&self) -> &ClassData {
        self.0.classes.get_or_init(|| ClassData::compute(self))
    }

    /// Centralizer of the representative of class `i`.
    pub fn class_centralizer(&self, i: usize) -> Vec<ElementId> {
        let rep = self.conjugacy_classes()[i].representative;
        self.centralizer(&[rep]).expect("representative is a valid element")
    }

    /// Partition of the elements into sets `{ g^m : gcd(m, o(g)) = 1 }`.
    pub fn rational_power_classes(&self) -> &PowerClassPartition {
        self.0.power_classes.get_or_init(|| PowerClassPartition::compute(self))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[ElementId]) -> Result<Vec<ElementId>> {
        for &g in gens {
            self.check(g)?;
        }
        let mut seen = vec![false; self.0.order];
        seen[0] = true;
        let mut queue = vec![ElementId::IDENTITY];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// Greedy generating set of a subgroup given by its element set. Fails
    /// if the set is not closed under multiplication.
    fn minimal_generating_set(&self, subset: &[ElementId]) -> Result<Vec<ElementId>> {
        let mut inside = vec![false; self.0.order];
        for &h in subset {
            inside[h.index()] = true;
        }
        let not_closed = || FszError::Structural("subset is not closed under multiplication".into());
        if !inside[0] {
            return Err(FszError::Structural("subset does not contain the identity".into()));
        }
        let mut current = vec![false; self.0.order];
        current[0] = true;
        let mut elements = vec![ElementId::IDENTITY];
        let mut gens: Vec<ElementId> = Vec::new();
        for &h in subset {
            if current[h.index()] {
                continue;
            }
            gens.push(h);
            // Close the current subgroup with the new generator.
            let mut head = 0;
            let mut queue = elements.clone();
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y.index()] {
                        return Err(not_closed());
                    }
                    if !current[y.index()] {
                        current[y.index()] = true;
                        queue.push(y);
                    }
                }
            }
            elements = queue;
        }
        Ok(gens)
    }

    /// The subset `members` (which must be a subgroup) as a group in its own
    /// right. Element `i` of the result is the `i`-th smallest member.
    pub fn as_group(&self, members: &[ElementId]) -> Result<Group> {
        self.as_group_named(format!("subgroup of order {} in {}", members.len(), self.name()), members)
    }

    pub fn as_group_named(&self, name: impl Into<String>, members: &[ElementId]) -> Result<Group> {
        if members.is_empty() {
            return Err(FszError::Structural("empty subset".into()));
        }
        for &m in members {
            self.check(m)?;
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let gens = self.minimal_generating_set(&sorted)?;
        let mut position = vec![u32::MAX; self.0.order];
        for (i, &m) in sorted.iter().enumerate() {
            position[m.index()] = i as u32;
        }
        let sub_gens = gens.iter().map(|g| ElementId(position[g.index()])).collect();
        Group::build(name.into(), Backend::Induced { parent: self.clone(), members: sorted, position }, sub_gens)
    }

    /// For a group built by [`Group::as_group`], the parent id of element `a`.
    pub fn embed(&self, a: ElementId) -> Option<ElementId> {
        match &self.0.backend {
            Backend::Induced { members, .. } => members.get(a.index()).copied(),
            _ => None,
        }
    }

    /// Inverse of [`Group::embed`].
    pub fn restrict(&self, parent_element: ElementId) -> Option<ElementId> {
        match &self.0.backend {
            Backend::Induced { position, .. } => match position.get(parent_element.index()) {
                Some(&p) if p != u32::MAX => Some(ElementId(p)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `A x B` with componentwise multiplication. Element `(a, b)` has index
    /// `a * |B| + b`.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        Group::direct_product_named(format!("{} x {}", a.name(), b.name()), a, b)
    }

    pub fn direct_product_named(name: impl Into<String>, a: &Group, b: &Group) -> Result<Group> {
        let order = a.order() as u128 * b.order() as u128;
        if order > SIZE_CAP as u128 {
            return Err(FszError::CapExceeded { order, cap: SIZE_CAP });
        }
        let nb = b.order() as u32;
        let mut gens: Vec<ElementId> = a.generators().iter().map(|g| ElementId(g.0 * nb)).collect();
        gens.extend(b.generators().iter().copied());
        Group::build(name.into(), Backend::DirectProduct(a.clone(), b.clone()), gens)
    }

    /// Components of an element of a direct product.
    pub fn project(&self, x: ElementId) -> Option<(ElementId, ElementId)> {
        match &self.0.backend {
            Backend::DirectProduct(_, b) => {
                let nb = b.order() as u32;
                Some((ElementId(x.0 / nb), ElementId(x.0 % nb)))
            }
            _ => None,
        }
    }

    /// Inverse of [`Group::project`].
    pub fn pair(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        match &self.0.backend {
            Backend::DirectProduct(_, fb) => Some(ElementId(a.0 * fb.order() as u32 + b.0)),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&Group, &Group)> {
        match &self.0.backend {
            Backend::DirectProduct(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// 0-based image list of `a` in the group's natural faithful permutation
    /// representation, when it has one (permutation backend, subgroups of
    /// such groups, and direct products of such groups).
    pub fn permutation_of(&self, a: ElementId) -> Option<Vec<u32>> {
        match &self.0.backend {
            Backend::Permutation(p) => Some(p.perm(a.0).to_vec()),
            Backend::Induced { parent, members, .. } => parent.permutation_of(members[a.index()]),
            Backend::DirectProduct(fa, fb) => {
                let (x, y) = self.project(a)?;
                let mut px = fa.permutation_of(x)?;
                let shift = px.len() as u32;
                px.extend(fb.permutation_of(y)?.into_iter().map(|i| i + shift));
                Some(px)
            }
            _ => None,
        }
    }

    /// Degree of the representation behind [`Group::permutation_of`].
    pub fn permutation_degree(&self) -> Option<usize> {
        self.permutation_of(ElementId::IDENTITY).map(|p| p.len())
    }

    /// Image list of right multiplication by `a` on the canonical enumeration
    /// (the right regular representation).
    pub fn regular_permutation(&self, a: ElementId) -> Vec<u32> {
        self.elements().map(|x| self.mul(x, a).0).collect()
    }

    /// The presentation behind a polycyclic group.
    pub fn pc_presentation(&self) -> Option<&PcPresentation> {
        match &self.0.backend {
            Backend::Polycyclic(p) => Some(&p.presentation),
            _ => None,
        }
    }

    /// Normal-form exponent vector of `a` in a polycyclic group.
    pub fn pc_exponents(&self, a: ElementId) -> Option<Vec<u32>> {
        match &self.0.backend {
            Backend::Polycyclic(p) => Some(p.exponents(a.0)),
            _ => None,
        }
    }

    /// Set of elements as a fast membership mask.
    pub fn mask(&self, subset: &[ElementId]) -> Vec<bool> {
        let mut m = vec![false; self.0.order];
        for &x in subset {
            m[x.index()] = true;
        }
        m
    }

    /// Distinct class sizes with multiplicities, sorted.
    pub fn class_size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.conjugacy_classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn abelian_basis(&self) -> Result<AbelianBasis> {
        AbelianBasis::compute(self)
    }
}

fn backend_mul(backend: &Backend, a: u32, b: u32) -> u32 {
    match backend {
        Backend::Permutation(p) => p.mul(a, b),
        Backend::Polycyclic(p) => p.mul(a, b),
        Backend::Table { n, table } => table[a as usize * n + b as usize],
        Backend::DirectProduct(fa, fb) => {
            let nb = fb.order() as u32;
            let x = fa.mul(ElementId(a / nb), ElementId(b / nb));
            let y = fb.mul(ElementId(a % nb), ElementId(b % nb));
            x.0 * nb + y.0
        }
        Backend::Induced { parent, members, position } => {
            let p = parent.mul(members[a as usize], members[b as usize]);
            position[p.index()]
        }
    }
}

/// Walks each not-yet-visited cyclic subgroup once; `o(x^k) = o(x)/gcd(k, o(x))`
/// and `(x^k)^-1 = x^(o - k)` fill in every power along the way.
fn orders_and_inverses(inner: &Inner) -> (Vec<u32>, Vec<u32>) {
    let n = inner.order;
    let mul = |a: u32, b: u32| match &inner.table {
        Some(t) => t[a as usize * n + b as usize],
        None => backend_mul(&inner.backend, a, b),
    };
    let mut orders = vec![0u32; n];
    let mut inverses = vec![0u32; n];
    let mut cycle = Vec::new();
    for x in 0..n as u32 {
        if orders[x as usize] != 0 {
            continue;
        }
        cycle.clear();
        cycle.push(0u32);
        let mut y = x;
        while y != 0 {
            cycle.push(y);
            y = mul(y, x);
        }
        let o = cycle.len();
        for (k, &c) in cycle.iter().enumerate() {
            if orders[c as usize] == 0 {
                orders[c as usize] = if k == 0 { 1 } else { (o / o.gcd(&k)) as u32 };
                inverses[c as usize] = cycle[(o - k) % o];
            }
        }
    }
    (orders, inverses)
}

/// Deduplicated, sorted copy of a subset.
pub fn normalize_subset(subset: &[ElementId]) -> Vec<ElementId> {
    let set: FxHashSet<ElementId> = subset.iter().copied().collect();
    let mut v: Vec<ElementId> = set.into_iter().collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests;
