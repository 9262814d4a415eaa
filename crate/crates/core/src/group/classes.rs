use num_integer::Integer;
use serde::Serialize;

use super::{ElementId, Group};

/// A conjugacy class. The centralizer of the representative has order
/// `|G| / size`; its elements come from [`Group::class_centralizer`].
#[derive(Clone, Debug, Serialize)]
pub struct ConjClass {
    pub representative: ElementId,
    /// Sorted; the representative is the first member.
    pub members: Vec<ElementId>,
    pub centralizer_order: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub(crate) struct ClassData {
    pub(crate) classes: Vec<ConjClass>,
    pub(crate) class_of: Vec<u32>,
}

impl ClassData {
    /// Orbits under conjugation by the generators, in order of first element.
    pub(crate) fn compute(g: &Group) -> ClassData {
        let n = g.order();
        let gens = g.generators();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in g.elements() {
            if class_of[x.index()] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[x.index()] = id;
            let mut members = vec![x];
            let mut head = 0;
            while head < members.len() {
                let y = members[head];
                head += 1;
                for &s in gens {
                    let z = g.conjugate(y, s);
                    if class_of[z.index()] == u32::MAX {
                        class_of[z.index()] = id;
                        members.push(z);
                    }
                }
            }
            members.sort_unstable();
            debug_assert_eq!(n % members.len(), 0);
            classes.push(ConjClass { representative: x, centralizer_order: n / members.len(), members });
        }
        ClassData { classes, class_of }
    }
}

/// One block of a [`PowerClassPartition`]: the generators of the cyclic
/// subgroup `<leader>`, each recorded with the exponent `m` such that the
/// member is `leader^m`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerBlock {
    pub leader: ElementId,
    pub order: u64,
    /// `(leader^m, m)` for every `m` in `1..order` coprime to `order`
    /// (just `(leader, 1)` when the order is 1 or 2), ascending in `m`.
    pub members: Vec<(ElementId, u64)>,
}

/// Partition of a group into the sets `{ g^m : gcd(m, o(g)) = 1 }`.
/// Blocks are ordered by leader, and the leader is the smallest index.
#[derive(Clone, Debug, Serialize)]
pub struct PowerClassPartition {
    pub blocks: Vec<PowerBlock>,
    #[serde(skip)]
    block_of: Vec<u32>,
}

impl PowerClassPartition {
    pub(crate) fn compute(g: &Group) -> PowerClassPartition {
        let n = g.order();
        let mut block_of = vec![u32::MAX; n];
        let mut blocks = Vec::new();
        let mut powers = Vec::new();
        for x in g.elements() {
            if block_of[x.index()] != u32::MAX {
                continue;
            }
            let o = g.element_order(x);
            powers.clear();
            let mut y = ElementId::IDENTITY;
            for _ in 0..o {
                powers.push(y);
                y = g.mul(y, x);
            }
            let id = blocks.len() as u32;
            let members: Vec<(ElementId, u64)> = if o == 1 {
                vec![(x, 1)]
            } else {
                (1..o).filter(|m| m.gcd(&o) == 1).map(|m| (powers[m as usize], m)).collect()
            };
            for &(m, _) in &members {
                block_of[m.index()] = id;
            }
            blocks.push(PowerBlock { leader: x, order: o, members });
        }
        PowerClassPartition { blocks, block_of }
    }

    pub fn block_of(&self, a: ElementId) -> &PowerBlock {
        &self.blocks[self.block_of[a.index()] as usize]
    }

    pub fn block_index(&self, a: ElementId) -> usize {
        self.block_of[a.index()] as usize
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}
