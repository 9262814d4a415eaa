//! Permutation backend. Points are `0..degree`; a permutation is stored as
//! its image list. Products compose left to right: `x^(ab) = (x^a)^b`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{FszError, Result};
use crate::group::SIZE_CAP;

type Scratch = SmallVec<[u32; 32]>;

pub(crate) struct PermBackend {
    degree: usize,
    /// Row `i` (length `degree`) is the element with index `i`.
    images: Vec<u32>,
    index: FxHashMap<Box<[u32]>, u32>,
}

/// Checks that `images` is a permutation of `0..images.len()`.
pub(crate) fn validate_permutation(images: &[u32]) -> Result<()> {
    let mut seen = vec![false; images.len()];
    for &x in images {
        let x = x as usize;
        if x >= images.len() || seen[x] {
            return Err(FszError::Structural(format!(
                "image list {:?} is not a permutation",
                images.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

pub(crate) fn compose(a: &[u32], b: &[u32]) -> Scratch {
    a.iter().map(|&x| b[x as usize]).collect()
}

impl PermBackend {
    /// Closes the generators under multiplication and sorts the result
    /// lexicographically, so the identity lands on index 0. Returns the
    /// backend and the indices of the generators.
    pub(crate) fn from_generators(degree: usize, gens: &[Vec<u32>]) -> Result<(Self, Vec<u32>)> {
        for g in gens {
            if g.len() != degree {
                return Err(FszError::Structural(format!(
                    "generator has {} images but the degree is {degree}",
                    g.len()
                )));
            }
            validate_permutation(g)?;
        }
        let identity: Box<[u32]> = (0..degree as u32).collect();
        let mut seen: FxHashMap<Box<[u32]>, ()> = FxHashMap::default();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone(), ());
        queue.push_back(identity);
        let mut elements: Vec<Box<[u32]>> = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y: Box<[u32]> = compose(&x, g).into_iter().collect();
                if !seen.contains_key(&y) {
                    if seen.len() >= SIZE_CAP {
                        return Err(FszError::CapExceeded { order: seen.len() as u128 + 1, cap: SIZE_CAP });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            elements.push(x);
        }
        elements.sort_unstable();
        let mut images = Vec::with_capacity(elements.len() * degree);
        let mut index = FxHashMap::default();
        index.reserve(elements.len());
        for (i, e) in elements.into_iter().enumerate() {
            images.extend_from_slice(&e);
            index.insert(e, i as u32);
        }
        let backend = PermBackend { degree, images, index };
        let gen_ids = gens.iter().map(|g| backend.lookup(g).expect("generator in closure")).collect();
        Ok((backend, gen_ids))
    }

    pub(crate) fn order(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn perm(&self, i: u32) -> &[u32] {
        let start = i as usize * self.degree;
        &self.images[start..start + self.degree]
    }

    pub(crate) fn lookup(&self, images: &[u32]) -> Option<u32> {
        self.index.get(images).copied()
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        let c = compose(self.perm(a), self.perm(b));
        self.index[&c[..]]
    }

    /// `ab = ba` without a hash lookup.
    pub(crate) fn commutes(&self, a: u32, b: u32) -> bool {
        let (pa, pb) = (self.perm(a), self.perm(b));
        pa.iter().zip(pb).all(|(&x, &y)| pb[x as usize] == pa[y as usize])
    }
}
