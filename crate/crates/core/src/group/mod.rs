//! Finite groups given by complete multiplication tables.
//!
//! Elements are the indices `0..order` and the identity is always `0`.
//! Everything the Shoda-pair machinery needs lives here: subgroup lattices,
//! normalizers, quotients, conjugacy classes and cyclic sections `H/K`.

mod build;
mod lattice;
mod section;
mod set;

pub use build::{GroupSpec, MetacyclicParams};
pub use lattice::Quotient;
pub use section::CyclicSection;
pub use set::{ElementSet, Subgroup};

use num_integer::Integer;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest group order accepted unless configured otherwise.
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the configured bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient is not cyclic")]
    NotCyclic,
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

/// A finite group with elements `0..order`; `0` is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Assembles a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(
        order: usize,
        mult: Vec<usize>,
        generators: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(mult.len(), order * order);
        let mut inv = vec![0; order];
        for x in 0..order {
            inv[x] = (0..order)
                .find(|&y| mult[x * order + y] == 0)
                .expect("every element has an inverse");
        }
        let mut g = FiniteGroup {
            order,
            mult,
            inv,
            generators: Vec::new(),
            labels,
        };
        g.generators = match generators {
            Some(gens) => {
                let mut gens: Vec<usize> = gens.into_iter().filter(|&x| x != 0).collect();
                gens.dedup();
                gens
            }
            None => g.greedy_generators(),
        };
        g
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in 0..self.order {
            if !current.contains(x) {
                gens.push(x);
                current = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("g{x}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `x^e` for any integer `e`.
    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        let mut n = e.unsigned_abs();
        let mut result = 0;
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        result
    }

    /// `x^g = g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Hex SHA-256 of the canonical multiplication table.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        for &x in &self.mult {
            hasher.update((x as u32).to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(ElementSet::full(self.order), self.generators.clone())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_parts(ElementSet::from_elements(self.order, [0]), Vec::new())
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let start = ElementSet::from_elements(self.order, [0]);
        self.close(start, gens)
    }

    /// `<S, x>` for a subgroup `S`.
    pub fn join(&self, s: &Subgroup, x: usize) -> Subgroup {
        let mut gens = s.generators().to_vec();
        gens.push(x);
        self.close(s.members().clone(), &gens)
    }

    /// `<A, B>` for subgroups `A`, `B`.
    pub fn join_subgroups(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.generators().to_vec();
        gens.extend_from_slice(b.generators());
        self.close(a.members().clone(), &gens)
    }

    /// Closure of `start` under right multiplication by `gens`; `start` must
    /// already lie inside the generated subgroup.
    fn close(&self, start: ElementSet, gens: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.dedup();
        let mut members = start;
        let mut queue: Vec<usize> = members.iter().collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push(y);
                }
            }
        }
        Subgroup::from_parts(members, gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let members = a.members().intersection(b.members());
        let elems: Vec<usize> = members.iter().collect();
        self.subgroup_from_members(members, &elems)
    }

    /// Wraps a member set known to be a subgroup, picking a small generating set.
    pub(crate) fn subgroup_from_members(&self, members: ElementSet, elems: &[usize]) -> Subgroup {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &x in elems {
            if !current.contains(x) {
                current = self.join(&current, x);
                gens.push(x);
            }
        }
        debug_assert_eq!(current.members(), &members);
        Subgroup::from_parts(members, gens)
    }

    /// `S^g = g^-1 S g`.
    pub fn conjugate_subgroup(&self, s: &Subgroup, g: usize) -> Subgroup {
        let members = ElementSet::from_elements(self.order, s.members().iter().map(|x| self.conj(x, g)));
        let gens = s.generators().iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_parts(members, gens)
    }

    /// Checks that `set` is closed under multiplication and inverses and
    /// contains the identity.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|x| set.contains(self.inv(x)) && set.iter().all(|y| set.contains(self.mul(x, y))))
    }
}
