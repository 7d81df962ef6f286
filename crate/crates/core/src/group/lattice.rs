use std::collections::HashSet;

use super::{ElementSet, FiniteGroup, GroupError, Subgroup};

/// `A/N` for `N` normal in a subgroup `A`, with cosets ordered by their least
/// element (the trivial coset is index 0).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    projection: Vec<Option<usize>>,
    representatives: Vec<usize>,
}

impl Quotient {
    /// Coset index of `g`, or `None` when `g` lies outside the ambient subgroup.
    pub fn project(&self, g: usize) -> Option<usize> {
        self.projection[g]
    }

    /// Least element of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }
}

impl FiniteGroup {
    /// Every subgroup exactly once, sorted by order and then by element list.
    ///
    /// Starts from the cyclic subgroups and closes under joins with cyclic
    /// subgroups until no new subgroup appears.
    pub fn all_subgroups(&self, max_order: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order() > max_order {
            return Err(GroupError::OrderBoundExceeded { bound: max_order });
        }
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        for x in self.elements() {
            let c = self.subgroup_generated(&[x]);
            if seen.insert(c.members().clone()) {
                cyclic.push((x, c));
            }
        }
        let mut all: Vec<Subgroup> = cyclic.iter().map(|(_, c)| c.clone()).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for (x, c) in &cyclic {
                    if c.is_subgroup_of(s) {
                        continue;
                    }
                    let j = self.join(s, *x);
                    if seen.insert(j.members().clone()) {
                        next.push(j);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    /// `N_G(S)`.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), s)
    }

    /// `N_A(S) = { g in A : S^g = S }`.
    pub fn normalizer_in(&self, ambient: &Subgroup, s: &Subgroup) -> Subgroup {
        let gens = s.generators();
        let elems: Vec<usize> = ambient
            .members()
            .iter()
            .filter(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g))))
            .collect();
        self.subgroup_from_members(ElementSet::from_elements(self.order(), elems.iter().copied()), &elems)
    }

    /// `C_G(x)`.
    pub fn centralizer_elt(&self, x: usize) -> Subgroup {
        let elems: Vec<usize> = self.elements().filter(|&g| self.mul(g, x) == self.mul(x, g)).collect();
        self.subgroup_from_members(ElementSet::from_elements(self.order(), elems.iter().copied()), &elems)
    }

    /// `A ⊴ B`: `A <= B` and `A` is stable under conjugation by `B`.
    pub fn is_normal_in(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.is_subgroup_of(b)
            && b.generators()
                .iter()
                .all(|&g| a.generators().iter().all(|&x| a.contains(self.conj(x, g))))
    }

    /// `G/N` with its projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        self.section_quotient(&self.whole(), n)
    }

    /// `A/N` for `N ⊴ A <= G`.
    pub fn section_quotient(&self, ambient: &Subgroup, n: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal_in(n, ambient) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![None; self.order()];
        let mut representatives = Vec::new();
        for g in ambient.members().iter() {
            if projection[g].is_some() {
                continue;
            }
            let c = representatives.len();
            representatives.push(g);
            for x in n.members().iter() {
                projection[self.mul(g, x)] = Some(c);
            }
        }
        let q = representatives.len();
        let mut mult = vec![0; q * q];
        for (i, &a) in representatives.iter().enumerate() {
            for (j, &b) in representatives.iter().enumerate() {
                mult[i * q + j] = projection[self.mul(a, b)].expect("ambient is closed");
            }
        }
        let gens = ambient
            .generators()
            .iter()
            .map(|&g| projection[g].expect("generator lies in ambient"))
            .collect();
        let labels = representatives.iter().map(|&g| format!("{}N", self.label(g))).collect();
        Ok(Quotient {
            group: FiniteGroup::from_trusted_table(q, mult, Some(gens), Some(labels)),
            projection,
            representatives,
        })
    }

    /// Conjugacy classes, each sorted, listed by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|g| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// `[H, g] = < h^-1 g^-1 h g : h in H >`.
    pub fn commutator_closure(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gens: Vec<usize> = h.members().iter().map(|x| self.commutator(x, g)).collect();
        self.subgroup_generated(&gens)
    }

    /// Smallest subgroup normal in `ambient` containing `base` and `extra`.
    pub fn normal_closure_in(&self, ambient: &Subgroup, base: &Subgroup, extra: usize) -> Subgroup {
        let mut s = self.join(base, extra);
        loop {
            let outside = s.generators().iter().find_map(|&x| {
                ambient
                    .generators()
                    .iter()
                    .map(|&g| self.conj(x, g))
                    .find(|&y| !s.contains(y))
            });
            match outside {
                Some(y) => s = self.join(&s, y),
                None => return s,
            }
        }
    }

    /// The subgroups `M` of `G` with `N < M ⊴ G` and `M/N` minimal normal in `G/N`.
    pub fn minimal_normal_subgroups_above(&self, n: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        self.minimal_normal_above_in(&self.whole(), n)
    }

    /// Same as [`Self::minimal_normal_subgroups_above`] inside a subgroup `A`.
    pub fn minimal_normal_above_in(&self, ambient: &Subgroup, n: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        if !self.is_normal_in(n, ambient) {
            return Err(GroupError::NotNormal);
        }
        // Each minimal normal M/N is the normal closure of any of its
        // nontrivial elements, so the candidates are the closures of single
        // elements and the minimal ones are those containing no other.
        let mut candidates: Vec<Subgroup> = Vec::new();
        for g in ambient.members().iter().filter(|&g| !n.contains(g)) {
            let c = self.normal_closure_in(ambient, n, g);
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
        let mut minimal: Vec<Subgroup> = candidates
            .iter()
            .filter(|m| !candidates.iter().any(|o| o != *m && o.is_subgroup_of(m)))
            .cloned()
            .collect();
        minimal.sort();
        Ok(minimal)
    }
}
