use super::{FiniteGroup, GroupError, Subgroup};

/// A cyclic section `H/K` with a fixed generating coset `hK`.
#[derive(Clone, Debug)]
pub struct CyclicSection {
    upper: Subgroup,
    lower: Subgroup,
    generator: usize,
    index: usize,
    /// `exponents[x] = Some(i)` when `x` lies in `h^i K`, `0 <= i < k`.
    exponents: Vec<Option<usize>>,
}

impl CyclicSection {
    /// Uses the least element of `H` whose coset generates `H/K`.
    pub fn new(g: &FiniteGroup, upper: &Subgroup, lower: &Subgroup) -> Result<Self, GroupError> {
        if !g.is_normal_in(lower, upper) {
            return Err(GroupError::NotNormal);
        }
        let k = upper.order() / lower.order();
        let h = upper
            .members()
            .iter()
            .find(|&x| coset_order(g, lower, x) == k)
            .ok_or(GroupError::NotCyclic)?;
        Self::with_generator(g, upper, lower, h)
    }

    /// Same as [`Self::new`] with a caller-chosen generator.
    pub fn with_generator(g: &FiniteGroup, upper: &Subgroup, lower: &Subgroup, h: usize) -> Result<Self, GroupError> {
        if !g.is_normal_in(lower, upper) {
            return Err(GroupError::NotNormal);
        }
        let k = upper.order() / lower.order();
        if !upper.contains(h) || coset_order(g, lower, h) != k {
            return Err(GroupError::NotCyclic);
        }
        let mut exponents = vec![None; g.order()];
        let mut power = g.identity();
        for i in 0..k {
            for y in lower.members().iter() {
                exponents[g.mul(power, y)] = Some(i);
            }
            power = g.mul(power, h);
        }
        Ok(CyclicSection {
            upper: upper.clone(),
            lower: lower.clone(),
            generator: h,
            index: k,
            exponents,
        })
    }

    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    /// `k = [H:K]`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// The `i` with `x in h^i K`, or `None` when `x` is not in `H`.
    pub fn coset_exponent(&self, x: usize) -> Option<usize> {
        self.exponents.get(x).copied().flatten()
    }
}

/// Order of `xK` in `N_G(K)/K`.
fn coset_order(g: &FiniteGroup, lower: &Subgroup, x: usize) -> usize {
    let mut y = x;
    let mut n = 1;
    while !lower.contains(y) {
        y = g.mul(y, x);
        n += 1;
    }
    n
}
