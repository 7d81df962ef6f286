//! Exact arithmetic in the group algebra `Q(zeta_L) G`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cyclo::{Accumulator, CycloNumber};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("coefficient level {found} does not divide the ambient level {ambient}")]
    LevelMismatch { found: usize, ambient: usize },
}

#[derive(Clone, Debug)]
enum Terms {
    Sparse(BTreeMap<usize, CycloNumber>),
    /// One slot per group element, zeros included.
    Dense(Vec<CycloNumber>),
}

/// An element `sum_g a_g g` of `Q(zeta_L) G`; all coefficients live at the
/// ambient level `L`.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    group: Arc<FiniteGroup>,
    level: usize,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(group: &Arc<FiniteGroup>, level: usize) -> Self {
        AlgebraElement {
            group: Arc::clone(group),
            level,
            terms: Terms::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>, level: usize) -> Self {
        Self::from_element(group, level, group.identity())
    }

    /// The group element `g` as an algebra element.
    pub fn from_element(group: &Arc<FiniteGroup>, level: usize, g: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, CycloNumber::one(level));
        AlgebraElement {
            group: Arc::clone(group),
            level,
            terms: Terms::Sparse(terms),
        }
    }

    /// `H^ = (1/|H|) sum_{h in H} h`.
    pub fn hat(group: &Arc<FiniteGroup>, level: usize, h: &Subgroup) -> Self {
        let c = CycloNumber::from_rational(level, &BigRational::new(BigInt::from(1), BigInt::from(h.order())));
        Self::from_dense_iter(group, level, h.members().iter().map(|x| (x, c.clone())))
    }

    /// Builds an element from `(group element, coefficient)` pairs; repeated
    /// elements are summed and coefficients are embedded at `level`.
    pub fn from_terms<I>(group: &Arc<FiniteGroup>, level: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, CycloNumber)>,
    {
        let mut dense = vec![CycloNumber::zero(level); group.order()];
        for (g, c) in terms {
            let c = c.embed(level).map_err(|_| AlgebraError::LevelMismatch {
                found: c.level(),
                ambient: level,
            })?;
            dense[g] = &dense[g] + &c;
        }
        Ok(Self::from_dense(group, level, dense))
    }

    fn from_dense_iter<I>(group: &Arc<FiniteGroup>, level: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, CycloNumber)>,
    {
        let map: BTreeMap<usize, CycloNumber> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut x = AlgebraElement {
            group: Arc::clone(group),
            level,
            terms: Terms::Sparse(map),
        };
        x.rebalance();
        x
    }

    fn from_dense(group: &Arc<FiniteGroup>, level: usize, dense: Vec<CycloNumber>) -> Self {
        Self::from_dense_iter(group, level, dense.into_iter().enumerate())
    }

    /// Switches to the dense layout once more than half of `G` is in the support.
    fn rebalance(&mut self) {
        let n = self.group.order();
        let support = self.support_len();
        match &mut self.terms {
            Terms::Sparse(map) if support * 2 > n => {
                let mut dense = vec![CycloNumber::zero(self.level); n];
                for (g, c) in std::mem::take(map) {
                    dense[g] = c;
                }
                self.terms = Terms::Dense(dense);
            }
            Terms::Dense(dense) if support * 2 <= n => {
                let map = std::mem::take(dense)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                self.terms = Terms::Sparse(map);
            }
            _ => {}
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Nonzero terms in ascending element order.
    pub fn terms(&self) -> Box<dyn Iterator<Item = (usize, &CycloNumber)> + '_> {
        match &self.terms {
            Terms::Sparse(map) => Box::new(map.iter().map(|(&g, c)| (g, c))),
            Terms::Dense(v) => Box::new(v.iter().enumerate().filter(|(_, c)| !c.is_zero())),
        }
    }

    pub fn coefficient(&self, g: usize) -> CycloNumber {
        let c = match &self.terms {
            Terms::Sparse(map) => map.get(&g).cloned(),
            Terms::Dense(v) => v.get(g).cloned(),
        };
        c.unwrap_or_else(|| CycloNumber::zero(self.level))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms().map(|(g, _)| g).collect()
    }

    fn support_len(&self) -> usize {
        match &self.terms {
            Terms::Sparse(map) => map.len(),
            Terms::Dense(v) => v.iter().filter(|c| !c.is_zero()).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support_len() == 0
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.terms, Terms::Dense(_))
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if !self.same_group(other) {
            return Err(AlgebraError::GroupMismatch);
        }
        if self.level != other.level {
            return Err(AlgebraError::LevelMismatch {
                found: other.level,
                ambient: self.level,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let mut dense = vec![CycloNumber::zero(self.level); self.group.order()];
        for (g, c) in self.terms() {
            dense[g] = c.clone();
        }
        for (g, c) in other.terms() {
            dense[g] = if subtract { &dense[g] - c } else { &dense[g] + c };
        }
        Self::from_dense(&self.group, self.level, dense)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    /// Convolution over the two supports.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let g = &self.group;
        let mut acc: Vec<Option<Accumulator>> = (0..g.order()).map(|_| None).collect();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                acc[g.mul(x, y)]
                    .get_or_insert_with(|| Accumulator::new(self.level))
                    .add_product(a, b);
            }
        }
        Ok(Self::from_dense_iter(
            &self.group,
            self.level,
            acc.into_iter()
                .enumerate()
                .filter_map(|(z, a)| a.map(|a| (z, a.finish()))),
        ))
    }

    /// Multiplies every coefficient by `c`, whose level must divide the ambient one.
    pub fn scale(&self, c: &CycloNumber) -> Result<Self, AlgebraError> {
        let c = c.embed(self.level).map_err(|_| AlgebraError::LevelMismatch {
            found: c.level(),
            ambient: self.level,
        })?;
        Ok(Self::from_dense_iter(
            &self.group,
            self.level,
            self.terms().map(|(g, x)| (g, x * &c)),
        ))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::from_dense_iter(&self.group, self.level, self.terms().map(|(g, x)| (g, x.scale(r))))
    }

    /// `alpha^g = g^-1 alpha g`.
    pub fn conjugate_by(&self, g: usize) -> Self {
        Self::from_dense_iter(
            &self.group,
            self.level,
            self.terms().map(|(x, c)| (self.group.conj(x, g), c.clone())),
        )
    }

    /// Applies `zeta_L -> zeta_L^t` to every coefficient.
    pub fn galois(&self, t: usize) -> Self {
        Self::from_dense_iter(&self.group, self.level, self.terms().map(|(x, c)| (x, c.galois(t))))
    }

    /// The same element with coefficients re-expressed at a multiple of the level.
    pub fn embed(&self, level: usize) -> Result<Self, AlgebraError> {
        let mut out = Vec::new();
        for (g, c) in self.terms() {
            let c = c.embed(level).map_err(|_| AlgebraError::LevelMismatch {
                found: self.level,
                ambient: level,
            })?;
            out.push((g, c));
        }
        Ok(Self::from_dense_iter(&self.group, level, out))
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// Commutes with every generator of `G`.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&g| &self.conjugate_by(g) == self)
    }

    /// `alpha beta = beta alpha = 0`.
    pub fn are_orthogonal(&self, other: &Self) -> bool {
        (self * other).is_zero() && (other * self).is_zero()
    }

    /// The distinct `G`-conjugates, found by scanning `G` in index order and
    /// keeping `alpha^g` when it differs from every conjugate kept so far.
    pub fn distinct_conjugates(&self) -> Vec<(usize, AlgebraElement)> {
        let mut out: Vec<(usize, AlgebraElement)> = Vec::new();
        for g in self.group.elements() {
            let c = self.conjugate_by(g);
            if !out.iter().any(|(_, d)| *d == c) {
                out.push((g, c));
            }
        }
        out
    }

    pub fn sum_of_distinct_conjugates(&self) -> Self {
        self.distinct_conjugates()
            .iter()
            .fold(Self::zero(&self.group, self.level), |acc, (_, c)| &acc + c)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.terms().eq(other.terms())
    }
}

impl Eq for AlgebraElement {}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("incompatible algebra elements")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("incompatible algebra elements")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("incompatible algebra elements")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::from_dense_iter(&self.group, self.level, self.terms().map(|(g, c)| (g, -c)))
    }
}

/// Terms sorted by element index, as `(coefficient)*label`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| format!("({c})*{}", self.group.label(g)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::metacyclic(3, 2, 0, 2, 256).unwrap())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn hats() {
        let g = s3();
        let a = g.subgroup_generated(&[1]);
        let ha = AlgebraElement::hat(&g, 1, &a);
        assert_eq!(ha.support(), a.elements());
        assert!(ha.is_idempotent());
        assert_eq!(ha.coefficient(2).to_rational(), Some(rat(1, 3)));
        assert_eq!(
            AlgebraElement::hat(&g, 3, &g.trivial_subgroup()),
            AlgebraElement::identity(&g, 3)
        );
        let whole = AlgebraElement::hat(&g, 1, &g.whole());
        assert!(whole.is_idempotent() && whole.is_central());
        let one = AlgebraElement::identity(&g, 1);
        assert!(whole.are_orthogonal(&(&one - &whole)));
        assert_eq!(ha.to_string(), "(1/3)*1 + (1/3)*a^1 + (1/3)*a^2");

        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let h = AlgebraElement::hat(&c2, 1, &c2.whole());
        assert_eq!(h.coefficient(0).to_rational(), Some(rat(1, 2)));
        assert_eq!(h.coefficient(1).to_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn centrality() {
        let g = s3();
        let a = AlgebraElement::from_element(&g, 1, 1);
        assert!(!a.is_central());
        assert_eq!(a.conjugate_by(0), a);
        let whole = g.whole();
        for s in g.all_subgroups(256).unwrap() {
            let h = AlgebraElement::hat(&g, 1, &s);
            assert_eq!(h.is_central(), g.is_normal_in(&s, &whole));
        }
    }

    #[test]
    fn mismatches() {
        let g = s3();
        let other = Arc::new(FiniteGroup::cyclic(6).unwrap());
        let x = AlgebraElement::identity(&g, 1);
        assert_eq!(
            x.checked_add(&AlgebraElement::identity(&other, 1)),
            Err(AlgebraError::GroupMismatch)
        );
        assert!(matches!(
            x.checked_mul(&AlgebraElement::identity(&g, 3)),
            Err(AlgebraError::LevelMismatch { .. })
        ));
        assert!(x.scale(&CycloNumber::root_of_unity(4, 1)).is_err());
        let y = x.embed(3).unwrap();
        assert_eq!(y.level(), 3);
        assert!(y.scale(&CycloNumber::root_of_unity(3, 1)).is_ok());
    }

    #[test]
    fn dense_layout_round_trip() {
        let g = s3();
        let whole = AlgebraElement::hat(&g, 1, &g.whole());
        assert!(whole.is_dense());
        let one = AlgebraElement::identity(&g, 1);
        let diff = &whole - &whole;
        assert!(diff.is_zero() && !diff.is_dense());
        assert_eq!(&(&one - &whole) + &whole, one);
    }

    #[test]
    fn conjugates() {
        let g = s3();
        let b = AlgebraElement::from_element(&g, 1, 3);
        let conj = b.distinct_conjugates();
        assert_eq!(conj.len(), 3);
        let sum = b.sum_of_distinct_conjugates();
        assert!(sum.is_central());
        assert_eq!(sum.support(), vec![3, 4, 5]);
    }

    fn element(g: &Arc<FiniteGroup>, level: usize, coeffs: &[(usize, i64, i64)]) -> AlgebraElement {
        AlgebraElement::from_terms(
            g,
            level,
            coeffs
                .iter()
                .map(|&(x, e, c)| (x % g.order(), CycloNumber::root_of_unity(level, e).scale(&rat(c, 1)))),
        )
        .unwrap()
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
        prop::collection::vec((0usize..8, 0i64..4, -3i64..4), 0..6)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_terms(), b in arb_terms(), c in arb_terms(), g in 0usize..8) {
            let grp = Arc::new(FiniteGroup::dicyclic(2).unwrap());
            let (x, y, z) = (element(&grp, 4, &a), element(&grp, 4, &b), element(&grp, 4, &c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!((&x * &y).conjugate_by(g), &x.conjugate_by(g) * &y.conjugate_by(g));
            prop_assert!((&x - &x).is_zero());
            prop_assert_eq!(&x * &AlgebraElement::identity(&grp, 4), x.clone());
        }
    }

    #[test]
    fn associativity_exhaustive_on_small_groups() {
        // Basis elements with a fixed coefficient sample, all triples.
        for grp in [
            FiniteGroup::metacyclic(3, 2, 0, 2, 256).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
        ] {
            let grp = Arc::new(grp);
            let coeff = [CycloNumber::root_of_unity(4, 1), CycloNumber::from_integer(4, -2)];
            let basis: Vec<AlgebraElement> = grp
                .elements()
                .map(|x| {
                    AlgebraElement::from_terms(&grp, 4, [(x, coeff[x % 2].clone()), (0, CycloNumber::one(4))]).unwrap()
                })
                .collect();
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        assert_eq!(&(x * y) * z, x * &(y * z));
                    }
                }
            }
        }
    }
}
