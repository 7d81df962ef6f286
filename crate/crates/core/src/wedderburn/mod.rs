//! Simple components of `FG` for strongly monomial `G`: descriptors, counts,
//! minimality of the count, finite coefficient fields and central unit rank.

mod decompose;
mod minimal;
mod rank;

pub use decompose::{crossed_product_data, ComponentDescriptor, CrossedProductData, DecompositionReport, GroupSummary};
pub use minimal::{
    faithful_metacyclic_conditions, CorollaryCheck, FiniteMinimality, MetacyclicVerdict, MinimalityReport,
    PairMinimality,
};
pub use rank::{k_hk, RankReport, RankTerm};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{euler_phi, gcd};
use crate::cyclo::{AbelianField, BaseField, CycloError, FiniteField, GaloisImages};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::shoda::{
    representative_classes, stabilizer_ef, strong_shoda_pairs, CyclotomicClass, ShodaError, StrongPair,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedderburnError {
    #[error(transparent)]
    Shoda(#[from] ShodaError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("characteristic {p} divides the group order {order}")]
    CharacteristicDividesOrder { p: u64, order: usize },
    #[error("corollary hypotheses do not hold; general verdict: minimal = {general_minimal}")]
    HypothesesNotMet { general_minimal: bool },
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

impl From<crate::algebra::AlgebraError> for WedderburnError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        WedderburnError::Shoda(e.into())
    }
}

/// A strongly monomial group with a complete set of strong Shoda pairs.
/// Field-independent, so one analysis serves every coefficient field.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    group: Arc<FiniteGroup>,
    pairs: Vec<StrongPair>,
    classes: Vec<Vec<usize>>,
}

/// One strong Shoda pair's share of the component count over a field.
#[derive(Clone, Debug, Serialize)]
pub struct PairTerm {
    pub pair: String,
    pub k: usize,
    pub phi_k: usize,
    /// `|I_k(F)|`.
    pub image_order: usize,
    /// `|E_F(G, H/K)|`.
    pub stabilizer_order: usize,
    /// `|N_G(K)|`.
    pub normalizer_order: usize,
    pub upper_order: usize,
    /// `U_(H,K)`.
    pub unit_image: Vec<usize>,
    /// `phi(k)/|I_k(F)| * |E|/|N|`.
    pub count: usize,
    /// `[Q(zeta_k)^{N_G(K)/H} ∩ F : Q]`; number fields only.
    pub intersection_degree: Option<usize>,
    #[serde(skip)]
    pub stabilizer: Subgroup,
    #[serde(skip)]
    pub representatives: Vec<CyclotomicClass>,
}

/// Component count with its per-pair breakdown and the class oracle.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub field: String,
    pub count: usize,
    pub oracle: usize,
    pub rational_count: usize,
    pub terms: Vec<PairTerm>,
}

impl GroupAnalysis {
    /// Fails with `NotStronglyMonomialOrIncomplete` when strong Shoda pairs do
    /// not account for all of `QG`.
    pub fn new(group: FiniteGroup, max_order: usize) -> Result<Self, WedderburnError> {
        Self::from_arc(Arc::new(group), max_order)
    }

    pub fn from_arc(group: Arc<FiniteGroup>, max_order: usize) -> Result<Self, WedderburnError> {
        let pairs = strong_shoda_pairs(&group, max_order)?;
        let classes = group.conjugacy_classes();
        Ok(GroupAnalysis { group, pairs, classes })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn pairs(&self) -> &[StrongPair] {
        &self.pairs
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// `r_Q(G)`: one component per strong pair.
    pub fn rational_count(&self) -> usize {
        self.pairs.len()
    }

    pub(crate) fn pair_label(&self, p: &StrongPair) -> String {
        crate::shoda::pair_label(&self.group, p.upper(), p.lower())
    }

    /// Per-pair counting data over any field with Galois images.
    pub fn pair_terms<F: GaloisImages + ?Sized>(
        &self,
        field: &F,
        number_field: Option<&AbelianField>,
    ) -> Result<Vec<PairTerm>, WedderburnError> {
        self.pairs
            .iter()
            .map(|p| {
                let k = p.index();
                let image = field.image(k);
                let stabilizer = stabilizer_ef(&self.group, field, &p.section);
                let unit_image = p.unit_image(&self.group);
                let phi_k = euler_phi(k);
                let num = phi_k * stabilizer.order();
                let den = image.len() * p.normalizer.order();
                if !num.is_multiple_of(den) {
                    return Err(WedderburnError::Inconsistent(format!(
                        "count term for {} is not an integer: {num}/{den}",
                        self.pair_label(p)
                    )));
                }
                let representatives = representative_classes(field, k, &unit_image);
                if representatives.len() != num / den {
                    return Err(WedderburnError::Inconsistent(format!(
                        "{} has {} class orbits but count term {}",
                        self.pair_label(p),
                        representatives.len(),
                        num / den
                    )));
                }
                Ok(PairTerm {
                    pair: self.pair_label(p),
                    k,
                    phi_k,
                    image_order: image.len(),
                    stabilizer_order: stabilizer.order(),
                    normalizer_order: p.normalizer.order(),
                    upper_order: p.upper().order(),
                    intersection_degree: number_field.map(|f| f.intersect_with_cyclotomic_degree(k, &unit_image)),
                    unit_image,
                    count: num / den,
                    stabilizer,
                    representatives,
                })
            })
            .collect()
    }

    /// `r_F(G)` by both forms of the counting formula, checked against each
    /// other pair by pair and against the `F`-class oracle.
    pub fn component_count(&self, field: &AbelianField) -> Result<CountReport, WedderburnError> {
        let terms = self.pair_terms(field, Some(field))?;
        for t in &terms {
            if t.intersection_degree != Some(t.count) {
                return Err(WedderburnError::Inconsistent(format!(
                    "{}: count term {} but intersection degree {:?}",
                    t.pair, t.count, t.intersection_degree
                )));
            }
        }
        self.finish_count(field.to_string(), terms, field)
    }

    /// `r_{F_q}(G)`, with `I_k` replaced by `<q mod k>`.
    pub fn finite_field_component_count(&self, q: u64) -> Result<CountReport, WedderburnError> {
        let field = self.finite_field(q)?;
        let terms = self.pair_terms(&field, None)?;
        self.finish_count(BaseField::from(field).to_string(), terms, &field)
    }

    pub(crate) fn finite_field(&self, q: u64) -> Result<FiniteField, WedderburnError> {
        let field = FiniteField::new(q)?;
        if gcd(field.characteristic as usize, self.group.order()) != 1 {
            return Err(WedderburnError::CharacteristicDividesOrder {
                p: field.characteristic,
                order: self.group.order(),
            });
        }
        Ok(field)
    }

    fn finish_count<F: GaloisImages + ?Sized>(
        &self,
        name: String,
        terms: Vec<PairTerm>,
        field: &F,
    ) -> Result<CountReport, WedderburnError> {
        let count = terms.iter().map(|t| t.count).sum();
        let oracle = f_class_count(&self.group, &self.classes, field);
        if count != oracle {
            return Err(WedderburnError::Inconsistent(format!(
                "component count {count} disagrees with the class oracle {oracle}"
            )));
        }
        Ok(CountReport {
            field: name,
            count,
            oracle,
            rational_count: self.rational_count(),
            terms,
        })
    }
}

/// Number of `F`-conjugacy classes: orbits of the conjugacy classes under
/// `g -> g^t` for `t` in `I_e(F)`, `e = exp(G)`.
pub fn f_class_count_oracle<F: GaloisImages + ?Sized>(g: &FiniteGroup, field: &F) -> usize {
    f_class_count(g, &g.conjugacy_classes(), field)
}

fn f_class_count<F: GaloisImages + ?Sized>(g: &FiniteGroup, classes: &[Vec<usize>], field: &F) -> usize {
    let image = field.image(g.exponent());
    count_class_orbits(g, classes, &image.residues)
}

/// Orbits of conjugacy classes under the power maps `g -> g^t`, `t` in `powers`.
pub(crate) fn count_class_orbits(g: &FiniteGroup, classes: &[Vec<usize>], powers: &[usize]) -> usize {
    let mut class_of = vec![0; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let mut seen = vec![false; classes.len()];
    let mut orbits = 0;
    for i in 0..classes.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![i];
        seen[i] = true;
        while let Some(c) = stack.pop() {
            let x = classes[c][0];
            for &t in powers {
                let d = class_of[g.pow(x, t as i64)];
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
    }
    orbits
}

/// `wedderburn_decomposition` for a group given by value.
pub fn wedderburn_decomposition(
    group: FiniteGroup,
    field: &AbelianField,
    max_order: usize,
) -> Result<DecompositionReport, WedderburnError> {
    GroupAnalysis::new(group, max_order)?.decomposition(field)
}

pub fn component_count(
    group: FiniteGroup,
    field: &AbelianField,
    max_order: usize,
) -> Result<CountReport, WedderburnError> {
    GroupAnalysis::new(group, max_order)?.component_count(field)
}

pub fn finite_field_component_count(
    group: FiniteGroup,
    q: u64,
    max_order: usize,
) -> Result<CountReport, WedderburnError> {
    GroupAnalysis::new(group, max_order)?.finite_field_component_count(q)
}

pub fn central_unit_rank(
    group: FiniteGroup,
    field: &AbelianField,
    max_order: usize,
) -> Result<RankReport, WedderburnError> {
    GroupAnalysis::new(group, max_order)?.central_unit_rank(field)
}

pub fn minimality_report(
    group: FiniteGroup,
    field: &AbelianField,
    max_order: usize,
) -> Result<MinimalityReport, WedderburnError> {
    GroupAnalysis::new(group, max_order)?.minimality_report(field)
}
