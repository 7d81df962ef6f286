use serde::Serialize;

use super::{GroupAnalysis, WedderburnError};
use crate::algebra::AlgebraElement;
use crate::arith::unit_subgroup;
use crate::cyclo::AbelianField;
use crate::group::{CyclicSection, FiniteGroup, Subgroup};
use crate::shoda::{ambient_level, e_c_sum, CyclotomicClass};

/// Action and twisting of `F(zeta_k) *_tau^sigma E/H` for a fixed choice of
/// coset representatives `phi(xH)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossedProductData {
    /// `phi(xH)` for the cosets of `H` in `E`, in coset order.
    pub representatives: Vec<usize>,
    /// `i_x` with `phi(x)^-1 h phi(x) K = h^(i_x) K`.
    pub action: Vec<usize>,
    /// `j(x, y)` with `phi(xy)^-1 phi(x) phi(y) = h^j(x,y) K`.
    pub twisting: Vec<Vec<usize>>,
    /// Multiplication table of `E/H` on coset indices.
    #[serde(skip)]
    pub quotient_table: Vec<Vec<usize>>,
}

impl CrossedProductData {
    /// `x -> i_x` is a homomorphism `E/H -> U(Z/kZ)`.
    pub fn action_is_homomorphism(&self, k: usize) -> bool {
        let n = self.action.len();
        (0..n).all(|x| {
            (0..n).all(|y| self.action[self.quotient_table[x][y]] == self.action[x] * self.action[y] % k.max(1))
        })
    }

    pub fn action_is_faithful(&self) -> bool {
        let mut seen = self.action.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.action.len()
    }

    /// `j(xy, z) + i_z j(x, y) = j(x, yz) + j(y, z)` modulo `k`.
    pub fn satisfies_cocycle_identity(&self, k: usize) -> bool {
        let k = k.max(1);
        let n = self.action.len();
        let m = &self.quotient_table;
        let j = &self.twisting;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| (j[m[x][y]][z] + self.action[z] * j[x][y]) % k == (j[x][m[y][z]] + j[y][z]) % k)
            })
        })
    }

    /// `{ i_x }` as a subgroup of `U(Z/kZ)`.
    pub fn action_image(&self, k: usize) -> Vec<usize> {
        unit_subgroup(self.action.iter().copied(), k)
    }
}

/// Action and twisting for the section `H/K` inside `E`, using the given
/// representatives of `E/H` (one per coset, in the quotient's coset order).
pub fn crossed_product_data(
    g: &FiniteGroup,
    section: &CyclicSection,
    stabilizer: &Subgroup,
    representatives: Option<&[usize]>,
) -> Result<CrossedProductData, WedderburnError> {
    let quotient = g.section_quotient(stabilizer, section.upper())?;
    let reps: Vec<usize> = match representatives {
        Some(r) => r.to_vec(),
        None => quotient.representatives().to_vec(),
    };
    let n = quotient.group.order();
    if reps.len() != n || reps.iter().enumerate().any(|(c, &x)| quotient.project(x) != Some(c)) {
        return Err(WedderburnError::Inconsistent(
            "representatives do not match the cosets".into(),
        ));
    }
    let h = section.generator();
    let exponent = |x: usize| section.coset_exponent(x).expect("element of H");
    let action = reps.iter().map(|&x| exponent(g.conj(h, x))).collect();
    let quotient_table = quotient.group.multiplication_table();
    let twisting = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let xy = quotient_table[x][y];
                    exponent(g.mul(g.inv(reps[xy]), g.mul(reps[x], reps[y])))
                })
                .collect()
        })
        .collect();
    Ok(CrossedProductData {
        representatives: reps,
        action,
        twisting,
        quotient_table,
    })
}

/// One simple component `M_[G:E](F(zeta_k) *_tau^sigma E/H)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentDescriptor {
    pub pair: String,
    #[serde(rename = "H")]
    pub upper: Subgroup,
    #[serde(rename = "K")]
    pub lower: Subgroup,
    pub generator: usize,
    pub class: CyclotomicClass,
    /// `[G:E]`.
    pub degree: usize,
    pub k: usize,
    /// `[E:H]`.
    pub grading_order: usize,
    /// `[F(zeta_k):F] = |I_k(F)|`.
    pub field_degree: usize,
    #[serde(flatten)]
    pub crossed_product: CrossedProductData,
    /// The centre is `F(zeta_k)^{action image}`.
    pub center_image: Vec<usize>,
    pub idempotent: String,
    #[serde(skip)]
    pub element: AlgebraElement,
    #[serde(skip)]
    pub stabilizer: Subgroup,
}

impl ComponentDescriptor {
    /// `F`-dimension of the component: `[G:E]^2 [E:H] [F(zeta_k):F]`.
    pub fn dimension(&self) -> usize {
        self.degree * self.degree * self.grading_order * self.field_degree
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub exponent: usize,
    pub id: String,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSummary {
            order: g.order(),
            exponent: g.exponent(),
            id: g.fingerprint(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub field: String,
    pub group: GroupSummary,
    pub components: Vec<ComponentDescriptor>,
    pub count: usize,
    pub oracle: usize,
    pub minimal: bool,
    pub rank: i64,
}

impl GroupAnalysis {
    /// One descriptor per strong pair and orbit of `N_G(K)` on `C_F(H/K)`.
    /// The idempotents are checked to be central, idempotent, pairwise
    /// orthogonal and to sum to `1`.
    pub fn decomposition(&self, field: &AbelianField) -> Result<DecompositionReport, WedderburnError> {
        let components = self.components(field)?;
        let g = &self.group;
        let level = ambient_level(g, field);
        let one = AlgebraElement::identity(g, level);
        let total = components
            .iter()
            .fold(AlgebraElement::zero(g, level), |acc, c| &acc + &c.element);
        if total != one {
            return Err(WedderburnError::Inconsistent(format!(
                "idempotents sum to {total} rather than 1"
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.element.is_central() || !c.element.is_idempotent() {
                return Err(WedderburnError::Inconsistent(format!(
                    "e_C for {} and class {} is not a central idempotent",
                    c.pair, c.class
                )));
            }
            for d in &components[i + 1..] {
                if !(&c.element * &d.element).is_zero() {
                    return Err(WedderburnError::Inconsistent(format!(
                        "idempotents for {} and {} are not orthogonal",
                        c.pair, d.pair
                    )));
                }
            }
        }
        let count = self.component_count(field)?;
        if count.count != components.len() {
            return Err(WedderburnError::Inconsistent(format!(
                "{} descriptors but count {}",
                components.len(),
                count.count
            )));
        }
        let dimension: usize = components.iter().map(ComponentDescriptor::dimension).sum();
        if dimension != g.order() {
            return Err(WedderburnError::Inconsistent(format!(
                "component dimensions sum to {dimension}, not |G| = {}",
                g.order()
            )));
        }
        let minimal = count.count == self.rational_count();
        let rank = self.central_unit_rank(field)?.rank;
        Ok(DecompositionReport {
            field: field.to_string(),
            group: GroupSummary::of(g),
            count: components.len(),
            oracle: count.oracle,
            minimal,
            rank,
            components,
        })
    }

    /// The descriptors without the global checks of [`Self::decomposition`].
    pub fn components(&self, field: &AbelianField) -> Result<Vec<ComponentDescriptor>, WedderburnError> {
        let g = &self.group;
        let level = ambient_level(g, field);
        let terms = self.pair_terms(field, Some(field))?;
        let mut out = Vec::new();
        for (pair, term) in self.pairs.iter().zip(terms) {
            let data = crossed_product_data(g, &pair.section, &term.stabilizer, None)?;
            let k = pair.index();
            for class in &term.representatives {
                let element = e_c_sum(g, field, level, &pair.section, class)?;
                out.push(ComponentDescriptor {
                    pair: term.pair.clone(),
                    upper: pair.upper().clone(),
                    lower: pair.lower().clone(),
                    generator: pair.section.generator(),
                    class: class.clone(),
                    degree: g.order() / term.stabilizer.order(),
                    k,
                    grading_order: term.stabilizer.order() / pair.upper().order(),
                    field_degree: term.image_order,
                    center_image: data.action_image(k),
                    crossed_product: data.clone(),
                    idempotent: element.to_string(),
                    element,
                    stabilizer: term.stabilizer.clone(),
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_over_q_zeta_3() {
        let a = GroupAnalysis::new(FiniteGroup::dihedral(3).unwrap(), 256).unwrap();
        let report = a.decomposition(&AbelianField::cyclotomic(3)).unwrap();
        assert_eq!(report.count, 3);
        assert!(report.minimal);
        let mut degrees: Vec<usize> = report.components.iter().map(|c| c.degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2]);
        let big = report.components.iter().find(|c| c.degree == 2).unwrap();
        assert_eq!(big.k, 3);
        assert_eq!(big.upper.order(), 3);
        assert_eq!(big.grading_order, 1);
    }

    #[test]
    fn c4_over_q() {
        let a = GroupAnalysis::new(FiniteGroup::cyclic(4).unwrap(), 256).unwrap();
        let report = a.decomposition(&AbelianField::rationals()).unwrap();
        let mut ks: Vec<usize> = report.components.iter().map(|c| c.k).collect();
        ks.sort_unstable();
        assert_eq!(ks, vec![1, 2, 4]);
        assert!(report.components.iter().all(|c| c.degree == 1));
        let json = serde_json::to_value(&report).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
    }

    #[test]
    fn trivial_group() {
        let a = GroupAnalysis::new(FiniteGroup::cyclic(1).unwrap(), 256).unwrap();
        let report = a.decomposition(&AbelianField::cyclotomic(5)).unwrap();
        assert_eq!(report.count, 1);
        assert_eq!(report.components[0].k, 1);
    }

    #[test]
    fn crossed_product_for_quaternions() {
        // Q8 over Q: the pair (<i>, 1) gives H = Q(i) * C2, the quaternion algebra.
        let q8 = FiniteGroup::dicyclic(2).unwrap();
        let a = GroupAnalysis::new(q8, 256).unwrap();
        let comps = a.components(&AbelianField::rationals()).unwrap();
        let c = comps.iter().find(|c| c.k == 4).unwrap();
        assert_eq!((c.degree, c.grading_order, c.field_degree), (1, 2, 2));
        assert_eq!(c.crossed_product.action, vec![1, 3]);
        assert_eq!(c.crossed_product.twisting[1][1], 2);
        assert!(c.crossed_product.satisfies_cocycle_identity(4));
        assert!(c.crossed_product.action_is_homomorphism(4));
        assert!(c.crossed_product.action_is_faithful());
    }

    #[test]
    fn other_representatives_change_tau_by_a_coboundary() {
        let g = FiniteGroup::dicyclic(2).unwrap();
        let a = GroupAnalysis::new(g.clone(), 256).unwrap();
        for c in a.components(&AbelianField::rationals()).unwrap() {
            let h = c.generator;
            let k = c.k;
            let section = CyclicSection::with_generator(&g, &c.upper, &c.lower, h).unwrap();
            let base = &c.crossed_product;
            let shifts: Vec<usize> = (0..base.representatives.len()).map(|x| (x + 1) % k.max(1)).collect();
            let reps: Vec<usize> = base
                .representatives
                .iter()
                .zip(&shifts)
                .map(|(&r, &s)| g.mul(r, g.pow(h, s as i64)))
                .collect();
            let other = crossed_product_data(&g, &section, &c.stabilizer, Some(&reps)).unwrap();
            assert_eq!(other.action, base.action);
            let n = reps.len();
            for x in 0..n {
                for y in 0..n {
                    let xy = base.quotient_table[x][y];
                    let expected =
                        (base.twisting[x][y] + base.action[y] * shifts[x] + shifts[y] + k * k - shifts[xy]) % k.max(1);
                    assert_eq!(other.twisting[x][y], expected);
                }
            }
            assert!(other.satisfies_cocycle_identity(k));
        }
    }
}
