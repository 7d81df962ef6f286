use serde::Serialize;

use super::{GroupAnalysis, PairTerm, WedderburnError};
use crate::arith::{euler_phi, is_prime, multiplicative_order, prime_power, unit_subgroup};
use crate::cyclo::{AbelianField, GaloisImages};
use crate::group::FiniteGroup;

/// The four equivalent minimality conditions for one strong pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairMinimality {
    pub pair: String,
    pub k: usize,
    /// The pair contributes a single component.
    pub single_component: bool,
    /// `U(Z/kZ) = <I_k(F), U_(H,K)>`.
    pub generated: bool,
    /// `phi(k) = |I_k(F)| |N_G(K)| / |E_F(G, H/K)|`.
    pub index_identity: bool,
    /// `[Q(zeta_k)^{N_G(K)/H} ∩ F : Q] = 1`; number fields only.
    pub trivial_intersection: Option<bool>,
    /// `phi(k) = |I_k(F)|`.
    pub full_image: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub field: String,
    pub minimal: bool,
    pub count: usize,
    pub rational_count: usize,
    /// Every pair has `phi(k) = |I_k(F)|`, which forces minimality.
    pub sufficient_condition: bool,
    /// For abelian `G` of exponent `e`: `|I_e(F)| = phi(e)`.
    pub abelian_criterion: Option<bool>,
    pub pairs: Vec<PairMinimality>,
}

/// Over `F_q`: the same per-pair analysis with `I_k = <q>`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteMinimality {
    pub q: u64,
    pub minimal: bool,
    pub count: usize,
    pub rational_count: usize,
    pub sufficient_condition: bool,
    /// For abelian `G` of exponent `e`: `phi(e) = o_e(q)`.
    pub abelian_criterion: Option<bool>,
    pub pairs: Vec<PairMinimality>,
}

fn pair_minimality<F: GaloisImages + ?Sized>(field: &F, t: &PairTerm) -> Result<PairMinimality, WedderburnError> {
    let image = field.image(t.k);
    let joined = unit_subgroup(image.residues.iter().chain(&t.unit_image).copied(), t.k);
    let row = PairMinimality {
        pair: t.pair.clone(),
        k: t.k,
        single_component: t.count == 1,
        generated: joined.len() == t.phi_k,
        index_identity: t.phi_k * t.stabilizer_order == t.image_order * t.normalizer_order,
        trivial_intersection: t.intersection_degree.map(|d| d == 1),
        full_image: t.phi_k == t.image_order,
    };
    let agree = row.generated == row.single_component
        && row.index_identity == row.single_component
        && row.trivial_intersection.is_none_or(|b| b == row.single_component);
    if !agree {
        return Err(WedderburnError::Inconsistent(format!(
            "minimality conditions disagree for {}: {row:?}",
            t.pair
        )));
    }
    Ok(row)
}

impl GroupAnalysis {
    pub fn minimality_report(&self, field: &AbelianField) -> Result<MinimalityReport, WedderburnError> {
        let count = self.component_count(field)?;
        let pairs = count
            .terms
            .iter()
            .map(|t| pair_minimality(field, t))
            .collect::<Result<Vec<_>, _>>()?;
        let minimal = count.count == self.rational_count();
        if minimal != pairs.iter().all(|p| p.single_component) {
            return Err(WedderburnError::Inconsistent(
                "per-pair and global minimality disagree".into(),
            ));
        }
        let sufficient_condition = pairs.iter().all(|p| p.full_image);
        if sufficient_condition && !minimal {
            return Err(WedderburnError::Inconsistent(
                "sufficient condition holds but count is not minimal".into(),
            ));
        }
        let abelian_criterion = self.group.is_abelian().then(|| {
            let e = self.group.exponent();
            field.galois_image(e).len() == euler_phi(e)
        });
        if abelian_criterion.is_some_and(|c| c != minimal) {
            return Err(WedderburnError::Inconsistent(
                "abelian criterion disagrees with the count".into(),
            ));
        }
        Ok(MinimalityReport {
            field: field.to_string(),
            minimal,
            count: count.count,
            rational_count: self.rational_count(),
            sufficient_condition,
            abelian_criterion,
            pairs,
        })
    }

    pub fn finite_field_minimality(&self, q: u64) -> Result<FiniteMinimality, WedderburnError> {
        let field = self.finite_field(q)?;
        let count = self.finite_field_component_count(q)?;
        let pairs = count
            .terms
            .iter()
            .map(|t| pair_minimality(&field, t))
            .collect::<Result<Vec<_>, _>>()?;
        let minimal = count.count == self.rational_count();
        let sufficient_condition = pairs.iter().all(|p| p.full_image);
        if sufficient_condition && !minimal {
            return Err(WedderburnError::Inconsistent(
                "sufficient condition holds but count is not minimal".into(),
            ));
        }
        let abelian_criterion = self.group.is_abelian().then(|| {
            let e = self.group.exponent();
            let qe = (q % e as u64) as usize;
            multiplicative_order(qe, e) == Some(euler_phi(e))
        });
        if abelian_criterion.is_some_and(|c| c != minimal) {
            return Err(WedderburnError::Inconsistent(
                "abelian criterion disagrees with the count".into(),
            ));
        }
        Ok(FiniteMinimality {
            q,
            minimal,
            count: count.count,
            rational_count: self.rational_count(),
            sufficient_condition,
            abelian_criterion,
            pairs,
        })
    }
}

/// One metacyclic minimality criterion evaluated through field intersections.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryCheck {
    pub name: String,
    /// `(description, holds)` for each field condition.
    pub conditions: Vec<(String, bool)>,
    pub minimal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetacyclicVerdict {
    pub general_minimal: bool,
    pub corollaries: Vec<CorollaryCheck>,
}

/// The two field conditions of the faithful prime-power criterion for
/// `<a>_m x| <b>_n`, `b^-1 a b = a^r`: `Q(zeta_n) ∩ F = Q` and
/// `Q(zeta_m)^<r> ∩ F = Q`. Evaluated without checking the hypotheses.
pub fn faithful_metacyclic_conditions(m: usize, n: usize, r: usize, field: &AbelianField) -> CorollaryCheck {
    let first = field.intersect_with_cyclotomic_degree(n, &[]) == 1;
    let second = field.intersect_with_cyclotomic_degree(m, &[r % m.max(1)]) == 1;
    CorollaryCheck {
        name: "prime-power faithful".into(),
        conditions: vec![
            (format!("Q(zeta_{n}) ∩ F = Q"), first),
            (format!("Q(zeta_{m})^<{r}> ∩ F = Q"), second),
        ],
        minimal: first && second,
    }
}

/// `Q(zeta_n) ∩ F = Q` and `Q(zeta_{qk})^<b> ∩ F = Q` for `m = q` prime,
/// `q ∤ n`, `k = n / o_q(r)`; `b` acts as `s ≡ r (mod q)`, `s ≡ 1 (mod k)`.
fn qn_conditions(q: usize, n: usize, r: usize, field: &AbelianField) -> CorollaryCheck {
    let o = multiplicative_order(r % q, q).expect("r is a unit mod q");
    let k = n / o;
    let qk = q * k;
    let s = (0..qk)
        .find(|&s| s % q == r % q && s % k == 1 % k)
        .expect("q and k are coprime");
    let first = field.intersect_with_cyclotomic_degree(n, &[]) == 1;
    let second = field.intersect_with_cyclotomic_degree(qk, &[s]) == 1;
    CorollaryCheck {
        name: "q-prime".into(),
        conditions: vec![
            (format!("Q(zeta_{n}) ∩ F = Q"), first),
            (format!("Q(zeta_{qk})^<{s}> ∩ F = Q"), second),
        ],
        minimal: first && second,
    }
}

impl GroupAnalysis {
    /// Evaluates every metacyclic criterion whose hypotheses hold for
    /// `(m, n, t, r)` and checks it against the general analysis of the
    /// same group.
    pub fn metacyclic_minimality(
        m: usize,
        n: usize,
        t: usize,
        r: usize,
        field: &AbelianField,
        max_order: usize,
    ) -> Result<MetacyclicVerdict, WedderburnError> {
        let g = FiniteGroup::metacyclic(m, n, t, r, max_order)?;
        let general_minimal = GroupAnalysis::new(g, max_order)?.minimality_report(field)?.minimal;
        let split = t.is_multiple_of(m);
        let mut corollaries = Vec::new();
        if split && is_prime(m as u64) && !n.is_multiple_of(m) {
            corollaries.push(qn_conditions(m, n, r, field));
        }
        if split {
            if let (Some((q, _)), Some((p, _))) = (prime_power(m as u64), prime_power(n as u64)) {
                if p != q && multiplicative_order(r % m, m) == Some(n) {
                    corollaries.push(faithful_metacyclic_conditions(m, n, r, field));
                }
            }
        }
        if corollaries.is_empty() {
            return Err(WedderburnError::HypothesesNotMet { general_minimal });
        }
        if let Some(c) = corollaries.iter().find(|c| c.minimal != general_minimal) {
            return Err(WedderburnError::Inconsistent(format!(
                "{} criterion gives minimal = {} but the general analysis gives {general_minimal}",
                c.name, c.minimal
            )));
        }
        Ok(MetacyclicVerdict {
            general_minimal,
            corollaries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports() {
        let s3 = GroupAnalysis::new(FiniteGroup::dihedral(3).unwrap(), 256).unwrap();
        let r = s3.minimality_report(&AbelianField::cyclotomic(3)).unwrap();
        assert!(r.minimal && !r.sufficient_condition);
        assert!(s3.minimality_report(&AbelianField::rationals()).unwrap().minimal);

        let c4 = GroupAnalysis::new(FiniteGroup::cyclic(4).unwrap(), 256).unwrap();
        let r = c4.minimality_report(&AbelianField::cyclotomic(4)).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.abelian_criterion, Some(false));
    }

    #[test]
    fn finite_minimality() {
        let c3 = GroupAnalysis::new(FiniteGroup::cyclic(3).unwrap(), 256).unwrap();
        let r = c3.finite_field_minimality(4).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.count, 3);
        assert!(c3.finite_field_minimality(2).unwrap().minimal);
    }

    #[test]
    fn metacyclic_criteria() {
        let q3 = AbelianField::cyclotomic(3);
        let v = GroupAnalysis::metacyclic_minimality(3, 4, 0, 2, &q3, 256).unwrap();
        assert!(v.general_minimal);
        assert_eq!(v.corollaries.len(), 1);
        assert_eq!(v.corollaries[0].name, "q-prime");
        let f = faithful_metacyclic_conditions(3, 4, 2, &q3);
        assert!(f.minimal);

        let v = GroupAnalysis::metacyclic_minimality(3, 2, 0, 2, &q3, 256).unwrap();
        assert!(v.general_minimal);
        assert_eq!(v.corollaries.len(), 2);

        let v = GroupAnalysis::metacyclic_minimality(7, 3, 0, 2, &AbelianField::cyclotomic(3), 256).unwrap();
        assert!(!v.general_minimal);

        assert!(matches!(
            GroupAnalysis::metacyclic_minimality(4, 2, 2, 3, &q3, 256),
            Err(WedderburnError::HypothesesNotMet { .. })
        ));
    }
}
