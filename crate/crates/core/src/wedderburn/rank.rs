use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{count_class_orbits, GroupAnalysis, WedderburnError};
use crate::cyclo::AbelianField;
use crate::group::{CyclicSection, FiniteGroup, Subgroup};

/// `1` if `h (n^-1 h n)` lies in `K` for some `n` in `N_G(K)`, else `2`.
pub fn k_hk(g: &FiniteGroup, section: &CyclicSection, normalizer: &Subgroup, h: usize) -> usize {
    let inverted = normalizer
        .members()
        .iter()
        .any(|n| section.lower().contains(g.mul(h, g.conj(h, n))));
    if inverted {
        1
    } else {
        2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankTerm {
    pub pair: String,
    pub k: usize,
    pub k_hk: usize,
    /// `phi(k)/|N_G(K)| (|H|/k_HK - |E_F|/|I_k(F)|)`.
    pub term: String,
    /// `phi(k)/(k_HK [N_G(K):H]) - 1`, the pair's share of the rank over `Z`.
    pub integral_term: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub field: String,
    pub r: usize,
    pub s: usize,
    pub r_real: usize,
    pub r_complex: usize,
    pub r_field: usize,
    pub rank: i64,
    /// `r r_R + s r_C - r_F`.
    pub cross_check: i64,
    /// Rank of the central units of `ZG`.
    pub integral_rank: i64,
    pub terms: Vec<RankTerm>,
}

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_i64(x: &BigRational, what: &str) -> Result<i64, WedderburnError> {
    if !x.is_integer() {
        return Err(WedderburnError::Inconsistent(format!("{what} = {x} is not an integer")));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| WedderburnError::Inconsistent(format!("{what} overflows")))
}

impl GroupAnalysis {
    /// `r_R(G)`: classes up to `g ~ g^-1`.
    pub fn real_class_count(&self) -> usize {
        let e = self.group.exponent();
        count_class_orbits(&self.group, &self.classes, &[e - 1])
    }

    /// Rank of `Z(U(RG))` for `R` the integers of `F`, from the pair formula,
    /// checked against `r r_R(G) + s r_C(G) - r_F(G)`.
    pub fn central_unit_rank(&self, field: &AbelianField) -> Result<RankReport, WedderburnError> {
        let g = &self.group;
        let (r, s) = field.signature();
        let r_real = self.real_class_count();
        let r_complex = self.classes.len();
        let count = self.component_count(field)?;
        let mut total = BigRational::from_integer(BigInt::from(r as i64 - 1) * r_real + BigInt::from(s * r_complex));
        let mut integral = BigRational::zero();
        let mut terms = Vec::new();
        for (pair, t) in self.pairs.iter().zip(&count.terms) {
            let khk = k_hk(g, &pair.section, &pair.normalizer, pair.section.generator());
            let term = ratio(t.phi_k, t.normalizer_order)
                * (ratio(t.upper_order, khk) - ratio(t.stabilizer_order, t.image_order));
            let integral_term =
                ratio(t.phi_k * t.upper_order, khk * t.normalizer_order) - BigRational::from_integer(1.into());
            total += &term;
            integral += &integral_term;
            terms.push(RankTerm {
                pair: t.pair.clone(),
                k: t.k,
                k_hk: khk,
                term: term.to_string(),
                integral_term: integral_term.to_string(),
            });
        }
        let rank = to_i64(&total, "rank")?;
        let cross_check = (r * r_real + s * r_complex) as i64 - count.count as i64;
        if rank != cross_check {
            return Err(WedderburnError::Inconsistent(format!(
                "pair formula gives rank {rank} but r r_R + s r_C - r_F = {cross_check}"
            )));
        }
        let integral_rank = to_i64(&integral, "integral rank")?;
        if integral_rank != r_real as i64 - self.rational_count() as i64 {
            return Err(WedderburnError::Inconsistent(format!(
                "integral rank {integral_rank} differs from r_R - r_Q"
            )));
        }
        Ok(RankReport {
            field: field.to_string(),
            r,
            s,
            r_real,
            r_complex,
            r_field: count.count,
            rank,
            cross_check,
            integral_rank,
            terms,
        })
    }
}
