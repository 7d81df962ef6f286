use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{CycloError, CycloNumber};
use crate::arith::{self, euler_phi, gcd, lcm, units};

/// Image of `Gal(F(zeta_k)/F)` in `U(Z/kZ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisImage {
    pub modulus: usize,
    /// Sorted residues forming a subgroup of `U(Z/kZ)`.
    pub residues: Vec<usize>,
}

impl GaloisImage {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.residues.binary_search(&(t % self.modulus)).is_ok()
    }

    /// True when the image is all of `U(Z/kZ)`.
    pub fn is_full(&self) -> bool {
        self.len() == euler_phi(self.modulus)
    }
}

/// An abelian number field `F = Q(zeta_m)^H`, where `H <= U(Z/mZ)` is the
/// subgroup fixing `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianField {
    conductor: usize,
    generators: Vec<usize>,
    fixing: Vec<usize>,
}

impl AbelianField {
    pub fn rationals() -> Self {
        AbelianField {
            conductor: 1,
            generators: Vec::new(),
            fixing: vec![0],
        }
    }

    pub fn cyclotomic(m: usize) -> Self {
        Self::new(m, &[]).expect("trivial fixing group is always valid")
    }

    /// `Q(zeta_m)^<gens>`; every generator must be a unit modulo `m`.
    pub fn new(m: usize, gens: &[usize]) -> Result<Self, CycloError> {
        if m == 0 {
            return Err(CycloError::InvalidField("conductor must be positive".into()));
        }
        if m == 1 {
            return Ok(Self::rationals());
        }
        if let Some(&bad) = gens.iter().find(|&&t| gcd(t % m, m) != 1) {
            return Err(CycloError::InvalidField(format!(
                "residue {bad} is not a unit modulo {m}"
            )));
        }
        Ok(AbelianField {
            conductor: m,
            generators: gens.to_vec(),
            fixing: arith::unit_subgroup(gens.iter().copied(), m),
        })
    }

    /// Real subfield `Q(zeta_m + zeta_m^-1)`.
    pub fn real_cyclotomic(m: usize) -> Self {
        Self::new(m, &[m - 1]).expect("-1 is a unit")
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn fixing_group(&self) -> &[usize] {
        &self.fixing
    }

    /// `[F:Q]`.
    pub fn degree(&self) -> usize {
        euler_phi(self.conductor) / self.fixing.len()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    fn fixes(&self, s: usize) -> bool {
        self.fixing.binary_search(&(s % self.conductor)).is_ok()
    }

    /// `I_k(F) = { s mod k : s in U(Z/LZ), s mod m in H_F }`, `L = lcm(k, m)`.
    pub fn galois_image(&self, k: usize) -> GaloisImage {
        let l = lcm(k, self.conductor);
        let mut residues: Vec<usize> = units(l).into_iter().filter(|&s| self.fixes(s)).map(|s| s % k).collect();
        residues.sort_unstable();
        residues.dedup();
        GaloisImage { modulus: k, residues }
    }

    /// `tr_{F(zeta_k)/F}(zeta_k^i) = sum_{t in I_k(F)} zeta_k^(i t)`, at level
    /// `lcm(k, m)`.
    pub fn trace(&self, k: usize, i: i64) -> CycloNumber {
        let level = lcm(k, self.conductor);
        let step = (level / k) as i64;
        self.galois_image(k)
            .residues
            .iter()
            .fold(CycloNumber::zero(level), |acc, &t| {
                &acc + &CycloNumber::root_of_unity(level, i * t as i64 * step)
            })
    }

    /// Whether `x` lies in `F`: fixed by every automorphism of
    /// `Q(zeta_lcm(L, m))` restricting into `H_F`.
    pub fn contains(&self, x: &CycloNumber) -> bool {
        let level = lcm(x.level(), self.conductor);
        let y = x.embed(level).expect("lcm is a multiple");
        units(level)
            .into_iter()
            .filter(|&s| self.fixes(s))
            .all(|s| y.galois(s) == y)
    }

    /// `(r, s)`: `r` real embeddings and `2s` complex ones. Abelian fields are
    /// totally real or totally imaginary.
    pub fn signature(&self) -> (usize, usize) {
        let minus_one = (self.conductor - 1) % self.conductor;
        if self.conductor <= 2 || self.fixes(minus_one) {
            (self.degree(), 0)
        } else {
            (0, self.degree() / 2)
        }
    }

    /// `[Q(zeta_k)^A ∩ F : Q]` for a subgroup `A <= U(Z/kZ)`, computed in
    /// `Gal(Q(zeta_L)/Q)` with `L = lcm(k, m)` as the index of the join of the
    /// preimages of `A` and `H_F`.
    pub fn intersect_with_cyclotomic_degree(&self, k: usize, a: &[usize]) -> usize {
        let l = lcm(k, self.conductor);
        let us = units(l);
        let a_set = arith::unit_subgroup(a.iter().copied(), k);
        let lifted: Vec<usize> = us
            .iter()
            .copied()
            .filter(|&s| a_set.binary_search(&(s % k)).is_ok() || self.fixes(s))
            .collect();
        let join = arith::unit_subgroup(lifted, l);
        us.len() / join.len()
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "Q");
        }
        write!(f, "Q(zeta_{})", self.conductor)?;
        if !self.generators.is_empty() {
            let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
            write!(f, "^{{{}}}", gens.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for AbelianField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for AbelianField {
    type Err = CycloError;

    /// Accepts `Q`, `Q(zeta_m)` and `Q(zeta_m)^{t1,t2,...}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CycloError::InvalidField(format!("cannot parse field spec {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" {
            return Ok(Self::rationals());
        }
        let rest = s.strip_prefix("Q(zeta_").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let m: usize = rest[..close].parse().map_err(|_| bad())?;
        let tail = &rest[close + 1..];
        if tail.is_empty() {
            return Self::new(m, &[]);
        }
        let inner = tail
            .strip_prefix("^{")
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let gens = inner
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(m, &gens)
    }
}

/// A finite field `F_q`, `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteField {
    pub q: u64,
    pub characteristic: u64,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self, CycloError> {
        let (p, _) = arith::prime_power(q).ok_or(CycloError::NotAPrimePower(q))?;
        Ok(FiniteField { q, characteristic: p })
    }

    /// `<q mod k>`, the Frobenius image in `U(Z/kZ)`; needs `gcd(q, k) = 1`.
    pub fn galois_image(&self, k: usize) -> GaloisImage {
        let q = (self.q % k as u64) as usize;
        GaloisImage {
            modulus: k,
            residues: arith::unit_subgroup([q], k),
        }
    }
}

/// Coefficient field of a group algebra: the counting machinery only needs
/// the images `I_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Number(AbelianField),
    Finite(FiniteField),
}

impl BaseField {
    pub fn galois_image(&self, k: usize) -> GaloisImage {
        match self {
            BaseField::Number(f) => f.galois_image(k),
            BaseField::Finite(f) => f.galois_image(k),
        }
    }
}

/// Anything with Galois images `I_k` in `U(Z/kZ)`.
pub trait GaloisImages {
    fn image(&self, k: usize) -> GaloisImage;
}

impl GaloisImages for AbelianField {
    fn image(&self, k: usize) -> GaloisImage {
        self.galois_image(k)
    }
}

impl GaloisImages for FiniteField {
    fn image(&self, k: usize) -> GaloisImage {
        self.galois_image(k)
    }
}

impl GaloisImages for BaseField {
    fn image(&self, k: usize) -> GaloisImage {
        self.galois_image(k)
    }
}

impl From<AbelianField> for BaseField {
    fn from(f: AbelianField) -> Self {
        BaseField::Number(f)
    }
}

impl From<FiniteField> for BaseField {
    fn from(f: FiniteField) -> Self {
        BaseField::Finite(f)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Number(field) => field.fmt(f),
            BaseField::Finite(field) => write!(f, "GF({})", field.q),
        }
    }
}
