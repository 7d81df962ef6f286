//! Shoda pairs, the idempotents `eps(H,K)`, `eps_C(H,K)`, their conjugate
//! sums `e` and `e_C`, and the search for a complete set of strong pairs.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::arith::{lcm, unit_orbits, unit_subgroup};
use crate::cyclo::{AbelianField, CycloNumber, GaloisImages};
use crate::group::{CyclicSection, FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShodaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("(H, K) is not a Shoda pair")]
    NotAShodaPair,
    #[error("internal check failed: {0}")]
    VerificationFailed(String),
    #[error(
        "strong Shoda pairs do not account for every simple component; found {} pair(s), residual 1 - sum e = {residual}",
        found.len()
    )]
    NotStronglyMonomialOrIncomplete { found: Vec<String>, residual: String },
}

/// An orbit of `I_k(F)` acting on `U(Z/kZ)`: a Galois class of faithful
/// linear characters of `H/K`, with `chi(hK) = zeta_k^representative` for the
/// section's stored generator `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicClass {
    pub modulus: usize,
    pub orbit: Vec<usize>,
    pub representative: usize,
}

impl Serialize for CyclotomicClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CyclotomicClass", 2)?;
        s.serialize_field("k", &self.modulus)?;
        s.serialize_field("orbit", &self.orbit)?;
        s.end()
    }
}

/// Orbits of `I_k(F)` on `U(Z/kZ)`, ordered by least member.
pub fn cyclotomic_classes<F: GaloisImages + ?Sized>(field: &F, k: usize) -> Vec<CyclotomicClass> {
    let image = field.image(k);
    unit_orbits(&image.residues, k)
        .into_iter()
        .map(|orbit| CyclotomicClass {
            modulus: k,
            representative: orbit[0],
            orbit,
        })
        .collect()
}

/// `lcm(exp G, conductor F)`: every coefficient of every idempotent lives in
/// this cyclotomic field.
pub fn ambient_level(g: &FiniteGroup, field: &AbelianField) -> usize {
    lcm(g.exponent(), field.conductor())
}

/// `eps(H, K) = K^` when `H = K`, else `K^ prod (1 - M^)` over the `M` with
/// `M/K` minimal normal in `H/K`.
pub fn epsilon(g: &Arc<FiniteGroup>, level: usize, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement, ShodaError> {
    let minimal = g.minimal_normal_above_in(h, k)?;
    let one = AlgebraElement::identity(g, level);
    Ok(minimal.iter().fold(AlgebraElement::hat(g, level, k), |acc, m| {
        &acc * &(&one - &AlgebraElement::hat(g, level, m))
    }))
}

/// `eps_C(H, K) = (1/|H|) sum_{x in H} tr(chi(xK)) x^-1` with `chi` in `class`.
pub fn epsilon_c(
    g: &Arc<FiniteGroup>,
    field: &AbelianField,
    level: usize,
    section: &CyclicSection,
    class: &CyclotomicClass,
) -> Result<AlgebraElement, ShodaError> {
    let k = section.index();
    let traces = (0..k)
        .map(|i| {
            let t = field.trace(k, (i * class.representative) as i64);
            t.embed(level).map_err(|_| AlgebraError::LevelMismatch {
                found: t.level(),
                ambient: level,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inv_order = BigRational::new(BigInt::one(), BigInt::from(section.upper().order()));
    let terms = section.upper().members().iter().map(|x| {
        let i = section.coset_exponent(x).expect("x lies in H");
        (g.inv(x), traces[i].scale(&inv_order))
    });
    Ok(AlgebraElement::from_terms(g, level, terms)?)
}

/// `e(G, H, K)`: the sum of the distinct `G`-conjugates of `eps(H, K)`.
pub fn e_sum(g: &Arc<FiniteGroup>, level: usize, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement, ShodaError> {
    Ok(epsilon(g, level, h, k)?.sum_of_distinct_conjugates())
}

/// `e_C(G, H, K)`: the sum of the distinct `G`-conjugates of `eps_C(H, K)`.
pub fn e_c_sum(
    g: &Arc<FiniteGroup>,
    field: &AbelianField,
    level: usize,
    section: &CyclicSection,
    class: &CyclotomicClass,
) -> Result<AlgebraElement, ShodaError> {
    Ok(epsilon_c(g, field, level, section, class)?.sum_of_distinct_conjugates())
}

/// `K <| H`, `H/K` cyclic, and `[H, x] ∩ H ⊆ K` only for `x` in `H`.
pub fn is_shoda_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    if CyclicSection::new(g, h, k).is_err() {
        return false;
    }
    g.elements().filter(|&x| !h.contains(x)).all(|x| {
        let c = g.commutator_closure(h, x);
        !g.intersection(&c, h).is_subgroup_of(k)
    })
}

/// Checks the three strong Shoda pair conditions; orthogonality is tested by
/// explicit multiplication in `QG`.
pub fn is_strong_shoda_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> bool {
    let normalizer = g.normalizer(k);
    strong_pair_conditions(g, h, k, &normalizer).is_some()
}

/// Returns the section when `(H, K)` is a strong Shoda pair with
/// `normalizer = N_G(K)`.
fn strong_pair_conditions(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
    normalizer: &Subgroup,
) -> Option<CyclicSection> {
    if !k.is_subgroup_of(h) || !g.is_normal_in(h, normalizer) {
        return None;
    }
    let section = CyclicSection::new(g, h, k).ok()?;
    let hgen = section.generator();
    let maximal_abelian = normalizer
        .members()
        .iter()
        .filter(|&x| !h.contains(x))
        .all(|x| !k.contains(g.commutator(hgen, x)));
    if !maximal_abelian {
        return None;
    }
    let eps = epsilon(g, 1, h, k).ok()?;
    let orthogonal = right_coset_representatives(g, normalizer)
        .into_iter()
        .filter(|&x| !normalizer.contains(x))
        .all(|x| (&eps * &eps.conjugate_by(x)).is_zero());
    orthogonal.then_some(section)
}

/// Least element of every right coset `Sx`.
pub fn right_coset_representatives(g: &FiniteGroup, s: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for n in s.members().iter() {
            seen[g.mul(n, x)] = true;
        }
    }
    reps
}

/// The exponents `i` with `x^-1 h x in h^i K` for `x` in `ambient`, which must
/// normalize both `H` and `K`.
pub fn unit_image(g: &FiniteGroup, section: &CyclicSection, ambient: &Subgroup) -> Vec<usize> {
    let h = section.generator();
    let mut out: Vec<usize> = ambient
        .members()
        .iter()
        .map(|x| section.coset_exponent(g.conj(h, x)).expect("ambient normalizes H") % section.index().max(1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `E_F(G, H/K)`: the elements of `N_G(H) ∩ N_G(K)` acting on `H/K` by an
/// exponent in `I_k(F)`.
pub fn stabilizer_ef<F: GaloisImages + ?Sized>(g: &FiniteGroup, field: &F, section: &CyclicSection) -> Subgroup {
    let n = g.intersection(&g.normalizer(section.upper()), &g.normalizer(section.lower()));
    let image = field.image(section.index());
    let h = section.generator();
    let elems: Vec<usize> = n
        .members()
        .iter()
        .filter(|&x| {
            let i = section.coset_exponent(g.conj(h, x)).expect("x normalizes H");
            image.contains(i)
        })
        .collect();
    g.subgroup_generated(&elems)
}

/// `Cen_G(alpha) = { x : alpha^x = alpha }`.
pub fn centralizer_of(alpha: &AlgebraElement) -> Subgroup {
    let g = alpha.group();
    let elems: Vec<usize> = g.elements().filter(|&x| &alpha.conjugate_by(x) == alpha).collect();
    g.subgroup_generated(&elems)
}

/// Values of the induced character `chi^G` at every element, at level `k`,
/// where `chi(h^i K) = zeta_k^(i * exponent)`.
pub fn induced_character(g: &FiniteGroup, section: &CyclicSection, exponent: usize) -> Vec<CycloNumber> {
    let k = section.index();
    g.elements()
        .map(|x| {
            let mut raw = vec![BigInt::from(0); k];
            for y in g.elements() {
                if let Some(i) = section.coset_exponent(g.conj(x, g.inv(y))) {
                    raw[(i * exponent) % k] += 1;
                }
            }
            CycloNumber::from_raw(k, raw, BigInt::from(section.upper().order()))
        })
        .collect()
}

/// `([Cen_G(eps_C) : H], [F(chi) : F(chi^G)])` for a Shoda pair.
pub fn idempotent_coefficient(
    g: &FiniteGroup,
    field: &AbelianField,
    section: &CyclicSection,
    class: &CyclotomicClass,
    eps_c: &AlgebraElement,
) -> (usize, usize) {
    let cen = centralizer_of(eps_c);
    let values = induced_character(g, section, class.representative);
    let image = field.galois_image(section.index());
    let fixing = image
        .residues
        .iter()
        .filter(|&&t| values.iter().all(|v| &v.galois(t) == v))
        .count();
    (cen.order() / section.upper().order(), fixing)
}

/// `e_F(chi^G) = [Cen_G(eps_C):H] / [F(chi):F(chi^G)] * e_C(G, H, K)`, checked
/// to be a central idempotent before it is returned.
pub fn primitive_idempotent_from_shoda(
    g: &Arc<FiniteGroup>,
    field: &AbelianField,
    level: usize,
    section: &CyclicSection,
    class: &CyclotomicClass,
) -> Result<AlgebraElement, ShodaError> {
    if !is_shoda_pair(g, section.upper(), section.lower()) {
        return Err(ShodaError::NotAShodaPair);
    }
    let eps = epsilon_c(g, field, level, section, class)?;
    let (index, degree) = idempotent_coefficient(g, field, section, class, &eps);
    let e = eps
        .sum_of_distinct_conjugates()
        .scale_rational(&BigRational::new(BigInt::from(index), BigInt::from(degree)));
    if !e.is_idempotent() {
        return Err(ShodaError::VerificationFailed(format!(
            "{} is not idempotent",
            pair_label(g, section.upper(), section.lower())
        )));
    }
    if !e.is_central() {
        return Err(ShodaError::VerificationFailed(format!(
            "{} is not central",
            pair_label(g, section.upper(), section.lower())
        )));
    }
    Ok(e)
}

/// `(H, K)` written with the element labels of generating sets.
pub fn pair_label(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> String {
    let show = |s: &Subgroup| {
        if s.order() == 1 {
            "1".to_string()
        } else if s.order() == g.order() {
            "G".to_string()
        } else {
            let gens: Vec<String> = s.generators().iter().map(|&x| g.label(x)).collect();
            format!("<{}>", gens.join(", "))
        }
    };
    format!("({}, {})", show(h), show(k))
}

/// A strong Shoda pair together with its field-independent data.
#[derive(Clone, Debug)]
pub struct StrongPair {
    pub section: CyclicSection,
    /// `N_G(K)`.
    pub normalizer: Subgroup,
    /// `e(G, H, K)` over `Q`.
    pub e: AlgebraElement,
}

impl StrongPair {
    pub fn upper(&self) -> &Subgroup {
        self.section.upper()
    }

    pub fn lower(&self) -> &Subgroup {
        self.section.lower()
    }

    pub fn index(&self) -> usize {
        self.section.index()
    }

    /// `U_(H,K)`: the image of `N_G(K)` in `U(Z/kZ)`.
    pub fn unit_image(&self, g: &FiniteGroup) -> Vec<usize> {
        unit_image(g, &self.section, &self.normalizer)
    }
}

/// One strong Shoda pair per simple component of `QG`, deduplicated by exact
/// equality of `e(G, H, K)`. Pairs are visited with `K` ascending and `H`
/// among the subgroups of `N_G(K)` above `K`; the search stops once the
/// idempotents sum to `1`.
pub fn strong_shoda_pairs(g: &Arc<FiniteGroup>, max_order: usize) -> Result<Vec<StrongPair>, ShodaError> {
    let subgroups = g.all_subgroups(max_order)?;
    let one = AlgebraElement::identity(g, 1);
    let mut total = AlgebraElement::zero(g, 1);
    let mut found: Vec<StrongPair> = Vec::new();
    for k in &subgroups {
        let normalizer = g.normalizer(k);
        for h in subgroups
            .iter()
            .filter(|h| k.is_subgroup_of(h) && h.is_subgroup_of(&normalizer))
        {
            let Some(section) = strong_pair_conditions(g, h, k, &normalizer) else {
                continue;
            };
            let e = e_sum(g, 1, h, k)?;
            if found.iter().any(|p| p.e == e) {
                continue;
            }
            total = &total + &e;
            found.push(StrongPair {
                section,
                normalizer: normalizer.clone(),
                e,
            });
            if total == one {
                return Ok(found);
            }
        }
    }
    Err(ShodaError::NotStronglyMonomialOrIncomplete {
        found: found.iter().map(|p| pair_label(g, p.upper(), p.lower())).collect(),
        residual: (&one - &total).to_string(),
    })
}

/// The classes `C` of `H/K` that represent the orbits of the `N_G(K)` action
/// on `C_F(H/K)`: for each orbit of `<I_k(F), U_(H,K)>` on `U(Z/kZ)`, the
/// class containing its least member.
pub fn representative_classes<F: GaloisImages + ?Sized>(
    field: &F,
    k: usize,
    unit_image: &[usize],
) -> Vec<CyclotomicClass> {
    let image = field.image(k);
    let joined = unit_subgroup(image.residues.iter().chain(unit_image).copied(), k);
    let classes = cyclotomic_classes(field, k);
    unit_orbits(&joined, k)
        .into_iter()
        .map(|orbit| {
            classes
                .iter()
                .find(|c| c.representative == orbit[0])
                .expect("least member of an orbit is least in its class")
                .clone()
        })
        .collect()
}

/// A strong Shoda pair viewed over a particular field.
#[derive(Clone, Debug)]
pub struct ShodaPairRecord {
    pub pair: StrongPair,
    pub is_shoda: bool,
    pub is_strong: bool,
    pub stabilizer: Subgroup,
    pub classes: Vec<CyclotomicClass>,
    group: Arc<FiniteGroup>,
}

impl ShodaPairRecord {
    pub fn label(&self) -> String {
        pair_label(&self.group, self.pair.upper(), self.pair.lower())
    }
}

impl Serialize for ShodaPairRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ShodaPairRecord", 9)?;
        s.serialize_field("pair", &self.label())?;
        s.serialize_field("H", self.pair.upper())?;
        s.serialize_field("K", self.pair.lower())?;
        s.serialize_field("generator", &self.pair.section.generator())?;
        s.serialize_field("shoda", &self.is_shoda)?;
        s.serialize_field("strong", &self.is_strong)?;
        s.serialize_field("stabilizer", &self.stabilizer)?;
        s.serialize_field("classes", &self.classes)?;
        s.serialize_field("e", &self.pair.e.to_string())?;
        s.end()
    }
}

/// [`strong_shoda_pairs`] annotated with `E_F(G, H/K)` and `C_F(H/K)`.
pub fn complete_strong_shoda_set<F: GaloisImages + ?Sized>(
    g: &Arc<FiniteGroup>,
    field: &F,
    max_order: usize,
) -> Result<Vec<ShodaPairRecord>, ShodaError> {
    Ok(strong_shoda_pairs(g, max_order)?
        .into_iter()
        .map(|pair| annotate(g, field, pair))
        .collect())
}

pub(crate) fn annotate<F: GaloisImages + ?Sized>(g: &Arc<FiniteGroup>, field: &F, pair: StrongPair) -> ShodaPairRecord {
    ShodaPairRecord {
        is_shoda: is_shoda_pair(g, pair.upper(), pair.lower()),
        is_strong: true,
        stabilizer: stabilizer_ef(g, field, &pair.section),
        classes: cyclotomic_classes(field, pair.index()),
        pair,
        group: Arc::clone(g),
    }
}

impl fmt::Display for CyclotomicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orbit: Vec<String> = self.orbit.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}} mod {}", orbit.join(","), self.modulus)
    }
}
