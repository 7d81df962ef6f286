//! Invariant checks over the built-in corpus. Every check recomputes its
//! identity from the public operations and reports a row rather than panicking.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::arith::{euler_phi, inverse_mod, is_prime};
use crate::corpus::{self, CorpusEntry};
use crate::cyclo::AbelianField;
use crate::group::{CyclicSection, FiniteGroup, Subgroup};
use crate::shoda::{
    ambient_level, centralizer_of, cyclotomic_classes, e_c_sum, e_sum, epsilon, epsilon_c, representative_classes,
    stabilizer_ef, unit_image, CyclotomicClass,
};
use crate::wedderburn::{GroupAnalysis, WedderburnError};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub group: String,
    pub field: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub rows: Vec<CheckRow>,
}

type Check<T> = Result<T, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Sections `H/K` with `K ⊴ H`, `H/K` cyclic and `[H:K] <= max_index`.
pub fn cyclic_sections(g: &FiniteGroup, max_order: usize, max_index: usize) -> Check<Vec<CyclicSection>> {
    let subgroups = g.all_subgroups(max_order).map_err(err)?;
    let mut out = Vec::new();
    for h in &subgroups {
        for k in &subgroups {
            if k.order() == 0 || h.order() % k.order() != 0 || h.order() / k.order() > max_index {
                continue;
            }
            if !g.is_normal_in(k, h) {
                continue;
            }
            if let Ok(s) = CyclicSection::new(g, h, k) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn same_subgroup(a: &Subgroup, b: &Subgroup) -> bool {
    a.members() == b.members()
}

/// Counts of the sections exercised by [`lemma_suite`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaCoverage {
    pub sections: usize,
    pub cyclic_quotients: usize,
    pub normal_in_normalizer: usize,
}

/// For every cyclic section of index at most `max_index`:
/// `g eps_C = eps_C` iff `K^<g> eps_C = eps_C` iff `g in K`;
/// `eps_C(H,K)^g = eps_{C^g}(H^g, K^g)` for all `g`;
/// when `H = G`, `eps(G,N)` is the sum of the `eps_C(G,N)`, which are
/// distinct central idempotents;
/// when `H ⊴ N_G(K)`, `Cen_G(eps_C) = E_F(G, H/K)` and
/// `e(G,H,K) = sum_{C in R} e_C(G,H,K)`.
pub fn lemma_suite(
    g: &Arc<FiniteGroup>,
    field: &AbelianField,
    max_order: usize,
    max_index: usize,
) -> Check<LemmaCoverage> {
    let level = ambient_level(g, field);
    let mut coverage = LemmaCoverage::default();
    for section in cyclic_sections(g, max_order, max_index)? {
        coverage.sections += 1;
        let (h, k) = (section.upper(), section.lower());
        let label = crate::shoda::pair_label(g, h, k);
        let classes = cyclotomic_classes(field, section.index());
        let eps: Vec<AlgebraElement> = classes
            .iter()
            .map(|c| epsilon_c(g, field, level, &section, c))
            .collect::<Result<_, _>>()
            .map_err(err)?;

        for (class, e) in classes.iter().zip(&eps) {
            for x in g.elements() {
                let left = &AlgebraElement::from_element(g, level, x) * e == *e;
                let averaged = &AlgebraElement::hat(g, level, &g.subgroup_generated(&[x])) * e == *e;
                ensure(left == k.contains(x) && averaged == left, || {
                    format!(
                        "{label}, class {class}: g eps_C = eps_C disagrees with g in K at {}",
                        g.label(x)
                    )
                })?;
            }
            for x in g.elements() {
                let (conj_section, conj_class) = conjugate_section(g, field, &section, class, x)?;
                let expected = epsilon_c(g, field, level, &conj_section, &conj_class).map_err(err)?;
                ensure(e.conjugate_by(x) == expected, || {
                    format!("{label}, class {class}: eps_C^g != eps_(C^g) at g = {}", g.label(x))
                })?;
            }
        }

        if h.order() == g.order() {
            coverage.cyclic_quotients += 1;
            let total = eps.iter().fold(AlgebraElement::zero(g, level), |acc, e| &acc + e);
            ensure(total == epsilon(g, level, h, k).map_err(err)?, || {
                format!("{label}: eps(G,N) is not the sum of the eps_C(G,N)")
            })?;
            for (i, e) in eps.iter().enumerate() {
                ensure(e.is_idempotent() && e.is_central(), || {
                    format!("{label}: eps_C(G,N) for {} is not a central idempotent", classes[i])
                })?;
                for f in &eps[i + 1..] {
                    ensure(e != f, || format!("{label}: two classes give the same eps_C(G,N)"))?;
                }
            }
        }

        let normalizer = g.normalizer(k);
        if g.is_normal_in(h, &normalizer) {
            coverage.normal_in_normalizer += 1;
            let stabilizer = stabilizer_ef(g, field, &section);
            for (class, e) in classes.iter().zip(&eps) {
                ensure(same_subgroup(&centralizer_of(e), &stabilizer), || {
                    format!("{label}, class {class}: Cen_G(eps_C) != E_F(G, H/K)")
                })?;
            }
            let image = unit_image(g, &section, &normalizer);
            let reps = representative_classes(field, section.index(), &image);
            let mut total = AlgebraElement::zero(g, level);
            for c in &reps {
                total = &total + &e_c_sum(g, field, level, &section, c).map_err(err)?;
            }
            ensure(total == e_sum(g, level, h, k).map_err(err)?, || {
                format!("{label}: e(G,H,K) is not the sum of e_C(G,H,K) over orbit representatives")
            })?;
        }
    }
    Ok(coverage)
}

/// `H^x/K^x` with its own least generator `h'`, and the class `C^x`: if
/// `(h^x) K^x = h'^u K^x` then `chi^x(h') = zeta_k^(j / u)` for `chi(h) = zeta_k^j`.
fn conjugate_section(
    g: &FiniteGroup,
    field: &AbelianField,
    section: &CyclicSection,
    class: &CyclotomicClass,
    x: usize,
) -> Check<(CyclicSection, CyclotomicClass)> {
    let h = g.conjugate_subgroup(section.upper(), x);
    let k = g.conjugate_subgroup(section.lower(), x);
    let conj = CyclicSection::new(g, &h, &k).map_err(err)?;
    let n = section.index();
    let u = conj
        .coset_exponent(g.conj(section.generator(), x))
        .ok_or("conjugated generator left H^g")?;
    let u_inv = inverse_mod(u % n.max(1), n.max(1)).ok_or("conjugated generator is not a generator")?;
    let j = class.representative * u_inv % n.max(1);
    let target = cyclotomic_classes(field, n)
        .into_iter()
        .find(|c| c.orbit.contains(&j))
        .ok_or("no class contains the transported exponent")?;
    Ok((conj, target))
}

/// `|I_m(F)| = phi(m)` forces `|I_n(F)| = phi(n)` for `n | m`, and
/// `|I_k(F)| = phi(k)` iff `[Q(zeta_k) ∩ F : Q] = 1`, for all `m, k <= bound`.
pub fn galois_lemmas(field: &AbelianField, bound: usize) -> Check<usize> {
    let full: Vec<bool> = (0..=bound)
        .map(|k| k > 0 && field.galois_image(k).len() == euler_phi(k))
        .collect();
    let mut checked = 0;
    for m in 1..=bound {
        for n in (1..=m).filter(|n| m % n == 0) {
            checked += 1;
            ensure(!full[m] || full[n], || {
                format!("{field}: |I_{m}| = phi({m}) but |I_{n}| != phi({n})")
            })?;
        }
        let trivial = field.intersect_with_cyclotomic_degree(m, &[1]) == 1;
        checked += 1;
        ensure(trivial == full[m], || {
            format!(
                "{field}: |I_{m}| = phi({m}) is {} but Q(zeta_{m}) ∩ F = Q is {trivial}",
                full[m]
            )
        })?;
    }
    Ok(checked)
}

/// The component count, the class oracle and the number of descriptors.
pub fn count_check(a: &GroupAnalysis, field: &AbelianField) -> Check<usize> {
    let count = a.component_count(field).map_err(err)?;
    let descriptors = a.components(field).map_err(err)?.len();
    let oracle = crate::wedderburn::f_class_count_oracle(a.group(), field);
    ensure(count.count == oracle && oracle == descriptors, || {
        format!("count {} / oracle {oracle} / descriptors {descriptors}", count.count)
    })?;
    Ok(count.count)
}

/// The `e_C(G,H,K)` sum to `1`, are idempotent, central and pairwise orthogonal.
pub fn idempotent_check(a: &GroupAnalysis, field: &AbelianField) -> Check<usize> {
    let g = a.group();
    let level = ambient_level(g, field);
    let components = a.components(field).map_err(err)?;
    let mut total = AlgebraElement::zero(g, level);
    for (i, c) in components.iter().enumerate() {
        ensure(c.element.is_idempotent(), || {
            format!("{} {} is not idempotent", c.pair, c.class)
        })?;
        ensure(c.element.is_central(), || {
            format!("{} {} is not central", c.pair, c.class)
        })?;
        for d in &components[i + 1..] {
            ensure(c.element.are_orthogonal(&d.element), || {
                format!("{} {} and {} {} are not orthogonal", c.pair, c.class, d.pair, d.class)
            })?;
        }
        total = &total + &c.element;
    }
    ensure(total == AlgebraElement::identity(g, level), || {
        format!("sum is {total}")
    })?;
    Ok(components.len())
}

/// `sum [G:E]^2 [E:H] [F(zeta_k):F] = |G|`.
pub fn dimension_check(a: &GroupAnalysis, field: &AbelianField) -> Check<usize> {
    let dimension: usize = a.components(field).map_err(err)?.iter().map(|c| c.dimension()).sum();
    ensure(dimension == a.group().order(), || {
        format!("dimensions sum to {dimension}, |G| = {}", a.group().order())
    })?;
    Ok(dimension)
}

/// The pair formula for the rank against `r r_R + s r_C - r_F`, and at `Q`
/// against the integral formula.
pub fn rank_check(a: &GroupAnalysis, field: &AbelianField) -> Check<i64> {
    let report = a.central_unit_rank(field).map_err(err)?;
    let (r, s) = field.signature();
    let expected = (r * report.r_real + s * report.r_complex) as i64 - report.r_field as i64;
    ensure(report.rank == expected, || {
        format!("rank {} != {expected}", report.rank)
    })?;
    if field.is_rationals() {
        ensure(report.rank == report.integral_rank, || {
            format!("rank {} != integral formula {}", report.rank, report.integral_rank)
        })?;
    }
    Ok(report.rank)
}

/// Minimality over `F_q` implies minimality over `F_p` for `q = p^2, p^3`.
pub fn finite_field_check(a: &GroupAnalysis) -> Check<usize> {
    let order = a.group().order() as u64;
    let mut checked = 0;
    for p in (2..=13u64).filter(|&p| is_prime(p) && !order.is_multiple_of(p)) {
        let base = a.finite_field_minimality(p).map_err(err)?.minimal;
        for q in [p * p, p * p * p] {
            let m = a.finite_field_minimality(q).map_err(err)?.minimal;
            ensure(!m || base, || format!("minimal over F_{q} but not over F_{p}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn row<T: std::fmt::Debug>(check: &str, group: &str, field: &str, result: Check<T>) -> CheckRow {
    let (passed, detail) = match result {
        Ok(v) => (true, format!("{v:?}")),
        Err(e) => (false, e),
    };
    CheckRow {
        check: check.into(),
        group: group.into(),
        field: field.into(),
        passed,
        detail,
    }
}

/// Every field-dependent check for one corpus entry.
pub fn check_entry(entry: &CorpusEntry, fields: &[AbelianField], max_order: usize) -> Vec<CheckRow> {
    let name = entry.name.as_str();
    let analysis = match GroupAnalysis::new(entry.group.clone(), max_order) {
        Ok(a) => a,
        Err(e) => return vec![row::<()>("strong pairs", name, "-", Err(e.to_string()))],
    };
    let mut rows = Vec::new();
    for field in fields {
        let f = field.to_string();
        rows.push(row("count", name, &f, count_check(&analysis, field)));
        rows.push(row("idempotents", name, &f, idempotent_check(&analysis, field)));
        rows.push(row("dimension", name, &f, dimension_check(&analysis, field)));
        rows.push(row("rank", name, &f, rank_check(&analysis, field)));
        rows.push(row(
            "minimality",
            name,
            &f,
            analysis.minimality_report(field).map(|r| r.minimal).map_err(err),
        ));
        rows.push(row(
            "lemmas",
            name,
            &f,
            lemma_suite(analysis.group(), field, max_order, 12),
        ));
        if let Some(p) = entry.metacyclic {
            let verdict = match GroupAnalysis::metacyclic_minimality(p.m, p.n, p.t, p.r, field, max_order) {
                Ok(v) => Ok(v.general_minimal),
                Err(WedderburnError::HypothesesNotMet { general_minimal }) => Ok(general_minimal),
                Err(e) => Err(e.to_string()),
            };
            rows.push(row("metacyclic", name, &f, verdict));
        }
    }
    rows.push(row("finite fields", name, "F_q", finite_field_check(&analysis)));
    rows
}

/// The full suite over the built-in corpus and field family.
pub fn run(max_order: usize) -> VerifyReport {
    let fields = corpus::fields();
    let mut rows: Vec<CheckRow> = corpus::groups()
        .iter()
        .flat_map(|e| check_entry(e, &fields, max_order))
        .collect();
    for field in corpus::field_family() {
        rows.push(row("galois", "-", &field.to_string(), galois_lemmas(&field, 60)));
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    VerifyReport {
        failed: rows.len() - passed,
        passed,
        rows,
    }
}
