//! The built-in corpus of small groups and coefficient fields.

use crate::cyclo::AbelianField;
use crate::group::{FiniteGroup, GroupError, MetacyclicParams};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    /// Presentation parameters when the entry was built as a split metacyclic group.
    pub metacyclic: Option<MetacyclicParams>,
}

impl CorpusEntry {
    fn plain(name: impl Into<String>, group: FiniteGroup) -> Self {
        CorpusEntry {
            name: name.into(),
            group,
            metacyclic: None,
        }
    }

    fn metacyclic(name: &str, m: usize, n: usize, t: usize, r: usize, max_order: usize) -> Result<Self, GroupError> {
        Ok(CorpusEntry {
            name: name.into(),
            group: FiniteGroup::metacyclic(m, n, t, r, max_order)?,
            metacyclic: Some(MetacyclicParams { m, n, t, r }),
        })
    }
}

/// C2..C12, C2xC2, C2xC4, D6..D16, Q8, Q16, C3xQ8, C3 ⋊ C4 and C7 ⋊ C3.
pub fn groups() -> Vec<CorpusEntry> {
    build().expect("corpus groups are valid and small")
}

fn build() -> Result<Vec<CorpusEntry>, GroupError> {
    let bound = 256;
    let mut out = Vec::new();
    for n in 2..=12 {
        out.push(CorpusEntry::plain(format!("C{n}"), FiniteGroup::cyclic(n)?));
    }
    out.push(CorpusEntry::plain("C2xC2", FiniteGroup::abelian(&[2, 2], bound)?));
    out.push(CorpusEntry::plain("C2xC4", FiniteGroup::abelian(&[2, 4], bound)?));
    for n in 3..=8 {
        out.push(CorpusEntry::plain(format!("D{}", 2 * n), FiniteGroup::dihedral(n)?));
    }
    let q8 = FiniteGroup::dicyclic(2)?;
    out.push(CorpusEntry::plain("Q8", q8.clone()));
    out.push(CorpusEntry::plain("Q16", FiniteGroup::dicyclic(4)?));
    out.push(CorpusEntry::plain(
        "C3xQ8",
        FiniteGroup::direct_product(&FiniteGroup::cyclic(3)?, &q8, bound)?,
    ));
    out.push(CorpusEntry::metacyclic("C3:C4", 3, 4, 0, 2, bound)?);
    out.push(CorpusEntry::metacyclic("C7:C3", 7, 3, 0, 2, bound)?);
    Ok(out)
}

/// `SL(2,3)` acting on the nonzero vectors of `F_3^2`; not strongly monomial.
pub fn sl_2_3() -> FiniteGroup {
    let vectors: Vec<(u8, u8)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index = |v: (u8, u8)| vectors.iter().position(|&w| w == v).expect("nonzero image");
    let act = |m: [u8; 4]| -> Vec<usize> {
        vectors
            .iter()
            .map(|&(x, y)| index(((m[0] * x + m[1] * y) % 3, (m[2] * x + m[3] * y) % 3)))
            .collect()
    };
    FiniteGroup::from_permutations(&[act([1, 1, 0, 1]), act([1, 0, 1, 1])], 256).expect("order 24")
}

/// Q, Q(zeta_3), Q(zeta_4), Q(zeta_5), Q(zeta_8) and the real subfield of Q(zeta_5).
pub fn fields() -> Vec<AbelianField> {
    vec![
        AbelianField::rationals(),
        AbelianField::cyclotomic(3),
        AbelianField::cyclotomic(4),
        AbelianField::cyclotomic(5),
        AbelianField::cyclotomic(8),
        AbelianField::real_cyclotomic(5),
    ]
}

/// Ten abelian fields with varied conductors and fixing groups.
pub fn field_family() -> Vec<AbelianField> {
    let mut out = fields();
    for (m, gens) in [(7, vec![6]), (8, vec![3]), (8, vec![7]), (15, vec![4])] {
        out.push(AbelianField::new(m, &gens).expect("units"));
    }
    out
}
