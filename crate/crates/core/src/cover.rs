//! Codimension-2 singularities of `Spec C[Õ]` for the universal
//! equivariant cover `Õ`, and its Namikawa dimensions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degeneration::{codim2_children, Case, ClosureSingularity, Degeneration, KleinianType, MinimalDegeneration};
use crate::error::Result;
use crate::induction::{corner_row, namikawa_orbit, NamikawaReport};
use crate::orbit::Orbit;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    Smooth,
    Kleinian(KleinianType),
}

impl CoverKind {
    /// Dimension of the part of the Cartan subalgebra fixed by the
    /// monodromy: `A_{2j−1} ↦ j`, `D_n ↦ n − 1`. `None` for an even `A_n`,
    /// which never occurs.
    pub fn folded_dim(&self) -> Option<usize> {
        match *self {
            CoverKind::Smooth => Some(0),
            CoverKind::Kleinian(KleinianType::A(n)) => (n % 2 == 1).then_some(n.div_ceil(2)),
            CoverKind::Kleinian(KleinianType::D(n)) => Some(n - 1),
        }
    }

    pub fn cartan_dim(&self) -> usize {
        match self {
            CoverKind::Smooth => 0,
            CoverKind::Kleinian(t) => t.cartan_dim(),
        }
    }
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverKind::Smooth => f.write_str("smooth"),
            CoverKind::Kleinian(t) => write!(f, "{t}"),
        }
    }
}

/// Transversal singularity of the cover along the preimage of a child orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSingularity {
    pub kind: CoverKind,
    /// The preimage of the child is connected.
    pub components: usize,
}

impl fmt::Display for CoverSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HmGroup {
    pub order: usize,
}

/// The positive values of odd multiplicity in `alpha` are exactly
/// `α_q` and `α_{q+1}` (a zero row is left out).
pub fn odd_multiplicity_condition(alpha: &Partition, q: usize) -> bool {
    let mut odd: Vec<usize> = alpha
        .value_counts()
        .into_iter()
        .filter(|&(_, c)| c % 2 == 1)
        .map(|(v, _)| v)
        .collect();
    let mut expected: Vec<usize> = [alpha.part(q), alpha.part(q + 1)].into_iter().filter(|&v| v > 0).collect();
    expected.dedup();
    odd.sort_unstable();
    expected.sort_unstable();
    odd == expected
}

pub fn hm(md: &MinimalDegeneration, alpha: &Partition) -> HmGroup {
    let order = match md.case {
        Case::C | Case::D | Case::E => 1,
        Case::A | Case::B if odd_multiplicity_condition(alpha, md.q) => 1,
        Case::A | Case::B => 2,
    };
    HmGroup { order }
}

pub fn cover_singularity(md: &MinimalDegeneration, alpha: &Partition) -> CoverSingularity {
    let k = md.k;
    let condition = odd_multiplicity_condition(alpha, md.q);
    let kind = match md.case {
        Case::A if condition => CoverKind::Kleinian(KleinianType::a(1)),
        Case::A => CoverKind::Smooth,
        Case::B if condition => CoverKind::Kleinian(KleinianType::d(k + 1)),
        Case::B => CoverKind::Kleinian(KleinianType::a(2 * k - 3)),
        Case::C | Case::D | Case::E => CoverKind::Kleinian(KleinianType::a(2 * k - 1)),
    };
    CoverSingularity { kind, components: 1 }
}

/// `d_m` when `H_m` is trivial, `d_m − 1` otherwise.
pub fn dim_leaf_cover(md: &MinimalDegeneration, alpha: &Partition) -> usize {
    match hm(md, alpha).order {
        1 => md.d_m,
        _ => md.d_m - 1,
    }
}

fn is_etale(md: &MinimalDegeneration, alpha: &Partition) -> bool {
    matches!(md.case, Case::C | Case::D) || odd_multiplicity_condition(alpha, md.q)
}

/// Each child with whether the cover is étale over the closure near it.
pub fn etale_locus(o: &Orbit) -> Result<Vec<(Orbit, bool)>> {
    Ok(codim2_children(o)?
        .into_iter()
        .map(|d| {
            let flag = is_etale(&d.minimal, &o.partition);
            (d.child, flag)
        })
        .collect())
}

/// One codimension-2 leaf: closure data next to cover data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLeaf {
    pub child: Partition,
    pub m: usize,
    pub q: usize,
    pub case: Case,
    pub k: usize,
    pub d_m: usize,
    pub closure: ClosureSingularity,
    pub non_normal_union: bool,
    pub hm: HmGroup,
    pub cover: CoverSingularity,
    pub dim_leaf_orbit: usize,
    pub dim_leaf_cover: usize,
    pub etale: bool,
    /// 2 when the child is very even: two adjoint orbits, two leaves.
    pub adjoint_leaves: usize,
    /// False when the leaf contributes its whole Cartan subalgebra.
    pub folded: bool,
    /// Case (e): the cover entry describes the normalization, not the
    /// non-normal closure.
    pub case_e_normalization: bool,
}

impl CoverLeaf {
    /// The leaf dimension predicted by the singularity type alone.
    pub fn dim_from_type(&self) -> Option<usize> {
        if self.folded {
            self.cover.kind.folded_dim().map(|d| d * self.adjoint_leaves)
        } else {
            Some(self.cover.kind.cartan_dim())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub orbit: Orbit,
    pub pi1_exponent: u32,
    pub namikawa: NamikawaReport,
    /// The smooth part comes from `h2_universal_cover`, which is derived
    /// from the centralizer rather than read off a theorem.
    pub smooth_part_derived: bool,
    pub leaves: Vec<CoverLeaf>,
}

fn leaf(o: &Orbit, d: Degeneration, corner: Option<usize>, orbit_leaves: &BTreeMap<usize, usize>) -> CoverLeaf {
    let alpha = &o.partition;
    let md = &d.minimal;
    let at_corner = corner == Some(md.m);
    let adjoint_leaves = if d.child.very_even { 2 } else { 1 };
    CoverLeaf {
        m: md.m,
        q: md.q,
        case: md.case,
        k: md.k,
        d_m: md.d_m,
        closure: d.closure,
        non_normal_union: d.non_normal_union,
        hm: hm(md, alpha),
        cover: cover_singularity(md, alpha),
        dim_leaf_orbit: orbit_leaves.get(&md.m).copied().unwrap_or(0),
        dim_leaf_cover: dim_leaf_cover(md, alpha) + usize::from(at_corner),
        etale: is_etale(md, alpha),
        adjoint_leaves,
        folded: !(at_corner && adjoint_leaves == 1),
        case_e_normalization: md.case == Case::E,
        child: d.child.partition,
    }
}

pub fn cover_report(o: &Orbit) -> Result<CoverReport> {
    let corner = corner_row(o);
    let orbit_namikawa = namikawa_orbit(o);
    let leaves: Vec<CoverLeaf> = codim2_children(o)?
        .into_iter()
        .map(|d| leaf(o, d, corner, &orbit_namikawa.leaves))
        .collect();
    let dims = leaves.iter().map(|l| (l.m, l.dim_leaf_cover)).collect();
    Ok(CoverReport {
        orbit: o.clone(),
        pi1_exponent: o.pi1().exponent,
        namikawa: NamikawaReport::new(o.h2_universal_cover(), dims),
        smooth_part_derived: true,
        leaves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::minimal_degeneration;
    use crate::partition::Algebra;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn orbit(g: Algebra, s: &str) -> Orbit {
        Orbit::new(g, p(s)).unwrap()
    }

    #[test]
    fn condition_examples() {
        assert!(odd_multiplicity_condition(&p("4,4,4,2,2,2,2,2"), 3));
        assert!(!odd_multiplicity_condition(&p("10,8,4,3,3,1,1"), 2));
        assert!(!odd_multiplicity_condition(&p("2,2"), 2));
        assert!(odd_multiplicity_condition(&p("2"), 1));
    }

    #[test]
    fn remark_sp22() {
        let alpha = p("4,4,4,2,2,2,2,2");
        let md = minimal_degeneration(&alpha, &p("4,4,3,3,2,2,2,2")).unwrap();
        assert_eq!(md.case, Case::A);
        assert_eq!(hm(&md, &alpha).order, 1);
        assert_eq!(cover_singularity(&md, &alpha).kind, CoverKind::Kleinian(KleinianType::A(1)));
        assert_eq!(dim_leaf_cover(&md, &alpha), 1);
        assert!(is_etale(&md, &alpha));
    }

    #[test]
    fn example_sp30() {
        let alpha = p("10,8,4,3,3,1,1");
        let md = minimal_degeneration(&alpha, &p("10,6,6,3,3,1,1")).unwrap();
        assert_eq!(hm(&md, &alpha).order, 2);
        assert_eq!(cover_singularity(&md, &alpha).kind, CoverKind::Kleinian(KleinianType::A(1)));
        assert_eq!(dim_leaf_cover(&md, &alpha), 1);
        let locus = etale_locus(&orbit(Algebra::sp(30), "10,8,4,3,3,1,1")).unwrap();
        let flag = locus.iter().find(|(c, _)| c.partition == p("10,6,6,3,3,1,1")).unwrap().1;
        assert!(!flag);
    }

    #[test]
    fn sp4_cover() {
        let r = cover_report(&orbit(Algebra::sp(4), "2,2")).unwrap();
        assert_eq!((r.namikawa.dim_total, r.namikawa.dim_smooth), (1, 1));
        assert_eq!(r.leaves.len(), 1);
        assert_eq!(r.leaves[0].cover.kind, CoverKind::Smooth);
        assert_eq!(r.leaves[0].dim_leaf_cover, 0);
    }

    #[test]
    fn sp22_report() {
        let r = cover_report(&orbit(Algebra::sp(22), "4,4,4,2,2,2,2,2")).unwrap();
        let l = r.leaves.iter().find(|l| l.q == 3).unwrap();
        assert_eq!(l.dim_leaf_cover, 1);
        assert_eq!(l.cover.to_string(), "A1");
    }

    #[test]
    fn case_c_is_trivial() {
        let alpha = p("3");
        let md = minimal_degeneration(&alpha, &p("1,1,1")).unwrap();
        assert_eq!(md.case, Case::C);
        assert_eq!(hm(&md, &alpha).order, 1);
    }

    #[test]
    fn corner_leaves() {
        // regular so_8: leaf at the corner row 1 has a very even child
        let r = cover_report(&orbit(Algebra::so(8), "7,1")).unwrap();
        assert_eq!(r.namikawa.dim_total, 4);
        let l = &r.leaves[0];
        assert_eq!((l.case, l.adjoint_leaves, l.folded), (Case::B, 1, false));
        assert_eq!(l.dim_from_type(), Some(l.dim_leaf_cover));
        let r = cover_report(&orbit(Algebra::so(8), "5,3")).unwrap();
        let l = r.leaves.iter().find(|l| l.m == 1).unwrap();
        assert_eq!((l.case, l.adjoint_leaves, l.dim_leaf_cover), (Case::A, 2, 2));
    }

    #[test]
    fn folding() {
        assert_eq!(CoverKind::Smooth.folded_dim(), Some(0));
        assert_eq!(CoverKind::Kleinian(KleinianType::A(5)).folded_dim(), Some(3));
        assert_eq!(CoverKind::Kleinian(KleinianType::D(5)).folded_dim(), Some(4));
        assert_eq!(CoverKind::Kleinian(KleinianType::A(2)).folded_dim(), None);
    }
}
