//! Codimension-2 degenerations of orbit closures and their Kraft-Procesi
//! classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{enumerate_orbits, Orbit};
use crate::partition::{collapse_down, Partition};

/// Sizes up to this bound get their children by exhaustive search; larger
/// ones use the constructive rule.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 40;

/// The five Kraft-Procesi shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
            Case::D => "d",
            Case::E => "e",
        };
        f.write_str(c)
    }
}

/// A Kleinian singularity `A_n` or `D_n`.
///
/// `D_3` does not exist as a value: [`KleinianType::d`] turns it into `A_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum KleinianType {
    A(usize),
    D(usize),
}

impl KleinianType {
    pub fn a(n: usize) -> Self {
        assert!(n >= 1, "A_0 is not a singularity");
        KleinianType::A(n)
    }

    /// `D_n` for `n ≥ 4`, `A_3` for `n = 3`.
    pub fn d(n: usize) -> Self {
        match n {
            3 => KleinianType::A(3),
            n if n >= 4 => KleinianType::D(n),
            _ => panic!("D_{n} is not a Kleinian singularity"),
        }
    }

    /// Rank of the corresponding root system.
    pub fn cartan_dim(&self) -> usize {
        match *self {
            KleinianType::A(n) | KleinianType::D(n) => n,
        }
    }
}

impl fmt::Display for KleinianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleinianType::A(n) => write!(f, "A{n}"),
            KleinianType::D(n) => write!(f, "D{n}"),
        }
    }
}

impl FromStr for KleinianType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            what: "Kleinian type",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (head, tail) = t.split_at(t.char_indices().nth(1).map_or(t.len(), |(i, _)| i));
        let tail = tail.trim_start_matches('_');
        let n: usize = tail.parse().map_err(|_| bad("expected a rank after the letter"))?;
        match head {
            "A" | "a" if n >= 1 => Ok(KleinianType::A(n)),
            "D" | "d" if n >= 3 => Ok(KleinianType::d(n)),
            _ => Err(bad("expected A_n (n >= 1) or D_n (n >= 3)")),
        }
    }
}

impl TryFrom<String> for KleinianType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KleinianType> for String {
    fn from(t: KleinianType) -> String {
        t.to_string()
    }
}

/// Singularity of an orbit closure along a codimension-2 orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureSingularity {
    Kleinian(KleinianType),
    /// Two copies of the given type meeting transversally at the origin.
    UnionTwoKleinian(KleinianType),
}

impl ClosureSingularity {
    /// The Kleinian type of (each branch of) the singularity.
    pub fn branch_type(&self) -> KleinianType {
        match *self {
            ClosureSingularity::Kleinian(t) | ClosureSingularity::UnionTwoKleinian(t) => t,
        }
    }

    pub fn is_non_normal_union(&self) -> bool {
        matches!(self, ClosureSingularity::UnionTwoKleinian(_))
    }
}

impl fmt::Display for ClosureSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureSingularity::Kleinian(t) => write!(f, "{t}"),
            ClosureSingularity::UnionTwoKleinian(t) => write!(f, "{t} ∪ {t}"),
        }
    }
}

/// The reduced pair left after erasing the common rows and columns of a
/// codimension-2 pair `β ⊂ closure(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalDegeneration {
    /// Erased rows.
    pub r: usize,
    /// Erased columns.
    pub s: usize,
    /// First differing row, `r + 1`.
    pub q: usize,
    pub alpha_prime: Partition,
    pub beta_prime: Partition,
    pub case: Case,
    pub k: usize,
    /// The α-singular row this degeneration belongs to.
    pub m: usize,
    pub d_m: usize,
}

/// A codimension-2 orbit in the closure of a parent orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Degeneration {
    pub child: Orbit,
    pub minimal: MinimalDegeneration,
    pub closure: ClosureSingularity,
    pub non_normal_union: bool,
}

impl Degeneration {
    fn new(child: Orbit, minimal: MinimalDegeneration) -> Self {
        let closure = closure_singularity(&minimal);
        Degeneration {
            child,
            non_normal_union: closure.is_non_normal_union(),
            minimal,
            closure,
        }
    }
}

/// Classifies the pair `(α, β)`.
///
/// `s` is `α` at the last differing row: in every admissible shape `β`
/// exceeds `α` there, so all columns up to `α_{i1}` are shared.
pub fn minimal_degeneration(alpha: &Partition, beta: &Partition) -> Result<MinimalDegeneration> {
    if alpha.size() != beta.size() {
        return Err(Error::IncomparableSizes(alpha.size(), beta.size()));
    }
    let rows = alpha.len().max(beta.len());
    let differing: Vec<usize> = (1..=rows).filter(|&i| alpha.part(i) != beta.part(i)).collect();
    let (Some(&i0), Some(&i1)) = (differing.first(), differing.last()) else {
        return Err(Error::NoDifference(alpha.clone(), beta.clone()));
    };
    let s = alpha.part(i1);
    let strip = |p: &Partition| {
        Partition::from_unsorted((i0..=i1).map(|i| p.part(i).saturating_sub(s)).collect())
    };
    let (ap, bp) = (strip(alpha), strip(beta));
    let Some((case, k)) = match_shape(ap.parts(), bp.parts()) else {
        return Err(Error::NoShapeMatch {
            alpha: alpha.clone(),
            beta: beta.clone(),
            alpha_prime: ap,
            beta_prime: bp,
        });
    };
    let m = i0 + ap.len() - 1;
    Ok(MinimalDegeneration {
        r: i0 - 1,
        s,
        q: i0,
        alpha_prime: ap,
        beta_prime: bp,
        case,
        k,
        m,
        d_m: alpha.gap_half(m),
    })
}

fn match_shape(ap: &[usize], bp: &[usize]) -> Option<(Case, usize)> {
    match *ap {
        [2] if bp == [1, 1] => Some((Case::A, 1)),
        [a] if a % 2 == 0 && a >= 4 && bp == [a - 2, 2] => Some((Case::B, a / 2)),
        [a] if a % 2 == 1 && a >= 3 && bp == [a - 2, 1, 1] => Some((Case::C, a / 2)),
        [a, b] if a == b && a % 2 == 1 && bp == [a - 1, a - 1, 2] => Some((Case::D, a / 2)),
        [a, b] if a == b && a % 2 == 0 && bp == [a - 1, a - 1, 1, 1] => Some((Case::E, a / 2)),
        _ => None,
    }
}

/// Kraft-Procesi singularity type for each shape.
pub fn closure_singularity(md: &MinimalDegeneration) -> ClosureSingularity {
    let k = md.k;
    match md.case {
        Case::A => ClosureSingularity::Kleinian(KleinianType::a(1)),
        Case::B => ClosureSingularity::Kleinian(KleinianType::d(k + 1)),
        Case::C | Case::D => ClosureSingularity::Kleinian(KleinianType::a(2 * k - 1)),
        Case::E => ClosureSingularity::UnionTwoKleinian(KleinianType::a(2 * k - 1)),
    }
}

/// The child attached to the α-singular row `m`: move one box from row `m`
/// to row `m + 1`, then collapse.
pub fn degeneration_at(o: &Orbit, m: usize) -> Result<Degeneration> {
    let alpha = &o.partition;
    if m == 0 || alpha.gap_half(m) == 0 {
        return Err(Error::NotSingular {
            partition: alpha.clone(),
            m,
        });
    }
    let mut seq: Vec<usize> = (1..=alpha.len().max(m + 1)).map(|i| alpha.part(i)).collect();
    seq[m - 1] -= 1;
    seq[m] += 1;
    let beta = collapse_down(&seq, o.algebra)?;
    let minimal = minimal_degeneration(alpha, &beta)?;
    Ok(Degeneration::new(Orbit::new(o.algebra, beta)?, minimal))
}

/// Every codimension-2 orbit in the closure of `o`, ordered by singular row.
pub fn codim2_children(o: &Orbit) -> Result<Vec<Degeneration>> {
    codim2_children_with_bound(o, DEFAULT_BRUTE_FORCE_BOUND)
}

/// Like [`codim2_children`], searching exhaustively when
/// `o.algebra.size() <= bound`.
pub fn codim2_children_with_bound(o: &Orbit, bound: usize) -> Result<Vec<Degeneration>> {
    if o.algebra.size() > bound {
        return o
            .partition
            .singular_set()
            .into_iter()
            .map(|sd| degeneration_at(o, sd.m))
            .collect();
    }
    let target = o.dim();
    let mut out = Vec::new();
    for child in enumerate_orbits(o.algebra) {
        if child.dim() + 2 == target && o.partition.strictly_dominates(&child.partition)? {
            let minimal = minimal_degeneration(&o.partition, &child.partition)?;
            out.push(Degeneration::new(child, minimal));
        }
    }
    out.sort_by_key(|d| d.minimal.m);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Algebra;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn orbit(g: Algebra, s: &str) -> Orbit {
        Orbit::new(g, p(s)).unwrap()
    }

    #[test]
    fn example_sp30() {
        let md = minimal_degeneration(&p("10,8,4,3,3,1,1"), &p("10,6,6,3,3,1,1")).unwrap();
        assert_eq!((md.r, md.q, md.case, md.k, md.m, md.d_m), (1, 2, Case::B, 2, 2, 2));
        assert_eq!(md.alpha_prime, p("4"));
        assert_eq!(md.beta_prime, p("2,2"));
        assert_eq!(closure_singularity(&md), ClosureSingularity::Kleinian(KleinianType::A(3)));
    }

    #[test]
    fn trailing_row_case_a() {
        let md = minimal_degeneration(&p("2,2"), &p("2,1,1")).unwrap();
        assert_eq!((md.q, md.s, md.case), (2, 0, Case::A));
        assert_eq!(md.alpha_prime, p("2"));
        assert_eq!(md.beta_prime, p("1,1"));
    }

    #[test]
    fn case_e() {
        let md = minimal_degeneration(&p("3,3,1,1"), &p("2,2,2,2")).unwrap();
        assert_eq!((md.q, md.s, md.case, md.k, md.m), (1, 1, Case::E, 1, 2));
        let sing = closure_singularity(&md);
        assert_eq!(sing, ClosureSingularity::UnionTwoKleinian(KleinianType::A(1)));
        assert_eq!(sing.to_string(), "A1 ∪ A1");
    }

    #[test]
    fn no_shape() {
        assert!(matches!(
            minimal_degeneration(&p("4"), &p("1,1,1,1")).unwrap_err(),
            Error::NoShapeMatch { .. }
        ));
        assert!(matches!(
            minimal_degeneration(&p("2,2"), &p("2,2")).unwrap_err(),
            Error::NoDifference(..)
        ));
    }

    #[test]
    fn degeneration_at_examples() {
        let cases = [
            (Algebra::so(9), "5,2,2", 1, "3,3,3"),
            (Algebra::sp(8), "3,3,1,1", 2, "2,2,2,2"),
            (Algebra::sp(12), "5,5,2", 2, "4,4,4"),
        ];
        for (g, a, m, b) in cases {
            let d = degeneration_at(&orbit(g, a), m).unwrap();
            assert_eq!(d.child.partition, p(b), "{a} at {m}");
        }
        assert!(matches!(
            degeneration_at(&orbit(Algebra::sp(4), "2,2"), 1),
            Err(Error::NotSingular { .. })
        ));
    }

    #[test]
    fn children_examples() {
        let kids = codim2_children(&orbit(Algebra::sp(30), "10,8,4,3,3,1,1")).unwrap();
        assert_eq!(kids.len(), 3);
        assert!(kids.iter().any(|d| d.child.partition == p("10,6,6,3,3,1,1")));
        let kids = codim2_children(&orbit(Algebra::sp(4), "2,2")).unwrap();
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].child.partition, p("2,1,1"));
        assert!(codim2_children(&Orbit::zero(Algebra::so(7))).unwrap().is_empty());
    }

    #[test]
    fn brute_and_constructive_agree() {
        let o = orbit(Algebra::sp(30), "10,8,4,3,3,1,1");
        assert_eq!(
            codim2_children_with_bound(&o, 0).unwrap(),
            codim2_children_with_bound(&o, 30).unwrap()
        );
    }

    #[test]
    fn kleinian_normalization_and_parse() {
        assert_eq!(KleinianType::d(3), KleinianType::A(3));
        assert_eq!("D3".parse::<KleinianType>().unwrap(), KleinianType::A(3));
        assert_eq!("D_5".parse::<KleinianType>().unwrap(), KleinianType::D(5));
        assert!("E6".parse::<KleinianType>().is_err());
        assert!("A0".parse::<KleinianType>().is_err());
    }
}
