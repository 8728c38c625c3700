//! Lusztig-Spaltenstein induction on partitions, birationality, the rigid
//! inducing Levi and Namikawa dimensions of `Spec C[O]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::orbit::Orbit;
use crate::partition::{add_two_then_collapse, Algebra, Partition, Series};

/// `gl_{m_1} × … × gl_{m_t} × g_{N − 2Σm_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviShape {
    /// Block sizes, largest first.
    pub gl_blocks: Vec<usize>,
    pub residual: Algebra,
}

impl LeviShape {
    pub fn new(mut blocks: Vec<usize>, target: Algebra) -> Result<Self> {
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        let residual = target.residual(blocks.iter().sum())?;
        Ok(LeviShape {
            gl_blocks: blocks,
            residual,
        })
    }

    pub fn block_count(&self) -> usize {
        self.gl_blocks.len()
    }

    /// The ambient algebra.
    pub fn target(&self) -> Algebra {
        let size = self.residual.size() + 2 * self.gl_blocks.iter().sum::<usize>();
        Algebra::new(self.residual.series(), size).expect("residual and blocks keep parity")
    }

    pub fn dim(&self) -> usize {
        self.gl_blocks.iter().map(|m| m * m).sum::<usize>() + self.residual.dim()
    }
}

/// `gl1 × gl2^2 × gl5 × sp10`, smallest block first.
impl fmt::Display for LeviShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &m in &self.gl_blocks {
            *counts.entry(m).or_default() += 1;
        }
        for (m, c) in counts {
            write!(f, "gl{m}")?;
            if c > 1 {
                write!(f, "^{c}")?;
            }
            write!(f, " × ")?;
        }
        write!(f, "{}", self.residual)
    }
}

/// One application of [`add_two_then_collapse`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStep {
    pub block: usize,
    pub algebra: Algebra,
    pub source: Partition,
    /// `α^m` before any collapse.
    pub lifted: Partition,
    pub lifted_valid: bool,
    pub result: Partition,
    pub birational: bool,
}

/// Induces `p0` through the blocks in the given order.
pub fn induce_steps(p0: &Partition, blocks: &[usize], target: Algebra) -> Result<Vec<InductionStep>> {
    let total: usize = blocks.iter().sum();
    let mut g = target.residual(total)?;
    p0.validate(g)?;
    let mut current = p0.clone();
    let mut steps = Vec::with_capacity(blocks.len());
    for &m in blocks {
        g = Algebra::new(g.series(), g.size() + 2 * m)?;
        let lifted = current.add_two(m);
        let lifted_valid = lifted.satisfies_parity(g.series());
        let result = add_two_then_collapse(&current, m, g)?;
        let birational = birational_verdict(&current, lifted_valid, g.series());
        steps.push(InductionStep {
            block: m,
            algebra: g,
            source: std::mem::replace(&mut current, result.clone()),
            lifted,
            lifted_valid,
            result,
            birational,
        });
    }
    Ok(steps)
}

/// Left fold of [`add_two_then_collapse`] over `blocks`.
pub fn induce(p0: &Partition, blocks: &[usize], target: Algebra) -> Result<Partition> {
    let steps = induce_steps(p0, blocks, target)?;
    Ok(steps.last().map_or_else(|| p0.clone(), |s| s.result.clone()))
}

fn birational_verdict(p0: &Partition, lifted_valid: bool, series: Series) -> bool {
    lifted_valid || (series == Series::So && p0.parts().iter().all(|x| x % 2 == 0))
}

/// Whether inducing `p0` from `gl_m × g_{N−2m}` into `target` is birational.
///
/// True when `α^m` is already valid, or in `so` when the collapse happens
/// and every part of `p0` is even.
pub fn is_birational_step(p0: &Partition, m: usize, target: Algebra) -> Result<bool> {
    p0.validate(target.residual(m)?)?;
    let lifted_valid = p0.add_two(m).satisfies_parity(target.series());
    Ok(birational_verdict(p0, lifted_valid, target.series()))
}

/// The Levi from which `o` is birationally induced, with the birationally
/// rigid source orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidLevi {
    pub levi: LeviShape,
    pub source: Partition,
}

pub fn rigid_levi_orbit(o: &Orbit) -> RigidLevi {
    let alpha = &o.partition;
    let singular = alpha.singular_set();
    let mut blocks: Vec<usize> = singular.iter().flat_map(|sd| std::iter::repeat_n(sd.m, sd.d)).collect();
    let mut beta: Vec<usize> = (1..=alpha.len())
        .map(|k| {
            let below: usize = singular.iter().filter(|sd| sd.m >= k).map(|sd| sd.d).sum();
            alpha.part(k) - 2 * below
        })
        .collect();
    let total: usize = blocks.iter().sum();
    let mut residual = o.algebra.residual(total).expect("stripped rows stay nonnegative");
    let mut source = Partition::from_unsorted(std::mem::take(&mut beta));
    if let Some(k) = source.special_index(residual) {
        blocks.push(k);
        residual = residual.residual(k).expect("special rows are long enough");
        let rows = source.len().max(k + 1);
        let parts = (1..=rows)
            .map(|i| match i {
                i if i < k => source.part(i) - 2,
                i if i <= k + 1 => source.part(i) - 1,
                i => source.part(i),
            })
            .collect();
        source = Partition::from_unsorted(parts);
    }
    let levi = LeviShape::new(blocks, o.algebra).expect("blocks fit in the algebra");
    debug_assert_eq!(levi.residual, residual);
    RigidLevi { levi, source }
}

/// No α-singular rows and not special.
pub fn is_birationally_rigid_orbit(o: &Orbit) -> bool {
    o.partition.singular_set().is_empty() && o.h2() == 0
}

/// `dim 𝔓 = dim 𝔓₀ + Σ dim 𝔓_m` for `Spec C[O]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamikawaReport {
    pub dim_total: usize,
    pub dim_smooth: usize,
    /// Singular row to leaf dimension.
    pub leaves: BTreeMap<usize, usize>,
}

impl NamikawaReport {
    pub fn new(dim_smooth: usize, leaves: BTreeMap<usize, usize>) -> Self {
        NamikawaReport {
            dim_total: dim_smooth + leaves.values().sum::<usize>(),
            dim_smooth,
            leaves,
        }
    }
}

/// The row `k` when `o` is type D and its only odd parts sit in rows `k`
/// and `k + 1` with different values.
///
/// Such a row is always singular. Its leaf contributes `d_k + 1` instead of
/// `d_k`: for a gap of 2 the child is very even and splits into two adjoint
/// orbits, each an `A_1` leaf; for a larger gap the `D_{k+1}` leaf carries
/// its full Cartan subalgebra.
pub fn corner_row(o: &Orbit) -> Option<usize> {
    if !o.algebra.is_type_d() {
        return None;
    }
    let alpha = &o.partition;
    let odd: Vec<usize> = (1..=alpha.len()).filter(|&i| alpha.part(i) % 2 == 1).collect();
    match odd[..] {
        [k, l] if l == k + 1 && alpha.part(k) != alpha.part(l) => Some(k),
        _ => None,
    }
}

pub fn namikawa_orbit(o: &Orbit) -> NamikawaReport {
    let corner = corner_row(o);
    let leaves = o
        .partition
        .singular_set()
        .into_iter()
        .map(|sd| (sd.m, sd.d + usize::from(corner == Some(sd.m))))
        .collect();
    NamikawaReport::new(o.h2(), leaves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn orbit(g: Algebra, s: &str) -> Orbit {
        Orbit::new(g, p(s)).unwrap()
    }

    #[test]
    fn induce_examples() {
        assert_eq!(induce(&p("7,2,2"), &[2], Algebra::so(15)).unwrap(), p("9,3,3"));
        assert_eq!(induce(&p(""), &[2], Algebra::sp(4)).unwrap(), p("2,2"));
        // the torus of sp_4 induces the regular orbit
        assert_eq!(induce(&p(""), &[1, 1], Algebra::sp(4)).unwrap(), p("4"));
        assert_eq!(induce(&p("3,1"), &[], Algebra::so(4)).unwrap(), p("3,1"));
    }

    #[test]
    fn step_details() {
        let steps = induce_steps(&p("7,2,2"), &[2], Algebra::so(15)).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].lifted, p("9,4,2"));
        assert!(!steps[0].lifted_valid);
        assert!(!steps[0].birational);
    }

    #[test]
    fn birational_examples() {
        assert!(!is_birational_step(&p("7,2,2"), 2, Algebra::so(15)).unwrap());
        assert!(is_birational_step(&p("2,2"), 1, Algebra::sp(6)).unwrap());
        assert!(is_birational_step(&p("3,3"), 1, Algebra::so(8)).unwrap());
        assert!(is_birational_step(&p("2,2"), 1, Algebra::so(6)).unwrap());
        assert!(is_birational_step(&p("9,4,2"), 1, Algebra::so(17)).is_err());
    }

    #[test]
    fn rigid_levi_examples() {
        let r = rigid_levi_orbit(&orbit(Algebra::sp(30), "10,8,4,3,3,1,1"));
        assert_eq!(r.levi.gl_blocks, vec![5, 2, 2, 1]);
        assert_eq!(r.levi.residual, Algebra::sp(10));
        assert_eq!(r.source, p("2,2,2,1,1,1,1"));
        assert_eq!(r.levi.to_string(), "gl1 × gl2^2 × gl5 × sp10");

        let r = rigid_levi_orbit(&orbit(Algebra::sp(4), "2,2"));
        assert_eq!(r.levi.gl_blocks, vec![2]);
        assert_eq!(r.source, Partition::empty());
        assert_eq!(r.levi.residual, Algebra::sp(0));

        let r = rigid_levi_orbit(&orbit(Algebra::sp(10), "2,2,2,1,1,1,1"));
        assert!(r.levi.gl_blocks.is_empty());
        assert_eq!(r.source, p("2,2,2,1,1,1,1"));
    }

    #[test]
    fn special_correction() {
        // regular so_8: strip to (1,1) in so_2, special at 1
        let r = rigid_levi_orbit(&orbit(Algebra::so(8), "7,1"));
        assert_eq!(r.levi.gl_blocks, vec![1, 1, 1, 1]);
        assert_eq!(r.source, Partition::empty());
        assert_eq!(namikawa_orbit(&orbit(Algebra::so(8), "7,1")).dim_total, 4);
    }

    #[test]
    fn rigidity() {
        assert!(is_birationally_rigid_orbit(&orbit(Algebra::sp(10), "2,2,2,1,1,1,1")));
        assert!(!is_birationally_rigid_orbit(&orbit(Algebra::sp(4), "2,2")));
        assert!(!is_birationally_rigid_orbit(&orbit(Algebra::so(14), "4,4,3,3")));
    }

    #[test]
    fn namikawa_examples() {
        let n = namikawa_orbit(&orbit(Algebra::sp(30), "10,8,4,3,3,1,1"));
        assert_eq!(n.leaves, BTreeMap::from([(1, 1), (2, 2), (5, 1)]));
        assert_eq!((n.dim_smooth, n.dim_total), (0, 4));
        let n = namikawa_orbit(&orbit(Algebra::so(14), "4,4,3,3"));
        assert_eq!(n.dim_smooth, 1);
        assert_eq!(n.dim_total, 2);
        assert_eq!(namikawa_orbit(&orbit(Algebra::sp(4), "2,2")).dim_total, 1);
    }

    #[test]
    fn levi_dims() {
        let l = LeviShape::new(vec![2], Algebra::so(15)).unwrap();
        assert_eq!(l.dim(), 4 + 55);
        assert_eq!(l.target(), Algebra::so(15));
        assert!(LeviShape::new(vec![5], Algebra::sp(8)).is_err());
    }
}
