//! Brute-force referees and the cross-law suite.
//!
//! Everything below the `// independent` marker works on plain vectors and
//! shares no code with the library paths it checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cover::{cover_report, CoverKind};
use crate::degeneration::{codim2_children_with_bound, degeneration_at, minimal_degeneration, Case, KleinianType};
use crate::error::{Error, Result};
use crate::induction::{induce, induce_steps, is_birational_step, namikawa_orbit, rigid_levi_orbit, LeviShape};
use crate::orbit::{enumerate_orbits, Orbit};
use crate::partition::{add_two_then_collapse, collapse_down, Algebra, Partition, Series};

pub const DEFAULT_ORACLE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub series: Series,
    pub max_size: usize,
    pub checks_run: usize,
    /// Checks run per law.
    pub tallies: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Failures of one law.
    pub fn failures_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Failure> + 'a {
        self.failures.iter().filter(move |f| f.check == check)
    }

    /// Checks run for one law.
    pub fn tally(&self, check: &str) -> usize {
        self.tallies.get(check).copied().unwrap_or(0)
    }
}

// independent

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn valid(p: &[usize], so: bool) -> bool {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in p {
        *counts.entry(x).or_default() += 1;
    }
    counts.iter().all(|(v, c)| (v % 2 == 0) != so || c % 2 == 0)
}

fn row(p: &[usize], i: usize) -> usize {
    p.get(i).copied().unwrap_or(0)
}

fn dom(p: &[usize], q: &[usize]) -> bool {
    let (mut a, mut b) = (0, 0);
    for i in 0..p.len().max(q.len()) {
        a += row(p, i);
        b += row(q, i);
        if a < b {
            return false;
        }
    }
    true
}

fn dim(p: &[usize], so: bool) -> usize {
    let n: usize = p.iter().sum();
    let gl: usize = p.iter().enumerate().map(|(i, x)| (2 * i + 1) * x).sum();
    let odd = p.iter().filter(|x| *x % 2 == 1).count();
    if so {
        n * n.saturating_sub(1) / 2 - (gl - odd) / 2
    } else {
        n * (n + 1) / 2 - (gl + odd) / 2
    }
}

fn pi1_exponent(p: &[usize], so: bool) -> u32 {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in p {
        *counts.entry(x).or_default() += 1;
    }
    let n: usize = p.iter().sum();
    let a = counts.keys().filter(|v| *v % 2 == 1).count() as i64;
    let b = counts.keys().filter(|v| *v % 2 == 0).count() as i64;
    let paired = |odd: bool| counts.iter().filter(|(v, _)| (*v % 2 == 1) == odd).all(|(_, c)| c % 2 == 0);
    let e = if so && n % 2 == 1 {
        a - 1
    } else if !so {
        if paired(false) {
            b
        } else {
            b - 1
        }
    } else if paired(true) {
        a - 1
    } else {
        a - 2
    };
    e.max(0) as u32
}

fn valid_partitions(n: usize, so: bool) -> Vec<Vec<usize>> {
    partitions(n).into_iter().filter(|p| valid(p, so)).collect()
}

fn children2(p: &[usize], so: bool) -> Vec<Vec<usize>> {
    let n = p.iter().sum();
    let d = dim(p, so);
    valid_partitions(n, so)
        .into_iter()
        .filter(|q| q.as_slice() != p && dom(p, q) && dim(q, so) + 2 == d)
        .collect()
}

fn max_dominated(seq: &[usize], so: bool) -> Option<Vec<usize>> {
    let mut sorted = seq.to_vec();
    sorted.retain(|&x| x > 0);
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let below: Vec<Vec<usize>> = valid_partitions(sorted.iter().sum(), so)
        .into_iter()
        .filter(|q| dom(&sorted, q))
        .collect();
    let maxima: Vec<&Vec<usize>> = below.iter().filter(|q| below.iter().all(|r| dom(q, r))).collect();
    match maxima[..] {
        [m] => Some(m.clone()),
        _ => None,
    }
}

fn is_so(g: Algebra) -> bool {
    g.series() == Series::So
}

fn part(v: Vec<usize>) -> Partition {
    Partition::from_unsorted(v)
}

/// Children of `o` at dimension distance 2, by exhaustive search.
pub fn brute_children2(o: &Orbit) -> Result<Vec<Partition>> {
    brute_children2_with_bound(o, DEFAULT_ORACLE_BOUND)
}

pub fn brute_children2_with_bound(o: &Orbit, bound: usize) -> Result<Vec<Partition>> {
    let size = o.algebra.size();
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(children2(o.partition.parts(), is_so(o.algebra)).into_iter().map(part).collect())
}

/// The dominance maximum of the valid partitions below `seq`.
pub fn brute_collapse(seq: &[usize], g: Algebra) -> Result<Partition> {
    brute_collapse_with_bound(seq, g, DEFAULT_ORACLE_BOUND)
}

pub fn brute_collapse_with_bound(seq: &[usize], g: Algebra, bound: usize) -> Result<Partition> {
    let sorted = part(seq.to_vec());
    if g.size() > bound {
        return Err(Error::BoundExceeded { size: g.size(), bound });
    }
    if sorted.size() != g.size() {
        return Err(Error::SizeMismatch {
            size: sorted.size(),
            partition: sorted,
            algebra: g,
            expected: g.size(),
        });
    }
    max_dominated(seq, is_so(g)).map(part).ok_or(Error::NonUniqueMaximum(sorted))
}

/// `|H_m|` as `|π₁(O)| / |π₁(O₀)|`, where `O₀` is `α` with its first `m`
/// rows shortened by `2 d_m`.
pub fn hm_order_from_pi1(alpha: &Partition, m: usize, g: Algebra) -> Option<usize> {
    let p = alpha.parts();
    let d = row(p, m - 1).checked_sub(row(p, m))? / 2;
    let source: Vec<usize> = p.iter().enumerate().map(|(i, &x)| if i < m { x - 2 * d } else { x }).collect();
    let so = is_so(g);
    if !valid(&source, so) {
        return None;
    }
    let top = pi1_exponent(p, so);
    let bottom = pi1_exponent(&source.into_iter().filter(|&x| x > 0).collect::<Vec<_>>(), so);
    top.checked_sub(bottom).map(|e| 1 << e)
}

struct Suite {
    tallies: BTreeMap<String, usize>,
    failures: Vec<Failure>,
}

impl Suite {
    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        *self.tallies.entry(name.to_string()).or_default() += 1;
        if !ok {
            self.failures.push(Failure {
                check: name.to_string(),
                witness: witness(),
            });
        }
    }
}

fn algebras(series: Series, max_size: usize) -> Vec<Algebra> {
    match series {
        Series::So => (3..=max_size).map(Algebra::so).collect(),
        Series::Sp => (2..=max_size).step_by(2).map(Algebra::sp).collect(),
    }
}

/// Runs every cross-law over all orbits of `series` up to `max_size`.
pub fn run_suite(series: Series, max_size: usize) -> ConsistencyReport {
    let start = Instant::now();
    let mut s = Suite {
        tallies: BTreeMap::new(),
        failures: Vec::new(),
    };
    for g in algebras(series, max_size) {
        partition_laws(&mut s, g);
        orbit_laws(&mut s, g);
        for o in enumerate_orbits(g) {
            degeneration_laws(&mut s, &o);
            induction_laws(&mut s, &o);
            cover_laws(&mut s, &o);
        }
    }
    step_laws(&mut s, series, max_size);
    ConsistencyReport {
        series,
        max_size,
        checks_run: s.tallies.values().sum(),
        tallies: s.tallies,
        failures: s.failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn partition_laws(s: &mut Suite, g: Algebra) {
    let so = is_so(g);
    let all = partitions(g.size());
    let lib: Vec<Partition> = all.iter().cloned().map(part).collect();
    for (raw, p) in all.iter().zip(&lib) {
        s.check("transpose_involution", p.transpose().transpose() == *p, || p.to_string());
        s.check("validity_oracle", p.is_valid(g) == Ok(valid(raw, so)), || format!("{g} {p}"));
        let fast = collapse_down(raw, g);
        s.check("collapse_maximum", fast.as_ref().ok().map(|c| c.parts()) == max_dominated(raw, so).as_deref(), || {
            format!("{g} {p}")
        });
        if let Ok(c) = fast {
            s.check("collapse_idempotent", collapse_down(c.parts(), g).as_ref() == Ok(&c), || format!("{g} {p}"));
            s.check("brute_collapse_idempotent", brute_collapse_with_bound(c.parts(), g, usize::MAX).as_ref() == Ok(&c), || {
                format!("{g} {c}")
            });
        }
    }
    for (i, p) in lib.iter().enumerate() {
        s.check("dominance_reflexive", p.dominates(p) == Ok(true), || p.to_string());
        for (j, q) in lib.iter().enumerate() {
            let pq = p.dominates(q).unwrap_or(false);
            s.check("dominance_oracle", pq == dom(&all[i], &all[j]), || format!("{p} {q}"));
            if i < j {
                let qp = q.dominates(p).unwrap_or(false);
                s.check("dominance_antisymmetric", !(pq && qp), || format!("{p} {q}"));
            }
        }
    }
    // transitivity on valid partitions keeps the cube small
    let valid_lib: Vec<&Partition> = lib.iter().filter(|p| p.satisfies_parity(g.series())).collect();
    for a in &valid_lib {
        for b in &valid_lib {
            if !a.dominates(b).unwrap_or(false) {
                continue;
            }
            for c in &valid_lib {
                if b.dominates(c).unwrap_or(false) {
                    s.check("dominance_transitive", a.dominates(c) == Ok(true), || format!("{a} {b} {c}"));
                }
            }
        }
    }
}

fn orbit_laws(s: &mut Suite, g: Algebra) {
    let so = is_so(g);
    let orbits = enumerate_orbits(g);
    let expected = valid_partitions(g.size(), so);
    s.check(
        "enumeration",
        orbits.iter().map(|o| o.partition.parts().to_vec()).collect::<Vec<_>>() == expected,
        || g.to_string(),
    );
    for o in &orbits {
        let p = o.partition.parts();
        let d = o.dim();
        s.check("dim_oracle", d == dim(p, so), || o.to_string());
        s.check("dim_even", d % 2 == 0, || o.to_string());
        s.check("very_even_flag", o.very_even == (so && g.size().is_multiple_of(2) && p.iter().all(|x| x % 2 == 0)), || {
            o.to_string()
        });
        let e = o.pi1().exponent;
        s.check("pi1_oracle", e == pi1_exponent(p, so), || o.to_string());
        if e == 0 {
            s.check("trivial_pi1_h2", o.h2_universal_cover() == o.h2(), || o.to_string());
        }
        for q in &orbits {
            if o.partition.strictly_dominates(&q.partition).unwrap_or(false) {
                s.check("dim_monotone", d > q.dim(), || format!("{o} > {}", q.partition));
            }
        }
    }
    let regular = &orbits[0];
    s.check("dim_regular", regular.dim() == g.dim() - g.rank(), || regular.to_string());
    if so && g.size() % 2 == 1 {
        s.check("regular_so_odd_pi1", regular.pi1().exponent == 0, || regular.to_string());
    }
    if !so {
        let minimal = orbits.iter().find(|o| o.partition.part(1) == 2 && o.partition.part(2) <= 1);
        s.check("dim_minimal_sp", minimal.is_some_and(|o| o.dim() == g.size()), || g.to_string());
    }
}

fn degeneration_laws(s: &mut Suite, o: &Orbit) {
    let g = o.algebra;
    let so = is_so(g);
    let alpha = o.partition.parts();
    let brute = children2(alpha, so);
    let singular = o.partition.singular_set();
    s.check("bijection", brute.len() == singular.len(), || o.to_string());

    let mut constructed: Vec<Vec<usize>> = Vec::new();
    for sd in &singular {
        match degeneration_at(o, sd.m) {
            Ok(d) => {
                s.check("d_m_consistency", d.minimal.m == sd.m && d.minimal.d_m == sd.d, || format!("{o} m={}", sd.m));
                let expected_d = if d.minimal.case == Case::A { 1 } else { d.minimal.k };
                s.check("d_m_equals_k", sd.d == expected_d, || format!("{o} m={}", sd.m));
                constructed.push(d.child.partition.parts().to_vec());
            }
            Err(e) => s.check("constructive_agreement", false, || format!("{o} m={}: {e}", sd.m)),
        }
    }
    let mut sorted_constructed = constructed.clone();
    sorted_constructed.sort();
    let mut sorted_brute = brute.clone();
    sorted_brute.sort();
    s.check("constructive_agreement", sorted_constructed == sorted_brute, || o.to_string());
    match codim2_children_with_bound(o, usize::MAX) {
        Ok(fast) => {
            let fast: Vec<Vec<usize>> = fast.iter().map(|d| d.child.partition.parts().to_vec()).collect();
            s.check("children_order", fast == constructed, || o.to_string());
        }
        Err(e) => s.check("children_order", false, || format!("{o}: {e}")),
    }

    let between = valid_partitions(g.size(), so);
    for (i, beta) in brute.iter().enumerate() {
        let b = part(beta.clone());
        s.check("shape_totality", minimal_degeneration(&o.partition, &b).is_ok(), || format!("{o} -> {b}"));
        let gap = between
            .iter()
            .any(|c| c.as_slice() != alpha && c != beta && dom(alpha, c) && dom(c, beta));
        s.check("no_intermediate_orbit", !gap, || format!("{o} -> {b}"));
        for other in &brute[i + 1..] {
            s.check("brute_antichain", !dom(beta, other) && !dom(other, beta), || format!("{o}: {b} vs {}", part(other.clone())));
        }
    }
}

fn induction_laws(s: &mut Suite, o: &Orbit) {
    let g = o.algebra;
    let so = is_so(g);
    let rl = rigid_levi_orbit(o);
    let witness = || format!("{o} via {}", rl.levi);
    let src = rl.source.parts();
    s.check("rigid_source", src.windows(2).all(|w| w[0] - w[1] <= 1) && row(src, src.len().wrapping_sub(1)) <= 1, witness);
    let source_orbit = Orbit::new(rl.levi.residual, rl.source.clone());
    s.check("rigid_source_not_special", source_orbit.as_ref().is_ok_and(|so| so.h2() == 0), witness);
    match induce_steps(&rl.source, &rl.levi.gl_blocks, g) {
        Ok(steps) => {
            let end = steps.last().map_or(&rl.source, |st| &st.result);
            s.check("round_trip", *end == o.partition, witness);
            s.check("round_trip_birational", steps.iter().all(|st| st.birational), witness);
        }
        Err(e) => s.check("round_trip", false, || format!("{o}: {e}")),
    }
    let nam = namikawa_orbit(o);
    s.check("namikawa_blocks", nam.dim_total == rl.levi.block_count(), || {
        format!("{o}: namikawa {} vs {} blocks", nam.dim_total, rl.levi.block_count())
    });
    if let Ok(src_orbit) = &source_orbit {
        s.check("induction_dim_law", o.dim() == src_orbit.dim() + g.dim() - rl.levi.dim(), witness);
        s.check("rigid_source_dim", src_orbit.dim() == dim(src, so), witness);
    }
    for perm in distinct_permutations(&rl.levi.gl_blocks) {
        s.check("order_independence", induce(&rl.source, &perm, g).as_ref() == Ok(&o.partition), || {
            format!("{o} blocks {perm:?}")
        });
    }
}

fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut v = items.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return out;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
}

fn cover_laws(s: &mut Suite, o: &Orbit) {
    let g = o.algebra;
    let report = match cover_report(o) {
        Ok(r) => r,
        Err(e) => return s.check("cover_report", false, || format!("{o}: {e}")),
    };
    let e = report.pi1_exponent;
    s.check(
        "cover_total",
        report.namikawa.dim_total == report.namikawa.dim_smooth + report.leaves.iter().map(|l| l.dim_leaf_cover).sum::<usize>(),
        || o.to_string(),
    );
    for l in &report.leaves {
        let w = || format!("{o} -> {} (case {}, k={})", l.child, l.case, l.k);
        s.check("fold_rule", l.dim_from_type() == Some(l.dim_leaf_cover), w);
        s.check("components", l.cover.components == 1, w);
        s.check("hm_oracle", hm_order_from_pi1(&o.partition, l.m, g) == Some(l.hm.order), w);
        let closure = l.closure.branch_type();
        if e == 0 {
            s.check("trivial_pi1_cover_equals_closure", l.cover.kind == CoverKind::Kleinian(closure), w);
            s.check("trivial_pi1_leaf_dims", l.dim_leaf_cover == l.dim_leaf_orbit, w);
        }
        if l.etale {
            s.check("etale_type_match", l.cover.kind == CoverKind::Kleinian(closure), w);
        }
        if l.case == Case::B && l.hm.order == 2 {
            let expected = if l.d_m >= 2 { CoverKind::Kleinian(KleinianType::a(2 * l.d_m - 3)) } else { CoverKind::Smooth };
            s.check("case_b_cross_law", l.cover.kind == expected, w);
        }
        s.check("very_even_child_at_corner", (l.adjoint_leaves == 2) == (l.case == Case::A && l.dim_leaf_cover == 2), w);
    }
    if e == 0 {
        s.check("trivial_pi1_namikawa", report.namikawa == namikawa_orbit(o), || o.to_string());
    }
}

/// Laws that quantify over a source orbit and an added block.
fn step_laws(s: &mut Suite, series: Series, max_size: usize) {
    let so = series == Series::So;
    for n in 0..=max_size.saturating_sub(2) {
        if !so && n % 2 == 1 {
            continue;
        }
        let Ok(g0) = Algebra::new(series, n) else { continue };
        for raw in valid_partitions(n, so) {
            let p0 = part(raw.clone());
            let rigid0 = p0.singular_set().is_empty() && p0.special_index(g0).is_none();
            for m in 1..=(max_size - n) / 2 {
                let g = Algebra::new(series, n + 2 * m).expect("parity preserved");
                let w = || format!("{p0} in {g0}, gl{m} into {g}");
                let lifted = p0.add_two(m);
                let fast = add_two_then_collapse(&p0, m, g);
                let general = collapse_down(lifted.parts(), g);
                s.check("add_two_cross_law", fast.is_ok() && fast == general, w);
                let Ok(beta) = fast else { continue };
                let levi = LeviShape::new(vec![m], g).expect("sizes match");
                s.check("induction_dim_law", dim(beta.parts(), so) == dim(&raw, so) + g.dim() - levi.dim(), w);
                if rigid0 && is_birational_step(&p0, m, g).unwrap_or(false) {
                    let in_s = beta.gap_half(m) > 0;
                    let special = beta.is_special_at(m, g);
                    s.check("restrict", in_s || special, w);
                }
                for m2 in 1..=(max_size - n) / 2 - m {
                    let g2 = Algebra::new(series, n + 2 * (m + m2)).expect("parity preserved");
                    s.check("order_independence_pairs", induce(&p0, &[m, m2], g2) == induce(&p0, &[m2, m], g2), || {
                        format!("{p0} in {g0}, blocks {m},{m2}")
                    });
                }
            }
        }
    }
}
