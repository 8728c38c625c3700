//! Partitions and the classical algebras they label.
//!
//! A nilpotent orbit of `so_N` or `sp_N` is recorded by the Jordan type of
//! any of its elements: a partition of `N` satisfying a parity rule. Rows are
//! addressed 1-based, and every index past the stored length reads as `0`,
//! so gaps such as `α_m − α_{m+1}` are defined for the last row too.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orthogonal or symplectic series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    #[serde(rename = "so")]
    So,
    #[serde(rename = "sp")]
    Sp,
}

impl Series {
    /// `+1` for `so`, `-1` for `sp`.
    pub fn epsilon(self) -> i32 {
        match self {
            Series::So => 1,
            Series::Sp => -1,
        }
    }

    /// Whether a part of this size is constrained to occur an even number
    /// of times: even parts in `so`, odd parts in `sp`.
    pub fn is_restricted(self, part: usize) -> bool {
        match self {
            Series::So => part.is_multiple_of(2),
            Series::Sp => part % 2 == 1,
        }
    }

    /// Whether `l` has the same parity as the algebra, i.e. `(-1)^l = ε`.
    pub fn matches_parity(self, l: usize) -> bool {
        self.is_restricted(l)
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Series::So => "so",
            Series::Sp => "sp",
        }
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "so" | "b" | "d" => Ok(Series::So),
            "sp" | "c" => Ok(Series::Sp),
            _ => Err(Error::Parse {
                what: "series",
                input: s.to_string(),
                reason: "expected `so` or `sp`".into(),
            }),
        }
    }
}

/// `so_N` or `sp_N`.
///
/// Any size is accepted by [`Algebra::new`] (sp sizes must be even) so that
/// residual factors such as `sp_0` or `so_2` can appear as induction
/// sources. The text grammar (`so15`, `sp30`) only admits the sizes a user
/// would name as an ambient algebra: `so_N` with `N ≥ 3`, `sp_N` with
/// `N ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Algebra {
    series: Series,
    size: usize,
}

impl Algebra {
    pub fn new(series: Series, size: usize) -> Result<Self> {
        if series == Series::Sp && size % 2 == 1 {
            return Err(Error::OddSymplectic(size));
        }
        Ok(Algebra { series, size })
    }

    pub fn so(size: usize) -> Self {
        Algebra {
            series: Series::So,
            size,
        }
    }

    /// Panics on odd `size`; use [`Algebra::new`] for untrusted input.
    pub fn sp(size: usize) -> Self {
        Algebra::new(Series::Sp, size).expect("sp_N needs even N")
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn epsilon(&self) -> i32 {
        self.series.epsilon()
    }

    /// Type D: `so_N` with `N` even.
    pub fn is_type_d(&self) -> bool {
        self.series == Series::So && self.size.is_multiple_of(2)
    }

    pub fn dim(&self) -> usize {
        let n = self.size;
        match self.series {
            Series::So => n * n.saturating_sub(1) / 2,
            Series::Sp => n * (n + 1) / 2,
        }
    }

    pub fn rank(&self) -> usize {
        self.size / 2
    }

    /// `so_3`, `so_5`, ... and `so_6`, `so_8`, ... and every nonzero `sp`.
    pub fn is_simple(&self) -> bool {
        match self.series {
            Series::So => self.size >= 3 && self.size != 4,
            Series::Sp => self.size >= 2,
        }
    }

    /// Same series, size `N - 2·blocks`: the classical factor of a Levi
    /// `gl_{t_1} × … × gl_{t_p} × g_{N - 2Σt}`.
    pub fn residual(&self, blocks: usize) -> Result<Algebra> {
        match self.size.checked_sub(2 * blocks) {
            Some(size) => Algebra::new(self.series, size),
            None => Err(Error::ResidualTooSmall {
                algebra: *self,
                blocks,
            }),
        }
    }

    /// Parse without the ambient-size minimums.
    pub fn parse_any(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let err = |reason: &str| Error::Parse {
            what: "algebra",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = t.replace('_', "");
        if t.len() < 3 {
            return Err(err("expected `so<N>` or `sp<N>`"));
        }
        let series = match &t[..2] {
            "so" => Series::So,
            "sp" => Series::Sp,
            _ => return Err(err("expected `so<N>` or `sp<N>`")),
        };
        let size: usize = t[2..].parse().map_err(|_| err("size is not a number"))?;
        Algebra::new(series, size).map_err(|e| err(&e.to_string()))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.prefix(), self.size)
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g = Algebra::parse_any(s)?;
        let min = match g.series {
            Series::So => 3,
            Series::Sp => 2,
        };
        if g.size < min {
            return Err(Error::Parse {
                what: "algebra",
                input: s.to_string(),
                reason: format!("{} needs N >= {min}", g.series.prefix()),
            });
        }
        Ok(g)
    }
}

impl TryFrom<String> for Algebra {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Algebra::parse_any(&s)
    }
}

impl From<Algebra> for String {
    fn from(g: Algebra) -> String {
        g.to_string()
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// An α-singular row `m` (`α_m − α_{m+1} ≥ 2`) and `d_m = ⌊(α_m − α_{m+1})/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularData {
    pub m: usize,
    pub d: usize,
}

impl Partition {
    /// Trailing zeros are dropped; any other zero or an increase is rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                what: "partition",
                input: format!("{parts:?}"),
                reason: format!("parts must be weakly decreasing ({} < {})", w[0], w[1]),
            });
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts the sequence and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, …, 1)` of length `n`.
    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `α_i`, 1-based; `0` past the last row (and for `i = 0`, which is
    /// never a row).
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.0.iter().filter(|&&x| x == value).count()
    }

    /// Distinct values with their multiplicities, largest value first.
    pub fn value_counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().take_while(|&&x| x >= j).count())
                .collect(),
        )
    }

    /// Prefix-sum comparison; errors when the sizes differ.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::IncomparableSizes(self.size(), other.size()));
        }
        let rows = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 1..=rows {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self` dominates `other` and differs from it.
    pub fn strictly_dominates(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominates(other)?)
    }

    fn check_size(&self, g: Algebra) -> Result<()> {
        if self.size() != g.size() {
            return Err(Error::SizeMismatch {
                partition: self.clone(),
                size: self.size(),
                algebra: g,
                expected: g.size(),
            });
        }
        Ok(())
    }

    /// Largest restricted part that occurs an odd number of times, with its
    /// multiplicity.
    pub fn parity_violation(&self, series: Series) -> Option<(usize, usize)> {
        self.value_counts()
            .into_iter()
            .find(|&(v, c)| series.is_restricted(v) && c % 2 == 1)
    }

    /// Parity rule only, no size check.
    pub fn satisfies_parity(&self, series: Series) -> bool {
        self.parity_violation(series).is_none()
    }

    /// Even parts occur with even multiplicity (`so`), resp. odd parts do
    /// (`sp`).
    pub fn is_valid(&self, g: Algebra) -> Result<bool> {
        self.check_size(g)?;
        Ok(self.satisfies_parity(g.series()))
    }

    /// Like [`Partition::is_valid`], but names the offending part.
    pub fn validate(&self, g: Algebra) -> Result<()> {
        self.check_size(g)?;
        match self.parity_violation(g.series()) {
            None => Ok(()),
            Some((v, c)) => {
                let kind = if v % 2 == 0 { "even" } else { "odd" };
                Err(Error::InvalidPartition {
                    partition: self.clone(),
                    algebra: g,
                    reason: format!("{kind} part {v} occurs {}", times(c)),
                })
            }
        }
    }

    /// Type D with every part even.
    pub fn is_very_even(&self, g: Algebra) -> bool {
        g.is_type_d() && self.0.iter().all(|x| x % 2 == 0)
    }

    /// α-singular rows in increasing order.
    pub fn singular_set(&self) -> Vec<SingularData> {
        (1..=self.len())
            .filter_map(|m| {
                let gap = self.part(m) - self.part(m + 1);
                (gap >= 2).then_some(SingularData { m, d: gap / 2 })
            })
            .collect()
    }

    /// `d_m` for any row (zero when `m` is not singular).
    pub fn gap_half(&self, m: usize) -> usize {
        self.part(m).saturating_sub(self.part(m + 1)) / 2
    }

    /// Type D, `α_k = α_{k+1}` odd, and these are the only odd rows.
    pub fn is_special_at(&self, k: usize, g: Algebra) -> bool {
        if !g.is_type_d() || k == 0 {
            return false;
        }
        let v = self.part(k);
        v % 2 == 1 && self.part(k + 1) == v && self.0.iter().filter(|x| *x % 2 == 1).count() == 2
    }

    /// The (unique) `k` at which the partition is special, if any.
    pub fn special_index(&self, g: Algebra) -> Option<usize> {
        if !g.is_type_d() {
            return None;
        }
        let first_odd = self.0.iter().position(|x| x % 2 == 1)? + 1;
        self.is_special_at(first_odd, g).then_some(first_odd)
    }

    /// `α^m`: add 2 to each of the first `m` rows, padding with zero rows.
    pub fn add_two(&self, m: usize) -> Partition {
        let rows = self.len().max(m);
        Partition((1..=rows).map(|i| self.part(i) + if i <= m { 2 } else { 0 }).collect())
    }

    /// Rows of `#`, one line per part.
    pub fn diagram(&self) -> String {
        self.0
            .iter()
            .map(|&x| "#".repeat(x))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn times(c: usize) -> String {
    match c {
        1 => "once".to_string(),
        2 => "twice".to_string(),
        c => format!("{c} times"),
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on rows; a refinement of dominance for equal sizes.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `10,8,4,3,3,1,1`, optionally in parentheses. The empty string, `0` and
/// `()` denote the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                let p = p.trim();
                match p.parse::<usize>() {
                    Ok(0) | Err(_) => Err(Error::Parse {
                        what: "partition",
                        input: s.to_string(),
                        reason: format!("{p:?} is not a positive integer"),
                    }),
                    Ok(v) => Ok(v),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| match e {
            Error::Parse { reason, .. } => Error::Parse {
                what: "partition",
                input: s.to_string(),
                reason,
            },
            e => e,
        })
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

/// Lusztig-Spaltenstein induction from `{0} × O_α ⊂ gl_m × g_{N-2m}` on
/// partitions.
///
/// If `α^m` is valid for `target` it is the answer; otherwise
/// `α_m = α_{m+1}` has the parity of the algebra and the rows `m, m+1`
/// receive `+1` each instead of `+2` on row `m` only.
pub fn add_two_then_collapse(p: &Partition, m: usize, target: Algebra) -> Result<Partition> {
    if m == 0 {
        return Ok(p.clone());
    }
    let source = target.residual(m)?;
    p.validate(source)?;
    let lifted = p.add_two(m);
    if lifted.satisfies_parity(target.series()) {
        return Ok(lifted);
    }
    let v = p.part(m);
    if p.part(m + 1) != v || !target.series().matches_parity(v) {
        return Err(Error::CollapsePrecondition {
            partition: p.clone(),
            m,
            algebra: target,
        });
    }
    let rows = p.len().max(m + 1);
    let parts = (1..=rows)
        .map(|i| match i.cmp(&m) {
            Ordering::Less => p.part(i) + 2,
            _ if i <= m + 1 => p.part(i) + 1,
            _ => p.part(i),
        })
        .collect();
    Partition::new(parts)
}

/// The largest valid partition for `g` dominated by `seq`.
///
/// Repeatedly takes the largest restricted part `q` of odd multiplicity,
/// lowers its last occurrence to `q - 1` and raises the first later row
/// below `q - 1` by one.
pub fn collapse_down(seq: &[usize], g: Algebra) -> Result<Partition> {
    let mut rows: Vec<usize> = seq.iter().copied().filter(|&x| x > 0).collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    let p = Partition(rows);
    p.check_size(g)?;
    let mut rows = p.0;
    loop {
        let current = Partition(rows);
        let Some((q, _)) = current.parity_violation(g.series()) else {
            return Ok(current);
        };
        rows = current.0;
        let last = rows.iter().rposition(|&x| x == q).expect("q is a part");
        rows[last] -= 1;
        match rows[last + 1..].iter().position(|&x| x + 1 < q) {
            Some(off) => rows[last + 1 + off] += 1,
            None => rows.push(1),
        }
        rows.retain(|&x| x > 0);
    }
}
