//! Twister lattice, degree class groups and semistabilization.
//!
//! Twister multidegrees are `-L n` for the graph Laplacian `L`. Classes are
//! read off the cokernel of `L` through its Smith normal form `P L Q = D`:
//! coordinates of `P d` at the nontrivial invariant factors give residues,
//! and the coordinate at the zero diagonal entry is `±|d|`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{counts, laplacian_rows, DualGraph, Limits};
use crate::linalg::{smith_normal_form, IntMatrix, SmithForm};
use crate::scalar::ExactInt;
use crate::stability::{enumerate_semistable_with, worst_violation, SubcurveTable};

/// Integer vector indexed by vertex order, with its total cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    entries: Vec<i64>,
    total: i64,
}

impl Multidegree {
    pub fn new(entries: Vec<i64>) -> Self {
        let total = entries.iter().sum();
        Multidegree { entries, total }
    }

    pub fn zeros(n: usize) -> Self {
        Multidegree { entries: vec![0; n], total: 0 }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("adding multidegrees")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multidegree::new(entries))
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Result<Multidegree> {
        let neg = Multidegree::new(other.entries.iter().map(|x| -x).collect());
        self.checked_add(&neg)
    }

    /// Entries at the given positions, in that order.
    pub fn restrict(&self, positions: &[usize]) -> Multidegree {
        Multidegree::new(positions.iter().map(|&i| self.entries[i]).collect())
    }

    /// Relabels coordinates as [`DualGraph::permuted`] relabels vertices.
    pub fn permuted(&self, perm: &[usize]) -> Multidegree {
        let mut out = vec![0; self.len()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = self.entries[i];
        }
        Multidegree::new(out)
    }

    pub(crate) fn sum_over_mask(&self, mask: u64) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x)
            .sum()
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree::new(v)
    }
}

impl Index<usize> for Multidegree {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.entries[i]
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Multidegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multidegree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Multidegree::new(Vec::<i64>::deserialize(d)?))
    }
}

/// Laplacian with loops ignored.
pub fn laplacian(g: &DualGraph) -> IntMatrix<i64> {
    IntMatrix::from_i64_rows(&laplacian_rows(g))
}

/// Multidegree of the twister `sum n_i C_i`, namely `-L n`.
pub fn twister_multidegree(g: &DualGraph, n: &[i64]) -> Result<Multidegree> {
    let gamma = g.vertex_count();
    if n.len() != gamma {
        return Err(Error::LengthMismatch { expected: gamma, found: n.len() });
    }
    let l = laplacian_rows(g);
    let entries = l
        .iter()
        .map(|row| {
            row.iter().zip(n).try_fold(0i64, |acc, (a, b)| {
                a.checked_mul(*b)
                    .and_then(|p| acc.checked_sub(p))
                    .ok_or(Error::Overflow("computing a twister multidegree"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Multidegree::new(entries))
}

/// A lattice basis of the twister multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwisterLattice {
    pub basis: Vec<Multidegree>,
    pub rank: usize,
}

/// Columns of `-L` at all vertices but the last. They generate the image
/// because the columns of `L` sum to zero, and they are independent because
/// `L` has rank `gamma - 1` on a connected graph.
pub fn twister_lattice(g: &DualGraph) -> Result<TwisterLattice> {
    let gamma = g.vertex_count();
    let basis = (0..gamma - 1)
        .map(|i| {
            let mut e = vec![0; gamma];
            e[i] = 1;
            twister_multidegree(g, &e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwisterLattice { rank: basis.len(), basis })
}

/// Coset label of a multidegree in the degree class group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub residues: Vec<BigInt>,
    pub total_degree: i64,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}; {}]", parts.join(","), self.total_degree)
    }
}

/// Smith presentation of the multidegree classes modulo twisters.
#[derive(Clone, Debug)]
pub struct DegreeClassGroup {
    gamma: usize,
    laplacian: IntMatrix<BigInt>,
    smith: SmithForm<BigInt>,
    /// Rows of `P` carrying a nontrivial invariant factor.
    factor_rows: Vec<usize>,
    invariant_factors: Vec<BigInt>,
    order: BigInt,
}

pub fn degree_class_group(g: &DualGraph) -> DegreeClassGroup {
    let gamma = g.vertex_count();
    let laplacian = IntMatrix::<BigInt>::from_i64_rows(&laplacian_rows(g));
    let smith = smith_normal_form(&laplacian);
    let factor_rows: Vec<usize> = smith
        .diagonal
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero() && !d.is_one())
        .map(|(i, _)| i)
        .collect();
    let invariant_factors: Vec<BigInt> = factor_rows.iter().map(|&i| smith.diagonal[i].clone()).collect();
    let order = invariant_factors.iter().fold(BigInt::one(), |acc, f| acc * f);
    DegreeClassGroup { gamma, laplacian, smith, factor_rows, invariant_factors, order }
}

impl DegreeClassGroup {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.gamma
    }

    fn check_len(&self, d: &Multidegree) -> Result<()> {
        if d.len() != self.gamma {
            return Err(Error::LengthMismatch { expected: self.gamma, found: d.len() });
        }
        Ok(())
    }

    fn p_row_dot(&self, row: usize, d: &[BigInt]) -> BigInt {
        self.smith.p.row(row).iter().zip(d).map(|(a, b)| a * b).sum()
    }

    fn residues_of(&self, d: &[BigInt]) -> Vec<BigInt> {
        self.factor_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&r, f)| self.p_row_dot(r, d).rem_nonneg(f))
            .collect()
    }

    pub fn class_of(&self, d: &Multidegree) -> Result<ClassLabel> {
        self.check_len(d)?;
        let big: Vec<BigInt> = d.entries().iter().map(|&x| BigInt::from(x)).collect();
        Ok(ClassLabel { residues: self.residues_of(&big), total_degree: d.total() })
    }

    pub fn equivalent(&self, d: &Multidegree, e: &Multidegree) -> Result<bool> {
        Ok(d.total() == e.total() && self.class_of(d)? == self.class_of(e)?)
    }

    /// Solves `e = d + twister_multidegree(n)`, normalized so that the
    /// smallest entry of `n` is zero. `None` when `d` and `e` are not
    /// equivalent.
    pub fn twist_between(&self, d: &Multidegree, e: &Multidegree) -> Result<Option<Vec<i64>>> {
        self.check_len(d)?;
        self.check_len(e)?;
        // L n = d - e  <=>  D (Q^-1 n) = P (d - e)
        let diff: Vec<BigInt> = d
            .entries()
            .iter()
            .zip(e.entries())
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect();
        let rhs = self.smith.p.mul_vec(&diff);
        let mut z = Vec::with_capacity(self.gamma);
        for (r, dii) in rhs.iter().zip(&self.smith.diagonal) {
            if dii.is_zero() {
                if !r.is_zero() {
                    return Ok(None);
                }
                z.push(BigInt::zero());
            } else {
                let (q, rem) = r.div_rem(dii);
                if !rem.is_zero() {
                    return Ok(None);
                }
                z.push(q);
            }
        }
        let n = self.smith.q.mul_vec(&z);
        let min = n.iter().min().cloned().unwrap_or_default();
        n.into_iter()
            .map(|x| (x - &min).to_i64().ok_or(Error::Overflow("solving for a twist")))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// One multidegree of total `t` per class, ordered by residue vector
    /// lexicographically. Each is the reduced divisor with respect to
    /// vertex 0 in its class.
    pub fn class_representatives(&self, g: &DualGraph, t: i64) -> Result<Vec<Multidegree>> {
        self.class_representatives_with(g, t, &Limits::default())
    }

    pub fn class_representatives_with(&self, g: &DualGraph, t: i64, limits: &Limits) -> Result<Vec<Multidegree>> {
        if g.vertex_count() != self.gamma {
            return Err(Error::LengthMismatch { expected: self.gamma, found: g.vertex_count() });
        }
        if self.order > BigInt::from(limits.max_box_points) {
            return Err(Error::CapExceeded {
                what: "class representative",
                limit: limits.max_box_points,
                required: self.order.to_u64().unwrap_or(u64::MAX),
            });
        }
        let mut base = vec![BigInt::zero(); self.gamma];
        base[0] = BigInt::from(t);
        let base_res = self.residues_of(&base);
        let mut out = Vec::new();
        let mut residue = vec![BigInt::zero(); self.invariant_factors.len()];
        loop {
            let mut y = vec![BigInt::zero(); self.gamma];
            for (k, &row) in self.factor_rows.iter().enumerate() {
                y[row] = (&residue[k] - &base_res[k]).rem_nonneg(&self.invariant_factors[k]);
            }
            let lift = self.smith.p_inv.mul_vec(&y);
            let entries = base
                .iter()
                .zip(&lift)
                .map(|(a, b)| (a + b).to_i64().ok_or(Error::Overflow("lifting a class representative")))
                .collect::<Result<Vec<_>>>()?;
            out.push(reduce_at(g, Multidegree::new(entries), 0)?);
            if !advance_mixed_radix(&mut residue, &self.invariant_factors) {
                break;
            }
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> &IntMatrix<BigInt> {
        &self.laplacian
    }
}

fn advance_mixed_radix(digits: &mut [BigInt], radices: &[BigInt]) -> bool {
    for (d, r) in digits.iter_mut().zip(radices).rev() {
        *d += 1;
        if &*d < r {
            return true;
        }
        *d = BigInt::zero();
    }
    false
}

/// The `q`-reduced divisor equivalent to `d`: nonnegative away from `q`,
/// and no nonempty set avoiding `q` can fire legally.
pub fn reduce_at(g: &DualGraph, d: Multidegree, q: usize) -> Result<Multidegree> {
    let n = g.vertex_count();
    if d.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: d.len() });
    }
    if q >= n {
        return Err(Error::VertexIndex(q));
    }
    let l = laplacian_rows(g);
    let mut x: Vec<i64> = d.entries().to_vec();
    let fire = |x: &mut Vec<i64>, set: &[bool], times: i64| -> Result<()> {
        for (i, row) in l.iter().enumerate() {
            let delta: i64 = row.iter().zip(set).filter(|(_, &s)| s).map(|(a, _)| a).sum();
            let change = delta.checked_mul(times).ok_or(Error::Overflow("reducing a divisor"))?;
            x[i] = x[i].checked_sub(change).ok_or(Error::Overflow("reducing a divisor"))?;
        }
        Ok(())
    };

    // Distances from q; each vertex at distance k > 0 has a neighbour at k - 1.
    let mut dist = vec![usize::MAX; n];
    dist[q] = 0;
    let mut queue = std::collections::VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if l[v][w] < 0 && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let depth = dist.iter().copied().max().unwrap_or(0);
    for k in (1..=depth).rev() {
        // Firing everything closer than k feeds layer k and leaves deeper layers alone.
        let shallow: Vec<bool> = dist.iter().map(|&t| t < k).collect();
        let mut times = 0i64;
        for v in (0..n).filter(|&v| dist[v] == k && x[v] < 0) {
            let inflow: i64 = (0..n).filter(|&w| shallow[w]).map(|w| -l[v][w]).sum();
            times = times.max(Integer::div_ceil(&(-x[v]), &inflow));
        }
        if times > 0 {
            fire(&mut x, &shallow, times)?;
        }
    }

    // Dhar's burning algorithm from q, firing the unburnt set while possible.
    loop {
        let mut burnt = vec![false; n];
        burnt[q] = true;
        loop {
            let next = (0..n).find(|&v| {
                !burnt[v] && {
                    let into_burnt: i64 = (0..n).filter(|&w| burnt[w] && w != v).map(|w| -l[v][w]).sum();
                    x[v] < into_burnt
                }
            });
            match next {
                Some(v) => burnt[v] = true,
                None => break,
            }
        }
        let unburnt: Vec<bool> = burnt.iter().map(|b| !b).collect();
        if !unburnt.iter().any(|&u| u) {
            break;
        }
        let times = (0..n)
            .filter(|&v| unburnt[v])
            .filter_map(|v| {
                let out: i64 = (0..n).filter(|&w| burnt[w]).map(|w| -l[v][w]).sum();
                (out > 0).then(|| x[v] / out)
            })
            .min()
            .unwrap_or(1)
            .max(1);
        fire(&mut x, &unburnt, times)?;
    }
    Ok(Multidegree::new(x))
}

/// How [`semistabilize`] found its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemistabilizeStrategy {
    AlreadySemistable,
    ChipFiring,
    CosetSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semistabilized {
    pub multidegree: Multidegree,
    pub twist: Vec<i64>,
    pub strategy: SemistabilizeStrategy,
    pub firings: usize,
}

/// Moves a degree `g-1` multidegree into the semistable region by twisters.
pub fn semistabilize(g: &DualGraph, d: &Multidegree) -> Result<Semistabilized> {
    semistabilize_with(g, d, &Limits::default())
}

pub fn semistabilize_with(g: &DualGraph, d: &Multidegree, limits: &Limits) -> Result<Semistabilized> {
    let gamma = g.vertex_count();
    if d.len() != gamma {
        return Err(Error::LengthMismatch { expected: gamma, found: d.len() });
    }
    let genus = counts(g).genus;
    if d.total() != genus - 1 {
        return Err(Error::TotalDegree { expected: genus - 1, found: d.total() });
    }
    let table = SubcurveTable::new(g, limits)?;
    let full = table.full_mask();
    let mut current = d.clone();
    let mut twist = vec![0i64; gamma];
    let mut firings = 0;
    while let Some(z) = worst_violation(&table, &current) {
        if firings == limits.max_firings {
            return coset_search(g, d, limits);
        }
        let complement: Vec<i64> = (0..gamma).map(|i| i64::from((full & !z) >> i & 1 == 1)).collect();
        current = current.checked_add(&twister_multidegree(g, &complement)?)?;
        for (t, c) in twist.iter_mut().zip(&complement) {
            *t += c;
        }
        firings += 1;
    }
    let min = twist.iter().copied().min().unwrap_or(0);
    twist.iter_mut().for_each(|t| *t -= min);
    let strategy = if firings == 0 {
        SemistabilizeStrategy::AlreadySemistable
    } else {
        SemistabilizeStrategy::ChipFiring
    };
    Ok(Semistabilized { multidegree: current, twist, strategy, firings })
}

fn coset_search(g: &DualGraph, d: &Multidegree, limits: &Limits) -> Result<Semistabilized> {
    let dcg = degree_class_group(g);
    let target = dcg.class_of(d)?;
    for e in enumerate_semistable_with(g, limits)? {
        if dcg.class_of(&e)? == target {
            let twist = dcg
                .twist_between(d, &e)?
                .ok_or_else(|| Error::Internal("equal labels without a twist".into()))?;
            return Ok(Semistabilized {
                multidegree: e,
                twist,
                strategy: SemistabilizeStrategy::CosetSearch,
                firings: limits.max_firings,
            });
        }
    }
    Err(Error::Internal(format!("class of {d} has no semistable representative")))
}
