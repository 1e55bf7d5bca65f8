//! Finite-type root systems and their shifted (dot) Weyl combinatorics.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * `cartan[i][j] = ⟨α_j, α_i∨⟩`, so simple reflections act on a root `β`
//!   (simple-root coordinates) by `s_i β = β − (Σ_j cartan[i][j] β_j) α_i`.
//! * Weights live in fundamental-weight coordinates:
//!   `coords[i] = ⟨λ, α_i∨⟩`.  The fundamental coordinates of a root are the
//!   corresponding column combination of the Cartan matrix.
//! * `Φ⁺` carries a fixed total order — ascending height, then lexicographic
//!   in simple-root coordinates — which also fixes PBW monomial order and all
//!   tie-breaks downstream.

use num::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rational, RationalMatrix};
use crate::ratio;

/// Safety caps for the reflection closure; any genuinely finite type of rank
/// ≤ 8 stays far below these.
const MAX_POSITIVE_ROOTS: usize = 240;
const MAX_ROOT_HEIGHT: i64 = 64;

/// A weight of the Cartan subalgebra in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// `⟨λ, β∨⟩` for a coroot in simple-coroot coordinates.
    pub fn pair_coroot(&self, coroot: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(coroot.iter())
            .map(|(c, &k)| c * rat(k))
            .sum()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&ratio::to_string(c))?;
        }
        seq.end()
    }
}

/// A positive root with its coroot, both in simple(-co)root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub simple: Vec<i64>,
    pub coroot: Vec<i64>,
    pub fund: Vec<i64>,
    pub height: i64,
}

impl Root {
    /// Human-readable name in terms of simple roots, e.g. `a1+2a2`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.simple.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                parts.push(format!("a{}", i + 1));
            } else {
                parts.push(format!("{}a{}", c, i + 1));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// A Weyl group element as a signed permutation of the positive roots,
/// together with a reduced word in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// `images[j] = (k, positive)`: the image of the j-th positive root is
    /// `±β_k`.
    pub images: Vec<(usize, bool)>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_longest(&self) -> bool {
        self.images.iter().all(|&(_, positive)| !positive)
    }
}

/// One downward step of a strong-linkage chain: the positive root reflected
/// in, and the resulting weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkageStep {
    pub root_label: String,
    #[serde(skip)]
    pub root_index: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkageChain {
    pub start: Weight,
    pub end: Weight,
    pub steps: Vec<LinkageStep>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinkageOutcome {
    Linked(LinkageChain),
    NotLinked,
}

/// A finite root system built from a Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index_by_simple: BTreeMap<Vec<i64>, usize>,
    rho: Weight,
    inv_cartan: Vec<Vec<Rational>>,
    /// Symmetrizer: `(α_i, α_j) = d_i · cartan[i][j]` is symmetric.
    sym_d: Vec<Rational>,
    weyl: Vec<WeylElement>,
}

/// Cartan matrices for the named types accepted by the CLI.
pub fn cartan_by_name(name: &str) -> Option<Vec<Vec<i64>>> {
    match name.to_ascii_uppercase().as_str() {
        "A1" => Some(vec![vec![2]]),
        "A2" => Some(vec![vec![2, -1], vec![-1, 2]]),
        "B2" => Some(vec![vec![2, -1], vec![-2, 2]]),
        "G2" => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

/// Build a root system by closing the simple roots under simple reflections.
pub fn build_root_system(cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
    let rank = cartan.len();
    if rank == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != rank {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {} != 2", i)));
        }
        for (j, &v) in row.iter().enumerate() {
            if j != i && v > 0 {
                return Err(Error::InvalidCartan(format!(
                    "positive off-diagonal entry at ({i},{j})"
                )));
            }
            if j != i && (v == 0) != (cartan[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "asymmetric zero pattern at ({i},{j})"
                )));
            }
        }
    }

    // Closure of {(α_i, α_i∨)} under all simple reflections. Reflections of
    // roots are roots, so for finite type this terminates with Φ⁺ ∪ Φ⁻.
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
    for i in 0..rank {
        let mut s = vec![0i64; rank];
        s[i] = 1;
        let mut c = vec![0i64; rank];
        c[i] = 1;
        seen.insert(s.clone());
        queue.push_back((s, c));
    }
    let mut positive: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    while let Some((s, c)) = queue.pop_front() {
        let height: i64 = s.iter().sum();
        if height.abs() > MAX_ROOT_HEIGHT || positive.len() > MAX_POSITIVE_ROOTS {
            return Err(Error::FiniteType(format!(
                "closure grew past {} positive roots / height {}",
                MAX_POSITIVE_ROOTS, MAX_ROOT_HEIGHT
            )));
        }
        if s.iter().all(|&x| x >= 0) {
            positive.push((s.clone(), c.clone()));
        }
        for i in 0..rank {
            // ⟨β, α_i∨⟩ and ⟨α_i, β∨-side⟩ drive the two reflections.
            let pair_root: i64 = (0..rank).map(|j| cartan[i][j] * s[j]).sum();
            let pair_coroot: i64 = (0..rank).map(|j| cartan[j][i] * c[j]).sum();
            let mut s2 = s.clone();
            s2[i] -= pair_root;
            let mut c2 = c.clone();
            c2[i] -= pair_coroot;
            if seen.insert(s2.clone()) {
                queue.push_back((s2, c2));
            }
        }
    }

    positive.sort_by(|(a, _), (b, _)| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then(a.cmp(b))
    });

    let positive: Vec<Root> = positive
        .into_iter()
        .map(|(simple, coroot)| {
            let fund: Vec<i64> = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * simple[j]).sum())
                .collect();
            let height = simple.iter().sum();
            Root {
                simple,
                coroot,
                fund,
                height,
            }
        })
        .collect();

    let index_by_simple = positive
        .iter()
        .enumerate()
        .map(|(k, r)| (r.simple.clone(), k))
        .collect();

    let rho = Weight(vec![Rational::one(); rank]);

    // ρ really is the half-sum of the positive roots in these coordinates.
    for i in 0..rank {
        let half_sum: i64 = positive.iter().map(|r| r.fund[i]).sum();
        if half_sum != 2 {
            return Err(Error::InternalConsistency(format!(
                "half-sum of positive roots is not rho at coordinate {i}"
            )));
        }
    }

    let inv_cartan = invert_cartan(&cartan)?;
    let sym_d = symmetrizer(&cartan)?;

    let mut rs = RootSystem {
        rank,
        cartan,
        positive,
        index_by_simple,
        rho,
        inv_cartan,
        sym_d,
        weyl: Vec::new(),
    };
    if rank <= 3 {
        rs.weyl = rs.enumerate_weyl()?;
    }
    Ok(rs)
}

fn invert_cartan(cartan: &[Vec<i64>]) -> Result<Vec<Vec<Rational>>> {
    let n = cartan.len();
    let a = RationalMatrix::from_int_rows(cartan);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        match linalg::solve(&a, &e)? {
            linalg::SolveOutcome::Solution(x) => cols.push(x),
            linalg::SolveOutcome::Inconsistent { .. } => {
                return Err(Error::InvalidCartan("singular Cartan matrix".into()))
            }
        }
    }
    // cols[j][i] = (A⁻¹)_{ij}
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

/// Positive rationals `d_i` with `d_i·cartan[i][j]` symmetric, normalized so
/// the first index of each Dynkin component has `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = &di * rat(cartan[i][j]) / rat(cartan[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) => {
                        if *existing != dj {
                            return Err(Error::InvalidCartan(
                                "Cartan matrix is not symmetrizable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Full Weyl group; empty for rank > 3.
    pub fn weyl_elements(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive[index]
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut s = vec![0i64; self.rank];
        s[i] = 1;
        self.index_by_simple[&s]
    }

    pub fn index_of_simple_coords(&self, coords: &[i64]) -> Option<usize> {
        self.index_by_simple.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        if coords.iter().all(|&c| c >= 0) {
            self.index_by_simple.contains_key(coords)
        } else if coords.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = coords.iter().map(|&c| -c).collect();
            self.index_by_simple.contains_key(&neg)
        } else {
            false
        }
    }

    /// `(β, γ)` under the symmetrized form, for roots in simple coordinates.
    pub fn form(&self, beta: &[i64], gamma: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if beta[i] != 0 && gamma[j] != 0 {
                    acc += rat(beta[i]) * &self.sym_d[i] * rat(self.cartan[i][j]) * rat(gamma[j]);
                }
            }
        }
        acc
    }

    pub fn norm_sq(&self, beta: &[i64]) -> Rational {
        self.form(beta, beta)
    }

    /// Fundamental coordinates of a root-lattice element given in simple
    /// coordinates.
    pub fn simple_to_fund(&self, simple: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| rat((0..self.rank).map(|j| self.cartan[i][j] * simple[j]).sum()))
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight, when defined (always is; rational).
    pub fn fund_to_simple(&self, w: &Weight) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.inv_cartan[i][j] * &w.0[j])
                    .sum()
            })
            .collect()
    }

    /// Integer simple-root coordinates of `lam - mu`, if the difference lies
    /// in the root lattice.
    pub fn root_lattice_diff(&self, lam: &Weight, mu: &Weight) -> Option<Vec<i64>> {
        let diff = lam.sub(mu);
        let simple = self.fund_to_simple(&diff);
        let mut out = Vec::with_capacity(self.rank);
        for c in simple {
            if !c.is_integer() {
                return None;
            }
            out.push(int_to_i64(&c));
        }
        Some(out)
    }

    /// `μ ≤ λ` in the dominance order: the difference is a nonnegative
    /// integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        match self.root_lattice_diff(lam, mu) {
            Some(diff) => diff.iter().all(|&c| c >= 0),
            None => false,
        }
    }

    /// Linear action of the reflection in positive root `β` on a weight.
    pub fn reflect(&self, root_index: usize, w: &Weight) -> Weight {
        let root = &self.positive[root_index];
        let t = w.pair_coroot(&root.coroot);
        Weight(
            w.0.iter()
                .enumerate()
                .map(|(i, c)| c - &t * rat(root.fund[i]))
                .collect(),
        )
    }

    /// Dot action of a single reflection: `s_β · λ = s_β(λ+ρ) − ρ`.
    pub fn dot_reflect(&self, root_index: usize, lam: &Weight) -> Result<Weight> {
        if root_index >= self.positive.len() {
            return Err(Error::InvalidRoot(format!(
                "positive root index {root_index} out of range"
            )));
        }
        let shifted = self.reflect(root_index, &lam.add(&self.rho));
        Ok(shifted.sub(&self.rho))
    }

    /// Dot action of a Weyl element given by its reduced word.
    pub fn dot_action(&self, w: &WeylElement, lam: &Weight) -> Weight {
        let mut v = lam.add(&self.rho);
        for &i in w.word.iter().rev() {
            v = self.reflect(self.simple_root_index(i), &v);
        }
        v.sub(&self.rho)
    }

    /// Linear action of a Weyl element on a weight.
    pub fn linear_action(&self, w: &WeylElement, lam: &Weight) -> Weight {
        let mut v = lam.clone();
        for &i in w.word.iter().rev() {
            v = self.reflect(self.simple_root_index(i), &v);
        }
        v
    }

    fn enumerate_weyl(&self) -> Result<Vec<WeylElement>> {
        // Signed-permutation image of a simple reflection on Φ⁺.
        let reflect_images = |i: usize| -> Vec<(usize, bool)> {
            self.positive
                .iter()
                .map(|r| {
                    let pair: i64 = (0..self.rank)
                        .map(|j| self.cartan[i][j] * r.simple[j])
                        .sum();
                    let mut img = r.simple.clone();
                    img[i] -= pair;
                    if img.iter().all(|&c| c >= 0) {
                        (self.index_by_simple[&img], true)
                    } else {
                        let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
                        (self.index_by_simple[&neg], false)
                    }
                })
                .collect()
        };
        let gens: Vec<Vec<(usize, bool)>> = (0..self.rank).map(reflect_images).collect();

        let id = WeylElement {
            word: Vec::new(),
            images: (0..self.positive.len()).map(|k| (k, true)).collect(),
        };
        let mut seen: BTreeSet<Vec<(usize, bool)>> = BTreeSet::new();
        seen.insert(id.images.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                // (w·s_i)(β) = w(s_i β).
                let images: Vec<(usize, bool)> = gens[i]
                    .iter()
                    .map(|&(k, pos)| {
                        let (k2, pos2) = w.images[k];
                        (k2, pos == pos2)
                    })
                    .collect();
                if seen.insert(images.clone()) {
                    let mut word = w.word.clone();
                    word.push(i);
                    let next = WeylElement { word, images };
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
            if out.len() > 50_000 {
                return Err(Error::FiniteType("Weyl enumeration runaway".into()));
            }
        }
        Ok(out)
    }

    pub fn longest_element(&self) -> Option<&WeylElement> {
        self.weyl.iter().find(|w| w.is_longest())
    }

    /// Strong linkage: BFS over the dot orbit of `lam` along strictly
    /// downward dot reflections, returning a shortest chain to `mu`.
    /// Ties are broken by the fixed order on Φ⁺ (ascending height, then lex).
    pub fn strongly_linked(&self, mu: &Weight, lam: &Weight) -> Result<LinkageOutcome> {
        if mu.rank() != self.rank || lam.rank() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: mu.rank().max(lam.rank()),
                context: "weight rank".into(),
            });
        }
        if self.root_lattice_diff(lam, mu).is_none() {
            return Err(Error::NonIntegral(format!(
                "lam - mu = {} - {} is not in the root lattice",
                lam, mu
            )));
        }
        if mu == lam {
            return Ok(LinkageOutcome::Linked(LinkageChain {
                start: lam.clone(),
                end: mu.clone(),
                steps: Vec::new(),
            }));
        }
        let mut parent: BTreeMap<Weight, (Weight, usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([lam.clone()]);
        while let Some(nu) = queue.pop_front() {
            for (k, root) in self.positive.iter().enumerate() {
                let t = nu.add(&self.rho).pair_coroot(&root.coroot);
                // A strictly downward step needs ⟨ν+ρ, β∨⟩ a positive integer
                // so that the drop t·β lies in Z≥0·Δ.
                if !t.is_integer() || !t.is_positive() {
                    continue;
                }
                let next = Weight(
                    nu.0.iter()
                        .enumerate()
                        .map(|(i, c)| c - &t * rat(root.fund[i]))
                        .collect(),
                );
                if next == *lam || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), (nu.clone(), k));
                if next == *mu {
                    let mut steps = Vec::new();
                    let mut cur = mu.clone();
                    while cur != *lam {
                        let (prev, root_idx) = parent[&cur].clone();
                        steps.push(LinkageStep {
                            root_label: self.positive[root_idx].label(),
                            root_index: root_idx,
                            weight: cur.clone(),
                        });
                        cur = prev;
                    }
                    steps.reverse();
                    return Ok(LinkageOutcome::Linked(LinkageChain {
                        start: lam.clone(),
                        end: mu.clone(),
                        steps,
                    }));
                }
                queue.push_back(next);
            }
        }
        Ok(LinkageOutcome::NotLinked)
    }

    /// Kostant partition function: the number of multisets of positive roots
    /// summing to `nu` (simple-root coordinates), by exhaustive enumeration
    /// in the fixed Φ⁺ order.
    pub fn kostant_partition(&self, nu: &[i64]) -> u64 {
        assert!(nu.iter().all(|&c| c >= 0), "nu must be nonnegative");
        fn count(roots: &[Root], idx: usize, remaining: &mut Vec<i64>) -> u64 {
            if idx >= roots.len() {
                return if remaining.iter().all(|&c| c == 0) {
                    1
                } else {
                    0
                };
            }
            let root = &roots[idx];
            let max_k = remaining
                .iter()
                .zip(root.simple.iter())
                .filter(|(_, &s)| s > 0)
                .map(|(&r, &s)| r / s)
                .min()
                .unwrap_or(0);
            let mut total = 0;
            for k in 0..=max_k {
                for (r, &s) in remaining.iter_mut().zip(root.simple.iter()) {
                    *r -= k * s;
                }
                total += count(roots, idx + 1, remaining);
                for (r, &s) in remaining.iter_mut().zip(root.simple.iter()) {
                    *r += k * s;
                }
            }
            total
        }
        let mut rem = nu.to_vec();
        count(&self.positive, 0, &mut rem)
    }

    /// Weyl dimension formula `Π ⟨λ+ρ, β∨⟩ / ⟨ρ, β∨⟩` for dominant integral λ.
    pub fn weyl_dimension(&self, lam: &Weight) -> Result<u64> {
        if !lam.is_dominant_integral() {
            return Err(Error::InvalidRadical(format!(
                "{lam} is not dominant integral"
            )));
        }
        let shifted = lam.add(&self.rho);
        let mut dim = Rational::one();
        for root in &self.positive {
            dim *= shifted.pair_coroot(&root.coroot) / self.rho.pair_coroot(&root.coroot);
        }
        debug_assert!(dim.is_integer());
        Ok(int_to_i64(&dim) as u64)
    }
}

fn int_to_i64(r: &Rational) -> i64 {
    use num::ToPrimitive;
    r.to_integer().to_i64().expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn a1() -> RootSystem {
        build_root_system(cartan_by_name("A1").unwrap()).unwrap()
    }

    fn a2() -> RootSystem {
        build_root_system(cartan_by_name("A2").unwrap()).unwrap()
    }

    fn g2() -> RootSystem {
        build_root_system(cartan_by_name("G2").unwrap()).unwrap()
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_ints(coords)
    }

    /// Independent oracle: enumerate the group generated by the simple
    /// reflection matrices in fundamental coordinates,
    /// `(s_i λ)_r = λ_r − λ_i·cartan[r][i]`.
    fn matrix_weyl_order(rs: &RootSystem) -> usize {
        let n = rs.rank();
        let gens: Vec<Vec<Vec<Rational>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| {
                                let id = if r == c { rat(1) } else { rat(0) };
                                if c == i {
                                    id - rat(rs.cartan()[r][i])
                                } else {
                                    id
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let matmul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| (0..n).map(|k| &a[r][k] * &b[k][c]).sum())
                        .collect()
                })
                .collect()
        };
        let id: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { rat(1) } else { rat(0) })
                    .collect()
            })
            .collect();
        let mut seen = BTreeSet::new();
        seen.insert(format!("{id:?}"));
        let mut frontier = vec![id];
        let mut count = 1;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let prod = matmul(m, g);
                    if seen.insert(format!("{prod:?}")) {
                        count += 1;
                        next.push(prod);
                    }
                }
            }
            frontier = next;
        }
        count
    }

    #[test]
    fn rank_one_basics() {
        let rs = a1();
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.rho(), &w(&[1]));
        assert_eq!(rs.weyl_elements().len(), 2);
    }

    #[test]
    fn a2_counts_match_matrix_oracle() {
        let rs = a2();
        assert_eq!(rs.num_positive(), 3);
        assert_eq!(rs.weyl_elements().len(), 6);
        assert_eq!(matrix_weyl_order(&rs), 6);
    }

    #[test]
    fn g2_counts_match_matrix_oracle() {
        let rs = g2();
        assert_eq!(rs.num_positive(), 6);
        assert_eq!(rs.weyl_elements().len(), 12);
        assert_eq!(matrix_weyl_order(&rs), 12);
    }

    #[test]
    fn b2_counts() {
        let rs = build_root_system(cartan_by_name("B2").unwrap()).unwrap();
        assert_eq!(rs.num_positive(), 4);
        assert_eq!(rs.weyl_elements().len(), 8);
        assert_eq!(matrix_weyl_order(&rs), 8);
    }

    #[test]
    fn affine_cartan_rejected() {
        let result = build_root_system(vec![vec![2, -2], vec![-2, 2]]);
        assert!(matches!(result, Err(Error::FiniteType(_))));
    }

    #[test]
    fn bad_cartan_rejected() {
        assert!(matches!(
            build_root_system(vec![vec![1]]),
            Err(Error::InvalidCartan(_))
        ));
        assert!(matches!(
            build_root_system(vec![vec![2, 1], vec![1, 2]]),
            Err(Error::InvalidCartan(_))
        ));
    }

    #[test]
    fn positive_root_order_is_height_then_lex() {
        let rs = a2();
        let labels: Vec<String> = rs.positive_roots().iter().map(Root::label).collect();
        assert_eq!(labels, vec!["a2", "a1", "a1+a2"]);
    }

    #[test]
    fn dot_action_rank_one() {
        let rs = a1();
        let s = rs.dot_reflect(0, &w(&[2])).unwrap();
        assert_eq!(s, w(&[-4]));
        let fixed = rs.dot_reflect(0, &w(&[-1])).unwrap();
        assert_eq!(fixed, w(&[-1]));
    }

    #[test]
    fn dot_action_a2_via_matrix_route() {
        let rs = a2();
        let s1 = rs.simple_root_index(0);
        let lam = w(&[0, 0]);
        let dotted = rs.dot_reflect(s1, &lam).unwrap();
        assert_eq!(dotted, w(&[-2, 1]));
        // Cross-check: dot = linear action on λ+ρ, shifted back.
        let linear = rs.reflect(s1, &lam.add(rs.rho())).sub(rs.rho());
        assert_eq!(dotted, linear);
    }

    #[test]
    fn dot_reflection_is_an_involution() {
        let rs = g2();
        let lam = Weight(vec![ratio(5, 2), rat(-3)]);
        for k in 0..rs.num_positive() {
            let once = rs.dot_reflect(k, &lam).unwrap();
            let twice = rs.dot_reflect(k, &once).unwrap();
            assert_eq!(twice, lam);
        }
    }

    #[test]
    fn invalid_root_index_rejected() {
        let rs = a1();
        assert!(matches!(
            rs.dot_reflect(5, &w(&[0])),
            Err(Error::InvalidRoot(_))
        ));
    }

    #[test]
    fn linkage_rank_one() {
        let rs = a1();
        match rs.strongly_linked(&w(&[-4]), &w(&[2])).unwrap() {
            LinkageOutcome::Linked(chain) => {
                assert_eq!(chain.steps.len(), 1);
                assert_eq!(chain.steps[0].root_label, "a1");
                assert_eq!(chain.steps[0].weight, w(&[-4]));
            }
            LinkageOutcome::NotLinked => panic!("expected a chain"),
        }
        // Reflexive case.
        match rs.strongly_linked(&w(&[2]), &w(&[2])).unwrap() {
            LinkageOutcome::Linked(chain) => assert!(chain.steps.is_empty()),
            LinkageOutcome::NotLinked => panic!("reflexive linkage"),
        }
        // In the root lattice but outside the dot orbit {2, -4}.
        assert_eq!(
            rs.strongly_linked(&w(&[0]), &w(&[2])).unwrap(),
            LinkageOutcome::NotLinked
        );
        // Difference outside the root lattice is rejected, not searched.
        assert!(matches!(
            rs.strongly_linked(&w(&[-3]), &w(&[2])),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn linkage_nonintegral_difference_rejected() {
        let rs = a1();
        let mu = Weight(vec![ratio(1, 2)]);
        assert!(matches!(
            rs.strongly_linked(&mu, &w(&[0])),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn linkage_a2_chain() {
        let rs = a2();
        match rs.strongly_linked(&w(&[-3, 0]), &w(&[0, 0])).unwrap() {
            LinkageOutcome::Linked(chain) => {
                let got: Vec<(String, Weight)> = chain
                    .steps
                    .iter()
                    .map(|s| (s.root_label.clone(), s.weight.clone()))
                    .collect();
                assert_eq!(
                    got,
                    vec![
                        ("a2".to_string(), w(&[1, -2])),
                        ("a1".to_string(), w(&[-3, 0])),
                    ]
                );
                // Every step goes strictly down in dominance order.
                let mut prev = chain.start.clone();
                for step in &chain.steps {
                    assert!(rs.dominance_leq(&step.weight, &prev));
                    prev = step.weight.clone();
                }
            }
            LinkageOutcome::NotLinked => panic!("expected a chain"),
        }
    }

    #[test]
    fn linkage_stays_in_dot_orbit_and_below() {
        let rs = a2();
        let lam = w(&[0, 0]);
        let orbit: BTreeSet<Weight> = rs
            .weyl_elements()
            .iter()
            .map(|el| rs.dot_action(el, &lam))
            .collect();
        assert_eq!(orbit.len(), 6);
        for mu in &orbit {
            let outcome = rs.strongly_linked(mu, &lam).unwrap();
            match outcome {
                LinkageOutcome::Linked(_) => {
                    assert!(rs.dominance_leq(mu, &lam));
                }
                LinkageOutcome::NotLinked => {
                    assert!(!rs.dominance_leq(mu, &lam) || mu == &lam);
                }
            }
        }
        // Exhaustive converse on this orbit: below and in orbit => linked.
        for mu in &orbit {
            if rs.dominance_leq(mu, &lam) {
                assert!(matches!(
                    rs.strongly_linked(mu, &lam).unwrap(),
                    LinkageOutcome::Linked(_)
                ));
            }
        }
    }

    #[test]
    fn kostant_partition_examples() {
        let rs1 = a1();
        assert_eq!(rs1.kostant_partition(&[3]), 1);
        assert_eq!(rs1.kostant_partition(&[0]), 1);
        let rs2 = a2();
        // {a1, a2} and {a1+a2}.
        assert_eq!(rs2.kostant_partition(&[1, 1]), 2);
        // Number of a1+a2 parts is 0, 1 or 2.
        assert_eq!(rs2.kostant_partition(&[2, 2]), 3);
    }

    /// Brute-force oracle: count exponent vectors over Φ⁺ by direct search
    /// over a bounding box rather than the pruned recursion.
    #[test]
    fn kostant_partition_matches_box_enumeration() {
        let rs = a2();
        for x in 0..=4i64 {
            for y in 0..=4i64 {
                let nu = [x, y];
                let mut count = 0u64;
                let bound = (x + y) as usize + 1;
                let roots = rs.positive_roots();
                let mut exps = vec![0usize; roots.len()];
                loop {
                    let sum: Vec<i64> = (0..2)
                        .map(|c| {
                            exps.iter()
                                .zip(roots.iter())
                                .map(|(&e, r)| e as i64 * r.simple[c])
                                .sum()
                        })
                        .collect();
                    if sum == nu {
                        count += 1;
                    }
                    let mut i = 0;
                    loop {
                        if i == exps.len() {
                            break;
                        }
                        exps[i] += 1;
                        if exps[i] < bound {
                            break;
                        }
                        exps[i] = 0;
                        i += 1;
                    }
                    if i == exps.len() {
                        break;
                    }
                }
                assert_eq!(rs.kostant_partition(&nu), count, "nu = {nu:?}");
            }
        }
    }

    #[test]
    fn weyl_dimension_formula() {
        let rs1 = a1();
        assert_eq!(rs1.weyl_dimension(&w(&[2])).unwrap(), 3);
        assert_eq!(rs1.weyl_dimension(&w(&[0])).unwrap(), 1);
        let rs2 = a2();
        assert_eq!(rs2.weyl_dimension(&w(&[1, 0])).unwrap(), 3);
        assert_eq!(rs2.weyl_dimension(&w(&[1, 1])).unwrap(), 8);
        assert_eq!(rs2.weyl_dimension(&w(&[2, 0])).unwrap(), 6);
    }

    #[test]
    fn reflections_in_weyl_group_count_positive_roots() {
        for rs in [a2(), g2()] {
            let mut reflection_count = 0;
            for k in 0..rs.num_positive() {
                // Build the signed-permutation image of s_β directly.
                let images: Vec<(usize, bool)> = rs
                    .positive_roots()
                    .iter()
                    .map(|r| {
                        let t = rs.simple_to_fund(&r.simple).pair_coroot(&rs.root(k).coroot);
                        let mut img = r.simple.clone();
                        for (c, v) in img.iter_mut().enumerate() {
                            *v -= int_to_i64(&t) * rs.root(k).simple[c];
                        }
                        if img.iter().all(|&c| c >= 0) {
                            (rs.index_of_simple_coords(&img).unwrap(), true)
                        } else {
                            let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
                            (rs.index_of_simple_coords(&neg).unwrap(), false)
                        }
                    })
                    .collect();
                if rs.weyl_elements().iter().any(|el| el.images == images) {
                    reflection_count += 1;
                }
            }
            assert_eq!(reflection_count, rs.num_positive());
        }
    }

    #[test]
    fn longest_element_exists() {
        let rs = a2();
        let w0 = rs.longest_element().unwrap();
        assert_eq!(w0.length(), 3);
        assert_eq!(rs.linear_action(w0, &w(&[1, 0])), w(&[0, -1]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rational_coord() -> impl Strategy<Value = Rational> {
            (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
        }

        proptest! {
            #[test]
            fn dot_reflection_involution_g2(
                c0 in rational_coord(),
                c1 in rational_coord(),
                k in 0usize..6,
            ) {
                let rs = g2();
                let lam = Weight(vec![c0, c1]);
                let once = rs.dot_reflect(k, &lam).unwrap();
                prop_assert_eq!(rs.dot_reflect(k, &once).unwrap(), lam);
            }

            #[test]
            fn dot_equals_shifted_linear_action(
                c0 in rational_coord(),
                c1 in rational_coord(),
                k in 0usize..3,
            ) {
                let rs = a2();
                let lam = Weight(vec![c0, c1]);
                let dotted = rs.dot_reflect(k, &lam).unwrap();
                let linear = rs.reflect(k, &lam.add(rs.rho())).sub(rs.rho());
                prop_assert_eq!(dotted, linear);
            }
        }
    }
}
