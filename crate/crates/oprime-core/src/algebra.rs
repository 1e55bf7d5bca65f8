//! Construction of the generalized reductive Lie algebra `g = g0 ⊕ J`.
//!
//! `g0` gets a Chevalley basis `{e_β, f_β, h_i}` with integer structure
//! constants, signs fixed deterministically: extraspecial pairs are processed
//! in the fixed Φ⁺ order and get `N > 0`; every other constant is derived
//! from those through the standard root-triple and root-quadruple relations.
//! The radical is realized as a direct sum of finite-dimensional simples
//! `J = L(λ_1) ⊕ … ⊕ L(λ_n)` via a truncated Verma quotient, split into
//! `J_1` (trivial summands) and `J_2` (the rest).  The whole bracket table is
//! validated — antisymmetry and the Jacobi identity on every basis triple —
//! before a constructed algebra is returned.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, RationalMatrix};
use crate::pbw::{self, FMonomial};
use crate::ratio;
use crate::roots::{RootSystem, Weight};

/// A basis element of `g`: root vectors, Cartan generators, or radical
/// weight vectors (indexed by position within the radical).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElement {
    E(usize),
    F(usize),
    H(usize),
    U(usize),
}

#[derive(Clone, Debug)]
pub struct BasisInfo {
    pub element: BasisElement,
    pub label: String,
    /// ad-weight in fundamental coordinates.
    pub weight: Weight,
    /// ad-weight in simple-root coordinates when it lies in the root lattice.
    pub weight_simple: Option<Vec<i64>>,
}

/// One irreducible summand `L(λ)` of the radical.
#[derive(Clone, Debug)]
pub struct RadicalSummand {
    pub highest_weight: Weight,
    pub dim: usize,
    /// Positions within the radical basis.
    pub positions: std::ops::Range<usize>,
    pub realization: SimpleRealization,
}

/// A finite-dimensional simple `g0`-module with exact action matrices for
/// every `g0` basis element, realized as a truncated Verma quotient.
#[derive(Clone, Debug)]
pub struct SimpleRealization {
    pub highest_weight: Weight,
    /// Ordered basis: (weight, PBW coset monomial, label).
    pub basis: Vec<(Weight, FMonomial, String)>,
    /// One dim×dim matrix per `g0` basis index.
    pub actions: Vec<RationalMatrix>,
    pub top_index: usize,
    pub lowest_index: usize,
}

impl SimpleRealization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the smallest action-closed subspace containing `seed`.
    pub fn generated_dim(&self, seed: &[Rational]) -> usize {
        let mut span = crate::linalg::echelon_basis(&[seed.to_vec()]);
        loop {
            let mut grew = false;
            for action in &self.actions {
                for v in span.clone() {
                    let image = action.mul_vec(&v).expect("square action matrix");
                    if crate::linalg::in_span(&span, &image).is_none() {
                        span.push(image);
                        span = crate::linalg::echelon_basis(&span);
                        grew = true;
                    }
                }
            }
            if !grew {
                return span.len();
            }
        }
    }

    /// Generated-submodule saturation from every basis vector: the module is
    /// irreducible iff each one generates the whole space.
    pub fn is_irreducible(&self) -> bool {
        (0..self.dim()).all(|i| {
            let mut seed = vec![Rational::zero(); self.dim()];
            seed[i] = num::One::one();
            self.generated_dim(&seed) == self.dim()
        })
    }
}

/// A linear functional in `G = {g ∈ J* | g(J_2) = 0}`, stored by its values
/// on the `J_1` part of the radical basis; `J_2` values are implicitly zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GFunctional {
    values: BTreeMap<usize, Rational>,
}

impl GFunctional {
    pub fn zero() -> Self {
        GFunctional::default()
    }

    pub fn value(&self, radical_position: usize) -> Rational {
        self.values
            .get(&radical_position)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &BTreeMap<usize, Rational> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for GFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(p, v)| format!("u{p}↦{v}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A violated constraint from `validate_g`, with the witnessing basis pair.
#[derive(Clone, Debug, Serialize)]
pub struct GViolation {
    pub constraint: String,
    pub witness: String,
    pub value: String,
}

#[derive(Clone, Debug)]
pub enum GValidation {
    Valid(GFunctional),
    Invalid(Vec<GViolation>),
}

/// `g = g0 ⊕ J` with a fully validated bracket table.
#[derive(Debug)]
pub struct GenReductiveAlgebra {
    root_system: Arc<RootSystem>,
    basis: Vec<BasisInfo>,
    /// Canonical storage for `i < j`; `[x_i, x_j]` as a basis combination.
    table: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    summands: Vec<RadicalSummand>,
    radical_offset: usize,
    j1_positions: Vec<usize>,
    j2_positions: Vec<usize>,
    /// The radical-free algebra over the same root system (None when J = 0,
    /// in which case the algebra is its own semisimple part).
    semisimple: Option<Arc<GenReductiveAlgebra>>,
}

impl GenReductiveAlgebra {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.root_system
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.root_system.num_positive()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn g0_dim(&self) -> usize {
        self.radical_offset
    }

    pub fn radical_dim(&self) -> usize {
        self.basis.len() - self.radical_offset
    }

    pub fn basis(&self) -> &[BasisInfo] {
        &self.basis
    }

    pub fn basis_info(&self, idx: usize) -> &BasisInfo {
        &self.basis[idx]
    }

    pub fn e_index(&self, root: usize) -> usize {
        root
    }

    pub fn f_index(&self, root: usize) -> usize {
        self.num_positive() + root
    }

    pub fn h_index(&self, i: usize) -> usize {
        2 * self.num_positive() + i
    }

    pub fn u_index(&self, radical_position: usize) -> usize {
        self.radical_offset + radical_position
    }

    pub fn summands(&self) -> &[RadicalSummand] {
        &self.summands
    }

    /// Radical positions split by trivial vs nontrivial summand weight.
    pub fn split_radical(&self) -> (Vec<usize>, Vec<usize>) {
        (self.j1_positions.clone(), self.j2_positions.clone())
    }

    pub fn j1_positions(&self) -> &[usize] {
        &self.j1_positions
    }

    pub fn j2_positions(&self) -> &[usize] {
        &self.j2_positions
    }

    /// The radical-free algebra over the same root system.
    pub fn semisimple_part(self: &Arc<Self>) -> Arc<GenReductiveAlgebra> {
        match &self.semisimple {
            Some(ss) => Arc::clone(ss),
            None => Arc::clone(self),
        }
    }

    /// `[x_i, x_j]` as a sparse basis combination.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(|combo| combo.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    /// Bracket of a combination with a basis element.
    pub fn bracket_combo(&self, combo: &[(usize, Rational)], j: usize) -> Vec<(usize, Rational)> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in combo {
            for (k, v) in self.bracket(*i, j) {
                let e = acc.entry(k).or_insert_with(Rational::zero);
                *e += c * v;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// ad-weight of a basis element in fundamental coordinates.
    pub fn weight_of(&self, idx: usize) -> &Weight {
        &self.basis[idx].weight
    }

    /// Summand containing a radical position, with the local index.
    pub fn summand_of_position(&self, pos: usize) -> (usize, usize) {
        for (s, summand) in self.summands.iter().enumerate() {
            if summand.positions.contains(&pos) {
                return (s, pos - summand.positions.start);
            }
        }
        panic!("radical position {pos} out of range");
    }

    /// Validate raw functional values (one per radical basis position):
    /// accepted iff the functional vanishes on `J_2` and kills every bracket
    /// value `[h,u]`, `[x,u]`, `[u,u']`, all evaluated through the table.
    pub fn validate_g(&self, raw: &[Rational]) -> Result<GValidation> {
        if raw.len() != self.radical_dim() {
            return Err(Error::Dimension {
                expected: self.radical_dim(),
                got: raw.len(),
                context: "functional values on the radical basis".into(),
            });
        }
        let mut violations = Vec::new();
        let eval = |combo: &[(usize, Rational)]| -> Rational {
            combo
                .iter()
                .map(|(k, c)| {
                    debug_assert!(*k >= self.radical_offset, "bracket must land in J");
                    c * &raw[*k - self.radical_offset]
                })
                .sum()
        };
        for &p in &self.j2_positions {
            if !raw[p].is_zero() {
                violations.push(GViolation {
                    constraint: "g(J2) = 0".into(),
                    witness: self.basis[self.u_index(p)].label.clone(),
                    value: ratio::to_string(&raw[p]),
                });
            }
        }
        for p in 0..self.radical_dim() {
            let u = self.u_index(p);
            for g0_idx in 0..self.radical_offset {
                let combo = self.bracket(g0_idx, u);
                let v = eval(&combo);
                if !v.is_zero() {
                    let kind = match self.basis[g0_idx].element {
                        BasisElement::H(_) => "g([h,u]) = 0",
                        _ => "g([x,u]) = 0",
                    };
                    violations.push(GViolation {
                        constraint: kind.into(),
                        witness: format!("[{}, {}]", self.basis[g0_idx].label, self.basis[u].label),
                        value: ratio::to_string(&v),
                    });
                }
            }
            for q in 0..p {
                let v = eval(&self.bracket(self.u_index(q), u));
                if !v.is_zero() {
                    violations.push(GViolation {
                        constraint: "g([u,u']) = 0".into(),
                        witness: format!(
                            "[{}, {}]",
                            self.basis[self.u_index(q)].label,
                            self.basis[u].label
                        ),
                        value: ratio::to_string(&v),
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Ok(GValidation::Invalid(violations));
        }
        let values = self
            .j1_positions
            .iter()
            .filter(|&&p| !raw[p].is_zero())
            .map(|&p| (p, raw[p].clone()))
            .collect();
        Ok(GValidation::Valid(GFunctional { values }))
    }

    /// Convenience: validate or fail with `InvalidFunctional`.
    pub fn functional(&self, raw: &[Rational]) -> Result<GFunctional> {
        match self.validate_g(raw)? {
            GValidation::Valid(g) => Ok(g),
            GValidation::Invalid(viol) => Err(Error::InvalidFunctional(format!(
                "{} constraint(s) violated, first: {} at {}",
                viol.len(),
                viol[0].constraint,
                viol[0].witness
            ))),
        }
    }
}

/// Chevalley structure constants `N_{α,β}` over a fixed root system.
struct Constants<'a> {
    rs: &'a RootSystem,
    /// `N` for ordered pairs of positive-root indices with `β_i + β_j ∈ Φ⁺`.
    positive: BTreeMap<(usize, usize), Rational>,
}

impl<'a> Constants<'a> {
    fn compute(rs: &'a RootSystem) -> Self {
        let mut c = Constants {
            rs,
            positive: BTreeMap::new(),
        };
        let n = rs.num_positive();
        // Roots come sorted by (height, lex); processing sums in that order
        // guarantees every constant a derivation needs is already present.
        for gidx in 0..n {
            let gamma = rs.root(gidx).simple.clone();
            if rs.root(gidx).height == 1 {
                continue;
            }
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let sum: Vec<i64> = rs
                        .root(i)
                        .simple
                        .iter()
                        .zip(rs.root(j).simple.iter())
                        .map(|(a, b)| a + b)
                        .collect();
                    if sum == gamma {
                        pairs.push((i, j));
                    }
                }
            }
            debug_assert!(!pairs.is_empty(), "non-simple root without special pair");
            // The extraspecial pair minimizes the first component; its sign
            // is the one free choice, fixed to +.
            let (i0, j0) = pairs[0];
            let p = c.string_p(&rs.root(i0).simple, &rs.root(j0).simple);
            c.positive.insert((i0, j0), rat(p + 1));
            for &(i, j) in pairs.iter().skip(1) {
                let v = c.derive_special(i, j, i0, j0);
                c.positive.insert((i, j), v);
            }
        }
        c
    }

    /// Largest `p ≥ 0` with `b − p·a ∈ Φ` (lower end of the a-string
    /// through b).
    fn string_p(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut p = 0i64;
        loop {
            let cand: Vec<i64> = b
                .iter()
                .zip(a.iter())
                .map(|(x, y)| x - (p + 1) * y)
                .collect();
            if self.rs.is_root(&cand) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Structure constant of a special, non-extraspecial pair `(α, β)` with
    /// extraspecial `(δ, ε)`, via the quadruple relation
    /// `Σ N_{a,b} N_{a+b,c} = 0` over `(α, β, −δ, −ε)`.
    fn derive_special(&self, i: usize, j: usize, i0: usize, j0: usize) -> Rational {
        let alpha = self.rs.root(i).simple.clone();
        let beta = self.rs.root(j).simple.clone();
        let delta = self.rs.root(i0).simple.clone();
        let gamma: Vec<i64> = alpha.iter().zip(beta.iter()).map(|(a, b)| a + b).collect();
        let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
        let addv = |a: &[i64], b: &[i64]| -> Vec<i64> {
            a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
        };

        let mut sum = Rational::zero();
        let b_minus_d = addv(&beta, &neg(&delta));
        if self.rs.is_root(&b_minus_d) {
            sum += self.n_any(&beta, &neg(&delta)) * self.n_any(&b_minus_d, &alpha);
        }
        let a_minus_d = addv(&alpha, &neg(&delta));
        if self.rs.is_root(&a_minus_d) {
            sum += self.n_any(&neg(&delta), &alpha) * self.n_any(&a_minus_d, &beta);
        }
        let denom = self.n_any(&gamma, &neg(&delta));
        debug_assert!(!denom.is_zero());
        let _ = j0;
        -sum / denom
    }

    fn pos_index(&self, v: &[i64]) -> Option<usize> {
        self.rs.index_of_simple_coords(v)
    }

    /// `N_{a,b}` for arbitrary roots (coordinates may be negative), assuming
    /// `a + b ∈ Φ`.  Mixed-sign pairs reduce to positive pairs through the
    /// root-triple relation `N_{β,γ} = (|α|²/|γ|²)·N_{α,β}` for `α+β+γ = 0`.
    fn n_any(&self, a: &[i64], b: &[i64]) -> Rational {
        let a_pos = a.iter().all(|&x| x >= 0);
        let b_pos = b.iter().all(|&x| x >= 0);
        let a_neg = a.iter().all(|&x| x <= 0);
        let b_neg = b.iter().all(|&x| x <= 0);
        let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
        if a_pos && b_pos {
            let i = self.pos_index(a).expect("positive root");
            let j = self.pos_index(b).expect("positive root");
            return if i < j {
                self.positive
                    .get(&(i, j))
                    .cloned()
                    .expect("constant computed earlier")
            } else {
                -self
                    .positive
                    .get(&(j, i))
                    .cloned()
                    .expect("constant computed earlier")
            };
        }
        if a_neg && b_neg {
            return -self.n_any(&neg(a), &neg(b));
        }
        if a_neg && b_pos {
            return -self.n_any(b, a);
        }
        // a positive, b negative, a + b ∈ Φ.
        let sum: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        let c: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| -(x + y)).collect();
        let norm = |v: &[i64]| -> Rational {
            let abs: Vec<i64> = v.iter().map(|x| x.abs()).collect();
            self.rs.norm_sq(&abs)
        };
        if sum.iter().all(|&x| x >= 0) {
            // Reduce to the positive pair (−b, −c) summing to a.
            -(norm(&c) / norm(a)) * self.n_any(&neg(b), &neg(&c))
        } else {
            // Reduce to the positive pair (c, a) summing to −b.
            (norm(&c) / norm(b)) * self.n_any(&c, a)
        }
    }
}

/// Build the algebra: Chevalley basis for `g0`, one realized simple per
/// radical weight, full bracket table, and every structural invariant
/// checked exactly before returning.
pub fn build_algebra(
    rs: Arc<RootSystem>,
    radical_weights: &[Weight],
) -> Result<Arc<GenReductiveAlgebra>> {
    for w in radical_weights {
        if w.rank() != rs.rank() {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: w.rank(),
                context: "radical weight rank".into(),
            });
        }
        if !w.is_dominant_integral() {
            return Err(Error::InvalidRadical(w.to_string()));
        }
    }

    let semisimple = build_semisimple(Arc::clone(&rs))?;
    if radical_weights.is_empty() {
        return Ok(semisimple);
    }

    let realizations: Vec<SimpleRealization> = radical_weights
        .iter()
        .map(|w| realize_simple(&semisimple, w))
        .collect::<Result<_>>()?;

    let rank = rs.rank();
    let g0_dim = semisimple.dim();

    let mut basis: Vec<BasisInfo> = semisimple.basis.clone();
    let mut summands = Vec::new();
    let mut j1 = Vec::new();
    let mut j2 = Vec::new();
    let mut pos_cursor = 0usize;
    for (s, (w, real)) in radical_weights.iter().zip(realizations.iter()).enumerate() {
        let start = pos_cursor;
        for (wt, _, mono_label) in &real.basis {
            let weight_simple = rs.root_lattice_diff(wt, &Weight::zero(rank));
            basis.push(BasisInfo {
                element: BasisElement::U(pos_cursor),
                label: format!("u{s}[{mono_label}]"),
                weight: wt.clone(),
                weight_simple,
            });
            if w.coords().iter().all(Zero::is_zero) {
                j1.push(pos_cursor);
            } else {
                j2.push(pos_cursor);
            }
            pos_cursor += 1;
        }
        summands.push(RadicalSummand {
            highest_weight: w.clone(),
            dim: real.dim(),
            positions: start..pos_cursor,
            realization: real.clone(),
        });
    }

    let mut table = semisimple.table.clone();
    // [x, u] from the realization matrices; [u, u'] = 0 by construction.
    for summand in &summands {
        let real = &summand.realization;
        for x in 0..g0_dim {
            for local in 0..real.dim() {
                let col: Vec<(usize, Rational)> = (0..real.dim())
                    .filter_map(|m| {
                        let v = real.actions[x].get(m, local);
                        if v.is_zero() {
                            None
                        } else {
                            Some((g0_dim + summand.positions.start + m, v))
                        }
                    })
                    .collect();
                let u_idx = g0_dim + summand.positions.start + local;
                debug_assert!(x < u_idx);
                if !col.is_empty() {
                    table.insert((x, u_idx), col);
                }
            }
        }
    }

    let algebra = GenReductiveAlgebra {
        root_system: rs,
        basis,
        table,
        summands,
        radical_offset: g0_dim,
        j1_positions: j1,
        j2_positions: j2,
        semisimple: Some(semisimple),
    };
    validate_algebra(&algebra)?;
    Ok(Arc::new(algebra))
}

fn build_semisimple(rs: Arc<RootSystem>) -> Result<Arc<GenReductiveAlgebra>> {
    let npos = rs.num_positive();
    let rank = rs.rank();
    let constants = Constants::compute(&rs);

    let mut basis = Vec::with_capacity(2 * npos + rank);
    for k in 0..npos {
        basis.push(BasisInfo {
            element: BasisElement::E(k),
            label: format!("e({})", rs.root(k).label()),
            weight: rs.simple_to_fund(&rs.root(k).simple),
            weight_simple: Some(rs.root(k).simple.clone()),
        });
    }
    for k in 0..npos {
        let negated: Vec<i64> = rs.root(k).simple.iter().map(|&c| -c).collect();
        basis.push(BasisInfo {
            element: BasisElement::F(k),
            label: format!("f({})", rs.root(k).label()),
            weight: rs.simple_to_fund(&negated),
            weight_simple: Some(negated),
        });
    }
    for i in 0..rank {
        basis.push(BasisInfo {
            element: BasisElement::H(i),
            label: format!("h{}", i + 1),
            weight: Weight::zero(rank),
            weight_simple: Some(vec![0; rank]),
        });
    }

    let e_idx = |k: usize| k;
    let f_idx = |k: usize| npos + k;
    let h_idx = |i: usize| 2 * npos + i;

    let mut table: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    let put = |table: &mut BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
               i: usize,
               j: usize,
               combo: Vec<(usize, Rational)>| {
        let combo: Vec<(usize, Rational)> =
            combo.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if combo.is_empty() {
            return;
        }
        if i < j {
            table.insert((i, j), combo);
        } else {
            table.insert((j, i), combo.into_iter().map(|(k, c)| (k, -c)).collect());
        }
    };

    let addv =
        |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b.iter()).map(|(x, y)| x + y).collect() };
    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };

    for a in 0..npos {
        for b in (a + 1)..npos {
            let ra = rs.root(a).simple.clone();
            let rb = rs.root(b).simple.clone();
            let sum = addv(&ra, &rb);
            if let Some(k) = rs.index_of_simple_coords(&sum) {
                let n = constants.n_any(&ra, &rb);
                put(&mut table, e_idx(a), e_idx(b), vec![(e_idx(k), n.clone())]);
                put(&mut table, f_idx(a), f_idx(b), vec![(f_idx(k), -n)]);
            }
            let diff = addv(&ra, &neg(&rb));
            if rs.is_root(&diff) {
                let n_ab = constants.n_any(&ra, &neg(&rb));
                let n_ba = constants.n_any(&rb, &neg(&ra));
                if diff.iter().all(|&c| c >= 0) {
                    let k = rs.index_of_simple_coords(&diff).unwrap();
                    put(&mut table, e_idx(a), f_idx(b), vec![(e_idx(k), n_ab)]);
                    put(&mut table, e_idx(b), f_idx(a), vec![(f_idx(k), n_ba)]);
                } else {
                    let k = rs.index_of_simple_coords(&neg(&diff)).unwrap();
                    put(&mut table, e_idx(a), f_idx(b), vec![(f_idx(k), n_ab)]);
                    put(&mut table, e_idx(b), f_idx(a), vec![(e_idx(k), n_ba)]);
                }
            }
        }
    }
    for k in 0..npos {
        // [e_β, f_β] is the coroot β∨ expressed in the h basis.
        let combo: Vec<(usize, Rational)> = rs
            .root(k)
            .coroot
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (h_idx(i), rat(c)))
            .collect();
        put(&mut table, e_idx(k), f_idx(k), combo);
        for i in 0..rank {
            let pair = rat(rs.root(k).fund[i]);
            put(
                &mut table,
                h_idx(i),
                e_idx(k),
                vec![(e_idx(k), pair.clone())],
            );
            put(&mut table, h_idx(i), f_idx(k), vec![(f_idx(k), -pair)]);
        }
    }

    let algebra = GenReductiveAlgebra {
        root_system: rs,
        basis,
        table,
        summands: Vec::new(),
        radical_offset: 2 * npos + rank,
        j1_positions: Vec::new(),
        j2_positions: Vec::new(),
        semisimple: None,
    };
    validate_algebra(&algebra)?;
    Ok(Arc::new(algebra))
}

/// Exact structural validation: weight additivity of every bracket, Jacobi
/// on all basis triples, h acting diagonally on the radical, commutativity
/// of J, `[g0, J1] = 0`, `[g0, J2] ⊆ J2`, and `n0⁻` killing each summand's
/// lowest-weight vector.
fn validate_algebra(a: &GenReductiveAlgebra) -> Result<()> {
    let dim = a.dim();
    for i in 0..dim {
        for j in 0..dim {
            let combo = a.bracket(i, j);
            let expected = a.weight_of(i).add(a.weight_of(j));
            for (k, _) in &combo {
                if *a.weight_of(*k) != expected {
                    return Err(Error::InternalConsistency(format!(
                        "bracket [{}, {}] leaves its weight space",
                        a.basis[i].label, a.basis[j].label
                    )));
                }
            }
        }
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                let mut add = |combo: Vec<(usize, Rational)>| {
                    for (m, c) in combo {
                        let e = acc.entry(m).or_insert_with(Rational::zero);
                        *e += c;
                    }
                };
                add(a.bracket_combo(&a.bracket(i, j), k));
                add(a.bracket_combo(&a.bracket(j, k), i));
                add(a.bracket_combo(&a.bracket(k, i), j));
                if acc.values().any(|v| !v.is_zero()) {
                    return Err(Error::InternalConsistency(format!(
                        "Jacobi identity fails on ({}, {}, {})",
                        a.basis[i].label, a.basis[j].label, a.basis[k].label
                    )));
                }
            }
        }
    }
    let off = a.radical_offset;
    for p in 0..a.radical_dim() {
        for q in 0..a.radical_dim() {
            if !a.bracket(off + p, off + q).is_empty() {
                return Err(Error::InternalConsistency("[J, J] != 0".into()));
            }
        }
        let u = off + p;
        for i in 0..a.rank() {
            let combo = a.bracket(a.h_index(i), u);
            let expected = a.weight_of(u).coords()[i].clone();
            if expected.is_zero() {
                if !combo.is_empty() {
                    return Err(Error::InternalConsistency(
                        "h does not act diagonally on the radical".into(),
                    ));
                }
            } else if combo.len() != 1 || combo[0].0 != u || combo[0].1 != expected {
                return Err(Error::InternalConsistency(
                    "radical weight disagrees with the h-action".into(),
                ));
            }
        }
    }
    for &p in &a.j1_positions {
        for x in 0..off {
            if !a.bracket(x, off + p).is_empty() {
                return Err(Error::InternalConsistency("[g0, J1] != 0".into()));
            }
        }
    }
    for &p in &a.j2_positions {
        for x in 0..off {
            for (k, _) in a.bracket(x, off + p) {
                if !a.j2_positions.contains(&(k - off)) {
                    return Err(Error::InternalConsistency("[g0, J2] not inside J2".into()));
                }
            }
        }
    }
    for summand in &a.summands {
        let lowest = off + summand.positions.start + summand.realization.lowest_index;
        for k in 0..a.num_positive() {
            if !a.bracket(a.f_index(k), lowest).is_empty() {
                return Err(Error::InternalConsistency(
                    "n0- does not kill a summand's lowest-weight vector".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Realize the finite-dimensional simple `L(λ)`: truncate the radical-free
/// Verma `M(λ)` one layer past the weight span of `L(λ)`, quotient by the
/// submodule generated by the singular vectors `f_i^{⟨λ+ρ, α_i∨⟩}·w`, and
/// package per-weight bases (deterministic PBW order) with full action
/// matrices for every `g0` basis element.
pub fn realize_simple(
    semisimple: &Arc<GenReductiveAlgebra>,
    lam: &Weight,
) -> Result<SimpleRealization> {
    if !lam.is_dominant_integral() {
        return Err(Error::InvalidRadical(lam.to_string()));
    }
    let rs = Arc::clone(semisimple.root_system());
    let w0 = rs.longest_element().ok_or(Error::UnsupportedRank {
        expected: 3,
        got: rs.rank(),
    })?;
    let lowest = rs.linear_action(w0, lam);
    let span = rs
        .root_lattice_diff(lam, &lowest)
        .expect("λ − w0·λ lies in the root lattice");
    let span_ht: i64 = span.iter().sum();
    let depth = (span_ht + 1) as usize;

    let verma = pbw::build_verma(semisimple, lam, &GFunctional::zero(), depth)?;
    let mut singulars = Vec::new();
    for i in 0..rs.rank() {
        use num::ToPrimitive;
        let n = (lam.coords()[i].clone() + Rational::one())
            .to_integer()
            .to_usize()
            .expect("small exponent");
        let word = vec![semisimple.f_index(rs.simple_root_index(i)); n];
        let (weight, vec) = verma.apply_word(&word, lam, &[Rational::one()])?;
        singulars.push((weight, vec));
    }
    let sub = pbw::submodule_generated(&verma, &singulars)?;
    let quotient = pbw::quotient(&verma, &sub.span)?.module;

    // Flatten the nonzero components into one ordered basis.
    let monomials = quotient
        .monomial_basis()
        .expect("verma quotient keeps a monomial basis");
    let mut basis: Vec<(Weight, FMonomial, String)> = Vec::new();
    let mut index_of: BTreeMap<(Weight, usize), usize> = BTreeMap::new();
    for (w, monos) in monomials {
        for (local, mono) in monos.iter().enumerate() {
            index_of.insert((w.clone(), local), basis.len());
            basis.push((w.clone(), mono.clone(), mono.label(&rs)));
        }
    }
    let dim = basis.len();
    let expected_dim = rs.weyl_dimension(lam)?;
    if dim as u64 != expected_dim {
        return Err(Error::InternalConsistency(format!(
            "realized dim {dim} of L({lam}) disagrees with the Weyl dimension {expected_dim}"
        )));
    }

    let mut actions = Vec::with_capacity(semisimple.dim());
    for x in 0..semisimple.dim() {
        let mut m = RationalMatrix::zero(dim, dim);
        for (w, monos) in monomials {
            let target = w.add(semisimple.weight_of(x));
            let Some(block) = quotient.action_block(x, w) else {
                continue;
            };
            for local in 0..monos.len() {
                let col = index_of[&(w.clone(), local)];
                for r in 0..block.rows() {
                    let v = block.get(r, local);
                    if !v.is_zero() {
                        m.set(index_of[&(target.clone(), r)], col, v);
                    }
                }
            }
        }
        actions.push(m);
    }

    let top_index = basis
        .iter()
        .position(|(w, _, _)| w == lam)
        .expect("highest weight vector survives the quotient");
    let lowest_candidates: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, (w, _, _))| *w == lowest)
        .map(|(i, _)| i)
        .collect();
    if lowest_candidates.len() != 1 {
        return Err(Error::InternalConsistency(
            "lowest weight space is not one-dimensional".into(),
        ));
    }

    let real = SimpleRealization {
        highest_weight: lam.clone(),
        basis,
        actions,
        top_index,
        lowest_index: lowest_candidates[0],
    };

    for i in 0..rs.rank() {
        let e = semisimple.e_index(rs.simple_root_index(i));
        for r in 0..dim {
            if !real.actions[e].get(r, real.top_index).is_zero() {
                return Err(Error::InternalConsistency(
                    "highest weight vector is not singular".into(),
                ));
            }
        }
    }

    Ok(real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::roots::{build_root_system, cartan_by_name};

    fn rs(name: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(cartan_by_name(name).unwrap()).unwrap())
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_ints(coords)
    }

    #[test]
    fn plain_sl2() {
        let a = build_algebra(rs("A1"), &[]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.radical_dim(), 0);
        // [e, f] = h, [h, e] = 2e, [h, f] = -2f.
        assert_eq!(
            a.bracket(a.e_index(0), a.f_index(0)),
            vec![(a.h_index(0), rat(1))]
        );
        assert_eq!(
            a.bracket(a.h_index(0), a.e_index(0)),
            vec![(a.e_index(0), rat(2))]
        );
        assert_eq!(
            a.bracket(a.h_index(0), a.f_index(0)),
            vec![(a.f_index(0), rat(-2))]
        );
    }

    #[test]
    fn gl2_like_central_extension() {
        let a = build_algebra(rs("A1"), &[w(&[0])]).unwrap();
        assert_eq!(a.dim(), 4);
        let (j1, j2) = a.split_radical();
        assert_eq!(j1.len(), 1);
        assert!(j2.is_empty());
        // The center commutes with everything.
        for x in 0..a.g0_dim() {
            assert!(a.bracket(x, a.u_index(0)).is_empty());
        }
    }

    #[test]
    fn sl2_with_adjoint_radical() {
        let a = build_algebra(rs("A1"), &[w(&[2])]).unwrap();
        assert_eq!(a.dim(), 6);
        let (j1, j2) = a.split_radical();
        assert!(j1.is_empty());
        assert_eq!(j2.len(), 3);
        // G = {0}: only the zero functional validates.
        match a.validate_g(&[rat(0), rat(0), rat(0)]).unwrap() {
            GValidation::Valid(g) => assert!(g.is_zero()),
            GValidation::Invalid(_) => panic!("zero functional must validate"),
        }
        match a.validate_g(&[rat(1), rat(0), rat(0)]).unwrap() {
            GValidation::Valid(_) => panic!("nonzero on J2 must be rejected"),
            GValidation::Invalid(viol) => {
                assert!(viol.iter().any(|v| v.constraint == "g(J2) = 0"));
            }
        }
    }

    #[test]
    fn mixed_radical_split_and_functional() {
        let a = build_algebra(rs("A1"), &[w(&[0]), w(&[2])]).unwrap();
        assert_eq!(a.dim(), 3 + 1 + 3);
        let (j1, j2) = a.split_radical();
        assert_eq!(j1.len(), 1);
        assert_eq!(j2.len(), 3);
        // g = 5 on L(0), 0 on L(2) validates, and the bracket constraints
        // g([h,u]) = g([x,u]) = g([u,u']) = 0 all hold.
        match a.validate_g(&[rat(5), rat(0), rat(0), rat(0)]).unwrap() {
            GValidation::Valid(g) => assert_eq!(g.value(0), rat(5)),
            GValidation::Invalid(v) => panic!("expected valid functional, got {v:?}"),
        }
    }

    #[test]
    fn gl2_like_g_of_z_is_three() {
        let a = build_algebra(rs("A1"), &[w(&[0])]).unwrap();
        match a.validate_g(&[rat(3)]).unwrap() {
            GValidation::Valid(g) => assert_eq!(g.value(0), rat(3)),
            GValidation::Invalid(v) => panic!("g(z)=3 must validate: {v:?}"),
        }
    }

    #[test]
    fn realize_simple_sl2_adjoint() {
        let ss = build_algebra(rs("A1"), &[]).unwrap();
        let real = realize_simple(&ss, &w(&[2])).unwrap();
        assert_eq!(real.dim(), 3);
        let weights: Vec<Weight> = real.basis.iter().map(|(x, _, _)| x.clone()).collect();
        assert!(weights.contains(&w(&[2])));
        assert!(weights.contains(&w(&[0])));
        assert!(weights.contains(&w(&[-2])));
        assert!(real.is_irreducible());
    }

    #[test]
    fn realize_simple_trivial_and_vector() {
        let ss1 = build_algebra(rs("A1"), &[]).unwrap();
        assert_eq!(realize_simple(&ss1, &w(&[0])).unwrap().dim(), 1);
        let ss2 = build_algebra(rs("A2"), &[]).unwrap();
        let real = realize_simple(&ss2, &w(&[1, 0])).unwrap();
        assert_eq!(real.dim(), 3);
        assert!(real.is_irreducible());
    }

    #[test]
    fn nondominant_radical_weight_rejected() {
        assert!(matches!(
            build_algebra(rs("A1"), &[w(&[-1])]),
            Err(Error::InvalidRadical(_))
        ));
    }

    #[test]
    fn a2_structure_constants_are_deterministic() {
        let a = build_algebra(rs("A2"), &[]).unwrap();
        // Positive roots in fixed order: a2, a1, a1+a2; the extraspecial
        // pair for a1+a2 is (a2, a1), so [e(a2), e(a1)] = +e(a1+a2).
        assert_eq!(
            a.bracket(a.e_index(0), a.e_index(1)),
            vec![(a.e_index(2), rat(1))]
        );
        assert_eq!(
            a.bracket(a.e_index(1), a.e_index(0)),
            vec![(a.e_index(2), rat(-1))]
        );
        // [e(a1+a2), f(a1+a2)] = h1 + h2.
        assert_eq!(
            a.bracket(a.e_index(2), a.f_index(2)),
            vec![(a.h_index(0), rat(1)), (a.h_index(1), rat(1))]
        );
    }

    #[test]
    fn g2_algebra_passes_jacobi() {
        // dim G2 = 14; construction validates Jacobi on all triples.
        let a = build_algebra(rs("G2"), &[]).unwrap();
        assert_eq!(a.dim(), 14);
    }

    #[test]
    fn b2_algebra_passes_jacobi() {
        let a = build_algebra(rs("B2"), &[]).unwrap();
        assert_eq!(a.dim(), 10);
    }

    #[test]
    fn a2_with_radical_passes_validation() {
        let a = build_algebra(rs("A2"), &[w(&[0, 0]), w(&[2, 0])]).unwrap();
        assert_eq!(a.radical_dim(), 1 + 6);
        let (j1, j2) = a.split_radical();
        assert_eq!(j1.len(), 1);
        assert_eq!(j2.len(), 6);
    }
}
