//! The bundled verification suite: ten end-to-end checks covering linkage
//! and embeddings, the singular-vector formula, functional constraints,
//! `J_2` vanishing, the non-liftability certificate, the no-projectives
//! tower, reciprocity, weight-space dimensions, and framework soundness.
//! Every check is exact; there are no tolerances anywhere.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    build_algebra, realize_simple, GFunctional, GValidation, GenReductiveAlgebra,
};
use crate::category::{
    self, check_oprime_axioms, composition_multiplicities_sl2, embed_verma,
    exhaustive_singular_weights, find_maximal_vectors, j2_nilpotency_degree, jordan_tower_growth,
    nonliftability_certificate, reciprocity_check_sl2, singular_vector_formula_check,
    standard_filtration, EmbedOutcome, LiftOutcome, SingularOutcome, StandardOutcome,
};
use crate::error::{Error, Result};
use crate::linalg::{rat, ratio, Rational};
use crate::pbw::{self, check_bracket_compatibility, TruncatedModule};
use crate::roots::{build_root_system, cartan_by_name, LinkageOutcome, RootSystem, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub millis: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub rank1_depth: usize,
    pub rank2_depth: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rank1_depth: 12,
            rank2_depth: 6,
        }
    }
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "strong linkage iff embedding on rank one"),
    (2, "strong linkage on sl3"),
    (3, "singular-vector formula with binomial expansion"),
    (4, "functional constraints on sampled g"),
    (5, "J2 acts by zero on Vermas over sl2 + L(2)"),
    (6, "non-liftability of the central-twist diagram"),
    (7, "no-projectives tower growth"),
    (8, "reciprocity on the rank-one block {0, -2}"),
    (9, "weight-space dimensions against Kostant partitions"),
    (10, "framework soundness: bracket compatibility and lengths"),
];

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CriterionReport>> {
    (1..=10).map(|id| run_criterion(id, opts)).collect()
}

pub fn run_criterion(id: usize, opts: &VerifyOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let name = CRITERIA
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, n)| n.to_string())
        .ok_or_else(|| Error::Parse(format!("no criterion {id}")))?;
    let (passed, details) = match id {
        1 => criterion_linkage_rank_one(opts)?,
        2 => criterion_linkage_sl3(opts)?,
        3 => criterion_singular_formula()?,
        4 => criterion_functional_constraints()?,
        5 => criterion_j2_vanishing()?,
        6 => criterion_nonliftability(opts)?,
        7 => criterion_tower()?,
        8 => criterion_reciprocity(opts)?,
        9 => criterion_weight_dims(opts)?,
        10 => criterion_soundness(opts)?,
        _ => unreachable!(),
    };
    Ok(CriterionReport {
        id,
        name,
        passed,
        details,
        millis: start.elapsed().as_millis(),
    })
}

fn a1() -> Result<Arc<RootSystem>> {
    Ok(Arc::new(build_root_system(cartan_by_name("A1").unwrap())?))
}

fn a2() -> Result<Arc<RootSystem>> {
    Ok(Arc::new(build_root_system(cartan_by_name("A2").unwrap())?))
}

fn gl2_like() -> Result<(Arc<GenReductiveAlgebra>, GFunctional)> {
    let a = build_algebra(a1()?, &[Weight::from_ints(&[0])])?;
    let g = a.functional(&[rat(3)])?;
    Ok((a, g))
}

type Check = (bool, Vec<String>);

fn criterion_linkage_rank_one(opts: &VerifyOptions) -> Result<Check> {
    let (alg, g) = gl2_like()?;
    let rs = Arc::clone(alg.root_system());
    let depth = opts.rank1_depth;
    let mut details = Vec::new();
    let mut passed = true;
    for lam_coord in -5..=5 {
        let lam = Weight::from_ints(&[lam_coord]);
        let m = pbw::build_verma(&alg, &lam, &g, depth)?;
        let found = exhaustive_singular_weights(&m, &lam)?;
        for mu in m.components().keys() {
            if mu == &lam {
                continue;
            }
            let linked = matches!(rs.strongly_linked(mu, &lam)?, LinkageOutcome::Linked(_));
            let has_singular = found.contains_key(mu);
            if linked != has_singular {
                passed = false;
                details.push(format!(
                    "λ={lam}: linkage and singular search disagree at {mu} (linked={linked}, singular={has_singular})"
                ));
            }
            match embed_verma(&alg, mu, &lam, &g, depth)? {
                EmbedOutcome::Embedded { map, .. } => {
                    if !linked {
                        passed = false;
                        details.push(format!("λ={lam}: unexpected embedding at {mu}"));
                    }
                    if !map.is_injective() {
                        passed = false;
                        details.push(format!("λ={lam}: embedding at {mu} not injective"));
                    }
                    // The image of the generator is a maximal vector.
                    let image = map.block_or_zero(mu);
                    let report = find_maximal_vectors(&m, mu)?;
                    let image_col: Vec<Rational> =
                        (0..image.rows()).map(|r| image.get(r, 0)).collect();
                    if crate::linalg::in_span(&report.basis, &image_col).is_none() {
                        passed = false;
                        details.push(format!(
                            "λ={lam}: embedded generator at {mu} is not maximal"
                        ));
                    }
                }
                EmbedOutcome::NotStronglyLinked => {
                    if linked {
                        passed = false;
                        details.push(format!("λ={lam}: linked {mu} failed to embed"));
                    }
                }
            }
        }
    }
    details.push(format!(
        "rank-one λ ∈ {{-5..5}} at depth {depth}: embeddings match linkage exactly"
    ));
    Ok((passed, details))
}

fn criterion_linkage_sl3(opts: &VerifyOptions) -> Result<Check> {
    let alg = build_algebra(a2()?, &[])?;
    let rs = Arc::clone(alg.root_system());
    let lam = Weight::from_ints(&[0, 0]);
    let depth = opts.rank2_depth;
    let m = pbw::build_verma(&alg, &lam, &GFunctional::zero(), depth)?;
    let found = exhaustive_singular_weights(&m, &lam)?;
    let mut passed = true;
    let mut details = Vec::new();
    // Expected: exactly the dot-orbit weights reachable by downward chains.
    let mut expected: Vec<Weight> = Vec::new();
    for el in rs.weyl_elements() {
        let mu = rs.dot_action(el, &lam);
        if mu == lam {
            continue;
        }
        if matches!(rs.strongly_linked(&mu, &lam)?, LinkageOutcome::Linked(_)) {
            expected.push(mu);
        }
    }
    expected.sort();
    expected.dedup();
    let got: Vec<Weight> = found.keys().cloned().collect();
    if got != expected {
        passed = false;
        details.push(format!(
            "expected maximal weights {expected:?}, found {got:?}"
        ));
    }
    // The chain to (−3, 0) is (a2, a1).
    match rs.strongly_linked(&Weight::from_ints(&[-3, 0]), &lam)? {
        LinkageOutcome::Linked(chain) => {
            let labels: Vec<String> = chain.steps.iter().map(|s| s.root_label.clone()).collect();
            if labels != ["a2", "a1"] {
                passed = false;
                details.push(format!("chain to (-3,0) is {labels:?}, expected [a2, a1]"));
            }
        }
        LinkageOutcome::NotLinked => {
            passed = false;
            details.push("(-3,0) not linked to (0,0)".into());
        }
    }
    details.push(format!(
        "sl3 λ=(0,0) at depth {depth}: {} maximal weights match the reachable dot orbit",
        found.len()
    ));
    Ok((passed, details))
}

fn criterion_singular_formula() -> Result<Check> {
    let mut passed = true;
    let mut details = Vec::new();
    let mut cases = 0usize;

    // Radical configurations per rank; (weights, sampled g-values on J1).
    let configs_rank1: Vec<(Vec<Weight>, Vec<Vec<Rational>>)> = vec![
        (
            vec![Weight::from_ints(&[0])],
            vec![vec![rat(3)], vec![ratio(-1, 2)]],
        ),
        (
            vec![Weight::from_ints(&[2])],
            vec![vec![rat(0), rat(0), rat(0)]],
        ),
        (
            vec![Weight::from_ints(&[0]), Weight::from_ints(&[2])],
            vec![vec![rat(5), rat(0), rat(0), rat(0)]],
        ),
    ];
    for (weights, gs) in &configs_rank1 {
        let alg = build_algebra(a1()?, weights)?;
        for raw in gs {
            let g = alg.functional(raw)?;
            for lam_coord in 0..=2 {
                let lam = Weight::from_ints(&[lam_coord]);
                cases += 1;
                match singular_vector_formula_check(&alg, &lam, &g, 0)? {
                    SingularOutcome::Checked(check) => {
                        if !check.passed() || check.exponent != (lam_coord + 1) as usize {
                            passed = false;
                            details.push(format!("rank1 λ={lam} failed: {check:?}"));
                        }
                    }
                    SingularOutcome::NotApplicable { .. } => {
                        passed = false;
                        details.push(format!("rank1 λ={lam} unexpectedly not applicable"));
                    }
                }
            }
        }
    }

    let configs_rank2: Vec<(Vec<Weight>, Vec<Rational>)> = vec![
        (vec![Weight::from_ints(&[0, 0])], vec![rat(3)]),
        (vec![Weight::from_ints(&[2, 0])], vec![rat(0); 6]),
        (
            vec![Weight::from_ints(&[0, 0]), Weight::from_ints(&[2, 0])],
            {
                let mut v = vec![rat(7)];
                v.extend(std::iter::repeat_n(rat(0), 6));
                v
            },
        ),
    ];
    for (weights, raw) in &configs_rank2 {
        let alg = build_algebra(a2()?, weights)?;
        let g = alg.functional(raw)?;
        for l0 in 0..=2 {
            for l1 in 0..=2 {
                for i in 0..2 {
                    let lam = Weight::from_ints(&[l0, l1]);
                    cases += 1;
                    match singular_vector_formula_check(&alg, &lam, &g, i)? {
                        SingularOutcome::Checked(check) => {
                            if !check.passed() {
                                passed = false;
                                details.push(format!("rank2 λ={lam} i={i} failed: {check:?}"));
                            }
                        }
                        SingularOutcome::NotApplicable { .. } => {
                            passed = false;
                            details.push(format!("rank2 λ={lam} i={i} not applicable"));
                        }
                    }
                }
            }
        }
    }
    // The n = 0 boundary is genuinely not applicable.
    let (alg, g) = gl2_like()?;
    if !matches!(
        singular_vector_formula_check(&alg, &Weight::from_ints(&[-1]), &g, 0)?,
        SingularOutcome::NotApplicable { .. }
    ) {
        passed = false;
        details.push("λ=(-1) should be not applicable".into());
    }
    details.push(format!(
        "singular-vector formula verified term-by-term in {cases} configurations"
    ));
    Ok((passed, details))
}

fn criterion_functional_constraints() -> Result<Check> {
    let alg = build_algebra(a1()?, &[Weight::from_ints(&[0]), Weight::from_ints(&[2])])?;
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    let mut passed = true;
    let mut details = Vec::new();
    let mut accepted = 0usize;
    let dim = alg.radical_dim();
    let (_, j2) = alg.split_radical();
    for trial in 0..100 {
        let mut raw: Vec<Rational> = (0..dim)
            .map(|_| ratio(rng.random_range(-6..=6), rng.random_range(1..=4)))
            .collect();
        // Make half the samples vanish on J2 so both branches are hit.
        if trial % 2 == 0 {
            for &p in &j2 {
                raw[p] = Rational::zero();
            }
        }
        let vanishes = j2.iter().all(|&p| raw[p].is_zero());
        match alg.validate_g(&raw)? {
            GValidation::Valid(g) => {
                accepted += 1;
                if !vanishes {
                    passed = false;
                    details.push(format!("trial {trial}: accepted despite J2 support"));
                }
                // Re-verify the three constraints on every basis pair.
                let value = |idx: usize| -> Rational {
                    let pos = idx - alg.u_index(0);
                    g.value(pos)
                };
                for x in 0..alg.g0_dim() {
                    for p in 0..dim {
                        let s: Rational = alg
                            .bracket(x, alg.u_index(p))
                            .iter()
                            .map(|(k, c)| c * value(*k))
                            .sum();
                        if !s.is_zero() {
                            passed = false;
                            details.push(format!("trial {trial}: g([x,u]) != 0"));
                        }
                    }
                }
                for p in 0..dim {
                    for q in 0..dim {
                        let s: Rational = alg
                            .bracket(alg.u_index(p), alg.u_index(q))
                            .iter()
                            .map(|(k, c)| c * value(*k))
                            .sum();
                        if !s.is_zero() {
                            passed = false;
                            details.push(format!("trial {trial}: g([u,u']) != 0"));
                        }
                    }
                }
            }
            GValidation::Invalid(viol) => {
                if vanishes {
                    passed = false;
                    details.push(format!(
                        "trial {trial}: rejected a functional vanishing on J2: {:?}",
                        viol.first()
                    ));
                }
            }
        }
    }
    details.push(format!(
        "100 sampled functionals on sl2 + (L(0) ⊕ L(2)): {accepted} accepted, acceptance ⇔ g(J2)=0"
    ));
    Ok((passed, details))
}

fn criterion_j2_vanishing() -> Result<Check> {
    let alg = build_algebra(a1()?, &[Weight::from_ints(&[2])])?;
    let g = alg.functional(&[rat(0), rat(0), rat(0)])?;
    let mut passed = true;
    let mut details = Vec::new();
    for lam_coord in [0i64, 2, 5] {
        let lam = Weight::from_ints(&[lam_coord]);
        let m = pbw::build_verma(&alg, &lam, &g, 8)?;
        for &p in alg.j2_positions() {
            let u = alg.u_index(p);
            for weight in m.components().keys() {
                if !m.block_or_zero(u, weight).is_zero() {
                    passed = false;
                    details.push(format!("λ={lam}: J2 element acts nonzero at {weight}"));
                }
            }
        }
        if j2_nilpotency_degree(&m)? != 1 {
            passed = false;
            details.push(format!("λ={lam}: nilpotency degree is not 1"));
        }
    }
    details.push("J2 of sl2 + L(2) acts by zero on M(λ, 0), λ ∈ {0, 2, 5}, depth 8".into());
    Ok((passed, details))
}

fn criterion_nonliftability(opts: &VerifyOptions) -> Result<Check> {
    let (alg, g) = gl2_like()?;
    let lam = Weight::from_ints(&[2]);
    let diagram = category::build_nonprojectivity_diagram(&alg, &g, &lam, opts.rank1_depth.min(9))?;
    let cert = nonliftability_certificate(&diagram.p, &diagram.pi, &diagram.phi)?;
    let mut passed = true;
    let mut details = Vec::new();
    match &cert.full {
        LiftOutcome::Inconsistent { witness_row } => {
            details.push(format!(
                "full lift system inconsistent with a verified witness over {} rows",
                witness_row.len()
            ));
        }
        LiftOutcome::Liftable(_) => {
            passed = false;
            details.push("full lift system unexpectedly consistent".into());
        }
    }
    if !cert.g0_restricted.is_liftable() {
        passed = false;
        details.push("g0-restricted system should be liftable".into());
    } else {
        details.push("g0-restricted lift exists".into());
    }
    match &cert.g0_map_radical_failure {
        Some((label, weight)) => {
            details.push(format!(
                "restricted lift fails to intertwine {label} at {weight}"
            ));
        }
        None => {
            passed = false;
            details.push("no radical failure located for the restricted lift".into());
        }
    }
    Ok((passed, details))
}

fn criterion_tower() -> Result<Check> {
    let (alg, g) = gl2_like()?;
    let report = jordan_tower_growth(&alg, &Weight::from_ints(&[2]), &g, 6)?;
    let mut passed = true;
    let mut details = Vec::new();
    for level in &report.levels {
        if !level.axioms_passed
            || level.twist_nilpotency_degree != level.k
            || level.span_dim != level.k
            || !level.connecting_map_ok.unwrap_or(true)
        {
            passed = false;
            details.push(format!("tower level {} failed: {level:?}", level.k));
        }
    }
    details.push(format!(
        "T_1..T_6 over {}: axioms pass, connecting epimorphisms verify, (z-g(z)) nilpotency degree = k, span{{w_1..w_k}} = k",
        report.u_label
    ));
    Ok((passed, details))
}

fn criterion_reciprocity(opts: &VerifyOptions) -> Result<Check> {
    let (alg, g) = gl2_like()?;
    let report = reciprocity_check_sl2(&alg, &g, &Weight::from_ints(&[0]), opts.rank1_depth)?;
    let mut passed = report.matches;
    let mut details = Vec::new();
    let expected: BTreeMap<(i64, i64), u64> =
        [((0, 0), 1), ((0, -2), 0), ((-2, 0), 1), ((-2, -2), 1)]
            .into_iter()
            .collect();
    for ((l, m), v) in &expected {
        let key = (Weight::from_ints(&[*l]), Weight::from_ints(&[*m]));
        if report.filtration_side.get(&key) != Some(v)
            || report.composition_side.get(&key) != Some(v)
        {
            passed = false;
            details.push(format!("entry (P({l}):M({m})) deviates from {v}"));
        }
    }
    details.push(
        "block {0, -2}: (P(λ,g) : M(μ,g)) = [M(μ,g) : L(λ,g)] entrywise, values (1,1;0,1)".into(),
    );
    Ok((passed, details))
}

fn criterion_weight_dims(opts: &VerifyOptions) -> Result<Check> {
    let alg = build_algebra(a2()?, &[Weight::from_ints(&[0, 0])])?;
    let g = alg.functional(&[rat(5)])?;
    let rs = Arc::clone(alg.root_system());
    let lam = Weight::from_ints(&[1, 1]);
    let depth = opts.rank2_depth;
    let m = pbw::build_verma(&alg, &lam, &g, depth)?;
    let mut passed = true;
    let mut details = Vec::new();
    let mut checked = 0usize;
    for (weight, labels) in m.components() {
        let drop = rs
            .root_lattice_diff(&lam, weight)
            .expect("component inside the cone");
        let expected = rs.kostant_partition(&drop);
        checked += 1;
        if labels.len() as u64 != expected {
            passed = false;
            details.push(format!(
                "dim at drop {drop:?} is {}, Kostant gives {expected}",
                labels.len()
            ));
        }
    }
    details.push(format!(
        "PBW dimensions equal Kostant partition counts at all {checked} components (height ≤ {depth})"
    ));
    Ok((passed, details))
}

fn criterion_soundness(opts: &VerifyOptions) -> Result<Check> {
    let mut passed = true;
    let mut details = Vec::new();
    let mut modules: Vec<(String, Arc<TruncatedModule>)> = Vec::new();

    let (alg1, g1) = gl2_like()?;
    for lam_coord in -5..=5 {
        let lam = Weight::from_ints(&[lam_coord]);
        modules.push((
            format!("M({lam_coord}, g)"),
            pbw::build_verma(&alg1, &lam, &g1, opts.rank1_depth)?,
        ));
    }
    let alg2 = build_algebra(a2()?, &[])?;
    modules.push((
        "sl3 M((0,0))".into(),
        pbw::build_verma(
            &alg2,
            &Weight::from_ints(&[0, 0]),
            &GFunctional::zero(),
            opts.rank2_depth,
        )?,
    ));
    let m_minus1 = pbw::build_verma(&alg1, &Weight::from_ints(&[-1]), &g1, opts.rank1_depth)?;
    let ss = alg1.semisimple_part();
    let l1 = realize_simple(&ss, &Weight::from_ints(&[1]))?;
    let tensor = pbw::tensor_with_simple(&m_minus1, &l1)?;
    modules.push(("M(-1,g) ⊗ L(1)".into(), Arc::clone(&tensor)));
    for k in 1..=6 {
        let mut twist = crate::linalg::RationalMatrix::zero(k, k);
        for i in 0..k.saturating_sub(1) {
            twist.set(i + 1, i, Rational::one());
        }
        let t = pbw::jordan_sum(&alg1, &vec![Weight::from_ints(&[2]); k], &g1, &twist, 0)?;
        modules.push((format!("T_{k}"), t));
    }
    let adj = build_algebra(a1()?, &[Weight::from_ints(&[2])])?;
    let zero_g = adj.functional(&[rat(0), rat(0), rat(0)])?;
    let u_pos = (0..3)
        .find(|&p| adj.weight_of(adj.u_index(p)) == &Weight::from_ints(&[-2]))
        .expect("lowest weight vector");
    let mut twist = crate::linalg::RationalMatrix::zero(2, 2);
    twist.set(1, 0, Rational::one());
    let pair = pbw::jordan_sum(
        &adj,
        &[Weight::from_ints(&[2]), Weight::from_ints(&[0])],
        &zero_g,
        &twist,
        u_pos,
    )?;
    modules.push(("L(2) ⊕ L(0) with J2 twist".into(), pair));

    for (name, module) in &modules {
        if let Err(e) = check_bracket_compatibility(module) {
            passed = false;
            details.push(format!("{name}: {e}"));
        }
    }
    details.push(format!(
        "bracket compatibility re-verified on {} modules",
        modules.len()
    ));

    // Standard filtration lengths agree with the g0-level peeling.
    let mut filtrations = 0usize;
    for (name, module) in [
        (
            "M(2,g)",
            pbw::build_verma(&alg1, &Weight::from_ints(&[2]), &g1, opts.rank1_depth)?,
        ),
        ("M(-1,g) ⊗ L(1)", tensor),
    ] {
        match standard_filtration(&module)? {
            StandardOutcome::Filtration(report) => {
                filtrations += 1;
                if report.g0_length != Some(report.steps.len()) {
                    passed = false;
                    details.push(format!(
                        "{name}: standard filtration length {} differs from g0 length {:?}",
                        report.steps.len(),
                        report.g0_length
                    ));
                }
            }
            StandardOutcome::NoStandardFiltration { reason } => {
                passed = false;
                details.push(format!("{name}: no standard filtration: {reason}"));
            }
        }
    }
    details.push(format!(
        "standard filtration length equality verified on {filtrations} modules"
    ));

    // Axioms pass on a sample of everything constructed above.
    for (name, module) in modules.iter().take(4) {
        if !check_oprime_axioms(module)?.all_passed() {
            passed = false;
            details.push(format!("{name}: category axioms failed"));
        }
    }

    // Hom(M(μ,g0), M(λ,g1)) = 0 for different validated functionals.
    let g_alt = alg1.functional(&[rat(5)])?;
    let m0 = pbw::build_verma(&alg1, &Weight::from_ints(&[-4]), &g1, 6)?;
    let m1 = pbw::build_verma(&alg1, &Weight::from_ints(&[2]), &g_alt, 9)?;
    if category::hom_space_dim(&m0, &m1, false)? != 0 {
        passed = false;
        details.push("Hom between different functionals is nonzero".into());
    } else {
        details.push("Hom(M(-4,g), M(2,g')) = 0 for g ≠ g'".into());
    }

    // Composition multiplicities recomputed for the block weights.
    let mults =
        composition_multiplicities_sl2(&alg1, &Weight::from_ints(&[2]), &g1, opts.rank1_depth)?;
    let expected: BTreeMap<Weight, u64> =
        [(Weight::from_ints(&[2]), 1), (Weight::from_ints(&[-4]), 1)]
            .into_iter()
            .collect();
    if mults != expected {
        passed = false;
        details.push(format!("[M(2,g)] multiplicities {mults:?}"));
    }
    Ok((passed, details))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_table_is_complete() {
        assert_eq!(CRITERIA.len(), 10);
        for (i, (id, _)) in CRITERIA.iter().enumerate() {
            assert_eq!(*id, i + 1);
        }
    }

    #[test]
    fn quick_criteria_pass_at_reduced_depth() {
        // The full suite runs as the acceptance test target; here a smoke
        // test at reduced depth covers the plumbing.
        let opts = VerifyOptions {
            rank1_depth: 8,
            rank2_depth: 4,
        };
        for id in [2, 5, 9] {
            let report = run_criterion(id, &opts).unwrap();
            assert!(report.passed, "criterion {id}: {:?}", report.details);
        }
    }
}
