//! Executable identity suites with counterexample reporting.
//!
//! Each suite sweeps bounded, exhaustive ranges of basis elements through
//! the algebraic laws its module promises — pre-Lie and branch-coproduct
//! identities, Hopf axioms, the product/coproduct duality, the contraction
//! coproduct's cointeraction, operad axioms, and the morphism transports.
//! All arithmetic is exact; a failing check reports the first
//! counterexample in display syntax. The suites back the `verify`
//! subcommand of the command-line tool and the acceptance tests.

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{
    antipode, block_sum, ck_coproduct, ck_coproduct_tree, contraction_coproduct,
    contraction_coproduct_full, forest_mul, gl_product, gl_product_forests, pairing,
    pairing_tensor, tensor_mul, tensor_pair, unshuffle_coproduct, CkAlgorithm, Tensor2, Tensor3,
};
use crate::linalg::{rat, rat_int, Lambda, LinComb, Rat};
use crate::morphisms::{
    change_matrix, decorated_pairing, phi, phi_forest, phi_tensor, phi_tree, phi_tree_lin,
    psi_forest, psi_star, psi_star_tensor, rank, ChangeMode, RestrictedAlphabet, TypeMatrix,
};
use crate::operad::{
    decorate_labels, generate_labeled_trees, label_tree, multilinear_perm_words, operad_compose,
    operad_compose_lin, operad_dimension, perm_word_product, permutative_dimension, LabeledTree,
    PermWord,
};
use crate::prelie::{
    forest_graft_lambda, forest_graft_word, nap_coproduct, nap_coproduct_mu, nap_tree,
    prelie_product, prelie_product_lambda, prelie_tree_product, upsilon, DeltaWord, NapTerm,
};
use crate::text::{render_forest, render_labeled_tree, render_lambda, render_tree};
use crate::trees::{
    generate_forests, generate_forests_weighted, generate_trees, symmetry_factor, Alphabets,
    DecId, DecorationAlphabet, Forest, Tree, TypeAlphabet, TypeId,
};

/// Names of the available suites, in the order `all` runs them.
pub const SUITES: [&str; 6] = [
    "prelie",
    "hopf",
    "duality",
    "operad",
    "morphisms",
    "cointeraction",
];

/// Default size bound for a suite; `None` for unknown names.
pub fn default_max(suite: &str) -> Option<usize> {
    match suite {
        "prelie" => Some(6),
        "hopf" => Some(5),
        "duality" => Some(5),
        "operad" => Some(3),
        "morphisms" => Some(4),
        "cointeraction" => Some(4),
        _ => None,
    }
}

/// Outcome of a single identity check: how many instances were tested and
/// the first counterexample found, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Outcome of a whole suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub max_size: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    /// One line per check:
    /// `PASS suite/check (N cases)` or `FAIL suite/check: message`.
    pub fn render_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| match &c.failure {
                None => format!("PASS {}/{} ({} cases)", self.suite, c.name, c.cases),
                Some(msg) => format!("FAIL {}/{}: {}", self.suite, c.name, msg),
            })
            .collect()
    }
}

/// Run one suite at the given size bound (its default when `None`).
pub fn run_suite(suite: &str, max_size: Option<usize>) -> Result<SuiteReport> {
    let max = match max_size.or_else(|| default_max(suite)) {
        Some(m) => m,
        None => {
            return Err(Error::constraint(format!(
                "unknown suite `{suite}`; expected one of prelie, hopf, duality, operad, \
                 morphisms, cointeraction, all"
            )))
        }
    };
    Ok(match suite {
        "prelie" => prelie_suite(max),
        "hopf" => hopf_suite(max),
        "duality" => duality_suite(max),
        "operad" => operad_suite(max),
        "morphisms" => morphisms_suite(max),
        "cointeraction" => cointeraction_suite(max),
        _ => unreachable!("default_max admitted the name"),
    })
}

/// Run a suite by name, or every suite for `"all"`. An explicit size bound
/// applies to each suite run; otherwise each uses its own default.
pub fn run_suites(suite: &str, max_size: Option<usize>) -> Result<Vec<SuiteReport>> {
    if suite == "all" {
        SUITES.iter().map(|s| run_suite(s, max_size)).collect()
    } else {
        Ok(vec![run_suite(suite, max_size)?])
    }
}

// ---------------------------------------------------------------------------
// Check plumbing.

/// Accumulator handed to a check body: counts instances and records the
/// first failure.
struct Check {
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn case(&mut self) {
        self.cases += 1;
    }

    /// Record a counterexample. Returns `Ok(())` so a check body can exit
    /// with `return c.fail(...)`.
    fn fail(&mut self, msg: String) -> Result<()> {
        self.failure = Some(msg);
        Ok(())
    }
}

fn run_check(
    name: &'static str,
    body: impl FnOnce(&mut Check) -> Result<()>,
) -> CheckReport {
    let mut c = Check {
        cases: 0,
        failure: None,
    };
    if let Err(e) = body(&mut c) {
        c.failure.get_or_insert_with(|| format!("internal error: {e}"));
    }
    CheckReport {
        name,
        cases: c.cases,
        failure: c.failure,
    }
}

// ---------------------------------------------------------------------------
// Shared fixtures.

/// One decoration, two edge types — the generic sweep alphabet.
fn plain_alphabets() -> Alphabets {
    Alphabets::from_names(&["a"], &["red", "green"]).expect("valid names")
}

/// One decoration with the trivial semigroup; two edge types.
fn mono_semigroup_alphabets() -> Alphabets {
    let dec = DecorationAlphabet::with_semigroup(vec!["a".into()], vec![vec![0]])
        .expect("trivial semigroup");
    let ty = TypeAlphabet::new(vec!["red".into(), "green".into()]).expect("two types");
    Alphabets::new(dec, ty)
}

fn lambda2(red: Rat, green: Rat) -> Lambda {
    Lambda::from_pairs([(TypeId(0), red), (TypeId(1), green)])
}

/// The weight vectors every Hopf-side law is swept over: generic, one
/// vanishing weight, and a fractional/negative pair.
fn sweep_lambdas() -> Vec<Lambda> {
    vec![
        lambda2(rat_int(1), rat_int(1)),
        lambda2(rat_int(1), rat_int(0)),
        lambda2(rat(2, 3), rat_int(-5)),
    ]
}

fn tree_pool(d: usize, t: usize, max: usize) -> Vec<Vec<Tree>> {
    (0..=max)
        .map(|n| if n == 0 { Vec::new() } else { generate_trees(d, t, n) })
        .collect()
}

fn forest_pool(d: usize, t: usize, max: usize) -> Vec<Vec<Forest>> {
    (0..=max)
        .map(|n| {
            if n == 0 {
                vec![Forest::empty()]
            } else {
                generate_forests(d, t, n)
            }
        })
        .collect()
}

fn show_tree(t: &Tree, a: &Alphabets) -> String {
    render_tree(t, a).unwrap_or_else(|_| format!("{t:?}"))
}

fn show_forest(f: &Forest, a: &Alphabets) -> String {
    render_forest(f, a).unwrap_or_else(|_| format!("{f:?}"))
}

fn show_lambda(l: &Lambda, a: &Alphabets) -> String {
    render_lambda(l, &a.types).unwrap_or_else(|_| format!("{l:?}"))
}

fn show_labeled(t: &LabeledTree, a: &Alphabets) -> String {
    render_labeled_tree(t, &a.types).unwrap_or_else(|_| format!("{t:?}"))
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = (rng.next_u64() % 19) as i64 - 9;
    let d = (rng.next_u64() % 9 + 1) as i64;
    rat(n, d)
}

fn rand_matrix(rng: &mut ChaCha8Rng, n: usize) -> TypeMatrix {
    let entries = (0..n)
        .map(|_| (0..n).map(|_| rand_rat(rng)).collect())
        .collect();
    TypeMatrix::new(entries).expect("square matrix")
}

fn rand_lambda(rng: &mut ChaCha8Rng, t_count: usize) -> Lambda {
    loop {
        let l = Lambda::from_pairs((0..t_count).map(|i| (TypeId(i as u32), rand_rat(rng))));
        if !l.is_zero() {
            return l;
        }
    }
}

fn int_matrix2(a: i64, b: i64, c: i64, d: i64) -> TypeMatrix {
    TypeMatrix::new(vec![
        vec![rat_int(a), rat_int(b)],
        vec![rat_int(c), rat_int(d)],
    ])
    .expect("2x2 matrix")
}

fn word_weight(w: &DeltaWord) -> usize {
    w.factors().iter().map(|(t, _)| t.size()).sum()
}

/// All multiset words over the pooled trees with total weight at most
/// `max_weight`, each factor carrying one of `t_count` types. Includes the
/// empty word.
fn words_up_to(trees: &[Vec<Tree>], t_count: u32, max_weight: usize) -> Vec<DeltaWord> {
    let mut cands: Vec<(usize, (Tree, TypeId))> = Vec::new();
    for (size, level) in trees.iter().enumerate().skip(1) {
        if size > max_weight {
            break;
        }
        for tree in level {
            for ty in 0..t_count {
                cands.push((size, (tree.clone(), TypeId(ty))));
            }
        }
    }
    fn rec(
        cands: &[(usize, (Tree, TypeId))],
        start: usize,
        left: usize,
        cur: &mut Vec<(Tree, TypeId)>,
        out: &mut Vec<DeltaWord>,
    ) {
        out.push(DeltaWord::new(cur.clone()));
        for j in start..cands.len() {
            if cands[j].0 <= left {
                cur.push(cands[j].1.clone());
                rec(cands, j, left - cands[j].0, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&cands, 0, max_weight, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Pre-Lie suite.

fn prelie_suite(max: usize) -> SuiteReport {
    let a = plain_alphabets();
    let trees = tree_pool(a.d(), a.t(), max);
    let forests = forest_pool(a.d(), a.t(), max);
    let types: Vec<TypeId> = (0..a.t() as u32).map(TypeId).collect();
    SuiteReport {
        suite: "prelie",
        max_size: max,
        checks: vec![
            check_multiple_prelie(&a, &trees, &types, max),
            check_branch_permutativity(&a, &trees, &types, max),
            check_branch_prelie_compatibility(&a, &trees, &types, max),
            check_branch_kernel_regraft(&a, &trees, &types, max),
            check_grafting_recursion(&a, &trees, &forests, max),
            check_grafting_derivation(&a, &trees, &forests, max),
        ],
    }
}

/// `(x •_t y) •_{t′} z − x •_t (y •_{t′} z)`.
fn assoc_defect(
    x: &LinComb<Tree>,
    y: &LinComb<Tree>,
    z: &LinComb<Tree>,
    t: TypeId,
    tp: TypeId,
) -> LinComb<Tree> {
    let first = prelie_product(&prelie_product(x, y, t), z, tp);
    let second = prelie_product(x, &prelie_product(y, z, tp), t);
    first.combine(&-rat_int(1), &second)
}

fn check_multiple_prelie(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    types: &[TypeId],
    max: usize,
) -> CheckReport {
    run_check("multiple-prelie-identity", |c| {
        for nx in 1..=max {
            for ny in 1..=max {
                for nz in 1..=max {
                    if nx + ny + nz > max {
                        continue;
                    }
                    for x in &trees[nx] {
                        let sx = LinComb::single(x.clone());
                        for y in &trees[ny] {
                            let sy = LinComb::single(y.clone());
                            for z in &trees[nz] {
                                let sz = LinComb::single(z.clone());
                                for &t in types {
                                    for &tp in types {
                                        c.case();
                                        let lhs = assoc_defect(&sx, &sy, &sz, t, tp);
                                        let rhs = assoc_defect(&sx, &sz, &sy, tp, t);
                                        if lhs != rhs {
                                            return c.fail(format!(
                                                "pre-Lie identity fails at x={}, y={}, z={}, \
                                                 t={}, t'={}",
                                                show_tree(x, a),
                                                show_tree(y, a),
                                                show_tree(z, a),
                                                a.types.name(t)?,
                                                a.types.name(tp)?,
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Two successive branch removals, recorded as
/// `(remaining tree, branch removed second, branch removed first)`.
fn two_branch_removals(
    x: &Tree,
    first: TypeId,
    second: TypeId,
) -> LinComb<(Tree, (Tree, TypeId), (Tree, TypeId))> {
    let mut out = LinComb::zero();
    for ((x1, b1), c1) in nap_tree(x, first).iter() {
        for ((x2, b2), c2) in nap_tree(x1, second).iter() {
            out.add_term((x2.clone(), b2.clone(), b1.clone()), c1 * c2);
        }
    }
    out
}

fn check_branch_permutativity(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    types: &[TypeId],
    max: usize,
) -> CheckReport {
    run_check("branch-permutativity", |c| {
        for n in 1..=max.saturating_sub(1) {
            for x in &trees[n] {
                for &t in types {
                    for &tp in types {
                        c.case();
                        let lhs = two_branch_removals(x, t, tp);
                        let rhs = two_branch_removals(x, tp, t)
                            .map_basis(|(core, b1, b2)| (core.clone(), b2.clone(), b1.clone()));
                        if lhs != rhs {
                            return c.fail(format!(
                                "branch removals fail to commute at x={}, t={}, t'={}",
                                show_tree(x, a),
                                a.types.name(t)?,
                                a.types.name(tp)?,
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_branch_prelie_compatibility(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    types: &[TypeId],
    max: usize,
) -> CheckReport {
    run_check("branch-prelie-compatibility", |c| {
        // ρ_t(x •_{t′} y) = δ_{t,t′}·x⊗(y,t)
        //   + Σ (x₁ •_{t′} y)⊗(x₂,ty) + Σ x₁⊗((x₂ •_{t′} y),ty)
        // over the branch removals ρ_t(x) = Σ x₁⊗(x₂,ty).
        for nx in 1..=max.saturating_sub(2) {
            for ny in 1..=max.saturating_sub(2) {
                if nx + ny > max.saturating_sub(2) {
                    continue;
                }
                for x in &trees[nx] {
                    for y in &trees[ny] {
                        for &t in types {
                            for &tp in types {
                                c.case();
                                let prod = prelie_tree_product(x, tp, y);
                                let lhs = nap_coproduct(&prod, t);
                                let mut rhs: LinComb<NapTerm> = LinComb::zero();
                                if t == tp {
                                    rhs.add_term((x.clone(), (y.clone(), t)), rat_int(1));
                                }
                                for ((x1, (x2, ty)), cc) in nap_tree(x, t).iter() {
                                    for (h, ch) in prelie_tree_product(x1, tp, y).iter() {
                                        rhs.add_term((h.clone(), (x2.clone(), *ty)), cc * ch);
                                    }
                                    for (g, cg) in prelie_tree_product(x2, tp, y).iter() {
                                        rhs.add_term((x1.clone(), (g.clone(), *ty)), cc * cg);
                                    }
                                }
                                if lhs != rhs {
                                    return c.fail(format!(
                                        "branch coproduct is not a grafting derivation at \
                                         x={}, y={}, t={}, t'={}",
                                        show_tree(x, a),
                                        show_tree(y, a),
                                        a.types.name(t)?,
                                        a.types.name(tp)?,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_branch_kernel_regraft(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    types: &[TypeId],
    max: usize,
) -> CheckReport {
    run_check("branch-kernel-regraft", |c| {
        for n in 1..=max.saturating_sub(1) {
            for x in &trees[n] {
                for &t0 in types {
                    c.case();
                    let removed = nap_tree(x, t0);
                    let count = x.root_type_count(t0);
                    if (count == 0) != removed.is_zero() {
                        return c.fail(format!(
                            "kernel mismatch at x={}, t0={}: {} root branches but removal \
                             is {}zero",
                            show_tree(x, a),
                            a.types.name(t0)?,
                            count,
                            if removed.is_zero() { "" } else { "non" },
                        ));
                    }
                    let back = upsilon(&removed, t0);
                    let mut expected = LinComb::zero();
                    expected.add_term(x.clone(), rat_int(count as i64));
                    if back != expected {
                        return c.fail(format!(
                            "regrafting removed branches at x={}, t0={} is not {}·identity",
                            show_tree(x, a),
                            a.types.name(t0)?,
                            count,
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Recursive oracle for the word action:
/// `u • (w·xδ_t) = (u • w) •_t x − u • (w •_t x)`,
/// where `w •_t x` replaces one factor `T` of `w` by `T •_t x`.
fn grafting_oracle(u: &Forest, w: &DeltaWord) -> LinComb<Forest> {
    let factors = w.factors();
    if factors.is_empty() {
        return LinComb::single(u.clone());
    }
    let (x, t) = factors.last().expect("nonempty").clone();
    let rest = DeltaWord::new(factors[..factors.len() - 1].to_vec());
    let single_x = Forest::single(x.clone());
    let unit = Lambda::unit(t);
    let mut first = LinComb::zero();
    for (fo, cc) in grafting_oracle(u, &rest).iter() {
        first = first.combine(cc, &forest_graft_lambda(fo, &single_x, &unit));
    }
    let mut second = LinComb::zero();
    for (i, (ti, tyi)) in rest.factors().iter().enumerate() {
        for (h, ch) in prelie_tree_product(ti, t, &x).iter() {
            let mut fs = rest.factors().to_vec();
            fs[i] = (h.clone(), *tyi);
            second = second.combine(ch, &grafting_oracle(u, &DeltaWord::new(fs)));
        }
    }
    first.combine(&-rat_int(1), &second)
}

fn check_grafting_recursion(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("grafting-word-recursion", |c| {
        let bound = max.saturating_sub(1);
        let words = words_up_to(trees, a.t() as u32, bound);
        for u_size in 0..=bound.saturating_sub(1) {
            for u in &forests[u_size] {
                for w in &words {
                    if w.is_empty() || u_size + word_weight(w) > bound {
                        continue;
                    }
                    c.case();
                    let got = forest_graft_word(u, w);
                    let want = grafting_oracle(u, w);
                    if got != want {
                        let shown: Vec<String> = w
                            .factors()
                            .iter()
                            .map(|(t, ty)| {
                                Ok(format!(
                                    "{}δ_{}",
                                    show_tree(t, a),
                                    a.types.name(*ty)?
                                ))
                            })
                            .collect::<Result<_>>()?;
                        return c.fail(format!(
                            "closed-form word action disagrees with its recursion at \
                             u={}, w={}",
                            show_forest(u, a),
                            shown.join(" "),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_grafting_derivation(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("grafting-derivation-splitting", |c| {
        // (u·v) • w = Σ_{I⊆factors(w)} (u • w_I)·(v • w_{I^c}).
        let bound = max.saturating_sub(2);
        let words = words_up_to(trees, a.t() as u32, bound);
        for nu in 1..=bound {
            for nv in 1..=bound {
                if nu + nv > bound {
                    continue;
                }
                for u in &forests[nu] {
                    for v in &forests[nv] {
                        for w in &words {
                            if w.is_empty() || nu + nv + word_weight(w) > bound {
                                continue;
                            }
                            c.case();
                            let lhs = forest_graft_word(&u.product(v), w);
                            let factors = w.factors();
                            let k = factors.len();
                            let mut rhs = LinComb::zero();
                            for mask in 0u32..(1 << k) {
                                let mut inside = Vec::new();
                                let mut outside = Vec::new();
                                for (i, fac) in factors.iter().enumerate() {
                                    if mask & (1 << i) != 0 {
                                        inside.push(fac.clone());
                                    } else {
                                        outside.push(fac.clone());
                                    }
                                }
                                let left = forest_graft_word(u, &DeltaWord::new(inside));
                                let right = forest_graft_word(v, &DeltaWord::new(outside));
                                rhs = rhs.combine(&rat_int(1), &forest_mul(&left, &right));
                            }
                            if lhs != rhs {
                                return c.fail(format!(
                                    "product rule fails at u={}, v={}, word of weight {}",
                                    show_forest(u, a),
                                    show_forest(v, a),
                                    word_weight(w),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Hopf suite.

fn hopf_suite(max: usize) -> SuiteReport {
    let a = plain_alphabets();
    let trees = tree_pool(a.d(), a.t(), max);
    let forests = forest_pool(a.d(), a.t(), max);
    let lambdas = sweep_lambdas();
    SuiteReport {
        suite: "hopf",
        max_size: max,
        checks: vec![
            check_ck_two_routes(&a, &trees, &lambdas, max),
            check_ck_coassociativity(&a, &forests, &lambdas, max),
            check_ck_multiplicativity(&a, &forests, &lambdas, max),
            check_counit_laws(&a, &forests, &lambdas, max),
            check_antipode_axiom(&a, &forests, &lambdas, max),
            check_gl_associativity(&a, &forests, &lambdas, max),
            check_gl_unit(&a, &forests, &lambdas, max),
            check_unshuffle_coassociativity(&a, &forests, max),
            check_gl_bialgebra(&a, &forests, &lambdas, max),
        ],
    }
}

fn check_ck_two_routes(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("cut-coproduct-two-routes", |c| {
        for l in lambdas {
            for n in 1..=max {
                for t in &trees[n] {
                    c.case();
                    let cuts = ck_coproduct_tree(t, l, CkAlgorithm::Cuts);
                    let rec = ck_coproduct_tree(t, l, CkAlgorithm::Recursive);
                    if cuts != rec {
                        return c.fail(format!(
                            "cut enumeration and root recursion disagree at {} with {}",
                            show_tree(t, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Both iterated coproducts of `d = Δ(f)`, as triples.
fn coassociativity_sides(
    d: &LinComb<Tensor2<Forest>>,
    mut delta: impl FnMut(&Forest) -> Result<LinComb<Tensor2<Forest>>>,
) -> Result<(LinComb<Tensor3<Forest>>, LinComb<Tensor3<Forest>>)> {
    let mut lhs = LinComb::zero();
    let mut rhs = LinComb::zero();
    for (pair, cc) in d.iter() {
        for (q, cq) in delta(&pair.left)?.iter() {
            lhs.add_term(
                Tensor3::new(q.left.clone(), q.right.clone(), pair.right.clone()),
                cc * cq,
            );
        }
        for (q, cq) in delta(&pair.right)?.iter() {
            rhs.add_term(
                Tensor3::new(pair.left.clone(), q.left.clone(), q.right.clone()),
                cc * cq,
            );
        }
    }
    Ok((lhs, rhs))
}

fn check_ck_coassociativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("cut-coproduct-coassociativity", |c| {
        for l in lambdas {
            for n in 0..=max {
                for f in &forests[n] {
                    c.case();
                    let d = ck_coproduct(f, l, CkAlgorithm::Cuts);
                    let (lhs, rhs) =
                        coassociativity_sides(&d, |g| Ok(ck_coproduct(g, l, CkAlgorithm::Cuts)))?;
                    if lhs != rhs {
                        return c.fail(format!(
                            "coassociativity fails at {} with {}",
                            show_forest(f, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_ck_multiplicativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("cut-coproduct-multiplicativity", |c| {
        for l in lambdas {
            for nx in 1..=max {
                for ny in 1..=max {
                    if nx + ny > max {
                        continue;
                    }
                    for x in &forests[nx] {
                        for y in &forests[ny] {
                            c.case();
                            let lhs = ck_coproduct(&x.product(y), l, CkAlgorithm::Cuts);
                            let rhs = tensor_mul(
                                &ck_coproduct(x, l, CkAlgorithm::Cuts),
                                &ck_coproduct(y, l, CkAlgorithm::Cuts),
                            );
                            if lhs != rhs {
                                return c.fail(format!(
                                    "multiplicativity fails at x={}, y={} with {}",
                                    show_forest(x, a),
                                    show_forest(y, a),
                                    show_lambda(l, a),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// `(ε⊗Id)` and `(Id⊗ε)` applied to a coproduct expansion.
fn counit_sides(d: &LinComb<Tensor2<Forest>>) -> (LinComb<Forest>, LinComb<Forest>) {
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for (pair, cc) in d.iter() {
        if pair.left.is_empty() {
            left.add_term(pair.right.clone(), cc.clone());
        }
        if pair.right.is_empty() {
            right.add_term(pair.left.clone(), cc.clone());
        }
    }
    (left, right)
}

fn check_counit_laws(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("counit-laws", |c| {
        for n in 0..=max {
            for f in &forests[n] {
                let id = LinComb::single(f.clone());
                for l in lambdas {
                    c.case();
                    let (left, right) = counit_sides(&ck_coproduct(f, l, CkAlgorithm::Cuts));
                    if left != id || right != id {
                        return c.fail(format!(
                            "cut-coproduct counit fails at {} with {}",
                            show_forest(f, a),
                            show_lambda(l, a),
                        ));
                    }
                }
                c.case();
                let (left, right) = counit_sides(&unshuffle_coproduct(f));
                if left != id || right != id {
                    return c.fail(format!(
                        "unshuffle counit fails at {}",
                        show_forest(f, a),
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_antipode_axiom(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("antipode-axiom", |c| {
        for l in lambdas {
            for n in 0..=max {
                for f in &forests[n] {
                    c.case();
                    let d = ck_coproduct(f, l, CkAlgorithm::Cuts);
                    let mut lhs = LinComb::zero();
                    let mut rhs = LinComb::zero();
                    for (pair, cc) in d.iter() {
                        let sl = antipode(&LinComb::single(pair.left.clone()), l);
                        lhs = lhs.combine(
                            cc,
                            &forest_mul(&sl, &LinComb::single(pair.right.clone())),
                        );
                        let sr = antipode(&LinComb::single(pair.right.clone()), l);
                        rhs = rhs.combine(
                            cc,
                            &forest_mul(&LinComb::single(pair.left.clone()), &sr),
                        );
                    }
                    let mut expected = LinComb::zero();
                    if f.is_empty() {
                        expected.add_term(Forest::empty(), rat_int(1));
                    }
                    if lhs != expected || rhs != expected {
                        return c.fail(format!(
                            "antipode axiom fails at {} with {}",
                            show_forest(f, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_gl_associativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("grafting-product-associativity", |c| {
        for l in lambdas {
            for nx in 1..=max {
                for ny in 1..=max {
                    for nz in 1..=max {
                        if nx + ny + nz > max {
                            continue;
                        }
                        for x in &forests[nx] {
                            let sx = LinComb::single(x.clone());
                            for y in &forests[ny] {
                                let xy = gl_product_forests(x, y, l);
                                for z in &forests[nz] {
                                    c.case();
                                    let sz = LinComb::single(z.clone());
                                    let lhs = gl_product(&xy, &sz, l);
                                    let yz = gl_product_forests(y, z, l);
                                    let rhs = gl_product(&sx, &yz, l);
                                    if lhs != rhs {
                                        return c.fail(format!(
                                            "associativity fails at x={}, y={}, z={} with {}",
                                            show_forest(x, a),
                                            show_forest(y, a),
                                            show_forest(z, a),
                                            show_lambda(l, a),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_gl_unit(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("grafting-product-unit", |c| {
        for l in lambdas {
            for n in 0..=max {
                for x in &forests[n] {
                    c.case();
                    let id = LinComb::single(x.clone());
                    let left = gl_product_forests(&Forest::empty(), x, l);
                    let right = gl_product_forests(x, &Forest::empty(), l);
                    if left != id || right != id {
                        return c.fail(format!(
                            "empty forest is not the unit at {} with {}",
                            show_forest(x, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_unshuffle_coassociativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("unshuffle-coassociativity", |c| {
        for n in 0..=max {
            for f in &forests[n] {
                c.case();
                let d = unshuffle_coproduct(f);
                let (lhs, rhs) = coassociativity_sides(&d, |g| Ok(unshuffle_coproduct(g)))?;
                if lhs != rhs {
                    return c.fail(format!(
                        "unshuffle coassociativity fails at {}",
                        show_forest(f, a),
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_gl_bialgebra(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("grafting-bialgebra-compatibility", |c| {
        for l in lambdas {
            for nx in 1..=max {
                for ny in 1..=max {
                    if nx + ny > max {
                        continue;
                    }
                    for x in &forests[nx] {
                        let dx = unshuffle_coproduct(x);
                        for y in &forests[ny] {
                            c.case();
                            let star = gl_product_forests(x, y, l);
                            let mut lhs = LinComb::zero();
                            for (fo, cc) in star.iter() {
                                lhs = lhs.combine(cc, &unshuffle_coproduct(fo));
                            }
                            let dy = unshuffle_coproduct(y);
                            let mut rhs = LinComb::zero();
                            for (p, cp) in dx.iter() {
                                for (q, cq) in dy.iter() {
                                    let sl = gl_product_forests(&p.left, &q.left, l);
                                    let sr = gl_product_forests(&p.right, &q.right, l);
                                    rhs = rhs.combine(&(cp * cq), &tensor_pair(&sl, &sr));
                                }
                            }
                            if lhs != rhs {
                                return c.fail(format!(
                                    "unshuffle coproduct is not multiplicative for the \
                                     grafting product at x={}, y={} with {}",
                                    show_forest(x, a),
                                    show_forest(y, a),
                                    show_lambda(l, a),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Duality suite.

fn duality_suite(max: usize) -> SuiteReport {
    let a = plain_alphabets();
    let forests = forest_pool(a.d(), a.t(), max);
    let lambdas = sweep_lambdas();
    SuiteReport {
        suite: "duality",
        max_size: max,
        checks: vec![check_star_ck_duality(&a, &forests, &lambdas, max)],
    }
}

fn check_star_ck_duality(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    lambdas: &[Lambda],
    max: usize,
) -> CheckReport {
    run_check("grafting-cut-duality", |c| {
        // ⟨x ⋆_λ y, z⟩ = ⟨x⊗y, Δ_λ(z)⟩ whenever |x|+|y| = |z|; the pairing
        // is graded, so only matching sizes can be nonzero on either side.
        for l in lambdas {
            for n in 0..=max {
                let dzs: Vec<LinComb<Tensor2<Forest>>> = forests[n]
                    .iter()
                    .map(|z| ck_coproduct(z, l, CkAlgorithm::Cuts))
                    .collect();
                for i in 0..=n {
                    for x in &forests[i] {
                        let sx = LinComb::single(x.clone());
                        for y in &forests[n - i] {
                            let sy = LinComb::single(y.clone());
                            let star = gl_product_forests(x, y, l);
                            for (z, dz) in forests[n].iter().zip(&dzs) {
                                c.case();
                                let lhs =
                                    star.coeff(z) * Rat::from_integer(symmetry_factor(z));
                                let rhs = pairing_tensor(&sx, &sy, dz);
                                if lhs != rhs {
                                    return c.fail(format!(
                                        "duality fails at x={}, y={}, z={} with {}: \
                                         product side {}, coproduct side {}",
                                        show_forest(x, a),
                                        show_forest(y, a),
                                        show_forest(z, a),
                                        show_lambda(l, a),
                                        lhs,
                                        rhs,
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Cointeraction suite.

fn cointeraction_suite(max: usize) -> SuiteReport {
    let a = mono_semigroup_alphabets();
    let trees = tree_pool(a.d(), a.t(), max);
    let forests = forest_pool(a.d(), a.t(), max);
    SuiteReport {
        suite: "cointeraction",
        max_size: max,
        checks: vec![
            check_delta_coassociativity(&a, &forests, max),
            check_delta_multiplicativity(&a, &forests, max),
            check_ck_delta_cointeraction(&a, &trees, max),
            check_full_contraction_quotient(max),
        ],
    }
}

fn check_delta_coassociativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("contraction-coassociativity", |c| {
        let dec = &a.decorations;
        for n in 0..=max {
            for f in &forests[n] {
                c.case();
                let d = contraction_coproduct(f, dec)?;
                let (lhs, rhs) = coassociativity_sides(&d, |g| contraction_coproduct(g, dec))?;
                if lhs != rhs {
                    return c.fail(format!(
                        "contraction coassociativity fails at {}",
                        show_forest(f, a),
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_delta_multiplicativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("contraction-multiplicativity", |c| {
        let dec = &a.decorations;
        for nx in 1..=max {
            for ny in 1..=max {
                if nx + ny > max {
                    continue;
                }
                for x in &forests[nx] {
                    let dx = contraction_coproduct(x, dec)?;
                    for y in &forests[ny] {
                        c.case();
                        let lhs = contraction_coproduct(&x.product(y), dec)?;
                        let rhs = tensor_mul(&dx, &contraction_coproduct(y, dec)?);
                        if lhs != rhs {
                            return c.fail(format!(
                                "contraction multiplicativity fails at x={}, y={}",
                                show_forest(x, a),
                                show_forest(y, a),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_ck_delta_cointeraction(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    max: usize,
) -> CheckReport {
    run_check("cut-contraction-cointeraction", |c| {
        // (Δ_λ⊗Id)∘δ agrees with applying δ to both legs of Δ_λ and
        // multiplying the two right factors.
        let dec = &a.decorations;
        let lambdas = [
            lambda2(rat_int(1), rat_int(1)),
            lambda2(rat(2, 3), rat_int(-5)),
        ];
        for l in &lambdas {
            for n in 1..=max {
                for tree in &trees[n] {
                    c.case();
                    let fo = Forest::single(tree.clone());
                    let mut lhs = LinComb::zero();
                    for (pair, cc) in contraction_coproduct(&fo, dec)?.iter() {
                        for (q, cq) in ck_coproduct(&pair.left, l, CkAlgorithm::Cuts).iter() {
                            lhs.add_term(
                                Tensor3::new(
                                    q.left.clone(),
                                    q.right.clone(),
                                    pair.right.clone(),
                                ),
                                cc * cq,
                            );
                        }
                    }
                    let mut rhs = LinComb::zero();
                    for (pair, cc) in ck_coproduct(&fo, l, CkAlgorithm::Cuts).iter() {
                        let da = contraction_coproduct(&pair.left, dec)?;
                        let db = contraction_coproduct(&pair.right, dec)?;
                        for (p, cp) in da.iter() {
                            for (q, cq) in db.iter() {
                                rhs.add_term(
                                    Tensor3::new(
                                        p.left.clone(),
                                        q.left.clone(),
                                        p.right.product(&q.right),
                                    ),
                                    cc * cp * cq,
                                );
                            }
                        }
                    }
                    if lhs != rhs {
                        return c.fail(format!(
                            "cointeraction fails at {} with {}",
                            show_tree(tree, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_full_contraction_quotient(max: usize) -> CheckReport {
    run_check("full-contraction-quotient", |c| {
        // Quotienting pairs (S, e) to S when e equals the semigroup sum of
        // S's decorations (and to zero otherwise) carries full mode onto
        // semigroup mode; swept over the two-element group alphabet.
        let two = DecorationAlphabet::with_semigroup(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 0]],
        )?;
        let ty = TypeAlphabet::new(vec!["red".into(), "green".into()])?;
        let a = Alphabets::new(two, ty);
        for n in 1..=max.saturating_sub(1) {
            for tree in generate_trees(a.d(), a.t(), n) {
                c.case();
                let total = block_sum(&tree, &a.decorations)?;
                let full = contraction_coproduct_full(&tree, total, &a.decorations)?;
                let mut projected: LinComb<Tensor2<Forest>> = LinComb::zero();
                'term: for (pair, cc) in full.iter() {
                    let mut sides = [Vec::new(), Vec::new()];
                    for (i, half) in [&pair.left, &pair.right].into_iter().enumerate() {
                        for (t, e) in half {
                            if block_sum(t, &a.decorations)? != *e {
                                continue 'term;
                            }
                            sides[i].push(t.clone());
                        }
                    }
                    let [l, r] = sides;
                    projected.add_term(
                        Tensor2::new(Forest::new(l), Forest::new(r)),
                        cc.clone(),
                    );
                }
                let semi =
                    contraction_coproduct(&Forest::single(tree.clone()), &a.decorations)?;
                if projected != semi {
                    return c.fail(format!(
                        "full-mode projection disagrees with semigroup mode at {}",
                        show_tree(&tree, &a),
                    ));
                }
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Operad suite.

fn operad_suite(max: usize) -> SuiteReport {
    let a = plain_alphabets();
    let t_count = a.t();
    let base: Vec<Vec<LabeledTree>> = labeled_pool(1, max, t_count);
    let second: Vec<Vec<LabeledTree>> = labeled_pool(11, max, t_count);
    let third: Vec<Vec<LabeledTree>> = labeled_pool(21, max, t_count);
    SuiteReport {
        suite: "operad",
        max_size: max,
        checks: vec![
            check_operad_dimension(max),
            check_permutative_dimension(max),
            check_operad_unit_laws(&a, &base, max),
            check_operad_parallel_associativity(&a, &base, &second, &third, max),
            check_operad_sequential_associativity(&a, &base, &second, &third, max),
            check_permutative_axioms(max),
            check_prelie_operad_bridge(max),
        ],
    }
}

/// Labeled trees on `start..start+n` for each size `n ≤ max` (index 0 empty).
fn labeled_pool(start: u32, max: usize, t_count: usize) -> Vec<Vec<LabeledTree>> {
    (0..=max)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                let labels: Vec<u32> = (start..start + n as u32).collect();
                generate_labeled_trees(&labels, t_count)
            }
        })
        .collect()
}

fn check_operad_dimension(max: usize) -> CheckReport {
    run_check("operad-dimension", |c| {
        let top = (max + 2).min(5);
        for t_count in 1..=2usize {
            for n in 1..=top {
                c.case();
                let labels: Vec<u32> = (1..=n as u32).collect();
                let got = generate_labeled_trees(&labels, t_count).len();
                let want = operad_dimension(n as u64, t_count as u64);
                if BigInt::from(got) != want {
                    return c.fail(format!(
                        "operad dimension mismatch at arity {n} with {t_count} types: \
                         enumerated {got}, closed form {want}",
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_permutative_dimension(max: usize) -> CheckReport {
    run_check("permutative-dimension", |c| {
        let top = (max + 1).min(4);
        for t_count in 1..=2usize {
            for n in 1..=top {
                c.case();
                let got = multilinear_perm_words(n as u32, t_count as u32).len();
                let want = permutative_dimension(n as u64, t_count as u64);
                if BigInt::from(got) != want {
                    return c.fail(format!(
                        "permutative dimension mismatch at arity {n} with {t_count} types: \
                         enumerated {got}, closed form {want}",
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_operad_unit_laws(
    a: &Alphabets,
    base: &[Vec<LabeledTree>],
    max: usize,
) -> CheckReport {
    run_check("operad-unit-laws", |c| {
        let unit = LabeledTree::single(99);
        for n in 1..=max {
            for s in &base[n] {
                c.case();
                let left = operad_compose(&unit, 99, s)?;
                if left != LinComb::single(s.clone()) {
                    return c.fail(format!(
                        "left unit law fails at {}",
                        show_labeled(s, a),
                    ));
                }
                for lab in s.labels() {
                    c.case();
                    let mut map: BTreeMap<u32, u32> =
                        s.labels().into_iter().map(|l| (l, l)).collect();
                    map.insert(lab, 99);
                    let want = LinComb::single(s.relabel(&map)?);
                    let right = operad_compose(s, lab, &unit)?;
                    if right != want {
                        return c.fail(format!(
                            "right unit law fails at {} slot {}",
                            show_labeled(s, a),
                            lab,
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_operad_parallel_associativity(
    a: &Alphabets,
    base: &[Vec<LabeledTree>],
    second: &[Vec<LabeledTree>],
    third: &[Vec<LabeledTree>],
    max: usize,
) -> CheckReport {
    run_check("operad-parallel-associativity", |c| {
        // (t ∘_{a′} s′) ∘_{a″} s″ = (t ∘_{a″} s″) ∘_{a′} s′ for distinct
        // slots a′, a″ of t.
        let pool2: Vec<&LabeledTree> = second[1..=max].iter().flatten().collect();
        let pool3: Vec<&LabeledTree> = third[1..=max].iter().flatten().collect();
        for n in 2..=max {
            for t in &base[n] {
                let labels = t.labels();
                for i in 0..labels.len() {
                    for j in i + 1..labels.len() {
                        let (ap, app) = (labels[i], labels[j]);
                        let firsts: Vec<LinComb<LabeledTree>> = pool2
                            .iter()
                            .map(|s| operad_compose(t, ap, s))
                            .collect::<Result<_>>()?;
                        let seconds: Vec<LinComb<LabeledTree>> = pool3
                            .iter()
                            .map(|s| operad_compose(t, app, s))
                            .collect::<Result<_>>()?;
                        for (s1, first) in pool2.iter().zip(&firsts) {
                            let single1 = LinComb::single((*s1).clone());
                            for (s2, second_comb) in pool3.iter().zip(&seconds) {
                                c.case();
                                let single2 = LinComb::single((*s2).clone());
                                let lhs = operad_compose_lin(first, app, &single2)?;
                                let rhs = operad_compose_lin(second_comb, ap, &single1)?;
                                if lhs != rhs {
                                    return c.fail(format!(
                                        "parallel associativity fails at t={}, slots \
                                         ({ap},{app}), s'={}, s''={}",
                                        show_labeled(t, a),
                                        show_labeled(s1, a),
                                        show_labeled(s2, a),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_operad_sequential_associativity(
    a: &Alphabets,
    base: &[Vec<LabeledTree>],
    second: &[Vec<LabeledTree>],
    third: &[Vec<LabeledTree>],
    max: usize,
) -> CheckReport {
    run_check("operad-sequential-associativity", |c| {
        // (t ∘_{a} s) ∘_{b} r = t ∘_{a} (s ∘_{b} r) for b a slot of s.
        let pool1: Vec<&LabeledTree> = base[1..=max].iter().flatten().collect();
        let pool3: Vec<&LabeledTree> = third[1..=max].iter().flatten().collect();
        for ns in 1..=max {
            for s in &second[ns] {
                let s_labels = s.labels();
                // Inner compositions, cached per (slot of s, r).
                let mut inners: Vec<Vec<LinComb<LabeledTree>>> = Vec::new();
                for &b in &s_labels {
                    inners.push(
                        pool3
                            .iter()
                            .map(|r| operad_compose(s, b, r))
                            .collect::<Result<_>>()?,
                    );
                }
                for t in &pool1 {
                    let single_t = LinComb::single((*t).clone());
                    for slot in t.labels() {
                        let outer = operad_compose(t, slot, s)?;
                        for (bi, &b) in s_labels.iter().enumerate() {
                            for (ri, r) in pool3.iter().enumerate() {
                                c.case();
                                let lhs = operad_compose_lin(
                                    &outer,
                                    b,
                                    &LinComb::single((*r).clone()),
                                )?;
                                let rhs =
                                    operad_compose_lin(&single_t, slot, &inners[bi][ri])?;
                                if lhs != rhs {
                                    return c.fail(format!(
                                        "sequential associativity fails at t={}, slot {slot}, \
                                         s={}, slot {b}, r={}",
                                        show_labeled(t, a),
                                        show_labeled(s, a),
                                        show_labeled(r, a),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_permutative_axioms(max: usize) -> CheckReport {
    run_check("permutative-axioms", |c| {
        // In the word model: (x ⋄_t y) ⋄_{t′} z = x ⋄_t (y ⋄_{t′} z)
        //                                       = (x ⋄_{t′} z) ⋄_t y.
        let mut pool: Vec<PermWord> = Vec::new();
        let heads = 3.min(max.max(1)) as u32;
        for head in 1..=heads {
            pool.push(PermWord::generator(head));
            for lab in [4u32, 5] {
                for ty in 0..2u32 {
                    pool.push(PermWord::new(head, vec![(lab, TypeId(ty))]));
                }
            }
        }
        let types = [TypeId(0), TypeId(1)];
        for x in &pool {
            for y in &pool {
                for z in &pool {
                    for &t in &types {
                        for &tp in &types {
                            c.case();
                            let lhs = perm_word_product(&perm_word_product(x, t, y), tp, z);
                            let assoc = perm_word_product(x, t, &perm_word_product(y, tp, z));
                            let perm = perm_word_product(&perm_word_product(x, tp, z), t, y);
                            if lhs != assoc || lhs != perm {
                                return c.fail(format!(
                                    "permutative axioms fail at {x:?}, {y:?}, {z:?} \
                                     with types {t:?}, {tp:?}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_prelie_operad_bridge(max: usize) -> CheckReport {
    run_check("prelie-operad-bridge", |c| {
        // Evaluating the two-vertex generator by operadic composition
        // reproduces the grafting product on decorated trees.
        let a = Alphabets::from_names(&["a", "b"], &["red", "green"])?;
        let trees = tree_pool(a.d(), a.t(), max);
        let types: Vec<TypeId> = (0..a.t() as u32).map(TypeId).collect();
        for nx in 1..=max {
            for x in &trees[nx] {
                let (lx, dx) = label_tree(x, 1);
                for ny in 1..=max {
                    for y in &trees[ny] {
                        let (ly, dy) = label_tree(y, 101);
                        let mut decs = dx.clone();
                        decs.extend(dy.iter().map(|(k, v)| (*k, *v)));
                        for &t in &types {
                            c.case();
                            let generator = LabeledTree::new(1000, vec![(1001, 1000, t)])?;
                            let grafted = operad_compose(&generator, 1000, &lx)?;
                            let full =
                                operad_compose_lin(&grafted, 1001, &LinComb::single(ly.clone()))?;
                            let mut got = LinComb::zero();
                            for (lt, cc) in full.iter() {
                                got.add_term(decorate_labels(lt, &decs)?, cc.clone());
                            }
                            let want = prelie_tree_product(x, t, y);
                            if got != want {
                                return c.fail(format!(
                                    "operadic evaluation disagrees with grafting at x={}, \
                                     y={}, t={}",
                                    show_tree(x, &a),
                                    show_tree(y, &a),
                                    a.types.name(t)?,
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Morphisms suite.

fn morphisms_suite(max: usize) -> SuiteReport {
    let a = plain_alphabets();
    let trees = tree_pool(a.d(), a.t(), max);
    let forests = forest_pool(a.d(), a.t(), max);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut mats = vec![int_matrix2(2, 3, 5, 7), int_matrix2(1, -1, 0, 2)];
    for _ in 0..2 {
        mats.push(rand_matrix(&mut rng, 2));
    }
    SuiteReport {
        suite: "morphisms",
        max_size: max,
        checks: vec![
            check_phi_functoriality(&a, &forests, &mats, max),
            check_phi_multiplicativity(&a, &forests, &mats, max),
            check_phi_prelie_transport(&a, &trees, &mats, max),
            check_phi_branch_transport(&a, &trees, &mats, max),
            check_phi_ck_transport(&a, &trees, &mats, max),
            check_psi_adjointness(&a, &forests, max),
            check_psi_star_multiplicativity(&a, &forests, max),
            check_psi_star_coalgebra(&a, &trees, max),
            check_psi_graded_invertibility(max),
            check_psi_kernel_witness(max),
            check_change_of_weights(),
        ],
    }
}

fn check_phi_functoriality(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    mats: &[TypeMatrix],
    max: usize,
) -> CheckReport {
    run_check("retyping-functoriality", |c| {
        for (i, m) in mats.iter().enumerate() {
            let mp = &mats[(i + 1) % mats.len()];
            let prod = m.mul(mp)?;
            for n in 0..=max {
                for f in &forests[n] {
                    c.case();
                    let inner = phi_forest(f, mp)?;
                    let lhs = phi(&inner, m)?;
                    let rhs = phi_forest(f, &prod)?;
                    if lhs != rhs {
                        return c.fail(format!(
                            "functoriality fails at {} for matrix pair {i}",
                            show_forest(f, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_phi_multiplicativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    mats: &[TypeMatrix],
    max: usize,
) -> CheckReport {
    run_check("retyping-multiplicativity", |c| {
        for m in &mats[..2] {
            for nx in 1..=max {
                for ny in 1..=max {
                    if nx + ny > max {
                        continue;
                    }
                    for x in &forests[nx] {
                        let ix = phi_forest(x, m)?;
                        for y in &forests[ny] {
                            c.case();
                            let lhs = phi_forest(&x.product(y), m)?;
                            let rhs = forest_mul(&ix, &phi_forest(y, m)?);
                            if lhs != rhs {
                                return c.fail(format!(
                                    "multiplicativity fails at x={}, y={}",
                                    show_forest(x, a),
                                    show_forest(y, a),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_phi_prelie_transport(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    mats: &[TypeMatrix],
    max: usize,
) -> CheckReport {
    run_check("retyping-prelie-transport", |c| {
        // φ_M(x •_λ y) = φ_M(x) •_{Mλ} φ_M(y).
        let lams = [lambda2(rat(2, 3), rat_int(-5)), lambda2(rat_int(1), rat_int(0))];
        for m in mats {
            for l in &lams {
                let ml = m.apply(l)?;
                for nx in 1..=max {
                    for ny in 1..=max {
                        if nx + ny > max {
                            continue;
                        }
                        for x in &trees[nx] {
                            let ix = phi_tree(x, m)?;
                            for y in &trees[ny] {
                                c.case();
                                let sx = LinComb::single(x.clone());
                                let sy = LinComb::single(y.clone());
                                let lhs =
                                    phi_tree_lin(&prelie_product_lambda(&sx, &sy, l), m)?;
                                let rhs =
                                    prelie_product_lambda(&ix, &phi_tree(y, m)?, &ml);
                                if lhs != rhs {
                                    return c.fail(format!(
                                        "grafting transport fails at x={}, y={} with {}",
                                        show_tree(x, a),
                                        show_tree(y, a),
                                        show_lambda(l, a),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_phi_branch_transport(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    mats: &[TypeMatrix],
    max: usize,
) -> CheckReport {
    run_check("retyping-branch-transport", |c| {
        // ρ_μ ∘ φ_M = (φ_M ⊗ φ_M) ∘ ρ_{M^⊤μ}, after forgetting the type
        // recorded with the removed branch.
        let mus = [lambda2(rat_int(3), rat(1, 2)), lambda2(rat_int(0), rat_int(1))];
        let collapse = |x: &LinComb<NapTerm>| -> LinComb<(Tree, Tree)> {
            x.map_basis(|(l, (r, _))| (l.clone(), r.clone()))
        };
        for m in mats {
            for mu in &mus {
                let mtu = m.transpose_apply(mu)?;
                for n in 1..=max.saturating_sub(1) {
                    for tree in &trees[n] {
                        c.case();
                        let ts = LinComb::single(tree.clone());
                        let lhs = collapse(&nap_coproduct_mu(&phi_tree(tree, m)?, mu));
                        let pre = collapse(&nap_coproduct_mu(&ts, &mtu));
                        let mut rhs = LinComb::zero();
                        for ((l, r), cc) in pre.iter() {
                            for (li, cl) in phi_tree(l, m)?.iter() {
                                for (ri, cr) in phi_tree(r, m)?.iter() {
                                    rhs.add_term((li.clone(), ri.clone()), cc * cl * cr);
                                }
                            }
                        }
                        if lhs != rhs {
                            return c.fail(format!(
                                "branch transport fails at {} with {}",
                                show_tree(tree, a),
                                show_lambda(mu, a),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_phi_ck_transport(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    mats: &[TypeMatrix],
    max: usize,
) -> CheckReport {
    run_check("retyping-cut-transport", |c| {
        // (Φ_M ⊗ Φ_M) ∘ Δ_{M^⊤λ} = Δ_λ ∘ Φ_M on trees.
        let lams = [lambda2(rat(2, 3), rat_int(-5)), lambda2(rat_int(1), rat_int(0))];
        for m in mats {
            for l in &lams {
                let mtl = m.transpose_apply(l)?;
                for n in 1..=max {
                    for tree in &trees[n] {
                        c.case();
                        let lhs = phi_tensor(
                            &ck_coproduct_tree(tree, &mtl, CkAlgorithm::Cuts),
                            m,
                        )?;
                        let img = phi_tree(tree, m)?;
                        let mut rhs = LinComb::zero();
                        for (u, cc) in img.iter() {
                            rhs = rhs
                                .combine(cc, &ck_coproduct_tree(u, l, CkAlgorithm::Cuts));
                        }
                        if lhs != rhs {
                            return c.fail(format!(
                                "cut-coproduct transport fails at {} with {}",
                                show_tree(tree, a),
                                show_lambda(l, a),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_psi_adjointness(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("freeness-adjointness", |c| {
        // ⟨Ψ(u), v⟩ = ⟨u, Ψ*(v)⟩ with the symmetry pairing on the typed side
        // and the decorated pairing on the decorated side.
        let lams = [lambda2(rat_int(5), rat_int(7)), lambda2(rat(2, 3), rat_int(-5))];
        for l in &lams {
            for n in 1..=max {
                let ra = RestrictedAlphabet::new(a.d(), a.t(), TypeId(0), n)?;
                let domain = generate_forests_weighted(ra.weights(), 1, n);
                let images: Vec<(Forest, LinComb<Forest>)> = domain
                    .iter()
                    .map(|u| Ok((u.clone(), psi_forest(u, l, &ra)?)))
                    .collect::<Result<_>>()?;
                for v in &forests[n] {
                    let pv = psi_star(v, l, &ra)?;
                    let sv = LinComb::single(v.clone());
                    for (u, psi_u) in &images {
                        c.case();
                        let lhs = pairing(psi_u, &sv);
                        let rhs =
                            decorated_pairing(&LinComb::single(u.clone()), &pv, &ra)?;
                        if lhs != rhs {
                            return c.fail(format!(
                                "adjointness fails at u={u:?}, v={} with {}: typed side \
                                 {lhs}, decorated side {rhs}",
                                show_forest(v, a),
                                show_lambda(l, a),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_psi_star_multiplicativity(
    a: &Alphabets,
    forests: &[Vec<Forest>],
    max: usize,
) -> CheckReport {
    run_check("freeness-algebra-morphism", |c| {
        // Ψ*(u·v) = Ψ*(u)·Ψ*(v).
        let lams = [lambda2(rat_int(5), rat_int(7)), lambda2(rat(2, 3), rat_int(-5))];
        for l in &lams {
            let ra = RestrictedAlphabet::new(a.d(), a.t(), TypeId(0), max)?;
            for nx in 1..=max {
                for ny in 1..=max {
                    if nx + ny > max {
                        continue;
                    }
                    for x in &forests[nx] {
                        let ix = psi_star(x, l, &ra)?;
                        for y in &forests[ny] {
                            c.case();
                            let lhs = psi_star(&x.product(y), l, &ra)?;
                            let rhs = forest_mul(&ix, &psi_star(y, l, &ra)?);
                            if lhs != rhs {
                                return c.fail(format!(
                                    "dual freeness morphism is not multiplicative at \
                                     x={}, y={} with {}",
                                    show_forest(x, a),
                                    show_forest(y, a),
                                    show_lambda(l, a),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_psi_star_coalgebra(
    a: &Alphabets,
    trees: &[Vec<Tree>],
    max: usize,
) -> CheckReport {
    run_check("freeness-coalgebra-morphism", |c| {
        // Δ_{unit(t0)} ∘ Ψ* = (Ψ* ⊗ Ψ*) ∘ Δ_λ.
        let lams = [lambda2(rat_int(5), rat_int(7)), lambda2(rat(2, 3), rat_int(-5))];
        let unit = Lambda::unit(TypeId(0));
        for l in &lams {
            let ra = RestrictedAlphabet::new(a.d(), a.t(), TypeId(0), max)?;
            for n in 1..=max {
                for tree in &trees[n] {
                    c.case();
                    let rhs = psi_star_tensor(
                        &ck_coproduct_tree(tree, l, CkAlgorithm::Cuts),
                        l,
                        &ra,
                    )?;
                    let img = psi_star(&Forest::single(tree.clone()), l, &ra)?;
                    let mut lhs = LinComb::zero();
                    for (g, cc) in img.iter() {
                        lhs = lhs.combine(cc, &ck_coproduct(g, &unit, CkAlgorithm::Cuts));
                    }
                    if lhs != rhs {
                        return c.fail(format!(
                            "dual freeness morphism does not transport the cut coproduct \
                             at {} with {}",
                            show_tree(tree, a),
                            show_lambda(l, a),
                        ));
                    }
                }
            }
        }
        Ok(())
    })
}

fn check_psi_graded_invertibility(max: usize) -> CheckReport {
    run_check("freeness-graded-invertibility", |c| {
        // With λ_{t0} ≠ 0 the weight-n matrix of the dual freeness morphism
        // is square and of full rank.
        let l = lambda2(rat_int(5), rat_int(7));
        for n in 1..=max {
            c.case();
            let ra = RestrictedAlphabet::new(1, 2, TypeId(0), n)?;
            let domain = generate_forests(1, 2, n);
            let codomain = generate_forests_weighted(ra.weights(), 1, n);
            if domain.len() != codomain.len() {
                return c.fail(format!(
                    "graded dimensions differ at weight {n}: {} typed forests vs {} \
                     decorated forests",
                    domain.len(),
                    codomain.len(),
                ));
            }
            let index: BTreeMap<&Forest, usize> =
                codomain.iter().enumerate().map(|(i, f)| (f, i)).collect();
            let mut cols = Vec::new();
            for v in &domain {
                let mut col = vec![Rat::zero(); codomain.len()];
                for (g, cc) in psi_star(v, &l, &ra)?.iter() {
                    let slot = index.get(g).ok_or_else(|| {
                        Error::constraint("image outside the graded decorated basis")
                    })?;
                    col[*slot] = cc.clone();
                }
                cols.push(col);
            }
            let r = rank(&cols);
            if r != domain.len() {
                return c.fail(format!(
                    "rank {} < dimension {} at weight {n}",
                    r,
                    domain.len(),
                ));
            }
        }
        Ok(())
    })
}

fn check_psi_kernel_witness(max: usize) -> CheckReport {
    run_check("freeness-kernel-witness", |c| {
        // With λ vanishing on the distinguished type, the ladder built from
        // that type is annihilated and the weight-2 matrix drops rank.
        let dead = lambda2(rat_int(0), rat_int(7));
        let top = max.max(2).min(3);
        let ra = RestrictedAlphabet::new(1, 2, TypeId(0), top)?;
        c.case();
        let ladder = Tree::new(DecId(0), vec![(TypeId(0), Tree::leaf(DecId(0)))]);
        if !psi_star(&Forest::single(ladder), &dead, &ra)?.is_zero() {
            return c.fail("distinguished-type ladder was not annihilated".into());
        }
        c.case();
        let domain = generate_forests(1, 2, 2);
        let codomain = generate_forests_weighted(ra.weights(), 1, 2);
        let index: BTreeMap<&Forest, usize> =
            codomain.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut cols = Vec::new();
        for v in &domain {
            let mut col = vec![Rat::zero(); codomain.len()];
            for (g, cc) in psi_star(v, &dead, &ra)?.iter() {
                if let Some(slot) = index.get(g) {
                    col[*slot] = cc.clone();
                }
            }
            cols.push(col);
        }
        if rank(&cols) >= domain.len() {
            return c.fail(format!(
                "weight-2 matrix kept full rank {} despite the vanishing weight",
                domain.len(),
            ));
        }
        Ok(())
    })
}

fn check_change_of_weights() -> CheckReport {
    run_check("change-of-weights", |c| {
        // Pinned examples.
        c.case();
        let e0 = lambda2(rat_int(1), rat_int(0));
        let m = change_matrix(&e0, &e0, 2, ChangeMode::Transport)?;
        if m != TypeMatrix::identity(2) {
            return c.fail("equal weight vectors should give the identity".into());
        }
        c.case();
        let e1 = lambda2(rat_int(0), rat_int(1));
        let m = change_matrix(&e0, &e1, 2, ChangeMode::Transport)?;
        if m != int_matrix2(0, 1, 1, 0) {
            return c.fail("swapped unit vectors should give the transposition".into());
        }
        // Random transports.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for t_count in [2usize, 3] {
            for _ in 0..6 {
                let l = rand_lambda(&mut rng, t_count);
                let mu = rand_lambda(&mut rng, t_count);
                c.case();
                let m = change_matrix(&l, &mu, t_count, ChangeMode::Transport)?;
                if !m.is_invertible() {
                    return c.fail(format!(
                        "transport matrix is singular for {l:?} -> {mu:?}"
                    ));
                }
                if m.transpose_apply(&l)? != mu {
                    return c.fail(format!(
                        "transpose action misses the target for {l:?} -> {mu:?}"
                    ));
                }
            }
            // Unit normalization: λ the unit vector at t0 and λ·μ = 1.
            for t0 in 0..t_count {
                let t0id = TypeId(t0 as u32);
                let l = Lambda::unit(t0id);
                let mut pairs = vec![(t0id, rat_int(1))];
                for j in 0..t_count {
                    if j != t0 {
                        pairs.push((TypeId(j as u32), rand_rat(&mut rng)));
                    }
                }
                let mu = Lambda::from_pairs(pairs);
                c.case();
                let m = change_matrix(&l, &mu, t_count, ChangeMode::UnitAt(t0id))?;
                if !m.is_invertible()
                    || m.apply(&l)? != l
                    || m.transpose_apply(&mu)? != l
                {
                    return c.fail(format!(
                        "unit normalization fails for mu={mu:?} at type {t0}"
                    ));
                }
            }
        }
        Ok(())
    })
}
