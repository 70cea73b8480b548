//! The dual Hopf-algebra pair on typed decorated forests.
//!
//! One side carries the grafting product `⋆_λ` (Grossman–Larson style) with
//! the unshuffle coproduct; the other carries the commutative forest product
//! with the cut coproduct `Δ^{CK_λ}` (Connes–Kreimer style) and its antipode.
//! The two are dual through the symmetry-factor pairing. A third coproduct,
//! the contraction coproduct `δ`, extracts connected blocks and contracts
//! them; it cointeracts with the cut coproduct.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{LinComb, Lambda, Rat};
use crate::prelie::{as_b_plus, forest_graft_lambda};
use crate::trees::{
    admissible_cuts, connected_partitions, forest_from_parents, symmetry_factor, DecId,
    DecorationAlphabet, Forest, Tree, TypeId,
};
use num::{One, Zero};

/// Ordered pair of tensor factors.
///
/// Term order compares the right factor first, then the left; this fixes the
/// printed order of coproduct expansions (terms with small right factors,
/// such as `… ⊗ 1`, come first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2<B> {
    pub left: B,
    pub right: B,
}

impl<B> Tensor2<B> {
    pub fn new(left: B, right: B) -> Self {
        Tensor2 { left, right }
    }
}

impl<B: Ord> Ord for Tensor2<B> {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.right, &self.left).cmp(&(&other.right, &other.left))
    }
}

impl<B: Ord> PartialOrd for Tensor2<B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered triple of tensor factors; used for coassociativity checks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tensor3<B> {
    pub left: B,
    pub mid: B,
    pub right: B,
}

impl<B> Tensor3<B> {
    pub fn new(left: B, mid: B, right: B) -> Self {
        Tensor3 { left, mid, right }
    }
}

/// Tensor product of two combinations.
pub fn tensor_pair<B: Ord + Clone>(x: &LinComb<B>, y: &LinComb<B>) -> LinComb<Tensor2<B>> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(Tensor2::new(a.clone(), b.clone()), ca * cb);
        }
    }
    out
}

/// Bilinear extension of the commutative forest product.
pub fn forest_mul(x: &LinComb<Forest>, y: &LinComb<Forest>) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(a.product(b), ca * cb);
        }
    }
    out
}

/// Componentwise product of tensors of forests:
/// `(a⊗b)(c⊗d) = ac⊗bd`, extended bilinearly.
pub fn tensor_mul(
    x: &LinComb<Tensor2<Forest>>,
    y: &LinComb<Tensor2<Forest>>,
) -> LinComb<Tensor2<Forest>> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(
                Tensor2::new(a.left.product(&b.left), a.right.product(&b.right)),
                ca * cb,
            );
        }
    }
    out
}

/// Unshuffle coproduct: sum over all splittings of the factor multiset,
/// `Δ(T_1…T_n) = Σ_{I⊆[n]} Π_{i∈I}T_i ⊗ Π_{i∉I}T_i`.
pub fn unshuffle_coproduct(f: &Forest) -> LinComb<Tensor2<Forest>> {
    let ts = f.trees();
    let n = ts.len();
    debug_assert!(n < 30, "unshuffle enumeration is for desk-size forests");
    let mut out = LinComb::zero();
    for mask in 0u64..(1u64 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(t.clone());
            } else {
                right.push(t.clone());
            }
        }
        out.add_term(
            Tensor2::new(Forest::new(left), Forest::new(right)),
            Rat::one(),
        );
    }
    out
}

/// Grafting product of two basis forests:
/// `F ⋆_λ T_1…T_n = Σ_{I⊆[n]} (F •_λ Π_{i∈I}T_i) · Π_{i∉I}T_i`,
/// where `•_λ` is the iterated-grafting action on the left factor's vertices.
pub fn gl_product_forests(f: &Forest, g: &Forest, lambda: &Lambda) -> LinComb<Forest> {
    let ts = g.trees();
    let n = ts.len();
    debug_assert!(n < 30, "subset enumeration is for desk-size forests");
    let mut out = LinComb::zero();
    for mask in 0u64..(1u64 << n) {
        let mut grafted = Vec::new();
        let mut kept = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                grafted.push(t.clone());
            } else {
                kept.push(t.clone());
            }
        }
        let kept = Forest::new(kept);
        let acted = forest_graft_lambda(f, &Forest::new(grafted), lambda);
        for (h, c) in acted.iter() {
            out.add_term(h.product(&kept), c.clone());
        }
    }
    out
}

/// Bilinear extension of [`gl_product_forests`]. Associative and unital, with
/// the empty forest as unit.
pub fn gl_product(
    x: &LinComb<Forest>,
    y: &LinComb<Forest>,
    lambda: &Lambda,
) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out = out.combine(&(ca * cb), &gl_product_forests(a, b, lambda));
        }
    }
    out
}

/// Which of the two independent routes computes the cut coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CkAlgorithm {
    /// Direct enumeration of admissible cuts:
    /// `Δ(T) = T⊗1 + 1⊗T + Σ_c (Πλ_{type(e)}) R^c⊗P^c`.
    Cuts,
    /// Root recursion: with `T = B_d(T_1δ_{t_1}…T_kδ_{t_k})` and
    /// `Δ̄(T) = Δ(T) − 1⊗T`,
    /// `Δ̄(T) = (B_d⊗Id)(Π_i (Δ̄(T_i)δ_{t_i}⊗1 + λ_{t_i}·1⊗T_i))`.
    Recursive,
}

/// Cut coproduct of a single tree.
pub fn ck_coproduct_tree(t: &Tree, lambda: &Lambda, algo: CkAlgorithm) -> LinComb<Tensor2<Forest>> {
    match algo {
        CkAlgorithm::Cuts => {
            let mut out = LinComb::zero();
            out.add_term(
                Tensor2::new(Forest::single(t.clone()), Forest::empty()),
                Rat::one(),
            );
            out.add_term(
                Tensor2::new(Forest::empty(), Forest::single(t.clone())),
                Rat::one(),
            );
            for cut in admissible_cuts(t) {
                let mut c = Rat::one();
                for ty in &cut.edge_types {
                    c *= lambda.get(*ty);
                }
                if c.is_zero() {
                    continue;
                }
                out.add_term(Tensor2::new(Forest::single(cut.root_part), cut.pruned), c);
            }
            out
        }
        CkAlgorithm::Recursive => {
            let mut memo = BTreeMap::new();
            let mut out = ck_reduced_recursive(t, lambda, &mut memo);
            out.add_term(
                Tensor2::new(Forest::empty(), Forest::single(t.clone())),
                Rat::one(),
            );
            out
        }
    }
}

/// `Δ̄(T) = Δ(T) − 1⊗T` by root recursion. Every left factor is a single
/// tree, so the recursion can regraft left factors under a new root.
fn ck_reduced_recursive(
    t: &Tree,
    lambda: &Lambda,
    memo: &mut BTreeMap<Tree, LinComb<Tensor2<Forest>>>,
) -> LinComb<Tensor2<Forest>> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let (d, word) = as_b_plus(t);
    // Accumulator keys: (children kept under the root so far, forest already
    // cut away).
    let mut acc: LinComb<(Vec<(TypeId, Tree)>, Forest)> =
        LinComb::single((Vec::new(), Forest::empty()));
    for (sub, ty) in word.factors() {
        let split = ck_reduced_recursive(sub, lambda, memo);
        let lam = lambda.get(*ty);
        let mut next = LinComb::zero();
        for ((kids, away), c) in acc.iter() {
            // Keep a (possibly pruned) piece of this branch under the root.
            for (pair, cs) in split.iter() {
                debug_assert_eq!(pair.left.len(), 1);
                let mut kids2 = kids.clone();
                kids2.push((*ty, pair.left.trees()[0].clone()));
                next.add_term((kids2, away.product(&pair.right)), c * cs);
            }
            // Cut the whole branch at its root edge.
            if !lam.is_zero() {
                next.add_term(
                    (kids.clone(), away.product(&Forest::single(sub.clone()))),
                    c * &lam,
                );
            }
        }
        acc = next;
    }
    let out = acc.map_basis(|(kids, away)| {
        Tensor2::new(Forest::single(Tree::new(d, kids.clone())), away.clone())
    });
    memo.insert(t.clone(), out.clone());
    out
}

/// Cut coproduct of a forest, computed factor-wise and multiplied
/// componentwise (the coproduct is an algebra morphism).
pub fn ck_coproduct(f: &Forest, lambda: &Lambda, algo: CkAlgorithm) -> LinComb<Tensor2<Forest>> {
    let mut out = LinComb::single(Tensor2::new(Forest::empty(), Forest::empty()));
    for t in f.trees() {
        out = tensor_mul(&out, &ck_coproduct_tree(t, lambda, algo));
    }
    out
}

/// Linear extension of [`ck_coproduct`].
pub fn ck_coproduct_lin(
    x: &LinComb<Forest>,
    lambda: &Lambda,
    algo: CkAlgorithm,
) -> LinComb<Tensor2<Forest>> {
    x.map(|f| ck_coproduct(f, lambda, algo))
}

/// Counit of both coproducts: the coefficient of the empty forest.
pub fn counit(x: &LinComb<Forest>) -> Rat {
    x.coeff(&Forest::empty())
}

/// Antipode of the cut coproduct's Hopf algebra, by the graded recursion
/// `S(T) = −T − Σ_c (Πλ) S(R^c)·P^c` on trees, extended multiplicatively.
pub fn antipode(x: &LinComb<Forest>, lambda: &Lambda) -> LinComb<Forest> {
    let mut memo: BTreeMap<Tree, LinComb<Forest>> = BTreeMap::new();
    x.map(|f| antipode_forest(f, lambda, &mut memo))
}

fn antipode_forest(
    f: &Forest,
    lambda: &Lambda,
    memo: &mut BTreeMap<Tree, LinComb<Forest>>,
) -> LinComb<Forest> {
    let mut out = LinComb::single(Forest::empty());
    for t in f.trees() {
        let st = antipode_tree(t, lambda, memo);
        out = forest_mul(&out, &st);
    }
    out
}

fn antipode_tree(
    t: &Tree,
    lambda: &Lambda,
    memo: &mut BTreeMap<Tree, LinComb<Forest>>,
) -> LinComb<Forest> {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let mut out = LinComb::term(Forest::single(t.clone()), -Rat::one());
    for cut in admissible_cuts(t) {
        let mut c = Rat::one();
        for ty in &cut.edge_types {
            c *= lambda.get(*ty);
        }
        if c.is_zero() {
            continue;
        }
        let sr = antipode_tree(&cut.root_part, lambda, memo);
        out = out.combine(&-c, &sr.map_basis(|h| h.product(&cut.pruned)));
    }
    memo.insert(t.clone(), out.clone());
    out
}

/// Symmetry-factor pairing: `⟨F,F′⟩ = δ_{F,F′}·s_F` on basis forests,
/// extended bilinearly. It is the duality between the grafting product and
/// the cut coproduct.
pub fn pairing(x: &LinComb<Forest>, y: &LinComb<Forest>) -> Rat {
    let mut s = Rat::zero();
    for (f, c) in x.iter() {
        let cy = y.coeff(f);
        if !cy.is_zero() {
            s += c * cy * Rat::from_integer(symmetry_factor(f));
        }
    }
    s
}

/// Pairing of a tensor against a tensor combination, factorwise:
/// `⟨x⊗y, Σ F′⊗F″⟩ = Σ ⟨x,F′⟩⟨y,F″⟩`.
pub fn pairing_tensor(
    x: &LinComb<Forest>,
    y: &LinComb<Forest>,
    t: &LinComb<Tensor2<Forest>>,
) -> Rat {
    let mut s = Rat::zero();
    for (pair, c) in t.iter() {
        let cl = x.coeff(&pair.left);
        if cl.is_zero() {
            continue;
        }
        let cr = y.coeff(&pair.right);
        if cr.is_zero() {
            continue;
        }
        s += c * cl
            * cr
            * Rat::from_integer(symmetry_factor(&pair.left))
            * Rat::from_integer(symmetry_factor(&pair.right));
    }
    s
}

/// Semigroup sum of all decorations in a tree, folded recursively.
pub fn block_sum(t: &Tree, decorations: &DecorationAlphabet) -> Result<DecId> {
    let mut s = t.dec();
    for (_, c) in t.children() {
        s = decorations.add(s, block_sum(c, decorations)?)?;
    }
    Ok(s)
}

/// Contraction coproduct in semigroup mode:
/// `δ(F) = Σ_{partitions into connected blocks} F/blocks ⊗ T_1…T_k`.
/// The contracted vertex takes the semigroup sum of its block's decorations;
/// surviving edges keep their types.
pub fn contraction_coproduct(
    f: &Forest,
    decorations: &DecorationAlphabet,
) -> Result<LinComb<Tensor2<Forest>>> {
    if !decorations.has_semigroup() {
        return Err(Error::MissingSemigroup);
    }
    let mut out = LinComb::zero();
    for p in connected_partitions(f) {
        let decs: Vec<DecId> = p
            .blocks
            .iter()
            .map(|b| block_sum(b, decorations))
            .collect::<Result<_>>()?;
        let skeleton = forest_from_parents(&decs, &p.parents);
        out.add_term(
            Tensor2::new(skeleton, Forest::new(p.blocks)),
            Rat::one(),
        );
    }
    Ok(out)
}

/// Linear extension of [`contraction_coproduct`].
pub fn contraction_coproduct_lin(
    x: &LinComb<Forest>,
    decorations: &DecorationAlphabet,
) -> Result<LinComb<Tensor2<Forest>>> {
    let mut out = LinComb::zero();
    for (f, c) in x.iter() {
        out = out.combine(c, &contraction_coproduct(f, decorations)?);
    }
    Ok(out)
}

/// Generator of the pair algebra used by the full contraction coproduct: a
/// tree together with an independent decoration tag.
pub type DecoratedPair = (Tree, DecId);

/// Commutative product of pair generators, as a sorted multiset.
pub type PairForest = Vec<DecoratedPair>;

/// Contraction coproduct in full mode, on a generator `(t, d)`:
/// `δ(T,d) = Σ_{partitions} Σ_{dec:[k]→D} ((T/blocks, dec), d) ⊗
/// (T_1,dec(1))…(T_k,dec(k))` — every re-decoration of the contracted
/// skeleton is emitted, paired with the blocks carrying their tags.
pub fn contraction_coproduct_full(
    t: &Tree,
    d: DecId,
    decorations: &DecorationAlphabet,
) -> Result<LinComb<Tensor2<PairForest>>> {
    decorations.name(d)?;
    let dcount = decorations.len() as u32;
    let mut out = LinComb::zero();
    for p in connected_partitions(&Forest::single(t.clone())) {
        let k = p.blocks.len();
        let mut choice = vec![0u32; k];
        loop {
            let decs: Vec<DecId> = choice.iter().map(|&i| DecId(i)).collect();
            let skeleton = forest_from_parents(&decs, &p.parents);
            debug_assert_eq!(skeleton.len(), 1);
            let left = vec![(skeleton.trees()[0].clone(), d)];
            let mut right: PairForest = p
                .blocks
                .iter()
                .cloned()
                .zip(decs.iter().cloned())
                .collect();
            right.sort();
            out.add_term(Tensor2::new(left, right), Rat::one());
            // Advance the mixed-radix re-decoration choice.
            let mut i = 0;
            while i < k && choice[i] + 1 == dcount {
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            choice[i] += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};
    use crate::text::{parse_forest, parse_lambda, parse_tree, render_forest};
    use crate::trees::{generate_forests, generate_trees, Alphabets, TypeAlphabet};

    fn alph() -> Alphabets {
        Alphabets::from_names(&["a", "b", "c", "d"], &["red", "green"]).unwrap()
    }

    /// Single decoration with the trivial semigroup; two edge types.
    fn mono() -> Alphabets {
        let dec = DecorationAlphabet::with_semigroup(vec!["a".into()], vec![vec![0]]).unwrap();
        let ty = TypeAlphabet::new(vec!["red".into(), "green".into()]).unwrap();
        Alphabets::new(dec, ty)
    }

    fn f(a: &Alphabets, s: &str) -> Forest {
        parse_forest(s, a).unwrap()
    }

    fn t(a: &Alphabets, s: &str) -> Tree {
        parse_tree(s, a).unwrap()
    }

    fn lf(a: &Alphabets, s: &str) -> LinComb<Forest> {
        LinComb::single(f(a, s))
    }

    fn lam(a: &Alphabets, s: &str) -> Lambda {
        parse_lambda(s, &a.types).unwrap()
    }

    fn t2f(a: &Alphabets, left: &str, right: &str) -> Tensor2<Forest> {
        Tensor2::new(f(a, left), f(a, right))
    }

    #[test]
    fn unshuffle_examples() {
        let a = alph();
        assert_eq!(
            unshuffle_coproduct(&Forest::empty()),
            LinComb::single(t2f(&a, "1", "1"))
        );
        assert_eq!(
            unshuffle_coproduct(&f(&a, "a")),
            LinComb::from_terms([
                (t2f(&a, "a", "1"), rat_int(1)),
                (t2f(&a, "1", "a"), rat_int(1)),
            ])
        );
        assert_eq!(
            unshuffle_coproduct(&f(&a, "a a")),
            LinComb::from_terms([
                (t2f(&a, "a a", "1"), rat_int(1)),
                (t2f(&a, "a", "a"), rat_int(2)),
                (t2f(&a, "1", "a a"), rat_int(1)),
            ])
        );
    }

    #[test]
    fn unshuffle_weights_total_splittings() {
        let a = alph();
        let d = unshuffle_coproduct(&f(&a, "a b a[red:b]"));
        let total: Rat = d.iter().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, rat_int(8));
    }

    #[test]
    fn gl_unit_laws() {
        let a = alph();
        let l = lam(&a, "red=2,green=3");
        for s in ["1", "a", "a[red:b]", "a b", "a[red:b,green:c] d"] {
            let x = lf(&a, s);
            let one = lf(&a, "1");
            assert_eq!(gl_product(&one, &x, &l), x);
            assert_eq!(gl_product(&x, &one, &l), x);
        }
    }

    #[test]
    fn gl_grafting_display() {
        // a[red:b] ⋆_λ c = (a[red:b])(c) + λ_red·a[red:b,red:c]
        //   + λ_red·a[red:b[red:c]] + λ_green·a[red:b,green:c]
        //   + λ_green·a[red:b[green:c]].
        let a = alph();
        let l = lam(&a, "red=2,green=3");
        let got = gl_product(&lf(&a, "a[red:b]"), &lf(&a, "c"), &l);
        let want = LinComb::from_terms([
            (f(&a, "a[red:b] c"), rat_int(1)),
            (f(&a, "a[red:b,red:c]"), rat_int(2)),
            (f(&a, "a[red:b[red:c]]"), rat_int(2)),
            (f(&a, "a[red:b,green:c]"), rat_int(3)),
            (f(&a, "a[red:b[green:c]]"), rat_int(3)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn gl_single_vertices() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        let got = gl_product(&lf(&a, "a"), &lf(&a, "b"), &l);
        let want = LinComb::from_terms([
            (f(&a, "a b"), rat_int(1)),
            (f(&a, "a[red:b]"), rat_int(5)),
            (f(&a, "a[green:b]"), rat_int(7)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn gl_associative_small() {
        let a = mono();
        let lambdas = [lam(&a, "red=1,green=1"), lam(&a, "red=1")];
        let mut forests = vec![Forest::empty()];
        for n in 1..=2 {
            forests.extend(generate_forests(1, 2, n));
        }
        for l in &lambdas {
            for x in &forests {
                for y in &forests {
                    for z in &forests {
                        if x.size() + y.size() + z.size() > 4 {
                            continue;
                        }
                        let (x, y, z) = (
                            LinComb::single(x.clone()),
                            LinComb::single(y.clone()),
                            LinComb::single(z.clone()),
                        );
                        let left = gl_product(&gl_product(&x, &y, l), &z, l);
                        let right = gl_product(&x, &gl_product(&y, &z, l), l);
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn gl_compatible_with_unshuffle() {
        // Δ(x ⋆ y) = Δ(x) ⋆ Δ(y), the product of tensors acting
        // componentwise.
        let a = mono();
        let l = lam(&a, "red=1,green=1");
        let mut forests = vec![Forest::empty()];
        for n in 1..=2 {
            forests.extend(generate_forests(1, 2, n));
        }
        for x in &forests {
            for y in &forests {
                if x.size() + y.size() > 3 {
                    continue;
                }
                let prod = gl_product(
                    &LinComb::single(x.clone()),
                    &LinComb::single(y.clone()),
                    &l,
                );
                let lhs = prod.map(|h| unshuffle_coproduct(h));
                let dx = unshuffle_coproduct(x);
                let dy = unshuffle_coproduct(y);
                let mut rhs = LinComb::zero();
                for (p, cp) in dx.iter() {
                    for (q, cq) in dy.iter() {
                        let lefts = gl_product(
                            &LinComb::single(p.left.clone()),
                            &LinComb::single(q.left.clone()),
                            &l,
                        );
                        let rights = gl_product(
                            &LinComb::single(p.right.clone()),
                            &LinComb::single(q.right.clone()),
                            &l,
                        );
                        rhs = rhs.combine(&(cp * cq), &tensor_pair(&lefts, &rights));
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ck_ladder_display() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        let want = LinComb::from_terms([
            (t2f(&a, "a[red:b]", "1"), rat_int(1)),
            (t2f(&a, "1", "a[red:b]"), rat_int(1)),
            (t2f(&a, "a", "b"), rat_int(5)),
        ]);
        for algo in [CkAlgorithm::Cuts, CkAlgorithm::Recursive] {
            assert_eq!(ck_coproduct(&f(&a, "a[red:b]"), &l, algo), want);
        }
    }

    #[test]
    fn ck_corolla_displays() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        let rr = LinComb::from_terms([
            (t2f(&a, "a[red:b,red:c]", "1"), rat_int(1)),
            (t2f(&a, "1", "a[red:b,red:c]"), rat_int(1)),
            (t2f(&a, "a[red:b]", "c"), rat_int(5)),
            (t2f(&a, "a[red:c]", "b"), rat_int(5)),
            (t2f(&a, "a", "b c"), rat_int(25)),
        ]);
        let rg = LinComb::from_terms([
            (t2f(&a, "a[green:c,red:b]", "1"), rat_int(1)),
            (t2f(&a, "1", "a[green:c,red:b]"), rat_int(1)),
            (t2f(&a, "a[red:b]", "c"), rat_int(7)),
            (t2f(&a, "a[green:c]", "b"), rat_int(5)),
            (t2f(&a, "a", "b c"), rat_int(35)),
        ]);
        for algo in [CkAlgorithm::Cuts, CkAlgorithm::Recursive] {
            assert_eq!(ck_coproduct(&f(&a, "a[red:b,red:c]"), &l, algo), rr);
            assert_eq!(ck_coproduct(&f(&a, "a[green:c,red:b]"), &l, algo), rg);
        }
    }

    #[test]
    fn ck_routes_agree() {
        let a = mono();
        let lambdas = [
            lam(&a, "red=1,green=1"),
            lam(&a, "red=1"),
            lam(&a, "red=2/3,green=-5"),
        ];
        for n in 1..=4 {
            for tree in generate_trees(1, 2, n) {
                let fo = Forest::single(tree);
                for l in &lambdas {
                    assert_eq!(
                        ck_coproduct(&fo, l, CkAlgorithm::Cuts),
                        ck_coproduct(&fo, l, CkAlgorithm::Recursive),
                        "routes disagree on {:?}",
                        render_forest(&fo, &a)
                    );
                }
            }
        }
        // Also on proper forests.
        for s in ["a a", "a a[red:a]", "a[green:a] a[red:a] a"] {
            let fo = f(&a, s);
            for l in &lambdas {
                assert_eq!(
                    ck_coproduct(&fo, l, CkAlgorithm::Cuts),
                    ck_coproduct(&fo, l, CkAlgorithm::Recursive)
                );
            }
        }
    }

    #[test]
    fn ck_multiplicative() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        for (x, y) in [("a[red:b]", "c"), ("a b", "a[green:a]"), ("1", "a[red:b]")] {
            let fx = f(&a, x);
            let fy = f(&a, y);
            let lhs = ck_coproduct(&fx.product(&fy), &l, CkAlgorithm::Cuts);
            let rhs = tensor_mul(
                &ck_coproduct(&fx, &l, CkAlgorithm::Cuts),
                &ck_coproduct(&fy, &l, CkAlgorithm::Cuts),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ck_coassociative_small() {
        let a = mono();
        let lambdas = [lam(&a, "red=1,green=1"), lam(&a, "red=2/3,green=-5")];
        let mut forests = vec![Forest::empty()];
        for n in 1..=3 {
            forests.extend(generate_forests(1, 2, n));
        }
        for l in &lambdas {
            for fo in &forests {
                let d = ck_coproduct(fo, l, CkAlgorithm::Cuts);
                let mut lhs = LinComb::zero();
                let mut rhs = LinComb::zero();
                for (pair, c) in d.iter() {
                    for (q, cq) in ck_coproduct(&pair.left, l, CkAlgorithm::Cuts).iter() {
                        lhs.add_term(
                            Tensor3::new(q.left.clone(), q.right.clone(), pair.right.clone()),
                            c * cq,
                        );
                    }
                    for (q, cq) in ck_coproduct(&pair.right, l, CkAlgorithm::Cuts).iter() {
                        rhs.add_term(
                            Tensor3::new(pair.left.clone(), q.left.clone(), q.right.clone()),
                            c * cq,
                        );
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn counit_axiom() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        assert_eq!(counit(&lf(&a, "1")), rat_int(1));
        assert_eq!(counit(&lf(&a, "a")), rat_int(0));
        // (ε⊗Id)∘Δ = Id.
        for s in ["1", "a", "a[red:b]", "a[red:b,green:c] d"] {
            let fo = f(&a, s);
            let d = ck_coproduct(&fo, &l, CkAlgorithm::Cuts);
            let mut back = LinComb::zero();
            for (pair, c) in d.iter() {
                if pair.left.is_empty() {
                    back.add_term(pair.right.clone(), c.clone());
                }
            }
            assert_eq!(back, LinComb::single(fo));
        }
    }

    #[test]
    fn antipode_examples() {
        let a = alph();
        let l = lam(&a, "red=5,green=7");
        assert_eq!(antipode(&lf(&a, "1"), &l), lf(&a, "1"));
        assert_eq!(antipode(&lf(&a, "a"), &l), -&lf(&a, "a"));
        assert_eq!(
            antipode(&lf(&a, "a[red:b]"), &l),
            LinComb::from_terms([
                (f(&a, "a[red:b]"), rat_int(-1)),
                (f(&a, "a b"), rat_int(5)),
            ])
        );
        // Multiplicative: S(x·y) = S(x)·S(y).
        let x = lf(&a, "a[red:b]");
        let y = lf(&a, "c");
        let prod = lf(&a, "a[red:b] c");
        assert_eq!(
            antipode(&prod, &l),
            forest_mul(&antipode(&x, &l), &antipode(&y, &l))
        );
    }

    #[test]
    fn antipode_axiom_small() {
        // m∘(S⊗Id)∘Δ = m∘(Id⊗S)∘Δ = η∘ε.
        let a = mono();
        let lambdas = [lam(&a, "red=1,green=1"), lam(&a, "red=1")];
        let mut forests = vec![Forest::empty()];
        for n in 1..=3 {
            forests.extend(generate_forests(1, 2, n));
        }
        for l in &lambdas {
            for fo in &forests {
                let d = ck_coproduct(fo, l, CkAlgorithm::Cuts);
                let mut via_left = LinComb::zero();
                let mut via_right = LinComb::zero();
                for (pair, c) in d.iter() {
                    let sl = antipode(&LinComb::single(pair.left.clone()), l);
                    via_left =
                        via_left.combine(c, &sl.map_basis(|h| h.product(&pair.right)));
                    let sr = antipode(&LinComb::single(pair.right.clone()), l);
                    via_right =
                        via_right.combine(c, &sr.map_basis(|h| pair.left.product(h)));
                }
                let want = if fo.is_empty() {
                    LinComb::single(Forest::empty())
                } else {
                    LinComb::zero()
                };
                assert_eq!(via_left, want);
                assert_eq!(via_right, want);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a = alph();
        assert_eq!(pairing(&lf(&a, "a"), &lf(&a, "a")), rat_int(1));
        assert_eq!(pairing(&lf(&a, "a a"), &lf(&a, "a a")), rat_int(2));
        assert_eq!(pairing(&lf(&a, "a[red:b]"), &lf(&a, "a[green:b]")), rat_int(0));
        assert_eq!(pairing(&lf(&a, "a b"), &lf(&a, "a b")), rat_int(1));
        // Bilinearity.
        let x = lf(&a, "a").scale(&rat_int(2));
        let y = lf(&a, "a").scale(&rat(3, 2));
        assert_eq!(pairing(&x, &y), rat_int(3));
        // Symmetry factor of a corolla with two equal branches.
        let c = lf(&a, "a[red:b,red:b]");
        assert_eq!(pairing(&c, &c), rat_int(2));
    }

    #[test]
    fn duality_small() {
        // ⟨x ⋆_λ y, z⟩ = ⟨x⊗y, Δ^{CK_λ}(z)⟩.
        let a = mono();
        let l = lam(&a, "red=2/3,green=-5");
        let mut forests = vec![Forest::empty()];
        for n in 1..=4 {
            forests.extend(generate_forests(1, 2, n));
        }
        for x in &forests {
            for y in &forests {
                if x.size() + y.size() > 4 {
                    continue;
                }
                let lx = LinComb::single(x.clone());
                let ly = LinComb::single(y.clone());
                let star = gl_product(&lx, &ly, &l);
                for z in &forests {
                    if z.size() != x.size() + y.size() {
                        continue;
                    }
                    let lhs = pairing(&star, &LinComb::single(z.clone()));
                    let rhs =
                        pairing_tensor(&lx, &ly, &ck_coproduct(z, &l, CkAlgorithm::Cuts));
                    assert_eq!(lhs, rhs, "duality fails at x={:?} y={:?} z={:?}", x, y, z);
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let a = mono();
        let dec = &a.decorations;
        // δ(•) = •⊗•.
        assert_eq!(
            contraction_coproduct(&f(&a, "a"), dec).unwrap(),
            LinComb::single(t2f(&a, "a", "a"))
        );
        // δ(red ladder) = ladder⊗•• + •⊗ladder.
        assert_eq!(
            contraction_coproduct(&f(&a, "a[red:a]"), dec).unwrap(),
            LinComb::from_terms([
                (t2f(&a, "a[red:a]", "a a"), rat_int(1)),
                (t2f(&a, "a", "a[red:a]"), rat_int(1)),
            ])
        );
        // δ(red-red corolla) = corolla⊗••• + 2·ladder⊗(ladder)(•) + •⊗corolla.
        assert_eq!(
            contraction_coproduct(&f(&a, "a[red:a,red:a]"), dec).unwrap(),
            LinComb::from_terms([
                (t2f(&a, "a[red:a,red:a]", "a a a"), rat_int(1)),
                (t2f(&a, "a[red:a]", "a a[red:a]"), rat_int(2)),
                (t2f(&a, "a", "a[red:a,red:a]"), rat_int(1)),
            ])
        );
    }

    #[test]
    fn contraction_mixed_corolla_keeps_isolated_vertex() {
        // Contracting one edge of the two-type corolla leaves a two-vertex
        // skeleton and a block product that still contains the isolated
        // third vertex.
        let a = mono();
        let got = contraction_coproduct(&f(&a, "a[green:a,red:a]"), &a.decorations).unwrap();
        let want = LinComb::from_terms([
            (t2f(&a, "a[green:a,red:a]", "a a a"), rat_int(1)),
            (t2f(&a, "a[green:a]", "a a[red:a]"), rat_int(1)),
            (t2f(&a, "a[red:a]", "a a[green:a]"), rat_int(1)),
            (t2f(&a, "a", "a[green:a,red:a]"), rat_int(1)),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn contraction_unit_and_errors() {
        let a = mono();
        assert_eq!(
            contraction_coproduct(&Forest::empty(), &a.decorations).unwrap(),
            LinComb::single(t2f(&a, "1", "1"))
        );
        let plain = alph();
        assert_eq!(
            contraction_coproduct(&f(&plain, "a"), &plain.decorations),
            Err(Error::MissingSemigroup)
        );
    }

    #[test]
    fn contraction_coassociative_and_multiplicative_small() {
        let a = mono();
        let dec = &a.decorations;
        let mut forests = vec![Forest::empty()];
        for n in 1..=3 {
            forests.extend(generate_forests(1, 2, n));
        }
        for fo in &forests {
            let d = contraction_coproduct(fo, dec).unwrap();
            let mut lhs = LinComb::zero();
            let mut rhs = LinComb::zero();
            for (pair, c) in d.iter() {
                for (q, cq) in contraction_coproduct(&pair.left, dec).unwrap().iter() {
                    lhs.add_term(
                        Tensor3::new(q.left.clone(), q.right.clone(), pair.right.clone()),
                        c * cq,
                    );
                }
                for (q, cq) in contraction_coproduct(&pair.right, dec).unwrap().iter() {
                    rhs.add_term(
                        Tensor3::new(pair.left.clone(), q.left.clone(), q.right.clone()),
                        c * cq,
                    );
                }
            }
            assert_eq!(lhs, rhs, "coassociativity fails on {:?}", fo);
        }
        for (x, y) in [("a", "a"), ("a[red:a]", "a"), ("a[red:a]", "a[green:a]")] {
            let fx = f(&a, x);
            let fy = f(&a, y);
            let lhs = contraction_coproduct(&fx.product(&fy), dec).unwrap();
            let rhs = tensor_mul(
                &contraction_coproduct(&fx, dec).unwrap(),
                &contraction_coproduct(&fy, dec).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cointeraction_small() {
        // (Δ^{CK_λ}⊗Id)∘δ = (apply δ to both Δ legs, multiply the right
        // factors), on trees.
        let a = mono();
        let dec = &a.decorations;
        let l = lam(&a, "red=1,green=1");
        for n in 1..=3 {
            for tree in generate_trees(1, 2, n) {
                let fo = Forest::single(tree);
                let mut lhs = LinComb::zero();
                for (pair, c) in contraction_coproduct(&fo, dec).unwrap().iter() {
                    for (q, cq) in ck_coproduct(&pair.left, &l, CkAlgorithm::Cuts).iter() {
                        lhs.add_term(
                            Tensor3::new(q.left.clone(), q.right.clone(), pair.right.clone()),
                            c * cq,
                        );
                    }
                }
                let mut rhs = LinComb::zero();
                for (pair, c) in ck_coproduct(&fo, &l, CkAlgorithm::Cuts).iter() {
                    let da = contraction_coproduct(&pair.left, dec).unwrap();
                    let db = contraction_coproduct(&pair.right, dec).unwrap();
                    for (p, cp) in da.iter() {
                        for (q, cq) in db.iter() {
                            rhs.add_term(
                                Tensor3::new(
                                    p.left.clone(),
                                    q.left.clone(),
                                    p.right.product(&q.right),
                                ),
                                c * cp * cq,
                            );
                        }
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn contraction_full_mode_ladder() {
        let a = alph();
        let aid = a.decorations.id("a").unwrap();
        let bid = a.decorations.id("b").unwrap();
        let tr = t(&a, "a[red:b]");
        let full = contraction_coproduct_full(&tr, aid, &a.decorations).unwrap();
        // Splitting into two singleton blocks re-decorates the two-vertex
        // skeleton in all 16 ways over {a,b,c,d}; contracting everything
        // re-decorates a single vertex in 4 ways. 16 + 4 terms.
        assert_eq!(full.len(), 20);
        // Spot-check one term of each shape.
        let skel = t(&a, "b[red:a]");
        assert_eq!(
            full.coeff(&Tensor2::new(
                vec![(skel, aid)],
                vec![(t(&a, "a"), bid), (t(&a, "b"), aid)],
            )),
            rat_int(1)
        );
        assert_eq!(
            full.coeff(&Tensor2::new(
                vec![(t(&a, "b"), aid)],
                vec![(t(&a, "a[red:b]"), bid)],
            )),
            rat_int(1)
        );
    }

    #[test]
    fn contraction_full_matches_semigroup_for_single_decoration() {
        let a = mono();
        let aid = DecId(0);
        for n in 1..=3 {
            for tree in generate_trees(1, 2, n) {
                let full = contraction_coproduct_full(&tree, aid, &a.decorations).unwrap();
                let projected: LinComb<Tensor2<Forest>> = full.map_basis(|pair| {
                    Tensor2::new(
                        Forest::new(pair.left.iter().map(|(t, _)| t.clone()).collect()),
                        Forest::new(pair.right.iter().map(|(t, _)| t.clone()).collect()),
                    )
                });
                let semi =
                    contraction_coproduct(&Forest::single(tree.clone()), &a.decorations)
                        .unwrap();
                assert_eq!(projected, semi);
            }
        }
    }

    #[test]
    fn contraction_full_projects_onto_semigroup_mode() {
        // Quotienting pairs (S, e) to S when e equals the semigroup sum of
        // S's decorations (and to zero otherwise) carries full mode onto
        // semigroup mode.
        let two = DecorationAlphabet::with_semigroup(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let ty = TypeAlphabet::new(vec!["red".into(), "green".into()]).unwrap();
        let a = Alphabets::new(two, ty);
        for s in ["a[red:b]", "b[red:a,green:b]", "a[red:b[green:a]]"] {
            let tr = t(&a, s);
            let total = block_sum(&tr, &a.decorations).unwrap();
            let full = contraction_coproduct_full(&tr, total, &a.decorations).unwrap();
            let mut projected: LinComb<Tensor2<Forest>> = LinComb::zero();
            'term: for (pair, c) in full.iter() {
                let mut sides = [Vec::new(), Vec::new()];
                for (i, half) in [&pair.left, &pair.right].into_iter().enumerate() {
                    for (tree, e) in half {
                        if block_sum(tree, &a.decorations).unwrap() != *e {
                            continue 'term;
                        }
                        sides[i].push(tree.clone());
                    }
                }
                let [l, r] = sides;
                projected.add_term(Tensor2::new(Forest::new(l), Forest::new(r)), c.clone());
            }
            let semi = contraction_coproduct(&Forest::single(tr), &a.decorations).unwrap();
            assert_eq!(projected, semi);
        }
    }

    #[test]
    fn tensor_terms_sort_by_right_factor_first() {
        let a = alph();
        let l = lam(&a, "red=1,green=1");
        let d = ck_coproduct(&f(&a, "a[red:b]"), &l, CkAlgorithm::Cuts);
        let keys: Vec<String> = d
            .iter()
            .map(|(pair, _)| {
                format!(
                    "{} | {}",
                    render_forest(&pair.left, &a).unwrap(),
                    render_forest(&pair.right, &a).unwrap()
                )
            })
            .collect();
        assert_eq!(keys, ["a[red:b] | 1", "1 | a[red:b]", "a | b"]);
    }
}
