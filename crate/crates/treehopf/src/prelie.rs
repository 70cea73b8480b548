//! Grafting products on trees, the branch-removal coproducts, the
//! simultaneous grafting action of words on forests, and the universal
//! morphism out of the free structure.
//!
//! For each edge type `t`, `x •_t y` grafts `y` onto every vertex of `x`
//! with a new edge of type `t`; together these form a multiple pre-Lie
//! family, and `•_λ = Σ λ_t •_t`. The coproduct `ρ_t` removes one root
//! branch of type `t`. A [`DeltaWord`] is a multiset of typed trees
//! `(T_1,t_1)…(T_k,t_k)`; its action on a forest grafts every factor onto
//! a vertex of the *original* forest, summing over all assignments, which
//! reproduces the iterated-product recursion without sign bookkeeping.

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Lambda, LinComb};
use crate::trees::{DecId, Forest, Tree, TypeId, VertexAddr};
use std::collections::BTreeMap;

/// Graft `s` onto the vertex of `t` at `addr`, creating an edge of type
/// `ty`; the result is re-canonicalized.
pub fn graft_at(t: &Tree, addr: &[u32], s: &Tree, ty: TypeId) -> Result<Tree> {
    if addr.is_empty() {
        let mut children = t.children().to_vec();
        children.push((ty, s.clone()));
        return Ok(Tree::new(t.dec(), children));
    }
    let i = addr[0] as usize;
    if i >= t.children().len() {
        return Err(Error::Address(crate::trees::format_addr(addr)));
    }
    let mut children = t.children().to_vec();
    children[i].1 = graft_at(&children[i].1, &addr[1..], s, ty)?;
    Ok(Tree::new(t.dec(), children))
}

/// `x •_t y` on basis trees: graft `y` onto each vertex of `x`.
pub fn prelie_tree_product(x: &Tree, t: TypeId, y: &Tree) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for addr in x.vertices() {
        let g = graft_at(x, &addr, y, t).expect("enumerated address is valid");
        out.add_term(g, rat_int(1));
    }
    out
}

/// `x •_λ y` on basis trees.
pub fn prelie_tree_product_lambda(x: &Tree, lambda: &Lambda, y: &Tree) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for (t, c) in lambda.support() {
        out = out.combine(c, &prelie_tree_product(x, t, y));
    }
    out
}

/// Bilinear extension of `•_t`.
pub fn prelie_product(x: &LinComb<Tree>, y: &LinComb<Tree>, t: TypeId) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out = out.combine(&(ca.clone() * cb.clone()), &prelie_tree_product(a, t, b));
        }
    }
    out
}

/// Bilinear extension of `•_λ`.
pub fn prelie_product_lambda(
    x: &LinComb<Tree>,
    y: &LinComb<Tree>,
    lambda: &Lambda,
) -> LinComb<Tree> {
    let mut out = LinComb::zero();
    for (t, c) in lambda.support() {
        out = out.combine(c, &prelie_product(x, y, t));
    }
    out
}

/// Multiset of typed tree factors `(T_1,t_1)…(T_k,t_k)`, kept sorted;
/// the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DeltaWord {
    factors: Vec<(Tree, TypeId)>,
}

impl DeltaWord {
    pub fn empty() -> Self {
        DeltaWord {
            factors: Vec::new(),
        }
    }

    pub fn new(mut factors: Vec<(Tree, TypeId)>) -> Self {
        factors.sort();
        DeltaWord { factors }
    }

    pub fn factors(&self) -> &[(Tree, TypeId)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Graft the word's trees onto a common root decorated `d`, branch `i`
/// carrying the word's type `t_i`.
pub fn b_plus(d: DecId, w: &DeltaWord) -> Tree {
    Tree::new(
        d,
        w.factors()
            .iter()
            .map(|(tree, ty)| (*ty, tree.clone()))
            .collect(),
    )
}

/// Inverse of [`b_plus`]: split a tree into its root decoration and the
/// word of root branches.
pub fn as_b_plus(t: &Tree) -> (DecId, DeltaWord) {
    let factors = t
        .children()
        .iter()
        .map(|(ty, c)| (c.clone(), *ty))
        .collect();
    (t.dec(), DeltaWord::new(factors))
}

/// One term of a branch-removal coproduct: remaining tree ⊗ removed
/// branch with its edge type.
pub type NapTerm = (Tree, (Tree, TypeId));

/// `ρ_t` on a basis tree: remove one root branch of type `t` at a time.
pub fn nap_tree(x: &Tree, t: TypeId) -> LinComb<NapTerm> {
    let mut out = LinComb::zero();
    for (j, (ty, branch)) in x.children().iter().enumerate() {
        if *ty != t {
            continue;
        }
        let mut rest = x.children().to_vec();
        rest.remove(j);
        out.add_term(
            (Tree::new(x.dec(), rest), (branch.clone(), *ty)),
            rat_int(1),
        );
    }
    out
}

/// Linear extension of `ρ_t`.
pub fn nap_coproduct(x: &LinComb<Tree>, t: TypeId) -> LinComb<NapTerm> {
    x.map(|tree| nap_tree(tree, t))
}

/// `ρ_μ = Σ μ_t ρ_t`.
pub fn nap_coproduct_mu(x: &LinComb<Tree>, mu: &Lambda) -> LinComb<NapTerm> {
    let mut out = LinComb::zero();
    for (t, c) in mu.support() {
        out = out.combine(c, &nap_coproduct(x, t));
    }
    out
}

/// Regraft the removed branch at the root with type `t0`; on `ρ_{t0}`
/// output this acts as (number of root edges of type `t0`) × identity.
pub fn upsilon(x: &LinComb<NapTerm>, t0: TypeId) -> LinComb<Tree> {
    x.map(|(left, (branch, _))| {
        LinComb::single(graft_at(left, &[], branch, t0).expect("root address"))
    })
}

/// Grafts accumulated per target vertex address.
type GraftPlan = BTreeMap<VertexAddr, Vec<(TypeId, Tree)>>;

fn graft_many(t: &Tree, prefix: &mut VertexAddr, plan: &GraftPlan) -> Tree {
    let mut children: Vec<(TypeId, Tree)> = Vec::new();
    for (i, (ty, c)) in t.children().iter().enumerate() {
        prefix.push(i as u32);
        children.push((*ty, graft_many(c, prefix, plan)));
        prefix.pop();
    }
    if let Some(extra) = plan.get(prefix.as_slice()) {
        children.extend(extra.iter().cloned());
    }
    Tree::new(t.dec(), children)
}

/// Closed-form word action: graft every factor of `w` onto some vertex
/// of the original `f`, summing over all assignments.
pub fn forest_graft_word(f: &Forest, w: &DeltaWord) -> LinComb<Forest> {
    let verts = f.vertices();
    let k = w.len();
    if k == 0 {
        return LinComb::single(f.clone());
    }
    if verts.is_empty() {
        // The unit forest annihilates nonempty words.
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    let mut assignment = vec![0usize; k];
    loop {
        // One plan per tree factor of f.
        let mut plans: BTreeMap<usize, GraftPlan> = BTreeMap::new();
        for (i, (tree, ty)) in w.factors().iter().enumerate() {
            let (which, ref addr) = verts[assignment[i]];
            plans
                .entry(which)
                .or_default()
                .entry(addr.clone())
                .or_default()
                .push((*ty, tree.clone()));
        }
        let empty = GraftPlan::new();
        let trees: Vec<Tree> = f
            .trees()
            .iter()
            .enumerate()
            .map(|(i, t)| graft_many(t, &mut Vec::new(), plans.get(&i).unwrap_or(&empty)))
            .collect();
        out.add_term(Forest::new(trees), rat_int(1));

        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < verts.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Bilinear extension of the word action to combinations.
pub fn guin_oudom_action(
    f: &LinComb<Forest>,
    w: &LinComb<DeltaWord>,
) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (forest, cf) in f.iter() {
        for (word, cw) in w.iter() {
            out = out.combine(&(cf.clone() * cw.clone()), &forest_graft_word(forest, word));
        }
    }
    out
}

/// λ-weighted action of a plain forest `g`: sum over all type choices for
/// the factors of `g`, weighting each factor's edge by λ.
pub fn forest_graft_lambda(f: &Forest, g: &Forest, lambda: &Lambda) -> LinComb<Forest> {
    // Build the weighted combination of words Π (T_i δ_{t_i}) over choices
    // t_i ∈ supp(λ), then act.
    let mut words: LinComb<DeltaWord> = LinComb::single(DeltaWord::empty());
    for tree in g.trees() {
        let mut next = LinComb::zero();
        for (word, c) in words.iter() {
            for (t, lt) in lambda.support() {
                let mut factors = word.factors().to_vec();
                factors.push((tree.clone(), t));
                next.add_term(DeltaWord::new(factors), c.clone() * lt.clone());
            }
        }
        words = next;
    }
    guin_oudom_action(&LinComb::single(f.clone()), &words)
}

/// Bilinear extension of [`forest_graft_lambda`].
pub fn guin_oudom_action_lambda(
    f: &LinComb<Forest>,
    g: &LinComb<Forest>,
    lambda: &Lambda,
) -> LinComb<Forest> {
    let mut out = LinComb::zero();
    for (a, ca) in f.iter() {
        for (b, cb) in g.iter() {
            out = out.combine(&(ca.clone() * cb.clone()), &forest_graft_lambda(a, b, lambda));
        }
    }
    out
}

/// An evaluation context carrying the products `•_t` of some multiple
/// pre-Lie algebra, with elements of type `Elem`.
pub trait PreLieTarget {
    type Elem: Clone + Ord;
    fn product(&self, x: &Self::Elem, t: TypeId, y: &Self::Elem) -> LinComb<Self::Elem>;
}

/// The tree algebra itself under `•_t`.
pub struct TreeTarget;

impl PreLieTarget for TreeTarget {
    type Elem = Tree;
    fn product(&self, x: &Tree, t: TypeId, y: &Tree) -> LinComb<Tree> {
        prelie_tree_product(x, t, y)
    }
}

/// The tree algebra under `•_λ`, ignoring the incoming type: used when a
/// single-type source maps into a λ-weighted target.
pub struct LambdaTreeTarget<'a> {
    pub lambda: &'a Lambda,
}

impl PreLieTarget for LambdaTreeTarget<'_> {
    type Elem = Tree;
    fn product(&self, x: &Tree, _t: TypeId, y: &Tree) -> LinComb<Tree> {
        prelie_tree_product_lambda(x, self.lambda, y)
    }
}

/// Bilinear extension of a target's product.
pub fn target_product<C: PreLieTarget>(
    target: &C,
    x: &LinComb<C::Elem>,
    t: TypeId,
    y: &LinComb<C::Elem>,
) -> LinComb<C::Elem> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out = out.combine(&(ca.clone() * cb.clone()), &target.product(a, t, b));
        }
    }
    out
}

/// Act with a word of target elements on a single target element, using
/// only the `•_t` products: `u • 1 = u` and
/// `u • w(xδ_t) = (u • w) •_t x − u • (w •_t x)`.
pub fn elem_action<C: PreLieTarget>(
    target: &C,
    base: &LinComb<C::Elem>,
    word: &[(LinComb<C::Elem>, TypeId)],
) -> LinComb<C::Elem> {
    match word.split_last() {
        None => base.clone(),
        Some(((x, t), rest)) => {
            let first = target_product(target, &elem_action(target, base, rest), *t, x);
            let mut correction = LinComb::zero();
            for i in 0..rest.len() {
                let mut modified = rest.to_vec();
                modified[i].0 = target_product(target, &rest[i].0, *t, x);
                correction = &correction + &elem_action(target, base, &modified);
            }
            &first - &correction
        }
    }
}

/// The unique multiple pre-Lie morphism out of the tree algebra sending
/// the single vertex `•d` to `images[d]`, evaluated on `x`: on a tree
/// with root `d` and branches `(T_i, t_i)`, it is the image of `d` acted
/// on by the word of branch images.
pub fn universal_morphism<C: PreLieTarget>(
    x: &LinComb<Tree>,
    images: &BTreeMap<DecId, LinComb<C::Elem>>,
    target: &C,
) -> Result<LinComb<C::Elem>> {
    let mut memo: BTreeMap<Tree, LinComb<C::Elem>> = BTreeMap::new();
    fn phi<C: PreLieTarget>(
        t: &Tree,
        images: &BTreeMap<DecId, LinComb<C::Elem>>,
        target: &C,
        memo: &mut BTreeMap<Tree, LinComb<C::Elem>>,
    ) -> Result<LinComb<C::Elem>> {
        if let Some(v) = memo.get(t) {
            return Ok(v.clone());
        }
        let (d, w) = as_b_plus(t);
        let base = images.get(&d).ok_or_else(|| {
            Error::Constraint(format!("no image provided for decoration {}", d.0))
        })?;
        let mut word = Vec::new();
        for (branch, ty) in w.factors() {
            word.push((phi(branch, images, target, memo)?, *ty));
        }
        let out = elem_action(target, base, &word);
        memo.insert(t.clone(), out.clone());
        Ok(out)
    }
    let mut out = LinComb::zero();
    for (tree, c) in x.iter() {
        out = out.combine(c, &phi(tree, images, target, &mut memo)?);
    }
    Ok(out)
}
