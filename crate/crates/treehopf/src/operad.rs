//! Labeled typed trees under partial composition, and the dual
//! permutative products on words.
//!
//! A [`LabeledTree`] is a rooted tree whose vertices are distinct integer
//! labels and whose edges carry types; labels break all symmetry, so no
//! canonical form is needed beyond the sorted parent map. Partial
//! composition `t ∘_a s` replaces vertex `a` of `t` by the whole of `s`
//! and sums over every way of reattaching the branches that hung off `a`
//! onto vertices of `s`, keeping their edge types.
//!
//! [`PermWord`] models the basis of the free multiple permutative algebra:
//! a head generator together with a multiset of (generator, type) factors.

use crate::error::{Error, Result};
use crate::linalg::LinComb;
use crate::trees::{DecId, Tree, TypeId};
use num::bigint::BigInt;
use num::traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Rooted tree on distinct integer labels with typed edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabeledTree {
    root: u32,
    /// child label -> (parent label, edge type)
    parents: BTreeMap<u32, (u32, TypeId)>,
}

impl LabeledTree {
    /// Build from the root label and `(child, parent, type)` edges,
    /// validating that the data forms a tree on distinct labels.
    pub fn new(root: u32, edges: Vec<(u32, u32, TypeId)>) -> Result<Self> {
        let mut parents = BTreeMap::new();
        for (c, p, ty) in edges {
            if c == root {
                return Err(Error::Constraint(format!(
                    "root label {root} cannot have a parent"
                )));
            }
            if parents.insert(c, (p, ty)).is_some() {
                return Err(Error::LabelCollision(c));
            }
        }
        let t = LabeledTree { root, parents };
        let labels: BTreeSet<u32> = t.labels().into_iter().collect();
        for (&c, &(p, _)) in &t.parents {
            if !labels.contains(&p) {
                return Err(Error::UnknownLabel(p));
            }
            // Walk to the root; a cycle would loop forever, so bound the walk.
            let mut cur = c;
            for _ in 0..=t.parents.len() {
                if cur == t.root {
                    break;
                }
                match t.parents.get(&cur) {
                    Some(&(q, _)) => cur = q,
                    None => return Err(Error::UnknownLabel(cur)),
                }
            }
            if cur != t.root {
                return Err(Error::Constraint(format!(
                    "labels form a cycle through {c}"
                )));
            }
        }
        Ok(t)
    }

    /// The one-vertex tree.
    pub fn single(label: u32) -> Self {
        LabeledTree {
            root: label,
            parents: BTreeMap::new(),
        }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn size(&self) -> usize {
        self.parents.len() + 1
    }

    /// All labels, sorted ascending.
    pub fn labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.parents.keys().copied().collect();
        v.push(self.root);
        v.sort_unstable();
        v
    }

    pub fn contains(&self, label: u32) -> bool {
        label == self.root || self.parents.contains_key(&label)
    }

    pub fn parent(&self, label: u32) -> Option<(u32, TypeId)> {
        self.parents.get(&label).copied()
    }

    /// Children of `v` with the connecting edge types, sorted by label.
    pub fn children(&self, v: u32) -> Vec<(u32, TypeId)> {
        self.parents
            .iter()
            .filter(|(_, (p, _))| *p == v)
            .map(|(&c, &(_, ty))| (c, ty))
            .collect()
    }

    /// `v` together with everything below it.
    pub fn subtree_labels(&self, v: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                for (c, _) in self.children(x) {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Apply an injective relabeling covering every label.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<Self> {
        let get = |l: u32| map.get(&l).copied().ok_or(Error::UnknownLabel(l));
        let mut seen = BTreeSet::new();
        for &v in map.values() {
            if !seen.insert(v) {
                return Err(Error::LabelCollision(v));
            }
        }
        let mut parents = BTreeMap::new();
        for (&c, &(p, ty)) in &self.parents {
            parents.insert(get(c)?, (get(p)?, ty));
        }
        Ok(LabeledTree {
            root: get(self.root)?,
            parents,
        })
    }

    /// Renumber labels to `1..=n` preserving their relative order.
    pub fn standardize(&self) -> Self {
        let map: BTreeMap<u32, u32> = self
            .labels()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, i as u32 + 1))
            .collect();
        self.relabel(&map).expect("standardize is always valid")
    }
}

/// Partial composition `t ∘_a s` with labels kept verbatim: the result
/// lives on `(labels(t) ∖ {a}) ⊔ labels(s)`, which must be disjoint.
/// Vertex `a` is replaced by `s` (the edge above `a`, if any, now points
/// at the root of `s`), and the sum runs over all assignments of the
/// branches formerly hanging off `a` to vertices of `s`.
pub fn operad_compose(
    t: &LabeledTree,
    a: u32,
    s: &LabeledTree,
) -> Result<LinComb<LabeledTree>> {
    if !t.contains(a) {
        return Err(Error::UnknownLabel(a));
    }
    // The result lives on (labels(t) ∖ {a}) ⊔ labels(s); only those two
    // sets must be disjoint, so `a` itself may reappear in `s`.
    for l in s.labels() {
        if t.contains(l) && l != a {
            return Err(Error::LabelCollision(l));
        }
    }
    let branches: Vec<(u32, TypeId)> = t.children(a);
    let targets = s.labels();

    let mut base: BTreeMap<u32, (u32, TypeId)> = BTreeMap::new();
    for (&c, &(p, ty)) in &t.parents {
        if c == a || branches.iter().any(|&(b, _)| b == c) {
            continue;
        }
        base.insert(c, (p, ty));
    }
    for (&c, &(p, ty)) in &s.parents {
        base.insert(c, (p, ty));
    }
    let root;
    if a == t.root {
        root = s.root;
    } else {
        root = t.root;
        let (p, ty) = t.parent(a).expect("non-root vertex has a parent");
        base.insert(s.root, (p, ty));
    }

    let mut out = LinComb::zero();
    let mut assignment = vec![0usize; branches.len()];
    loop {
        let mut parents = base.clone();
        for (i, &(b, ty)) in branches.iter().enumerate() {
            parents.insert(b, (targets[assignment[i]], ty));
        }
        out.add_term(
            LabeledTree {
                root,
                parents,
            },
            crate::linalg::rat_int(1),
        );
        // Advance the mixed-radix counter over target assignments.
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return Ok(out);
            }
            assignment[i] += 1;
            if assignment[i] < targets.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Bilinear extension of [`operad_compose`].
pub fn operad_compose_lin(
    x: &LinComb<LabeledTree>,
    a: u32,
    y: &LinComb<LabeledTree>,
) -> Result<LinComb<LabeledTree>> {
    let mut out = LinComb::zero();
    for (t, ct) in x.iter() {
        for (s, cs) in y.iter() {
            let part = operad_compose(t, a, s)?;
            out = out.combine(&(ct.clone() * cs.clone()), &part);
        }
    }
    Ok(out)
}

/// Composition in the standard presentation: `t` on labels `1..=m`,
/// `s` on `1..=n`, result renumbered onto `1..=m+n-1` by shifting the
/// labels of `t` above `a` up by `n-1` and the labels of `s` up by `a-1`.
pub fn compose_standard(
    t: &LabeledTree,
    a: u32,
    s: &LabeledTree,
) -> Result<LinComb<LabeledTree>> {
    let m = t.size() as u32;
    let n = s.size() as u32;
    if t.labels() != (1..=m).collect::<Vec<u32>>() {
        return Err(Error::Constraint(format!(
            "left tree must use labels 1..={m}"
        )));
    }
    if s.labels() != (1..=n).collect::<Vec<u32>>() {
        return Err(Error::Constraint(format!(
            "right tree must use labels 1..={n}"
        )));
    }
    if !(1..=m).contains(&a) {
        return Err(Error::UnknownLabel(a));
    }
    // Move `a` aside to the unused label 0, then compose verbatim.
    let t_map: BTreeMap<u32, u32> = (1..=m)
        .map(|x| {
            let y = if x == a {
                0
            } else if x < a {
                x
            } else {
                x + n - 1
            };
            (x, y)
        })
        .collect();
    let s_map: BTreeMap<u32, u32> = (1..=n).map(|j| (j, j + a - 1)).collect();
    operad_compose(&t.relabel(&t_map)?, 0, &s.relabel(&s_map)?)
}

/// All labeled typed trees on the given distinct labels, by brute force
/// over parent assignments.
pub fn generate_labeled_trees(labels: &[u32], t_count: usize) -> Vec<LabeledTree> {
    let mut out = Vec::new();
    let set: BTreeSet<u32> = labels.iter().copied().collect();
    assert_eq!(set.len(), labels.len(), "labels must be distinct");
    if labels.is_empty() {
        return out;
    }
    for &root in labels {
        let others: Vec<u32> = labels.iter().copied().filter(|&l| l != root).collect();
        let mut edges: Vec<(u32, u32, TypeId)> = Vec::new();
        assign(root, &others, 0, labels, t_count, &mut edges, &mut out);
    }
    fn assign(
        root: u32,
        others: &[u32],
        i: usize,
        labels: &[u32],
        t_count: usize,
        edges: &mut Vec<(u32, u32, TypeId)>,
        out: &mut Vec<LabeledTree>,
    ) {
        if i == others.len() {
            if let Ok(t) = LabeledTree::new(root, edges.clone()) {
                out.push(t);
            }
            return;
        }
        for &p in labels {
            if p == others[i] {
                continue;
            }
            for ty in 0..t_count {
                edges.push((others[i], p, TypeId(ty as u32)));
                assign(root, others, i + 1, labels, t_count, edges, out);
                edges.pop();
            }
        }
    }
    out
}

/// Number of labeled typed trees of arity `n` over `t_count` edge types:
/// `T^(n-1) * n^(n-1)`.
pub fn operad_dimension(n: u64, t_count: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let t = BigInt::from(t_count);
    let nn = BigInt::from(n);
    num::pow::pow(t * nn, (n - 1) as usize)
}

/// Basis word of the free multiple permutative algebra: a head generator
/// and a multiset of `(generator, type)` factors, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PermWord {
    head: u32,
    tail: Vec<(u32, TypeId)>,
}

impl PermWord {
    pub fn new(head: u32, mut tail: Vec<(u32, TypeId)>) -> Self {
        tail.sort_unstable();
        PermWord { head, tail }
    }

    pub fn generator(head: u32) -> Self {
        PermWord {
            head,
            tail: Vec::new(),
        }
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn tail(&self) -> &[(u32, TypeId)] {
        &self.tail
    }
}

/// `x ⋄_t y` on basis words: keep the head of `x`, merge both tails, and
/// append the head of `y` tagged with `t`.
pub fn perm_word_product(x: &PermWord, t: TypeId, y: &PermWord) -> PermWord {
    let mut tail = x.tail.clone();
    tail.extend(y.tail.iter().copied());
    tail.push((y.head, t));
    PermWord::new(x.head, tail)
}

/// Bilinear extension of `⋄_t` to combinations of words.
pub fn permutative_product(
    x: &LinComb<PermWord>,
    y: &LinComb<PermWord>,
    t: TypeId,
) -> LinComb<PermWord> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(perm_word_product(a, t, b), ca.clone() * cb.clone());
        }
    }
    out
}

/// All multilinear words on generators `1..=n`: each generator appears
/// exactly once, one of them as the head.
pub fn multilinear_perm_words(n: u32, t_count: u32) -> Vec<PermWord> {
    let mut out = Vec::new();
    for head in 1..=n {
        let others: Vec<u32> = (1..=n).filter(|&g| g != head).collect();
        let mut tail: Vec<(u32, TypeId)> = Vec::new();
        rec(head, &others, 0, t_count, &mut tail, &mut out);
    }
    fn rec(
        head: u32,
        others: &[u32],
        i: usize,
        t_count: u32,
        tail: &mut Vec<(u32, TypeId)>,
        out: &mut Vec<PermWord>,
    ) {
        if i == others.len() {
            out.push(PermWord::new(head, tail.clone()));
            return;
        }
        for ty in 0..t_count {
            tail.push((others[i], TypeId(ty)));
            rec(head, others, i + 1, t_count, tail, out);
            tail.pop();
        }
    }
    out
}

/// Multilinear dimension of the dual side: `n * T^(n-1)`.
pub fn permutative_dimension(n: u64, t_count: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(n) * num::pow::pow(BigInt::from(t_count), (n - 1) as usize)
}

/// Convert a decorated tree into a labeled tree, assigning consecutive
/// labels starting at `start` in depth-first order; returns the tree and
/// the label-to-decoration map.
pub fn label_tree(t: &Tree, start: u32) -> (LabeledTree, BTreeMap<u32, DecId>) {
    let mut decs = BTreeMap::new();
    let mut edges = Vec::new();
    let mut next = start;
    fn walk(
        t: &Tree,
        parent: Option<(u32, TypeId)>,
        next: &mut u32,
        decs: &mut BTreeMap<u32, DecId>,
        edges: &mut Vec<(u32, u32, TypeId)>,
    ) {
        let me = *next;
        *next += 1;
        decs.insert(me, t.dec());
        if let Some((p, ty)) = parent {
            edges.push((me, p, ty));
        }
        for (ty, c) in t.children() {
            walk(c, Some((me, *ty)), next, decs, edges);
        }
    }
    walk(t, None, &mut next, &mut decs, &mut edges);
    let lt = LabeledTree::new(start, edges).expect("depth-first labeling is a tree");
    (lt, decs)
}

/// Forget labels: rebuild the canonical decorated tree using the given
/// label-to-decoration map.
pub fn decorate_labels(lt: &LabeledTree, decs: &BTreeMap<u32, DecId>) -> Result<Tree> {
    fn rec(lt: &LabeledTree, v: u32, decs: &BTreeMap<u32, DecId>) -> Result<Tree> {
        let d = *decs.get(&v).ok_or(Error::UnknownLabel(v))?;
        let mut children = Vec::new();
        for (c, ty) in lt.children(v) {
            children.push((ty, rec(lt, c, decs)?));
        }
        Ok(Tree::new(d, children))
    }
    rec(lt, lt.root(), decs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;
    use crate::text::{parse_labeled_tree, render_labeled_tree};
    use crate::trees::TypeAlphabet;

    const RED: TypeId = TypeId(0);
    const GREEN: TypeId = TypeId(1);

    fn types() -> TypeAlphabet {
        TypeAlphabet::new(vec!["red".into(), "green".into()]).unwrap()
    }

    fn lt(src: &str) -> LabeledTree {
        parse_labeled_tree(src, &types()).unwrap()
    }

    fn comb(trees: &[&str]) -> LinComb<LabeledTree> {
        let mut c = LinComb::zero();
        for s in trees {
            c.add_term(lt(s), rat_int(1));
        }
        c
    }

    #[test]
    fn labeled_tree_construction_and_validation() {
        let t = lt("1[red:2,green:3[red:4]]");
        assert_eq!(t.root(), 1);
        assert_eq!(t.size(), 4);
        assert_eq!(t.labels(), vec![1, 2, 3, 4]);
        assert_eq!(t.children(1), vec![(2, RED), (3, GREEN)]);
        assert_eq!(t.parent(4), Some((3, RED)));
        assert_eq!(
            t.subtree_labels(3),
            [3, 4].into_iter().collect::<BTreeSet<u32>>()
        );
        // Duplicate label.
        assert!(LabeledTree::new(1, vec![(2, 1, RED), (2, 1, GREEN)]).is_err());
        // Cycle.
        assert!(LabeledTree::new(1, vec![(2, 3, RED), (3, 2, RED)]).is_err());
        // Parent outside the label set is a cycle-free dangling reference.
        assert!(LabeledTree::new(1, vec![(2, 9, RED)]).is_err());
    }

    #[test]
    fn labeled_literal_round_trip() {
        let ty = types();
        for src in ["1", "7[red:3]", "1[red:2,green:3[red:4]]", "2[green:10]"] {
            let t = parse_labeled_tree(src, &ty).unwrap();
            assert_eq!(render_labeled_tree(&t, &ty).unwrap(), src);
        }
        // Children render sorted by label.
        let t = lt("1[green:3,red:2]");
        assert_eq!(render_labeled_tree(&t, &ty).unwrap(), "1[red:2,green:3]");
        assert!(parse_labeled_tree("1[red:1]", &ty).is_err());
        assert!(parse_labeled_tree("x", &ty).is_err());
    }

    #[test]
    fn composition_examples() {
        // (1 -red- 2) ∘_1 (1 -green- 2), standard labels: the branch {2}
        // of the left tree becomes 3 and regrafts on each vertex of the
        // green tree.
        let red12 = lt("1[red:2]");
        let green12 = lt("1[green:2]");
        let got = compose_standard(&red12, 1, &green12).unwrap();
        assert_eq!(got, comb(&["1[red:3,green:2]", "1[green:2[red:3]]"]));

        // (1 -green- 2) ∘_2 (1 -red- 2): vertex 2 is a leaf, so the
        // result is the single chain 1 -green- 2 -red- 3.
        let got = compose_standard(&green12, 2, &red12).unwrap();
        assert_eq!(got, comb(&["1[green:2[red:3]]"]));
    }

    #[test]
    fn unit_laws() {
        let e = LabeledTree::single(9);
        let t = lt("1[red:2,green:3]");
        // e ∘_9 t = t.
        assert_eq!(
            operad_compose(&e, 9, &t).unwrap(),
            comb(&["1[red:2,green:3]"])
        );
        // t ∘_a e renames a to the singleton's label.
        let got = operad_compose(&t, 3, &e).unwrap();
        assert_eq!(got, comb(&["1[red:2,green:9]"]));
        let got_root = operad_compose(&t, 1, &e).unwrap();
        assert_eq!(got_root, comb(&["9[red:2,green:3]"]));
    }

    #[test]
    fn verbatim_labels_and_errors() {
        let t = lt("1[red:2]");
        let s = lt("5[green:6]");
        // Vertex 2 has no branches, so exactly one term, coefficient 1.
        let got = operad_compose(&t, 2, &s).unwrap();
        assert_eq!(got, comb(&["1[red:5[green:6]]"]));
        assert!(operad_compose(&t, 3, &s).is_err());
        // 1 survives on the left, so a second 1 on the right collides.
        assert!(operad_compose(&t, 2, &lt("5[red:1]")).is_err());
        // The replaced label itself may reappear on the right.
        let reuse = operad_compose(&t, 2, &lt("2[red:5]")).unwrap();
        assert_eq!(reuse, comb(&["1[red:2[red:5]]"]));
    }

    #[test]
    fn parallel_and_sequential_associativity() {
        // Exhaustive over small shapes: t on {1,2}, s on {4,5}, u on {7,8},
        // plus singletons, with all type choices.
        let ty = types();
        let shapes_t: Vec<LabeledTree> = vec![
            lt("1[red:2]"),
            lt("1[green:2]"),
            lt("2[red:1]"),
            parse_labeled_tree("1[red:2,green:3]", &ty).unwrap(),
            parse_labeled_tree("1[red:2[red:3]]", &ty).unwrap(),
        ];
        let shapes_s: Vec<LabeledTree> = vec![lt("4[red:5]"), lt("4[green:5]"), LabeledTree::single(4)];
        let shapes_u: Vec<LabeledTree> = vec![lt("7[green:8]"), LabeledTree::single(7)];

        for t in &shapes_t {
            for s in &shapes_s {
                for u in &shapes_u {
                    // Parallel: distinct vertices a' != a'' of t.
                    for a1 in t.labels() {
                        for a2 in t.labels() {
                            if a1 == a2 {
                                continue;
                            }
                            let left = operad_compose_lin(
                                &operad_compose(t, a1, s).unwrap(),
                                a2,
                                &LinComb::single(u.clone()),
                            )
                            .unwrap();
                            let right = operad_compose_lin(
                                &operad_compose(t, a2, u).unwrap(),
                                a1,
                                &LinComb::single(s.clone()),
                            )
                            .unwrap();
                            assert_eq!(left, right, "parallel at {a1},{a2}");
                        }
                    }
                    // Sequential: b'' a vertex of s.
                    for a in t.labels() {
                        for b in s.labels() {
                            let left = operad_compose_lin(
                                &operad_compose(t, a, s).unwrap(),
                                b,
                                &LinComb::single(u.clone()),
                            )
                            .unwrap();
                            let right = operad_compose_lin(
                                &LinComb::single(t.clone()),
                                a,
                                &operad_compose(s, b, u).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(left, right, "sequential at {a},{b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_matches_generation() {
        for n in 1u64..=5 {
            for t_count in 1u64..=2 {
                let labels: Vec<u32> = (1..=n as u32).collect();
                let gen = generate_labeled_trees(&labels, t_count as usize);
                let set: BTreeSet<&LabeledTree> = gen.iter().collect();
                assert_eq!(set.len(), gen.len(), "duplicates at n={n}");
                assert_eq!(
                    BigInt::from(gen.len()),
                    operad_dimension(n, t_count),
                    "n={n} T={t_count}"
                );
            }
        }
        assert_eq!(operad_dimension(1, 5), BigInt::from(1));
        assert_eq!(operad_dimension(3, 2), BigInt::from(36));
        assert_eq!(operad_dimension(2, 2), BigInt::from(4));
    }

    #[test]
    fn the_four_two_vertex_trees() {
        let gen = generate_labeled_trees(&[1, 2], 2);
        let expect: BTreeSet<LabeledTree> =
            [lt("1[red:2]"), lt("2[red:1]"), lt("1[green:2]"), lt("2[green:1]")]
                .into_iter()
                .collect();
        assert_eq!(gen.into_iter().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn standardize_renumbers_in_order() {
        let t = lt("7[red:3,green:9]");
        let s = t.standardize();
        assert_eq!(s, lt("2[red:1,green:3]"));
    }

    #[test]
    fn perm_word_products() {
        // (v ⊗ 1) ⋄_t (v' ⊗ 1) = v ⊗ (v' δ_t).
        let v = PermWord::generator(1);
        let vp = PermWord::generator(2);
        assert_eq!(
            perm_word_product(&v, RED, &vp),
            PermWord::new(1, vec![(2, RED)])
        );
        // (v ⊗ uδ_s) ⋄_t (v' ⊗ 1) = v ⊗ (uδ_s)(v'δ_t).
        let left = PermWord::new(1, vec![(3, GREEN)]);
        assert_eq!(
            perm_word_product(&left, RED, &vp),
            PermWord::new(1, vec![(2, RED), (3, GREEN)])
        );
        let x = LinComb::single(v);
        let y = LinComb::single(vp);
        let z = permutative_product(&x, &y, GREEN);
        assert_eq!(z, LinComb::single(PermWord::new(1, vec![(2, GREEN)])));
    }

    #[test]
    fn permutative_relations() {
        // (x ⋄_t y) ⋄_t' z = x ⋄_t (y ⋄_t' z) = (x ⋄_t' z) ⋄_t y,
        // checked on a spread of words and both types.
        let words = [
            PermWord::generator(1),
            PermWord::new(2, vec![(5, RED)]),
            PermWord::new(3, vec![(6, GREEN), (6, GREEN)]),
        ];
        for x in &words {
            for y in &words {
                for z in &words {
                    for &t in &[RED, GREEN] {
                        for &tp in &[RED, GREEN] {
                            let a = perm_word_product(&perm_word_product(x, t, y), tp, z);
                            let b = perm_word_product(x, t, &perm_word_product(y, tp, z));
                            let c = perm_word_product(&perm_word_product(x, tp, z), t, y);
                            assert_eq!(a, b);
                            assert_eq!(a, c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multilinear_dimension() {
        for n in 1u32..=4 {
            for t_count in 1u32..=2 {
                let words = multilinear_perm_words(n, t_count);
                let set: BTreeSet<&PermWord> = words.iter().collect();
                assert_eq!(set.len(), words.len());
                assert_eq!(
                    BigInt::from(words.len()),
                    permutative_dimension(n as u64, t_count as u64)
                );
            }
        }
        assert_eq!(permutative_dimension(4, 2), BigInt::from(32));
    }

    #[test]
    fn labeling_round_trip() {
        use crate::trees::Alphabets;
        let a = Alphabets::from_names(&["a", "b", "c"], &["red", "green"]).unwrap();
        let t = crate::text::parse_tree("a[red:b[green:c],green:a]", &a).unwrap();
        let (lt, decs) = label_tree(&t, 1);
        assert_eq!(lt.size(), 4);
        assert_eq!(lt.labels(), vec![1, 2, 3, 4]);
        let back = decorate_labels(&lt, &decs).unwrap();
        assert_eq!(back, t);
    }
}
