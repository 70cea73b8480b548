//! Canonical typed decorated rooted trees and forests.
//!
//! A tree carries a decoration on every vertex and a type on every edge.
//! The canonical form sorts every child list by `(edge type, subtree)`, so
//! structural equality coincides with isomorphism and every isomorphism
//! class has exactly one representative. Forests are multisets of trees,
//! stored sorted; the empty forest is the multiplicative unit.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::One;
use std::collections::BTreeMap;

/// Index into the edge-type alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TypeId(pub u32);

/// Index into the decoration alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DecId(pub u32);

fn valid_ident(s: &str) -> bool {
    // `1` is reserved: it denotes the empty forest in literals.
    !s.is_empty()
        && s != "1"
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Ordered list of distinct edge-type names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAlphabet {
    names: Vec<String>,
}

impl TypeAlphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Alphabet("need at least one edge type".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::Alphabet(format!("invalid type name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Alphabet(format!("duplicate type name `{n}`")));
            }
        }
        Ok(TypeAlphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, name: &str) -> Result<TypeId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| TypeId(i as u32))
            .ok_or_else(|| Error::UnknownType(name.into()))
    }

    pub fn name(&self, t: TypeId) -> Result<&str> {
        self.names
            .get(t.0 as usize)
            .map(|s| s.as_str())
            .ok_or(Error::TypeRange(t.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = TypeId> {
        (0..self.names.len() as u32).map(TypeId)
    }
}

/// Ordered list of distinct decoration names, with an optional commutative
/// semigroup law used by the contraction coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationAlphabet {
    names: Vec<String>,
    add: Option<Vec<Vec<u32>>>,
}

impl DecorationAlphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Alphabet("need at least one decoration".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::Alphabet(format!("invalid decoration name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Alphabet(format!("duplicate decoration name `{n}`")));
            }
        }
        Ok(DecorationAlphabet { names, add: None })
    }

    /// Attach a semigroup table; `table[a][b]` is the id of `a + b`.
    /// Commutativity and associativity are checked exhaustively up front.
    pub fn with_semigroup(names: Vec<String>, table: Vec<Vec<u32>>) -> Result<Self> {
        let mut a = Self::new(names)?;
        let d = a.names.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(Error::Semigroup(format!("table must be {d}x{d}")));
        }
        for row in &table {
            for &v in row {
                if v as usize >= d {
                    return Err(Error::Semigroup(format!("entry {v} out of range")));
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                if table[x][y] != table[y][x] {
                    return Err(Error::Semigroup(format!(
                        "not commutative at ({x},{y})"
                    )));
                }
                for z in 0..d {
                    if table[table[x][y] as usize][z] != table[x][table[y][z] as usize] {
                        return Err(Error::Semigroup(format!(
                            "not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        a.add = Some(table);
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, name: &str) -> Result<DecId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| DecId(i as u32))
            .ok_or_else(|| Error::UnknownDecoration(name.into()))
    }

    pub fn name(&self, d: DecId) -> Result<&str> {
        self.names
            .get(d.0 as usize)
            .map(|s| s.as_str())
            .ok_or(Error::DecorationRange(d.0))
    }

    pub fn has_semigroup(&self) -> bool {
        self.add.is_some()
    }

    pub fn add(&self, a: DecId, b: DecId) -> Result<DecId> {
        let t = self.add.as_ref().ok_or(Error::MissingSemigroup)?;
        let row = t.get(a.0 as usize).ok_or(Error::DecorationRange(a.0))?;
        let v = *row.get(b.0 as usize).ok_or(Error::DecorationRange(b.0))?;
        Ok(DecId(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = DecId> {
        (0..self.names.len() as u32).map(DecId)
    }
}

/// The pair of alphabets a computation runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabets {
    pub decorations: DecorationAlphabet,
    pub types: TypeAlphabet,
}

impl Alphabets {
    pub fn new(decorations: DecorationAlphabet, types: TypeAlphabet) -> Self {
        Alphabets { decorations, types }
    }

    /// Convenience constructor from name lists.
    pub fn from_names(decorations: &[&str], types: &[&str]) -> Result<Self> {
        Ok(Alphabets {
            decorations: DecorationAlphabet::new(
                decorations.iter().map(|s| s.to_string()).collect(),
            )?,
            types: TypeAlphabet::new(types.iter().map(|s| s.to_string()).collect())?,
        })
    }

    pub fn d(&self) -> usize {
        self.decorations.len()
    }

    pub fn t(&self) -> usize {
        self.types.len()
    }
}

/// A typed decorated rooted tree in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tree {
    dec: DecId,
    children: Vec<(TypeId, Tree)>,
}

impl Tree {
    pub fn leaf(dec: DecId) -> Self {
        Tree {
            dec,
            children: Vec::new(),
        }
    }

    /// Children may arrive in any order; they are sorted here. Each child
    /// must already be canonical, which holds for every `Tree` by
    /// construction.
    pub fn new(dec: DecId, mut children: Vec<(TypeId, Tree)>) -> Self {
        children.sort();
        Tree { dec, children }
    }

    pub fn dec(&self) -> DecId {
        self.dec
    }

    pub fn children(&self) -> &[(TypeId, Tree)] {
        &self.children
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(_, c)| c.size())
            .sum::<usize>()
    }

    /// Vertex addresses in canonical traversal order (root first, then each
    /// child subtree in child order).
    pub fn vertices(&self) -> Vec<VertexAddr> {
        let mut out = Vec::new();
        let mut addr = Vec::new();
        fn rec(t: &Tree, addr: &mut VertexAddr, out: &mut Vec<VertexAddr>) {
            out.push(addr.clone());
            for (i, (_, c)) in t.children.iter().enumerate() {
                addr.push(i as u32);
                rec(c, addr, out);
                addr.pop();
            }
        }
        rec(self, &mut addr, &mut out);
        out
    }

    pub fn subtree(&self, addr: &[u32]) -> Result<&Tree> {
        let mut cur = self;
        for &i in addr {
            cur = cur
                .children
                .get(i as usize)
                .map(|(_, c)| c)
                .ok_or_else(|| Error::Address(format_addr(addr)))?;
        }
        Ok(cur)
    }

    /// Number of root edges carrying type `t`.
    pub fn root_type_count(&self, t: TypeId) -> usize {
        self.children.iter().filter(|(ty, _)| *ty == t).count()
    }

    /// Largest decoration id used anywhere in the tree.
    pub fn max_dec(&self) -> u32 {
        let mut m = self.dec.0;
        for (_, c) in &self.children {
            m = m.max(c.max_dec());
        }
        m
    }

    /// Largest type id used anywhere in the tree.
    pub fn max_type(&self) -> Option<u32> {
        let mut m = None;
        for (ty, c) in &self.children {
            m = m.max(Some(ty.0));
            m = m.max(c.max_type());
        }
        m
    }
}

/// Path of child indices from the root; the empty path is the root itself.
pub type VertexAddr = Vec<u32>;

pub fn format_addr(addr: &[u32]) -> String {
    if addr.is_empty() {
        "/".to_string()
    } else {
        addr.iter().map(|i| format!("/{i}")).collect()
    }
}

pub fn parse_addr(s: &str) -> Result<VertexAddr> {
    if s == "/" {
        return Ok(Vec::new());
    }
    if !s.starts_with('/') {
        return Err(Error::Address(s.into()));
    }
    s[1..]
        .split('/')
        .map(|p| p.parse::<u32>().map_err(|_| Error::Address(s.into())))
        .collect()
}

/// A tree literal before canonical ordering.
#[derive(Clone, Debug)]
pub struct RawTree {
    pub dec: DecId,
    pub children: Vec<(TypeId, RawTree)>,
}

/// Recursively sort child lists, producing the canonical representative.
pub fn canonicalize(raw: &RawTree) -> Tree {
    Tree::new(
        raw.dec,
        raw.children
            .iter()
            .map(|(ty, c)| (*ty, canonicalize(c)))
            .collect(),
    )
}

/// A finite multiset of trees, stored sorted. The empty forest is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn single(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }

    pub fn new(mut trees: Vec<Tree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.trees.iter().map(|t| t.size()).sum()
    }

    /// Multiset union.
    pub fn product(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Forest::new(trees)
    }

    /// Addresses of all vertices as (tree index, path), traversal order.
    pub fn vertices(&self) -> Vec<(usize, VertexAddr)> {
        let mut out = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            for v in t.vertices() {
                out.push((i, v));
            }
        }
        out
    }
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Order of the automorphism group of a tree.
pub fn tree_symmetry(t: &Tree) -> BigInt {
    let mut s = BigInt::one();
    let ch = t.children();
    let mut i = 0;
    while i < ch.len() {
        let mut j = i;
        while j < ch.len() && ch[j] == ch[i] {
            j += 1;
        }
        s *= factorial(j - i);
        for (_, c) in &ch[i..j] {
            s *= tree_symmetry(c);
        }
        i = j;
    }
    s
}

/// Order of the automorphism group of a forest: permuting equal factors and
/// the factors' own symmetries.
pub fn symmetry_factor(f: &Forest) -> BigInt {
    let mut s = BigInt::one();
    let ts = f.trees();
    let mut i = 0;
    while i < ts.len() {
        let mut j = i;
        while j < ts.len() && ts[j] == ts[i] {
            j += 1;
        }
        s *= factorial(j - i);
        for t in &ts[i..j] {
            s *= tree_symmetry(t);
        }
        i = j;
    }
    s
}

/// One admissible cut of a tree: a nonempty antichain of edges (each edge
/// named by the address of its lower endpoint), with the parts it produces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutParts {
    pub edges: Vec<VertexAddr>,
    /// Types of the cut edges, aligned with `edges`.
    pub edge_types: Vec<TypeId>,
    /// Component containing the root after removing the cut edges.
    pub root_part: Tree,
    /// Forest of the pruned components.
    pub pruned: Forest,
}

/// All admissible cuts of `t` (nonempty antichains of edges), with the root
/// part and pruned forest of each. Deterministic order.
pub fn admissible_cuts(t: &Tree) -> Vec<CutParts> {
    fn rec(t: &Tree) -> Vec<(Vec<(VertexAddr, TypeId)>, Tree, Vec<Tree>)> {
        // Every cut-or-empty choice of t, with root part and pruned trees.
        let mut states: Vec<(Vec<(VertexAddr, TypeId)>, Vec<(TypeId, Tree)>, Vec<Tree>)> =
            vec![(Vec::new(), Vec::new(), Vec::new())];
        for (i, (ty, c)) in t.children().iter().enumerate() {
            // Options for this child.
            let mut opts: Vec<(Vec<(VertexAddr, TypeId)>, Option<Tree>, Vec<Tree>)> = Vec::new();
            opts.push((vec![(vec![i as u32], *ty)], None, vec![c.clone()]));
            for (sub_edges, sub_root, sub_pruned) in rec(c) {
                let edges = sub_edges
                    .into_iter()
                    .map(|(mut a, sty)| {
                        a.insert(0, i as u32);
                        (a, sty)
                    })
                    .collect();
                opts.push((edges, Some(sub_root), sub_pruned));
            }
            let mut next = Vec::new();
            for (edges, kept, pruned) in &states {
                for (oe, okept, opruned) in &opts {
                    let mut edges = edges.clone();
                    edges.extend(oe.iter().cloned());
                    let mut kept = kept.clone();
                    if let Some(r) = okept {
                        kept.push((*ty, r.clone()));
                    }
                    let mut pruned = pruned.clone();
                    pruned.extend(opruned.iter().cloned());
                    next.push((edges, kept, pruned));
                }
            }
            states = next;
        }
        states
            .into_iter()
            .map(|(edges, kept, pruned)| (edges, Tree::new(t.dec(), kept), pruned))
            .collect()
    }

    rec(t)
        .into_iter()
        .filter(|(edges, _, _)| !edges.is_empty())
        .map(|(mut edges, root_part, pruned)| {
            edges.sort();
            let (edges, edge_types) = edges.into_iter().unzip();
            CutParts {
                edges,
                edge_types,
                root_part,
                pruned: Forest::new(pruned),
            }
        })
        .collect()
}

/// Flattened view of a forest: vertices in traversal order, each with its
/// decoration and parent (index plus incoming edge type).
#[derive(Clone, Debug)]
pub struct FlatVertex {
    pub dec: DecId,
    pub parent: Option<(usize, TypeId)>,
}

pub fn flatten(f: &Forest) -> Vec<FlatVertex> {
    let mut out = Vec::new();
    fn rec(t: &Tree, parent: Option<(usize, TypeId)>, out: &mut Vec<FlatVertex>) {
        let me = out.len();
        out.push(FlatVertex {
            dec: t.dec(),
            parent,
        });
        for (ty, c) in t.children() {
            rec(c, Some((me, *ty)), out);
        }
    }
    for t in f.trees() {
        rec(t, None, &mut out);
    }
    out
}

/// Rebuild a forest from parent pointers over vertices `0..decs.len()`.
pub fn forest_from_parents(decs: &[DecId], parents: &[Option<(usize, TypeId)>]) -> Forest {
    let n = decs.len();
    let mut kids: Vec<Vec<(usize, TypeId)>> = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for v in 0..n {
        match parents[v] {
            Some((p, ty)) => kids[p].push((v, ty)),
            None => roots.push(v),
        }
    }
    fn build(v: usize, decs: &[DecId], kids: &[Vec<(usize, TypeId)>]) -> Tree {
        Tree::new(
            decs[v],
            kids[v]
                .iter()
                .map(|&(c, ty)| (ty, build(c, decs, kids)))
                .collect(),
        )
    }
    Forest::new(roots.into_iter().map(|r| build(r, decs, &kids)).collect())
}

/// One partition of a forest's vertices into connected blocks.
#[derive(Clone, Debug)]
pub struct Partition {
    /// Blocks as canonical trees, ordered by first vertex in traversal order.
    pub blocks: Vec<Tree>,
    /// Per block: the block its root hangs from and the surviving edge type,
    /// or `None` when the block contains a root of the forest.
    pub parents: Vec<Option<(usize, TypeId)>>,
    /// Vertex index (traversal order) to block index.
    pub block_of: Vec<usize>,
}

/// All partitions of the vertex set into connected blocks. Each partition
/// corresponds to the subset of edges contracted inside blocks, so there are
/// exactly 2^(edge count), each emitted once, in a deterministic order.
pub fn connected_partitions(f: &Forest) -> Vec<Partition> {
    let fl = flatten(f);
    let n = fl.len();
    let edges: Vec<(usize, usize, TypeId)> = fl
        .iter()
        .enumerate()
        .filter_map(|(v, x)| x.parent.map(|(p, ty)| (v, p, ty)))
        .collect();
    let m = edges.len();
    debug_assert!(m < 31, "partition enumeration is for desk-size forests");
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0u64..(1u64 << m) {
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, mut v: usize) -> usize {
            while uf[v] != v {
                uf[v] = uf[uf[v]];
                v = uf[v];
            }
            v
        }
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (b, &(c, p, _)) in edges.iter().enumerate() {
            if mask & (1 << b) != 0 {
                let (rc, rp) = (find(&mut uf, c), find(&mut uf, p));
                if rc != rp {
                    uf[rc] = rp;
                }
                kids[p].push(c);
            }
        }
        // Assign block ids by first occurrence; the first vertex of a block
        // in traversal order is its root.
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut block_of = vec![0usize; n];
        let mut block_roots = Vec::new();
        for v in 0..n {
            let r = find(&mut uf, v);
            let id = *ids.entry(r).or_insert_with(|| {
                block_roots.push(v);
                block_roots.len() - 1
            });
            block_of[v] = id;
        }
        fn build(v: usize, fl: &[FlatVertex], kids: &[Vec<usize>]) -> Tree {
            Tree::new(
                fl[v].dec,
                kids[v]
                    .iter()
                    .map(|&c| (fl[c].parent.expect("child has parent").1, build(c, fl, kids)))
                    .collect(),
            )
        }
        let blocks: Vec<Tree> = block_roots.iter().map(|&r| build(r, &fl, &kids)).collect();
        let parents: Vec<Option<(usize, TypeId)>> = block_roots
            .iter()
            .map(|&r| fl[r].parent.map(|(p, ty)| (block_of[p], ty)))
            .collect();
        out.push(Partition {
            blocks,
            parents,
            block_of,
        });
    }
    out
}

/// Partitions whose blocks all avoid root edges of type `t0`.
pub fn restricted_partitions(f: &Forest, t0: TypeId) -> Vec<Partition> {
    connected_partitions(f)
        .into_iter()
        .filter(|p| {
            p.blocks
                .iter()
                .all(|b| b.root_type_count(t0) == 0)
        })
        .collect()
}

fn multisets<T: Clone>(
    cands: &[(usize, T)],
    start: usize,
    budget: usize,
    pick: &mut Vec<T>,
    out: &mut Vec<Vec<T>>,
) {
    if budget == 0 {
        out.push(pick.clone());
        return;
    }
    for i in start..cands.len() {
        let (w, item) = &cands[i];
        if *w <= budget {
            pick.push(item.clone());
            multisets(cands, i, budget - w, pick, out);
            pick.pop();
        }
    }
}

fn assemble_level(
    weights: &[usize],
    cands: &[(usize, (TypeId, Tree))],
    k: usize,
    excluded_root_type: Option<TypeId>,
) -> Vec<Tree> {
    let filtered: Vec<(usize, (TypeId, Tree))> = match excluded_root_type {
        None => cands.to_vec(),
        Some(t0) => cands
            .iter()
            .filter(|(_, (ty, _))| *ty != t0)
            .cloned()
            .collect(),
    };
    let mut level = Vec::new();
    for (d, &w) in weights.iter().enumerate() {
        if w > k {
            continue;
        }
        let mut out = Vec::new();
        multisets(&filtered, 0, k - w, &mut Vec::new(), &mut out);
        for children in out {
            level.push(Tree::new(DecId(d as u32), children));
        }
    }
    level.sort();
    level
}

/// Trees of weight 1..=n over a weighted decoration alphabet
/// (`weights[d]` >= 1 is the weight of decoration `d`) and `t_count` edge
/// types; result index k lists all trees of weight exactly k, sorted.
pub fn trees_by_weight(weights: &[usize], t_count: usize, n: usize) -> Vec<Vec<Tree>> {
    assert!(weights.iter().all(|&w| w >= 1), "decoration weights must be >= 1");
    let mut by: Vec<Vec<Tree>> = vec![Vec::new(); n + 1];
    let mut cands: Vec<(usize, (TypeId, Tree))> = Vec::new();
    for k in 1..=n {
        // Branch candidates of weight < k were appended on earlier rounds.
        by[k] = assemble_level(weights, &cands, k, None);
        if k < n {
            for tr in &by[k] {
                for ty in 0..t_count as u32 {
                    cands.push((k, (TypeId(ty), tr.clone())));
                }
            }
            cands.sort_by(|a, b| a.1.cmp(&b.1));
        }
    }
    by
}

/// All trees with exactly `n` vertices, `d` decorations, `t` types; sorted.
pub fn generate_trees(d: usize, t: usize, n: usize) -> Vec<Tree> {
    let weights = vec![1usize; d];
    trees_by_weight(&weights, t, n).swap_remove(n)
}

/// Trees of weight exactly `n` whose root has no outgoing edge of type `t0`.
pub fn generate_restricted_trees(d: usize, t: usize, t0: TypeId, n: usize) -> Vec<Tree> {
    let weights = vec![1usize; d];
    generate_restricted_weighted(&weights, t, t0, n)
}

/// Weighted variant of restricted-tree generation.
pub fn generate_restricted_weighted(
    weights: &[usize],
    t_count: usize,
    t0: TypeId,
    n: usize,
) -> Vec<Tree> {
    if n == 0 {
        return Vec::new();
    }
    // Branches weigh at most n-1 since every root decoration weighs >= 1.
    let by = trees_by_weight(weights, t_count, n - 1);
    let mut cands: Vec<(usize, (TypeId, Tree))> = Vec::new();
    for (k, level) in by.iter().enumerate() {
        for tr in level {
            for ty in 0..t_count as u32 {
                cands.push((k, (TypeId(ty), tr.clone())));
            }
        }
    }
    cands.sort_by(|a, b| a.1.cmp(&b.1));
    assemble_level(weights, &cands, n, Some(t0))
}

/// All forests of total weight exactly `n`; `n = 0` yields the empty forest.
pub fn generate_forests(d: usize, t: usize, n: usize) -> Vec<Forest> {
    let weights = vec![1usize; d];
    generate_forests_weighted(&weights, t, n)
}

/// Weighted variant of forest generation.
pub fn generate_forests_weighted(weights: &[usize], t_count: usize, n: usize) -> Vec<Forest> {
    if n == 0 {
        return vec![Forest::empty()];
    }
    let by = trees_by_weight(weights, t_count, n);
    let mut cands: Vec<(usize, Tree)> = Vec::new();
    for (k, level) in by.iter().enumerate() {
        for tr in level {
            cands.push((k, tr.clone()));
        }
    }
    cands.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out = Vec::new();
    multisets(&cands, 0, n, &mut Vec::new(), &mut out);
    let mut forests: Vec<Forest> = out.into_iter().map(Forest::new).collect();
    forests.sort();
    forests
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(i: u32) -> DecId {
        DecId(i)
    }
    fn ty(i: u32) -> TypeId {
        TypeId(i)
    }

    fn leaf(i: u32) -> Tree {
        Tree::leaf(d(i))
    }

    #[test]
    fn canonical_form_sorts_children() {
        // a[green:c, red:b] and a[red:b, green:c] are the same tree.
        let x = Tree::new(d(0), vec![(ty(1), leaf(2)), (ty(0), leaf(1))]);
        let y = Tree::new(d(0), vec![(ty(0), leaf(1)), (ty(1), leaf(2))]);
        assert_eq!(x, y);
        assert_eq!(x.children()[0].0, ty(0));
    }

    #[test]
    fn canonical_form_distinguishes_types() {
        let x = Tree::new(d(0), vec![(ty(0), leaf(1))]);
        let y = Tree::new(d(0), vec![(ty(1), leaf(1))]);
        assert_ne!(x, y);
    }

    #[test]
    fn canonicalize_is_invariant_under_shuffles() {
        // Exhaustive small case: all orderings of a three-child raw tree.
        let kids = [
            (ty(0), RawTree { dec: d(1), children: vec![] }),
            (ty(1), RawTree { dec: d(1), children: vec![] }),
            (ty(0), RawTree { dec: d(2), children: vec![] }),
        ];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let first = canonicalize(&RawTree {
            dec: d(0),
            children: kids.to_vec(),
        });
        for p in perms {
            let raw = RawTree {
                dec: d(0),
                children: p.iter().map(|&i| kids[i].clone()).collect(),
            };
            assert_eq!(canonicalize(&raw), first);
        }
    }

    // Brute-force automorphism count: permutations of vertices preserving
    // roots, parenthood, edge types, and decorations.
    fn brute_autos(f: &Forest) -> BigInt {
        let fl = flatten(f);
        let n = fl.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        fn heap(k: usize, perm: &mut Vec<usize>, fl: &[FlatVertex], count: &mut u64) {
            if k == 1 {
                let ok = (0..perm.len()).all(|v| {
                    let fv = &fl[v];
                    let gv = &fl[perm[v]];
                    if fv.dec != gv.dec {
                        return false;
                    }
                    match (fv.parent, gv.parent) {
                        (None, None) => true,
                        (Some((p, t1)), Some((q, t2))) => t1 == t2 && perm[p] == q,
                        _ => false,
                    }
                });
                if ok {
                    *count += 1;
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, fl, count);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, &fl, &mut count);
        BigInt::from(count)
    }

    #[test]
    fn symmetry_factor_examples() {
        // s(• •) with equal decorations is 2.
        let two = Forest::new(vec![leaf(0), leaf(0)]);
        assert_eq!(symmetry_factor(&two), BigInt::from(2));
        // Corolla with two equal red branches: 2.
        let cor = Tree::new(d(0), vec![(ty(0), leaf(1)), (ty(0), leaf(1))]);
        assert_eq!(tree_symmetry(&cor), BigInt::from(2));
        // Same branches but distinct types: 1.
        let cor2 = Tree::new(d(0), vec![(ty(0), leaf(1)), (ty(1), leaf(1))]);
        assert_eq!(tree_symmetry(&cor2), BigInt::from(1));
    }

    #[test]
    fn symmetry_factor_matches_brute_force() {
        for n in 1..=4 {
            for t in generate_trees(1, 2, n) {
                let f = Forest::single(t);
                assert_eq!(symmetry_factor(&f), brute_autos(&f), "forest {f:?}");
            }
        }
        for n in 0..=4 {
            for f in generate_forests(1, 2, n) {
                assert_eq!(symmetry_factor(&f), brute_autos(&f), "forest {f:?}");
            }
        }
        // A decorated case.
        for f in generate_forests(2, 1, 3) {
            assert_eq!(symmetry_factor(&f), brute_autos(&f), "forest {f:?}");
        }
    }

    #[test]
    fn generation_small_counts() {
        // One decoration, two types, two vertices: exactly the two ladders.
        assert_eq!(generate_trees(1, 2, 2).len(), 2);
        // Forests of size 2: two dots, red ladder, green ladder.
        assert_eq!(generate_forests(1, 2, 2).len(), 3);
        // Single-type counts 1..6 (fixed reference values).
        let expect = [1usize, 1, 2, 4, 9, 20];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(generate_trees(1, 1, i + 1).len(), *e, "n={}", i + 1);
        }
    }

    #[test]
    fn generation_no_duplicates_and_exact_size() {
        for n in 1..=5 {
            let ts = generate_trees(1, 2, n);
            for t in &ts {
                assert_eq!(t.size(), n);
            }
            let mut dedup = ts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), ts.len());
        }
    }

    #[test]
    fn restricted_trees_avoid_root_type() {
        for n in 1..=4 {
            let all = generate_trees(1, 2, n);
            let restr = generate_restricted_trees(1, 2, ty(0), n);
            let filtered: Vec<Tree> = all
                .iter()
                .filter(|t| t.root_type_count(ty(0)) == 0)
                .cloned()
                .collect();
            assert_eq!(restr, filtered);
        }
        // Weight-counted reference values for one decoration, two types.
        let expect = [1usize, 1, 3, 10];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(
                generate_restricted_trees(1, 2, ty(0), i + 1).len(),
                *e,
                "n={}",
                i + 1
            );
        }
    }

    // Oracle: admissible cuts as antichains among all edge subsets.
    fn oracle_cuts(t: &Tree) -> Vec<Vec<VertexAddr>> {
        let vs = t.vertices();
        let edges: Vec<VertexAddr> = vs.into_iter().filter(|v| !v.is_empty()).collect();
        let m = edges.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << m) {
            let sel: Vec<VertexAddr> = (0..m)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| edges[b].clone())
                .collect();
            let antichain = sel.iter().all(|e1| {
                sel.iter().all(|e2| {
                    e1 == e2 || !(e1.len() < e2.len() && e2[..e1.len()] == e1[..])
                })
            });
            if antichain {
                let mut s = sel;
                s.sort();
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn admissible_cuts_match_antichain_oracle() {
        for n in 1..=5 {
            for t in generate_trees(1, 2, n) {
                let mut got: Vec<Vec<VertexAddr>> =
                    admissible_cuts(&t).into_iter().map(|c| c.edges).collect();
                got.sort();
                assert_eq!(got, oracle_cuts(&t), "tree {t:?}");
            }
        }
    }

    #[test]
    fn admissible_cut_parts_sizes_add_up() {
        for t in generate_trees(1, 2, 4) {
            for c in admissible_cuts(&t) {
                assert_eq!(c.root_part.size() + c.pruned.size(), t.size());
                assert_eq!(c.edges.len(), c.pruned.trees().len());
                assert_eq!(c.edges.len(), c.edge_types.len());
            }
        }
    }

    #[test]
    fn cut_example_ladder() {
        // Single edge: one admissible cut, pruning the leaf.
        let lad = Tree::new(d(0), vec![(ty(0), leaf(1))]);
        let cuts = admissible_cuts(&lad);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].root_part, leaf(0));
        assert_eq!(cuts[0].pruned, Forest::single(leaf(1)));
        assert_eq!(cuts[0].edge_types, vec![ty(0)]);
    }

    // Oracle: all set partitions of the vertex set, filtered to connected
    // blocks (every non-root block vertex reaches the block root inside it).
    fn oracle_partitions(f: &Forest) -> usize {
        let fl = flatten(f);
        let n = fl.len();
        let mut assignment = vec![0usize; n];
        fn rec(
            v: usize,
            max_used: usize,
            assignment: &mut Vec<usize>,
            fl: &[FlatVertex],
            count: &mut usize,
        ) {
            let n = assignment.len();
            if v == n {
                // Connectivity: within each block, every vertex other than
                // the block's minimal vertex must have its parent in-block.
                let mut ok = true;
                for b in 0..=max_used {
                    let members: Vec<usize> =
                        (0..n).filter(|&u| assignment[u] == b).collect();
                    if members.is_empty() {
                        continue;
                    }
                    let root = members[0];
                    for &u in &members[1..] {
                        // Walk up until hitting root or leaving the block.
                        let mut cur = u;
                        let mut reached = false;
                        while let Some((p, _)) = fl[cur].parent {
                            if assignment[p] != b {
                                break;
                            }
                            cur = p;
                            if cur == root {
                                reached = true;
                                break;
                            }
                        }
                        if !reached {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    *count += 1;
                }
                return;
            }
            for b in 0..=max_used.min(v) {
                assignment[v] = b;
                rec(v + 1, max_used.max(b), assignment, fl, count);
            }
            if v > 0 {
                assignment[v] = max_used + 1;
                rec(v + 1, max_used + 1, assignment, fl, count);
            }
        }
        let mut count = 0;
        if n == 0 {
            return 1;
        }
        rec(1, 0, &mut assignment, &fl, &mut count);
        count
    }

    #[test]
    fn connected_partitions_match_set_partition_oracle() {
        for n in 1..=4 {
            for t in generate_trees(1, 2, n) {
                let f = Forest::single(t);
                assert_eq!(
                    connected_partitions(&f).len(),
                    oracle_partitions(&f),
                    "forest {f:?}"
                );
            }
        }
        for f in generate_forests(1, 1, 4) {
            assert_eq!(connected_partitions(&f).len(), oracle_partitions(&f));
        }
    }

    #[test]
    fn connected_partitions_examples() {
        // Single vertex: one partition.
        assert_eq!(connected_partitions(&Forest::single(leaf(0))).len(), 1);
        // Ladder: singletons or the whole tree.
        let lad = Tree::new(d(0), vec![(ty(0), leaf(0))]);
        assert_eq!(connected_partitions(&Forest::single(lad)).len(), 2);
        // Two-branch corolla: 4.
        let cor = Tree::new(d(0), vec![(ty(0), leaf(0)), (ty(0), leaf(0))]);
        assert_eq!(connected_partitions(&Forest::single(cor)).len(), 4);
        // Empty forest: exactly the empty partition.
        assert_eq!(connected_partitions(&Forest::empty()).len(), 1);
    }

    #[test]
    fn partition_blocks_cover_and_skeleton_is_consistent() {
        let cor = Tree::new(d(0), vec![(ty(0), leaf(1)), (ty(1), leaf(2))]);
        let f = Forest::single(cor);
        for p in connected_partitions(&f) {
            let total: usize = p.blocks.iter().map(|b| b.size()).sum();
            assert_eq!(total, f.size());
            assert_eq!(p.parents.len(), p.blocks.len());
            // Exactly one skeleton root per tree of the forest.
            let roots = p.parents.iter().filter(|x| x.is_none()).count();
            assert_eq!(roots, f.trees().len());
        }
    }

    #[test]
    fn restricted_partitions_filter_blocks() {
        // Red ladder with t0 = red: the whole-tree block is excluded.
        let lad = Tree::new(d(0), vec![(ty(0), leaf(0))]);
        let f = Forest::single(lad.clone());
        assert_eq!(restricted_partitions(&f, ty(0)).len(), 1);
        // Green ladder with t0 = red: both survive.
        let glad = Tree::new(d(0), vec![(ty(1), leaf(0))]);
        assert_eq!(
            restricted_partitions(&Forest::single(glad), ty(0)).len(),
            2
        );
    }

    #[test]
    fn vertices_and_subtree_addressing() {
        let t = Tree::new(
            d(0),
            vec![(ty(0), Tree::new(d(1), vec![(ty(1), leaf(2))]))],
        );
        let vs = t.vertices();
        assert_eq!(vs, vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(t.subtree(&[0, 0]).unwrap(), &leaf(2));
        assert!(t.subtree(&[1]).is_err());
    }

    #[test]
    fn addr_round_trip() {
        for a in [vec![], vec![0], vec![1, 2, 0]] {
            assert_eq!(parse_addr(&format_addr(&a)).unwrap(), a);
        }
        assert!(parse_addr("0/1").is_err());
    }

    #[test]
    fn semigroup_table_validation() {
        // Trivial one-element semigroup.
        let a = DecorationAlphabet::with_semigroup(vec!["a".into()], vec![vec![0]]).unwrap();
        assert_eq!(a.add(d(0), d(0)).unwrap(), d(0));
        // Non-associative table rejected: with x+x = y, x+y = y, y+y = x,
        // (x+x)+y = y+y = x but x+(x+y) = x+y = y.
        let bad = DecorationAlphabet::with_semigroup(
            vec!["x".into(), "y".into()],
            vec![vec![1, 1], vec![1, 0]],
        );
        assert!(bad.is_err());
        // Non-commutative rejected.
        let bad2 = DecorationAlphabet::with_semigroup(
            vec!["x".into(), "y".into()],
            vec![vec![0, 0], vec![1, 1]],
        );
        assert!(bad2.is_err());
        // Max-semigroup on two elements is fine.
        let ok = DecorationAlphabet::with_semigroup(
            vec!["x".into(), "y".into()],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn alphabet_lookup_errors() {
        let a = Alphabets::from_names(&["a", "b"], &["red", "green"]).unwrap();
        assert!(a.decorations.id("zz").is_err());
        assert!(a.types.id("blue").is_err());
        assert_eq!(a.types.id("green").unwrap(), ty(1));
        assert!(TypeAlphabet::new(vec!["bad name".into()]).is_err());
        assert!(TypeAlphabet::new(vec!["x".into(), "x".into()]).is_err());
    }
}
