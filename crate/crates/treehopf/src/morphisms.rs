//! Morphism families between the tree algebras.
//!
//! Three constructions live here:
//!
//! * **Edge substitution** `Φ_M` for a rational matrix `M = (m_{t,t'})`
//!   indexed by edge types: every edge of type `t'` is replaced by the
//!   formal combination `Σ_t m_{t,t'} t`, multilinearly over all edges.
//!   `Φ_M` is an algebra endomorphism of the forest algebra, functorial in
//!   `M`, restricts to a pre-Lie morphism `(g, •_λ) → (g, •_{Mλ})`, is a
//!   coalgebra morphism for the branch coproducts `ρ_{M^⊤μ} → ρ_μ`, and
//!   transports the weighted Connes–Kreimer coproduct along `M^⊤`.
//!
//! * **Freeness morphisms** over the restricted-tree alphabet: for a fixed
//!   type `t₀`, the trees whose root carries no outgoing `t₀`-edge form an
//!   alphabet; `ψ` evaluates untyped trees decorated by that alphabet into
//!   the typed tree algebra using the total grafting `•_λ`, and `Ψ*` is its
//!   adjoint — for the symmetry pairing on the typed side and the decorated
//!   pairing (which also counts symmetries inside the decorations) on the
//!   other — given by a sum over restricted connected partitions. `ψ`
//!   (hence `Ψ*`) is graded invertible exactly when `λ_{t₀} ≠ 0`.
//!
//! * **Weight-change matrices**: explicit invertible matrices `M` with
//!   `M^⊤λ = μ`, used to move results between different weight vectors.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::Tensor2;
use crate::linalg::{Lambda, LinComb, Rat};
use crate::prelie::{universal_morphism, LambdaTreeTarget};
use crate::text::{parse_rat, render_rat};
use crate::trees::{
    flatten, forest_from_parents, generate_restricted_trees, restricted_partitions, symmetry_factor,
    DecId, Forest, Tree, TypeId,
};

/// A rectangular matrix of rationals indexed by edge types: rows are target
/// types, columns source types, so `entry(t, t')` is the coefficient of `t`
/// in the image of `t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeMatrix {
    entries: Vec<Vec<Rat>>,
}

impl TypeMatrix {
    /// Build from rows; every row must have the same length as the first.
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::constraint("matrix must have at least one entry"));
        }
        let width = entries[0].len();
        for row in &entries {
            if row.len() != width {
                return Err(Error::MatrixShape {
                    expected: width,
                    found: row.len(),
                });
            }
        }
        Ok(TypeMatrix { entries })
    }

    fn from_rows(entries: Vec<Vec<Rat>>) -> Self {
        TypeMatrix { entries }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        TypeMatrix { entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, t: usize, t_prime: usize) -> &Rat {
        &self.entries[t][t_prime]
    }

    /// Matrix product; `self` acts after `other`.
    pub fn mul(&self, other: &TypeMatrix) -> Result<TypeMatrix> {
        if self.cols() != other.rows() {
            return Err(Error::MatrixShape {
                expected: self.cols(),
                found: other.rows(),
            });
        }
        let entries = (0..self.rows())
            .map(|i| {
                (0..other.cols())
                    .map(|k| {
                        let mut s = Rat::zero();
                        for j in 0..self.cols() {
                            s += self.entry(i, j) * other.entry(j, k);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(TypeMatrix { entries })
    }

    pub fn transpose(&self) -> TypeMatrix {
        let entries = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entry(i, j).clone()).collect())
            .collect();
        TypeMatrix { entries }
    }

    /// `Mλ`: weight vectors over the source types map to weight vectors over
    /// the target types, `(Mλ)_t = Σ_{t'} m_{t,t'} λ_{t'}`.
    pub fn apply(&self, lambda: &Lambda) -> Result<Lambda> {
        for (t, _) in lambda.support() {
            if t.0 as usize >= self.cols() {
                return Err(Error::TypeRange(t.0));
            }
        }
        Ok(Lambda::from_pairs((0..self.rows()).map(|t| {
            let mut s = Rat::zero();
            for (tp, c) in lambda.support() {
                s += self.entry(t, tp.0 as usize) * c;
            }
            (TypeId(t as u32), s)
        })))
    }

    /// `M^⊤μ`: coweight vectors over the target types map back to the source
    /// types, `(M^⊤μ)_{t'} = Σ_t m_{t,t'} μ_t`.
    pub fn transpose_apply(&self, mu: &Lambda) -> Result<Lambda> {
        for (t, _) in mu.support() {
            if t.0 as usize >= self.rows() {
                return Err(Error::TypeRange(t.0));
            }
        }
        Ok(Lambda::from_pairs((0..self.cols()).map(|tp| {
            let mut s = Rat::zero();
            for (t, c) in mu.support() {
                s += self.entry(t.0 as usize, tp) * c;
            }
            (TypeId(tp as u32), s)
        })))
    }

    /// Parse one row per line, entries as whitespace-separated rationals.
    pub fn parse(src: &str) -> Result<TypeMatrix> {
        let mut entries = Vec::new();
        for line in src.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<Rat>> = line.split_whitespace().map(parse_rat).collect();
            entries.push(row?);
        }
        TypeMatrix::new(entries)
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(render_rat)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn is_invertible(&self) -> bool {
        self.rows() == self.cols() && rank(&self.entries) == self.rows()
    }
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][col].clone();
        for i in (r + 1)..nrows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &inv;
            for c in col..ncols {
                let sub = &f * &m[r][c];
                m[i][c] -= sub;
            }
        }
        r += 1;
    }
    r
}

/// `Φ_M` on a basis tree: replace every edge type `t'` by `Σ_t m_{t,t'} t`,
/// multilinearly over the edges.
pub fn phi_tree(tree: &Tree, m: &TypeMatrix) -> Result<LinComb<Tree>> {
    let mut acc: LinComb<Vec<(TypeId, Tree)>> = LinComb::single(Vec::new());
    for (ty, child) in tree.children() {
        if ty.0 as usize >= m.cols() {
            return Err(Error::TypeRange(ty.0));
        }
        let sub = phi_tree(child, m)?;
        let mut next = LinComb::zero();
        for (kids, ck) in acc.iter() {
            for (ct, cc) in sub.iter() {
                for t_new in 0..m.rows() {
                    let w = m.entry(t_new, ty.0 as usize);
                    if w.is_zero() {
                        continue;
                    }
                    let mut kids2 = kids.clone();
                    kids2.push((TypeId(t_new as u32), ct.clone()));
                    next.add_term(kids2, ck.clone() * cc.clone() * w);
                }
            }
        }
        acc = next;
    }
    Ok(acc.map_basis(|kids| Tree::new(tree.dec(), kids.clone())))
}

/// `Φ_M` on a basis forest (product over the tree factors).
pub fn phi_forest(f: &Forest, m: &TypeMatrix) -> Result<LinComb<Forest>> {
    let mut acc: LinComb<Forest> = LinComb::single(Forest::empty());
    for tree in f.trees() {
        let img = phi_tree(tree, m)?;
        let mut next = LinComb::zero();
        for (g, cg) in acc.iter() {
            for (t, ct) in img.iter() {
                next.add_term(g.product(&Forest::single(t.clone())), cg.clone() * ct.clone());
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Linear extension of `Φ_M` to combinations of forests.
pub fn phi(x: &LinComb<Forest>, m: &TypeMatrix) -> Result<LinComb<Forest>> {
    let mut out = LinComb::zero();
    for (f, c) in x.iter() {
        out = out.combine(c, &phi_forest(f, m)?);
    }
    Ok(out)
}

/// Linear extension of `Φ_M` to combinations of trees.
pub fn phi_tree_lin(x: &LinComb<Tree>, m: &TypeMatrix) -> Result<LinComb<Tree>> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        out = out.combine(c, &phi_tree(t, m)?);
    }
    Ok(out)
}

/// `Φ_M ⊗ Φ_M` on a combination of forest tensors.
pub fn phi_tensor(
    x: &LinComb<Tensor2<Forest>>,
    m: &TypeMatrix,
) -> Result<LinComb<Tensor2<Forest>>> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        let left = phi_forest(&t.left, m)?;
        let right = phi_forest(&t.right, m)?;
        for (l, cl) in left.iter() {
            for (r, cr) in right.iter() {
                out.add_term(
                    Tensor2::new(l.clone(), r.clone()),
                    c.clone() * cl.clone() * cr.clone(),
                );
            }
        }
    }
    Ok(out)
}

/// The alphabet of restricted trees: all trees (over `d` decorations and
/// `t` edge types) whose root has no outgoing edge of type `t0`, up to a
/// weight bound, identified with fresh decoration ids in (weight, canonical
/// tree) order.
#[derive(Clone, Debug)]
pub struct RestrictedAlphabet {
    t0: TypeId,
    max_weight: usize,
    trees: Vec<Tree>,
    weights: Vec<usize>,
    ids: BTreeMap<Tree, u32>,
}

impl RestrictedAlphabet {
    pub fn new(d: usize, t: usize, t0: TypeId, max_weight: usize) -> Result<Self> {
        if t0.0 as usize >= t {
            return Err(Error::TypeRange(t0.0));
        }
        let mut trees = Vec::new();
        let mut weights = Vec::new();
        for n in 1..=max_weight {
            for tree in generate_restricted_trees(d, t, t0, n) {
                trees.push(tree);
                weights.push(n);
            }
        }
        let ids = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Ok(RestrictedAlphabet {
            t0,
            max_weight,
            trees,
            weights,
            ids,
        })
    }

    pub fn t0(&self) -> TypeId {
        self.t0
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// The decoration id of a restricted tree.
    pub fn id(&self, tree: &Tree) -> Result<DecId> {
        self.ids.get(tree).map(|&i| DecId(i)).ok_or_else(|| {
            Error::constraint(format!(
                "tree is not a restricted generator of weight <= {}",
                self.max_weight
            ))
        })
    }

    /// The restricted tree behind a decoration id.
    pub fn tree(&self, d: DecId) -> Result<&Tree> {
        self.trees
            .get(d.0 as usize)
            .ok_or(Error::DecorationRange(d.0))
    }

    pub fn weight(&self, d: DecId) -> Result<usize> {
        self.weights
            .get(d.0 as usize)
            .copied()
            .ok_or(Error::DecorationRange(d.0))
    }

    /// Weights per id, for weighted enumeration of the decorated side.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (DecId, &Tree)> {
        self.trees
            .iter()
            .enumerate()
            .map(|(i, t)| (DecId(i as u32), t))
    }
}

/// `ψ` on trees: evaluate an untyped tree decorated by restricted-tree ids
/// in the typed tree algebra, sending the single vertex decorated by `T'`
/// to `T'` and grafting with the total product `•_λ`. Edge types of the
/// argument are ignored (the decorated side has a single product).
pub fn psi(x: &LinComb<Tree>, lambda: &Lambda, alphabet: &RestrictedAlphabet) -> Result<LinComb<Tree>> {
    let mut images = BTreeMap::new();
    for (d, t) in alphabet.iter() {
        images.insert(d, LinComb::single(t.clone()));
    }
    let target = LambdaTreeTarget { lambda };
    universal_morphism(x, &images, &target)
}

/// Multiplicative extension `Ψ` of `ψ` to decorated forests.
pub fn psi_forest(
    f: &Forest,
    lambda: &Lambda,
    alphabet: &RestrictedAlphabet,
) -> Result<LinComb<Forest>> {
    let mut acc: LinComb<Forest> = LinComb::single(Forest::empty());
    for tree in f.trees() {
        let img = psi(&LinComb::single(tree.clone()), lambda, alphabet)?;
        let mut next = LinComb::zero();
        for (g, cg) in acc.iter() {
            for (t, ct) in img.iter() {
                next.add_term(g.product(&Forest::single(t.clone())), cg.clone() * ct.clone());
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Linear extension of `Ψ` to combinations of decorated forests.
pub fn psi_forest_lin(
    x: &LinComb<Forest>,
    lambda: &Lambda,
    alphabet: &RestrictedAlphabet,
) -> Result<LinComb<Forest>> {
    let mut out = LinComb::zero();
    for (f, c) in x.iter() {
        out = out.combine(c, &psi_forest(f, lambda, alphabet)?);
    }
    Ok(out)
}

/// `Ψ*` on a basis forest: sum over restricted connected partitions (every
/// block root free of internal `t0`-edges), weighting each crossing edge by
/// its `λ` and contracting to the untyped skeleton decorated by the blocks.
/// The alphabet must cover weights up to the size of `f`.
pub fn psi_star(
    f: &Forest,
    lambda: &Lambda,
    alphabet: &RestrictedAlphabet,
) -> Result<LinComb<Forest>> {
    let mut out = LinComb::zero();
    for p in restricted_partitions(f, alphabet.t0()) {
        let mut coeff = Rat::one();
        let mut parents = Vec::with_capacity(p.parents.len());
        for par in &p.parents {
            match par {
                Some((b, ty)) => {
                    coeff *= lambda.get(*ty);
                    parents.push(Some((*b, TypeId(0))));
                }
                None => parents.push(None),
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let decs: Result<Vec<DecId>> = p.blocks.iter().map(|b| alphabet.id(b)).collect();
        out.add_term(forest_from_parents(&decs?, &parents), coeff);
    }
    Ok(out)
}

/// Linear extension of `Ψ*` to combinations of forests.
pub fn psi_star_lin(
    x: &LinComb<Forest>,
    lambda: &Lambda,
    alphabet: &RestrictedAlphabet,
) -> Result<LinComb<Forest>> {
    let mut out = LinComb::zero();
    for (f, c) in x.iter() {
        out = out.combine(c, &psi_star(f, lambda, alphabet)?);
    }
    Ok(out)
}

/// Symmetry pairing on the decorated side: diagonal, weighting each
/// decorated forest by its own automorphism count times the symmetry
/// factors of all decorating trees. With this pairing on the decorated
/// side and the plain symmetry pairing on the typed side, `Ψ*` is the
/// transpose of `Ψ`.
pub fn decorated_pairing(
    x: &LinComb<Forest>,
    y: &LinComb<Forest>,
    alphabet: &RestrictedAlphabet,
) -> Result<Rat> {
    let mut s = Rat::zero();
    for (f, c) in x.iter() {
        let cy = y.coeff(f);
        if cy.is_zero() {
            continue;
        }
        let mut w = Rat::from_integer(symmetry_factor(f));
        for v in flatten(f) {
            w *= Rat::from_integer(symmetry_factor(&Forest::single(
                alphabet.tree(v.dec)?.clone(),
            )));
        }
        s += c * cy * w;
    }
    Ok(s)
}

/// `Ψ* ⊗ Ψ*` on a combination of forest tensors.
pub fn psi_star_tensor(
    x: &LinComb<Tensor2<Forest>>,
    lambda: &Lambda,
    alphabet: &RestrictedAlphabet,
) -> Result<LinComb<Tensor2<Forest>>> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        let left = psi_star(&t.left, lambda, alphabet)?;
        let right = psi_star(&t.right, lambda, alphabet)?;
        for (l, cl) in left.iter() {
            for (r, cr) in right.iter() {
                out.add_term(
                    Tensor2::new(l.clone(), r.clone()),
                    c.clone() * cl.clone() * cr.clone(),
                );
            }
        }
    }
    Ok(out)
}

/// Which weight-change matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChangeMode {
    /// Fix the unit weight vector at the given type and normalize the
    /// coweight `μ` to it: requires `λ` to be the unit vector at the type
    /// and `Σ_t λ_t μ_t = 1`; the result satisfies `Mλ = λ` and `M^⊤μ = λ`.
    UnitAt(TypeId),
    /// Any invertible matrix with `M^⊤λ = μ`; requires both vectors nonzero.
    Transport,
}

/// Build an invertible type matrix relating two weight vectors, per `mode`.
pub fn change_matrix(
    lambda: &Lambda,
    mu: &Lambda,
    t_count: usize,
    mode: ChangeMode,
) -> Result<TypeMatrix> {
    if t_count == 0 {
        return Err(Error::constraint("need at least one edge type"));
    }
    for (t, _) in lambda.support().chain(mu.support()) {
        if t.0 as usize >= t_count {
            return Err(Error::TypeRange(t.0));
        }
    }
    match mode {
        ChangeMode::UnitAt(t0) => {
            if t0.0 as usize >= t_count {
                return Err(Error::TypeRange(t0.0));
            }
            if *lambda != Lambda::unit(t0) {
                return Err(Error::constraint(
                    "weight vector must be the unit vector at the fixed type",
                ));
            }
            if lambda.dot(mu) != Rat::one() {
                return Err(Error::constraint(
                    "coweight must pair to 1 with the weight vector",
                ));
            }
            // Identity except in the t0 row, which clears every other type
            // out of the coweight: m_{t0,t'} = -mu_{t'} for t' != t0.
            let t0i = t0.0 as usize;
            let entries = (0..t_count)
                .map(|t| {
                    (0..t_count)
                        .map(|tp| {
                            if tp == t0i {
                                if t == t0i { Rat::one() } else { Rat::zero() }
                            } else if t == tp {
                                Rat::one()
                            } else if t == t0i {
                                -mu.get(TypeId(tp as u32))
                            } else {
                                Rat::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            Ok(TypeMatrix::from_rows(entries))
        }
        ChangeMode::Transport => {
            if lambda.is_zero() || mu.is_zero() {
                return Err(Error::constraint(
                    "weight vectors must both be nonzero",
                ));
            }
            if lambda == mu {
                return Ok(TypeMatrix::identity(t_count));
            }
            let i = (0..t_count)
                .find(|&t| !lambda.get(TypeId(t as u32)).is_zero())
                .expect("nonzero weight vector");
            let j = (0..t_count)
                .find(|&t| !mu.get(TypeId(t as u32)).is_zero())
                .expect("nonzero weight vector");
            // Fast path: mu is lambda with the two pivot entries swapped.
            let swapped = Lambda::from_pairs(lambda.support().map(|(t, c)| {
                let s = if t.0 as usize == i {
                    j
                } else if t.0 as usize == j {
                    i
                } else {
                    t.0 as usize
                };
                (TypeId(s as u32), c.clone())
            }));
            if *mu == swapped {
                let entries = (0..t_count)
                    .map(|r| {
                        (0..t_count)
                            .map(|c| {
                                let c_mapped = if c == i {
                                    j
                                } else if c == j {
                                    i
                                } else {
                                    c
                                };
                                if r == c_mapped { Rat::one() } else { Rat::zero() }
                            })
                            .collect()
                    })
                    .collect();
                return Ok(TypeMatrix::from_rows(entries));
            }
            // General case: a two-factor product A = C·B of unitriangular-
            // style corrections with Aλ = μ; the result is M = A^⊤.
            // B fixes the pivot entry: nu = Bλ has nu_j = mu_j.
            let li = lambda.get(TypeId(i as u32));
            let mut b = TypeMatrix::identity(t_count);
            if i == j {
                b.entries[i][i] = mu.get(TypeId(i as u32)) / &li;
            } else {
                b.entries[j][i] = (mu.get(TypeId(j as u32)) - lambda.get(TypeId(j as u32))) / &li;
            }
            let nu = b.apply(lambda)?;
            // C matches every other entry using column j: for t != j,
            // row t gains ((mu_t - nu_t)/nu_j) times row j.
            let nj = nu.get(TypeId(j as u32));
            let mut c = TypeMatrix::identity(t_count);
            for t in 0..t_count {
                if t == j {
                    continue;
                }
                let diff = mu.get(TypeId(t as u32)) - nu.get(TypeId(t as u32));
                if !diff.is_zero() {
                    c.entries[t][j] = diff / &nj;
                }
            }
            let a = c.mul(&b)?;
            Ok(a.transpose())
        }
    }
}
