//! Simple root systems of types A, D, E₆ with a diagram automorphism, and the
//! folded data obtained by restricting roots to the σ-fixed Cartan subalgebra.
//!
//! Roots are integer vectors in simple-root coordinates. Restricted weights are
//! integer vectors in the coordinates of the folded simple roots (one per σ-orbit
//! of vertices): the restriction of `Σ n_i α_i` has coordinate `Σ_{i ∈ o} n_i` on
//! the orbit `o`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeLabel {
    A,
    D,
    E,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
        };
        f.write_str(s)
    }
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Canonical total order on roots and weights: height, then lexicographic with
/// the larger leading coordinate first (so α₁ precedes α₂).
pub fn root_order_key(v: &[i64]) -> (i64, Reverse<Vec<i64>>) {
    (height(v), Reverse(v.to_vec()))
}

/// `⟨β, α_i^∨⟩` for the Cartan convention `A[i][j] = α_j(h_i)`.
pub fn pairing(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().zip(&cartan[i]).map(|(b, a)| b * a).sum()
}

/// Positive roots of the root system with Cartan matrix `cartan`
/// (`A[i][j] = α_j(h_i)`), generated by the root-string closure and sorted in
/// canonical order.
pub fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut all: Vec<Root> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: BTreeSet<Root> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = max{j : β − jα_i ∈ R⁺}
                let mut p = 0;
                let mut v = beta.clone();
                loop {
                    v[i] -= 1;
                    if known.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(cartan, beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by_key(|r| root_order_key(r));
    all
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

fn cartan_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// Builds the root datum of type `A_n` (n ≥ 1), `D_n` (n ≥ 4) or `E_6`, in
/// Bourbaki numbering (0-based internally).
pub fn build_root_system(type_label: TypeLabel, rank: usize) -> Result<RootDatum> {
    let edges: Vec<(usize, usize)> = match (type_label, rank) {
        (TypeLabel::A, n) if n >= 1 => (0..n - 1).map(|i| (i, i + 1)).collect(),
        (TypeLabel::D, n) if n >= 4 => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        (TypeLabel::E, 6) => vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
        _ => {
            return Err(Error::Unsupported(format!(
                "root system {type_label}{rank}"
            )))
        }
    };
    let cartan_matrix = cartan_from_edges(rank, &edges);
    let positive_roots = positive_roots_from_cartan(&cartan_matrix);
    let index = positive_roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    Ok(RootDatum {
        type_label,
        rank,
        cartan_matrix,
        positive_roots,
        index,
    })
}

impl RootDatum {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.is_positive_root(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.is_positive_root(&neg)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Symmetric bilinear form on the root lattice (simply-laced, roots of norm 2).
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.cartan_matrix[i][j] * b[j];
            }
        }
        s
    }

    /// `α(h_i)`.
    pub fn eval_coroot(&self, alpha: &[i64], i: usize) -> i64 {
        pairing(&self.cartan_matrix, alpha, i)
    }

    /// True for `A_{2n}`, the case with special formulas throughout.
    pub fn is_a_even(&self) -> bool {
        self.type_label == TypeLabel::A && self.rank % 2 == 0
    }

    /// `max{j ≥ 0 : β − jα ∈ R}` for roots α, β (any signs).
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut v: Vec<i64> = beta.to_vec();
        loop {
            for (x, a) in v.iter_mut().zip(alpha) {
                *x -= a;
            }
            if self.is_root(&v) {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

/// A diagram automorphism: a permutation of the vertices preserving the
/// Cartan matrix, of order `k ∈ {2, 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramAut {
    pub perm: Vec<usize>,
    pub order: u32,
}

impl DiagramAut {
    pub fn new(rd: &RootDatum, perm: Vec<usize>) -> Result<Self> {
        let n = rd.rank;
        if perm.len() != n {
            return Err(Error::InvalidAutomorphism("wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism("not a permutation".into()));
            }
            seen[p] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if rd.cartan_matrix[perm[i]][perm[j]] != rd.cartan_matrix[i][j] {
                    return Err(Error::InvalidAutomorphism(
                        "does not preserve the Cartan matrix".into(),
                    ));
                }
            }
        }
        let mut order = 0;
        let mut cur: Vec<usize> = (0..n).collect();
        for step in 1..=6u32 {
            cur = cur.iter().map(|&i| perm[i]).collect();
            if cur.iter().enumerate().all(|(i, &c)| i == c) {
                order = step;
                break;
            }
        }
        match order {
            1 => Err(Error::Unsupported(
                "trivial automorphism (k = 1) is not supported".into(),
            )),
            2 | 3 => Ok(DiagramAut { perm, order }),
            _ => Err(Error::InvalidAutomorphism(format!("order {order}"))),
        }
    }

    /// The standard automorphism of order `k` for the given type.
    pub fn standard(rd: &RootDatum, k: u32) -> Result<Self> {
        let n = rd.rank;
        let perm: Vec<usize> = match (rd.type_label, n, k) {
            (TypeLabel::A, n, 2) if n >= 2 => (0..n).map(|i| n - 1 - i).collect(),
            (TypeLabel::D, n, 2) if n >= 4 => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            }
            (TypeLabel::D, 4, 3) => vec![2, 1, 3, 0],
            (TypeLabel::E, 6, 2) => vec![5, 1, 4, 3, 2, 0],
            _ => {
                return Err(Error::Unsupported(format!(
                    "no diagram automorphism of order {k} for {}{}",
                    rd.type_label, n
                )))
            }
        };
        DiagramAut::new(rd, perm)
    }

    pub fn apply_vertex(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `σ(Σ n_i α_i) = Σ n_i α_{σ(i)}` on an arbitrary coordinate vector.
    pub fn apply(&self, v: &[i64]) -> Root {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        out
    }

    /// σ-orbits on the vertex set, each sorted, ordered by smallest element.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

/// `sigma_on_roots`: the image of a root under σ.
pub fn sigma_on_roots(rd: &RootDatum, sigma: &DiagramAut, alpha: &[i64]) -> Result<Root> {
    if alpha.len() != rd.rank || !rd.is_root(alpha) {
        return Err(Error::NotARoot(alpha.to_vec()));
    }
    Ok(sigma.apply(alpha))
}

/// The σ-orbit of a root, starting at the root itself: `[α, σα, σ²α, …]`.
pub fn root_orbit(sigma: &DiagramAut, alpha: &[i64]) -> Vec<Root> {
    let mut out = vec![alpha.to_vec()];
    let mut cur = sigma.apply(alpha);
    while cur != alpha {
        out.push(cur.clone());
        cur = sigma.apply(&cur);
    }
    out
}

/// Folded (restricted) root data.
#[derive(Clone, Debug, Serialize)]
pub struct FoldedDatum {
    pub k: u32,
    /// σ-orbits of vertices; orbit `o` is the folded vertex `o ∈ I₀`.
    pub vertex_orbits: Vec<Vec<usize>>,
    /// Orbit index of each vertex.
    pub vertex_orbit_of: Vec<usize>,
    /// All restricted weights of positive roots, canonical order.
    pub restricted: Vec<Root>,
    /// `R₀⁺`: restricted weights of 𝔤₀, canonical order.
    pub restricted_positive: Vec<Root>,
    pub short_set: Vec<Root>,
    pub long_set: Vec<Root>,
    /// Weights η with η/2 also a restricted weight (A_{2n} only).
    pub doubled: Vec<Root>,
    /// For each positive root (by index): (index into `restricted`, k_α).
    pub orbit_map: Vec<(usize, usize)>,
    /// Root orbits: for each restricted weight, the fiber of the restriction map.
    pub fibers: Vec<Vec<usize>>,
    /// `wt(𝔤_ε) ∩ Q₀⁺ ∖ {0}` for ε = 0..k−1, as indices into `restricted`.
    pub weights_by_eps: Vec<Vec<usize>>,
    /// Folded Cartan matrix `A₀[i][j] = μ_j(h'_i)`, with `h'_i = 2h_{i,0}` for the
    /// short index of A_{2n} (the Chevalley normalization of 𝔤₀).
    pub cartan: Vec<Vec<i64>>,
    /// Squared length of each element of `restricted`, from the projection of
    /// the orbit average.
    pub norms: Vec<Rational>,
    pub a_even: bool,
}

/// Restriction to 𝔥₀ in folded simple-root coordinates.
pub fn restrict(orbits: &[Vec<usize>], alpha: &[i64]) -> Root {
    orbits
        .iter()
        .map(|o| o.iter().map(|&i| alpha[i]).sum())
        .collect()
}

pub fn fold(rd: &RootDatum, sigma: &DiagramAut) -> FoldedDatum {
    let k = sigma.order;
    let vertex_orbits = sigma.vertex_orbits();
    let mut vertex_orbit_of = vec![0; rd.rank];
    for (o, orb) in vertex_orbits.iter().enumerate() {
        for &i in orb {
            vertex_orbit_of[i] = o;
        }
    }
    let a_even = rd.is_a_even();

    let mut restricted: Vec<Root> = rd
        .positive_roots
        .iter()
        .map(|a| restrict(&vertex_orbits, a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    restricted.sort_by_key(|r| root_order_key(r));
    let widx: HashMap<Root, usize> = restricted
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();

    let mut fibers = vec![Vec::new(); restricted.len()];
    let mut orbit_map = Vec::with_capacity(rd.num_positive());
    for (ai, a) in rd.positive_roots.iter().enumerate() {
        let w = widx[&restrict(&vertex_orbits, a)];
        fibers[w].push(ai);
        orbit_map.push((w, root_orbit(sigma, a).len()));
    }

    // ε-weights: a fixed root lives in 𝔤₀, except for A_{2n} where it lives in 𝔤₁.
    let mut weights_by_eps = vec![Vec::new(); k as usize];
    for (w, fiber) in fibers.iter().enumerate() {
        let fixed = fiber.len() == 1;
        for (eps, list) in weights_by_eps.iter_mut().enumerate() {
            let present = match (a_even, fixed) {
                (false, true) => eps == 0,
                (false, false) => true,
                (true, true) => eps == 1,
                (true, false) => true,
            };
            if present {
                list.push(w);
            }
        }
    }

    // Norms of the projections (1/k_α) Σ_j σ^j(α).
    let norms: Vec<Rational> = fibers
        .iter()
        .map(|fiber| {
            let alpha = &rd.positive_roots[fiber[0]];
            let orbit = root_orbit(sigma, alpha);
            let mut sum = vec![0i64; rd.rank];
            for r in &orbit {
                for (s, x) in sum.iter_mut().zip(r) {
                    *s += x;
                }
            }
            let len = orbit.len() as i64;
            Rational::new(rd.form(&sum, &sum), len * len)
        })
        .collect();

    let restricted_positive: Vec<Root> = weights_by_eps[0]
        .iter()
        .map(|&w| restricted[w].clone())
        .collect();
    let r0_norms: BTreeSet<Rational> = weights_by_eps[0].iter().map(|&w| norms[w].clone()).collect();
    let min_norm = r0_norms.iter().next().cloned().unwrap_or_else(Rational::zero);
    let two_lengths = r0_norms.len() > 1;
    let mut short_set = Vec::new();
    let mut long_set = Vec::new();
    for &w in &weights_by_eps[0] {
        let is_short = if two_lengths {
            norms[w] == min_norm
        } else {
            a_even
        };
        if is_short {
            short_set.push(restricted[w].clone());
        } else {
            long_set.push(restricted[w].clone());
        }
    }
    let doubled: Vec<Root> = restricted
        .iter()
        .filter(|eta| {
            eta.iter().all(|x| x % 2 == 0) && {
                let half: Root = eta.iter().map(|x| x / 2).collect();
                widx.contains_key(&half)
            }
        })
        .cloned()
        .collect();

    let short_simple: Vec<bool> = (0..vertex_orbits.len())
        .map(|o| {
            let mut mu = vec![0; vertex_orbits.len()];
            mu[o] = 1;
            short_set.contains(&mu)
        })
        .collect();
    let cartan: Vec<Vec<i64>> = (0..vertex_orbits.len())
        .map(|i| {
            let scale = if a_even && short_simple[i] { 2 } else { 1 };
            (0..vertex_orbits.len())
                .map(|j| {
                    let rep = rd.simple_root(vertex_orbits[j][0]);
                    scale
                        * vertex_orbits[i]
                            .iter()
                            .map(|&l| rd.eval_coroot(&rep, l))
                            .sum::<i64>()
                })
                .collect()
        })
        .collect();

    FoldedDatum {
        k,
        vertex_orbits,
        vertex_orbit_of,
        restricted,
        restricted_positive,
        short_set,
        long_set,
        doubled,
        orbit_map,
        fibers,
        weights_by_eps,
        cartan,
        norms,
        a_even,
    }
}

impl FoldedDatum {
    pub fn rank0(&self) -> usize {
        self.vertex_orbits.len()
    }

    pub fn weight_index(&self, mu: &[i64]) -> Option<usize> {
        self.restricted.iter().position(|r| r == mu)
    }

    pub fn is_weight_of(&self, mu: &[i64], eps: usize) -> bool {
        self.weight_index(mu)
            .map(|w| self.weights_by_eps[eps].contains(&w))
            .unwrap_or(false)
    }

    pub fn is_short(&self, mu: &[i64]) -> bool {
        self.short_set.iter().any(|s| s == mu)
    }

    pub fn is_doubled(&self, mu: &[i64]) -> bool {
        self.doubled.iter().any(|s| s == mu)
    }

    /// The simple restricted root `μ_i`.
    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank0()];
        v[i] = 1;
        v
    }
}

/// Expected folded Cartan matrices (convention `A[i][j] = α_j(h_i)`).
pub fn classical_cartan(name: &str) -> Option<Vec<Vec<i64>>> {
    let m = match name {
        "A1" => vec![vec![2]],
        "B2" => vec![vec![2, -1], vec![-2, 2]],
        "C2" => vec![vec![2, -2], vec![-1, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        "G2" => vec![vec![2, -3], vec![-1, 2]],
        "F4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ],
        _ => return None,
    };
    Some(m)
}

/// True when `a` equals `b` after a simultaneous permutation of rows and columns.
pub fn cartan_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    fn search(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.len();
        if perm.len() == n {
            return (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]]));
        }
        for c in 0..n {
            if !used[c] {
                used[c] = true;
                perm.push(c);
                if search(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
        }
        false
    }
    search(a, b, &mut Vec::new(), &mut vec![false; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_roots() {
        let rd = build_root_system(TypeLabel::A, 2).unwrap();
        assert_eq!(rd.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn classical_counts() {
        for n in 1..=6 {
            let rd = build_root_system(TypeLabel::A, n).unwrap();
            assert_eq!(rd.num_positive(), n * (n + 1) / 2);
        }
        for n in 4..=6 {
            let rd = build_root_system(TypeLabel::D, n).unwrap();
            assert_eq!(rd.num_positive(), n * (n - 1));
        }
        assert_eq!(build_root_system(TypeLabel::E, 6).unwrap().num_positive(), 36);
    }

    #[test]
    fn unsupported_types() {
        assert!(build_root_system(TypeLabel::D, 3).is_err());
        assert!(build_root_system(TypeLabel::E, 7).is_err());
        assert!(build_root_system(TypeLabel::A, 0).is_err());
    }

    #[test]
    fn closure_is_complete() {
        let rd = build_root_system(TypeLabel::D, 5).unwrap();
        for a in &rd.positive_roots {
            for b in &rd.positive_roots {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                // simply-laced: α + β is a root iff (α, β) = −1
                assert_eq!(rd.is_positive_root(&s), rd.form(a, b) == -1);
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let rd = build_root_system(TypeLabel::A, 3).unwrap();
        let s = DiagramAut::standard(&rd, 2).unwrap();
        assert_eq!(sigma_on_roots(&rd, &s, &[1, 1, 0]).unwrap(), vec![0, 1, 1]);
        assert_eq!(sigma_on_roots(&rd, &s, &[0, 1, 0]).unwrap(), vec![0, 1, 0]);
        assert!(matches!(
            sigma_on_roots(&rd, &s, &[1, 0, 1]),
            Err(Error::NotARoot(_))
        ));
        let d4 = build_root_system(TypeLabel::D, 4).unwrap();
        let t = DiagramAut::standard(&d4, 3).unwrap();
        // oracle: apply the permutation twice and collect distinct images
        let a1 = d4.simple_root(0);
        let mut imgs = BTreeSet::new();
        imgs.insert(a1.clone());
        let b = t.apply(&a1);
        imgs.insert(b.clone());
        imgs.insert(t.apply(&b));
        assert_eq!(imgs.len(), 3);
        assert_eq!(root_orbit(&t, &a1).len(), 3);
    }

    #[test]
    fn automorphism_validation() {
        let rd = build_root_system(TypeLabel::A, 3).unwrap();
        assert!(DiagramAut::new(&rd, vec![1, 0, 2]).is_err());
        assert!(matches!(
            DiagramAut::new(&rd, vec![0, 1, 2]),
            Err(Error::Unsupported(_))
        ));
        assert!(DiagramAut::standard(&rd, 3).is_err());
    }

    #[test]
    fn fold_a3() {
        let rd = build_root_system(TypeLabel::A, 3).unwrap();
        let f = fold(&rd, &DiagramAut::standard(&rd, 2).unwrap());
        assert_eq!(f.restricted_positive.len(), 4);
        assert!(cartan_equivalent(&f.cartan, &classical_cartan("C2").unwrap()));
        assert_eq!(f.short_set.len(), 2);
        assert_eq!(f.long_set.len(), 2);
    }

    #[test]
    fn fold_a2_bc1_pattern() {
        let rd = build_root_system(TypeLabel::A, 2).unwrap();
        let f = fold(&rd, &DiagramAut::standard(&rd, 2).unwrap());
        assert_eq!(f.restricted, vec![vec![1], vec![2]]);
        // α₁(h₁+h₂) = 1, θ(h₁+h₂) = 2
        let h = |a: &[i64]| rd.eval_coroot(a, 0) + rd.eval_coroot(a, 1);
        assert_eq!(h(&[1, 0]), 1);
        assert_eq!(h(&[0, 1]), 1);
        assert_eq!(h(&[1, 1]), 2);
        assert_eq!(f.doubled, vec![vec![2]]);
        assert_eq!(f.short_set, vec![vec![1]]);
        assert!(cartan_equivalent(&f.cartan, &classical_cartan("A1").unwrap()));
    }

    #[test]
    fn fold_d4_triality() {
        let rd = build_root_system(TypeLabel::D, 4).unwrap();
        let f = fold(&rd, &DiagramAut::standard(&rd, 3).unwrap());
        assert_eq!(f.restricted_positive.len(), 6);
        assert!(cartan_equivalent(&f.cartan, &classical_cartan("G2").unwrap()));
    }

    #[test]
    fn fibers_are_orbits() {
        for (t, n, k) in [
            (TypeLabel::A, 3, 2),
            (TypeLabel::A, 4, 2),
            (TypeLabel::D, 4, 2),
            (TypeLabel::D, 4, 3),
            (TypeLabel::E, 6, 2),
        ] {
            let rd = build_root_system(t, n).unwrap();
            let s = DiagramAut::standard(&rd, k).unwrap();
            let f = fold(&rd, &s);
            for fiber in &f.fibers {
                let orbit: BTreeSet<Root> =
                    root_orbit(&s, &rd.positive_roots[fiber[0]]).into_iter().collect();
                let got: BTreeSet<Root> =
                    fiber.iter().map(|&i| rd.positive_roots[i].clone()).collect();
                assert_eq!(orbit, got);
            }
            for a in &rd.positive_roots {
                assert_eq!(height(&s.apply(a)), height(a));
            }
            for &(_, ka) in &f.orbit_map {
                assert!(ka == 1 || ka == k as usize);
            }
        }
    }
}
