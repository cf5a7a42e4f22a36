//! Chevalley basis `{x_α^±, h_i}` of a simply-laced simple Lie algebra with
//! integer structure constants, and the diagram automorphism σ on it.
//!
//! The bracket is first realized through a bimultiplicative sign cocycle on the
//! root lattice, then every root vector pair `x_ξ^±` is rescaled by ±1 so that
//! the extraspecial pair of ξ has structure constant +1. When σ is attached the
//! non-fixed orbits are rescaled once more so that `σ(x_α^±) = x_{σα}^±`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::roots::{root_order_key, DiagramAut, Root, RootDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChevSymbol {
    XPlus(usize),
    XMinus(usize),
    H(usize),
}

/// Sparse integer vector over Chevalley basis indices.
pub type IntVec = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct ChevalleyTable {
    pub rd: RootDatum,
    num_pos: usize,
    dim: usize,
    table: Vec<Vec<IntVec>>,
    /// σ on basis indices: `index ↦ (image index, ±1)`.
    sigma: Option<Vec<(usize, i64)>>,
    sigma_aut: Option<DiagramAut>,
    /// Signs `c_α` with `σ(x_α^±) = c_α x_{σα}^±` after normalization.
    sigma_signs: Vec<i64>,
}

fn add_into(acc: &mut BTreeMap<usize, i64>, idx: usize, c: i64) {
    let e = acc.entry(idx).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&idx);
    }
}

impl ChevalleyTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_positive(&self) -> usize {
        self.num_pos
    }

    pub fn rank(&self) -> usize {
        self.rd.rank
    }

    pub fn index(&self, s: ChevSymbol) -> usize {
        match s {
            ChevSymbol::XPlus(a) => a,
            ChevSymbol::XMinus(a) => self.num_pos + a,
            ChevSymbol::H(i) => 2 * self.num_pos + i,
        }
    }

    pub fn symbol(&self, idx: usize) -> ChevSymbol {
        let p = self.num_pos;
        if idx < p {
            ChevSymbol::XPlus(idx)
        } else if idx < 2 * p {
            ChevSymbol::XMinus(idx - p)
        } else {
            ChevSymbol::H(idx - 2 * p)
        }
    }

    /// Root-lattice weight of a basis vector (zero for Cartan elements).
    pub fn weight(&self, idx: usize) -> Root {
        match self.symbol(idx) {
            ChevSymbol::XPlus(a) => self.rd.positive_roots[a].clone(),
            ChevSymbol::XMinus(a) => self.rd.positive_roots[a].iter().map(|x| -x).collect(),
            ChevSymbol::H(_) => vec![0; self.rd.rank],
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &IntVec {
        &self.table[i][j]
    }

    /// Bilinear bracket of rational combinations.
    pub fn bracket(
        &self,
        a: &BTreeMap<usize, Rational>,
        b: &BTreeMap<usize, Rational>,
    ) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&i, ca) in a {
            for (&j, cb) in b {
                let cc = ca * cb;
                for &(l, n) in &self.table[i][j] {
                    let e = out.entry(l).or_insert_with(Rational::zero);
                    *e += &(&cc * &Rational::integer(n));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `h_α` expanded over `{h_i}` (coefficient vector indexed by vertex).
    pub fn coroot(&self, a: usize) -> Vec<i64> {
        self.rd.positive_roots[a].clone()
    }

    pub fn sigma(&self) -> Option<&[(usize, i64)]> {
        self.sigma.as_deref()
    }

    pub fn sigma_aut(&self) -> Option<&DiagramAut> {
        self.sigma_aut.as_ref()
    }

    pub fn sigma_sign(&self, a: usize) -> i64 {
        self.sigma_signs[a]
    }

    /// Apply σ to an integer vector.
    pub fn apply_sigma(&self, v: &IntVec) -> IntVec {
        let s = self.sigma.as_ref().expect("σ not attached");
        let mut acc = BTreeMap::new();
        for &(i, c) in v {
            let (j, sg) = s[i];
            add_into(&mut acc, j, c * sg);
        }
        acc.into_iter().collect()
    }

    pub fn bracket_int(&self, a: &IntVec, b: &IntVec) -> IntVec {
        let mut acc = BTreeMap::new();
        for &(i, ca) in a {
            for &(j, cb) in b {
                for &(l, n) in &self.table[i][j] {
                    add_into(&mut acc, l, ca * cb * n);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Rescale root vectors `x_α^± ↦ d_α x_α^±` (d = ±1), preserving `[x^+, x^−] = h_α`.
    fn rescale(&mut self, d: &[i64]) {
        let p = self.num_pos;
        let scale = |idx: usize| -> i64 {
            if idx < p {
                d[idx]
            } else if idx < 2 * p {
                d[idx - p]
            } else {
                1
            }
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                let si = scale(i) * scale(j);
                for (l, c) in self.table[i][j].iter_mut() {
                    *c *= si * scale(*l);
                }
            }
        }
    }

    fn structure_constant(&self, a: usize, b: usize, target: usize) -> i64 {
        self.table[a][b]
            .iter()
            .find(|&&(l, _)| l == target)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    /// `N_{α,β}` for positive roots with `α + β` a positive root.
    pub fn n_plus(&self, a: usize, b: usize) -> i64 {
        let sum: Vec<i64> = self.rd.positive_roots[a]
            .iter()
            .zip(&self.rd.positive_roots[b])
            .map(|(x, y)| x + y)
            .collect();
        match self.rd.index_of(&sum) {
            Some(c) => self.structure_constant(a, b, c),
            None => 0,
        }
    }

    /// The extraspecial pair of a non-simple positive root: `(α, ξ − α)` with α
    /// minimal in the canonical root order.
    pub fn extraspecial_pair(&self, xi: usize) -> Option<(usize, usize)> {
        let roots = &self.rd.positive_roots;
        for (a, alpha) in roots.iter().enumerate() {
            let diff: Vec<i64> = roots[xi].iter().zip(alpha).map(|(x, y)| x - y).collect();
            if let Some(b) = self.rd.index_of(&diff) {
                return Some((a, b));
            }
        }
        None
    }

    /// Structure table as JSON-serializable rows.
    pub fn export(&self) -> ChevalleyExport {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let r = &self.table[i][j];
                if !r.is_empty() {
                    brackets.push(BracketRow {
                        a: self.name(i),
                        b: self.name(j),
                        result: r.iter().map(|&(l, c)| (self.name(l), c)).collect(),
                    });
                }
            }
        }
        ChevalleyExport {
            type_label: format!("{}{}", self.rd.type_label, self.rd.rank),
            root_order: "height, then lexicographic with larger leading coordinate first"
                .into(),
            sign_convention: "extraspecial pairs positive".into(),
            brackets,
            sigma: self.sigma.as_ref().map(|s| {
                s.iter()
                    .enumerate()
                    .map(|(i, &(j, c))| (self.name(i), self.name(j), c))
                    .collect()
            }),
        }
    }

    pub fn name(&self, idx: usize) -> String {
        match self.symbol(idx) {
            ChevSymbol::XPlus(a) => format!("x+{:?}", self.rd.positive_roots[a]),
            ChevSymbol::XMinus(a) => format!("x-{:?}", self.rd.positive_roots[a]),
            ChevSymbol::H(i) => format!("h{}", i + 1),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BracketRow {
    pub a: String,
    pub b: String,
    pub result: Vec<(String, i64)>,
}

#[derive(Debug, Serialize)]
pub struct ChevalleyExport {
    pub type_label: String,
    pub root_order: String,
    pub sign_convention: String,
    pub brackets: Vec<BracketRow>,
    pub sigma: Option<Vec<(String, String, i64)>>,
}

/// Sign cocycle `ε(α, β) = ∏ ε(α_i, α_j)^{a_i b_j}` with `ε(α_i, α_j) = −1` iff
/// `i = j` or (`i < j` and i, j adjacent).
fn cocycle(rd: &RootDatum, a: &[i64], b: &[i64]) -> i64 {
    let mut parity = 0i64;
    for i in 0..rd.rank {
        for j in 0..rd.rank {
            if i == j || (i < j && rd.cartan_matrix[i][j] == -1) {
                parity += a[i] * b[j];
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Builds the Chevalley structure table of the simply-laced algebra of `rd`.
pub fn build_chevalley(rd: &RootDatum) -> ChevalleyTable {
    let p = rd.num_positive();
    let n = rd.rank;
    let dim = 2 * p + n;
    // basis vector → (signed root γ, coefficient c) meaning c·E_γ; None for Cartan
    let as_e = |idx: usize| -> Option<(Root, i64)> {
        if idx < p {
            Some((rd.positive_roots[idx].clone(), 1))
        } else if idx < 2 * p {
            Some((rd.positive_roots[idx - p].iter().map(|x| -x).collect(), -1))
        } else {
            None
        }
    };
    // c·E_γ → basis
    let from_e = |gamma: &[i64], c: i64| -> (usize, i64) {
        if let Some(a) = rd.index_of(gamma) {
            (a, c)
        } else {
            let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
            (p + rd.index_of(&neg).expect("root"), -c)
        }
    };

    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = BTreeMap::new();
            match (as_e(i), as_e(j)) {
                (None, None) => {}
                (None, Some((g, c))) => {
                    let v = rd.eval_coroot(&g, i - 2 * p);
                    if v != 0 {
                        let (l, s) = from_e(&g, c * v);
                        add_into(&mut acc, l, s);
                    }
                }
                (Some((g, c)), None) => {
                    let v = rd.eval_coroot(&g, j - 2 * p);
                    if v != 0 {
                        let (l, s) = from_e(&g, -c * v);
                        add_into(&mut acc, l, s);
                    }
                }
                (Some((g1, c1)), Some((g2, c2))) => {
                    let sum: Vec<i64> = g1.iter().zip(&g2).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) {
                        // [E_α, E_{−α}] = −α, as a coroot combination
                        for (v, &a) in g1.iter().enumerate() {
                            if a != 0 {
                                add_into(&mut acc, 2 * p + v, -c1 * c2 * a);
                            }
                        }
                    } else if rd.is_root(&sum) {
                        let (l, s) = from_e(&sum, c1 * c2 * cocycle(rd, &g1, &g2));
                        add_into(&mut acc, l, s);
                    }
                }
            }
            table[i][j] = acc.into_iter().collect();
        }
    }

    let mut ct = ChevalleyTable {
        rd: rd.clone(),
        num_pos: p,
        dim,
        table,
        sigma: None,
        sigma_aut: None,
        sigma_signs: vec![1; p],
    };

    // extraspecial normalization, by increasing height
    let mut d = vec![1i64; p];
    for xi in 0..p {
        if let Some((a, b)) = ct.extraspecial_pair(xi) {
            let nab = ct.structure_constant(a, b, xi);
            d[xi] = d[a] * d[b] * nab.signum();
        }
    }
    ct.rescale(&d);
    ct
}

/// Attaches σ: computes `σ(x_α^±) = c_α x_{σα}^±` by height induction, rescales
/// every non-fixed orbit so that `c_α = +1` there, and checks that the result is
/// an automorphism.
pub fn extend_sigma(ct: &ChevalleyTable, sigma: &DiagramAut) -> Result<ChevalleyTable> {
    let rd = &ct.rd;
    let p = ct.num_pos;
    let image = |a: usize| -> usize { rd.index_of(&sigma.apply(&rd.positive_roots[a])).unwrap() };

    let compute_signs = |t: &ChevalleyTable| -> Result<Vec<i64>> {
        let mut c = vec![0i64; p];
        for xi in 0..p {
            let root = &rd.positive_roots[xi];
            if root.iter().sum::<i64>() == 1 {
                c[xi] = 1;
                continue;
            }
            let (i, beta) = (0..rd.rank)
                .find_map(|i| {
                    let mut v = root.clone();
                    v[i] -= 1;
                    rd.index_of(&v).map(|b| (i, b))
                })
                .ok_or_else(|| Error::Internal("no simple decomposition".into()))?;
            let si = rd.index_of(&rd.simple_root(i)).unwrap();
            let n1 = t.structure_constant(si, beta, xi);
            let n2 = t.structure_constant(image(si), image(beta), image(xi));
            if n1 == 0 || n2 == 0 {
                return Err(Error::Internal("vanishing structure constant".into()));
            }
            c[xi] = c[beta] * n1 * n2;
        }
        Ok(c)
    };

    let c = compute_signs(ct)?;
    let mut d = vec![0i64; p];
    for a in 0..p {
        if d[a] != 0 {
            continue;
        }
        // walk the orbit from its smallest member
        d[a] = 1;
        let mut cur = a;
        loop {
            let next = image(cur);
            if next == a {
                break;
            }
            d[next] = d[cur] * c[cur];
            cur = next;
        }
    }
    let mut out = ct.clone();
    out.rescale(&d);
    let c = compute_signs(&out)?;
    for a in 0..p {
        if image(a) != a && c[a] != 1 {
            return Err(Error::Internal("orbit rescaling failed".into()));
        }
    }
    let mut map = vec![(0usize, 0i64); out.dim];
    for a in 0..p {
        map[a] = (image(a), c[a]);
        map[p + a] = (p + image(a), c[a]);
    }
    for i in 0..rd.rank {
        map[2 * p + i] = (2 * p + sigma.apply_vertex(i), 1);
    }
    out.sigma = Some(map);
    out.sigma_aut = Some(sigma.clone());
    out.sigma_signs = c;
    if !sigma_homomorphism_failures(&out).is_empty() {
        return Err(Error::Internal("σ extension is not an automorphism".into()));
    }
    Ok(out)
}

/// Basis pairs `(i, j)` where `σ[a,b] ≠ [σa, σb]`.
pub fn sigma_homomorphism_failures(ct: &ChevalleyTable) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..ct.dim {
        for j in 0..ct.dim {
            let lhs = ct.apply_sigma(&ct.table[i][j]);
            let rhs = ct.bracket_int(&ct.apply_sigma(&vec![(i, 1)]), &ct.apply_sigma(&vec![(j, 1)]));
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// True iff `σ^k` is the identity on the basis.
pub fn sigma_order_holds(ct: &ChevalleyTable, k: u32) -> bool {
    (0..ct.dim).all(|i| {
        let mut v = vec![(i, 1)];
        for _ in 0..k {
            v = ct.apply_sigma(&v);
        }
        v == vec![(i, 1)]
    })
}

/// Outcome of a family of checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckCount {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl CheckCount {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for CheckCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked, {} failed", self.checked, self.failures.len())
    }
}

fn jacobi_triple(ct: &ChevalleyTable, i: usize, j: usize, l: usize) -> bool {
    let (a, b, c) = (vec![(i, 1)], vec![(j, 1)], vec![(l, 1)]);
    let t1 = ct.bracket_int(&a, &ct.bracket_int(&b, &c));
    let t2 = ct.bracket_int(&b, &ct.bracket_int(&c, &a));
    let t3 = ct.bracket_int(&c, &ct.bracket_int(&a, &b));
    let mut acc = BTreeMap::new();
    for (idx, v) in t1.into_iter().chain(t2).chain(t3) {
        add_into(&mut acc, idx, v);
    }
    acc.is_empty()
}

/// Jacobi identity on every basis triple.
pub fn check_jacobi_exhaustive(ct: &ChevalleyTable) -> CheckCount {
    let mut out = CheckCount::default();
    for i in 0..ct.dim {
        for j in i..ct.dim {
            for l in j..ct.dim {
                out.record(jacobi_triple(ct, i, j, l), || {
                    format!("Jacobi({}, {}, {})", ct.name(i), ct.name(j), ct.name(l))
                });
            }
        }
    }
    out
}

/// Jacobi identity on `samples` random basis triples.
pub fn check_jacobi_sampled(ct: &ChevalleyTable, samples: usize, seed: u64) -> CheckCount {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckCount::default();
    for _ in 0..samples {
        let (i, j, l) = (
            rng.gen_range(0..ct.dim),
            rng.gen_range(0..ct.dim),
            rng.gen_range(0..ct.dim),
        );
        out.record(jacobi_triple(ct, i, j, l), || {
            format!("Jacobi({}, {}, {})", ct.name(i), ct.name(j), ct.name(l))
        });
    }
    out
}

/// Antisymmetry, the Chevalley relations and `|N_{α,β}| = p + 1`, the last
/// with `p` recomputed from root strings.
pub fn check_chevalley_axioms(ct: &ChevalleyTable) -> CheckCount {
    let mut out = CheckCount::default();
    let rd = &ct.rd;
    let p = ct.num_pos;
    for i in 0..ct.dim {
        for j in 0..ct.dim {
            let neg: IntVec = ct.table[j][i].iter().map(|&(l, c)| (l, -c)).collect();
            out.record(ct.table[i][j] == neg, || {
                format!("antisymmetry({}, {})", ct.name(i), ct.name(j))
            });
        }
    }
    for a in 0..p {
        let expect: IntVec = rd.positive_roots[a]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (2 * p + v, c))
            .collect();
        out.record(ct.table[a][p + a] == expect, || {
            format!("[x+, x-] = h_alpha for {:?}", rd.positive_roots[a])
        });
    }
    for i in 0..rd.rank {
        for (j, alpha) in rd.positive_roots.iter().enumerate() {
            let v = rd.eval_coroot(alpha, i);
            let expect_plus: IntVec = if v == 0 { vec![] } else { vec![(j, v)] };
            let expect_minus: IntVec = if v == 0 { vec![] } else { vec![(p + j, -v)] };
            out.record(ct.table[2 * p + i][j] == expect_plus, || {
                format!("[h{}, x+{:?}]", i + 1, alpha)
            });
            out.record(ct.table[2 * p + i][p + j] == expect_minus, || {
                format!("[h{}, x-{:?}]", i + 1, alpha)
            });
        }
    }
    // all pairs of signed roots
    let signed: Vec<(usize, Root)> = (0..2 * p).map(|i| (i, ct.weight(i))).collect();
    for (i, a) in &signed {
        for (j, b) in &signed {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&x| x == 0) {
                continue;
            }
            let res = &ct.table[*i][*j];
            if rd.is_root(&sum) {
                let pp = rd.string_down(a, b);
                let ok = res.len() == 1 && res[0].1.abs() == pp + 1 && ct.weight(res[0].0) == sum;
                out.record(ok, || format!("|N| = p+1 for ({a:?}, {b:?})"));
            } else {
                out.record(res.is_empty(), || format!("[x_{a:?}, x_{b:?}] should vanish"));
            }
        }
    }
    out
}

/// Signs of the extraspecial pairs; all must be +1.
pub fn extraspecial_signs(ct: &ChevalleyTable) -> Vec<(Root, i64)> {
    let mut v: Vec<(Root, i64)> = (0..ct.num_pos)
        .filter_map(|xi| {
            ct.extraspecial_pair(xi)
                .map(|(a, b)| (ct.rd.positive_roots[xi].clone(), ct.structure_constant(a, b, xi)))
        })
        .collect();
    v.sort_by_key(|(r, _)| root_order_key(r));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, TypeLabel};

    fn a2() -> ChevalleyTable {
        build_chevalley(&build_root_system(TypeLabel::A, 2).unwrap())
    }

    #[test]
    fn a2_simple_bracket() {
        let ct = a2();
        let r = ct.bracket_basis(0, 1);
        // p = 0, so |N| = 1; extraspecial pair (α₁, α₂) is positive
        assert_eq!(r, &vec![(2, 1)]);
    }

    #[test]
    fn a2_coroot_additivity() {
        let ct = a2();
        let p = ct.num_positive();
        assert_eq!(ct.bracket_basis(2, p + 2), &vec![(2 * p, 1), (2 * p + 1, 1)]);
    }

    #[test]
    fn cartan_action_on_simple() {
        for (t, n) in [(TypeLabel::A, 3), (TypeLabel::D, 4)] {
            let rd = build_root_system(t, n).unwrap();
            let ct = build_chevalley(&rd);
            let p = ct.num_positive();
            for i in 0..n {
                for j in 0..n {
                    let a = rd.index_of(&rd.simple_root(j)).unwrap();
                    let c = rd.cartan_matrix[j][i];
                    let expect = if c == 0 { vec![] } else { vec![(a, c)] };
                    assert_eq!(ct.bracket_basis(2 * p + i, a), &expect);
                }
            }
        }
    }

    #[test]
    fn combination_bracket() {
        let ct = a2();
        let p = ct.num_positive();
        let mut a = BTreeMap::new();
        a.insert(0, Rational::one());
        a.insert(1, Rational::one());
        let mut b = BTreeMap::new();
        b.insert(p, Rational::one());
        let r = ct.bracket(&a, &b);
        let mut expect = BTreeMap::new();
        expect.insert(2 * p, Rational::one());
        assert_eq!(r, expect);
        let mut h1 = BTreeMap::new();
        h1.insert(2 * p, Rational::one());
        let mut h2 = BTreeMap::new();
        h2.insert(2 * p + 1, Rational::one());
        assert!(ct.bracket(&h1, &h2).is_empty());
        for i in 0..ct.dim() {
            let mut x = BTreeMap::new();
            x.insert(i, Rational::one());
            assert!(ct.bracket(&x, &x).is_empty());
        }
    }

    #[test]
    fn axioms_and_jacobi_small() {
        for (t, n) in [(TypeLabel::A, 2), (TypeLabel::A, 3), (TypeLabel::D, 4)] {
            let ct = build_chevalley(&build_root_system(t, n).unwrap());
            assert!(check_chevalley_axioms(&ct).pass());
            assert!(check_jacobi_exhaustive(&ct).pass());
            assert!(extraspecial_signs(&ct).iter().all(|(_, s)| *s == 1));
        }
    }

    #[test]
    fn sigma_a2_fixed_root_sign() {
        let rd = build_root_system(TypeLabel::A, 2).unwrap();
        let s = DiagramAut::standard(&rd, 2).unwrap();
        let ct = extend_sigma(&build_chevalley(&rd), &s).unwrap();
        assert_eq!(ct.sigma_sign(0), 1);
        // σ[x₁, x₂] = [x₂, x₁] = −[x₁, x₂]
        assert_eq!(ct.sigma_sign(2), -1);
        assert!(sigma_order_holds(&ct, 2));
    }

    #[test]
    fn sigma_a3_normalized() {
        let rd = build_root_system(TypeLabel::A, 3).unwrap();
        let s = DiagramAut::standard(&rd, 2).unwrap();
        let ct = extend_sigma(&build_chevalley(&rd), &s).unwrap();
        for (a, r) in rd.positive_roots.iter().enumerate() {
            if s.apply(r) != *r {
                assert_eq!(ct.sigma_sign(a), 1);
            }
        }
        assert!(sigma_homomorphism_failures(&ct).is_empty());
    }
}
