//! The σ-eigenspace decomposition 𝔤 = ⊕ 𝔤_ε and the twisted basis 𝒞^σ(O).
//!
//! Every twisted symbol is embedded in 𝔤 with coefficients in ℚ, ℚ(√2) (type
//! A_{2n}) or ℚ(ω) (k = 3). Each symbol is supported on a single σ-orbit of
//! Chevalley basis vectors, so re-expressing a vector of 𝔤 in the twisted basis
//! is a small per-orbit linear solve; the inverses are computed once.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::chevalley::{build_chevalley, extend_sigma, ChevSymbol, ChevalleyTable};
use crate::error::{Error, Result};
use crate::exact::{primitive_root_of_unity, ExtScalar, FieldTag, Rational};
use crate::roots::{
    build_root_system, fold, root_orbit, DiagramAut, FoldedDatum, Root, RootDatum, TypeLabel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A symbol of 𝒞^σ(O): `x_{μ,ε}^±` (μ by index into the folded weight list) or `h_{i,ε}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TwistedSymbol {
    X { sign: Sign, weight: usize, eps: usize },
    H { i: usize, eps: usize },
}

impl TwistedSymbol {
    pub fn eps(&self) -> usize {
        match *self {
            TwistedSymbol::X { eps, .. } | TwistedSymbol::H { eps, .. } => eps,
        }
    }
}

/// How orbit representatives are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum OrbitRepChoice {
    /// Smallest root of each orbit; D₄/k=3 uses `O_i` with the smallest non-fixed vertex.
    #[default]
    Default,
    /// Largest root of each orbit; D₄/k=3 uses `O_i` with the largest non-fixed vertex.
    Alternate,
}

/// A complete set of σ-orbit representatives on R⁺, one per restricted weight.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRepSet {
    pub choice: OrbitRepChoice,
    /// Representative root index for each folded weight.
    pub reps: Vec<usize>,
}

type Block = (Vec<usize>, Vec<usize>, Vec<Vec<ExtScalar>>);

pub struct TwistedTable {
    pub rd: RootDatum,
    pub sigma: DiagramAut,
    pub folded: FoldedDatum,
    pub ct: ChevalleyTable,
    pub k: usize,
    pub tag: FieldTag,
    pub xi: ExtScalar,
    pub reps: OrbitRepSet,
    pub symbols: Vec<TwistedSymbol>,
    index: HashMap<TwistedSymbol, usize>,
    embed: Vec<Vec<ExtScalar>>,
    /// (Chevalley indices, symbol indices, inverse of the embedding block).
    blocks: Vec<Block>,
    block_of: Vec<usize>,
    ext_table: Vec<Vec<Vec<(usize, ExtScalar)>>>,
    int_table: Vec<Vec<Vec<(usize, i64)>>>,
    /// Non-integral bracket coefficients found while building.
    pub violations: Vec<String>,
}

pub type GVec = Vec<ExtScalar>;

fn invert(mut m: Vec<Vec<ExtScalar>>, tag: FieldTag) -> Result<Vec<Vec<ExtScalar>>> {
    let n = m.len();
    let mut inv: Vec<Vec<ExtScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ExtScalar::from_int(tag, (i == j) as i64))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular embedding block".into()))?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let pinv = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &m[col][j] * &f;
                    m[r][j] = &m[r][j] - &a;
                    let b = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &b;
                }
            }
        }
    }
    Ok(inv)
}

impl TwistedTable {
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn zero_vec(&self) -> GVec {
        vec![ExtScalar::zero(self.tag); self.ct.dim()]
    }

    pub fn symbol_index(&self, s: &TwistedSymbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn embedding(&self, idx: usize) -> &GVec {
        &self.embed[idx]
    }

    /// ξ^e for any integer exponent.
    pub fn xi_pow(&self, e: i64) -> ExtScalar {
        self.xi.pow(e.rem_euclid(self.k as i64) as u32)
    }

    pub fn is_a_even(&self) -> bool {
        self.folded.a_even
    }

    pub fn weight(&self, w: usize) -> &Root {
        &self.folded.restricted[w]
    }

    pub fn weight_index(&self, mu: &[i64]) -> Option<usize> {
        self.folded.weight_index(mu)
    }

    /// True iff `μ ∈ wt(𝔤_ε) ∩ Q₀⁺ ∖ {0}`.
    pub fn x_valid(&self, weight: usize, eps: usize) -> bool {
        eps < self.k && self.folded.weights_by_eps[eps].contains(&weight)
    }

    /// True iff `h_{i,ε} ≠ 0`.
    pub fn h_valid(&self, i: usize, eps: usize) -> bool {
        i < self.folded.rank0()
            && eps < self.k
            && (eps == 0 || self.folded.vertex_orbits[i].len() == self.k)
    }

    /// Weight of a symbol in folded coordinates (signed) and its ε.
    pub fn grade(&self, s: &TwistedSymbol) -> (Root, usize) {
        match *s {
            TwistedSymbol::X { sign, weight, eps } => (
                self.folded.restricted[weight]
                    .iter()
                    .map(|x| x * sign.factor())
                    .collect(),
                eps,
            ),
            TwistedSymbol::H { eps, .. } => (vec![0; self.folded.rank0()], eps),
        }
    }

    fn chev_x(&self, sign: Sign, a: usize) -> usize {
        match sign {
            Sign::Plus => self.ct.index(ChevSymbol::XPlus(a)),
            Sign::Minus => self.ct.index(ChevSymbol::XMinus(a)),
        }
    }

    fn orbit_indices(&self, a: usize) -> Vec<usize> {
        root_orbit(&self.sigma, &self.rd.positive_roots[a])
            .iter()
            .map(|r| self.rd.index_of(r).unwrap())
            .collect()
    }

    fn is_short_root(&self, a: usize) -> bool {
        let w = self.folded.orbit_map[a].0;
        self.folded.is_short(&self.folded.restricted[w])
    }

    /// `x_{α,ε}^±` for an arbitrary positive root α (zero → `None`).
    pub fn x_alpha_eps(&self, sign: Sign, a: usize, eps: usize) -> Option<GVec> {
        let orbit = self.orbit_indices(a);
        let mut v = self.zero_vec();
        if self.is_a_even() {
            if orbit.len() == 1 {
                if eps != 1 {
                    return None;
                }
                v[self.chev_x(sign, a)] = ExtScalar::one(self.tag);
            } else {
                let c = if self.is_short_root(a) {
                    ExtScalar::generator(FieldTag::Sqrt2).unwrap()
                } else {
                    ExtScalar::one(self.tag)
                };
                v[self.chev_x(sign, orbit[0])] = c.clone();
                v[self.chev_x(sign, orbit[1])] = if eps % 2 == 0 { c } else { -&c };
            }
        } else {
            if eps >= orbit.len() {
                return None;
            }
            for (j, &b) in orbit.iter().enumerate() {
                v[self.chev_x(sign, b)] = self.xi_pow(-((j * eps) as i64));
            }
        }
        Some(v)
    }

    fn coroot_vec(&self, a: usize, scale: &ExtScalar, v: &mut GVec) {
        for (i, &c) in self.rd.positive_roots[a].iter().enumerate() {
            if c != 0 {
                let idx = self.ct.index(ChevSymbol::H(i));
                v[idx] = &v[idx] + &scale.scale(&Rational::integer(c));
            }
        }
    }

    /// `H_{α,ε}` for an arbitrary positive root (zero → `None`).
    pub fn big_h_alpha_eps(&self, a: usize, eps: usize) -> Option<GVec> {
        let orbit = self.orbit_indices(a);
        let mut v = self.zero_vec();
        if self.is_a_even() {
            if orbit.len() == 1 {
                if eps != 0 {
                    return None;
                }
                self.coroot_vec(a, &ExtScalar::one(self.tag), &mut v);
            } else {
                let c = ExtScalar::from_int(self.tag, if self.is_short_root(a) { 2 } else { 1 });
                self.coroot_vec(orbit[0], &c, &mut v);
                let c2 = if eps % 2 == 0 { c } else { -&c };
                self.coroot_vec(orbit[1], &c2, &mut v);
            }
        } else {
            if eps >= orbit.len() {
                return None;
            }
            for (j, &b) in orbit.iter().enumerate() {
                self.coroot_vec(b, &self.xi_pow(-((j * eps) as i64)), &mut v);
            }
        }
        Some(v)
    }

    /// `h_{μ,ε}` for the folded weight `w` (via its representative in O).
    pub fn h_mu_eps(&self, w: usize, eps: usize) -> Option<GVec> {
        let a = self.reps.reps[w];
        let v = self.big_h_alpha_eps(a, eps)?;
        if self.is_a_even() && self.orbit_indices(a).len() > 1 && self.is_short_root(a) {
            let half = Rational::new(1, 2);
            return Some(v.iter().map(|x| x.scale(&half)).collect());
        }
        Some(v)
    }

    /// The twisted symbol `x_{μ,ε}^±` as a vector of 𝔤.
    pub fn x_mu_eps(&self, sign: Sign, w: usize, eps: usize) -> Option<GVec> {
        if !self.x_valid(w, eps) {
            return None;
        }
        self.x_alpha_eps(sign, self.reps.reps[w], eps)
    }

    pub fn is_zero_vec(v: &GVec) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    pub fn add_vec(&self, a: &GVec, b: &GVec) -> GVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale_vec(&self, a: &GVec, c: &ExtScalar) -> GVec {
        a.iter().map(|x| x * c).collect()
    }

    /// Lie bracket in 𝔤 of two vectors.
    pub fn bracket_vec(&self, a: &GVec, b: &GVec) -> GVec {
        let mut out = self.zero_vec();
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for &(l, n) in self.ct.bracket_basis(i, j) {
                    out[l] = &out[l] + &c.scale(&Rational::integer(n));
                }
            }
        }
        out
    }

    /// Apply σ to a vector of 𝔤.
    pub fn sigma_vec(&self, v: &GVec) -> GVec {
        let s = self.ct.sigma().expect("σ attached");
        let mut out = self.zero_vec();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (j, sg) = s[i];
                out[j] = &out[j] + &c.scale(&Rational::integer(sg));
            }
        }
        out
    }

    /// Coordinates of a vector of 𝔤 in the twisted basis.
    pub fn reexpress(&self, v: &GVec) -> Vec<(usize, ExtScalar)> {
        let mut out = Vec::new();
        for (chev, syms, inv) in &self.blocks {
            if chev.iter().all(|&c| v[c].is_zero()) {
                continue;
            }
            for (r, &s) in syms.iter().enumerate() {
                let mut acc = ExtScalar::zero(self.tag);
                for (c, &ci) in chev.iter().enumerate() {
                    if !v[ci].is_zero() {
                        acc = &acc + &(&inv[r][c] * &v[ci]);
                    }
                }
                if !acc.is_zero() {
                    out.push((s, acc));
                }
            }
        }
        out.sort_by_key(|(s, _)| *s);
        out
    }

    pub fn bracket_ext(&self, i: usize, j: usize) -> &[(usize, ExtScalar)] {
        &self.ext_table[i][j]
    }

    /// Integer structure constants of 𝒞^σ(O).
    pub fn bracket_int(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.int_table[i][j]
    }

    pub fn block_of(&self, chev_idx: usize) -> usize {
        self.block_of[chev_idx]
    }

    /// `wt(𝔤_ε) ∩ Q₀⁺ ∖ {0}`.
    pub fn weights_of(&self, eps: usize) -> Vec<Root> {
        self.folded.weights_by_eps[eps]
            .iter()
            .map(|&w| self.folded.restricted[w].clone())
            .collect()
    }

    /// Text name of a twisted symbol, e.g. `x+[mu1+mu2;1]` or `h[mu1;0]`.
    pub fn symbol_name(&self, s: &TwistedSymbol) -> String {
        match *s {
            TwistedSymbol::X { sign, weight, eps } => {
                format!("x{}[{};{}]", sign, weight_name(&self.folded.restricted[weight]), eps)
            }
            TwistedSymbol::H { i, eps } => format!("h[mu{};{}]", i + 1, eps),
        }
    }

    pub fn render_vec(&self, v: &GVec) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})·{}", self.ct.name(i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Renders a folded weight as a sum of simple restricted roots, e.g. `2mu1+mu2`.
pub fn weight_name(mu: &[i64]) -> String {
    let parts: Vec<String> = mu
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("mu{}", i + 1)
            } else {
                format!("{c}mu{}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Chooses orbit representatives as described by `choice`; for A_{2n} every
/// orbit `{β, σβ}` with `β + σβ ∈ R⁺` takes the member giving `s = +1`.
pub fn choose_orbit_reps(
    rd: &RootDatum,
    sigma: &DiagramAut,
    folded: &FoldedDatum,
    ct: &ChevalleyTable,
    choice: OrbitRepChoice,
) -> OrbitRepSet {
    let mut reps: Vec<usize> = folded
        .fibers
        .iter()
        .map(|f| match choice {
            OrbitRepChoice::Default => *f.iter().min().unwrap(),
            OrbitRepChoice::Alternate => *f.iter().max().unwrap(),
        })
        .collect();
    if rd.is_a_even() {
        for (w, fiber) in folded.fibers.iter().enumerate() {
            if fiber.len() != 2 {
                continue;
            }
            let beta = reps[w];
            let sb = rd.index_of(&sigma.apply(&rd.positive_roots[beta])).unwrap();
            let sum: Vec<i64> = rd.positive_roots[beta]
                .iter()
                .zip(&rd.positive_roots[sb])
                .map(|(x, y)| x + y)
                .collect();
            if rd.is_positive_root(&sum) {
                // x_{β+σβ,1} = −s[x_β, x_σβ] and x_{β+σβ,1} = x_{β+σβ}, so s = −N_{β,σβ}
                if -ct.n_plus(beta, sb) != 1 {
                    reps[w] = sb;
                }
            }
        }
    }
    if rd.type_label == TypeLabel::D && rd.rank == 4 && sigma.order == 3 {
        let fixed_vertex = (0..4).find(|&v| sigma.apply_vertex(v) == v).unwrap();
        let moving: Vec<usize> = (0..4).filter(|&v| v != fixed_vertex).collect();
        let i = match choice {
            OrbitRepChoice::Default => moving[0],
            OrbitRepChoice::Alternate => *moving.last().unwrap(),
        };
        let ai = rd.simple_root(i);
        let aj = rd.simple_root(fixed_vertex);
        let s1 = sigma.apply(&ai);
        let s2 = sigma.apply(&s1);
        let add = |x: &[i64], y: &[i64]| -> Root { x.iter().zip(y).map(|(a, b)| a + b).collect() };
        let o_i = [ai.clone(), add(&aj, &ai), add(&add(&aj, &s1), &s2)];
        for r in o_i {
            let a = rd.index_of(&r).unwrap();
            reps[folded.orbit_map[a].0] = a;
        }
    }
    OrbitRepSet { choice, reps }
}

/// Builds the twisted basis for the standard automorphism of order `k`.
pub fn build_standard(
    type_label: TypeLabel,
    rank: usize,
    k: u32,
    choice: OrbitRepChoice,
) -> Result<TwistedTable> {
    let rd = build_root_system(type_label, rank)?;
    let sigma = DiagramAut::standard(&rd, k)?;
    let ct = extend_sigma(&build_chevalley(&rd), &sigma)?;
    build_twisted(&ct, &sigma, choice)
}

/// Builds 𝒞^σ(O); fails with `IntegralityViolation` if some bracket of two
/// basis symbols has a non-integral coefficient.
pub fn build_twisted(
    ct: &ChevalleyTable,
    sigma: &DiagramAut,
    choice: OrbitRepChoice,
) -> Result<TwistedTable> {
    let tt = build_twisted_unchecked(ct, sigma, choice)?;
    if let Some(v) = tt.violations.first() {
        return Err(Error::IntegralityViolation(v.clone()));
    }
    Ok(tt)
}

/// Like [`build_twisted`], but records integrality violations instead of failing.
pub fn build_twisted_unchecked(
    ct: &ChevalleyTable,
    sigma: &DiagramAut,
    choice: OrbitRepChoice,
) -> Result<TwistedTable> {
    let rd = ct.rd.clone();
    if ct.sigma().is_none() {
        return Err(Error::Internal("σ must be attached to the Chevalley table".into()));
    }
    let folded = fold(&rd, sigma);
    let k = sigma.order as usize;
    let tag = if rd.is_a_even() {
        FieldTag::Sqrt2
    } else if k == 3 {
        FieldTag::Omega
    } else {
        FieldTag::Rational
    };
    let xi = primitive_root_of_unity(sigma.order)?.retag(tag)?;
    let reps = choose_orbit_reps(&rd, sigma, &folded, ct, choice);

    let mut tt = TwistedTable {
        rd,
        sigma: sigma.clone(),
        folded,
        ct: ct.clone(),
        k,
        tag,
        xi,
        reps,
        symbols: Vec::new(),
        index: HashMap::new(),
        embed: Vec::new(),
        blocks: Vec::new(),
        block_of: vec![usize::MAX; ct.dim()],
        ext_table: Vec::new(),
        int_table: Vec::new(),
        violations: Vec::new(),
    };

    let mut symbols = Vec::new();
    for sign in [Sign::Minus, Sign::Plus] {
        for w in 0..tt.folded.restricted.len() {
            for eps in 0..k {
                if tt.x_valid(w, eps) {
                    symbols.push(TwistedSymbol::X { sign, weight: w, eps });
                }
            }
        }
    }
    for i in 0..tt.folded.rank0() {
        for eps in 0..k {
            if tt.h_valid(i, eps) {
                symbols.push(TwistedSymbol::H { i, eps });
            }
        }
    }
    symbols.sort();
    let mut embed = Vec::with_capacity(symbols.len());
    for s in &symbols {
        let v = match *s {
            TwistedSymbol::X { sign, weight, eps } => tt.x_mu_eps(sign, weight, eps),
            TwistedSymbol::H { i, eps } => {
                let w = tt.folded.weight_index(&tt.folded.simple(i)).unwrap();
                tt.h_mu_eps(w, eps)
            }
        }
        .ok_or_else(|| Error::Internal(format!("zero symbol {s:?}")))?;
        embed.push(v);
    }
    tt.index = symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    tt.symbols = symbols;
    tt.embed = embed;

    // blocks: one per orbit of Chevalley basis vectors
    let mut groups: HashMap<(u8, usize), Vec<usize>> = HashMap::new();
    for (si, s) in tt.symbols.iter().enumerate() {
        let key = match *s {
            TwistedSymbol::X { sign, weight, .. } => (sign as u8, weight),
            TwistedSymbol::H { i, .. } => (2u8, i),
        };
        groups.entry(key).or_default().push(si);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort();
    for key in keys {
        let syms = groups[&key].clone();
        let mut chev: Vec<usize> = syms
            .iter()
            .flat_map(|&s| {
                tt.embed[s]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>()
            })
            .collect();
        chev.sort_unstable();
        chev.dedup();
        if chev.len() != syms.len() {
            return Err(Error::Internal(format!(
                "embedding block {key:?} is not square ({} × {})",
                chev.len(),
                syms.len()
            )));
        }
        let m: Vec<Vec<ExtScalar>> = chev
            .iter()
            .map(|&c| syms.iter().map(|&s| tt.embed[s][c].clone()).collect())
            .collect();
        let inv = invert(m, tag)?;
        let b = tt.blocks.len();
        for &c in &chev {
            tt.block_of[c] = b;
        }
        tt.blocks.push((chev, syms, inv));
    }
    if tt.block_of.contains(&usize::MAX) {
        return Err(Error::Internal("twisted basis does not span 𝔤".into()));
    }

    let n = tt.symbols.len();
    let mut ext_table = vec![vec![Vec::new(); n]; n];
    let mut int_table = vec![vec![Vec::new(); n]; n];
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = tt.bracket_vec(&tt.embed[i], &tt.embed[j]);
            let coords = tt.reexpress(&v);
            let mut ints = Vec::with_capacity(coords.len());
            for (s, c) in &coords {
                if c.is_rational_integer() {
                    ints.push((*s, c.to_rational().unwrap().to_i64().unwrap()));
                } else if violations.len() < 50 {
                    violations.push(format!(
                        "[{}, {}] has coefficient {} on {}",
                        tt.symbol_name(&tt.symbols[i]),
                        tt.symbol_name(&tt.symbols[j]),
                        c,
                        tt.symbol_name(&tt.symbols[*s])
                    ));
                }
            }
            ext_table[i][j] = coords;
            int_table[i][j] = ints;
        }
    }
    tt.ext_table = ext_table;
    tt.int_table = int_table;
    tt.violations = violations;
    Ok(tt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> TwistedTable {
        build_standard(TypeLabel::A, 2, 2, OrbitRepChoice::Default).unwrap()
    }

    fn sqrt2() -> ExtScalar {
        ExtScalar::generator(FieldTag::Sqrt2).unwrap()
    }

    #[test]
    fn a2_embedding_of_short_symbol() {
        let tt = a2();
        let w = tt.weight_index(&[1]).unwrap();
        let x = tt.x_mu_eps(Sign::Plus, w, 0).unwrap();
        // x_{μ,0}^+ = √2(x₁^+ + x₂^+)
        let rd = &tt.rd;
        let i1 = rd.index_of(&[1, 0]).unwrap();
        let i2 = rd.index_of(&[0, 1]).unwrap();
        assert_eq!(x[i1], sqrt2());
        assert_eq!(x[i2], sqrt2());
        // h_{μ,0} = h₁ + h₂
        let h = tt.h_mu_eps(w, 0).unwrap();
        let p = tt.ct.num_positive();
        assert_eq!(h[2 * p], ExtScalar::one(tt.tag));
        assert_eq!(h[2 * p + 1], ExtScalar::one(tt.tag));
    }

    #[test]
    fn a2_lemma_constants() {
        let tt = a2();
        let w = tt.weight_index(&[1]).unwrap();
        let xp = tt.symbol_index(&TwistedSymbol::X { sign: Sign::Plus, weight: w, eps: 0 }).unwrap();
        let xm = tt.symbol_index(&TwistedSymbol::X { sign: Sign::Minus, weight: w, eps: 0 }).unwrap();
        let h0 = tt.symbol_index(&TwistedSymbol::H { i: 0, eps: 0 }).unwrap();
        let h1 = tt.symbol_index(&TwistedSymbol::H { i: 0, eps: 1 }).unwrap();
        let xp1 = tt.symbol_index(&TwistedSymbol::X { sign: Sign::Plus, weight: w, eps: 1 }).unwrap();
        assert_eq!(tt.bracket_int(xp, xm), &[(h0, 2)]);
        assert_eq!(tt.bracket_int(h1, xp), &[(xp1, 3)]);
    }

    #[test]
    fn weights_by_eigenspace() {
        let a3 = build_standard(TypeLabel::A, 3, 2, OrbitRepChoice::Default).unwrap();
        assert_eq!(a3.weights_of(0).len(), 4);
        let a2 = a2();
        assert_eq!(a2.weights_of(1), vec![vec![1], vec![2]]);
        let d4 = build_standard(TypeLabel::D, 4, 3, OrbitRepChoice::Default).unwrap();
        // dim 𝔤₁ = 7 = 2·3 + 1
        assert_eq!(d4.weights_of(1).len(), 3);
        assert_eq!(d4.symbols.iter().filter(|s| s.eps() == 1).count(), 7);
    }

    #[test]
    fn basis_sizes_match_dimension() {
        for (t, n, k) in [
            (TypeLabel::A, 2, 2),
            (TypeLabel::A, 3, 2),
            (TypeLabel::A, 4, 2),
            (TypeLabel::D, 4, 2),
            (TypeLabel::D, 4, 3),
        ] {
            let tt = build_standard(t, n, k, OrbitRepChoice::Default).unwrap();
            assert_eq!(tt.dim(), tt.ct.dim());
            assert!(tt.violations.is_empty(), "{:?}", tt.violations);
        }
    }

    #[test]
    fn reexpress_round_trip() {
        let tt = build_standard(TypeLabel::D, 4, 3, OrbitRepChoice::Default).unwrap();
        for i in 0..tt.ct.dim() {
            let mut v = tt.zero_vec();
            v[i] = ExtScalar::one(tt.tag);
            let coords = tt.reexpress(&v);
            let mut back = tt.zero_vec();
            for (s, c) in coords {
                back = tt.add_vec(&back, &tt.scale_vec(tt.embedding(s), &c));
            }
            assert_eq!(back, v);
        }
    }
}
