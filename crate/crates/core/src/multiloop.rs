//! The twisted multiloop algebra 𝒯_m^σ(𝔤): basis symbols `x_{μ,𝐫}^±`, `h_{i,𝐫}`
//! and their brackets. The twisted part of a symbol lives in 𝔤_ε with
//! ε = r₁ mod k, which is always recomputed from the exponent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::roots::{Root, TypeLabel};
use crate::twisted::{build_standard, weight_name, OrbitRepChoice, Sign, TwistedSymbol, TwistedTable};

/// Kind of a loop symbol. Root vectors carry the index of their restricted
/// weight (folded weights are kept in height-then-lex order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LoopKind {
    XMinus(usize),
    H(usize),
    XPlus(usize),
}

impl LoopKind {
    fn block(&self) -> u8 {
        match self {
            LoopKind::XMinus(_) => 0,
            LoopKind::H(_) => 1,
            LoopKind::XPlus(_) => 2,
        }
    }

    pub fn is_cartan(&self) -> bool {
        matches!(self, LoopKind::H(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LoopSymbol {
    kind: LoopKind,
    r: Vec<i64>,
}

impl Ord for LoopSymbol {
    /// x⁻ block < h block < x⁺ block; inside a block by weight (height, lex),
    /// then exponent, then Cartan index.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &LoopSymbol| match s.kind {
            LoopKind::XMinus(w) | LoopKind::XPlus(w) => (s.kind.block(), w, 0usize),
            LoopKind::H(i) => (1, 0, i),
        };
        let (b1, w1, i1) = key(self);
        let (b2, w2, i2) = key(other);
        b1.cmp(&b2)
            .then(w1.cmp(&w2))
            .then_with(|| self.r.cmp(&other.r))
            .then(i1.cmp(&i2))
    }
}

impl PartialOrd for LoopSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LoopSymbol {
    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    pub fn is_cartan(&self) -> bool {
        self.kind.is_cartan()
    }

    /// Same symbol with a different exponent (unchecked; see [`LoopAlgebra::validate`]).
    pub fn with_r(&self, r: Vec<i64>) -> LoopSymbol {
        LoopSymbol { kind: self.kind, r }
    }

    pub fn with_kind(&self, kind: LoopKind) -> LoopSymbol {
        LoopSymbol { kind, r: self.r.clone() }
    }
}

/// A finite linear combination of loop symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LoopElement {
    terms: BTreeMap<LoopSymbol, Rational>,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_symbol(s: LoopSymbol) -> Self {
        let mut e = Self::zero();
        e.add_term(s, Rational::one());
        e
    }

    pub fn add_term(&mut self, s: LoopSymbol, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LoopSymbol, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LoopElement) -> LoopElement {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LoopElement {
        let mut out = LoopElement::zero();
        for (s, d) in self.terms() {
            out.add_term(s.clone(), d * c);
        }
        out
    }
}

#[derive(Serialize)]
struct JsonTerm {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    r: Vec<i64>,
    coeff: String,
}

/// 𝒯_m^σ(𝔤) for one twisted table and a fixed number of variables m.
#[derive(Clone)]
pub struct LoopAlgebra {
    pub tt: Arc<TwistedTable>,
    pub m: usize,
}

impl fmt::Debug for LoopAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopAlgebra({}, m={})", self.tt.instance(), self.m)
    }
}

impl LoopAlgebra {
    pub fn new(tt: Arc<TwistedTable>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Unsupported("m must be at least 1".into()));
        }
        Ok(LoopAlgebra { tt, m })
    }

    /// The standard automorphism of order k on the given type.
    pub fn standard(type_label: TypeLabel, rank: usize, k: u32, m: usize) -> Result<Self> {
        let tt = build_standard(type_label, rank, k, OrbitRepChoice::Default)?;
        Self::new(Arc::new(tt), m)
    }

    pub fn k(&self) -> usize {
        self.tt.k
    }

    pub fn rank0(&self) -> usize {
        self.tt.folded.rank0()
    }

    /// ε = r₁ mod k.
    pub fn eps_of(&self, r: &[i64]) -> usize {
        r[0].rem_euclid(self.k() as i64) as usize
    }

    pub fn weight(&self, w: usize) -> &Root {
        self.tt.weight(w)
    }

    pub fn num_weights(&self) -> usize {
        self.tt.folded.restricted.len()
    }

    fn twisted_of(&self, kind: LoopKind, eps: usize) -> TwistedSymbol {
        match kind {
            LoopKind::XPlus(w) => TwistedSymbol::X { sign: Sign::Plus, weight: w, eps },
            LoopKind::XMinus(w) => TwistedSymbol::X { sign: Sign::Minus, weight: w, eps },
            LoopKind::H(i) => TwistedSymbol::H { i, eps },
        }
    }

    /// Index of the twisted part of a symbol in the twisted basis.
    pub fn twisted_index(&self, s: &LoopSymbol) -> Option<usize> {
        if s.r.len() != self.m {
            return None;
        }
        self.tt.symbol_index(&self.twisted_of(s.kind, self.eps_of(&s.r)))
    }

    pub fn validate(&self, s: &LoopSymbol) -> Result<()> {
        if self.twisted_index(s).is_some() {
            Ok(())
        } else {
            Err(Error::InvalidSymbol(self.render_symbol(s)))
        }
    }

    pub fn symbol(&self, kind: LoopKind, r: Vec<i64>) -> Result<LoopSymbol> {
        let s = LoopSymbol { kind, r };
        self.validate(&s)?;
        Ok(s)
    }

    pub fn x(&self, sign: Sign, mu: &[i64], r: Vec<i64>) -> Result<LoopSymbol> {
        let w = self
            .tt
            .weight_index(mu)
            .ok_or_else(|| Error::InvalidSymbol(format!("{mu:?} is not a restricted weight")))?;
        let kind = match sign {
            Sign::Plus => LoopKind::XPlus(w),
            Sign::Minus => LoopKind::XMinus(w),
        };
        self.symbol(kind, r)
    }

    pub fn h(&self, i: usize, r: Vec<i64>) -> Result<LoopSymbol> {
        self.symbol(LoopKind::H(i), r)
    }

    /// True iff `h_{i,𝐫}` is a nonzero basis element.
    pub fn h_exists(&self, i: usize, r: &[i64]) -> bool {
        self.tt.h_valid(i, self.eps_of(r))
    }

    fn from_twisted(&self, t: &TwistedSymbol, r: Vec<i64>) -> LoopSymbol {
        let kind = match *t {
            TwistedSymbol::X { sign: Sign::Plus, weight, .. } => LoopKind::XPlus(weight),
            TwistedSymbol::X { sign: Sign::Minus, weight, .. } => LoopKind::XMinus(weight),
            TwistedSymbol::H { i, .. } => LoopKind::H(i),
        };
        LoopSymbol { kind, r }
    }

    /// Bracket of two basis symbols with integer structure constants.
    pub fn bracket_symbols(&self, a: &LoopSymbol, b: &LoopSymbol) -> Vec<(LoopSymbol, i64)> {
        let ia = self.twisted_index(a).expect("valid symbol");
        let ib = self.twisted_index(b).expect("valid symbol");
        let r: Vec<i64> = a.r.iter().zip(&b.r).map(|(x, y)| x + y).collect();
        self.tt
            .bracket_int(ia, ib)
            .iter()
            .map(|&(l, c)| {
                let s = self.from_twisted(&self.tt.symbols[l], r.clone());
                debug_assert_eq!(self.tt.symbols[l].eps(), self.eps_of(&r));
                (s, c)
            })
            .collect()
    }

    /// `[x⊗f, y⊗g] = [x,y]⊗fg`, extended bilinearly.
    pub fn loop_bracket(&self, a: &LoopElement, b: &LoopElement) -> LoopElement {
        let mut out = LoopElement::zero();
        for (sa, ca) in a.terms() {
            for (sb, cb) in b.terms() {
                let c = ca * cb;
                for (s, n) in self.bracket_symbols(sa, sb) {
                    out.add_term(s, &c * &Rational::integer(n));
                }
            }
        }
        out
    }

    /// True iff every symbol of `e` is compatible with ε ≡ r₁ (mod k).
    pub fn validate_membership(&self, e: &LoopElement) -> bool {
        e.terms().all(|(s, _)| self.twisted_index(s).is_some())
    }

    /// Grade of a symbol: signed folded weight.
    pub fn symbol_weight(&self, s: &LoopSymbol) -> Root {
        match s.kind {
            LoopKind::XPlus(w) => self.weight(w).clone(),
            LoopKind::XMinus(w) => self.weight(w).iter().map(|x| -x).collect(),
            LoopKind::H(_) => vec![0; self.rank0()],
        }
    }

    pub fn render_exponent(r: &[i64]) -> String {
        format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }

    /// e.g. `x+[mu1+mu2;(1,0)]`, `h[mu1;(2)]`.
    pub fn render_symbol(&self, s: &LoopSymbol) -> String {
        let r = Self::render_exponent(&s.r);
        match s.kind {
            LoopKind::XPlus(w) => format!("x+[{};{r}]", weight_name(self.weight(w))),
            LoopKind::XMinus(w) => format!("x-[{};{r}]", weight_name(self.weight(w))),
            LoopKind::H(i) => format!("h[mu{};{r}]", i + 1),
        }
    }

    pub fn render(&self, e: &LoopElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (s, c)) in e.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a}·"));
            }
            out.push_str(&self.render_symbol(s));
        }
        out
    }

    pub fn to_json(&self, e: &LoopElement) -> serde_json::Value {
        let terms: Vec<JsonTerm> = e
            .terms()
            .map(|(s, c)| {
                let (kind, mu, i) = match s.kind {
                    LoopKind::XPlus(w) => ("x+", Some(self.weight(w).clone()), None),
                    LoopKind::XMinus(w) => ("x-", Some(self.weight(w).clone()), None),
                    LoopKind::H(i) => ("h", None, Some(i + 1)),
                };
                JsonTerm { kind, mu, i, r: s.r.clone(), coeff: c.to_string() }
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }

    /// All basis symbols with exponents in `[-w, w]^m`.
    pub fn symbols_in_window(&self, w: i64) -> Vec<LoopSymbol> {
        let mut exps: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..self.m {
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    (-w..=w).map(move |x| {
                        let mut e2 = e.clone();
                        e2.push(x);
                        e2
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for r in exps {
            for wi in 0..self.num_weights() {
                for kind in [LoopKind::XMinus(wi), LoopKind::XPlus(wi)] {
                    if let Ok(s) = self.symbol(kind, r.clone()) {
                        out.push(s);
                    }
                }
            }
            for i in 0..self.rank0() {
                if let Ok(s) = self.h(i, r.clone()) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn configs(m: usize) -> Vec<LoopAlgebra> {
        [
            (TypeLabel::A, 2, 2),
            (TypeLabel::A, 3, 2),
            (TypeLabel::A, 4, 2),
            (TypeLabel::D, 4, 2),
            (TypeLabel::D, 4, 3),
        ]
        .into_iter()
        .map(|(t, n, k)| LoopAlgebra::standard(t, n, k, m).unwrap())
        .collect()
    }

    #[test]
    fn a3_bracket_example() {
        let alg = LoopAlgebra::standard(TypeLabel::A, 3, 2, 1).unwrap();
        let xp = alg.x(Sign::Plus, &[1, 0], vec![0]).unwrap();
        let xm = alg.x(Sign::Minus, &[1, 0], vec![1]).unwrap();
        let b = alg.loop_bracket(&LoopElement::from_symbol(xp), &LoopElement::from_symbol(xm));
        assert_eq!(alg.render(&b), "h[mu1;(1)]");
    }

    #[test]
    fn cartan_is_abelian_and_acts_by_weights() {
        let alg = LoopAlgebra::standard(TypeLabel::D, 4, 2, 2).unwrap();
        let h0 = alg.h(0, vec![0, 0]).unwrap();
        let h1 = alg.h(alg.rank0() - 1, vec![1, 3]).unwrap();
        assert!(alg.bracket_symbols(&h0, &h1).is_empty());
        for w in alg.tt.folded.weights_by_eps[1].clone() {
            let mu = alg.weight(w).clone();
            let x = alg.x(Sign::Plus, &mu, vec![1, 5]).unwrap();
            let got = alg.bracket_symbols(&h0, &x);
            let want: i64 = (0..alg.rank0()).map(|j| mu[j] * alg.tt.folded.cartan[0][j]).sum();
            if want == 0 {
                assert!(got.is_empty());
            } else {
                assert_eq!(got, vec![(x.clone(), want)]);
            }
        }
    }

    #[test]
    fn invalid_symbols_are_rejected() {
        let alg = LoopAlgebra::standard(TypeLabel::A, 2, 2, 1).unwrap();
        // 2μ comes from the fixed root θ, which lives in 𝔤₁ only
        assert!(alg.x(Sign::Plus, &[2], vec![0]).is_err());
        assert!(alg.x(Sign::Plus, &[2], vec![1]).is_ok());
        let a3 = LoopAlgebra::standard(TypeLabel::A, 3, 2, 1).unwrap();
        // h_{2,ε} with the fixed vertex orbit vanishes for odd ε
        assert!(a3.h(1, vec![1]).is_err());
        assert!(a3.h(1, vec![2]).is_ok());
    }

    #[test]
    fn brackets_are_graded_and_valid_on_window() {
        for m in [1, 2] {
            for alg in configs(m) {
                let syms = alg.symbols_in_window(if m == 1 { 2 } else { 1 });
                for a in &syms {
                    for b in &syms {
                        let wa = alg.symbol_weight(a);
                        let wb = alg.symbol_weight(b);
                        for (s, _) in alg.bracket_symbols(a, b) {
                            alg.validate(&s).unwrap();
                            let ws = alg.symbol_weight(&s);
                            let sum: Vec<i64> = wa.iter().zip(&wb).map(|(x, y)| x + y).collect();
                            assert_eq!(ws, sum);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for alg in configs(2) {
            let syms = alg.symbols_in_window(2);
            for _ in 0..1000 {
                let t: Vec<LoopElement> = (0..3)
                    .map(|_| LoopElement::from_symbol(syms.choose(&mut rng).unwrap().clone()))
                    .collect();
                let j1 = alg.loop_bracket(&alg.loop_bracket(&t[0], &t[1]), &t[2]);
                let j2 = alg.loop_bracket(&alg.loop_bracket(&t[1], &t[2]), &t[0]);
                let j3 = alg.loop_bracket(&alg.loop_bracket(&t[2], &t[0]), &t[1]);
                assert!(j1.add(&j2).add(&j3).is_zero());
            }
        }
    }
}
