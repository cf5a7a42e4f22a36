//! The integral form U_ℤ: generators, ordered monomials and integral coordinates.
//!
//! Ordered monomials reuse the PBW monomial type: a factor `(x, a)` stands for
//! the divided power `x^(a)`, `(h_{i,𝟎}, a)` for `binom(h_{i,𝟎}, a)` and
//! `(h_{i,𝐫}, a)` with 𝐫 ≠ 𝟎 for `Λ_{i,𝐫,a}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::enveloping::{render_terms, Enveloping, PBWMonomial, UElement};
use crate::error::{Error, Result};
use crate::exact::{gcd_slice, Rational};
use crate::linalg::{solve_unique, IntLattice, Membership, SparseQ};
use crate::multiloop::{LoopAlgebra, LoopKind, LoopSymbol};
use crate::roots::{Root, TypeLabel};

/// An element of the generating set M.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MGenerator {
    DividedPower { sym: LoopSymbol, n: u32 },
    LambdaGen { i: usize, s: Vec<i64>, n: u32 },
    HBinom { i: usize, n: u32 },
}

impl MGenerator {
    pub fn degree(&self) -> u32 {
        match self {
            MGenerator::DividedPower { n, .. }
            | MGenerator::LambdaGen { n, .. }
            | MGenerator::HBinom { n, .. } => *n,
        }
    }
}

/// A basis element of U_ℤ: a sorted PBW monomial read through the correspondence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderedMonomial(pub PBWMonomial);

impl OrderedMonomial {
    pub fn one() -> Self {
        OrderedMonomial(PBWMonomial::one())
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }
}

/// Coordinates of an element in the ordered-monomial basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegralCoords {
    terms: BTreeMap<OrderedMonomial, Rational>,
}

impl IntegralCoords {
    pub fn add_term(&mut self, m: OrderedMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrderedMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &OrderedMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First non-integral coordinate, if any.
    pub fn first_violation(&self) -> Option<(&OrderedMonomial, &Rational)> {
        self.terms.iter().find(|(_, c)| !c.is_integer())
    }
}

/// Outcome of certifying a product of generators.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub coords: IntegralCoords,
    pub degree: u32,
    pub lead: OrderedMonomial,
    pub expected_lead_coeff: Rational,
    pub integral: bool,
    pub lead_ok: bool,
    pub lower_ok: bool,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.integral && self.lead_ok && self.lower_ok
    }
}

/// `Λ_{i,d𝐬,l}` as an integer polynomial in the `Λ_{i,𝐬,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaReduction {
    pub d: u32,
    pub l: u32,
    /// (partition with parts in decreasing order, coefficient)
    pub terms: Vec<(Vec<u32>, BigInt)>,
}

impl fmt::Display for LambdaReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.d == 1 { "s".to_string() } else { format!("{}s", self.d) };
        write!(f, "Λ({lhs},{}) = ", self.l)?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (parts, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::from(0);
            let a = if neg { -c } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "−")?;
                }
            } else {
                write!(f, "{}", if neg { " − " } else { " + " })?;
            }
            let mono = render_partition(parts);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a == BigInt::from(1) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

fn render_partition(parts: &[u32]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < parts.len() {
        let p = parts[i];
        let mult = parts[i..].iter().take_while(|&&q| q == p).count();
        out.push_str(&format!("Λ(s,{p})"));
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
        i += mult;
    }
    out
}

/// Partitions of `n` with parts in decreasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Result of a bounded ℤ-span query.
#[derive(Clone, Debug, Serialize)]
pub struct ZSpanOutcome {
    pub membership: Membership,
    pub products: usize,
    pub lattice_rank: usize,
    /// Products whose own coordinates were not integral (should be none).
    pub non_integral_products: usize,
}

type CartanMemo = HashMap<PBWMonomial, UElement>;

/// Integral-form engine on top of the enveloping algebra.
pub struct IntegralForm {
    pub u: Enveloping,
    cartan_memo: RwLock<CartanMemo>,
}

impl fmt::Debug for IntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegralForm({:?})", self.u.alg)
    }
}

impl IntegralForm {
    pub fn new(alg: LoopAlgebra) -> Self {
        IntegralForm { u: Enveloping::new(alg), cartan_memo: RwLock::new(HashMap::new()) }
    }

    pub fn standard(t: TypeLabel, rank: usize, k: u32, m: usize) -> Result<Self> {
        Ok(Self::new(LoopAlgebra::standard(t, rank, k, m)?))
    }

    pub fn alg(&self) -> &LoopAlgebra {
        &self.u.alg
    }

    fn zero_r(&self) -> Vec<i64> {
        vec![0; self.alg().m]
    }

    // ---- generators ----

    pub fn divided_power(&self, sym: &LoopSymbol, n: u32) -> Result<MGenerator> {
        self.alg().validate(sym)?;
        if sym.is_cartan() {
            return Err(Error::WrongKind);
        }
        if n == 0 {
            return Err(Error::InvalidSymbol("divided power of order 0".into()));
        }
        Ok(MGenerator::DividedPower { sym: sym.clone(), n })
    }

    /// `Λ_{i,𝐬,n}` with gcd(𝐬) = 1. The direction must carry a nonzero `h_{i,𝐬}`.
    pub fn lambda_gen(&self, i: usize, s: &[i64], n: u32) -> Result<MGenerator> {
        let name = || format!("Λ[{};{};{n}]", i + 1, LoopAlgebra::render_exponent(s));
        if n == 0 || s.len() != self.alg().m || gcd_slice(s) != 1 {
            return Err(Error::InvalidSymbol(name()));
        }
        self.alg().h(i, s.to_vec()).map_err(|_| Error::InvalidSymbol(name()))?;
        Ok(MGenerator::LambdaGen { i, s: s.to_vec(), n })
    }

    pub fn h_binom(&self, i: usize, n: u32) -> Result<MGenerator> {
        self.alg().h(i, self.zero_r())?;
        if n == 0 {
            return Err(Error::InvalidSymbol("binomial of order 0".into()));
        }
        Ok(MGenerator::HBinom { i, n })
    }

    /// The PBW symbol a generator corresponds to.
    pub fn generator_symbol(&self, g: &MGenerator) -> LoopSymbol {
        match g {
            MGenerator::DividedPower { sym, .. } => sym.clone(),
            MGenerator::LambdaGen { i, s, .. } => self.alg().h(*i, s.clone()).expect("validated"),
            MGenerator::HBinom { i, .. } => self.alg().h(*i, self.zero_r()).expect("validated"),
        }
    }

    /// The ordered monomial consisting of a single generator.
    pub fn generator_monomial(&self, g: &MGenerator) -> OrderedMonomial {
        OrderedMonomial(
            PBWMonomial::from_sorted(vec![(self.generator_symbol(g), g.degree())]).expect("one factor"),
        )
    }

    /// (signed weight, exponent) grade of a generator.
    pub fn generator_grade(&self, g: &MGenerator) -> (Root, Vec<i64>) {
        let n = g.degree() as i64;
        match g {
            MGenerator::DividedPower { sym, .. } => (
                self.alg().symbol_weight(sym).iter().map(|x| x * n).collect(),
                sym.r().iter().map(|x| x * n).collect(),
            ),
            MGenerator::LambdaGen { s, .. } => {
                (vec![0; self.alg().rank0()], s.iter().map(|x| x * n).collect())
            }
            MGenerator::HBinom { .. } => (vec![0; self.alg().rank0()], self.zero_r()),
        }
    }

    pub fn expand_generator(&self, g: &MGenerator) -> UElement {
        self.expand(&self.generator_monomial(g))
    }

    // ---- expansion and coordinates ----

    fn cartan_factor(&self, s: &LoopSymbol, a: u32) -> UElement {
        let LoopKind::H(i) = s.kind() else { unreachable!("Cartan factor expected") };
        if s.r().iter().all(|&x| x == 0) {
            self.u.binomial_of(s, a)
        } else {
            self.u.lambda_coeff(i, s.r(), a).expect("valid Λ")
        }
    }

    /// Expansion of a Cartan-only ordered monomial, memoized.
    fn expand_cartan(&self, m: &PBWMonomial) -> UElement {
        if let Some(v) = self.cartan_memo.read().unwrap().get(m) {
            return v.clone();
        }
        let mut out = UElement::one();
        for (s, a) in m.factors() {
            out = self.u.u_multiply(&out, &self.cartan_factor(s, *a));
        }
        self.cartan_memo.write().unwrap().insert(m.clone(), out.clone());
        out
    }

    /// PBW expansion of an ordered monomial.
    pub fn expand(&self, om: &OrderedMonomial) -> UElement {
        let (minus, cartan, plus) = split_blocks(&om.0);
        let mut scale = Rational::one();
        for (_, a) in minus.iter().chain(plus.iter()) {
            scale = &scale * &Rational::factorial(*a).recip().unwrap();
        }
        let cart = self.expand_cartan(&PBWMonomial::from_sorted(cartan).unwrap());
        let mut out = UElement::zero();
        for (cm, c) in cart.terms() {
            let mut f = minus.clone();
            f.extend(cm.factors().iter().cloned());
            f.extend(plus.iter().cloned());
            out.add_term(PBWMonomial::from_sorted(f).unwrap(), c * &scale);
        }
        out
    }

    /// Triangular inversion of a Cartan polynomial into Λ/binomial monomials.
    fn cartan_coords(&self, poly: &UElement) -> Vec<(PBWMonomial, Rational)> {
        let mut p = poly.clone();
        let mut out = Vec::new();
        while !p.is_empty() {
            let top = p
                .terms()
                .map(|(m, _)| m)
                .max_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)))
                .unwrap()
                .clone();
            let c = p.coeff(&top);
            let e = self.expand_cartan(&top);
            let coef = &c / &e.coeff(&top);
            p.add_scaled(&e, &-coef.clone());
            debug_assert!(p.coeff(&top).is_zero());
            out.push((top, coef));
        }
        out
    }

    /// Coordinates in the ordered-monomial basis. Exact over ℚ.
    pub fn to_integral_coords(&self, e: &UElement) -> IntegralCoords {
        type Key = (Vec<(LoopSymbol, u32)>, Vec<(LoopSymbol, u32)>);
        let mut groups: BTreeMap<Key, UElement> = BTreeMap::new();
        for (m, c) in e.terms() {
            let (minus, cartan, plus) = split_blocks(m);
            groups
                .entry((minus, plus))
                .or_default()
                .add_term(PBWMonomial::from_sorted(cartan).unwrap(), c.clone());
        }
        let mut out = IntegralCoords::default();
        for ((minus, plus), poly) in groups {
            let mut scale = Rational::one();
            for (_, a) in minus.iter().chain(plus.iter()) {
                scale = &scale * &Rational::factorial(*a);
            }
            for (cm, c) in self.cartan_coords(&poly) {
                let mut f = minus.clone();
                f.extend(cm.factors().iter().cloned());
                f.extend(plus.iter().cloned());
                out.add_term(OrderedMonomial(PBWMonomial::from_sorted(f).unwrap()), &c * &scale);
            }
        }
        out
    }

    pub fn is_integral(&self, e: &UElement) -> (bool, IntegralCoords) {
        let c = self.to_integral_coords(e);
        (c.is_integral(), c)
    }

    /// Product of generators, in the given order, in PBW coordinates.
    pub fn product_of(&self, gens: &[MGenerator]) -> UElement {
        let mut cur = UElement::one();
        for g in gens {
            cur = self.u.u_multiply(&cur, &self.expand_generator(g));
        }
        cur
    }

    /// The ordered monomial obtained by merely sorting the factors, with the
    /// binomial multiplicity of merged equal symbols.
    pub fn naive_lead(&self, gens: &[MGenerator]) -> (OrderedMonomial, Rational) {
        let mut merged: BTreeMap<LoopSymbol, Vec<u32>> = BTreeMap::new();
        for g in gens {
            merged.entry(self.generator_symbol(g)).or_default().push(g.degree());
        }
        let mut coeff = Rational::one();
        let mut f = Vec::new();
        for (s, ns) in merged {
            let mut total = 0;
            for n in ns {
                total += n;
                coeff = &coeff * &Rational::binomial(total, n);
            }
            f.push((s, total));
        }
        (OrderedMonomial(PBWMonomial::from_sorted(f).unwrap()), coeff)
    }

    /// Expands, multiplies and converts; checks integrality, the leading term
    /// and the degree drop of the remaining terms.
    pub fn certify_product(&self, gens: &[MGenerator]) -> Certificate {
        let coords = self.to_integral_coords(&self.product_of(gens));
        let degree: u32 = gens.iter().map(|g| g.degree()).sum();
        let (lead, expected) = self.naive_lead(gens);
        let lead_ok = coords.coeff(&lead) == expected;
        let lower_ok = coords.terms().all(|(m, _)| m == &lead || m.degree() < degree);
        Certificate {
            integral: coords.is_integral(),
            coords,
            degree,
            lead,
            expected_lead_coeff: expected,
            lead_ok,
            lower_ok,
        }
    }

    /// Straightens a product of generators into integral coordinates.
    pub fn straighten_generators(&self, gens: &[MGenerator]) -> Result<Certificate> {
        let cert = self.certify_product(gens);
        if let Some((m, c)) = cert.coords.first_violation() {
            let word: Vec<String> = gens.iter().map(|g| self.render_generator(g)).collect();
            return Err(Error::IntegralityViolation(format!(
                "{}: coefficient {c} at {}",
                word.join(" "),
                self.render_ordered(m)
            )));
        }
        Ok(cert)
    }

    // ---- Λ reduction ----

    /// Writes `Λ_{i,𝐫,l}` (𝐫 = d𝐬, gcd 𝐬 = 1) as an integer polynomial in the `Λ_{i,𝐬,n}`.
    pub fn lambda_reduce(&self, i: usize, r: &[i64], l: u32) -> Result<LambdaReduction> {
        if r.iter().all(|&x| x == 0) {
            return Err(Error::UseBinomialInstead);
        }
        let d = gcd_slice(r);
        let s: Vec<i64> = r.iter().map(|x| x / d).collect();
        self.lambda_gen(i, &s, 1)?;
        self.alg().h(i, r.to_vec())?;
        let d = d as u32;
        let target = self.u.lambda_coeff(i, r, l)?;
        let parts = partitions(d * l);
        let mut index: BTreeMap<PBWMonomial, usize> = BTreeMap::new();
        let mut sparse = |e: &UElement| -> SparseQ {
            e.terms()
                .map(|(m, c)| {
                    let n = index.len();
                    (*index.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect()
        };
        let mut cols = Vec::new();
        for p in &parts {
            let mut e = UElement::one();
            for &n in p {
                e = self.u.u_multiply(&e, &self.u.lambda_coeff(i, &s, n)?);
            }
            cols.push(sparse(&e));
        }
        let t = sparse(&target);
        let sol = solve_unique(&cols, &t)
            .ok_or_else(|| Error::Internal("Λ system is not uniquely solvable".into()))?;
        let mut terms = Vec::new();
        for (p, c) in parts.into_iter().zip(sol) {
            if c.is_zero() {
                continue;
            }
            let Some(z) = c.to_bigint() else {
                return Err(Error::IntegralityViolation(format!(
                    "Λ({d}s,{l}): coefficient {c} on {}",
                    render_partition(&p)
                )));
            };
            terms.push((p, z));
        }
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| b.0.cmp(&a.0)));
        Ok(LambdaReduction { d, l, terms })
    }

    // ---- ℤ-span membership ----

    /// Decides whether `target` lies in the ℤ-span of all products of the given
    /// generators with total degree at most `degree_bound` (restricted to the
    /// grade of the target when it is homogeneous).
    pub fn zspan_membership(
        &self,
        target: &UElement,
        gens: &[MGenerator],
        degree_bound: u32,
    ) -> ZSpanOutcome {
        let grade = self.homogeneous_grade(target);
        let grades: Vec<(Root, Vec<i64>)> = gens.iter().map(|g| self.generator_grade(g)).collect();
        let words = enumerate_words(gens, &grades, degree_bound, grade.as_ref());
        let coords: Vec<IntegralCoords> = words
            .par_iter()
            .map(|w| {
                let gs: Vec<MGenerator> = w.iter().map(|&j| gens[j].clone()).collect();
                self.to_integral_coords(&self.product_of(&gs))
            })
            .collect();
        let tcoords = self.to_integral_coords(target);
        let mut keys: BTreeSet<&OrderedMonomial> = tcoords.terms().map(|(m, _)| m).collect();
        for c in &coords {
            keys.extend(c.terms().map(|(m, _)| m));
        }
        let index: BTreeMap<&OrderedMonomial, usize> =
            keys.into_iter().enumerate().map(|(n, m)| (m, n)).collect();
        let mut lattice = IntLattice::new();
        let mut bad = 0;
        for c in &coords {
            if !c.is_integral() {
                bad += 1;
                continue;
            }
            lattice.insert(c.terms().map(|(m, v)| (index[m], v.to_bigint().unwrap())).collect());
        }
        let t: SparseQ = tcoords.terms().map(|(m, v)| (index[m], v.clone())).collect();
        ZSpanOutcome {
            membership: lattice.membership(&t),
            products: words.len(),
            lattice_rank: lattice.rank(),
            non_integral_products: bad,
        }
    }

    /// (weight, exponent) when every term of `e` has the same grade.
    pub fn homogeneous_grade(&self, e: &UElement) -> Option<(Root, Vec<i64>)> {
        let mut grade = None;
        for (m, _) in e.terms() {
            let mut w = vec![0; self.alg().rank0()];
            let mut r = self.zero_r();
            for (s, a) in m.factors() {
                for (x, y) in w.iter_mut().zip(self.alg().symbol_weight(s)) {
                    *x += y * *a as i64;
                }
                for (x, y) in r.iter_mut().zip(s.r()) {
                    *x += y * *a as i64;
                }
            }
            match &grade {
                None => grade = Some((w, r)),
                Some(g) if g == &(w.clone(), r.clone()) => {}
                Some(_) => return None,
            }
        }
        grade
    }

    // ---- rendering ----

    pub fn render_factor(&self, s: &LoopSymbol, a: u32) -> String {
        match s.kind() {
            LoopKind::H(i) if s.r().iter().all(|&x| x == 0) => {
                if a == 1 {
                    self.alg().render_symbol(s)
                } else {
                    format!("B[{};{a}]", i + 1)
                }
            }
            LoopKind::H(i) => {
                format!("Λ[{};{};{a}]", i + 1, LoopAlgebra::render_exponent(s.r()))
            }
            _ => {
                let name = self.alg().render_symbol(s);
                if a == 1 {
                    format!("({name})")
                } else {
                    format!("({name})^({a})")
                }
            }
        }
    }

    pub fn render_generator(&self, g: &MGenerator) -> String {
        self.render_factor(&self.generator_symbol(g), g.degree())
    }

    pub fn render_ordered(&self, om: &OrderedMonomial) -> String {
        if om.0.is_one() {
            return "1".into();
        }
        om.0.factors()
            .iter()
            .map(|(s, a)| self.render_factor(s, *a))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_coords(&self, c: &IntegralCoords) -> String {
        render_terms(c.terms().map(|(m, v)| (self.render_ordered(m), v.clone())))
    }

    pub fn coords_to_json(&self, c: &IntegralCoords) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = c
            .terms()
            .map(|(m, v)| {
                let factors: Vec<String> =
                    m.0.factors().iter().map(|(s, a)| self.render_factor(s, *a)).collect();
                serde_json::json!({ "monomial": factors, "coeff": v.to_string() })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

type Factors = Vec<(LoopSymbol, u32)>;

fn split_blocks(m: &PBWMonomial) -> (Factors, Factors, Factors) {
    let mut minus = Vec::new();
    let mut cartan = Vec::new();
    let mut plus = Vec::new();
    for (s, a) in m.factors() {
        match s.kind() {
            LoopKind::XMinus(_) => minus.push((s.clone(), *a)),
            LoopKind::H(_) => cartan.push((s.clone(), *a)),
            LoopKind::XPlus(_) => plus.push((s.clone(), *a)),
        }
    }
    (minus, cartan, plus)
}

/// All words in the generators with total degree ≤ `bound`, restricted to a
/// target grade when one is given.
fn enumerate_words(
    gens: &[MGenerator],
    grades: &[(Root, Vec<i64>)],
    bound: u32,
    target: Option<&(Root, Vec<i64>)>,
) -> Vec<Vec<usize>> {
    // maximal |weight coordinate| and |exponent coordinate| per unit degree
    let per_deg = |f: &dyn Fn(&(Root, Vec<i64>)) -> i64| -> i64 {
        gens.iter()
            .zip(grades)
            .map(|(g, gr)| (f(gr) + g.degree() as i64 - 1) / g.degree() as i64)
            .max()
            .unwrap_or(0)
    };
    let wmax = per_deg(&|g| g.0.iter().map(|x| x.abs()).max().unwrap_or(0));
    let rmax = per_deg(&|g| g.1.iter().map(|x| x.abs()).max().unwrap_or(0));
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let (w0, r0) = match target {
        Some((w, r)) => (vec![0; w.len()], vec![0; r.len()]),
        None => (Vec::new(), Vec::new()),
    };
    #[allow(clippy::too_many_arguments)]
    fn go(
        gens: &[MGenerator],
        grades: &[(Root, Vec<i64>)],
        rem: u32,
        target: Option<&(Root, Vec<i64>)>,
        w: &mut Vec<i64>,
        r: &mut Vec<i64>,
        caps: (i64, i64),
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            match target {
                None => out.push(cur.clone()),
                Some((tw, tr)) if tw == w && tr == r => out.push(cur.clone()),
                _ => {}
            }
        }
        for (j, g) in gens.iter().enumerate() {
            let d = g.degree();
            if d > rem {
                continue;
            }
            let left = (rem - d) as i64;
            let (gw, gr) = &grades[j];
            for (x, y) in w.iter_mut().zip(gw) {
                *x += y;
            }
            for (x, y) in r.iter_mut().zip(gr) {
                *x += y;
            }
            let feasible = match target {
                None => true,
                Some((tw, tr)) => {
                    tw.iter().zip(w.iter()).all(|(a, b)| (a - b).abs() <= left * caps.0)
                        && tr.iter().zip(r.iter()).all(|(a, b)| (a - b).abs() <= left * caps.1)
                }
            };
            if feasible {
                cur.push(j);
                go(gens, grades, rem - d, target, w, r, caps, cur, out);
                cur.pop();
            }
            for (x, y) in w.iter_mut().zip(gw) {
                *x -= y;
            }
            for (x, y) in r.iter_mut().zip(gr) {
                *x -= y;
            }
        }
    }
    let (mut w, mut r) = (w0, r0);
    go(gens, grades, bound, target, &mut w, &mut r, (wmax, rmax), &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted::Sign;

    fn a3() -> IntegralForm {
        IntegralForm::standard(TypeLabel::A, 3, 2, 1).unwrap()
    }

    #[test]
    fn cartan_square_conversion() {
        let f = a3();
        let h1 = UElement::from_symbol(f.alg().h(0, vec![1]).unwrap());
        let sq = f.u.u_multiply(&h1, &h1);
        let c = f.to_integral_coords(&sq);
        assert_eq!(f.render_coords(&c), "2·Λ[1;(1);2] - Λ[1;(2);1]");
        let h0 = UElement::from_symbol(f.alg().h(0, vec![0]).unwrap());
        let c0 = f.to_integral_coords(&f.u.u_multiply(&h0, &h0));
        assert_eq!(f.render_coords(&c0), "h[mu1;(0)] + 2·B[1;2]");
    }

    #[test]
    fn factorial_scaling() {
        let f = a3();
        let x = f.alg().x(Sign::Plus, &[1, 0], vec![0]).unwrap();
        let cube = f.u.word(&[x.clone(), x.clone(), x.clone()]);
        let c = f.to_integral_coords(&cube);
        assert_eq!(f.render_coords(&c), "6·(x+[mu1;(0)])^(3)");
        let (ok, _) = f.is_integral(&UElement::from_symbol(x).scale(&Rational::new(1, 2)));
        assert!(!ok);
    }

    #[test]
    fn expand_examples() {
        let f = a3();
        let g = f.lambda_gen(0, &[1], 1).unwrap();
        let h = UElement::from_symbol(f.alg().h(0, vec![1]).unwrap());
        assert_eq!(f.expand_generator(&g), h.scale(&Rational::integer(-1)));
        assert!(f.lambda_gen(0, &[2], 1).is_err());
        // fixed vertex: h_{2,(1)} vanishes
        assert!(f.lambda_gen(1, &[1], 1).is_err());
    }

    #[test]
    fn round_trip_on_window() {
        let f = IntegralForm::standard(TypeLabel::A, 2, 2, 1).unwrap();
        let syms = f.alg().symbols_in_window(1);
        for a in &syms {
            for b in &syms {
                if a >= b {
                    continue;
                }
                let om = OrderedMonomial(PBWMonomial::from_sorted(vec![(a.clone(), 2), (b.clone(), 1)]).unwrap());
                let c = f.to_integral_coords(&f.expand(&om));
                assert_eq!(c.len(), 1);
                assert!(c.coeff(&om).is_one());
            }
        }
    }

    #[test]
    fn lambda_reduce_closed_case() {
        let f = a3();
        let red = f.lambda_reduce(0, &[2], 1).unwrap();
        assert_eq!(red.to_string(), "Λ(2s,1) = 2Λ(s,2) − Λ(s,1)^2");
        assert_eq!(f.lambda_reduce(0, &[2], 0).unwrap().to_string(), "Λ(2s,0) = 1");
        for d in [2, 3] {
            for l in 0..=4 {
                f.lambda_reduce(0, &[d], l).unwrap();
            }
        }
    }

    #[test]
    fn straighten_a2_swap() {
        let f = IntegralForm::standard(TypeLabel::A, 2, 2, 1).unwrap();
        let xp = f.alg().x(Sign::Plus, &[1], vec![0]).unwrap();
        let xm = f.alg().x(Sign::Minus, &[1], vec![0]).unwrap();
        let gens = [f.divided_power(&xp, 1).unwrap(), f.divided_power(&xm, 1).unwrap()];
        let cert = f.straighten_generators(&gens).unwrap();
        assert!(cert.ok());
        assert_eq!(f.render_coords(&cert.coords), "(x-[mu1;(0)]) (x+[mu1;(0)]) + 2·h[mu1;(0)]");
        let g2 = [f.divided_power(&xp, 2).unwrap(), f.divided_power(&xp, 3).unwrap()];
        assert_eq!(f.render_coords(&f.straighten_generators(&g2).unwrap().coords), "10·(x+[mu1;(0)])^(5)");
    }

    #[test]
    fn membership_simple_cases() {
        let f = a3();
        let x1 = f.alg().x(Sign::Plus, &[1, 0], vec![0]).unwrap();
        let x2 = f.alg().x(Sign::Plus, &[0, 1], vec![0]).unwrap();
        let gens = vec![f.divided_power(&x1, 1).unwrap(), f.divided_power(&x2, 1).unwrap()];
        let target = f.expand_generator(&gens[0]);
        assert_eq!(f.zspan_membership(&target, &gens, 2).membership, Membership::Member);
        let half = target.scale(&Rational::new(1, 2));
        assert_eq!(f.zspan_membership(&half, &gens, 2).membership, Membership::NonMember);
        let x12 = f.alg().x(Sign::Plus, &[1, 1], vec![0]).unwrap();
        let t = UElement::from_symbol(x12);
        assert_eq!(f.zspan_membership(&t, &gens, 2).membership, Membership::Member);
        assert_eq!(f.zspan_membership(&t, &gens, 1).membership, Membership::Unknown);
    }

    #[test]
    fn partition_counts() {
        let n: Vec<usize> = (0..8).map(|k| partitions(k).len()).collect();
        assert_eq!(n, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
