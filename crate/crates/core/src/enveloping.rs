//! PBW arithmetic in U(𝒯_m^σ(𝔤)) over ℚ.
//!
//! Elements are combinations of sorted monomials in the loop basis (x⁻ block,
//! then Cartan block, then x⁺ block). Products are straightened with
//! `m'·z·y = (m'·y)·z + m'·[z,y]`, memoized on (monomial, symbol).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::multiloop::{LoopAlgebra, LoopElement, LoopKind, LoopSymbol};
use crate::roots::height;

/// A sorted PBW monomial: strictly increasing symbols with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct PBWMonomial(Vec<(LoopSymbol, u32)>);

impl PBWMonomial {
    pub fn one() -> Self {
        PBWMonomial(Vec::new())
    }

    /// Builds a monomial from factors that are already strictly increasing.
    pub fn from_sorted(factors: Vec<(LoopSymbol, u32)>) -> Result<Self> {
        if factors.iter().any(|(_, a)| *a == 0) || factors.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Internal("monomial factors must be strictly increasing".into()));
        }
        Ok(PBWMonomial(factors))
    }

    pub fn factors(&self) -> &[(LoopSymbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, a)| a).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

/// An element of the enveloping algebra.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UElement {
    terms: BTreeMap<PBWMonomial, Rational>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(PBWMonomial::one(), Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::from_monomial(PBWMonomial::one(), c)
    }

    pub fn from_monomial(m: PBWMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_symbol(s: LoopSymbol) -> Self {
        Self::from_monomial(PBWMonomial(vec![(s, 1)]), Rational::one())
    }

    pub fn from_loop(e: &LoopElement) -> Self {
        let mut out = Self::zero();
        for (s, c) in e.terms() {
            out.add_term(PBWMonomial(vec![(s.clone(), 1)]), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, d) in other.terms() {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::integer(-1));
        out
    }

    pub fn scale(&self, c: &Rational) -> UElement {
        let mut out = UElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree (maximal monomial degree; 0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

type Memo = HashMap<(PBWMonomial, LoopSymbol), UElement>;

/// Arithmetic engine for U(𝒯_m^σ(𝔤)). The commutator memo is lock-protected,
/// so one engine can be shared between threads.
pub struct Enveloping {
    pub alg: LoopAlgebra,
    memo: RwLock<Memo>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enveloping({:?})", self.alg)
    }
}

impl Enveloping {
    pub fn new(alg: LoopAlgebra) -> Self {
        Enveloping { alg, memo: RwLock::new(HashMap::new()) }
    }

    pub fn memo_size(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// `mono · y`, straightened.
    pub fn mul_mono_sym(&self, mono: &PBWMonomial, y: &LoopSymbol) -> UElement {
        let Some((z, a)) = mono.0.last() else {
            return UElement::from_symbol(y.clone());
        };
        match z.cmp(y) {
            std::cmp::Ordering::Less => {
                let mut f = mono.0.clone();
                f.push((y.clone(), 1));
                UElement::from_monomial(PBWMonomial(f), Rational::one())
            }
            std::cmp::Ordering::Equal => {
                let mut f = mono.0.clone();
                f.last_mut().unwrap().1 += 1;
                UElement::from_monomial(PBWMonomial(f), Rational::one())
            }
            std::cmp::Ordering::Greater => {
                let key = (mono.clone(), y.clone());
                if let Some(v) = self.memo.read().unwrap().get(&key) {
                    return v.clone();
                }
                let z = z.clone();
                let mut m1 = mono.0.clone();
                if *a == 1 {
                    m1.pop();
                } else {
                    m1.last_mut().unwrap().1 -= 1;
                }
                let m1 = PBWMonomial(m1);
                // (m'·z)·y = (m'·y)·z + m'·[z, y]
                let left = self.mul_mono_sym(&m1, y);
                let mut res = self.mul_elem_sym(&left, &z);
                for (s, c) in self.alg.bracket_symbols(&z, y) {
                    res.add_scaled(&self.mul_mono_sym(&m1, &s), &Rational::integer(c));
                }
                self.memo.write().unwrap().insert(key, res.clone());
                res
            }
        }
    }

    pub fn mul_elem_sym(&self, e: &UElement, y: &LoopSymbol) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.mul_mono_sym(m, y), c);
        }
        out
    }

    fn mul_elem_mono(&self, e: &UElement, m: &PBWMonomial) -> UElement {
        let mut cur = e.clone();
        for (s, a) in &m.0 {
            for _ in 0..*a {
                cur = self.mul_elem_sym(&cur, s);
            }
        }
        cur
    }

    /// Associative product in the enveloping algebra.
    pub fn u_multiply(&self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in b.terms() {
            out.add_scaled(&self.mul_elem_mono(a, m), c);
        }
        out
    }

    pub fn product(&self, factors: &[UElement]) -> UElement {
        factors
            .iter()
            .fold(UElement::one(), |acc, f| self.u_multiply(&acc, f))
    }

    /// Product of symbols in the given (arbitrary) order.
    pub fn word(&self, syms: &[LoopSymbol]) -> UElement {
        let mut cur = UElement::one();
        for s in syms {
            cur = self.mul_elem_sym(&cur, s);
        }
        cur
    }

    /// `s^(n) = s^n / n!` for a root-vector symbol.
    pub fn divided_power(&self, s: &LoopSymbol, n: u32) -> Result<UElement> {
        if s.is_cartan() {
            return Err(Error::WrongKind);
        }
        if n == 0 {
            return Ok(UElement::one());
        }
        Ok(UElement::from_monomial(
            PBWMonomial(vec![(s.clone(), n)]),
            Rational::factorial(n).recip()?,
        ))
    }

    /// `binom(h, n) = h(h−1)⋯(h−n+1)/n!` for a Cartan symbol, expanded in powers.
    pub fn binomial_of(&self, h: &LoopSymbol, n: u32) -> UElement {
        // coefficients of the falling factorial, low degree first
        let mut poly = vec![Rational::one()];
        for j in 0..n {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= &(c * &Rational::integer(j as i64));
            }
            poly = next;
        }
        let inv = Rational::factorial(n).recip().unwrap();
        let mut out = UElement::zero();
        for (d, c) in poly.into_iter().enumerate() {
            let m = if d == 0 {
                PBWMonomial::one()
            } else {
                PBWMonomial(vec![(h.clone(), d as u32)])
            };
            out.add_term(m, &c * &inv);
        }
        out
    }

    /// `binom(h_{i,𝟎}, n)`.
    pub fn h_binomial(&self, i: usize, n: u32) -> Result<UElement> {
        let h = self.alg.h(i, vec![0; self.alg.m])?;
        Ok(self.binomial_of(&h, n))
    }

    /// `h_{i,𝐫}` as an element, zero when the twisted Cartan component vanishes.
    pub fn h_or_zero(&self, i: usize, r: &[i64]) -> UElement {
        match self.alg.h(i, r.to_vec()) {
            Ok(h) => UElement::from_symbol(h),
            Err(_) => UElement::zero(),
        }
    }

    /// Λ coefficients from a sequence `p_j` (the elements replacing `h_{jr}`):
    /// `l·Λ_l = −Σ_{j=1}^{l} p_j Λ_{l−j}`.
    pub fn lambda_series(&self, p: &[UElement], l: u32) -> Vec<UElement> {
        let mut lam = vec![UElement::one()];
        for n in 1..=l as usize {
            let mut acc = UElement::zero();
            for j in 1..=n {
                acc = acc.add(&self.u_multiply(&p[j - 1], &lam[n - j]));
            }
            lam.push(acc.scale(&Rational::new(-1, n as i64)));
        }
        lam
    }

    /// `Λ_{i,𝐫,l}`: the coefficient of `u^l` in `exp(−Σ_{j≥1} h_{i,j𝐫} u^j / j)`.
    pub fn lambda_coeff(&self, i: usize, r: &[i64], l: u32) -> Result<UElement> {
        if r.iter().all(|&x| x == 0) {
            return Err(Error::UseBinomialInstead);
        }
        if i >= self.alg.rank0() || r.len() != self.alg.m {
            return Err(Error::InvalidSymbol(format!("Λ[{};{:?};{l}]", i + 1, r)));
        }
        let p: Vec<UElement> = (1..=l as i64)
            .map(|j| {
                let rj: Vec<i64> = r.iter().map(|x| x * j).collect();
                self.h_or_zero(i, &rj)
            })
            .collect();
        Ok(self.lambda_series(&p, l).pop().unwrap())
    }

    /// `h_{μ,𝐫}` for a restricted weight (a combination of the `h_{i,𝐫}`).
    pub fn h_mu(&self, w: usize, r: &[i64]) -> Result<UElement> {
        let tt = &self.alg.tt;
        let eps = self.alg.eps_of(r);
        let Some(v) = tt.h_mu_eps(w, eps) else {
            return Ok(UElement::zero());
        };
        let mut out = UElement::zero();
        for (s, c) in tt.reexpress(&v) {
            let crate::twisted::TwistedSymbol::H { i, .. } = tt.symbols[s] else {
                return Err(Error::Internal("h_mu has a root-vector component".into()));
            };
            let q = c
                .to_rational()
                .ok_or_else(|| Error::Internal("irrational Cartan coefficient".into()))?;
            out.add_term(PBWMonomial(vec![(self.alg.h(i, r.to_vec())?, 1)]), q);
        }
        Ok(out)
    }

    /// `Λ_{μ,𝐫,l}` for a restricted weight μ.
    pub fn lambda_coeff_mu(&self, w: usize, r: &[i64], l: u32) -> Result<UElement> {
        if r.iter().all(|&x| x == 0) {
            return Err(Error::UseBinomialInstead);
        }
        let mut p = Vec::new();
        for j in 1..=l as i64 {
            let rj: Vec<i64> = r.iter().map(|x| x * j).collect();
            p.push(self.h_mu(w, &rj)?);
        }
        Ok(self.lambda_series(&p, l).pop().unwrap())
    }

    /// Apply a symbol map to every monomial; `reverse` gives an antihomomorphism.
    fn map_symbols(
        &self,
        e: &UElement,
        reverse: bool,
        f: impl Fn(&LoopSymbol) -> Result<LoopSymbol>,
    ) -> Result<UElement> {
        let mut out = UElement::zero();
        for (m, c) in e.terms() {
            let mut word = Vec::new();
            for (s, a) in &m.0 {
                let img = f(s)?;
                for _ in 0..*a {
                    word.push(img.clone());
                }
            }
            if reverse {
                word.reverse();
            }
            out.add_scaled(&self.word(&word), c);
        }
        Ok(out)
    }

    /// `T_𝐯`: `x_{μ,𝐫}^± ↦ x_{μ,𝐫 ∓ ht(μ)𝐯}^±`, `h_{i,𝐫} ↦ h_{i,𝐫}`.
    pub fn apply_t(&self, v: &[i64], e: &UElement) -> Result<UElement> {
        self.map_symbols(e, false, |s| {
            let (sign, w) = match s.kind() {
                LoopKind::H(_) => return Ok(s.clone()),
                LoopKind::XPlus(w) => (-1, w),
                LoopKind::XMinus(w) => (1, w),
            };
            let ht = height(self.alg.weight(w));
            let r: Vec<i64> = s.r().iter().zip(v).map(|(x, y)| x + sign * ht * y).collect();
            let img = s.with_r(r);
            self.alg
                .validate(&img)
                .map_err(|_| Error::InvalidShift(self.alg.render_symbol(&img)))?;
            Ok(img)
        })
    }

    /// The antiautomorphism Ω: swaps `x^+` and `x^-`, fixes Cartan symbols.
    pub fn apply_omega(&self, e: &UElement) -> UElement {
        self.map_symbols(e, true, |s| {
            Ok(match s.kind() {
                LoopKind::XPlus(w) => s.with_kind(LoopKind::XMinus(w)),
                LoopKind::XMinus(w) => s.with_kind(LoopKind::XPlus(w)),
                LoopKind::H(_) => s.clone(),
            })
        })
        .expect("Ω maps valid symbols to valid symbols")
    }

    /// `λ_𝐛`: exponents multiplied componentwise by 𝐛.
    pub fn apply_lambda_sub(&self, b: &[i64], e: &UElement) -> Result<UElement> {
        self.map_symbols(e, false, |s| {
            let r: Vec<i64> = s.r().iter().zip(b).map(|(x, y)| x * y).collect();
            let img = s.with_r(r);
            self.alg
                .validate(&img)
                .map_err(|_| Error::InvalidSubstitution(self.alg.render_symbol(&img)))?;
            Ok(img)
        })
    }

    pub fn render_monomial(&self, m: &PBWMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.0.iter()
            .map(|(s, a)| {
                let name = self.alg.render_symbol(s);
                if *a == 1 {
                    format!("({name})")
                } else {
                    format!("({name})^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render(&self, e: &UElement) -> String {
        render_terms(e.terms().map(|(m, c)| (self.render_monomial(m), c.clone())))
    }

    pub fn to_json(&self, e: &UElement) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = e
            .terms()
            .map(|(m, c)| {
                let factors: Vec<serde_json::Value> = m
                    .0
                    .iter()
                    .map(|(s, a)| {
                        serde_json::json!({
                            "symbol": self.alg.render_symbol(s),
                            "power": a,
                        })
                    })
                    .collect();
                serde_json::json!({ "monomial": factors, "coeff": c.to_string() })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

/// Renders `c₁·m₁ + c₂·m₂ − …` with unit coefficients omitted.
pub fn render_terms(terms: impl Iterator<Item = (String, Rational)>) -> String {
    let mut out = String::new();
    for (n, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m == "1" {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&m);
        } else {
            out.push_str(&format!("{a}·{m}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::TypeLabel;
    use crate::twisted::Sign;

    fn a2() -> Enveloping {
        Enveloping::new(LoopAlgebra::standard(TypeLabel::A, 2, 2, 1).unwrap())
    }

    #[test]
    fn single_swap_a2() {
        let u = a2();
        let xp = u.alg.x(Sign::Plus, &[1], vec![0]).unwrap();
        let xm = u.alg.x(Sign::Minus, &[1], vec![0]).unwrap();
        let got = u.word(&[xp.clone(), xm.clone()]);
        let h = u.alg.h(0, vec![0]).unwrap();
        let mut want = u.word(&[xm, xp]);
        want.add_scaled(&UElement::from_symbol(h), &Rational::integer(2));
        assert_eq!(got, want);
    }

    #[test]
    fn divided_power_product() {
        let u = a2();
        let x = u.alg.x(Sign::Plus, &[1], vec![0]).unwrap();
        let p = u.u_multiply(&u.divided_power(&x, 2).unwrap(), &u.divided_power(&x, 3).unwrap());
        assert_eq!(p, u.divided_power(&x, 5).unwrap().scale(&Rational::integer(10)));
        let h = u.alg.h(0, vec![0]).unwrap();
        assert_eq!(u.divided_power(&h, 1), Err(Error::WrongKind));
    }

    #[test]
    fn binomials() {
        let u = a2();
        let h = UElement::from_symbol(u.alg.h(0, vec![0]).unwrap());
        let b2 = u.h_binomial(0, 2).unwrap();
        let want = u.u_multiply(&h, &h).scale(&Rational::new(1, 2)).sub(&h.scale(&Rational::new(1, 2)));
        assert_eq!(b2, want);
        let hh = b2.scale(&Rational::integer(2)).add(&u.h_binomial(0, 1).unwrap());
        assert_eq!(hh, u.u_multiply(&h, &h));
    }

    #[test]
    fn lambda_low_orders() {
        let u = Enveloping::new(LoopAlgebra::standard(TypeLabel::A, 3, 2, 1).unwrap());
        assert_eq!(u.lambda_coeff(0, &[0], 1), Err(Error::UseBinomialInstead));
        assert_eq!(u.lambda_coeff(0, &[1], 0).unwrap(), UElement::one());
        let h1 = UElement::from_symbol(u.alg.h(0, vec![1]).unwrap());
        let h2 = UElement::from_symbol(u.alg.h(0, vec![2]).unwrap());
        assert_eq!(u.lambda_coeff(0, &[1], 1).unwrap(), h1.scale(&Rational::integer(-1)));
        let want = u
            .u_multiply(&h1, &h1)
            .scale(&Rational::new(1, 2))
            .sub(&h2.scale(&Rational::new(1, 2)));
        assert_eq!(u.lambda_coeff(0, &[1], 2).unwrap(), want);
    }

    #[test]
    fn omega_and_shift_examples() {
        let u = Enveloping::new(LoopAlgebra::standard(TypeLabel::A, 3, 2, 2).unwrap());
        let a = u.alg.x(Sign::Plus, &[1, 0], vec![0, 1]).unwrap();
        let b = u.alg.x(Sign::Plus, &[0, 1], vec![2, 0]).unwrap();
        let e = u.word(&[a.clone(), b.clone()]);
        let am = u.alg.x(Sign::Minus, &[1, 0], vec![0, 1]).unwrap();
        let bm = u.alg.x(Sign::Minus, &[0, 1], vec![2, 0]).unwrap();
        assert_eq!(u.apply_omega(&e), u.word(&[bm, am]));
        assert_eq!(u.apply_omega(&u.apply_omega(&e)), e);
        assert_eq!(u.apply_t(&[0, 0], &e).unwrap(), e);
        let shifted = u.apply_t(&[2, 1], &UElement::from_symbol(a.clone())).unwrap();
        assert_eq!(shifted, UElement::from_symbol(a.with_r(vec![-2, 0])));
        assert!(matches!(
            u.apply_t(&[1, 0], &UElement::from_symbol(b)),
            Err(Error::InvalidShift(_))
        ));
        let lam = u.lambda_coeff(0, &[1, 1], 2).unwrap();
        assert_eq!(u.apply_omega(&lam), lam);
    }
}
