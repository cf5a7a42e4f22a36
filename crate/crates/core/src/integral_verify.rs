//! Verification suites for the integral form: commutation and binomial
//! identities, the four rearrangement shapes, Λ-reduction, the ordered-monomial
//! basis and generation by simple-root divided powers.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::enveloping::UElement;
use crate::exact::{gcd_slice, Rational};
use crate::integral::{Certificate, IntegralForm, LambdaReduction, MGenerator, OrderedMonomial};
use crate::linalg::{Membership, RationalEchelon, SparseQ};
use crate::enveloping::PBWMonomial;
use crate::multiloop::{LoopAlgebra, LoopKind, LoopSymbol};
use crate::report::Report;
use crate::roots::height;
use crate::twisted::{weight_name, Sign};

/// Enumeration bounds shared by the suites.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Maximal generator degree (or r+s for the two-factor identities).
    pub deg: u32,
    /// Exponents range over `[-expwin, expwin]^m`.
    pub expwin: i64,
    /// Cap on the number of cases per check before sampling kicks in.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { deg: 4, expwin: 2, samples: 400, seed: 1 }
    }
}

/// Keeps all cases when there are at most `limit`, else a seeded sample in
/// the original order. Returns whether the run is exhaustive.
fn select<T: Clone>(all: Vec<T>, limit: usize, seed: u64) -> (Vec<T>, bool) {
    if all.len() <= limit {
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, all.len(), limit).into_vec();
    idx.sort_unstable();
    (idx.into_iter().map(|i| all[i].clone()).collect(), false)
}

fn coverage(exhaustive: bool, n: usize, total: usize) -> String {
    if exhaustive {
        format!("exhaustive ({n})")
    } else {
        format!("sampled {n} of {total}")
    }
}

fn exponents(m: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..m {
        out = out
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
    out
}

impl IntegralForm {
    pub fn instance(&self) -> String {
        format!("{} m={}", self.alg().tt.instance(), self.alg().m)
    }

    /// Weight index of the simple restricted weight μ_i.
    pub fn simple_weight(&self, i: usize) -> usize {
        let tt = &self.alg().tt;
        tt.weight_index(&tt.folded.simple(i)).expect("simple weight")
    }

    /// Primitive exponent vectors in the window carrying a nonzero `h_{i,𝐬}`.
    pub fn lambda_directions(&self, i: usize, w: i64) -> Vec<Vec<i64>> {
        exponents(self.alg().m, w)
            .into_iter()
            .filter(|s| s.iter().any(|&x| x != 0) && gcd_slice(s) == 1 && self.alg().h_exists(i, s))
            .collect()
    }

    /// The generator pool: all divided powers, Λ's and binomials of degree
    /// ≤ `deg` with exponents in the window.
    pub fn generator_pool(&self, deg: u32, w: i64) -> Vec<MGenerator> {
        let mut pool = Vec::new();
        for s in self.alg().symbols_in_window(w) {
            if s.is_cartan() {
                continue;
            }
            for n in 1..=deg {
                pool.push(self.divided_power(&s, n).expect("window symbol"));
            }
        }
        for i in 0..self.alg().rank0() {
            for s in self.lambda_directions(i, w) {
                for n in 1..=deg {
                    pool.push(self.lambda_gen(i, &s, n).expect("valid direction"));
                }
            }
            if self.alg().h_exists(i, &vec![0; self.alg().m]) {
                for n in 1..=deg {
                    pool.push(self.h_binom(i, n).expect("valid binomial"));
                }
            }
        }
        pool
    }

    fn x_symbol(&self, sign: Sign, w: usize, r: &[i64]) -> Option<LoopSymbol> {
        let kind = match sign {
            Sign::Plus => LoopKind::XPlus(w),
            Sign::Minus => LoopKind::XMinus(w),
        };
        self.alg().symbol(kind, r.to_vec()).ok()
    }

    fn render_word(&self, gens: &[MGenerator]) -> String {
        gens.iter().map(|g| self.render_generator(g)).collect::<Vec<_>>().join(" ")
    }
}

fn record_certificate(rep: &mut Report, f: &IntegralForm, gens: &[MGenerator], cert: &Certificate) {
    let word = || f.render_word(gens);
    rep.check("integral", cert.integral, || {
        let (m, c) = cert.coords.first_violation().unwrap();
        (word(), "integer coordinates".into(), format!("{c} at {}", f.render_ordered(m)))
    });
    rep.check("leading-term", cert.lead_ok, || {
        (
            word(),
            format!("{}·{}", cert.expected_lead_coeff, f.render_ordered(&cert.lead)),
            f.render_coords(&cert.coords),
        )
    });
    rep.check("lower-degree", cert.lower_ok, || {
        (word(), format!("other terms of degree < {}", cert.degree), f.render_coords(&cert.coords))
    });
}

/// Commutation of Λ-elements and the binomial identity for divided powers.
pub fn verify_prop_repeat(f: &IntegralForm, b: &Bounds) -> Report {
    let alg = f.alg();
    let mut rep = Report::new("prop-repeat", &f.instance());
    rep.bound("r+s", b.deg).bound("expwin", b.expwin).bound("seed", b.seed);
    let exps = exponents(alg.m, b.expwin);

    // (μ, 𝐫) with μ a weight of 𝔤_{r₁}
    let mut lam = Vec::new();
    for w in 0..alg.num_weights() {
        for r in &exps {
            if r.iter().any(|&x| x != 0) && alg.tt.x_valid(w, alg.eps_of(r)) {
                lam.push((w, r.clone()));
            }
        }
    }
    let mut cases = Vec::new();
    for (p, q) in lam.iter().enumerate() {
        for q2 in &lam[p..] {
            for a in 1..b.deg {
                for c in 1..=(b.deg - a) {
                    cases.push((q.clone(), q2.clone(), a, c));
                }
            }
        }
    }
    let total = cases.len();
    let (cases, exh) = select(cases, b.samples, b.seed);
    rep.bound("lambda-commute", coverage(exh, cases.len(), total));
    let results: Vec<(bool, String)> = cases
        .par_iter()
        .map(|((w1, r1), (w2, r2), a, c)| {
            let x = f.u.lambda_coeff_mu(*w1, r1, *a).unwrap();
            let y = f.u.lambda_coeff_mu(*w2, r2, *c).unwrap();
            let ok = f.u.u_multiply(&x, &y) == f.u.u_multiply(&y, &x);
            let name = format!(
                "Λ[{};{};{a}] Λ[{};{};{c}]",
                weight_name(alg.weight(*w1)),
                LoopAlgebra::render_exponent(r1),
                weight_name(alg.weight(*w2)),
                LoopAlgebra::render_exponent(r2)
            );
            (ok, name)
        })
        .collect();
    for (ok, name) in results {
        rep.check("lambda-commute", ok, || (name, "commuting".into(), "differ".into()));
    }

    let syms: Vec<LoopSymbol> =
        alg.symbols_in_window(b.expwin).into_iter().filter(|s| !s.is_cartan()).collect();
    rep.bound("divided-power-binomial", format!("exhaustive ({} symbols)", syms.len()));
    for s in &syms {
        for a in 1..b.deg {
            for c in 1..=(b.deg - a) {
                let x = f.u.divided_power(s, a).unwrap();
                let y = f.u.divided_power(s, c).unwrap();
                let want =
                    f.u.divided_power(s, a + c).unwrap().scale(&Rational::binomial(a + c, c));
                let got = f.u.u_multiply(&x, &y);
                rep.check("divided-power-binomial", got == want, || {
                    (
                        format!("{} {}", f.render_factor(s, a), f.render_factor(s, c)),
                        f.u.render(&want),
                        f.u.render(&got),
                    )
                });
            }
        }
    }
    rep
}

/// The four rearrangement shapes: `x⁺ Λ`, `Λ x⁻`, `x^± x^±` and `x⁺ x⁻`
/// for simple weights, checked by full expansion.
pub fn verify_prop_arrange(f: &IntegralForm, b: &Bounds) -> Report {
    let alg = f.alg();
    let mut rep = Report::new("prop-arrange", &f.instance());
    rep.bound("r+s", b.deg).bound("expwin", b.expwin).bound("seed", b.seed);
    let exps = exponents(alg.m, b.expwin);
    let n0 = alg.rank0();
    let orders: Vec<(u32, u32)> =
        (1..b.deg).flat_map(|r| (1..=(b.deg - r)).map(move |s| (r, s))).collect();

    let mut shapes: Vec<(&str, Vec<Vec<MGenerator>>)> = Vec::new();
    let mut x_lambda = Vec::new();
    let mut lambda_x = Vec::new();
    let mut same_sign = Vec::new();
    let mut opposite = Vec::new();
    for i in 0..n0 {
        let dirs = f.lambda_directions(i, b.expwin);
        for j in 0..n0 {
            let (wi, wj) = (f.simple_weight(i), f.simple_weight(j));
            for r in &exps {
                for &(rr, ss) in &orders {
                    for s in &dirs {
                        let lg = f.lambda_gen(i, s, ss).unwrap();
                        if let Some(x) = f.x_symbol(Sign::Plus, wj, r) {
                            x_lambda.push(vec![f.divided_power(&x, rr).unwrap(), lg.clone()]);
                        }
                        if let Some(x) = f.x_symbol(Sign::Minus, wj, r) {
                            lambda_x.push(vec![lg.clone(), f.divided_power(&x, rr).unwrap()]);
                        }
                    }
                    for s in &exps {
                        for sign in [Sign::Plus, Sign::Minus] {
                            if let (Some(x), Some(y)) = (f.x_symbol(sign, wi, r), f.x_symbol(sign, wj, s)) {
                                same_sign.push(vec![
                                    f.divided_power(&x, rr).unwrap(),
                                    f.divided_power(&y, ss).unwrap(),
                                ]);
                            }
                        }
                        if i == j {
                            if let (Some(x), Some(y)) =
                                (f.x_symbol(Sign::Plus, wi, r), f.x_symbol(Sign::Minus, wi, s))
                            {
                                opposite.push(vec![
                                    f.divided_power(&x, rr).unwrap(),
                                    f.divided_power(&y, ss).unwrap(),
                                ]);
                            }
                        }
                    }
                }
            }
        }
    }
    shapes.push(("x+Λ", x_lambda));
    shapes.push(("Λx-", lambda_x));
    shapes.push(("x±x±", same_sign));
    shapes.push(("x+x-", opposite));
    for (n, (name, cases)) in shapes.into_iter().enumerate() {
        let total = cases.len();
        let (cases, exh) = select(cases, b.samples, b.seed.wrapping_add(n as u64));
        rep.bound(&format!("shape {name}"), coverage(exh, cases.len(), total));
        let certs: Vec<Certificate> = cases.par_iter().map(|g| f.certify_product(g)).collect();
        for (g, c) in cases.iter().zip(&certs) {
            record_certificate(&mut rep, f, g, c);
        }
    }
    rep.note("corrections are checked in ordered coordinates: integral and of degree below r+s");
    rep
}

/// The literal Λ-element along a direction whose `h_{i,𝐬}` vanishes, if any.
fn vanishing_direction_example(f: &IntegralForm) -> Option<String> {
    let alg = f.alg();
    let mut s = vec![0; alg.m];
    s[0] = 1;
    let mut s2 = s.clone();
    s2[0] = 2;
    let i = (0..alg.rank0()).find(|&i| !alg.h_exists(i, &s) && alg.h_exists(i, &s2))?;
    let lam = f.u.lambda_coeff(i, &s, 2).ok()?;
    let (ok, coords) = f.is_integral(&lam);
    Some(format!(
        "with h[mu{};{}] = 0 the series coefficient Λ[{};{};2] equals {} = {} in ordered coordinates (integral: {ok}); Λ generators are taken only along directions with h ≠ 0",
        i + 1,
        LoopAlgebra::render_exponent(&s),
        i + 1,
        LoopAlgebra::render_exponent(&s),
        f.u.render(&lam),
        f.render_coords(&coords)
    ))
}

/// Λ-reduction along each primitive direction: integer coefficients, and the
/// closed case `d = 2, l = 1`.
pub fn verify_lambda_reduce(f: &IntegralForm, ds: &[u32], ls: &[u32]) -> (Report, Vec<LambdaReduction>) {
    let alg = f.alg();
    let mut rep = Report::new("lambda-reduce", &f.instance());
    rep.bound("d", format!("{ds:?}")).bound("l", format!("{ls:?}"));
    let mut shown = Vec::new();
    for i in 0..alg.rank0() {
        let Some(s) = f.lambda_directions(i, 2).into_iter().next() else {
            rep.note(format!("vertex {}: no primitive direction with h ≠ 0 for m = {}", i + 1, alg.m));
            continue;
        };
        for &d in ds {
            for &l in ls {
                let r: Vec<i64> = s.iter().map(|x| x * d as i64).collect();
                let inst = format!("i={} s={} d={d} l={l}", i + 1, LoopAlgebra::render_exponent(&s));
                match f.lambda_reduce(i, &r, l) {
                    Ok(red) => {
                        rep.check("integer-coefficients", true, || unreachable!());
                        // re-expand and compare
                        let mut acc = UElement::zero();
                        for (parts, c) in &red.terms {
                            let mut e = UElement::one();
                            for &n in parts {
                                e = f.u.u_multiply(&e, &f.u.lambda_coeff(i, &s, n).unwrap());
                            }
                            acc.add_scaled(&e, &Rational::from_bigint(c.clone()));
                        }
                        let target = f.u.lambda_coeff(i, &r, l).unwrap();
                        rep.check("re-expansion", acc == target, || {
                            (inst.clone(), f.u.render(&target), f.u.render(&acc))
                        });
                        if d == 2 && l == 1 {
                            let got = red.to_string();
                            let want = "Λ(2s,1) = 2Λ(s,2) − Λ(s,1)^2";
                            rep.check("closed-case", got == want, || (inst.clone(), want.into(), got.clone()));
                        }
                        if !shown.iter().any(|x: &LambdaReduction| x.d == d && x.l == l) {
                            shown.push(red);
                        }
                    }
                    Err(e) => {
                        let msg = e.to_string();
                        rep.check("integer-coefficients", false, || (inst.clone(), "integer polynomial".into(), msg));
                    }
                }
            }
        }
    }
    if let Some(ex) = vanishing_direction_example(f) {
        rep.finding("vanishing-direction", ex);
    }
    (rep, shown)
}

/// Products of at most three generators are integral in ordered coordinates
/// with the expected leading term; ordered monomials round-trip and are
/// linearly independent.
pub fn verify_integral_basis(f: &IntegralForm, b: &Bounds) -> Report {
    let alg = f.alg();
    let mut rep = Report::new("integral-basis", &f.instance());
    rep.bound("deg", b.deg).bound("expwin", b.expwin).bound("seed", b.seed);
    let pool = f.generator_pool(b.deg, b.expwin);
    let np = pool.len();
    rep.bound("pool", np);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);

    let mut words: Vec<Vec<usize>> = (0..np).map(|a| vec![a]).collect();
    rep.bound("singles", format!("exhaustive ({np})"));
    for len in [2u32, 3] {
        let total = (np as u128).pow(len);
        if total <= b.samples as u128 {
            let mut all: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..len {
                all = all
                    .into_iter()
                    .flat_map(|w| (0..np).map(move |a| [w.clone(), vec![a]].concat()))
                    .collect();
            }
            rep.bound(&format!("length {len}"), format!("exhaustive ({total})"));
            words.extend(all);
        } else {
            for _ in 0..b.samples {
                words.push((0..len).map(|_| rng.gen_range(0..np)).collect());
            }
            rep.bound(&format!("length {len}"), format!("sampled {} of {total}", b.samples));
        }
    }
    let certs: Vec<Certificate> = words
        .par_iter()
        .map(|w| {
            let gs: Vec<MGenerator> = w.iter().map(|&j| pool[j].clone()).collect();
            f.certify_product(&gs)
        })
        .collect();
    for (w, c) in words.iter().zip(&certs) {
        let gs: Vec<MGenerator> = w.iter().map(|&j| pool[j].clone()).collect();
        record_certificate(&mut rep, f, &gs, c);
    }

    // ordered monomials: round trip and rank
    let syms = alg.symbols_in_window(b.expwin.min(1));
    let mut monos = std::collections::BTreeSet::new();
    let target = b.samples.max(1000);
    let mut tries = 0;
    while monos.len() < target && tries < 20 * target {
        tries += 1;
        let n = rng.gen_range(1..=3usize).min(syms.len());
        let mut pick: Vec<usize> = sample(&mut rng, syms.len(), n).into_vec();
        pick.sort_unstable();
        let f2: Vec<(LoopSymbol, u32)> =
            pick.into_iter().map(|j| (syms[j].clone(), rng.gen_range(1..=b.deg.min(3)))).collect();
        monos.insert(OrderedMonomial(PBWMonomial::from_sorted(f2).unwrap()));
    }
    let monos: Vec<OrderedMonomial> = monos.into_iter().collect();
    rep.bound("ordered-monomials", monos.len());
    let expanded: Vec<UElement> = monos.par_iter().map(|m| f.expand(m)).collect();
    let round: Vec<bool> = monos
        .par_iter()
        .zip(&expanded)
        .map(|(m, e)| {
            let c = f.to_integral_coords(e);
            c.len() == 1 && c.coeff(m).is_one()
        })
        .collect();
    for (m, ok) in monos.iter().zip(round) {
        rep.check("round-trip", ok, || (f.render_ordered(m), "unit vector".into(), "other".into()));
    }
    let mut index = std::collections::BTreeMap::new();
    let mut ech = RationalEchelon::new();
    for e in &expanded {
        let v: SparseQ = e
            .terms()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect();
        ech.insert(v);
    }
    let (rank, n) = (ech.rank(), monos.len());
    rep.check("rank", rank == n, || ("ordered monomials".into(), n.to_string(), rank.to_string()));
    if let Some(ex) = vanishing_direction_example(f) {
        rep.finding("vanishing-direction", ex);
    }
    rep
}

/// Non-simple divided powers against the lattice spanned by products of
/// simple-root divided powers.
pub fn verify_prop_generators(f: &IntegralForm, b: &Bounds) -> Report {
    let alg = f.alg();
    let mut rep = Report::new("prop-generators", &f.instance());
    rep.bound("deg", b.deg).bound("expwin", b.expwin).bound("power", 2);
    let simple: Vec<usize> = (0..alg.rank0()).map(|i| f.simple_weight(i)).collect();
    let mut gens = Vec::new();
    for s in alg.symbols_in_window(b.expwin) {
        match s.kind() {
            LoopKind::XPlus(w) | LoopKind::XMinus(w) if simple.contains(&w) => {
                for n in 1..=b.deg {
                    gens.push(f.divided_power(&s, n).unwrap());
                }
            }
            _ => {}
        }
    }
    rep.bound("generators", gens.len());
    let mut targets = Vec::new();
    for s in alg.symbols_in_window(1) {
        match s.kind() {
            LoopKind::XPlus(w) | LoopKind::XMinus(w) if !simple.contains(&w) => {
                for a in 1..=2 {
                    targets.push((f.divided_power(&s, a).unwrap(), height(alg.weight(w))));
                }
            }
            _ => {}
        }
    }
    for (g, ht) in targets {
        // degree must at least reach the weight of the target
        let bound = b.deg.max(ht as u32 * g.degree());
        let target = f.expand_generator(&g);
        let out = f.zspan_membership(&target, &gens, bound);
        let name = format!("{} (degree ≤ {bound}, {} products)", f.render_generator(&g), out.products);
        rep.check("non-integral-product", out.non_integral_products == 0, || {
            (name.clone(), "0".into(), out.non_integral_products.to_string())
        });
        match out.membership {
            Membership::Member => rep.check("member", true, || unreachable!()),
            Membership::NonMember => {
                let mult = (2..=8)
                    .find(|&c| {
                        f.zspan_membership(&target.scale(&Rational::integer(c)), &gens, bound).membership
                            == Membership::Member
                    })
                    .map(|c| format!("nonmember; {c}·target is a member"))
                    .unwrap_or_else(|| "nonmember".into());
                rep.check("member", false, || (name.clone(), "member".into(), mult));
            }
            Membership::Unknown => {
                rep.observe("member", name, "member".into(), "unknown (bound too small)".into());
                rep.mark_inconclusive();
            }
        }
    }
    rep
}
