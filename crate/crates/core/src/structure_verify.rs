//! Reports for the finite-type layer: folding table, Chevalley axioms and
//! the lifted diagram automorphism.

use crate::chevalley::{
    build_chevalley, check_chevalley_axioms, check_jacobi_exhaustive, check_jacobi_sampled,
    extend_sigma, extraspecial_signs, sigma_homomorphism_failures, sigma_order_holds, CheckCount,
};
use crate::error::Result;
use crate::report::Report;
use crate::roots::{build_root_system, cartan_equivalent, classical_cartan, fold, DiagramAut, TypeLabel};

/// Expected folded type for a supported (type, rank, k).
pub fn expected_folding(t: TypeLabel, n: usize, k: u32) -> Option<(&'static str, bool)> {
    // (Cartan name of R₀, whether doubled weights occur)
    Some(match (t, n, k) {
        (TypeLabel::A, 2, 2) => ("A1", true),
        (TypeLabel::A, 3, 2) => ("C2", false),
        (TypeLabel::A, 4, 2) => ("B2", true),
        (TypeLabel::D, 4, 2) => ("B3", false),
        (TypeLabel::D, 4, 3) => ("G2", false),
        (TypeLabel::E, 6, 2) => ("F4", false),
        _ => return None,
    })
}

fn fmt_matrix(m: &[Vec<i64>]) -> String {
    format!("{m:?}")
}

pub fn verify_folding(t: TypeLabel, n: usize, k: u32) -> Result<Report> {
    let rd = build_root_system(t, n)?;
    let sigma = DiagramAut::standard(&rd, k)?;
    let f = fold(&rd, &sigma);
    let mut rep = Report::new("folding", &format!("{t}{n} k={k}"));
    rep.finding("folded-cartan", fmt_matrix(&f.cartan));
    rep.finding("vertex-orbits", format!("{:?}", f.vertex_orbits));
    rep.finding("restricted-positive", f.restricted_positive.len().to_string());
    match expected_folding(t, n, k) {
        Some((name, doubled)) => {
            let want = classical_cartan(name).expect("known Cartan");
            rep.check("folded-cartan", cartan_equivalent(&f.cartan, &want), || {
                (format!("{t}{n} k={k}"), format!("{name} {}", fmt_matrix(&want)), fmt_matrix(&f.cartan))
            });
            rep.check("doubled-weights", f.doubled.is_empty() != doubled, || {
                (
                    format!("{t}{n} k={k}"),
                    if doubled { "present (BC pattern)" } else { "absent" }.into(),
                    format!("{:?}", f.doubled),
                )
            });
            let label = if doubled { format!("BC{}", f.rank0()) } else { name.to_string() };
            rep.finding("folded-type", label);
        }
        None => rep.note("no reference folding for this configuration"),
    }
    Ok(rep)
}

fn record(rep: &mut Report, check: &str, c: &CheckCount, inst: &str) {
    for f in &c.failures {
        rep.check(check, false, || (inst.to_string(), "holds".into(), f.clone()));
    }
    let passed = c.checked.saturating_sub(c.failures.len() as u64);
    for _ in 0..passed {
        rep.check(check, true, || unreachable!());
    }
}

/// Jacobi (exhaustive up to rank 4, sampled beyond), Chevalley relations,
/// `|N| = p+1` and extraspecial signs.
pub fn verify_chevalley(t: TypeLabel, n: usize, samples: usize, seed: u64) -> Result<Report> {
    let rd = build_root_system(t, n)?;
    let ct = build_chevalley(&rd);
    let inst = format!("{t}{n}");
    let mut rep = Report::new("chevalley", &inst);
    rep.bound("dim", ct.dim());
    let jac = if n <= 4 {
        rep.bound("jacobi", "exhaustive (unordered triples)");
        check_jacobi_exhaustive(&ct)
    } else {
        rep.bound("jacobi", format!("sampled {samples}")).bound("seed", seed);
        check_jacobi_sampled(&ct, samples, seed)
    };
    record(&mut rep, "jacobi", &jac, &inst);
    record(&mut rep, "axioms", &check_chevalley_axioms(&ct), &inst);
    for (root, s) in extraspecial_signs(&ct) {
        rep.check("extraspecial-sign", s == 1, || (format!("{root:?}"), "1".into(), s.to_string()));
    }
    rep.note("structure constants are stored as machine integers, so integrality is structural");
    Ok(rep)
}

/// σ^k = id and σ([a,b]) = [σa,σb] on all basis pairs.
pub fn verify_sigma(t: TypeLabel, n: usize, k: u32) -> Result<Report> {
    let rd = build_root_system(t, n)?;
    let sigma = DiagramAut::standard(&rd, k)?;
    let ct = extend_sigma(&build_chevalley(&rd), &sigma)?;
    let inst = format!("{t}{n} k={k}");
    let mut rep = Report::new("sigma", &inst);
    rep.check("order", sigma_order_holds(&ct, k), || (inst.clone(), format!("σ^{k} = id"), "differs".into()));
    let fails = sigma_homomorphism_failures(&ct);
    let pairs = ct.dim() * ct.dim();
    rep.bound("pairs", pairs);
    for (i, j) in &fails {
        rep.check("homomorphism", false, || (format!("({}, {})", ct.name(*i), ct.name(*j)), "equal".into(), "differ".into()));
    }
    for _ in 0..pairs.saturating_sub(fails.len()) {
        rep.check("homomorphism", true, || unreachable!());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding_table() {
        for (t, n, k) in [
            (TypeLabel::A, 2, 2),
            (TypeLabel::A, 3, 2),
            (TypeLabel::A, 4, 2),
            (TypeLabel::D, 4, 2),
            (TypeLabel::D, 4, 3),
        ] {
            let rep = verify_folding(t, n, k).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn sigma_on_a3() {
        let rep = verify_sigma(TypeLabel::A, 3, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.total_checked(), 1 + 15 * 15);
    }
}
