//! Named identity checks grouped into suites, shared by the CLI and the
//! integration tests.

use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grassmann::berezin::{compare_with_reference, expand_linearized_action, Component, ExpansionConvention};
use crate::grassmann::circle::{
    descend_check, inclusion_is_homomorphism, mu_r, proj_r, verify_action_on_fields, Isometry,
};
use crate::grassmann::derivation::{anticommutator, apply_d, d_t, test_monomials, Invariance, OddIndex};
use crate::grassmann::point::{time_reversal_is_automorphism, R11Law, SuperPoint, TimeSign};
use crate::manifold::{builtin, l_genus, pushforward};
use crate::scalar::{rat, Scalar};
use crate::series::{
    check_log_l_series, convert_basis, l_polynomials, verify_exponential_forms, zeta_over_2pii, zeta_over_2pii_numeric,
    Basis, GradedPolynomial,
};
use crate::susy::{PolyForm, Section};
use crate::zeta::{
    concrete_report, corpus, formal_report, regularized_product_power, trace_inv_power, trace_inv_power_numeric,
    BoundaryCondition, RPower,
};
use crate::{GaussianRational, Grassmann};

/// Absolute tolerance for the 10⁶-term zeta summations.
pub const ZETA_SUM_TOLERANCE: f64 = 1e-12;
pub const ZETA_SUM_TERMS: usize = 1_000_000;
/// Absolute tolerance for the 10⁵-mode trace sums.
pub const MODE_SUM_TOLERANCE: f64 = 1e-8;
pub const MODE_SUM_MODES: usize = 100_000;
pub const KERNEL_SAMPLES: usize = 120;
pub const KERNEL_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy in the stated identity, observed exactly as documented.
    KnownDiscrepancy,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownDiscrepancy => "KNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, outcome: Result<(bool, String)>) -> Self {
        let (status, detail) = match outcome {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, e.to_string()),
        };
        Check { suite, name: name.into(), status, detail }
    }

    fn known(suite: &'static str, name: impl Into<String>, outcome: Result<Option<String>>, detail: String) -> Self {
        let (status, detail) = match outcome {
            Ok(Some(d)) => (Status::KnownDiscrepancy, d),
            Ok(None) => (Status::Fail, format!("documented discrepancy not reproduced; {detail}")),
            Err(e) => (Status::Fail, e.to_string()),
        };
        Check { suite, name: name.into(), status, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status.label(), self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Grassmann,
    Susy,
    Series,
    Zeta,
    Manifold,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Grassmann, Suite::Susy, Suite::Series, Suite::Zeta, Suite::Manifold];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Grassmann => "grassmann",
            Suite::Susy => "susy",
            Suite::Series => "series",
            Suite::Zeta => "zeta",
            Suite::Manifold => "manifold",
        }
    }

    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .map(|s| vec![s])
            .ok_or_else(|| Error::Usage(format!("unknown suite {name:?}")))
    }

    pub fn run(self) -> Vec<Check> {
        match self {
            Suite::Grassmann => grassmann_checks(),
            Suite::Susy => susy_checks(),
            Suite::Series => series_checks(),
            Suite::Zeta => zeta_checks(),
            Suite::Manifold => manifold_checks(),
        }
    }
}

/// No check failed; documented discrepancies do not count as failures.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

pub fn checks_to_json(checks: &[Check]) -> Value {
    json!({
        "passed": all_passed(checks),
        "checks": checks.iter().map(|c| json!({
            "suite": c.suite,
            "name": c.name,
            "status": c.status.label(),
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

fn yes(detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((true, detail.into()))
}

// ---------------------------------------------------------------- grassmann

fn generator(with_rho: bool) -> Result<SuperPoint<GaussianRational>> {
    let rho = if with_rho { Grassmann::odd("ρ1") } else { Grassmann::zero() };
    SuperPoint::r11(Grassmann::even("r"), rho)
}

pub fn check_odd_fields() -> Result<(bool, String)> {
    let minus_i = -GaussianRational::i();
    let monomials = test_monomials::<GaussianRational>(4);
    for f in &monomials {
        let target = d_t(f).scale(&minus_i);
        for k in [OddIndex::One, OddIndex::Two] {
            if apply_d(k, &apply_d(k, f)) != target {
                return Ok((false, format!("D^2 differs on {}", f.render())));
            }
        }
        if !anticommutator(OddIndex::One, OddIndex::Two, Invariance::Right, f).is_zero() {
            return Ok((false, format!("[D1, D2] nonzero on {}", f.render())));
        }
    }
    Ok((true, format!("{} monomials", monomials.len())))
}

pub fn check_projection_invariance() -> Result<(bool, String)> {
    let p = SuperPoint::<GaussianRational>::generic_r12("t", "θ1", "θ2");
    for with_rho in [false, true] {
        let r = generator(with_rho)?;
        if proj_r(&mu_r(&p, &r)?, &r)? != proj_r(&p, &r)? {
            return Ok((false, format!("fails with ρ1 {}", if with_rho { "present" } else { "absent" })));
        }
    }
    yes("generic point, ρ1 = 0 and ρ1 generic")
}

/// Over all 8 on/off patterns of (u, ν1, ν2), descent fails exactly when ν2 ≠ 0.
pub fn check_descent_rejection() -> Result<(bool, String)> {
    let r = generator(true)?;
    for mask in 0..8u8 {
        let pick = |bit: u8, e: Grassmann| if mask & bit != 0 { e } else { Grassmann::zero() };
        let g = SuperPoint::r12(
            pick(1, Grassmann::even("u")),
            pick(2, Grassmann::odd("ν1")),
            pick(4, Grassmann::odd("ν2")),
        )?;
        let descends = descend_check(&Isometry::Translation(g), &r)?.descends();
        if descends == (mask & 4 != 0) {
            return Ok((false, format!("pattern {mask:03b}: descends = {descends}")));
        }
    }
    yes("8 translation patterns")
}

pub fn check_field_action() -> Result<(bool, String)> {
    let g = SuperPoint::<GaussianRational>::r11(Grassmann::even("u"), Grassmann::odd("ν1"))?;
    verify_action_on_fields(&g)?;
    yes("generic (u, ν1) on generic (r, ρ1, x, ψ)")
}

pub fn grassmann_checks() -> Vec<Check> {
    const S: &str = "grassmann";
    let expansion = expand_linearized_action::<GaussianRational>(4, &ExpansionConvention::default());
    let comparison = expansion.map(|e| compare_with_reference(&e));
    vec![
        Check::new(S, "odd fields: D1^2 = D2^2 = -i d/dt and [D1, D2] = 0", check_odd_fields()),
        Check::new(
            S,
            "time reversal acts by automorphisms",
            time_reversal_is_automorphism::<GaussianRational>(TimeSign::Reverse).map(|b| (b, String::new())),
        ),
        Check::new(
            S,
            "inclusion R^{1|1} -> R^{1|2} is a homomorphism",
            inclusion_is_homomorphism::<GaussianRational>(R11Law::Restricted).map(|b| (b, String::new())),
        ),
        Check::new(S, "proj_R o mu_R = proj_R", check_projection_invariance()),
        Check::new(S, "descent rejects exactly the nu2 != 0 translations", check_descent_rejection()),
        Check::new(S, "field action agrees with the composite action", check_field_action()),
        Check::new(
            S,
            "Berezin expansion reproduces the component Lagrangian",
            comparison.clone().map(|c| (c.lagrangian_difference.is_zero(), c.lagrangian_difference.render())),
        ),
        Check::new(
            S,
            "boundary conditions: a, eta1 periodic; eta2, G antiperiodic",
            comparison.clone().map(|c| (c.boundary_mismatches.is_empty(), format!("{:?}", c.boundary_mismatches))),
        ),
        Check::new(
            S,
            "operators D_a = d^2 - iRd, D_eta1 = d, D_G = Id",
            comparison.clone().map(|c| {
                let bad: Vec<_> = c.operator_mismatches.iter().filter(|(k, _, _)| *k != Component::Eta2).collect();
                (bad.is_empty(), format!("{bad:?}"))
            }),
        ),
        eta2_check(comparison),
    ]
}

/// The stated D_η₂ = d + iℛ disagrees with the Lagrangian, which gives d − iℛ.
fn eta2_check(comparison: Result<crate::grassmann::berezin::ReferenceComparison<GaussianRational>>) -> Check {
    let outcome = comparison.map(|c| {
        let only_eta2 = c.operator_mismatches.len() == 1 && c.operator_mismatches[0].0 == Component::Eta2;
        if !only_eta2 {
            return None;
        }
        let (_, found, stated) = &c.operator_mismatches[0];
        let flipped = found.terms().iter().all(|((p, k), v)| {
            let w = stated.coefficient(*p, *k);
            if p % 2 == 1 {
                *v == -w
            } else {
                *v == w
            }
        });
        flipped.then(|| format!("Lagrangian gives {}, stated {}", found.render(), stated.render()))
    });
    Check::known(
        "grassmann",
        "operator D_eta2 = d + iR",
        outcome,
        "expected only the R-sign of D_eta2 to differ".into(),
    )
}

// ---------------------------------------------------------------- susy

fn random_form(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> Result<PolyForm<GaussianRational>> {
    let mut dx: Vec<usize> = (1..=n).collect();
    for i in (1..dx.len()).rev() {
        dx.swap(i, rng.gen_range(0..=i));
    }
    dx.truncate(degree);
    dx.sort_unstable();
    let exponents: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let c = GaussianRational::from_ratio(rng.gen_range(-5..=5i64).max(1), rng.gen_range(1..=3));
    PolyForm::monomial(n, c, &exponents, &dx)
}

/// ρ-free polynomial-form sections Σ r^q α_q: roughly half of the parts are
/// closed with q = deg/2, the rest perturb the form or the exponent.
pub fn sample_sections(seed: u64, count: usize) -> Result<Vec<Section<GaussianRational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(1..=5usize);
        let mut s = Section::zero(n);
        for _ in 0..rng.gen_range(1..=3) {
            let degree = rng.gen_range(0..=n.min(3));
            let form = match rng.gen_range(0..3) {
                // exact, hence closed
                0 if degree > 0 => random_form(&mut rng, n, degree - 1)?.d(),
                // constant coefficients, closed
                1 => {
                    let f = random_form(&mut rng, n, degree)?;
                    PolyForm::from_terms(
                        n,
                        f.terms().map(|(m, c)| {
                            let mut m = m.clone();
                            m.exponents.iter_mut().for_each(|e| *e = 0);
                            (m, c.clone())
                        }),
                    )
                }
                _ => random_form(&mut rng, n, degree)?,
            };
            let twice_q = if rng.gen_bool(0.75) { degree as i32 } else { rng.gen_range(-3..=4) };
            s = s.add(&Section::term(twice_q, false, form));
        }
        out.push(s);
    }
    Ok(out)
}

/// Every form component closed and every exponent q = deg/2.
pub fn kernel_predicate(s: &Section<GaussianRational>) -> bool {
    s.parts().all(|(key, form)| {
        !key.rho
            && form.degrees().into_iter().all(|d| {
                let c = form.component(d);
                c.is_zero() || (c.is_closed() && key.twice_q == d as i32)
            })
    })
}

pub fn check_kernel(seed: u64, count: usize) -> Result<(bool, String)> {
    let sections = sample_sections(seed, count)?;
    let mut in_kernel = 0;
    for s in &sections {
        let closed = s.apply_q().is_zero();
        if closed != kernel_predicate(s) {
            return Ok((false, format!("Q s = 0 is {closed} for {}", s.render())));
        }
        in_kernel += closed as usize;
    }
    Ok((true, format!("{count} sections, {in_kernel} in the kernel")))
}

pub fn susy_checks() -> Vec<Check> {
    const S: &str = "susy";
    let q_squared = sample_sections(KERNEL_SEED + 1, 40).map(|v| {
        let bad = v.iter().find(|s| s.q_squared() != s.minus_i_rho_d_over_r());
        (bad.is_none(), bad.map(|s| s.render()).unwrap_or_default())
    });
    let cocycles = sample_sections(KERNEL_SEED + 2, 60).and_then(|v| {
        let mut n = 0;
        for s in v.iter().filter(|s| s.is_supersymmetric()) {
            if s.to_cocycle()?.to_section() != *s {
                return Ok((false, s.render()));
            }
            n += 1;
        }
        Ok((true, format!("{n} closed sections")))
    });
    vec![
        Check::new(S, "kernel of Q = closed forms with r-exponent deg/2", check_kernel(KERNEL_SEED, KERNEL_SAMPLES)),
        Check::new(S, "Q^2 = -(i/r) rho d", q_squared),
        Check::new(S, "closed sections round-trip through cocycles", cocycles),
    ]
}

// ---------------------------------------------------------------- series

pub fn check_zeta_summation(max_two_k: u32, terms: usize) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for s in (2..=max_two_k).step_by(2) {
        let exact = num_traits::ToPrimitive::to_f64(&zeta_over_2pii(s)?).unwrap_or(f64::NAN);
        worst = worst.max((zeta_over_2pii_numeric(s, terms) - exact).abs());
    }
    Ok((worst < ZETA_SUM_TOLERANCE, format!("max error {worst:.2e} over {terms} terms")))
}

pub fn check_bernoulli_form(max_k: u32) -> Result<(bool, String)> {
    for k in 1..=max_k {
        let s = 2 * k;
        let mut fact = BigRational::from_integer(1.into());
        for j in 1..=s {
            fact *= BigRational::from_integer(j.into());
        }
        let expected = -crate::series::bernoulli(s) / (fact * rat(2, 1));
        if zeta_over_2pii(s)? != expected {
            return Ok((false, format!("2k = {s}")));
        }
    }
    yes(format!("k <= {max_k}"))
}

pub fn series_checks() -> Vec<Check> {
    const S: &str = "series";
    let forms = verify_exponential_forms(8).map(|r| {
        (r.product_formulas_hold() && r.cosh_reading() == "cosh(x/2)", format!("reading {}", r.cosh_reading()))
    });
    let lpoly = l_polynomials(2).map(|l| {
        let p1 = GradedPolynomial::<BigRational>::var(Basis::Pontryagin, 2, 1);
        let p2 = GradedPolynomial::<BigRational>::var(Basis::Pontryagin, 2, 2);
        let l1 = p1.scale(&rat(1, 3));
        let l2 = p2.scale(&rat(7, 45)).sub(&p1.pow(2).scale(&rat(1, 45)));
        (l[0] == l1 && l[1] == l2, format!("L1 = {}, L2 = {}", l[0], l[1]))
    });
    vec![
        Check::new(S, "sinh and cosh product forms to x^8 (cosh(x/2) reading)", forms),
        Check::new(
            S,
            "log l_series = sum 2(zeta - lambda)/(2k(2 pi i)^2k), k <= 4",
            check_log_l_series(8).map(|m| (m.is_none(), m.map(|m| format!("{m:?}")).unwrap_or_default())),
        ),
        Check::new(S, "zeta(2k)/(2 pi i)^2k = -B_2k/(2(2k)!), k <= 6", check_bernoulli_form(6)),
        Check::new(S, "zeta(2k)/(2 pi i)^2k by direct summation, k <= 6", check_zeta_summation(12, ZETA_SUM_TERMS)),
        Check::new(S, "L1 = p1/3, L2 = (7p2 - p1^2)/45", lpoly),
    ]
}

// ---------------------------------------------------------------- zeta

pub fn check_product_powers(max_n: u32) -> Result<(bool, String)> {
    for n in 1..=max_n {
        let p = regularized_product_power(n)?;
        if p != RPower::r(rat(n as i64, 2)) {
            return Ok((false, format!("n = {n}: {p}")));
        }
    }
    yes(format!("n <= {max_n}"))
}

pub fn check_mode_sums(max_k: u32, modes: usize) -> Result<(bool, String)> {
    let r = 1.3;
    let mut worst = 0.0f64;
    for k in 1..=max_k {
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Antiperiodic] {
            let exact = trace_inv_power(bc, 2 * k)?.to_f64(r);
            worst = worst.max((trace_inv_power_numeric(bc, 2 * k, r, modes) - exact).abs());
        }
    }
    Ok((worst < MODE_SUM_TOLERANCE, format!("max error {worst:.2e} at {modes} modes, r = {r}")))
}

pub fn check_sdet_is_l_class(max_n: usize, max_k: usize, periodic_periodic: bool) -> Result<(bool, String)> {
    for n in 1..=max_n {
        for k in 1..=max_k {
            let r = formal_report(n, k, periodic_periodic)?;
            if !r.equal {
                return Ok((false, format!("n = {n}, K = {k}: {}", r.sdet)));
            }
        }
    }
    yes(format!("n <= {max_n}, K <= {max_k}"))
}

/// The degree-4 and degree-8 parts of sdet in p against p1/3 and (7p2 − p1²)/45.
/// Returns the observed parts when they are 4^{-k} times the stated ones.
pub fn sdet_pontryagin_discrepancy(n: usize) -> Result<Option<String>> {
    let r = formal_report(n, 2, false)?;
    let in_p = convert_basis(&r.sdet)?;
    let p1 = GradedPolynomial::<BigRational>::var(Basis::Pontryagin, 2, 1);
    let p2 = GradedPolynomial::<BigRational>::var(Basis::Pontryagin, 2, 2);
    let stated = [p1.scale(&rat(1, 3)), p2.scale(&rat(7, 45)).sub(&p1.pow(2).scale(&rat(1, 45)))];
    let observed = [in_p.component(1), in_p.component(2)];
    if observed == stated {
        return Ok(None);
    }
    let rescaled = observed[0] == stated[0].scale(&rat(1, 4)) && observed[1] == stated[1].scale(&rat(1, 16));
    Ok(rescaled.then(|| format!("observed {} and {}, i.e. 4^-k times the stated parts", observed[0], observed[1])))
}

pub fn zeta_checks() -> Vec<Check> {
    const S: &str = "zeta";
    let concrete = corpus::instances()
        .into_iter()
        .map(|inst| {
            let name = format!("concrete sdet = formal sdet on {}", inst.name);
            Check::new(S, name, concrete_report(&inst, 4, false).map(|r| (r.passed(), String::new())))
        })
        .collect::<Vec<_>>();
    let mut checks = vec![
        Check::new(S, "regularized product of (2 pi k/r)^n = r^(n/2), n <= 8", check_product_powers(8)),
        Check::new(S, "trace of d^-2k matches mode sums, k <= 3", check_mode_sums(3, MODE_SUM_MODES)),
        Check::new(S, "sdet = L-class in ph, n <= 8, K <= 4", check_sdet_is_l_class(8, 4, false)),
        Check::new(S, "periodic-periodic sdet = 1", check_sdet_is_l_class(8, 4, true)),
        Check::known(
            S,
            "sdet in p: degree 4 = p1/3, degree 8 = (7p2 - p1^2)/45",
            sdet_pontryagin_discrepancy(4),
            "expected sdet in p to be 4^-k times the stated parts".into(),
        ),
    ];
    checks.extend(concrete);
    checks
}

// ---------------------------------------------------------------- manifold

/// ∫ 2^{n/2}·(sdet in p) over each builtin, which must equal its signature.
pub fn check_sdet_integrates_to_signature() -> Result<(bool, String)> {
    for name in builtin::names() {
        let m = builtin::model(name)?;
        let k = (m.dimension / 4) as usize;
        let r = formal_report(m.dimension as usize, k, false)?;
        let in_p = convert_basis(&r.sdet)?;
        let integral = m.evaluate(&m.evaluate_polynomial(&in_p)) * rat(1i64 << (m.dimension / 2), 1);
        if integral != BigRational::from_integer(m.signature.clone()) {
            return Ok((false, format!("{name}: {integral}")));
        }
    }
    yes(format!("{} builtins", builtin::names().len()))
}

pub fn manifold_checks() -> Vec<Check> {
    const S: &str = "manifold";
    let mut checks = Vec::new();
    for name in builtin::names() {
        let outcome = builtin::model(name).and_then(|m| {
            let data = m.pontryagin_data()?;
            let genus = l_genus(&data, 4)?;
            let pushed = pushforward(&m.unit(), &m, 4)?;
            let sig = BigRational::from_integer(data.signature.clone());
            Ok((
                genus == sig && pushed == genus,
                format!("L-genus = {genus}, pushforward(1) = {pushed}, signature = {sig}"),
            ))
        });
        checks.push(Check::new(S, format!("signature theorem on {name}"), outcome));
    }
    checks.push(Check::new(S, "2^(n/2) * sdet integrates to the signature", check_sdet_integrates_to_signature()));
    checks
}

pub fn run_suites(suites: &[Suite]) -> Vec<Check> {
    suites.iter().flat_map(|s| s.run()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_sections_cover_both_sides() {
        let v = sample_sections(KERNEL_SEED, KERNEL_SAMPLES).unwrap();
        let inside = v.iter().filter(|s| kernel_predicate(s)).count();
        assert!((20..=KERNEL_SAMPLES - 20).contains(&inside), "{inside}");
        assert_eq!(v, sample_sections(KERNEL_SEED, KERNEL_SAMPLES).unwrap());
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("all").unwrap().len(), 5);
        assert_eq!(Suite::parse("zeta").unwrap(), vec![Suite::Zeta]);
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Grassmann, Suite::Susy, Suite::Manifold] {
            let checks = suite.run();
            assert!(all_passed(&checks), "{:#?}", checks);
        }
        let g = grassmann_checks();
        assert_eq!(g.iter().filter(|c| c.status == Status::KnownDiscrepancy).count(), 1);
    }
}
