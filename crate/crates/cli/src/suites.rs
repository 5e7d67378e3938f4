//! Randomized verification suites. Trial `i` draws from its own stream of
//! the seeded generator, so reports do not depend on `--jobs`.

use std::path::PathBuf;

use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use ternforms::cubicinv::{cubic_i, cubic_j, kappa};
use ternforms::elimination::raw_discriminant;
use ternforms::gl3::{act_v22, act_vn, cofactor_delta, det3, Mat3};
use ternforms::picardlat::{brute_force_box, enumerate_tau_candidates, inverse_closure, restrict_to_box};
use ternforms::rep22::{branch_locus_check, covariant_ix, covariant_iz, is_generic_mod_p, verify_well_defined, Class22};
use ternforms::sample::{self, SampleRng};
use ternforms::{Domain, Error, Poly, Scalar, VarSet};

use crate::io::{CliError, CliResult};

pub const SUITES: [&str; 8] =
    ["disc-covariance", "cubic-kappa", "v22-welldef", "v22-covariance", "branch-locus", "lattice-enum", "euler", "action-laws"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub trials: Option<usize>,
    pub domain: Option<Domain>,
    pub primes: Vec<u64>,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub domain: Option<String>,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    pub results: Vec<TrialResult>,
}

type Check = std::result::Result<Value, Value>;

fn outcome(trial: usize, r: ternforms::Result<Check>) -> TrialResult {
    match r {
        Ok(Ok(detail)) => TrialResult { trial, pass: true, detail, counterexample: Value::Null },
        Ok(Err(cex)) => TrialResult { trial, pass: false, detail: Value::Null, counterexample: cex },
        Err(e) => TrialResult {
            trial,
            pass: false,
            detail: Value::Null,
            counterexample: json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
        },
    }
}

fn text(f: &Poly) -> Value {
    Value::String(f.to_string())
}

fn require_domain(suite: &str, d: Domain, allowed: &[Domain]) -> CliResult<Domain> {
    let ok = allowed.iter().any(|a| match (a, d) {
        (Domain::Prime(_), Domain::Prime(_)) => true,
        _ => *a == d,
    });
    if ok {
        Ok(d)
    } else {
        Err(CliError::InvalidArgument(format!("suite {suite} does not support domain {d}")))
    }
}

fn disc_covariance(rng: &mut SampleRng, i: usize, domain: Domain) -> ternforms::Result<Check> {
    let n = 2 + (i % 3) as u32;
    let f = sample::ternary_form(rng, n, domain, 5);
    let g = sample::invertible_mat3(rng, domain, 3);
    let lhs = raw_discriminant(&act_vn(&g, &f)?)?;
    let rhs = &det3(&g).pow(n * (n - 1) * (n - 1)) * &raw_discriminant(&f)?;
    let base = json!({ "n": n, "f": text(&f), "gamma": g.to_json() });
    if lhs == rhs {
        Ok(Ok(json!({ "n": n })))
    } else {
        Ok(Err(json!({ "input": base, "lhs": lhs.to_string(), "rhs": rhs.to_string() })))
    }
}

fn cubic_kappa(rng: &mut SampleRng) -> ternforms::Result<Check> {
    let f = sample::ternary_form(rng, 3, Domain::Integer, 9);
    let i = cubic_i(&f)?.to_rational().expect("rational");
    let j = cubic_j(&f)?.to_rational().expect("rational");
    let lhs = BigRational::from_integer(4.into()) * &i * &i * &i - &j * &j;
    let raw = raw_discriminant(&f)?.to_rational().expect("rational");
    if lhs == kappa() * &raw {
        Ok(Ok(Value::Null))
    } else {
        Ok(Err(json!({ "f": text(&f), "I": i.to_string(), "J": j.to_string(), "raw": raw.to_string() })))
    }
}

/// `L = sum t_ij x_i z_j` with nine indeterminate coefficients.
fn symbolic_l(vars: &VarSet) -> ternforms::Result<Poly> {
    let q = Domain::Rational;
    let mut l = Poly::zero(vars, q);
    for i in 0..3 {
        for j in 0..3 {
            let t = Poly::var_named(vars, q, &format!("t{}{}", i + 1, j + 1))?;
            let xz = Poly::var(vars, q, i).checked_mul(&Poly::var(vars, q, 3 + j))?;
            l = l.checked_add(&t.checked_mul(&xz)?)?;
        }
    }
    Ok(l)
}

fn v22_welldef(rng: &mut SampleRng, i: usize, domain: Domain) -> ternforms::Result<Check> {
    if i == 0 && domain == Domain::Rational {
        let vars = VarSet::xz().extend((1..=3).flat_map(|a| (1..=3).map(move |b| format!("t{a}{b}"))));
        let f = sample::form22(rng, domain, 7).embed(&vars)?;
        return Ok(if verify_well_defined(&f, &symbolic_l(&vars)?)? {
            Ok(json!({ "symbolic": true }))
        } else {
            Err(json!({ "symbolic": true, "f": text(&f) }))
        });
    }
    let f = sample::form22(rng, domain, 7);
    let l = sample::form11(rng, domain, 7);
    Ok(if verify_well_defined(&f, &l)? { Ok(Value::Null) } else { Err(json!({ "f": text(&f), "L": text(&l) })) })
}

fn v22_covariance(rng: &mut SampleRng, domain: Domain) -> ternforms::Result<Check> {
    let f = Class22::canonicalize(&sample::form22(rng, domain, 5))?;
    let g = sample::invertible_mat3(rng, domain, 3);
    let moved = act_v22(&g, &f)?;
    let d2 = det3(&g).pow(2);
    let want_x = covariant_ix(&f)?.substitute_linear(g.as_matrix())?.scale(&d2)?;
    let want_z = covariant_iz(&f)?.substitute_linear(cofactor_delta(&g).as_matrix())?;
    let x_ok = covariant_ix(&moved)? == want_x;
    let z_ok = covariant_iz(&moved)? == want_z;
    if x_ok && z_ok {
        Ok(Ok(Value::Null))
    } else {
        Ok(Err(json!({ "F": text(f.representative()), "gamma": g.to_json(), "I_x_law": x_ok, "I_z_law": z_ok })))
    }
}

const GENERIC_DRAWS: usize = 200;

fn branch_locus(rng: &mut SampleRng, p: u64) -> ternforms::Result<Check> {
    for drawn in 1..=GENERIC_DRAWS {
        let f = Class22::canonicalize(&sample::form22(rng, Domain::Integer, 20))?;
        if !is_generic_mod_p(&f, p)? {
            continue;
        }
        let r = branch_locus_check(&f.reduce_mod_p(p)?)?;
        let pairing = json!({ "x_projection": r.x_branch_covariant, "z_projection": r.z_branch_covariant });
        let resolved = r.x_branch_covariant.is_some() && r.z_branch_covariant.is_some();
        let detail = json!({ "p": p, "draws": drawn, "F": text(f.representative()), "pairing": pairing });
        return Ok(if r.counterexamples.is_empty() && resolved {
            Ok(detail)
        } else {
            Err(json!({ "input": detail, "report": serde_json::to_value(&r).expect("serializable") }))
        });
    }
    Ok(Err(json!({ "p": p, "reason": format!("no generic class in {GENERIC_DRAWS} draws") })))
}

fn euler(rng: &mut SampleRng, domain: Domain) -> ternforms::Result<Check> {
    let n = rng.gen_range(1..=6u32);
    let f = sample::ternary_form(rng, n, domain, 9);
    let mut sum = Poly::zero(f.vars(), domain);
    for v in 0..3 {
        sum = sum.checked_add(&Poly::var(f.vars(), domain, v).checked_mul(&f.derivative_index(v))?)?;
    }
    let want = f.scale(&Scalar::from_i64(domain, n as i64))?;
    Ok(if sum == want { Ok(json!({ "degree": n })) } else { Err(json!({ "f": text(&f), "euler_sum": text(&sum) })) })
}

fn action_laws(rng: &mut SampleRng, domain: Domain) -> ternforms::Result<Check> {
    let n = rng.gen_range(1..=4u32);
    let f = sample::ternary_form(rng, n, domain, 5);
    let c = Class22::canonicalize(&sample::form22(rng, domain, 5))?;
    let g1 = sample::invertible_mat3(rng, domain, 3);
    let g2 = sample::invertible_mat3(rng, domain, 3);
    let g12 = g1.mul(&g2)?;
    let vn = act_vn(&g1, &act_vn(&g2, &f)?)? == act_vn(&g12, &f)?;
    let v22 = act_v22(&g1, &act_v22(&g2, &c)?)? == act_v22(&g12, &c)?;
    let id = Mat3::identity(domain);
    let unit = act_vn(&id, &f)? == f && act_v22(&id, &c)? == c;
    Ok(if vn && v22 && unit {
        Ok(Value::Null)
    } else {
        Err(json!({
            "f": text(&f), "F": text(c.representative()),
            "g1": g1.to_json(), "g2": g2.to_json(),
            "vn_composition": vn, "v22_composition": v22, "identity": unit,
        }))
    })
}

fn lattice_trials() -> (Vec<TrialResult>, Value) {
    let all = enumerate_tau_candidates();
    let mut results: Vec<TrialResult> = all
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let detail = serde_json::to_value(c).expect("serializable");
            let ok = c.residual_is_zero() && c.quarter_integral;
            outcome(k, Ok(if ok { Ok(detail) } else { Err(detail) }))
        })
        .collect();
    let enumerated = restrict_to_box(&all, 20);
    let brute = brute_force_box(20);
    let agree = json!({ "bound": 20, "enumerated_in_box": enumerated.len(), "brute_force": brute.len() });
    results.push(outcome(all.len(), Ok(if enumerated == brute { Ok(agree) } else { Err(agree) })));
    let closure = serde_json::to_value(inverse_closure(&all)).expect("serializable");
    (results, json!({ "candidates": all.len(), "inverse_closure": closure }))
}

fn run_trials<F>(count: usize, seed: u64, trial: F) -> Vec<TrialResult>
where
    F: Fn(&mut SampleRng, usize) -> ternforms::Result<Check> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| outcome(i, trial(&mut sample::trial_rng(seed, i as u64), i)))
        .collect()
}

fn default_trials(suite: &str) -> usize {
    match suite {
        "branch-locus" => 3,
        _ => 20,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> CliResult<SuiteReport> {
    let suite = cfg.suite.as_str();
    if !SUITES.contains(&suite) {
        return Err(CliError::UnknownSuite(cfg.suite.clone()));
    }
    let trials = cfg.trials.unwrap_or_else(|| default_trials(suite));
    let any_field = [Domain::Rational, Domain::Prime(2)];
    let mut summary = Value::Null;
    let mut reported_domain = None;
    let mut primes = Vec::new();
    let mut with_domain = |default: Domain, allowed: &[Domain]| -> CliResult<Domain> {
        let d = require_domain(suite, cfg.domain.unwrap_or(default), allowed)?;
        reported_domain = Some(d.to_string());
        Ok(d)
    };
    let seed = cfg.seed;
    let results = match suite {
        "disc-covariance" => {
            let d = with_domain(Domain::Prime(10007), &[Domain::Integer, Domain::Rational, Domain::Prime(2)])?;
            run_trials(trials, seed, |r, i| disc_covariance(r, i, d))
        }
        "cubic-kappa" => {
            with_domain(Domain::Integer, &[Domain::Integer])?;
            let results = run_trials(trials, seed, |r, _| cubic_kappa(r));
            summary = json!({ "kappa": ternforms::cubicinv::show_rat(&kappa()) });
            results
        }
        "v22-welldef" => {
            let d = with_domain(Domain::Rational, &any_field)?;
            run_trials(trials, seed, |r, i| v22_welldef(r, i, d))
        }
        "v22-covariance" => {
            let d = with_domain(Domain::Prime(101), &any_field)?;
            run_trials(trials, seed, |r, _| v22_covariance(r, d))
        }
        "branch-locus" => {
            primes = if cfg.primes.is_empty() { vec![11] } else { cfg.primes.clone() };
            if primes.iter().any(|&p| p == 2) {
                return Err(CliError::InvalidArgument("branch-locus needs odd primes".into()));
            }
            let ps = primes.clone();
            let results = run_trials(trials * ps.len(), seed, |r, i| branch_locus(r, ps[i / trials]));
            summary = branch_summary(&results);
            results
        }
        "lattice-enum" => {
            let (results, s) = lattice_trials();
            summary = s;
            results
        }
        "euler" => {
            let d = with_domain(Domain::Rational, &[Domain::Integer, Domain::Rational, Domain::Prime(2)])?;
            run_trials(trials, seed, |r, _| euler(r, d))
        }
        "action-laws" => {
            let d = with_domain(Domain::Prime(10007), &any_field)?;
            run_trials(trials, seed, |r, _| action_laws(r, d))
        }
        _ => unreachable!("suite names checked above"),
    };
    let consistent = summary.get("consistent").and_then(Value::as_bool).unwrap_or(true);
    let passed = results.iter().filter(|r| r.pass).count();
    let failed = results.len() - passed;
    Ok(SuiteReport {
        suite: cfg.suite.clone(),
        seed,
        domain: reported_domain,
        primes,
        trials: results.len(),
        passed,
        failed,
        all_pass: failed == 0 && consistent,
        summary,
        results,
    })
}

/// The covariant paired with each projection must agree across samples.
fn branch_summary(results: &[TrialResult]) -> Value {
    let pairings: Vec<&Value> = results.iter().filter(|r| r.pass).map(|r| &r.detail["pairing"]).collect();
    let consistent = pairings.windows(2).all(|w| w[0] == w[1]);
    json!({ "pairing": pairings.first().cloned().cloned().unwrap_or(Value::Null), "consistent": consistent })
}

/// Runs `cfg` on a pool of `cfg.jobs` threads.
pub fn run_suite_with_jobs(cfg: &SuiteConfig) -> CliResult<SuiteReport> {
    match cfg.jobs {
        None => run_suite(cfg),
        Some(0) => Err(CliError::InvalidArgument("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Math(Error::Config(e.to_string())))?
            .install(|| run_suite(cfg)),
    }
}
