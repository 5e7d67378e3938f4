use std::path::Path;

use serde_json::{json, Value};

use ternforms::arith::parse_rational;
use ternforms::cubicinv::{self, show_rat, InvariantTuple};
use ternforms::elimination::{self, DEFAULT_TRIAL_BOUND};
use ternforms::gl3::{act_v22, act_vn};
use ternforms::picardlat::{self, brute_force_box, inverse_closure, restrict_to_box};
use ternforms::rep22::{self, Class22};
use ternforms::{Domain, Poly, Scalar};

use crate::io::{parse_list, parse_primes, read_form, read_matrix, CliError, CliResult};

fn form_json(f: &Poly) -> Value {
    json!({ "text": f.to_string(), "json": f.to_json() })
}

pub fn disc(form: &Path, modulus: Option<u64>, raw: bool) -> CliResult<Value> {
    let f = read_form(form, modulus)?;
    let r = elimination::discriminant_n(&f, !raw)?;
    Ok(json!({
        "raw": r.raw.to_string(),
        "constant": r.constant.to_string(),
        "normalized": r.normalized.to_string(),
        "degree_check": r.degree_check,
        "domain": f.domain().to_string(),
    }))
}

pub fn good_reduction(form: &Path, s_set: &str, trial_bound: Option<u64>) -> CliResult<Value> {
    let f = read_form(form, None)?;
    let s = parse_primes(s_set)?;
    let b = elimination::bad_primes(&f, &s, trial_bound.unwrap_or(DEFAULT_TRIAL_BOUND))?;
    Ok(json!({
        "s_set": s,
        "bad_primes": b.primes,
        "cofactor": b.cofactor.to_string(),
        "fully_factored": b.cofactor == 1.into(),
        "normalized_discriminant": b.discriminant.to_string(),
        "good_reduction_outside_s": b.primes.is_empty() && b.cofactor == 1.into(),
    }))
}

pub fn act(gamma: &Path, form: &Path, modulus: Option<u64>) -> CliResult<Value> {
    let mut f = read_form(form, modulus)?;
    let mut g = read_matrix(gamma, f.domain());
    if g.is_err() && f.domain() == Domain::Integer {
        f = f.to_domain(Domain::Rational)?;
        g = read_matrix(gamma, Domain::Rational);
    }
    let g = g?;
    if f.vars().len() == 6 {
        let class = Class22::canonicalize(&f)?;
        let moved = act_v22(&g, &class)?;
        Ok(json!({ "space": "V22", "gamma": g.to_json(), "result": form_json(moved.representative()) }))
    } else {
        let moved = act_vn(&g, &f)?;
        Ok(json!({ "space": "Vn", "gamma": g.to_json(), "result": form_json(&moved) }))
    }
}

pub fn cubic_invariants(form: &Path) -> CliResult<Value> {
    let f = read_form(form, None)?;
    let i = cubicinv::cubic_i(&f)?;
    let j = cubicinv::cubic_j(&f)?;
    let delta = cubicinv::delta_from_ij(&i, &j)?;
    let raw = elimination::raw_discriminant(&f)?;
    let kappa = Scalar::from_rational(i.domain(), &cubicinv::kappa())?;
    let lhs = &(&Scalar::from_i64(i.domain(), 4) * &i.pow(3)) - &j.pow(2);
    let rhs = &kappa * &raw.convert(i.domain())?;
    Ok(json!({
        "I": i.to_string(),
        "J": j.to_string(),
        "delta_IJ": delta.to_string(),
        "raw_discriminant": raw.to_string(),
        "kappa": show_rat(&cubicinv::kappa()),
        "kappa_checked": lhs == rhs,
    }))
}

fn tuple(values: &str, weights: &[u32]) -> CliResult<InvariantTuple> {
    let vals = values
        .split(',')
        .map(|s| parse_rational(s).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(InvariantTuple::new(vals, weights.to_vec())?)
}

pub fn tuple_equiv(t1: &str, t2: &str, weights: &str, s_set: &str) -> CliResult<Value> {
    let w: Vec<u32> = parse_list(weights, "weight")?;
    let s = parse_primes(s_set)?;
    let (a, b) = (tuple(t1, &w)?, tuple(t2, &w)?);
    let found = cubicinv::tuples_equivalent(&a, &b, &s)?;
    let membership = |t: &InvariantTuple| -> CliResult<Value> {
        if t.is_zero() {
            Ok(Value::Null)
        } else {
            Ok(Value::Bool(cubicinv::tuple_in_i_prime(t, &s)?))
        }
    };
    Ok(json!({
        "weights": w,
        "s_set": s,
        "equivalent": found.is_some(),
        "witness": found,
        "t1_in_I_prime": membership(&a)?,
        "t2_in_I_prime": membership(&b)?,
    }))
}

pub fn canonicalize(form: &Path, modulus: Option<u64>) -> CliResult<Value> {
    let c = Class22::canonicalize(&read_form(form, modulus)?)?;
    Ok(json!({ "class": form_json(c.representative()), "is_zero": c.is_zero() }))
}

pub fn covariants(form: &Path, which: &str, modulus: Option<u64>) -> CliResult<Value> {
    let c = Class22::canonicalize(&read_form(form, modulus)?)?;
    let mut out = serde_json::Map::new();
    let mut emit = |name: &str, p: Poly| {
        let integral = rep22::try_integral(&p).is_some() || !matches!(p.domain(), Domain::Rational);
        out.insert(name.into(), json!({ "text": p.to_string(), "json": p.to_json(), "integral": integral }));
    };
    match which {
        "x" => emit("I_x", rep22::covariant_ix(&c)?),
        "z" => emit("I_z", rep22::covariant_iz(&c)?),
        "both" => {
            emit("I_x", rep22::covariant_ix(&c)?);
            emit("I_z", rep22::covariant_iz(&c)?);
        }
        other => return Err(CliError::InvalidArgument(format!("--which must be x, z or both, got '{other}'"))),
    }
    Ok(Value::Object(out))
}

pub fn branch_check(form: &Path, p: u64) -> CliResult<Value> {
    let c = Class22::canonicalize(&read_form(form, Some(p))?)?;
    Ok(serde_json::to_value(rep22::branch_locus_check(&c)?).expect("serializable"))
}

pub fn generic(form: &Path, p: u64) -> CliResult<Value> {
    let f = read_form(form, None)?;
    let c = Class22::canonicalize(&f)?;
    Ok(serde_json::to_value(rep22::genericity_mod_p(&c, p)?).expect("serializable"))
}

pub fn lattice_enum(bound: Option<u32>) -> CliResult<Value> {
    let all = picardlat::enumerate_tau_candidates();
    let closure = inverse_closure(&all);
    let mut out = json!({
        "gram": [[2, 4], [4, 2]],
        "count": all.len(),
        "candidates": all,
        "inverse_closure": closure,
    });
    if let Some(b) = bound {
        let enumerated = restrict_to_box(&all, b);
        let brute = brute_force_box(b);
        out["box"] = json!({
            "bound": b,
            "enumerated_in_box": enumerated.len(),
            "brute_force": brute.len(),
            "agrees": enumerated == brute,
        });
    }
    Ok(out)
}
